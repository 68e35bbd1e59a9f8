"""Flat key-value configuration and resource loading for the CLI.

The config file holds one `key = value` pair per line with '#' comments.
Unknown keys are rejected and every referenced input file must exist at
load time (the audit log is exempt: it is an output). Relative paths are
resolved against the config file's directory. CLI flags override config
values.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

from .analyzer import (
    DEFAULT_ALTERNATIVE_MARKERS,
    DEFAULT_CONDITIONAL_MARKERS,
    LintConfig,
    REPORT_FORMATS,
)
from .errors import ConfigError
from .extraction import RuleLists
from .filters import FilterConfig, load_wordlist
from .lexicon import Lexicon, PosDictionary, load_lexicon, load_pos_dictionary
from .stats import SCOPE_CANDIDATES, SCOPE_VERIFIED
from .textcore import DEFAULT_ABBREVIATIONS

RULE_ATTRIBUTE_KEYS = {
    "rules_implicit": "IMP",
    "rules_connectives": "CON",
    "rules_temporal": "T",
    "rules_referential": "REF",
    "rules_variable": "VAR",
    "rules_weakness": "WN",
}

_PATH_KEYS = (
    "lexicon",
    "pos_dict",
    "english_wordlist",
    "malay_wordlist",
    "abbreviations",
    "audit_log",
    *RULE_ATTRIBUTE_KEYS,
)
_INT_KEYS = ("sense_threshold", "jobs")
_STR_KEYS = ("format", "scope")
_BOOL_KEYS = (
    "filter_symbols",
    "filter_numbers",
    "filter_reduplication",
    "filter_short_forms",
    "filter_proper_nouns",
    "filter_loanwords",
    "short_form_wordlist",
    "short_form_no_vowel",
    "short_form_trailing_dot",
    "flag_anaphoric_clitics",
)
_LIST_KEYS = ("conditional_markers", "alternative_markers")

KNOWN_KEYS = frozenset(_PATH_KEYS) | set(_INT_KEYS) | set(_STR_KEYS) | set(
    _BOOL_KEYS
) | set(_LIST_KEYS)

# created by commands, never required to pre-exist
_OUTPUT_PATH_KEYS = frozenset({"audit_log"})

SCOPE_NAMES = {"verified": SCOPE_VERIFIED, "candidates": SCOPE_CANDIDATES}


@dataclass
class Config:
    lexicon: Path | None = None
    pos_dict: Path | None = None
    english_wordlist: Path | None = None
    malay_wordlist: Path | None = None
    abbreviations: Path | None = None
    audit_log: Path | None = None
    rules_implicit: Path | None = None
    rules_connectives: Path | None = None
    rules_temporal: Path | None = None
    rules_referential: Path | None = None
    rules_variable: Path | None = None
    rules_weakness: Path | None = None
    sense_threshold: int = 2
    jobs: int = 1
    format: str = "text"
    scope: str = "verified"
    filter_symbols: bool = True
    filter_numbers: bool = True
    filter_reduplication: bool = True
    filter_short_forms: bool = True
    filter_proper_nouns: bool = True
    filter_loanwords: bool = True
    short_form_wordlist: bool = True
    short_form_no_vowel: bool = True
    short_form_trailing_dot: bool = True
    flag_anaphoric_clitics: bool = False
    conditional_markers: tuple[str, ...] = DEFAULT_CONDITIONAL_MARKERS
    alternative_markers: tuple[str, ...] = DEFAULT_ALTERNATIVE_MARKERS


def _parse_bool(key: str, value: str) -> bool:
    lowered = value.lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {value!r}")


def load_config(path: str | Path) -> Config:
    """Parse and validate a config file."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    base = path.parent
    cfg = Config()
    seen: set[str] = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, eq, value = (part.strip() for part in line.partition("="))
        where = f"{path.name}:{lineno}"
        if not eq or not key:
            raise ConfigError(f"{where}: expected 'key = value'")
        if key not in KNOWN_KEYS:
            raise ConfigError(f"{where}: unknown key {key!r}")
        if key in seen:
            raise ConfigError(f"{where}: duplicate key {key!r}")
        seen.add(key)
        if key in _PATH_KEYS:
            resolved = (base / value).resolve()
            if key not in _OUTPUT_PATH_KEYS and not resolved.exists():
                raise ConfigError(f"{where}: {key} file {resolved} does not exist")
            setattr(cfg, key, resolved)
        elif key in _INT_KEYS:
            try:
                setattr(cfg, key, int(value))
            except ValueError:
                raise ConfigError(f"{where}: {key} must be an integer") from None
        elif key in _BOOL_KEYS:
            setattr(cfg, key, _parse_bool(key, value))
        elif key in _LIST_KEYS:
            items = tuple(v.strip() for v in value.split(",") if v.strip())
            if not items:
                raise ConfigError(f"{where}: {key} must list at least one marker")
            setattr(cfg, key, items)
        else:
            setattr(cfg, key, value)
    if cfg.format not in REPORT_FORMATS:
        raise ConfigError(f"unknown format {cfg.format!r}")
    if cfg.scope not in SCOPE_NAMES:
        raise ConfigError(f"unknown scope {cfg.scope!r} (use verified|candidates)")
    if cfg.sense_threshold < 0:
        raise ConfigError("sense_threshold must be non-negative")
    if cfg.jobs < 1:
        raise ConfigError("jobs must be at least 1")
    return cfg


def apply_overrides(cfg: Config, **overrides) -> Config:
    """Return a copy with non-None override values applied."""
    names = {f.name for f in fields(Config)}
    updates = {}
    for key, value in overrides.items():
        if key not in names:
            raise ConfigError(f"unknown config field {key!r}")
        if value is not None:
            updates[key] = value
    return replace(cfg, **updates)


@dataclass
class Resources:
    """Loaded runtime objects derived from a Config."""

    lexicon: Lexicon
    posdict: PosDictionary | None
    rules: RuleLists
    filter_config: FilterConfig
    lint_config: LintConfig
    config: Config


def load_resources(cfg: Config, *, require_lexicon: bool = True) -> Resources:
    if cfg.lexicon is None:
        if require_lexicon:
            raise ConfigError("no lexicon configured (set --lexicon or config key)")
        lexicon = Lexicon()
    else:
        lexicon = load_lexicon(cfg.lexicon)
    posdict = load_pos_dictionary(cfg.pos_dict) if cfg.pos_dict else None
    rule_paths = {
        attr: getattr(cfg, key)
        for key, attr in RULE_ATTRIBUTE_KEYS.items()
        if getattr(cfg, key) is not None
    }
    rules = RuleLists.load(rule_paths)
    abbreviations = (
        load_wordlist(cfg.abbreviations) if cfg.abbreviations else DEFAULT_ABBREVIATIONS
    )
    filter_config = FilterConfig(
        english_words=(
            load_wordlist(cfg.english_wordlist) if cfg.english_wordlist else frozenset()
        ),
        malay_words=(
            load_wordlist(cfg.malay_wordlist) if cfg.malay_wordlist else None
        ),
        abbreviations=abbreviations,
        exclude_symbols=cfg.filter_symbols,
        exclude_numbers=cfg.filter_numbers,
        exclude_reduplication=cfg.filter_reduplication,
        exclude_short_forms=cfg.filter_short_forms,
        exclude_proper_nouns=cfg.filter_proper_nouns,
        exclude_loanwords=cfg.filter_loanwords,
        short_form_wordlist=cfg.short_form_wordlist,
        short_form_no_vowel=cfg.short_form_no_vowel,
        short_form_trailing_dot=cfg.short_form_trailing_dot,
    )
    lint_config = LintConfig(
        filter_config=filter_config,
        sense_threshold=cfg.sense_threshold,
        conditional_markers=cfg.conditional_markers,
        alternative_markers=cfg.alternative_markers,
        flag_anaphoric_clitics=cfg.flag_anaphoric_clitics,
    )
    return Resources(
        lexicon=lexicon,
        posdict=posdict,
        rules=rules,
        filter_config=filter_config,
        lint_config=lint_config,
        config=cfg,
    )


def default_audit_path(cfg: Config) -> Path:
    if cfg.audit_log is not None:
        return cfg.audit_log
    if cfg.lexicon is not None:
        return cfg.lexicon.with_name(cfg.lexicon.name + ".audit.jsonl")
    return Path("audit.jsonl")
