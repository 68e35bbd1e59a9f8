"""Bundled seed data and the `init` materializer.

Seed files (starter lexicon, POS dictionary, wordlists, attribute rule
lists, sample corpus) ship inside the package; `write_seed_tree` copies
them into a user directory next to a ready-to-edit config file, plus a
deterministic synthetic reference lexicon whose per-attribute counts match
the published aggregate table.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .errors import ConfigError
from .lexicon import AttributeTag, Lexicon, LexiconEntry, save_lexicon

# per-attribute totals of the reference table: 173 tag slots on 120 entries
REFERENCE_QUOTAS = (
    ("IMP", 51),
    ("CON", 41),
    ("T", 11),
    ("REF", 27),
    ("VAR", 22),
    ("WN", 21),
)
REFERENCE_TOTAL = 120

_DATA_FILES = (
    "lexicon.jsonl",
    "pos_dict.tsv",
    "wordlists/english.txt",
    "wordlists/malay.txt",
    "wordlists/abbreviations.txt",
    "rules/implicit.txt",
    "rules/connectives.txt",
    "rules/temporal.txt",
    "rules/referential.txt",
    "rules/variable.txt",
    "rules/weakness.txt",
    "sample/sistem_klinik.txt",
    "sample/daftar_pelajar.txt",
)

CONFIG_NAME = "kaburlint.conf"

_CONFIG_TEMPLATE = """\
# kaburlint configuration; paths are relative to this file
lexicon = lexicon.jsonl
pos_dict = pos_dict.tsv
english_wordlist = wordlists/english.txt
malay_wordlist = wordlists/malay.txt
abbreviations = wordlists/abbreviations.txt
rules_implicit = rules/implicit.txt
rules_connectives = rules/connectives.txt
rules_temporal = rules/temporal.txt
rules_referential = rules/referential.txt
rules_variable = rules/variable.txt
rules_weakness = rules/weakness.txt
audit_log = audit.jsonl
sense_threshold = 2
format = text
scope = verified
jobs = 1
"""


def seed_text(name: str) -> str:
    """Read one bundled seed file by its data-relative name."""
    node = resources.files(__package__).joinpath("data")
    for part in name.split("/"):
        node = node.joinpath(part)
    return node.read_text(encoding="utf-8")


def synthetic_reference_entries() -> list[LexiconEntry]:
    """120 synthetic verified entries hitting the reference table counts.

    Tag slots are dealt round-robin over the entries, so 53 entries carry
    two distinct attributes and the rest one; counts per attribute land
    exactly on the quotas.
    """
    slots = [attr for attr, quota in REFERENCE_QUOTAS for _ in range(quota)]
    tag_sets: list[set[str]] = [set() for _ in range(REFERENCE_TOTAL)]
    for position, attribute in enumerate(slots):
        tag_sets[position % REFERENCE_TOTAL].add(attribute)
    entries = []
    for i, attributes in enumerate(tag_sets, start=1):
        entries.append(
            LexiconEntry(
                phrase=(f"perkataan{i:03d}",),
                tags=frozenset(AttributeTag(a) for a in attributes),
                status="verified",
                source="user",
            )
        )
    return entries


def write_seed_tree(dest: str | Path) -> list[Path]:
    """Materialize seed data and a config file into dest; returns paths."""
    dest = Path(dest)
    config_path = dest / CONFIG_NAME
    if config_path.exists():
        raise ConfigError(f"{config_path} already exists; refusing to overwrite")
    written = []
    for name in _DATA_FILES:
        target = dest / name
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(seed_text(name), encoding="utf-8", newline="\n")
        written.append(target)
    fixture = dest / "fixtures" / "reference_lexicon.jsonl"
    fixture.parent.mkdir(parents=True, exist_ok=True)
    save_lexicon(Lexicon(synthetic_reference_entries()), fixture)
    written.append(fixture)
    config_path.write_text(_CONFIG_TEMPLATE, encoding="utf-8", newline="\n")
    written.append(config_path)
    return written
