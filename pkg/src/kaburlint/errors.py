"""Shared exception types."""


class KaburlintError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(KaburlintError):
    """Bad or missing configuration."""


class LexiconError(KaburlintError):
    """Invalid lexicon data or lexicon file."""


class WordlistError(KaburlintError):
    """Invalid wordlist, rule list or POS dictionary file."""


class ReviewError(KaburlintError):
    """Invalid review decision or decision file."""


class StatsError(KaburlintError):
    """Statistics requested over an empty or invalid entry set."""
