"""Exception types shared across the package."""


class LeaderSelError(Exception):
    """Base class for all package-specific errors."""


class MalformedInput(LeaderSelError):
    """Instance text or CLI arguments violate the documented format."""


class NotPositiveDefinite(LeaderSelError):
    """A follower block failed the positive-definiteness pivot test."""


class NoConvergence(LeaderSelError):
    """An iterative kernel exhausted its iteration budget."""


class Unreachable(LeaderSelError):
    """No source-to-target path exists within the hop budget."""


class TooLarge(LeaderSelError):
    """Problem size exceeds the exhaustive-search guard."""
