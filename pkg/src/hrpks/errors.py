"""Exception types shared across the package."""


class InvariantError(Exception):
    """A value violates one of its structural invariants.

    Raised when loading corrupted artifacts (e.g. a public-key point that is
    not on the curve) or when internal consistency checks fail.
    """


class ParseError(ValueError):
    """Malformed artifact text."""


class SignerRevoked(Exception):
    """Signing is impossible: the key (or its whole department) is revoked."""

    def __init__(self, reason, entry=None):
        super().__init__(reason)
        self.entry = entry  # path of the revoked constraint set, if any


class RetryExhausted(Exception):
    """The randomized constraint collapse kept evaluating to zero.

    With an honest RNG and a sane modulus this has probability about
    (sets/q) per attempt; hitting the retry bound signals a broken RNG
    or a far too small modulus.
    """
