"""Exception hierarchy.

Input problems derive from ``InputError`` (CLI exit code 2); broken internal
identities raise ``InvariantBreach`` (exit code 4).
"""


class MonHeckeError(Exception):
    pass


class InputError(MonHeckeError, ValueError):
    pass


class InvariantBreach(MonHeckeError, AssertionError):
    """An identity that the library relies on failed on concrete data."""


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)


class InvalidGCM(InputError):
    pass


class PairingMismatch(InputError):
    pass


class SingularAdjoint(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class InfiniteGroup(InputError):
    pass


class GroupMismatch(InputError):
    pass


class NonFiniteParabolic(InputError):
    pass


class NotAReflection(InputError):
    pass


class NotInBlock(InputError):
    pass


class NotPalindromic(InputError):
    pass


class CompositionMismatch(InputError):
    pass


class SpaceMismatch(InputError):
    pass


class InfiniteOrbit(InputError):
    pass


class UnknownSuite(InputError):
    pass


class CorruptCache(MonHeckeError):
    pass


class OrbitTruncated(MonHeckeError):
    """Orbit enumeration hit its bound; ``partial`` holds what was found."""

    def __init__(self, partial, bound):
        self.partial = partial
        self.bound = bound
        super().__init__(f"orbit not closed after {bound} elements")
