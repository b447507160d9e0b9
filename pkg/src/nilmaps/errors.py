"""Exception hierarchy shared by every nilmaps module."""


class NilmapsError(Exception):
    """Base class for all library errors."""


class ParseError(NilmapsError, ValueError):
    """Malformed polynomial, map file or parameter file.

    ``pos`` is the 0-based character offset of the offending token (or None
    when the problem is not tied to a position), ``line`` the 1-based line of
    a file when known.
    """

    def __init__(self, message, pos=None, text=None, line=None):
        self.message = message
        self.pos = pos
        self.text = text
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if pos is not None:
            where.append(f"position {pos}")
        suffix = f" (at {', '.join(where)})" if where else ""
        super().__init__(message + suffix)


class NotRepresentable(ParseError):
    """A coefficient cannot live in the requested field (e.g. 1/7 in GF(7))."""


class FieldMismatch(NilmapsError, TypeError):
    """Operands live over different coefficient fields."""


class CharacteristicTooSmall(NilmapsError, ArithmeticError):
    """An operation needs to invert an integer that vanishes in GF(p)."""


class NotDivisible(NilmapsError, ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""


class NotApplicable(NilmapsError):
    """The hypothesis of a constructive step does not hold for the input."""


class NotClosed(NilmapsError):
    """The pair (u, v0) is not the gradient-type pair of a potential."""


class SingularMatrix(NilmapsError, ArithmeticError):
    """A constant matrix that had to be inverted is singular."""


class ShapeMismatch(NilmapsError, ValueError):
    """A map does not have the structural shape it was declared or assumed to have."""


class NotNilpotent(NilmapsError):
    """The Jacobian of the map is not nilpotent."""


class NotOriginPreserving(NilmapsError):
    """The map does not send the origin to the origin."""


class InvalidParameters(NilmapsError, ValueError):
    """Normal-form parameters violate their invariants.

    ``problems`` maps each offending field name to a short description.
    """

    def __init__(self, problems):
        self.problems = dict(problems)
        detail = "; ".join(f"{k}: {v}" for k, v in self.problems.items())
        super().__init__(f"invalid parameters: {detail}")


class InconsistentNilpotency(NilmapsError, AssertionError):
    """The two nilpotency criteria disagree; this is an arithmetic bug."""


class CapExceeded(NilmapsError):
    """An exhaustive search space is larger than the configured cap."""

    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(f"search space has {size} candidates, cap is {cap}")
