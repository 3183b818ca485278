"""Exception types shared across the package."""


class PastsError(Exception):
    """Base class for all package-specific errors."""


class DomainError(PastsError, ValueError):
    """A physical parameter is outside its admissible range."""


class JetUsageError(PastsError, ValueError):
    """Jets with mismatched orders or expansion points were combined."""


class JetSingularityError(PastsError, ZeroDivisionError):
    """Reciprocal or fractional power of a jet whose value coefficient is zero."""


class NumericConsistencyError(PastsError, ArithmeticError):
    """A quantity that must be real / positive came out otherwise.

    Raised instead of silently clamping: a violation beyond tolerance means
    the inputs or the algebra are wrong, not that the data needs cleaning.
    """


class UndefinedQError(PastsError, ZeroDivisionError):
    """Mandel Q requested for a state with zero mean photon number."""


class CutoffError(PastsError, RuntimeError):
    """Fock-space truncation too small for the requested state or trace."""


class QuadratureError(PastsError, RuntimeError):
    """Quadrature window or resolution inadequate for the requested accuracy."""


class BracketError(PastsError, RuntimeError):
    """A root/threshold search was started on an interval that does not bracket."""
