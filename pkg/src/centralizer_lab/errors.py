"""Exception hierarchy.

Every library error carries a stable ``code`` string which the command line
front end maps to its exit status and JSON error payload.
"""


class CentralizerLabError(Exception):
    """Base class for all library errors."""

    code = "error"
    #: errors whose cause is bad input rather than a failed mathematical check
    usage = True


class NonUnimodularInverse(CentralizerLabError):
    code = "non_unimodular_inverse"


class ZeroPolynomial(CentralizerLabError):
    code = "zero_polynomial"


class UnitModulusUndecided(CentralizerLabError):
    code = "unit_modulus_undecided"
    usage = False


class NotCommuting(CentralizerLabError):
    code = "not_commuting"


class ComplexSpectrumUnsupported(CentralizerLabError):
    code = "complex_spectrum_unsupported"


class NotHyperbolic(CentralizerLabError):
    code = "not_hyperbolic"


class NotInvertibleModQ(CentralizerLabError):
    code = "not_invertible_mod_q"


class EmptySubshift(CentralizerLabError):
    code = "empty_subshift"


class NotPrimitive(CentralizerLabError):
    code = "not_primitive"


class RadiusTooLarge(CentralizerLabError):
    code = "radius_too_large"


class NotInvertible(CentralizerLabError):
    code = "not_invertible"
