"""Exception hierarchy.

Every failure mode that a caller may want to distinguish has its own class.
The CLI maps these onto exit codes (input errors vs capability errors).
"""


class SiltgeoError(Exception):
    """Base class for all library errors."""


class InputError(SiltgeoError):
    """Malformed or inconsistent user input (exit code 2)."""


class CapabilityError(SiltgeoError):
    """Input lies outside what can be computed or certified (exit code 3)."""


class InfiniteDimensional(CapabilityError):
    pass


class MalformedRelation(InputError):
    pass


class IdealIsWholeAlgebra(SiltgeoError):
    pass


class NonSplitSemisimple(CapabilityError):
    pass


class OwnerMismatch(SiltgeoError):
    pass


class NotSilting(InputError):
    pass


class NotPresilting(InputError):
    pass


class Not2TermResult(SiltgeoError):
    pass


class CompletionNotVerified(CapabilityError):
    pass


class NotLocated(CapabilityError):
    pass


class NegativeMultiplicity(SiltgeoError):
    pass


class IncompleteAtlas(CapabilityError):
    pass


class NonConvexClass(SiltgeoError):
    pass


class SaturationViolated(SiltgeoError):
    pass


class NotInWU(SiltgeoError):
    pass


class CertificationFailed(SiltgeoError):
    pass


class IncompleteReduction(CapabilityError):
    pass


class NotInDU(SiltgeoError):
    pass
