"""Exception hierarchy.

Every diagnostic carries a machine-readable ``code`` so the CLI can report
the violated invariant by name.
"""


class NiceHFError(Exception):
    code = "ERROR"

    def __init__(self, message="", code=None, **details):
        super().__init__(message)
        if code is not None:
            self.code = code
        self.details = details

    def as_dict(self):
        out = {"code": self.code, "message": str(self)}
        out.update({k: v for k, v in self.details.items() if v is not None})
        return out


class DiagramSyntaxError(NiceHFError, SyntaxError):
    code = "SYNTAX"


class ValidationError(NiceHFError):
    code = "INVALID"


class UnknownRegion(ValidationError):
    code = "UNKNOWN_REGION"


class NotDestabilizable(ValidationError):
    code = "NOT_DESTABILIZABLE"


class SegmentsNotCoRegional(ValidationError):
    code = "SEGMENTS_NOT_COREGIONAL"


class RegionNotDisc(ValidationError):
    code = "REGION_NOT_DISC"


class NotCollapsible(ValidationError):
    code = "NOT_COLLAPSIBLE"


class DimensionMismatch(NiceHFError):
    code = "DIMENSION_MISMATCH"


class NotAComplex(NiceHFError):
    code = "NOT_A_COMPLEX"


class NotChainMap(NiceHFError):
    code = "NOT_CHAIN_MAP"


class NotNullHomotopy(NiceHFError):
    code = "NOT_NULL_HOMOTOPY"


class HypothesisViolation(NiceHFError):
    code = "HYPOTHESIS_VIOLATION"


class ComputationRefused(NiceHFError):
    """Input is valid but outside what the combinatorial method can handle."""

    code = "REFUSED"


class NotNice(ComputationRefused):
    code = "NOT_NICE"


class NotNiceForKnot(NotNice):
    code = "NOT_NICE_FOR_KNOT"


class NotAdmissible(ComputationRefused):
    code = "NOT_ADMISSIBLE"


class InvalidMarking(ComputationRefused):
    code = "INVALID_MARKING"


class NotACycle(ComputationRefused):
    code = "NOT_A_CYCLE"


class NoValidTrace(ComputationRefused):
    code = "NO_VALID_TRACE"


class InternalInvariantFailure(NiceHFError):
    code = "INTERNAL"


class InternalD2Failure(InternalInvariantFailure):
    code = "D_SQUARED_NONZERO"
