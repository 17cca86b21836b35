"""Exception hierarchy.

Validation problems map to CLI exit code 2, numerical non-convergence and
inconclusive scans map to exit code 3.
"""


class SubDiracError(Exception):
    exit_code = 2

    def to_json(self):
        return {"error": type(self).__name__, "message": str(self)}


class ValidationError(SubDiracError):
    exit_code = 2


class NotNilpotent(ValidationError):
    pass


class NotIntegralSL(ValidationError):
    pass


class NotBracketGenerating(ValidationError):
    pass


class BadFrame(ValidationError):
    pass


class SingularMatrix(ValidationError):
    pass


class DimensionTooLarge(ValidationError):
    pass


class InvalidSpinStructure(ValidationError):
    pass


class NoComplement(ValidationError):
    pass


class NotTwoStep(ValidationError):
    pass


class FixedPointInput(ValidationError):
    pass


class NotFixedPoint(ValidationError):
    pass


class UnsupportedDimension(ValidationError):
    pass


class UnsupportedModel(ValidationError):
    pass


class Xi1Zero(ValidationError):
    pass


class NotHermitian(ValidationError):
    pass


class NumericalError(SubDiracError):
    exit_code = 3


class NotConverged(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


class ScanInconclusive(NumericalError):
    pass


class DomainTooSmall(NumericalError):
    pass


class ScalingValidationFailed(NumericalError):
    pass
