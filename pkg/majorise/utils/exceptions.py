class ServiceError(Exception):
    def __init__(self, code=None, message="Service error", details=None):
        self.code = code or type(self).__name__
        self.message = message
        self.details = details or {}
        super().__init__(message)


class SchemaError(ServiceError):
    pass


class InputError(ServiceError):
    pass


class NormalizationError(ServiceError):
    pass


class DuplicateAtomError(ServiceError):
    pass


class MassMismatchError(ServiceError):
    pass


class UnknownAtomError(ServiceError):
    pass


class SpaceMismatchError(ServiceError):
    pass


class DomainError(ServiceError):
    pass


class ValueNotAttained(ServiceError):
    pass


class NotInOrbit(ServiceError):
    pass


class DegenerateDirection(ServiceError):
    pass


class CriterionSatisfied(ServiceError):
    pass


class NotAtomic(ServiceError):
    pass


class SizeLimit(ServiceError):
    pass


class NotHermitian(ServiceError):
    pass


class DimensionMismatch(ServiceError):
    pass


class NotUnitary(ServiceError):
    pass


class NotDiagonal(ServiceError):
    pass


class NotDoublyStochastic(ServiceError):
    pass


class NotMajorised(ServiceError):
    pass


class InvariantViolation(ServiceError):
    """Raised when a computed object fails its own postcondition."""
