"""Exception types shared across the package."""


class MincuspError(Exception):
    """Base class for all library errors."""


class ValidationError(MincuspError, ValueError):
    """Bad caller input (maps to CLI exit status 2)."""


class CheckError(MincuspError):
    """An internal verification failed (maps to CLI exit status 3)."""


# triangulation
class ChainParityError(ValidationError):
    pass


class IdentityTwistError(ValidationError):
    pass


class ParityError(ValidationError):
    pass


class InvalidPartition(ValidationError):
    pass


# census
class SearchBudgetExceeded(ValidationError):
    pass


class MalformedGraph(CheckError):
    pass


# spine
class NoBigFace(ValidationError):
    pass


class UnsupportedSlope(ValidationError):
    pass


class NormalPositionError(CheckError):
    pass


class SurgeryError(CheckError):
    pass


# exactnum
class InconsistentFactorization(CheckError):
    pass


class CyclotomicProductMismatch(CheckError):
    pass


CyclicProductMismatch = CyclotomicProductMismatch


# geometry
class ConsistencyError(CheckError):
    pass


class SignatureError(CheckError):
    pass


class DomainError(ValidationError):
    pass


class NonRealizableAngles(ValidationError):
    pass


class CrossCheckError(CheckError):
    pass
