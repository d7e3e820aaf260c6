from .signatures import ErrorPayload, Payload


class LabError(Exception):
    """Base of every error the lab raises on purpose, carries its CLI exit code"""
    returncode = 1
    payload_type = ErrorPayload.DomainError

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    @property
    def payload(self) -> Payload:
        return self.payload_type(message=self.message)


class DomainError(LabError):
    returncode = 1
    payload_type = ErrorPayload.DomainError


class InvalidBitString(DomainError):
    ...


class AuxiliaryInputError(DomainError):
    ...


class InvalidDistribution(DomainError):
    ...


class SymbolMismatch(DomainError):
    ...


class MembershipError(DomainError):
    ...


class MalformedCode(DomainError):
    ...


class MalformedCache(DomainError):
    ...


class RequiresExact(DomainError):
    """A search came back without Exact status where an exact value is needed"""


class UnknownMachine(DomainError):
    ...


class ResourceError(LabError):
    returncode = 2
    payload_type = ErrorPayload.ResourceError


class WorkBudgetExceeded(ResourceError):
    ...


class ScaleError(ResourceError):
    ...


class UsageError(LabError):
    returncode = 3
    payload_type = ErrorPayload.UsageError
