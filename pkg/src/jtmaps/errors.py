"""Exception hierarchy.

Every error raised by the package derives from :class:`JTMapsError`.  The
classifier errors additionally carry the numeric evidence (``residual``,
``p``) that triggered them, so callers can report it.
"""


class JTMapsError(Exception):
    """Base class for all package errors."""


class DomainError(JTMapsError, ValueError):
    """Input matrix is outside the domain required by an operation."""


class NotHermitian(DomainError):
    pass


class NotPositiveDefinite(DomainError):
    pass


class NotPSD(DomainError):
    pass


class NotEffect(DomainError):
    pass


class Singular(DomainError):
    pass


class NotUnitary(DomainError):
    pass


class NotRotation(DomainError):
    pass


class InvalidArgument(JTMapsError, ValueError):
    pass


class NotDominated(DomainError):
    pass


class SingularBase(DomainError):
    pass


class NotPositiveOutput(JTMapsError):
    """A black box returned a matrix that is not positive definite."""


class LogFailure(JTMapsError):
    pass


class ContractViolation(JTMapsError):
    """A map fails one of the algebraic laws it was supposed to satisfy.

    ``residual`` is the offending measurement; ``p`` is set for scale errors.
    """

    def __init__(self, message, residual=None, p=None):
        super().__init__(message)
        self.residual = residual
        self.p = p


class NotJTE(ContractViolation):
    pass


class NotLinear(ContractViolation):
    pass


class ScaleNotOne(ContractViolation):
    pass


class NotIsometry(ContractViolation):
    pass


class NotSeqEndo(ContractViolation):
    pass


class NotProjectionAtI(ContractViolation):
    pass


class NotEffectValued(ContractViolation):
    pass


class NotHomogeneous(ContractViolation):
    pass
