"""Exception hierarchy shared by all modules."""


class RigidBodyError(ValueError):
    """Base class for input and consistency errors raised by ndrigid."""


class NonPositiveEigenvalue(RigidBodyError):
    pass


class DegenerateBody(RigidBodyError):
    """Two mass-tensor eigenvalues are closer than the asymmetry tolerance."""


class AxisReuse(RigidBodyError):
    pass


class BadIndex(RigidBodyError):
    pass


class ZeroFrequency(RigidBodyError):
    pass


class DegenerateCurvePair(RigidBodyError):
    """Two parabolas coincide; only possible for a body that is not asymmetric."""


class OnAxisIntersection(RigidBodyError):
    """A vertical line passes through a root of a parabola (shared eigenvalue)."""


class NotDegenerate(RigidBodyError):
    """The requested block of the pencil is nondegenerate at this parameter."""


class NotInSpectrum(RigidBodyError):
    pass


class InSpectrum(RigidBodyError):
    pass


class BranchFailure(RigidBodyError):
    pass


class CertificateFails(RigidBodyError):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class BadParameters(RigidBodyError):
    pass


class DegenerateFormula(RigidBodyError):
    pass


class NegativeN(RigidBodyError):
    pass


class BadParameter(RigidBodyError):
    pass


class StepOverflow(RigidBodyError):
    """State norm blew past the overflow guard; ``record`` holds the truncated run."""

    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record
