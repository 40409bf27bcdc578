"""Exception hierarchy shared by all wsurf modules."""


class WsurfError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(WsurfError):
    """Evaluation requested at a point where the function is undefined."""


class BranchCutViolation(DomainError):
    """Evaluation requested on (or across) a declared branch cut."""

    def __init__(self, fn_id, z):
        self.fn_id = fn_id
        self.z = z
        super().__init__(f"{fn_id} evaluated on its branch cut at z={z}")


class SingularPoint(DomainError):
    """Evaluation requested at (or too close to) a singularity of the ODE."""

    def __init__(self, z, message=None):
        self.z = z
        super().__init__(message or f"singular point at z={z}")


class EvaluationFailure(WsurfError):
    """An integrand or coefficient function produced a non-finite value."""

    def __init__(self, z, message=None):
        self.z = z
        super().__init__(message or f"evaluation failed at z={z}")


class ToleranceNotReached(WsurfError):
    """Adaptive quadrature ran out of depth before hitting the tolerance."""

    def __init__(self, best_estimate, achieved_error):
        self.best_estimate = best_estimate
        self.achieved_error = achieved_error
        super().__init__(
            f"quadrature error {achieved_error:.3e} above tolerance; "
            f"best estimate {best_estimate}"
        )


class PathPlanningFailure(WsurfError):
    """No legal piecewise-linear path between the requested endpoints."""


class StepSizeUnderflow(WsurfError):
    """ODE integrator step collapsed, typically approaching a singularity."""


class UnknownEquation(WsurfError, KeyError):
    """Requested equation id is not in the catalog."""


class OutsideFixtureDomain(DomainError):
    """Point outside the domain of a figure-caption fixture."""


class StencilOutsideDomain(DomainError):
    """Finite-difference stencil would leave the working domain."""


class EmptyMesh(WsurfError):
    """Mesh export requested but every grid node is masked."""


class IoFailure(WsurfError):
    """Filesystem error during mesh export."""
