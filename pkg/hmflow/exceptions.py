class HmflowException(Exception):
    """
        Base hmflow Exception
    """

    pass


class InvalidArgumentError(HmflowException):
    """
        Raised for arguments outside of the supported domain.
        * building an interval mesh with less than two elements
        * building a disk mesh with negative refinement level
        * comparing functions that live in different spaces
        * time step that does not divide the final time
        * initial data that is not unit length (2D) or does not vanish at r=0 (1D)
        * non-positive errors passed to EOC computation
    """

    pass


class DegenerateElementError(HmflowException):
    """
        Raised when the geometry map of a triangle has a non-positive
        Jacobian determinant at an evaluation point.
    """

    pass


class UnsupportedDegreeError(HmflowException):
    """
        Raised for polynomial degrees outside of {1, 2}, or for operations
        defined on linear elements only (lumped mass, discrete Laplacian, BFEM).
    """

    pass


class UnsupportedSchemeError(HmflowException):
    """
        Raised for BDF orders other than 1 and 2 and for order/method
        combinations that are not available (BFEM with BDF2).
    """

    pass


class AssemblyError(HmflowException):
    """
        Raised when a weight is not finite at a quadrature point.
        Message identifies the offending element.
    """

    pass


class FactorizationError(HmflowException):
    """
        Raised when a sparse matrix is singular to working precision
        or a direct solve does not meet the residual tolerance.
    """

    pass


class InfSupError(HmflowException):
    """
        Raised when a saddle point system cannot be solved because the
        constraint block is rank deficient (degenerate extrapolation field).
    """

    pass


class InsufficientHistoryError(HmflowException):
    """
        Raised when a BDF step or extrapolation receives less past states
        than its order requires.
    """

    pass


class DegenerateExtrapolationError(HmflowException):
    """
        Raised when the extrapolated field is (almost) zero at a node
        and cannot be normalized.
    """

    pass


class NormalizationError(HmflowException):
    """
        Raised when the projection step meets a nodal value of (almost) zero length.
    """

    pass


class FixedPointDivergenceError(HmflowException):
    """
        Raised when the inner fixed point iteration does not reach the
        tolerance within the allowed number of iterations.
    """

    pass


class OutOfDomainError(HmflowException):
    """
        Raised when a point outside of the unit disk is lifted from a radial profile.
    """

    pass


class StepperDefinitionError(HmflowException):
    """
        Raised for errors related to the stepper definition itself.
        * missing or malformed Meta class
        * duplicated stepper name
        * requesting a stepper name that was never registered
    """

    pass


class SignalDefinitionError(HmflowException):
    """
        Raised when non callable receiver is passed as signal callback.
    """

    pass


class StudyDefinitionError(HmflowException):
    """
        Raised for malformed study spec files and unknown presets.
    """

    pass
