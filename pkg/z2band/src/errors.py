"""
Errors
======
Exception hierarchy for z2band.

Every error raised by the library derives from Z2BandError. Errors caused by
bad input also derive from ValueError; errors caused by a numerical condition
(closing gap, vanishing determinant, coarse grid) derive from ArithmeticError.
"""


class Z2BandError(Exception):
    """Base class for all z2band errors."""


# =============================================================================
# INPUT ERRORS
# =============================================================================

class OddDimension(Z2BandError, ValueError):
    """A Pfaffian was requested for a matrix of odd (or zero) dimension."""


class NotSkewSymmetric(Z2BandError, ValueError):
    """
    A matrix is not skew-symmetric within tolerance.

    Attributes:
        defect (float): max |A + A^T|
    """

    def __init__(self, message: str, defect: float = float("nan")):
        super().__init__(message)
        self.defect = defect


class UnsupportedSpace(Z2BandError, ValueError):
    """The operation is not defined on this momentum space."""


class NotNearestNeighbors(Z2BandError, ValueError):
    """Two fixed points do not differ in exactly one coordinate."""


class InvalidPhaseFunction(Z2BandError, ValueError):
    """A phase function violates beta(pi) - beta(0) = k*pi or is not odd about beta(0)."""


class NotHalfIntegral(Z2BandError, ValueError):
    """(beta(pi) - beta(0)) / pi is not an integer within tolerance."""


class ParseError(Z2BandError, ValueError):
    """
    A model file or command-line value could not be parsed.

    Attributes:
        line (int | None): 1-based line number in the model file, if known
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class HermiticityViolation(Z2BandError, ValueError):
    """
    Hopping T_{-R} is missing or differs from T_R^dagger.

    Attributes:
        displacement (tuple): the offending R
    """

    def __init__(self, message: str, displacement: tuple = ()):
        super().__init__(message)
        self.displacement = tuple(displacement)


class ThetaInvalid(Z2BandError, ValueError):
    """The unitary part of Theta is not unitary or U conj(U) != -I."""


class OddOccupation(Z2BandError, ValueError):
    """n_occupied (or n_bands) is odd, so Kramers pairs cannot be formed."""


class PairingMismatch(Z2BandError, ValueError):
    """A pairing, pair or sign table does not belong to the given space."""


# =============================================================================
# NUMERICAL CONDITIONS
# =============================================================================

class ZeroDeterminant(Z2BandError, ArithmeticError):
    """A determinant sample vanished while tracking its square root."""


class BranchAmbiguous(Z2BandError, ArithmeticError):
    """Consecutive determinant samples are too far apart to continue the square root."""


class GapClosed(Z2BandError, ArithmeticError):
    """
    The gap above the occupied bands is below gap_min.

    Attributes:
        k (tuple): k-point where it happened
        gap (float): gap value found there
    """

    def __init__(self, message: str, k: tuple = (), gap: float = 0.0):
        super().__init__(message)
        self.k = tuple(float(x) for x in k)
        self.gap = gap


class ZeroPfaffian(Z2BandError, ArithmeticError):
    """|pf(w)| at a fixed point is below tolerance."""


class SingularLink(Z2BandError, ArithmeticError):
    """An overlap determinant between neighbouring frames is below tolerance."""


# =============================================================================
# REPORTED CONDITIONS
# =============================================================================

class ConstraintViolated(Z2BandError):
    """
    A gauge function does not close on its cycle.

    Attributes:
        shift (float): the phase shift it would cause, the integral of d(beta)
                       reduced to (-pi, pi]
    """

    def __init__(self, message: str, shift: float):
        super().__init__(message)
        self.shift = shift


class UnrepresentableSurface(Z2BandError):
    """
    A connected sum left the supported set of closed surfaces.

    Attributes:
        euler_char (int): Euler characteristic of the result
        orientable (bool): orientability of the result
        cobordism_class (int): euler_char mod 2
    """

    def __init__(self, euler_char: int, orientable: bool):
        self.euler_char = euler_char
        self.orientable = orientable
        self.cobordism_class = euler_char % 2
        kind = "orientable" if orientable else "non-orientable"
        super().__init__(
            f"no supported surface with chi={euler_char} ({kind}); "
            f"cobordism class {self.cobordism_class}"
        )
