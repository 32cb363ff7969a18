"""Exception hierarchy shared by every package of the toolkit.

`ToricInputError` marks modeling mistakes in the input (the CLI maps them to
exit code 2); the remaining classes flag bad call arguments or internal
consistency checks that failed.
"""


class ToricError(Exception):
    """Root of all toolkit errors."""


class ToricInputError(ToricError, ValueError):
    """The input data does not describe a valid object."""


# --- fans -------------------------------------------------------------------

class NonPrimitiveRay(ToricInputError):
    def __init__(self, index: int, ray):
        self.index, self.ray = index, tuple(ray)
        super().__init__(f"ray {index} {self.ray} is not primitive (or is zero)")


class DuplicateRay(ToricInputError):
    def __init__(self, first: int, second: int):
        self.indices = (first, second)
        super().__init__(f"rays {first} and {second} coincide")


class NonSimplicialCone(ToricInputError):
    def __init__(self, cone):
        self.cone = tuple(cone)
        super().__init__(f"cone {self.cone} has linearly dependent rays")


class NonSmoothCone(ToricInputError):
    def __init__(self, cone, det=None):
        self.cone, self.det = tuple(cone), det
        extra = "" if det is None else f" (det {det})"
        super().__init__(f"cone {self.cone} is not unimodular{extra}")


class IncompleteFan(ToricInputError):
    def __init__(self, message: str, cone=None):
        self.cone = None if cone is None else tuple(cone)
        super().__init__(message)


class OverlappingCones(ToricInputError):
    def __init__(self, first, second):
        self.cones = (tuple(first), tuple(second))
        super().__init__(f"cones {self.cones[0]} and {self.cones[1]} do not meet in a common face")


class FanMismatch(ToricInputError):
    def __init__(self, expected: int, got: int):
        self.expected, self.got = expected, got
        super().__init__(f"expected {expected} ray coefficients, got {got}")


class NotProjective(ToricInputError):
    """No strictly convex support function exists on the fan."""


class SchemaError(ToricInputError):
    """A JSON document does not match its schema."""


# --- decorations ------------------------------------------------------------

class AxiomViolation(ToricInputError):
    def __init__(self, pair, message: str):
        self.pair = tuple(pair)
        super().__init__(f"strata {self.pair}: {message}")


class NoGenericStratum(ToricInputError):
    pass


class DuplicateDivisor(ToricInputError):
    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(f"strata {self.pair} carry the same divisor")


class StratificationError(ToricInputError):
    """Closures do not form a stratification (order or intersection law broken)."""


# --- argument errors --------------------------------------------------------

class PointOutsideCone(ToricError, ValueError):
    def __init__(self, cone, point):
        self.cone, self.point = tuple(cone), tuple(point)
        super().__init__(f"point {self.point} is not in cone {self.cone}")


class NonIntegralVertex(ToricError, ValueError):
    def __init__(self, vertex):
        self.vertex = tuple(vertex)
        super().__init__(f"vertex {tuple(str(x) for x in self.vertex)} is not a lattice point")


class NotNef(ToricError, ValueError):
    def __init__(self, coeffs):
        self.coeffs = tuple(coeffs)
        super().__init__(f"divisor {self.coeffs} is not nef")


class DimensionUnsupported(ToricError, ValueError):
    def __init__(self, dim: int, needed: int = 2):
        self.dim = dim
        super().__init__(f"engine needs a {needed}-dimensional fan, got dimension {dim}")


class NotNeflyDecorated(ToricError, ValueError):
    def __init__(self, stratum: int):
        self.stratum = stratum
        super().__init__(f"stratum {stratum} carries a divisor that is not nef")


# --- consistency failures ---------------------------------------------------

class UnboundedPolyhedron(ToricError, RuntimeError):
    pass


class FocusNotInterior(ToricError, RuntimeError):
    def __init__(self, collection):
        self.collection = tuple(collection)
        super().__init__(f"sum of rays {self.collection} has no interior focus cone")


class KernelCheckFailed(ToricError, RuntimeError):
    def __init__(self, relation):
        self.relation = tuple(relation)
        super().__init__(f"relation {self.relation} does not lie in ker(pi)")


class DegenerateConeError(ToricError, RuntimeError):
    pass


class NonTerminatingScan(ToricError, RuntimeError):
    def __init__(self, shells: int):
        self.shells = shells
        super().__init__(f"cohomology still nonzero after {shells} scan shells")


class UnmatchedExtremalRay(ToricError, RuntimeError):
    def __init__(self, collection):
        self.collection = tuple(collection)
        super().__init__(f"extremal relation of {self.collection} matches no wall")


class ExactnessFailure(ToricError, RuntimeError):
    def __init__(self, cone, degree, position, reason: str = ""):
        self.cone, self.degree, self.position = tuple(cone), tuple(degree), position
        super().__init__(
            f"resolution not exact on cone {self.cone} at m={self.degree}, "
            f"position {position}{': ' + reason if reason else ''}")
