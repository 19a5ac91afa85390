"""Exception hierarchy.

Every domain failure raised by this package derives from RamifiedError so
callers (and the CLI) can distinguish domain errors from bugs.
"""


class RamifiedError(Exception):
    """Base class for all domain errors."""


class CapExceeded(RamifiedError):
    """Group enumeration would exceed the configured element cap."""

    def __init__(self, cap: int):
        super().__init__(f"group enumeration exceeded cap of {cap} elements")
        self.cap = cap


class NotTransitive(RamifiedError):
    """Operation requires a transitive action."""


class InvalidConstellation(RamifiedError):
    """Slot product is not the identity, or the joint action is not transitive."""


class NonIntegerGenus(RamifiedError):
    """Defensive check: the Euler characteristic bookkeeping came out odd."""


class NegativeGenus(RamifiedError):
    """Defensive check: the computed genus is negative."""


class LabelMismatch(RamifiedError):
    """Two constellations do not share a compatible ordered set of branch labels."""


class GenusTooSmall(RamifiedError):
    """Operation requires a base of genus at least one."""


class NoSurjection(RamifiedError):
    """No puncture-killing homomorphism onto the full cyclic group exists."""

    def __init__(self, image_order: int, d: int):
        super().__init__(
            f"puncture-killing homomorphisms only reach a subgroup of order "
            f"{image_order} inside Z/{d}"
        )
        self.image_order = image_order
        self.d = d


class UnrealizableParam(RamifiedError):
    """No exemplar exists for the requested family parameter."""


class NonDivisor(RamifiedError):
    """The multiplier order does not divide p - 1."""


class NotPrimeDegree(RamifiedError):
    """Affine embedding is only defined for groups of prime degree."""


class NotSolvable(RamifiedError):
    """Affine embedding requires a solvable group."""


class DegenerateLeading(RamifiedError):
    """Polynomial has the wrong degree for this solver."""


class NotSingular(RamifiedError):
    """Conic determinant is too far from zero to split into lines."""


class DegenerateQuartic(RamifiedError):
    """The quadric pencil collapsed; the caller falls back to special cases."""


class DivisionByZero(RamifiedError):
    """Every branch of a radical expression hit a zero denominator."""


class NotIndecomposable(RamifiedError):
    """Factor classification expects an indecomposable polynomial."""


class DerivativeDegenerate(RamifiedError):
    """Guard for an identically-zero derivative (impossible over Q)."""
