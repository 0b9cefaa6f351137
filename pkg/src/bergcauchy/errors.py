class NotUnivalentError(ValueError):
    """Coefficient univalence criterion fails; ``margin`` is the computed value."""

    def __init__(self, message: str, margin: float):
        super().__init__(message)
        self.margin = margin


class ClearanceError(ValueError):
    """A point lies inside, on, or too close to a boundary or pole."""


class QuadratureError(ValueError):
    """Integrand returned a non-finite value at a quadrature node."""

    def __init__(self, message: str, node: complex):
        super().__init__(message)
        self.node = node


class InversionError(RuntimeError):
    """Least-squares Cauchy inversion is rank deficient beyond the regularization."""

    def __init__(self, message: str, condition: float):
        super().__init__(message)
        self.condition = condition
