"""Exception hierarchy shared by every moframe module."""


class MoframeError(Exception):
    """Base class for all moframe errors."""


class ExpressionSyntaxError(MoframeError, ValueError):
    """Malformed formula text.

    ``offset`` is the byte offset into the UTF-8 encoded input where parsing
    stopped; ``expected`` is a short hint naming what the parser wanted there.
    """

    def __init__(self, message, offset, expected=None):
        self.offset = offset
        self.expected = expected
        hint = f" (expected {expected})" if expected else ""
        super().__init__(f"{message} at offset {offset}{hint}")


class UnknownIdentifier(ExpressionSyntaxError):
    def __init__(self, name, offset):
        self.name = name
        super().__init__(f"unknown identifier {name!r}", offset,
                         expected="'s', 'pi', sin, cos or sqrt")


class DomainError(MoframeError, ArithmeticError):
    """An expression node was evaluated outside its real domain."""

    def __init__(self, node, value, reason):
        self.node = node
        self.value = value
        super().__init__(f"{reason}: {node} at argument {value!r}")


class SingularJet(MoframeError, ArithmeticError):
    pass


class QuadratureFailure(MoframeError, ArithmeticError):
    pass


class RootFindFailure(MoframeError, ArithmeticError):
    pass


class CurvatureVanishes(MoframeError, ArithmeticError):
    """Curvature at or below the singular tolerance where it must be positive."""

    def __init__(self, point, kappa):
        self.point = point
        self.kappa = kappa
        super().__init__(f"curvature vanishes at parameter {point!r} (kappa={kappa:.3e})")


class NonConstantCurvature(MoframeError, ValueError):
    pass


class CorrespondenceFailure(MoframeError, ArithmeticError):
    pass


class UnknownCurve(MoframeError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown curve"
