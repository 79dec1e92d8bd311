"""Truncated Taylor jets.

A :class:`Jet` holds ``(f(x0), f'(x0), ..., f^(K)(x0))`` for a scalar function
``f`` at a basepoint ``x0``. Arithmetic propagates all K derivatives exactly
(up to rounding) using the usual power-series recurrences. Internally each
operation works on normalized Taylor coefficients ``f^(k)/k!``; the public
``derivs`` are raw derivatives.

Orders are small (K <= ~10) so plain Python loops beat numpy here.
"""

from __future__ import annotations

import math
from typing import Sequence

from .errors import DomainError, SingularJet
from .expr import Constant, Expression, Parameter, Unary, evaluate, is_integer_exponent

__all__ = [
    "Jet", "DEFAULT_ORDER", "jet_parameter", "jet_constant", "jet_apply",
    "jet_invert", "jet_compose", "sin", "cos", "sqrt", "power",
]

DEFAULT_ORDER = 6


def _fact(n):
    return float(math.factorial(n))


def _to_taylor(derivs):
    return [d / _fact(k) for k, d in enumerate(derivs)]


def _cauchy(a, b, n):
    """First ``n`` coefficients of the product of two truncated series."""
    out = [0.0] * n
    for k in range(n):
        acc = 0.0
        for j in range(k + 1):
            acc += a[j] * b[k - j]
        out[k] = acc
    return out


class Jet:
    """Value and derivatives 0..K of a scalar function at ``basepoint``."""

    __slots__ = ("basepoint", "derivs")

    def __init__(self, derivs: Sequence[float], basepoint: float = 0.0):
        self.derivs = tuple(float(d) for d in derivs)
        if not self.derivs:
            raise ValueError("a jet needs at least the value")
        self.basepoint = float(basepoint)

    @classmethod
    def _from_taylor(cls, coeffs, basepoint):
        return cls([c * _fact(k) for k, c in enumerate(coeffs)], basepoint)

    @property
    def order(self) -> int:
        return len(self.derivs) - 1

    @property
    def value(self) -> float:
        return self.derivs[0]

    def __getitem__(self, k):
        return self.derivs[k]

    def __len__(self):
        return len(self.derivs)

    def __repr__(self):
        return f"Jet({list(self.derivs)!r}, basepoint={self.basepoint!r})"

    def taylor(self) -> list[float]:
        return _to_taylor(self.derivs)

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise ValueError(f"cannot raise jet order {self.order} to {order}")
        return Jet(self.derivs[: order + 1], self.basepoint)

    def derivative(self) -> "Jet":
        """Jet of f' at the same basepoint; one order lower."""
        if self.order < 1:
            raise ValueError("order-0 jet has no derivative information")
        return Jet(self.derivs[1:], self.basepoint)

    def is_finite(self) -> bool:
        return all(math.isfinite(d) for d in self.derivs)

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Jet):
            return other
        return jet_constant(float(other), self.order, self.basepoint)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(len(self), len(other))
        return Jet([self.derivs[k] + other.derivs[k] for k in range(n)], self.basepoint)

    __radd__ = __add__

    def __neg__(self):
        return Jet([-d for d in self.derivs], self.basepoint)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            c = float(other)
            return Jet([c * d for d in self.derivs], self.basepoint)
        n = min(len(self), len(other))
        return Jet._from_taylor(_cauchy(self.taylor(), other.taylor(), n), self.basepoint)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return self * (1.0 / float(other))
        n = min(len(self), len(other))
        a, b = self.taylor(), other.taylor()
        if b[0] == 0.0:
            raise DomainError(other, self.value, "jet division by a zero value")
        q = [0.0] * n
        for k in range(n):
            acc = a[k]
            for j in range(1, k + 1):
                acc -= b[j] * q[k - j]
            q[k] = acc / b[0]
        return Jet._from_taylor(q, self.basepoint)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, exponent):
        return power(self, exponent)


def jet_parameter(s0: float, order: int = DEFAULT_ORDER) -> Jet:
    """Jet of the identity function at ``s0``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return Jet([s0, 1.0] + [0.0] * (order - 1), s0)


def jet_constant(c: float, order: int = DEFAULT_ORDER, basepoint: float = 0.0) -> Jet:
    return Jet([c] + [0.0] * order, basepoint)


def sin(j: Jet) -> Jet:
    return _sincos(j)[0]


def cos(j: Jet) -> Jet:
    return _sincos(j)[1]


def _sincos(j: Jet):
    # s' = c f', c' = -s f'  =>  k s_k = sum_{i=1..k} i f_i c_{k-i}
    f = j.taylor()
    n = len(f)
    s = [math.sin(f[0])] + [0.0] * (n - 1)
    c = [math.cos(f[0])] + [0.0] * (n - 1)
    for k in range(1, n):
        acc_s = acc_c = 0.0
        for i in range(1, k + 1):
            acc_s += i * f[i] * c[k - i]
            acc_c += i * f[i] * s[k - i]
        s[k] = acc_s / k
        c[k] = -acc_c / k
    return Jet._from_taylor(s, j.basepoint), Jet._from_taylor(c, j.basepoint)


def sqrt(j: Jet, node=None) -> Jet:
    f = j.taylor()
    n = len(f)
    if f[0] < 0.0 or (f[0] == 0.0 and n > 1):
        raise DomainError(node if node is not None else "sqrt", f[0],
                          "square root jet of a non-positive value")
    g = [math.sqrt(f[0])] + [0.0] * (n - 1)
    for k in range(1, n):
        acc = f[k]
        for i in range(1, k):
            acc -= g[i] * g[k - i]
        g[k] = acc / (2.0 * g[0])
    return Jet._from_taylor(g, j.basepoint)


def power(j: Jet, exponent: float, node=None) -> Jet:
    """Jet of ``f**exponent`` for a constant exponent.

    Integer exponents use repeated multiplication and accept any base (zero
    only for non-negative exponents); other exponents need a positive base.
    """
    exponent = float(exponent)
    label = node if node is not None else "power"
    if is_integer_exponent(exponent):
        e = int(exponent)
        if e == 0:
            return jet_constant(1.0, j.order, j.basepoint)
        if e < 0:
            if j.value == 0.0:
                raise DomainError(label, j.value, "zero raised to a negative power")
            return 1.0 / _int_power(j, -e)
        return _int_power(j, e)
    f = j.taylor()
    n = len(f)
    if f[0] <= 0.0:
        raise DomainError(label, f[0], "non-integer power of a non-positive base")
    # f g' = a f' g  =>  k f0 g_k = sum_{i=1..k} ((a+1) i - k) f_i g_{k-i}
    g = [f[0] ** exponent] + [0.0] * (n - 1)
    for k in range(1, n):
        acc = 0.0
        for i in range(1, k + 1):
            acc += ((exponent + 1.0) * i - k) * f[i] * g[k - i]
        g[k] = acc / (k * f[0])
    return Jet._from_taylor(g, j.basepoint)


def _int_power(j: Jet, e: int) -> Jet:
    result = None
    base = j
    while e:
        if e & 1:
            result = base if result is None else result * base
        e >>= 1
        if e:
            base = base * base
    return result


def jet_apply(expr: Expression, j: Jet) -> Jet:
    """Jet of ``expr`` composed with the function represented by ``j``."""
    if isinstance(expr, Constant):
        return jet_constant(expr.value, j.order, j.basepoint)
    if isinstance(expr, Parameter):
        return j
    if isinstance(expr, Unary):
        x = jet_apply(expr.child, j)
        if expr.op == "neg":
            return -x
        if expr.op == "sin":
            return sin(x)
        if expr.op == "cos":
            return cos(x)
        return sqrt(x, expr)
    a = jet_apply(expr.left, j)
    op = expr.op
    if op == "pow":
        # the exponent subtree is parameter-free by construction
        return power(a, evaluate(expr.right, 0.0), expr)
    b = jet_apply(expr.right, j)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if b.value == 0.0:
        raise DomainError(expr, a.value, "division by zero")
    return a / b


def jet_compose(outer: Jet, inner: Jet) -> Jet:
    """Jet of ``outer(inner(x))``.

    ``outer`` must be based at ``inner.value``; the result is based at
    ``inner.basepoint`` with order ``min(outer.order, inner.order)``.
    """
    if abs(outer.basepoint - inner.value) > 1e-9 * max(1.0, abs(inner.value)):
        raise ValueError(f"outer jet based at {outer.basepoint!r}, inner value is {inner.value!r}")
    n = min(len(outer), len(inner))
    f = outer.taylor()
    g = inner.taylor()
    g[0] = 0.0
    out = [f[0]] + [0.0] * (n - 1)
    term = [1.0] + [0.0] * (n - 1)
    for k in range(1, n):
        term = _cauchy(term, g, n)  # (inner - inner0)^k, starts at x^k
        for i in range(k, n):
            out[i] += f[k] * term[i]
    return Jet._from_taylor(out, inner.basepoint)


def jet_invert(j: Jet) -> Jet:
    """Jet of the inverse function at ``j.value``.

    If ``j`` represents ``s(t)`` at ``t0`` the result represents ``t(s)`` at
    ``s0 = s(t0)``, with ``t(s0) = t0``.
    """
    d1 = j.derivs[1] if j.order >= 1 else 0.0
    if abs(d1) < 1e-12 * max(1.0, abs(j.value)):
        raise SingularJet(f"cannot invert jet with first derivative {d1!r}")
    n = len(j)
    a = j.taylor()
    a[0] = 0.0
    b = [0.0, 1.0 / a[1]] + [0.0] * (n - 2)
    # fix b_k so that coefficient k of a(b(u)) vanishes, k = 2..K
    for k in range(2, n):
        comp = _compose_coeffs(a, b, k + 1)
        b[k] = -comp[k] / a[1]
    b[0] = j.basepoint
    return Jet._from_taylor(b, j.value)


def _compose_coeffs(f, g, n):
    """Coefficients 0..n-1 of f(g(u)) where g[0] == 0 and f[0] is ignored."""
    out = [0.0] * n
    term = [1.0] + [0.0] * (n - 1)
    gg = (list(g) + [0.0] * n)[:n]
    gg[0] = 0.0
    for k in range(1, n):
        term = _cauchy(term, gg, n)
        fk = f[k] if k < len(f) else 0.0
        for i in range(n):
            out[i] += fk * term[i]
    return out
