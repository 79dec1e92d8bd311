"""Helpers for 3-vectors of jets (tuples of three :class:`Jet`)."""

from __future__ import annotations

import numpy as np

from .jet import Jet, sqrt

VecJet = tuple  # (Jet, Jet, Jet)


def value(v) -> np.ndarray:
    return np.array([c.value for c in v])


def nth(v, k: int) -> np.ndarray:
    """k-th derivative vector."""
    return np.array([c.derivs[k] for c in v])


def deriv(v):
    return tuple(c.derivative() for c in v)


def truncate(v, order):
    return tuple(c.truncate(order) for c in v)


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def scale(a, k):
    """Multiply every component by a scalar or scalar jet ``k``."""
    return tuple(x * k for x in a)


def dot(a, b) -> Jet:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def norm(a) -> Jet:
    return sqrt(dot(a, a))


def det3(a, b, c) -> Jet:
    return dot(a, cross(b, c))
