"""Forward-mode dual numbers for exact chart derivatives.

A :class:`Dual` carries a value together with first-order partials against
the seed directions of one differentiation *level*.  Every call to
:func:`seed` opens a fresh level, so quantities that are themselves built
from derivatives (a derivative field fed back into a derivative) can be
differentiated again without perturbation confusion: a dual of a lower
level behaves as a constant on a higher-level tape.
"""

from __future__ import annotations

import itertools

import numpy as np

_LEVELS = itertools.count(1)


class Dual:
    """Scalar with value ``val`` and partials ``grad`` on tape ``level``."""

    __slots__ = ("level", "val", "grad")

    def __init__(self, level, val, grad):
        self.level = level
        self.val = val
        self.grad = grad

    def __repr__(self):
        return f"Dual(level={self.level}, val={self.val!r}, grad={self.grad!r})"

    # arithmetic ---------------------------------------------------------
    # Array operands are deferred to numpy so duals distribute elementwise.

    def __add__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        if isinstance(other, Dual):
            if other.level == self.level:
                return Dual(self.level, self.val + other.val,
                            tuple(g + h for g, h in zip(self.grad, other.grad)))
            if other.level > self.level:
                return Dual(other.level, self + other.val, other.grad)
        return Dual(self.level, self.val + other, self.grad)

    def __radd__(self, other):
        return Dual(self.level, other + self.val, self.grad)

    def __sub__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        if isinstance(other, Dual):
            if other.level == self.level:
                return Dual(self.level, self.val - other.val,
                            tuple(g - h for g, h in zip(self.grad, other.grad)))
            if other.level > self.level:
                return Dual(other.level, self - other.val,
                            tuple(-h for h in other.grad))
        return Dual(self.level, self.val - other, self.grad)

    def __rsub__(self, other):
        return Dual(self.level, other - self.val, tuple(-g for g in self.grad))

    def __mul__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        if isinstance(other, Dual):
            if other.level == self.level:
                return Dual(self.level, self.val * other.val,
                            tuple(g * other.val + self.val * h
                                  for g, h in zip(self.grad, other.grad)))
            if other.level > self.level:
                return Dual(other.level, self * other.val,
                            tuple(self * h for h in other.grad))
        return Dual(self.level, self.val * other, tuple(g * other for g in self.grad))

    def __rmul__(self, other):
        return Dual(self.level, other * self.val, tuple(other * g for g in self.grad))

    def __truediv__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        if isinstance(other, Dual):
            return self * reciprocal(other)
        return Dual(self.level, self.val / other, tuple(g / other for g in self.grad))

    def __rtruediv__(self, other):
        return other * reciprocal(self)

    def __neg__(self):
        return Dual(self.level, -self.val, tuple(-g for g in self.grad))

    def __pos__(self):
        return self

    def __pow__(self, exponent):
        return power(self, exponent)

    def conjugate(self):
        # Coordinates are real, so conjugation commutes with the partials.
        return Dual(self.level, self.val.conjugate(),
                    tuple(g.conjugate() for g in self.grad))


def reciprocal(x):
    """1/x for duals and plain scalars."""
    if isinstance(x, Dual):
        inv = reciprocal(x.val)
        scale = -(inv * inv)
        return Dual(x.level, inv, tuple(scale * g for g in x.grad))
    return 1.0 / x


def power(x, exponent):
    """x**exponent for real exponents; fractional exponents need x > 0."""
    if isinstance(x, Dual):
        scale = exponent * power(x.val, exponent - 1)
        return Dual(x.level, power(x.val, exponent),
                    tuple(scale * g for g in x.grad))
    return x ** exponent


def sqrt(x):
    return power(x, 0.5)


def seed(coords):
    """Open a new differentiation level over ``coords``.

    Returns ``(level, duals)`` where ``duals[i]`` carries a unit partial in
    direction ``i``.  Coordinates may themselves be duals of earlier levels.
    """
    level = next(_LEVELS)
    n = len(coords)
    duals = tuple(
        Dual(level, c, tuple(1.0 if j == i else 0.0 for j in range(n)))
        for i, c in enumerate(coords)
    )
    return level, duals


def primal(x, level):
    """Value of ``x`` with the partials of ``level`` stripped."""
    if isinstance(x, Dual) and x.level == level:
        return x.val
    return x


def tangent(x, i, level):
    """Partial of ``x`` in seed direction ``i`` of ``level`` (0 if constant)."""
    if isinstance(x, Dual) and x.level == level:
        return x.grad[i]
    return 0.0


def value(x):
    """Strip all dual structure down to the underlying scalar."""
    while isinstance(x, Dual):
        x = x.val
    return x
