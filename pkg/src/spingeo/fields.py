"""Differentiable form and spinor fields on a model-space chart.

Fields are closed-form expressions (coordinate polynomials times powers of
the conformal factor), not grids: evaluating at dual-number coordinates
yields machine-precision frame derivatives, and derived fields (exterior
derivative, co-derivative, operator outputs) remain fields that can be
differentiated again.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import Multivector, basis_vector, contract, wedge
from .dual import power, value
from .model_space import (ModelSpace, covariant_frame_derivatives_mv,
                          covariant_frame_derivatives_spinor, _pack)
from .spin_rep import GammaRep, spinor_max_abs


@dataclass(frozen=True, eq=False)
class FormField:
    """Chart function valued in pure degree-``degree`` multivectors."""

    ms: ModelSpace
    degree: int
    fn: object

    def __call__(self, coords) -> Multivector:
        return self.fn(tuple(coords))


@dataclass(frozen=True, eq=False)
class SpinorField:
    """Chart function valued in spinor components of one representation."""

    ms: ModelSpace
    gamma: GammaRep
    fn: object

    def __call__(self, coords) -> np.ndarray:
        return self.fn(tuple(coords))


# constructors -------------------------------------------------------------

def constant_form(ms: ModelSpace, mv: Multivector, degree: int | None = None) -> FormField:
    if degree is None:
        present = mv.grades_present(1e-300)
        degree = present[0] if present else 0
    return FormField(ms, degree, lambda coords: mv)


def form_field(ms: ModelSpace, degree: int, fn) -> FormField:
    return FormField(ms, degree, fn)


def constant_spinor(ms: ModelSpace, gamma: GammaRep, components) -> SpinorField:
    arr = np.asarray(components, dtype=complex)
    return SpinorField(ms, gamma, lambda coords: arr)


def spinor_field(ms: ModelSpace, gamma: GammaRep, fn) -> SpinorField:
    return SpinorField(ms, gamma, fn)


def monomial_form(ms: ModelSpace, mask: int, exponents, omega_power: float) -> FormField:
    """Feature field x^α Ω^s on one basis blade."""
    exps = tuple(exponents)

    def fn(coords):
        c = 1.0
        for x, e in zip(coords, exps):
            for _ in range(e):
                c = c * x
        if omega_power != 0:
            c = c * power(ms.conformal_factor(coords), omega_power)
        return Multivector.from_coeffs(ms.space, [(mask, c)])

    return FormField(ms, int(mask).bit_count(), fn)


def monomial_spinor(ms: ModelSpace, gamma: GammaRep, component: int,
                    exponents, omega_power: float) -> SpinorField:
    exps = tuple(exponents)
    size = gamma.matrix_dim

    def fn(coords):
        c = 1.0
        for x, e in zip(coords, exps):
            for _ in range(e):
                c = c * x
        if omega_power != 0:
            c = c * power(ms.conformal_factor(coords), omega_power)
        comps = [0.0] * size
        comps[component] = c
        return _pack(comps)

    return SpinorField(ms, gamma, fn)


def polynomial_form(ms: ModelSpace, degree: int, table) -> FormField:
    """Compiled field from ``(mask, ((coeff, exponents, omega_power), ...))`` rows.

    Monomial and Ω-power values are shared across blades per evaluation, so
    solved basis elements stay cheap inside nested derivatives.
    """
    table = tuple((mask, tuple(terms)) for mask, terms in table)

    def fn(coords):
        cache = {}
        omega = None
        pairs = []
        for mask, terms in table:
            acc = 0.0
            for coeff, exps, pw in terms:
                key = (exps, pw)
                v = cache.get(key)
                if v is None:
                    v = 1.0
                    for x, e in zip(coords, exps):
                        for _ in range(e):
                            v = v * x
                    if pw != 0:
                        if omega is None:
                            omega = ms.conformal_factor(coords)
                        v = v * power(omega, pw)
                    cache[key] = v
                acc = acc + coeff * v
            pairs.append((mask, acc))
        return Multivector.from_coeffs(ms.space, pairs)

    return FormField(ms, degree, fn)


def polynomial_spinor(ms: ModelSpace, gamma: GammaRep, table) -> SpinorField:
    """Compiled spinor field from ``(component, ((coeff, exponents, omega_power), ...))``."""
    size = gamma.matrix_dim
    table = tuple((comp, tuple(terms)) for comp, terms in table)

    def fn(coords):
        cache = {}
        omega = None
        comps = [0.0] * size
        for comp, terms in table:
            acc = 0.0
            for coeff, exps, pw in terms:
                key = (exps, pw)
                v = cache.get(key)
                if v is None:
                    v = 1.0
                    for x, e in zip(coords, exps):
                        for _ in range(e):
                            v = v * x
                    if pw != 0:
                        if omega is None:
                            omega = ms.conformal_factor(coords)
                        v = v * power(omega, pw)
                    cache[key] = v
                acc = acc + coeff * v
            comps[comp] = comps[comp] + acc
        return _pack(comps)

    return SpinorField(ms, gamma, fn)


def combine_forms(fields, weights) -> FormField:
    fields = list(fields)
    weights = list(weights)
    first = fields[0]

    def fn(coords):
        acc = weights[0] * fields[0].fn(coords)
        for f, w in zip(fields[1:], weights[1:]):
            acc = acc + w * f.fn(coords)
        return acc

    return FormField(first.ms, first.degree, fn)


def combine_spinors(fields, weights) -> SpinorField:
    fields = list(fields)
    weights = list(weights)
    first = fields[0]

    def fn(coords):
        acc = weights[0] * np.asarray(fields[0].fn(coords))
        for f, w in zip(fields[1:], weights[1:]):
            acc = acc + w * np.asarray(f.fn(coords))
        return acc

    return SpinorField(first.ms, first.gamma, fn)


def random_polynomial_form(ms: ModelSpace, rng: np.random.Generator, degree: int,
                           poly_degree: int = 1) -> FormField:
    """Random pure-degree field with polynomial coefficients (for property sweeps)."""
    n = ms.dim
    masks = [m for m in range(ms.space.blade_count) if m.bit_count() == degree]
    const = {m: complex(rng.standard_normal() + 1j * rng.standard_normal()) for m in masks}
    lin = {m: rng.standard_normal(n) + 1j * rng.standard_normal(n) for m in masks}
    quad = None
    if poly_degree >= 2:
        quad = {m: rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
                for m in masks}

    def fn(coords):
        pairs = []
        for m in masks:
            c = const[m]
            for i in range(n):
                c = c + lin[m][i] * coords[i]
            if quad is not None:
                for i in range(n):
                    for j in range(n):
                        c = c + quad[m][i, j] * coords[i] * coords[j]
            pairs.append((m, c))
        return Multivector.from_coeffs(ms.space, pairs)

    return FormField(ms, degree, fn)


def random_polynomial_spinor(ms: ModelSpace, gamma: GammaRep,
                             rng: np.random.Generator, poly_degree: int = 1) -> SpinorField:
    n = ms.dim
    size = gamma.matrix_dim
    const = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    lin = rng.standard_normal((n, size)) + 1j * rng.standard_normal((n, size))

    def fn(coords):
        comps = list(const)
        for i in range(n):
            for k in range(size):
                comps[k] = comps[k] + lin[i, k] * coords[i]
        if poly_degree >= 2:
            r2 = sum(c * c for c in coords)
            comps = [c + 0.1 * r2 * c0 for c, c0 in zip(comps, const)]
        return _pack(comps)

    return SpinorField(ms, gamma, fn)


# derivatives ---------------------------------------------------------------

def cov_form_all(omega: FormField, coords):
    """Value and all frame-direction covariant derivatives at ``coords``."""
    return covariant_frame_derivatives_mv(omega.ms, omega.fn, tuple(coords))


def cov_spinor_all(psi: SpinorField, coords):
    return covariant_frame_derivatives_spinor(psi.ms, psi.gamma, psi.fn, tuple(coords))


def covariant_derivative_form(omega: FormField, a: int, x) -> Multivector:
    """∇_{X_a} omega at a validated chart point (``a`` 1-based)."""
    pt = omega.ms.require_point(x)
    if not 1 <= a <= omega.ms.dim:
        raise ValueError(f"frame index {a} outside 1..{omega.ms.dim}")
    return cov_form_all(omega, pt)[1][a - 1]


def covariant_derivative_spinor(psi: SpinorField, a: int, x) -> np.ndarray:
    pt = psi.ms.require_point(x)
    if not 1 <= a <= psi.ms.dim:
        raise ValueError(f"frame index {a} outside 1..{psi.ms.dim}")
    return cov_spinor_all(psi, pt)[1][a - 1]


@dataclass(frozen=True, eq=False)
class FormBundle:
    """Shared single-pass evaluation: value, ∇_{X_a}, dω, δω."""

    value: Multivector
    covs: tuple
    d: Multivector
    delta: Multivector


def form_bundle(omega: FormField, coords) -> FormBundle:
    val, covs = cov_form_all(omega, coords)
    space = omega.ms.space
    d = Multivector.zero(space)
    delta = Multivector.zero(space)
    for a, cov in enumerate(covs):
        d = d + wedge(basis_vector(space, a + 1), cov)
        delta = delta - contract(a + 1, cov)
    return FormBundle(val, tuple(covs), d, delta)


def exterior_derivative(omega: FormField) -> FormField:
    """d = e^a ∧ ∇_{X_a} as a derived field."""
    deg = min(omega.degree + 1, omega.ms.dim)

    def fn(coords):
        return form_bundle(omega, coords).d

    return FormField(omega.ms, deg, fn)


def coderivative(omega: FormField) -> FormField:
    """δ = -i_{X^a} ∇_{X_a} as a derived field."""
    deg = max(omega.degree - 1, 0)

    def fn(coords):
        return form_bundle(omega, coords).delta

    return FormField(omega.ms, deg, fn)


# normalization and sweeps ---------------------------------------------------

def form_max_abs(omega: FormField, points) -> float:
    return max(omega(x).max_abs() for x in points)


def spinor_field_max_abs(psi: SpinorField, points) -> float:
    return max(spinor_max_abs(psi(x)) for x in points)


def normalize_form(omega: FormField, points) -> FormField:
    """Scale so the largest coefficient magnitude over ``points`` is 1."""
    scale = form_max_abs(omega, points)
    if scale < 1e-300:
        return omega
    return combine_forms([omega], [1.0 / scale])


def normalize_spinor(psi: SpinorField, points) -> SpinorField:
    scale = spinor_field_max_abs(psi, points)
    if scale < 1e-300:
        return psi
    return combine_spinors([psi], [1.0 / scale])


def coordinate_oneform(ms: ModelSpace) -> FormField:
    """x̃ paired with the frame basis: Σ_a x^a e^a."""

    def fn(coords):
        return Multivector.from_coeffs(
            ms.space, [(1 << a, coords[a]) for a in range(ms.dim)])

    return FormField(ms, 1, fn)
