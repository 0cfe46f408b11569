"""Constant-curvature model spaces in a single conformally flat chart.

The metric is g = Ω(x)² δ with Ω(x) = 1 / (1 + κ|x|²/4): flat space for
κ = 0, the round sphere for κ > 0 (chart misses one point), hyperbolic
space for κ < 0 (chart is the ball |x|² < -4/κ, sampled away from the
boundary by a configurable margin).  The orthonormal coframe is
e^a = Ω dx^a with dual frame X_a = Ω⁻¹ ∂_a.

All chart functions accept dual-number coordinates, so every derived
quantity (connection, curvature) is differentiated exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.stats import qmc

from .clifford import (Multivector, QuadraticSpace, basis_vector, contract,
                       wedge)
from .dual import Dual, primal, reciprocal, seed, tangent
from .spin_rep import GammaRep, _mat_vec, rep


class SpaceKind(str, Enum):
    FLAT = "flat"
    SPHERE = "sphere"
    HYPERBOLIC = "hyperbolic"


class OutOfDomainError(ValueError):
    pass


@dataclass(frozen=True)
class ModelSpace:
    space: QuadraticSpace
    kind: SpaceKind
    curvature: float
    box_halfwidth: float
    exclusion_margin: float = 0.1

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def is_flat(self) -> bool:
        return self.kind is SpaceKind.FLAT

    @property
    def chart_radius(self) -> float:
        """Radius of the Ω singularity (hyperbolic only)."""
        if self.kind is not SpaceKind.HYPERBOLIC:
            return math.inf
        return 2.0 / math.sqrt(-self.curvature)

    # chart functions ----------------------------------------------------

    def conformal_factor(self, coords):
        """Ω(x); accepts dual coordinates."""
        if self.curvature == 0.0:
            return 1.0
        r2 = coords[0] * coords[0]
        for c in coords[1:]:
            r2 = r2 + c * c
        return reciprocal(1.0 + 0.25 * self.curvature * r2)

    def x_ln_omega(self, coords):
        """Frame derivatives X_a(ln Ω), via dual-number differentiation of Ω."""
        if self.curvature == 0.0:
            return (0.0,) * self.dim
        level, dc = seed(coords)
        w = self.conformal_factor(dc)
        w0 = primal(w, level)
        inv2 = reciprocal(w0 * w0)
        return tuple(inv2 * tangent(w, a, level) for a in range(self.dim))

    def connection_bivectors(self, coords):
        """σ_c = Σ_{a,b} ω_{ab}(X_c) e^{ab} (full double sum), one per direction.

        The spinor connection is (1/4) rep(σ_c) and the form connection is
        (1/4)[σ_c, ·]; both reproduce ∇e^b = -ω^b{}_c e^c.
        """
        n = self.dim
        if self.curvature == 0.0:
            return None
        xf = self.x_ln_omega(coords)
        sigmas = []
        for c in range(n):
            pairs = []
            for b in range(n):
                if b == c:
                    continue
                lo, hi = (b, c) if b < c else (c, b)
                mask = (1 << lo) | (1 << hi)
                # ω_{cb}(X_c) = -X_b ln Ω stored on blade e^{lo,hi}
                coeff = 2.0 * xf[b] if lo == c else -2.0 * xf[b]
                pairs.append((mask, coeff))
            sigmas.append(Multivector.from_coeffs(self.space, pairs))
        return tuple(sigmas)

    # domain -------------------------------------------------------------

    def contains(self, coords) -> bool:
        if len(coords) != self.dim:
            return False
        if any(abs(c) > self.box_halfwidth + 1e-12 for c in coords):
            return False
        if self.kind is SpaceKind.HYPERBOLIC:
            r = math.sqrt(sum(c * c for c in coords))
            if r > (1.0 - self.exclusion_margin) * self.chart_radius:
                return False
        return True

    def require_point(self, coords):
        pt = tuple(float(c) for c in coords)
        if not self.contains(pt):
            raise OutOfDomainError(f"point {pt} outside the chart domain")
        return pt

    def sample_points(self, count: int, seed_value: int = 0):
        """Low-discrepancy sample of the chart domain (deterministic per seed)."""
        sampler = qmc.Halton(d=self.dim, scramble=True, seed=seed_value)
        pts = []
        while len(pts) < count:
            for row in sampler.random(count):
                x = tuple(self.box_halfwidth * (2.0 * c - 1.0) for c in row)
                if self.contains(x):
                    pts.append(x)
                    if len(pts) == count:
                        break
        return pts


def model_space(kind, dim: int, curvature: float | None = None,
                box_halfwidth: float | None = None,
                exclusion_margin: float = 0.1) -> ModelSpace:
    """Validated constructor; curvature sign must match the space kind."""
    kind = SpaceKind(kind)
    space = QuadraticSpace(dim)
    if kind is SpaceKind.FLAT:
        if curvature not in (None, 0, 0.0):
            raise ValueError("flat space requires curvature 0")
        curvature = 0.0
    elif kind is SpaceKind.SPHERE:
        curvature = 1.0 if curvature is None else float(curvature)
        if curvature <= 0:
            raise ValueError("sphere requires curvature > 0")
    else:
        curvature = -1.0 if curvature is None else float(curvature)
        if curvature >= 0:
            raise ValueError("hyperbolic space requires curvature < 0")
    if box_halfwidth is None:
        if kind is SpaceKind.HYPERBOLIC:
            radius = 2.0 / math.sqrt(-curvature)
            box_halfwidth = (1.0 - exclusion_margin) * radius / math.sqrt(dim)
        else:
            box_halfwidth = 1.0
    return ModelSpace(space, kind, float(curvature), float(box_halfwidth),
                      float(exclusion_margin))


# frame-level API --------------------------------------------------------

def frame(ms: ModelSpace, x) -> np.ndarray:
    """Coframe components e^a_i (rows a, columns i) at a chart point."""
    pt = ms.require_point(x)
    return float(ms.conformal_factor(pt)) * np.eye(ms.dim)


def frame_vectors(ms: ModelSpace, x) -> np.ndarray:
    """Frame components X_a^i; frame(ms, x) @ frame_vectors(ms, x).T = identity."""
    pt = ms.require_point(x)
    return np.eye(ms.dim) / float(ms.conformal_factor(pt))


def spin_connection(ms: ModelSpace, x) -> np.ndarray:
    """Connection coefficients W[a, b, c] = ω_{ab}(X_c), antisymmetric in a, b."""
    pt = ms.require_point(x)
    n = ms.dim
    xf = ms.x_ln_omega(pt)
    w = np.zeros((n, n, n), dtype=complex)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                w[a, b, c] = xf[b] * (a == c) - xf[a] * (b == c)
    return w


# covariant derivative engine ---------------------------------------------

def covariant_frame_derivatives_mv(ms: ModelSpace, fn, coords):
    """Value and frame-direction covariant derivatives of a multivector function.

    ``fn`` maps raw chart coordinates (scalars or duals) to a Multivector.
    Returns ``(value, [∇_{X_1} .. ∇_{X_n}])``.
    """
    n = ms.dim
    level, dc = seed(coords)
    raw = fn(dc)
    val = _strip_mv(raw, level)
    oinv = reciprocal(ms.conformal_factor(coords))
    sigmas = ms.connection_bivectors(coords)
    derivs = []
    for a in range(n):
        d_coeffs = _pack([oinv * tangent(c, a, level) for c in raw.coeffs])
        deriv = Multivector(ms.space, d_coeffs)
        if sigmas is not None:
            deriv = deriv + 0.25 * (sigmas[a] * val - val * sigmas[a])
        derivs.append(deriv)
    return val, derivs


def covariant_frame_derivatives_spinor(ms: ModelSpace, gamma: GammaRep, fn, coords):
    """Spinor analogue: ∇_{X_a}ψ = X_a(ψ) + (1/4) rep(σ_a) ψ."""
    n = ms.dim
    level, dc = seed(coords)
    raw = np.asarray(fn(dc))
    val = _pack([primal(c, level) for c in raw])
    oinv = reciprocal(ms.conformal_factor(coords))
    sigmas = ms.connection_bivectors(coords)
    derivs = []
    for a in range(n):
        d = _pack([oinv * tangent(c, a, level) for c in raw])
        if sigmas is not None:
            d = d + 0.25 * _mat_vec(rep(gamma, sigmas[a]), val)
        derivs.append(d)
    return val, derivs


def _strip_mv(mv: Multivector, level) -> Multivector:
    return Multivector(mv.space, _pack([primal(c, level) for c in mv.coeffs]))


def _pack(values) -> np.ndarray:
    if any(isinstance(v, Dual) for v in values):
        out = np.empty(len(values), dtype=object)
        out[:] = values
        return out
    return np.asarray(values, dtype=complex)


# curvature ----------------------------------------------------------------

@dataclass(frozen=True)
class CurvatureData:
    """Pointwise curvature objects in the orthonormal frame.

    ``riemann[a][b]`` are the curvature 2-forms R_ab, ``ricci[a]`` the Ricci
    1-forms P_a = i_{X^b} R_{ba}, ``scalar`` the curvature scalar.  The
    conformal 2-forms and the Schouten-type 1-forms carry a 1/(n-2) factor
    and are only defined for dim >= 3.
    """

    riemann: tuple
    ricci: tuple
    scalar: complex
    conformal: tuple | None
    schouten: tuple | None


def _connection_form_fn(ms: ModelSpace, a: int, b: int):
    def fn(coords):
        xf = ms.x_ln_omega(coords)
        return Multivector.from_coeffs(
            ms.space, [(1 << a, xf[b]), (1 << b, -xf[a])])
    return fn


def curvature(ms: ModelSpace, x) -> CurvatureData:
    """R_ab = dω_ab + ω_ac ∧ ω^c{}_b and its traces at a chart point."""
    pt = ms.require_point(x)
    n = ms.dim
    space = ms.space
    zero = Multivector.zero(space)
    if ms.is_flat:
        riemann = tuple(tuple(zero for _ in range(n)) for _ in range(n))
        ricci = tuple(zero for _ in range(n))
        conformal = riemann if n >= 3 else None
        schouten = ricci if n >= 3 else None
        return CurvatureData(riemann, ricci, 0.0, conformal, schouten)

    xf = ms.x_ln_omega(pt)
    omega_vals = [[Multivector.from_coeffs(space, [(1 << a, xf[b]), (1 << b, -xf[a])])
                   for b in range(n)] for a in range(n)]
    riemann = [[zero for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            _, covs = covariant_frame_derivatives_mv(ms, _connection_form_fn(ms, a, b), pt)
            d_omega = zero
            for u in range(n):
                d_omega = d_omega + wedge(basis_vector(space, u + 1), covs[u])
            quad = zero
            for c in range(n):
                quad = quad + wedge(omega_vals[a][c], omega_vals[c][b])
            riemann[a][b] = d_omega + quad
            riemann[b][a] = -riemann[a][b]
    ricci = []
    for a in range(n):
        p_a = zero
        for b in range(n):
            p_a = p_a + contract(b + 1, riemann[b][a])
        ricci.append(p_a)
    scalar = 0.0
    for a in range(n):
        scalar = scalar + contract(a + 1, ricci[a]).coeffs[0]
    conformal = None
    schouten = None
    if n >= 3:
        conformal_rows = []
        schouten_list = []
        for a in range(n):
            e_a = basis_vector(space, a + 1)
            schouten_list.append(
                (1.0 / (n - 2)) * (scalar / (2.0 * (n - 1)) * e_a - ricci[a]))
        for a in range(n):
            row = []
            e_a = basis_vector(space, a + 1)
            for b in range(n):
                e_b = basis_vector(space, b + 1)
                c_ab = (riemann[a][b]
                        - (1.0 / (n - 2)) * (wedge(ricci[a], e_b) - wedge(ricci[b], e_a))
                        + (scalar / ((n - 1) * (n - 2))) * wedge(e_a, e_b))
                row.append(c_ab)
            conformal_rows.append(tuple(row))
        conformal = tuple(conformal_rows)
        schouten = tuple(schouten_list)
    return CurvatureData(
        tuple(tuple(r) for r in riemann), tuple(ricci), scalar, conformal, schouten)


def conformal_2forms(ms: ModelSpace, x):
    """Conformal (Weyl-type) 2-forms; rejected for dim 2."""
    if ms.dim < 3:
        raise ValueError("conformal 2-forms carry a 1/(n-2) factor; need dim >= 3")
    return curvature(ms, x).conformal


def schouten_1forms(ms: ModelSpace, x):
    """The 1-forms entering the twistor integrability conditions; dim >= 3."""
    if ms.dim < 3:
        raise ValueError("these 1-forms carry a 1/(n-2) factor; need dim >= 3")
    return curvature(ms, x).schouten


def structure_equation_residual(ms: ModelSpace, x):
    """de^a + ω^a{}_b ∧ e^b per frame index, with de^a from coordinate derivatives."""
    pt = ms.require_point(x)
    n = ms.dim
    space = ms.space
    level, dc = seed(pt)
    w = ms.conformal_factor(dc)
    w0 = primal(w, level)
    grad = [tangent(w, i, level) for i in range(n)]
    inv2 = 1.0 / (w0 * w0)
    xf = ms.x_ln_omega(pt)
    residuals = []
    for a in range(n):
        # de^a = ∂_i Ω Ω^{-2} e^i ∧ e^a
        de = Multivector.zero(space)
        e_a = basis_vector(space, a + 1)
        for i in range(n):
            de = de + (grad[i] * inv2) * wedge(basis_vector(space, i + 1), e_a)
        conn = Multivector.zero(space)
        for b in range(n):
            omega_ab = Multivector.from_coeffs(
                space, [(1 << a, xf[b]), (1 << b, -xf[a])])
            conn = conn + wedge(omega_ab, basis_vector(space, b + 1))
        residuals.append(de + conn)
    return residuals
