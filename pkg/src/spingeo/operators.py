"""First-order operators on spinor and form fields, brackets, symmetry operators.

Everything here is pointwise-pure: operators return derived fields, and the
``*_residuals_at`` helpers evaluate defining-equation residuals at a single
chart point.  Residual sweeps on normalized fields feed the verification
reports.
"""

from __future__ import annotations

from dataclasses import dataclass

from .clifford import Multivector, basis_vector, contract, wedge
from .dual import value
from .fields import (FormBundle, FormField, SpinorField, cov_spinor_all,
                     form_bundle)
from .model_space import curvature
from .spin_rep import _mat_vec, clifford_action, spinor_max_abs


# spinor operators -----------------------------------------------------------

def _dirac_from_covs(gamma, covs):
    out = _mat_vec(gamma.gammas[0], covs[0])
    for a in range(1, len(covs)):
        out = out + _mat_vec(gamma.gammas[a], covs[a])
    return out


def dirac(psi: SpinorField) -> SpinorField:
    """D̸ψ = e^a.∇_{X_a}ψ as a derived spinor field."""

    def fn(coords):
        _, covs = cov_spinor_all(psi, coords)
        return _dirac_from_covs(psi.gamma, covs)

    return SpinorField(psi.ms, psi.gamma, fn)


def dirac_at(psi: SpinorField, coords):
    """One-pass evaluation: (ψ, ∇ψ per direction, D̸ψ)."""
    val, covs = cov_spinor_all(psi, coords)
    return val, covs, _dirac_from_covs(psi.gamma, covs)


def twistor_residuals_at(psi: SpinorField, coords):
    """P_{X_a}ψ = ∇_{X_a}ψ - (1/n) γ_a D̸ψ per frame direction."""
    n = psi.ms.dim
    _, covs, slashed = dirac_at(psi, coords)
    return [covs[a] - (1.0 / n) * _mat_vec(psi.gamma.gammas[a], slashed)
            for a in range(n)]


def killing_residuals_at(psi: SpinorField, lam: complex, coords):
    """∇_{X_a}ψ - λ γ_a ψ per frame direction."""
    val, covs = cov_spinor_all(psi, coords)
    return [covs[a] - lam * _mat_vec(psi.gamma.gammas[a], val)
            for a in range(psi.ms.dim)]


def integrability_residuals_at(psi: SpinorField, coords):
    """Twistor-equation integrability residuals at one point.

    Returns a dict with ``dirac_gradient`` (∇_a D̸ψ - (n/2) K_a.ψ, dim >= 3),
    ``dirac_squared`` (D̸²ψ + n/(4(n-1)) ℛ ψ) and ``conformal_action``
    (C_ab.ψ, dim >= 3).  Entries needing the 1/(n-2) factor are None in
    dimension 2.
    """
    ms = psi.ms
    n = ms.dim
    gamma = psi.gamma
    psi_val = psi(coords)
    slashed_field = dirac(psi)
    _, covs_d = cov_spinor_all(slashed_field, coords)
    slashed2 = _dirac_from_covs(gamma, covs_d)
    curv = curvature(ms, coords)
    out = {"dirac_gradient": None, "conformal_action": None}
    out["dirac_squared"] = slashed2 + (n / (4.0 * (n - 1))) * curv.scalar * psi_val
    if n >= 3:
        out["dirac_gradient"] = [
            covs_d[a] - (n / 2.0) * clifford_action(gamma, curv.schouten[a], psi_val)
            for a in range(n)]
        out["conformal_action"] = [
            clifford_action(gamma, curv.conformal[a][b], psi_val)
            for a in range(n) for b in range(a + 1, n)]
    return out


# form residuals --------------------------------------------------------------

def ky_residuals_at(omega: FormField, coords):
    """∇_{X_a}ω - (1/(p+1)) i_{X_a} dω per direction (Killing-Yano)."""
    p = omega.degree
    b = form_bundle(omega, coords)
    return [b.covs[a] - (1.0 / (p + 1)) * contract(a + 1, b.d)
            for a in range(omega.ms.dim)]


def cky_residuals_at(omega: FormField, coords):
    """KY residual plus (1/(n-p+1)) e_a ∧ δω (conformal Killing-Yano)."""
    n = omega.ms.dim
    p = omega.degree
    b = form_bundle(omega, coords)
    space = omega.ms.space
    return [b.covs[a] - (1.0 / (p + 1)) * contract(a + 1, b.d)
            + (1.0 / (n - p + 1)) * wedge(basis_vector(space, a + 1), b.delta)
            for a in range(n)]


# graded brackets -------------------------------------------------------------

def sn_from_bundles(b1: FormBundle, p: int, b2: FormBundle, q: int,
                    space) -> Multivector:
    """Pointwise Schouten-Nijenhuis bracket from precomputed bundles."""
    n = space.dim
    acc = Multivector.zero(space)
    sign = (-1.0) ** (p * q)
    for a in range(1, n + 1):
        acc = acc + wedge(contract(a, b1.value), b2.covs[a - 1])
        acc = acc + sign * wedge(contract(a, b2.value), b1.covs[a - 1])
    return acc


def cky_from_bundles(b1: FormBundle, p: int, b2: FormBundle, q: int,
                     space) -> Multivector:
    """Pointwise CKY bracket (four-term expression) from bundles."""
    n = space.dim
    acc = Multivector.zero(space)
    sp = (-1.0) ** p
    for a in range(1, n + 1):
        acc = acc + (1.0 / (q + 1)) * wedge(contract(a, b1.value), contract(a, b2.d))
        acc = acc + (sp / (p + 1)) * wedge(contract(a, b1.d), contract(a, b2.value))
    acc = acc + (sp / (n - q + 1)) * wedge(b1.value, b2.delta)
    acc = acc + (1.0 / (n - p + 1)) * wedge(b1.delta, b2.value)
    return acc


def _bracket_field(omega1: FormField, omega2: FormField, assembler) -> FormField:
    p, q = omega1.degree, omega2.degree
    ms = omega1.ms
    if omega2.ms != ms:
        raise ValueError("bracket operands live on different model spaces")
    deg = p + q - 1

    def fn(coords):
        b1 = form_bundle(omega1, coords)
        b2 = form_bundle(omega2, coords)
        return assembler(b1, p, b2, q, ms.space)

    # Degree overflow truncates to the zero field by blade arithmetic.
    return FormField(ms, min(max(deg, 0), ms.dim), fn)


def sn_bracket(omega1: FormField, omega2: FormField) -> FormField:
    """[ω1, ω2]_SN = i_{X^a}ω1 ∧ ∇_{X_a}ω2 + (-1)^{pq} i_{X^a}ω2 ∧ ∇_{X_a}ω1."""
    return _bracket_field(omega1, omega2, sn_from_bundles)


def cky_bracket(omega1: FormField, omega2: FormField) -> FormField:
    """Four-term graded bracket closing on conformal Killing-Yano forms."""
    return _bracket_field(omega1, omega2, cky_from_bundles)


def vector_lie_bracket(alpha: FormField, beta: FormField) -> FormField:
    """Metric dual of the vector-field Lie bracket; equals the SN bracket on 1-forms."""
    if alpha.degree != 1 or beta.degree != 1:
        raise ValueError("vector Lie bracket needs 1-form inputs")
    return sn_bracket(alpha, beta)


# spinor symmetry operators ----------------------------------------------------

def lie_derivative_spinor(k: FormField, psi: SpinorField) -> SpinorField:
    """ℒ_K ψ = ∇_K ψ + (1/4) dK̃.ψ for the 1-form K̃ dual to K."""
    if k.degree != 1:
        raise ValueError("spinor Lie derivative needs a 1-form (dual of a vector)")
    gamma = psi.gamma

    def fn(coords):
        bk = form_bundle(k, coords)
        val, covs = cov_spinor_all(psi, coords)
        out = 0.25 * clifford_action(gamma, bk.d, val)
        for a in range(psi.ms.dim):
            ka = bk.value.coeffs[1 << a]
            out = out + ka * covs[a]
        return out

    return SpinorField(psi.ms, gamma, fn)


def symmetry_op_ky(omega: FormField, psi: SpinorField) -> SpinorField:
    """(i_{X^a}ω).∇_{X_a}ψ + (p/(2(p+1))) dω.ψ (massive Dirac family)."""
    p = omega.degree
    gamma = psi.gamma

    def fn(coords):
        b = form_bundle(omega, coords)
        val, covs = cov_spinor_all(psi, coords)
        out = (p / (2.0 * (p + 1))) * clifford_action(gamma, b.d, val)
        for a in range(psi.ms.dim):
            out = out + clifford_action(gamma, contract(a + 1, b.value), covs[a])
        return out

    return SpinorField(psi.ms, gamma, fn)


def symmetry_op_ky_algebraic(omega: FormField, psi: SpinorField,
                             lam: complex) -> SpinorField:
    """Equivalent algebraic form on λ-Killing spinors:
    -(-1)^p λ p ω.ψ + (p/(2(p+1))) dω.ψ."""
    p = omega.degree
    gamma = psi.gamma
    front = -((-1.0) ** p) * lam * p

    def fn(coords):
        b = form_bundle(omega, coords)
        val = psi(coords)
        return (front * clifford_action(gamma, b.value, val)
                + (p / (2.0 * (p + 1))) * clifford_action(gamma, b.d, val))

    return SpinorField(psi.ms, gamma, fn)


def symmetry_op_cky_massless(omega: FormField, psi: SpinorField) -> SpinorField:
    """(i_{X^a}ω).∇_{X_a}ψ + (p/(2(p+1))) dω.ψ - ((n-p)/(2(n-p+1))) δω.ψ."""
    n = psi.ms.dim
    p = omega.degree
    gamma = psi.gamma

    def fn(coords):
        b = form_bundle(omega, coords)
        val, covs = cov_spinor_all(psi, coords)
        out = (p / (2.0 * (p + 1))) * clifford_action(gamma, b.d, val)
        out = out - ((n - p) / (2.0 * (n - p + 1))) * clifford_action(gamma, b.delta, val)
        for a in range(n):
            out = out + clifford_action(gamma, contract(a + 1, b.value), covs[a])
        return out

    return SpinorField(psi.ms, gamma, fn)


def symmetry_op_cky_twistor(omega: FormField, psi: SpinorField) -> SpinorField:
    """(i_{X^a}ω).∇_{X_a}ψ + (p/(2(p+1))) dω.ψ + (p/(2(n-p+1))) δω.ψ."""
    n = psi.ms.dim
    p = omega.degree
    gamma = psi.gamma

    def fn(coords):
        b = form_bundle(omega, coords)
        val, covs = cov_spinor_all(psi, coords)
        out = (p / (2.0 * (p + 1))) * clifford_action(gamma, b.d, val)
        out = out + (p / (2.0 * (n - p + 1))) * clifford_action(gamma, b.delta, val)
        for a in range(n):
            out = out + clifford_action(gamma, contract(a + 1, b.value), covs[a])
        return out

    return SpinorField(psi.ms, gamma, fn)


def symmetry_op_cky_twistor_algebraic(omega: FormField, psi: SpinorField) -> SpinorField:
    """Equivalent form on twistor spinors:
    -(-1)^p (p/n) ω.D̸ψ + (p/(2(p+1))) dω.ψ + (p/(2(n-p+1))) δω.ψ."""
    n = psi.ms.dim
    p = omega.degree
    gamma = psi.gamma
    front = -((-1.0) ** p) * (p / float(n))

    def fn(coords):
        b = form_bundle(omega, coords)
        val, covs = cov_spinor_all(psi, coords)
        slashed = _dirac_from_covs(gamma, covs)
        return (front * clifford_action(gamma, b.value, slashed)
                + (p / (2.0 * (p + 1))) * clifford_action(gamma, b.d, val)
                + (p / (2.0 * (n - p + 1))) * clifford_action(gamma, b.delta, val))

    return SpinorField(psi.ms, gamma, fn)


# residual sweeps ---------------------------------------------------------------

@dataclass(frozen=True)
class OperatorResidualReport:
    name: str
    max_abs_residual: float
    tolerance: float
    samples: int

    @property
    def passed(self) -> bool:
        return self.max_abs_residual <= self.tolerance


def residual_report(name: str, residual_at, points, tolerance: float) -> OperatorResidualReport:
    """Sweep a pointwise residual function over sample points."""
    worst = 0.0
    for x in points:
        worst = max(worst, residual_at(x))
    return OperatorResidualReport(name, worst, tolerance, len(points))


def mv_list_max_abs(mvs) -> float:
    return max(mv.max_abs() for mv in mvs)


def spinor_list_max_abs(vecs) -> float:
    return max(spinor_max_abs(v) for v in vecs)


def ky_max_residual(omega: FormField, points) -> float:
    return max(mv_list_max_abs(ky_residuals_at(omega, x)) for x in points)


def cky_max_residual(omega: FormField, points) -> float:
    return max(mv_list_max_abs(cky_residuals_at(omega, x)) for x in points)


def twistor_max_residual(psi: SpinorField, points) -> float:
    return max(spinor_list_max_abs(twistor_residuals_at(psi, x)) for x in points)


def killing_max_residual(psi: SpinorField, lam: complex, points) -> float:
    return max(spinor_list_max_abs(killing_residuals_at(psi, lam, x)) for x in points)


def dirac_max_residual(psi: SpinorField, points) -> float:
    """Max |D̸ψ| over points (harmonicity check)."""
    slashed = dirac(psi)
    return max(spinor_max_abs(slashed(x)) for x in points)
