"""Solution-space bases and graded bracket tables on a model space.

``build_basis`` spans the solution space of a defining equation (Killing
spinor, twistor spinor, KY or CKY form) inside a polynomial-times-Ω-power
ansatz, by extracting the null space of the sampled residual operator with
an SVD.  The table builders evaluate every superalgebra bracket on basis
pairs, re-certify each output against its target equation, and fit it back
into the target span by least squares, recording structure constants,
closure residuals and (skew-)symmetry residuals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .clifford import hodge
from .dual import value
from .fields import (FormField, SpinorField, form_bundle, form_max_abs,
                     monomial_form, monomial_spinor, normalize_form,
                     normalize_spinor, polynomial_form, polynomial_spinor,
                     spinor_field_max_abs)
from .model_space import ModelSpace
from .operators import (cky_bracket, cky_from_bundles, cky_max_residual,
                        cky_residuals_at, killing_max_residual,
                        killing_residuals_at, ky_max_residual, ky_residuals_at,
                        lie_derivative_spinor, sn_bracket, sn_from_bundles,
                        symmetry_op_cky_twistor, symmetry_op_ky,
                        twistor_max_residual, twistor_residuals_at)
from .spin_rep import GammaRep, build_gamma_rep, p_form_dirac_current

DEFAULT_SVD_THRESHOLD = 1e-8
DEFAULT_RESIDUAL_TOL = 1e-8
TRIVIAL_OUTPUT_NORM = 1e-10
GRAM_MIN_EIG = 1e-6


class BasisConditionError(RuntimeError):
    """Raised when a solved basis is numerically ill-conditioned."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


def killing_number(ms: ModelSpace, sign: int = +1) -> complex:
    """Killing number λ with λ² = -κ/4: imaginary for κ > 0, real for κ < 0."""
    if ms.curvature == 0.0:
        return 0.0
    if ms.curvature > 0:
        return sign * 0.5j * math.sqrt(ms.curvature)
    return sign * 0.5 * math.sqrt(-ms.curvature)


def expected_dimension(kind: str, n: int, p: int | None = None) -> int | None:
    """Known solution-space dimensions on constant-curvature model spaces."""
    if kind == "ky":
        return math.comb(n + 1, p + 1)
    if kind == "cky":
        return math.comb(n + 2, p + 1) if p < n else None
    if kind == "killing_spinor":
        return 2 ** (n // 2)
    if kind == "twistor_spinor":
        return 2 ** (n // 2 + 1)
    return None


# ansatz ---------------------------------------------------------------------

def _monomial_exponents(n: int, degree: int):
    exps = [(0,) * n]
    for _ in range(degree):
        new = []
        for e in exps:
            for i in range(n):
                cand = tuple(ei + (1 if j == i else 0) for j, ei in enumerate(e))
                if cand not in new and cand not in exps:
                    new.append(cand)
        exps.extend(new)
    return sorted(set(exps), key=lambda e: (sum(e), e))


def _form_features(ms: ModelSpace, p: int, degree: int):
    """Feature metadata (mask, exponents, omega_power).

    Ω^{-1} is polynomial and would make the feature set rank-deficient, so
    only nonnegative powers enter; the constant monomial is dropped for
    s >= 1 because (κ/4)|x|² Ω^s = Ω^{s-1} - Ω^s ties it to the rest.
    """
    powers = (0.0,) if ms.is_flat else (0.0, 1.0, 2.0)
    masks = [m for m in range(ms.space.blade_count) if m.bit_count() == p]
    feats = []
    for s in powers:
        for e in _monomial_exponents(ms.dim, degree):
            if s >= 1.0 and sum(e) == 0:
                continue
            for mask in masks:
                feats.append((mask, e, s))
    return feats


def _spinor_features(ms: ModelSpace, gamma: GammaRep, degree: int):
    powers = (0.0,) if ms.is_flat else (0.5,)
    feats = []
    for s in powers:
        for e in _monomial_exponents(ms.dim, degree):
            for k in range(gamma.matrix_dim):
                feats.append((k, e, s))
    return feats


def _compile_element(ms, gamma, spinor, degree, feats, coeffs, cutoff=1e-13):
    table = {}
    for (slot, exps, pw), c in zip(feats, coeffs):
        if abs(c) <= cutoff:
            continue
        table.setdefault(slot, []).append((complex(c), exps, pw))
    rows = sorted(table.items())
    if spinor:
        return polynomial_spinor(ms, gamma, rows)
    return polynomial_form(ms, degree, rows)


# basis solving ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SolutionBasis:
    ms: ModelSpace
    kind: str
    degree: int | None
    killing_num: complex | None
    elements: tuple
    labels: tuple
    gram_min_eig: float
    certify_residual: float
    feature_count: int

    @property
    def dim(self) -> int:
        return len(self.elements)

    def is_spinor(self) -> bool:
        return self.kind in ("killing_spinor", "twistor_spinor")


def _flatten_mvs(mvs) -> np.ndarray:
    return np.concatenate([mv.as_complex() for mv in mvs])


def _flatten_spinors(vecs) -> np.ndarray:
    return np.concatenate([np.array([complex(value(c)) for c in np.asarray(v)])
                           for v in vecs])


def _residual_rows(kind, elem, lam, pts) -> np.ndarray:
    rows = []
    for x in pts:
        if kind == "ky":
            rows.append(_flatten_mvs(ky_residuals_at(elem, x)))
        elif kind == "cky":
            rows.append(_flatten_mvs(cky_residuals_at(elem, x)))
        elif kind == "killing_spinor":
            rows.append(_flatten_spinors(killing_residuals_at(elem, lam, x)))
        elif kind == "twistor_spinor":
            rows.append(_flatten_spinors(twistor_residuals_at(elem, x)))
        else:
            raise ValueError(f"unknown basis kind {kind!r}")
    return np.concatenate(rows)


def _max_residual(kind, elem, lam, pts) -> float:
    if kind == "ky":
        return ky_max_residual(elem, pts)
    if kind == "cky":
        return cky_max_residual(elem, pts)
    if kind == "killing_spinor":
        return killing_max_residual(elem, lam, pts)
    return twistor_max_residual(elem, pts)


def build_basis(ms: ModelSpace, kind: str, *, degree: int | None = None,
                lam: complex | None = None, gamma: GammaRep | None = None,
                ansatz_degree: int = 2, samples: int = 40, seed: int = 0,
                svd_threshold: float = DEFAULT_SVD_THRESHOLD) -> SolutionBasis:
    """Span the solution space of the defining equation within the ansatz.

    The residual operator is linear in the ansatz coefficients; its sampled
    matrix is decomposed by SVD and singular directions below
    ``svd_threshold`` (relative) form the basis.  Every returned element is
    unit-normalized and re-certified on a fresh sample set.
    """
    if ansatz_degree > 2:
        raise ValueError("ansatz degree is capped at 2")
    spinor = kind in ("killing_spinor", "twistor_spinor")
    if spinor:
        gamma = gamma or build_gamma_rep(ms.space)
        feats = _spinor_features(ms, gamma, ansatz_degree)
    else:
        if degree is None:
            raise ValueError("form bases need a degree")
        feats = _form_features(ms, degree, ansatz_degree)
    if kind == "killing_spinor" and lam is None:
        lam = killing_number(ms)

    def feature_field(feat):
        slot, exps, pw = feat
        if spinor:
            return monomial_spinor(ms, gamma, slot, exps, pw)
        return monomial_form(ms, slot, exps, pw)

    rows_per_pt = ms.dim * (ms.space.blade_count if not spinor else gamma.matrix_dim)
    n_pts = max(samples, (len(feats) + rows_per_pt - 1) // rows_per_pt + 8)
    pts = ms.sample_points(n_pts, seed_value=seed)
    cols = [_residual_rows(kind, feature_field(f), lam, pts) for f in feats]
    a = np.column_stack(cols)
    _, sing, vh = np.linalg.svd(a, full_matrices=(a.shape[0] < a.shape[1]))
    smax = sing[0] if len(sing) else 0.0
    null_rows = [k for k in range(vh.shape[0])
                 if k >= len(sing) or sing[k] <= svd_threshold * max(smax, 1.0)]
    elements = []
    cert_pts = ms.sample_points(max(24, samples // 2), seed_value=seed + 101)
    worst_cert = 0.0
    for k in null_rows:
        coeffs = np.conj(vh[k])
        elem = _compile_element(ms, gamma, spinor, degree, feats, coeffs)
        scale = (spinor_field_max_abs if spinor else form_max_abs)(elem, cert_pts)
        if scale > 1e-300:
            elem = _compile_element(ms, gamma, spinor, degree, feats, coeffs / scale)
        worst_cert = max(worst_cert, _max_residual(kind, elem, lam, cert_pts))
        elements.append(elem)

    gram_min = 1.0
    if elements:
        vecs = []
        for elem in elements:
            if spinor:
                vecs.append(_flatten_spinors([elem(x) for x in cert_pts]))
            else:
                vecs.append(_flatten_mvs([elem(x) for x in cert_pts]))
        mat = np.array(vecs)
        norms = np.sqrt(np.einsum("ij,ij->i", mat.conj(), mat).real)
        mat = mat / norms[:, None]
        gram = mat.conj() @ mat.T
        gram_min = float(np.linalg.eigvalsh(gram)[0].real)
        if gram_min < GRAM_MIN_EIG:
            raise BasisConditionError(
                f"{kind} basis is ill-conditioned (min Gram eigenvalue {gram_min:.3e})",
                {"kind": kind, "degree": degree, "gram_min_eig": gram_min,
                 "dimension": len(elements)})

    tag = kind if degree is None else f"{kind}{degree}"
    labels = tuple(f"{tag}[{i}]" for i in range(len(elements)))
    return SolutionBasis(ms, kind, degree, lam, tuple(elements), labels,
                         gram_min, worst_cert, len(feats))


# fitting -----------------------------------------------------------------------

@dataclass(frozen=True)
class FitResult:
    coeffs: tuple
    rel_residual: float
    output_scale: float
    trivially_zero: bool


def _stack_field(elem, pts, spinor: bool) -> np.ndarray:
    if spinor:
        return _flatten_spinors([elem(x) for x in pts])
    return _flatten_mvs([elem(x) for x in pts])


def fit_in_basis(basis: SolutionBasis, target, pts) -> FitResult:
    """Least-squares fit of ``target`` into the basis span over sample points."""
    spinor = basis.is_spinor()
    y = _stack_field(target, pts, spinor)
    scale = float(np.abs(y).max()) if y.size else 0.0
    if scale < TRIVIAL_OUTPUT_NORM:
        return FitResult((0.0,) * basis.dim, 0.0, scale, True)
    if basis.dim == 0:
        return FitResult((), 1.0, scale, False)
    b = np.column_stack([_stack_field(e, pts, spinor) for e in basis.elements])
    coeffs, *_ = np.linalg.lstsq(b, y, rcond=None)
    resid = float(np.linalg.norm(b @ coeffs - y) / np.linalg.norm(y))
    return FitResult(tuple(complex(c) for c in coeffs), resid, scale, False)


# bracket tables ------------------------------------------------------------------

@dataclass
class TableEntry:
    left: str
    right: str
    out_degree: int
    target: str | None
    coeffs: tuple
    closure_residual: float
    defining_residual: float | None
    output_scale: float
    trivially_zero: bool
    note: str = ""


@dataclass
class SuperalgebraTables:
    name: str
    ms: ModelSpace
    bases: dict
    entries: dict = field(default_factory=dict)
    symmetry_records: list = field(default_factory=list)
    jacobi_records: list = field(default_factory=list)
    conventions: dict = field(default_factory=dict)

    def max_closure_residual(self) -> float:
        worst = 0.0
        for rows in self.entries.values():
            for e in rows:
                worst = max(worst, e.closure_residual)
        return worst

    def max_defining_residual(self) -> float:
        worst = 0.0
        for rows in self.entries.values():
            for e in rows:
                if e.defining_residual is not None:
                    worst = max(worst, e.defining_residual)
        return worst

    def max_jacobi_residual(self) -> float:
        return max((r["residual"] for r in self.jacobi_records), default=0.0)


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.12e}{z.imag:+.12e}j"


def tables_to_dict(tables: SuperalgebraTables) -> dict:
    out = {
        "name": tables.name,
        "bases": {
            key: {
                "kind": b.kind,
                "degree": b.degree,
                "dimension": b.dim,
                "killing_number": None if b.killing_num is None else _fmt_complex(complex(b.killing_num)),
                "gram_min_eig": f"{b.gram_min_eig:.6e}",
                "certify_residual": f"{b.certify_residual:.6e}",
            }
            for key, b in tables.bases.items()
        },
        "brackets": {},
        "symmetry_records": tables.symmetry_records,
        "jacobi_records": [
            {**r, "residual": f"{r['residual']:.6e}"} for r in tables.jacobi_records],
        "conventions": tables.conventions,
    }
    for key, rows in tables.entries.items():
        out["brackets"][key] = [
            {
                "left": e.left,
                "right": e.right,
                "out_degree": e.out_degree,
                "target": e.target,
                "coeffs": [_fmt_complex(c) for c in e.coeffs],
                "closure_residual": f"{e.closure_residual:.6e}",
                "defining_residual": None if e.defining_residual is None
                else f"{e.defining_residual:.6e}",
                "output_scale": f"{e.output_scale:.6e}",
                "trivially_zero": e.trivially_zero,
                "note": e.note,
            }
            for e in rows
        ]
    return out


def _normalized(field_like, pts, spinor: bool):
    return (normalize_spinor if spinor else normalize_form)(field_like, pts)


def _labelled(bases):
    out = []
    for b in bases:
        out.extend((lbl, elem, b) for lbl, elem in zip(b.labels, b.elements))
    return out


def _even_even_entries(even_bases, bracket_ctor, residual_sweep, pts_fit,
                       pts_cert, target_by_degree):
    entries = []
    sym_records = []
    elems = _labelled(even_bases)
    for i, (li, ei, bi) in enumerate(elems):
        for j, (lj, ej, bj) in enumerate(elems):
            if j < i:
                continue
            out = bracket_ctor(ei, ej)
            deg = bi.degree + bj.degree - 1
            target = target_by_degree.get(deg)
            if target is not None and target.dim > 0:
                fit = fit_in_basis(target, out, pts_fit)
                target_name = target.labels[0].split("[")[0]
            else:
                fit = _fit_scale_only(out, pts_fit)
                target_name = None
            note = "degree overflow: zero by convention" if deg > out.ms.dim else ""
            defin = None
            if not fit.trivially_zero:
                normalized = _normalized(out, pts_cert, spinor=False)
                defin = residual_sweep(normalized, pts_cert)
                if target_name is None:
                    note = ("top-degree output: defining equation is vacuous"
                            if deg >= out.ms.dim else "no target basis")
            entries.append(TableEntry(li, lj, deg, target_name,
                                      fit.coeffs, fit.rel_residual, defin,
                                      fit.output_scale, fit.trivially_zero, note))
            if i != j:
                sign = (-1.0) ** (bi.degree * bj.degree)
                rev = bracket_ctor(ej, ei)
                worst = max((out(x) - sign * rev(x)).max_abs() for x in pts_cert[:4])
                sym_records.append({
                    "pair": [li, lj],
                    "relation": f"[a,b] = {int(sign):+d}[b,a]",
                    "residual": f"{worst:.6e}",
                    "asserted": bi.degree % 2 == 1 and bj.degree % 2 == 1,
                })
    return entries, sym_records


def _fit_scale_only(target, pts) -> FitResult:
    y = _stack_field(target, pts, spinor=False)
    scale = float(np.abs(y).max()) if y.size else 0.0
    return FitResult((), 0.0, scale, scale < TRIVIAL_OUTPUT_NORM)


def _even_odd_entries(even_bases, odd_basis, op_ctor, odd_residual_sweep,
                      pts_fit, pts_cert):
    entries = []
    for li, ei, bi in _labelled(even_bases):
        for lj, ej in zip(odd_basis.labels, odd_basis.elements):
            out = op_ctor(ei, ej, bi)
            fit = fit_in_basis(odd_basis, out, pts_fit)
            defin = None
            if not fit.trivially_zero:
                defin = odd_residual_sweep(_normalized(out, pts_cert, spinor=True), pts_cert)
            entries.append(TableEntry(li, lj, bi.degree, odd_basis.kind,
                                      fit.coeffs, fit.rel_residual, defin,
                                      fit.output_scale, fit.trivially_zero))
    return entries


def _current_field(gamma: GammaRep, psi: SpinorField, phi: SpinorField, p: int) -> FormField:
    def fn(coords):
        return p_form_dirac_current(gamma, psi.fn(coords), phi.fn(coords), p)
    return FormField(psi.ms, p, fn)


def _hodge_field(omega: FormField) -> FormField:
    def fn(coords):
        return hodge(omega.fn(coords))
    return FormField(omega.ms, omega.ms.dim - omega.degree, fn)


def _odd_odd_entries(odd_basis, gamma, degrees, residual_sweep, target_by_degree,
                     pts_fit, pts_cert, tol):
    """Squaring-map entries; tries the current and its Hodge dual, records which
    satisfies the target equation per degree (open inner-product convention)."""
    entries = []
    sym_records = []
    conventions = {}
    labels = odd_basis.labels
    elems = odd_basis.elements
    for p in degrees:
        for i in range(len(elems)):
            for j in range(i, len(elems)):
                cur = _current_field(gamma, elems[i], elems[j], p)
                fitted = None
                for tag, candidate, deg in (("direct", cur, p),
                                            ("hodge", _hodge_field(cur), odd_basis.ms.dim - p)):
                    y_scale = form_max_abs(candidate, pts_fit)
                    if y_scale < TRIVIAL_OUTPUT_NORM:
                        fitted = TableEntry(labels[i], labels[j], deg, None, (),
                                            0.0, None, y_scale, True, tag)
                        conventions.setdefault(f"p={p}", tag)
                        break
                    resid = residual_sweep(_normalized(candidate, pts_cert, False), pts_cert)
                    if resid <= tol:
                        target = target_by_degree.get(deg)
                        if target is not None and target.dim > 0:
                            fit = fit_in_basis(target, candidate, pts_fit)
                            target_name = target.labels[0].split("[")[0]
                        else:
                            fit = _fit_scale_only(candidate, pts_fit)
                            target_name = None
                        fitted = TableEntry(labels[i], labels[j], deg, target_name,
                                            fit.coeffs, fit.rel_residual, resid,
                                            fit.output_scale, fit.trivially_zero, tag)
                        conventions.setdefault(f"p={p}", tag)
                        break
                if fitted is None:
                    resid = residual_sweep(_normalized(cur, pts_cert, False), pts_cert)
                    fitted = TableEntry(labels[i], labels[j], p, None, (),
                                        1.0, resid, form_max_abs(cur, pts_fit),
                                        False, "neither")
                    conventions[f"p={p}"] = "neither"
                entries.append(fitted)
                if i != j:
                    # Sesquilinear inner product: conjugate symmetry up to the
                    # reversal sign of the blade, recorded exactly.
                    rev = _current_field(gamma, elems[j], elems[i], p)
                    sgn = (-1.0) ** (p * (p - 1) // 2)
                    worst_c = 0.0
                    worst_plain = 0.0
                    for x in pts_cert[:4]:
                        a = cur(x).as_complex()
                        b = rev(x).as_complex()
                        worst_c = max(worst_c, np.abs(a - sgn * np.conj(b)).max())
                        worst_plain = max(worst_plain, np.abs(a - b).max())
                    sym_records.append({
                        "pair": [labels[i], labels[j]],
                        "relation": f"current(a,b) = {int(sgn):+d} conj(current(b,a))",
                        "residual": f"{worst_c:.6e}",
                        "plain_symmetry_residual": f"{worst_plain:.6e}",
                        "asserted": True,
                    })
    return entries, sym_records, conventions


# graded Jacobi -------------------------------------------------------------------

def _scale_bundle(b, s):
    from .fields import FormBundle
    return FormBundle(s * b.value, tuple(s * c for c in b.covs), s * b.d, s * b.delta)


def _bracket_bundles(bracket_ctor, omega1, omega2, pts):
    out = bracket_ctor(omega1, omega2)
    return [form_bundle(out, x) for x in pts]


def jacobi_records_for(bracket_ctor, assembler, even_bases, pts,
                       max_triples: int | None = None):
    """Jacobi residuals with inner brackets cached per pair and sample point."""
    elems = _labelled(even_bases)
    m = len(elems)
    space = even_bases[0].ms.space
    base_bundles = [[form_bundle(e, x) for x in pts] for _, e, _ in elems]
    pair_bundles = {}
    for i in range(m):
        for j in range(i + 1, m):
            pair_bundles[(i, j)] = _bracket_bundles(bracket_ctor,
                                                    elems[i][1], elems[j][1], pts)
    records = []
    count = 0
    for i in range(m):
        p = elems[i][2].degree
        for j in range(i + 1, m):
            q = elems[j][2].degree
            for k in range(j + 1, m):
                r = elems[k][2].degree
                worst = 0.0
                for t in range(len(pts)):
                    inner_jk = pair_bundles[(j, k)][t]
                    inner_ik = _scale_bundle(pair_bundles[(i, k)][t], (-1.0) ** (p * r))
                    inner_ij = pair_bundles[(i, j)][t]
                    term = ((-1.0) ** (p * (r + 1))) * assembler(
                        base_bundles[i][t], p, inner_jk, q + r - 1, space)
                    term = term + ((-1.0) ** (q * (p + 1))) * assembler(
                        base_bundles[j][t], q, inner_ik, r + p - 1, space)
                    term = term + ((-1.0) ** (r * (q + 1))) * assembler(
                        base_bundles[k][t], r, inner_ij, p + q - 1, space)
                    worst = max(worst, term.max_abs())
                records.append({"triple": [elems[i][0], elems[j][0], elems[k][0]],
                                "residual": worst})
                count += 1
                if max_triples is not None and count >= max_triples:
                    return records
    return records


# superalgebra assemblies ------------------------------------------------------------

def _fit_points(ms: ModelSpace, dims, seed: int):
    count = max(2 * max(dims, default=1), 12)
    return ms.sample_points(count, seed_value=seed + 301)


def _cert_points(ms: ModelSpace, seed: int, count: int = 10):
    return ms.sample_points(count, seed_value=seed + 511)


def killing_superalgebra(ms: ModelSpace, gamma: GammaRep | None = None, *,
                         samples: int = 40, seed: int = 0,
                         tol: float = DEFAULT_RESIDUAL_TOL) -> SuperalgebraTables:
    """Killing 1-forms (even) with Killing spinors (odd).

    Even-even is the vector Lie bracket (SN bracket at degree 1), even-odd
    the spinor Lie derivative, odd-odd the degree-1 Dirac current.
    """
    gamma = gamma or build_gamma_rep(ms.space)
    lam = killing_number(ms)
    ky1 = build_basis(ms, "ky", degree=1, samples=samples, seed=seed)
    spinors = build_basis(ms, "killing_spinor", lam=lam, gamma=gamma,
                          ansatz_degree=1, samples=samples, seed=seed)
    tables = SuperalgebraTables("killing_superalgebra", ms,
                                {"ky1": ky1, "killing_spinor": spinors})
    pts_fit = _fit_points(ms, [ky1.dim, spinors.dim], seed)
    pts_cert = _cert_points(ms, seed)
    entries, sym = _even_even_entries(
        [ky1], sn_bracket, ky_max_residual, pts_fit, pts_cert, {1: ky1})
    tables.entries["even_even"] = entries
    tables.symmetry_records.extend(sym)
    tables.entries["even_odd"] = _even_odd_entries(
        [ky1], spinors,
        lambda w, s, b: lie_derivative_spinor(w, s),
        lambda s, pts: killing_max_residual(s, lam, pts),
        pts_fit, pts_cert)
    odd, sym2, conv = _odd_odd_entries(
        spinors, gamma, [1], ky_max_residual, {1: ky1, ms.dim - 1: None},
        pts_fit, pts_cert, tol)
    tables.entries["odd_odd"] = odd
    tables.symmetry_records.extend(sym2)
    tables.conventions.update(conv)
    tables.jacobi_records = jacobi_records_for(
        sn_bracket, sn_from_bundles, [ky1], pts_cert[:8])
    return tables


def extended_killing_superalgebra(ms: ModelSpace, gamma: GammaRep | None = None, *,
                                  samples: int = 40, seed: int = 0,
                                  tol: float = DEFAULT_RESIDUAL_TOL) -> SuperalgebraTables:
    """Odd-degree KY forms (even part) with Killing spinors (odd part).

    Requires constant curvature; this holds for every model space here.
    """
    gamma = gamma or build_gamma_rep(ms.space)
    lam = killing_number(ms)
    n = ms.dim
    odd_degrees = [p for p in range(1, n + 1) if p % 2 == 1]
    ky_bases = {p: build_basis(ms, "ky", degree=p, samples=samples, seed=seed)
                for p in odd_degrees}
    spinors = build_basis(ms, "killing_spinor", lam=lam, gamma=gamma,
                          ansatz_degree=1, samples=samples, seed=seed)
    bases = {f"ky{p}": b for p, b in ky_bases.items()}
    bases["killing_spinor"] = spinors
    tables = SuperalgebraTables("extended_killing_superalgebra", ms, bases)
    target_by_degree = dict(ky_bases)
    pts_fit = _fit_points(ms, [b.dim for b in ky_bases.values()] + [spinors.dim], seed)
    pts_cert = _cert_points(ms, seed)
    entries, sym = _even_even_entries(
        [ky_bases[p] for p in odd_degrees], sn_bracket, ky_max_residual,
        pts_fit, pts_cert, target_by_degree)
    tables.entries["even_even"] = entries
    tables.symmetry_records.extend(sym)
    tables.entries["even_odd"] = _even_odd_entries(
        [ky_bases[p] for p in odd_degrees], spinors,
        lambda w, s, b: symmetry_op_ky(w, s),
        lambda s, pts: killing_max_residual(s, lam, pts),
        pts_fit, pts_cert)
    odd, sym2, conv = _odd_odd_entries(
        spinors, gamma, odd_degrees, ky_max_residual, target_by_degree,
        pts_fit, pts_cert, tol)
    tables.entries["odd_odd"] = odd
    tables.symmetry_records.extend(sym2)
    tables.conventions.update(conv)
    tables.jacobi_records = jacobi_records_for(
        sn_bracket, sn_from_bundles, [ky_bases[p] for p in odd_degrees],
        pts_cert[:8])
    return tables


def conformal_superalgebra(ms: ModelSpace, gamma: GammaRep | None = None, *,
                           samples: int = 40, seed: int = 0,
                           tol: float = DEFAULT_RESIDUAL_TOL) -> SuperalgebraTables:
    """Conformal Killing 1-forms (even) with twistor spinors (odd)."""
    gamma = gamma or build_gamma_rep(ms.space)
    cky1 = build_basis(ms, "cky", degree=1, samples=samples, seed=seed)
    twistors = build_basis(ms, "twistor_spinor", gamma=gamma, ansatz_degree=1,
                           samples=samples, seed=seed)
    tables = SuperalgebraTables("conformal_superalgebra", ms,
                                {"cky1": cky1, "twistor_spinor": twistors})
    pts_fit = _fit_points(ms, [cky1.dim, twistors.dim], seed)
    pts_cert = _cert_points(ms, seed)
    entries, sym = _even_even_entries(
        [cky1], sn_bracket, cky_max_residual, pts_fit, pts_cert, {1: cky1})
    tables.entries["even_even"] = entries
    tables.symmetry_records.extend(sym)
    tables.entries["even_odd"] = _even_odd_entries(
        [cky1], twistors,
        lambda w, s, b: symmetry_op_cky_twistor(w, s),
        twistor_max_residual, pts_fit, pts_cert)
    odd, sym2, conv = _odd_odd_entries(
        twistors, gamma, [1], cky_max_residual, {1: cky1},
        pts_fit, pts_cert, tol)
    tables.entries["odd_odd"] = odd
    tables.symmetry_records.extend(sym2)
    tables.conventions.update(conv)
    tables.jacobi_records = jacobi_records_for(
        sn_bracket, sn_from_bundles, [cky1], pts_cert[:8])
    return tables


def extended_conformal_superalgebra(ms: ModelSpace, gamma: GammaRep | None = None, *,
                                    samples: int = 40, seed: int = 0,
                                    tol: float = DEFAULT_RESIDUAL_TOL) -> SuperalgebraTables:
    """CKY forms of degree 1..n-1 (even part) with twistor spinors (odd part).

    Top-degree outputs are noted as vacuous: every n-form satisfies the CKY
    equation identically, so no finite basis exists there.
    """
    gamma = gamma or build_gamma_rep(ms.space)
    n = ms.dim
    degrees = list(range(1, n))
    cky_bases = {p: build_basis(ms, "cky", degree=p, samples=samples, seed=seed)
                 for p in degrees}
    twistors = build_basis(ms, "twistor_spinor", gamma=gamma, ansatz_degree=1,
                           samples=samples, seed=seed)
    bases = {f"cky{p}": b for p, b in cky_bases.items()}
    bases["twistor_spinor"] = twistors
    tables = SuperalgebraTables("extended_conformal_superalgebra", ms, bases)
    target_by_degree = dict(cky_bases)
    pts_fit = _fit_points(ms, [b.dim for b in cky_bases.values()] + [twistors.dim], seed)
    pts_cert = _cert_points(ms, seed)
    entries, sym = _even_even_entries(
        [cky_bases[p] for p in degrees], cky_bracket, cky_max_residual,
        pts_fit, pts_cert, target_by_degree)
    tables.entries["even_even"] = entries
    tables.symmetry_records.extend(sym)
    tables.entries["even_odd"] = _even_odd_entries(
        [cky_bases[p] for p in degrees], twistors,
        lambda w, s, b: symmetry_op_cky_twistor(w, s),
        twistor_max_residual, pts_fit, pts_cert)
    odd, sym2, conv = _odd_odd_entries(
        twistors, gamma, degrees, cky_max_residual, target_by_degree,
        pts_fit, pts_cert, tol)
    tables.entries["odd_odd"] = odd
    tables.symmetry_records.extend(sym2)
    tables.conventions.update(conv)
    tables.jacobi_records = jacobi_records_for(
        cky_bracket, cky_from_bundles, [cky_bases[p] for p in degrees],
        pts_cert[:6])
    return tables
