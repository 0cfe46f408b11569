"""Acceptance criteria at stated tolerances, one printed verdict per criterion.

Runs the verification engine the way the CLI would (suite layer, default
100 samples) and asserts every bound, including runtime budgets.  Criterion
ordering matches the numbered list in the README.
"""

import json
import time

import pytest

from spingeo.fields import FormField, normalize_form
from spingeo.model_space import model_space
from spingeo.operators import cky_max_residual, ky_max_residual
from spingeo.spin_rep import (build_gamma_rep, p_form_dirac_current,
                              random_spinor)
from spingeo.service import RunConfig, execute
from spingeo.suites import run_suites
from spingeo.superalgebra import killing_number

from conftest import flat_twistor, killing_candidate, rng

SAMPLES = 100
_T0 = time.perf_counter()


def _verdict(num, label, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"[criterion {num}] {status}: {label} {detail}".rstrip())
    assert ok, f"criterion {num} failed: {label} {detail}"


def _run(ms, suites, samples=SAMPLES, tol=1e-8, seed=0):
    checks, tables, timings = run_suites(ms, suites, samples, tol, seed)
    return checks, tables, sum(timings.values())


def _asserted_ok(checks, tol_override=None):
    worst = 0.0
    ok = True
    for c in checks:
        if not c.asserted:
            continue
        if c.mode == "exceeds":
            ok = ok and c.passed
            continue
        bound = c.tolerance if tol_override is None else max(c.tolerance, tol_override)
        worst = max(worst, c.max_residual)
        ok = ok and c.max_residual <= bound
    return ok, worst


def test_criterion_1_algebra_axioms():
    t0 = time.perf_counter()
    worst = 0.0
    ok = True
    for n in range(2, 7):
        ms = model_space("flat", n)
        checks, _, _ = _run(ms, ["clifford-axioms", "fierz"])
        for c in checks:
            if c.mode == "exceeds" or not c.asserted:
                continue
            worst = max(worst, c.max_residual)
            ok = ok and c.max_residual <= 1e-12
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 5.0
    _verdict(1, "Clifford/representation axioms <= 1e-12 for n=2..6",
             ok, f"(worst {worst:.2e}, {elapsed:.1f}s < 5s)")


def test_criterion_2_geometry():
    t0 = time.perf_counter()
    ok = True
    worst_struct = worst_curv = worst_weyl = 0.0
    spaces = [("sphere", 1.0, 3), ("sphere", 1.0, 4),
              ("hyperbolic", -1.0, 3), ("hyperbolic", -1.0, 4)]
    for kind, kappa, n in spaces:
        ms = model_space(kind, n, kappa)
        checks, _, _ = _run(ms, ["geometry"])
        by_name = {c.name.split(":")[-1]: c for c in checks}
        worst_struct = max(worst_struct, by_name["structure_equation"].max_residual)
        ok = ok and by_name["structure_equation"].max_residual <= 1e-10
        for key in ("scalar_curvature", "constant_curvature_2forms"):
            worst_curv = max(worst_curv, by_name[key].max_residual)
            ok = ok and by_name[key].max_residual <= 1e-8
        worst_weyl = max(worst_weyl, by_name["conformal_flatness"].max_residual)
        ok = ok and by_name["conformal_flatness"].max_residual <= 1e-8
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 10.0
    _verdict(2, "structure equation <= 1e-10, curvature/Weyl sweeps <= 1e-8",
             ok, f"(struct {worst_struct:.2e}, curv {worst_curv:.2e}, "
                 f"weyl {worst_weyl:.2e}, {elapsed:.1f}s < 10s)")


def test_criterion_3_solution_families():
    from spingeo.operators import killing_max_residual, twistor_max_residual
    from spingeo.fields import normalize_spinor
    from spingeo.model_space import _pack
    from spingeo.fields import SpinorField

    ok = True
    details = []

    flat = model_space("flat", 3)
    g = build_gamma_rep(flat.space)
    gen = rng(40)
    pts = flat.sample_points(SAMPLES, seed_value=40)
    tw = flat_twistor(flat, g, random_spinor(g, gen), random_spinor(g, gen))
    r = twistor_max_residual(tw, pts)
    details.append(f"flat twistor {r:.2e}")
    ok = ok and r <= 1e-9

    for n in (2, 3):
        ms = model_space("sphere", n, 1.0)
        gn = build_gamma_rep(ms.space)
        pts_n = ms.sample_points(SAMPLES, seed_value=41)
        for sign in (+1, -1):
            lam = sign * 0.5j
            psi = killing_candidate(ms, gn, lam, random_spinor(gn, gen))
            r = killing_max_residual(psi, lam, pts_n)
            ok = ok and r <= 1e-8
            details.append(f"S{n} λ={sign:+d}i/2 {r:.2e}")
        from spingeo.model_space import curvature
        worst_eq10 = 0.0
        for x in pts_n[:10]:
            scal = curvature(ms, x).scalar
            worst_eq10 = max(worst_eq10, abs((0.5j) ** 2 + scal / (4 * n * (n - 1))))
        ok = ok and worst_eq10 <= 1e-8
        details.append(f"S{n} λ²+R/(4n(n-1)) {worst_eq10:.2e}")

    ms = model_space("sphere", 3, 1.0)
    g3 = build_gamma_rep(ms.space)
    pts3 = ms.sample_points(50, seed_value=42)
    psi = normalize_spinor(killing_candidate(ms, g3, 0.5j, random_spinor(g3, gen)), pts3)
    r_wrong = killing_max_residual(psi, 0.5, pts3)
    chi = random_spinor(g3, gen)
    bad = normalize_spinor(
        SpinorField(flat, g, lambda c: _pack([c[0] * v for v in chi])), pts)
    r_bad = twistor_max_residual(bad, pts)
    ok = ok and r_wrong > 1e-3 and r_bad > 1e-3
    details.append(f"controls {r_wrong:.1e}/{r_bad:.1e} > 1e-3")

    _verdict(3, "twistor/Killing families certified, negative controls exceed 1e-3",
             ok, "(" + ", ".join(details) + ")")


def test_criterion_4_currents():
    ok = True
    details = []
    gen = rng(43)

    sphere = model_space("sphere", 3, 1.0)
    g = build_gamma_rep(sphere.space)
    lam = killing_number(sphere)
    psi = killing_candidate(sphere, g, lam, random_spinor(g, gen))
    pts = sphere.sample_points(50, seed_value=43)
    resolutions = {}
    for p in (1, 3):
        cur = FormField(sphere, p,
                        lambda c, p=p: p_form_dirac_current(g, psi.fn(c), psi.fn(c), p))
        direct = ky_max_residual(normalize_form(cur, pts), pts)
        if direct <= 1e-8:
            resolutions[f"sphere KY p={p}"] = ("direct", direct)
        else:
            from spingeo.superalgebra import _hodge_field
            dual_r = ky_max_residual(normalize_form(_hodge_field(cur), pts), pts)
            resolutions[f"sphere KY p={p}"] = ("hodge", dual_r)
            ok = ok and dual_r <= 1e-8
    ok = ok and resolutions["sphere KY p=1"][1] <= 1e-8

    flat = model_space("flat", 3)
    gf = build_gamma_rep(flat.space)
    tw = flat_twistor(flat, gf, random_spinor(gf, gen), random_spinor(gf, gen))
    ptsf = flat.sample_points(50, seed_value=44)
    for p in (1, 2):
        cur = FormField(flat, p,
                        lambda c, p=p: p_form_dirac_current(gf, tw.fn(c), tw.fn(c), p))
        r = cky_max_residual(normalize_form(cur, ptsf), ptsf)
        resolutions[f"flat CKY p={p}"] = ("direct", r)
        ok = ok and r <= 1e-8

    details = [f"{k}: {tag} {val:.2e}" for k, (tag, val) in resolutions.items()]
    _verdict(4, "Dirac currents satisfy KY/CKY equations (convention recorded)",
             ok, "(" + "; ".join(details) + ")")


@pytest.mark.parametrize("kind,kappa", [("flat", None), ("sphere", 1.0)])
def test_criterion_5_brackets(kind, kappa):
    ms = model_space(kind, 3, kappa)
    t0 = time.perf_counter()
    checks, _, _ = _run(ms, ["brackets"])
    elapsed = time.perf_counter() - t0
    by_name = {c.name.split(":")[-1]: c for c in checks}
    ok = by_name["sn_graded_symmetry"].max_residual <= 1e-11
    ok = ok and by_name["cky_graded_symmetry"].max_residual <= 1e-11
    ok = ok and by_name["sn_closure_on_ky"].max_residual <= 1e-8
    ok = ok and by_name["cky_closure_on_cky"].max_residual <= 1e-8
    ok = ok and by_name["sn_graded_jacobi"].max_residual <= 1e-7
    ok = ok and by_name["cky_graded_jacobi"].max_residual <= 1e-7
    ok = ok and elapsed < 60.0
    _verdict(5, f"bracket symmetry/closure/Jacobi on {kind} n=3", ok,
             f"(jacobi {by_name['sn_graded_jacobi'].max_residual:.2e}/"
             f"{by_name['cky_graded_jacobi'].max_residual:.2e}, {elapsed:.1f}s < 60s)")


@pytest.mark.parametrize("kind,kappa", [("flat", None), ("sphere", 1.0)])
def test_criterion_6_symmetry_operators(kind, kappa):
    ms = model_space(kind, 3, kappa)
    checks, _, _ = _run(ms, ["symmetry-ops"])
    by_name = {c.name.split(":")[-1]: c for c in checks}
    ok = by_name["ky_operator_derivative_vs_algebraic"].max_residual <= 1e-10
    ok = ok and by_name["twistor_operator_derivative_vs_algebraic"].max_residual <= 1e-10
    ok = ok and by_name["ky_operator_reduces_to_lie"].max_residual <= 1e-10
    ok = ok and by_name["twistor_p1_reduction"].max_residual <= 1e-10
    ok = ok and by_name["ky_operator_preserves_killing"].max_residual <= 1e-8
    ok = ok and by_name["twistor_operator_preserves_twistor"].max_residual <= 1e-8
    if kind == "flat":
        ok = ok and by_name["massless_p1_reduction"].max_residual <= 1e-10
        ok = ok and by_name["conformal_factor_coderivative"].max_residual <= 1e-10
        ok = ok and by_name["massless_operator_preserves_harmonic"].max_residual <= 1e-8
    _verdict(6, f"symmetry operators: equivalences, reductions, preservation ({kind})",
             ok)


def test_criterion_7_superalgebra_tables():
    ok = True
    details = []

    flat = model_space("flat", 3)
    checks, tables, _ = _run(flat, ["killing-superalgebra", "conformal"], samples=60)
    dims = {
        "killing_1forms": tables["killing-superalgebra"]["bases"]["ky1"]["dimension"],
        "conformal_killing_1forms": tables["conformal"]["bases"]["cky1"]["dimension"],
        "parallel_spinors": tables["killing-superalgebra"]["bases"]["killing_spinor"]["dimension"],
        "twistor_spinors": tables["conformal"]["bases"]["twistor_spinor"]["dimension"],
    }
    expected = {"killing_1forms": 6, "conformal_killing_1forms": 10,
                "parallel_spinors": 2, "twistor_spinors": 4}
    ok = ok and dims == expected
    details.append(f"flat dims {dims}")

    for kind, kappa in [("sphere", 1.0), ("flat", None)]:
        ms = model_space(kind, 3, kappa)
        checks, tables, _ = _run(ms, ["extended-killing", "extended-conformal"],
                                 samples=60)
        fit_ok, worst = _asserted_ok(checks)
        ok = ok and fit_ok
        for suite in ("extended-killing", "extended-conformal"):
            fit = max(float(e["closure_residual"])
                      for rows in tables[suite]["brackets"].values() for e in rows)
            ok = ok and fit <= 1e-7
            details.append(f"{kind} {suite} fit {fit:.1e}")

    cfg = RunConfig(space="flat", dim=3, suites=["killing-superalgebra"],
                    samples=40, seed=5)
    a = execute(cfg).model_dump()
    b = execute(cfg).model_dump()
    a.pop("timings")
    b.pop("timings")
    deterministic = json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    ok = ok and deterministic
    details.append(f"deterministic reports: {deterministic}")

    _verdict(7, "superalgebra dimensions, closure fits <= 1e-7, determinism",
             ok, "(" + "; ".join(details) + ")")


def test_total_runtime_budget():
    elapsed = time.perf_counter() - _T0
    print(f"[acceptance] total wall time {elapsed:.1f}s")
    assert elapsed < 300.0, f"acceptance run exceeded 5 minutes ({elapsed:.1f}s)"
