"""Operators: Dirac, twistor, Killing, KY/CKY residuals, brackets, symmetry ops."""

import numpy as np
import pytest

from spingeo.clifford import Multivector, basis_vector, volume_form
from spingeo.fields import (SpinorField, constant_form, constant_spinor,
                            coordinate_oneform, coderivative,
                            normalize_spinor, polynomial_form,
                            random_polynomial_form, random_polynomial_spinor)
from spingeo.model_space import model_space, _pack
from spingeo.operators import (cky_bracket, cky_max_residual, dirac,
                               dirac_max_residual, integrability_residuals_at,
                               killing_max_residual, ky_max_residual,
                               lie_derivative_spinor, sn_bracket,
                               spinor_list_max_abs, symmetry_op_cky_massless,
                               symmetry_op_cky_twistor,
                               symmetry_op_cky_twistor_algebraic,
                               symmetry_op_ky, symmetry_op_ky_algebraic,
                               twistor_max_residual)
from spingeo.spin_rep import (build_gamma_rep, clifford_action, random_spinor,
                              spinor_max_abs)
from spingeo.superalgebra import killing_number

from conftest import flat_twistor, killing_candidate, rng


def spinor_diff(a, b):
    return spinor_max_abs(np.asarray(a) - np.asarray(b))


# Dirac -------------------------------------------------------------------------

def test_dirac_of_constant_spinor_vanishes_flat(flat3):
    g = build_gamma_rep(flat3.space)
    psi = constant_spinor(flat3, g, random_spinor(g, rng(1)))
    for x in flat3.sample_points(10, seed_value=1):
        assert spinor_max_abs(dirac(psi)(x)) == 0


def test_dirac_of_coordinate_slash_is_dimension_times_spinor(flat3):
    # oracle: Σ_a γ^a γ_a χ = n χ by the anticommutation relations
    g = build_gamma_rep(flat3.space)
    chi = random_spinor(g, rng(2))
    hand = sum(g.gammas[a] @ g.gammas[a] @ chi for a in range(3))
    assert spinor_diff(hand, 3 * chi) < 1e-15

    def fn(coords):
        xt = Multivector.from_coeffs(flat3.space,
                                     [(1 << a, coords[a]) for a in range(3)])
        return _pack(clifford_action(g, xt, chi))

    psi = SpinorField(flat3, g, fn)
    for x in flat3.sample_points(10, seed_value=2):
        assert spinor_diff(dirac(psi)(x), 3 * chi) <= 1e-14


def test_sphere_killing_spinor_is_massive_dirac_eigenspinor(sphere3):
    g = build_gamma_rep(sphere3.space)
    lam = killing_number(sphere3)
    psi = killing_candidate(sphere3, g, lam, random_spinor(g, rng(3)))
    slashed = dirac(psi)
    for x in sphere3.sample_points(15, seed_value=3):
        assert spinor_diff(slashed(x), 3 * lam * np.asarray(psi(x))) <= 1e-13


# twistor and Killing residuals ----------------------------------------------------

def test_flat_twistor_family_certified(flat3):
    g = build_gamma_rep(flat3.space)
    gen = rng(4)
    psi = flat_twistor(flat3, g, random_spinor(g, gen), random_spinor(g, gen))
    pts = flat3.sample_points(100, seed_value=4)
    assert twistor_max_residual(psi, pts) <= 1e-10


def test_single_coordinate_spinor_is_not_twistor(flat3):
    g = build_gamma_rep(flat3.space)
    chi = random_spinor(g, rng(5))
    bad = SpinorField(flat3, g, lambda c: _pack([c[0] * v for v in chi]))
    pts = flat3.sample_points(30, seed_value=5)
    assert twistor_max_residual(normalize_spinor(bad, pts), pts) > 1e-3


@pytest.mark.parametrize("n", [2, 3])
def test_sphere_killing_candidates_certified(n):
    ms = model_space("sphere", n, 1.0)
    g = build_gamma_rep(ms.space)
    gen = rng(6)
    pts = ms.sample_points(100, seed_value=6)
    for sign in (+1, -1):
        lam = sign * 0.5j
        psi = killing_candidate(ms, g, lam, random_spinor(g, gen))
        assert killing_max_residual(psi, lam, pts) <= 1e-8
        assert twistor_max_residual(psi, pts) <= 1e-8


def test_sphere_wrong_killing_number_fails(sphere3):
    g = build_gamma_rep(sphere3.space)
    psi = killing_candidate(sphere3, g, 0.5j, random_spinor(g, rng(7)))
    pts = sphere3.sample_points(50, seed_value=7)
    psi = normalize_spinor(psi, pts)
    assert killing_max_residual(psi, 0.5, pts) > 1e-3


def test_flat_parallel_spinor(flat3):
    g = build_gamma_rep(flat3.space)
    psi = constant_spinor(flat3, g, random_spinor(g, rng(8)))
    pts = flat3.sample_points(20, seed_value=8)
    assert killing_max_residual(psi, 0.0, pts) == 0


# integrability -------------------------------------------------------------------

def test_integrability_flat_twistor_family(flat3):
    g = build_gamma_rep(flat3.space)
    gen = rng(9)
    psi = flat_twistor(flat3, g, random_spinor(g, gen), random_spinor(g, gen))
    for x in flat3.sample_points(10, seed_value=9):
        res = integrability_residuals_at(psi, x)
        assert spinor_max_abs(res["dirac_squared"]) <= 1e-9
        assert spinor_list_max_abs(res["dirac_gradient"]) <= 1e-9
        assert spinor_list_max_abs(res["conformal_action"]) <= 1e-9


def test_integrability_sphere_killing_spinor(sphere3):
    g = build_gamma_rep(sphere3.space)
    lam = killing_number(sphere3)
    psi = killing_candidate(sphere3, g, lam, random_spinor(g, rng(10)))
    slashed = dirac(psi)
    for x in sphere3.sample_points(8, seed_value=10):
        res = integrability_residuals_at(psi, x)
        assert spinor_max_abs(res["dirac_squared"]) <= 1e-8
        assert spinor_list_max_abs(res["dirac_gradient"]) <= 1e-8
        assert spinor_list_max_abs(res["conformal_action"]) <= 1e-8
        # Dirac eigenvalue consistency: D̸²ψ = (nλ)²ψ
        expect = (3 * lam) ** 2 * np.asarray(psi(x))
        assert spinor_diff(dirac(slashed)(x), expect) <= 1e-12


def test_integrability_skips_conformal_parts_at_n2():
    ms = model_space("sphere", 2, 1.0)
    g = build_gamma_rep(ms.space)
    psi = killing_candidate(ms, g, 0.5j, random_spinor(g, rng(11)))
    res = integrability_residuals_at(psi, ms.sample_points(1, seed_value=11)[0])
    assert res["dirac_gradient"] is None
    assert res["conformal_action"] is None
    assert spinor_max_abs(res["dirac_squared"]) <= 1e-10


# KY / CKY residuals ------------------------------------------------------------------

def test_constant_forms_are_ky_flat(flat3):
    pts = flat3.sample_points(10, seed_value=12)
    for p in (1, 2):
        w = constant_form(flat3, Multivector.blade(flat3.space, tuple(range(1, p + 1))), p)
        assert ky_max_residual(w, pts) == 0
        assert cky_max_residual(w, pts) == 0


def test_rotational_ky_two_form(flat3):
    w = polynomial_form(flat3, 2, [
        (0b110, (((1.0 + 0j), (1, 0, 0), 0.0),)),
        (0b101, (((-1.0 + 0j), (0, 1, 0), 0.0),)),
        (0b011, (((1.0 + 0j), (0, 0, 1), 0.0),)),
    ])
    pts = flat3.sample_points(20, seed_value=13)
    assert ky_max_residual(w, pts) <= 1e-14


def test_dilation_is_cky_but_not_ky(flat3):
    dil = coordinate_oneform(flat3)
    pts = flat3.sample_points(20, seed_value=14)
    assert cky_max_residual(dil, pts) <= 1e-14
    assert ky_max_residual(dil, pts) > 1e-3
    x = pts[0]
    assert (coderivative(dil)(x) - Multivector.scalar(flat3.space, -3.0)).max_abs() <= 1e-14


def test_volume_form_is_ky_on_sphere(sphere3):
    z = constant_form(sphere3, volume_form(sphere3.space), 3)
    pts = sphere3.sample_points(15, seed_value=15)
    assert ky_max_residual(z, pts) <= 1e-13


# brackets -------------------------------------------------------------------------

def rotation_1form(ms, i, j):
    def fn(coords):
        om = ms.conformal_factor(coords)
        return Multivector.from_coeffs(
            ms.space, [(1 << (j - 1), om * coords[i - 1]),
                       (1 << (i - 1), -(om * coords[j - 1]))])
    return polynomial_like(ms, fn)


def polynomial_like(ms, fn):
    from spingeo.fields import FormField
    return FormField(ms, 1, fn)


def test_sn_bracket_of_rotations_is_third_rotation(flat3):
    # oracle: the vector-field Lie bracket of the dual rotations
    k1 = rotation_1form(flat3, 2, 3)
    k2 = rotation_1form(flat3, 3, 1)
    out = sn_bracket(k1, k2)
    for x in flat3.sample_points(10, seed_value=16):
        lie = vector_lie_bracket_oracle(x)
        assert (out(x) - lie).max_abs() <= 1e-13


def vector_lie_bracket_oracle(x):
    # [x²∂₃ - x³∂₂, x³∂₁ - x¹∂₃] = x²∂₁ - x¹∂₂, dualized on flat space
    space = model_space("flat", 3).space
    return Multivector.from_coeffs(space, [(0b001, x[1]), (0b010, -x[0])])


def test_vector_lie_bracket_specializes_sn(flat3):
    from spingeo.operators import vector_lie_bracket
    k1 = rotation_1form(flat3, 2, 3)
    k2 = rotation_1form(flat3, 3, 1)
    lie = vector_lie_bracket(k1, k2)
    sn = sn_bracket(k1, k2)
    for x in flat3.sample_points(5, seed_value=30):
        assert (lie(x) - sn(x)).max_abs() == 0
    with pytest.raises(ValueError):
        vector_lie_bracket(k1, constant_form(flat3, Multivector.blade(flat3.space, (1, 2)), 2))


def test_sn_bracket_graded_symmetry_and_odd_self_bracket(flat3):
    gen = rng(17)
    pts = flat3.sample_points(8, seed_value=17)
    for p in (1, 2):
        for q in (1, 2, 3):
            w1 = random_polynomial_form(flat3, gen, p, 2)
            w2 = random_polynomial_form(flat3, gen, q, 2)
            sign = (-1.0) ** (p * q)
            b12, b21 = sn_bracket(w1, w2), sn_bracket(w2, w1)
            for x in pts:
                assert (b12(x) - sign * b21(x)).max_abs() <= 1e-11
    w = random_polynomial_form(flat3, gen, 1, 2)
    self_bracket = sn_bracket(w, w)
    for x in pts:
        assert self_bracket(x).max_abs() <= 1e-12


def test_cky_bracket_reduces_to_sn_on_coclosed_inputs(flat3):
    # KY forms are co-closed CKY forms; on them both brackets agree
    k1 = rotation_1form(flat3, 1, 2)
    w = polynomial_form(flat3, 2, [
        (0b110, (((1.0 + 0j), (1, 0, 0), 0.0),)),
        (0b101, (((-1.0 + 0j), (0, 1, 0), 0.0),)),
        (0b011, (((1.0 + 0j), (0, 0, 1), 0.0),)),
    ])
    pts = flat3.sample_points(10, seed_value=18)
    assert ky_max_residual(w, pts) <= 1e-13
    b_sn, b_cky = sn_bracket(k1, w), cky_bracket(k1, w)
    for x in pts:
        assert (b_sn(x) - b_cky(x)).max_abs() <= 1e-9


def test_cky_bracket_of_conformal_one_forms_is_cky(flat3):
    # dilation and a special-conformal 1-form close into a conformal Killing 1-form
    dil = coordinate_oneform(flat3)

    def special_fn(coords):
        r2 = sum(c * c for c in coords)
        pairs = []
        for a in range(3):
            coeff = 2.0 * coords[a] * coords[0] - (r2 if a == 0 else 0.0)
            pairs.append((1 << a, coeff))
        return Multivector.from_coeffs(flat3.space, pairs)

    special = polynomial_like(flat3, special_fn)
    pts = flat3.sample_points(12, seed_value=19)
    assert cky_max_residual(special, pts) <= 1e-12
    out = cky_bracket(dil, special)
    assert cky_max_residual(out, pts) <= 1e-9


def test_bracket_of_constants_vanishes(flat3):
    w1 = constant_form(flat3, basis_vector(flat3.space, 1), 1)
    w2 = constant_form(flat3, Multivector.blade(flat3.space, (2, 3)), 2)
    for x in flat3.sample_points(5, seed_value=20):
        assert sn_bracket(w1, w2)(x).max_abs() == 0
        assert cky_bracket(w1, w2)(x).max_abs() == 0


def test_bracket_degree_overflow_is_zero_field(sphere3):
    z = constant_form(sphere3, volume_form(sphere3.space), 3)
    out = sn_bracket(z, z)
    for x in sphere3.sample_points(5, seed_value=21):
        assert out(x).max_abs() == 0


# Lie derivative and symmetry operators ------------------------------------------------

def test_lie_derivative_translation_on_constant_spinor(flat3):
    g = build_gamma_rep(flat3.space)
    k = constant_form(flat3, basis_vector(flat3.space, 1), 1)
    psi = constant_spinor(flat3, g, random_spinor(g, rng(22)))
    for x in flat3.sample_points(5, seed_value=22):
        assert spinor_max_abs(lie_derivative_spinor(k, psi)(x)) == 0


def test_lie_derivative_rotation_maps_parallel_to_parallel(flat3):
    g = build_gamma_rep(flat3.space)
    k = rotation_1form(flat3, 2, 3)
    psi = constant_spinor(flat3, g, random_spinor(g, rng(23)))
    out = lie_derivative_spinor(k, psi)
    pts = flat3.sample_points(15, seed_value=23)
    assert killing_max_residual(out, 0.0, pts) <= 1e-9


def test_ky_operator_reduces_to_lie_derivative_at_degree_one(sphere3):
    g = build_gamma_rep(sphere3.space)
    k = rotation_1form(sphere3, 1, 3)
    psi = random_polynomial_spinor(sphere3, g, rng(24), 1)
    op = symmetry_op_ky(k, psi)
    lie = lie_derivative_spinor(k, psi)
    for x in sphere3.sample_points(10, seed_value=24):
        assert spinor_diff(op(x), lie(x)) <= 1e-10


def test_volume_form_operator_preserves_sphere_killing_spinors(sphere3):
    g = build_gamma_rep(sphere3.space)
    lam = killing_number(sphere3)
    psi = killing_candidate(sphere3, g, lam, random_spinor(g, rng(25)))
    z = constant_form(sphere3, volume_form(sphere3.space), 3)
    out = symmetry_op_ky(z, psi)
    pts = sphere3.sample_points(30, seed_value=25)
    assert killing_max_residual(out, lam, pts) <= 1e-8


def test_ky_operator_derivative_equals_algebraic_on_killing_spinors(sphere3):
    g = build_gamma_rep(sphere3.space)
    lam = killing_number(sphere3)
    psi = killing_candidate(sphere3, g, lam, random_spinor(g, rng(26)))
    pts = sphere3.sample_points(15, seed_value=26)
    for w in (rotation_1form(sphere3, 1, 2),
              constant_form(sphere3, volume_form(sphere3.space), 3)):
        a = symmetry_op_ky(w, psi)
        b = symmetry_op_ky_algebraic(w, psi, lam)
        for x in pts:
            assert spinor_diff(a(x), b(x)) <= 1e-10


def test_massless_operator_flat(flat3):
    g = build_gamma_rep(flat3.space)
    chi = random_spinor(g, rng(27))

    def harm_fn(coords):
        v1 = clifford_action(g, basis_vector(flat3.space, 2), chi)
        v2 = clifford_action(g, basis_vector(flat3.space, 1), chi)
        return _pack([coords[0] * a + coords[1] * b for a, b in zip(v1, v2)])

    harm = SpinorField(flat3, g, harm_fn)
    pts = flat3.sample_points(20, seed_value=27)
    assert dirac_max_residual(harm, pts) <= 1e-12

    dil = coordinate_oneform(flat3)
    out = symmetry_op_cky_massless(dil, harm)
    assert dirac_max_residual(out, pts) <= 1e-9
    # degree-1 reduction: operator = ℒ_C + ((n-1)/2) μ with μ = 1 for the dilation
    lie = lie_derivative_spinor(dil, harm)
    for x in pts[:10]:
        expect = np.asarray(lie(x)) + 1.0 * np.asarray(harm(x))
        assert spinor_diff(out(x), expect) <= 1e-10


def test_residual_report_pass_iff_bounded(flat3):
    from spingeo.operators import residual_report, twistor_residuals_at
    g = build_gamma_rep(flat3.space)
    gen = rng(29)
    psi = flat_twistor(flat3, g, random_spinor(g, gen), random_spinor(g, gen))
    pts = flat3.sample_points(20, seed_value=29)

    def at(x):
        return spinor_list_max_abs(twistor_residuals_at(psi, x))

    report = residual_report("twistor_family", at, pts, 1e-9)
    assert report.passed and report.samples == 20
    tight = residual_report("impossible", lambda x: at(x) + 1.0, pts, 1e-9)
    assert not tight.passed
    assert tight.max_abs_residual > tight.tolerance


def test_twistor_operator_flat(flat3):
    g = build_gamma_rep(flat3.space)
    gen = rng(28)
    psi = flat_twistor(flat3, g, random_spinor(g, gen), random_spinor(g, gen))
    dil = coordinate_oneform(flat3)
    out = symmetry_op_cky_twistor(dil, psi)
    alg = symmetry_op_cky_twistor_algebraic(dil, psi)
    pts = flat3.sample_points(20, seed_value=28)
    for x in pts[:10]:
        assert spinor_diff(out(x), alg(x)) <= 1e-10
    assert twistor_max_residual(out, pts) <= 1e-9
    # degree-1 reduction: ℒ_C - μ/2 with μ = -δC̃/n = 1
    lie = lie_derivative_spinor(dil, psi)
    for x in pts[:10]:
        expect = np.asarray(lie(x)) - 0.5 * np.asarray(psi(x))
        assert spinor_diff(out(x), expect) <= 1e-10
