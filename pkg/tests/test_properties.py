"""Property-based checks of the documented invariants."""
import numpy as np
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from conicstab.combinat import (DetBlockSpec, conjecture_search, det_support_analysis, is_jump_system, l1,
                                lpm_build, steps_between, validate_path)
from conicstab.corpus import random_psd_stable
from conicstab.polycore import (Polynomial, degree_in_direction, directional_derivative, evaluate,
                                initial_form)
from conicstab.preservers import PreserverSpec, apply, invert
from conicstab.stabcheck import ConeSpec, check_cone_stability, check_psd_stability, verify_witness
from conicstab.symmat import (SymVarSpace, block_determinant, congruence_transform, eval_at_matrix,
                              exponent_matrix, flat_exponent, matrix_abs, permute_indices)
from conicstab.textio import Space, format_polynomial, parse_polynomial
from oracles import brute_jump_system

PROPS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def polys(nvars: int, max_terms: int = 5, max_deg: int = 3, cplx: bool = False):
    exps = st.tuples(*[st.integers(0, max_deg)] * nvars)
    ints = st.integers(-5, 5).filter(bool)
    coef = st.builds(complex, ints, st.integers(-5, 5)) if cplx else ints
    return st.dictionaries(exps, coef, max_size=max_terms).map(lambda t: Polynomial(nvars, t))


@PROPS
@given(polys(3), polys(3), polys(3))
def test_ring_axioms_exact(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert (f - f).is_zero()


@PROPS
@given(polys(3, cplx=True), polys(3, cplx=True),
       st.lists(st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False), min_size=3, max_size=3))
def test_evaluate_is_homomorphism(f, g, z):
    lhs, rhs = evaluate(f * g, z), evaluate(f, z) * evaluate(g, z)
    scale = max(1.0, (f.norm1() * g.norm1()) * 2 ** 6)
    assert abs(lhs - rhs) <= 1e-9 * scale


@PROPS
@given(polys(3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_derivative_exhaustion(f, v):
    assume(any(v) and not f.is_zero())
    rho = degree_in_direction(f, v)
    g = f
    for _ in range(rho + 1):
        g = directional_derivative(g, v)
    assert g.is_zero()


@PROPS
@given(polys(3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_initial_form_is_subpolynomial(f, w):
    g = initial_form(f, w)
    assert g.support() <= f.support()
    assert all(f.coeff(e) == c for e, c in g.items())
    if not f.is_zero():
        assert not g.is_zero()


@PROPS
@given(polys(3))
def test_degree_in_coordinate_direction(f):
    assume(not f.is_zero())
    for i in range(3):
        e = [0, 0, 0]
        e[i] = 1
        assert degree_in_direction(f, e) == f.degree_in(i)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(*[st.integers(0, 4)] * (n * (n + 1) // 2))))
def test_exponent_matrix_round_trip(exp):
    alpha = exponent_matrix(exp)
    assert flat_exponent(alpha) == tuple(exp)
    assert matrix_abs(alpha) == sum(exp)


@PROPS
@given(polys(6, max_terms=6), st.permutations(range(3)))
def test_permutation_congruence_preserves_shape(f, perm):
    Pm = np.eye(3)[list(perm)]
    g = congruence_transform(f, Pm)
    assert g.total_degree() == f.total_degree() and len(g) == len(f)
    assert g == permute_indices(f, perm)


@PROPS
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), polys(n, cplx=True))))
def test_parse_format_round_trip(args):
    n, f = args
    assert parse_polynomial(format_polynomial(f, False), Space("vector", n)) == f


@PROPS
@given(polys(6, cplx=True))
def test_parse_format_round_trip_symmetric(f):
    assert parse_polynomial(format_polynomial(f, True), Space("sym", 3)) == f


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 3).flatmap(lambda d: st.sets(st.tuples(*[st.integers(0, 3)] * d), max_size=8)))
def test_jump_system_agrees_with_brute_force(F):
    assert is_jump_system(F).ok == brute_jump_system(F)


@settings(max_examples=200, deadline=None)
@given(st.tuples(*[st.integers(0, 4)] * 4), st.tuples(*[st.integers(0, 4)] * 4))
def test_steps_shorten_distance(a, b):
    assert len(steps_between(a, b)) == sum(x != y for x, y in zip(a, b))
    for s in steps_between(a, b):
        assert l1(tuple(x + y for x, y in zip(a, s)), b) == l1(a, b) - 1


@PROPS
@given(polys(3))
def test_invert_twice_is_signed_identity(f):
    # deg_0 must survive the first inversion, which needs a term free of z1
    assume(not f.is_zero() and min(e[0] for e in f.support()) == 0)
    d = f.degree_in(0)
    assert invert(invert(f, 0), 0) == f.scale((-1) ** d)


@PROPS
@given(polys(3, cplx=True), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_scale_inverse(f, logs):
    a = [2.0 ** k for k in logs]
    g = apply(PreserverSpec("scale", {"c": 1, "a": a}), f)
    h = apply(PreserverSpec("scale", {"c": 1, "a": [1 / x for x in a]}), g)
    assert h == f


@settings(max_examples=25, deadline=None)
@given(polys(2, max_terms=4, max_deg=2, cplx=True), st.integers(0, 1000))
def test_counterexamples_reverify_and_reproduce(f, seed):
    assume(not f.is_zero() and not f.is_constant())
    K = ConeSpec.orthant(2)
    v = check_cone_stability(f, K, 20, seed)
    if not v.clean:
        ok, res, cert = verify_witness(f, K, v.witness)
        assert ok and res < 1e-8 * (1 + f.norm1()) and cert > 1e-7
    w = check_cone_stability(f, K, 20, seed)
    assert v.to_dict() == w.to_dict()


@settings(max_examples=15, deadline=None)
@given(st.lists(st.sets(st.integers(0, 2), min_size=1), min_size=1, max_size=2))
def test_homogeneous_clean_is_nonzero_at_iI(Js):
    f = Polynomial.constant(6, 1)
    for J in Js:
        f = f * block_determinant(3, sorted(J))
    assert f.is_homogeneous()
    if check_psd_stability(f, 30, 0).clean:
        assert abs(eval_at_matrix(f, 1j * np.eye(3))) > 0.5


@settings(max_examples=20, deadline=None)
@given(st.dictionaries(st.sets(st.integers(0, 2)).map(frozenset), st.integers(-3, 3).filter(bool), min_size=1,
                       max_size=5))
def test_lpm_paths_revalidate(coeffs):
    f = lpm_build(3, coeffs)
    assume(not f.is_zero())
    for beta in sorted(f.support()):
        res = conjecture_search(f, beta)
        if res.found:
            assert validate_path(f, res.path)


@settings(max_examples=60, deadline=None)
@given(st.sets(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=6))
def test_det_support_jump_verdict_matches_brute_force(B):
    spec = DetBlockSpec((1, 2), {b: 1 for b in B})
    assert det_support_analysis(spec).jump.ok == brute_jump_system(B)
