import itertools

import numpy as np
import pytest

from conicstab.corpus import V_ij, random_psd_stable
from conicstab.polycore import Polynomial, partial_derivative
from conicstab.stabcheck import ConeSpec, check_cone_stability
from conicstab.symmat import (SymVarSpace, congruence_transform, diag_restriction, eval_at_matrix,
                              frobenius_initial_form, hadamard_scale, inversion_image,
                              matrix_directional_derivative, minor_restriction, permute_indices,
                              symbolic_adjugate, symbolic_determinant)
from helpers import DET3, INIT3, W_NOT_PD, P, S
from oracles import frobenius_argmax, leibniz_det_terms


def rand_sym(rng, n, cplx=True):
    A = rng.standard_normal((n, n)) + (1j * rng.standard_normal((n, n)) if cplx else 0)
    return (A + A.T) / 2


def test_space_layout():
    sp = SymVarSpace(3)
    assert sp.pairs == [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]
    M = rand_sym(np.random.default_rng(0), 3)
    np.testing.assert_allclose(sp.unflatten(sp.flatten(M)), M)


def test_eval_at_matrix_examples():
    assert eval_at_matrix(S("z11*z22 - z12^2", 2), 1j * np.eye(2)) == -1
    assert eval_at_matrix(S("z12", 2), 1j * np.eye(2)) == 0
    assert eval_at_matrix(S(INIT3, 3), 1j * np.eye(3)) == 0


def test_diag_restriction():
    assert diag_restriction(S("z11*z22 - z12^2", 2)) == P("z1*z2")
    assert diag_restriction(S("z12*z13 + z23^3", 3)).is_zero()


def test_diag_restriction_of_psd_stable_members_is_stable():
    rng = np.random.default_rng(21)
    for k in range(10):
        f = random_psd_stable(rng, 2 + k % 2)
        g = diag_restriction(f)
        if not g.is_zero():
            assert check_cone_stability(g, ConeSpec.orthant(g.nvars), 100, k).clean


def test_minor_restriction():
    assert minor_restriction(S(DET3, 3), [0, 1]).is_zero()
    det2 = S("z11*z22 - z12^2", 2)
    assert minor_restriction(det2, [0, 1]) == det2
    assert minor_restriction(det2, [0]).is_zero()
    f = S("z11*z33 - z13^2 + z22", 3)
    assert minor_restriction(f, [0, 2]) == S("z11*z22 - z12^2", 2)


def test_congruence():
    rng = np.random.default_rng(3)
    f = S("z11*z23 + (2-1i)*z13^2 + z22*z33 - 4", 3)
    assert congruence_transform(f, np.eye(3)).allclose(f, 1e-12)
    for perm in itertools.permutations(range(3)):
        Pm = np.eye(3)[list(perm)]
        # f(P Z P^T) has (P Z P^T)_ij = Z_{perm[i], perm[j]}
        assert congruence_transform(f, Pm).allclose(permute_indices(f, perm), 1e-12)
    det2 = S("z11*z22 - z12^2", 2)
    for _ in range(5):
        Sm = rng.standard_normal((2, 2))
        assert congruence_transform(det2, Sm).allclose(det2.scale(np.linalg.det(Sm) ** 2), 1e-9)
    Sm = rng.standard_normal((3, 3))
    Z = rand_sym(rng, 3)
    g = congruence_transform(f, Sm, "SZST")
    assert abs(eval_at_matrix(g, Z) - eval_at_matrix(f, Sm @ Z @ Sm.T)) < 1e-9
    Q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    h = congruence_transform(f, Q, "SZSinv")
    assert abs(eval_at_matrix(h, Z) - eval_at_matrix(f, Q @ Z @ np.linalg.inv(Q))) < 1e-9


def test_permute_indices():
    f = S("z11*z23 + z12^2 - 3*z33", 3)
    assert permute_indices(f, [0, 1, 2]) == f
    for n in (2, 3, 4):
        det = symbolic_determinant(n)
        for perm in itertools.permutations(range(n)):
            assert permute_indices(det, perm) == det
    pi = [2, 0, 1]
    pi2 = [pi[pi[i]] for i in range(3)]
    assert permute_indices(permute_indices(f, pi), pi) == permute_indices(f, pi2)


def test_matrix_directional_derivative():
    det2 = S("z11*z22 - z12^2", 2)
    assert matrix_directional_derivative(det2, V_ij(2, 0, 1)) == S("z11 + z22 - 2*z12", 2)
    f = S("z11^2*z23 - z12*z33 + z22", 3)
    sp = SymVarSpace(3)
    for i in range(3):
        B = np.zeros((3, 3))
        B[i, i] = 1
        assert matrix_directional_derivative(f, B) == partial_derivative(f, sp.index(i, i))
    rng = np.random.default_rng(6)
    V, W = rand_sym(rng, 3, False), rand_sym(rng, 3, False)
    a, b = 0.7, -1.3
    lhs = matrix_directional_derivative(f, a * V + b * W)
    rhs = matrix_directional_derivative(f, V).scale(a) + matrix_directional_derivative(f, W).scale(b)
    assert lhs.allclose(rhs, 1e-12)


def test_determinant_and_adjugate():
    assert symbolic_determinant(2) == S("z11*z22 - z12^2", 2)
    assert symbolic_determinant(3) == S(DET3, 3)
    assert len(symbolic_determinant(3)) == 5
    for n in (1, 2, 3, 4):
        det = symbolic_determinant(n)
        assert det == Polynomial(det.nvars, leibniz_det_terms(n))
        adj = symbolic_adjugate(n)
        sp = SymVarSpace(n)
        Z = [[Polynomial.variable(sp.nvars, sp.index(i, j)) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                entry = sum((adj[i][k] * Z[k][j] for k in range(n)), Polynomial.zero(sp.nvars))
                assert entry == (det if i == j else Polynomial.zero(sp.nvars))


def test_inversion_examples():
    c = Polynomial.constant(3, 2.5)
    assert inversion_image(c) == c
    assert inversion_image(S("z11", 1)) == S("-1", 1)
    det2 = S("z11*z22 - z12^2", 2)
    assert inversion_image(det2) == det2


def test_inversion_matches_formula_numerically():
    rng = np.random.default_rng(12)
    for n in (2, 3):
        f = S("z11*z22 + (1+1i)*z12 - z11^2 + 3", 2) if n == 2 else S("z12*z13 + z33^2*z11 - 2*z23 + 1", 3)
        img = inversion_image(f)
        d = f.total_degree()
        for _ in range(5):
            Z = rand_sym(rng, n)
            ref = np.linalg.det(Z) ** d * eval_at_matrix(f, -np.linalg.inv(Z))
            assert abs(eval_at_matrix(img, Z) - ref) < 1e-8 * max(1, abs(ref))


def test_block_inversion():
    rng = np.random.default_rng(13)
    f = S("z11*z22 - z12^2 + z33*z11 + 2*z33^2", 3)
    img = inversion_image(f, [[0, 1], [2]])
    for _ in range(5):
        A = rand_sym(rng, 2)
        c = complex(rng.standard_normal() + 1j * rng.standard_normal())
        Z = np.zeros((3, 3), complex)
        Z[:2, :2] = A
        Z[2, 2] = c
        W = Z.copy()
        W[:2, :2] = -np.linalg.inv(A)
        ref = np.linalg.det(A) ** 2 * eval_at_matrix(f, W)
        assert abs(eval_at_matrix(img, Z) - ref) < 1e-8 * max(1, abs(ref))
    with pytest.raises(ValueError):
        inversion_image(S("z13", 3), [[0, 1], [2]])


def test_frobenius_initial_form():
    det3 = S(DET3, 3)
    assert frobenius_initial_form(det3, W_NOT_PD) == S(INIT3, 3)
    assert frobenius_initial_form(det3, np.zeros((3, 3), int).tolist()) == det3
    assert frobenius_initial_form(S("z11*z22 - z12^2", 2), [[1, 0], [0, 1]]) == S("z11*z22", 2)
    rng = np.random.default_rng(14)
    for _ in range(30):
        W = rng.integers(-3, 4, (3, 3))
        W = (W + W.T).tolist()
        f = symbolic_determinant(3) + S("z12^2*z33 + z11 - z23", 3)
        got = frobenius_initial_form(f, W).support()
        assert got == frobenius_argmax(f.terms, W, 3)


def test_hadamard_scale():
    det3 = S(DET3, 3)
    assert hadamard_scale(det3, W_NOT_PD, 1.0).allclose(det3, 1e-15)
    init = frobenius_initial_form(det3, W_NOT_PD)
    prev = None
    for lam in (2.0, 10.0, 100.0):
        h = hadamard_scale(det3, W_NOT_PD, lam)
        for e in init.support():
            assert abs(h.coeff(e) - init.coeff(e)) < 1e-15
        others = {e: abs(h.coeff(e)) for e in det3.support() - init.support()}
        if prev is not None:
            assert all(others[e] < prev[e] for e in others)
        prev = others
    assert hadamard_scale(det3, W_NOT_PD, 1e6).allclose(init, 1e-5)
