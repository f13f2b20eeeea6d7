"""Polynomial generators with known stability, and the built-in example corpus.

The generators only combine constructions that are stable by elementary
arguments (products, psd linear forms, minors, shifted determinants), so
their outputs can serve as clean inputs for audits.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .polycore import Polynomial, affine_substitute, embed
from .stabcheck import ConeSpec, check_psd_stability, check_stability
from .symmat import (SymVarSpace, block_determinant, eval_at_matrix, frobenius_initial_form, space_of,
                     hadamard_scale, matrix_directional_derivative, symbolic_determinant)


def random_pd_integer(rng, n: int, spread: int = 2) -> np.ndarray:
    """``G G^T + I`` with integer ``G``; Frobenius pairings then differ by integers."""
    G = rng.integers(-spread, spread + 1, (n, n))
    return (G @ G.T + np.eye(n, dtype=int)).astype(int)


def random_psd(rng, n: int, rank: int | None = None) -> np.ndarray:
    rank = n if rank is None else rank
    G = rng.standard_normal((n, rank))
    return G @ G.T


def random_pd(rng, n: int, shift: float = 0.1) -> np.ndarray:
    return random_psd(rng, n) + shift * np.eye(n)


def V_ij(n: int, i: int, j: int) -> np.ndarray:
    """All-ones on rows/columns ``{i, j}``: the psd direction ``e_ij e_ij^T`` with ``e_ij = e_i + e_j``."""
    V = np.zeros((n, n))
    for a in (i, j):
        for b in (i, j):
            V[a, b] = 1.0
    return V


# -- psd-stable building blocks ---------------------------------------------------

def psd_linear_form(V, c: float) -> Polynomial:
    """``tr(V Z) + c`` for psd ``V``."""
    V = np.asarray(V, dtype=float)
    space = SymVarSpace(V.shape[0])
    coeffs = [V[i, i] if i == j else 2 * V[i, j] for i, j in space.pairs]
    return Polynomial.linear(coeffs, c)


def shifted_determinant(A) -> Polynomial:
    """``det(Z + A)`` for real symmetric ``A``."""
    A = np.asarray(A, dtype=float)
    space = SymVarSpace(A.shape[0])
    det = symbolic_determinant(space.n)
    return affine_substitute(det, space.flatten(A), np.eye(space.nvars))


def principal_minor(n: int, J) -> Polynomial:
    return block_determinant(n, sorted(J))


def random_psd_stable(rng, n: int, max_factors: int = 2, max_degree: int = 4, kinds=None) -> Polynomial:
    """A product of psd-stable factors over order ``n``.

    Factor kinds: 0 principal minors, 1 psd linear forms with real constant,
    2 ``d_V det(Z_J)`` for positive definite ``V``, 3 ``det(Z_J + A)`` for real
    symmetric ``A``.  ``kinds`` restricts the choice.
    """
    nv = SymVarSpace(n).nvars
    while True:
        f = Polynomial.constant(nv, 1)
        for _ in range(int(rng.integers(1, max_factors + 1))):
            kind = int(rng.integers(0, 4)) if kinds is None else int(rng.choice(kinds))
            size = int(rng.integers(1, n + 1))
            J = sorted(rng.choice(n, size=size, replace=False).tolist())
            if kind == 0:
                g = principal_minor(n, J)
            elif kind == 1:
                g = psd_linear_form(random_psd(rng, n, rank=int(rng.integers(1, n + 1))),
                                    float(rng.normal()))
            elif kind == 2:
                g = matrix_directional_derivative(principal_minor(n, J), random_pd(rng, n))
                if g.is_zero() or g.is_constant():
                    g = principal_minor(n, J)
            else:
                A = rng.normal(size=(size, size))
                g = embed(shifted_determinant((A + A.T) / 2), _minor_positions(n, J), nv)
            f = f * g
        if 1 <= f.total_degree() <= max_degree:
            return f


def _minor_positions(n: int, J) -> list[int]:
    sub, big = SymVarSpace(len(J)), SymVarSpace(n)
    return [big.index(J[i], J[j]) for i, j in sub.pairs]


# -- stable vector polynomials ----------------------------------------------------------

def stable_factor(rng, n: int) -> Polynomial:
    """One factor that is stable by the binomial classification or positivity."""
    kind = int(rng.integers(0, 4))
    i, j = (int(x) for x in rng.choice(n, size=2, replace=n < 2))
    z = [Polynomial.variable(n, k) for k in range(n)]
    if kind == 0:  # z_i - b, Im b <= 0
        b = complex(rng.normal(), -abs(rng.normal()) * rng.integers(0, 2))
        return z[i] - b
    if kind == 1:  # z_i + r z_j, r > 0
        return z[i] + float(rng.uniform(0.2, 3)) * z[j] if i != j else z[i]
    if kind == 2:  # z_i z_j - r, r > 0
        return z[i] * z[j] - float(rng.uniform(0.2, 3))
    a = rng.uniform(0, 2, n) * (rng.random(n) < 0.7)
    if not a.any():
        a[i] = 1.0
    return Polynomial.linear(a, float(rng.normal()))


def random_stable(rng, n: int, max_factors: int = 3) -> Polynomial:
    f = Polynomial.constant(n, complex(rng.normal(), rng.normal()))
    for _ in range(int(rng.integers(1, max_factors + 1))):
        f = f * stable_factor(rng, n)
    return f


def stable_binomial_instance(rng, form: str, n: int = 3) -> Polynomial:
    """Random instance of a stable binomial form, times a random monomial."""
    i, j = (int(x) for x in rng.choice(n, size=2, replace=False))
    gamma = rng.integers(0, 2, n)
    e = np.eye(n, dtype=int)
    c = complex(rng.normal(), rng.normal())
    if form == "form_a":
        # root of c1 + c2 z_i must sit in the closed lower half-plane
        b = complex(rng.normal(), -abs(rng.normal()))
        terms = {tuple(gamma + e[i]): c, tuple(gamma): -c * b}
    elif form == "form_b":
        terms = {tuple(gamma + e[i]): c * rng.uniform(0.1, 3), tuple(gamma + e[j]): c}
    elif form == "form_c":
        jj = j if rng.random() < 0.7 else i
        terms = {tuple(gamma + e[i] + e[jj]): c, tuple(gamma): -c * rng.uniform(0.1, 3)}
    else:
        raise ValueError(form)
    return Polynomial(n, terms)


def violating_binomial_instance(rng, n: int = 3) -> Polynomial:
    """A binomial breaking a ratio or distance condition."""
    i, j = (int(x) for x in rng.choice(n, size=2, replace=False))
    e = np.eye(n, dtype=int)
    zero = np.zeros(n, dtype=int)
    c = complex(rng.normal(), rng.normal())
    kind = int(rng.integers(0, 4))
    phase = np.exp(1j * rng.uniform(0.2, np.pi - 0.2)) * rng.choice([1, -1])
    if kind == 0:  # {e_i, e_j} with ratio outside R>=0
        r = -rng.uniform(0.1, 3) if rng.random() < 0.5 else rng.uniform(0.1, 3) * phase
        terms = {tuple(e[i]): c * r, tuple(e[j]): c}
    elif kind == 1:  # {0, e_i + e_j} with ratio outside R<0
        r = rng.uniform(0.1, 3) if rng.random() < 0.5 else rng.uniform(0.1, 3) * phase
        terms = {tuple(e[i] + e[j]): c * r, tuple(zero): c}
    elif kind == 2:  # distance 3 or more
        alpha = zero.copy()
        for _ in range(int(rng.integers(3, 5))):
            alpha[int(rng.integers(0, n))] += 1
        terms = {tuple(alpha): c, tuple(zero): c * rng.normal()}
    else:  # {e_i, e_j + e_k}-type: distance 3
        terms = {tuple(e[i]): c, tuple(2 * e[j]): c * rng.uniform(0.1, 3)}
    return Polynomial(n, terms)


# -- psd binomials --------------------------------------------------------------------------

def psd_binomial_instance(rng, n: int = 3) -> Polynomial:
    """Random binomial over order ``n`` mixing admissible and inadmissible shapes."""
    space = SymVarSpace(n)
    N = space.nvars
    i, j = sorted(int(x) for x in rng.choice(n, size=2, replace=False))
    gamma = np.zeros(N, dtype=int)
    for k in space.diagonal_indices():
        gamma[k] = int(rng.integers(0, 2))
    unit = np.eye(N, dtype=int)
    ii, jj, ij = space.index(i, i), space.index(j, j), space.index(i, j)
    kind = int(rng.integers(0, 6))
    c2 = complex(rng.normal(), rng.normal())
    real_ratio = float(rng.choice([-1, 1]) * rng.uniform(0.2, 3))
    if kind == 0:  # admissible off-diagonal pair, real ratio
        a, b, r = unit[ii] + unit[jj], 2 * unit[ij], real_ratio
    elif kind == 1:  # same pair, non-real ratio
        a, b, r = unit[ii] + unit[jj], 2 * unit[ij], real_ratio * np.exp(1j * rng.uniform(0.3, 2.8))
    elif kind == 2:  # diagonal form c: z_ii z_jj - r
        a, b, r = unit[ii] + unit[jj], 0 * unit[ii], -abs(real_ratio)
    elif kind == 3:  # off-diagonal to the first power
        a, b, r = unit[ii] + unit[jj], unit[ij], real_ratio
    elif kind == 4:  # diagonal distance violation
        a, b, r = 2 * unit[ii], 2 * unit[jj], real_ratio
    else:  # off-diagonal with missing diagonal partner
        a, b, r = unit[ii], 2 * unit[ij], real_ratio
    return Polynomial(N, {tuple(gamma + a): c2 * r, tuple(gamma + b): c2})


# -- Lieb-Sokal triples ------------------------------------------------------------------------

@dataclass
class LiebSokalTriple:
    g: Polynomial
    f: Polynomial
    v: np.ndarray
    cone: ConeSpec


def lieb_sokal_triple(rng, kind: str = "vector", n: int = 3) -> LiebSokalTriple:
    """``(g, f, v)`` with ``g + y f`` stable on ``K x R>=0`` by construction.

    vector / polyhedral: ``h * (z_i + c y + d)`` or
    ``h * (z_i z_j - r + y (z_i + z_j))`` with stable ``h`` and ``c, r > 0``.
    The second factor is real multiaffine with nonnegative Rayleigh
    differences, hence stable.  Polyhedral cones use generators in the open
    orthant, so orthant stability implies stability on the lifted cone.
    psd: ``det(Z + A + y u u^T)`` for real symmetric ``A``, which splits as
    ``det(Z + A) + y u^T adj(Z + A) u``.
    ``v`` is picked among directions in K with ``rho_v(f) <= 1``.
    """
    if kind == "psd":
        return _psd_triple(rng, n)
    h = random_stable(rng, n, max_factors=2)
    z = [Polynomial.variable(n, k) for k in range(n)]
    i, j = (int(x) for x in rng.choice(n, size=2, replace=False))
    if rng.random() < 0.5:
        g, f = h * (z[i] + float(rng.normal())), h.scale(float(rng.uniform(0.1, 2)))
    else:
        g, f = h * (z[i] * z[j] - float(rng.uniform(0.1, 2))), h * (z[i] + z[j])
    if kind == "polyhedral":
        G = rng.uniform(0.1, 1.0, (int(rng.integers(1, n + 1)), n))
        K = ConeSpec.polyhedral(G)
        cands = [row for row in G]
    else:
        K = ConeSpec.orthant(n)
        cands = list(np.eye(n))
    from .polycore import degree_in_direction
    cands = [v for v in cands if degree_in_direction(f, v) <= 1]
    if not cands:
        return lieb_sokal_triple(rng, kind, n)
    return LiebSokalTriple(g, f, np.asarray(cands[int(rng.integers(0, len(cands)))]), K)


def _psd_triple(rng, n: int) -> LiebSokalTriple:
    from .symmat import symbolic_adjugate
    space = SymVarSpace(n)
    A = rng.normal(size=(n, n))
    shift, eye = space.flatten((A + A.T) / 2), np.eye(space.nvars)
    u = rng.normal(size=n)
    adj = symbolic_adjugate(n)
    f = Polynomial.zero(space.nvars)
    for a in range(n):
        for b in range(n):
            f = f + adj[a][b].scale(u[a] * u[b])
    f = affine_substitute(f, shift, eye)
    g = shifted_determinant((A + A.T) / 2)
    m = int(rng.integers(0, n))
    V = np.zeros((n, n))
    V[m, m] = 1.0
    return LiebSokalTriple(g, f, V, ConeSpec.psd(n))


# -- built-in example corpus ---------------------------------------------------------------

@dataclass
class CorpusEntry:
    key: str
    description: str
    run: Callable[[int, int], dict]


def _det2():
    return symbolic_determinant(2)


def _entries() -> list[CorpusEntry]:
    from .combinat import (DetBlockSpec, classify_psd_binomial, classify_stable_binomial,
                           conjecture_search, det_support_analysis, non_mixed_analysis,
                           structure_check, validate_path)
    from .preservers import PreserverSpec, audit, apply
    from .symmat import diag_restriction
    from .textio import format_polynomial, parse_polynomial

    det3 = symbolic_determinant(3)
    W = [[4, 4, 6], [4, 4, 6], [6, 6, 0]]
    init_text = "-z11*z23^2 - z22*z13^2 + 2*z12*z13*z23"

    def res(ok, **detail):
        return {"passed": bool(ok), **detail}

    def det_formula(trials, seed):
        want2 = parse_polynomial("z11*z22 - z12^2", "sym:2")
        want3 = parse_polynomial("z11*z22*z33 - z11*z23^2 - z22*z13^2 - z33*z12^2 + 2*z12*z13*z23", "sym:3")
        return res(_det2() == want2 and det3 == want3 and len(det3) == 5,
                   det2=format_polynomial(_det2(), True), det3=format_polynomial(det3, True))

    def det_clean(trials, seed):
        out = {}
        for n in (2, 3, 4):
            out[f"det{n}"] = check_psd_stability(symbolic_determinant(n), trials, seed).to_dict()
        return res(all(v["outcome"] == "clean" for v in out.values()), verdicts=out)

    def offdiag_monomial(trials, seed):
        f = parse_polynomial("z12", "sym:2")
        v = check_psd_stability(f, trials, seed)
        return res(eval_at_matrix(f, 1j * np.eye(2)) == 0 and not v.clean, verdict=v.to_dict())

    def init_counterexample(trials, seed):
        g = frobenius_initial_form(det3, W)
        want = parse_polynomial(init_text, "sym:3")
        v = check_psd_stability(g, trials, seed)
        ok = (g == want and not v.clean and np.allclose(v.witness, 1j * np.eye(3)) and v.residual < 1e-12)
        return res(ok, initial_form=format_polynomial(g, True), verdict=v.to_dict())

    def hadamard_limit(trials, seed):
        g = frobenius_initial_form(det3, W)
        h = hadamard_scale(det3, W, 1e6)
        return res(h.allclose(g, 1e-5), scaled=format_polynomial(h, True))

    def v12_derivative(trials, seed):
        r = audit(PreserverSpec("psd_dir_derivative", {"V": V_ij(2, 0, 1)}), _det2(), trials=trials, seed=seed)
        want = parse_polynomial("z11 + z22 - 2*z12", "sym:2")
        ok = r.output == want and r.input_verdict.clean and r.output_verdict.clean
        return res(ok, audit=r.to_dict(True))

    def non_pd_initial_form(trials, seed):
        r = audit(PreserverSpec("psd_initial_form", {"W": W}), det3, trials=trials, seed=seed)
        ok = (not r.licensed) and r.agreement and not r.output_verdict.clean
        return res(ok, audit=r.to_dict(True))

    def inversion_det2(trials, seed):
        r = audit(PreserverSpec("psd_inversion"), _det2(), trials=trials, seed=seed)
        return res(r.output == _det2() and r.output_verdict.clean, audit=r.to_dict(True))

    def specialization(trials, seed):
        f = parse_polynomial("z1 + 2*z2 + 1", "vector:3") * parse_polynomial("z1*z3 - 1", "vector:3")
        b = 0.5 + 0.75j
        via_affine = affine_substitute(f, [b, 0, 0], [[0, 1, 0], [0, 0, 1]])
        direct = apply(PreserverSpec("specialize", {"i": 0, "b": b}), f)
        v = check_stability(direct, trials=trials, seed=seed)
        return res(via_affine.allclose(direct) and v.clean, verdict=v.to_dict())

    def binomial_forms(trials, seed):
        a = classify_stable_binomial((0, 0), (1, 0), 2, 3)
        b = classify_stable_binomial((1, 0), (0, 1), 2, 1)
        c = classify_stable_binomial((0, 0), (1, 1), -1, 1)
        v = check_stability(parse_polynomial("z1*z2 - 1", "vector:2"), trials=trials, seed=seed)
        ok = a.form == "form_a" and (b.form, b.ratio_ok) == ("form_b", True) and \
            (c.form, c.ratio_ok) == ("form_c", True) and v.clean
        return res(ok, forms=[a.form, b.form, c.form], verdict=v.to_dict())

    def psd_binomials(trials, seed):
        d = classify_psd_binomial(parse_polynomial("z11*z22 - z12^2", "sym:2"))
        e = classify_psd_binomial(parse_polynomial("z11^2 - z22^2", "sym:2"))
        v = check_psd_stability(parse_polynomial("z11^2 - z22^2", "sym:2"), trials, seed)
        ok = (d.form, d.ratio_ok) == ("offdiag_form_b", True) and e.form == "violates" and not v.clean
        return res(ok, det2=d.to_dict(), distance4=e.to_dict(), verdict=v.to_dict())

    def structure(trials, seed):
        r = structure_check(parse_polynomial("z12", "sym:2"))
        return res(r.violations == [(0, 1)] and structure_check(det3).ok, report=r.to_dict())

    def non_mixed(trials, seed):
        a = non_mixed_analysis(parse_polynomial("z11*z22*z33 + z12*z13*z23", "sym:3"))
        b = non_mixed_analysis(parse_polynomial("z11*z22 + 5*z12^2", "sym:3"))
        c = non_mixed_analysis(parse_polynomial("z11*z22 + z12*z13", "sym:3"))
        ok = a.hom_degree_bound_ok is False and b.degree2_form_ok is True and c.degree2_form_ok is False
        return res(ok, cubic=a.to_dict(), square=b.to_dict(), product=c.to_dict())

    def det_interval(trials, seed):
        r = det_support_analysis(DetBlockSpec((2, 1), {(0, 0): 1, (1, 0): 1, (2, 0): 1}))
        return res(r.interval_ok and r.jump.ok and r.block_size_ok, report=r.to_dict())

    def conjecture_example(trials, seed):
        f = parse_polynomial("z11 + z22 - 2*z12", "sym:3") * parse_polynomial("z11*z33 - z13^2", "sym:3")
        beta = next(iter(parse_polynomial("z12*z13^2", "sym:3").support()))
        r = conjecture_search(f, beta)
        names = r.path.to_dict(SymVarSpace(3))["path"] if r.found else None
        ok = r.found and names == ["z12*z13^2", "z11*z13^2", "z11^2*z33"] and \
            r.path.kinds == ["double", "transposition"] and validate_path(f, r.path)
        v = check_psd_stability(f, trials, seed)
        return res(ok and v.clean, path=names, verdict=v.to_dict())

    def det_transpositions(trials, seed):
        counts = {}
        ok = True
        for n in (2, 3, 4):
            d = symbolic_determinant(n)
            found = [conjecture_search(d, e, kinds=("transposition",)) for e in sorted(d.support())]
            ok &= all(r.found and validate_path(d, r.path) for r in found)
            counts[f"det{n}"] = len(found)
        return res(ok, monomials=counts)

    def diag_restrictions(trials, seed):
        rng = np.random.default_rng(seed)
        outs = []
        for _ in range(5):
            f = random_psd_stable(rng, 3)
            fd = diag_restriction(f)
            outs.append(fd.is_zero() or check_stability(fd, trials=trials, seed=seed).clean)
        return res(all(outs), checked=len(outs))

    def grammar(trials, seed):
        f = parse_polynomial("z11*z22 - z12^2", "sym:2")
        g = parse_polynomial("z{1,12}^2", "sym:12")
        return res(f == _det2() and format_polynomial(f, True) == "z11*z22 - z12^2" and len(g) == 1)

    return [
        CorpusEntry("determinant-lemma/expansion", "det2 and det3 expand to the displayed forms", det_formula),
        CorpusEntry("determinant-lemma/psd-stable", "det_n, n = 2, 3, 4 is falsifier-clean", det_clean),
        CorpusEntry("monomial-remark/z12", "z12 vanishes at i*I2", offdiag_monomial),
        CorpusEntry("initial-form-example/iI3", "init_W(det3) for the indefinite W vanishes at i*I3",
                    init_counterexample),
        CorpusEntry("hadamard-lemma/limit", "lambda = 1e6 scaling matches the initial form", hadamard_limit),
        CorpusEntry("derivative-example/V12", "d_V12 det2 = z11 + z22 - 2 z12, both clean", v12_derivative),
        CorpusEntry("initial-form-example/no-guarantee", "non-PD W gives no guarantee, audit agrees",
                    non_pd_initial_form),
        CorpusEntry("inversion-theorem/det2", "inversion image of det2 is det2", inversion_det2),
        CorpusEntry("elementary-preservers/specialization", "f(b, z2, z3) via affine substitution",
                    specialization),
        CorpusEntry("stable-binomials/forms", "forms a, b, c and z1 z2 - 1 clean", binomial_forms),
        CorpusEntry("psd-binomials/classification", "det2 is form b, z11^2 - z22^2 violates", psd_binomials),
        CorpusEntry("structure-theorem/z12", "z12 lacks diagonal partners", structure),
        CorpusEntry("non-mixed/theorems", "degree-3 bound and degree-2 square form", non_mixed),
        CorpusEntry("block-sizes/interval", "interval property with C1 = 2", det_interval),
        CorpusEntry("conjecture-example/path", "double then transposition step", conjecture_example),
        CorpusEntry("determinant-transpositions/det_n", "transposition-only paths for det_n, n <= 4",
                    det_transpositions),
        CorpusEntry("psd-preservers/diagonalization", "diagonal restrictions are stable", diag_restrictions),
        CorpusEntry("grammar/examples", "parser examples", grammar),
    ]


def builtin_corpus() -> list[CorpusEntry]:
    return _entries()


def run_corpus(trials: int = 200, seed: int = 0, keys=None) -> list[dict]:
    out = []
    for entry in builtin_corpus():
        if keys and entry.key not in keys:
            continue
        result = entry.run(trials, seed)
        out.append({"key": entry.key, "description": entry.description, **result})
    return out


# -- preserver audit sweep -------------------------------------------------------------------

def _psd_specs(rng, n: int, directions: int = 10) -> list:
    from .preservers import PreserverSpec
    i, j = (int(x) for x in rng.choice(n, size=2, replace=False))
    J = sorted(rng.choice(n, size=int(rng.integers(1, n + 1)), replace=False).tolist())
    specs = [PreserverSpec("psd_inversion"), PreserverSpec("psd_diag"),
             PreserverSpec("psd_permute", {"pi": rng.permutation(n).tolist()}),
             PreserverSpec("psd_congruence", {"S": rng.normal(size=(n, n))}),
             PreserverSpec("psd_congruence", {"S": np.linalg.qr(rng.normal(size=(n, n)))[0], "kind": "SZSinv"}),
             PreserverSpec("psd_minor", {"J": J}),
             PreserverSpec("psd_dir_derivative", {"V": V_ij(n, i, j)})]
    for k in range(directions):
        V = random_pd(rng, n) if k % 2 else random_psd(rng, n, rank=int(rng.integers(1, n + 1)))
        specs.append(PreserverSpec("psd_dir_derivative", {"V": V}))
        specs.append(PreserverSpec("psd_initial_form", {"W": random_pd_integer(rng, n).tolist()}))
    return specs


def _vector_specs(rng, n: int) -> list:
    from .preservers import PreserverSpec
    i, j = (int(x) for x in rng.choice(n, size=2, replace=False))
    return [PreserverSpec("permute", {"sigma": rng.permutation(n).tolist()}),
            PreserverSpec("scale", {"c": complex(rng.normal(), rng.normal()), "a": rng.uniform(0.2, 3, n).tolist()}),
            PreserverSpec("identify", {"i": i, "j": j}),
            PreserverSpec("specialize", {"i": i, "b": complex(rng.normal(), abs(rng.normal()))}),
            PreserverSpec("invert", {"i": i}),
            PreserverSpec("differentiate", {"i": i}),
            PreserverSpec("dir_derivative", {"v": rng.uniform(0, 2, n).tolist()}),
            PreserverSpec("affine", {"a": (rng.normal(size=n) + 1j * rng.uniform(0, 1, n)).tolist(),
                                     "dirs": rng.uniform(0, 1, (2, n)).tolist()}),
            PreserverSpec("initial_form", {"w": rng.integers(-2, 3, n).tolist()})]


def audit_sweep(psd_inputs: int = 30, vector_inputs: int = 24, trials: int = 50, seed: int = 0,
                directions: int = 10):
    """Audit every preserver on random stable and psd-stable inputs.

    Each psd input gets ``directions`` random psd directions ``V`` and as many
    random positive definite weights ``W``, plus one of every other transform.

    Yields one :class:`~conicstab.preservers.AuditReport` per transform
    application; the input verdict is computed once per input and reused.
    """
    from .preservers import audit
    rng = np.random.default_rng([seed, 8])
    fixed = [symbolic_determinant(2), symbolic_determinant(3)]
    psd_polys = fixed + [random_psd_stable(rng, 2 + k % 2) for k in range(psd_inputs - len(fixed))]
    for k, f in enumerate(psd_polys):
        n = space_of(f).n
        K = ConeSpec.psd(n)
        v_in = check_psd_stability(f, trials, seed + k)
        for spec in _psd_specs(rng, n, directions):
            yield audit(spec, f, K, trials, seed + k, input_verdict=v_in)
    for k in range(vector_inputs):
        n = 2 + k % 3
        f = random_stable(rng, n)
        K = ConeSpec.orthant(n)
        v_in = check_stability(f, K, trials=trials, seed=seed + k)
        for spec in _vector_specs(rng, n):
            yield audit(spec, f, K, trials, seed + k, input_verdict=v_in)
