"""Independent reference implementations used only by the tests.

Nothing here imports the package's algorithms; the point is to have a second
route to every number the tests compare against.
"""
from __future__ import annotations

import itertools
from fractions import Fraction


def naive_eval(terms: dict, point) -> complex:
    total = 0j
    for exp, c in terms.items():
        val = complex(c)
        for x, e in zip(point, exp):
            val *= complex(x) ** e
        total += val
    return total


def durand_kerner(coeffs_inc, iters: int = 2000, tol: float = 1e-15) -> list[complex]:
    """Roots of sum(c_k t^k) by the Weierstrass iteration."""
    c = [complex(x) for x in coeffs_inc]
    while c and c[-1] == 0:
        c.pop()
    d = len(c) - 1
    lead = c[-1]
    monic = [x / lead for x in c]

    def p(t):
        acc = 0j
        for a in reversed(monic):
            acc = acc * t + a
        return acc

    z = [(0.4 + 0.9j) ** k for k in range(d)]
    for _ in range(iters):
        delta = 0.0
        new = []
        for i, zi in enumerate(z):
            denom = 1 + 0j
            for j, zj in enumerate(z):
                if i != j:
                    denom *= zi - zj
            step = p(zi) / denom
            new.append(zi - step)
            delta = max(delta, abs(step))
        z = new
        if delta < tol:
            break
    return z


def sym_name(i: int, j: int) -> tuple:
    return (min(i, j), max(i, j))


def sym_pairs(n: int) -> list[tuple]:
    # row-major upper triangle, the convention the package documents
    return [(i, j) for i in range(n) for j in range(i, n)]


def leibniz_det_terms(n: int) -> dict:
    """det of a generic symmetric matrix as {exponent: integer coefficient} by the permutation sum."""
    pairs = sym_pairs(n)
    idx = {p: k for k, p in enumerate(pairs)}
    out: dict = {}
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        sign = -1 if inv % 2 else 1
        exp = [0] * len(pairs)
        for r in range(n):
            exp[idx[sym_name(r, perm[r])]] += 1
        key = tuple(exp)
        out[key] = out.get(key, 0) + sign
    return {k: v for k, v in out.items() if v != 0}


def brute_steps(alpha, beta) -> list[tuple]:
    out = []
    for i, (a, b) in enumerate(zip(alpha, beta)):
        if a != b:
            s = [0] * len(alpha)
            s[i] = 1 if b > a else -1
            out.append(tuple(s))
    return out


def brute_jump_system(F) -> bool:
    """Two-Steps Axiom checked literally over every pair and every first step."""
    F = {tuple(x) for x in F}
    for alpha in F:
        for beta in F:
            for s in brute_steps(alpha, beta):
                mid = tuple(a + b for a, b in zip(alpha, s))
                if mid in F:
                    continue
                if not any(tuple(m + t for m, t in zip(mid, tau)) in F for tau in brute_steps(mid, beta)):
                    return False
    return True


def det3(M) -> complex:
    return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))


def frobenius_argmax(terms: dict, W, n: int) -> set:
    """Exponents maximising the trace pairing <W, E(alpha)>, exact.

    E(alpha) carries alpha_ij/2 in both off-diagonal slots, so the pairing is
    simply sum over i <= j of W_ij * alpha_ij.
    """
    pairs = sym_pairs(n)
    best, arg = None, set()
    for exp in terms:
        val = sum((Fraction(W[i][j]) * e for (i, j), e in zip(pairs, exp)), Fraction(0))
        if best is None or val > best:
            best, arg = val, {exp}
        elif val == best:
            arg.add(exp)
    return arg


def mat_from_flat(flat, n: int):
    M = [[0j] * n for _ in range(n)]
    for (i, j), v in zip(sym_pairs(n), flat):
        M[i][j] = M[j][i] = complex(v)
    return M


def roots_close(a, b, tol: float) -> bool:
    """Multiset match of two root lists within ``tol``."""
    b = list(b)
    for r in a:
        k = min(range(len(b)), key=lambda i: abs(b[i] - r))
        if abs(b[k] - r) > tol:
            return False
        b.pop(k)
    return not b


def poly_from_roots(roots) -> list[complex]:
    c = [1 + 0j]
    for r in roots:
        c = [(c[k - 1] if k > 0 else 0) - r * (c[k] if k < len(c) else 0) for k in range(len(c) + 1)]
    return c


__all__ = [n for n in dir() if not n.startswith("_") and n not in {"itertools", "Fraction"}]
