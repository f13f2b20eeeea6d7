"""Polynomials in the entries of a symmetric matrix variable.

Variables are ``z_ij`` with ``i <= j`` (0-based here; 1-based only in text
form), flattened row by row over the upper triangle.  Off-diagonal exponents
are stored as plain integers on ``z_ij``; the half-integer exponent matrix
is available through :func:`exponent_matrix` as a view.
"""
from __future__ import annotations

import itertools
import warnings
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Sequence

import numpy as np

from .polycore import (Polynomial, _is_exact, argmax_exponents, directional_derivative,
                       embed, evaluate, substitute_variables)

DET_CAP = 6
SINGULAR_TOL = 1e-10
COND_WARN = 1e8


class SymVarSpace:
    """Index bookkeeping for the ``n(n+1)/2`` variables of an order-``n`` matrix."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("matrix order must be positive")
        self.n = n
        self.pairs = [(i, j) for i in range(n) for j in range(i, n)]
        self._index = {p: k for k, p in enumerate(self.pairs)}

    @classmethod
    def from_nvars(cls, nvars: int) -> "SymVarSpace":
        n = (isqrt(8 * nvars + 1) - 1) // 2
        if n * (n + 1) // 2 != nvars or n < 1:
            raise ValueError(f"{nvars} is not the variable count of a symmetric matrix space")
        return cls(n)

    @property
    def nvars(self) -> int:
        return len(self.pairs)

    def index(self, i: int, j: int) -> int:
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"matrix index ({i}, {j}) out of range for order {self.n}")
        return self._index[(min(i, j), max(i, j))]

    def diagonal_indices(self) -> list[int]:
        return [self._index[(i, i)] for i in range(self.n)]

    def is_diagonal_var(self, k: int) -> bool:
        i, j = self.pairs[k]
        return i == j

    def variable(self, i: int, j: int) -> Polynomial:
        return Polynomial.variable(self.nvars, self.index(i, j))

    def name(self, k: int) -> str:
        i, j = self.pairs[k]
        if self.n <= 9:
            return f"z{i + 1}{j + 1}"
        return f"z{{{i + 1},{j + 1}}}"

    def flatten(self, M) -> np.ndarray:
        """Upper triangle of ``M`` in variable order."""
        M = np.asarray(M)
        if M.shape != (self.n, self.n):
            raise ValueError(f"matrix of shape {M.shape} does not match order {self.n}")
        return np.array([M[i, j] for i, j in self.pairs])

    def unflatten(self, vec) -> np.ndarray:
        vec = np.asarray(vec)
        M = np.zeros((self.n, self.n), dtype=vec.dtype)
        for k, (i, j) in enumerate(self.pairs):
            M[i, j] = M[j, i] = vec[k]
        return M

    def __eq__(self, other):
        return isinstance(other, SymVarSpace) and other.n == self.n

    def __hash__(self):
        return hash(("sym", self.n))

    def __repr__(self):
        return f"SymVarSpace({self.n})"


def space_of(f: Polynomial) -> SymVarSpace:
    return SymVarSpace.from_nvars(f.nvars)


# -- exponent-matrix view -------------------------------------------------

def exponent_matrix(exp: Sequence[int], n: int | None = None) -> np.ndarray:
    """Symmetric exponent matrix (object array of Fractions) of a flat exponent."""
    space = SymVarSpace.from_nvars(len(exp)) if n is None else SymVarSpace(n)
    alpha = np.full((space.n, space.n), Fraction(0), dtype=object)
    for k, (i, j) in enumerate(space.pairs):
        if i == j:
            alpha[i, i] = Fraction(exp[k])
        else:
            alpha[i, j] = alpha[j, i] = Fraction(exp[k], 2)
    return alpha


def flat_exponent(alpha) -> tuple:
    """Inverse of :func:`exponent_matrix`."""
    alpha = np.asarray(alpha, dtype=object)
    n = alpha.shape[0]
    out = []
    for i, j in SymVarSpace(n).pairs:
        if alpha[i, j] != alpha[j, i]:
            raise ValueError("exponent matrix is not symmetric")
        v = alpha[i, i] if i == j else 2 * Fraction(alpha[i, j])
        if Fraction(v).denominator != 1 or v < 0:
            raise ValueError("invalid exponent matrix entry")
        out.append(int(v))
    return tuple(out)


def matrix_abs(alpha) -> Fraction:
    """``|alpha| = sum_ij |alpha_ij|``; equals the total degree of the monomial."""
    return sum((abs(Fraction(x)) for x in np.asarray(alpha, dtype=object).ravel()), Fraction(0))


def frobenius_pairing(W, exp: Sequence[int], space: SymVarSpace, exact: bool):
    conv = Fraction if exact else float
    total = conv(0)
    for k, (i, j) in enumerate(space.pairs):
        if exp[k]:
            total += conv(W[i][j]) * exp[k]
    return total


# -- evaluation and restrictions --------------------------------------------

def eval_at_matrix(f: Polynomial, M) -> complex:
    space = space_of(f)
    M = np.asarray(M, dtype=complex)
    if M.shape != (space.n, space.n):
        raise ValueError(f"matrix order {M.shape} does not match polynomial order {space.n}")
    return evaluate(f, space.flatten(M))


def diag_restriction(f: Polynomial) -> Polynomial:
    """Set off-diagonal variables to zero; result over ``z_11..z_nn``."""
    space = space_of(f)
    diag = space.diagonal_indices()
    out: dict[tuple, complex] = {}
    for e, c in f.items():
        if all(e[k] == 0 for k in range(f.nvars) if not space.is_diagonal_var(k)):
            ne = tuple(e[k] for k in diag)
            out[ne] = out.get(ne, 0j) + c
    return Polynomial(space.n, out)


def minor_restriction(f: Polynomial, J: Sequence[int]) -> Polynomial:
    """``f(Z_J)``: variables touching an index outside ``J`` set to zero."""
    J = sorted(set(J))
    if not J:
        raise ValueError("index subset must be nonempty")
    space = space_of(f)
    if J[-1] >= space.n or J[0] < 0:
        raise IndexError("index subset out of range")
    sub = SymVarSpace(len(J))
    pos = {j: a for a, j in enumerate(J)}
    out: dict[tuple, complex] = {}
    for e, c in f.items():
        ne = [0] * sub.nvars
        ok = True
        for k, ek in enumerate(e):
            if ek:
                i, j = space.pairs[k]
                if i not in pos or j not in pos:
                    ok = False
                    break
                ne[sub.index(pos[i], pos[j])] += ek
        if ok:
            out[tuple(ne)] = out.get(tuple(ne), 0j) + c
    return Polynomial(sub.nvars, out)


def embed_minor(f: Polynomial, J: Sequence[int], n: int) -> Polynomial:
    """View a polynomial over order ``|J|`` as one over order ``n`` on indices ``J``."""
    J = sorted(J)
    sub = space_of(f)
    if sub.n != len(J):
        raise ValueError("subset size does not match polynomial order")
    big = SymVarSpace(n)
    return embed(f, [big.index(J[i], J[j]) for i, j in sub.pairs], big.nvars)


def _linear_images(space: SymVarSpace, entry) -> list[Polynomial]:
    """Images of each ``z_ij`` under a linear map given entrywise by ``entry(i, j)``.

    ``entry(i, j)`` returns the ``n x n`` coefficient matrix ``C`` with
    ``M_ij = sum_kl C[k, l] * Z_kl`` over the full (symmetric) matrix ``Z``.
    """
    images = []
    for i, j in space.pairs:
        C = entry(i, j)
        coeffs = np.zeros(space.nvars)
        for k in range(space.n):
            for l in range(space.n):
                coeffs[space.index(k, l)] += C[k, l]
        images.append(Polynomial.linear(coeffs))
    return images


def congruence_transform(f: Polynomial, S, kind: str = "SZST") -> Polynomial:
    """Substitute ``Z -> S Z S^T`` (``kind="SZST"``) or ``Z -> S Z S^-1`` (``"SZSinv"``).

    The similarity image is not symmetric in general; it is re-symmetrised
    as ``(M + M^T)/2`` before substitution.
    """
    space = space_of(f)
    S = np.asarray(S, dtype=float)
    if S.shape != (space.n, space.n):
        raise ValueError("S must match the matrix order")
    if abs(np.linalg.det(S)) < SINGULAR_TOL:
        raise ValueError("S is singular")
    if kind == "SZST":
        T = S.T
    elif kind == "SZSinv":
        cond = np.linalg.cond(S)
        if cond > COND_WARN:
            warnings.warn(f"S is ill-conditioned (cond={cond:.3g})", RuntimeWarning, stacklevel=2)
        T = np.linalg.inv(S)
    else:
        raise ValueError(f"unknown congruence kind {kind!r}")

    def entry(i, j):
        # M = S Z T, so M_ij = sum_kl S_ik T_lj Z_kl
        C = np.outer(S[i], T[:, j])
        if kind == "SZSinv" and i != j:
            C = 0.5 * (C + np.outer(S[j], T[:, i]))
        return C

    return substitute_variables(f, _linear_images(space, entry), space.nvars)


def permute_indices(f: Polynomial, perm: Sequence[int]) -> Polynomial:
    """``f((Z_{pi(j), pi(k)})_{jk})``: variable ``z_jk`` becomes ``z_{pi(j) pi(k)}``."""
    space = space_of(f)
    perm = list(perm)
    if sorted(perm) != list(range(space.n)):
        raise ValueError("not a permutation of the matrix indices")
    target = [space.index(perm[i], perm[j]) for i, j in space.pairs]
    return embed(f, target, space.nvars)


def matrix_directional_derivative(f: Polynomial, V) -> Polynomial:
    """``d/dt f(Z + tV) |_{t=0} = sum_{i<=j} V_ij df/dz_ij``."""
    space = space_of(f)
    V = np.asarray(V, dtype=float)
    if V.shape != (space.n, space.n):
        raise ValueError("direction must match the matrix order")
    if not np.allclose(V, V.T, atol=0):
        raise ValueError("direction matrix must be symmetric")
    return directional_derivative(f, space.flatten(V))


# -- determinants and adjugates ----------------------------------------------

def _perm_sign(p: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def _sub_determinant(space: SymVarSpace, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
    """Leibniz expansion of the symbolic submatrix ``Z[rows, cols]``."""
    out: dict[tuple, complex] = {}
    m = len(rows)
    for p in itertools.permutations(range(m)):
        e = [0] * space.nvars
        for a in range(m):
            e[space.index(rows[a], cols[p[a]])] += 1
        e = tuple(e)
        out[e] = out.get(e, 0j) + _perm_sign(p)
    return Polynomial(space.nvars, out)


def _check_cap(n: int) -> None:
    if not 1 <= n <= DET_CAP:
        raise ValueError(f"symbolic determinants are limited to 1 <= n <= {DET_CAP}, got {n}")


@lru_cache(maxsize=None)
def symbolic_determinant(n: int) -> Polynomial:
    """``det(Z)`` expanded in the symmetric variables."""
    _check_cap(n)
    space = SymVarSpace(n)
    return _sub_determinant(space, range(n), range(n))


@lru_cache(maxsize=None)
def symbolic_adjugate(n: int) -> tuple:
    """Adjugate of ``Z`` as an ``n x n`` tuple of polynomials (symmetric)."""
    _check_cap(n)
    space = SymVarSpace(n)
    if n == 1:
        return ((Polynomial.constant(1, 1),),)
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            # adj_ij = (-1)^(i+j) * minor with row j and column i removed
            rows = [r for r in range(n) if r != j]
            cols = [c for c in range(n) if c != i]
            cof = _sub_determinant(space, rows, cols)
            if (i + j) % 2:
                cof = -cof
            adj[i][j] = adj[j][i] = cof
    return tuple(tuple(row) for row in adj)


def block_determinant(n: int, block: Sequence[int]) -> Polynomial:
    """``det(Z_block)`` as a polynomial over order ``n``."""
    block = sorted(block)
    return embed_minor(symbolic_determinant(len(block)), block, n)


# -- inversion ---------------------------------------------------------------

def _check_blocks(space: SymVarSpace, blocks) -> list[list[int]]:
    blocks = [sorted(b) for b in blocks]
    flat = sorted(i for b in blocks for i in b)
    if flat != list(range(space.n)):
        raise ValueError("blocks must partition the matrix indices")
    return blocks


def inversion_image(f: Polynomial, blocks=None) -> Polynomial:
    """``det(Z)^deg(f) * f(-Z^-1)``, or its block version on the first block.

    Each monomial ``c * prod z_ij^e_ij`` of degree ``d`` maps to
    ``c * (-1)^d * prod adj_ij^e_ij * det^(deg f - d)``; with ``blocks`` only
    the variables of ``blocks[0]`` are inverted and the exponent is the total
    degree of ``f`` in those variables.
    """
    if f.is_zero():
        raise ValueError("inversion of the zero polynomial")
    space = space_of(f)
    if blocks is None:
        block = list(range(space.n))
    else:
        blocks = _check_blocks(space, blocks)
        owner = {i: b for b, blk in enumerate(blocks) for i in blk}
        for e, _ in f.items():
            for k, ek in enumerate(e):
                i, j = space.pairs[k]
                if ek and owner[i] != owner[j]:
                    raise ValueError("polynomial does not respect the block partition")
        block = blocks[0]

    m = len(block)
    _check_cap(m)
    pos = {b: a for a, b in enumerate(block)}
    sub = SymVarSpace(m)
    adj = symbolic_adjugate(m)
    det = symbolic_determinant(m)
    inblock = [k for k, (i, j) in enumerate(space.pairs) if i in pos and j in pos]
    # images of block variables as polynomials over the full space
    positions = [space.index(block[i], block[j]) for i, j in sub.pairs]
    adj_full = {k: embed(adj[pos[space.pairs[k][0]]][pos[space.pairs[k][1]]], positions, space.nvars)
                for k in inblock}
    det_full = embed(det, positions, space.nvars)

    degs = [sum(e[k] for k in inblock) for e in f.support()]
    top = max(degs)
    det_pows = {}
    adj_pows: dict[tuple[int, int], Polynomial] = {}
    out = Polynomial.zero(space.nvars)
    for e, c in f.items():
        d = sum(e[k] for k in inblock)
        rest = list(e)
        term = Polynomial.constant(space.nvars, c * (-1) ** d)
        for k in inblock:
            if e[k]:
                if (k, e[k]) not in adj_pows:
                    adj_pows[(k, e[k])] = adj_full[k] ** e[k]
                term = term * adj_pows[(k, e[k])]
            rest[k] = 0
        if top - d not in det_pows:
            det_pows[top - d] = det_full ** (top - d)
        term = term * det_pows[top - d] * Polynomial.monomial(rest)
        out = out + term
    return out


# -- initial forms and Hadamard scaling ----------------------------------------

def _check_symmetric(W, n: int):
    A = np.asarray(W, dtype=object)
    if A.shape != (n, n):
        raise ValueError("weight matrix must match the matrix order")
    for i in range(n):
        for j in range(i + 1, n):
            if A[i, j] != A[j, i]:
                raise ValueError("weight matrix must be symmetric")
    return A


def frobenius_pairings(f: Polynomial, W) -> tuple[dict, bool]:
    space = space_of(f)
    A = _check_symmetric(W, space.n)
    exact = _is_exact(A.ravel())
    return {e: frobenius_pairing(A, e, space, exact) for e in f.support()}, exact


def frobenius_initial_form(f: Polynomial, W) -> Polynomial:
    """Initial form for the Frobenius pairing ``<W, alpha>_F``.

    Integer/Fraction ``W`` gives exact ties.
    """
    pairings, exact = frobenius_pairings(f, W)
    keep = argmax_exponents(pairings, exact)
    return Polynomial(f.nvars, {e: c for e, c in f.items() if e in keep})


def hadamard_scale(f: Polynomial, W, lam: float) -> Polynomial:
    """``lam^-phi * f(lam^W o Z)`` with ``phi`` the top pairing over the support."""
    if lam <= 0:
        raise ValueError("scaling parameter must be positive")
    if f.is_zero():
        return f
    pairings, _ = frobenius_pairings(f, W)
    phi = max(float(p) for p in pairings.values())
    return f.map_coefficients(lambda e, c: c * lam ** (float(pairings[e]) - phi))

