"""Sparse multivariate polynomials with complex coefficients.

A :class:`Polynomial` is an immutable map from exponent tuples to complex
coefficients over a fixed number of variables.  Coefficients with modulus
below :data:`PRUNE_TOL` are dropped after every operation, so supports stay
crisp and the zero polynomial is simply the empty term map.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Integral, Rational
from typing import Mapping, Sequence

import numpy as np

PRUNE_TOL = 1e-12
FLOAT_TIE_TOL = 1e-9
DEGREE_SAMPLES = 5

Exponent = tuple


class Polynomial:
    """Immutable sparse polynomial over ``nvars`` variables."""

    __slots__ = ("_nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], complex] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean: dict[tuple, complex] = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            clean[exp] = clean.get(exp, 0j) + complex(coef)
        self._nvars = nvars
        self._terms = {e: c for e, c in clean.items() if abs(c) >= PRUNE_TOL}
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c: complex) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], c: complex = 1) -> "Polynomial":
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def linear(cls, coeffs: Sequence[complex], const: complex = 0) -> "Polynomial":
        """The affine form ``const + sum(coeffs[i] * z_i)``."""
        n = len(coeffs)
        terms = {(0,) * n: const}
        for i, c in enumerate(coeffs):
            exp = [0] * n
            exp[i] = 1
            terms[tuple(exp)] = c
        return cls(n, terms)

    # -- basic accessors ------------------------------------------------
    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> dict[tuple, complex]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exp: Sequence[int]) -> complex:
        return self._terms.get(tuple(exp), 0j)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def total_degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, i: int) -> int:
        if not self._terms:
            return -1
        return max(e[i] for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def norm1(self) -> float:
        return float(sum(abs(c) for c in self._terms.values()))

    # -- equality ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._nvars == other._nvars and self._terms == other._terms
        if isinstance(other, (int, float, complex)):
            return self == Polynomial.constant(self._nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    def allclose(self, other: "Polynomial", tol: float = 1e-9) -> bool:
        """Coefficientwise comparison with absolute tolerance ``tol``."""
        _check_same_space(self, other)
        keys = set(self._terms) | set(other._terms)
        return all(abs(self.coeff(k) - other.coeff(k)) <= tol for k in keys)

    # -- ring operations ---------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            _check_same_space(self, other)
            return other
        if isinstance(other, (int, float, complex, np.number)):
            return Polynomial.constant(self._nvars, complex(other))
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0j) + c
        return Polynomial(self._nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self._nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out: dict[tuple, complex] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0j) + c1 * c2
        return Polynomial(self._nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self._nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: complex) -> "Polynomial":
        return Polynomial(self._nvars, {e: c * v for e, v in self._terms.items()})

    def map_coefficients(self, fn) -> "Polynomial":
        return Polynomial(self._nvars, {e: fn(e, c) for e, c in self._terms.items()})

    # -- calculus and evaluation ----------------------------------------------
    def __call__(self, point) -> complex:
        return evaluate(self, point)

    def __repr__(self) -> str:
        from .textio import format_polynomial

        return f"Polynomial({self._nvars}, {format_polynomial(self)!r})"


def _check_same_space(f: Polynomial, g: Polynomial) -> None:
    if f.nvars != g.nvars:
        raise ValueError(f"variable-space mismatch: {f.nvars} vs {g.nvars} variables")


def ring_ops(f: Polynomial, g: Polynomial | None = None, kind: str = "add", k: int = 0) -> Polynomial:
    """Dispatch helper for ``add``, ``mul``, ``negate`` and ``power``."""
    if kind == "add":
        return f + g
    if kind == "mul":
        return f * g
    if kind == "negate":
        return -f
    if kind == "power":
        return f ** k
    raise ValueError(f"unknown ring operation {kind!r}")


def _power_table(values: np.ndarray, maxexp: np.ndarray) -> list[np.ndarray]:
    # repeated multiplication keeps integer inputs exact
    table = []
    for v, m in zip(values, maxexp):
        pw = np.empty(int(m) + 1, dtype=complex)
        pw[0] = 1.0
        for k in range(1, int(m) + 1):
            pw[k] = pw[k - 1] * v
        table.append(pw)
    return table


def evaluate(f: Polynomial, point) -> complex:
    """Evaluate ``f`` as the plain sum of ``c * point**alpha``."""
    point = np.asarray(point, dtype=complex).ravel()
    if point.shape[0] != f.nvars:
        raise ValueError(f"point has length {point.shape[0]}, expected {f.nvars}")
    if f.is_zero():
        return 0j
    exps = np.array(list(f._terms.keys()), dtype=int).reshape(len(f), f.nvars)
    coefs = np.array(list(f._terms.values()), dtype=complex)
    table = _power_table(point, exps.max(axis=0) if f.nvars else np.zeros(0, int))
    vals = coefs.copy()
    for i in range(f.nvars):
        vals = vals * table[i][exps[:, i]]
    return complex(vals.sum())


def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    if not 0 <= i < f.nvars:
        raise IndexError(f"variable index {i} out of range for {f.nvars} variables")
    out = {}
    for e, c in f.items():
        if e[i] > 0:
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
    return Polynomial(f.nvars, out)


def directional_derivative(f: Polynomial, v: Sequence[float]) -> Polynomial:
    """``sum_i v_i * df/dz_i``."""
    v = list(v)
    if len(v) != f.nvars:
        raise ValueError(f"direction has length {len(v)}, expected {f.nvars}")
    out = Polynomial.zero(f.nvars)
    for i, vi in enumerate(v):
        if vi != 0:
            out = out + partial_derivative(f, i).scale(vi)
    return out


def affine_substitute(f: Polynomial, a, dirs) -> Polynomial:
    """Compose ``f`` with ``(t_1..t_k) -> a + sum_j t_j * dirs[j]``."""
    a = np.asarray(a, dtype=complex).ravel()
    dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
    if a.shape[0] != f.nvars or dirs.shape[1] != f.nvars:
        raise ValueError("dimension mismatch in affine substitution")
    if dirs.shape[0] < 1:
        raise ValueError("need at least one direction")
    images = [Polynomial.linear(dirs[:, i], a[i]) for i in range(f.nvars)]
    return substitute_variables(f, images, dirs.shape[0])


def univariate_restriction(f: Polynomial, x, y) -> np.ndarray:
    """Coefficients (increasing degree) of ``t -> f(x + t*y)``.

    ``x`` may be complex; trailing coefficients below the pruning tolerance
    relative to the largest coefficient are dropped.
    """
    x = np.asarray(x, dtype=complex).ravel()
    y = np.asarray(y, dtype=complex).ravel()
    if x.shape[0] != f.nvars or y.shape[0] != f.nvars:
        raise ValueError("dimension mismatch in univariate restriction")
    if f.is_zero():
        return np.zeros(0, dtype=complex)
    deg = f.total_degree()
    exps = np.array(list(f._terms.keys()), dtype=int).reshape(len(f), f.nvars)
    coefs = np.array(list(f._terms.values()), dtype=complex)
    maxexp = exps.max(axis=0)
    powers = []
    for i in range(f.nvars):
        col = [np.ones(1, dtype=complex)]
        lin = np.array([x[i], y[i]], dtype=complex)
        for _ in range(int(maxexp[i])):
            col.append(np.convolve(col[-1], lin))
        powers.append(col)
    out = np.zeros(deg + 1, dtype=complex)
    for row, c in zip(exps, coefs):
        acc = np.array([c], dtype=complex)
        for i in np.nonzero(row)[0]:
            acc = np.convolve(acc, powers[i][row[i]])
        out[: acc.shape[0]] += acc
    return _trim(out)


def _trim(coeffs: np.ndarray) -> np.ndarray:
    if coeffs.size == 0:
        return coeffs
    scale = max(1.0, float(np.abs(coeffs).max()))
    nz = np.nonzero(np.abs(coeffs) >= PRUNE_TOL * scale)[0]
    if nz.size == 0:
        return np.zeros(0, dtype=complex)
    return coeffs[: nz[-1] + 1]


def degree_in_direction(f: Polynomial, v, samples: int = DEGREE_SAMPLES, rng=None) -> int:
    """Degree of ``t -> f(w + t*v)`` maximised over random complex ``w``."""
    if f.is_zero():
        raise ValueError("degree in direction is undefined for the zero polynomial")
    v = np.asarray(v, dtype=float).ravel()
    if v.shape[0] != f.nvars:
        raise ValueError("direction length mismatch")
    rng = np.random.default_rng(0) if rng is None else rng
    best = 0
    for _ in range(samples):
        r = np.sqrt(rng.uniform(0, 1, f.nvars))
        w = r * np.exp(2j * np.pi * rng.uniform(0, 1, f.nvars))
        coeffs = univariate_restriction(f, w, v)
        best = max(best, coeffs.shape[0] - 1)
    return best


def _is_exact(w) -> bool:
    return all(isinstance(x, (Integral, Rational)) and not isinstance(x, bool) for x in w)


def argmax_exponents(pairings: dict, exact: bool) -> set:
    """Keys whose pairing attains the maximum (exactly, or within ``FLOAT_TIE_TOL``)."""
    if not pairings:
        return set()
    top = max(pairings.values())
    if exact:
        return {e for e, p in pairings.items() if p == top}
    return {e for e, p in pairings.items() if p >= top - FLOAT_TIE_TOL}


def initial_form(f: Polynomial, w) -> Polynomial:
    """Restrict ``f`` to the exponents maximising ``<w, alpha>``.

    Integer or :class:`fractions.Fraction` weights give exact ties; floating
    weights treat pairings within ``FLOAT_TIE_TOL`` of the maximum as ties.
    """
    w = list(np.asarray(w, dtype=object).ravel()) if not isinstance(w, (list, tuple)) else list(w)
    if len(w) != f.nvars:
        raise ValueError("weight length mismatch")
    exact = _is_exact(w)
    if exact:
        w = [Fraction(x) for x in w]
    else:
        w = [float(x) for x in w]
    pairings = {e: sum(wi * ei for wi, ei in zip(w, e)) for e in f.support()}
    keep = argmax_exponents(pairings, exact)
    return Polynomial(f.nvars, {e: c for e, c in f.items() if e in keep})


def support(f: Polynomial) -> frozenset:
    return f.support()


def substitute_variables(f: Polynomial, images: Sequence[Polynomial], nvars: int) -> Polynomial:
    """Replace variable ``i`` of ``f`` by ``images[i]`` (each over ``nvars`` variables)."""
    if len(images) != f.nvars:
        raise ValueError("need one image per variable")
    cache: dict[tuple[int, int], Polynomial] = {}

    def pw(i: int, e: int) -> Polynomial:
        if (i, e) not in cache:
            cache[(i, e)] = images[i] ** e
        return cache[(i, e)]

    out: dict[tuple, complex] = {}
    for exp, c in f.items():
        term = Polynomial.constant(nvars, c)
        for i, e in enumerate(exp):
            if e:
                term = term * pw(i, e)
        for te, tc in term.items():
            out[te] = out.get(te, 0j) + tc
    return Polynomial(nvars, out)


def embed(f: Polynomial, positions: Sequence[int], nvars: int) -> Polynomial:
    """Relabel variable ``i`` of ``f`` as variable ``positions[i]`` among ``nvars``."""
    out = {}
    for e, c in f.items():
        ne = [0] * nvars
        for i, ei in enumerate(e):
            ne[positions[i]] += ei
        out[tuple(ne)] = out.get(tuple(ne), 0j) + c
    return Polynomial(nvars, out)


def random_polynomial(rng, nvars: int, nterms: int = 4, maxdeg: int = 3, complex_coeffs: bool = True,
                      integer_coeffs: bool = False) -> Polynomial:
    """Random sparse polynomial, mostly for tests and demos."""
    terms = {}
    for _ in range(nterms):
        exp = tuple(int(x) for x in rng.integers(0, maxdeg + 1, nvars))
        if integer_coeffs:
            c = complex(int(rng.integers(-5, 6)))
        elif complex_coeffs:
            c = complex(rng.normal(), rng.normal())
        else:
            c = complex(rng.normal())
        terms[exp] = terms.get(exp, 0) + c
    return Polynomial(nvars, terms)
