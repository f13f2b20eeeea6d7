"""Support combinatorics: jump systems, binomial classifiers, structure checks,
polynomials of determinants and the step search between monomials.

The classifiers encode necessary conditions.  A report says "not psd-stable"
only when a theorem licenses that conclusion; otherwise it says
"consistent with psd-stability".
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .polycore import Polynomial
from .symmat import (SymVarSpace, block_determinant, exponent_matrix, matrix_abs, space_of,
                     symbolic_determinant, _check_cap)

RATIO_TOL = 1e-9

NOT_PSD = "not psd-stable"
CONSISTENT = "consistent with psd-stability"


def _vec(a) -> tuple:
    return tuple(int(x) for x in a)


def l1(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(abs(x - y) for x, y in zip(a, b))


# -- steps and jump systems ---------------------------------------------------

def steps_between(alpha, beta) -> list[tuple]:
    """``St(alpha, beta)``: unit vectors that move ``alpha`` one closer to ``beta``.

    Empty when the two vectors coincide.
    """
    alpha, beta = _vec(alpha), _vec(beta)
    if len(alpha) != len(beta):
        raise ValueError("vectors of different length")
    out = []
    for i, (a, b) in enumerate(zip(alpha, beta)):
        if a != b:
            s = [0] * len(alpha)
            s[i] = 1 if b > a else -1
            out.append(tuple(s))
    return sorted(out)


def _add(a, b) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


@dataclass
class JumpResult:
    ok: bool
    witness: Optional[tuple] = None  # (alpha, beta, sigma)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        out = {"jump_system": self.ok}
        if self.witness:
            out["witness"] = {k: list(v) for k, v in zip(("alpha", "beta", "sigma"), self.witness)}
        return out


def is_jump_system(F: Iterable) -> JumpResult:
    """Two-Steps Axiom over all ordered pairs.

    The witness is the lexicographically smallest failing ``(alpha, beta, sigma)``.
    """
    pts = sorted({_vec(p) for p in F})
    if pts and len({len(p) for p in pts}) != 1:
        raise ValueError("support vectors of different length")
    S = set(pts)
    for a in pts:
        for b in pts:
            if a == b:
                continue
            for s in steps_between(a, b):
                a1 = _add(a, s)
                if a1 in S:
                    continue
                if not any(_add(a1, t) in S for t in steps_between(a1, b)):
                    return JumpResult(False, (a, b, s))
    return JumpResult(True)


# -- stable binomials -------------------------------------------------------------

@dataclass
class BinomialClass:
    form: str  # form_a | form_b | form_c | violates
    ratio_ok: Optional[bool]
    gamma: tuple
    residual: tuple
    ratio: complex

    @property
    def consistent(self) -> bool:
        """Whether the necessary condition for stability holds."""
        return self.form != "violates" and self.ratio_ok is not False

    def to_dict(self) -> dict:
        from .textio import complex_to_json
        return {"form": self.form, "ratio_ok": self.ratio_ok, "gamma": list(self.gamma),
                "residual": [list(r) for r in self.residual], "ratio": complex_to_json(self.ratio)}


def _is_real(z: complex) -> bool:
    return abs(z.imag) <= RATIO_TOL * max(1.0, abs(z))


def _strip(alpha, beta):
    gamma = tuple(min(x, y) for x, y in zip(alpha, beta))
    return gamma, tuple(x - g for x, g in zip(alpha, gamma)), tuple(y - g for y, g in zip(beta, gamma))


def classify_stable_binomial(alpha, beta, c_alpha, c_beta) -> BinomialClass:
    """Match ``c_a z^a + c_b z^b`` (common factor removed) against the stable forms.

    form_a: ``{0, e_i}``; form_b: ``{e_i, e_j}`` with ratio in R>=0;
    form_c: ``{0, e_i + e_j}`` (``i = j`` allowed) with ratio in R<0.
    """
    alpha, beta = _vec(alpha), _vec(beta)
    c_alpha, c_beta = complex(c_alpha), complex(c_beta)
    if c_alpha == 0 or c_beta == 0:
        raise ValueError("binomial coefficients must be nonzero")
    if alpha == beta:
        raise ValueError("a binomial needs two distinct exponents")
    gamma, a, b = _strip(alpha, beta)
    ratio = c_alpha / c_beta
    da, db = sum(a), sum(b)
    if sorted((da, db)) == [0, 1]:
        return BinomialClass("form_a", None, gamma, (a, b), ratio)
    if da == 1 and db == 1:
        ok = _is_real(ratio) and ratio.real >= 0
        return BinomialClass("form_b", ok, gamma, (a, b), ratio)
    if sorted((da, db)) == [0, 2]:
        ok = _is_real(ratio) and ratio.real < 0
        return BinomialClass("form_c", ok, gamma, (a, b), ratio)
    return BinomialClass("violates", None, gamma, (a, b), ratio)


# -- psd binomials -------------------------------------------------------------------

@dataclass
class PsdBinomialClass:
    form: str  # diag_form_a | offdiag_form_b | violates
    ratio_ok: Optional[bool]
    gamma: tuple
    residual: tuple
    distance: int
    reason: str
    diagonal_class: Optional[BinomialClass] = None

    @property
    def verdict(self) -> str:
        if self.form == "violates" or self.ratio_ok is False:
            return NOT_PSD
        return CONSISTENT

    def to_dict(self) -> dict:
        out = {"form": self.form, "ratio_ok": self.ratio_ok, "gamma": list(self.gamma),
               "residual": [list(r) for r in self.residual], "distance": self.distance,
               "reason": self.reason, "verdict": self.verdict}
        if self.diagonal_class is not None:
            out["diagonal_class"] = self.diagonal_class.to_dict()
        return out


def _is_diag_exp(space: SymVarSpace, e) -> bool:
    return all(e[k] == 0 for k in range(space.nvars) if not space.is_diagonal_var(k))


def _is_offdiag_exp(space: SymVarSpace, e) -> bool:
    return any(e) and all(e[k] == 0 for k in space.diagonal_indices())


def classify_psd_binomial(f: Polynomial) -> PsdBinomialClass:
    """Classify a two-term polynomial over a symmetric variable space."""
    if len(f) != 2:
        raise ValueError(f"expected a binomial, got {len(f)} terms")
    space = space_of(f)
    (e1, c1), (e2, c2) = sorted(f.items())
    gamma, a, b = _strip(e1, e2)
    dist = l1(a, b)
    if not _is_diag_exp(space, gamma):
        return PsdBinomialClass("violates", None, gamma, (a, b), dist, "common factor is not diagonal")
    if _is_diag_exp(space, a) and _is_diag_exp(space, b):
        diag = space.diagonal_indices()
        sub = classify_stable_binomial([a[k] for k in diag], [b[k] for k in diag], c1, c2)
        if dist > 2:
            return PsdBinomialClass("violates", None, gamma, (a, b), dist, "exponents more than 2 apart", sub)
        if sub.form == "violates":
            return PsdBinomialClass("violates", None, gamma, (a, b), dist, "diagonal part is not a stable form", sub)
        return PsdBinomialClass("diag_form_a", sub.ratio_ok, gamma, (a, b), dist, "diagonal binomial", sub)
    # exactly one side off-diagonal with pattern {e_ii + e_jj, 2 e_ij}
    for d, o, cd, co in ((a, b, c1, c2), (b, a, c2, c1)):
        if _is_diag_exp(space, d) and _is_offdiag_exp(space, o):
            ks = [k for k in range(space.nvars) if o[k]]
            if len(ks) == 1 and o[ks[0]] == 2:
                i, j = space.pairs[ks[0]]
                want = [0] * space.nvars
                want[space.index(i, i)] += 1
                want[space.index(j, j)] += 1
                if list(d) == want:
                    ok = _is_real(complex(cd) / complex(co))
                    return PsdBinomialClass("offdiag_form_b", ok, gamma, (a, b), dist,
                                            f"z_ii z_jj / z_ij^2 pair at ({i + 1},{j + 1})")
    return PsdBinomialClass("violates", None, gamma, (a, b), dist, "no admissible form matches")


# -- structure and non-mixed analysis --------------------------------------------------

@dataclass
class StructureReport:
    ok: bool
    violations: list  # 0-based (i, j) pairs

    @property
    def verdict(self) -> str:
        return CONSISTENT if self.ok else NOT_PSD

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violations": [[i + 1, j + 1] for i, j in self.violations],
                "verdict": self.verdict}


def structure_check(f: Polynomial) -> StructureReport:
    """Every off-diagonal ``z_ij`` in f needs both ``z_ii`` and ``z_jj`` somewhere in f."""
    space = space_of(f)
    used = set()
    for e in f.support():
        used.update(k for k, x in enumerate(e) if x)
    bad = []
    for k in sorted(used):
        i, j = space.pairs[k]
        if i != j and not (space.index(i, i) in used and space.index(j, j) in used):
            bad.append((i, j))
    return StructureReport(not bad, bad)


@dataclass
class NonMixedReport:
    is_non_mixed: bool
    homogeneous: bool
    degree: int
    has_offdiagonal: bool
    hom_degree_bound_ok: Optional[bool]
    degree2_form_ok: Optional[bool]
    mixed_monomials: int

    @property
    def verdict(self) -> str:
        if self.hom_degree_bound_ok is False or self.degree2_form_ok is False:
            return NOT_PSD
        return CONSISTENT

    def to_dict(self) -> dict:
        return {"is_non_mixed": self.is_non_mixed, "homogeneous": self.homogeneous, "degree": self.degree,
                "has_offdiagonal": self.has_offdiagonal, "hom_degree_bound_ok": self.hom_degree_bound_ok,
                "degree2_form_ok": self.degree2_form_ok, "mixed_monomials": self.mixed_monomials,
                "verdict": self.verdict}


def non_mixed_analysis(f: Polynomial) -> NonMixedReport:
    space = space_of(f)
    diag = off = mixed = 0
    off_exps = []
    for e in f.support():
        if _is_diag_exp(space, e):
            diag += 1
        elif _is_offdiag_exp(space, e):
            off += 1
            off_exps.append(e)
        else:
            mixed += 1
    non_mixed = mixed == 0
    hom = f.is_homogeneous()
    deg = f.total_degree()
    bound = form2 = None
    if non_mixed and hom and off:
        if deg >= 3:
            bound = False
        else:
            bound = True
        if deg == 2:
            form2 = all(sum(1 for x in e if x) == 1 for e in off_exps)
    return NonMixedReport(non_mixed, hom, deg, off > 0, bound, form2, mixed)


# -- polynomials of determinants -------------------------------------------------------

@dataclass
class DetBlockSpec:
    """Blocks of consecutive indices with sizes ``block_sizes`` and a map
    from determinantal exponent vectors to coefficients."""

    block_sizes: tuple
    coeffs: dict

    def __post_init__(self):
        self.block_sizes = tuple(int(d) for d in self.block_sizes)
        if not self.block_sizes or min(self.block_sizes) < 1:
            raise ValueError("block sizes must be positive")
        k = len(self.block_sizes)
        clean = {}
        for a, c in self.coeffs.items():
            a = _vec(a)
            if len(a) != k or min(a) < 0:
                raise ValueError(f"determinantal exponent {a} inconsistent with {k} blocks")
            if complex(c) != 0:
                clean[a] = complex(c)
        self.coeffs = clean

    @property
    def order(self) -> int:
        return sum(self.block_sizes)

    def blocks(self) -> list[list[int]]:
        out, start = [], 0
        for d in self.block_sizes:
            out.append(list(range(start, start + d)))
            start += d
        return out

    def polynomial(self) -> Polynomial:
        n = self.order
        dets = [block_determinant(n, b) for b in self.blocks()]
        f = Polynomial.zero(SymVarSpace(n).nvars)
        for a, c in self.coeffs.items():
            term = Polynomial.constant(f.nvars, c)
            for d, ai in zip(dets, a):
                if ai:
                    term = term * d ** ai
            f = f + term
        return f


@dataclass
class DetSupportReport:
    gamma: tuple
    residual_support: list
    standard_form: bool
    jump: JumpResult
    block_size_ok: bool
    oversized_blocks: list
    interval_ok: bool
    interval_failures: list

    @property
    def verdict(self) -> str:
        if not (self.jump.ok and self.block_size_ok and self.interval_ok):
            return NOT_PSD
        return CONSISTENT

    def to_dict(self) -> dict:
        return {"gamma": list(self.gamma), "residual_support": [list(b) for b in self.residual_support],
                "standard_form": self.standard_form, **self.jump.to_dict(),
                "block_size_ok": self.block_size_ok, "oversized_blocks": [b + 1 for b in self.oversized_blocks],
                "interval_property": self.interval_ok,
                "interval_failures": [{"block": i + 1, "beta": list(b)} for i, b in self.interval_failures],
                "verdict": self.verdict}


def det_support_analysis(spec: DetBlockSpec) -> DetSupportReport:
    """Standard form, jump-system, block-size and interval checks on ``supp_det``."""
    supp = sorted(spec.coeffs)
    if not supp:
        raise ValueError("empty polynomial of determinants")
    k = len(spec.block_sizes)
    gamma = tuple(min(a[i] for a in supp) for i in range(k))
    B = sorted(tuple(x - g for x, g in zip(a, gamma)) for a in supp)
    Bset = set(B)
    jump = is_jump_system(B)
    appearing = [i for i in range(k) if any(b[i] > 0 for b in B)]
    oversized = [i for i in appearing if spec.block_sizes[i] > 2]
    failures = []
    for i in appearing:
        if spec.block_sizes[i] != 2:
            continue
        C = max(b[i] for b in B)
        for b in B:
            for c in range(-b[i], C - b[i] + 1):
                moved = list(b)
                moved[i] += c
                if tuple(moved) not in Bset:
                    failures.append((i, b))
                    break
    return DetSupportReport(gamma, B, not any(gamma), jump, not oversized, oversized,
                            not failures, failures)


# -- step search -------------------------------------------------------------------------

STEP_KINDS = ("linear", "double", "transposition")


def step_deltas(space: SymVarSpace, kinds: Sequence[str] = STEP_KINDS) -> list[tuple[str, tuple]]:
    """All nonzero step vectors in search order, each labelled by the first matching kind."""
    N = space.nvars
    seen: dict[tuple, str] = {}
    order: list[tuple] = []

    def add(kind, delta):
        delta = tuple(delta)
        if any(delta) and delta not in seen:
            seen[delta] = kind
            order.append(delta)

    for kind in STEP_KINDS:
        if kind == "linear":
            gen = ([s if m == k else 0 for m in range(N)] for k in range(N) for s in (1, -1))
        elif kind == "double":
            def gen_double():
                for a in range(N):
                    for b in range(a, N):
                        for sa in (1, -1):
                            for sb in (1, -1):
                                d = [0] * N
                                d[a] += sa
                                d[b] += sb
                                yield d
            gen = gen_double()
        else:
            def gen_trans():
                n = space.n
                for i, j, k, l in itertools.product(range(n), repeat=4):
                    d = [0] * N
                    d[space.index(i, j)] += 1
                    d[space.index(k, l)] += 1
                    d[space.index(i, k)] -= 1
                    d[space.index(j, l)] -= 1
                    yield d
            gen = gen_trans()
        for d in gen:
            add(kind, d)
    return [(seen[d], d) for d in order if seen[d] in kinds]


@dataclass
class Step:
    kind: str
    delta: tuple
    landing: tuple
    distance: int
    matrix_distance: float

    def to_dict(self) -> dict:
        return {"kind": self.kind, "delta": list(self.delta), "landing": list(self.landing),
                "distance": self.distance, "matrix_distance": self.matrix_distance}


@dataclass
class StepSequence:
    start: tuple
    target: tuple
    steps: list = field(default_factory=list)
    start_distance: int = 0

    @property
    def kinds(self) -> list[str]:
        return [s.kind for s in self.steps]

    def vertices(self) -> list[tuple]:
        return [self.start] + [s.landing for s in self.steps]

    def to_dict(self, space: Optional[SymVarSpace] = None) -> dict:
        out = {"start": list(self.start), "target": list(self.target), "start_distance": self.start_distance,
               "steps": [s.to_dict() for s in self.steps]}
        if space is not None:
            from .textio import format_monomial
            names = [space.name(k) for k in range(space.nvars)]
            out["path"] = [format_monomial(v, names) or "1" for v in self.vertices()]
        return out


@dataclass
class ConjectureResult:
    found: bool
    path: Optional[StepSequence]
    explored: int
    targets_tried: int

    def to_dict(self, space=None) -> dict:
        return {"found": self.found, "explored": self.explored, "targets_tried": self.targets_tried,
                "path": None if self.path is None else self.path.to_dict(space)}


def matrix_distance(a, b, space: SymVarSpace) -> float:
    diff = [x - y for x, y in zip(a, b)]
    return float(matrix_abs(exponent_matrix(diff, space.n)))


def conjecture_search(f: Polynomial, beta, kinds: Sequence[str] = STEP_KINDS,
                      targets: Optional[Iterable] = None) -> ConjectureResult:
    """Breadth-first search from ``beta`` to a diagonal monomial of ``f``.

    Every step must land in ``supp(f)`` and strictly decrease the flat L1
    distance to the target.  Targets are tried by increasing distance from
    ``beta`` (ties: lexicographically largest first); the first target that
    admits a path wins, and the path is shortest for that target.
    """
    space = space_of(f)
    beta = _vec(beta)
    supp = f.support()
    if beta not in supp:
        raise ValueError("start exponent is not in the support")
    if targets is None:
        targets = [e for e in supp if _is_diag_exp(space, e)]
    targets = sorted({_vec(t) for t in targets}, key=lambda t: (l1(beta, t), tuple(-x for x in t)))
    deltas = step_deltas(space, kinds)
    explored = 0
    for n_tried, alpha in enumerate(targets, 1):
        parent: dict[tuple, Optional[tuple]] = {beta: None}
        queue = deque([beta])
        while queue:
            cur = queue.popleft()
            explored += 1
            if cur == alpha:
                return ConjectureResult(True, _rebuild(parent, beta, alpha, space), explored, n_tried)
            dcur = l1(cur, alpha)
            for kind, d in deltas:
                nxt = _add(cur, d)
                if nxt in parent or nxt not in supp:
                    continue
                if l1(nxt, alpha) >= dcur:
                    continue
                parent[nxt] = (cur, kind, d)
                queue.append(nxt)
    return ConjectureResult(False, None, explored, len(targets))


def _rebuild(parent, beta, alpha, space) -> StepSequence:
    chain = []
    cur = alpha
    while parent[cur] is not None:
        prev, kind, d = parent[cur]
        chain.append(Step(kind, d, cur, l1(cur, alpha), matrix_distance(cur, alpha, space)))
        cur = prev
    chain.reverse()
    return StepSequence(beta, alpha, chain, l1(beta, alpha))


def validate_path(f: Polynomial, seq: StepSequence) -> bool:
    """Re-check membership, strict decrease and endpoint of a step sequence."""
    supp = f.support()
    cur, dist = seq.start, l1(seq.start, seq.target)
    if cur not in supp:
        return False
    for s in seq.steps:
        nxt = _add(cur, s.delta)
        if nxt != s.landing or nxt not in supp or l1(nxt, seq.target) >= dist:
            return False
        cur, dist = nxt, l1(nxt, seq.target)
    return cur == seq.target


# -- lpm polynomials ---------------------------------------------------------------------

def lpm_build(n: int, coeffs: dict) -> Polynomial:
    """``sum_J c_J det(Z_J)`` with ``det(Z_empty) = 1``; keys are 0-based index sets."""
    _check_cap(n)
    nv = SymVarSpace(n).nvars
    f = Polynomial.zero(nv)
    for J, c in coeffs.items():
        J = sorted(set(int(j) for j in J))
        if J and (J[0] < 0 or J[-1] >= n):
            raise ValueError(f"index set {J} outside order {n}")
        if not J:
            f = f + Polynomial.constant(nv, c)
        else:
            f = f + block_determinant(n, J).scale(c)
    return f


def determinant_exponents(n: int) -> list[tuple]:
    return sorted(symbolic_determinant(n).support())


def random_support(rng, dim: int, size: int, high: int = 3) -> set:
    return {tuple(int(x) for x in rng.integers(0, high + 1, dim)) for _ in range(size)}


def vector_support_report(f: Polynomial) -> dict:
    out = {"support_size": len(f), **is_jump_system(f.support()).to_dict()}
    if len(f) == 2:
        (a, ca), (b, cb) = sorted(f.items())
        out["binomial"] = classify_stable_binomial(a, b, ca, cb).to_dict()
    return out


def sym_support_report(f: Polynomial) -> dict:
    from .symmat import diag_restriction
    out = {"support_size": len(f), "structure": structure_check(f).to_dict(),
           "non_mixed": non_mixed_analysis(f).to_dict()}
    fd = diag_restriction(f)
    out["diagonal_support"] = is_jump_system(fd.support()).to_dict() if not fd.is_zero() else None
    if len(f) == 2:
        out["psd_binomial"] = classify_psd_binomial(f).to_dict()
    return out
