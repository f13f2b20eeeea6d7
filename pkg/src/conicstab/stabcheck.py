"""Randomised falsification of stability, K-stability and psd-stability.

A polynomial is K-stable iff every restriction ``t -> f(x + t*y)`` with
``y`` in the relative interior of K is stable or identically zero.  The
checkers here sample such lines, look for roots in the open upper half-plane
and re-verify every candidate point before reporting it.  A clean verdict is
evidence only: "no counterexample found in N trials".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import linprog

from .polycore import Polynomial, evaluate, univariate_restriction
from .roots import RootFindingError, univariate_roots
from .symmat import SymVarSpace, space_of

IM_TOL = 1e-7
INTERIOR_MARGIN = 1e-7
RESIDUAL_REL = 1e-8
# relative coefficient uncertainty a line witness must be robust to
COEFF_REL = 1e-10
SAMPLE_LOW, SAMPLE_HIGH = 0.1, 2.0
PSD_SHIFT = 0.1
PREPASS_STREAM = 2**32 - 1


@dataclass(frozen=True)
class ConeSpec:
    """A closed convex cone: ``orthant``, ``polyhedral``, ``psd`` or a ``product``.

    ``dim`` is the number of flat coordinates the cone lives in.
    """

    kind: str
    dim: int
    generators: Optional[tuple] = None
    order: Optional[int] = None
    parts: tuple = ()

    @classmethod
    def orthant(cls, n: int) -> "ConeSpec":
        return cls("orthant", n)

    @classmethod
    def polyhedral(cls, generators) -> "ConeSpec":
        G = np.atleast_2d(np.asarray(generators, dtype=float))
        if np.any(np.all(G == 0, axis=1)):
            raise ValueError("cone generators must be nonzero")
        return cls("polyhedral", G.shape[1], generators=tuple(map(tuple, G)))

    @classmethod
    def psd(cls, n: int) -> "ConeSpec":
        return cls("psd", n * (n + 1) // 2, order=n)

    @classmethod
    def product(cls, *parts: "ConeSpec") -> "ConeSpec":
        return cls("product", sum(p.dim for p in parts), parts=tuple(parts))

    def lift(self) -> "ConeSpec":
        """``K x R_{>=0}``, the cone for ``g + y*f`` in Lieb-Sokal arguments."""
        if self.kind == "polyhedral":
            G = np.asarray(self.generators)
            G = np.vstack([np.hstack([G, np.zeros((G.shape[0], 1))]), np.eye(1, G.shape[1] + 1, G.shape[1])])
            return ConeSpec.polyhedral(G)
        if self.kind == "orthant":
            return ConeSpec.orthant(self.dim + 1)
        return ConeSpec.product(self, ConeSpec.orthant(1))

    def contains(self, v, tol: float = 1e-12) -> bool:
        """Membership of a flat vector in the (closed) cone."""
        v = np.asarray(v, dtype=float).ravel()
        if v.shape[0] != self.dim:
            raise ValueError("vector does not match the cone dimension")
        if self.kind == "orthant":
            return bool(np.all(v >= -tol))
        if self.kind == "psd":
            M = SymVarSpace(self.order).unflatten(v)
            return bool(np.linalg.eigvalsh(M).min() >= -tol * max(1.0, np.abs(M).max()))
        if self.kind == "polyhedral":
            G = np.asarray(self.generators).T
            res = linprog(np.zeros(G.shape[1]), A_eq=G, b_eq=v, bounds=[(0, None)] * G.shape[1],
                          method="highs")
            return res.status == 0
        off = 0
        for part in self.parts:
            if not part.contains(v[off:off + part.dim], tol):
                return False
            off += part.dim
        return True

    def describe(self) -> str:
        if self.kind == "orthant":
            return f"orthant({self.dim})"
        if self.kind == "psd":
            return f"psd({self.order})"
        if self.kind == "polyhedral":
            return "poly:[" + ";".join(",".join(f"{x:g}" for x in g) for g in self.generators) + "]"
        return " x ".join(p.describe() for p in self.parts)


def interior_certificate(K: ConeSpec, v) -> float:
    """How deep ``v`` sits in the relative interior of K (positive means inside).

    orthant: smallest entry; psd: smallest eigenvalue; polyhedral: the largest
    ``s`` such that ``v`` is a combination of the generators with all weights
    at least ``s``; product: the minimum over the factors.
    """
    v = np.asarray(v, dtype=float).ravel()
    if K.kind == "orthant":
        return float(v.min())
    if K.kind == "psd":
        return float(np.linalg.eigvalsh(SymVarSpace(K.order).unflatten(v)).min())
    if K.kind == "polyhedral":
        G = np.asarray(K.generators).T
        m = G.shape[1]
        # maximise s subject to G w = v, w_k >= s, s <= 1e6
        c = np.zeros(m + 1)
        c[-1] = -1.0
        A_eq = np.hstack([G, np.zeros((G.shape[0], 1))])
        A_ub = np.hstack([-np.eye(m), np.ones((m, 1))])
        res = linprog(c, A_ub=A_ub, b_ub=np.zeros(m), A_eq=A_eq, b_eq=v,
                      bounds=[(None, None)] * m + [(None, 1e6)], method="highs")
        return float(res.x[-1]) if res.status == 0 else -np.inf
    certs, off = [], 0
    for part in K.parts:
        certs.append(interior_certificate(part, v[off:off + part.dim]))
        off += part.dim
    return float(min(certs))


def sample_interior(K: ConeSpec, rng) -> tuple[np.ndarray, float]:
    """A point in relint K and its interior certificate.

    psd cones return the matrix ``G G^T + 0.1 I``; other cones return a flat
    vector.  Polyhedral samples use weights drawn from ``[0.1, 2]``.
    """
    if K.kind == "orthant":
        v = rng.uniform(SAMPLE_LOW, SAMPLE_HIGH, K.dim)
        return v, float(v.min())
    if K.kind == "polyhedral":
        G = np.asarray(K.generators)
        w = rng.uniform(SAMPLE_LOW, SAMPLE_HIGH, G.shape[0])
        return w @ G, float(w.min())
    if K.kind == "psd":
        A = rng.standard_normal((K.order, K.order))
        M = A @ A.T + PSD_SHIFT * np.eye(K.order)
        return M, float(np.linalg.eigvalsh(M).min())
    flat, certs = [], []
    for part in K.parts:
        pt, cert = sample_interior(part, rng)
        flat.append(_flat(part, pt))
        certs.append(cert)
    return np.concatenate(flat), float(min(certs))


def _flat(K: ConeSpec, pt) -> np.ndarray:
    if K.kind == "psd":
        return SymVarSpace(K.order).flatten(pt)
    return np.asarray(pt, dtype=float).ravel()


def _sample_real_point(K: ConeSpec, rng) -> np.ndarray:
    if K.kind == "psd":
        A = rng.standard_normal((K.order, K.order))
        return SymVarSpace(K.order).flatten((A + A.T) / 2)
    if K.kind == "product":
        return np.concatenate([_sample_real_point(p, rng) for p in K.parts])
    return rng.standard_normal(K.dim)


@dataclass
class UnivariateVerdict:
    status: str  # "stable" | "unstable" | "identically_zero"
    roots: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    witness: Optional[complex] = None


def univariate_is_stable(coeffs, im_tol: float = IM_TOL) -> UnivariateVerdict:
    """Stability of a univariate polynomial given by increasing-degree coefficients.

    Constants are stable; the zero polynomial is reported separately.
    """
    if isinstance(coeffs, Polynomial):
        c = _univariate_coeffs(coeffs)
    else:
        c = np.asarray(coeffs, dtype=complex).ravel()
    if c.size == 0 or np.all(c == 0):
        return UnivariateVerdict("identically_zero")
    nz = np.nonzero(c)[0]
    if nz[-1] == 0:
        return UnivariateVerdict("stable")
    roots = univariate_roots(c)
    upper = roots[roots.imag > im_tol]
    if upper.size:
        return UnivariateVerdict("unstable", roots, complex(upper[np.argmax(upper.imag)]))
    return UnivariateVerdict("stable", roots)


def _univariate_coeffs(p: Polynomial) -> np.ndarray:
    if p.nvars != 1:
        raise ValueError("expected a univariate polynomial")
    deg = max(p.total_degree(), 0)
    c = np.zeros(deg + 1, dtype=complex)
    for (e,), v in p.items():
        c[e] = v
    return c


@dataclass
class StabilityVerdict:
    outcome: str  # "counterexample" | "clean"
    trials: int
    seed: int
    cone: str
    witness: Optional[np.ndarray] = None
    residual: Optional[float] = None
    certificate: Optional[float] = None
    trial_index: Optional[int] = None
    found_by: Optional[str] = None
    skipped: int = 0
    inclusion_radius: Optional[float] = None

    @property
    def clean(self) -> bool:
        return self.outcome == "clean"

    @property
    def message(self) -> str:
        if self.clean:
            return f"no counterexample found in {self.trials} trials (seed {self.seed})"
        return (f"counterexample found ({self.found_by}, trial {self.trial_index}): "
                f"|f| = {self.residual:.3g}, interior certificate {self.certificate:.3g}")

    def to_dict(self) -> dict:
        from .textio import complex_to_json

        out = {"outcome": self.outcome, "trials": self.trials, "seed": self.seed, "cone": self.cone,
               "message": self.message, "skipped_trials": self.skipped}
        if not self.clean:
            w = np.asarray(self.witness)
            out["witness"] = [complex_to_json(x) for x in w.ravel()]
            out["witness_shape"] = list(w.shape)
            out.update(residual=self.residual, certificate=self.certificate,
                       trial_index=self.trial_index, found_by=self.found_by,
                       inclusion_radius=self.inclusion_radius)
        return out


def residual_tolerance(f: Polynomial, tol_root: float = RESIDUAL_REL) -> float:
    return tol_root * (1.0 + f.norm1())


def verify_witness(f: Polynomial, K: ConeSpec, z, tol_root: float = RESIDUAL_REL,
                   tol_interior: float = INTERIOR_MARGIN) -> tuple[bool, float, float]:
    """Independent re-check of a candidate root: small ``|f(z)|`` and ``Im z`` inside K."""
    z = np.asarray(z, dtype=complex)
    flat = _flat(K, z) if K.kind == "psd" else z.ravel()
    residual = abs(evaluate(f, flat))
    cert = interior_certificate(K, flat.imag)
    ok = residual < residual_tolerance(f, tol_root) and cert > tol_interior
    return ok, float(residual), float(cert)


def _trial_rng(seed: int, k: int):
    return np.random.default_rng([seed, k])


def _present(K: ConeSpec, flat: np.ndarray):
    return SymVarSpace(K.order).unflatten(flat) if K.kind == "psd" else flat


def _sample_direction(K: ConeSpec, rng) -> np.ndarray:
    """A real direction with no cone constraint (symmetric for psd)."""
    return _sample_real_point(K, rng)


def check_cone_stability(f: Polynomial, K: ConeSpec, trials: int = 200, seed: int = 0,
                         tol_root: float = RESIDUAL_REL, tol_interior: float = INTERIOR_MARGIN,
                         im_tol: float = IM_TOL) -> StabilityVerdict:
    """Search for a root of ``f`` whose imaginary part lies in relint K.

    Each trial uses its own generator, seeded by ``(seed, trial)``, and runs
    two line searches:

    * real line: ``t -> f(x + t*y)`` with real ``x`` and ``y`` in relint K;
      roots ``t0`` with ``Im t0 > im_tol`` give candidates ``x + t0*y``;
    * complex line: ``t -> f(x + i*y + t*d)`` with an unconstrained real
      direction ``d``; every root gives a candidate, kept only if its
      imaginary part ``y + Im(t0)*d`` is inside K.

    The second pass catches roots that only lie on real lines along which
    ``f`` vanishes identically (``z1 - z2`` at ``(i, i)``).  Candidates are
    re-verified and the first verified point wins.
    """
    if f.is_zero():
        raise ValueError("stability check of the zero polynomial")
    if f.nvars != K.dim:
        raise ValueError(f"polynomial has {f.nvars} variables but the cone lives in R^{K.dim}")
    skipped = 0
    for k in range(trials):
        rng = _trial_rng(seed, k)
        x = _sample_real_point(K, rng)
        ypt, _ = sample_interior(K, rng)
        y = _flat(K, ypt)
        d = _sample_direction(K, rng)
        lines = (("line search", x, y, True), ("complex line search", x + 1j * y, d, False))
        for label, base, direction, real_line in lines:
            coeffs = univariate_restriction(f, base, direction)
            if coeffs.size == 0:
                # f vanishes on the whole line; a real line then passes through a root at x + i*y
                cands = [(None, x + 1j * y)] if real_line else []
            elif coeffs.size == 1:
                continue
            else:
                try:
                    roots = univariate_roots(coeffs)
                except RootFindingError:
                    skipped += 1
                    continue
                if real_line:
                    roots = roots[roots.imag > im_tol]
                    roots = sorted(roots, key=lambda r: -r.imag)
                cands = [(t0, base + t0 * direction) for t0 in roots]
            for t0, z in cands:
                ok, res, cert = verify_witness(f, K, _present(K, z), tol_root, tol_interior)
                if not ok:
                    continue
                rho = 0.0 if t0 is None else inclusion_radius(coeffs, t0)
                if rho > 0 and not _disc_inside(K, z.imag, direction.real, rho, tol_interior):
                    continue
                return StabilityVerdict("counterexample", trials, seed, K.describe(), _present(K, z),
                                        res, cert, k, label, skipped, rho)
    return StabilityVerdict("clean", trials, seed, K.describe(), skipped=skipped)


def inclusion_radius(coeffs, t0: complex, coeff_rel: float = COEFF_REL) -> float:
    """Radius of a disc around ``t0`` that contains a root of every nearby polynomial.

    Uses ``min(d |p/p'|, (|p|/|a_d|)^(1/d))``, both classical bounds, with
    ``|p(t0)|`` inflated by the evaluation rounding error plus a normwise
    coefficient perturbation of size ``coeff_rel * ||a||_1``.  A real double
    root split apart by rounding gives a disc that reaches back to the real axis.
    """
    c = np.asarray(coeffs, dtype=complex)
    d = c.size - 1
    desc = c[::-1]
    p = np.polyval(desc, t0)
    dp = np.polyval(np.polyder(desc), t0) if d > 1 else desc[0]
    err = 8 * np.finfo(float).eps * d * np.polyval(np.abs(desc), abs(t0)).real
    err += coeff_rel * np.abs(c).sum() * max(1.0, abs(t0)) ** d
    pb = abs(p) + err
    r1 = d * pb / abs(dp) if dp != 0 else np.inf
    r2 = (pb / abs(c[-1])) ** (1.0 / d)
    return float(min(r1, r2))


def _disc_inside(K: ConeSpec, im: np.ndarray, direction: np.ndarray, rho: float, margin: float) -> bool:
    # certificates are concave, so checking both ends of the segment Im z +- rho*d suffices
    return all(interior_certificate(K, im + s * rho * direction) > margin for s in (-1.0, 1.0))


def check_psd_stability(f: Polynomial, trials: int = 200, seed: int = 0,
                        tol_root: float = RESIDUAL_REL, tol_interior: float = INTERIOR_MARGIN,
                        im_tol: float = IM_TOL) -> StabilityVerdict:
    """psd-stability falsifier with a deterministic pre-pass at ``i*I`` and ``i*P``."""
    space = space_of(f)
    K = ConeSpec.psd(space.n)
    if f.is_zero():
        raise ValueError("stability check of the zero polynomial")
    probes = [("pre-pass i*I", 1j * np.eye(space.n))]
    P, _ = sample_interior(K, _trial_rng(seed, PREPASS_STREAM))
    probes.append(("pre-pass i*P", 1j * P))
    for label, Z in probes:
        ok, res, cert = verify_witness(f, K, Z, tol_root, tol_interior)
        if ok:
            return StabilityVerdict("counterexample", trials, seed, K.describe(), Z, res, cert, -1, label)
    return check_cone_stability(f, K, trials, seed, tol_root, tol_interior, im_tol)


def check_stability(f: Polynomial, K: ConeSpec | None = None, **kw) -> StabilityVerdict:
    """Dispatch: psd cones get the pre-pass, everything else the line search."""
    K = ConeSpec.orthant(f.nvars) if K is None else K
    if K.kind == "psd":
        return check_psd_stability(f, **kw)
    return check_cone_stability(f, K, **kw)


def homogeneous_identity_value(f: Polynomial) -> complex:
    """``f(i*I)``; nonzero for homogeneous psd-stable ``f``."""
    space = space_of(f)
    return evaluate(f, space.flatten(1j * np.eye(space.n)))


def as_cone(spec: str, f: Polynomial, sym: bool) -> ConeSpec:
    """Cone from its text form: ``orthant``, ``psd`` or ``poly:[v1;v2;...]``."""
    spec = spec.strip()
    if spec == "orthant":
        return ConeSpec.orthant(f.nvars)
    if spec == "psd":
        if not sym:
            raise ValueError("the psd cone needs a symmetric variable space")
        return ConeSpec.psd(space_of(f).n)
    if spec.startswith("poly:"):
        body = spec[5:].strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError("polyhedral cone must look like poly:[v1;v2;...]")
        gens = [[float(x) for x in g.split(",")] for g in body[1:-1].split(";") if g.strip()]
        K = ConeSpec.polyhedral(gens)
        if K.dim != f.nvars:
            raise ValueError("generator length does not match the variable count")
        return K
    raise ValueError(f"unknown cone {spec!r}")

