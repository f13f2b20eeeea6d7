"""Stability preservers as transforms, with a one-directional audit.

Every transform is a pure function of a :class:`PreserverSpec` and a
polynomial.  :func:`audit` runs the falsifier before and after and flags the
only decidable contradiction: a clean input whose image has a verified
counterexample while the transform's hypotheses hold.

Indices are 0-based throughout the Python API.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .polycore import (Polynomial, affine_substitute, degree_in_direction, directional_derivative,
                       embed, evaluate, initial_form, partial_derivative)
from .stabcheck import (ConeSpec, StabilityVerdict, _flat, _sample_real_point, _trial_rng,
                        check_stability, sample_interior)
from .symmat import (SymVarSpace, congruence_transform, diag_restriction, frobenius_initial_form,
                     inversion_image, matrix_directional_derivative, minor_restriction,
                     permute_indices, space_of)

VECTOR_KINDS = ("permute", "scale", "identify", "specialize", "invert", "differentiate",
                "dir_derivative", "affine", "initial_form")
PSD_KINDS = ("psd_diag", "psd_minor", "psd_congruence", "psd_permute", "psd_dir_derivative",
             "psd_inversion", "psd_initial_form")
KINDS = VECTOR_KINDS + PSD_KINDS + ("lieb_sokal",)

# which statement licenses each transform, in plain words
GUARANTEES = {
    "permute": "stability is invariant under permuting variables",
    "scale": "c*f(a1 z1, ..., an zn) is stable or zero for a > 0",
    "identify": "setting z_j := z_i keeps stability or gives zero",
    "specialize": "fixing z_i = b with Im(b) >= 0 keeps stability or gives zero",
    "invert": "z_i^deg_i(f) * f(..., -1/z_i, ...) is stable",
    "differentiate": "partial derivatives of stable polynomials are stable or zero",
    "dir_derivative": "a derivative along v in K keeps K-stability or gives zero",
    "affine": "f(a + sum z_j v_j) is stable or zero when Im(a) + pos(v) lies in K",
    "initial_form": "initial forms of stable polynomials are stable",
    "psd_diag": "the diagonal restriction of a psd-stable polynomial is stable",
    "psd_minor": "principal-submatrix restriction keeps psd-stability or gives zero",
    "psd_congruence": "f(S Z S^T) is psd-stable for invertible real S",
    "psd_permute": "simultaneous row/column permutation keeps psd-stability",
    "psd_dir_derivative": "a derivative along a psd direction keeps psd-stability or gives zero",
    "psd_inversion": "det(Z)^deg(f) * f(-Z^-1) is psd-stable",
    "psd_initial_form": "initial forms for positive definite W keep psd-stability",
    "lieb_sokal": "g - d_v f is K-stable or zero when g + y f is K x R>=0-stable and rho_v(f) <= 1",
}


class PreconditionError(ValueError):
    """A transform's parameter invariant does not hold."""

    def __init__(self, msg: str, measured: Any = None):
        super().__init__(msg)
        self.measured = measured


@dataclass
class PreserverSpec:
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown preserver kind {self.kind!r}")

    @property
    def is_psd(self) -> bool:
        return self.kind.startswith("psd_")

    def describe(self) -> str:
        def show(v):
            if isinstance(v, np.ndarray):
                v = v.tolist()
            if isinstance(v, Polynomial):
                from .textio import format_polynomial
                return format_polynomial(v)
            return repr(v)
        args = ", ".join(f"{k}={show(v)}" for k, v in sorted(self.params.items()))
        return f"{self.kind}({args})"


# -- vector preservers ---------------------------------------------------------

def _permute(f: Polynomial, sigma) -> Polynomial:
    sigma = [int(s) for s in sigma]
    if sorted(sigma) != list(range(f.nvars)):
        raise PreconditionError("sigma must be a permutation of the variables")
    # z_i is replaced by z_sigma(i)
    return embed(f, sigma, f.nvars)


def _scale(f: Polynomial, c, a) -> Polynomial:
    a = np.asarray(a, dtype=float).ravel()
    if a.shape[0] != f.nvars:
        raise PreconditionError("scaling vector length mismatch")
    if np.any(a <= 0):
        raise PreconditionError("scale factors must be positive")
    if complex(c) == 0:
        raise PreconditionError("scale constant must be nonzero")
    return f.map_coefficients(lambda e, v: complex(c) * v * float(np.prod(a ** np.asarray(e))))


def _drop(f: Polynomial, j: int, fold_into: Optional[int] = None, value: complex = 0) -> Polynomial:
    """Remove variable ``j``: either merge it into ``fold_into`` or fix it to ``value``."""
    out: dict[tuple, complex] = {}
    for e, c in f.items():
        ne = list(e)
        ej = ne.pop(j)
        if fold_into is not None:
            ne[fold_into - (fold_into > j)] += ej
        else:
            c = c * value ** ej
        out[tuple(ne)] = out.get(tuple(ne), 0j) + c
    return Polynomial(f.nvars - 1, out)


def _identify(f: Polynomial, i: int, j: int) -> Polynomial:
    if i == j or not (0 <= i < f.nvars and 0 <= j < f.nvars):
        raise PreconditionError("identify needs two distinct valid variables")
    if f.nvars < 2:
        raise PreconditionError("identify needs at least two variables")
    return _drop(f, j, fold_into=i)


def _specialize(f: Polynomial, i: int, b) -> Polynomial:
    b = complex(b)
    if not 0 <= i < f.nvars:
        raise PreconditionError("variable index out of range")
    if b.imag < 0:
        raise PreconditionError("specialisation value must satisfy Im(b) >= 0")
    if f.nvars < 2:
        raise PreconditionError("specialize needs at least two variables")
    return _drop(f, i, value=b)


def invert(f: Polynomial, i: int) -> Polynomial:
    """``z_i^deg_i(f) * f(..., -1/z_i, ...)`` by exponent reflection."""
    if not 0 <= i < f.nvars:
        raise PreconditionError("variable index out of range")
    d = f.degree_in(i) if not f.is_zero() else 0
    if d <= 0:
        return f
    out = {}
    for e, c in f.items():
        ne = list(e)
        ne[i] = d - e[i]
        out[tuple(ne)] = c * (-1) ** e[i]
    return Polynomial(f.nvars, out)


# -- Lieb-Sokal -------------------------------------------------------------------

def _direction(f: Polynomial, v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.ndim == 2:
        return space_of(f).flatten(v)
    return v.ravel()


def lieb_sokal_transform(g: Polynomial, f: Polynomial, v) -> Polynomial:
    """``g - d_v f`` after enforcing ``rho_v(f) <= 1``.

    ``v`` is a flat vector, or a symmetric matrix for polynomials over a
    symmetric variable space.  The K' -stability hypothesis on ``g + y f`` is
    not checked here; see :func:`lift_pair` and :func:`audit`.
    """
    if g.nvars != f.nvars:
        raise ValueError("g and f must share a variable space")
    vv = _direction(f, v)
    if f.is_zero():
        return g
    rho = degree_in_direction(f, vv)
    if rho > 1:
        raise PreconditionError(f"degree of f in direction v is {rho}, need <= 1", measured=rho)
    return g - directional_derivative(f, vv)


def lift_pair(g: Polynomial, f: Polynomial) -> Polynomial:
    """``g(z) + y f(z)`` with ``y`` appended as the last variable."""
    n = g.nvars
    pos = list(range(n))
    y = Polynomial.variable(n + 1, n)
    return embed(g, pos, n + 1) + y * embed(f, pos, n + 1)


@dataclass
class RatioReport:
    min_imag: float
    violations: int
    witness: Optional[np.ndarray]
    trials: int
    seed: int
    resampled: int

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        from .textio import complex_to_json
        out = {"min_imag_ratio": self.min_imag, "violations": self.violations, "trials": self.trials,
               "seed": self.seed, "resampled": self.resampled}
        if self.witness is not None:
            out["witness"] = [complex_to_json(x) for x in np.ravel(self.witness)]
        return out


def ratio_condition_check(g: Polynomial, f: Polynomial, K: ConeSpec, trials: int = 200, seed: int = 0,
                          tol: float = 1e-9) -> RatioReport:
    """Sample ``Im(g(z)/f(z))`` over ``Im(z)`` in relint K.

    Points where ``f`` nearly vanishes are redrawn (at most 10 times per
    trial) and counted.  A value below ``-tol`` is a violation.
    """
    if f.is_zero():
        raise ValueError("f must be nonzero")
    floor = 1e-12 * (1.0 + f.norm1())
    best, witness, bad, resampled = np.inf, None, 0, 0
    for k in range(trials):
        rng = _trial_rng(seed, k)
        for _ in range(10):
            x = _sample_real_point(K, rng)
            y = _flat(K, sample_interior(K, rng)[0])
            z = x + 1j * y
            fz = evaluate(f, z)
            if abs(fz) > floor:
                break
            resampled += 1
        else:
            continue
        val = (evaluate(g, z) / fz).imag
        if val < best:
            best = val
        if val < -tol:
            bad += 1
            if witness is None:
                witness = z
    return RatioReport(float(best), bad, witness, trials, seed, resampled)


# -- dispatch -------------------------------------------------------------------------

def _sym_matrix(M, n: int) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.shape != (n, n):
        raise PreconditionError(f"matrix parameter must be {n}x{n}")
    return M


def apply(spec: PreserverSpec, f: Polynomial) -> Polynomial:
    """Exact symbolic image of ``f`` under the preserver ``spec``."""
    p, k = spec.params, spec.kind
    if k == "permute":
        return _permute(f, p["sigma"])
    if k == "scale":
        return _scale(f, p.get("c", 1), p["a"])
    if k == "identify":
        return _identify(f, int(p["i"]), int(p["j"]))
    if k == "specialize":
        return _specialize(f, int(p["i"]), p["b"])
    if k == "invert":
        return invert(f, int(p["i"]))
    if k == "differentiate":
        i = int(p["i"])
        if not 0 <= i < f.nvars:
            raise PreconditionError("variable index out of range")
        return partial_derivative(f, i)
    if k == "dir_derivative":
        return directional_derivative(f, _direction(f, p["v"]))
    if k == "affine":
        return affine_substitute(f, p["a"], p["dirs"])
    if k == "initial_form":
        return initial_form(f, p["w"])
    if k == "lieb_sokal":
        return lieb_sokal_transform(p["g"], f, p["v"])
    space = space_of(f)
    if k == "psd_diag":
        return diag_restriction(f)
    if k == "psd_minor":
        return minor_restriction(f, p["J"])
    if k == "psd_congruence":
        return congruence_transform(f, _sym_matrix(p["S"], space.n), p.get("kind", "SZST"))
    if k == "psd_permute":
        return permute_indices(f, p["pi"])
    if k == "psd_dir_derivative":
        V = _sym_matrix(p["V"], space.n)
        return matrix_directional_derivative(f, V)
    if k == "psd_inversion":
        return inversion_image(f, p.get("blocks"))
    if k == "psd_initial_form":
        return frobenius_initial_form(f, p["W"])
    raise AssertionError(k)


def _min_eig(M) -> float:
    A = np.asarray(np.asarray(M, dtype=object), dtype=float)
    return float(np.linalg.eigvalsh((A + A.T) / 2).min())


def license(spec: PreserverSpec, f: Polynomial, K: ConeSpec) -> tuple[bool, str, ConeSpec]:
    """Whether the transform's guarantee applies on cone K, why, and the output cone."""
    k, p = spec.kind, spec.params
    n = f.nvars
    if spec.is_psd:
        space = space_of(f)
        out = ConeSpec.psd(space.n)
        if k == "psd_diag":
            out = ConeSpec.orthant(space.n)
        elif k == "psd_minor":
            out = ConeSpec.psd(len(set(p["J"])))
        if K.kind != "psd":
            return False, "psd preservers need the psd cone", out
        if k == "psd_congruence" and p.get("kind", "SZST") == "SZSinv":
            S = np.asarray(p["S"], dtype=float)
            if not np.allclose(S @ S.T, np.eye(space.n), atol=1e-12):
                return False, "similarity licensed only for orthogonal S (see notes)", out
        if k == "psd_dir_derivative" and _min_eig(p["V"]) < -1e-12:
            return False, "direction V is not positive semidefinite", out
        if k == "psd_initial_form" and _min_eig(p["W"]) <= 0:
            return False, "W is not positive definite", out
        return True, "hypotheses hold", out
    if k == "dir_derivative":
        v = _direction(f, p["v"])
        return (bool(K.contains(v)), "v in K" if K.contains(v) else "v not in K", K)
    if k == "affine":
        dirs = np.atleast_2d(np.asarray(p["dirs"], dtype=float))
        out = ConeSpec.orthant(dirs.shape[0])
        a = np.asarray(p["a"], dtype=complex).ravel()
        ok = K.contains(a.imag) and all(K.contains(d) for d in dirs)
        return ok, "Im(a) + pos(dirs) in K" if ok else "Im(a) + pos(dirs) not inside K", out
    if k == "lieb_sokal":
        v = _direction(f, p["v"])
        ok = K.contains(v)
        return ok, "v in K; hypothesis on g + y f falsified only" if ok else "v not in K", K
    out_n = n - 1 if k in ("identify", "specialize") else n
    out = ConeSpec.orthant(out_n)
    if K.kind != "orthant":
        return False, "elementary preservers are stated for the orthant", out
    return True, "hypotheses hold", out


@dataclass
class AuditReport:
    spec: PreserverSpec
    guarantee: str
    licensed: bool
    reason: str
    input_verdict: StabilityVerdict
    output: Polynomial
    output_verdict: Optional[StabilityVerdict]
    output_cone: str
    notes: list = field(default_factory=list)

    @property
    def agreement(self) -> bool:
        """False only for a licensed clean-in / counterexample-out event."""
        if not self.licensed or not self.input_verdict.clean or self.output_verdict is None:
            return True
        return self.output_verdict.clean

    @property
    def output_is_zero(self) -> bool:
        return self.output.is_zero()

    def to_dict(self, sym_out: bool = False) -> dict:
        from .textio import format_polynomial
        return {
            "transform": self.spec.describe(),
            "guarantee": self.guarantee,
            "licensed": self.licensed,
            "reason": self.reason,
            "input_verdict": self.input_verdict.to_dict(),
            "output": format_polynomial(self.output, sym_out),
            "output_cone": self.output_cone,
            "output_verdict": None if self.output_verdict is None else self.output_verdict.to_dict(),
            "agreement": self.agreement,
            "notes": list(self.notes),
        }


def default_cone(f: Polynomial, psd: bool) -> ConeSpec:
    return ConeSpec.psd(space_of(f).n) if psd else ConeSpec.orthant(f.nvars)


def audit(spec: PreserverSpec, f: Polynomial, K: Optional[ConeSpec] = None, trials: int = 200,
          seed: int = 0, input_verdict: Optional[StabilityVerdict] = None, **tols) -> AuditReport:
    """Falsify before and after one transform.

    For ``lieb_sokal`` the input verdict is taken on ``g + y f`` over
    ``K x R>=0``, which is the theorem's hypothesis.  ``input_verdict`` may be
    supplied to reuse an earlier run on the same input.
    """
    if K is None:
        K = default_cone(f, spec.is_psd)
    notes = []
    if spec.kind == "lieb_sokal":
        if input_verdict is None:
            input_verdict = check_stability(lift_pair(spec.params["g"], f), K.lift(), trials=trials,
                                            seed=seed, **tols)
        notes.append("the hypothesis on g + y f is only falsified, never proved")
    elif input_verdict is None:
        input_verdict = check_stability(f, K, trials=trials, seed=seed, **tols)
    licensed, reason, out_cone = license(spec, f, K)
    out = apply(spec, f)
    if out.is_zero():
        out_v = None
        notes.append("output is the zero polynomial")
    else:
        if out_cone.kind == "psd" and out.nvars != out_cone.dim:
            raise AssertionError("output does not live on the output cone")
        out_v = check_stability(out, out_cone, trials=trials, seed=seed, **tols)
    return AuditReport(spec, GUARANTEES[spec.kind], bool(licensed), reason, input_verdict, out, out_v,
                       out_cone.describe(), notes)
