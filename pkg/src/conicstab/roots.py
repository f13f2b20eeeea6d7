"""Univariate roots by Aberth-Ehrlich simultaneous iteration."""
from __future__ import annotations

import numpy as np

MAX_ITER = 200
STEP_TOL = 1e-13
RESIDUAL_TOL = 1e-9
LEAD_TOL = 1e-12
CLUSTER_RADIUS = 1e-2


class RootFindingError(RuntimeError):
    """Raised when the iteration fails to reach the residual tolerance."""


def _horner(coeffs_desc: np.ndarray, z: np.ndarray) -> np.ndarray:
    out = np.full(z.shape, coeffs_desc[0], dtype=complex)
    for c in coeffs_desc[1:]:
        out = out * z + c
    return out


def _abs_horner(coeffs_desc: np.ndarray, z: np.ndarray) -> np.ndarray:
    return _horner(np.abs(coeffs_desc), np.abs(z)).real


def deflate(coeffs) -> np.ndarray:
    """Drop leading coefficients that are negligible relative to the largest."""
    c = np.asarray(coeffs, dtype=complex).ravel()
    if c.size == 0:
        return c
    scale = np.abs(c).max()
    if scale == 0:
        return c[:0]
    nz = np.nonzero(np.abs(c) > LEAD_TOL * scale)[0]
    return c[: nz[-1] + 1]


def aberth(coeffs, max_iter: int = MAX_ITER, tol: float = STEP_TOL) -> tuple[np.ndarray, int]:
    """Raw Aberth-Ehrlich iteration.

    ``coeffs`` are in increasing degree with a nonzero leading coefficient.
    Returns the root estimates and the number of iterations used.
    """
    c = np.asarray(coeffs, dtype=complex)
    d = c.size - 1
    p = c[::-1] / c[-1]
    dp = p[:-1] * np.arange(d, 0, -1)
    # Cauchy bound on the root moduli
    radius = 1.0 + np.abs(p[1:]).max()
    # shrink towards the geometric mean to keep the start near the roots
    gmean = abs(p[-1]) ** (1.0 / d) if p[-1] != 0 else 0.0
    r0 = min(radius, max(gmean, 1e-3) * 1.5) if gmean > 0 else 0.5 * radius
    angles = 2 * np.pi * np.arange(d) / d + 0.4
    z = r0 * np.exp(1j * angles) * (1 + 0.01 * np.cos(3.1 * np.arange(d)))
    z = z - p[1] / d
    it = 0
    eps = np.finfo(float).eps
    pabs = np.abs(p)
    live = np.ones(d, dtype=bool)
    for it in range(1, max_iter + 1):
        zl = z[live]
        pv = _horner(p, zl)
        # a root whose residual is at rounding level cannot be improved further
        noise = 4 * d * eps * _horner(pabs, np.abs(zl)).real
        dpv = _horner(dp, zl) if d > 1 else np.ones_like(zl)
        ratio = pv / np.where(dpv == 0, 1e-300, dpv)
        diff = zl[:, None] - z[None, :]
        diff[np.arange(zl.size), np.nonzero(live)[0]] = np.inf
        s = (1.0 / diff).sum(axis=1)
        denom = 1.0 - ratio * s
        step = np.where(denom != 0, ratio / np.where(denom != 0, denom, 1.0), ratio)
        step[np.abs(pv) <= noise] = 0
        z[live] = zl - step
        done = np.abs(step) <= tol * np.maximum(1.0, np.abs(zl - step))
        idx = np.nonzero(live)[0]
        live[idx[done]] = False
        if not live.any():
            break
    return z, it


def _merge_clusters(desc: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Replace clusters that approximate a multiple root by their centroid.

    A cluster is merged only when the centroid is at least as good a root as
    its members, which holds for a perturbed multiple root but not for two
    genuinely distinct nearby roots.
    """
    d = z.size
    if d < 2:
        return z
    parent = list(range(d))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(d):
        for b in range(a + 1, d):
            if abs(z[a] - z[b]) <= CLUSTER_RADIUS * (1.0 + max(abs(z[a]), abs(z[b]))):
                parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for a in range(d):
        groups.setdefault(find(a), []).append(a)
    out = z.copy()
    for members in groups.values():
        if len(members) < 2:
            continue
        pts = z[members]
        cen = _polish_multiple(desc, pts.mean(), len(members))
        member_res = np.abs(_horner(desc, pts)).max()
        floor = 1e-14 * _abs_horner(desc, np.array([cen]))[0]
        if abs(_horner(desc, np.array([cen]))[0]) <= max(100 * member_res, floor):
            out[members] = cen
    return out


def _polish_multiple(desc: np.ndarray, z0: complex, m: int, iters: int = 30) -> complex:
    """Newton on the (m-1)-th derivative, where an m-fold root is simple."""
    q = desc.copy()
    for _ in range(m - 1):
        q = np.polyder(q)
    if q.size < 2:
        return z0
    dq = np.polyder(q)
    z = complex(z0)
    for _ in range(iters):
        dv = np.polyval(dq, z)
        if dv == 0:
            break
        step = np.polyval(q, z) / dv
        z -= step
        if abs(step) <= 1e-16 * max(1.0, abs(z)):
            break
    return z


def univariate_roots(coeffs, max_iter: int = MAX_ITER) -> np.ndarray:
    """All roots of the polynomial with coefficients ``coeffs`` (increasing degree).

    Multiple roots come back repeated.  Raises :class:`RootFindingError` if a
    root fails ``|p(root)| / ||p|| < 1e-9`` after the iteration budget.
    """
    c = deflate(coeffs)
    if c.size < 2:
        raise ValueError("root finding needs a polynomial of degree >= 1")
    # roots at zero are split off exactly
    nzero = int(np.argmax(np.abs(c) > 0))
    c = c[nzero:]
    roots = [np.zeros(nzero, dtype=complex)]
    if c.size >= 2:
        if c.size == 2:
            z = np.array([-c[0] / c[1]])
        else:
            z, _ = aberth(c, max_iter=max_iter)
        desc = c[::-1] / c[-1]
        z = _merge_clusters(desc, z)
        scale = np.abs(desc).sum()
        res = np.abs(_horner(desc, z)) / (scale * np.maximum(1.0, np.abs(z)) ** (c.size - 1))
        if not np.all(res < RESIDUAL_TOL):
            raise RootFindingError(f"Aberth iteration did not converge (max relative residual {res.max():.3g})")
        roots.append(z)
    return np.concatenate(roots)
