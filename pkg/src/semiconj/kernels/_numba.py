"""numba-compiled inner loops (same signatures as :mod:`._numpy`)."""

import numpy as np
from numba import njit

SEGMENT = 0
ARC = 1


@njit(cache=True)
def horner2(c, z):
    """Value and derivative of sum c[k] z^k."""
    p = 0j
    dp = 0j
    for k in range(c.size - 1, -1, -1):
        dp = dp * z + p
        p = p * z + c[k]
    return p, dp


@njit(cache=True)
def polyval(c, zs):
    out = np.empty(zs.size, dtype=np.complex128)
    for j in range(zs.size):
        p = 0j
        for k in range(c.size - 1, -1, -1):
            p = p * zs[j] + c[k]
        out[j] = p
    return out


@njit(cache=True)
def aberth(c, z0, maxiter, tol):
    """Aberth-Ehrlich iteration (Gauss-Seidel sweep) for a squarefree polynomial.

    Returns (roots, iterations); iterations is -1 when not converged.
    """
    z = z0.copy()
    n = z.size
    for it in range(maxiter):
        worst = 0.0
        for k in range(n):
            p, dp = horner2(c, z[k])
            if p == 0:
                continue
            s = 0j
            for j in range(n):
                if j != k:
                    s += 1.0 / (z[k] - z[j])
            ratio = p / dp if dp != 0 else p
            w = ratio / (1.0 - ratio * s)
            z[k] -= w
            rel = abs(w) / max(1.0, abs(z[k]))
            if rel > worst:
                worst = rel
        if worst < tol:
            return z, it + 1
    return z, -1


@njit(cache=True)
def _path_point(kind, prm, s):
    if kind == SEGMENT:
        return prm[0] + s * (prm[1] - prm[0])
    th = prm[2].real + s * (prm[3].real - prm[2].real)
    return prm[0] + prm[1].real * np.exp(1j * th)


@njit(cache=True)
def _min_sep(z):
    n = z.size
    m = np.inf
    for i in range(n):
        for j in range(i + 1, n):
            d = abs(z[i] - z[j])
            if d < m:
                m = d
    return m


@njit(cache=True)
def track_piece(nc, dc, kind, prm, zs, h0, hmin):
    """Continue the roots of nc(z) - t dc(z) along one path piece t(s), s in [0, 1].

    Euler predictor on dz/dt = dc/(nc' - t dc'), Newton corrector; a step is
    accepted only if every point moves by at most 1/4 of the current minimal
    fiber separation and the corrector lands close to the prediction.
    Returns (z_end, status, steps): status 0 on success, 1 when the step size
    fell below ``hmin``.
    """
    z = zs.copy()
    n = z.size
    s = 0.0
    h = h0
    steps = 0
    znew = np.empty(n, dtype=np.complex128)
    while s < 1.0:
        if h > 1.0 - s:
            h = 1.0 - s
        t0 = _path_point(kind, prm, s)
        t1 = _path_point(kind, prm, s + h)
        sep = _min_sep(z) if n > 1 else 1.0
        ok = True
        for k in range(n):
            pn, dpn = horner2(nc, z[k])
            pd, dpd = horner2(dc, z[k])
            jac = dpn - t0 * dpd
            if jac == 0:
                ok = False
                break
            zp = z[k] + pd / jac * (t1 - t0)
            zc = zp
            conv = False
            for it in range(8):
                pn, dpn = horner2(nc, zc)
                pd, dpd = horner2(dc, zc)
                jac = dpn - t1 * dpd
                if jac == 0:
                    break
                delta = (pn - t1 * pd) / jac
                zc -= delta
                if abs(delta) <= 1e-13 * (1.0 + abs(zc)):
                    conv = True
                    break
            if not conv:
                ok = False
                break
            if abs(zc - z[k]) > 0.25 * sep or abs(zc - zp) > 0.125 * sep:
                ok = False
                break
            znew[k] = zc
        if ok:
            for k in range(n):
                z[k] = znew[k]
            s += h
            steps += 1
            h = min(h * 1.5, 0.125)
        else:
            h *= 0.5
            if h < hmin:
                return z, 1, steps
    return z, 0, steps


@njit(cache=True)
def poincare_coeffs(a, lam, order):
    """Coefficients c[1..order] of the linearizer with c[1] = 1.

    ``a[k]`` are Taylor coefficients of the map at its fixed point (a[1] = lam).
    Matching z^n in P(lam z) = f(P(z)) gives
    c[n] (lam^n - lam) = sum_{k>=2} a[k] [z^n] h^k,  h = P - P(0).
    Returns (c, denominators) where denominators[n] = lam^n - lam.
    """
    N = order
    c = np.zeros(N + 1, dtype=np.complex128)
    den = np.zeros(N + 1, dtype=np.complex128)
    pw = np.zeros((N + 1, N + 1), dtype=np.complex128)  # pw[k, m] = [z^m] h^k
    c[1] = 1.0
    pw[1, 1] = 1.0
    lam_n = lam
    for n in range(2, N + 1):
        lam_n = lam_n * lam
        for k in range(2, n + 1):
            acc = 0j
            for j in range(1, n - k + 2):
                acc += c[j] * pw[k - 1, n - j]
            pw[k, n] = acc
        rhs = 0j
        for k in range(2, min(n, a.size - 1) + 1):
            rhs += a[k] * pw[k, n]
        den[n] = lam_n - lam
        c[n] = rhs / den[n]
        pw[1, n] = c[n]
    return c, den


@njit(cache=True)
def series_eval(c, z0, zs):
    out = np.empty(zs.size, dtype=np.complex128)
    for j in range(zs.size):
        acc = 0j
        for k in range(c.size - 1, 0, -1):
            acc = (acc + c[k]) * zs[j]
        out[j] = z0 + acc
    return out
