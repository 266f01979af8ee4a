"""Vectorized numpy versions of the compiled kernels."""

import numpy as np

SEGMENT = 0
ARC = 1


def horner2(c, z):
    p = np.zeros_like(np.asarray(z, dtype=np.complex128))
    dp = np.zeros_like(p)
    for k in range(c.size - 1, -1, -1):
        dp = dp * z + p
        p = p * z + c[k]
    return p, dp


def polyval(c, zs):
    return np.polynomial.polynomial.polyval(np.asarray(zs, dtype=np.complex128), c)


def aberth(c, z0, maxiter, tol):
    """Aberth-Ehrlich iteration, Jacobi form over all roots at once."""
    z = np.array(z0, dtype=np.complex128)
    n = z.size
    eye = np.eye(n, dtype=bool)
    for it in range(maxiter):
        p, dp = horner2(c, z)
        diff = z[:, None] - z[None, :]
        diff[eye] = 1.0
        inv = 1.0 / diff
        inv[eye] = 0.0
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dp != 0, p / dp, p)
            w = ratio / (1.0 - ratio * s)
        w = np.where(p == 0, 0.0, w)
        z = z - w
        if np.max(np.abs(w) / np.maximum(1.0, np.abs(z))) < tol:
            return z, it + 1
    return z, -1


def _path_point(kind, prm, s):
    if kind == SEGMENT:
        return prm[0] + s * (prm[1] - prm[0])
    th = prm[2].real + s * (prm[3].real - prm[2].real)
    return prm[0] + prm[1].real * np.exp(1j * th)


def _min_sep(z):
    if z.size < 2:
        return 1.0
    d = np.abs(z[:, None] - z[None, :])
    d[np.eye(z.size, dtype=bool)] = np.inf
    return d.min()


def track_piece(nc, dc, kind, prm, zs, h0, hmin):
    z = np.array(zs, dtype=np.complex128)
    s, h, steps = 0.0, h0, 0
    while s < 1.0:
        h = min(h, 1.0 - s)
        t0 = _path_point(kind, prm, s)
        t1 = _path_point(kind, prm, s + h)
        sep = _min_sep(z)
        pn, dpn = horner2(nc, z)
        pd, dpd = horner2(dc, z)
        jac = dpn - t0 * dpd
        ok = bool(np.all(jac != 0))
        if ok:
            zp = z + pd / jac * (t1 - t0)
            zc = zp.copy()
            conv = np.zeros(z.size, dtype=bool)
            for _ in range(8):
                pn, dpn = horner2(nc, zc)
                pd, dpd = horner2(dc, zc)
                jac = dpn - t1 * dpd
                if np.any(jac == 0):
                    break
                delta = np.where(conv, 0.0, (pn - t1 * pd) / jac)
                zc = zc - delta
                conv |= np.abs(delta) <= 1e-13 * (1.0 + np.abs(zc))
                if conv.all():
                    break
            ok = (conv.all() and np.all(np.abs(zc - z) <= 0.25 * sep)
                  and np.all(np.abs(zc - zp) <= 0.125 * sep))
        if ok:
            z = zc
            s += h
            steps += 1
            h = min(h * 1.5, 0.125)
        else:
            h *= 0.5
            if h < hmin:
                return z, 1, steps
    return z, 0, steps


def poincare_coeffs(a, lam, order):
    N = order
    c = np.zeros(N + 1, dtype=np.complex128)
    den = np.zeros(N + 1, dtype=np.complex128)
    pw = np.zeros((N + 1, N + 1), dtype=np.complex128)
    c[1] = 1.0
    pw[1, 1] = 1.0
    lam_n = lam
    kmax = a.size - 1
    for n in range(2, N + 1):
        lam_n = lam_n * lam
        # [z^n] h^k = sum_j c_j [z^(n-j)] h^(k-1), all rows at once
        j = np.arange(1, n)
        rows = pw[1:n, :][:, n - j]          # rows k-1 = 1..n-1, columns n-j
        mask = (n - j)[None, :] >= np.arange(1, n)[:, None]
        pw[2:n + 1, n] = (rows * mask) @ c[1:n]
        top = min(n, kmax)
        rhs = a[2:top + 1] @ pw[2:top + 1, n] if top >= 2 else 0j
        den[n] = lam_n - lam
        c[n] = rhs / den[n]
        pw[1, n] = c[n]
    return c, den


def series_eval(c, z0, zs):
    zs = np.asarray(zs, dtype=np.complex128)
    acc = np.zeros_like(zs)
    for k in range(c.size - 1, 0, -1):
        acc = (acc + c[k]) * zs
    return z0 + acc
