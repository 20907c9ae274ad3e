"""Compiled inner loops for the optimizer objectives."""

import numpy as np
from numba import njit

ZERO_EIG = 1e-12


@njit(cache=True)
def givens_product(theta, d):
    u = np.eye(d, dtype=np.complex128)
    m = 0
    for j in range(d):
        for k in range(j + 1, d):
            t = theta[2 * m]
            phi = theta[2 * m + 1]
            m += 1
            if t == 0.0:
                continue
            c = np.cos(0.5 * t)
            s = np.sin(0.5 * t)
            e = np.cos(phi) + 1j * np.sin(phi)
            # left-multiply by the two-level rotation on rows (j, k)
            for col in range(d):
                a = u[j, col]
                b = u[k, col]
                u[j, col] = c * a - np.conj(e) * s * b
                u[k, col] = e * s * a + c * b
    return u


@njit(cache=True)
def schmidt_entropy(m):
    """-sum mu log2 mu over the squared singular values of m (no normalization)."""
    r, c = m.shape
    if r <= c:
        g = m @ m.conj().T
    else:
        g = m.conj().T @ m
    mu = np.linalg.eigvalsh(g)
    out = 0.0
    for x in mu:
        if x > ZERO_EIG:
            out -= x * np.log2(x)
    return out


@njit(cache=True)
def schmidt_entropies(ms):
    out = np.empty(ms.shape[0])
    for i in range(ms.shape[0]):
        out[i] = schmidt_entropy(np.ascontiguousarray(ms[i]))
    return out


@njit(cache=True)
def _xlog2x_sum(mu):
    out = 0.0
    for x in mu:
        if x > ZERO_EIG:
            out -= x * np.log2(x)
    return out


@njit(cache=True)
def rotate_register(flat, theta, d):
    """flat has shape (n, d); returns flat @ W(theta)^T, i.e. W applied to the register."""
    w = givens_product(theta, d)
    return flat @ w.T.copy()


@njit(cache=True)
def split_objective(flat, theta, da, db, dv, de):
    """|S(BV) - S(AV)| after rotating the register into V (x) E."""
    x = rotate_register(flat, theta, dv * de)
    m_bv = np.empty((db * dv, da * de), dtype=np.complex128)
    m_av = np.empty((da * dv, db * de), dtype=np.complex128)
    for a in range(da):
        for b in range(db):
            row = a * db + b
            for v in range(dv):
                for e in range(de):
                    z = x[row, v * de + e]
                    m_bv[b * dv + v, a * de + e] = z
                    m_av[a * dv + v, b * de + e] = z
    return abs(schmidt_entropy(m_bv) - schmidt_entropy(m_av))


@njit(cache=True)
def instrument_objective(flat, theta, da, db, keep, k, m_first, sign):
    """sum_m max(0, sign * p_m (S(A)_m - S(B)_m)) with M measured in its standard basis."""
    x = rotate_register(flat, theta, keep * k)
    total = 0.0
    m_a = np.empty((da, db * keep), dtype=np.complex128)
    m_b = np.empty((db, da * keep), dtype=np.complex128)
    for m in range(k):
        for a in range(da):
            for b in range(db):
                row = a * db + b
                for r in range(keep):
                    col = m * keep + r if m_first else r * k + m
                    z = x[row, col]
                    m_a[a, b * keep + r] = z
                    m_b[b, a * keep + r] = z
        diff = sign * (schmidt_entropy(m_a) - schmidt_entropy(m_b))
        if diff > 0.0:
            total += diff
    return total


@njit(cache=True)
def decomposition_objective(weighted, theta, da, db, k):
    """Average entanglement of the ensemble from measuring a k-dim purifying register."""
    u = givens_product(theta, k)
    r = weighted.shape[1]
    # branch m = sum_i conj(u[i, m]) weighted[:, i]
    br = u[:r].conj().T.copy() @ weighted.T.copy()
    total = 0.0
    for m in range(k):
        q = 0.0
        for j in range(da * db):
            q += br[m, j].real ** 2 + br[m, j].imag ** 2
        if q <= ZERO_EIG:
            continue
        total += schmidt_entropy(br[m].copy().reshape(da, db)) + q * np.log2(q)
    return total


@njit(cache=True)
def measured_entropy_objective(rho4, theta, dm, dr):
    """sum_a p_a S(sigma_a): measure the first factor of rho4 in the basis W(theta)."""
    u = givens_product(theta, dm)
    total = 0.0
    blk = np.empty((dr, dr), dtype=np.complex128)
    for a in range(dm):
        for b in range(dr):
            for c in range(dr):
                z = 0.0 + 0.0j
                for i in range(dm):
                    for j in range(dm):
                        z += np.conj(u[i, a]) * rho4[i, b, j, c] * u[j, a]
                blk[b, c] = z
        for b in range(dr):
            for c in range(b, dr):
                z = 0.5 * (blk[b, c] + np.conj(blk[c, b]))
                blk[b, c] = z
                blk[c, b] = np.conj(z)
        p = 0.0
        for b in range(dr):
            p += blk[b, b].real
        if p <= ZERO_EIG:
            continue
        total += _xlog2x_sum(np.linalg.eigvalsh(blk)) + p * np.log2(p)
    return total
