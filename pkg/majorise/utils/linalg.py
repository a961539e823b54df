import logging
import math
from fractions import Fraction

import numpy as np

from majorise.utils.exceptions import InvariantViolation

logger = logging.getLogger(__name__)

MAX_QL_ITERATIONS = 60


def _integer_rows(rows):
    """Clear denominators row by row; rank is unchanged."""
    result = []
    for row in rows:
        row = [Fraction(v) for v in row]
        scale = math.lcm(*(v.denominator for v in row)) if row else 1
        result.append([int(v * scale) for v in row])
    return result


def exact_rank(rows):
    """Rank of a rational matrix by fraction-free (Bareiss) elimination.

    Every intermediate entry is a minor of the integer matrix, so the
    division by the previous pivot is exact.
    """
    m = _integer_rows(rows)
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    previous = 1
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, n_rows):
            factor = m[r][col]
            for c in range(col + 1, n_cols):
                m[r][c] = (m[r][c] * p - factor * m[rank][c]) // previous
            m[r][col] = 0
        previous = p
        rank += 1
        if rank == n_rows:
            break
    return rank


def _tridiagonalize(a):
    """Householder reduction A = Q T Q* with T Hermitian tridiagonal."""
    t = np.array(a, dtype=complex)
    n = t.shape[0]
    q = np.eye(n, dtype=complex)
    for k in range(n - 2):
        x = t[k + 1 :, k].copy()
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        t[k + 1 :, :] -= 2.0 * np.outer(v, v.conj() @ t[k + 1 :, :])
        t[:, k + 1 :] -= 2.0 * np.outer(t[:, k + 1 :] @ v, v.conj())
        q[:, k + 1 :] -= 2.0 * np.outer(q[:, k + 1 :] @ v, v.conj())
    return t, q


def _real_phases(t):
    """Diagonal unitary D with D* T D real symmetric tridiagonal."""
    n = t.shape[0]
    phases = np.ones(n, dtype=complex)
    off = np.zeros(max(n - 1, 0))
    for k in range(n - 1):
        e = t[k + 1, k]
        if abs(e) > 0:
            phases[k + 1] = phases[k] * e / abs(e)
        else:
            phases[k + 1] = phases[k]
        off[k] = abs(e)
    return phases, np.real(np.diag(t)).copy(), off


def _tql(d, off, z):
    """Implicit QL with Wilkinson-type shifts on a real symmetric tridiagonal matrix.

    d: diagonal, off: subdiagonal; rotations are accumulated into the columns of z.
    """
    n = len(d)
    e = np.append(off, 0.0)
    eps = np.finfo(float).eps
    for l in range(n):
        iterations = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            iterations += 1
            if iterations > MAX_QL_ITERATIONS:
                raise InvariantViolation(message="QL iteration did not converge")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            deflated = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                column = z[:, i + 1].copy()
                z[:, i + 1] = s * z[:, i] + c * column
                z[:, i] = c * z[:, i] - s * column
                i -= 1
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
        logger.debug("eigenvalue %d settled after %d QL sweeps", l, iterations)
    return d, z


def hermitian_eigh(a):
    """Eigenvalues (ascending) and unit eigenvectors (columns) of a Hermitian matrix."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if n == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=complex)
    t, q = _tridiagonalize(a)
    phases, d, off = _real_phases(t)
    w, z = _tql(d, off, np.eye(n))
    vectors = (q * phases) @ z
    order = np.argsort(w, kind="stable")
    return w[order], vectors[:, order]
