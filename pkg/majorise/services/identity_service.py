"""Randomised checks of the trace identities behind the spectral-scale theory.

(a) ∫λ(x)λ̌(y) ≤ τ(xy) ≤ ∫λ(x)λ(y) for Hermitian pairs.
(b) τ(xP) ≤ Φ_x(k/n) for rank-k projections, with equality at the top-k
    spectral projection.
(c) a projection attaining that supremum lies between E^x(λ, ∞) and E^x[λ, ∞).
(d) x₁, x₂ with equal spectra and λ((x₁+x₂)/2) = λ(x₁) must coincide.
"""
import logging

import numpy as np

from majorise.config import setting
from majorise.models.report import SuiteReport
from majorise.services.matrix_service import random_hermitian, random_unitary, spectral_projection
from majorise.utils.linalg import hermitian_eigh
from majorise.utils.rng import spawn

logger = logging.getLogger(__name__)

TRACE_BOUNDS = "trace_bounds"
PROJECTION_SUPREMUM = "projection_supremum"
PROJECTION_SANDWICH = "projection_sandwich"
MIDPOINT_UNIQUENESS = "midpoint_uniqueness"


def _tau(a):
    return float(np.real(np.trace(a))) / a.shape[0]


def _descending(a):
    w, v = hermitian_eigh(a)
    return w[::-1], v[:, ::-1]


def _scale(*matrices):
    return 1.0 + max(float(np.max(np.abs(m).sum(axis=1))) for m in matrices)


def _random_projection(rng, n, rank):
    basis = random_unitary(rng, n)[:, :rank]
    return basis @ basis.conj().T


def _subprojection(rng, basis, rank):
    """A random rank-`rank` projection inside the span of `basis`' columns."""
    mixed = basis @ random_unitary(rng, basis.shape[1])
    chosen = mixed[:, :rank]
    return chosen @ chosen.conj().T


def check_trace_bounds(rng, n, tol, tally):
    x, y = random_hermitian(rng, n), random_hermitian(rng, n)
    lx, ly = _descending(x)[0], _descending(y)[0]
    lower, upper = float(np.dot(lx, ly[::-1])) / n, float(np.dot(lx, ly)) / n
    value = _tau(x @ y)
    slack = tol * _scale(x) * _scale(y)
    tally.record(lower - slack <= value <= upper + slack, {"lower": lower, "value": value, "upper": upper})


def check_projection_supremum(rng, n, tol, tally, sandwich):
    x = random_hermitian(rng, n)
    lx, vx = _descending(x)
    k = int(rng.integers(0, n + 1))
    bound = float(lx[:k].sum()) / n
    slack = tol * _scale(x)

    p = _random_projection(rng, n, k)
    value = _tau(x @ p)
    tally.record(value <= bound + slack, {"k": k, "value": value, "bound": bound})
    top = vx[:, :k] @ vx[:, :k].conj().T
    tally.record(abs(_tau(x @ top) - bound) <= slack, {"k": k, "bound": bound})
    if k and abs(value - bound) <= slack:
        _record_sandwich(x, lx, p, k, tol, sandwich)


def _record_sandwich(x, lx, e, k, tol, tally):
    level = lx[k - 1]
    strict = spectral_projection(x, level, tol * _scale(x), strict=True)
    closed = spectral_projection(x, level, tol * _scale(x), strict=False)
    below = float(np.max(np.abs(e @ strict - strict)))
    above = float(np.max(np.abs(closed @ e - e)))
    tally.record(below <= np.sqrt(tol) and above <= np.sqrt(tol), {"k": k, "below": below, "above": above})


def check_projection_sandwich(rng, n, tol, tally):
    """Degenerate spectrum; e = E(λ,∞) plus a random piece of the λ-eigenspace."""
    spectrum = rng.integers(0, 3, size=n).astype(float)
    x = random_hermitian(rng, n, spectrum)
    lx, vx = _descending(x)
    k = int(rng.integers(1, n + 1))
    level = lx[k - 1]
    gap = tol * _scale(x)
    above = vx[:, lx > level + gap]
    at_level = vx[:, np.abs(lx - level) <= gap]
    e = above @ above.conj().T + _subprojection(rng, at_level, k - above.shape[1])

    if abs(_tau(x @ e) - float(lx[:k].sum()) / n) > gap:
        tally.record(False, {"k": k, "reason": "constructed projection misses the supremum"})
        return
    _record_sandwich(x, lx, e, k, tol, tally)


def check_midpoint_uniqueness(rng, n, tol, tally):
    spectrum = rng.integers(-2, 3, size=n).astype(float)
    u1 = random_unitary(rng, n)
    x1 = u1 @ np.diag(spectrum) @ u1.conj().T
    if rng.random() < 0.5:
        # a phase commuting with x1 conjugates it to itself
        phases = np.exp(2j * np.pi * rng.random(n))
        w = u1 @ np.diag(phases) @ u1.conj().T
        x2 = w @ x1 @ w.conj().T
    else:
        u2 = random_unitary(rng, n)
        x2 = u2 @ np.diag(spectrum) @ u2.conj().T
    scale = _scale(x1, x2)
    gap = float(np.max(np.abs(_descending((x1 + x2) / 2.0)[0] - _descending(x1)[0])))
    distance = float(np.linalg.norm(x1 - x2))
    same_spectrum = gap <= tol * scale
    tally.record(not same_spectrum or distance <= np.sqrt(tol) * scale, {"gap": gap, "distance": distance})


def identity_suite(seed, n, trials, tol=None):
    tol = setting("SUITE_TOLERANCE", tol)
    report = SuiteReport()
    bounds = report.tally(TRACE_BOUNDS)
    supremum = report.tally(PROJECTION_SUPREMUM)
    sandwich = report.tally(PROJECTION_SANDWICH)
    midpoint = report.tally(MIDPOINT_UNIQUENESS)
    for rng in spawn(seed, trials):
        check_trace_bounds(rng, n, tol, bounds)
        check_projection_supremum(rng, n, tol, supremum, sandwich)
        check_projection_sandwich(rng, n, tol, sandwich)
        check_midpoint_uniqueness(rng, n, tol, midpoint)
    if trials == 0:
        report.warnings.append("0 trials")
    logger.debug("identity suite n=%d trials=%d violations=%d", n, trials, report.violations)
    return report
