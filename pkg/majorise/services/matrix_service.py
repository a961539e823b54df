import logging
from fractions import Fraction

import numpy as np
from marshmallow import ValidationError

from majorise.config import setting
from majorise.models.matrix import BirkhoffDecomposition, DoublyStochastic, HermitianOperator
from majorise.models.measure import MeasureSpace, SimpleFunction
from majorise.models.scale import StepScale
from majorise.schemas.matrix_schema import MatrixSchema, VectorSchema
from majorise.services.extremality_service import check_extreme
from majorise.services.scale_service import majorise_check
from majorise.utils.exceptions import (
    DimensionMismatch,
    InvariantViolation,
    NotDiagonal,
    NotInOrbit,
    NotMajorised,
    NotUnitary,
    SchemaError,
    SizeLimit,
)
from majorise.utils.linalg import hermitian_eigh

logger = logging.getLogger(__name__)


def default_tolerance(*matrices, base=None):
    """base × (1 + largest ∞-norm), the ∞-norm bounding the spectral radius."""
    base = setting("TOLERANCE", base)
    norm = max((float(np.max(np.abs(m).sum(axis=1), initial=0.0)) for m in matrices), default=0.0)
    return base * (1.0 + norm)


def hermitian(entries, tol=None):
    entries = np.asarray(entries, dtype=complex)
    return HermitianOperator(entries, default_tolerance(entries) if tol is None else tol)


def _load_matrix(document, max_dim):
    try:
        data = MatrixSchema().load(document)
    except ValidationError as exc:
        raise SchemaError(message="matrix document does not match the schema", details=exc.messages) from exc
    if max_dim is not None and data["n"] > max_dim:
        raise SizeLimit(message=f"dimension {data['n']} exceeds the limit of {max_dim}")
    return data


def parse_matrix(document, tol=None, max_dim=None):
    data = _load_matrix(document, max_dim)
    entries = np.array(data["re"], dtype=complex)
    if data["im"] is not None:
        entries = entries + 1j * np.array(data["im"], dtype=float)
    return hermitian(entries, tol)


def parse_real_matrix(document, max_dim=None):
    data = _load_matrix(document, max_dim)
    if data["im"] is not None and any(v != 0 for row in data["im"] for v in row):
        raise SchemaError(message="expected a real matrix", details={"im": ["must be zero"]})
    return np.array(data["re"], dtype=float)


def parse_vector(document):
    if isinstance(document, list):
        document = {"values": document}
    try:
        data = VectorSchema().load(document)
    except ValidationError as exc:
        raise SchemaError(message="vector document does not match the schema", details=exc.messages) from exc
    return np.array(data["values"], dtype=float)


def eigenvalues(a):
    """Eigenvalues of a HermitianOperator in decreasing order."""
    w, _ = hermitian_eigh(a.entries)
    return w[::-1].copy()


def _cluster(values, tol):
    """Group sorted-decreasing floats whose distance to the running group mean is ≤ tol."""
    groups = []
    for v in values:
        if groups and abs(np.mean(groups[-1]) - v) <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    return groups


def _to_fraction(value, snap_denominator):
    exact = Fraction(float(value))
    return exact.limit_denominator(snap_denominator) if snap_denominator else exact


def vector_scale(values, tol=0.0, snap_denominator=None):
    """Equal-weight step scale of a real vector, merging entries within tol."""
    values = sorted((float(v) for v in values), reverse=True)
    n = len(values)
    groups = _cluster(values, tol)
    if len(groups) < len(set(values)):
        logger.warning("merged %d distinct values into %d steps within tol %.3e", len(set(values)), len(groups), tol)
    return StepScale.from_pairs(
        (_to_fraction(np.mean(g), snap_denominator), Fraction(len(g), n)) for g in groups
    )


def eig_scale(a, tol=None, snap_denominator=None):
    tol = a.tol if tol is None else tol
    return vector_scale(eigenvalues(a), tol=tol, snap_denominator=snap_denominator)


def _check_dimensions(*operators):
    sizes = {op.n for op in operators}
    if len(sizes) > 1:
        raise DimensionMismatch(message=f"operators have different dimensions {sorted(sizes)}")


def matrix_majorise(x, y, tol=None):
    _check_dimensions(x, y)
    tol = default_tolerance(x.entries, y.entries) if tol is None else tol
    return majorise_check(eig_scale(x, tol), eig_scale(y, tol), tol=Fraction(tol))


def diag_expectation(a):
    return HermitianOperator(np.diag(np.diag(a.entries)), a.tol)


def is_unitary(u, tol):
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))) <= tol


def schur_horn_check(y, u, tol=None):
    """Report on diag(U y U*) ≺ λ(y)."""
    u = np.asarray(u, dtype=complex)
    if u.shape != y.entries.shape:
        raise DimensionMismatch(message="unitary and operator have different shapes")
    tol = default_tolerance(y.entries) if tol is None else tol
    if not is_unitary(u, max(tol, setting("TOLERANCE"))):
        raise NotUnitary(message="U*U differs from the identity beyond tolerance")
    conjugated = u @ y.entries @ u.conj().T
    diagonal = np.real(np.diag(conjugated))
    return majorise_check(vector_scale(diagonal, tol), eig_scale(y, tol), tol=Fraction(tol))


def atomic_model(values, snap_denominator=None):
    """Equal-weight atomic SimpleFunction with the given values snapped to rationals."""
    snap_denominator = setting("SNAP_DENOMINATOR", snap_denominator)
    space = MeasureSpace.equal_weights(len(values))
    return SimpleFunction.on_atoms(space, [_to_fraction(v, snap_denominator) for v in values])


def _shared_snap(lx, ly, tol, snap_denominator):
    """Rational levels for two decreasing spectra, or None when snapping is not faithful.

    Entries the tolerance rule pairs up share the level of the y entry; every
    independently snapped entry must move by at most tol/2, so paired and
    unpaired entries stay distinguishable after snapping.
    """
    y_levels = [_to_fraction(v, snap_denominator) for v in ly]
    x_levels, moved = [], [abs(float(s) - v) for s, v in zip(y_levels, ly)]
    for a, b, level in zip(lx, ly, y_levels):
        if abs(a - b) <= tol:
            x_levels.append(level)
        else:
            own = _to_fraction(a, snap_denominator)
            x_levels.append(own)
            moved.append(abs(float(own) - a))
    if max(moved, default=0.0) > tol / 2:
        return None
    return x_levels, y_levels


def check_extreme_diag(x, y, tol=None, snap_denominator=None):
    """Extremality of a diagonal x in {x ≺ y}: true iff λ(x) = λ(y) within tol.

    The verdict is cross-checked with the measure-space criterion on the
    equal-weight atomic model, when snapping to rationals is faithful at tol
    and the snapped model is itself in the orbit.
    """
    _check_dimensions(x, y)
    tol = default_tolerance(x.entries, y.entries) if tol is None else tol
    if not x.is_diagonal():
        raise NotDiagonal(message="x must be diagonal")
    report = matrix_majorise(x, y, tol)
    if not report.holds:
        raise NotInOrbit(message="λ(x) is not majorised by λ(y)", details=report.serialize(exact=False))

    lx, ly = np.sort(x.diagonal())[::-1], eigenvalues(y)
    verdict = bool(np.max(np.abs(lx - ly), initial=0.0) <= tol)

    levels = _shared_snap(lx, ly, tol, setting("SNAP_DENOMINATOR", snap_denominator))
    if levels is None:
        logger.debug("rational snapping moves the spectra beyond tol; skipping cross-check")
        return verdict
    space = MeasureSpace.equal_weights(x.n)
    x_model, y_model = (SimpleFunction.on_atoms(space, values) for values in levels)
    try:
        model_verdict = check_extreme(x_model, y_model, with_witness=False).is_extreme
    except NotInOrbit:
        logger.debug("snapped atomic model left the orbit; skipping cross-check")
        return verdict
    if model_verdict != verdict:
        raise InvariantViolation(
            message="matrix verdict disagrees with the atomic-model criterion",
            details={"matrix": verdict, "atomic_model": model_verdict},
        )
    return verdict


def _find_matching(d, row, matching, used, tol):
    """DFS for a permutation supported on the entries of d above tol."""
    n = d.shape[0]
    if row == n:
        return True
    for col in range(n):
        if d[row, col] > tol and col not in used:
            matching[row] = col
            used.add(col)
            if _find_matching(d, row + 1, matching, used, tol):
                return True
            del matching[row]
            used.remove(col)
    return False


def birkhoff_decompose(s):
    """Greedy Birkhoff–von Neumann decomposition of a doubly stochastic matrix."""
    d = s.entries.copy()
    n = s.n
    terms = []
    for _ in range(n * n):
        if float(np.max(d, initial=0.0)) <= s.tol:
            break
        matching = {}
        if not _find_matching(d, 0, matching, set(), s.tol):
            raise InvariantViolation(message="no permutation in the support of the remaining matrix")
        perm = tuple(matching[r] for r in range(n))
        coefficient = float(min(d[r, c] for r, c in matching.items()))
        d[np.arange(n), list(perm)] -= coefficient
        d[d < s.tol] = 0.0
        terms.append((coefficient, perm))
    decomposition = BirkhoffDecomposition(n, tuple(terms))
    logger.debug("Birkhoff decomposition with %d terms", len(terms))
    return decomposition


def vector_majorises(x, y, tol):
    """x ≺ y for equal-weight real vectors."""
    xs, ys = np.sort(x)[::-1], np.sort(y)[::-1]
    gaps = np.cumsum(ys) - np.cumsum(xs)
    return bool(np.all(gaps[:-1] >= -tol) and abs(gaps[-1]) <= tol)


def t_transform_chain(x, y, tol=None):
    """Doubly stochastic S with S y = x, a product of at most n-1 T-transforms."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DimensionMismatch(message="x and y must be vectors of the same length")
    n = len(x)
    tol = setting("TOLERANCE") * (1.0 + float(np.max(np.abs(y), initial=0.0))) if tol is None else tol
    if not vector_majorises(x, y, tol):
        raise NotMajorised(message="x is not majorised by y")

    px, py = np.argsort(-x, kind="stable"), np.argsort(-y, kind="stable")
    target, z = x[px], y[py].copy()
    product = np.eye(n)
    for _ in range(max(n - 1, 0)):
        above = [i for i in range(n - 1) if z[i] - target[i] > tol]
        if not above:
            break
        j = above[-1]
        below = [i for i in range(j + 1, n) if target[i] - z[i] > tol]
        k = below[0] if below else j + 1 + int(np.argmax(target[j + 1 :] - z[j + 1 :]))
        delta = min(z[j] - target[j], target[k] - z[k])
        keep = 1.0 - delta / (z[j] - z[k])
        t = np.eye(n)
        t[[j, k], [j, k]] = keep
        t[j, k] = t[k, j] = 1.0 - keep
        z = t @ z
        product = t @ product

    # back to the original coordinates: x = Pxᵀ S Py y
    to_sorted_y = np.eye(n)[py]
    from_sorted_x = np.eye(n)[px].T
    return DoublyStochastic(from_sorted_x @ product @ to_sorted_y, tol)


def random_unitary(rng, n):
    """Haar-distributed unitary from the QR factorisation of a complex Gaussian matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diagonal = np.diag(r)
    phases = np.where(np.abs(diagonal) > 0, diagonal / np.abs(diagonal), 1.0)
    return q * phases


def random_hermitian(rng, n, spectrum=None):
    if spectrum is None:
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        return (z + z.conj().T) / 2.0
    u = random_unitary(rng, n)
    return u @ np.diag(np.asarray(spectrum, dtype=float)) @ u.conj().T


def random_doubly_stochastic(rng, n, terms=None):
    """Convex combination of random permutation matrices with Dirichlet weights."""
    terms = terms or n
    weights = rng.dirichlet(np.ones(terms))
    matrix = np.zeros((n, n))
    for weight in weights:
        matrix[np.arange(n), rng.permutation(n)] += weight
    return matrix


def spectral_projection(entries, threshold, tol, strict=True):
    """E(threshold, ∞) when strict, else E[threshold, ∞), with eigenvalues compared within tol."""
    w, v = hermitian_eigh(entries)
    keep = w > threshold + tol if strict else w >= threshold - tol
    basis = v[:, keep]
    return basis @ basis.conj().T
