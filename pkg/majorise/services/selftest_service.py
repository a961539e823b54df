import logging
from fractions import Fraction
from itertools import permutations
from math import isqrt

import numpy as np

from majorise.config import setting
from majorise.models.matrix import DoublyStochastic
from majorise.models.measure import MeasureSpace, SimpleFunction
from majorise.models.report import SuiteReport
from majorise.models.verdict import ExtremalityVerdict
from majorise.services.extremality_service import evaluate_intervals
from majorise.services.identity_service import identity_suite
from majorise.services.matrix_service import (
    atomic_model,
    birkhoff_decompose,
    check_extreme_diag,
    hermitian,
    random_doubly_stochastic,
    random_hermitian,
    random_unitary,
    schur_horn_check,
    t_transform_chain,
)
from majorise.services.measure_service import atomic_function, diffuse_function
from majorise.services.oracle_service import enumerate_extreme, oracle_extreme, sample_orbit
from majorise.services.scale_service import majorise_check, rearrange
from majorise.services.witness_service import build_witness, verify_witness
from majorise.utils.exceptions import NotInOrbit, ServiceError
from majorise.utils.rng import child_seed, dyadic_weights, make_rng, small_integers, spawn

logger = logging.getLogger(__name__)

MUTATIONS = ("ignore-atomicity",)

ORACLE_AGREEMENT = "oracle_agreement"
CLASSICAL_PERMUTATIONS = "classical_permutations"
ATOMLESS_EQUIMEASURABLE = "atomless_equimeasurable"
WITNESS_SOUNDNESS = "witness_soundness"
GOLDEN_EXAMPLES = "golden_examples"
TRUNCATION_FAMILY = "truncation_family"
MATRIX_SUITE = "matrix_suite"
IDENTITY_SUITE = "identity_suite"

CRITERIA = (
    ORACLE_AGREEMENT,
    CLASSICAL_PERMUTATIONS,
    ATOMLESS_EQUIMEASURABLE,
    WITNESS_SOUNDNESS,
    GOLDEN_EXAMPLES,
    TRUNCATION_FAMILY,
    MATRIX_SUITE,
    IDENTITY_SUITE,
)

MATRIX_TRIALS_CAP = 200
RECONSTRUCTION_TOLERANCE = 1e-10
# draws allowed per wanted witness case before the top-up pass gives up
WITNESS_DRAWS_PER_CASE = 20


def inverse_sqrt_profile(pieces=8):
    """Dyadic step approximation of 1/√t on (0, 1/2): `pieces` pieces of mass 1/(2·pieces).

    Piece k takes the value of 1/√t at its right end, rounded down to a multiple of 2⁻²⁰.
    """
    per = 2 * pieces
    values = [Fraction(isqrt((per << 40) // (k + 1)), 1 << 20) for k in range(pieces)]
    return [(v, Fraction(1, per)) for v in values]


def truncation_pair(profile, cut):
    """y = profile ⊕ null atom e of weight 1/2, and x = y·χ_(0,a) ⊕ 2e∫_a^{1/2} y with a after `cut` pieces."""
    tail = sum((v * m for v, m in profile[cut:]), Fraction(0))
    y = diffuse_function(profile, atoms=[("e", Fraction(1, 2), 0)])
    x_pieces = [(v if i < cut else Fraction(0), m) for i, (v, m) in enumerate(profile)]
    x = SimpleFunction(y.space, {"e": 2 * tail}, tuple(x_pieces))
    return x, y


class Selftest:
    """Runs the acceptance criteria; `require_atom=False` is the ignore-atomicity mutation."""

    def __init__(self, seed, trials, require_atom=True):
        self.seed = seed
        self.trials = trials
        self.require_atom = require_atom
        self.tol = setting("SUITE_TOLERANCE")
        self.report = SuiteReport()
        for name in CRITERIA:
            self.report.tally(name)

    def decide(self, x, y):
        y_scale = rearrange(y)
        if not majorise_check(rearrange(x), y_scale).holds:
            raise NotInOrbit(message="sampled x left the orbit")
        return ExtremalityVerdict(evaluate_intervals(x, y_scale, require_atom=self.require_atom))

    def witness_check(self, x, y):
        tally = self.report.tally(WITNESS_SOUNDNESS)
        try:
            pair = build_witness(x, y)
        except ServiceError as exc:
            tally.record(False, {"x": x.serialize(), "error": exc.code})
            return
        tally.record(verify_witness(x, y, pair), {"x": x.serialize()})

    def decide_and_witness(self, x, y):
        verdict = self.decide(x, y)
        if not verdict.is_extreme:
            self.witness_check(x, y)
        return verdict.is_extreme

    def oracle_agreement(self, sequence):
        tally = self.report.tally(ORACLE_AGREEMENT)
        for rng in spawn(sequence, self.trials):
            n = int(rng.integers(2, 6))
            space = MeasureSpace(tuple((f"a{i + 1}", w) for i, w in enumerate(dyadic_weights(rng, n))))
            y = SimpleFunction.on_atoms(space, small_integers(rng, n))
            if rng.random() < 0.5:
                x = sample_orbit(y, child_seed(rng))
            else:
                extremes = enumerate_extreme(y)
                x = extremes[int(rng.integers(len(extremes)))]
            try:
                agree = self.decide_and_witness(x, y) == oracle_extreme(x, y)
            except ServiceError as exc:
                tally.record(False, {"x": x.serialize(), "error": exc.code})
                continue
            tally.record(agree, {"x": x.serialize(), "y": y.serialize()})

    def classical_permutations(self, sequence):
        tally = self.report.tally(CLASSICAL_PERMUTATIONS)
        per_size = max(1, self.trials // 100) if self.trials else 0
        rngs = spawn(sequence, 5 * per_size)
        for index, rng in enumerate(rngs):
            n = 2 + index // per_size
            values = small_integers(rng, n)
            y = atomic_function([Fraction(1, n)] * n, values)
            expected = {tuple(p) for p in permutations(values)}
            found = {tuple(f.atom_values[a] for a in y.space.atom_ids) for f in enumerate_extreme(y)}
            ok = found == expected and all(self.decide(f, y).is_extreme for f in enumerate_extreme(y))
            tally.record(ok, {"y": [str(v) for v in values]})

    def atomless_equimeasurable(self, sequence):
        tally = self.report.tally(ATOMLESS_EQUIMEASURABLE)
        for rng in spawn(sequence, self.trials // 2):
            k = int(rng.integers(1, 5))
            y = diffuse_function(zip(small_integers(rng, k), dyadic_weights(rng, k, exponent=3)))
            if rng.random() < 0.5:
                order = rng.permutation(k)
                x = SimpleFunction(y.space, {}, tuple(y.diffuse_pieces[int(i)] for i in order))
            else:
                x = sample_orbit(y, child_seed(rng))
            try:
                extreme = self.decide_and_witness(x, y)
            except ServiceError as exc:
                tally.record(False, {"x": x.serialize(), "error": exc.code})
                continue
            tally.record(extreme == (rearrange(x) == rearrange(y)), {"x": x.serialize(), "y": y.serialize()})

    def witness_top_up(self, sequence):
        """Draw non-extreme atomic instances until `trials` witness cases have been checked."""
        tally = self.report.tally(WITNESS_SOUNDNESS)
        rng = make_rng(sequence)
        draws = 0
        while tally.passed + tally.failed < self.trials and draws < WITNESS_DRAWS_PER_CASE * self.trials:
            draws += 1
            n = int(rng.integers(2, 7))
            space = MeasureSpace(tuple((f"a{i + 1}", w) for i, w in enumerate(dyadic_weights(rng, n))))
            y = SimpleFunction.on_atoms(space, small_integers(rng, n))
            x = sample_orbit(y, child_seed(rng))
            try:
                self.decide_and_witness(x, y)
            except ServiceError as exc:
                tally.record(False, {"x": x.serialize(), "error": exc.code})
        cases = tally.passed + tally.failed
        if cases < self.trials:
            tally.record(False, {"witness_cases": cases, "wanted": self.trials})

    def golden_examples(self):
        tally = self.report.tally(GOLDEN_EXAMPLES)
        weighted_y = atomic_function(["1/2", "1/4", "1/4"], [4, 2, 0], ids=["a", "b", "c"])
        weighted_x = atomic_function(["1/2", "1/4", "1/4"], [3, 4, 0], ids=["a", "b", "c"])
        justifications = evaluate_intervals(weighted_x, rearrange(weighted_y), require_atom=self.require_atom)
        tally.record(
            [j.condition for j in justifications] == [1, 2, 1] and oracle_extreme(weighted_x, weighted_y),
            "weighted three-atom example",
        )

        two_atom_y = atomic_function(["2/3", "1/3"], [3, 0], ids=["A", "B"])
        found = [dict(f.atom_values) for f in enumerate_extreme(two_atom_y)]
        expected = [{"A": Fraction(3, 2), "B": Fraction(3)}, {"A": Fraction(3), "B": Fraction(0)}]
        tally.record(found == expected, "two-atom extreme set")

        remark_y = diffuse_function([(4, "1/4"), (2, "1/4")], atoms=[("e", "1/2", 0)])
        remark_x = SimpleFunction(remark_y.space, {"e": 3}, ((0, Fraction(1, 2)),))
        tally.record(self.decide(remark_x, remark_y).is_extreme, "diffuse plus atom example")

    def truncation_family(self):
        tally = self.report.tally(TRUNCATION_FAMILY)
        profile = inverse_sqrt_profile()
        for cut in range(len(profile) + 1):
            x, y = truncation_pair(profile, cut)
            tally.record(self.decide(x, y).is_extreme, {"cut": cut})

    def matrix_suite(self, sequence):
        tally = self.report.tally(MATRIX_SUITE)
        for rng in spawn(sequence, min(self.trials, MATRIX_TRIALS_CAP)):
            n = int(rng.integers(1, 9))
            spectrum = [float(v) for v in small_integers(rng, n)]
            y = hermitian(random_hermitian(rng, n, spectrum), self.tol)
            try:
                self._matrix_trial(rng, n, spectrum, y, tally)
            except ServiceError as exc:
                tally.record(False, {"n": n, "error": exc.code, "detail": exc.message})

    def _matrix_trial(self, rng, n, spectrum, y, tally):
        tally.record(schur_horn_check(y, random_unitary(rng, n), self.tol).holds, {"n": n, "check": "schur"})

        model_y = atomic_model(spectrum)
        if rng.random() < 0.5:
            diagonal = [spectrum[int(i)] for i in rng.permutation(n)]
        else:
            model_x = sample_orbit(model_y, child_seed(rng), steps=1)
            diagonal = [float(model_x.atom_values[a]) for a in model_x.space.atom_ids]
        x = hermitian(np.diag(diagonal), self.tol)
        expected = self.decide(atomic_model(diagonal), model_y).is_extreme
        tally.record(check_extreme_diag(x, y, self.tol) == expected, {"n": n, "check": "diag"})

        s = DoublyStochastic(random_doubly_stochastic(rng, n), 1e-12)
        decomposition = birkhoff_decompose(s)
        residual = float(np.max(np.abs(decomposition.reconstruct() - s.entries)))
        tally.record(
            residual <= RECONSTRUCTION_TOLERANCE and len(decomposition.terms) <= (n - 1) ** 2 + 1,
            {"n": n, "check": "birkhoff", "residual": residual},
        )

        target = s.entries @ np.array(spectrum)
        chain = t_transform_chain(target, np.array(spectrum), tol=1e-12)
        residual = float(np.max(np.abs(chain.entries @ np.array(spectrum) - target)))
        tally.record(residual <= RECONSTRUCTION_TOLERANCE, {"n": n, "check": "t_transform", "residual": residual})

    def identity_checks(self, sequence):
        tally = self.report.tally(IDENTITY_SUITE)
        for rng in spawn(sequence, min(self.trials, MATRIX_TRIALS_CAP)):
            n = int(rng.integers(1, 7))
            sub = identity_suite(child_seed(rng), n, 1, self.tol)
            for check in sub.tallies.values():
                tally.passed += check.passed
                tally.failed += check.failed
                tally.failures.extend(check.failures[: max(0, 5 - len(tally.failures))])

    def run(self):
        sequences = np.random.SeedSequence(self.seed).spawn(6)
        self.oracle_agreement(sequences[0])
        self.classical_permutations(sequences[1])
        self.atomless_equimeasurable(sequences[2])
        self.witness_top_up(sequences[5])
        self.golden_examples()
        self.truncation_family()
        self.matrix_suite(sequences[3])
        self.identity_checks(sequences[4])
        if self.trials == 0:
            logger.warning("selftest ran with 0 trials; randomized criteria are vacuous")
            self.report.warnings.append("0 trials")
        return self.report


def selftest(seed, trials, mutate=None):
    report = Selftest(seed, trials, require_atom=mutate != "ignore-atomicity").run()
    logger.debug("selftest seed=%d trials=%d violations=%d", seed, trials, report.violations)
    return report
