from fractions import Fraction

import numpy as np


def make_rng(seed):
    # every random draw in the package comes from a PCG64 stream
    return np.random.Generator(np.random.PCG64(seed))


def spawn(seed, count):
    """Independent child generators derived from one seed or SeedSequence."""
    sequence = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return [np.random.Generator(np.random.PCG64(child)) for child in sequence.spawn(count)]


def child_seed(rng):
    return int(rng.integers(2**32))


def dyadic_weights(rng, n, exponent=4):
    """n positive dyadic rationals summing to 1 (a random composition of 2**exponent)."""
    total = 2 ** exponent
    cuts = []
    if n > 1:
        cuts = sorted(int(c) for c in rng.choice(np.arange(1, total), size=n - 1, replace=False))
    bounds = [0] + cuts + [total]
    return [Fraction(bounds[i + 1] - bounds[i], total) for i in range(n)]


def small_integers(rng, n, low=0, high=4):
    return [Fraction(int(v)) for v in rng.integers(low, high + 1, size=n)]
