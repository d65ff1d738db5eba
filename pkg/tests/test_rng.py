import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from wordle_difficulty._kernels import mix64_kernel
from wordle_difficulty.rng import SplitMix64, mix64, substream_seed

u64 = st.integers(min_value=0, max_value=(1 << 64) - 1)


@settings(deadline=None)  # first call JIT-compiles the kernel
@given(u64)
def test_python_and_kernel_mixers_agree(z):
    assert mix64(z) == int(mix64_kernel(np.uint64(z)))


@given(u64)
def test_mix64_stays_in_range(z):
    assert 0 <= mix64(z) < (1 << 64)


def test_known_splitmix_sequence():
    # splitmix64 reference values for seed 0 (state increments before mixing)
    rng = SplitMix64(0)
    first = rng.next_u64()
    assert first == mix64(0x9E3779B97F4A7C15)


@given(u64, st.integers(min_value=1, max_value=10**6))
def test_randbelow_in_range(seed, n):
    rng = SplitMix64(seed)
    for _ in range(20):
        assert 0 <= rng.randbelow(n) < n


def test_randbelow_roughly_uniform():
    rng = SplitMix64(123)
    counts = np.zeros(4)
    for _ in range(40000):
        counts[rng.randbelow(4)] += 1
    assert np.all(np.abs(counts / 40000 - 0.25) < 0.02)


def test_substreams_differ_and_are_stable():
    seeds = {substream_seed(42, i) for i in range(1000)}
    assert len(seeds) == 1000
    assert substream_seed(42, 7) == substream_seed(42, 7)
    assert substream_seed(42, 7) != substream_seed(43, 7)


def test_streams_are_reproducible():
    a = SplitMix64(99)
    b = SplitMix64(99)
    assert [a.next_u64() for _ in range(50)] == [b.next_u64() for _ in range(50)]
