import math
import random

from certquad.summation import NeumaierAccumulator, compensated_sum


def test_recovers_small_terms_next_to_large_ones():
    assert compensated_sum([1.0, 1e100, 1.0, -1e100]) == 2.0


def test_tenths_add_up():
    assert compensated_sum([0.1] * 10) == 1.0


def test_close_to_fsum_in_either_order():
    rng = random.Random(7)
    values = [rng.uniform(-1.0, 1.0) * 10.0 ** rng.randint(-8, 8) for _ in range(2000)]
    exact = math.fsum(values)
    assert abs(compensated_sum(values) - exact) <= 4.0 * math.ulp(exact)
    assert abs(compensated_sum(reversed(values)) - exact) <= 4.0 * math.ulp(exact)


def test_tracks_count_and_absolute_sum():
    acc = NeumaierAccumulator()
    acc.extend([1.5, -2.5, 4.0])
    assert acc.count == 3
    assert acc.abs_sum == 8.0
    assert float(acc) == 3.0


def test_empty_sum_is_zero():
    assert compensated_sum([]) == 0.0
