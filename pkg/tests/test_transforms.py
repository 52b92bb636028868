import math

import pytest

from certquad.transforms import MapKind, MapTag, log_softplus, logistic, map_point, softplus

KINDS = {
    MapTag.SE_FINITE: MapKind.se_finite(1.0),
    MapTag.DE_FINITE: MapKind.de_finite(1.0),
    MapTag.SE_ALG: MapKind(MapTag.SE_ALG),
    MapTag.DE_ALG: MapKind(MapTag.DE_ALG),
    MapTag.SE_EXP: MapKind(MapTag.SE_EXP),
    MapTag.DE_EXP: MapKind(MapTag.DE_EXP),
}

# ranges where t is strictly increasing in double precision and the weight is well resolved
WORKING_RANGE = {
    MapTag.SE_FINITE: 8.0,
    MapTag.DE_FINITE: 2.0,
    MapTag.SE_ALG: 20.0,
    MapTag.DE_ALG: 2.0,
    MapTag.SE_EXP: 10.0,
    MapTag.DE_EXP: 2.0,
}


def grid(half_width, count):
    return [-half_width + 2.0 * half_width * i / (count - 1) for i in range(count)]


def test_se_finite_at_origin():
    p = map_point(MapKind.se_finite(1.0), 0.0)
    assert p.t == 0.5
    assert p.t_complement == 0.5
    assert p.weight == 0.25


def test_se_alg_at_origin():
    p = map_point(MapKind(MapTag.SE_ALG), 0.0)
    assert p.t == 1.0
    assert p.weight == 1.0
    assert p.log_t == 0.0


def test_se_exp_at_origin():
    p = map_point(MapKind(MapTag.SE_EXP), 0.0)
    assert p.t == pytest.approx(math.log(2.0), rel=1e-15)
    assert p.weight == 0.5


def test_de_finite_at_origin():
    p = map_point(MapKind.de_finite(1.0), 0.0)
    assert p.t == 0.5
    assert p.weight == pytest.approx(math.pi / 4.0, rel=1e-15)


def test_se_alg_log_t_is_exact_far_left():
    p = map_point(MapKind(MapTag.SE_ALG), -800.0)
    assert p.t == 0.0
    assert p.log_t == -800.0


@pytest.mark.parametrize("T", [1.0, 2.0])
@pytest.mark.parametrize("tag", [MapTag.SE_FINITE, MapTag.DE_FINITE])
def test_finite_reflection(tag, T):
    kind = MapKind(tag, T)
    for x in grid(50.0, 1001):
        p = map_point(kind, x)
        q = map_point(kind, -x)
        assert abs(p.t + q.t - T) <= 2.0 * math.ulp(T)
        assert q.t == p.t_complement


@pytest.mark.parametrize("tag", list(MapTag))
def test_t_strictly_increasing(tag):
    kind = KINDS[tag]
    ts = [map_point(kind, x).t for x in grid(WORKING_RANGE[tag], 2001)]
    assert all(b > a for a, b in zip(ts, ts[1:]))


@pytest.mark.parametrize("tag", list(MapTag))
def test_weight_matches_central_difference(tag):
    kind = KINDS[tag]
    step = 1e-5
    for x in grid(WORKING_RANGE[tag], 201):
        slope = (map_point(kind, x + step).t - map_point(kind, x - step).t) / (2.0 * step)
        assert map_point(kind, x).weight == pytest.approx(slope, rel=1e-6)


@pytest.mark.parametrize("tag", list(MapTag))
def test_logs_agree_with_values(tag):
    kind = KINDS[tag]
    for x in grid(WORKING_RANGE[tag] + 1.0, 301):
        p = map_point(kind, x)
        assert math.exp(p.log_t) == pytest.approx(p.t, rel=1e-12)
        assert math.exp(p.log_weight) == pytest.approx(p.weight, rel=1e-12)


def test_de_alg_saturates_without_nan():
    kind = MapKind(MapTag.DE_ALG)
    right = map_point(kind, 10.0)
    assert right.t == math.inf
    assert math.isfinite(right.log_t)
    left = map_point(kind, -10.0)
    assert left.t == 0.0
    assert left.weight == 0.0
    assert math.isfinite(left.log_weight)


def test_de_finite_weight_underflows_to_zero():
    p = map_point(MapKind.de_finite(1.0), 800.0)
    assert p.t == 1.0
    assert p.weight == 0.0
    assert p.t_complement == 0.0


def test_de_exp_log_t_far_left():
    # t = log1p(e^u) ~ e^u, so log t ~ u once e^u is tiny
    p = map_point(MapKind(MapTag.DE_EXP), -3.0)
    u = math.pi * math.sinh(-3.0)
    assert p.log_t == pytest.approx(u, rel=1e-15)


def test_scalar_helpers():
    assert softplus(0.0) == pytest.approx(math.log(2.0), rel=1e-15)
    assert softplus(800.0) == 800.0
    assert softplus(-800.0) == 0.0
    assert logistic(800.0) == 1.0
    assert logistic(-800.0) == 0.0
    assert log_softplus(-40.0) == pytest.approx(-40.0, rel=1e-15)


def test_map_kind_validates_interval_length():
    with pytest.raises(ValueError):
        MapKind(MapTag.SE_FINITE)
    with pytest.raises(ValueError):
        MapKind(MapTag.DE_FINITE, -1.0)
    with pytest.raises(ValueError):
        MapKind(MapTag.SE_ALG, 1.0)
