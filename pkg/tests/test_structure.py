import math

import pytest

from ait_lab.complexity import kolmogorov
from ait_lab.exceptions import MembershipError, ScaleError
from ait_lab.machines import literal_bound
from ait_lab.signatures import MachinesEnum, ModelSet, StatusEnum, universe
from ait_lab.structure import (
    LabelsEnum, bitmap_complexities, bitmap_decode, bitmap_encode, minimal_sufficient_statistic, randomness_report,
    structure_function, two_part_code
)


def k_a(x):
    return kolmogorov(x, MachinesEnum.a, literal_bound(MachinesEnum.a, len(x))).value_bits


def test_bitmap_examples():
    assert bitmap_encode(ModelSet.of(3, ['000'])) == '10000000'
    assert bitmap_encode(ModelSet.of(3, universe(3))) == '11111111'
    assert bitmap_encode(ModelSet.of(2, ['01', '11'])) == '0101'
    assert bitmap_decode('0101', 2) == ModelSet.of(2, ['11', '01'])
    with pytest.raises(MembershipError):
        bitmap_decode('010', 2)


def test_bitmap_complexities_at_n_3():
    complexities = bitmap_complexities(3)
    assert len(complexities) == 255
    assert min(k for k, _ in complexities.values()) == 10
    assert {bitmap for bitmap, (k, _) in complexities.items() if k == 10} == {'01010101', '10101010', '11111111'}
    assert complexities['10000000'] == (18, StatusEnum.exact)


def test_structure_function_of_000():
    curve = structure_function('000', 3)
    assert [point.alpha for point in curve] == list(range(19))
    assert all(math.isinf(point.h) and point.witness is None for point in curve[:10])
    assert (curve[10].h, curve[10].witness.bitmap) == (2, '10101010')
    assert curve[11].h == 2
    assert all(point.h == 1 for point in curve[12:18])
    assert curve[12].witness.bitmap == '10001000'
    assert (curve[18].h, curve[18].witness.bitmap) == (0, '10000000')


@pytest.mark.parametrize('x', universe(3))
def test_structure_function_shape(x):
    curve = structure_function(x, 3)
    finite = [point.h for point in curve if point.finite]
    assert finite == sorted(finite, reverse=True)
    assert curve[-1].h == 0
    assert curve[-1].alpha == k_a(ModelSet.of(3, [x]).bitmap)
    for point in curve:
        if point.finite:
            assert x in point.witness
            assert k_a(point.witness.bitmap) <= point.alpha
            assert math.log2(len(point.witness)) == point.h


@pytest.mark.parametrize('n', [1, 2, 3])
def test_two_part_dominance(n):
    for x in universe(n):
        k_x = k_a(x)
        for point in structure_function(x, n):
            if point.finite:
                assert point.alpha + point.h >= k_x - 8


def test_shuffled_order_gives_the_same_curve():
    for seed in (1, 2, 3):
        assert structure_function('011', 3, shuffle_seed=seed) == structure_function('011', 3)


def test_limit_truncates_the_curve():
    curve = structure_function('000', 3, limit=12)
    assert [point.alpha for point in curve] == list(range(13))
    assert curve == structure_function('000', 3)[:13]


def test_two_part_code_examples():
    report = two_part_code('000', bitmap_decode('10101010', 3))
    assert (report.model_bits, report.data_bits, report.total, report.index) == (10, 2, 12, 0)
    report = two_part_code('000', ModelSet.of(3, universe(3)))
    assert (report.model_bits, report.data_bits, report.total) == (10, 3, 13)
    report = two_part_code('101', ModelSet.of(3, ['101']))
    assert (report.data_bits, report.index, report.total) == (0, 0, report.model_bits)
    with pytest.raises(MembershipError):
        two_part_code('001', bitmap_decode('10101010', 3))


def test_minimal_sufficient_statistic():
    report = minimal_sufficient_statistic('000', 3, slack=8)
    assert report.found
    assert (report.alpha_star, report.h_at, report.k_x) == (10, 2, 8)
    assert report.witness.bitmap == '10101010'
    assert not minimal_sufficient_statistic('000', 3, slack=0).found


def test_minimal_sufficient_statistic_monotone_in_slack():
    previous = None
    for slack in range(8, 16):
        report = minimal_sufficient_statistic('110', 3, slack=slack)
        assert report.found
        assert report.alpha_star + report.h_at <= report.k_x + slack
        if previous is not None:
            assert report.alpha_star <= previous
        previous = report.alpha_star


def test_randomness_report():
    report = randomness_report('000', 3, slack=8)
    assert report.labels == (LabelsEnum.positive,)
    assert report.alpha_star == 10
    assert len(report.curve) == 19
    assert randomness_report('000', 3, slack=0).labels == (LabelsEnum.unresolved,)


def test_each_string_gets_one_label():
    for x in universe(3):
        labels = randomness_report(x, 3, slack=8).labels
        assert len(labels) == 1
        assert labels[0] in (LabelsEnum.positive, LabelsEnum.negative, LabelsEnum.structured)


def test_randomness_thresholds_are_configurable():
    strict = randomness_report('000', 3, slack=8, thresholds={'positive_h_margin': 0})
    assert strict.labels == (LabelsEnum.negative,)
    neither = randomness_report('000', 3, slack=8, thresholds={'positive_h_margin': 0, 'negative_alpha_margin': -3})
    assert neither.labels == (LabelsEnum.structured,)


def test_scale_errors():
    with pytest.raises(ScaleError):
        structure_function('0000', 4)
    with pytest.raises(ScaleError):
        structure_function('00000', 5, bounded=True)
    with pytest.raises(MembershipError):
        structure_function('00', 3)
