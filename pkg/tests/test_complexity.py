import io
import itertools
import math
from fractions import Fraction

import pytest
from django.test import override_settings

from ait_lab import complexity
from ait_lab.complexity import (
    algorithmic_probability, complexity_table, conditional_kolmogorov, count_below, count_compressible,
    enumerate_halting, invariance_constant, kolmogorov, kolmogorov_bounded, kraft_sum, mutual_information,
    randomness_deficiency, shortest_program_probability, shortest_programs
)
from ait_lab.exceptions import AuxiliaryInputError, MalformedCache, RequiresExact, WorkBudgetExceeded
from ait_lab.machines import literal_bound, run
from ait_lab.signatures import HaltedExact, MachinesEnum, StatusEnum
from ait_lab.utils import Xorshift64Star


def brute_force_k(x, machine, limit):
    """Shortest program by scanning every bit string up to limit, no enumeration tree involved"""
    for length in range(limit + 1):
        for candidate in itertools.product('01', repeat=length):
            program = ''.join(candidate)
            outcome = run(machine, program)
            if isinstance(outcome, HaltedExact) and outcome.output == x:
                return length, program
    return None, None


def seeded_strings(count, max_length, seed):
    rng = Xorshift64Star(seed)
    return [rng.bits(rng.below(max_length + 1)) for _ in range(count)]


def test_enumerate_halting_examples():
    assert enumerate_halting(MachinesEnum.a, 4).entries == (('00', ''), ('0100', '0'), ('1000', '1'), ('1100', ''))
    assert enumerate_halting(MachinesEnum.b, 1).entries == (('0', ''),)
    assert enumerate_halting(MachinesEnum.a, 1).entries == ()


def test_enumerate_halting_order_and_validity():
    program_table = enumerate_halting(MachinesEnum.b, 12)
    keys = [(len(program), program) for program, _ in program_table.entries]
    assert keys == sorted(keys)
    for program, output in program_table.entries:
        outcome = run(MachinesEnum.b, program)
        assert isinstance(outcome, HaltedExact)
        assert outcome.output == output


@pytest.mark.parametrize('x, limit, k, witness', [
    ('', 4, 2, '00'),
    ('1', 8, 4, '1000'),
    ('1010', 12, 8, '10011100'),
    ('10101010', 18, 10, '1001111100'),
])
def test_kolmogorov_examples(x, limit, k, witness):
    report = kolmogorov(x, MachinesEnum.a, limit)
    assert (report.value_bits, report.witness, report.status) == (k, witness, StatusEnum.exact)


@pytest.mark.parametrize('x', ['', '1', '1010', '10101010'])
def test_kolmogorov_minimality_by_rescan(x):
    report = kolmogorov(x, MachinesEnum.a, literal_bound(MachinesEnum.a, len(x)))
    assert brute_force_k(x, MachinesEnum.a, report.value_bits) == (report.value_bits, report.witness)


def test_kolmogorov_matches_brute_force_on_b():
    for x in ['', '0', '11', '010', '1111']:
        report = kolmogorov(x, MachinesEnum.b, literal_bound(MachinesEnum.b, len(x)))
        assert brute_force_k(x, MachinesEnum.b, report.value_bits) == (report.value_bits, report.witness)


def test_no_program_within():
    report = kolmogorov('10101010', MachinesEnum.a, 8)
    assert report.status == StatusEnum.no_program_within
    assert report.value_bits is None
    assert report.status_text == 'NoProgramWithin(8)'


def test_anytime_property():
    short = kolmogorov('1010', MachinesEnum.a, 6)
    long = kolmogorov('1010', MachinesEnum.a, 12)
    assert short.status == StatusEnum.no_program_within
    assert long.exact


def test_kolmogorov_bounded_falls_back_to_literal():
    report = kolmogorov_bounded('10000000', MachinesEnum.a, 10)
    assert report.status == StatusEnum.upper_bound
    assert report.witness == '1001010101010100'
    assert report.value_bits == 16
    assert kolmogorov_bounded('1010', MachinesEnum.a, 12).exact


def test_algorithmic_probability_examples():
    assert algorithmic_probability('', MachinesEnum.a, 4).fraction == Fraction(5, 16)
    assert algorithmic_probability('1', MachinesEnum.a, 2).fraction == 0


def test_algorithmic_probability_converges_to_a_third():
    accumulator = algorithmic_probability('', MachinesEnum.a, 20)
    assert accumulator.fraction == sum(Fraction(1, 4 ** (k + 1)) for k in range(10))
    assert abs(accumulator.fraction - Fraction(1, 3)) <= Fraction(1, 2 ** 18)


def test_probability_rendering():
    accumulator = algorithmic_probability('', MachinesEnum.a, 4)
    assert accumulator.serialize() == {'probability': '5/2^4', 'decimal': '0.3125', 'limit': 4}


def test_kraft_examples():
    assert kraft_sum(MachinesEnum.a, 4).fraction == Fraction(7, 16)
    assert kraft_sum(MachinesEnum.a, 2).fraction == Fraction(1, 4)
    assert kraft_sum(MachinesEnum.b, 1).fraction == Fraction(1, 2)


@pytest.mark.parametrize('machine', [MachinesEnum.a, MachinesEnum.b])
def test_kraft_monotonicity(machine):
    sums = [kraft_sum(machine, limit).fraction for limit in range(2, 21)]
    assert sums == sorted(sums)
    assert all(total <= 1 for total in sums)


def test_conditional_examples():
    report = conditional_kolmogorov('', '1011', 6)
    assert (report.value_bits, report.witness, report.status) == (3, '000', StatusEnum.exact)
    report = conditional_kolmogorov('111', '111', 9)
    assert (report.value_bits, report.witness) == (6, '100000')
    report = conditional_kolmogorov('111', '', 15)
    assert (report.value_bits, report.witness, report.status) == (12, '010010010000', StatusEnum.exact)


def test_mutual_information_examples():
    report = mutual_information('111', '111', 15)
    assert (report.k_x, report.k_x_given_y, report.information) == (12, 6, 6)
    assert mutual_information('', '101', 12).information == 0
    report = mutual_information('0110', '', 6)
    assert (report.k_x, report.k_x_given_y, report.information) == (3, 3, 0)


def test_self_information_and_conditional_dominance():
    xs = seeded_strings(100, 6, seed=7)
    ys = seeded_strings(100, 6, seed=11)
    for x, y in zip(xs, ys):
        limit = literal_bound(MachinesEnum.acond, len(x))
        alone = conditional_kolmogorov(x, '', limit)
        itself = conditional_kolmogorov(x, x, limit)
        given = conditional_kolmogorov(x, y, limit)
        assert itself.value_bits <= 6
        assert given.value_bits <= alone.value_bits
        assert alone.value_bits - itself.value_bits >= 0


def test_conditional_requires_aux():
    with pytest.raises(AuxiliaryInputError):
        kolmogorov('1', MachinesEnum.acond, 6)
    with pytest.raises(AuxiliaryInputError):
        enumerate_halting(MachinesEnum.acond, 6)


def test_complexity_table_examples():
    table = complexity_table(MachinesEnum.a, 2, 8)
    assert [report.value_bits for report in table.values()] == [6, 6, 6, 6]
    table = complexity_table(MachinesEnum.a, 1, 4)
    assert table['0'].value_bits == table['1'].value_bits == 4


def test_count_compressible_examples():
    assert count_compressible(MachinesEnum.a, 6, 2) == 0
    assert count_compressible(MachinesEnum.a, 7, 2) == 4
    assert count_compressible(MachinesEnum.a, 1, 0) == 0


def test_count_compressible_needs_exact_values():
    with pytest.raises(RequiresExact):
        count_compressible(MachinesEnum.a, 8, 3, limit=6)


def test_counting_bound():
    for n in range(1, 9):
        table = complexity_table(MachinesEnum.a, n, 2 * n + 2)
        assert all(report.exact for report in table.values())
        for m in range(19):
            assert sum(1 for report in table.values() if report.value_bits < m) < 2 ** m


def test_count_below_over_all_outputs():
    program_table = enumerate_halting(MachinesEnum.a, 14)
    for m in range(15):
        assert count_below(program_table, m) < 2 ** m


def test_invariance_constant():
    report = invariance_constant(6)
    assert 0 <= report.constant <= 8
    assert len(report.argmax) <= 6


def test_probability_complexity_link():
    for x in (''.join(bits) for n in range(5) for bits in itertools.product('01', repeat=n)):
        k = kolmogorov(x, MachinesEnum.a, literal_bound(MachinesEnum.a, len(x))).value_bits
        accumulator = algorithmic_probability(x, MachinesEnum.a, k + 8)
        assert accumulator.fraction >= Fraction(1, 2 ** k)
        assert -accumulator.log2() <= k
        assert k + accumulator.log2() <= 2


def test_expected_complexity_against_entropy():
    table = complexity_table(MachinesEnum.a, 8, 18)
    expected = math.fsum(report.value_bits for report in table.values()) / 256
    assert 8 <= expected <= 18


def test_shortest_programs():
    assert shortest_programs('000', MachinesEnum.a, 8) == ['01010100', '01110100']
    accumulator = shortest_program_probability('000', MachinesEnum.a, 8)
    assert accumulator.text == '1/2^7'
    assert accumulator.fraction <= algorithmic_probability('000', MachinesEnum.a, 8).fraction


def test_randomness_deficiency():
    report = randomness_deficiency('10101010', MachinesEnum.a)
    assert (report.k, report.literal_bits, report.deficiency) == (10, 18, 8)
    assert randomness_deficiency('', MachinesEnum.a).deficiency == 0


def test_work_budget():
    with override_settings(AIT_WORK_BUDGET=2 ** 10):
        with pytest.raises(WorkBudgetExceeded):
            enumerate_halting(MachinesEnum.a, 10)
        enumerate_halting(MachinesEnum.a, 9)


@pytest.mark.parametrize('machine, aux', [(MachinesEnum.a, None), (MachinesEnum.b, None), (MachinesEnum.acond, '10')])
def test_workers_give_identical_tables(machine, aux):
    sequential = enumerate_halting(machine, 14, aux=aux, workers=1)
    complexity.cache.clear()
    partitioned = enumerate_halting(machine, 14, aux=aux, workers=4)
    assert sequential == partitioned


def test_cache_file_roundtrip():
    program_table = enumerate_halting(MachinesEnum.acond, 12, aux='01')
    stream = io.StringIO()
    complexity.dump_table(program_table, stream)
    loaded = complexity.load_table(io.StringIO(stream.getvalue()))
    assert loaded.entries == program_table.entries
    assert (loaded.machine, loaded.limit, loaded.aux) == (MachinesEnum.acond, 12, '01')


def test_corrupted_cache_file():
    stream = io.StringIO()
    complexity.dump_table(enumerate_halting(MachinesEnum.a, 8), stream)
    lines = stream.getvalue().splitlines(keepends=True)

    wrong_output = lines[:1] + [lines[1].replace('\t', '\t1')] + lines[2:]
    with pytest.raises(MalformedCache):
        complexity.load_table(wrong_output)

    with pytest.raises(MalformedCache):
        complexity.load_table([lines[0]] + list(reversed(lines[1:])))
    with pytest.raises(MalformedCache):
        complexity.load_table(['machine=A limit=x aux=-\n'])
    with pytest.raises(MalformedCache):
        complexity.load_table([])
    with pytest.raises(MalformedCache):
        complexity.load_table(['machine=A limit=2 aux=-\n', '0100\t0\n'])
