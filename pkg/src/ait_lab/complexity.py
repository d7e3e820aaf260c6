"""
Complexity
====================================
Exhaustive program enumeration and everything built on it

The machines are total, so a search that finds nothing within ``limit`` certifies ``K > limit``.
That is a desk-scale strengthening, no universal machine allows it. Every value here is relative
to one of the toy machines.
"""

from __future__ import annotations

import asyncio
import logging
from typing import Dict, Iterable, List, Optional, TextIO, Tuple

from asgiref.sync import async_to_sync, sync_to_async
from django.core.cache import cache

from .conf import get_setting
from .decorators import timed
from .exceptions import AuxiliaryInputError, MalformedCache, RequiresExact, UsageError, WorkBudgetExceeded
from .machines import check_aux, default_limits, execute, literal_bound, literal_program, opcode_table, run
from .signatures import (
    BitString, ComplexityReport, DeficiencyReport, HaltedExact, InfoReport, InstructionsEnum, InvarianceReport,
    MachinesEnum, ProbabilityAccumulator, ProgramTable, StatusEnum, StepLimits, universe
)
from .utils import bits, table_cache_key

logger = logging.getLogger(__name__)

State = Tuple[BitString, BitString, int]  #: (program prefix, output so far, aux cursor)

MAX_FRONTIER_DEPTH = 3


def check_budget(limit: int):
    if limit < 0:
        raise UsageError(f'Search limit must be non-negative, got {limit}')
    budget = get_setting('AIT_WORK_BUDGET')
    if 2 ** (limit + 1) > budget:
        raise WorkBudgetExceeded(
            f'Limit {limit} means {2 ** (limit + 1)} candidates, over the work budget of {budget}'
        )


def _expand(table, limit: int, cap: int, aux: Optional[BitString], state: State):
    """Children of one prefix: (halting entries, live states, number cut off by the output cap)"""
    program, output, aux_cursor = state
    halting, live, capped = [], [], 0
    for codeword, instruction in table.codewords:
        if len(program) + len(codeword) > limit:
            continue
        candidate = program + codeword
        if instruction == InstructionsEnum.halt:
            halting.append((candidate, output))
            continue
        if instruction == InstructionsEnum.invalid:
            continue
        executed = execute(instruction, output, aux, aux_cursor)
        if executed is None:
            continue
        if len(executed[0]) > cap:
            capped += 1
            continue
        live.append((candidate, executed[0], executed[1]))
    return halting, live, capped


def _walk(table, limit: int, cap: int, aux: Optional[BitString], roots: List[State]):
    entries, capped = [], 0
    stack = list(roots)
    while stack:
        halting, live, cut = _expand(table, limit, cap, aux, stack.pop())
        entries.extend(halting)
        stack.extend(live)
        capped += cut
    return entries, capped


def _partition(table, limit: int, cap: int, aux: Optional[BitString], workers: int):
    """Split the program tree into at least ``workers`` prefix subtrees where it is deep enough"""
    entries, capped = [], 0
    frontier = [('', '', 0)]
    depth = 0
    while frontier and len(frontier) < workers and depth < MAX_FRONTIER_DEPTH:
        next_frontier = []
        for state in frontier:
            halting, live, cut = _expand(table, limit, cap, aux, state)
            entries.extend(halting)
            next_frontier.extend(live)
            capped += cut
        frontier = next_frontier
        depth += 1
    buckets = [frontier[worker::workers] for worker in range(workers)]
    return entries, capped, [bucket for bucket in buckets if bucket]


async def _gather(table, limit: int, cap: int, aux: Optional[BitString], buckets):
    walk = sync_to_async(_walk, thread_sensitive=False)
    return await asyncio.gather(*(walk(table, limit, cap, aux, bucket) for bucket in buckets))


@timed
def _enumerate(table, limit: int, cap: int, aux: Optional[BitString], workers: int) -> ProgramTable:
    if workers > 1:
        entries, capped, buckets = _partition(table, limit, cap, aux, workers)
        logger.debug('Enumerating %s to %d bits over %d partitions', table.machine, limit, len(buckets))
        for found, cut in async_to_sync(_gather)(table, limit, cap, aux, buckets):
            entries.extend(found)
            capped += cut
    else:
        entries, capped = _walk(table, limit, cap, aux, [('', '', 0)])
    entries.sort(key=lambda entry: (len(entry[0]), entry[0]))
    return ProgramTable(
        machine=table.machine, limit=limit, aux=aux, entries=tuple(entries), capped=capped, max_output_bits=cap
    )


def enumerate_halting(machine: str, limit: int, limits: StepLimits = None, aux: BitString = None,
                      workers: int = None) -> ProgramTable:
    """
    Every HaltedExact program of length <= limit, in (length, lexicographic) order

    Output only grows, so a search for a given target can pass ``max_output_bits`` equal to the
    target length without losing any program that prints it.
    """
    table = opcode_table(machine)
    check_aux(table, aux)
    check_budget(limit)
    limits = limits or default_limits()
    workers = workers or get_setting('AIT_WORKERS')

    key = table_cache_key(machine, limit, limits.max_output_bits, aux)
    program_table = cache.get(key)
    if program_table is not None:
        logger.debug('Program table cache hit %s', key)
        return program_table
    program_table = _enumerate(table, limit, limits.max_output_bits, aux, workers)
    cache.set(key, program_table, get_setting('AIT_CACHE_TIMEOUT'))
    return program_table


def _target_limits(x: BitString) -> StepLimits:
    return StepLimits(max_output_bits=max(len(x), 1))


def _search(x: BitString, machine: str, limit: int, aux: Optional[BitString], workers: int = None) -> ComplexityReport:
    x = bits(x)
    program_table = enumerate_halting(machine, limit, limits=_target_limits(x), aux=aux, workers=workers)
    witness = program_table.shortest().get(x)
    if witness is None:
        return ComplexityReport(
            value_bits=None, witness=None, status=StatusEnum.no_program_within, search_limit=limit, target=x
        )
    return ComplexityReport(
        value_bits=len(witness), witness=witness, status=StatusEnum.exact, search_limit=limit, target=x
    )


def _unconditional(machine: str):
    if opcode_table(machine).accepts_aux:
        raise AuxiliaryInputError(f'Machine {machine} is conditional, use conditional_kolmogorov')


def kolmogorov(x: BitString, machine: str, limit: int, workers: int = None) -> ComplexityReport:
    """K_M(x), the length of a (length, lex)-minimal program printing x, searched up to limit"""
    _unconditional(machine)
    return _search(x, machine, limit, None, workers)


def kolmogorov_bounded(x: BitString, machine: str, limit: int, workers: int = None) -> ComplexityReport:
    """Like :func:`kolmogorov`, but falls back to the literal program as an UpperBound"""
    report = kolmogorov(x, machine, limit, workers)
    if report.witness is not None:
        return report
    witness = literal_program(machine, x)
    return ComplexityReport(
        value_bits=len(witness), witness=witness, status=StatusEnum.upper_bound, search_limit=limit, target=x
    )


def algorithmic_probability(x: BitString, machine: str, limit: int, workers: int = None) -> ProbabilityAccumulator:
    """Exact partial sum of 2^-|p| over every program of length <= limit printing x"""
    _unconditional(machine)
    x = bits(x)
    program_table = enumerate_halting(machine, limit, limits=_target_limits(x), workers=workers)
    return ProbabilityAccumulator.from_lengths((len(p) for p in program_table.programs_for(x)), limit)


def kraft_sum(machine: str, limit: int, workers: int = None) -> ProbabilityAccumulator:
    _unconditional(machine)
    program_table = enumerate_halting(machine, limit, workers=workers)
    return ProbabilityAccumulator.from_lengths((len(p) for p, _ in program_table.entries), limit)


def conditional_kolmogorov(x: BitString, y: BitString, limit: int, workers: int = None) -> ComplexityReport:
    """K(x/y) on Acond with y as the auxiliary input"""
    return _search(x, MachinesEnum.acond, limit, bits(y), workers)


def mutual_information(y: BitString, x: BitString, limit: int, workers: int = None) -> InfoReport:
    """I(y:x) = K(x/ε) - K(x/y), both terms on Acond so no machine constant sneaks in"""
    alone = conditional_kolmogorov(x, '', limit, workers)
    given = conditional_kolmogorov(x, y, limit, workers)
    information = None
    if alone.value_bits is not None and given.value_bits is not None:
        information = alone.value_bits - given.value_bits
    return InfoReport(
        k_x=alone.value_bits,
        k_x_given_y=given.value_bits,
        information=information,
        status_x=alone.status_text,
        status_x_given_y=given.status_text,
    )


def complexity_table(machine: str, n: int, limit: int, workers: int = None) -> Dict[BitString, ComplexityReport]:
    """ComplexityReport for every x in {0,1}^n, lexicographic order"""
    _unconditional(machine)
    program_table = enumerate_halting(machine, limit, limits=StepLimits(max(n, 1)), workers=workers)
    shortest = program_table.shortest()
    table = {}
    for x in universe(n):
        witness = shortest.get(x)
        if witness is None:
            table[x] = ComplexityReport(
                value_bits=None, witness=None, status=StatusEnum.no_program_within, search_limit=limit, target=x
            )
        else:
            table[x] = ComplexityReport(
                value_bits=len(witness), witness=witness, status=StatusEnum.exact, search_limit=limit, target=x
            )
    return table


def count_compressible(machine: str, m: int, n: int, limit: int = None, workers: int = None) -> int:
    """|{x in {0,1}^n : K(x) < m}|"""
    table = complexity_table(machine, n, limit if limit is not None else literal_bound(machine, n), workers)
    inexact = [x for x, report in table.items() if not report.exact]
    if inexact:
        raise RequiresExact(f'{len(inexact)} strings of length {n} have no exact K, raise the limit')
    return sum(1 for report in table.values() if report.value_bits < m)


def count_below(program_table: ProgramTable, m: int) -> int:
    """Distinct outputs of the table whose shortest program is shorter than m"""
    return sum(1 for program in program_table.shortest().values() if len(program) < m)


def shortest_programs(x: BitString, machine: str, limit: int, workers: int = None) -> List[BitString]:
    report = kolmogorov(x, machine, limit, workers)
    if not report.exact:
        return []
    program_table = enumerate_halting(machine, limit, limits=_target_limits(report.target), workers=workers)
    return [p for p in program_table.programs_for(report.target) if len(p) == report.value_bits]


def shortest_program_probability(x: BitString, machine: str, limit: int, workers: int = None) -> ProbabilityAccumulator:
    """(number of shortest programs) * 2^-K(x), a lower bound on the universal probability"""
    programs = shortest_programs(x, machine, limit, workers)
    return ProbabilityAccumulator.from_lengths((len(p) for p in programs), limit)


def randomness_deficiency(x: BitString, machine: str, limit: int = None, workers: int = None) -> DeficiencyReport:
    """How far the literal program is from the shortest one"""
    x = bits(x)
    literal_bits = len(literal_program(machine, x))
    report = kolmogorov(x, machine, limit if limit is not None else literal_bits, workers)
    if not report.exact:
        raise RequiresExact(f'K({x!r}) is not exact within {report.search_limit} bits')
    return DeficiencyReport(k=report.value_bits, literal_bits=literal_bits, deficiency=literal_bits - report.value_bits)


def invariance_constant(n_max: int, machine_1: str = MachinesEnum.a, machine_2: str = MachinesEnum.b,
                        workers: int = None) -> InvarianceReport:
    """max |K_1(x) - K_2(x)| over every x with |x| <= n_max, each machine searched to its literal bound"""
    constant, argmax = -1, ''
    for n in range(n_max + 1):
        first = complexity_table(machine_1, n, literal_bound(machine_1, n), workers)
        second = complexity_table(machine_2, n, literal_bound(machine_2, n), workers)
        for x in universe(n):
            gap = abs(first[x].value_bits - second[x].value_bits)
            if gap > constant:
                constant, argmax = gap, x
    return InvarianceReport(constant=constant, argmax=argmax, machines=(machine_1, machine_2), n_max=n_max)


def dump_table(program_table: ProgramTable, stream: TextIO):
    aux = program_table.aux if program_table.aux is not None else '-'
    stream.write(f'machine={program_table.machine} limit={program_table.limit} aux={aux}\n')
    for program, output in program_table.entries:
        stream.write(f'{program}\t{output}\n')


def _parse_header(line: str):
    try:
        fields = dict(part.split('=', 1) for part in line.split())
        machine, limit, aux = fields['machine'], int(fields['limit']), fields['aux']
    except (KeyError, ValueError):
        raise MalformedCache(f'Bad cache header: {line.strip()!r}')
    return machine, limit, None if aux == '-' else aux


def load_table(lines: Iterable[str]) -> ProgramTable:
    """Read a cache file back, re-running a deterministic 1% sample of its entries"""
    lines = iter(lines)
    header = next(lines, None)
    if header is None:
        raise MalformedCache('Empty cache file')
    machine, limit, aux = _parse_header(header)
    table = opcode_table(machine)
    try:
        check_aux(table, aux)
    except AuxiliaryInputError as err:
        raise MalformedCache(err.message)

    entries = []
    for number, line in enumerate(lines, start=2):
        line = line.rstrip('\n')
        if not line:
            continue
        program, sep, output = line.partition('\t')
        if not sep or program.strip('01') or output.strip('01'):
            raise MalformedCache(f'Bad cache entry on line {number}: {line!r}')
        entries.append((program, output))

    keys = [(len(program), program) for program, _ in entries]
    if keys != sorted(set(keys)):
        raise MalformedCache('Cache entries are not in (length, lexicographic) order')
    if any(len(program) > limit for program, _ in entries):
        raise MalformedCache(f'Cache holds programs longer than its limit {limit}')

    every = get_setting('AIT_CACHE_SAMPLE_EVERY')
    for program, output in entries[::every]:
        outcome = run(machine, program, aux=aux)
        if not isinstance(outcome, HaltedExact) or outcome.output != output:
            logger.warning('Cache entry %s does not reproduce: %s', program, outcome.to_json())
            raise MalformedCache(f'Cache entry {program} does not reproduce output {output!r}')
    return ProgramTable(machine=machine, limit=limit, aux=aux, entries=tuple(entries),
                        max_output_bits=get_setting('AIT_MAX_OUTPUT_BITS'))
