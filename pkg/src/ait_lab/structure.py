"""
Structure
====================================
Kolmogorov structure function over finite-set models of {0,1}^n

A model is encoded as its 2^n-bit indicator bitmap and its complexity is measured on machine A.
Exact mode brute-forces every subset containing x, which stays cheap up to n = 3. Bounded mode
reaches one step further by accepting literal-program upper bounds for bitmaps the search budget
cannot certify.
"""

from __future__ import annotations

import logging
import math
from typing import Dict, List, Optional, Tuple

from .complexity import check_budget, enumerate_halting, kolmogorov
from .conf import get_setting
from .exceptions import MembershipError, RequiresExact, ScaleError
from .machines import literal_bound
from .signatures import (
    BitString, MachinesEnum, ModelSet, MssReport, RandomnessReport, StatusEnum, StepLimits, StructurePoint,
    TwoPartReport, universe
)
from .utils import Xorshift64Star, bits

logger = logging.getLogger(__name__)


class LabelsEnum:
    """Randomness labels, heuristic and configurable through AIT_RANDOMNESS_THRESHOLDS"""
    positive = 'positive-sense-candidate'  #: Typical element of a cheap large set
    negative = 'negative-sense-candidate'  #: Needs a model almost as complex as x itself
    structured = 'structured'  #: Neither
    unresolved = 'no-sufficient-statistic'  #: Slack too small for any model to qualify


def bitmap_encode(s: ModelSet) -> BitString:
    """Indicator of s over the lexicographic order of {0,1}^n"""
    return s.bitmap


def bitmap_decode(bitmap: BitString, n: int) -> ModelSet:
    bitmap = bits(bitmap)
    if len(bitmap) != 1 << n:
        raise MembershipError(f'A bitmap over {{0,1}}^{n} has {1 << n} bits, got {len(bitmap)}')
    return ModelSet.of(n, [x for x, bit in zip(universe(n), bitmap) if bit == '1'])


def _max_search_limit() -> int:
    return get_setting('AIT_WORK_BUDGET').bit_length() - 2


def _check_scale(n: int, bounded: bool):
    if n > get_setting('AIT_STRUCTURE_EXACT_MAX_N') and not bounded:
        raise ScaleError(f'Exact structure functions stop at n = {get_setting("AIT_STRUCTURE_EXACT_MAX_N")}, '
                         f'ask for bounded mode for n = {n}')
    if 2 ** ((1 << n) - 1) > get_setting('AIT_WORK_BUDGET'):
        raise ScaleError(f'{2 ** ((1 << n) - 1)} subsets for n = {n} exceed the work budget')


def bitmap_complexities(n: int, limit: int = None, bounded: bool = False,
                        workers: int = None) -> Dict[BitString, Tuple[int, str]]:
    """
    (K_A, status) for bitmaps over {0,1}^n

    Bitmaps with no program within limit have K_A > limit and are left out, unless bounded mode
    stands in their literal program length as an UpperBound.
    """
    width = 1 << n
    if limit is None:
        limit = literal_bound(MachinesEnum.a, width)
    if bounded:
        limit = min(limit, _max_search_limit())
    check_budget(limit)
    shortest = enumerate_halting(MachinesEnum.a, limit, limits=StepLimits(width), workers=workers).shortest()

    complexities = {}
    for i in range(1, 1 << width):
        bitmap = format(i, f'0{width}b')
        program = shortest.get(bitmap)
        if program is not None:
            complexities[bitmap] = len(program), StatusEnum.exact
        elif bounded:
            complexities[bitmap] = literal_bound(MachinesEnum.a, width), StatusEnum.upper_bound
    return complexities


def _subsets_containing(x: BitString, n: int) -> List[BitString]:
    """Bitmaps of every subset of {0,1}^n containing x, lexicographic order"""
    width = 1 << n
    position = int(x, 2) if n else 0
    others = [i for i in range(width) if i != position]
    bitmaps = []
    for mask in range(1 << len(others)):
        row = ['0'] * width
        row[position] = '1'
        for bit, index in enumerate(others):
            if mask >> bit & 1:
                row[index] = '1'
        bitmaps.append(''.join(row))
    bitmaps.sort()
    return bitmaps


def _shuffled(items: List[BitString], seed: int) -> List[BitString]:
    rng = Xorshift64Star(seed)
    items = list(items)
    for i in range(len(items) - 1, 0, -1):
        j = rng.below(i + 1)
        items[i], items[j] = items[j], items[i]
    return items


def _check_x(x: BitString, n: int) -> BitString:
    x = bits(x)
    if len(x) != n:
        raise MembershipError(f'x has {len(x)} bits, expected n = {n}')
    return x


def structure_function(x: BitString, n: int, limit: int = None, bounded: bool = False,
                       shuffle_seed: Optional[int] = None, workers: int = None) -> List[StructurePoint]:
    """
    h_x(alpha) = min log2|S| over sets S containing x with K_A(bitmap(S)) <= alpha

    One point per alpha from 0 to K_A(bitmap({x})), or to limit when the singleton needs more.
    Witnesses are (|S|, bitmap)-minimal, so the order subsets are visited in never changes the curve.
    """
    x = _check_x(x, n)
    _check_scale(n, bounded)
    complexities = bitmap_complexities(n, limit, bounded, workers)

    subsets = [bitmap for bitmap in _subsets_containing(x, n) if bitmap in complexities]
    if shuffle_seed is not None:
        subsets = _shuffled(subsets, shuffle_seed)

    candidates = sorted(
        (complexities[bitmap][0], bitmap.count('1'), bitmap) for bitmap in subsets
    )
    singleton = complexities.get(ModelSet.of(n, [x]).bitmap)
    alpha_max = singleton[0] if singleton else limit
    status = StatusEnum.exact
    if any(complexities[bitmap][1] != StatusEnum.exact for bitmap in subsets):
        status = StatusEnum.upper_bound
        logger.info('Structure function of %s is an upper bound, some bitmaps are not exact', x)

    curve, best, cursor = [], None, 0
    for alpha in range(alpha_max + 1):
        while cursor < len(candidates) and candidates[cursor][0] <= alpha:
            _, size, bitmap = candidates[cursor]
            if best is None or (size, bitmap) < best:
                best = (size, bitmap)
            cursor += 1
        if best is None:
            curve.append(StructurePoint(alpha=alpha, h=math.inf, witness=None, status=status))
        else:
            curve.append(StructurePoint(
                alpha=alpha, h=math.log2(best[0]), witness=bitmap_decode(best[1], n), status=status
            ))
    return curve


def two_part_code(x: BitString, s: ModelSet, workers: int = None) -> TwoPartReport:
    """Model bits K_A(bitmap(S)) plus ⌈log2|S|⌉ bits of index of x inside S"""
    x = bits(x)
    if x not in s:
        raise MembershipError(f'{x!r} is not a member of the model set')
    bitmap = s.bitmap
    report = kolmogorov(bitmap, MachinesEnum.a, literal_bound(MachinesEnum.a, len(bitmap)), workers)
    data_bits = (len(s) - 1).bit_length()
    return TwoPartReport(
        model_bits=report.value_bits,
        data_bits=data_bits,
        total=report.value_bits + data_bits,
        index=s.members.index(x),
    )


def _k_x(x: BitString, workers: int = None) -> int:
    report = kolmogorov(x, MachinesEnum.a, literal_bound(MachinesEnum.a, len(x)), workers)
    if not report.exact:
        raise RequiresExact(f'K_A({x!r}) is not exact')
    return report.value_bits


def _fits(point: StructurePoint, budget: int) -> bool:
    """alpha + log2|S| <= budget, compared on integers"""
    if not point.finite or budget < point.alpha:
        return False
    return point.size <= 1 << (budget - point.alpha)


def _sufficient(curve: List[StructurePoint], k_x: int, slack: int, n: int) -> MssReport:
    for point in curve:
        if _fits(point, k_x + slack):
            return MssReport(
                found=True, alpha_star=point.alpha, h_at=point.h, sophistication=point.alpha,
                slack_used=slack, k_x=k_x, witness=point.witness,
            )
    return MssReport(found=False, alpha_star=None, h_at=None, sophistication=None, slack_used=slack, k_x=k_x)


def minimal_sufficient_statistic(x: BitString, n: int, slack: int = None, limit: int = None, bounded: bool = False,
                                 workers: int = None) -> MssReport:
    """Least alpha whose two-part code is within slack of K_A(x)"""
    slack = get_setting('AIT_SLACK') if slack is None else slack
    curve = structure_function(x, n, limit=limit, bounded=bounded, workers=workers)
    return _sufficient(curve, _k_x(x, workers), slack, n)


def randomness_labels(curve: List[StructurePoint], k_x: int, mss: MssReport, n: int,
                      thresholds: dict = None) -> Tuple[str, ...]:
    """One label per string, positive takes precedence over negative"""
    thresholds = {**get_setting('AIT_RANDOMNESS_THRESHOLDS'), **(thresholds or {})}
    if not mss.found:
        return LabelsEnum.unresolved,
    cheapest = next(point.alpha for point in curve if point.finite)
    if mss.alpha_star - cheapest <= thresholds['positive_alpha_window'] \
            and mss.h_at >= n - thresholds['positive_h_margin']:
        return LabelsEnum.positive,
    if mss.alpha_star >= k_x - thresholds['negative_alpha_margin']:
        return LabelsEnum.negative,
    return LabelsEnum.structured,


def randomness_report(x: BitString, n: int, slack: int = None, thresholds: dict = None, limit: int = None,
                      bounded: bool = False, workers: int = None) -> RandomnessReport:
    """Curve, MSS and heuristic labels, the curve is the authoritative part"""
    slack = get_setting('AIT_SLACK') if slack is None else slack
    curve = structure_function(x, n, limit=limit, bounded=bounded, workers=workers)
    k_x = _k_x(x, workers)
    mss = _sufficient(curve, k_x, slack, n)
    return RandomnessReport(
        k_x=k_x,
        curve=tuple(curve),
        alpha_star=mss.alpha_star,
        h_at=mss.h_at,
        labels=randomness_labels(curve, k_x, mss, n, thresholds),
    )
