"""
Shannon
====================================
Entropy and Shannon-Fano codes over explicit finite distributions

Code lengths and Kraft sums are computed on exact rationals, entropy is a float.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, TextIO, Tuple, Union

from .exceptions import InvalidDistribution, SymbolMismatch
from .signatures import CodeBook, KraftReport, Payload, PrefixReport
from .utils import first_prefix_violation

TOLERANCE = 1e-9

Probability = Union[Fraction, float]


@dataclass(frozen=True)
class Distribution(Payload):
    entries: Tuple[Tuple[str, Probability], ...]  #: (symbol, probability) in input order

    def __post_init__(self):
        symbols = [symbol for symbol, _ in self.entries]
        if not symbols:
            raise InvalidDistribution('A distribution needs at least one symbol')
        if len(set(symbols)) != len(symbols):
            raise InvalidDistribution('Symbols must be unique')
        for symbol, probability in self.entries:
            if not probability > 0:
                raise InvalidDistribution(f'Probability of {symbol!r} must be positive, got {probability}')
        total = sum(Fraction(probability) for _, probability in self.entries)
        if abs(total - 1) > TOLERANCE:
            raise InvalidDistribution(f'Probabilities sum to {float(total)}, not 1')

    @classmethod
    def of(cls, mapping) -> 'Distribution':
        return cls(entries=tuple(mapping.items()))

    @classmethod
    def uniform(cls, symbols: Iterable[str]) -> 'Distribution':
        symbols = list(symbols)
        return cls(entries=tuple((symbol, Fraction(1, len(symbols))) for symbol in symbols))

    @property
    def exact(self) -> bool:
        """True when every probability came in as a fraction"""
        return all(isinstance(probability, Fraction) for _, probability in self.entries)

    @property
    def symbols(self):
        return [symbol for symbol, _ in self.entries]

    def probability(self, symbol: str) -> Probability:
        return dict(self.entries)[symbol]


def parse_probability(text: str) -> Probability:
    text = text.strip()
    try:
        if '/' in text:
            return Fraction(text)
        probability = float(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidDistribution(f'Not a probability: {text!r}')
    if not math.isfinite(probability):
        raise InvalidDistribution(f'Not a probability: {text!r}')
    return probability


def load_distribution(stream: TextIO) -> Distribution:
    """CSV with a ``symbol,probability`` header, fractions as ``num/den``"""
    reader = csv.DictReader(stream)
    if reader.fieldnames is None or [name.strip() for name in reader.fieldnames] != ['symbol', 'probability']:
        raise InvalidDistribution('Distribution file needs the header symbol,probability')
    entries = []
    for row in reader:
        if None in row.values():
            raise InvalidDistribution(f'Short row: {row}')
        entries.append((row['symbol'], parse_probability(row['probability'])))
    return Distribution(entries=tuple(entries))


def entropy(d: Distribution) -> float:
    """H(d) = -sum p log2 p in bits"""
    h = -math.fsum(float(p) * math.log2(float(p)) for _, p in d.entries)
    return max(h, 0.0) + 0.0


def code_length(p: Probability) -> int:
    """⌈log2 1/p⌉, exact for every rational p"""
    q = Fraction(p)
    length = 0
    while q * (1 << length) < 1:
        length += 1
    return length


def shannon_fano(d: Distribution) -> CodeBook:
    """
    Shannon-Fano lengths with canonical codewords

    Symbols sorted by (length, input order) get lexicographically increasing codewords.
    """
    lengths = [code_length(p) for _, p in d.entries]
    order = sorted(range(len(lengths)), key=lambda i: (lengths[i], i))
    codewords = [''] * len(lengths)
    code, previous = 0, lengths[order[0]]
    for i in order:
        code <<= lengths[i] - previous
        codewords[i] = format(code, f'0{lengths[i]}b') if lengths[i] else ''
        code += 1
        previous = lengths[i]
    symbols = d.symbols
    return CodeBook(
        codewords=tuple(zip(symbols, codewords)),
        lengths=tuple(zip(symbols, lengths)),
    )


def expected_length(c: CodeBook, d: Distribution) -> float:
    if sorted(c.symbols) != sorted(d.symbols):
        raise SymbolMismatch('Code book and distribution have different symbols')
    codewords = dict(c.codewords)
    return math.fsum(float(p) * len(codewords[symbol]) for symbol, p in d.entries)


def kraft_check(c: CodeBook) -> KraftReport:
    total = sum((Fraction(1, 1 << len(codeword)) for _, codeword in c.codewords), Fraction(0))
    return KraftReport(sum=total, satisfied=total <= 1)


def prefix_free_check(c: CodeBook) -> PrefixReport:
    violation = first_prefix_violation([codeword for _, codeword in c.codewords])
    return PrefixReport(prefix_free=violation is None, violating_pair=violation)
