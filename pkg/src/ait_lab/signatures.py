from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Any

BitString = str  #: Bits as '0'/'1' text, '' is the empty string


class Payload:
    """Base for every report, serialize() keeps field order so JSON output is stable"""

    def __str__(self):
        return self.to_json()

    @staticmethod
    def serialize_value(value: Any):
        if isinstance(value, Payload):
            return value.serialize()
        if isinstance(value, Fraction):
            return f'{value.numerator}/{value.denominator}'
        if isinstance(value, float) and math.isinf(value):
            return 'inf'
        if isinstance(value, (list, tuple)):
            return [Payload.serialize_value(item) for item in value]
        if isinstance(value, dict):
            return {key: Payload.serialize_value(item) for key, item in value.items()}
        return value

    def serialize(self) -> dict:
        return {field.name: self.serialize_value(getattr(self, field.name)) for field in dataclasses.fields(self)}

    def to_json(self) -> str:
        return json.dumps(self.serialize(), separators=(',', ':'))


class ErrorPayload:
    """List of error payload signatures, written to the diagnostic stream"""

    @dataclass
    class DomainError(Payload):
        message: str  #: What was wrong with the input
        error: str = 'domain'

    @dataclass
    class ResourceError(Payload):
        message: str  #: Which budget was exceeded
        error: str = 'resource'

    @dataclass
    class UsageError(Payload):
        message: str  #: Argument problem
        error: str = 'usage'

    @dataclass
    class SomethingWrong(Payload):
        error_text: str  #: Text of error
        error_hash: str  #: Hash of error
        message: str = 'Something wrong'  #: Error message
        error: str = 'internal'


class InstructionsEnum:
    """Toy machine instruction set"""
    halt = 'HALT'  #: Stop, the program is exactly the bits read so far
    out0 = 'OUT0'  #: Append 0
    out1 = 'OUT1'  #: Append 1
    dbl = 'DBL'  #: Replace output O with O·O
    cpy1 = 'CPY1'  #: Append the next unread auxiliary bit
    cpyall = 'CPYALL'  #: Append the whole auxiliary input
    invalid = 'INVALID'  #: Reserved codeword, program rejected


class MachinesEnum:
    """Available toy prefix machines"""
    a = 'A'  #: Uniform 2-bit opcodes
    b = 'B'  #: Variable-length opcodes
    acond = 'Acond'  #: 3-bit opcodes with auxiliary input

    all = (a, b, acond)


class StatusEnum:
    """Exactness of a complexity search"""
    exact = 'Exact'  #: Every shorter program was enumerated
    upper_bound = 'UpperBound'  #: Witness is valid but not certified shortest
    no_program_within = 'NoProgramWithin'  #: Nothing within limit, certifies K > limit


@dataclass(frozen=True)
class StepLimits(Payload):
    max_output_bits: int = 2 ** 20  #: Runs whose output grows past this are cut off

    def __post_init__(self):
        if self.max_output_bits < 1:
            raise ValueError('max_output_bits must be at least 1')


class ExecutionOutcome(Payload):
    """Result of interpreting a program on a toy machine"""
    halted = False

    def serialize(self) -> dict:
        return {'outcome': self.__class__.__name__, **super().serialize()}


@dataclass(frozen=True)
class HaltedExact(ExecutionOutcome):
    output: BitString  #: Output bits
    ops_executed: int  #: Instructions executed including HALT
    halted = True


@dataclass(frozen=True)
class HaltedEarly(ExecutionOutcome):
    bits_consumed: int  #: HALT was decoded here, before the end of the program


@dataclass(frozen=True)
class OutOfBits(ExecutionOutcome):
    bits_consumed: int  #: Where decoding stopped
    reason: str = 'program-exhausted'  #: program-exhausted, aux-exhausted or invalid-opcode


@dataclass(frozen=True)
class OutputCapExceeded(ExecutionOutcome):
    ops_executed: int  #: Instructions executed when the cap was hit


@dataclass(frozen=True)
class ProgramTable(Payload):
    """Every HaltedExact program up to limit, in (length, lexicographic) order"""
    machine: str
    limit: int
    aux: Optional[BitString]
    entries: Tuple[Tuple[BitString, BitString], ...]
    capped: int = 0  #: Programs dropped because they hit the output cap
    max_output_bits: int = 2 ** 20

    def shortest(self) -> dict:
        """First (shortest, lex-minimal) program for every output"""
        index = {}
        for program, output in self.entries:
            index.setdefault(output, program)
        return index

    def programs_for(self, output: BitString):
        return [program for program, out in self.entries if out == output]


@dataclass(frozen=True)
class ComplexityReport(Payload):
    value_bits: Optional[int]  #: K in bits, None when nothing was found
    witness: Optional[BitString]  #: Program reaching value_bits
    status: str  #: :class:`StatusEnum`
    search_limit: int  #: Longest program length searched
    target: BitString = ''

    @property
    def exact(self) -> bool:
        return self.status == StatusEnum.exact

    @property
    def status_text(self) -> str:
        if self.status == StatusEnum.no_program_within:
            return f'{self.status}({self.search_limit})'
        return self.status


@dataclass(frozen=True)
class ProbabilityAccumulator(Payload):
    """Exact dyadic partial sum numerator / 2^exponent"""
    numerator: int
    exponent: int
    limit: int

    @classmethod
    def from_lengths(cls, lengths, limit: int) -> 'ProbabilityAccumulator':
        numerator = sum(1 << (limit - length) for length in lengths)
        return cls.reduced(numerator, limit, limit)

    @classmethod
    def reduced(cls, numerator: int, exponent: int, limit: int) -> 'ProbabilityAccumulator':
        while exponent > 0 and numerator and numerator % 2 == 0:
            numerator //= 2
            exponent -= 1
        if not numerator:
            exponent = 0
        return cls(numerator=numerator, exponent=exponent, limit=limit)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    @property
    def text(self) -> str:
        return f'{self.numerator}/2^{self.exponent}'

    @property
    def decimal(self) -> str:
        """Exact decimal expansion, finite for every dyadic rational"""
        if self.exponent == 0:
            return str(self.numerator)
        scaled = str(self.numerator * 5 ** self.exponent).rjust(self.exponent + 1, '0')
        return f'{scaled[:-self.exponent]}.{scaled[-self.exponent:]}'

    def log2(self) -> float:
        if not self.numerator:
            return -math.inf
        return math.log2(self.numerator) - self.exponent

    def serialize(self) -> dict:
        return {'probability': self.text, 'decimal': self.decimal, 'limit': self.limit}


@dataclass(frozen=True)
class InfoReport(Payload):
    k_x: Optional[int]  #: K(x/ε) on Acond
    k_x_given_y: Optional[int]  #: K(x/y) on Acond
    information: Optional[int]  #: k_x - k_x_given_y, None unless both searches found programs
    status_x: str
    status_x_given_y: str


@dataclass(frozen=True)
class DeficiencyReport(Payload):
    k: int  #: K(x)
    literal_bits: int  #: Length of the OUT-per-bit program
    deficiency: int  #: literal_bits - k


@dataclass(frozen=True)
class InvarianceReport(Payload):
    constant: int  #: max |K_1(x) - K_2(x)|
    argmax: BitString  #: First x reaching it in (length, lex) order
    machines: Tuple[str, str]
    n_max: int


@dataclass(frozen=True)
class CodeBook(Payload):
    codewords: Tuple[Tuple[str, BitString], ...]  #: (symbol, codeword) in input order
    lengths: Tuple[Tuple[str, int], ...]  #: Declared lengths ⌈log2 1/p⌉

    def __getitem__(self, symbol: str) -> BitString:
        return dict(self.codewords)[symbol]

    @property
    def symbols(self):
        return [symbol for symbol, _ in self.codewords]


@dataclass(frozen=True)
class KraftReport(Payload):
    sum: Fraction
    satisfied: bool


@dataclass(frozen=True)
class PrefixReport(Payload):
    prefix_free: bool
    violating_pair: Optional[Tuple[BitString, BitString]] = None


@dataclass(frozen=True)
class ModelSet(Payload):
    """Finite set model inside {0,1}^n"""
    n: int
    members: Tuple[BitString, ...]  #: Sorted lexicographically

    @classmethod
    def of(cls, n: int, members) -> 'ModelSet':
        return cls(n=n, members=tuple(sorted(set(members))))

    def __post_init__(self):
        if not self.members:
            raise ValueError('A model set needs at least one member')
        if any(len(member) != self.n for member in self.members):
            raise ValueError(f'Every member must have length {self.n}')

    def __contains__(self, x: BitString) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    @property
    def bitmap(self) -> BitString:
        """Indicator over the lexicographic order of {0,1}^n"""
        members = set(self.members)
        return ''.join('1' if x in members else '0' for x in universe(self.n))

    def serialize(self) -> dict:
        return {'n': self.n, 'bitmap': self.bitmap, 'members': list(self.members)}


@dataclass(frozen=True)
class StructurePoint(Payload):
    alpha: int
    h: float  #: log2 |S| or inf
    witness: Optional[ModelSet]
    status: str = StatusEnum.exact  #: UpperBound when the curve was built in bounded mode

    @property
    def finite(self) -> bool:
        return not math.isinf(self.h)

    @property
    def size(self) -> Optional[int]:
        return len(self.witness) if self.witness else None

    def serialize(self) -> dict:
        return {
            'alpha': self.alpha,
            'h': self.serialize_value(self.h),
            'witness': self.witness.bitmap if self.witness else None,
            'status': self.status,
        }


@dataclass(frozen=True)
class TwoPartReport(Payload):
    model_bits: int  #: K_A(bitmap(S))
    data_bits: int  #: ⌈log2 |S|⌉
    total: int
    index: int  #: Rank of x inside S


@dataclass(frozen=True)
class MssReport(Payload):
    found: bool
    alpha_star: Optional[int]
    h_at: Optional[float]
    sophistication: Optional[int]
    slack_used: int
    k_x: int
    witness: Optional[ModelSet] = None


@dataclass(frozen=True)
class RandomnessReport(Payload):
    k_x: int
    curve: Tuple[StructurePoint, ...]
    alpha_star: Optional[int]
    h_at: Optional[float]
    labels: Tuple[str, ...]


@dataclass(frozen=True)
class Lz78Token(Payload):
    index: int  #: Dictionary reference, 0 is the empty phrase
    literal: Optional[int] = None  #: Byte value, absent only in the final token


@dataclass(frozen=True)
class EstimateReport(Payload):
    input_bytes: int
    encoded_bits: int
    phrase_count: int
    upper_bound_bits: int


@dataclass(frozen=True)
class CompareReport(Payload):
    bound_x: int
    bound_y: int
    difference: int
    ratio: Optional[float]


@dataclass(frozen=True)
class InformationEstimate(Payload):
    bound_x: int
    bound_yx: int
    bound_y: int
    information: int  #: bound_x - (bound_yx - bound_y)


def universe(n: int):
    """All n-bit strings in lexicographic order"""
    if n == 0:
        return ['']
    return [format(i, f'0{n}b') for i in range(1 << n)]
