"""
Toy prefix machines
====================================
Bit-exact interpreters for three tiny total machines

A program is exactly the bits consumed before HALT, so the set of halting programs of every
machine is prefix-free by construction. There are no loops or jumps, so every run ends after at
most one instruction per shortest codeword.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .conf import get_setting
from .exceptions import AuxiliaryInputError, UnknownMachine
from .signatures import (
    BitString, ExecutionOutcome, HaltedEarly, HaltedExact, InstructionsEnum, MachinesEnum, OutOfBits,
    OutputCapExceeded, StepLimits
)
from .utils import bits, first_prefix_violation


@dataclass(frozen=True)
class OpcodeTable:
    machine: str  #: :class:`MachinesEnum`
    codewords: Tuple[Tuple[BitString, str], ...]  #: (codeword, instruction) in lexicographic order
    accepts_aux: bool = False  #: Only Acond reads an auxiliary input

    @property
    def lookup(self) -> dict:
        return dict(self.codewords)

    @property
    def max_length(self) -> int:
        return max(len(codeword) for codeword, _ in self.codewords)

    @property
    def min_length(self) -> int:
        return min(len(codeword) for codeword, _ in self.codewords)

    def codeword(self, instruction: str) -> BitString:
        return next(codeword for codeword, op in self.codewords if op == instruction)

    def decode(self, program: BitString, cursor: int) -> Optional[Tuple[str, int]]:
        lookup = _LOOKUPS[self.machine]
        word = ''
        for position in range(cursor, min(len(program), cursor + self.max_length)):
            word += program[position]
            instruction = lookup.get(word)
            if instruction:
                return instruction, position + 1
        return None


MACHINES = {
    MachinesEnum.a: OpcodeTable(
        machine=MachinesEnum.a,
        codewords=(
            ('00', InstructionsEnum.halt),
            ('01', InstructionsEnum.out0),
            ('10', InstructionsEnum.out1),
            ('11', InstructionsEnum.dbl),
        ),
    ),
    MachinesEnum.b: OpcodeTable(
        machine=MachinesEnum.b,
        codewords=(
            ('0', InstructionsEnum.halt),
            ('10', InstructionsEnum.out0),
            ('110', InstructionsEnum.out1),
            ('111', InstructionsEnum.dbl),
        ),
    ),
    MachinesEnum.acond: OpcodeTable(
        machine=MachinesEnum.acond,
        codewords=(
            ('000', InstructionsEnum.halt),
            ('001', InstructionsEnum.out0),
            ('010', InstructionsEnum.out1),
            ('011', InstructionsEnum.dbl),
            ('100', InstructionsEnum.cpyall),
            ('101', InstructionsEnum.cpy1),
            ('110', InstructionsEnum.invalid),
            ('111', InstructionsEnum.invalid),
        ),
        accepts_aux=True,
    ),
}

_LOOKUPS = {machine: table.lookup for machine, table in MACHINES.items()}


def opcode_table(machine: str) -> OpcodeTable:
    try:
        return MACHINES[machine]
    except KeyError:
        raise UnknownMachine(f'Unknown machine {machine!r}, expected one of {", ".join(MachinesEnum.all)}')


def is_prefix_free(table: OpcodeTable) -> bool:
    return first_prefix_violation([codeword for codeword, _ in table.codewords]) is None


def default_limits() -> StepLimits:
    return StepLimits(max_output_bits=get_setting('AIT_MAX_OUTPUT_BITS'))


def check_aux(table: OpcodeTable, aux: Optional[BitString]):
    if table.accepts_aux and aux is None:
        raise AuxiliaryInputError(f'Machine {table.machine} needs an auxiliary input, pass "" for none')
    if not table.accepts_aux and aux is not None:
        raise AuxiliaryInputError(f'Machine {table.machine} takes no auxiliary input')


def execute(instruction: str, output: BitString, aux: Optional[BitString], aux_cursor: int):
    """
    Apply one non-HALT instruction

    Returns the new (output, aux_cursor), or None when CPY1 reads past the end of aux
    """
    if instruction == InstructionsEnum.out0:
        return output + '0', aux_cursor
    if instruction == InstructionsEnum.out1:
        return output + '1', aux_cursor
    if instruction == InstructionsEnum.dbl:
        return output + output, aux_cursor
    if instruction == InstructionsEnum.cpyall:
        return output + aux, aux_cursor
    if instruction == InstructionsEnum.cpy1:
        if aux_cursor >= len(aux):
            return None
        return output + aux[aux_cursor], aux_cursor + 1
    raise ValueError(f'{instruction} is not executable')


def decode_next(machine: str, program: BitString, cursor: int) -> Optional[Tuple[str, int]]:
    """(instruction, new cursor), or None when the remaining bits complete no codeword"""
    if not 0 <= cursor <= len(program):
        raise ValueError(f'Cursor {cursor} outside program of {len(program)} bits')
    return opcode_table(machine).decode(program, cursor)


def run(machine: str, program: BitString, limits: StepLimits = None, aux: BitString = None) -> ExecutionOutcome:
    """
    Interpret program on machine, reading codewords left to right on demand

    HALT after exactly |program| bits is the only way to get :class:`HaltedExact`
    """
    table = opcode_table(machine)
    check_aux(table, aux)
    program = bits(program)
    cap = (limits or default_limits()).max_output_bits

    output, cursor, ops, aux_cursor = '', 0, 0, 0
    while True:
        decoded = table.decode(program, cursor)
        if decoded is None:
            return OutOfBits(bits_consumed=len(program))
        instruction, cursor = decoded
        ops += 1
        if instruction == InstructionsEnum.halt:
            if cursor == len(program):
                return HaltedExact(output=output, ops_executed=ops)
            return HaltedEarly(bits_consumed=cursor)
        if instruction == InstructionsEnum.invalid:
            return OutOfBits(bits_consumed=cursor, reason='invalid-opcode')
        executed = execute(instruction, output, aux, aux_cursor)
        if executed is None:
            return OutOfBits(bits_consumed=cursor, reason='aux-exhausted')
        output, aux_cursor = executed
        if len(output) > cap:
            return OutputCapExceeded(ops_executed=ops)


def is_valid_program(machine: str, candidate: BitString, limits: StepLimits = None,
                     aux: BitString = None) -> Tuple[bool, ExecutionOutcome]:
    outcome = run(machine, candidate, limits=limits, aux=aux)
    return isinstance(outcome, HaltedExact), outcome


def literal_program(machine: str, x: BitString) -> BitString:
    """OUT per bit of x, then HALT"""
    table = opcode_table(machine)
    out = {'0': table.codeword(InstructionsEnum.out0), '1': table.codeword(InstructionsEnum.out1)}
    return ''.join(out[bit] for bit in bits(x)) + table.codeword(InstructionsEnum.halt)


def literal_bound(machine: str, n: int) -> int:
    """Longest literal program over every x of length n, a search limit that always ends Exact"""
    table = opcode_table(machine)
    widest = max(len(table.codeword(InstructionsEnum.out0)), len(table.codeword(InstructionsEnum.out1)))
    return n * widest + len(table.codeword(InstructionsEnum.halt))
