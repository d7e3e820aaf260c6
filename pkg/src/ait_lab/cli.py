"""
Command line: ait
====================================
One entry point for every lab operation

Subcommands are the nested :class:`SimpleCommand` classes of :class:`LabConsole`, named after the
class (``LzEncode`` is ``ait lz-encode``). Data goes to stdout as compact JSON, or TSV with
``--tsv``; errors go to stderr as an error payload and set the exit code.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from inspect import isclass
from pathlib import Path
from typing import Iterable, List, Optional

from . import complexity, estimator, shannon, structure
from .conf import get_setting, setup
from .decorators import safe
from .exceptions import InvalidDistribution, MalformedCache, UsageError
from .machines import literal_bound
from .signatures import MachinesEnum, Payload
from .utils import bits, bits_to_bytes, bytes_to_bits, camel_to_kebab, hex_to_bits

FLAGS = {
    'machine': (('--machine',), dict(choices=MachinesEnum.all, default=MachinesEnum.a)),
    'string': (('--string',), dict(default=None, help='Bits for machine commands, text for byte commands')),
    'file': (('--file',), dict(default=None, help='Input path, - for standard input')),
    'aux': (('--aux',), dict(default='', help='Auxiliary input y as bits')),
    'limit': (('--limit',), dict(type=int, default=None, help='Longest program length searched')),
    'n': (('--n',), dict(type=int, default=None)),
    'slack': (('--slack',), dict(type=int, default=None)),
    'dist': (('--dist',), dict(default=None, help='CSV with a symbol,probability header')),
    'save': (('--save',), dict(default=None)),
    'load': (('--load',), dict(default=None)),
    'seed': (('--seed',), dict(type=int, default=None)),
    'other': (('--other',), dict(default=None, help='Second input for compare')),
    'c_dec': (('--c-dec',), dict(type=int, default=0, help='Decompressor constant in bits')),
    'bounded': (('--bounded',), dict(action='store_true', help='Accept UpperBound complexities')),
}


class LabArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f'{self.prog}: {message}')


class SimpleCommand:
    arguments = ()  #: Names from FLAGS this command accepts
    hidden = False  #: Hidden commands are not exposed on the command line
    help = ''  #: One line shown by ait --help

    def __init__(self, console: LabConsole, options: argparse.Namespace):
        self.console = console
        self.options = options

    def handle(self):
        """Run the operation and return a Payload or a plain dict"""
        raise NotImplementedError

    def rows(self, result) -> Iterable[Iterable]:
        """TSV rows, one key/value pair per line unless overridden"""
        return self.console.serialize(result).items()

    def fire(self):
        result = self.handle()
        if self.options.tsv:
            self.console.send_tsv(self.rows(result))
        else:
            self.console.send_json(self.console.serialize(result))

    def length(self, default: int = None) -> Optional[int]:
        n = self.options.n if self.options.n is not None else default
        if n is not None and n < 0:
            raise UsageError(f'--n must be non-negative, got {n}')
        return n

    @property
    def workers(self) -> int:
        return self.options.workers or get_setting('AIT_WORKERS')

    def input_bits(self) -> str:
        if self.options.string is not None:
            return hex_to_bits(self.options.string) if self.options.hex else bits(self.options.string)
        if getattr(self.options, 'file', None):
            return bits(self.console.read_bytes(self.options.file).decode('ascii', 'replace').strip())
        raise UsageError('Pass the input with --string or --file')

    def input_bytes(self, default: bytes = None) -> bytes:
        if self.options.string is not None:
            if self.options.hex:
                return bytes.fromhex(self.options.string)
            return self.options.string.encode('utf-8')
        if getattr(self.options, 'file', None):
            return self.console.read_bytes(self.options.file)
        if default is not None:
            return default
        raise UsageError('Pass the input with --string or --file')

    def unconditional_machine(self) -> str:
        if self.options.machine == MachinesEnum.acond:
            raise UsageError('Machine Acond is conditional, use ait cond')
        return self.options.machine


class LabConsole:
    prog = 'ait'

    def __init__(self, stdout=None, stderr=None, stdin=None):
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr
        self.stdin = stdin

    def commands(self) -> dict:
        attributes = [attr for attr in dir(self) if not attr.startswith('_')]
        classes = [getattr(self, attr) for attr in attributes if isclass(getattr(self, attr))]
        return {
            camel_to_kebab(command.__name__): command
            for command in classes if issubclass(command, SimpleCommand) and not command.hidden
        }

    def parser(self) -> LabArgumentParser:
        parser = LabArgumentParser(prog=self.prog, description='Desk-scale algorithmic information theory lab')
        subparsers = parser.add_subparsers(dest='command', metavar='<subcommand>')
        subparsers.required = True
        for name, command in self.commands().items():
            subparser = subparsers.add_parser(name, help=command.help)
            for flag in command.arguments:
                args, kwargs = FLAGS[flag]
                subparser.add_argument(*args, dest=flag, **kwargs)
            subparser.add_argument('--tsv', action='store_true', help='Tab separated output')
            subparser.add_argument('--hex', action='store_true', help='--string is hex')
            subparser.add_argument('--workers', type=int, default=None, help='Enumeration partitions')
        return parser

    @safe
    def dispatch(self, argv: List[str]) -> int:
        try:
            options = self.parser().parse_args(argv)
        except SystemExit as exit_:
            return exit_.code or 0
        self.commands()[options.command](console=self, options=options).fire()
        return 0

    @staticmethod
    def serialize(result) -> dict:
        return result.serialize() if isinstance(result, Payload) else Payload.serialize_value(result)

    def send_json(self, content):
        self.stdout.write(json.dumps(content, separators=(',', ':')) + '\n')

    def send_tsv(self, rows: Iterable[Iterable]):
        for row in rows:
            self.stdout.write('\t'.join(self.tsv_value(value) for value in row) + '\n')

    @staticmethod
    def tsv_value(value) -> str:
        if value is None:
            return '-'
        if isinstance(value, float) and math.isinf(value):
            return 'inf'
        if isinstance(value, (list, tuple, dict)):
            return json.dumps(value, separators=(',', ':'))
        return str(value)

    def send_error(self, payload: Payload):
        self.stderr.write(payload.to_json() + '\n')

    def read_bytes(self, path: str) -> bytes:
        if path == '-':
            stdin = self.stdin or sys.stdin.buffer
            return stdin.read()
        try:
            return Path(path).read_bytes()
        except OSError as err:
            raise UsageError(f'Cannot read {path}: {err.strerror}')

    def read_text(self, path: str, error=InvalidDistribution) -> io.StringIO:
        try:
            return io.StringIO(self.read_bytes(path).decode('utf-8'))
        except UnicodeDecodeError:
            raise error(f'{path} is not valid UTF-8')

    def write_bytes(self, path: str, data: bytes):
        try:
            Path(path).write_bytes(data)
        except OSError as err:
            raise UsageError(f'Cannot write {path}: {err.strerror}')

    class K(SimpleCommand):
        """Kolmogorov complexity on machine A or B"""
        help = 'Kolmogorov complexity K(x)'
        arguments = ('machine', 'string', 'file', 'limit', 'bounded')

        def handle(self):
            machine = self.unconditional_machine()
            x = self.input_bits()
            limit = self.options.limit if self.options.limit is not None else literal_bound(machine, len(x))
            search = complexity.kolmogorov_bounded if self.options.bounded else complexity.kolmogorov
            report = search(x, machine, limit, workers=self.workers)
            return {'k': report.value_bits, 'witness': report.witness, 'status': report.status_text}

        def rows(self, result):
            return [result.values()]

    class Ktable(SimpleCommand):
        help = 'K(x) for every x of length n'
        arguments = ('machine', 'n', 'limit')

        def handle(self):
            machine = self.unconditional_machine()
            n = self.length()
            if n is None:
                raise UsageError('ktable needs --n')
            limit = self.options.limit if self.options.limit is not None else literal_bound(machine, n)
            table = complexity.complexity_table(machine, n, limit, workers=self.workers)
            return {
                'machine': machine,
                'n': n,
                'limit': limit,
                'table': [
                    {'x': x, 'k': report.value_bits, 'witness': report.witness, 'status': report.status_text}
                    for x, report in table.items()
                ],
            }

        def rows(self, result):
            return [row.values() for row in result['table']]

    class Prob(SimpleCommand):
        help = 'Universal probability partial sum'
        arguments = ('machine', 'string', 'file', 'limit')

        def handle(self):
            machine = self.unconditional_machine()
            x = self.input_bits()
            limit = self.options.limit if self.options.limit is not None else literal_bound(machine, len(x))
            return complexity.algorithmic_probability(x, machine, limit, workers=self.workers)

    class Kraft(SimpleCommand):
        help = 'Kraft sum over every halting program'
        arguments = ('machine', 'limit')

        def handle(self):
            if self.options.limit is None:
                raise UsageError('kraft needs --limit')
            return complexity.kraft_sum(self.unconditional_machine(), self.options.limit, workers=self.workers)

    class Cond(SimpleCommand):
        help = 'Conditional complexity K(x/y) on Acond'
        arguments = ('string', 'file', 'aux', 'limit')

        def handle(self):
            x = self.input_bits()
            limit = self.options.limit if self.options.limit is not None else literal_bound(MachinesEnum.acond, len(x))
            report = complexity.conditional_kolmogorov(x, bits(self.options.aux), limit, workers=self.workers)
            return {'k': report.value_bits, 'witness': report.witness, 'status': report.status_text}

        def rows(self, result):
            return [result.values()]

    class Info(SimpleCommand):
        help = 'Information in y about x, K(x/ε) - K(x/y)'
        arguments = ('string', 'file', 'aux', 'limit')

        def handle(self):
            x = self.input_bits()
            limit = self.options.limit if self.options.limit is not None else literal_bound(MachinesEnum.acond, len(x))
            return complexity.mutual_information(bits(self.options.aux), x, limit, workers=self.workers)

    class Deficiency(SimpleCommand):
        help = 'Literal program length minus K(x)'
        arguments = ('machine', 'string', 'file', 'limit')

        def handle(self):
            return complexity.randomness_deficiency(
                self.input_bits(), self.unconditional_machine(), self.options.limit, workers=self.workers
            )

    class ShortestProb(SimpleCommand):
        help = 'Probability mass of the shortest programs alone'
        arguments = ('machine', 'string', 'file', 'limit')

        def handle(self):
            machine = self.unconditional_machine()
            x = self.input_bits()
            limit = self.options.limit if self.options.limit is not None else literal_bound(machine, len(x))
            programs = complexity.shortest_programs(x, machine, limit, workers=self.workers)
            accumulator = complexity.shortest_program_probability(x, machine, limit, workers=self.workers)
            return {'programs': programs, **accumulator.serialize()}

    class Invariance(SimpleCommand):
        help = 'Largest |K_A(x) - K_B(x)| over short strings'
        arguments = ('n',)

        def handle(self):
            n_max = self.length(default=6)
            return complexity.invariance_constant(n_max, workers=self.workers)

    class Entropy(SimpleCommand):
        help = 'Shannon entropy of a distribution file'
        arguments = ('dist',)

        def handle(self):
            return {'entropy_bits': shannon.entropy(self.distribution())}

        def distribution(self) -> shannon.Distribution:
            if not self.options.dist:
                raise UsageError(f'{self.options.command} needs --dist')
            return shannon.load_distribution(self.console.read_text(self.options.dist))

    class Sfcode(Entropy):
        help = 'Shannon-Fano code with Kraft and prefix checks'

        def handle(self):
            distribution = self.distribution()
            code_book = shannon.shannon_fano(distribution)
            kraft = shannon.kraft_check(code_book)
            prefix = shannon.prefix_free_check(code_book)
            return {
                'codewords': dict(code_book.codewords),
                'lengths': dict(code_book.lengths),
                'entropy_bits': shannon.entropy(distribution),
                'expected_length': shannon.expected_length(code_book, distribution),
                'kraft_sum': Payload.serialize_value(kraft.sum),
                'kraft_satisfied': kraft.satisfied,
                'prefix_free': prefix.prefix_free,
                'violating_pair': Payload.serialize_value(prefix.violating_pair),
            }

        def rows(self, result):
            return [(symbol, result['lengths'][symbol], codeword) for symbol, codeword in result['codewords'].items()]

    class Structfn(SimpleCommand):
        help = 'Structure function h_x(alpha)'
        arguments = ('string', 'file', 'n', 'limit', 'bounded')

        def x_and_n(self):
            x = self.input_bits()
            n = self.length(default=len(x))
            return x, n

        def handle(self):
            x, n = self.x_and_n()
            curve = structure.structure_function(
                x, n, limit=self.options.limit, bounded=self.options.bounded, workers=self.workers
            )
            return {'x': x, 'n': n, 'curve': [point.serialize() for point in curve]}

        def rows(self, result):
            return [(point['alpha'], point['h'], point['witness']) for point in result['curve']]

    class Mss(Structfn):
        help = 'Minimal sufficient statistic'
        arguments = ('string', 'file', 'n', 'slack', 'limit', 'bounded')

        def handle(self):
            x, n = self.x_and_n()
            return structure.minimal_sufficient_statistic(
                x, n, slack=self.options.slack, limit=self.options.limit, bounded=self.options.bounded,
                workers=self.workers,
            )

        def rows(self, result):
            return self.console.serialize(result).items()

    class Randreport(Structfn):
        help = 'Positive and negative sense randomness labels with the full curve'
        arguments = ('string', 'file', 'n', 'slack', 'limit', 'bounded')

        def handle(self):
            x, n = self.x_and_n()
            return structure.randomness_report(
                x, n, slack=self.options.slack, limit=self.options.limit, bounded=self.options.bounded,
                workers=self.workers,
            )

        def rows(self, result):
            content = self.console.serialize(result)
            return [(point['alpha'], point['h'], point['witness']) for point in content['curve']]

    class LzEncode(SimpleCommand):
        help = 'LZ78 encode bytes, --save writes the byte-padded code'
        arguments = ('string', 'file', 'save')

        def handle(self):
            data = self.input_bytes()
            code = estimator.lz78_encode(data)
            if self.options.save:
                self.console.write_bytes(self.options.save, bits_to_bytes(code))
                return estimator.k_upper_bound(data)
            return {**estimator.k_upper_bound(data).serialize(), 'code': code}

    class LzDecode(SimpleCommand):
        help = 'LZ78 decode a code given as --string bits or a byte-padded --file'
        arguments = ('string', 'file', 'save')

        def handle(self):
            if self.options.string is not None:
                data = estimator.lz78_decode(self.input_bits())
            elif self.options.file:
                data = estimator.lz78_decode(bytes_to_bits(self.console.read_bytes(self.options.file)), padded=True)
            else:
                raise UsageError('Pass the code with --string or --file')
            if self.options.save:
                self.console.write_bytes(self.options.save, data)
            return {'output_bytes': len(data), 'hex': data.hex()}

    class Estimate(SimpleCommand):
        help = 'LZ78 upper bound on K, the bundled English sample by default'
        arguments = ('string', 'file', 'c_dec')

        def handle(self):
            return estimator.k_upper_bound(self.input_bytes(default=estimator.english_sample()), self.options.c_dec)

    class Compare(SimpleCommand):
        help = 'Compare two inputs, seeded random bytes of equal length by default'
        arguments = ('string', 'file', 'other', 'seed', 'c_dec')

        def handle(self):
            x = self.input_bytes(default=estimator.english_sample())
            if self.options.other:
                y = self.console.read_bytes(self.options.other)
            else:
                y = estimator.seeded_bytes(len(x), self.options.seed)
            return estimator.compare_information(x, y, self.options.c_dec)

    class Enumerate(SimpleCommand):
        help = 'Dump or load a program table cache file'
        arguments = ('machine', 'aux', 'limit', 'save', 'load')

        def handle(self):
            if self.options.load:
                program_table = complexity.load_table(self.console.read_text(self.options.load, error=MalformedCache))
            else:
                if self.options.limit is None:
                    raise UsageError('enumerate needs --limit or --load')
                aux = bits(self.options.aux) if self.options.machine == MachinesEnum.acond else None
                program_table = complexity.enumerate_halting(
                    self.options.machine, self.options.limit, aux=aux, workers=self.workers
                )
            if self.options.save:
                stream = io.StringIO()
                complexity.dump_table(program_table, stream)
                self.console.write_bytes(self.options.save, stream.getvalue().encode('utf-8'))
            return program_table

        def rows(self, result):
            stream = io.StringIO()
            complexity.dump_table(result, stream)
            return [line.split('\t') for line in stream.getvalue().splitlines()]

        def fire(self):
            result = self.handle()
            if self.options.tsv:
                self.console.send_tsv(self.rows(result))
                return
            self.console.send_json({
                'machine': result.machine,
                'limit': result.limit,
                'aux': result.aux,
                'count': len(result.entries),
                'entries': [list(entry) for entry in result.entries],
            })


def main(argv: Optional[List[str]] = None) -> int:
    setup()
    return LabConsole().dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == '__main__':
    sys.exit(main())
