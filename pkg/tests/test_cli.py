import io
import json
from fractions import Fraction

import pytest

from ait_lab.cli import LabConsole, main
from ait_lab.estimator import english_sample


class Run:
    def __init__(self, argv, stdin=b''):
        self.stdout, self.stderr = io.StringIO(), io.StringIO()
        console = LabConsole(stdout=self.stdout, stderr=self.stderr, stdin=io.BytesIO(stdin))
        self.code = console.dispatch(argv)

    @property
    def out(self):
        return self.stdout.getvalue()

    @property
    def json(self):
        return json.loads(self.out)

    @property
    def error(self):
        return json.loads(self.stderr.getvalue())


def test_k_example():
    run = Run(['k', '--machine', 'A', '--string', '1010', '--limit', '12'])
    assert run.code == 0
    assert run.out == '{"k":8,"witness":"10011100","status":"Exact"}\n'
    assert run.stderr.getvalue() == ''


def test_k_default_limit_is_literal_bound():
    assert Run(['k', '--string', '10101010']).json == {'k': 10, 'witness': '1001111100', 'status': 'Exact'}


def test_k_no_program_within():
    run = Run(['k', '--string', '10101010', '--limit', '8'])
    assert run.json == {'k': None, 'witness': None, 'status': 'NoProgramWithin(8)'}


def test_k_from_hex_and_file(tmp_path):
    assert Run(['k', '--string', 'a', '--hex']).json['k'] == 8
    path = tmp_path / 'x.txt'
    path.write_text('1010\n')
    assert Run(['k', '--file', str(path)]).json['k'] == 8
    assert Run(['k', '--file', '-'], stdin=b'1010').json['k'] == 8


def test_prob_example():
    content = Run(['prob', '--machine', 'A', '--string', '', '--limit', '20']).json
    numerator, exponent = content['probability'].split('/2^')
    probability = Fraction(int(numerator), 2 ** int(exponent))
    assert abs(probability - Fraction(1, 3)) <= Fraction(1, 2 ** 18)
    assert Fraction(content['decimal']) == probability


def test_kraft_and_cond():
    assert Run(['kraft', '--limit', '4']).json['probability'] == '7/2^4'
    assert Run(['cond', '--string', '111', '--aux', '111']).json == {
        'k': 6, 'witness': '100000', 'status': 'Exact'
    }
    content = Run(['info', '--string', '111', '--aux', '111', '--limit', '15']).json
    assert content['information'] == 6


def test_entropy_example(dist_file):
    path = dist_file({'a': '.5', 'b': '.25', 'c': '.25'})
    assert Run(['entropy', '--dist', path]).out == '{"entropy_bits":1.5}\n'


def test_sfcode(dist_file):
    path = dist_file({'a': '1/2', 'b': '1/4', 'c': '1/4'})
    content = Run(['sfcode', '--dist', path]).json
    assert content['codewords'] == {'a': '0', 'b': '10', 'c': '11'}
    assert content['kraft_satisfied'] and content['prefix_free']
    assert Run(['sfcode', '--dist', path, '--tsv']).out == 'a\t1\t0\nb\t2\t10\nc\t2\t11\n'


def test_structfn_tsv():
    lines = Run(['structfn', '--string', '000', '--tsv']).out.splitlines()
    assert len(lines) == 19
    assert lines[0] == '0\tinf\t-'
    assert lines[10] == '10\t2.0\t10101010'
    assert lines[18] == '18\t0.0\t10000000'


def test_mss_and_randreport():
    content = Run(['mss', '--string', '000', '--slack', '8']).json
    assert (content['found'], content['alpha_star']) == (True, 10)
    assert content['witness']['bitmap'] == '10101010'
    content = Run(['randreport', '--string', '000']).json
    assert 'positive-sense-candidate' in content['labels']
    assert content['curve'][10]['witness'] == '10101010'


def test_supplementary_commands():
    assert Run(['deficiency', '--string', '10101010']).json == {'k': 10, 'literal_bits': 18, 'deficiency': 8}
    content = Run(['shortest-prob', '--string', '000', '--limit', '8']).json
    assert content['programs'] == ['01010100', '01110100']
    assert content['probability'] == '1/2^7'
    assert Run(['invariance', '--n', '4']).json['constant'] <= 8


def test_lz_roundtrip_through_files(tmp_path):
    source = tmp_path / 'in.txt'
    source.write_bytes(b'abracadabra abracadabra')
    code = tmp_path / 'code.bin'
    decoded = tmp_path / 'out.txt'
    encoded = Run(['lz-encode', '--file', str(source), '--save', str(code)]).json
    assert encoded['input_bytes'] == 23
    assert len(code.read_bytes()) == (encoded['encoded_bits'] + 7) // 8
    content = Run(['lz-decode', '--file', str(code), '--save', str(decoded)]).json
    assert content['output_bytes'] == 23
    assert decoded.read_bytes() == b'abracadabra abracadabra'


def test_lz_decode_bits():
    code = Run(['lz-encode', '--string', 'AB']).json['code']
    assert Run(['lz-decode', '--string', code]).json == {'output_bytes': 2, 'hex': '4142'}


def test_estimate_and_compare_defaults():
    content = Run(['estimate']).json
    assert content['input_bytes'] == len(english_sample())
    content = Run(['compare']).json
    assert content['ratio'] <= 0.8


def test_enumerate_save_then_load(tmp_path):
    path = tmp_path / 'table.txt'
    fresh = Run(['enumerate', '--machine', 'B', '--limit', '10', '--save', str(path)])
    loaded = Run(['enumerate', '--load', str(path)])
    assert fresh.out == loaded.out
    assert fresh.json['count'] == len(fresh.json['entries'])
    assert path.read_text().splitlines()[0] == 'machine=B limit=10 aux=-'


def test_enumerate_tsv_is_the_cache_format():
    lines = Run(['enumerate', '--limit', '4', '--tsv']).out.splitlines()
    assert lines == ['machine=A limit=4 aux=-', '00\t', '0100\t0', '1000\t1', '1100\t']


@pytest.mark.parametrize('argv, code, error', [
    (['k', '--string', '10x'], 1, 'domain'),
    (['k', '--string', '1', '--limit', '40'], 2, 'resource'),
    (['structfn', '--string', '0000'], 2, 'resource'),
    (['k', '--machine', 'Acond', '--string', '1'], 3, 'usage'),
    (['k'], 3, 'usage'),
    (['frobnicate'], 3, 'usage'),
    (['k', '--limit', 'many', '--string', '1'], 3, 'usage'),
    (['lz-decode', '--string', '0101'], 1, 'domain'),
    (['ktable', '--n', '-1'], 3, 'usage'),
    (['structfn', '--string', '000', '--n', '-1'], 3, 'usage'),
    (['invariance', '--n', '-1'], 3, 'usage'),
])
def test_exit_codes(argv, code, error):
    run = Run(argv)
    assert run.code == code
    assert run.out == ''
    assert run.error['error'] == error


def test_missing_file():
    run = Run(['entropy', '--dist', '/nonexistent/dist.csv'])
    assert run.code == 3


def test_distribution_that_is_not_utf8(tmp_path):
    path = tmp_path / 'dist.csv'
    path.write_bytes(b'\xff\xfe\x00')
    run = Run(['entropy', '--dist', str(path)])
    assert run.code == 1
    assert run.error['error'] == 'domain'


def test_determinism_across_runs_and_workers():
    argv = ['ktable', '--machine', 'B', '--n', '3']
    first, second = Run(argv), Run(argv)
    partitioned = Run(argv + ['--workers', '4'])
    assert first.out == second.out == partitioned.out
    argv = ['prob', '--string', '', '--limit', '16']
    assert Run(argv).out == Run(argv + ['--workers', '3']).out


def test_main(capsys):
    assert main(['k', '--string', '1']) == 0
    assert capsys.readouterr().out == '{"k":4,"witness":"1000","status":"Exact"}\n'
    assert main(['--help']) == 0
