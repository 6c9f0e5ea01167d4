import contextlib
import io
import json
import os
import tempfile
import unittest

from tlbraid.cli import main, make_parser
from tlbraid.kauffman import jones_at_root
from tlbraid.pathmodel import alpha_expectation, delta_scale
from tlbraid.unittests.testing_tools import TREFOIL


def run(*argv):
    """ runs the command line, returns the exit code and the parsed json output """
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    text = out.getvalue()
    return code, (json.loads(text) if code == 0 and text.strip().startswith('{') else text + err.getvalue())


class TestCommandLine(unittest.TestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.braid_file = self.path('trefoil.braid')
        TREFOIL.save(self.braid_file)

    def tearDown(self):
        self.directory.cleanup()

    def path(self, name):
        return os.path.join(self.directory.name, name)

    def test_jones(self):
        code, result = run('jones', '--braid', self.braid_file, '--k', '5')
        assert code == 0
        assert result['writhe'] == -3 and result['strands'] == 4
        assert result['conventions']['normalization'] == 'unknot -> 1'
        assert result['polynomial'] == result['jones'] and set(result) >= {'polynomial', 'value', 'writhe'}
        value = complex(*result['value'])
        assert abs(value - jones_at_root(TREFOIL, 5)) < 1e-9
        code, fast = run('jones', '--braid', self.braid_file, '--fast')
        assert code == 0 and fast['jones'] == result['jones'] and 'value' not in fast
        code, exact = run('jones', '--braid', self.braid_file, '--k', '5', '--exact')
        assert code == 0 and exact['polynomial'] == result['polynomial'] and 'value' not in exact

    def test_expect(self):
        code, result = run('expect', '--braid', self.braid_file, '--k', '7')
        assert code == 0
        assert abs(complex(*result['jones_value']) - jones_at_root(TREFOIL, 7)) < 1e-8
        alpha = complex(result['re'], result['im'])
        assert abs(alpha - alpha_expectation(TREFOIL, 7)) < 1e-12
        assert len(result['delta']) == 2 and abs(complex(*result['delta']) - delta_scale(TREFOIL, 7)) < 1e-12

    def test_rep_and_blocks(self):
        code, result = run('rep', '--n', '8', '--k', '7')
        assert code == 0 and result['dim'] == 14 and len(result['paths']) == 14
        code, result = run('blocks', '--k', '7', '--labels')
        assert code == 0
        assert len(result['encoded_indices']) == 4
        assert sorted(result['labels'].values()) == list(range(1, 15))

    def test_nets(self):
        seed_file = self.path('seed.jsonl')
        code, result = run('net', 'build', '--k', '7', '--eps', '0.5', '--max-len', '4', '--samples', '10',
                           '--out', seed_file)
        assert code == 0 and result['dim'] == 2 and result['size'] > 1
        code, result = run('net', 'coverage', '--net', seed_file, '--eps', '0.5', '--samples', '10')
        assert code == 0 and 0 <= result['coverage'] <= 1

        hat_file = self.path('hat.jsonl')
        code, result = run('net', 'build', '--k0', '7', '--eps', '0.3', '--max-len', '2', '--commutators',
                           '--samples', '5', '--out', hat_file)
        assert code == 0
        code, result = run('net', 'transfer', '--net', hat_file, '--eps', '0.3', '--k', '70', '--k0', '7',
                           '--lenient')
        assert code == 0 and result['m'] == 22
        assert result['max_deviation'] <= result['max_bound'] + 1e-9

    def test_compile_and_verify(self):
        net_file, circuit_file, report_file = self.path('full.jsonl'), self.path('cz.circuit'), self.path('cz.json')
        code, _ = run('net', 'build', '--k', '7', '--block', 'full', '--eps', '0.5', '--max-len', '1',
                      '--samples', '2', '--out', net_file)
        assert code == 0
        with open(circuit_file, 'w') as file:
            file.write("qubits 2\nCZ 1\n")
        code, result = run('compile', '--circuit', circuit_file, '--eps', '0.5', '--net', net_file,
                           '--out', report_file)
        assert code == 0
        assert result['amplitude_error'] <= result['bound'] + 1e-12
        assert abs(complex(*result['exact_amplitude']) - 1) < 1e-9
        code, result = run('verify', '--report', report_file)
        assert code == 0 and result['ok']

    def test_errors(self):
        code, output = run('jones', '--braid', self.path('missing.braid'))
        assert code == 1 and 'error' in output
        code, output = run('rep', '--k', 'seven')
        assert code == 1
        code, output = run('net', 'build', '--eps', '0.5', '--max-len', '2', '--block', 'half')
        assert code == 1

    def test_help(self):
        code, output = run()
        assert code == 0
        code, output = run('net', '--help')
        assert code == 0

    def test_command(self):
        parser = make_parser()
        with contextlib.redirect_stdout(io.StringIO()):
            handled = parser("rep --k 7 --n 4")
        assert handled.result['dim'] == 2
        assert handled.command() == 'rep --n 4 --k 7 --endpoint 1'


if __name__ == '__main__':
    unittest.main()
