"""
The tlbraid command line. Every sub-command prints its result as JSON on stdout; log messages go to stderr.

    tlbraid jones --braid trefoil.braid --k 5
    tlbraid net build --k 7 --block seed --eps 0.2 --max-len 8 --out seed.jsonl
    tlbraid compile --circuit bell.circuit --k 7 --eps 0.5 --net full.jsonl --out report.json
"""
import json
import logging
import sys

import numpy as np

from tlbraid.braid import BraidWord, braid_writhe
from tlbraid.cmd_parser import CmdParser, Argument
from tlbraid.compiler import compile_circuit, exact_baseline, load_circuit, verify_report
from tlbraid.config import configure_logging, settings
from tlbraid.custom_types import File, Choice
from tlbraid.encoding import block_structure, encoded_subspace_indices, nontrivial_blocks, reconstruct_labels
from tlbraid.generators import path_model_generators, seed_block_indices
from tlbraid.kauffman import CONVENTIONS, bracket, bracket_fast, writhe_factor
from tlbraid.nets import (EpsilonNet, aux_generators, build_commutator_net, build_net, transfer_check,
                          transfer_net)
from tlbraid.numerics import laurent_eval
from tlbraid.pathmodel import (ModelParams, alpha_expectation, calibration_constant, delta_scale, enumerate_basis,
                               rho_generator, sector_dimensions)
from tlbraid.tools.parsers import encode_matrix

logger = logging.getLogger(__name__)

BRAID_FILE = File('braid', 'txt', existing=True)
NET_FILE = File('jsonl', existing=True)
BLOCKS = Choice('full', 'seed')


def _jsonable(value):
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return encode_matrix(value) if np.iscomplexobj(value) else value.tolist()
    raise TypeError(f"cannot write {type(value).__name__} as json")


def dumps(result):
    return json.dumps(result, indent=2, default=_jsonable)


class Command(CmdParser):
    """ base of all sub-commands: prints the target's result and sets up logging """
    verbose = Argument(bool, default=False, flags=('--verbose', '-v'), help='log debug messages')

    def run(self, do_raise=True):
        values = dict(self.values)
        configure_logging(values.pop('verbose'))
        if self.target is None:
            if do_raise:
                raise ValueError(f"cannot call missing target")
            return None
        self.result = self.target(**values)
        print(dumps(self.result))
        return self.result


# knot invariants and the path model


class Jones(Command):
    braid = Argument(BRAID_FILE, help="braid file: 'strands N' and a line of signed generators")
    k = Argument(int, default=0, help='also evaluate at A = i exp(-i pi / 2k) when k >= 3')
    exact = Argument(bool, default=False, help='only the Laurent polynomial, no evaluation')
    fast = Argument(bool, default=False, help='transfer evaluation instead of the state sum')


def jones_command(braid, k, exact, fast):
    b = BraidWord.load(braid)
    poly = bracket_fast(b) if fast else bracket(b)
    normalized = writhe_factor(braid_writhe(b)) * poly
    result = {'strands': b.strands, 'letters': list(b.letters), 'writhe': braid_writhe(b),
              'polynomial': str(normalized), 'bracket': str(poly), 'jones': str(normalized),
              'conventions': CONVENTIONS}
    if k and not exact:
        result['value'] = laurent_eval(normalized, ModelParams(k).A)
        result['value_unknot_d'] = result['value'] * ModelParams(k).d
    return result


class Rep(Command):
    n = Argument(int, default=8, help='number of strands')
    k = Argument(int, help='level')
    endpoint = Argument(int, default=1, help='end site of the walks')
    dump_generators = Argument(bool, default=False, help='include the generator matrices')


def rep_command(n, k, endpoint, dump_generators):
    basis = enumerate_basis(n, k, endpoint)
    result = {'n': n, 'k': k, 'endpoint': endpoint, 'dim': len(basis),
              'sectors': sector_dimensions(n, k),
              'paths': [basis.sites(path) for path in basis]}
    if dump_generators:
        result['generators'] = {i: encode_matrix(rho_generator(i, basis)) for i in range(1, n)}
    return result


class Expect(Command):
    braid = Argument(BRAID_FILE, help='braid file on an even number of strands')
    k = Argument(int, help='level')


def expect_command(braid, k):
    b = BraidWord.load(braid)
    alpha = alpha_expectation(b, k)
    constant = calibration_constant(b.strands, k, braid_writhe(b))
    delta = complex(delta_scale(b, k))
    return {'k': k, 're': alpha.real, 'im': alpha.imag, 'delta': [delta.real, delta.imag],
            'alpha_expectation': alpha, 'delta_scale': delta, 'calibration_constant': constant,
            'jones_value': constant * alpha}


class Blocks(Command):
    k = Argument(int, default=7, help='level, at least 5')
    labels = Argument(bool, default=False, help='also reconstruct the walk labels of the block table')


def blocks_command(k, labels):
    result = {'k': k, 'encoded_indices': list(encoded_subspace_indices(k)),
              'blocks': {i: nontrivial_blocks(block_structure(i, k)) for i in range(1, 8)}}
    if labels:
        labeling = reconstruct_labels(k)
        result['labels'] = labeling.labels
        result['unique'] = labeling.unique
    return result


# nets


def _generators(k, block, k0):
    gens = aux_generators(k0) if k0 else path_model_generators(k)
    if block == 'seed':
        return gens.restrict(seed_block_indices(k), generators=(1, 2))
    return gens


class NetBuild(Command):
    k = Argument(int, default=7, help='level of the generators (and of the seed block)')
    eps = Argument(float, help='net resolution')
    max_len = Argument(int, help='maximal word length')
    block = Argument(BLOCKS, default='seed', help='full generators or the seed block')
    k0 = Argument(int, default=0, help='build over the auxiliary generators of this level instead')
    commutators = Argument(bool, default=False, help='net of group commutators of the words')
    samples = Argument(int, default=settings.coverage_samples, help='coverage samples')
    out = Argument(File('jsonl'), default=None, help='net output file')


def net_build_command(k, eps, max_len, block, k0, commutators, samples, out):
    gens = _generators(k, block, k0)
    if commutators:
        net = build_commutator_net(gens, eps, max_len, coverage_samples=samples)
    else:
        net = build_net(gens, eps, max_len, coverage_samples=samples)
    if out:
        net.save(out)
    return {'generators': gens.name, 'dim': net.dim, 'epsilon': eps, 'size': len(net),
            'coverage': net.coverage, 'max_length': max(len(entry.word) for entry in net), 'out': out}


class NetTransfer(Command):
    net = Argument(NET_FILE, help='net over the auxiliary generators')
    eps = Argument(float, help='epsilon of that net')
    k = Argument(int, help='target level')
    k0 = Argument(int, help='level of the auxiliary generators')
    block = Argument(BLOCKS, default='seed', help='block the auxiliary net was built on')
    lenient = Argument(bool, default=False, help='report deviations instead of failing')
    out = Argument(File('jsonl'), default=None, help='transferred net output file')


def net_transfer_command(net, eps, k, k0, block, lenient, out):
    hat_net = EpsilonNet.load(net, eps)
    if block == 'seed':
        transferred = transfer_net(hat_net, k, k0, seed_block_indices(k), (1, 2), strict=not lenient)
    else:
        transferred = transfer_net(hat_net, k, k0, strict=not lenient)
    if out:
        transferred.save(out)
    return {'k': k, 'k0': k0, 'm': transferred.m, 'size': len(transferred),
            'letter_deviations': transferred.letter_deviations, 'max_deviation': transferred.max_deviation,
            'max_bound': transferred.max_bound, 'check': transfer_check(k, k0), 'out': out}


class NetCoverage(Command):
    net = Argument(NET_FILE, help='net file')
    eps = Argument(float, help='radius to test')
    samples = Argument(int, default=settings.coverage_samples, help='number of Haar samples')


def net_coverage_command(net, eps, samples):
    loaded = EpsilonNet.load(net, eps)
    return {'epsilon': eps, 'size': len(loaded), 'samples': samples, 'coverage': loaded.measure_coverage(samples)}


class Net(CmdParser):
    pass


# compilation


class Compile(Command):
    circuit = Argument(File('circuit', 'txt', existing=True), help='circuit file')
    k = Argument(int, default=7, help='level')
    eps = Argument(float, help='total error budget')
    net = Argument(NET_FILE, help='net over rho_1 .. rho_7 on H_(8,k,1)')
    depth = Argument(int, default=0, help='Solovay-Kitaev depth')
    samples = Argument(int, default=settings.coverage_samples, help='coverage samples when depth > 0')
    out = Argument(File('json'), default=None, help='report output file')


def compile_command(circuit, k, eps, net, depth, samples, out):
    ir = load_circuit(circuit)
    loaded = EpsilonNet.load(net, eps / max(1, len(ir)))
    if depth > 0:
        loaded.measure_coverage(samples)
    report = compile_circuit(ir, k, eps, loaded, depth)
    if out:
        report.save(out)
    result = report.dict()
    result['exact_amplitude'] = exact_baseline(ir, k)
    return result


class Verify(Command):
    report = Argument(File('json', existing=True), help='report written by compile')


def verify_command(report):
    with open(report) as file:
        return verify_report(json.load(file))


class Tlbraid(CmdParser):
    pass


def make_parser():
    return Tlbraid(jones=Jones(jones_command),
                   rep=Rep(rep_command),
                   expect=Expect(expect_command),
                   blocks=Blocks(blocks_command),
                   net=Net(build=NetBuild(net_build_command),
                           transfer=NetTransfer(net_transfer_command),
                           coverage=NetCoverage(net_coverage_command)),
                   compile=Compile(compile_command),
                   verify=Verify(verify_command))


def main(argv=None):
    try:
        make_parser().cmd(argv)
    except (ValueError, OSError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
