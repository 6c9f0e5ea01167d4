"""
Circuits of two-qubit gates on adjacent qubits, compiled gate by gate into words of B_8, shifted into
B_4n and concatenated into one braid whose zig-zag expectation reproduces <0..0|U|0..0>.

Gate j of the circuit is applied after gate j - 1, so its braid piece is placed above the previous pieces:
rho(b) = rho(b_L) ... rho(b_1) approximates U_L ... U_1.
"""
import json
import logging
from collections import namedtuple
from functools import reduce
from itertools import accumulate

import numpy as np

from tlbraid.braid import BraidWord
from tlbraid.config import settings
from tlbraid.encoding import embedded_operator, encode_gate, encoded_subspace_indices, EncodedBasis, reduce_to_b8
from tlbraid.exceptions import CircuitError, DimensionError
from tlbraid.generators import GeneratorWord, path_model_generators
from tlbraid.nets import solovay_kitaev
from tlbraid.numerics import check_unitary, is_unitary, phase_scan_distance, proj_distance
from tlbraid.pathmodel import alpha_expectation, enumerate_basis, rho_of_word
from tlbraid.tools.parsers import ParseError, encode_complex, parse_complex

logger = logging.getLogger(__name__)

_H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
_T = np.diag([1, np.exp(0.25j * np.pi)])
_I = np.eye(2)

NAMED_GATES = {
    'HI': np.kron(_H, _I),
    'IH': np.kron(_I, _H),
    'TI': np.kron(_T, _I),
    'IT': np.kron(_I, _T),
    'CNOT': np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
    'CZ': np.diag([1, 1, 1, -1]),
    'SWAP': np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]),
}

LOW, HIGH, OUTSIDE_PROMISE = 'LOW', 'HIGH', 'OUTSIDE_PROMISE'
PROMISE_LOW, PROMISE_HIGH = 0.1, 0.9

Gate = namedtuple('Gate', 'position matrix name')


class CircuitIR(object):
    """ n qubits and an ordered list of two-qubit gates, gate s acting on qubits s and s + 1 """

    def __init__(self, qubits, gates=()):
        if not isinstance(qubits, int) or qubits < 1:
            raise CircuitError(f"number of qubits should be a positive integer, not {qubits!r}")
        self.qubits = qubits
        self.gates = []
        for gate in gates:
            self.add(*gate)

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        yield from self.gates

    def __repr__(self):
        return f"{type(self).__name__}(qubits={self.qubits}, gates={[g.name or 'U' for g in self.gates]})"

    def add(self, position, gate, line=None):
        if isinstance(gate, str):
            if gate not in NAMED_GATES:
                raise CircuitError(f"unknown gate '{gate}' (known: {', '.join(NAMED_GATES)})", line)
            name, matrix = gate, NAMED_GATES[gate].astype(complex)
        else:
            name, matrix = None, np.asarray(gate, dtype=complex)
            if matrix.shape != (4, 4) or not is_unitary(matrix, settings.algebra_tol):
                raise CircuitError(f"gate matrix is not a 4x4 unitary within {settings.algebra_tol}", line)
        if not 1 <= position <= self.qubits - 1:
            raise CircuitError(f"gate on qubits ({position}, {position + 1}) is not a pair of adjacent qubits "
                               f"of {self.qubits}", line)
        self.gates.append(Gate(position, matrix, name))

    def to_text(self):
        lines = [f"qubits {self.qubits}"]
        for gate in self.gates:
            if gate.name:
                lines.append(f"{gate.name} {gate.position}")
            else:
                lines.append(f"U {gate.position} " + ' '.join(encode_complex(v) for v in gate.matrix.ravel()))
        return '\n'.join(lines) + '\n'


def _parse_position(string, line):
    try:
        return int(string)
    except ValueError:
        raise CircuitError(f"position '{string}' is not an integer", line)


def parse_circuit(text):
    """ 'qubits N', then 'NAME POSITION' or 'U POSITION re,im (x16)' per line; '#' starts a comment """
    circuit = None
    for number, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split('#', 1)[0].split()
        if not tokens:
            continue
        if circuit is None:
            if len(tokens) != 2 or tokens[0] != 'qubits':
                raise CircuitError(f"expected 'qubits N', not '{raw.strip()}'", number)
            try:
                qubits = int(tokens[1])
            except ValueError:
                raise CircuitError(f"number of qubits '{tokens[1]}' is not an integer", number)
            try:
                circuit = CircuitIR(qubits)
            except CircuitError as error:
                raise CircuitError(str(error), number)
            continue
        if tokens[0] == 'U':
            if len(tokens) != 18:
                raise CircuitError(f"explicit gate needs a position and 16 entries, not {len(tokens) - 2}", number)
            try:
                entries = [parse_complex(token) for token in tokens[2:]]
            except ParseError as error:
                raise CircuitError(str(error), number)
            circuit.add(_parse_position(tokens[1], number), np.array(entries).reshape(4, 4), number)
        else:
            if len(tokens) != 2:
                raise CircuitError(f"expected 'NAME POSITION', not '{raw.strip()}'", number)
            circuit.add(_parse_position(tokens[1], number), tokens[0], number)
    if circuit is None:
        raise CircuitError("missing 'qubits N' header")
    return circuit


def load_circuit(filename):
    with open(filename) as file:
        return parse_circuit(file.read())


def circuit_unitary(circuit):
    """ U = U_L ... U_1 on 2^n dimensions, qubit 1 most significant """
    n = circuit.qubits
    result = np.eye(2 ** n, dtype=complex)
    for gate in circuit:
        full = reduce(np.kron, [np.eye(2 ** (gate.position - 1)), gate.matrix, np.eye(2 ** (n - gate.position - 1))])
        result = full @ result
    return result


# compilation


GateCompilation = namedtuple('GateCompilation', 'word distance full_distance within')


def _encoded_distance(matrix, target, columns):
    return phase_scan_distance(matrix[:, columns], target[:, columns])


def compile_gate(U4, k, delta, net, depth=0):
    """
    A word in rho_1 .. rho_7 whose action on the encoded two-qubit subspace is within delta of U4, up to a
    phase: the nearest net entry in the column restricted distance, refined by Solovay-Kitaev for depth > 0.
    """
    U4 = check_unitary(U4, 'gate')
    if U4.shape != (4, 4):
        raise DimensionError(f"gate should be 4x4, not {U4.shape}")
    target = encode_gate(U4, 2, k)
    if net.dim != len(target):
        raise DimensionError(f"net of dimension {net.dim} does not act on H_(8,{k},1) of dimension {len(target)}")
    columns = list(encoded_subspace_indices(k))
    index, distance = net.nearest(target, columns)
    word, matrix = net[index].word, net[index].matrix
    if depth > 0:
        refined = solovay_kitaev(target, net, path_model_generators(k), depth)
        refined_distance = _encoded_distance(refined.matrix, target, columns)
        if refined_distance < distance:
            word, matrix, distance = refined.word, refined.matrix, refined_distance
    full_distance = proj_distance(matrix, target)
    if distance > delta:
        logger.warning("gate compiled to %.3g on the encoded subspace, above the budget %.3g", distance, delta)
    return GateCompilation(word, distance, full_distance, distance <= delta)


PromiseDecision = namedtuple('PromiseDecision', 'label value')


def classify_amplitude(value, bound=0.0):
    """ LOW or HIGH only when the whole interval value +- bound lies on one side of the promise gap """
    if value + bound < PROMISE_LOW:
        return LOW
    if value - bound > PROMISE_HIGH:
        return HIGH
    return OUTSIDE_PROMISE


def classify_promise(b, k):
    value = abs(alpha_expectation(b, k))
    return PromiseDecision(classify_amplitude(value), value)


def _pair(value):
    return [float(value.real), float(value.imag)]


class CompilationReport(object):
    """ a compiled braid with the per gate distances and both amplitudes """

    def __init__(self, circuit, k, epsilon, braid, gates):
        self.circuit = circuit
        self.k = k
        self.epsilon = epsilon
        self.braid = braid
        self.gates = list(gates)
        self.prefix_bounds = list(accumulate(g.distance for g in self.gates))
        self.predicted_amplitude = complex(circuit_unitary(circuit)[0, 0])
        self.path_amplitude = alpha_expectation(braid, k)

    @property
    def bound(self):
        return self.prefix_bounds[-1] if self.prefix_bounds else 0.0

    @property
    def delta(self):
        return self.epsilon / len(self.gates) if self.gates else self.epsilon

    @property
    def amplitude_error(self):
        """ compiled words are exact up to phase, so amplitudes are compared in modulus """
        return abs(abs(self.path_amplitude) - abs(self.predicted_amplitude))

    @property
    def promise(self):
        return classify_amplitude(abs(self.path_amplitude), self.bound)

    def dict(self):
        return {
            'qubits': self.circuit.qubits,
            'k': self.k,
            'epsilon': self.epsilon,
            'delta': self.delta,
            'circuit': self.circuit.to_text(),
            'braid': {'strands': self.braid.strands, 'letters': list(self.braid.letters)},
            'gates': [{'position': gate.position, 'word': list(compiled.word), 'distance': compiled.distance,
                       'full_distance': compiled.full_distance, 'within': compiled.within}
                      for gate, compiled in zip(self.circuit, self.gates)],
            'bound': self.bound,
            'prefix_bounds': self.prefix_bounds,
            'predicted_amplitude': _pair(self.predicted_amplitude),
            'path_amplitude': _pair(self.path_amplitude),
            'amplitude_error': self.amplitude_error,
            'promise': self.promise,
            'braid_promise': classify_amplitude(abs(self.path_amplitude)),
        }

    def to_json(self):
        return json.dumps(self.dict(), indent=2)

    def save(self, filename):
        with open(filename, 'w') as file:
            file.write(self.to_json())


def assemble_braid(circuit, words):
    """ the B_4n braid of per gate B_8 words, last gate on the left """
    pieces = [reduce_to_b8(word, gate.position, circuit.qubits) for gate, word in zip(circuit, words)]
    return reduce(BraidWord.compose, reversed(pieces), BraidWord(4 * circuit.qubits))


def compile_circuit(circuit, k, epsilon, net, depth=0):
    """ compiles every gate with budget epsilon / L and assembles the braid """
    delta = epsilon / len(circuit) if len(circuit) else epsilon
    compiled = [compile_gate(gate.matrix, k, delta, net, depth) for gate in circuit]
    braid = assemble_braid(circuit, [c.word for c in compiled])
    report = CompilationReport(circuit, k, epsilon, braid, compiled)
    logger.info("compiled %d gates into %d crossings, bound %.3g, amplitude error %.3g",
                len(circuit), len(braid), report.bound, report.amplitude_error)
    if report.promise == OUTSIDE_PROMISE:
        logger.warning("the error bound %.3g does not separate the promise classes", report.bound)
    return report


def exact_baseline(circuit, k):
    """ <alpha| E_L ... E_1 |alpha> with the exact encoded gates in place of compiled words """
    encoded = EncodedBasis(circuit.qubits, k)
    state = encoded.zero_state()
    vector = state
    for gate in circuit:
        vector = embedded_operator(encode_gate(gate.matrix, 2, k), gate.position, circuit.qubits, k) @ vector
    return complex(np.vdot(state, vector))


def verify_report(data, tol=1e-9):
    """
    Recomputes a report (as produced by CompilationReport.dict) from its circuit text, gate words and braid.
    Returns the checks and the recomputed values.
    """
    circuit = parse_circuit(data['circuit'])
    k = data['k']
    braid = BraidWord(data['braid']['strands'], data['braid']['letters'])
    words = [GeneratorWord(gate['word']) for gate in data['gates']]
    basis = enumerate_basis(8, k, 1)
    columns = list(encoded_subspace_indices(k))
    distances = [_encoded_distance(rho_of_word(BraidWord(8, word), basis), encode_gate(gate.matrix, 2, k), columns)
                 for gate, word in zip(circuit, words)]
    path_amplitude = alpha_expectation(braid, k)
    predicted = complex(circuit_unitary(circuit)[0, 0])
    bound = sum(distances)
    error = abs(abs(path_amplitude) - abs(predicted))
    stored = [gate['distance'] for gate in data['gates']]
    checks = {
        'braid_consistent': assemble_braid(circuit, words) == braid,
        'distances_match': bool(np.allclose(distances, stored, atol=1e-6)),
        'path_amplitude_matches': abs(path_amplitude - complex(*data['path_amplitude'])) <= tol,
        'predicted_matches': abs(predicted - complex(*data['predicted_amplitude'])) <= tol,
        'bound_holds': error <= bound + tol,
        'promise_matches': classify_amplitude(abs(path_amplitude), bound) == data['promise'],
    }
    return {'ok': all(checks.values()), 'checks': checks, 'bound': bound, 'amplitude_error': error,
            'path_amplitude': _pair(path_amplitude), 'predicted_amplitude': _pair(predicted),
            'promise': classify_amplitude(abs(path_amplitude), bound)}


if __name__ == '__main__':
    c = parse_circuit("qubits 3\nHI 1\nCNOT 2\n")
    print(exact_baseline(c, 7), circuit_unitary(c)[0, 0])
