"""
Four-step qubit encoding on the path model: bit 0 is the walk 1-2-1-2-1, bit 1 the walk 1-2-3-2-1.
Two neighbouring qubits live on 8 strands; this module holds the encoded gates, the shift of 8-strand words
into wider braids and the block structure of the 8-strand generators.
"""
import logging
from collections import namedtuple
from functools import reduce

import numpy as np

from tlbraid.braid import BraidWord
from tlbraid.config import settings
from tlbraid.exceptions import EncodingError, LabelingError
from tlbraid.numerics import check_unitary
from tlbraid.pathmodel import enumerate_basis, phi_matrix, UP, DOWN
from tlbraid.tools.utils import bitstrings

logger = logging.getLogger(__name__)

ENCODED_BITS = {0: (UP, DOWN, UP, DOWN), 1: (UP, UP, DOWN, DOWN)}

# non-trivial blocks of rho_1 .. rho_7 on H_{8,k,1} (k > 5) in the usual labeling of the 14 walks
TABLE_BLOCKS = (
    ((1,), (3,), (5,), (7,), (9,)),
    ((1, 2), (3, 4), (5, 6), (7, 8), (9, 12)),
    ((1,), (3,), (6, 10), (8, 11), (12, 13)),
    ((1, 5), (2, 6), (3, 7), (4, 8), (13, 14)),
    ((1,), (2,), (7, 9), (8, 12), (11, 13)),
    ((1, 3), (2, 4), (5, 7), (6, 8), (10, 11)),
    ((1,), (2,), (5,), (6,), (10,)),
)


class EncodedBasis(object):
    """ the 2^n encoded bit strings inside H_{4n,k,1}; qubit 1 is the most significant bit """

    def __init__(self, qubits, k):
        if qubits < 1:
            raise EncodingError(f"need at least one qubit, not {qubits}")
        if k < 4:
            raise EncodingError(f"the encoding of bit 1 visits site 3 and needs k >= 4, not {k}")
        self.qubits = qubits
        self.k = k
        self.basis = enumerate_basis(4 * qubits, k, 1)
        self.indices = tuple(self.basis.index[self.path(bits)] for bits in bitstrings(qubits))

    def __len__(self):
        return len(self.indices)

    @staticmethod
    def path(bits):
        return sum((ENCODED_BITS[bit] for bit in bits), ())

    def zero_state(self):
        state = np.zeros(len(self.basis), dtype=complex)
        state[self.indices[0]] = 1.0
        return state

    def restrict(self, matrix):
        """ the block of an operator on the encoded subspace S """
        return np.asarray(matrix)[np.ix_(self.indices, self.indices)]


def _check_power_of_two(U):
    dim = len(U)
    qubits = dim.bit_length() - 1
    if dim < 2 or 2 ** qubits != dim:
        raise EncodingError(f"gate dimension {dim} is not a power of two")
    return qubits


def encode_gate(U, qubits, k, position=1):
    """ U on qubits position .. position + q - 1, identity on the rest of H_{4n,k,1} """
    U = check_unitary(U, 'gate')
    q = _check_power_of_two(U)
    if not 1 <= position <= qubits - q + 1:
        raise EncodingError(f"a {q}-qubit gate at position {position} does not fit in {qubits} qubits")
    encoded = EncodedBasis(qubits, k)
    full = reduce(np.kron, [np.eye(2 ** (position - 1)), U, np.eye(2 ** (qubits - position - q + 1))])
    result = np.eye(len(encoded.basis), dtype=complex)
    result[np.ix_(encoded.indices, encoded.indices)] = full
    return result


def _check_position(s, n):
    if not 1 <= s <= n - 1:
        raise EncodingError(f"two-qubit position {s} out of range for {n} qubits")


def reduce_to_b8(word, s, n):
    """ an 8-strand word acting on qubits s, s + 1 of n qubits, as a word in B_{4n} """
    _check_position(s, n)
    letters = tuple(word)
    if any(not 1 <= abs(j) <= 7 for j in letters):
        raise EncodingError(f"word {list(letters)} is not a word in the generators of B_8")
    return BraidWord(8, letters).shifted(4 * (s - 1), 4 * n)


def embedded_operator(M8, s, n, k):
    """
    Acts as M8 on steps 4(s - 1) .. 4(s + 1) - 1 of every walk visiting site 1 at both ends of that window,
    as the identity on all other walks of H_{4n,k,1}.
    """
    _check_position(s, n)
    basis8 = enumerate_basis(8, k, 1)
    basis = enumerate_basis(4 * n, k, 1)
    if np.shape(M8) != (len(basis8), len(basis8)):
        raise EncodingError(f"operator of shape {np.shape(M8)} does not act on H_(8,{k},1)")
    start, stop = 4 * (s - 1), 4 * (s + 1)
    result = np.eye(len(basis), dtype=complex)
    for p, path in enumerate(basis.paths):
        sites = basis.sites(path)
        if sites[start] != 1 or sites[stop] != 1:
            continue
        window = path[start:stop]
        result[p, p] = 0.0
        column = M8[:, basis8.index[window]]
        for q, inner in enumerate(basis8.paths):
            result[basis.index[path[:start] + inner + path[stop:]], p] = column[q]
    return result


BlockStructure = namedtuple('BlockStructure', 'generator k blocks nontrivial')


def _components(pattern):
    parent = list(range(len(pattern)))

    def root(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for p, q in zip(*np.nonzero(pattern)):
        parent[root(p)] = root(q)
    groups = {}
    for p in range(len(pattern)):
        groups.setdefault(root(p), []).append(p)
    return sorted(tuple(group) for group in groups.values())


def block_structure(i, k):
    """ connected components of the non-zero pattern of Phi_i on H_{8,k,1} """
    if k < 5:
        raise EncodingError(f"block structure is defined for k >= 5, not {k}")
    phi = phi_matrix(i, enumerate_basis(8, k, 1))
    blocks = _components(np.abs(phi) > settings.block_tol)
    nontrivial = tuple(bool(np.any(np.abs(phi[np.ix_(b, b)]) > settings.block_tol)) for b in blocks)
    return BlockStructure(i, k, tuple(blocks), nontrivial)


def nontrivial_blocks(structure):
    return [block for block, flag in zip(structure.blocks, structure.nontrivial) if flag]


def table_blocks(k):
    """ the table with walk 14 removed when it leaves G_k (k = 5) """
    if k > 5:
        return TABLE_BLOCKS
    return tuple(tuple(tuple(label for label in block if label != 14) for block in row) for row in TABLE_BLOCKS)


Labeling = namedtuple('Labeling', 'labels unique')


def reconstruct_labels(k):
    """
    Finds the labels 1 .. 14 of our canonically ordered walks under which the computed non-trivial blocks of
    all seven generators coincide with the table; the lexicographically least labeling is returned.
    """
    structures = [block_structure(i, k) for i in range(1, 8)]
    rows = table_blocks(k)
    size = len(enumerate_basis(8, k, 1))
    labels = sorted({label for row in rows for block in row for label in block})
    if len(labels) != size:
        raise LabelingError(f"table labels {len(labels)} walks, H_(8,{k},1) has {size}")

    computed = [{p: block for block in nontrivial_blocks(s) for p in block} for s in structures]
    tabled = [{label: block for block in row for label in block} for row in rows]
    row_sets = [set(frozenset(block) for block in row) for row in rows]

    def signature(lookup, item):
        return tuple(len(table[item]) if item in table else 0 for table in lookup)

    candidates = [[label for label in labels if signature(tabled, label) == signature(computed, p)]
                  for p in range(size)]
    solutions = []
    assignment = {}

    def consistent(p):
        for table, row_set in zip(computed, row_sets):
            block = table.get(p)
            if block and all(q in assignment for q in block):
                if frozenset(assignment[q] for q in block) not in row_set:
                    return False
        return True

    def search(p, used):
        if len(solutions) > 1:
            return
        if p == size:
            solutions.append(tuple(assignment[q] for q in range(size)))
            return
        for label in candidates[p]:
            if label in used:
                continue
            assignment[p] = label
            if consistent(p):
                search(p + 1, used | {label})
            del assignment[p]

    search(0, frozenset())
    if not solutions:
        raise LabelingError(f"no labeling of H_(8,{k},1) reproduces the block table")
    if len(solutions) > 1:
        logger.warning("the block table does not determine the labeling uniquely at k=%d", k)
    return Labeling(dict(enumerate(solutions[0])), len(solutions) == 1)


def encoded_subspace_indices(k):
    """ indices of the encoded two-qubit strings 00, 01, 10, 11 in H_{8,k,1} """
    return EncodedBasis(2, k).indices


if __name__ == '__main__':
    print(reconstruct_labels(7))
