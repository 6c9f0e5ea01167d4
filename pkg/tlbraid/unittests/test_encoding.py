import unittest

import numpy as np

from tlbraid.braid import BraidWord
from tlbraid.exceptions import EncodingError, NotUnitaryError
from tlbraid.encoding import (ENCODED_BITS, TABLE_BLOCKS, EncodedBasis, encode_gate, reduce_to_b8,
                              embedded_operator, block_structure, nontrivial_blocks, table_blocks,
                              reconstruct_labels, encoded_subspace_indices)
from tlbraid.numerics import haar_unitary
from tlbraid.pathmodel import enumerate_basis, rho_of_word


class TestEncodedBasis(unittest.TestCase):

    def test_indices(self):
        encoded = EncodedBasis(2, 7)
        assert len(encoded) == 4
        assert len(set(encoded.indices)) == 4
        assert encoded.indices == encoded_subspace_indices(7)
        basis = enumerate_basis(8, 7, 1)
        assert basis.sites(basis.paths[encoded.indices[0]]) == [1, 2, 1, 2, 1, 2, 1, 2, 1]
        assert basis.sites(basis.paths[encoded.indices[3]]) == [1, 2, 3, 2, 1, 2, 3, 2, 1]
        assert EncodedBasis.path((0, 1)) == ENCODED_BITS[0] + ENCODED_BITS[1]

    def test_zero_state(self):
        encoded = EncodedBasis(3, 5)
        state = encoded.zero_state()
        assert state.shape == (len(encoded.basis),)
        assert state[encoded.indices[0]] == 1 and np.sum(np.abs(state)) == 1

    def test_invalid(self):
        with self.assertRaises(EncodingError):
            EncodedBasis(0, 7)
        with self.assertRaises(EncodingError):
            EncodedBasis(2, 3)


class TestEncodeGate(unittest.TestCase):

    def test_block(self):
        rng = np.random.default_rng(5)
        U = haar_unitary(4, rng)
        encoded = EncodedBasis(2, 7)
        full = encode_gate(U, 2, 7)
        assert np.allclose(encoded.restrict(full), U)
        others = [p for p in range(len(encoded.basis)) if p not in encoded.indices]
        assert np.allclose(full[np.ix_(others, others)], np.eye(len(others)))

    def test_position(self):
        rng = np.random.default_rng(6)
        U = haar_unitary(2, rng)
        encoded = EncodedBasis(3, 7)
        full = encode_gate(U, 3, 7, position=2)
        assert np.allclose(encoded.restrict(full), np.kron(np.eye(2), np.kron(U, np.eye(2))))

    def test_products(self):
        rng = np.random.default_rng(7)
        for qubits, size in ((2, 4), (3, 2)):
            U, V = haar_unitary(size, rng), haar_unitary(size, rng)
            assert np.allclose(encode_gate(U @ V, qubits, 7), encode_gate(U, qubits, 7) @ encode_gate(V, qubits, 7))

    def test_invalid(self):
        with self.assertRaises(EncodingError):
            encode_gate(haar_unitary(3,np.random.default_rng(0)), 2, 7)
        with self.assertRaises(EncodingError):
            encode_gate(np.eye(4), 2, 7, position=2)
        with self.assertRaises(NotUnitaryError):
            encode_gate(2 * np.eye(2), 2, 7)


class TestEmbedding(unittest.TestCase):

    def test_reduce_to_b8(self):
        assert reduce_to_b8([1, -7], 2, 3) == BraidWord(12, [5, -11])
        assert reduce_to_b8([], 1, 2) == BraidWord(8, [])
        with self.assertRaises(EncodingError):
            reduce_to_b8([8], 1, 2)
        with self.assertRaises(EncodingError):
            reduce_to_b8([1], 3, 3)

    def test_embedded_operator(self):
        rng = np.random.default_rng(8)
        k, n = 7, 3
        basis8 = enumerate_basis(8, k, 1)
        basis = enumerate_basis(4 * n, k, 1)
        encoded = EncodedBasis(n, k)
        for s in (1, 2):
            letters = [int(rng.choice([-1, 1])) * int(rng.integers(1, 8)) for _ in range(6)]
            M8 = rho_of_word(BraidWord(8, letters), basis8)
            full = rho_of_word(reduce_to_b8(letters, s, n), basis)
            embedded = embedded_operator(M8, s, n, k)
            assert np.allclose(full[:, encoded.indices], embedded[:, encoded.indices])

    def test_embedded_shape(self):
        with self.assertRaises(EncodingError):
            embedded_operator(np.eye(3), 1, 2, 7)


class TestBlocks(unittest.TestCase):

    def test_block_sizes(self):
        for i in range(1, 8):
            computed = sorted(len(block) for block in nontrivial_blocks(block_structure(i, 7)))
            assert computed == sorted(len(block) for block in TABLE_BLOCKS[i - 1])

    def test_partition(self):
        structure = block_structure(3, 7)
        assert sorted(p for block in structure.blocks for p in block) == list(range(14))
        assert len(structure.nontrivial) == len(structure.blocks)

    def test_table_without_walk_14(self):
        assert table_blocks(7) == TABLE_BLOCKS
        assert all(14 not in block for row in table_blocks(5) for block in row)
        with self.assertRaises(EncodingError):
            block_structure(1, 4)

    def test_labels(self):
        labeling = reconstruct_labels(7)
        assert sorted(labeling.labels.values()) == list(range(1, 15))
        assert sorted(labeling.labels) == list(range(14))

    def test_relabeled_blocks(self):
        for k in (5, 7):
            labels = reconstruct_labels(k).labels
            for i, row in enumerate(table_blocks(k), 1):
                relabeled = {frozenset(labels[p] for p in block) for block in nontrivial_blocks(block_structure(i, k))}
                assert relabeled == {frozenset(block) for block in row}
        assert sorted(reconstruct_labels(5).labels.values()) == list(range(1, 14))


if __name__ == '__main__':
    unittest.main()
