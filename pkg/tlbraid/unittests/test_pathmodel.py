import math
import unittest

import numpy as np

from tlbraid.braid import BraidWord, braid_writhe
from tlbraid.exceptions import BraidError
from tlbraid.kauffman import jones_at_root
from tlbraid.numerics import is_unitary
from tlbraid.pathmodel import (UP, DOWN, ModelParams, enumerate_basis, unbounded_basis, phi_matrix, rho_generator,
                               rho_of_word, alpha_expectation, sector_dimensions, big_n, delta_scale,
                               calibration_constant, diagonalizer, limit_diagonalizer, block_eigenvalues)
from tlbraid.unittests.testing_tools import TREFOIL, HOPF, random_braid

TOL = 1e-10


class TestBasis(unittest.TestCase):

    def test_dimensions(self):
        assert len(enumerate_basis(8, 7, 1)) == 14
        assert len(enumerate_basis(8, 5, 1)) == 13
        assert len(unbounded_basis(8)) == 14
        assert sector_dimensions(8, 7)[1] == 14
        assert sum(sector_dimensions(6, 5).values()) == len(enumerate_basis(6, 5))
        assert len(enumerate_basis(4, 3, 1)) == 1

    def test_paths(self):
        basis = enumerate_basis(8, 7, 1)
        assert basis.paths[0] == (UP, UP, UP, UP, DOWN, DOWN, DOWN, DOWN)
        assert basis.zigzag() == (UP, DOWN) * 4
        assert basis.sites(basis.zigzag()) == [1, 2, 1, 2, 1, 2, 1, 2, 1]
        assert unbounded_basis(8).paths == basis.paths
        for path in enumerate_basis(8, 5, 1):
            assert max(enumerate_basis(8, 5, 1).sites(path)) <= 4

    def test_invalid(self):
        with self.assertRaises(ValueError):
            ModelParams(2)
        with self.assertRaises(ValueError):
            enumerate_basis(4, 5, 5)
        with self.assertRaises(BraidError):
            phi_matrix(8, enumerate_basis(8, 7, 1))
        with self.assertRaises(BraidError):
            rho_of_word(BraidWord(4, [1]), enumerate_basis(6, 7, 1))
        with self.assertRaises(BraidError):
            alpha_expectation(BraidWord(3, [1]), 7)

    def test_params(self):
        params = ModelParams(7)
        assert abs(params.d - 2 * math.cos(math.pi / 7)) < TOL
        assert abs(-params.A ** 2 - params.A ** -2 - params.d) < TOL
        assert params.lambdas[0] == params.lambdas[7] == 0.0


class TestRepresentation(unittest.TestCase):
    """ unitarity, the braid relations and the Temperley-Lieb relations """

    def test_algebra(self):
        for n in (4, 6, 8):
            for k in (5, 7, 8, 10, 12):
                basis = enumerate_basis(n, k, 1)
                d = basis.params.d
                rho = {i: rho_generator(i, basis) for i in range(1, n)}
                phi = {i: phi_matrix(i, basis) for i in range(1, n)}
                for i in range(1, n):
                    assert is_unitary(rho[i], TOL)
                    assert np.allclose(rho[i] @ rho_generator(i, basis, -1), np.eye(len(basis)), atol=TOL)
                    assert np.allclose(phi[i] @ phi[i], d * phi[i], atol=TOL)
                    if i + 1 < n:
                        assert np.allclose(rho[i] @ rho[i + 1] @ rho[i], rho[i + 1] @ rho[i] @ rho[i + 1], atol=TOL)
                        assert np.allclose(phi[i] @ phi[i + 1] @ phi[i], phi[i], atol=TOL)
                        assert np.allclose(phi[i + 1] @ phi[i] @ phi[i + 1], phi[i + 1], atol=TOL)
                    for j in range(i + 2, n):
                        assert np.allclose(rho[i] @ rho[j], rho[j] @ rho[i], atol=TOL)

    def test_sectors(self):
        """ rho_i and Phi_i never connect walks with different end points """
        for n, k in ((6, 5), (6, 7), (8, 7)):
            basis = enumerate_basis(n, k)
            ends = np.array([basis.sites(path)[-1] for path in basis.paths])
            across = ends[:, None] != ends[None, :]
            for i in range(1, n):
                assert np.all(rho_generator(i, basis)[across] == 0)
                assert np.all(phi_matrix(i, basis)[across] == 0)

    def test_word_order(self):
        basis = enumerate_basis(6, 7, 1)
        b1, b2 = BraidWord(6, [1, -3]), BraidWord(6, [2, 5, 2])
        assert np.allclose(rho_of_word(b1.compose(b2), basis), rho_of_word(b1, basis) @ rho_of_word(b2, basis))
        assert np.allclose(rho_of_word(b1.inverse(), basis), np.linalg.inv(rho_of_word(b1, basis)))

    def test_block_eigenvalues(self):
        for k in (5, 7, 10):
            params = ModelParams(k)
            basis = enumerate_basis(8, k, 1)
            expected = block_eigenvalues(params)
            for i in range(1, 8):
                for value in np.linalg.eigvals(rho_generator(i, basis)):
                    assert min(abs(value - e) for e in expected) < 1e-9

    def test_diagonalizer(self):
        for k in (7, 10):
            params = ModelParams(k)
            for z in (2, 3):
                M = diagonalizer(z, params)
                assert np.allclose(M @ M.T, np.eye(2))
        for z in (2, 3):
            errors = [np.linalg.norm(diagonalizer(z, ModelParams(k)) - limit_diagonalizer(z), 2)
                      for k in (20, 40, 80, 160)]
            assert all(a > b for a, b in zip(errors, errors[1:]))


class TestJonesCorrespondence(unittest.TestCase):

    def test_calibration(self):
        rng = np.random.default_rng(31)
        braids = [TREFOIL, HOPF, BraidWord(2, [1]), BraidWord(4, [])]
        braids += [random_braid(rng, int(rng.choice([2, 4])), int(rng.integers(0, 11))) for _ in range(50)]
        for index, b in enumerate(braids):
            k = (5, 7, 10)[index % 3]
            constant = calibration_constant(b.strands, k, braid_writhe(b))
            assert abs(jones_at_root(b, k, fast=True) - constant * alpha_expectation(b, k)) < 1e-8

    def test_identity_braids(self):
        """ the constant on identity braids is d^(n/2 - 1) """
        for n in (2, 4, 6):
            for k in (5, 7):
                b = BraidWord(n, [])
                assert abs(alpha_expectation(b, k) - 1) < TOL
                assert abs(calibration_constant(n, k, 0) - ModelParams(k).d ** (n // 2 - 1)) < TOL

    def test_delta_scale(self):
        params = ModelParams(7)
        assert abs(big_n(4, 7) - sum(params.lambdas[z] * c for z, c in sector_dimensions(4, 7).items())) < TOL
        assert abs(delta_scale(BraidWord(4, []), 7) - params.lambdas[1] * params.d ** 3 / big_n(4, 7)) < TOL


if __name__ == '__main__':
    unittest.main()
