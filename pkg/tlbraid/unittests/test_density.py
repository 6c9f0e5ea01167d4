import unittest

import numpy as np
from scipy.linalg import expm

from tlbraid.density import (SU2Synthesizer, su2_generate, special_mover, Bridge, FactorProduct, Factor, bridge_move,
                             bridge_synthesize, decouple_search, _synthesizer)
from tlbraid.exceptions import DimensionError, FiniteImageError, NotABridgeError
from tlbraid.generators import GeneratorSet, seed_pair
from tlbraid.numerics import haar_special_unitary, haar_unitary, proj_distance, su_project


def random_hermitian(rng, dim):
    X = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (X + np.conj(X).T) / 2


class TestSU2(unittest.TestCase):

    def test_dense_levels(self):
        rng = np.random.default_rng(11)
        for k in (5, 7):
            g1, g2 = seed_pair(k).elements
            for _ in range(20):
                target = haar_special_unitary(2, rng)
                approximation = su2_generate(g1, g2, target, 0.05)
                assert approximation.distance < 0.05
                assert abs(proj_distance(GeneratorSet('seed', [g1, g2]).evaluate(approximation.word), target)
                           - approximation.distance) < 1e-9

    def test_trivial_targets(self):
        g1, g2 = seed_pair(7).elements
        assert su2_generate(g1, g2, np.eye(2), 0.05).word == ()
        assert list(su2_generate(g1, g2, g2, 0.05).word) == [2]
        hits = _synthesizer.cache_info().hits
        su2_generate(g1.copy(), g2.copy(), g1, 0.05)
        assert _synthesizer.cache_info().hits == hits + 1

    def test_finite_images(self):
        """ the seed block generates a finite group at k = 6 and, on three strands, at k = 10 """
        rng = np.random.default_rng(12)
        for k in (6, 10):
            g1, g2 = seed_pair(k).elements
            with self.assertRaises(FiniteImageError):
                SU2Synthesizer(g1, g2).generate(haar_special_unitary(2, rng), 0.05)

    def test_commuting(self):
        with self.assertRaises(ValueError):
            SU2Synthesizer(np.diag([1j, -1j]), np.diag([-1, -1]))
        with self.assertRaises(DimensionError):
            SU2Synthesizer(np.eye(3), np.eye(2))


class TestMovers(unittest.TestCase):

    def test_special_mover(self):
        rng = np.random.default_rng(3)
        for m in (2, 3, 5):
            x = haar_unitary(m, rng)[:, 0]
            y = haar_unitary(m, rng)[:, 0]
            mover = special_mover(x, y)
            assert np.allclose(mover @ x, y)
            assert abs(np.linalg.det(mover) - 1) < 1e-9
        assert np.allclose(special_mover(np.array([1j]), np.array([1])), np.eye(1))

    def test_factor_product(self):
        rng = np.random.default_rng(4)
        U, V = haar_unitary(3, rng), haar_unitary(3, rng)
        product = FactorProduct(3, [Factor('A', U), Factor('W', V)])
        assert np.allclose(product.matrix(), U @ V)
        assert np.allclose(product.inverse().matrix() @ product.matrix(), np.eye(3))
        assert product.inverse().count() == {'A': 1, 'W*': 1}
        assert len(product @ product) == 4


class TestBridge(unittest.TestCase):

    def test_geometric_residuals(self):
        """ every round multiplies the A part of the vector by the bridge rate """
        rng = np.random.default_rng(21)
        for dim_a, dim_b in ((1, 2), (2, 3), (1, 3), (2, 4), (3, 5)):
            dim = dim_a + dim_b
            W = expm(0.2j * random_hermitian(rng, dim))
            bridge = Bridge(range(dim_a), range(dim_a, dim), W)
            psi = haar_unitary(dim, rng)[:, 0]
            residuals = bridge.anchor(psi, 1e-8).residuals
            assert len(residuals) >= 11
            ratios = np.array(residuals[1:]) / np.array(residuals[:-1])
            assert np.all(np.abs(ratios / bridge.rate - 1) < 0.05)

    def test_move(self):
        rng = np.random.default_rng(22)
        W = haar_unitary(5, rng)
        psi, phi = haar_unitary(5, rng)[:, 0], haar_unitary(5, rng)[:, 0]
        product = bridge_move([0, 1], [2, 3, 4], W, psi, phi, 1e-6)
        assert np.linalg.norm(product.matrix() @ psi - phi) <= 1.01e-6
        assert product.count('W') + product.count('W*') >= 1

    def test_invalid(self):
        with self.assertRaises(DimensionError):
            Bridge([0, 1], [2], np.eye(3))
        with self.assertRaises(DimensionError):
            Bridge([0], [0, 1], np.eye(3))
        with self.assertRaises(NotABridgeError):
            Bridge([0], [1, 2], np.eye(3))

    def test_synthesize(self):
        rng = np.random.default_rng(23)
        W = haar_unitary(3, rng)
        for _ in range(5):
            target = haar_special_unitary(3, rng)
            result = bridge_synthesize([0], [1, 2], W, target, 1e-2, rng)
            assert result.distance < 1e-2
            assert np.allclose(result.matrix, result.product.matrix())

    def test_synthesize_not_special(self):
        W = haar_unitary(3, np.random.default_rng(24))
        with self.assertRaises(ValueError):
            bridge_synthesize([0], [1, 2], W, 1j * np.eye(3), 1e-2)


class TestDecoupling(unittest.TestCase):

    def test_identity_target(self):
        result = decouple_search((seed_pair(7), seed_pair(5)), np.eye(2), 0.1)
        assert result.success and result.word == () and result.evaluated == 0

    def test_consistency(self):
        tau_a, tau_b = seed_pair(7), seed_pair(5)
        target = su_project(haar_unitary(2, np.random.default_rng(25)))
        result = decouple_search((tau_a, tau_b), target, 0.2, budget=3000, max_len=3, max_power=200)
        if result.word:
            assert abs(proj_distance(tau_a.evaluate(result.word), target) - result.distance_a) < 1e-6
            assert abs(proj_distance(tau_b.evaluate(result.word), np.eye(2)) - result.distance_b) < 1e-6
            assert result.success == (max(result.distance_a, result.distance_b) < 0.2)

    def test_success_rate(self):
        # 3-dim monomial matrices over fifth roots of unity generate a finite group
        D = np.diag(np.exp(2j * np.pi * np.array([1, 2, 2]) / 5))
        P = np.roll(np.eye(3), 1, axis=0)
        tau_a, tau_b = seed_pair(7), GeneratorSet('monomial', [D, P @ D])
        rng = np.random.default_rng(26)
        successes = 0
        for _ in range(20):
            target = su_project(haar_unitary(2, rng))
            result = decouple_search((tau_a, tau_b), target, 0.2)
            if result.success:
                successes += 1
                assert proj_distance(tau_a.evaluate(result.word), target) < 0.2
                assert proj_distance(tau_b.evaluate(result.word), np.eye(3)) < 0.2
        assert successes >= 16

    def test_equal_dimensions(self):
        pair = seed_pair(7)
        target = np.array([[0, 1], [-1, 0]], dtype=complex)
        with self.assertLogs('tlbraid.density', 'WARNING'):
            result = decouple_search((pair, pair), target, 0.1, budget=2000, max_len=3, max_power=100)
        assert not result.success

    def test_mismatch(self):
        gens = GeneratorSet('three', [np.eye(2), np.eye(2), np.eye(2)])
        with self.assertRaises(ValueError):
            decouple_search((seed_pair(7), gens), np.eye(2), 0.1)


if __name__ == '__main__':
    unittest.main()
