import cmath
import math
import unittest

import numpy as np

from tlbraid.exceptions import DimensionError, NotUnitaryError, NumericsError
from tlbraid.numerics import (LaurentPolynomial, loop_value, laurent_eval, operator_norm, is_unitary, proj_align,
                              proj_distance, phase_scan_distance, proj_lower_bounds, su_project, haar_unitary,
                              haar_special_unitary)

A = LaurentPolynomial.monomial(1)


class TestLaurentPolynomial(unittest.TestCase):

    def test_arithmetic(self):
        p = A + A ** -1
        assert p * p == A ** 2 + 2 + A ** -2
        assert p - p == LaurentPolynomial()
        assert not (p - p)
        assert 3 - p == LaurentPolynomial({0: 3, 1: -1, -1: -1})
        assert (A ** 2 - 1) * (A ** 2 + 1) == A ** 4 - 1
        assert LaurentPolynomial.monomial(-3, -1) ** -2 == LaurentPolynomial({6: 1})
        assert p ** 0 == 1

    def test_big_coefficients(self):
        p = (A + 1) ** 80
        assert p.terms[40] == math.comb(80, 40)
        assert p.max_exponent == 80 and p.min_exponent == 0

    def test_invalid(self):
        with self.assertRaises(NumericsError):
            (A + 1) ** -1
        with self.assertRaises(NumericsError):
            LaurentPolynomial.monomial(1, 2) ** -1
        with self.assertRaises(TypeError):
            LaurentPolynomial({0.5: 1})
        with self.assertRaises(NumericsError):
            laurent_eval(A, 0)

    def test_string_and_mirror(self):
        d = loop_value()
        assert str(d) == '-2:-1,2:-1'
        assert LaurentPolynomial.from_string(str(d)) == d
        assert (A ** 3 - A ** -1).mirror() == A ** -3 - A
        assert hash(d) == hash(LaurentPolynomial({2: -1, -2: -1}))

    def test_constants_hash_as_ints(self):
        for value in (0, 1, -3, 2 ** 70):
            constant = LaurentPolynomial({0: value})
            assert constant == value and hash(constant) == hash(value)
            assert len({constant, value}) == 1
        assert {LaurentPolynomial(): 'zero'}[0] == 'zero'

    def test_evaluate(self):
        for k in (5, 7, 10):
            a = 1j * cmath.exp(-0.5j * math.pi / k)
            assert abs(loop_value().evaluate(a) - 2 * math.cos(math.pi / k)) < 1e-12


class TestLinearAlgebra(unittest.TestCase):

    def test_operator_norm(self):
        assert abs(operator_norm(np.diag([1, -3, 2])) - 3) < 1e-12
        assert operator_norm(np.zeros((0, 0))) == 0.0

    def test_proj_distance(self):
        Z = np.diag([1, -1])
        assert abs(proj_distance(Z, np.eye(2)) - math.sqrt(2)) < 1e-12
        U = haar_unitary(4, 5)
        assert proj_distance(U, cmath.exp(0.7j) * U) < 1e-7
        distance, phase = proj_align(cmath.exp(0.3j) * U, U)
        assert distance < 1e-7
        assert abs(cmath.exp(1j * phase) - cmath.exp(0.3j)) < 1e-7

    def test_proj_distance_errors(self):
        with self.assertRaises(DimensionError):
            proj_distance(np.eye(2), np.eye(3))
        with self.assertRaises(NotUnitaryError):
            proj_distance(2 * np.eye(2), np.eye(2))

    def test_phase_scan_agrees(self):
        rng = np.random.default_rng(11)
        for dim in (2, 3, 5):
            U, V = haar_unitary(dim, rng), haar_unitary(dim, rng)
            assert abs(phase_scan_distance(U, V) - proj_distance(U, V)) < 1e-4

    def test_lower_bounds(self):
        rng = np.random.default_rng(12)
        for dim in (2, 4):
            stack = np.array([haar_unitary(dim, rng) for _ in range(20)])
            target = haar_unitary(dim, rng)
            bounds = proj_lower_bounds(stack, target)
            exact = np.array([proj_distance(S, target) for S in stack])
            assert np.all(bounds <= exact + 1e-9)
            if dim == 2:
                assert np.allclose(bounds, exact, atol=1e-7)

    def test_special_and_haar(self):
        rng = np.random.default_rng(13)
        for dim in (1, 2, 6):
            U = haar_unitary(dim, rng)
            assert is_unitary(U)
            S = haar_special_unitary(dim, rng)
            assert abs(np.linalg.det(S) - 1) < 1e-10
            assert proj_distance(su_project(U), U) < 1e-7
        assert not is_unitary(np.ones((2, 3)))


if __name__ == '__main__':
    unittest.main()
