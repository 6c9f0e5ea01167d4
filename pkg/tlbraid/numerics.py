"""
Exact Laurent polynomials in the formal variable A and the dense complex linear algebra shared by the
other modules (operator norm, projective distance, projection onto SU(d), Haar sampling).
"""
import cmath
import logging
import math
from numbers import Integral

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.stats import unitary_group

from tlbraid.config import settings
from tlbraid.exceptions import NumericsError, DimensionError, NotUnitaryError
from tlbraid.tools.parsers import parse_exponent_pairs, encode_exponent_pairs
from tlbraid.tools.utils import make_rng

logger = logging.getLogger(__name__)


class LaurentPolynomial(object):
    """ immutable polynomial in A and 1/A with (arbitrary precision) integer coefficients """
    __slots__ = ('_terms', '_hash')

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        return cls({exponent: coefficient})

    @classmethod
    def from_string(cls, string):
        return cls(parse_exponent_pairs(string))

    def __init__(self, terms=None):
        clean = {}
        for exponent, coefficient in dict(terms or {}).items():
            if not isinstance(exponent, Integral) or not isinstance(coefficient, Integral):
                raise TypeError(f"exponents and coefficients must be integers, not {exponent!r}: {coefficient!r}")
            if coefficient:
                clean[int(exponent)] = int(coefficient)
        self._terms = clean
        self._hash = None

    @property
    def terms(self):
        return dict(self._terms)

    @property
    def min_exponent(self):
        return min(self._terms) if self._terms else None

    @property
    def max_exponent(self):
        return max(self._terms) if self._terms else None

    def is_monomial(self):
        return len(self._terms) == 1

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, Integral):
            return LaurentPolynomial({0: other})
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if set(self._terms) <= {0}:
                self._hash = hash(self._terms.get(0, 0))  # constants hash like the ints they equal
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPolynomial(terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                terms[e1 + e2] = terms.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(terms)

    __rmul__ = __mul__

    def __pow__(self, power):
        if not isinstance(power, Integral):
            raise TypeError(f"only integer powers of Laurent polynomials, not {power!r}")
        if power < 0:
            if not self.is_monomial():
                raise NumericsError(f"negative power of non-monomial {self}")
            (e, c), = self._terms.items()
            if abs(c) != 1:
                raise NumericsError(f"negative power of {self} has non-integer coefficients")
            return LaurentPolynomial({e * power: c ** (-power)})
        result, base = LaurentPolynomial({0: 1}), self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def mirror(self):
        """ substitutes A -> 1/A """
        return LaurentPolynomial({-e: c for e, c in self._terms.items()})

    def evaluate(self, a):
        return laurent_eval(self, a)

    def __str__(self):
        return encode_exponent_pairs(self._terms)

    def __repr__(self):
        return f"{type(self).__name__}('{self}')"


def loop_value():
    """ d = -A^2 - A^-2 """
    return LaurentPolynomial({2: -1, -2: -1})


def laurent_eval(p, a):
    a = complex(a)
    if a == 0:
        raise NumericsError("cannot evaluate a Laurent polynomial at A = 0")
    return sum((c * a ** e for e, c in p.terms.items()), 0j)


def dagger(matrix):
    return np.conj(matrix).T


def operator_norm(matrix):
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0.0
    return float(np.linalg.svd(matrix, compute_uv=False)[0])


def is_unitary(matrix, tol=None):
    tol = settings.unitary_tol if tol is None else tol
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return False
    return np.max(np.abs(dagger(matrix) @ matrix - np.eye(len(matrix))), initial=0.0) <= tol


def check_unitary(matrix, name='matrix', tol=None):
    if not is_unitary(matrix, tol):
        raise NotUnitaryError(f"{name} is not unitary within {tol or settings.unitary_tol}")
    return np.asarray(matrix, dtype=complex)


def _check_same_shape(U, V):
    if np.shape(U) != np.shape(V):
        raise DimensionError(f"dimension mismatch: {np.shape(U)} != {np.shape(V)}")


def proj_align(U, V):
    """
    Returns (distance, phase) with distance = min over phase of ||U - exp(i*phase) V|| for unitaries.
    The eigenphases of V^dagger U all lie on an arc; the optimal phase is the center of the smallest such arc.
    """
    _check_same_shape(U, V)
    check_unitary(U, 'first argument')
    check_unitary(V, 'second argument')
    phases = np.sort(np.angle(np.linalg.eigvals(dagger(V) @ U)))
    gaps = np.diff(np.append(phases, phases[0] + 2 * math.pi))
    largest = int(np.argmax(gaps))
    width = 2 * math.pi - gaps[largest]
    start = phases[(largest + 1) % len(phases)]
    return 2 * math.sin(width / 4), float(start + width / 2)


def proj_distance(U, V):
    return proj_align(U, V)[0]


def phase_scan_distance(U, V, scan=None):
    """ min over phase of ||U - exp(i*phase) V|| for arbitrary (e.g. column restricted) matrices """
    _check_same_shape(U, V)
    scan = scan or settings.phase_scan
    U, V = np.asarray(U), np.asarray(V)

    def distance(phase):
        return operator_norm(U - cmath.exp(1j * phase) * V)

    phases = np.linspace(0, 2 * math.pi, scan, endpoint=False)
    best = min(phases, key=distance)
    step = 2 * math.pi / scan
    refined = minimize_scalar(distance, bounds=(best - step, best + step), method='bounded')
    return float(min(distance(best), refined.fun))


def trace_overlaps(stack, M):
    """ |tr(S^dagger M)| for every S in a (N, d, d) stack """
    return np.abs(np.einsum('nij,ij->n', np.conj(stack), M))


def proj_lower_bounds(stack, M):
    """
    Lower bounds on proj_distance(S, M) for a stack of unitaries, from the phase optimal Frobenius norm.
    Exact for d == 2.
    """
    d = len(M)
    overlaps = trace_overlaps(stack, M)
    if d == 2:
        width = np.arccos(np.clip(overlaps ** 2 / 2 - 1, -1.0, 1.0))
        return 2 * np.sin(width / 4)
    return np.sqrt(np.maximum(0.0, 2 * d - 2 * overlaps) / d)


def su_project(U):
    """ (det U)^(-1/d) U with the principal root """
    U = check_unitary(U, 'projected matrix')
    det = np.linalg.det(U)
    return U / det ** (1.0 / len(U))


def haar_unitary(dim, rng=None):
    rng = make_rng(rng)
    if dim == 1:
        return np.array([[cmath.exp(2j * math.pi * rng.random())]])
    return unitary_group.rvs(dim, random_state=rng)


def haar_special_unitary(dim, rng=None):
    return su_project(haar_unitary(dim, rng))


if __name__ == '__main__':
    d = loop_value()
    print(d, laurent_eval(d, 1j * cmath.exp(-1j * math.pi / 10)))
