"""
Abstract words over a finite set of unitary generators, and the generator sets used for synthesis:
the path model generators on H_{8,k,1} and their invariant two dimensional seed block.
"""
import logging
from collections import namedtuple
from numbers import Integral

import numpy as np

from tlbraid.config import settings
from tlbraid.exceptions import DimensionError, NotUnitaryError
from tlbraid.numerics import dagger, is_unitary, operator_norm
from tlbraid.pathmodel import enumerate_basis, rho_generator, UP, DOWN

logger = logging.getLogger(__name__)

Approximation = namedtuple('Approximation', 'word matrix distance')


class GeneratorWord(tuple):
    """ signed 1-based generator indices; -i is the inverse of generator i """

    def __new__(cls, letters=()):
        letters = tuple(letters)
        for j in letters:
            if not isinstance(j, Integral) or j == 0:
                raise ValueError(f"invalid letter {j!r} in generator word")
        return super().__new__(cls, (int(j) for j in letters))

    @classmethod
    def commutator(cls, u, v):
        """ u v u^-1 v^-1 """
        u, v = cls(u), cls(v)
        return u + v + u.inverse() + v.inverse()

    def __add__(self, other):
        return GeneratorWord(tuple(self) + tuple(other))

    def __repr__(self):
        return f"{type(self).__name__}({list(self)})"

    def inverse(self):
        return GeneratorWord(-j for j in reversed(self))

    def power(self, exponent):
        if exponent < 0:
            return self.inverse().power(-exponent)
        return GeneratorWord(tuple(self) * exponent)

    def reduced(self):
        """ cancels adjacent letter pairs i, -i """
        stack = []
        for j in self:
            if stack and stack[-1] == -j:
                stack.pop()
            else:
                stack.append(j)
        return GeneratorWord(stack)

    def substitute(self, mapping):
        """ replaces letter i by mapping[i] and -i by its inverse """
        result = []
        for j in self:
            word = GeneratorWord(mapping[abs(j)])
            result.extend(word if j > 0 else word.inverse())
        return GeneratorWord(result)


class GeneratorSet(object):
    """ named list of unitaries of equal dimension with their inverses """

    def __init__(self, name, elements, provenance='abstract', tol=None):
        tol = settings.algebra_tol if tol is None else tol
        elements = [np.array(e, dtype=complex) for e in elements]
        if not elements:
            raise ValueError(f"generator set '{name}' is empty")
        shape = elements[0].shape
        for n, element in enumerate(elements, 1):
            if element.shape != shape:
                raise DimensionError(f"generator {n} of '{name}' has shape {element.shape}, not {shape}")
            if not is_unitary(element, tol):
                raise NotUnitaryError(f"generator {n} of '{name}' is not unitary within {tol}")
        self.name = name
        self.provenance = provenance
        self.elements = tuple(elements)
        self.inverses = tuple(dagger(e) for e in elements)
        for n, (element, inverse) in enumerate(zip(self.elements, self.inverses), 1):
            if operator_norm(element @ inverse - np.eye(len(element))) > tol:
                raise NotUnitaryError(f"inverse of generator {n} of '{name}' does not check")

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"{type(self).__name__}('{self.name}', {len(self)} generators, dim={self.dim})"

    @property
    def dim(self):
        return len(self.elements[0])

    def letters(self):
        """ all signed letters in lexicographic order """
        return sorted([j for j in range(1, len(self) + 1)] + [-j for j in range(1, len(self) + 1)])

    def letter(self, j):
        if not 1 <= abs(j) <= len(self):
            raise ValueError(f"letter {j} is not a generator of '{self.name}'")
        return self.elements[j - 1] if j > 0 else self.inverses[-j - 1]

    def evaluate(self, word):
        result = np.eye(self.dim, dtype=complex)
        for j in word:
            result = result @ self.letter(j)
        return result

    def restrict(self, indices, generators=None, name=None):
        """ the action on an invariant coordinate subspace, optionally for a subset of the generators """
        indices = list(indices)
        generators = list(generators or range(1, len(self) + 1))
        others = [p for p in range(self.dim) if p not in indices]
        blocks = []
        for j in generators:
            element = self.elements[j - 1]
            leak = max(np.max(np.abs(element[np.ix_(others, indices)]), initial=0.0),
                       np.max(np.abs(element[np.ix_(indices, others)]), initial=0.0))
            if leak > settings.algebra_tol:
                raise DimensionError(f"coordinates {indices} are not invariant under generator {j} of '{self.name}'")
            blocks.append(element[np.ix_(indices, indices)])
        return GeneratorSet(name or f"{self.name}{indices}", blocks, self.provenance)

    def powers(self, exponent, name=None):
        """ the generators raised to a fixed power """
        return GeneratorSet(name or f"{self.name}^{exponent}",
                            [np.linalg.matrix_power(e, exponent) for e in self.elements],
                            self.provenance)


def path_model_generators(k, n=8):
    """ rho_1 .. rho_{n-1} on H_{n,k,1} """
    basis = enumerate_basis(n, k, 1)
    return GeneratorSet(f"rho(n={n},k={k})", [rho_generator(i, basis) for i in range(1, n)],
                        provenance=('path-model', k))


SEED_PATHS = ((UP, UP, DOWN, DOWN, UP, DOWN, UP, DOWN), (UP, DOWN, UP, DOWN, UP, DOWN, UP, DOWN))


def seed_block_indices(k):
    """ the zig-zag walk and its flip on steps 3, 4: a block invariant under rho_1 and rho_2 """
    basis = enumerate_basis(8, k, 1)
    return [basis.index[path] for path in SEED_PATHS]


def seed_pair(k):
    """ rho_1, rho_2 restricted to their common two dimensional block """
    return path_model_generators(k).restrict(seed_block_indices(k), generators=(1, 2), name=f"seed(k={k})")


if __name__ == '__main__':
    print(seed_pair(7).elements)
