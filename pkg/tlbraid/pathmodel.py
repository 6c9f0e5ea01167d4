"""
The path model: walks on the line graph G_k (sites 1 .. k - 1) starting at site 1, the Temperley-Lieb
generators Phi_i acting on them, and the unitary braid representation rho(sigma_i) = A Phi_i + 1/A.
"""
import cmath
import logging
import math
from functools import lru_cache

import numpy as np

from tlbraid.braid import braid_writhe
from tlbraid.exceptions import BraidError

logger = logging.getLogger(__name__)

UP, DOWN = 1, -1


class ModelParams(object):
    """ constants of the model at level k: theta = pi / k, A = i exp(-i theta / 2), d = 2 cos(theta) """

    def __init__(self, k):
        if int(k) != k or k < 3:
            raise ValueError(f"level k must be an integer >= 3, not {k}")
        self.k = int(k)
        self.theta = math.pi / self.k
        self.A = 1j * cmath.exp(-0.5j * self.theta)
        self.d = 2 * math.cos(self.theta)
        lambdas = [math.sin(j * self.theta) for j in range(self.k + 1)]
        lambdas[0] = lambdas[-1] = 0.0
        self.lambdas = tuple(lambdas)

    def __eq__(self, other):
        return isinstance(other, ModelParams) and self.k == other.k

    def __hash__(self):
        return hash(self.k)

    def __repr__(self):
        return f"{type(self).__name__}({self.k})"


class PathBasis(object):
    """ canonically ordered n-step walks from site 1, lexicographic on steps with +1 before -1 """

    def __init__(self, n, k, endpoint, paths):
        self.n = n
        self.k = k
        self.endpoint = endpoint
        self.paths = tuple(paths)
        self.index = {path: p for p, path in enumerate(self.paths)}
        self.params = ModelParams(k)

    def __len__(self):
        return len(self.paths)

    def __iter__(self):
        yield from self.paths

    def __eq__(self, other):
        if not isinstance(other, PathBasis):
            return NotImplemented
        return (self.n, self.k, self.endpoint) == (other.n, other.k, other.endpoint)

    def __hash__(self):
        return hash((self.n, self.k, self.endpoint))

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, k={self.k}, endpoint={self.endpoint}, dim={len(self)})"

    def sites(self, path):
        """ z_1 = 1, z_2, ..., z_{n+1} """
        sites = [1]
        for step in path:
            sites.append(sites[-1] + step)
        return sites

    def zigzag(self):
        return tuple(UP if p % 2 == 0 else DOWN for p in range(self.n))


@lru_cache(maxsize=None)
def enumerate_basis(n, k, endpoint=None):
    if n < 0:
        raise ValueError(f"number of steps cannot be negative: {n}")
    ModelParams(k)
    if endpoint is not None and not 1 <= endpoint <= k - 1:
        raise ValueError(f"endpoint {endpoint} is not a site of G_{k}")

    paths = []

    def extend(steps, site):
        remaining = n - len(steps)
        if remaining == 0:
            if endpoint is None or site == endpoint:
                paths.append(tuple(steps))
            return
        if endpoint is not None and abs(site - endpoint) > remaining:
            return
        for step in (UP, DOWN):
            if 1 <= site + step <= k - 1:
                steps.append(step)
                extend(steps, site + step)
                steps.pop()

    extend([], 1)
    return PathBasis(n, k, endpoint, paths)


def unbounded_basis(n, endpoint=1):
    """ the walks of H_{n,k,endpoint} for any k large enough that the upper wall is never reached """
    return enumerate_basis(n, n + 3, endpoint)


def _check_index(i, basis):
    if not 1 <= i <= basis.n - 1:
        raise BraidError(f"generator index {i} out of range for {basis.n} strands")


def phi_matrix(i, basis):
    """ Temperley-Lieb generator E_i in the path basis """
    _check_index(i, basis)
    lam = basis.params.lambdas
    phi = np.zeros((len(basis), len(basis)))
    for p, path in enumerate(basis.paths):
        first, second = path[i - 1], path[i]
        if first == second:
            continue  # up-up and down-down are annihilated
        z = basis.sites(path)[i - 1]
        swapped = path[:i - 1] + (second, first) + path[i + 1:]
        if first == UP:
            phi[p, p] = lam[z + 1] / lam[z]
        else:
            phi[p, p] = lam[z - 1] / lam[z]
        q = basis.index.get(swapped)
        if q is not None:
            phi[q, p] = math.sqrt(lam[z + 1] * lam[z - 1]) / lam[z]
    return phi


@lru_cache(maxsize=None)
def _generator(i, basis, sign):
    params = basis.params
    rho = params.A * phi_matrix(i, basis) + np.eye(len(basis)) / params.A
    if sign < 0:
        rho = np.conj(rho).T
    rho.setflags(write=False)
    return rho


def rho_generator(i, basis, sign=1):
    """ rho(sigma_i) = A Phi_i + 1/A, or its inverse for sign -1 """
    _check_index(i, basis)
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, not {sign}")
    return _generator(i, basis, sign)


def rho_of_word(b, basis):
    """ ordered product, first letter leftmost, so that rho(b1 b2) = rho(b1) rho(b2) """
    if b.strands != basis.n:
        raise BraidError(f"braid on {b.strands} strands does not act on {basis.n}-step paths")
    result = np.eye(len(basis), dtype=complex)
    for letter in b.letters:
        result = result @ rho_generator(abs(letter), basis, 1 if letter > 0 else -1)
    return result


def _check_even(b):
    if b.strands % 2:
        raise BraidError(f"the zig-zag expectation needs an even number of strands, not {b.strands}")


def alpha_expectation(b, k):
    """ <alpha|rho(b)|alpha> on H_{n,k,1}, alpha the zig-zag walk 1-2-1-2-... """
    _check_even(b)
    basis = enumerate_basis(b.strands, k, 1)
    alpha = basis.index[basis.zigzag()]
    return complex(rho_of_word(b, basis)[alpha, alpha])


def sector_dimensions(n, k):
    """ endpoint -> dim H_{n,k,endpoint}, by counting walks """
    counts = {1: 1}
    for _ in range(n):
        new_counts = {}
        for site, number in counts.items():
            for step in (UP, DOWN):
                if 1 <= site + step <= k - 1:
                    new_counts[site + step] = new_counts.get(site + step, 0) + number
        counts = new_counts
    return dict(sorted(counts.items()))


def big_n(n, k):
    lam = ModelParams(k).lambdas
    return sum(lam[site] * number for site, number in sector_dimensions(n, k).items())


def delta_scale(b, k):
    """ lambda_1 d^(n-1) (-A)^(3w) / N """
    _check_even(b)
    params = ModelParams(k)
    n, w = b.strands, braid_writhe(b)
    return params.lambdas[1] / big_n(n, k) * params.d ** (n - 1) * (-params.A) ** (3 * w)


def calibration_constant(n, k, w):
    """ C with jones_at_root = C * alpha_expectation: d^(n/2 - 1) (-A)^(-3w) """
    params = ModelParams(k)
    return params.d ** (n // 2 - 1) * (-params.A) ** (-3 * w)


def diagonalizer(z, params):
    """ M_k(z): columns are the eigenvectors of a 2x2 block of Phi_i at site z, eigenvalue d first """
    lam = params.lambdas
    upper, lower = math.sqrt(lam[z + 1]), math.sqrt(lam[z - 1])
    return np.array([[upper, -lower], [lower, upper]]) / math.sqrt(lam[z + 1] + lam[z - 1])


def limit_diagonalizer(z):
    """ M(z) in the limit k -> infinity """
    upper, lower = math.sqrt(z + 1), math.sqrt(z - 1)
    return np.array([[upper, -lower], [lower, upper]]) / math.sqrt(2 * z)


def block_eigenvalues(params):
    """ eigenvalues of rho_i on its two dimensional blocks: (-exp(-2 i theta) / A, 1 / A) """
    return -cmath.exp(-2j * params.theta) / params.A, 1 / params.A


if __name__ == '__main__':
    print(enumerate_basis(8, 7, 1))
    print(enumerate_basis(8, 5, 1))
