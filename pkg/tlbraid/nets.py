"""
Epsilon nets of generator words and what is built on them:

- EpsilonNet with breadth first construction, commutator nets, sampled coverage and JSON lines storage;
- the auxiliary generators at a fixed level k0 and the transfer of their nets to level k through
  powers rho_i^(2m);
- the balanced group commutator decomposition and the Solovay-Kitaev refinement.
"""
import cmath
import json
import logging
import math
from collections import namedtuple
from fractions import Fraction

import numpy as np
from scipy.linalg import expm, logm

from tlbraid.config import settings
from tlbraid.exceptions import DimensionError, FiniteImageError, NetCoverageError, NetTransferError
from tlbraid.generators import Approximation, GeneratorSet, GeneratorWord, path_model_generators
from tlbraid.numerics import (check_unitary, dagger, haar_unitary, phase_scan_distance, proj_distance,
                              proj_lower_bounds, su_project)
from tlbraid.pathmodel import (UP, ModelParams, diagonalizer, limit_diagonalizer, phi_matrix,
                               unbounded_basis)
from tlbraid.tools.parsers import decode_matrix, encode_matrix
from tlbraid.tools.utils import make_rng

logger = logging.getLogger(__name__)

NetEntry = namedtuple('NetEntry', 'word matrix check')


class EpsilonNet(object):
    """
    Words with their evaluations. `check` per entry is the evaluation residual for built nets and the
    deviation from the original entry for transferred nets.
    """

    def __init__(self, epsilon, entries=(), coverage=None):
        if epsilon <= 0:
            raise ValueError(f"net epsilon should be positive, not {epsilon}")
        self.epsilon = epsilon
        self.coverage = coverage
        self.entries = []
        self._stack = None
        for entry in entries:
            self.add(*entry)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        yield from self.entries

    def __getitem__(self, index):
        return self.entries[index]

    def __repr__(self):
        return f"{type(self).__name__}(epsilon={self.epsilon}, size={len(self)}, coverage={self.coverage})"

    @property
    def dim(self):
        return len(self.entries[0].matrix)

    def add(self, word, matrix, check=0.0):
        matrix = np.asarray(matrix, dtype=complex)
        if self.entries and matrix.shape != (self.dim, self.dim):
            raise DimensionError(f"net entry of shape {matrix.shape} in a net of dimension {self.dim}")
        n = len(self.entries)
        if self._stack is None:
            self._stack = np.empty((64,) + matrix.shape, dtype=complex)
        elif n == len(self._stack):
            self._stack = np.concatenate([self._stack, np.empty_like(self._stack)])
        self._stack[n] = matrix
        self.entries.append(NetEntry(GeneratorWord(word), matrix, float(check)))

    @property
    def stack(self):
        return self._stack[:len(self.entries)]

    def _candidates(self, target, columns):
        """ lower bounds on the distance to every entry and the exact distance function """
        if columns is None:
            return proj_lower_bounds(self.stack, target), lambda M: proj_distance(M, target)
        columns = list(columns)
        restricted = target[:, columns]
        overlaps = np.abs(np.einsum('nij,ij->n', np.conj(self.stack[:, :, columns]), restricted))
        bounds = np.sqrt(np.maximum(0.0, 2 * len(columns) - 2 * overlaps) / len(columns))
        return bounds, lambda M: phase_scan_distance(M[:, columns], restricted)

    def nearest(self, target, columns=None):
        """
        (index, distance) of the closest entry in projective distance, or in the phase optimal distance
        restricted to the given columns. Ties go to the earlier (shorter) entry.
        """
        target = np.asarray(target, dtype=complex)
        if target.shape != (self.dim, self.dim):
            raise DimensionError(f"target of shape {target.shape} for a net of dimension {self.dim}")
        bounds, distance = self._candidates(target, columns)
        best, best_index = math.inf, None
        for index in np.argsort(bounds, kind='stable'):
            if bounds[index] >= best:
                break
            value = distance(self.entries[index].matrix)
            if value < best - 1e-12:
                best, best_index = value, int(index)
        return best_index, best

    def covers(self, target, radius=None):
        radius = self.epsilon if radius is None else radius
        bounds, distance = self._candidates(np.asarray(target, dtype=complex), None)
        for index in np.argsort(bounds, kind='stable'):
            if bounds[index] > radius:
                return False
            if distance(self.entries[index].matrix) <= radius:
                return True
        return False

    def measure_coverage(self, samples=None, rng=None):
        """ fraction of Haar random unitaries within epsilon of some entry """
        rng = make_rng(rng)
        samples = samples or settings.coverage_samples
        hits = sum(self.covers(haar_unitary(self.dim, rng)) for _ in range(samples))
        self.coverage = hits / samples
        logger.info("coverage of %d entry net at %g: %.3f", len(self), self.epsilon, self.coverage)
        return self.coverage

    def save(self, filename):
        with open(filename, 'w') as file:
            for entry in self.entries:
                file.write(json.dumps({'word': list(entry.word), 'matrix': encode_matrix(entry.matrix),
                                       'dist_check': entry.check}) + '\n')

    @classmethod
    def load(cls, filename, epsilon):
        """ net files hold entries only; epsilon is given by the caller """
        net = cls(epsilon)
        with open(filename) as file:
            for number, line in enumerate(file, 1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                    net.add(record['word'], decode_matrix(record['matrix']), record.get('dist_check', 0.0))
                except (KeyError, TypeError, ValueError) as error:
                    raise ValueError(f"{filename}, line {number}: invalid net entry ({error})")
        return net


def _insert(net, word, matrix, radius, check=0.0):
    """ adds the entry unless an existing entry lies within radius """
    if net.entries and net.nearest(matrix)[1] <= radius:
        return False
    net.add(word, matrix, check)
    return True


def build_net(gens, eps, max_len, max_size=None, coverage_samples=None, rng=None):
    """
    Breadth first enumeration of words up to max_len, lexicographic within a level, keeping a word only when
    it is more than eps/2 from all kept words. Only kept words are extended.
    """
    net = EpsilonNet(eps)
    net.add(GeneratorWord(), np.eye(gens.dim, dtype=complex))
    frontier = [0]

    def full():
        return bool(max_size) and len(net) >= max_size

    for length in range(1, max_len + 1):
        new_frontier = []
        for index in frontier:
            word, matrix = net[index].word, net[index].matrix
            for j in gens.letters():
                if full():
                    break
                if word and word[-1] == -j:
                    continue
                if _insert(net, word + (j,), matrix @ gens.letter(j), eps / 2):
                    new_frontier.append(len(net) - 1)
        logger.debug("net level %d: %d new, %d entries", length, len(new_frontier), len(net))
        frontier = new_frontier
        if not frontier or full():
            break
    logger.info("built %d entry net over %s at %g", len(net), gens.name, eps)
    net.measure_coverage(coverage_samples, rng)
    return net


def build_commutator_net(gens, eps, max_len, pool_eps=None, coverage_samples=None, rng=None):
    """ a net of group commutators [u, v] of the entries of an ordinary net """
    pool = build_net(gens, pool_eps or eps, max_len, coverage_samples=1, rng=rng)
    matrices = pool.stack
    inverses = np.conj(np.transpose(matrices, (0, 2, 1)))
    net = EpsilonNet(eps)
    net.add(GeneratorWord(), np.eye(gens.dim, dtype=complex))
    for u, entry in enumerate(pool):
        commutators = np.einsum('ij,njk,kl,nlm->nim', entry.matrix, matrices, inverses[u], inverses)
        for v, matrix in enumerate(commutators):
            if u != v:
                _insert(net, GeneratorWord.commutator(entry.word, pool[v].word).reduced(), matrix, eps / 2)
    logger.info("built %d entry commutator net from a pool of %d", len(net), len(pool))
    net.measure_coverage(coverage_samples, rng)
    return net


# transfer between levels


def _check_k0(k0):
    if k0 < 5 or k0 == 6:
        raise FiniteImageError(f"level k0 = {k0} generates a finite image; use k0 >= 5, k0 != 6")


def aux_generators(k0):
    """
    The seven generators on the 14 walks of H_{8,k,1} (k >= 7) with the eigenvalues of level k0 and the
    eigenvectors of the limit k -> infinity.
    """
    _check_k0(k0)
    basis = unbounded_basis(8)
    inverse_a = 1 / ModelParams(k0).A
    turn = -cmath.exp(-2j * math.pi / k0)
    elements = []
    for i in range(1, 8):
        pattern = phi_matrix(i, basis)
        element = inverse_a * np.eye(len(basis), dtype=complex)
        for p, path in enumerate(basis.paths):
            if path[i - 1] != UP or path[i] == UP:
                continue
            z = basis.sites(path)[i - 1]
            partner = [q for q in np.flatnonzero(pattern[:, p]) if q != p]
            if not partner:
                element[p, p] = inverse_a * turn
                continue
            block = [p, int(partner[0])]
            M = limit_diagonalizer(z)
            element[np.ix_(block, block)] = inverse_a * M @ np.diag([turn, 1]) @ M.T
        elements.append(element)
    return GeneratorSet(f"aux(k0={k0})", elements, provenance=('auxiliary', k0))


def transfer_m(k, k0):
    """ m = floor(((2 + k0) / k0) / (4 / k)) """
    _check_k0(k0)
    return math.floor(Fraction(2 + k0, k0) * Fraction(k, 4))


def _level_pair(k, k0, block, generators):
    hat = aux_generators(k0)
    level = path_model_generators(k)
    if len(level.elements[0]) != len(hat.elements[0]):
        raise DimensionError(f"level k = {k} does not reach all 14 walks; use k >= 7")
    if block is not None or generators is not None:
        indices = block if block is not None else range(hat.dim)
        hat = hat.restrict(indices, generators)
        level = level.restrict(indices, generators)
    return hat, level.powers(2 * transfer_m(k, k0))


def transfer_bound(k, k0, block=None, generators=None):
    """ letter -> projective distance between the auxiliary generator and rho^(2m) at level k """
    hat, powered = _level_pair(k, k0, block, generators)
    return {j: proj_distance(a, b) for j, (a, b) in enumerate(zip(hat.elements, powered.elements), 1)}


class TransferredNet(EpsilonNet):
    """ a net at level k obtained from an auxiliary net by replacing each letter i with i^(2m) """

    def __init__(self, epsilon, k, k0, m, letter_deviations):
        super().__init__(epsilon)
        self.k, self.k0, self.m = k, k0, m
        self.letter_deviations = letter_deviations
        self.bounds = []

    @property
    def max_deviation(self):
        return max((entry.check for entry in self.entries), default=0.0)

    @property
    def max_bound(self):
        return max(self.bounds, default=0.0)


def transfer_net(hat_net, k, k0, block=None, generators=None, strict=True):
    """
    Carries an auxiliary net (words over aux_generators(k0), optionally restricted to a block and a subset
    of generators) to level k. Each entry is checked against its original; with strict, a deviation
    above epsilon/2 raises NetTransferError naming the entry.
    """
    hat, powered = _level_pair(k, k0, block, generators)
    m = transfer_m(k, k0)
    letter_deviations = {j: proj_distance(a, b) for j, (a, b) in enumerate(zip(hat.elements, powered.elements), 1)}
    result = TransferredNet(hat_net.epsilon, k, k0, m, letter_deviations)
    substitution = {j: [j] * (2 * m) for j in range(1, len(hat) + 1)}
    for index, entry in enumerate(hat_net):
        matrix = powered.evaluate(entry.word)
        deviation = proj_distance(matrix, entry.matrix)
        if strict and deviation > hat_net.epsilon / 2:
            raise NetTransferError(f"entry {index} ({list(entry.word)}) deviates by {deviation:.4g} "
                                   f"> {hat_net.epsilon / 2:g} at k = {k}", entry=index)
        result.add(entry.word.substitute(substitution), matrix, deviation)
        result.bounds.append(sum(letter_deviations[abs(j)] for j in entry.word))
    logger.info("transferred %d entries to k = %d (m = %d), max deviation %.4g",
                len(result), k, m, result.max_deviation)
    return result


def transfer_check(k, k0, sites=(2, 3)):
    """ the two ingredients of a transfer: eigenvector convergence and the eigenvalue mismatch """
    m = transfer_m(k, k0)
    params = ModelParams(k)
    errors = {z: float(np.linalg.norm(diagonalizer(z, params) - limit_diagonalizer(z), 2)) for z in sites}
    mismatch = abs(cmath.exp(-1j * math.pi * (2 + k0) / k0) - cmath.exp(-4j * m * math.pi / k))
    return {'k': k, 'k0': k0, 'm': m, 'diagonalizer_errors': errors, 'eigenvalue_mismatch': mismatch}


# Solovay-Kitaev


def _centered(U):
    """ the element of U's projective class in SU(d) closest to the identity """
    U = su_project(U)
    d = len(U)
    roots = np.exp(2j * math.pi * np.arange(d) / d)
    return U * roots[int(np.argmax((roots * np.trace(U)).real))]


def _rotation(U):
    return float(np.max(np.abs(np.angle(np.linalg.eigvals(U)))))


def _su2_axis(U):
    """ (a, P) with U = cos a + i sin a P """
    a = math.acos(min(1.0, max(-1.0, np.trace(U).real / 2)))
    return a, (U - dagger(U)) / (2j * math.sin(a))


def _gc_su2(delta):
    a, axis = _su2_axis(delta)
    theta = 2 * a
    phi = 2 * math.asin(((1 - math.cos(theta / 2)) / 2) ** 0.25)
    v = np.array([[math.cos(phi / 2), -1j * math.sin(phi / 2)], [-1j * math.sin(phi / 2), math.cos(phi / 2)]])
    w = np.array([[math.cos(phi / 2), -math.sin(phi / 2)], [math.sin(phi / 2), math.cos(phi / 2)]], dtype=complex)
    _, commutator_axis = _su2_axis(v @ w @ dagger(v) @ dagger(w))
    similarity = np.linalg.eigh(axis)[1] @ dagger(np.linalg.eigh(commutator_axis)[1])
    return similarity @ v @ dagger(similarity), similarity @ w @ dagger(similarity)


def _gc_general(delta):
    d = len(delta)
    generator = -1j * logm(delta)
    generator = (generator + dagger(generator)) / 2
    generator -= np.trace(generator) / d * np.eye(d)
    values, vectors = np.linalg.eigh(generator)
    fourier = np.exp(2j * math.pi * np.outer(np.arange(d), np.arange(d)) / d) / math.sqrt(d)
    basis = vectors @ fourier
    hollow = dagger(fourier) @ np.diag(values) @ fourier
    f = np.arange(d) - (d - 1) / 2
    gaps = np.subtract.outer(f, f)
    np.fill_diagonal(gaps, 1.0)
    g = -1j * hollow / gaps
    np.fill_diagonal(g, 0.0)
    g = (g + dagger(g)) / 2
    scale = math.sqrt(np.linalg.norm(g, 2) / np.linalg.norm(f, np.inf))
    v = basis @ expm(1j * scale * np.diag(f)) @ dagger(basis)
    w = basis @ expm(1j * g / scale) @ dagger(basis)
    return v, w


def gc_decompose(delta):
    """ V, W in SU(d) with V W V^-1 W^-1 = delta (exactly for d = 2, to second order otherwise) """
    delta = _centered(check_unitary(delta, 'commutator target'))
    if _rotation(delta) <= settings.block_tol:
        identity = np.eye(len(delta), dtype=complex)
        return identity, identity
    return _gc_su2(delta) if len(delta) == 2 else _gc_general(delta)


SK_TURNS = 8  # conjugations of the commutator pair tried when the balanced pair does not improve
SK_MARGIN = 1e-9


def _commutator_pairs(delta):
    """ the balanced pair V, W with [V, W] = delta, then that pair conjugated by unitaries commuting with delta """
    v, w = gc_decompose(delta)
    yield v, w
    generator = -1j * logm(delta)
    _, basis = np.linalg.eigh((generator + dagger(generator)) / 2)
    f = np.arange(len(delta)) - (len(delta) - 1) / 2
    for turn in range(1, SK_TURNS):
        S = basis @ np.diag(np.exp(2j * math.pi * turn / SK_TURNS * f)) @ dagger(basis)
        yield S @ v @ dagger(S), S @ w @ dagger(S)


def _sk(target, net, depth):
    if depth == 0:
        entry = net[net.nearest(target)[0]]
        return entry.word, entry.matrix
    word, approximation = _sk(target, net, depth - 1)
    error = proj_distance(approximation, target)
    for left in (True, False):
        delta = _centered(target @ dagger(approximation) if left else dagger(approximation) @ target)
        if _rotation(delta) < settings.sk_angle_threshold:
            return word, approximation
        for v, w in _commutator_pairs(delta):
            v_word, v_approximation = _sk(v, net, depth - 1)
            w_word, w_approximation = _sk(w, net, depth - 1)
            commutator = v_approximation @ w_approximation @ dagger(v_approximation) @ dagger(w_approximation)
            refined = commutator @ approximation if left else approximation @ commutator
            if proj_distance(refined, target) < error - SK_MARGIN:
                commutator_word = v_word + w_word + v_word.inverse() + w_word.inverse()
                return (commutator_word + word if left else word + commutator_word).reduced(), refined
    logger.debug("no commutator correction improves on %.3g at depth %d", error, depth)
    return word, approximation


def solovay_kitaev(target, net, gens, depth):
    """
    Recursive refinement of the nearest net entry by group commutators. Each level tries the balanced
    commutator correction on either side of the previous approximation, then conjugates of that pair; it keeps
    the previous approximation only when none of them improves, so distances never grow with depth.
    """
    target = check_unitary(target, 'target')
    if depth < 0:
        raise ValueError(f"depth cannot be negative: {depth}")
    if target.shape != (net.dim, net.dim) or gens.dim != net.dim:
        raise DimensionError(f"target {target.shape}, net {net.dim} and generators {gens.dim} do not match")
    if depth > 0 and (net.coverage is None or net.coverage < settings.coverage_required):
        raise NetCoverageError(f"net coverage {net.coverage} is below {settings.coverage_required} at "
                               f"epsilon {net.epsilon}; refinement needs a covering net")
    target = su_project(target)
    word, _ = _sk(target, net, depth)
    matrix = gens.evaluate(word)
    distance = proj_distance(matrix, target)
    logger.debug("solovay-kitaev depth %d: length %d, distance %.3g", depth, len(word), distance)
    return Approximation(word, matrix, distance)


def contraction_constant(errors):
    """ fitted c in eps' = c eps^(3/2) from an array of errors with one row per depth """
    errors = np.asarray(errors, dtype=float)
    before, after = errors[:-1].ravel(), errors[1:].ravel()
    keep = (before > 0) & (after > 0)
    if not keep.any():
        raise ValueError("need positive errors at two consecutive depths")
    return float(np.exp(np.mean(np.log(after[keep]) - 1.5 * np.log(before[keep]))))


if __name__ == '__main__':
    from tlbraid.generators import seed_pair
    seed = seed_pair(7)
    net = build_net(seed, 0.3, 12)
    print(net, solovay_kitaev(np.array([[0, 1], [-1, 0]], dtype=complex), net, seed, 2).distance)
