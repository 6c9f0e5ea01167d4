"""
Constructive density arguments turned into algorithms:

- SU2Synthesizer / su2_generate: words in two non-commuting SU(2) generators approximating any target,
  from a near-identity element g, its conjugate along a perpendicular axis and an Euler decomposition;
- Bridge / bridge_move / bridge_synthesize: products of exact SU(A), SU(B) factors and a mixing unitary W
  that move vectors and approximate elements of SU(A + B);
- decouple_search: a word close to a target in one representation and close to the identity in another.
"""
import logging
import math
from collections import namedtuple
from functools import lru_cache

import numpy as np
from scipy.linalg import null_space, polar, qr, svd

from tlbraid.config import settings
from tlbraid.exceptions import DimensionError, FiniteImageError, NotABridgeError
from tlbraid.generators import Approximation, GeneratorSet, GeneratorWord
from tlbraid.numerics import (check_unitary, dagger, haar_special_unitary, operator_norm, proj_distance,
                              proj_lower_bounds, su_project)
from tlbraid.tools.utils import make_rng

logger = logging.getLogger(__name__)


def _check_2x2(U, name):
    U = check_unitary(U, name)
    if U.shape != (2, 2):
        raise DimensionError(f"{name} should be 2x2, not {U.shape}")
    return U


def _half_angle(U):
    """ lambda in [0, pi/2] with U = +-(cos(lambda) + i sin(lambda) P) for U in SU(2) """
    return math.acos(min(1.0, abs(np.trace(U).real) / 2))


def _frame(axis1, axis2):
    """ unitary F with F^dagger axis1 F = Z and F^dagger axis2 F = X, for anticommuting axes """
    values, vectors = np.linalg.eigh(axis1)
    minus, plus = vectors[:, 0], vectors[:, 1]
    coupling = np.vdot(plus, axis2 @ minus)
    minus = minus * np.conj(coupling) / abs(coupling)
    return np.column_stack([plus, minus])


def _zxz_angles(T):
    """ (a, b, c) with T = Rz(a) Rx(b) Rz(c), Rz(t) = cos t + i sin t Z, Rx(t) = cos t + i sin t X """
    alpha, beta = T[0, 0], T[0, 1]
    b = math.atan2(abs(beta), abs(alpha))
    total = np.angle(alpha) if abs(alpha) > settings.algebra_tol else 0.0
    difference = np.angle(beta) - math.pi / 2 if abs(beta) > settings.algebra_tol else 0.0
    return (total + difference) / 2, b, (total - difference) / 2


def _steps(angle, step):
    """ the power r of a rotation by step with r * step closest to angle modulo pi """
    reduced = (angle + math.pi / 2) % math.pi - math.pi / 2
    return int(round(reduced / step))


class SU2Synthesizer(object):
    """
    Breadth first enumeration of words in two SU(2) generators, modulo sign. The enumeration is shared
    by all targets, so one synthesizer serves many calls to generate().
    """

    def __init__(self, g1, g2, max_elements=60000, max_attempts=6):
        self.generators = GeneratorSet('su2 pair', [_check_2x2(g1, 'g1'), _check_2x2(g2, 'g2')])
        self.max_elements = max_elements
        self.max_attempts = max_attempts
        self.words = [GeneratorWord()]
        self._matrices = np.empty((1024, 2, 2), dtype=complex)
        self._matrices[0] = np.eye(2)
        self._frontier = [0]
        self._pairs = []  # (distance, i, j) for close pairs
        self._special = {j: su_project(self.generators.letter(j)) for j in self.generators.letters()}
        commutator = self.generators.evaluate(GeneratorWord.commutator([1], [2]))
        if proj_distance(commutator, np.eye(2)) <= settings.algebra_tol:
            raise ValueError("generators commute; they cannot generate a dense subgroup")

    def __len__(self):
        return len(self.words)

    @property
    def matrices(self):
        return self._matrices[:len(self.words)]

    def _insert(self, word, matrix):
        n = len(self.words)
        distances = proj_lower_bounds(self._matrices[:n], matrix)
        nearest = int(np.argmin(distances))
        if distances[nearest] <= settings.dedup_tol:
            return False
        if distances[nearest] < 0.5:
            self._pairs.append((float(distances[nearest]), nearest, n))
        if n == len(self._matrices):
            self._matrices = np.concatenate([self._matrices, np.empty_like(self._matrices)])
        self._matrices[n] = matrix
        self.words.append(word)
        return True

    def grow(self):
        """ adds the next level of the enumeration; a level without new elements means a finite image """
        frontier = []
        for index in self._frontier:
            word = self.words[index]
            for j in self.generators.letters():
                if word and word[-1] == -j:
                    continue
                if self._insert(word + (j,), self._matrices[index] @ self._special[j]):
                    frontier.append(len(self.words) - 1)
        if not frontier:
            raise FiniteImageError(f"the generated group is finite, of projective order {len(self.words)}")
        self._frontier = frontier
        logger.debug("enumeration level %d: %d elements", len(self.words[-1]), len(self.words))

    def near_identity(self, threshold):
        """ a word g = w1 w2^-1 projectively within threshold of the identity, but not equal to it """
        while not any(pair[0] < threshold for pair in self._pairs):
            if len(self.words) >= self.max_elements:
                logger.warning("no element within %g of the identity among %d words", threshold, len(self.words))
                break
            self.grow()
        below = [pair for pair in self._pairs if pair[0] < threshold]
        if not below and not self._pairs:
            raise ValueError(f"no pair of enumerated words closer than 0.5 among {len(self.words)}")
        # the largest step below threshold keeps the powers short
        _, i, j = max(below) if below else min(self._pairs)
        word = (self.words[i] + self.words[j].inverse()).reduced()
        matrix = su_project(self.generators.evaluate(word))
        if np.trace(matrix).real < 0:
            matrix = -matrix
        return word, matrix

    def perpendicular(self, axis, tolerance):
        """ an enumerated word X for which X axis X^dagger is (nearly) perpendicular to axis """
        while True:
            matrices = self.matrices
            conjugated = np.einsum('nij,jk,nlk->nil', matrices, axis, np.conj(matrices))
            cosines = np.abs(np.einsum('ij,nji->n', axis, conjugated).real) / 2
            best = int(np.argmin(cosines))
            if cosines[best] <= tolerance or len(self.words) >= self.max_elements:
                return self.words[best], matrices[best]
            self.grow()

    def _euler_word(self, target, threshold):
        g_word, g = self.near_identity(threshold)
        step = _half_angle(g)
        axis1 = (g - math.cos(step) * np.eye(2)) / (1j * math.sin(step))
        x_word, x = self.perpendicular(axis1, threshold / 8)
        tilted = x @ axis1 @ dagger(x)
        cosine = np.trace(axis1 @ tilted).real / 2
        axis2 = (tilted - cosine * axis1) / math.sqrt(1 - cosine ** 2)
        frame = _frame(axis1, axis2)
        a, b, c = _zxz_angles(dagger(frame) @ su_project(target) @ frame)
        word = (g_word.power(_steps(a, step)) + x_word + g_word.power(_steps(b, step)) + x_word.inverse()
                + g_word.power(_steps(c, step))).reduced()
        matrix = self.generators.evaluate(word)
        return Approximation(word, matrix, proj_distance(matrix, target))

    def generate(self, target, eps):
        target = _check_2x2(target, 'target')
        identity = np.eye(2, dtype=complex)
        if proj_distance(target, identity) <= settings.algebra_tol:
            return Approximation(GeneratorWord(), identity, 0.0)
        for j in self.generators.letters():
            distance = proj_distance(target, self.generators.letter(j))
            if distance <= settings.algebra_tol:
                return Approximation(GeneratorWord([j]), self.generators.letter(j), distance)
        threshold, best = eps / 2, None
        for _ in range(self.max_attempts):
            candidate = self._euler_word(target, threshold)
            if best is None or candidate.distance < best.distance:
                best = candidate
            if best.distance < eps:
                return best
            threshold /= 2
        logger.warning("su2 synthesis reached %g, not %g", best.distance, eps)
        return best


@lru_cache(maxsize=16)
def _synthesizer(g1_bytes, g2_bytes):
    return SU2Synthesizer(np.frombuffer(g1_bytes, dtype=complex).reshape(2, 2),
                          np.frombuffer(g2_bytes, dtype=complex).reshape(2, 2))


def su2_generate(g1, g2, target, eps):
    """ an Approximation(word, matrix, distance) of target by a word in g1, g2 (letters 1, 2) """
    g1, g2 = np.asarray(g1, dtype=complex), np.asarray(g2, dtype=complex)
    if g1.shape != (2, 2) or g2.shape != (2, 2):
        return SU2Synthesizer(g1, g2).generate(target, eps)
    return _synthesizer(g1.tobytes(), g2.tobytes()).generate(target, eps)


# bridges


Factor = namedtuple('Factor', 'kind matrix')

INVERSE_KIND = {'A': 'A', 'B': 'B', 'W': 'W*', 'W*': 'W', 'P': 'P'}


class FactorProduct(object):
    """
    A product F_1 F_2 ... F_m of factors of kind 'A' (exact SU(A) element), 'B' (exact SU(B) element),
    'W' / 'W*' (the bridge or its inverse) and 'P' (a nested product). F_m acts first.
    """

    def __init__(self, dim, factors=(), residuals=()):
        self.dim = dim
        self.factors = list(factors)
        self.residuals = list(residuals)

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        yield from self.factors

    def __matmul__(self, other):
        return FactorProduct(self.dim, self.factors + other.factors, self.residuals + other.residuals)

    def __repr__(self):
        return f"{type(self).__name__}({self.count()})"

    def count(self, kind=None):
        if kind is None:
            return {kind: self.count(kind) for kind in INVERSE_KIND if self.count(kind)}
        return sum(1 for factor in self.factors if factor.kind == kind)

    def matrix(self):
        result = np.eye(self.dim, dtype=complex)
        for factor in self.factors:
            result = result @ factor.matrix
        return result

    def inverse(self):
        return FactorProduct(self.dim, [Factor(INVERSE_KIND[f.kind], dagger(f.matrix)) for f in reversed(self.factors)])


def _embed(block, indices, dim):
    result = np.eye(dim, dtype=complex)
    result[np.ix_(indices, indices)] = block
    return result


def _completion(x):
    """ unitary with first column x """
    q, r = qr(np.column_stack([x, np.eye(len(x))]))
    q[:, 0] *= r[0, 0]
    return q


def special_mover(x, y):
    """
    An element of SU(m), m >= 2, mapping vector x to vector y of the same norm, phase included.
    For m == 1 only the identity is special.
    """
    m = len(x)
    norm = np.linalg.norm(x)
    if m == 1 or norm <= settings.block_tol:
        return np.eye(m, dtype=complex)
    source, image = _completion(x / norm), _completion(y / np.linalg.norm(y))
    mover = image @ dagger(source)
    phase = np.linalg.det(mover)
    spare = image[:, 1]
    return (np.eye(m) + (np.conj(phase) - 1) * np.outer(spare, np.conj(spare))) @ mover


class Bridge(object):
    """
    Subspaces A, B spanned by disjoint coordinate lists, dim B > dim A, and a unitary W acting on A + B
    that mixes them. W may act on a larger ambient space; coordinates outside A + B are left alone.
    """

    def __init__(self, sub_a, sub_b, W):
        self.W = check_unitary(W, 'bridge')
        self.dim = len(self.W)
        self.sub_a, self.sub_b = [int(p) for p in sub_a], [int(p) for p in sub_b]
        if set(self.sub_a) & set(self.sub_b) or not set(self.sub_a + self.sub_b) <= set(range(self.dim)):
            raise DimensionError(f"subspaces {self.sub_a}, {self.sub_b} do not split the coordinates of W")
        if not 1 <= len(self.sub_a) < len(self.sub_b):
            raise DimensionError(f"bridge needs 1 <= dim A < dim B, not {len(self.sub_a)}, {len(self.sub_b)}")
        space = self.sub_a + self.sub_b
        outside = [p for p in range(self.dim) if p not in space]
        if outside and operator_norm(self.W[np.ix_(outside, space)]) > settings.unitary_tol:
            raise DimensionError("bridge does not preserve A + B")
        # scaled into SU(A + B); products differ from those with the given W by a phase on A + B
        block = np.ix_(space, space)
        self.W = self.W.copy()
        self.W[block] /= np.linalg.det(self.W[block]) ** (1.0 / len(space))

        kernel = null_space(self.W[np.ix_(self.sub_a, self.sub_b)])
        self.v_star = np.zeros(self.dim, dtype=complex)
        self.v_star[self.sub_b] = kernel[:, 0]
        _, values, right = svd(self.W[np.ix_(self.sub_b, self.sub_a)])
        if values[0] < 1e-8:
            raise NotABridgeError(f"W does not couple A to B (largest coupling {values[0]:.3g})")
        self.u_star = np.zeros(self.dim, dtype=complex)
        self.u_star[self.sub_a] = np.conj(right[0])
        self.rate = math.sqrt(max(0.0, 1 - values[0] ** 2))
        self._log_rate = 0.5 * math.log1p(-values[0] ** 2) if values[0] < 1 else -math.inf

    def _align(self, vector, indices, direction):
        part = vector[indices]
        norm = np.linalg.norm(part)
        if len(indices) == 1 or norm <= settings.block_tol:
            return None
        return _embed(special_mover(part, norm * direction[indices]), indices, self.dim)

    def anchor(self, psi, eps):
        """
        A product T with ||T psi - v*|| <= eps: align, then repeat (apply W, realign A and B).
        Each round multiplies the A part by the bridge rate.
        """
        vector = np.asarray(psi, dtype=complex)
        applied, residuals = [], []

        def apply(kind, matrix):
            nonlocal vector
            if matrix is not None:
                applied.append(Factor(kind, matrix))
                vector = matrix @ vector

        apply('A', self._align(vector, self.sub_a, self.u_star))
        apply('B', self._align(vector, self.sub_b, self.v_star))
        residuals.append(float(np.linalg.norm(vector[self.sub_a])))
        limit = 2 + (math.ceil(math.log(eps / 2 / residuals[0]) / self._log_rate)
                     if residuals[0] > eps / 2 and self.rate > 0 else 1)
        while residuals[-1] > eps / 2 and len(residuals) <= limit:
            apply('W', self.W)
            apply('A', self._align(vector, self.sub_a, self.u_star))
            apply('B', self._align(vector, self.sub_b, self.v_star))
            residuals.append(float(np.linalg.norm(vector[self.sub_a])))
        return FactorProduct(self.dim, reversed(applied), residuals)

    def move(self, psi, phi, eps):
        """ a product P with ||P psi - phi|| <= eps """
        psi, phi = np.asarray(psi, dtype=complex), np.asarray(phi, dtype=complex)
        for name, vector in (('psi', psi), ('phi', phi)):
            if vector.shape != (self.dim,) or abs(np.linalg.norm(vector) - 1) > settings.unitary_tol:
                raise ValueError(f"{name} should be a unit vector of length {self.dim}")
        if np.linalg.norm(psi - phi) <= settings.algebra_tol:
            return FactorProduct(self.dim)
        source = self.anchor(psi, eps / 2)
        result = self.anchor(phi, eps / 2).inverse() @ source
        result.residuals = source.residuals
        return result


def bridge_move(sub_a, sub_b, W, psi, phi, eps):
    """ a FactorProduct mapping psi to within eps of phi; its residuals record the A part per round """
    return Bridge(sub_a, sub_b, W).move(psi, phi, eps)


BridgeSynthesis = namedtuple('BridgeSynthesis', 'product matrix distance')


def _special_block(matrix, indices):
    """ the nearest element of SU on the given coordinates to a compressed block """
    unitary, _ = polar(matrix[np.ix_(indices, indices)])
    return su_project(unitary)


def _inner_bridge(bridge, fixed, eps, rng):
    """
    A bridge on the coordinates other than `fixed`, built as a product that (nearly) fixes that coordinate.
    Returns the inner Bridge and the product realizing its W.
    """
    unit = np.zeros(bridge.dim, dtype=complex)
    unit[fixed] = 1
    sub_a = [p for p in bridge.sub_a if p != fixed]
    space = sub_a + bridge.sub_b
    for attempt in range(8):
        mixer = FactorProduct(bridge.dim, [Factor('W', bridge.W)])
        if attempt:
            shuffle = _embed(haar_special_unitary(len(bridge.sub_b), rng), bridge.sub_b, bridge.dim)
            mixer = mixer @ FactorProduct(bridge.dim, [Factor('B', shuffle)])
        realized = bridge.move(mixer.matrix() @ unit, unit, eps) @ mixer
        ideal = _embed(polar(realized.matrix()[np.ix_(space, space)])[0], space, bridge.dim)
        try:
            return Bridge(sub_a, bridge.sub_b, ideal), realized
        except NotABridgeError:
            logger.debug("inner bridge attempt %d does not couple", attempt)
    raise NotABridgeError(f"no inner bridge fixing coordinate {fixed}")


def _synthesize(bridge, U, eps, rng):
    dim = bridge.dim
    if operator_norm(U - np.eye(dim)) <= settings.algebra_tol:
        return FactorProduct(dim)
    if operator_norm(U[:, bridge.sub_a] - np.eye(dim)[:, bridge.sub_a]) <= settings.algebra_tol:
        return FactorProduct(dim, [Factor('B', _embed(_special_block(U, bridge.sub_b), bridge.sub_b, dim))])
    fixed = bridge.sub_a[0]
    unit = np.zeros(dim, dtype=complex)
    unit[fixed] = 1
    column = U @ unit
    column /= np.linalg.norm(column)
    fixer = bridge.move(column, unit, eps / 4)
    remainder = fixer.matrix() @ U
    if len(bridge.sub_a) == 1:
        rest = FactorProduct(dim, [Factor('B', _embed(_special_block(remainder, bridge.sub_b), bridge.sub_b, dim))])
        return fixer.inverse() @ rest
    inner, realized = _inner_bridge(bridge, fixed, eps * 1e-6, rng)
    space = inner.sub_a + inner.sub_b
    inner_target = _embed(_special_block(remainder, space), space, dim)
    rest = _synthesize(inner, inner_target, eps / 2, rng)
    substituted = []
    for factor in rest:
        if factor.kind == 'W':
            substituted.append(Factor('P', realized.matrix()))
        elif factor.kind == 'W*':
            substituted.append(Factor('P', dagger(realized.matrix())))
        else:
            substituted.append(factor)
    return fixer.inverse() @ FactorProduct(dim, substituted)


def bridge_synthesize(sub_a, sub_b, W, target, eps, rng=None):
    """
    Approximates target in SU(A + B) by a product of exact SU(A), SU(B) factors and W: one column at a
    time, each fixed by a bridge move, with the remainder acting on one dimension less.
    """
    bridge = Bridge(sub_a, sub_b, W)
    target = check_unitary(target, 'target')
    space = bridge.sub_a + bridge.sub_b
    if target.shape != (bridge.dim, bridge.dim):
        raise DimensionError(f"target should be {bridge.dim}x{bridge.dim}, not {target.shape}")
    if abs(np.linalg.det(target[np.ix_(space, space)]) - 1) > settings.unitary_tol:
        raise ValueError("target is not special unitary on A + B")
    product = _synthesize(bridge, target, eps, make_rng(rng))
    matrix = product.matrix()
    distance = proj_distance(matrix, target)
    if distance > eps:
        logger.warning("bridge synthesis reached %g, not %g", distance, eps)
    return BridgeSynthesis(product, matrix, distance)


# decoupling


DecouplingResult = namedtuple('DecouplingResult', 'word distance_a distance_b success evaluated')


def _base_words(letters, max_len):
    """ all freely reduced words up to max_len, then commutators of the short ones """
    levels, words = [[GeneratorWord()]], []
    for _ in range(max_len):
        levels.append([w + (j,) for w in levels[-1] for j in letters if not (w and w[-1] == -j)])
        words.extend(levels[-1])
    short = [w for w in words if len(w) <= 2]
    seen = set(words)
    for u in short:
        for v in short:
            c = GeneratorWord.commutator(u, v).reduced()
            if c and c not in seen:
                seen.add(c)
                words.append(c)
    return words


def _recurrence_powers(matrix, max_power, threshold, limit=5):
    """ powers r <= max_power with matrix^r projectively within threshold of the identity """
    phases = np.angle(np.linalg.eigvals(matrix))
    powers = np.arange(1, max_power + 1)
    spread = np.sort(np.outer(powers, phases) % (2 * math.pi), axis=1)
    gaps = np.diff(np.concatenate([spread, spread[:, :1] + 2 * math.pi], axis=1), axis=1)
    distances = 2 * np.sin((2 * math.pi - gaps.max(axis=1)) / 4)
    hits = np.flatnonzero(distances <= threshold)[:limit]
    return [(int(powers[h]), float(distances[h])) for h in hits]


def decouple_search(reps, target_a, eps, budget=100000, max_len=4, max_power=500):
    """
    Searches a word w with tau_a(w) near target_a and tau_b(w) near the identity: powers of short words
    that recur near the identity under tau_b form a pool, then single pool elements and pairs
    (meet in the middle on the tau_a image) are tried.
    """
    tau_a, tau_b = reps
    if len(tau_a) != len(tau_b):
        raise ValueError(f"representations have {len(tau_a)} and {len(tau_b)} generators")
    if tau_a.dim == tau_b.dim:
        logger.warning("representations of equal dimension %d may be correlated; decoupling can fail", tau_a.dim)
    target_a = check_unitary(target_a, 'target')
    if target_a.shape != (tau_a.dim, tau_a.dim):
        raise DimensionError(f"target should be {tau_a.dim}x{tau_a.dim}, not {target_a.shape}")
    if proj_distance(target_a, np.eye(tau_a.dim)) <= settings.algebra_tol:
        return DecouplingResult(GeneratorWord(), 0.0, 0.0, True, 0)

    evaluated, pool = 0, []
    for word in _base_words(tau_a.letters(), max_len):
        a, b = tau_a.evaluate(word), tau_b.evaluate(word)
        evaluated += 1
        for r, distance_b in _recurrence_powers(b, max_power, 0.4 * eps):
            pool.append((word.power(r), np.linalg.matrix_power(a, r), np.linalg.matrix_power(b, r), distance_b))
            evaluated += 1
        if evaluated >= budget:
            break
    if not pool:
        logger.info("no recurrence of the second representation below %g", 0.4 * eps)
        return DecouplingResult(GeneratorWord(), proj_distance(target_a, np.eye(tau_a.dim)), 0.0, False, evaluated)

    stack_a = np.array([entry[1] for entry in pool])
    distances_b = np.array([entry[3] for entry in pool])
    singles = proj_lower_bounds(stack_a, target_a)
    scores = np.maximum(singles, distances_b)
    best_index = int(np.argmin(scores))
    best = (float(scores[best_index]), (best_index,))
    for i, (_, a, _, distance_b) in enumerate(pool):
        if evaluated >= budget or best[0] < eps / 2:
            break
        bounds = np.maximum(proj_lower_bounds(stack_a, dagger(a) @ target_a), distance_b + distances_b)
        evaluated += len(pool)
        j = int(np.argmin(bounds))
        if bounds[j] < best[0]:
            best = (float(bounds[j]), (i, j))

    word = GeneratorWord()
    matrix_a, matrix_b = np.eye(tau_a.dim, dtype=complex), np.eye(tau_b.dim, dtype=complex)
    for index in best[1]:
        word = word + pool[index][0]
        matrix_a, matrix_b = matrix_a @ pool[index][1], matrix_b @ pool[index][2]
    distance_a = proj_distance(matrix_a, target_a)
    distance_b = proj_distance(matrix_b, np.eye(tau_b.dim))
    success = max(distance_a, distance_b) < eps
    logger.debug("decoupling: %d evaluated, distances %.3g, %.3g", evaluated, distance_a, distance_b)
    return DecouplingResult(word, distance_a, distance_b, success, evaluated)


if __name__ == '__main__':
    from tlbraid.generators import seed_pair
    pair = seed_pair(7)
    print(su2_generate(*pair.elements, np.array([[0, 1], [-1, 0]], dtype=complex), 0.05).distance)
