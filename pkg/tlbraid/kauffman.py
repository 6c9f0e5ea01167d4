"""
Kauffman bracket and Jones polynomial of plat closures.

The bracket is a sum over all smoothings of the crossings. Each smoothing turns the closed braid into a
product of Temperley-Lieb diagrams (caps, a row per crossing, cups) whose composition counts the loops.
"""
import logging
from collections import Counter

from tlbraid.braid import plat_close, braid_writhe
from tlbraid.config import settings
from tlbraid.exceptions import BracketBudgetError, BraidError
from tlbraid.numerics import LaurentPolynomial, loop_value, laurent_eval
from tlbraid.pathmodel import ModelParams

logger = logging.getLogger(__name__)

CONVENTIONS = {'crossing': 'sigma_i has writhe +1 and bracket -A^3 on 2 strands',
               'normalization': 'unknot -> 1',
               'root': 'A = i exp(-i pi / 2k)',
               't_half': 'A^-2'}


class TLDiagram(object):
    """
    Planar matching of `top` upper and `bottom` lower boundary points, plus a count of closed loops.
    Points 0 .. top - 1 are the upper points from left to right, top .. top + bottom - 1 the lower ones.
    """
    __slots__ = ('top', 'bottom', 'match', 'loops')

    @classmethod
    def identity(cls, n):
        return cls(n, n, [n + p for p in range(n)] + list(range(n)))

    @classmethod
    def generator(cls, i, n):
        """ E_i, joining points i and i + 1 (1-based) at the top and at the bottom """
        if not 1 <= i <= n - 1:
            raise BraidError(f"no generator E_{i} in TL_{n}")
        match = [n + p for p in range(n)] + list(range(n))
        a, b = i - 1, i
        match[a], match[b] = b, a
        match[n + a], match[n + b] = n + b, n + a
        return cls(n, n, match)

    @classmethod
    def caps(cls, n):
        """ the top of a plat closure: points (1, 2), (3, 4), ... joined, nothing above """
        return cls(0, n, [p + 1 if p % 2 == 0 else p - 1 for p in range(n)])

    @classmethod
    def cups(cls, n):
        return cls(n, 0, [p + 1 if p % 2 == 0 else p - 1 for p in range(n)])

    def __init__(self, top, bottom, match, loops=0):
        self.top = top
        self.bottom = bottom
        self.match = tuple(match)
        self.loops = loops

    def key(self):
        return self.top, self.bottom, self.match

    def without_loops(self):
        return TLDiagram(self.top, self.bottom, self.match)

    def __eq__(self, other):
        if not isinstance(other, TLDiagram):
            return NotImplemented
        return self.key() == other.key() and self.loops == other.loops

    def __hash__(self):
        return hash((self.key(), self.loops))

    def __repr__(self):
        return f"{type(self).__name__}({self.top}, {self.bottom}, {list(self.match)}, loops={self.loops})"

    def is_planar(self):
        """ no two pairs interleave when the boundary is read around the rectangle """
        ring = list(range(self.top)) + [self.top + p for p in reversed(range(self.bottom))]
        place = {point: n for n, point in enumerate(ring)}
        pairs = {tuple(sorted((place[p], place[q]))) for p, q in enumerate(self.match)}
        return not any(a < c < b < d for a, b in pairs for c, d in pairs)

    def compose(self, other):
        """ self placed above other; loops closed in the middle are added to the loop count """
        if self.bottom != other.top:
            raise BraidError(f"cannot stack a diagram with {self.bottom} lower points on one with {other.top}")
        t1, t2 = self.top, other.top
        match = [None] * (t1 + other.bottom)
        middle_seen = [False] * self.bottom

        def follow(side, point):
            """ walks from a free end point until the next free end point """
            while True:
                if side == 0:
                    partner = self.match[point]
                    if partner < t1:
                        return partner
                    middle_seen[partner - t1] = True
                    side, point = 1, partner - t1
                else:
                    partner = other.match[point]
                    if partner >= t2:
                        return t1 + partner - t2
                    middle_seen[partner] = True
                    side, point = 0, t1 + partner

        for p in range(t1):
            if match[p] is None:
                q = follow(0, p)
                match[p], match[q] = q, p
        for p in range(other.bottom):
            if match[t1 + p] is None:
                q = follow(1, t2 + p)
                match[t1 + p], match[q] = q, t1 + p

        loops = 0
        for start in range(self.bottom):
            if middle_seen[start]:
                continue
            loops += 1
            point = start
            while not middle_seen[point]:
                middle_seen[point] = True
                point = self.match[t1 + point] - t1  # across the upper diagram
                middle_seen[point] = True
                point = other.match[point]  # back through the lower diagram
        return TLDiagram(t1, other.bottom, match, self.loops + other.loops + loops)

    __matmul__ = compose


def smoothings(letter, strands):
    """ the two resolutions of a crossing as (diagram, exponent of A) """
    i = abs(letter)
    sign = 1 if letter > 0 else -1
    return ((TLDiagram.generator(i, strands), sign),
            (TLDiagram.identity(strands), -sign))


def _check_closable(b):
    plat_close(b)  # raises on an odd number of strands


def _sum_states(states):
    """ sum of count * A^exponent * d^(loops - 1) over (exponent, loops) -> count """
    d = loop_value()
    powers = {}
    total = LaurentPolynomial()
    for (exponent, loops), number in states.items():
        if loops not in powers:
            powers[loops] = d ** (loops - 1)
        total = total + LaurentPolynomial.monomial(exponent, number) * powers[loops]
    return total


def bracket(b):
    """ state sum over all 2^m smoothings of the plat closure; unknot -> 1 """
    _check_closable(b)
    if len(b) > settings.bracket_budget:
        raise BracketBudgetError(f"{len(b)} crossings exceed the state sum budget of {settings.bracket_budget}")
    n = b.strands
    rows = [smoothings(letter, n) for letter in b.letters]
    cups = TLDiagram.cups(n)
    states = Counter()

    def visit(level, diagram, exponent):
        if level == len(rows):
            states[exponent, (diagram @ cups).loops] += 1
            return
        for smoothing, weight in rows[level]:
            visit(level + 1, diagram @ smoothing, exponent + weight)

    visit(0, TLDiagram.caps(n), 0)
    logger.debug("bracket: %d states, %d distinct (exponent, loops)", 2 ** len(rows), len(states))
    return _sum_states(states)


def bracket_fast(b):
    """ the same sum, carried row by row over the (Catalan many) planar matchings """
    _check_closable(b)
    n = b.strands
    d = loop_value()
    states = {TLDiagram.caps(n): LaurentPolynomial({0: 1})}
    for letter in b.letters:
        new_states = {}
        for diagram, weight in states.items():
            for smoothing, exponent in smoothings(letter, n):
                composed = diagram @ smoothing
                key = composed.without_loops()
                term = weight * LaurentPolynomial.monomial(exponent) * d ** composed.loops
                new_states[key] = new_states.get(key, LaurentPolynomial()) + term
        states = {key: value for key, value in new_states.items() if value}
    cups = TLDiagram.cups(n)
    total = LaurentPolynomial()
    for diagram, weight in states.items():
        total = total + weight * d ** ((diagram @ cups).loops - 1)
    return total


def writhe_factor(w):
    """ (-A)^(-3w) """
    return LaurentPolynomial.monomial(-3 * w, -1 if w % 2 else 1)


def jones(b, fast=False):
    """ (-A)^(-3w) <b>, as Laurent polynomial in A """
    poly = bracket_fast(b) if fast else bracket(b)
    return writhe_factor(braid_writhe(b)) * poly


def jones_at_root(b, k, fast=False):
    return laurent_eval(jones(b, fast), ModelParams(k).A)


if __name__ == '__main__':
    from tlbraid.braid import BraidWord
    print(jones(BraidWord(4, [2, 2, 2])))
