"""
Braid words, their plat closure, the components of the closed diagram and the writhe.

Diagram conventions: letters are read from top to bottom; a strand segment is addressed by (level, position),
where level t lies between crossing t and crossing t + 1 (level 0 touches the caps, level m the cups).
The crossing of letter +i or -i joins strand 'a' from (t - 1, i) to (t, i + 1) and strand 'b' from
(t - 1, i + 1) to (t, i). Letter +i puts strand 'b' on top, letter -i strand 'a'.
"""
import logging
from collections import namedtuple
from numbers import Integral

from tlbraid.exceptions import BraidError
from tlbraid.tools.parsers import parse_braid_text, encode_braid_text

logger = logging.getLogger(__name__)

DOWN, UP = 'down', 'up'

# planar direction of the strands of a crossing when walked down or up (x to the right, y upwards)
STRAND_DIRECTIONS = {('a', DOWN): (1, -1), ('a', UP): (-1, 1),
                     ('b', DOWN): (-1, -1), ('b', UP): (1, 1)}


class BraidWord(object):
    """ sequence of signed Artin generators: +i means sigma_i, -i its inverse """
    __slots__ = ('strands', 'letters')

    @classmethod
    def from_text(cls, text):
        return cls(*parse_braid_text(text))

    @classmethod
    def load(cls, filename):
        with open(filename, 'r') as f:
            return cls.from_text(f.read())

    def __init__(self, strands, letters=()):
        if not isinstance(strands, Integral) or strands < 1:
            raise BraidError(f"number of strands must be a positive integer, not {strands!r}")
        letters = tuple(int(j) for j in letters)
        for j in letters:
            if not 1 <= abs(j) <= strands - 1:
                raise BraidError(f"letter {j} is not a generator of B_{strands}")
        object.__setattr__(self, 'strands', int(strands))
        object.__setattr__(self, 'letters', letters)

    def __setattr__(self, name, value):
        raise AttributeError(f"'{type(self).__name__}' is immutable")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        yield from self.letters

    def __eq__(self, other):
        if not isinstance(other, BraidWord):
            return NotImplemented
        return (self.strands, self.letters) == (other.strands, other.letters)

    def __hash__(self):
        return hash((self.strands, self.letters))

    def __repr__(self):
        return f"{type(self).__name__}({self.strands}, {list(self.letters)})"

    def compose(self, other):
        return compose(self, other)

    def inverse(self):
        return BraidWord(self.strands, [-j for j in reversed(self.letters)])

    def mirror(self):
        return BraidWord(self.strands, [-j for j in self.letters])

    def shifted(self, offset, strands):
        """ the same word on strands offset + 1 ... offset + self.strands of a wider braid """
        return BraidWord(strands, [j + offset if j > 0 else j - offset for j in self.letters])

    def to_text(self):
        return encode_braid_text(self.strands, self.letters)

    def save(self, filename):
        with open(filename, 'w') as f:
            f.write(self.to_text())


def compose(b1, b2):
    """ b1 placed above b2 """
    if b1.strands != b2.strands:
        raise BraidError(f"cannot compose braids on {b1.strands} and {b2.strands} strands")
    return BraidWord(b1.strands, b1.letters + b2.letters)


Crossing = namedtuple('Crossing', 'position sign')


class PlatDiagram(object):
    def __init__(self, strands, crossings):
        self.strands = strands
        self.crossings = tuple(crossings)
        self.caps = tuple((p, p + 1) for p in range(1, strands, 2))
        self.cups = self.caps

    @property
    def levels(self):
        return len(self.crossings)

    def partner(self, position):
        """ the other end of the cap or cup at position """
        return position + 1 if position % 2 else position - 1

    def step(self, level, position, direction):
        """ follows the strand one level down or up; returns (level, position, strand or None) """
        if direction == DOWN:
            crossing = self.crossings[level]
            i = crossing.position
            if position == i:
                return level + 1, i + 1, 'a'
            if position == i + 1:
                return level + 1, i, 'b'
            return level + 1, position, None
        crossing = self.crossings[level - 1]
        i = crossing.position
        if position == i + 1:
            return level - 1, i, 'a'
        if position == i:
            return level - 1, i + 1, 'b'
        return level - 1, position, None


def plat_close(b):
    if b.strands % 2:
        raise BraidError(f"plat closure needs an even number of strands, not {b.strands}")
    return PlatDiagram(b.strands, [Crossing(abs(j), 1 if j > 0 else -1) for j in b.letters])


Passage = namedtuple('Passage', 'crossing strand direction')


class Component(object):
    def __init__(self, segments, passages):
        self.segments = tuple(segments)  # (level, position, direction) in traversal order
        self.passages = tuple(passages)

    def reversed(self):
        flip = {DOWN: UP, UP: DOWN}
        return Component([(t, p, flip[d]) for t, p, d in reversed(self.segments)],
                         [Passage(c, s, flip[d]) for c, s, d in reversed(self.passages)])


class OrientedLink(object):
    def __init__(self, diagram, components):
        self.diagram = diagram
        self.components = tuple(components)

    def __len__(self):
        return len(self.components)

    def reversed(self, *indices):
        """ same link with the orientation of the given components reversed """
        return OrientedLink(self.diagram, [c.reversed() if n in indices else c
                                           for n, c in enumerate(self.components)])

    def passages(self):
        """ crossing index -> {strand: (component index, direction)} """
        table = {}
        for n, component in enumerate(self.components):
            for passage in component.passages:
                table.setdefault(passage.crossing, {})[passage.strand] = (n, passage.direction)
        return table

    def crossing_signs(self):
        """ yields (crossing index, sign, component of strand a, component of strand b) """
        for index, strands in sorted(self.passages().items()):
            crossing = self.diagram.crossings[index]
            over, under = ('b', 'a') if crossing.sign > 0 else ('a', 'b')
            over_x, over_y = STRAND_DIRECTIONS[over, strands[over][1]]
            under_x, under_y = STRAND_DIRECTIONS[under, strands[under][1]]
            rotated_x, rotated_y = -under_y, under_x
            sign = 1 if rotated_x * over_x + rotated_y * over_y > 0 else -1
            yield index, sign, strands['a'][0], strands['b'][0]


def trace_components(diagram):
    """ follows the closed strands, each starting at its leftmost unvisited cap and going down its left leg """
    visited = set()
    components = []
    for left, _ in diagram.caps:
        if (0, left) in visited:
            continue
        segments, passages = [], []
        level, position, direction = 0, left, DOWN
        while True:
            visited.add((level, position))
            segments.append((level, position, direction))
            if direction == DOWN and level == diagram.levels:
                position, direction = diagram.partner(position), UP
            elif direction == UP and level == 0:
                position, direction = diagram.partner(position), DOWN
            else:
                crossing = level if direction == DOWN else level - 1
                level, position, strand = diagram.step(level, position, direction)
                if strand is not None:
                    passages.append(Passage(crossing, strand, direction))
                continue
            if (level, position, direction) == (0, left, DOWN):
                break
        components.append(Component(segments, passages))
    logger.debug("traced %d components through %d crossings", len(components), diagram.levels)
    return OrientedLink(diagram, components)


def writhe(link):
    return sum(sign for _, sign, _, _ in link.crossing_signs())


def linking_number(link, first, second):
    total = sum(sign for _, sign, a, b in link.crossing_signs() if {a, b} == {first, second})
    return total // 2


def braid_writhe(b):
    return writhe(trace_components(plat_close(b)))


if __name__ == '__main__':
    print(braid_writhe(BraidWord(4, [2, 2, 2])))
