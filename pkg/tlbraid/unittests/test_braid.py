import os
import tempfile
import unittest

from tlbraid.braid import (BraidWord, compose, plat_close, trace_components, writhe, linking_number,
                           braid_writhe)
from tlbraid.exceptions import BraidError
from tlbraid.unittests.testing_tools import TREFOIL, HOPF, KINKED_UNKNOT


class TestBraidWord(unittest.TestCase):

    def test_letters(self):
        b = BraidWord(4, [1, -3, 2])
        assert len(b) == 3 and list(b) == [1, -3, 2]
        assert b.inverse() == BraidWord(4, [-2, 3, -1])
        assert b.mirror() == BraidWord(4, [-1, 3, -2])
        assert compose(b, b.inverse()).letters == (1, -3, 2, -2, 3, -1)
        assert BraidWord(8, [1, -7]).shifted(4, 12) == BraidWord(12, [5, -11])

    def test_invalid(self):
        for strands, letters in ((4, [4]), (4, [0]), (0, []), (3, [-3])):
            with self.assertRaises(BraidError):
                BraidWord(strands, letters)
        with self.assertRaises(BraidError):
            compose(BraidWord(4, [1]), BraidWord(6, [1]))
        with self.assertRaises(AttributeError):
            TREFOIL.strands = 6

    def test_text(self):
        assert BraidWord.from_text('strands 4\n2 2 2\n') == TREFOIL
        with tempfile.TemporaryDirectory() as folder:
            filename = os.path.join(folder, 'hopf.braid')
            HOPF.save(filename)
            assert BraidWord.load(filename) == HOPF


class TestClosure(unittest.TestCase):

    def test_odd_strands(self):
        with self.assertRaises(BraidError):
            plat_close(BraidWord(3, [1, 2]))

    def test_components(self):
        assert len(trace_components(plat_close(TREFOIL))) == 1
        assert len(trace_components(plat_close(HOPF))) == 2
        assert len(trace_components(plat_close(BraidWord(6, [])))) == 3
        assert len(trace_components(plat_close(BraidWord(4, [1, 3])))) == 2

    def test_writhe(self):
        assert braid_writhe(TREFOIL) == -3
        assert braid_writhe(KINKED_UNKNOT) == 3
        assert braid_writhe(BraidWord(2, [1])) == 1
        assert braid_writhe(BraidWord(4, [])) == 0
        assert braid_writhe(TREFOIL.mirror()) == 3

    def test_reversal(self):
        link = trace_components(plat_close(HOPF))
        lk = linking_number(link, 0, 1)
        assert abs(lk) == 1
        assert writhe(link.reversed(1)) == writhe(link) - 4 * lk
        assert linking_number(link.reversed(0), 0, 1) == -lk
        assert writhe(link.reversed(0, 1)) == writhe(link)

        knot = trace_components(plat_close(TREFOIL))
        assert writhe(knot.reversed(0)) == writhe(knot)


if __name__ == '__main__':
    unittest.main()
