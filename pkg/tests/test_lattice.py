import itertools
import random
from fractions import Fraction

import pytest

from resgaps.arith.models import SymMatrix
from resgaps.arith.utils import det, floor_sqrt, inverse
from resgaps.errors import BoundTooLarge, MalformedSpec
from resgaps.lattice.models import DirectSum, Dual, RootA, RootD, RootE, ScaledUnit
from resgaps.lattice.utils import (
    cartan,
    find_frame,
    find_vector,
    in_narrow,
    minimal_vector,
    parse_lattice,
    realize,
    render_lattice,
    short_vectors,
    vectors_in_window,
)


def _canonical(coords):
    for x in coords:
        if x:
            return x > 0
    return True


def _box_enumeration(gram: SymMatrix, bound: int):
    inv = inverse(gram)
    reach = [floor_sqrt(bound * inv[i, i]) for i in range(gram.dim)]
    found = set()
    for coords in itertools.product(*(range(-r, r + 1) for r in reach)):
        norm = gram.quadratic(coords)
        if norm <= bound and _canonical(coords):
            found.add((coords, norm))
    return found


def _random_gram(rng: random.Random, size: int) -> SymMatrix:
    m = [[rng.randint(-2, 2) for _ in range(size)] for _ in range(size)]
    return SymMatrix.of([
        [sum(m[k][i] * m[k][j] for k in range(size)) + (i == j) for j in range(size)]
        for i in range(size)
    ])


class TestRootLattices:
    @pytest.mark.parametrize("root, expected", [
        (RootA(1), 2), (RootA(4), 5), (RootD(4), 4), (RootD(7), 4),
        (RootE(6), 3), (RootE(7), 2), (RootE(8), 1),
    ])
    def test_cartan_determinants(self, root, expected):
        gram = cartan(root)
        assert det(gram) == expected
        assert gram.is_even()

    def test_invalid_labels(self):
        with pytest.raises(MalformedSpec):
            cartan(RootD(3))
        with pytest.raises(MalformedSpec):
            cartan(RootE(5))


class TestLatticeText:
    def test_dual_plus_unit(self):
        spec = parse_lattice("A1*+<1/6>")
        assert spec == DirectSum((Dual(RootA(1)), ScaledUnit(Fraction(1, 6))))
        assert realize(spec) == SymMatrix.of([["1/2", 0], [0, "1/6"]])

    def test_scaled_matrix(self):
        gram = realize(parse_lattice("1/15[[2,1],[1,8]]"))
        assert gram == SymMatrix.of([["2/15", "1/15"], ["1/15", "8/15"]])

    def test_rank_zero(self):
        assert parse_lattice("0") is None
        assert render_lattice(None) == "0"

    @pytest.mark.parametrize("text", ["A2^2+A1", "A1*^3", "D4*+A1*", "1/15[[2,1],[1,8]]", "<1/12>"])
    def test_render_inverts_parse(self, text):
        assert render_lattice(parse_lattice(text)) == text

    @pytest.mark.parametrize("text", ["A2+", "F4", "<-1/2>", "(A1", "A1^0"])
    def test_malformed(self, text):
        with pytest.raises(MalformedSpec):
            realize(parse_lattice(text))

    def test_e8_is_unimodular(self):
        dual = realize(parse_lattice("E8*"))
        assert dual.is_even()
        assert det(dual) == 1


class TestEnumeration:
    def test_matches_box_enumeration(self):
        rng = random.Random(20240611)
        for _ in range(50):
            gram = _random_gram(rng, rng.randint(1, 3))
            bound = rng.randint(0, 20)
            found = {(v.coords, v.norm) for v in short_vectors(gram, bound)}
            assert found == _box_enumeration(gram, bound)

    def test_window_is_lexicographic(self):
        gram = cartan(RootA(3))
        coords = [v.coords for v in vectors_in_window(gram, 1, 6)]
        assert coords == sorted(coords)
        assert all(_canonical(c) and any(c) for c in coords)

    def test_short_vectors_sorted_by_norm(self):
        found = short_vectors(cartan(RootA(2)), 2)
        assert found[0].coords == (0, 0)
        assert [v.norm for v in found] == [0, 2, 2, 2]

    def test_open_upper_end(self):
        gram = SymMatrix.of([[1]])
        assert [v.coords for v in vectors_in_window(gram, 1, 4, upper_open=True)] == [(1,)]
        assert [v.coords for v in vectors_in_window(gram, 1, 4)] == [(1,), (2,)]

    def test_lower_end_skips_short_vectors(self):
        assert [v.coords for v in vectors_in_window(SymMatrix.of([[2]]), 3, 8)] == [(2,)]

    def test_budget(self):
        with pytest.raises(BoundTooLarge):
            short_vectors(cartan(RootE(8)), 20, budget=10)

    def test_find_and_minimal(self):
        assert find_vector(SymMatrix.of([[2]]), 8).coords == (2,)
        assert find_vector(SymMatrix.of([[2]]), 6) is None
        mu = minimal_vector(realize(parse_lattice("A2*")))
        assert mu.norm == Fraction(2, 3)

    def test_narrow_membership(self):
        free = realize(parse_lattice("A1*"))
        assert in_narrow(free, (2,))
        assert not in_narrow(free, (1,))


class TestFrames:
    def _gram_of(self, gram, frame):
        return [[gram.bilinear(u, v) for v in frame] for u in frame]

    def test_a1_four_in_d4(self):
        gram = cartan(RootD(4))
        frame = find_frame(gram, SymMatrix.identity(4).scaled(2))
        assert frame is not None
        assert self._gram_of(gram, frame) == [[2 * (i == j) for j in range(4)] for i in range(4)]

    def test_a5_has_a4_but_not_a1_four(self):
        gram = cartan(RootA(5))
        assert find_frame(gram, SymMatrix.identity(4).scaled(2)) is None
        frame = find_frame(gram, cartan(RootA(4)))
        assert self._gram_of(gram, frame) == cartan(RootA(4)).rows()

    def test_rank_too_small(self):
        assert find_frame(cartan(RootA(3)), cartan(RootA(4))) is None
