import warnings

import pytest

from hibilab.errors import (
    ChainConditionFails,
    LatticeInvalid,
    LatticeNormalization,
    MissingOrigin,
    NotJoinClosed,
    NotMeetClosed,
    WidthExceedsTwo,
)
from hibilab.lattice import (
    Poset,
    chain_partition,
    is_simple,
    join_irreducibles,
    poset_ideals_to_planar,
    posets_isomorphic,
    validate_planar_lattice,
)
from hibilab.reports import demo_staircase, ell_lattice, full_grid


def grid_points(m, n):
    return {(i, j) for i in range(m + 1) for j in range(n + 1)}


class TestValidation:
    def test_staircase_box_and_rank(self):
        lat = demo_staircase()
        assert (lat.m, lat.n) == (5, 4)
        assert lat.rank == 9
        assert len(lat.points) == 23

    def test_full_grid_valid(self):
        lat = validate_planar_lattice(grid_points(3, 2))
        assert lat.rank == 5
        assert len(lat.points) == 12

    def test_join_closure_witness(self):
        with pytest.raises(NotJoinClosed) as err:
            validate_planar_lattice({(0, 0), (1, 0), (0, 1)})
        assert err.value.details["witness"] == ((0, 1), (1, 0))

    def test_meet_closure_witness(self):
        with pytest.raises(NotMeetClosed) as err:
            validate_planar_lattice({(0, 0), (1, 0), (1, 2), (2, 0), (2, 1), (2, 2)})
        assert err.value.details["witness"] == ((1, 2), (2, 1))

    def test_missing_origin(self):
        with pytest.raises(MissingOrigin):
            validate_planar_lattice({(1, 0), (0, 1), (1, 1)})

    def test_chain_condition_witness(self):
        # (0,0) < (1,1) with no unit-rank step through (1,0) or (0,1)
        with pytest.raises(ChainConditionFails) as err:
            validate_planar_lattice({(0, 0), (1, 1)})
        assert err.value.details["witness"] == ((0, 0), (1, 1))

    def test_reanchoring_warns(self):
        with pytest.warns(LatticeNormalization):
            lat = validate_planar_lattice({(1, 1), (2, 1), (1, 2), (2, 2)})
        assert (0, 0) in lat.points
        assert (lat.m, lat.n) == (1, 1)

    def test_negative_coordinates_rejected(self):
        with pytest.raises(LatticeInvalid):
            validate_planar_lattice({(0, 0), (-1, 0)})

    def test_empty_rejected(self):
        with pytest.raises(MissingOrigin):
            validate_planar_lattice(set())


class TestSimplicity:
    def test_full_grid_simple(self):
        assert is_simple(full_grid(2, 2)).simple

    def test_chain_not_simple(self):
        lat = validate_planar_lattice({(0, 0), (1, 0), (1, 1)})
        rep = is_simple(lat)
        assert not rep.simple
        assert rep.violating_ranks == (1,)

    def test_staircase_simple(self):
        rep = is_simple(demo_staircase())
        assert rep.simple and rep.violating_ranks == ()


class TestJoinIrreducibles:
    def test_square(self):
        ji = join_irreducibles(full_grid(1, 1))
        assert set(ji.elements) == {(1, 0), (0, 1)}
        assert ji.incomparable((1, 0), (0, 1))

    def test_chain(self):
        lat = validate_planar_lattice({(i, 0) for i in range(4)})
        ji = join_irreducibles(lat)
        assert len(ji) == 3
        assert ji.is_chain()

    def test_ell_gives_cross_linked_pair(self):
        ji = join_irreducibles(ell_lattice())
        assert set(ji.elements) == {(1, 0), (0, 1), (0, 2), (2, 1)}
        assert ji.less((1, 0), (2, 1))
        assert ji.less((0, 1), (0, 2))
        assert ji.less((0, 1), (2, 1))
        assert ji.incomparable((1, 0), (0, 2))

    @pytest.mark.parametrize("m,n", [(1, 1), (2, 2), (3, 2), (5, 4)])
    def test_count_equals_rank_on_grids(self, m, n):
        lat = full_grid(m, n)
        assert len(join_irreducibles(lat)) == lat.rank

    def test_count_equals_rank_on_staircase(self):
        lat = demo_staircase()
        assert len(join_irreducibles(lat)) == lat.rank


class TestBirkhoff:
    def test_chain_plus_point(self):
        p = Poset(["a", "b", "c", "x"], [("a", "b"), ("b", "c")])
        lat = poset_ideals_to_planar(p)
        assert lat.points == full_grid(3, 1).points

    def test_cross_linked_pair(self):
        p = Poset(["p1", "p2", "q1", "q2"], [("p1", "p2"), ("q1", "q2"), ("q1", "p2")])
        lat = poset_ideals_to_planar(p)
        ell = ell_lattice()
        assert lat.points in (ell.points, ell.transpose().points)

    def test_three_antichain_rejected(self):
        with pytest.raises(WidthExceedsTwo) as err:
            poset_ideals_to_planar(Poset(["a", "b", "c"], []))
        assert len(err.value.details["antichain"]) == 3

    def test_single_chain(self):
        p = Poset([1, 2, 3], [(1, 2), (2, 3)])
        lat = poset_ideals_to_planar(p)
        assert len(lat.points) == 4
        assert lat.n == 0

    def test_partition_handles_bad_greedy_tiebreak(self):
        # the lexicographically first longest chain (a, d) has an antichain
        # complement; the cover must still be found
        p = Poset(["a", "b", "c", "d"], [("a", "d"), ("c", "d"), ("c", "b")])
        c1, c2 = chain_partition(p)
        assert sorted(map(len, (c1, c2))) == [2, 2]
        assert poset_ideals_to_planar(p) is not None


class TestIsomorphism:
    def test_reflexive(self):
        p = Poset("abc", [("a", "b")])
        assert posets_isomorphic(p, p)

    def test_relabelled(self):
        p = Poset("ab", [("a", "b")])
        q = Poset("xy", [("y", "x")])
        assert posets_isomorphic(p, q)

    def test_distinguishes(self):
        p = Poset("abc", [("a", "b"), ("b", "c")])
        q = Poset("abc", [("a", "b")])
        assert not posets_isomorphic(p, q)

    def test_cross_linked_orientations_isomorphic(self):
        a = Poset("abcd", [("a", "b"), ("c", "d"), ("c", "b")])
        b = Poset("abcd", [("a", "b"), ("c", "d"), ("a", "d")])
        assert posets_isomorphic(a, b)


def test_round_trip_on_named_lattices():
    for lat in (demo_staircase(), ell_lattice(), full_grid(2, 3), full_grid(1, 1)):
        ji = join_irreducibles(lat)
        back = poset_ideals_to_planar(ji)
        assert back.points in (lat.points, lat.transpose().points) or posets_isomorphic(
            _lattice_poset(back), _lattice_poset(lat)
        )


def _lattice_poset(lat):
    pts = sorted(lat.points)
    rels = [(a, b) for a in pts for b in pts if a != b and a[0] <= b[0] and a[1] <= b[1]]
    return Poset(pts, rels)
