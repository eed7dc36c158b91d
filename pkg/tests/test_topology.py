import itertools
import random

import pytest

from convexcodes import (
    INDETERMINATE,
    NeuralCode,
    SimplicialComplex,
    classify_small_complex,
    has_local_obstruction,
    is_contractible_small,
    is_link_contractible,
    link_facet_sets,
    mandatory_faces,
    maximal_codewords,
    minimal_code,
    nerve,
    path_of_facets,
)
from convexcodes.topology import REFERENCE_COMPLEXES, is_collapsible

import oracles
from conftest import fs


def facets_of(code):
    return maximal_codewords(code)


class TestNerve:
    def test_c22_two_triangles(self, c22):
        sc = nerve(facets_of(c22))
        # facet order 134 < 257 < 356 < 1357 fixes the vertex labels
        order = facets_of(c22)
        t1 = frozenset(order.index(f) + 1 for f in [fs("134"), fs("1357"), fs("356")])
        t2 = frozenset(order.index(f) + 1 for f in [fs("1357"), fs("356"), fs("257")])
        assert set(sc.facets) == {t1, t2}
        assert classify_small_complex(sc).class_id == "L22"

    def test_c24_simplex_plus_edges(self, c24):
        sc = nerve(facets_of(c24))
        assert classify_small_complex(sc).class_id == "L24"
        assert sum(1 for f in sc.facets if len(f) == 3) == 1
        assert sum(1 for f in sc.facets if len(f) == 2) == 3

    def test_single_set(self):
        sc = nerve([fs("12")])
        assert set(sc.facets) == {frozenset({1})}
        assert classify_small_complex(sc).class_id == "L1"

    def test_empty_input_set_rejected(self):
        with pytest.raises(ValueError):
            nerve([fs("12"), frozenset()])


class TestLinkFacetSets:
    def test_c24_vertex(self, c24):
        assert set(link_facet_sets(facets_of(c24), fs("1"))) == {
            fs("23"),
            fs("246"),
            fs("45"),
        }

    def test_c22_vertex(self, c22):
        assert set(link_facet_sets(facets_of(c22), fs("3"))) == {
            fs("14"),
            fs("157"),
            fs("56"),
        }

    def test_link_of_facet_is_empty_difference(self, c24):
        assert link_facet_sets(facets_of(c24), fs("356")) == [frozenset()]

    def test_non_face_rejected(self, c24):
        with pytest.raises(ValueError):
            link_facet_sets(facets_of(c24), fs("25"))


class TestClassify:
    def test_hollow_triangle(self):
        got = classify_small_complex(SimplicialComplex([fs("12"), fs("13"), fs("23")]))
        assert got.class_id == "L7"
        assert not got.contractible

    def test_filled_triangle(self):
        got = classify_small_complex(SimplicialComplex([fs("123")]))
        assert got.class_id == "L8"
        assert got.contractible

    def test_c24_nerve(self, c24):
        got = classify_small_complex(nerve(facets_of(c24)))
        assert got.class_id == "L24"
        assert not got.contractible

    def test_relabeling_witness_replays(self, c22):
        sc = nerve(facets_of(c22))
        got = classify_small_complex(sc)
        mapping = got.relabeling_dict()
        relabeled = SimplicialComplex(
            frozenset(mapping[v] for v in f) for f in sc.facets
        )
        reference = REFERENCE_COMPLEXES[got.class_id]
        assert set(relabeled.facets) == set(reference.facets)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            classify_small_complex(SimplicialComplex([fs("12345")]))


class TestContractibleSmall:
    def test_point(self):
        assert is_contractible_small(SimplicialComplex([fs("1")]))

    def test_two_points(self):
        assert not is_contractible_small(SimplicialComplex([fs("1"), fs("2")]))

    def test_path_on_three(self):
        assert is_contractible_small(SimplicialComplex([fs("12"), fs("23")]))

    def test_table_matches_collapsibility_oracle(self):
        """Every reference class agrees with the independent oracle."""
        for name, sc in REFERENCE_COMPLEXES.items():
            expected = oracles.contractible_small(sc.facets)
            assert is_contractible_small(sc) == expected, name
            if is_contractible_small(sc):
                assert oracles.is_connected(sc.facets)
                assert oracles.euler_characteristic(sc.facets) == 1

    def test_internal_collapse_search_agrees_with_oracle(self):
        # is_collapsible consumes the full face set, not the facet antichain
        for name, sc in REFERENCE_COMPLEXES.items():
            assert is_collapsible(sc.all_faces()) == oracles.is_collapsible(sc.facets), name


class TestLinkContractible:
    def test_c24_vertex(self, c24):
        assert is_link_contractible(facets_of(c24), fs("1")) is True

    def test_c24_edge_disconnected(self, c24):
        assert is_link_contractible(facets_of(c24), fs("12")) is False

    def test_c22_vertex(self, c22):
        assert is_link_contractible(facets_of(c22), fs("3")) is True

    def test_facet_link_not_contractible(self, c24):
        assert is_link_contractible(facets_of(c24), fs("1246")) is False

    def test_empty_sigma_rejected(self, c24):
        with pytest.raises(ValueError):
            is_link_contractible(facets_of(c24), frozenset())

    def test_pairwise_only_intersections(self):
        """Facet pairwise intersections inside no third facet have bad links."""
        rng = random.Random(7)
        checked = 0
        while checked < 60:
            facets = []
            for _ in range(rng.randint(2, 4)):
                f = frozenset(
                    i for i in range(1, 7) if rng.random() < 0.5
                )
                if f:
                    facets.append(f)
            facets = [
                f for f in facets if not any(f < g for g in facets)
            ]
            facets = list(dict.fromkeys(facets))
            if len(facets) < 2 or len(facets) > 4:
                continue
            for f, g in itertools.combinations(facets, 2):
                sigma = f & g
                if not sigma:
                    continue
                if any(sigma <= h for h in facets if h not in (f, g)):
                    continue
                assert is_link_contractible(facets, sigma) is False
                checked += 1


class TestMandatoryFaces:
    def test_c24(self, c24):
        assert set(mandatory_faces(facets_of(c24))) == {
            fs("123"), fs("1246"), fs("145"), fs("356"),
            fs("12"), fs("14"), fs("3"), fs("6"), fs("5"),
        }

    def test_c22_against_oracle(self, c22):
        facets = facets_of(c22)
        got = set(mandatory_faces(facets))
        assert got == {
            fs("134"), fs("1357"), fs("356"), fs("257"),
            fs("13"), fs("35"), fs("57"),
        }
        # recompute: facets plus every max-intersection face with bad link
        from convexcodes import max_intersection_faces

        expected = set(facets)
        for sigma in max_intersection_faces(facets):
            if is_link_contractible(facets, sigma) is False:
                expected.add(sigma)
        assert got == expected

    def test_single_facet(self):
        assert set(mandatory_faces([fs("123")])) == {fs("123")}


class TestMinimalCode:
    def test_c24_is_its_own(self, c24):
        assert minimal_code(facets_of(c24)) == c24

    def test_three_facet_chain(self):
        got = minimal_code([fs("134"), fs("1357"), fs("356")])
        assert got.codewords == {
            fs("134"), fs("1357"), fs("356"), fs("13"), fs("35"), frozenset()
        }

    def test_single_facet(self):
        assert minimal_code([fs("12")]).codewords == {fs("12"), frozenset()}

    def test_never_obstructed(self):
        rng = random.Random(40)
        for _ in range(80):
            facets = set()
            for _ in range(rng.randint(1, 4)):
                f = frozenset(i for i in range(1, 7) if rng.random() < 0.55)
                if f:
                    facets.add(f)
            facets = [f for f in facets if not any(f < g for g in facets)]
            if not facets:
                continue
            assert has_local_obstruction(minimal_code(facets)) is None


class TestLocalObstruction:
    def test_c24_none(self, c24):
        assert has_local_obstruction(c24) is None

    def test_c22_none(self, c22):
        assert has_local_obstruction(c22) is None

    def test_removing_mandatory_face(self, c22):
        cmin = minimal_code(facets_of(c22))
        broken = NeuralCode(cmin.codewords - {fs("13")})
        assert has_local_obstruction(broken) == fs("13")


class TestPathOfFacets:
    def test_c24_triangle(self):
        w = path_of_facets(fs("123"), fs("1246"), fs("145"))
        assert w.as_tuple() == (1, 2, 3)

    def test_c22_triangle(self):
        w = path_of_facets(fs("134"), fs("1357"), fs("356"))
        assert w.as_tuple() == (1, 2, 3)

    def test_no_witness(self):
        assert path_of_facets(fs("12"), fs("13"), fs("23")) is None

    def test_not_antichain_rejected(self):
        with pytest.raises(ValueError):
            path_of_facets(fs("1"), fs("12"), fs("13"))

    def test_witness_invariant(self):
        rng = random.Random(11)
        for _ in range(120):
            fac = set()
            while len(fac) < 3:
                f = frozenset(i for i in range(1, 7) if rng.random() < 0.5)
                if f:
                    fac.add(f)
            f1, f2, f3 = sorted(fac, key=sorted)
            if any(a <= b for a in (f1, f2, f3) for b in (f1, f2, f3) if a is not b):
                continue
            w = path_of_facets(f1, f2, f3)
            if w is None:
                continue
            trio = (f1, f2, f3)
            a, b, c = (trio[i - 1] for i in w.as_tuple())
            assert (a & b) - c
            assert (b & c) - a
            assert not (a & c) - b


def all_complexes_on(k):
    """Every simplicial complex whose vertex set is exactly 1..k."""
    verts = list(range(1, k + 1))
    subsets = [
        frozenset(s)
        for r in range(1, k + 1)
        for s in itertools.combinations(verts, r)
    ]
    for bits in range(1, 1 << len(subsets)):
        family = [subsets[i] for i in range(len(subsets)) if bits >> i & 1]
        if any(f < g for f in family for g in family):
            continue
        if frozenset().union(*family) != frozenset(verts):
            continue
        yield family


class TestClassificationExhaustive:
    def test_small_vertex_counts_hit_l1_to_l8(self):
        seen = set()
        for k in (1, 2, 3):
            for family in all_complexes_on(k):
                cls = classify_small_complex(SimplicialComplex(family)).class_id
                assert int(cls[1:]) <= 8
                seen.add(cls)
        assert seen == {f"L{i}" for i in range(1, 9)}

    def test_four_vertices_hit_l9_to_l28(self):
        seen = set()
        for family in all_complexes_on(4):
            cls = classify_small_complex(SimplicialComplex(family)).class_id
            assert 9 <= int(cls[1:]) <= 28
            seen.add(cls)
        assert seen == {f"L{i}" for i in range(9, 29)}

    def test_classification_permutation_invariant_on_three_vertices(self):
        for family in all_complexes_on(3):
            base = classify_small_complex(SimplicialComplex(family)).class_id
            for perm in itertools.permutations((1, 2, 3)):
                mapped = [frozenset(perm[v - 1] for v in f) for f in family]
                got = classify_small_complex(SimplicialComplex(mapped)).class_id
                assert got == base


def test_indeterminate_refuses_truth_coercion():
    with pytest.raises(TypeError):
        bool(INDETERMINATE)
    assert INDETERMINATE is not True and INDETERMINATE is not False
