import itertools
import json
from math import comb

import pytest

from iomonoid.chain import (
    GeneratorId,
    Transformation,
    compose,
    flip,
    generator,
    has_interval_image,
    identity,
    is_decreasing,
    is_increasing,
    is_order_preserving,
    make_transformation,
)
from iomonoid.monoid import (
    RankSearchExhausted,
    Variant,
    cardinality_formula,
    count_by_image_size,
    enumerate_closure,
    enumerate_direct,
    factor_through_larger_image,
    flip_suite,
    minimum_generating_set,
    rank_exact,
    standard_generators,
    undecomposables,
    units,
)

IO, MINUS, PLUS = Variant.IO, Variant.IO_MINUS, Variant.IO_PLUS


def T(*images):
    return make_transformation(len(images), images)


def brute_force(n, variant):
    """Filter all n^n maps by the defining predicates."""
    out = []
    for im in itertools.product(range(1, n + 1), repeat=n):
        alpha = Transformation(n, im)
        if not (is_order_preserving(alpha) and has_interval_image(alpha)):
            continue
        if variant is MINUS and not is_decreasing(alpha):
            continue
        if variant is PLUS and not is_increasing(alpha):
            continue
        out.append(alpha)
    return sorted(out)


class TestEnumerateDirect:
    def test_io2_listing(self):
        assert enumerate_direct(2, IO).elements == (T(1, 1), T(1, 2), T(2, 2))

    def test_io1_is_trivial(self):
        assert enumerate_direct(1, IO).elements == (identity(1),)

    def test_io3_minus_listing(self):
        assert enumerate_direct(3, MINUS).elements == (
            T(1, 1, 1), T(1, 1, 2), T(1, 2, 2), T(1, 2, 3))

    def test_n0_rejected(self):
        with pytest.raises(ValueError):
            enumerate_direct(0, IO)

    @pytest.mark.parametrize("n", range(1, 7))
    @pytest.mark.parametrize("variant", list(Variant))
    def test_matches_brute_force_filter(self, n, variant):
        assert list(enumerate_direct(n, variant).elements) == brute_force(n, variant)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_sizes_match_formula(self, n):
        for variant in Variant:
            assert len(enumerate_direct(n, variant)) == cardinality_formula(n, variant)

    def test_json(self):
        data = json.loads(enumerate_direct(2, IO).to_json())
        assert data == {"n": 2, "variant": "io", "elements": [[1, 1], [1, 2], [2, 2]]}


class TestClosure:
    def test_a1_b2_generate_io3(self):
        gens = [generator(GeneratorId("a", 1), 3), generator(GeneratorId("b", 2), 3)]
        assert enumerate_closure(3, gens).same_elements(enumerate_direct(3, IO))

    def test_a_letters_generate_io3_minus(self):
        gens = [generator(GeneratorId("a", i), 3) for i in (1, 2)]
        assert enumerate_closure(3, gens).same_elements(enumerate_direct(3, MINUS))

    def test_empty_closure_is_identity(self):
        assert enumerate_closure(3, []).elements == (identity(3),)

    def test_mixed_sizes_rejected(self):
        with pytest.raises(ValueError):
            enumerate_closure(3, [identity(2)])

    @pytest.mark.parametrize("n", range(3, 7))
    def test_rank_generating_set(self, n):
        gens = [generator(GeneratorId("a", i), n) for i in range(1, n - 1)]
        gens.append(generator(GeneratorId("b", n - 1), n))
        assert enumerate_closure(n, gens).same_elements(enumerate_direct(n, IO))

    @pytest.mark.parametrize("n", range(2, 7))
    @pytest.mark.parametrize("variant", list(Variant))
    def test_standard_generators(self, n, variant):
        closure = enumerate_closure(n, standard_generators(n, variant))
        assert closure.same_elements(enumerate_direct(n, variant))

    def test_recorded_edges(self):
        table = enumerate_closure(3, standard_generators(3, IO), record_edges=True)
        gens = {str(g): g for g in (T(1, 1, 2), T(2, 3, 3))}
        assert len(table.edges) == 2 * len(table)
        for (source, name), target in table.edges.items():
            assert compose(source, gens[name]) == target


class TestCounts:
    @pytest.mark.parametrize("n, variant, expected", [(3, IO, 8), (4, IO, 20), (4, MINUS, 8)])
    def test_formula_examples(self, n, variant, expected):
        assert cardinality_formula(n, variant) == expected

    def test_formula_n1(self):
        assert cardinality_formula(1, IO) == 1

    @pytest.mark.parametrize("n, variant, expected", [
        (3, IO, {1: 3, 2: 4, 3: 1}), (3, MINUS, {1: 1, 2: 2, 3: 1}), (1, IO, {1: 1})])
    def test_by_image_size_examples(self, n, variant, expected):
        assert count_by_image_size(n, variant) == expected

    @pytest.mark.parametrize("n", range(1, 17))
    def test_strata_sum_to_formula(self, n):
        for variant in Variant:
            assert sum(count_by_image_size(n, variant).values()) == cardinality_formula(n, variant)
        assert count_by_image_size(n, IO) == {
            k: (n - k + 1) * comb(n - 1, k - 1) for k in range(1, n + 1)}

    @pytest.mark.parametrize("n", range(1, 9))
    def test_strata_match_enumeration(self, n):
        for variant in Variant:
            counts = {}
            for alpha in enumerate_direct(n, variant):
                counts[alpha.rank] = counts.get(alpha.rank, 0) + 1
            assert counts == count_by_image_size(n, variant)


class TestUndecomposables:
    def test_io3_minus(self):
        found = set(undecomposables(enumerate_direct(3, MINUS))) - {identity(3)}
        assert found == {T(1, 1, 2), T(1, 2, 2)}

    def test_io3(self):
        found = set(undecomposables(enumerate_direct(3, IO))) - {identity(3)}
        assert found == {T(1, 1, 2), T(2, 3, 3)}

    def test_identity_is_undecomposable_by_definition(self):
        assert undecomposables(enumerate_direct(1, IO)) == (identity(1),)
        assert identity(4) in undecomposables(enumerate_direct(4, IO))

    @pytest.mark.parametrize("n", range(2, 6))
    def test_lie_in_every_minimum_generating_set(self, n):
        for variant in Variant:
            table = enumerate_direct(n, variant)
            gens = set(minimum_generating_set(table))
            assert set(undecomposables(table)) - {identity(n)} <= gens


@pytest.mark.parametrize("n", range(1, 7))
def test_units_trivial(n):
    for variant in Variant:
        assert units(enumerate_direct(n, variant)) == (identity(n),)


class TestRank:
    @pytest.mark.parametrize("n, variant, expected", [
        (1, IO, 0), (2, IO, 2), (3, IO, 2), (4, IO, 3),
        (2, MINUS, 1), (3, MINUS, 2), (4, MINUS, 3)])
    def test_values(self, n, variant, expected):
        assert rank_exact(enumerate_direct(n, variant)) == expected

    def test_budget_exhaustion_is_explicit(self):
        with pytest.raises(RankSearchExhausted) as info:
            rank_exact(enumerate_direct(4, IO), budget=1)
        assert info.value.lower_bound >= 2

    def test_generating_set_generates(self):
        table = enumerate_direct(4, IO)
        gens = minimum_generating_set(table)
        assert enumerate_closure(4, gens).same_elements(table)


class TestFactorThroughLargerImage:
    def test_constant_n3(self):
        assert factor_through_larger_image(T(1, 1, 1)) == (T(1, 1, 2), T(1, 1, 2))

    def test_image_too_large(self):
        with pytest.raises(ValueError):
            factor_through_larger_image(T(1, 1, 2, 3))

    def test_constant_n4(self):
        g1, g2 = factor_through_larger_image(T(1, 1, 1, 1))
        assert g1.rank == g2.rank == 2 and compose(g1, g2) == T(1, 1, 1, 1)

    @pytest.mark.parametrize("n", range(3, 7))
    def test_exists_for_every_small_image(self, n):
        for variant in (MINUS, PLUS):
            for alpha in enumerate_direct(n, variant):
                if alpha.rank > n - 2:
                    continue
                pair = factor_through_larger_image(alpha, variant)
                assert pair is not None, alpha
                g1, g2 = pair
                assert g1.rank == g2.rank == alpha.rank + 1
                assert compose(g1, g2) == alpha


@pytest.mark.parametrize("n", range(1, 6))
def test_flip_suite(n):
    results = flip_suite(n)
    assert results and all(results.values()), results


@pytest.mark.parametrize("n", range(1, 7))
def test_flip_maps_minus_onto_plus(n):
    minus = enumerate_direct(n, MINUS)
    assert sorted(flip(x) for x in minus) == list(enumerate_direct(n, PLUS).elements)
