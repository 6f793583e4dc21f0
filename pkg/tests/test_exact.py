import random

import pytest
from fractions import Fraction

from binsum.exact import (
    PartitionPair,
    Route,
    binomial,
    eval_diagonal,
    eval_direct,
    eval_reduced,
    evaluate,
    evaluation_cost,
    normalized_I,
    reduced_term_count,
    signed_terms,
)


def test_pair_normalization_enforced():
    with pytest.raises(ValueError):
        PartitionPair(2, 3)
    with pytest.raises(ValueError):
        PartitionPair(-1, -2)
    with pytest.raises(TypeError):
        PartitionPair(2.0, 1)


def test_pair_derived_fields():
    pair = PartitionPair(6, 4)
    assert pair.ratio == Fraction(3, 2)
    assert pair.difference == 2
    assert pair.congruence_class == 2
    with pytest.raises(ValueError):
        PartitionPair(3, 0).ratio


def test_binomial_conventions():
    assert binomial(5, 2) == 10
    assert binomial(0, 0) == 1
    assert all(binomial(n, 0) == 1 for n in range(20))
    assert binomial(10, -1) == 0
    assert binomial(10, 11) == 0


def test_direct_known_values():
    assert eval_direct(PartitionPair(6, 1)).value == -5
    assert eval_direct(PartitionPair(3, 2)).value == -2
    assert eval_direct(PartitionPair(0, 0)).value == 1


def test_reduced_known_values():
    assert eval_reduced(PartitionPair(5, 2)).value == 1
    assert eval_reduced(PartitionPair(3, 2)).value == -2
    assert eval_reduced(PartitionPair(6, 1)).value == -5


def test_diagonal_closed_form():
    assert eval_diagonal(4).value == 6
    assert eval_diagonal(5).value == 0
    assert eval_diagonal(0).value == 1
    assert eval_diagonal(2).value == -2


def test_first_row_is_linear():
    for l1 in range(1, 1001):
        assert eval_direct(PartitionPair(l1, 1)).value == 1 - l1


def test_route_equivalence_sample():
    for l1 in range(0, 81):
        for l2 in range(0, l1 + 1):
            pair = PartitionPair(l1, l2)
            assert eval_direct(pair).value == eval_reduced(pair).value, (l1, l2)


def test_diagonal_matches_direct_sample():
    for lam in range(0, 121):
        assert eval_diagonal(lam).value == eval_direct(PartitionPair(lam, lam)).value


def test_reduced_term_count_bound():
    for l1, l2 in [(100, 10), (100, 98), (55, 54), (7, 7), (12, 0)]:
        pair = PartitionPair(l1, l2)
        assert reduced_term_count(pair) <= l1 // 2 - (l2 + 1) // 2 + 1


def test_evaluate_route_selection():
    near = PartitionPair(1001, 1000)
    assert evaluate(near).route is Route.REDUCED
    wide = PartitionPair(1000, 10)
    assert evaluate(wide).route is Route.DIRECT
    diag = PartitionPair(8, 8)
    assert evaluate(diag).route is Route.DIAGONAL
    with pytest.raises(ValueError):
        evaluate(PartitionPair(9, 8), Route.DIAGONAL)


def test_term_growth_beyond_threshold():
    # for l1 > l2*(l2+1) - 1 the summand magnitudes increase strictly from j=1
    for l2 in range(1, 31):
        threshold = l2 * (l2 + 1) - 1
        for l1 in (threshold + 1, threshold + 7):
            terms = [abs(t) for t in signed_terms(PartitionPair(l1, l2))]
            inner = terms[1:]
            assert all(a < b for a, b in zip(inner, inner[1:])), (l1, l2)


def test_term_growth_fails_at_threshold():
    # at l1 = l2*(l2+1) - 1 the last two magnitudes tie, so growth is not strict
    l2 = 5
    terms = [abs(t) for t in signed_terms(PartitionPair(l2 * (l2 + 1) - 1, l2))]
    assert terms[-1] == terms[-2]


def test_normalized_value_signs():
    assert normalized_I(PartitionPair(3, 2)) == -2
    assert normalized_I(PartitionPair(6, 1)) == 5
    assert normalized_I(PartitionPair(4, 4)) == 6
    with pytest.raises(ValueError):
        normalized_I(PartitionPair(3, 0))


def test_evaluation_cost_scales_with_width():
    cheap = evaluation_cost(PartitionPair(703, 702))
    pricey = evaluation_cost(PartitionPair(100000, 50000))
    assert cheap < 200
    assert pricey > 10**6


def test_random_pairs_cross_route():
    rng = random.Random(3)
    for _ in range(60):
        l2 = rng.randrange(0, 150)
        l1 = l2 + rng.randrange(0, 150)
        pair = PartitionPair(l1, l2)
        assert eval_direct(pair).value == eval_reduced(pair).value
