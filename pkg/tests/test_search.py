import math
import random

import pytest

from helpers import random_intersecting_family
from kfam.constructions import c3, full_star, t2, t2prime
from kfam.covers import covering_number, tau
from kfam.errors import DomainError, ScaleError
from kfam.families import are_isomorphic, canonical_form, is_intersecting
from kfam.formulas import ekr_bound, f_of_z, hm_size, thm1_bound
from kfam.search import (
    find_tau_dropping_shift,
    lemmin_oracle,
    lemmin_table,
    max_intersecting_tau,
    saturate,
)
from kfam.shifting import shift_family


def test_cnkt_frozen_small():
    assert max_intersecting_tau(5, 2, 2).optimum == 3
    assert max_intersecting_tau(7, 3, 1).optimum == ekr_bound(7, 3) == 15
    assert max_intersecting_tau(7, 3, 2).optimum == hm_size(7, 3) == 13
    assert max_intersecting_tau(8, 3, 2).optimum == hm_size(8, 3) == 16


def test_cnkt_matches_threshold_bound():
    # the u=3 bound specializes to the exact tau>=2 optimum here
    assert max_intersecting_tau(7, 3, 2).optimum == thm1_bound(7, 3, 3)


def test_cnkt_t3_value_and_witnesses():
    res = max_intersecting_tau(7, 3, 3, all_optima=True)
    assert res.optimum == 10
    assert len(res.witnesses) == 7
    for w in res.witnesses:
        assert is_intersecting(w)
        assert len(w) == 10
        assert tau(w) >= 3
    # witnesses are pairwise non-isomorphic canonical forms
    for i, a in enumerate(res.witnesses):
        assert canonical_form(a) == a
        for b in res.witnesses[i + 1 :]:
            assert not are_isomorphic(a, b)
    # the explicit tau=3 construction is among the optima
    target = canonical_form(c3(7, 3))
    assert any(w == target for w in res.witnesses)


def test_cnkt_all_optima_counts():
    assert len(max_intersecting_tau(5, 2, 2, all_optima=True).witnesses) == 1
    assert len(max_intersecting_tau(6, 3, 2, all_optima=True).witnesses) == 12


def test_cnkt_monotone_in_t():
    values = [max_intersecting_tau(7, 3, t).optimum for t in (1, 2, 3)]
    assert values == sorted(values, reverse=True)


def test_cnkt_schedule_independent():
    base = max_intersecting_tau(7, 3, 2).optimum
    for seed in (1, 2, 3):
        assert max_intersecting_tau(7, 3, 2, rng=random.Random(seed)).optimum == base


def test_cnkt_guards():
    with pytest.raises(ScaleError):
        max_intersecting_tau(12, 5, 2)
    with pytest.raises(DomainError):
        max_intersecting_tau(7, 3, 4)
    with pytest.raises(DomainError):
        max_intersecting_tau(3, 4, 1)


def test_saturate_fixed_point_on_maximal():
    fam = c3(9, 4)
    assert saturate(fam) == fam


def test_saturate_never_loses_tau():
    rng = random.Random(19)
    for _ in range(40):
        n = rng.randint(5, 9)
        k = rng.randint(2, 3)
        fam = random_intersecting_family(rng, n, k, rng.randint(1, 10))
        before = covering_number(fam).tau
        sat = saturate(fam)
        assert fam.member_set <= sat.member_set
        assert is_intersecting(sat)
        assert covering_number(sat).tau >= before


def test_lemmin_oracle_free_argmax():
    best, classes = lemmin_oracle(9, 3, 4)
    assert best == f_of_z(9, 3, 4, 2) + 2 == 47
    assert len(classes) == 1
    assert are_isomorphic(classes[0], t2prime(3, 9))


def test_lemmin_oracle_intersecting_argmax():
    best, classes = lemmin_oracle(8, 4, 4, intersecting_only=True)
    assert best == f_of_z(8, 4, 4, 3) + 3 == 48
    assert len(classes) == 1
    assert are_isomorphic(classes[0], t2(4, 8))


def test_lemmin_strict_runner_up():
    rows = lemmin_table(9, 3, 4)
    assert rows[0][0] == 47 and rows[1][0] == 41
    rows = lemmin_table(8, 4, 4, intersecting_only=True)
    assert rows[0][0] == 48 and rows[1][0] == 47


def test_lemmin_guards():
    with pytest.raises(DomainError):
        lemmin_oracle(6, 3, 4)  # m < k+s
    with pytest.raises(ScaleError):
        lemmin_oracle(12, 5, 7)


def test_tau_dropping_shift_exists_at_7_3():
    hit = find_tau_dropping_shift(7, 3)
    assert hit is not None
    fam, i, j = hit
    before = covering_number(fam).tau
    after = covering_number(shift_family(fam, i, j)).tau
    assert after < before


def test_star_shift_never_drops_below_one():
    star = full_star(7, 3)
    for i, j in [(1, 2), (2, 5), (3, 7)]:
        assert covering_number(shift_family(star, i, j)).tau >= 1
