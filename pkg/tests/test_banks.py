import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tsol.banks import banks_member, banks_set, is_top_extendable
from tsol.core import (
    enumerate_tournaments,
    is_transitive,
    random_tournament,
    restrict,
    tournament_from_bits,
)

from oracles import banks_oracle


def idx(t, *names):
    return tuple(t.index(n) for n in names)


class TestIsTopExtendable:
    def test_extendable_chain(self, fig1):
        # a beats both e and b, so (e, b) extends upward
        assert is_top_extendable(fig1, idx(fig1, "e", "b")) == fig1.index("a")

    def test_maximal_chain(self, fig1):
        assert is_top_extendable(fig1, idx(fig1, "d", "c", "e")) is None

    def test_condorcet_winner_chain(self):
        t = tournament_from_bits(4, 0b111111)  # total order, 0 on top
        assert is_top_extendable(t, (0,)) is None

    def test_rejects_non_chain(self, fig1):
        with pytest.raises(ValueError, match="decreasing dominance"):
            is_top_extendable(fig1, idx(fig1, "b", "e"))
        with pytest.raises(ValueError, match="nonempty"):
            is_top_extendable(fig1, ())


class TestBanksMember:
    def test_e_is_not_a_member(self, fig1):
        assert banks_member(fig1, range(5), fig1.index("e")) is None

    def test_d_witness(self, fig1):
        chain = banks_member(fig1, range(5), fig1.index("d"))
        assert chain is not None
        assert chain[0] == fig1.index("d")
        assert is_transitive(fig1, chain)
        assert is_top_extendable(fig1, chain) is None

    def test_three_cycle_everybody_wins(self):
        t = tournament_from_bits(3, 0b101)  # a>b, b>c, c>a (cyclic)
        assert not is_transitive(t, range(3))
        for a in range(3):
            assert banks_member(t, range(3), a) is not None

    def test_membership_requires_carrier(self, fig1):
        with pytest.raises(ValueError):
            banks_member(fig1, [0, 1], 4)


class TestBanksSet:
    def test_fig1(self, fig1):
        assert banks_set(fig1) == set(idx(fig1, "a", "b", "c", "d"))

    def test_singleton(self, fig1):
        assert banks_set(fig1, [2]) == {2}

    def test_transitive_tournament_top_only(self):
        t = tournament_from_bits(5, (1 << 10) - 1)  # total order, 0 on top
        assert banks_set(t) == {0}

    def test_oracle_equivalence_small(self):
        for n in (1, 2, 3, 4):
            for t in enumerate_tournaments(n):
                assert banks_set(t) == banks_oracle(t)

    def test_oracle_equivalence_on_subsets(self, fig1):
        for sub in ([0, 1, 2], [1, 3, 4], [0, 2, 3, 4]):
            assert banks_set(fig1, sub) == banks_oracle(fig1, sub)

    @given(st.integers(0, 2**32), st.permutations(list(range(6))))
    @settings(max_examples=40, deadline=None)
    def test_permutation_invariant(self, seed, perm):
        t = random_tournament(6, seed)
        names = tuple(t.names[perm.index(i)] for i in range(6))
        rows = [0] * 6
        for i in range(6):
            for j in range(6):
                if i != j and t.dominates(perm.index(i), perm.index(j)):
                    rows[i] |= 1 << j
        shuffled = type(t)(names, tuple(rows))
        assert {t.names[i] for i in banks_set(t)} == {
            shuffled.names[i] for i in banks_set(shuffled)
        }

    @given(st.integers(0, 2**32))
    @settings(max_examples=40, deadline=None)
    def test_witness_contract(self, seed):
        t = random_tournament(7, seed)
        members = banks_set(t)
        assert members, "Banks set is never empty"
        for a in range(7):
            chain = banks_member(t, range(7), a)
            assert (chain is not None) == (a in members)
            if chain is not None:
                assert chain[0] == a
                assert is_transitive(t, chain)
                assert is_top_extendable(t, chain) is None

    def test_contains_condorcet_winner(self):
        for t in enumerate_tournaments(4):
            from tsol.core import condorcet_winner

            w = condorcet_winner(t, range(4))
            if w is not None:
                assert banks_set(t) == {w}

    def test_restriction_consistency(self, fig1):
        sub = idx(fig1, "a", "b", "c", "e")
        restricted = restrict(fig1, sub)
        by_subset = {fig1.names[i] for i in banks_set(fig1, sub)}
        by_restriction = {restricted.names[i] for i in banks_set(restricted)}
        assert by_subset == by_restriction
