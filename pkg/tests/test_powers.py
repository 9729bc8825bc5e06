"""Power families, closures, lifting and the structural conditions."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gamepowers.games import Player, strategic_to_extensive
from gamepowers.powers import (
    CONSISTENCY,
    DETERMINACY,
    INSTANTIATEDNESS,
    MONOTONICITY,
    NON_EMPTINESS,
    UNION_CLOSURE,
    PowerFamily,
    basic_powers,
    check_conditions,
    egli_milner,
    powers,
    relational_basic_powers,
    union_closure,
    upward_closure,
)
from helpers import (
    double_move_then_b_choice,
    family,
    one_then_two_or_three,
    oracle_plain_powers,
    oracle_union_closure,
    single_move_then_b_choice,
    two_or_three_after_one,
    zero_one_matrix_2x3,
    zero_one_matrix_3x3,
)


def members(f: PowerFamily):
    return set(f.members)


def test_power_family_canonical_order():
    f = PowerFamily(["2", "1", "3"], [["3", "1"], ["1", "3"], ["2"]])
    assert f.members == (("1", "3"), ("2",))
    assert ["1", "3"] in f
    assert ["3", "1"] in f
    assert ["1"] not in f


def test_power_family_json_roundtrip():
    f = PowerFamily(["a", "b"], [["b", "a"], ["a"]])
    assert PowerFamily.from_json(f.to_json()) == f


def test_basic_powers_of_worked_games():
    g1 = one_then_two_or_three()
    assert members(basic_powers(g1, Player.A)) == family([{"1"}, {"2", "3"}])
    assert members(basic_powers(g1, Player.B)) == family([{"1", "2"}, {"1", "3"}])
    g2 = two_or_three_after_one()
    assert members(basic_powers(g2, Player.A)) == family(
        [{"1"}, {"1", "2"}, {"1", "3"}, {"2", "3"}]
    )
    assert members(basic_powers(g2, Player.B)) == family([{"1", "2"}, {"1", "3"}])


def test_plain_powers_of_worked_games():
    g1, g2 = one_then_two_or_three(), two_or_three_after_one()
    expected_a = family(
        [{"1"}, {"1", "2"}, {"1", "3"}, {"2", "3"}, {"1", "2", "3"}]
    )
    assert members(powers(g1, Player.A)) == expected_a
    assert members(powers(g2, Player.A)) == expected_a
    expected_b = family([{"1", "2"}, {"1", "3"}, {"1", "2", "3"}])
    assert members(powers(g1, Player.B)) == expected_b
    assert members(powers(g2, Player.B)) == expected_b


def test_plain_powers_match_direct_oracle():
    for g in (
        one_then_two_or_three(),
        two_or_three_after_one(),
        single_move_then_b_choice(),
        double_move_then_b_choice(),
    ):
        for p in (Player.A, Player.B):
            assert members(powers(g, p)) == oracle_plain_powers(g, p)


def test_relational_powers_of_b_choice_games():
    left, right = single_move_then_b_choice(), double_move_then_b_choice()
    assert members(basic_powers(left, Player.B)) == family([{"x"}, {"y"}])
    assert members(basic_powers(right, Player.B)) == family(
        [{"x"}, {"y"}, {"x", "y"}]
    )
    both = family([{"x"}, {"y"}, {"x", "y"}])
    assert members(relational_basic_powers(left, Player.B)) == both
    assert members(relational_basic_powers(right, Player.B)) == both
    assert members(relational_basic_powers(left, Player.A)) == family([{"x", "y"}])
    assert members(relational_basic_powers(right, Player.A)) == family([{"x", "y"}])


def test_relational_powers_of_strategic_game_match_realization():
    for sg in (zero_one_matrix_2x3(), zero_one_matrix_3x3()):
        realized = strategic_to_extensive(sg)
        for p in (Player.A, Player.B):
            assert relational_basic_powers(sg, p) == relational_basic_powers(
                realized, p
            )
            assert basic_powers(sg, p) == basic_powers(realized, p)


def test_matrix_basic_powers_are_rows_and_columns():
    sg = zero_one_matrix_3x3()
    assert members(basic_powers(sg, Player.A)) == family([{"0", "1"}, {"0"}])
    assert members(basic_powers(sg, Player.B)) == family([{"0", "1"}, {"0"}])


def test_trivial_player_has_singleton_relational_family():
    g = single_move_then_b_choice()
    fam = relational_basic_powers(g, Player.A)
    assert len(fam) == 1


def test_upward_closure():
    f = PowerFamily(["1", "2", "3"], [["1"]])
    assert members(upward_closure(f)) == family(
        [{"1"}, {"1", "2"}, {"1", "3"}, {"1", "2", "3"}]
    )
    # already-closed family is a fixpoint
    assert upward_closure(upward_closure(f)) == upward_closure(f)


def test_union_closure_matches_subfamily_oracle():
    f = PowerFamily(["1", "2", "3"], [["1"], ["2"], ["2", "3"]])
    assert members(union_closure(f)) == oracle_union_closure(f.members)
    assert union_closure(union_closure(f)) == union_closure(f)


@settings(max_examples=60, deadline=None)
@given(
    st.sets(
        st.frozensets(st.sampled_from(["1", "2", "3", "4"]), min_size=1),
        min_size=1,
        max_size=5,
    )
)
def test_union_closure_property(ms):
    f = PowerFamily(["1", "2", "3", "4"], ms)
    closed = union_closure(f)
    assert members(closed) == oracle_union_closure(f.members)
    assert set(f.members) <= members(closed)


def test_relational_equals_union_closure_of_basic_on_perfect_info():
    for g in (
        one_then_two_or_three(),
        two_or_three_after_one(),
        double_move_then_b_choice(),
    ):
        for p in (Player.A, Player.B):
            assert relational_basic_powers(g, p) == union_closure(
                basic_powers(g, p)
            )


def test_egli_milner():
    r = [("1", "1"), ("2", "2")]
    assert egli_milner(r, {"1", "2"}, {"1", "2"})
    assert not egli_milner(r, {"1"}, {"1", "2"})
    assert not egli_milner(r, {"1", "2"}, {"1"})
    assert egli_milner([("1", "2")], {"1"}, {"2"})
    assert not egli_milner([], {"1"}, {"2"})
    assert egli_milner([], set(), set())


def test_condition_profiles_on_basic_families():
    g = one_then_two_or_three()
    fa = basic_powers(g, Player.A)
    fb = basic_powers(g, Player.B)
    pa, pb = check_conditions(fa, fb)
    assert pa.holds(NON_EMPTINESS, CONSISTENCY, INSTANTIATEDNESS)
    assert pb.holds(NON_EMPTINESS, CONSISTENCY, INSTANTIATEDNESS)
    # basic families are not upward closed here
    assert not pa[MONOTONICITY].holds
    assert pa[MONOTONICITY].witness is not None


def test_condition_profiles_on_plain_families():
    g = two_or_three_after_one()
    pa, pb = check_conditions(powers(g, Player.A), powers(g, Player.B))
    for prof in (pa, pb):
        assert prof.holds(NON_EMPTINESS, MONOTONICITY, CONSISTENCY, DETERMINACY)


def test_determinacy_witness():
    fa = PowerFamily(["0", "1"], [["0"]])
    fb = PowerFamily(["0", "1"], [["0"]])
    pa, _ = check_conditions(fa, fb)
    assert not pa[DETERMINACY].holds
    w = pa[DETERMINACY].witness["subset"]
    assert tuple(w) not in fa.members
    assert tuple(sorted(set(["0", "1"]) - set(w))) not in fb.members


def test_consistency_witness():
    fa = PowerFamily(["0", "1"], [["0"]])
    fb = PowerFamily(["0", "1"], [["1"]])
    pa, pb = check_conditions(fa, fb)
    assert not pa[CONSISTENCY].holds
    assert pa[CONSISTENCY].witness == {"A": ["0"], "B": ["1"]}
    assert not pb[CONSISTENCY].holds


def test_instantiatedness_witness():
    fa = PowerFamily(["0", "1"], [["0", "1"]])
    fb = PowerFamily(["0", "1"], [["0"]])
    pa, pb = check_conditions(fa, fb)
    assert not pa[INSTANTIATEDNESS].holds
    assert pa[INSTANTIATEDNESS].witness == {"member": ["0", "1"], "element": "1"}
    assert pb[INSTANTIATEDNESS].holds


def test_union_closure_flag():
    f = PowerFamily(["0", "1"], [["0"], ["1"]])
    closed = union_closure(f)
    pa, _ = check_conditions(f, closed)
    assert not pa[UNION_CLOSURE].holds
    assert pa[UNION_CLOSURE].witness["union"] == ["0", "1"]
    pc, _ = check_conditions(closed, closed)
    assert pc[UNION_CLOSURE].holds


def test_empty_family_flagged():
    fa = PowerFamily(["0"], [])
    fb = PowerFamily(["0"], [["0"]])
    pa, pb = check_conditions(fa, fb)
    assert not pa[NON_EMPTINESS].holds
    assert pb[NON_EMPTINESS].holds


def test_mismatched_outcome_sets_rejected():
    with pytest.raises(ValueError):
        check_conditions(
            PowerFamily(["0"], [["0"]]), PowerFamily(["1"], [["1"]])
        )


def test_profile_json():
    fa = PowerFamily(["0", "1"], [["0"], ["0", "1"]])
    pa, _ = check_conditions(fa, fa)
    blob = pa.to_json()
    assert set(blob) == {
        NON_EMPTINESS,
        MONOTONICITY,
        CONSISTENCY,
        DETERMINACY,
        INSTANTIATEDNESS,
        UNION_CLOSURE,
    }
    assert blob[NON_EMPTINESS]["holds"] is True
