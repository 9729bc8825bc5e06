"""Power families of games and the structural conditions on them.

A power family collects subsets of a fixed outcome set.  Plain powers are
the outcome sets a player can force with some functional strategy, closed
upward; basic powers are the exact outcome sets of functional strategies;
relational basic powers are the exact outcome sets of relational strategies.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations
from random import Random
from typing import Any, Iterable, Mapping

from .games import (
    ExtensiveGame,
    Player,
    StrategicGame,
    _as_player,
    enumerate_strategies,
    outcome_set,
)


def _member_key(member: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(member))


class PowerFamily:
    """An immutable family of outcome subsets in canonical sorted order."""

    __slots__ = ("outcomes", "members")

    def __init__(self, outcomes: Iterable[str], members: Iterable[Iterable[str]]):
        object.__setattr__(self, "outcomes", tuple(outcomes))
        canon = {_member_key(m) for m in members}
        object.__setattr__(self, "members", tuple(sorted(canon)))

    def __setattr__(self, name, value):
        raise AttributeError("PowerFamily is immutable")

    def member_sets(self) -> tuple[frozenset[str], ...]:
        return tuple(frozenset(m) for m in self.members)

    def __contains__(self, member) -> bool:
        return _member_key(member) in set(self.members)

    def __iter__(self):
        return iter(self.member_sets())

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        if not isinstance(other, PowerFamily):
            return NotImplemented
        return (
            set(self.outcomes) == set(other.outcomes)
            and self.members == other.members
        )

    def __hash__(self):
        return hash((frozenset(self.outcomes), self.members))

    def __repr__(self):
        shown = ",".join("{" + ",".join(m) + "}" for m in self.members)
        return f"PowerFamily[{shown}]"

    def to_json(self) -> dict:
        return {
            "outcomes": list(self.outcomes),
            "members": [list(m) for m in self.members],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "PowerFamily":
        return cls(obj["outcomes"], obj["members"])


def _subsets(universe: tuple[str, ...]):
    return chain.from_iterable(
        combinations(universe, k) for k in range(len(universe) + 1)
    )


# -- powers of games -------------------------------------------------------------


def basic_powers(g: ExtensiveGame | StrategicGame, p: Player) -> PowerFamily:
    """Exact outcome sets of p's functional strategies."""
    p = _as_player(p)
    if isinstance(g, StrategicGame):
        if p is Player.A:
            sets = [g.row_set(i) for i in range(len(g.rows))]
        else:
            sets = [g.col_set(j) for j in range(len(g.cols))]
        return PowerFamily(g.outcomes, sets)
    return PowerFamily(
        g.outcomes, [outcome_set(g, s) for s in enumerate_strategies(g, p)]
    )


def relational_basic_powers(
    g: ExtensiveGame | StrategicGame, p: Player
) -> PowerFamily:
    """Exact outcome sets of p's relational strategies.

    For a strategic game this is the union closure of the basic powers: in
    the canonical one-shot realization each player owns a single information
    cell, so relational strategies are exactly nonempty sets of rows
    (columns), and their guided outcomes are the corresponding unions.
    """
    p = _as_player(p)
    if isinstance(g, StrategicGame):
        return union_closure(basic_powers(g, p))
    return PowerFamily(
        g.outcomes,
        [outcome_set(g, s) for s in enumerate_strategies(g, p, relational=True)],
    )


def powers(g: ExtensiveGame | StrategicGame, p: Player) -> PowerFamily:
    """Outcome sets p can force: the upward closure of the basic powers."""
    return upward_closure(basic_powers(g, p))


# -- closures ---------------------------------------------------------------------


def upward_closure(f: PowerFamily) -> PowerFamily:
    out = set()
    universe = frozenset(f.outcomes)
    for m in f.member_sets():
        rest = tuple(sorted(universe - m))
        for extra in _subsets(rest):
            out.add(m | frozenset(extra))
    return PowerFamily(f.outcomes, out)


def union_closure(f: PowerFamily) -> PowerFamily:
    # binary unions to a fixpoint equal closure under nonempty finite unions
    out = set(f.member_sets())
    grew = True
    while grew:
        grew = False
        for x in list(out):
            for y in list(out):
                u = x | y
                if u not in out:
                    out.add(u)
                    grew = True
    return PowerFamily(f.outcomes, out)


# -- Egli-Milner lifting ------------------------------------------------------------


def egli_milner(
    r: Iterable[tuple[Any, Any]], z1: Iterable[Any], z2: Iterable[Any]
) -> bool:
    """Lift relation r to sets: z1 and z2 must cover each other through r."""
    pairs = set(r)
    z1, z2 = set(z1), set(z2)
    right_of = {}
    for x, y in pairs:
        right_of.setdefault(x, set()).add(y)
    for x in z1:
        if not (right_of.get(x, set()) & z2):
            return False
    for y in z2:
        if not any((x, y) in pairs for x in z1):
            return False
    return True


# -- condition checking ----------------------------------------------------------


@dataclass(frozen=True)
class ConditionCheck:
    name: str
    holds: bool
    witness: Any = None

    def to_json(self) -> dict:
        return {"holds": self.holds, "witness": self.witness}


class ConditionProfile:
    """Ordered bundle of named condition checks."""

    def __init__(self, checks: Iterable[ConditionCheck]):
        self._checks = {c.name: c for c in checks}

    def __getitem__(self, name: str) -> ConditionCheck:
        return self._checks[name]

    def __contains__(self, name: str) -> bool:
        return name in self._checks

    def names(self) -> tuple[str, ...]:
        return tuple(self._checks)

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self._checks.values())

    def holds(self, *names: str) -> bool:
        return all(self._checks[n].holds for n in names)

    def failed(self) -> tuple[str, ...]:
        return tuple(n for n, c in self._checks.items() if not c.holds)

    def to_json(self) -> dict:
        return {n: c.to_json() for n, c in self._checks.items()}

    def __repr__(self):
        body = ", ".join(
            f"{n}={'ok' if c.holds else 'FAIL'}" for n, c in self._checks.items()
        )
        return f"ConditionProfile({body})"


NON_EMPTINESS = "NonEmptiness"
MONOTONICITY = "Monotonicity"
CONSISTENCY = "Consistency"
DETERMINACY = "Determinacy"
INSTANTIATEDNESS = "Instantiatedness"
UNION_CLOSURE = "UnionClosure"


def _check_non_emptiness(fam: PowerFamily) -> ConditionCheck:
    return ConditionCheck(
        NON_EMPTINESS,
        len(fam) > 0,
        None if len(fam) else {"family": "empty"},
    )


def _check_monotonicity(fam: PowerFamily) -> ConditionCheck:
    members = set(fam.member_sets())
    universe = frozenset(fam.outcomes)
    for m in sorted(fam.members):
        mset = frozenset(m)
        for extra in _subsets(tuple(sorted(universe - mset))):
            sup = mset | frozenset(extra)
            if sup not in members:
                return ConditionCheck(
                    MONOTONICITY,
                    False,
                    {"member": sorted(mset), "superset": sorted(sup)},
                )
    return ConditionCheck(MONOTONICITY, True)


def _check_consistency(fa: PowerFamily, fb: PowerFamily) -> ConditionCheck:
    for p in fa.member_sets():
        for q in fb.member_sets():
            if not (p & q):
                return ConditionCheck(
                    CONSISTENCY, False, {"A": sorted(p), "B": sorted(q)}
                )
    return ConditionCheck(CONSISTENCY, True)


def _check_determinacy(fam: PowerFamily, other: PowerFamily) -> ConditionCheck:
    universe = tuple(sorted(set(fam.outcomes)))
    other_members = set(other.member_sets())
    members = set(fam.member_sets())
    for sub in _subsets(universe):
        p = frozenset(sub)
        if p not in members and (frozenset(universe) - p) not in other_members:
            return ConditionCheck(DETERMINACY, False, {"subset": sorted(p)})
    return ConditionCheck(DETERMINACY, True)


def _check_instantiatedness(fam: PowerFamily, other: PowerFamily) -> ConditionCheck:
    for p in fam.member_sets():
        for x in sorted(p):
            if not any(x in q for q in other.member_sets()):
                return ConditionCheck(
                    INSTANTIATEDNESS, False, {"member": sorted(p), "element": x}
                )
    return ConditionCheck(INSTANTIATEDNESS, True)


def _check_union_closure(fam: PowerFamily) -> ConditionCheck:
    # pairwise closure is equivalent to closure under nonempty unions
    members = set(fam.member_sets())
    for x in sorted(fam.members):
        for y in sorted(fam.members):
            u = frozenset(x) | frozenset(y)
            if u not in members:
                return ConditionCheck(
                    UNION_CLOSURE,
                    False,
                    {"parts": [list(x), list(y)], "union": sorted(u)},
                )
    return ConditionCheck(UNION_CLOSURE, True)


def check_conditions(
    fa: PowerFamily, fb: PowerFamily
) -> tuple[ConditionProfile, ConditionProfile]:
    """Evaluate all six conditions from each player's side.

    NonEmptiness, Monotonicity and UnionClosure describe one family;
    Consistency is joint and symmetric; Determinacy and Instantiatedness
    are read from the given side toward the other.
    """
    if set(fa.outcomes) != set(fb.outcomes):
        raise ValueError("families must share an outcome set")
    consistency = _check_consistency(fa, fb)
    pa = ConditionProfile(
        [
            _check_non_emptiness(fa),
            _check_monotonicity(fa),
            consistency,
            _check_determinacy(fa, fb),
            _check_instantiatedness(fa, fb),
            _check_union_closure(fa),
        ]
    )
    pb = ConditionProfile(
        [
            _check_non_emptiness(fb),
            _check_monotonicity(fb),
            consistency,
            _check_determinacy(fb, fa),
            _check_instantiatedness(fb, fa),
            _check_union_closure(fb),
        ]
    )
    return pa, pb


# -- seeded sampling --------------------------------------------------------------

_MODE_CONDITIONS = {
    "plain": (NON_EMPTINESS, MONOTONICITY, CONSISTENCY),
    "basic": (NON_EMPTINESS, INSTANTIATEDNESS, CONSISTENCY),
    "relational": (NON_EMPTINESS, INSTANTIATEDNESS, CONSISTENCY, UNION_CLOSURE),
}


def family_conditions(mode: str) -> tuple[str, ...]:
    """Condition names a family pair of the given kind must satisfy."""
    try:
        return _MODE_CONDITIONS[mode]
    except KeyError:
        raise ValueError(f"unknown mode {mode!r}") from None


def random_family_pair(
    rng: Random,
    outcomes: Iterable[str],
    mode: str,
    max_members: int = 3,
    max_tries: int = 20000,
) -> tuple[PowerFamily, PowerFamily]:
    """Rejection-sample a pair of families meeting the mode's conditions.

    Proposals are small random families, closed upward for the plain mode
    and under unions for the relational mode before filtering, which keeps
    the acceptance rate workable without skipping the condition check.
    """
    outcomes = tuple(outcomes)
    required = family_conditions(mode)
    pool = [
        frozenset(c)
        for k in range(1, len(outcomes) + 1)
        for c in combinations(sorted(outcomes), k)
    ]
    for _ in range(max_tries):
        fams = []
        for _side in range(2):
            k = rng.randint(1, max_members)
            f = PowerFamily(outcomes, [rng.choice(pool) for _ in range(k)])
            if mode == "plain":
                f = upward_closure(f)
            elif mode == "relational":
                f = union_closure(f)
            fams.append(f)
        fa, fb = fams
        pa, pb = check_conditions(fa, fb)
        if pa.holds(*required) and pb.holds(*required):
            return fa, fb
    raise RuntimeError(f"no {mode} family pair found in {max_tries} tries")
