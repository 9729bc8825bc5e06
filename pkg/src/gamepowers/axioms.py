"""Axiom schema instantiation, seeded soundness sweeps, and countermodel search.

Eight schemata govern the instantial box and are evaluated on valid
instantial frames; three more use empty-side boxes only and are evaluated
on plain game frames.  A soundness sweep cycles schema instances over
seeded random valid models and reports every world where an instance
fails.  Countermodel search enumerates small valid instantial models
exhaustively, then falls back to seeded random sampling, spending a
deterministic evaluation budget instead of wall-clock time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from random import Random
from typing import Optional

from .formulas import (
    FALSUM,
    TOP,
    And,
    Box,
    Formula,
    Not,
    atoms,
    format_formula,
    implies,
    iff,
    lor,
    parse_formula,
    random_formula,
)
from .games import Player
from .models import (
    GAME_FRAME,
    INSTANTIAL_FRAME,
    NeighborhoodModel,
    model_check,
    random_model,
)

META_ATOMS = ("p", "q", "r")
META_DEPTH = 2


def _meta(rng: Random, instantial: bool = True) -> Formula:
    return random_formula(rng, META_DEPTH, META_ATOMS, instantial)


def _sides(rng: Random, instantial: bool = True) -> list[Formula]:
    drawn = [_meta(rng, instantial) for _ in range(rng.randint(0, 2))]
    return list(dict.fromkeys(drawn))


def _player(rng: Random) -> Player:
    return rng.choice((Player.A, Player.B))


def _monotonicity(rng: Random) -> Formula:
    p = _player(rng)
    sides = _sides(rng)
    scope = _meta(rng)
    widened = [lor(s, _meta(rng)) for s in sides]
    return implies(
        Box(p, frozenset(sides), scope),
        Box(p, frozenset(widened), lor(scope, _meta(rng))),
    )


def _weakening(rng: Random) -> Formula:
    p = _player(rng)
    sides = _sides(rng)
    scope = _meta(rng)
    kept = [s for s in sides if rng.random() < 0.5]
    return implies(Box(p, frozenset(sides), scope), Box(p, frozenset(kept), scope))


def _union(rng: Random) -> Formula:
    p = _player(rng)
    sides = _sides(rng)
    scope = _meta(rng)
    merged = [And(s, scope) for s in sides]
    return implies(Box(p, frozenset(sides), scope), Box(p, frozenset(merged), scope))


def _case_split(rng: Random) -> Formula:
    p = _player(rng)
    sides = _sides(rng)
    scope = _meta(rng)
    gamma = _meta(rng)
    have = Box(p, frozenset(sides), scope)
    join = Box(p, frozenset(sides) | {gamma}, scope)
    split = Box(p, frozenset(sides), And(scope, Not(gamma)))
    return implies(have, lor(join, split))


def _falsum_side(rng: Random) -> Formula:
    return Not(Box(_player(rng), frozenset([FALSUM]), _meta(rng)))


def _non_emptiness(rng: Random) -> Formula:
    return Box(_player(rng), frozenset(), TOP)


def _instantiatedness(rng: Random) -> Formula:
    p = _player(rng)
    side = frozenset([_meta(rng)])
    return iff(Box(p, side, TOP), Box(p.dual, side, TOP))


def _consistency(rng: Random) -> Formula:
    p = _player(rng)
    scope = _meta(rng)
    return implies(
        Box(p, frozenset(), scope), Not(Box(p.dual, frozenset(), Not(scope)))
    )


def _plain_non_emptiness(rng: Random) -> Formula:
    return Box(_player(rng), frozenset(), TOP)


def _plain_monotonicity(rng: Random) -> Formula:
    p = _player(rng)
    scope = _meta(rng, instantial=False)
    return implies(
        Box(p, frozenset(), scope),
        Box(p, frozenset(), lor(scope, _meta(rng, instantial=False))),
    )


def _plain_consistency(rng: Random) -> Formula:
    p = _player(rng)
    scope = _meta(rng, instantial=False)
    return implies(
        Box(p, frozenset(), scope), Not(Box(p.dual, frozenset(), Not(scope)))
    )


INSTANTIAL_SCHEMATA = (
    "monotonicity",
    "weakening",
    "union",
    "case-split",
    "falsum-side",
    "non-emptiness",
    "instantiatedness",
    "consistency",
)
PLAIN_SCHEMATA = (
    "plain-non-emptiness",
    "plain-monotonicity",
    "plain-consistency",
)
ALL_SCHEMATA = INSTANTIAL_SCHEMATA + PLAIN_SCHEMATA

_BUILDERS = {
    "monotonicity": (_monotonicity, INSTANTIAL_FRAME),
    "weakening": (_weakening, INSTANTIAL_FRAME),
    "union": (_union, INSTANTIAL_FRAME),
    "case-split": (_case_split, INSTANTIAL_FRAME),
    "falsum-side": (_falsum_side, INSTANTIAL_FRAME),
    "non-emptiness": (_non_emptiness, INSTANTIAL_FRAME),
    "instantiatedness": (_instantiatedness, INSTANTIAL_FRAME),
    "consistency": (_consistency, INSTANTIAL_FRAME),
    "plain-non-emptiness": (_plain_non_emptiness, GAME_FRAME),
    "plain-monotonicity": (_plain_monotonicity, GAME_FRAME),
    "plain-consistency": (_plain_consistency, GAME_FRAME),
}


def schema_instance(name: str, seed: int | Random) -> Formula:
    """A concrete instance of the named schema with seeded side formulas."""
    if name not in _BUILDERS:
        raise ValueError(f"unknown schema: {name!r}")
    rng = seed if isinstance(seed, Random) else Random(seed)
    return _BUILDERS[name][0](rng)


def schema_frame_kind(name: str) -> str:
    if name not in _BUILDERS:
        raise ValueError(f"unknown schema: {name!r}")
    return _BUILDERS[name][1]


@dataclass(frozen=True)
class SoundnessReport:
    seed: int
    samples: int
    counts: dict = field(default_factory=dict)
    violations: tuple = ()

    def __bool__(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "samples": self.samples,
            "counts": dict(self.counts),
            "violations": list(self.violations),
        }


def axiom_soundness_suite(seed: int, samples: int = 1000, max_worlds: int = 5) -> SoundnessReport:
    """Cycle schema instances over seeded random valid models.

    Every instance must hold at every world of its model; any other
    outcome is recorded as a violation with the failing worlds attached.
    """
    rng = Random(seed)
    counts = {name: 0 for name in ALL_SCHEMATA}
    violations = []
    for i in range(samples):
        name = ALL_SCHEMATA[i % len(ALL_SCHEMATA)]
        builder, kind = _BUILDERS[name]
        instance = builder(rng)
        m = random_model(rng, kind, max_worlds, META_ATOMS)
        counts[name] += 1
        extension = model_check(m, instance)
        if extension != frozenset(m.worlds):
            violations.append(
                {
                    "schema": name,
                    "formula": format_formula(instance),
                    "model": m.to_json(),
                    "failing": sorted(set(m.worlds) - extension),
                }
            )
    return SoundnessReport(seed, samples, counts, tuple(violations))


# -- countermodel search ------------------------------------------------------------

EXHAUSTIVE_WORLDS = 3
# family-size caps per world count keep the frame space enumerable
_FAMILY_CAPS = {1: 3, 2: 2, 3: 1}


def _pair_valid(fa: tuple, fb: tuple) -> bool:
    # Consistency plus mutual Instantiatedness; NonEmptiness by construction
    for za in fa:
        for zb in fb:
            if not (za & zb):
                return False
    for za in fa:
        for x in za:
            if not any(x in zb for zb in fb):
                return False
    for zb in fb:
        for x in zb:
            if not any(x in za for za in fa):
                return False
    return True


def _legal_world_pairs(worlds: tuple[str, ...], cap: int):
    subsets = []
    for size in range(1, len(worlds) + 1):
        for combo in combinations(worlds, size):
            subsets.append(frozenset(combo))
    families = []
    for size in range(1, cap + 1):
        families.extend(combinations(subsets, size))
    return [
        (fa, fb) for fa in families for fb in families if _pair_valid(fa, fb)
    ]


@dataclass(frozen=True)
class SearchResult:
    formula: str
    found: bool
    model: Optional[NeighborhoodModel]
    world: Optional[str]
    phase: Optional[str]
    evaluations: int
    budget: int

    def __bool__(self) -> bool:
        return self.found

    def to_json(self) -> dict:
        return {
            "formula": self.formula,
            "found": self.found,
            "model": None if self.model is None else self.model.to_json(),
            "world": self.world,
            "phase": self.phase,
            "evaluations": self.evaluations,
            "budget": self.budget,
        }


def countermodel_search(
    f: Formula | str,
    max_worlds: int = 5,
    seed: int = 0,
    budget_ms: int = 1000,
) -> SearchResult:
    """Look for a valid instantial model and world where ``f`` fails.

    Exhausts models with up to three worlds first (under the family-size
    caps), then samples seeded random models up to ``max_worlds``.  The
    budget is spent as ten model evaluations per nominal millisecond, so
    runs replay exactly.  A not-found result is only a bounded search
    coming up empty, never a validity proof.
    """
    if isinstance(f, str):
        f = parse_formula(f)
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    text = format_formula(f)
    names = tuple(sorted(atoms(f)))
    budget = max(1, budget_ms) * 10
    spent = 0

    for k in range(1, min(EXHAUSTIVE_WORLDS, max_worlds) + 1):
        worlds = tuple(f"w{i}" for i in range(k))
        pairs = _legal_world_pairs(worlds, _FAMILY_CAPS[k])
        per_atom = [[(a, combo) for combo in _subsets(worlds)] for a in names]
        truth_rows = list(product(*per_atom))
        for assignment in product(pairs, repeat=k):
            ra = [(u, z) for u, (fa, _) in zip(worlds, assignment) for z in fa]
            rb = [(u, z) for u, (_, fb) in zip(worlds, assignment) for z in fb]
            base = NeighborhoodModel(worlds, ra, rb, {})
            for row in truth_rows:
                if spent >= budget:
                    return SearchResult(text, False, None, None, "budget", spent, budget)
                m = base.with_valuation(dict(row))
                spent += 1
                extension = model_check(m, f)
                if extension != frozenset(worlds):
                    world = min(set(worlds) - extension)
                    return SearchResult(text, True, m, world, "exhaustive", spent, budget)

    rng = Random(seed)
    while spent < budget:
        m = random_model(rng, INSTANTIAL_FRAME, max_worlds, names)
        spent += 1
        extension = model_check(m, f)
        if extension != frozenset(m.worlds):
            world = min(set(m.worlds) - extension)
            return SearchResult(text, True, m, world, "random", spent, budget)
    return SearchResult(text, False, None, None, "budget", spent, budget)


def _subsets(worlds: tuple[str, ...]):
    out = [()]
    for size in range(1, len(worlds) + 1):
        out.extend(combinations(worlds, size))
    return out
