"""Neighborhood models over two power relations, and their frame conditions.

A model assigns each player a set of (world, neighborhood) pairs plus a
valuation.  Game frames ask for per-world non-emptiness, monotonicity and
consistency; instantial frames swap monotonicity for instantiatedness.
Truth of ``[P](psi_1..psi_k; phi)`` at u needs a neighborhood Z of u with
Z inside the truth set of phi and Z meeting every truth set of a psi_i.
"""

from __future__ import annotations

import json
from random import Random
from typing import Iterable, Mapping

from .formulas import And, Atom, Box, Formula, Not, Top
from .games import ExtensiveGame, Player, _as_player
from .powers import (
    CONSISTENCY,
    INSTANTIATEDNESS,
    MONOTONICITY,
    NON_EMPTINESS,
    ConditionCheck,
    ConditionProfile,
    basic_powers,
    powers,
    random_family_pair,
    relational_basic_powers,
)


class ModelFormatError(ValueError):
    """Raised when serialized model data cannot be decoded."""


class NeighborhoodModel:
    """Immutable two-relation neighborhood model."""

    __slots__ = ("worlds", "_neigh", "valuation")

    def __init__(
        self,
        worlds: Iterable[str],
        ra: Iterable[tuple[str, Iterable[str]]],
        rb: Iterable[tuple[str, Iterable[str]]],
        valuation: Mapping[str, Iterable[str]] | None = None,
    ):
        object.__setattr__(self, "worlds", tuple(worlds))
        wset = set(self.worlds)
        neigh: dict[Player, dict[str, set[frozenset[str]]]] = {
            Player.A: {w: set() for w in self.worlds},
            Player.B: {w: set() for w in self.worlds},
        }
        for player, rel in ((Player.A, ra), (Player.B, rb)):
            for u, zs in rel:
                if u not in wset:
                    raise ModelFormatError(f"unknown world {u!r} in relation")
                z = frozenset(zs)
                if not z <= wset:
                    raise ModelFormatError(
                        f"neighborhood {sorted(z)} of {u!r} leaves the world set"
                    )
                neigh[player][u].add(z)
        frozen = {
            p: {u: tuple(sorted(zs, key=lambda z: tuple(sorted(z))))
                for u, zs in by_world.items()}
            for p, by_world in neigh.items()
        }
        object.__setattr__(self, "_neigh", frozen)
        val = {}
        for atom, ws in (valuation or {}).items():
            ws = frozenset(ws)
            if not ws <= wset:
                raise ModelFormatError(f"valuation of {atom!r} leaves the world set")
            val[atom] = ws
        object.__setattr__(self, "valuation", val)

    def __setattr__(self, name, value):
        raise AttributeError("NeighborhoodModel is immutable")

    def neigh(self, p: Player, u: str) -> tuple[frozenset[str], ...]:
        return self._neigh[_as_player(p)][u]

    def truth_set(self, atom: str) -> frozenset[str]:
        return self.valuation.get(atom, frozenset())

    def atoms(self) -> tuple[str, ...]:
        return tuple(sorted(self.valuation))

    def with_valuation(self, valuation: Mapping[str, Iterable[str]]):
        pairs_a = [(u, z) for u in self.worlds for z in self.neigh(Player.A, u)]
        pairs_b = [(u, z) for u in self.worlds for z in self.neigh(Player.B, u)]
        return NeighborhoodModel(self.worlds, pairs_a, pairs_b, valuation)

    def __eq__(self, other):
        if not isinstance(other, NeighborhoodModel):
            return NotImplemented
        return (
            self.worlds == other.worlds
            and self._neigh == other._neigh
            and self.valuation == other.valuation
        )

    def __repr__(self):
        return f"NeighborhoodModel({len(self.worlds)} worlds)"

    def to_json(self) -> dict:
        def rel(p):
            return [
                [u, sorted(z)]
                for u in self.worlds
                for z in self.neigh(p, u)
            ]

        return {
            "worlds": list(self.worlds),
            "RA": rel(Player.A),
            "RB": rel(Player.B),
            "val": {a: sorted(ws) for a, ws in sorted(self.valuation.items())},
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "NeighborhoodModel":
        try:
            worlds = obj["worlds"]
            ra = obj.get("RA", [])
            rb = obj.get("RB", [])
            val = obj.get("val", {})
        except TypeError as exc:
            raise ModelFormatError("model object expected") from exc
        if not isinstance(worlds, list) or not worlds:
            raise ModelFormatError("'worlds' must be a nonempty list")
        if len(set(worlds)) != len(worlds):
            raise ModelFormatError("duplicate world labels")
        for name, rel in (("RA", ra), ("RB", rb)):
            if not isinstance(rel, list) or any(
                not isinstance(e, list) or len(e) != 2 for e in rel
            ):
                raise ModelFormatError(f"'{name}' must be a list of [world, [worlds]]")
        return cls(worlds, [(u, z) for u, z in ra], [(u, z) for u, z in rb], val)


def load_model(path: str) -> NeighborhoodModel:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ModelFormatError(f"{path}: {exc}") from exc
    try:
        return NeighborhoodModel.from_json(obj)
    except ModelFormatError as exc:
        raise ModelFormatError(f"{path}: {exc}") from exc


# -- frame validation --------------------------------------------------------------

GAME_FRAME = "game"
INSTANTIAL_FRAME = "instantial"


def _all_supersets(z: frozenset, universe: tuple[str, ...]):
    rest = sorted(set(universe) - z)
    for mask in range(1 << len(rest)):
        extra = frozenset(rest[i] for i in range(len(rest)) if mask >> i & 1)
        yield z | extra


def validate_frame(m: NeighborhoodModel, kind: str) -> ConditionProfile:
    """Check the kind's three conditions at every world of m."""
    if kind not in (GAME_FRAME, INSTANTIAL_FRAME):
        raise ValueError(f"unknown frame kind {kind!r}")
    checks = [_frame_non_emptiness(m), _frame_consistency(m)]
    if kind == GAME_FRAME:
        checks.insert(1, _frame_monotonicity(m))
    else:
        checks.insert(1, _frame_instantiatedness(m))
    return ConditionProfile(checks)


def _frame_non_emptiness(m) -> ConditionCheck:
    for u in m.worlds:
        for p in (Player.A, Player.B):
            if not m.neigh(p, u):
                return ConditionCheck(
                    NON_EMPTINESS, False, {"world": u, "player": p.value}
                )
    return ConditionCheck(NON_EMPTINESS, True)


def _frame_monotonicity(m) -> ConditionCheck:
    for u in m.worlds:
        for p in (Player.A, Player.B):
            have = set(m.neigh(p, u))
            for z in m.neigh(p, u):
                for sup in _all_supersets(z, m.worlds):
                    if sup not in have:
                        return ConditionCheck(
                            MONOTONICITY,
                            False,
                            {
                                "world": u,
                                "player": p.value,
                                "neighborhood": sorted(z),
                                "superset": sorted(sup),
                            },
                        )
    return ConditionCheck(MONOTONICITY, True)


def _frame_consistency(m) -> ConditionCheck:
    for u in m.worlds:
        for za in m.neigh(Player.A, u):
            for zb in m.neigh(Player.B, u):
                if not (za & zb):
                    return ConditionCheck(
                        CONSISTENCY,
                        False,
                        {"world": u, "A": sorted(za), "B": sorted(zb)},
                    )
    return ConditionCheck(CONSISTENCY, True)


def _frame_instantiatedness(m) -> ConditionCheck:
    for u in m.worlds:
        for p in (Player.A, Player.B):
            other = p.dual
            for z in m.neigh(p, u):
                for x in sorted(z):
                    if not any(x in z2 for z2 in m.neigh(other, u)):
                        return ConditionCheck(
                            INSTANTIATEDNESS,
                            False,
                            {
                                "world": u,
                                "player": p.value,
                                "neighborhood": sorted(z),
                                "element": x,
                            },
                        )
    return ConditionCheck(INSTANTIATEDNESS, True)


# -- model checking -----------------------------------------------------------------


def model_check(m: NeighborhoodModel, f: Formula) -> frozenset[str]:
    """Truth set of f in m; total on any model, valid or not."""
    if isinstance(f, Atom):
        return m.truth_set(f.name)
    if isinstance(f, Top):
        return frozenset(m.worlds)
    if isinstance(f, Not):
        return frozenset(m.worlds) - model_check(m, f.sub)
    if isinstance(f, And):
        return model_check(m, f.left) & model_check(m, f.right)
    if isinstance(f, Box):
        scope = model_check(m, f.scope)
        sides = [model_check(m, g) for g in f.instants]
        out = set()
        for u in m.worlds:
            for z in m.neigh(f.player, u):
                if z <= scope and all(z & s for s in sides):
                    out.add(u)
                    break
        return frozenset(out)
    raise TypeError(f"not a formula: {f!r}")


def model_check_boxes_exact(m: NeighborhoodModel, f: Formula) -> frozenset[str]:
    """Box-as-preimage reading: u satisfies [P]phi iff the truth set of phi
    itself is a neighborhood of u.  Defined for side-condition-free formulas
    only; agrees with :func:`model_check` on monotone frames.
    """
    if isinstance(f, Atom):
        return m.truth_set(f.name)
    if isinstance(f, Top):
        return frozenset(m.worlds)
    if isinstance(f, Not):
        return frozenset(m.worlds) - model_check_boxes_exact(m, f.sub)
    if isinstance(f, And):
        return model_check_boxes_exact(m, f.left) & model_check_boxes_exact(
            m, f.right
        )
    if isinstance(f, Box):
        if f.instants:
            raise ValueError("exact box reading is defined for plain boxes only")
        scope = model_check_boxes_exact(m, f.scope)
        return frozenset(u for u in m.worlds if scope in m.neigh(f.player, u))
    raise TypeError(f"not a formula: {f!r}")


# -- encoding games -------------------------------------------------------------------

_POWER_KINDS = {
    "plain": powers,
    "basic": basic_powers,
    "relational": relational_basic_powers,
}


def encode_game_as_model(
    g: ExtensiveGame, kind: str = "basic"
) -> tuple[NeighborhoodModel, str]:
    """One-step model of a game: a fresh root world sees the chosen power
    family of each player; outcome worlds see their own singleton.

    For the plain kind every neighborhood family is closed upward inside the
    model's world set, keeping the game-frame conditions intact.  Returns
    the model (empty valuation) together with the root world's label.
    """
    try:
        fam_of = _POWER_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown power kind {kind!r}") from None
    root = "root"
    while root in g.outcomes:
        root = "_" + root
    worlds = (root,) + tuple(g.outcomes)
    pairs = {Player.A: [], Player.B: []}
    for p in (Player.A, Player.B):
        fam = fam_of(g, p)
        neighborhoods = [frozenset(z) for z in fam.member_sets()]
        for w in g.outcomes:
            pairs[p].append((w, frozenset([w])))
        for z in neighborhoods:
            pairs[p].append((root, z))
    model = NeighborhoodModel(worlds, pairs[Player.A], pairs[Player.B], {})
    if kind == "plain":
        up_a, up_b = [], []
        for u in worlds:
            for z in model.neigh(Player.A, u):
                up_a.extend((u, s) for s in _all_supersets(z, worlds))
            for z in model.neigh(Player.B, u):
                up_b.extend((u, s) for s in _all_supersets(z, worlds))
        model = NeighborhoodModel(worlds, up_a, up_b, {})
    return model, root


def outcome_valuation(
    outcomes: Iterable[str], prefix: str = "p"
) -> dict[str, frozenset[str]]:
    """One atom per outcome label, true exactly at that outcome's world."""
    return {f"{prefix}{o}": frozenset([o]) for o in outcomes}


# -- seeded model generation -----------------------------------------------------------


def random_model(
    seed: int | Random,
    kind: str = INSTANTIAL_FRAME,
    max_worlds: int = 5,
    atoms: tuple[str, ...] = ("p", "q", "r"),
) -> NeighborhoodModel:
    """Seeded random model that is a valid frame of the requested kind."""
    rng = seed if isinstance(seed, Random) else Random(seed)
    n = rng.randint(1, max_worlds)
    worlds = tuple(f"w{i}" for i in range(n))
    mode = "plain" if kind == GAME_FRAME else "basic"
    ra, rb = [], []
    for u in worlds:
        fa, fb = random_family_pair(rng, worlds, mode)
        ra.extend((u, z) for z in fa.member_sets())
        rb.extend((u, z) for z in fb.member_sets())
    val = {
        a: frozenset(w for w in worlds if rng.random() < 0.5) for a in atoms
    }
    return NeighborhoodModel(worlds, ra, rb, val)
