"""Finite two-player games: extensive game trees, strategies, strategic form.

Node addresses are tuples of child indices, the root being the empty tuple.
A tree is any finite, prefix-closed and sibling-downward-closed set of
addresses.  Turn and information-cell data live on internal nodes only;
outcome labels live on leaves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from itertools import chain, combinations, permutations, product
from typing import Any, Iterable, Mapping

Address = tuple[int, ...]

ROOT: Address = ()


class Player(Enum):
    A = "A"
    B = "B"

    @property
    def dual(self) -> "Player":
        return Player.B if self is Player.A else Player.A

    def __repr__(self):
        return f"Player.{self.value}"


def _as_player(value) -> Player:
    if isinstance(value, Player):
        return value
    return Player(value)


class GameFormatError(ValueError):
    """Raised when serialized game data cannot be decoded."""


class ExtensiveGame:
    """Immutable extensive game.

    Construction normalizes everything into canonical order but performs no
    validation; use :func:`validate_game` to obtain a violation report.
    """

    __slots__ = (
        "outcomes",
        "nodes",
        "turn",
        "outcome",
        "cells",
        "_children",
        "_cell_of",
        "_internal",
        "_leaves",
    )

    def __init__(
        self,
        outcomes: Iterable[str],
        nodes: Iterable[Address],
        turn: Mapping[Address, Player],
        outcome: Mapping[Address, str],
        cells: Iterable[Iterable[Address]],
    ):
        object.__setattr__(self, "outcomes", tuple(outcomes))
        object.__setattr__(self, "nodes", frozenset(tuple(n) for n in nodes))
        object.__setattr__(
            self, "turn", {tuple(k): _as_player(v) for k, v in turn.items()}
        )
        object.__setattr__(
            self, "outcome", {tuple(k): v for k, v in outcome.items()}
        )
        norm_cells = tuple(
            sorted(
                (tuple(sorted(tuple(n) for n in cell)) for cell in cells),
                key=lambda c: c[0] if c else (),
            )
        )
        object.__setattr__(self, "cells", norm_cells)
        children: dict[Address, list[Address]] = {}
        for n in self.nodes:
            if n and n[:-1] in self.nodes:
                children.setdefault(n[:-1], []).append(n)
        for v in children.values():
            v.sort()
        object.__setattr__(self, "_children", children)
        object.__setattr__(
            self, "_internal", tuple(sorted(children.keys()))
        )
        object.__setattr__(
            self,
            "_leaves",
            tuple(sorted(n for n in self.nodes if n not in children)),
        )
        cell_of = {}
        for cell in norm_cells:
            for n in cell:
                cell_of[n] = cell
        object.__setattr__(self, "_cell_of", cell_of)

    def __setattr__(self, name, value):
        raise AttributeError("ExtensiveGame is immutable")

    @property
    def internal_nodes(self) -> tuple[Address, ...]:
        return self._internal

    @property
    def leaves(self) -> tuple[Address, ...]:
        return self._leaves

    def children(self, w: Address) -> tuple[Address, ...]:
        return tuple(self._children.get(tuple(w), ()))

    def num_children(self, w: Address) -> int:
        return len(self._children.get(tuple(w), ()))

    def is_leaf(self, w: Address) -> bool:
        return tuple(w) not in self._children

    def cell_of(self, w: Address) -> tuple[Address, ...]:
        return self._cell_of[tuple(w)]

    def player_cells(self, p: Player) -> tuple[tuple[Address, ...], ...]:
        """Information cells owned by p, in canonical order."""
        p = _as_player(p)
        return tuple(c for c in self.cells if self.turn.get(c[0]) is p)

    def __eq__(self, other):
        if not isinstance(other, ExtensiveGame):
            return NotImplemented
        return (
            self.outcomes == other.outcomes
            and self.nodes == other.nodes
            and self.turn == other.turn
            and self.outcome == other.outcome
            and frozenset(map(frozenset, self.cells))
            == frozenset(map(frozenset, other.cells))
        )

    def __hash__(self):
        return hash((self.outcomes, self.nodes, frozenset(self.outcome.items())))

    def __repr__(self):
        return (
            f"ExtensiveGame({len(self.nodes)} nodes, "
            f"outcomes={list(self.outcomes)})"
        )


# -- tree-spec helpers --------------------------------------------------------
#
# Nested dicts double as the construction DSL and the serialized form:
#   {"outcome": label}                                   leaf
#   {"player": "A"|"B", "children": [...], "info": id}   internal node
# A missing "info" key means the node sits in a singleton cell.


def leaf(outcome: str) -> dict:
    return {"outcome": outcome}


def node(player, children: list, info=None) -> dict:
    spec: dict[str, Any] = {
        "player": _as_player(player).value,
        "children": list(children),
    }
    if info is not None:
        spec["info"] = info
    return spec


def game(outcomes: Iterable[str], tree: Mapping) -> ExtensiveGame:
    """Build an ExtensiveGame from a nested tree spec."""
    nodes = []
    turn = {}
    outcome = {}
    cells_by_id: dict[Any, list[Address]] = {}
    singletons = []

    def walk(spec, addr: Address):
        if not isinstance(spec, Mapping):
            raise GameFormatError(f"node at {addr}: expected object, got {spec!r}")
        nodes.append(addr)
        if "outcome" in spec:
            if "children" in spec or "player" in spec:
                raise GameFormatError(
                    f"node at {addr}: leaf cannot carry player or children"
                )
            outcome[addr] = spec["outcome"]
            return
        try:
            turn[addr] = _as_player(spec["player"])
        except (KeyError, ValueError) as exc:
            raise GameFormatError(f"node at {addr}: bad or missing player") from exc
        if "info" in spec:
            cells_by_id.setdefault(spec["info"], []).append(addr)
        else:
            singletons.append([addr])
        kids = spec.get("children")
        if not isinstance(kids, list) or not kids:
            raise GameFormatError(f"node at {addr}: internal node needs children")
        for i, child in enumerate(kids):
            walk(child, addr + (i,))

    walk(tree, ROOT)
    cells = list(cells_by_id.values()) + singletons
    return ExtensiveGame(outcomes, nodes, turn, outcome, cells)


def game_to_spec(g: ExtensiveGame) -> dict:
    """Render the tree back into the nested-dict form, canonical cell ids."""
    shared = [c for c in g.cells if len(c) > 1]
    cell_id = {}
    for i, cell in enumerate(shared):
        for n in cell:
            cell_id[n] = f"c{i}"

    def build(addr: Address) -> dict:
        if g.is_leaf(addr):
            return {"outcome": g.outcome[addr]}
        spec: dict[str, Any] = {"player": g.turn[addr].value}
        if addr in cell_id:
            spec["info"] = cell_id[addr]
        spec["children"] = [build(c) for c in g.children(addr)]
        return spec

    return build(ROOT)


def game_to_json(g: ExtensiveGame) -> dict:
    return {"outcomes": list(g.outcomes), "tree": game_to_spec(g)}


def game_from_json(obj: Mapping) -> ExtensiveGame:
    try:
        outcomes = obj["outcomes"]
        tree = obj["tree"]
    except (KeyError, TypeError) as exc:
        raise GameFormatError("game object needs 'outcomes' and 'tree'") from exc
    if not isinstance(outcomes, list):
        raise GameFormatError("'outcomes' must be a list of labels")
    g = game(outcomes, tree)
    report = validate_game(g)
    if report:
        raise GameFormatError("; ".join(str(v) for v in report))
    return g


# -- validation ----------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    rule: str
    nodes: tuple[Address, ...]
    detail: str = ""

    def __str__(self):
        where = ", ".join("·".join(map(str, n)) or "ε" for n in self.nodes)
        msg = f"{self.rule} at {where}" if self.nodes else self.rule
        return f"{msg} ({self.detail})" if self.detail else msg


def validate_game(g: ExtensiveGame) -> list[Violation]:
    """Check every structural invariant; empty report iff the game is valid."""
    out = []
    if ROOT not in g.nodes:
        out.append(Violation("missing-root", ()))
    for n in sorted(g.nodes):
        if n and n[:-1] not in g.nodes:
            out.append(Violation("prefix-closure", (n,)))
        if n and n[-1] > 0 and n[:-1] + (n[-1] - 1,) not in g.nodes:
            out.append(Violation("sibling-downward-closure", (n,)))
    if len(set(g.outcomes)) != len(g.outcomes):
        out.append(Violation("duplicate-outcome-labels", ()))
    internal = set(g.internal_nodes)
    leaves = set(g.leaves)
    for n in sorted(internal - set(g.turn)):
        out.append(Violation("turn-missing", (n,)))
    for n in sorted(set(g.turn) - internal):
        out.append(Violation("turn-on-leaf", (n,)))
    for n in sorted(leaves - set(g.outcome)):
        out.append(Violation("outcome-missing", (n,)))
    for n in sorted(set(g.outcome) - leaves):
        out.append(Violation("outcome-on-internal", (n,)))
    for n, o in sorted(g.outcome.items()):
        if o not in g.outcomes:
            out.append(Violation("unknown-outcome-label", (n,), str(o)))
    covered: list[Address] = []
    for cell in g.cells:
        covered.extend(cell)
        owners = {g.turn.get(n) for n in cell}
        if len(owners) > 1:
            out.append(Violation("cell-mixed-turn", cell))
        sizes = {g.num_children(n) for n in cell}
        if len(sizes) > 1:
            out.append(Violation("cell-mixed-child-count", cell))
    if sorted(covered) != sorted(internal) or len(covered) != len(set(covered)):
        out.append(Violation("cells-not-a-partition", tuple(sorted(internal))))
    return out


def is_perfect_information(g: ExtensiveGame) -> bool:
    return all(len(c) == 1 for c in g.cells)


# -- strategies ----------------------------------------------------------------


@dataclass(frozen=True)
class FunctionalStrategy:
    owner: Player
    choice: Mapping[Address, int]

    def moves_at(self, w: Address) -> tuple[int, ...]:
        return (self.choice[w],)


@dataclass(frozen=True)
class RelationalStrategy:
    owner: Player
    choice: Mapping[Address, tuple[int, ...]]

    def moves_at(self, w: Address) -> tuple[int, ...]:
        return self.choice[w]


Strategy = FunctionalStrategy | RelationalStrategy


def _nonempty_subsets(n: int) -> list[tuple[int, ...]]:
    # lexicographic: (0,), (0,1), ..., (1,), ...
    return sorted(
        chain.from_iterable(combinations(range(n), k) for k in range(1, n + 1))
    )


def enumerate_strategies(
    g: ExtensiveGame, p: Player, relational: bool = False
) -> list[Strategy]:
    """All strategies of p, in a fixed order.

    Cells are taken in canonical address order; per-cell options run through
    child indices (functional) or nonempty index sets (relational) in
    lexicographic order.  A player with no nodes has exactly one strategy.
    """
    p = _as_player(p)
    cells = g.player_cells(p)
    options = []
    for cell in cells:
        c = g.num_children(cell[0])
        options.append(_nonempty_subsets(c) if relational else list(range(c)))
    out: list[Strategy] = []
    for assignment in product(*options):
        choice: dict[Address, Any] = {}
        for cell, picked in zip(cells, assignment):
            for n in cell:
                choice[n] = picked
        if relational:
            out.append(RelationalStrategy(p, choice))
        else:
            out.append(FunctionalStrategy(p, choice))
    return out


def check_strategy(g: ExtensiveGame, s: Strategy) -> list[str]:
    """Diagnostics for a hand-built strategy; empty iff well-formed."""
    problems = []
    owned = {n for n in g.internal_nodes if g.turn[n] is s.owner}
    if set(s.choice) != owned:
        problems.append("domain is not exactly the owner's internal nodes")
    for w in sorted(set(s.choice) & owned):
        moves = s.moves_at(w)
        if not moves:
            problems.append(f"empty move set at {w}")
        if any(not 0 <= i < g.num_children(w) for i in moves):
            problems.append(f"move out of range at {w}")
    for cell in g.player_cells(s.owner):
        if len({s.choice.get(n) for n in cell}) > 1:
            problems.append(f"choice not constant on cell {cell}")
    return problems


def guided_matches(g: ExtensiveGame, s: Strategy) -> tuple[Address, ...]:
    """Leaves of the maximal branches compatible with s.

    At nodes owned by s the branch must continue with one of the strategy's
    moves; the opponent's nodes are unconstrained.
    """
    found = []
    stack = [ROOT]
    while stack:
        w = stack.pop()
        kids = g.children(w)
        if not kids:
            found.append(w)
            continue
        if g.turn[w] is s.owner:
            stack.extend(kids[i] for i in s.moves_at(w))
        else:
            stack.extend(kids)
    return tuple(sorted(found))


def outcome_set(g: ExtensiveGame, s: Strategy) -> frozenset[str]:
    return frozenset(g.outcome[m] for m in guided_matches(g, s))


def joint_match(
    g: ExtensiveGame, sa: FunctionalStrategy, sb: FunctionalStrategy
) -> Address:
    """The unique maximal branch guided by a functional strategy profile."""
    w = ROOT
    while not g.is_leaf(w):
        s = sa if g.turn[w] is sa.owner else sb
        w = g.children(w)[s.choice[w]]
    return w


# -- strategic form -------------------------------------------------------------


class StrategicGame:
    """Finite two-player strategic game; rows belong to A, columns to B."""

    __slots__ = ("outcomes", "rows", "cols", "matrix")

    def __init__(self, outcomes, rows, cols, matrix):
        object.__setattr__(self, "outcomes", tuple(outcomes))
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "cols", tuple(cols))
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in matrix))

    def __setattr__(self, name, value):
        raise AttributeError("StrategicGame is immutable")

    def row_set(self, i: int) -> frozenset[str]:
        return frozenset(self.matrix[i])

    def col_set(self, j: int) -> frozenset[str]:
        return frozenset(row[j] for row in self.matrix)

    def __eq__(self, other):
        if not isinstance(other, StrategicGame):
            return NotImplemented
        return (
            self.outcomes == other.outcomes
            and self.rows == other.rows
            and self.cols == other.cols
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.outcomes, self.rows, self.cols, self.matrix))

    def __repr__(self):
        return f"StrategicGame({len(self.rows)}x{len(self.cols)})"


def validate_strategic(sg: StrategicGame) -> list[Violation]:
    out = []
    if not sg.rows or not sg.cols:
        out.append(Violation("empty-strategy-set", ()))
    if len(set(sg.rows)) != len(sg.rows) or len(set(sg.cols)) != len(sg.cols):
        out.append(Violation("duplicate-strategy-labels", ()))
    if len(set(sg.outcomes)) != len(sg.outcomes):
        out.append(Violation("duplicate-outcome-labels", ()))
    if len(sg.matrix) != len(sg.rows) or any(
        len(r) != len(sg.cols) for r in sg.matrix
    ):
        out.append(Violation("matrix-shape", ()))
    else:
        for i, row in enumerate(sg.matrix):
            for j, o in enumerate(row):
                if o not in sg.outcomes:
                    out.append(Violation("unknown-outcome-label", ((i, j),), str(o)))
    return out


def strategic_to_json(sg: StrategicGame) -> dict:
    return {
        "outcomes": list(sg.outcomes),
        "rows": list(sg.rows),
        "cols": list(sg.cols),
        "matrix": [list(r) for r in sg.matrix],
    }


def strategic_from_json(obj: Mapping) -> StrategicGame:
    try:
        sg = StrategicGame(obj["outcomes"], obj["rows"], obj["cols"], obj["matrix"])
    except (KeyError, TypeError) as exc:
        raise GameFormatError(
            "strategic game needs 'outcomes', 'rows', 'cols', 'matrix'"
        ) from exc
    report = validate_strategic(sg)
    if report:
        raise GameFormatError("; ".join(str(v) for v in report))
    return sg


def to_strategic_form(g: ExtensiveGame) -> StrategicGame:
    """Tabulate all functional strategy profiles of g.

    Rows and columns follow the canonical enumeration order, labelled
    a0, a1, ... and b0, b1, ...
    """
    sas = enumerate_strategies(g, Player.A)
    sbs = enumerate_strategies(g, Player.B)
    matrix = [
        [g.outcome[joint_match(g, sa, sb)] for sb in sbs] for sa in sas
    ]
    rows = [f"a{i}" for i in range(len(sas))]
    cols = [f"b{j}" for j in range(len(sbs))]
    return StrategicGame(g.outcomes, rows, cols, matrix)


def strategic_to_extensive(sg: StrategicGame) -> ExtensiveGame:
    """Canonical one-shot realization: A moves first, B moves unaware.

    The root is a singleton cell for A; all of B's nodes share one cell, so
    B's functional strategies correspond exactly to columns.
    """
    kids = [
        node(Player.B, [leaf(sg.matrix[i][j]) for j in range(len(sg.cols))],
             info="bcell")
        for i in range(len(sg.rows))
    ]
    return game(sg.outcomes, node(Player.A, kids))


def strategic_isomorphic(sg1: StrategicGame, sg2: StrategicGame) -> bool:
    """True iff some row and column bijections carry one matrix to the other."""
    if (
        len(sg1.rows) != len(sg2.rows)
        or len(sg1.cols) != len(sg2.cols)
        or set(sg1.outcomes) != set(sg2.outcomes)
    ):
        return False
    # permute the smaller dimension, compare the other as a multiset
    if len(sg1.cols) <= len(sg1.rows):
        target = sorted(sg2.matrix)
        for cperm in permutations(range(len(sg1.cols))):
            shuffled = sorted(tuple(row[c] for c in cperm) for row in sg1.matrix)
            if shuffled == target:
                return True
    else:
        ncols = len(sg1.cols)
        target = sorted(tuple(row[j] for row in sg2.matrix) for j in range(ncols))
        for rperm in permutations(range(len(sg1.rows))):
            shuffled = sorted(
                tuple(sg1.matrix[i][j] for i in rperm) for j in range(ncols)
            )
            if shuffled == target:
                return True
    return False


# -- file IO --------------------------------------------------------------------


def load_game(path: str) -> ExtensiveGame | StrategicGame:
    """Read a game file, sniffing extensive vs strategic layout."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GameFormatError(f"{path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise GameFormatError(f"{path}: top-level JSON object expected")
    try:
        if "tree" in obj:
            return game_from_json(obj)
        if "matrix" in obj:
            return strategic_from_json(obj)
    except GameFormatError as exc:
        raise GameFormatError(f"{path}: {exc}") from exc
    raise GameFormatError(f"{path}: neither 'tree' nor 'matrix' present")
