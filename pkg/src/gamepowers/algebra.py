"""Game operations and a seeded checker for their algebraic laws.

Binary + and x add a fresh root owned by A respectively B over embedded
copies of the operands; unary - switches the mover everywhere.  Dynamic
games assign a game over the state set to each state, which gives sequential
composition a home: compose by grafting a fresh copy of the continuation at
every leaf.  check_equation and check_congruence probe laws on deterministic
pools first and seeded random games after, and only ever report a
counterexample that re-verifies.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from random import Random
from typing import Mapping, Union

from .equivalence import (
    power_equivalent,
    semi_strongly_equivalent,
    strongly_equivalent,
)
from .games import (
    ROOT,
    Address,
    ExtensiveGame,
    GameFormatError,
    Player,
    game,
    game_from_json,
    game_to_json,
    leaf,
    node,
)
from .powers import PowerFamily, relational_basic_powers


def _prefixed(g: ExtensiveGame, prefix: Address):
    nodes = {prefix + n for n in g.nodes}
    turn = {prefix + n: p for n, p in g.turn.items()}
    outcome = {prefix + n: o for n, o in g.outcome.items()}
    cells = [tuple(prefix + n for n in cell) for cell in g.cells]
    return nodes, turn, outcome, cells


def _rooted_choice(owner: Player, g1: ExtensiveGame, g2: ExtensiveGame):
    if set(g1.outcomes) != set(g2.outcomes):
        raise ValueError("games must share an outcome set")
    n1, t1, o1, c1 = _prefixed(g1, (0,))
    n2, t2, o2, c2 = _prefixed(g2, (1,))
    nodes = {ROOT} | n1 | n2
    turn = {ROOT: owner, **t1, **t2}
    cells = [(ROOT,)] + c1 + c2
    return ExtensiveGame(g1.outcomes, nodes, turn, {**o1, **o2}, cells)


def op_plus(g1: ExtensiveGame, g2: ExtensiveGame) -> ExtensiveGame:
    """A chooses at a fresh root between embedded copies of g1 and g2."""
    return _rooted_choice(Player.A, g1, g2)


def op_times(g1: ExtensiveGame, g2: ExtensiveGame) -> ExtensiveGame:
    """B chooses at a fresh root between embedded copies of g1 and g2."""
    return _rooted_choice(Player.B, g1, g2)


def op_dual(g: ExtensiveGame) -> ExtensiveGame:
    """The same tree with the mover switched at every node."""
    flipped = {n: p.dual for n, p in g.turn.items()}
    return ExtensiveGame(g.outcomes, g.nodes, flipped, g.outcome, g.cells)


# -- dynamic games -----------------------------------------------------------------


class DynamicGame:
    """A total assignment of games over the state set to each state."""

    __slots__ = ("states", "games")

    def __init__(self, states, games: Mapping[str, ExtensiveGame]):
        states = tuple(states)
        if not states or len(set(states)) != len(states):
            raise ValueError("states must be nonempty and distinct")
        unknown = set(games) - set(states)
        if unknown:
            raise ValueError(f"games assigned to unknown states {sorted(unknown)}")
        fixed = {}
        for u in states:
            if u not in games:
                raise ValueError(f"no game assigned to state {u!r}")
            g = games[u]
            if not set(g.outcomes) <= set(states):
                raise ValueError(
                    f"game at state {u!r} uses outcomes outside the state set"
                )
            # redeclare over the full state tuple so statewise ops type-check
            fixed[u] = ExtensiveGame(states, g.nodes, g.turn, g.outcome, g.cells)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "games", fixed)

    def __setattr__(self, name, value):
        raise AttributeError("DynamicGame is immutable")

    def __eq__(self, other):
        if not isinstance(other, DynamicGame):
            return NotImplemented
        return set(self.states) == set(other.states) and all(
            self.games[u] == other.games[u] for u in self.states
        )

    def __hash__(self):
        return hash(frozenset(self.games.items()))

    def __repr__(self):
        return f"DynamicGame(states={list(self.states)})"

    def to_json(self) -> dict:
        return {
            "states": sorted(self.states),
            "games": {u: game_to_json(self.games[u]) for u in sorted(self.states)},
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "DynamicGame":
        if not isinstance(obj, Mapping) or "states" not in obj or "games" not in obj:
            raise GameFormatError("dynamic game needs states and games")
        games = {u: game_from_json(spec) for u, spec in obj["games"].items()}
        return cls(obj["states"], games)


def identity_dynamic(states) -> DynamicGame:
    """Every state maps to the single-leaf game returning that state."""
    states = tuple(states)
    return DynamicGame(states, {u: game(states, leaf(u)) for u in states})


def _same_states(d1: DynamicGame, d2: DynamicGame):
    if set(d1.states) != set(d2.states):
        raise ValueError("dynamic games must share a state set")


def dynamic_plus(d1: DynamicGame, d2: DynamicGame) -> DynamicGame:
    _same_states(d1, d2)
    return DynamicGame(
        d1.states, {u: op_plus(d1.games[u], d2.games[u]) for u in d1.states}
    )


def dynamic_times(d1: DynamicGame, d2: DynamicGame) -> DynamicGame:
    _same_states(d1, d2)
    return DynamicGame(
        d1.states, {u: op_times(d1.games[u], d2.games[u]) for u in d1.states}
    )


def dynamic_dual(d: DynamicGame) -> DynamicGame:
    return DynamicGame(d.states, {u: op_dual(d.games[u]) for u in d.states})


def seq_compose(d1: DynamicGame, d2: DynamicGame) -> DynamicGame:
    """Graft a fresh copy of d2's continuation at every leaf of every d1 game.

    Grafted copies keep their information cells to themselves, so cells never
    span two copies of the continuation.
    """
    _same_states(d1, d2)
    return DynamicGame(
        d1.states, {u: _graft(d1.games[u], d2) for u in d1.states}
    )


def _graft(g1: ExtensiveGame, d2: DynamicGame) -> ExtensiveGame:
    nodes: set[Address] = set()
    turn: dict[Address, Player] = {}
    outcome: dict[Address, str] = {}
    cells = list(g1.cells)
    for n in g1.internal_nodes:
        nodes.add(n)
        turn[n] = g1.turn[n]
    for l in g1.leaves:
        g2 = d2.games[g1.outcome[l]]
        n2, t2, o2, c2 = _prefixed(g2, l)
        nodes |= n2
        turn.update(t2)
        outcome.update(o2)
        cells.extend(c2)
    return ExtensiveGame(d2.states, nodes, turn, outcome, cells)


def relational_power_map(d: DynamicGame, p: Player) -> dict[str, PowerFamily]:
    """Statewise relational basic powers of a dynamic game."""
    return {u: relational_basic_powers(d.games[u], p) for u in d.states}


def composed_power_relation(r1: Mapping, r2: Mapping, u) -> PowerFamily:
    """Powers at u of a composition, computed from the factors' power maps.

    Z is included exactly when Z unions up some family F for which a set Y
    with (u, Y) in r1 exists such that every y in Y contributes one of its
    r2 powers to F and every member of F is contributed by some y in Y.
    """
    if set(r1) != set(r2):
        raise ValueError("power maps must share a state set")
    if u not in r1:
        raise ValueError(f"unknown state {u!r}")
    states = tuple(sorted(r1))
    first = _family_members(r1[u])
    second = {y: _family_members(r2[y]) for y in states}
    found = set()
    for y_set in first:
        pool = sorted(
            {z for y in y_set for z in second[y]}, key=lambda z: tuple(sorted(z))
        )
        for size in range(1, len(pool) + 1):
            for combo in itertools.combinations(pool, size):
                if all(any(z in combo for z in second[y]) for y in y_set):
                    found.add(frozenset().union(*combo))
    return PowerFamily(states, [tuple(m) for m in found])


def _family_members(fam) -> tuple[frozenset, ...]:
    if isinstance(fam, PowerFamily):
        return fam.member_sets()
    return tuple(frozenset(m) for m in fam)


# -- terms -------------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Plus:
    left: "GameTerm"
    right: "GameTerm"


@dataclass(frozen=True)
class Times:
    left: "GameTerm"
    right: "GameTerm"


@dataclass(frozen=True)
class Comp:
    left: "GameTerm"
    right: "GameTerm"


@dataclass(frozen=True)
class Dual:
    sub: "GameTerm"


GameTerm = Union[Var, Plus, Times, Comp, Dual]


class TermParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_TERM_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*()]))")


def _tokenize_term(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TERM_TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise TermParseError(f"unexpected {text[pos:].lstrip()[0]!r}", pos)
            break
        if m.group("ident") == "o":
            tokens.append(("o", m.start("ident")))
        elif m.group("ident"):
            tokens.append(("var", m.start("ident"), m.group("ident")))
        else:
            tokens.append((m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", len(text)))
    return tokens


class _TermParser:
    # precedence, loosest first: +  then  *  then  o  then unary -
    def __init__(self, text: str):
        self.tokens = _tokenize_term(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def pos(self):
        return self.tokens[self.i][1]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> GameTerm:
        term = self.sum()
        if self.peek() != "end":
            raise TermParseError(f"unexpected {self.peek()!r}", self.pos())
        return term

    def sum(self) -> GameTerm:
        term = self.product()
        while self.peek() == "+":
            self.take()
            term = Plus(term, self.product())
        return term

    def product(self) -> GameTerm:
        term = self.composition()
        while self.peek() == "*":
            self.take()
            term = Times(term, self.composition())
        return term

    def composition(self) -> GameTerm:
        term = self.unary()
        while self.peek() == "o":
            self.take()
            term = Comp(term, self.unary())
        return term

    def unary(self) -> GameTerm:
        if self.peek() == "-":
            self.take()
            return Dual(self.unary())
        return self.atom()

    def atom(self) -> GameTerm:
        kind = self.peek()
        if kind == "var":
            return Var(self.take()[2])
        if kind == "(":
            self.take()
            term = self.sum()
            if self.peek() != ")":
                raise TermParseError("expected ')'", self.pos())
            self.take()
            return term
        raise TermParseError(f"expected a term, found {kind!r}", self.pos())


def parse_term(text: str) -> GameTerm:
    """Parse a game term over variables, +, *, unary - and infix o."""
    return _TermParser(text).parse()


def format_term(term: GameTerm) -> str:
    def fmt(t, level):
        if isinstance(t, Var):
            return t.name
        if isinstance(t, Dual):
            return "-" + fmt(t.sub, 4)
        sym, mine = {"Plus": ("+", 1), "Times": ("*", 2), "Comp": ("o", 3)}[
            type(t).__name__
        ]
        text = f"{fmt(t.left, mine)} {sym} {fmt(t.right, mine + 1)}"
        return f"({text})" if mine < level else text

    return fmt(term, 1)


def term_variables(term: GameTerm) -> frozenset[str]:
    if isinstance(term, Var):
        return frozenset({term.name})
    if isinstance(term, Dual):
        return term_variables(term.sub)
    return term_variables(term.left) | term_variables(term.right)


def term_uses_composition(term: GameTerm) -> bool:
    if isinstance(term, Comp):
        return True
    if isinstance(term, Var):
        return False
    if isinstance(term, Dual):
        return term_uses_composition(term.sub)
    return term_uses_composition(term.left) or term_uses_composition(term.right)


def evaluate(term: GameTerm, env: Mapping):
    """Evaluate a term over an environment of games or of dynamic games."""
    if isinstance(term, Var):
        try:
            return env[term.name]
        except KeyError:
            raise ValueError(f"unbound variable {term.name!r}") from None
    if isinstance(term, Dual):
        sub = evaluate(term.sub, env)
        return dynamic_dual(sub) if isinstance(sub, DynamicGame) else op_dual(sub)
    left = evaluate(term.left, env)
    right = evaluate(term.right, env)
    dyn = isinstance(left, DynamicGame)
    if isinstance(term, Plus):
        return dynamic_plus(left, right) if dyn else op_plus(left, right)
    if isinstance(term, Times):
        return dynamic_times(left, right) if dyn else op_times(left, right)
    if not dyn:
        raise ValueError("sequential composition needs dynamic games")
    return seq_compose(left, right)


# -- seeded generation -------------------------------------------------------------


def _rng(seed) -> Random:
    return seed if isinstance(seed, Random) else Random(seed)


def _random_tree(rng: Random, depth_left: int, max_branch: int, outcomes):
    if depth_left <= 1 or rng.random() < 0.35:
        return leaf(rng.choice(outcomes))
    width = rng.randint(min(2, max_branch), max_branch)
    kids = [
        _random_tree(rng, depth_left - 1, max_branch, outcomes)
        for _ in range(width)
    ]
    return node(rng.choice((Player.A, Player.B)), kids)


def _merge_cells(rng: Random, g: ExtensiveGame) -> ExtensiveGame:
    # merging is legal only for same-mover, same-arity nodes whose mover
    # reached them through the same own cells and choices; a player who
    # forgot their own moves gets coupled choice sets, and unions of
    # realizable outcome sets stop being realizable
    cells: list[list[Address]] = []
    cell_key: dict[int, tuple] = {}
    cell_of: dict[Address, int] = {}

    def own_history(n: Address) -> tuple:
        mover = g.turn[n]
        return tuple(
            (cell_of[n[:d]], n[d])
            for d in range(len(n))
            if g.turn[n[:d]] is mover
        )

    for n in sorted(g.internal_nodes, key=lambda a: (len(a), a)):
        key = (g.turn[n].value, g.num_children(n), own_history(n))
        open_cells = [i for i, k in cell_key.items() if k == key]
        if open_cells and rng.random() < 0.8:
            i = rng.choice(open_cells)
        else:
            i = len(cells)
            cells.append([])
            cell_key[i] = key
        cells[i].append(n)
        cell_of[n] = i
    return ExtensiveGame(g.outcomes, g.nodes, g.turn, g.outcome, cells)


def _enumeration_cost(g: ExtensiveGame) -> int:
    total = 0
    for p in (Player.A, Player.B):
        product = 1
        for cell in g.player_cells(p):
            product *= 2 ** g.num_children(cell[0]) - 1
        total += product
    return total


def random_game(
    seed,
    max_depth: int = 3,
    max_branch: int = 2,
    outcomes=("0", "1"),
    perfect_info: bool = False,
    max_cost: int = 4096,
) -> ExtensiveGame:
    """Seeded random game, rejecting shapes too large to enumerate."""
    if max_depth < 1 or max_branch < 1:
        raise ValueError("caps must be at least 1")
    rng = _rng(seed)
    outcomes = tuple(outcomes)
    while True:
        g = game(outcomes, _random_tree(rng, max_depth, max_branch, outcomes))
        if not perfect_info:
            g = _merge_cells(rng, g)
        if _enumeration_cost(g) <= max_cost:
            return g


def random_dynamic_game(
    seed,
    states,
    max_depth: int = 2,
    max_branch: int = 2,
    perfect_info: bool = False,
) -> DynamicGame:
    rng = _rng(seed)
    states = tuple(states)
    return DynamicGame(
        states,
        {
            u: random_game(rng, max_depth, max_branch, states, perfect_info)
            for u in states
        },
    )


# -- law checking ------------------------------------------------------------------

_EQUIV_FNS = {
    "power": power_equivalent,
    "strong": strongly_equivalent,
    "semi": semi_strongly_equivalent,
}


def _values_equivalent(kind: str, v1, v2):
    fn = _EQUIV_FNS[kind]
    if isinstance(v1, DynamicGame):
        for u in v1.states:
            verdict = fn(v1.games[u], v2.games[u])
            if not verdict:
                return False, {"state": u, **(verdict.witness or {})}
        return True, None
    verdict = fn(v1, v2)
    return bool(verdict), verdict.witness


def _value_json(value) -> dict:
    return value.to_json() if isinstance(value, DynamicGame) else game_to_json(value)


@dataclass(frozen=True)
class EquationReport:
    lhs: str
    rhs: str
    equiv: str
    seed: int
    samples: int
    verdict: str  # "holds-on-sample" | "counterexample"
    counterexample: dict | None = None

    def __bool__(self):
        return self.verdict == "holds-on-sample"

    def to_json(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "equiv": self.equiv,
            "seed": self.seed,
            "samples": self.samples,
            "verdict": self.verdict,
            "counterexample": self.counterexample,
        }


def _plain_pool(outcomes) -> list[ExtensiveGame]:
    outcomes = tuple(outcomes)
    pool = [game(outcomes, leaf(o)) for o in outcomes]
    first, second = outcomes[0], outcomes[min(1, len(outcomes) - 1)]
    for owner in (Player.A, Player.B):
        pool.append(game(outcomes, node(owner, [leaf(first), leaf(second)])))
    return pool


def _dynamic_pool(states) -> list[DynamicGame]:
    states = tuple(states)
    first, second = states[0], states[min(1, len(states) - 1)]
    pool = [identity_dynamic(states)]
    pool.append(
        DynamicGame(states, {u: game(states, leaf(first)) for u in states})
    )
    for owner in (Player.A, Player.B):
        choice = node(owner, [leaf(first), leaf(second)])
        pool.append(DynamicGame(states, {u: game(states, choice) for u in states}))
    return pool


def check_equation(
    lhs,
    rhs,
    equiv: str = "strong",
    seed: int = 0,
    samples: int = 200,
    outcomes=("0", "1", "2"),
    max_depth: int = 3,
    max_branch: int = 2,
) -> EquationReport:
    """Probe lhs = rhs under the chosen equivalence on seeded bindings.

    A deterministic pool of small games (or dynamic games, when either side
    composes) is exhausted first, then `samples` further random bindings are
    drawn.  The reported sample count includes both phases.  A hold verdict
    is evidence, not proof.
    """
    lhs_t = parse_term(lhs) if isinstance(lhs, str) else lhs
    rhs_t = parse_term(rhs) if isinstance(rhs, str) else rhs
    if equiv not in _EQUIV_FNS:
        raise ValueError(f"unknown equivalence {equiv!r}")
    names = sorted(term_variables(lhs_t) | term_variables(rhs_t))
    dynamic = term_uses_composition(lhs_t) or term_uses_composition(rhs_t)
    outcomes = tuple(outcomes)
    pool = _dynamic_pool(outcomes) if dynamic else _plain_pool(outcomes)
    rng = Random(seed)
    tried = 0

    def outcome_of(binding, phase):
        nonlocal tried
        tried += 1
        ok, witness = _values_equivalent(
            equiv, evaluate(lhs_t, binding), evaluate(rhs_t, binding)
        )
        if ok:
            return None
        return {
            "phase": phase,
            "witness": witness,
            "binding": {name: _value_json(v) for name, v in binding.items()},
        }

    counter = None
    assignments = itertools.product(pool, repeat=len(names))
    for values in itertools.islice(assignments, 2048):
        counter = outcome_of(dict(zip(names, values)), "pool")
        if counter:
            break
    if counter is None:
        # dynamic bindings stay shallow so composed trees remain enumerable
        dyn_depth = min(max_depth, 2)
        for _ in range(samples):
            if dynamic:
                binding = {
                    name: random_dynamic_game(rng, outcomes, dyn_depth, max_branch)
                    for name in names
                }
            else:
                binding = {
                    name: random_game(rng, max_depth, max_branch, outcomes)
                    for name in names
                }
            counter = outcome_of(binding, "random")
            if counter:
                break
    return EquationReport(
        lhs=format_term(lhs_t),
        rhs=format_term(rhs_t),
        equiv=equiv,
        seed=seed,
        samples=tried,
        verdict="counterexample" if counter else "holds-on-sample",
        counterexample=counter,
    )


@dataclass(frozen=True)
class CongruenceReport:
    op: str
    equiv: str
    samples: int
    verdict: str  # "congruent-on-sample" | "counterexample"
    counterexample: dict | None = None

    def __bool__(self):
        return self.verdict == "congruent-on-sample"

    def to_json(self) -> dict:
        return {
            "op": self.op,
            "equiv": self.equiv,
            "samples": self.samples,
            "verdict": self.verdict,
            "counterexample": self.counterexample,
        }


def _single_then_choice(states) -> DynamicGame:
    # at the first state: one forced move, then return there
    first = states[0]
    games = {u: game(states, leaf(u)) for u in states}
    games[first] = game(states, node(Player.A, [leaf(first)]))
    return DynamicGame(states, games)


def _double_then_choice(states) -> DynamicGame:
    first = states[0]
    games = {u: game(states, leaf(u)) for u in states}
    games[first] = game(states, node(Player.A, [leaf(first), leaf(first)]))
    return DynamicGame(states, games)


def _branching_continuation(states) -> DynamicGame:
    first, second = states[0], states[min(1, len(states) - 1)]
    games = {u: game(states, leaf(u)) for u in states}
    games[first] = game(states, node(Player.B, [leaf(first), leaf(second)]))
    return DynamicGame(states, games)


def check_congruence(
    op: str,
    equiv: str = "strong",
    seed: int = 0,
    samples: int = 40,
    outcomes=("x", "y"),
    max_depth: int = 3,
    max_branch: int = 2,
) -> CongruenceReport:
    """Probe whether the equivalence survives the operation in context.

    Candidate pairs are re-verified to be equivalent before any context is
    applied, so a counterexample always exhibits a genuine pair that the
    operation tears apart.  For composition the candidate list includes the
    pair of factors whose one-move difference a branching continuation
    amplifies.
    """
    if op not in ("+", "*", "-", "o"):
        raise ValueError(f"unknown operation {op!r}")
    if equiv not in _EQUIV_FNS:
        raise ValueError(f"unknown equivalence {equiv!r}")
    outcomes = tuple(outcomes)
    rng = Random(seed)
    dynamic = op == "o"
    # shallow dynamic draws keep composed trees enumerable
    dyn_depth = min(max_depth, 2)
    tried = 0

    def candidate_pairs():
        if dynamic:
            yield _single_then_choice(outcomes), _double_then_choice(outcomes)
            d = random_dynamic_game(rng, outcomes, dyn_depth, max_branch)
            yield d, d
            a = random_dynamic_game(rng, outcomes, dyn_depth, max_branch)
            b = random_dynamic_game(rng, outcomes, dyn_depth, max_branch)
            yield dynamic_plus(a, b), dynamic_plus(b, a)
            yield dynamic_times(a, b), dynamic_times(b, a)
            yield dynamic_dual(dynamic_dual(a)), a
        else:
            g = random_game(rng, max_depth, max_branch, outcomes)
            yield g, g
            a = random_game(rng, max_depth, max_branch, outcomes)
            b = random_game(rng, max_depth, max_branch, outcomes)
            yield op_plus(a, b), op_plus(b, a)
            yield op_times(a, b), op_times(b, a)
            yield op_dual(op_dual(a)), a
            first, second = outcomes[0], outcomes[min(1, len(outcomes) - 1)]
            single = game(
                outcomes, node(Player.A, [node(Player.B, [leaf(first), leaf(second)])])
            )
            double = game(
                outcomes,
                node(
                    Player.A,
                    [
                        node(Player.B, [leaf(first), leaf(second)]),
                        node(Player.B, [leaf(first), leaf(second)]),
                    ],
                ),
            )
            yield single, double

    def contexts(pair):
        p, q = pair
        if op == "-":
            dual = dynamic_dual if dynamic else op_dual
            yield dual(p), dual(q), "dual"
            return
        if dynamic:
            partner = random_dynamic_game(rng, outcomes, dyn_depth, max_branch)
            named = _branching_continuation(outcomes)
            for h, tag in ((named, "branching"), (partner, "random")):
                yield seq_compose(p, h), seq_compose(q, h), f"left-of-{tag}"
                yield seq_compose(h, p), seq_compose(h, q), f"right-of-{tag}"
            return
        combine = op_plus if op == "+" else op_times
        h = random_game(rng, max_depth, max_branch, outcomes)
        yield combine(p, h), combine(q, h), "left"
        yield combine(h, p), combine(h, q), "right"

    for _ in range(samples):
        for pair in candidate_pairs():
            ok, _ = _values_equivalent(equiv, *pair)
            if not ok:
                continue
            for c1, c2, side in contexts(pair):
                tried += 1
                ok, witness = _values_equivalent(equiv, c1, c2)
                if not ok:
                    return CongruenceReport(
                        op=op,
                        equiv=equiv,
                        samples=tried,
                        verdict="counterexample",
                        counterexample={
                            "pair": [_value_json(pair[0]), _value_json(pair[1])],
                            "context": side,
                            "composed": [_value_json(c1), _value_json(c2)],
                            "witness": witness,
                        },
                    )
    return CongruenceReport(
        op=op,
        equiv=equiv,
        samples=tried,
        verdict="congruent-on-sample",
        counterexample=None,
    )
