"""Ground truth for small instances: random automata, a rank-based inclusion check, stem enumeration.

Nothing here uses the target/context machinery of the engine. The
inclusion check complements ``B`` with level rankings (ranks up to
``2 n_B``), builds the product with ``A`` on the fly and looks for a
reachable non-trivial SCC holding an accepting state of ``A`` and an
accepting state of the complement. SCCs come from networkx.

By default the complement guesses the level from which rankings are
tight and only tracks tight rankings afterwards; the plain construction
(``tight=False``) is kept to cross-check it on very small automata.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import networkx as nx

from .automaton import Alphabet, Buchi


class OracleRefused(ValueError):
    """Instance too large for the exponential reference constructions."""


@dataclass(frozen=True)
class GenParams:
    n_states: int
    alphabet_size: int = 2
    transition_density: float = 1.0
    acceptance_density: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.n_states < 1:
            raise ValueError("n_states must be >= 1")
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be >= 1")
        if not 0 <= self.transition_density <= 2:
            raise ValueError("transition_density must lie in [0, 2]")
        if not 0 < self.acceptance_density <= 1:
            raise ValueError("acceptance_density must lie in (0, 1]")


def symbol_names(k: int) -> tuple[str, ...]:
    if k <= 26:
        return tuple("abcdefghijklmnopqrstuvwxyz"[:k])
    return tuple(f"a{i}" for i in range(k))


def generate(params: GenParams, alphabet: Alphabet | None = None) -> Buchi:
    """Random automaton in the Tabakov-Vardi style.

    Each symbol gets ``round(density * n)`` transitions drawn without
    replacement among the ``n * n`` state pairs; ``max(1, round(acc * n))``
    states are accepting; state 0 is initial.
    """
    rng = random.Random(params.seed)
    n = params.n_states
    alphabet = alphabet or Alphabet(symbol_names(params.alphabet_size))
    if len(alphabet) != params.alphabet_size:
        raise ValueError("alphabet size does not match params")
    pairs = [(s, d) for s in range(n) for d in range(n)]
    k = min(len(pairs), round(params.transition_density * n))
    trans = set()
    for x in range(params.alphabet_size):
        for s, d in rng.sample(pairs, k):
            trans.add((s, x, d))
    m = max(1, round(params.acceptance_density * n))
    accepting = frozenset(rng.sample(range(n), m))
    return Buchi(n, 0, frozenset(trans), accepting, alphabet,
                 tuple(f"s{q}" for q in range(n)))


def random_pair(seed: int, max_states: int = 4, alphabet_size: int = 2,
                transition_density: float = 1.0, acceptance_density: float = 0.5) -> tuple[Buchi, Buchi]:
    """Two random automata over one alphabet, sizes drawn in ``1..max_states``."""
    rng = random.Random(seed)
    alphabet = Alphabet(symbol_names(alphabet_size))
    out = []
    for _ in range(2):
        params = GenParams(rng.randint(1, max_states), alphabet_size, transition_density,
                           acceptance_density, rng.randrange(2**32))
        out.append(generate(params, alphabet))
    return out[0], out[1]


# -- rank-based complement ------------------------------------------------------

class _LevelRankings:
    """On-the-fly complement of ``b`` by level rankings with obligation sets.

    A ranked state is ``(ranks, obligations)`` where ``ranks`` is a sorted
    tuple of ``(state, rank)`` over the current level and ``obligations``
    the states whose even rank has not been discharged yet; it accepts iff
    ``obligations`` is empty. Ranks never exceed ``2 n``.

    With ``tight`` set the construction runs in two phases: a subset phase
    ``("S", states)`` followed, at a guessed level, by ranked states
    restricted to tight rankings (largest rank odd, every smaller odd rank
    used). Without it the classical construction starts ranked at the
    initial level.
    """

    def __init__(self, b: Buchi, tight: bool = True):
        self.b = b
        self.tight = tight
        self.max_rank = 2 * b.n_states
        self.delta: dict[tuple[int, int], list[int]] = {}
        for s, x, d in b.transitions:
            self.delta.setdefault((s, x), []).append(d)
        self._rankings: dict[tuple, list[tuple[int, ...]]] = {}
        self._succ: dict[tuple, list] = {}

    def initial(self):
        if self.tight:
            return ("S", (self.b.initial,))
        return ("R", ((self.b.initial, self.max_rank),), frozenset())

    def _post(self, states, x):
        out = set()
        for q in states:
            out.update(self.delta.get((q, x), ()))
        return tuple(sorted(out))

    def _choices(self, targets, bounds):
        key = (targets, bounds)
        found = self._rankings.get(key)
        if found is not None:
            return found
        ranges = []
        for d, bound in zip(targets, bounds):
            if d in self.b.accepting:
                ranges.append(range(0, bound + 1, 2))
            else:
                ranges.append(range(bound + 1))
        found = [picked for picked in itertools.product(*ranges)
                 if not self.tight or _is_tight(picked)]
        self._rankings[key] = found
        return found

    def _ranked(self, targets, picked, followers, obligations):
        even = {d for d, r in zip(targets, picked) if r % 2 == 0}
        new_obl = frozenset(even & followers) if obligations else frozenset(even)
        return ("R", tuple(zip(targets, picked)), new_obl)

    def successors(self, state, x: int):
        key = (state, x)
        found = self._succ.get(key)
        if found is not None:
            return found
        out = []
        if state[0] == "S":
            targets = self._post(state[1], x)
            out.append(("S", targets))
            top = min(self.max_rank, 2 * len(targets) - 1)
            for picked in self._choices(targets, (top,) * len(targets)):
                out.append(self._ranked(targets, picked, set(), frozenset()))
        else:
            _, ranks, obligations = state
            bound: dict[int, int] = {}
            for q, r in ranks:
                for d in self.delta.get((q, x), ()):
                    bound[d] = min(r, bound.get(d, r))
            targets = tuple(sorted(bound))
            followers = set(self._post(obligations, x))
            for picked in self._choices(targets, tuple(bound[d] for d in targets)):
                out.append(self._ranked(targets, picked, followers, obligations))
        self._succ[key] = out
        return out

    @staticmethod
    def accepting(state) -> bool:
        return state[0] == "R" and not state[2]


def _is_tight(ranks: tuple[int, ...]) -> bool:
    if not ranks:
        return True
    top = max(ranks)
    if top % 2 == 0:
        return False
    return set(range(1, top + 1, 2)) <= set(ranks)


def oracle_inclusion(a: Buchi, b: Buchi, max_states: int = 5, tight: bool = True) -> bool:
    """``L(a) <= L(b)`` via emptiness of ``a`` times the rank-based complement of ``b``."""
    if b.n_states > max_states:
        raise OracleRefused(f"right automaton has {b.n_states} > {max_states} states")
    if a.alphabet != b.alphabet:
        raise ValueError("alphabets differ")
    comp = _LevelRankings(b, tight)
    a_delta: dict[int, list[tuple[int, int]]] = {}
    for s, x, d in a.transitions:
        a_delta.setdefault(s, []).append((x, d))
    start = (a.initial, comp.initial())
    graph = nx.DiGraph()
    graph.add_node(start)
    todo = [start]
    while todo:
        node = todo.pop()
        p, c = node
        for x, p2 in a_delta.get(p, ()):
            for c2 in comp.successors(c, x):
                nxt = (p2, c2)
                if nxt not in graph:
                    graph.add_node(nxt)
                    todo.append(nxt)
                graph.add_edge(node, nxt)
    for scc in nx.strongly_connected_components(graph):
        if len(scc) == 1:
            (only,) = scc
            if not graph.has_edge(only, only):
                continue
        if any(p in a.accepting for p, _ in scc) and any(comp.accepting(c) for _, c in scc):
            return False
    return True


# -- stem enumeration ---------------------------------------------------------------

def enumerate_stems(a: Buchi, p: int, n: int, limit: int = 200_000) -> set[tuple[int, ...]]:
    """All words of length ``<= n`` leading from the initial state of ``a`` to ``p``."""
    k = len(a.alphabet)
    if sum(k**i for i in range(n + 1)) > limit:
        raise OracleRefused(f"{k}^{n} words is too many to enumerate")
    step: dict[tuple[int, int], set[int]] = {}
    for s, x, d in a.transitions:
        step.setdefault((s, x), set()).add(d)
    out = set()
    layer = {(): {a.initial}}
    for _ in range(n + 1):
        nxt = {}
        for word, states in layer.items():
            if p in states:
                out.add(word)
            for x in range(k):
                reach = set()
                for q in states:
                    reach |= step.get((q, x), set())
                if reach:
                    nxt[word + (x,)] = reach
        layer = nxt
    return out
