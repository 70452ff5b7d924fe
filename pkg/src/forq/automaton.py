"""Büchi automata over an indexed alphabet, plus the target/context computations.

States and symbols are dense 0-based ids. Sets of states are plain ``int``
bitmasks (bit ``q`` set iff state ``q`` is a member). A context set over
``Q x Q x {False, True}`` is also an ``int``: the row of source state ``q``
occupies bits ``[2n*q, 2n*q + 2n)``, the low ``n`` bits of a row hold the
plain targets and the high ``n`` bits the targets reached through an
accepting state. Keeping both as ints makes inclusion tests a single
``x & ~y == 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Word = tuple[int, ...]
StateSet = int
ContextSet = int


class MalformedAutomaton(ValueError):
    pass


class AlphabetMismatch(ValueError):
    pass


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(states: Iterable[int]) -> int:
    m = 0
    for q in states:
        m |= 1 << q
    return m


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"duplicate symbols in {self.symbols!r}")
        if any(not s for s in self.symbols):
            raise ValueError("symbol names must be non-empty")

    @cached_property
    def index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.symbols)}

    def __len__(self):
        return len(self.symbols)

    def encode(self, names: Iterable[str] | str) -> Word:
        """Map symbol names to ids. A string is split on whitespace."""
        if isinstance(names, str):
            names = names.split()
        return tuple(self.index[s] for s in names)

    def decode(self, word: Sequence[int]) -> tuple[str, ...]:
        return tuple(self.symbols[a] for a in word)


@dataclass(frozen=True)
class Buchi:
    """Immutable nondeterministic Büchi automaton with a single initial state."""

    n_states: int
    initial: int
    transitions: frozenset[tuple[int, int, int]]
    accepting: frozenset[int]
    alphabet: Alphabet
    state_names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        n = self.n_states
        if n < 1:
            raise MalformedAutomaton("automaton needs at least one state")
        if not 0 <= self.initial < n:
            raise MalformedAutomaton(f"initial state {self.initial} out of range")
        k = len(self.alphabet)
        for src, sym, dst in self.transitions:
            if not (0 <= src < n and 0 <= dst < n):
                raise MalformedAutomaton(f"transition {(src, sym, dst)} uses an unknown state")
            if not 0 <= sym < k:
                raise MalformedAutomaton(f"transition {(src, sym, dst)} uses an unknown symbol")
        if any(not 0 <= q < n for q in self.accepting):
            raise MalformedAutomaton("accepting state out of range")
        if not self.state_names:
            object.__setattr__(self, "state_names", tuple(str(q) for q in range(n)))
        elif len(self.state_names) != n:
            raise MalformedAutomaton("state_names must name every state")

    @cached_property
    def accepting_mask(self) -> int:
        return mask_of(self.accepting)

    @cached_property
    def all_states(self) -> int:
        return (1 << self.n_states) - 1

    @cached_property
    def succ(self) -> list[list[int]]:
        """``succ[a][q]`` is the bitmask of ``a``-successors of ``q``."""
        table = [[0] * self.n_states for _ in range(len(self.alphabet))]
        for src, sym, dst in self.transitions:
            table[sym][src] |= 1 << dst
        return table

    @cached_property
    def out_edges(self) -> list[list[tuple[int, int]]]:
        """``out_edges[p]``: sorted ``(symbol, target)`` pairs leaving ``p``."""
        edges: list[list[tuple[int, int]]] = [[] for _ in range(self.n_states)]
        for src, sym, dst in sorted(self.transitions):
            edges[src].append((sym, dst))
        return edges

    @cached_property
    def _byte_tables(self) -> list[list[list[int]]]:
        # post-image lookup per symbol, per 8-state chunk, per byte value
        tables = []
        n_chunks = (self.n_states + 7) // 8
        for row in self.succ:
            per_symbol = []
            for c in range(n_chunks):
                t = [0] * 256
                for b in range(1, 256):
                    low = (b & -b).bit_length() - 1
                    q = 8 * c + low
                    t[b] = t[b & (b - 1)] | (row[q] if q < self.n_states else 0)
                per_symbol.append(t)
            tables.append(per_symbol)
        return tables

    def post(self, states: StateSet, a: int) -> StateSet:
        """States reachable from ``states`` by reading the symbol ``a``."""
        tables = self._byte_tables[a]
        out = 0
        i = 0
        while states:
            b = states & 0xFF
            if b:
                out |= tables[i][b]
            states >>= 8
            i += 1
        return out

    def name_of(self, q: int) -> str:
        return self.state_names[q]

    def with_accepting(self, accepting: Iterable[int]) -> "Buchi":
        return Buchi(self.n_states, self.initial, self.transitions,
                     frozenset(accepting), self.alphabet, self.state_names)


def _fresh_name(taken: Iterable[str], base: str = "init") -> str:
    taken = set(taken)
    name, i = base, 0
    while name in taken:
        i += 1
        name = f"{base}{i}"
    return name


def normalize_initials(n_states: int, initials: Iterable[int],
                       transitions: Iterable[tuple[int, int, int]],
                       accepting: Iterable[int], alphabet: Alphabet,
                       state_names: Sequence[str] = ()) -> Buchi:
    """Build a :class:`Buchi` with a single initial state.

    With several initial states a fresh non-accepting state is added whose
    outgoing transitions are the union of those of every initial state. The
    recognized language does not change because acceptance only looks at
    states visited infinitely often.
    """
    initials = sorted(set(initials))
    if not initials:
        raise MalformedAutomaton("no initial state")
    transitions = frozenset(transitions)
    names = tuple(state_names) if state_names else tuple(str(q) for q in range(n_states))
    if len(initials) == 1:
        return Buchi(n_states, initials[0], transitions, frozenset(accepting), alphabet, names)
    fresh = n_states
    init_set = set(initials)
    extra = {(fresh, a, dst) for src, a, dst in transitions if src in init_set}
    return Buchi(n_states + 1, fresh, transitions | extra, frozenset(accepting),
                 alphabet, names + (_fresh_name(names),))


# -- targets ---------------------------------------------------------------

def tgt_initial(b: Buchi) -> StateSet:
    return 1 << b.initial


def tgt_extend(b: Buchi, x: StateSet, a: int) -> StateSet:
    return b.post(x, a)


def tgt_of_word(b: Buchi, u: Sequence[int], start: StateSet | None = None) -> StateSet:
    x = tgt_initial(b) if start is None else start
    for a in u:
        x = b.post(x, a)
    return x


# -- contexts --------------------------------------------------------------

def cxt_epsilon(b: Buchi, x: StateSet) -> ContextSet:
    """Contexts of the empty word: ``(q, q, False)`` and ``(q, q, True)`` if ``q`` accepts."""
    n = b.n_states
    out = 0
    for q in iter_bits(x):
        row = (1 << q) | ((1 << (q + n)) if b.accepting_mask >> q & 1 else 0)
        out |= row << (2 * n * q)
    return out


def cxt_extend(b: Buchi, c: ContextSet, a: int) -> ContextSet:
    """Contexts of ``va`` from the contexts of ``v``.

    ``(q0, q, k)`` is produced from ``(q0, q', k')`` and ``q' -a-> q`` when
    ``k`` is false, ``k'`` is true, or ``q'`` or ``q`` is accepting.
    """
    n = b.n_states
    width = 2 * n
    low = (1 << n) - 1
    row_mask = (1 << width) - 1
    fin = b.accepting_mask
    post = b.post
    out = 0
    shift = 0
    while c:
        row = c & row_mask
        if row:
            bot = row & low
            nb = post(bot, a)
            if nb:
                nt = post((row >> n) | (bot & fin), a) | (nb & fin)
                out |= (nb | (nt << n)) << shift
        c >>= width
        shift += width
    return out


def cxt_unit(b: Buchi, x: StateSet, a: int) -> ContextSet:
    return cxt_extend(b, cxt_epsilon(b, x), a)


def cxt_of_word(b: Buchi, x: StateSet, v: Sequence[int]) -> ContextSet:
    if len(v) == 0:
        raise ValueError("a period must be non-empty")
    c = cxt_epsilon(b, x)
    for a in v:
        c = cxt_extend(b, c, a)
    return c


def context_rows(b: Buchi, c: ContextSet) -> Iterator[tuple[int, StateSet, StateSet]]:
    """Yield ``(source, plain_targets, accepting_targets)`` for non-empty rows."""
    n = b.n_states
    low = (1 << n) - 1
    q = 0
    while c:
        row = c & ((1 << (2 * n)) - 1)
        if row:
            yield q, row & low, row >> n
        c >>= 2 * n
        q += 1


def context_targets(b: Buchi, c: ContextSet) -> StateSet:
    """Union of all sink states of ``c``; equals ``Tgt(wv)`` for ``c = Cxt(Tgt(w), v)``."""
    out = 0
    for _, bot, _ in context_rows(b, c):
        out |= bot
    return out


def context_triples(b: Buchi, c: ContextSet) -> frozenset[tuple[int, int, bool]]:
    out = set()
    for q, bot, top in context_rows(b, c):
        out.update((q, t, False) for t in iter_bits(bot))
        out.update((q, t, True) for t in iter_bits(top))
    return frozenset(out)


def context_from_triples(b: Buchi, triples: Iterable[tuple[int, int, bool]]) -> ContextSet:
    n = b.n_states
    out = 0
    for q, t, k in triples:
        out |= 1 << (2 * n * q + (n if k else 0) + t)
    return out


def is_top_closed(b: Buchi, c: ContextSet) -> bool:
    """Every accepting-flagged context also appears without the flag."""
    return all(top & ~bot == 0 for _, bot, top in context_rows(b, c))


# -- graph utilities -------------------------------------------------------

def strongly_connected_components(nodes: Iterable[int], succ) -> list[list[int]]:
    """Iterative Tarjan over the nodes reachable from ``nodes``.

    ``succ(v)`` returns an iterable of successors. Components come out in
    reverse topological order, each sorted ascending.
    """
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(succ(root)))]
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if w in on_stack and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work and low[v] < low[work[-1][0]]:
                low[work[-1][0]] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
    return out


@dataclass(frozen=True)
class Component:
    states: frozenset[int]
    nontrivial: bool


def sccs(b: Buchi) -> list[Component]:
    """SCCs of the transition graph restricted to states reachable from the initial one."""
    graph = [sorted({dst for _, dst in b.out_edges[q]}) for q in range(b.n_states)]
    comps = strongly_connected_components([b.initial], lambda q: graph[q])
    out = []
    for comp in comps:
        members = frozenset(comp)
        nontrivial = len(comp) > 1 or comp[0] in graph[comp[0]]
        out.append(Component(members, nontrivial))
    return out


def reduce_final_states(b: Buchi) -> Buchi:
    """Drop accepting states that no run can visit infinitely often.

    An accepting state is kept only if it is reachable and sits in a
    non-trivial SCC.
    """
    keep = set()
    for comp in sccs(b):
        if comp.nontrivial:
            keep |= comp.states & b.accepting
    if keep == b.accepting:
        return b
    return b.with_accepting(keep)


def union(a: Buchi, b: Buchi) -> Buchi:
    """Automaton recognizing ``L(a) | L(b)`` (disjoint union, merged initial state)."""
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch("union needs both automata over the same alphabet")
    off = a.n_states
    trans = set(a.transitions) | {(s + off, x, d + off) for s, x, d in b.transitions}
    acc = set(a.accepting) | {q + off for q in b.accepting}
    names = tuple(f"L.{s}" for s in a.state_names) + tuple(f"R.{s}" for s in b.state_names)
    return normalize_initials(a.n_states + b.n_states, {a.initial, b.initial + off},
                              trans, acc, a.alphabet, names)


def relabel(b: Buchi, alphabet: Alphabet) -> Buchi:
    """Re-express ``b`` over a larger alphabet containing all of its symbols."""
    mapping = [alphabet.index[s] for s in b.alphabet.symbols]
    trans = frozenset((s, mapping[x], d) for s, x, d in b.transitions)
    return Buchi(b.n_states, b.initial, trans, b.accepting, alphabet, b.state_names)
