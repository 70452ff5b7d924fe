"""FORQ-based inclusion check ``L(A) <= L(B)`` for Büchi automata.

Stems of ``A`` are collected into two bases per state: ``U`` keeps the
``<=I``-minimal stems and ``W`` the ``<=I``-maximal ones. For every accepting
state ``s`` of ``A`` and every ``w`` in ``W[s]``, the periods of ``s`` are
collected into a basis for the period order anchored at ``w``. Each lasso
``u v^w`` with ``u`` in ``U[s]``, ``u <=I w`` and ``v`` in that period basis
is then tested for membership in ``L(B)``; a rejected lasso is a
counterexample, and if none is rejected the inclusion holds.
"""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterator, Mapping, Sequence

from .automaton import AlphabetMismatch, Buchi, Word, reduce_final_states
from .membership import PeriodGraph, member
from .structural import Forq, StructuralForq


class Timeout(Exception):
    pass


class Verdict(enum.Enum):
    INCLUDED = "INCLUDED"
    NOT_INCLUDED = "NOT_INCLUDED"


@dataclass
class EngineOptions:
    prune: bool = True
    picky: bool = False
    reduce_accepting: bool = True
    collect_stats: bool = True
    timeout_ms: float | None = None
    # query periods as they are found instead of after the period basis is complete
    eager: bool = True


@dataclass
class Stats:
    queries: int = 0
    stem_rounds: int = 0
    period_rounds: int = 0
    period_fixpoints: int = 0
    anchor_cache_hits: int = 0
    stem_basis: int = 0
    period_basis: int = 0
    elapsed_ms: float = 0.0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class InclusionResult:
    verdict: Verdict
    witness: tuple[Word, Word] | None = None
    stats: Stats = field(default_factory=Stats)

    @property
    def included(self) -> bool:
        return self.verdict is Verdict.INCLUDED


class _Clock:
    def __init__(self, timeout_ms):
        self.start = time.monotonic()
        self.deadline = None if timeout_ms is None else self.start + timeout_ms / 1000.0

    def check(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise Timeout()

    def elapsed_ms(self) -> float:
        return (time.monotonic() - self.start) * 1000.0


class Entry:
    __slots__ = ("word", "key", "alive")

    def __init__(self, word: Word, key):
        self.word = word
        self.key = key
        self.alive = True

    def __repr__(self):
        return f"Entry({self.word!r})"


class Antichain:
    """Words with keys, kept free of subsumed elements when ``prune`` is on.

    ``leq(x, y)`` means a word keyed ``x`` subsumes one keyed ``y``. A
    candidate subsumed by a stored word (equivalent ones included) is
    rejected, so the first of several equivalent words wins. Otherwise
    the candidate is stored and every word it subsumes is dropped. With
    ``prune`` off every new word is stored.
    """

    def __init__(self, leq: Callable[[Hashable, Hashable], bool], prune: bool = True):
        self.leq = leq
        self.prune = prune
        self.entries: list[Entry] = []
        self._words: set[Word] = set()
        self._keys: set = set()

    def __len__(self):
        return len(self.entries)

    def __iter__(self) -> Iterator[Entry]:
        return iter(self.entries)

    def __contains__(self, word) -> bool:
        return word in self._words

    def words(self) -> list[Word]:
        return [e.word for e in self.entries]

    def keys(self) -> list:
        return [e.key for e in self.entries]

    def covers(self, key) -> bool:
        leq = self.leq
        return any(leq(k, key) for k in self._keys)

    def insert(self, word: Word, key) -> Entry | None:
        """Insert a candidate; return its entry, or ``None`` if rejected."""
        if not self.prune:
            if word in self._words:
                return None
        else:
            leq = self.leq
            for e in self.entries:
                if leq(e.key, key):
                    return None
            kept = []
            for e in self.entries:
                if leq(key, e.key):
                    e.alive = False
                    self._words.discard(e.word)
                else:
                    kept.append(e)
            self.entries = kept
            self._keys = {e.key for e in kept}
        entry = Entry(word, key)
        self.entries.append(entry)
        self._words.add(word)
        self._keys.add(key)
        return entry


BasisVector = list[Antichain]


def rcat(a: Buchi, vec: Sequence[Mapping[Word, object] | set],
         extend: Callable | None = None) -> list[dict[Word, object]]:
    """One step of right concatenation along the transitions of ``a``.

    Component ``p`` of the result holds ``vec[p]`` plus every ``w + (x,)``
    with ``w`` in ``vec[p']`` and ``p' -x-> p``. Components may be sets of
    words or mappings from words to keys; keys of new words are derived
    with ``extend(parent_key, x)`` when given.
    """
    vec = [c if isinstance(c, Mapping) else dict.fromkeys(c) for c in vec]
    out = [dict(c) for c in vec]
    for p, comp in enumerate(vec):
        for word, key in comp.items():
            for x, p2 in a.out_edges[p]:
                w2 = word + (x,)
                if w2 not in out[p2]:
                    out[p2][w2] = extend(key, x) if extend is not None else None
    return out


def _fixpoint(a: Buchi, seeds: Sequence[Sequence[tuple[Word, object]]], extend, leq,
              prune: bool, descending: bool, clock: _Clock,
              on_round: Callable[[BasisVector], None] | None = None,
              on_insert: Callable[[int, Entry], None] | None = None) -> tuple[BasisVector, int]:
    """Grow ``seeds`` under ``rcat`` until every new word is subsumed.

    Only words stored in the previous round are extended. ``on_insert(p,
    entry)`` sees every word as it is stored. Returns the vector and the
    number of rounds.
    """
    edges = a.out_edges
    if descending:
        edges = [sorted(es, key=lambda e: (-e[0], e[1])) for es in edges]
    chains = [Antichain(leq, prune) for _ in range(a.n_states)]
    frontier = []
    for p, items in enumerate(seeds):
        for word, key in items:
            e = chains[p].insert(word, key)
            if e is not None:
                frontier.append((p, e))
                if on_insert is not None:
                    on_insert(p, e)
    rounds = 0
    if prune:
        while frontier:
            rounds += 1
            nxt = []
            for p, e in frontier:
                clock.check()
                if not e.alive:
                    continue
                for x, p2 in edges[p]:
                    new = chains[p2].insert(e.word + (x,), extend(e.key, x))
                    if new is not None:
                        nxt.append((p2, new))
                        if on_insert is not None:
                            on_insert(p2, new)
            frontier = nxt
            if on_round is not None:
                on_round(chains)
        return chains, rounds

    def successors(front):
        seen = set()
        out = []
        for p, e in front:
            clock.check()
            for x, p2 in edges[p]:
                w2 = e.word + (x,)
                if w2 in chains[p2] or (p2, w2) in seen:
                    continue
                seen.add((p2, w2))
                out.append((p2, w2, extend(e.key, x)))
        return out

    pending = successors(frontier)
    while True:
        rounds += 1
        frontier = [(p2, chains[p2].insert(w2, k2)) for p2, w2, k2 in pending]
        if on_insert is not None:
            for p2, e in frontier:
                on_insert(p2, e)
        if on_round is not None:
            on_round(chains)
        pending = successors(frontier)
        if all(chains[p2].covers(k2) for p2, _, k2 in pending):
            return chains, rounds


def _stem_geq(x, y) -> bool:
    return y & ~x == 0


def compute_stem_bases(a: Buchi, b: Buchi | Forq, opts: EngineOptions | None = None,
                       stats: Stats | None = None, clock: _Clock | None = None,
                       on_round=None) -> tuple[BasisVector, BasisVector]:
    """Return ``(U, W)``: per-state bases of the stems of ``a``.

    ``U[p]`` is a basis of ``Stem_p`` for ``<=I`` and ``W[p]`` one for its
    converse.
    """
    opts = opts or EngineOptions()
    forq = StructuralForq(b) if isinstance(b, Buchi) else b
    clock = clock or _Clock(opts.timeout_ms)
    seeds = [[] for _ in range(a.n_states)]
    seeds[a.initial] = [((), forq.stem_initial())]
    geq = (lambda x, y: forq.stem_leq(y, x))
    if isinstance(forq, StructuralForq):
        geq = _stem_geq
    wvec, r_w = _fixpoint(a, seeds, forq.stem_extend, geq, opts.prune, False, clock,
                          on_round and (lambda v: on_round("W", v)))
    uvec, r_u = _fixpoint(a, seeds, forq.stem_extend, forq.stem_leq, opts.prune, False, clock,
                          on_round and (lambda v: on_round("U", v)))
    if stats is not None:
        stats.stem_rounds += r_w + r_u
        stats.stem_basis = max([stats.stem_basis] + [len(c) for c in uvec] + [len(c) for c in wvec])
    return uvec, wvec


def compute_period_basis(a: Buchi, b: Buchi | Forq, s: int, anchor,
                         opts: EngineOptions | None = None, stats: Stats | None = None,
                         clock: _Clock | None = None, on_round=None,
                         on_insert=None) -> BasisVector:
    """Vector whose ``s`` component is a basis of the periods of ``s`` for the order anchored at ``anchor``.

    ``anchor`` is the stem key of the anchor stem. Successors are explored
    in descending symbol order, so among equivalent single-letter periods
    the one with the larger symbol id is kept.
    """
    opts = opts or EngineOptions()
    forq = StructuralForq(b) if isinstance(b, Buchi) else b
    clock = clock or _Clock(opts.timeout_ms)
    seeds = [[] for _ in range(a.n_states)]
    for x, p in sorted(a.out_edges[s], key=lambda e: (-e[0], e[1])):
        seeds[p].append(((x,), forq.period_unit(anchor, x)))
    vec, rounds = _fixpoint(a, seeds, forq.period_extend, forq.period_leq, opts.prune, True,
                            clock, on_round, on_insert)
    if stats is not None:
        stats.period_rounds += rounds
        stats.period_fixpoints += 1
        stats.period_basis = max([stats.period_basis] + [len(c) for c in vec])
    return vec


def _prepare(a: Buchi, b: Buchi, opts: EngineOptions) -> Buchi:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch("both automata must share one alphabet")
    return reduce_final_states(a) if opts.reduce_accepting else a


def _picky_ok(forq: Forq, anchor, v: Word) -> bool:
    """``Tgt(wv) <= Tgt(w)`` for the anchor ``w``, the condition picky mode requires."""
    target = anchor
    for x in v:
        target = forq.stem_extend(target, x)
    return forq.stem_leq(target, anchor)


def _candidates(a: Buchi, b: Buchi, opts: EngineOptions, stats: Stats,
                clock: _Clock) -> Iterator[tuple[Entry, Word, Entry]]:
    """Yield ``(u, v, w)`` for every membership query, in query order."""
    forq = StructuralForq(b)
    if not a.accepting:
        return
    uvec, wvec = compute_stem_bases(a, forq, opts, stats, clock)
    cache: dict[tuple[int, int], BasisVector] = {}
    for s in sorted(a.accepting):
        if not len(uvec[s]):
            continue
        for w in list(wvec[s]):
            anchor = w.key
            vec = cache.get((s, anchor))
            if vec is None:
                vec = compute_period_basis(a, forq, s, anchor, opts, stats, clock)
                cache[(s, anchor)] = vec
            else:
                stats.anchor_cache_hits += 1
            for v in list(vec[s]):
                if opts.picky and not _picky_ok(forq, anchor, v.word):
                    continue
                for u in list(uvec[s]):
                    clock.check()
                    if forq.stem_leq(u.key, anchor):
                        yield u, v.word, w


class _Found(Exception):
    def __init__(self, witness: tuple[Word, Word]):
        super().__init__(witness)
        self.witness = witness


def _eager_search(a: Buchi, b: Buchi, opts: EngineOptions, stats: Stats, clock: _Clock,
                  rejects: Callable[[Entry, Word], bool]) -> None:
    """Query each period of ``s`` as soon as it is stored; raise ``_Found`` on a rejected lasso.

    The lassos queried include every lasso of the test set, plus periods
    that a later, smaller period evicts. Every one of them lies in
    ``L(a)``, so any rejection is a genuine counterexample.
    """
    forq = StructuralForq(b)
    if not a.accepting:
        return
    uvec, wvec = compute_stem_bases(a, forq, opts, stats, clock)
    done: set[tuple[int, int]] = set()
    for s in sorted(a.accepting):
        if not len(uvec[s]):
            continue
        for w in list(wvec[s]):
            anchor = w.key
            if (s, anchor) in done:
                # same anchor, same stems below it: every query was already made
                stats.anchor_cache_hits += 1
                continue
            done.add((s, anchor))
            below = [u for u in uvec[s] if forq.stem_leq(u.key, anchor)]

            def visit(p: int, v: Entry, s=s, anchor=anchor, below=below):
                if p != s or (opts.picky and not _picky_ok(forq, anchor, v.word)):
                    return
                for u in below:
                    clock.check()
                    if rejects(u, v.word):
                        raise _Found((u.word, v.word))

            compute_period_basis(a, forq, s, anchor, opts, stats, clock, on_insert=visit)


def decide_inclusion(a: Buchi, b: Buchi, opts: EngineOptions | None = None) -> InclusionResult:
    """Decide ``L(a) <= L(b)``; a negative answer carries a lasso ``(u, v)`` with ``u v^w`` in ``L(a) - L(b)``."""
    opts = opts or EngineOptions()
    clock = _Clock(opts.timeout_ms)
    stats = Stats()
    reduced = _prepare(a, b, opts)
    graphs: dict[Word, PeriodGraph] = {}

    def rejects(u: Entry, v: Word) -> bool:
        stats.queries += 1
        graph = graphs.get(v)
        if graph is None:
            graph = graphs[v] = PeriodGraph(b, v)
        return not graph.accepts_from(u.key)

    witness = None
    if opts.eager:
        try:
            _eager_search(reduced, b, opts, stats, clock, rejects)
        except _Found as found:
            witness = found.witness
    else:
        for u, v, _ in _candidates(reduced, b, opts, stats, clock):
            if rejects(u, v):
                witness = (u.word, v)
                break
    stats.elapsed_ms = clock.elapsed_ms()
    if witness is None:
        return InclusionResult(Verdict.INCLUDED, None, stats)
    if not member(a, *witness) or member(b, *witness):
        raise AssertionError(f"witness {witness} failed self-certification")
    return InclusionResult(Verdict.NOT_INCLUDED, witness, stats)


def enumerate_test_set(a: Buchi, b: Buchi, opts: EngineOptions | None = None) -> list[tuple[Word, Word]]:
    """Lassos ``decide_inclusion`` would query, without querying; duplicates removed."""
    opts = opts or EngineOptions()
    clock = _Clock(opts.timeout_ms)
    reduced = _prepare(a, b, opts)
    out = {}
    for u, v, _ in _candidates(reduced, b, opts, Stats(), clock):
        out.setdefault((u.word, v), None)
    return list(out)


def enumerate_wrong_test_set(a: Buchi, b: Buchi, opts: EngineOptions | None = None) -> list[tuple[Word, Word]]:
    """Flawed variant: periods anchored at the ``<=I``-minimal stems of ``U`` instead of ``W``.

    Kept as a regression fixture; it can miss counterexamples.
    """
    opts = opts or EngineOptions()
    clock = _Clock(opts.timeout_ms)
    a = _prepare(a, b, opts)
    forq = StructuralForq(b)
    uvec, _ = compute_stem_bases(a, forq, opts, None, clock)
    out = {}
    for s in sorted(a.accepting):
        for u in uvec[s]:
            vec = compute_period_basis(a, forq, s, u.key, opts, None, clock)
            for v in vec[s]:
                out.setdefault((u.word, v.word), None)
    return list(out)
