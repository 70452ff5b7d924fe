"""Membership of ultimately periodic words ``u v^w`` in the language of a Büchi automaton."""
from __future__ import annotations

from typing import Sequence

from .automaton import (Buchi, StateSet, context_rows, cxt_of_word, iter_bits,
                        strongly_connected_components, tgt_of_word)


class PeriodGraph:
    """One-block-of-``v`` reachability graph over the states of ``b``.

    An edge ``q -> q'`` means some run reads ``v`` from ``q`` to ``q'``; it is
    flagged when such a run visits an accepting state. ``good`` holds the
    states from which a cycle of blocks with a flagged edge is reachable,
    so ``u v^w`` is accepted iff ``Tgt(u)`` meets ``good``.
    """

    def __init__(self, b: Buchi, v: Sequence[int]):
        if len(v) == 0:
            raise ValueError("a period must be non-empty")
        n = b.n_states
        self.edges = [0] * n
        self.flagged = [0] * n
        for q, bot, top in context_rows(b, cxt_of_word(b, b.all_states, v)):
            self.edges[q] = bot
            self.flagged[q] = top
        self.good = self._good_states(n)

    def _good_states(self, n: int) -> StateSet:
        edges = self.edges
        comps = strongly_connected_components(range(n), lambda q: iter_bits(edges[q]))
        good = 0
        for comp in comps:
            inside = 0
            for q in comp:
                inside |= 1 << q
            if any(self.flagged[q] & inside for q in comp):
                good |= inside
        # backward closure: anything that can reach a good state
        changed = True
        while changed:
            changed = False
            for q in range(n):
                if not good >> q & 1 and edges[q] & good:
                    good |= 1 << q
                    changed = True
        return good

    def accepts_from(self, states: StateSet) -> bool:
        return bool(states & self.good)


def member(b: Buchi, u: Sequence[int], v: Sequence[int]) -> bool:
    """Decide ``u v^w`` in ``L(b)``."""
    return PeriodGraph(b, v).accepts_from(tgt_of_word(b, u))


def member_bruteforce(b: Buchi, u: Sequence[int], v: Sequence[int],
                      unroll_bound: int | None = None) -> bool:
    """Reference check by explicit search of the product of ``b`` with the lasso.

    The lasso is laid out as ``u`` followed by ``unroll_bound`` copies of
    ``v`` whose last position loops back to the start of the copies. A run
    is accepting iff an accepting product node is reachable and lies on a
    cycle.
    """
    if len(v) == 0:
        raise ValueError("a period must be non-empty")
    if unroll_bound is None:
        unroll_bound = b.n_states + 1
    word = list(u) + list(v) * unroll_bound
    loop_start = len(u)
    length = len(word)

    def step(node):
        q, i = node
        nxt = i + 1 if i + 1 < length else loop_start
        a = word[i]
        return [(d, nxt) for s, x, d in b.transitions if s == q and x == a]

    def reachable(src):
        seen, todo = set(), [src]
        while todo:
            node = todo.pop()
            for w in step(node):
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return seen

    start = (b.initial, 0)
    from_start = reachable(start) | {start}
    for node in from_start:
        if node[0] in b.accepting and node in reachable(node):
            return True
    return False
