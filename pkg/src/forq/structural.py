"""Families of right quasiorders and the one induced by the structure of an automaton.

A FORQ compares stems with one right-monotonic quasiorder and compares
periods with a quasiorder that depends on a stem (the *anchor*). The
structural FORQ of ``B`` keys a stem ``u`` by ``Tgt(u)`` and a period ``v``
by ``Cxt(Tgt(w), v)`` for the anchor stem ``w``; both compare by inclusion.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Protocol, Sequence

from .automaton import (Buchi, ContextSet, StateSet, Word, cxt_extend, cxt_of_word,
                        cxt_unit, tgt_initial, tgt_of_word)


class AnchorMismatch(ValueError):
    """Two period keys relative to different anchors were compared."""


class Forq(Protocol):
    """What the inclusion engine needs from a family of right quasiorders.

    Keys are opaque hashable values. ``period_*`` methods take the anchor
    key (the stem key of the stem the period order depends on).
    """

    def stem_initial(self) -> Hashable: ...
    def stem_extend(self, key, a: int) -> Hashable: ...
    def stem_leq(self, x, y) -> bool: ...
    def period_unit(self, anchor, a: int) -> Hashable: ...
    def period_extend(self, key, a: int) -> Hashable: ...
    def period_leq(self, x, y) -> bool: ...


class StructuralForq:
    """Structural FORQ of a Büchi automaton ``b`` (raw ``int`` keys)."""

    def __init__(self, b: Buchi):
        self.b = b

    def stem_initial(self) -> StateSet:
        return tgt_initial(self.b)

    def stem_extend(self, key: StateSet, a: int) -> StateSet:
        return self.b.post(key, a)

    def stem_key(self, u: Sequence[int]) -> StateSet:
        return tgt_of_word(self.b, u)

    @staticmethod
    def stem_leq(x: StateSet, y: StateSet) -> bool:
        return x & ~y == 0

    def period_unit(self, anchor: StateSet, a: int) -> ContextSet:
        return cxt_unit(self.b, anchor, a)

    def period_extend(self, key: ContextSet, a: int) -> ContextSet:
        return cxt_extend(self.b, key, a)

    def period_key(self, anchor: StateSet, v: Sequence[int]) -> ContextSet:
        return cxt_of_word(self.b, anchor, v)

    @staticmethod
    def period_leq(x: ContextSet, y: ContextSet) -> bool:
        return x & ~y == 0


# -- public key-level API ----------------------------------------------------

@dataclass(frozen=True)
class StemKey:
    states: StateSet


@dataclass(frozen=True)
class PeriodKey:
    contexts: ContextSet
    anchor: StemKey


@dataclass(frozen=True)
class AnnotatedStem:
    word: Word
    key: StemKey


@dataclass(frozen=True)
class AnnotatedPeriod:
    word: Word
    key: PeriodKey


def annotate_stem(b: Buchi, u: Sequence[int]) -> AnnotatedStem:
    return AnnotatedStem(tuple(u), StemKey(tgt_of_word(b, u)))


def annotate_period(b: Buchi, anchor: StemKey, v: Sequence[int]) -> AnnotatedPeriod:
    return AnnotatedPeriod(tuple(v), PeriodKey(cxt_of_word(b, anchor.states, v), anchor))


def stem_leq(x: StemKey, y: StemKey) -> bool:
    return x.states & ~y.states == 0


def stem_geq(x: StemKey, y: StemKey) -> bool:
    return stem_leq(y, x)


def period_leq(x: PeriodKey, y: PeriodKey) -> bool:
    if x.anchor != y.anchor:
        raise AnchorMismatch(f"period keys anchored at {x.anchor} and {y.anchor}")
    return x.contexts & ~y.contexts == 0


def _period_leq_at(b: Buchi, anchor_word, v, v2) -> bool:
    anchor = annotate_stem(b, anchor_word).key
    return period_leq(annotate_period(b, anchor, v).key, annotate_period(b, anchor, v2).key)


def check_forq_constraint(b: Buchi, u, u2, v, v2) -> bool:
    """One instance of: ``u <=I u2`` and ``v <=F_u2 v2`` imply ``v <=F_u v2``."""
    if not stem_leq(annotate_stem(b, u).key, annotate_stem(b, u2).key):
        return True
    if not _period_leq_at(b, u2, v, v2):
        return True
    return _period_leq_at(b, u, v, v2)


def check_picky(b: Buchi, u, v, v2) -> bool:
    """One instance of: ``v <=F_u v2`` implies ``uv <=I uv2``."""
    if not _period_leq_at(b, u, v, v2):
        return True
    return stem_leq(annotate_stem(b, tuple(u) + tuple(v)).key,
                    annotate_stem(b, tuple(u) + tuple(v2)).key)
