"""Reading and writing automata in the ``.ba`` text format.

A file lists, in order, zero or more initial-state lines (a bare state
token), one or more transition lines ``label,src->dst`` and zero or more
accepting-state lines. States are declared by use. Without an initial
line the first state mentioned is initial; without accepting lines every
state is accepting. ``strict=True`` rejects files that rely on either
default.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .automaton import Alphabet, Buchi, MalformedAutomaton, normalize_initials

_TOKEN = re.compile(r"[^\s,]+")


class BaParseError(MalformedAutomaton):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.source = source


@dataclass(frozen=True)
class ParsedBa:
    """Raw content of a ``.ba`` file, states and symbols still by name."""

    initials: tuple[str, ...]
    transitions: tuple[tuple[str, str, str], ...]  # (src, label, dst)
    accepting: tuple[str, ...]
    states: tuple[str, ...]   # order of first mention
    symbols: tuple[str, ...]  # order of first mention

    def to_buchi(self, alphabet: Alphabet | None = None) -> Buchi:
        """Build the automaton; ``alphabet`` may be any superset of ``symbols``."""
        alphabet = alphabet or Alphabet(self.symbols)
        missing = [s for s in self.symbols if s not in alphabet.index]
        if missing:
            raise ValueError(f"symbols {missing} not in alphabet")
        index = {name: q for q, name in enumerate(self.states)}
        trans = {(index[s], alphabet.index[x], index[d]) for s, x, d in self.transitions}
        return normalize_initials(len(self.states), [index[q] for q in self.initials], trans,
                                  [index[q] for q in self.accepting], alphabet, self.states)


def _check_token(tok: str, lineno: int, source) -> str:
    if not _TOKEN.fullmatch(tok) or "->" in tok:
        raise BaParseError(f"bad token {tok!r}", lineno, source)
    return tok


def parse_ba(text: str, strict: bool = False, source: str | None = None) -> ParsedBa:
    initials: list[str] = []
    accepting: list[str] = []
    transitions: list[tuple[str, str, str]] = []
    states: dict[str, None] = {}
    symbols: dict[str, None] = {}
    phase = 0  # 0 initial lines, 1 transitions, 2 accepting lines
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if "," in line or "->" in line:
            if phase == 2:
                raise BaParseError("transition after accepting states", lineno, source)
            label, sep, rest = line.partition(",")
            src, arrow, dst = rest.partition("->")
            if not sep or not arrow:
                raise BaParseError(f"malformed transition {line!r}", lineno, source)
            label, src, dst = (_check_token(t.strip(), lineno, source) for t in (label, src, dst))
            phase = 1
            states.setdefault(src)
            states.setdefault(dst)
            symbols.setdefault(label)
            transitions.append((src, label, dst))
        else:
            tok = _check_token(line, lineno, source)
            if phase == 0:
                initials.append(tok)
                states.setdefault(tok)
            else:
                if tok not in states:
                    raise BaParseError(f"unknown accepting state {tok!r}", lineno, source)
                phase = 2
                accepting.append(tok)
    if not transitions:
        raise BaParseError("no transitions", None, source)
    if not initials:
        if strict:
            raise BaParseError("no initial state line (strict mode)", None, source)
        initials = [next(iter(states))]
    if not accepting:
        if strict:
            raise BaParseError("no accepting state lines (strict mode)", None, source)
        accepting = list(states)
    return ParsedBa(tuple(dict.fromkeys(initials)), tuple(dict.fromkeys(transitions)),
                    tuple(dict.fromkeys(accepting)), tuple(states), tuple(symbols))


def _printable_names(b: Buchi) -> list[str]:
    names = list(b.state_names)
    ok = len(set(names)) == len(names) and all(
        _TOKEN.fullmatch(n) and "->" not in n for n in names)
    return names if ok else [f"[{q}]" for q in range(b.n_states)]


def print_ba(b: Buchi) -> str:
    """Deterministic ``.ba`` text for ``b``.

    The format cannot say "no accepting state" (that reads as "all
    accepting"), so an empty accepting set is written as a fresh
    unreachable accepting state with a self-loop, which adds no word.
    """
    if not b.transitions:
        raise MalformedAutomaton("the .ba format needs at least one transition")
    names = _printable_names(b)
    symbols = b.alphabet.symbols
    lines = [names[b.initial]]
    trans = sorted(b.transitions)
    for s, x, d in trans:
        lines.append(f"{symbols[x]},{names[s]}->{names[d]}")
    if b.accepting:
        lines.extend(names[q] for q in sorted(b.accepting))
    else:
        sink = "sink"
        while sink in names:
            sink += "_"
        lines.append(f"{symbols[trans[0][1]]},{sink}->{sink}")
        lines.append(sink)
    return "\n".join(lines) + "\n"


def load_ba(path: str | Path, alphabet: Alphabet | None = None, strict: bool = False) -> Buchi:
    path = Path(path)
    return parse_ba(path.read_text(), strict, str(path)).to_buchi(alphabet)


def load_pair(path_a: str | Path, path_b: str | Path, strict: bool = False) -> tuple[Buchi, Buchi]:
    """Load two automata over the union of their symbols (sorted by name)."""
    pa = parse_ba(Path(path_a).read_text(), strict, str(path_a))
    pb = parse_ba(Path(path_b).read_text(), strict, str(path_b))
    alphabet = Alphabet(tuple(sorted(set(pa.symbols) | set(pb.symbols))))
    return pa.to_buchi(alphabet), pb.to_buchi(alphabet)
