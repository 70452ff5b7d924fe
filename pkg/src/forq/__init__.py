"""FORQ-based language inclusion for Büchi automata."""
from .automaton import (Alphabet, AlphabetMismatch, Buchi, MalformedAutomaton, cxt_of_word,
                        normalize_initials, reduce_final_states, tgt_of_word)
from .baformat import BaParseError, load_ba, load_pair, parse_ba, print_ba
from .engine import (EngineOptions, InclusionResult, Stats, Timeout, Verdict, decide_inclusion,
                     enumerate_test_set, enumerate_wrong_test_set)
from .membership import member
from .structural import StructuralForq

__all__ = [
    "Alphabet", "AlphabetMismatch", "BaParseError", "Buchi", "EngineOptions", "InclusionResult",
    "MalformedAutomaton", "Stats", "StructuralForq", "Timeout", "Verdict", "cxt_of_word",
    "decide_inclusion", "enumerate_test_set", "enumerate_wrong_test_set", "load_ba", "load_pair",
    "member", "normalize_initials", "parse_ba", "print_ba", "reduce_final_states", "tgt_of_word",
]
