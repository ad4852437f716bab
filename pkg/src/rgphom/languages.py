"""Decision procedures on regex languages: inclusion, universality,
inclusion of concatenations, and bounded word enumeration.

Inclusion runs a breadth-first search over the product of an NFA for
the left side with the complement of a DFA for the right side, so a
failed check always comes with a shortest counterexample word.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from collections import deque
from typing import Iterable, Sequence

from .automata import compile_nfa, determinize, dfa_accepts, Dfa, Nfa
from .errors import CapExceededError, PreconditionError
from .regexes import Concat, RegexAst, sigma_star, symbols

DEFAULT_WORD_CAP = 200_000


@dataclass(frozen=True)
class InclusionReport:
    holds: bool
    counterexample: str | None


@dataclass(frozen=True)
class TruncationReport:
    """Both sides of the bounded-concatenation equivalence.

    full_holds decides L(b1)...L(bk) <= L(a) exactly with automata;
    truncated_holds re-decides it after cutting each factor language to
    words no longer than (states of a's NFA) * (states of that factor's
    NFA). The two verdicts must always agree.
    """

    full_holds: bool
    full_counterexample: str | None
    truncated_holds: bool
    truncated_counterexample: str | None
    bounds: tuple[int, ...]

    @property
    def agree(self) -> bool:
        return self.full_holds == self.truncated_holds


@functools.lru_cache(maxsize=4096)
def _compiled(node: RegexAst) -> Nfa:
    return compile_nfa(node)


def language_inclusion(e1: RegexAst, e2: RegexAst) -> InclusionReport:
    """Decide L(e1) <= L(e2); on failure report a shortest witness word."""
    n1 = _compiled(e1)
    d2 = determinize(_compiled(e2), n1.alphabet)
    counterexample = _bad_word(n1, d2)
    return InclusionReport(counterexample is None, counterexample)


def nfa_language_included(n1: Nfa, n2: Nfa) -> bool:
    """Decide L(n1) <= L(n2) directly on automata.

    Lets callers test against machine-derived languages (prefix
    closures and the like) that have no expression form at hand.
    """
    d2 = determinize(n2, n1.alphabet)
    return _bad_word(n1, d2) is None


def _bad_word(n1: Nfa, d2: Dfa) -> str | None:
    """Shortest word accepted by n1 but not by d2, if any."""
    start = (n1.initial, d2.initial)
    parents: dict[tuple[int, int], tuple[tuple[int, int], str]] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        q1, q2 = pair
        if q1 in n1.accepting and q2 not in d2.accepting:
            word: list[str] = []
            while pair != start:
                pair, ch = parents[pair]
                word.append(ch)
            return "".join(reversed(word))
        for ch in sorted(n1.trans[q1]):
            t2 = d2.step(q2, ch)
            for t1 in sorted(n1.trans[q1][ch]):
                nxt = (t1, t2)
                if nxt not in seen:
                    seen.add(nxt)
                    parents[nxt] = (pair, ch)
                    queue.append(nxt)
    return None


def universality(e: RegexAst, alphabet: Iterable[str]) -> InclusionReport:
    """Decide L(e) = alphabet*; counterexamples are shortest missing words."""
    alpha = frozenset(alphabet)
    missing = symbols(e) - alpha
    if missing:
        raise PreconditionError(
            f"expression uses symbols outside the alphabet: {sorted(missing)}")
    return language_inclusion(sigma_star(alpha), e)


def concat_ast(parts: Sequence[RegexAst]) -> RegexAst:
    if not parts:
        raise PreconditionError("concatenation of zero expressions")
    acc = parts[0]
    for part in parts[1:]:
        acc = Concat(acc, part)
    return acc


def concat_inclusion(bs: Sequence[RegexAst], a: RegexAst) -> InclusionReport:
    """Decide L(b1)...L(bk) <= L(a)."""
    return language_inclusion(concat_ast(bs), a)


def truncated_words(b: RegexAst, bound: int, cap: int = DEFAULT_WORD_CAP) -> frozenset[str]:
    """All words of L(b) with length at most bound.

    Walks the NFA level by level, tracking the reachable state set per
    distinct word so duplicates collapse. Raises CapExceededError when
    the number of tracked words passes cap.
    """
    nfa = _compiled(b)
    level: dict[str, frozenset[int]] = {"": frozenset((nfa.initial,))}
    found: set[str] = set()
    total = len(level)
    for _ in range(bound + 1):
        for word, states in level.items():
            if states & nfa.accepting:
                found.add(word)
        nxt: dict[str, frozenset[int]] = {}
        for word, states in level.items():
            if len(word) == bound:
                continue
            for ch in nfa.alphabet:
                targets = frozenset(
                    t for q in states for t in nfa.successors(q, ch))
                if targets:
                    nxt[word + ch] = targets
        total += len(nxt)
        if total > cap:
            raise CapExceededError(
                f"more than {cap} words while truncating to length {bound}")
        if not nxt:
            break
        level = nxt
    return frozenset(found)


def truncation_equivalence_check(
    a: RegexAst,
    bs: Sequence[RegexAst],
    cap: int = DEFAULT_WORD_CAP,
) -> TruncationReport:
    """Evaluate concatenation inclusion twice: exactly, and with every
    factor language truncated to its size bound. See TruncationReport."""
    if not bs:
        raise PreconditionError("need at least one concatenation factor")
    n_a = _compiled(a).n_states
    bounds = tuple(n_a * _compiled(b).n_states for b in bs)

    full = concat_inclusion(bs, a)

    alpha = tuple(sorted(set().union(*(symbols(b) for b in bs)) | symbols(a)))
    dfa = determinize(_compiled(a), alpha)
    words: set[str] = {""}
    for b, bound in zip(bs, bounds):
        factor = truncated_words(b, bound, cap)
        words = {u + w for u in words for w in factor}
        if len(words) > cap:
            raise CapExceededError(
                f"more than {cap} concatenated truncated words")
    truncated_cex = None
    for word in sorted(words, key=lambda w: (len(w), w)):
        if not dfa_accepts(dfa, word):
            truncated_cex = word
            break
    return TruncationReport(
        full_holds=full.holds,
        full_counterexample=full.counterexample,
        truncated_holds=truncated_cex is None,
        truncated_counterexample=truncated_cex,
        bounds=bounds,
    )
