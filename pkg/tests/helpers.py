"""Enumeration-based oracles used to check the automata pipeline.

Everything here evaluates regex semantics directly on the AST, without
NFAs or DFAs, so agreement with the library is meaningful evidence.
"""

from __future__ import annotations

from collections import deque
from itertools import product
from typing import Iterable, Iterator, Sequence

from rgphom.languages import concat_inclusion
from rgphom.regexes import Concat, RegexAst, Star, Sym, Union
from rgphom.rgp import Rgp


def words_of(node: RegexAst, limit: int) -> set[str]:
    """All words of L(node) no longer than limit, by direct semantics."""
    if isinstance(node, Sym):
        return {node.char} if limit >= 1 else set()
    if isinstance(node, Union):
        return words_of(node.left, limit) | words_of(node.right, limit)
    if isinstance(node, Concat):
        out = set()
        for u in words_of(node.left, limit):
            for v in words_of(node.right, limit - len(u)):
                out.add(u + v)
        return out
    if isinstance(node, Star):
        base = words_of(node.child, limit)
        closure = {""}
        frontier = {""}
        while frontier:
            extended = set()
            for u in frontier:
                for w in base:
                    uw = u + w
                    if len(uw) <= limit and uw not in closure:
                        closure.add(uw)
                        extended.add(uw)
            frontier = extended
        return closure
    raise TypeError(node)


def all_words(alphabet: Iterable[str], limit: int) -> Iterator[str]:
    alpha = sorted(alphabet)
    for length in range(limit + 1):
        for combo in product(alpha, repeat=length):
            yield "".join(combo)


def inclusion_by_enumeration(e1: RegexAst, e2: RegexAst,
                             alphabet: Iterable[str], limit: int) -> str | None:
    """Shortest word of L(e1) - L(e2) up to limit, scanning all words."""
    left = words_of(e1, limit)
    right = words_of(e2, limit)
    for word in sorted(left, key=lambda w: (len(w), w)):
        if word not in right:
            return word
    return None


def all_walks(q: Rgp, start: str, max_len: int) -> Iterator[tuple[int, ...]]:
    """Every walk from start of length 1..max_len, shortest first, ties
    in arc index order."""
    out: dict[str, list[int]] = {v: [] for v in q.vertices}
    for i, arc in enumerate(q.arcs):
        out[arc.src].append(i)
    queue: deque[tuple[str, tuple[int, ...]]] = deque([(start, ())])
    while queue:
        vertex, walk = queue.popleft()
        if walk:
            yield walk
        if len(walk) < max_len:
            for i in out[vertex]:
                queue.append((q.arcs[i].dst, walk + (i,)))


def walk_qualifies(q: Rgp, walk: Sequence[int], e: RegexAst) -> bool:
    """Whether every word readable along the walk matches e."""
    labels = [q.arcs[i].label for i in walk]
    return concat_inclusion(labels, e).holds
