"""Core value types for combinatorial neural codes.

A codeword is a finite set of neuron indices (positive integers, 1-based).
A neural code is a finite set of codewords that always contains the empty
codeword.  Everything downstream (nerve classification, obstructions,
realizations) is built over these two types plus the facet combinatorics
defined here: maximal codewords, trunks, and intersections of facets.

All values are immutable and all operations are pure functions.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional

# A codeword is represented as a frozenset of ints.  The empty codeword is
# frozenset().
Codeword = frozenset

EMPTY: Codeword = frozenset()


def word_sort_key(word: Codeword) -> tuple:
    """Canonical order on codewords: by size, then lexicographically."""
    return (len(word), tuple(sorted(word)))


def sort_words(words: Iterable[Codeword]) -> list:
    return sorted(words, key=word_sort_key)


def format_word(word: Codeword, braced: bool = False) -> str:
    """Render one codeword.

    Compact digit form when every index is a single digit and braced was not
    requested; braced form "{1,3,12}" otherwise.  The empty codeword is "{}".
    """
    elems = sorted(word)
    if not elems:
        return "{}"
    if not braced and max(elems) <= 9:
        return "".join(str(i) for i in elems)
    return "{" + ",".join(str(i) for i in elems) + "}"


class CodeParseError(ValueError):
    """Raised on malformed code text; carries the 0-based position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True, init=False)
class NeuralCode:
    """An immutable neural code: a set of codewords plus a neuron count.

    The empty codeword is added at construction if absent.  n defaults to the
    maximum index present; a larger n may be declared explicitly and is legal
    for all code-level operations, but realization operations reject codes
    whose declared top index appears in no codeword.
    """

    codewords: frozenset
    n: int

    def __init__(self, codewords: Iterable[Iterable[int]], n: Optional[int] = None):
        words = set()
        for w in codewords:
            word = frozenset(w)
            for i in word:
                if not isinstance(i, int) or i < 1:
                    raise ValueError(f"neuron index must be a positive integer, got {i!r}")
            words.add(word)
        words.add(EMPTY)
        top = max((max(w) for w in words if w), default=0)
        if n is None:
            n = top
        elif n < top:
            raise ValueError(f"declared n={n} is below the maximum index {top}")
        object.__setattr__(self, "codewords", frozenset(words))
        object.__setattr__(self, "n", int(n))

    def __contains__(self, word) -> bool:
        return frozenset(word) in self.codewords

    def __iter__(self) -> Iterator[Codeword]:
        return iter(sort_words(self.codewords))

    def __len__(self) -> int:
        return len(self.codewords)

    def support(self) -> Codeword:
        """All neuron indices that appear in some codeword."""
        out = set()
        for w in self.codewords:
            out |= w
        return frozenset(out)

    def facets(self) -> list:
        return maximal_codewords(self)


# token scanner for parse_code: braced lists, compact digit strings, separators
_TOKEN = re.compile(r"(?P<ws>[\s,;]+)|(?P<brace>\{[^{}]*\})|(?P<compact>\d+)|(?P<bad>.)")


def parse_code(text: str) -> NeuralCode:
    """Parse code text into a NeuralCode.

    Grammar: codewords separated by commas, semicolons, or whitespace.  A
    codeword is either a compact digit string such as "1357" (one neuron per
    digit, only legal while every index is at most 9) or a braced list such
    as "{1,3,12}".  Duplicates are deduplicated and the empty codeword is
    always added; n is the maximum index present.

    Mixing compact tokens with braced tokens that declare an index of 10 or
    more is refused as ambiguous, as is any digit 0.
    """
    words = []
    compact_positions = []
    max_braced = 0
    for m in _TOKEN.finditer(text):
        if m.lastgroup == "ws":
            continue
        if m.lastgroup == "bad":
            raise CodeParseError(f"unexpected character {m.group()!r}", m.start())
        if m.lastgroup == "compact":
            token = m.group()
            if "0" in token:
                raise CodeParseError("neuron index 0 is not allowed", m.start() + token.index("0"))
            words.append(frozenset(int(ch) for ch in token))
            compact_positions.append(m.start())
        else:
            inner = m.group()[1:-1].strip()
            if not inner:
                words.append(EMPTY)
                continue
            elems = set()
            for item in inner.split(","):
                item = item.strip()
                if not re.fullmatch(r"\d+", item):
                    raise CodeParseError(f"malformed braced entry {item!r}", m.start())
                idx = int(item)
                if idx < 1:
                    raise CodeParseError("neuron index 0 is not allowed", m.start())
                elems.add(idx)
            max_braced = max(max_braced, max(elems))
            words.append(frozenset(elems))
    if max_braced > 9 and compact_positions:
        raise CodeParseError(
            "compact digit token is ambiguous in a code with indices above 9; use braced form",
            compact_positions[0],
        )
    return NeuralCode(words)


def format_code(code: NeuralCode, verbose: bool = False, braced: bool = False) -> str:
    """Canonical text: codewords sorted by (size, lex), comma-separated.

    The empty codeword prints as "{}" only in verbose mode and is omitted
    otherwise.  braced forces braced form for every codeword (used by CSV).
    """
    use_braces = braced or code.support() and max(code.support()) > 9
    parts = []
    for w in sort_words(code.codewords):
        if not w and not verbose:
            continue
        parts.append(format_word(w, braced=bool(use_braces)))
    return ",".join(parts)


def maximal_codewords(code: NeuralCode) -> list:
    """The inclusion-maximal nonempty codewords, sorted canonically."""
    nonempty = [w for w in code.codewords if w]
    out = [w for w in nonempty if not any(w < other for other in nonempty)]
    return sort_words(out)


def trunk(code: NeuralCode, sigma: Iterable[int]) -> frozenset:
    """All codewords containing sigma."""
    s = frozenset(sigma)
    return frozenset(w for w in code.codewords if s <= w)


def is_face(facets: Iterable[Codeword], sigma: Iterable[int]) -> bool:
    """True iff sigma is contained in some facet."""
    s = frozenset(sigma)
    return any(s <= frozenset(f) for f in facets)


def max_intersection_faces(facets: Iterable[Codeword]) -> frozenset:
    """All nonempty intersections of two or more facets.

    Computed as the closure of pairwise intersections under intersecting
    with one more facet, which is polynomial in the output size.
    """
    fl = [frozenset(f) for f in facets]
    found = set()
    frontier = set()
    for a, b in itertools.combinations(fl, 2):
        x = a & b
        if x and x not in found:
            found.add(x)
            frontier.add(x)
    while frontier:
        nxt = set()
        for x in frontier:
            for f in fl:
                y = x & f
                if y and y not in found:
                    found.add(y)
                    nxt.add(y)
        frontier = nxt
    return frozenset(found)


@dataclass(frozen=True)
class FacetIntersectionTable:
    """Map from sets of facet positions (1-based, size >= 2) to intersections.

    Entries cover every subset of positions; the nonempty values are exactly
    the max-intersection faces of the code.
    """

    entries: tuple  # ((frozenset positions, Codeword), ...) sorted

    def as_dict(self) -> dict:
        return dict(self.entries)

    def nonempty_faces(self) -> frozenset:
        return frozenset(v for _, v in self.entries if v)


def facet_intersection_table(facets: Iterable[Codeword]) -> FacetIntersectionTable:
    fl = [frozenset(f) for f in facets]
    entries = []
    for r in range(2, len(fl) + 1):
        for positions in itertools.combinations(range(1, len(fl) + 1), r):
            inter = fl[positions[0] - 1]
            for p in positions[1:]:
                inter = inter & fl[p - 1]
            entries.append((frozenset(positions), inter))
    entries.sort(key=lambda kv: (len(kv[0]), tuple(sorted(kv[0]))))
    return FacetIntersectionTable(tuple(entries))


def is_max_intersection_complete(code: NeuralCode) -> tuple:
    """(True, empty set) iff every max-intersection face is a codeword."""
    faces = max_intersection_faces(maximal_codewords(code))
    missing = frozenset(f for f in faces if f not in code.codewords)
    return (not missing, missing)


def relabel(code: NeuralCode, perm: tuple) -> NeuralCode:
    """Apply a neuron permutation; perm[i-1] is the new label of neuron i."""
    if len(perm) < code.n:
        raise ValueError("permutation too short for this code")
    words = [frozenset(perm[i - 1] for i in w) for w in code.codewords]
    return NeuralCode(words, n=code.n)


def relabel_word(word: Codeword, perm: tuple) -> Codeword:
    return frozenset(perm[i - 1] for i in word)


def _code_key(words: frozenset) -> tuple:
    return tuple(sorted((word_sort_key(w) for w in words)))


class CanonicalForm(NamedTuple):
    code: NeuralCode
    permutation: tuple
    exact: bool


# exhaustive relabeling search is n! and stays exact up to this many neurons
_EXACT_CANON_LIMIT = 8


def canonicalize(code: NeuralCode) -> CanonicalForm:
    """Lexicographically least code over all neuron relabelings.

    Exhaustive over all n! permutations for n <= 8 (exact=True); beyond that
    a signature-refinement heuristic is used and exact=False.  Idempotent in
    both regimes.
    """
    n = code.n
    if n == 0:
        return CanonicalForm(code, (), True)
    if n <= _EXACT_CANON_LIMIT:
        best_key = None
        best = None
        for images in itertools.permutations(range(1, n + 1)):
            words = frozenset(frozenset(images[i - 1] for i in w) for w in code.codewords)
            key = _code_key(words)
            if best_key is None or key < best_key:
                best_key = key
                best = (words, images)
        words, images = best
        return CanonicalForm(NeuralCode(words, n=n), tuple(images), True)
    # heuristic: sort neurons by an occurrence signature, ties by index
    sigs = {}
    for i in range(1, n + 1):
        occ = sorted(word_sort_key(w) for w in code.codewords if i in w)
        sigs[i] = (len(occ), occ)
    order = sorted(range(1, n + 1), key=lambda i: (sigs[i], i))
    images = [0] * n
    for new_label, old in enumerate(order, start=1):
        images[old - 1] = new_label
    perm = tuple(images)
    return CanonicalForm(relabel(code, perm), perm, False)
