"""Annular crossingless matchings Cross(m, n).

Outer points are labelled 1..N with N = m + 2n, counterclockwise; the
``m`` through strands end on the inner circle.  A matching is stored as its
set of cups (unordered outer pairs); with m >= 1 this determines the
diagram, because each cup must bound the side that holds no through point.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .laurent import LaurentPoly
from .tangles import Generator, Kind, TangleWord

__all__ = [
    "MatchingError",
    "Matching",
    "MatchingCombinatorics",
    "RotationDecomposition",
    "matching_validate",
    "enumerate_matchings",
    "combinatorics",
    "is_good",
    "decompose",
    "good_to_word",
    "cup_insertion_orders",
]


class MatchingError(ValueError):
    pass


def _norm_pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Matching:
    m: int
    n: int
    cups: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return self.m + 2 * self.n

    @property
    def through(self) -> tuple[int, ...]:
        used = {p for c in self.cups for p in c}
        return tuple(p for p in range(1, self.size + 1) if p not in used)

    @classmethod
    def identity(cls, m: int) -> "Matching":
        return matching_validate(m, 0, [])

    def shift(self, k: int) -> "Matching":
        """Add ``k`` to every label, mod m + 2n."""
        N = self.size
        moved = [tuple(((p - 1 + k) % N) + 1 for p in c) for c in self.cups]
        return Matching(self.m, self.n, _canonical(moved))

    def partner(self, p: int) -> int | None:
        for a, b in self.cups:
            if p == a:
                return b
            if p == b:
                return a
        return None

    def __str__(self) -> str:
        cups = ",".join(f"[{a},{b}]" for a, b in self.cups)
        return f"m={self.m} n={self.n} cups=[{cups}]"

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "cups": [list(c) for c in self.cups]}

    @classmethod
    def from_json(cls, data) -> "Matching":
        if isinstance(data, str):
            data = json.loads(data)
        return matching_validate(int(data["m"]), int(data["n"]), data["cups"])

    _TEXT = re.compile(r"^\s*m\s*=\s*(\d+)\s+n\s*=\s*(\d+)\s+cups\s*=\s*(\[.*\])\s*$")

    @classmethod
    def parse(cls, text: str) -> "Matching":
        """Accepts ``m=2 n=1 cups=[[4,1]]`` or the JSON object form."""
        s = text.strip()
        if s.startswith("{"):
            return cls.from_json(s)
        mt = cls._TEXT.match(s)
        if not mt:
            raise MatchingError(f"cannot parse matching {text!r}; expected 'm=<int> n=<int> cups=[[a,b],...]'")
        try:
            cups = json.loads(mt.group(3))
        except json.JSONDecodeError as exc:
            raise MatchingError(f"bad cup list: {exc}") from None
        return matching_validate(int(mt.group(1)), int(mt.group(2)), cups)


def _canonical(cups) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(_norm_pair(*c) for c in cups))


def _reduce(N: int, cups: Sequence[tuple[int, int]]) -> tuple[bool, list[str]]:
    """Strip circularly adjacent cups until none remain or we get stuck."""
    alive = list(range(1, N + 1))
    pending = {frozenset(c) for c in cups}
    trace = []
    while pending:
        L = len(alive)
        for idx in range(L):
            a, b = alive[idx], alive[(idx + 1) % L]
            if L > 1 and frozenset((a, b)) in pending:
                pending.discard(frozenset((a, b)))
                alive = [p for p in alive if p not in (a, b)]
                trace.append(f"removed adjacent cup {{{a},{b}}}")
                break
        else:
            left = sorted(tuple(sorted(c)) for c in pending)
            trace.append(f"stuck: no remaining cup among {left} has adjacent endpoints in {alive}")
            return False, trace
    return True, trace


def matching_validate(m: int, n: int, cups) -> Matching:
    if m < 1:
        raise MatchingError("m must be >= 1 (the m = 0 pair-set representation is ambiguous)")
    if n < 0:
        raise MatchingError("n must be >= 0")
    N = m + 2 * n
    pairs = []
    for c in cups:
        c = tuple(int(x) for x in c)
        if len(c) != 2 or c[0] == c[1]:
            raise MatchingError(f"cup {list(c)} is not a pair of distinct points")
        for p in c:
            if not 1 <= p <= N:
                raise MatchingError(f"point {p} outside 1..{N}")
        pairs.append(c)
    if len(pairs) != n:
        raise MatchingError(f"expected {n} cups, got {len(pairs)}")
    used = [p for c in pairs for p in c]
    if len(set(used)) != len(used):
        raise MatchingError("cups overlap")
    ok, trace = _reduce(N, pairs)
    if not ok:
        raise MatchingError("not crossingless: " + "; ".join(trace))
    return Matching(m, n, _canonical(pairs))


def enumerate_matchings(m: int, n: int) -> list[Matching]:
    """All of Cross(m, n), in lexicographic order of the sorted cup lists.

    Builds non-crossing configurations directly: a cup is an adjacent pair
    after earlier removals, so every valid matching arises by peeling.
    """
    if m < 1 or n < 0:
        raise MatchingError("need m >= 1 and n >= 0")
    N = m + 2 * n
    found: set[tuple] = set()

    def rec(alive: tuple[int, ...], cups: tuple, left: int):
        if left == 0:
            found.add(_canonical(cups))
            return
        L = len(alive)
        for idx in range(L):
            a, b = alive[idx], alive[(idx + 1) % L]
            rest = tuple(p for p in alive if p not in (a, b))
            rec(rest, cups + ((a, b),), left - 1)

    rec(tuple(range(1, N + 1)), (), n)
    return [Matching(m, n, c) for c in sorted(found)]


@dataclass(frozen=True)
class MatchingCombinatorics:
    c_set: tuple[tuple[int, int], ...]
    t_set: tuple[tuple[int, ...], ...]
    sgn: dict
    d_set: tuple[int, ...]


def combinatorics(alpha: Matching) -> MatchingCombinatorics:
    """Arcs, transversals with their q-signs, and through points."""
    arcs = alpha.cups
    t_set = []
    sgn = {}
    for choice in itertools.product((0, 1), repeat=len(arcs)):
        S = tuple(sorted(arc[c] for arc, c in zip(arcs, choice)))
        t_set.append(S)
        sgn[S] = LaurentPoly.monomial((-1) ** sum(choice), sum(choice))
    t_set.sort()
    return MatchingCombinatorics(arcs, tuple(t_set), sgn, alpha.through)


def is_good(alpha: Matching) -> bool:
    """No cup straddles the cut between the last label and label 1."""
    through = alpha.through
    return all(not any(a < d < b for d in through) for a, b in alpha.cups)


@dataclass(frozen=True)
class RotationDecomposition:
    k: int
    beta: Matching


def decompose(alpha: Matching) -> RotationDecomposition:
    """Smallest k >= 0 with alpha shifted by +k good; then alpha = r^k beta."""
    for k in range(alpha.size):
        beta = alpha.shift(k)
        if is_good(beta):
            return RotationDecomposition(k, beta)
    raise MatchingError(f"no rotation of {alpha} is good")


def _peel(beta: Matching, pick) -> list[Generator]:
    """Factors (outermost first) rebuilding a good matching from the identity."""
    N = beta.size
    labels = list(range(1, N + 1))
    cups = {frozenset(c) for c in beta.cups}
    gens = []
    while cups:
        cand = [j for j in range(len(labels) - 1) if frozenset((labels[j], labels[j + 1])) in cups]
        if not cand:
            raise MatchingError(f"{beta} is not good")
        j = pick(cand)
        gens.append(Generator(Kind.CUP, len(labels), j + 1))
        cups.discard(frozenset((labels[j], labels[j + 1])))
        del labels[j:j + 2]
    return gens


def good_to_word(beta: Matching) -> TangleWord:
    """Cup word from m strands to m + 2n strands whose diagram is ``beta``."""
    if not is_good(beta):
        raise MatchingError(f"{beta} is not good")
    return TangleWord.of(*_peel(beta, min), arity=beta.m)


def cup_insertion_orders(beta: Matching) -> Iterator[TangleWord]:
    """Every cup word for ``beta``, one per valid peeling order."""
    if not is_good(beta):
        raise MatchingError(f"{beta} is not good")

    def rec(labels: list[int], cups: frozenset, prefix: list[Generator]):
        if not cups:
            yield TangleWord.of(*prefix, arity=beta.m)
            return
        for j in range(len(labels) - 1):
            pair = frozenset((labels[j], labels[j + 1]))
            if pair in cups:
                yield from rec(labels[:j] + labels[j + 2:], cups - {pair},
                               prefix + [Generator(Kind.CUP, len(labels), j + 1)])

    yield from rec(list(range(1, beta.size + 1)), frozenset(frozenset(c) for c in beta.cups), [])
