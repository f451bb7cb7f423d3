"""Framed affine tangle words.

A word is a sequence of elementary generators written outermost first, so
``f(4,1) t(4,2,1) g(4,1)`` applies ``g(4,1)`` first.  Words are purely
syntactic; equality up to isotopy is only ever tested through the
representation in :mod:`annular_rt.rt_rep`.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Kind",
    "Generator",
    "TangleWord",
    "TangleError",
    "WordParseError",
    "RelationInstance",
    "MalformedReading",
    "word_compose",
    "rot_as_word",
    "rot_inverse_word",
    "instantiate_relations",
    "malformed_literal_readings",
    "RELATION_IDS",
]


class TangleError(ValueError):
    pass


class WordParseError(TangleError):
    def __init__(self, msg: str, position: int):
        super().__init__(f"{msg} (at position {position})")
        self.position = position


class Kind(str, enum.Enum):
    CUP = "g"
    CAP = "f"
    CROSS = "t"
    TWIST = "w"
    ROT = "r"
    ROT_INV = "rinv"
    WIND = "s"
    # inverse of s_n^n; only produced by rot_inverse_word
    WIND_INV = "sinv"


@dataclass(frozen=True, order=True)
class Generator:
    kind: Kind
    n: int
    i: int = 0
    sign: int = 0

    def __post_init__(self):
        k, n, i, l = self.kind, self.n, self.i, self.sign
        if not isinstance(k, Kind):
            object.__setattr__(self, "kind", Kind(k))
            k = self.kind
        if k in (Kind.CUP, Kind.CAP, Kind.CROSS):
            if n < 2 or not 1 <= i <= n - 1:
                raise TangleError(f"{k.value}({n},{i}): need n >= 2 and 1 <= i <= n-1")
        elif k in (Kind.TWIST, Kind.WIND, Kind.WIND_INV):
            if n < 1 or not 1 <= i <= n:
                raise TangleError(f"{k.value}({n},{i}): need 1 <= i <= n")
        elif n < 1:
            raise TangleError(f"{k.value}({n}): need n >= 1")
        if k in (Kind.CROSS, Kind.TWIST):
            if l not in (1, 2):
                raise TangleError(f"{k.value}: sign must be 1 or 2, got {l}")
        elif l:
            raise TangleError(f"{k.value} takes no sign")
        if k in (Kind.ROT, Kind.ROT_INV) and i:
            raise TangleError(f"{k.value} takes no position")

    @property
    def domain_arity(self) -> int:
        return self.n - 2 if self.kind is Kind.CUP else self.n

    @property
    def codomain_arity(self) -> int:
        return self.n - 2 if self.kind is Kind.CAP else self.n

    def __str__(self) -> str:
        k = self.kind.value
        if self.kind in (Kind.ROT, Kind.ROT_INV):
            return f"{k}({self.n})"
        if self.kind in (Kind.CROSS, Kind.TWIST):
            return f"{k}({self.n},{self.i},{self.sign})"
        return f"{k}({self.n},{self.i})"


def cup(n: int, i: int) -> Generator:
    return Generator(Kind.CUP, n, i)


def cap(n: int, i: int) -> Generator:
    return Generator(Kind.CAP, n, i)


def cross(n: int, i: int, l: int) -> Generator:
    return Generator(Kind.CROSS, n, i, l)


def twist(n: int, i: int, l: int) -> Generator:
    return Generator(Kind.TWIST, n, i, l)


def rot(n: int) -> Generator:
    return Generator(Kind.ROT, n)


def rot_inv(n: int) -> Generator:
    return Generator(Kind.ROT_INV, n)


def wind(n: int, i: int) -> Generator:
    return Generator(Kind.WIND, n, i)


@dataclass(frozen=True)
class TangleWord:
    """Composable word; ``factors[0]`` is applied last."""

    factors: tuple[Generator, ...]
    domain_arity: int
    codomain_arity: int

    def __post_init__(self):
        if (self.domain_arity - self.codomain_arity) % 2:
            raise TangleError(f"arities {self.domain_arity}, {self.codomain_arity} differ in parity")
        cur = self.domain_arity
        for g in reversed(self.factors):
            if g.domain_arity != cur:
                raise TangleError(f"arity mismatch at {g}: expects {g.domain_arity} strands, gets {cur}")
            cur = g.codomain_arity
        if cur != self.codomain_arity:
            raise TangleError(f"word ends at {cur} strands, declared {self.codomain_arity}")

    @classmethod
    def of(cls, *factors: Generator, arity: int | None = None) -> "TangleWord":
        if not factors:
            if arity is None:
                raise TangleError("empty word needs an explicit arity")
            return cls((), arity, arity)
        return cls(tuple(factors), factors[-1].domain_arity, factors[0].codomain_arity)

    @classmethod
    def identity(cls, n: int) -> "TangleWord":
        return cls((), n, n)

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.factors)

    def application_order(self) -> Iterator[Generator]:
        return reversed(self.factors)

    def compose(self, inner: "TangleWord") -> "TangleWord":
        return word_compose(self, inner)

    def __matmul__(self, inner: "TangleWord") -> "TangleWord":
        return word_compose(self, inner)

    def power(self, k: int) -> "TangleWord":
        if self.domain_arity != self.codomain_arity:
            raise TangleError("only (n,n)-words have powers")
        return TangleWord(self.factors * k, self.domain_arity, self.codomain_arity)

    def simplify(self) -> "TangleWord":
        """Cancel adjacent ``r(n) rinv(n)`` pairs; nothing else."""
        out: list[Generator] = []
        inverse = {Kind.ROT: Kind.ROT_INV, Kind.ROT_INV: Kind.ROT}
        for g in self.factors:
            if out and g.kind in inverse and out[-1].kind is inverse[g.kind] and out[-1].n == g.n:
                out.pop()
            else:
                out.append(g)
        return TangleWord(tuple(out), self.domain_arity, self.codomain_arity)

    def __str__(self) -> str:
        return " ".join(str(g) for g in self.factors)

    _TOKEN = re.compile(r"\s*(rinv|sinv|[gftwrs])\s*\(\s*(-?\d+)\s*(?:,\s*(-?\d+)\s*)?(?:,\s*(-?\d+)\s*)?\)\s*")

    @classmethod
    def parse(cls, text: str, arity: int | None = None) -> "TangleWord":
        factors = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = cls._TOKEN.match(text, pos)
            if not m:
                start = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise WordParseError(f"unrecognised token {text[start:start + 12]!r}", start)
            kind = Kind(m.group(1))
            args = [int(a) for a in m.group(2, 3, 4) if a is not None]
            try:
                factors.append(_make(kind, args))
            except TangleError as exc:
                raise WordParseError(str(exc), m.start(1)) from None
            pos = m.end()
        if not factors:
            if arity is None:
                raise WordParseError("empty word needs an explicit arity", 0)
            return cls.identity(arity)
        word = cls.of(*factors)
        if arity is not None and word.domain_arity != arity:
            raise TangleError(f"word has domain arity {word.domain_arity}, expected {arity}")
        return word


_ARGC = {Kind.CUP: 2, Kind.CAP: 2, Kind.CROSS: 3, Kind.TWIST: 3, Kind.ROT: 1,
         Kind.ROT_INV: 1, Kind.WIND: 2, Kind.WIND_INV: 2}


def _make(kind: Kind, args: list[int]) -> Generator:
    if len(args) != _ARGC[kind]:
        raise TangleError(f"{kind.value} takes {_ARGC[kind]} arguments, got {len(args)}")
    return Generator(kind, *args)


def word_compose(outer: TangleWord, inner: TangleWord) -> TangleWord:
    if outer.domain_arity != inner.codomain_arity:
        raise TangleError(f"cannot compose: outer word takes {outer.domain_arity} strands, "
                          f"inner word produces {inner.codomain_arity}")
    return TangleWord(outer.factors + inner.factors, inner.domain_arity, outer.codomain_arity)


def rot_as_word(n: int, sign: int = 1) -> TangleWord:
    """r_n = s_n^n o t_n^{n-1}(sign) o ... o t_n^1(sign)."""
    if n < 1:
        raise TangleError("rotation needs n >= 1")
    ts = [cross(n, i, sign) for i in range(n - 1, 0, -1)]
    return TangleWord.of(wind(n, n), *ts)


def rot_inverse_word(n: int, sign: int = 1) -> TangleWord:
    """Inverse of ``rot_as_word(n, sign)``: reversed chain with swapped sign, then s^-1."""
    other = 3 - sign
    ts = [cross(n, i, other) for i in range(1, n)]
    return TangleWord.of(*ts, Generator(Kind.WIND_INV, n, n))


# -- relation list -------------------------------------------------------

RELATION_IDS = tuple(range(1, 22))


@dataclass(frozen=True)
class RelationInstance:
    relation_id: int
    reading: str  # "standard", "literal" or "corrected"
    params: tuple[tuple[str, int], ...]
    lhs: TangleWord
    rhs: TangleWord

    @property
    def param_dict(self) -> dict[str, int]:
        return dict(self.params)

    def __str__(self) -> str:
        lhs = str(self.lhs) or f"id({self.lhs.domain_arity})"
        rhs = str(self.rhs) or f"id({self.rhs.domain_arity})"
        return f"{lhs} = {rhs}"


@dataclass(frozen=True)
class MalformedReading:
    relation_id: int
    reading: str
    text: str
    reason: str


def _w(*gens: Generator, arity: int | None = None) -> TangleWord:
    return TangleWord.of(*gens, arity=arity)


def _ids(n: int) -> TangleWord:
    return TangleWord.identity(n)


def _safe(build) -> TangleWord | None:
    try:
        return build()
    except TangleError:
        return None


def _relations_for(N: int) -> Iterator[tuple[int, str, dict, callable, callable]]:
    """Candidate (id, reading, params, lhs builder, rhs builder) at strand count N.

    Builders may raise TangleError; such candidates are skipped.
    """
    L = (1, 2)
    # (1) zigzags
    for i in range(1, N - 1):
        yield 1, "standard", dict(n=N, i=i, eq=1), lambda i=i: _w(cap(N, i), cup(N, i + 1)), lambda: _ids(N - 2)
        yield 1, "standard", dict(n=N, i=i, eq=2), lambda i=i: _w(cap(N, i + 1), cup(N, i)), lambda: _ids(N - 2)
    # (2) Reidemeister I against the framing twist
    for i in range(1, N):
        for l in L:
            for d, p in ((1, i), (-1, i - 1)):
                yield (2, "standard", dict(n=N, i=i, l=l, offset=d),
                       lambda i=i, l=l, d=d: _w(cap(N, i), cross(N, i + d, l), cup(N, i)),
                       lambda l=l, p=p: _w(twist(N - 2, p, l)))
    # (3) crossing inverses
    for i in range(1, N):
        yield 3, "standard", dict(n=N, i=i, eq=1), lambda i=i: _w(cross(N, i, 2), cross(N, i, 1)), lambda: _ids(N)
        yield 3, "standard", dict(n=N, i=i, eq=2), lambda i=i: _w(cross(N, i, 1), cross(N, i, 2)), lambda: _ids(N)
    # (4) braid relation
    for i in range(1, N - 1):
        for l in L:
            yield (4, "standard", dict(n=N, i=i, l=l),
                   lambda i=i, l=l: _w(cross(N, i, l), cross(N, i + 1, l), cross(N, i, l)),
                   lambda i=i, l=l: _w(cross(N, i + 1, l), cross(N, i, l), cross(N, i + 1, l)))
    # (5)-(11): far commutation; k ranges over offsets giving disjoint pieces
    for i in range(1, N + 2):
        for k in range(2, N + 2):
            P = dict(n=N, i=i, k=k)
            yield (5, "standard", P, lambda i=i, k=k: _w(cup(N + 2, i + k), cup(N, i)),
                   lambda i=i, k=k: _w(cup(N + 2, i), cup(N, i + k - 2)))
            yield (6, "standard", P, lambda i=i, k=k: _w(cap(N, i + k - 2), cap(N + 2, i)),
                   lambda i=i, k=k: _w(cap(N, i), cap(N + 2, i + k)))
            yield (7, "standard", dict(P, eq=1), lambda i=i, k=k: _w(cup(N, i + k - 2), cap(N, i)),
                   lambda i=i, k=k: _w(cap(N + 2, i), cup(N + 2, i + k)))
            yield (7, "standard", dict(P, eq=2), lambda i=i, k=k: _w(cup(N, i), cap(N, i + k - 2)),
                   lambda i=i, k=k: _w(cap(N + 2, i + k), cup(N + 2, i)))
            for l in L:
                Pl = dict(P, l=l)
                yield (8, "standard", dict(Pl, eq=1), lambda i=i, k=k, l=l: _w(cup(N, i), cross(N - 2, i + k - 2, l)),
                       lambda i=i, k=k, l=l: _w(cross(N, i + k, l), cup(N, i)))
                yield (8, "standard", dict(Pl, eq=2), lambda i=i, k=k, l=l: _w(cup(N, i + k), cross(N - 2, i, l)),
                       lambda i=i, k=k, l=l: _w(cross(N, i, l), cup(N, i + k)))
                yield (9, "standard", dict(Pl, eq=1), lambda i=i, k=k, l=l: _w(cap(N, i), cross(N, i + k, l)),
                       lambda i=i, k=k, l=l: _w(cross(N - 2, i + k - 2, l), cap(N, i)))
                yield (9, "standard", dict(Pl, eq=2), lambda i=i, k=k, l=l: _w(cap(N, i + k), cross(N, i, l)),
                       lambda i=i, k=k, l=l: _w(cross(N - 2, i, l), cap(N, i + k)))
                for l2 in L:
                    yield (10, "standard", dict(Pl, m=l2),
                           lambda i=i, k=k, l=l, l2=l2: _w(cross(N, i, l), cross(N, i + k, l2)),
                           lambda i=i, k=k, l=l, l2=l2: _w(cross(N, i + k, l2), cross(N, i, l)))
    for i in range(1, N - 1):
        yield (11, "standard", dict(n=N, i=i, eq=1), lambda i=i: _w(cross(N, i, 1), cup(N, i + 1)),
               lambda i=i: _w(cross(N, i + 1, 2), cup(N, i)))
        yield (11, "standard", dict(n=N, i=i, eq=2), lambda i=i: _w(cross(N, i, 2), cup(N, i + 1)),
               lambda i=i: _w(cross(N, i + 1, 1), cup(N, i)))
    # (12)-(15) rotation
    yield 12, "standard", dict(n=N, eq=1), lambda: _w(rot(N), rot_inv(N)), lambda: _ids(N)
    yield 12, "standard", dict(n=N, eq=2), lambda: _w(rot_inv(N), rot(N)), lambda: _ids(N)
    for i in range(1, N - 1):
        yield (13, "standard", dict(n=N, i=i), lambda i=i: _w(rot_inv(N - 2), cap(N, i), rot(N)),
               lambda i=i: _w(cap(N, i + 1)))
        yield (14, "standard", dict(n=N, i=i), lambda i=i: _w(rot_inv(N), cup(N, i), rot(N - 2)),
               lambda i=i: _w(cup(N, i + 1)))
        for l in L:
            yield (15, "standard", dict(n=N, i=i, l=l), lambda i=i, l=l: _w(rot_inv(N), cross(N, i, l), rot(N)),
                   lambda i=i, l=l: _w(cross(N, i + 1, l)))
    yield 13, "standard", dict(n=N, i=N - 1), lambda: _w(cap(N, N - 1), rot(N), rot(N)), lambda: _w(cap(N, 1))
    yield 14, "standard", dict(n=N, i=N - 1), lambda: _w(rot_inv(N), rot_inv(N), cup(N, N - 1)), lambda: _w(cup(N, 1))
    for l in L:
        yield (15, "standard", dict(n=N, i=N - 1, l=l),
               lambda l=l: _w(rot_inv(N), rot_inv(N), cross(N, N - 1, l), rot(N), rot(N)),
               lambda l=l: _w(cross(N, 1, l)))
    # (16)-(21) framing twists
    for i in range(1, N + 1):
        yield 16, "standard", dict(n=N, i=i), lambda i=i: _w(twist(N, i, 1), twist(N, i, 2)), lambda: _ids(N)
        for j in range(1, N + 1):
            if j == i:
                continue
            for k in L:
                for l in L:
                    yield (16, "standard", dict(n=N, i=i, j=j, k=k, l=l),
                           lambda i=i, j=j, k=k, l=l: _w(twist(N, i, l), twist(N, j, k)),
                           lambda i=i, j=j, k=k, l=l: _w(twist(N, j, k), twist(N, i, l)))
    for k in L:
        for i in range(1, N):
            # (17) first equation: the hat is framing notation
            for reading in ("literal", "corrected"):
                yield (17, reading, dict(n=N, i=i, k=k, eq=1),
                       lambda i=i, k=k: _w(twist(N, i, k), cup(N, i)),
                       lambda i=i, k=k: _w(twist(N, i + 1, k), cup(N, i)))
            # (18) first equation
            for reading in ("literal", "corrected"):
                yield (18, reading, dict(n=N, i=i, k=k, eq=1),
                       lambda i=i, k=k: _w(cap(N, i), twist(N, i, k)),
                       lambda i=i, k=k: _w(cap(N, i), twist(N, i + 1, k)))
            for l in L:
                yield (19, "standard", dict(n=N, i=i, k=k, l=l, eq=1),
                       lambda i=i, k=k, l=l: _w(twist(N, i, k), cross(N, i, l)),
                       lambda i=i, k=k, l=l: _w(twist(N, i + 1, k), cross(N, i, l)))
                # (20) corrected: a twist slides through a crossing
                yield (20, "corrected", dict(n=N, i=i, k=k, l=l, eq=1),
                       lambda i=i, k=k, l=l: _w(cross(N, i, l), twist(N, i, k)),
                       lambda i=i, k=k, l=l: _w(twist(N, i + 1, k), cross(N, i, l)))
        for j in range(1, N):
            for i in range(1, N + 1):
                if i in (j, j + 1):
                    continue
                inner = i if i < j else i - 2
                yield (17, "corrected", dict(n=N, i=i, j=j, k=k, eq=2),
                       lambda i=i, j=j, k=k: _w(twist(N, i, k), cup(N, j)),
                       lambda j=j, k=k, inner=inner: _w(cup(N, j), twist(N - 2, inner, k)))
                yield (18, "corrected", dict(n=N, i=i, j=j, k=k, eq=2),
                       lambda i=i, j=j, k=k: _w(cap(N, j), twist(N, i, k)),
                       lambda j=j, k=k, inner=inner: _w(twist(N - 2, inner, k), cap(N, j)))
                for l in L:
                    yield (19, "standard", dict(n=N, i=i, j=j, k=k, l=l, eq=2),
                           lambda i=i, j=j, k=k, l=l: _w(twist(N, i, k), cross(N, j, l)),
                           lambda i=i, j=j, k=k, l=l: _w(cross(N, j, l), twist(N, i, k)))
                    yield (20, "corrected", dict(n=N, i=i, j=j, k=k, l=l, eq=2),
                           lambda i=i, j=j, k=k, l=l: _w(twist(N, i, k), cross(N, j, l)),
                           lambda i=i, j=j, k=k, l=l: _w(cross(N, j, l), twist(N, i, k)))
        for i in range(1, N + 1):
            yield (21, "standard", dict(n=N, i=i, k=k, eq=1),
                   lambda i=i, k=k: _w(twist(N, i, k), rot(N)),
                   lambda i=i, k=k: _w(rot(N), twist(N, i - 1, k)))
            yield (21, "standard", dict(n=N, i=i, k=k, eq=2),
                   lambda i=i, k=k: _w(twist(N, i, k), rot_inv(N)),
                   lambda i=i, k=k: _w(rot_inv(N), twist(N, i + 1, k)))


def instantiate_relations(n: int) -> list[RelationInstance]:
    """Every arity-valid instance of the relation list with strand counts <= n.

    Instances are ordered by relation id, then by parameters.
    """
    if n < 2:
        raise TangleError("relation instantiation needs n >= 2")
    seen = set()
    out = []
    for N in range(1, n + 1):
        for rid, reading, params, lb, rb in _relations_for(N):
            lhs, rhs = _safe(lb), _safe(rb)
            if lhs is None or rhs is None:
                continue
            if (lhs.domain_arity, lhs.codomain_arity) != (rhs.domain_arity, rhs.codomain_arity):
                continue
            if max(_max_strands(lhs), _max_strands(rhs)) > n:
                continue
            key = (rid, reading, lhs, rhs)
            if key in seen:
                continue
            seen.add(key)
            out.append(RelationInstance(rid, reading, tuple(sorted(params.items())), lhs, rhs))
    out.sort(key=lambda r: (r.relation_id, r.reading, r.params))
    return out


def _max_strands(word: TangleWord) -> int:
    return max([g.n for g in word.factors] + [word.domain_arity, word.codomain_arity])


def malformed_literal_readings() -> list[MalformedReading]:
    """Stated relations whose literal reading has no well-formed instance."""
    return [
        MalformedReading(17, "literal", "w_n^i(k) o g_n^j = g_n^j o w_n^{i+1+-1}(k)",
                         "right side feeds an n-strand twist into g_n^j, which takes n-2 strands"),
        MalformedReading(18, "literal", "w_n^i(k) o f_n^j = f_n^j o w_n^{i-1+-1}(k)",
                         "left side feeds the (n-2)-strand output of f_n^j into an n-strand twist"),
        MalformedReading(20, "literal", "t_n^i o w_n^i(k) = f_n^i o w_n^{i+1}(k)",
                         "crossing sign missing and sides have codomains n and n-2"),
        MalformedReading(20, "literal", "w_n^i(k) o f_n^j = t_n^j o w_n^i(k)",
                         "left side feeds the (n-2)-strand output of f_n^j into an n-strand twist"),
    ]
