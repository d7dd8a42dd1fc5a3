"""String tuples and the operations of the displacement algebra.

A tuple of rank ``r`` has ``r + 1`` components; each component is a word, i.e.
a Python tuple of symbol identifiers.  Gaps are numbered from 1 (gap ``j`` sits
between components ``j - 1`` and ``j``), components from 0.
"""
from __future__ import annotations

from typing import Iterable, Sequence

Word = tuple[str, ...]


class StringTuple(tuple):
    """Immutable tuple of words.  Ordering is lexicographic on components."""

    __slots__ = ()

    def __new__(cls, components: Iterable[Sequence[str]] = ((),)) -> "StringTuple":
        comps = tuple(tuple(c) for c in components)
        if not comps:
            raise ValueError("a string tuple has at least one component")
        return super().__new__(cls, comps)

    @classmethod
    def of(cls, *components: str) -> "StringTuple":
        """Build from space-separated strings: ``StringTuple.of("a0 b0", "")``."""
        return cls(tuple(c.split()) for c in components)

    @classmethod
    def epsilon(cls, rank: int = 0) -> "StringTuple":
        """The all-empty tuple of the given rank (``(ε,ε)`` is ``epsilon(1)``)."""
        if rank < 0:
            raise ValueError("rank must be non-negative")
        return cls(() for _ in range(rank + 1))

    @property
    def rank(self) -> int:
        return len(self) - 1

    @property
    def length(self) -> int:
        return sum(len(c) for c in self)

    def is_empty(self) -> bool:
        return all(not c for c in self)

    def __repr__(self) -> str:
        return "(" + ", ".join(repr(" ".join(c)) for c in self) + ")"

    def __str__(self) -> str:
        return "|".join(" ".join(c) for c in self)


def _check_gap(u: StringTuple, j: int) -> None:
    if not 1 <= j <= u.rank:
        raise IndexError(f"gap {j} out of range for a tuple of rank {u.rank}")


def concat(x: StringTuple, y: StringTuple) -> StringTuple:
    return StringTuple(x[:-1] + (x[-1] + y[0],) + y[1:])


def intercalate(x: StringTuple, j: int, y: StringTuple) -> StringTuple:
    """Splice ``y`` into gap ``j`` of ``x``."""
    _check_gap(x, j)
    if len(y) == 1:
        return StringTuple(x[: j - 1] + (x[j - 1] + y[0] + x[j],) + x[j + 1 :])
    return StringTuple(
        x[: j - 1] + (x[j - 1] + y[0],) + y[1:-1] + (y[-1] + x[j],) + x[j + 1 :]
    )


def bridge(u: StringTuple, j: int) -> StringTuple:
    """Fuse components ``j - 1`` and ``j`` (close gap ``j``)."""
    _check_gap(u, j)
    return StringTuple(u[: j - 1] + (u[j - 1] + u[j],) + u[j + 1 :])


def split(u: StringTuple, j: int, l: int) -> StringTuple:
    """Insert ``l - 1`` empty components at gap ``j``, turning it into ``l`` gaps."""
    _check_gap(u, j)
    if l < 1:
        raise ValueError("split count must be positive")
    return StringTuple(u[:j] + ((),) * (l - 1) + u[j:])


def reshape(u: StringTuple, counts: Sequence[int]) -> StringTuple:
    """Replace every gap ``i`` of ``u`` by ``counts[i - 1]`` gaps.

    A count of 0 closes the gap, 1 keeps it, ``l >= 2`` opens ``l - 1`` empty
    components inside it.  Bridges and splits are single-gap special cases.
    """
    if len(counts) != u.rank:
        raise ValueError(f"expected {u.rank} gap counts, got {len(counts)}")
    out: list[Word] = [u[0]]
    for comp, c in zip(u[1:], counts):
        if c < 0:
            raise ValueError("gap counts must be non-negative")
        if c == 0:
            out[-1] = out[-1] + comp
        else:
            out.extend([()] * (c - 1))
            out.append(comp)
    return StringTuple(out)


def strip_right(u: StringTuple, p: int) -> StringTuple | None:
    """Drop ``p`` trailing empty components; ``None`` where undefined.

    Defined only when the last ``p`` components are empty and the component
    left at the end is not.
    """
    if p < 0:
        raise ValueError("strip count must be non-negative")
    if p > u.rank or any(u[len(u) - p :]) or not u[len(u) - 1 - p]:
        return None
    return StringTuple(u[: len(u) - p])


def strip_left(u: StringTuple, p: int) -> StringTuple | None:
    """Mirror image of :func:`strip_right`."""
    if p < 0:
        raise ValueError("strip count must be non-negative")
    if p > u.rank or any(u[:p]) or not u[p]:
        return None
    return StringTuple(u[p:])


def trailing_empty(u: StringTuple) -> int:
    """Number of empty components at the end (at most ``rank``)."""
    n = 0
    for comp in reversed(u[1:]):
        if comp:
            break
        n += 1
    return n


def leading_empty(u: StringTuple) -> int:
    n = 0
    for comp in u[:-1]:
        if comp:
            break
        n += 1
    return n


def pieces(u: StringTuple) -> list[StringTuple]:
    """Factor ``u`` into a concatenation of tuples of length at most 1.

    Every piece carries exactly one symbol, except that an all-empty ``u``
    is returned as the single piece ``[u]``.  Gaps stick to the piece whose
    symbol precedes them; gaps before the first symbol go to the first piece.
    """
    out: list[list[Word]] = [[()]]
    seen_symbol = False
    for idx, comp in enumerate(u):
        if idx:
            out[-1].append(())
        for sym in comp:
            if seen_symbol:
                out.append([()])
            out[-1][-1] = out[-1][-1] + (sym,)
            seen_symbol = True
    return [StringTuple(p) for p in out]
