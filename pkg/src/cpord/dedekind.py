"""Dedekind sections, completion and remainder of suborders of ordinals.

A :class:`SubOrder` is a finite union of convex blocks of an ambient
ordinal. Because a suborder of an ordinal is well ordered, ``min B``
always exists for a cut ``<A, B>``, so a cut is a Dedekind section
exactly when ``A`` has no maximum. With ``A`` and ``B`` both required to be
closed, that leaves one section after each block that is open on the
right, and no others.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

from cpord.errors import ValidationError
from cpord.ordinal import (
    Kind,
    Ordinal,
    classify,
    format_ordinal,
    ordinal_from_json,
    ordinal_to_json,
    predecessor,
    successor,
)

__all__ = [
    "Block",
    "SubOrder",
    "GapPoint",
    "make_suborder",
    "dedekind_sections",
    "remainder",
    "closure_remainder_oracle",
    "completion_order",
    "gap_characteristic",
]


@dataclass(frozen=True)
class Block:
    """The interval ``[start, end]`` or, with ``end_included=False``, ``[start, end)``."""

    start: Ordinal
    end: Ordinal
    end_included: bool = True

    @classmethod
    def closed(cls, start, end) -> "Block":
        return cls(Ordinal.of(start), Ordinal.of(end), True)

    @classmethod
    def half_open(cls, start, end) -> "Block":
        return cls(Ordinal.of(start), Ordinal.of(end), False)

    def __contains__(self, x) -> bool:
        x = Ordinal.of(x)
        if x < self.start:
            return False
        return x <= self.end if self.end_included else x < self.end

    @property
    def bound(self) -> Ordinal:
        """Least ordinal above every point of the block."""
        return successor(self.end) if self.end_included else self.end

    def to_json(self) -> dict:
        return {
            "start": ordinal_to_json(self.start),
            "end": ordinal_to_json(self.end),
            "end_included": self.end_included,
        }

    @classmethod
    def from_json(cls, data) -> "Block":
        try:
            return cls(
                ordinal_from_json(data["start"]),
                ordinal_from_json(data["end"]),
                bool(data.get("end_included", True)),
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed block JSON: {data!r}") from exc

    def __str__(self):
        close = "]" if self.end_included else ")"
        return f"[{format_ordinal(self.start)}, {format_ordinal(self.end)}{close}"


@dataclass(frozen=True)
class SubOrder:
    ambient: Ordinal
    blocks: Tuple[Block, ...]

    def __contains__(self, x) -> bool:
        return any(x in b for b in self.blocks)

    def to_json(self) -> dict:
        return {
            "ambient": ordinal_to_json(self.ambient),
            "blocks": [b.to_json() for b in self.blocks],
        }

    @classmethod
    def from_json(cls, data) -> "SubOrder":
        try:
            ambient = ordinal_from_json(data["ambient"])
            blocks = [Block.from_json(b) for b in data["blocks"]]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed SubOrder JSON: {data!r}") from exc
        return make_suborder(ambient, blocks)

    def __str__(self):
        return " + ".join(str(b) for b in self.blocks) or "{}"


@dataclass(frozen=True)
class GapPoint:
    """The section whose left part is the union of the first ``left_part`` blocks."""

    left_part: int
    sup_in_ambient: Ordinal

    def to_json(self) -> dict:
        return {"left_part": self.left_part, "sup": ordinal_to_json(self.sup_in_ambient)}

    def __str__(self):
        return f"gap({format_ordinal(self.sup_in_ambient)})"


def _normalize_block(b: Block) -> Block:
    if b.end_included:
        if b.end < b.start:
            raise ValidationError(f"empty block {b}: end lies before start")
        return b
    if b.end <= b.start:
        raise ValidationError(f"empty block {b}")
    if classify(b.end) is Kind.SUCCESSOR:
        return Block(b.start, predecessor(b.end), True)
    return b


def make_suborder(ambient, raw_blocks: Iterable[Block]) -> SubOrder:
    """Sort, validate and merge blocks into canonical form.

    Adjacent blocks such as ``[0, 3]`` and ``[4, 7]`` are merged; a block
    open at a successor end, ``[a, b+1)``, becomes ``[a, b]``.
    """
    ambient = Ordinal.of(ambient)
    blocks = sorted((_normalize_block(b) for b in raw_blocks), key=lambda b: (b.start, b.bound))
    for b in blocks:
        if b.bound > ambient:
            raise ValidationError(f"block {b} is not contained in {format_ordinal(ambient)}")
    merged: List[Block] = []
    for b in blocks:
        if merged:
            prev = merged[-1]
            if b.start < prev.bound:
                raise ValidationError(f"overlapping blocks {prev} and {b}")
            if b.start == prev.bound:
                merged[-1] = Block(prev.start, b.end, b.end_included)
                continue
        merged.append(b)
    return SubOrder(ambient, tuple(merged))


def dedekind_sections(X: SubOrder) -> List[GapPoint]:
    """All Dedekind sections of ``X``, ascending by their supremum."""
    return [
        GapPoint(j + 1, b.end)
        for j, b in enumerate(X.blocks)
        if not b.end_included
    ]


def remainder(X: SubOrder) -> List[Ordinal]:
    return [g.sup_in_ambient for g in dedekind_sections(X)]


def _is_limit_point(blocks: Sequence[Block], p: Ordinal) -> bool:
    # p is a limit point of the union iff p is a limit ordinal and some
    # block meets every interval (beta, p) with beta < p.
    if classify(p) is not Kind.LIMIT:
        return False
    for b in blocks:
        if b.start >= p:
            continue
        if b.end >= p:
            return True
    return False


def closure_remainder_oracle(X: Union[SubOrder, Tuple[Ordinal, Sequence[Block]]]) -> List[Ordinal]:
    """``Cl(X) \\ X`` inside ``ambient + 1``, computed from limit points.

    Works on a canonical :class:`SubOrder` or on a raw ``(ambient, blocks)``
    pair of disjoint blocks that has not been merged, so it can serve as a
    cross-check of :func:`remainder`.
    """
    if isinstance(X, SubOrder):
        ambient, blocks = X.ambient, X.blocks
    else:
        ambient, blocks = Ordinal.of(X[0]), list(X[1])

    def member(p):
        return any(p in b for b in blocks)

    # a limit point of a finite union of intervals lies in some block
    # or is the supremum of one
    candidates = {b.end for b in blocks} | {b.start for b in blocks}
    out = [
        p
        for p in candidates
        if p <= ambient and not member(p) and _is_limit_point(blocks, p)
    ]
    return sorted(out)


def completion_order(X: SubOrder) -> List[Union[Block, GapPoint]]:
    """Blocks of ``X`` interleaved with its sections in increasing order."""
    gaps = {g.left_part: g for g in dedekind_sections(X)}
    out: List[Union[Block, GapPoint]] = []
    for j, b in enumerate(X.blocks, start=1):
        out.append(b)
        if j in gaps:
            out.append(gaps[j])
    return out


def gap_characteristic(X: SubOrder, gap: GapPoint) -> Tuple[Tuple[Block, int], ...]:
    """Characteristic function of the right part ``B`` of a section, blockwise.

    Both parts of a section are clopen in ``X``, so the indicator of ``B``
    is a continuous {0,1}-function on ``X``.
    """
    if gap not in dedekind_sections(X):
        raise ValidationError(f"{gap} is not a Dedekind section of {X}")
    return tuple((b, int(j >= gap.left_part)) for j, b in enumerate(X.blocks))
