"""Metric tree over the free group on two generators.

The space is the 4-regular infinite tree whose vertices are reduced words
over {a, a^-1, b, b^-1} and whose edges are unit-length segments.  Letters
are encoded 0..3 with inverses paired 0<->1 and 2<->3.  A point is stored
as the word of the deeper endpoint of its edge plus the offset from the
shallower endpoint, so the vertex ``w`` itself is ``(w, 1.0)`` on its
incoming edge and the root is the special point ``((), 0.0)``.

Geodesics run through the deepest common ancestor; the geodesic point at a
given arc length is found by walking the decomposition rather than by a
case-split formula, and is validated by the half-distance identities in the
test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, TagMismatch
from ..tolerances import POINT_SNAP_TOL

ALPHABET = (0, 1, 2, 3)

_LETTER_NAMES = ("a", "A", "b", "B")  # capitals denote inverses


def inverse_letter(letter: int) -> int:
    return letter ^ 1


def is_reduced(letters) -> bool:
    return all(letters[i + 1] != inverse_letter(letters[i]) for i in range(len(letters) - 1))


def reduce_word(letters) -> tuple[int, ...]:
    """Cancel adjacent inverse pairs until the word is reduced."""
    out: list[int] = []
    for s in letters:
        if out and out[-1] == inverse_letter(s):
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def word_str(word: tuple[int, ...]) -> str:
    return "".join(_LETTER_NAMES[s] for s in word) or "e"


@dataclass(frozen=True)
class TreePoint:
    """A point of the metric tree: deeper endpoint word plus edge offset."""

    word: tuple[int, ...]
    offset: float

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"TreePoint({word_str(self.word)}, {self.offset:g})"


ROOT = TreePoint((), 0.0)


@dataclass(frozen=True)
class TreeGeodesicDecomposition:
    """Geodesic through the junction: legs measure the two sub-path lengths."""

    junction: TreePoint
    leg1: float
    leg2: float


def validate(p) -> None:
    if not isinstance(p, TreePoint):
        raise TagMismatch(f"tree point expected, got {type(p).__name__}")
    if any(s not in ALPHABET for s in p.word):
        raise DomainError(f"letters outside the alphabet: {p.word}")
    if not is_reduced(p.word):
        raise DomainError(f"word is not reduced: {word_str(p.word)}")
    if p.word:
        if not 0.0 < p.offset <= 1.0:
            raise DomainError(f"offset {p.offset!r} outside (0, 1]")
    elif p.offset != 0.0:
        raise DomainError("the root point must carry offset 0")


def depth(p: TreePoint) -> float:
    """Arc distance from the root."""
    if not p.word:
        return 0.0
    return len(p.word) - 1 + p.offset


def _vertex_point(word: tuple[int, ...]) -> TreePoint:
    return TreePoint(word, 1.0) if word else ROOT


def _common_prefix_len(w1: tuple[int, ...], w2: tuple[int, ...]) -> int:
    n = min(len(w1), len(w2))
    i = 0
    while i < n and w1[i] == w2[i]:
        i += 1
    return i


def decompose(x1: TreePoint, x2: TreePoint) -> TreeGeodesicDecomposition:
    """Split the geodesic from x1 to x2 at the point nearest the root.

    When one point lies on the other's root path the junction is that
    endpoint itself; otherwise it is the deepest common ancestor vertex.
    """
    h1, h2 = depth(x1), depth(x2)
    if x1.word == x2.word:
        if h1 <= h2:
            return TreeGeodesicDecomposition(x1, 0.0, h2 - h1)
        return TreeGeodesicDecomposition(x2, h1 - h2, 0.0)
    k = _common_prefix_len(x1.word, x2.word)
    if k == len(x1.word):  # x1's edge lies on the root path of x2
        return TreeGeodesicDecomposition(x1, 0.0, h2 - h1)
    if k == len(x2.word):
        return TreeGeodesicDecomposition(x2, h1 - h2, 0.0)
    return TreeGeodesicDecomposition(_vertex_point(x1.word[:k]), h1 - k, h2 - k)


def distance(x1: TreePoint, x2: TreePoint) -> float:
    if not isinstance(x1, TreePoint) or not isinstance(x2, TreePoint):
        raise TagMismatch("tree distance requires TreePoint arguments")
    d = decompose(x1, x2)
    return d.leg1 + d.leg2


def distances_from(p: TreePoint, pts) -> np.ndarray:
    return np.array([distance(p, q) for q in pts])


def _point_at_depth(word: tuple[int, ...], h: float) -> TreePoint:
    """Point at arc distance ``h`` from the root on the root path of ``word``."""
    if h <= POINT_SNAP_TOL:
        return ROOT
    rounded = round(h)
    if abs(h - rounded) < POINT_SNAP_TOL and rounded >= 1:
        return _vertex_point(word[: int(rounded)])
    j = min(len(word), int(math.ceil(h)))
    return TreePoint(word[:j], min(1.0, h - (j - 1)))


def geodesic(x1: TreePoint, x2: TreePoint, t: float) -> TreePoint:
    """Walk the fraction ``t`` of the way from x1 to x2 along their geodesic."""
    if t == 0.0:
        return x1
    if t == 1.0:
        return x2
    dec = decompose(x1, x2)
    total = dec.leg1 + dec.leg2
    if total < POINT_SNAP_TOL:
        return x1
    target = t * total
    if target <= dec.leg1:
        # climbing toward the junction happens on x1's root path
        return _point_at_depth(x1.word, depth(x1) - target)
    return _point_at_depth(x2.word, depth(dec.junction) + (target - dec.leg1))


def points_equal(p: TreePoint, q: TreePoint, tol: float = POINT_SNAP_TOL) -> bool:
    return distance(p, q) <= tol
