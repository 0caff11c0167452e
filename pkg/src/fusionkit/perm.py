"""Permutations of {1..n}.

Internally a permutation stores the 0-based image tuple; all text I/O uses
1-based cycle notation.  Products act on the right: ``(x * y)`` applies
``x`` first, so ``i^(xy) = (i^x)^y`` and conjugation is ``x^g = g^-1 x g``.
"""
from __future__ import annotations

import math
import re

from .errors import DegreeMismatch, PermutationError

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """An immutable bijection on ``{1, ..., degree}``."""

    __slots__ = ("images", "_hash")

    def __init__(self, images, check=True):
        images = tuple(int(i) for i in images)
        if check:
            if not images:
                raise PermutationError("degree must be positive")
            if sorted(images) != list(range(len(images))):
                raise PermutationError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_hash", hash(images))

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, degree):
        return cls(range(degree), check=degree <= 0)

    @property
    def degree(self):
        return len(self.images)

    def __len__(self):
        return len(self.images)

    def __call__(self, point):
        """Image of a 1-based point."""
        return self.images[point - 1] + 1

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __le__(self, other):
        return self.images <= other.images

    def __hash__(self):
        return self._hash

    def _check(self, other):
        if not isinstance(other, Permutation):
            raise TypeError(f"expected Permutation, got {type(other).__name__}")
        if other.degree != self.degree:
            raise DegreeMismatch(f"degree {self.degree} != {other.degree}")

    def __mul__(self, other):
        self._check(other)
        o = other.images
        return Permutation([o[i] for i in self.images], check=False)

    def inverse(self):
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv, check=False)

    def __invert__(self):
        return self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self):
        """Nontrivial cycles as tuples of 1-based points, each starting at its minimum."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start + 1]
            seen.add(start)
            j = self.images[start]
            while j != start:
                seen.add(j)
                cyc.append(j + 1)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_lengths(self):
        return [len(c) for c in self.cycles()]

    @property
    def order(self):
        return math.lcm(1, *self.cycle_lengths())

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation({self}, degree={self.degree})"


def parse_cycles(text, degree):
    """Parse disjoint-cycle notation such as ``"(1 2 3)(4 5)"``.

    Points are 1-based and must not exceed ``degree``; ``"()"`` is the
    identity.  Commas are accepted as separators inside a cycle.
    """
    if degree < 1:
        raise PermutationError(f"degree must be positive, got {degree}")
    s = text.strip()
    if not s:
        raise PermutationError("empty cycle string")
    images = list(range(degree))
    seen = set()
    pos = 0
    for m in _CYCLE_RE.finditer(s):
        gap = s[pos:m.start()]
        if gap.strip():
            raise PermutationError(f"malformed parentheses in {text!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        try:
            pts = [int(t) for t in body]
        except ValueError:
            raise PermutationError(f"non-integer point in {text!r}") from None
        for p in pts:
            if not 1 <= p <= degree:
                raise PermutationError(f"point {p} out of range 1..{degree}")
            if p in seen:
                raise PermutationError(f"point {p} repeated in {text!r}")
            seen.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a - 1] = b - 1
    if s[pos:].strip() or pos == 0:
        raise PermutationError(f"malformed parentheses in {text!r}")
    return Permutation(images, check=False)


def conjugate_element(x, g):
    """Return ``x^g = g^-1 x g``."""
    x._check(g)
    gi = g.images
    r = [0] * x.degree
    for i, xi in enumerate(x.images):
        r[gi[i]] = gi[xi]
    return Permutation(r, check=False)


def commutator(x, y):
    """Return ``[x, y] = x^-1 y^-1 x y``."""
    x._check(y)
    return x.inverse() * y.inverse() * x * y


def element_order(x):
    return x.order
