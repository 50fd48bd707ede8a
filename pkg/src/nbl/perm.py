"""
Permutations as image tuples.

A permutation of degree ``n`` is stored as the tuple of images of the points
``0, ..., n-1``.  Cycle notation (input and output) is 1-based, like
``(1 2)(3 4)``; the identity prints as ``()``.

Products compose left to right: ``g * h`` applies ``g`` first, then ``h``.
Conjugation follows ``a^b = b * a * b^-1`` (see :func:`conjugate`).
"""

import re

from .errors import GroupSpecError

_CYCLE = re.compile(r"\(([^()]*)\)")


class Perm(tuple):
    """Immutable permutation; compares lexicographically by images."""

    __slots__ = ()

    def __new__(cls, images):
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, degree):
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, text, degree):
        """Parse cycle notation such as ``"(1 2 3)(4 5)"`` on ``degree`` points."""
        return cls(parse_cycles(text, degree))

    @property
    def degree(self):
        return len(self)

    def __mul__(self, other):
        # apply self, then other
        return Perm(other[x] for x in self)

    def __rmul__(self, other):
        return NotImplemented

    def inverse(self):
        inv = [0] * len(self)
        for i, x in enumerate(self):
            inv[x] = i
        return Perm(inv)

    def is_identity(self):
        return all(i == x for i, x in enumerate(self))

    def order(self):
        from math import lcm

        out = 1
        for cyc in self.cycles():
            out = lcm(out, len(cyc))
        return out

    def cycles(self):
        """Nontrivial cycles as tuples of 1-based points, each starting at its minimum."""
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start] or self[start] == start:
                seen[start] = True
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x + 1)
                x = self[x]
            out.append(tuple(cyc))
        return out

    def cycle_string(self):
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)

    def __str__(self):
        return self.cycle_string()

    def __repr__(self):
        return f"Perm({self.cycle_string()!r}, degree={len(self)})"


def parse_cycles(text, degree):
    """Return the image list for a product of disjoint cycles.

    Points inside a cycle may be separated by spaces or commas.  Raises
    :class:`GroupSpecError` for malformed text, out-of-range points, or points
    repeated across cycles.
    """
    s = text.strip()
    if not s:
        raise GroupSpecError("empty cycle string")
    images = list(range(degree))
    pos = 0
    used = set()
    for m in _CYCLE.finditer(s):
        if s[pos:m.start()].strip():
            raise GroupSpecError(f"unexpected text {s[pos:m.start()]!r} in {text!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        try:
            pts = [int(p) for p in body]
        except ValueError:
            raise GroupSpecError(f"non-integer point in cycle {m.group(0)!r}") from None
        for p in pts:
            if not 1 <= p <= degree:
                raise GroupSpecError(f"point {p} outside 1..{degree} in {text!r}")
            if p in used:
                raise GroupSpecError(f"point {p} repeated in {text!r}")
            used.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a - 1] = b - 1
    if s[pos:].strip():
        raise GroupSpecError(f"unexpected text {s[pos:]!r} in {text!r}")
    if pos == 0:
        raise GroupSpecError(f"no cycles found in {text!r}")
    return images


def conjugate(a, b):
    """``a^b = b * a * b^-1``."""
    return b * a * b.inverse()
