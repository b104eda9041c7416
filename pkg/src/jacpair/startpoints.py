"""Enumeration of possible starting corners (c/l, d) of an edge ending at (a/l, b)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactalg import qnorm
from .newton import Direction, edge_dir, v_point

__all__ = ["StartCandidate", "possible_starting_points", "filter_by_direction",
           "candidate_data", "check_candidate"]

INCLUSIVE = "inclusive"
EXCLUSIVE = "exclusive"


@dataclass(frozen=True)
class StartCandidate:
    c: int
    d: int
    l: int
    direction: Direction
    s: int
    N1: int
    N2: int
    accepted_by: str

    @property
    def c_over_l(self):
        return qnorm(Fraction(self.c, self.l))

    @property
    def point(self):
        return (self.c_over_l, self.d)

    def to_dict(self):
        return {"c": self.c, "d": self.d, "l": self.l, "direction": list(self.direction),
                "s": self.s, "N1": self.N1, "N2": self.N2, "accepted_by": self.accepted_by,
                "c_over_l": str(self.c_over_l)}


def candidate_data(l, a, b, c, d):
    """(direction, s, N1, N2) for the segment from (c/l, d) to (a/l, b)."""
    n1 = math.gcd(a - c, b - d)
    n2 = math.gcd(c, d)
    rho, sigma = edge_dir((Fraction(a, l), b), (Fraction(c, l), d))
    num = rho * a + sigma * l * b
    s = abs(num) // math.gcd(num, l * (rho + sigma))
    return Direction(rho, sigma), s, n1, n2


def possible_starting_points(l, a, b, upper=INCLUSIVE):
    """Run the double loop over d in [0, b-1] and c in its admissible range.

    ``upper`` selects whether the bound l*d + a - b*l - 1 is attained.
    """
    if l < 1 or b < 1:
        raise ValueError("need l >= 1 and b >= 1")
    if a <= b * l:
        raise ValueError("need a > b*l")
    if upper not in (INCLUSIVE, EXCLUSIVE):
        raise ValueError(f"unknown bound reading {upper!r}")
    out = []
    for d in range(b):
        lo = d * a // b + 1
        hi = l * d + a - b * l - 1
        stop = hi + 1 if upper == INCLUSIVE else hi
        for c in range(lo, stop):
            direction, s, n1, n2 = candidate_data(l, a, b, c, d)
            if n2 % s == 0 and d > 0:
                tag = "divides-N2"
            elif s <= n1:
                tag = "le-N1"
            else:
                continue
            out.append(StartCandidate(c, d, l, direction, s, n1, n2, tag))
    out.sort(key=lambda x: (x.d, x.c))
    return out


def filter_by_direction(cands, direction):
    direction = tuple(direction)
    return [x for x in cands if tuple(x.direction) == direction]


def check_candidate(cand, a, b, upper=INCLUSIVE):
    """Re-verify loop bounds and collinearity of an emitted candidate."""
    l, c, d = cand.l, cand.c, cand.d
    hi = l * d + a - b * l - 1
    if upper == EXCLUSIVE:
        hi -= 1
    ok_bounds = 0 <= d <= b - 1 and d * a // b + 1 <= c <= hi
    end = (Fraction(a, l), b)
    return ok_bounds and v_point(cand.direction, cand.point) == v_point(cand.direction, end)
