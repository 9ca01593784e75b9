"""Slow reference computations used to check the fast code paths."""
from __future__ import annotations

import math
from fractions import Fraction
from math import comb

__all__ = ["brute_positive_partition", "brute_negative_partition", "count_generators"]


def _paths(theta, m, end_y, upper):
    """All polygonal lattice paths (0,0) -> (m, end_y) on the correct side of
    y = theta x that bend only one way, as vertex lists."""
    chord = Fraction(end_y, m)

    def allowed(x):
        if upper:
            lo, hi = math.ceil(chord * x), math.floor(theta * x)
        else:
            lo, hi = math.ceil(theta * x), math.floor(chord * x)
        return range(lo, hi + 1)

    def extend(path, slope):
        x0, y0 = path[-1]
        final = Fraction(end_y - y0, m - x0)
        if slope is None or (final < slope if upper else final > slope):
            yield path + [(m, end_y)]
        for x in range(x0 + 1, m):
            for y in allowed(x):
                s = Fraction(y - y0, x - x0)
                if slope is None or (s < slope if upper else s > slope):
                    yield from extend(path + [(x, y)], s)

    yield from extend([(0, 0)], None)


def _height(path, x):
    for (x1, y1), (x2, y2) in zip(path, path[1:]):
        if x1 <= x <= x2:
            return y1 + Fraction(y2 - y1, x2 - x1) * (x - x1)
    raise ValueError(x)


def _extreme(theta, m, upper):
    theta = Fraction(theta)
    end_y = math.floor(m * theta) if upper else math.ceil(m * theta)
    paths = list(_paths(theta, m, end_y, upper))
    profiles = [tuple(_height(p, x) for x in range(m + 1)) for p in paths]
    pick = max if upper else min
    best = tuple(pick(col) for col in zip(*profiles))
    if best not in profiles:
        raise AssertionError("no path dominates all the others")
    lattice_x = [x for x, y in enumerate(best) if y.denominator == 1]
    return tuple(sorted((b - a for a, b in zip(lattice_x, lattice_x[1:])), reverse=True))


def brute_positive_partition(theta, m: int) -> tuple:
    """Parts of the highest concave lattice path below the line, by exhaustive search."""
    return _extreme(theta, m, True)


def brute_negative_partition(theta, m: int) -> tuple:
    return _extreme(theta, m, False)


def count_generators(genus: int, abs_e: int, gamma: int, max_total: int) -> int:
    """Number of admissible orbit sets via coefficients of (1 - x)^-2 (1 + x)^{2g}."""
    count = 0
    for total in range(gamma, max_total + 1, abs_e):
        count += sum(comb(2 * genus, j) * (total - j + 1) for j in range(min(2 * genus, total) + 1))
    return count
