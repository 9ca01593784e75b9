"""The filtered chain complex over GF(2), its homology, and the comparisons with the
exterior algebra side."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GammaOutOfRange, NotAComplex, NotGenusZero, WindowTooLow
from .grading import ech_index, grading, grading_main_theorem
from .orbits import (
    CriticalOrbitSet,
    MorseData,
    OrbitSet,
    action,
    enumerate_critical_generators,
    enumerate_generators,
)
from .topology import Bundle

__all__ = [
    "gf2_rank",
    "GradedDimensions",
    "ChainComplexF2",
    "build_complex",
    "homology",
    "exterior_algebra_dimensions",
    "stratum_floor",
    "certified_bound",
    "Report",
    "verify_main_theorem",
    "stability_threshold",
    "stability_census",
    "LensPoint",
    "LensBijection",
    "lens_lattice_bijection",
]


def gf2_rank(rows) -> int:
    """Rank over GF(2) of rows given as int bitsets.

    Pivots on the highest set bit, processing rows in the given order.
    """
    pivots = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top not in pivots:
                pivots[top] = row
                break
            row ^= pivots[top]
    return len(pivots)


class GradedDimensions:
    """Finitely supported map grading -> dimension; zero entries are dropped."""

    def __init__(self, table=None):
        self.table = {k: v for k, v in sorted(dict(table or {}).items()) if v}

    def __getitem__(self, k):
        return self.table.get(k, 0)

    def __eq__(self, other):
        return isinstance(other, GradedDimensions) and self.table == other.table

    def __repr__(self):
        return f"GradedDimensions({self.table})"

    def gradings(self):
        return list(self.table)

    def restrict(self, lo=None, hi=None) -> "GradedDimensions":
        """Entries with lo <= grading < hi."""
        return GradedDimensions(
            {k: v for k, v in self.table.items() if (lo is None or k >= lo) and (hi is None or k < hi)}
        )

    def first_difference(self, other):
        for k in sorted(set(self.table) | set(other.table)):
            if self[k] != other[k]:
                return k
        return None


@dataclass
class ChainComplexF2:
    """Generators bucketed by grading and the boundary as int-bitset rows.

    ``boundary[k][i]`` has bit j set when generator j of grading k-1 appears in
    the boundary of generator i of grading k.
    """

    generators: dict
    boundary: dict
    experimental: bool = False
    positions: dict = field(default_factory=dict, repr=False)

    def dims(self) -> GradedDimensions:
        return GradedDimensions({k: len(v) for k, v in self.generators.items()})

    def is_zero(self) -> bool:
        return not any(any(rows) for rows in self.boundary.values())

    def boundary_of(self, gen):
        k, i = self.positions[gen]
        row = self.boundary[k][i]
        below = self.generators.get(k - 1, [])
        return [below[j] for j in range(len(below)) if row >> j & 1]

    def rank(self, k: int) -> int:
        return gf2_rank(self.boundary.get(k, []))

    def squares_to_zero(self) -> bool:
        for k, rows in self.boundary.items():
            lower = self.boundary.get(k - 1)
            if not lower:
                continue
            for row in rows:
                acc = 0
                j = 0
                while row:
                    if row & 1:
                        acc ^= lower[j]
                    row >>= 1
                    j += 1
                if acc:
                    return False
        return True


def _substitutions(md: MorseData, mults):
    """Targets of the flow-line differential applied to one generator."""
    for up, low in sorted(md.flows):
        if md.indices[up] == 1:
            # h -> e_-: the saddle orbit is used up
            if mults[up] != 1:
                continue
        elif mults[up] < 1 or mults[low] != 0:
            # e_+ -> h needs a free saddle
            continue
        out = list(mults)
        out[up] -= 1
        out[low] += 1
        yield tuple(out)


def build_complex(b: Bundle, md: MorseData, gamma: int, max_total: int, eps=None, action_cutoff=None):
    """Generators of class ``gamma`` with total multiplicity at most ``max_total``.

    With ``action_cutoff`` set, generators whose action (in units of pi) exceeds
    it are dropped as well.
    """
    if not 0 <= gamma < b.abs_e():
        raise GammaOutOfRange(f"gamma must lie in [0, {b.abs_e()}), got {gamma}")
    if md.genus() != b.genus:
        raise ValueError(f"Morse data lives on genus {md.genus()}, bundle base has genus {b.genus}")
    if md.standard_layout():
        gens = enumerate_generators(b, gamma, max_total)
        mults_of = OrbitSet.mults
        make = lambda m: OrbitSet(m[0], m[1:-1], m[-1])
    else:
        gens = enumerate_critical_generators(b, md, gamma, max_total)
        mults_of = lambda a: a.mults
        make = lambda m: CriticalOrbitSet(m, md.indices)
    if action_cutoff is not None:
        eps = Fraction(1, 10) if eps is None else eps
        gens = [a for a in gens if action(b, md, eps, a) <= Fraction(action_cutoff)]

    by_grade = defaultdict(list)
    positions = {}
    for a in gens:
        k = grading(b, a, gamma)
        positions[a] = (k, len(by_grade[k]))
        by_grade[k].append(a)

    boundary = {}
    for k, column in by_grade.items():
        rows = []
        for a in column:
            row = 0
            for target in _substitutions(md, mults_of(a)):
                c = make(target)
                if c not in positions:
                    continue  # filtered out by the action cutoff
                kc, j = positions[c]
                if kc != k - 1:
                    raise AssertionError(f"differential from {a} to {c} does not lower grading by one")
                row ^= 1 << j
            rows.append(row)
        boundary[k] = rows
    return ChainComplexF2(dict(sorted(by_grade.items())), boundary, not md.perfect, positions)


def homology(cx: ChainComplexF2) -> GradedDimensions:
    if not cx.squares_to_zero():
        raise NotAComplex("boundary does not square to zero")
    return GradedDimensions(
        {k: len(v) - cx.rank(k) - cx.rank(k + 1) for k, v in cx.generators.items()}
    )


def _poly_mul(p, q):
    out = defaultdict(int)
    for (a1, b1), c1 in p.items():
        for (a2, b2), c2 in q.items():
            out[(a1 + a2, b1 + b2)] += c1 * c2
    return out


def _wedge_series(genus: int, max_word: int):
    """Coefficients of t^k x^j in (1 + t x)^{2g} / ((1 - t)(1 - t x^2)), k <= max_word.

    t counts wedge length, x counts the grading bullet: H_0 in degree 0 and
    H_2 in degree 2 are even and give polynomial factors, H_1 is odd.
    """
    series = {(0, 0): 1}
    for _ in range(2 * genus):
        series = _poly_mul(series, {(0, 0): 1, (1, 1): 1})
    for step in ((1, 0), (1, 2)):
        geometric = {(n * step[0], n * step[1]): 1 for n in range(max_word + 1)}
        series = _poly_mul(series, geometric)
    return {key: c for key, c in series.items() if key[0] <= max_word}


def exterior_algebra_dimensions(b: Bundle, gamma: int, max_d: int) -> GradedDimensions:
    """Graded dimensions of the wedge powers Lambda^{gamma + |e| d}, d <= max_d."""
    if max_d < 0:
        return GradedDimensions()
    top = gamma + b.abs_e() * max_d
    series = _wedge_series(b.genus, top)
    table = defaultdict(int)
    for d in range(max_d + 1):
        k = gamma + b.abs_e() * d
        for (word, bullet), c in series.items():
            if word == k:
                table[grading_main_theorem(b, gamma, d, bullet)] += c
    return GradedDimensions(table)


def stratum_floor(b: Bundle, gamma: int, d: int) -> int:
    """Lowest grading in degree stratum d, attained by e_-^{gamma + |e| d}."""
    return grading_main_theorem(b, gamma, d, 0)


def _min_floor_from(b: Bundle, gamma: int, start: int) -> int:
    """min over d >= start of the (convex) stratum floor."""
    e = b.abs_e()
    linear = b.chi() + 2 * gamma + b.euler_class
    vertex = Fraction(-linear, 2 * e)
    candidates = {start}
    for d in (vertex.__floor__(), vertex.__ceil__()):
        if d >= start:
            candidates.add(d)
    return min(stratum_floor(b, gamma, d) for d in candidates)


def _max_degree(b: Bundle, gamma: int, max_total: int) -> int:
    return (max_total - gamma) // b.abs_e() if max_total >= gamma else -1


def certified_bound(b: Bundle, gamma: int, max_total: int) -> int:
    """Gradings strictly below this value only see generators of total <= max_total."""
    return _min_floor_from(b, gamma, _max_degree(b, gamma, max_total) + 1)


@dataclass
class Report:
    name: str
    passed: bool
    checked: int = 0
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)
    experimental: bool = False

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": self.counterexample,
            "details": self.details,
            "experimental": self.experimental,
        }


def verify_main_theorem(b: Bundle, gamma: int, max_total: int, md: MorseData | None = None) -> Report:
    """Compare complex homology with the wedge-power dimensions on certified gradings."""
    md = md or MorseData.perfect_for(b.genus)
    bound = certified_bound(b, gamma, max_total)
    ech = homology(build_complex(b, md, gamma, max_total)).restrict(hi=bound)
    wedge = exterior_algebra_dimensions(b, gamma, _max_degree(b, gamma, max_total)).restrict(hi=bound)
    bad = ech.first_difference(wedge)
    details = {"genus": b.genus, "euler": b.euler_class, "gamma": gamma, "max_total": max_total,
               "certified_below": bound, "gradings": len(ech.gradings())}
    counter = None if bad is None else {"grading": bad, "homology": ech[bad], "exterior": wedge[bad]}
    return Report("main-theorem", bad is None, len(set(ech.gradings()) | set(wedge.gradings())),
                  counter, details, not md.perfect)


def stability_threshold(b: Bundle, gamma: int) -> int:
    """Grading from which the census is expected to be stable: the floor of stratum 2g + 1."""
    return stratum_floor(b, gamma, 2 * b.genus + 1)


def stability_census(b: Bundle, gamma: int, window, md: MorseData | None = None) -> GradedDimensions:
    """Homology dimensions for every grading in the closed interval ``window``."""
    if b.genus == 0:
        raise ValueError("stability needs genus > 0")
    lo, hi = window
    if lo < stability_threshold(b, gamma):
        raise WindowTooLow(f"window starts at {lo}, below the threshold {stability_threshold(b, gamma)}")
    d = 0
    while _min_floor_from(b, gamma, d + 1) <= hi:
        d += 1
    max_total = gamma + b.abs_e() * d
    md = md or MorseData.perfect_for(b.genus)
    dims = homology(build_complex(b, md, gamma, max_total))
    return GradedDimensions({k: dims[k] for k in range(lo, hi + 1)})


@dataclass(frozen=True)
class LensPoint:
    orbit_set: OrbitSet
    lattice: tuple
    c_tau: Fraction
    q_tau: Fraction
    cz: int
    index: int


@dataclass
class LensBijection:
    points: list
    bound: int
    gaps: list
    duplicates: list
    step_failures: list

    @property
    def ok(self) -> bool:
        return not (self.gaps or self.duplicates or self.step_failures)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def lens_lattice_bijection(b: Bundle, gamma: int, max_total: int) -> LensBijection:
    """Index of each genus-0 generator through the triangle bookkeeping."""
    if b.genus != 0:
        raise NotGenusZero("the lattice picture needs a sphere base")
    n = b.abs_e()
    base = OrbitSet(gamma, (), 0)
    points = []
    for a in enumerate_generators(b, gamma, max_total):
        m_minus, m_plus = a.m_minus, a.m_plus
        total = m_minus + m_plus
        height = Fraction(2 * total, n)
        twice_area = Fraction(total * total, n)
        c_tau = height - Fraction(2 * gamma, n)
        q_tau = twice_area - Fraction(gamma * gamma, n)
        cz = m_plus - m_minus + gamma
        value = c_tau + q_tau + cz
        if value.denominator != 1 or value != ech_index(b, a, base).total:
            raise AssertionError(f"triangle bookkeeping disagrees with the index formula at {a}")
        lattice = (Fraction(m_minus), Fraction(m_minus - m_plus, n))
        points.append(LensPoint(a, lattice, c_tau, q_tau, cz, int(value)))

    d_max = _max_degree(b, gamma, max_total)
    bound = ech_index(b, OrbitSet(0, (), gamma + n * d_max), base).total if d_max >= 0 else -2
    seen = defaultdict(list)
    for p in points:
        if p.index <= bound:
            seen[p.index].append(p.orbit_set)
    gaps = [k for k in range(0, bound + 1, 2) if k not in seen]
    gaps += [k for k in seen if k % 2 or k < 0]
    duplicates = [k for k, v in seen.items() if len(v) > 1]
    steps = []
    for d in range(d_max):
        low = ech_index(b, OrbitSet(gamma + n * (d + 1), (), 0), base).total
        high = ech_index(b, OrbitSet(0, (), gamma + n * d), base).total
        if low != high + 2:
            steps.append(d)
    certified = [p for p in points if p.index <= bound]
    return LensBijection(certified, bound, sorted(gaps), sorted(duplicates), steps)
