"""Partition conditions at multiply covered ends, braid writhe at connector ends,
Riemann-Hurwitz bookkeeping and the classification of low-index connectors."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateRotation,
    InconsistentCover,
    PreconditionViolated,
    TooFewEnds,
    WrongEndCount,
)
from .grading import ech_index, fredholm_index
from .orbits import CriticalOrbitSet, OrbitKind, OrbitSet
from .topology import Bundle

__all__ = [
    "Rotation",
    "Partition",
    "integer_partitions",
    "positive_partition",
    "negative_partition",
    "fiber_rotation",
    "ech_partition_ends",
    "riemann_hurwitz_chi",
    "CoverData",
    "ComponentReport",
    "ConnectorReport",
    "classify_connector",
    "enumerate_covers",
    "writhe_bound_positive",
    "BraidKind",
    "EndBraid",
    "end_writhe_linking",
    "connector_delta",
    "degree_zero_cylinder_check",
    "index_inequality",
]


class Rotation(enum.Enum):
    """Symbolic rotation data for orbits whose partitions have closed forms."""

    SMALL_POSITIVE = "small_positive"  # elliptic, 0 < theta < 1/m
    SMALL_NEGATIVE = "small_negative"  # elliptic, -1/m < theta < 0
    POSITIVE_HYPERBOLIC = "positive_hyperbolic"
    NEGATIVE_HYPERBOLIC = "negative_hyperbolic"


@dataclass(frozen=True)
class Partition:
    parts: tuple
    total: int

    def __post_init__(self):
        parts = tuple(sorted(self.parts, reverse=True))
        object.__setattr__(self, "parts", parts)
        if any(p < 1 for p in parts) or sum(parts) != self.total:
            raise ValueError(f"{parts} is not a partition of {self.total}")

    @classmethod
    def of(cls, parts) -> "Partition":
        parts = tuple(parts)
        return cls(parts, sum(parts))

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)


def integer_partitions(n: int, largest: int | None = None):
    """All partitions of n as non-increasing tuples, largest part first."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - first, first):
            yield (first, *rest)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull(points, keep_turn):
    hull = []
    for p in points:
        while len(hull) >= 2 and not keep_turn(_cross(hull[-2], hull[-1], p)):
            hull.pop()
        hull.append(p)
    return hull


def _steps(vertices):
    """Horizontal lengths of the path pieces between consecutive lattice points."""
    parts = []
    for (x1, y1), (x2, y2) in zip(vertices, vertices[1:]):
        g = math.gcd(x2 - x1, abs(y2 - y1))
        parts.extend([(x2 - x1) // g] * g)
    return Partition.of(parts)


def _closed_form(theta, m, positive):
    if theta is Rotation.POSITIVE_HYPERBOLIC:
        return Partition.of((1,) * m)
    if theta is Rotation.NEGATIVE_HYPERBOLIC:
        return Partition.of((2,) * (m // 2) + (1,) * (m % 2))
    ones = theta is (Rotation.SMALL_POSITIVE if positive else Rotation.SMALL_NEGATIVE)
    return Partition.of((1,) * m if ones else (m,))


def _rational(theta, m):
    if isinstance(theta, bool) or not isinstance(theta, (int, Fraction)):
        raise TypeError("rotation must be a Rotation token or a rational number")
    theta = Fraction(theta)
    if (m * theta).denominator == 1:
        raise DegenerateRotation(f"{m} * {theta} is an integer")
    return theta


def positive_partition(theta, m: int) -> Partition:
    """Steps of the highest concave lattice path below y = theta x ending at x = m."""
    if m < 1:
        raise ValueError("m must be positive")
    if isinstance(theta, Rotation):
        return _closed_form(theta, m, True)
    theta = _rational(theta, m)
    points = [(x, math.floor(theta * x)) for x in range(m + 1)]
    return _steps(_hull(points, lambda turn: turn < 0))


def negative_partition(theta, m: int) -> Partition:
    """Steps of the lowest convex lattice path above y = theta x ending at x = m."""
    if m < 1:
        raise ValueError("m must be positive")
    if isinstance(theta, Rotation):
        return _closed_form(theta, m, False)
    theta = _rational(theta, m)
    points = [(x, math.ceil(theta * x)) for x in range(m + 1)]
    return _steps(_hull(points, lambda turn: turn > 0))


def fiber_rotation(kind: OrbitKind) -> Rotation:
    return {
        OrbitKind.ELLIPTIC_PLUS: Rotation.SMALL_POSITIVE,
        OrbitKind.ELLIPTIC_MINUS: Rotation.SMALL_NEGATIVE,
        OrbitKind.HYPERBOLIC: Rotation.POSITIVE_HYPERBOLIC,
    }[kind]


def ech_partition_ends(a: OrbitSet, c: OrbitSet):
    """Ends of a curve from a to c whose multiplicities follow the partition conditions."""
    pos = [(k, q) for k, _, m in a.orbits() for q in positive_partition(fiber_rotation(k), m)]
    neg = [(k, q) for k, _, m in c.orbits() for q in negative_partition(fiber_rotation(k), m)]
    return pos, neg


def riemann_hurwitz_chi(k: int, base_chi: int, ram_total: int) -> int:
    return k * base_chi - ram_total


@dataclass(frozen=True)
class CoverData:
    """A branched cover of a trivial cylinder over one fiber orbit.

    Ramification is stored as its total; when omitted it is solved from
    the Euler characteristic of the punctured domain.
    """

    base_orbit: OrbitKind
    dom_genus: int
    pos_end_mults: tuple
    neg_end_mults: tuple
    ram_total: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "base_orbit", OrbitKind(self.base_orbit))
        object.__setattr__(self, "pos_end_mults", tuple(self.pos_end_mults))
        object.__setattr__(self, "neg_end_mults", tuple(self.neg_end_mults))

    @property
    def covering_degree(self) -> int:
        return sum(self.pos_end_mults)

    def domain_chi(self) -> int:
        return 2 - 2 * self.dom_genus - len(self.pos_end_mults) - len(self.neg_end_mults)

    def forced_ramification(self) -> int:
        return -self.domain_chi()

    def problem(self) -> str | None:
        """Reason the data cannot describe a cover, or None."""
        if self.dom_genus < 0:
            return "negative genus"
        if not self.pos_end_mults or not self.neg_end_mults:
            return "a cover of a cylinder has ends on both sides"
        if any(q < 1 for q in self.pos_end_mults + self.neg_end_mults):
            return "end multiplicities must be positive"
        if sum(self.pos_end_mults) != sum(self.neg_end_mults):
            return "positive and negative multiplicities differ"
        ram = self.forced_ramification()
        if ram < 0:
            return "Riemann-Hurwitz gives negative ramification"
        if self.ram_total is not None and self.ram_total != ram:
            return f"ramification {self.ram_total} but Riemann-Hurwitz needs {ram}"
        if self.covering_degree == 1 and ram:
            return "a degree one cover cannot branch"
        if riemann_hurwitz_chi(self.covering_degree, 0, ram) != self.domain_chi():
            return "Riemann-Hurwitz fails"
        return None

    @property
    def branched(self) -> bool:
        return self.forced_ramification() > 0

    def ends(self):
        pos = [(self.base_orbit, q) for q in self.pos_end_mults]
        neg = [(self.base_orbit, q) for q in self.neg_end_mults]
        return pos, neg


@dataclass(frozen=True)
class ComponentReport:
    cover: CoverData
    index: int
    label: str


@dataclass(frozen=True)
class ConnectorReport:
    components: tuple
    index: int
    ech_index: int

    @property
    def labels(self):
        return tuple(c.label for c in self.components)

    @property
    def valid(self) -> bool:
        return "invalid" not in self.labels and self.ech_index == 0


def _label(cover: CoverData, ind: int) -> str:
    p, n = len(cover.pos_end_mults), len(cover.neg_end_mults)
    if ind == 0:
        if not cover.branched:
            return "i.a"
        if cover.base_orbit is OrbitKind.ELLIPTIC_PLUS and p == 1:
            return "i.b"
        if cover.base_orbit is OrbitKind.ELLIPTIC_MINUS and n == 1:
            return "i.c"
    if ind == 1 and cover.base_orbit is OrbitKind.HYPERBOLIC and cover.branched:
        if cover.dom_genus == 0 and (p, n) in ((1, 2), (2, 1)):
            return "ii"
    return "invalid"


def classify_connector(b: Bundle, components) -> ConnectorReport:
    """Fredholm index and case label of each component of a connector."""
    reports = []
    top, bottom = [0, 0, 0], [0, 0, 0]
    for cover in components:
        why = cover.problem()
        if why:
            raise InconsistentCover(why)
        pos, neg = cover.ends()
        ind = fredholm_index(b, cover.dom_genus, pos, neg, 0)
        reports.append(ComponentReport(cover, ind, _label(cover, ind)))
        slot = list(OrbitKind).index(cover.base_orbit)
        top[slot] += sum(cover.pos_end_mults)
        bottom[slot] += sum(cover.neg_end_mults)
    # a connector runs from an orbit set to itself, one slot per orbit kind
    ech_total = ech_index(
        b, CriticalOrbitSet(tuple(top), (0, 1, 2)), CriticalOrbitSet(tuple(bottom), (0, 1, 2))
    ).total
    return ConnectorReport(tuple(reports), sum(r.index for r in reports), ech_total)


def enumerate_covers(max_mult: int, max_genus: int = 2):
    """Every consistent single-component cover with covering degree <= max_mult."""
    for kind in OrbitKind:
        for k in range(1, max_mult + 1):
            for pos in integer_partitions(k):
                for neg in integer_partitions(k):
                    for genus in range(max_genus + 1):
                        cover = CoverData(kind, genus, pos, neg)
                        if cover.problem() is None:
                            yield cover


def writhe_bound_positive(d: int, cz_d: int) -> int:
    """Upper bound for the writhe of a connected positive end of multiplicity d."""
    half = cz_d // 2
    return (d - 1) * half - math.gcd(d, half) + 1


class BraidKind(enum.Enum):
    E_PLUS_POSITIVE_END = "e_plus_positive_end"
    E_PLUS_NEGATIVE_ENDS = "e_plus_negative_ends"
    E_MINUS_POSITIVE_ENDS = "e_minus_positive_ends"
    E_MINUS_NEGATIVE_END = "e_minus_negative_end"


@dataclass(frozen=True)
class EndBraid:
    writhes: tuple
    linkings: dict
    total: int


def end_writhe_linking(kind, mults) -> EndBraid:
    """Writhe and pairwise linking of the braids at the ends of a generic connector.

    Each end is one connected braid; linking is keyed by index pairs i < j.
    """
    kind = BraidKind(kind)
    mults = tuple(mults)
    if not mults or any(q < 1 for q in mults):
        raise ValueError("need positive end multiplicities")
    single = kind in (BraidKind.E_PLUS_POSITIVE_END, BraidKind.E_MINUS_NEGATIVE_END)
    if single and len(mults) != 1:
        raise WrongEndCount(f"{kind.value} needs exactly one end, got {len(mults)}")
    if kind is BraidKind.E_PLUS_POSITIVE_END:
        writhes = (1 - mults[0],)
    elif kind is BraidKind.E_MINUS_NEGATIVE_END:
        writhes = (mults[0] - 1,)
    elif kind is BraidKind.E_PLUS_NEGATIVE_ENDS:
        writhes = tuple(q - 1 for q in mults)
    else:
        writhes = tuple(1 - q for q in mults)
    sign = -1 if kind is BraidKind.E_MINUS_POSITIVE_ENDS else 1
    linkings = {}
    for i in range(len(mults)):
        for j in range(i + 1, len(mults)):
            linkings[(i, j)] = sign * min(mults[i], mults[j])
    total = sum(writhes) + 2 * sum(linkings.values())
    return EndBraid(writhes, linkings, total)


def connector_delta(case: str, end_mults) -> int:
    """Twice the singularity count forced by relative adjunction on a branched
    genus-0 cover with a single end on one side.

    ``case`` is "i.b" (one positive end over e_+) or "i.c" (one negative end
    over e_-); ``end_mults`` are the multiplicities on the other side.
    """
    mults = tuple(end_mults)
    if len(mults) < 2:
        raise TooFewEnds("a single end on both sides is an unbranched cylinder")
    total = sum(mults)
    chi = 2 - 1 - len(mults)
    if case == "i.b":
        w_pos = end_writhe_linking(BraidKind.E_PLUS_POSITIVE_END, [total]).total
        w_neg = end_writhe_linking(BraidKind.E_PLUS_NEGATIVE_ENDS, mults).total
    elif case == "i.c":
        w_pos = end_writhe_linking(BraidKind.E_MINUS_POSITIVE_ENDS, mults).total
        w_neg = end_writhe_linking(BraidKind.E_MINUS_NEGATIVE_END, [total]).total
    else:
        raise ValueError(f"unknown connector case {case!r}")
    # the relative first Chern class and self-intersection vanish for trivial cylinder covers
    return chi + w_pos - w_neg


def degree_zero_cylinder_check(b: Bundle, a: OrbitSet, c: OrbitSet) -> bool:
    """Whether a connected index-1, degree-0 curve from a to c must be a cylinder
    between single orbits, given embedded ends satisfying the partition conditions."""
    if a.total() != c.total():
        raise PreconditionViolated("degree-zero curves join sets of equal total multiplicity")
    ind_ech = ech_index(b, a, c).total
    if ind_ech != 1:
        raise PreconditionViolated(f"needs I = 1, got {ind_ech}")
    pos, neg = ech_partition_ends(a, c)
    excess = 1 - fredholm_index(b, 0, pos, neg, 0)
    # each unit of genus raises the Fredholm index by two
    if excess % 2:
        return False
    genus = excess // 2
    return genus == 0 and a.total() == c.total() == 1


def index_inequality(b: Bundle, a: OrbitSet, c: OrbitSet, dom_genus: int, pos_ends, neg_ends, delta: int = 0):
    """Fredholm index of the described curve and the bound I(a, c) - 2 delta it must obey."""
    d = ech_index(b, a, c)
    deg = (a.total() - c.total()) // b.abs_e()
    return fredholm_index(b, dom_genus, pos_ends, neg_ends, deg), d.total - 2 * delta
