"""ECH index of pairs of orbit sets, Fredholm index of curves and the Z-grading."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateRotation
from .orbits import CriticalOrbitSet, OrbitKind, OrbitSet, degree
from .topology import Bundle

__all__ = [
    "IndexBreakdown",
    "TrivializationOffset",
    "cz_fiber",
    "cz_general",
    "cz_I_total",
    "relative_chern",
    "relative_self_intersection",
    "ech_index",
    "index_with_offsets",
    "fredholm_index",
    "bullet_grading",
    "grading_main_theorem",
    "index_parity",
    "base_point",
    "grading",
]

_FIBER_CZ = {OrbitKind.ELLIPTIC_MINUS: -1, OrbitKind.HYPERBOLIC: 0, OrbitKind.ELLIPTIC_PLUS: 1}


@dataclass(frozen=True)
class IndexBreakdown:
    c_tau: int
    q_tau: int
    cz_total: int
    total: int

    def __post_init__(self):
        if self.c_tau + self.q_tau + self.cz_total != self.total:
            raise ValueError("index terms do not add up")

    def __neg__(self):
        return IndexBreakdown(-self.c_tau, -self.q_tau, -self.cz_total, -self.total)


@dataclass(frozen=True)
class TrivializationOffset:
    """Integer shift of the trivialization over each critical fiber."""

    t_minus: int = 0
    t_hyp: tuple = ()
    t_plus: int = 0

    def __post_init__(self):
        object.__setattr__(self, "t_hyp", tuple(self.t_hyp))

    @classmethod
    def zero(cls, genus: int) -> "TrivializationOffset":
        return cls(0, (0,) * (2 * genus), 0)

    def shifts(self) -> tuple:
        return (self.t_minus, *self.t_hyp, self.t_plus)


def cz_fiber(kind: OrbitKind, k: int) -> int:
    """CZ of the k-fold fiber, constant in k below the action cutoff."""
    if k < 1:
        raise ValueError("cover multiplicity must be positive")
    return _FIBER_CZ[OrbitKind(kind)]


def cz_general(rotation, k: int) -> int:
    """CZ of the k-th iterate of a general orbit.

    A :class:`~fractions.Fraction` is read as the rotation number of an elliptic
    orbit, a plain ``int`` as the rotation r of a hyperbolic one.
    """
    if k < 1:
        raise ValueError("cover multiplicity must be positive")
    if isinstance(rotation, bool):
        raise TypeError("rotation must be an int or a Fraction")
    if isinstance(rotation, int):
        return k * rotation
    theta = Fraction(rotation)
    if (k * theta).denominator == 1:
        raise DegenerateRotation(f"{k} * {theta} is an integer")
    return 2 * math.floor(k * theta) + 1


def cz_I_total(a: OrbitSet) -> int:
    if not isinstance(a, OrbitSet):
        raise TypeError("cz_I_total takes a fiber OrbitSet")
    return sum(cz_fiber(kind, k) for kind, _, m in a.orbits() for k in range(1, m + 1))


def _cz_I(a) -> int:
    return a.cz_I() if isinstance(a, CriticalOrbitSet) else cz_I_total(a)


def relative_chern(b: Bundle, a, c) -> int:
    return b.chi() * degree(b, a, c)


def relative_self_intersection(b: Bundle, a, c) -> int:
    d = degree(b, a, c)
    return b.abs_e() * d * d + 2 * d * c.total()


def ech_index(b: Bundle, a, c) -> IndexBreakdown:
    """I(a, c); pairs with a.total() < c.total() use I(a, c) = -I(c, a)."""
    if a.total() < c.total():
        degree(b, c, a)
        return -ech_index(b, c, a)
    ct = relative_chern(b, a, c)
    qt = relative_self_intersection(b, a, c)
    cz = _cz_I(a) - _cz_I(c)
    return IndexBreakdown(ct, qt, cz, ct + qt + cz)


def _mults(a):
    return a.mults if isinstance(a, CriticalOrbitSet) else a.mults()


def index_with_offsets(b: Bundle, a, c, off: TrivializationOffset) -> IndexBreakdown:
    """Index terms computed in the trivialization shifted by ``off``."""
    if a.total() < c.total():
        degree(b, c, a)
        return -index_with_offsets(b, c, a, off)
    base = ech_index(b, a, c)
    shifts = off.shifts()
    ma, mc = _mults(a), _mults(c)
    if not len(shifts) == len(ma) == len(mc):
        raise ValueError("offset does not match the orbit sets")
    dc = sum(t * (m - n) for t, m, n in zip(shifts, ma, mc))
    dq = sum(t * (m * m - n * n) for t, m, n in zip(shifts, ma, mc))
    dcz = -sum(t * ((m * m + m) - (n * n + n)) for t, m, n in zip(shifts, ma, mc))
    ct, qt, cz = base.c_tau + dc, base.q_tau + dq, base.cz_total + dcz
    return IndexBreakdown(ct, qt, cz, ct + qt + cz)


def fredholm_index(b: Bundle, dom_genus: int, pos_ends, neg_ends, d: int) -> int:
    """Fredholm index of a curve with the given ends projecting with degree ``d``.

    Ends are (orbit kind, multiplicity) pairs.
    """
    chi_domain = 2 - 2 * dom_genus - len(pos_ends) - len(neg_ends)
    cz = sum(cz_fiber(k, m) for k, m in pos_ends) - sum(cz_fiber(k, m) for k, m in neg_ends)
    return -chi_domain + 2 * b.chi() * d + cz


def bullet_grading(a: OrbitSet) -> int:
    """Grading of the matching wedge word: h's weigh 1, e_+ weighs 2."""
    return a.hyperbolic_count() + 2 * a.m_plus


def grading_main_theorem(b: Bundle, gamma: int, d: int, bullet: int) -> int:
    """Closed-form grading of a degree-d wedge word, normalized so e_-^gamma sits at 0."""
    e = b.euler_class
    return -e * d * d + (b.chi() + 2 * gamma + e) * d + bullet


def index_parity(a, c) -> str:
    return "odd" if (a.hyperbolic_count() + c.hyperbolic_count()) % 2 else "even"


def base_point(b: Bundle, gamma: int, md=None):
    """e_-^gamma, which is the empty set when gamma = 0."""
    if md is None or md.standard_layout():
        return OrbitSet(gamma, (0,) * b.n_hyperbolic, 0)
    mults = [0] * len(md.indices)
    mults[md.indices.index(0)] = gamma
    return CriticalOrbitSet(tuple(mults), md.indices)


def grading(b: Bundle, a, gamma: int | None = None) -> int:
    """Absolute grading of a generator: its index relative to the base point."""
    if gamma is None:
        gamma = a.total() % b.abs_e()
    if isinstance(a, CriticalOrbitSet):
        mults = [0] * len(a.indices)
        mults[a.indices.index(0)] = gamma
        return ech_index(b, a, CriticalOrbitSet(tuple(mults), a.indices)).total
    return ech_index(b, a, OrbitSet(gamma, (0,) * len(a.m_hyp), 0)).total
