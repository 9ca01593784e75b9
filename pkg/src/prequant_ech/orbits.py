"""Orbit sets over the critical fibers, their homology class, action and degree."""
from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NegativeDegree, NonHomologous, GammaOutOfRange, OrbitSetSyntaxError
from .topology import Bundle

__all__ = [
    "OrbitKind",
    "OrbitSet",
    "CriticalOrbitSet",
    "MorseData",
    "homology_class",
    "action",
    "degree",
    "enumerate_generators",
    "enumerate_critical_generators",
    "parse_orbit_set",
]


class OrbitKind(enum.Enum):
    """Fiber orbit over a minimum, a saddle or a maximum."""

    ELLIPTIC_MINUS = "elliptic_minus"
    HYPERBOLIC = "hyperbolic"
    ELLIPTIC_PLUS = "elliptic_plus"

    @classmethod
    def from_morse_index(cls, index: int) -> "OrbitKind":
        return (cls.ELLIPTIC_MINUS, cls.HYPERBOLIC, cls.ELLIPTIC_PLUS)[index]


@dataclass(frozen=True, order=True)
class OrbitSet:
    """The generator e_-^{m_minus} h_1^{m_1} ... h_{2g}^{m_2g} e_+^{m_plus}."""

    m_minus: int = 0
    m_hyp: tuple = ()
    m_plus: int = 0

    def __post_init__(self):
        object.__setattr__(self, "m_hyp", tuple(self.m_hyp))
        if self.m_minus < 0 or self.m_plus < 0 or any(m < 0 for m in self.m_hyp):
            raise ValueError("multiplicities must be non-negative")

    @classmethod
    def empty(cls, genus: int) -> "OrbitSet":
        return cls(0, (0,) * (2 * genus), 0)

    @property
    def genus(self) -> int:
        return len(self.m_hyp) // 2

    def total(self) -> int:
        return self.m_minus + sum(self.m_hyp) + self.m_plus

    def admissible(self) -> bool:
        return all(m in (0, 1) for m in self.m_hyp)

    def hyperbolic_count(self) -> int:
        """Number of hyperbolic orbits counted with multiplicity."""
        return sum(self.m_hyp)

    def mults(self) -> tuple:
        """Multiplicities in critical-point order: minimum, saddles, maximum."""
        return (self.m_minus, *self.m_hyp, self.m_plus)

    def orbits(self):
        """Yield (kind, position, multiplicity) for each orbit that occurs."""
        if self.m_minus:
            yield OrbitKind.ELLIPTIC_MINUS, 0, self.m_minus
        for i, m in enumerate(self.m_hyp, start=1):
            if m:
                yield OrbitKind.HYPERBOLIC, i, m
        if self.m_plus:
            yield OrbitKind.ELLIPTIC_PLUS, len(self.m_hyp) + 1, self.m_plus

    def __str__(self):
        words = []
        for kind, i, m in self.orbits():
            name = {OrbitKind.ELLIPTIC_MINUS: "e-", OrbitKind.ELLIPTIC_PLUS: "e+"}.get(kind, f"h{i}")
            words.append(name if m == 1 else f"{name}^{m}")
        return " ".join(words)

    def label(self) -> str:
        return str(self) or "∅"


@dataclass(frozen=True, order=True)
class CriticalOrbitSet:
    """Orbit set over an arbitrary list of critical points.

    ``indices`` are the Morse indices of the critical points and ``mults`` the
    multiplicity of the fiber over each one.
    """

    mults: tuple
    indices: tuple = field(compare=False)

    def total(self) -> int:
        return sum(self.mults)

    def admissible(self) -> bool:
        return all(m <= 1 for m, i in zip(self.mults, self.indices) if i == 1)

    def hyperbolic_count(self) -> int:
        return sum(m for m, i in zip(self.mults, self.indices) if i == 1)

    def cz_I(self) -> int:
        # each cover of a fiber over an index-i point has CZ = i - 1
        return sum(m * (i - 1) for m, i in zip(self.mults, self.indices))

    def __str__(self):
        return " ".join(f"p{j}^{m}" if m > 1 else f"p{j}" for j, m in enumerate(self.mults) if m)

    def label(self) -> str:
        return str(self) or "∅"


@dataclass(frozen=True)
class MorseData:
    """Critical points of a Morse function on the base with mod-2 flow-line counts.

    ``flows`` holds the pairs (upper, lower) of critical point positions joined
    by an odd number of downward gradient lines; the index of ``upper`` is one
    more than that of ``lower``.
    """

    indices: tuple
    h_values: tuple
    flows: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(self.indices))
        object.__setattr__(self, "h_values", tuple(Fraction(h) for h in self.h_values))
        object.__setattr__(self, "flows", frozenset(tuple(f) for f in self.flows))
        n = len(self.indices)
        if len(self.h_values) != n:
            raise ValueError("need one H value per critical point")
        if any(i not in (0, 1, 2) for i in self.indices):
            raise ValueError("Morse indices on a surface are 0, 1 or 2")
        if self.indices.count(0) < 1 or self.indices.count(2) < 1:
            raise ValueError("need at least one minimum and one maximum")
        if (2 - self.euler_characteristic()) % 2:
            raise ValueError("critical point counts do not give an orientable surface")
        if any(abs(h) >= 1 for h in self.h_values):
            raise ValueError("|H| must stay below 1")
        for up, low in self.flows:
            if not (0 <= up < n and 0 <= low < n) or self.indices[up] != self.indices[low] + 1:
                raise ValueError(f"flow {up}->{low} must drop the Morse index by one")
        if self.perfect and self.flows:
            raise ValueError("a perfect Morse function has no flow lines mod 2")
        if not self.morse_boundary_squares_to_zero():
            raise ValueError("Morse boundary does not square to zero")

    @classmethod
    def perfect_for(cls, genus: int, h_values=None) -> "MorseData":
        indices = (0,) + (1,) * (2 * genus) + (2,)
        if h_values is None:
            h_values = (Fraction(-1, 2),) + (Fraction(0),) * (2 * genus) + (Fraction(1, 2),)
        return cls(indices, h_values)

    @property
    def perfect(self) -> bool:
        return self.indices.count(0) == 1 and self.indices.count(2) == 1

    def standard_layout(self) -> bool:
        """Perfect, with critical points ordered minimum, saddles, maximum."""
        g = self.genus()
        return self.indices == (0,) + (1,) * (2 * g) + (2,)

    def euler_characteristic(self) -> int:
        return self.indices.count(0) - self.indices.count(1) + self.indices.count(2)

    def genus(self) -> int:
        return (2 - self.euler_characteristic()) // 2

    def flow(self, up: int, low: int) -> int:
        return 1 if (up, low) in self.flows else 0

    def morse_boundary_squares_to_zero(self) -> bool:
        n = len(self.indices)
        for up in range(n):
            if self.indices[up] != 2:
                continue
            for low in range(n):
                if self.indices[low] != 0:
                    continue
                paths = sum(self.flow(up, mid) * self.flow(mid, low) for mid in range(n))
                if paths % 2:
                    return False
        return True


def homology_class(b: Bundle, a) -> int:
    return a.total() % b.abs_e()


def action(b: Bundle, md: MorseData, eps, a) -> Fraction:
    """Symplectic action of ``a`` as an exact multiple of pi.

    Each cover of the fiber over p contributes 2(1 + eps H(p)).
    """
    eps = Fraction(eps)
    if eps < 0:
        raise ValueError("eps must be non-negative")
    mults = a.mults() if isinstance(a, OrbitSet) else a.mults
    if len(mults) != len(md.h_values):
        raise ValueError("orbit set does not match the Morse data")
    total = Fraction(0)
    for m, h in zip(mults, md.h_values):
        weight = 1 + eps * h
        if weight <= 0:
            raise ValueError("eps too large: fiber length must stay positive")
        total += 2 * m * weight
    return total


def degree(b: Bundle, a, c) -> int:
    if homology_class(b, a) != homology_class(b, c):
        raise NonHomologous(f"{a} and {c} lie in different classes")
    diff = a.total() - c.total()
    if diff < 0:
        raise NegativeDegree(f"{a} has smaller total multiplicity than {c}")
    return diff // b.abs_e()


def _check_gamma(b: Bundle, gamma: int):
    if not 0 <= gamma < b.abs_e():
        raise GammaOutOfRange(f"gamma must lie in [0, {b.abs_e()}), got {gamma}")


def enumerate_generators(b: Bundle, gamma: int, max_total: int) -> list:
    """Admissible orbit sets of class ``gamma`` with total at most ``max_total``.

    Ordered by total, then by the exponent vector (m_minus, m_hyp, m_plus)
    in decreasing lexicographic order, so e_- comes first and e_+ last.
    """
    _check_gamma(b, gamma)
    # descending lexicographic order of 0/1 vectors
    hyp_vectors = list(itertools.product((1, 0), repeat=b.n_hyperbolic))
    out = []
    for total in range(gamma, max_total + 1, b.abs_e()):
        for m_minus in range(total, -1, -1):
            rest = total - m_minus
            for hyp in hyp_vectors:
                j = sum(hyp)
                if j <= rest:
                    out.append(OrbitSet(m_minus, hyp, rest - j))
    return out


def enumerate_critical_generators(b: Bundle, md: MorseData, gamma: int, max_total: int) -> list:
    """Same as :func:`enumerate_generators` for arbitrary Morse data."""
    _check_gamma(b, gamma)
    indices = md.indices
    n = len(indices)

    def fill(pos, rest):
        if pos == n - 1:
            if indices[pos] != 1 or rest <= 1:
                yield (rest,)
            return
        top = min(rest, 1) if indices[pos] == 1 else rest
        for m in range(top, -1, -1):
            for tail in fill(pos + 1, rest - m):
                yield (m, *tail)

    out = []
    for total in range(gamma, max_total + 1, b.abs_e()):
        out.extend(CriticalOrbitSet(m, indices) for m in fill(0, total))
    return out


_FACTOR = re.compile(r"^(e-|e\+|h(\d+))(?:\^(\d+))?$")


def parse_orbit_set(text: str, genus: int) -> OrbitSet:
    """Parse literals such as ``"e-^2 h1 e+^3"``; the empty string is the empty set."""
    m_minus, m_plus = 0, 0
    hyp = [0] * (2 * genus)
    for word in text.split():
        match = _FACTOR.match(word)
        if not match:
            raise OrbitSetSyntaxError(f"cannot parse factor {word!r}")
        k = int(match.group(3)) if match.group(3) is not None else 1
        if k < 1:
            raise OrbitSetSyntaxError(f"exponent must be positive in {word!r}")
        if match.group(1) == "e-":
            m_minus += k
        elif match.group(1) == "e+":
            m_plus += k
        else:
            i = int(match.group(2))
            if not 1 <= i <= 2 * genus:
                raise OrbitSetSyntaxError(f"h{i} out of range for genus {genus}")
            hyp[i - 1] += k
    return OrbitSet(m_minus, tuple(hyp), m_plus)
