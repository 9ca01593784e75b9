"""Base surfaces, circle bundles over them and the homology of the total space."""
from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Bundle", "HomologyGroups", "homology_of_total_space", "gamma_class_count"]


@dataclass(frozen=True)
class Bundle:
    """Circle bundle of Euler class ``euler_class`` over a closed genus ``genus`` surface."""

    genus: int
    euler_class: int

    def __post_init__(self):
        if not isinstance(self.genus, int) or self.genus < 0:
            raise ValueError(f"genus must be a non-negative integer, got {self.genus!r}")
        if not isinstance(self.euler_class, int) or self.euler_class >= 0:
            raise ValueError(f"euler class must be a negative integer, got {self.euler_class!r}")

    def chi(self) -> int:
        return 2 - 2 * self.genus

    def abs_e(self) -> int:
        return -self.euler_class

    @property
    def n_hyperbolic(self) -> int:
        return 2 * self.genus


@dataclass(frozen=True)
class HomologyGroups:
    """Integral homology in degrees 0..3 as (free rank, torsion orders) pairs.

    Torsion of order 1 is never stored.
    """

    groups: tuple

    def __getitem__(self, degree):
        return self.groups[degree]

    def __len__(self):
        return len(self.groups)


def homology_of_total_space(b: Bundle) -> HomologyGroups:
    g, n = b.genus, b.abs_e()
    torsion = (n,) if n > 1 else ()
    return HomologyGroups(((1, ()), (2 * g, torsion), (2 * g, ()), (1, ())))


def gamma_class_count(b: Bundle) -> int:
    """Number of classes in H_1 that carry generators (the cyclic fiber part)."""
    return b.abs_e()
