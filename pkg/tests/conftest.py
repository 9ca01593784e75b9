from fractions import Fraction

import pytest

from prequant_ech import Bundle, OrbitSet


def word(m_minus=0, hyp=(), m_plus=0, genus=None):
    """Orbit set from exponents; ``hyp`` lists the 1-based saddle labels present."""
    g = genus if genus is not None else max([0, *((h + 1) // 2 for h in hyp)])
    m_hyp = [0] * (2 * g)
    for h in hyp:
        m_hyp[h - 1] += 1
    return OrbitSet(m_minus, tuple(m_hyp), m_plus)


@pytest.fixture
def g2():
    return Bundle(2, -1)


F = Fraction
