"""Named verification suites shared by the CLI and the acceptance tests."""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .complex import (
    Report,
    build_complex,
    lens_lattice_bijection,
    stability_census,
    stability_threshold,
    verify_main_theorem,
)
from .grading import TrivializationOffset, ech_index, index_parity, index_with_offsets
from .oracles import brute_negative_partition, brute_positive_partition
from .orbits import MorseData, OrbitKind, OrbitSet, enumerate_generators
from .partitions import (
    Rotation,
    classify_connector,
    connector_delta,
    enumerate_covers,
    integer_partitions,
    negative_partition,
    positive_partition,
)
from .topology import Bundle

__all__ = [
    "SUITES",
    "main_theorem_suite",
    "stability_suite",
    "lens_suite",
    "connectors_suite",
    "partitions_suite",
    "parity_suite",
    "additivity_suite",
    "trivialization_suite",
    "differential_suite",
    "random_morse_data",
]


def _gammas(b: Bundle, gamma):
    return range(b.abs_e()) if gamma is None else [gamma]


def main_theorem_suite(genus=1, euler=-1, gamma=None, max_total=None, **_):
    b = Bundle(genus, euler)
    checked, runs = 0, []
    for g in _gammas(b, gamma):
        top = g + 3 * b.abs_e() if max_total is None else max_total
        r = verify_main_theorem(b, g, top)
        checked += r.checked
        runs.append(r.details)
        if not r.passed:
            return Report("main-theorem", False, checked, r.counterexample, {"runs": runs})
    return Report("main-theorem", True, checked, None, {"runs": runs})


def stability_suite(genus=1, euler=-1, gamma=None, width=12, **_):
    b = Bundle(genus, euler)
    expected = 2 ** (2 * genus - 1)
    checked = 0
    for g in _gammas(b, gamma):
        lo = stability_threshold(b, g)
        dims = stability_census(b, g, (lo, lo + width))
        for k in range(lo, lo + width + 1):
            checked += 1
            if dims[k] != expected:
                return Report("stability", False, checked,
                              {"gamma": g, "grading": k, "dimension": dims[k], "expected": expected})
    return Report("stability", True, checked, None, {"expected": expected})


def lens_suite(euler=-1, gamma=None, max_total=30, **_):
    b = Bundle(0, euler)
    checked, sizes = 0, {}
    for g in _gammas(b, gamma):
        result = lens_lattice_bijection(b, g, max_total)
        checked += len(result)
        sizes[g] = len(result)
        if not result.ok:
            return Report("lens", False, checked, {
                "gamma": g, "gaps": result.gaps, "duplicates": result.duplicates,
                "step_failures": result.step_failures})
    return Report("lens", True, checked, None, {"points_per_class": sizes})


def connectors_suite(genus=1, max_mult=6, max_genus=2, **_):
    b = Bundle(max(genus, 1), -1)
    covers = list(enumerate_covers(max_mult, max_genus))
    checked = 0
    for cover in covers:
        report = classify_connector(b, [cover])
        comp = report.components[0]
        checked += 1
        fail = None
        if comp.index < 0:
            fail = "negative Fredholm index"
        elif comp.index == 0 and comp.label not in ("i.a", "i.b", "i.c"):
            fail = "index-0 component outside the classification"
        elif comp.index == 1 and cover.base_orbit is OrbitKind.HYPERBOLIC and cover.branched \
                and comp.label != "ii":
            fail = "index-1 hyperbolic cover with the wrong ends"
        elif report.ech_index != 0:
            fail = "connector with nonzero ECH index"
        if fail:
            return Report("connectors", False, checked, {"reason": fail, "cover": repr(cover)})
    # index 0 components glued into connectors
    low = [c for c in covers if classify_connector(b, [c]).index == 0]
    for first in low:
        for second in low:
            report = classify_connector(b, [first, second])
            checked += 1
            if report.index != 0 or report.ech_index != 0 or not report.valid:
                return Report("connectors", False, checked, {"reason": "bad two-component connector",
                                                             "cover": repr((first, second))})
    worst = None
    for k in range(2, max_mult + 1):
        for parts in integer_partitions(k):
            if len(parts) < 2:
                continue
            for case in ("i.b", "i.c"):
                value = connector_delta(case, parts)
                checked += 1
                worst = value if worst is None else max(worst, value)
                if value > -2:
                    return Report("connectors", False, checked,
                                  {"reason": "2 delta above -2", "case": case, "ends": parts, "value": value})
    return Report("connectors", True, checked, None, {"covers": len(covers), "largest_2delta": worst})


def partitions_suite(max_m=8, max_q=9, **_):
    thetas = sorted({Fraction(p, q) for q in range(1, max_q + 1) for p in range(-2 * q, 2 * q + 1)})
    checked = 0
    for theta in thetas:
        for m in range(1, max_m + 1):
            if (m * theta).denominator == 1:
                continue
            checked += 1
            pos, neg = positive_partition(theta, m), negative_partition(theta, m)
            if pos.parts != brute_positive_partition(theta, m):
                return Report("partitions", False, checked, {"theta": str(theta), "m": m, "side": "+"})
            if neg.parts != brute_negative_partition(theta, m):
                return Report("partitions", False, checked, {"theta": str(theta), "m": m, "side": "-"})
            if pos != negative_partition(-theta, m):
                return Report("partitions", False, checked, {"theta": str(theta), "m": m, "side": "symmetry"})
    for m in range(1, max_m + 1):
        checked += 1
        q = Fraction(1, m + 1)
        closed = (
            positive_partition(Rotation.SMALL_POSITIVE, m).parts == (1,) * m,
            negative_partition(Rotation.SMALL_POSITIVE, m).parts == (m,),
            positive_partition(q, m).parts == (1,) * m,
            negative_partition(q, m).parts == (m,),
        )
        if not all(closed):
            return Report("partitions", False, checked, {"m": m, "side": "closed form"})
    return Report("partitions", True, checked, None, {"rotations": len(thetas)})


@lru_cache(maxsize=None)
def _pool(genus, euler, gamma, max_total):
    return tuple(enumerate_generators(Bundle(genus, euler), gamma, max_total))


def _random_class(rng, max_genus=3, max_abs_e=5, max_total=10):
    b = Bundle(rng.randint(0, max_genus), -rng.randint(1, max_abs_e))
    gamma = rng.randrange(b.abs_e())
    return b, _pool(b.genus, b.euler_class, gamma, max_total)


def parity_suite(samples=10_000, seed=0, **_):
    rng = random.Random(seed)
    for n in range(samples):
        b, pool = _random_class(rng)
        a, c = rng.choice(pool), rng.choice(pool)
        total = ech_index(b, a, c).total
        if ("odd" if total % 2 else "even") != index_parity(a, c):
            return Report("parity", False, n + 1, {"bundle": repr(b), "a": str(a), "c": str(c)})
    return Report("parity", True, samples, None, {"seed": seed})


def additivity_suite(samples=10_000, seed=0, **_):
    rng = random.Random(seed)
    for n in range(samples):
        b, pool = _random_class(rng)
        a, m, c = sorted((rng.choice(pool) for _ in range(3)), key=OrbitSet.total, reverse=True)
        lhs = ech_index(b, a, c).total
        rhs = ech_index(b, a, m).total + ech_index(b, m, c).total
        if lhs != rhs:
            return Report("additivity", False, n + 1,
                          {"bundle": repr(b), "a": str(a), "b": str(m), "c": str(c)})
    return Report("additivity", True, samples, None, {"seed": seed})


def trivialization_suite(samples=1_000, seed=0, **_):
    rng = random.Random(seed)
    for n in range(samples):
        b, pool = _random_class(rng)
        a, c = rng.choice(pool), rng.choice(pool)
        off = TrivializationOffset(rng.randint(-5, 5), tuple(rng.randint(-5, 5) for _ in range(b.n_hyperbolic)),
                                   rng.randint(-5, 5))
        if index_with_offsets(b, a, c, off).total != ech_index(b, a, c).total:
            return Report("trivialization", False, n + 1,
                          {"bundle": repr(b), "a": str(a), "c": str(c), "offset": repr(off)})
    return Report("trivialization", True, samples, None, {"seed": seed})


def _left_kernel(rows):
    """Basis (as bitsets over row positions) of {v : sum v_i rows_i = 0} over GF(2)."""
    n = len(rows)
    work = [(rows[i], 1 << i) for i in range(n)]
    basis = []
    pivots = {}
    for value, tag in work:
        while value:
            top = value.bit_length() - 1
            if top not in pivots:
                pivots[top] = (value, tag)
                break
            pv, pt = pivots[top]
            value, tag = value ^ pv, tag ^ pt
        if not value:
            basis.append(tag)
    return basis


def random_morse_data(rng: random.Random, genus: int, extra_pairs: int | None = None) -> MorseData:
    """Random Morse data on a genus-g surface whose Morse boundary squares to zero.

    ``extra_pairs`` additional minima or maxima are added, balanced by saddles.
    """
    extra = rng.randint(0, 2) if extra_pairs is None else extra_pairs
    n_min = 1 + rng.randint(0, extra)
    n_max = 1 + extra - (n_min - 1)
    n_sad = n_min + n_max - (2 - 2 * genus)
    indices = (0,) * n_min + (1,) * n_sad + (2,) * n_max
    mins = list(range(n_min))
    sads = list(range(n_min, n_min + n_sad))
    maxs = list(range(n_min + n_sad, len(indices)))
    flows = set()
    if n_min + n_max > 2:
        low_rows = []
        for s in sads:
            row = 0
            for j, q in enumerate(mins):
                if rng.random() < 0.5:
                    flows.add((s, q))
                    row |= 1 << j
            low_rows.append(row)
        kernel = _left_kernel(low_rows)
        for p in maxs:
            combo = 0
            for vec in kernel:
                if rng.random() < 0.5:
                    combo ^= vec
            for i, s in enumerate(sads):
                if combo >> i & 1:
                    flows.add((p, s))
    h = [Fraction(-1, 2)] * n_min + [Fraction(0)] * n_sad + [Fraction(1, 2)] * n_max
    h = [x + Fraction(rng.randint(-9, 9), 40) for x in h]
    return MorseData(indices, h, flows)


def differential_suite(samples=100, seed=0, max_total=4, **_):
    rng = random.Random(seed)
    checked = nonzero = 0
    for n in range(samples):
        genus = rng.randint(0, 2)
        b = Bundle(genus, -rng.randint(1, 3))
        md = random_morse_data(rng, genus)
        cx = build_complex(b, md, rng.randrange(b.abs_e()), max_total)
        checked += 1
        nonzero += not cx.is_zero()
        if not cx.squares_to_zero():
            return Report("differential", False, checked, {"bundle": repr(b), "morse": repr(md)})
    for genus in range(4):
        for abs_e in range(1, 5):
            b = Bundle(genus, -abs_e)
            for g in range(abs_e):
                checked += 1
                if not build_complex(b, MorseData.perfect_for(genus), g, g + 3 * abs_e).is_zero():
                    return Report("differential", False, checked, {"bundle": repr(b), "gamma": g})
    return Report("differential", True, checked, None, {"seed": seed, "nonzero_random": nonzero})


SUITES = {
    "main-theorem": main_theorem_suite,
    "stability": stability_suite,
    "lens": lens_suite,
    "connectors": connectors_suite,
    "partitions": partitions_suite,
    "parity": parity_suite,
    "additivity": additivity_suite,
    "trivialization": trivialization_suite,
    "differential": differential_suite,
}
