"""Command-line front end."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .complex import build_complex, certified_bound, homology
from .errors import DegenerateRotation, GammaOutOfRange, OrbitSetSyntaxError, PrequantError
from .grading import ech_index, grading
from .orbits import MorseData, OrbitSet, degree, enumerate_generators, parse_orbit_set
from .partitions import (
    Rotation,
    classify_connector,
    connector_delta,
    enumerate_covers,
    integer_partitions,
    negative_partition,
    positive_partition,
)
from .suites import SUITES
from .topology import Bundle

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

__all__ = ["main", "RunConfig", "generator_records", "generator_table", "type_label", "record_to_orbit_set"]


@dataclass(frozen=True)
class RunConfig:
    command: str
    genus: int
    euler_class: int
    gamma: int | None  # None means every class
    max_total: int | None
    output_format: str = "table"
    seed: int = 0
    eps: Fraction | None = None
    action_cutoff: Fraction | None = None
    out: str | None = None

    def bundle(self) -> Bundle:
        return Bundle(self.genus, self.euler_class)

    def gammas(self):
        b = self.bundle()
        if self.gamma is None:
            return list(range(b.abs_e()))
        if not 0 <= self.gamma < b.abs_e():
            raise GammaOutOfRange(f"gamma must lie in [0, {b.abs_e()})")
        return [self.gamma]


class UsageError(Exception):
    pass


def type_label(m_minus: int, n_hyp: int, m_plus: int) -> str:
    """Label in the style e-^2h_ih_je+, with distinct letters for distinct saddles."""
    letters = "ijklmnopqrstuvwxyzabcdefg"
    words = []
    if m_minus:
        words.append("e-" if m_minus == 1 else f"e-^{m_minus}")
    words.extend(f"h_{letters[t]}" for t in range(n_hyp))
    if m_plus:
        words.append("e+" if m_plus == 1 else f"e+^{m_plus}")
    return "".join(words) or "∅"


def generator_records(b: Bundle, gamma: int, max_total: int, md=None, eps=None, action_cutoff=None):
    if action_cutoff is None:
        gens = enumerate_generators(b, gamma, max_total)
    else:
        md = md or MorseData.perfect_for(b.genus)
        cx = build_complex(b, md, gamma, max_total, eps=eps, action_cutoff=action_cutoff)
        keep = {a for column in cx.generators.values() for a in column}
        gens = [a for a in enumerate_generators(b, gamma, max_total) if a in keep]
    base = OrbitSet(gamma, (0,) * b.n_hyperbolic, 0)
    return [
        {
            "m_minus": a.m_minus,
            "m_hyp": list(a.m_hyp),
            "m_plus": a.m_plus,
            "total": a.total(),
            "gamma": gamma,
            "degree": degree(b, a, base),
            "index": ech_index(b, a, base).total,
            "label": a.label(),
        }
        for a in gens
    ]


def record_to_orbit_set(rec) -> OrbitSet:
    return OrbitSet(rec["m_minus"], tuple(rec["m_hyp"]), rec["m_plus"])


def generator_table(b: Bundle, gamma: int, max_total: int):
    """{total: {index: [type labels]}}, labels in enumeration order without repeats."""
    table = {}
    for a in enumerate_generators(b, gamma, max_total):
        cell = table.setdefault(a.total(), {}).setdefault(grading(b, a, gamma), [])
        label = type_label(a.m_minus, a.hyperbolic_count(), a.m_plus)
        if label not in cell:
            cell.append(label)
    return table


def _render_table(table) -> str:
    columns = sorted({k for row in table.values() for k in row})
    header = ["", *(f"I={k}" for k in columns)]
    body = [[f"Λ^{total}", *(", ".join(row.get(k, [])) for k in columns)] for total, row in sorted(table.items())]
    widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]
    lines = [" | ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in [header, *body]]
    lines.insert(1, "-+-".join("-" * w for w in widths))
    return "\n".join(lines)


def _tsv_value(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
    if isinstance(v, (list, tuple)):
        return ",".join(_tsv_value(x) for x in v)
    return str(v)


def _json_default(v):
    if isinstance(v, Fraction):
        return _tsv_value(v)
    raise TypeError(f"cannot serialize {type(v).__name__}")


def _tsv(records, columns) -> str:
    lines = ["\t".join(columns)]
    lines += ["\t".join(_tsv_value(r[c]) for c in columns) for r in records]
    return "\n".join(lines)


def _emit(cfg: RunConfig, records, columns, table_text=None):
    if cfg.output_format == "json":
        return json.dumps(records, indent=2, ensure_ascii=False, default=_json_default)
    if cfg.output_format == "tsv":
        return _tsv(records, columns)
    return table_text if table_text is not None else _tsv(records, columns).replace("\t", "  ")


def cmd_generators(cfg: RunConfig, args) -> tuple:
    b = cfg.bundle()
    top = 4 if cfg.max_total is None else cfg.max_total
    records, tables = [], []
    for gamma in cfg.gammas():
        records += generator_records(b, gamma, top, eps=cfg.eps, action_cutoff=cfg.action_cutoff)
        if cfg.action_cutoff is None:
            tables.append(f"gamma = {gamma}\n" + _render_table(generator_table(b, gamma, top)))
    columns = ["m_minus", "m_hyp", "m_plus", "total", "gamma", "degree", "index", "label"]
    text = "\n\n".join(tables) if tables else None
    return EXIT_OK, _emit(cfg, records, columns, text)


def cmd_index(cfg: RunConfig, args) -> tuple:
    b = cfg.bundle()
    a = parse_orbit_set(args.a, b.genus)
    c = parse_orbit_set(args.c, b.genus)
    br = ech_index(b, a, c)
    rec = {"a": a.label(), "c": c.label(), "c_tau": br.c_tau, "q_tau": br.q_tau,
           "cz": br.cz_total, "index": br.total}
    text = f"I({a.label()}, {c.label()}) = c_tau + Q_tau + CZ = {br.c_tau} + {br.q_tau} + {br.cz_total} = {br.total}"
    return EXIT_OK, _emit(cfg, rec if cfg.output_format == "json" else [rec], list(rec), text)


def _load_morse(path, genus):
    if path is None:
        return MorseData.perfect_for(genus)
    with open(path) as fh:
        raw = json.load(fh)
    return MorseData(raw["indices"], [Fraction(h) for h in raw["h_values"]], [tuple(f) for f in raw.get("flows", [])])


def cmd_homology(cfg: RunConfig, args) -> tuple:
    b = cfg.bundle()
    md = _load_morse(args.morse, b.genus)
    records = []
    for gamma in cfg.gammas():
        top = gamma + 3 * b.abs_e() if cfg.max_total is None else cfg.max_total
        cx = build_complex(b, md, gamma, top, eps=cfg.eps, action_cutoff=cfg.action_cutoff)
        dims = homology(cx)
        bound = certified_bound(b, gamma, top)
        for k in sorted(cx.generators):
            if k < bound:
                records.append({"gamma": gamma, "grading": k, "dimension": dims[k],
                                "experimental": cx.experimental})
    return EXIT_OK, _emit(cfg, records, ["gamma", "grading", "dimension", "experimental"])


def cmd_verify(cfg: RunConfig, args) -> tuple:
    suite = SUITES[args.which]
    kwargs = {"genus": cfg.genus, "euler": cfg.euler_class, "gamma": cfg.gamma, "seed": cfg.seed,
              "max_mult": args.max_mult}
    if cfg.max_total is not None:
        kwargs["max_total"] = cfg.max_total
    if args.samples is not None:
        kwargs["samples"] = args.samples
    report = suite(**kwargs)
    code = EXIT_OK if report.passed else EXIT_FAILED
    if cfg.output_format == "json":
        return code, json.dumps(report.to_json(), indent=2, default=_json_default)
    status = "PASS" if report.passed else "FAIL"
    text = f"{status} {report.name}: {report.checked} checks"
    if report.experimental:
        text += " (experimental)"
    if report.counterexample:
        text += f"\ncounterexample: {json.dumps(report.counterexample, default=_json_default)}"
    if cfg.output_format == "tsv":
        text = _tsv([{"suite": report.name, "passed": report.passed, "checked": report.checked}],
                    ["suite", "passed", "checked"])
    return code, text


def _parse_rotation(text: str):
    tokens = {"small-positive": Rotation.SMALL_POSITIVE, "small-negative": Rotation.SMALL_NEGATIVE,
              "positive-hyperbolic": Rotation.POSITIVE_HYPERBOLIC,
              "negative-hyperbolic": Rotation.NEGATIVE_HYPERBOLIC}
    if text in tokens:
        return tokens[text]
    try:
        return Fraction(text)
    except ValueError:
        raise UsageError(f"cannot read rotation {text!r}") from None


def cmd_partitions(cfg: RunConfig, args) -> tuple:
    """Partitions for m = 1..M; multiplicities where m theta is an integer are skipped."""
    theta = _parse_rotation(args.theta)
    records = []
    for m in range(1, args.m + 1):
        try:
            pos, neg = positive_partition(theta, m), negative_partition(theta, m)
        except DegenerateRotation:
            continue
        records.append({"theta": args.theta, "m": m, "positive": list(pos.parts), "negative": list(neg.parts)})
    if not records:
        raise DegenerateRotation(f"every multiple of {args.theta} up to {args.m} is an integer")
    return EXIT_OK, _emit(cfg, records, ["theta", "m", "positive", "negative"])


def cmd_connectors(cfg: RunConfig, args) -> tuple:
    b = Bundle(max(cfg.genus, 1), cfg.euler_class)
    records = []
    for cover in enumerate_covers(args.max_mult):
        comp = classify_connector(b, [cover]).components[0]
        if comp.index > 1:
            continue
        records.append({"orbit": cover.base_orbit.value, "genus": cover.dom_genus,
                        "positive": list(cover.pos_end_mults), "negative": list(cover.neg_end_mults),
                        "index": comp.index, "label": comp.label})
    for k in range(2, args.max_mult + 1):
        for parts in integer_partitions(k):
            if len(parts) >= 2:
                for case, orbit in (("i.b", "elliptic_plus"), ("i.c", "elliptic_minus")):
                    records.append({"orbit": orbit, "genus": 0, "case": case, "ends": list(parts),
                                    "two_delta": connector_delta(case, parts)})
    covers = [r for r in records if "label" in r]
    deltas = [r for r in records if "two_delta" in r]
    if cfg.output_format == "json":
        return EXIT_OK, json.dumps({"covers": covers, "deltas": deltas}, indent=2)
    first = _tsv(covers, ["orbit", "genus", "positive", "negative", "index", "label"])
    second = _tsv(deltas, ["case", "ends", "two_delta"])
    text = first + "\n\n" + second
    return EXIT_OK, text if cfg.output_format == "tsv" else text.replace("\t", "  ")


def _int_or_all(text):
    if text == "all":
        return None
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'all', got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--genus", type=int, default=1, help="genus of the base surface")
    common.add_argument("--euler", type=int, default=-1, help="Euler class (negative)")
    common.add_argument("--gamma", type=_int_or_all, default=None, help="class in [0, -e) or 'all'")
    common.add_argument("--max-total", type=int, default=None, help="cutoff on total multiplicity")
    common.add_argument("--eps", type=Fraction, default=None, help="perturbation size for the action")
    common.add_argument("--action-cutoff", type=Fraction, default=None,
                        help="keep generators with action <= this multiple of pi")
    common.add_argument("--format", dest="output_format", choices=("table", "json", "tsv"), default="table")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write output to FILE")

    parser = argparse.ArgumentParser(prog="prequant-ech", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("generators", parents=[common], help="list generators with their gradings")
    p = sub.add_parser("index", parents=[common], help="ECH index of a pair of orbit sets")
    p.add_argument("a")
    p.add_argument("c")
    p = sub.add_parser("homology", parents=[common], help="homology of the filtered complex")
    p.add_argument("--morse", default=None, help="JSON file with indices, h_values and flows")
    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("which", choices=sorted(SUITES))
    p.add_argument("--max-mult", type=int, default=6)
    p.add_argument("--samples", type=int, default=None)
    p = sub.add_parser("partitions", parents=[common], help="partition conditions for a rotation")
    p.add_argument("--theta", required=True, help="p/q or small-positive, small-negative, ...")
    p.add_argument("--m", type=int, default=8)
    p = sub.add_parser("connectors", parents=[common], help="classify low-index connector components")
    p.add_argument("--max-mult", type=int, default=6)
    return parser


COMMANDS = {
    "generators": cmd_generators,
    "index": cmd_index,
    "homology": cmd_homology,
    "verify": cmd_verify,
    "partitions": cmd_partitions,
    "connectors": cmd_connectors,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.genus, args.euler, args.gamma, args.max_total,
                        args.output_format, args.seed, args.eps, args.action_cutoff, args.out)
        cfg.bundle()
        cfg.gammas()
    except (ValueError, GammaOutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        code, text = COMMANDS[args.command](cfg, args)
    except (OrbitSetSyntaxError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrequantError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
