"""Command line front end.

Exit codes: 0 everything matches, 1 a cap-bounded negative (no n found up
to the cap, or a graph that is not strongly connected), 2 a mismatch with a
tabulated expectation, 3 a construction, data or usage error, 4 an empty
vertex set.  ``--group`` takes the rest of its words, so put it after the
subcommand: ``engelgraphs engel min-n --group psl2 11``.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import class_algebra as ca
from .catalog import build_group
from .connectivity import (
    DEFAULT_N_CAP, DEFAULT_TABLE1, ConnectivityReport, CriterionInapplicable, EmptyVertexSet,
    min_strong_n, prediction_for, sporadic_reports, strongly_connected, summary_table,
    verify_table1_suite,
)
from .engel_graphs import INFINITY, EngelOracle, engel_depth
from .finite_field import GF, field_spec, find_engel_coefficient
from .group_core import DEFAULT_SEED, GroupError, cycle_string, parse_perm
from .group_core import alternating_group, symmetric_group, sylow_subgroup

OK, NEGATIVE, MISMATCH, DATA_ERROR, EMPTY = 0, 1, 2, 3, 4


@dataclass
class RunConfig:
    group: str | None = None
    n_cap: int = DEFAULT_N_CAP
    seed: int = DEFAULT_SEED
    threads: int = 1
    cache_dir: str | None = None
    format: str = "json"

    def __post_init__(self):
        if self.n_cap < 2:
            raise ValueError("--n-cap must be at least 2")
        if self.threads < 1:
            raise ValueError("--threads must be positive")
        if self.cache_dir is not None:
            Path(self.cache_dir).mkdir(parents=True, exist_ok=True)


class Emitter:
    """Single writer for JSON lines or text."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def record(self, obj) -> None:
        if isinstance(obj, ConnectivityReport):
            line = obj.to_json()
        else:
            line = json.dumps(obj, sort_keys=True, default=_jsonable)
        self.stream.write(line + "\n")

    def text(self, s: str) -> None:
        self.stream.write(s.rstrip("\n") + "\n")


def _jsonable(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if hasattr(o, "numerator"):
        return str(o)
    raise TypeError(f"not serializable: {type(o)}")


def _group(cfg: RunConfig, spec=None):
    spec = spec or cfg.group
    if not spec:
        raise ValueError("a group is required (--group ...)")
    return spec, build_group(spec, cache_dir=cfg.cache_dir)


def _element(G, text: str) -> int:
    text = text.strip()
    if text.lstrip("-").isdigit():
        i = int(text)
        if not 0 <= i < G.order:
            raise ValueError(f"element index {i} out of range")
        return i
    return G.index(parse_perm(text, G.degree))


# -- commands ------------------------------------------------------------------------------

def cmd_group(cfg, args, out) -> int:
    spec, G = _group(cfg, " ".join(args.spec) if args.spec else None)
    classes = G.conjugacy_classes()
    spectrum = {}
    for cl in classes:
        spectrum[str(cl.order)] = spectrum.get(str(cl.order), 0) + cl.size
    doc = {"group": spec, "order": G.order, "degree": G.degree, "classes": len(classes),
           "orders": dict(sorted(spectrum.items(), key=lambda kv: int(kv[0])))}
    if cfg.format == "text":
        out.text(f"{spec}: order {G.order}, degree {G.degree}, {len(classes)} classes")
        out.text("element orders: " + ", ".join(f"{k}:{v}" for k, v in doc["orders"].items()))
    else:
        out.record(doc)
    return OK


def cmd_engel(cfg, args, out) -> int:
    spec, G = _group(cfg)
    if args.action == "min-n":
        res = min_strong_n(G, cfg.n_cap)
        pred = prediction_for(spec)
        match = None
        if pred is not None:
            match = res.n == pred.n if pred.n is not None else not res.found
        rep = ConnectivityReport(
            group=spec, order=G.order, method="direct", n_tested=[s["n"] for s in res.steps],
            outcome=f"n={res.n}" if res.found else f"none up to {cfg.n_cap}", computed=res.n,
            predicted=pred.describe() if pred else None, match=match,
        )
        if cfg.format == "text":
            out.text(summary_table([rep]))
        else:
            out.record(rep)
        if match is False:
            return MISMATCH
        return OK if res.found else NEGATIVE
    if args.action == "check":
        n = _need_n(args)
        ok = strongly_connected(EngelOracle(G, n), n)
        pred = prediction_for(spec)
        expect = None
        if pred is not None:
            expect = pred.n is not None and pred.n <= n
        rep = ConnectivityReport(
            group=spec, order=G.order, method="direct", n_tested=[n],
            outcome="strongly connected" if ok else "not strongly connected",
            predicted=None if expect is None else ("strongly connected" if expect else "not strongly connected"),
            match=None if expect is None else ok == expect,
        )
        out.text(rep.outcome) if cfg.format == "text" else out.record(rep)
        if rep.match is False:
            return MISMATCH
        return OK if ok else NEGATIVE
    if args.action == "depth":
        if len(args.values) != 2:
            raise ValueError("depth needs two elements x y (indices or cycle notation)")
        x, y = (_element(G, v) for v in args.values)
        d = engel_depth(G, x, y)
        val = "inf" if d == INFINITY else int(d)
        if cfg.format == "text":
            out.text(f"d({cycle_string(G.elements[x])}, {cycle_string(G.elements[y])}) = {val}")
        else:
            out.record({"group": spec, "x": x, "y": y, "depth": val})
        return OK
    if args.action == "graph":
        n = _need_n(args)
        view = EngelOracle(G, max(n, 1)).graph(n)
        if not len(view.vertices):
            raise EmptyVertexSet(f"{spec} is {n}-Engel")
        out.text(view.to_json() if cfg.format == "json" else view.to_dot())
        return OK
    raise ValueError(f"unknown engel action {args.action}")


def _need_n(args) -> int:
    if len(args.values) != 1:
        raise ValueError(f"{args.action} needs exactly one n")
    n = int(args.values[0])
    if n < 1:
        raise ValueError("n must be at least 1")
    return n


def table1_selection(max_q: int | None, groups=None) -> list[str]:
    if groups:
        return groups
    sel = list(DEFAULT_TABLE1)
    if max_q is not None:
        sel = [s for s in sel if not s.startswith("psl2 ") or int(s.split()[1]) <= max_q]
    return sel


def cmd_table1(cfg, args, out) -> int:
    sel = table1_selection(args.max_q, [cfg.group] if cfg.group else None)
    reports = verify_table1_suite(sel, cfg.n_cap, cfg.threads, cfg.cache_dir)
    if cfg.format == "text":
        out.text(summary_table(reports))
    else:
        for r in reports:
            out.record(r)
    return MISMATCH if any(r.match is False for r in reports) else OK


def cmd_sporadic(cfg, args, out) -> int:
    spec, G = _group(cfg, cfg.group or "m11")
    reports = sporadic_reports(G, args.n, seed=cfg.seed, direct=not args.no_direct, spec=spec)
    if cfg.format == "text":
        for r in reports:
            out.text(f"{r.method:20s} {r.outcome}" + ("" if r.match is None else f"  [match: {r.match}]"))
    else:
        for r in reports:
            out.record(r)
    return MISMATCH if any(r.match is False for r in reports) else OK


TABLE_GROUPS = {
    "sym3": lambda: symmetric_group(3),
    "sym4": lambda: symmetric_group(4),
    "alt5": lambda: alternating_group(5),
    "psl2_7": lambda: build_group("psl2 7"),
}


def _table_name(spec: str) -> str:
    key = spec.lower().replace(" ", "")
    aliases = {"sym3": "sym3", "sym4": "sym4", "alt5": "alt5", "psl27": "psl2_7", "psl2_7": "psl2_7"}
    if key not in aliases:
        raise ValueError(f"no shipped character table for {spec!r}; choose one of {', '.join(TABLE_GROUPS)}")
    return aliases[key]


def cmd_classalg(cfg, args, out) -> int:
    if args.action == "crosscheck":
        names = [_table_name(cfg.group)] if cfg.group else list(TABLE_GROUPS)
        bad = False
        for name in names:
            res = ca.crosscheck_class_constants(TABLE_GROUPS[name](), ca.load_character_table(name))
            bad |= not res.ok
            doc = {"table": name, "triples": res.triples, "mismatches": res.mismatches, "ok": res.ok}
            out.text(f"{name}: {res.triples} triples, {len(res.mismatches)} mismatches") \
                if cfg.format == "text" else out.record(doc)
        return MISMATCH if bad else OK
    if args.action == "small":
        bad = False
        for doc in small_instances(cfg.seed):
            bad |= not doc["ok"]
            out.text(json.dumps(doc, sort_keys=True, default=_jsonable)) if cfg.format == "text" else out.record(doc)
        return MISMATCH if bad else OK
    raise ValueError(f"unknown classalg action {args.action}")


def small_instances(seed: int = DEFAULT_SEED) -> list[dict]:
    """Delta graph, bound and slices on (Alt(5), Alt(4), C5) and (Sym(4), D8, C3)."""
    docs = []
    for name, G, p_c, H_of in (
        ("alt5", alternating_group(5), 5, lambda G: G.normalizer(sylow_subgroup(G, 2, seed=seed))),
        ("sym4", symmetric_group(4), 3, lambda G: sylow_subgroup(G, 2, seed=seed)),
    ):
        table = ca.load_character_table(name)
        x = int(np.flatnonzero(G.element_orders == p_c)[0])
        C = G.closure([x])
        H = H_of(G)
        hyp = ca.hypotheses_check(G, H, C)
        delta = ca.delta_graph(G, H, C)
        pc = ca.perm_character(G, H, table)
        bound = ca.lower_bound_84(table, pc.multiplicities, ca.fusion_map(G, x, table))
        iota = int(G.involutions()[0])
        slices = ca.slice_sizes(G, iota)
        doc = {
            "group": name, "H_order": H.order, "C_order": C.order,
            "hypotheses": [hyp.hyp0, hyp.hyp1, hyp.hyp2, hyp.hyp3],
            "c": delta.c, "cosets": delta.coset_count, "within_cosets": delta.within_cosets,
            "bound": str(bound), "pi_multiplicities": pc.multiplicities,
            "slices": [[s.direct, str(s.formula)] for s in slices],
        }
        doc["ok"] = bool(hyp.all and delta.consistent and bound <= delta.c and all(s.agrees for s in slices))
        docs.append(doc)
    return docs


def cmd_monster(cfg, args, out) -> int:
    rep = ca.monster_check(ca.read_monster_constants(args.constants))
    if cfg.format == "text":
        for c in rep.checks:
            out.text(f"({c.name}) {'pass' if c.ok else 'FAIL'}: {c.detail}")
    else:
        for c in rep.checks:
            out.record(asdict(c))
    return OK if rep.ok else MISMATCH


def cmd_field(cfg, args, out) -> int:
    spec = field_spec(args.q, modulus=args.modulus)
    F = GF(spec)
    a = find_engel_coefficient(F)
    doc = {"q": spec.q, "p": spec.p, "f": spec.f, "modulus": list(spec.modulus),
           "primitive_element": F.primitive_element(), "engel_coefficient": a}
    if cfg.format == "text":
        out.text(f"F_{spec.q}: modulus {list(spec.modulus)}, T^3+aT+1 irreducible for a = {a}")
    else:
        out.record(doc)
    return OK


# -- parser ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", nargs="+", default=argparse.SUPPRESS, help="group spec, e.g. --group psl2 11")
    common.add_argument("--n-cap", type=int, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("json", "dot", "text"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="engelgraphs", description="Engel graphs of small finite groups",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", parents=[common], help="order, classes and element orders")
    g.add_argument("spec", nargs="*")
    g.set_defaults(func=cmd_group)

    e = sub.add_parser("engel", parents=[common], help="min-n | check n | depth x y | graph n")
    e.add_argument("action", choices=("min-n", "check", "depth", "graph"))
    e.add_argument("values", nargs="*")
    e.set_defaults(func=cmd_engel)

    t = sub.add_parser("table1", parents=[common], help="reproduce the table of exceptional n")
    t.add_argument("--max-q", type=int, default=None)
    t.set_defaults(func=cmd_table1)

    s = sub.add_parser("sporadic", parents=[common], help="local strategy and criteria for one group")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--no-direct", action="store_true")
    s.set_defaults(func=cmd_sporadic)

    c = sub.add_parser("classalg", parents=[common], help="crosscheck | small")
    c.add_argument("action", choices=("crosscheck", "small"))
    c.set_defaults(func=cmd_classalg)

    m = sub.add_parser("monster", parents=[common], help="exact checks of the Monster constants")
    m.add_argument("--constants", default=None)
    m.set_defaults(func=cmd_monster)

    f = sub.add_parser("field", parents=[common], help="F_q data and the cubic coefficient search")
    f.add_argument("q", help="prime power, as 8 or 2^3")
    f.add_argument("--modulus", default=None, help="file of modulus coefficients, low to high")
    f.set_defaults(func=cmd_field)
    return p


def make_config(ns) -> RunConfig:
    group = getattr(ns, "group", None)
    return RunConfig(
        group=" ".join(group) if group else None,
        n_cap=getattr(ns, "n_cap", DEFAULT_N_CAP),
        seed=getattr(ns, "seed", DEFAULT_SEED),
        threads=getattr(ns, "threads", 1),
        cache_dir=getattr(ns, "cache_dir", None),
        format=getattr(ns, "format", "json"),
    )


def main(argv=None, stream=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse uses 2, which is reserved for mismatches here
        return OK if exc.code == 0 else DATA_ERROR
    out = None
    try:
        cfg = make_config(ns)
        out = Emitter(cfg.format, stream)
        return ns.func(cfg, ns, out)
    except EmptyVertexSet as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EMPTY
    except (GroupError, ca.TableError, CriterionInapplicable, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
