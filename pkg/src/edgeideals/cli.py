"""Command-line interface.

Exit codes: 0 the queried property holds (or the output was produced),
1 the property fails, 2 malformed input.  Outputs are byte-identical for
identical invocations; timings appear only under --timings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .errors import InputError, SearchBudgetExceeded
from .graphs import (Graph, add_whiskers, delete_vertices, format_graph,
                     minimal_vertex_covers, is_unmixed, parse_graph,
                     vertex_covers_of_size)
from .monomials import (MonomialIdeal, alexander_dual_of_edge_ideal, edge_ideal,
                        squarefree_degree_component)
from .quotients import QuotientOrder, find_order, has_dual_linear_quotients, verify_order
from .homology import FieldSpec, betti_at, betti_numbers, is_componentwise_linear
from .decide import is_cm, is_sequentially_cm
from .harness import Campaign, run_campaign, run_fixture, CLAIM_STATEMENTS, FIXTURE_IDS

FIELD_ENV = "EDGEIDEALS_FIELD"


def _default_field() -> str:
    return os.environ.get(FIELD_ENV, "2")


def _parse_vertex_list(text: str, n: int, what: str) -> list:
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        try:
            v = int(piece)
        except ValueError:
            raise InputError(f"bad {what} list entry {piece!r}") from None
        if not 1 <= v <= n:
            raise InputError(f"{what} vertex {v} out of range 1..{n}")
        out.append(v - 1)
    return out


def _load_graph(args) -> Graph:
    if args.graph == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.graph, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.graph}: {exc}") from None
    G = parse_graph(text)
    if getattr(args, "whisker", None):
        G, _ = add_whiskers(G, _parse_vertex_list(args.whisker, G.n, "whisker"))
    if getattr(args, "delete", None):
        G = delete_vertices(G, _parse_vertex_list(args.delete, G.n, "delete"))
    return G


def _mono_text(support, labels) -> str:
    return "*".join(labels[v] for v in sorted(support)) if support else "1"


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        if args.timings:
            payload = dict(payload)
            payload["timings"] = {"seconds": round(time.perf_counter() - args.t0, 6)}
        print(json.dumps(payload, sort_keys=True))
    else:
        sys.stdout.write(text)
        if args.timings:
            sys.stderr.write(f"elapsed: {time.perf_counter() - args.t0:.6f}s\n")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_dual(args) -> int:
    G = _load_graph(args)
    dual = alexander_dual_of_edge_ideal(G)
    lines = [f"dual generators ({len(dual.gens)}):"]
    lines += [f"  {_mono_text(g.support, G.labels)}" for g in dual.gens]
    _emit(args, dual.to_json(G.labels), "\n".join(lines) + "\n")
    return 0


def _cmd_covers(args) -> int:
    G = _load_graph(args)
    if args.size is not None:
        covers = vertex_covers_of_size(G, args.size)
        title = f"vertex covers of size {args.size} ({len(covers)}):"
    else:
        covers = minimal_vertex_covers(G)
        title = f"minimal vertex covers ({len(covers)}):"
    unmixed = is_unmixed(G)
    lines = [title] + [f"  {_mono_text(c, G.labels)}" for c in covers]
    lines.append(f"unmixed: {str(unmixed).lower()}")
    payload = {
        "size": args.size,
        "covers": [[G.labels[v] for v in sorted(c)] for c in covers],
        "unmixed": unmixed,
    }
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0


def _cmd_betti(args) -> int:
    G = _load_graph(args)
    field = FieldSpec.parse(args.field)
    ideal = edge_ideal(G) if args.of == "edge" else alexander_dual_of_edge_ideal(G)
    if args.component is not None:
        ideal = squarefree_degree_component(ideal, args.component)
    table = betti_numbers(ideal, field)
    payload = table.to_json(G.labels)
    payload["of"] = args.of
    payload["component"] = args.component
    _emit(args, payload, table.to_text())
    return 0


def _cmd_lin_quotients(args) -> int:
    G = _load_graph(args)
    report = has_dual_linear_quotients(G)
    lines = []
    for d in sorted(report.per_degree):
        q = report.per_degree[d]
        if q is None:
            lines.append(f"degree {d}: no linear-quotients order exists")
        else:
            sizes = ",".join(str(s) for s in q.step_sizes())
            lines.append(f"degree {d}: certified ({len(q.order)} generators; colon sizes {sizes})")
    verdict = report.verdict
    lines.append(f"dual linear quotients: {str(verdict).lower()}")
    payload = {
        "kind": "dlq-report",
        "verdict": verdict,
        "per_degree": {str(d): (q.to_json(G.labels) if q is not None else None)
                       for d, q in report.per_degree.items()},
        "unknown": list(report.unknown),
        "skipped": list(report.skipped),
    }
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0 if verdict is True else 1


def _verdict_text(v, labels) -> str:
    kind = v.evidence.kind
    if kind == "quotient-certificates":
        why = "dual linear quotients, field-independent"
    elif kind == "zero-ideal-convention":
        why = "edgeless graph convention, field-independent"
    elif kind == "componentwise-scan":
        why = f"componentwise linear dual over field {v.field}"
    else:
        b = _mono_text(v.evidence.multidegree, labels)
        why = (f"nonlinear syzygy: dual component degree {v.evidence.degree}, "
               f"index {v.evidence.index}, multidegree {b}; field {v.field}")
    line = f"{v.property}: {str(v.value).lower()} ({why})"
    if v.unmixed is not None:
        line += f"\nunmixed: {str(v.unmixed).lower()}"
    return line + "\n"


def _cmd_is_scm(args) -> int:
    G = _load_graph(args)
    v = is_sequentially_cm(G, FieldSpec.parse(args.field))
    _emit(args, v.to_json(G.labels), _verdict_text(v, G.labels))
    return 0 if v.value else 1


def _cmd_is_cm(args) -> int:
    G = _load_graph(args)
    v = is_cm(G, FieldSpec.parse(args.field))
    _emit(args, v.to_json(G.labels), _verdict_text(v, G.labels))
    return 0 if v.value else 1


def _cmd_whisker(args) -> int:
    G = _load_graph(args)
    _emit(args, {"n": G.n, "graph": format_graph(G), "labels": list(G.labels)},
          format_graph(G))
    return 0


# ---------------------------------------------------------------------------
# verify


def _dual_component(G, degree) -> MonomialIdeal:
    return squarefree_degree_component(alexander_dual_of_edge_ideal(G), degree)


def _verify_certificate(G, data):
    if list(data.get("vars", [])) != list(G.labels):
        return False, "certificate variables do not match the graph's labels"
    q = QuotientOrder.from_json(data)
    if q.ideal.is_zero or not q.ideal.is_equigenerated:
        target = alexander_dual_of_edge_ideal(G)
    else:
        target = _dual_component(G, q.ideal.min_degree)
    if q.ideal != target:
        return False, "certificate generators do not match the graph's dual component"
    ok = verify_order(q)
    return ok, "linear quotients verified" if ok else "colon steps do not verify"


def _verify_dlq_report(G, data):
    dual = alexander_dual_of_edge_ideal(G)
    dmin = dual.min_degree if not dual.is_zero else 0
    per = data.get("per_degree", {})
    known = {int(d) for d in per}
    expected = set(range(dmin, G.n + 1))
    missing = expected - known - {int(d) for d in data.get("unknown", [])} \
        - {int(d) for d in data.get("skipped", [])}
    if missing:
        return False, f"report does not account for degrees {sorted(missing)}"
    exact_false = False
    for d_str, cert in sorted(per.items(), key=lambda kv: int(kv[0])):
        d = int(d_str)
        if cert is None:
            if find_order(_dual_component(G, d)) is not None:
                return False, f"degree {d} claimed impossible but an order exists"
            exact_false = True
        else:
            ok, why = _verify_certificate(G, cert)
            if not ok:
                return False, f"degree {d}: {why}"
    verdict = data.get("verdict")
    recomputed = False if exact_false else (None if data.get("unknown") else True)
    if verdict != recomputed:
        return False, f"verdict {verdict} does not match re-checked {recomputed}"
    return True, "report verified"


def _verify_verdict(G, data):
    prop = data.get("property")
    if prop not in ("SCM", "CM"):
        raise InputError(f"unknown verdict property {prop!r}")
    value = data.get("value")
    field = FieldSpec.parse(data.get("field", "2"))
    ev = data.get("evidence", {})
    kind = ev.get("kind")
    unmixed_claim = data.get("unmixed")
    if prop == "CM":
        if unmixed_claim is None:
            return False, "CM verdict lacks the unmixed flag"
        if is_unmixed(G) != unmixed_claim:
            return False, "unmixed flag does not match the graph"
    if kind == "zero-ideal-convention":
        if G.edge_count() != 0:
            return False, "zero-ideal evidence but the graph has edges"
        scm_value = True
    elif kind == "quotient-certificates":
        dual = alexander_dual_of_edge_ideal(G)
        dmin = dual.min_degree if not dual.is_zero else 0
        per = ev.get("per_degree", {})
        have = {int(d) for d in per}
        need = set(range(dmin, G.n + 1))
        if have != need:
            return False, f"certificates cover degrees {sorted(have)}, need {sorted(need)}"
        for d_str, cert in per.items():
            ok, why = _verify_certificate(G, cert)
            if not ok:
                return False, f"degree {d_str}: {why}"
        scm_value = True
    elif kind == "betti-witness":
        d = int(ev["degree"])
        i = int(ev["index"])
        index = {name: v for v, name in enumerate(G.labels)}
        try:
            b = frozenset(index[name] for name in ev["multidegree"])
        except KeyError as exc:
            raise InputError(f"unknown variable {exc} in witness") from None
        if len(b) == d + i:
            return False, "witness multidegree lies on the linear strand"
        from .monomials import Monomial
        rank = betti_at(_dual_component(G, d), Monomial(b), i, field)
        if rank == 0:
            return False, "witness Betti number vanishes on re-computation"
        scm_value = False
    elif kind == "componentwise-scan":
        report = is_componentwise_linear(alexander_dual_of_edge_ideal(G), field)
        if not report.verdict:
            return False, "componentwise-scan evidence but the dual is not componentwise linear"
        scm_value = True
    else:
        raise InputError(f"evidence kind {kind!r} is not re-checkable here")
    expected = scm_value if prop == "SCM" else (scm_value and unmixed_claim)
    if value != expected:
        return False, f"verdict value {value} does not match re-checked {expected}"
    return True, "verdict verified"


def _cmd_verify(args) -> int:
    G = _load_graph(args)
    if args.infile == "-":
        raw = sys.stdin.read()
    else:
        try:
            with open(args.infile, "r", encoding="utf-8") as fh:
                raw = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.infile}: {exc}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError("expected a JSON object")
    if "property" in data:
        ok, why = _verify_verdict(G, data)
    elif data.get("kind") == "dlq-report":
        ok, why = _verify_dlq_report(G, data)
    elif "ordered_gens" in data:
        ok, why = _verify_certificate(G, data)
    else:
        raise InputError("unrecognized payload: expected a verdict, dlq-report, or certificate")
    _emit(args, {"verified": ok, "reason": why},
          f"verified: {str(ok).lower()} ({why})\n")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# harness subcommands


def _cmd_verify_theorem(args) -> int:
    fields = tuple(FieldSpec.parse(f) for f in args.field.split(","))
    campaign = Campaign(args.id, trials=args.trials, max_n=args.max_n,
                        seed=args.seed, fields=fields)
    report = run_campaign(campaign)
    _emit(args, report.to_json(), report.to_text())
    return 0 if report.ok else 1


def _cmd_fixture(args) -> int:
    result = run_fixture(args.id)
    _emit(args, result.to_json(), result.to_text())
    return 0 if result.passed else 1


# ---------------------------------------------------------------------------
# parser


def _add_graph_options(p, transforms=True):
    p.add_argument("graph", help="graph file in 'n m' + edge-list format, or - for stdin")
    if transforms:
        p.add_argument("--whisker", metavar="V1,V2,...",
                       help="attach a pendant vertex at each listed vertex (1-based; applied first)")
        p.add_argument("--delete", metavar="V1,V2,...",
                       help="delete the listed vertices (1-based; applied after --whisker)")


def _add_output_options(p, field=True):
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument("--timings", action="store_true", help="report elapsed time")
    if field:
        p.add_argument("--field", default=_default_field(), metavar="q|2|3|p:<n>",
                       help="coefficient field (default from $EDGEIDEALS_FIELD, else 2)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="edgeideals",
        description="Decide sequential Cohen-Macaulayness of graph edge ideals "
                    "via Alexander duality, with checkable certificates.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dual", help="minimal vertex covers as dual generators")
    _add_graph_options(p)
    _add_output_options(p, field=False)
    p.set_defaults(fn=_cmd_dual)

    p = sub.add_parser("covers", help="minimal vertex covers, or all covers of one size")
    _add_graph_options(p)
    p.add_argument("--size", type=int, default=None, help="list all covers of this size")
    _add_output_options(p, field=False)
    p.set_defaults(fn=_cmd_covers)

    p = sub.add_parser("betti", help="Betti table of the dual (or edge) ideal")
    _add_graph_options(p)
    p.add_argument("--of", choices=("dual", "edge"), default="dual")
    p.add_argument("--component", type=int, default=None,
                   help="restrict to the square-free degree-d component")
    _add_output_options(p)
    p.set_defaults(fn=_cmd_betti)

    p = sub.add_parser("lin-quotients", help="per-degree dual linear-quotients certificates")
    _add_graph_options(p)
    _add_output_options(p, field=False)
    p.set_defaults(fn=_cmd_lin_quotients)

    p = sub.add_parser("is-scm", help="sequentially Cohen-Macaulay verdict")
    _add_graph_options(p)
    _add_output_options(p)
    p.set_defaults(fn=_cmd_is_scm)

    p = sub.add_parser("is-cm", help="Cohen-Macaulay verdict")
    _add_graph_options(p)
    _add_output_options(p)
    p.set_defaults(fn=_cmd_is_cm)

    p = sub.add_parser("whisker", help="print the transformed graph")
    _add_graph_options(p)
    _add_output_options(p, field=False)
    p.set_defaults(fn=_cmd_whisker)

    p = sub.add_parser("verify", help="re-check a verdict, report, or certificate JSON")
    _add_graph_options(p)
    p.add_argument("--in", dest="infile", default="-", metavar="FILE",
                   help="JSON payload to verify (default stdin)")
    _add_output_options(p)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("verify-theorem", help="run a randomized verification campaign")
    p.add_argument("id", choices=sorted(CLAIM_STATEMENTS),
                   help="claim identifier")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-n", type=int, default=7, dest="max_n")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", default=_default_field(),
                   help="comma-separated field list (default from $EDGEIDEALS_FIELD, else 2)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--timings", action="store_true")
    p.set_defaults(fn=_cmd_verify_theorem)

    p = sub.add_parser("fixture", help="recompute a published example and diff it")
    p.add_argument("id", choices=list(FIXTURE_IDS))
    p.add_argument("--json", action="store_true")
    p.add_argument("--timings", action="store_true")
    p.set_defaults(fn=_cmd_fixture)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.t0 = time.perf_counter()
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
