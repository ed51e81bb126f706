"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 input or domain error,
3 internal inconsistency between independent computations.

Text output starts with a ``#`` header recording the full configuration;
JSON carries it under ``"config"``. CSV is a bare table (header row plus
data) so it loads directly into plotting tools. Exact rationals appear as
``p/q`` in text and CSV and as ``{"num", "den", "float"}`` in JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .asymptotics import (
    KNOWN_THRESHOLDS,
    FamilySpec,
    ratio,
    sequence_profile,
    threshold_scan,
)
from .braess import big_phi, braess_scan, is_paradoxical_at
from .errors import BraessLabError, ConsistencyError
from .forests import forest_matrix, q_matrix, tree_count
from .graph import FAMILY_KINDS, Graph, format_edge_list, is_tree, make_family, read_edge_list, require_connected
from .kemeny import kemeny_constant
from .oracle import DEFAULT_BOUND, forest_tables, kemeny_bruteforce

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_CONSISTENCY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- rendering ------------------------------------------------------------

def fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x} ≈ {float(x):.6f}"


def json_rational(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator), "float": float(x)}


def csv_rational(x: Fraction) -> list[str]:
    x = Fraction(x)
    return [str(x.numerator), str(x.denominator), repr(float(x))]


def rational_cols(name: str) -> list[str]:
    return [f"{name}_num", f"{name}_den", f"{name}_float"]


@dataclass
class Report:
    config: dict
    text: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    header: list[str] = field(default_factory=list)
    rows: list[list] = field(default_factory=list)
    failed: bool = False

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps({"config": self.config, "result": self.data}, indent=2, ensure_ascii=False) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.header)
            w.writerows(self.rows)
            return buf.getvalue()
        head = ["# braesslab " + __version__, "# config: " + " ".join(f"{k}={v}" for k, v in self.config.items())]
        return "\n".join(head + self.text) + "\n"


def _table(header: list[str], rows: list[list[str]]) -> list[str]:
    widths = [max(len(str(r[i])) for r in [header] + rows) for i in range(len(header))]
    line = lambda r: "  ".join(str(c).rjust(wd) for c, wd in zip(r, widths)).rstrip()
    return [line(header)] + [line(r) for r in rows]


# --- input ----------------------------------------------------------------

def _alpha_arg(text):
    if text is None:
        return None
    if text == "sqrt":
        return lambda n: max(1, math.isqrt(n))
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"alpha must be an int or 'sqrt', got {text!r}") from None


def _policy_arg(text):
    try:
        return int(text)
    except ValueError:
        return text


def _load_graph(args) -> tuple[Graph, str]:
    if args.input and args.family:
        raise UsageError("give either an edge-list file or --family, not both")
    if args.input:
        return read_edge_list(args.input), args.input
    if args.family:
        if args.family not in FAMILY_KINDS:
            raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(FAMILY_KINDS)}")
        if args.n is None:
            raise UsageError("--family needs --n")
        alpha = _alpha_arg(args.alpha)
        if callable(alpha):
            alpha = alpha(args.n)
        g = make_family(args.family, args.n, alpha)
        label = f"{args.family}({args.n}" + (f",{alpha}" if args.family == "broom" else "") + ")"
        return g, label
    raise UsageError("no input graph: give an edge-list file or --family/--n")


def _base_config(args, source) -> dict:
    cfg = {"command": args.command, "input": source, "format": args.format}
    return cfg


# --- commands -------------------------------------------------------------

def cmd_kemeny(args) -> Report:
    g, src = _load_graph(args)
    require_connected(g, min_n=2)
    kv = kemeny_constant(g)
    tau = tree_count(g)
    rep = Report(_base_config(args, src))
    rep.text = [f"n = {g.n}", f"m = {g.m}", f"tau = {tau}", f"kappa = {fmt_rational(kv.exact)}"]
    rep.data = {"n": g.n, "m": g.m, "tau": str(tau), "kappa": json_rational(kv.exact)}
    rep.header = ["n", "m", "tau"] + rational_cols("kappa")
    rep.rows = [[g.n, g.m, tau] + csv_rational(kv.exact)]
    return rep


def cmd_scan_braess(args) -> Report:
    g, src = _load_graph(args)
    res = braess_scan(g, threads=args.threads)
    rep = Report(_base_config(args, src))
    ranked = res.ranked()
    rep.text = [f"kappa = {fmt_rational(res.kappa)}", f"status: {res.status}"]
    if ranked:
        rows = [[f"{e.edge[0]}-{e.edge[1]}", fmt_rational(e.delta_kappa), "yes" if e.is_braess else "no"] for e in ranked]
        rep.text += _table(["edge", "delta_kappa", "braess"], rows)
    rep.text.append(f"paradoxical: {'yes' if res.paradoxical else 'no'}")
    rep.data = {
        "kappa": json_rational(res.kappa),
        "status": res.status,
        "paradoxical": res.paradoxical,
        "edges": [
            {"u": e.edge[0], "v": e.edge[1], "delta_kappa": json_rational(e.delta_kappa), "is_braess": e.is_braess}
            for e in ranked
        ],
    }
    rep.header = ["u", "v"] + rational_cols("delta_kappa") + ["is_braess"]
    rep.rows = [[e.edge[0], e.edge[1]] + csv_rational(e.delta_kappa) + [int(e.is_braess)] for e in ranked]
    return rep


def cmd_check_paradox(args) -> Report:
    g, src = _load_graph(args)
    cfg = _base_config(args, src)
    cfg.update({"vertex": args.vertex, "k1": args.k1, "k2": args.k2, "verify": str(args.verify).lower()})
    verdict = is_paradoxical_at(g, args.vertex, args.k1, args.k2, verify=args.verify)
    bd = verdict.breakdown
    rep = Report(cfg)
    status = "paradoxical" if bd.verdict else ("boundary (Phi = 0)" if bd.boundary else "not paradoxical")
    rep.text = [
        f"phi_v = {bd.phi_v}",
        f"phi1 = {bd.phi1}",
        f"phi2 = {bd.phi2}",
        f"phi3 = {bd.phi3}",
        f"m = {bd.m}",
        f"tau = {bd.tau}",
        f"k = {bd.k}",
        f"Phi = {bd.Phi}",
        f"predicted delta_kappa = {fmt_rational(bd.delta_kappa())}",
        f"verdict: {status}",
    ]
    rep.data = {
        "phi_v": str(bd.phi_v),
        "phi1": json_rational(bd.phi1),
        "phi2": json_rational(bd.phi2),
        "phi3": json_rational(bd.phi3),
        "m": bd.m,
        "tau": str(bd.tau),
        "k": bd.k,
        "Phi": json_rational(bd.Phi),
        "verdict": bd.verdict,
        "boundary": bd.boundary,
    }
    rep.header = ["vertex", "k1", "k2", "phi_v", "m", "tau", "k"] + rational_cols("Phi") + ["verdict", "boundary"]
    row = [args.vertex, args.k1, args.k2, bd.phi_v, bd.m, bd.tau, bd.k] + csv_rational(bd.Phi) + [int(bd.verdict), int(bd.boundary)]
    if args.verify:
        rep.text += [
            f"tips = {verdict.tips[0]} {verdict.tips[1]}",
            f"verified delta_kappa = {fmt_rational(verdict.delta_kappa)}",
            "G_tilde:",
            *format_edge_list(verdict.g_tilde).splitlines(),
            "G_hat:",
            *format_edge_list(verdict.g_hat).splitlines(),
        ]
        rep.data["verified"] = {
            "delta_kappa": json_rational(verdict.delta_kappa),
            "tips": list(verdict.tips),
            "g_tilde": {"n": verdict.g_tilde.n, "edges": [list(e) for e in verdict.g_tilde.edges]},
            "g_hat": {"n": verdict.g_hat.n, "edges": [list(e) for e in verdict.g_hat.edges]},
        }
        rep.header += rational_cols("delta_kappa")
        row += csv_rational(verdict.delta_kappa)
    rep.rows = [row]
    return rep


def _family_from_args(args) -> FamilySpec:
    if args.family not in FAMILY_KINDS:
        raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(FAMILY_KINDS)}")
    return FamilySpec(args.family, _policy_arg(args.vertex_policy), _alpha_arg(args.alpha))


def _family_config(args, fam) -> dict:
    cfg = {"command": args.command, "family": fam.label, "format": args.format}
    if args.alpha is not None:
        cfg["alpha"] = args.alpha
    return cfg


def _known_rows(args) -> Report:
    rep = Report({"command": args.command, "table": "known", "format": args.format})
    rows = []
    for (kind, policy, k1, k2), known in sorted(KNOWN_THRESHOLDS.items()):
        fam = FamilySpec(kind, policy)
        r = threshold_scan(fam, k1, k2, range(2, max(args.n_max, known + 10) + 1), threads=args.threads)
        rows.append((fam.label, k1, k2, r, known))
    rep.text = _table(
        ["family", "k1", "k2", "computed", "known", "agree", "boundary", "certified"],
        [[lab, k1, k2, r.first_n_true, kn, "yes" if r.agrees_with_known else "NO",
          ",".join(map(str, r.boundary)) or "-", "yes" if r.certified else "no"] for lab, k1, k2, r, kn in rows],
    )
    rep.data = {
        "rows": [
            {"family": lab, "k1": k1, "k2": k2, "computed": r.first_n_true, "known": kn,
             "agree": r.agrees_with_known, "boundary": list(r.boundary), "certified": r.certified,
             "tested_range": list(r.tested_range)}
            for lab, k1, k2, r, kn in rows
        ]
    }
    rep.header = ["family", "k1", "k2", "computed", "known", "agree", "boundary", "certified"]
    rep.rows = [[lab, k1, k2, r.first_n_true, kn, int(bool(r.agrees_with_known)),
                 " ".join(map(str, r.boundary)), int(r.certified)] for lab, k1, k2, r, kn in rows]
    return rep


def cmd_family_table(args) -> Report:
    if args.known:
        return _known_rows(args)
    if not args.family:
        raise UsageError("family-table needs --family (or --known)")
    fam = _family_from_args(args)
    lo = max(args.n_min or fam.min_n, fam.min_n, 2)
    if args.n_max < lo:
        raise UsageError(f"--n-max must be at least {lo}")
    report = threshold_scan(fam, args.k1, args.k2, range(lo, args.n_max + 1), threads=args.threads)
    cfg = _family_config(args, fam)
    cfg.update({"k1": args.k1, "k2": args.k2, "n_min": lo, "n_max": args.n_max})
    rep = Report(cfg)
    per_n = []
    for n in range(lo, args.n_max + 1):
        g, v = fam.build(n)
        bd = big_phi(g, v, args.k1, args.k2)
        per_n.append((n, v, bd, ratio(g, v)))
    rows = [[n, v, str(bd.Phi), "yes" if bd.verdict else ("boundary" if bd.boundary else "no"), fmt_rational(r)]
            for n, v, bd, r in per_n]
    rep.text = _table(["n", "v", "Phi", "paradoxical", "ratio"], rows)
    known = report.known
    rep.text += [
        f"first_n_true = {report.first_n_true}",
        f"onset = {report.onset}",
        f"boundary = {', '.join(map(str, report.boundary)) or '-'}",
        f"certified = {'yes' if report.certified else 'no'} ({report.note})",
    ]
    if known is not None:
        rep.text.append(f"known threshold = {known} ({'agrees' if report.agrees_with_known else 'DISAGREES'})")
    rep.data = {
        "rows": [{"n": n, "v": v, "Phi": json_rational(bd.Phi), "verdict": bd.verdict, "boundary": bd.boundary,
                  "ratio": json_rational(r)} for n, v, bd, r in per_n],
        "first_n_true": report.first_n_true,
        "onset": report.onset,
        "boundary": list(report.boundary),
        "certified": report.certified,
        "ratio_monotone_tail": report.ratio_monotone_tail,
        "note": report.note,
        "known_threshold": known,
        "agrees_with_known": report.agrees_with_known,
    }
    rep.header = ["n", "v"] + rational_cols("Phi") + ["verdict", "boundary"] + rational_cols("ratio")
    rep.rows = [[n, v] + csv_rational(bd.Phi) + [int(bd.verdict), int(bd.boundary)] + csv_rational(r)
                for n, v, bd, r in per_n]
    return rep


def cmd_sequence_ratio(args) -> Report:
    fam = _family_from_args(args)
    lo = max(args.n_min or fam.min_n, fam.min_n, 2)
    if args.n_max < lo:
        raise UsageError(f"--n-max must be at least {lo}")
    desc = sequence_profile(fam, range(lo, args.n_max + 1), Fraction(args.cutoff), threads=args.threads)
    trees = all(is_tree(fam.build(n)[0]) for n in (lo, args.n_max))
    cfg = _family_config(args, fam)
    cfg.update({"n_min": lo, "n_max": args.n_max, "cutoff": str(desc.cutoff)})
    rep = Report(cfg)
    head = ["n", "v", "ratio"] + (["alpha", "ell", "beta"] if trees else [])
    rows = []
    for r in desc.records:
        rows.append([r.n, r.v, fmt_rational(r.ratio)] + ([r.alpha, r.ell, r.beta] if trees else []))
    rep.text = _table(head, rows)
    rep.text.append(f"observed ratio trend: {desc.ratio_trend.label} (up {desc.ratio_trend.up}, down {desc.ratio_trend.down})")
    if trees:
        for name, t in (("beta*alpha^3/n^2", desc.beta_alpha3_trend), ("alpha/n^(2/3)", desc.alpha_n23_trend)):
            rep.text.append(f"observed {name} trend: {t.label} (up {t.up}, down {t.down}, net {t.net})")
    rep.text.append(f"known limit of ratio: {desc.known_limit or 'none on record'}")
    rep.data = {
        "records": [
            dict({"n": r.n, "v": r.v, "ratio": json_rational(r.ratio)},
                 **({"alpha": r.alpha, "ell": r.ell, "beta": r.beta} if trees else {}))
            for r in desc.records
        ],
        "observed": {"ratio": vars(desc.ratio_trend)},
        "known_limit": desc.known_limit,
    }
    if trees:
        rep.data["observed"]["beta_alpha3_over_n2"] = vars(desc.beta_alpha3_trend)
        rep.data["observed"]["alpha_over_n23"] = vars(desc.alpha_n23_trend)
    rep.header = ["n", "v"] + rational_cols("ratio") + (["alpha", "ell", "beta"] if trees else [])
    rep.rows = [[r.n, r.v] + csv_rational(r.ratio) + ([r.alpha, r.ell, r.beta] if trees else []) for r in desc.records]
    return rep


def cmd_oracle_verify(args) -> Report:
    g, src = _load_graph(args)
    require_connected(g, min_n=2)
    cfg = _base_config(args, src)
    cfg["max_n"] = args.max_n
    tables = forest_tables(g, bound=args.max_n)
    checks = [("tau", tables.tau == tree_count(g))]
    checks.append(("forest matrix", [list(r) for r in tables.f] == forest_matrix(g).tolist()))
    checks.append(("q matrices", all([list(r) for r in tables.q[v]] == q_matrix(g, v).tolist() for v in range(g.n))))
    checks.append(("kemeny", kemeny_bruteforce(g, bound=args.max_n) == kemeny_constant(g).exact))
    rep = Report(cfg)
    rep.text = [f"{name}: {'ok' if ok else 'MISMATCH'}" for name, ok in checks]
    rep.data = {"checks": {name: ok for name, ok in checks}, "all_ok": all(ok for _, ok in checks)}
    rep.header = ["check", "ok"]
    rep.rows = [[name, int(ok)] for name, ok in checks]
    if not all(ok for _, ok in checks):
        rep.data["failed"] = [name for name, ok in checks if not ok]
        rep.failed = True
    return rep


COMMANDS = {
    "kemeny": cmd_kemeny,
    "scan-braess": cmd_scan_braess,
    "check-paradox": cmd_check_paradox,
    "family-table": cmd_family_table,
    "sequence-ratio": cmd_sequence_ratio,
    "oracle-verify": cmd_oracle_verify,
}


def _env_threads() -> int:
    raw = os.environ.get("BRAESSLAB_THREADS")
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--threads", type=int, default=None, help="worker cap (default: $BRAESSLAB_THREADS or 1)")

    graph_in = _Parser(add_help=False)
    graph_in.add_argument("input", nargs="?", help="edge-list file")
    graph_in.add_argument("--family", help="generate a standard graph instead of reading a file")
    graph_in.add_argument("--n", type=int, help="order of the generated graph")
    graph_in.add_argument("--alpha", help="broom handle length")

    fam_in = _Parser(add_help=False)
    fam_in.add_argument("--family", help=f"one of {', '.join(FAMILY_KINDS)}")
    fam_in.add_argument("--vertex-policy", default="default", help="pendent, centre, default or a vertex id")
    fam_in.add_argument("--alpha", help="broom handle length: an int or 'sqrt'")
    fam_in.add_argument("--n-min", type=int, default=None)
    fam_in.add_argument("--n-max", type=int, default=20)

    p = _Parser(prog="braesslab", description="Kemeny's constant and Braess edges, exactly.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    sub.add_parser("kemeny", parents=[common, graph_in], help="exact Kemeny's constant")
    sub.add_parser("scan-braess", parents=[common, graph_in], help="delta kappa for every non-edge")
    cp = sub.add_parser("check-paradox", parents=[common, graph_in], help="twin pendent path criterion")
    cp.add_argument("--vertex", type=int, required=True)
    cp.add_argument("--k1", type=int, required=True)
    cp.add_argument("--k2", type=int, required=True)
    cp.add_argument("--verify", action="store_true", help="also build both graphs and compare kappas")
    ft = sub.add_parser("family-table", parents=[common, fam_in], help="Phi verdicts along a family")
    ft.add_argument("--k1", type=int, default=1)
    ft.add_argument("--k2", type=int, default=2)
    ft.add_argument("--known", action="store_true", help="recompute every threshold on record")
    sr = sub.add_parser("sequence-ratio", parents=[common, fam_in], help="ratio series for a family")
    sr.add_argument("--cutoff", default="1/2", help="branch eccentricity cutoff for beta, in (0, 1]")
    ov = sub.add_parser("oracle-verify", parents=[common, graph_in], help="brute-force cross-check")
    ov.add_argument("--max-n", type=int, default=DEFAULT_BOUND)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is None:
        args.threads = _env_threads()
    if args.command == "sequence-ratio":
        try:
            Fraction(args.cutoff)
        except (ValueError, ZeroDivisionError):
            parser.error(f"invalid --cutoff {args.cutoff!r}")
    try:
        rep = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except ConsistencyError as exc:
        print(f"braesslab: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (BraessLabError, OSError) as exc:
        print(f"braesslab: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    sys.stdout.write(rep.render(args.format))
    return EXIT_CONSISTENCY if rep.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
