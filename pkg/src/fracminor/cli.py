"""Command-line front end.

Reports go to stdout (or ``--out``) as JSON, or as TSV with an exact
``num/den`` column next to a rounded one. Exit status is 2 for bad input,
1 when a verification fails, 0 otherwise.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import decompose as dec
from . import extremal as ext
from .graphcore import CapExceededError, GraphFormatError, InvalidModelError, hypercube, parse_graph, serialize_graph
from .suites import SUITES, run_suite
from .surd import Surd, to_text
from .volume import BudgetExceededError, CertificateError, WeightFormatError, parse_weights, vol_graph, vol_vector, vol_weighted


class ConfigError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if "." in text or "e" in text.lower():
        raise argparse.ArgumentTypeError(f"give rationals as num/den, not decimals: {text!r}")
    return q


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None


def _graph(path: str):
    return parse_graph(_read(path))


def _weights(path: str):
    return parse_weights(_read(path))


def _plain(x):
    """Turn exact values into strings so reports are lossless JSON."""
    if isinstance(x, (Fraction, Surd)):
        return to_text(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_plain(v) for v in items]
    return x


def _approx(text: str) -> str:
    if "sqrt" in text:
        a, rest = text.split("+", 1)
        b, d = rest.split("*sqrt(")
        val = float(Fraction(a)) + float(Fraction(b)) * float(d.rstrip(")")) ** 0.5
        return f"{val:.12g}"
    try:
        return f"{float(Fraction(text)):.12g}"
    except (ValueError, ZeroDivisionError):
        return ""


def _tsv(report: dict) -> str:
    lines = ["field\tvalue\tapprox"]

    def walk(prefix, v):
        if isinstance(v, dict):
            for k in sorted(v):
                walk(f"{prefix}.{k}" if prefix else str(k), v[k])
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            for i, item in enumerate(v):
                walk(f"{prefix}[{i}]", item)
        else:
            text = json.dumps(v) if isinstance(v, list) else str(v)
            lines.append(f"{prefix}\t{text}\t{_approx(text) if isinstance(v, str) else ''}")

    walk("", report)
    return "\n".join(lines) + "\n"


def emit(report: dict, args) -> None:
    report = dict(report)
    report["seed"] = args.seed
    report = _plain(report)
    text = _tsv(report) if args.format == "tsv" else json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# subcommands


def cmd_vol(args):
    h = _graph(args.pattern)
    if args.host:
        g = _graph(args.host)
        if args.weights:
            w = _weights(args.weights)
            caps = [w[v] for v in range(g.order)]
            res = vol_weighted(h, g, caps)
        else:
            res = vol_graph(h, g)
    elif args.weights:
        res = vol_vector(h, _weights(args.weights))
    else:
        raise ConfigError("vol needs a host graph, --weights, or both")
    return {"quantity": "Vol_H", "value": res.value, "kind": "exact",
            "provenance": "packing LP with verified dual certificate",
            "certificate": {str(i): a for i, a in res.certificate.a.items()}}


def cmd_cf_bound(args):
    return ext.cf_support_bound(_graph(args.pattern), args.support).to_dict()


def cmd_ct(args):
    return ext.c_T(_graph(args.pattern), args.cap).to_dict()


def cmd_closed_form(args):
    rep = ext.cf_closed_form(_graph(args.pattern), args.cap)
    if rep is None:
        return {"quantity": "c_f", "value": None, "kind": "unknown",
                "provenance": "no closed form applies (chi >= 5 and c_T <= 2v/3)", "witness": {}}
    return rep.to_dict()


def cmd_gamma(args):
    return ext.gamma_search(_graph(args.pattern), args.max_order).to_dict()


def cmd_round(args):
    h = _graph(args.pattern)
    r = ext.round_weights(h, _weights(args.weights))
    return {"quantity": "rounded", "x": {str(i): v for i, v in r.x.items()}, "vol_w": r.vol_w,
            "vol_x": r.vol_x, "d_w": r.d_w, "d_x": r.d_x}


def cmd_match_decompose(args):
    d = ext.matchable_decompose(_weights(args.weights))
    return {"quantity": "edge decomposition",
            "terms": [{"i": i, "j": j, "coefficient": c} for (i, j), c in d.terms]}


def _decomposition(g, args):
    return dec.eppstein_decompose(g, args.beta, args.c, args.epsilon, separator=args.separator)


def cmd_decompose(args):
    g = _graph(args.graph)
    d = _decomposition(g, args)
    out = d.to_dict()
    out["nodes_ok"] = d.nodes_ok
    out["problems"] = d.problems(g)
    return out


def cmd_hypercube(args):
    if not 1 <= args.d <= 10:
        raise ConfigError("dimension must lie in 1..10")
    d = dec.hypercube_decompose(args.d)
    out = d.to_dict()
    out["problems"] = d.problems(hypercube(args.d))
    return out


def cmd_group(args):
    r = dec.group_components(_graph(args.graph), args.epsilon)
    return {"ell": r.ell, "J": serialize_graph(r.J), "C": r.C, "C_prime": r.C_prime,
            "classes": r.classes, "embedding": list(r.embedding)}


def cmd_reduce(args):
    h = _graph(args.graph)
    if args.bags:
        try:
            bags = json.loads(_read(args.bags))["bags"]
        except (ValueError, KeyError, TypeError):
            raise ConfigError("bags file must be JSON with a 'bags' list") from None
    else:
        bags = _decomposition(h, args).bags
    r = dec.reduce_expand(h, bags, args.epsilon)
    return {"H_prime": serialize_graph(r.H_prime), "F": [list(e) for e in r.F], "X": sorted(r.X),
            "J": serialize_graph(r.J), "ell": r.ell}


def cmd_bipartify(args):
    r = dec.degenerate_bipartify(_graph(args.graph), args.d)
    return {"H_prime": serialize_graph(r.H_prime), "W": [list(w) for w in r.W], "ell": r.ell}


def cmd_mader(args):
    r = dec.mader_refine(_graph(args.graph), args.d, args.k)
    return {"graph": serialize_graph(r.graph), "connectivity": r.connectivity,
            "min_triangles": r.min_triangles, "steps": len(r.steps)}


def cmd_verify(args):
    params = {"cases": args.cases, "max_vertices": args.max_vertices, "support": args.support}
    rep = run_suite(args.suite, seed=args.seed, **params)
    return rep.to_dict(), rep.passed


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fracminor", description="Exact fractional extremal bounds for graph minors.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("vol", parents=[common], help="H-volume of a graph or weight vector")
    s.add_argument("pattern")
    s.add_argument("host", nargs="?")
    s.add_argument("--weights")
    s.set_defaults(func=cmd_vol)

    s = sub.add_parser("cf-bound", parents=[common], help="supremum over weights supported on n indices")
    s.add_argument("pattern")
    s.add_argument("--support", type=int, default=3)
    s.set_defaults(func=cmd_cf_bound)

    for name, func, hlp in (("ct", cmd_ct, "Turan lower bound"),
                            ("closed-form", cmd_closed_form, "exact value when a closed form applies")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("pattern")
        s.add_argument("--cap", type=int, default=20, help="largest order for exact invariants")
        s.set_defaults(func=func)

    s = sub.add_parser("gamma", parents=[common], help="densest H-minor-free complete multipartite graph")
    s.add_argument("pattern")
    s.add_argument("--max-order", type=int, default=8)
    s.set_defaults(func=cmd_gamma)

    s = sub.add_parser("round", parents=[common], help="integer rounding of a weight vector")
    s.add_argument("pattern")
    s.add_argument("weights")
    s.set_defaults(func=cmd_round)

    s = sub.add_parser("match-decompose", parents=[common], help="edge-vector decomposition")
    s.add_argument("weights")
    s.set_defaults(func=cmd_match_decompose)

    sep_opts = argparse.ArgumentParser(add_help=False)
    sep_opts.add_argument("--epsilon", type=_rational, default=Fraction(1, 2))
    sep_opts.add_argument("--beta", type=_rational, default=Fraction(1, 2))
    sep_opts.add_argument("--c", type=_rational, default=Fraction(1))
    sep_opts.add_argument("--separator", choices=("exact", "heuristic"), default="exact")

    s = sub.add_parser("decompose", parents=[common, sep_opts], help="bounded decomposition by balanced separators")
    s.add_argument("graph")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("hypercube", parents=[common], help="two-sided decomposition of Q_d")
    s.add_argument("d", type=int)
    s.set_defaults(func=cmd_hypercube)

    s = sub.add_parser("group", parents=[common], help="pad into copies of one graph")
    s.add_argument("graph")
    s.add_argument("--epsilon", type=_rational, default=Fraction(1, 2))
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("reduce", parents=[common, sep_opts], help="reduce/expand along a decomposition")
    s.add_argument("graph")
    s.add_argument("--bags", help="JSON file with a 'bags' list (default: decompose first)")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("bipartify", parents=[common], help="bipartite graph with a bounded-degree side")
    s.add_argument("graph")
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(func=cmd_bipartify)

    s = sub.add_parser("mader", parents=[common], help="minor-minimal dense refinement")
    s.add_argument("graph")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_mader)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", choices=sorted(SUITES))
    s.add_argument("--cases", type=int)
    s.add_argument("--max-vertices", type=int)
    s.add_argument("--support", type=int)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = args.func(args)
    except (dec.InternalConsistencyError, ext.InternalConsistencyError, CertificateError, InvalidModelError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (ConfigError, GraphFormatError, WeightFormatError, CapExceededError,
            BudgetExceededError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    passed = True
    if isinstance(out, tuple):
        out, passed = out
    emit(out, args)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
