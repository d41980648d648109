"""Command line interface: evaluate expressions in a context, run verification suites.

Contexts are written ``Uq(mu,nu)``, ``Uq(mu)``, ``A(mu,nu;tau)``, ``B(mu,nu;tau)``,
``D(mu,nu;tau)`` and ``Pol(+|-|0|sl2c)``; labels accept ``-``, ``0``, ``+``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__, coaction, homspace, pairing, pol, uq
from .casimir import make_quotient, quotient_action
from .freealg import NcPoly, Presentation, PresentationError
from .parser import ParseError, parse_expression, render, render_coeff, render_tensor
from .report import SCHEMA_VERSION
from .scalar import ScalarError
from .suites import SUITES, GridError, VerifyOptions, default_workers, parse_grid, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Context:
    family: str
    params: tuple
    pres: Presentation
    theta: object = None  # D contexts: membership test lives on the Theta map

    @property
    def name(self) -> str:
        return self.pres.name if self.family != "D" else f"D({', '.join(map(str, self.params))})"

    def parse(self, text: str) -> NcPoly:
        p = parse_expression(self.pres, text)
        if self.theta is not None and not self.theta.in_D(p):
            raise UsageError(f"{render(p)} is not an element of {self.name}")
        return p


_CTX = re.compile(r"^\s*(Uq|A|B|D|Pol)\s*\((.*)\)\s*$")


def parse_context(text: str) -> Context:
    """Validate a context descriptor; parameters are checked before any expression is read."""
    m = _CTX.match(text)
    if not m:
        raise UsageError(f"unknown context {text!r}; expected Uq(mu,nu), A(mu,nu;tau), B(...), D(...) or Pol(v)")
    fam, body = m.group(1), m.group(2).strip()
    if fam == "Pol":
        v = pol.variant(body)
        return Context("Pol", (v,), pol.make_pol(v))
    if fam == "Uq":
        parts = [p.strip() for p in body.split(",")]
        if len(parts) not in (1, 2):
            raise UsageError(f"Uq takes one or two labels, got {body!r}")
        labels = tuple(uq.label(p) for p in parts)
        if len(labels) == 1:
            labels = labels * 2
        return Context("Uq", labels, uq.make_uq(*labels))
    if ";" not in body:
        raise UsageError(f"{fam} needs parameters of the form mu,nu;tau")
    lab, tau_txt = body.split(";", 1)
    parts = [p.strip() for p in lab.split(",")]
    if len(parts) != 2:
        raise UsageError(f"{fam} needs two labels before ';', got {lab!r}")
    mu, nu = (uq.label(p) for p in parts)
    try:
        tau = Fraction(tau_txt.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"tau must be rational, got {tau_txt.strip()!r}") from None
    if fam == "A":
        return Context("A", (mu, nu, tau), make_quotient((mu, nu, tau)))
    if fam == "B":
        return Context("B", (mu, nu, tau), homspace.make_B(mu, nu, tau))
    A, th = homspace.make_D_and_theta(mu, nu, tau)
    return Context("D", (mu, nu, tau), A, th)


def _triple(text: str) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise UsageError(f"--params expects mu,nu,tau, got {text!r}")
    try:
        return uq.label(parts[0]), uq.label(parts[1]), Fraction(parts[2])
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"invalid --params {text!r}: {e}") from None


# commands ---------------------------------------------------------------------

def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_eval(args) -> int:
    ctx = parse_context(args.context)
    p = ctx.parse(args.expr)
    if args.q is None:
        _emit(args, {"context": ctx.name, "result": render(p)}, render(p))
        return EXIT_OK
    q0 = Fraction(args.q)
    coeffs = {ctx.pres.render_word(w) if w else "1": c.eval_q(q0) for w, c in p.sorted_terms()}
    txt = " + ".join(f"({v})*{w}" if w != "1" else f"({v})" for w, v in coeffs.items()) or "0"
    _emit(args, {"context": ctx.name, "q": str(q0), "result": {k: str(v) for k, v in coeffs.items()}}, txt)
    return EXIT_OK


def cmd_nf(args) -> int:
    ctx = parse_context(args.context)
    p = ctx.parse(args.expr)
    rows = [(ctx.pres.render_word(w) if w else "1", render_coeff(c)) for w, c in p.sorted_terms()]
    _emit(args, {"context": ctx.name, "terms": [{"monomial": m, "coeff": c} for m, c in rows]},
          "\n".join(f"{m}\t{c}" for m, c in rows) or "0")
    return EXIT_OK


def cmd_delta(args) -> int:
    ctx = parse_context(args.context)
    p = ctx.parse(args.expr)
    if ctx.family == "Uq":
        mu, nu = ctx.params
        ups = mu if args.ups is None else uq.label(args.ups)
        t = uq.delta_uq(mu, nu, ups, p)
    elif ctx.family == "Pol":
        t = pol.delta_pol(ctx.params[0], p)
    else:
        raise UsageError("delta is defined on Uq(mu,nu) and Pol(v) contexts")
    _emit(args, {"context": ctx.name, "result": render_tensor(t)}, render_tensor(t))
    return EXIT_OK


def cmd_antipode(args) -> int:
    ctx = parse_context(args.context)
    p = ctx.parse(args.expr)
    if ctx.family == "Uq":
        r = uq.antipode_uq(*ctx.params, p)
    elif ctx.family == "Pol":
        r = pol.antipode_pol(ctx.params[0], p)
    else:
        raise UsageError("antipode is defined on Uq(mu,nu) and Pol(v) contexts")
    _emit(args, {"context": ctx.name, "target": r.pres.name, "result": render(r)}, render(r))
    return EXIT_OK


def cmd_act(args) -> int:
    """x |> y with x in U_q(mu) and y in A(mu,nu;tau) or B(mu,nu;tau)."""
    ctx = parse_context(args.context)
    if ctx.family not in ("A", "B"):
        raise UsageError("act needs an A(mu,nu;tau) or B(mu,nu;tau) context")
    mu = ctx.params[0]
    x = parse_expression(uq.make_uq(mu, mu), args.x)
    y = ctx.parse(args.y)
    if ctx.family == "A":
        r = quotient_action(ctx.params, x, y)
    else:
        r = homspace.action_on_B(*ctx.params, x, y)
    _emit(args, {"context": ctx.name, "result": render(r)}, render(r))
    return EXIT_OK


def cmd_pair(args) -> int:
    mu = uq.label(args.mu)
    x = parse_expression(uq.make_uq(mu, mu), args.x)
    y = parse_expression(pol.make_pol(pol.variant_of_label(mu)), args.y)
    v = pairing.pair(mu, x, y)
    _emit(args, {"mu": str(mu), "result": render_coeff(v)}, render_coeff(v))
    return EXIT_OK


def cmd_gamma(args) -> int:
    mu, nu, tau = _triple(args.params)
    b = parse_expression(homspace.make_B(mu, nu, tau), args.expr)
    t = coaction.gamma(mu, nu, tau, b)
    _emit(args, {"params": [str(mu), str(nu), str(tau)], "result": render_tensor(t)}, render_tensor(t))
    return EXIT_OK


def build_report(suites: list[str], opts: VerifyOptions, results: dict) -> dict:
    entries = []
    summary = {"pass": 0, "fail": 0, "skipped": 0, "total": 0, "suites": {}}
    for s in suites:
        c = {"pass": 0, "fail": 0, "skipped": 0}
        for e in results[s]:
            d = e.to_dict()
            d["suite"] = s
            entries.append(d)
            c[e.status] += 1
        c["total"] = sum(c.values())
        summary["suites"][s] = c
        for k in ("pass", "fail", "skipped", "total"):
            summary[k] += c[k]
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "seed": opts.seed,
        "options": {"suites": suites, "degree": opts.degree, "samples": opts.samples,
                    "ergodic_degree": opts.ergodic_degree,
                    "grid": [[str(Fraction(v)) for v in g] for g in opts.grid]},
        "entries": entries,
        "summary": summary,
    }


def _text_report(doc: dict) -> str:
    lines = []
    for e in doc["entries"]:
        if e["status"] == "fail":
            lines.append(f"FAIL {e['id']} {json.dumps(e['params'], sort_keys=True)}: {e['witness']}")
    for s, c in doc["summary"]["suites"].items():
        lines.append(f"{s}: {c['pass']} pass, {c['fail']} fail, {c['skipped']} skipped")
    sm = doc["summary"]
    lines.append(f"total: {sm['pass']} pass, {sm['fail']} fail, {sm['skipped']} skipped")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    try:
        grid = parse_grid(args.grid)
    except (GridError, uq.LabelError) as e:
        raise UsageError(str(e)) from None
    ergodic_degree = args.degree if (args.suite == "ergodic" and args.degree is not None) else 6
    if args.ergodic_degree is not None:
        ergodic_degree = args.ergodic_degree
    opts = VerifyOptions(degree=3 if args.degree is None else args.degree, samples=args.samples, seed=args.seed,
                         ergodic_degree=ergodic_degree, grid=grid,
                         workers=default_workers() if args.workers is None else args.workers)
    doc = build_report(suites, opts, run_suites(suites, opts))
    out = json.dumps(doc, indent=2, sort_keys=True) if args.format == "json" else _text_report(doc)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out + "\n")
        print(_text_report(doc) if args.format == "json" else out)
    else:
        print(out)
    return EXIT_OK if doc["summary"]["fail"] == 0 else EXIT_FAIL


def cmd_list(args) -> int:
    ctxs = {
        "Uq(mu,nu)": list(uq.UQ_GENS),
        "A(mu,nu;tau)": ["F", "E", "Ki", "K"],
        "B(mu,nu;tau)": list(homspace.B_GENS),
        "D(mu,nu;tau)": ["F", "E", "Ki", "K"],
        "Pol(+|-|sl2c)": ["a", "b", "c", "d"],
        "Pol(0)": list(pol.make_pol("0").gens),
    }
    _emit(args, {"suites": list(SUITES) + ["all"], "contexts": ctxs},
          "suites: " + " ".join(list(SUITES) + ["all"]) + "\ncontexts:\n"
          + "\n".join(f"  {k}: {' '.join(v)}" for k, v in ctxs.items()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="uqgalois", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"uqgalois {__version__}")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[fmt], help="normal form of an expression")
    p.add_argument("context")
    p.add_argument("expr")
    p.add_argument("--q", help="substitute a rational q in (0, 1)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("nf", parents=[fmt], help="normal form listed by basis monomial")
    p.add_argument("context")
    p.add_argument("expr")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("delta", parents=[fmt], help="coproduct")
    p.add_argument("context")
    p.add_argument("expr")
    p.add_argument("--ups", help="middle label for Uq(mu,nu) -> Uq(mu,ups) (x) Uq(ups,nu); default mu")
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("antipode", parents=[fmt], help="antipode")
    p.add_argument("context")
    p.add_argument("expr")
    p.set_defaults(func=cmd_antipode)

    p = sub.add_parser("act", parents=[fmt], help="adjoint action x |> y of Uq(mu)")
    p.add_argument("context")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("pair", parents=[fmt], help="pairing of Uq(mu) with Pol")
    p.add_argument("--mu", required=True)
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("gamma", parents=[fmt], help="coaction B -> B (x) Pol")
    p.add_argument("--params", required=True, help="mu,nu,tau")
    p.add_argument("expr")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("verify", parents=[fmt], help="run verification suites")
    p.add_argument("--suite", required=True, choices=list(SUITES) + ["all"])
    p.add_argument("--degree", type=int, help="random-sample degree (default 3); for --suite ergodic, the ergodic degree")
    p.add_argument("--ergodic-degree", type=int, help="degree window for ergodicity (default 6)")
    p.add_argument("--samples", type=int, help="override per-suite sample counts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", default="default", help="'default' or 'mu,nu,tau;mu,nu,tau;...'")
    p.add_argument("--workers", type=int, help="worker processes (default from UQGALOIS_WORKERS, else 1)")
    p.add_argument("--output", help="write the report to this file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("list", parents=[fmt], help="list suites and contexts")
    p.set_defaults(func=cmd_list)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, PresentationError, uq.LabelError, ScalarError, ValueError) as e:
        print(f"uqgalois: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
