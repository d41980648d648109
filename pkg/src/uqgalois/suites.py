"""Verification suites: named batches of checks over a parameter grid.

A suite expands to a list of tasks ``(function name, args)``; each task
returns a :class:`Report`.  Tasks are independent, so they may run in worker
processes, and the final entry list is sorted, which keeps the report
independent of scheduling.
"""
from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import coaction, homspace, pairing, pol, uq
from .casimir import check_antipode_casimir, check_casimir, make_quotient
from .freealg import check_rule_confluence
from .report import Report, CheckResult

SUITES = ("confluence", "hopf", "weakhopf", "casimir", "homspace", "vrep", "pairing", "coaction", "ergodic",
          "coideal", "classify")
LABELS = (-1, 0, 1)
TAUS = (-2, -1, 0, 1, 2)
WORKERS_ENV = "UQGALOIS_WORKERS"


class GridError(ValueError):
    pass


@dataclass
class VerifyOptions:
    degree: int = 3
    samples: int | None = None
    seed: int = 0
    ergodic_degree: int = 6
    grid: list = field(default_factory=lambda: default_grid())
    workers: int = 1


def default_grid() -> list[tuple[int, int, int]]:
    return [(m, n, t) for m in LABELS for n in LABELS for t in TAUS]


def parse_grid(text: str) -> list[tuple]:
    """``default`` or ``mu,nu,tau;mu,nu,tau;...`` with mu, nu in {-1,0,1} (or +/-)."""
    if text.strip() == "default":
        return default_grid()
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = [p.strip() for p in chunk.split(",")]
        if len(parts) != 3:
            raise GridError(f"grid point {chunk!r} must have the form mu,nu,tau")
        try:
            mu, nu = uq.label(parts[0]), uq.label(parts[1])
            tau = Fraction(parts[2])
        except (ValueError, ZeroDivisionError) as e:
            raise GridError(f"invalid grid point {chunk!r}: {e}") from None
        out.append((mu, nu, tau))
    if not out:
        raise GridError("empty grid")
    return out


def _labels(grid) -> list:
    return sorted({Fraction(g[0]) for g in grid} | {Fraction(g[1]) for g in grid})


def _pairs(grid) -> list:
    return sorted({(Fraction(g[0]), Fraction(g[1])) for g in grid})


def _samples(opts: VerifyOptions, default: int) -> int:
    return default if opts.samples is None else opts.samples


# task bodies ---------------------------------------------------------------------

def _confluence(kind: str, params: tuple) -> Report:
    if kind == "Uq":
        pres = uq.make_uq(*params, expert=True)
    elif kind == "A":
        pres = make_quotient(params, expert=True)
    elif kind == "B":
        pres = homspace.make_B(*params, expert=True)
    else:
        pres = pol.make_pol(params[0])
    return check_rule_confluence(pres)


def _hopf_triple(mu, nu, ups) -> Report:
    rep = Report("hopf")
    rep.extend(uq.check_delta_relations(mu, nu, ups))
    rep.extend(uq.check_commutator_steps(mu, nu, ups))
    rep.extend(uq.check_flip_law(mu, nu, ups))
    return rep


def _hopf_pair(mu, nu, samples: int, degree: int, seed: int) -> Report:
    import random

    rep = Report("hopf")
    rep.extend(uq.check_antipode_relations(mu, nu))
    rep.extend(uq.check_star_antipode(mu, nu))
    U = uq.make_uq(mu, mu, expert=True)
    rng = random.Random(f"antipode:{uq.fmt(Fraction(mu))}:{uq.fmt(Fraction(nu))}:{seed}")
    items = [U.gen(g) for g in U.gens] + [uq.random_uq(mu, mu, rng, degree) for _ in range(samples)]
    for x in items:
        rep.extend(uq.check_antipode_identities(mu, nu, x))
    return rep


def _pol_hopf(v: str, samples: int, degree: int, seed: int) -> Report:
    rep = pol.check_pol_hopf(v, samples=samples, degree=degree, seed=seed)
    if v == "0":
        rep.extend(pol.check_zero_coproduct_grid())
    return rep


def _weakhopf(labels: tuple, samples: int, degree: int, seed: int) -> Report:
    sys = uq.build_colinking(labels)
    return uq.check_weak_hopf_axioms(sys, samples=samples, degree=degree, seed=seed)


def _casimir(mu, nu) -> Report:
    rep = check_casimir(mu, nu)
    rep.extend(check_antipode_casimir(mu, nu))
    return rep


def _homspace(mu, nu, tau, samples: int, degree: int, seed: int) -> Report:
    rep = homspace.check_embedding(mu, nu, tau)
    rep.extend(homspace.check_action_consistency(mu, nu, tau, samples=samples, degree=degree, seed=seed))
    rep.extend(homspace.check_k_grading(mu, nu, tau))
    rep.extend(homspace.check_theta(mu, nu, tau))
    return rep


def _vrep(mu, nu, tau) -> Report:
    return homspace.check_v_rep(mu, nu, tau, N=4)


GRAM_DEGREES = (0, 1, 2)


def _pairing(mu, samples: int, degree: int, seed: int) -> Report:
    rep = pairing.check_pairing_axioms(mu, samples=samples, degree=degree, seed=seed)
    params = {"mu": uq.fmt(Fraction(mu))}
    for d in GRAM_DEGREES:
        cert = pairing.pairing_gram_certificate(mu, d)
        rows = len(pairing.uq_window(uq.make_uq(mu, mu, expert=True), d))
        ok = cert.exact and cert.rank == rows
        rep.add("pairing.gram_full", dict(params, degree=d), ok,
                witness=None if ok else f"rank {cert.rank} of {rows} ({cert.method})",
                detail={"rank": cert.rank, "rows": rows, "method": cert.method})
    # control: without <E, b> the E-rows vanish and the rank must drop
    cert = pairing.pairing_gram_certificate(mu, 1, data=pairing.perturbed(mu, e_b=0))
    rows = len(pairing.uq_window(uq.make_uq(mu, mu, expert=True), 1))
    rep.add("pairing.gram_control", dict(params, degree=1), cert.rank < rows,
            witness=f"rank {cert.rank} with <E,b> = 0", detail={"rank": cert.rank, "rows": rows})
    return rep


def _coaction(mu, nu, tau, samples: int, degree: int, seed: int) -> Report:
    rep = coaction.check_gamma_relations(mu, nu, tau)
    if not rep.passed:
        return rep
    rep.extend(coaction.check_comodule(mu, nu, tau, samples=samples, degree=degree, seed=seed))
    rep.extend(coaction.check_infinitesimal_compat(mu, nu, tau))
    rep.extend(coaction.check_spin1_omega(mu, nu, tau))
    return rep


def _spin1(v: str) -> Report:
    return coaction.spin1_check(v)


def _ergodic(mu, nu, tau, d: int) -> Report:
    return coaction.check_ergodic(mu, nu, tau, d)


def _coideal(mu, nu, tau) -> Report:
    return coaction.coideal_embed(mu, nu, tau).report


def _classify(mu, nus: tuple, taus: tuple) -> Report:
    rep = Report("classify")
    for nu, nu2 in itertools.product(nus, repeat=2):
        for tau, tau2 in itertools.product(taus, repeat=2):
            rep.extend(coaction.classify_iso(mu, nu, tau, nu2, tau2).report)
    return rep


TASKS = {f.__name__: f for f in (
    _confluence, _hopf_triple, _hopf_pair, _pol_hopf, _weakhopf, _casimir, _homspace, _vrep, _pairing,
    _coaction, _spin1, _ergodic, _coideal, _classify,
)}


def expand(suite: str, opts: VerifyOptions) -> list[tuple[str, tuple]]:
    grid = opts.grid
    labels = _labels(grid)
    seed, deg = opts.seed, opts.degree
    tasks: list[tuple[str, tuple]] = []
    if suite == "confluence":
        tasks += [("_confluence", ("Uq", p)) for p in _pairs(grid)]
        tasks += [("_confluence", ("A", g)) for g in grid]
        tasks += [("_confluence", ("B", g)) for g in grid]
        tasks += [("_confluence", ("Pol", (v,))) for v in pol.VARIANTS]
    elif suite == "hopf":
        tasks += [("_hopf_triple", t) for t in itertools.product(labels, repeat=3)]
        tasks += [("_hopf_quad", q) for q in itertools.product(labels, repeat=4)]
        tasks += [("_hopf_pair", (m, n, _samples(opts, 50), deg, seed)) for m, n in itertools.product(labels, repeat=2)]
        tasks += [("_pol_hopf", (v, _samples(opts, 100), deg, seed)) for v in pol.VARIANTS]
    elif suite == "weakhopf":
        systems = [(-1, 0), (0, 1), (-1, 1), (-1, 0, 1)]
        tasks += [("_weakhopf", (s, _samples(opts, 100), deg, seed)) for s in systems]
    elif suite == "casimir":
        tasks += [("_casimir", p) for p in _pairs(grid)]
    elif suite == "homspace":
        tasks += [("_homspace", tuple(g) + (_samples(opts, 50), deg, seed)) for g in grid]
    elif suite == "vrep":
        tasks += [("_vrep", tuple(g)) for g in grid]
    elif suite == "pairing":
        mus = sorted({Fraction(g[0]) for g in grid})
        tasks += [("_pairing", (m, _samples(opts, 30), deg, seed)) for m in mus]
    elif suite == "coaction":
        tasks += [("_coaction", tuple(g) + (_samples(opts, 20), deg, seed)) for g in grid]
        tasks += [("_spin1", (v,)) for v in pol.VARIANTS]
    elif suite == "ergodic":
        tasks += [("_ergodic", tuple(g) + (opts.ergodic_degree,)) for g in grid]
    elif suite == "coideal":
        tasks += [("_coideal", tuple(g)) for g in grid]
    elif suite == "classify":
        mus = sorted({Fraction(g[0]) for g in grid})
        nus = tuple(sorted({Fraction(g[1]) for g in grid}))
        taus = tuple(sorted({Fraction(g[2]) for g in grid}))
        tasks += [("_classify", (m, nus, taus)) for m in mus]
    else:
        raise KeyError(suite)
    return tasks


def _hopf_quad(mu, nu, ups, om) -> Report:
    return uq.check_coassociativity(mu, nu, ups, om)


TASKS["_hopf_quad"] = _hopf_quad


def run_task(name: str, args: tuple) -> list[CheckResult]:
    return TASKS[name](*args).entries


def _sort_key(e: CheckResult):
    return (e.id, json.dumps(e.to_dict(with_time=False)["params"], sort_keys=True))


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def run_suites(suites: list[str], opts: VerifyOptions) -> dict[str, list[CheckResult]]:
    """Run the named suites; returns suite -> sorted entries."""
    plan = [(s, t) for s in suites for t in expand(s, opts)]
    if opts.workers > 1 and len(plan) > 1:
        with ProcessPoolExecutor(max_workers=opts.workers) as pool:
            futures = [pool.submit(run_task, name, args) for _, (name, args) in plan]
            results = [f.result() for f in futures]
    else:
        results = [run_task(name, args) for _, (name, args) in plan]
    out: dict[str, list[CheckResult]] = {s: [] for s in suites}
    for (s, _), entries in zip(plan, results):
        out[s].extend(entries)
    for s in out:
        out[s].sort(key=_sort_key)
    return out
