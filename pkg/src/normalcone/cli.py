"""Command-line frontend: bind a session script and run its commands.

    normalcone run script.nc [--seed N] [--trials N] [--format text|json]
                             [--trunc-override T] [--fail-fast]
    normalcone check script.nc

Exit codes: 0 all commands succeeded, 1 a command failed a check or errored,
2 the script did not parse or bind, 3 a command ran out of resources
(truncation cap or budget).  Resource failures dominate check failures.

Commands run sequentially in script order.  Randomized commands draw one RNG
stream per trial keyed by (seed, trial), so NORMALCONE_THREADS > 1 only caps
how many trials run concurrently; it never changes the report.
"""

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import __version__
from .adic import (AdicEngine, achilles_manaresi, first_differences,
                   hilbert_samuel, initial_ideal, multiplicity_hs,
                   multiplicity_sequence)
from .dsl import (CmdStmt, FiltDecl, IdealDecl, RingDecl, ScriptError,
                  SemanticError, SeqDecl, _render_value, parse_script)
from .errors import (NormalConeError, ResourceBudgetError,
                     TruncationCapExceeded)
from .fields import PrimeField, QQ
from .filtrations import (adic_filtration, artin_rees_filtration,
                          bound_filtration, check_lemma_J1,
                          filtration_from_order, initial_ideal_filtration,
                          jet_pipeline, JetInstance, rees_delta,
                          search_destabilizing_filtration, table_filtration)
from .ideals import IdealHandle
from .orders import order_from_name
from .perturb import (bound_main, bound_regular, bound_via_hilbert,
                      certify_filter_regular, search_destabilizing,
                      verify_invariance)
from .report import build_report, exact, exit_code, to_json, to_text
from .rings import RingContext


# -- binding: syntax tree -> engine objects --------------------------------------


class _Env:
    def __init__(self):
        self.ring = None
        self.ideals = {}     # name -> tuple of polynomials
        self.seqs = {}
        self.filts = {}

    def gens_of(self, name):
        """Generators named by an operand: an ideal, a sequence, or m."""
        if name == "m":
            return self.ring.gens()
        if name in self.ideals:
            return self.ideals[name]
        if name in self.seqs:
            return self.seqs[name]
        raise CommandError(f"{name!r} does not name an ideal or a sequence")

    def seq_of(self, name):
        if name in self.seqs:
            return self.seqs[name]
        raise CommandError(f"{name!r} is not a sequence")

    def filt_of(self, name):
        if name in self.filts:
            return self.filts[name]
        raise CommandError(f"{name!r} is not a filtration")


def _bind_err(msg, pos=(0, 0)):
    return SemanticError(msg, pos[0], pos[1])


def _field_of(decl):
    if decl.field_name == "Q":
        return QQ
    try:
        return PrimeField(int(decl.field_name[1:]))
    except ValueError as e:
        raise _bind_err(str(e), decl.pos) from None


def _poly_of(ring, node):
    try:
        return ring.poly({e: Fraction(*r) for e, r in node.terms})
    except ZeroDivisionError as e:
        raise _bind_err(str(e), node.pos) from None


def bind_script(script, trunc_override=None):
    """Construct the ring, ideals, sequences and filtrations of a script."""
    env = _Env()
    for s in script.statements:
        if isinstance(s, RingDecl):
            trunc = trunc_override if trunc_override is not None else s.trunc
            fld = _field_of(s)
            rels = [{e: Fraction(*r) for e, r in p.terms}
                    for p in s.relations]
            try:
                env.ring = RingContext(s.var_names, fld, rels, trunc)
            except (ValueError, ZeroDivisionError) as e:
                raise _bind_err(str(e), s.pos) from None
        elif isinstance(s, IdealDecl):
            if s.is_maximal_power:
                gens = env.ring.maximal_ideal().power(s.power).gens
            else:
                gens = tuple(_poly_of(env.ring, p) for p in s.gens)
            env.ideals[s.name] = tuple(gens)
        elif isinstance(s, SeqDecl):
            polys = tuple(_poly_of(env.ring, p) for p in s.polys)
            for p, node in zip(polys, s.polys):
                if p.is_zero():
                    raise _bind_err(
                        "sequence entry is zero over this field", node.pos)
            env.seqs[s.name] = polys
        elif isinstance(s, FiltDecl):
            try:
                if s.kind == "adic":
                    env.filts[s.name] = adic_filtration(
                        env.ring, env.ideals[s.arg], cap=s.cap or 16)
                elif s.kind == "order":
                    order = order_from_name(s.arg, env.ring.n_vars)
                    env.filts[s.name] = filtration_from_order(
                        order, env.ring, cap=s.cap or 64)
                else:
                    rows = [[_poly_of(env.ring, p) for p in row]
                            for row in s.rows]
                    env.filts[s.name] = (
                        table_filtration(env.ring, rows, cap=s.cap)
                        if s.cap else table_filtration(env.ring, rows))
            except (ValueError, NormalConeError) as e:
                raise _bind_err(str(e), s.pos) from None
    return env


# -- option coercion --------------------------------------------------------------


class CommandError(Exception):
    """A command was called with unusable operands or options."""


def _kw(kwargs, key, default=None):
    for k, v in kwargs:
        if k == key:
            return v
    return default


def _kw_int(kwargs, key, default=None, minimum=None):
    v = _kw(kwargs, key)
    if v is None:
        return default
    if not isinstance(v, int):
        raise CommandError(f"option {key} expects an integer")
    if minimum is not None and v < minimum:
        raise CommandError(f"option {key} must be >= {minimum}")
    return v


def _kw_range(kwargs, key, default=None):
    v = _kw(kwargs, key)
    if v is None:
        return default
    if not (isinstance(v, tuple) and v[0] == "range"):
        raise CommandError(f"option {key} expects a range a..b")
    return (v[1], v[2])


def _kw_polys(env, kwargs, key):
    v = _kw(kwargs, key)
    if v is None:
        return None
    if not (isinstance(v, tuple) and v[0] == "polys"):
        raise CommandError(f"option {key} expects a parenthesized list")
    return [_poly_of(env.ring, p) for p in v[1]]


def _need_ops(ops, count, usage):
    if len(ops) != count:
        raise CommandError(f"usage: {usage}")


def _expect_check(result, kwargs, key_in_result, option="expect"):
    """Wire the optional expect=<int> assertion into a scalar result."""
    want = _kw_int(kwargs, option)
    if want is None:
        return "ok"
    got = result[key_in_result]
    result["expected"] = want
    if got != want:
        result["expect_failed"] = True
        return "check-failed"
    return "ok"


# -- command handlers --------------------------------------------------------------
#
# Each handler returns (result-dict, status, warnings).  Raising an engine
# error is fine; the executor maps it onto the entry status.


def _cmd_ar(env, rt, ops, kw):
    _need_ops(ops, 2, "cmd ar <ideal|seq> <ideal> [expect=d]")
    eng = AdicEngine(env.ring, list(env.gens_of(ops[0])),
                     env.gens_of(ops[1]))
    ar = eng.artin_rees()
    result = {"d": ar["d"], "dprime": ar["dprime"],
              "fresh_levels": sorted(ar["fresh_route1"])}
    return result, _expect_check(result, kw, "d"), []


def _cmd_initial(env, rt, ops, kw):
    _need_ops(ops, 2, "cmd initial <ideal|seq> <ideal> [forms=(...)]")
    ini = initial_ideal(env.ring, list(env.gens_of(ops[0])),
                        list(env.gens_of(ops[1])))
    result = {
        "d": ini.d,
        "generator_levels": ini.generator_levels(),
        "piece_dims": {str(n): ini.piece_dim(n) for n in range(1, ini.d + 2)},
        "generators": {str(n): sorted(str(p) for p in reps)
                       for n, reps in ini.pieces.items()},
    }
    forms = _kw_polys(env, kw, "forms")
    status = "ok"
    if forms is not None:
        match = ini.equals_forms(forms)
        result["forms_match"] = match
        if not match:
            status = "check-failed"
    return result, status, []


def _cmd_certify(env, rt, ops, kw):
    _need_ops(ops, 2, "cmd certify <seq> <ideal>")
    cert = certify_filter_regular(env.ring, env.seq_of(ops[0]),
                                  env.gens_of(ops[1]))
    return cert.to_dict(), "ok" if cert.filter_regular else "check-failed", []


def _bound_cmd(fn):
    def run(env, rt, ops, kw):
        _need_ops(ops, 2, "cmd bound_* <seq> <ideal> [expect=N]")
        extra = {}
        if fn is bound_via_hilbert:
            p = _kw_int(kw, "p")
            if p is not None:
                extra["p"] = p
            extra["seed"] = _kw_int(kw, "seed", rt["seed"])
        cert = fn(env.ring, env.seq_of(ops[0]), env.gens_of(ops[1]), **extra)
        result = cert.to_dict()
        return result, _expect_check(result, kw, "N"), []
    return run


def _chunks(total, pieces):
    step = (total + pieces - 1) // pieces
    return [range(lo, min(lo + step, total))
            for lo in range(0, total, step)]


def _cmd_verify(env, rt, ops, kw):
    _need_ops(ops, 2, "cmd verify <seq> <ideal> [N=auto] [trials=] [seed=]")
    fs = env.seq_of(ops[0])
    jg = env.gens_of(ops[1])
    n_opt = _kw(kw, "N", "auto")
    if n_opt == "auto":
        N = bound_main(env.ring, fs, jg).N
    elif isinstance(n_opt, int) and n_opt >= 1:
        N = n_opt
    else:
        raise CommandError("option N expects auto or an integer >= 1")
    trials = _kw_int(kw, "trials", rt["trials"], minimum=1)
    seed = _kw_int(kw, "seed", rt["seed"])
    hs_upto = _kw_int(kw, "hs_upto")
    am_window = _kw_int(kw, "am_window")
    common = dict(hs_upto=hs_upto, am_window=am_window)

    threads = rt["threads"]
    if threads > 1 and trials > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(verify_invariance, env.ring, fs, jg, N, trials,
                            seed, trial_range=chunk, **common)
                for chunk in _chunks(trials, threads)]
            reports = [r for f in futures for r in f.result()]
        reports.sort(key=lambda r: r.trial)
    else:
        reports = verify_invariance(env.ring, fs, jg, N, trials, seed,
                                    **common)

    failed = [r.trial for r in reports if not r.passed]
    result = {
        "N": N,
        "trials": trials,
        "seed": seed,
        "passed": len(reports) - len(failed),
        "failed_trials": failed,
        "outcomes": {str(r.trial): r.outcomes for r in reports},
    }
    return result, "check-failed" if failed else "ok", []


def _cmd_search(env, rt, ops, kw):
    _need_ops(ops, 2, "cmd search <seq> <ideal> N=<level> [trials=] [seed=]")
    N = _kw_int(kw, "N", minimum=1)
    if N is None:
        raise CommandError("search needs N=<level>")
    wit = search_destabilizing(
        env.ring, env.seq_of(ops[0]), env.gens_of(ops[1]), N,
        _kw_int(kw, "trials", rt["trials"], minimum=1),
        _kw_int(kw, "seed", rt["seed"]))
    if wit is None:
        return {"found": False, "N": N}, "ok", []
    out = wit.to_dict()
    out["found"] = True
    return out, "ok", []


def _cmd_hs(env, rt, ops, kw):
    _need_ops(ops, 2, "cmd hs <ideal|seq> <ideal> [upto=]")
    cap = env.ring.trunc_cap
    upto = _kw_int(kw, "upto", min(cap - 1, 10) if cap else 10, minimum=1)
    table = hilbert_samuel(env.ring, list(env.gens_of(ops[0])),
                           env.gens_of(ops[1]), upto)
    return {"upto": upto, "table": table,
            "first_differences": first_differences(table)}, "ok", []


def _cmd_multiplicity(env, rt, ops, kw):
    _need_ops(ops, 2, "cmd multiplicity <ideal|seq> <ideal> [expect=e]")
    dim, e = multiplicity_hs(env.ring, list(env.gens_of(ops[0])),
                             env.gens_of(ops[1]), upto=_kw_int(kw, "upto"))
    result = {"dim": dim, "e": e}
    return result, _expect_check(result, kw, "e"), []


def _cmd_am(env, rt, ops, kw):
    _need_ops(ops, 2, "cmd am <ideal|seq> <ideal> [r=] [s=]")
    r = _kw_int(kw, "r", 4, minimum=0)
    s = _kw_int(kw, "s", 4, minimum=0)
    table = achilles_manaresi(env.ring, list(env.gens_of(ops[0])),
                              env.gens_of(ops[1]), r, s)
    return {"r": r, "s": s,
            "cells": {f"{u},{v}": table.cells[(u, v)]
                      for (u, v) in sorted(table.cells)}}, "ok", []


def _cmd_multiplicity_sequence(env, rt, ops, kw):
    _need_ops(ops, 2, "cmd multiplicity_sequence <ideal|seq> <ideal>")
    d, coeffs = multiplicity_sequence(env.ring, list(env.gens_of(ops[0])),
                                      env.gens_of(ops[1]),
                                      r_max=_kw_int(kw, "r"),
                                      s_max=_kw_int(kw, "s"))
    return {"dim": d, "coefficients": list(coeffs)}, "ok", []


def _cmd_delta(env, rt, ops, kw):
    _need_ops(ops, 1, "cmd delta <filtration> [cap=] [expect=]")
    F = env.filt_of(ops[0])
    delta, status = rees_delta(F, cap=_kw_int(kw, "cap", minimum=2))
    result = {"delta": delta, "status": status}
    warns = []
    if status != "certified-within-cap":
        warns.append(f"delta for {ops[0]} is a heuristic (not certified "
                     "within the scan cap)")
    return result, _expect_check(result, kw, "delta"), warns


def _cmd_lemma_j1(env, rt, ops, kw):
    _need_ops(ops, 1, "cmd lemma_j1 <filtration> [n=]")
    F = env.filt_of(ops[0])
    n_max = _kw_int(kw, "n", 4, minimum=1)
    holds = check_lemma_J1(F, n_max)
    return ({"n_max": n_max, "holds": holds},
            "ok" if holds else "check-failed", [])


def _cmd_ar_filtration(env, rt, ops, kw):
    _need_ops(ops, 2, "cmd ar_filtration <ideal|seq> <filtration> [expect=]")
    d = artin_rees_filtration(list(env.gens_of(ops[0])), env.filt_of(ops[1]))
    result = {"d": d}
    return result, _expect_check(result, kw, "d"), []


def _cmd_initial_filtration(env, rt, ops, kw):
    _need_ops(ops, 2,
              "cmd initial_filtration <ideal|seq> <filtration> [forms=(...)]")
    F = env.filt_of(ops[1])
    ini = initial_ideal_filtration(list(env.gens_of(ops[0])), F)
    status = "ok"
    if F.kind == "adic":
        result = {
            "kind": "adic",
            "d": ini.d,
            "generators": {str(n): sorted(str(p) for p in reps)
                           for n, reps in ini.pieces.items()},
        }
        forms = _kw_polys(env, kw, "forms")
        if forms is not None:
            match = ini.equals_forms(forms)
            result["forms_match"] = match
            if not match:
                status = "check-failed"
    else:
        result = ini.to_dict()
        result["kind"] = "order"
        forms = _kw_polys(env, kw, "forms")
        if forms is not None:
            monos = []
            for f in forms:
                if len(f.terms) != 1:
                    raise CommandError(
                        "forms for an order filtration must be monomials")
                monos.append(next(iter(f.terms)))
            match = ini.equals_monomials(monos)
            result["forms_match"] = match
            if not match:
                status = "check-failed"
    return result, status, []


def _cmd_bound_filtration(env, rt, ops, kw):
    _need_ops(ops, 2, "cmd bound_filtration <seq> <filtration> [expect=N]")
    cert = bound_filtration(env.seq_of(ops[0]), env.filt_of(ops[1]))
    result = cert.to_dict()
    warns = []
    if "warning" in cert.extras:
        warns.append(cert.extras["warning"])
    return result, _expect_check(result, kw, "N"), warns


def _cmd_jets(env, rt, ops, kw):
    _need_ops(ops, 1, "cmd jets <seq> [order=deglex] [window=a..b]")
    order = order_from_name(_kw(kw, "order", "deglex"), env.ring.n_vars)
    window = _kw_range(kw, "window")
    levels = tuple(range(window[0], window[1] + 1)) if window else None
    regular = _kw_int(kw, "regular", 1)
    inst = JetInstance(env.ring, env.seq_of(ops[0]), order, levels=levels,
                       regular=bool(regular))
    rep = jet_pipeline(inst)
    result = rep.to_dict()
    ok = rep.all_pass()
    result["all_pass"] = ok
    return result, "ok" if ok else "check-failed", []


def _cmd_search_filtration(env, rt, ops, kw):
    _need_ops(ops, 2,
              "cmd search_filtration <seq> <filtration> N=<level> [trials=]")
    N = _kw_int(kw, "N", minimum=1)
    if N is None:
        raise CommandError("search_filtration needs N=<level>")
    wit = search_destabilizing_filtration(
        env.seq_of(ops[0]), env.filt_of(ops[1]), N,
        _kw_int(kw, "trials", rt["trials"], minimum=1),
        _kw_int(kw, "seed", rt["seed"]))
    if wit is None:
        return {"found": False, "N": N}, "ok", []
    out = wit.to_dict()
    out["found"] = True
    return out, "ok", []


_COMMANDS = {
    "ar": _cmd_ar,
    "initial": _cmd_initial,
    "certify": _cmd_certify,
    "bound_main": _bound_cmd(bound_main),
    "bound_regular": _bound_cmd(bound_regular),
    "bound_hilbert": _bound_cmd(bound_via_hilbert),
    "verify": _cmd_verify,
    "search": _cmd_search,
    "hs": _cmd_hs,
    "multiplicity": _cmd_multiplicity,
    "am": _cmd_am,
    "multiplicity_sequence": _cmd_multiplicity_sequence,
    "delta": _cmd_delta,
    "lemma_j1": _cmd_lemma_j1,
    "ar_filtration": _cmd_ar_filtration,
    "initial_filtration": _cmd_initial_filtration,
    "bound_filtration": _cmd_bound_filtration,
    "jets": _cmd_jets,
    "search_filtration": _cmd_search_filtration,
}


# -- executor ---------------------------------------------------------------------


def _entry_args(cmd, var_names):
    return {
        "operands": list(cmd.operands),
        "options": {k: _render_value(v, var_names) for k, v in cmd.kwargs},
    }


def run_script(script, env, seed, trials, fail_fast=False, threads=None):
    """Execute every command; returns the list of report entries."""
    if threads is None:
        threads = max(1, int(os.environ.get("NORMALCONE_THREADS", "1")))
    rt = {"seed": seed, "trials": trials, "threads": threads}
    var_names = env.ring.var_names if env.ring else ()
    entries, warnings, stop = [], [], False
    for i, cmd in enumerate(script.commands()):
        entry = {"index": i, "command": cmd.name,
                 "args": _entry_args(cmd, var_names),
                 "status": "ok", "result": None, "error": None}
        if stop:
            entry["status"] = "skipped"
            entries.append(entry)
            continue
        handler = _COMMANDS.get(cmd.name)
        try:
            if handler is None:
                raise CommandError(f"unknown command {cmd.name!r}; known: "
                                   + ", ".join(sorted(_COMMANDS)))
            result, status, warns = handler(env, rt, cmd.operands, cmd.kwargs)
            entry["result"] = exact(result)
            entry["status"] = status
            warnings.extend(warns)
        except (TruncationCapExceeded, ResourceBudgetError) as e:
            entry["status"] = "resource"
            entry["error"] = f"{type(e).__name__}: {e}"
            warnings.append(f"command {i} ({cmd.name}) hit a resource limit")
        except (CommandError, NormalConeError, ValueError, KeyError,
                TypeError) as e:
            entry["status"] = "error"
            entry["error"] = f"{type(e).__name__}: {e}"
        entries.append(entry)
        if fail_fast and entry["status"] != "ok":
            stop = True
    return entries, warnings


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="normalcone",
        description="perturbation bounds and initial-ideal invariants")
    sub = ap.add_subparsers(dest="mode", required=True)

    runp = sub.add_parser("run", help="execute a session script")
    runp.add_argument("script", help="path to the script file")
    runp.add_argument("--seed", type=int, default=0,
                      help="seed for commands that do not set their own")
    runp.add_argument("--trials", type=int, default=20,
                      help="trial count for commands that do not set one")
    runp.add_argument("--format", choices=("text", "json"), default="text")
    runp.add_argument("--trunc-override", type=int, default=None,
                      help="replace the script's truncation cap")
    runp.add_argument("--fail-fast", action="store_true",
                      help="skip remaining commands after the first failure")

    checkp = sub.add_parser("check", help="parse a script and report errors")
    checkp.add_argument("script")

    args = ap.parse_args(argv)

    try:
        with open(args.script, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        print(f"cannot read {args.script}: {e}", file=sys.stderr)
        return 2

    try:
        script = parse_script(text)
        if args.mode == "run":
            env = bind_script(script, trunc_override=args.trunc_override)
    except ScriptError as e:
        print(f"{args.script}: {e.diagnostic()}", file=sys.stderr)
        return 2

    if args.mode == "check":
        print("ok")
        return 0

    entries, warnings = run_script(script, env, args.seed, args.trials,
                                   fail_fast=args.fail_fast)
    report = build_report(__version__, text, args.seed, entries, warnings)
    out = to_json(report) if args.format == "json" else to_text(report)
    sys.stdout.write(out)
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
