"""Command-line entry point.

Exit codes: 0 when the run succeeds with an affirmative verdict, 1 when it
succeeds but the verdict is inconclusive or negative, 2 on any error.
"""

import argparse
import sys
import time

from . import cache
from .bcp import (INCONCLUSIVE, LEOPOLDT, OBSTRUCTION_UNDER_LEOPOLDT, UNCONDITIONAL,
                  bc_successor, class_text, cm_bcp_witness, delta_ledger,
                  enumerate_bcp_tori, obstruction_verdict, p_successor, start_chain)
from .charrank import (FINITE, NO_SUBGROUP_OBSTRUCTION, PASS,
                       classical_chabauty_verdict, instance, verify_main_rank_bound,
                       verify_no_subgroup_obstruction)
from .config import (curve_from, element_list, fields_from, int_list, load_config, lookup_field,
                     one_block, rational_list, tower_from)
from .errors import ChabautyError, ConfigError, IndexObstruction
from .numfield import parse_number_field, s_unit_rank, splitting_profile, sspec
from .puncture import (build_x_alpha_q, curve_from_points, jacobian_profile,
                       jacobian_profile_orbit_form, make_curve, parse_element)
from .report import make_report, render_csv, render_json, render_table
from .sieve import CONFIRMED, skolem_sieve, solve_sunit_desk


class Outcome:
    def __init__(self, instance, results, header, rows, code):
        self.instance = instance
        self.results = results
        self.header = header
        self.rows = rows
        self.code = code


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key-value configuration file")
    common.add_argument("--format", choices=("json", "table", "csv"), default="json")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--cache-dir", help="content cache directory (default: $CHABAUTY_CACHE_DIR)")

    field_args = argparse.ArgumentParser(add_help=False)
    field_args.add_argument("--field", help="field label (Q or a [field] block label)")
    field_args.add_argument("--poly", help="ascending integer coefficients, e.g. 1,0,1")
    field_args.add_argument("--label", help="label for --poly")
    field_args.add_argument("--S0", dest="s0", help="rational primes, e.g. 2,3")

    curve_args = argparse.ArgumentParser(add_help=False)
    curve_args.add_argument("--points", help="removed points separated by ';'")
    curve_args.add_argument("--divisor", help="divisor coefficients separated by ';'")
    curve_args.add_argument("--alpha")
    curve_args.add_argument("--q", type=int)
    curve_args.add_argument("--no-infinity", action="store_true")

    p = argparse.ArgumentParser(prog="chabauty", description="Restriction-of-scalars Chabauty toolkit")
    sub = p.add_subparsers(dest="command", required=True)
    f = sub.add_parser("field", parents=[common, field_args], help="field invariants")
    f.add_argument("--primes", help="primes for splitting profiles")
    sub.add_parser("jacobian", parents=[common, field_args, curve_args],
                   help="generalized Jacobian profile of a punctured curve")
    b = sub.add_parser("bcp", parents=[common], help="enumerate BCP tori")
    b.add_argument("--depth", type=int)
    o = sub.add_parser("obstruction", parents=[common, field_args, curve_args],
                       help="delta ledger and obstruction verdict of a chain")
    o.add_argument("--moves", help="steps separated by ';': forget:a|b, bc:LABEL, quotient:D")
    o.add_argument("--mode", choices=("unconditional", "leopoldt"))
    o.add_argument("--intersection-dim", type=int)
    v = sub.add_parser("verify", help="instance checks of the rank inequalities")
    vs = v.add_subparsers(dest="verb", required=True)
    mb = vs.add_parser("main-bound", parents=[common, field_args])
    mb.add_argument("--q", type=int)
    mb.add_argument("--alpha")
    mb.add_argument("--epsilon")
    mb.add_argument("--subfield")
    ns = vs.add_parser("no-subgroup", parents=[common, field_args])
    ns.add_argument("--q", type=int)
    ns.add_argument("--alpha")
    vs.add_parser("classical", parents=[common, field_args, curve_args])
    cw = vs.add_parser("cm-witness", parents=[common, field_args])
    cw.add_argument("--q", type=int)
    su = sub.add_parser("sunit", parents=[common], help="S-unit equation over Q")
    su.add_argument("--S0", dest="s0")
    su.add_argument("--q", type=int)
    su.add_argument("--p", type=int)
    su.add_argument("--N", type=int)
    su.add_argument("--box", type=int)
    su.add_argument("--generators", help="sieve only, with these S-unit generators")
    return p


def _pick(cli_value, block, key, default=None):
    if cli_value is not None:
        return cli_value
    if block is not None and block.get(key) is not None:
        return block.get(key)
    return default


def _base(args, blocks, fields):
    if getattr(args, "poly", None):
        return parse_number_field(int_list(args.poly), args.label)
    b = one_block(blocks, "instance", required=False) or one_block(blocks, "curve", required=False)
    label = _pick(getattr(args, "field", None), b, "field", "Q")
    return lookup_field(fields, label)


def _s0(args, block):
    return sspec(int_list(_pick(getattr(args, "s0", None), block, "s0", "")))


def _curve(args, blocks, fields):
    given = any(getattr(args, k, None) for k in ("points", "divisor", "alpha", "q"))
    if not given:
        return curve_from(blocks, fields)
    base = _base(args, blocks, fields)
    s = _s0(args, one_block(blocks, "curve", required=False))
    if args.alpha is not None or args.q is not None:
        return build_x_alpha_q(base, s, args.alpha or "1", args.q or 5)
    inf = not args.no_infinity
    if args.points:
        pts = [parse_element(base, x) for x in element_list(args.points)]
        return curve_from_points(base, s, pts, inf)
    return make_curve(base, s, [parse_element(base, x) for x in element_list(args.divisor)], inf)


# commands

def cmd_field(args, blocks, fields):
    F = _base(args, blocks, fields)
    block = one_block(blocks, "instance", required=False)
    primes = int_list(_pick(args.primes, block, "primes", ""))
    splits = []
    for p in primes:
        try:
            splits.append({"p": p, "residue_degrees": list(splitting_profile(F, p).residue_degrees)})
        except IndexObstruction as exc:
            splits.append({"p": p, "error": str(exc)})
    s = _s0(args, block)
    res = {"label": F.label, "poly": list(F.defining_poly), "degree": F.degree,
           "signature": list(F.signature), "poly_discriminant": F.poly_discriminant,
           "splitting": splits, "S0": s.sorted(), "s_unit_rank": s_unit_rank(F, s.sorted())}
    rows = [[F.label, F.degree, "%d,%d" % F.signature, F.poly_discriminant, res["s_unit_rank"]]]
    return Outcome({"field": F.label, "S0": s.sorted()}, res,
                   ["field", "degree", "signature", "discriminant", "s_unit_rank"], rows, 0)


def cmd_jacobian(args, blocks, fields):
    X = _curve(args, blocks, fields)
    a = jacobian_profile(X)
    b = jacobian_profile_orbit_form(X)
    agree = (a.dim, a.rank) == (b.dim, b.rank)
    res = {"curve": X.label, "profile": a.to_dict(), "orbit_form": {"dim": b.dim, "rank": b.rank},
           "routes_agree": agree, "notes": list(X.notes)}
    rows = [[X.label, a.dim, a.rank, b.dim, b.rank]]
    return Outcome({"curve": X.label, "base": X.base.label, "S0": X.s_spec.sorted()}, res,
                   ["curve", "dim", "rank", "orbit_dim", "orbit_rank"], rows, 0 if agree else 1)


def cmd_bcp(args, blocks, fields):
    X = curve_from(blocks, fields)
    T = tower_from(blocks, fields, X.base)
    block = one_block(blocks, "bcp", required=False)
    depth = int(_pick(args.depth, block, "depth", 4))
    found = enumerate_bcp_tori(X, T, depth)
    classes = []
    rows = []
    for e in found:
        text = class_text(e.torus, T)
        classes.append({"n": e.n, "torus": text, "dim": e.torus.dim, "rank_R0": e.torus.rank_r0,
                        "chain": e.chain.describe()})
        rows.append([e.n, text, e.torus.dim, e.torus.rank_r0, e.chain.describe()])
    grouping = [sum(1 for e in found if e.n == n) for n in range(depth + 1)]
    res = {"count": len(found), "grouping": grouping, "classes": classes}
    return Outcome({"curve": X.label, "tower": T.labels(), "depth": depth}, res,
                   ["n", "torus", "dim", "rank", "chain"], rows, 0)


def _apply_moves(chain, moves):
    for m in moves:
        kind, _, arg = m.partition(":")
        kind = kind.strip().lower()
        if kind == "bc":
            chain = bc_successor(chain, arg.strip())
        elif kind == "forget":
            items = [int(x) if x.strip().isdigit() else x.strip() for x in arg.split("|") if x.strip()]
            chain = p_successor(chain, ("forget", items))
        elif kind == "quotient":
            chain = p_successor(chain, ("quotient", int(arg)))
        else:
            raise ConfigError("unknown move %r" % m)
    return chain


def cmd_obstruction(args, blocks, fields):
    X = _curve(args, blocks, fields)
    T = tower_from(blocks, fields, X.base)
    block = one_block(blocks, "obstruction", required=False)
    moves = [m for m in (args.moves or "").split(";") if m.strip()]
    if not moves and block is not None:
        moves = block.all("move")
    mode = _pick(args.mode, block, "mode", "unconditional")
    mode = LEOPOLDT if mode.lower().startswith("leo") else UNCONDITIONAL
    inter = _pick(args.intersection_dim, block, "intersection_dim")
    chain = _apply_moves(start_chain(X, T), moves)
    ledger = delta_ledger(chain)
    v = obstruction_verdict(chain, mode=mode, intersection_dim=None if inter is None else int(inter))
    res = {"chain": chain.describe(), "n": chain.n, "torus": class_text(chain.result, T),
           "ledger": {"deltas": [list(d) for d in ledger.deltas], "lower_bound": ledger.lower_bound},
           "verdict": v}
    rows = [[chain.describe(), v.dim_T, v.rank_T_R0, v.intersection_dim, ledger.lower_bound, v.verdict]]
    code = 1 if v.verdict == INCONCLUSIVE else 0
    return Outcome({"curve": X.label, "tower": T.labels(), "moves": moves, "mode": mode}, res,
                   ["chain", "dim", "rank", "intersection", "ledger_bound", "verdict"], rows, code)


def _verifier_rows(rep):
    return [[rep.kind, rep.verdict, rep.lhs, rep.rhs, ",".join(rep.hypothesis_flags)]]


_VHEAD = ["check", "verdict", "lhs", "rhs", "flags"]


def cmd_main_bound(args, blocks, fields):
    K = _base(args, blocks, fields)
    block = one_block(blocks, "instance", required=False)
    q = int(_pick(args.q, block, "q", 5))
    alpha = _pick(args.alpha, block, "alpha", "1")
    eps = rational_list(_pick(args.epsilon, block, "epsilon", "1/4"))[0]
    sub_label = _pick(args.subfield, block, "subfield")
    tw = tower_from(blocks, fields, K) if sub_label else None
    sub = lookup_field(fields, sub_label) if sub_label else None
    inst = instance(K, _s0(args, block), q, alpha, eps, tw)
    rep = verify_main_rank_bound(inst, sub)
    return Outcome(inst.describe(), rep.to_dict(), _VHEAD, _verifier_rows(rep),
                   0 if rep.verdict == PASS else 1)


def cmd_no_subgroup(args, blocks, fields):
    K = _base(args, blocks, fields)
    block = one_block(blocks, "instance", required=False)
    inst = instance(K, _s0(args, block), int(_pick(args.q, block, "q", 5)),
                    _pick(args.alpha, block, "alpha", "2"))
    rep = verify_no_subgroup_obstruction(inst)
    return Outcome(inst.describe(), rep.to_dict(), _VHEAD, _verifier_rows(rep),
                   0 if rep.verdict == NO_SUBGROUP_OBSTRUCTION else 1)


def cmd_classical(args, blocks, fields):
    X = _curve(args, blocks, fields)
    rep = classical_chabauty_verdict(X.base, X.s_spec, X)
    return Outcome({"curve": X.label}, rep.to_dict(), _VHEAD, _verifier_rows(rep),
                   0 if rep.verdict == FINITE else 1)


def cmd_cm_witness(args, blocks, fields):
    K = _base(args, blocks, fields)
    block = one_block(blocks, "instance", required=False)
    q = int(_pick(args.q, block, "q", 7))
    subs = tower_from(blocks, fields, K).chain if one_block(blocks, "tower", required=False) else None
    w = cm_bcp_witness(K, q, subs, _s0(args, block))
    res = {"curve": w.curve.label, "field": {"label": w.field.label, "poly": list(w.field.defining_poly),
                                             "signature": list(w.field.signature)},
           "real_subfield": w.real_subfield.label, "cm_field": w.cm_field.label,
           "moved_poly": [list(c) for c in w.moved_poly], "dim": w.dim, "rank": w.rank,
           "verdict": w.verdict}
    rows = [["cm-witness", w.verdict.verdict, w.rank, w.dim, w.field.label]]
    return Outcome({"field": K.label, "q": q}, res, ["check", "verdict", "rank", "dim", "field"], rows,
                   0 if w.verdict.verdict == OBSTRUCTION_UNDER_LEOPOLDT else 1)


def cmd_sunit(args, blocks, fields):
    block = one_block(blocks, "sunit", required=False) or one_block(blocks, "sieve", required=False)
    if _pick(None, block, "field", "Q") != "Q":
        raise ConfigError("the S-unit solver supports the field Q only")
    s = int_list(_pick(args.s0, block, "s0", ""))
    N = _pick(args.N, block, "n")
    box = int(_pick(args.box, block, "box", 12))
    gens = _pick(args.generators, block, "generators")
    if gens is not None:
        p = int(_pick(args.p, block, "p", 3))
        r = skolem_sieve(fields["Q"], s, p, None if N is None else int(N), box, rational_list(gens))
        res = {"confirmed": r.pairs(), "surviving_unconfirmed": r.surviving_unconfirmed,
               "surviving_classes": len(r.surviving_classes), "excluded": r.excluded,
               "parameters": r.parameters}
        rows = [[x, y] for x, y in r.pairs()]
        return Outcome(r.parameters, res, ["x", "y"], rows, 0 if r.surviving_unconfirmed == 0 else 1)
    conf = {"S0": s, "q": int(_pick(args.q, block, "q", 5)), "p": _pick(args.p, block, "p"),
            "N": N, "box": box}
    d = solve_sunit_desk(conf)
    res = {"status": d.status, "solutions": d.solutions, "count": len(d.solutions),
           "curves": [c.__dict__ for c in d.curves],
           "sieve": {"confirmed": d.sieve.pairs(), "surviving_unconfirmed": d.sieve.surviving_unconfirmed,
                     "surviving_classes": len(d.sieve.surviving_classes),
                     "excluded": d.sieve.excluded, "closure_dimension": list(d.sieve.closure)},
           "oracle_agrees": d.solutions == d.oracle}
    rows = [[x, y] for x, y in d.solutions]
    return Outcome(d.parameters, res, ["x", "y"], rows, 0 if d.status == CONFIRMED else 1)


_COMMANDS = {"field": cmd_field, "jacobian": cmd_jacobian, "bcp": cmd_bcp,
             "obstruction": cmd_obstruction, "sunit": cmd_sunit}
_VERBS = {"main-bound": cmd_main_bound, "no-subgroup": cmd_no_subgroup,
          "classical": cmd_classical, "cm-witness": cmd_cm_witness}


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cache.configure(args.cache_dir)
        blocks = load_config(args.config) if args.config else []
        fields = fields_from(blocks)
        handler = _VERBS[args.verb] if args.command == "verify" else _COMMANDS[args.command]
        start = time.perf_counter()
        out = handler(args, blocks, fields)
        ms = int((time.perf_counter() - start) * 1000)
        name = args.command + ("" if args.command != "verify" else " " + args.verb)
        report = make_report(name, out.instance, out.results, cache.warnings(), ms)
        if args.format == "json":
            text = render_json(report)
        elif args.format == "csv":
            text = render_csv(out.header, out.rows)
        else:
            text = render_table(out.header, out.rows)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        else:
            stdout.write(text + "\n")
        for w in cache.warnings():
            stderr.write("warning: %s\n" % w)
        return out.code
    except (ChabautyError, ValueError, KeyError, OSError, AssertionError) as exc:
        stderr.write("error: %s: %s\n" % (type(exc).__name__, exc))
        return 2


def main():
    sys.exit(run())
