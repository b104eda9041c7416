"""Command line entry point: ``jacpair <group> <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys

from . import approxroot as ar
from . import casebook as cb
from . import elimination as el
from .startpoints import filter_by_direction, possible_starting_points


def _dir(text):
    try:
        r, s = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("direction must look like RHO,SIGMA")
    return (r, s)


def cmd_starting_points(args):
    cands = possible_starting_points(args.l, args.a, args.b, upper=args.upper)
    if args.dir:
        cands = filter_by_direction(cands, args.dir)
    if args.json:
        print(json.dumps([c.to_dict() for c in cands], indent=2))
    else:
        for c in cands:
            print(f"({c.c_over_l},{c.d})  dir=({c.direction[0]},{c.direction[1]})  "
                  f"s={c.s} N1={c.N1} N2={c.N2}  {c.accepted_by}")
    return 0


def cmd_root_build(args):
    P = ar.random_admissible_P(args.case, args.seed)
    root = ar.build_root(ar.RootConfig(args.case, P, depth=args.depth))
    D = ar.build_D(root)
    Dt = ar.shift_D(D)
    vals = ar.verify_D_valuations(D, Dt)
    out = {
        "case": args.case, "seed": args.seed, "depth": args.depth,
        "P": {str(k): v.to_text() for k, v in sorted(P.items())},
        "C": {str(k): f"({v.num.to_text()})/({root.C3.to_text()})^{v.power}"
              for k, v in sorted(root.C.coeffs.items(), reverse=True)},
        "D": {str(k): v.to_text() for k, v in sorted(D.D.coeffs.items(), reverse=True)},
        "D_shifted": {str(k): v.to_text() for k, v in sorted(Dt.coeffs.items(), reverse=True)},
        "valuations": {k: vals[k] for k in ("deg_weight", "deg_value", "ord_weight", "ord_value", "ok")},
        "d_deg_max": {str(k): v for k, v in vals["d_deg_max"].items()},
        "d_ord_min": {str(k): v for k, v in vals["d_ord_min"].items()},
    }
    text = json.dumps(out, indent=2)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text)
    else:
        print(text)
    return 0 if vals["ok"] else 1


def cmd_elim_run(args):
    sys_ = el.generate_system(args.case)
    trace = el.eliminate(sys_)
    obj = trace.to_json_obj()
    obj["rows"] = {k: sys_.rows[k].to_text() for k in sys_.rows}
    obj["selected"] = sys_.selected
    if args.trace:
        with open(args.trace, "w") as fh:
            json.dump(obj, fh, indent=2)
    print(trace.final.to_text())
    return 0


def cmd_case_list(args):
    rows = cb.list_cases()
    if args.json:
        print(json.dumps([r.to_dict() for r in rows], indent=2))
        return 0
    print(f"{'id':7} {'A0':9} {'(m,n)':7} {'max':>4}  status")
    for r in rows:
        a0 = f"({r.A0[0]},{r.A0[1]})"
        mn = f"({r.mn[0]},{r.mn[1]})"
        print(f"{r.case_id:7} {a0:9} {mn:7} {r.max_deg:>4}  {r.status}")
    return 0


def cmd_case_run(args):
    rep = cb.run_case(args.id, args.seed)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(rep.to_json())
    if args.svg:
        rep.write_svgs(args.svg)
    print(rep.to_text())
    return 0 if rep.ok else 1


def build_parser():
    p = argparse.ArgumentParser(prog="jacpair", description="Jacobian pair case workbench")
    groups = p.add_subparsers(dest="group", required=True)

    algo = groups.add_parser("algo").add_subparsers(dest="cmd", required=True)
    sp = algo.add_parser("starting-points", help="enumerate possible starting corners")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--dir", type=_dir)
    sp.add_argument("--upper", choices=["inclusive", "exclusive"], default="inclusive")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_starting_points)

    root = groups.add_parser("root").add_subparsers(dest="cmd", required=True)
    rb = root.add_parser("build", help="approximate root and D series for a random admissible P")
    rb.add_argument("--case", choices=list(ar.CASES), required=True)
    rb.add_argument("--depth", type=int, default=11)
    rb.add_argument("--seed", type=int, default=None)
    rb.add_argument("--json")
    rb.set_defaults(func=cmd_root_build)

    elim = groups.add_parser("elim").add_subparsers(dest="cmd", required=True)
    er = elim.add_parser("run", help="generate and eliminate the coefficient system")
    er.add_argument("--case", choices=list(ar.CASES), required=True)
    er.add_argument("--trace")
    er.set_defaults(func=cmd_elim_run)

    case = groups.add_parser("case").add_subparsers(dest="cmd", required=True)
    cl = case.add_parser("list")
    cl.add_argument("--json", action="store_true")
    cl.set_defaults(func=cmd_case_list)
    cr = case.add_parser("run")
    cr.add_argument("id")
    cr.add_argument("--seed", type=int, default=None)
    cr.add_argument("--json")
    cr.add_argument("--svg")
    cr.set_defaults(func=cmd_case_run)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "seed", 0) is None:
        args.seed = cb.default_seed()
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
