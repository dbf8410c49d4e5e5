"""Command line driver.

Commands: count, welschinger, trees, disks, scatter, potential,
phi-check, degenerate, render.  Seeds default to $TROPENUM_SEED, then 0.
Exit codes: 0 ok, 1 usage or IO error, 2 genericity exhaustion,
3 invariant violation (a failed consistency or correspondence check).
"""

import argparse
import json
import os
import sys

from fractions import Fraction

from . import jsonio, svgout
from .broken import potential as eval_potential
from .broken import sample_endpoint
from .correspondence import (build_decomposition, build_phi, fan_over,
                             index_d, log_count_w, properties_report,
                             rescale_lattice)
from .enumeration import (MAX_ATTEMPTS, enumerate_maslov0_trees,
                          enumerate_maslov2_disks, run_count,
                          sample_generic_points)
from .fan import builtin_fan, make_degree, make_fan
from .scattering import build_diagram, check_consistency
from .tropcurve import GenericityError, InvariantError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_GENERIC = 2
EXIT_INVARIANT = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; the contract reserves 2 for
    # genericity failures
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit2(message)


class SystemExit2(Exception):
    def __init__(self, message):
        self.message = message


def load_fan(spec):
    """A builtin fan name, or a path to JSON {"name": ..., "rays": [[x,y]]}."""
    if os.path.exists(spec) and spec not in ("p2", "p1xp1", "dp6"):
        with open(spec) as fh:
            doc = json.load(fh)
        rays = [tuple(r) for r in doc["rays"]]
        return make_fan(rays, name=doc.get("name", "custom"))
    return builtin_fan(spec)


def parse_degree(fan, text):
    if text == "anticanonical":
        return make_degree(fan, (1,) * fan.nrays())
    if "," in text:
        return make_degree(fan, tuple(int(c) for c in text.split(",")))
    d = int(text)
    return make_degree(fan, (d,) * fan.nrays())


def parse_qpoint(text):
    x, _, y = text.partition(",")
    return (Fraction(x), Fraction(y))


def default_seed():
    env = os.environ.get("TROPENUM_SEED")
    return int(env) if env else 0


def write_out(args, text):
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config_with_diagram(fan, k, seed):
    """Sample a configuration whose tree enumeration succeeds."""
    last = None
    for attempt in range(MAX_ATTEMPTS):
        config = sample_generic_points(k, seed, attempt=attempt)
        try:
            records = enumerate_maslov0_trees(fan, config, as_curves=False)
            return config, records, build_diagram(fan, config)
        except GenericityError as e:
            last = e
    raise GenericityError("no generic configuration for seed %d after %d "
                          "attempts (last: %s)" % (seed, MAX_ATTEMPTS, last))


def cmd_count(args, report_key):
    fan = load_fan(args.fan)
    deg = parse_degree(fan, args.degree)
    report = run_count(fan, deg, args.seed, jobs=args.jobs)
    doc = jsonio.count_doc(report)
    write_out(args, jsonio.dumps(doc))
    print("%s = %d  (fan %s, degree %s, seed %d)"
          % (report_key, doc[report_key], fan.name,
             "+".join(str(d) for d in deg), args.seed), file=sys.stderr)
    return EXIT_OK


def cmd_trees(args):
    fan = load_fan(args.fan)
    config, records, _ = _config_with_diagram(fan, args.k, args.seed)
    write_out(args, jsonio.dumps(jsonio.trees_doc(fan, config, records)))
    return EXIT_OK


def cmd_disks(args):
    fan = load_fan(args.fan)
    config, _, diagram = _config_with_diagram(fan, args.k, args.seed)
    Q = parse_qpoint(args.q) if args.q else sample_endpoint(args.seed + 1)
    records = enumerate_maslov2_disks(fan, config, Q, as_curves=False)
    write_out(args, jsonio.dumps(jsonio.disks_doc(fan, config, Q, records)))
    return EXIT_OK


def cmd_scatter(args):
    fan = load_fan(args.fan)
    config, _, diagram = _config_with_diagram(fan, args.k, args.seed)
    report = check_consistency(diagram)
    doc = jsonio.diagram_doc(fan, config, diagram, report)
    write_out(args, jsonio.dumps(doc))
    bad = len(report.failures())
    print("scattering diagram: %d walls, %d singular points, %s"
          % (len(diagram.walls), len(report.rows),
             "consistent" if report.ok else "%d failures" % bad),
          file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_INVARIANT


def cmd_potential(args):
    fan = load_fan(args.fan)
    config, _, diagram = _config_with_diagram(fan, args.k, args.seed)
    Q = parse_qpoint(args.q) if args.q else sample_endpoint(args.seed + 1)
    report = check_consistency(diagram)
    W = eval_potential(diagram, fan, Q)
    doc = jsonio.potential_doc(fan, config, diagram, report, W)
    write_out(args, jsonio.dumps(doc))
    print("W = %s" % doc["pretty"], file=sys.stderr)
    return EXIT_OK


def cmd_phi_check(args):
    fan = load_fan(args.fan)
    deg = parse_degree(fan, args.degree)
    report = run_count(fan, deg, args.seed, jobs=args.jobs)
    rows = []
    for c, m in zip(report.curves, report.mults):
        sysm = build_phi(c)
        r, cols = sysm.shape()
        rows.append((r, cols, index_d(sysm), log_count_w(c), m))
    doc = jsonio.phicheck_doc(report, rows)
    write_out(args, jsonio.dumps(doc))
    n = len(rows)
    good = sum(1 for s in doc["solutions"] if s["match"])
    print("index * log count == multiplicity on %d/%d solutions"
          % (good, n), file=sys.stderr)
    return EXIT_OK if doc["all_match"] else EXIT_INVARIANT


def cmd_degenerate(args):
    fan = load_fan(args.fan)
    deg = parse_degree(fan, args.degree)
    report = run_count(fan, deg, args.seed, jobs=args.jobs)
    pd = build_decomposition(report.curves, fan, report.config.points)
    props = properties_report(pd, report.curves, fan)
    if args.rescale:
        pd, _ = rescale_lattice(pd)
    fan3 = fan_over(pd, fan)
    doc = jsonio.decomposition_doc(fan, report, pd, props, fan3)
    write_out(args, jsonio.dumps(doc))
    ok = all(doc["properties"].values())
    print("decomposition: %d cells, properties %s"
          % (doc["faces"], "all hold" if ok else "FAILED"), file=sys.stderr)
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_render(args):
    try:
        with open(args.input) as fh:
            doc = jsonio.load_any(fh.read())
        svg = svgout.render_doc(doc)
    except (OSError, ValueError, InvariantError) as e:
        print("cannot render %s: %s" % (args.input, e), file=sys.stderr)
        return EXIT_USAGE
    with open(args.output, "w") as fh:
        fh.write(svg)
    print("wrote %s" % args.output, file=sys.stderr)
    return EXIT_OK


def build_parser():
    top = _Parser(prog="tropenum", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, q=False, degree=False, k=False):
        p.add_argument("--fan", default="p2",
                       help="builtin fan name (p2, p1xp1, dp6) or JSON path")
        p.add_argument("--seed", type=int, default=default_seed())
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--out", default="-", help="output path, - = stdout")
        if degree:
            p.add_argument("--degree", required=True,
                           help="d, d0,d1,..., or 'anticanonical'")
        if k:
            p.add_argument("--k", type=int, default=1,
                           help="number of marked points")
        if q:
            p.add_argument("--q", default=None,
                           help="endpoint as x,y rationals "
                                "(default: sampled from seed+1)")

    common(sub.add_parser("count", help="count rational curves"),
           degree=True)
    common(sub.add_parser("welschinger",
                          help="count with Welschinger signs"), degree=True)
    common(sub.add_parser("trees", help="Maslov index 0 trees"), k=True)
    common(sub.add_parser("disks", help="Maslov index 2 disks"),
           q=True, k=True)
    common(sub.add_parser("scatter",
                          help="scattering diagram + consistency"), k=True)
    common(sub.add_parser("potential", help="superpotential at Q"),
           q=True, k=True)
    common(sub.add_parser("phi-check",
                          help="lattice index times log count vs "
                               "multiplicity"), degree=True)
    deg = sub.add_parser("degenerate",
                         help="polyhedral decomposition and its cone")
    common(deg, degree=True)
    deg.add_argument("--rescale", action="store_true",
                     help="clear denominators before building the cone")
    ren = sub.add_parser("render", help="JSON document to SVG")
    ren.add_argument("input")
    ren.add_argument("output")
    return top


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit2 as e:
        print("error: %s" % e.message, file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "count":
            return cmd_count(args, "n_trop")
        if args.command == "welschinger":
            return cmd_count(args, "w_trop")
        if args.command == "trees":
            return cmd_trees(args)
        if args.command == "disks":
            return cmd_disks(args)
        if args.command == "scatter":
            return cmd_scatter(args)
        if args.command == "potential":
            return cmd_potential(args)
        if args.command == "phi-check":
            return cmd_phi_check(args)
        if args.command == "degenerate":
            return cmd_degenerate(args)
        if args.command == "render":
            return cmd_render(args)
        raise InvariantError("unhandled command %r" % (args.command,))
    except GenericityError as e:
        print("genericity failure: %s" % e, file=sys.stderr)
        return EXIT_GENERIC
    except InvariantError as e:
        print("invariant violated: %s" % e, file=sys.stderr)
        return EXIT_INVARIANT
    except (OSError, ValueError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
