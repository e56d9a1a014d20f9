"""
Command line interface.

Every command reads one algebra description (JSON), runs one family of
library operations and prints a JSON report on stdout.  Exit status: 0 when
every verdict passed, 1 when a mathematical verdict failed, 2 on bad input.
"""

import argparse
import json
import sys
import time

from frobspace import frobenius as fb
from frobspace import yang_baxter as yb
from frobspace.algebra import validate
from frobspace.errors import FrobspaceError, ParseError
from frobspace.files import (algebra_from_json, digest, matrix_from_json, matrix_json,
                             vector_json)
from frobspace.linalg import Matrix
from frobspace.rings import ZZ

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class Run:
    """Collects the report of one command."""

    def __init__(self, command, algebra, data):
        self.algebra = algebra
        self.report = {
            "command": command,
            "input_digest": digest(data),
            "scalars": algebra.ring.to_json(),
            "dim": algebra.n,
            "labels": list(algebra.labels),
        }
        self.verdicts = []

    def verdict(self, name, passed, value=None, certified=True, failure_bound=None):
        v = {"name": name, "passed": bool(passed),
             "tag": "Certified" if certified else "Probabilistic"}
        if value is not None:
            v["value"] = value
        if failure_bound is not None:
            v["failure_bound"] = str(failure_bound)
        self.verdicts.append(v)

    def from_report(self, rep, prefix=""):
        for c in rep.checks:
            self.verdict(prefix + c.name, c.passed, c.detail, c.certified)

    def finish(self):
        self.report["verdicts"] = self.verdicts
        return all(v["passed"] for v in self.verdicts)


def _parse_epsilon(a, text):
    try:
        parts = [a.ring.parse(x) for x in text.split(",")]
    except FrobspaceError as e:
        raise InputError("bad --epsilon: %s" % e) from None
    if len(parts) != a.n:
        raise InputError("--epsilon needs %d comma-separated scalars, got %d" % (a.n, len(parts)))
    return tuple(parts)


def _search(run, args):
    a = run.algebra
    if args.epsilon is not None:
        return fb.check_frobenius_form(a, _parse_epsilon(a, args.epsilon))
    if a.ring is ZZ:
        raise InputError("over Z a Frobenius form must be supplied with --epsilon")
    return fb.find_frobenius_form(a, trials=args.trials, seed=args.seed, height=args.height,
                                  deterministic=args.deterministic)


def _search_json(a, res):
    out = {"verdict": res.verdict, "tag": "Certified" if res.certified else "Probabilistic",
           "method": res.method, "trials": res.trials}
    if res.epsilon is not None:
        out["epsilon"] = vector_json(a.ring, res.epsilon)
    if res.determinant is not None:
        out["gram_determinant"] = a.ring.format(res.determinant)
    if res.failure_bound is not None:
        out["failure_bound"] = _bound(res)
        out["failure_bound_exact"] = str(res.failure_bound)
    return out


def _bound(res):
    if res.failure_bound is None:
        return None
    return res.bound_text or str(res.failure_bound)


def _frobenius_data_or_fail(run, args):
    res = _search(run, args)
    run.report["frobenius_form"] = _search_json(run.algebra, res)
    run.verdict("is_frobenius", res.is_frobenius, certified=res.certified,
                failure_bound=_bound(res))
    if not res.is_frobenius:
        return None
    return fb.frobenius_data(run.algebra, res.epsilon)


def cmd_validate(run, args):
    rep = validate(run.algebra)
    assoc = [list(c.detail) for c in rep.checks if c.name == "associativity"]
    unit = [list(c.detail) for c in rep.checks if c.name == "unit"]
    run.report["associativity_failures"] = assoc
    run.report["unit_failures"] = unit
    run.verdict("associative", not assoc)
    run.verdict("unital", not unit)


def cmd_central_basis(run, args):
    a = run.algebra
    space = fb.central_basis(a)
    key = "central_rank" if a.ring is ZZ else "frobdim"
    run.report[key] = space.rank
    run.report["generators"] = [matrix_json(q) for q in space.generators]
    if space.snf_diagonal is not None:
        run.report["elementary_divisors"] = [str(d) for d in space.snf_diagonal]
    run.verdict("generators_central", all(fb.is_central(a, q) for q in space.generators))
    if args.check_central:
        try:
            with open(args.check_central, "rb") as fh:
                prev = json.loads(fh.read().decode("utf-8"))
            tensors = [matrix_from_json(a.ring, t, a.n) for t in prev["generators"]]
        except (OSError, ValueError, KeyError, TypeError, FrobspaceError) as e:
            raise InputError("cannot read --check-central file: %s" % e) from None
        flags = [fb.is_central(a, q) for q in tensors]
        run.report["checked_tensors"] = len(flags)
        run.verdict("reingested_tensors_central", all(flags), {"per_tensor": flags})


def cmd_frobdim(run, args):
    a = run.algebra
    space = fb.central_basis(a)
    if a.ring is ZZ:
        run.report["central_rank"] = space.rank
        run.report["elementary_divisors"] = [str(d) for d in space.snf_diagonal]
    else:
        run.report["frobdim"] = space.rank
    run.verdict("frobdim_computed", True, space.rank)


def cmd_frobenius_check(run, args):
    res = _search(run, args)
    run.report["frobenius_form"] = _search_json(run.algebra, res)
    run.verdict("is_frobenius", res.is_frobenius, certified=res.certified,
                failure_bound=_bound(res))


def cmd_frobenius_data(run, args):
    a = run.algebra
    data = _frobenius_data_or_fail(run, args)
    if data is None:
        return
    ident = Matrix.identity(a.ring, a.n)
    run.report.update({
        "epsilon": vector_json(a.ring, data.epsilon),
        "gram": matrix_json(data.gram),
        "dual": matrix_json(data.dual),
        "q0": matrix_json(data.q0),
        "nakayama": matrix_json(data.nakayama),
        "symmetric": data.nakayama == ident,
    })
    run.verdict("counit", fb.counit_check(a, data.epsilon, data.q0))
    same = all(fb.coproduct_via_duality(a, data.epsilon, a.basis_element(i))
               == fb.coproduct_from_q(a, data.q0, a.basis_element(i)) for i in range(a.n))
    run.verdict("duality_route_agrees", same)


def cmd_theorem_a(run, args):
    data = _frobenius_data_or_fail(run, args)
    if data is None:
        return
    run.from_report(fb.verify_theorem_a(run.algebra, data))


def _chosen_tensors(run, args):
    a = run.algebra
    if args.epsilon is not None:
        data = fb.frobenius_data(a, _parse_epsilon(a, args.epsilon))
        return [("q0", data.q0)]
    gens = fb.central_basis(a).generators
    if not gens:
        return []
    if getattr(args, "all_generators", False):
        return [("generator_%d" % i, q) for i, q in enumerate(gens)]
    return [("generator_0", gens[0])]


def cmd_ybe(run, args):
    a = run.algebra
    chosen = _chosen_tensors(run, args)
    run.report["which"] = args.which
    run.report["checked"] = [name for name, _ in chosen]
    run.verdict("has_central_tensor", bool(chosen))
    for name, q in chosen:
        if args.which == "twist":
            run.verdict(name + ":qybe", yb.verify_qybe(yb.r_from_q_twist(a, q), a.n))
        else:
            r = yb.r_from_q_mult(a, q)
            run.verdict(name + ":eq2", yb.verify_eq2(r, a.n))
            run.verdict(name + ":right_module_map", yb.is_right_module_map(a, r))
        run.from_report(yb.verify_q_identities(a, q), name + ":")


def cmd_ar(run, args):
    a = run.algebra
    chosen = _chosen_tensors(run, args)
    run.verdict("has_central_tensor", bool(chosen))
    if not chosen:
        return
    name, q = chosen[0]
    r = yb.r_from_q_mult(a, q)
    ar = yb.ar_algebra(a, r)
    run.report.update({"tensor": name, "ar_dim": ar.dim,
                       "ar_basis": [matrix_json(f) for f in ar.basis]})
    run.verdict("contains_identity", ar.contains_identity)
    run.verdict("closed_under_composition", ar.closed)
    run.from_report(yb.check_monomorphism(a, r))
    if a.ring.is_field:
        run.verdict("R_in_AR_tensor_AR", yb.check_r_in_ar_tensor_ar(a, q, ar))


COMMANDS = {
    "validate": cmd_validate,
    "central-basis": cmd_central_basis,
    "frobdim": cmd_frobdim,
    "frobenius-check": cmd_frobenius_check,
    "frobenius-data": cmd_frobenius_data,
    "theorem-a": cmd_theorem_a,
    "ybe": cmd_ybe,
    "ar": cmd_ar,
}


def build_parser():
    p = argparse.ArgumentParser(prog="frobspace", description=__doc__.strip().splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("spec", help="algebra description (JSON)")
        s.add_argument("--format", choices=("json", "text"), default="json")
        if name in ("frobenius-check", "frobenius-data", "theorem-a"):
            s.add_argument("--trials", type=int, default=fb.DEFAULT_TRIALS)
            s.add_argument("--seed", type=lambda x: int(x, 0), default=fb.DEFAULT_SEED)
            s.add_argument("--height", type=int, default=fb.DEFAULT_HEIGHT)
            s.add_argument("--deterministic", action="store_true")
        if name in ("frobenius-check", "frobenius-data", "theorem-a", "ybe", "ar"):
            s.add_argument("--epsilon", help='trace form coefficients, e.g. "0,1"')
        if name == "ybe":
            s.add_argument("--which", choices=("mult", "twist"), default="twist")
            s.add_argument("--all-generators", action="store_true")
        if name == "central-basis":
            s.add_argument("--check-central", metavar="REPORT",
                           help="re-check the generators of an earlier central-basis report")
    return p


def _text(report):
    lines = ["%s: %s" % (report["command"], report.get("name", ""))]
    for k, v in report.items():
        if k in ("verdicts", "command", "name") or isinstance(v, (list, dict)):
            continue
        lines.append("  %s = %s" % (k, v))
    form = report.get("frobenius_form")
    if form:
        lines.append("  frobenius form: %s (%s, %s, %d trials)" % (
            form["verdict"], form["tag"], form["method"], form["trials"]))
    for v in report.get("verdicts", []):
        lines.append("  [%s] %s (%s)%s" % ("PASS" if v["passed"] else "FAIL", v["name"], v["tag"],
                                            " bound=%s" % v["failure_bound"]
                                            if "failure_bound" in v else ""))
    if "error" in report:
        lines.append("  error: %s" % report["error"]["message"])
    return "\n".join(lines)


def _emit(report, fmt, out):
    if fmt == "text":
        out.write(_text(report) + "\n")
    else:
        out.write(json.dumps(report, indent=2) + "\n")


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    report = {"command": args.command}
    code = EXIT_OK
    data = None
    try:
        try:
            with open(args.spec, "rb") as fh:
                data = fh.read()
            obj = json.loads(data.decode("utf-8"))
        except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
            raise ParseError("%s: %s" % (args.spec, e)) from None
        finally:
            if data is not None:
                report["input_digest"] = digest(data)
        algebra = algebra_from_json(obj, validate=args.command != "validate")
        run = Run(args.command, algebra, data)
        report = run.report
        report["name"] = algebra.name
        COMMANDS[args.command](run, args)
        code = EXIT_OK if run.finish() else EXIT_FAILED
    except (FrobspaceError, InputError) as e:
        report["error"] = {"type": type(e).__name__, "message": str(e)}
        failures = getattr(e, "failures", None)
        if failures:
            report["error"]["failures"] = [list(f) for f in failures]
        err.write("frobspace: %s: %s\n" % (type(e).__name__, e))
        code = EXIT_INPUT
    report["timing_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    _emit(report, args.format, out)
    return code


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
