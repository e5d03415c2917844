"""Command-line entry point.

Exit codes: 0 for pass or computed, 1 when a check fails, 2 for usage errors.
With ``--json`` standard output is a single JSON document; timings are
written to standard error so the document is byte-stable.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import time
from pathlib import Path

from . import __version__
from .acceptance import acceptance_suite
from .algebra import (
    AlgebraElement,
    is_presentation_ok,
    verify_presentation,
    walled_basis,
    walled_closure,
)
from .coeffs import delta_monomial
from .diagrams import compose, count_diagrams, enumerate_diagrams, format_diagram, parse_diagram
from .errors import CycloBrauerError
from .groups import GroupSpec, group_context, measure_deltas
from .schur_weyl import (
    commutant_check,
    decompose_sp,
    ktype_report,
    phi_faithful,
    so_dimension_identity,
    verify_phi,
)

CACHE_ENV = "CYCLOBRAUER_CACHE_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --------------------------------------------------------------------------
# cache


class ResultCache:
    """JSON files keyed by (family, parameters, k, version) with a checksum."""

    def __init__(self, root):
        self.root = Path(root) if root else None

    @staticmethod
    def _digest(payload):
        return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()

    def _path(self, key):
        name = hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()[:32]
        return self.root / ("%s.json" % name)

    def get(self, key):
        if self.root is None:
            return None
        path = self._path(key)
        try:
            doc = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        if not isinstance(doc, dict) or doc.get("key") != key:
            return None
        payload = doc.get("payload")
        if doc.get("checksum") != self._digest(payload):
            return None
        return payload

    def put(self, key, payload):
        if self.root is None:
            return
        self.root.mkdir(parents=True, exist_ok=True)
        doc = {"key": key, "payload": payload, "checksum": self._digest(payload)}
        tmp = self._path(key).with_suffix(".tmp")
        tmp.write_text(json.dumps(doc, sort_keys=True))
        os.replace(tmp, self._path(key))

    def fetch(self, key, compute):
        hit = self.get(key)
        if hit is not None:
            return hit, True
        payload = compute()
        self.put(key, payload)
        return payload, False


# --------------------------------------------------------------------------
# parser


def _int(name, lo=0):
    def conv(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError("%s must be an integer" % name) from None
        if v < lo:
            raise argparse.ArgumentTypeError("%s must be >= %d" % (name, lo))
        return v
    return conv


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON document")
    common.add_argument("--cache-dir", default=None,
                        help="result cache directory (default: $%s, else no cache)" % CACHE_ENV)

    p = _Parser(prog="cyclobrauer", description="Exact cyclotomic Brauer algebra computations.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="area", required=True)

    dia = sub.add_parser("diagrams", help="diagram combinatorics").add_subparsers(
        dest="verb", required=True)
    for verb in ("count", "enumerate"):
        q = dia.add_parser(verb, parents=[common])
        q.add_argument("--k", type=_int("k"), required=True)
        q.add_argument("--m", type=_int("m", 1), default=1)
    q = dia.add_parser("compose", parents=[common], help="stack TOP over BOTTOM")
    q.add_argument("top")
    q.add_argument("bottom")
    q.add_argument("--m", type=_int("m", 1), default=1)
    q.add_argument("--k", type=_int("k"), default=None)

    alg = sub.add_parser("algebra", help="algebra elements and relations").add_subparsers(
        dest="verb", required=True)
    q = alg.add_parser("verify", parents=[common])
    q.add_argument("--k", type=_int("k"), required=True)
    q.add_argument("--m", type=_int("m", 1), default=2)
    q = alg.add_parser("mul", parents=[common], help="multiply two diagrams")
    q.add_argument("left")
    q.add_argument("right")
    q.add_argument("--m", type=_int("m", 1), default=1)
    q.add_argument("--k", type=_int("k"), default=None)
    q = alg.add_parser("walled", parents=[common])
    q.add_argument("--s", type=_int("s"), required=True)
    q.add_argument("--t", type=_int("t"), required=True)

    rep = sub.add_parser("rep", help="Schur-Weyl checks").add_subparsers(dest="verb", required=True)
    for verb in ("context", "deltas", "phi-rank", "commutant", "decompose", "ktypes", "identity"):
        q = rep.add_parser(verb, parents=[common])
        q.add_argument("--group", choices=("sp", "so"), default=None)
        q.add_argument("--n", type=_int("n", 1), default=None)
        q.add_argument("--p", type=_int("p", 1), default=None)
        q.add_argument("--q", type=_int("q"), default=None)
        q.add_argument("--k", type=_int("k"), default=None)

    acc = sub.add_parser("accept", parents=[common], help="run the acceptance table")
    acc.add_argument("profile", nargs="?", choices=("small", "full"), default=None)
    acc.add_argument("--profile", dest="profile_flag", choices=("small", "full"), default=None)
    return p


# --------------------------------------------------------------------------
# commands


def _spec(args):
    if args.group == "sp":
        if args.n is None:
            raise UsageError("--group sp needs --n")
        return GroupSpec.sp(args.n)
    if args.group == "so":
        if args.p is None or args.q is None:
            raise UsageError("--group so needs --p and --q")
        return GroupSpec.so(args.p, args.q)
    raise UsageError("--group is required")


def _need_k(args):
    if args.k is None:
        raise UsageError("--k is required")
    return args.k


def _report(args, status, payload):
    return {"command": _echo(args), "status": status, "payload": payload}


def _echo(args):
    out = {}
    for key, val in sorted(vars(args).items()):
        if key in ("json", "cache_dir", "profile_flag") or val is None:
            continue
        out[key] = val
    return out


def _fail_report(args, payload, first):
    payload = dict(payload)
    payload["first_failure"] = first
    return _report(args, "fail", payload)


def cmd_diagrams(args, cache):
    if args.verb == "count":
        return _report(args, "computed", {"count": count_diagrams(args.k, args.m)})
    if args.verb == "enumerate":
        ds = enumerate_diagrams(args.k, args.m)
        return _report(args, "computed", {"count": len(ds),
                                          "diagrams": [format_diagram(d) for d in ds]})
    a = parse_diagram(args.top, m=args.m, k=args.k)
    b = parse_diagram(args.bottom, m=args.m, k=args.k)
    loops, d = compose(a, b)
    return _report(args, "computed", {"loops": sorted(loops),
                                      "coefficient": str(delta_monomial(loops, args.m)),
                                      "diagram": format_diagram(d)})


def _relation_rows(reports):
    return [{"relation_id": r.relation_id, "instances": r.instances_checked,
             "failures": len(r.failures), "informational": r.informational,
             "passed": r.passed} for r in reports]


def cmd_algebra(args, cache):
    if args.verb == "verify":
        reports = verify_presentation(args.k, args.m)
        payload = {"k": args.k, "m": args.m, "relations": _relation_rows(reports)}
        if is_presentation_ok(reports):
            return _report(args, "pass", payload)
        first = next(r.relation_id for r in reports if not r.passed and not r.informational)
        return _fail_report(args, payload, first)
    if args.verb == "mul":
        a = parse_diagram(args.left, m=args.m, k=args.k)
        b = parse_diagram(args.right, m=args.m, k=args.k)
        x = AlgebraElement.from_diagram(a) * AlgebraElement.from_diagram(b)
        return _report(args, "computed", {"product": x.to_json()})
    basis = walled_basis(args.s, args.t)
    exp = math.factorial(args.s + args.t)
    closed = walled_closure(args.s, args.t)
    payload = {"count": len(basis), "expected": exp, "closed": closed,
               "diagrams": [format_diagram(d) for d in basis]}
    if len(basis) == exp and closed:
        return _report(args, "pass", payload)
    return _fail_report(args, payload, "count" if len(basis) != exp else "closure")


def _rep_payload(args):
    spec = _spec(args) if args.verb not in ("identity", "decompose") else None
    if args.verb == "context":
        ctx = group_context(spec)
        return "computed", {"group": spec.label(), "dim_v": ctx.dim_v, "rank": spec.rank,
                            "lie_basis_size": len(ctx.lie_basis),
                            "component_reps": len(ctx.component_reps),
                            "xi": ctx.xi.to_json(), "form": ctx.form.to_json(),
                            "invariants": "verified"}
    if args.verb == "deltas":
        ctx = group_context(spec)
        d0, d1 = measure_deltas(ctx)
        s0, s1 = spec.stated_deltas()
        payload = {"group": spec.label(),
                   "measured": {"delta0": d0.to_pair()[0], "delta1": d1.to_pair()[0]},
                   "stated": {"delta0": str(s0), "delta1": str(s1)}}
        if args.k is None:
            return "computed", payload
        if args.k < 2:
            raise UsageError("relation checks need --k >= 2")
        reports = verify_phi(ctx, args.k)
        payload["relations"] = _relation_rows(reports)
        bad = [r.relation_id for r in reports if not r.passed and not r.informational]
        if bad:
            payload["first_failure"] = bad[0]
            return "fail", payload
        return "pass", payload
    if args.verb == "identity":
        res = so_dimension_identity(_need_k(args))
        return ("pass" if res["equal"] else "fail"), res
    if args.verb == "decompose":
        if args.group not in (None, "sp"):
            raise UsageError("decompose is defined for --group sp only")
        if args.n is None:
            raise UsageError("decompose needs --n")
        rep = decompose_sp(args.n, _need_k(args))
        ok = rep.off_block_zero and rep.cross_check["agree"]
        return ("pass" if ok else "fail"), rep.to_json()
    k = _need_k(args)
    ctx = group_context(spec)
    if args.verb == "phi-rank":
        res = phi_faithful(ctx, k)
        return "computed", dict(res, group=spec.label(), k=k)
    if args.verb == "commutant":
        res = commutant_check(ctx, k)
        status = "pass" if res["equal"] else "fail"
        if status == "fail":
            res["first_failure"] = "image_in_commutant" if not res["image_in_commutant"] else "dimension"
        return status, dict(res, group=spec.label(), k=k)
    res = ktype_report(ctx, k)
    return "computed", dict(res, group=spec.label(), k=k)


def cmd_rep(args, cache):
    key = {"verb": args.verb, "group": args.group, "n": args.n, "p": args.p, "q": args.q,
           "k": args.k, "version": __version__}
    (status, payload), _ = cache.fetch(key, lambda: list(_rep_payload(args)))
    return _report(args, status, payload)


def cmd_accept(args, cache, timings):
    profile = args.profile or args.profile_flag or "small"
    key = {"verb": "accept", "profile": profile, "version": __version__}
    hit = cache.get(key)
    if hit is not None:
        res = hit
    else:
        res = acceptance_suite(profile, timings)
        cache.put(key, res)
    return {"command": {"area": "accept", "profile": profile}, "status": res["status"],
            "payload": res}


# --------------------------------------------------------------------------
# output


def _human(report):
    lines = []
    payload = report["payload"]
    lines.append("status: %s" % report["status"])
    if "rows" in payload:
        for row in payload["rows"]:
            lines.append("criterion %2d  %-32s %s" % (row["id"], row["name"], row["status"].upper()))
            for c in row["checks"]:
                if c["status"] != "pass":
                    lines.append("      fail: %s" % c["name"])
        return "\n".join(lines)
    if "relations" in payload:
        for r in payload["relations"]:
            mark = "ok" if r["passed"] else ("info" if r["informational"] else "FAIL")
            lines.append("  %-22s %6d instances  %s" % (r["relation_id"], r["instances"], mark))
        payload = {k: v for k, v in payload.items() if k != "relations"}
    for key, val in payload.items():
        if isinstance(val, list) and val and isinstance(val[0], str):
            lines.append("%s:" % key)
            lines.extend("  " + v for v in val)
        elif isinstance(val, (dict, list)):
            lines.append("%s: %s" % (key, json.dumps(val, sort_keys=True)))
        else:
            lines.append("%s: %s" % (key, val))
    return "\n".join(lines)


EXIT = {"pass": 0, "computed": 0, "fail": 1}


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print("usage error: %s" % exc, file=stderr)
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    cache = ResultCache(args.cache_dir or os.environ.get(CACHE_ENV))
    timings = {}
    start = time.perf_counter()
    try:
        if args.area == "diagrams":
            report = cmd_diagrams(args, cache)
        elif args.area == "algebra":
            report = cmd_algebra(args, cache)
        elif args.area == "rep":
            report = cmd_rep(args, cache)
        else:
            report = cmd_accept(args, cache, timings)
    except UsageError as exc:
        print("usage error: %s" % exc, file=stderr)
        return 2
    except CycloBrauerError as exc:
        print("input error: %s: %s" % (type(exc).__name__, exc), file=stderr)
        return 2
    elapsed_ms = round((time.perf_counter() - start) * 1000)
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2), file=stdout)
        print("timing_ms: %d" % elapsed_ms, file=stderr)
    else:
        print(_human(report), file=stdout)
        print("timing_ms: %d" % elapsed_ms, file=stdout)
        for cid, secs in sorted(timings.items()):
            print("  criterion %d: %.2f s" % (cid, secs), file=stdout)
    return EXIT[report["status"]]


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
