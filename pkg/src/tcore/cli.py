"""
Command line interface.

Exit codes: 0 success, 1 verification mismatch, 2 usage or parse error.

Defaults can be set in a flat ``key = value`` file named by $TCORE_CONFIG
(or --config). Recognised keys: terms, oracle_cap, enumeration_cap, jobs,
cache (true/false), cache_path. Command line flags override the file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from fractions import Fraction

from . import cores, eta, formulas
from .cache import CoefficientCache

CONFIG_ENV = "TCORE_CONFIG"

DEFAULTS = {
    "terms": 500,
    "oracle_cap": 25,
    "enumeration_cap": cores.DEFAULT_ENUMERATION_CAP,
    "jobs": 1,
    "cache": False,
    "cache_path": None,
}

JSON_SAFE_INT = 2 ** 53 - 1


class UsageError(Exception):
    pass


def read_config(path):
    conf = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError("%s:%d: expected key = value" % (path, lineno))
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in DEFAULTS:
                raise UsageError("%s:%d: unknown key %r" % (path, lineno, key))
            if key == "cache":
                conf[key] = value.lower() in ("1", "true", "yes", "on")
            elif key == "cache_path":
                conf[key] = value
            else:
                try:
                    conf[key] = int(value)
                except ValueError:
                    raise UsageError("%s:%d: %s must be an integer" % (path, lineno, key))
    return conf


def resolve_settings(args):
    settings = dict(DEFAULTS)
    path = args.config or os.environ.get(CONFIG_ENV)
    if path:
        try:
            settings.update(read_config(path))
        except OSError as exc:
            raise UsageError("cannot read config %s: %s" % (path, exc))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    return settings


def json_int(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int) and abs(x) > JSON_SAFE_INT:
        return str(x)
    return x


def _open_cache(settings):
    if not settings["cache"]:
        return None
    return CoefficientCache(settings["cache_path"])


def _close_cache(cache):
    if cache is not None:
        cache.save()


def _registry(args):
    if getattr(args, "registry", None):
        try:
            return formulas.load_registry(args.registry)
        except (OSError, ValueError, TypeError, KeyError) as exc:
            raise UsageError("bad registry file %s: %s" % (args.registry, exc))
    return formulas.REGISTRY


def _values(t, k, n_lo, n_hi, method, settings, cache, registry=formulas.REGISTRY):
    """Columns {method: [value for n in range]} for the requested methods."""
    if t < 2 or k < 1:
        raise UsageError("need t >= 2 and k >= 1")
    methods = ("formula", "series", "oracle") if method == "all" else (method,)
    cols = {}
    if "formula" in methods:
        spec = formulas.find_spec(t, k, registry)
        if spec is None:
            known = ", ".join(s.id for s in registry)
            raise UsageError("no closed formula for t=%d, k=%d (known: %s)" % (t, k, known))
        cusp = None
        if spec.cusp:
            cusp = formulas.cusp_coefficients(spec.cusp, spec.exponent(n_hi), cache)
        col = []
        for n in range(n_lo, n_hi + 1):
            try:
                col.append(formulas.closed_form(spec, n, cusp))
            except formulas.NonIntegralResult as exc:
                col.append(exc.value)
        cols["formula"] = col
    if "series" in methods:
        s = eta.phi_power(t, k, n_hi, cache=cache)
        cols["series"] = list(s.coeffs[n_lo:])
    if "oracle" in methods:
        cap = settings["enumeration_cap"]
        if n_hi > cap:
            raise UsageError("oracle enumeration is capped at n = %d (asked for %d)" % (cap, n_hi))
        cols["oracle"] = cores.tuple_counts(n_hi, t, k, cap)[n_lo:]
    return cols


def cmd_compute(args, settings):
    if args.n < 0:
        raise UsageError("n must be non-negative")
    cache = _open_cache(settings)
    cols = _values(args.t, args.k, args.n, args.n, args.method, settings, cache)
    _close_cache(cache)
    vals = {m: c[0] for m, c in cols.items()}
    distinct = set(vals.values())
    if len(distinct) == 1:
        print(distinct.pop())
        return 0
    print(" ".join("%s=%s" % kv for kv in vals.items()))
    return 1


def _verify_one(job):
    spec, terms, oracle_cap, enum_cap, cache_path, use_cache = job
    cache = CoefficientCache(cache_path) if use_cache else None
    report = formulas.verify(spec, terms, oracle_cap, cache=cache, enumeration_cap=enum_cap)
    return report, cache


def report_json(report):
    d = asdict(report)
    d["ok"] = report.ok
    d["sturm_covered"] = report.sturm_covered
    d["elapsed"] = round(report.elapsed, 4)
    if report.first_mismatch is not None:
        d["first_mismatch"] = {k: json_int(v) for k, v in d["first_mismatch"].items()}
    return json.dumps(d)


def cmd_verify(args, settings):
    registry = _registry(args)
    if args.theorem == "all":
        specs = list(registry)
    else:
        try:
            specs = [formulas.get_spec(args.theorem, registry)]
        except formulas.UnknownTheorem:
            known = ", ".join(s.id for s in registry)
            raise UsageError("unknown theorem %r (known: %s, all)" % (args.theorem, known))
    if settings["terms"] < 1:
        raise UsageError("--terms must be at least 1")
    if settings["oracle_cap"] > settings["enumeration_cap"]:
        raise UsageError("--oracle-cap %d exceeds the enumeration cap %d"
                         % (settings["oracle_cap"], settings["enumeration_cap"]))
    jobs = [
        (s, settings["terms"], settings["oracle_cap"], settings["enumeration_cap"],
         settings["cache_path"], settings["cache"])
        for s in specs
    ]
    if settings["jobs"] > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(settings["jobs"]) as pool:
            results = list(pool.map(_verify_one, jobs))
    else:
        results = [_verify_one(j) for j in jobs]
    status = 0
    for report, cache in results:
        print(report_json(report))
        _close_cache(cache)
        if not report.ok:
            status = 1
    return status


def cmd_expand(args, settings):
    try:
        q = eta.parse(args.spec)
    except eta.EtaParseError as exc:
        raise UsageError(str(exc))
    if args.terms < 0:
        raise UsageError("--terms must be non-negative")
    cache = _open_cache(settings)
    try:
        s = eta.expand(q, args.terms, full=False if args.euler else None, cache=cache)
    finally:
        _close_cache(cache)
    p = q.prefactor24
    if args.euler or p % 24 or p < 0:
        print("# %s = q^(%d/24) * sum below" % (q.canonical(), p), file=sys.stderr)
    for n, c in enumerate(s.coeffs):
        if c or args.dense:
            print("%d:%d" % (n, c))
    return 0


def parse_range(text):
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError("range must look like START..END, got %r" % text)
    if lo < 0 or lo > hi:
        raise UsageError("invalid range %d..%d" % (lo, hi))
    return lo, hi


def cmd_table(args, settings):
    lo, hi = parse_range(args.range)
    cache = _open_cache(settings)
    cols = _values(args.t, args.k, lo, hi, args.method, settings, cache)
    _close_cache(cache)
    rows = []
    for i, n in enumerate(range(lo, hi + 1)):
        row = {"n": n}
        for m in ("formula", "series", "oracle"):
            row[m] = cols[m][i] if m in cols else None
        rows.append(row)
    if args.format == "json":
        recs = [{"n": r["n"], **{m: json_int(r[m]) for m in cols}} for r in rows]
        text = json.dumps(recs, indent=1) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "formula", "series", "oracle"])
        for r in rows:
            w.writerow([r["n"]] + ["" if r[m] is None else str(r[m])
                                   for m in ("formula", "series", "oracle")])
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    status = 0
    if args.method == "all":
        for r in rows:
            if not r["formula"] == r["series"] == r["oracle"]:
                status = 1
    return status


def cmd_sturm(args, settings):
    if args.theorem:
        try:
            spec = formulas.get_spec(args.theorem, _registry(args))
        except formulas.UnknownTheorem:
            raise UsageError("unknown theorem %r" % args.theorem)
        level, weight = spec.level, spec.weight
    else:
        if args.level is None or args.weight is None:
            raise UsageError("give a theorem id or both --level and --weight")
        level, weight = args.level, args.weight
    if level < 1 or weight < 1:
        raise UsageError("level and weight must be positive")
    print(formulas.sturm_bound(level, weight))
    return 0


def cmd_cache(args, settings):
    cache = CoefficientCache(settings["cache_path"])
    if args.action == "clear":
        cache.clear()
        print("cleared %s" % cache.path)
    elif args.action == "path":
        print(cache.path)
    else:
        print(json.dumps({
            "path": str(cache.path),
            "entries": {k: s.order for k, s in sorted(cache.entries.items())},
        }, indent=1))
    return 0


def cmd_registry(args, settings):
    registry = _registry(args)
    if args.format == "json":
        sys.stdout.write(formulas.dump_registry(registry))
    else:
        for s in registry:
            print("%-4s %s   [level %d, weight %d, cusp %s]"
                  % (s.id, s.describe(), s.level, s.weight, s.cusp or "-"))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="tcore", description=__doc__.split("\n\n")[0].strip())
    p.add_argument("--config", help="key=value defaults file (else $%s)" % CONFIG_ENV)
    sub = p.add_subparsers(dest="command", required=True)

    def cache_flags(sp):
        sp.add_argument("--cache", action="store_const", const=True, default=None,
                        help="read and write the coefficient cache")
        sp.add_argument("--cache-path", dest="cache_path")

    def tk(sp):
        sp.add_argument("--t", type=int, required=True)
        sp.add_argument("--k", type=int, default=1)

    sp = sub.add_parser("compute", help="print A_{t,k}(n)")
    tk(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--method", choices=("formula", "series", "oracle", "all"), default="series")
    sp.add_argument("--enumeration-cap", dest="enumeration_cap", type=int)
    cache_flags(sp)
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("verify", help="check closed formulas against series and oracle")
    sp.add_argument("theorem", help="theorem id such as 3,4, or 'all'")
    sp.add_argument("--terms", type=int)
    sp.add_argument("--oracle-cap", dest="oracle_cap", type=int)
    sp.add_argument("--enumeration-cap", dest="enumeration_cap", type=int)
    sp.add_argument("--jobs", type=int)
    sp.add_argument("--registry", help="JSON registry to use instead of the bundled one")
    cache_flags(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("expand", help="expand an eta quotient")
    sp.add_argument("spec", help="e.g. 'eta(1)^6*eta(3)^6' or 'eta(4)^4/eta(1)'")
    sp.add_argument("--terms", type=int, default=20, help="expand through q^TERMS")
    sp.add_argument("--dense", action="store_true", help="also print zero coefficients")
    sp.add_argument("--euler", action="store_true", help="drop the q^(P/24) prefactor")
    cache_flags(sp)
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("table", help="tabulate A_{t,k}(n) over a range")
    tk(sp)
    sp.add_argument("--range", required=True, help="START..END, inclusive")
    sp.add_argument("--method", choices=("formula", "series", "oracle", "all"), default="series")
    sp.add_argument("--format", choices=("json", "csv"), default="csv")
    sp.add_argument("--output", "-o")
    sp.add_argument("--enumeration-cap", dest="enumeration_cap", type=int)
    cache_flags(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("sturm", help="Sturm bound for a level and weight")
    sp.add_argument("theorem", nargs="?")
    sp.add_argument("--level", type=int)
    sp.add_argument("--weight", type=int)
    sp.add_argument("--registry")
    sp.set_defaults(func=cmd_sturm)

    sp = sub.add_parser("cache", help="inspect or clear the coefficient cache")
    sp.add_argument("action", choices=("info", "clear", "path"), nargs="?", default="info")
    sp.add_argument("--cache-path", dest="cache_path")
    sp.set_defaults(func=cmd_cache)

    sp = sub.add_parser("registry", help="print the theorem registry")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--registry")
    sp.set_defaults(func=cmd_registry)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = resolve_settings(args)
        return args.func(args, settings)
    except UsageError as exc:
        print("tcore: error: %s" % exc, file=sys.stderr)
        return 2
    except cores.BudgetExceeded as exc:
        print("tcore: error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
