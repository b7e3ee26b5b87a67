"""Command line front end.

Exit status: 0 success, 2 usage error, 3 request refused as too large,
4 any other domain error.  Output is deterministic; ``--timing`` is the only
way to get wall-clock figures into it.
"""

import argparse
import json
import re
import sys
from pathlib import Path

from . import census, elemsym, gfkit, symmetrization
from .errors import CacheCorrupt, NormcritError, RefusedTooLarge
from .ntheory import divisors

EXIT_OK, EXIT_USAGE, EXIT_REFUSED, EXIT_DOMAIN = 0, 2, 3, 4

# theta tables that `cache build` produces by default
CACHE_MAX_N = 6


def _dump_json(doc):
    return json.dumps(doc, sort_keys=True) + "\n"


def _emit_sparse(poly, args):
    return _dump_json(poly.to_json_dict()) if args.json else poly.to_text()


def _emit_epoly(h, m, args):
    return elemsym.dump_theta(h, m) if args.json else h.to_text()


def _cache_kw(args):
    return {"use_cache": not args.no_cache, "cache_dir": args.cache_dir}


def _field(args):
    if args.q is not None:
        if args.p is not None or args.k is not None:
            raise _Usage("give either --q or --p/--k, not both")
        return gfkit.field_of_order(args.q)
    if args.p is None:
        raise _Usage("a field is required: --q Q or --p P [--k K]")
    return gfkit.make_field(args.p, args.k or 1)


class _Usage(Exception):
    pass


# ---------------------------------------------------------------------------
# verbs


def cmd_psi(args):
    return _emit_sparse(symmetrization.psi(args.n), args)


def cmd_phi(args):
    return _emit_sparse(symmetrization.phi(args.n), args)


def cmd_theta(args):
    kw = _cache_kw(args)
    if args.char:
        h = elemsym.theta_mod_p(args.n, args.m, args.char, **kw)
    else:
        h = elemsym.theta_small(args.n, args.m, **kw)
    return _emit_epoly(h, args.m, args)


def cmd_h(args):
    return _emit_epoly(elemsym.h_char0(args.n, **_cache_kw(args)), None, args)


def cmd_hp(args):
    return _emit_epoly(elemsym.h_p(args.p, args.n, **_cache_kw(args)), None, args)


def cmd_check(args):
    F = _field(args)
    f = gfkit.parse_poly(args.poly, F)
    v = gfkit.check_criterion(f, args.variant, **_cache_kw(args))
    doc = dict(v.as_dict(), q=F.q, poly=str(f))
    if args.json:
        return _dump_json(doc)
    keys = ("poly", "q", "variant", "irreducible", "exact_normal", "criterion", "h_value")
    return "".join(f"{k}: {_plain(doc[k])}\n" for k in keys)


def _plain(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


def cmd_formula(args):
    N = census.count_normal_formula(args.q, args.n)
    return _dump_json({"q": args.q, "n": args.n, "N": N}) if args.json else f"{N}\n"


def cmd_census(args):
    row = census.census_exhaustive(
        args.q,
        args.n,
        mode=args.mode,
        budget=args.budget,
        workers=args.threads,
        checkpoint=args.checkpoint,
        **_cache_kw(args),
    )
    if args.json:
        return row.to_json(timing=args.timing) + "\n"
    out = census.format_table([row])
    out += "".join(f"{k}: {_plain(v)}\n" for k, v in row.as_dict(args.timing).items())
    return out


_CACHE_NAME = re.compile(r"^theta_n(\d+)_m(\d+)_c(\d+)\.json$")


def cmd_cache(args):
    kw = _cache_kw(args)
    root = Path(args.cache_dir or elemsym.default_cache_dir())
    if args.action == "path":
        return f"{root}\n"
    if args.no_cache:
        raise _Usage("`cache` cannot be combined with --no-cache")
    if args.action == "build":
        lines = []
        for n in range(1, args.max_n + 1):
            for m in divisors(n):
                if m >= 6:
                    continue
                h = elemsym.theta_small(n, m, **kw)
                lines.append(f"theta {n} {m}: {len(h)} terms -> {elemsym.cache_path(n, m, 0, root)}\n")
        return "".join(lines)
    # verify
    lines, bad = [], 0
    files = sorted(root.glob("theta_*.json")) if root.exists() else []
    for path in files:
        mt = _CACHE_NAME.match(path.name)
        try:
            if not mt:
                raise CacheCorrupt("unexpected file name")
            n, m, char = map(int, mt.groups())
            elemsym.load_theta(path.read_text(), n, m, char)
            lines.append(f"ok {path.name}\n")
        except CacheCorrupt as exc:
            bad += 1
            lines.append(f"corrupt {path.name}: {exc}\n")
    lines.append(f"{len(files) - bad} ok, {bad} corrupt\n")
    if bad:
        raise _Verified("".join(lines))
    return "".join(lines)


class _Verified(Exception):
    """Carries `cache verify` output when a file is corrupt (exit 4)."""


# ---------------------------------------------------------------------------
# parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of canonical text")
    common.add_argument("--cache-dir", default=None, help=f"theta table directory (default ${elemsym.CACHE_ENV})")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write theta tables on disk")
    common.add_argument("--threads", type=int, default=1, help="worker processes for the census")
    common.add_argument("--timing", action="store_true", help="include elapsed seconds in census output")

    ap = argparse.ArgumentParser(prog="normcrit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    verb("psi", cmd_psi, "print Psi_n").add_argument("n", type=int)
    verb("phi", cmd_phi, "print Phi_n (n <= 5)").add_argument("n", type=int)
    sp = verb("theta", cmd_theta, "print theta_{n,m} in s_1..s_n")
    sp.add_argument("n", type=int)
    sp.add_argument("m", type=int)
    sp.add_argument("--char", type=int, default=0, help="reduce modulo this prime")
    verb("h", cmd_h, "print h_n (n <= 5)").add_argument("n", type=int)
    sp = verb("hp", cmd_hp, "print h_{p,n}")
    sp.add_argument("p", type=int)
    sp.add_argument("n", type=int)

    def field_opts(sp):
        sp.add_argument("--q", type=int, help="field order (a prime power)")
        sp.add_argument("--p", type=int, help="field characteristic")
        sp.add_argument("--k", type=int, help="extension degree over F_p")

    sp = verb("check", cmd_check, "apply the coefficient criterion to a monic polynomial")
    sp.add_argument("poly", help="x^4+x^3+1 or a_1,...,a_n")
    field_opts(sp)
    sp.add_argument("--variant", choices=("char0", "pary"), default="pary")

    sp = verb("formula", cmd_formula, "closed-form count of normal polynomials")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = verb("census", cmd_census, "exhaustive count over all monic polynomials")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--mode", choices=census.MODES, default="both")
    sp.add_argument("--budget", type=int, default=census.DEFAULT_BUDGET)
    sp.add_argument("--checkpoint", default=None, help="JSON file for resumable progress")

    sp = verb("cache", cmd_cache, "manage the theta table cache")
    sp.add_argument("action", choices=("build", "verify", "path"))
    sp.add_argument("--max-n", type=int, default=CACHE_MAX_N)
    return ap


def run(argv=None, stdout=None, stderr=None):
    """Run one command; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if args.threads < 1:
        print("normcrit: --threads must be at least 1", file=stderr)
        return EXIT_USAGE
    try:
        stdout.write(args.func(args))
    except _Usage as exc:
        print(f"normcrit {args.verb}: {exc}", file=stderr)
        return EXIT_USAGE
    except _Verified as exc:
        stdout.write(str(exc))
        return EXIT_DOMAIN
    except RefusedTooLarge as exc:
        print(f"normcrit: refused: {exc}", file=stderr)
        return EXIT_REFUSED
    except (NormcritError, ValueError) as exc:
        code = getattr(exc, "code", "DOMAIN_ERROR")
        print(f"normcrit: {code}: {exc}", file=stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def main():
    sys.exit(run())
