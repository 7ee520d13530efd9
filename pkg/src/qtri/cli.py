"""Command-line front end.

Matrices and vectors are accepted inline (JSON, or comma-separated for
vectors) or as a path to a file holding the same text.  Vertex labels on the
command line are 1-based.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .qlaurent import ONE, in_vZv
from .qtorus import to_json as torus_to_json
from .qtorus import torus_bar
from .seedkit import (
    WVector,
    bipartite_parts,
    mutate_sequence,
    principal_seed,
    split_w,
    w_of_a,
)
from .stratdata import (
    chi_M,
    dim_F,
    dim_Ftilde,
    f_bound,
    is_l_dominant,
    is_nonempty_F,
    nonempty_vs,
    poincare_F,
    support_rows,
    vbar,
)
from .tribasis import (
    ReductionError,
    e_star,
    e_star_closed_form,
    e_star_full_reduction,
    e_star_reduce,
    seed_independence_check,
    triangular_basis,
    verify_theorem1,
    xtprime_expansion_check,
)


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input parsing


def _text(arg: str) -> str:
    p = Path(arg)
    if len(arg) < 4096 and p.is_file():
        return p.read_text()
    return arg


def parse_matrix(arg: str) -> list:
    raw = _text(arg).strip()
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"--B is not valid JSON: {exc.msg}") from None
    if isinstance(obj, dict):
        if "B" not in obj:
            raise InputError('matrix file needs a "B" field')
        obj = obj["B"]
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise InputError("--B must be a list of rows")
    try:
        return [[int(x) for x in r] for r in obj]
    except (TypeError, ValueError):
        raise InputError("--B entries must be integers") from None


def parse_vector(arg: str, name: str) -> list:
    raw = _text(arg).strip()
    if raw.startswith("["):
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InputError(f"--{name} is not valid JSON: {exc.msg}") from None
    else:
        obj = [x for x in raw.replace(" ", "").split(",") if x != ""]
    try:
        return [int(x) for x in obj]
    except (TypeError, ValueError):
        raise InputError(f"--{name} entries must be integers") from None


def parse_w(arg: str, n: int) -> WVector:
    """Either [[w_1, w'_1], ...] or the flat list w_1, w'_1, w_2, w'_2, ..."""
    raw = _text(arg).strip()
    if raw.startswith("[["):
        try:
            pairs = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InputError(f"--w is not valid JSON: {exc.msg}") from None
    else:
        flat = parse_vector(arg, "w")
        if len(flat) % 2:
            raise InputError("--w needs an even number of entries (w_i, w'_i pairs)")
        pairs = [flat[i : i + 2] for i in range(0, len(flat), 2)]
    if len(pairs) != n:
        raise InputError(f"--w has {len(pairs)} pairs, expected {n}")
    return WVector.from_pairs(pairs)


def _seed_and_quiver(args):
    if args.B is None:
        raise InputError("--B is required")
    B = parse_matrix(args.B)
    q = bipartite_parts(B)
    return principal_seed(B), q


def _need(args, name):
    if getattr(args, name) is None:
        raise InputError(f"--{name} is required for '{args.command}'")
    return getattr(args, name)


def _a_vector(args, s) -> tuple:
    a = parse_vector(_need(args, "a"), "a")
    if len(a) == s.n:
        a = a + [0] * s.n
    if len(a) != s.m:
        raise InputError(f"--a must have {s.n} or {s.m} entries, got {len(a)}")
    return tuple(a)


def _v_vector(args, n) -> tuple:
    v = parse_vector(_need(args, "v"), "v")
    if len(v) != n:
        raise InputError(f"--v must have {n} entries, got {len(v)}")
    return tuple(v)


# ---------------------------------------------------------------------------
# output


def _coeff_str(c) -> str:
    return c.to_str().replace(" ", "")


def _torus_tsv(f) -> str:
    return "".join("\t".join(str(x) for x in e) + "\t" + _coeff_str(c) + "\n" for e, c in f.items())


def _emit(args, obj=None, tsv: str | None = None):
    if args.format == "tsv" and tsv is not None:
        text = tsv
    else:
        text = json.dumps(obj, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_basis(args) -> int:
    s, q = _seed_and_quiver(args)
    C = triangular_basis(s, q, _a_vector(args, s))
    _emit(args, C.to_json(), _torus_tsv(C.torus_form))
    return 0


def cmd_support(args) -> int:
    s, q = _seed_and_quiver(args)
    a = _a_vector(args, s)
    C = triangular_basis(s, q, a)
    rows = support_rows(q, a, set(C.ev_table), margin=args.margin)
    head = "\t".join([f"v{i + 1}" for i in range(s.n)] + ["f", "in_region", "in_support"]) + "\n"
    body = "".join(
        "\t".join([str(x) for x in v] + [str(f), str(int(r)), str(int(sp))]) + "\n" for v, f, r, sp in rows
    )
    obj = [{"v": list(v), "f": f, "in_region": r, "in_support": sp} for v, f, r, sp in rows]
    _emit(args, obj, head + body)
    return 0


def cmd_chi_m(args) -> int:
    s, q = _seed_and_quiver(args)
    f = chi_M(q, s, parse_w(_need(args, "w"), s.n))
    _emit(args, torus_to_json(f), _torus_tsv(f))
    return 0


def cmd_e_star(args) -> int:
    s, q = _seed_and_quiver(args)
    w = parse_w(_need(args, "w"), s.n)
    frozen = tuple(parse_vector(args.frozen, "frozen")) if args.frozen else (0,) * s.n
    if len(frozen) != s.n:
        raise InputError(f"--frozen must have {s.n} entries")
    f = e_star(s, q, w, frozen)
    _emit(args, torus_to_json(f), _torus_tsv(f))
    return 0


def cmd_mutate(args) -> int:
    s, _ = _seed_and_quiver(args)
    ks = parse_vector(args.k, "k") if args.k else []
    for k in ks:
        if not 1 <= k <= s.n:
            raise InputError(f"mutation index {k} out of range 1..{s.n}")
    t = mutate_sequence(s, [k - 1 for k in ks])
    tsv = "# lambda\n" + "".join("\t".join(map(str, r)) + "\n" for r in t.lam.rows)
    tsv += "# btilde\n" + "".join("\t".join(map(str, r)) + "\n" for r in t.btilde)
    _emit(args, t.to_json(), tsv)
    return 0


def cmd_dims(args) -> int:
    s, q = _seed_and_quiver(args)
    v = _v_vector(args, s.n)
    if args.w is not None:
        w = parse_w(args.w, s.n)
        a = None
    else:
        a = _a_vector(args, s)
        w = w_of_a(q, a)
    out = {
        "v": list(v),
        "w": [list(p) for p in w.pairs()],
        "nonempty": is_nonempty_F(q, v, w),
        "l_dominant": is_l_dominant(q, v, w),
        "vbar": list(vbar(q, v, w)),
    }
    if out["nonempty"]:
        out["d"] = dim_F(q, v, w)
        out["dtilde"] = dim_Ftilde(q, v, w)
        out["poincare"] = poincare_F(q, v, w).to_json()
    if a is not None:
        out["f"] = f_bound(q, a, v)
    tsv = "".join(f"{k}\t{json.dumps(x)}\n" for k, x in out.items())
    _emit(args, out, tsv)
    return 0


def _random_bipartite(rng: random.Random, nmax: int, bmax: int) -> list:
    n = rng.randint(1, nmax)
    sources = {i for i in range(n) if rng.random() < 0.5}
    B = [[0] * n for _ in range(n)]
    for b in sorted(sources):
        for a in range(n):
            if a not in sources:
                c = rng.randint(0, bmax)
                B[a][b], B[b][a] = c, -c
    return B


def _check_instance(job) -> dict:
    """Bounds check plus seed independence for one (B, a)."""
    B, a = job
    s, q = principal_seed(B), bipartite_parts(B)
    C = triangular_basis(s, q, a)
    rep = verify_theorem1(s, q, a, C)
    w = w_of_a(q, a)
    f_ok = all(
        f_bound(q, a, v) == 2 * dim_F(q, v, w) - dim_Ftilde(q, v, w) for v in nonempty_vs(q, w)
    )
    indep = seed_independence_check(s, q, a, C)
    return {
        "B": B,
        "a": list(a),
        "terms": len(C.torus_form),
        "bounds": rep.passed,
        "f_identity": f_ok,
        "seed_independent": indep,
        "flags": [list(k) for k in C.flags],
        "failures": [list(e.v) for e in rep.failures()],
        "passed": rep.passed and f_ok and indep,
    }


def _identity_suite(B, rng: random.Random, count: int, wmax: int) -> dict:
    s, q = principal_seed(B), bipartite_parts(B)
    n = s.n
    res = {"keystone": True, "reduction": True, "xtprime": True, "cluster_variables": True}
    for _ in range(count):
        w = WVector(tuple(rng.randint(0, wmax) for _ in range(n)), tuple(rng.randint(0, wmax) for _ in range(n)))
        E = e_star(s, q, w)
        if not (E == e_star_closed_form(s, q, w) == torus_bar(chi_M(q, s, w))):
            res["keystone"] = False
        if any(min(x, y) > 0 for x, y in zip(w.w, w.wp)):
            st = e_star_reduce(s, q, w)
            rec = e_star(s, q, st[0].w, st[0].frozen) + e_star(s, q, st[1].w, st[1].frozen).scale_by(
                ONE.shift(st[1].power)
            )
            red = e_star_full_reduction(s, q, w)
            top = tuple(y - x for x, y in zip(w.w, w.wp)) + (0,) * n
            if rec != E or st[1].power < 1 or red.get(top) != ONE:
                res["reduction"] = False
            if not all(in_vZv(c) for k, c in red.items() if k != top):
                res["reduction"] = False
        _, pw = split_w(w)
        u = tuple(rng.randint(0, wmax) if i in q.sources else rng.randint(-wmax, wmax) for i in range(n))
        u += tuple(rng.randint(-wmax, wmax) for _ in range(n))
        if not xtprime_expansion_check(s, q, u):
            res["xtprime"] = False
    from .tribasis import x_prime

    for k in range(n):
        ek = tuple(-1 if i == k else 0 for i in range(2 * n))
        if triangular_basis(s, q, ek, index="std").torus_form != x_prime(s, k):
            res["cluster_variables"] = False
    res["passed"] = all(res.values())
    return res


def _run_jobs(fn, jobs: list, workers: int) -> list:
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, jobs))


def cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    if args.B is not None:
        s, q = _seed_and_quiver(args)
        B = [list(r) for r in s.B]
        if args.a is not None:
            instances = [(B, _a_vector(args, s))]
        else:
            amax = args.sweep_amax
            instances = [
                (B, tuple(rng.randint(-amax, amax) for _ in range(2 * s.n))) for _ in range(args.sweep_n)
            ]
        quivers = [B]
    else:
        instances = []
        for _ in range(args.sweep_n):
            B = _random_bipartite(rng, args.sweep_nmax, args.sweep_bmax)
            n = len(B)
            instances.append((B, tuple(rng.randint(-args.sweep_amax, args.sweep_amax) for _ in range(2 * n))))
        quivers = []
        for B, _ in instances:
            if B not in quivers:
                quivers.append(B)
    checks = _run_jobs(_check_instance, instances, args.jobs)
    identities = []
    if args.identities:
        for B in quivers[: args.identity_quivers]:
            r = _identity_suite(B, rng, args.identity_count, 3)
            identities.append({"B": B, **r})
    passed = all(c["passed"] for c in checks) and all(r["passed"] for r in identities)
    report = {"seed": args.seed, "instances": checks, "identities": identities, "passed": passed}
    if args.a is not None and args.B is not None:
        s, q = _seed_and_quiver(args)
        report["bounds"] = verify_theorem1(s, q, _a_vector(args, s)).to_json()
    tsv = "B\ta\tterms\tbounds\tf_identity\tseed_independent\tpassed\n" + "".join(
        f"{json.dumps(c['B'])}\t{','.join(map(str, c['a']))}\t{c['terms']}\t{int(c['bounds'])}\t"
        f"{int(c['f_identity'])}\t{int(c['seed_independent'])}\t{int(c['passed'])}\n"
        for c in checks
    )
    _emit(args, report, tsv)
    return 0 if passed else 1


COMMANDS = {
    "basis": cmd_basis,
    "support": cmd_support,
    "chi-m": cmd_chi_m,
    "e-star": cmd_e_star,
    "verify": cmd_verify,
    "mutate": cmd_mutate,
    "dims": cmd_dims,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--B", help="exchange matrix: JSON rows, {\"B\": ...}, or a file holding either")
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--out", help="write output to this file instead of stdout")

    p = argparse.ArgumentParser(prog="qtri", description="Triangular bases of acyclic quantum cluster algebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("basis", parents=[common], help="compute C_a")
    sp.add_argument("--a", help="g-vector, length n or 2n")

    sp = sub.add_parser("support", parents=[common], help="f(v) and support data on the region plus a margin")
    sp.add_argument("--a")
    sp.add_argument("--margin", type=int, default=1)

    sp = sub.add_parser("chi-m", parents=[common], help="the series χ(M(w))")
    sp.add_argument("--w", help="pairs w_i,w'_i flattened, or [[w,w'],...]")

    sp = sub.add_parser("e-star", parents=[common], help="the ordered product E*_{w,frozen}")
    sp.add_argument("--w")
    sp.add_argument("--frozen", help="frozen exponents, length n (default 0)")

    sp = sub.add_parser("verify", parents=[common], help="bounds checks and identity suites; exit 0 iff all pass")
    sp.add_argument("--a")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--sweep-n", type=int, default=20, help="number of random instances")
    sp.add_argument("--sweep-nmax", type=int, default=3, help="largest rank for random B")
    sp.add_argument("--sweep-bmax", type=int, default=3)
    sp.add_argument("--sweep-amax", type=int, default=3)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--identity-count", type=int, default=10)
    sp.add_argument("--identity-quivers", type=int, default=3)
    sp.add_argument("--no-identities", dest="identities", action="store_false")

    sp = sub.add_parser("mutate", parents=[common], help="mutate the principal seed")
    sp.add_argument("--k", help="1-based mutation sequence, e.g. 1,2,1")

    sp = sub.add_parser("dims", parents=[common], help="nonemptiness, dimensions and Poincaré polynomial at (v, w)")
    sp.add_argument("--v")
    sp.add_argument("--w")
    sp.add_argument("--a", help="use w = w(a) and also report f(v)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify" and args.jobs < 1:
        args.jobs = os.cpu_count() or 1
    try:
        return COMMANDS[args.command](args)
    except (InputError, ValueError, IndexError) as exc:
        print(f"qtri {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except ReductionError as exc:
        print(f"qtri {args.command}: reduction failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
