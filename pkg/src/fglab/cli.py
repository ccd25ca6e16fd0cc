"""Command-line front end.

Every command prints (or writes to ``--out``) a JSON report with the inputs,
the library version, the truncation, a verdict and the result.  Exit codes:
0 pass, 2 certificate or failed verification, 1 malformed input or error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .cobordism import (
    ProjProductRing,
    pullback_diagonal,
    pullback_point,
    pullback_projection,
    pullback_segre,
    pushforward_projbundle,
)
from .errors import FglabError, InexactDivision
from .fgl import (
    FormalGroupLaw,
    adams_morphism,
    add_morphisms,
    check_fgl,
    compose_morphisms,
    logarithm,
    morphism_check,
    n_series,
    reparametrize,
)
from .lazard import LazardCtx, build_ctx
from .scalars import QQ, ZZ, ModP
from .serialize import (
    dumps,
    element_from_json,
    element_to_json,
    law_by_name,
    morphism_from_json,
    morphism_to_json,
)
from .series import TruncSeries

PASS, CERT, ERROR = 0, 2, 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(ERROR)


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# input helpers


def _read_json(path: str):
    if path == "-":
        obj = json.load(sys.stdin)
    else:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    if isinstance(obj, dict) and "result" in obj and "command" in obj:
        obj = obj["result"]
    return obj


def _read_as(path: str, key: str):
    """Read a JSON object, unwrapping a report result that nests it under ``key``."""
    obj = _read_json(path)
    if isinstance(obj, dict) and isinstance(obj.get(key), dict):
        obj = obj[key]
    return obj


def _ring_arg(s: str | None) -> dict:
    if s is None or s in ("Z", "ZZ"):
        return ZZ.descriptor()
    if s in ("Q", "QQ"):
        return QQ.descriptor()
    if s.startswith("Z/"):
        return ModP(int(s[2:])).descriptor()
    raise InputError(f"unknown ring {s!r} (use Z, Q or Z/p)")


def _ints(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError as err:
        raise InputError(f"expected comma-separated integers, got {s!r}") from err


def _ctx_path(N: int) -> Path | None:
    d = os.environ.get("FGLAB_CTX_CACHE")
    if not d:
        return None
    return Path(d) / f"ctx-{N}.json"


def get_ctx(args, need: int | None = None) -> LazardCtx:
    if getattr(args, "ctx", None):
        ctx = LazardCtx.from_json(_read_json(args.ctx))
        if need is not None and ctx.trunc < need:
            raise InputError(f"context has truncation {ctx.trunc}, {need} needed")
        args._trunc = ctx.trunc
        return ctx
    N = args.trunc if args.trunc is not None else (need if need is not None else 4)
    path = _ctx_path(N)
    if path is not None and path.exists():
        ctx = LazardCtx.from_json(_read_json(str(path)))
        args._trunc = ctx.trunc
        return ctx
    ctx = build_ctx(N)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dumps(ctx.to_json()), encoding="utf-8")
    args._trunc = ctx.trunc
    return ctx


def _law(args) -> FormalGroupLaw:
    if getattr(args, "fgl", None):
        F = FormalGroupLaw.from_json(_read_as(args.fgl, "fgl"))
    elif (getattr(args, "law", None) or "universal") == "universal":
        F = get_ctx(args).F_U
    else:
        F = law_by_name(args.law, _ring_arg(getattr(args, "ring", None)), _trunc_of(args))
    args._trunc = F.trunc
    return F


def _trunc_of(args, default=4) -> int:
    return args.trunc if args.trunc is not None else default


# ---------------------------------------------------------------------------
# commands; each returns (verdict, result)


def cmd_lazard_build(args):
    ctx = get_ctx(args)
    return "pass", ctx.to_json()


def cmd_fgl_check(args):
    F = _law(args)
    chk = check_fgl(F)
    res = {"ok": chk.ok, "axiom": chk.axiom, "monomial": None if chk.monomial is None else list(chk.monomial),
           "fgl": F.to_json()}
    return ("pass" if chk.ok else "fail"), res


def cmd_fgl_nseries(args):
    F = _law(args)
    return "pass", {"n": args.n, "series": n_series(F, args.n).to_json(), "text": str(n_series(F, args.n))}


def cmd_fgl_log(args):
    F = _law(args)
    lg = logarithm(F)
    return "pass", {"series": lg.to_json(), "text": str(lg)}


def cmd_fgl_reparam(args):
    F = _law(args)
    g = TruncSeries.from_json(_read_as(args.gamma, "series"))
    G = reparametrize(F, g.change_ring(F.ring) if g.ring != F.ring else g)
    return "pass", {"fgl": G.to_json(), "text": str(G)}


def cmd_morphism_adams(args):
    F = _law(args)
    return "pass", morphism_to_json(adams_morphism(F, args.k))


def cmd_morphism_check(args):
    m = morphism_from_json(_read_json(args.morphism))
    chk = morphism_check(m)
    return ("pass" if chk.ok else "fail"), {"ok": chk.ok, "monomial": None if chk.monomial is None else list(chk.monomial)}


def cmd_morphism_compose(args):
    h = morphism_from_json(_read_json(args.h))
    g = morphism_from_json(_read_json(args.g))
    return "pass", morphism_to_json(compose_morphisms(h, g))


def cmd_morphism_add(args):
    g = morphism_from_json(_read_json(args.g))
    h = morphism_from_json(_read_json(args.h))
    return "pass", morphism_to_json(add_morphisms(g, h))


def cmd_cob_push(args):
    F = _law(args)
    raw = _read_json(args.bundle)
    raw = raw["roots"] if isinstance(raw, dict) else raw
    roots = [TruncSeries.from_json(r) for r in raw]
    roots = [r.change_ring(F.ring) if r.ring != F.ring else r for r in roots]
    f = None
    if args.f:
        f = TruncSeries.from_json(_read_as(args.f, "series"))
        f = f.change_ring(F.ring) if f.ring != F.ring else f
    res = pushforward_projbundle(F, f, roots)
    return "pass", {"series": res.to_json(), "text": str(res)}


def cmd_cob_pull(args):
    e = element_from_json(_read_as(args.element, "element"))
    idx = _ints(args.factors) if args.factors else []
    kind = args.kind
    if kind == "segre":
        if len(idx) != 1:
            raise InputError("segre needs one factor index")
        bounds = tuple(_ints(args.bounds)) if args.bounds else None
        out = pullback_segre(e, idx[0], bounds)
    elif kind == "diag":
        if len(idx) != 2:
            raise InputError("diag needs two factor indices")
        out = pullback_diagonal(e, idx[0], idx[1])
    elif kind == "proj":
        out = pullback_projection(e, idx[0] if idx else e.ring.rank, _ints(args.bounds)[0] if args.bounds else None)
    elif kind == "point":
        if len(idx) != 1:
            raise InputError("point needs one factor index")
        out = pullback_point(e, idx[0])
    else:
        raise InputError(f"unknown pull-back {kind!r}")
    return "pass", {"element": element_to_json(out), "text": str(out)}


def _point_space(ctx, rbar):
    bounds = []
    for i, r in enumerate(rbar, start=1):
        bounds += [i + 1] * r
    R = ProjProductRing.make(ctx.F_U, bounds)
    x = R.one()
    for k in range(R.rank):
        x = x * R.z(k)
    return R, x


def cmd_op_ln(args):
    from .operations import ln_component, multi_indices, rbar_weight

    rbar = tuple(_ints(args.r_bar))
    deg = rbar_weight(rbar)
    ctx = get_ctx(args, need=max(deg, 1))
    if args.element:
        e = element_from_json(_read_as(args.element, "element"), ctx.F_U)
        out = ln_component(ctx, rbar, e)
        return "pass", {"element": element_to_json(out), "text": str(out)}
    R, x = _point_space(ctx, rbar)
    top = R.element({R.bounds: 1})
    comps = []
    ok = True
    for s in multi_indices(ctx.trunc, deg):
        val = ln_component(ctx, s, x)
        s_trim = tuple(s[: max((i + 1 for i, c in enumerate(s) if c), default=0)])
        want_top = s_trim == rbar
        good = (val == top) if want_top else val.is_zero()
        ok = ok and good
        comps.append({"s": list(s_trim), "value": str(val), "expected": "point" if want_top else "0", "ok": good})
    return ("pass" if ok else "fail"), {"space": list(R.bounds), "components": comps}


def cmd_op_adams(args):
    from .operations import adams

    if args.trunc is None:
        args.trunc = 6
    trunc = args.trunc
    if args.law is None and not args.fgl:
        args.law = "multiplicative"
    F = _law(args)
    if args.element:
        e = element_from_json(_read_as(args.element, "element"), F)
    else:
        e = ProjProductRing.make(F, [None], trunc=trunc).z(0)
    out = adams(F, args.k, e)
    return "pass", {"k": args.k, "element": element_to_json(out), "text": str(out)}


def _reps(args, p):
    return tuple(_ints(args.reps)) if args.reps else None


def cmd_op_steenrod(args):
    from .operations import chp_gamma, chp_specialize, steenrod_gamma, steenrod_st

    ctx = get_ctx(args)
    reps = _reps(args, args.p)
    if args.element:
        e = element_from_json(_read_as(args.element, "element"), ctx.F_U)
        st = steenrod_st(ctx, args.p, reps, e)
        return "pass", {"st": st.to_json(), "text": str(st)}
    g = steenrod_gamma(ctx, args.p, reps)
    spec = chp_specialize(g, args.p)
    ok = spec == chp_gamma(args.p)
    return ("pass" if ok else "fail"), {"gamma": g.to_json(), "text": str(g), "chp": str(spec),
                                        "congruence": ok}


def _basis_elements(ctx, nmax):
    for n in range(nmax + 1):
        R = ProjProductRing.make(ctx.F_U, [n])
        for w in range(ctx.trunc + 1):
            for k, a in enumerate(ctx.basis(w)):
                for i in range(n + 1):
                    yield (n, w, k, i), R.element({(i,): a})


def cmd_op_symmetric(args):
    from .operations import symmetric_phi

    ctx = get_ctx(args)
    reps = _reps(args, args.p)
    if args.element:
        e = element_from_json(_read_as(args.element, "element"), ctx.F_U)
        try:
            ph = symmetric_phi(ctx, args.p, reps, e)
        except InexactDivision as err:
            return "certificate", {"error": str(err)}
        return "pass", {"phi": ph.to_json(), "text": str(ph)}
    count = 0
    for label, e in _basis_elements(ctx, args.nmax):
        try:
            symmetric_phi(ctx, args.p, reps, e)
        except InexactDivision as err:
            return "certificate", {"element": list(label), "error": str(err), "checked": count}
        count += 1
    return "pass", {"checked": count, "nmax": args.nmax}


def cmd_op_sq(args):
    from .operations import sq_agrees_with_st, tom_dieck_sq

    ctx = get_ctx(args)
    reps = _reps(args, args.p)
    items = ([("element", element_from_json(_read_as(args.element, "element"), ctx.F_U))] if args.element
             else list(_basis_elements(ctx, args.nmax)))
    count = 0
    for label, e in items:
        sq = tom_dieck_sq(ctx, args.p, reps, e)
        if not sq.integral or not sq_agrees_with_st(ctx, args.p, reps, e):
            return "certificate", {"element": label if isinstance(label, str) else list(label), "sq": sq.to_json()}
        count += 1
        last = sq
    res = {"checked": count}
    if args.element:
        res["sq"] = last.to_json()
        res["text"] = str(last)
    return "pass", res


def cmd_op_classify(args):
    from .operations import PsiFunctional, integrality_classify

    need = max(args.degmax, args.n + args.degmax - args.m)
    ctx = get_ctx(args, need=need)
    psi = PsiFunctional.from_json(ctx, _read_json(args.psi))
    res = integrality_classify(ctx, psi, args.n, args.m, args.rmax, args.degmax, jobs=args.jobs)
    return ("pass" if res.ok else "certificate"), res.to_json()


def cmd_op_validate_gl(args):
    from .operations import GlFamily, gl_validate

    obj = _read_json(args.family)
    ctx = get_ctx(args) if obj.get("kind") == "lazard" else None
    fam = GlFamily.from_json(obj, ctx)
    args._trunc = fam.trunc
    v = gl_validate(fam)
    return ("pass" if v.ok else "fail"), v.to_json()


# ---------------------------------------------------------------------------
# parser


def _common(p):
    p.add_argument("--trunc", type=int, default=None, help="truncation degree")
    p.add_argument("--ctx", default=None, help="Lazard context JSON")
    p.add_argument("--jobs", type=int, default=1, help="worker count (results do not depend on it)")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")


def _law_opts(p):
    p.add_argument("--fgl", default=None, help="formal group law JSON")
    p.add_argument("--law", default=None, choices=["universal", "additive", "multiplicative"])
    p.add_argument("--ring", default=None, help="Z, Q or Z/p for named laws")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="fglab", description="Formal group laws and cobordism operations.")
    top.add_argument("--version", action="version", version=__version__)
    groups = top.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def leaf(sub, name, func, law=False):
        p = sub.add_parser(name)
        _common(p)
        if law:
            _law_opts(p)
        p.set_defaults(func=func)
        return p

    g = groups.add_parser("lazard").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    leaf(g, "build", cmd_lazard_build)

    g = groups.add_parser("fgl").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    leaf(g, "check", cmd_fgl_check, law=True)
    p = leaf(g, "nseries", cmd_fgl_nseries, law=True)
    p.add_argument("--n", type=int, required=True)
    leaf(g, "log", cmd_fgl_log, law=True)
    p = leaf(g, "reparam", cmd_fgl_reparam, law=True)
    p.add_argument("--gamma", required=True)

    g = groups.add_parser("morphism").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = leaf(g, "adams", cmd_morphism_adams, law=True)
    p.add_argument("--k", type=int, required=True)
    p = leaf(g, "check", cmd_morphism_check)
    p.add_argument("--morphism", required=True)
    p = leaf(g, "compose", cmd_morphism_compose)
    p.add_argument("--h", required=True)
    p.add_argument("--g", required=True)
    p = leaf(g, "add", cmd_morphism_add)
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)

    g = groups.add_parser("cob").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = leaf(g, "push", cmd_cob_push, law=True)
    p.add_argument("--bundle", required=True)
    p.add_argument("--f", default=None)
    p = leaf(g, "pull", cmd_cob_pull)
    p.add_argument("--kind", required=True, choices=["segre", "diag", "proj", "point"])
    p.add_argument("--element", required=True)
    p.add_argument("--factors", default=None)
    p.add_argument("--bounds", default=None)

    g = groups.add_parser("op").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = leaf(g, "ln", cmd_op_ln)
    p.add_argument("--r-bar", required=True)
    p.add_argument("--element", default=None)
    p = leaf(g, "adams", cmd_op_adams, law=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--element", default=None)
    for name, func in (("steenrod", cmd_op_steenrod), ("symmetric", cmd_op_symmetric), ("sq", cmd_op_sq)):
        p = leaf(g, name, func)
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--reps", default=None)
        p.add_argument("--element", default=None)
        if name != "steenrod":
            p.add_argument("--nmax", type=int, default=3)
    p = leaf(g, "classify", cmd_op_classify)
    p.add_argument("--psi", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--rmax", type=int, required=True)
    p.add_argument("--degmax", type=int, required=True)
    p = leaf(g, "validate-gl", cmd_op_validate_gl)
    p.add_argument("--family", required=True)
    return top


def _echo(args) -> dict:
    skip = {"func", "out", "group", "cmd", "jobs"}
    return {k: v for k, v in sorted(vars(args).items())
            if k not in skip and not k.startswith("_") and v is not None}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.trunc is not None and args.trunc < 0:
        parser.error("--trunc must be >= 0")
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    try:
        verdict, result = args.func(args)
    except (FglabError, InputError, ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as err:
        print(f"fglab: {type(err).__name__}: {err}", file=sys.stderr)
        return ERROR
    report = {
        "command": f"{args.group} {args.cmd}",
        "inputs": _echo(args),
        "version": __version__,
        "trunc": getattr(args, "_trunc", args.trunc),
        "verdict": verdict,
        "result": result,
    }
    text = dumps(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return PASS if verdict == "pass" else CERT


def main(argv=None) -> None:
    raise SystemExit(run(argv))


if __name__ == "__main__":
    main()
