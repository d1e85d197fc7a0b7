"""Command line driver: print root data and run verification suites from spec files.

    lgk datum --type B --rank 2 [--adjoint] [--dual]
    lgk verify --spec spec.json [--seed 7] [--out report.json] [--timings]
    lgk suites

Exit codes: 0 all checks pass, 1 some check fails, 2 invalid input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterator

import jsonschema

from . import __version__
from .check import Check
from .errors import InvalidType, LgkError, SpecError, WitnessNotFound
from .rootdatum import ADJOINT, SC, BasedRootDatum, build_from_type, diagram_automorphisms, dual, pinned_automorphism
from .torus import CoeffGroup, KElem, TwistedTorusDatum, trivial_twist

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

SUITES = (
    "splcng",
    "chiinv",
    "tits-welldef",
    "inverse-section",
    "chevalley",
    "fixedgroup",
    "orbit-minus-one",
    "fourier",
    "whittaker-shift",
    "contragredient-shift",
    "coinvariants",
)

_INT_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}

SPEC_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["suites"],
    "properties": {
        "group": {
            "type": "object",
            "additionalProperties": False,
            "required": ["type"],
            "properties": {
                "type": {"type": "string", "minLength": 1},
                "rank": {"type": "integer", "minimum": 1},
                "isogeny": {"type": "string", "enum": ["sc", "adjoint", "simply-connected", "ad"]},
            },
        },
        "theta": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "gamma": {
            "type": "object",
            "additionalProperties": False,
            "required": ["order"],
            "properties": {
                "order": {"type": "integer", "minimum": 1},
                "unit": {"type": "integer"},
                "weylImages": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                "latticeMatrices": {"type": "array", "items": _INT_MATRIX},
            },
        },
        "coeff": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "N": {"type": "integer", "minimum": 2},
                "symbols": {"type": "array", "items": {"type": "string"}},
                "symbolMap": {"type": "object"},
            },
        },
        "data": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "random": {"type": "boolean"},
                "seed": {"type": "integer", "minimum": 0},
                "adata": {"type": "object"},
                "scaling": {"type": "object"},
                "chidata": {"type": "object"},
            },
        },
        "lattice": {
            "type": "object",
            "additionalProperties": False,
            "required": ["matrices", "orders"],
            "properties": {
                "matrices": {"type": "array", "items": _INT_MATRIX},
                "orders": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                "m": {"type": "integer", "minimum": 1},
            },
        },
        "packet": {
            "type": "object",
            "additionalProperties": False,
            "required": ["factors"],
            "properties": {"factors": {"type": "array", "items": {"type": "integer", "minimum": 1}}},
        },
        "suites": {"type": "array", "minItems": 1, "items": {"type": "string", "enum": list(SUITES)}},
        "bounds": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "weylCap": {"type": "integer", "minimum": 1},
                "searchDepth": {"type": "integer", "minimum": 0},
                "count": {"type": "integer", "minimum": 1},
                "orderBound": {"type": "integer", "minimum": 1},
            },
        },
    },
}


# -- spec handling ------------------------------------------------------------------


def load_spec(path: str | Path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise SpecError(f"cannot read {path}: {e}") from None
    try:
        if path.suffix.lower() == ".toml":
            spec = tomllib.loads(text)
        else:
            spec = json.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as e:
        raise SpecError(f"cannot parse {path}: {e}") from None
    validate_spec(spec)
    return spec


def validate_spec(spec: dict) -> None:
    try:
        jsonschema.validate(spec, SPEC_SCHEMA)
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise SpecError(f"{where}: {e.message}") from None


def spec_hash(spec: dict) -> str:
    canon = json.dumps(spec, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


@dataclass
class Context:
    spec: dict
    seed: int
    datum: BasedRootDatum | None = None
    theta: object = None
    torus: TwistedTorusDatum | None = None
    bounds: dict = field(default_factory=dict)

    def count(self, default: int) -> int:
        return int(self.bounds.get("count", default))


def build_context(spec: dict, seed: int | None) -> Context:
    data = spec.get("data", {})
    seed = seed if seed is not None else int(data.get("seed", 0))
    ctx = Context(spec, seed, bounds=spec.get("bounds", {}))
    g = spec.get("group")
    if g is None:
        return ctx
    try:
        ctx.datum = build_from_type(g["type"], g.get("isogeny", SC), g.get("rank"))
    except InvalidType as e:
        raise SpecError(f"group: {e}") from None
    d = ctx.datum
    if "theta" in spec:
        perm = [i - 1 for i in spec["theta"]]
        try:
            ctx.theta = pinned_automorphism(d, perm)
        except (LgkError, ValueError, IndexError) as e:
            raise SpecError(f"theta: {e}") from None
    ctx.torus = _build_torus(spec, d, ctx.theta)
    return ctx


def _build_torus(spec: dict, d: BasedRootDatum, theta) -> TwistedTorusDatum | None:
    from .lattice import mat_mul
    from .splitinv import coeff_group_for
    from .weyl import from_char_matrix, from_word

    gamma = spec.get("gamma")
    co = spec.get("coeff", {})
    N = int(co.get("N", 24))
    if gamma is None:
        return trivial_twist(d, CoeffGroup(N, tuple(co.get("symbols", ()))))
    m = gamma["order"]
    unit = gamma.get("unit", 1)
    try:
        if "symbols" in co or "symbolMap" in co:
            smap = tuple(sorted((s, (t, int(k))) for s, (t, k) in co.get("symbolMap", {}).items()))
            K = CoeffGroup(N, tuple(co.get("symbols", ())), m, unit, smap)
        else:
            K = coeff_group_for(m, unit, N)
        if "latticeMatrices" in gamma:
            g = tuple(tuple(r) for r in gamma["latticeMatrices"][0])
            th_inv = theta.inverse().char_matrix if theta is not None else None
            w = from_char_matrix(d, mat_mul(g, th_inv) if th_inv is not None else g)
        else:
            w = from_word(d, [i - 1 for i in gamma.get("weylImages", [])])
        S = TwistedTorusDatum(d, K, w, theta)
        S.check()
    except (LgkError, ValueError, KeyError, TypeError) as e:
        raise SpecError(f"gamma: {e}") from None
    return S


# -- suites ----------------------------------------------------------------------------


Record = dict
SuiteFn = Callable[[Context], Iterator[tuple[str, Check | None]]]


def _need_datum(ctx: Context, suite: str) -> BasedRootDatum:
    if ctx.datum is None:
        raise SpecError(f"suite {suite} needs a group")
    return ctx.datum


def _tag(ctx: Context) -> str:
    d = ctx.datum
    return f"{d.cartan_type}-{d.isogeny}" if d is not None else "none"


def suite_tits(ctx: Context):
    from .models import check_tits_well_defined

    d = _need_datum(ctx, "tits-welldef")
    try:
        res = check_tits_well_defined(d)
    except InvalidType:
        res = None
    yield _tag(ctx), res


def suite_inverse_section(ctx: Context):
    from .tits import inverse_section_identity_check
    from .weyl import enumerate_group

    d = _need_datum(ctx, "inverse-section")
    ws = enumerate_group(d, cap=ctx.bounds.get("weylCap", 10_000))
    for sign, name in ((1, "i"), (-1, "-i")):
        yield f"{_tag(ctx)}/{name}", inverse_section_identity_check(ws, 24, sign)


def suite_splcng(ctx: Context):
    from .chidata import random_adata, random_scaling
    from .splitinv import SPLCNG_TYPES, random_instance, verify_splcng

    count = ctx.count(100)
    for k in range(count):
        inst_seed = ctx.seed * 100_003 + k
        if ctx.spec.get("gamma") is not None and ctx.torus is not None:
            S = ctx.torus
            rng = random.Random(inst_seed)
            A = random_adata(S, rng, symbols=S.K.symbols)
            c = random_scaling(S, rng, symbols=S.K.symbols)
            desc = {"seed": inst_seed, "torus": S.to_json()}
        else:
            types = (ctx.datum.cartan_type,) if ctx.datum is not None else SPLCNG_TYPES
            isos = (ctx.datum.isogeny,) if ctx.datum is not None else ("sc", "adjoint")
            inst = random_instance(inst_seed, types=types, isogenies=isos)
            S, A, c = inst.S, inst.A, inst.c
            desc = inst.describe()
        res = verify_splcng(S, A, c)
        yield f"{k:04d}", Check(res.ok, {"instance": desc, "failure": res.witness})


def suite_chiinv(ctx: Context):
    from .lembed import DEFAULT_ORDER_BOUND, search_rcochains, trivial_rcochain, verify_chi_inv

    _need_datum(ctx, "chiinv")
    S = ctx.torus
    if S.order == 1:
        yield f"{_tag(ctx)}/trivial", verify_chi_inv(S, trivial_rcochain(S))
        return
    bound = ctx.bounds.get("orderBound", DEFAULT_ORDER_BOUND)
    found = search_rcochains(S, bound)
    if not found:
        yield f"{_tag(ctx)}/search", Check(False, {"reason": "no r-cochain found", "orderBound": bound})
    for k, r in enumerate(found):
        res = verify_chi_inv(S, r)
        yield f"{_tag(ctx)}/r{k:03d}", Check(res.ok, {"r": r.to_json(), "failure": res.witness})


def suite_chevalley(ctx: Context):
    from .chevalley import verify_chevalley

    d = _need_datum(ctx, "chevalley")
    if d.cartan_type.startswith("G"):
        yield _tag(ctx), None
        return
    yield _tag(ctx), verify_chevalley(d)


def suite_fixedgroup(ctx: Context):
    from .fixedgroup import (
        build_fixed_datum,
        check_c_orthogonality,
        check_fibers,
        matrix_oracle,
        verify_chevalley_on_fixed,
        weyl_order_check,
    )

    d = _need_datum(ctx, "fixedgroup")
    if ctx.theta is None:
        raise SpecError("suite fixedgroup needs theta")
    fd = build_fixed_datum(d, ctx.theta)
    tag = _tag(ctx)
    yield f"{tag}/datum", Check(True, fd.to_json())
    yield f"{tag}/fibers", check_fibers(fd)
    yield f"{tag}/c", check_c_orthogonality(fd)
    yield f"{tag}/weyl-order", weyl_order_check(fd)
    if d.cartan_type.startswith("G"):
        yield f"{tag}/matrix", None
        yield f"{tag}/chevalley", None
        return
    yield f"{tag}/matrix", matrix_oracle(fd)
    try:
        yield f"{tag}/chevalley", verify_chevalley_on_fixed(fd, depth=ctx.bounds.get("searchDepth", 2))
    except WitnessNotFound as e:
        yield f"{tag}/chevalley", Check(False, {"reason": str(e)})


def suite_orbits(ctx: Context):
    from .chidata import minus_one_preserves_orbits

    d = _need_datum(ctx, "orbit-minus-one")
    thetas = [ctx.theta] if ctx.theta is not None else diagram_automorphisms(d)
    for th in thetas:
        yield f"{_tag(ctx)}/{''.join(str(i + 1) for i in th.perm)}", minus_one_preserves_orbits(d, th)


def _tables(ctx: Context, salt: int):
    from .endofourier import FinAbGroup, PacketTable, random_table

    rng = random.Random(ctx.seed * 7919 + salt)
    count = ctx.count(50)
    fixed = ctx.spec.get("packet")
    for k in range(count):
        if fixed:
            G = FinAbGroup(tuple(fixed["factors"]))
            t = PacketTable(G, tuple(f"pi{j}" for j in range(G.order)))
        else:
            t = random_table(rng)
        yield k, rng, t


def suite_fourier(ctx: Context):
    from .endofourier import check_orthogonality, fourier_forward, fourier_invert

    for k, rng, t in _tables(ctx, 1):
        F = t.group.field
        theta = [F.rational(rng.randint(-9, 9)) for _ in range(t.group.order)]
        ok = fourier_invert(t, fourier_forward(t, theta)) == theta and check_orthogonality(t).ok
        yield f"{k:03d}", Check(ok, {"seed": ctx.seed, "factors": list(t.group.factors)})


def suite_whittaker(ctx: Context):
    from .endofourier import compose_perms, whittaker_shift

    for k, rng, t in _tables(ctx, 2):
        e1, e2 = rng.choice(t.characters), rng.choice(t.characters)
        ok = compose_perms(whittaker_shift(t, e1), whittaker_shift(t, e2)) == whittaker_shift(t, e1 * e2)
        w = {"seed": ctx.seed, "factors": list(t.group.factors), "eta1": list(e1.ks), "eta2": list(e2.ks)}
        yield f"{k:03d}", Check(ok, w)


def suite_contragredient(ctx: Context):
    from .endofourier import aut_compose, compose_perms, contragredient_shift, precompose_inverse_perm, random_aut

    for k, rng, t in _tables(ctx, 3):
        c = random_aut(rng, t.group)
        p = contragredient_shift(t, c)
        ok = compose_perms(p, p) == precompose_inverse_perm(t, aut_compose(c, c))
        w = {"seed": ctx.seed, "factors": list(t.group.factors), "aut": [list(r) for r in c.matrix]}
        yield f"{k:03d}", Check(ok, w)


def suite_coinvariants(ctx: Context):
    from .endofourier import LatticeAction, check_fixed_torus, random_lattice_action, sufficient_level

    lat = ctx.spec.get("lattice")
    if lat:
        mats = tuple(tuple(tuple(r) for r in M) for M in lat["matrices"])
        L = LatticeAction(len(mats[0]), mats, tuple(lat["orders"]))
        if not L.check():
            raise SpecError(f"lattice: {L.check().witness}")
        yield "given", check_fixed_torus(L, lat.get("m") or sufficient_level(L, 2))
        return
    rng = random.Random(ctx.seed * 104_729 + 4)
    for k in range(ctx.count(50)):
        L = random_lattice_action(rng, rng.choice([2, 3]))
        res = check_fixed_torus(L, sufficient_level(L, 2))
        yield f"{k:03d}", Check(res.ok, {"seed": ctx.seed, "matrix": [list(r) for r in L.generators[0]], **res.witness})


SUITE_FUNCS: dict[str, SuiteFn] = {
    "splcng": suite_splcng,
    "chiinv": suite_chiinv,
    "tits-welldef": suite_tits,
    "inverse-section": suite_inverse_section,
    "chevalley": suite_chevalley,
    "fixedgroup": suite_fixedgroup,
    "orbit-minus-one": suite_orbits,
    "fourier": suite_fourier,
    "whittaker-shift": suite_whittaker,
    "contragredient-shift": suite_contragredient,
    "coinvariants": suite_coinvariants,
}


def _jsonable(x):
    """Witnesses may hold tuples or Fractions; make them plain JSON."""
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, KElem):
        return x.to_json()
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return str(x)


def run_spec(spec: dict, seed: int | None = None, timings: bool = False) -> dict:
    """Run every suite named in a (validated) spec and assemble the report."""
    ctx = build_context(spec, seed)
    records: list[Record] = []
    for suite in spec["suites"]:
        it = SUITE_FUNCS[suite](ctx)
        while True:
            t0 = time.perf_counter()
            try:
                name, res = next(it)
            except StopIteration:
                break
            ms = round((time.perf_counter() - t0) * 1000, 3) if timings else None
            if res is None:
                status, witness = "skipped", {"reason": "no matrix model for this type"}
            else:
                status, witness = ("pass" if res.ok else "fail"), res.witness
            records.append(
                {"id": f"{suite}/{name}", "suite": suite, "status": status, "witness": _jsonable(witness), "runtimeMs": ms}
            )
    records.sort(key=lambda r: r["id"])
    summary = {s: sum(1 for r in records if r["status"] == s) for s in ("pass", "fail", "skipped")}
    return {
        "seed": ctx.seed,
        "toolVersion": __version__,
        "specHash": spec_hash(spec),
        "summary": summary,
        "records": records,
    }


def dump_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- entry point -----------------------------------------------------------------------


def _cmd_datum(args) -> int:
    try:
        d = build_from_type(args.type, ADJOINT if args.adjoint else SC, args.rank)
    except InvalidType as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.dual:
        d = dual(d)
    print(json.dumps(d.to_json(), sort_keys=True))
    return 0


def _cmd_verify(args) -> int:
    try:
        spec = load_spec(args.spec)
        report = run_spec(spec, args.seed, args.timings)
    except SpecError as e:
        print(f"invalid spec: {e}", file=sys.stderr)
        return 2
    text = dump_report(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 1 if report["summary"]["fail"] else 0


def _cmd_suites(args) -> int:
    print(json.dumps(list(SUITES)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lgk", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"lgk {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    pd = sub.add_parser("datum", help="print a based root datum as JSON")
    pd.add_argument("--type", required=True, help="Cartan type, e.g. B or B2")
    pd.add_argument("--rank", type=int)
    pd.add_argument("--adjoint", action="store_true", help="adjoint instead of simply connected")
    pd.add_argument("--dual", action="store_true", help="print the dual datum")
    pd.set_defaults(func=_cmd_datum)

    pv = sub.add_parser("verify", help="run the suites listed in a spec file")
    pv.add_argument("--spec", required=True, help="JSON or TOML spec file")
    pv.add_argument("--seed", type=int, help="overrides data.seed")
    pv.add_argument("--out", help="write the report here instead of stdout")
    pv.add_argument("--timings", action="store_true", help="record runtimeMs (reports are then not byte-stable)")
    pv.set_defaults(func=_cmd_verify)

    ps = sub.add_parser("suites", help="list suite names")
    ps.set_defaults(func=_cmd_suites)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
