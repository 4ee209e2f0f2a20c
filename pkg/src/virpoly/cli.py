"""Command-line front end: JSON in, deterministic JSON report out.

Exit codes: 0 success, 1 verification failure (counterexample in the
report), 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .characters import (
    ExpPolyCharacter,
    RestrictedCharacter,
    decompose,
)
from .errors import VirpolyError
from .induced import ModuleElement, act_laurent, act_vir, get_engine, reduce_to_generator
from .laurent import LaurentPoly, lie_bracket
from .tensor import (
    TensorSpec,
    general_tensor_map,
    iso_decide,
    restricted_to_tensor,
    simplicity_verdict,
)
from .verify import SUITES, run_suite
from .virasoro import VirElement, vir_bracket


def _emit(payload, stream=None) -> None:
    stream = stream or sys.stdout
    json.dump(payload, stream, sort_keys=True, indent=2)
    stream.write("\n")


def _load_spec(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _check_field(raw, field: str) -> None:
    """Under the rational field, Gaussian scalar literals are invalid input."""
    if field != "Q":
        return
    if isinstance(raw, dict):
        if set(raw) <= {"re", "im"} and "im" in raw:
            from fractions import Fraction

            if Fraction(raw["im"]) != 0:
                raise VirpolyError("Gaussian scalar under field Q")
        for v in raw.values():
            _check_field(v, field)
    elif isinstance(raw, list):
        for v in raw:
            _check_field(v, field)


def _parse_character(obj):
    if "restriction" in obj:
        return RestrictedCharacter.from_json(obj)
    return ExpPolyCharacter.from_json(obj)


def _cmd_bracket(raw, args):
    kind = raw.get("kind", "laurent")
    if kind == "laurent":
        a = LaurentPoly.from_json(raw["a"])
        b = LaurentPoly.from_json(raw["b"])
        return {"kind": kind, "result": lie_bracket(a, b).to_json()}
    if kind == "vir":
        a = VirElement.from_json(raw["a"])
        b = VirElement.from_json(raw["b"])
        return {"kind": kind, "result": vir_bracket(a, b).to_json()}
    raise VirpolyError(f"unknown bracket kind {kind!r}")


def _cmd_act(raw, args):
    mu = ExpPolyCharacter.from_json(raw["character"])
    v = ModuleElement.from_json(raw["vector"])
    elem = raw["element"]
    if "vir" in elem:
        out = act_vir(mu, VirElement.from_json(elem["vir"]), v)
    else:
        out = act_laurent(mu, LaurentPoly.from_json(elem["laurent"]), v)
    return {"result": out.to_json()}


def _cmd_char_validate(raw, args):
    mu = ExpPolyCharacter.from_json(raw["character"])
    lo, hi = raw.get("range", [-10, 10])
    return {"valid": mu.validate(range(int(lo), int(hi) + 1)), "range": [lo, hi]}


def _cmd_char_split(raw, args):
    rc = RestrictedCharacter.from_json(raw["character"])
    ddot, hat = rc.split_muhat()
    report = {
        "mu_ddot": ddot.to_json(),
        "mu_hat": {
            "window": {str(j): v.to_json() for j, v in sorted(hat["window"].items())},
            "z": hat["z"].to_json(),
        },
    }
    closed = rc.muhat_closed_forms()
    if closed:
        report["closed_forms"] = {k: v.to_json() for k, v in closed.items()}
    return report


def _cmd_char_decompose(raw, args):
    mu = ExpPolyCharacter.from_json(raw["character"])
    return {"components": [part.to_json() for part in decompose(mu)]}


def _cmd_reduce(raw, args):
    mu = ExpPolyCharacter.from_json(raw["character"])
    v = ModuleElement.from_json(raw["vector"])
    trace, final = reduce_to_generator(mu, v, j_window=args.j_window)
    return {
        "steps": [{"j": j, "m": m} for j, m in trace],
        "final": final.to_json(),
        "generator_span": set(final.terms) <= {get_engine(mu).zero_index},
    }


def _cmd_simplicity(raw, args):
    if "restricted" in raw:
        rc = RestrictedCharacter.from_json(raw["restricted"])
        spec, extra = restricted_to_tensor(rc)
        report = simplicity_verdict(spec, args.kac_level)
        report["restricted"] = extra
        return report
    spec = TensorSpec.from_json(raw)
    return simplicity_verdict(spec, args.kac_level)


def _cmd_iso(raw, args):
    a = TensorSpec.from_json(raw["a"])
    b = TensorSpec.from_json(raw["b"])
    return iso_decide(a, b)


def _cmd_tensor_map(raw, args):
    kind = raw.get("kind", "polynomial")
    if kind == "polynomial":
        parts = [
            ExpPolyCharacter.from_json({"factors": [f]}) for f in raw["factors"]
        ]
        return general_tensor_map(parts, args.depth, kind="polynomial")
    rc = RestrictedCharacter.from_json(raw["character"])
    return general_tensor_map(rc, args.depth, kind="restricted")


_WITH_SPEC = {
    "bracket": _cmd_bracket,
    "act": _cmd_act,
    "char-validate": _cmd_char_validate,
    "char-split": _cmd_char_split,
    "char-decompose": _cmd_char_decompose,
    "reduce": _cmd_reduce,
    "simplicity": _cmd_simplicity,
    "iso": _cmd_iso,
    "tensor-map": _cmd_tensor_map,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="virpoly",
        description="Exact computations with polynomial subalgebras of the "
        "Virasoro algebra and their induced modules.",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", required=False, help="path to the input JSON file")
    common.add_argument("--field", choices=["Q", "Qi"], default="Q")
    common.add_argument("--kac-level", type=int, default=20, dest="kac_level")
    common.add_argument("--j-window", type=int, default=16, dest="j_window")
    common.add_argument("--depth", type=int, default=3)
    common.add_argument("--seed", type=int, default=0)
    for name in _WITH_SPEC:
        sp = sub.add_parser(name, parents=[common])
        sp.set_defaults(needs_spec=True)
    vp = sub.add_parser("verify", parents=[common])
    vp.add_argument("--suite", choices=sorted(SUITES), default=None)
    vp.add_argument("--nmax", type=int, default=3)
    vp.set_defaults(needs_spec=False)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        names = [args.suite] if args.suite else sorted(SUITES)
        suites = [
            run_suite(
                name,
                nmax=args.nmax,
                seed=args.seed,
                depth=args.depth,
                j_window=args.j_window,
            )
            for name in names
        ]
        failed = sum(s["failed"] for s in suites)
        _emit({"command": "verify", "failed_total": failed, "seed": args.seed, "suites": suites})
        return 1 if failed else 0
    if args.kac_level < 1 or args.depth < 0 or args.j_window < 1:
        print("flag out of range", file=sys.stderr)
        return 2
    if not args.spec:
        print("--spec is required for this command", file=sys.stderr)
        return 2
    try:
        raw = _load_spec(args.spec)
        _check_field(raw, args.field)
        report = _WITH_SPEC[args.command](raw, args)
    except (VirpolyError, KeyError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    _emit({"command": args.command, **report})
    return 0


if __name__ == "__main__":
    sys.exit(main())
