"""Command-line front end: JSON in, JSON (or SVG) out.

Exit status: 0 success, 2 validation failure, 3 unmet precondition,
4 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from typing import Any, Sequence

from .chain_core import (
    ChainType,
    ProblemInstance,
    StabilityParameter,
    alpha_degree,
    alpha_from_tau,
    alpha_slope,
    chi_holomorphic,
    convert_parameters,
    dual_parameter,
    dual_type,
    moduli_dimension,
)
from .chambers import chamber_decomposition, locate
from .errors import AmbiguityError, CapExceededError, PreconditionError, ValidationError
from .exact_geometry import Box, Halfspace, as_point, format_rational
from .finite_field import oracle_exists_semistable
from .linear_chains import classify_linear_3chain_parameters, in_v_set
from .parameter_space import (
    FlipFiltration,
    MapFlags,
    birationality_boundary,
    extremal_summary,
    flip_codim_bound,
    flip_codim_lower_bound,
    flip_codim_minimizer,
    flip_codim_terms,
    flip_dim_bound,
    r2g2_region,
    rank_maximal_region,
    composite_surjective_region,
    region_1m1,
    region_m1n,
    standard_region,
    triple_bounds,
    enumerate_walls,
)
from .svg import render_region

EXIT_VALIDATION, EXIT_PRECONDITION, EXIT_CAP = 2, 3, 4
DEFAULT_BOX = (-5, 5)


# -- serialization -------------------------------------------------------------


def jsonable(value: Any) -> Any:
    """Fractions become ``"p/q"`` strings; tuples become lists; dict order is kept."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, ChainType):
        return {"ranks": list(value.ranks), "degrees": list(value.degrees)}
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(value: Any) -> str:
    return json.dumps(jsonable(value))


def halfspace_json(h: Halfspace) -> dict:
    return {
        "label": h.label,
        "inequality": h.format(("a1", "a2")[: h.functional.dimension] if h.functional.dimension <= 2 else None),
        "coefficients": list(h.functional.coefficients),
        "sense": h.sense,
        "rhs": h.functional.constant,
    }


# -- parsing -------------------------------------------------------------------


def parse_rationals(text: str) -> tuple[Fraction, ...]:
    return as_point(x.strip() for x in text.split(",") if x.strip())


def parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise ValidationError(f"expected comma-separated integers, got {text!r}") from exc


def parse_type(text: str) -> ChainType:
    return ChainType.parse(text.strip().strip("()"))


def _int_list(doc: dict, key: str) -> tuple[int, ...]:
    value = doc.get(key)
    if not isinstance(value, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in value):
        raise ValidationError(f"instance field {key!r} must be a list of integers")
    return tuple(value)


def instance_from_document(doc: Any) -> tuple[ProblemInstance, Box | None]:
    """Validate an instance document ``{"genus", "ranks", "degrees", "box"?}``."""
    if not isinstance(doc, dict):
        raise ValidationError("instance document must be a JSON object")
    unknown = set(doc) - {"genus", "ranks", "degrees", "box"}
    if unknown:
        raise ValidationError(f"unknown instance fields {sorted(unknown)}")
    genus = doc.get("genus")
    if isinstance(genus, bool) or not isinstance(genus, int):
        raise ValidationError("instance field 'genus' must be an integer")
    t = ChainType(_int_list(doc, "ranks"), _int_list(doc, "degrees"))
    box = None
    if "box" in doc:
        box_doc = doc["box"]
        if not isinstance(box_doc, dict) or set(box_doc) != {"lower", "upper"}:
            raise ValidationError("box must be {'lower': [...], 'upper': [...]}")
        box = Box(as_point(box_doc["lower"]), as_point(box_doc["upper"]))
    return ProblemInstance(genus, t), box


def instance_to_document(inst: ProblemInstance, box: Box | None = None) -> dict:
    doc = {"genus": inst.genus, "ranks": list(inst.chain_type.ranks), "degrees": list(inst.chain_type.degrees)}
    if box is not None:
        doc["box"] = {"lower": list(box.lower), "upper": list(box.upper)}
    return jsonable(doc)


def load_instance(args: argparse.Namespace) -> tuple[ProblemInstance, Box | None]:
    """From ``--instance`` (JSON text, a JSON file, or a type like ``(1,1;1,0)``) or stdin."""
    text = args.instance
    if text is None:
        if sys.stdin is None or sys.stdin.isatty():
            raise ValidationError("no instance given: pass --instance or pipe a JSON document")
        text = sys.stdin.read()
    text = text.strip()
    if text.startswith("{"):
        doc = _json(text)
    elif os.path.isfile(text):
        with open(text, encoding="utf-8") as handle:
            doc = _json(handle.read())
    else:
        return ProblemInstance(args.genus, parse_type(text)), None
    return instance_from_document(doc)


def _json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON: {exc}") from exc


def resolve_box(args: argparse.Namespace, doc_box: Box | None, n: int) -> Box:
    if args.lower is not None or args.upper is not None:
        if args.lower is None or args.upper is None:
            raise ValidationError("--lower and --upper go together")
        return Box(parse_rationals(args.lower), parse_rationals(args.upper))
    if doc_box is not None:
        return doc_box
    return Box.square(*DEFAULT_BOX, dimension=n)


def parse_alpha(text: str, n: int) -> StabilityParameter:
    """Either the free entries ``alpha_1..alpha_n`` or the full normalized vector."""
    values = parse_rationals(text)
    if len(values) == n:
        return StabilityParameter.from_free(values)
    if len(values) == n + 1:
        return StabilityParameter(values)
    raise ValidationError(f"alpha needs {n} free entries or {n + 1} with a leading 0")


# -- subcommands ---------------------------------------------------------------


def cmd_slope(args) -> dict:
    inst, _ = load_instance(args)
    t = inst.chain_type
    alpha = parse_alpha(args.alpha, t.n)
    return {"type": str(t), "alpha": alpha.values, "degree": alpha_degree(t, alpha), "slope": alpha_slope(t, alpha)}


def cmd_chi(args) -> dict:
    if args.genus < 2:
        raise ValidationError("genus must be at least 2")
    return {"chi": chi_holomorphic(parse_type(args.t2), parse_type(args.t1), args.genus)}


def cmd_dim(args) -> dict:
    inst, _ = load_instance(args)
    return {"type": str(inst.chain_type), "genus": inst.genus, "dimension": moduli_dimension(inst)}


def cmd_dual(args) -> dict:
    inst, _ = load_instance(args)
    t = inst.chain_type
    out: dict = {"type": str(dual_type(t)), "ranks": dual_type(t).ranks, "degrees": dual_type(t).degrees}
    if args.alpha:
        out["alpha"] = dual_parameter(parse_alpha(args.alpha, t.n)).values
    return out


def cmd_tau(args) -> dict:
    inst, _ = load_instance(args)
    t = inst.chain_type
    if (args.alpha is None) == (args.tau is None):
        raise ValidationError("give exactly one of --alpha and --tau")
    if args.alpha is not None:
        return {"tau": convert_parameters(t, parse_alpha(args.alpha, t.n)).values}
    return {"alpha": alpha_from_tau(parse_rationals(args.tau)).values}


MAP_FLAGS = ("phi1-injective", "phi1-gen-surjective", "phi2-injective", "phi2-gen-surjective", "composite-gen-surjective")
REGION_FAMILIES = ("standard", "rank-maximal", "composite-surjective", "m1n", "1m1", "r2g2")


def build_region(family: str, inst: ProblemInstance, flags: Sequence[str] = ()):
    t = inst.chain_type
    if family == "standard":
        return standard_region(t)
    if family == "rank-maximal":
        return rank_maximal_region(t, MapFlags(**{f.replace("-", "_"): True for f in flags}))
    if family == "composite-surjective":
        return composite_surjective_region(t)
    if family == "m1n":
        return region_m1n(t)
    if family == "1m1":
        return region_1m1(t)
    if family == "r2g2":
        return r2g2_region(t.n, inst.genus)
    raise ValidationError(f"unknown region family {family!r}")


def cmd_region(args) -> dict:
    inst, _ = load_instance(args)
    report = build_region(args.family, inst, args.flag or ())
    return {
        "family": args.family,
        "type": str(inst.chain_type),
        "halfspaces": [halfspace_json(h) for h in report.halfspaces],
        "annotations": [halfspace_json(h) for h in report.annotations],
        **report.constants,
        "notes": list(report.notes),
    }


def _names(n: int):
    return ("a1", "a2")[:n] if n <= 2 else None


def cmd_walls(args) -> dict:
    inst, doc_box = load_instance(args)
    t = inst.chain_type
    box = resolve_box(args, doc_box, t.n)
    walls = enumerate_walls(t, box)
    return {
        "type": str(t),
        "box": {"lower": box.lower, "upper": box.upper},
        "walls": [
            {"equation": w.functional.format(_names(t.n)), "coefficients": w.functional.coefficients,
             "constant": w.functional.constant, "signature": str(w.signature)}
            for w in walls
        ],
    }


def cmd_chambers(args) -> dict:
    inst, doc_box = load_instance(args)
    t = inst.chain_type
    box = resolve_box(args, doc_box, t.n)
    complex_ = chamber_decomposition(t, box)
    out: dict = {
        "type": str(t),
        "box": {"lower": box.lower, "upper": box.upper},
        "lines": [f.format(_names(t.n)) for f in complex_.lines],
        "counts": {str(d): len(complex_.of_dimension(d)) for d in range(t.n, -1, -1)},
        "chambers": [
            {"id": c.id, "dimension": c.dimension, "sample": c.sample, "neighbors": c.neighbors,
             **({"area": c.area} if c.dimension == 2 else {})}
            for c in complex_
        ],
    }
    if args.alpha:
        out["located"] = locate(complex_, parse_rationals(args.alpha))
    return out


def cmd_birat(args) -> dict:
    inst, doc_box = load_instance(args)
    t = inst.chain_type
    box = resolve_box(args, doc_box, t.n)
    out: dict = {
        "type": str(t),
        "box": {"lower": box.lower, "upper": box.upper},
        "boundary": [
            {"equation": b.functional.format(_names(t.n)), "left": str(b.split.left), "right": str(b.split.right)}
            for b in birationality_boundary(t, box)
        ],
    }
    if t.n == 1 and min(t.ranks) > 0:
        low, high = triple_bounds(t)
        out["alpha_m"] = low
        out["alpha_M"] = high
    return out


def cmd_classify_linear(args) -> dict:
    c = classify_linear_3chain_parameters(parse_ints(args.ranks))
    return {"case": c.case, "semistable_set": c.semistable_set.description, "map_requirement": c.map_requirement}


def cmd_oracle(args) -> dict:
    dims = parse_ints(args.dims)
    if args.alpha is not None:
        alpha = parse_alpha(args.alpha, len(dims) - 1)
        return {
            "dims": dims, "alpha": alpha.values, "q": args.q, "strict": args.strict,
            "exists": oracle_exists_semistable(dims, alpha.values, args.q, args.strict),
        }
    if len(dims) != 3:
        raise ValidationError("the sweep compares against the three-slot classification")
    rng = random.Random(args.seed)
    predicted = classify_linear_3chain_parameters(dims)
    mismatches = []
    for _ in range(args.samples):
        a = (Fraction(0), Fraction(rng.randint(-4, 4), rng.randint(1, 2)), Fraction(rng.randint(-4, 4), rng.randint(1, 2)))
        if oracle_exists_semistable(dims, a, args.q) != predicted.contains(a):
            mismatches.append(a)
    return {"dims": dims, "q": args.q, "seed": args.seed, "samples": args.samples, "mismatches": mismatches}


def cmd_vset(args) -> dict:
    res = in_v_set(parse_ints(args.r1), parse_ints(args.r2))
    return {
        "member": res.member,
        "left": str(res.left) if res.left else None,
        "right": str(res.right) if res.right else None,
    }


def cmd_flip(args) -> dict:
    out: dict = {
        "genus": args.genus,
        "terms": flip_codim_terms(args.genus, args.m_max),
        "lower_bound": flip_codim_lower_bound(args.genus),
        "minimizer": flip_codim_minimizer(args.genus),
    }
    if args.pieces:
        f = FlipFiltration(tuple(parse_type(x) for x in args.pieces.split("|")))
        out["parent"] = str(f.parent)
        out["dim_bound"] = flip_dim_bound(f, args.genus)
        out["codim_bound"] = flip_codim_bound(f, args.genus)
    return out


def cmd_extremal(args) -> dict:
    inst, _ = load_instance(args)
    s = extremal_summary(inst)
    return {
        "pattern": s.pattern, "dimension": s.dimension, "general_dimension": s.general_dimension,
        "fiber_dimension": s.fiber_dimension, "base": s.base, "b2": s.b2, "checks": s.checks,
    }


def cmd_render(args) -> str:
    inst, doc_box = load_instance(args)
    t = inst.chain_type
    box = resolve_box(args, doc_box, t.n)
    report = build_region(args.family, inst, args.flag or ())
    walls = [w.functional for w in enumerate_walls(t, box)] if args.walls else []
    return render_region(box, report.halfspaces, walls, title=f"{args.family} region for {t}")


# -- driver --------------------------------------------------------------------


def _add_instance(p: argparse.ArgumentParser, box: bool = False) -> None:
    p.add_argument("--instance", help="JSON document, path to one, or a type such as (1,1,1;2,1,0)")
    p.add_argument("--genus", type=int, default=2, help="genus when --instance is a bare type")
    if box:
        p.add_argument("--lower", help="comma-separated lower corner")
        p.add_argument("--upper", help="comma-separated upper corner")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chainparams", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized sweeps")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help, parents=[common])

    p = command("slope", help="alpha-degree and alpha-slope of a type")
    _add_instance(p)
    p.add_argument("--alpha", required=True)
    p.set_defaults(run=cmd_slope)

    p = command("chi", help="Euler characteristic between two types")
    p.add_argument("--t2", required=True, help="source type r0,r1:d0,d1")
    p.add_argument("--t1", required=True, help="target type")
    p.add_argument("--genus", type=int, required=True)
    p.set_defaults(run=cmd_chi)

    p = command("dim", help="expected moduli dimension")
    _add_instance(p)
    p.set_defaults(run=cmd_dim)

    p = command("dual", help="dual type and parameter")
    _add_instance(p)
    p.add_argument("--alpha")
    p.set_defaults(run=cmd_dual)

    p = command("tau", help="convert between alpha and tau parameters")
    _add_instance(p)
    p.add_argument("--alpha")
    p.add_argument("--tau")
    p.set_defaults(run=cmd_tau)

    p = command("region", help="inequality systems for 3-chains")
    _add_instance(p)
    p.add_argument("--family", choices=REGION_FAMILIES, default="standard")
    p.add_argument("--flag", action="append", choices=MAP_FLAGS)
    p.set_defaults(run=cmd_region)

    p = command("walls", help="proper walls meeting a box")
    _add_instance(p, box=True)
    p.set_defaults(run=cmd_walls)

    p = command("chambers", help="chamber decomposition of a box")
    _add_instance(p, box=True)
    p.add_argument("--alpha", help="also report the chamber containing this point")
    p.set_defaults(run=cmd_chambers)

    p = command("birat", help="birationality boundary in a box")
    _add_instance(p, box=True)
    p.set_defaults(run=cmd_birat)

    p = command("classify-linear", help="semistable parameters for linear 3-chains")
    p.add_argument("--ranks", required=True)
    p.set_defaults(run=cmd_classify_linear)

    p = command("oracle", help="finite-field existence of semistable linear chains")
    p.add_argument("--dims", required=True)
    p.add_argument("--alpha", help="single query; omit for a randomized sweep")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--samples", type=int, default=20)
    p.set_defaults(run=cmd_oracle)

    p = command("vset", help="membership of a rank split in the V-set")
    p.add_argument("--r1", required=True, help="target dimension vector")
    p.add_argument("--r2", required=True, help="source dimension vector")
    p.set_defaults(run=cmd_vset)

    p = command("flip", help="codimension estimates for flip loci")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--m-max", type=int, default=10)
    p.add_argument("--pieces", help="graded types separated by '|'")
    p.set_defaults(run=cmd_flip)

    p = command("extremal", help="summary of the extremal chamber")
    _add_instance(p)
    p.set_defaults(run=cmd_extremal)

    p = command("render", help="SVG of a region")
    _add_instance(p, box=True)
    p.add_argument("--family", choices=REGION_FAMILIES, default="standard")
    p.add_argument("--flag", action="append", choices=MAP_FLAGS)
    p.add_argument("--walls", action="store_true", help="draw the wall arrangement too")
    p.add_argument("--out", help="write SVG here instead of standard output")
    p.set_defaults(run=cmd_render)
    return parser


def _error(kind: str, message: str, label: str | None = None) -> str:
    body = {"kind": kind, "message": message}
    if label is not None:
        body["label"] = label
    return json.dumps({"error": body})


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.run(args)
    except PreconditionError as exc:
        print(_error("precondition", str(exc), exc.label), file=sys.stderr)
        return EXIT_PRECONDITION
    except CapExceededError as exc:
        print(_error("cap", str(exc)), file=sys.stderr)
        return EXIT_CAP
    except (ValidationError, AmbiguityError) as exc:
        print(_error("validation", str(exc)), file=sys.stderr)
        return EXIT_VALIDATION
    if isinstance(result, str):
        if getattr(args, "out", None):
            with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(result)
        else:
            sys.stdout.write(result)
    else:
        print(dumps(result))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
