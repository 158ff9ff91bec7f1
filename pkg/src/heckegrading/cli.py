"""Command line interface.

    heckegrading verify    --coxeter a2.json --grading bigrading
    heckegrading universal --coxeter a3.json
    heckegrading degree    --coxeter a2.json --grading bigrading --diagram cup.txt
    heckegrading theta     --coxeter a2.json --grading bigrading --character sign.json --diagram d.txt
    heckegrading classify  --coxeter a2.json --grading universal

Exit codes: 0 success, 1 a relation failed to be homogeneous, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from .abgroup import AbGroup
from .coxeter import CoxeterError, VGrading, load_coxeter, root_name
from .diagram import DiagramError, parse_diagram
from .grading import (DegreeAssignment, GradingError, InhomogeneousError, bigrading, degree,
                      general_grading, original_grading, universal_lambda)
from .relations import derive_universal, load_catalog, verify_all
from .rescale import CharacterError, character, classify_characters, theta_apply

BUILTIN_GRADINGS = ("bigrading", "universal", "original")


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    system: object
    realization: object
    grading_kind: str
    assignment: DegreeAssignment
    vgrading: VGrading | None = None


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None


def _read_text(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None


def _elements(group: AbGroup, spec: dict) -> dict:
    return {k: group.element(v) for k, v in spec.items()}


def _assignment_from_spec(spec: dict, system, real):
    kind = spec.get("kind")
    if kind in BUILTIN_GRADINGS:
        return kind, _builtin(kind, system, real), None
    if kind == "general":
        if real is None:
            raise ConfigError("a general grading needs a realization (give a Cartan matrix)")
        gamma = AbGroup.from_json(spec["gamma"])
        if "deg_basis" in spec:
            deg_basis = _elements(gamma, spec["deg_basis"])
        elif "deg_alpha" in spec:
            deg_basis = {root_name(s): gamma.element(v) for s, v in spec["deg_alpha"].items()}
        else:
            raise ConfigError("general grading needs deg_basis or deg_alpha")
        vg = VGrading(gamma, deg_basis)
        _, a = general_grading(system, real, vg)
        return kind, a, vg
    if kind == "custom":
        group = AbGroup.from_json(spec["group"])
        basis = real.basis if real is not None else tuple(root_name(s) for s in system.labels)
        deg_v = _elements(group, spec.get("deg_basis", {}))
        missing = set(basis) - set(deg_v)
        if missing:
            raise ConfigError(f"custom grading lacks degrees for {sorted(missing)}")
        return kind, DegreeAssignment(system, group, _elements(group, spec["f"]),
                                      _elements(group, spec["g"]), deg_v), None
    raise ConfigError(f"unknown grading kind {kind!r}")


def _builtin(kind, system, real):
    if kind == "bigrading":
        return bigrading(system, real)
    if kind == "original":
        return original_grading(system, real)
    return universal_lambda(system)[1]


def load_config(args) -> RunConfig:
    try:
        system, real = load_coxeter(args.coxeter)
    except OSError as exc:
        raise ConfigError(f"cannot read {args.coxeter}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{args.coxeter}: invalid JSON ({exc})") from None
    g = args.grading
    if g in BUILTIN_GRADINGS:
        kind, a, vg = g, _builtin(g, system, real), None
    else:
        kind, a, vg = _assignment_from_spec(_read_json(g), system, real)
    return RunConfig(system, real, kind, a, vg)


# ---------------------------------------------------------------------------
# commands

def cmd_verify(cfg: RunConfig, args, out) -> int:
    extra = load_catalog(args.catalog, cfg.system) if args.catalog else []
    report = verify_all(cfg.system, cfg.realization, cfg.assignment, extra)
    if args.format == "json":
        json.dump(report.to_json(), out, indent=1)
        out.write("\n")
    else:
        for e in report.entries:
            mark = "ok  " if e.homogeneous else "FAIL"
            deg = f" degree {e.degree}" if e.degree is not None else ""
            out.write(f"{mark} {e.relation}{deg}\n")
            for d, text in e.witnesses:
                shown = d.as_combination() if hasattr(d, "as_combination") else d
                out.write(f"     term of degree {shown}: {' / '.join(text.splitlines())}\n")
        n_bad = len(report.failures())
        out.write(f"{len(report.entries) - n_bad}/{len(report.entries)} homogeneous\n")
    return 0 if report.ok else 1


def cmd_universal(cfg: RunConfig, args, out) -> int:
    res = derive_universal(cfg.system, cfg.realization, cfg.vgrading)
    g = res.group
    cert = res.certificate
    data = {
        "free_rank": g.free_rank,
        "invariant_factors": list(g.invariant_factors),
        "group": g.describe(),
        "generators": {u: repr_in(cert, g.gen(u)) for u in g.gens},
        "derived": res.derived,
        "certificate": None if cert is None else {
            "ok": cert.ok, "invariants_match": cert.invariants_match,
            "round_trips": cert.round_trips, "target_gens": list(cert.target.gens)},
    }
    if args.format == "json":
        json.dump(data, out, indent=1)
        out.write("\n")
    else:
        out.write(f"universal grading group: {data['group']}\n")
        out.write(f"free rank {g.free_rank}; invariant factors {list(g.invariant_factors) or 'none'}\n")
        for u, img in data["generators"].items():
            out.write(f"  {u} -> {img}\n")
        for eq, ok in res.derived.items():
            out.write(f"  {'holds' if ok else 'FAILS'}: {eq}\n")
        if cert is not None:
            out.write(f"isomorphism certificate: {'ok' if cert.ok else 'FAILED'}\n")
    return 0


def repr_in(cert, elem) -> str:
    if cert is None or cert.forward is None:
        return str(elem.coordinates())
    return cert.forward(elem).as_combination()


def _diagram(cfg, path):
    return parse_diagram(_read_text(path), cfg.system)


def cmd_degree(cfg: RunConfig, args, out) -> int:
    d = _diagram(cfg, args.diagram)
    deg = degree(d, cfg.assignment)
    if args.format == "json":
        json.dump({"degree": list(deg.coordinates()), "combination": deg.as_combination()}, out)
        out.write("\n")
    else:
        out.write(f"{deg}\n")
    return 0


def cmd_theta(cfg: RunConfig, args, out) -> int:
    spec = _read_json(args.character)
    want = spec.get("group")
    if want is not None and want != cfg.grading_kind:
        raise ConfigError(f"character is for the {want!r} grading, but the grading is {cfg.grading_kind!r}")
    chi = character(cfg.assignment.group, spec["images"])
    d = _diagram(cfg, args.diagram)
    scaled = theta_apply(chi, d, cfg.assignment)
    if args.format == "json":
        json.dump({"scalar": str(scaled.scalar)}, out)
        out.write("\n")
    else:
        out.write(f"{scaled.scalar}\n")
    return 0


def cmd_classify(cfg: RunConfig, args, out) -> int:
    st = classify_characters(cfg.assignment.group)
    if args.format == "json":
        json.dump({"free_rank": st.free_rank, "torsion": list(st.torsion),
                   "torsion_choices": list(st.torsion_choices), "summary": st.summary()}, out)
        out.write("\n")
    else:
        out.write(st.summary() + "\n")
    return 0


COMMANDS = {"verify": cmd_verify, "universal": cmd_universal, "degree": cmd_degree,
            "theta": cmd_theta, "classify": cmd_classify}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heckegrading",
                                description="Gradings and rescalings of the diagrammatic Hecke category.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, grading_default="bigrading"):
        sp.add_argument("--coxeter", required=True, help="Coxeter/realization JSON file")
        sp.add_argument("--grading", default=grading_default,
                        help="bigrading | universal | original | path to a grading JSON file")
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("verify", help="check every relation is homogeneous")
    common(sp)
    sp.add_argument("--catalog", help="extra relations (JSON)")
    sp = sub.add_parser("universal", help="derive the universal grading group")
    common(sp, "universal")
    sp = sub.add_parser("degree", help="degree of a diagram")
    common(sp)
    sp.add_argument("--diagram", required=True)
    sp = sub.add_parser("theta", help="scalar picked up by a diagram under a rescaling")
    common(sp)
    sp.add_argument("--character", required=True)
    sp.add_argument("--diagram", required=True)
    sp = sub.add_parser("classify", help="describe the characters of the grading group")
    common(sp, "universal")
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = load_config(args)
        return COMMANDS[args.command](cfg, args, out)
    except (ConfigError, CoxeterError, DiagramError, GradingError, InhomogeneousError,
            CharacterError, KeyError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
