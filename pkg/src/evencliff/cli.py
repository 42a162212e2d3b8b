"""``cliff``: subcommands over form files, emitting JSON reports.

Exit codes: 0 pass, 1 mathematical fail or error (full report), 2 usage or
parse error (message on stderr, no report).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import clifford, conicgeom, quadform, reconstruct
from .exactalg.fields import DEFAULT_PRIME, GF, QQ, PrimeField, parse_field
from .exactalg.gcd import gcd_many, squarefree_check
from .exactalg.poly import HomogeneousPoly, PolyError
from .io import (
    FormatError,
    algebra_from_dict,
    algebra_to_dict,
    form_from_dict,
    form_to_dict,
    is_algebra_dump,
    load_data,
    write_form,
)
from .report import Report, canonical_json, digest, envelope

COMMANDS = (
    "validate",
    "disc",
    "classify-fiber",
    "cliff-build",
    "cliff-verify",
    "cliff-dump",
    "reconstruct",
    "roundtrip",
    "pointwise-check",
    "make-instance",
    "smooth-probe",
    "disc-compare",
    "selftest",
)

class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cliff", description="Even Clifford algebras of twisted ternary quadratic forms.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--input", help="form, instance or algebra-dump file (TOML or JSON)")
    ap.add_argument("--other", help="second form file for disc-compare")
    ap.add_argument("--output", help="write the report here instead of stdout")
    ap.add_argument("--field", help='override the field: "Q" or "Fp:<p>"')
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=20, help="sample count for probabilistic checks; 0 skips them")
    ap.add_argument("--point", help='base point "c0,c1,..."')
    ap.add_argument("--tag", choices=[t.value for t in conicgeom.InstanceTag], help="instance type for make-instance")
    ap.add_argument("--form-out", help="make-instance: also write the instance file here")
    ap.add_argument("--pretty", action="store_true", help="human-readable rendering of the same report")
    ap.add_argument("--jobs", type=int, default=1, help="worker cap (all checks currently run in one process)")
    ap.add_argument("--literal-example", action="store_true", help=argparse.SUPPRESS)
    return ap


# input handling ----------------------------------------------------------------


def _field_override(args):
    if args.field is None:
        return None
    try:
        return parse_field(args.field)
    except ValueError as exc:
        raise UsageError(f"bad --field: {exc}") from exc


def _load(path, field):
    if path is None:
        raise UsageError("--input is required for this command")
    try:
        data = load_data(path)
    except FileNotFoundError as exc:
        raise UsageError(f"no such file: {path}") from exc
    if is_algebra_dump(data):
        return data, algebra_from_dict(data, field)
    return data, form_from_dict(data, field)


def _need_form(obj, command):
    if not isinstance(obj, quadform.TwistedQuadraticForm):
        raise UsageError(f"{command} needs a form file, not an algebra dump")
    return obj


def _parse_point(text, field, nvars):
    try:
        pt = [field.parse_scalar(c) for c in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --point {text!r}: {exc}") from exc
    if len(pt) != nvars:
        raise UsageError(f"--point needs {nvars} coordinates, got {len(pt)}")
    if not any(pt):
        raise UsageError("--point must not be the zero vector")
    return pt


def _fmt_point(field, pt):
    return [field.format(x) for x in pt]


# commands ------------------------------------------------------------------------


def cmd_validate(args, q):
    rep = quadform.validate(q)
    if not rep.passed:
        return rep
    if args.samples == 0 and q.twist.base_dim > 1:
        g = gcd_many([e for e in q.upper() if not e.is_zero()])
        if not g.is_constant():
            return rep.fail("common_zero", witness=f"{g} = 0", method="exact common factor")
        return rep.add("sampled_nonvanishing_skipped", reason="samples = 0")
    mode = "exact_p1" if q.twist.base_dim == 1 else "montecarlo"
    return rep.merge(quadform.nowhere_vanishing_check(q, mode=mode, samples=args.samples, seed=args.seed))


def cmd_disc(args, q):
    d = quadform.discriminant(q)
    rep = Report()
    rep.constants.update({"expected_degree": q.twist.disc_degree, "discriminant": str(d)})
    if d.is_zero():
        rep.constants["degree"] = None
        return rep.fail("degenerate_family", note="discriminant vanishes identically")
    rep.constants["degree"] = d.degree
    rep.constants["squarefree"] = squarefree_check(d) if q.twist.base_dim > 0 else True
    rep.add("discriminant", degree=d.degree)
    return rep


def cmd_classify_fiber(args, q):
    if args.point:
        pt = _parse_point(args.point, q.field, q.nvars)
    else:
        pt = quadform.random_point(q.field, q.nvars, random.Random(args.seed))
    rep = Report()
    rep.constants["point"] = _fmt_point(q.field, pt)
    try:
        r, fc = quadform.fiber_rank(q, pt)
    except quadform.VanishingForm as exc:
        return rep.error("vanishing_form", message=str(exc))
    ac = clifford.classify_fiber_algebra(clifford.cliff0(q), pt)
    rep.constants.update({"fiber_rank": r, "fiber_class": fc.name, "algebra_class": ac.name})
    if clifford.RANK_TO_CLASS[r] is not ac:
        rep.fail("class_mismatch", fiber=fc.name, algebra=ac.name)
    else:
        rep.add("fiber", fiber=fc.name, algebra=ac.name)
    return rep


def _cliff0(args, q):
    return clifford.cliff0(q, literal=args.literal_example)


def cmd_cliff_build(args, q):
    A = _cliff0(args, q)
    m = clifford.cliff_odd(q)
    rep = Report()
    rep.constants["algebra"] = algebra_to_dict(A)
    rep.constants["odd_module"] = {
        "labels": list(m.labels),
        "degrees": list(m.degrees),
        "left": {f"{A.labels[s]}*{m.labels[t]}": [str(c) for c in m.left[s][t]] for s in range(4) for t in range(4)},
        "right": {f"{m.labels[s]}*{A.labels[t]}": [str(c) for c in m.right[s][t]] for s in range(4) for t in range(4)},
    }
    rep.add("built", normalization="literal" if A.literal else "associative")
    return rep


def cmd_cliff_verify(args, q):
    A = _cliff0(args, q)
    rep = Report()
    rep.merge(clifford.verify_associativity(A), "associativity")
    for d in A.degree_issues():
        rep.fail("degree", **d)
    for d in A.commutator_unit_defects():
        rep.fail("commutator_unit_component", **d)
    rep.merge(clifford.verify_module_axioms(A, clifford.cliff_odd(q)), "module_axioms")
    return rep


def cmd_reconstruct(args, obj):
    R = clifford.cliff0(obj) if isinstance(obj, quadform.TwistedQuadraticForm) else obj
    rep = Report()
    rep.constants.update({"c": reconstruct.ROUNDTRIP_SCALE, "det_law": reconstruct.DET_LAW})
    try:
        qR = reconstruct.reconstruct_form(R)
    except reconstruct.AsymmetricCommutator as exc:
        return rep.fail("asymmetric_commutator", message=str(exc), defect_matrix=exc.defect)
    except reconstruct.VanishingReconstruction as exc:
        return rep.error("vanishing_reconstructed_form", message=str(exc))
    except clifford.NotPointwiseClifford as exc:
        return rep.error("not_candidate", message=str(exc))
    rep.constants["form"] = form_to_dict(qR)
    rep.add("reconstructed", basis="dual basis (f1^v, f2^v, f3^v)")
    return rep


def cmd_roundtrip(args, q):
    return reconstruct.roundtrip_check(q)


def cmd_pointwise(args, obj):
    R = clifford.cliff0(obj) if isinstance(obj, quadform.TwistedQuadraticForm) else obj
    return reconstruct.is_pointwise_clifford(R, sample_count=args.samples, seed=args.seed)


def cmd_smooth_probe(args, q):
    p = q.field.p if isinstance(q.field, PrimeField) else DEFAULT_PRIME
    return conicgeom.smoothness_probe(q, sample_count=args.samples, p=p, seed=args.seed)


def cmd_disc_compare(args, q, other):
    if other.twist.base_dim != q.twist.base_dim:
        raise UsageError("disc-compare needs two forms over the same base")
    return conicgeom.discriminant_data_compare(q, other, sample_count=args.samples, seed=args.seed)


def cmd_make_instance(args):
    if not args.tag:
        raise UsageError("make-instance needs --tag")
    field = _field_override(args) or QQ
    spec = conicgeom.InstanceSpec(conicgeom.InstanceTag(args.tag), args.seed, field)
    rep = Report()
    try:
        inst = conicgeom.make_instance(spec)
    except conicgeom.BuildError as exc:
        return rep.error("build_failed", message=str(exc)), None
    extra = {"tag": inst.tag.value, "seed": inst.seed}
    rep.constants["instance"] = {**extra, **form_to_dict(inst.q)}
    rep.constants["disc_degree"] = inst.disc_degree
    rep.constants["notes"] = inst.notes
    rep.add("instance", tag=inst.tag.value, disc_degree=inst.disc_degree)
    if args.form_out:
        write_form(inst.q, args.form_out, extra)
    return rep, {"tag": args.tag, "seed": args.seed, "field": str(field)}


# selftest ------------------------------------------------------------------------


def _section(rep: Report, name: str, sub: Report, summary: dict):
    summary[name] = sub.verdict
    rep.merge(sub, name)


def selftest(samples: int = 20, seed: int = 0, literal: bool = False) -> Report:
    """Deterministic aggregate of the library invariants."""
    rep = Report()
    summary = {}
    rng = random.Random(seed)
    F = GF(DEFAULT_PRIME)

    # commutator formula on a diagonal form, exact
    sub = Report()
    a = [QQ.norm(rng.randint(1, 9) * rng.choice((-1, 1))) for _ in range(3)]
    one = lambda c: HomogeneousPoly.constant(QQ, 1, c)
    qd = quadform.TwistedQuadraticForm.from_upper(
        quadform.SplitTwist(0, (0, 0, 0), 0), [one(a[0]), one(0), one(0), one(a[1]), one(0), one(a[2])]
    )
    A = clifford.cliff0(qd, literal=literal)
    comm = A.commutator(1, 3)  # [f12, f23]
    want = [one(0), one(0), one(2 * a[1]), one(0)]
    if comm != want:
        sub.fail("commutator_formula", got=[str(c) for c in comm], expected=[str(c) for c in want])
    _section(rep, "commutator_formula", sub, summary)

    # associativity of a dense family over P^2, and the literal table counterexample
    twist = quadform.SplitTwist(2, (1, 1, 0), 0)
    q = quadform.random_form(twist, QQ, rng)
    _section(rep, "associativity", clifford.verify_associativity(clifford.cliff0(q, literal=literal)), summary)
    lit = clifford.verify_associativity(clifford.literal_example_table((1, 1, 1), QQ))
    sub = Report()
    witnesses = [f["triple"] for f in lit.findings]
    if lit.passed or ["f12", "f12", "f13"] not in witnesses:
        sub.fail("literal_table_counterexample_missing")
    else:
        sub.add("literal_table_not_associative", witness=["f12", "f12", "f13"], failing_triples=len(witnesses))
    _section(rep, "literal_counterexample", sub, summary)

    # builders: degrees and roundtrip, exact
    sub = Report()
    for tag in (conicgeom.InstanceTag.Type5n, conicgeom.InstanceTag.Mod12nb, conicgeom.InstanceTag.Mod10na, conicgeom.InstanceTag.Mod8nb):
        inst = conicgeom.make_instance(conicgeom.InstanceSpec(tag, seed))
        want = conicgeom.TAG_DISC_DEGREE[tag]
        if inst.disc_degree != want:
            sub.fail("disc_degree", tag=tag.value, expected=want, got=inst.disc_degree)
        rt = reconstruct.roundtrip_check(inst.q)
        if not rt.passed:
            sub.fail("roundtrip", tag=tag.value, findings=rt.findings)
        else:
            sub.add("builder_ok", tag=tag.value, disc_degree=inst.disc_degree)
    _section(rep, "builders_roundtrip", sub, summary)

    if samples == 0:
        for name in ("oracle_equivalence", "fiber_correspondence", "bimodule_law"):
            summary[name] = "skipped"
        rep.add("sampled_checks_skipped", reason="samples = 0")
        rep.constants["sections"] = summary
        return rep

    # oracle equivalence at random F_p points
    sub = Report()
    qf = quadform.random_form(quadform.SplitTwist(2, (1, 0, 0), -1), F, rng)
    Af = clifford.cliff0(qf, literal=literal)
    for _ in range(samples):
        pt = quadform.random_point(F, 3, rng)
        b = qf.matrix_at(pt)
        if Af.eval_table(pt) != clifford.straightening_oracle(b, F).even:
            sub.fail("oracle_mismatch", point=_fmt_point(F, pt))
            break
    else:
        sub.add("oracle_equivalence", points=samples)
    _section(rep, "oracle_equivalence", sub, summary)

    # fiber classes against ranks, on and off the discriminant
    sub = Report()
    inst = conicgeom.make_instance(conicgeom.InstanceSpec(conicgeom.InstanceTag.Mod12nb, seed, F))
    A12 = clifford.cliff0(inst.q)
    pts = conicgeom.sample_curve_points(inst.disc, samples, DEFAULT_PRIME, seed)
    pts += [quadform.random_point(F, 3, rng) for _ in range(samples)]
    for pt in pts:
        r, _ = quadform.fiber_rank(inst.q, pt)
        if clifford.classify_fiber_algebra(A12, pt) is not clifford.RANK_TO_CLASS[r]:
            sub.fail("class_mismatch", point=_fmt_point(F, pt), rank=r)
    if sub.passed:
        sub.add("fiber_correspondence", points=len(pts))
    _section(rep, "fiber_correspondence", sub, summary)

    # bimodule law at nondegenerate points
    sub = Report()
    checked = 0
    while checked < min(samples, 5):
        pt = quadform.random_point(F, 3, rng)
        if quadform.fiber_rank(qf, pt)[0] != 3:
            continue
        for parity in ((1, 1), (1, 0), (0, 1)):
            r = clifford.verify_bimodule_tensor_at(qf, pt, parity)
            if not r.passed:
                sub.fail("bimodule", point=_fmt_point(F, pt), parity=list(parity), findings=r.findings)
        checked += 1
    if sub.passed:
        sub.add("bimodule_law", points=checked)
    _section(rep, "bimodule_law", sub, summary)

    rep.constants["sections"] = summary
    return rep


# driver ----------------------------------------------------------------------------


def _render_pretty(env: dict) -> str:
    lines = [f"{env['command']}: {env['verdict'].upper()}"]
    for k in sorted(env["constants"]):
        v = env["constants"][k]
        text = v if isinstance(v, str) else json.dumps(v, sort_keys=True)
        lines.append(f"  {k:<22} {text}")
    for f in env["findings"]:
        rest = {k: v for k, v in f.items() if k != "kind"}
        lines.append(f"  - {f['kind']}: {json.dumps(rest, sort_keys=True)}" if rest else f"  - {f['kind']}")
    lines.append(f"  body_digest            {env['body_digest']}")
    return "\n".join(lines) + "\n"


def _dispatch(args):
    """Returns (report or raw dict, input digest material)."""
    field = _field_override(args)
    if args.command == "selftest":
        return selftest(args.samples, args.seed, args.literal_example), {"samples": args.samples, "seed": args.seed}
    if args.command == "make-instance":
        return cmd_make_instance(args)
    data, obj = _load(args.input, field)
    material = {"input": data, "field": args.field, "seed": args.seed, "samples": args.samples, "point": args.point}
    if args.command == "cliff-dump":
        q = _need_form(obj, args.command)
        return algebra_to_dict(_cliff0(args, q)), None
    if args.command in ("reconstruct", "pointwise-check"):
        fn = cmd_reconstruct if args.command == "reconstruct" else cmd_pointwise
        return fn(args, obj), material
    q = _need_form(obj, args.command)
    if args.command == "validate":
        return cmd_validate(args, q), material
    if args.command == "disc-compare":
        if not args.other:
            raise UsageError("disc-compare needs --other")
        other_data, other = _load(args.other, field)
        material["other"] = other_data
        return cmd_disc_compare(args, q, _need_form(other, args.command)), material
    rv = quadform.validate(q)
    if not rv.passed:
        return Report().merge(rv).error("invalid_form", message="form fails validate"), material
    fn = {
        "disc": cmd_disc,
        "classify-fiber": cmd_classify_fiber,
        "cliff-build": cmd_cliff_build,
        "cliff-verify": cmd_cliff_verify,
        "roundtrip": cmd_roundtrip,
        "smooth-probe": cmd_smooth_probe,
    }[args.command]
    return fn(args, q), material


def run(argv=None) -> tuple[int, dict | None]:
    """Returns (exit code, emitted document or None on usage errors)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (2 if exc.code else 0), None
    if args.samples < 0 or args.jobs < 1:
        print("cliff: --samples must be >= 0 and --jobs >= 1", file=sys.stderr)
        return 2, None
    t0 = time.perf_counter()
    try:
        result, material = _dispatch(args)
    except (UsageError, FormatError, PolyError) as exc:
        print(f"cliff: {exc}", file=sys.stderr)
        return 2, None
    except quadform.InvalidForm as exc:
        print(f"cliff: invalid form: {exc}", file=sys.stderr)
        return 2, None
    elapsed = time.perf_counter() - t0
    if isinstance(result, Report):
        doc = envelope(args.command, result, digest(canonical_json(material)) if material is not None else None, elapsed)
        code = 0 if result.passed else 1
        text = _render_pretty(doc) if args.pretty else json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        doc, code = result, 0
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code, doc


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
