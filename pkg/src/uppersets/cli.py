"""Batch CLI: integrate set functions, run the selection oracle, apply
lattice operations, check chains, and run the axiom checker and measure
reconstruction against built-in or external functionals.

Exit codes: 0 when every asserted certificate or axiom holds, 1 when a check
fails, 2 on usage, parse or protocol errors.  All randomness is seeded and
recorded in the report header, so reports are byte-identical across runs.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .axioms import (
    SampleSet,
    integral_functional,
    mutant_catalog,
    reconstruct_measure,
    run_axiom_checks,
    verify_representation,
)
from .cone import ValidationError
from .integral import (
    ParametricChain,
    aumann_integral,
    integral_over,
    monotone_limit_check,
    selection_oracle,
)
from .linalg import format_rational
from .protocol import ExternalFunctional, ProtocolError
from .upperset import inf_set, sup_set
from .workspace import Workspace, WorkspaceError, parse_workspace


def _flags_line(args, extra: str = "") -> str:
    parts = []
    for key in ("seed", "trials", "w_samples", "sample_count", "epsilon_schedule"):
        if hasattr(args, key):
            parts.append(f"{key.replace('_', '-')}={getattr(args, key)}")
    if hasattr(args, "serial_functional"):
        parts.append(f"serial-functional={'on' if args.serial_functional else 'off'}")
    if extra:
        parts.append(extra)
    return "flags: " + " ".join(parts)


def _build_functional(ws: Workspace, name: str, args):
    """Resolve a functional: a workspace name or inline integral:MU /
    mutant:NAME:MU."""
    if name in ws.functionals:
        spec = ws.functional_spec(name)
        kind, measure, mutant, command = spec.kind, spec.measure, spec.mutant, spec.command
    elif name.startswith("integral:"):
        kind, measure, mutant, command = "integral", name.split(":", 1)[1], None, ()
    elif name.startswith("mutant:"):
        parts = name.split(":")
        if len(parts) != 3:
            raise ValidationError("inline mutant form is mutant:NAME:MEASURE")
        kind, mutant, measure, command = "mutant", parts[1], parts[2], ()
    else:
        raise WorkspaceError(
            f"unknown functional {name!r}; use a workspace name, integral:MEASURE "
            "or mutant:NAME:MEASURE",
            ws.path,
        )
    if kind == "integral":
        return integral_functional(ws.measure(measure), f"integral:{measure}")
    if kind == "mutant":
        samples = _samples(ws, args)
        catalog = mutant_catalog(samples, ws.measure(measure))
        if mutant not in catalog:
            raise ValidationError(
                f"unknown mutant {mutant!r} (available: {', '.join(sorted(catalog))})"
            )
        return catalog[mutant]
    return ExternalFunctional(command, ws.cone)


def _samples(ws: Workspace, args) -> SampleSet:
    return SampleSet(
        ws.space,
        ws.cone,
        seed=args.seed,
        count=getattr(args, "sample_count", 20),
        extra_directions=getattr(args, "w_samples", 2),
    )


def _override_schedule(chain, spec: str):
    if spec == "auto" or not isinstance(chain, ParametricChain):
        return chain
    rate = Fraction(spec)

    def schedule(n, w, mu):
        return rate / n

    return ParametricChain(chain.factory, chain.limit, schedule, chain.indices)


def cmd_integrate(ws: Workspace, args) -> int:
    F = ws.setfunction(args.function)
    mu = ws.measure(args.measure)
    res = aumann_integral(F, mu)
    print(f"integral of {args.function} with respect to {args.measure}")
    print(f"value: {res.value.literal()}")
    print(res.certificate_table())
    ok = res.certificate_ok()
    print(f"certificate: {'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_integrate_over(ws: Workspace, args) -> int:
    F = ws.setfunction(args.function)
    mu = ws.measure(args.measure)
    res = integral_over(F, mu, args.atoms)
    subset = "{" + ", ".join(args.atoms) + "}"
    print(f"integral of {args.function} over {subset} with respect to {args.measure}")
    print(f"mass of subset: {format_rational(mu.mass_of(args.atoms))}")
    print(f"value: {res.value.literal()}")
    print(res.certificate_table())
    ok = res.certificate_ok()
    print(f"certificate: {'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_oracle(ws: Workspace, args) -> int:
    F = ws.setfunction(args.function)
    mu = ws.measure(args.measure)
    print(_flags_line(args))
    report = selection_oracle(F, mu, trials=args.trials, seed=args.seed)
    print(report.describe())
    return 0 if report.passed else 1


def cmd_lattice(ws: Workspace, args) -> int:
    names = args.functions
    fs = [ws.setfunction(n) for n in names]
    cone, space = ws.cone, ws.space
    if args.operation == "oplus":
        if len(fs) < 2:
            raise ValidationError("oplus needs at least two set functions")
        out = fs[0]
        for g in fs[1:]:
            out = out.oplus(g)
    elif args.operation == "scale":
        if args.scalar is None or len(fs) != 1:
            raise ValidationError("scale needs --scalar and exactly one set function")
        out = fs[0].scale(Fraction(args.scalar))
    elif args.operation in ("inf", "sup"):
        op = inf_set if args.operation == "inf" else sup_set
        values = tuple(
            op(cone, [f.values[i] for f in fs]) for i in range(len(space))
        )
        out = None
        print(f"pointwise {args.operation} of {', '.join(names)}:")
        for atom, value in zip(space.atoms, values):
            print(f"{atom}: {value.literal()}")
        return 0
    else:
        raise ValidationError(f"unknown lattice operation {args.operation!r}")
    print(f"pointwise {args.operation} of {', '.join(names)}:")
    for atom, value in zip(space.atoms, out.values):
        print(f"{atom}: {value.literal()}")
    return 0


def cmd_chain_check(ws: Workspace, args) -> int:
    chain = _override_schedule(ws.chain(args.chain), args.epsilon_schedule)
    mu = ws.measure(args.measure)
    print(_flags_line(args))
    report = monotone_limit_check(chain, mu)
    print(report.describe())
    return 0 if report.ok else 1


def cmd_check_axioms(ws: Workspace, args) -> int:
    samples = _samples(ws, args)
    phi = _build_functional(ws, args.functional, args)
    try:
        print(_flags_line(args, extra=f"functional={args.functional}"))
        report = run_axiom_checks(phi, samples)
        print(report.describe())
        return 0 if report.passed else 1
    finally:
        phi.close()


def cmd_reconstruct(ws: Workspace, args) -> int:
    samples = _samples(ws, args)
    phi = _build_functional(ws, args.functional, args)
    try:
        print(_flags_line(args, extra=f"functional={args.functional}"))
        report = run_axiom_checks(phi, samples)
        print(report.describe())
        if not report.passed:
            print("reconstruction skipped: axiom checks failed")
            return 1
        rec = reconstruct_measure(phi, ws.space, ws.cone)
        print(rec.describe())
        if not rec.ok:
            return 1
        rep = verify_representation(phi, rec.measure, ws.space, ws.cone, seed=args.seed)
        print(rep.describe())
        return 0 if rep.passed else 1
    finally:
        phi.close()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uppersets",
        description="Exact upper-set calculus, Aumann integration, and the "
        "integral-representation axiom checker.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("workspace", help="workspace file")
        if seed:
            p.add_argument("--seed", type=int, default=0, help="seed for all randomness")

    p = sub.add_parser("integrate", help="Aumann integral of a set function")
    common(p, seed=False)
    p.add_argument("function")
    p.add_argument("measure")
    p.set_defaults(fn=cmd_integrate)

    p = sub.add_parser("integrate-over", help="integral over a subset of atoms")
    common(p, seed=False)
    p.add_argument("function")
    p.add_argument("measure")
    p.add_argument("atoms", nargs="+", help="atoms of the subset (may be empty via --)")
    p.set_defaults(fn=cmd_integrate_over)

    p = sub.add_parser("oracle", help="selection-based cross-check of an integral")
    common(p)
    p.add_argument("function")
    p.add_argument("measure")
    p.add_argument("--trials", type=int, default=1000)
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("lattice", help="pointwise lattice operations")
    common(p, seed=False)
    p.add_argument("operation", choices=["oplus", "scale", "inf", "sup"])
    p.add_argument("functions", nargs="+")
    p.add_argument("--scalar", help="rational factor for scale")
    p.set_defaults(fn=cmd_lattice)

    p = sub.add_parser("chain-check", help="monotone convergence along a chain")
    common(p)
    p.add_argument("chain")
    p.add_argument("measure")
    p.add_argument(
        "--epsilon-schedule",
        default="auto",
        help="'auto' (declared schedule) or a rational r for the bound r/n",
    )
    p.set_defaults(fn=cmd_chain_check)

    for name, fn in (("check-axioms", cmd_check_axioms), ("reconstruct", cmd_reconstruct)):
        p = sub.add_parser(
            name,
            help="run the six-axiom conformance check"
            + ("" if name == "check-axioms" else " and reconstruct the measure"),
        )
        common(p)
        p.add_argument(
            "functional",
            help="workspace functional name, integral:MEASURE, or mutant:NAME:MEASURE",
        )
        p.add_argument("--sample-count", type=int, default=20)
        p.add_argument("--w-samples", type=int, default=2, help="extra random dual directions")
        p.add_argument("--epsilon-schedule", default="auto")
        p.add_argument(
            "--serial-functional",
            action="store_true",
            help="force serialized evaluation (always on in this implementation)",
        )
        p.set_defaults(fn=fn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ws = parse_workspace(args.workspace)
        return args.fn(ws, args)
    except (WorkspaceError, ValidationError, ProtocolError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
