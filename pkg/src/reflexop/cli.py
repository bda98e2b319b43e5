"""Command-line interface.

Exit codes: 0 success, 1 input or domain error, 2 inconclusive verdict
(``analyze``), 3 a checked law failed (``check``).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import fixtures
from .bilattice import (
    BilatticeContext,
    DomainError,
    enumerable_lattices,
    in_Bil,
    phi,
    phi_by_join,
    psi1,
    psi2,
    theta,
    theta_by_join,
)
from .formats import (
    ProblemError,
    ProblemFile,
    dumps,
    load_problem,
    matrix_to_json,
    pair_to_json,
    parse_subspace,
    space_to_json,
    subspace_to_json,
)
from .opspace import check_prop23
from .reflexivity import INCONCLUSIVE, SamplePlan, Verdict, decide_reflexive, theorem_check
from .subspace import ProjectionPair
from .suites import SUITES, SuiteContext, all_passed, run_suite

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE, EXIT_LAW_FAILED = 0, 1, 2, 3


class CliError(Exception):
    pass


def _resolve(source: str) -> ProblemFile:
    path = Path(source)
    if path.exists():
        return load_problem(path)
    if source in fixtures.NAMES:
        return fixtures.load_fixture(source)
    raise CliError(f"no such file or fixture: {source}")


def _plan(problem: ProblemFile, args) -> SamplePlan:
    plan = problem.plan
    seed = plan.seed if args.seed is None else args.seed
    count = plan.random_count if args.samples is None else args.samples
    return SamplePlan(seed=seed, random_count=count)


def verdict_to_json(v: Verdict) -> dict:
    out = {
        "status": v.status,
        "dims": {"m": v.m.dim, "ref_space": v.ref_space.dim},
        "ref_space": space_to_json(v.ref_space),
        "witnesses": [matrix_to_json(w) for w in v.witnesses],
        "provenance": v.provenance,
        "completeness": v.completeness,
        "samples": v.samples,
    }
    if v.bilattice is not None:
        out["bilattice_size"] = len(v.bilattice)
    return out


def analyze(problem: ProblemFile, plan: SamplePlan, max_enum_dim: int = 12, workers: int = 1) -> tuple[dict, Verdict]:
    m = problem.space
    ctx = BilatticeContext.from_space(m)
    verdict = decide_reflexive(m, plan, problem.supplied_lat_a, problem.supplied_lat_b_perp,
                               max_enum_dim=max_enum_dim, workers=workers, ctx=ctx)
    report = {
        "problem": {"name": problem.name, "h1": problem.h1, "h2": problem.h2},
        "m": space_to_json(m),
        "a_algebra": space_to_json(ctx.a_alg),
        "b_algebra": space_to_json(ctx.b_alg),
        "prop23": check_prop23(m, verdict.is_reflexive if m.is_square else None).to_dict(),
        "verdict": verdict_to_json(verdict),
        "theorem_check": theorem_check(m, verdict).to_dict() if verdict.bilattice is not None else None,
    }
    return report, verdict


def _text_analyze(report: dict) -> str:
    v = report["verdict"]
    lines = [
        f"problem      {report['problem']['name'] or '-'} (h1={report['problem']['h1']}, h2={report['problem']['h2']})",
        f"dim M        {report['m']['dim']}",
        f"dim A_M      {report['a_algebra']['dim']}",
        f"dim B_M      {report['b_algebra']['dim']}",
        f"verdict      {v['status']} via {v['provenance']} (completeness: {v['completeness']})",
        f"dim Ref      {v['dims']['ref_space']}",
    ]
    for w in v["witnesses"]:
        lines.append(f"witness      {w}")
    tc = report["theorem_check"]
    if tc is not None:
        lines.append(f"theorem      ii={tc['ii']} iii={tc['iii']} iv={tc['iv']} consistent={tc['consistent_with_verdict']}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    problem = _resolve(args.file)
    report, verdict = analyze(problem, _plan(problem, args), args.max_enum_dim, args.workers)
    sys.stdout.write(dumps(report) if args.format == "json" else _text_analyze(report))
    return EXIT_INCONCLUSIVE if verdict.status == INCONCLUSIVE else EXIT_OK


def cmd_galois(args) -> int:
    problem = _resolve(args.file)
    if args.p is None and args.q is None:
        raise CliError("give --p and/or --q")
    ctx = BilatticeContext.from_space(problem.space)
    lats = None
    if problem.has_supplied_lattices:
        lats = (problem.supplied_lat_a, problem.supplied_lat_b_perp)
    else:
        lats = enumerable_lattices(ctx, args.max_enum_dim)
    out: dict = {"join_route_available": lats is not None}
    disagreements = []
    p = q = None
    if args.p is not None:
        p = parse_subspace(args.p, ctx.h1, "--p")
        if not ctx.in_lat_a(p):
            raise DomainError(f"--p {args.p}: not invariant under A_M (is_invariant failed)")
        fp = phi(p, ctx)
        entry = {"fixpoint": subspace_to_json(fp), "join": None}
        if lats is not None:
            jp = phi_by_join(p, ctx, lats[1])
            entry["join"] = subspace_to_json(jp)
            if jp != fp:
                disagreements.append("phi")
        out["phi"] = entry
        out["theta_phi"] = subspace_to_json(theta(fp, ctx))
    if args.q is not None:
        q = parse_subspace(args.q, ctx.h2, "--q")
        if not ctx.in_lat_b_perp(q):
            raise DomainError(f"--q {args.q}: not invariant under B_M* (is_invariant failed)")
        tq = theta(q, ctx)
        entry = {"fixpoint": subspace_to_json(tq), "join": None}
        if lats is not None:
            jq = theta_by_join(q, ctx, lats[0])
            entry["join"] = subspace_to_json(jq)
            if jq != tq:
                disagreements.append("theta")
        out["theta"] = entry
        out["phi_theta"] = subspace_to_json(phi(tq, ctx))
    if p is not None and q is not None:
        pair = ProjectionPair(p, q)
        out["pair_in_Bil"] = in_Bil(pair, ctx)
        if out["pair_in_Bil"]:
            out["psi1"] = pair_to_json(psi1(pair, ctx))
            out["psi2"] = pair_to_json(psi2(pair, ctx))
    out["disagreements"] = disagreements
    sys.stdout.write(dumps(out))
    if disagreements:
        print(f"error: fixpoint and join routes disagree for {', '.join(disagreements)}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def cmd_check(args) -> int:
    problem = _resolve(args.file)
    sc = SuiteContext.build(problem, args.max_enum_dim, seed=args.seed or 0,
                            random_pairs=args.pairs, plan=_plan(problem, args))
    try:
        results = run_suite(sc, args.suite)
    except KeyError as exc:
        raise CliError(exc.args[0]) from None
    ok = all_passed(results)
    if args.format == "json":
        sys.stdout.write(dumps({"suite": args.suite, "passed": ok, "results": [r.to_dict() for r in results]}))
    else:
        for r in results:
            mark = {True: "PASS", False: "FAIL", None: "SKIP"}[r.passed]
            print(f"{mark} {r.suite}.{r.law} ({r.checked}) {r.detail}".rstrip())
            if r.counterexample is not None:
                print(f"     counterexample: {r.counterexample}")
    return EXIT_OK if ok else EXIT_LAW_FAILED


def cmd_fixtures(args) -> int:
    if args.list:
        if args.format == "json":
            sys.stdout.write(dumps(list(fixtures.NAMES)))
        else:
            print("\n".join(fixtures.NAMES))
        return EXIT_OK
    if args.run:
        if args.run not in fixtures.NAMES:
            raise CliError(f"unknown fixture {args.run!r}")
        args.file = args.run
        return cmd_analyze(args)
    raise CliError("give --list or --run NAME")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--samples", type=int, default=None, help="random sample vectors for the Ref bound (default 100)")
    p.add_argument("--seed", type=int, default=None, help="sampling seed (default 42)")
    p.add_argument("--max-enum-dim", type=int, default=12, help="largest dimension for lattice enumeration")
    p.add_argument("--format", choices=("json", "text"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reflexop", description="Exact reflexivity workbench for spaces of matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="algebras, module identities and reflexivity verdict")
    p.add_argument("file", help="problem JSON file or shipped fixture name")
    p.add_argument("--workers", type=int, default=1, help="processes for the sampling bound")
    _common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("galois", help="evaluate phi/theta/psi on given subspaces")
    p.add_argument("file")
    p.add_argument("--p", help="subspace of H1 (e.g. full, zero, e1+e2, or a JSON basis)")
    p.add_argument("--q", help="subspace of H2")
    _common(p)
    p.set_defaults(func=cmd_galois)

    p = sub.add_parser("check", help="run law suites")
    p.add_argument("file")
    p.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES + ('all',))}")
    p.add_argument("--pairs", type=int, default=200, help="random BIL pairs for lemma31")
    _common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fixtures", help="list or run shipped fixtures")
    p.add_argument("--list", action="store_true")
    p.add_argument("--run", metavar="NAME")
    p.add_argument("--workers", type=int, default=1)
    _common(p)
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ProblemError, CliError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
