"""Command-line runner: ``dcdeform run|explain|selftest``.

Exit codes: 0 success, 1 math error, 2 job-file error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from dataclasses import dataclass, replace
from importlib import resources
from math import comb
from pathlib import Path

from . import __version__, budget, oracles
from .deform import (
    equisingular_computation,
    hodge_report,
    jacobian_ideal,
    locus_power,
    scaled_partials,
)
from .errors import BudgetExceeded, DeformError, JobParseError, MathError
from .groebner import verify_certificate
from .ideals import Ideal, hilbert_function, ideal_intersection
from .jobs import Job, load_job
from .ring import RingCtx, order_from_name

DEFAULT_BUDGET = 900.0
TIMING_KEYS = ("timings",)

log = logging.getLogger("dcdeform")


@dataclass
class Report:
    """Result of one job: a JSON-able mapping plus a text rendering."""

    data: dict

    def to_json(self, *, timings: bool = True) -> str:
        data = self.data if timings else {k: v for k, v in self.data.items() if k not in TIMING_KEYS}
        return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        d = self.data
        lines = [f"job: {d['job']}"]
        if "h12" in d:
            lines.append(f"h12 = {d['h12']}")
        if d.get("h11") is not None:
            lines.append(f"h11 = {d['h11']}")
        lines.append(f"dim_equisingular = {d['dim_equisingular']}")
        if "dim_transverse" in d:
            lines.append(f"dim_transverse = {d['dim_transverse']}")
        for key in sorted(d.get("notes", {})):
            lines.append(f"  {key}: {d['notes'][key]}")
        if d["per_locus"]:
            lines.append("loci:")
            for L in d["per_locus"]:
                rule = ", ".join(f"{v}->{m}" for v, m in sorted(L["rule"].items())) or "standard"
                lines.append(
                    f"  {L['name']}: multiplicity {L['multiplicity']}, rule {rule}, "
                    f"basis {L['basis_size']}, quotient dim {L['quotient_dimension']}"
                )
        lines.append("timings: " + ", ".join(f"{k}={v}s" for k, v in sorted(d["timings"].items())))
        return "\n".join(lines) + "\n"

    def __getitem__(self, key):
        return self.data[key]


def run_job(path, *, order: str | None = None, symbolic_powers: bool | None = None,
            budget_seconds: float | None = DEFAULT_BUDGET) -> Report:
    job = load_job(path)
    return run_loaded(job, order=order, symbolic_powers=symbolic_powers, budget_seconds=budget_seconds)


def run_loaded(job: Job, *, order: str | None = None, symbolic_powers: bool | None = None,
               budget_seconds: float | None = DEFAULT_BUDGET) -> Report:
    order_name = order or job.options.order
    mo = order_from_name(order_name)
    problem = job.problem
    if symbolic_powers is not None and symbolic_powers != problem.symbolic_powers:
        problem = replace(problem, symbolic_powers=symbolic_powers)
    t0 = time.perf_counter()
    with budget.limit(budget_seconds):
        if problem.ring.n == 4 and problem.degree == 8:
            hr = hodge_report(problem, order=mo, truncate=job.options.truncate)
            data = {
                "h12": hr.h12,
                "dim_equisingular": hr.dim_equisingular,
                "dim_transverse": hr.dim_transverse,
                "per_locus": hr.per_locus,
                "stats": hr.stats,
                "notes": hr.notes,
                "timings": dict(hr.timings),
            }
            if hr.h11 is not None:
                data["h11"] = hr.h11
                data["euler_number"] = hr.euler_number
        else:
            t1 = time.perf_counter()
            eq = equisingular_computation(problem, order=mo, truncate=job.options.truncate)
            d = problem.degree
            data = {
                "dim_equisingular": eq.dimension,
                "per_locus": [s.as_dict() for s in eq.per_locus],
                "stats": dict(eq.stats, monomials_in_degree=comb(d + problem.ring.n - 1, problem.ring.n - 1)),
                "notes": {
                    "dim_equisingular": (
                        f"dim (I_eq/J_F)_{d} = dim(R/J_F)_{d} - dim(R/I_eq)_{d} = "
                        f"{eq.jacobian_quotient} - {eq.equisingular_quotient}"
                        + ("" if problem.loci else "; smooth-branch mode, I_eq=(1)")
                    ),
                    "scope": "Hodge numbers are only assembled for double octics in P^3",
                },
                "timings": {"equisingular_s": round(time.perf_counter() - t1, 3)},
            }
    data["timings"]["total_s"] = round(time.perf_counter() - t0, 3)
    data.update(
        job=job.name,
        order=order_name,
        symbolic_powers=problem.symbolic_powers,
        saturate=problem.saturate,
        metadata=dict(problem.metadata),
        version=__version__,
    )
    return Report(data)


def explain(path) -> str:
    """Dry run: describe the ideals a run would build, without Groebner bases."""
    job = load_job(path)
    p = job.problem
    ring = p.ring
    d = p.degree
    lines = [
        f"job: {job.name}",
        f"ring: Q[{', '.join(ring.variables)}], order {job.options.order}",
        f"branch: degree {d} form with {len(p.branch)} terms",
        f"J_F: {ring.n} partial derivatives of degree {d - 1}",
    ]
    if not p.loci:
        lines.append("smooth-branch mode, I_eq=(1)")
        lines.append(f"dim_equisingular = dim (R/J_F)_{d}")
    else:
        form = "sat(I(C)^m + J_F^rule)" if p.saturate else "I(C)^m + J_F^rule"
        lines.append(f"I_eq = intersection of {len(p.loci)} summand ideals {form}:")
        for L in p.loci:
            scaled_partials(p.branch, L.rule)  # surfaces NotDivisible early
            power = locus_power(p, L)
            kind = "symbolic" if p.symbolic_powers and L.saturate_by is not None else "ordinary"
            rule = ", ".join(f"d/d{v} / {m}" for v, m in L.rule.as_mapping(ring).items()) or "standard Jacobian"
            lines.append(
                f"  {L.name}: {len(L.generators)} generators, multiplicity {L.multiplicity} "
                f"({kind} power, {len(power.generators)} generators), rule: {rule}"
            )
        lines.append(f"dim_equisingular = dim (R/J_F)_{d} - dim (R/I_eq)_{d}")
    if ring.n == 4 and d == 8:
        if p.transverse_curves:
            lines.append("dim_transverse = sum of p_a(C) - nodes(C) over:")
            for c in p.transverse_curves:
                lines.append(f"  {c.name}: {len(c.generators)} generators, {c.node_count} nodes")
        else:
            lines.append("dim_transverse = 0 (no blown-up curves)")
        lines.append("h12 = dim_equisingular + dim_transverse")
        if p.euler_number is not None:
            lines.append(f"h11 = h12 + e/2 with e = {p.euler_number}")
    else:
        lines.append("only dim_equisingular is reported (not a double octic in P^3)")
    return "\n".join(lines) + "\n"


# -- self test ----------------------------------------------------------------------


def fixture_dir() -> Path:
    return Path(str(resources.files("dcdeform") / "fixtures"))


def _check_hf(rng: random.Random) -> bool:
    for _ in range(20):
        n = rng.randint(1, 4)
        ring = RingCtx([f"x{i}" for i in range(n)])
        gens = []
        for _ in range(rng.randint(1, 4)):
            e = [0] * n
            for _ in range(rng.randint(1, 4)):
                e[rng.randrange(n)] += 1
            gens.append(tuple(e))
        I = Ideal([ring.monomial(e) for e in gens], ring)
        for d in range(7):
            if hilbert_function(I, d) != oracles.monomial_quotient_count(gens, n, d):
                return False
    return True


def _random_form(ring: RingCtx, deg: int, rng: random.Random):
    from .ring import monomials_of_degree

    mons = monomials_of_degree(ring, deg)
    f = ring.zero()
    for m in rng.sample(mons, min(3, len(mons))):
        f = f + ring.monomial(m).scale(rng.randint(-3, 3) or 1)
    return f


def _check_intersection(rng: random.Random) -> bool:
    ring = RingCtx("xyz")
    for _ in range(5):
        A = Ideal([_random_form(ring, rng.randint(1, 2), rng) for _ in range(2)], ring)
        B = Ideal([_random_form(ring, rng.randint(1, 2), rng) for _ in range(2)], ring)
        C = ideal_intersection(A, B)
        if not verify_certificate(C.basis()):
            return False
        for d in range(5):
            want = oracles.intersection_dimension([A.generators, B.generators], 3, d)
            if comb(d + 2, 2) - hilbert_function(C, d) != want:
                return False
    return True


def _check_k3() -> bool:
    ring = RingCtx("xyz")
    F = ring.parse("x^6 + y^6 + z^6")
    return hilbert_function(jacobian_ideal(F), 6) == 19


def _check_fermat_oracle() -> bool:
    ring = RingCtx("xyzt")
    F = ring.parse("x^8 + y^8 + z^8 + t^8")
    J = jacobian_ideal(F)
    return hilbert_function(J, 8) == oracles.quotient_dimension(J.generators, 4, 8) == 149


def report_matches(got: dict, want: dict) -> bool:
    """Compare a fresh report with a committed expected report.

    Only the fields present in ``want`` are compared; per-locus entries are
    compared on the fields the expected entry lists.
    """
    for key, value in want.items():
        if key in ("slow", "timings"):
            continue
        if key == "per_locus":
            have = got.get("per_locus", [])
            if len(have) != len(value):
                return False
            if any(h.get(f) != v for h, w in zip(have, value) for f, v in w.items()):
                return False
        elif got.get(key) != value:
            return False
    return True


def _fixture_checks(quick: bool):
    out = []
    for job_path in sorted(fixture_dir().glob("*.job")):
        expected = job_path.with_suffix(".expected.json")
        if not expected.exists():
            continue
        want = json.loads(expected.read_text(encoding="utf-8"))
        if quick and want.get("slow"):
            continue
        try:
            ok = report_matches(run_job(job_path).data, want)
        except DeformError as exc:
            log.error("fixture %s: %s", job_path.name, exc)
            ok = False
        out.append((f"fixture {job_path.stem}", ok))
    return out


def selftest(quick: bool = False, stream=None) -> bool:
    """Run oracle cross-checks and fixture regressions; print one line each."""
    stream = stream or sys.stdout
    rng = random.Random(20240)
    checks = [
        ("Hilbert function vs monomial enumeration", lambda: _check_hf(rng)),
        ("intersection vs graded linear algebra", lambda: _check_intersection(rng)),
        ("K3 double sextic gives 19", _check_k3),
        ("Fermat octic Jacobian quotient vs oracle", _check_fermat_oracle),
    ]
    results = []
    for name, fn in checks:
        try:
            ok = bool(fn())
        except DeformError as exc:
            log.error("%s: %s", name, exc)
            ok = False
        results.append((name, ok))
        print(f"{'PASS' if ok else 'FAIL'}  {name}", file=stream)
    for name, ok in _fixture_checks(quick):
        results.append((name, ok))
        print(f"{'PASS' if ok else 'FAIL'}  {name}", file=stream)
    passed = sum(ok for _, ok in results)
    print(f"{passed}/{len(results)} checks passed", file=stream)
    return passed == len(results)


# -- entry point ---------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dcdeform", description="Deformation counts for double covers.")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a job file")
    run.add_argument("job")
    run.add_argument("--order", choices=["degrevlex", "lex"])
    run.add_argument("--symbolic-powers", action="store_true", default=None)
    run.add_argument("--budget", type=float, default=DEFAULT_BUDGET, metavar="SECONDS")
    run.add_argument("--json", metavar="OUT", help="write the machine report here ('-' for stdout)")
    ex = sub.add_parser("explain", help="describe a job without computing")
    ex.add_argument("job")
    st = sub.add_parser("selftest", help="run oracle and fixture checks")
    st.add_argument("--quick", action="store_true", help="skip slow fixtures")
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "run":
            report = run_job(args.job, order=args.order, symbolic_powers=args.symbolic_powers,
                             budget_seconds=args.budget)
            if args.json == "-":
                sys.stdout.write(report.to_json())
            else:
                if args.json:
                    Path(args.json).write_text(report.to_json(), encoding="utf-8")
                sys.stdout.write(report.to_text())
            return 0
        if args.command == "explain":
            sys.stdout.write(explain(args.job))
            return 0
        return 0 if selftest(quick=args.quick) else 1
    except JobParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except MathError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, DeformError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
