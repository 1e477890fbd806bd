#!/usr/bin/env python3
"""
Script: qf_verify.py

Batch front end for the foundations checks and the measurement-pattern tools.

Every subcommand writes one Report as canonical JSON (or CSV for table-shaped
results) to stdout or to the --out path. Status lines go to stderr.

Exit codes:
    0  success / verification passed
    1  verification failed (report has "pass": false)
    2  usage error
    3  input validation error (bad file, bad value, violated precondition)

Flag precedence: built-in defaults < --config file (qf-config.jsonc) < explicit flags.

Examples:
    python qf_verify.py scount --field complex --d 4
    python qf_verify.py multiplicativity --field real --da 2 --db 2
    python qf_verify.py zeno --theta 1.5707963 --steps 10 --shots 0
    python qf_verify.py compile circuit.json --pattern-out pattern.json
    python qf_verify.py verify --pattern pattern.json --circuit circuit.json
    python qf_verify.py emulate-channel --channel depolarizing --p 1 --mode measurement_only
"""

import argparse
import math
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

import commentjson
import numpy as np

from constants import (
    EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT, DEFAULT_SCAN_DMAX, DEFAULT_SCAN_NMAX,
    DEFAULT_SEED,
)
from errors import QfError
from foundations import (
    count_parameters, count_table, check_multiplicativity, multiplicativity_grid,
    multiplicative_fields, manifold_dim, check_linear_growth, empirical_manifold_dim,
    LieFamily, FAMILY_NAMES, check_homogeneous, scan_families, expected_families,
    exhaustive_inverse_scan, local_tomography_demo,
)
from matfield import FieldTag, Matrix, diag, identity
from mbqc_channels import (
    KrausSet, EmulationMode, dephasing, depolarizing, amplitude_damping, emulate_channel,
    verify_equivalence,
)
from mbqc_compiler import compile_circuit
from mbqc_simulator import SimulationMode, simulate_pattern
from mbqc_synthesis import cz_count
from qf_configloader import ConfigLoader, QfConfig, Tolerances
from qf_io import (
    load_circuit, load_pattern, load_kraus, parse_jsonc, parse_matrix, pattern_to_dict,
    save_json,
)
from qf_report import Report, report_json, report_csv
from quantum_core import Proposition, continuity_probe
from zeno import plan_for_angle, success_probability, closed_form_success, zeno_bound, \
    run_sampled, steering_sweep, pass_probabilities


class UsageError(Exception):
    """Flag combination that argparse cannot express."""


# tolerance field overridden by --tol, per subcommand
TOL_FIELDS = {
    "scount": "gram_rank",
    "multiplicativity": "gram_rank",
    "manifold": "tangent_rank_ratio",
    "tomography-demo": "predicate",
    "continuity": "predicate",
    "zeno": "identical_endpoints",
    "compile": "choi_distance",
    "run-pattern": "predicate",
    "verify": "choi_distance",
    "emulate-channel": "choi_distance",
}

SEEDED = ("manifold", "continuity", "zeno", "run-pattern", "emulate-channel")

CHANNELS: dict[str, Callable[[float], KrausSet]] = {
    "identity": lambda p: KrausSet.from_ops([identity(2)]),
    "dephasing": dephasing,
    "depolarizing": depolarizing,
    "amplitude_damping": amplitude_damping,
}


def status(message: str) -> None:
    print(message, file=sys.stderr)


def _density(mat: Matrix) -> dict[str, Any]:
    m = mat.to_numpy()
    trace = float(np.trace(m).real)
    purity = float(np.trace(m @ m).real) / (trace * trace) if trace > 0.0 else 0.0
    return {"dim": mat.rows, "matrix": mat, "trace": trace, "purity": purity}


# ===== foundations =====

def cmd_scount(args, tol: Tolerances) -> Report:
    if args.dmax is not None:
        fields = list(FieldTag) if args.field == "all" else [FieldTag(args.field)]
        rows = [{"field": r.field.value, "d": r.d, "s": r.s, "basis_size": r.basis_size,
                 "rank_certified": r.rank_certified}
                for r in count_table(args.dmax, fields, tol)]
        return Report("scount", {"field": args.field, "dmax": args.dmax}, {"rows": rows},
                      passed=all(r["rank_certified"] for r in rows))
    if args.field == "all":
        raise UsageError("--field all needs --dmax")
    r = count_parameters(FieldTag(args.field), args.d, tol)
    return Report("scount", {"field": args.field, "d": args.d},
                  {"s": r.s, "basis_size": r.basis_size, "rank_certified": r.rank_certified},
                  passed=r.rank_certified)


def cmd_multiplicativity(args, tol: Tolerances) -> Report:
    if args.grid:
        grid = multiplicativity_grid(args.dims, tuple(FieldTag), tol)
        rows = [{"field": c.field.value, "da": c.da, "db": c.db, "lhs": c.lhs, "rhs": c.rhs,
                 "pass": c.passed} for c in grid]
        passing = [f.value for f in multiplicative_fields(grid)]
        return Report("multiplicativity", {"grid": True, "dims": list(args.dims)},
                      {"rows": rows, "multiplicative_fields": passing},
                      passed=passing == [FieldTag.COMPLEX.value])
    c = check_multiplicativity(FieldTag(args.field), args.da, args.db, tol)
    return Report("multiplicativity", {"field": args.field, "da": args.da, "db": args.db},
                  {"lhs": c.lhs, "rhs": c.rhs}, passed=c.passed)


def cmd_manifold(args, tol: Tolerances) -> Report:
    field_tag = FieldTag(args.field)
    report = manifold_dim(field_tag, args.d)
    growth = check_linear_growth(field_tag, args.dmax)
    results: dict[str, Any] = {"dim_x": report.dim_x, "linear_growth": growth}
    passed = growth and report.dim_x > 0
    seed = None
    if args.empirical:
        seed = args.seed
        estimate = empirical_manifold_dim(args.d, args.samples, args.seed, field_tag, tol=tol)
        results["empirical_dim"] = estimate
        passed = passed and estimate == report.dim_x
    params = {"field": args.field, "d": args.d, "dmax": args.dmax, "empirical": args.empirical,
              "samples": args.samples}
    return Report("manifold", params, results, seed=seed, passed=passed)


def _family_entry(family: LieFamily) -> dict[str, Any]:
    return {"name": family.name, "multiplier": family.multiplier, "label": str(family)}


def cmd_scan_families(args, tol: Tolerances) -> Report:
    if args.exhaustive:
        found = exhaustive_inverse_scan(args.x2max, args.g1max, args.dmax, args.nmax)
        expected = {key: value for key, value in expected_families(args.nmax).items()
                    if key[0] <= args.x2max and key[1] <= args.g1max}
        rows = [{"x2": x2, "g1": g1, "matches": " ".join(str(f) for f in found[(x2, g1)])}
                for x2, g1 in sorted(found)]

        def as_sets(scan):
            return {k: {(f.name, f.multiplier) for f in v} for k, v in scan.items()}

        params = {"exhaustive": True, "x2max": args.x2max, "g1max": args.g1max,
                  "dmax": args.dmax, "nmax": args.nmax}
        return Report("scan-families", params, {"rows": rows},
                      passed=as_sets(found) == as_sets(expected))
    if args.x2 is None or args.g1 is None:
        raise UsageError("--x2 and --g1 are required unless --exhaustive is given")
    result = scan_families(args.x2, args.g1, args.dmax, args.nmax)
    params = {"x2": args.x2, "g1": args.g1, "dmax": args.dmax, "nmax": args.nmax}
    return Report("scan-families", params,
                  {"matches": [_family_entry(f) for f in result.matches]})


def cmd_homogeneous(args, tol: Tolerances) -> Report:
    family = LieFamily(args.family, args.n)
    holds = check_homogeneous(family, args.x2, args.g1, args.dmax)
    params = {"family": args.family, "n": args.n, "x2": args.x2, "g1": args.g1, "dmax": args.dmax}
    return Report("homogeneous", params,
                  {"family": _family_entry(family), "holds": holds}, passed=holds)


def cmd_tomography_demo(args, tol: Tolerances) -> Report:
    demo = local_tomography_demo(tol)
    results = {
        "local_gap": demo.local_gap,
        "global_gap": demo.global_gap,
        "trace_distance": demo.trace_distance,
        "rho_plus": demo.rho_plus.mat,
        "rho_minus": demo.rho_minus.mat,
        "witness": demo.witness,
    }
    passed = (demo.local_gap <= tol.predicate
              and abs(demo.global_gap - 2.0) <= tol.predicate
              and abs(demo.trace_distance - 1.0) <= tol.predicate)
    return Report("tomography-demo", {}, results, passed=passed)


# ===== quantum core & zeno =====

def cmd_continuity(args, tol: Tolerances) -> Report:
    if not 1 <= args.x_rank <= args.d:
        raise UsageError(f"--x-rank must be in 1..{args.d}")
    e0 = Proposition.basis(args.d, 0)
    x = Proposition.from_matrix(diag([1.0] * args.x_rank + [0.0] * (args.d - args.x_rank)), tol)
    rows = [row._asdict() for row in
            continuity_probe(e0, x, args.deltas, args.samples, args.seed, tol)]
    params = {"d": args.d, "deltas": list(args.deltas), "samples": args.samples,
              "x_rank": args.x_rank}
    return Report("continuity", params, {"rows": rows}, seed=args.seed,
                  passed=all(r["ok"] for r in rows))


def cmd_zeno(args, tol: Tolerances) -> Report:
    params: dict[str, Any] = {"theta": args.theta, "steps": args.steps, "shots": args.shots}
    if args.sweep:
        params["sweep"] = list(args.sweep)
        rows = [row._asdict() for row in steering_sweep(args.theta, args.sweep, tol)]
        return Report("zeno", params, {"rows": rows}, passed=all(r["ok"] for r in rows))

    plan = plan_for_angle(args.theta, args.steps, tol)
    exact = success_probability(plan)
    closed = closed_form_success(plan.theta, plan.n_steps)
    bound = zeno_bound(plan.theta, plan.n_steps)
    results: dict[str, Any] = {"theta": plan.theta, "exact": exact, "closed_form": closed,
                               "step_pass": pass_probabilities(plan, tol),
                               "bound": bound}
    passed = exact >= bound - 1e-12 and abs(exact - closed) <= 1e-12
    seed = None
    if args.shots > 0:
        seed = args.seed
        sampled = run_sampled(plan, args.shots, args.seed, tol)
        band = 5.0 * math.sqrt(exact * (1.0 - exact) / args.shots)
        within = abs(sampled.frequency - exact) <= max(band, 0.5 / args.shots)
        results.update({"successes": sampled.sampled_successes, "frequency": sampled.frequency,
                        "band": band, "within_band": within})
        passed = passed and within
    return Report("zeno", params, results, seed=seed, passed=passed)


# ===== mbqc =====

def cmd_compile(args, tol: Tolerances) -> Report:
    circuit = load_circuit(args.circuit, tol)
    pattern = compile_circuit(circuit, tol)
    results: dict[str, Any] = {
        "nodes": len(pattern.nodes),
        "measurements": pattern.n_measurements,
        "pattern": pattern_to_dict(pattern),
    }
    passed = None
    if args.pattern_out:
        save_json(pattern_to_dict(pattern), args.pattern_out)
        status(f"✅ Pattern written: {args.pattern_out}")
    if args.check:
        check = verify_equivalence(pattern, circuit, tol)
        results["choi_distance"] = check.choi_distance
        passed = check.passed
    params = {"circuit": Path(args.circuit).name, "check": args.check}
    return Report("compile", params, results, passed=passed)


def _input_state(args, n_inputs: int) -> np.ndarray:
    dim = 2 ** n_inputs
    if args.ket is not None:
        return parse_matrix(parse_jsonc(args.ket), dim, 1, "ket").to_numpy().reshape(-1)
    if not 0 <= args.basis < dim:
        raise UsageError(f"--basis must be in 0..{dim - 1}")
    v = np.zeros(dim, dtype=np.complex128)
    v[args.basis] = 1.0
    return v


def cmd_run_pattern(args, tol: Tolerances) -> Report:
    pattern = load_pattern(args.pattern)
    state = _input_state(args, len(pattern.inputs))
    params: dict[str, Any] = {"pattern": Path(args.pattern).name, "mode": args.mode,
                              "basis": args.basis, "ket": args.ket}
    mode = SimulationMode(args.mode)

    if mode is SimulationMode.AVERAGE:
        rho = simulate_pattern(pattern, state, mode, tol=tol)
        return Report("run-pattern", params, _density(rho.mat))

    if mode is SimulationMode.BRANCH:
        bits = [int(b) for b in args.outcomes] if args.outcomes else None
        params["outcomes"] = args.outcomes
        branch = simulate_pattern(pattern, state, mode, outcomes=bits, tol=tol)
        results = {"state": Matrix.ket(branch.state), "probability": branch.probability,
                   "outcomes": {str(n): b for n, b in branch.outcomes.items()}}
        return Report("run-pattern", params, results)

    params["shots"] = args.shots
    sampled = simulate_pattern(pattern, state, mode, seed=args.seed, shots=args.shots, tol=tol)
    counts: dict[str, int] = {}
    for row in sampled.outcomes:
        key = "".join(str(int(b)) for b in row)
        counts[key] = counts.get(key, 0) + 1
    mixture = sampled.states.T @ sampled.states.conj() / args.shots
    results = {"measured": list(sampled.measured), "counts": counts, **_density(Matrix(mixture))}
    return Report("run-pattern", params, results, seed=args.seed)


def cmd_verify(args, tol: Tolerances) -> Report:
    pattern = load_pattern(args.pattern)
    circuit = load_circuit(args.circuit, tol)
    check = verify_equivalence(pattern, circuit, tol)
    params = {"pattern": Path(args.pattern).name, "circuit": Path(args.circuit).name,
              "threshold": tol.choi_distance}
    return Report("verify", params, {"choi_distance": check.choi_distance}, passed=check.passed)


def cmd_emulate_channel(args, tol: Tolerances) -> Report:
    if args.kraus:
        kraus = load_kraus(args.kraus, tol)
        source = {"kraus": Path(args.kraus).name}
    else:
        kraus = CHANNELS[args.channel](args.p)
        source = {"channel": args.channel, "p": args.p}
    mode = EmulationMode(args.mode)
    shots = args.shots if mode is EmulationMode.MEASUREMENT_ONLY else 0
    result = emulate_channel(kraus, mode, shots, args.seed, tol)

    results: dict[str, Any] = {
        "ancillas": result.ancillas,
        "kraus_ops": len(kraus.ops),
        "choi": result.choi.mat,
        "target": result.target.mat,
        "choi_distance": result.choi_distance,
    }
    passed = result.passed
    if result.pattern is not None:
        results["measurements"] = result.pattern.n_measurements
        results["cz_gates"] = cz_count(result.circuit)
        if args.pattern_out:
            save_json(pattern_to_dict(result.pattern), args.pattern_out)
            status(f"✅ Pattern written: {args.pattern_out}")
    if result.sampled_distance is not None:
        results["sampled_distance"] = result.sampled_distance
        passed = passed and result.sampled_distance <= args.sample_tol
    params = {**source, "mode": mode.value, "shots": shots, "sample_tol": args.sample_tol}
    return Report("emulate-channel", params, results,
                  seed=args.seed if shots > 0 else None, passed=passed)


HANDLERS: dict[str, Callable[[argparse.Namespace, Tolerances], Report]] = {
    "scount": cmd_scount,
    "multiplicativity": cmd_multiplicativity,
    "manifold": cmd_manifold,
    "scan-families": cmd_scan_families,
    "homogeneous": cmd_homogeneous,
    "tomography-demo": cmd_tomography_demo,
    "continuity": cmd_continuity,
    "zeno": cmd_zeno,
    "compile": cmd_compile,
    "run-pattern": cmd_run_pattern,
    "verify": cmd_verify,
    "emulate-channel": cmd_emulate_channel,
}


# ===== argument parsing =====

def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--out', default=None, help='Write the report here instead of stdout')
    common.add_argument('--format', choices=['json', 'csv'], default='json',
                        help='Report format; csv only for table-shaped results (default: json)')
    common.add_argument('--config', default=None,
                        help='qf-config.jsonc with tolerances and flag defaults')

    parser = argparse.ArgumentParser(
        description='Verify the foundations claims and emulate processes by measurements',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="Examples:" + __doc__.split("Examples:")[1],
    )
    subparsers = parser.add_subparsers(dest='command', required=True, metavar='COMMAND')
    subs: dict[str, argparse.ArgumentParser] = {}

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, parents=[common], help=help_text, description=help_text)
        if name in SEEDED:
            sub.add_argument('--seed', type=int, default=DEFAULT_SEED,
                             help=f'Random seed (default: {DEFAULT_SEED})')
        if name in TOL_FIELDS:
            sub.add_argument('--tol', type=float, default=None,
                             help=f'Override tolerances.{TOL_FIELDS[name]}')
        subs[name] = sub
        return sub

    fields = [f.value for f in FieldTag]

    sub = add('scount', 'S(d): size of a rank-certified basis of self-adjoint matrices')
    sub.add_argument('--field', choices=fields + ['all'], default='complex')
    sub.add_argument('--d', type=int, default=2, help='Dimension (default: 2)')
    sub.add_argument('--dmax', type=int, default=None, help='Tabulate d = 1..dmax instead')

    sub = add('multiplicativity', 'Compare S(da*db) with S(da)*S(db)')
    sub.add_argument('--field', choices=fields, default='complex')
    sub.add_argument('--da', type=int, default=2)
    sub.add_argument('--db', type=int, default=2)
    sub.add_argument('--grid', action='store_true',
                     help='Check every field over all (da, db) pairs from --dims')
    sub.add_argument('--dims', type=int, nargs='+', default=[2, 3, 4])

    sub = add('manifold', 'Dimension of the manifold of most accurate propositions')
    sub.add_argument('--field', choices=fields, default='complex')
    sub.add_argument('--d', type=int, default=2)
    sub.add_argument('--dmax', type=int, default=16, help='Linear growth checked up to here')
    sub.add_argument('--empirical', action='store_true',
                     help='Also estimate the tangent dimension numerically (complex only)')
    sub.add_argument('--samples', type=int, default=64, help='Random curves for --empirical')

    sub = add('scan-families', 'Lie families whose dimensions follow the quadratic form')
    sub.add_argument('--x2', type=int, default=None, help='dim X(2)')
    sub.add_argument('--g1', type=int, default=None, help='dim G(1)')
    sub.add_argument('--dmax', type=int, default=DEFAULT_SCAN_DMAX)
    sub.add_argument('--nmax', type=int, default=DEFAULT_SCAN_NMAX)
    sub.add_argument('--exhaustive', action='store_true',
                     help='Scan every (x2, g1) up to --x2max/--g1max and compare with SO/U/Sp')
    sub.add_argument('--x2max', type=int, default=9)
    sub.add_argument('--g1max', type=int, default=10)

    sub = add('homogeneous', 'dim X(d) = dim G(d) - dim G(d-1) - dim G(1)')
    sub.add_argument('--family', choices=FAMILY_NAMES, required=True)
    sub.add_argument('--n', type=int, default=1, help='Multiplier n in G(n*d)')
    sub.add_argument('--x2', type=int, required=True)
    sub.add_argument('--g1', type=int, required=True)
    sub.add_argument('--dmax', type=int, default=16)

    add('tomography-demo', 'Two real states that local real observables cannot tell apart')

    sub = add('continuity', 'Minimum of prob(x|e) over metric balls around e0')
    sub.add_argument('--d', type=int, default=2)
    sub.add_argument('--deltas', type=float, nargs='+', default=[0.3, 0.1, 0.03])
    sub.add_argument('--samples', type=int, default=1000)
    sub.add_argument('--x-rank', type=int, default=1,
                     help='x projects onto the first x-rank basis states (contains e0)')

    sub = add('zeno', 'Steering |0> by N projective measurements')
    sub.add_argument('--theta', type=float, default=math.pi / 2.0)
    sub.add_argument('--steps', type=int, default=10)
    sub.add_argument('--shots', type=int, default=0, help='Sampled runs; 0 skips sampling')
    sub.add_argument('--sweep', type=int, nargs='+', default=None,
                     help='Tabulate exact success against the bound for these step counts')

    sub = add('compile', 'Compile a circuit file to a measurement pattern')
    sub.add_argument('circuit', help='Circuit JSON file')
    sub.add_argument('--pattern-out', default=None, help='Also write the pattern JSON here')
    sub.add_argument('--check', action='store_true',
                     help='Verify the pattern against the circuit by Choi distance')

    sub = add('run-pattern', 'Simulate a pattern file')
    sub.add_argument('pattern', help='Pattern JSON file')
    sub.add_argument('--mode', choices=[m.value for m in SimulationMode], default='average')
    sub.add_argument('--outcomes', default='', help='Branch outcome bits in measurement order, e.g. 0110')
    sub.add_argument('--shots', type=int, default=1)
    sub.add_argument('--basis', type=int, default=0, help='Computational-basis input index')
    sub.add_argument('--ket', default=None, help='Input amplitudes as JSON [[re, im], ...]')

    sub = add('verify', 'Compare a pattern with a circuit by Choi distance')
    sub.add_argument('--pattern', required=True)
    sub.add_argument('--circuit', required=True)

    sub = add('emulate-channel', 'Emulate a qubit channel through its dilation')
    source = sub.add_mutually_exclusive_group(required=True)
    source.add_argument('--kraus', help='Kraus JSON file')
    source.add_argument('--channel', choices=sorted(CHANNELS))
    sub.add_argument('--p', type=float, default=1.0, help='Channel parameter for --channel')
    sub.add_argument('--mode', choices=[m.value for m in EmulationMode], default='exact')
    sub.add_argument('--shots', type=int, default=0,
                     help='Sampled shots in measurement_only mode; 0 skips sampling')
    sub.add_argument('--sample-tol', type=float, default=0.02,
                     help='Largest accepted Choi distance of the sampled estimate')
    sub.add_argument('--pattern-out', default=None, help='Write the measurement pattern here')

    return parser, subs


def load_config(argv: Sequence[str]) -> QfConfig:
    """Read --config ahead of the real parse so its defaults sit under explicit flags."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument('--config', default=None)
    known, _ = pre.parse_known_args(argv)
    if known.config is None:
        return QfConfig()
    return ConfigLoader.load_from_file(known.config)


def write_report(report: Report, fmt: str, out: Optional[str]) -> None:
    if fmt == 'csv':
        if report.table() is None:
            raise UsageError(f"{report.experiment} has no table-shaped result; use --format json")
        text = report_csv(report)
    else:
        text = report_json(report)
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding='utf-8')
        status(f"✅ Report written: {path}")
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for qf_verify; returns the exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subs = build_parser()

    try:
        config = load_config(argv)
    except FileNotFoundError as e:
        status(f"❌ ERROR: Config file not found: {e.filename}")
        return EXIT_INPUT
    except (commentjson.JSONLibraryException, AttributeError, TypeError, ValueError) as e:
        status(f"❌ ERROR: Invalid config file: {e}")
        return EXIT_INPUT

    for name, sub in subs.items():
        sub.set_defaults(**config.defaults_for(name))

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS

    tol = config.tolerances
    if getattr(args, 'tol', None) is not None:
        tol = replace(tol, **{TOL_FIELDS[args.command]: args.tol})

    try:
        report = HANDLERS[args.command](args, tol)
        write_report(report, args.format, args.out)
    except UsageError as e:
        status(f"❌ ERROR: {e}")
        return EXIT_USAGE
    except FileNotFoundError as e:
        status(f"❌ ERROR: File not found: {e.filename}")
        return EXIT_INPUT
    except (QfError, ValueError) as e:
        status(f"❌ ERROR: {type(e).__name__}: {e}")
        return EXIT_INPUT

    if report.passed is False:
        status(f"❌ {report.experiment}: verification failed")
        return EXIT_FAIL
    if report.passed is True:
        status(f"✅ {report.experiment}: pass")
    else:
        status(f"✅ {report.experiment}: done")
    return EXIT_PASS


if __name__ == '__main__':
    sys.exit(main())
