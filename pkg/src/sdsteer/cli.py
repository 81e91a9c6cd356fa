"""Command-line front end: ``sdsteer <command> [flags]``.

Every command writes a CSV (default) or JSON table to stdout or ``--out``.
JSON output is a flat list of objects with the same keys as the CSV header.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from . import tables
from .channels import SUPPORTED_SETTINGS, build_bell_diagonal_family, build_family, check_family, design_conditions_check
from .experiment import estimate_eta_by_fidelity, simulate_run
from .protocols import (
    GuessStrategy,
    alice_directions,
    bell_diagonal_bound,
    bell_diagonal_success,
    single_qubit_bound,
    single_qubit_bound_grid_oracle,
    single_qubit_success,
    single_qubit_success_per_gate,
    two_qubit_success,
)
from .quantum import chsh_parameter, werner_state
from .steering import SWEEP_COLUMNS, lhs_bound, rows_to_csv, rows_to_json, sweep_werner
from .waveplates import TOLERANCES, verify_recipes


class CommandError(Exception):
    pass


def parse_settings(text: str) -> list[int]:
    if text == "all":
        return list(SUPPORTED_SETTINGS)
    try:
        n = int(text)
    except ValueError:
        raise CommandError(f"--settings must be an integer or 'all', got {text!r}") from None
    if n not in SUPPORTED_SETTINGS:
        raise CommandError(f"unsupported setting count {n}; choose from {SUPPORTED_SETTINGS} or 'all'")
    return [n]


def parse_grid(text: str) -> list[float]:
    """``start:end:step`` (endpoints inclusive), a comma list, or one number."""
    try:
        if ":" in text:
            parts = [float(p) for p in text.split(":")]
            if len(parts) != 3:
                raise ValueError
            start, end, step = parts
            if step <= 0 or end < start:
                raise ValueError
            span = (end - start) / step
            k = round(span)
            if abs(span - k) * step <= 1e-12:
                values = np.linspace(start, end, k + 1)
            else:
                values = start + step * np.arange(int(np.floor(span)) + 1)
            grid = [float(v) for v in values]
        else:
            grid = [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise CommandError(f"malformed grid {text!r}; use start:end:step, a comma list or a number") from None
    if not grid:
        raise CommandError("empty grid")
    bad = [v for v in grid if not 0.0 <= v <= 1.0]
    if bad:
        raise CommandError(f"grid values must lie in [0, 1], got {bad}")
    return grid


# -- commands ------------------------------------------------------------------

BOUNDS_COLUMNS = ("n", "bound", "grid_oracle", "lhs_bound", "strategy", "probe_x", "probe_y", "probe_z")


def cmd_bounds(settings: Sequence[int]) -> list[dict]:
    rows = []
    for n in settings:
        family = build_family(n)
        res = single_qubit_bound(family)
        probe = res.witness.probe
        rows.append({
            "n": n,
            "bound": res.success_probability,
            "grid_oracle": single_qubit_bound_grid_oracle(family, 10_000),
            "lhs_bound": lhs_bound(n),
            "strategy": str(res.witness.strategy),
            "probe_x": probe[0],
            "probe_y": probe[1],
            "probe_z": probe[2],
        })
    return rows


MC_COLUMNS = ("eta", "n", "total_pairs", "seed", "p_hat", "std_error")


def cmd_werner_sweep(grid: Sequence[float], n: int, pairs: int | None = None, seed: int = 0) -> tuple[list[dict], tuple]:
    rows = [r.row() for r in sweep_werner(grid, n)]
    columns = SWEEP_COLUMNS
    if pairs is not None:
        family = build_family(n)
        for i, row in enumerate(rows):
            est = simulate_run(werner_state(row["eta"]), family, None, pairs, seed + i)
            row["p_hat"] = est.p_hat
            row["std_error"] = est.std_error
        columns = SWEEP_COLUMNS + ("p_hat", "std_error")
    return rows, columns


BELL_COLUMNS = ("tx", "tz", "p_two_qubit", "p_single_bound", "steerable")


def cmd_bell_diagonal(tx: float, tz: float) -> list[dict]:
    try:
        p = bell_diagonal_success(tx, tz).success_probability
    except ValueError as exc:
        raise CommandError(str(exc)) from None
    return [{
        "tx": tx,
        "tz": tz,
        "p_two_qubit": p,
        "p_single_bound": bell_diagonal_bound(),
        "steerable": tx - tz > np.sqrt(2),
    }]


CHSH_COLUMNS = ("eta", "p_two_qubit", "S")


def cmd_chsh(grid: Sequence[float], n: int) -> list[dict]:
    family = build_family(n)
    rows = []
    for eta in grid:
        rho = werner_state(eta)
        rows.append({
            "eta": eta,
            "p_two_qubit": two_qubit_success(rho, family).success_probability,
            "S": chsh_parameter(rho),
        })
    return rows


def cmd_montecarlo(grid: Sequence[float], n: int, pairs: int, seed: int) -> list[dict]:
    if pairs < 1:
        raise CommandError("--pairs must be at least 1")
    family = build_family(n)
    rows = []
    for i, eta in enumerate(grid):
        est = simulate_run(werner_state(eta), family, None, pairs, seed + i)
        rows.append({
            "eta": eta, "n": n, "total_pairs": pairs, "seed": seed + i,
            "p_hat": est.p_hat, "std_error": est.std_error,
        })
    return rows


FIT_COLUMNS = ("eta", "fidelity")


def load_density_matrix(path: str) -> np.ndarray:
    """Read a 4x4 matrix stored as nested lists of numbers or of ``[re, im]`` pairs."""
    with open(path) as fh:
        doc = json.load(fh)
    if isinstance(doc, dict):
        doc = doc.get("rho", doc.get("matrix"))
    arr = np.array(doc, dtype=float)
    if arr.ndim == 3 and arr.shape[-1] == 2:
        arr = arr[..., 0] + 1j * arr[..., 1]
    if arr.shape != (4, 4):
        raise CommandError(f"expected a 4x4 matrix, got shape {arr.shape}")
    return arr.astype(complex)


def cmd_fit_eta(path: str) -> list[dict]:
    try:
        eta, fid = estimate_eta_by_fidelity(load_density_matrix(path))
    except (OSError, ValueError) as exc:
        raise CommandError(str(exc)) from None
    return [{"eta": eta, "fidelity": fid}]


VERIFY_COLUMNS = ("group", "item", "defect", "tolerance", "passed")


def _check(rows, group, item, defect, tol):
    rows.append({"group": group, "item": item, "defect": float(defect), "tolerance": tol, "passed": bool(defect <= tol)})


def _verify_family(rows, n):
    family = build_family(n)
    rep = check_family(family)
    for name, defect in [
        ("completeness", rep.channel.completeness_defect),
        ("unitarity", rep.unitarity_defect),
        ("block_form", rep.block_form_defect),
        ("block_consistency", rep.block_consistency_defect),
        ("kraus", rep.kraus_defect),
        ("factorization", rep.factorization_defect),
        ("gate_unitarity", rep.gate_unitarity_defect),
    ]:
        _check(rows, f"channel n={n}", name, defect, 1e-12)
    _check(rows, f"channel n={n}", "choi_min", max(0.0, -min(rep.channel.subchannel_choi_min)), 1e-10)
    _check(rows, f"channel n={n}", "g1_identity", 0.0 if rep.first_gate_is_identity else 1.0, 0.0)

    exact = {2: (1 + 1 / np.sqrt(2)) / 2, 3: (1 + 1 / np.sqrt(3)) / 2, 4: (1 + 1 / np.sqrt(3)) / 2,
             6: (7 + np.sqrt(5)) / 12, 10: (13 + np.sqrt(5)) / 20}[n]
    bound = single_qubit_bound(family).success_probability
    _check(rows, f"bound n={n}", "exact", abs(bound - exact), 1e-9)
    _check(rows, f"bound n={n}", "threshold", abs(2 * bound - 1 - lhs_bound(n)), 1e-9)

    for row in tables.STRATEGY_TABLES[n]:
        strategy = GuessStrategy.parse(row.strategy)
        probe = np.asarray(row.probe, dtype=float)
        if row.per_gate is not None:
            per_gate = single_qubit_success_per_gate(family, strategy, probe)
            for m, (got, expected) in enumerate(zip(per_gate, row.per_gate)):
                _check(rows, f"strategy table n={n}", f"{row.strategy} m={m + 1}", abs(got - expected), 1e-9)
        got = single_qubit_success(family, strategy, probe)
        _check(rows, f"strategy table n={n}", f"{row.strategy} avg", abs(got - row.average), 1e-9)

    worst = max(
        abs(two_qubit_success(werner_state(eta), family).success_probability - (0.5 + eta / 2))
        for eta in np.linspace(0, 1, 11)
    )
    _check(rows, f"werner n={n}", "linearity", worst, 1e-9)


def _verify_bell_diagonal(rows):
    fam = build_bell_diagonal_family()
    rep = check_family(fam)
    _check(rows, "bell-diagonal", "completeness", rep.channel.completeness_defect, 1e-12)
    _check(rows, "bell-diagonal", "block_consistency", rep.block_consistency_defect, 1e-12)
    _check(rows, "bell-diagonal", "bound", abs(bell_diagonal_bound() - (1 + 1 / np.sqrt(2)) / 2), 1e-9)
    _check(rows, "bell-diagonal", "design_conditions",
           0.0 if design_conditions_check(fam, (0, 0, 1), (1, 0, 0)) else 1.0, 0.0)
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(20):
        tz = rng.uniform(-1, 1)
        half = (1 - tz) / 2  # triangle width at this tz
        tx = rng.uniform(-half, half)
        worst = max(worst, abs(bell_diagonal_success(tx, tz).success_probability - (2 + tx - tz) / 4))
    _check(rows, "bell-diagonal", "closed_form", worst, 1e-10)


def _verify_waveplates(rows, n):
    for gate, dist in verify_recipes(n):
        _check(rows, f"waveplates n={n}", f"g{gate}", dist, TOLERANCES[n])


def cmd_verify(settings: Sequence[int] | None = None, waveplates: Sequence[int] | None = None,
               bell_diagonal: bool = False) -> list[dict]:
    rows: list[dict] = []
    if settings:
        n2 = build_family(2)
        if 2 in settings:
            _check(rows, "channel n=2", "design_conditions",
                   0.0 if design_conditions_check(n2, tables.ALICE_DIRECTIONS[2][(0, 1)],
                                                  tables.ALICE_DIRECTIONS[2][(1, 1)]) else 1.0, 0.0)
        for n in settings:
            _verify_family(rows, n)
    if bell_diagonal:
        _verify_bell_diagonal(rows)
    for n in waveplates or ():
        _verify_waveplates(rows, n)
    return rows


# -- entry point ---------------------------------------------------------------


def _emit(rows, columns, fmt, out):
    text = rows_to_json(rows, columns) if fmt == "json" else rows_to_csv(rows, columns)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sdsteer", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", metavar="PATH")
        return p

    p = common(sub.add_parser("bounds", help="exact and grid-oracle single-qubit bounds"))
    p.add_argument("--settings", default="all")

    p = common(sub.add_parser("werner-sweep", help="success probability and classification over an eta grid"))
    p.add_argument("--eta", required=True)
    p.add_argument("--settings", default="10")
    p.add_argument("--pairs", type=int, help="also emulate counting with this many pairs per point")
    p.add_argument("--seed", type=int, default=0)

    p = common(sub.add_parser("bell-diagonal", help="Bell-diagonal task with ty = tx"))
    p.add_argument("--tx", type=float, required=True)
    p.add_argument("--tz", type=float, required=True)

    p = common(sub.add_parser("chsh", help="CHSH value alongside success probability"))
    p.add_argument("--eta", required=True)
    p.add_argument("--settings", default="10")

    p = common(sub.add_parser("montecarlo", help="Poisson photon-counting emulation"))
    p.add_argument("--eta", required=True)
    p.add_argument("--settings", default="10")
    p.add_argument("--pairs", type=int, default=62_500)
    p.add_argument("--seed", type=int, default=0)

    p = common(sub.add_parser("fit-eta", help="fit a Werner visibility to a JSON density matrix"))
    p.add_argument("path")

    p = common(sub.add_parser("verify", help="run the built-in consistency checks"))
    p.add_argument("--all", action="store_true")
    p.add_argument("--settings")
    p.add_argument("--waveplates")
    p.add_argument("--bell-diagonal", action="store_true")
    return parser


def _single(settings: str) -> int:
    ns = parse_settings(settings)
    if len(ns) != 1:
        raise CommandError("this command needs a single setting count")
    return ns[0]


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "bounds":
            _emit(cmd_bounds(parse_settings(args.settings)), BOUNDS_COLUMNS, args.format, args.out)
        elif args.command == "werner-sweep":
            rows, cols = cmd_werner_sweep(parse_grid(args.eta), _single(args.settings), args.pairs, args.seed)
            _emit(rows, cols, args.format, args.out)
        elif args.command == "bell-diagonal":
            _emit(cmd_bell_diagonal(args.tx, args.tz), BELL_COLUMNS, args.format, args.out)
        elif args.command == "chsh":
            _emit(cmd_chsh(parse_grid(args.eta), _single(args.settings)), CHSH_COLUMNS, args.format, args.out)
        elif args.command == "montecarlo":
            rows = cmd_montecarlo(parse_grid(args.eta), _single(args.settings), args.pairs, args.seed)
            _emit(rows, MC_COLUMNS, args.format, args.out)
        elif args.command == "fit-eta":
            _emit(cmd_fit_eta(args.path), FIT_COLUMNS, args.format, args.out)
        elif args.command == "verify":
            if args.all:
                settings, plates, bd = list(SUPPORTED_SETTINGS), [3, 4, 6, 10], True
            else:
                settings = parse_settings(args.settings) if args.settings else []
                plates = parse_settings(args.waveplates) if args.waveplates else []
                bd = args.bell_diagonal
                if not (settings or plates or bd):
                    raise CommandError("verify needs --all, --settings, --waveplates or --bell-diagonal")
            plates = [n for n in plates if n != 2]
            rows = cmd_verify(settings, plates, bd)
            _emit(rows, VERIFY_COLUMNS, args.format, args.out)
            if not all(r["passed"] for r in rows):
                failed = [f"{r['group']}: {r['item']}" for r in rows if not r["passed"]]
                print(f"verify: {len(failed)} check(s) failed: " + "; ".join(failed), file=sys.stderr)
                return 1
    except CommandError as exc:
        print(f"sdsteer {args.command}: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
