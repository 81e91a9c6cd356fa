"""LHS visibility bounds, Werner-state classification and eta sweeps."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .channels import SUPPORTED_SETTINGS, build_family
from .protocols import single_qubit_bound, two_qubit_success
from .quantum import werner_state

_S5 = np.sqrt(5)

# Werner states at or below this visibility admit a local model for all projective measurements.
BELL_LOCAL_ETA = 0.683
ENTANGLED_ETA = 1 / 3
CHSH_ETA = 1 / np.sqrt(2)

_LHS = {
    2: 1 / np.sqrt(2),
    3: 1 / np.sqrt(3),
    4: 1 / np.sqrt(3),
    6: (1 + _S5) / 6,
    10: (3 + _S5) / 10,
}


def lhs_bound(n: int) -> float:
    """Werner visibility ``eta*_n`` below which ``n`` regular settings cannot demonstrate steering."""
    try:
        return float(_LHS[n])
    except KeyError:
        raise ValueError(f"unsupported setting count n={n!r}; expected one of {SUPPORTED_SETTINGS}") from None


@lru_cache(maxsize=None)
def single_bound(n: int) -> float:
    return single_qubit_bound(build_family(n)).success_probability


@dataclass(frozen=True)
class NonlocalityClass:
    entangled: bool
    steerable: bool
    chsh_violating: bool
    bell_local: bool

    @property
    def separable(self) -> bool:
        return not self.entangled


def _check_eta(eta: float) -> None:
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta must lie in [0, 1], got {eta!r}")


def classify_werner(eta: float, n: int) -> NonlocalityClass:
    """Threshold flags for a Werner state; strict inequalities at every boundary except Bell locality."""
    _check_eta(eta)
    return NonlocalityClass(
        entangled=eta > ENTANGLED_ETA,
        steerable=eta > lhs_bound(n),
        chsh_violating=eta > CHSH_ETA,
        bell_local=eta <= BELL_LOCAL_ETA,
    )


@dataclass(frozen=True)
class SweepRecord:
    eta: float
    n: int
    p_two_qubit: float
    p_single_bound: float
    cls: NonlocalityClass

    def row(self) -> dict:
        return {
            "eta": self.eta,
            "n": self.n,
            "p_two_qubit": self.p_two_qubit,
            "p_single_bound": self.p_single_bound,
            "entangled": self.cls.entangled,
            "steerable": self.cls.steerable,
            "chsh_violating": self.cls.chsh_violating,
            "bell_local": self.cls.bell_local,
        }


SWEEP_COLUMNS = (
    "eta", "n", "p_two_qubit", "p_single_bound",
    "entangled", "steerable", "chsh_violating", "bell_local",
)


def sweep_werner(eta_grid: Iterable[float], n: int) -> list[SweepRecord]:
    family = build_family(n)
    bound = single_bound(n)
    records = []
    for eta in eta_grid:
        eta = float(eta)
        _check_eta(eta)
        p = two_qubit_success(werner_state(eta), family).success_probability
        records.append(SweepRecord(eta, n, p, bound, classify_werner(eta, n)))
    return records


def format_value(v) -> str:
    """Nine significant digits for floats, lowercase booleans."""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.9g}"
    return str(v)


def rows_to_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row[c]) for c in columns])
    return buf.getvalue()


def rows_to_json(rows: Sequence[dict], columns: Sequence[str]) -> str:
    def plain(v):
        if isinstance(v, (bool, np.bool_)):
            return bool(v)
        if isinstance(v, (int, np.integer)):
            return int(v)
        if isinstance(v, (float, np.floating)):
            return float(format_value(v))
        return v

    return json.dumps([{c: plain(r[c]) for c in columns} for r in rows], indent=2) + "\n"


def sweep_to_csv(records: Sequence[SweepRecord]) -> str:
    return rows_to_csv([r.row() for r in records], SWEEP_COLUMNS)
