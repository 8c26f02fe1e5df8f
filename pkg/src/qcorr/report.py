"""Correlation report: the full measure table for one scenario stage,
plus JSON/CSV/table rendering.

All numeric output goes through fmt12 (12 significant digits) so that
parsing an emitted report and re-rendering it reproduces the bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .exceptions import ConsistencyError

MARGINAL_KEYS = ("A", "B", "C")
PAIR_KEYS = ("AB", "AC", "BC")
DIRECTIONAL_KEYS = (
    "AB_measureA", "AB_measureB",
    "AC_measureA", "AC_measureC",
    "BC_measureB", "BC_measureC",
)
KW_KEYS = ("ABC", "BCA", "CAB")

BITS_FLOOR = -1e-9
PURITY_TOL = 1e-9


def fmt12(value: float) -> str:
    """Decimal text with 12 significant digits, locale-independent."""
    return format(float(value), ".12g")


def _require_keys(mapping: dict, keys: tuple, what: str):
    if tuple(mapping.keys()) != keys:
        raise ConsistencyError(f"{what} must have keys {keys}, got {tuple(mapping.keys())}")


@dataclass(frozen=True)
class CorrelationReport:
    """Every measure for one stage of a scenario.

    Directional quantities are keyed by pair plus measured subsystem,
    e.g. "AC_measureC" is the pair (A, C) with the measurement on C.
    filter_equivalence_distance is only set on stages produced by a
    filter that was cross-checked against a global-operator route.
    """

    stage: str
    purity: float
    marginal_entropies: dict
    bipartition_entropies: dict
    pairwise_eof: dict
    pairwise_j: dict
    pairwise_discord: dict
    mutual_information_ac: float
    kw_residuals: dict
    filter_equivalence_distance: Optional[float] = None

    def __post_init__(self):
        if self.stage not in ("pre", "post"):
            raise ConsistencyError(f"stage must be 'pre' or 'post', got {self.stage!r}")
        if abs(self.purity - 1.0) > PURITY_TOL:
            raise ConsistencyError(f"report purity {self.purity!r} deviates from 1")
        _require_keys(self.marginal_entropies, MARGINAL_KEYS, "marginal_entropies")
        _require_keys(self.bipartition_entropies, PAIR_KEYS, "bipartition_entropies")
        _require_keys(self.pairwise_eof, PAIR_KEYS, "pairwise_eof")
        _require_keys(self.pairwise_j, DIRECTIONAL_KEYS, "pairwise_j")
        _require_keys(self.pairwise_discord, DIRECTIONAL_KEYS, "pairwise_discord")
        _require_keys(self.kw_residuals, KW_KEYS, "kw_residuals")
        for key, value in self.numeric_items():
            if key == "filter_equivalence_distance":
                continue
            if value < BITS_FLOOR:
                raise ConsistencyError(f"report field {key} = {value!r} below {BITS_FLOOR}")
        if self.filter_equivalence_distance is not None and self.filter_equivalence_distance < 0:
            raise ConsistencyError("equivalence distance cannot be negative")

    def numeric_items(self) -> list:
        """Flat (key, value) pairs in the locked serialization order."""
        items = [("purity", self.purity)]
        items += [(f"entropy_{k}", self.marginal_entropies[k]) for k in MARGINAL_KEYS]
        items += [(f"entropy_{k}", self.bipartition_entropies[k]) for k in PAIR_KEYS]
        items += [(f"eof_{k}", self.pairwise_eof[k]) for k in PAIR_KEYS]
        items += [(f"J_{k}", self.pairwise_j[k]) for k in DIRECTIONAL_KEYS]
        items += [(f"discord_{k}", self.pairwise_discord[k]) for k in DIRECTIONAL_KEYS]
        items.append(("mutual_information_AC", self.mutual_information_ac))
        items += [(f"kw_{k}", self.kw_residuals[k]) for k in KW_KEYS]
        if self.filter_equivalence_distance is not None:
            items.append(("filter_equivalence_distance", self.filter_equivalence_distance))
        return items


def report_json_object(report: CorrelationReport) -> str:
    fields = [f'"stage": {json.dumps(report.stage)}']
    fields += [f'"{key}": {fmt12(value)}' for key, value in report.numeric_items()]
    return "{" + ", ".join(fields) + "}"


def reproduce_json(pre: CorrelationReport, post: CorrelationReport, checks) -> str:
    """One JSON document for a full reproduction run."""
    check_objs = ", ".join(
        "{" + f'"name": {json.dumps(c.name)}, "status": "{"PASS" if c.passed else "FAIL"}", '
        f'"detail": {json.dumps(c.detail)}' + "}"
        for c in checks)
    all_pass = "true" if all(c.passed for c in checks) else "false"
    return ('{"pre": ' + report_json_object(pre)
            + ', "post": ' + report_json_object(post)
            + ', "checks": [' + check_objs + ']'
            + ', "all_pass": ' + all_pass + '}\n')


def reproduce_csv(pre: CorrelationReport, post: CorrelationReport) -> str:
    lines = ["stage,quantity,value"]
    for report in (pre, post):
        for key, value in report.numeric_items():
            lines.append(f"{report.stage},{key},{fmt12(value)}")
    return "\n".join(lines) + "\n"


def report_table(report: CorrelationReport) -> str:
    lines = [f"stage: {report.stage}"]
    width = max(len(k) for k, _ in report.numeric_items())
    for key, value in report.numeric_items():
        lines.append(f"  {key:<{width}}  {fmt12(value)}")
    return "\n".join(lines) + "\n"
