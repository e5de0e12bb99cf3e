# Copyright 2026 The bnbptas Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Branch-and-bound approximation schemes for knapsack and scheduling.

Instances are plain dicts in the same JSON layout the ``bnbptas`` CLI reads
and writes. Rational outputs come back as :class:`fractions.Fraction`.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Iterable, Mapping, Optional, Union

from . import _bnbptas
from ._bnbptas import DEFAULT_ORACLE_BUDGET, RESULTS_SCHEMA, OracleBudgetExceeded

__all__ = [
    "DEFAULT_ORACLE_BUDGET",
    "RESULTS_SCHEMA",
    "OracleBudgetExceeded",
    "depth_allowance",
    "experiment",
    "generate",
    "left_turn_bound",
    "oracle",
    "solve",
    "summarize",
]

RationalLike = Union[int, str, Fraction]


def _text(value: RationalLike) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def _frac(text: str) -> Fraction:
    return Fraction(text)


def generate(kind: str, n: int, m: int, seed: int = 1) -> dict:
    """Seeded random instance; ``kind`` is knapsack or scheduling-{unrelated,uniform,identical}."""
    return json.loads(_bnbptas.generate(kind, n, m, seed))


def solve(
    instance: Mapping[str, Any],
    *,
    selection: Optional[str] = None,
    branching: Optional[str] = None,
    bounding: Optional[str] = None,
    rounding: Optional[str] = None,
    param: Optional[RationalLike] = None,
    node_limit: int = 10_000,
) -> dict:
    """Runs one strategy; unset tags and ``param`` take the kind's defaults."""
    out = json.loads(
        _bnbptas.solve(
            json.dumps(instance),
            selection,
            branching,
            bounding,
            rounding,
            None if param is None else _text(param),
            node_limit,
        )
    )
    for key in ("param", "value", "global_bound"):
        out[key] = _frac(out[key])
    return out


def oracle(instance: Mapping[str, Any], budget: int = DEFAULT_ORACLE_BUDGET) -> dict:
    """Exact optimum with a witness. Raises OracleBudgetExceeded past ``budget`` states."""
    out = json.loads(_bnbptas.oracle(json.dumps(instance), budget))
    out["optimum"] = _frac(out["optimum"])
    return out


def experiment(config: Mapping[str, Any]) -> list[dict]:
    """Runs a sweep (same keys as the CLI's --config file) and returns the result rows."""
    text = _bnbptas.experiment(json.dumps(dict(config)))
    return _rows(text)


def summarize(rows: Union[str, Iterable[Mapping[str, Any]]]) -> list[dict]:
    """Per-cell geometric means from a results CSV (text) or rows from :func:`experiment`."""
    text = rows if isinstance(rows, str) else _csv(rows)
    return _rows(_bnbptas.summarize(text))


def left_turn_bound(alpha: RationalLike, m: int) -> Fraction:
    return _frac(_bnbptas.left_turn_bound(_text(alpha), m))


def depth_allowance(m: int, eps: RationalLike) -> int:
    return _bnbptas.depth_allowance(m, _text(eps))


def _rows(text: str) -> list[dict]:
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(lines))


def _csv(rows: Iterable[Mapping[str, Any]]) -> str:
    rows = list(rows)
    buffer = io.StringIO()
    buffer.write(f"# schema: {RESULTS_SCHEMA}\n")
    if rows:
        writer = csv.DictWriter(buffer, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buffer.getvalue()
