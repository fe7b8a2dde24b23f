"""CSV and JSON encodings for exact rationals and pmf tables.

A rational is written to JSON as ``{"num": 1, "den": 8, "decimal": "0.125"}``.
The ``decimal`` field is a rounded rendering for display only; ``num`` and
``den`` are authoritative.  CSV rows carry the same three fields as the
columns ``numerator,denominator,decimal``.
"""

from __future__ import annotations

import csv
import io
from collections.abc import Iterable, Mapping, Sequence
from decimal import Decimal, localcontext
from fractions import Fraction

from .distribution import ExperimentParams, JointPmfTable

__all__ = [
    "DECIMAL_DIGITS",
    "decimal_string",
    "fraction_from_json",
    "fraction_to_json",
    "joint_table_from_json",
    "joint_table_to_json",
    "records_to_csv",
]

DECIMAL_DIGITS = 20


def decimal_string(x: Fraction | int, digits: int = DECIMAL_DIGITS) -> str:
    """``x`` rounded to ``digits`` significant digits, in positional notation."""
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(x.numerator) / Decimal(x.denominator)
    s = format(d, "f")
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return s


def fraction_to_json(x: Fraction | int) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator, "decimal": decimal_string(x)}


def fraction_from_json(obj: Mapping) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def joint_table_to_json(table: JointPmfTable) -> dict:
    return {
        "kind": "joint",
        "n": table.params.n,
        "pi": fraction_to_json(table.params.pi),
        "entries": [
            {"k": k, "t": t, "value": fraction_to_json(p)} for k, t, p in table.cells()
        ],
        "total": fraction_to_json(table.total()),
    }


def joint_table_from_json(obj: Mapping) -> JointPmfTable:
    params = ExperimentParams(int(obj["n"]), fraction_from_json(obj["pi"]))
    entries = {
        (int(e["k"]), int(e["t"])): fraction_from_json(e["value"]) for e in obj["entries"]
    }
    return JointPmfTable(params, entries)


def records_to_csv(
    keys: Sequence[str], rows: Iterable[tuple[Sequence[object], Fraction]]
) -> str:
    """CSV text with a header row of ``keys`` plus the three rational columns.

    Each row is ``(key_values, value)``.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([*keys, "numerator", "denominator", "decimal"])
    for key_values, value in rows:
        value = Fraction(value)
        writer.writerow(
            [*key_values, value.numerator, value.denominator, decimal_string(value)]
        )
    return buf.getvalue()
