"""JSON matrix interchange and CSV spectra.

One matrix form is shared by every command: {"order": n, "kind": k,
"terms": [...]} with 1-based indices and terms sorted by (row, col).
The kind discriminates the row shape, since rational and complex rows
are both 4-tuples:

    rational  [i, j, num, den]        value num/den
    sqrt      [i, j, sign, num, den]  value sign * sqrt(num/den)
    complex   [i, j, re, im]

The writer picks the narrowest kind that loses nothing; a matrix mixing
plain rationals into sqrt coefficients embeds q as sign(q) sqrt(q^2),
which compares equal to the original. Dumps are byte-stable for exact
scalars: sorted terms, sorted keys, no whitespace variation.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, List, Tuple

from .exactnum import DomainError, SqrtRational, scalar_to_complex
from .hubbard import XSum

KINDS = ("rational", "sqrt", "complex")


def _pick_kind(x: XSum) -> str:
    kind = "rational"
    for _, c in x.items():
        if isinstance(c, (int, Fraction)):
            continue
        if isinstance(c, SqrtRational):
            kind = "sqrt"
        else:
            return "complex"
    return kind


def matrix_to_obj(x: XSum) -> dict:
    kind = _pick_kind(x)
    terms: List[list] = []
    for (i, j), c in x.items():
        if kind == "rational":
            q = Fraction(c)
            terms.append([i, j, q.numerator, q.denominator])
        elif kind == "sqrt":
            s = c if isinstance(c, SqrtRational) else SqrtRational.from_rational(c)
            terms.append(
                [i, j, s.sign, s.radicand.numerator, s.radicand.denominator]
            )
        else:
            z = scalar_to_complex(c)
            terms.append([i, j, z.real, z.imag])
    return {"order": x.order, "kind": kind, "terms": terms}


def matrix_to_json(x: XSum) -> str:
    return json.dumps(matrix_to_obj(x), sort_keys=True, separators=(",", ":"))


def _require(cond: bool, msg: str):
    if not cond:
        raise DomainError(msg)


def matrix_from_obj(obj: object) -> XSum:
    _require(isinstance(obj, dict), "matrix object must be a JSON object")
    _require(
        set(obj) >= {"order", "terms"},
        "matrix object needs 'order' and 'terms'",
    )
    order = obj["order"]
    _require(isinstance(order, int) and order >= 1, "order must be a positive int")
    kind = obj.get("kind", "rational")
    _require(kind in KINDS, f"unknown kind {kind!r}")
    rows = obj["terms"]
    _require(isinstance(rows, list), "'terms' must be a list")
    width = {"rational": 4, "sqrt": 5, "complex": 4}[kind]
    terms = {}
    for row in rows:
        _require(
            isinstance(row, list) and len(row) == width,
            f"{kind} term rows must have {width} entries",
        )
        i, j = row[0], row[1]
        _require(
            isinstance(i, int) and isinstance(j, int)
            and 1 <= i <= order and 1 <= j <= order,
            f"indices ({i},{j}) outside 1..{order}",
        )
        _require((i, j) not in terms, f"duplicate term at ({i},{j})")
        if kind == "rational":
            num, den = row[2], row[3]
            _require(
                isinstance(num, int) and isinstance(den, int) and den != 0,
                "rational terms need integer num/den with den != 0",
            )
            terms[(i, j)] = Fraction(num, den)
        elif kind == "sqrt":
            sign, num, den = row[2], row[3], row[4]
            _require(
                sign in (-1, 0, 1)
                and isinstance(num, int) and isinstance(den, int)
                and den != 0 and Fraction(num, den) >= 0,
                "sqrt terms need sign in {-1,0,1} and a nonnegative radicand",
            )
            terms[(i, j)] = SqrtRational(sign, Fraction(num, den))
        else:
            re, im = row[2], row[3]
            _require(
                isinstance(re, (int, float)) and isinstance(im, (int, float)),
                "complex terms need numeric re/im",
            )
            terms[(i, j)] = complex(re, im)
    return XSum(order, terms)


def matrix_from_json(text: str) -> XSum:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"not valid JSON: {exc}") from exc
    return matrix_from_obj(obj)


def load_matrix(path: str) -> XSum:
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_from_json(fh.read())


def dump_matrix(x: XSum, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(matrix_to_json(x))
        fh.write("\n")


def merge_spectrum(
    values: Iterable[float], tol: float = 1e-9
) -> List[Tuple[float, int]]:
    """Ascending (eigenvalue, multiplicity) pairs, grouping values that
    sit within tol of the first member of their group."""
    out: List[Tuple[float, int]] = []
    anchor = None
    count = 0
    for v in sorted(float(x) for x in values):
        if anchor is not None and v - anchor <= tol:
            count += 1
            continue
        if anchor is not None:
            out.append((anchor, count))
        anchor, count = v, 1
    if anchor is not None:
        out.append((anchor, count))
    return out


def spectrum_to_csv(values: Iterable[float], tol: float = 1e-9) -> str:
    lines = ["eigenvalue,multiplicity"]
    for v, mult in merge_spectrum(values, tol):
        lines.append(f"{v!r},{mult}")
    return "\n".join(lines) + "\n"
