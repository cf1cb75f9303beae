"""Exact machine-readable output: value strings, verification reports,
and their JSON/CSV renderings.

Every number is rendered exactly: integers as decimal strings, rationals
as "p/q", and cyclotomic values as their coordinate vector over the power
basis of Q(zeta_e) in the form "c0;c1;...@zeta_e" (semicolons keep the
strings CSV-safe).  No floats anywhere.
"""

import json
from fractions import Fraction

from .cyclotomic import CycElt


def value_to_string(v):
    """Exact string form of an int, Fraction, or CycElt."""
    if isinstance(v, CycElt):
        return ";".join(_frac_str(c) for c in v.co) + f"@zeta_{v.e}"
    return _frac_str(v)


def _frac_str(v):
    f = Fraction(v)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def mismatch_rows(mismatches):
    """Normalize (n, lhs, rhs) triples to (int, str, str)."""
    return [(int(n), value_to_string(a), value_to_string(b)) for n, a, b in mismatches]


class VerifyReport:
    """Outcome of one identity verification run."""

    __slots__ = ("identity", "N", "mismatches", "wall", "workers")

    def __init__(self, identity, N, mismatches, wall=0.0, workers=1):
        self.identity = identity
        self.N = N
        self.mismatches = list(mismatches)
        self.wall = wall
        self.workers = workers

    @property
    def status(self):
        return "pass" if not self.mismatches else "fail"

    def to_json(self):
        payload = {
            "identity": self.identity,
            "N": self.N,
            "status": self.status,
            "mismatches": [
                {"n": n, "lhs": lhs, "rhs": rhs} for n, lhs, rhs in self.mismatches
            ],
        }
        return json.dumps(payload) + "\n"

    def to_csv(self):
        lines = ["n,lhs,rhs"]
        for n, lhs, rhs in self.mismatches:
            lines.append(f"{n},{lhs},{rhs}")
        return "\n".join(lines) + "\n"


def table_to_csv(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def table_to_json(payload):
    return json.dumps(payload) + "\n"
