"""Externally cited facts, kept in one record so nothing is hard-coded inline."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class CitedFact:
    value: object
    citation: str


@dataclass(frozen=True)
class CitedConstants:
    # d > 10**d_floor_log10 for the equation n(n+d)...(n+(k-1)d) = b y^l with l >= 11
    d_floor_log10: CitedFact = CitedFact(
        15, "Saradha-Shorey: common difference d > 10^15 when l >= 11")
    # [3,3,p] is solved for primes p up to this cap
    chen_siksek_cap: CitedFact = CitedFact(
        10 ** 9, "Chen-Siksek: x^3 + y^3 = z^p has no primitive non-trivial solutions for p <= 10^9")
    # y-caps for the Goormaghtigh equation with m = 6, keyed by n
    goormaghtigh_y_caps: CitedFact = CitedFact(
        {11: 8, 16: 15}, "Nesterenko-Shorey: m = 6 forces y <= 8 for n = 11 and y <= 15 for n = 16")
    # the n = 4 Goormaghtigh case reduces to a hyperelliptic equation
    hyperelliptic_n4: CitedFact = CitedFact(
        "externally bounded", "Baker: effective bounds for hyperelliptic equations")

    def as_dict(self) -> dict:
        out = {}
        for name in self.__dataclass_fields__:
            fact = getattr(self, name)
            out[name] = {"value": fact.value, "citation": fact.citation}
        return out


CITED = CitedConstants()


def d_floor_log10() -> Fraction:
    return Fraction(CITED.d_floor_log10.value)
