"""Decomposition reports, Euler-characteristic identities, built-in examples.

The duality theorem decomposes both intersections into ambient box terms and
a shared primitive part: the T-side intersection lists ``A_k [x] D^k`` at
twist ``k`` for ``k = 1..i-1``, the S-side lists ``B^k [x] C^L_k`` at twist
``k+1-l`` for ``k = 1..l-1``, and the two primitive parts are equivalent.
On Euler characteristics this shadow is exact: Hochschild Euler numbers are
additive over semiorthogonal decompositions and multiplicative over exterior
products, giving the intersection-pairing identity

    chi(X_T) - chi(X) chi(T) / N  =  chi(Y_S) - chi(Y) chi(S) / N.

All arithmetic is exact rational; nothing is floated.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .profiles import (
    DualProfile,
    LefschetzProfile,
    euler_ambient,
    euler_total,
    profile_from_json,
    validate_profile,
)

CHI_E = "chi(E)"


@dataclass(frozen=True)
class ReportComponent:
    description: str
    euler: int | str  # an integer, or the shared unknown CHI_E


@dataclass(frozen=True)
class DecompositionReport:
    """Ordered component list for one of the four categories in the theorem."""

    target: str  # "Y" | "T" | "XT" | "YS"
    components: tuple[ReportComponent, ...]
    omitted: int  # zero box terms suppressed from the listing

    @property
    def has_primitive_part(self) -> bool:
        return any(c.euler == CHI_E for c in self.components)

    @property
    def ambient_euler(self) -> int:
        return sum(c.euler for c in self.components if isinstance(c.euler, int))

    def total_euler(self) -> str:
        """Total as an affine expression in the shared unknown."""
        const = self.ambient_euler
        if self.has_primitive_part:
            return f"{CHI_E} + {const}" if const else CHI_E
        return str(const)

    def lines(self) -> list[str]:
        out = [f"D({self.target}) components:"]
        for c in self.components:
            out.append(f"  {c.description}   chi = {c.euler}")
        if self.omitted:
            out.append(f"  ({self.omitted} zero terms omitted)")
        out.append(f"  total: {self.total_euler()}")
        return out


def _chi_descending(p: LefschetzProfile, k: int) -> int:
    """Euler characteristic of the k-th descending component (blocks j >= k)."""
    return sum(e for j, e in enumerate(p.e_vector) if j >= k)


def _chi_dual_block(p: LefschetzProfile, k: int) -> int:
    """Euler characteristic of the k-th complementary box (blocks j < min(k, i))."""
    return sum(e for j, e in enumerate(p.e_vector) if j < min(k, p.length))


def dual_report(p: LefschetzProfile, target: str = "Y") -> DecompositionReport:
    """The complementary-box decomposition of the dual, component by component."""
    dp = DualProfile(p)
    comps = []
    omitted = 0
    for k in range(1, p.N):
        if dp.is_zero(k):
            omitted += 1
            continue
        letter = "B" if target == "Y" else "D"
        comps.append(
            ReportComponent(f"{letter}^{k}({k + 1 - p.N})", _chi_dual_block(p, k))
        )
    return DecompositionReport(target, tuple(comps), omitted)


def intersect_decompositions(
    pX: LefschetzProfile, pS: LefschetzProfile
) -> tuple[DecompositionReport, DecompositionReport]:
    """Ambient terms of both intersection categories, plus the shared unknown."""
    for p in (pX, pS):
        report = validate_profile(p)
        if not report.valid:
            raise ValueError(f"invalid profile {p.name!r}")
    if pX.N != pS.N:
        raise ValueError("profiles must share the ambient dimension N")
    i, l = pX.length, pS.length
    dS, dX = DualProfile(pS), DualProfile(pX)

    xt_comps = [ReportComponent("E", CHI_E)]
    xt_omitted = 0
    for k in range(1, i):
        chi_a = _chi_descending(pX, k)
        a_zero = all(pX.block_is_zero(j) for j in range(k, i))
        if a_zero or dS.is_zero(k):
            xt_omitted += 1
            continue
        xt_comps.append(
            ReportComponent(f"A_{k}*D^{k} ({k})", chi_a * _chi_dual_block(pS, k))
        )

    ys_comps = []
    ys_omitted = 0
    for k in range(1, l):
        chi_c = _chi_descending(pS, k)
        c_zero = all(pS.block_is_zero(j) for j in range(k, l))
        if c_zero or dX.is_zero(k):
            ys_omitted += 1
            continue
        ys_comps.append(
            ReportComponent(
                f"B^{k}*C^L_{k} ({k + 1 - l})", _chi_dual_block(pX, k) * chi_c
            )
        )
    ys_comps.append(ReportComponent("E", CHI_E))

    return (
        DecompositionReport("XT", tuple(xt_comps), xt_omitted),
        DecompositionReport("YS", tuple(ys_comps), ys_omitted),
    )


def plucker_check(
    chiX: int,
    chiY: int,
    chiS: int,
    chiT: int,
    chiXT: int,
    chiYS: int,
    N: int,
) -> tuple[bool, Fraction, Fraction]:
    """Exact check of the intersection-pairing identity; returns both sides."""
    if N <= 0:
        raise ValueError("N must be positive")
    left = Fraction(chiXT) - Fraction(chiX * chiT, N)
    right = Fraction(chiYS) - Fraction(chiY * chiS, N)
    return (left == right, left, right)


def plucker_predict(
    pX: LefschetzProfile, pS: LefschetzProfile, chiXT: int
) -> Fraction:
    """Predicted chi of the S-side intersection from the profiles and chi(X_T)."""
    if pX.N != pS.N:
        raise ValueError("profiles must share the ambient dimension N")
    N = pX.N
    chiX, chiS = euler_total(pX), euler_total(pS)
    chiY = N * euler_ambient(pX) - chiX
    chiT = N * euler_ambient(pS) - chiS
    out = Fraction(chiXT) - Fraction(chiX * chiT, N) + Fraction(chiY * chiS, N)
    if out.denominator != 1:
        warnings.warn(
            f"predicted intersection Euler characteristic {out} is not an integer",
            stacklevel=2,
        )
    return out


def euler_H_consistency(
    pX: LefschetzProfile, pS: LefschetzProfile, chiXT: int, chiYS: int
) -> tuple[bool, Fraction, Fraction]:
    """Both evaluations of the incidence-divisor Euler characteristic agree.

    chi(H) = chi(X_T) + chi(X)(chi(S) - chi_amb(S))
           = chi(Y_S) + chi(S)(chi(X) - chi_amb(X)).
    """
    if pX.N != pS.N:
        raise ValueError("profiles must share the ambient dimension N")
    chiX, chiS = euler_total(pX), euler_total(pS)
    via_xt = Fraction(chiXT + chiX * (chiS - euler_ambient(pS)))
    via_ys = Fraction(chiYS + chiS * (chiX - euler_ambient(pX)))
    return (via_xt == via_ys, via_xt, via_ys)


# ---------------------------------------------------------------------------
# Built-in example records.


@dataclass(frozen=True)
class ExampleRecord:
    name: str
    aliases: tuple[str, ...]
    N: int
    chiX: int
    chiY: int
    chiS: int
    chiT: int
    chiXT: int | None
    chiYS: int | None
    profiles: tuple[LefschetzProfile, LefschetzProfile] | None
    source: str

    @property
    def complete(self) -> bool:
        return self.chiXT is not None and self.chiYS is not None


def _norm(name: str) -> str:
    return "".join(ch for ch in name.lower() if ch.isalnum())


def _record_from_doc(doc: dict) -> ExampleRecord:
    profiles = None
    if doc.get("profile_X") and doc.get("profile_S"):
        profiles = (
            profile_from_json(json.dumps(doc["profile_X"])),
            profile_from_json(json.dumps(doc["profile_S"])),
        )
    return ExampleRecord(
        name=doc["name"],
        aliases=tuple(doc.get("aliases", ())),
        N=doc["N"],
        chiX=doc["chiX"],
        chiY=doc["chiY"],
        chiS=doc["chiS"],
        chiT=doc["chiT"],
        chiXT=doc.get("chiXT"),
        chiYS=doc.get("chiYS"),
        profiles=profiles,
        source=doc["source"],
    )


def _records_from_text(text: str) -> list[ExampleRecord]:
    doc = json.loads(text)
    if not isinstance(doc, dict) or "examples" not in doc:
        raise ValueError("example database must be an object with an 'examples' array")
    if doc.get("version") != 1:
        raise ValueError("unsupported example database version")
    return [_record_from_doc(d) for d in doc["examples"]]


def builtin_examples() -> list[ExampleRecord]:
    """The shipped example database, loaded from the packaged data file."""
    text = (
        resources.files("hpdual").joinpath("data/examples.json").read_text("utf-8")
    )
    return _records_from_text(text)


def load_examples(path: str) -> list[ExampleRecord]:
    """User-supplied example database in the same schema as the shipped one."""
    with open(path, "r", encoding="utf-8") as fh:
        return _records_from_text(fh.read())


def lookup_example(name: str, records: list[ExampleRecord] | None = None) -> ExampleRecord:
    wanted = _norm(name)
    for rec in records if records is not None else builtin_examples():
        if wanted == _norm(rec.name) or wanted in map(_norm, rec.aliases):
            return rec
    raise KeyError(f"no example matching {name!r}")
