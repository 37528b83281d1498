"""Lefschetz profiles and their complementary-box duals.

A Lefschetz profile is the complete combinatorial shadow of a Lefschetz
decomposition ``D(X) = <A_0, A_1(1), ..., A_{i-1}(i-1)>`` with descending
components ``A_0 >= A_1 >= ... >= A_{i-1}``: it stores, for each primitive
block ``a_j`` (the right orthogonal of ``A_{j+1}`` inside ``A_j``), the
Hochschild Euler characteristic ``e_j``, together with the ambient dimension
``N = dim V`` of the projective space the variety maps to.

The dual profile is obtained from the ascending chain of complementary boxes
``B^k = <a_0, ..., a_{min(k,i)-1}>`` filling the ``N``-wide strip.  Read from
the ``B^{N-1}`` end inward, that chain is again a profile; on e-vectors the
passage is the index reversal ``e'_m = e_(N-2-m)``.

All values are immutable and all operations are pure functions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

LEFSCHETZ = "lefschetz"
DUAL = "dual"

_ORIENTATIONS = (LEFSCHETZ, DUAL)

_DUAL_NAME_SUFFIX = "^dual"


@dataclass(frozen=True)
class PrimitiveBlock:
    """One primitive block: a label and its Hochschild Euler characteristic.

    ``euler == 0`` together with ``nonzero=False`` means the zero category;
    ``nonzero=True`` marks a genuine category whose Euler characteristic
    happens to vanish, so minimality of the profile length stays decidable.
    """

    label: str
    euler: int
    nonzero: bool | None = None

    def __post_init__(self) -> None:
        if self.nonzero is None:
            object.__setattr__(self, "nonzero", self.euler != 0)

    @property
    def is_zero_category(self) -> bool:
        return not self.nonzero


@dataclass(frozen=True)
class LefschetzProfile:
    """An e-vector of primitive blocks, bound to an ambient dimension N.

    ``orientation`` records whether the stored chain descends with positive
    twists (``lefschetz``) or is the complementary-box chain read from the
    wide end with negative twists (``dual``).  In both cases block ``j``
    contributes to the first ``j+1`` components, so the total Euler
    characteristic is ``sum((j+1) * e_j)``; for a dual-oriented profile this
    equals ``sum((N-1-j) * e_j)`` over the source profile's e-vector.
    """

    name: str
    N: int
    orientation: str
    blocks: tuple[PrimitiveBlock, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if self.orientation not in _ORIENTATIONS:
            raise ValueError(f"orientation must be one of {_ORIENTATIONS}")

    @property
    def length(self) -> int:
        return len(self.blocks)

    @property
    def e_vector(self) -> tuple[int, ...]:
        return tuple(b.euler for b in self.blocks)

    def block_is_zero(self, j: int) -> bool:
        """True when block j is the zero category (indices past the end count as zero)."""
        if 0 <= j < len(self.blocks):
            return self.blocks[j].is_zero_category
        return True

    def first_nonzero_index(self) -> int | None:
        for j, b in enumerate(self.blocks):
            if not b.is_zero_category:
                return j
        return None

    def __str__(self) -> str:
        return f"{self.name}: e={list(self.e_vector)} N={self.N} ({self.orientation})"


def make_profile(
    name: str,
    N: int,
    e_vector: Sequence[int],
    orientation: str = LEFSCHETZ,
    labels: Sequence[str] | None = None,
    nonzero: Sequence[bool] | None = None,
) -> LefschetzProfile:
    """Convenience constructor from a bare e-vector."""
    blocks = []
    for j, e in enumerate(e_vector):
        label = labels[j] if labels is not None else f"a{j}"
        nz = nonzero[j] if nonzero is not None else None
        blocks.append(PrimitiveBlock(label, int(e), nz))
    return LefschetzProfile(name, N, orientation, tuple(blocks))


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of profile validation: violations are data, not failures."""

    violations: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations


def validate_profile(p: LefschetzProfile) -> ValidationReport:
    """Check every profile invariant and report each violation in words."""
    violations: list[str] = []
    warnings: list[str] = []
    i = p.length
    if not (1 <= i <= p.N - 1):
        violations.append(
            f"i <= N-1 fails: length i={i} must satisfy 1 <= i <= N-1 = {p.N - 1}"
        )
    if p.blocks and p.blocks[-1].is_zero_category:
        violations.append(
            "length not minimal: last block is the zero category "
            "(euler 0 without nonzero marker)"
        )
    seen: set[str] = set()
    for j, b in enumerate(p.blocks):
        if not b.label:
            violations.append(f"block {j} has an empty label")
        elif b.label in seen:
            violations.append(f"block label {b.label!r} is not unique")
        seen.add(b.label)
    if p.N < 3:
        warnings.append(
            f"N = {p.N} < 3: the image cannot be at least two-dimensional"
        )
    return ValidationReport(tuple(violations), tuple(warnings))


def _require_valid(p: LefschetzProfile) -> None:
    report = validate_profile(p)
    if not report.valid:
        raise ValueError(f"invalid profile {p.name!r}: " + "; ".join(report.violations))


def euler_ambient(p: LefschetzProfile) -> int:
    """Euler characteristic of the first component A_0, i.e. sum of the e-vector."""
    _require_valid(p)
    return sum(p.e_vector)


def euler_total(p: LefschetzProfile) -> int:
    """Total Euler characteristic: block j lies in j+1 chain components."""
    _require_valid(p)
    return sum((j + 1) * e for j, e in enumerate(p.e_vector))


@dataclass(frozen=True)
class DualProfile:
    """The complementary-box chain B^1 <= B^2 <= ... <= B^{N-1} of a profile.

    ``widths[k-1] = min(k, i)`` is the number of primitive blocks inside
    ``B^k``.  This is the definitional route to the dual; the closed-form
    index reversal in :func:`dualize` is cross-checked against it.
    """

    base: LefschetzProfile
    widths: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        i = self.base.length
        object.__setattr__(
            self, "widths", tuple(min(k, i) for k in range(1, self.base.N))
        )

    def block_indices(self, k: int) -> tuple[int, ...]:
        """Indices of the primitive blocks generating B^k (empty for k <= 0)."""
        if k <= 0:
            return ()
        width = self.widths[min(k, len(self.widths)) - 1]
        return tuple(range(width))

    def is_zero(self, k: int) -> bool:
        return all(self.base.block_is_zero(j) for j in self.block_indices(k)) or k <= 0


def _toggle_dual_name(name: str) -> str:
    if name.endswith(_DUAL_NAME_SUFFIX):
        return name[: -len(_DUAL_NAME_SUFFIX)]
    return name + _DUAL_NAME_SUFFIX


def _flip(orientation: str) -> str:
    return DUAL if orientation == LEFSCHETZ else LEFSCHETZ


def _finish_dual(p: LefschetzProfile, blocks: list[PrimitiveBlock]) -> LefschetzProfile:
    """Truncate to minimal length and relabel zero blocks positionally."""
    while blocks and blocks[-1].is_zero_category:
        blocks.pop()
    named = tuple(
        PrimitiveBlock(f"zero{m}", b.euler, False) if b.is_zero_category else b
        for m, b in enumerate(blocks)
    )
    return LefschetzProfile(_toggle_dual_name(p.name), p.N, _flip(p.orientation), named)


def dualize(p: LefschetzProfile) -> LefschetzProfile:
    """Complementary-box dual: e-vector reversal e'_m = e_(N-2-m), orientation flipped.

    The result is truncated to minimal length.  Applying dualize twice gives
    back the original e-vector, length and orientation, and
    ``euler_total(p) + euler_total(dualize(p)) == N * euler_ambient(p)``.
    """
    _require_valid(p)
    blocks: list[PrimitiveBlock] = []
    for m in range(p.N - 1):
        j = p.N - 2 - m
        if j < p.length:
            blocks.append(p.blocks[j])
        else:
            blocks.append(PrimitiveBlock(f"zero{m}", 0, False))
    return _finish_dual(p, blocks)


def dualize_by_widths(p: LefschetzProfile) -> LefschetzProfile:
    """Dualization computed directly from the B^k block sets.

    Independent of the reversal closed form: walks the ascending chain from
    the wide end and records the primitive block each step adds.
    """
    _require_valid(p)
    dual = DualProfile(p)
    blocks: list[PrimitiveBlock] = []
    for m in range(p.N - 1):
        outer = set(dual.block_indices(p.N - 1 - m))
        inner = set(dual.block_indices(p.N - 2 - m))
        added = sorted(outer - inner)
        if not added:
            blocks.append(PrimitiveBlock(f"zero{m}", 0, False))
        else:
            (j,) = added
            blocks.append(p.blocks[j])
    return _finish_dual(p, blocks)


def is_rectangular(p: LefschetzProfile) -> bool:
    """All chain components equal, i.e. every block but the last is zero."""
    return all(b.is_zero_category for b in p.blocks[:-1])


def canonical_form(p: LefschetzProfile) -> LefschetzProfile:
    """Rename zero-category blocks positionally, as dualize labels its fillers.

    Labels of zero-category blocks ahead of the first nonzero one cannot
    survive a double dualization (the dual truncates them away), so the
    byte-for-byte round-trip promise is stated for canonical profiles.
    """
    blocks = tuple(
        PrimitiveBlock(f"zero{j}", b.euler, False) if b.is_zero_category else b
        for j, b in enumerate(p.blocks)
    )
    return LefschetzProfile(p.name, p.N, p.orientation, blocks)


def beilinson_profile(l: int, N: int, name: str | None = None) -> LefschetzProfile:
    """Profile of a linear subspace of projective dimension l-1 inside P(V)."""
    e = [0] * l
    e[l - 1] = 1
    return make_profile(name or f"P{l - 1}", N, e, labels=[f"O{j}" for j in range(l)])


# ---------------------------------------------------------------------------
# Profile file format: one JSON document per profile, deterministic bytes.
# Keys appear in the order: name, N, orientation, blocks; each block carries
# label, euler, nonzero.  Unknown fields are rejected.

_PROFILE_KEYS = ("name", "N", "orientation", "blocks")
_BLOCK_KEYS = ("label", "euler", "nonzero")


class ProfileFormatError(ValueError):
    """Raised on malformed profile documents."""


def profile_to_json(p: LefschetzProfile) -> str:
    doc = {
        "name": p.name,
        "N": p.N,
        "orientation": p.orientation,
        "blocks": [
            {"label": b.label, "euler": b.euler, "nonzero": bool(b.nonzero)}
            for b in p.blocks
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def profile_from_json(text: str) -> LefschetzProfile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProfileFormatError(
            f"line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise ProfileFormatError("profile document must be a JSON object")
    unknown = set(doc) - set(_PROFILE_KEYS)
    if unknown:
        raise ProfileFormatError(f"unknown fields rejected: {sorted(unknown)}")
    missing = [k for k in ("name", "N", "orientation", "blocks") if k not in doc]
    if missing:
        raise ProfileFormatError(f"missing fields: {missing}")
    if not isinstance(doc["name"], str):
        raise ProfileFormatError("field 'name' must be a string")
    if not isinstance(doc["N"], int) or isinstance(doc["N"], bool) or doc["N"] <= 0:
        raise ProfileFormatError("field 'N' must be a positive integer")
    if doc["orientation"] not in _ORIENTATIONS:
        raise ProfileFormatError("field 'orientation' must be 'lefschetz' or 'dual'")
    if not isinstance(doc["blocks"], list):
        raise ProfileFormatError("field 'blocks' must be an array")
    blocks = []
    for idx, raw in enumerate(doc["blocks"]):
        if not isinstance(raw, dict):
            raise ProfileFormatError(f"block {idx} must be an object")
        unknown = set(raw) - set(_BLOCK_KEYS)
        if unknown:
            raise ProfileFormatError(
                f"block {idx}: unknown fields rejected: {sorted(unknown)}"
            )
        if "label" not in raw or "euler" not in raw:
            raise ProfileFormatError(f"block {idx}: label and euler are required")
        label, euler = raw["label"], raw["euler"]
        if not isinstance(label, str):
            raise ProfileFormatError(f"block {idx}: label must be a string")
        if not isinstance(euler, int) or isinstance(euler, bool):
            raise ProfileFormatError(f"block {idx}: euler must be an integer")
        nonzero = raw.get("nonzero", euler != 0)
        if not isinstance(nonzero, bool):
            raise ProfileFormatError(f"block {idx}: nonzero must be a boolean")
        blocks.append(PrimitiveBlock(label, euler, nonzero))
    return LefschetzProfile(doc["name"], doc["N"], doc["orientation"], tuple(blocks))


def load_profile(path: str) -> LefschetzProfile:
    with open(path, "r", encoding="utf-8") as fh:
        return profile_from_json(fh.read())


def save_profile(p: LefschetzProfile, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(profile_to_json(p))
