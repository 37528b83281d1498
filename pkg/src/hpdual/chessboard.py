"""Boxes on the incidence chessboard, the cone-rule oracle, and region propagation.

A box ``A_a(a) [x] C_b(b)`` names the image of an exterior product of
one-sided components inside the incidence-divisor category.  Hom spaces
between pullbacks of exterior products sit in a two-term cone, so a box-level
Hom vanishes as soon as the untwisted term ``Hom_X (x) Hom_S`` and the
once-down-twisted term each contain a vanishing factor.  Queries touching the
two intersection categories or their shared primitive part are answered by
the global decompositions of the incidence category.

``mutate_region`` replays the mutation bookkeeping of the fully-faithfulness
arguments: passing an object through a sequence of orthogonal columns, the
cone of each step lands in the column pieces whose Homs to the current region
are not provably zero.  Regions are sound over-approximations (triangulated
hulls as box sets).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

from .profiles import LefschetzProfile, validate_profile
from .symbols import (
    AMB,
    AMB_L,
    DUAL_BLOCK,
    FULL,
    PRIM,
    PRIM_STAR,
    RIGHT_PERP_DUAL,
    ZERO,
    FactorSymbol,
    Side,
    TriState,
    amb,
    amb_l,
    check_index,
    contains,
    dual_block,
    full,
    hom_vanishes_factor_explained,
    left_perp_amb,
    left_perp_amb_l,
    normalize,
    template_lefschetz,
    template_primitive,
    template_serre_split,
)

TENSOR = "tensor"
DXT = "dxt"      # the intersection category on the X-against-T side
DYS = "dys"      # the intersection category on the Y-against-S side
EPRIM = "eprim"  # the shared primitive part


class BoxSymbol(NamedTuple):
    kind: str
    xfactor: FactorSymbol | None = None
    sfactor: FactorSymbol | None = None

    def __str__(self) -> str:
        if self.kind == TENSOR:
            return f"{self.xfactor}*{self.sfactor}"
        return {DXT: "D_XT", DYS: "D_YS", EPRIM: "E"}[self.kind]


def tensor(xf: FactorSymbol, sf: FactorSymbol) -> BoxSymbol:
    if xf.side is not Side.X or sf.side is not Side.S:
        raise ValueError("tensor boxes take an X-side and an S-side factor")
    return BoxSymbol(TENSOR, xf, sf)


BOX_DXT = BoxSymbol(DXT)
BOX_DYS = BoxSymbol(DYS)
BOX_EPRIM = BoxSymbol(EPRIM)


class ChessboardSpec(NamedTuple):
    """Two profiles of the same ambient dimension, spanning the chessboard."""

    profile_X: LefschetzProfile
    profile_S: LefschetzProfile

    @property
    def i(self) -> int:
        return self.profile_X.length

    @property
    def l(self) -> int:
        return self.profile_S.length

    @property
    def N(self) -> int:
        return self.profile_X.N

    def validate(self) -> None:
        _validate_spec(self)


@lru_cache(maxsize=None)
def _validate_spec(spec: "ChessboardSpec") -> None:
    for p in (spec.profile_X, spec.profile_S):
        report = validate_profile(p)
        if not report.valid:
            raise ValueError(
                f"invalid profile {p.name!r}: " + "; ".join(report.violations)
            )
    if spec.profile_X.N != spec.profile_S.N:
        raise ValueError("both profiles must share the ambient dimension N")


def make_spec(i: int, l: int, N: int) -> ChessboardSpec:
    """Synthetic all-ones spec, used by sweeps where only (i, l) matter."""
    from .profiles import make_profile

    spec = ChessboardSpec(
        make_profile(f"X(i={i})", N, [1] * i),
        make_profile(f"S(l={l})", N, [1] * l),
    )
    spec.validate()
    return spec


def _box_key(b: BoxSymbol) -> tuple:
    return (b.kind, b.xfactor or (), b.sfactor or ())


class Region:
    """A deduplicated set of boxes, zero boxes excluded, canonically ordered."""

    def __init__(self, boxes: Iterable[BoxSymbol] = (), spec: ChessboardSpec | None = None):
        seen = {}
        for b in boxes:
            if spec is not None and is_zero_box(b, spec):
                continue
            seen[b] = None
        self._boxes = tuple(sorted(seen, key=_box_key))

    @property
    def boxes(self) -> tuple[BoxSymbol, ...]:
        return self._boxes

    def __iter__(self) -> Iterator[BoxSymbol]:
        return iter(self._boxes)

    def __len__(self) -> int:
        return len(self._boxes)

    def __contains__(self, b: BoxSymbol) -> bool:
        return b in self._boxes

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Region) and self._boxes == other._boxes

    def __hash__(self) -> int:
        return hash(self._boxes)

    def union(self, other: "Region | Iterable[BoxSymbol]") -> "Region":
        return Region(list(self._boxes) + list(other))

    def issubset(self, other: "Region") -> bool:
        return set(self._boxes) <= set(other._boxes)

    def __str__(self) -> str:
        return "{" + ", ".join(str(b) for b in self._boxes) + "}"


def is_zero_box(b: BoxSymbol, spec: ChessboardSpec) -> bool:
    if b.kind != TENSOR:
        return False
    return (
        normalize(b.xfactor, spec.profile_X).kind == ZERO
        or normalize(b.sfactor, spec.profile_S).kind == ZERO
    )


def _check_box(b: BoxSymbol, spec: ChessboardSpec) -> None:
    if b.kind == TENSOR:
        check_index(b.xfactor, spec.profile_X)
        check_index(b.sfactor, spec.profile_S)


# ---------------------------------------------------------------------------
# Global decompositions of the incidence category.


@lru_cache(maxsize=None)
def _global_templates(i: int, l: int) -> tuple[tuple[str, tuple[BoxSymbol, ...]], ...]:
    out: list[tuple[str, tuple[BoxSymbol, ...]]] = []
    # ambient-X form: D_YS then the twisted X-columns over all of D(S)
    out.append(
        (
            "G:ambX",
            tuple(
                [BOX_DYS]
                + [tensor(amb(r, r, Side.X), full(0, Side.S)) for r in range(1, i)]
            ),
        )
    )
    # ambient-S family, one per cut 0 <= k <= l-1: Serre columns, D_XT, plain columns
    for k in range(l):
        comps = [
            tensor(full(0, Side.X), amb_l(b, b + 1 - l, Side.S))
            for b in range(k + 1, l)
        ]
        comps.append(BOX_DXT)
        comps += [tensor(full(0, Side.X), amb(g, g, Side.S)) for g in range(1, k + 1)]
        out.append((f"G:ambS({k})", tuple(comps)))
    return tuple(out)


def _box_contained(b: BoxSymbol, comp: BoxSymbol, spec: ChessboardSpec) -> bool:
    if comp.kind == TENSOR:
        if b.kind != TENSOR:
            return False
        return contains(b.xfactor, comp.xfactor, spec.profile_X) and contains(
            b.sfactor, comp.sfactor, spec.profile_S
        )
    if comp.kind == DXT:
        return b.kind in (DXT, EPRIM)
    return b.kind == comp.kind


def _spec_shape(spec: ChessboardSpec) -> tuple:
    zx = tuple(b.is_zero_category for b in spec.profile_X.blocks)
    zs = tuple(b.is_zero_category for b in spec.profile_S.blocks)
    return (spec.i, spec.l, zx, zs)


_box_memo: dict[tuple, tuple[TriState, str | None]] = {}


def clear_cache() -> None:
    _box_memo.clear()


def hom_vanishes_box(b1: BoxSymbol, b2: BoxSymbol, spec: ChessboardSpec) -> TriState:
    return hom_vanishes_box_explained(b1, b2, spec)[0]


def hom_vanishes_box_explained(
    b1: BoxSymbol, b2: BoxSymbol, spec: ChessboardSpec
) -> tuple[TriState, str | None]:
    """Box-level vanishing: cone rule for plain boxes, global templates otherwise."""
    spec.validate()
    _check_box(b1, spec)
    _check_box(b2, spec)
    key = (_spec_shape(spec), b1, b2)
    hit = _box_memo.get(key)
    if hit is not None:
        return hit
    result = _derive_box(b1, b2, spec)
    _box_memo[key] = result
    return result


def _derive_box(
    b1: BoxSymbol, b2: BoxSymbol, spec: ChessboardSpec
) -> tuple[TriState, str | None]:
    if is_zero_box(b1, spec) or is_zero_box(b2, spec):
        return (TriState.VANISHES, "zero")
    if b1.kind == TENSOR and b2.kind == TENSOR:
        return _cone_rule(b1, b2, spec)
    # E is right orthogonal to the projections of every A_m(m) [x] D^m, so
    # nothing inside such a box maps to E.
    if b2.kind == EPRIM and b1.kind == TENSOR:
        xf = b1.xfactor
        if xf.kind in (AMB, PRIM) and xf.twist >= 1 and xf.index >= xf.twist:
            if contains(b1.sfactor, dual_block(xf.twist, 0, Side.S), spec.profile_S):
                return (TriState.VANISHES, "E-def")
    for tid, comps in _global_templates(spec.i, spec.l):
        src = [p for p, c in enumerate(comps) if _box_contained(b1, c, spec)]
        tgt = [p for p, c in enumerate(comps) if _box_contained(b2, c, spec)]
        if src and tgt and min(tgt) < max(src):
            return (TriState.VANISHES, f"T:{tid}")
    return (TriState.UNKNOWN, None)


def _cone_rule(
    b1: BoxSymbol, b2: BoxSymbol, spec: ChessboardSpec
) -> tuple[TriState, str | None]:
    """Both cone terms need a vanishing factor: untwisted and down-twisted."""
    reasons = []
    for tag, twist in (("u", 0), ("t", -1)):
        vx, rx = hom_vanishes_factor_explained(
            b1.xfactor, b2.xfactor.twisted(twist), spec.profile_X
        )
        if vx is TriState.VANISHES:
            reasons.append(f"{tag}:X:{rx}")
            continue
        vs, rs = hom_vanishes_factor_explained(
            b1.sfactor, b2.sfactor.twisted(twist), spec.profile_S
        )
        if vs is TriState.VANISHES:
            reasons.append(f"{tag}:S:{rs}")
            continue
        return (TriState.UNKNOWN, None)
    return (TriState.VANISHES, "cone[" + ",".join(reasons) + "]")


# ---------------------------------------------------------------------------
# Closed-form staircase regions.


def staircase_pi_T(k: int, spec: ChessboardSpec) -> Region:
    """Where the cone lands when A_k(k) [x] D^k is projected to the T-side."""
    spec.validate()
    i, l = spec.i, spec.l
    if not 1 <= k <= i - 1:
        raise IndexError(f"k={k} out of range 1..{i - 1}")
    if k <= l:
        cells = [(a, b) for b in range(1, k) for a in range(b, k)]
    else:
        cells = [(a, b) for b in range(1, l) for a in range(k - l + b, k)]
    return Region(
        [tensor(amb(a, a, Side.X), amb(b, b, Side.S)) for a, b in cells], spec
    )


def staircase_pi_S(k: int, spec: ChessboardSpec) -> Region:
    """Where the cone lands when B^k [x] C^L_k(k+1-l) is projected to the S-side."""
    spec.validate()
    i, l = spec.i, spec.l
    if not 1 <= k <= l - 1:
        raise IndexError(f"k={k} out of range 1..{l - 1}")
    if k <= i:
        cells = [(a, b) for b in range(1, k) for a in range(1, b + 1)]
    else:
        cells = [
            (a, b)
            for b in range(k - i + 1, k)
            for a in range(1, min(i - 1, b - (k - i)) + 1)
        ]
    return Region(
        [tensor(amb(a, a, Side.X), amb_l(b, b + 1 - l, Side.S)) for a, b in cells],
        spec,
    )


def staircase_E(spec: ChessboardSpec) -> Region:
    """Where the cone lands when the shared primitive part is projected."""
    spec.validate()
    i, l = spec.i, spec.l
    boxes = [
        tensor(amb(a, a, Side.X), amb_l(b, b + 1 - l, Side.S))
        for b in range(1, l)
        for a in range(1, min(i - 1, b) + 1)
    ]
    return Region(boxes, spec)


# ---------------------------------------------------------------------------
# Region propagation under mutation.

REFINEMENTS = ("auto", "lefschetz", "primitive", "serre_split")


def pi_T_columns(spec: ChessboardSpec) -> list[BoxSymbol]:
    """The columns mutated through by the projection to the T-side."""
    return [tensor(full(0, Side.X), amb(c, c, Side.S)) for c in range(1, spec.l)]


def pi_S_columns(spec: ChessboardSpec) -> list[BoxSymbol]:
    """The columns mutated through by the projection to the S-side."""
    return [tensor(amb(m, m, Side.X), full(0, Side.S)) for m in range(1, spec.i)]


def mutate_region(
    region: Region,
    through: list[BoxSymbol],
    spec: ChessboardSpec,
    refinement: str = "auto",
) -> Region:
    """Propagate a region through a left mutation along `through`, right to left.

    At each column the full factor is refined, and exactly those refined
    pieces whose Hom to the current region is Unknown join the region.  The
    result over-approximates where the mutated objects live.
    """
    spec.validate()
    if refinement not in REFINEMENTS:
        raise ValueError(
            f"unknown template id {refinement!r}; use one of {REFINEMENTS}"
        )
    for b in through:
        _check_box(b, spec)
        if b.kind != TENSOR or FULL not in (b.xfactor.kind, b.sfactor.kind):
            raise ValueError(f"mutation column {b} must have a full factor")
    _check_semiorthogonal(through, spec)
    current = Region(region.boxes, spec)
    for column in reversed(through):
        pieces = _refine_column(column, current, spec, refinement)
        survivors = [
            piece
            for piece in pieces
            if not is_zero_box(piece, spec)
            and any(
                hom_vanishes_box(piece, r, spec) is TriState.UNKNOWN for r in current
            )
        ]
        if survivors:
            current = current.union(survivors)
    return current


def _check_semiorthogonal(through: list[BoxSymbol], spec: ChessboardSpec) -> None:
    for a in range(len(through)):
        for b in range(a + 1, len(through)):
            if hom_vanishes_box(through[b], through[a], spec) is not TriState.VANISHES:
                raise ValueError(
                    f"columns {through[b]} , {through[a]} are not semiorthogonal"
                )


def _refine_column(
    column: BoxSymbol, region: Region, spec: ChessboardSpec, refinement: str
) -> list[BoxSymbol]:
    x_full = column.xfactor.kind == FULL
    profile = spec.profile_X if x_full else spec.profile_S
    side = Side.X if x_full else Side.S
    cofactor = column.sfactor if x_full else column.xfactor
    shift = (column.xfactor if x_full else column.sfactor).twist

    def rebuild(f: FactorSymbol) -> BoxSymbol:
        return tensor(f, column.sfactor) if x_full else tensor(column.xfactor, f)

    if refinement == "lefschetz":
        tpl = template_lefschetz(profile, side).twisted(shift)
        return [rebuild(c) for c in tpl.components]
    if refinement == "primitive":
        tpl = template_primitive(profile, side).twisted(shift)
        return [rebuild(c) for c in tpl.components]
    if refinement == "serre_split":
        k = max(cofactor.index if cofactor.kind in (AMB, AMB_L, PRIM) else 1, 1)
        tpl = template_serre_split(profile, side, k).twisted(shift)
        return [rebuild(c) for c in tpl.components]
    if x_full:
        return _window_pieces(column, region, spec, shift)
    pieces = _window_pieces_S(column, region, spec, shift)
    if pieces is None:
        # regions touching the intersection categories are handled by the
        # Serre-split refinement, whose tail pieces the global rules discharge
        k = max(cofactor.index if cofactor.kind in (AMB, AMB_L, PRIM) else 1, 1)
        tpl = template_serre_split(profile, side, k).twisted(shift)
        return [rebuild(c) for c in tpl.components]
    return pieces


def _window_pieces(
    column: BoxSymbol, region: Region, spec: ChessboardSpec, shift: int
) -> list[BoxSymbol]:
    """Chain-row window forced by the region; the remainder is discharged.

    The remainder of the column sits inside the left orthogonal of every
    window row, and joins the region only when that fails to kill some Hom;
    in that case the whole column is returned as a sound fallback.
    """
    g_col = column.sfactor
    i = spec.i
    window: set[int] = set()
    for r in region:
        if r.kind != TENSOR:
            if hom_vanishes_box(column, r, spec) is not TriState.VANISHES:
                return [column]
            continue
        for twist in (0, -1):
            vs, _ = hom_vanishes_factor_explained(
                g_col, r.sfactor.twisted(twist), spec.profile_S
            )
            if vs is TriState.VANISHES:
                continue
            xf = normalize(r.xfactor.twisted(twist), spec.profile_X)
            if xf.kind == ZERO:
                continue
            w = _window_row_for(xf, i, shift)
            if w is None:
                return [column]
            window.add(w)
    rows = sorted(window)
    if rows and not _perp_discharges(rows, shift, g_col, region, spec):
        return [column]
    return [tensor(amb(w, w + shift, Side.X), g_col) for w in rows]


def _window_row_for(xf: FactorSymbol, i: int, shift: int) -> int | None:
    """The chain row w with xf <= A_w(w+shift), if one exists."""
    w = xf.twist - shift
    if not 0 <= w <= i - 1:
        return None
    if xf.kind in (AMB, PRIM) and xf.index >= w:
        return w
    if xf.kind in (DUAL_BLOCK, PRIM_STAR, RIGHT_PERP_DUAL) and w == 0:
        return 0
    return None


def _window_pieces_S(
    column: BoxSymbol, region: Region, spec: ChessboardSpec, shift: int
) -> list[BoxSymbol] | None:
    """Serre-column window forced by the region, for an S-side full factor.

    Returns None when the region has members outside the plain grid or a
    constraint has no Serre-column container; the caller then refines through
    the split template instead.
    """
    f_col = column.xfactor
    l = spec.l
    window: set[int] = set()
    for r in region:
        if r.kind != TENSOR:
            return None
        for twist in (0, -1):
            vx, _ = hom_vanishes_factor_explained(
                f_col, r.xfactor.twisted(twist), spec.profile_X
            )
            if vx is TriState.VANISHES:
                continue
            sf = normalize(r.sfactor.twisted(twist), spec.profile_S)
            if sf.kind == ZERO:
                continue
            w = _serre_row_for(sf, l, shift)
            if w is None:
                return None
            window.add(w)
    rows = sorted(window)
    for r in region:
        for twist in (0, -1):
            vx, _ = hom_vanishes_factor_explained(
                f_col, r.xfactor.twisted(twist), spec.profile_X
            )
            if vx is TriState.VANISHES:
                continue
            sf = r.sfactor.twisted(twist)
            ok = any(
                hom_vanishes_factor_explained(
                    left_perp_amb_l(w, w + 1 - l + shift, Side.S), sf, spec.profile_S
                )[0]
                is TriState.VANISHES
                for w in rows
            )
            if not ok:
                return None
    return [tensor(f_col, amb_l(w, w + 1 - l + shift, Side.S)) for w in rows]


def _serre_row_for(sf: FactorSymbol, l: int, shift: int) -> int | None:
    """The Serre column w with sf <= C^L_w(w+1-l+shift), if one exists."""
    if sf.kind != AMB_L:
        return None
    w = sf.twist - 1 + l - shift
    if 1 <= w <= l - 1 and sf.index >= w:
        return w
    return None


def _perp_discharges(
    rows: list[int],
    shift: int,
    g_col: FactorSymbol,
    region: Region,
    spec: ChessboardSpec,
) -> bool:
    """Check the window remainder has derivably-zero Homs to the region."""
    for r in region:
        if r.kind != TENSOR:
            continue
        for twist in (0, -1):
            vs, _ = hom_vanishes_factor_explained(
                g_col, r.sfactor.twisted(twist), spec.profile_S
            )
            if vs is TriState.VANISHES:
                continue
            xf = r.xfactor.twisted(twist)
            ok = any(
                hom_vanishes_factor_explained(
                    left_perp_amb(w, w + shift, Side.X), xf, spec.profile_X
                )[0]
                is TriState.VANISHES
                for w in rows
            )
            if not ok:
                return False
    return True
