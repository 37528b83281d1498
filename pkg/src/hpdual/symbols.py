"""Formal one-sided category symbols and the sound Hom-vanishing oracle.

Symbols name the admissible subcategories that appear on one side of the
incidence chessboard: the whole category ``D(X)``, Lefschetz components
``A_a(t)``, their Serre twists ``C^L_b(t) = S(C_b)(l+t)``, primitive blocks
``a_j(t)``, the projected generators ``a*_j(t)`` of the first component, the
complementary boxes ``B^k(t)``, and the one-sided orthogonal classes used by
the mutation bookkeeping.

The oracle answers ``Vanishes`` only when derivability is witnessed by a
closed rule or a semiorthogonal-sequence template; ``Unknown`` never asserts
nonvanishing.  All answers are memoized per (profile shape, query); cache
entries are deterministic pure-function values, so concurrent interleavings
of the dictionary writes cannot change any observable result.
"""

from __future__ import annotations

import enum
from typing import Iterator, NamedTuple

from .profiles import LefschetzProfile

# Symbol kinds.
FULL = "full"
AMB = "amb"
AMB_L = "ambL"
PRIM = "prim"
PRIM_STAR = "prim*"
DUAL_BLOCK = "dual"
LEFT_PERP_AMB = "lperp_amb"
LEFT_PERP_AMB_L = "lperp_ambL"
RIGHT_PERP_DUAL = "rperp_dual"
ZERO = "zero"

class Side(enum.Enum):
    X = "X"
    S = "S"


class TriState(enum.Enum):
    """Oracle verdicts. Unknown means "not derivable", never "nonzero"."""

    VANISHES = "vanishes"
    UNKNOWN = "unknown"


class FactorSymbol(NamedTuple):
    kind: str
    index: int
    twist: int
    side: Side

    def twisted(self, m: int) -> "FactorSymbol":
        return self._replace(twist=self.twist + m)

    def __str__(self) -> str:  # deterministic, used in traces and renders
        t = self.twist
        tw = f"({t})" if t != 0 else ""
        if self.kind == FULL:
            return f"D({self.side.value})"
        if self.kind == ZERO:
            return "0"
        base = {
            Side.X: {AMB: "A_", PRIM: "a_", PRIM_STAR: "a*_", DUAL_BLOCK: "B^"},
            Side.S: {AMB: "C_", PRIM: "c_", PRIM_STAR: "c*_", DUAL_BLOCK: "D^"},
        }[self.side]
        if self.kind in base:
            return f"{base[self.kind]}{self.index}{tw}"
        if self.kind == AMB_L:
            letter = "A" if self.side is Side.X else "C"
            return f"{letter}^L_{self.index}{tw}"
        if self.kind == LEFT_PERP_AMB:
            inner = str(amb(self.index, self.twist, self.side))
            return f"lperp({inner})"
        if self.kind == LEFT_PERP_AMB_L:
            inner = str(amb_l(self.index, self.twist, self.side))
            return f"lperp({inner})"
        if self.kind == RIGHT_PERP_DUAL:
            inner = str(dual_block(self.index, self.twist, self.side))
            return f"rperp({inner})"
        return f"{self.kind}_{self.index}{tw}"


def full(twist: int = 0, side: Side = Side.X) -> FactorSymbol:
    return FactorSymbol(FULL, 0, twist, side)


def amb(index: int, twist: int, side: Side) -> FactorSymbol:
    return FactorSymbol(AMB, index, twist, side)


def amb_l(index: int, twist: int, side: Side = Side.S) -> FactorSymbol:
    return FactorSymbol(AMB_L, index, twist, side)


def prim(index: int, twist: int, side: Side) -> FactorSymbol:
    return FactorSymbol(PRIM, index, twist, side)


def prim_star(index: int, twist: int, side: Side) -> FactorSymbol:
    return FactorSymbol(PRIM_STAR, index, twist, side)


def dual_block(index: int, twist: int, side: Side) -> FactorSymbol:
    return FactorSymbol(DUAL_BLOCK, index, twist, side)


def left_perp_amb(index: int, twist: int, side: Side) -> FactorSymbol:
    """The left orthogonal of A_index(twist); only its defining vanishing is used."""
    return FactorSymbol(LEFT_PERP_AMB, index, twist, side)


def left_perp_amb_l(index: int, twist: int, side: Side = Side.S) -> FactorSymbol:
    return FactorSymbol(LEFT_PERP_AMB_L, index, twist, side)


def right_perp_dual(index: int, twist: int, side: Side) -> FactorSymbol:
    """Right orthogonal of B^index(twist) taken inside A_0(twist)."""
    return FactorSymbol(RIGHT_PERP_DUAL, index, twist, side)


def zero(side: Side) -> FactorSymbol:
    return FactorSymbol(ZERO, 0, 0, side)


class CrossSideError(ValueError):
    """Raised on containment or Hom queries mixing the two sides."""


def _profile_key(p: LefschetzProfile) -> tuple:
    # derivations depend only on the length and the zero pattern, not on N
    return tuple(b.is_zero_category for b in p.blocks)


def check_index(f: FactorSymbol, profile: LefschetzProfile) -> None:
    """Raise when a symbol's index leaves the range the profile allows."""
    n = profile.length
    if f.kind in (AMB, PRIM, PRIM_STAR, LEFT_PERP_AMB):
        if not 0 <= f.index <= n - 1:
            raise IndexError(f"{f} index out of range 0..{n - 1}")
    elif f.kind in (AMB_L, LEFT_PERP_AMB_L):
        if not 1 <= f.index <= n - 1:
            raise IndexError(f"{f} index out of range 1..{n - 1}")
    elif f.kind in (DUAL_BLOCK, RIGHT_PERP_DUAL):
        if not 1 <= f.index <= profile.N - 1:
            raise IndexError(f"{f} index out of range 1..{profile.N - 1}")


def normalize(f: FactorSymbol, profile: LefschetzProfile) -> FactorSymbol:
    """Fold saturated dual blocks into A_0 and detect zero categories."""
    if f.kind == DUAL_BLOCK:
        width = min(f.index, profile.length)
        if all(profile.block_is_zero(j) for j in range(width)):
            return zero(f.side)
        if f.index >= profile.length:
            return amb(0, f.twist, f.side)
    elif f.kind == PRIM and profile.block_is_zero(f.index):
        return zero(f.side)
    elif f.kind == PRIM_STAR and profile.block_is_zero(f.index):
        return zero(f.side)
    elif f.kind == AMB and all(
        profile.block_is_zero(j) for j in range(f.index, profile.length)
    ):
        return zero(f.side)
    return f


def contains(
    f1: FactorSymbol, f2: FactorSymbol, profile: LefschetzProfile
) -> bool:
    """True iff the containment f1 <= f2 is derivable from the chain rules."""
    if f1.side != f2.side:
        raise CrossSideError("cross-side containment undefined")
    check_index(f1, profile)
    check_index(f2, profile)
    f1 = normalize(f1, profile)
    f2 = normalize(f2, profile)
    if f1.kind == ZERO:
        return True
    if f2.kind == FULL:
        return True
    if f1.kind == FULL:
        return False
    if f2.kind == ZERO:
        return False
    if f1 == f2:
        return True
    k1, k2 = f1.kind, f2.kind
    if f1.twist != f2.twist:
        return False
    if k1 == AMB and k2 == AMB:
        return f1.index >= f2.index
    if k1 == AMB_L and k2 == AMB_L:
        return f1.index >= f2.index
    if k1 == PRIM and k2 == AMB:
        return f2.index <= f1.index
    if k1 == DUAL_BLOCK and k2 == DUAL_BLOCK:
        return f1.index <= f2.index
    if k1 == DUAL_BLOCK and k2 == AMB:
        return f2.index == 0
    if k1 == PRIM_STAR and k2 == DUAL_BLOCK:
        return f1.index < f2.index
    if k1 == PRIM_STAR and k2 == AMB:
        return f2.index == 0
    if k1 == RIGHT_PERP_DUAL and k2 == AMB:
        # the right orthogonal of B^k is taken inside A_0
        return f2.index == 0
    # one-sided orthogonal classes are contravariant in their defining symbol
    if k1 == LEFT_PERP_AMB and k2 == LEFT_PERP_AMB:
        return contains(
            amb(f2.index, f2.twist, f2.side), amb(f1.index, f1.twist, f1.side), profile
        )
    if k1 == LEFT_PERP_AMB_L and k2 == LEFT_PERP_AMB_L:
        return contains(
            amb_l(f2.index, f2.twist, f2.side),
            amb_l(f1.index, f1.twist, f1.side),
            profile,
        )
    if k1 == RIGHT_PERP_DUAL and k2 == RIGHT_PERP_DUAL:
        return contains(
            dual_block(f2.index, f2.twist, f2.side),
            dual_block(f1.index, f1.twist, f1.side),
            profile,
        )
    return False


# ---------------------------------------------------------------------------
# Semiorthogonal-sequence templates.


class DecompositionTemplate(NamedTuple):
    """An ordered semiorthogonal sequence of symbols, closed under twisting."""

    id: str
    components: tuple[FactorSymbol, ...]

    def twisted(self, m: int) -> "DecompositionTemplate":
        if m == 0:
            return self
        return DecompositionTemplate(
            f"{self.id}@{m:+d}", tuple(c.twisted(m) for c in self.components)
        )


def template_lefschetz(profile: LefschetzProfile, side: Side) -> DecompositionTemplate:
    """T1: the Lefschetz columns A_0, A_1(1), ..., A_{n-1}(n-1)."""
    n = profile.length
    return DecompositionTemplate(
        "T1:lefschetz", tuple(amb(k, k, side) for k in range(n))
    )


def template_primitive(profile: LefschetzProfile, side: Side) -> DecompositionTemplate:
    """T2: full primitive refinement of the Lefschetz columns."""
    n = profile.length
    comps = tuple(
        prim(j, k, side) for k in range(n) for j in range(k, n)
    )
    return DecompositionTemplate("T2:primitive", comps)


def template_projected(profile: LefschetzProfile, side: Side) -> DecompositionTemplate:
    """T3: the projected generators a*_0, ..., a*_{n-1} of the first component."""
    n = profile.length
    return DecompositionTemplate(
        "T3:projected", tuple(prim_star(j, 0, side) for j in range(n))
    )


def template_serre(
    profile: LefschetzProfile, side: Side, k: int
) -> DecompositionTemplate:
    """T4(k): the Serre-mutated sequence C^L_k(k-l+1), ..., C^L_{l-1}, C_0(1), ..., C_{k-1}(k)."""
    l = profile.length
    if not 1 <= k <= l - 1:
        raise IndexError(f"serre template index k={k} out of range 1..{l - 1}")
    head = tuple(amb_l(b, b - l + 1, side) for b in range(k, l))
    tail = tuple(amb(g, g + 1, side) for g in range(k))
    return DecompositionTemplate(f"T4:serre({k})", head + tail)


def template_serre_split(
    profile: LefschetzProfile, side: Side, k: int
) -> DecompositionTemplate:
    """T4(k) with its plain tail re-decomposed as D^k, C_1(1), ..., C_k(k).

    The tail span <C_0(1), ..., C_{k-1}(k)> equals <D^k, C_1(1), ..., C_k(k)>,
    so the whole list is again a semiorthogonal sequence.  For k >= l the
    head is empty and D^k is the full first component.
    """
    l = profile.length
    if k < 1:
        raise IndexError(f"serre_split index k={k} must be positive")
    head = tuple(amb_l(b, b - l + 1, side) for b in range(max(k, 1), l))
    mid = (dual_block(k, 0, side),)
    tail = tuple(amb(g, g, side) for g in range(1, min(k, l - 1) + 1))
    return DecompositionTemplate(f"T4E:serre_split({k})", head + mid + tail)


def enumerate_templates(
    profile: LefschetzProfile, side: Side, twist_window: tuple[int, int]
) -> list[DecompositionTemplate]:
    """All template instances with uniform twist inside the window, in order."""
    lo, hi = twist_window
    if lo > hi:
        raise ValueError("twist window must be nonempty")
    out: list[DecompositionTemplate] = []
    for w in range(lo, hi + 1):
        out.append(template_lefschetz(profile, side).twisted(w))
        out.append(template_primitive(profile, side).twisted(w))
        out.append(template_projected(profile, side).twisted(w))
        for k in range(1, profile.length):
            out.append(template_serre(profile, side, k).twisted(w))
    return out


# ---------------------------------------------------------------------------
# The vanishing oracle.

_memo: dict[tuple, tuple[TriState, str | None]] = {}


def clear_cache() -> None:
    _memo.clear()


def hom_vanishes_factor(
    f1: FactorSymbol, f2: FactorSymbol, profile: LefschetzProfile
) -> TriState:
    """Sound, possibly incomplete, factor-level Hom-vanishing."""
    return hom_vanishes_factor_explained(f1, f2, profile)[0]


def hom_vanishes_factor_explained(
    f1: FactorSymbol, f2: FactorSymbol, profile: LefschetzProfile
) -> tuple[TriState, str | None]:
    """As :func:`hom_vanishes_factor` but reporting the rule that fired."""
    if f1.side != f2.side:
        raise CrossSideError("cross-side Hom undefined")
    check_index(f1, profile)
    check_index(f2, profile)
    key = (_profile_key(profile), f1, f2)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    result = _derive(f1, f2, profile, _depth=0)
    _memo[key] = result
    return result


def _amb_containers(f: FactorSymbol) -> Iterator[tuple[int, int]]:
    """(index, twist) of chain components A_a(t) known to contain f."""
    if f.kind == AMB:
        yield (f.index, f.twist)
    elif f.kind == PRIM:
        yield (f.index, f.twist)  # a_j <= A_a for every a <= j; j is the largest
    elif f.kind in (DUAL_BLOCK, PRIM_STAR, RIGHT_PERP_DUAL):
        yield (0, f.twist)


def _derive(
    f1: FactorSymbol, f2: FactorSymbol, profile: LefschetzProfile, _depth: int
) -> tuple[TriState, str | None]:
    f1 = normalize(f1, profile)
    f2 = normalize(f2, profile)
    if f1.kind == ZERO or f2.kind == ZERO:
        return (TriState.VANISHES, "zero")
    if f1.kind == FULL or f2.kind == FULL:
        return (TriState.UNKNOWN, None)

    # R1: Hom(A_a(s), A_b(t)) = 0 for 1 <= s-t <= a, lifted through containment.
    tgt_amb = any(True for _ in _amb_containers(f2))
    if tgt_amb:
        t = f2.twist
        for a, s in _amb_containers(f1):
            if 1 <= s - t <= a:
                return (TriState.VANISHES, "R1")
    # R1 transported along the Serre twist: C^L chains behave like C chains.
    if f1.kind == AMB_L and f2.kind == AMB_L:
        if 1 <= f1.twist - f2.twist <= f1.index:
            return (TriState.VANISHES, "R1")

    # R2: Hom(x(t+p+1), B^q(t)) = 0 for q <= p, x the p-th block or column,
    # and Hom(a*_p(t), B^q(t)) = 0 for q <= p.
    if f2.kind == DUAL_BLOCK:
        q, t = f2.index, f2.twist
        if f1.kind in (PRIM, AMB) and f1.twist == t + f1.index + 1 and q <= f1.index:
            return (TriState.VANISHES, "R2")
        if f1.kind == PRIM_STAR and f1.twist == t and q <= f1.index:
            return (TriState.VANISHES, "R2")

    # R3: primitive blocks are semiorthogonal in chain order.
    if f1.kind == PRIM and f2.kind == PRIM:
        if f1.twist == f2.twist and f1.index > f2.index:
            return (TriState.VANISHES, "R3")

    # R4: a left-orthogonal class kills everything inside its defining symbol.
    if f1.kind == LEFT_PERP_AMB:
        if contains(f2, amb(f1.index, f1.twist, f1.side), profile):
            return (TriState.VANISHES, "R4")
    if f1.kind == LEFT_PERP_AMB_L:
        if contains(f2, amb_l(f1.index, f1.twist, f1.side), profile):
            return (TriState.VANISHES, "R4")

    # R5: nothing inside B^q maps to its right orthogonal; via the projection
    # adjunction the same holds for the q-th twisted blocks and columns.
    if f2.kind == RIGHT_PERP_DUAL:
        q, t = f2.index, f2.twist
        if contains(f1, dual_block(q, t, f1.side), profile):
            return (TriState.VANISHES, "R5")
        if f1.kind in (PRIM, AMB) and f1.twist == t + f1.index + 1 and f1.index < q:
            return (TriState.VANISHES, "R5")

    # T: template rule over the built-in families.
    rule = _template_rule(f1, f2, profile)
    if rule is not None:
        return (TriState.VANISHES, rule)

    # Serre flip: Hom(g, C^L_b(t)) is dual to Hom(C_b(t+l), g).
    if f2.kind == AMB_L and _depth < 2:
        flipped = _derive(
            amb(f2.index, f2.twist + profile.length, f2.side), f1, profile, _depth + 1
        )
        if flipped[0] is TriState.VANISHES:
            return (TriState.VANISHES, f"SD[{flipped[1]}]")

    return (TriState.UNKNOWN, None)


def _template_rule(
    f1: FactorSymbol, f2: FactorSymbol, profile: LefschetzProfile
) -> str | None:
    """Vanishes when a uniformly twisted template places a container of f2
    strictly left of a container of f1."""
    n = profile.length
    side = f1.side

    # T1 at shift w: components A_k(k+w).  Containers solve k + w = twist.
    for a1, s in _amb_containers(f1):
        for b2, t in _amb_containers(f2):
            # f1 in component k1 = s - w <= a1, f2 in component k2 = t - w <= b2
            for k1 in range(0, min(a1, n - 1) + 1):
                w = s - k1
                k2 = t - w
                if 0 <= k2 <= min(b2, n - 1) and k2 < k1:
                    return "T:T1"

    # T2 at shift w: components a_j(k+w), ordered by (k, j).
    if f1.kind == PRIM and f2.kind == PRIM:
        for k1 in range(0, f1.index + 1):
            w = f1.twist - k1
            k2 = f2.twist - w
            if 0 <= k2 <= f2.index and (k2, f2.index) < (k1, f1.index):
                return "T:T2"

    # T3 at shift w: components a*_j(w).
    if f1.kind == PRIM_STAR and f2.kind == PRIM_STAR:
        if f1.twist == f2.twist and f2.index < f1.index:
            return "T:T3"

    # T4(k) at shift w: C^L_b(b-l+1+w) for b in [k, l-1], then C_g(g+1+w).
    # Existence of a cut k placing the target container strictly left of the
    # source container is solved per slot pair instead of scanning cuts.
    pos1 = list(_serre_positions(f1, n))
    if pos1:
        pos2 = {}
        for w2, p2 in _serre_positions(f2, n):
            pos2.setdefault(w2, []).append(p2)
        for w1, (tag1, idx1) in pos1:
            for tag2, idx2 in pos2.get(w1, ()):
                if _serre_cut_exists(tag1, idx1, tag2, idx2, n):
                    return "T:T4"
    return None


def _serre_cut_exists(tag1: str, idx1: int, tag2: str, idx2: int, l: int) -> bool:
    """Some T4 cut places the target slot strictly left of the source slot.

    Source slots: head ("L", a) at position a-k, tail ("C", g) at (l-k)+g,
    valid for k <= a resp. k >= g+1.
    """
    if tag1 == "C" and tag2 == "L":
        # head slots sit left of tail slots; need a cut k in [idx1+1, idx2]
        return idx1 + 1 <= idx2
    if tag1 == "C" and tag2 == "C":
        # both in the tail; need a cut k in [idx1+1, l-1]
        return idx2 < idx1 <= l - 2
    if tag1 == "L" and tag2 == "L":
        return idx2 < idx1
    return False  # a tail slot is never left of a head slot


def _serre_positions(f: FactorSymbol, l: int) -> Iterator[tuple[int, tuple[str, int]]]:
    """(shift w, slot) pairs placing f inside some component of a T4 family.

    Slots are ("L", b) for the C^L_b(b-l+1+w) components and ("C", g) for the
    C_g(g+1+w) components; the containing component index is recorded.
    """
    if f.kind == AMB_L:
        # C^L_a(t) <= C^L_b(b-l+1+w) needs b <= a and b-l+1+w = t
        for b in range(1, f.index + 1):
            yield (f.twist - b + l - 1, ("L", b))
    if f.kind in (AMB, PRIM):
        # contained in C_g(g+1+w) for g <= index with g+1+w = twist
        for g in range(0, f.index + 1):
            yield (f.twist - g - 1, ("C", g))
    if f.kind in (DUAL_BLOCK, PRIM_STAR, RIGHT_PERP_DUAL):
        # contained in the first chain component C_0(1+w)
        yield (f.twist - 1, ("C", 0))


