"""Finite posets, the noncrossing-partition lattice builder, and order checks.

A FinitePoset stores an explicit element list (any hashable values) together
with the strict order relation as per-element bitmasks.  Covering relations
are derived by minimal-element peeling along a linear extension, so they are
correct even when the poset turns out not to be graded.

The noncrossing lattice of a configuration is built from the canonical
enumeration order; comparability of two partitions is decided by inclusion of
their "same-block pair" bitmasks, swept in bulk with numpy.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    GroundMismatch,
    InvalidInput,
    NotComparable,
    NotGraded,
    NotNoncrossing,
    TooLarge,
)
from .geometry import Configuration, _hull_pts, _hulls_intersect
from .partition import (
    SetPartition,
    common_refinement,
    enumerate_noncrossing,
    is_noncrossing,
    pair_mask,
    partition_join,
    DEFAULT_ENUM_CAP,
)

DEFAULT_LATTICE_CAP = 20000
DEFAULT_DUALITY_CAP = 2000


def _iter_bits(x: int):
    while x:
        b = x & -x
        yield b.bit_length() - 1
        x ^= b


class FinitePoset:
    """Explicit finite poset.  Element order is fixed and deterministic."""

    def __init__(self, elements, up_strict, down_strict, ranks=None):
        self.elements = list(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise InvalidInput("poset elements must be distinct")
        self._up = up_strict        # strict up-sets as bitmasks
        self._down = down_strict
        self.ranks = list(ranks) if ranks is not None else None
        self._covers = None

    @classmethod
    def from_leq(cls, elements, leq, ranks=None):
        els = list(elements)
        n = len(els)
        up = [0] * n
        down = [0] * n
        for i in range(n):
            for j in range(n):
                if i != j and leq(els[i], els[j]):
                    up[i] |= 1 << j
                    down[j] |= 1 << i
        rk = None
        if ranks is not None:
            rk = [ranks(e) for e in els] if callable(ranks) else list(ranks)
        return cls(els, up, down, rk)

    def __len__(self):
        return len(self.elements)

    def index(self, element) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise InvalidInput(f"element {element!r} not in poset") from None

    def leq_idx(self, i: int, j: int) -> bool:
        return i == j or bool((self._up[i] >> j) & 1)

    def leq(self, a, b) -> bool:
        return self.leq_idx(self.index(a), self.index(b))

    def up_mask(self, i: int, strict=True) -> int:
        return self._up[i] if strict else self._up[i] | (1 << i)

    def down_mask(self, i: int, strict=True) -> int:
        return self._down[i] if strict else self._down[i] | (1 << i)

    def linear_extension(self):
        """Indices in an order compatible with the partial order."""
        n = len(self.elements)
        if self.ranks is not None:
            return sorted(range(n), key=lambda i: (self.ranks[i], i))
        return sorted(range(n), key=lambda i: (self._down[i].bit_count(), i))

    def covers(self):
        """All covering pairs (i, j) with element i covered by element j."""
        if self._covers is None:
            order = self.linear_extension()
            pos = [0] * len(order)
            for p, i in enumerate(order):
                pos[i] = p
            out = []
            for i in range(len(self.elements)):
                reached = 0
                for j in sorted(_iter_bits(self._up[i]), key=lambda k: pos[k]):
                    if (reached >> j) & 1:
                        continue
                    out.append((i, j))
                    reached |= self._up[j] | (1 << j)
            out.sort()
            self._covers = out
        return self._covers

    def cover_masks(self):
        n = len(self.elements)
        covup = [0] * n
        covdown = [0] * n
        for (i, j) in self.covers():
            covup[i] |= 1 << j
            covdown[j] |= 1 << i
        return covup, covdown

    def minimal_indices(self):
        return [i for i in range(len(self.elements)) if self._down[i] == 0]

    def maximal_indices(self):
        return [i for i in range(len(self.elements)) if self._up[i] == 0]

    @property
    def bottom(self):
        mins = self.minimal_indices()
        return self.elements[mins[0]] if len(mins) == 1 else None

    @property
    def top(self):
        maxs = self.maximal_indices()
        return self.elements[maxs[0]] if len(maxs) == 1 else None

    def dual(self) -> "FinitePoset":
        rk = None
        if self.ranks is not None:
            m = max(self.ranks) if self.ranks else 0
            rk = [m - r for r in self.ranks]
        return FinitePoset(self.elements, list(self._down), list(self._up), rk)

    def induced(self, indices) -> "FinitePoset":
        """Subposet on the given element indices (order restriction)."""
        sub = list(indices)
        seen = set(sub)
        if len(seen) != len(sub):
            raise InvalidInput("induced subposet indices must be distinct")
        up = []
        down = []
        for s in sub:
            mu = 0
            md = 0
            for p, t in enumerate(sub):
                if t != s:
                    if (self._up[s] >> t) & 1:
                        mu |= 1 << p
                    if (self._down[s] >> t) & 1:
                        md |= 1 << p
            up.append(mu)
            down.append(md)
        rk = [self.ranks[s] for s in sub] if self.ranks is not None else None
        return FinitePoset([self.elements[s] for s in sub], up, down, rk)


# ---------------------------------------------------------------------------
# noncrossing lattice construction

def build_nc_poset(
    config: Configuration,
    cap: int = DEFAULT_ENUM_CAP,
    lattice_cap: int = DEFAULT_LATTICE_CAP,
) -> FinitePoset:
    """The poset of all noncrossing partitions of config, ordered by
    refinement, with elements in canonical enumeration order."""
    elems = enumerate_noncrossing(config, cap=cap)
    n = len(elems)
    if n > lattice_cap:
        raise TooLarge(f"lattice has {n} elements, cap is {lattice_cap}")
    ranks = [p.rank for p in elems]
    masks = [pair_mask(p) for p in elems]
    bits = max(1, len(config) * (len(config) - 1) // 2)
    words = (bits + 63) // 64
    cols = [
        np.array([(m >> (64 * w)) & 0xFFFFFFFFFFFFFFFF for m in masks], dtype=np.uint64)
        for w in range(words)
    ]
    up = [0] * n
    down = [0] * n
    chunk = max(1, (1 << 22) // max(n, 1))
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        # leq[i, j] for i in chunk: pair bits of i contained in those of j
        acc = None
        for w in range(words):
            part = (cols[w][lo:hi, None] & ~cols[w][None, :]) == 0
            acc = part if acc is None else (acc & part)
        for r in range(hi - lo):
            i = lo + r
            row = acc[r]
            row[i] = False
            m = int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")
            up[i] = m
            for j in _iter_bits(m):
                down[j] |= 1 << i
    return FinitePoset(elems, up, down, ranks)


def bool_poset(n: int) -> FinitePoset:
    """Boolean lattice of all subsets of {0..n-1}, as frozensets."""
    if n < 0:
        raise InvalidInput("bool_poset needs n >= 0")
    els = sorted(
        (frozenset(_iter_bits(m)) for m in range(1 << n)),
        key=lambda s: (len(s), tuple(sorted(s))),
    )
    return FinitePoset.from_leq(els, frozenset.issubset, ranks=len)


def product_poset(a: FinitePoset, b: FinitePoset) -> FinitePoset:
    """Direct product ordered componentwise; elements are (a_el, b_el) pairs."""
    na, nb = len(a), len(b)
    els = [(x, y) for x in a.elements for y in b.elements]
    bup = [b.up_mask(j, strict=False) for j in range(nb)]
    up = []
    for i in range(na):
        ua = a.up_mask(i, strict=False)
        for j in range(nb):
            m = 0
            for i2 in _iter_bits(ua):
                m |= bup[j] << (i2 * nb)
            m &= ~(1 << (i * nb + j))
            up.append(m)
    down = [0] * (na * nb)
    for e, m in enumerate(up):
        for f in _iter_bits(m):
            down[f] |= 1 << e
    rk = None
    if a.ranks is not None and b.ranks is not None:
        rk = [a.ranks[i] + b.ranks[j] for i in range(na) for j in range(nb)]
    return FinitePoset(els, up, down, rk)


# ---------------------------------------------------------------------------
# gradedness and rank structure

@dataclass
class GradedInfo:
    is_graded: bool
    ranks: tuple
    witness: tuple  # None, or a covering pair (lower, upper) jumping rank


def _candidate_ranks(poset: FinitePoset):
    if poset.ranks is not None:
        return list(poset.ranks)
    # height function: longest chain from a minimal element
    order = poset.linear_extension()
    h = [0] * len(poset)
    for i in order:
        d = poset.down_mask(i)
        h[i] = max((h[j] + 1 for j in _iter_bits(d)), default=0)
    return h


def gradedness(poset: FinitePoset) -> GradedInfo:
    """Check that every covering step raises the candidate rank by exactly 1.

    For noncrossing lattices the candidate rank of a partition is
    (ground size) - (number of blocks).
    """
    ranks = _candidate_ranks(poset)
    witness = None
    ok = True
    for (i, j) in poset.covers():
        if ranks[j] - ranks[i] != 1:
            ok = False
            witness = (poset.elements[i], poset.elements[j])
            break
    return GradedInfo(ok, tuple(ranks), witness)


def rank_vector(poset: FinitePoset):
    """Element counts per rank, bottom rank normalized to 0.  Requires a
    graded poset."""
    info = gradedness(poset)
    if not info.is_graded:
        raise NotGraded(f"not graded; witness cover {info.witness[0]} -> {info.witness[1]}")
    if not poset.elements:
        return []
    lo = min(info.ranks)
    hi = max(info.ranks)
    vec = [0] * (hi - lo + 1)
    for r in info.ranks:
        vec[r - lo] += 1
    return vec


def is_rank_symmetric(poset: FinitePoset) -> bool:
    vec = rank_vector(poset)
    return vec == vec[::-1]


# ---------------------------------------------------------------------------
# isomorphism and self-duality

def _structure_data(poset: FinitePoset):
    covup, covdown = poset.cover_masks()
    n = len(poset)
    heights = _candidate_ranks(FinitePoset(range(n), list(poset._up), list(poset._down)))
    depths = _candidate_ranks(
        FinitePoset(range(n), list(poset._down), list(poset._up))
    )
    init = [
        (heights[i], depths[i], covup[i].bit_count(), covdown[i].bit_count())
        for i in range(n)
    ]
    return init, covup, covdown


def _joint_refine(init_a, covs_a, init_b, covs_b):
    """Color refinement over both posets with one shared interning table, so
    equal colors mean equal invariants across the two."""
    covup_a, covdown_a = covs_a
    covup_b, covdown_b = covs_b
    canon = {}
    ca = [canon.setdefault(c, len(canon)) for c in init_a]
    cb = [canon.setdefault(c, len(canon)) for c in init_b]
    while True:
        canon = {}

        def sig(cur, covup, covdown, i):
            return (
                cur[i],
                tuple(sorted(cur[j] for j in _iter_bits(covup[i]))),
                tuple(sorted(cur[j] for j in _iter_bits(covdown[i]))),
            )

        na = [
            canon.setdefault(sig(ca, covup_a, covdown_a, i), len(canon))
            for i in range(len(ca))
        ]
        nb = [
            canon.setdefault(sig(cb, covup_b, covdown_b, i), len(canon))
            for i in range(len(cb))
        ]
        if len(set(na) | set(nb)) == len(set(ca) | set(cb)):
            return na, nb
        ca, cb = na, nb


def poset_isomorphic(a: FinitePoset, b: FinitePoset) -> bool:
    """Search for an order isomorphism (equivalently a cover-digraph
    isomorphism).  Color refinement prunes; backtracking completes."""
    if len(a) != len(b):
        return False
    if len(a) == 0:
        return True
    init_a, covup_a, covdown_a = _structure_data(a)
    init_b, covup_b, covdown_b = _structure_data(b)
    ca, cb = _joint_refine(init_a, (covup_a, covdown_a), init_b, (covup_b, covdown_b))
    hist_a = {}
    for c in ca:
        hist_a[c] = hist_a.get(c, 0) + 1
    hist_b = {}
    for c in cb:
        hist_b[c] = hist_b.get(c, 0) + 1
    if hist_a != hist_b:
        return False
    n = len(a)
    by_color_b = {}
    for j, c in enumerate(cb):
        by_color_b.setdefault(c, []).append(j)
    # map rarest colors first
    order = sorted(range(n), key=lambda i: (hist_a[ca[i]], ca[i], i))
    img = [-1] * n
    used = [False] * n
    mapped_a = 0

    def extend(k):
        nonlocal mapped_a
        if k == n:
            return True
        i = order[k]
        for j in by_color_b[ca[i]]:
            if used[j]:
                continue
            ok = True
            for i2 in _iter_bits(covup_a[i] & mapped_a):
                if not (covup_b[j] >> img[i2]) & 1:
                    ok = False
                    break
            if ok:
                for i2 in _iter_bits(covdown_a[i] & mapped_a):
                    if not (covdown_b[j] >> img[i2]) & 1:
                        ok = False
                        break
            if ok:
                # reverse direction: mapped cover-neighbors of j must pull back
                cnt_up = (covup_a[i] & mapped_a).bit_count()
                have_up = sum(
                    1 for j2 in _iter_bits(covup_b[j]) if used[j2]
                )
                cnt_down = (covdown_a[i] & mapped_a).bit_count()
                have_down = sum(
                    1 for j2 in _iter_bits(covdown_b[j]) if used[j2]
                )
                if cnt_up != have_up or cnt_down != have_down:
                    ok = False
            if ok:
                img[i] = j
                used[j] = True
                mapped_a |= 1 << i
                if extend(k + 1):
                    return True
                img[i] = -1
                used[j] = False
                mapped_a &= ~(1 << i)
        return False

    return extend(0)


def is_self_dual(poset: FinitePoset, cap: int = DEFAULT_DUALITY_CAP) -> bool:
    """Search for an order-reversing bijection of the poset onto itself."""
    if len(poset) > cap:
        raise TooLarge(f"poset has {len(poset)} elements, duality cap is {cap}")
    return poset_isomorphic(poset, poset.dual())


# ---------------------------------------------------------------------------
# meet and join of noncrossing partitions

def nc_meet(config: Configuration, pi: SetPartition, mu: SetPartition) -> SetPartition:
    """Meet in the noncrossing lattice: the common refinement (which is
    automatically noncrossing)."""
    _require_noncrossing(config, pi)
    _require_noncrossing(config, mu)
    return common_refinement(pi, mu)


def nc_join(config: Configuration, pi: SetPartition, mu: SetPartition) -> SetPartition:
    """Join in the noncrossing lattice.

    Start from the join in the full partition lattice, then repeatedly merge
    the lexicographically first pair of blocks whose hulls intersect.  The
    tests verify against the brute-force minimum upper bound.
    """
    _require_noncrossing(config, pi)
    _require_noncrossing(config, mu)
    cur = partition_join(pi, mu)
    pts = config.scaled
    while True:
        hulls = [_hull_pts([pts[i] for i in b]) for b in cur.blocks]
        clash = None
        for x in range(len(hulls)):
            for y in range(x + 1, len(hulls)):
                if _hulls_intersect(hulls[x], hulls[y]):
                    clash = (x, y)
                    break
            if clash:
                break
        if clash is None:
            return cur
        x, y = clash
        merged = [b for k, b in enumerate(cur.blocks) if k not in (x, y)]
        merged.append(tuple(sorted(cur.blocks[x] + cur.blocks[y])))
        cur = SetPartition.of(cur.ground, merged)


def _require_noncrossing(config, pi):
    if pi.ground != len(config):
        raise GroundMismatch(f"partition ground {pi.ground} vs configuration {len(config)}")
    if not is_noncrossing(config, pi):
        raise NotNoncrossing(f"partition {pi} is crossing for this configuration")


# ---------------------------------------------------------------------------
# intervals and lattice verification

def interval(poset: FinitePoset, lo, hi) -> FinitePoset:
    """Induced subposet on {x : lo <= x <= hi}.  NotComparable unless
    lo <= hi."""
    i = poset.index(lo)
    j = poset.index(hi)
    if not poset.leq_idx(i, j):
        raise NotComparable(f"{lo} is not below {hi}")
    mask = poset.up_mask(i, strict=False) & poset.down_mask(j, strict=False)
    return poset.induced(sorted(_iter_bits(mask)))


def lattice_check(poset: FinitePoset, cap: int = DEFAULT_DUALITY_CAP):
    """Verify every pair of elements has a unique meet and a unique join.

    Returns (ok, detail) where detail names the first offending pair.
    """
    n = len(poset)
    if n > cap:
        raise TooLarge(f"poset has {n} elements, lattice-check cap is {cap}")
    for i in range(n):
        di = poset.down_mask(i, strict=False)
        ui = poset.up_mask(i, strict=False)
        for j in range(i + 1, n):
            m = di & poset.down_mask(j, strict=False)
            tops = [k for k in _iter_bits(m) if poset.up_mask(k) & m == 0]
            if len(tops) != 1:
                return False, (
                    f"elements {poset.elements[i]} and {poset.elements[j]} have "
                    f"{len(tops)} maximal common lower bounds"
                )
            u = ui & poset.up_mask(j, strict=False)
            bots = [k for k in _iter_bits(u) if poset.down_mask(k) & u == 0]
            if len(bots) != 1:
                return False, (
                    f"elements {poset.elements[i]} and {poset.elements[j]} have "
                    f"{len(bots)} minimal common upper bounds"
                )
    return True, None


# ---------------------------------------------------------------------------
# exports

def _element_str(e):
    if isinstance(e, SetPartition):
        return str(e)
    if isinstance(e, frozenset):
        return "{" + ",".join(str(x) for x in sorted(e)) + "}"
    return str(e)


def poset_to_dot(poset: FinitePoset, title: str = "poset") -> str:
    """Hasse diagram in DOT, layered by rank when the poset is graded."""
    lines = [f'digraph "{title}" {{', "  rankdir = BT;", '  node [shape = box];']
    for i, e in enumerate(poset.elements):
        lines.append(f'  n{i} [label = "{_element_str(e)}"];')
    for (i, j) in poset.covers():
        lines.append(f"  n{i} -> n{j};")
    info = gradedness(poset)
    if info.is_graded and poset.elements:
        lo = min(info.ranks)
        hi = max(info.ranks)
        for r in range(lo, hi + 1):
            members = [i for i in range(len(poset)) if info.ranks[i] == r]
            if members:
                row = "; ".join(f"n{i}" for i in members)
                lines.append(f"  {{ rank = same; {row}; }}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_to_json_obj(poset: FinitePoset) -> dict:
    info = gradedness(poset)
    flags = {"graded": info.is_graded}
    if info.is_graded:
        vec = rank_vector(poset)
        flags["rank_symmetric"] = vec == vec[::-1]
        rv = vec
    else:
        flags["rank_symmetric"] = None
        rv = None
    els = []
    for e in poset.elements:
        els.append(e.to_obj() if isinstance(e, SetPartition) else _element_str(e))
    return {
        "elements": els,
        "covers": [list(c) for c in poset.covers()],
        "rank_vector": rv,
        "flags": flags,
    }
