"""Symmetric chain decompositions of noncrossing partition lattices.

A symmetric chain decomposition (SCD) of a graded poset partitions the
elements into saturated chains, each centered: the ranks of a chain's bottom
and top sum to the ranks of the poset's bottom and top.  Chains are lists of
poset elements in increasing order.

Three reusable ingredients:

  * boolean_scd: the bracket-matching decomposition of Bool(n),
  * product_scd: tiles the product of two decompositions with hook-shaped
    centered chains,
  * generic_scd: backtracking search on any graded rank-symmetric poset.

The family builders scd_T, scd_U, scd_V, scd_S combine these through the
removal recursion: splitting a lattice by the fate of the last stored point.
The A part holds the partitions where that point is a singleton or shares a
block with its stored predecessor; the B_k part holds those where its block
instead reaches the k-th point of the stored prefix and nothing earlier.
removal_class and decomposition_parts expose this split together with the
product posets each part matches, so tests can check the structure element
by element.
"""

from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    AssemblyFailure,
    HypothesisViolated,
    InvalidInput,
    NotGraded,
    NotRankSymmetric,
    UnknownFamily,
)
from .geometry import (
    Configuration,
    boundary_walk,
    hull_vertices,
    make_configuration,
    on_convex_boundary,
    standard_config,
)
from .partition import SetPartition
from .poset import (
    FinitePoset,
    _iter_bits,
    bool_poset,
    build_nc_poset,
    gradedness,
    interval,
    product_poset,
    rank_vector,
)

DEFAULT_STEP_LIMIT = 2_000_000


# ---------------------------------------------------------------------------
# verification

@dataclass
class VerifyResult:
    ok: bool
    reason: object  # str or None
    chain_count: int
    element_count: int
    lengths: dict   # chain length -> number of chains

    def __bool__(self):
        return self.ok


def verify_scd(poset: FinitePoset, chains) -> VerifyResult:
    """Check that chains form a symmetric chain decomposition of poset.

    Verifies that the poset is graded, that every chain is a saturated chain
    listed bottom to top, that each chain is centered, and that the chains
    partition the element set.
    """
    lengths = {}
    for ch in chains:
        lengths[len(ch)] = lengths.get(len(ch), 0) + 1
    count = len(chains)
    total = sum(len(ch) for ch in chains)

    def fail(msg):
        return VerifyResult(False, msg, count, total, lengths)

    info = gradedness(poset)
    if not info.is_graded:
        return fail("poset is not graded")
    if not poset.elements:
        if chains:
            return fail("nonempty chain list over an empty poset")
        return VerifyResult(True, None, 0, 0, {})
    lo = min(info.ranks)
    hi = max(info.ranks)
    cover_set = set(poset.covers())
    seen = set()
    for ci, ch in enumerate(chains):
        if not ch:
            return fail(f"chain {ci} is empty")
        try:
            idx = [poset.index(e) for e in ch]
        except InvalidInput:
            return fail(f"chain {ci} contains an element outside the poset")
        for a, b in zip(idx, idx[1:]):
            if (a, b) not in cover_set:
                return fail(
                    f"chain {ci} step {poset.elements[a]} -> {poset.elements[b]}"
                    " is not a covering step"
                )
        if info.ranks[idx[0]] + info.ranks[idx[-1]] != lo + hi:
            return fail(
                f"chain {ci} spans ranks {info.ranks[idx[0]]}..{info.ranks[idx[-1]]},"
                " not centered"
            )
        for i in idx:
            if i in seen:
                return fail(f"element {poset.elements[i]} appears twice")
            seen.add(i)
    if len(seen) != len(poset.elements):
        return fail(f"chains cover {len(seen)} of {len(poset.elements)} elements")
    return VerifyResult(True, None, count, total, lengths)


def symmetric_chain_profile(rank_vec) -> dict:
    """Expected chain-length multiset {length: count} for any SCD of a poset
    with the given rank sizes."""
    vec = list(rank_vec)
    if vec != vec[::-1]:
        raise NotRankSymmetric(f"rank vector {vec} is not palindromic")
    top = len(vec) - 1
    prof = {}
    prev = 0
    for k in range(top // 2 + 1):
        need = vec[k] - prev
        if need < 0:
            raise AssemblyFailure(f"rank sizes {vec} are not unimodal")
        if need:
            prof[top - 2 * k + 1] = need
        prev = vec[k]
    return prof


# ---------------------------------------------------------------------------
# building blocks

def boolean_scd(n: int):
    """Symmetric chain decomposition of Bool(n) by bracket matching.

    Read a subset of {0..n-1} as a word with 1 for open and 0 for close
    brackets.  Matched positions are frozen; the chain through a word varies
    its run of unmatched 1s, so each chain is recovered from the word with
    all unmatched positions cleared.  Elements are frozensets, matching
    bool_poset(n).
    """
    if n < 0:
        raise InvalidInput("boolean_scd needs n >= 0")
    groups = {}
    for w in range(1 << n):
        stack = []
        for i in range(n):
            if (w >> i) & 1:
                stack.append(i)
            elif stack:
                stack.pop()
        key = w
        for i in stack:
            key &= ~(1 << i)
        groups.setdefault(key, []).append(w)
    chains = []
    for key in sorted(groups):
        members = sorted(groups[key], key=lambda v: v.bit_count())
        chains.append(
            [frozenset(i for i in range(n) if (v >> i) & 1) for v in members]
        )
    return chains


def product_scd(chains_a, chains_b, combine=None):
    """Combine chain decompositions of two posets into one of their product.

    Every pair of chains spans a grid of pairs; the grid splits into nested
    hook-shaped chains (up one column, then along one row), each centered
    whenever the two input chains are.  combine(a, b) builds the output
    elements; the default keeps (a, b) pairs as used by product_poset.
    """
    if combine is None:
        combine = lambda a, b: (a, b)
    out = []
    for ca in chains_a:
        for cb in chains_b:
            a, b = len(ca), len(cb)
            for r in range(min(a, b)):
                chain = [combine(ca[r], cb[j]) for j in range(b - r)]
                chain.extend(combine(ca[i], cb[b - 1 - r]) for i in range(r + 1, a))
                out.append(chain)
    return out


def generic_scd(poset: FinitePoset, step_limit: int = DEFAULT_STEP_LIMIT):
    """Find an SCD of an arbitrary graded rank-symmetric poset by search.

    Chains are assigned longest first; within one length, start elements are
    forced into increasing index order, which prunes permutations of
    interchangeable chains.  Raises NotGraded or NotRankSymmetric when the
    preconditions fail and AssemblyFailure when the search is exhausted or
    the step budget runs out.
    """
    info = gradedness(poset)
    if not info.is_graded:
        return _raise_not_graded(info)
    if not poset.elements:
        return []
    vec = rank_vector(poset)
    if vec != vec[::-1]:
        raise NotRankSymmetric(f"rank vector {vec} is not palindromic")
    lo = min(info.ranks)
    rk = [r - lo for r in info.ranks]
    top = len(vec) - 1
    tasks = []
    prev = 0
    for k in range(top // 2 + 1):
        need = vec[k] - prev
        if need < 0:
            raise AssemblyFailure(f"rank sizes {vec} are not unimodal")
        tasks.extend([k] * need)
        prev = vec[k]
    covup, _ = poset.cover_masks()
    by_rank = {}
    for i, r in enumerate(rk):
        by_rank.setdefault(r, []).append(i)
    chains = []
    used = 0
    steps = 0

    def extend(path, hi):
        nonlocal steps
        steps += 1
        if steps > step_limit:
            raise AssemblyFailure("chain search exceeded its step budget")
        cur = path[-1]
        if rk[cur] == hi:
            yield path
            return
        for nxt in _iter_bits(covup[cur] & ~used):
            yield from extend(path + [nxt], hi)

    def solve(t, prev_start):
        nonlocal used
        if t == len(tasks):
            return True
        k = tasks[t]
        floor = prev_start if t > 0 and tasks[t - 1] == k else -1
        for start in by_rank.get(k, ()):
            if start <= floor or (used >> start) & 1:
                continue
            for path in extend([start], top - k):
                mask = 0
                for i in path:
                    mask |= 1 << i
                used |= mask
                chains.append(path)
                if solve(t + 1, start):
                    return True
                chains.pop()
                used &= ~mask
        return False

    if not solve(0, -1):
        raise AssemblyFailure("no symmetric chain decomposition found by search")
    return [[poset.elements[i] for i in path] for path in chains]


def _raise_not_graded(info):
    lo, hi = info.witness if info.witness else (None, None)
    raise NotGraded(f"poset is not graded; witness cover {lo} -> {hi}")


# ---------------------------------------------------------------------------
# partition surgery shared by the family builders and the part maps

def _relabel(pi: SetPartition, perm) -> SetPartition:
    return SetPartition.of(pi.ground, [tuple(perm[i] for i in b) for b in pi.blocks])


def _runs_partition(t: int, gaps) -> SetPartition:
    """Partition of 0..t-1 into runs; i and i+1 share a block iff i in gaps."""
    blocks = []
    cur = [0]
    for i in range(1, t):
        if (i - 1) in gaps:
            cur.append(i)
        else:
            blocks.append(tuple(cur))
            cur = [i]
    blocks.append(tuple(cur))
    return SetPartition.of(t, blocks)


def _add_last(pi: SetPartition, ground: int, with_partner: bool) -> SetPartition:
    """Extend a partition of 0..ground-2 by the point ground-1, either as a
    singleton or merged into the block of its predecessor ground-2."""
    blocks = [tuple(b) for b in pi.blocks]
    if with_partner:
        blocks = [b + (ground - 1,) if (ground - 2) in b else b for b in blocks]
    else:
        blocks.append((ground - 1,))
    return SetPartition.of(ground, blocks)


def _merge_parts(sigma: SetPartition, tau: SetPartition, offset: int, ground: int):
    """Assemble sigma (shifted to start at offset) with tau on the stored
    prefix 0..offset-1, attaching the last point ground-1 to the tau block
    holding the anchor offset-1."""
    anchor = offset - 1
    blocks = [tuple(i + offset for i in b) for b in sigma.blocks]
    for b in tau.blocks:
        blocks.append(tuple(b) + (ground - 1,) if anchor in b else tuple(b))
    return SetPartition.of(ground, blocks)


def _interval_chains(t: int):
    """SCD of the noncrossing partitions of t points in convex-boundary
    storage order on one line: interval partitions, Boolean by gap set."""
    if t == 0:
        return [[SetPartition.of(0, [])]]
    return [
        [_runs_partition(t, gaps) for gaps in ch] for ch in boolean_scd(t - 1)
    ]


@lru_cache(maxsize=None)
def _classical_chains(r: int):
    """SCD of the classical lattice of r points in strictly convex position."""
    chains = generic_scd(build_nc_poset(standard_config("Q", r)))
    return tuple(tuple(ch) for ch in chains)


# ---------------------------------------------------------------------------
# family builders

@lru_cache(maxsize=None)
def _family_chains(family: str, m: int, n: int):
    if family in ("U", "V"):
        total = m + n + (1 if family == "V" else 0)
        if m == 0 or n == 0:
            # one or both arms empty: all points collinear in stored order
            return tuple(tuple(ch) for ch in _interval_chains(total))
        if m == 1:
            if n == 1:
                if family == "U":
                    return ((SetPartition.singletons(2), SetPartition.one_block(2)),)
                return tuple(
                    tuple(ch)
                    for ch in generic_scd(build_nc_poset(standard_config("V", 1, 1)))
                )
            # reflect across the diagonal: stored order reverses
            flipped = _family_chains(family, n, 1)
            perm = [total - 1 - i for i in range(total)]
            return tuple(
                tuple(_relabel(p, perm) for p in ch) for ch in flipped
            )
    elif family == "S":
        total = m + n + 2
        if n == 0:
            return tuple(tuple(ch) for ch in _interval_chains(total))
        if m == 0:
            # all points lie on one circle
            return _classical_chains(total)
    else:
        raise UnknownFamily(f"no chain builder for family {family!r}")

    # removal recursion: split by the fate of the last stored point
    chains = []
    sub = _family_chains(family, m - 1, n)
    chains.extend(
        product_scd(
            sub,
            [(0, 1)],
            combine=lambda p, e: _add_last(p, total, bool(e)),
        )
    )
    for k in range(1, n + 1):
        off = n - k + 1
        sigma = _family_chains(family, m - 1, k - 1)
        if family == "S":
            tails = _classical_chains(off)
        else:
            tails = _interval_chains(off)
        chains.extend(
            product_scd(
                sigma,
                tails,
                combine=lambda s, t, off=off: _merge_parts(s, t, off, total),
            )
        )
    return tuple(tuple(ch) for ch in chains)


def _check_sizes(m, n):
    if not isinstance(m, int) or not isinstance(n, int) or m < 0 or n < 0:
        raise InvalidInput("size parameters must be nonnegative integers")


def scd_U(m: int, n: int):
    """Symmetric chain decomposition of the open-cone lattice NC(U_{m,n})."""
    _check_sizes(m, n)
    return [list(ch) for ch in _family_chains("U", m, n)]


def scd_V(m: int, n: int):
    """Symmetric chain decomposition of the closed-cone lattice NC(V_{m,n})."""
    _check_sizes(m, n)
    return [list(ch) for ch in _family_chains("V", m, n)]


def scd_S(m: int, n: int):
    """Symmetric chain decomposition of the semicircular lattice NC(S_{m,n})."""
    _check_sizes(m, n)
    return [list(ch) for ch in _family_chains("S", m, n)]


def scd_T(n: int):
    """Symmetric chain decomposition of NC(T_n).

    T_n stores the same points as U_{n,1} (off-line point first), so the
    chains are shared.
    """
    _check_sizes(n, 0)
    return [list(ch) for ch in _family_chains("U", n, 1)]


# ---------------------------------------------------------------------------
# the removal decomposition, exposed for structural checks

def removal_class(pi: SetPartition, prefix_count: int) -> str:
    """Name the removal part a partition falls into.

    The stored prefix holds prefix_count points of the far side, listed
    inward so that stored index h carries label prefix_count - h.  Returns
    "A" when the last point is a singleton or shares a block with its stored
    predecessor, else "B<k>" with k the smallest label in its block.
    """
    last = pi.ground - 1
    blk = pi.block_of(last)
    if len(blk) == 1 or (last - 1) in blk:
        return "A"
    labels = [prefix_count - h for h in blk if h < prefix_count]
    if not labels:
        raise AssemblyFailure(
            f"block {blk} of the last point avoids both the prefix and the predecessor"
        )
    return f"B{min(labels)}"


@dataclass
class DecompositionPart:
    name: str
    model: FinitePoset
    host_indices: list  # host element index for each model element, in order


@dataclass
class RemovalDecomposition:
    config: Configuration
    poset: FinitePoset
    parts: list
    prefix_count: int


def decomposition_parts(family: str, m: int, n=None) -> RemovalDecomposition:
    """Split a standard-family lattice into its removal parts.

    Returns the host lattice plus one DecompositionPart per part: "A" with
    model NC(host minus last point) x Bool(1), and "B1".."Bn" with model
    NC(points beyond the separating chord) x (Boolean tail for T/U/V,
    circular tail for S).  host_indices realizes the claimed isomorphism
    explicitly, element by element.

    Sizes follow the removal recursion's hypotheses: T needs n >= 2, U and V
    need m >= 2 and n >= 1, S needs m >= 1 and n >= 1.
    """
    if family == "T":
        if n is not None:
            raise InvalidInput("family T takes a single size parameter")
        if m < 2:
            raise InvalidInput("removal decomposition of T needs size >= 2")
        cfg = standard_config("T", m)
        fam, nn = "U", 1
    elif family in ("U", "V"):
        if n is None:
            raise InvalidInput(f"family {family} takes two size parameters")
        if m < 2 or n < 1:
            raise InvalidInput("removal decomposition needs m >= 2 and n >= 1")
        cfg = standard_config(family, m, n)
        fam, nn = family, n
    elif family == "S":
        if n is None:
            raise InvalidInput("family S takes two size parameters")
        if m < 1 or n < 1:
            raise InvalidInput("removal decomposition needs m >= 1 and n >= 1")
        cfg = standard_config("S", m, n)
        fam, nn = "S", n
    else:
        raise UnknownFamily(f"no removal decomposition for family {family!r}")

    host = build_nc_poset(cfg)
    N = len(cfg)
    parts = []

    sub_poset = build_nc_poset(make_configuration(cfg.points[:-1], cfg.labels[:-1]))
    model = product_poset(sub_poset, bool_poset(1))
    idx = [host.index(_add_last(p, N, bool(eps))) for (p, eps) in model.elements]
    parts.append(DecompositionPart("A", model, idx))

    for k in range(1, nn + 1):
        off = nn - k + 1
        beyond = build_nc_poset(
            make_configuration(cfg.points[off:N - 1], cfg.labels[off:N - 1])
        )
        if fam == "S":
            tail_model = build_nc_poset(standard_config("Q", off))
            as_tail = lambda te: te
        else:
            tail_model = bool_poset(off - 1)
            as_tail = lambda te, off=off: _runs_partition(off, te)
        model = product_poset(beyond, tail_model)
        idx = [
            host.index(_merge_parts(sig, as_tail(te), off, N))
            for (sig, te) in model.elements
        ]
        parts.append(DecompositionPart(f"B{k}", model, idx))
    return RemovalDecomposition(cfg, host, parts, nn)


# ---------------------------------------------------------------------------
# the generic last-point split on any convex-boundary configuration

@dataclass
class RemovalSplit:
    config: Configuration
    sub_config: Configuration
    alpha: SetPartition       # last point paired with its predecessor
    beta: SetPartition        # last point split off from everything else
    lower: FinitePoset        # interval [bottom, beta]: last point a singleton
    upper: FinitePoset        # interval [alpha, top]: last point with its predecessor


def split_at_last_point(config: Configuration, poset: FinitePoset = None) -> RemovalSplit:
    """Split NC(config) around removal of the last stored point.

    Hypotheses, checked exactly: every point lies on the convex boundary, the
    storage order walks that boundary counterclockwise (collinear
    configurations: along the line, either direction), and the first and
    last stored points are extreme.  Raises HypothesisViolated otherwise.

    The intervals [bottom, beta] and [alpha, top] returned are both copies of
    NC(config minus the last point) inside the host lattice.
    """
    N = len(config)
    if N < 2:
        raise HypothesisViolated("need at least two points to remove one")
    if not on_convex_boundary(config):
        raise HypothesisViolated("a point lies interior to the convex hull")
    walk = boundary_walk(config)
    ident = list(range(N))
    verts = set(hull_vertices(config))
    if len(verts) <= 2:
        ok = walk == ident or walk == ident[::-1]
    else:
        r = walk.index(0)
        ok = all(walk[(r + i) % N] == i for i in range(N))
    if not ok:
        raise HypothesisViolated(
            "storage order does not walk the convex boundary counterclockwise"
        )
    if 0 not in verts or N - 1 not in verts:
        raise HypothesisViolated("first and last stored points must be extreme")
    if poset is None:
        poset = build_nc_poset(config)
    alpha = SetPartition.of(N, [(i,) for i in range(N - 2)] + [(N - 2, N - 1)])
    beta = SetPartition.of(N, [tuple(range(N - 1)), (N - 1,)])
    lower = interval(poset, SetPartition.singletons(N), beta)
    upper = interval(poset, alpha, SetPartition.one_block(N))
    sub_config = make_configuration(config.points[:-1], config.labels[:-1])
    return RemovalSplit(config, sub_config, alpha, beta, lower, upper)
