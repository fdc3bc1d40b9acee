"""Set partitions of a configuration's point set, and the noncrossing test.

Partitions are stored canonically: each block sorted ascending, blocks sorted
by their minimum.  Points are identified by their index in the configuration.
The rank of a partition of an n-point ground set is n minus the number of
blocks; it is 0 on the all-singletons partition and n-1 on the one-block
partition (for nonempty ground sets).
"""

from dataclasses import dataclass
from functools import lru_cache

from .errors import EmptyBlock, GroundMismatch, InvalidInput, TooLarge
from .geometry import Configuration, _hull_pts, _hulls_intersect

DEFAULT_ENUM_CAP = 12


@dataclass(frozen=True)
class SetPartition:
    ground: int
    blocks: tuple  # tuple of tuples of ints, canonical form

    @classmethod
    def of(cls, ground, blocks) -> "SetPartition":
        """Validated, canonicalizing constructor."""
        if ground < 0:
            raise InvalidInput("ground size must be nonnegative")
        canon = []
        seen = set()
        for b in blocks:
            bs = sorted(b)
            if not bs:
                raise EmptyBlock("blocks must be nonempty")
            for i in bs:
                if not isinstance(i, int) or not (0 <= i < ground):
                    raise InvalidInput(f"block element {i!r} outside ground 0..{ground - 1}")
                if i in seen:
                    raise InvalidInput(f"element {i} appears in two blocks")
                seen.add(i)
            canon.append(tuple(bs))
        if len(seen) != ground:
            missing = sorted(set(range(ground)) - seen)
            raise InvalidInput(f"elements {missing} not covered by any block")
        canon.sort(key=lambda b: b[0])
        return cls(ground, tuple(canon))

    @classmethod
    def singletons(cls, ground) -> "SetPartition":
        return cls(ground, tuple((i,) for i in range(ground)))

    @classmethod
    def one_block(cls, ground) -> "SetPartition":
        if ground == 0:
            return cls(0, ())
        return cls(ground, (tuple(range(ground)),))

    @classmethod
    def from_assignment(cls, assignment) -> "SetPartition":
        """Partition from a block-id vector (ids arbitrary hashables)."""
        vec = list(assignment)
        groups = {}
        for i, a in enumerate(vec):
            groups.setdefault(a, []).append(i)
        blocks = sorted((tuple(g) for g in groups.values()), key=lambda b: b[0])
        return cls(len(vec), tuple(blocks))

    @property
    def bl(self) -> int:
        return len(self.blocks)

    @property
    def rank(self) -> int:
        return self.ground - len(self.blocks)

    def assignment(self):
        """Block index of every ground element, blocks numbered by min."""
        a = [0] * self.ground
        for bi, b in enumerate(self.blocks):
            for i in b:
                a[i] = bi
        return a

    def block_of(self, i: int):
        for b in self.blocks:
            if i in b:
                return b
        raise InvalidInput(f"element {i} outside ground 0..{self.ground - 1}")

    def to_obj(self):
        return [list(b) for b in self.blocks]

    def __str__(self):
        if not self.blocks:
            return "(empty)"
        return "|".join(",".join(str(i) for i in b) for b in self.blocks)


def refines(pi: SetPartition, mu: SetPartition) -> bool:
    """True iff every block of pi is contained in a block of mu."""
    if pi.ground != mu.ground:
        raise GroundMismatch(f"ground sizes differ: {pi.ground} vs {mu.ground}")
    am = mu.assignment()
    for b in pi.blocks:
        target = am[b[0]]
        for i in b[1:]:
            if am[i] != target:
                return False
    return True


def common_refinement(pi: SetPartition, mu: SetPartition) -> SetPartition:
    """Meet in the full partition lattice: blocks are pairwise intersections."""
    if pi.ground != mu.ground:
        raise GroundMismatch(f"ground sizes differ: {pi.ground} vs {mu.ground}")
    ap, am = pi.assignment(), mu.assignment()
    return SetPartition.from_assignment(list(zip(ap, am)))


def partition_join(pi: SetPartition, mu: SetPartition) -> SetPartition:
    """Join in the full partition lattice (transitive closure of same-block)."""
    if pi.ground != mu.ground:
        raise GroundMismatch(f"ground sizes differ: {pi.ground} vs {mu.ground}")
    parent = list(range(pi.ground))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for part in (pi, mu):
        for b in part.blocks:
            for i in b[1:]:
                union(b[0], i)
    return SetPartition.from_assignment([find(i) for i in range(pi.ground)])


@lru_cache(maxsize=64)
def _pair_index(n: int):
    idx = {}
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            idx[(i, j)] = k
            k += 1
    return idx


def pair_mask(pi: SetPartition) -> int:
    """Bitmask over element pairs (i<j) that share a block.

    pi refines mu iff pair_mask(pi) & ~pair_mask(mu) == 0; this is the fast
    comparability test used when building lattices.
    """
    idx = _pair_index(pi.ground)
    m = 0
    for b in pi.blocks:
        for s in range(len(b)):
            for t in range(s + 1, len(b)):
                m |= 1 << idx[(b[s], b[t])]
    return m


def is_noncrossing(config: Configuration, pi: SetPartition) -> bool:
    """True iff the blocks of pi have pairwise disjoint convex hulls."""
    if pi.ground != len(config):
        raise GroundMismatch(
            f"partition ground {pi.ground} vs configuration size {len(config)}"
        )
    pts = config.scaled
    hulls = [_hull_pts([pts[i] for i in b]) for b in pi.blocks]
    for a in range(len(hulls)):
        for b in range(a + 1, len(hulls)):
            if _hulls_intersect(hulls[a], hulls[b]):
                return False
    return True


def enumerate_all_partitions(ground: int):
    """All set partitions in lexicographic restricted-growth order (no
    geometry involved).  Used as the naive oracle and by brute-force checks."""
    if ground == 0:
        yield SetPartition(0, ())
        return
    a = [0] * ground

    def rec(i, nblocks):
        if i == ground:
            yield SetPartition.from_assignment(a)
            return
        for b in range(nblocks + 1):
            a[i] = b
            yield from rec(i + 1, max(nblocks, b + 1))

    yield from rec(1, 1)


def enumerate_noncrossing(config: Configuration, cap: int = DEFAULT_ENUM_CAP):
    """All noncrossing partitions of the configuration, in lexicographic
    restricted-growth order.

    Depth-first assignment of each point to an existing block or a new one;
    a partial assignment whose hulls already intersect is pruned, which is
    sound because hulls only grow as points are added.
    """
    n = len(config)
    if n > cap:
        raise TooLarge(f"configuration has {n} points, cap is {cap}")
    if n == 0:
        return [SetPartition(0, ())]
    pts = config.scaled
    out = []
    blocks = []  # lists of point indices, in creation order
    hulls = []   # parallel convex hulls (tuples of scaled points)

    def place(i):
        if i == n:
            out.append(SetPartition(n, tuple(tuple(b) for b in blocks)))
            return
        p = pts[i]
        for b in range(len(blocks)):
            grown = _hull_pts(hulls[b] + (p,))
            if any(
                c != b and _hulls_intersect(grown, hulls[c])
                for c in range(len(blocks))
            ):
                continue
            blocks[b].append(i)
            keep, hulls[b] = hulls[b], grown
            place(i + 1)
            blocks[b].pop()
            hulls[b] = keep
        single = (p,)
        if not any(_hulls_intersect(single, h) for h in hulls):
            blocks.append([i])
            hulls.append(single)
            place(i + 1)
            blocks.pop()
            hulls.pop()

    place(0)
    return out


def count_noncrossing(config: Configuration, cap: int = DEFAULT_ENUM_CAP) -> int:
    return len(enumerate_noncrossing(config, cap=cap))
