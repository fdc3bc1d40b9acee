"""Exact planar geometry for point configurations.

All coordinates are rational (fractions.Fraction); every predicate is decided
by exact sign computations, so there are no epsilon tolerances anywhere.
Internally a configuration is also kept as integer-scaled coordinates (common
denominator cleared), which keeps the hot predicates in plain int arithmetic.

A configuration is a finite list of distinct labelled points.  The standard
families are laid out so that the whole configuration sits on the boundary of
a convex polygon, listed in counterclockwise boundary order, with the point
removed by the recursive decompositions stored last:

    P n      p_1..p_n on a horizontal line, left to right
    Q n      n points on the unit circle, counterclockwise from (1, 0)
    T n      y, x_1..x_n with y = (0, 1) off the line of x_i = (i, 0)
    U m n    y_n..y_1, x_1..x_m  (open cone: x_i = (i, 0), y_j = (0, j))
    V m n    y_n..y_1, z, x_1..x_m with z = (0, 0) the cone apex
    S m n    y_n..y_1, x_0..x_{m+1}: m+2 points on the segment [-1, 1]
             including both corners, n points on the upper unit circle

Circle points use the rational parametrization
t -> ((1-t^2)/(1+t^2), 2t/(1+t^2)); the round-side points y_1..y_n take
t = n, n-1, .., 1 (t decreasing), so the stored order y_n..y_1 runs
counterclockwise and the whole point list is a counterclockwise walk of the
convex boundary.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
import json
import math

from .errors import (
    DuplicatePoint,
    EmptyBlock,
    InvalidInput,
    LabelMismatch,
    UnknownFamily,
)

FAMILIES = ("P", "Q", "T", "U", "V", "S")


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"bad rational literal {value!r}") from exc
    raise InvalidInput(f"coordinate must be int, Fraction or string, got {type(value).__name__}")


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", _frac(self.x))
        object.__setattr__(self, "y", _frac(self.y))

    def __str__(self):
        return f"({self.x}, {self.y})"


@dataclass(frozen=True)
class Configuration:
    """Distinct labelled points; order is significant."""

    points: tuple
    labels: tuple

    def __len__(self):
        return len(self.points)

    @cached_property
    def scaled(self):
        """Points as integer pairs over a cleared common denominator."""
        denoms = [c.denominator for p in self.points for c in (p.x, p.y)]
        lcm = 1
        for d in denoms:
            lcm = lcm * d // math.gcd(lcm, d)
        return tuple(
            (int(p.x * lcm), int(p.y * lcm)) for p in self.points
        )


def make_configuration(points, labels=None) -> Configuration:
    pts = tuple(p if isinstance(p, Point) else Point(p[0], p[1]) for p in points)
    seen = {}
    for i, p in enumerate(pts):
        key = (p.x, p.y)
        if key in seen:
            raise DuplicatePoint(f"points {seen[key]} and {i} coincide at {p}")
        seen[key] = i
    if labels is None:
        labs = tuple(f"p{i}" for i in range(len(pts)))
    else:
        labs = tuple(str(s) for s in labels)
        if len(labs) != len(pts):
            raise LabelMismatch(f"{len(labs)} labels for {len(pts)} points")
    return Configuration(pts, labs)


def _circle_point(t: Fraction) -> Point:
    den = 1 + t * t
    return Point((1 - t * t) / den, 2 * t / den)


def standard_config(family: str, m: int, n=None) -> Configuration:
    """Build a standard family configuration.

    P, Q, T take a single size parameter; U, V, S take (m, n).
    """
    if family not in FAMILIES:
        raise UnknownFamily(f"family must be one of {'/'.join(FAMILIES)}, got {family!r}")
    one_param = family in ("P", "Q", "T")
    if one_param and n is not None:
        raise InvalidInput(f"family {family} takes a single size parameter")
    if not one_param and n is None:
        raise InvalidInput(f"family {family} takes two size parameters")
    if m < 0 or (n is not None and n < 0):
        raise InvalidInput("size parameters must be nonnegative")

    if family == "P":
        return make_configuration(
            [Point(i, 0) for i in range(1, m + 1)],
            [f"p{i}" for i in range(1, m + 1)],
        )
    if family == "Q":
        return make_configuration(
            [_circle_point(Fraction(i)) for i in range(m)],
            [f"q{i}" for i in range(1, m + 1)],
        )
    if family == "T":
        pts = [Point(0, 1)] + [Point(i, 0) for i in range(1, m + 1)]
        labs = ["y"] + [f"x{i}" for i in range(1, m + 1)]
        return make_configuration(pts, labs)

    ys = [Point(0, j) for j in range(n, 0, -1)]
    ylabs = [f"y{j}" for j in range(n, 0, -1)]
    xs = [Point(i, 0) for i in range(1, m + 1)]
    xlabs = [f"x{i}" for i in range(1, m + 1)]
    if family == "U":
        return make_configuration(ys + xs, ylabs + xlabs)
    if family == "V":
        return make_configuration(ys + [Point(0, 0)] + xs, ylabs + ["z"] + xlabs)

    # S: arc points t = n..1 (so stored y_n..y_1 is counterclockwise), then
    # the flat side corner-to-corner.
    arc = [_circle_point(Fraction(n + 1 - j)) for j in range(n, 0, -1)]
    arclabs = [f"y{j}" for j in range(n, 0, -1)]
    flat = [Point(Fraction(-1) + Fraction(2 * i, m + 1), 0) for i in range(m + 2)]
    flatlabs = [f"x{i}" for i in range(m + 2)]
    return make_configuration(arc + flat, arclabs + flatlabs)


# ---------------------------------------------------------------------------
# exact predicates (work on (x, y) tuples of ints or Fractions alike)

def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def orientation(a, b, c) -> int:
    """Sign of the turn a->b->c: +1 left (ccw), -1 right, 0 collinear."""
    v = _cross(_as_pair(a), _as_pair(b), _as_pair(c))
    return (v > 0) - (v < 0)


def _as_pair(p):
    if isinstance(p, Point):
        return (p.x, p.y)
    return p


def _hull_pts(pts):
    """Convex hull of distinct coordinate pairs, counterclockwise.

    Returns the extreme points only: a single point, the two endpoints of a
    collinear set, or the polygon vertices starting at the lexicographic
    minimum.  Input order does not matter.
    """
    ps = sorted(set(pts))
    if len(ps) <= 1:
        return tuple(ps)
    lower = []
    for p in ps:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(ps):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return tuple(lower[:-1] + upper[:-1])


def convex_hull(config: Configuration, block) -> tuple:
    """Hull of the given point indices, as Points in counterclockwise order."""
    idx = list(block)
    if not idx:
        raise EmptyBlock("cannot take the hull of an empty block")
    npts = len(config.points)
    for i in idx:
        if not (0 <= i < npts):
            raise InvalidInput(f"point index {i} out of range for {npts} points")
    hull = _hull_pts([(config.points[i].x, config.points[i].y) for i in idx])
    return tuple(Point(x, y) for (x, y) in hull)


def _on_segment(p, a, b):
    # p, a, b collinear assumed checked by caller via cross == 0
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def _segments_intersect(p, q, r, s) -> bool:
    d1 = _cross(p, q, r)
    d2 = _cross(p, q, s)
    d3 = _cross(r, s, p)
    d4 = _cross(r, s, q)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    ):
        return True
    if d1 == 0 and _on_segment(r, p, q):
        return True
    if d2 == 0 and _on_segment(s, p, q):
        return True
    if d3 == 0 and _on_segment(p, r, s):
        return True
    if d4 == 0 and _on_segment(q, r, s):
        return True
    return False


def _point_in_hull(p, hull) -> bool:
    k = len(hull)
    if k == 1:
        return p == hull[0]
    if k == 2:
        return _cross(hull[0], hull[1], p) == 0 and _on_segment(p, hull[0], hull[1])
    for i in range(k):
        if _cross(hull[i], hull[(i + 1) % k], p) < 0:
            return False
    return True


def _edges(hull):
    k = len(hull)
    if k == 1:
        return ()
    if k == 2:
        return ((hull[0], hull[1]),)
    return tuple((hull[i], hull[(i + 1) % k]) for i in range(k))


def _hulls_intersect(ha, hb) -> bool:
    # bounding-box reject first; everything after is exact anyway, this is
    # just the cheap common case
    if max(p[0] for p in ha) < min(p[0] for p in hb):
        return False
    if max(p[0] for p in hb) < min(p[0] for p in ha):
        return False
    if max(p[1] for p in ha) < min(p[1] for p in hb):
        return False
    if max(p[1] for p in hb) < min(p[1] for p in ha):
        return False
    for p in ha:
        if _point_in_hull(p, hb):
            return True
    for p in hb:
        if _point_in_hull(p, ha):
            return True
    for (a, b) in _edges(ha):
        for (c, d) in _edges(hb):
            if _segments_intersect(a, b, c, d):
                return True
    return False


def hulls_disjoint(hull_a, hull_b) -> bool:
    """True iff the two convex hulls share no point (boundary contact counts
    as intersection)."""
    ha = tuple(_as_pair(p) for p in hull_a)
    hb = tuple(_as_pair(p) for p in hull_b)
    if not ha or not hb:
        raise EmptyBlock("hulls_disjoint needs nonempty hulls")
    return not _hulls_intersect(ha, hb)


def on_convex_boundary(config: Configuration) -> bool:
    """True iff every point lies on the boundary of the convex hull."""
    pts = config.scaled
    if len(pts) <= 2:
        return True
    hull = _hull_pts(pts)
    if len(hull) <= 2:
        return True
    k = len(hull)
    hullset = set(hull)
    for p in pts:
        if p in hullset:
            continue
        if all(_cross(hull[i], hull[(i + 1) % k], p) > 0 for i in range(k)):
            return False
    return True


def boundary_walk(config: Configuration):
    """Indices of all points in counterclockwise convex-boundary order.

    Precondition: on_convex_boundary(config).  For full-dimensional hulls the
    walk starts at the hull vertex with lexicographically smallest
    coordinates; for collinear configurations it is the line order.  Raises
    InvalidInput when some point is interior.
    """
    pts = config.scaled
    if not on_convex_boundary(config):
        raise InvalidInput("configuration has a hull-interior point")
    if len(pts) <= 1:
        return list(range(len(pts)))
    hull = _hull_pts(pts)
    if len(hull) <= 2:
        return sorted(range(len(pts)), key=lambda i: pts[i])
    where = {}
    k = len(hull)
    for i, p in enumerate(pts):
        if p in set(hull):
            where[i] = (hull.index(p), 0, 0)
            continue
        for e in range(k):
            a, b = hull[e], hull[(e + 1) % k]
            if _cross(a, b, p) == 0 and _on_segment(p, a, b):
                # order along the edge by squared distance from its start
                d = (p[0] - a[0]) ** 2 + (p[1] - a[1]) ** 2
                where[i] = (e, 1, d)
                break
    return sorted(range(len(pts)), key=lambda i: where[i])


def hull_vertices(config: Configuration):
    """Indices of the points that are extreme (hull vertices)."""
    pts = config.scaled
    hull = set(_hull_pts(pts))
    return [i for i, p in enumerate(pts) if p in hull]


# ---------------------------------------------------------------------------
# JSON external format

def config_to_json_obj(config: Configuration) -> dict:
    return {
        "points": [[str(p.x), str(p.y)] for p in config.points],
        "labels": list(config.labels),
    }


def config_from_json_obj(obj) -> Configuration:
    if not isinstance(obj, dict) or "points" not in obj:
        raise InvalidInput("configuration JSON must be an object with a 'points' key")
    raw = obj["points"]
    if not isinstance(raw, list):
        raise InvalidInput("'points' must be a list")
    pts = []
    for entry in raw:
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise InvalidInput(f"each point must be a [x, y] pair, got {entry!r}")
        pts.append(Point(_frac(entry[0]), _frac(entry[1])))
    labels = obj.get("labels")
    if labels is not None and not isinstance(labels, list):
        raise InvalidInput("'labels' must be a list")
    return make_configuration(pts, labels)


def config_to_json(config: Configuration) -> str:
    return json.dumps(config_to_json_obj(config), indent=2)


def config_from_json(text: str) -> Configuration:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"invalid JSON: {exc}") from exc
    return config_from_json_obj(obj)
