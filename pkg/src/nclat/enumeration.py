"""Exact counting of noncrossing partition lattices, three independent ways.

Sizes of the standard-family lattices are computed by

  * recurrences with explicit boundary rows (t_sequence, u_table, v_table,
    s_table),
  * truncated power series with integer coefficients expanded from closed
    rational forms (series_T, series_U, series_V, series_S),
  * brute-force enumeration of the lattices themselves (brute_table).

cross_check and t_cross_check run the legs side by side and report any
disagreeing cell, which is the main guard against a silent error in any one
method.

Convention: the open-cone table starts at u[0][0] = 0 even though the empty
configuration vacuously has the single empty partition.  The zero makes the
recurrence and the series agree (the k = 1 term of the recursion must
contribute nothing when both arms are empty), so the brute leg adopts it for
that one cell.  count_noncrossing itself reports 1 there.
"""

from dataclasses import dataclass
import math

from .errors import InvalidInput, UnknownFamily
from .geometry import standard_config
from .partition import DEFAULT_ENUM_CAP, count_noncrossing


def catalan(n: int) -> int:
    if n < 0:
        raise InvalidInput("catalan numbers need n >= 0")
    return math.comb(2 * n, n) // (n + 1)


# ---------------------------------------------------------------------------
# truncated integer power series

class UnivariateSeries:
    """Integer power series truncated after x^order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int):
        if order < 0:
            raise InvalidInput("series order must be nonnegative")
        cs = [int(c) for c in coeffs][: order + 1]
        cs += [0] * (order + 1 - len(cs))
        self.order = order
        self.coeffs = cs

    @classmethod
    def from_terms(cls, terms: dict, order: int) -> "UnivariateSeries":
        cs = [0] * (order + 1)
        for p, c in terms.items():
            if p < 0:
                raise InvalidInput("powers must be nonnegative")
            if p <= order:
                cs[p] = c
        return cls(cs, order)

    def coefficient(self, p: int) -> int:
        if not (0 <= p <= self.order):
            raise InvalidInput(f"power {p} outside truncation order {self.order}")
        return self.coeffs[p]

    def _match(self, other):
        if not isinstance(other, UnivariateSeries):
            raise InvalidInput("expected a UnivariateSeries")
        if other.order != self.order:
            raise InvalidInput("series orders differ")
        return other

    def __add__(self, other):
        other = self._match(other)
        return UnivariateSeries(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], self.order
        )

    def __sub__(self, other):
        other = self._match(other)
        return UnivariateSeries(
            [a - b for a, b in zip(self.coeffs, other.coeffs)], self.order
        )

    def __mul__(self, other):
        other = self._match(other)
        out = [0] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(self.order + 1 - i):
                out[i + j] += a * other.coeffs[j]
        return UnivariateSeries(out, self.order)

    def reciprocal(self) -> "UnivariateSeries":
        a0 = self.coeffs[0]
        if a0 not in (1, -1):
            raise InvalidInput("reciprocal needs constant term 1 or -1")
        out = [0] * (self.order + 1)
        out[0] = a0
        for p in range(1, self.order + 1):
            acc = 0
            for q in range(1, p + 1):
                acc += self.coeffs[q] * out[p - q]
            out[p] = -a0 * acc
        return UnivariateSeries(out, self.order)

    def __eq__(self, other):
        return (
            isinstance(other, UnivariateSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"UnivariateSeries({self.coeffs}, order={self.order})"


class BivariateSeries:
    """Integer power series in x and y, truncated at order in each variable.

    coeffs[i][j] is the coefficient of x^i y^j.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int):
        if order < 0:
            raise InvalidInput("series order must be nonnegative")
        grid = [[0] * (order + 1) for _ in range(order + 1)]
        for i, row in enumerate(coeffs):
            if i > order:
                break
            for j, c in enumerate(row):
                if j > order:
                    break
                grid[i][j] = int(c)
        self.order = order
        self.coeffs = grid

    @classmethod
    def from_terms(cls, terms: dict, order: int) -> "BivariateSeries":
        s = cls([], order)
        for (i, j), c in terms.items():
            if i < 0 or j < 0:
                raise InvalidInput("powers must be nonnegative")
            if i <= order and j <= order:
                s.coeffs[i][j] = c
        return s

    def coefficient(self, i: int, j: int) -> int:
        if not (0 <= i <= self.order and 0 <= j <= self.order):
            raise InvalidInput(f"power ({i}, {j}) outside truncation order {self.order}")
        return self.coeffs[i][j]

    def _match(self, other):
        if not isinstance(other, BivariateSeries):
            raise InvalidInput("expected a BivariateSeries")
        if other.order != self.order:
            raise InvalidInput("series orders differ")
        return other

    def __add__(self, other):
        other = self._match(other)
        return BivariateSeries(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.coeffs, other.coeffs)
            ],
            self.order,
        )

    def __sub__(self, other):
        other = self._match(other)
        return BivariateSeries(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.coeffs, other.coeffs)
            ],
            self.order,
        )

    def __mul__(self, other):
        other = self._match(other)
        d = self.order
        out = [[0] * (d + 1) for _ in range(d + 1)]
        for i in range(d + 1):
            for j in range(d + 1):
                a = self.coeffs[i][j]
                if a == 0:
                    continue
                for p in range(d + 1 - i):
                    rb = other.coeffs[p]
                    for q in range(d + 1 - j):
                        if rb[q]:
                            out[i + p][j + q] += a * rb[q]
        return BivariateSeries(out, self.order)

    def reciprocal(self) -> "BivariateSeries":
        a00 = self.coeffs[0][0]
        if a00 not in (1, -1):
            raise InvalidInput("reciprocal needs constant term 1 or -1")
        d = self.order
        out = [[0] * (d + 1) for _ in range(d + 1)]
        out[0][0] = a00
        for i in range(d + 1):
            for j in range(d + 1):
                if i == 0 and j == 0:
                    continue
                acc = 0
                for p in range(i + 1):
                    ra = self.coeffs[p]
                    for q in range(j + 1):
                        if (p or q) and ra[q]:
                            acc += ra[q] * out[i - p][j - q]
                out[i][j] = -a00 * acc
        return BivariateSeries(out, self.order)

    def __eq__(self, other):
        return (
            isinstance(other, BivariateSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"BivariateSeries(order={self.order})"


# ---------------------------------------------------------------------------
# recurrence tables

def t_closed(n: int) -> int:
    """Closed form (n+3) 2^(n-2), valid from n = 2."""
    if n < 2:
        raise InvalidInput("the closed form starts at n = 2")
    return (n + 3) << (n - 2)


def t_sequence(max_n: int):
    """Lattice sizes for the one-off-line family by recurrence,
    t_n = 2 t_{n-1} + 2^(n-2) from n = 2, seeded 1, 2."""
    if max_n < 0:
        raise InvalidInput("max_n must be nonnegative")
    seq = [1, 2][: max_n + 1]
    for n in range(2, max_n + 1):
        seq.append(2 * seq[-1] + (1 << (n - 2)))
    return seq


def u_table(max_m: int, max_n: int):
    """Open-cone sizes by recurrence.

    Boundary rows: u[0][0] = 0 (see the module docstring), u[0][n] and
    u[m][0] are the collinear counts 2^(n-1) and 2^(m-1), and row m = 1 is
    the one-off-line sequence.  From m = 2 the removal recursion applies:
    u[m][n] = 2 u[m-1][n] + sum over k of u[m-1][k-1] 2^(n-k).
    """
    _check_extents(max_m, max_n)
    u = [[0] * (max_n + 1) for _ in range(max_m + 1)]
    for n in range(1, max_n + 1):
        u[0][n] = 1 << (n - 1)
    if max_m >= 1:
        trow = t_sequence(max_n)
        for n in range(max_n + 1):
            u[1][n] = trow[n]
        u[1][0] = 1
    for m in range(2, max_m + 1):
        u[m][0] = 1 << (m - 1)
        for n in range(1, max_n + 1):
            acc = 2 * u[m - 1][n]
            for k in range(1, n + 1):
                acc += u[m - 1][k - 1] << (n - k)
            u[m][n] = acc
    return u


def v_table(max_m: int, max_n: int):
    """Closed-cone sizes by recurrence.

    The corner point is a singleton or joins the first point of either arm
    (or both), giving v[m][n] = u[m][n] + v[m-1][n] + v[m][n-1] - v[m-1][n-1]
    for m, n >= 1, with Boolean boundary rows v[0][n] = 2^n, v[m][0] = 2^m.
    """
    _check_extents(max_m, max_n)
    u = u_table(max_m, max_n)
    v = [[0] * (max_n + 1) for _ in range(max_m + 1)]
    for n in range(max_n + 1):
        v[0][n] = 1 << n
    for m in range(1, max_m + 1):
        v[m][0] = 1 << m
        for n in range(1, max_n + 1):
            v[m][n] = u[m][n] + v[m - 1][n] + v[m][n - 1] - v[m - 1][n - 1]
    return v


def s_table(max_m: int, max_n: int):
    """Semicircular sizes by recurrence.

    s[m][n] = 2 s[m-1][n] + sum over k of s[m-1][k-1] C_{n-k+1} for
    m, n >= 1, with s[0][n] = C_{n+2} (all points on one circle) and
    s[m][0] = 2^(m+1) (all points on one line).
    """
    _check_extents(max_m, max_n)
    s = [[0] * (max_n + 1) for _ in range(max_m + 1)]
    for n in range(max_n + 1):
        s[0][n] = catalan(n + 2)
    for m in range(1, max_m + 1):
        s[m][0] = 1 << (m + 1)
        for n in range(1, max_n + 1):
            acc = 2 * s[m - 1][n]
            for k in range(1, n + 1):
                acc += s[m - 1][k - 1] * catalan(n - k + 1)
            s[m][n] = acc
    return s


def _check_extents(max_m, max_n):
    if max_m < 0 or max_n < 0:
        raise InvalidInput("table extents must be nonnegative")


def brute_table(family: str, max_m: int, max_n: int, cap: int = DEFAULT_ENUM_CAP):
    """Lattice sizes by direct enumeration of each configuration.

    The u[0][0] cell is reported as 0 to match the open-cone table
    convention; everywhere else the count is exactly what
    count_noncrossing returns.
    """
    if family not in ("U", "V", "S"):
        raise UnknownFamily(f"brute_table handles U, V, S, got {family!r}")
    _check_extents(max_m, max_n)
    rows = []
    for m in range(max_m + 1):
        row = []
        for n in range(max_n + 1):
            if family == "U" and m == 0 and n == 0:
                row.append(0)
                continue
            row.append(count_noncrossing(standard_config(family, m, n), cap=cap))
        rows.append(row)
    return rows


def brute_t_sequence(max_n: int, cap: int = DEFAULT_ENUM_CAP):
    return [
        count_noncrossing(standard_config("T", n), cap=cap)
        for n in range(max_n + 1)
    ]


# ---------------------------------------------------------------------------
# series expansions of the closed forms

def series_T(order: int) -> UnivariateSeries:
    """(1-x)^2 / (1-2x)^2 as a truncated series."""
    num = UnivariateSeries.from_terms({0: 1, 1: -2, 2: 1}, order)
    den = UnivariateSeries.from_terms({0: 1, 1: -4, 2: 4}, order)
    return num * den.reciprocal()


def _cone_denominator(order: int) -> BivariateSeries:
    return BivariateSeries.from_terms(
        {(0, 0): 1, (1, 0): -2, (0, 1): -2, (1, 1): 3}, order
    )


def series_U(order: int) -> BivariateSeries:
    """(x + y - 2xy) / (1 - 2x - 2y + 3xy) as a truncated series."""
    num = BivariateSeries.from_terms({(1, 0): 1, (0, 1): 1, (1, 1): -2}, order)
    return num * _cone_denominator(order).reciprocal()


def series_V(order: int) -> BivariateSeries:
    """1 / (1 - 2x - 2y + 3xy) as a truncated series."""
    return _cone_denominator(order).reciprocal()


def series_S(order: int) -> BivariateSeries:
    """Semicircular sizes: ((C(y) - 1 - y) / y^2) / (1 - x (1 + C(y))),
    with C the Catalan generating function."""
    lead = BivariateSeries.from_terms(
        {(0, j): catalan(j + 2) for j in range(order + 1)}, order
    )
    terms = {(0, 0): 1, (1, 0): -2}
    for j in range(1, order + 1):
        terms[(1, j)] = -catalan(j)
    den = BivariateSeries.from_terms(terms, order)
    return lead * den.reciprocal()


def series_table(family: str, max_m: int, max_n: int):
    """Coefficient grid of the family's series, shaped like the recurrence
    tables."""
    if family not in ("U", "V", "S"):
        raise UnknownFamily(f"series_table handles U, V, S, got {family!r}")
    _check_extents(max_m, max_n)
    ser = {"U": series_U, "V": series_V, "S": series_S}[family](max(max_m, max_n))
    return [
        [ser.coefficient(m, n) for n in range(max_n + 1)]
        for m in range(max_m + 1)
    ]


# ---------------------------------------------------------------------------
# cross-checking

@dataclass
class CountTable:
    family: str
    source: str
    rows: list

    def to_csv(self) -> str:
        width = len(self.rows[0]) if self.rows else 0
        lines = ["m\\n," + ",".join(str(n) for n in range(width))]
        for m, row in enumerate(self.rows):
            lines.append(f"{m}," + ",".join(str(c) for c in row))
        return "\n".join(lines) + "\n"


@dataclass
class CrossCheck:
    family: str
    tables: dict        # source name -> rows
    mismatches: list    # (source_a, source_b, m, n, value_a, value_b)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _compare_tables(tables: dict):
    names = list(tables)
    base = names[0]
    mism = []
    for other in names[1:]:
        for m, (ra, rb) in enumerate(zip(tables[base], tables[other])):
            for n, (a, b) in enumerate(zip(ra, rb)):
                if a != b:
                    mism.append((base, other, m, n, a, b))
    return mism


def cross_check(
    family: str,
    max_m: int,
    max_n: int,
    include_brute: bool = True,
    cap: int = DEFAULT_ENUM_CAP,
) -> CrossCheck:
    """Compare the recurrence, series, and optional brute-force tables."""
    if family not in ("U", "V", "S"):
        raise UnknownFamily(f"cross_check handles U, V, S, got {family!r}")
    rec = {"U": u_table, "V": v_table, "S": s_table}[family](max_m, max_n)
    tables = {
        "recurrence": rec,
        "series": series_table(family, max_m, max_n),
    }
    if include_brute:
        tables["brute"] = brute_table(family, max_m, max_n, cap=cap)
    return CrossCheck(family, tables, _compare_tables(tables))


def t_cross_check(
    max_n: int, include_brute: bool = True, cap: int = DEFAULT_ENUM_CAP
) -> CrossCheck:
    """Compare the recurrence, closed form, series, and optional brute count
    for the one-off-line family.  Tables here are single rows indexed by n;
    the closed form is compared from n = 2 on."""
    rec = t_sequence(max_n)
    closed = rec[: min(2, max_n + 1)] + [t_closed(n) for n in range(2, max_n + 1)]
    ser = series_T(max_n)
    tables = {
        "recurrence": [rec],
        "closed": [closed],
        "series": [[ser.coefficient(n) for n in range(max_n + 1)]],
    }
    if include_brute:
        tables["brute"] = [brute_t_sequence(max_n, cap=cap)]
    return CrossCheck("T", tables, _compare_tables(tables))
