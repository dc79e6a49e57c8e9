"""Sparse exact linear algebra over Q(q).

Vectors are plain dicts ``{key: RatFunc}`` with no zero entries.  Keys only
need to be hashable and mutually comparable; pivots are always the smallest
key of a row, which makes every echelon form deterministic.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping, Sequence

from .scalars import ONE, ZERO, RatFunc

Vec = dict


def vadd(u: Mapping, v: Mapping, c: RatFunc = ONE) -> dict:
    """``u + c*v`` as a new dict."""
    out = dict(u)
    vadd_into(out, v, c)
    return out


def vadd_into(out: dict, v: Mapping, c: RatFunc = ONE) -> None:
    if c.is_zero():
        return
    one = c.is_one()
    for k, x in v.items():
        y = x if one else x * c
        cur = out.get(k)
        if cur is None:
            out[k] = y
        else:
            s = cur + y
            if s.is_zero():
                del out[k]
            else:
                out[k] = s


def vscale(v: Mapping, c: RatFunc) -> dict:
    if c.is_zero():
        return {}
    if c.is_one():
        return dict(v)
    return {k: x * c for k, x in v.items()}


def vneg(v: Mapping) -> dict:
    return {k: -x for k, x in v.items()}


def vsum(terms: Iterable[tuple[RatFunc, Mapping]]) -> dict:
    out: dict = {}
    for c, v in terms:
        vadd_into(out, v, c)
    return out


def _normalized(v: dict) -> tuple[Hashable, dict]:
    piv = min(v)
    lead = v[piv]
    if not lead.is_one():
        inv = lead.inverse()
        v = {k: x * inv for k, x in v.items()}
    return piv, v


class Echelon:
    """Incrementally built row-echelon basis with coordinate tracking.

    Every stored row is a known combination of the vectors handed to
    :meth:`add`, so :meth:`coordinates` can express any vector in the span in
    terms of those original vectors.
    """

    def __init__(self, track: bool = True):
        self.rows: list[tuple[Hashable, dict, dict]] = []  # (pivot, row, combo)
        self.pivots: dict[Hashable, int] = {}
        self.track = track
        self.count = 0  # number of accepted input vectors

    def __len__(self) -> int:
        return len(self.rows)

    def _reduce(self, v: Mapping, combo: dict | None) -> tuple[dict, dict | None]:
        v = dict(v)
        for piv, row, rcombo in self.rows:
            c = v.get(piv)
            if c is None:
                continue
            vadd_into(v, row, -c)
            if combo is not None:
                vadd_into(combo, rcombo, -c)
        return v, combo

    def reduce(self, v: Mapping) -> dict:
        return self._reduce(v, None)[0]

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def add(self, v: Mapping) -> bool:
        """Insert ``v`` if independent; returns whether it was accepted."""
        combo = {self.count: ONE} if self.track else None
        r, combo = self._reduce(v, combo)
        if not r:
            return False
        piv, lead = min(r), r[min(r)]
        inv = lead.inverse()
        r = {k: x * inv for k, x in r.items()}
        if combo is not None:
            combo = {k: x * inv for k, x in combo.items()}
        self.pivots[piv] = len(self.rows)
        self.rows.append((piv, r, combo))
        self.count += 1
        return True

    def coordinates(self, v: Mapping) -> dict | None:
        """Coefficients of ``v`` on the accepted inputs, or ``None`` if outside the span."""
        if not self.track:
            raise ValueError("coordinate tracking disabled")
        out: dict = {}
        v = dict(v)
        for piv, row, combo in self.rows:
            c = v.get(piv)
            if c is None:
                continue
            vadd_into(v, row, -c)
            vadd_into(out, combo, c)
        if v:
            return None
        return out


def rref(rows: Iterable[Mapping]) -> list[tuple[Hashable, dict]]:
    """Reduced row echelon form; returns ``[(pivot, row)]`` sorted by pivot."""
    basis: list[tuple[Hashable, dict]] = []
    for v in rows:
        v = dict(v)
        for piv, row in basis:
            c = v.get(piv)
            if c is not None:
                vadd_into(v, row, -c)
        if not v:
            continue
        piv, v = _normalized(v)
        for idx, (p2, row) in enumerate(basis):
            c = row.get(piv)
            if c is not None:
                basis[idx] = (p2, vadd(row, v, -c))
        basis.append((piv, v))
    basis.sort(key=lambda t: t[0])
    return basis


def nullspace(rows: Iterable[Mapping], unknowns: Sequence[Hashable]) -> list[dict]:
    """Basis of ``{x : row . x = 0 for all rows}`` over the given unknowns.

    The basis is returned in reduced echelon form with each vector's first
    nonzero entry (in ``unknowns`` order) equal to 1.
    """
    order = {u: i for i, u in enumerate(unknowns)}
    # rename unknowns to their positions so pivots follow the requested order
    ech = rref({order[k]: c for k, c in r.items()} for r in rows)
    pivot_cols = {p for p, _ in ech}
    sols = []
    for free in range(len(unknowns)):
        if free in pivot_cols:
            continue
        v = {free: ONE}
        for p, row in ech:
            c = row.get(free)
            if c is not None:
                v[p] = -c
        sols.append(v)
    sols = [row for _, row in rref(sols)]
    return [{unknowns[i]: c for i, c in s.items()} for s in sols]


def solve_square(columns: Sequence[Mapping], size_keys: Sequence[Hashable]) -> list[dict]:
    """Invert the square matrix whose columns are given (as sparse vectors keyed
    by ``size_keys``).  Returns the rows of the inverse as dicts
    ``{key: coeff}``; row ``i`` pairs with column ``i``.
    """
    ech = Echelon()
    for c in columns:
        if not ech.add(c):
            raise ValueError("matrix is singular")
    if len(ech) != len(size_keys):
        raise ValueError("matrix is not square")
    inv_rows: list[dict] = [dict() for _ in columns]
    for key in size_keys:
        coords = ech.coordinates({key: ONE})
        for i, c in coords.items():
            inv_rows[i][key] = c
    return inv_rows


def is_zero_vec(v: Mapping) -> bool:
    return all(x.is_zero() for x in v.values())


class SMat:
    """Sparse matrix stored by columns: ``cols[j] = {i: entry}``."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: Sequence[Mapping] | None = None):
        self.nrows, self.ncols = nrows, ncols
        if cols is None:
            self.cols = [dict() for _ in range(ncols)]
        else:
            self.cols = [dict(c) for c in cols]
            assert len(self.cols) == ncols

    @classmethod
    def identity(cls, d: int) -> "SMat":
        return cls(d, d, [{i: ONE} for i in range(d)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SMat":
        return cls(nrows, ncols)

    @classmethod
    def diagonal(cls, entries: Sequence[RatFunc]) -> "SMat":
        return cls(len(entries), len(entries), [{i: x} if x else {} for i, x in enumerate(entries)])

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int, RatFunc]]) -> "SMat":
        m = cls(nrows, ncols)
        for i, j, x in entries:
            if x:
                col = m.cols[j]
                cur = col.get(i)
                s = x if cur is None else cur + x
                if s:
                    col[i] = s
                else:
                    col.pop(i, None)
        return m

    def entries(self):
        """Nonzero entries as ``(row, col, value)`` sorted row-major."""
        out = [(i, j, x) for j, c in enumerate(self.cols) for i, x in c.items()]
        out.sort(key=lambda t: (t[0], t[1]))
        return out

    def get(self, i: int, j: int) -> RatFunc:
        return self.cols[j].get(i, ZERO)

    def is_zero(self) -> bool:
        return not any(self.cols)

    def apply(self, v: Mapping[int, RatFunc]) -> dict:
        out: dict = {}
        for j, c in v.items():
            vadd_into(out, self.cols[j], c)
        return out

    def __matmul__(self, other: "SMat") -> "SMat":
        assert self.ncols == other.nrows
        return SMat(self.nrows, other.ncols, [self.apply(c) for c in other.cols])

    def __add__(self, other: "SMat") -> "SMat":
        assert (self.nrows, self.ncols) == (other.nrows, other.ncols)
        return SMat(self.nrows, self.ncols, [vadd(a, b) for a, b in zip(self.cols, other.cols)])

    def __sub__(self, other: "SMat") -> "SMat":
        return self + other.scale(-ONE)

    def __neg__(self) -> "SMat":
        return self.scale(-ONE)

    def scale(self, c: RatFunc) -> "SMat":
        return SMat(self.nrows, self.ncols, [vscale(col, c) for col in self.cols])

    def transpose(self) -> "SMat":
        t = SMat(self.ncols, self.nrows)
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                t.cols[i][j] = x
        return t

    def row(self, i: int) -> dict:
        return {j: c[i] for j, c in enumerate(self.cols) if i in c}

    def rows(self) -> list[dict]:
        out: list[dict] = [dict() for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SMat):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.cols == other.cols

    def first_difference(self, other: "SMat"):
        """First ``(row, col, mine, theirs)`` where the matrices differ, else ``None``."""
        for j in range(self.ncols):
            a, b = self.cols[j], other.cols[j]
            if a != b:
                for i in sorted(set(a) | set(b)):
                    x, y = a.get(i, ZERO), b.get(i, ZERO)
                    if x != y:
                        return (i, j, x, y)
        return None

    def __repr__(self) -> str:
        return f"SMat({self.nrows}x{self.ncols}, nnz={sum(map(len, self.cols))})"


__all__ = [
    "SMat",
    "Echelon",
    "ONE",
    "ZERO",
    "is_zero_vec",
    "nullspace",
    "rref",
    "solve_square",
    "vadd",
    "vadd_into",
    "vneg",
    "vscale",
    "vsum",
]
