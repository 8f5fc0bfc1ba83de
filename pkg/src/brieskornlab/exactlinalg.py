"""Exact sparse linear algebra over Q: rank, kernel, canonical reduction.

Everything is fraction-free where it counts: input vectors are scaled to
integer rows, elimination combines rows by cross-multiplication and strips the
content, and rationals only appear in the final pivot-normalized form.  Pivots
are chosen sparsity-first (sparsest row, then the column hitting the fewest
rows, then the entry of smallest bit length) so the relation matrices coming
from discriminants of small hypersurfaces eliminate without fill-in blowup.

A `Subspace` is stored in reduced row echelon form with unit pivots, which
makes equality structural and makes `reduce` a single pass: tails only touch
non-pivot columns, so reductions never cascade.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .gradedpoly import InputError


class InvariantError(RuntimeError):
    """A machine-checked invariant failed."""


class QuotientMapError(InvariantError):
    """A map does not descend to the requested quotients."""


def _as_dict(v, ambient_dim: int) -> dict[int, Fraction]:
    if isinstance(v, Mapping):
        out = {}
        for c, val in v.items():
            if not 0 <= c < ambient_dim:
                raise InputError(f"coordinate {c} outside ambient dimension {ambient_dim}")
            if val:
                out[c] = val
        return out
    vv = list(v)
    if len(vv) != ambient_dim:
        raise InputError(f"vector length {len(vv)} != ambient dimension {ambient_dim}")
    return {c: val for c, val in enumerate(vv) if val}


def _int_row(v: Mapping[int, object]) -> dict[int, int]:
    """Scale a sparse rational row to integers and strip the content."""
    lcm = 1
    for val in v.values():
        if isinstance(val, Fraction):
            den = val.denominator
            lcm = lcm * den // gcd(lcm, den)
    row = {}
    g = 0
    for c, val in v.items():
        n = int(val * lcm) if lcm != 1 or isinstance(val, Fraction) else val
        if n:
            row[c] = n
            g = gcd(g, n)
    if g > 1:
        for c in row:
            row[c] //= g
    return row


def _strip_content(row: dict[int, int]) -> None:
    g = 0
    for val in row.values():
        g = gcd(g, val)
        if g == 1:
            return
    if g > 1:
        for c in row:
            row[c] //= g


def _forward_eliminate(int_rows: Iterable[dict[int, int]]) -> list[tuple[int, dict[int, int]]]:
    """Sparse fraction-free elimination; returns (pivot_col, row) in pivot time order.

    Each returned row is zero on the pivot columns of all earlier ones.
    """
    rows: dict[int, dict[int, int]] = {}
    by_col: dict[int, set[int]] = {}
    heap: list[tuple[int, int]] = []
    for row in int_rows:
        if not row:
            continue
        rid = len(rows)
        rows[rid] = row
        for c in row:
            by_col.setdefault(c, set()).add(rid)
        heapq.heappush(heap, (len(row), rid))

    finished: list[tuple[int, dict[int, int]]] = []
    while heap:
        length, rid = heapq.heappop(heap)
        row = rows.get(rid)
        if row is None or len(row) != length:
            continue  # stale heap entry
        # pivot column: fewest other rows, then smallest entry, then lowest index
        pcol = min(row, key=lambda c: (len(by_col[c]), abs(row[c]).bit_length(), c))
        pval = row[pcol]
        del rows[rid]
        for c in row:
            by_col[c].discard(rid)
        for oid in sorted(by_col[pcol]):
            other = rows[oid]
            q = other[pcol]
            g = gcd(pval, q)
            mo, mp = pval // g, q // g
            new = {}
            for c, val in other.items():
                new[c] = val * mo
            for c, val in row.items():
                s = new.get(c, 0) - val * mp
                if s:
                    new[c] = s
                else:
                    new.pop(c, None)
            for c in other:
                if c not in new:
                    by_col[c].discard(oid)
            _strip_content(new)
            if new:
                for c in new:
                    if c not in other:
                        by_col.setdefault(c, set()).add(oid)
                rows[oid] = new
                heapq.heappush(heap, (len(new), oid))
            else:
                for c in new:
                    by_col[c].discard(oid)
                del rows[oid]
        finished.append((pcol, row))
    return finished


def _rref(int_rows: Iterable[dict[int, int]]):
    """Full reduction: returns (pivots sorted, tails {pivot: {col: Fraction}})."""
    finished = _forward_eliminate(int_rows)
    # substitute in reverse pivot-time order: later pivot rows are already clean
    pivot_of = {}
    for i, (pcol, _) in enumerate(finished):
        pivot_of[pcol] = i
    for i in range(len(finished) - 1, -1, -1):
        pcol, row = finished[i]
        hits = [c for c in row if c != pcol and c in pivot_of and pivot_of[c] > i]
        for c in sorted(hits, key=lambda c: pivot_of[c]):
            jcol, jrow = finished[pivot_of[c]]
            q = row.get(c)
            if not q:
                continue
            p = jrow[jcol]
            g = gcd(p, q)
            mr, mj = p // g, q // g
            new = {cc: val * mr for cc, val in row.items()}
            for cc, val in jrow.items():
                s = new.get(cc, 0) - val * mj
                if s:
                    new[cc] = s
                else:
                    new.pop(cc, None)
            _strip_content(new)
            row = new
        finished[i] = (pcol, row)
    pivots = sorted(p for p, _ in finished)
    tails: dict[int, dict[int, Fraction]] = {}
    for pcol, row in finished:
        pv = row[pcol]
        tail = {}
        for c, val in row.items():
            if c != pcol:
                q = Fraction(val, pv)
                tail[c] = int(q) if q.denominator == 1 else q
        tails[pcol] = tail
    return pivots, tails


class Subspace:
    """A linear subspace of Q^ambient_dim in reduced row echelon form.

    Basis rows have unit pivots with distinct pivot columns and tails supported
    only on non-pivot columns.  The pivot columns are chosen for sparsity, not
    left-to-right, so the stored form is canonical per object but not across
    generator presentations; equality compares the spaces themselves.
    """

    __slots__ = ("ambient_dim", "pivots", "tails", "_pivset")

    def __init__(self, ambient_dim: int, pivots: Sequence[int], tails: dict):
        self.ambient_dim = ambient_dim
        self.pivots = tuple(pivots)
        self.tails = tails
        self._pivset = frozenset(pivots)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), {})

    @classmethod
    def from_vectors(cls, vectors: Iterable, ambient_dim: int) -> "Subspace":
        rows = [_int_row(_as_dict(v, ambient_dim)) for v in vectors]
        pivots, tails = _rref(r for r in rows if r)
        return cls(ambient_dim, pivots, tails)

    @classmethod
    def _from_int_rows(cls, int_rows: Iterable[dict[int, int]], ambient_dim: int) -> "Subspace":
        pivots, tails = _rref(int_rows)
        return cls(ambient_dim, pivots, tails)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def basis(self) -> list[dict[int, Fraction]]:
        """RREF basis rows (pivot coefficient 1), sorted by pivot column."""
        out = []
        for p in self.pivots:
            row = {p: 1}
            row.update(self.tails[p])
            out.append(row)
        return out

    def reduce(self, v) -> dict[int, Fraction]:
        """Canonical representative of v modulo the subspace.

        The result has zero at every pivot column; it is the unique member of
        v + subspace supported on non-pivot columns.
        """
        vv = _as_dict(v, self.ambient_dim)
        out: dict[int, Fraction] = {}
        for c, val in vv.items():
            if c not in self._pivset:
                out[c] = val
        for c in self.pivots:
            a = vv.get(c)
            if a:
                for cc, t in self.tails[c].items():
                    s = out.get(cc, 0) - a * t
                    if s:
                        out[cc] = s
                    else:
                        out.pop(cc, None)
        return {c: val for c, val in out.items() if val}

    def contains(self, v) -> bool:
        return not self.reduce(v)

    def __eq__(self, other) -> bool:
        # Pivot columns depend on the elimination order, so compare the spaces
        # themselves: equal dimension plus one-sided containment.
        if not isinstance(other, Subspace) or self.ambient_dim != other.ambient_dim:
            return False
        if self.dim != other.dim:
            return False
        if self.pivots == other.pivots and self.tails == other.tails:
            return True
        return all(other.contains(b) for b in self.basis())

    def __hash__(self) -> int:
        # weak but representation-independent; Subspace is rarely a dict key
        return hash((self.ambient_dim, self.dim))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def reduce_mod(v, s: Subspace) -> dict[int, Fraction]:
    """Canonical representative of v modulo s (sparse dict, pivot coords zero)."""
    return s.reduce(v)


def rank_of_vectors(vectors: Iterable, ambient_dim: int) -> int:
    rows = (_int_row(_as_dict(v, ambient_dim)) for v in vectors)
    return len(_forward_eliminate(r for r in rows if r))


class ExactMatrix:
    """Immutable sparse matrix over Q (rows of sparse dicts)."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: tuple):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def from_rows(cls, rows: Iterable, ncols: int) -> "ExactMatrix":
        clean = tuple(_as_dict(r, ncols) for r in rows)
        return cls(len(clean), ncols, clean)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls(nrows, ncols, tuple({} for _ in range(nrows)))

    def entry(self, r: int, c: int):
        return self.rows[r].get(c, 0)

    def rank(self) -> int:
        return rank_of_vectors(self.rows, self.ncols)

    def transpose(self) -> "ExactMatrix":
        cols: list[dict[int, Fraction]] = [dict() for _ in range(self.ncols)]
        for r, row in enumerate(self.rows):
            for c, val in row.items():
                cols[c][r] = val
        return ExactMatrix(self.ncols, self.nrows, tuple(cols))

    def columns(self) -> list[dict[int, Fraction]]:
        return list(self.transpose().rows)

    def matvec(self, v) -> dict[int, Fraction]:
        vv = _as_dict(v, self.ncols)
        out = {}
        for r, row in enumerate(self.rows):
            s = 0
            for c, val in row.items():
                a = vv.get(c)
                if a:
                    s += val * a
            if s:
                out[r] = s
        return out

    def kernel_basis(self) -> Subspace:
        """RREF basis of the null space {v : self @ v = 0}."""
        rowspace = Subspace.from_vectors(self.rows, self.ncols)
        pivots = set(rowspace.pivots)
        vectors = []
        for c in range(self.ncols):
            if c in pivots:
                continue
            v = {c: 1}
            for p in rowspace.pivots:
                t = rowspace.tails[p].get(c)
                if t:
                    v[p] = -t
            vectors.append(v)
        return Subspace.from_vectors(vectors, self.ncols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return False
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        return all(_as_dict(a, self.ncols) == _as_dict(b, self.ncols)
                   for a, b in zip(self.rows, other.rows))

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols,
                     tuple(frozenset(r.items()) for r in self.rows)))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.nrows}x{self.ncols})"


def image_dim_through_quotient(m: ExactMatrix, rel_src: Subspace, rel_dst: Subspace) -> int:
    """Rank of the map induced by m on (Q^cols / rel_src) -> (Q^rows / rel_dst).

    Checks that m maps rel_src into rel_dst (otherwise the induced map is not
    defined and QuotientMapError is raised).
    """
    if m.ncols != rel_src.ambient_dim or m.nrows != rel_dst.ambient_dim:
        raise InputError("matrix shape does not match the quotient ambients")
    for b in rel_src.basis():
        if not rel_dst.contains(m.matvec(b)):
            raise QuotientMapError("map does not send the source relations into the target relations")
    reduced = (rel_dst.reduce(col) for col in m.columns())
    return rank_of_vectors(reduced, rel_dst.ambient_dim)


class SpanSolver:
    """Incremental exact row space with coordinate recovery.

    add() keeps the internal rows mutually reduced (Gauss-Jordan), so express()
    is a single pass; combinations are tracked against the labels of the
    vectors that were added as new basis members.
    """

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self._rows: list[tuple[int, dict, dict]] = []  # (pivot, vector, combo)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, v, track: bool):
        vv = dict(_as_dict(v, self.ambient_dim))
        combo: dict = {}
        for pivot, vec, cmb in self._rows:
            a = vv.get(pivot)
            if not a:
                continue
            for c, val in vec.items():
                s = vv.get(c, 0) - a * val
                if s:
                    vv[c] = s
                else:
                    vv.pop(c, None)
            if track:
                for lbl, val in cmb.items():
                    s = combo.get(lbl, 0) + a * val
                    if s:
                        combo[lbl] = s
                    else:
                        combo.pop(lbl, None)
        return vv, combo

    def add(self, v, label) -> bool:
        """Add v; True if it enlarged the span (label becomes a basis name)."""
        vv, cmb0 = self._reduce(v, track=True)
        if not vv:
            return False
        pivot = min(vv)
        pval = vv[pivot]
        vec = {c: _ratio(val, pval) for c, val in vv.items()}
        # vv = v - sum(cmb0 . originals), so the stored row vec = vv / pval
        # carries 1/pval of the new vector minus the reduction contributions
        combo = {label: _ratio(1, pval)}
        for lbl, val in cmb0.items():
            s = combo.get(lbl, 0) - _ratio(val, pval)
            if s:
                combo[lbl] = s
            else:
                combo.pop(lbl, None)
        # keep older rows reduced against the new pivot
        for i, (p, w, cmb) in enumerate(self._rows):
            a = w.get(pivot)
            if not a:
                continue
            neww = dict(w)
            for c, val in vec.items():
                s = neww.get(c, 0) - a * val
                if s:
                    neww[c] = s
                else:
                    neww.pop(c, None)
            newc = dict(cmb)
            for lbl, val in combo.items():
                s = newc.get(lbl, 0) - a * val
                if s:
                    newc[lbl] = s
                else:
                    newc.pop(lbl, None)
            self._rows[i] = (p, neww, newc)
        self._rows.append((pivot, vec, combo))
        return True

    def express(self, v):
        """Coordinates of v over the added basis labels, or None if outside."""
        vv, combo = self._reduce(v, track=True)
        if vv:
            return None
        return combo


def _ratio(a, b) -> Fraction:
    q = Fraction(a) / Fraction(b) if not isinstance(a, Fraction) or not isinstance(b, Fraction) else a / b
    return int(q) if isinstance(q, Fraction) and q.denominator == 1 else q
