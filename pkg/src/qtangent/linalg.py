"""Exact dense linear algebra over one scalar tower: reduced row echelon
form, kernels, and the subspace lattice (meet, join, annihilator).

Subspaces are stored as RREF basis matrices inside a declared ambient, so
subspace equality is plain matrix equality.
"""

from __future__ import annotations

from collections import namedtuple
from fractions import Fraction

from .errors import AmbientMismatchError, DegeneratePairingError, MixedTowerError
from .fields import coerce_to, common_tower, one_of, zero_of


class Matrix:
    """Immutable dense matrix over a single field tower."""

    __slots__ = ("rows", "nrows", "ncols", "tower")

    def __init__(self, rows, ncols=None):
        rows = [list(r) for r in rows]
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged matrix")
        elif ncols is None:
            ncols = 0
        tower = common_tower(x for r in rows for x in r)
        self.tower = tower
        self.rows = tuple(tuple(coerce_to(x, tower) for x in r) for r in rows)
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def identity(cls, n, tower=("rational",)):
        one, zero = one_of(tower), zero_of(tower)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    def transpose(self):
        return Matrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def stack(self, other):
        if other.ncols != self.ncols and other.nrows and self.nrows:
            raise AmbientMismatchError("stacking matrices of different widths")
        return Matrix(list(self.rows) + list(other.rows), ncols=self.ncols)

    def mul(self, other):
        if self.ncols != other.nrows:
            raise ValueError("matrix shape mismatch")
        t = common_tower([zero_of(self.tower), zero_of(other.tower)])
        zero = zero_of(t)
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    a = self.rows[i][k]
                    if a == 0:
                        continue
                    acc = acc + a * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return Matrix(out, ncols=other.ncols)

    def is_zero(self):
        return all(x == 0 for r in self.rows for x in r)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"


RrefResult = namedtuple("RrefResult", ["reduced", "rank", "pivots"])


def _rref_rows(rows, ncols):
    """In-place RREF on a list of row lists; returns (rows, pivots)."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c]
        if inv != 1:
            rows[r] = [x / inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rref(m: Matrix) -> RrefResult:
    """Unique reduced row echelon form with leftmost pivoting."""
    rows = [list(r) for r in m.rows]
    rows, pivots = _rref_rows(rows, m.ncols)
    return RrefResult(Matrix(rows, ncols=m.ncols), len(pivots), pivots)


class Subspace:
    """Row space inside a labeled ambient, canonicalized by RREF.

    Equality of subspaces is equality of (ambient, label, basis matrix).
    """

    __slots__ = ("ambient", "label", "basis", "pivots", "tower")

    def __init__(self, basis: Matrix, ambient: int, label=""):
        if basis.nrows and basis.ncols != ambient:
            raise AmbientMismatchError("basis width differs from ambient dimension")
        red, rank, pivots = rref(basis)
        rows = [r for r in red.rows[:rank]]
        self.basis = Matrix(rows, ncols=ambient)
        self.ambient = ambient
        self.label = label
        self.pivots = tuple(pivots)
        self.tower = self.basis.tower

    @classmethod
    def span(cls, vectors, ambient, label=""):
        return cls(Matrix(list(vectors), ncols=ambient), ambient, label)

    @classmethod
    def zero(cls, ambient, label=""):
        return cls(Matrix([], ncols=ambient), ambient, label)

    @classmethod
    def full(cls, ambient, label="", tower=("rational",)):
        return cls(Matrix.identity(ambient, tower), ambient, label)

    @property
    def dim(self):
        return self.basis.nrows

    def _reduce_vector(self, vec):
        t = common_tower([zero_of(self.tower)] + list(vec))
        v = [coerce_to(x, t) for x in vec]
        for row, p in zip(self.basis.rows, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [x - f * coerce_to(y, t) for x, y in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        if len(vec) != self.ambient:
            raise AmbientMismatchError("vector length differs from ambient")
        return all(x == 0 for x in self._reduce_vector(vec))

    def contains_subspace(self, other) -> bool:
        self._check_compatible(other)
        return all(self.contains(r) for r in other.basis.rows)

    def _check_compatible(self, other):
        if self.ambient != other.ambient or self.label != other.label:
            raise AmbientMismatchError(
                f"ambient mismatch: ({self.ambient},{self.label}) vs "
                f"({other.ambient},{other.label})"
            )

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.label == other.label
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.label, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, label={self.label!r})"


def kernel(m: Matrix) -> Subspace:
    """Canonical basis of the right null space {v : m v = 0}."""
    red, rank, pivots = rref(m)
    n = m.ncols
    tower = m.tower
    one, zero = one_of(tower), zero_of(tower)
    free = [c for c in range(n) if c not in pivots]
    vecs = []
    for c in free:
        v = [zero] * n
        v[c] = one
        for r, p in enumerate(pivots):
            v[p] = -red.rows[r][c]
        vecs.append(v)
    return Subspace(Matrix(vecs, ncols=n), n)


def subspace_meet(u: Subspace, v: Subspace) -> Subspace:
    """Intersection of row spaces via the kernel of the stacked constraint
    system: row space = orthogonal complement (standard bilinear form) of
    its kernel, so U cap V = ker [K_U; K_V]."""
    u._check_compatible(v)
    ku = kernel(u.basis if u.dim else Matrix([], ncols=u.ambient))
    kv = kernel(v.basis if v.dim else Matrix([], ncols=v.ambient))
    stacked = ku.basis.stack(kv.basis)
    if stacked.nrows == 0:
        return Subspace(Matrix.identity(u.ambient, u.tower), u.ambient, u.label)
    w = kernel(stacked)
    return Subspace(w.basis, u.ambient, u.label)


def subspace_join(u: Subspace, v: Subspace) -> Subspace:
    u._check_compatible(v)
    return Subspace(u.basis.stack(v.basis), u.ambient, u.label)


def annihilator(u: Subspace, pairing: Matrix, dual_label="") -> Subspace:
    """{y in the dual ambient : <u, y> = 0 for all u in U} where
    <u, y> = sum_ij u_i P_ij y_j.  The pairing must be square nonsingular."""
    if pairing.nrows != pairing.ncols:
        raise DegeneratePairingError("pairing matrix must be square")
    if rref(pairing).rank != pairing.nrows:
        raise DegeneratePairingError("degenerate pairing rejected")
    if u.ambient != pairing.nrows:
        raise AmbientMismatchError("subspace ambient differs from pairing size")
    if u.dim == 0:
        return Subspace.full(pairing.ncols, dual_label, pairing.tower)
    constraints = u.basis.mul(pairing)
    k = kernel(constraints)
    return Subspace(k.basis, pairing.ncols, dual_label)


class LinSolver:
    """Express vectors in terms of a fixed (not necessarily canonical) list
    of spanning rows; used to extract structure constants exactly."""

    def __init__(self, rows, ambient):
        self.ambient = ambient
        self.k = len(rows)
        tower = common_tower([0] + [x for r in rows for x in r])
        one, zero = one_of(tower), zero_of(tower)
        self.tower = tower
        aug = [
            [coerce_to(x, tower) for x in r]
            + [one if i == j else zero for j in range(self.k)]
            for i, r in enumerate(rows)
        ]
        aug, pivots = _rref_rows(aug, ambient)
        pivots = [p for p in pivots if p < ambient]
        self.rank = len(pivots)
        self.pivots = pivots
        self.red = [row[:ambient] for row in aug[: self.rank]]
        self.tr = [row[ambient:] for row in aug[: self.rank]]

    def coords(self, vec):
        """Coefficients c with sum_i c_i row_i = vec, or None if not in span."""
        t = common_tower([zero_of(self.tower)] + list(vec))
        v = [coerce_to(x, t) for x in vec]
        cs = []
        for row, p in zip(self.red, self.pivots):
            f = v[p]
            cs.append(f)
            if f != 0:
                v = [x - f * coerce_to(y, t) for x, y in zip(v, row)]
        if any(x != 0 for x in v):
            return None
        out = [zero_of(t)] * self.k
        for c, trow in zip(cs, self.tr):
            if c != 0:
                for j, ty in enumerate(trow):
                    if ty != 0:
                        out[j] = out[j] + c * coerce_to(ty, t)
        return out


def sparse_rank(rows, ncols):
    """Rank of a collection of sparse rows (dicts col -> scalar).

    Gaussian elimination keeping rows sparse; exact over any tower.
    """
    pivots = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            if c in pivots:
                prow, pval = pivots[c]
                f = row[c] / pval
                for cc, vv in prow.items():
                    nv = row.get(cc, 0) - f * vv
                    if isinstance(nv, (int, Fraction)) and nv == 0:
                        row.pop(cc, None)
                    elif nv == 0:
                        row.pop(cc, None)
                    else:
                        row[cc] = nv
            else:
                pivots[c] = (row, row[c])
                rank += 1
                break
    return rank
