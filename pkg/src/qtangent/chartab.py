"""Exact character tables of finite groups by Dixon's method.

The table is first computed over a prime field F_p with p = 1 (mod m) and
p > 2*sqrt(|G|), m the group exponent, as the simultaneous eigenvectors of
the class-sum matrices.  Character values are then lifted to Q(zeta_m) by
evaluating root-of-unity multiplicities through discrete Fourier sums over
the power map; the multiplicities are small nonnegative integers, so the
lift is exact.  Row and column orthogonality are verified over Q(zeta_m)
before a table is returned.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ConsistencyError
from .fields import Cyclotomic
from .groups import ConjClassSet, FiniteGroup, conjugacy_classes, exponent


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _choose_prime(m, order):
    p = m + 1
    while True:
        if p * p > 4 * order and order % p and _is_prime(p):
            return p
        p += m


def _primitive_root(p):
    factors = []
    n = p - 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    for z in range(2, p):
        if all(pow(z, (p - 1) // f, p) != 1 for f in factors):
            return z
    raise ConsistencyError("no primitive root found")


def _rref_mod(rows, ncols, p):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [row for row in rows[:r]], pivots


def _kernel_mod(rows, ncols, p):
    red, pivots = _rref_mod(rows, ncols, p)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for c in free:
        v = [0] * ncols
        v[c] = 1
        for r, piv in enumerate(pivots):
            v[piv] = (-red[r][c]) % p
        out.append(v)
    return out


class CharacterTable:
    """All irreducible characters of a finite group, exact over Q(zeta_m)."""

    def __init__(self, group: FiniteGroup, classes: ConjClassSet | None = None):
        self.group = group
        self.classes = classes or conjugacy_classes(group)
        self.conductor = exponent(group)
        degrees, rows = _dixon(group, self.classes, self.conductor)
        self.degrees = tuple(degrees)
        self.rows = tuple(tuple(r) for r in rows)
        self._verify()

    @property
    def count(self):
        return len(self.rows)

    def value(self, row: int, element: int) -> Cyclotomic:
        return self.rows[row][self.classes.class_of[element]]

    def chi_of(self, row: int, coeffs: dict) -> Cyclotomic:
        """Linear extension of a character to a group-algebra coefficient map."""
        acc = Cyclotomic.from_rational(self.conductor, 0)
        for idx, c in coeffs.items():
            acc = acc + self.value(row, idx) * c
        return acc

    def is_trivial_row(self, row: int) -> bool:
        one = Cyclotomic.from_rational(self.conductor, 1)
        return all(v == one for v in self.rows[row])

    def _verify(self):
        g = self.group
        cls = self.classes
        n = g.order
        r = cls.count
        m = self.conductor
        kinv = [cls.class_of[g.inv(rep)] for rep in cls.representatives]
        sizes = cls.sizes()
        zero = Cyclotomic.from_rational(m, 0)
        for i in range(r):
            for j in range(r):
                acc = zero
                for k in range(r):
                    acc = acc + self.rows[i][k] * self.rows[j][kinv[k]] * sizes[k]
                want = n if i == j else 0
                if acc != want:
                    raise ConsistencyError(
                        f"row orthogonality failed for rows {i},{j}: {acc}"
                    )
        for a in range(r):
            for b in range(r):
                acc = zero
                for i in range(r):
                    acc = acc + self.rows[i][a] * self.rows[i][kinv[b]]
                want = Fraction(n, sizes[a]) if a == b else 0
                if acc != want:
                    raise ConsistencyError(
                        f"column orthogonality failed for classes {a},{b}"
                    )
        if sum(d * d for d in self.degrees) != n:
            raise ConsistencyError("degree squares do not sum to the group order")
        if not self.is_trivial_row(0):
            raise ConsistencyError("first character row is not trivial")


def _class_matrices(group, cls):
    r = cls.count
    reps = cls.representatives
    mats = []
    for i in range(r):
        m = [[0] * r for _ in range(r)]
        for x in cls.classes[i]:
            xi = group.inv(x)
            for k in range(r):
                y = group.mul(xi, reps[k])
                m[cls.class_of[y]][k] += 1
        mats.append(m)
    return mats


def _split_eigenspaces(mats, r, p):
    """Common one-dimensional eigenspaces of the commuting class matrices."""
    spaces = [[[1 if i == j else 0 for j in range(r)] for i in range(r)]]
    for mat in mats[1:]:
        if all(len(b) == 1 for b in spaces):
            break
        nxt = []
        for basis in spaces:
            if len(basis) == 1:
                nxt.append(basis)
                continue
            red, pivots = _rref_mod(basis, r, p)
            d = len(red)
            # restriction of the class matrix to this invariant subspace
            rest = [[0] * d for _ in range(d)]
            for t in range(d):
                w = [sum(mat[a][b] * red[t][b] for b in range(r)) % p for a in range(r)]
                for u, piv in enumerate(pivots):
                    c = w[piv]
                    rest[u][t] = c
                    if c:
                        w = [(x - c * y) % p for x, y in zip(w, red[u])]
                if any(w):
                    raise ConsistencyError("class matrix does not preserve eigenspace")
            for lam in range(p):
                shifted = [
                    [(rest[a][b] - (lam if a == b else 0)) % p for b in range(d)]
                    for a in range(d)
                ]
                ker = _kernel_mod(shifted, d, p)
                if ker:
                    lifted = [
                        [sum(v[t] * red[t][b] for t in range(d)) % p for b in range(r)]
                        for v in ker
                    ]
                    nxt.append(_rref_mod(lifted, r, p)[0])
        spaces = nxt
    if any(len(b) != 1 for b in spaces) or len(spaces) != r:
        raise ConsistencyError("eigenspace splitting did not reach dimension one")
    return [b[0] for b in spaces]


def _dixon(group, cls, m):
    n = group.order
    r = cls.count
    reps = cls.representatives
    sizes = cls.sizes()
    p = _choose_prime(m, n)
    theta = pow(_primitive_root(p), (p - 1) // m, p)
    kinv = [cls.class_of[group.inv(rep)] for rep in reps]

    mats = _class_matrices(group, cls)
    vectors = _split_eigenspaces(mats, r, p)

    # power map: class of rep_k^j
    pm = []
    for k in range(r):
        row = [0]
        cur = 0
        for _ in range(1, m):
            cur = group.mul(cur, reps[k])
            row.append(cls.class_of[cur])
        pm.append(row)

    minv = pow(m, p - 2, p)
    out = []
    for v in vectors:
        if v[0] % p == 0:
            raise ConsistencyError("eigenvector vanishes on the identity class")
        scale = pow(v[0], p - 2, p)
        omega = [(x * scale) % p for x in v]
        denom = 0
        for k in range(r):
            denom = (denom + omega[k] * omega[kinv[k]] * pow(sizes[k], p - 2, p)) % p
        d2 = (n * pow(denom, p - 2, p)) % p
        degree = next(
            (t for t in range(1, (p + 1) // 2) if (t * t) % p == d2), None
        )
        if degree is None:
            raise ConsistencyError("no valid degree square root found")
        chi_p = [(degree * omega[k] * pow(sizes[k], p - 2, p)) % p for k in range(r)]
        values = []
        for k in range(r):
            coeffs = {}
            for t in range(m):
                acc = 0
                for j in range(m):
                    acc = (acc + chi_p[pm[k][j]] * pow(theta, (-j * t) % (p - 1), p)) % p
                mu = (acc * minv) % p
                if mu > degree:
                    raise ConsistencyError("root-of-unity multiplicity out of range")
                if mu:
                    coeffs[t] = mu
            values.append(Cyclotomic(m, coeffs))
        out.append((degree, values))

    one = Cyclotomic.from_rational(m, 1)
    out.sort(
        key=lambda dv: (
            dv[0],
            not all(x == one for x in dv[1]),
            tuple(x.sort_key() for x in dv[1]),
        )
    )
    return [d for d, _ in out], [v for _, v in out]


def character_table(group: FiniteGroup) -> CharacterTable:
    return CharacterTable(group)
