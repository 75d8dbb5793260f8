"""Exact scalars in three towers: big rationals, cyclotomics, rational
functions in s.

Rational is ``fractions.Fraction`` (already reduced, positive denominator).
``Cyclotomic`` represents Q(zeta_n) reduced modulo the n-th cyclotomic
polynomial, so equality is coefficient equality.  ``RatFuncS`` is the field
Q(s) with s standing for q^(1/2), i.e. q = s**2.

int and Fraction coerce into either extension tower.  Cyclotomics of
different conductors, or a Cyclotomic and a RatFuncS, never mix: that is a
``MixedTowerError``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import MixedTowerError, PoleAtOneError

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# dense univariate polynomials over Fraction, as trimmed tuples


def poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(a, b):
    n = max(len(a), len(b))
    return poly_trim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def poly_neg(a):
    return tuple(-x for x in a)

def poly_sub(a, b):
    return poly_add(a, poly_neg(b))


def poly_mul(a, b):
    if not a or not b:
        return ()
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y != 0:
                out[i + j] += x * y
    return poly_trim(out)


def poly_scale(a, k):
    if k == 0:
        return ()
    return tuple(x * k for x in a)


def poly_divmod(a, b):
    """Euclidean division over Q; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [_ZERO] * max(len(a) - len(b) + 1, 0)
    inv = _ONE / b[-1]
    while len(a) >= len(b) and poly_trim(a):
        a = list(poly_trim(a))
        if len(a) < len(b):
            break
        k = len(a) - len(b)
        c = a[-1] * inv
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
    return poly_trim(q), poly_trim(a)


def poly_gcd(a, b):
    """Monic gcd over Q (monic Euclidean algorithm)."""
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return ()
    inv = _ONE / a[-1]
    return tuple(x * inv for x in a)


def poly_eval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_derivative(a):
    return poly_trim(i * a[i] for i in range(1, len(a)))


def poly_str(a, var="s"):
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        if i == 0:
            term = str(c)
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            pw = var if i == 1 else f"{var}^{i}"
            term = f"{mag}{pw}"
            if c < 0:
                term = "-" + term
        if parts and not term.startswith("-"):
            parts.append("+" + term)
        else:
            parts.append(term)
    return "".join(parts)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int):
    """Coefficients of the n-th cyclotomic polynomial Phi_n over Q."""
    if n < 1:
        raise ValueError("conductor must be positive")
    # Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    num = [_ZERO] * (n + 1)
    num[0], num[n] = Fraction(-1), _ONE
    num = poly_trim(num)
    for d in range(1, n):
        if n % d == 0:
            num, rem = poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem
    return num


# ---------------------------------------------------------------------------
# cyclotomic numbers


class Cyclotomic:
    """Element of Q(zeta_n), stored as coefficients of 1, z, .., z^(phi(n)-1)
    with z = zeta_n, reduced modulo Phi_n.  Immutable and hashable."""

    __slots__ = ("n", "c", "_hash")

    def __init__(self, n, coeffs):
        self.n = n
        deg = len(cyclotomic_polynomial(n)) - 1
        if isinstance(coeffs, dict):
            vec = [_ZERO] * max([deg] + [e + 1 for e in coeffs])
            for e, v in coeffs.items():
                vec[e % n if e >= deg else e] += Fraction(v)
        else:
            vec = [Fraction(v) for v in coeffs]
        poly = poly_trim(vec)
        if len(poly) > deg:
            poly = poly_divmod(poly, cyclotomic_polynomial(n))[1]
        c = list(poly) + [_ZERO] * (deg - len(poly))
        self.c = tuple(c)
        self._hash = hash((self.n, self.c))

    @classmethod
    def zeta(cls, n, k=1):
        """zeta_n^k."""
        k %= n
        return cls(n, {k: 1} if k > 0 else {0: 1})

    @classmethod
    def from_rational(cls, n, v):
        return cls(n, {0: Fraction(v)})

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.n != self.n:
                raise MixedTowerError(
                    f"cyclotomic conductors differ: {self.n} vs {other.n}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(self.n, other)
        if isinstance(other, RatFuncS):
            raise MixedTowerError("cannot mix cyclotomic and rational-function scalars")
        return None

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.n, [x + y for x, y in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-x for x in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.n, [x - y for x, y in zip(self.c, o.c)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.n, poly_mul(self.c, o.c))

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse via extended Euclid modulo Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic")
        a, b = poly_trim(self.c), cyclotomic_polynomial(self.n)
        # extended euclid: s*a + t*b = gcd
        s0, s1 = (_ONE,), ()
        r0, r1 = a, b
        while r1:
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        # r0 is a nonzero constant gcd (Phi_n irreducible over Q)
        assert len(r0) == 1
        inv = poly_scale(s0, _ONE / r0[0])
        return Cyclotomic(self.n, inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclotomic.from_rational(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        """Galois conjugation zeta -> zeta^(-1) (complex conjugation)."""
        out = {}
        for e, v in enumerate(self.c):
            if v != 0:
                out[(self.n - e) % self.n] = out.get((self.n - e) % self.n, _ZERO) + v
        return Cyclotomic(self.n, {e: v for e, v in out.items()})

    # -- predicates / conversions -----------------------------------------

    def is_zero(self):
        return all(x == 0 for x in self.c)

    def is_rational(self):
        return all(x == 0 for x in self.c[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        if isinstance(other, Cyclotomic):
            return self.n == other.n and self.c == other.c
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def sort_key(self):
        return self.c

    def __str__(self):
        parts = [str(self.c[0])]
        for e, v in enumerate(self.c):
            if e and v != 0:
                sign = "+" if v >= 0 else "-"
                parts.append(f"{sign}{abs(v)}*z^{e}")
        return "".join(parts)

    def __repr__(self):
        return f"Cyclotomic({self.n}, {self})"


# ---------------------------------------------------------------------------
# rational functions in s over Q


class RatFuncS:
    """Element of Q(s) in lowest terms with monic denominator.  s = q^(1/2)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=(_ONE,)):
        num = poly_trim(Fraction(x) for x in num)
        den = poly_trim(Fraction(x) for x in den)
        if not den:
            raise ZeroDivisionError("zero denominator in RatFuncS")
        if not num:
            den = (_ONE,)
        else:
            g = poly_gcd(num, den)
            if len(g) > 1:
                num = poly_divmod(num, g)[0]
                den = poly_divmod(den, g)[0]
            lead = den[-1]
            if lead != 1:
                inv = _ONE / lead
                num = poly_scale(num, inv)
                den = poly_scale(den, inv)
        self.num = num
        self.den = den
        self._hash = hash((self.num, self.den))

    @classmethod
    def from_rational(cls, v):
        v = Fraction(v)
        return cls((v,) if v else ())

    @classmethod
    def s_power(cls, k: int):
        """s^k for any integer k (negative allowed)."""
        if k >= 0:
            return cls((0,) * k + (1,))
        return cls((_ONE,), (0,) * (-k) + (1,))

    def _coerce(self, other):
        if isinstance(other, RatFuncS):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFuncS.from_rational(other)
        if isinstance(other, Cyclotomic):
            raise MixedTowerError("cannot mix cyclotomic and rational-function scalars")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFuncS(
            poly_add(poly_mul(self.num, o.den), poly_mul(o.num, self.den)),
            poly_mul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFuncS(poly_neg(self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFuncS(poly_mul(self.num, o.num), poly_mul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFuncS(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFuncS.from_rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFuncS.from_rational(other)
        if isinstance(other, RatFuncS):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __str__(self):
        n = poly_str(self.num)
        if self.den == (_ONE,):
            return n
        return f"({n})/({poly_str(self.den)})"

    def __repr__(self):
        return f"RatFuncS({self})"


S = RatFuncS.s_power(1)
Q = RatFuncS.s_power(2)
RF_ONE = RatFuncS.from_rational(1)
RF_ZERO = RatFuncS.from_rational(0)


def specialize_s1(f: RatFuncS) -> Fraction:
    """Value of f at s = 1; PoleAtOneError if the reduced denominator vanishes."""
    d = poly_eval(f.den, _ONE)
    if d == 0:
        raise PoleAtOneError(f"pole at s = 1 in {f}")
    return poly_eval(f.num, _ONE) / d


def derivative_at_s1(f: RatFuncS) -> Fraction:
    """First derivative of f at s = 1, same pole rule as specialize_s1."""
    d = poly_eval(f.den, _ONE)
    if d == 0:
        raise PoleAtOneError(f"pole at s = 1 in {f}")
    n = poly_eval(f.num, _ONE)
    dn = poly_eval(poly_derivative(f.num), _ONE)
    dd = poly_eval(poly_derivative(f.den), _ONE)
    return (dn * d - n * dd) / (d * d)


# ---------------------------------------------------------------------------
# tower bookkeeping


def tower_of(x):
    if isinstance(x, (int, Fraction)):
        return ("rational",)
    if isinstance(x, Cyclotomic):
        return ("cyclotomic", x.n)
    if isinstance(x, RatFuncS):
        return ("ratfunc",)
    raise MixedTowerError(f"not a field scalar: {x!r}")


def common_tower(values):
    """The single extension tower covering all values; rationals coerce up."""
    tower = ("rational",)
    for v in values:
        t = tower_of(v)
        if t == ("rational",):
            continue
        if tower == ("rational",):
            tower = t
        elif tower != t:
            raise MixedTowerError(f"mixed field towers: {tower} vs {t}")
    return tower


def coerce_to(x, tower):
    t = tower_of(x)
    if t == tower:
        return x
    if t == ("rational",):
        if tower == ("rational",):
            return Fraction(x)
        if tower[0] == "cyclotomic":
            return Cyclotomic.from_rational(tower[1], x)
        if tower == ("ratfunc",):
            return RatFuncS.from_rational(x)
    raise MixedTowerError(f"cannot coerce {t} into {tower}")


def zero_of(tower):
    return coerce_to(0, tower)


def one_of(tower):
    return coerce_to(1, tower)


def scalar_str(x) -> str:
    """Canonical string form used in serialized reports."""
    if isinstance(x, (int, Fraction)):
        return str(x)
    return str(x)
