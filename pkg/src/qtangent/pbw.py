"""Normal-ordered arithmetic in the quantized enveloping algebra of sl2.

Monomials are F^f K^(k2/2) E^e stored as (f, k2, e) with k2 twice the
K-exponent (so half-integer powers of K stay exact integers).  Fixed
conventions, validated downstream by the spin-1/2 consistency gate:

    K E = q E K,   K F = q^{-1} F K,   E F - F E = (K^2 - K^{-2})/(q - q^{-1})
    Delta K = K (x) K,  Delta E = E (x) K + K^{-1} (x) E,
    Delta F = F (x) K + K^{-1} (x) F,
    eps(E) = eps(F) = 0, eps(K) = 1,  S(K) = K^{-1}, S(E) = -qE, S(F) = -q^{-1}F

with q = s^2 and all coefficients in Q(s).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ConsistencyError
from .fields import Q, RF_ONE, RF_ZERO, RatFuncS, S

_Q = Q
_S = S


def q_power(k: int) -> RatFuncS:
    return RatFuncS.s_power(2 * k)


def s_power(k: int) -> RatFuncS:
    return RatFuncS.s_power(k)


def q_int(m: int) -> RatFuncS:
    """The symmetric q-integer (q^m - q^{-m})/(q - q^{-1})."""
    if m == 0:
        return RF_ZERO
    # = q^{m-1} + q^{m-3} + ... + q^{1-m}
    acc = RF_ZERO
    for t in range(m):
        acc = acc + q_power(m - 1 - 2 * t)
    return acc


DELTA = _Q - _Q.inverse()  # q - q^{-1}


class PBWElement:
    """Linear combination of normal-ordered monomials with Q(s) coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if not isinstance(c, RatFuncS):
                    c = RatFuncS.from_rational(c)
                if not c.is_zero():
                    self.terms[m] = c

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(0, 0, 0): RF_ONE})

    @classmethod
    def gen_e(cls):
        return cls({(0, 0, 1): RF_ONE})

    @classmethod
    def gen_f(cls):
        return cls({(1, 0, 0): RF_ONE})

    @classmethod
    def gen_k(cls, k2=2):
        """K^(k2/2); k2 = 2 is K itself, k2 = 1 is K^(1/2)."""
        return cls({(0, k2, 0): RF_ONE})

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return PBWElement(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] - c if m in out else -c
        return PBWElement(out)

    def __neg__(self):
        return PBWElement({m: -c for m, c in self.terms.items()})

    def scale(self, k):
        if not isinstance(k, RatFuncS):
            k = RatFuncS.from_rational(k)
        if k.is_zero():
            return PBWElement()
        return PBWElement({m: c * k for m, c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, PBWElement) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "PBW(0)"
        bits = []
        for (f, k2, e), c in sorted(self.terms.items()):
            mono = []
            if f:
                mono.append(f"F^{f}" if f > 1 else "F")
            if k2:
                mono.append(f"K^{Fraction(k2, 2)}")
            if e:
                mono.append(f"E^{e}" if e > 1 else "E")
            name = " ".join(mono) or "1"
            bits.append(f"({c})*{name}")
        return "PBW(" + " + ".join(bits) + ")"

    # -- product -------------------------------------------------------------

    def __mul__(self, other):
        out = {}
        for m2, c2 in other.terms.items():
            prod = _mono_right_mul(self.terms, m2)
            for m, c in prod.items():
                cc = c * c2
                out[m] = out[m] + cc if m in out else cc
        return PBWElement(out)

    # -- Hopf structure --------------------------------------------------------

    def counit(self) -> RatFuncS:
        acc = RF_ZERO
        for (f, k2, e), c in self.terms.items():
            if f == 0 and e == 0:
                acc = acc + c
        return acc

    def antipode(self) -> "PBWElement":
        out = PBWElement()
        for (f, k2, e), c in self.terms.items():
            # S(F^f K^(k2/2) E^e) = (-q)^e (-1/q)^f E^e K^(-k2/2) F^f
            piece = PBWElement({(0, -k2, e): RF_ONE})
            if f:
                piece = piece * PBWElement({(f, 0, 0): RF_ONE})
            sign = RF_ONE if (e + f) % 2 == 0 else -RF_ONE
            coeff = c * sign * q_power(e - f)
            out = out + piece.scale(coeff)
        return out

    def coproduct(self) -> "PBWTensor":
        out = PBWTensor()
        for m, c in self.terms.items():
            out = out + _delta_mono(m).scale(c)
        return out

    def iterated_coproduct(self, legs: int) -> dict:
        """Delta^(legs-1) as a dict of leg tuples -> coefficient."""
        state = {(m,): c for m, c in self.terms.items()}
        for _ in range(legs - 1):
            nxt = {}
            for monos, c in state.items():
                for (m1, m2), cc in _delta_mono(monos[-1]).terms.items():
                    key = monos[:-1] + (m1, m2)
                    v = c * cc
                    nxt[key] = nxt[key] + v if key in nxt else v
            state = nxt
        return state


def _k_shift(terms, b2):
    """Multiply each monomial by K^(b2/2) on the right."""
    out = {}
    for (f, k2, e), c in terms.items():
        cc = c * s_power(-e * b2)
        key = (f, k2 + b2, e)
        out[key] = out[key] + cc if key in out else cc
    return out


def _times_f(terms):
    """Multiply by F on the right, renormalizing E^e F."""
    out = {}

    def add(m, c):
        out[m] = out[m] + c if m in out else c

    for (f, k2, e), c in terms.items():
        add((f + 1, k2, e), c * s_power(-k2))
        if e:
            lead = c * q_int(e) / DELTA
            add((f, k2 + 4, e - 1), lead * q_power(-(e - 1)))
            add((f, k2 - 4, e - 1), -lead * q_power(e - 1))
    return out


def _times_e(terms):
    out = {}
    for (f, k2, e), c in terms.items():
        key = (f, k2, e + 1)
        out[key] = out[key] + c if key in out else c
    return out


def _mono_right_mul(terms, m2):
    f2, k22, e2 = m2
    cur = terms
    for _ in range(f2):
        cur = _times_f(cur)
    if k22:
        cur = _k_shift(cur, k22)
    for _ in range(e2):
        cur = _times_e(cur)
    return cur


class PBWTensor:
    """Sparse element of the two-fold tensor square of the PBW algebra."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if not c.is_zero():
                    self.terms[m] = c

    @classmethod
    def of(cls, x: PBWElement, y: PBWElement):
        out = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                out[(m1, m2)] = c1 * c2
        return cls(out)

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return PBWTensor(out)

    def __sub__(self, other):
        return self + other.scale(-RF_ONE)

    def scale(self, k):
        if not isinstance(k, RatFuncS):
            k = RatFuncS.from_rational(k)
        return PBWTensor({m: c * k for m, c in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                left = _mono_right_mul({a1: RF_ONE}, a2)
                right = _mono_right_mul({b1: RF_ONE}, b2)
                for ma, ca in left.items():
                    for mb, cb in right.items():
                        key = (ma, mb)
                        v = c1 * c2 * ca * cb
                        out[key] = out[key] + v if key in out else v
        return PBWTensor(out)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, PBWTensor) and self.terms == other.terms

    def __repr__(self):
        return f"PBWTensor({len(self.terms)} terms)"


_DELTA_MONO_CACHE = {}
_ONE_MONO = (0, 0, 0)


def _delta_mono(m):
    got = _DELTA_MONO_CACHE.get(m)
    if got is not None:
        return got
    f, k2, e = m
    ke = (0, 2, 0)
    ki = (0, -2, 0)
    dE = PBWTensor({((0, 0, 1), ke): RF_ONE, (ki, (0, 0, 1)): RF_ONE})
    dF = PBWTensor({((1, 0, 0), ke): RF_ONE, (ki, (1, 0, 0)): RF_ONE})
    out = PBWTensor({(_ONE_MONO, _ONE_MONO): RF_ONE})
    for _ in range(f):
        out = out * dF
    if k2:
        out = out * PBWTensor({((0, k2, 0), (0, k2, 0)): RF_ONE})
    for _ in range(e):
        out = out * dE
    _DELTA_MONO_CACHE[m] = out
    return out


def pbw_normalize(word) -> PBWElement:
    """Normal-order a free word in the letters E, F, K, k (K^(1/2)) and
    their inverse markers K-, k- ; accepts an iterable of such tokens."""
    out = PBWElement.one()
    table = {
        "E": PBWElement.gen_e(),
        "F": PBWElement.gen_f(),
        "K": PBWElement.gen_k(2),
        "K-": PBWElement.gen_k(-2),
        "k": PBWElement.gen_k(1),
        "k-": PBWElement.gen_k(-1),
    }
    for tok in word:
        if tok not in table:
            raise ValueError(f"unknown generator token {tok!r}")
        out = out * table[tok]
    return out


# -- spin-1/2 representation -------------------------------------------------


def _mat_mul(a, b):
    return tuple(
        tuple(
            a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)
        )
        for i in range(2)
    )


_RHO_E = ((RF_ZERO, RF_ONE), (RF_ZERO, RF_ZERO))
_RHO_F = ((RF_ZERO, RF_ZERO), (RF_ONE, RF_ZERO))
_RHO_CACHE = {}


def rho_mono(m):
    """Spin-1/2 matrix of a monomial; integer K-powers only."""
    got = _RHO_CACHE.get(m)
    if got is not None:
        return got
    f, k2, e = m
    if k2 % 2:
        raise ConsistencyError(
            "half-integer K-power has no spin-1/2 matrix over Q(s)"
        )
    if f > 1 or e > 1:
        out = ((RF_ZERO, RF_ZERO), (RF_ZERO, RF_ZERO))
    else:
        out = ((s_power(k2 // 2), RF_ZERO), (RF_ZERO, s_power(-(k2 // 2))))
        if f:
            out = _mat_mul(_RHO_F, out)
        if e:
            out = _mat_mul(out, _RHO_E)
    _RHO_CACHE[m] = out
    return out


def rho_element(x: PBWElement):
    out = [[RF_ZERO, RF_ZERO], [RF_ZERO, RF_ZERO]]
    for m, c in x.terms.items():
        mm = rho_mono(m)
        for i in range(2):
            for j in range(2):
                if not mm[i][j].is_zero():
                    out[i][j] = out[i][j] + mm[i][j] * c
    return tuple(tuple(row) for row in out)
