"""Quantum tangent spaces and first-order bicovariant differential calculi
on C(G) and CG.

A calculus on the algebra A (side "functions" = C(G) or "group_algebra" =
CG) is encoded by its quantum tangent space L inside ker(counit) of the
dual Hopf algebra H, stable under the quantum double action.  From L all
structure is derived exactly:

    (d a)(x) = <x, a_(1)> a_(2)                      differential
    partial_x(a) = (d a)(x)                          braided derivation
    Psi(x (x) y) = [x_(1), y] (x) x_(2) - [x, y] (x) 1
    Psi(x (x) a) = a_(2) (x) (S a_(1)) |> x,  Psi^{-1}(a (x) x) = a_(1) |> x (x) a_(2)
    [x, y] = x_(1) y S(x_(2))                        quantum Lie bracket

together with the bimodule and bicomodule structure of Gamma = Lin(L, A).
The classification engines produce one coirreducible calculus per
nontrivial conjugacy class on C(G), and one family per nontrivial
irreducible character on CG with a concrete rank-one instantiation found
through cyclic subgroups.
"""

from __future__ import annotations

from fractions import Fraction

from .chartab import CharacterTable
from .errors import (
    CentralityError,
    ConsistencyError,
    EmptyTangentError,
    SideMismatchError,
    StabilityError,
)
from .fields import Cyclotomic
from .groups import FiniteGroup, conjugacy_classes, cyclic_subgroups
from .hopf import FUN, GRP, HopfElement, HopfPair, opposite
from .linalg import LinSolver, Matrix, Subspace, kernel, sparse_rank, subspace_join, subspace_meet

SIDE_NAMES = {"functions": FUN, "group_algebra": GRP}
SIDE_LABELS = {FUN: "functions", GRP: "group_algebra"}


def _keps_label(descriptor, side):
    return ("keps", side, descriptor.token)


def keps_subspace(descriptor, side, vectors) -> Subspace:
    coords = [descriptor.keps_coords(v) for v in vectors]
    return Subspace.span(coords, descriptor.keps_dim(), _keps_label(descriptor, side))


def full_keps(descriptor, side) -> Subspace:
    return Subspace.span(
        [descriptor.keps_coords(v) for v in descriptor.keps_basis(side)],
        descriptor.keps_dim(),
        _keps_label(descriptor, side),
    )


def zero_keps(descriptor, side) -> Subspace:
    return Subspace.zero(descriptor.keps_dim(), _keps_label(descriptor, side))


def independent_subset(descriptor, vectors):
    """First linearly independent subset, in the given order."""
    picked = []
    span = None
    for v in vectors:
        if v.is_zero():
            continue
        coords = descriptor.keps_coords(v)
        if span is None:
            picked.append(v)
            span = Subspace.span([coords], descriptor.keps_dim())
        elif not span.contains(coords):
            picked.append(v)
            span = Subspace.span(
                [list(r) for r in span.basis.rows] + [coords], descriptor.keps_dim()
            )
    return picked


# ---------------------------------------------------------------------------
# tangent spaces and quotienting ideals


class TangentSpace:
    """Subspace L of ker(counit) in H with its double-stability certificate."""

    def __init__(self, descriptor, a_side, vectors, provenance="user",
                 labels=None, meta=None, check_stability=True):
        self.descriptor = descriptor
        self.a_side = a_side
        self.h_side = opposite(a_side)
        vectors = [v for v in vectors if not v.is_zero()]
        for v in vectors:
            if v.side != self.h_side:
                raise SideMismatchError("tangent vectors must live on the H side")
        self.vectors = vectors
        self.labels = labels if labels is not None else [None] * len(vectors)
        self.provenance = provenance
        self.meta = meta or {}
        self.subspace = keps_subspace(descriptor, self.h_side, vectors)
        if len(vectors) != self.subspace.dim:
            raise ConsistencyError("presentation basis is linearly dependent")
        self.stable = None
        self.stability_witness = None
        if check_stability:
            self.stable, self.stability_witness = double_stability(
                descriptor, a_side, self.vectors, self.subspace
            )

    @property
    def dim(self):
        return self.subspace.dim

    def require_stable(self):
        if not self.stable:
            raise StabilityError(
                f"tangent space not double-stable: {self.stability_witness}"
            )

    def __repr__(self):
        return (
            f"TangentSpace({SIDE_LABELS[self.a_side]}, dim={self.dim}, "
            f"provenance={self.provenance!r})"
        )


def double_stability(descriptor, a_side, vectors, subspace=None):
    """Certificate that span(vectors) is stable under both double actions."""
    h_side = opposite(a_side)
    if subspace is None:
        subspace = keps_subspace(descriptor, h_side, vectors)
    n = descriptor.n
    for j, x in enumerate(vectors):
        for u in range(n):
            y = descriptor.double_act_h(descriptor.basis(h_side, u), x)
            if not y.is_zero() and not subspace.contains(descriptor.keps_coords(y)):
                return False, {"action": "h", "basis": u, "vector": j}
        for u in range(n):
            y = descriptor.double_act_a(descriptor.basis(a_side, u), x)
            if not y.is_zero() and not subspace.contains(descriptor.keps_coords(y)):
                return False, {"action": "a", "basis": u, "vector": j}
    return True, None


class QuotientIdeal:
    """Subspace M of ker(counit) in A, an (Ad-stable) one-sided ideal."""

    def __init__(self, descriptor, a_side, subspace, handed="left",
                 provenance="user", check_stability=True):
        if handed not in ("left", "right"):
            raise ValueError("handedness must be left or right")
        self.descriptor = descriptor
        self.a_side = a_side
        self.handed = handed
        self.subspace = subspace
        self.provenance = provenance
        self.vectors = [
            descriptor.keps_from_coords(a_side, row) for row in subspace.basis.rows
        ]
        self.stable = None
        self.stability_witness = None
        if check_stability:
            self.stable, self.stability_witness = ideal_stability(
                descriptor, a_side, handed, self.vectors, subspace
            )

    @property
    def dim(self):
        return self.subspace.dim

    def require_stable(self):
        if not self.stable:
            raise StabilityError(f"ideal not stable: {self.stability_witness}")

    def __repr__(self):
        return (
            f"QuotientIdeal({SIDE_LABELS[self.a_side]}, {self.handed}, "
            f"dim={self.dim})"
        )


def ideal_stability(descriptor, a_side, handed, vectors, subspace=None):
    if subspace is None:
        subspace = keps_subspace(descriptor, a_side, vectors)
    n = descriptor.n
    for j, v in enumerate(vectors):
        for u in range(n):
            b = descriptor.basis(a_side, u)
            w = (
                descriptor.hopf_product(b, v)
                if handed == "left"
                else descriptor.hopf_product(v, b)
            )
            if not w.is_zero() and not subspace.contains(descriptor.keps_coords(w)):
                return False, {"action": "ideal", "basis": u, "vector": j}
        for u in range(n):
            w = (
                descriptor.ad_left_eval(u, v)
                if handed == "left"
                else descriptor.ad_right_eval(u, v)
            )
            if not w.is_zero() and not subspace.contains(descriptor.keps_coords(w)):
                return False, {"action": "ad", "basis": u, "vector": j}
    return True, None


def ideal_from_tangent(t: TangentSpace) -> QuotientIdeal:
    """Annihilator of L inside ker(counit) of A; the pairing of the two
    ker(counit) bases is the identity matrix, so this is a plain kernel."""
    t.require_stable()
    d = t.descriptor
    if t.dim == 0:
        sub = full_keps(d, t.a_side)
    else:
        sub = kernel(t.subspace.basis)
        sub = Subspace(sub.basis, d.keps_dim(), _keps_label(d, t.a_side))
    return QuotientIdeal(d, t.a_side, sub, handed="left", provenance="ideal-dual")


def tangent_from_ideal(m: QuotientIdeal) -> TangentSpace:
    m.require_stable()
    d = m.descriptor
    h_side = opposite(m.a_side)
    if m.dim == 0:
        sub = full_keps(d, h_side)
    else:
        sub = kernel(m.subspace.basis)
        sub = Subspace(sub.basis, d.keps_dim(), _keps_label(d, h_side))
    vectors = [d.keps_from_coords(h_side, row) for row in sub.basis.rows]
    return TangentSpace(d, m.a_side, vectors, provenance="ideal-dual")


# ---------------------------------------------------------------------------
# the calculus with its structure tensors


class FirstOrderCalculus:
    """Tangent space plus exact structure tensors.

    Coordinates refer to the presentation basis of L; Gamma = Lin(L, A)
    elements are dicts  L-index -> HopfElement on the A side.
    """

    def __init__(self, tangent: TangentSpace):
        tangent.require_stable()
        self.tangent = tangent
        self.descriptor = tangent.descriptor
        self.a_side = tangent.a_side
        self.h_side = tangent.h_side
        self.k = tangent.dim
        self.n = self.descriptor.n
        d = self.descriptor
        self.solver = LinSolver(
            [d.keps_coords(v) for v in tangent.vectors], d.keps_dim()
        )
        self._coords_cache = {}
        self.a_action = self._action_cache(False)
        self.h_action = self._action_cache(True)
        self.a_action_t = self._transpose_action(self.a_action)
        self.h_action_t = self._transpose_action(self.h_action)
        self.d_images = [
            {i: self.d_eval(x, d.basis(self.a_side, u)) for i, x in enumerate(tangent.vectors)}
            for u in range(self.n)
        ]
        self.bracket_tensor = self._build_bracket()
        self.psi_tensor = self._build_psi()

    # -- coordinates ---------------------------------------------------------

    def coords(self, x: HopfElement):
        key = x
        got = self._coords_cache.get(key)
        if got is None:
            got = self.solver.coords(self.descriptor.keps_coords(x))
            self._coords_cache[key] = got
        return got

    def element_from_coords(self, cs) -> HopfElement:
        out = self.descriptor.zero(self.h_side)
        for c, v in zip(cs, self.tangent.vectors):
            if c != 0:
                out = out + v.scale(c)
        return out

    def _action_cache(self, adjoint):
        d = self.descriptor
        side = self.h_side if adjoint else self.a_side
        act = d.double_act_h if adjoint else d.double_act_a
        out = []
        for u in range(self.n):
            b = d.basis(side, u)
            col = []
            for x in self.tangent.vectors:
                y = act(b, x)
                if y.is_zero():
                    col.append({})
                    continue
                cs = self.solver.coords(d.keps_coords(y))
                if cs is None:
                    raise StabilityError(
                        f"action of basis {u} leaves the tangent span"
                    )
                col.append({i: c for i, c in enumerate(cs) if c != 0})
            out.append(col)
        return out

    @staticmethod
    def _transpose_action(action):
        out = []
        for col in action:
            t = {}
            for i, row in enumerate(col):
                for p, c in row.items():
                    t.setdefault(p, []).append((i, c))
            out.append({p: tuple(v) for p, v in t.items()})
        return out

    # -- differential and derivations ----------------------------------------

    def d_eval(self, x: HopfElement, a: HopfElement) -> HopfElement:
        """(d a)(x) = <x, a_(1)> a_(2)."""
        d = self.descriptor
        out = d.zero(self.a_side)
        for u, c in x.coeffs.items():
            out = out + d.eval_left(u, a).scale(c)
        return out

    def differential(self, a: HopfElement) -> dict:
        """d a as a Gamma element {i: (d a)(x_i)}."""
        if a.side != self.a_side:
            raise SideMismatchError("differential argument on the wrong side")
        out = {}
        for i, x in enumerate(self.tangent.vectors):
            val = self.d_eval(x, a)
            if not val.is_zero():
                out[i] = val
        return out

    def partial(self, x: HopfElement, a: HopfElement) -> HopfElement:
        """partial_x(a) = (d a)(x); x must lie in L."""
        if self.coords(x) is None:
            raise StabilityError("derivation direction outside the tangent space")
        return self.d_eval(x, a)

    # -- bracket and braidings -------------------------------------------------

    def bracket_elem(self, x: HopfElement, y: HopfElement) -> HopfElement:
        """[x, y] = x_(1) y S(x_(2)), the adjoint action computed in H."""
        return self.descriptor.double_act_h(x, y)

    def _build_bracket(self):
        out = {}
        for i, x in enumerate(self.tangent.vectors):
            for j in range(self.k):
                acc = {}
                for u, cu in x.coeffs.items():
                    for p, c in self.h_action[u][j].items():
                        acc[p] = acc.get(p, 0) + cu * c
                acc = {p: c for p, c in acc.items() if c != 0}
                if acc:
                    out[(i, j)] = acc
        return out

    def bracket_coords(self, i, j):
        return self.bracket_tensor.get((i, j), {})

    def bracket(self, x: HopfElement, y: HopfElement) -> HopfElement:
        cx, cy = self.coords(x), self.coords(y)
        if cx is None or cy is None:
            raise StabilityError("bracket arguments outside the tangent space")
        z = self.bracket_elem(x, y)
        if self.coords(z) is None:
            raise StabilityError("bracket escaped the tangent space")
        return z

    def _tensor_keps_coords(self, sparse):
        """Convert an H (x) H sparse dict to ker-eps (x) ker-eps coordinates."""
        out = {}
        for (p, q), c in sparse.items():
            if p == 0 or q == 0:
                continue
            out[(p - 1, q - 1)] = c
        return out

    def _pair_solver(self):
        solver = getattr(self, "_pair_solver_cache", None)
        if solver is None:
            d = self.descriptor
            m = d.keps_dim()
            rows = []
            for xi in self.tangent.vectors:
                ci = d.keps_coords(xi)
                for xj in self.tangent.vectors:
                    cj = d.keps_coords(xj)
                    row = [0] * (m * m)
                    for p, a in enumerate(ci):
                        if a == 0:
                            continue
                        for q, b in enumerate(cj):
                            if b != 0:
                                row[p * m + q] = a * b
                    rows.append(row)
            solver = LinSolver(rows, m * m)
            self._pair_solver_cache = solver
        return solver

    def _tensor_to_pair_coords(self, sparse):
        """Express a ker-eps (x) ker-eps element in the x_i (x) x_j basis."""
        coords = self._tensor_keps_coords(sparse)
        # fast path: every presentation vector is a distinct ker-eps basis vector
        slots = []
        for v in self.tangent.vectors:
            cs = self.descriptor.keps_coords(v)
            nz = [(p, c) for p, c in enumerate(cs) if c != 0]
            if len(nz) != 1 or nz[0][1] != 1:
                slots = None
                break
            slots.append(nz[0][0])
        if slots is not None:
            lookup = {p: i for i, p in enumerate(slots)}
            out = {}
            for (p, q), c in coords.items():
                i, j = lookup.get(p), lookup.get(q)
                if i is None or j is None:
                    raise ConsistencyError("tensor has support outside L (x) L")
                out[(i, j)] = c
            return out
        m = self.descriptor.keps_dim()
        vec = [0] * (m * m)
        for (p, q), c in coords.items():
            vec[p * m + q] = c
        cs = self._pair_solver().coords(vec)
        if cs is None:
            raise ConsistencyError("tensor has support outside L (x) L")
        out = {}
        for idx, c in enumerate(cs):
            if c != 0:
                out[divmod(idx, self.k)] = c
        return out

    def _build_psi(self):
        """Psi on L (x) L via Psi(x (x) y) = [x_(1), y] (x) x_(2) - [x,y] (x) 1."""
        d = self.descriptor
        out = {}
        unit = d.unit(self.h_side)
        for i, x in enumerate(self.tangent.vectors):
            cop = d.coproduct(x)
            for j, y in enumerate(self.tangent.vectors):
                sparse = {}
                for (u1, u2), c in cop.coeffs.items():
                    z = d.double_act_h(d.basis(self.h_side, u1), y)
                    for p, zc in z.coeffs.items():
                        key = (p, u2)
                        sparse[key] = sparse.get(key, 0) + c * zc
                zb = self.bracket_elem(x, y)
                for p, zc in zb.coeffs.items():
                    for q, uc in unit.coeffs.items():
                        key = (p, q)
                        sparse[key] = sparse.get(key, 0) - zc * uc
                sparse = {kk: c for kk, c in sparse.items() if c != 0}
                val = self._tensor_to_pair_coords(sparse)
                if val:
                    out[(i, j)] = val
        return out

    def psi_ll(self, i, j):
        return self.psi_tensor.get((i, j), {})

    def psi_matrix_rank(self):
        rows = []
        for i in range(self.k):
            for j in range(self.k):
                rows.append(
                    {p * self.k + q: c for (p, q), c in self.psi_ll(i, j).items()}
                )
        return sparse_rank(rows, self.k * self.k)

    def psi_mixed(self, i, u):
        """Psi(x_i (x) a_u) = a_(2) (x) (S a_(1)) |> x_i as {(a, l): coeff}."""
        d = self.descriptor
        cop = d.coproduct(d.basis(self.a_side, u))
        out = {}
        for (r, t), c in cop.coeffs.items():
            for p, cc in self.a_action[d.group.inv(r)][i].items():
                key = (t, p)
                out[key] = out.get(key, 0) + c * cc
        return {kk: c for kk, c in out.items() if c != 0}

    def psi_inv_mixed(self, u, i):
        """Psi^{-1}(a_u (x) x_i) = a_(1) |> x_i (x) a_(2) as {(l, a): coeff}."""
        d = self.descriptor
        cop = d.coproduct(d.basis(self.a_side, u))
        out = {}
        for (r, t), c in cop.coeffs.items():
            for p, cc in self.a_action[r][i].items():
                key = (p, t)
                out[key] = out.get(key, 0) + c * cc
        return {kk: c for kk, c in out.items() if c != 0}

    # -- Gamma = Lin(L, A) bimodule / bicomodule structure ---------------------

    def gamma_zero(self):
        return {}

    def gamma_eq(self, g1, g2):
        keys = set(g1) | set(g2)
        z = self.descriptor.zero(self.a_side)
        for kk in keys:
            if g1.get(kk, z) != g2.get(kk, z):
                return False
        return True

    def gamma_add(self, g1, g2):
        out = dict(g1)
        for kk, v in g2.items():
            out[kk] = out[kk] + v if kk in out else v
        return {kk: v for kk, v in out.items() if not v.is_zero()}

    def gamma_scale(self, g, c):
        return {kk: v.scale(c) for kk, v in g.items() if c != 0 and not v.is_zero()}

    def _wrap_gamma(self, raw):
        out = {}
        for i, m in raw.items():
            he = HopfElement(self.a_side, m)
            if not he.is_zero():
                out[i] = he
        return out

    def gamma_left_a(self, u, gamma):
        """(a . gamma)(x) = a_(2) gamma(a_(1) |> x)."""
        d = self.descriptor
        mul = d.group.mul
        fun = self.a_side == FUN
        raw = {}
        legs = d.coproduct_pairs(self.a_side, u)
        for p, gv in gamma.items():
            gv_items = tuple(gv.coeffs.items())
            for (r, t), c in legs:
                hits = self.a_action_t[r].get(p)
                if hits is None:
                    continue
                if fun:
                    w = gv.coeffs.get(t)
                    if w is None:
                        continue
                    for i, cc in hits:
                        acc = raw.setdefault(i, {})
                        acc[t] = acc.get(t, 0) + c * cc * w
                else:
                    for i, cc in hits:
                        s = c * cc
                        acc = raw.setdefault(i, {})
                        for w, cw in gv_items:
                            k2 = mul(t, w)
                            acc[k2] = acc.get(k2, 0) + s * cw
        return self._wrap_gamma(raw)

    def gamma_right_a(self, u, gamma):
        """(gamma . a)(x) = gamma(x) a."""
        d = self.descriptor
        mul = d.group.mul
        raw = {}
        for i, v in gamma.items():
            if self.a_side == FUN:
                c = v.coeffs.get(u)
                if c is not None:
                    raw[i] = {u: c}
            else:
                raw[i] = {mul(w, u): cw for w, cw in v.coeffs.items()}
        return self._wrap_gamma(raw)

    def gamma_left_h(self, u, gamma):
        """(h . gamma)(x) = <h_(2), w_(1)> w_(2) with w = gamma(h_(1) |> x)."""
        d = self.descriptor
        mul, inv = d.group.mul, d.group.inv
        fun = self.a_side == FUN
        raw = {}
        for (r, t), c in d.coproduct_pairs(self.h_side, u):
            hits_by_p = self.h_action_t[r]
            ti = inv(t)
            for p, gv in gamma.items():
                hits = hits_by_p.get(p)
                if hits is None:
                    continue
                if fun:
                    gv_items = tuple(gv.coeffs.items())
                    for i, cc in hits:
                        s = c * cc
                        acc = raw.setdefault(i, {})
                        for kk, cw in gv_items:
                            k2 = mul(ti, kk)
                            acc[k2] = acc.get(k2, 0) + s * cw
                else:
                    cw = gv.coeffs.get(t)
                    if cw is None:
                        continue
                    for i, cc in hits:
                        acc = raw.setdefault(i, {})
                        acc[t] = acc.get(t, 0) + c * cc * cw
        return self._wrap_gamma(raw)

    def gamma_right_h(self, u, gamma):
        """(gamma . h)(x) = w_(1) <w_(2), h> with w = gamma(x)."""
        d = self.descriptor
        mul, inv = d.group.mul, d.group.inv
        ui = inv(u)
        raw = {}
        for i, v in gamma.items():
            if self.a_side == FUN:
                raw[i] = {mul(kk, ui): c for kk, c in v.coeffs.items()}
            else:
                c = v.coeffs.get(u)
                if c is not None:
                    raw[i] = {u: c}
        return self._wrap_gamma(raw)

    def gamma_basis_elem(self, i, u):
        return {i: self.descriptor.basis(self.a_side, u)}


def build_calculus(tangent: TangentSpace) -> FirstOrderCalculus:
    return FirstOrderCalculus(tangent)


def exterior_rank2(calc: FirstOrderCalculus) -> int:
    """Rank of (id - Psi) on L (x) L: the dimension of the degree-two part
    of the braided exterior algebra removed by the skew-symmetrizer."""
    k = calc.k
    rows = []
    for i in range(k):
        for j in range(k):
            row = {(p * k + q): -c for (p, q), c in calc.psi_ll(i, j).items()}
            key = i * k + j
            row[key] = row.get(key, 0) + 1
            rows.append({kk: c for kk, c in row.items() if c != 0})
    return sparse_rank(rows, k * k)


def calculus_meet(c1: FirstOrderCalculus, c2: FirstOrderCalculus) -> FirstOrderCalculus:
    t = tangent_meet(c1.tangent, c2.tangent)
    return FirstOrderCalculus(t)


def calculus_join(c1: FirstOrderCalculus, c2: FirstOrderCalculus) -> FirstOrderCalculus:
    t = tangent_join(c1.tangent, c2.tangent)
    return FirstOrderCalculus(t)


def _combine(t1: TangentSpace, t2: TangentSpace, op, provenance):
    if t1.descriptor.token != t2.descriptor.token or t1.a_side != t2.a_side:
        raise SideMismatchError("tangent spaces on different groups or sides")
    sub = op(t1.subspace, t2.subspace)
    d = t1.descriptor
    vectors = [d.keps_from_coords(t1.h_side, row) for row in sub.basis.rows]
    return TangentSpace(d, t1.a_side, vectors, provenance=provenance)


def tangent_meet(t1, t2):
    return _combine(t1, t2, subspace_meet, "meet")


def tangent_join(t1, t2):
    return _combine(t1, t2, subspace_join, "join")


# ---------------------------------------------------------------------------
# general constructions: inner, centrally generated, mirror


def _check_ad_invariant(descriptor, alpha):
    for u in range(descriptor.n):
        got = descriptor.ad_left_eval(u, alpha)
        want = alpha.scale(
            descriptor.pairing(
                descriptor.basis(opposite(alpha.side), u), descriptor.unit(alpha.side)
            )
        )
        if got != want:
            raise StabilityError("alpha is not invariant under the adjoint coaction")


def inner_tangent(descriptor, a_side, alpha, variant, lam=Fraction(1)) -> TangentSpace:
    """Tangent space of an inner calculus generated by an Ad-invariant alpha.

    type-I          {x : x_(1) <x_(2), alpha> = eps(alpha) x}
    type-I-extended the same condition tested against ker(counit) only
    type-II         {x : <x, a alpha> = <x, a> (eps(alpha) + lam)  for all
                     a in ker(counit)}
    """
    if alpha.side != a_side:
        raise SideMismatchError("alpha must live on the A side")
    _check_ad_invariant(descriptor, alpha)
    d = descriptor
    h_side = opposite(a_side)
    basis = d.keps_basis(h_side)
    eps_alpha = d.counit(alpha)
    rows = []
    if variant == "type-I":
        # columns: the full H coordinates of the defect of each basis vector
        cols = []
        for x in basis:
            defect = {}
            for (u1, u2), c in d.coproduct(x).coeffs.items():
                pv = d.pairing(d.basis(h_side, u2), alpha)
                if pv != 0:
                    defect[u1] = defect.get(u1, 0) + c * pv
            for u, c in x.coeffs.items():
                defect[u] = defect.get(u, 0) - eps_alpha * c
            cols.append(defect)
        rows = [[cols[j].get(i, 0) for j in range(len(basis))] for i in range(d.n)]
    else:
        if variant == "type-I-extended":
            conditions = []
            for a in d.keps_basis(a_side):
                def entry(x, a=a):
                    acc = 0
                    for (u1, u2), c in d.coproduct(x).coeffs.items():
                        pa = d.pairing(d.basis(h_side, u1), a)
                        if pa == 0:
                            continue
                        pv = d.pairing(d.basis(h_side, u2), alpha)
                        if pv != 0:
                            acc = acc + c * pa * pv
                    return acc - eps_alpha * d.pairing(x, a)
                conditions.append(entry)
        elif variant == "type-II":
            conditions = []
            for a in d.keps_basis(a_side):
                def entry(x, a=a):
                    return d.pairing(x, d.hopf_product(a, alpha)) - (
                        eps_alpha + lam
                    ) * d.pairing(x, a)
                conditions.append(entry)
        else:
            raise ValueError(f"unknown inner variant {variant!r}")
        rows = [[cond(x) for x in basis] for cond in conditions]
    sub = kernel(Matrix(rows, ncols=len(basis)))
    sub = Subspace(sub.basis, d.keps_dim(), _keps_label(d, h_side))
    vectors = [d.keps_from_coords(h_side, row) for row in sub.basis.rows]
    return TangentSpace(
        d, a_side, vectors,
        provenance=f"inner-{variant}",
        meta={"alpha": alpha, "variant": variant, "lam": lam},
    )


def require_central(descriptor, c: HopfElement):
    for u in range(descriptor.n):
        b = descriptor.basis(c.side, u)
        if descriptor.hopf_product(b, c) != descriptor.hopf_product(c, b):
            raise CentralityError(f"element is not central (witness basis {u})")


def centrally_generated(descriptor, a_side, central, restricted=True) -> TangentSpace:
    """L_c spanned by x_a = <a, c_(1)> c_(2) - <a, c> 1 over a in ker(counit)
    of A (or over all of A when restricted is False)."""
    d = descriptor
    h_side = opposite(a_side)
    if central.side != h_side:
        raise SideMismatchError("central element must live on the H side")
    require_central(d, central)
    eps_c = d.counit(central)
    defect = central - d.unit(h_side).scale(eps_c)
    if defect.is_zero():
        raise EmptyTangentError("central element is a multiple of the unit")

    def x_of(a):
        out = d.zero(h_side)
        for u, cu in a.coeffs.items():
            out = out + d.eval_left(u, central).scale(cu)
        return out - d.unit(h_side).scale(d.pairing(a, central))

    gens = d.keps_basis(a_side) if restricted else [
        d.basis(a_side, u) for u in range(d.n)
    ]
    vectors = independent_subset(d, [x_of(a) for a in gens])
    if not vectors:
        raise EmptyTangentError("centrally generated span is zero")
    tangent = TangentSpace(
        d, a_side, vectors,
        provenance="central",
        meta={"central": central, "restricted": restricted},
    )
    # intertwiner law Ad_h(x_a) = x_{a_(2)} <h, (S a_(1)) a_(3)> on bases
    for u in range(d.n):
        for w in range(d.n):
            a = d.basis(a_side, w)
            lhs = d.double_act_h(d.basis(h_side, u), x_of(a))
            rhs = x_of(d.ad_right_eval(u, a))
            if lhs != rhs:
                raise ConsistencyError(
                    f"central intertwiner law failed at h={u}, a={w}"
                )
    return tangent


def mirror_ideal(m: QuotientIdeal, central: HopfElement, _verify_double=True) -> QuotientIdeal:
    """Mirror of a one-sided quotienting ideal through a central element:
    right-handed M -> {a : <m a, c> = 0 for all m in M} (left-handed), and
    the left-to-right mirror multiplies on the other side."""
    d = m.descriptor
    h_side = opposite(m.a_side)
    if central.side != h_side:
        raise SideMismatchError("central element must live on the H side")
    require_central(d, central)
    m.require_stable()
    basis = d.keps_basis(m.a_side)
    rows = []
    for v in m.vectors:
        row = []
        for a in basis:
            prod = (
                d.hopf_product(v, a) if m.handed == "right" else d.hopf_product(a, v)
            )
            row.append(d.pairing(prod, central))
        rows.append(row)
    if rows:
        sub = kernel(Matrix(rows, ncols=len(basis)))
        sub = Subspace(sub.basis, d.keps_dim(), _keps_label(d, m.a_side))
    else:
        sub = full_keps(d, m.a_side)
    out = QuotientIdeal(
        d, m.a_side, sub,
        handed="left" if m.handed == "right" else "right",
        provenance="mirror",
    )
    out.require_stable()
    if _verify_double:
        back = mirror_ideal(out, central, _verify_double=False)
        if not back.subspace.contains_subspace(m.subspace):
            raise ConsistencyError("double mirror does not contain the input ideal")
    return out
