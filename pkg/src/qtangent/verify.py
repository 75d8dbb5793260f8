"""Exact verification suite for first-order calculi.

Every check runs over full bases of the relevant spaces and compares
exactly in the base field.  A failing check reports the first offending
tuple in lexicographic basis order.
"""

from __future__ import annotations

from .calculus import FirstOrderCalculus, double_stability
from .hopf import GRP
from .linalg import sparse_rank

CHECK_NAMES = [
    "stability",
    "d_unit",
    "d_rank",
    "leibniz",
    "d_leibniz",
    "bimodule",
    "bicomodule",
    "comodule_compat",
    "d_bicomodule",
    "bracket_in_tangent",
    "bracket_product",
    "jacobi",
    "braid_relation",
    "psi_invertible",
    "psi_mixed_inverse",
    "surjectivity",
    "inner_identity",
]

# aliases accepted in check selections (CLI-facing names)
CHECK_ALIASES = {
    "ybe": "braid_relation",
    "braid": "braid_relation",
    "bracket": "bracket_product",
    "inner": "inner_identity",
}


def _check_stability(c: FirstOrderCalculus):
    ok, witness = double_stability(
        c.descriptor, c.a_side, c.tangent.vectors, c.tangent.subspace
    )
    return None if ok else witness


def _check_d_unit(c):
    if c.differential(c.descriptor.unit(c.a_side)):
        return {"reason": "d(1) != 0"}
    return None


def _check_d_rank(c):
    """The rank of the differentials of the A-basis, as a family indexed by
    the tangent basis, is dim L: equivalently x -> partial_x is injective."""
    rows = [dict() for _ in range(c.k)]
    for u in range(c.n):
        for i, v in c.d_images[u].items():
            for w, cc in v.coeffs.items():
                rows[i][u * c.n + w] = cc
    r = sparse_rank(rows, c.n * c.n)
    if r != c.k:
        return {"reason": f"rank of d on the basis is {r}, expected {c.k}"}
    return None


def _check_leibniz(c):
    """Braided Leibniz: partial_x(ab) = (partial_x a) b
    + sum Psi^{-1}(a (x) x) legs  x' (x) a'  of  a' partial_{x'}(b)."""
    d = c.descriptor
    for u in range(c.n):
        a = d.basis(c.a_side, u)
        psi_inv = [c.psi_inv_mixed(u, i) for i in range(c.k)]
        for v in range(c.n):
            b = d.basis(c.a_side, v)
            ab = d.hopf_product(a, b)
            for i in range(c.k):
                lhs = c.d_eval(c.tangent.vectors[i], ab)
                rhs = d.hopf_product(c.d_images[u].get(i, d.zero(c.a_side)), b)
                for (p, t), cc in sorted(psi_inv[i].items()):
                    term = c.d_images[v].get(p)
                    if term is not None:
                        rhs = rhs + d.hopf_product(d.basis(c.a_side, t), term).scale(cc)
                if lhs != rhs:
                    return {"a": u, "b": v, "x": i}
    return None


def find_unbraided_leibniz_counterexample(c):
    """First basis triple where the unbraided rule
    partial_x(ab) = (partial_x a) b + a partial_x(b) fails, or None."""
    d = c.descriptor
    for u in range(c.n):
        a = d.basis(c.a_side, u)
        for v in range(c.n):
            b = d.basis(c.a_side, v)
            ab = d.hopf_product(a, b)
            for i in range(c.k):
                lhs = c.d_eval(c.tangent.vectors[i], ab)
                rhs = d.hopf_product(
                    c.d_images[u].get(i, d.zero(c.a_side)), b
                ) + d.hopf_product(a, c.d_images[v].get(i, d.zero(c.a_side)))
                if lhs != rhs:
                    return {"a": u, "b": v, "x": i}
    return None


def _check_d_leibniz(c):
    """Axiom 4: d(ab) = (da).b + a.(db) in Gamma."""
    d = c.descriptor
    for u in range(c.n):
        for v in range(c.n):
            ab = d.hopf_product(d.basis(c.a_side, u), d.basis(c.a_side, v))
            lhs = {}
            for w, cc in ab.coeffs.items():
                lhs = c.gamma_add(lhs, c.gamma_scale(c.d_images[w], cc))
            rhs = c.gamma_add(
                c.gamma_right_a(v, c.d_images[u]), c.gamma_left_a(u, c.d_images[v])
            )
            if not c.gamma_eq(lhs, rhs):
                return {"a": u, "b": v}
    return None


def _gamma_left_a_elem(c, a, gamma):
    out = {}
    for u, cc in a.coeffs.items():
        out = c.gamma_add(out, c.gamma_scale(c.gamma_left_a(u, gamma), cc))
    return out


def _gamma_right_a_elem(c, a, gamma):
    out = {}
    for u, cc in a.coeffs.items():
        out = c.gamma_add(out, c.gamma_scale(c.gamma_right_a(u, gamma), cc))
    return out


def _gamma_left_h_elem(c, h, gamma):
    out = {}
    for u, cc in h.coeffs.items():
        out = c.gamma_add(out, c.gamma_scale(c.gamma_left_h(u, gamma), cc))
    return out


def _gamma_right_h_elem(c, h, gamma):
    out = {}
    for u, cc in h.coeffs.items():
        out = c.gamma_add(out, c.gamma_scale(c.gamma_right_h(u, gamma), cc))
    return out


def _elementary_gammas(c):
    for i in range(c.k):
        for w in range(c.n):
            yield (i, w), c.gamma_basis_elem(i, w)


def _check_bimodule(c):
    """Axiom 1 on Gamma: associativity of both A-actions and compatibility."""
    d = c.descriptor
    unit = d.unit(c.a_side)
    for key, gamma in _elementary_gammas(c):
        if not c.gamma_eq(_gamma_left_a_elem(c, unit, gamma), gamma):
            return {"gamma": key, "law": "left unit"}
        if not c.gamma_eq(_gamma_right_a_elem(c, unit, gamma), gamma):
            return {"gamma": key, "law": "right unit"}
        left = [c.gamma_left_a(v, gamma) for v in range(c.n)]
        right = [c.gamma_right_a(v, gamma) for v in range(c.n)]
        for u in range(c.n):
            a = d.basis(c.a_side, u)
            for v in range(c.n):
                ab = d.hopf_product(a, d.basis(c.a_side, v))
                if not c.gamma_eq(_gamma_left_a_elem(c, ab, gamma),
                                  c.gamma_left_a(u, left[v])):
                    return {"gamma": key, "a": u, "b": v, "law": "left assoc"}
                if not c.gamma_eq(_gamma_right_a_elem(c, ab, gamma),
                                  c.gamma_right_a(v, c.gamma_right_a(u, gamma))):
                    return {"gamma": key, "a": u, "b": v, "law": "right assoc"}
                if not c.gamma_eq(c.gamma_right_a(v, left[u]),
                                  c.gamma_left_a(u, right[v])):
                    return {"gamma": key, "a": u, "b": v, "law": "compat"}
    return None


def _check_bicomodule(c):
    """Axiom 2 in action form: the two H-actions on Gamma are H^op-actions
    and commute with each other."""
    d = c.descriptor
    h_side = c.h_side
    unit = d.unit(h_side)
    for key, gamma in _elementary_gammas(c):
        if not c.gamma_eq(_gamma_left_h_elem(c, unit, gamma), gamma):
            return {"gamma": key, "law": "left counit"}
        if not c.gamma_eq(_gamma_right_h_elem(c, unit, gamma), gamma):
            return {"gamma": key, "law": "right counit"}
        left = [c.gamma_left_h(v, gamma) for v in range(c.n)]
        right = [c.gamma_right_h(v, gamma) for v in range(c.n)]
        for u in range(c.n):
            hu = d.basis(h_side, u)
            for v in range(c.n):
                hv = d.hopf_product(hu, d.basis(h_side, v))
                vh = d.hopf_product(d.basis(h_side, v), hu)
                if not c.gamma_eq(c.gamma_left_h(v, left[u]),
                                  _gamma_left_h_elem(c, hv, gamma)):
                    return {"gamma": key, "h": u, "g": v, "law": "left op-action"}
                if not c.gamma_eq(c.gamma_right_h(v, right[u]),
                                  _gamma_right_h_elem(c, vh, gamma)):
                    return {"gamma": key, "h": u, "g": v, "law": "right op-action"}
                if not c.gamma_eq(c.gamma_right_h(v, left[u]),
                                  c.gamma_left_h(u, right[v])):
                    return {"gamma": key, "h": u, "g": v, "law": "commute"}
    return None


def _check_comodule_compat(c):
    """The coactions are bimodule maps, written against the pairing:

    h.(a.gamma) = <h_(1), a_(1)>  a_(2).(h_(2).gamma)
    (gamma.a).h = <h_(2), a_(2)>  (gamma.h_(1)).a_(1)
    h.(gamma.a) = <h_(2), a_(1)>  (h_(1).gamma).a_(2)
    (a.gamma).h = <h_(1), a_(2)>  a_(1).(gamma.h_(2))

    The pairing of basis elements is the Kronecker delta on indices, which
    prunes the double Sweedler sums.
    """
    d = c.descriptor
    h_side = c.h_side
    for key, gamma in _elementary_gammas(c):
        lh = {}
        rh = {}

        def left_h(w, gamma=gamma, lh=lh):
            got = lh.get(w)
            if got is None:
                got = c.gamma_left_h(w, gamma)
                lh[w] = got
            return got

        def right_h(w, gamma=gamma, rh=rh):
            got = rh.get(w)
            if got is None:
                got = c.gamma_right_h(w, gamma)
                rh[w] = got
            return got

        for u in range(c.n):
            hlegs = d.coproduct_pairs(h_side, u)
            for v in range(c.n):
                alegs = d.coproduct_pairs(c.a_side, v)
                by_first = {}
                by_second = {}
                for (a1, a2), c2 in alegs:
                    by_first.setdefault(a1, []).append((a2, c2))
                    by_second.setdefault(a2, []).append((a1, c2))

                lhs = _gamma_left_h_elem(
                    c, d.basis(h_side, u), c.gamma_left_a(v, gamma)
                )
                rhs = {}
                for (h1, h2), c1 in hlegs:
                    for a2, c2 in by_first.get(h1, ()):
                        rhs = c.gamma_add(rhs, c.gamma_scale(
                            c.gamma_left_a(a2, left_h(h2)), c1 * c2))
                if not c.gamma_eq(lhs, rhs):
                    return {"gamma": key, "h": u, "a": v, "law": "left-left"}

                lhs = _gamma_right_h_elem(
                    c, d.basis(h_side, u), c.gamma_right_a(v, gamma)
                )
                rhs = {}
                for (h1, h2), c1 in hlegs:
                    for a1, c2 in by_second.get(h2, ()):
                        rhs = c.gamma_add(rhs, c.gamma_scale(
                            c.gamma_right_a(a1, right_h(h1)), c1 * c2))
                if not c.gamma_eq(lhs, rhs):
                    return {"gamma": key, "h": u, "a": v, "law": "right-right"}

                lhs = _gamma_left_h_elem(
                    c, d.basis(h_side, u), c.gamma_right_a(v, gamma)
                )
                rhs = {}
                for (h1, h2), c1 in hlegs:
                    for a2, c2 in by_first.get(h2, ()):
                        rhs = c.gamma_add(rhs, c.gamma_scale(
                            c.gamma_right_a(a2, left_h(h1)), c1 * c2))
                if not c.gamma_eq(lhs, rhs):
                    return {"gamma": key, "h": u, "a": v, "law": "left-right"}

                lhs = _gamma_right_h_elem(
                    c, d.basis(h_side, u), c.gamma_left_a(v, gamma)
                )
                rhs = {}
                for (h1, h2), c1 in hlegs:
                    for a1, c2 in by_second.get(h1, ()):
                        rhs = c.gamma_add(rhs, c.gamma_scale(
                            c.gamma_left_a(a1, right_h(h2)), c1 * c2))
                if not c.gamma_eq(lhs, rhs):
                    return {"gamma": key, "h": u, "a": v, "law": "right-left"}
    return None


def _check_d_bicomodule(c):
    """Axiom 3: h.(da) = <h, a_(1)> d a_(2) and (da).h = d(a_(1)) <h, a_(2)>."""
    d = c.descriptor
    h_side = c.h_side
    for v in range(c.n):
        a = d.basis(c.a_side, v)
        acop = d.coproduct(a)
        da = c.d_images[v]
        for u in range(c.n):
            lhs = c.gamma_left_h(u, da)
            rhs = {}
            for (a1, a2), cc in acop.coeffs.items():
                p = d.pairing(d.basis(h_side, u), d.basis(c.a_side, a1))
                if p != 0:
                    rhs = c.gamma_add(rhs, c.gamma_scale(c.d_images[a2], cc * p))
            if not c.gamma_eq(lhs, rhs):
                return {"h": u, "a": v, "law": "left"}
            lhs = c.gamma_right_h(u, da)
            rhs = {}
            for (a1, a2), cc in acop.coeffs.items():
                p = d.pairing(d.basis(h_side, u), d.basis(c.a_side, a2))
                if p != 0:
                    rhs = c.gamma_add(rhs, c.gamma_scale(c.d_images[a1], cc * p))
            if not c.gamma_eq(lhs, rhs):
                return {"h": u, "a": v, "law": "right"}
    return None


def _check_bracket_in_tangent(c):
    for i in range(c.k):
        for j in range(c.k):
            z = c.bracket_elem(c.tangent.vectors[i], c.tangent.vectors[j])
            if c.coords(z) is None:
                return {"x": i, "y": j}
    return None


def _check_bracket_product(c):
    """[x, y] = x y - (product o Psi)(x (x) y) computed inside H."""
    d = c.descriptor
    for i in range(c.k):
        x = c.tangent.vectors[i]
        for j in range(c.k):
            y = c.tangent.vectors[j]
            lhs = c.bracket_elem(x, y)
            rhs = d.hopf_product(x, y)
            for (p, q), cc in c.psi_ll(i, j).items():
                rhs = rhs - d.hopf_product(
                    c.tangent.vectors[p], c.tangent.vectors[q]
                ).scale(cc)
            if lhs != rhs:
                return {"x": i, "y": j}
    return None


def _bracket_apply(c, coeffs_l, j):
    """[sum coeffs_l x_p, x_j] coordinates."""
    out = {}
    for p, cp in coeffs_l.items():
        for r, cc in c.bracket_coords(p, j).items():
            out[r] = out.get(r, 0) + cp * cc
    return {r: v for r, v in out.items() if v != 0}


def _check_jacobi(c):
    """[x,[y,z]] = [[x,y],z] + [ , [ , z]] o Psi(x (x) y)."""
    for i in range(c.k):
        for j in range(c.k):
            psi = c.psi_ll(i, j)
            bij = c.bracket_coords(i, j)
            for l in range(c.k):
                lhs = {}
                for m, cm in c.bracket_coords(j, l).items():
                    for r, cc in c.bracket_coords(i, m).items():
                        lhs[r] = lhs.get(r, 0) + cm * cc
                rhs = {}
                for m, cm in bij.items():
                    for r, cc in c.bracket_coords(m, l).items():
                        rhs[r] = rhs.get(r, 0) + cm * cc
                for (p, q), cpq in psi.items():
                    for m, cm in c.bracket_coords(q, l).items():
                        for r, cc in c.bracket_coords(p, m).items():
                            rhs[r] = rhs.get(r, 0) + cpq * cm * cc
                lhs = {r: v for r, v in lhs.items() if v != 0}
                rhs = {r: v for r, v in rhs.items() if v != 0}
                if lhs != rhs:
                    return {"x": i, "y": j, "z": l}
    return None


def _psi_triple_apply(c, pos, state):
    """Apply Psi on slots (pos, pos+1) of a sparse triple-tensor dict."""
    out = {}
    for (a, b, e), cc in state.items():
        pair = (a, b) if pos == 0 else (b, e)
        for (p, q), cpq in c.psi_ll(*pair).items():
            key = (p, q, e) if pos == 0 else (a, p, q)
            out[key] = out.get(key, 0) + cc * cpq
    return {kk: v for kk, v in out.items() if v != 0}


def _check_braid_relation(c):
    for i in range(c.k):
        for j in range(c.k):
            for l in range(c.k):
                start = {(i, j, l): 1}
                lhs = _psi_triple_apply(c, 0, _psi_triple_apply(
                    c, 1, _psi_triple_apply(c, 0, start)))
                rhs = _psi_triple_apply(c, 1, _psi_triple_apply(
                    c, 0, _psi_triple_apply(c, 1, start)))
                if lhs != rhs:
                    return {"x": i, "y": j, "z": l}
    return None


def _check_psi_invertible(c):
    r = c.psi_matrix_rank()
    if r != c.k * c.k:
        return {"reason": f"Psi rank {r} on a {c.k * c.k}-dimensional space"}
    return None


def _check_psi_mixed_inverse(c):
    """Psi o Psi^{-1} = id on A (x) L and Psi^{-1} o Psi = id on L (x) A."""
    for u in range(c.n):
        for i in range(c.k):
            acc = {}
            for (p, t), cc in c.psi_inv_mixed(u, i).items():
                for (t2, p2), dd in c.psi_mixed(p, t).items():
                    key = (t2, p2)
                    acc[key] = acc.get(key, 0) + cc * dd
            acc = {kk: v for kk, v in acc.items() if v != 0}
            if acc != {(u, i): 1}:
                return {"a": u, "x": i, "law": "psi o psi-inv"}
    for i in range(c.k):
        for u in range(c.n):
            acc = {}
            for (t, p), cc in c.psi_mixed(i, u).items():
                for (p2, t2), dd in c.psi_inv_mixed(t, p).items():
                    key = (p2, t2)
                    acc[key] = acc.get(key, 0) + cc * dd
            acc = {kk: v for kk, v in acc.items() if v != 0}
            if acc != {(i, u): 1}:
                return {"x": i, "a": u, "law": "psi-inv o psi"}
    return None


def _check_surjectivity(c):
    """Axiom 5: span{a . db} = Gamma = Lin(L, A)."""
    rows = []
    for u in range(c.n):
        for v in range(c.n):
            g = c.gamma_left_a(u, c.d_images[v])
            rows.append(
                {
                    i * c.n + w: cc
                    for i, val in g.items()
                    for w, cc in val.coeffs.items()
                }
            )
    r = sparse_rank(rows, c.k * c.n)
    if r != c.k * c.n:
        return {"reason": f"span{{a db}} has rank {r}, Gamma has {c.k * c.n}"}
    return None


def _check_inner_identity(c):
    """For inner provenance: the differential is implemented by alpha.

    type-I:   eps(alpha) (da)(x) = <x, a_(1) alpha> a_(2) - <x, alpha> a
    type-II:  lam (da)(x) = <a_(1) |> x, alpha> a_(2) - <x, alpha> a
    """
    meta = c.tangent.meta
    alpha = meta.get("alpha")
    if alpha is None:
        return None
    variant = meta["variant"]
    d = c.descriptor
    eps_alpha = d.counit(alpha)
    lam = meta.get("lam", 1)
    for u in range(c.n):
        a = d.basis(c.a_side, u)
        acop = d.coproduct(a)
        for i, x in enumerate(c.tangent.vectors):
            pxalpha = d.pairing(x, alpha)
            if variant == "type-I":
                lhs = c.d_images[u].get(i, d.zero(c.a_side)).scale(eps_alpha)
                rhs = d.zero(c.a_side)
                for (a1, a2), cc in acop.coeffs.items():
                    p = d.pairing(x, d.hopf_product(d.basis(c.a_side, a1), alpha))
                    if p != 0:
                        rhs = rhs + d.basis(c.a_side, a2).scale(cc * p)
                rhs = rhs - a.scale(pxalpha)
            else:
                lhs = c.d_images[u].get(i, d.zero(c.a_side)).scale(lam)
                rhs = d.zero(c.a_side)
                for (a1, a2), cc in acop.coeffs.items():
                    y = d.double_act_a(d.basis(c.a_side, a1), x)
                    p = d.pairing(y, alpha)
                    if p != 0:
                        rhs = rhs + d.basis(c.a_side, a2).scale(cc * p)
                rhs = rhs - a.scale(pxalpha)
            if lhs != rhs:
                return {"a": u, "x": i, "variant": variant}
    return None


_CHECK_FUNCS = {
    "stability": _check_stability,
    "d_unit": _check_d_unit,
    "d_rank": _check_d_rank,
    "leibniz": _check_leibniz,
    "d_leibniz": _check_d_leibniz,
    "bimodule": _check_bimodule,
    "bicomodule": _check_bicomodule,
    "comodule_compat": _check_comodule_compat,
    "d_bicomodule": _check_d_bicomodule,
    "bracket_in_tangent": _check_bracket_in_tangent,
    "bracket_product": _check_bracket_product,
    "jacobi": _check_jacobi,
    "braid_relation": _check_braid_relation,
    "psi_invertible": _check_psi_invertible,
    "psi_mixed_inverse": _check_psi_mixed_inverse,
    "surjectivity": _check_surjectivity,
    "inner_identity": _check_inner_identity,
}


def normalize_checks(checks):
    if checks is None:
        return list(CHECK_NAMES)
    out = []
    for name in checks:
        name = CHECK_ALIASES.get(name, name)
        if name not in _CHECK_FUNCS:
            raise ValueError(f"unknown check {name!r}")
        if name not in out:
            out.append(name)
    return out


def verify_calculus(calc: FirstOrderCalculus, checks=None) -> dict:
    """Run the selected checks; report {name: {status, counterexample?}}."""
    report = {}
    for name in normalize_checks(checks):
        if name == "inner_identity" and "alpha" not in calc.tangent.meta:
            continue
        witness = _CHECK_FUNCS[name](calc)
        entry = {"status": "pass" if witness is None else "fail"}
        if witness is not None:
            entry["counterexample"] = witness
        report[name] = entry
    return report


def all_pass(report: dict) -> bool:
    return all(v["status"] == "pass" for v in report.values())
