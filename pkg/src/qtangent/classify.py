"""Classification of coirreducible calculi on C(G) and on CG.

On C(G) the coirreducible calculi are indexed by the nontrivial conjugacy
classes, with tangent basis x_g = g - e over the class.  On CG they come
in families indexed by the nontrivial irreducible characters chi, each
with a CP^(chi(e)-1) worth of embeddings; a concrete member is pinned by a
functional lambda realized as an element of CG.  A deterministic search
over pairs (cyclic subgroup, one-dimensional character) finds a rank-one
lambda whenever the restriction multiplicity is exactly one; otherwise the
best candidate is kept and the record is flagged as not coirreducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .chartab import CharacterTable
from .errors import EmptyTangentError
from .fields import Cyclotomic, scalar_str
from .groups import FiniteGroup, conjugacy_classes, cyclic_subgroups
from .hopf import FUN, GRP, HopfElement, HopfPair
from .calculus import (
    FirstOrderCalculus,
    TangentSpace,
    build_calculus,
    exterior_rank2,
    full_keps,
    independent_subset,
    keps_subspace,
    tangent_join,
    tangent_meet,
)
from .verify import all_pass, verify_calculus

# core identity suite attached to classification reports; the Gamma-space
# bimodule/bicomodule laws are in the full verify tier (see verify.CHECK_NAMES)
DEFAULT_REPORT_CHECKS = [
    "stability",
    "d_unit",
    "d_rank",
    "leibniz",
    "d_leibniz",
    "d_bicomodule",
    "bracket_in_tangent",
    "bracket_product",
    "jacobi",
    "braid_relation",
    "psi_invertible",
    "psi_mixed_inverse",
    "surjectivity",
]


@dataclass
class CalculusRecord:
    kind: str
    dimension: int
    tangent: TangentSpace
    calculus: FirstOrderCalculus
    verification: dict
    class_representative: str | None = None
    character_row: list | None = None
    character_degree: int | None = None
    block_dimension: int | None = None
    parameter_space: str | None = None
    instantiation: dict | None = None
    exterior_rank: int | None = None

    def to_json(self):
        out = {
            "kind": self.kind,
            "dimension": self.dimension,
            "verification": self.verification,
        }
        if self.class_representative is not None:
            out["class_representative"] = self.class_representative
        if self.character_row is not None:
            out["character_row"] = self.character_row
        if self.character_degree is not None:
            out["character_degree"] = self.character_degree
        if self.block_dimension is not None:
            out["block_dimension"] = self.block_dimension
        if self.parameter_space is not None:
            out["parameter_space"] = self.parameter_space
        if self.instantiation is not None:
            out["instantiation"] = self.instantiation
        if self.exterior_rank is not None:
            out["exterior_rank2"] = self.exterior_rank
        return out


@dataclass
class ClassificationReport:
    group_name: str
    group_order: int
    side: str
    records: list
    decomposition: dict = field(default_factory=dict)
    conductor: int | None = None

    def all_verified(self):
        return all(all_pass(r.verification) for r in self.records)

    def to_json(self):
        out = {
            "group": self.group_name,
            "order": self.group_order,
            "side": self.side,
            "calculi": [r.to_json() for r in self.records],
            "decomposition": self.decomposition,
        }
        if self.conductor is not None:
            out["conductor"] = self.conductor
        return out


def class_tangent(descriptor: HopfPair, classes, class_index) -> TangentSpace:
    """Tangent span{x_g = g - e : g in the class} for a calculus on C(G)."""
    members = classes.classes[class_index]
    one = Fraction(1)
    vectors = [HopfElement(GRP, {i: one, 0: -one}) for i in members]
    labels = [descriptor.group.elements[i].cycle_str() for i in members]
    return TangentSpace(
        descriptor, FUN, vectors, provenance="conjugacy-class", labels=labels,
        meta={"class_index": class_index},
    )


def classify_functions(group: FiniteGroup, checks=DEFAULT_REPORT_CHECKS,
                       with_exterior=True) -> ClassificationReport:
    """One coirreducible calculus on C(G) per nontrivial conjugacy class."""
    descriptor = HopfPair(group)
    classes = conjugacy_classes(group)
    records = []
    tangents = []
    for ci in range(1, classes.count):
        tangent = class_tangent(descriptor, classes, ci)
        calc = build_calculus(tangent)
        rec = CalculusRecord(
            kind="conjugacy-class",
            dimension=tangent.dim,
            tangent=tangent,
            calculus=calc,
            verification=verify_calculus(calc, checks),
            class_representative=group.elements[
                classes.representatives[ci]
            ].cycle_str(),
            exterior_rank=exterior_rank2(calc) if with_exterior else None,
        )
        records.append(rec)
        tangents.append(tangent)

    decomposition = {"dims": [r.dimension for r in records]}
    decomposition["dim_sum"] = sum(decomposition["dims"])
    decomposition["kernel_dim"] = group.order - 1
    if tangents:
        join = tangents[0]
        pairwise_zero = True
        for t in tangents[1:]:
            if tangent_meet(join, t).dim != 0:
                pairwise_zero = False
            join = tangent_join(join, t)
        decomposition["direct_sum"] = bool(
            pairwise_zero
            and join.subspace == full_keps(descriptor, join.h_side)
        )
    else:
        decomposition["direct_sum"] = group.order == 1
    return ClassificationReport(
        group_name=group.name or "G",
        group_order=group.order,
        side="functions",
        records=records,
        decomposition=decomposition,
    )


# ---------------------------------------------------------------------------
# CG side: character families and lambda instantiation


def _subgroup_characters(group, table, gen_idx, members):
    """One-dimensional characters of the cyclic subgroup <gen>, as value
    maps on element indices with values in Q(zeta_m)."""
    m = table.conductor
    d = len(members)
    powers = [0]
    cur = 0
    for _ in range(1, d):
        cur = group.mul(cur, gen_idx)
        powers.append(cur)
    out = []
    for t in range(d):
        vals = {powers[j]: Cyclotomic.zeta(m, (m // d) * t * j) for j in range(d)}
        out.append(vals)
    return out, powers


def restriction_multiplicity(group, table, row, members, phi):
    """<chi|_H, phi> = |H|^{-1} sum_h chi(h) phi(h^{-1}), a nonneg integer."""
    m = table.conductor
    acc = Cyclotomic.from_rational(m, 0)
    for h in members:
        acc = acc + table.value(row, h) * phi[group.inv(h)]
    acc = acc * Fraction(1, len(members))
    if not acc.is_rational():
        return None
    v = acc.rational_value()
    if v.denominator != 1 or v < 0:
        return None
    return int(v)


def lambda_from_subgroup_character(group, table, members, phi) -> HopfElement:
    """lambda = sum_{h in H} phi(h^{-1}) h in CG."""
    return HopfElement(
        GRP, {h: phi[group.inv(h)] for h in members}
    )


def tangent_from_lambda(descriptor: HopfPair, table: CharacterTable, row: int,
                        lam: HopfElement) -> TangentSpace:
    """L = span{u -> chi(g u lambda) - chi(g lambda) : g in G} inside
    ker(counit) of C(G), for a calculus on CG."""
    if lam.is_zero():
        raise EmptyTangentError("lambda is zero")
    group = descriptor.group
    n = group.order
    m = table.conductor
    zero = Cyclotomic.from_rational(m, 0)
    # T[w] = chi(w lambda)
    t_vals = []
    for w in range(n):
        acc = zero
        for h, c in lam.coeffs.items():
            acc = acc + table.value(row, group.mul(w, h)) * c
        t_vals.append(acc)
    vectors = []
    for g in range(n):
        coeffs = {}
        base = t_vals[g]
        for u in range(1, n):
            val = t_vals[group.mul(g, u)] - base
            if not val.is_zero():
                coeffs[u] = val
        if coeffs:
            vectors.append(HopfElement(FUN, coeffs))
    vectors = independent_subset(descriptor, vectors)
    if not vectors:
        raise EmptyTangentError("lambda is annihilated by the character")
    return TangentSpace(
        descriptor, GRP, vectors, provenance="character-family",
        meta={"character_row": row, "lambda": lam},
    )


def instantiate_lambda(descriptor: HopfPair, table: CharacterTable, row: int):
    """Deterministic search for a rank-one lambda for the character family.

    Returns (lambda, rank, info).  rank = dim L / chi(e); rank 1 means the
    instantiated calculus is coirreducible.  When no (cyclic subgroup,
    character) pair has restriction multiplicity one, the candidate with
    the smallest measured rank is returned and flagged.
    """
    group = descriptor.group
    degree = table.degrees[row]
    fallback = None
    for gen_idx, members in cyclic_subgroups(group):
        phis, _ = _subgroup_characters(group, table, gen_idx, members)
        for t, phi in enumerate(phis):
            mult = restriction_multiplicity(group, table, row, members, phi)
            if mult is None or mult == 0:
                continue
            lam = lambda_from_subgroup_character(group, table, members, phi)
            tangent = tangent_from_lambda(descriptor, table, row, lam)
            if tangent.dim % degree:
                raise EmptyTangentError(
                    f"tangent dimension {tangent.dim} not a multiple of {degree}"
                )
            rank = tangent.dim // degree
            info = {
                "subgroup_generator": group.elements[gen_idx].cycle_str(),
                "character_index": t,
                "multiplicity": mult,
            }
            if mult == 1 and rank == 1:
                return lam, rank, info
            if fallback is None or rank < fallback[1]:
                fallback = (lam, rank, info)
    if fallback is None:
        raise EmptyTangentError("no usable lambda found")
    return fallback


def lambda_support_json(descriptor, lam: HopfElement):
    return [
        [descriptor.group.elements[i].cycle_str(), scalar_str(c)]
        for i, c in sorted(lam.coeffs.items())
    ]


def lambda_equivalent(descriptor, table, row, lam1, lam2) -> bool:
    """Two lambdas are equivalent when they induce the same tangent space."""
    t1 = tangent_from_lambda(descriptor, table, row, lam1)
    t2 = tangent_from_lambda(descriptor, table, row, lam2)
    return t1.subspace == t2.subspace


def classify_group_algebra(group: FiniteGroup, table: CharacterTable | None = None,
                           checks=DEFAULT_REPORT_CHECKS,
                           lambda_override: HopfElement | None = None,
                           with_exterior=True) -> ClassificationReport:
    """One family per nontrivial irreducible character of G, instantiated."""
    descriptor = HopfPair(group)
    if table is None:
        table = CharacterTable(group)
    records = []
    for row in range(table.count):
        if table.is_trivial_row(row):
            continue
        degree = table.degrees[row]
        if lambda_override is not None:
            lam = lambda_override
            tangent = tangent_from_lambda(descriptor, table, row, lam)
            rank = tangent.dim // degree
            info = {"source": "user"}
        else:
            lam, rank, info = instantiate_lambda(descriptor, table, row)
            tangent = tangent_from_lambda(descriptor, table, row, lam)
        calc = build_calculus(tangent)
        instantiation = {
            "lambda_support": lambda_support_json(descriptor, lam),
            "rank": rank,
            "coirreducible": rank == 1,
        }
        instantiation.update(info)
        rec = CalculusRecord(
            kind="character-family",
            dimension=degree,
            tangent=tangent,
            calculus=calc,
            verification=verify_calculus(calc, checks),
            character_row=[str(v) for v in table.rows[row]],
            character_degree=degree,
            block_dimension=degree * degree,
            parameter_space=f"CP^{degree - 1}",
            instantiation=instantiation,
            exterior_rank=exterior_rank2(calc) if with_exterior else None,
        )
        records.append(rec)
    blocks = [r.block_dimension for r in records]
    return ClassificationReport(
        group_name=group.name or "G",
        group_order=group.order,
        side="group_algebra",
        records=records,
        decomposition={
            "block_dims": blocks,
            "block_sum": sum(blocks),
            "kernel_dim": group.order - 1,
        },
        conductor=table.conductor,
    )
