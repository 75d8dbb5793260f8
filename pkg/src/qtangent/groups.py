"""Permutation groups: construction by orbit closure, conjugacy classes,
exponent, cyclic subgroups, and JSON group specifications.

Composition convention: (p * q) applies p first, then q, so that
(1 2 3)*(1 2)*(1 3 2) is (1 3).  Element enumeration is breadth-first from
the identity with the generators in the given order; the resulting element
order is part of the public contract (all downstream bases index into it).
"""

from __future__ import annotations

import itertools
from math import gcd

from .errors import GroupSpecError, SizeCapError

DEFAULT_CAP = 5000


class Perm:
    """Permutation of 0..deg-1 (1-based in all external notation)."""

    __slots__ = ("images", "_hash")

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise GroupSpecError(f"not a permutation: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, deg):
        return cls(range(deg))

    @classmethod
    def from_cycles(cls, deg, cycles):
        """cycles use 1-based points, e.g. [[1, 2], [3, 4]]."""
        images = list(range(deg))
        for cyc in cycles:
            if not cyc:
                continue
            pts = [p - 1 for p in cyc]
            if any(p < 0 or p >= deg for p in pts) or len(set(pts)) != len(pts):
                raise GroupSpecError(f"bad cycle {cyc} for degree {deg}")
            for i, p in enumerate(pts):
                images[p] = pts[(i + 1) % len(pts)]
        return cls(images)

    @property
    def degree(self):
        return len(self.images)

    def __mul__(self, other):
        # apply self first, then other
        return Perm(other.images[i] for i in self.images)

    def inverse(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def order(self):
        n = 1
        p = self
        e = Perm.identity(self.degree)
        while p != e:
            p = p * self
            n += 1
        return n

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self):
        """Nontrivial cycles, 1-based, each rotated to start at its minimum."""
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i] or self.images[i] == i:
                seen[i] = True
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_str(self):
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycs)

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Perm({self.cycle_str()})"


class FiniteGroup:
    """Fully enumerated permutation group with a fixed element order."""

    def __init__(self, degree, generators, cap=DEFAULT_CAP, name=""):
        self.degree = degree
        self.generators = tuple(generators)
        self.name = name
        for g in self.generators:
            if g.degree != degree:
                raise GroupSpecError("generator degree mismatch")
        e = Perm.identity(degree)
        elements = [e]
        index = {e: 0}
        pos = 0
        while pos < len(elements):
            x = elements[pos]
            pos += 1
            for g in self.generators:
                y = x * g
                if y not in index:
                    if len(elements) >= cap:
                        raise SizeCapError(
                            f"group order exceeds cap {cap}; raise the cap explicitly"
                        )
                    index[y] = len(elements)
                    elements.append(y)
        self.elements = tuple(elements)
        self.index = index
        self.identity_index = 0
        self._mul = {}
        self._inv = {}

    @property
    def order(self):
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        r = self._mul.get(key)
        if r is None:
            r = self.index[self.elements[i] * self.elements[j]]
            self._mul[key] = r
        return r

    def inv(self, i: int) -> int:
        r = self._inv.get(i)
        if r is None:
            r = self.index[self.elements[i].inverse()]
            self._inv[i] = r
        return r

    def conj(self, u: int, x: int) -> int:
        """u x u^-1 as element indices."""
        return self.mul(self.mul(u, x), self.inv(u))

    def element_order(self, i: int) -> int:
        n = 1
        j = i
        while j != 0:
            j = self.mul(j, i)
            n += 1
        return n

    def __repr__(self):
        return f"FiniteGroup({self.name or 'G'}, order={self.order})"


class ConjClassSet:
    """Conjugacy classes ordered by minimal element index (identity first)."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        n = group.order
        class_of = [-1] * n
        classes = []
        for i in range(n):
            if class_of[i] >= 0:
                continue
            orbit = {i}
            frontier = [i]
            while frontier:
                x = frontier.pop()
                for u in range(n):
                    y = group.conj(u, x)
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            members = tuple(sorted(orbit))
            k = len(classes)
            classes.append(members)
            for m in members:
                class_of[m] = k
        self.classes = tuple(classes)
        self.class_of = tuple(class_of)
        self.representatives = tuple(c[0] for c in classes)

    @property
    def count(self):
        return len(self.classes)

    def sizes(self):
        return tuple(len(c) for c in self.classes)


def conjugacy_classes(group: FiniteGroup) -> ConjClassSet:
    return ConjClassSet(group)


def exponent(group: FiniteGroup) -> int:
    m = 1
    for i in range(group.order):
        o = group.element_order(i)
        m = m * o // gcd(m, o)
    return m


def cyclic_subgroups(group: FiniteGroup):
    """Distinct cyclic subgroups as (generator index, sorted member indices),
    ordered by first generating element index.  Includes the trivial one."""
    seen = {}
    out = []
    for i in range(group.order):
        members = [0]
        j = i
        while j != 0:
            members.append(j)
            j = group.mul(j, i)
        key = tuple(sorted(set(members)))
        if key not in seen:
            seen[key] = i
            out.append((i, key))
    return out


# ---------------------------------------------------------------------------
# presets and JSON specs


def _cyclic(n):
    return FiniteGroup(n, [Perm.from_cycles(n, [list(range(1, n + 1))])], name=f"Z{n}")


def _symmetric(n):
    if n == 1:
        return FiniteGroup(1, [], name="S1")
    gens = [Perm.from_cycles(n, [[1, 2]])]
    if n > 2:
        gens.append(Perm.from_cycles(n, [list(range(1, n + 1))]))
    return FiniteGroup(n, gens, name=f"S{n}")


def _alternating(n):
    if n < 3:
        return FiniteGroup(max(n, 1), [], name=f"A{n}")
    gens = [Perm.from_cycles(n, [[1, 2, 3]])]
    if n > 3:
        if n % 2:
            gens.append(Perm.from_cycles(n, [list(range(1, n + 1))]))
        else:
            gens.append(Perm.from_cycles(n, [list(range(2, n + 1))]))
    return FiniteGroup(n, gens, name=f"A{n}")


def _dihedral(n):
    """Symmetries of the regular n-gon, order 2n, acting on n vertices."""
    if n < 3:
        raise GroupSpecError("dihedral preset needs n >= 3")
    rot = Perm.from_cycles(n, [list(range(1, n + 1))])
    refl = Perm([(n - i) % n for i in range(n)])
    return FiniteGroup(n, [rot, refl], name=f"D{n}")


def _quaternion8():
    """Q8 as degree-8 permutations via its regular representation.

    Element order before closure: 1, -1, i, -i, j, -j, k, -k.
    """
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    idx = {s: t for t, s in enumerate(names)}

    def normalize(sign, letter):
        if letter.startswith("-"):
            sign, letter = -sign, letter[1:]
        return ("-" if sign < 0 else "") + letter if letter != "1" or sign < 0 else "1"

    table = {}
    base = {
        ("1", "1"): (1, "1"), ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"),
        ("k", "k"): (-1, "1"), ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
        ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"), ("k", "i"): (1, "j"),
        ("i", "k"): (-1, "j"), ("1", "i"): (1, "i"), ("i", "1"): (1, "i"),
        ("1", "j"): (1, "j"), ("j", "1"): (1, "j"), ("1", "k"): (1, "k"),
        ("k", "1"): (1, "k"),
    }
    for x, y in itertools.product(names, names):
        sx, bx = (-1, x[1:]) if x.startswith("-") else (1, x)
        sy, by = (-1, y[1:]) if y.startswith("-") else (1, y)
        s, b = base[(bx, by)]
        table[(x, y)] = normalize(sx * sy * s, b)

    def right_mult_perm(y):
        return Perm(idx[table[(x, y)]] for x in names)

    return FiniteGroup(8, [right_mult_perm("i"), right_mult_perm("j")], name="Q8")


def _klein4():
    return FiniteGroup(
        4,
        [Perm.from_cycles(4, [[1, 2], [3, 4]]), Perm.from_cycles(4, [[1, 3], [2, 4]])],
        name="V4",
    )


_PRESET_FAMILIES = {
    "cyclic": _cyclic,
    "symmetric": _symmetric,
    "alternating": _alternating,
    "dihedral": _dihedral,
}


def preset_group(family: str, n: int | None = None) -> FiniteGroup:
    family = family.lower()
    if family in ("quaternion-8", "quaternion8", "q8"):
        return _quaternion8()
    if family in ("klein-4", "klein4", "v4"):
        return _klein4()
    if family in _PRESET_FAMILIES:
        if n is None:
            raise GroupSpecError(f"preset family {family!r} needs n")
        if n < 1:
            raise GroupSpecError("n must be positive")
        return _PRESET_FAMILIES[family](n)
    raise GroupSpecError(f"unknown preset family {family!r}")


def preset_from_name(name: str) -> FiniteGroup:
    """Shorthand names: S3, A4, D5, Z6 (or C6), Q8, klein-4."""
    s = name.strip()
    low = s.lower()
    if low in ("q8", "quaternion-8", "quaternion8"):
        return _quaternion8()
    if low in ("klein-4", "klein4", "v4"):
        return _klein4()
    if len(s) >= 2 and s[0].upper() in "SADZC" and s[1:].isdigit():
        n = int(s[1:])
        fam = {"S": "symmetric", "A": "alternating", "D": "dihedral",
               "Z": "cyclic", "C": "cyclic"}[s[0].upper()]
        return preset_group(fam, n)
    raise GroupSpecError(f"unknown preset {name!r}")


def group_from_spec(spec, cap=DEFAULT_CAP) -> FiniteGroup:
    """Group from a JSON-style dict.

    Either {"preset": {"family": "symmetric", "n": 3}} or
    {"degree": 3, "generators": [[[1, 2]], [[1, 2, 3]]]} with 1-based cycles.
    """
    if not isinstance(spec, dict):
        raise GroupSpecError("group spec must be an object")
    if "preset" in spec:
        p = spec["preset"]
        if isinstance(p, str):
            return preset_from_name(p)
        if not isinstance(p, dict) or "family" not in p:
            raise GroupSpecError("preset spec needs a family")
        return preset_group(p["family"], p.get("n"))
    if "degree" in spec and "generators" in spec:
        deg = spec["degree"]
        if not isinstance(deg, int) or deg < 1:
            raise GroupSpecError("degree must be a positive integer")
        gens = [Perm.from_cycles(deg, cycs) for cycs in spec["generators"]]
        return FiniteGroup(deg, gens, cap=cap, name=spec.get("name", ""))
    raise GroupSpecError("group spec needs either a preset or degree+generators")
