"""Normal cones over the category of proper subspaces.

The category has the proper subspaces of GF(p)^n as objects (the zero
subspace included, since it is the image of the zero map) and all
linear maps between them as morphisms. A normal cone is one morphism
into a fixed vertex per object, compatible with inclusions, with an
isomorphism somewhere, and coherent: the components must be the
restrictions of a single global transformation read off the coordinate
lines. Coherence follows from the first two laws once the ambient
dimension exceeds 2, but for n = 2 there are inclusion-compatible
families with an isomorphism component that restrict no global map, so
it is enforced explicitly; the cone census counts only coherent
families, and this is what makes the count match the singular
semigroup.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .errors import NotACone, NotSingular, ShapeError, TooLarge
from .gf import Mat, invert, kernel_basis, rref
from .semigroup import Endo, SemigroupTable, mult_table, sing
from .subspaces import (
    ComplementMode,
    Morphism,
    Side,
    Subspace,
    SubspaceFilter,
    canonical,
    complement,
    enumerate_subspaces,
    inclusion,
)


@dataclass(frozen=True)
class SubspaceCategory:
    n: int
    p: int
    side: Side
    objects: tuple[Subspace, ...]

    def index(self, a: Subspace) -> int:
        return _object_index(self.n, self.p, self.side)[a]

    def hom(self, a: Subspace, b: Subspace) -> tuple[Morphism, ...]:
        return hom_between(a, b)

    def inclusion_pairs(self) -> tuple[tuple[Subspace, Subspace], ...]:
        return _inclusion_pairs(self.n, self.p, self.side)

    def all_morphisms(self) -> tuple[Morphism, ...]:
        return _all_morphisms(self.n, self.p, self.side)


@lru_cache(maxsize=None)
def category(n: int, p: int, side: Side = Side.PRIMAL) -> SubspaceCategory:
    return SubspaceCategory(n, p, side, enumerate_subspaces(n, p, SubspaceFilter.PROPER, side))


@lru_cache(maxsize=None)
def _object_index(n: int, p: int, side: Side) -> dict[Subspace, int]:
    return {a: i for i, a in enumerate(category(n, p, side).objects)}


@lru_cache(maxsize=None)
def hom_between(a: Subspace, b: Subspace) -> tuple[Morphism, ...]:
    """Every linear map a -> b, as morphisms in counting order."""
    mats = itertools.product(range(a.p), repeat=a.dim * b.dim)
    return tuple(
        Morphism(a, b, Mat(tuple(flat[i * b.dim : (i + 1) * b.dim] for i in range(a.dim)), b.dim, a.p))
        for flat in mats
    )


@lru_cache(maxsize=None)
def _inclusion_pairs(n: int, p: int, side: Side) -> tuple[tuple[Subspace, Subspace], ...]:
    objs = category(n, p, side).objects
    return tuple((a, b) for a in objs for b in objs if a != b and b.contains(a))


@lru_cache(maxsize=None)
def _all_morphisms(n: int, p: int, side: Side) -> tuple[Morphism, ...]:
    objs = category(n, p, side).objects
    out: list[Morphism] = []
    for a in objs:
        for b in objs:
            out.extend(hom_between(a, b))
    return tuple(out)


class Factorization(NamedTuple):
    """f = q . u . j with q a retraction, u an isomorphism, j an inclusion."""

    q: Morphism
    u: Morphism
    j: Morphism

    def composite(self) -> Morphism:
        return self.q.compose(self.u).compose(self.j)


def image_of_morphism(f: Morphism) -> Subspace:
    return f.image()


def normal_factorization(f: Morphism) -> Factorization:
    """Factor f through the canonical pivot complement of its kernel.

    The retraction projects the domain onto the complement along ker(f),
    so the middle leg is injective and the image provides the inclusion.
    The complement's basis is a subset of the domain's canonical basis
    rows, which keeps every coordinate system aligned.
    """
    a = f.dom
    p = a.p
    ker = kernel_basis(f.mat)
    pivots = set(rref(ker).pivots)
    free = [c for c in range(a.dim) if c not in pivots]
    comp = Mat.make([[1 if j == c else 0 for j in range(a.dim)] for c in free], p, ncols=a.dim)
    a_prime = Subspace(a.n, p, a.side, Mat(tuple(a.basis.rows[c] for c in free), a.n, p))
    inv = invert(ker.vstack(comp))
    q_mat = Mat(tuple(row[ker.nrows :] for row in inv.rows), len(free), p)
    q = Morphism(a, a_prime, q_mat)
    b_prime = f.image()
    u_rows = []
    for v in a_prime.basis.rows:
        w = f.cod.basis.apply(f.mat.apply(a.coords_of(v)))
        u_rows.append(b_prime.coords_of(w))
    u = Morphism(a_prime, b_prime, Mat.make(u_rows, p, ncols=b_prime.dim))
    j = inclusion(b_prime, f.cod)
    return Factorization(q, u, j)


def epimorphic_component(f: Morphism) -> Morphism:
    """f viewed onto its image; equals q . u of the normal factorization."""
    b_prime = f.image()
    rows = []
    for v in f.dom.basis.rows:
        w = f.cod.basis.apply(f.mat.apply(f.dom.coords_of(v)))
        rows.append(b_prime.coords_of(w))
    return Morphism(f.dom, b_prime, Mat.make(rows, f.dom.p, ncols=b_prime.dim))


@dataclass(frozen=True)
class NormalCone:
    """One morphism per object into a fixed proper vertex."""

    n: int
    p: int
    side: Side
    vertex: Subspace
    components: tuple[Morphism, ...]  # aligned with category(n, p, side).objects

    def component(self, a: Subspace) -> Morphism:
        return self.components[category(self.n, self.p, self.side).index(a)]

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex.to_json(),
            "components": [[list(r) for r in c.mat.rows] for c in self.components],
        }


class ConeValidation(NamedTuple):
    valid: bool
    compatible: bool  # j(A,B) . sigma(B) == sigma(A) on every inclusion
    has_iso: bool  # some component is an isomorphism
    coherent: bool  # the components restrict one global transformation
    induced: Endo | None
    reason: str | None


def _induced_endo(cone: NormalCone) -> Endo:
    """Read the global map off the components at the coordinate lines."""
    rows = []
    for i in range(cone.n):
        e_i = tuple(1 if j == i else 0 for j in range(cone.n))
        line = canonical([e_i], cone.n, cone.p, cone.side)
        comp = cone.component(line)
        rows.append(comp.cod.basis.apply(comp.mat.apply(line.coords_of(e_i))))
    return Endo(Mat.make(rows, cone.p, ncols=cone.n))


def validate_cone(cone: NormalCone) -> ConeValidation:
    cat = category(cone.n, cone.p, cone.side)
    if len(cone.components) != len(cat.objects):
        return ConeValidation(False, False, False, False, None, "component count mismatch")
    for obj, comp in zip(cat.objects, cone.components):
        if comp.dom != obj or comp.cod != cone.vertex:
            return ConeValidation(False, False, False, False, None, "component endpoints mismatch")
    compatible = True
    for a, b in cat.inclusion_pairs():
        if inclusion(a, b).compose(cone.component(b)) != cone.component(a):
            compatible = False
            break
    has_iso = any(c.is_iso for c in cone.components)
    coherent = False
    induced = None
    if cone.n == 1:
        induced = Endo.zero(1, cone.p)
        coherent = True
    else:
        cand = _induced_endo(cone)
        coherent = all(cone.component(a) == _restriction(cand, a, cone.vertex) for a in cat.objects)
        if coherent:
            induced = cand
    valid = compatible and has_iso and coherent
    reason = None
    if not compatible:
        reason = "inclusion compatibility fails"
    elif not has_iso:
        reason = "no component is an isomorphism"
    elif not coherent:
        reason = "components do not restrict a single global map"
    return ConeValidation(valid, compatible, has_iso, coherent, induced, reason)


def _restriction(alpha: Endo, a: Subspace, target: Subspace) -> Morphism | None:
    rows = []
    for v in a.basis.rows:
        coords = target.coords_of(alpha.apply(v))
        if coords is None:
            return None
        rows.append(coords)
    return Morphism(a, target, Mat.make(rows, a.p, ncols=target.dim))


def principal_cone(alpha: Endo, side: Side = Side.PRIMAL) -> NormalCone:
    """The cone whose component at A is the restriction of alpha to A."""
    if not alpha.is_singular:
        raise NotSingular("principal cones require a proper image, so a singular map")
    n, p = alpha.n, alpha.p
    vertex = Subspace(n, p, side, alpha.image.basis)
    cat = category(n, p, side)
    comps = []
    for a in cat.objects:
        comp = _restriction(alpha, a, vertex)
        comps.append(comp)
    return NormalCone(n, p, side, vertex, tuple(comps))


def cone_to_map(cone: NormalCone) -> Endo:
    """The unique transformation inducing the cone; raises NotACone otherwise."""
    check = validate_cone(cone)
    if not check.valid or check.induced is None:
        raise NotACone(check.reason or "invalid cone")
    return check.induced


def cone_compose(gamma: NormalCone, delta: NormalCone) -> NormalCone:
    """Compose cones: follow gamma by the epimorphic part of delta at gamma's vertex."""
    if (gamma.n, gamma.p, gamma.side) != (delta.n, delta.p, delta.side):
        raise ShapeError("cones live over different categories")
    onto = epimorphic_component(delta.component(gamma.vertex))
    comps = tuple(c.compose(onto) for c in gamma.components)
    return NormalCone(gamma.n, gamma.p, gamma.side, onto.cod, comps)


def idempotent_cone(target: Subspace) -> NormalCone:
    """The idempotent cone at a proper subspace, from the projection fixing it."""
    from .semigroup import idempotent_from

    comp = complement(target, ComplementMode.CANONICAL)
    proj = idempotent_from(comp, target)
    return principal_cone(proj, target.side)


def build_cone_semigroup(n: int, p: int, side: Side = Side.PRIMAL) -> tuple[SemigroupTable, tuple[NormalCone, ...]]:
    """Multiplication table of all principal cones under cone composition."""
    cones = tuple(principal_cone(a, side) for a in sing(n, p))
    return mult_table(cones, cone_compose), cones


class ConeCensus(NamedTuple):
    valid_count: int
    inclusion_iso_only_count: int  # families passing just the two written laws
    by_vertex: tuple[tuple[Subspace, int], ...]
    valid_cones: tuple[NormalCone, ...]


def cone_census(n: int, p: int, budget: int = 2000) -> ConeCensus:
    """Count every component family that is a normal cone, by brute force.

    Enumerates all assignments of a morphism into each candidate vertex
    and validates each family. Families satisfying only the inclusion
    law plus the isomorphism requirement are tallied separately; they
    exceed the coherent ones exactly when n = 2.
    """
    cat = category(n, p, Side.PRIMAL)
    total = 0
    for vertex in cat.objects:
        size = 1
        for a in cat.objects:
            size *= p ** (a.dim * vertex.dim)
        total += size
    if total > budget:
        raise TooLarge(f"cone census would enumerate {total} families (budget {budget})")
    valid: list[NormalCone] = []
    near = 0
    per_vertex = []
    for vertex in cat.objects:
        vcount = 0
        hom_lists = [cat.hom(a, vertex) for a in cat.objects]
        for assignment in itertools.product(*hom_lists):
            cone = NormalCone(n, p, Side.PRIMAL, vertex, tuple(assignment))
            check = validate_cone(cone)
            if check.compatible and check.has_iso:
                near += 1
            if check.valid:
                valid.append(cone)
                vcount += 1
        per_vertex.append((vertex, vcount))
    return ConeCensus(len(valid), near, tuple(per_vertex), tuple(valid))
