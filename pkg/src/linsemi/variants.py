"""Sandwich variants of the full transformation monoid.

The product twisted by a fixed transformation theta keeps the carrier
set and composes through theta. The regular elements form a
subsemigroup; pairing each with its two theta-translates embeds it into
a product of carrier semigroups cut out by the chosen complement of the
null space. When theta is singular the image-side carrier strictly
exceeds the translates coming from regular elements, which is the
non-principal cone count reported here.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .crossconn import LinkedPair
from .errors import NotInvertible
from .normal_cones import hom_between
from .semigroup import (
    Endo,
    SemigroupTable,
    all_endos,
    are_isomorphic,
    mult_table,
    regular_elements,
)
from .subspaces import (
    ComplementMode,
    Morphism,
    Side,
    Subspace,
    SubspaceFilter,
    complement,
    enumerate_subspaces,
    inclusion,
    is_direct_sum,
    image_subspace,
    transport_morphism,
)


@dataclass(frozen=True)
class VariantContext:
    """A sandwich element together with the chosen complement of its null space."""

    theta: Endo
    w: Subspace

    @property
    def n(self) -> int:
        return self.theta.n

    @property
    def p(self) -> int:
        return self.theta.p

    @property
    def null(self) -> Subspace:
        return self.theta.kernel

    @property
    def image(self) -> Subspace:
        return self.theta.image


def make_variant(theta: Endo) -> VariantContext:
    """Choose the complement: the image when it splits the null space, else canonical.

    Only image-compatible choices make the principal-translate claims
    checkable, and the image works exactly when rank(theta^2) equals
    rank(theta).
    """
    if is_direct_sum(theta.kernel, theta.image):
        w = theta.image
    else:
        w = complement(theta.kernel, ComplementMode.CANONICAL)
    return VariantContext(theta, w)


def sandwich(a: Endo, b: Endo, ctx: VariantContext) -> Endo:
    return a @ ctx.theta @ b


@lru_cache(maxsize=None)
def reg_variant(ctx: VariantContext) -> tuple[tuple[Endo, ...], tuple[tuple[Endo, Endo], ...]]:
    """Regular elements of the variant, with their first witnesses."""
    elements = all_endos(ctx.n, ctx.p)
    reg, witness = regular_elements(elements, lambda a, b: sandwich(a, b, ctx))
    return tuple(reg), tuple(witness.items())


@lru_cache(maxsize=None)
def tr_elements(ctx: VariantContext) -> tuple[Endo, ...]:
    """Image-side carrier: transformations with image inside the complement."""
    return tuple(f for f in all_endos(ctx.n, ctx.p) if ctx.w.contains(f.image))


@lru_cache(maxsize=None)
def tb_elements(ctx: VariantContext) -> tuple[Endo, ...]:
    """Kernel-side carrier: transformations with kernel above the null space."""
    return tuple(f for f in all_endos(ctx.n, ctx.p) if f.kernel.contains(ctx.null))


def phi(a: Endo, ctx: VariantContext) -> LinkedPair:
    """The pair of translates (theta . a, a . theta)."""
    return LinkedPair(ctx.theta @ a, a @ ctx.theta)


class VariantCategories(NamedTuple):
    r_objects: tuple[Subspace, ...]
    b_objects: tuple[Subspace, ...]
    tr_table: SemigroupTable
    tb_table: SemigroupTable
    tr_regular: bool
    tb_regular: bool


def variant_categories(ctx: VariantContext) -> VariantCategories:
    """Object sets and carrier semigroups of the two restricted categories.

    The kernel-side carrier is a subsemigroup of the opposite monoid, so
    its table composes in reversed order.
    """
    r_objects = tuple(
        a for a in enumerate_subspaces(ctx.n, ctx.p, SubspaceFilter.ALL) if ctx.w.contains(a)
    )
    b_objects = tuple(
        _ann(a)
        for a in enumerate_subspaces(ctx.n, ctx.p, SubspaceFilter.ALL)
        if a.contains(ctx.null)
    )
    tr = tr_elements(ctx)
    tb = tb_elements(ctx)
    tr_table = mult_table(tr, lambda a, b: a @ b)
    tb_table = mult_table(tb, lambda a, b: b @ a)
    tr_reg, _ = regular_elements(tr, lambda a, b: a @ b)
    tb_reg, _ = regular_elements(tb, lambda a, b: b @ a)
    return VariantCategories(
        r_objects, b_objects, tr_table, tb_table, len(tr_reg) == len(tr), len(tb_reg) == len(tb)
    )


def _ann(a: Subspace) -> Subspace:
    from .subspaces import annihilator

    return annihilator(a)


class RestrictedFunctorVerdict(NamedTuple):
    ok: bool
    failure: str | None
    object_surjective: bool


def _restricted_local_iso(
    objects: tuple[Subspace, ...], omap: dict, mmap: dict, target_objects: tuple[Subspace, ...]
) -> RestrictedFunctorVerdict:
    """Local-isomorphism axioms for a functor given on a full subcategory."""
    object_set = set(objects)
    image_set = {omap[a] for a in objects}
    surjective = image_set == set(target_objects)
    for a in objects:
        if mmap[Morphism.identity(a)] != Morphism.identity(omap[a]):
            return RestrictedFunctorVerdict(False, "identity not preserved", surjective)
    for a in objects:
        for b in objects:
            for g in hom_between(a, b):
                for c in objects:
                    for h in hom_between(b, c):
                        if mmap[g.compose(h)] != mmap[g].compose(mmap[h]):
                            return RestrictedFunctorVerdict(False, "composition not preserved", surjective)
    for a in objects:
        for b in objects:
            if a != b and b.contains(a):
                if not omap[b].contains(omap[a]):
                    return RestrictedFunctorVerdict(False, "inclusions not preserved", surjective)
                if mmap[inclusion(a, b)] != inclusion(omap[a], omap[b]):
                    return RestrictedFunctorVerdict(False, "inclusion morphism not preserved", surjective)
    for a in objects:
        for b in objects:
            hom = hom_between(a, b)
            images = {mmap[g] for g in hom}
            if len(images) != len(hom) or images != set(hom_between(omap[a], omap[b])):
                return RestrictedFunctorVerdict(False, "not fully faithful", surjective)
    for c in objects:
        ideal_image = {omap[a] for a in objects if c.contains(a)}
        target_ideal = {x for x in image_set if omap[c].contains(x)}
        if ideal_image != target_ideal:
            return RestrictedFunctorVerdict(False, "principal ideal not mapped onto", surjective)
    return RestrictedFunctorVerdict(True, None, surjective)


class VariantCxnReport(NamedTuple):
    invertible: bool
    delta_verdict: RestrictedFunctorVerdict | None
    gamma_verdict: RestrictedFunctorVerdict | None
    proper_not_surjective: bool | None
    reg_size: int
    phi_injective: bool
    phi_table_matches: bool
    phi_witness: tuple[int, ...] | None


def variant_crossconnection(ctx: VariantContext) -> VariantCxnReport:
    """Build the restricted functors and the translate semigroup, with verdicts.

    For a singular sandwich element the two functors are checked to be
    local isomorphisms that are not object-surjective; in every case the
    translate pairs of the regular part are checked to multiply exactly
    like the variant product.
    """
    theta = ctx.theta
    reg, _ = reg_variant(ctx)
    pairs = tuple(phi(a, ctx) for a in reg)
    injective = len(set(pairs)) == len(pairs)
    matches = False
    witness = None
    if injective:
        reg_table = mult_table(reg, lambda a, b: sandwich(a, b, ctx))
        pair_table = mult_table(pairs, LinkedPair.combine)
        ok, wit = are_isomorphic(reg_table, pair_table, witness=tuple(range(len(reg))))
        matches, witness = ok, wit
    if theta.inverse() is not None:
        return VariantCxnReport(True, None, None, None, len(reg), injective, matches, witness)
    cats = variant_categories(ctx)
    delta_omap = {a: image_subspace(a, theta.mat) for a in cats.r_objects}
    delta_mmap = {}
    for a in cats.r_objects:
        for b in cats.r_objects:
            for g in hom_between(a, b):
                delta_mmap[g] = transport_morphism(g, theta.mat)
    primal_all = enumerate_subspaces(ctx.n, ctx.p, SubspaceFilter.PROPER)
    delta_verdict = _restricted_local_iso(cats.r_objects, delta_omap, delta_mmap, primal_all)
    theta_t = theta.mat.transpose()
    gamma_verdict = None
    try:
        gamma_omap = {y: image_subspace(y, theta_t) for y in cats.b_objects}
        gamma_mmap = {}
        for y in cats.b_objects:
            for z in cats.b_objects:
                for g in hom_between(y, z):
                    gamma_mmap[g] = transport_morphism(g, theta_t)
        dual_all = enumerate_subspaces(ctx.n, ctx.p, SubspaceFilter.PROPER, Side.DUAL)
        gamma_verdict = _restricted_local_iso(cats.b_objects, gamma_omap, gamma_mmap, dual_all)
    except NotInvertible:
        gamma_verdict = RestrictedFunctorVerdict(False, "transpose collapses a dual object", False)
    not_surjective = not delta_verdict.object_surjective and (
        gamma_verdict is None or not gamma_verdict.object_surjective
    )
    return VariantCxnReport(
        False, delta_verdict, gamma_verdict, not_surjective, len(reg), injective, matches, witness
    )


class NonprincipalCensus(NamedTuple):
    carrier_size: int
    principal_size: int
    translates_in_carrier: bool
    excess: tuple[Endo, ...]
    example: Endo | None


def nonprincipal_cones(ctx: VariantContext) -> NonprincipalCensus:
    """Image-side carrier elements that are not translates of regular elements.

    When the null space does not split off the image, the chosen
    complement cannot contain the translates; the membership flag
    records this and the excess is taken against the translates that do
    land in the carrier.
    """
    carrier = set(tr_elements(ctx))
    reg, _ = reg_variant(ctx)
    principal = {a @ ctx.theta for a in reg}
    inside = principal <= carrier
    excess = tuple(sorted(carrier - principal, key=lambda e: e.mat.flat()))
    return NonprincipalCensus(len(carrier), len(principal), inside, excess, excess[0] if excess else None)
