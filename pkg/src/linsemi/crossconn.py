"""Cross-connections between the subspace category and its annihilator dual.

Every automorphism induces a pair of functors: one conjugates subspace
morphisms, the other transports annihilator objects along the
transpose. The linked-pair semigroup collects (alpha, conjugate of
alpha) with the componentwise product; the second coordinates carry the
dual-side cones, so composing them in plain order encodes the double
opposite once and for all. The classification census enumerates the
dimension-preserving object bijections at n = 2 and keeps those whose
line action lifts projectively to an invertible map reproducing the
bijection.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

from .errors import NotInduced, NotInvertible, TooLarge
from .gf import Mat, inv_mod
from .dual import DualMorphism, dual_morphisms, globalize
from .normal_cones import category
from .semigroup import Endo, SemigroupTable, mult_table, sing
from .subspaces import (
    Morphism,
    Side,
    Subspace,
    annihilator,
    canonical,
    image_subspace,
    inclusion,
    is_direct_sum,
    transport_morphism,
)


@dataclass
class CrossConn:
    """Functor data on a subspace category: object map plus morphism map."""

    n: int
    p: int
    side: Side  # side of the source category
    object_map: dict[Subspace, Subspace]
    morphism_map: dict[Morphism, Morphism]
    theta: Endo | None = None

    def obj(self, a: Subspace) -> Subspace:
        return self.object_map[a]

    def mor(self, f: Morphism) -> Morphism:
        return self.morphism_map[f]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CrossConn):
            return NotImplemented
        return (
            (self.n, self.p, self.side) == (other.n, other.p, other.side)
            and self.object_map == other.object_map
            and self.morphism_map == other.morphism_map
        )


def functor_from_global(g: Mat, n: int, p: int, side: Side) -> CrossConn:
    """The functor transporting objects and morphisms along an injective global map."""
    cat = category(n, p, side)
    omap = {a: image_subspace(a, g) for a in cat.objects}
    mmap = {f: transport_morphism(f, g) for f in cat.all_morphisms()}
    return CrossConn(n, p, side, omap, mmap)


def gamma_delta_theta(theta: Endo) -> tuple[CrossConn, CrossConn]:
    """The dual-side and primal-side functors induced by an automorphism."""
    if theta.inverse() is None:
        raise NotInvertible("the inducing transformation must be invertible")
    delta = functor_from_global(theta.mat, theta.n, theta.p, Side.PRIMAL)
    delta.theta = theta
    gamma = functor_from_global(theta.mat.transpose(), theta.n, theta.p, Side.DUAL)
    gamma.theta = theta
    return gamma, delta


class FunctorVerdict(NamedTuple):
    ok: bool
    failure: str | None


def check_functor(f: CrossConn) -> FunctorVerdict:
    """Identities to identities, composites to composites."""
    cat = category(f.n, f.p, f.side)
    for a in cat.objects:
        if f.mor(Morphism.identity(a)) != Morphism.identity(f.obj(a)):
            return FunctorVerdict(False, "identity not preserved")
    by_dom: dict[Subspace, list[Morphism]] = {}
    for h in cat.all_morphisms():
        by_dom.setdefault(h.dom, []).append(h)
    for g in cat.all_morphisms():
        for h in by_dom[g.cod]:
            if f.mor(g.compose(h)) != f.mor(g).compose(f.mor(h)):
                return FunctorVerdict(False, "composition not preserved")
    return FunctorVerdict(True, None)


def is_local_isomorphism(f: CrossConn) -> FunctorVerdict:
    """Inclusion preserving, fully faithful, isomorphism on principal ideals."""
    cat = category(f.n, f.p, f.side)
    base = check_functor(f)
    if not base.ok:
        return base
    for a, b in cat.inclusion_pairs():
        fa, fb = f.obj(a), f.obj(b)
        if not fb.contains(fa):
            return FunctorVerdict(False, "inclusion of objects not preserved")
        if f.mor(inclusion(a, b)) != inclusion(fa, fb):
            return FunctorVerdict(False, "inclusion morphism not preserved")
    for a in cat.objects:
        for b in cat.objects:
            hom = cat.hom(a, b)
            images = {f.mor(g) for g in hom}
            if len(images) != len(hom):
                return FunctorVerdict(False, "not faithful")
            if images != set(cat.hom(f.obj(a), f.obj(b))):
                return FunctorVerdict(False, "not full")
    for c in cat.objects:
        ideal_image = {f.obj(a) for a in cat.objects if c.contains(a)}
        target_ideal = {a for a in cat.objects if f.obj(c).contains(a)}
        if ideal_image != target_ideal:
            return FunctorVerdict(False, "principal ideal not mapped onto")
    return FunctorVerdict(True, None)


def is_crossconnection(gamma: CrossConn) -> FunctorVerdict:
    """Local isomorphism on the dual side covering every primal object via M-sets.

    The M-set of a dual object is the set of complements of its
    pre-annihilator, so the covering condition asks for a dual object
    whose pre-annihilator splits off the given subspace.
    """
    if gamma.side is not Side.DUAL:
        raise ValueError("cross-connection check expects a dual-side functor")
    verdict = is_local_isomorphism(gamma)
    if not verdict.ok:
        return verdict
    primal = category(gamma.n, gamma.p, Side.PRIMAL)
    dual = category(gamma.n, gamma.p, Side.DUAL)
    for a in primal.objects:
        if not any(is_direct_sum(a, annihilator(gamma.obj(y))) for y in dual.objects):
            return FunctorVerdict(False, f"no M-set contains {a.basis}")
    return FunctorVerdict(True, None)


def bifunctor_gamma_set(a: Subspace, y: Subspace, gamma: CrossConn) -> tuple[Endo, ...]:
    """{alpha singular : im alpha <= a, (ker alpha)ann <= gamma(y)}."""
    target = gamma.obj(y)
    return tuple(
        x
        for x in sing(a.n, a.p)
        if a.contains(x.image) and target.contains(annihilator(x.kernel))
    )


def bifunctor_delta_set(a: Subspace, y: Subspace, delta: CrossConn) -> tuple[Endo, ...]:
    """{alpha singular : im alpha <= delta(a), (ker alpha)ann <= y}."""
    target = delta.obj(a)
    return tuple(
        x
        for x in sing(a.n, a.p)
        if target.contains(x.image) and y.contains(annihilator(x.kernel))
    )


def gamma_action(f: Morphism, w: DualMorphism, theta: Endo) -> Callable[[Endo], Endo]:
    """alpha maps to y . alpha . f, where y carries the transported dual morphism."""
    theta_inv = theta.inverse()
    if theta_inv is None:
        raise NotInvertible("bifunctor actions are generated by automorphisms here")
    y = theta @ w.carrier @ theta_inv
    return lambda alpha: globalize(y @ alpha, f)


def delta_action(f: Morphism, w: DualMorphism, theta: Endo) -> Callable[[Endo], Endo]:
    """alpha maps to w-carrier . alpha . (conjugated f)."""
    g = transport_morphism(f, theta.mat)
    return lambda alpha: globalize(w.carrier @ alpha, g)


def chi(theta: Endo) -> Callable[[Endo], Endo]:
    theta_inv = theta.inverse()
    if theta_inv is None:
        raise NotInvertible("the duality is conjugation by an automorphism")
    return lambda alpha: theta_inv @ alpha @ theta


class ChiReport(NamedTuple):
    ok: bool
    squares_checked: int
    failure: tuple | None


def check_chi_naturality(theta: Endo, gamma: CrossConn, delta: CrossConn) -> ChiReport:
    """Verify the commuting square for every pair (f, w) of morphisms.

    Also checks that the duality map is a bijection between the two
    bifunctor sets at every object pair.
    """
    n, p = theta.n, theta.p
    primal = category(n, p, Side.PRIMAL)
    dual = category(n, p, Side.DUAL)
    chi_map = chi(theta)
    gamma_sets = {
        (a, y): bifunctor_gamma_set(a, y, gamma) for a in primal.objects for y in dual.objects
    }
    delta_sets = {
        (a, y): set(bifunctor_delta_set(a, y, delta)) for a in primal.objects for y in dual.objects
    }
    for (a, y), gset in gamma_sets.items():
        mapped = {chi_map(x) for x in gset}
        if len(mapped) != len(gset) or mapped != delta_sets[(a, y)]:
            return ChiReport(False, 0, (a, y, "duality is not a bijection"))
    checked = 0
    theta_inv = theta.inverse()
    for y in dual.objects:
        for z in dual.objects:
            duals = dual_morphisms(y, z)
            carriers = [theta @ w.carrier @ theta_inv for w in duals]
            for a in primal.objects:
                gset_ay = gamma_sets[(a, y)]
                chis = [chi_map(x) for x in gset_ay]
                for b in primal.objects:
                    target = delta_sets[(b, z)]
                    for f in primal.hom(a, b):
                        g = delta.mor(f)
                        for w, carrier_y in zip(duals, carriers):
                            for alpha, alpha_chi in zip(gset_ay, chis):
                                lhs = chi_map(globalize(carrier_y @ alpha, f))
                                rhs = globalize(w.carrier @ alpha_chi, g)
                                if lhs != rhs:
                                    return ChiReport(False, checked, (a, y, b, z, f, alpha))
                                if rhs not in target:
                                    return ChiReport(False, checked, (a, y, b, z, f, "escapes"))
                            checked += 1
    return ChiReport(True, checked, None)


@dataclass(frozen=True)
class LinkedPair:
    """A primal cone paired with its dual-side twin, both as carrier matrices."""

    first: Endo
    second: Endo

    def combine(self, other: "LinkedPair") -> "LinkedPair":
        # Plain order in both slots: the second coordinates live in the
        # double opposite, which lands back at the original order.
        return LinkedPair(self.first @ other.first, self.second @ other.second)


class LinkedSemigroup(NamedTuple):
    table: SemigroupTable
    pairing_ok: bool  # second == theta^-1 . first . theta throughout
    matches_sing: bool  # table equals the singular table index for index
    witness: tuple[int, ...]


def linked_pair_semigroup(theta: Endo) -> LinkedSemigroup:
    """The linked-pair semigroup of an automorphism, aligned with the singular order."""
    theta_inv = theta.inverse()
    if theta_inv is None:
        raise NotInvertible("linked pairs here are generated by automorphisms")
    elements = sing(theta.n, theta.p)
    pairs = tuple(LinkedPair(a, theta_inv @ a @ theta) for a in elements)
    table = mult_table(pairs, LinkedPair.combine)
    pairing_ok = all(pr.second == theta_inv @ pr.first @ theta for pr in pairs)
    matches = table.table == sing_table(theta.n, theta.p).table
    return LinkedSemigroup(table, pairing_ok, matches, tuple(range(len(elements))))


def sing_table(n: int, p: int) -> SemigroupTable:
    return mult_table(sing(n, p), lambda a, b: a @ b)


def recover_theta(
    delta: CrossConn | dict[Subspace, Subspace], n: int | None = None, p: int | None = None
) -> Endo:
    """Projective lifting: read the inducing map off the coordinate lines.

    The image of the first coordinate line fixes the scale (leading
    coefficient one); the remaining scalars are pinned by the images of
    the diagonal lines through e1 + ei. The result is verified to
    reproduce the whole functor exactly, otherwise NotInduced is raised.
    """
    if isinstance(delta, CrossConn):
        omap = delta.object_map
        n, p = delta.n, delta.p
    else:
        omap = delta
        if n is None or p is None:
            raise ValueError("object-map recovery needs explicit n and p")
    if n < 2:
        raise NotInduced("recovery needs at least two coordinate lines")

    def unit(i: int) -> tuple[int, ...]:
        return tuple(1 if j == i else 0 for j in range(n))

    def line(v: Sequence[int]) -> Subspace:
        return canonical([v], n, p, Side.PRIMAL)

    def image_generator(src: Subspace) -> tuple[int, ...]:
        img = omap.get(src)
        if img is None or img.dim != 1:
            raise NotInduced("a coordinate line is not sent to a line")
        return img.basis.rows[0]

    rows = [image_generator(line(unit(0)))]
    for i in range(1, n):
        gen = image_generator(line(unit(i)))
        diag_img = omap.get(line(tuple((a + b) % p for a, b in zip(unit(0), unit(i)))))
        if diag_img is None or diag_img.dim != 1:
            raise NotInduced("a diagonal line is not sent to a line")
        scaled = None
        for c in range(1, p):
            candidate = tuple((x + c * y) % p for x, y in zip(rows[0], gen))
            if diag_img.contains_vector(candidate):
                scaled = tuple((c * y) % p for y in gen)
                break
        if scaled is None:
            raise NotInduced("no scalar aligns a diagonal line")
        rows.append(scaled)
    theta = Endo(Mat.make(rows, p, ncols=n))
    if theta.inverse() is None:
        raise NotInduced("recovered map is singular")
    _, delta_theta = gamma_delta_theta(theta)
    if delta_theta.object_map != dict(omap):
        raise NotInduced("recovered map does not reproduce the object map")
    if isinstance(delta, CrossConn) and delta.morphism_map:
        if delta_theta.morphism_map != delta.morphism_map:
            raise NotInduced("recovered map does not reproduce the morphism map")
    return theta


def canonical_scalar_rep(theta: Endo) -> Endo:
    """Scale so the first nonzero coordinate of the first row is one."""
    for x in theta.mat.rows[0]:
        if x:
            return Endo(theta.mat.scale(inv_mod(x, theta.p)))
    raise NotInduced("first basis vector is killed; not an automorphism")


class ClassificationCensus(NamedTuple):
    count: int
    bijections: tuple[dict, ...]
    thetas: tuple[Endo, ...]


def classify_crossconnections(n: int, p: int) -> ClassificationCensus:
    """Census of object bijections extendable to induced cross-connections.

    Enumerates every dimension-preserving bijection of the proper
    subspaces at n = 2 (the zero object is fixed, the lines permute) and
    keeps those whose line action lifts to an invertible map reproducing
    the bijection exactly. The recovered representatives come back
    scale-normalized.
    """
    if n != 2 or p not in (2, 3):
        raise TooLarge("the census is implemented for n = 2, p in {2, 3}")
    cat = category(n, p, Side.PRIMAL)
    lines = [a for a in cat.objects if a.dim == 1]
    zero = next(a for a in cat.objects if a.is_zero)
    kept: list[dict] = []
    thetas: list[Endo] = []
    for perm in itertools.permutations(lines):
        omap = {zero: zero}
        omap.update(dict(zip(lines, perm)))
        try:
            theta = recover_theta(omap, n, p)
        except NotInduced:
            continue
        kept.append(omap)
        thetas.append(theta)
    return ClassificationCensus(len(kept), tuple(kept), tuple(thetas))
