"""Canonical subspaces of GF(p)^n and the morphisms between them.

A Subspace stores the unique RREF basis of its span, so equality of
subspaces is plain equality of values. Functionals on V are encoded as
coordinate row vectors w acting by v -> v . w, which makes the dual
space concrete: DUAL-side subspaces live in the same coordinate model
and the annihilator is a kernel computation.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import NotIncluded, NotInvertible, ShapeError, TooLarge
from .gf import Mat, check_modulus, invert, kernel_basis, rank, row_basis, rref, solve_left


class Side(Enum):
    PRIMAL = "primal"
    DUAL = "dual"

    def flip(self) -> "Side":
        return Side.DUAL if self is Side.PRIMAL else Side.PRIMAL


class SubspaceFilter(Enum):
    ALL = "all"
    PROPER = "proper"
    NONZERO = "nonzero"


class ComplementMode(Enum):
    CANONICAL = "canonical"
    ALL = "all"


@dataclass(frozen=True)
class Subspace:
    n: int
    p: int
    side: Side
    basis: Mat  # RREF, one row per dimension

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    @property
    def is_full(self) -> bool:
        return self.dim == self.n

    def coords_of(self, v: Sequence[int]) -> tuple[int, ...] | None:
        """Coordinates of v in the canonical basis, or None when v is outside."""
        v = tuple(x % self.p for x in v)
        if len(v) != self.n:
            raise ShapeError(f"vector of length {len(v)} in ambient dimension {self.n}")
        pivots = rref(self.basis).pivots
        coords = tuple(v[c] for c in pivots)
        if self.basis.apply(coords) != v:
            return None
        return coords

    def contains_vector(self, v: Sequence[int]) -> bool:
        return self.coords_of(v) is not None

    def contains(self, other: "Subspace") -> bool:
        self._match(other)
        return all(self.contains_vector(row) for row in other.basis.rows)

    def _match(self, other: "Subspace") -> None:
        if (self.n, self.p, self.side) != (other.n, other.p, other.side):
            raise ShapeError("subspaces live in different ambient spaces")

    def vectors(self) -> Iterator[tuple[int, ...]]:
        """All p^dim vectors of the subspace, coordinates in counting order."""
        for coeffs in itertools.product(range(self.p), repeat=self.dim):
            yield self.basis.apply(coeffs)

    def sort_key(self) -> tuple:
        return (self.dim, self.basis.flat())

    def to_json(self) -> dict:
        return {"n": self.n, "p": self.p, "side": self.side.value, "basis": [list(r) for r in self.basis.rows]}

    @staticmethod
    def from_json(data: dict) -> "Subspace":
        return canonical(data["basis"], data["n"], data["p"], Side(data["side"]))


def canonical(vectors: Sequence[Sequence[int]], n: int, p: int, side: Side = Side.PRIMAL) -> Subspace:
    """Subspace spanned by the given row vectors, in canonical RREF form."""
    check_modulus(p)
    for v in vectors:
        if len(v) != n:
            raise ShapeError(f"vector of length {len(v)} in ambient dimension {n}")
    return Subspace(n, p, side, row_basis(Mat.make(vectors, p, ncols=n)))


def zero_subspace(n: int, p: int, side: Side = Side.PRIMAL) -> Subspace:
    return canonical([], n, p, side)


def full_subspace(n: int, p: int, side: Side = Side.PRIMAL) -> Subspace:
    return Subspace(n, p, side, Mat.identity(n, p))


def gaussian_binomial(n: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of GF(p)^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def _rref_bases(n: int, k: int, p: int) -> list[Mat]:
    """Every k x n RREF matrix of rank k."""
    out = []
    for pivots in itertools.combinations(range(n), k):
        free_slots = [
            (i, c)
            for i in range(k)
            for c in range(pivots[i] + 1, n)
            if c not in pivots
        ]
        base = [[0] * n for _ in range(k)]
        for i, c in enumerate(pivots):
            base[i][c] = 1
        for values in itertools.product(range(p), repeat=len(free_slots)):
            rows = [r[:] for r in base]
            for (i, c), val in zip(free_slots, values):
                rows[i][c] = val
            out.append(Mat.make(rows, p, ncols=n))
    return out


@lru_cache(maxsize=None)
def enumerate_subspaces(
    n: int, p: int, which: SubspaceFilter = SubspaceFilter.ALL, side: Side = Side.PRIMAL
) -> tuple[Subspace, ...]:
    """All subspaces in deterministic order: dimension-major, then lexicographic."""
    check_modulus(p)
    total = sum(gaussian_binomial(n, k, p) for k in range(n + 1))
    if total > 2_000_000:
        raise TooLarge(f"{total} subspaces of GF({p})^{n}")
    lo = 1 if which is SubspaceFilter.NONZERO else 0
    hi = n - 1 if which is SubspaceFilter.PROPER else n
    out: list[Subspace] = []
    for k in range(lo, hi + 1):
        layer = sorted(_rref_bases(n, k, p), key=lambda m: m.flat())
        out.extend(Subspace(n, p, side, b) for b in layer)
    return tuple(out)


def complement(a: Subspace, mode: ComplementMode = ComplementMode.CANONICAL):
    """Complement(s) W with a + W = V and a ^ W = 0.

    CANONICAL returns the span of the standard basis vectors at the
    non-pivot coordinates of a; ALL returns every complement, in
    enumeration order.
    """
    pivots = set(rref(a.basis).pivots)
    if mode is ComplementMode.CANONICAL:
        rows = [[1 if j == c else 0 for j in range(a.n)] for c in range(a.n) if c not in pivots]
        return Subspace(a.n, a.p, a.side, Mat.make(rows, a.p, ncols=a.n))
    want = a.n - a.dim
    found = []
    for w in enumerate_subspaces(a.n, a.p, SubspaceFilter.ALL, a.side):
        if w.dim == want and rank(a.basis.vstack(w.basis)) == a.n:
            found.append(w)
    return tuple(found)


def annihilator(a: Subspace) -> Subspace:
    """Functionals vanishing on a; maps PRIMAL to DUAL and back."""
    return Subspace(a.n, a.p, a.side.flip(), kernel_basis(a.basis.transpose()))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    a._match(b)
    ker = kernel_basis(a.basis.vstack(b.basis))
    rows = [a.basis.apply(k[: a.dim]) for k in ker.rows]
    return canonical(rows, a.n, a.p, a.side)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    a._match(b)
    return Subspace(a.n, a.p, a.side, row_basis(a.basis.vstack(b.basis)))


def is_direct_sum(a: Subspace, b: Subspace) -> bool:
    return a.dim + b.dim == a.n and rank(a.basis.vstack(b.basis)) == a.n


@dataclass(frozen=True)
class Morphism:
    """A linear map dom -> cod, stored w.r.t. the canonical bases."""

    dom: Subspace
    cod: Subspace
    mat: Mat  # dim(dom) x dim(cod)

    def __post_init__(self) -> None:
        if self.mat.nrows != self.dom.dim or self.mat.ncols != self.cod.dim:
            raise ShapeError("morphism matrix does not match dom/cod dimensions")

    @staticmethod
    def identity(a: Subspace) -> "Morphism":
        return Morphism(a, a, Mat.identity(a.dim, a.p))

    @staticmethod
    def zero(a: Subspace, b: Subspace) -> "Morphism":
        return Morphism(a, b, Mat.zeros(a.dim, b.dim, a.p))

    def compose(self, other: "Morphism") -> "Morphism":
        """self followed by other (left-to-right, like the matrix product)."""
        if self.cod != other.dom:
            raise ShapeError("codomain/domain mismatch in composition")
        return Morphism(self.dom, other.cod, self.mat @ other.mat)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Image in ambient coordinates of an ambient vector v in dom."""
        coords = self.dom.coords_of(v)
        if coords is None:
            raise ShapeError("vector outside the domain")
        return self.cod.basis.apply(self.mat.apply(coords))

    @property
    def rank(self) -> int:
        return rank(self.mat)

    @property
    def is_iso(self) -> bool:
        return self.dom.dim == self.cod.dim == self.rank

    @property
    def is_zero(self) -> bool:
        return all(all(x == 0 for x in row) for row in self.mat.rows)

    def image(self) -> Subspace:
        return canonical((self.mat @ self.cod.basis).rows, self.dom.n, self.dom.p, self.cod.side)

    def kernel(self) -> Subspace:
        ker = kernel_basis(self.mat)
        return canonical((ker @ self.dom.basis).rows, self.dom.n, self.dom.p, self.dom.side)


def inclusion(a: Subspace, b: Subspace) -> Morphism:
    """The inclusion morphism j(a, b); raises NotIncluded when a is not inside b."""
    a._match(b)
    rows = []
    for v in a.basis.rows:
        coords = b.coords_of(v)
        if coords is None:
            raise NotIncluded(f"{a.basis} is not a subspace of {b.basis}")
        rows.append(coords)
    return Morphism(a, b, Mat.make(rows, a.p, ncols=b.dim))


def retraction(a: Subspace, b: Subspace) -> Morphism:
    """The splitting retraction q: b -> a with inclusion(a, b) . q = 1_a.

    Projects along the canonical pivot complement of a inside b.
    """
    j = inclusion(a, b)  # a in b-coordinates, also validates a <= b
    acoords = j.mat
    comp_pivots = set(rref(acoords).pivots)
    comp_rows = [
        [1 if j2 == c else 0 for j2 in range(b.dim)] for c in range(b.dim) if c not in comp_pivots
    ]
    comp = Mat.make(comp_rows, b.p, ncols=b.dim)
    inv = invert(comp.vstack(acoords))
    if inv is None:
        raise ShapeError("basis completion failed; a is not full rank inside b")
    proj = Mat(tuple(row[comp.nrows :] for row in inv.rows), a.dim, b.p)
    return Morphism(b, a, proj)


def rref_kernel_image(a: Mat) -> tuple[Mat, int, Subspace, Subspace]:
    """Row reduction bundle: (rref, rank, left kernel, row space) of a matrix.

    The kernel is {v : v @ a = 0} inside GF(p)^rows, the image is the row
    space inside GF(p)^cols; both come back canonical.
    """
    res = rref(a)
    ker = Subspace(a.nrows, a.p, Side.PRIMAL, kernel_basis(a))
    img = Subspace(a.ncols, a.p, Side.PRIMAL, row_basis(a))
    return res.mat, res.rank, ker, img


def image_subspace(a: Subspace, m: Mat) -> Subspace:
    """Image of a under the global map m acting on rows."""
    if m.nrows != a.n:
        raise ShapeError("global map has wrong ambient dimension")
    return canonical((a.basis @ m).rows, a.n, a.p, a.side)


def transport_morphism(f: Morphism, g: Mat) -> Morphism:
    """Conjugate f: A -> B into a morphism A.g -> B.g along a global map g.

    Requires g to be injective on the domain of f; this is what an
    automorphism (or a map restricted to a complement of its kernel)
    provides.
    """
    dom2 = image_subspace(f.dom, g)
    cod2 = image_subspace(f.cod, g)
    if dom2.dim != f.dom.dim:
        raise NotInvertible("global map is not injective on the domain")
    lifted = f.dom.basis @ g
    rows = []
    for v in dom2.basis.rows:
        pre = solve_left(lifted, v)
        if pre is None:
            raise NotInvertible("failed to lift a basis vector")
        w = f.cod.basis.apply(f.mat.apply(pre))
        coords = cod2.coords_of(g.apply(w))
        if coords is None:
            raise NotInvertible("transported image escapes the transported codomain")
        rows.append(coords)
    return Morphism(dom2, cod2, Mat.make(rows, f.dom.p, ncols=cod2.dim))


def subspace_to_json_str(a: Subspace) -> str:
    return json.dumps(a.to_json(), sort_keys=True)
