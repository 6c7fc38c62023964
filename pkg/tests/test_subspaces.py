"""Subspace lattice: enumeration counts, complements, annihilators, inclusions."""
import pytest

from linsemi.errors import NotIncluded, ShapeError
from linsemi.gf import Mat
from linsemi.subspaces import (
    ComplementMode,
    Morphism,
    Side,
    Subspace,
    SubspaceFilter,
    annihilator,
    canonical,
    complement,
    enumerate_subspaces,
    full_subspace,
    gaussian_binomial,
    inclusion,
    intersect,
    is_direct_sum,
    retraction,
    subspace_sum,
    zero_subspace,
)


def gaussian_recursive(n: int, k: int, p: int) -> int:
    """Independent oracle: Pascal-style recursion for subspace counts."""
    if k == 0:
        return 1
    if n == 0:
        return 0
    return gaussian_recursive(n - 1, k - 1, p) * p ** (n - k) + gaussian_recursive(n - 1, k, p)


def spanned_vectors(s: Subspace) -> frozenset:
    return frozenset(s.vectors())


class TestCanonical:
    def test_dependent_vectors(self):
        s = canonical([[1, 1], [0, 0]], 2, 2)
        assert s.basis == Mat.make([[1, 1]], 2)
        assert s.dim == 1

    def test_empty_is_zero(self):
        assert canonical([], 2, 2) == zero_subspace(2, 2)

    def test_full_space_form(self):
        s = canonical([[0, 1], [1, 0]], 2, 2)
        assert s.basis == Mat.identity(2, 2)

    def test_span_preserved(self):
        vecs = [[1, 2, 0], [2, 1, 0]]
        s = canonical(vecs, 3, 3)
        for v in vecs:
            assert s.contains_vector(v)

    def test_length_mismatch(self):
        with pytest.raises(ShapeError):
            canonical([[1, 0, 0]], 2, 2)


class TestEnumeration:
    def test_counts_2_2(self):
        assert len(enumerate_subspaces(2, 2)) == 5
        assert len(enumerate_subspaces(2, 2, SubspaceFilter.PROPER)) == 4

    def test_counts_3_2(self):
        assert len(enumerate_subspaces(3, 2)) == 16

    def test_proper_1_2(self):
        spaces = enumerate_subspaces(1, 2, SubspaceFilter.PROPER)
        assert spaces == (zero_subspace(1, 2),)

    @pytest.mark.parametrize("n,p", [(1, 2), (2, 2), (3, 2), (2, 3), (3, 3), (2, 5)])
    def test_counts_match_recursion(self, n, p):
        spaces = enumerate_subspaces(n, p)
        for k in range(n + 1):
            got = sum(1 for s in spaces if s.dim == k)
            assert got == gaussian_binomial(n, k, p) == gaussian_recursive(n, k, p)

    def test_all_distinct_spans(self):
        spaces = enumerate_subspaces(2, 3)
        spans = {spanned_vectors(s) for s in spaces}
        assert len(spans) == len(spaces)

    def test_order_deterministic(self):
        a = enumerate_subspaces(3, 2)
        dims = [s.dim for s in a]
        assert dims == sorted(dims)
        for k in range(4):
            layer = [s.basis.flat() for s in a if s.dim == k]
            assert layer == sorted(layer)


class TestComplement:
    def test_all_complements_of_line(self):
        a = canonical([[0, 1]], 2, 2)
        found = complement(a, ComplementMode.ALL)
        assert {w.basis.rows for w in found} == {((1, 0),), ((1, 1),)}
        assert len(found) == 2 ** (1 * 1)

    def test_zero_complement_is_full(self):
        assert complement(zero_subspace(2, 2), ComplementMode.ALL) == (full_subspace(2, 2),)

    def test_canonical_uses_nonpivots(self):
        a = canonical([[1, 0]], 2, 2)
        assert complement(a) == canonical([[0, 1]], 2, 2)

    @pytest.mark.parametrize("n,p", [(2, 2), (3, 2), (2, 3), (3, 3)])
    def test_complement_counts(self, n, p):
        for a in enumerate_subspaces(n, p):
            found = complement(a, ComplementMode.ALL)
            assert len(found) == p ** (a.dim * (n - a.dim))
            for w in found:
                assert is_direct_sum(a, w)
                assert intersect(a, w) == zero_subspace(n, p)
                assert subspace_sum(a, w) == full_subspace(n, p)

    def test_canonical_is_a_complement(self):
        for a in enumerate_subspaces(3, 3):
            assert is_direct_sum(a, complement(a))


class TestAnnihilator:
    def test_line_annihilator(self):
        a = canonical([[1, 0]], 2, 2)
        ann = annihilator(a)
        assert ann.side is Side.DUAL
        assert ann.basis == Mat.make([[0, 1]], 2)

    def test_zero_and_full(self):
        assert annihilator(zero_subspace(2, 3)).dim == 2
        assert annihilator(full_subspace(2, 3)).dim == 0

    def test_functional_vanishing(self):
        # every dual basis row pairs to zero with every vector of the subspace
        for a in enumerate_subspaces(3, 2):
            ann = annihilator(a)
            for w in ann.basis.rows:
                for v in a.basis.rows:
                    assert sum(x * y for x, y in zip(v, w)) % 2 == 0

    @pytest.mark.parametrize("n,p", [(2, 2), (3, 2), (2, 3), (3, 3)])
    def test_dimension_and_involution(self, n, p):
        for a in enumerate_subspaces(n, p):
            ann = annihilator(a)
            assert ann.dim == n - a.dim
            assert annihilator(ann) == a

    @pytest.mark.parametrize("n,p", [(2, 2), (3, 2), (2, 3), (3, 3)])
    def test_antitone(self, n, p):
        spaces = enumerate_subspaces(n, p)
        for a in spaces:
            for b in spaces:
                assert b.contains(a) == annihilator(a).contains(annihilator(b))


class TestInclusion:
    def test_zero_inclusion_empty(self):
        j = inclusion(zero_subspace(2, 2), canonical([[1, 0]], 2, 2))
        assert j.mat.nrows == 0

    def test_inclusion_into_full(self):
        j = inclusion(canonical([[1, 1]], 2, 2), full_subspace(2, 2))
        assert j.mat == Mat.make([[1, 1]], 2)

    def test_not_included(self):
        with pytest.raises(NotIncluded):
            inclusion(canonical([[1, 0]], 2, 2), canonical([[0, 1]], 2, 2))

    @pytest.mark.parametrize("n,p", [(2, 2), (3, 2), (2, 3)])
    def test_splitting(self, n, p):
        spaces = enumerate_subspaces(n, p)
        for a in spaces:
            for b in spaces:
                if not b.contains(a):
                    continue
                j = inclusion(a, b)
                q = retraction(a, b)
                assert j.compose(q) == Morphism.identity(a)

    def test_inclusion_preserves_vectors(self):
        a = canonical([[1, 1, 0]], 3, 2)
        b = canonical([[1, 0, 0], [0, 1, 0]], 3, 2)
        j = inclusion(a, b)
        assert j.apply((1, 1, 0)) == (1, 1, 0)


class TestMorphism:
    def test_identity_apply(self):
        a = canonical([[1, 0], [0, 1]], 2, 2)
        assert Morphism.identity(a).apply((1, 1)) == (1, 1)

    def test_compose_matches_apply(self):
        a = canonical([[1, 0]], 2, 2)
        b = full_subspace(2, 2)
        c = canonical([[0, 1]], 2, 2)
        f = Morphism(a, b, Mat.make([[0, 1]], 2))
        g = Morphism(b, c, Mat.make([[0], [1]], 2))
        assert f.compose(g).apply((1, 0)) == g.apply(f.apply((1, 0)))

    def test_image_and_kernel(self):
        a = full_subspace(2, 2)
        f = Morphism(a, a, Mat.make([[1, 0], [1, 0]], 2))
        assert f.image() == canonical([[1, 0]], 2, 2)
        assert f.kernel() == canonical([[1, 1]], 2, 2)


def test_json_roundtrip():
    s = canonical([[1, 2]], 2, 3, Side.DUAL)
    assert Subspace.from_json(s.to_json()) == s


class TestRrefKernelImage:
    def test_ones_matrix(self):
        from linsemi.subspaces import rref_kernel_image

        reduced, rank_, kernel, image = rref_kernel_image(Mat.make([[1, 1], [1, 1]], 2))
        assert rank_ == 1
        assert image == canonical([[1, 1]], 2, 2)
        assert kernel == canonical([[1, 1]], 2, 2)
        assert reduced == Mat.make([[1, 1], [0, 0]], 2)

    def test_zero_matrix(self):
        from linsemi.subspaces import rref_kernel_image

        _, rank_, kernel, _ = rref_kernel_image(Mat.zeros(2, 2, 3))
        assert rank_ == 0
        assert kernel == full_subspace(2, 3)

    def test_identity(self):
        from linsemi.subspaces import rref_kernel_image

        _, rank_, kernel, image = rref_kernel_image(Mat.identity(3, 3))
        assert rank_ == 3
        assert kernel == zero_subspace(3, 3)
        assert image == full_subspace(3, 3)

    def test_rank_nullity(self):
        from linsemi.gf import all_matrices
        from linsemi.subspaces import rref_kernel_image

        for m in all_matrices(2, 3, 2):
            _, rank_, kernel, _ = rref_kernel_image(m)
            assert kernel.dim + rank_ == m.nrows
