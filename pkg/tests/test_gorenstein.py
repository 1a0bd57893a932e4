import numpy as np
import pytest

from quivhom.corpus import corpus
from quivhom.functors import identity_functor, shift_functor
from quivhom.gorenstein import (
    CosyzygyError,
    cosyzygy_sequence,
    findim_bounds_check,
    gp_preservation_check,
    inverse_syzygy,
    is_gorenstein_projective,
    perp_check,
)
from quivhom.homological import is_isomorphic, projdim, syzygy
from quivhom.modules import direct_sum, projective, simple
from quivhom.stable import stable_iso
from tests.conftest import random_module


@pytest.fixture(scope="module")
def C1():
    return corpus(1)


def test_perp_projective_always(A1):
    for v in A1.quiver.vertices:
        assert perp_check(projective(A1, v), 0, 5)


def test_perp_dual_numbers_simple(keps):
    # self-injective: Ext^i(k, k[eps]) vanishes for every i >= 1
    assert perp_check(simple(keps, "0"), 0, 8)


def test_perp_refutes_tree_simple(A1):
    assert not perp_check(simple(A1, "1"), 0, 2)


def test_gp_projective(A1, keps):
    for alg, v in ((A1, "1"), (keps, "0")):
        rep = is_gorenstein_projective(projective(alg, v), 3)
        assert rep.is_gp
        assert rep.ext_left == [0, 0, 0]


def test_gp_simple_over_dual_numbers(keps):
    rep = is_gorenstein_projective(simple(keps, "0"), 8)
    assert rep.is_gp
    assert rep.ext_left == [0] * 8 and rep.ext_right == [0] * 8


def test_gp_refutes_simple_over_tree(A1):
    rep = is_gorenstein_projective(simple(A1, "1"), 2)
    assert rep.verdict == "refuted"
    assert rep.witness is not None


def test_depth_monotone(C1):
    x = C1.M[(1, 2)]
    assert is_gorenstein_projective(x, 6).is_gp
    assert is_gorenstein_projective(x, 2).is_gp
    s = simple(C1.A, "1")
    assert not is_gorenstein_projective(s, 2).is_gp
    assert not is_gorenstein_projective(s, 6).is_gp


def test_all_dual_numbers_modules_perp(keps):
    # every module over the self-injective dual numbers passes
    rng = np.random.default_rng(51)
    for _ in range(6):
        m = random_module(keps, rng)
        if m.is_zero():
            continue
        assert perp_check(m, 0, 5)


def test_gp_family_perp_over_gamma(C1):
    # sampled members of the GP family over the tensor algebra
    for key in ((0, 1), (1, 2), (2, 2), (3, 1)):
        assert perp_check(C1.M[key], 0, 5)


def test_inverse_syzygy_roundtrip(keps, C1):
    k = simple(keps, "0")
    y = inverse_syzygy(k)
    assert is_isomorphic(syzygy(y, 1), k)
    x = C1.M[(2, 1)]
    y = inverse_syzygy(x)
    assert stable_iso(syzygy(y, 1), x)


def test_cosyzygy_chain_dual_numbers(keps):
    k = simple(keps, "0")
    seq = cosyzygy_sequence(k, 4)
    assert seq.verify()
    assert [m.total_dim() for m in seq.modules] == [1, 1, 1, 1, 1]
    for emb in seq.embeddings:
        assert emb.target.total_dim() == 2  # always the regular module


def test_cosyzygy_projective_case(A1):
    P = projective(A1, "1")
    seq = cosyzygy_sequence(P, 2)
    assert seq.verify()


def test_cosyzygy_gp_family(C1):
    x = C1.S_P[1]  # GP over the tensor algebra by the classification
    seq = cosyzygy_sequence(x, 3)
    assert seq.verify()
    for m in seq.modules[1:]:
        assert perp_check(m, 0, 2)


def test_cosyzygy_rejects_non_gp(A1):
    with pytest.raises(CosyzygyError):
        cosyzygy_sequence(simple(A1, "1"), 3)


def test_gp_preservation_identity(C1):
    rep = gp_preservation_check(identity_functor(C1.Gam), C1.M[(1, 1)], d=4)
    assert rep.preserved


def test_gp_preservation_main_functor(C1):
    for key in ((0, 2), (3, 1)):
        rep = gp_preservation_check(C1.F, C1.M[key], d=6)
        assert rep.source_report.is_gp
        assert rep.image_report.is_gp
        assert rep.preserved


def test_gp_preserved_by_syzygy_data(C1):
    om = shift_functor(C1.Gam, 1)
    rep = gp_preservation_check(om, C1.M[(0, 3)], d=5)
    assert rep.preserved


def test_projdim_examples(A1, keps, C1):
    assert projdim(projective(A1, "2"), 4) == 0
    assert projdim(simple(keps, "0"), 6) is None
    # interval quotients of neighbouring projectives have dimension one
    from quivhom.corpus import interval_module

    x = interval_module(C1.B, 0, 2)
    assert projdim(x, 4) == 1


def test_findim_bounds_identity(A1):
    rng = np.random.default_rng(52)
    mods = [m for m in (random_module(A1, rng) for _ in range(4)) if not m.is_zero()]
    rep = findim_bounds_check(identity_functor(A1), mods, bound=6)
    assert rep.bounds_ok
    assert rep.findim_source == rep.findim_image


def test_findim_bounds_main_pair(C1):
    mods = C1.indecomposables_B()
    rep = findim_bounds_check(C1.F_BA, mods, bound=6)
    assert rep.bounds_ok
    assert rep.findim_source == 1  # hereditary linear quiver
    assert rep.findim_gap_ok


def test_findim_projective_inputs(C1):
    mods = [projective(C1.B, v) for v in C1.B.quiver.vertices]
    rep = findim_bounds_check(C1.F_BA, mods, bound=4)
    assert rep.bounds_ok
    assert rep.findim_source == 0


def test_cosyzygy_with_projective_padding(C1):
    x = C1.S_P[1]
    padded, _, _ = direct_sum([x, projective(C1.Lam, "0")])
    seq = cosyzygy_sequence(padded, 2)
    assert seq.verify()
