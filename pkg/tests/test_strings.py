import pytest

from quivhom.corpus import corpus, interval_module
from quivhom.homological import is_isomorphic
from quivhom.modules import projective, simple
from quivhom.strings import enumerate_string_modules


@pytest.fixture(scope="module")
def C1():
    return corpus(1)


def test_linear_quiver_recovers_intervals(C1):
    mods = enumerate_string_modules(C1.B)
    # the linear quiver on 4 vertices has exactly 4+3+2+1 indecomposables
    assert len(mods) == 10
    intervals = [
        interval_module(C1.B, i, l) for i in range(4) for l in range(1, 5 - i)
    ]
    for iv in intervals:
        assert any(m.dims == iv.dims and is_isomorphic(m, iv) for m in mods)


def test_tree_algebra_strings(C1):
    mods = enumerate_string_modules(C1.A)
    # simples, three edge modules, and the projective at the branch vertex
    assert len(mods) == 8
    for v in C1.A.quiver.vertices:
        assert any(is_isomorphic(m, simple(C1.A, v)) for m in mods if m.total_dim() == 1)
    P1 = projective(C1.A, "1")
    assert any(m.dims == P1.dims and is_isomorphic(m, P1) for m in mods)
    # the forbidden composite rules out any module supported on 1-3-2
    assert not any(
        m.dims == {"0": 0, "1": 1, "2": 1, "3": 1} for m in mods
    )


def test_rejects_non_monomial_relations(keps):
    # the dual-numbers extension has binomial commutation relations
    from quivhom.corpus import gentle_tree_algebra

    lam = gentle_tree_algebra(1).dual_numbers_extension()
    with pytest.raises(ValueError):
        enumerate_string_modules(lam)
