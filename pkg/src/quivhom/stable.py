"""The stable category and stable functors of non-negative functor data.

The stable image of a module x under functor data f is computed from the
canonical pipeline: substitute the minimal resolution of x (truncated at
window_lo = -width - 2, which makes the result exact in all degrees
>= -1), cancel contractible summands, and truncate at degree zero.  The
degree-0 cokernel M is the stable image; the part in degrees >= 1 is a
bounded complex of projectives U, and the degreewise-split sequence
U -> model -> M[0] is the defining truncation triangle.

Morphisms are transported by lifting to resolutions, substituting, and
inducing on the degree-0 cokernels.  Two different lifts differ by a map
factoring through a projective, so the stable class is well defined.
"""

from __future__ import annotations

import numpy as np

from .complexes import (
    ChainMap,
    Complex,
    HomEngine,
    ShiftedMap,
    _block_hom,
    cone,
    hom_k,
    is_acyclic,
    module_complex,
)
from .exactlin import Matrix, rank, solve
from .homological import is_isomorphic, strip_projectives
from .modules import (
    RepHom,
    Representation,
    cokernel,
    direct_sum,
    hom_space,
    identity_hom,
    is_projective,
    is_ses,
    kernel,
    projective_cover,
    zero_hom,
    zero_rep,
)
from .functors import (
    FunctorData,
    apply_to_module,
    apply_to_proj_chain_map,
    lift_to_resolutions,
    shift_functor,
)
from .projcplx import ProjComplex, minimize


# -- stable hom spaces ---------------------------------------------------


class StableHomSpace:
    """Hom(x, y) together with the subspace of maps factoring through
    projectives (= maps factoring through the cover of y)."""

    def __init__(self, x: Representation, y: Representation):
        self.x = x
        self.y = y
        self.basis = hom_space(x, y)
        ps, epi = projective_cover(y)
        lift_basis = hom_space(x, ps.rep())
        self.factoring = [epi.compose(b) for b in lift_basis]
        p = x.p
        if self.factoring:
            self._fmat = Matrix(p, np.stack([b.flat() for b in self.factoring], axis=1))
        else:
            self._fmat = None
        self.dim = len(self.basis) - (rank(self._fmat) if self._fmat else 0)

    def factors_through_projective(self, f: RepHom) -> bool:
        if f.is_zero():
            return True
        if self._fmat is None:
            return False
        p = self.x.p
        return solve(self._fmat, Matrix(p, f.flat().reshape(-1, 1))) is not None

    def equal(self, f: RepHom, g: RepHom) -> bool:
        return self.factors_through_projective(f - g)


class StableHom:
    """A morphism in the stable category: representative plus its ambient
    quotient-space description."""

    def __init__(self, rep: RepHom, space: StableHomSpace):
        self.rep = rep
        self.space = space

    def is_zero(self) -> bool:
        return self.space.factors_through_projective(self.rep)

    def equals(self, other: "StableHom") -> bool:
        return self.space.equal(self.rep, other.rep)

    def is_stable_iso(self, seed: int = 0) -> bool:
        """True if the class is invertible in the stable category, found
        by searching for a two-sided stable inverse."""
        x, _ = strip_projectives(self.space.x, seed=seed)
        y, _ = strip_projectives(self.space.y, seed=seed)
        if x.total_dim() != y.total_dim():
            return False
        sx = StableHomSpace(self.space.y, self.space.x)
        xx = StableHomSpace(self.space.x, self.space.x)
        yy = StableHomSpace(self.space.y, self.space.y)
        idx = identity_hom(self.space.x)
        idy = identity_hom(self.space.y)

        def inverts(g):
            return xx.equal(g.compose(self.rep), idx) and yy.equal(
                self.rep.compose(g), idy
            )

        if any(inverts(g) for g in sx.basis):
            return True
        rng = np.random.default_rng(seed)
        for _ in range(40):
            g = zero_hom(self.space.y, self.space.x)
            for b in sx.basis:
                g = g + b.scale(int(rng.integers(0, self.space.x.p)))
            if inverts(g):
                return True
        return False


def stable_hom(x: Representation, y: Representation) -> StableHomSpace:
    return StableHomSpace(x, y)


def stable_iso(x: Representation, y: Representation, seed: int = 0) -> bool:
    """Isomorphism in the stable category: strip projective summands,
    then search for an honest isomorphism."""
    sx, _ = strip_projectives(x, seed=seed)
    sy, _ = strip_projectives(y, seed=seed)
    return is_isomorphic(sx, sy, seed=seed)


# -- the truncation triangle and stable images ----------------------------


class TruncationTriangle:
    """U -> model -> M[0], the degreewise-split brutal truncation of the
    canonical model of F(x) at degree one.

    U is a bounded complex of projectives in degrees >= 1; pi is a
    quasi-isomorphism exactly when U is acyclic; mu is the cone
    identification cone(i) -> M[0] (a quasi-isomorphism witnessing the
    connecting map of the triangle).
    """

    def __init__(self, U: ProjComplex, model: Complex, i_map: ChainMap, pi: ChainMap, M: Representation, mu: ChainMap):
        self.U = U
        self.model = model
        self.i = i_map
        self.pi = pi
        self.M = M
        self.mu = mu


def truncation_data(alg, cmin: ProjComplex):
    """(M, pi0, model, triangle) for a minimized projective complex that
    is exact in degree -1: M is the cokernel of d^{-1} placed in degree
    zero, the model keeps the positive part, and the triangle is the
    degreewise-split brutal truncation at degree one."""
    c = cmin.to_complex()
    terms = {i: t for i, t in c.terms.items() if i > 0}
    diffs = {i: d for i, d in c.diffs.items() if i > 0}
    if c.term(0).is_zero():
        M = zero_rep(alg)
        pi0 = zero_hom(c.term(0), M)
    else:
        M, pi0 = cokernel(c.diff(-1))
        if not M.is_zero():
            terms[0] = M
            d0 = c.diff(0)
            mats = {}
            for v in alg.quiver.vertices:
                xm = solve(pi0.mats[v].transpose(), d0.mats[v].transpose())
                assert xm is not None, "model differential not induced"
                mats[v] = xm.transpose()
            if not c.term(1).is_zero():
                diffs[0] = RepHom(M, c.term(1), mats, check=False)
    model = Complex(alg, terms, diffs, check=False)
    uterms = {i: t for i, t in cmin.terms.items() if i >= 1}
    udmats = {i: d for i, d in cmin.dmats.items() if i >= 1}
    U = ProjComplex(alg, uterms, udmats, check=False)
    uc = U.to_complex()
    i_map = ChainMap(uc, model, {i: identity_hom(uc.terms[i]) for i in uc.terms}, check=False)
    mc = module_complex(M) if not M.is_zero() else Complex(alg, {}, {}, check=False)
    pi = ChainMap(model, mc, {0: identity_hom(M)} if not M.is_zero() else {}, check=False)
    cn, _, _ = cone(i_map)
    mu_comps = {}
    if not M.is_zero() and not cn.term(0).is_zero():
        parts0 = [uc.term(1), model.term(0)]
        mu_comps[0] = _block_hom(
            cn.term(0), M, parts0, [M], {(0, 1): identity_hom(M)}
        )
    mu = ChainMap(cn, mc, mu_comps, check=False)
    return M, pi0, model, TruncationTriangle(U, model, i_map, pi, M, mu)


class StableImagePipeline:
    """Everything produced while computing one stable image; retained so
    morphism transport can reuse the same canonical choices."""

    def __init__(self, f: FunctorData, x: Representation):
        self.f = f
        self.x = x
        self.window = -f.width - 2
        raw = apply_to_module(f, x, self.window)
        self.raw = raw
        self.cmin, self.mproj, self.minc = minimize(raw)
        self.M, self.pi0, self.model, self.triangle = truncation_data(f.target, self.cmin)


def _pipeline(f: FunctorData, x: Representation) -> StableImagePipeline:
    key = ("stable", id(x))
    hit = f._apply_cache.get(key)
    if hit is not None and hit[0] is x:
        return hit[1]
    pl = StableImagePipeline(f, x)
    f._apply_cache[key] = (x, pl)
    return pl


def stable_image(f: FunctorData, x: Representation):
    """(M, truncation triangle) for the stable image of x under f."""
    pl = _pipeline(f, x)
    return pl.M, pl.triangle


def _model_chain_map(f: FunctorData, phi: RepHom) -> tuple[ChainMap, RepHom]:
    """Chain map between the models of F(source) and F(target) induced by
    a module map, together with the degree-0 component M_x -> M_y."""
    px = _pipeline(f, phi.source)
    py = _pipeline(f, phi.target)
    lam = lift_to_resolutions(phi, px.window)
    flam = apply_to_proj_chain_map(f, lam)
    psi = py.mproj.compose(flam).compose(px.minc)
    psi_cm = psi.to_chain_map()
    alg = f.target
    b = zero_hom(px.M, py.M)
    if not px.M.is_zero() and not py.M.is_zero():
        mats = {}
        for v in alg.quiver.vertices:
            rhs = py.pi0.mats[v] @ psi_cm.map(0).mats[v]
            xm = solve(px.pi0.mats[v].transpose(), rhs.transpose())
            assert xm is not None, "induced stable map not defined on cokernel"
            mats[v] = xm.transpose()
        b = RepHom(px.M, py.M, mats, check=False)
    comps = {0: b} if not b.source.is_zero() and not b.target.is_zero() else {}
    for i in psi_cm.maps:
        if i >= 1:
            comps[i] = psi_cm.maps[i]
    cm = ChainMap(px.model, py.model, comps)
    return cm, b


def stable_image_map(f: FunctorData, phi: RepHom) -> StableHom:
    """The stable class of the induced map between stable images."""
    px = _pipeline(f, phi.source)
    py = _pipeline(f, phi.target)
    _, b = _model_chain_map(f, phi)
    return StableHom(b, stable_hom(px.M, py.M))


def omega_functor(alg, k: int) -> FunctorData:
    """Functor data whose stable functor is the k-th syzygy."""
    return shift_functor(alg, k)


# -- exactness construction ----------------------------------------------


class ExactSequenceImage:
    """0 -> M_x -> M_y (+) P -> M_z (+) Q -> 0 with projective P, Q, and
    edge maps whose stable classes agree with the transported maps."""

    def __init__(self, P, Q, left, right, mid_parts, end_parts, a_hom, u_hom):
        self.P = P
        self.Q = Q
        self.left = left
        self.right = right
        self.mid_parts = mid_parts
        self.end_parts = end_parts
        self.a_hom = a_hom
        self.u_hom = u_hom

    def verify_exact(self) -> bool:
        return is_ses(self.left, self.right)


def exact_sequence_image(f: FunctorData, fmap: RepHom, gmap: RepHom) -> ExactSequenceImage:
    """Transport a short exact sequence through the stable functor.

    Follows the mapping-cone construction: present the images of the two
    maps by chain maps on the canonical models, identify the model of the
    source with the shifted cone of the second map (the comparison is a
    quasi-isomorphism, built from an explicit null-homotopy of the
    composite), and contract the acyclic total cone down to a four-term
    exact sequence whose ends are the stable images padded by
    projectives.
    """
    if fmap.target is not gmap.source:
        raise ValueError("maps do not compose")
    if not is_ses(fmap, gmap):
        raise ValueError("input is not a short exact sequence")
    alg = f.target
    px = _pipeline(f, fmap.source)
    py = _pipeline(f, fmap.target)
    pz = _pipeline(f, gmap.target)
    pcm, bf = _model_chain_map(f, fmap)
    qcm, bg = _model_chain_map(f, gmap)
    dx, dy, dz = px.model, py.model, pz.model
    qp = qcm.compose(pcm)
    eng = HomEngine(dx, dz)
    h0 = eng.solve_nullhomotopy(ShiftedMap(dx, dz, 0, dict(qp.maps), check=False))
    assert h0 is not None, "composite image is not null-homotopic"

    def build_cone(h):
        # total cone: degree i carries (dx^{i+1}, dy^i, dz^{i-1})
        lo = min(dx.lo - 1, dy.lo, dz.lo + 1)
        hi = max(dx.hi - 1, dy.hi, dz.hi + 1)
        terms = {}
        parts = {}
        for i in range(lo, hi + 1):
            trip = [dx.term(i + 1), dy.term(i), dz.term(i - 1)]
            tot, _, _ = direct_sum(trip)
            if tot.is_zero():
                continue
            terms[i] = tot
            parts[i] = trip
        diffs = {}
        for i in terms:
            if i + 1 not in terms:
                continue
            blocks = {
                (0, 0): dx.diff(i + 1).scale(-1),
                (1, 0): pcm.map(i + 1),
                (1, 1): dy.diff(i),
                (2, 0): h.comp(i + 1).scale(-1),
                (2, 1): qcm.map(i).scale(-1),
                (2, 2): dz.diff(i - 1).scale(-1),
            }
            diffs[i] = _block_hom(terms[i], terms[i + 1], parts[i], parts[i + 1], blocks)
        return Complex(alg, terms, diffs), parts

    # (image of f, minus the homotopy) always lifts the projection square,
    # but only some homotopy choices make the comparison a
    # quasi-isomorphism: correct h by shift-(-1) homotopy classes until
    # the total cone is acyclic
    cls = hom_k(dx, dz, -1)
    cn, parts = build_cone(h0)
    if not is_acyclic(cn):
        rng = np.random.default_rng(0)
        found = False
        for _ in range(60):
            h = h0
            for b in cls.basis:
                co = int(rng.integers(0, alg.p))
                if co:
                    h = ShiftedMap(
                        dx,
                        dz,
                        -1,
                        {
                            i: h.comp(i) + b.comp(i).scale(co)
                            for i in set(h.comps) | set(b.comps)
                        },
                        check=False,
                    )
            cn, parts = build_cone(h)
            if is_acyclic(cn):
                found = True
                break
        assert found, "no homotopy correction makes the total cone acyclic"

    # contract everything above degree 2 into iterated kernels
    cterms = dict(cn.terms)
    cdiffs = dict(cn.diffs)
    top = max(cterms) if cterms else 1
    while top > 2:
        dtop = cdiffs.pop(top - 1)
        k, kincl = kernel(dtop)
        del cterms[top]
        if k.is_zero():
            # the top differential was an isomorphism; the incoming map is
            # forced to vanish, so drop it with the two cancelled terms
            del cterms[top - 1]
            cdiffs.pop(top - 2, None)
        else:
            cterms[top - 1] = k
            if top - 2 in cdiffs:
                prev = cdiffs[top - 2]
                mats = {}
                for v in alg.quiver.vertices:
                    xm = solve(kincl.mats[v], prev.mats[v])
                    assert xm is not None
                    mats[v] = xm
                cdiffs[top - 2] = RepHom(prev.source, k, mats, check=False)
        top = max(cterms) if cterms else 1

    slot_m1 = cterms.get(-1, zero_rep(alg))
    slot0 = cterms.get(0, zero_rep(alg))
    slot1 = cterms.get(1, zero_rep(alg))
    V = cterms.get(2, zero_rep(alg))
    assert is_projective(V), "collapsed top term is not projective"

    d_m1 = cdiffs.get(-1, zero_hom(slot_m1, slot0))
    d_0 = cdiffs.get(0, zero_hom(slot0, slot1))
    d_1 = cdiffs.get(1, zero_hom(slot1, V))

    section = zero_hom(V, slot1)
    if not V.is_zero():
        basis = hom_space(V, slot1)
        cols = [d_1.compose(b).flat() for b in basis]
        mat = Matrix(alg.p, np.stack(cols, axis=1))
        rhs = Matrix(alg.p, identity_hom(V).flat().reshape(-1, 1))
        sol = solve(mat, rhs)
        assert sol is not None, "no section onto the collapsed projective"
        for c, b in zip(sol.data[:, 0], basis):
            section = section + b.scale(int(c))

    mid, mid_incls, mid_projs = direct_sum([V, slot0])
    left = mid_incls[1].compose(d_m1)
    right = section.compose(mid_projs[0]) + d_0.compose(mid_projs[1])
    right = right.scale(-1)

    # part bookkeeping so the projective padding can be read off blockwise
    p_x1, m_y = parts.get(0, [zero_rep(alg)] * 3)[0], parts.get(0, [zero_rep(alg)] * 3)[1]
    p_x2, p_y1, m_z = (
        parts.get(1, [zero_rep(alg)] * 3)[0],
        parts.get(1, [zero_rep(alg)] * 3)[1],
        parts.get(1, [zero_rep(alg)] * 3)[2],
    )
    P, _, _ = direct_sum([V, p_x1])
    Q, _, _ = direct_sum([p_x2, p_y1])
    # extract the M_y and M_z edge components
    a_hom = _extract_block(left, None, None, [V, p_x1, m_y], 2)
    u_hom = _extract_block(right, [V, p_x1, m_y], 2, [p_x2, p_y1, m_z], 2)
    out = ExactSequenceImage(
        P, Q, left, right, (V, p_x1, m_y), (p_x2, p_y1, m_z), a_hom, u_hom
    )
    assert out.verify_exact(), "constructed sequence is not exact"
    return out


def _extract_block(f: RepHom, src_parts, src_idx, tgt_parts=None, tgt_idx=None) -> RepHom:
    """Component of a map between direct sums (row/column block slice)."""
    p = f.source.p
    alg = f.source.algebra
    mats = {}
    for v in alg.quiver.vertices:
        m = f.mats[v].data
        if tgt_parts is None:
            r0, r1 = 0, m.shape[0]
        else:
            r0 = sum(t.dims[v] for t in tgt_parts[:tgt_idx])
            r1 = r0 + tgt_parts[tgt_idx].dims[v]
        if src_parts is None:
            c0, c1 = 0, m.shape[1]
        else:
            c0 = sum(t.dims[v] for t in src_parts[:src_idx])
            c1 = c0 + src_parts[src_idx].dims[v]
        mats[v] = Matrix(p, m[r0:r1, c0:c1])
    src_rep = f.source if src_parts is None else src_parts[src_idx]
    tgt_rep = f.target if tgt_parts is None else tgt_parts[tgt_idx]
    return RepHom(src_rep, tgt_rep, mats, check=False)
