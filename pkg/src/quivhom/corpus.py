"""The dual-numbers corpus: a tilted gentle tree algebra, its linear
partner, their tensor products with k[eps]/(eps^2), the derived
equivalence data between them, and the family of Gorenstein projective
modules that the stable functor transports.

Scale parameter n >= 1:

  * A(n): vertices 0..2n+1, arrows a_{2i+1}: 2i+1 -> 2i and
    b_{2i+1}: 2i+1 -> 2i+3, every composite (b then a) zero;
  * B(n): the linear quiver 0 -> 1 -> ... -> 2n+1;
  * Lambda = k[eps] (x) A,  Gamma = k[eps] (x) B.

Over Gamma, the indecomposable non-projective Gorenstein projective
modules are indexed by intervals: M(i, l) has underlying B-module
Q_i (+) Q_{i+l} with eps acting through the inclusion Q_{i+l} -> Q_i
(and M(i, 2n+2-i) = S (x) Q_i when the interval is the whole support of
Q_i).  Each non-projective-interval M(i, l) sits in a short exact
sequence

    0 -> S (x) Q_i -> M(i, l) -> S (x) Q_{i+l} -> 0

which the corpus constructs explicitly and the generator uses (rather
than hand-typed tables) to derive expected values.
"""

from __future__ import annotations

import numpy as np

from .algebra import BoundQuiverAlgebra, Quiver, linear_algebra_An
from .exactlin import DEFAULT_PRIME, Matrix
from .functors import FunctorData, TiltingCandidate
from .modules import (
    ProjSummands,
    RepHom,
    Representation,
    direct_sum,
    element_matrix_to_hom,
    kernel,
    projective,
)
from .projcplx import ProjChainMap, ProjComplex


def gentle_tree_algebra(n: int = 1, p: int = DEFAULT_PRIME) -> BoundQuiverAlgebra:
    verts = [str(i) for i in range(2 * n + 2)]
    arrows = []
    for i in range(n + 1):
        arrows.append((f"a{2 * i + 1}", str(2 * i + 1), str(2 * i)))
    for i in range(n):
        arrows.append((f"b{2 * i + 1}", str(2 * i + 1), str(2 * i + 3)))
    rels = []
    for i in range(n):
        src = str(2 * i + 1)
        rels.append({(src, (f"b{2 * i + 1}", f"a{2 * i + 3}")): 1})
    return BoundQuiverAlgebra(Quiver(verts, arrows), rels, p=p)


def s_tensor_projective(ext_alg: BoundQuiverAlgebra, base_alg: BoundQuiverAlgebra, v: str) -> Representation:
    """The base projective P_v viewed over the dual-numbers extension,
    with eps acting by zero."""
    q = projective(base_alg, v)
    mats = {}
    for n, _, _ in base_alg.quiver.arrows:
        mats[n] = q.mats[n]
    return Representation(ext_alg, dict(q.dims), mats)


def quotient_by_eps(ext_alg: BoundQuiverAlgebra, base_alg: BoundQuiverAlgebra, v: str) -> RepHom:
    """Projection from the extension projective at v onto the eps-trivial
    base projective (kill every basis path containing an eps loop)."""
    P = projective(ext_alg, v)
    S = s_tensor_projective(ext_alg, base_alg, v)
    lay_ext = P._cache["proj_layout"]
    lay_base = projective(base_alg, v)._cache["proj_layout"]
    p = ext_alg.p
    mats = {}
    for w in ext_alg.quiver.vertices:
        m = np.zeros((S.dims[w], P.dims[w]), dtype=np.int64)
        base_index = {pth: i for i, pth in enumerate(lay_base[w])}
        for col, pth in enumerate(lay_ext[w]):
            arrows = pth[1]
            if any(a.startswith("eps_") for a in arrows):
                continue
            m[base_index[(pth[0], arrows)], col] = 1
        mats[w] = Matrix(p, m)
    return RepHom(P, S, mats)


def interval_module(balg: BoundQuiverAlgebra, i: int, l: int) -> Representation:
    """The interval B-module supported on [i, i+l-1] with identity arrows."""
    dims = {}
    for j in range(i, i + l):
        dims[str(j)] = 1
    mats = {}
    for n, s, t in balg.quiver.arrows:
        if s in dims and t in dims:
            mats[n] = Matrix(balg.p, [[1]])
    return Representation(balg, dims, mats)


class Corpus:
    """All the data of the worked family at scale n."""

    def __init__(self, n: int = 1, p: int = DEFAULT_PRIME):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self.p = p
        self.A = gentle_tree_algebra(n, p)
        self.B = linear_algebra_An(2 * n + 2, p)
        self.Lam = self.A.dual_numbers_extension()
        self.Gam = self.B.dual_numbers_extension()
        self.S_Q = {
            i: s_tensor_projective(self.Gam, self.B, str(i)) for i in range(2 * n + 2)
        }
        self.S_P = {
            i: s_tensor_projective(self.Lam, self.A, str(i)) for i in range(2 * n + 2)
        }
        self.M: dict[tuple[int, int], Representation] = {}
        self.ses: dict[tuple[int, int], tuple[RepHom, RepHom]] = {}
        for i in range(2 * n + 2):
            for l in range(1, 2 * n + 2 - i + 1):
                if i + l == 2 * n + 2:
                    self.M[(i, l)] = self.S_Q[i]
                else:
                    self.M[(i, l)], self.ses[(i, l)] = self._gp_module(i, l)
        self.F_BA = self._functor_data(self.B, self.A)
        self.F = self._functor_data(self.Gam, self.Lam, with_eps=True)
        self.G_AB = self._inverse_data(self.A, self.B)
        self.G = self._inverse_data(self.Lam, self.Gam, with_eps=True)
        self.tilting = self._tilting_candidate()
        self.manifest = self._manifest()

    # -- modules -------------------------------------------------------

    def _gp_module(self, i: int, l: int):
        balg, gam = self.B, self.Gam
        qi = projective(balg, str(i))
        qil = projective(balg, str(i + l))
        pth = (str(i), tuple(f"b{j}" for j in range(i, i + l)))
        incl = element_matrix_to_hom(
            balg, [[{pth: 1}]], ProjSummands(balg, [str(i + l)]), ProjSummands(balg, [str(i)])
        )
        dims = {v: qi.dims[v] + qil.dims[v] for v in balg.quiver.vertices}
        p = self.p
        mats = {}
        for nm, s, t in balg.quiver.arrows:
            mats[nm] = Matrix.block_diag(p, [qi.mats[nm], qil.mats[nm]])
        for v in balg.quiver.vertices:
            m = np.zeros((dims[v], dims[v]), dtype=np.int64)
            m[: qi.dims[v], qi.dims[v] :] = incl.mats[v].data
            mats[f"eps_{v}"] = Matrix(p, m)
        M = Representation(gam, dims, mats)
        # sub = S (x) Q_i in the first block, quotient = S (x) Q_{i+l}
        sub = self.S_Q[i]
        quot = self.S_Q[i + l]
        imats, qmats = {}, {}
        for v in gam.quiver.vertices:
            inc = np.zeros((dims[v], sub.dims[v]), dtype=np.int64)
            for k in range(sub.dims[v]):
                inc[k, k] = 1
            imats[v] = Matrix(p, inc)
            pr = np.zeros((quot.dims[v], dims[v]), dtype=np.int64)
            for k in range(quot.dims[v]):
                pr[k, qi.dims[v] + k] = 1
            qmats[v] = Matrix(p, pr)
        return M, (RepHom(sub, M, imats), RepHom(M, quot, qmats))

    def pullback_module(self, i: int) -> Representation:
        """The stable image of S (x) Q_{2i} predicted by the pullback of
        the extension projective at 2i+1 against S (x) P_{2i}."""
        lam, alg = self.Lam, self.A
        pi = quotient_by_eps(lam, alg, str(2 * i + 1))
        g = element_matrix_to_hom(
            alg,
            [[alg.arrow(f"a{2 * i + 1}")]],
            ProjSummands(alg, [str(2 * i)]),
            ProjSummands(alg, [str(2 * i + 1)]),
        )
        sp0 = self.S_P[2 * i]
        sp1 = self.S_P[2 * i + 1]
        gl = RepHom(sp0, sp1, dict(g.mats))
        tot, _, projs = direct_sum([pi.source, sp0])
        diff = pi.compose(projs[0]) - gl.compose(projs[1])
        pb, _ = kernel(diff)
        return pb

    # -- functor data -----------------------------------------------------

    def _functor_data(self, src: BoundQuiverAlgebra, tgt: BoundQuiverAlgebra, with_eps: bool = False) -> FunctorData:
        n = self.n
        images: dict[str, ProjComplex] = {}
        for i in range(n + 1):
            v = str(2 * i + 1)
            images[v] = ProjComplex(tgt, {1: ProjSummands(tgt, [v])}, {}, check=False)
        for i in range(n + 1):
            v, w = str(2 * i), str(2 * i + 1)
            images[v] = ProjComplex(
                tgt,
                {0: ProjSummands(tgt, [v]), 1: ProjSummands(tgt, [w])},
                {0: [[tgt.arrow(f"a{2 * i + 1}")]]},
            )
        arrow_maps: dict[str, ProjChainMap] = {}
        for j in range(2 * n + 1):
            name = f"b{j}"
            if j % 2 == 0:
                # even arrow j -> j+1: identity in degree 1
                i = j // 2
                am = ProjChainMap(
                    images[str(j + 1)], images[str(j)], {1: [[tgt.e(str(2 * i + 1))]]}
                )
            else:
                # odd arrow j -> j+1: the b-path of the target algebra
                i = (j - 1) // 2
                am = ProjChainMap(
                    images[str(j + 1)],
                    images[str(j)],
                    {1: [[tgt.arrow(f"b{2 * i + 1}")]]},
                )
            arrow_maps[name] = am
        if with_eps:
            for v in src.quiver.vertices:
                comps = {}
                for t in images[v].terms:
                    verts = images[v].terms[t].vertices
                    mat = [
                        [
                            tgt.arrow(f"eps_{verts[c]}") if r == c else {}
                            for c in range(len(verts))
                        ]
                        for r in range(len(verts))
                    ]
                    comps[t] = mat
                arrow_maps[f"eps_{v}"] = ProjChainMap(images[v], images[v], comps)
        return FunctorData(src, tgt, images, arrow_maps)

    def _inverse_data(self, src: BoundQuiverAlgebra, tgt: BoundQuiverAlgebra, with_eps: bool = False) -> FunctorData:
        """Strict data for the shifted quasi-inverse: images of the
        projectives of the (tree-side) algebra inside complexes over the
        (linear-side) algebra, padded with contractible summands so that
        the tree relations vanish on the nose."""
        n = self.n
        images: dict[str, ProjComplex] = {}
        for i in range(n + 1):
            v = str(2 * i)
            images[v] = ProjComplex(
                tgt,
                {0: ProjSummands(tgt, [str(2 * i + 1)]), 1: ProjSummands(tgt, [str(2 * i)])},
                {0: [[tgt.arrow(f"b{2 * i}")]]},
            )
        images["1"] = ProjComplex(tgt, {0: ProjSummands(tgt, ["1"])}, {}, check=False)
        for j in range(1, n + 1):
            v = str(2 * j + 1)
            images[v] = ProjComplex(
                tgt,
                {
                    0: ProjSummands(tgt, [str(2 * j + 1), str(2 * j)]),
                    1: ProjSummands(tgt, [str(2 * j)]),
                },
                {0: [[{}, tgt.e(str(2 * j))]]},
            )
        arrow_maps: dict[str, ProjChainMap] = {}
        # a1 : 1 -> 0
        arrow_maps["a1"] = ProjChainMap(images["0"], images["1"], {0: [[tgt.e("1")]]})
        # a_{2j+1} : 2j+1 -> 2j for j >= 1
        for j in range(1, n + 1):
            v21, v20 = str(2 * j + 1), str(2 * j)
            arrow_maps[f"a{2 * j + 1}"] = ProjChainMap(
                images[v20],
                images[v21],
                {
                    0: [[tgt.e(v21)], [tgt.arrow(f"b{2 * j}")]],
                    1: [[tgt.e(v20)]],
                },
            )
        # b_{2i+1} : 2i+1 -> 2i+3 for i in 0..n-1
        for i in range(n):
            srcv = str(2 * i + 3)
            tgtv = str(2 * i + 1)
            bb = {(tgtv, (f"b{2 * i + 1}", f"b{2 * i + 2}")): 1}
            bshort = tgt.arrow(f"b{2 * i + 1}")
            if i == 0:
                comps = {0: [[bb, tgt.smul(-1, bshort)]]}
            else:
                comps = {
                    0: [[bb, tgt.smul(-1, bshort)], [{}, {}]],
                    1: [[{}]],
                }
            arrow_maps[f"b{2 * i + 1}"] = ProjChainMap(images[srcv], images[tgtv], comps)
        if with_eps:
            for v in src.quiver.vertices:
                comps = {}
                for t in images[v].terms:
                    verts = images[v].terms[t].vertices
                    comps[t] = [
                        [
                            tgt.arrow(f"eps_{verts[c]}") if r == c else {}
                            for c in range(len(verts))
                        ]
                        for r in range(len(verts))
                    ]
                arrow_maps[f"eps_{v}"] = ProjChainMap(images[v], images[v], comps)
        return FunctorData(src, tgt, images, arrow_maps)

    def _tilting_candidate(self) -> TiltingCandidate:
        n, alg = self.n, self.A
        summands = []
        for i in range(n + 1):
            v = str(2 * i + 1)
            summands.append(ProjComplex(alg, {0: ProjSummands(alg, [v])}, {}, check=False))
        for i in range(n + 1):
            summands.append(
                ProjComplex(
                    alg,
                    {-1: ProjSummands(alg, [str(2 * i)]), 0: ProjSummands(alg, [str(2 * i + 1)])},
                    {-1: [[alg.arrow(f"a{2 * i + 1}")]]},
                )
            )
        return TiltingCandidate(alg, summands)

    # -- manifest -----------------------------------------------------------

    def _manifest(self) -> dict:
        n = self.n
        pairs = sorted(self.M)
        man = {
            "n": n,
            "pair_count": len(pairs),
            "pairs": pairs,
            "module_dims": {f"{i},{l}": self.M[(i, l)].total_dim() for (i, l) in pairs},
            "gp_expected": {f"{i},{l}": True for (i, l) in pairs},
            "odd_full": {},
            "even_full": {},
        }
        for i in range(n + 1):
            man["odd_full"][f"{2 * i + 1},{2 * n + 1 - 2 * i}"] = f"S_P_{2 * i + 1}"
            man["even_full"][f"{2 * i},{2 * n + 2 - 2 * i}"] = f"pullback_{2 * i}"
        return man

    def indecomposables_B(self) -> list[Representation]:
        out = []
        for i in range(2 * self.n + 2):
            for l in range(1, 2 * self.n + 2 - i + 1):
                out.append(interval_module(self.B, i, l))
        return out

    def indecomposables_A(self) -> list[Representation]:
        from .strings import enumerate_string_modules

        return enumerate_string_modules(self.A)


_corpus_cache: dict[tuple[int, int], Corpus] = {}


def corpus(n: int = 1, p: int = DEFAULT_PRIME) -> Corpus:
    key = (n, p)
    if key not in _corpus_cache:
        _corpus_cache[key] = Corpus(n, p)
    return _corpus_cache[key]
