"""Module-level homological operations: minimal resolutions, Ext groups,
syzygies, transpose, duality, decomposition and isomorphism testing.

Ext is computed from a minimal projective resolution through the Yoneda
identification Hom(P_v, N) = N(v), which keeps every boundary map a
small dense matrix assembled from the resolution's element-matrix
differentials.  Decomposition is a Las Vegas algorithm (seeded): split
along generalized eigenspaces of random endomorphisms until every piece
has certified local endomorphism ring.
"""

from __future__ import annotations

import numpy as np

from .algebra import BoundQuiverAlgebra, Element, path_arrows
from .exactlin import Matrix, nullspace, rank, solve
from .modules import (
    ElementMatrix,
    ProjSummands,
    RepHom,
    Representation,
    cokernel,
    direct_sum,
    element_matrix_to_hom,
    hom_space,
    hom_to_element_matrix,
    identity_hom,
    image,
    is_projective,
    kernel,
    projective,
    projective_cover,
    zero_rep,
)


class MinimalResolution:
    """Minimal projective resolution ... -> P_1 -> P_0 -> m -> 0.

    terms[k] is a ProjSummands; dmats[k] (k >= 1) is the element matrix
    of d_k : P_k -> P_{k-1}; epi : P_0 -> m.  Extended lazily.
    """

    def __init__(self, m: Representation):
        self.module = m
        self.algebra = m.algebra
        p0, epi = projective_cover(m)
        self.terms: list[ProjSummands] = [p0]
        self.dmats: list[ElementMatrix | None] = [None]
        self.homs: list[RepHom] = [epi]
        self._kernels: list = [None]  # (rep, incl) of ker(d_k) for the last level

    def extend_to(self, depth: int):
        # homs[k] is the minimal epi P_k ->> K_k (K_0 = m); its kernel is
        # K_{k+1}, and d_{k+1} = (K_{k+1} -> P_k) o (P_{k+1} ->> K_{k+1})
        while len(self.terms) <= depth:
            k = len(self.terms) - 1
            ker, incl = kernel(self.homs[k])
            pk, epi = projective_cover(ker)
            d = incl.compose(epi)
            self.terms.append(pk)
            self.dmats.append(hom_to_element_matrix(self.algebra, d, pk, self.terms[k]))
            self.homs.append(epi)
            self._kernels.append((ker, incl))
        return self

    def diff_hom(self, k: int) -> RepHom:
        """d_k : P_k -> P_{k-1} as a RepHom."""
        self.extend_to(k)
        return element_matrix_to_hom(self.algebra, self.dmats[k], self.terms[k], self.terms[k - 1])


def minimal_resolution(m: Representation, depth: int) -> MinimalResolution:
    key = "minres"
    res = m._cache.get(key)
    if res is None:
        res = MinimalResolution(m)
        m._cache[key] = res
    res.extend_to(depth)
    return res


def _yoneda_space_dim(ps: ProjSummands, n: Representation) -> int:
    return sum(n.dims[v] for v in ps.vertices)


def _yoneda_boundary(alg, emat: ElementMatrix, src: ProjSummands, tgt: ProjSummands, n: Representation) -> Matrix:
    """Matrix of Hom(d, n): Hom(tgt, n) -> Hom(src, n) in Yoneda coordinates.

    d : src -> tgt has element matrix emat (rows = tgt summands); the
    entry u in Hom(P_{v_j}, P_{w_l}) pulls back along the action of u.
    """
    p = alg.p
    rows = sum(n.dims[v] for v in src.vertices)
    cols = sum(n.dims[w] for w in tgt.vertices)
    out = np.zeros((rows, cols), dtype=np.int64)
    roff = [0]
    for v in src.vertices:
        roff.append(roff[-1] + n.dims[v])
    coff = [0]
    for w in tgt.vertices:
        coff.append(coff[-1] + n.dims[w])
    for l in range(len(tgt.vertices)):
        for j in range(len(src.vertices)):
            u = emat[l][j]
            if not u:
                continue
            act = n.evaluate(u)  # n(w_l) -> n(v_j)
            out[roff[j] : roff[j + 1], coff[l] : coff[l + 1]] = act.data
    return Matrix(p, out)


def ext(m: Representation, n: Representation, i: int, with_basis: bool = False):
    """dim Ext^i(m, n), via Hom(minimal resolution, n).

    With with_basis=True also returns a basis of cocycle coordinates in
    the Yoneda space Hom(P_i, n).
    """
    if i < 0:
        raise ValueError("ext degree must be >= 0")
    if m.is_zero() or n.is_zero():
        return (0, []) if with_basis else 0
    alg = m.algebra
    res = minimal_resolution(m, i + 1)
    d_next = _yoneda_boundary(alg, res.dmats[i + 1], res.terms[i + 1], res.terms[i], n)
    cocycles = nullspace(d_next)
    if i == 0:
        dim = cocycles.cols
        boundaries_rank = 0
    else:
        d_prev = _yoneda_boundary(alg, res.dmats[i], res.terms[i], res.terms[i - 1], n)
        boundaries_rank = rank(d_prev)
        dim = cocycles.cols - boundaries_rank
    if not with_basis:
        return dim
    # quotient basis: columns of cocycles independent modulo boundaries
    if i == 0:
        return dim, [cocycles.column(k) for k in range(cocycles.cols)]
    d_prev = _yoneda_boundary(alg, res.dmats[i], res.terms[i], res.terms[i - 1], n)
    chosen = []
    probe = d_prev
    for k in range(cocycles.cols):
        cand = Matrix.hstack([probe, cocycles.column(k)])
        if rank(cand) > rank(probe):
            chosen.append(cocycles.column(k))
            probe = cand
    return dim, chosen


def dim_hom(m: Representation, n: Representation) -> int:
    return len(hom_space(m, n))


# -- syzygies -----------------------------------------------------------


def strip_projectives(m: Representation, seed: int = 0):
    """(m with projective direct summands removed, list of removed pieces)."""
    if m.is_zero():
        return m, []
    pieces = decompose(m, seed=seed)
    keep, dropped = [], []
    for rep, mult in pieces:
        (dropped if is_projective(rep) else keep).extend([rep] * mult)
    if not keep:
        return zero_rep(m.algebra), dropped
    if len(keep) == 1:
        return keep[0], dropped
    total, _, _ = direct_sum(keep)
    return total, dropped


def syzygy(m: Representation, k: int, seed: int = 0) -> Representation:
    """k-th syzygy via minimal covers, with projective summands stripped."""
    if k < 0:
        raise ValueError("syzygy index must be >= 0")
    cur, _ = strip_projectives(m, seed=seed)
    for _ in range(k):
        if cur.is_zero():
            return cur
        _, epi = projective_cover(cur)
        ker, _ = kernel(epi)
        cur, _ = strip_projectives(ker, seed=seed)
    return cur


def projdim(m: Representation, bound: int, seed: int = 0):
    """Least k <= bound with syzygy(m, k) = 0, or None if it exceeds bound."""
    cur, _ = strip_projectives(m, seed=seed)
    for k in range(bound + 1):
        if cur.is_zero():
            return k
        _, epi = projective_cover(cur)
        ker, _ = kernel(epi)
        cur, _ = strip_projectives(ker, seed=seed)
    return None


# -- duality and transpose ------------------------------------------------


def dual(m: Representation) -> Representation:
    """The linear dual, a representation of the opposite algebra."""
    op = m.algebra.opposite()
    mats = {n: m.mats[n].transpose() for n, _, _ in m.algebra.quiver.arrows}
    return Representation(op, dict(m.dims), mats)


def op_element(alg: BoundQuiverAlgebra, e: Element) -> Element:
    """Image of an element under the arrow-reversing isomorphism A -> A^op."""
    out: Element = {}
    for pth, c in e.items():
        out[(alg.path_target(pth), tuple(reversed(path_arrows(pth))))] = c
    return out


def transpose(m: Representation, seed: int = 0) -> Representation:
    """Auslander-Bridger transpose over the opposite algebra.

    Given the minimal presentation P_1 -> P_0 -> m -> 0, returns
    coker(Hom(P_0, A) -> Hom(P_1, A)); Tr(projective) = 0.
    """
    alg = m.algebra
    op = alg.opposite()
    if m.is_zero():
        return zero_rep(op)
    res = minimal_resolution(m, 1)
    p0, p1 = res.terms[0], res.terms[1]
    d = res.dmats[1]  # rows = p0 summands, cols = p1 summands
    p0_op = ProjSummands(op, p0.vertices)
    p1_op = ProjSummands(op, p1.vertices)
    # dual map P_0^op -> P_1^op: entry (j, l) = op(d[l][j])
    emat = [[op_element(alg, d[l][j]) for l in range(len(p0.vertices))] for j in range(len(p1.vertices))]
    dual_hom = element_matrix_to_hom(op, emat, p0_op, p1_op)
    coker, _ = cokernel(dual_hom)
    return coker


# -- decomposition ---------------------------------------------------------


def _poly_mod(p, a, m):
    """a mod m for dense coefficient lists (lowest degree first) over F_p."""
    a = [c % p for c in a]
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        c = (a[-1] * inv) % p
        shift = len(a) - 1 - dm
        for i, cm in enumerate(m):
            a[shift + i] = (a[shift + i] - c * cm) % p
        while a and a[-1] == 0:
            a.pop()
    return a if a else [0]


def _poly_gcd(p, a, b):
    a = [c % p for c in a]
    b = [c % p for c in b]
    while any(b):
        a, b = b, _poly_mod(p, a, b)
    if not any(a):
        return [0]
    inv = pow(a[-1], p - 2, p)
    return [(c * inv) % p for c in a]


def _poly_mulmod(p, a, b, m):
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            out[i + j] = (out[i + j] + ca * cb) % p
    return _poly_mod(p, out, m)


def _local_min_poly(p, F: np.ndarray, v: np.ndarray) -> list[int]:
    """Monic annihilator of v under F of least degree (lowest-first coeffs)."""
    cols = [v % p]
    while True:
        w = (F @ cols[-1]) % p
        K = Matrix(p, np.stack(cols, axis=1))
        x = solve(K, Matrix(p, w.reshape(-1, 1)))
        if x is not None:
            return [(-int(c)) % p for c in x.data[:, 0]] + [1]
        cols.append(w)


def _min_poly(p, F: np.ndarray, rng) -> list[int]:
    """Minimal polynomial of F, probabilistically (lcm of a few local
    annihilators).  An underestimate only costs a retry downstream: every
    split candidate is verified dimension-exactly before use."""
    n = F.shape[0]
    if n == 0:
        return [0, 1]
    mp = [1]
    for _ in range(3):
        v = rng.integers(0, p, size=n)
        cand = _local_min_poly(p, F, v)
        g = _poly_gcd(p, mp, cand)
        prod = [0] * (len(mp) + len(cand) - 1)
        for i, ca in enumerate(mp):
            for j, cb in enumerate(cand):
                prod[i + j] = (prod[i + j] + ca * cb) % p
        mp = _poly_exact_div(p, prod, g)
        if len(mp) - 1 == n:
            break
    return mp


def _poly_exact_div(p, a, b):
    a = [c % p for c in a]
    out = [0] * (len(a) - len(b) + 1)
    inv = pow(b[-1], p - 2, p)
    for k in range(len(out) - 1, -1, -1):
        c = (a[len(b) - 1 + k] * inv) % p
        out[k] = c
        for i, cb in enumerate(b):
            a[k + i] = (a[k + i] - c * cb) % p
    return out


def _splitting_factor(p, mp, rng):
    """A nontrivial monic factor of the squarefree part of mp, or None
    when mp looks primary (a power of one irreducible): no Fitting split
    comes from such an endomorphism, so the caller re-rolls."""
    deg = len(mp) - 1
    if deg < 2:
        return None
    deriv = [(i * mp[i]) % p for i in range(1, len(mp))]
    sf = mp
    if any(deriv):
        g = _poly_gcd(p, mp, deriv)
        if len(g) - 1 > 0:
            sf = _poly_exact_div(p, mp, g)
    dw = len(sf) - 1
    if dw < 2:
        return None
    # Cantor-Zassenhaus probes: gcd(sf, h^((p-1)/2) - 1) splits sf whenever
    # sf has at least two distinct irreducible factors
    for _ in range(12):
        h = [int(rng.integers(0, p)) for _ in range(dw)]
        if not any(h):
            continue
        acc, base, e = [1], h, (p - 1) // 2
        while e:
            if e & 1:
                acc = _poly_mulmod(p, acc, base, sf)
            base = _poly_mulmod(p, base, base, sf)
            e >>= 1
        acc = list(acc)
        acc[0] = (acc[0] - 1) % p
        g = _poly_gcd(p, sf, acc)
        if 0 < len(g) - 1 < dw:
            return g
    return None


def _total_matrix(f: RepHom) -> np.ndarray:
    alg = f.source.algebra
    blocks = [f.mats[v].data for v in alg.quiver.vertices if f.mats[v].rows]
    n = f.source.total_dim()
    out = np.zeros((n, n), dtype=np.int64)
    off = 0
    for b in blocks:
        out[off : off + b.shape[0], off : off + b.shape[0]] = b
        off += b.shape[0]
    return out


def _apply_poly(f: RepHom, poly) -> RepHom:
    p = f.source.p
    out = None
    power = identity_hom(f.source)
    for c in poly:
        if c % p:
            term = power.scale(c)
            out = term if out is None else out + term
        power = f.compose(power)
    if out is None:
        out = identity_hom(f.source).scale(0)
    return out


def _fitting_split(m: Representation, g: RepHom):
    """m = ker(g^N) (+) im(g^N) when both are nonzero; returns the pair of
    (rep, incl) or None if the split is trivial."""
    n = m.total_dim()
    power = g
    for _ in range(max(1, n.bit_length())):
        power = power.compose(power)
    k, kincl = kernel(power)
    if k.total_dim() == 0 or k.total_dim() == n:
        return None
    i, iincl = image(power)
    if k.total_dim() + i.total_dim() != n:
        return None
    return (k, kincl), (i, iincl)


class DecompositionError(RuntimeError):
    """Raised when indecomposability cannot be certified within budget."""

    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


def _end_structure(basis: list[RepHom]):
    """Structure constants of End(m): basis[i] o basis[j] = sum c^k_ij basis[k]."""
    p = basis[0].source.p
    flat = Matrix(p, np.stack([b.flat() for b in basis], axis=1))
    n = len(basis)
    sc = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            comp = basis[i].compose(basis[j])
            x = solve(flat, Matrix(p, comp.flat().reshape(-1, 1)))
            assert x is not None
            sc[i, j] = x.data[:, 0]
    return sc


def _end_radical(basis: list[RepHom], sc) -> Matrix:
    """Radical of End(m) via the trace form of the regular representation.

    Valid because p exceeds dim End (guarded); returns a matrix whose
    columns are radical basis vectors in End coordinates.
    """
    p = basis[0].source.p
    n = len(basis)
    if n >= p:
        raise DecompositionError(
            f"dim End = {n} >= p = {p}; rerun with a larger prime to certify"
        )
    # L_i = matrix of left multiplication by basis[i]
    L = [Matrix(p, sc[i].T.copy()) for i in range(n)]
    T = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            T[i, j] = int(np.trace((L[i] @ L[j]).data)) % p
    return nullspace(Matrix(p, T))


def _is_local_end(m: Representation) -> bool:
    """Certify that End(m) is local (m indecomposable)."""
    basis = hom_space(m, m)
    if len(basis) == 1:
        return True
    p = m.p
    sc = _end_structure(basis)
    radbasis = _end_radical(basis, sc)
    r = radbasis.cols
    n = len(basis)
    if n - r == 1:
        return True
    # quotient E/rad: commutative semisimple iff product of fields; then
    # count factors Berlekamp-style via fixed points of Frobenius
    comp = []
    probe = radbasis
    for k in range(n):
        ek = np.zeros((n, 1), dtype=np.int64)
        ek[k, 0] = 1
        cand = Matrix.hstack([probe, Matrix(p, ek)])
        if rank(cand) > rank(probe):
            comp.append(k)
            probe = cand
    # multiplication in the quotient, in complement coordinates
    full = Matrix.hstack([radbasis, Matrix(p, np.eye(n, dtype=np.int64)[:, comp])])
    q = len(comp)

    def to_quot(vec):
        x = solve(full, Matrix(p, vec.reshape(-1, 1)))
        return x.data[radbasis.cols :, 0]

    def qmul(a, b):
        out = np.zeros(n, dtype=np.int64)
        for i in range(q):
            if not a[i]:
                continue
            for j in range(q):
                if not b[j]:
                    continue
                out = (out + a[i] * b[j] * sc[comp[i], comp[j]]) % p
        return to_quot(out)

    # commutativity check
    for i in range(q):
        ei = np.zeros(q, dtype=np.int64)
        ei[i] = 1
        for j in range(i + 1, q):
            ej = np.zeros(q, dtype=np.int64)
            ej[j] = 1
            if not np.array_equal(qmul(ei, ej), qmul(ej, ei)):
                return False  # matrix factor present: decomposable
    # Frobenius fixed-point count: number of field factors of E/rad equals
    # dim ker(x -> x^p - x); the quotient is local iff that count is 1
    one = np.zeros(n, dtype=np.int64)
    idcoords = solve(
        Matrix(p, np.stack([b.flat() for b in basis], axis=1)),
        Matrix(p, identity_hom(m).flat().reshape(-1, 1)),
    )
    one = to_quot(idcoords.data[:, 0])
    frob_cols = []
    for i in range(q):
        ei = np.zeros(q, dtype=np.int64)
        ei[i] = 1
        res, basepow, e = one, ei, p
        while e:
            if e & 1:
                res = qmul(res, basepow)
            basepow = qmul(basepow, basepow)
            e >>= 1
        frob_cols.append((res - ei) % p)
    fixed = nullspace(Matrix(p, np.stack(frob_cols, axis=1)))
    return fixed.cols == 1


def decompose(m: Representation, seed: int = 0, budget: int = 60):
    """Indecomposable direct summands with multiplicity.

    Returns a list of (representation, multiplicity); the parts are
    certified indecomposable (local End) and their dimensions add up.
    """
    key = ("decompose", seed)
    if key in m._cache:
        return m._cache[key]
    rng = np.random.default_rng(seed)
    pieces: list[Representation] = []
    stack = [m]
    while stack:
        cur = stack.pop()
        if cur.total_dim() == 0:
            continue
        basis = hom_space(cur, cur)
        if len(basis) == 1 or _is_local_end(cur):
            pieces.append(cur)
            continue
        split = None
        for _ in range(budget):
            coeffs = rng.integers(0, cur.p, size=len(basis))
            f = None
            for c, b in zip(coeffs, basis):
                t = b.scale(int(c))
                f = t if f is None else f + t
            F = _total_matrix(f)
            mp = _min_poly(cur.p, F, rng)
            fac = _splitting_factor(cur.p, mp, rng)
            if fac is None:
                continue
            g = _apply_poly(f, fac)
            split = _fitting_split(cur, g)
            if split is not None:
                break
        if split is None:
            raise DecompositionError(
                "could not certify a split within budget",
                partial=pieces + [cur] + stack,
            )
        (k, _), (i, _) = split
        stack.append(k)
        stack.append(i)
    # group by isomorphism
    grouped: list[tuple[Representation, int]] = []
    for piece in sorted(pieces, key=lambda r: r.total_dim()):
        placed = False
        for idx, (rep, mult) in enumerate(grouped):
            if rep.total_dim() == piece.total_dim() and is_isomorphic(rep, piece, seed=seed):
                grouped[idx] = (rep, mult + 1)
                placed = True
                break
        if not placed:
            grouped.append((piece, 1))
    m._cache[key] = grouped
    return grouped


def is_isomorphic(m: Representation, n: Representation, seed: int = 0, budget: int = 60) -> bool:
    """Search for an invertible morphism by random combinations of a Hom
    basis, with a deterministic sweep as fallback."""
    if m.algebra is not n.algebra:
        raise ValueError("different algebras")
    if m.dims != n.dims:
        return False
    if m.total_dim() == 0:
        return True
    basis = hom_space(m, n)
    if not basis:
        return False
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        coeffs = rng.integers(0, m.p, size=len(basis))
        f = None
        for c, b in zip(coeffs, basis):
            t = b.scale(int(c))
            f = t if f is None else f + t
        if f is not None and f.is_iso():
            return True
    for b in basis:
        if b.is_iso():
            return True
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if (basis[i] + basis[j]).is_iso():
                return True
    return False
