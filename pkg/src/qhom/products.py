"""Shuffle products, the tensor Hopf algebra, and Eulerian idempotents.

The degree-n piece of the tensor Hopf algebra on an algebra A of dimension d
is H_n = A^(x)n with deconcatenation coproduct and the signed shuffle product

    (a_1, ..., a_p) . (b_1, ..., b_q)
        = sum over (p, q)-shuffles sigma of sgn(sigma) sigma . (a_1, ..., b_q),

where sigma moves the letter in position i to slot sigma(i).  Convolving the
augmentation complement f = id - unit o counit through the logarithm series
gives the first Eulerian idempotent degreewise,

    e^(1) = log(unit o counit + f) = sum_{m >= 1} (-1)^(m+1)/m f^(conv m),

and e^(i) = (e^(1))^(conv i) / i!.  The series is finite in each degree since
f^(conv m) vanishes on H_n for m > n.  On Hochschild chains the operators
act as 1_A (x) e^(i)_n, splitting C_n(A) for commutative A.

The Hochschild shuffle product uses the slot-0-fixing action: the first
letters multiply and the tails shuffle with sign.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .algebra import Algebra
from .cyclic import (
    ChainComplex,
    ChainOps,
    NormalizedMixed,
    TotComplex,
    _emplace,
    check_dim,
)
from .errors import RelationNotPreserved, VerificationFailure
from .linalg import QMat, QuotientSpace, induced_on_quotient

F0, F1 = Fraction(0), Fraction(1)


# --------------------------------------------------------------- permutations


def perm_sign(p: tuple[int, ...]) -> int:
    seen = [False] * len(p)
    sign = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def shuffles(p: int, q: int):
    """(sigma, sign) for all (p, q)-shuffles; sigma[i] is the slot of letter i."""
    slots = range(p + q)
    for first in combinations(slots, p):
        sigma = [0] * (p + q)
        rest = [s for s in slots if s not in first]
        for i, s in enumerate(first):
            sigma[i] = s
        for i, s in enumerate(rest):
            sigma[p + i] = s
        yield tuple(sigma), perm_sign(tuple(sigma))


def tail_perm_matrix(d: int, n: int, sigma: tuple[int, ...]) -> QMat:
    """Action on C_n = A^(x)(n+1) fixing slot 0; letter in tail position i
    moves to tail slot sigma[i]."""
    if len(sigma) != n:
        raise ValueError("permutation length must match the tail length")
    size = d ** (n + 1)
    pows = [d ** (n - s) for s in range(n + 1)]
    cols = [dict() for _ in range(size)]
    for c in range(size):
        rem = c
        w = []
        for s in range(n + 1):
            w.append(rem // pows[s])
            rem %= pows[s]
        r = w[0] * pows[0]
        for i in range(n):
            r += w[1 + i] * pows[1 + sigma[i]]
        cols[c][r] = F1
    return QMat(size, size, cols)


def slots_perm_matrix(d: int, n: int, sigma: tuple[int, ...]) -> QMat:
    """Action on H_n = A^(x)n; the letter in position i moves to slot sigma[i]."""
    if len(sigma) != n:
        raise ValueError("permutation length must match the degree")
    size = d**n
    pows = [d ** (n - 1 - s) for s in range(n)]
    cols = [dict() for _ in range(size)]
    for c in range(size):
        rem = c
        w = []
        for s in range(n):
            w.append(rem // pows[s])
            rem %= pows[s]
        r = 0
        for i in range(n):
            r += w[i] * pows[sigma[i]]
        cols[c][r] = F1
    return QMat(size, size, cols)


# ----------------------------------------------------------- shuffle product


def shuffle_product(A: Algebra, p: int, q: int) -> QMat:
    """sh: C_p(A) (x) C_q(A) -> C_{p+q}(A).

    Input index is (C_p word, C_q word) with the C_p word slowest.
    """
    d = A.dim
    n = p + q
    src = check_dim(d ** (p + 1) * d ** (q + 1), f"C_{p}({A.name}) (x) C_{q}({A.name})")
    tgt = check_dim(d ** (n + 1), f"C_{n}({A.name})")
    pows_u = [d ** (p - s) for s in range(p + 1)]
    pows_v = [d ** (q - s) for s in range(q + 1)]
    pows_t = [d ** (n - s) for s in range(n + 1)]
    shs = list(shuffles(p, q))
    cols = []
    for cu in range(d ** (p + 1)):
        rem = cu
        u = []
        for s in range(p + 1):
            u.append(rem // pows_u[s])
            rem %= pows_u[s]
        for cv in range(d ** (q + 1)):
            rem = cv
            v = []
            for s in range(q + 1):
                v.append(rem // pows_v[s])
                rem %= pows_v[s]
            head = A.mult[u[0]][v[0]]
            tail = u[1:] + v[1:]
            col: dict = {}
            for sigma, sgn in shs:
                base = 0
                for i in range(n):
                    base += tail[i] * pows_t[1 + sigma[i]]
                for k, cf in enumerate(head):
                    if cf:
                        r = base + k * pows_t[0]
                        w = col.get(r, 0) + sgn * cf
                        if w:
                            col[r] = w
                        else:
                            col.pop(r, None)
            cols.append(col)
    return QMat(tgt, src, cols)


# ------------------------------------------------------- tensor Hopf algebra


class HopfOps:
    """Signed shuffle multiplication and convolution on H_n = A^(x)n."""

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("need a positive dimension")
        self.d = d
        self._mult: dict = {}

    def hdim(self, n: int) -> int:
        return check_dim(self.d**n, f"H_{n}")

    def mult(self, p: int, q: int) -> QMat:
        """mu: H_p (x) H_q -> H_{p+q} (signed shuffles, all slots move)."""
        key = (p, q)
        if key not in self._mult:
            d = self.d
            n = p + q
            size = self.hdim(n)
            pows = [d ** (n - 1 - s) for s in range(n)]
            shs = list(shuffles(p, q))
            cols = []
            for c in range(size):
                rem = c
                w = []
                for s in range(n):
                    w.append(rem // pows[s])
                    rem %= pows[s]
                col: dict = {}
                for sigma, sgn in shs:
                    r = 0
                    for i in range(n):
                        r += w[i] * pows[sigma[i]]
                    v = col.get(r, 0) + sgn
                    if v:
                        col[r] = v
                    else:
                        col.pop(r, None)
                cols.append(col)
            self._mult[key] = QMat(size, size, cols)
        return self._mult[key]

    def convolve(self, f: dict[int, QMat], g: dict[int, QMat], top: int) -> dict[int, QMat]:
        """(f * g)_n = sum_i mu_{i,n-i} (f_i (x) g_{n-i}) under deconcatenation."""
        out = {}
        for n in range(top + 1):
            acc = QMat.zero(self.hdim(n), self.hdim(n))
            for i in range(n + 1):
                fi = f.get(i)
                gj = g.get(n - i)
                if fi is None or gj is None or fi.is_zero() or gj.is_zero():
                    continue
                acc = acc + self.mult(i, n - i) @ fi.kron(gj)
            out[n] = acc
        return out


def eulerian_idempotents(d: int, top: int) -> dict[int, dict[int, QMat]]:
    """e[i][n]: the i-th Eulerian idempotent on H_n = A^(x)n for n <= top.

    e[0] is the projection onto H_0; e[i][n] = 0 for i > n.
    """
    h = HopfOps(d)
    f = {n: (QMat.identity(h.hdim(n)) if n >= 1 else QMat.zero(1, 1)) for n in range(top + 1)}
    # log series: e1_n = sum_{m=1..n} (-1)^(m+1)/m (f^conv m)_n
    e1 = {n: QMat.zero(h.hdim(n), h.hdim(n)) for n in range(top + 1)}
    power = f
    for m in range(1, top + 1):
        c = Fraction((-1) ** (m + 1), m)
        for n in range(top + 1):
            if not power[n].is_zero():
                e1[n] = e1[n] + power[n].scale(c)
        if m < top:
            power = h.convolve(power, f, top)
    e: dict[int, dict[int, QMat]] = {}
    e[0] = {n: (QMat.identity(1) if n == 0 else QMat.zero(h.hdim(n), h.hdim(n))) for n in range(top + 1)}
    e[1] = e1
    acc = e1
    fact = 1
    for i in range(2, top + 1):
        acc = h.convolve(acc, e1, top)
        fact *= i
        e[i] = {n: acc[n].scale(Fraction(1, fact)) for n in range(top + 1)}
    return e


def chain_idempotent(A: Algebra, e_n: QMat, n: int) -> QMat:
    """1_A (x) e_n acting on C_n(A) = A (x) H_n."""
    check_dim(A.dim ** (n + 1), f"C_{n}({A.name})")
    return QMat.identity(A.dim).kron(e_n)


# ------------------------------------------------------ lambda decomposition


def image_subcomplex(
    name: str, bases: list[QMat], diff: dict[int, QMat], top: int
) -> ChainComplex:
    """Restrict a complex to the column spans of ``bases``.

    ``bases[n]`` columns must span a subspace preserved by ``diff``; the
    restricted boundary is solved for exactly and a failure to restrict
    raises ``VerificationFailure``.
    """
    dims = [b.ncols for b in bases]
    rdiff: dict[int, QMat] = {}
    for n in range(1, top + 1):
        img = diff[n] @ bases[n]
        try:
            rdiff[n] = bases[n - 1].solve(img)
        except ValueError as exc:
            raise VerificationFailure(
                f"{name}: the boundary does not preserve the subspace at degree {n}: {exc}"
            ) from exc
    return ChainComplex(name, dims, rdiff, top, bases=bases)


def restricted_map(op: QMat, src_basis: QMat, tgt_basis: QMat, *, context: str) -> QMat:
    """Coordinates of op between column spans; the image must stay in the target span."""
    try:
        return tgt_basis.solve(op @ src_basis)
    except ValueError as exc:
        raise VerificationFailure(
            f"{context}: the image does not stay in the target span"
        ) from exc


def lambda_summand(
    A: Algebra,
    ops: ChainOps,
    e: dict[int, dict[int, QMat]],
    i: int,
    top: int,
) -> ChainComplex:
    """The i-th Eulerian summand of the Hochschild complex of a commutative A."""
    bases = []
    for n in range(top + 1):
        if i > n or (i == 0 and n > 0):
            bases.append(QMat.zero(A.dim ** (n + 1), 0))
        else:
            op = chain_idempotent(A, e[i][n], n)
            bases.append(op.image_basis())
    diff = {n: ops.boundary(n) for n in range(1, top + 1)}
    return image_subcomplex(f"C^({i})({A.name})", bases, diff, top)


# ------------------------------------------------ products on normalized chains


def bilinear_on_quotients(
    op: QMat,
    src1: QuotientSpace,
    src2: QuotientSpace,
    tgt: QuotientSpace,
    context: str,
) -> QMat:
    """Descend a bilinear map to quotient coordinates on both inputs.

    ``op`` maps the Kronecker pairing of the ambient spaces to the target
    ambient; it must kill each factor's relations after projecting.
    """
    out = tgt.project() @ op
    r1 = src1.relation_columns()
    r2 = src2.relation_columns()
    if not (out @ r1.kron(QMat.identity(src2.ambient_dim))).is_zero():
        raise RelationNotPreserved(
            f"first-factor relations are not killed in {context}"
        )
    if not (out @ QMat.identity(src1.ambient_dim).kron(r2)).is_zero():
        raise RelationNotPreserved(
            f"second-factor relations are not killed in {context}"
        )
    return out @ src1.section().kron(src2.section())


def normalized_shuffle(nm: NormalizedMixed, p: int, q: int) -> QMat:
    """Shuffle product on normalized coordinates: C-bar_p (x) C-bar_q -> C-bar_{p+q}."""
    A = nm.ops.A
    return bilinear_on_quotients(
        shuffle_product(A, p, q),
        nm.spaces[p],
        nm.spaces[q],
        nm.spaces[p + q],
        f"the normalized shuffle of {A.name} at ({p}, {q})",
    )


def tot_slot_select(nm: NormalizedMixed, mt: TotComplex, n: int, j: int) -> QMat:
    """Project mixed Tot_n onto its slot j, which carries C-bar_{n-2j}."""
    d = nm.dims()[n - 2 * j]
    out = QMat.zero(d, mt.dims[n])
    _emplace(out, QMat.identity(d), 0, mt.block_offset(n, j))
    return out


def tot_B(nm: NormalizedMixed, mt: TotComplex, p: int) -> QMat:
    """The chain map mixed Tot_{p-1} -> C-bar_p: B-bar applied to slot 0."""
    return nm.Bbar[p - 1] @ tot_slot_select(nm, mt, p - 1, 0)


def star_product(nm: NormalizedMixed, mt: TotComplex, p: int, q: int) -> QMat:
    """Cyclic star product: mixed Tot_p (x) Tot_q -> mixed Tot_{p+q+1}.

    Only the top slot of the first factor enters, pushed up by B-bar and
    shuffled against each slot of the second factor in place.
    """
    nd = nm.dims()
    Dp, Dq = mt.dims[p], mt.dims[q]
    n = p + q + 1
    out = QMat.zero(mt.dims[n], Dp * Dq)
    lead = nm.Bbar[p] @ tot_slot_select(nm, mt, p, 0)
    for j in range(q // 2 + 1):
        qq = q - 2 * j
        term = normalized_shuffle(nm, p + 1, qq) @ lead.kron(tot_slot_select(nm, mt, q, j))
        _emplace(out, term, mt.block_offset(n, j), 0)
    return out


def tot_module_action(nm: NormalizedMixed, mt: TotComplex, p: int, q: int) -> QMat:
    """Action of mixed Tot_{p-1} on normalized chains: Tot_{p-1} (x) C-bar_q -> C-bar_{p+q}."""
    return normalized_shuffle(nm, p, q) @ tot_B(nm, mt, p).kron(
        QMat.identity(nm.dims()[q])
    )


# ----------------------------------------------- Eulerian summands, normalized


def normalized_idempotent(nm: NormalizedMixed, e_in: QMat, n: int) -> QMat:
    """1_A (x) e, descended to normalized coordinates."""
    return induced_on_quotient(
        chain_idempotent(nm.ops.A, e_in, n),
        nm.spaces[n],
        nm.spaces[n],
        context=f"Eulerian operator on normalized chains of {nm.ops.A.name} at degree {n}",
    )


def mixed_projector(
    nm: NormalizedMixed, e: dict[int, dict[int, QMat]], i: int, n: int
) -> QMat:
    """Slotwise Eulerian projector on mixed Tot_n, slot j using index i - j."""
    blocks = []
    for j in range(n // 2 + 1):
        q = n - 2 * j
        k = i - j
        dq = nm.dims()[q]
        if k < 0 or k > q or (k == 0 and q > 0):
            blocks.append(QMat.zero(dq, dq))
        else:
            blocks.append(normalized_idempotent(nm, e[k][q], q))
    return QMat.block_diag(blocks)


def lambda_normalized_summand(
    nm: NormalizedMixed, e: dict[int, dict[int, QMat]], i: int, top: int
) -> ChainComplex:
    """The i-th Eulerian summand of the normalized Hochschild complex."""
    bases = []
    for n in range(top + 1):
        if i > n or (i == 0 and n > 0):
            bases.append(QMat.zero(nm.dims()[n], 0))
        else:
            bases.append(normalized_idempotent(nm, e[i][n], n).image_basis())
    diff = {n: nm.bbar[n] for n in range(1, top + 1)}
    return image_subcomplex(
        f"normalized C^({i})({nm.ops.A.name})", bases, diff, top
    )


def lambda_mixed_summand(
    nm: NormalizedMixed,
    mt: TotComplex,
    e: dict[int, dict[int, QMat]],
    i: int,
    top: int,
) -> ChainComplex:
    """The i-th Eulerian summand of the mixed total complex."""
    bases = [mixed_projector(nm, e, i, n).image_basis() for n in range(top + 1)]
    diff = {n: mt.diff[n] for n in range(1, top + 1)}
    return image_subcomplex(f"Tot^({i})({nm.ops.A.name})", bases, diff, top)
