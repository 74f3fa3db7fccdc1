#!/usr/bin/env python3
"""Independent brute-force derivations of the regression values frozen in tests/.

Everything here uses dense rational matrices and naive elimination, and shares
no code with the qhom package: values frozen into the test suite must come
from a second, simpler code path.  Run time is a few minutes.

Usage: python tools/derive_oracles.py
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product

F = Fraction

# ---------------------------------------------------------------- matrices


def zeros(r, c):
    return [[F(0)] * c for _ in range(r)]


def eye(n):
    M = zeros(n, n)
    for i in range(n):
        M[i][i] = F(1)
    return M


def matmul(A, B):
    n = len(A)
    k = len(A[0]) if n else 0
    m = len(B[0]) if B else 0
    C = zeros(n, m)
    for i in range(n):
        Ai, Ci = A[i], C[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(m):
                    if Bt[j]:
                        Ci[j] += a * Bt[j]
    return C


def matadd(A, B):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def matsub(A, B):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def matscale(c, A):
    return [[c * x for x in row] for row in A]


def mat_eq(A, B):
    return A == B


def is_zero(A):
    return all(not x for row in A for x in row)


def kron(A, B):
    ra, ca = len(A), (len(A[0]) if A else 0)
    rb, cb = len(B), (len(B[0]) if B else 0)
    M = zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            a = A[i][j]
            if a:
                for p in range(rb):
                    for q in range(cb):
                        if B[p][q]:
                            M[i * rb + p][j * cb + q] = a * B[p][q]
    return M


def columns(M):
    r = len(M)
    c = len(M[0]) if r else 0
    return [[M[i][j] for i in range(r)] for j in range(c)]


def col_echelon(cols, dim):
    """Fully reduced column echelon basis [(pivot_row, unit_vector)] of span(cols)."""
    basis = []
    for v in cols:
        w = list(v)
        for p, u in basis:
            cpf = w[p]
            if cpf:
                for i in range(dim):
                    if u[i]:
                        w[i] -= cpf * u[i]
        piv = next((i for i in range(dim) if w[i]), None)
        if piv is None:
            continue
        cpf = w[piv]
        w = [x / cpf for x in w]
        for idx, (p, u) in enumerate(basis):
            if u[piv]:
                cc = u[piv]
                basis[idx] = (p, [u[i] - cc * w[i] for i in range(dim)])
        basis.append((piv, w))
        basis.sort(key=lambda t: t[0])
    return basis


def mat_rank(M):
    r = len(M)
    c = len(M[0]) if r else 0
    if r == 0 or c == 0:
        return 0
    return len(col_echelon(columns(M), r))


def rref(M):
    R = [row[:] for row in M]
    nr = len(R)
    nc = len(R[0]) if nr else 0
    pivots = []
    pr = 0
    for col in range(nc):
        sel = next((i for i in range(pr, nr) if R[i][col]), None)
        if sel is None:
            continue
        R[pr], R[sel] = R[sel], R[pr]
        cpf = R[pr][col]
        R[pr] = [x / cpf for x in R[pr]]
        for i in range(nr):
            if i != pr and R[i][col]:
                f = R[i][col]
                R[i] = [R[i][j] - f * R[pr][j] for j in range(nc)]
        pivots.append(col)
        pr += 1
        if pr == nr:
            break
    return R, pivots


def nullspace(M):
    nr = len(M)
    nc = len(M[0]) if nr else 0
    if nr == 0:
        return [[F(1) if i == j else F(0) for i in range(nc)] for j in range(nc)]
    R, pivots = rref(M)
    free = [j for j in range(nc) if j not in pivots]
    basis = []
    for fcol in free:
        v = [F(0)] * nc
        v[fcol] = F(1)
        for pi, pcol in enumerate(pivots):
            v[pcol] = -R[pi][fcol]
        basis.append(v)
    return basis


def solve_cols(B, W):
    """X with B @ X = W (both given as lists of rows); asserts consistency."""
    nr = len(B)
    nb = len(B[0]) if nr else 0
    nw = len(W[0]) if nr and W else 0
    aug = [B[i] + W[i] for i in range(nr)]
    R, pivots = rref(aug)
    assert all(p < nb for p in pivots), "inconsistent solve"
    X = zeros(nb, nw)
    for pi, pcol in enumerate(pivots):
        for j in range(nw):
            X[pcol][j] = R[pi][nb + j]
    return X


def quotient(dim, span_cols):
    """(P, S, qdim): P projects Q^dim onto Q^dim/span, S is a section, P@S = I."""
    ech = col_echelon(span_cols, dim)
    pivots = [p for p, _ in ech]
    free = [i for i in range(dim) if i not in pivots]
    qdim = len(free)

    def reduce_vec(v):
        w = list(v)
        for p, u in ech:
            cpf = w[p]
            if cpf:
                for i in range(dim):
                    if u[i]:
                        w[i] -= cpf * u[i]
        return w

    P = zeros(qdim, dim)
    for j in range(dim):
        e = [F(0)] * dim
        e[j] = F(1)
        red = reduce_vec(e)
        for qi, fr in enumerate(free):
            P[qi][j] = red[fr]
    S = zeros(dim, qdim)
    for qi, fr in enumerate(free):
        S[fr][qi] = F(1)
    return P, S, qdim


def homology_dim(dim_n, rank_bn, rank_bnp1):
    return dim_n - rank_bn - rank_bnp1


# ---------------------------------------------------------------- algebras


class Alg:
    def __init__(self, name, dim, mult, unit):
        self.name, self.dim, self.mult, self.unit = name, dim, mult, unit


def mk_Q():
    return Alg("Q", 1, [[[F(1)]]], [F(1)])


def mk_dualnum():
    z, o = F(0), F(1)
    mult = [[[o, z], [z, o]], [[z, o], [z, z]]]
    return Alg("dualnum", 2, mult, [o, z])


def mk_Qx3():
    d = 3
    mult = [[[F(1) if k == i + j else F(0) for k in range(d)] for j in range(d)] for i in range(d)]
    return Alg("Qx3", d, mult, [F(1), F(0), F(0)])


def mk_QZ2():
    z, o = F(0), F(1)
    mult = [[[o, z], [z, o]], [[z, o], [o, z]]]
    return Alg("QZ2", 2, mult, [o, z])


def mk_upper2():
    # basis E11, E22, E12
    z, o = F(0), F(1)
    mult = [
        [[o, z, z], [z, z, z], [z, z, o]],
        [[z, z, z], [z, o, z], [z, z, z]],
        [[z, z, z], [z, z, o], [z, z, z]],
    ]
    return Alg("upper2", 3, mult, [o, o, z])


def mk_M2Q():
    # basis E[a][b] flattened as 2*a+b
    def e(a, b):
        v = [F(0)] * 4
        v[2 * a + b] = F(1)
        return v

    mult = [[None] * 4 for _ in range(4)]
    for a, b in product(range(2), repeat=2):
        for c, dd in product(range(2), repeat=2):
            mult[2 * a + b][2 * c + dd] = e(a, dd) if b == c else [F(0)] * 4
    return Alg("M2Q", 4, mult, [F(1), F(0), F(0), F(1)])


def mk_m2var():
    # Q[x,y]/(x,y)^2, basis 1, x, y
    z, o = F(0), F(1)
    mult = [
        [[o, z, z], [z, o, z], [z, z, o]],
        [[z, o, z], [z, z, z], [z, z, z]],
        [[z, z, o], [z, z, z], [z, z, z]],
    ]
    return Alg("m2var", 3, mult, [o, z, z])


# ------------------------------------------------------------ chain spaces


def words(d, ln):
    return list(product(range(d), repeat=ln))


def widx(d, ln):
    return {w: i for i, w in enumerate(words(d, ln))}


def face_mat(A, n, i):
    """d_i: C_n -> C_{n-1} on C_n = A^{tensor n+1}."""
    d = A.dim
    src = words(d, n + 1)
    tgt = widx(d, n)
    M = zeros(d**n, d ** (n + 1))
    for cj, w in enumerate(src):
        if i < n:
            coeffs = A.mult[w[i]][w[i + 1]]
            head, tail = w[:i], w[i + 2:]
        else:
            coeffs = A.mult[w[n]][w[0]]
            head, tail = (), w[1:n]
        for k, cf in enumerate(coeffs):
            if cf:
                if i < n:
                    M[tgt[head + (k,) + tail]][cj] += cf
                else:
                    M[tgt[(k,) + tail]][cj] += cf
    return M


def b_mat(A, n):
    if n == 0:
        return zeros(0, A.dim)
    M = zeros(A.dim**n, A.dim ** (n + 1))
    for i in range(n + 1):
        Fi = face_mat(A, n, i)
        M = matadd(M, Fi) if i % 2 == 0 else matsub(M, Fi)
    return M


def bprime_mat(A, n):
    if n == 0:
        return zeros(0, A.dim)
    M = zeros(A.dim**n, A.dim ** (n + 1))
    for i in range(n):
        Fi = face_mat(A, n, i)
        M = matadd(M, Fi) if i % 2 == 0 else matsub(M, Fi)
    return M


def t_mat(A, n):
    """t_n(a_0,...,a_n) = (-1)^n (a_n, a_0, ..., a_{n-1})."""
    d = A.dim
    tgt = widx(d, n + 1)
    M = zeros(d ** (n + 1), d ** (n + 1))
    sign = F(-1) if n % 2 else F(1)
    for cj, w in enumerate(words(d, n + 1)):
        M[tgt[(w[n],) + w[:n]]][cj] = sign
    return M


def s_mat(A, n, j):
    """s_j: C_n -> C_{n+1}, insert the unit after slot j."""
    d = A.dim
    tgt = widx(d, n + 2)
    M = zeros(d ** (n + 2), d ** (n + 1))
    for cj, w in enumerate(words(d, n + 1)):
        for k, cf in enumerate(A.unit):
            if cf:
                M[tgt[w[: j + 1] + (k,) + w[j + 1:]]][cj] += cf
    return M


def h_mat(A, n):
    """h: C_n -> C_{n+1}, insert the unit at the front."""
    d = A.dim
    tgt = widx(d, n + 2)
    M = zeros(d ** (n + 2), d ** (n + 1))
    for cj, w in enumerate(words(d, n + 1)):
        for k, cf in enumerate(A.unit):
            if cf:
                M[tgt[(k,) + w]][cj] += cf
    return M


def N_mat(A, n):
    T = t_mat(A, n)
    M = eye(A.dim ** (n + 1))
    acc = eye(A.dim ** (n + 1))
    for _ in range(n):
        acc = matmul(T, acc)
        M = matadd(M, acc)
    return M


def B_mat(A, n):
    """Connes boundary C_n -> C_{n+1}: (1 - t) h N."""
    d = A.dim
    one = eye(d ** (n + 2))
    return matmul(matsub(one, t_mat(A, n + 1)), matmul(h_mat(A, n), N_mat(A, n)))


# ----------------------------------------------------------- cyclic totals


def tot_D(A, n, b_cache, bp_cache, t_cache, N_cache):
    """D: Tot_n -> Tot_{n-1} of the cyclic first-quadrant bicomplex."""
    d = A.dim
    src_dims = [d ** (n - p + 1) for p in range(n + 1)]
    tgt_dims = [d ** (n - p) for p in range(n)]
    src_off = [sum(src_dims[:p]) for p in range(n + 1)]
    tgt_off = [sum(tgt_dims[:p]) for p in range(n)]
    M = zeros(sum(tgt_dims), sum(src_dims))

    def put(block, ro, co):
        for i, row in enumerate(block):
            for j, x in enumerate(row):
                if x:
                    M[ro + i][co + j] = x

    for p in range(n + 1):
        q = n - p
        if q >= 1 and p <= n - 1:
            vert = b_cache[q] if p % 2 == 0 else matscale(F(-1), bp_cache[q])
            put(vert, tgt_off[p], src_off[p])
        if p >= 1:
            if p % 2 == 1:
                horiz = matsub(eye(d ** (q + 1)), t_cache[q])
            else:
                horiz = N_cache[q]
            put(horiz, tgt_off[p - 1], src_off[p])
    return M


# ------------------------------------------------------- eulerian elements


def perm_sign(p):
    inv = 0
    n = len(p)
    for i in range(n):
        for j in range(i + 1, n):
            if p[i] > p[j]:
                inv += 1
    return F(-1) if inv % 2 else F(1)


def perm_inverse(p):
    q = [0] * len(p)
    for i, v in enumerate(p):
        q[v] = i
    return tuple(q)


def perm_compose(s, t):
    return tuple(s[t[i]] for i in range(len(t)))


def compositions(n, m):
    for cuts in combinations(range(1, n), m - 1):
        pts = (0,) + cuts + (n,)
        yield tuple(pts[i + 1] - pts[i] for i in range(m))


def f_convpow(n, m):
    """f^{conv m} on degree n as an element of Q[S_n]: signed multi-shuffles."""
    out = {}
    allp = list(permutations(range(n)))
    for comp in compositions(n, m):
        pts = [0]
        for c in comp:
            pts.append(pts[-1] + c)
        blocks = [range(pts[i], pts[i + 1]) for i in range(m)]
        for sigma in allp:
            ok = all(
                all(sigma[a] < sigma[a + 1] for a in blk if a + 1 in blk)
                for blk in blocks
            )
            if ok:
                out[sigma] = out.get(sigma, F(0)) + perm_sign(sigma)
    return out


def ga_scale(c, d1):
    return {g: c * v for g, v in d1.items() if c * v}


def ga_add(d1, d2):
    out = dict(d1)
    for g, v in d2.items():
        w = out.get(g, F(0)) + v
        if w:
            out[g] = w
        else:
            out.pop(g, None)
    return out


def ga_mul(d1, d2):
    out = {}
    for g, a in d1.items():
        for h, bcf in d2.items():
            k = perm_compose(g, h)
            w = out.get(k, F(0)) + a * bcf
            if w:
                out[k] = w
            else:
                out.pop(k, None)
    return out


def poly_mul(a, b, trunc):
    out = [F(0)] * (trunc + 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y and i + j <= trunc:
                    out[i + j] += x * y
    return out


def eulerian_elements(n):
    """{i: element of Q[S_n]} for i = 1..n via the convolution-log series."""
    fpows = {m: f_convpow(n, m) for m in range(1, n + 1)}
    logc = [F(0)] + [F((-1) ** (m + 1), m) for m in range(1, n + 1)]
    es = {}
    powc = [F(1)] + [F(0)] * n  # (log(1+x))^0
    fact = 1
    for i in range(1, n + 1):
        powc = poly_mul(powc, logc, n)
        fact *= i
        es[i] = {}
        for m in range(1, n + 1):
            cf = powc[m] / fact
            if cf:
                es[i] = ga_add(es[i], ga_scale(cf, fpows[m]))
    return es


def op_on_chain(A, n, elt):
    """id_A tensor (group-algebra element acting on the last n slots) on C_n."""
    d = A.dim
    dim = d ** (n + 1)
    M = zeros(dim, dim)
    tgt = widx(d, n + 1)
    for cj, w in enumerate(words(d, n + 1)):
        for sigma, cf in elt.items():
            sinv = perm_inverse(sigma)
            nw = (w[0],) + tuple(w[1 + sinv[i]] for i in range(n))
            M[tgt[nw]][cj] += cf
    return M


# ----------------------------------------------------------- normalization


def norm_proj(A):
    """(P_A, S_A): A -> A/K·1 with representatives off the unit pivot."""
    k = next(i for i, c in enumerate(A.unit) if c)
    rows = [i for i in range(A.dim) if i != k]
    P = zeros(A.dim - 1, A.dim)
    for r, i in enumerate(rows):
        P[r][i] = F(1)
        P[r][k] = -A.unit[i] / A.unit[k]
    S = zeros(A.dim, A.dim - 1)
    for r, i in enumerate(rows):
        S[i][r] = F(1)
    return P, S


def chain_norm(A, n):
    """(P_n, S_n) for C_n -> A tensor (A/K)^{tensor n}."""
    PA, SA = norm_proj(A)
    P = eye(A.dim)
    S = eye(A.dim)
    for _ in range(n):
        P = kron(P, PA)
        S = kron(S, SA)
    return P, S


# ------------------------------------------------------------------- forms


def build_forms(A, pmax):
    """Kaehler forms of a commutative algebra; returns dims, de Rham dims, pi maps."""
    d = A.dim
    multM = zeros(d, d * d)
    for i in range(d):
        for j in range(d):
            for k, cf in enumerate(A.mult[i][j]):
                if cf:
                    multM[k][i * d + j] = cf
    I_basis = nullspace(multM)  # list of d^2-vectors
    kI = len(I_basis)
    BI = [[I_basis[j][i] for j in range(kI)] for i in range(d * d)]  # d^2 x kI

    def aa_mult(u, v):
        out = [F(0)] * (d * d)
        for ab in range(d * d):
            cu = u[ab]
            if not cu:
                continue
            a, b = divmod(ab, d)
            for cd in range(d * d):
                cv = v[cd]
                if not cv:
                    continue
                c, dd = divmod(cd, d)
                left = A.mult[a][c]
                right = A.mult[b][dd]
                for e in range(d):
                    if left[e]:
                        for f in range(d):
                            if right[f]:
                                out[e * d + f] += cu * cv * left[e] * right[f]
        return out

    I2 = [aa_mult(u, v) for u in I_basis for v in I_basis]
    I2_in_I = solve_cols(BI, [[col[i] for col in I2] for i in range(d * d)]) if I2 else zeros(kI, 0)
    PO, SO, dimO1 = quotient(kI, columns(I2_in_I))

    if dimO1 == 0:
        # no forms at all: d: A -> 0, every function is closed
        return [d] + [0] * pmax, [d] + [0] * (pmax - 1), {0: eye(d)}, {0: zeros(0, d)}

    # left multiplication by e_a (x) 1 on A (x) A, restricted to I
    acts_I = []
    for a in range(d):
        L = zeros(d * d, d * d)
        for i in range(d):
            for j in range(d):
                for e, cf in enumerate(A.mult[a][i]):
                    if cf:
                        L[e * d + j][i * d + j] += cf
        LB = matmul(L, BI)
        acts_I.append(solve_cols(BI, LB))
    acts_O1 = [matmul(PO, matmul(X, SO)) for X in acts_I]
    # well-definedness: the action preserves I^2
    for a in range(d):
        moved = matmul(PO, matmul(acts_I[a], I2_in_I))
        assert is_zero(moved), f"A-action does not preserve I^2 for {A.name}"
    # d: A -> Omega^1
    dmapA = zeros(dimO1, d)
    for a in range(d):
        vec = [F(0)] * (d * d)
        for k, cf in enumerate(A.unit):
            if cf:
                vec[a * d + k] += cf
                vec[k * d + a] -= cf
        coords = solve_cols(BI, [[vec[i]] for i in range(d * d)])
        col = matmul(PO, coords)
        for r in range(dimO1):
            dmapA[r][a] = col[r][0]

    # exterior powers as quotients of Omega^1 tensor powers
    spaces = {0: d, 1: dimO1}
    PT = {1: eye(dimO1)}
    acts = {0: None, 1: acts_O1}
    for p in range(2, pmax + 1):
        tdim = dimO1**p
        rels = []
        tw = list(product(range(dimO1), repeat=p))
        tidx = {w: i for i, w in enumerate(tw)}

        def basis_vec(w):
            v = [F(0)] * tdim
            v[tidx[w]] = F(1)
            return v

        for slot in range(p - 1):
            for w in tw:
                # alternation: symmetric adjacent parts die
                sw = w[:slot] + (w[slot + 1], w[slot]) + w[slot + 2:]
                v = basis_vec(w)
                v2 = basis_vec(sw)
                rels.append([x + y for x, y in zip(v, v2)])
                # balancedness over A between adjacent slots
                for a in range(d):
                    r1 = [F(0)] * tdim
                    for s2 in range(dimO1):
                        cf = acts_O1[a][s2][w[slot]]
                        if cf:
                            r1[tidx[w[:slot] + (s2,) + w[slot + 1:]]] += cf
                        cf2 = acts_O1[a][s2][w[slot + 1]]
                        if cf2:
                            r1[tidx[w[: slot + 1] + (s2,) + w[slot + 2:]]] -= cf2
                    rels.append(r1)
        Pp, Sp, dimp = quotient(tdim, rels)
        spaces[p] = dimp
        PT[p] = Pp
        actp = []
        for a in range(d):
            big = acts_O1[a]
            for _ in range(p - 1):
                big = kron(big, eye(dimO1))
            actp.append(matmul(Pp, matmul(big, Sp)))
        acts[p] = actp

    # pi_p: C_p -> Omega^p, word (w_0,...,w_p) to w_0 d(w_1)...d(w_p)
    pis = {0: eye(d)}
    dcols = columns(dmapA)
    for p in range(1, pmax + 1):
        dimp = spaces[p]
        M = zeros(dimp, d ** (p + 1))
        for cj, w in enumerate(words(d, p + 1)):
            t = None
            for s in range(1, p + 1):
                col = dcols[w[s]]
                t = col if t is None else [x * y for x in t for y in col]
            cls = matmul(PT[p], [[x] for x in t])
            out = matmul(acts[p][w[0]], cls)
            for r in range(dimp):
                M[r][cj] = out[r][0]
        pis[p] = M

    # de Rham differential via sections of pi (pi is surjective)
    def prepend_unit(p):
        U = zeros(d ** (p + 2), d ** (p + 1))
        tgt = widx(d, p + 2)
        for cj, w in enumerate(words(d, p + 1)):
            for k, cf in enumerate(A.unit):
                if cf:
                    U[tgt[(k,) + w]][cj] += cf
        return U

    assert mat_eq(matmul(pis[1], prepend_unit(0)), dmapA), f"d vs pi mismatch for {A.name}"
    dmats = {0: dmapA}
    for p in range(1, pmax):
        Mp, Mp1 = pis[p], pis[p + 1]
        chosen = []
        test = []
        for cj in range(d ** (p + 1)):
            if len(chosen) == spaces[p]:
                break
            cand = [Mp[r][cj] for r in range(spaces[p])]
            if len(col_echelon(test + [cand], spaces[p])) > len(chosen):
                test.append(cand)
                chosen.append(cj)
        assert len(chosen) == spaces[p], f"pi_{p} not surjective for {A.name}"
        coordM = [[Mp[r][cj] for cj in chosen] for r in range(spaces[p])]
        rhs = matmul(Mp1, prepend_unit(p))
        rhs_sel = [[rhs[r][cj] for cj in chosen] for r in range(spaces[p + 1])]
        # want dm with dm @ coordM = rhs_sel; coordM is square invertible
        ct = [[coordM[i][j] for i in range(spaces[p])] for j in range(spaces[p])]
        rt = [[rhs_sel[i][j] for i in range(spaces[p + 1])] for j in range(spaces[p])]
        dmT = solve_cols(ct, rt)
        dm = [[dmT[j][i] for j in range(spaces[p])] for i in range(spaces[p + 1])]
        assert mat_eq(matmul(dm, Mp), rhs), f"de Rham d not well-defined at p={p} for {A.name}"
        dmats[p] = dm

    # consistency: dmats[0] equals d via pi_0 = id
    # d^2 = 0
    for p in range(0, pmax - 1):
        assert is_zero(matmul(dmats[p + 1], dmats[p])), f"d^2 != 0 at p={p} for {A.name}"
    # pi is a chain map to the zero differential: pi_p b_{p+1} = 0
    for p in range(0, pmax):
        bp1 = b_mat(A, p + 1)
        assert is_zero(matmul(pis[p], bp1)), f"pi b != 0 at p={p} for {A.name}"

    omega_dims = [spaces[p] for p in range(pmax + 1)]
    hdr = []
    for p in range(pmax):
        rk_in = mat_rank(dmats[p - 1]) if p >= 1 else 0
        rk_out = mat_rank(dmats[p])
        hdr.append(spaces[p] - rk_in - rk_out)
    return omega_dims, hdr, pis, dmats


# -------------------------------------------------------------------- main


def main():
    frozen = {}

    # |S_{2,1}| = 3
    sh21 = [s for s in permutations(range(3)) if s[0] < s[1]]
    assert len(sh21) == 3
    frozen["shuffle_2_1_count"] = 3
    print("shuffle count ok", flush=True)

    # Eulerian elements in Q[S_n], n <= 4
    e_by_n = {}
    for n in range(1, 5):
        es = eulerian_elements(n)
        e_by_n[n] = es
        ident = {tuple(range(n)): F(1)}
        total = {}
        for i in range(1, n + 1):
            total = ga_add(total, es[i])
            for j in range(1, n + 1):
                prod_ = ga_mul(es[i], es[j])
                want = es[i] if i == j else {}
                assert prod_ == want, f"e({i})e({j}) failed at n={n}"
        assert total == ident, f"sum of idempotents != id at n={n}"
        antis = {p: perm_sign(p) / F(1) for p in permutations(range(n))}
        fact = 1
        for m in range(2, n + 1):
            fact *= m
        antis = {p: perm_sign(p) / fact for p in permutations(range(n))}
        assert es[n] == antis, f"top idempotent != antisymmetrizer at n={n}"
        print(f"eulerian group-algebra checks ok at n={n}", flush=True)

    algs = {a.name: a for a in (mk_Q(), mk_dualnum(), mk_Qx3(), mk_QZ2(), mk_upper2(), mk_m2var())}
    NMAX = 3  # homology degrees 0..3 need chains up to 4 and boundaries up to 4

    hh = {}
    hc = {}
    caches = {}
    for name, A in algs.items():
        d = A.dim
        b_c = {q: b_mat(A, q) for q in range(0, NMAX + 2)}
        bp_c = {q: bprime_mat(A, q) for q in range(0, NMAX + 2)}
        t_c = {q: t_mat(A, q) for q in range(0, NMAX + 2)}
        N_c = {q: N_mat(A, q) for q in range(0, NMAX + 2)}
        caches[name] = (b_c, bp_c, t_c, N_c)

        # structural identities
        for q in range(1, NMAX + 1):
            assert is_zero(matmul(b_c[q], b_c[q + 1])), f"b^2 != 0 {name} q={q}"
            assert is_zero(matmul(bp_c[q], bp_c[q + 1])), f"b'^2 != 0 {name} q={q}"
        for q in range(0, NMAX + 1):
            tq = t_c[q]
            acc = eye(d ** (q + 1))
            for _ in range(q + 1):
                acc = matmul(tq, acc)
            assert mat_eq(acc, eye(d ** (q + 1))), f"t^(q+1) != id {name} q={q}"
        for q in range(1, NMAX + 1):
            one = eye(d ** (q + 1))
            lhs = matmul(b_c[q], matsub(one, t_c[q]))
            rhs = matmul(matsub(eye(d**q), t_c[q - 1]), bp_c[q])
            assert mat_eq(lhs, rhs), f"b(1-t) != (1-t)b' {name} q={q}"
            lhs2 = matmul(bp_c[q], N_c[q])
            rhs2 = matmul(N_c[q - 1], b_c[q])
            assert mat_eq(lhs2, rhs2), f"b'N != Nb {name} q={q}"
        for q in range(0, NMAX):
            Bq = B_mat(A, q)
            Bq1 = B_mat(A, q + 1)
            assert is_zero(matmul(Bq1, Bq)), f"B^2 != 0 {name} q={q}"
            anti = matadd(matmul(b_c[q + 2], Bq1), matmul(Bq, b_c[q + 1]))
            assert is_zero(anti), f"bB+Bb != 0 {name} q={q}"
        for q in range(0, NMAX + 1):
            hq = h_mat(A, q)
            lhs = matadd(matmul(bp_c[q + 1], hq), matmul(h_mat(A, q - 1), bp_c[q]) if q >= 1 else zeros(d ** (q + 1), d ** (q + 1)))
            assert mat_eq(lhs, eye(d ** (q + 1))), f"b'h + hb' != id {name} q={q}"
        for q in range(0, NMAX + 1):
            sgn = F(-1) if (q + 1) % 2 else F(1)
            lhs = matscale(sgn, matmul(t_mat(A, q + 1), s_mat(A, q, q)))
            assert mat_eq(lhs, h_mat(A, q)), f"(-1)^(q+1) t s_q != insert-unit-front {name} q={q}"
        for n in (2, 3):
            faces_n = [face_mat(A, n, i) for i in range(n + 1)]
            faces_m = [face_mat(A, n - 1, i) for i in range(n)]
            for j in range(n + 1):
                for i in range(j):
                    assert mat_eq(matmul(faces_m[i], faces_n[j]), matmul(faces_m[j - 1], faces_n[i])), f"face identity fails {name} n={n} i={i} j={j}"
        print(f"[{name}] structural identities ok", flush=True)

        hh[name] = [
            homology_dim(d ** (q + 1), mat_rank(b_c[q]), mat_rank(b_c[q + 1]))
            for q in range(0, NMAX + 1)
        ]
        print(f"[{name}] hh = {hh[name]}", flush=True)

        D = {n: tot_D(A, n, b_c, bp_c, t_c, N_c) for n in range(1, NMAX + 2)}
        for n in range(2, NMAX + 2):
            assert is_zero(matmul(D[n - 1], D[n])), f"D^2 != 0 {name} n={n}"
        tot_dim = lambda n: sum(d ** (n - p + 1) for p in range(n + 1))
        hc[name] = [
            homology_dim(tot_dim(n), mat_rank(D[n]) if n >= 1 else 0, mat_rank(D[n + 1]))
            for n in range(0, NMAX + 1)
        ]
        print(f"[{name}] hc (bicomplex) = {hc[name]}", flush=True)

        # C-tilde route: quotient by im(1 - t)
        hc_tilde = []
        Pq, Sq, b_tilde = {}, {}, {}
        qdims = {}
        for q in range(0, NMAX + 2):
            one = eye(d ** (q + 1))
            PP, SS, qd = quotient(d ** (q + 1), columns(matsub(one, t_c[q])))
            Pq[q], Sq[q], qdims[q] = PP, SS, qd
        for q in range(1, NMAX + 2):
            one = eye(d ** (q + 1))
            assert is_zero(matmul(Pq[q - 1], matmul(b_c[q], matsub(one, t_c[q])))), f"b does not descend to C-tilde {name} q={q}"
            b_tilde[q] = matmul(Pq[q - 1], matmul(b_c[q], Sq[q]))
        for n in range(0, NMAX + 1):
            hc_tilde.append(
                homology_dim(qdims[n], mat_rank(b_tilde[n]) if n >= 1 else 0, mat_rank(b_tilde[n + 1]))
            )
        assert hc_tilde == hc[name], f"C-tilde route disagrees for {name}: {hc_tilde} vs {hc[name]}"
        print(f"[{name}] hc (quotient-by-cyclic route) agrees", flush=True)

        # normalized mixed route
        Pn, Sn = {}, {}
        for q in range(0, NMAX + 2):
            Pn[q], Sn[q] = chain_norm(A, q)
        bbar, Bbar = {}, {}

        def degen_span(q):
            # columns spanning the degenerate subcomplex of C_q
            cols = []
            for j in range(q):
                sj = s_mat(A, q - 1, j)
                cols.extend(columns(sj))
            return cols

        for q in range(1, NMAX + 2):
            rel = degen_span(q)
            for v in rel:
                img = matmul(b_c[q], [[x] for x in v])
                red = matmul(Pn[q - 1], img)
                assert is_zero(red), f"b does not descend to normalized {name} q={q}"
            bbar[q] = matmul(Pn[q - 1], matmul(b_c[q], Sn[q]))
        for q in range(0, NMAX + 1):
            Bq = B_mat(A, q)
            for v in degen_span(q):
                img = matmul(Bq, [[x] for x in v])
                red = matmul(Pn[q + 1], img)
                assert is_zero(red), f"B does not descend {name} q={q}"
            Bbar[q] = matmul(Pn[q + 1], matmul(Bq, Sn[q]))
        ndim = lambda q: d * (d - 1) ** q
        for q in range(1, NMAX + 1):
            assert is_zero(matmul(bbar[q], bbar[q + 1]))
            z1 = matadd(matmul(bbar[q + 1], Bbar[q]), matmul(Bbar[q - 1], bbar[q]))
            assert is_zero(z1), f"mixed axiom fails {name} q={q}"
        # mixed total
        def mixed_D(n):
            slots = [n - 2 * j for j in range(n // 2 + 1)]
            tslots = [n - 1 - 2 * j for j in range((n - 1) // 2 + 1)] if n >= 1 else []
            soff, toff = [0], [0]
            for m in slots:
                soff.append(soff[-1] + ndim(m))
            for m in tslots:
                toff.append(toff[-1] + ndim(m))
            M = zeros(toff[-1], soff[-1])
            for j, m in enumerate(slots):
                if m >= 1:
                    blk = bbar[m]
                    for i, row in enumerate(blk):
                        for jj, x in enumerate(row):
                            if x:
                                M[toff[j] + i][soff[j] + jj] = x
                if j >= 1:
                    blk = Bbar[m]
                    for i, row in enumerate(blk):
                        for jj, x in enumerate(row):
                            if x:
                                M[toff[j - 1] + i][soff[j] + jj] = x
            return M

        mixed = {n: mixed_D(n) for n in range(1, NMAX + 2)}
        for n in range(2, NMAX + 2):
            assert is_zero(matmul(mixed[n - 1], mixed[n])), f"mixed D^2 != 0 {name} n={n}"
        hc_mixed = []
        for n in range(0, NMAX + 1):
            dim_n = sum(ndim(n - 2 * j) for j in range(n // 2 + 1))
            hc_mixed.append(
                homology_dim(dim_n, mat_rank(mixed[n]) if n >= 1 else 0, mat_rank(mixed[n + 1]))
            )
        assert hc_mixed == hc[name], f"mixed route disagrees for {name}: {hc_mixed} vs {hc[name]}"
        print(f"[{name}] hc (normalized mixed route) agrees", flush=True)

    frozen["hh"] = hh
    frozen["hc"] = hc

    # ---------------- dihedral homology (trivial involution algebras)
    hd = {}
    for name, nmax in (("Q", 4), ("dualnum", 4), ("Qx3", 3), ("QZ2", 3)):
        A = algs[name]
        d = A.dim
        b_c = {q: b_mat(A, q) for q in range(0, nmax + 2)}
        Pdi, Sdi, qd = {}, {}, {}
        for q in range(0, nmax + 2):
            dimq = d ** (q + 1)
            U = t_mat(A, q)
            V = zeros(dimq, dimq)
            sgn = F(-1) if (q * (q + 1) // 2) % 2 else F(1)
            tgt = widx(d, q + 1)
            for cj, w in enumerate(words(d, q + 1)):
                nw = (w[0],) + tuple(reversed(w[1:]))
                V[tgt[nw]][cj] = sgn
            # group relations
            accU = eye(dimq)
            for _ in range(q + 1):
                accU = matmul(U, accU)
            assert mat_eq(accU, eye(dimq)), f"u^(n+1) != 1 {name} q={q}"
            assert mat_eq(matmul(V, V), eye(dimq)), f"v^2 != 1 {name} q={q}"
            Uinv = t_mat(A, q)
            accUi = eye(dimq)
            for _ in range(q):
                accUi = matmul(Uinv, accUi)
            assert mat_eq(matmul(V, matmul(U, V)), accUi), f"vuv != u^-1 {name} q={q}"
            one = eye(dimq)
            span = columns(matsub(one, U)) + columns(matsub(one, V))
            Pdi[q], Sdi[q], qd[q] = quotient(dimq, span)
        bbar = {}
        for q in range(1, nmax + 2):
            one = eye(d ** (q + 1))
            U = t_mat(A, q)
            V = zeros(d ** (q + 1), d ** (q + 1))
            sgn = F(-1) if (q * (q + 1) // 2) % 2 else F(1)
            tgt = widx(d, q + 1)
            for cj, w in enumerate(words(d, q + 1)):
                V[tgt[(w[0],) + tuple(reversed(w[1:]))]][cj] = sgn
            assert is_zero(matmul(Pdi[q - 1], matmul(b_c[q], matsub(one, U)))), f"b does not descend (u) {name} q={q}"
            assert is_zero(matmul(Pdi[q - 1], matmul(b_c[q], matsub(one, V)))), f"b does not descend (v) {name} q={q}"
            bbar[q] = matmul(Pdi[q - 1], matmul(b_c[q], Sdi[q]))
        hd[name] = [
            homology_dim(qd[n], mat_rank(bbar[n]) if n >= 1 else 0, mat_rank(bbar[n + 1]))
            for n in range(0, nmax + 1)
        ]
        print(f"[{name}] hd = {hd[name]}", flush=True)
    frozen["hd"] = hd

    # ---------------- eulerian operators, lambda pieces
    hh_lam = {}
    hc_lam = {}
    for name, nmax in (("dualnum", 4), ("Qx3", 3), ("m2var", 4)):
        A = algs[name]
        d = A.dim
        b_c = {q: b_mat(A, q) for q in range(0, nmax + 2)}
        Eop = {}
        for n in range(0, nmax + 1):
            Eop[n] = {}
            for i in range(0, n + 1):
                if n == 0:
                    Eop[0][i] = eye(d) if i == 0 else zeros(d, d)
                elif i == 0:
                    Eop[n][0] = zeros(d ** (n + 1), d ** (n + 1))
                else:
                    Eop[n][i] = op_on_chain(A, n, e_by_n[n][i])
        for n in range(1, nmax + 1):
            for i in range(1, n + 1):
                lhs = matmul(b_c[n], Eop[n][i])
                rhs = matmul(Eop[n - 1].get(i, zeros(d**n, d**n)), b_c[n])
                assert mat_eq(lhs, rhs), f"b-equivariance fails {name} n={n} i={i}"
        print(f"[{name}] eulerian b-equivariance ok (n <= {nmax})", flush=True)

        if name in ("dualnum", "m2var"):
            lam = {}
            for n in range(0, min(nmax, 3) + 1):
                dims = []
                for i in range(0, n + 1):
                    if i == 0 and n > 0:
                        dims.append(0)
                        continue
                    img_n = [v for _, v in col_echelon(columns(Eop[n][i]), d ** (n + 1))]
                    basis_n = [[v[r] for v in img_n] for r in range(d ** (n + 1))] if img_n else zeros(d ** (n + 1), 0)
                    rk_bn = mat_rank(matmul(b_c[n], basis_n)) if n >= 1 and img_n else 0
                    Em = Eop[n + 1].get(i)
                    if Em is None:
                        Em = zeros(d ** (n + 2), d ** (n + 2))
                    img_n1 = [v for _, v in col_echelon(columns(Em), d ** (n + 2))]
                    basis_n1 = [[v[r] for v in img_n1] for r in range(d ** (n + 2))] if img_n1 else zeros(d ** (n + 2), 0)
                    rk_bn1 = mat_rank(matmul(b_c[n + 1], basis_n1)) if img_n1 else 0
                    dims.append(len(img_n) - rk_bn - rk_bn1)
                lam[n] = dims if n > 0 else [dims[0]]
                if n > 0:
                    lam[n] = dims[1:]
            hh_lam[name] = lam
            for n in range(0, min(nmax, 3) + 1):
                total = sum(lam[n]) if n > 0 else lam[0][0]
                assert total == hh[name][n], f"lambda pieces do not sum to hh {name} n={n}: {lam[n]} vs {hh[name][n]}"
            print(f"[{name}] hh lambda pieces = {lam}", flush=True)

        # normalized descent + B-bar equivariance
        if name in ("dualnum", "Qx3"):
            Pn, Sn = {}, {}
            for q in range(0, nmax + 2):
                Pn[q], Sn[q] = chain_norm(A, q)
            Ebar = {}
            for n in range(0, nmax + 1):
                Ebar[n] = {}
                for i in range(0, n + 1):
                    EB = matmul(Pn[n], matmul(Eop[n][i], Sn[n]))
                    assert mat_eq(matmul(Pn[n], Eop[n][i]), matmul(EB, Pn[n])), f"idempotent does not descend {name} n={n} i={i}"
                    Ebar[n][i] = EB
            bbar, Bbar = {}, {}
            for q in range(1, nmax + 2):
                bbar[q] = matmul(Pn[q - 1], matmul(b_c[q], Sn[q]))
            for q in range(0, nmax + 1):
                Bbar[q] = matmul(Pn[q + 1], matmul(B_mat(A, q), Sn[q]))
            for n in range(0, nmax):
                for i in range(0, n + 1):
                    lhs = matmul(Bbar[n], Ebar[n][i])
                    Et = Ebar[n + 1].get(i + 1, zeros(d * (d - 1) ** (n + 1), d * (d - 1) ** (n + 1)))
                    rhs = matmul(Et, Bbar[n])
                    assert mat_eq(lhs, rhs), f"B-equivariance fails {name} n={n} i={i}"
            print(f"[{name}] normalized B-equivariance ok", flush=True)

            if name == "dualnum":
                ndim = lambda q: d * (d - 1) ** q
                def mixed_blocks(n):
                    return [n - 2 * j for j in range(n // 2 + 1)]
                def mixed_D_and_proj(n):
                    slots = mixed_blocks(n)
                    soff = [0]
                    for m in slots:
                        soff.append(soff[-1] + ndim(m))
                    tslots = mixed_blocks(n - 1) if n >= 1 else []
                    toff = [0]
                    for m in tslots:
                        toff.append(toff[-1] + ndim(m))
                    M = zeros(toff[-1], soff[-1])
                    for j, m in enumerate(slots):
                        if m >= 1:
                            for i, row in enumerate(bbar[m]):
                                for jj, x in enumerate(row):
                                    if x:
                                        M[toff[j] + i][soff[j] + jj] = x
                        if j >= 1:
                            for i, row in enumerate(Bbar[m]):
                                for jj, x in enumerate(row):
                                    if x:
                                        M[toff[j - 1] + i][soff[j] + jj] = x
                    projs = {}
                    for i in range(0, n + 1):
                        P = zeros(soff[-1], soff[-1])
                        for j, m in enumerate(slots):
                            blk = Ebar[m].get(i - j)
                            if blk is None:
                                blk = zeros(ndim(m), ndim(m))
                            for r in range(ndim(m)):
                                for cc in range(ndim(m)):
                                    if blk[r][cc]:
                                        P[soff[j] + r][soff[j] + cc] = blk[r][cc]
                        projs[i] = P
                    return M, projs, soff[-1]

                mixedD, mixedP, mdim = {}, {}, {}
                for n in range(0, nmax + 1):
                    Mn, Pr, dn = mixed_D_and_proj(n)
                    mixedD[n], mixedP[n], mdim[n] = Mn, Pr, dn
                for n in range(0, nmax + 1):
                    tot = zeros(mdim[n], mdim[n])
                    for i, P in mixedP[n].items():
                        assert mat_eq(matmul(P, P), P), f"mixed projector not idempotent n={n} i={i}"
                        tot = matadd(tot, P)
                    assert mat_eq(tot, eye(mdim[n])), f"mixed projectors do not sum to id n={n}"
                for n in range(1, nmax + 1):
                    for i in range(0, n + 1):
                        Psrc = mixedP[n][i] if i in mixedP[n] else zeros(mdim[n], mdim[n])
                        Ptgt = mixedP[n - 1].get(i, zeros(mdim[n - 1], mdim[n - 1]))
                        assert mat_eq(matmul(mixedD[n], Psrc), matmul(Ptgt, mixedD[n])), f"mixed D projector equivariance n={n} i={i}"
                lam = {}
                for n in range(0, min(nmax, 3) + 1):
                    dims = []
                    for i in range(0, n + 1):
                        img = [v for _, v in col_echelon(columns(mixedP[n][i]), mdim[n])]
                        bset = [[v[r] for v in img] for r in range(mdim[n])] if img else zeros(mdim[n], 0)
                        rk_out = mat_rank(matmul(mixedD[n], bset)) if n >= 1 and img else 0
                        Pup = mixedP[n + 1].get(i, zeros(mdim[n + 1], mdim[n + 1]))
                        img1 = [v for _, v in col_echelon(columns(Pup), mdim[n + 1])]
                        bset1 = [[v[r] for v in img1] for r in range(mdim[n + 1])] if img1 else zeros(mdim[n + 1], 0)
                        rk_in = mat_rank(matmul(mixedD[n + 1], bset1)) if img1 else 0
                        dims.append(len(img) - rk_out - rk_in)
                    lam[n] = dims
                    assert sum(dims) == hc[name][n], f"hc lambda pieces do not sum n={n}: {dims} vs {hc[name][n]}"
                hc_lam[name] = lam
                print(f"[{name}] hc lambda pieces = {lam}", flush=True)

    frozen["hh_lambda"] = hh_lam
    frozen["hc_lambda"] = hc_lam

    # ---------------- forms
    omega = {}
    derham = {}
    for name in ("dualnum", "Qx3", "QZ2", "m2var"):
        A = algs[name]
        od, hdr, _, _ = build_forms(A, 3)
        omega[name] = od
        derham[name] = hdr
        print(f"[{name}] omega dims = {od}, de Rham dims = {hdr}", flush=True)
    frozen["omega"] = omega
    frozen["de_rham"] = derham

    # ---------------- M2(Q): hc_0 and the trace isomorphism
    M2 = mk_M2Q()
    comm = []
    for i in range(4):
        for j in range(4):
            v = [M2.mult[i][j][k] - M2.mult[j][i][k] for k in range(4)]
            comm.append(v)
    P2, S2, q2 = quotient(4, comm)
    frozen["hc0_M2Q"] = q2
    trv = [F(1), F(0), F(0), F(1)]
    for v in comm:
        assert sum(trv[k] * v[k] for k in range(4)) == 0, "trace does not kill commutators"
    tr_induced = [[sum(trv[k] * S2[k][j] for k in range(4)) for j in range(q2)]]
    frozen["trace_rank"] = mat_rank(tr_induced)
    print(f"[M2Q] hc_0 dim = {q2}, induced trace rank = {frozen['trace_rank']}", flush=True)

    # also hh of M2Q at low degree
    b1 = b_mat(M2, 1)
    b2 = b_mat(M2, 2)
    b3 = b_mat(M2, 3)
    hhm = [
        homology_dim(4, 0, mat_rank(b1)),
        homology_dim(16, mat_rank(b1), mat_rank(b2)),
        homology_dim(64, mat_rank(b2), mat_rank(b3)),
    ]
    frozen["hh_M2Q_low"] = hhm
    print(f"[M2Q] hh (n<=2) = {hhm}", flush=True)

    print("\nFROZEN = " + repr(frozen))


if __name__ == "__main__":
    main()
