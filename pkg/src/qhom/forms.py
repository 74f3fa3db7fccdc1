"""Kaehler differentials, higher forms, and the antisymmetrization maps.

For a commutative algebra A the module of 1-forms is Omega^1 = I/I^2 with
I = ker(mult: A (x) A -> A) and d(a) = 1 (x) a - a (x) 1 mod I^2.  Higher
forms Omega^p are the exterior powers of Omega^1 over A, realized as the
quotient of (Omega^1)^(x)p by adjacent A-balancedness and alternation
relations, which is valid over a field of characteristic zero.

The surjection pi_p: C_p(A) -> Omega^p sends a_0 (x) ... (x) a_p to
a_0 da_1 ... da_p; it kills boundaries (pi o b = 0) and intertwines the
rescaled family pi_p/p! with the mixed complex structure:
pi_{p+1} B = (p+1) d pi_p on normalized chains.

The antisymmetrization complex E_n = A (x) Lambda^n A (exterior power over
the base field) carries the differential

    delta(a_0 (x) a_1 ^ ... ^ a_n)
      = sum_{1<=i<=n} (-1)^i [a_0, a_i] (x) a_1 ^ ... a_i-hat ... ^ a_n
      + sum_{1<=i<j<=n} (-1)^(i+j-1) a_0 (x) [a_i, a_j] ^ ... a_i-hat ...
        a_j-hat ... ^ a_n

and eps_n: E_n -> C_n antisymmetrizes the tail; b o eps = eps o delta holds
on the nose.  For commutative A the degreewise map Omega^p -> HH_p picks a
section of pi_p, antisymmetrizes, and takes homology classes; this is only
well defined on homology, which the construction verifies exactly.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .algebra import Algebra, Measuring
from .cyclic import chain_map, check_dim, require_cocommutative
from .errors import (
    CompositionNotZero,
    NotAChainMapOnClasses,
    NotCommutative,
    VerificationFailure,
)
from .linalg import (
    QMat,
    QuotientSpace,
    Subquotient,
    _echelon_insert,
    induced_on_quotient,
)
from .products import perm_sign, tail_perm_matrix

F0, F1 = Fraction(0), Fraction(1)


def _require_commutative(A: Algebra, what: str) -> None:
    if not A.commutative:
        raise NotCommutative(f"{what} needs a commutative algebra, got {A.name}")


# -------------------------------------------------------------- Kaehler data


class KahlerData:
    """Omega^1 = I/I^2 with the differential and the A-action."""

    def __init__(self, A: Algebra):
        _require_commutative(A, "the module of differential forms")
        self.A = A
        d = A.dim
        mult = A.mult_matrix()
        self.ibasis = mult.kernel_basis()  # d^2 x k
        k = self.ibasis.ncols
        # I^2 in I-coordinates
        prods = []
        for u in self.ibasis.cols:
            for v in self.ibasis.cols:
                prods.append(self._aa_mult(u, v))
        if prods:
            prod_mat = QMat(d * d, len(prods), prods)
            i2 = self.ibasis.solve(prod_mat)
        else:
            i2 = QMat.zero(k, 0)
        self.omega1 = QuotientSpace(k, i2)
        # d: A -> Omega^1
        cols = []
        for j in range(d):
            da = self._d_tensor(j)
            cols.append(self.omega1.project_vec(self._into_i(da)))
        self.dmap = QMat(self.omega1.dim, d, cols)
        # action of basis elements on Omega^1 (multiply the left tensor leg)
        self.actions = []
        for j in range(d):
            act_cols = []
            for r in self.omega1.free:
                vec = self._from_i({r: F1})
                moved = self._left_mult(j, vec)
                act_cols.append(self.omega1.project_vec(self._into_i(moved)))
            self.actions.append(QMat(self.omega1.dim, self.omega1.dim, act_cols))

    def _aa_mult(self, u: dict, v: dict) -> dict:
        """Componentwise product in A (x) A."""
        A = self.A
        d = A.dim
        out: dict = {}
        for iu, cu in u.items():
            a1, b1 = divmod(iu, d)
            for iv, cv in v.items():
                a2, b2 = divmod(iv, d)
                for k1, c1 in enumerate(A.mult[a1][a2]):
                    if not c1:
                        continue
                    for k2, c2 in enumerate(A.mult[b1][b2]):
                        if c2:
                            key = k1 * d + k2
                            w = out.get(key, 0) + cu * cv * c1 * c2
                            if w:
                                out[key] = w
                            else:
                                out.pop(key, None)
        return out

    def _d_tensor(self, j: int) -> dict:
        """1 (x) e_j - e_j (x) 1 as a vector in A (x) A."""
        A = self.A
        d = A.dim
        out: dict = {}
        for k, c in A.unit_vec().items():
            _inc(out, k * d + j, c)
            _inc(out, j * d + k, -c)
        return out

    def _left_mult(self, j: int, vec: dict) -> dict:
        """Multiply a vector of A (x) A by e_j (x) 1."""
        A = self.A
        d = A.dim
        out: dict = {}
        for iu, cu in vec.items():
            a, b = divmod(iu, d)
            for k, c in enumerate(A.mult[j][a]):
                if c:
                    _inc(out, k * d + b, cu * c)
        return out

    def _into_i(self, vec: dict) -> dict:
        col = QMat.column(self.A.dim ** 2, vec)
        return self.ibasis.solve(col).col(0)

    def _from_i(self, ivec: dict) -> dict:
        return self.ibasis.apply(ivec)


def _inc(out: dict, key, val) -> None:
    w = out.get(key, 0) + val
    if w:
        out[key] = w
    else:
        out.pop(key, None)


# -------------------------------------------------------------- higher forms


class FormsData:
    """Omega^p for p <= top, with pi_p, sections, and the de Rham d."""

    def __init__(self, A: Algebra, top: int):
        self.kd = KahlerData(A)
        self.A = A
        self.top = top
        k1 = self.kd.omega1.dim
        d = A.dim
        self.spaces: list[QuotientSpace] = []
        for p in range(top + 1):
            if p == 0:
                self.spaces.append(QuotientSpace(d, QMat.zero(d, 0)))
            elif p == 1:
                self.spaces.append(QuotientSpace(k1, QMat.zero(k1, 0)))
            else:
                self.spaces.append(self._omega_p_space(p))
        self.dims = [s.dim for s in self.spaces]
        self.pis = [self._pi(p) for p in range(top + 1)]
        self.sections = [self._section(p) for p in range(top + 1)]
        self.derham: dict[int, QMat] = {}
        for p in range(top):
            self.derham[p] = self._derham(p)
        for p in range(top - 1):
            comp = self.derham[p + 1] @ self.derham[p]
            if not comp.is_zero():
                raise CompositionNotZero(
                    f"d o d != 0 on Omega^{p}({A.name})"
                )

    def _omega_p_space(self, p: int) -> QuotientSpace:
        k1 = self.kd.omega1.dim
        amb = check_dim(k1**p, f"Omega^1({self.A.name})^(x){p}")
        rels = []
        eye = QMat.identity(amb)
        for i in range(p - 1):
            # adjacent transposition of slots i, i+1
            sigma = list(range(p))
            sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
            tau = _slot_perm(k1, p, tuple(sigma))
            rels.append(eye + tau)
        for j in range(self.A.dim):
            act = self.kd.actions[j]
            for i in range(p - 1):
                left = QMat.identity(k1**i)
                mid_a = act.kron(QMat.identity(k1 ** (p - 1 - i)))
                first = left.kron(mid_a) if i else mid_a
                left2 = QMat.identity(k1 ** (i + 1))
                mid_b = act.kron(QMat.identity(k1 ** (p - 2 - i)))
                second = left2.kron(mid_b)
                rels.append(first - second)
        relmat = QMat.hstack(rels) if rels else QMat.zero(amb, 0)
        return QuotientSpace(amb, relmat)

    def _pi(self, p: int) -> QMat:
        """pi_p: C_p -> Omega^p."""
        A = self.A
        d = A.dim
        if p == 0:
            return QMat.identity(d)
        k1 = self.kd.omega1.dim
        check_dim(d ** (p + 1), f"C_{p}({A.name})")
        dcols = [self.kd.dmap.col(j) for j in range(d)]
        space = self.spaces[p]
        act_first = [
            self.kd.actions[j].kron(QMat.identity(k1 ** (p - 1))) for j in range(d)
        ]
        pows = [d ** (p - s) for s in range(p + 1)]
        cols = []
        for c in range(d ** (p + 1)):
            rem = c
            w = []
            for s in range(p + 1):
                w.append(rem // pows[s])
                rem %= pows[s]
            vec = dict(dcols[w[1]])
            for s in range(2, p + 1):
                nxt: dict = {}
                for i1, c1 in vec.items():
                    for i2, c2 in dcols[w[s]].items():
                        _inc(nxt, i1 * k1 + i2, c1 * c2)
                vec = nxt
            moved = act_first[w[0]].apply(vec)
            cols.append(space.project_vec(moved))
        return QMat(space.dim, d ** (p + 1), cols)

    def _section(self, p: int) -> QMat:
        """s_p with pi_p s_p = id, from the first independent columns of pi_p."""
        pi = self.pis[p]
        dim = self.spaces[p].dim
        chosen: list[int] = []
        ech: list = []
        for j in range(pi.ncols):
            if _echelon_insert(ech, dict(pi.cols[j])):
                chosen.append(j)
            if len(chosen) == dim:
                break
        if len(chosen) != dim:
            raise VerificationFailure(
                f"pi_{p} on {self.A.name} is not surjective; forms construction broken"
            )
        probe = QMat(pi.nrows, dim, [dict(pi.cols[j]) for j in chosen])
        inv = probe.solve(QMat.identity(dim))
        sel = QMat(pi.ncols, dim, [{chosen[k]: F1} for k in range(dim)])
        return sel @ inv

    def _derham(self, p: int) -> QMat:
        """d: Omega^p -> Omega^{p+1} via d(a_0 da_1 ... da_p) = da_0 da_1 ... da_p."""
        A = self.A
        d = A.dim
        u = A.unit_matrix()
        prepend = u.kron(QMat.identity(d ** (p + 1)))
        dm = self.pis[p + 1] @ prepend @ self.sections[p]
        lhs = dm @ self.pis[p]
        rhs = self.pis[p + 1] @ prepend
        if lhs != rhs:
            raise VerificationFailure(
                f"the de Rham differential is not well defined on Omega^{p}({A.name})"
            )
        return dm

    def closed_quotient(self, n: int) -> QuotientSpace:
        """Omega^n modulo exact forms d(Omega^{n-1})."""
        if n == 0:
            return QuotientSpace(self.dims[0], QMat.zero(self.dims[0], 0))
        return QuotientSpace(self.dims[n], self.derham[n - 1].image_basis())

    def de_rham_cohomology(self, p: int) -> Subquotient:
        """ker(d: Omega^p -> Omega^{p+1}) / im(d: Omega^{p-1} -> Omega^p)."""
        if p + 1 > self.top:
            raise VerificationFailure(
                f"de Rham cohomology at {p} needs forms to degree {p + 1}"
            )
        outgoing = self.derham[p]
        incoming = self.derham[p - 1] if p >= 1 else QMat.zero(self.dims[0], 0)
        comp = outgoing @ incoming
        if not comp.is_zero():
            raise CompositionNotZero(f"d o d != 0 at Omega^{p}({self.A.name})")
        return Subquotient(self.dims[p], outgoing.kernel_basis(), incoming.image_basis())


def _slot_perm(k: int, p: int, sigma: tuple[int, ...]) -> QMat:
    """Permutation of tensor slots on (Q^k)^(x)p; letter i moves to slot sigma[i]."""
    size = k**p
    pows = [k ** (p - 1 - s) for s in range(p)]
    cols = [dict() for _ in range(size)]
    for c in range(size):
        rem = c
        w = []
        for s in range(p):
            w.append(rem // pows[s])
            rem %= pows[s]
        r = 0
        for i in range(p):
            r += w[i] * pows[sigma[i]]
        cols[c][r] = F1
    return QMat(size, size, cols)


# -------------------------------------------------------- measured form maps


def forms_map(m: Measuring, src: FormsData, tgt: FormsData, x: dict, p: int) -> QMat:
    """Omega^p_Phi(x): Omega^p(source) -> Omega^p(target).

    Defined through pi and verified against the full chain square
    Omega_Phi o pi = pi' o C^Phi; failure raises VerificationFailure.
    """
    require_cocommutative(m, "the induced map on differential forms")
    _require_commutative(m.source, "the induced map on differential forms")
    _require_commutative(m.target, "the induced map on differential forms")
    cm = chain_map(m, x, p)
    out = tgt.pis[p] @ cm @ src.sections[p]
    if (out @ src.pis[p]) != (tgt.pis[p] @ cm):
        raise VerificationFailure(
            f"measuring {m.name} does not descend to Omega^{p}"
        )
    return out


# -------------------------------------------------- antisymmetrization side


class AntisymComplex:
    """E_n = A (x) Lambda^n A (exterior over Q) with the adjoint differential."""

    def __init__(self, A: Algebra, top: int):
        self.A = A
        self.top = top
        d = A.dim
        self.spaces: list[QuotientSpace] = []
        for n in range(top + 1):
            amb = check_dim(d ** (n + 1), f"E_{n}({A.name})")
            rels = []
            eye = QMat.identity(amb)
            for i in range(n - 1):
                sigma = list(range(n))
                sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
                rels.append(eye + tail_perm_matrix(d, n, tuple(sigma)))
            relmat = QMat.hstack(rels) if rels else QMat.zero(amb, 0)
            self.spaces.append(QuotientSpace(amb, relmat))
        self.dims = [s.dim for s in self.spaces]
        self.diff: dict[int, QMat] = {}
        for n in range(1, top + 1):
            self.diff[n] = induced_on_quotient(
                self._delta_tensor(n),
                self.spaces[n],
                self.spaces[n - 1],
                context=f"the adjoint differential on E_{n}({A.name})",
            )

    def _delta_tensor(self, n: int) -> QMat:
        """The differential on the ambient tensor space A^(x)(n+1)."""
        A = self.A
        d = A.dim
        src = d ** (n + 1)
        tgt = d**n
        pows = [d ** (n - s) for s in range(n + 1)]
        tpows = [d ** (n - 1 - s) for s in range(n)]
        cols = []
        for c in range(src):
            rem = c
            w = []
            for s in range(n + 1):
                w.append(rem // pows[s])
                rem %= pows[s]
            col: dict = {}
            for i in range(1, n + 1):
                sign = F1 if i % 2 else -F1
                br = A.commutator({w[0]: F1}, {w[i]: F1})
                rest = [w[s] for s in range(1, n + 1) if s != i]
                base = sum(rest[t] * tpows[1 + t] for t in range(n - 1))
                for k, cf in br.items():
                    _inc(col, base + k * tpows[0], sign * cf)
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    sign = -F1 if (i + j) % 2 else F1
                    br = A.commutator({w[i]: F1}, {w[j]: F1})
                    rest = [w[s] for s in range(1, n + 1) if s != i and s != j]
                    base = w[0] * tpows[0] + sum(
                        rest[t] * tpows[2 + t] for t in range(n - 2)
                    )
                    for k, cf in br.items():
                        _inc(col, base + k * tpows[1], sign * cf)
            cols.append(col)
        return QMat(tgt, src, cols)

    def antisym_tensor(self, n: int) -> QMat:
        """Tail antisymmetrization C_n -> C_n: sum of signed tail permutations."""
        d = self.A.dim
        out = QMat.zero(d ** (n + 1), d ** (n + 1))
        for sigma in permutations(range(n)):
            mat = tail_perm_matrix(d, n, sigma)
            out = out + (mat if perm_sign(sigma) > 0 else -mat)
        return out

    def eps(self, n: int) -> QMat:
        """eps_n: E_n -> C_n, antisymmetrization of representatives.

        Verified well defined: the symmetric relations must antisymmetrize
        to zero.
        """
        AS = self.antisym_tensor(n)
        space = self.spaces[n]
        rels = space.relation_columns()
        if not (AS @ rels).is_zero():
            raise VerificationFailure(
                f"antisymmetrization is not well defined on E_{n}({self.A.name})"
            )
        return AS @ space.section()

    def measured_map(self, m: Measuring, x: dict, tgt: "AntisymComplex", n: int) -> QMat:
        """E_n^Phi(x): E_n(source) -> E_n(target)."""
        require_cocommutative(m, "the induced map on the antisymmetrization complex")
        return induced_on_quotient(
            chain_map(m, x, n),
            self.spaces[n],
            tgt.spaces[n],
            context=f"measuring {m.name} on E_{n}",
        )


def homology_eps(
    fd: FormsData, easym: AntisymComplex, hh: Subquotient, p: int
) -> QMat:
    """The degreewise map Omega^p -> HH_p for commutative algebras.

    Sections of pi_p are antisymmetrized and classed; the construction
    verifies that antisymmetrized elements are cycles, that the map kills
    ker(pi_p) up to boundaries (so the result is section-independent), and
    returns the matrix on classes.
    """
    _require_commutative(fd.A, "the comparison map from forms to Hochschild classes")
    AS = easym.antisym_tensor(p)
    sec = fd.sections[p]
    cand = AS @ sec
    for j in range(cand.ncols):
        if not hh.contains_cycle(cand.col(j)):
            raise NotAChainMapOnClasses(
                f"antisymmetrized form generator {j} is not a cycle in degree {p}"
            )
    ker = fd.pis[p].kernel_basis()
    img = AS @ ker
    for j in range(img.ncols):
        if not hh.is_boundary(img.col(j)):
            raise NotAChainMapOnClasses(
                f"antisymmetrization does not kill ker(pi_{p}) up to boundaries "
                f"(kernel column {j})"
            )
    return hh.class_matrix(cand)
