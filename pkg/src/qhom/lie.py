"""Lie and Leibniz chain complexes with coalgebra-measured maps.

Chevalley-Eilenberg chains live on exterior powers, Leibniz chains on
tensor powers. A matrix algebra carries two bridges between the Lie
world and the cyclic world: the antisymmetrization of a wedge into a
cyclic word, and the generalized trace contracting matrix indices.
Adjoint coinvariants of the matrix rows support block-sum products, and
the module of cyclic words splits the cyclic quotient off the Hochschild
chains. Every square that a construction relies on is checked on the
nose at build time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import isqrt

from .algebra import Algebra, Coalgebra, Measuring, matrix_algebra, matrix_measuring
from .cyclic import (
    ChainComplex,
    ChainOps,
    QuotientComplex,
    chain_map,
    check_dim,
    require_cocommutative,
    tilde_complex,
)
from .errors import (
    NotALeibnizAlgebra,
    NotALieMeasuring,
    ValidationError,
    VerificationFailure,
)
from .linalg import QMat, QuotientSpace, induced_on_quotient
from .products import perm_sign, slots_perm_matrix, tail_perm_matrix

F0 = Fraction(0)
F1 = Fraction(1)


def _bracket_apply(bracket, u: dict, v: dict) -> dict:
    out: dict = {}
    for i, ci in u.items():
        for j, cj in v.items():
            c = ci * cj
            if not c:
                continue
            for k, s in enumerate(bracket[i][j]):
                if s:
                    w = out.get(k, F0) + c * s
                    if w:
                        out[k] = w
                    else:
                        out.pop(k, None)
    return out


def _names(basis_names, dim):
    return basis_names if basis_names else [f"e{i}" for i in range(dim)]


@dataclass
class LieAlgebra:
    """Finite dimensional Lie algebra over Q by structure constants.

    ``bracket[i][j]`` is the coordinate vector of [e_i, e_j].
    """

    name: str
    dim: int
    bracket: list
    basis_names: list | None = None

    def __post_init__(self):
        self.bracket = [
            [[Fraction(c) for c in col] for col in row] for row in self.bracket
        ]

    def bracket_vec(self, u: dict, v: dict) -> dict:
        return _bracket_apply(self.bracket, u, v)

    def ad(self, u: dict) -> QMat:
        """The operator [u, -] on coordinates."""
        return QMat.from_cols(self.dim, [self.bracket_vec(u, {j: F1}) for j in range(self.dim)])

    def validate(self) -> None:
        d = self.dim
        names = _names(self.basis_names, d)
        if len(self.bracket) != d or any(
            len(row) != d or any(len(col) != d for col in row) for row in self.bracket
        ):
            raise ValidationError(f"lie algebra {self.name}: bracket table has wrong shape")
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    if self.bracket[i][j][k] + self.bracket[j][i][k]:
                        raise ValidationError(
                            f"lie algebra {self.name}: bracket is not antisymmetric "
                            f"on ({names[i]}, {names[j]})"
                        )
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    acc: dict = {}
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        inner = self.bracket_vec({b: F1}, {c: F1})
                        for l, cf in self.bracket_vec({a: F1}, inner).items():
                            acc[l] = acc.get(l, F0) + cf
                    if any(acc.values()):
                        raise ValidationError(
                            f"lie algebra {self.name}: Jacobi identity fails "
                            f"on ({names[i]}, {names[j]}, {names[k]})"
                        )


@dataclass
class LeibnizAlgebra:
    """Bracket algebra where every [x, -] is a derivation of the bracket.

    Antisymmetry is not assumed; a Lie bracket is a special case.
    """

    name: str
    dim: int
    bracket: list
    basis_names: list | None = None

    def __post_init__(self):
        self.bracket = [
            [[Fraction(c) for c in col] for col in row] for row in self.bracket
        ]

    def bracket_vec(self, u: dict, v: dict) -> dict:
        return _bracket_apply(self.bracket, u, v)

    def validate(self) -> None:
        d = self.dim
        names = _names(self.basis_names, d)
        if len(self.bracket) != d or any(
            len(row) != d or any(len(col) != d for col in row) for row in self.bracket
        ):
            raise ValidationError(f"leibniz algebra {self.name}: bracket table has wrong shape")
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    acc: dict = {}
                    inner = self.bracket_vec({j: F1}, {k: F1})
                    for l, cf in self.bracket_vec({i: F1}, inner).items():
                        acc[l] = acc.get(l, F0) + cf
                    left = self.bracket_vec({i: F1}, {j: F1})
                    for l, cf in self.bracket_vec(left, {k: F1}).items():
                        acc[l] = acc.get(l, F0) - cf
                    right = self.bracket_vec({i: F1}, {k: F1})
                    for l, cf in self.bracket_vec(right, {j: F1}).items():
                        acc[l] = acc.get(l, F0) + cf
                    if any(acc.values()):
                        raise NotALeibnizAlgebra(
                            f"{self.name}: derivation identity fails "
                            f"on ({names[i]}, {names[j]}, {names[k]})"
                        )


def lie_from_algebra(A: Algebra, name: str | None = None) -> LieAlgebra:
    """The commutator Lie algebra of an associative algebra."""
    d = A.dim
    zero = [F0] * d
    bracket = []
    for i in range(d):
        row = []
        for j in range(d):
            col = list(zero)
            for k, c in A.commutator({i: F1}, {j: F1}).items():
                col[k] = c
            row.append(col)
        bracket.append(row)
    return LieAlgebra(
        name=name or f"Lie({A.name})",
        dim=d,
        bracket=bracket,
        basis_names=list(A.basis_names),
    )


def leibniz_from_lie(g: LieAlgebra) -> LeibnizAlgebra:
    return LeibnizAlgebra(name=g.name, dim=g.dim, bracket=g.bracket, basis_names=g.basis_names)


def gl(A: Algebra, r: int) -> LieAlgebra:
    """gl_r(A): the commutator Lie algebra of r by r matrices over A."""
    return lie_from_algebra(matrix_algebra(A, r), name=f"gl{r}({A.name})")


@dataclass
class LieMeasuring:
    """A coalgebra-indexed family of maps splitting brackets through delta.

    psi[c] maps the source Lie algebra to the target for each coalgebra
    basis element, and psi(x)([a, b]) = [psi(x_(1))(a), psi(x_(2))(b)].
    """

    name: str
    coalgebra: Coalgebra
    source: LieAlgebra
    target: LieAlgebra
    psi: list

    def psi_of(self, x: dict) -> QMat:
        out = QMat.zero(self.target.dim, self.source.dim)
        for c, coeff in x.items():
            if coeff:
                out = out + self.psi[c].scale(coeff)
        return out

    def validate(self) -> None:
        C, g, gp = self.coalgebra, self.source, self.target
        if len(self.psi) != C.dim:
            raise ValidationError(
                f"lie measuring {self.name}: needs one map per coalgebra basis element"
            )
        for c, m in enumerate(self.psi):
            if m.nrows != gp.dim or m.ncols != g.dim:
                raise ValidationError(
                    f"lie measuring {self.name}: map {C.basis_names[c]} has wrong shape"
                )
        gnames = _names(g.basis_names, g.dim)
        for c in range(C.dim):
            legs = C.delta({c: F1})
            for i in range(g.dim):
                for j in range(g.dim):
                    lhs = self.psi[c].apply(g.bracket_vec({i: F1}, {j: F1}))
                    rhs: dict = {}
                    for (u, v), coeff in legs.items():
                        term = gp.bracket_vec(
                            self.psi[u].apply({i: F1}), self.psi[v].apply({j: F1})
                        )
                        for k, cf in term.items():
                            rhs[k] = rhs.get(k, F0) + coeff * cf
                    diff = dict(lhs)
                    for k, cf in rhs.items():
                        diff[k] = diff.get(k, F0) - cf
                    if any(diff.values()):
                        raise NotALieMeasuring(
                            f"{self.name}: bracket of ({gnames[i]}, {gnames[j]}) is not "
                            f"measured through delta({C.basis_names[c]})"
                        )


def lie_measuring(m: Measuring, name: str | None = None) -> LieMeasuring:
    """The measuring of commutator Lie algebras induced by an algebra measuring.

    Brackets split through delta only up to a leg swap, so the coalgebra
    must be cocommutative.
    """
    require_cocommutative(m, f"the commutator measuring of {m.name}")
    out = LieMeasuring(
        name=name or f"Lie({m.name})",
        coalgebra=m.coalgebra,
        source=lie_from_algebra(m.source),
        target=lie_from_algebra(m.target),
        psi=list(m.phi),
    )
    out.validate()
    return out


def gl_measuring(m: Measuring, r: int) -> LieMeasuring:
    """Entrywise extension of a measuring to gl_r, as a Lie measuring."""
    return lie_measuring(matrix_measuring(m, r), name=f"gl{r}({m.name})")


def _adjacent_swap(n: int, s: int) -> tuple:
    sigma = list(range(n))
    sigma[s], sigma[s + 1] = sigma[s + 1], sigma[s]
    return tuple(sigma)


def wedge_space(d: int, n: int, what: str) -> QuotientSpace:
    """The n-th exterior power as a quotient of the n-th tensor power."""
    amb = check_dim(d ** n, what)
    if n <= 1:
        return QuotientSpace(amb, QMat.zero(amb, 0))
    eye = QMat.identity(amb)
    rels = [eye + slots_perm_matrix(d, n, _adjacent_swap(n, s)) for s in range(n - 1)]
    return QuotientSpace(amb, QMat.hstack(rels))


def _word_at(col: int, d: int, n: int) -> list:
    w = []
    for s in range(n):
        w.append((col // d ** (n - 1 - s)) % d)
    return w


def _index_of(word, d: int) -> int:
    idx = 0
    for v in word:
        idx = idx * d + v
    return idx


def _wedge_diff_tensor(g, n: int) -> QMat:
    """Bracket each pair of slots to the front, with alternating signs."""
    d = g.dim
    entries: dict = {}
    for col in range(d ** n):
        w = _word_at(col, d, n)
        for i in range(n):
            for j in range(i + 1, n):
                sign = F1 if (i + j) % 2 else -F1
                rest = [w[s] for s in range(n) if s != i and s != j]
                base = _index_of(rest, d)
                for k, c in enumerate(g.bracket[w[i]][w[j]]):
                    if c:
                        key = (k * d ** (n - 2) + base, col)
                        acc = entries.get(key, F0) + sign * c
                        if acc:
                            entries[key] = acc
                        else:
                            entries.pop(key, None)
    return QMat.from_entries(d ** (n - 1), d ** n, entries)


def _tensor_diff_tensor(g, n: int) -> QMat:
    """Bracket slot i with a later slot j in place, dropping slot j."""
    d = g.dim
    entries: dict = {}
    for col in range(d ** n):
        w = _word_at(col, d, n)
        for i in range(n):
            for j in range(i + 1, n):
                sign = F1 if j % 2 else -F1
                for k, c in enumerate(g.bracket[w[i]][w[j]]):
                    if c:
                        word = w[:i] + [k] + w[i + 1 : j] + w[j + 1 :]
                        key = (_index_of(word, d), col)
                        acc = entries.get(key, F0) + sign * c
                        if acc:
                            entries[key] = acc
                        else:
                            entries.pop(key, None)
    return QMat.from_entries(d ** (n - 1), d ** n, entries)


@dataclass
class CEData:
    """Chevalley-Eilenberg chains of a Lie algebra, with the wedge quotients."""

    g: LieAlgebra
    top: int
    spaces: list
    complex: ChainComplex


def ce_data(g: LieAlgebra, top: int) -> CEData:
    spaces = [wedge_space(g.dim, n, f"wedge^{n} {g.name}") for n in range(top + 1)]
    diff = {}
    for n in range(1, top + 1):
        diff[n] = induced_on_quotient(
            _wedge_diff_tensor(g, n),
            spaces[n],
            spaces[n - 1],
            context=f"wedge differential of {g.name} at degree {n}",
        )
    dims = [s.dim for s in spaces]
    cx = ChainComplex(f"CE({g.name})", dims, diff, top)
    return CEData(g=g, top=top, spaces=spaces, complex=cx)


def ce_map(lm: LieMeasuring, x: dict, src: CEData, tgt: CEData, n: int) -> QMat:
    """Slotwise Sweedler action on wedge coordinates."""
    require_cocommutative(lm, f"the wedge chain map of {lm.name}")
    if n == 0:
        eps = sum((lm.coalgebra.counit[c] * v for c, v in x.items()), F0)
        return QMat.from_entries(1, 1, {(0, 0): eps} if eps else {})
    T = QMat.zero(lm.target.dim ** n, lm.source.dim ** n)
    for legs, c in lm.coalgebra.delta_power(x, n - 1).items():
        term = lm.psi[legs[0]]
        for s in range(1, n):
            term = term.kron(lm.psi[legs[s]])
        T = T + term.scale(c)
    return induced_on_quotient(
        T,
        src.spaces[n],
        tgt.spaces[n],
        context=f"wedge chain map of {lm.name} at degree {n}",
    )


@dataclass
class CLData:
    """Leibniz chains of a bracket algebra on plain tensor powers."""

    g: object
    top: int
    complex: ChainComplex


def cl_data(g, top: int) -> CLData:
    d = g.dim
    dims = [check_dim(d ** n, f"tensor^{n} {g.name}") for n in range(top + 1)]
    diff = {n: _tensor_diff_tensor(g, n) for n in range(1, top + 1)}
    cx = ChainComplex(f"CL({g.name})", dims, diff, top)
    return CLData(g=g, top=top, complex=cx)


def cl_map(lm: LieMeasuring, x: dict, n: int) -> QMat:
    """Slotwise Sweedler action on tensor power coordinates."""
    if n == 0:
        eps = sum((lm.coalgebra.counit[c] * v for c, v in x.items()), F0)
        return QMat.from_entries(1, 1, {(0, 0): eps} if eps else {})
    check_dim(lm.source.dim ** n, f"tensor^{n} {lm.source.name}")
    check_dim(lm.target.dim ** n, f"tensor^{n} {lm.target.name}")
    T = QMat.zero(lm.target.dim ** n, lm.source.dim ** n)
    for legs, c in lm.coalgebra.delta_power(x, n - 1).items():
        term = lm.psi[legs[0]]
        for s in range(1, n):
            term = term.kron(lm.psi[legs[s]])
        T = T + term.scale(c)
    return T


def wedge_split(ce: CEData, p: int, q: int) -> QMat:
    """Unshuffle a degree p + q wedge into wedge^p tensor wedge^q.

    Output coordinates are the Kronecker pairing of the two wedge
    quotients; the map is checked to kill the source wedge relations.
    """
    n = p + q
    d = ce.g.dim
    acc = QMat.zero(d ** n, d ** n)
    for S in combinations(range(n), p):
        Tc = [s for s in range(n) if s not in S]
        sigma = [0] * n
        for k, s in enumerate(S):
            sigma[s] = k
        for k, t in enumerate(Tc):
            sigma[t] = p + k
        sign = perm_sign(tuple(sigma))
        acc = acc + slots_perm_matrix(d, n, tuple(sigma)).scale(F1 * sign)
    proj = ce.spaces[p].project().kron(ce.spaces[q].project())
    out = proj @ acc
    if not (out @ ce.spaces[n].relation_columns()).is_zero():
        raise VerificationFailure(
            f"unshuffle of {ce.g.name} at ({p}, {q}) does not kill the wedge relations"
        )
    return out @ ce.spaces[n].section()


def tilde_chain_map(m: Measuring, x: dict, src: QuotientComplex, tgt: QuotientComplex, n: int) -> QMat:
    """The measured chain map on the cyclic quotients C-tilde."""
    require_cocommutative(m, f"the cyclic quotient map of {m.name}")
    return induced_on_quotient(
        chain_map(m, x, n),
        src.spaces[n],
        tgt.spaces[n],
        context=f"cyclic quotient map of {m.name} at degree {n}",
    )


class MatrixLadder:
    """Wedge chains of gl_r(A) over the cyclic quotient chains of M_r(A).

    theta antisymmetrizes a degree n + 1 wedge into a cyclic word of
    length n + 1; trace contracts the matrix indices of a cyclic word
    down to the base algebra. Both squares against the differentials are
    enforced when the maps are built.
    """

    def __init__(self, A: Algebra, r: int, top: int):
        self.A = A
        self.r = r
        self.top = top
        self.M = matrix_algebra(A, r)
        self.g = lie_from_algebra(self.M, name=f"gl{r}({A.name})")
        self.ops = ChainOps(self.M)
        self.base_ops = ChainOps(A)
        self.ce = ce_data(self.g, top + 1)
        self.tilde = tilde_complex(self.ops, top)
        self.base_tilde = tilde_complex(self.base_ops, top)
        self._theta: dict = {}
        self._trace: dict = {}

    def theta(self, n: int) -> QMat:
        """Antisymmetrization wedge^{n+1} gl_r(A) -> C-tilde_n(M_r(A))."""
        if n not in self._theta:
            if not 0 <= n <= self.top:
                raise ValueError(f"theta is built for degrees 0..{self.top}")
            d = self.M.dim
            T = QMat.zero(d ** (n + 1), d ** (n + 1))
            for sig in permutations(range(n)):
                T = T + tail_perm_matrix(d, n, sig).scale(F1 * perm_sign(sig))
            out = induced_on_quotient(
                T,
                self.ce.spaces[n + 1],
                self.tilde.spaces[n],
                context=f"antisymmetrization into cyclic words of {self.M.name} at degree {n}",
            )
            if n >= 1:
                lhs = self.tilde.diff[n] @ out
                rhs = self.theta(n - 1) @ self.ce.complex.diff[n + 1]
                if lhs != rhs:
                    raise VerificationFailure(
                        f"antisymmetrization square fails for {self.M.name} at degree {n}"
                    )
            self._theta[n] = out
        return self._theta[n]

    def trace(self, n: int) -> QMat:
        """Generalized trace C-tilde_n(M_r(A)) -> C-tilde_n(A)."""
        if n not in self._trace:
            if not 0 <= n <= self.top:
                raise ValueError(f"trace is built for degrees 0..{self.top}")
            r, d = self.r, self.A.dim
            dM = self.M.dim
            entries: dict = {}
            for col in range(dM ** (n + 1)):
                w = _word_at(col, dM, n + 1)
                ps = [m // (r * d) for m in w]
                qs = [(m // d) % r for m in w]
                if all(qs[s] == ps[(s + 1) % (n + 1)] for s in range(n + 1)):
                    entries[(_index_of([m % d for m in w], d), col)] = F1
            T = QMat.from_entries(d ** (n + 1), dM ** (n + 1), entries)
            out = induced_on_quotient(
                T,
                self.tilde.spaces[n],
                self.base_tilde.spaces[n],
                context=f"generalized trace of {self.M.name} at degree {n}",
            )
            if n >= 1:
                lhs = self.base_tilde.diff[n] @ out
                rhs = self.trace(n - 1) @ self.tilde.diff[n]
                if lhs != rhs:
                    raise VerificationFailure(
                        f"generalized trace square fails for {self.M.name} at degree {n}"
                    )
            self._trace[n] = out
        return self._trace[n]


def field_matrix_units(A: Algebra, r: int) -> list:
    """Coordinates of the scalar matrix units inside gl_r(A)."""
    d = A.dim
    out = []
    for u in range(r):
        for v in range(r):
            vec = {}
            for k, c in A.unit_vec().items():
                vec[(u * r + v) * d + k] = c
            out.append(vec)
    return out


def _diagonal_action(g: LieAlgebra, E: dict, n: int) -> QMat:
    """ad_E acting as a derivation across the n tensor slots."""
    d = g.dim
    adE = g.ad(E)
    total = QMat.zero(d ** n, d ** n)
    for s in range(n):
        term = adE if s == 0 else QMat.identity(d ** s).kron(adE)
        if s < n - 1:
            term = term.kron(QMat.identity(d ** (n - 1 - s)))
        total = total + term
    return total


@dataclass
class CoinvariantData:
    """Adjoint coinvariants of the wedge or tensor chains of gl_r(A)."""

    g: LieAlgebra
    top: int
    wedge: bool
    spaces: list
    complex: ChainComplex


def _coinvariant_data(A: Algebra, r: int, top: int, wedge: bool) -> CoinvariantData:
    g = lie_from_algebra(matrix_algebra(A, r), name=f"gl{r}({A.name})")
    d = g.dim
    units = field_matrix_units(A, r)
    spaces = []
    for n in range(top + 1):
        amb = check_dim(d ** n, f"tensor^{n} {g.name}")
        rels = []
        if wedge and n >= 2:
            eye = QMat.identity(amb)
            rels.extend(eye + slots_perm_matrix(d, n, _adjacent_swap(n, s)) for s in range(n - 1))
        if n >= 1:
            rels.extend(_diagonal_action(g, E, n) for E in units)
        spaces.append(QuotientSpace(amb, QMat.hstack(rels) if rels else QMat.zero(amb, 0)))
    kind = "wedge" if wedge else "tensor"
    diff = {}
    for n in range(1, top + 1):
        T = _wedge_diff_tensor(g, n) if wedge else _tensor_diff_tensor(g, n)
        diff[n] = induced_on_quotient(
            T,
            spaces[n],
            spaces[n - 1],
            context=f"coinvariant {kind} differential of {g.name} at degree {n}",
        )
    dims = [s.dim for s in spaces]
    cx = ChainComplex(f"{kind} coinvariants of {g.name}", dims, diff, top)
    return CoinvariantData(g=g, top=top, wedge=wedge, spaces=spaces, complex=cx)


def ce_coinvariants(A: Algebra, r: int, top: int) -> CoinvariantData:
    """Wedge chains of gl_r(A) modulo the adjoint action of scalar matrices."""
    return _coinvariant_data(A, r, top, wedge=True)


def cl_coinvariants(A: Algebra, r: int, top: int) -> CoinvariantData:
    """Tensor chains of gl_r(A) modulo the adjoint action of scalar matrices."""
    return _coinvariant_data(A, r, top, wedge=False)


def coinvariant_projection(src: QuotientSpace, tgt: QuotientSpace, what: str) -> QMat:
    """The identity of the ambient space, from a coarser to a finer quotient."""
    return induced_on_quotient(QMat.identity(src.ambient_dim), src, tgt, context=what)


def coinvariant_map(lm: LieMeasuring, x: dict, src: CoinvariantData, tgt: CoinvariantData, n: int) -> QMat:
    """Slotwise Sweedler action descended to adjoint coinvariants."""
    require_cocommutative(lm, f"the coinvariant chain map of {lm.name}")
    if n == 0:
        eps = sum((lm.coalgebra.counit[c] * v for c, v in x.items()), F0)
        return QMat.from_entries(1, 1, {(0, 0): eps} if eps else {})
    T = QMat.zero(lm.target.dim ** n, lm.source.dim ** n)
    for legs, c in lm.coalgebra.delta_power(x, n - 1).items():
        term = lm.psi[legs[0]]
        for s in range(1, n):
            term = term.kron(lm.psi[legs[s]])
        T = T + term.scale(c)
    return induced_on_quotient(
        T,
        src.spaces[n],
        tgt.spaces[n],
        context=f"coinvariant chain map of {lm.name} at degree {n}",
    )


def block_embeddings(A: Algebra, r: int) -> tuple:
    """Top left and bottom right corner embeddings gl_r(A) -> gl_2r(A)."""
    d = A.dim
    src_dim = r * r * d
    tgt_dim = 4 * r * r * d
    e1: dict = {}
    e2: dict = {}
    for p in range(r):
        for q in range(r):
            for a in range(d):
                col = (p * r + q) * d + a
                e1[((p * 2 * r + q) * d + a, col)] = F1
                e2[(((p + r) * 2 * r + (q + r)) * d + a, col)] = F1
    return (
        QMat.from_entries(tgt_dim, src_dim, e1),
        QMat.from_entries(tgt_dim, src_dim, e2),
    )


def coinvariant_product(
    A: Algebra, fac1: CoinvariantData, fac2: CoinvariantData, tgt: CoinvariantData, p: int, q: int
) -> QMat:
    """Block-sum product on coinvariants: corner-embed and concatenate.

    fac1 and fac2 are coinvariants at matrix size r, tgt at size 2r. The
    result maps Kronecker-paired coordinates of degrees p and q to
    degree p + q, after checking the pairing kills both factors'
    relations.
    """
    r2 = fac1.g.dim // A.dim
    r = isqrt(r2)
    if r * r != r2 or tgt.g.dim != 4 * r2 * A.dim:
        raise ValueError("block-sum product needs factors at size r and target at size 2r")
    i1, i2 = block_embeddings(A, r)
    T = QMat.identity(1)
    for _ in range(p):
        T = T.kron(i1)
    for _ in range(q):
        T = T.kron(i2)
    out = tgt.spaces[p + q].project() @ T
    amb1 = fac1.spaces[p].ambient_dim
    amb2 = fac2.spaces[q].ambient_dim
    r1 = fac1.spaces[p].relation_columns()
    r2c = fac2.spaces[q].relation_columns()
    if not (out @ r1.kron(QMat.identity(amb2))).is_zero() or not (
        out @ QMat.identity(amb1).kron(r2c)
    ).is_zero():
        raise VerificationFailure(
            f"block-sum product of {fac1.g.name} at ({p}, {q}) does not kill "
            "the factor relations"
        )
    return out @ fac1.spaces[p].section().kron(fac2.spaces[q].section())


def is_long_cycle(tau: tuple) -> bool:
    m = len(tau)
    seen, k = 1, tau[0]
    while k != 1:
        seen += 1
        k = tau[k - 1]
        if seen > m:
            return False
    return seen == m


def long_cycles(m: int) -> list:
    """All m-cycles in one-line notation, sorted."""
    return sorted(t for t in permutations(range(1, m + 1)) if is_long_cycle(t))


def omega_of(sigma: tuple) -> tuple:
    """The unique conjugator fixing 1 from the standard cycle to sigma."""
    m = len(sigma)
    out, k = [], 1
    for _ in range(m):
        out.append(k)
        k = sigma[k - 1]
    w = tuple(out)
    if w[0] != 1:
        raise VerificationFailure(f"conjugator of {sigma} does not fix 1")
    for a in range(1, m + 1):
        c = a + 1 if a < m else 1
        if w[c - 1] != sigma[w[a - 1] - 1]:
            raise VerificationFailure(f"conjugator of {sigma} does not conjugate the standard cycle")
    return w


def _perm_inverse(tau: tuple) -> tuple:
    out = [0] * len(tau)
    for k, v in enumerate(tau, 1):
        out[v - 1] = k
    return tuple(out)


def _perm_action(d: int, tau: tuple) -> QMat:
    """Position permutation on a tensor power: letter p moves to slot tau(p)."""
    return slots_perm_matrix(d, len(tau), tuple(t - 1 for t in tau))


def _face_cycle(sigma: tuple, i: int) -> tuple:
    """Delete element i + 1 from the cycle and renumber order-preservingly."""
    m = len(sigma)
    e = i + 1
    out = [0] * (m - 1)
    for a in range(1, m + 1):
        if a == e:
            continue
        b = sigma[a - 1]
        if b == e:
            b = sigma[b - 1]
        out[(a if a < e else a - 1) - 1] = b if b < e else b - 1
    return tuple(out)


class CyclicWordComplex:
    """Cyclic words: one tensor word per long cycle, conjugated to standard form.

    Degree n holds a copy of the (n+1)-fold tensor power for every
    (n+1)-cycle. Faces delete a letter from the cycle and merge the
    matching tensor slots after untwisting by the conjugator; the
    presimplicial identities are checked at construction. The standard
    cycle block embeds the Hochschild chains and the signed untwisting
    retracts onto them.
    """

    def __init__(self, A: Algebra, top: int):
        self.A = A
        self.top = top
        self.ops = ChainOps(A)
        d = A.dim
        self.cycles = [long_cycles(n + 1) for n in range(top + 1)]
        self.cycle_index = [
            {s: i for i, s in enumerate(cs)} for cs in self.cycles
        ]
        self.dims = [
            check_dim(len(self.cycles[n]) * d ** (n + 1), f"cyclic words of {A.name} at degree {n}")
            for n in range(top + 1)
        ]
        self._faces: dict = {}
        for n in range(1, top + 1):
            for i in range(n + 1):
                self._faces[(n, i)] = self._build_face(n, i)
        for n in range(2, top + 1):
            for j in range(1, n + 1):
                for i in range(j):
                    lhs = self._faces[(n - 1, i)] @ self._faces[(n, j)]
                    rhs = self._faces[(n - 1, j - 1)] @ self._faces[(n, i)]
                    if lhs != rhs:
                        raise VerificationFailure(
                            f"cyclic word faces of {A.name} fail the presimplicial "
                            f"identity at ({i}, {j}) in degree {n}"
                        )
        self.complex = ChainComplex(
            f"cyclic words of {A.name}",
            self.dims,
            {n: self.boundary(n) for n in range(1, top + 1)},
            top,
        )
        for n in range(1, top + 1):
            if self.boundary(n) @ self.iota(n) != self.iota(n - 1) @ self.ops.boundary(n):
                raise VerificationFailure(
                    f"standard cycle block of {A.name} is not a chain map at degree {n}"
                )
        for n in range(top + 1):
            if self.zeta(n) @ self.iota(n) != QMat.identity(d ** (n + 1)):
                raise VerificationFailure(
                    f"untwisting does not retract the standard cycle block of {A.name} "
                    f"at degree {n}"
                )

    def _block(self, n: int, row_cycle: int, col_cycle: int, m: QMat, out: dict) -> None:
        d = self.A.dim
        roff = row_cycle * d ** n
        coff = col_cycle * d ** (n + 1)
        for c, col in enumerate(m.cols):
            for r, v in col.items():
                out[(roff + r, coff + c)] = v

    def _build_face(self, n: int, i: int) -> QMat:
        d = self.A.dim
        F = self.ops.face(n, i)
        entries: dict = {}
        for ci, sig in enumerate(self.cycles[n]):
            ds = _face_cycle(sig, i)
            block = (
                _perm_action(d, omega_of(ds))
                @ F
                @ _perm_action(d, _perm_inverse(omega_of(sig)))
            )
            self._block(n, self.cycle_index[n - 1][ds], ci, block, entries)
        return QMat.from_entries(self.dims[n - 1], self.dims[n], entries)

    def face(self, n: int, i: int) -> QMat:
        return self._faces[(n, i)]

    def boundary(self, n: int) -> QMat:
        out = QMat.zero(self.dims[n - 1], self.dims[n])
        for i in range(n + 1):
            f = self._faces[(n, i)]
            out = out + (f if i % 2 == 0 else f.scale(-F1))
        return out

    def iota(self, n: int) -> QMat:
        """Include the Hochschild chains as the standard cycle block."""
        d = self.A.dim
        std = tuple(list(range(2, n + 2)) + [1])
        off = self.cycle_index[n][std] * d ** (n + 1)
        entries = {(off + k, k): F1 for k in range(d ** (n + 1))}
        return QMat.from_entries(self.dims[n], d ** (n + 1), entries)

    def zeta(self, n: int) -> QMat:
        """Retract each block by its signed conjugator."""
        d = self.A.dim
        entries: dict = {}
        for ci, sig in enumerate(self.cycles[n]):
            w = omega_of(sig)
            sign = perm_sign(tuple(v - 1 for v in w))
            block = _perm_action(d, _perm_inverse(w)).scale(F1 * sign)
            coff = ci * d ** (n + 1)
            for c, col in enumerate(block.cols):
                for r, v in col.items():
                    entries[(r, coff + c)] = v
        return QMat.from_entries(d ** (n + 1), self.dims[n], entries)

    def measured(self, m: Measuring, x: dict, n: int) -> QMat:
        """Blockwise Sweedler action, one Hochschild chain map per cycle."""
        cm = chain_map(m, x, n)
        return QMat.block_diag([cm] * len(self.cycles[n]))
