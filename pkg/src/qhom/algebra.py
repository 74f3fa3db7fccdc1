"""Finite-dimensional algebras, coalgebras, and measurings over Q.

Everything is given by structure constants on a chosen basis.  ``Algebra``
multiplication is ``mult[i][j][k]``: the coefficient of ``e_k`` in
``e_i * e_j``.  ``Coalgebra`` comultiplication is ``comult[i][j][k]``: the
coefficient of ``e_j (x) e_k`` in ``delta(e_i)``.  A ``Measuring`` assigns to
every coalgebra basis element ``x`` a linear map ``phi[x]`` from the source
algebra to the target algebra, subject to

    phi(x)(ab) = sum phi(x_(1))(a) phi(x_(2))(b),    phi(x)(1) = counit(x) 1.

Validation raises ``ValidationError`` (or a subclass) with a concrete witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotCocommutative, NotCommutative, NotInvolutive, ValidationError
from .linalg import QMat


def _frac_vec(v) -> list[Fraction]:
    return [Fraction(x) for x in v]


@dataclass
class Algebra:
    """Associative unital algebra by structure constants."""

    name: str
    dim: int
    mult: list[list[list[Fraction]]]
    unit: list[Fraction]
    commutative: bool = False
    involution: QMat | None = None
    basis_names: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.basis_names:
            self.basis_names = [f"e{i}" for i in range(self.dim)]
        self.mult = [[_frac_vec(self.mult[i][j]) for j in range(self.dim)] for i in range(self.dim)]
        self.unit = _frac_vec(self.unit)

    # ------------------------------------------------------------- algebra ops

    def multiply(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, cu in u.items():
            if not cu:
                continue
            for j, cv in v.items():
                if not cv:
                    continue
                for k, cf in enumerate(self.mult[i][j]):
                    if cf:
                        w = out.get(k, 0) + cu * cv * cf
                        if w:
                            out[k] = w
                        else:
                            out.pop(k, None)
        return out

    def unit_vec(self) -> dict:
        return {i: c for i, c in enumerate(self.unit) if c}

    def mult_matrix(self) -> QMat:
        """Multiplication as a matrix A (x) A -> A; column (i,j) is e_i e_j."""
        cols = []
        for i in range(self.dim):
            for j in range(self.dim):
                cols.append({k: cf for k, cf in enumerate(self.mult[i][j]) if cf})
        return QMat(self.dim, self.dim * self.dim, cols)

    def unit_matrix(self) -> QMat:
        """The unit as a column Q -> A."""
        return QMat.column(self.dim, self.unit_vec())

    def commutator(self, u: dict, v: dict) -> dict:
        out = self.multiply(u, v)
        for k, c in self.multiply(v, u).items():
            w = out.get(k, 0) - c
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return out

    # ------------------------------------------------------------ validation

    def validate(self) -> None:
        d = self.dim
        if d <= 0:
            raise ValidationError(f"algebra {self.name}: dimension must be positive")
        if len(self.mult) != d or any(len(r) != d for r in self.mult):
            raise ValidationError(f"algebra {self.name}: multiplication table has wrong shape")
        if any(len(self.mult[i][j]) != d for i in range(d) for j in range(d)):
            raise ValidationError(f"algebra {self.name}: multiplication table has wrong shape")
        if len(self.unit) != d:
            raise ValidationError(f"algebra {self.name}: unit vector has wrong length")
        names = self.basis_names
        one = self.unit_vec()
        for i in range(d):
            ei = {i: Fraction(1)}
            left = self.multiply(one, ei)
            right = self.multiply(ei, one)
            if left != ei or right != ei:
                raise ValidationError(f"algebra {self.name}: unit axiom fails on {names[i]}")
        for i in range(d):
            for j in range(d):
                uv = {k: c for k, c in enumerate(self.mult[i][j]) if c}
                for k in range(d):
                    lhs = self.multiply(uv, {k: Fraction(1)})
                    vw = {m: c for m, c in enumerate(self.mult[j][k]) if c}
                    rhs = self.multiply({i: Fraction(1)}, vw)
                    if lhs != rhs:
                        raise ValidationError(
                            f"algebra {self.name}: associativity fails on "
                            f"({names[i]}, {names[j]}, {names[k]})"
                        )
        if self.commutative:
            for i in range(d):
                for j in range(i + 1, d):
                    if self.mult[i][j] != self.mult[j][i]:
                        raise NotCommutative(
                            f"algebra {self.name} is flagged commutative but "
                            f"{names[i]}*{names[j]} != {names[j]}*{names[i]}"
                        )
        if self.involution is not None:
            self._validate_involution()

    def _validate_involution(self) -> None:
        J = self.involution
        d = self.dim
        names = self.basis_names
        if J.nrows != d or J.ncols != d:
            raise NotInvolutive(f"algebra {self.name}: involution matrix has wrong shape")
        if (J @ J) != QMat.identity(d):
            raise NotInvolutive(f"algebra {self.name}: involution squared is not the identity")
        if J.apply(self.unit_vec()) != self.unit_vec():
            raise NotInvolutive(f"algebra {self.name}: involution does not fix the unit")
        for i in range(d):
            for j in range(d):
                lhs = J.apply(self.multiply({i: Fraction(1)}, {j: Fraction(1)}))
                rhs = self.multiply(J.apply({j: Fraction(1)}), J.apply({i: Fraction(1)}))
                if lhs != rhs:
                    raise NotInvolutive(
                        f"algebra {self.name}: involution is not an antihomomorphism on "
                        f"({names[i]}, {names[j]})"
                    )

    def is_actually_commutative(self) -> bool:
        return all(
            self.mult[i][j] == self.mult[j][i]
            for i in range(self.dim)
            for j in range(i + 1, self.dim)
        )


@dataclass
class Coalgebra:
    """Coassociative counital coalgebra by structure constants."""

    name: str
    dim: int
    comult: list[list[list[Fraction]]]
    counit: list[Fraction]
    cocommutative: bool = False
    basis_names: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.basis_names:
            self.basis_names = [f"x{i}" for i in range(self.dim)]
        self.comult = [
            [_frac_vec(self.comult[i][j]) for j in range(self.dim)] for i in range(self.dim)
        ]
        self.counit = _frac_vec(self.counit)

    def delta(self, x: dict) -> dict:
        """Comultiplication of a sparse vector, as {(j, k): coeff}."""
        out: dict = {}
        for i, c in x.items():
            if not c:
                continue
            for j in range(self.dim):
                row = self.comult[i][j]
                for k, cf in enumerate(row):
                    if cf:
                        w = out.get((j, k), 0) + c * cf
                        if w:
                            out[(j, k)] = w
                        else:
                            out.pop((j, k), None)
        return out

    def delta_power(self, x: dict, n: int) -> dict:
        """Iterated comultiplication: {(i_1, ..., i_{n+1}): coeff} with n cuts."""
        out = {(i,): c for i, c in x.items() if c}
        for _ in range(n):
            nxt: dict = {}
            for word, c in out.items():
                last = word[-1]
                for j in range(self.dim):
                    row = self.comult[last][j]
                    for k, cf in enumerate(row):
                        if cf:
                            nw = word[:-1] + (j, k)
                            w = nxt.get(nw, 0) + c * cf
                            if w:
                                nxt[nw] = w
                            else:
                                nxt.pop(nw, None)
            out = nxt
        return out

    def validate(self) -> None:
        d = self.dim
        if d <= 0:
            raise ValidationError(f"coalgebra {self.name}: dimension must be positive")
        if len(self.comult) != d or any(len(r) != d for r in self.comult):
            raise ValidationError(f"coalgebra {self.name}: comultiplication has wrong shape")
        if any(len(self.comult[i][j]) != d for i in range(d) for j in range(d)):
            raise ValidationError(f"coalgebra {self.name}: comultiplication has wrong shape")
        if len(self.counit) != d:
            raise ValidationError(f"coalgebra {self.name}: counit has wrong length")
        names = self.basis_names
        for i in range(d):
            # counit axioms
            left: dict = {}
            right: dict = {}
            for j in range(d):
                for k, cf in enumerate(self.comult[i][j]):
                    if cf:
                        w = left.get(k, 0) + self.counit[j] * cf
                        if w:
                            left[k] = w
                        else:
                            left.pop(k, None)
                        w = right.get(j, 0) + self.counit[k] * cf
                        if w:
                            right[j] = w
                        else:
                            right.pop(j, None)
            if left != {i: Fraction(1)} or right != {i: Fraction(1)}:
                raise ValidationError(
                    f"coalgebra {self.name}: counit axiom fails on {names[i]}"
                )
            # coassociativity
            lhs: dict = {}
            rhs: dict = {}
            for j in range(d):
                for k, cf in enumerate(self.comult[i][j]):
                    if not cf:
                        continue
                    for p in range(d):
                        for q, cf2 in enumerate(self.comult[j][p]):
                            if cf2:
                                key = (p, q, k)
                                w = lhs.get(key, 0) + cf * cf2
                                if w:
                                    lhs[key] = w
                                else:
                                    lhs.pop(key, None)
                        for q, cf2 in enumerate(self.comult[k][p]):
                            if cf2:
                                key = (j, p, q)
                                w = rhs.get(key, 0) + cf * cf2
                                if w:
                                    rhs[key] = w
                                else:
                                    rhs.pop(key, None)
            if lhs != rhs:
                raise ValidationError(
                    f"coalgebra {self.name}: coassociativity fails on {names[i]}"
                )
        if self.cocommutative:
            for i in range(d):
                for j in range(d):
                    for k in range(d):
                        if self.comult[i][j][k] != self.comult[i][k][j]:
                            raise NotCocommutative(
                                f"coalgebra {self.name} is flagged cocommutative but "
                                f"delta({names[i]}) is not symmetric at "
                                f"({names[j]}, {names[k]})"
                            )


@dataclass
class Measuring:
    """A coalgebra-indexed family of linear maps measuring one algebra to another."""

    name: str
    coalgebra: Coalgebra
    source: Algebra
    target: Algebra
    phi: list[QMat]

    def phi_of(self, x: dict) -> QMat:
        out = QMat.zero(self.target.dim, self.source.dim)
        for i, c in x.items():
            if c:
                out = out + self.phi[i].scale(c)
        return out

    def validate(self) -> None:
        C, A, Ap = self.coalgebra, self.source, self.target
        if len(self.phi) != C.dim:
            raise ValidationError(f"measuring {self.name}: needs one map per coalgebra basis element")
        for i, m in enumerate(self.phi):
            if m.nrows != Ap.dim or m.ncols != A.dim:
                raise ValidationError(
                    f"measuring {self.name}: phi[{C.basis_names[i]}] has wrong shape"
                )
        for c in range(C.dim):
            # unit axiom
            got = self.phi[c].apply(A.unit_vec())
            want = {k: C.counit[c] * v for k, v in Ap.unit_vec().items() if C.counit[c] * v}
            if got != want:
                raise ValidationError(
                    f"measuring {self.name}: phi({C.basis_names[c]})(1) != "
                    f"counit({C.basis_names[c]}) 1"
                )
            # product axiom on basis pairs
            for a in range(A.dim):
                for b in range(A.dim):
                    ab = {k: cf for k, cf in enumerate(A.mult[a][b]) if cf}
                    lhs = self.phi[c].apply(ab)
                    rhs: dict = {}
                    for j in range(C.dim):
                        for k, cf in enumerate(C.comult[c][j]):
                            if not cf:
                                continue
                            pa = self.phi[j].apply({a: Fraction(1)})
                            pb = self.phi[k].apply({b: Fraction(1)})
                            for t, v in Ap.multiply(pa, pb).items():
                                w = rhs.get(t, 0) + cf * v
                                if w:
                                    rhs[t] = w
                                else:
                                    rhs.pop(t, None)
                    if lhs != rhs:
                        raise ValidationError(
                            f"measuring {self.name}: product axiom fails at "
                            f"x={C.basis_names[c]}, a={A.basis_names[a]}, b={A.basis_names[b]}"
                        )

    def respects_involutions(self) -> bool:
        """Whether phi(x)(r-hat) = (phi(x)(r))-hat for all basis x, r."""
        JA, JB = self.source.involution, self.target.involution
        if JA is None or JB is None:
            raise ValidationError(
                f"measuring {self.name}: both algebras need involutions for this check"
            )
        return all((self.phi[c] @ JA) == (JB @ self.phi[c]) for c in range(self.coalgebra.dim))

    def involution_witness(self) -> str | None:
        """A witness string if some phi(x) fails involution compatibility, else None."""
        JA, JB = self.source.involution, self.target.involution
        if JA is None or JB is None:
            raise ValidationError(
                f"measuring {self.name}: both algebras need involutions for this check"
            )
        for c in range(self.coalgebra.dim):
            lhs = self.phi[c] @ JA
            rhs = JB @ self.phi[c]
            if lhs != rhs:
                j = next(j for j in range(lhs.ncols) if lhs.cols[j] != rhs.cols[j])
                return (
                    f"x={self.coalgebra.basis_names[c]}, r={self.source.basis_names[j]}: "
                    f"phi(x)(r-hat) != (phi(x)(r))-hat"
                )
        return None


# -------------------------------------------------------------- constructors


def matrix_algebra(A: Algebra, r: int) -> Algebra:
    """M_r(A) on the basis E_pq (x) e_a, index (p*r + q)*dim(A) + a."""
    if r < 1:
        raise ValidationError("matrix size must be at least 1")
    d = A.dim
    dim = r * r * d

    def idx(p, q, a):
        return (p * r + q) * d + a

    zero = [Fraction(0)] * dim
    mult = [[list(zero) for _ in range(dim)] for _ in range(dim)]
    for p in range(r):
        for q in range(r):
            for a in range(d):
                for s in range(r):
                    for t in range(r):
                        for b in range(d):
                            if q != s:
                                continue
                            row = A.mult[a][b]
                            tgtbase = idx(p, t, 0)
                            src1, src2 = idx(p, q, a), idx(s, t, b)
                            for k, cf in enumerate(row):
                                if cf:
                                    mult[src1][src2][tgtbase + k] += cf
    unit = list(zero)
    for p in range(r):
        for a, cf in enumerate(A.unit):
            unit[idx(p, p, a)] += cf
    inv = None
    if A.involution is not None:
        cols = []
        for p in range(r):
            for q in range(r):
                for a in range(d):
                    hat = A.involution.apply({a: Fraction(1)})
                    cols.append({idx(q, p, b): c for b, c in hat.items()})
        inv = QMat(dim, dim, cols)
    names = [
        f"E{p + 1}{q + 1}({A.basis_names[a]})"
        for p in range(r)
        for q in range(r)
        for a in range(d)
    ]
    return Algebra(
        name=f"M{r}({A.name})",
        dim=dim,
        mult=mult,
        unit=unit,
        commutative=(r == 1 and A.commutative),
        involution=inv,
        basis_names=names,
    )


def matrix_measuring(m: Measuring, r: int) -> Measuring:
    """Entrywise extension M_r(A) -> M_r(A') of a measuring, same coalgebra."""
    src = matrix_algebra(m.source, r)
    tgt = matrix_algebra(m.target, r)
    phi = [QMat.identity(r * r).kron(m.phi[c]) for c in range(m.coalgebra.dim)]
    return Measuring(
        name=f"M{r}({m.name})", coalgebra=m.coalgebra, source=src, target=tgt, phi=phi
    )


def trivial_coalgebra() -> Coalgebra:
    """One grouplike element: delta(x) = x (x) x, counit(x) = 1."""
    return Coalgebra(
        name="trivial",
        dim=1,
        comult=[[[Fraction(1)]]],
        counit=[Fraction(1)],
        cocommutative=True,
        basis_names=["g"],
    )


def derivation_coalgebra() -> Coalgebra:
    """Span{g, d}: delta(g) = g(x)g, delta(d) = g(x)d + d(x)g; counit 1, 0."""
    z, o = Fraction(0), Fraction(1)
    comult = [
        [[o, z], [z, z]],  # delta(g) = g(x)g
        [[z, o], [o, z]],  # delta(d) = g(x)d + d(x)g
    ]
    return Coalgebra(
        name="derivation",
        dim=2,
        comult=comult,
        counit=[o, z],
        cocommutative=True,
        basis_names=["g", "d"],
    )


def identity_measuring(A: Algebra, name: str | None = None) -> Measuring:
    return Measuring(
        name=name if name is not None else f"idOn{A.name}",
        coalgebra=trivial_coalgebra(),
        source=A,
        target=A,
        phi=[QMat.identity(A.dim)],
    )


def algebra_map_measuring(name: str, A: Algebra, B: Algebra, f: QMat) -> Measuring:
    """A single algebra homomorphism f packaged over the one-grouplike coalgebra."""
    return Measuring(name=name, coalgebra=trivial_coalgebra(), source=A, target=B, phi=[f])


def derivation_measuring(name: str, A: Algebra, B: Algebra, f: QMat, D: QMat) -> Measuring:
    """An algebra map f with an f-derivation D: D(ab) = f(a)D(b) + D(a)f(b)."""
    return Measuring(
        name=name, coalgebra=derivation_coalgebra(), source=A, target=B, phi=[f, D]
    )
