"""Dihedral chain complexes of an involutive algebra.

The signed cyclic rotation on chains extends to a dihedral group action
by a signed reversal twisted with the involution. Chains modulo that
action still carry the Hochschild boundary, and measured maps descend
whenever the measuring respects the involutions. On a matrix algebra,
the transpose-conjugate and symplectic involutions cut out fixed-point
Lie subalgebras whose wedge chains ladder down to the dihedral quotient.
Group relations and every descent are checked exactly at build time.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Algebra, Measuring, matrix_algebra, matrix_measuring
from .cyclic import (
    ChainOps,
    QuotientComplex,
    chain_map,
    check_dim,
    require_cocommutative,
)
from .errors import NotInvolutive, VerificationFailure
from .lie import LieAlgebra, LieMeasuring
from .linalg import QMat, QuotientSpace, induced_on_quotient
from .products import slots_perm_matrix

F0 = Fraction(0)
F1 = Fraction(1)


def require_involutive(A: Algebra) -> None:
    if A.involution is None:
        raise NotInvolutive(f"algebra {A.name} has no involution")


def conjugation_tensor(A: Algebra, n: int) -> QMat:
    """The involution applied in every slot of C_n."""
    require_involutive(A)
    out = A.involution
    for _ in range(n):
        out = out.kron(A.involution)
    return out


def reversal_op(A: Algebra, n: int) -> QMat:
    """v_n: conjugate every entry, fix slot 0, reverse the tail, and sign.

    The sign is -1 exactly when n(n+1)/2 is odd.
    """
    d = A.dim
    sigma = [0] * (n + 1)
    for s in range(1, n + 1):
        sigma[s] = n + 1 - s
    P = slots_perm_matrix(d, n + 1, tuple(sigma))
    sign = -F1 if (n * (n + 1) // 2) % 2 else F1
    return (P @ conjugation_tensor(A, n)).scale(sign)


class DihedralData:
    """Chains modulo the dihedral action, with the induced boundary.

    Degree n is the cokernel of [(1 - u_n) | (1 - v_n)] where u_n is the
    signed cyclic rotation and v_n the signed conjugating reversal. The
    group relations u^{n+1} = 1, v^2 = 1, v u v = u^{-1} are checked per
    degree, and the boundary is induced with its descent verified.
    """

    def __init__(self, A: Algebra, top: int):
        require_involutive(A)
        self.A = A
        self.top = top
        self.ops = ChainOps(A)
        d = A.dim
        self._u = {}
        self._v = {}
        spaces = []
        for n in range(top + 1):
            dim = check_dim(d ** (n + 1), f"C_{n}({A.name})")
            u = self.ops.cyclic(n)
            v = reversal_op(A, n)
            acc = QMat.identity(dim)
            for _ in range(n + 1):
                acc = u @ acc
            if acc != QMat.identity(dim):
                raise VerificationFailure(
                    f"rotation of {A.name} does not have order {n + 1} at degree {n}"
                )
            if v @ v != QMat.identity(dim):
                raise VerificationFailure(
                    f"reversal of {A.name} is not an involution at degree {n}"
                )
            uinv = QMat.identity(dim)
            for _ in range(n):
                uinv = u @ uinv
            if v @ u @ v != uinv:
                raise VerificationFailure(
                    f"reversal of {A.name} does not invert the rotation at degree {n}"
                )
            self._u[n] = u
            self._v[n] = v
            eye = QMat.identity(dim)
            spaces.append(QuotientSpace(dim, QMat.hstack([eye - u, eye - v])))
        diff = {}
        for n in range(1, top + 1):
            diff[n] = induced_on_quotient(
                self.ops.boundary(n),
                spaces[n],
                spaces[n - 1],
                context=f"b on the dihedral quotient of {A.name} at degree {n}",
            )
        dims = [s.dim for s in spaces]
        self.spaces = spaces
        self.complex = QuotientComplex(
            f"dihedral chains of {A.name}", dims, diff, top, spaces=spaces
        )

    def u(self, n: int) -> QMat:
        return self._u[n]

    def v(self, n: int) -> QMat:
        return self._v[n]


def dihedral_map(m: Measuring, x: dict, src: DihedralData, tgt: DihedralData, n: int) -> QMat:
    """The measured chain map on dihedral quotients.

    Needs a cocommutative coalgebra and a measuring that respects the
    involutions; the chain-level intertwining with both generators is
    checked before descending.
    """
    require_cocommutative(m, f"the dihedral map of {m.name}")
    witness = m.involution_witness()
    if witness is not None:
        raise NotInvolutive(f"measuring {m.name}: {witness}")
    cm = chain_map(m, x, n)
    if cm @ src.u(n) != tgt.u(n) @ cm:
        raise VerificationFailure(
            f"measured map of {m.name} does not intertwine the rotations at degree {n}"
        )
    if cm @ src.v(n) != tgt.v(n) @ cm:
        raise VerificationFailure(
            f"measured map of {m.name} does not intertwine the reversals at degree {n}"
        )
    return induced_on_quotient(
        cm,
        src.spaces[n],
        tgt.spaces[n],
        context=f"dihedral map of {m.name} at degree {n}",
    )


def dihedral_projection(tilde_space: QuotientSpace, dd: DihedralData, n: int) -> QMat:
    """The canonical epimorphism from the cyclic quotient to the dihedral one."""
    return induced_on_quotient(
        QMat.identity(tilde_space.ambient_dim),
        tilde_space,
        dd.spaces[n],
        context=f"projection onto the dihedral quotient of {dd.A.name} at degree {n}",
    )


def transpose_conjugate(A: Algebra, r: int) -> QMat:
    """E_pq (x) a -> E_qp (x) a-hat on matrix coordinates."""
    require_involutive(A)
    d = A.dim
    dM = r * r * d
    entries: dict = {}
    for p in range(r):
        for q in range(r):
            for a in range(d):
                col = (p * r + q) * d + a
                for k, c in A.involution.col(a).items():
                    entries[((q * r + p) * d + k, col)] = c
    T = QMat.from_entries(dM, dM, entries)
    if T @ T != QMat.identity(dM):
        raise VerificationFailure(
            f"transpose-conjugate of M_{r}({A.name}) is not an involution"
        )
    return T


def _const_left_mult(A: Algebra, r: int, g: list) -> QMat:
    """Left multiplication by a scalar matrix g on M_r(A) coordinates."""
    d = A.dim
    dM = r * r * d
    entries: dict = {}
    for p in range(r):
        for q in range(r):
            for a in range(d):
                col = (p * r + q) * d + a
                for u in range(r):
                    c = g[u][p]
                    if c:
                        key = ((u * r + q) * d + a, col)
                        entries[key] = entries.get(key, F0) + c
    return QMat.from_entries(dM, dM, entries)


def _const_right_mult(A: Algebra, r: int, g: list) -> QMat:
    """Right multiplication by a scalar matrix g on M_r(A) coordinates."""
    d = A.dim
    dM = r * r * d
    entries: dict = {}
    for p in range(r):
        for q in range(r):
            for a in range(d):
                col = (p * r + q) * d + a
                for v in range(r):
                    c = g[q][v]
                    if c:
                        key = ((p * r + v) * d + a, col)
                        entries[key] = entries.get(key, F0) + c
    return QMat.from_entries(dM, dM, entries)


def standard_symplectic_form(r: int) -> list:
    """Block diagonal sum of r copies of [[0, 1], [-1, 0]], as a 2r matrix."""
    J = [[F0] * (2 * r) for _ in range(2 * r)]
    for k in range(r):
        J[2 * k][2 * k + 1] = F1
        J[2 * k + 1][2 * k] = -F1
    return J


def symplectic_conjugate(A: Algebra, r: int) -> QMat:
    """alpha -> -J (t-alpha-hat) J on M_2r(A) coordinates."""
    J = standard_symplectic_form(r)
    T = transpose_conjugate(A, 2 * r)
    out = (_const_left_mult(A, 2 * r, J) @ _const_right_mult(A, 2 * r, J) @ T).scale(-F1)
    dM = 4 * r * r * A.dim
    if out @ out != QMat.identity(dM):
        raise VerificationFailure(
            f"symplectic conjugate of M_{2 * r}({A.name}) is not an involution"
        )
    return out


def _fixed_minus_one_lie(A: Algebra, s: int, T: QMat, name: str) -> tuple:
    """The Lie subalgebra of matrices with T(alpha) = -alpha.

    Returns the LieAlgebra on the kernel basis of T + 1 together with
    the basis matrix into gl_s(A) coordinates; bracket closure into the
    span is checked by solving.
    """
    M = matrix_algebra(A, s)
    basis = (T + QMat.identity(T.nrows)).kernel_basis()
    k = basis.ncols
    zero = [F0] * k
    bracket = []
    for i in range(k):
        row = []
        for j in range(k):
            w = M.commutator(basis.col(i), basis.col(j))
            try:
                coords = basis.solve(QMat.from_cols(M.dim, [w])).col(0)
            except ValueError:
                raise VerificationFailure(
                    f"{name}: bracket of basis elements {i}, {j} leaves the span"
                )
            col = list(zero)
            for l, c in coords.items():
                col[l] = c
            row.append(col)
        bracket.append(row)
    g = LieAlgebra(name=name, dim=k, bracket=bracket)
    return g, basis


def skew_lie(A: Algebra, r: int) -> tuple:
    """Matrices with t-alpha-hat = -alpha inside gl_r(A), with their basis."""
    T = transpose_conjugate(A, r)
    return _fixed_minus_one_lie(A, r, T, f"sk{r}({A.name})")


def symplectic_lie(A: Algebra, r: int) -> tuple:
    """Matrices with -J t-alpha-hat J = -alpha inside gl_2r(A), with their basis."""
    T = symplectic_conjugate(A, r)
    return _fixed_minus_one_lie(A, 2 * r, T, f"sp{2 * r}({A.name})")


def _conjugate_intertwining(m: Measuring, r: int, Tsrc: QMat, Ttgt: QMat, what: str) -> None:
    mm = matrix_measuring(m, r)
    for c in range(m.coalgebra.dim):
        if Ttgt @ mm.phi[c] != mm.phi[c] @ Tsrc:
            raise VerificationFailure(
                f"{what} is not intertwined by {m.name} at coalgebra index "
                f"{m.coalgebra.basis_names[c]}"
            )


def restricted_measuring(m: Measuring, r: int, kind: str) -> LieMeasuring:
    """Restrict a matrix measuring to the skew or symplectic subalgebras.

    The measuring must respect the involutions; the conjugation operator
    intertwining is checked at chain level, then the restricted maps are
    solved into the subalgebra bases and validated as a Lie measuring.
    """
    witness = m.involution_witness()
    if witness is not None:
        raise NotInvolutive(f"measuring {m.name}: {witness}")
    if kind == "skew":
        s = r
        Tsrc = transpose_conjugate(m.source, r)
        Ttgt = transpose_conjugate(m.target, r)
        gsrc, bsrc = skew_lie(m.source, r)
        gtgt, btgt = skew_lie(m.target, r)
        what = f"transpose-conjugate of size {r}"
    elif kind == "symplectic":
        s = 2 * r
        Tsrc = symplectic_conjugate(m.source, r)
        Ttgt = symplectic_conjugate(m.target, r)
        gsrc, bsrc = symplectic_lie(m.source, r)
        gtgt, btgt = symplectic_lie(m.target, r)
        what = f"symplectic conjugate of size {2 * r}"
    else:
        raise ValueError(f"unknown restriction kind {kind!r}")
    _conjugate_intertwining(m, s, Tsrc, Ttgt, what)
    mm = matrix_measuring(m, s)
    psi = []
    for c in range(m.coalgebra.dim):
        try:
            psi.append(btgt.solve(mm.phi[c] @ bsrc))
        except ValueError:
            raise VerificationFailure(
                f"{m.name} does not map {gsrc.name} into {gtgt.name} at "
                f"coalgebra index {m.coalgebra.basis_names[c]}"
            )
    out = LieMeasuring(
        name=f"{kind}{s}({m.name})",
        coalgebra=m.coalgebra,
        source=gsrc,
        target=gtgt,
        psi=psi,
    )
    out.validate()
    return out
