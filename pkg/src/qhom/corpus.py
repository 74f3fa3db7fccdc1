"""Bundled example algebras, coalgebras, and measurings used by the verifier.

All of these are small enough that every identity check runs in exact
rational arithmetic well inside the degree caps.  ``negative_*`` constructors
return deliberately broken inputs; validation must reject them.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import (
    Algebra,
    Coalgebra,
    Measuring,
    algebra_map_measuring,
    derivation_coalgebra,
    derivation_measuring,
    identity_measuring,
    matrix_algebra,
    trivial_coalgebra,
)
from .linalg import QMat

F0, F1 = Fraction(0), Fraction(1)


def _table(dim, entries):
    """Multiplication table from {(i, j): {k: coeff}}."""
    t = [[[F0] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j), out in entries.items():
        for k, c in out.items():
            t[i][j][k] = Fraction(c)
    return t


# ----------------------------------------------------------------- algebras


def base_field() -> Algebra:
    """Q itself."""
    return Algebra(
        name="Q",
        dim=1,
        mult=[[[F1]]],
        unit=[F1],
        commutative=True,
        involution=QMat.identity(1),
        basis_names=["1"],
    )


def dual_numbers() -> Algebra:
    """Q[x]/(x^2) on basis 1, x."""
    entries = {
        (0, 0): {0: 1},
        (0, 1): {1: 1},
        (1, 0): {1: 1},
        (1, 1): {},
    }
    return Algebra(
        name="dualnum",
        dim=2,
        mult=_table(2, entries),
        unit=[F1, F0],
        commutative=True,
        involution=QMat.identity(2),
        basis_names=["1", "x"],
    )


def truncated_cubic() -> Algebra:
    """Q[x]/(x^3) on basis 1, x, x^2."""
    entries = {
        (0, 0): {0: 1},
        (0, 1): {1: 1},
        (1, 0): {1: 1},
        (0, 2): {2: 1},
        (2, 0): {2: 1},
        (1, 1): {2: 1},
        (1, 2): {},
        (2, 1): {},
        (2, 2): {},
    }
    return Algebra(
        name="Qx3",
        dim=3,
        mult=_table(3, entries),
        unit=[F1, F0, F0],
        commutative=True,
        involution=QMat.identity(3),
        basis_names=["1", "x", "x2"],
    )


def group_algebra_z2() -> Algebra:
    """Q[Z/2] on basis 1, g with g^2 = 1; inversion involution is the identity."""
    entries = {
        (0, 0): {0: 1},
        (0, 1): {1: 1},
        (1, 0): {1: 1},
        (1, 1): {0: 1},
    }
    return Algebra(
        name="QZ2",
        dim=2,
        mult=_table(2, entries),
        unit=[F1, F0],
        commutative=True,
        involution=QMat.identity(2),
        basis_names=["1", "g"],
    )


def upper_triangular2() -> Algebra:
    """Upper triangular 2x2 matrices on basis E11, E22, E12 (noncommutative)."""
    entries = {
        (0, 0): {0: 1},
        (1, 1): {1: 1},
        (0, 2): {2: 1},
        (2, 1): {2: 1},
        (0, 1): {},
        (1, 0): {},
        (1, 2): {},
        (2, 0): {},
        (2, 2): {},
    }
    return Algebra(
        name="upper2",
        dim=3,
        mult=_table(3, entries),
        unit=[F1, F1, F0],
        commutative=False,
        involution=None,
        basis_names=["E11", "E22", "E12"],
    )


def matrices2() -> Algebra:
    """M_2(Q) with the transpose involution."""
    A = matrix_algebra(base_field(), 2)
    A.name = "M2Q"
    A.basis_names = ["E11", "E12", "E21", "E22"]
    return A


def two_variable_square_zero() -> Algebra:
    """Q[x, y]/(x, y)^2 on basis 1, x, y."""
    entries = {
        (0, 0): {0: 1},
        (0, 1): {1: 1},
        (1, 0): {1: 1},
        (0, 2): {2: 1},
        (2, 0): {2: 1},
        (1, 1): {},
        (1, 2): {},
        (2, 1): {},
        (2, 2): {},
    }
    return Algebra(
        name="m2var",
        dim=3,
        mult=_table(3, entries),
        unit=[F1, F0, F0],
        commutative=True,
        involution=QMat.identity(3),
        basis_names=["1", "x", "y"],
    )


# ---------------------------------------------------------------- measurings


def _camel(name: str) -> str:
    return name[:1].upper() + name[1:]


def unit_inclusion(A: Algebra) -> Measuring:
    """Q -> A over the one-grouplike coalgebra."""
    f = QMat.column(A.dim, A.unit_vec())
    return algebra_map_measuring(f"unitInto{_camel(A.name)}", base_field(), A, f)


def augmentation_dualnum() -> Measuring:
    """Q[x]/(x^2) -> Q, x -> 0."""
    f = QMat.from_entries(1, 2, {(0, 0): F1})
    return algebra_map_measuring("augDualnum", dual_numbers(), base_field(), f)


def augmentation_qx3() -> Measuring:
    """Q[x]/(x^3) -> Q, x -> 0."""
    f = QMat.from_entries(1, 3, {(0, 0): F1})
    return algebra_map_measuring("augQx3", truncated_cubic(), base_field(), f)


def derivation_on_dualnum() -> Measuring:
    """Identity map with the Euler derivation x d/dx on Q[x]/(x^2)."""
    A = dual_numbers()
    D = QMat.from_entries(2, 2, {(1, 1): F1})
    return derivation_measuring("derivOnDualnum", A, A, QMat.identity(2), D)


def derivation_on_qx3() -> Measuring:
    """Identity map with the Euler derivation x d/dx on Q[x]/(x^3)."""
    A = truncated_cubic()
    D = QMat.from_entries(3, 3, {(1, 1): F1, (2, 2): Fraction(2)})
    return derivation_measuring("derivOnQx3", A, A, QMat.identity(3), D)


def point_derivation_dualnum() -> Measuring:
    """Augmentation Q[x]/(x^2) -> Q with the point derivation x -> 1."""
    f = QMat.from_entries(1, 2, {(0, 0): F1})
    D = QMat.from_entries(1, 2, {(0, 1): F1})
    return derivation_measuring("derivAugDualnum", dual_numbers(), base_field(), f, D)


def point_derivation_qx3() -> Measuring:
    """Augmentation Q[x]/(x^3) -> Q with the point derivation x -> 1, x^2 -> 0."""
    f = QMat.from_entries(1, 3, {(0, 0): F1})
    D = QMat.from_entries(1, 3, {(0, 1): F1})
    return derivation_measuring("derivAugQx3", truncated_cubic(), base_field(), f, D)


# ------------------------------------------------------------------- catalog


def algebras() -> dict[str, Algebra]:
    out = {}
    for mk in (
        base_field,
        dual_numbers,
        truncated_cubic,
        group_algebra_z2,
        upper_triangular2,
        matrices2,
    ):
        A = mk()
        out[A.name] = A
    return out


def measurings() -> dict[str, Measuring]:
    out = {}
    cat = algebras()
    for A in cat.values():
        m = identity_measuring(A, name=f"idOn{_camel(A.name)}")
        out[m.name] = m
    for mk in (
        augmentation_dualnum,
        augmentation_qx3,
        derivation_on_dualnum,
        derivation_on_qx3,
        point_derivation_dualnum,
        point_derivation_qx3,
    ):
        m = mk()
        out[m.name] = m
    for name in ("dualnum", "Qx3", "QZ2", "upper2", "M2Q"):
        m = unit_inclusion(cat[name])
        out[m.name] = m
    return out


# ---------------------------------------------------------- negative controls


def negative_broken_associativity() -> Algebra:
    """Upper triangular 2x2 table corrupted by E12*E12 = E11.

    The unit axiom still holds, but (E12 E12) E12 = E12 while
    E12 (E12 E12) = 0.
    """
    entries = {
        (0, 0): {0: 1},
        (1, 1): {1: 1},
        (0, 2): {2: 1},
        (2, 1): {2: 1},
        (2, 2): {0: 1},
    }
    return Algebra(
        name="brokenAssoc",
        dim=3,
        mult=_table(3, entries),
        unit=[F1, F1, F0],
        commutative=False,
        basis_names=["E11", "E22", "E12"],
    )


def negative_false_cocommutative() -> Coalgebra:
    """Path coalgebra on g1, g2, h, falsely flagged cocommutative.

    delta(g1) = g1(x)g1, delta(g2) = g2(x)g2, delta(h) = g1(x)h + h(x)g2.
    """
    z = F0
    comult = [
        [[F1, z, z], [z, z, z], [z, z, z]],
        [[z, z, z], [z, F1, z], [z, z, z]],
        [[z, z, F1], [z, z, z], [z, F1, z]],
    ]
    return Coalgebra(
        name="pathCoalgebra",
        dim=3,
        comult=comult,
        counit=[F1, F1, F0],
        cocommutative=True,
        basis_names=["g1", "g2", "h"],
    )


def negative_involution_breaking_measuring() -> Measuring:
    """Conjugation by S = [[1, 1], [0, 1]] on M_2(Q).

    A perfectly good algebra map, but it does not commute with the transpose
    involution: (S M S^{-1})^T = S^{-T} M^T S^T differs from S M^T S^{-1}
    because S^T S is not scalar.
    """
    A = matrices2()
    # conjugation by S = [[1, 1], [0, 1]]: M -> S M S^{-1}
    S = [[F1, F1], [F0, F1]]
    Sinv = [[F1, -F1], [F0, F1]]

    def idx(p, q):
        return 2 * p + q

    cols = []
    for p in range(2):
        for q in range(2):
            col: dict = {}
            # S E_pq S^{-1} = (S column p) (row q of S^{-1})
            for a in range(2):
                for b in range(2):
                    c = S[a][p] * Sinv[q][b]
                    if c:
                        col[idx(a, b)] = col.get(idx(a, b), F0) + c
            cols.append({k: v for k, v in col.items() if v})
    f = QMat(4, 4, cols)
    return algebra_map_measuring("conjOnM2Q", A, A, f)
