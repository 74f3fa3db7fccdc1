"""Named verification suites over a workspace.

Each suite checks one ledger entry's full set of commuting squares and
identities across the applicable part of a workspace and returns an ordered
list of ``CheckRecord`` rows.  A failing row always carries a concrete
witness: the first differing matrix entry, or the message of the exception
that interrupted the check.  Degrees that exceed a truncation cap are
reported as skipped rows, never silently dropped.

Suite ids are opaque ledger tokens; ``SUITE_IDS`` lists them in report
order.  All iteration is over sorted names, so two runs over the same
workspace produce identical record lists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .algebra import Measuring, matrix_measuring
from .cyclic import (
    ChainOps,
    DIM_CAP,
    _emplace,
    bicomplex_tot,
    chain_map,
    hochschild_complex,
    mixed_chain_map,
    mixed_connecting,
    mixed_include,
    mixed_periodicity,
    mixed_tot,
    normalized_complex,
    normalized_mixed,
    sbi_connecting,
    sbi_include,
    sbi_periodicity,
    tilde_complex,
    tot_chain_map,
)
from .dihedral import (
    DihedralData,
    _conjugate_intertwining,
    dihedral_map,
    dihedral_projection,
    restricted_measuring,
    skew_lie,
    symplectic_conjugate,
    symplectic_lie,
    transpose_conjugate,
)
from .errors import QhomError, TruncationTooLarge, ValidationError
from .forms import AntisymComplex, FormsData, forms_map, homology_eps
from .lie import (
    CyclicWordComplex,
    MatrixLadder,
    ce_coinvariants,
    ce_data,
    ce_map,
    cl_coinvariants,
    cl_data,
    cl_map,
    coinvariant_map,
    coinvariant_product,
    coinvariant_projection,
    gl_measuring,
    tilde_chain_map,
    wedge_split,
)
from .linalg import QMat, induced_on_homology, induced_on_quotient
from .products import (
    eulerian_idempotents,
    chain_idempotent,
    lambda_mixed_summand,
    lambda_normalized_summand,
    mixed_projector,
    normalized_idempotent,
    normalized_shuffle,
    restricted_map,
    star_product,
    tot_B,
    tot_module_action,
)

F0, F1 = Fraction(0), Fraction(1)

SUITE_IDS = (
    "prop2.2",
    "prop2.4",
    "prop2.5",
    "prop2.6",
    "prop3.1",
    "thm3.2",
    "prop3.4",
    "lem4.3",
    "thm4.4",
    "thm4.6",
    "cor4.7",
    "prop5.1",
    "lem5.2",
    "prop5.5",
    "prop5.6",
    "lem6.1",
    "prop6.2",
    "prop6.5",
    "prop7.2",
    "lem7.3",
    "thm7.5",
)

CHAIN_CAP = 4
LIE_CAP = 3

# Sentinel pool: an explicitly named measuring that cannot structurally apply
# to the suite at hand during a run of all suites; measured checks are omitted.
_SKIP_POOL = object()


@dataclass(frozen=True)
class CheckRecord:
    """One verified (or skipped, or failed) diagram check."""

    check: str
    anchor: str
    subjects: str
    degrees: str
    status: str
    witness: str = ""


class SuiteRun:
    """Collects records for one suite, converting errors to statuses."""

    def __init__(self, anchor: str):
        self.anchor = anchor
        self.records: list[CheckRecord] = []

    def check(self, check: str, subjects: str, degrees: str, fn) -> None:
        try:
            witness = fn()
        except TruncationTooLarge as exc:
            self.records.append(
                CheckRecord(
                    check, self.anchor, subjects, degrees,
                    "skipped-by-truncation", str(exc),
                )
            )
            return
        except QhomError as exc:
            self.records.append(
                CheckRecord(check, self.anchor, subjects, degrees, "fail", str(exc))
            )
            return
        self.records.append(
            CheckRecord(
                check, self.anchor, subjects, degrees,
                "pass" if not witness else "fail", witness,
            )
        )

    def skip(self, check: str, subjects: str, degrees: str, reason: str) -> None:
        self.records.append(
            CheckRecord(
                check, self.anchor, subjects, degrees, "skipped-by-truncation", reason
            )
        )


def _entry(M: QMat, i: int, j: int) -> Fraction:
    return M.cols[j].get(i, F0)


def _eq(lhs: QMat, rhs: QMat, label: str) -> str:
    """Empty string if equal, else a witness naming the first differing entry."""
    if lhs.nrows != rhs.nrows or lhs.ncols != rhs.ncols:
        return (
            f"{label}: shapes differ, {lhs.nrows}x{lhs.ncols} vs "
            f"{rhs.nrows}x{rhs.ncols}"
        )
    diff = lhs - rhs
    for j in range(diff.ncols):
        col = diff.cols[j]
        if col:
            i = min(col)
            return (
                f"{label}: entry (row {i}, col {j}): "
                f"left {_entry(lhs, i, j)}, right {_entry(rhs, i, j)}"
            )
    return ""


def _zero(M: QMat, label: str) -> str:
    for j in range(M.ncols):
        col = M.cols[j]
        if col:
            i = min(col)
            return f"{label}: entry (row {i}, col {j}) is {col[i]}, expected 0"
    return ""


def _xs(m: Measuring) -> list[dict]:
    return [{c: F1} for c in range(m.coalgebra.dim)]


def _sorted_algebras(ws, pred=None) -> list:
    out = [A for _, A in sorted(ws.algebras.items())]
    if pred is not None:
        out = [A for A in out if pred(A)]
    return out


def _cocommutative(m: Measuring) -> bool:
    return m.coalgebra.cocommutative


def _commutative_pair(m: Measuring) -> bool:
    return m.coalgebra.cocommutative and m.source.commutative and m.target.commutative


def _involutive_pair(m: Measuring) -> bool:
    return (
        m.coalgebra.cocommutative
        and m.source.involution is not None
        and m.target.involution is not None
    )


def _small_pair(m: Measuring) -> bool:
    return _cocommutative(m) and m.source.dim <= 2 and m.target.dim <= 2


def _endo(m: Measuring) -> bool:
    return m.source.name == m.target.name


_PRED = {
    "prop2.2": (_cocommutative, "needs a cocommutative coalgebra"),
    "prop2.4": (_cocommutative, "needs a cocommutative coalgebra"),
    "prop2.5": (
        _commutative_pair,
        "needs commutative algebras and a cocommutative coalgebra",
    ),
    "prop2.6": (
        _commutative_pair,
        "needs commutative algebras and a cocommutative coalgebra",
    ),
    "prop3.1": (
        _commutative_pair,
        "needs commutative algebras and a cocommutative coalgebra",
    ),
    "thm3.2": (
        _commutative_pair,
        "needs commutative algebras and a cocommutative coalgebra",
    ),
    "prop3.4": (
        _commutative_pair,
        "needs commutative algebras and a cocommutative coalgebra",
    ),
    "lem4.3": (
        _commutative_pair,
        "needs commutative algebras and a cocommutative coalgebra",
    ),
    "thm4.4": (
        _commutative_pair,
        "needs commutative algebras and a cocommutative coalgebra",
    ),
    "thm4.6": (
        _commutative_pair,
        "needs commutative algebras and a cocommutative coalgebra",
    ),
    "cor4.7": (
        _commutative_pair,
        "needs commutative algebras and a cocommutative coalgebra",
    ),
    "prop5.1": (
        _small_pair,
        "needs a cocommutative coalgebra and algebras of dimension at most 2",
    ),
    "lem5.2": (
        _small_pair,
        "needs a cocommutative coalgebra and algebras of dimension at most 2",
    ),
    "prop5.5": (
        _small_pair,
        "needs a cocommutative coalgebra and algebras of dimension at most 2",
    ),
    "prop5.6": (
        lambda m: _cocommutative(m) and _endo(m),
        "needs a cocommutative coalgebra and equal source and target",
    ),
    "lem6.1": (
        _small_pair,
        "needs a cocommutative coalgebra and algebras of dimension at most 2",
    ),
    "prop6.2": (
        lambda m: _small_pair(m) and _endo(m),
        "needs a cocommutative coalgebra and an endomeasuring of dimension at most 2",
    ),
    "prop6.5": (
        lambda m: _small_pair(m) and _endo(m),
        "needs a cocommutative coalgebra and an endomeasuring of dimension at most 2",
    ),
    "prop7.2": (_involutive_pair, "needs involutive source and target algebras"),
    "lem7.3": (_involutive_pair, "needs involutive source and target algebras"),
    "thm7.5": (
        lambda m: _small_pair(m) and _involutive_pair(m),
        "needs a cocommutative coalgebra and small involutive algebras",
    ),
}


def _pick_measurings(ws, suite: str, measuring) -> list[Measuring]:
    if measuring is _SKIP_POOL:
        return []
    pred, why = _PRED[suite]
    if measuring is not None:
        if measuring not in ws.measurings:
            raise ValidationError(f"unknown measuring {measuring!r}")
        m = ws.measurings[measuring]
        if not pred(m):
            raise ValidationError(
                f"measuring {measuring!r} is not applicable to suite {suite}: {why}"
            )
        return [m]
    return [m for _, m in sorted(ws.measurings.items()) if pred(m)]


def _degree_cap(md: int | None, cap: int) -> tuple[int, int | None]:
    """Effective top degree and, when the request exceeds the cap, the request."""
    if md is None:
        return cap, None
    if md > cap:
        return cap, md
    return md, None


def _skip_excess(run: SuiteRun, check: str, subjects: str, top: int, asked) -> None:
    if asked is not None:
        run.skip(
            check, subjects, f"n={top + 1}..{asked}",
            f"degrees above {top} exceed the supported truncation for this suite",
        )


def _mname(m: Measuring) -> str:
    return f"{m.name}: {m.source.name} -> {m.target.name}"


def _power(M: QMat, k: int) -> QMat:
    out = QMat.identity(M.nrows)
    for _ in range(k):
        out = M @ out
    return out


def _class_diff(lhs: dict, rhs: dict) -> dict:
    out = dict(lhs)
    for k, v in rhs.items():
        w = out.get(k, F0) - v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def _apply_into(acc: dict, M: QMat, vec: dict) -> None:
    for k, c in sorted(M.apply(vec).items()):
        w = acc.get(k, F0) + c
        if w:
            acc[k] = w
        else:
            acc.pop(k, None)


# ------------------------------------------------------------------- 2.x


def _suite_prop2_2(ws, md, measuring):
    run = SuiteRun("prop2.2")
    top, asked = _degree_cap(md, CHAIN_CAP)
    for A in _sorted_algebras(ws):
        ops = ChainOps(A)
        for n in range(top + 1):
            def row(n=n, ops=ops):
                eye = QMat.identity(ops.dim(n))
                omt = eye - ops.cyclic(n)
                N = ops.norm(n)
                w = _zero(omt @ N, "(1 - t) N") or _zero(N @ omt, "N (1 - t)")
                if w:
                    return w
                if omt.rank() + N.rank() != ops.dim(n):
                    return (
                        f"rank(1 - t) + rank(N) = {omt.rank()} + {N.rank()} "
                        f"!= dim {ops.dim(n)}"
                    )
                return ""
            run.check("cyclic-row-exactness", A.name, f"n={n}", row)
        for n in range(2, top + 1):
            def window(n=n, ops=ops):
                tot = bicomplex_tot(ops, n + 1)
                hhc = hochschild_complex(ops, n + 1)
                hh_n = hhc.homology(n)
                hc_n = tot.homology(n)
                hc_m = tot.homology(n - 2)
                hh_m = hhc.homology(n - 1)
                I1 = induced_on_homology(sbi_include(ops, tot, n), hh_n, hc_n, context="I")
                S = induced_on_homology(sbi_periodicity(tot, n), hc_n, hc_m, context="S")
                B = induced_on_homology(sbi_connecting(ops, tot, n), hc_m, hh_m, context="B")
                I2 = induced_on_homology(
                    sbi_include(ops, tot, n - 1), hh_m, tot.homology(n - 1), context="I"
                )
                w = _zero(S @ I1, "S o I on classes")
                if w:
                    return w
                if I1.rank() + S.rank() != hc_n.dim:
                    return f"im(I) != ker(S): ranks {I1.rank()} + {S.rank()} != {hc_n.dim}"
                w = _zero(B @ S, "B o S on classes")
                if w:
                    return w
                if S.rank() + B.rank() != hc_m.dim:
                    return f"im(S) != ker(B): ranks {S.rank()} + {B.rank()} != {hc_m.dim}"
                w = _zero(I2 @ B, "I o B on classes")
                if w:
                    return w
                if B.rank() + I2.rank() != hh_m.dim:
                    return f"im(B) != ker(I): ranks {B.rank()} + {I2.rank()} != {hh_m.dim}"
                return ""
            run.check("periodicity-exactness", A.name, f"n={n}", window)
        _skip_excess(run, "periodicity-exactness", A.name, top, asked)
    for m in _pick_measurings(ws, "prop2.2", measuring):
        sub = _mname(m)
        so, to = ChainOps(m.source), ChainOps(m.target)
        for n in range(top + 1):
            def squares(n=n, m=m, so=so, to=to):
                st = bicomplex_tot(so, n)
                tt = bicomplex_tot(to, n)
                for x in _xs(m):
                    tm = tot_chain_map(m, x, tt, so, n)
                    w = _eq(
                        tm @ sbi_include(so, st, n),
                        sbi_include(to, tt, n) @ chain_map(m, x, n),
                        f"I square at x index {min(x)}",
                    )
                    if w:
                        return w
                    if n >= 2:
                        tm2 = tot_chain_map(m, x, tt, so, n - 2)
                        w = _eq(
                            tm2 @ sbi_periodicity(st, n),
                            sbi_periodicity(tt, n) @ tm,
                            f"S square at x index {min(x)}",
                        )
                        if w:
                            return w
                        w = _eq(
                            chain_map(m, x, n - 1) @ sbi_connecting(so, st, n),
                            sbi_connecting(to, tt, n) @ tm2,
                            f"B square at x index {min(x)}",
                        )
                        if w:
                            return w
                return ""
            run.check("measured-ladder-squares", sub, f"n={n}", squares)
        _skip_excess(run, "measured-ladder-squares", sub, top, asked)
    return run.records


def _suite_prop2_4(ws, md, measuring):
    run = SuiteRun("prop2.4")
    top, asked = _degree_cap(md, CHAIN_CAP)
    for A in _sorted_algebras(ws):
        def per_algebra(A=A):
            ea = AntisymComplex(A, top)
            ops = ChainOps(A)
            for n in range(2, top + 1):
                w = _zero(ea.diff[n - 1] @ ea.diff[n], f"delta o delta at n={n}")
                if w:
                    return w
            for n in range(1, top + 1):
                w = _eq(
                    ops.boundary(n) @ ea.eps(n), ea.eps(n - 1) @ ea.diff[n],
                    f"b o eps vs eps o delta at n={n}",
                )
                if w:
                    return w
            return ""
        run.check("antisymmetrization-chain-map", A.name, f"n=0..{top}", per_algebra)
        _skip_excess(run, "antisymmetrization-chain-map", A.name, top, asked)
    for m in _pick_measurings(ws, "prop2.4", measuring):
        sub = _mname(m)
        def msq(m=m):
            ea_s = AntisymComplex(m.source, top)
            ea_t = AntisymComplex(m.target, top)
            for n in range(top + 1):
                for x in _xs(m):
                    E = ea_s.measured_map(m, x, ea_t, n)
                    w = _eq(
                        chain_map(m, x, n) @ ea_s.eps(n),
                        ea_t.eps(n) @ E,
                        f"eps square at n={n}, x index {min(x)}",
                    )
                    if w:
                        return w
                    if n >= 1:
                        E1 = ea_s.measured_map(m, x, ea_t, n - 1)
                        w = _eq(
                            ea_t.diff[n] @ E, E1 @ ea_s.diff[n],
                            f"chain square at n={n}, x index {min(x)}",
                        )
                        if w:
                            return w
            return ""
        run.check("measured-squares", sub, f"n=0..{top}", msq)
        _skip_excess(run, "measured-squares", sub, top, asked)
    return run.records


def _suite_prop2_5(ws, md, measuring):
    run = SuiteRun("prop2.5")
    top, asked = _degree_cap(md, CHAIN_CAP)
    for A in _sorted_algebras(ws, lambda A: A.commutative):
        def per_algebra(A=A):
            fd = FormsData(A, top)
            ops = ChainOps(A)
            ea = AntisymComplex(A, top)
            hhc = hochschild_complex(ops, top)
            for p in range(top):
                w = _zero(fd.pis[p] @ ops.boundary(p + 1), f"pi_{p} o b")
                if w:
                    return w
            for p in range(top + 1):
                fact = Fraction(math.factorial(p))
                w = _eq(
                    fd.pis[p] @ ea.antisym_tensor(p) @ fd.sections[p],
                    QMat.identity(fd.dims[p]).scale(fact),
                    f"pi_{p} of an antisymmetrized section vs {fact} id",
                )
                if w:
                    return w
            for p in range(top):
                homology_eps(fd, ea, hhc.homology(p), p)
            return ""
        run.check("forms-comparison", A.name, f"p=0..{top}", per_algebra)
        _skip_excess(run, "forms-comparison", A.name, top, asked)
    for m in _pick_measurings(ws, "prop2.5", measuring):
        sub = _mname(m)
        def msq(m=m):
            fs = FormsData(m.source, top)
            ft = FormsData(m.target, top)
            for p in range(top + 1):
                for x in _xs(m):
                    om = forms_map(m, fs, ft, x, p)
                    w = _eq(
                        om @ fs.pis[p], ft.pis[p] @ chain_map(m, x, p),
                        f"pi square at p={p}, x index {min(x)}",
                    )
                    if w:
                        return w
            return ""
        run.check("measured-form-squares", sub, f"p=0..{top}", msq)
        _skip_excess(run, "measured-form-squares", sub, top, asked)
    return run.records


def _suite_prop2_6(ws, md, measuring):
    run = SuiteRun("prop2.6")
    top, asked = _degree_cap(md, CHAIN_CAP)
    for A in _sorted_algebras(ws, lambda A: A.commutative):
        def per_algebra(A=A):
            ops = ChainOps(A)
            fd = FormsData(A, top)
            nm = normalized_mixed(ops, top)
            mt = mixed_tot(nm, top)
            pibar = []
            for p in range(top + 1):
                rels = nm.spaces[p].relation_columns()
                w = _zero(fd.pis[p] @ rels, f"pi_{p} on degenerate relations")
                if w:
                    return w
                pibar.append(fd.pis[p] @ nm.spaces[p].section())
            for p in range(top):
                w = _zero(pibar[p] @ nm.bbar[p + 1], f"normalized pi_{p} o b-bar")
                if w:
                    return w
                w = _eq(
                    pibar[p + 1] @ nm.Bbar[p],
                    (fd.derham[p] @ pibar[p]).scale(Fraction(p + 1)),
                    f"normalized pi o Connes operator vs (p+1) d pi at p={p}",
                )
                if w:
                    return w
            # mu_p = pi_p / p! assembles into a morphism from the mixed total
            # complex to the forms total complex, whose differential is d alone.
            mu = {
                p: pibar[p].scale(F1 / Fraction(math.factorial(p)))
                for p in range(top + 1)
            }
            odims, ooffs = [], []
            for n in range(top + 1):
                offs = [0]
                for j in range(n // 2 + 1):
                    offs.append(offs[-1] + fd.dims[n - 2 * j])
                odims.append(offs[-1])
                ooffs.append(offs[:-1])
            Mu = {
                n: QMat.block_diag([mu[n - 2 * j] for j in range(n // 2 + 1)])
                for n in range(top + 1)
            }
            for n in range(1, top + 1):
                D = QMat.zero(odims[n - 1], odims[n])
                for j in range(1, n // 2 + 1):
                    _emplace(D, fd.derham[n - 2 * j], ooffs[n - 1][j - 1], ooffs[n][j])
                w = _eq(
                    D @ Mu[n], Mu[n - 1] @ mt.diff[n],
                    f"total-complex morphism square at n={n}",
                )
                if w:
                    return w
            return ""
        run.check("mixed-to-forms-morphism", A.name, f"n=0..{top}", per_algebra)
        _skip_excess(run, "mixed-to-forms-morphism", A.name, top, asked)
    return run.records


# ------------------------------------------------------------------- 3.x


def _suite_prop3_1(ws, md, measuring):
    run = SuiteRun("prop3.1")
    top, asked = _degree_cap(md, CHAIN_CAP)
    for A in _sorted_algebras(ws, lambda A: A.commutative):
        ops = ChainOps(A)
        nm = normalized_mixed(ops, top)
        def descends(nm=nm):
            for p in range(top + 1):
                for q in range(top + 1 - p):
                    normalized_shuffle(nm, p, q)
            return ""
        run.check("shuffle-descends", A.name, f"p+q<={top}", descends)
        for p in range(top + 1):
            for q in range(top + 1 - p):
                if p + q < 1:
                    continue
                def leibniz(p=p, q=q, nm=nm):
                    sh = normalized_shuffle(nm, p, q)
                    lhs = nm.bbar[p + q] @ sh
                    rhs = QMat.zero(lhs.nrows, lhs.ncols)
                    if p >= 1:
                        rhs = rhs + normalized_shuffle(nm, p - 1, q) @ nm.bbar[p].kron(
                            QMat.identity(nm.dims()[q])
                        )
                    if q >= 1:
                        s = F1 if p % 2 == 0 else -F1
                        rhs = rhs + (
                            normalized_shuffle(nm, p, q - 1)
                            @ QMat.identity(nm.dims()[p]).kron(nm.bbar[q])
                        ).scale(s)
                    return _eq(lhs, rhs, "boundary Leibniz rule for the shuffle")
                run.check("shuffle-leibniz", A.name, f"p={p},q={q}", leibniz)
        def graded_comm(nm=nm):
            for p in range(top + 1):
                for q in range(top + 1 - p):
                    sh = normalized_shuffle(nm, p, q)
                    sh2 = normalized_shuffle(nm, q, p)
                    dp, dq = nm.dims()[p], nm.dims()[q]
                    swap = QMat.zero(dq * dp, dp * dq)
                    for a in range(dp):
                        for b in range(dq):
                            swap.cols[a * dq + b][b * dp + a] = F1
                    s = F1 if (p * q) % 2 == 0 else -F1
                    w = _eq(sh, (sh2 @ swap).scale(s), f"commutativity at p={p},q={q}")
                    if w:
                        return w
            return ""
        run.check("shuffle-graded-commutative", A.name, f"p+q<={top}", graded_comm)
        _skip_excess(run, "shuffle-leibniz", A.name, top, asked)
    for m in _pick_measurings(ws, "prop3.1", measuring):
        sub = _mname(m)
        def msq(m=m):
            so, to = ChainOps(m.source), ChainOps(m.target)
            nms, nmt = normalized_mixed(so, top), normalized_mixed(to, top)
            def norm_map(x, n):
                return induced_on_quotient(
                    chain_map(m, x, n), nms.spaces[n], nmt.spaces[n],
                    context=f"measuring {m.name} on normalized chains at degree {n}",
                )
            for p in range(top + 1):
                for q in range(top + 1 - p):
                    shs = normalized_shuffle(nms, p, q)
                    sht = normalized_shuffle(nmt, p, q)
                    for x in _xs(m):
                        lhs = norm_map(x, p + q) @ shs
                        rhs = QMat.zero(lhs.nrows, lhs.ncols)
                        for (j, k), c in m.coalgebra.delta(x).items():
                            rhs = rhs + (
                                sht @ norm_map({j: F1}, p).kron(norm_map({k: F1}, q))
                            ).scale(c)
                        w = _eq(
                            lhs, rhs, f"shuffle square at p={p},q={q},x index {min(x)}"
                        )
                        if w:
                            return w
            return ""
        run.check("measured-shuffle-squares", sub, f"p+q<={top}", msq)
        _skip_excess(run, "measured-shuffle-squares", sub, top, asked)
    return run.records


def _suite_thm3_2(ws, md, measuring):
    run = SuiteRun("thm3.2")
    top, asked = _degree_cap(md, CHAIN_CAP)
    for A in _sorted_algebras(ws, lambda A: A.commutative):
        ops = ChainOps(A)
        nm = normalized_mixed(ops, top)
        mt = mixed_tot(nm, top)
        for p in range(top):
            for q in range(top - p):
                def leibniz(p=p, q=q, nm=nm, mt=mt):
                    st = star_product(nm, mt, p, q)
                    lhs = mt.diff[p + q + 1] @ st
                    rhs = QMat.zero(lhs.nrows, lhs.ncols)
                    if p >= 1:
                        rhs = rhs - star_product(nm, mt, p - 1, q) @ mt.diff[p].kron(
                            QMat.identity(mt.dims[q])
                        )
                    if q >= 1:
                        s = -F1 if p % 2 == 0 else F1
                        rhs = rhs + (
                            star_product(nm, mt, p, q - 1)
                            @ QMat.identity(mt.dims[p]).kron(mt.diff[q])
                        ).scale(s)
                    return _eq(lhs, rhs, "differential Leibniz rule for the star product")
                run.check("star-leibniz", A.name, f"p={p},q={q}", leibniz)
        if top >= 3:
            def assoc(nm=nm, mt=mt):
                H2 = mt.homology(2)
                s00 = star_product(nm, mt, 0, 0)
                s10 = star_product(nm, mt, 1, 0)
                s01 = star_product(nm, mt, 0, 1)
                d0, d1 = mt.dims[0], mt.dims[1]
                for iu, iv, iw in iproduct(range(d0), repeat=3):
                    uv = s00.apply({iu * d0 + iv: F1})
                    vw = s00.apply({iv * d0 + iw: F1})
                    lhs: dict = {}
                    for r, c in sorted(uv.items()):
                        for r2, c2 in s10.apply({r * d0 + iw: c}).items():
                            w = lhs.get(r2, F0) + c2
                            if w:
                                lhs[r2] = w
                            else:
                                lhs.pop(r2, None)
                    rhs: dict = {}
                    for r, c in sorted(vw.items()):
                        for r2, c2 in s01.apply({iu * d1 + r: c}).items():
                            w = rhs.get(r2, F0) + c2
                            if w:
                                rhs[r2] = w
                            else:
                                rhs.pop(r2, None)
                    if not H2.contains_cycle(lhs):
                        return f"(e{iu} * e{iv}) * e{iw} is not a cycle"
                    if not H2.is_boundary(_class_diff(lhs, rhs)):
                        return (
                            f"associativity fails on classes at basis triple "
                            f"({iu}, {iv}, {iw})"
                        )
                return ""
            run.check("star-associative-on-classes", A.name, "n=2", assoc)
        if top >= 2:
            def comm(nm=nm, mt=mt):
                H1 = mt.homology(1)
                s00 = star_product(nm, mt, 0, 0)
                d0 = mt.dims[0]
                for iu, iv in iproduct(range(d0), repeat=2):
                    s: dict = {}
                    _apply_into(s, s00, {iu * d0 + iv: F1})
                    _apply_into(s, s00, {iv * d0 + iu: F1})
                    if not H1.is_boundary(s):
                        return (
                            f"graded commutativity fails on classes at pair ({iu}, {iv})"
                        )
                return ""
            run.check("star-commutative-on-classes", A.name, "n=1", comm)
        _skip_excess(run, "star-leibniz", A.name, top, asked)
    for m in _pick_measurings(ws, "thm3.2", measuring):
        sub = _mname(m)
        def msq(m=m):
            so, to = ChainOps(m.source), ChainOps(m.target)
            nms, nmt = normalized_mixed(so, top), normalized_mixed(to, top)
            mts, mtt = mixed_tot(nms, top), mixed_tot(nmt, top)
            for p in range(top):
                for q in range(top - p):
                    sts = star_product(nms, mts, p, q)
                    stt = star_product(nmt, mtt, p, q)
                    for x in _xs(m):
                        lhs = mixed_chain_map(m, x, nms, nmt, p + q + 1) @ sts
                        rhs = QMat.zero(lhs.nrows, lhs.ncols)
                        for (j, k), c in m.coalgebra.delta(x).items():
                            rhs = rhs + (
                                stt
                                @ mixed_chain_map(m, {j: F1}, nms, nmt, p).kron(
                                    mixed_chain_map(m, {k: F1}, nms, nmt, q)
                                )
                            ).scale(c)
                        w = _eq(lhs, rhs, f"star square at p={p},q={q},x index {min(x)}")
                        if w:
                            return w
            return ""
        run.check("measured-star-squares", sub, f"p+q+1<={top}", msq)
        _skip_excess(run, "measured-star-squares", sub, top, asked)
    return run.records


def _suite_prop3_4(ws, md, measuring):
    run = SuiteRun("prop3.4")
    top, asked = _degree_cap(md, CHAIN_CAP)
    for A in _sorted_algebras(ws, lambda A: A.commutative):
        ops = ChainOps(A)
        nm = normalized_mixed(ops, top)
        mt = mixed_tot(nm, top)
        for p in range(2, top + 1):
            run.check(
                "connecting-anticommutes", A.name, f"p={p}",
                lambda p=p, nm=nm, mt=mt: _eq(
                    nm.bbar[p] @ tot_B(nm, mt, p),
                    (tot_B(nm, mt, p - 1) @ mt.diff[p - 1]).scale(-F1),
                    "b-bar o B vs -B o D",
                ),
            )
        for p in range(1, top + 1):
            for q in range(top + 1 - p):
                def leibniz(p=p, q=q, nm=nm, mt=mt):
                    act = tot_module_action(nm, mt, p, q)
                    lhs = nm.bbar[p + q] @ act
                    rhs = QMat.zero(lhs.nrows, lhs.ncols)
                    if p >= 2:
                        rhs = rhs - tot_module_action(nm, mt, p - 1, q) @ mt.diff[
                            p - 1
                        ].kron(QMat.identity(nm.dims()[q]))
                    if q >= 1:
                        s = F1 if p % 2 == 0 else -F1
                        rhs = rhs + (
                            tot_module_action(nm, mt, p, q - 1)
                            @ QMat.identity(mt.dims[p - 1]).kron(nm.bbar[q])
                        ).scale(s)
                    return _eq(lhs, rhs, "boundary Leibniz rule for the module action")
                run.check("action-leibniz", A.name, f"p={p},q={q}", leibniz)
        if top >= 3:
            def algebra_map(nm=nm, mt=mt):
                nc = normalized_complex(nm)
                H2 = nc.homology(2)
                s00 = star_product(nm, mt, 0, 0)
                tb1 = tot_B(nm, mt, 1)
                tb2 = tot_B(nm, mt, 2)
                sh11 = normalized_shuffle(nm, 1, 1)
                d0 = mt.dims[0]
                d1 = nm.dims()[1]
                for iu, iv in iproduct(range(d0), repeat=2):
                    lhs = tb2.apply(s00.apply({iu * d0 + iv: F1}))
                    Bu = tb1.apply({iu: F1})
                    Bv = tb1.apply({iv: F1})
                    rhs: dict = {}
                    for r1, c1 in sorted(Bu.items()):
                        for r2, c2 in sorted(Bv.items()):
                            for r3, c3 in sh11.apply({r1 * d1 + r2: F1}).items():
                                w = rhs.get(r3, F0) + c1 * c2 * c3
                                if w:
                                    rhs[r3] = w
                                else:
                                    rhs.pop(r3, None)
                    if not H2.contains_cycle(lhs):
                        return f"B(e{iu} * e{iv}) is not a cycle"
                    if not H2.is_boundary(_class_diff(lhs, rhs)):
                        return f"multiplicativity fails on classes at pair ({iu}, {iv})"
                return ""
            run.check("connecting-multiplicative-on-classes", A.name, "n=2", algebra_map)
        _skip_excess(run, "action-leibniz", A.name, top, asked)
    for m in _pick_measurings(ws, "prop3.4", measuring):
        sub = _mname(m)
        def msq(m=m):
            so, to = ChainOps(m.source), ChainOps(m.target)
            nms, nmt = normalized_mixed(so, top), normalized_mixed(to, top)
            mts, mtt = mixed_tot(nms, top), mixed_tot(nmt, top)
            def norm_map(x, n):
                return induced_on_quotient(
                    chain_map(m, x, n), nms.spaces[n], nmt.spaces[n],
                    context=f"measuring {m.name} on normalized chains at degree {n}",
                )
            for p in range(1, top + 1):
                tbs = tot_B(nms, mts, p)
                tbt = tot_B(nmt, mtt, p)
                for x in _xs(m):
                    w = _eq(
                        norm_map(x, p) @ tbs,
                        tbt @ mixed_chain_map(m, x, nms, nmt, p - 1),
                        f"connecting square at p={p}, x index {min(x)}",
                    )
                    if w:
                        return w
                for q in range(top + 1 - p):
                    acts = tot_module_action(nms, mts, p, q)
                    actt = tot_module_action(nmt, mtt, p, q)
                    for x in _xs(m):
                        lhs = norm_map(x, p + q) @ acts
                        rhs = QMat.zero(lhs.nrows, lhs.ncols)
                        for (j, k), c in m.coalgebra.delta(x).items():
                            rhs = rhs + (
                                actt
                                @ mixed_chain_map(m, {j: F1}, nms, nmt, p - 1).kron(
                                    norm_map({k: F1}, q)
                                )
                            ).scale(c)
                        w = _eq(
                            lhs, rhs, f"comodule square at p={p},q={q},x index {min(x)}"
                        )
                        if w:
                            return w
            return ""
        run.check("comodule-measuring-squares", sub, f"p+q<={top}", msq)
        _skip_excess(run, "comodule-measuring-squares", sub, top, asked)
    return run.records


# ------------------------------------------------------------------- 4.x


def _suite_lem4_3(ws, md, measuring):
    run = SuiteRun("lem4.3")
    top, asked = _degree_cap(md, CHAIN_CAP)
    for A in _sorted_algebras(ws, lambda A: A.commutative):
        e = eulerian_idempotents(A.dim, top)
        for n in range(top + 1):
            def family(n=n, A=A, e=e):
                dn = max(A.dim ** n, 1)
                acc = QMat.zero(dn, dn)
                idxs = [0] if n == 0 else list(range(1, n + 1))
                for i in idxs:
                    ei = e[i][n]
                    w = _zero(ei @ ei - ei, f"index {i} operator is not idempotent")
                    if w:
                        return w
                    for i2 in idxs:
                        if i2 <= i:
                            continue
                        w = _zero(ei @ e[i2][n], f"indices {i} and {i2} are not orthogonal")
                        if w:
                            return w
                    acc = acc + ei
                return _eq(acc, QMat.identity(dn), "sum of Eulerian idempotents vs identity")
            run.check("idempotent-family", A.name, f"n={n}", family)
        _skip_excess(run, "idempotent-family", A.name, top, asked)
    for m in _pick_measurings(ws, "lem4.3", measuring):
        sub = _mname(m)
        es = eulerian_idempotents(m.source.dim, top)
        et = eulerian_idempotents(m.target.dim, top)
        for n in range(top + 1):
            def commute(n=n, m=m, es=es, et=et):
                idxs = [0] if n == 0 else list(range(1, n + 1))
                for x in _xs(m):
                    cm = chain_map(m, x, n)
                    for i in idxs:
                        w = _eq(
                            chain_idempotent(m.target, et[i][n], n) @ cm,
                            cm @ chain_idempotent(m.source, es[i][n], n),
                            f"Eulerian operator square at i={i}, x index {min(x)}",
                        )
                        if w:
                            return w
                return ""
            run.check("measured-commute", sub, f"n={n}", commute)
        _skip_excess(run, "measured-commute", sub, top, asked)
    return run.records


def _suite_thm4_4(ws, md, measuring):
    run = SuiteRun("thm4.4")
    top, asked = _degree_cap(md, CHAIN_CAP)
    build = top + 1
    for A in _sorted_algebras(ws, lambda A: A.commutative):
        def per_algebra(A=A):
            ops = ChainOps(A)
            nm = normalized_mixed(ops, build)
            e = eulerian_idempotents(A.dim, build)
            for n in range(top + 1):
                dn = nm.dims()[n]
                idxs = [0] if n == 0 else list(range(1, n + 1))
                acc = QMat.zero(dn, dn)
                for i in idxs:
                    ei = normalized_idempotent(nm, e[i][n], n)
                    acc = acc + ei
                    w = _zero(ei @ ei - ei, f"normalized index {i} operator at n={n}")
                    if w:
                        return w
                    if 1 <= i <= n - 1:
                        prev = normalized_idempotent(nm, e[i][n - 1], n - 1)
                        w = _eq(
                            prev @ nm.bbar[n], nm.bbar[n] @ ei,
                            f"boundary equivariance at n={n}, i={i}",
                        )
                        if w:
                            return w
                w = _eq(acc, QMat.identity(dn), f"operator sum vs identity at n={n}")
                if w:
                    return w
            nc = normalized_complex(nm)
            for n in range(top + 1):
                idxs = [0] if n == 0 else list(range(1, n + 1))
                total = sum(
                    lambda_normalized_summand(nm, e, i, build).homology(n).dim
                    for i in idxs
                )
                if total != nc.homology(n).dim:
                    return (
                        f"summand dimensions at n={n} sum to {total}, "
                        f"homology has dimension {nc.homology(n).dim}"
                    )
            return ""
        run.check("summand-decomposition", A.name, f"n=0..{top}", per_algebra)
        _skip_excess(run, "summand-decomposition", A.name, top, asked)
    for m in _pick_measurings(ws, "thm4.4", measuring):
        sub = _mname(m)
        def msq(m=m):
            so, to = ChainOps(m.source), ChainOps(m.target)
            nms, nmt = normalized_mixed(so, build), normalized_mixed(to, build)
            es = eulerian_idempotents(m.source.dim, build)
            et = eulerian_idempotents(m.target.dim, build)
            hs = {i: lambda_normalized_summand(nms, es, i, build) for i in range(1, top + 1)}
            ht = {i: lambda_normalized_summand(nmt, et, i, build) for i in range(1, top + 1)}
            for n in range(top + 1):
                for x in _xs(m):
                    cm = induced_on_quotient(
                        chain_map(m, x, n), nms.spaces[n], nmt.spaces[n],
                        context=f"measuring {m.name} on normalized chains at degree {n}",
                    )
                    for i in range(1, n + 1):
                        w = _eq(
                            normalized_idempotent(nmt, et[i][n], n) @ cm,
                            cm @ normalized_idempotent(nms, es[i][n], n),
                            f"operator square at n={n}, i={i}, x index {min(x)}",
                        )
                        if w:
                            return w
                        r = restricted_map(
                            cm, hs[i].bases[n], ht[i].bases[n],
                            context=f"measured map on summand {i} at degree {n}",
                        )
                        if n <= top - 1:
                            induced_on_homology(
                                r, hs[i].homology(n), ht[i].homology(n),
                                context=f"measured map on summand {i} classes at degree {n}",
                            )
            return ""
        run.check("measured-summand-preservation", sub, f"n=0..{top}", msq)
        _skip_excess(run, "measured-summand-preservation", sub, top, asked)
    return run.records


def _suite_thm4_6(ws, md, measuring):
    run = SuiteRun("thm4.6")
    top, asked = _degree_cap(md, CHAIN_CAP)
    build = top + 1
    for A in _sorted_algebras(ws, lambda A: A.commutative):
        def per_algebra(A=A):
            ops = ChainOps(A)
            nm = normalized_mixed(ops, build)
            mt = mixed_tot(nm, build)
            e = eulerian_idempotents(A.dim, build)
            for n in range(top):
                idxs = [0] if n == 0 else list(range(1, n + 1))
                for i in idxs:
                    nxt = normalized_idempotent(nm, e[i + 1][n + 1], n + 1)
                    cur = normalized_idempotent(nm, e[i][n], n)
                    w = _eq(
                        nm.Bbar[n] @ cur, nxt @ nm.Bbar[n],
                        f"Connes operator shift at n={n}, i={i}",
                    )
                    if w:
                        return w
            for n in range(top + 1):
                dn = mt.dims[n]
                acc = QMat.zero(dn, dn)
                for i in range(n + 1):
                    proj = mixed_projector(nm, e, i, n)
                    acc = acc + proj
                    w = _zero(proj @ proj - proj, f"projector {i} at n={n}")
                    if w:
                        return w
                    for i2 in range(i + 1, n + 1):
                        w = _zero(
                            proj @ mixed_projector(nm, e, i2, n),
                            f"projectors {i} and {i2} at n={n}",
                        )
                        if w:
                            return w
                    if n >= 1:
                        w = _eq(
                            mixed_projector(nm, e, i, n - 1) @ mt.diff[n],
                            mt.diff[n] @ proj,
                            f"projector chain square at n={n}, i={i}",
                        )
                        if w:
                            return w
                w = _eq(acc, QMat.identity(dn), f"projector sum vs identity at n={n}")
                if w:
                    return w
            for n in range(top + 1):
                idxs = [0] if n == 0 else list(range(1, n + 1))
                total = sum(
                    lambda_mixed_summand(nm, mt, e, i, build).homology(n).dim
                    for i in idxs
                )
                if total != mt.homology(n).dim:
                    return (
                        f"summand dimensions at n={n} sum to {total}, "
                        f"homology has dimension {mt.homology(n).dim}"
                    )
            return ""
        run.check("summand-decomposition", A.name, f"n=0..{top}", per_algebra)
        _skip_excess(run, "summand-decomposition", A.name, top, asked)
    for m in _pick_measurings(ws, "thm4.6", measuring):
        sub = _mname(m)
        def msq(m=m):
            so, to = ChainOps(m.source), ChainOps(m.target)
            nms, nmt = normalized_mixed(so, build), normalized_mixed(to, build)
            mts, mtt = mixed_tot(nms, build), mixed_tot(nmt, build)
            es = eulerian_idempotents(m.source.dim, build)
            et = eulerian_idempotents(m.target.dim, build)
            hs = {i: lambda_mixed_summand(nms, mts, es, i, build) for i in range(1, top + 1)}
            ht = {i: lambda_mixed_summand(nmt, mtt, et, i, build) for i in range(1, top + 1)}
            for n in range(top + 1):
                for x in _xs(m):
                    mm = mixed_chain_map(m, x, nms, nmt, n)
                    for i in range(1, n + 1):
                        w = _eq(
                            mixed_projector(nmt, et, i, n) @ mm,
                            mm @ mixed_projector(nms, es, i, n),
                            f"projector square at n={n}, i={i}, x index {min(x)}",
                        )
                        if w:
                            return w
                        r = restricted_map(
                            mm, hs[i].bases[n], ht[i].bases[n],
                            context=f"measured map on total summand {i} at degree {n}",
                        )
                        if n <= top - 1:
                            induced_on_homology(
                                r, hs[i].homology(n), ht[i].homology(n),
                                context=(
                                    f"measured map on total summand {i} classes "
                                    f"at degree {n}"
                                ),
                            )
            return ""
        run.check("measured-summand-preservation", sub, f"n=0..{top}", msq)
        _skip_excess(run, "measured-summand-preservation", sub, top, asked)
    return run.records


def _suite_cor4_7(ws, md, measuring):
    run = SuiteRun("cor4.7")
    top, asked = _degree_cap(md, CHAIN_CAP)
    build = top + 1
    for A in _sorted_algebras(ws, lambda A: A.commutative):
        def shifts(A=A):
            ops = ChainOps(A)
            nm = normalized_mixed(ops, build)
            mt = mixed_tot(nm, build)
            e = eulerian_idempotents(A.dim, build)
            for n in range(top + 1):
                inc = mixed_include(nm, mt, n)
                for i in range(n + 2):
                    if (1 <= i <= n) or (i == 0 and n == 0):
                        ebar = normalized_idempotent(nm, e[i][n], n)
                    else:
                        ebar = QMat.zero(nm.dims()[n], nm.dims()[n])
                    w = _eq(
                        mixed_projector(nm, e, i, n) @ inc, inc @ ebar,
                        f"inclusion keeps the index at n={n}, i={i}",
                    )
                    if w:
                        return w
            for n in range(2, top + 1):
                S = mixed_periodicity(mt, n)
                conn = mixed_connecting(nm, mt, n)
                for i in range(n + 2):
                    lower = (
                        mixed_projector(nm, e, i - 1, n - 2)
                        if i >= 1
                        else QMat.zero(mt.dims[n - 2], mt.dims[n - 2])
                    )
                    w = _eq(
                        lower @ S, S @ mixed_projector(nm, e, i, n),
                        f"periodicity lowers the index at n={n}, i={i}",
                    )
                    if w:
                        return w
                for i in range(n - 1):
                    w = _eq(
                        normalized_idempotent(nm, e[i + 1][n - 1], n - 1) @ conn,
                        conn @ mixed_projector(nm, e, i, n - 2),
                        f"connecting raises the index at n={n}, i={i}",
                    )
                    if w:
                        return w
            return ""
        run.check("ladder-index-shifts", A.name, f"n=0..{top}", shifts)
        def exactness(A=A):
            ops = ChainOps(A)
            nm = normalized_mixed(ops, build)
            mt = mixed_tot(nm, build)
            e = eulerian_idempotents(A.dim, build)
            hh = {i: lambda_normalized_summand(nm, e, i, build) for i in range(1, top + 1)}
            hc = {i: lambda_mixed_summand(nm, mt, e, i, build) for i in range(top + 1)}
            for n in range(2, top):
                for i in range(1, n + 1):
                    inc = restricted_map(
                        mixed_include(nm, mt, n), hh[i].bases[n], hc[i].bases[n],
                        context="restricted inclusion",
                    )
                    Ii = induced_on_homology(
                        inc, hh[i].homology(n), hc[i].homology(n),
                        context="inclusion on summand classes",
                    )
                    S = restricted_map(
                        mixed_periodicity(mt, n), hc[i].bases[n], hc[i - 1].bases[n - 2],
                        context="restricted periodicity",
                    )
                    Si = induced_on_homology(
                        S, hc[i].homology(n), hc[i - 1].homology(n - 2),
                        context="periodicity on summand classes",
                    )
                    w = _zero(Si @ Ii, f"S o I on summand {i} classes at n={n}")
                    if w:
                        return w
                    if Ii.rank() + Si.rank() != hc[i].homology(n).dim:
                        return (
                            f"im(I) != ker(S) on summand {i} at n={n}: ranks "
                            f"{Ii.rank()} + {Si.rank()} != {hc[i].homology(n).dim}"
                        )
                    B = restricted_map(
                        mixed_connecting(nm, mt, n), hc[i - 1].bases[n - 2],
                        hh[i].bases[n - 1], context="restricted connecting map",
                    )
                    Bi = induced_on_homology(
                        B, hc[i - 1].homology(n - 2), hh[i].homology(n - 1),
                        context="connecting map on summand classes",
                    )
                    w = _zero(Bi @ Si, f"B o S on summand {i} classes at n={n}")
                    if w:
                        return w
                    if Si.rank() + Bi.rank() != hc[i - 1].homology(n - 2).dim:
                        return (
                            f"im(S) != ker(B) on summand {i} at n={n}: ranks "
                            f"{Si.rank()} + {Bi.rank()} != "
                            f"{hc[i - 1].homology(n - 2).dim}"
                        )
                    inc2 = restricted_map(
                        mixed_include(nm, mt, n - 1), hh[i].bases[n - 1],
                        hc[i].bases[n - 1], context="restricted inclusion",
                    )
                    Ii2 = induced_on_homology(
                        inc2, hh[i].homology(n - 1), hc[i].homology(n - 1),
                        context="inclusion on summand classes",
                    )
                    w = _zero(Ii2 @ Bi, f"I o B on summand {i} classes at n={n}")
                    if w:
                        return w
                    if Bi.rank() + Ii2.rank() != hh[i].homology(n - 1).dim:
                        return (
                            f"im(B) != ker(I) on summand {i} at n={n}: ranks "
                            f"{Bi.rank()} + {Ii2.rank()} != {hh[i].homology(n - 1).dim}"
                        )
            return ""
        run.check("summand-ladder-exactness", A.name, f"windows n=2..{top - 1}", exactness)
        _skip_excess(run, "summand-ladder-exactness", A.name, top, asked)
    for m in _pick_measurings(ws, "cor4.7", measuring):
        sub = _mname(m)
        def mladder(m=m):
            so, to = ChainOps(m.source), ChainOps(m.target)
            nms, nmt = normalized_mixed(so, build), normalized_mixed(to, build)
            mts, mtt = mixed_tot(nms, build), mixed_tot(nmt, build)
            es = eulerian_idempotents(m.source.dim, build)
            et = eulerian_idempotents(m.target.dim, build)
            hhs = {i: lambda_normalized_summand(nms, es, i, build) for i in range(1, top + 1)}
            hcs = {i: lambda_mixed_summand(nms, mts, es, i, build) for i in range(1, top + 1)}
            hht = {i: lambda_normalized_summand(nmt, et, i, build) for i in range(1, top + 1)}
            hct = {i: lambda_mixed_summand(nmt, mtt, et, i, build) for i in range(1, top + 1)}
            for n in range(top):
                for i in range(1, n + 1):
                    incs = restricted_map(
                        mixed_include(nms, mts, n), hhs[i].bases[n], hcs[i].bases[n],
                        context="restricted inclusion",
                    )
                    inct = restricted_map(
                        mixed_include(nmt, mtt, n), hht[i].bases[n], hct[i].bases[n],
                        context="restricted inclusion",
                    )
                    for x in _xs(m):
                        fh = restricted_map(
                            induced_on_quotient(
                                chain_map(m, x, n), nms.spaces[n], nmt.spaces[n],
                                context="normalized measured map",
                            ),
                            hhs[i].bases[n], hht[i].bases[n],
                            context="measured map on summands",
                        )
                        fc = restricted_map(
                            mixed_chain_map(m, x, nms, nmt, n),
                            hcs[i].bases[n], hct[i].bases[n],
                            context="measured map on total summands",
                        )
                        w = _eq(
                            fc @ incs, inct @ fh,
                            f"measured inclusion square at n={n}, i={i}, x index {min(x)}",
                        )
                        if w:
                            return w
            return ""
        run.check("measured-summand-ladder", sub, f"n=0..{top - 1}", mladder)
        _skip_excess(run, "measured-summand-ladder", sub, top, asked)
    return run.records


# ------------------------------------------------------------------- 5.x


def _suite_prop5_1(ws, md, measuring):
    run = SuiteRun("prop5.1")
    top, asked = _degree_cap(md, LIE_CAP)
    pairs = [(p, q) for p in range(1, top) for q in range(1, top + 1 - p)]
    for m in _pick_measurings(ws, "prop5.1", measuring):
        for r in (1, 2):
            sub = f"{_mname(m)} at matrix size {r}"
            def msq(m=m, r=r):
                lm = gl_measuring(m, r)
                cs = ce_data(lm.source, top)
                ct = ce_data(lm.target, top)
                for n in range(1, top + 1):
                    for x in _xs(m):
                        w = _eq(
                            ct.complex.diff[n] @ ce_map(lm, x, cs, ct, n),
                            ce_map(lm, x, cs, ct, n - 1) @ cs.complex.diff[n],
                            f"chain square at n={n}, x index {min(x)}",
                        )
                        if w:
                            return w
                for p, q in pairs:
                    sps = wedge_split(cs, p, q)
                    spt = wedge_split(ct, p, q)
                    for x in _xs(m):
                        lhs = spt @ ce_map(lm, x, cs, ct, p + q)
                        rhs = None
                        for (j, k), c in m.coalgebra.delta(x).items():
                            t = ce_map(lm, {j: F1}, cs, ct, p).kron(
                                ce_map(lm, {k: F1}, cs, ct, q)
                            ).scale(c)
                            rhs = t if rhs is None else rhs + t
                        w = _eq(
                            lhs, rhs @ sps,
                            f"unshuffle square at p={p},q={q},x index {min(x)}",
                        )
                        if w:
                            return w
                return ""
            run.check("wedge-unshuffle-squares", sub, f"p+q<={top}", msq)
            _skip_excess(run, "wedge-unshuffle-squares", sub, top, asked)
    return run.records


def _suite_lem5_2(ws, md, measuring):
    run = SuiteRun("lem5.2")
    top, asked = _degree_cap(md, LIE_CAP)
    pool = _pick_measurings(ws, "lem5.2", measuring)
    ladders: dict = {}
    def ladder(A):
        if A.name not in ladders:
            ladders[A.name] = MatrixLadder(A, 2, top)
        return ladders[A.name]
    seen: dict = {}
    for m in pool:
        for A in (m.source, m.target):
            seen.setdefault(A.name, A)
    for name in sorted(seen):
        A = seen[name]
        def chains(A=A):
            lad = ladder(A)
            for n in range(top + 1):
                lad.theta(n)
                lad.trace(n)
            lad1 = MatrixLadder(A, 1, top)
            for n in range(top + 1):
                w = _eq(
                    lad1.trace(n), QMat.identity(lad1.base_tilde.spaces[n].dim),
                    f"size-1 trace vs identity at n={n}",
                )
                if w:
                    return w
            return ""
        run.check("ladder-chain-squares", A.name, f"n=0..{top}", chains)
        _skip_excess(run, "ladder-chain-squares", A.name, top, asked)
    for m in pool:
        sub = _mname(m)
        def msq(m=m):
            lads, ladt = ladder(m.source), ladder(m.target)
            mm2 = matrix_measuring(m, 2)
            lmgl = gl_measuring(m, 2)
            for n in range(top + 1):
                for x in _xs(m):
                    w = _eq(
                        tilde_chain_map(mm2, x, lads.tilde, ladt.tilde, n) @ lads.theta(n),
                        ladt.theta(n) @ ce_map(lmgl, x, lads.ce, ladt.ce, n + 1),
                        f"antisymmetrization square at n={n}, x index {min(x)}",
                    )
                    if w:
                        return w
                    w = _eq(
                        tilde_chain_map(m, x, lads.base_tilde, ladt.base_tilde, n)
                        @ lads.trace(n),
                        ladt.trace(n) @ tilde_chain_map(mm2, x, lads.tilde, ladt.tilde, n),
                        f"trace square at n={n}, x index {min(x)}",
                    )
                    if w:
                        return w
            return ""
        run.check("measured-ladder-squares", sub, f"n=0..{top}", msq)
        _skip_excess(run, "measured-ladder-squares", sub, top, asked)
    return run.records


def _suite_prop5_5(ws, md, measuring):
    run = SuiteRun("prop5.5")
    top, asked = _degree_cap(md, LIE_CAP)
    pairs = [(p, q) for p in range(1, top) for q in range(1, top + 1 - p)]
    for m in _pick_measurings(ws, "prop5.5", measuring):
        for r in (1, 2):
            sub = f"{_mname(m)} at matrix size {r}"
            def msq(m=m, r=r):
                lm = gl_measuring(m, r)
                cs = cl_data(lm.source, top)
                ct = cl_data(lm.target, top)
                for n in range(2, top + 1):
                    w = _zero(
                        cs.complex.diff[n - 1] @ cs.complex.diff[n], f"d o d at n={n}"
                    )
                    if w:
                        return w
                for n in range(1, top + 1):
                    for x in _xs(m):
                        w = _eq(
                            ct.complex.diff[n] @ cl_map(lm, x, n),
                            cl_map(lm, x, n - 1) @ cs.complex.diff[n],
                            f"chain square at n={n}, x index {min(x)}",
                        )
                        if w:
                            return w
                for p, q in pairs:
                    for x in _xs(m):
                        lhs = cl_map(lm, x, p + q)
                        rhs = None
                        for (j, k), c in m.coalgebra.delta(x).items():
                            t = cl_map(lm, {j: F1}, p).kron(cl_map(lm, {k: F1}, q)).scale(c)
                            rhs = t if rhs is None else rhs + t
                        w = _eq(lhs, rhs, f"tensor split at p={p},q={q},x index {min(x)}")
                        if w:
                            return w
                return ""
            run.check("tensor-split-squares", sub, f"p+q<={top}", msq)
            _skip_excess(run, "tensor-split-squares", sub, top, asked)
    return run.records


def _suite_prop5_6(ws, md, measuring):
    run = SuiteRun("prop5.6")
    top, asked = _degree_cap(md, CHAIN_CAP)
    vees: dict = {}
    def feasible(A):
        t = 0
        while t + 1 <= top and math.factorial(t + 1) * A.dim ** (t + 2) <= DIM_CAP:
            t += 1
        return t
    for A in _sorted_algebras(ws):
        t = feasible(A)
        def construct(A=A, t=t):
            vees[A.name] = CyclicWordComplex(A, t)
            return ""
        run.check("word-complex-construction", A.name, f"n=0..{t}", construct)
        full = asked if asked is not None else top
        if t < full:
            run.skip(
                "word-complex-construction", A.name, f"n={t + 1}..{full}",
                f"the word complex dimension would exceed the cap {DIM_CAP}",
            )
        if A.name not in vees:
            continue
        V = vees[A.name]
        def retract(V=V, t=t):
            for n in range(t + 1):
                w = _eq(
                    V.zeta(n) @ V.iota(n), QMat.identity(V.iota(n).ncols),
                    f"zeta o iota vs identity at n={n}",
                )
                if w:
                    return w
            return ""
        run.check("retraction-identity", A.name, f"n=0..{t}", retract)
    for m in _pick_measurings(ws, "prop5.6", measuring):
        if m.source.name not in vees:
            continue
        V = vees[m.source.name]
        t = V.top
        sub = f"{m.name} on {m.source.name}"
        def msq(m=m, V=V, t=t):
            for n in range(t + 1):
                for x in _xs(m):
                    vm = V.measured(m, x, n)
                    cm = chain_map(m, x, n)
                    w = _eq(
                        vm @ V.iota(n), V.iota(n) @ cm,
                        f"inclusion square at n={n}, x index {min(x)}",
                    )
                    if w:
                        return w
                    w = _eq(
                        V.zeta(n) @ vm, cm @ V.zeta(n),
                        f"retraction square at n={n}, x index {min(x)}",
                    )
                    if w:
                        return w
            return ""
        run.check("measured-word-squares", sub, f"n=0..{t}", msq)
        full = asked if asked is not None else top
        if t < full:
            run.skip(
                "measured-word-squares", sub, f"n={t + 1}..{full}",
                f"the word complex dimension would exceed the cap {DIM_CAP}",
            )
    return run.records


# ------------------------------------------------------------------- 6.x


def _suite_lem6_1(ws, md, measuring):
    run = SuiteRun("lem6.1")
    top, asked = _degree_cap(md, LIE_CAP)
    for m in _pick_measurings(ws, "lem6.1", measuring):
        sub = _mname(m)
        def msq(m=m):
            lm = gl_measuring(m, 2)
            cs, ct = ce_data(lm.source, top), ce_data(lm.target, top)
            cds = ce_coinvariants(m.source, 2, top)
            cdt = ce_coinvariants(m.target, 2, top)
            for n in range(1, top + 1):
                pn = coinvariant_projection(
                    cs.spaces[n], cds.spaces[n], "the coinvariant projection"
                )
                pm = coinvariant_projection(
                    cs.spaces[n - 1], cds.spaces[n - 1], "the coinvariant projection"
                )
                w = _eq(
                    cds.complex.diff[n] @ pn, pm @ cs.complex.diff[n],
                    f"projection chain square at n={n}",
                )
                if w:
                    return w
            for n in range(top + 1):
                ps = coinvariant_projection(
                    cs.spaces[n], cds.spaces[n], "the coinvariant projection"
                )
                pt = coinvariant_projection(
                    ct.spaces[n], cdt.spaces[n], "the coinvariant projection"
                )
                for x in _xs(m):
                    w = _eq(
                        pt @ ce_map(lm, x, cs, ct, n),
                        coinvariant_map(lm, x, cds, cdt, n) @ ps,
                        f"measured projection square at n={n}, x index {min(x)}",
                    )
                    if w:
                        return w
            return ""
        run.check("coinvariant-projection-squares", sub, f"n=0..{top}", msq)
        _skip_excess(run, "coinvariant-projection-squares", sub, top, asked)
    return run.records


def _suite_prop6_2(ws, md, measuring):
    return _block_sum_suite(ws, md, measuring, "prop6.2", "wedge", ce_coinvariants)


def _suite_prop6_5(ws, md, measuring):
    return _block_sum_suite(ws, md, measuring, "prop6.5", "tensor", cl_coinvariants)


def _block_sum_suite(ws, md, measuring, anchor, kind, build):
    run = SuiteRun(anchor)
    top, asked = _degree_cap(md, LIE_CAP)
    pool = _pick_measurings(ws, anchor, measuring)
    pairs = [(p, q) for p in range(1, top) for q in range(1, top + 1 - p)]
    seen: dict = {}
    for m in pool:
        seen.setdefault(m.source.name, m.source)
    prods: dict = {}
    for name in sorted(seen):
        A = seen[name]
        def construct(A=A):
            src = build(A, 1, top)
            tgt = build(A, 2, top)
            prods[A.name] = (
                src, tgt,
                {(p, q): coinvariant_product(A, src, src, tgt, p, q) for p, q in pairs},
            )
            return ""
        run.check("block-sum-product-descends", name, f"p+q<={top}", construct)
        _skip_excess(run, "block-sum-product-descends", name, top, asked)
    for m in pool:
        if m.source.name not in prods:
            continue
        src, tgt, table = prods[m.source.name]
        sub = f"{m.name} on {m.source.name}"
        def msq(m=m, src=src, tgt=tgt, table=table):
            lm1 = gl_measuring(m, 1)
            lm2 = gl_measuring(m, 2)
            for (p, q), prod in sorted(table.items()):
                for x in _xs(m):
                    lhs = coinvariant_map(lm2, x, tgt, tgt, p + q) @ prod
                    rhs = None
                    for (j, k), c in m.coalgebra.delta(x).items():
                        t = coinvariant_map(lm1, {j: F1}, src, src, p).kron(
                            coinvariant_map(lm1, {k: F1}, src, src, q)
                        ).scale(c)
                        rhs = t if rhs is None else rhs + t
                    w = _eq(
                        lhs, prod @ rhs,
                        f"{kind} product square at p={p},q={q},x index {min(x)}",
                    )
                    if w:
                        return w
            return ""
        run.check("measured-product-squares", sub, f"p+q<={top}", msq)
        _skip_excess(run, "measured-product-squares", sub, top, asked)
    return run.records


# ------------------------------------------------------------------- 7.x


def _suite_prop7_2(ws, md, measuring):
    run = SuiteRun("prop7.2")
    top, asked = _degree_cap(md, CHAIN_CAP)
    dds: dict = {}
    for A in _sorted_algebras(ws, lambda A: A.involution is not None):
        def construct(A=A):
            dds[A.name] = DihedralData(A, top)
            return ""
        run.check("group-action-descends", A.name, f"n=0..{top}", construct)
        if A.name not in dds:
            continue
        dd = dds[A.name]
        def relations(dd=dd):
            ops = dd.ops
            for n in range(top + 1):
                u, v = dd.u(n), dd.v(n)
                eye = QMat.identity(ops.dim(n))
                w = _eq(_power(u, n + 1), eye, f"u^{n + 1} vs identity at n={n}")
                if w:
                    return w
                w = _eq(v @ v, eye, f"v^2 vs identity at n={n}")
                if w:
                    return w
                w = _eq(v @ u @ v, _power(u, n), f"v u v vs u^-1 at n={n}")
                if w:
                    return w
            return ""
        run.check("group-relations", A.name, f"n=0..{top}", relations)
        def projection(dd=dd):
            tc = tilde_complex(dd.ops, top)
            prs = [dihedral_projection(tc.spaces[n], dd, n) for n in range(top + 1)]
            for n in range(1, top + 1):
                w = _eq(
                    dd.complex.diff[n] @ prs[n], prs[n - 1] @ tc.diff[n],
                    f"projection chain square at n={n}",
                )
                if w:
                    return w
            return ""
        run.check("cyclic-to-dihedral-projection", A.name, f"n=0..{top}", projection)
        _skip_excess(run, "group-relations", A.name, top, asked)
    for m in _pick_measurings(ws, "prop7.2", measuring):
        sub = _mname(m)
        if m.source.name not in dds or m.target.name not in dds:
            continue
        ds, dt = dds[m.source.name], dds[m.target.name]
        def msq(m=m, ds=ds, dt=dt):
            maps = {}
            for n in range(top + 1):
                for c, x in enumerate(_xs(m)):
                    maps[(n, c)] = dihedral_map(m, x, ds, dt, n)
            for n in range(1, top + 1):
                for c in range(m.coalgebra.dim):
                    w = _eq(
                        dt.complex.diff[n] @ maps[(n, c)],
                        maps[(n - 1, c)] @ ds.complex.diff[n],
                        f"measured chain square at n={n}, x index {c}",
                    )
                    if w:
                        return w
            return ""
        run.check("measured-dihedral-squares", sub, f"n=0..{top}", msq)
        _skip_excess(run, "measured-dihedral-squares", sub, top, asked)
    return run.records


def _suite_lem7_3(ws, md, measuring):
    run = SuiteRun("lem7.3")
    for m in _pick_measurings(ws, "lem7.3", measuring):
        sub = _mname(m)
        for r in (1, 2):
            def transpose(m=m, r=r):
                _conjugate_intertwining(
                    m, r,
                    transpose_conjugate(m.source, r),
                    transpose_conjugate(m.target, r),
                    f"the transpose conjugation of size {r}",
                )
                return ""
            run.check("transpose-conjugate-intertwined", sub, f"r={r}", transpose)
        def symplectic(m=m):
            _conjugate_intertwining(
                m, 2,
                symplectic_conjugate(m.source, 1),
                symplectic_conjugate(m.target, 1),
                "the symplectic conjugation of size 2",
            )
            return ""
        run.check("symplectic-conjugate-intertwined", sub, "r=2", symplectic)
    return run.records


def _suite_thm7_5(ws, md, measuring):
    run = SuiteRun("thm7.5")
    top, asked = _degree_cap(md, LIE_CAP)
    lads: dict = {}
    dds: dict = {}
    subdata: dict = {}

    def ladder(A):
        if A.name not in lads:
            lads[A.name] = MatrixLadder(A, 2, top)
        return lads[A.name]

    def dihedral(A):
        if A.name not in dds:
            dds[A.name] = DihedralData(A, top)
        return dds[A.name]

    def sub_column(A, kind):
        key = (A.name, kind)
        if key not in subdata:
            r = 2 if kind == "skew" else 1
            make = skew_lie if kind == "skew" else symplectic_lie
            g, basis = make(A, r)
            cesub = ce_data(g, top + 1)
            lad = ladder(A)
            inc = {}
            for k in range(top + 2):
                T = QMat.identity(1)
                for _ in range(k):
                    T = T.kron(basis)
                inc[k] = induced_on_quotient(
                    T, cesub.spaces[k], lad.ce.spaces[k],
                    context=f"the wedge inclusion at degree {k}",
                )
            subdata[key] = (cesub, inc)
        return subdata[key]

    for m in _pick_measurings(ws, "thm7.5", measuring):
        sub = _mname(m)
        def columns(m=m):
            lad_s, lad_t = ladder(m.source), ladder(m.target)
            dd_s, dd_t = dihedral(m.source), dihedral(m.target)
            mm2 = matrix_measuring(m, 2)
            lmgl = gl_measuring(m, 2)
            for n in range(top + 1):
                proj_s = dihedral_projection(lad_s.base_tilde.spaces[n], dd_s, n)
                proj_t = dihedral_projection(lad_t.base_tilde.spaces[n], dd_t, n)
                for x in _xs(m):
                    ci = min(x)
                    tmm = tilde_chain_map(mm2, x, lad_s.tilde, lad_t.tilde, n)
                    tmb = tilde_chain_map(m, x, lad_s.base_tilde, lad_t.base_tilde, n)
                    w = _eq(
                        tmm @ lad_s.theta(n),
                        lad_t.theta(n) @ ce_map(lmgl, x, lad_s.ce, lad_t.ce, n + 1),
                        f"antisymmetrization square at n={n}, x index {ci}",
                    )
                    if w:
                        return w
                    w = _eq(
                        tmb @ lad_s.trace(n), lad_t.trace(n) @ tmm,
                        f"trace square at n={n}, x index {ci}",
                    )
                    if w:
                        return w
                    w = _eq(
                        dihedral_map(m, x, dd_s, dd_t, n) @ proj_s, proj_t @ tmb,
                        f"dihedral projection square at n={n}, x index {ci}",
                    )
                    if w:
                        return w
            return ""
        run.check("matrix-ladder-columns", sub, f"n=0..{top}", columns)
        _skip_excess(run, "matrix-ladder-columns", sub, top, asked)
        for kind in ("skew", "symplectic"):
            ksub = f"{sub}, {kind} row"
            def inclusion(m=m, kind=kind):
                r = 2 if kind == "skew" else 1
                lad_s, lad_t = ladder(m.source), ladder(m.target)
                lmgl = gl_measuring(m, 2)
                lmsub = restricted_measuring(m, r, kind)
                cesub_s, inc_s = sub_column(m.source, kind)
                cesub_t, inc_t = sub_column(m.target, kind)
                for k in range(1, top + 2):
                    w = _eq(
                        lad_s.ce.complex.diff[k] @ inc_s[k],
                        inc_s[k - 1] @ cesub_s.complex.diff[k],
                        f"inclusion chain square at degree {k}",
                    )
                    if w:
                        return w
                for n in range(top + 1):
                    for x in _xs(m):
                        w = _eq(
                            ce_map(lmgl, x, lad_s.ce, lad_t.ce, n + 1) @ inc_s[n + 1],
                            inc_t[n + 1] @ ce_map(lmsub, x, cesub_s, cesub_t, n + 1),
                            f"inclusion square at n={n}, x index {min(x)}",
                        )
                        if w:
                            return w
                return ""
            run.check("subalgebra-column", ksub, f"n=0..{top}", inclusion)
            _skip_excess(run, "subalgebra-column", ksub, top, asked)
    return run.records


# ---------------------------------------------------------------- registry


_SUITES = {
    "prop2.2": _suite_prop2_2,
    "prop2.4": _suite_prop2_4,
    "prop2.5": _suite_prop2_5,
    "prop2.6": _suite_prop2_6,
    "prop3.1": _suite_prop3_1,
    "thm3.2": _suite_thm3_2,
    "prop3.4": _suite_prop3_4,
    "lem4.3": _suite_lem4_3,
    "thm4.4": _suite_thm4_4,
    "thm4.6": _suite_thm4_6,
    "cor4.7": _suite_cor4_7,
    "prop5.1": _suite_prop5_1,
    "lem5.2": _suite_lem5_2,
    "prop5.5": _suite_prop5_5,
    "prop5.6": _suite_prop5_6,
    "lem6.1": _suite_lem6_1,
    "prop6.2": _suite_prop6_2,
    "prop6.5": _suite_prop6_5,
    "prop7.2": _suite_prop7_2,
    "lem7.3": _suite_lem7_3,
    "thm7.5": _suite_thm7_5,
}


def run_suite(ws, suite: str, *, measuring: str | None = None,
              max_degree: int | None = None) -> list[CheckRecord]:
    """Run one suite, or all of them in report order, and return the records.

    With ``suite="all"`` and an explicit measuring, suites where that
    measuring cannot structurally apply run their algebra-level checks only;
    naming an inapplicable measuring for a single suite raises
    ``ValidationError``.
    """
    if suite == "all":
        if measuring is not None and measuring not in ws.measurings:
            raise ValidationError(f"unknown measuring {measuring!r}")
        out: list[CheckRecord] = []
        for sid in SUITE_IDS:
            arg = measuring
            if measuring is not None and not _PRED[sid][0](ws.measurings[measuring]):
                arg = _SKIP_POOL
            out.extend(_SUITES[sid](ws, max_degree, arg))
        return out
    if suite not in _SUITES:
        raise ValidationError(f"unknown suite {suite!r}")
    return _SUITES[suite](ws, max_degree, measuring)
