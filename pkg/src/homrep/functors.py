"""Functors on the bracket category of braid groups, tabulated on objects 0..N.

A ``TabulatedFunctor`` knows, for each object n, its basis labels, the
generator matrices F(sigma_i^{+-1}) (computed lazily, or absent in ranks-only
mode) and the stabilization F([1, id_{1+n}]) : F(n) -> F(n+1).

Translation, difference and evanescence follow the exact sequence
0 -> kappa F -> F -> tau F -> delta F -> 0.  The translated stabilization is
F(sigma_1^{-1}) o F([1, id]): the new strand enters on the left and is braided
past the translation strand.  Differences are computed from a unit-pivot
split of the stabilization: column operations with unit pivots reduce it to a
form whose pivot rows P carry an invertible block, and the complement rows C
label a free basis of the cokernel, with projection
    pi(v) = v_C - S_C S_P^{-1} v_P.
When pivoting succeeds, the zero columns that remain span the kernel.

Labels and pivot preference.  Every functor carries a ``LabelRule`` telling
which label the stabilization sends a label to at leading order (insert a
zero block after ``slot`` blocks).  The split prefers that row when its entry
is a unit, so the cokernel labels come out as the constrained partitions.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Hashable, Sequence

from .forkcalc import generator_matrix
from .groupring import A1, A2, INTEGERS, Elem, Ring, lb_ring
from .partitions import (
    enum_P,
    enum_Q,
    forget_first,
    lb_rank,
    stab_insert,
    stab_insert_Q,
)
from .repmatrix import RepMatrix
from .words import BraidWord, shift


class CutoffExceeded(ValueError):
    pass


class NonSplit(ValueError):
    """A stabilization with no unit pivot left in a nonzero column."""


@dataclass(frozen=True)
class LabelRule:
    """Leading-order label map of a stabilization: insert a zero block after ``slot`` blocks."""

    kind: str  # "P" (partitions) or "Q" (arrangements)
    m: int
    slot: int = 0

    def insert(self, label):
        if self.kind == "P":
            return stab_insert(self.m, self.slot, label)
        return stab_insert_Q(self.slot, label)

    def insert_raw(self, label):
        """Insert the zero block without checking the constraint on the earlier blocks."""
        if self.kind == "P":
            return tuple(label[: self.slot]) + (0,) + tuple(label[self.slot:])
        perm, omega = label
        return perm, tuple(omega[: 2 * self.slot]) + (0, 0) + tuple(omega[2 * self.slot:])

    def shifted(self) -> LabelRule:
        return LabelRule(self.kind, self.m, self.slot + 1)


@dataclass(frozen=True)
class BracketMorphism:
    """[target - source, braid] : source -> target, with braid in B_target."""

    source: int
    target: int
    braid: BraidWord

    def __post_init__(self):
        if self.target < self.source or self.source < 0:
            raise ValueError("need 0 <= source <= target")
        if self.braid.strands != self.target:
            raise ValueError("braid must live in B_target")

    @classmethod
    def identity(cls, n: int) -> BracketMorphism:
        return cls(n, n, BraidWord(n))

    @classmethod
    def stabilization(cls, n: int, k: int = 1) -> BracketMorphism:
        return cls(n, n + k, BraidWord(n + k))

    def compose(self, first: BracketMorphism) -> BracketMorphism:
        """self o first: [B, psi] o [A, phi] = [A + B, psi (id_B # phi)]."""
        if first.target != self.source:
            raise ValueError("morphisms are not composable")
        extra = self.target - self.source
        return BracketMorphism(first.source, self.target, self.braid * shift(first.braid, extra))


# -- unit-pivot split ---------------------------------------------------------------------


@dataclass
class Split:
    """Result of splitting S : F(n) -> F(n+1)."""

    complement: list[int]  # row indices of S labelling the cokernel basis
    pivots: list[tuple[int, Elem, dict]]  # (pivot row, unit, reduced column)
    kernel_rank: int

    def project(self, vec: dict[int, Elem]) -> dict[int, Elem]:
        """Cokernel coordinates (indexed by position in ``complement``) of a vector."""
        acc = dict(vec)
        for r, d, col in self.pivots:
            v = acc.get(r)
            if not v:
                continue
            coeff = v * d.inverse()
            for rr, x in col.items():
                y = acc.get(rr)
                acc[rr] = y - coeff * x if y is not None else -(coeff * x)
        out = {}
        for pos, r in enumerate(self.complement):
            v = acc.get(r)
            if v:
                out[pos] = v
        return out


def unit_split(s: RepMatrix, preferred: Callable[[Hashable], Hashable] | None = None) -> Split:
    """Column-reduce S with unit pivots.

    For each column the pivot is the row labelled ``preferred(column label)``
    if its current entry is a unit, otherwise the unit entry with the
    largest row label.  Raises NonSplit when a nonzero column has no unit.
    """
    cols = [s.column(j) for j in range(s.cols)]
    index = {lab: i for i, lab in enumerate(s.row_labels)}
    pivots = []
    kernel = 0
    for j in range(s.cols):
        col = {r: v for r, v in cols[j].items() if v}
        if not col:
            kernel += 1
            continue
        r = None
        if preferred is not None:
            try:
                want = index.get(preferred(s.col_labels[j]))
            except ValueError:
                want = None
            if want is not None and want in col and col[want].is_unit():
                r = want
        if r is None:
            units = [rr for rr, v in col.items() if v.is_unit()]
            if not units:
                raise NonSplit(f"column {s.col_labels[j]} has no unit entry")
            r = max(units, key=lambda rr: s.row_labels[rr])
        d = col[r]
        dinv = d.inverse()
        for jj in range(j + 1, s.cols):
            v = cols[jj].get(r)
            if v:
                coeff = v * dinv
                new = dict(cols[jj])
                for rr, x in col.items():
                    y = new.get(rr)
                    new[rr] = y - coeff * x if y is not None else -(coeff * x)
                cols[jj] = {k: x for k, x in new.items() if x}
        pivots.append((r, d, col))
    used = {r for r, _, _ in pivots}
    complement = [r for r in range(s.rows) if r not in used]
    return Split(complement, pivots, kernel)


# -- tabulated functors ---------------------------------------------------------------------


class TabulatedFunctor:
    """A functor on objects 0..cutoff given by lazily computed, cached data."""

    def __init__(
        self,
        name: str,
        ring: Ring,
        cutoff: int,
        labels: Callable[[int], Sequence],
        rule: LabelRule | None,
        gen: Callable[[int, int, int], RepMatrix] | None,
        stab: Callable[[int], RepMatrix],
        kernel_ranks: Callable[[int], int] | None = None,
    ):
        self.name = name
        self.ring = ring
        self.cutoff = cutoff
        self.rule = rule
        self._labels = lru_cache(maxsize=None)(lambda n: tuple(labels(n)))
        self._gen = lru_cache(maxsize=None)(gen) if gen is not None else None
        self._stab = lru_cache(maxsize=None)(stab)
        self._kernel = kernel_ranks

    @property
    def ranks_only(self) -> bool:
        return self._gen is None

    def _check(self, n: int) -> None:
        if not 0 <= n <= self.cutoff:
            raise CutoffExceeded(f"object {n} outside 0..{self.cutoff} for {self.name}")

    def labels(self, n: int) -> tuple:
        self._check(n)
        return self._labels(n)

    def rank(self, n: int) -> int:
        return len(self.labels(n))

    def ranks(self) -> list[int]:
        return [self.rank(n) for n in range(self.cutoff + 1)]

    def gen(self, n: int, i: int, sign: int = 1) -> RepMatrix:
        """F(sigma_i^sign) on F(n)."""
        self._check(n)
        if self._gen is None:
            raise ValueError(f"{self.name} is ranks-only")
        if not 1 <= i <= n - 1:
            raise ValueError(f"no generator sigma_{i} in B_{n}")
        return self._gen(n, i, sign)

    def stab(self, n: int) -> RepMatrix:
        """F([1, id_{1+n}]) : F(n) -> F(n+1)."""
        self._check(n + 1)
        return self._stab(n)

    def braid(self, b: BraidWord) -> RepMatrix:
        n = b.strands
        out = RepMatrix.identity(self.ring, self.labels(n))
        for i, s in b.letters:
            out = out @ self.gen(n, i, s)
        return out

    def __repr__(self) -> str:
        return f"TabulatedFunctor({self.name}, cutoff={self.cutoff})"


def _injection(ring: Ring, src: Sequence, dst: Sequence, f: Callable) -> RepMatrix:
    index = {lab: i for i, lab in enumerate(dst)}
    entries = {}
    for j, lab in enumerate(src):
        entries[index[f(lab)], j] = ring.one()
    return RepMatrix(ring, len(dst), len(src), entries, dst, src)


def lb_labels(m: int, n: int) -> tuple:
    return enum_P(m, n - 1) if n >= 2 else ()


def lb_tabulate(m: int, cutoff: int) -> TabulatedFunctor:
    """The m-point Lawrence-Bigelow functor on objects 0..cutoff.

    m = 0 gives the constant functor: rank 1 with trivial action from
    object 2 on, and 0 at objects 0 and 1.
    """
    if m < 0 or cutoff < 0:
        raise ValueError("need m >= 0 and cutoff >= 0")
    ring = A1 if m <= 1 else A2
    rule = LabelRule("P", m, 0)

    def gen(n, i, s):
        if m == 0:
            return RepMatrix.identity(ring, lb_labels(0, n))
        return generator_matrix(m, n, i, s)

    def stab(n):
        return _injection(ring, lb_labels(m, n), lb_labels(m, n + 1), rule.insert)

    return TabulatedFunctor(f"LB_{m}", ring, cutoff, lambda n: lb_labels(m, n), rule, gen, stab)


def moriyama_tabulate(m: int, cutoff: int) -> TabulatedFunctor:
    """Ranks-only Moriyama functor: Q_m(g) labels, stabilization by a front (0,0) pair."""
    if m < 1:
        raise ValueError("m must be at least 1")
    rule = LabelRule("Q", m, 0)

    def labels(g):
        return enum_Q(m, g) if g >= 1 else ()

    def stab(g):
        return _injection(INTEGERS, labels(g), labels(g + 1), rule.insert)

    return TabulatedFunctor(f"Mor_{m}", INTEGERS, cutoff, labels, rule, None, stab)


def constant_tabulate(rank: int, cutoff: int, ring: Ring = INTEGERS) -> TabulatedFunctor:
    """Constant functor with identity structure maps (ranks-only)."""
    labs = tuple(range(rank))
    return TabulatedFunctor(
        f"const_{rank}", ring, cutoff, lambda n: labs, None, None, lambda n: RepMatrix.identity(ring, labs)
    )


# -- evaluation ---------------------------------------------------------------------------------


def eval_morphism(f: TabulatedFunctor, mor: BracketMorphism) -> RepMatrix:
    """F([k, gamma]) = F(gamma) o F([k, id])."""
    if mor.target > f.cutoff:
        raise CutoffExceeded(f"target {mor.target} beyond cutoff {f.cutoff}")
    out = RepMatrix.identity(f.ring, f.labels(mor.source))
    for n in range(mor.source, mor.target):
        out = f.stab(n) @ out
    if mor.braid.letters:
        out = f.braid(mor.braid) @ out
    return out


# public short name; ``eval`` itself would shadow the builtin
evaluate = eval_morphism


def random_bracket(rng: random.Random, source: int, target: int, length: int = 6) -> BracketMorphism:
    letters = []
    if target >= 2:
        letters = [(rng.randrange(1, target), rng.choice((1, -1))) for _ in range(length)]
    return BracketMorphism(source, target, BraidWord(target, tuple(letters)))


# -- translation, difference, evanescence ------------------------------------------------------


def translate(f: TabulatedFunctor) -> TabulatedFunctor:
    """tau_1 F: n -> F(1+n), generators shifted by one, stabilization F(sigma_1^-1) o F([1, id])."""
    if f.cutoff < 1:
        raise CutoffExceeded("translation needs cutoff >= 1")
    rule = f.rule.shifted() if f.rule else None

    if f.ranks_only:
        if rule is None:
            stab = lambda n: f.stab(n + 1)  # noqa: E731  constant-type functors
        else:
            stab = lambda n: _injection(f.ring, f.labels(n + 1), f.labels(n + 2), rule.insert_raw)  # noqa: E731
        gen = None
    else:

        def stab(n):
            return f.gen(n + 2, 1, -1) @ f.stab(n + 1)

        def gen(n, i, s):
            return f.gen(n + 1, i + 1, s)

    return TabulatedFunctor(f"tau({f.name})", f.ring, f.cutoff - 1, lambda n: f.labels(n + 1), rule, gen, stab)


def _preferred(f: TabulatedFunctor):
    if f.rule is None:
        return None
    rule = f.rule

    def pref(label):
        return rule.insert(label)

    return pref


def difference(f: TabulatedFunctor) -> TabulatedFunctor:
    """delta_1 F = coker(F -> tau_1 F), with induced generators and stabilizations."""
    t = translate(f)
    pref = _preferred(f)

    @lru_cache(maxsize=None)
    def split(n) -> Split:
        return unit_split(f.stab(n), pref)

    def labels(n):
        tl = t.labels(n)
        return [tl[r] for r in split(n).complement]

    def induced(n_src: int, n_dst: int, mat: RepMatrix) -> RepMatrix:
        src, dst = split(n_src), split(n_dst)
        cols = []
        for r in src.complement:
            cols.append(dst.project(mat.column(r)))
        dl, sl = labels(n_dst), labels(n_src)
        entries = {(i, j): v for j, col in enumerate(cols) for i, v in col.items()}
        return RepMatrix(f.ring, len(dl), len(sl), entries, dl, sl)

    gen = None if f.ranks_only else (lambda n, i, s: induced(n, n, t.gen(n, i, s)))
    stab = lambda n: induced(n, n + 1, t.stab(n))  # noqa: E731
    return TabulatedFunctor(
        f"delta({f.name})",
        f.ring,
        f.cutoff - 1,
        labels,
        t.rule,
        gen,
        stab,
        kernel_ranks=lambda n: split(n).kernel_rank,
    )


def kernel_rank(f: TabulatedFunctor, n: int) -> int:
    """Rank of kappa_1 F(n) = ker F([1, id_{1+n}])."""
    return unit_split(f.stab(n), _preferred(f)).kernel_rank


def evanescence(f: TabulatedFunctor) -> TabulatedFunctor:
    """kappa_1 F as a ranks-only functor (basis labels are kernel indices)."""
    ranks = [kernel_rank(f, n) for n in range(f.cutoff)]

    def labels(n):
        return tuple(("ker", j) for j in range(ranks[n]))

    def stab(n):
        return RepMatrix.zeros(f.ring, labels(n + 1), labels(n))

    return TabulatedFunctor(f"kappa({f.name})", f.ring, f.cutoff - 1, labels, None, None, stab)


def is_zero(f: TabulatedFunctor) -> bool:
    return all(r == 0 for r in f.ranks())


def iterated_difference(f: TabulatedFunctor, k: int) -> TabulatedFunctor:
    for _ in range(k):
        f = difference(f)
    return f


# -- reports --------------------------------------------------------------------------------


def stab_is_bijection(f: TabulatedFunctor, n: int) -> bool:
    s = f.stab(n)
    if s.rows != s.cols:
        return False
    sp = unit_split(s, _preferred(f))
    return not sp.complement and sp.kernel_rank == 0


@dataclass
class DegreeReport:
    functor: str
    cutoff: int
    ranks: list[list[int]] = field(default_factory=list)  # ranks of delta^k F on its window
    kernel_ranks: list[list[int]] = field(default_factory=list)
    strong_degree: int | None = None
    very_strong: bool | None = None
    weak_degree: int | None = None
    weak_support: list[int] | None = None
    bijection_witness: dict | None = None
    status: str = "inconclusive"

    def to_json(self) -> dict:
        return dict(self.__dict__)


def degree_report(f: TabulatedFunctor, cutoff: int | None = None, max_k: int | None = None) -> DegreeReport:
    """Evidence for the strong, very strong and weak degree on the window 0..cutoff.

    strong degree: least d with delta^{d+1} F = 0 on every object of its window;
    very strong: additionally kappa delta^k F = 0 for all k <= d;
    weak degree: least d with delta^{d+1} F supported on finitely many objects,
    which on a window means its support ends at least two objects before the
    window does; the witness records the objects n on which the stabilization
    of delta^d F is a bijection.
    """
    cutoff = f.cutoff if cutoff is None else cutoff
    if cutoff > f.cutoff:
        raise CutoffExceeded("cutoff beyond the tabulated range")
    max_k = cutoff if max_k is None else max_k
    report = DegreeReport(f.name, cutoff)
    levels = [f]
    g = f
    for k in range(max_k + 1):
        window = cutoff - k
        if window < 0:
            break
        report.ranks.append([g.rank(n) for n in range(window + 1)])
        report.kernel_ranks.append([kernel_rank(g, n) for n in range(window)])
        if window < 1:
            break
        g = difference(g)
        levels.append(g)

    def support(k):
        return [n for n, r in enumerate(report.ranks[k]) if r]

    for k, ranks in enumerate(report.ranks):
        if not any(ranks):
            report.strong_degree = k - 1 if k >= 1 else -1
            break
    if report.strong_degree is not None:
        d = report.strong_degree
        report.very_strong = all(not any(report.kernel_ranks[k]) for k in range(d + 1))
    for k in range(len(report.ranks)):
        sup = support(k)
        window = len(report.ranks[k]) - 1
        if not sup or max(sup) + 2 <= window:
            report.weak_degree = k - 1 if k >= 1 else -1
            report.weak_support = sup
            break
    if report.weak_degree is not None and report.weak_degree >= 0:
        d = report.weak_degree
        h = levels[d]
        report.bijection_witness = {
            "level": d,
            "bijective_at": [n for n in range(len(report.ranks[d]) - 1) if stab_is_bijection(h, n)],
        }
    if report.strong_degree is not None and report.weak_degree is not None:
        report.status = "pass"
    return report


# -- the p-hat isomorphism ------------------------------------------------------------------------


@dataclass
class BasisMap:
    name: str
    maps: dict[int, dict] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "maps": {str(n): [[list(k), list(v)] for k, v in m.items()] for n, m in self.maps.items()},
        }


def _ring_map(src: Ring, dst: Ring, images: Sequence[Elem]) -> Callable[[RepMatrix], RepMatrix]:
    if src == dst and all(img == g for img, g in zip(images, dst.gens())):
        return lambda mat: mat
    return lambda mat: mat.substitute(dst, images)


def _reorder(mat: RepMatrix, row_order: Sequence, col_order: Sequence) -> RepMatrix:
    rpos = {lab: i for i, lab in enumerate(mat.row_labels)}
    cpos = {lab: i for i, lab in enumerate(mat.col_labels)}
    return mat.submatrix([rpos[x] for x in row_order], [cpos[x] for x in col_order])


@dataclass
class DiffevaResult:
    ok: bool
    basis_map: BasisMap
    identification: str | None
    checked: int
    counterexample: dict | None = None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "identification": self.identification,
            "checked": self.checked,
            "counterexample": self.counterexample,
            "basis_map": self.basis_map.to_json(),
        }


def _identifications(m: int) -> list[tuple[str, list[Elem]]]:
    """Candidate ring maps Z[A_{m-1}] -> Z[A_m] (only m = 2 changes rings)."""
    if m == 2:
        q, t = A2.var("q"), A2.var("t")
        return [("x->q", [q]), ("x->t", [t]), ("x->q^-1", [q.inverse()]), ("x->t^-1", [t.inverse()])]
    ring = A1 if m == 1 else A2
    return [("identity", list(ring.gens()))]


def diffeva_check(m: int, cutoff: int) -> DiffevaResult:
    """Check delta_1 LB_m = tau_1 LB_{m-1} through forget_first on objects 0..cutoff.

    Compares every generator matrix (both signs) and every stabilization,
    after relabelling by the basis map and the coefficient identification.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    delta = difference(lb_tabulate(m, cutoff + 2))
    tau = translate(lb_tabulate(m - 1, cutoff + 2))
    bmap = BasisMap("p_hat")
    for n in range(cutoff + 1):
        dl = delta.labels(n)
        mapping = {lab: forget_first(lab) for lab in dl}
        if sorted(mapping.values()) != sorted(tau.labels(n)):
            return DiffevaResult(False, bmap, None, 0, {"object": n, "reason": "labels differ"})
        bmap.maps[n] = mapping

    first_failure = None
    for name, images in _identifications(m):
        conv = _ring_map(tau.ring, delta.ring, images)
        checked = 0
        failure = None
        for n in range(cutoff + 1):
            inv = {v: k for k, v in bmap.maps[n].items()}
            checks = [(f"sigma_{i}^{s}", n, n, delta.gen(n, i, s), tau.gen(n, i, s)) for i in range(1, n) for s in (1, -1)]
            if n < cutoff:
                checks.append(("stab", n, n + 1, delta.stab(n), tau.stab(n)))
            for what, _, b, dm, tm in checks:
                inv_b = {v: k for k, v in bmap.maps[b].items()}
                rows = [inv_b[x] for x in tm.row_labels]
                cols = [inv[x] for x in tm.col_labels]
                lhs = _reorder(dm, rows, cols)
                rhs = conv(tm)
                checked += 1
                if lhs != rhs:
                    r, c, x, y = lhs.diff(rhs, 1)[0]
                    failure = {"object": n, "map": what, "row": list(rows[r]), "col": list(cols[c]), "delta": str(x), "tau": str(y)}
                    break
            if failure:
                break
        if failure is None:
            return DiffevaResult(True, bmap, name, checked)
        first_failure = first_failure or dict(failure, identification=name)
    return DiffevaResult(False, bmap, None, 0, first_failure)


# -- naturality -----------------------------------------------------------------------------------


def naturality_holds(f: TabulatedFunctor, n: int, i: int, sign: int = 1) -> bool:
    """F([1, id]) F(sigma_i) = F(sigma_{i+1}) F([1, id]) on F(n)."""
    s = f.stab(n)
    return s @ f.gen(n, i, sign) == f.gen(n + 1, i + 1, sign) @ s


def bracket_well_defined(f: TabulatedFunctor, mor: BracketMorphism, sigma: BraidWord) -> bool:
    """[k, gamma (sigma # id_n)] and [k, gamma] have the same image, for sigma in B_k."""
    k = mor.target - mor.source
    if sigma.strands != k:
        raise ValueError("sigma must live in B_k")
    padded = BraidWord(mor.target, sigma.letters)
    other = BracketMorphism(mor.source, mor.target, mor.braid * padded)
    return eval_morphism(f, mor) == eval_morphism(f, other)


def all_generators(n: int) -> list[tuple[int, int]]:
    return list(itertools.product(range(1, n), (1, -1)))


def lb_dimension(m: int, n: int) -> int:
    return lb_rank(m, n)
