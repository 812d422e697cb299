"""Arc calculus for the action of B_n on the m-point Borel-Moore homology of the punctured disc.

Basis: for omega in P_m(n-1), omega_j points sit on the straight interval
(p_j, p_{j+1}).  The half-twist sigma_i (sign +1 = counterclockwise) swaps
p_i and p_{i+1}; only the intervals i-1, i, i+1 move:

* interval i-1 becomes an arc from p_{i-1} to p_{i+1} passing under p_i,
* interval i+1 becomes an arc from p_i to p_{i+2} passing over p_{i+1},
* interval i is mapped to itself with its orientation reversed.

(For sign -1 the roles of under and over are exchanged.)  ``normalize``
rewrites such a diagram in the basis:

R1  an arc passing under a puncture splits as a sum over the ways of
    distributing its points on the two sub-arcs, all coefficients 1;
R2  an arc passing over a puncture splits the same way, each point that
    lands on the sub-arc at the moved end winding once around the moved
    puncture (a factor q^w per point);
R3  reversing a block of b points costs (point_sign * q^w)^b * u^{e(b)},
    with u the exchange variable and e the block twist rule;
R4  blocks landing on the same interval are merged: layers stacked
    bottom to top contribute sum over shuffles of u^{inversions}, the
    Gaussian multinomial in u.

Here w = winding_sign * sign and u = pair_sign * t^(pair_exponent * sign).
The free constants are fixed once by ``calibrate`` and stored in
``data/calibration.json``.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources
from math import comb

from .groupring import A1, A2, Elem, Ring, lb_ring
from .partitions import Partition, enum_P, lb_rank
from .repmatrix import RepMatrix

UNDER, OVER = "U", "O"


@dataclass(frozen=True)
class Arc:
    """An arc between punctures ``left < right`` carrying ``multiplicity`` points.

    ``routing`` gives, for each intermediate puncture, whether the arc
    passes under or over it.  ``moved`` names the endpoint ("L" or "R")
    that was carried around by the half-twist; ``layer`` orders arcs that
    share an interval from bottom to top.
    """

    left: int
    right: int
    routing: tuple[str, ...] = ()
    multiplicity: int = 0
    layer: int = 0
    reversed: bool = False
    moved: str | None = None

    def __post_init__(self):
        if not 1 <= self.left < self.right:
            raise ValueError("need 1 <= left < right")
        if len(self.routing) != self.right - self.left - 1:
            raise ValueError("routing length must be right - left - 1")
        if any(r not in (UNDER, OVER) for r in self.routing):
            raise ValueError("routing flags are U or O")
        if self.multiplicity < 0:
            raise ValueError("negative multiplicity")


@dataclass(frozen=True)
class ArcDiagram:
    arcs: tuple[Arc, ...]
    coefficient: Elem
    punctures: int
    twist_sign: int = 1

    @property
    def points(self) -> int:
        return sum(a.multiplicity for a in self.arcs)


@dataclass(frozen=True)
class Calibration:
    """Bookkeeping constants of the arc calculus (see the module docstring)."""

    winding_sign: int = -1
    pair_sign: int = -1
    pair_exponent: int = -1
    point_sign: int = -1
    block_twist_rule: str = "pairs"
    over_mode: str = "moved_side"
    over_twist_rule: str = "zero"
    version: int = 1
    validated_by: dict = field(default_factory=dict, compare=False, hash=False)

    def block_twist(self, mu: int) -> int:
        return BLOCK_TWIST_RULES[self.block_twist_rule](mu)

    def key(self) -> tuple:
        return (
            self.winding_sign,
            self.pair_sign,
            self.pair_exponent,
            self.point_sign,
            self.block_twist_rule,
            self.over_mode,
            self.over_twist_rule,
        )

    def to_json(self) -> dict:
        data = asdict(self)
        return data

    @classmethod
    def from_json(cls, data: dict) -> Calibration:
        return cls(**data)


# which points of an Over arc pay the winding cost when it is split
OVER_MODES = ("moved_side", "all_points")

BLOCK_TWIST_RULES = {
    "zero": lambda mu: 0,
    "mu": lambda mu: mu,
    "pairs": lambda mu: comb(mu, 2),
    "mu(mu-1)": lambda mu: mu * (mu - 1),
}


def load_calibration() -> Calibration:
    with resources.files("homrep.data").joinpath("calibration.json").open() as fh:
        return Calibration.from_json(json.load(fh))


def default_calibration() -> Calibration:
    return _stored()


@lru_cache(maxsize=1)
def _stored() -> Calibration:
    return load_calibration()


# -- basis and generator images ---------------------------------------------------


def std_basis(m: int, n: int) -> list[ArcDiagram]:
    """One diagram of straight arcs per omega in P_m(n-1); empty for n <= 1."""
    if n <= 1:
        return []
    ring = lb_ring(m)
    out = []
    for omega in enum_P(m, n - 1):
        arcs = tuple(Arc(j + 1, j + 2, (), mu) for j, mu in enumerate(omega) if mu)
        out.append(ArcDiagram(arcs, ring.one(), n))
    return out


def halftwist_image(m: int, n: int, omega: Partition, i: int, sign: int = 1) -> ArcDiagram:
    """Image of the basis diagram ``omega`` under sigma_i^sign, before normalization."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range for n={n}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    omega = tuple(omega)
    if len(omega) != n - 1 or sum(omega) != m:
        raise ValueError(f"{omega} is not in P_{m}({n - 1})")
    left_route, right_route = (UNDER, OVER) if sign == 1 else (OVER, UNDER)
    arcs = []
    for j, mu in enumerate(omega, start=1):
        if not mu:
            continue
        if j == i - 1:
            arcs.append(Arc(i - 1, i + 1, (left_route,), mu, layer=0, moved="R"))
        elif j == i:
            arcs.append(Arc(i, i + 1, (), mu, layer=1, reversed=True, moved="LR"))
        elif j == i + 1:
            arcs.append(Arc(i, i + 2, (right_route,), mu, layer=2, moved="L"))
        else:
            arcs.append(Arc(j, j + 1, (), mu))
    return ArcDiagram(tuple(arcs), lb_ring(m).one(), n, sign)


# -- normalization -----------------------------------------------------------------


class _Monomials:
    """Builds the monomials q^a t^b of Z[A_m] (for m = 1, q is x and t never occurs)."""

    def __init__(self, ring: Ring):
        self.ring = ring

    def __call__(self, q_exp: int = 0, t_exp: int = 0, coeff: int = 1) -> Elem:
        if self.ring == A1:  # a single point never twists: t is absent
            return A1.monomial((q_exp,), (), coeff)
        return A2.monomial((q_exp, t_exp), (), coeff)


@lru_cache(maxsize=None)
def gaussian_multinomial(parts: tuple[int, ...]) -> tuple[int, ...]:
    """Coefficients of sum over shuffles of u^inversions, as a polynomial in u."""

    @lru_cache(maxsize=None)
    def binom(n: int, k: int) -> tuple[int, ...]:
        if k < 0 or k > n:
            return (0,)
        if k in (0, n):
            return (1,)
        a, b = binom(n - 1, k - 1), binom(n - 1, k)
        res = [0] * max(len(a), len(b) + k)
        for e, c in enumerate(a):
            res[e] += c
        for e, c in enumerate(b):
            res[e + k] += c
        return tuple(res)

    res = [1]
    remaining = sum(parts)
    for p in parts:
        b = binom(remaining, p)
        new = [0] * (len(res) + len(b) - 1)
        for e1, c1 in enumerate(res):
            for e2, c2 in enumerate(b):
                new[e1 + e2] += c1 * c2
        res = new
        remaining -= p
    return tuple(res)


def _u_power_sum(mono: _Monomials, coeffs: tuple[int, ...], cal: Calibration, sign: int) -> Elem:
    total = mono.ring.zero()
    for e, c in enumerate(coeffs):
        if c:
            total = total + mono(0, cal.pair_exponent * sign * e, c * cal.pair_sign**e)
    return total


def _u_power(mono: _Monomials, e: int, cal: Calibration, sign: int) -> Elem:
    return mono(0, cal.pair_exponent * sign * e, cal.pair_sign**e)


def normalize(d: ArcDiagram, cal: Calibration | None = None) -> dict[Partition, Elem]:
    """Rewrite a diagram as a combination of basis partitions (rules R1-R4)."""
    cal = cal or default_calibration()
    ring = d.coefficient.ring
    mono = _Monomials(ring)
    w = cal.winding_sign * d.twist_sign

    # R1/R2: split every routed arc into straight pieces
    # piece = (interval, multiplicity, layer, reversed)
    options = []
    for arc in d.arcs:
        if not arc.routing:
            options.append([(((arc.left, arc.multiplicity, arc.layer, arc.reversed),), ring.one())])
            continue
        if len(arc.routing) != 1:
            raise ValueError("arcs may pass at most one intermediate puncture")
        mid = arc.left + 1
        choices = []
        for k in range(arc.multiplicity + 1):
            left_mu, right_mu = k, arc.multiplicity - k
            coeff = ring.one()
            if arc.routing[0] == OVER:
                if cal.over_mode == "all_points" or arc.moved not in ("L", "R"):
                    paying = arc.multiplicity
                else:
                    paying = right_mu if arc.moved == "R" else left_mu
                coeff = mono(w * paying) * _u_power(mono, BLOCK_TWIST_RULES[cal.over_twist_rule](paying), cal, d.twist_sign)
            pieces = (
                (arc.left, left_mu, arc.layer, arc.reversed),
                (mid, right_mu, arc.layer, arc.reversed),
            )
            choices.append((pieces, coeff))
        options.append(choices)

    result: dict[Partition, Elem] = {}
    for combo in itertools.product(*options):
        coeff = d.coefficient
        per_interval: dict[int, list[tuple[int, int, bool]]] = {}
        for pieces, c in combo:
            coeff = coeff * c
            for interval, mu, layer, rev in pieces:
                if mu:
                    per_interval.setdefault(interval, []).append((layer, mu, rev))
        omega = [0] * (d.punctures - 1)
        for interval, blocks in per_interval.items():
            blocks.sort()
            for _, mu, rev in blocks:
                if rev:  # R3
                    coeff = coeff * mono(w * mu, 0, cal.point_sign**mu)
                    coeff = coeff * _u_power(mono, cal.block_twist(mu), cal, d.twist_sign)
            if len(blocks) > 1:  # R4
                parts = tuple(mu for _, mu, _ in blocks)
                coeff = coeff * _u_power_sum(mono, gaussian_multinomial(parts), cal, d.twist_sign)
            omega[interval - 1] = sum(mu for _, mu, _ in blocks)
        key = tuple(omega)
        result[key] = result[key] + coeff if key in result else coeff
    return {k: v for k, v in result.items() if v}


# -- generator matrices ---------------------------------------------------------------


def _matrix(m: int, n: int, i: int, sign: int, cal: Calibration) -> RepMatrix:
    labels = enum_P(m, n - 1)
    ring = lb_ring(m)
    cols = [normalize(halftwist_image(m, n, omega, i, sign), cal) for omega in labels]
    return RepMatrix.from_columns(ring, labels, labels, cols)


@lru_cache(maxsize=None)
def _cached_matrix(m: int, n: int, i: int, sign: int, cal_key: tuple) -> RepMatrix:
    return _matrix(m, n, i, sign, _calibration_from_key(cal_key))


def _calibration_from_key(key: tuple) -> Calibration:
    return Calibration(*key)


def generator_matrix(m: int, n: int, i: int, sign: int = 1, cal: Calibration | None = None) -> RepMatrix:
    """Matrix of sigma_i^sign on the basis P_m(n-1) over Z[A_m]; column omega is the image of omega."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range for n={n}")
    cal = cal or default_calibration()
    return _cached_matrix(m, n, i, sign, cal.key())


def braid_matrix(m: int, n: int, letters, cal: Calibration | None = None) -> RepMatrix:
    """Matrix of a braid word (letters read as a product from left to right)."""
    labels = enum_P(m, n - 1) if n >= 2 else ()
    result = RepMatrix.identity(lb_ring(m), labels)
    for i, s in letters:
        result = result @ generator_matrix(m, n, i, s, cal)
    return result


def dimension(m: int, n: int) -> int:
    return lb_rank(m, n)


# -- calibration search ------------------------------------------------------------------


def candidate_calibrations() -> list[Calibration]:
    out = []
    rules = tuple(BLOCK_TWIST_RULES)
    for key in itertools.product((-1, 1), (-1, 1), (-1, 1), (-1, 1), rules, OVER_MODES, rules):
        out.append(Calibration(*key))
    return out


def _braid_relations_hold(m: int, n: int, cal: Calibration) -> bool:
    g = {(i, s): _matrix(m, n, i, s, cal) for i in range(1, n) for s in (1, -1)}
    for i in range(1, n):
        if not (g[i, 1] @ g[i, -1]).is_identity():
            return False
    for i in range(1, n - 1):
        if g[i, 1] @ g[i + 1, 1] @ g[i, 1] != g[i + 1, 1] @ g[i, 1] @ g[i + 1, 1]:
            return False
    for i in range(1, n):
        for j in range(i + 2, n):
            if g[i, 1] @ g[j, 1] != g[j, 1] @ g[i, 1]:
                return False
    return True


@dataclass
class CalibrationResult:
    accepted: list[Calibration]
    chosen: Calibration | None
    log: list[dict]


def calibrate(max_n_burau: int = 5, max_n_braid: int = 4, max_n_lkb: int = 4) -> CalibrationResult:
    """Search the finite candidate set.

    A candidate is accepted when (a) its m=1 matrices equal the reduced
    Burau matrices with no variable substitution (up to a diagonal unit
    rescaling), (b) its m=2 matrices satisfy the braid relations and (c) its
    m=2 matrices match the LKB reference under some convention of the
    comparator.  The accepted set is closed under the ring automorphism
    t -> t^-1, which no oracle can see; the chosen candidate is the one
    whose twist exponent has the sign of its winding exponent, so that q
    and t both count counterclockwise motion with the same sign.
    """
    from .oracles import burau_reduced_generators, compare_reps, lkb_basis_change, lkb_reference

    accepted, log = [], []
    for cal in candidate_calibrations():
        record = {"calibration": list(cal.key()), "burau": True, "braid": None, "lkb": None}
        for n in range(2, max_n_burau + 1):
            ours = [_matrix(1, n, i, 1, cal) for i in range(1, n)]
            if not compare_reps(ours, burau_reduced_generators(n), identity_only=True).ok:
                record["burau"] = False
                break
        if record["burau"]:
            record["braid"] = all(_braid_relations_hold(2, n, cal) for n in range(2, max_n_braid + 1))
        if record["braid"]:
            record["lkb"] = all(
                compare_reps(
                    [_matrix(2, n, i, 1, cal) for i in range(1, n)],
                    [lkb_reference(n, i) for i in range(1, n)],
                    lkb_basis_change(n),
                ).ok
                for n in range(2, max_n_lkb + 1)
            )
        log.append(record)
        if record["burau"] and record["braid"] and record["lkb"]:
            accepted.append(cal)
    same_sign = [c for c in accepted if c.pair_exponent == c.winding_sign]
    chosen = same_sign[0] if len(same_sign) == 1 else None
    return CalibrationResult(accepted, chosen, log)


def write_calibration(path, result: CalibrationResult) -> dict:
    """Serialize the chosen calibration with the oracle digest that validated it."""
    if result.chosen is None:
        raise ValueError("calibration is not unique")
    c = result.chosen
    data = c.to_json()
    data["validated_by"] = {
        "digest": oracle_digest(c),
        "accepted": [list(a.key()) for a in result.accepted],
        "candidates": len(result.log),
    }
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1, sort_keys=True)
        fh.write("\n")
    return data


def oracle_digest(cal: Calibration, max_n: int = 5) -> str:
    """SHA-256 of the canonical JSON of the m=1 and m=2 generator matrices up to ``max_n``."""
    h = hashlib.sha256()
    for m in (1, 2):
        for n in range(2, max_n + 1):
            for i in range(1, n):
                h.update(_matrix(m, n, i, 1, cal).dumps().encode())
    return h.hexdigest()
