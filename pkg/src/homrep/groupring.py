"""Exact arithmetic in group rings Z[A] with A = Z^r + (Z/2)^s.

An element is a finite sum of terms c * g where c is a nonzero integer and
g is a group element, stored as ``(exps, bits)``: an integer vector of
length r for the free part and a 0/1 vector of length s for the torsion
part.  Multiplication adds exponents and xors bits, so z*z = 1 for every
torsion generator z.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

Key = tuple[tuple[int, ...], tuple[int, ...]]


class RingMismatch(ValueError):
    """Raised when combining elements of different group rings."""


@dataclass(frozen=True)
class Ring:
    """Descriptor of Z[Z^r + (Z/2)^s] with named generators.

    The first ``free_rank`` names label the free generators, the remaining
    ``torsion2_rank`` names the order-two generators.
    """

    free_rank: int
    torsion2_rank: int
    variable_names: tuple[str, ...]

    def __post_init__(self):
        if self.free_rank < 0 or self.torsion2_rank < 0:
            raise ValueError("ranks must be non-negative")
        names = tuple(self.variable_names)
        object.__setattr__(self, "variable_names", names)
        if len(names) != self.free_rank + self.torsion2_rank:
            raise ValueError("need one name per generator")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")

    @property
    def identity_key(self) -> Key:
        return (0,) * self.free_rank, (0,) * self.torsion2_rank

    def zero(self) -> Elem:
        return Elem(self, {})

    def one(self) -> Elem:
        return self.const(1)

    def const(self, c: int) -> Elem:
        return Elem(self, {self.identity_key: c})

    def monomial(self, exps: Sequence[int] = (), bits: Sequence[int] = (), coeff: int = 1) -> Elem:
        exps = tuple(int(e) for e in exps) or (0,) * self.free_rank
        bits = tuple(int(b) % 2 for b in bits) or (0,) * self.torsion2_rank
        if len(exps) != self.free_rank or len(bits) != self.torsion2_rank:
            raise ValueError("monomial shape does not match ring")
        return Elem(self, {(exps, bits): coeff})

    def var(self, name: str) -> Elem:
        """The group element named ``name``, as a ring element."""
        idx = self.variable_names.index(name)
        if idx < self.free_rank:
            exps = [0] * self.free_rank
            exps[idx] = 1
            return self.monomial(exps, ())
        bits = [0] * self.torsion2_rank
        bits[idx - self.free_rank] = 1
        return self.monomial((), bits)

    def gens(self) -> tuple[Elem, ...]:
        return tuple(self.var(v) for v in self.variable_names)

    def to_json(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "torsion2_rank": self.torsion2_rank,
            "variable_names": list(self.variable_names),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Ring:
        return cls(data["free_rank"], data["torsion2_rank"], tuple(data["variable_names"]))


INTEGERS = Ring(0, 0, ())
A1 = Ring(1, 0, ("x",))
# q records winding around punctures, t records half-twists of points
A2 = Ring(2, 0, ("q", "t"))


def lb_ring(m: int) -> Ring:
    """Coefficient ring Z[A_m] of the m-point representation."""
    return A1 if m == 1 else A2


class Elem:
    """Immutable element of a group ring, kept in canonical sparse form."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Key, int]):
        self.ring = ring
        self._terms = {k: c for k, c in terms.items() if c}
        self._hash = None

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_terms(cls, ring: Ring, terms: Iterable[tuple[int, Sequence[int], Sequence[int]]]) -> Elem:
        acc: dict[Key, int] = {}
        for c, exps, bits in terms:
            key = (tuple(int(e) for e in exps), tuple(int(b) % 2 for b in bits))
            if len(key[0]) != ring.free_rank or len(key[1]) != ring.torsion2_rank:
                raise ValueError("term shape does not match ring")
            acc[key] = acc.get(key, 0) + int(c)
        return cls(ring, acc)

    # -- inspection -----------------------------------------------------------

    @property
    def terms(self) -> list[tuple[int, tuple[int, ...], tuple[int, ...]]]:
        """Terms as (coefficient, exponents, bits), sorted by group element."""
        return [(self._terms[k], k[0], k[1]) for k in sorted(self._terms)]

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_unit(self) -> bool:
        """True iff this is a trivial unit, i.e. +-g for a group element g.

        Every unit of Z[Z^r + (Z/2)^s] is trivial, so this test is exact.
        """
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant(self) -> int | None:
        """The integer this element equals, or None if it is not a constant."""
        if not self._terms:
            return 0
        if len(self._terms) == 1 and self.ring.identity_key in self._terms:
            return self._terms[self.ring.identity_key]
        return None

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: Elem) -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> Elem:
        if isinstance(other, Elem):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other) -> Elem:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return Elem(self.ring, acc)

    __radd__ = __add__

    def __neg__(self) -> Elem:
        return Elem(self.ring, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> Elem:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Elem:
        return (-self) + other

    def __mul__(self, other) -> Elem:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[Key, int] = {}
        for (e1, b1), c1 in self._terms.items():
            for (e2, b2), c2 in other._terms.items():
                key = (
                    tuple(x + y for x, y in zip(e1, e2)),
                    tuple(x ^ y for x, y in zip(b1, b2)),
                )
                acc[key] = acc.get(key, 0) + c1 * c2
        return Elem(self.ring, acc)

    __rmul__ = __mul__

    def inverse(self) -> Elem:
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        (exps, bits), c = next(iter(self._terms.items()))
        return Elem(self.ring, {(tuple(-e for e in exps), bits): c})

    def __pow__(self, k: int) -> Elem:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divide_by_unit(self, u: Elem) -> Elem:
        return self * u.inverse()

    def substitute(self, target: Ring, images: Sequence[Elem]) -> Elem:
        """Apply the ring map sending the i-th generator to ``images[i]``.

        Images of free generators must be units; images of torsion
        generators must square to one.
        """
        if len(images) != len(self.ring.variable_names):
            raise ValueError("need one image per generator")
        inv = [img.inverse() if i < self.ring.free_rank else img for i, img in enumerate(images)]
        total = target.zero()
        for (exps, bits), c in self._terms.items():
            term = target.const(c)
            for i, e in enumerate(exps):
                if e:
                    term = term * (images[i] ** e if e > 0 else inv[i] ** (-e))
            for j, b in enumerate(bits):
                if b:
                    term = term * images[self.ring.free_rank + j]
            total = total + term
        return total

    # -- comparison / hashing ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._terms == ({self.ring.identity_key: other} if other else {})
        if not isinstance(other, Elem):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> list:
        return [[c, list(e), list(b)] for c, e, b in self.terms]

    @classmethod
    def from_json(cls, ring: Ring, data: Sequence) -> Elem:
        return cls.from_terms(ring, data)

    def dumps(self) -> str:
        return json.dumps({"ring": self.ring.to_json(), "terms": self.to_json()}, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> Elem:
        data = json.loads(text)
        return cls.from_json(Ring.from_json(data["ring"]), data["terms"])

    def __repr__(self) -> str:
        return f"Elem({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = self.ring.variable_names
        parts = []
        for c, exps, bits in self.terms:
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            for name, b in zip(names[self.ring.free_rank:], bits):
                if b:
                    factors.append(name)
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def gre_add(a: Elem, b: Elem) -> Elem:
    return a + b


def gre_mul(a: Elem, b: Elem) -> Elem:
    return a * b


def gre_is_unit(a: Elem) -> bool:
    return a.is_unit()
