"""Index sets for the free bases of the Lawrence-Bigelow and Moriyama modules.

Ordering conventions:

* ``enum_P`` lists tuples with larger leading entries first
  (``(2,0,0), (1,1,0), (1,0,1), ...``).
* ``enum_P_delta`` runs through the constrained prefix in increasing order
  and, for each prefix, through the free tail in ``enum_P`` order.
* ``enum_Q`` runs through permutations in ``itertools`` order and, for each,
  through the tuple part in ``enum_P`` (or ``enum_P_delta``-style) order.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb, factorial
from typing import Iterator

Partition = tuple[int, ...]
Arrangement = tuple[tuple[int, ...], Partition]


def _compositions(m: int, length: int) -> Iterator[Partition]:
    """Tuples of non-negative integers of ``length`` summing to ``m``, larger heads first."""
    if length == 0:
        if m == 0:
            yield ()
        return
    if length == 1:
        yield (m,)
        return
    for head in range(m, -1, -1):
        for tail in _compositions(m - head, length - 1):
            yield (head,) + tail


@lru_cache(maxsize=None)
def enum_P(m: int, length: int) -> tuple[Partition, ...]:
    """P_m(length): all ``length``-tuples of non-negative integers with sum ``m``."""
    if m < 0 or length < 0:
        raise ValueError("m and length must be non-negative")
    return tuple(_compositions(m, length))


def lb_rank(m: int, n: int) -> int:
    """Rank of the m-point module on n punctures: C(n+m-2, m), and 0 for n <= 1."""
    return comb(n + m - 2, m) if n >= 2 else 0


@lru_cache(maxsize=None)
def enum_P_delta(m: int, k: int, n: int) -> tuple[Partition, ...]:
    """P_m^{delta k}(n): labels for the k-th difference of the m-point functor.

    For n >= 1 these are the tuples of length k+n-1 summing to m whose first
    k entries are at least 1.  At n = 0 the tuples have length k-1; for
    k >= 2 they are those with first entry >= 2 and all other entries >= 1
    (one label per basis vector of the honest cokernel).  The single
    exception is m = 1, k = 2, where the cokernel at 0 is free of rank one,
    labelled (1,).
    """
    if m < 1 or k < 0 or n < 0:
        raise ValueError("need m >= 1, k >= 0, n >= 0")
    if n + k <= 1:
        return ()
    if n == 0:
        if m == 1:
            return ((1,),) if k == 2 else ()
        return tuple(
            (prefix[0] + 2,) + tuple(x + 1 for x in prefix[1:])
            for prefix in enum_P(m - k, k - 1)
        ) if k <= m else ()
    length = k + n - 1
    out = []
    for prefix in itertools.product(range(1, m + 1), repeat=k):
        rest = m - sum(prefix)
        if rest < 0:
            continue
        out.extend(prefix + tail for tail in enum_P(rest, length - k))
    return tuple(out)


def stab_insert(m: int, k: int, omega: Partition) -> Partition:
    """Label-level stabilization P^{delta k}(n) -> P^{delta k}(n+1).

    Inserts a 0 right after the k constrained slots.  From object 0 the
    labels grow from length k-1 to k, and the map is
    ``(w1, w2, ...) -> (1, w1 - 1, w2, ...)``.
    """
    omega = tuple(omega)
    if sum(omega) != m or any(x < 0 for x in omega):
        raise ValueError(f"{omega} is not a partition of {m}")
    if len(omega) == k - 1 and k >= 1:
        if k == 1 or omega[0] < 2:
            raise ValueError(f"{omega} is not a label at object 0")
        return (1, omega[0] - 1) + omega[1:]
    if len(omega) < k or any(x < 1 for x in omega[:k]):
        raise ValueError(f"{omega} violates the first-{k} constraint")
    return omega[:k] + (0,) + omega[k:]


def delta_bijection(m: int, k: int, n: int) -> dict[Partition, Partition]:
    """Identity-on-entries bijection P^{delta(k+1)}(n) -> P^{delta k}(n+1) minus the insertion image."""
    image = {stab_insert(m, k, w) for w in enum_P_delta(m, k, n)}
    complement = [w for w in enum_P_delta(m, k, n + 1) if w not in image]
    source = enum_P_delta(m, k + 1, n)
    if sorted(source) != sorted(complement):
        raise ValueError(f"no identity bijection at m={m}, k={k}, n={n}")
    return {w: w for w in source}


def forget_first(omega: Partition) -> Partition:
    """The bijection P_m^{delta 1}(n) -> P_{m-1}(n): decrement the first entry."""
    if not omega or omega[0] < 1:
        raise ValueError("first entry must be at least 1")
    return (omega[0] - 1,) + tuple(omega[1:])


def unforget_first(omega: Partition) -> Partition:
    return (omega[0] + 1,) + tuple(omega[1:])


# -- arrangements -------------------------------------------------------------


def moriyama_rank(m: int, g: int) -> int:
    """(2g+m-1)!/(2g-1)! = m! * C(m+2g-1, m), and 0 for g = 0."""
    return factorial(m) * comb(m + 2 * g - 1, m) if g >= 1 else 0


@lru_cache(maxsize=None)
def enum_Q(m: int, g: int) -> tuple[Arrangement, ...]:
    """Q_m(g) = S_m x P_m(2g)."""
    if m < 1 or g < 0:
        raise ValueError("need m >= 1, g >= 0")
    perms = list(itertools.permutations(range(1, m + 1)))
    return tuple((p, w) for p in perms for w in enum_P(m, 2 * g))


def _paired_prefix_ok(omega: Partition, k: int) -> bool:
    return all((omega[2 * i], omega[2 * i + 1]) != (0, 0) for i in range(k))


@lru_cache(maxsize=None)
def enum_Q_delta(m: int, k: int, g: int) -> tuple[Arrangement, ...]:
    """Q_m^{delta k}(g): tuple length 2k+2g, none of the first k pairs equal to (0,0)."""
    if m < 1 or k < 0 or g < 0:
        raise ValueError("need m >= 1, k >= 0, g >= 0")
    perms = list(itertools.permutations(range(1, m + 1)))
    if k == 0:
        return enum_Q(m, g)
    parts = [w for w in enum_P(m, 2 * k + 2 * g) if _paired_prefix_ok(w, k)]
    return tuple((p, w) for p in perms for w in parts)


def stab_insert_Q(k: int, arr: Arrangement) -> Arrangement:
    """Insert a (0,0) pair after the 2k constrained slots."""
    perm, omega = arr
    if len(omega) < 2 * k or not _paired_prefix_ok(omega, k):
        raise ValueError(f"{omega} violates the paired constraint")
    return perm, omega[: 2 * k] + (0, 0) + omega[2 * k:]
