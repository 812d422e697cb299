"""Sparse matrices over a group ring, with row and column basis labels."""

from __future__ import annotations

import json
import re
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .groupring import Elem, Ring


class RepMatrix:
    """Immutable sparse matrix; ``entries`` maps (row, col) to nonzero Elem."""

    __slots__ = ("ring", "rows", "cols", "row_labels", "col_labels", "_entries", "_by_col")

    def __init__(
        self,
        ring: Ring,
        rows: int,
        cols: int,
        entries: Mapping[tuple[int, int], Elem] | None = None,
        row_labels: Sequence[Hashable] | None = None,
        col_labels: Sequence[Hashable] | None = None,
    ):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.row_labels = tuple(row_labels) if row_labels is not None else tuple(range(rows))
        self.col_labels = tuple(col_labels) if col_labels is not None else tuple(range(cols))
        if len(self.row_labels) != rows or len(self.col_labels) != cols:
            raise ValueError("label count does not match shape")
        clean = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError((i, j))
            if v.ring != ring:
                raise ValueError("entry ring mismatch")
            if v:
                clean[i, j] = v
        self._entries = clean
        self._by_col = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def identity(cls, ring: Ring, labels: Sequence[Hashable]) -> RepMatrix:
        n = len(labels)
        return cls(ring, n, n, {(i, i): ring.one() for i in range(n)}, labels, labels)

    @classmethod
    def zeros(cls, ring: Ring, row_labels: Sequence, col_labels: Sequence) -> RepMatrix:
        return cls(ring, len(row_labels), len(col_labels), {}, row_labels, col_labels)

    @classmethod
    def from_columns(
        cls,
        ring: Ring,
        row_labels: Sequence[Hashable],
        col_labels: Sequence[Hashable],
        columns: Iterable[Mapping[Hashable, Elem]],
    ) -> RepMatrix:
        """Build from one {row label: coefficient} dict per column."""
        index = {lab: i for i, lab in enumerate(row_labels)}
        entries = {}
        for j, col in enumerate(columns):
            for lab, v in col.items():
                entries[index[lab], j] = v
        return cls(ring, len(row_labels), len(col_labels), entries, row_labels, col_labels)

    # -- access -----------------------------------------------------------------

    @property
    def entries(self) -> dict[tuple[int, int], Elem]:
        return dict(self._entries)

    def __getitem__(self, ij: tuple[int, int]) -> Elem:
        return self._entries.get(ij) or self.ring.zero()

    def column(self, j: int) -> dict[int, Elem]:
        if self._by_col is None:
            by_col: dict[int, dict[int, Elem]] = {}
            for (i, jj), v in self._entries.items():
                by_col.setdefault(jj, {})[i] = v
            self._by_col = by_col
        return dict(self._by_col.get(j, {}))

    def nnz(self) -> int:
        return len(self._entries)

    # -- algebra --------------------------------------------------------------------

    def __matmul__(self, other: RepMatrix) -> RepMatrix:
        if self.cols != other.rows or self.ring != other.ring:
            raise ValueError("incompatible matrices")
        rows_of: dict[int, list[tuple[int, Elem]]] = {}
        for (i, k), v in self._entries.items():
            rows_of.setdefault(k, []).append((i, v))
        acc: dict[tuple[int, int], Elem] = {}
        for (k, j), w in other._entries.items():
            for i, v in rows_of.get(k, ()):
                prod = v * w
                prev = acc.get((i, j))
                acc[i, j] = prod if prev is None else prev + prod
        return RepMatrix(self.ring, self.rows, other.cols, acc, self.row_labels, other.col_labels)

    def __add__(self, other: RepMatrix) -> RepMatrix:
        self._same_shape(other)
        acc = dict(self._entries)
        for k, v in other._entries.items():
            acc[k] = acc[k] + v if k in acc else v
        return RepMatrix(self.ring, self.rows, self.cols, acc, self.row_labels, self.col_labels)

    def __neg__(self) -> RepMatrix:
        return self.map_entries(lambda v: -v)

    def __sub__(self, other: RepMatrix) -> RepMatrix:
        return self + (-other)

    def scale(self, c: Elem) -> RepMatrix:
        return self.map_entries(lambda v: c * v)

    def map_entries(self, f: Callable[[Elem], Elem], ring: Ring | None = None) -> RepMatrix:
        ring = ring or self.ring
        return RepMatrix(
            ring,
            self.rows,
            self.cols,
            {k: f(v) for k, v in self._entries.items()},
            self.row_labels,
            self.col_labels,
        )

    def substitute(self, target: Ring, images: Sequence[Elem]) -> RepMatrix:
        return self.map_entries(lambda v: v.substitute(target, images), target)

    def relabel(self, row_labels: Sequence | None = None, col_labels: Sequence | None = None) -> RepMatrix:
        return RepMatrix(
            self.ring,
            self.rows,
            self.cols,
            self._entries,
            self.row_labels if row_labels is None else row_labels,
            self.col_labels if col_labels is None else col_labels,
        )

    def transpose(self) -> RepMatrix:
        return RepMatrix(
            self.ring,
            self.cols,
            self.rows,
            {(j, i): v for (i, j), v in self._entries.items()},
            self.col_labels,
            self.row_labels,
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> RepMatrix:
        rpos = {r: a for a, r in enumerate(rows)}
        cpos = {c: b for b, c in enumerate(cols)}
        entries = {
            (rpos[i], cpos[j]): v
            for (i, j), v in self._entries.items()
            if i in rpos and j in cpos
        }
        return RepMatrix(
            self.ring,
            len(rows),
            len(cols),
            entries,
            [self.row_labels[r] for r in rows],
            [self.col_labels[c] for c in cols],
        )

    def _same_shape(self, other: RepMatrix) -> None:
        if (self.rows, self.cols, self.ring) != (other.rows, other.cols, other.ring):
            raise ValueError("shape or ring mismatch")

    def is_identity(self) -> bool:
        if self.rows != self.cols or len(self._entries) != self.rows:
            return False
        return all(i == j and v == 1 for (i, j), v in self._entries.items())

    def is_coordinate_injection(self) -> bool:
        """Every column is a distinct standard basis vector."""
        seen = set()
        for j in range(self.cols):
            col = self.column(j)
            if len(col) != 1:
                return False
            (i, v), = col.items()
            if v != 1 or i in seen:
                return False
            seen.add(i)
        return True

    def determinant(self) -> Elem:
        """Exact determinant via sympy; meant for the small matrices used in checks."""
        from .polyutil import determinant

        return determinant(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RepMatrix):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.rows == other.rows
            and self.cols == other.cols
            and self._entries == other._entries
        )

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, frozenset(self._entries.items())))

    def diff(self, other: RepMatrix, limit: int = 5) -> list[tuple[int, int, Elem, Elem]]:
        """Up to ``limit`` entries where the two matrices disagree."""
        self._same_shape(other)
        out = []
        for k in sorted(set(self._entries) | set(other._entries)):
            a, b = self[k], other[k]
            if a != b:
                out.append((k[0], k[1], a, b))
                if len(out) >= limit:
                    break
        return out

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "rows": self.rows,
            "cols": self.cols,
            "row_labels": [_label_json(x) for x in self.row_labels],
            "col_labels": [_label_json(x) for x in self.col_labels],
            "entries": [[i, j, self._entries[i, j].to_json()] for i, j in sorted(self._entries)],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: Mapping) -> RepMatrix:
        ring = Ring.from_json(data["ring"])
        entries = {(i, j): Elem.from_json(ring, t) for i, j, t in data["entries"]}
        return cls(
            ring,
            data["rows"],
            data["cols"],
            entries,
            [_label_from_json(x) for x in data["row_labels"]],
            [_label_from_json(x) for x in data["col_labels"]],
        )

    def to_latex(self) -> str:
        lines = []
        for i in range(self.rows):
            lines.append(" & ".join(_latex_entry(self[i, j]) for j in range(self.cols)))
        return "\\begin{pmatrix}\n" + " \\\\\n".join(lines) + "\n\\end{pmatrix}"

    def __repr__(self) -> str:
        return f"RepMatrix({self.rows}x{self.cols}, nnz={len(self._entries)})"

    def pretty(self) -> str:
        cells = [[str(self[i, j]) for j in range(self.cols)] for i in range(self.rows)]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)


def _latex_entry(e: Elem) -> str:
    return re.sub(r"\^(-?\d+)", r"^{\1}", str(e)).replace("*", " ")


def _label_json(x):
    if isinstance(x, tuple):
        return [_label_json(y) for y in x]
    return x


def _label_from_json(x):
    if isinstance(x, list):
        return tuple(_label_from_json(y) for y in x)
    return x

