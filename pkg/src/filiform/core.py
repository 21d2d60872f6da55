"""Exact rational substrate: scalars, vectors, dense matrices and structure tables.

Every basis index in the public API is 1-based (``e1..en``).  Scalars are
:class:`fractions.Fraction`, so nothing ever rounds.
"""
from __future__ import annotations

import json
import operator
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction

_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


class DimensionError(ValueError):
    """Operands live in spaces of different dimension."""


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: they would silently import rounding error.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_rational(q: Fraction) -> str:
    """Canonical string form: ``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_arith(a, b, op: str) -> Fraction:
    """Apply ``op`` in {add, sub, mul, div}; division by zero raises ZeroDivisionError."""
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(as_rational(a), as_rational(b))


# ---------------------------------------------------------------------------
# sparse helpers (dict index -> Fraction, zeros never stored)
# ---------------------------------------------------------------------------

def _axpy(acc: dict, scale: Fraction, vec: Mapping) -> None:
    """acc += scale * vec, dropping entries that cancel."""
    for idx, c in vec.items():
        v = acc.get(idx, 0) + scale * c
        if v:
            acc[idx] = v
        else:
            acc.pop(idx, None)


def _clean(vec: Mapping) -> dict:
    return {k: Fraction(v) for k, v in vec.items() if v}


class Vector:
    """Immutable coordinate vector of fixed length."""

    __slots__ = ("_coords",)

    def __init__(self, coords: Iterable):
        object.__setattr__(self, "_coords", tuple(as_rational(c) for c in coords))

    def __setattr__(self, name, value):
        raise AttributeError("Vector is immutable")

    def __reduce__(self):
        return (Vector, (self._coords,))

    @classmethod
    def zero(cls, dim: int) -> "Vector":
        return cls([0] * dim)

    @classmethod
    def basis(cls, dim: int, i: int) -> "Vector":
        """The unit vector e_i (1-based)."""
        if not 1 <= i <= dim:
            raise IndexError(f"basis index {i} outside 1..{dim}")
        coords = [0] * dim
        coords[i - 1] = 1
        return cls(coords)

    @classmethod
    def from_sparse(cls, dim: int, entries: Mapping[int, object]) -> "Vector":
        coords = [Fraction(0)] * dim
        for i, c in entries.items():
            if not 1 <= i <= dim:
                raise IndexError(f"basis index {i} outside 1..{dim}")
            coords[i - 1] = as_rational(c)
        return cls(coords)

    @property
    def dim(self) -> int:
        return len(self._coords)

    @property
    def coords(self) -> tuple:
        return self._coords

    def coeff(self, i: int) -> Fraction:
        """Coefficient of e_i (1-based)."""
        return self._coords[i - 1]

    def sparse(self) -> dict:
        """1-based index -> nonzero coefficient."""
        return {i + 1: c for i, c in enumerate(self._coords) if c}

    def is_zero(self) -> bool:
        return not any(self._coords)

    def _check(self, other: "Vector") -> None:
        if not isinstance(other, Vector):
            raise TypeError("expected a Vector")
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        self._check(other)
        return Vector(a + b for a, b in zip(self._coords, other._coords))

    def __sub__(self, other):
        self._check(other)
        return Vector(a - b for a, b in zip(self._coords, other._coords))

    def __neg__(self):
        return Vector(-a for a in self._coords)

    def __mul__(self, scalar):
        s = as_rational(scalar)
        return Vector(s * a for a in self._coords)

    __rmul__ = __mul__

    def __len__(self):
        return len(self._coords)

    def __iter__(self):
        return iter(self._coords)

    def __getitem__(self, idx):
        return self._coords[idx]

    def __eq__(self, other):
        return isinstance(other, Vector) and self._coords == other._coords

    def __hash__(self):
        return hash(self._coords)

    def __repr__(self):
        return "Vector([" + ", ".join(format_rational(c) for c in self._coords) + "])"


class Matrix:
    """Immutable dense square matrix over the rationals.

    Products iterate over nonzero entries only, which keeps the very sparse
    representation matrices cheap even though storage is dense.
    """

    __slots__ = ("_rows", "_dim")

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(as_rational(x) for x in row) for row in rows)
        dim = len(rows)
        if dim == 0 or any(len(r) != dim for r in rows):
            raise DimensionError("matrix must be square and non-empty")
        object.__setattr__(self, "_rows", rows)
        object.__setattr__(self, "_dim", dim)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    def __reduce__(self):
        return (Matrix, (self._rows,))

    @classmethod
    def zero(cls, dim: int) -> "Matrix":
        return cls([[0] * dim for _ in range(dim)])

    @classmethod
    def identity(cls, dim: int) -> "Matrix":
        return cls([[int(i == j) for j in range(dim)] for i in range(dim)])

    @classmethod
    def from_entries(cls, dim: int, entries: Mapping[tuple[int, int], object]) -> "Matrix":
        """Build from a 1-based ``{(row, col): value}`` mapping."""
        rows = [[Fraction(0)] * dim for _ in range(dim)]
        for (i, j), v in entries.items():
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise IndexError(f"entry ({i},{j}) outside a {dim}x{dim} matrix")
            rows[i - 1][j - 1] += as_rational(v)
        return cls(rows)

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def rows(self) -> tuple:
        return self._rows

    def entry(self, i: int, j: int) -> Fraction:
        """Entry (i, j), 1-based."""
        return self._rows[i - 1][j - 1]

    def row(self, i: int) -> Vector:
        return Vector(self._rows[i - 1])

    def entries(self) -> dict:
        """Nonzero entries as a 1-based ``{(row, col): value}`` dict."""
        return {
            (i + 1, j + 1): v
            for i, r in enumerate(self._rows)
            for j, v in enumerate(r)
            if v
        }

    def vectorize(self) -> tuple:
        return tuple(x for r in self._rows for x in r)

    def is_strictly_upper(self) -> bool:
        return all(not self._rows[i][j] for i in range(self._dim) for j in range(i + 1))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._rows)

    def _check(self, other: "Matrix") -> None:
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if other._dim != self._dim:
            raise DimensionError(f"dimension mismatch: {self._dim} vs {other._dim}")

    def __add__(self, other):
        self._check(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other):
        self._check(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self._rows])

    def scale(self, scalar) -> "Matrix":
        s = as_rational(scalar)
        return Matrix([[s * a for a in r] for r in self._rows])

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def __matmul__(self, other):
        self._check(other)
        n = self._dim
        other_nz = [[(j, v) for j, v in enumerate(r) if v] for r in other._rows]
        out = []
        for r in self._rows:
            acc = [Fraction(0)] * n
            for k, a in enumerate(r):
                if a:
                    for j, b in other_nz[k]:
                        acc[j] += a * b
            out.append(acc)
        return Matrix(out)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self @ other
        return self.scale(other)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self._rows)
        return f"Matrix([{body}])"

    def to_json(self) -> dict:
        return {
            "size": self._dim,
            "entries": [
                {"row": i, "col": j, "value": format_rational(v)}
                for (i, j), v in sorted(self.entries().items())
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Matrix":
        return cls.from_entries(
            int(data["size"]),
            {(int(e["row"]), int(e["col"])): as_rational(e["value"]) for e in data["entries"]},
        )


def matrix_unit(dim: int, i: int, j: int) -> Matrix:
    """E_{i,j}: a 1 in position (i, j) and zeros elsewhere."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    if not (1 <= i <= dim and 1 <= j <= dim):
        raise IndexError(f"E_{{{i},{j}}} does not fit in dimension {dim}")
    return Matrix.from_entries(dim, {(i, j): 1})


def commutator(a: Matrix, b: Matrix) -> Matrix:
    """AB - BA."""
    return a @ b - b @ a


# ---------------------------------------------------------------------------
# exact elimination
# ---------------------------------------------------------------------------

class Echelon:
    """Incrementally maintained reduced basis of a subspace.

    Vectors are sparse dicts keyed by coordinate index (any hashable, sortable
    key works).  ``add`` returns True when the vector enlarged the span.
    """

    def __init__(self, vectors: Iterable[Mapping] = ()):
        self._pivots: dict = {}
        for v in vectors:
            self.add(v)

    def reduce(self, vec: Mapping) -> dict:
        r = _clean(vec)
        # pivot rows are fully reduced, so one pass over pivot columns suffices
        for p in [k for k in r if k in self._pivots]:
            c = r.get(p)
            if c:
                _axpy(r, -c, self._pivots[p])
        return r

    def add(self, vec: Mapping) -> bool:
        r = self.reduce(vec)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: v * inv for k, v in r.items()}
        # keep existing rows reduced with respect to the new pivot
        for q, row in self._pivots.items():
            c = row.get(p)
            if c:
                _axpy(row, -c, r)
        self._pivots[p] = r
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def basis(self) -> list:
        return [dict(self._pivots[p]) for p in sorted(self._pivots)]


def rank(rows: Iterable) -> int:
    """Rank over the rationals of a list of equal-length rows (Vectors or sequences)."""
    rows = list(rows)
    if not rows:
        return 0
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DimensionError("rows of unequal length")
    ech = Echelon({i: as_rational(x) for i, x in enumerate(r) if x} for r in rows)
    return ech.rank


def inverse(m: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination; raises ValueError if singular."""
    n = m.dim
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            f = aug[r][col]
            if r != col and f:
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return Matrix([r[n:] for r in aug])


# ---------------------------------------------------------------------------
# structure tables
# ---------------------------------------------------------------------------

class StructureTable:
    """Finite-dimensional algebra given by the products of basis pairs.

    ``brackets`` maps 1-based ``(i, j)`` to a sparse ``{k: coeff}`` dict
    holding [e_i, e_j].  Only nonzero products are stored; a missing pair is
    the zero vector.  No symmetry is assumed, so the same class carries Lie
    and Leibniz tables.
    """

    __slots__ = ("dim", "labels", "name", "_brackets")

    def __init__(
        self,
        dim: int,
        brackets: Mapping[tuple[int, int], Mapping[int, object]] | None = None,
        labels: Sequence[str] | None = None,
        name: str = "",
    ):
        if dim < 1:
            raise ValueError("dimension must be positive")
        if labels is None:
            labels = [f"e{i}" for i in range(1, dim + 1)]
        labels = tuple(labels)
        if len(labels) != dim:
            raise DimensionError(f"{len(labels)} labels for dimension {dim}")
        table = {}
        for (i, j), vec in (brackets or {}).items():
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise IndexError(f"bracket index ({i},{j}) outside 1..{dim}")
            entries = {}
            for k, c in vec.items():
                if not 1 <= k <= dim:
                    raise IndexError(f"basis index {k} outside 1..{dim}")
                c = as_rational(c)
                if c:
                    entries[k] = c
            if entries:
                table[(i, j)] = entries
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_brackets", table)

    def __setattr__(self, name, value):
        raise AttributeError("StructureTable is immutable")

    def __reduce__(self):
        return (StructureTable, (self.dim, self._brackets, self.labels, self.name))

    def product(self, i: int, j: int) -> dict:
        """Sparse [e_i, e_j]; the returned dict must not be mutated."""
        return self._brackets.get((i, j), _EMPTY)

    def bracket(self, i: int, j: int) -> Vector:
        """[e_i, e_j] as a Vector."""
        if not (1 <= i <= self.dim and 1 <= j <= self.dim):
            raise IndexError(f"bracket index ({i},{j}) outside 1..{self.dim}")
        return Vector.from_sparse(self.dim, self.product(i, j))

    def nonzero(self) -> dict:
        """Copy of all nonzero products."""
        return {key: dict(v) for key, v in self._brackets.items()}

    def index(self, label: str) -> int:
        """1-based index of a basis label such as ``"x3"``."""
        return self.labels.index(label) + 1

    def bracket_sparse(self, u: Mapping, v: Mapping) -> dict:
        acc: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                p = self._brackets.get((i, j))
                if p:
                    _axpy(acc, a * b, p)
        return acc

    def __eq__(self, other):
        """Tables are equal when they have the same dimension and products.

        Labels and names are presentation only and do not take part.
        """
        return (
            isinstance(other, StructureTable)
            and self.dim == other.dim
            and self._brackets == other._brackets
        )

    def __hash__(self):
        return hash((self.dim, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self._brackets.items()))))

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<StructureTable{tag} dim={self.dim} nonzero={len(self._brackets)}>"

    def describe(self) -> list[str]:
        """Human-readable product list, e.g. ``[e1,e2] = e3``."""
        lines = []
        for (i, j), vec in sorted(self._brackets.items()):
            lines.append(f"[{self.labels[i - 1]},{self.labels[j - 1]}] = {self.format_sparse(vec)}")
        return lines

    def format_sparse(self, vec: Mapping) -> str:
        if not vec:
            return "0"
        parts = []
        for k in sorted(vec):
            c = vec[k]
            lab = self.labels[k - 1]
            if c == 1:
                term = lab
            elif c == -1:
                term = "-" + lab
            else:
                term = f"{format_rational(c)}*{lab}"
            parts.append(term)
        return " + ".join(parts).replace("+ -", "- ")

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        data = {
            "dim": self.dim,
            "basis": list(self.labels),
            "brackets": [
                {
                    "i": i,
                    "j": j,
                    "value": [[k, format_rational(c)] for k, c in sorted(vec.items())],
                }
                for (i, j), vec in sorted(self._brackets.items())
            ],
        }
        if self.name:
            data["name"] = self.name
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, data: Mapping) -> "StructureTable":
        dim = int(data["dim"])
        brackets: dict = {}
        for entry in data.get("brackets", []):
            key = (int(entry["i"]), int(entry["j"]))
            vec = brackets.setdefault(key, {})
            for k, c in entry["value"]:
                vec[int(k)] = vec.get(int(k), 0) + as_rational(c)
        return cls(dim, brackets, data.get("basis"), data.get("name", ""))

    @classmethod
    def loads(cls, text: str) -> "StructureTable":
        return cls.from_json(json.loads(text))

    def change_basis(self, p: Matrix) -> "StructureTable":
        """Rewrite the table in the basis f_a = sum_b p[a,b] e_b.

        ``p`` must be invertible.  The result describes the same algebra, so
        every isomorphism invariant is unchanged.
        """
        if p.dim != self.dim:
            raise DimensionError("basis change matrix has the wrong size")
        pinv = inverse(p)
        n = self.dim
        f = [{b + 1: c for b, c in enumerate(row) if c} for row in p.rows]
        inv_rows = {b + 1: {a + 1: c for a, c in enumerate(row) if c} for b, row in enumerate(pinv.rows)}
        out = {}
        for a in range(1, n + 1):
            for c in range(1, n + 1):
                in_e = self.bracket_sparse(f[a - 1], f[c - 1])
                in_f: dict = {}
                for b, coef in in_e.items():
                    _axpy(in_f, coef, inv_rows[b])
                if in_f:
                    out[(a, c)] = in_f
        return StructureTable(n, out, [f"f{a}" for a in range(1, n + 1)], self.name)


_EMPTY: dict = {}


def eval_bracket(table: StructureTable, u: Vector, v: Vector) -> Vector:
    """Bilinear extension of the table to arbitrary elements."""
    if u.dim != table.dim or v.dim != table.dim:
        raise DimensionError(f"vectors must have dimension {table.dim}")
    return Vector.from_sparse(table.dim, table.bracket_sparse(u.sparse(), v.sparse()))


def zero_table(dim: int) -> StructureTable:
    """The abelian algebra: every product vanishes."""
    return StructureTable(dim, {}, name=f"abelian({dim})")
