"""Checkers for algebraic laws and series invariants of structure tables.

Convention: the Leibniz identity is the RIGHT one,

    [[x, y], z] = [[x, z], y] + [x, [y, z]],

i.e. right multiplication by z is a derivation.  Every law is checked on
basis pairs or triples only; multilinearity makes that complete.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import NamedTuple

from .core import Echelon, StructureTable, Vector, _axpy, format_rational
from .parallel import chunks, pmap


class Violation(NamedTuple):
    i: int
    j: int
    k: int | None
    residual: Vector
    tag: str = ""

    def to_json(self) -> dict:
        out = {
            "i": self.i,
            "j": self.j,
            "k": self.k,
            "residual": [[idx, format_rational(c)] for idx, c in sorted(self.residual.sparse().items())],
        }
        if self.tag:
            out["tag"] = self.tag
        return out


@dataclass
class IdentityReport:
    """Outcome of checking one law over every basis pair or triple.

    ``violations`` is empty exactly when the law holds on the whole algebra.
    """

    law: str
    checked: int
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        return f"{self.law}: {len(self.violations)} violations in {self.checked} checked"

    def to_json(self) -> dict:
        out = {
            "law": self.law,
            "checked": self.checked,
            "violations": [v.to_json() for v in self.violations],
        }
        if self.details:
            out["details"] = self.details
        return out


def _sorted(violations) -> list:
    return sorted(violations, key=lambda v: (v.i, v.j, v.k or 0, v.tag))


def check_antisymmetry(table: StructureTable) -> IdentityReport:
    """Pairs (i, j), i <= j, with [e_i, e_j] + [e_j, e_i] != 0."""
    n = table.dim
    bad = []
    checked = 0
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            checked += 1
            acc = dict(table.product(i, j))
            _axpy(acc, Fraction(1), table.product(j, i))
            if acc:
                bad.append(Violation(i, j, None, Vector.from_sparse(n, acc)))
    return IdentityReport("antisymmetry", checked, bad)


def _jacobi_slice(table: StructureTable, irange) -> list:
    n = table.dim
    out = []
    for i in irange:
        for j in range(1, n + 1):
            pij = table.product(i, j)
            for k in range(1, n + 1):
                acc: dict = {}
                for a, c in pij.items():
                    _axpy(acc, c, table.product(a, k))
                for a, c in table.product(j, k).items():
                    _axpy(acc, c, table.product(a, i))
                for a, c in table.product(k, i).items():
                    _axpy(acc, c, table.product(a, j))
                if acc:
                    out.append(Violation(i, j, k, Vector.from_sparse(n, acc)))
    return out


def _leibniz_slice(table: StructureTable, irange) -> list:
    n = table.dim
    out = []
    for i in irange:
        for j in range(1, n + 1):
            pij = table.product(i, j)
            for k in range(1, n + 1):
                acc: dict = {}
                for a, c in pij.items():
                    _axpy(acc, c, table.product(a, k))
                for a, c in table.product(i, k).items():
                    _axpy(acc, -c, table.product(a, j))
                for a, c in table.product(j, k).items():
                    _axpy(acc, -c, table.product(i, a))
                if acc:
                    out.append(Violation(i, j, k, Vector.from_sparse(n, acc)))
    return out


def _triples(law: str, fn, table: StructureTable, workers: int) -> IdentityReport:
    parts = chunks(table.dim, workers)
    found = pmap(partial(fn, table), parts, workers)
    merged = [v for part in found for v in part]
    return IdentityReport(law, table.dim ** 3, _sorted(merged))


def check_jacobi(table: StructureTable, workers: int = 1) -> IdentityReport:
    """Triples failing [[x,y],z] + [[y,z],x] + [[z,x],y] = 0."""
    return _triples("jacobi", _jacobi_slice, table, workers)


def check_leibniz(table: StructureTable, workers: int = 1) -> IdentityReport:
    """Triples where [[e_i,e_j],e_k] - [[e_i,e_k],e_j] - [e_i,[e_j,e_k]] != 0.

    The residual stored with each violation is exactly that difference.
    """
    return _triples("leibniz", _leibniz_slice, table, workers)


# ---------------------------------------------------------------------------
# subspaces and series
# ---------------------------------------------------------------------------

def _units(n: int) -> list:
    return [{i: Fraction(1)} for i in range(1, n + 1)]


def bracket_span(table: StructureTable, left: list, right: list) -> list:
    """Basis (sparse dicts) of span{[a, b] : a in left, b in right}."""
    ech = Echelon()
    for a in left:
        for b in right:
            ech.add(table.bracket_sparse(a, b))
    return ech.basis()


def _series(table: StructureTable, step) -> list[int]:
    current = _units(table.dim)
    dims = [table.dim]
    while dims[-1]:
        nxt = step(current)
        if len(nxt) == dims[-1]:
            break
        dims.append(len(nxt))
        current = nxt
    return dims


def lower_central_dims(table: StructureTable) -> list[int]:
    """dim L^1, dim L^2, ... with L^{k+1} = [L, L^k], until 0 or stabilization."""
    units = _units(table.dim)
    return _series(table, lambda cur: bracket_span(table, units, cur))


def derived_dims(table: StructureTable) -> list[int]:
    """dim L^(1), dim L^(2), ... with L^(k+1) = [L^(k), L^(k)]."""
    return _series(table, lambda cur: bracket_span(table, cur, cur))


def _annihilator_dim(table: StructureTable, left: bool, right: bool) -> int:
    # z = sum z_a e_a kills everything iff z lies in the left kernel of the
    # matrix whose row a lists the relevant products of e_a.
    n = table.dim
    ech = Echelon()
    for a in range(1, n + 1):
        row = {}
        for b in range(1, n + 1):
            if left:
                for k, c in table.product(a, b).items():
                    row[("l", b, k)] = c
            if right:
                for k, c in table.product(b, a).items():
                    row[("r", b, k)] = c
        ech.add(row)
    return n - ech.rank


def left_annihilator_dim(table: StructureTable) -> int:
    """dim {z : [z, x] = 0 for all x}."""
    return _annihilator_dim(table, True, False)


def right_annihilator_dim(table: StructureTable) -> int:
    """dim {z : [x, z] = 0 for all x}."""
    return _annihilator_dim(table, False, True)


def center_dim(table: StructureTable) -> int:
    """Two-sided annihilator: [z, x] = [x, z] = 0 for all x."""
    return _annihilator_dim(table, True, True)


def squares_ideal(table: StructureTable) -> list[Vector]:
    """Basis of the ideal generated by all squares [x, x].

    Over characteristic 0 the squares span the same space as the symmetrized
    basis products [e_i, e_j] + [e_j, e_i]; that span is then closed under
    multiplication by basis elements on both sides.
    """
    n = table.dim
    ech = Echelon()
    queue = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            sym = dict(table.product(i, j))
            _axpy(sym, Fraction(1), table.product(j, i))
            if ech.add(sym):
                queue.append(sym)
    while queue:
        v = queue.pop()
        for k in range(1, n + 1):
            e = {k: Fraction(1)}
            for w in (table.bracket_sparse(v, e), table.bracket_sparse(e, v)):
                if ech.add(w):
                    queue.append(w)
    return [Vector.from_sparse(n, b) for b in ech.basis()]


@dataclass(frozen=True)
class SeriesProfile:
    lower_central: tuple
    derived: tuple
    center_dim: int
    left_annihilator_dim: int
    right_annihilator_dim: int
    squares_ideal_dim: int

    def to_json(self) -> dict:
        return {
            "lower_central": list(self.lower_central),
            "derived": list(self.derived),
            "center": self.center_dim,
            "left_annihilator": self.left_annihilator_dim,
            "right_annihilator": self.right_annihilator_dim,
            "squares_ideal": self.squares_ideal_dim,
        }


def lower_central_series(table: StructureTable) -> SeriesProfile:
    """Series dimensions together with annihilator and squares-ideal dimensions."""
    return SeriesProfile(
        tuple(lower_central_dims(table)),
        tuple(derived_dims(table)),
        center_dim(table),
        left_annihilator_dim(table),
        right_annihilator_dim(table),
        len(squares_ideal(table)),
    )


def is_filiform(table: StructureTable) -> bool:
    """dim L^i = n - i for every 2 <= i <= n."""
    n = table.dim
    dims = lower_central_dims(table)
    for i in range(2, n + 1):
        d = dims[i - 1] if i - 1 < len(dims) else dims[-1]
        if d != n - i:
            return False
    return True
