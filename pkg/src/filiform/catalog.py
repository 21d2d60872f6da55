"""The four filiform Lie algebra families L_n, Q_2s, R_n and W_n.

Each table stores both orientations [e_i, e_j] and [e_j, e_i] explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import StructureTable

MIN_DIM = {"L": 3, "Q": 4, "R": 5, "W": 5}


@dataclass(frozen=True)
class FamilyId:
    tag: str
    dim: int

    def __post_init__(self):
        if self.tag not in MIN_DIM:
            raise ValueError(f"unknown family {self.tag!r}; expected one of L, Q, R, W")
        if self.tag == "Q" and self.dim % 2:
            raise ValueError("Q requires even dimension")
        if self.dim < MIN_DIM[self.tag]:
            raise ValueError(f"{self.tag} requires dimension >= {MIN_DIM[self.tag]}")

    def __str__(self):
        return f"{self.tag}_{self.dim}"


def _antisym(n: int, products: dict, name: str) -> StructureTable:
    table: dict = {}
    for (i, j), vec in products.items():
        for key, sign in (((i, j), 1), ((j, i), -1)):
            slot = table.setdefault(key, {})
            for k, c in vec.items():
                slot[k] = slot.get(k, 0) + sign * c
    return StructureTable(n, table, name=name)


def build_l(n: int) -> StructureTable:
    FamilyId("L", n)
    return _antisym(n, {(1, i): {i + 1: 1} for i in range(2, n)}, f"L_{n}")


def build_q(n: int) -> StructureTable:
    FamilyId("Q", n)
    s = n // 2
    products = {(1, i): {i + 1: 1} for i in range(2, 2 * s - 1)}
    for i in range(2, s + 1):
        products[(2 * s + 1 - i, i)] = {2 * s: (-1) ** i}
    return _antisym(n, products, f"Q_{n}")


def build_r(n: int) -> StructureTable:
    FamilyId("R", n)
    products = {(1, i): {i + 1: 1} for i in range(2, n)}
    for i in range(3, n - 1):
        products[(2, i)] = {i + 2: 1}
    return _antisym(n, products, f"R_{n}")


def build_w(n: int) -> StructureTable:
    FamilyId("W", n)
    products = {
        (i, j): {i + j: j - i}
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if i + j <= n
    }
    return _antisym(n, products, f"W_{n}")


BUILDERS = {"L": build_l, "Q": build_q, "R": build_r, "W": build_w}


def build(tag: str, n: int) -> StructureTable:
    """Catalog table for family ``tag`` in dimension ``n``."""
    FamilyId(tag, n)
    return BUILDERS[tag](n)


def supported_dims(tag: str, max_dim: int = 20) -> range:
    lo = MIN_DIM[tag]
    return range(lo, max_dim + 1, 2) if tag == "Q" else range(lo, max_dim + 1)
