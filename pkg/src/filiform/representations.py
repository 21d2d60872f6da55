"""Minimal faithful strictly upper-triangular representations of Q_2n, R_n, W_n.

Module vectors are row vectors acted on from the right: (x, e) = x * phi(e).
An n x n upper-triangular faithful representation of an n-dimensional
filiform algebra is minimal among upper-triangular ones, because such an
algebra admits none of size below n; that bound is the minimality
certificate used throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .catalog import FamilyId
from .core import Matrix, StructureTable, Vector, as_rational, commutator, rank
from .identities import IdentityReport, Violation


@dataclass(frozen=True)
class MatrixRep:
    family: FamilyId
    images: tuple

    @property
    def dim(self) -> int:
        """Number of basis elements represented."""
        return len(self.images)

    @property
    def size(self) -> int:
        return self.images[0].dim

    def image(self, i: int) -> Matrix:
        """phi(e_i), 1-based."""
        return self.images[i - 1]

    def apply(self, coeffs) -> Matrix:
        """Image of sum a_i e_i."""
        out = Matrix.zero(self.size)
        for a, m in zip(coeffs, self.images):
            a = as_rational(a)
            if a:
                out = out + m.scale(a)
        return out

    def to_json(self) -> dict:
        return {
            "family": self.family.tag,
            "dim": self.dim,
            "size": self.size,
            "images": [m.to_json() for m in self.images],
        }


def _mat(n: int, entries: dict) -> Matrix:
    return Matrix.from_entries(n, entries)


def build_rep_q(n2: int) -> MatrixRep:
    fam = FamilyId("Q", n2)
    images = [_mat(n2, {(k, k + 1): 1 for k in range(2, n2 - 1)})]
    for i in range(2, n2):
        images.append(_mat(n2, {(1, i): (-1) ** i, (n2 - i + 1, n2): 1}))
    images.append(_mat(n2, {(1, n2): -2}))
    return MatrixRep(fam, tuple(images))


def build_rep_r(n: int) -> MatrixRep:
    fam = FamilyId("R", n)
    images = [_mat(n, {(i, i + 1): 1 for i in range(1, n - 1)})]
    e2 = {(i, i + 2): 1 for i in range(1, n - 2)}
    e2[(n - 1, n)] = 1
    images.append(_mat(n, e2))
    for i in range(3, n + 1):
        images.append(_mat(n, {(n + 1 - i, n): 1}))
    return MatrixRep(fam, tuple(images))


def witt_alphas(n: int) -> list[Fraction]:
    """alpha_1..alpha_{n-3} with alpha_i = 1/(n - i)."""
    return [Fraction(1, n - i) for i in range(1, n - 2)]


def _w_coefficient(n: int, i: int, k: int) -> Fraction:
    # sum_{s=0}^{i-2} (-1)^{i+s} C(i-2, s) / (n - k - s)
    return sum(
        (Fraction((-1) ** (i + s) * math.comb(i - 2, s), n - k - s) for s in range(i - 1)),
        Fraction(0),
    )


def build_rep_w(n: int) -> MatrixRep:
    """Closed-form representation of the Witt algebra W_n."""
    fam = FamilyId("W", n)
    images = [_mat(n, {(k, k + 1): 1 for k in range(1, n - 1)})]
    e2 = {(k, k + 2): Fraction(1, n - k) for k in range(1, n - 2)}
    e2[(n - 1, n)] = 1
    images.append(_mat(n, e2))
    for i in range(3, n + 1):
        scale = Fraction(1, math.factorial(i - 2))
        entries = {(k, k + i): scale * _w_coefficient(n, i, k) for k in range(1, n - i)}
        entries[(n + 1 - i, n)] = scale
        images.append(_mat(n, entries))
    return MatrixRep(fam, tuple(images))


def w_images_by_recursion(n: int) -> list[Matrix]:
    """phi(e_1), phi(e_2), then phi(e_{k+1}) = [phi(e_1), phi(e_k)] / (k - 1).

    Independent of the closed form; the two must agree.
    """
    base = build_rep_w(n)
    images = [base.image(1), base.image(2)]
    for k in range(2, n):
        images.append(commutator(images[0], images[k - 1]).scale(Fraction(1, k - 1)))
    return images


BUILDERS = {"Q": build_rep_q, "R": build_rep_r, "W": build_rep_w}


def build_rep(tag: str, n: int) -> MatrixRep:
    if tag == "L":
        raise ValueError(
            "no representation builder for L_n: its minimal faithful representation "
            "comes from earlier published work and is not rebuilt here"
        )
    if tag not in BUILDERS:
        raise ValueError(f"unknown family {tag!r}; expected Q, R or W")
    return BUILDERS[tag](n)


def _sparse_rows(m: Matrix) -> dict:
    """{row: {col: value}} holding the nonzero entries."""
    out: dict = {}
    for (r, c), v in m.entries().items():
        out.setdefault(r, {})[c] = v
    return out


def _sparse_commutator(a: dict, b: dict) -> dict:
    """ab - ba as {(row, col): value}, zeros dropped."""
    out: dict = {}
    for x, y, sign in ((a, b, 1), (b, a, -1)):
        for r, row in x.items():
            for k, v in row.items():
                for c, w in y.get(k, {}).items():
                    out[(r, c)] = out.get((r, c), 0) + sign * v * w
    return {key: v for key, v in out.items() if v}


def verify_homomorphism(table: StructureTable, rep: MatrixRep) -> IdentityReport:
    """Pairs (i, j) where [phi(e_i), phi(e_j)] differs from phi([e_i, e_j])."""
    if rep.dim != table.dim:
        raise ValueError(f"representation has {rep.dim} images for a {table.dim}-dimensional algebra")
    n, size = table.dim, rep.size
    rows = [_sparse_rows(m) for m in rep.images]
    flat = [m.entries() for m in rep.images]
    bad = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            diff = _sparse_commutator(rows[i - 1], rows[j - 1])
            for k, c in table.product(i, j).items():
                for key, v in flat[k - 1].items():
                    diff[key] = diff.get(key, 0) - c * v
            diff = {key: v for key, v in diff.items() if v}
            if diff:
                bad.append(Violation(i, j, None, Vector(Matrix.from_entries(size, diff).vectorize())))
    return IdentityReport("homomorphism", n * n, bad)


def verify_faithful(rep: MatrixRep) -> bool:
    """True iff the images are linearly independent."""
    return rank([m.vectorize() for m in rep.images]) == rep.dim


def is_minimality_certificate(rep: MatrixRep) -> bool:
    """Faithful, strictly upper triangular, and of size equal to the algebra dimension."""
    return (
        verify_faithful(rep)
        and rep.size == rep.dim
        and all(m.is_strictly_upper() for m in rep.images)
    )


def binomial_sum_identity(m: int, x) -> tuple[Fraction, Fraction]:
    """Both sides of sum_k (-1)^k C(m,k)/(x+k) = m!/(x(x+1)...(x+m))."""
    if m < 0:
        raise ValueError("m must be non-negative")
    x = as_rational(x)
    if any(x + k == 0 for k in range(m + 1)):
        raise ZeroDivisionError(f"x = {x} is a pole for m = {m}")
    lhs = sum((Fraction((-1) ** k * math.comb(m, k)) / (x + k) for k in range(m + 1)), Fraction(0))
    denom = Fraction(1)
    for k in range(m + 1):
        denom *= x + k
    return lhs, math.factorial(m) / denom


def _a(alphas: list, i: int, p: int) -> Fraction:
    # sum_{s=0}^{i-2} (-1)^{i+s} C(i-2, s) alpha_{p+s}
    return sum(
        ((-1) ** (i + s) * math.comb(i - 2, s) * alphas[p + s - 1] for s in range(i - 1)),
        Fraction(0),
    )


def _ratio(i: int, j: int) -> Fraction:
    return Fraction((i - j) * math.factorial(i - 2) * math.factorial(j - 2), math.factorial(i + j - 2))


def coefficient_residuals(n: int, alphas=None):
    """Yield (equation, i, j, p, residual) for every instance of the system.

    Interior equations cover 1 <= p <= n-i-j-1 with i+j <= n-2; last-column
    equations cover i+j <= n.  Both enumerate 2 <= i < j, the pairs where
    the closed form applies to both factors.
    """
    alphas = witt_alphas(n) if alphas is None else [as_rational(a) for a in alphas]
    for i in range(2, n + 1):
        for j in range(i + 1, n + 1):
            if i + j > n:
                continue
            if i + j <= n - 2:
                for p in range(1, n - i - j):
                    lhs = (
                        _a(alphas, i, p) * _a(alphas, j, p + i)
                        - _a(alphas, j, p) * _a(alphas, i, p + j)
                        + _ratio(i, j) * _a(alphas, i + j, p)
                    )
                    yield "interior", i, j, p, lhs
            q = n + 1 - i - j
            lhs = _a(alphas, j, q) - _a(alphas, i, q)
            yield "last_column", i, j, None, lhs - _ratio(i, j)


def verify_coefficient_system(n: int, alphas=None) -> IdentityReport:
    """Check the Witt coefficient system with alpha_i = 1/(n-i) (or given alphas)."""
    if n < 5:
        raise ValueError("W requires dimension >= 5")
    bad = []
    counts = {"interior": 0, "last_column": 0}
    for eq, i, j, p, res in coefficient_residuals(n, alphas):
        counts[eq] += 1
        if res:
            bad.append(Violation(i, j, p, Vector([res]), eq))
    report = IdentityReport("coefficient_system", sum(counts.values()), bad)
    report.details = {
        "n": n,
        "enumeration": "2 <= i < j; interior: i+j <= n-2, 1 <= p <= n-i-j-1; last column: i+j <= n",
        "interior_instances": counts["interior"],
        "last_column_instances": counts["last_column"],
    }
    return report


@dataclass(frozen=True)
class ModuleAction:
    """Right action table: ``action[(k, i)]`` is (x_k, e_i) in module coordinates."""

    algebra_dim: int
    module_dim: int
    action: dict

    def get(self, k: int, i: int) -> Vector:
        return Vector.from_sparse(self.module_dim, self.action.get((k, i), {}))

    def sparse(self, k: int, i: int) -> dict:
        return self.action.get((k, i), {})


def derive_action(rep: MatrixRep) -> ModuleAction:
    """(x_k, e_i) = row k of phi(e_i)."""
    action = {}
    for i, m in enumerate(rep.images, start=1):
        for k in range(1, rep.size + 1):
            row = m.row(k).sparse()
            if row:
                action[(k, i)] = row
    return ModuleAction(rep.dim, rep.size, action)


def closed_form_action(tag: str, n: int) -> ModuleAction:
    """The published action lists, entered independently of the matrices."""
    FamilyId(tag, n)
    table: dict = {}

    def put(k, i, target, c):
        slot = table.setdefault((k, i), {})
        slot[target] = slot.get(target, 0) + Fraction(c)

    if tag == "Q":
        for i in range(2, n - 1):
            put(i, 1, i + 1, 1)
        for i in range(2, n):
            put(1, i, i, (-1) ** i)
            put(n + 1 - i, i, n, 1)
        put(1, n, n, -2)
    elif tag == "R":
        for i in range(1, n - 1):
            put(i, 1, i + 1, 1)
        for i in range(1, n - 2):
            put(i, 2, i + 2, 1)
        for j in range(2, n + 1):
            put(n + 1 - j, j, n, 1)
    elif tag == "W":
        for i in range(1, n - 1):
            put(i, 1, i + 1, 1)
        for i in range(1, n - 2):
            put(i, 2, i + 2, Fraction(1, n - i))
        for j in range(3, n - 1):
            for i in range(1, n - j):
                c = sum(
                    (Fraction((-1) ** (j + s) * math.comb(j - 2, s), n - i - s) for s in range(j - 1)),
                    Fraction(0),
                )
                put(i, j, i + j, c / math.factorial(j - 2))
        for j in range(2, n + 1):
            put(n + 1 - j, j, n, Fraction(1, math.factorial(j - 2)))
    else:
        raise ValueError(f"no published action list for family {tag!r}")
    table = {key: {t: c for t, c in v.items() if c} for key, v in table.items()}
    return ModuleAction(n, n, {key: v for key, v in table.items() if v})


def verify_action_table(derived: ModuleAction, family: FamilyId, expected: ModuleAction | None = None) -> IdentityReport:
    """Entrywise comparison of a derived action with the published one.

    ``expected`` defaults to :func:`closed_form_action` for ``family``.
    Violations are (module index k, algebra index i) with residual
    derived - expected.
    """
    if expected is None:
        expected = closed_form_action(family.tag, family.dim)
    if (derived.algebra_dim, derived.module_dim) != (expected.algebra_dim, expected.module_dim):
        raise ValueError("action tables have different shapes")
    bad = []
    for k in range(1, derived.module_dim + 1):
        for i in range(1, derived.algebra_dim + 1):
            diff = derived.get(k, i) - expected.get(k, i)
            if not diff.is_zero():
                bad.append(Violation(k, i, None, diff))
    return IdentityReport("action_table", derived.module_dim * derived.algebra_dim, bad)
