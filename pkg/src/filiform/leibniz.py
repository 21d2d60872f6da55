"""Leibniz algebras built on filiform Lie algebras and their natural modules.

The basis of every extension is e_1..e_m (the Lie part) followed by
x_1..x_k (the module, which is the squares ideal).  Products follow
[L, I] = 0: an x in the right slot always gives zero, and (x_k, e_i) is the
right action of e_i on x_k.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import catalog
from .core import StructureTable, _axpy, as_rational
from .identities import IdentityReport, SeriesProfile, check_leibniz, lower_central_series
from .representations import ModuleAction, build_rep, derive_action

ARITY = {"lambda": 9, "mu": 7, "eta": 4}
SYMBOL = {"lambda": "a", "mu": "g", "eta": "b"}
# (quotient family, dimension) each parametric family lives over
BASE = {"lambda": ("Q", 6), "mu": ("W", 5), "eta": ("R", 7)}


@dataclass(frozen=True)
class FamilyParams:
    family: str
    values: tuple

    def __post_init__(self):
        if self.family not in ARITY:
            raise ValueError(f"unknown family {self.family!r}; expected lambda, mu or eta")
        values = tuple(as_rational(v) for v in self.values)
        if len(values) != ARITY[self.family]:
            raise ValueError(f"{self.family} takes {ARITY[self.family]} parameters, got {len(values)}")
        object.__setattr__(self, "values", values)

    @classmethod
    def zero(cls, family: str) -> "FamilyParams":
        return cls(family, (0,) * ARITY[family])


@dataclass(frozen=True)
class LeibnizExtension:
    table: StructureTable
    lie_dim: int
    module_dim: int

    def e(self, i: int) -> int:
        return i

    def x(self, k: int) -> int:
        """Table index of x_k."""
        return self.lie_dim + k

    @property
    def lie_indices(self) -> range:
        return range(1, self.lie_dim + 1)

    @property
    def module_indices(self) -> range:
        return range(self.lie_dim + 1, self.lie_dim + self.module_dim + 1)


def extension_labels(m: int, k: int) -> list[str]:
    return [f"e{i}" for i in range(1, m + 1)] + [f"x{i}" for i in range(1, k + 1)]


def build_ql(lie: StructureTable, action: ModuleAction, name: str = "") -> LeibnizExtension:
    """Lie algebra plus module: [e,e] from ``lie``, [x_k,e_i] from ``action``, rest zero."""
    if action.algebra_dim != lie.dim:
        raise ValueError(f"action is for a {action.algebra_dim}-dimensional algebra, not {lie.dim}")
    m, k = lie.dim, action.module_dim
    products = lie.nonzero()
    for (row, i), vec in action.action.items():
        products[(m + row, i)] = {m + t: c for t, c in vec.items()}
    table = StructureTable(m + k, products, extension_labels(m, k), name or f"Q({lie.name})")
    return LeibnizExtension(table, m, k)


def natural_extension(tag: str, n: int) -> LeibnizExtension:
    """Q(L) for a catalog algebra and the action derived from its representation."""
    return build_ql(catalog.build(tag, n), derive_action(build_rep(tag, n)))


# ---------------------------------------------------------------------------
# printed families
# ---------------------------------------------------------------------------

LAMBDA_TABLE = """
[e1,e1] = a1*x6
[e1,e3] = e4
[x1,e6] = -2*x6
[e3,e1] = -e4
[e5,e3] = 1/4*a3*x6
[e2,e1] = -e3 + a2*x1 + a3*x2
[e4,e1] = -e5
[x1,e3] = -x3
[e2,e2] = a5*x3 + a7*x4 + a8*x5
[e5,e1] = -a4*x6
[x4,e3] = x6
[e3,e2] = 4*a2*x2 - a6*x3 - 2*a7*x5 - a9*x6
[e6,e1] = -1/4*a3*x6
[e1,e4] = e5
[e4,e2] = -2*a2*x3 + 1/2*a6*x4
[x2,e1] = x3
[e3,e4] = e6
[e2,e3] = -3*a2*x2 + a6*x3 - a5*x4 + a7*x5 + a9*x6
[x3,e1] = x4
[x1,e4] = x4
[e3,e3] = -2*a2*x3 + 1/2*a6*x4
[x4,e1] = x5
[x3,e4] = x6
[e4,e3] = -e6 + 2*a2*x4 - 1/2*a6*x5
[e1,e2] = e3
[e1,e5] = a4*x6
[e2,e4] = 4*a2*x3 - 3/2*a6*x4 + a5*x5
[e5,e2] = e6
[x1,e5] = -x5
[e4,e4] = -2*a2*x5 - 1/2*a3*x6
[e6,e2] = -a6*x6
[x2,e5] = x6
[e2,e5] = -e6 - 3*a2*x4 + 3/2*a6*x5
[x1,e2] = x2
[e2,e6] = 5/2*a6*x6
[e3,e5] = 2*a2*x5 + 3/4*a3*x6
[x5,e2] = x6
[e3,e6] = -2*a2*x6
[e1,e6] = -2*a2*x5 - 3/4*a3*x6
"""

MU_TABLE = """
[e1,e1] = g1*x5
[e2,e1] = -e3
[e3,e1] = -2*e4
[e4,e1] = -3*e5
[e5,e1] = -g2*x5
[e2,e4] = 1/2*g3*x4 + 1/2*g2*x5
[x2,e1] = x3
[x3,e1] = x4
[e1,e2] = e3
[x2,e2] = 1/3*x4
[x3,e3] = x5
[e4,e2] = -1/2*g2*x5
[e5,e2] = -g5*x5
[x1,e2] = 1/4*x3
[e2,e2] = g3*x2 + g4*x3 + g6*x4
[x4,e2] = x5
[e1,e3] = 2*e4
[e2,e3] = e5 - g3*x3 + g4*x4 + g7*x5
[e4,e3] = 3*g5*x5
[x1,e3] = 1/12*x4
[e3,e2] = -e5 - 2*g4*x4 - g7*x5
[e1,e4] = 3*e5
[x1,e1] = x2
[e3,e4] = -3*g5*x5
[x2,e4] = 1/2*x5
[e1,e5] = g2*x5
[e2,e5] = g5*x5
[x1,e5] = 1/6*x5
"""

ETA_TABLE = """
[e1,e1] = b1*x7
[e1,e2] = e3
[e1,e3] = e4
[e1,e4] = e5
[e1,e5] = e6
[e1,e6] = e7
[e1,e7] = b2*x7
[e2,e1] = -e3
[e2,e2] = b3*x4 + b4*x6
[e2,e3] = e5 - b3*x5
[e2,e4] = e6 + b3*x6
[e2,e5] = e7
[e2,e6] = b2*x7
[e3,e1] = -e4
[e3,e2] = -e5
[e4,e1] = -e5
[e4,e2] = -e6
[e5,e1] = -e6
[e5,e2] = -e7
[e6,e1] = -e7
[e6,e2] = -b2*x7
[e7,e1] = -b2*x7
[x1,e1] = x2
[x1,e2] = x3
[x1,e7] = x7
[x2,e1] = x3
[x2,e2] = x4
[x2,e6] = x7
[x3,e1] = x4
[x3,e2] = x5
[x3,e5] = x7
[x4,e1] = x5
[x4,e2] = x6
[x4,e4] = x7
[x5,e1] = x6
[x5,e3] = x7
[x6,e2] = x7
"""

_LINE = re.compile(r"\[(\w+),(\w+)\]\s*=\s*(.+)")
_TERM = re.compile(r"([+-]?)\s*(?:(\d+(?:/\d+)?)\*)?(?:([abg]\d)\*)?([ex]\d+)")


def parse_parametric(text: str) -> dict:
    """Parse ``[u,v] = c*p*w + ...`` lines.

    Returns ``{(u, v): [(w, coeff, param_index or None), ...]}`` where the
    product coefficient is coeff times the named parameter, if any.
    """
    out: dict = {}
    for line in text.strip().splitlines():
        m = _LINE.fullmatch(line.strip())
        if not m:
            raise ValueError(f"cannot parse product line {line!r}")
        u, v, rhs = m.groups()
        terms = []
        pos = 0
        rhs = rhs.replace(" ", "")
        while pos < len(rhs):
            t = _TERM.match(rhs, pos)
            if not t or t.end() == pos:
                raise ValueError(f"cannot parse term in {line!r}")
            sign, coeff, param, target = t.groups()
            c = Fraction(coeff) if coeff else Fraction(1)
            if sign == "-":
                c = -c
            terms.append((target, c, int(param[1:]) if param else None))
            pos = t.end()
        if (u, v) in out:
            raise ValueError(f"duplicate product [{u},{v}]")
        out[(u, v)] = terms
    return out


_PARSED = {
    "lambda": parse_parametric(LAMBDA_TABLE),
    "mu": parse_parametric(MU_TABLE),
    "eta": parse_parametric(ETA_TABLE),
}


def _instantiate(p: FamilyParams, parsed: dict | None = None) -> LeibnizExtension:
    tag, m = BASE[p.family]
    labels = extension_labels(m, m)
    index = {lab: i for i, lab in enumerate(labels, start=1)}
    products: dict = {}
    for (u, v), terms in (parsed or _PARSED[p.family]).items():
        vec: dict = {}
        for target, c, param in terms:
            coeff = c if param is None else c * p.values[param - 1]
            if coeff:
                vec[index[target]] = vec.get(index[target], 0) + coeff
        products[(index[u], index[v])] = vec
    args = ",".join(str(v) for v in p.values)
    table = StructureTable(2 * m, products, labels, f"{p.family}({args})")
    return LeibnizExtension(table, m, m)


def build_lambda(p: FamilyParams) -> LeibnizExtension:
    """12-dimensional family over Q_6."""
    if p.family != "lambda":
        raise ValueError("expected lambda parameters")
    return _instantiate(p)


def build_mu(p: FamilyParams) -> LeibnizExtension:
    """10-dimensional family over W_5."""
    if p.family != "mu":
        raise ValueError("expected mu parameters")
    return _instantiate(p)


def build_eta(p: FamilyParams) -> LeibnizExtension:
    """14-dimensional family over R_7."""
    if p.family != "eta":
        raise ValueError("expected eta parameters")
    return _instantiate(p)


def build_family(family: str, values) -> LeibnizExtension:
    return _instantiate(FamilyParams(family, tuple(values)))


def base_of(family: str) -> tuple[StructureTable, ModuleAction]:
    """The Lie quotient and module action a parametric family must induce."""
    tag, n = BASE[family]
    return catalog.build(tag, n), derive_action(build_rep(tag, n))


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass
class ExtensionReport:
    leibniz: IdentityReport
    ideal_ok: bool
    quotient_ok: bool
    action_ok: bool
    failures: list = field(default_factory=list)

    @property
    def structure_ok(self) -> bool:
        return self.ideal_ok and self.quotient_ok and self.action_ok

    @property
    def ok(self) -> bool:
        return self.structure_ok and self.leibniz.ok


def quotient_table(ext: LeibnizExtension) -> StructureTable:
    """Products of e's with every x-component dropped."""
    m = ext.lie_dim
    out = {}
    for i in ext.lie_indices:
        for j in ext.lie_indices:
            vec = {k: c for k, c in ext.table.product(i, j).items() if k <= m}
            if vec:
                out[(i, j)] = vec
    return StructureTable(m, out, name=f"{ext.table.name}/I")


def induced_action(ext: LeibnizExtension) -> ModuleAction:
    """(x_k, e_i) read off the table in module coordinates (e-components ignored)."""
    m = ext.lie_dim
    action = {}
    for k in range(1, ext.module_dim + 1):
        for i in ext.lie_indices:
            vec = {t - m: c for t, c in ext.table.product(m + k, i).items() if t > m}
            if vec:
                action[(k, i)] = vec
    return ModuleAction(m, ext.module_dim, action)


def verify_extension(
    ext: LeibnizExtension,
    expected_quotient: StructureTable,
    expected_action: ModuleAction,
    workers: int = 1,
) -> ExtensionReport:
    """Leibniz identity, ideal structure of the x-span, quotient and induced action."""
    if expected_quotient.dim != ext.lie_dim:
        raise ValueError(f"expected quotient has dimension {expected_quotient.dim}, extension has {ext.lie_dim}")
    if (expected_action.algebra_dim, expected_action.module_dim) != (ext.lie_dim, ext.module_dim):
        raise ValueError("expected action has the wrong shape")
    failures = []
    t = ext.table
    m = ext.lie_dim
    labels = t.labels

    ideal_ok = True
    for k in ext.module_indices:
        for b in range(1, t.dim + 1):
            if t.product(b, k):
                ideal_ok = False
                failures.append(f"[{labels[b - 1]},{labels[k - 1]}] != 0")
            if any(idx <= m for idx in t.product(k, b)):
                ideal_ok = False
                failures.append(f"[{labels[k - 1]},{labels[b - 1]}] leaves the x-span")

    quotient = quotient_table(ext)
    quotient_ok = quotient == expected_quotient
    if not quotient_ok:
        for i in ext.lie_indices:
            for j in ext.lie_indices:
                if quotient.product(i, j) != expected_quotient.product(i, j):
                    failures.append(f"quotient [e{i},e{j}] differs")

    induced = induced_action(ext)
    action_ok = True
    for k in range(1, ext.module_dim + 1):
        for i in ext.lie_indices:
            if induced.sparse(k, i) != expected_action.sparse(k, i):
                action_ok = False
                failures.append(f"action (x{k},e{i}) differs")

    return ExtensionReport(check_leibniz(t, workers), ideal_ok, quotient_ok, action_ok, failures)


def verify_family_instance(p: FamilyParams, workers: int = 1) -> ExtensionReport:
    quotient, action = base_of(p.family)
    return verify_extension(_instantiate(p), quotient, action, workers)


@dataclass
class CheckReport:
    name: str
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_normal_form(ext: LeibnizExtension) -> CheckReport:
    """Does a lambda-type table have the normalized shape over Q_6?

    Requires [e1,e_i] = e_{i+1} exactly (2 <= i <= 4), [e5,e2] = e6
    exactly, [e1,e1] inside span{x1, x2, x6} and [e2,e1] + e3 inside
    span{x1, x2}.
    """
    t = ext.table
    if ext.lie_dim != 6 or ext.module_dim != 6:
        return CheckReport("normal_form", ["not a 12-dimensional extension of a 6-dimensional algebra"])
    x = ext.x
    fails = []
    for i in range(2, 5):
        if t.product(1, i) != {i + 1: 1}:
            fails.append(f"[e1,e{i}] = {t.format_sparse(t.product(1, i))}, expected e{i + 1}")
    if t.product(5, 2) != {6: 1}:
        fails.append(f"[e5,e2] = {t.format_sparse(t.product(5, 2))}, expected e6")
    allowed11 = {x(1), x(2), x(6)}
    if not set(t.product(1, 1)) <= allowed11:
        fails.append("[e1,e1] has components outside x1, x2, x6")
    rest = dict(t.product(2, 1))
    _axpy(rest, Fraction(1), {3: Fraction(1)})
    if not set(rest) <= {x(1), x(2)}:
        fails.append("[e2,e1] is not -e3 plus x1, x2 components")
    return CheckReport("normal_form", fails)


Fingerprint = SeriesProfile


def fingerprint(table: StructureTable) -> Fingerprint:
    """Isomorphism invariants: series dimensions, annihilators, squares ideal."""
    return lower_central_series(table)


# ---------------------------------------------------------------------------
# Leibniz identity as a function of the parameters
# ---------------------------------------------------------------------------

def _unisolvent_points(k: int) -> list[tuple]:
    """0, e_a, 2e_a, e_a + e_b: determines any polynomial of degree <= 2 in k variables."""
    zero = (0,) * k

    def unit(*idx):
        v = [0] * k
        for a in idx:
            v[a] += 1
        return tuple(v)

    pts = [zero]
    pts += [unit(a) for a in range(k)]
    pts += [unit(a, a) for a in range(k)]
    pts += [unit(a, b) for a, b in combinations(range(k), 2)]
    return pts


@dataclass
class ParametricLeibniz:
    """Leibniz residuals of a family as exact polynomials in its parameters.

    ``residuals`` maps (i, j, k, coordinate label) to ``{monomial: coeff}``
    where a monomial is a tuple of 1-based parameter indices ((), (3,),
    (2, 6), (4, 4), ...).  An empty mapping means the family satisfies the
    identity for every parameter value.
    """

    family: str
    points: int
    residuals: dict

    @property
    def ok(self) -> bool:
        return not self.residuals

    def describe(self) -> list[str]:
        sym = SYMBOL[self.family]
        t = _instantiate(FamilyParams.zero(self.family)).table
        lines = []
        for (i, j, k, lab), poly in sorted(self.residuals.items()):
            terms = []
            for mono, c in sorted(poly.items()):
                name = "*".join(f"{sym}{p}" for p in mono) or "1"
                terms.append(f"{c}*{name}")
            lhs = f"[[{t.labels[i - 1]},{t.labels[j - 1]}],{t.labels[k - 1]}]"
            lines.append(f"{lhs} residual at {lab}: " + " + ".join(terms))
        return lines


def parametric_leibniz(family: str, table_text: str | None = None) -> ParametricLeibniz:
    """Exact Leibniz residual polynomials of a lambda/mu/eta family.

    Every product is affine in the parameters, so each residual is a
    polynomial of total degree <= 2.  Evaluating at the unisolvent set
    {0, e_a, 2e_a, e_a + e_b} and interpolating recovers it exactly.
    ``table_text`` replaces the built-in product list (same syntax).
    """
    k = ARITY[family]
    parsed = parse_parametric(table_text) if table_text is not None else None
    pts = _unisolvent_points(k)
    values = {}
    labels = None
    for pt in pts:
        ext = _instantiate(FamilyParams(family, pt), parsed)
        labels = ext.table.labels
        rep = check_leibniz(ext.table)
        values[pt] = {(v.i, v.j, v.k, idx): c for v in rep.violations for idx, c in v.residual.sparse().items()}
    keys = set().union(*values.values())

    def f(pt, key):
        return values[pt].get(key, Fraction(0))

    zero = pts[0]

    def unit(*idx):
        v = [0] * k
        for a in idx:
            v[a] += 1
        return tuple(v)

    residuals: dict = {}
    for key in keys:
        c0 = f(zero, key)
        poly = {}
        quad, lin = {}, {}
        for a in range(k):
            fa, f2a = f(unit(a), key), f(unit(a, a), key)
            quad[a] = (f2a - 2 * fa + c0) / 2
            lin[a] = fa - c0 - quad[a]
        if c0:
            poly[()] = c0
        for a in range(k):
            if lin[a]:
                poly[(a + 1,)] = lin[a]
            if quad[a]:
                poly[(a + 1, a + 1)] = quad[a]
        for a, b in combinations(range(k), 2):
            q = f(unit(a, b), key) - c0 - lin[a] - lin[b] - quad[a] - quad[b]
            if q:
                poly[(a + 1, b + 1)] = q
        if poly:
            i, j, kk, idx = key
            residuals[(i, j, kk, labels[idx - 1])] = poly
    return ParametricLeibniz(family, len(pts), residuals)


def evaluate_residual(poly: dict, values) -> Fraction:
    """Value of a residual polynomial at a parameter tuple."""
    total = Fraction(0)
    for mono, c in poly.items():
        term = c
        for p in mono:
            term *= as_rational(values[p - 1])
        total += term
    return total
