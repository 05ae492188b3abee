"""Mixed multiplicities as finite differences of a bigraded length function.

For a family (J; I_1..I_d) and M = A/N the length function

    h(n0, n) = l(J^n0 I^n M / J^(n0+1) I^n M)

agrees with a polynomial of total degree q - 1 for large arguments, where q is
the dimension of M modulo its I-torsion. Its top-degree coefficients are read
off as iterated forward differences on a grid that is certified to lie in the
polynomial region by window constancy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import comb

from .config import DEFAULT, Config
from .ideal import Ideal, IdealFamily, PowerCache, radical_membership
from .length import ModuleSpec, NotStabilized, quotient_length, saturate_module


class DegenerateContext(ValueError):
    pass


class TypeBelowTopDegree(ValueError):
    pass


class ExtentTooSmall(IndexError):
    pass


@dataclass(frozen=True)
class MultiType:
    """Index (k0, k) of e(J^[k0+1], I^[k]; M)."""

    k0: int
    k: tuple

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(self.k))
        if self.k0 < 0 or any(a < 0 for a in self.k):
            raise ValueError("type entries must be non-negative")

    @property
    def total(self) -> int:
        return self.k0 + sum(self.k)

    @property
    def orders(self) -> tuple:
        return (self.k0,) + self.k

    def label(self) -> str:
        return f"({self.k0 + 1},({','.join(map(str, self.k))}))"

    def __str__(self):
        return self.label()


@dataclass
class MixedContext:
    fam: IdealFamily
    M: ModuleSpec
    I: Ideal
    Mbar: ModuleSpec
    q: int
    cache: PowerCache = field(repr=False, default=None)
    values: dict = field(repr=False, default_factory=dict)

    @property
    def d(self) -> int:
        return self.fam.d

    @property
    def axes(self) -> int:
        return self.fam.d + 1


def make_context(fam: IdealFamily, M: ModuleSpec) -> MixedContext:
    if fam.ring != M.ring:
        raise ValueError("family and module live over different rings")
    I = fam.product()
    if all(radical_membership(g, M.N) for g in I.gens):
        raise DegenerateContext("I inside radical of annihilator")
    Mbar, q = saturate_module(M, I)
    if q < 1:
        raise DegenerateContext("saturated module has dimension 0")
    return MixedContext(fam, M, I, Mbar, q, PowerCache(fam))


def bhattacharya_value(ctx: MixedContext, n0: int, n, config: Config = DEFAULT) -> int:
    """l(J^n0 I^n M / J^(n0+1) I^n M), memoized on the context."""
    point = (n0,) + tuple(n)
    if len(point) != ctx.axes or any(a < 0 for a in point):
        raise ValueError(f"bad grid point {point}")
    v = ctx.values.get(point)
    if v is None:
        N = ctx.M.N
        U = ctx.cache.product(point) + N
        V = ctx.cache.product((n0 + 1,) + point[1:]) + N
        v = quotient_length(U, V, annihilator=ctx.fam.J, cap=U.max_degree() + config.degree_cap)
        ctx.values.setdefault(point, v)
    return v


class HilbertGrid:
    """Length-function values on a box, computed lazily through the context memo."""

    def __init__(self, ctx: MixedContext, base, extent, config: Config = DEFAULT):
        self.ctx = ctx
        self.base = tuple(base)
        self.extent = tuple(extent)
        self.config = config
        if len(self.base) != ctx.axes or len(self.extent) != ctx.axes:
            raise ValueError("grid box has the wrong number of axes")

    def contains(self, point) -> bool:
        return all(b <= p <= b + w for p, b, w in zip(point, self.base, self.extent))

    def __call__(self, point) -> int:
        point = tuple(point)
        if not self.contains(point):
            raise ExtentTooSmall(f"{point} lies outside the grid")
        return bhattacharya_value(self.ctx, point[0], point[1:], self.config)

    def values(self) -> dict:
        ranges = [range(b, b + w + 1) for b, w in zip(self.base, self.extent)]
        return {p: self(p) for p in product(*ranges)}


def difference(g, h0: int, h):
    """The (h0, h) forward difference of a function on grid points."""
    orders = (h0,) + tuple(h)
    if any(o < 0 for o in orders):
        raise ValueError("difference orders must be non-negative")
    top = sum(orders)
    terms = []
    for offs in product(*(range(o + 1) for o in orders)):
        coeff = (-1) ** (top - sum(offs))
        for o, a in zip(orders, offs):
            coeff *= comb(o, a)
        terms.append((offs, coeff))

    def delta(point) -> int:
        point = tuple(point)
        if len(point) != len(orders):
            raise ValueError("point and difference orders disagree in length")
        return sum(c * g(tuple(p + a for p, a in zip(point, offs))) for offs, c in terms)

    return delta


def _window_points(base, window: int):
    """The base point and its translates along each axis up to ``window``."""
    pts = [tuple(base)]
    for axis in range(len(base)):
        for j in range(1, window + 1):
            p = list(base)
            p[axis] += j
            pts.append(tuple(p))
    return pts


@dataclass(frozen=True)
class MixedValue:
    value: int
    base: tuple
    window: int
    stabilized: bool


def _coerce_type(ctx: MixedContext, t) -> MultiType:
    if not isinstance(t, MultiType):
        t = MultiType(*t)
    if len(t.k) != ctx.d:
        raise ValueError(f"type {t} has {len(t.k)} entries, family has {ctx.d} ideals")
    return t


def _base(ctx: MixedContext, config: Config, base) -> tuple:
    if base is not None:
        base = tuple(base) if not isinstance(base, int) else (base,) * ctx.axes
        if len(base) != ctx.axes:
            raise ValueError("base has the wrong number of axes")
        return base
    b = config.grid_base if config.grid_base is not None else ctx.q + 2
    return (b,) * ctx.axes


def mixed_multiplicity_report(ctx: MixedContext, t, config: Config = DEFAULT, base=None) -> MixedValue:
    t = _coerce_type(ctx, t)
    w = config.grid_window
    if t.total > ctx.q - 1:
        return MixedValue(0, (), w, True)
    if t.total < ctx.q - 1:
        raise TypeBelowTopDegree(f"type {t} has total degree {t.total} below q - 1 = {ctx.q - 1}")
    b = _base(ctx, config, base)
    for _ in range(config.max_doublings + 1):
        extent = tuple(o + w for o in t.orders)
        grid = HilbertGrid(ctx, b, extent, config)
        delta = difference(grid, t.k0, t.k)
        vals = {delta(p) for p in _window_points(b, w)}
        if len(vals) == 1:
            return MixedValue(vals.pop(), b, w, True)
        b = tuple(max(1, 2 * x) for x in b)
    raise NotStabilized(f"differences for type {t} not constant after {config.max_doublings} doublings")


def mixed_multiplicity(ctx: MixedContext, t, config: Config = DEFAULT, base=None) -> int:
    """e(J^[k0+1], I^[k]; M), zero above total degree q - 1."""
    return mixed_multiplicity_report(ctx, t, config, base).value


def top_types(d: int, total: int) -> list:
    """All (k0, k) with k0 + |k| = total, in lexicographic order of (k0, k)."""
    out = []
    for parts in product(range(total + 1), repeat=d + 1):
        if sum(parts) == total:
            out.append(MultiType(parts[0], parts[1:]))
    return out


class AllZeroTable(AssertionError):
    pass


def mixed_multiplicity_table(ctx: MixedContext, config: Config = DEFAULT) -> dict:
    table = {t: mixed_multiplicity(ctx, t, config) for t in top_types(ctx.d, ctx.q - 1)}
    if any(v < 0 for v in table.values()):
        raise AssertionError(f"negative mixed multiplicity in {table}")
    if not any(table.values()):
        raise AllZeroTable("every mixed multiplicity vanishes")
    return table


@dataclass(frozen=True)
class StabilizationReport:
    passed: bool
    base: tuple
    window: int
    violations: tuple  # (orders, point, value)


def stabilization_evidence(ctx: MixedContext, config: Config = DEFAULT, base=None) -> StabilizationReport:
    """Check that every total-order-q difference vanishes on the window."""
    b = _base(ctx, config, base)
    w = config.grid_window
    bad = []
    for t in top_types(ctx.d, ctx.q):
        grid = HilbertGrid(ctx, b, tuple(o + w for o in t.orders), config)
        delta = difference(grid, t.k0, t.k)
        for p in _window_points(b, w):
            v = delta(p)
            if v:
                bad.append((t.orders, p, v))
    return StabilizationReport(not bad, b, w, tuple(bad))
