"""Vector fields on the small phase space and the genus-0/1 operator calculus.

A :class:`VectorField` is a tuple of component functions in the frame
``gamma_1..gamma_N``.  A :class:`Calculus` binds a model (and optionally a
genus-1 potential) and provides correlation functions, the quantum product,
the grading operator ``G``, Euler powers, ``Delta``, covariant derivatives and
Lie brackets.  Results are memoised per calculus; caches are only ever filled,
never overwritten, so sharing them between calculi that differ only in F1 is
safe for every genus-0 quantity.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .model import FrobeniusModel
from .series import Scalar, SeriesSpace, TruncatedSeries, rational, series_sum

__all__ = ["VectorField", "Calculus", "MissingGenusOne"]


class MissingGenusOne(RuntimeError):
    """A genus-1 quantity was requested from a model without F1."""


class VectorField:
    """``sum_a coeffs[a] * gamma_a`` with series-valued coefficients."""

    __slots__ = ("coeffs", "_hash", "_nz")

    def __init__(self, coeffs: Sequence[TruncatedSeries]):
        self.coeffs = tuple(coeffs)
        if not self.coeffs:
            raise ValueError("a vector field needs at least one component")
        self._hash = None
        self._nz = None

    @property
    def space(self) -> SeriesSpace:
        return self.coeffs[0].space

    @property
    def N(self) -> int:
        return len(self.coeffs)

    @property
    def valid_t(self) -> int:
        return min(c.valid_t for c in self.coeffs)

    def __getitem__(self, a: int) -> TruncatedSeries:
        return self.coeffs[a]

    def nonzero(self) -> list[tuple[int, TruncatedSeries]]:
        if self._nz is None:
            self._nz = [(a, c) for a, c in enumerate(self.coeffs) if c.terms]
        return self._nz

    def is_zero(self) -> bool:
        return not self.nonzero()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self is other or self.coeffs == other.coeffs

    def __add__(self, other: VectorField) -> VectorField:
        return VectorField([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: VectorField) -> VectorField:
        return VectorField([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> VectorField:
        return VectorField([-a for a in self.coeffs])

    def scale(self, c: Scalar) -> VectorField:
        c = rational(c)
        if c == 1:
            return self
        return VectorField([a.scale(c) for a in self.coeffs])

    def __mul__(self, c: Scalar) -> VectorField:
        return self.scale(c)

    __rmul__ = __mul__

    def times(self, f: TruncatedSeries) -> VectorField:
        """Multiply by a function."""
        return VectorField([a * f for a in self.coeffs])

    def vanishes_through(self, degree: int | None = None) -> bool:
        bound = self.valid_t if degree is None else degree
        return all(c.vanishes_through(bound) for c in self.coeffs)

    def __repr__(self) -> str:
        parts = [f"({c.to_str(4)})*g{a + 1}" for a, c in self.nonzero()]
        return "VectorField(" + (" + ".join(parts) if parts else "0") + f"; valid_t={self.valid_t})"


class _Genus0Store:
    """Write-once caches for quantities that depend on F0 only."""

    def __init__(self) -> None:
        self.derivs: dict[tuple[int, ...], TruncatedSeries] = {}
        self.corr: dict[tuple, TruncatedSeries] = {}
        self.prod: dict[tuple, VectorField] = {}
        self.powers: list[VectorField] = []
        self.delta: VectorField | None = None


class Calculus:
    """Operator calculus for one model; F1 defaults to ``model.F1``."""

    def __init__(self, model: FrobeniusModel, f1: TruncatedSeries | None = None,
                 _store: _Genus0Store | None = None):
        if f1 is not None:
            model = model.with_f1(f1)
        self.model = model
        self.space = model.space
        self.N = model.N
        self.b = model.b
        self.b1 = model.b1
        self.eta = model.eta
        self.eta_inv = model.eta_inv
        self._g0 = _store if _store is not None else _Genus0Store()
        self._d1: dict[tuple[int, ...], TruncatedSeries] = {}
        self._c1: dict[tuple, TruncatedSeries] = {}
        sp = self.space
        one, zero = sp.one(), sp.zero()
        self._basis = [VectorField([one if i == a else zero for i in range(self.N)]) for a in range(self.N)]
        self._dual = [
            VectorField([sp.constant(self.eta_inv[m][a]) for m in range(self.N)]) for a in range(self.N)
        ]

    def with_f1(self, f1: TruncatedSeries | None) -> Calculus:
        """Same genus-0 data (and caches), different genus-1 potential."""
        return Calculus(self.model.with_f1(f1), _store=self._g0)

    @property
    def has_f1(self) -> bool:
        return self.model.F1 is not None

    # -- fields --------------------------------------------------------------
    def basis(self, a: int) -> VectorField:
        """gamma_a (0-based)."""
        return self._basis[a]

    def dual(self, a: int) -> VectorField:
        """gamma^a = sum_m eta^{ma} gamma_m (0-based)."""
        return self._dual[a]

    def zero_field(self) -> VectorField:
        z = self.space.zero()
        return VectorField([z] * self.N)

    def constant_field(self, values: Sequence[Scalar]) -> VectorField:
        return VectorField([self.space.constant(v) for v in values])

    def field(self, coeffs: Sequence[TruncatedSeries]) -> VectorField:
        if len(coeffs) != self.N:
            raise ValueError(f"expected {self.N} components")
        return VectorField(coeffs)

    def field_sum(self, fields: Iterable[VectorField]) -> VectorField:
        fields = list(fields)
        if not fields:
            return self.zero_field()
        return VectorField([series_sum(self.space, (f.coeffs[a] for f in fields)) for a in range(self.N)])

    def G(self, v: VectorField) -> VectorField:
        """Grading operator: component a times b_a."""
        return VectorField([c.scale(b) for c, b in zip(v.coeffs, self.b)])

    def lower(self, v: VectorField) -> list[TruncatedSeries]:
        """eta(v, gamma_m) for each m."""
        return [
            series_sum(self.space, (v.coeffs[a].scale(self.eta[a][m]) for a in range(self.N) if self.eta[a][m]))
            for m in range(self.N)
        ]

    def raise_index(self, lowered: Sequence[TruncatedSeries]) -> VectorField:
        """sum_{a,m} eta^{am} lowered[m] gamma_a."""
        inv = self.eta_inv
        return VectorField([
            series_sum(self.space, (lowered[m].scale(inv[a][m]) for m in range(self.N) if inv[a][m]))
            for a in range(self.N)
        ])

    # -- potentials and correlators -------------------------------------------
    def potential(self, g: int) -> TruncatedSeries:
        if g == 0:
            return self.model.F0
        if g == 1:
            if self.model.F1 is None:
                raise MissingGenusOne(f"model {self.model.name!r} has no genus-1 potential")
            return self.model.F1
        raise ValueError("only genus 0 and 1 are supported")

    def derivative(self, g: int, idx: Sequence[int]) -> TruncatedSeries:
        """Partial derivative of F_g along the (sorted) multi-index ``idx``."""
        key = tuple(sorted(idx))
        cache = self._g0.derivs if g == 0 else self._d1
        hit = cache.get(key)
        if hit is not None:
            return hit
        if not key:
            out = self.potential(g)
        else:
            out = self.derivative(g, key[:-1]).deriv(key[-1])
        cache[key] = out
        return out

    def _levels(self, fields: Sequence[VectorField]) -> dict[tuple[int, ...], TruncatedSeries | None]:
        """Contract component products by sorted index multiset.

        ``None`` stands for the unit coefficient and avoids needless products
        with the constant basis fields.
        """
        level: dict[tuple[int, ...], list[TruncatedSeries | None]] = {(): [None]}
        for f in fields:
            comps = f.nonzero()
            new: dict[tuple[int, ...], list[TruncatedSeries | None]] = {}
            for prefix, coefs in level.items():
                coef = self._collapse(coefs)
                for a, c in comps:
                    key = tuple(sorted(prefix + (a,)))
                    if coef is None:
                        term = None if c.is_one() else c
                    else:
                        term = coef if c.is_one() else coef * c
                    new.setdefault(key, []).append(term)
            level = new
            if not level:
                break
        return {k: self._collapse(v) for k, v in level.items()}

    def _collapse(self, coefs: list[TruncatedSeries | None]) -> TruncatedSeries | None:
        if len(coefs) == 1:
            return coefs[0]
        one = self.space.one()
        return series_sum(self.space, (one if c is None else c for c in coefs))

    def _bound(self, g: int, fields: Sequence[VectorField], extra: int = 0) -> int:
        v = self.potential(g).valid_t - len(fields) - extra
        for f in fields:
            v = min(v, f.valid_t)
        return v

    @staticmethod
    def _order(fields: Sequence[VectorField]) -> tuple[VectorField, ...]:
        return tuple(sorted(fields, key=lambda f: (len(f.nonzero()), hash(f))))

    def correlation(self, g: int, *fields: VectorField) -> TruncatedSeries:
        """<<V_1 ... V_k>>_g on the small phase space (k = 0 gives F_g)."""
        ordered = self._order(fields)
        cache = self._g0.corr if g == 0 else self._c1
        hit = cache.get(ordered)
        if hit is not None:
            return hit
        bound = self._bound(g, ordered)
        level = self._levels(ordered)
        parts = []
        for key, coef in level.items():
            d = self.derivative(g, key)
            parts.append(d if coef is None else coef * d)
        out = series_sum(self.space, parts)
        if out.valid_t > bound:
            out = out.with_valid(bound)
        cache[ordered] = out
        return out

    def corr0(self, *fields: VectorField) -> TruncatedSeries:
        return self.correlation(0, *fields)

    def corr1(self, *fields: VectorField) -> TruncatedSeries:
        return self.correlation(1, *fields)

    # -- quantum product -----------------------------------------------------
    def product(self, v: VectorField, w: VectorField) -> VectorField:
        """v o w = sum_a <<v w gamma^a>>_0 gamma_a."""
        key = self._order((v, w))
        hit = self._g0.prod.get(key)
        if hit is not None:
            return hit
        bound = self._bound(0, key, extra=1)
        level = self._levels(key)
        lowered = []
        for m in range(self.N):
            parts = []
            for idx, coef in level.items():
                d = self.derivative(0, idx + (m,))
                parts.append(d if coef is None else coef * d)
            s = series_sum(self.space, parts)
            lowered.append(s.with_valid(bound) if s.valid_t > bound else s)
        out = self.raise_index(lowered)
        self._g0.prod[key] = out
        return out

    def prod(self, *fields: VectorField) -> VectorField:
        """Left-folded quantum product of several fields."""
        if not fields:
            return self.basis(0)
        out = fields[0]
        for f in fields[1:]:
            out = self.product(out, f)
        return out

    # -- Euler field, powers, Delta --------------------------------------------
    def euler(self) -> VectorField:
        """E = c_1 + sum_a (b_1 + 1 - b_a) t^a gamma_a."""
        sp = self.space
        comps = []
        for a in range(self.N):
            w = self.b1 + 1 - self.b[a]
            comps.append(sp.constant(self.model.euler_const[a]) + sp.variable(a).scale(w))
        return VectorField(comps)

    def E(self, k: int) -> VectorField:
        """k-th quantum power of E (E^0 = gamma_1, negative powers are 0)."""
        if k < 0:
            return self.zero_field()
        powers = self._g0.powers
        if not powers:
            powers.append(self.basis(0))
        while len(powers) <= k:
            n = len(powers)
            powers.append(self.euler() if n == 1 else self.product(self.euler(), powers[n - 1]))
        return powers[k]

    def delta(self) -> VectorField:
        """Delta = sum_a gamma^a o gamma_a."""
        if self._g0.delta is None:
            self._g0.delta = self.field_sum(self.product(self.dual(a), self.basis(a)) for a in range(self.N))
        return self._g0.delta

    # -- derivatives -----------------------------------------------------------
    def directional(self, v: VectorField, f: TruncatedSeries) -> TruncatedSeries:
        """v(f) = sum_a v^a d_a f."""
        bound = min(v.valid_t, f.valid_t - 1)
        if f.is_zero():
            return self.space.zero().with_valid(bound)
        out = series_sum(self.space, (c * f.deriv(a) for a, c in v.nonzero()))
        return out.with_valid(bound) if out.valid_t > bound else out

    def nabla(self, v: VectorField, w: VectorField) -> VectorField:
        """Covariant derivative of w along v (flat frame)."""
        return VectorField([self.directional(v, c) for c in w.coeffs])

    def bracket(self, v: VectorField, w: VectorField) -> VectorField:
        return self.nabla(v, w) - self.nabla(w, v)

    def derivative_rule_residual(self, g: int, w: VectorField, fields: Sequence[VectorField]) -> TruncatedSeries:
        """W<<V_1..V_k>> - <<W V_1..V_k>> - sum_i <<..nabla_W V_i..>>."""
        fields = list(fields)
        lhs = self.directional(w, self.correlation(g, *fields))
        parts = [lhs, -self.correlation(g, w, *fields)]
        for i in range(len(fields)):
            mod = fields[:i] + [self.nabla(w, fields[i])] + fields[i + 1:]
            parts.append(-self.correlation(g, *mod))
        return series_sum(self.space, parts)

    # -- small helpers used by the identity catalogue --------------------------
    def const(self, c: Scalar) -> TruncatedSeries:
        return self.space.constant(c)

    def total(self, parts: Iterable[TruncatedSeries]) -> TruncatedSeries:
        return series_sum(self.space, parts)

    def pairs(self) -> Iterable[tuple[VectorField, VectorField]]:
        """(gamma_m, gamma^m) for m = 1..N."""
        for m in range(self.N):
            yield self.basis(m), self.dual(m)
