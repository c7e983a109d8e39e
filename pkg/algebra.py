"""
Z₂ⁿ-commutative function algebra
=================================

A chart (or the parameter space T of a T-point) carries a GeneratorTable:
an ordered list of named generators, each with a degree in Z₂ⁿ. Degree-γ₀
generators are central coordinates x; all others are graded coordinates ξ.

Sections are modelled by GradedSeries: finite sums

    Σ  c_μ(x) · ξ^μ        (total exponent |μ| ≤ N)

where ξ^μ is a monomial written in table order and c_μ is an exact rational
function of the central generators (a sympy FracField element over QQ).
Odd generators square to zero. Even non-central generators are not
nilpotent, so every series lives in the quotient by monomials of order > N.

Multiplication reorders the concatenated monomial into table order; each
adjacent transposition of generators of degrees a, b contributes
(−1)^⟨a,b⟩.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from sympy.polys.domains import QQ
from sympy.polys.fields import FracField
from sympy.polys.orderings import lex

from errors import (ConfigurationError, DegreeMismatch, InvalidTruncation,
                    TableMismatch, ZeroBody)
from grading import DegreeChain, DegreeVector, Parity, mask_pairing, parity, sign
from sweep import CaseResult, Report, case_rng, run_cases

logger = logging.getLogger(__name__)

Monomial = tuple[int, ...]


# ── Rationals ─────────────────────────────────────────────────────────────────

def to_fraction(value) -> Fraction:
    """Accept int, Fraction, 'p/q' strings and sympy QQ elements."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    num = getattr(value, "numerator", None)
    den = getattr(value, "denominator", None)
    if num is not None and den is not None:
        return Fraction(int(num), int(den))
    raise ConfigurationError(f"not an exact rational: {value!r}")


def fraction_str(value) -> str:
    q = to_fraction(value)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _qq(value):
    q = to_fraction(value)
    return QQ(q.numerator, q.denominator)


# ── Generator table ───────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Generator:
    name: str
    degree: DegreeVector

    @property
    def central(self) -> bool:
        return self.degree.is_zero

    @property
    def odd(self) -> bool:
        return parity(self.degree) is Parity.ODD


class GeneratorTable:
    """
    Ordered generators of one algebra.

    The order is the canonical monomial order and, for a chart, the fill
    order of its label matrix. `label` distinguishes tables that happen to
    share generator names (every chart of one grassmannian names its
    generators x1, xi1_1, … but orders them differently).
    """

    def __init__(self, n: int, generators: Iterable[Generator | tuple[str, DegreeVector]],
                 label: str = ""):
        self.n = n
        self.chain = DegreeChain.for_n(n)
        self.label = label
        gens = tuple(g if isinstance(g, Generator) else Generator(g[0], g[1])
                     for g in generators)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            dupes = sorted({x for x in names if names.count(x) > 1})
            raise ConfigurationError(f"duplicate generator names: {dupes}")
        for g in gens:
            if g.degree.n != n:
                raise ConfigurationError(f"generator {g.name} has degree {g.degree}, expected n={n}")
        self.generators = gens
        self.central = tuple(g for g in gens if g.central)
        self.graded = tuple(g for g in gens if not g.central)
        self.field = FracField(",".join(g.name for g in self.central), QQ, lex)
        self._by_name = {g.name: g for g in gens}
        self._graded_pos = {g.name: i for i, g in enumerate(self.graded)}
        self._central_pos = {g.name: i for i, g in enumerate(self.central)}
        self._masks = tuple(g.degree.mask for g in self.graded)
        self._odd = tuple(i for i, g in enumerate(self.graded) if g.odd)
        self._products: dict[tuple[Monomial, Monomial], tuple[int, Monomial] | None] = {}
        self._key = (n, label, tuple((g.name, g.degree.bits) for g in gens))

    # identity

    def __eq__(self, other) -> bool:
        return isinstance(other, GeneratorTable) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"GeneratorTable({self.label or '?'}: {', '.join(self.names)})"

    def __len__(self) -> int:
        return len(self.generators)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def generator(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise ConfigurationError(f"{name!r} is not a generator of {self!r}") from None

    @property
    def zero_monomial(self) -> Monomial:
        return (0,) * len(self.graded)

    @cached_property
    def odd_positions(self) -> frozenset[int]:
        return frozenset(self._odd)

    # coefficients

    def coerce(self, value):
        """Bring a scalar into this table's coefficient field."""
        if hasattr(value, "field") and hasattr(value, "numer"):
            if value.field is not self.field:
                raise TableMismatch(f"coefficient {value} is not in the field of {self!r}")
            return value
        return self.field(_qq(value))

    def central_symbol(self, name: str):
        return self.field.gens[self._central_pos[name]]

    # monomial calculus

    def unit_monomial(self, name: str) -> Monomial:
        pos = self._graded_pos[name]
        return tuple(1 if i == pos else 0 for i in range(len(self.graded)))

    def monomial_degree_mask(self, mono: Monomial) -> int:
        mask = 0
        for i, e in enumerate(mono):
            if e & 1:
                mask ^= self._masks[i]
        return mask

    def monomial_product(self, a: Monomial, b: Monomial) -> tuple[int, Monomial] | None:
        """
        (sign, a·b in table order), or None when an odd generator repeats.

        Moving every letter of b left past the later letters of a costs
        Σ_j b_j ⟨Σ_{i>j} a_i γ_i, γ_j⟩; the suffix sum is carried as a mask.
        """
        key = (a, b)
        cached = self._products.get(key, False)
        if cached is not False:
            return cached
        exps = tuple(x + y for x, y in zip(a, b))
        result: tuple[int, Monomial] | None
        if any(exps[i] > 1 for i in self._odd):
            result = None
        else:
            flips = 0
            suffix = 0
            for j in range(len(exps) - 1, -1, -1):
                if b[j] & 1 and suffix:
                    flips ^= mask_pairing(suffix, self._masks[j])
                if a[j] & 1:
                    suffix ^= self._masks[j]
            result = (-1 if flips else 1, exps)
        self._products[key] = result
        return result

    def monomial_str(self, mono: Monomial) -> str:
        parts = []
        for g, e in zip(self.graded, mono):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return "*".join(parts)


# ── Graded series ─────────────────────────────────────────────────────────────

def _order(mono: Monomial) -> int:
    return sum(mono)


def _term_key(item):
    mono = item[0]
    return (_order(mono), tuple(-e for e in mono))


class GradedSeries:
    """
    Immutable truncated series over a GeneratorTable.

    `terms` maps graded monomials to nonzero coefficients; monomials above
    the truncation order and monomials with a repeated odd generator are
    dropped on construction.
    """

    __slots__ = ("table", "trunc", "terms")

    def __init__(self, table: GeneratorTable, trunc: int,
                 terms: Mapping[Monomial, object] | None = None):
        if trunc < 1:
            raise ConfigurationError(f"truncation order must be >= 1, got {trunc}")
        clean = {}
        width = len(table.graded)
        odd = table.odd_positions
        for mono, coeff in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != width:
                raise ConfigurationError(f"monomial {mono} does not match {table!r}")
            if _order(mono) > trunc or any(mono[i] > 1 for i in odd):
                continue
            coeff = table.coerce(coeff)
            if coeff:
                clean[mono] = coeff
        self.table = table
        self.trunc = trunc
        self.terms = clean

    @classmethod
    def _raw(cls, table: GeneratorTable, trunc: int, terms: dict) -> GradedSeries:
        """Trusted constructor: monomials already valid, zeros still possible."""
        obj = cls.__new__(cls)
        obj.table = table
        obj.trunc = trunc
        obj.terms = {m: c for m, c in terms.items() if c}
        return obj

    # constructors

    @classmethod
    def zero(cls, table: GeneratorTable, trunc: int) -> GradedSeries:
        return cls(table, trunc)

    @classmethod
    def constant(cls, table: GeneratorTable, trunc: int, value) -> GradedSeries:
        return cls(table, trunc, {table.zero_monomial: value})

    @classmethod
    def one(cls, table: GeneratorTable, trunc: int) -> GradedSeries:
        return cls.constant(table, trunc, 1)

    @classmethod
    def generator(cls, table: GeneratorTable, trunc: int, name: str) -> GradedSeries:
        g = table.generator(name)
        if g.central:
            return cls.constant(table, trunc, table.central_symbol(name))
        return cls(table, trunc, {table.unit_monomial(name): 1})

    # inspection

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=_term_key)

    def coefficient(self, mono: Monomial):
        return self.terms.get(tuple(mono), self.table.field.zero)

    # operators

    def __add__(self, other):
        return add(self, _promote(self, other))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, -_promote(self, other))

    def __rsub__(self, other):
        return add(_promote(self, other), -self)

    def __neg__(self):
        return GradedSeries._raw(self.table, self.trunc, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, GradedSeries):
            return mul(self, other)
        return scale(self, other)

    def __rmul__(self, other):
        # scalars are degree γ₀, hence central
        return scale(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSeries):
            if isinstance(other, (int, Fraction)):
                other = GradedSeries.constant(self.table, self.trunc, other)
            else:
                return NotImplemented
        if self.table != other.table or self.trunc != other.trunc:
            return False
        return add(self, -other).is_zero

    __hash__ = None

    def __repr__(self) -> str:
        return f"GradedSeries({series_str(self)}; N={self.trunc})"

    # JSON

    def to_json(self) -> dict:
        names = [g.name for g in self.table.graded]
        terms = []
        for mono, coeff in self.sorted_terms():
            terms.append({
                "mono": [[names[i], e] for i, e in enumerate(mono) if e],
                "coeff": {"num": _poly_to_json(coeff.numer, self.table),
                          "den": _poly_to_json(coeff.denom, self.table)},
            })
        return {"trunc": self.trunc, "terms": terms}

    @classmethod
    def from_json(cls, data: Mapping, table: GeneratorTable) -> GradedSeries:
        trunc = int(data["trunc"])
        terms: dict[Monomial, object] = {}
        for term in data.get("terms", []):
            exps = list(table.zero_monomial)
            for name, e in term["mono"]:
                g = table.generator(name)
                if g.central:
                    raise ConfigurationError(f"central generator {name} inside a monomial")
                exps[table._graded_pos[name]] += int(e)
            num = _poly_from_json(term["coeff"]["num"], table)
            den = _poly_from_json(term["coeff"]["den"], table)
            mono = tuple(exps)
            terms[mono] = terms.get(mono, table.field.zero) + num / den
        return cls(table, trunc, terms)


def _promote(f: GradedSeries, other) -> GradedSeries:
    if isinstance(other, GradedSeries):
        return other
    return GradedSeries.constant(f.table, f.trunc, other)


def _poly_to_json(poly, table: GeneratorTable) -> list:
    names = [g.name for g in table.central]
    out = []
    for monom, coeff in sorted(poly.terms()):
        out.append([[[names[i], e] for i, e in enumerate(monom) if e], fraction_str(coeff)])
    return out


def _poly_from_json(data: Sequence, table: GeneratorTable):
    total = table.field.zero
    for mono, coeff in data:
        term = table.field(_qq(coeff))
        for name, e in mono:
            term = term * table.central_symbol(name) ** int(e)
        total = total + term
    return total


def series_str(f: GradedSeries) -> str:
    if f.is_zero:
        return "0"
    parts = []
    for mono, coeff in f.sorted_terms():
        mono_s = f.table.monomial_str(mono)
        coeff_s = str(coeff)
        if not mono_s:
            parts.append(coeff_s)
        elif coeff == 1:
            parts.append(mono_s)
        elif coeff == -1:
            parts.append(f"-{mono_s}")
        else:
            parts.append(f"({coeff_s})*{mono_s}")
    return " + ".join(parts).replace("+ -", "- ")


# ── Ring operations ───────────────────────────────────────────────────────────

def _check_compatible(f: GradedSeries, g: GradedSeries) -> None:
    if f.table != g.table:
        raise TableMismatch(f"series over different tables: {f.table!r} vs {g.table!r}")
    if f.trunc != g.trunc:
        raise TableMismatch(f"truncation mismatch: N={f.trunc} vs N={g.trunc}")


def add(f: GradedSeries, g: GradedSeries) -> GradedSeries:
    _check_compatible(f, g)
    out = dict(f.terms)
    for mono, c in g.terms.items():
        acc = out.get(mono)
        out[mono] = c if acc is None else acc + c
    return GradedSeries._raw(f.table, f.trunc, out)


def scale(f: GradedSeries, value) -> GradedSeries:
    c = f.table.coerce(value)
    if not c:
        return GradedSeries.zero(f.table, f.trunc)
    return GradedSeries._raw(f.table, f.trunc, {m: c * v for m, v in f.terms.items()})


def mul(f: GradedSeries, g: GradedSeries) -> GradedSeries:
    """Product with Koszul signs, truncated at N."""
    _check_compatible(f, g)
    table, trunc = f.table, f.trunc
    if f.is_zero or g.is_zero:
        return GradedSeries.zero(table, trunc)
    by_order: dict[int, list] = {}
    for mono, c in g.terms.items():
        by_order.setdefault(_order(mono), []).append((mono, c))
    out: dict[Monomial, object] = {}
    for ma, ca in f.terms.items():
        room = trunc - _order(ma)
        for ob in range(room + 1):
            for mb, cb in by_order.get(ob, ()):
                prod = table.monomial_product(ma, mb)
                if prod is None:
                    continue
                s, mc = prod
                c = ca * cb if s > 0 else -(ca * cb)
                acc = out.get(mc)
                out[mc] = c if acc is None else acc + c
    return GradedSeries._raw(table, trunc, out)


def body(f: GradedSeries):
    """Coefficient of the empty monomial: ev_x(f) as a rational function."""
    return f.coefficient(f.table.zero_monomial)


def invert(f: GradedSeries) -> GradedSeries:
    """
    Inverse in the truncated ring.

    With b = body(f) and h = f − b, f⁻¹ = b⁻¹ Σ_{k=0..N} (−h/b)^k; h has
    no constant term, so the sum is exact modulo order N + 1.
    """
    b = body(f)
    if not b:
        raise ZeroBody(f"cannot invert {series_str(f)}: body is zero")
    b_inv = 1 / b
    table, trunc = f.table, f.trunc
    u = GradedSeries._raw(table, trunc,
                          {m: -c * b_inv for m, c in f.terms.items() if any(m)})
    total = GradedSeries.one(table, trunc)
    power = total
    for _ in range(trunc):
        power = mul(power, u)
        if power.is_zero:
            break
        total = add(total, power)
    return scale(total, b_inv)


def truncate(f: GradedSeries, order: int) -> GradedSeries:
    """Projection to the quotient by monomials of order > `order`."""
    if order > f.trunc:
        raise InvalidTruncation(f"cannot raise truncation from N={f.trunc} to {order}")
    if order < 1:
        raise InvalidTruncation(f"truncation order must be >= 1, got {order}")
    return GradedSeries._raw(f.table, order,
                             {m: c for m, c in f.terms.items() if _order(m) <= order})


def degree_of(f: GradedSeries) -> DegreeVector | None:
    """Common degree of every monomial; γ₀ for zero; None when inhomogeneous."""
    table = f.table
    masks = {table.monomial_degree_mask(m) for m in f.terms}
    if not masks:
        return table.chain.zero
    if len(masks) > 1:
        return None
    return DegreeVector.from_mask(masks.pop(), table.n)


def is_homogeneous_of(f: GradedSeries, degree: DegreeVector) -> bool:
    return f.is_zero or degree_of(f) == degree


def evaluate(f: GradedSeries, point: Mapping[str, object]) -> Fraction:
    """ev_x: the body evaluated at rational values of the central generators."""
    b = body(f)
    names = [g.name for g in f.table.central]
    missing = [n for n in names if n not in point]
    if missing:
        raise ConfigurationError(f"no value given for central generators {missing}")
    values = [_qq(point[n]) for n in names]

    def _at(poly):
        # a ring without generators cannot be called
        return poly(*values) if values else poly.LC

    den = _at(b.denom)
    if not den:
        raise ZeroBody(f"body {b} has a pole at {dict(zip(names, map(fraction_str, values)))}")
    return to_fraction(_at(b.numer)) / to_fraction(den)


# ── Substitution ──────────────────────────────────────────────────────────────

class _Substitution:
    """Caches powers, monomial images and coefficient images for one substitution."""

    def __init__(self, source: GeneratorTable, images: Mapping[str, GradedSeries],
                 table: GeneratorTable, trunc: int):
        self.source = source
        self.table = table
        self.trunc = trunc
        self.graded = [images[g.name] for g in source.graded]
        self.central = [images[g.name] for g in source.central]
        self._central_powers: list[list[GradedSeries]] = [
            [GradedSeries.one(table, trunc)] for _ in self.central]
        self._monomials: dict[Monomial, GradedSeries] = {
            source.zero_monomial: GradedSeries.one(table, trunc)}
        self._polys: dict = {}
        self._coeffs: dict = {}

    def _central_power(self, i: int, e: int) -> GradedSeries:
        powers = self._central_powers[i]
        while len(powers) <= e:
            powers.append(mul(powers[-1], self.central[i]))
        return powers[e]

    def monomial(self, mono: Monomial) -> GradedSeries:
        cached = self._monomials.get(mono)
        if cached is not None:
            return cached
        last = max(i for i, e in enumerate(mono) if e)
        prev = list(mono)
        prev[last] -= 1
        image = mul(self.monomial(tuple(prev)), self.graded[last])
        self._monomials[mono] = image
        return image

    def polynomial(self, poly) -> GradedSeries:
        cached = self._polys.get(poly)
        if cached is not None:
            return cached
        total = GradedSeries.zero(self.table, self.trunc)
        for monom, coeff in poly.terms():
            term = GradedSeries.constant(self.table, self.trunc, to_fraction(coeff))
            for i, e in enumerate(monom):
                if e:
                    term = mul(term, self._central_power(i, e))
            total = add(total, term)
        self._polys[poly] = total
        return total

    def coefficient(self, coeff) -> GradedSeries:
        cached = self._coeffs.get(coeff)
        if cached is not None:
            return cached
        num = self.polynomial(coeff.numer)
        if coeff.denom.is_ground:
            image = scale(num, Fraction(1) / to_fraction(coeff.denom.LC))
        else:
            den = self.polynomial(coeff.denom)
            if not body(den):
                raise ZeroBody(f"denominator {coeff.denom} has zero body after substitution")
            image = mul(num, invert(den))
        self._coeffs[coeff] = image
        return image


def substitute(f: GradedSeries, images: Mapping[str, GradedSeries],
               target: GeneratorTable | None = None) -> GradedSeries:
    """
    Apply the algebra map sending each generator of f's table to its image.

    Images must be homogeneous of their generator's degree (zero is allowed)
    and share one target table. Coefficients p(x)/q(x) become
    p(images)·q(images)⁻¹.
    """
    source = f.table
    missing = [name for name in source.names if name not in images]
    if missing:
        raise ConfigurationError(f"no image for generators {missing}")
    used = [images[name] for name in source.names]
    targets = {(s.table, s.trunc) for s in used}
    if len(targets) > 1:
        raise TableMismatch("substitution images live over different tables")
    if targets:
        table, trunc = targets.pop()
        if target is not None and target != table:
            raise TableMismatch(f"images live over {table!r}, expected {target!r}")
    elif target is not None:
        table, trunc = target, f.trunc
    else:
        raise ConfigurationError("empty substitution needs an explicit target table")
    for g in source.generators:
        if not is_homogeneous_of(images[g.name], g.degree):
            raise DegreeMismatch(
                f"image of {g.name} has degree {degree_of(images[g.name])}, expected {g.degree}")

    ctx = _Substitution(source, images, table, trunc)
    total = GradedSeries.zero(table, trunc)
    for mono, coeff in f.sorted_terms():
        term = ctx.monomial(mono)
        if term.is_zero:
            continue
        total = add(total, mul(ctx.coefficient(coeff), term))
    return total


def identity_images(table: GeneratorTable, trunc: int) -> dict[str, GradedSeries]:
    return {name: GradedSeries.generator(table, trunc, name) for name in table.names}


# ── Randomized law sweep ──────────────────────────────────────────────────────

ALGEBRA_LAWS = ("associativity", "unit", "graded_commutativity", "body_homomorphism",
                "inverse", "substitution_homomorphism", "truncation_consistency")


def law_table(n: int, central: int, graded: int) -> GeneratorTable:
    """Test algebra: `central` coordinates y_c plus `graded` generators per nonzero degree."""
    chain = DegreeChain.for_n(n)
    gens = [(f"y{c}", chain.zero) for c in range(1, central + 1)]
    for t in range(1, len(chain)):
        gens += [(f"z{t}_{c}", chain[t]) for c in range(1, graded + 1)]
    return GeneratorTable(n, gens, label="laws")


def check_law_case(law: str, *, seed: int, checks: int, n: int, central: int,
                   graded: int, trunc: int, sampling):
    """Run `checks` seeded instances of one algebraic law."""
    import sampling as sampling_mod  # sampling imports this module

    rng = case_rng(seed, "algebra", law)
    table = law_table(n, central, graded)
    chain = table.chain

    def rand(degree=None, body=True):
        if degree is None:
            degree = chain[rng.randrange(len(chain))]
        return sampling_mod.random_series(rng, table, trunc, degree, sampling, with_body=body)

    def rand_inhomogeneous():
        total = GradedSeries.zero(table, trunc)
        for _ in range(2):
            total = total + rand()
        return total

    ran = 0
    for i in range(checks):
        if law == "associativity":
            f, g, h = rand_inhomogeneous(), rand_inhomogeneous(), rand_inhomogeneous()
            lhs, rhs = mul(mul(f, g), h), mul(f, mul(g, h))
        elif law == "unit":
            f = rand_inhomogeneous()
            one = GradedSeries.one(table, trunc)
            lhs, rhs = mul(one, f), f
            if lhs == rhs:
                lhs, rhs = mul(f, one), f
        elif law == "graded_commutativity":
            f, g = rand(), rand()
            lhs = mul(f, g)
            rhs = scale(mul(g, f), sign(degree_of(f), degree_of(g)))
        elif law == "body_homomorphism":
            f, g = rand_inhomogeneous(), rand_inhomogeneous()
            if rng.random() < 0.5:
                lhs = GradedSeries.constant(table, trunc, body(mul(f, g)))
                rhs = GradedSeries.constant(table, trunc, body(f) * body(g))
            else:
                lhs = GradedSeries.constant(table, trunc, body(add(f, g)))
                rhs = GradedSeries.constant(table, trunc, body(f) + body(g))
        elif law == "inverse":
            f = rand(chain.zero) + GradedSeries.constant(
                table, trunc, sampling_mod.random_coefficient(rng, sampling, nonzero=True))
            if not body(f):
                continue
            lhs, rhs = mul(f, invert(f)), GradedSeries.one(table, trunc)
        elif law == "substitution_homomorphism":
            images = sampling_mod.random_images(rng, table, table, trunc, sampling)
            f, g = rand_inhomogeneous(), rand_inhomogeneous()
            if rng.random() < 0.5:
                lhs = substitute(mul(f, g), images)
                rhs = mul(substitute(f, images), substitute(g, images))
            else:
                lhs = substitute(add(f, g), images)
                rhs = add(substitute(f, images), substitute(g, images))
        elif law == "truncation_consistency":
            f, g = rand_inhomogeneous(), rand_inhomogeneous()
            order = rng.randint(1, trunc)
            lhs = truncate(mul(f, g), order)
            rhs = truncate(mul(truncate(f, order), truncate(g, order)), order)
        else:
            raise ConfigurationError(f"unknown algebra law {law!r}")
        ran += 1
        if lhs != rhs:
            logger.debug("law %s failed on check %d", law, i)
            return CaseResult(key=[law], passed=False, detail={"check": i},
                              residual=add(lhs, -rhs).to_json())
    if checks and not ran:
        return CaseResult(key=[law], passed=True, skipped=True,
                          detail={"reason": "no instance with invertible body"})
    return CaseResult(key=[law], passed=True, detail={"checks": ran, "drawn": checks})


def verify_algebra_laws(checks: int, seed: int, n: int, central: int, graded: int,
                        trunc: int, sampling, workers: int = 1):
    """Seeded sweep of the ring laws of the truncated graded algebra."""
    results = run_cases("algebra", check_law_case, [(law,) for law in ALGEBRA_LAWS],
                        workers=workers, unpack=True, seed=seed, checks=checks, n=n,
                        central=central, graded=graded, trunc=trunc, sampling=sampling)
    return Report(suite="algebra",
                  params={"checks": checks, "seed": seed, "n": n, "central": central,
                          "graded": graded, "trunc": trunc},
                  cases=results)
