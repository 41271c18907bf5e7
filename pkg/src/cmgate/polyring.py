"""Polynomial algebra over the ffield contexts.

UniPoly is dense univariate (constant term first); BiPoly is sparse bivariate
keyed by exponent pairs.  Factorization is the classical squarefree /
distinct-degree / equal-degree chain; equal-degree splitting draws its
"random" elements from a deterministic generator keyed by the input, so
every run factors identically.

Bivariate factorization is deliberately not implemented; the only decision
offered is is_absolutely_irreducible, which combines exact pattern rules
(lines, binomials, monomials) with a point-counting test for total degree
up to 3.
"""

from __future__ import annotations

from math import gcd as int_gcd

from . import ffield
from .errors import (
    BothConstantInX,
    ConstantPolynomial,
    ContextMismatch,
    SizeExceeded,
    UnsupportedCurveDegree,
    ZeroPolynomial,
)
from .ffield import FieldCtx, FieldElement, embed, make_field
from ._numutil import crc_rng


class UniPoly:
    """Dense univariate polynomial; coeffs constant-first, trailing zeros trimmed."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @classmethod
    def from_ints(cls, ctx: FieldCtx, ints) -> "UniPoly":
        return cls(ctx, [ctx.from_int(c) for c in ints])

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "UniPoly":
        return cls(ctx, [])

    @classmethod
    def one(cls, ctx: FieldCtx) -> "UniPoly":
        return cls(ctx, [ctx.one()])

    @classmethod
    def x(cls, ctx: FieldCtx) -> "UniPoly":
        return cls(ctx, [ctx.zero(), ctx.one()])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> FieldElement:
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return not self.is_zero() and self.leading() == self.ctx.one()

    def monic(self) -> "UniPoly":
        if self.is_zero():
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        inv = self.leading().inverse()
        return UniPoly(self.ctx, [c * inv for c in self.coeffs])

    def _check(self, other: "UniPoly"):
        if self.ctx is not other.ctx:
            raise ContextMismatch("polynomials live in different contexts")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.ctx.zero()
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return UniPoly(self.ctx, [x + y for x, y in zip(a, b)])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.ctx.zero()
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return UniPoly(self.ctx, [x - y for x, y in zip(a, b)])

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.ctx, [-c for c in self.coeffs])

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.ctx)
        ctx = self.ctx
        out = [ctx.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return UniPoly(ctx, out)

    def scale(self, c: FieldElement) -> "UniPoly":
        return UniPoly(self.ctx, [a * c for a in self.coeffs])

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroPolynomial("division by the zero polynomial")
        ctx = self.ctx
        rem = list(self.coeffs)
        dv = other.degree()
        inv_lead = other.leading().inverse()
        quo = [ctx.zero()] * max(0, len(rem) - dv)
        while len(rem) - 1 >= dv and rem:
            c = rem[-1] * inv_lead
            if not c.is_zero():
                shift = len(rem) - 1 - dv
                quo[shift] = c
                for i, b in enumerate(other.coeffs):
                    rem[shift + i] = rem[shift + i] - c * b
            while rem and rem[-1].is_zero():
                rem.pop()
        return UniPoly(ctx, quo), UniPoly(ctx, rem)

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def divides(self, other: "UniPoly") -> bool:
        """Whether self divides other (self nonzero)."""
        return other.divmod(self)[1].is_zero()

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def derivative(self) -> "UniPoly":
        ctx = self.ctx
        return UniPoly(
            ctx, [self.coeffs[i].scale(i) for i in range(1, len(self.coeffs))]
        )

    def pow_mod(self, e: int, modulus: "UniPoly") -> "UniPoly":
        result = UniPoly.one(self.ctx)
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def evaluate(self, x: FieldElement) -> FieldElement:
        acc = x.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + (c if c.ctx is x.ctx else embed(c, x.ctx))
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """self(inner), both over the same context."""
        self._check(inner)
        acc = UniPoly.zero(self.ctx)
        for c in reversed(self.coeffs):
            acc = acc * inner + UniPoly(self.ctx, [c])
        return acc

    def lift_to(self, target: FieldCtx) -> "UniPoly":
        if target is self.ctx:
            return self
        return UniPoly(target, [embed(c, target) for c in self.coeffs])

    def key(self):
        """Deterministic sort key: degree, then coefficient-lex from the top."""
        return (self.degree(), tuple(c.encoding() for c in reversed(self.coeffs)))

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and self.ctx is other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "UniPoly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                parts.append(f"{list(c.coeffs)}*T^{i}")
        return "UniPoly(" + " + ".join(parts) + ")"


# ---------------------------------------------------------------------------
# factorization
# ---------------------------------------------------------------------------

def _pth_root_poly(f: UniPoly) -> UniPoly:
    """For f with zero derivative, the g with g(T)^p = f(T)."""
    ctx = f.ctx
    p = ctx.p
    root_exp = p ** (ctx.k - 1)  # x -> x^(p^(k-1)) inverts Frobenius
    coeffs = []
    for i in range(0, len(f.coeffs), p):
        coeffs.append(f.coeffs[i] ** root_exp)
    return UniPoly(ctx, coeffs)


def squarefree_decomposition(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Monic squarefree parts with multiplicities; product reproduces f/lc."""
    if f.is_zero():
        raise ZeroPolynomial("cannot decompose the zero polynomial")
    f = f.monic()
    out: list[tuple[UniPoly, int]] = []
    p = f.ctx.p
    e = 1
    while f.degree() > 0:
        d = f.derivative()
        if d.is_zero():
            f = _pth_root_poly(f)
            e *= p
            continue
        g = f.gcd(d)
        w = (f // g).monic()
        i = 1
        while w.degree() > 0:
            y = w.gcd(g)
            z = (w // y).monic()
            if z.degree() > 0:
                out.append((z, i * e))
            w = y
            g = (g // y).monic()
            i += 1
        f = g  # what remains is a p-th power
    return out


def _distinct_degree(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Split squarefree monic f into products of same-degree irreducibles."""
    ctx = f.ctx
    q = ctx.q
    out = []
    h = UniPoly.x(ctx) % f
    x = UniPoly.x(ctx)
    i = 1
    while f.degree() >= 2 * i:
        h = h.pow_mod(q, f)
        g = f.gcd(h - x)
        if g.degree() > 0:
            out.append((g.monic(), i))
            f = (f // g).monic()
            h = h % f
        i += 1
    if f.degree() > 0:
        out.append((f, f.degree()))
    return out


def _equal_degree_split(f: UniPoly, d: int) -> list[UniPoly]:
    """Cantor-Zassenhaus on a squarefree monic product of degree-d irreducibles."""
    if f.degree() == d:
        return [f]
    ctx = f.ctx
    rng = crc_rng("edf", ctx.p, ctx.k, tuple(c.encoding() for c in f.coeffs), d)
    exponent = (ctx.q**d - 1) // 2
    one = UniPoly.one(ctx)
    while True:
        a = UniPoly(
            ctx, [ctx.from_encoding(rng.randrange(ctx.q)) for _ in range(f.degree())]
        )
        if a.is_constant():
            continue
        b = a.pow_mod(exponent, f) - one
        s = f.gcd(b)
        if 0 < s.degree() < f.degree():
            return _equal_degree_split(s.monic(), d) + _equal_degree_split(
                (f // s).monic(), d
            )


def factor_univariate(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Full factorization into monic irreducibles, deterministically ordered."""
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if f.is_constant():
        return []
    out = []
    for part, mult in squarefree_decomposition(f):
        for block, d in _distinct_degree(part):
            for irr in _equal_degree_split(block, d):
                out.append((irr, mult))
    out.sort(key=lambda pair: pair[0].key())
    return out


def roots_in(f: UniPoly, k: int) -> list[FieldElement]:
    """Distinct roots of f lying in F_{p^k}, sorted by encoding."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has every root")
    base = f.ctx
    p = base.p
    work_deg = _lcm(base.k, k)
    target = make_field(p, k)  # raises SizeExceeded beyond the bound
    work = target if work_deg == k else make_field(p, work_deg)
    g = f.lift_to(work)
    if g.degree() < 1:
        return []
    x = UniPoly.x(work)
    xq = x.pow_mod(p**k, g)
    lin = g.gcd(xq - x)  # product of (T - a) over roots a in the F_{p^k} subfield
    roots = []
    if lin.degree() >= 1:
        for factor in _equal_degree_split(lin.monic(), 1):
            root = -factor.coeffs[0]
            roots.append(root if work is target else ffield.descend(root, target))
    roots.sort(key=lambda r: r.encoding())
    return roots


def radical(f: UniPoly) -> UniPoly:
    """Product of the distinct monic irreducible factors of f."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no radical")
    acc = UniPoly.one(f.ctx)
    for part, _ in squarefree_decomposition(f):
        acc = acc * part
    return acc


def radical_divides(f: UniPoly, g: UniPoly) -> bool:
    """True iff every monic irreducible factor of f divides g."""
    if f.is_zero():
        raise ZeroPolynomial("hypothesis quantifies over divisors of a nonzero element")
    if g.is_zero():
        return True
    if f.is_constant():
        return True
    return radical(f).divides(g)


# ---------------------------------------------------------------------------
# bivariate polynomials
# ---------------------------------------------------------------------------

class BiPoly:
    """Sparse bivariate polynomial: {(i, j): nonzero coefficient}."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms):
        clean = {}
        for (i, j), c in dict(terms).items():
            if isinstance(c, int):
                c = ctx.from_int(c)
            if not c.is_zero():
                clean[(int(i), int(j))] = c
        self.ctx = ctx
        self.terms = clean

    @classmethod
    def from_int_terms(cls, ctx: FieldCtx, terms: dict) -> "BiPoly":
        return cls(ctx, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def degree_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def __add__(self, other: "BiPoly") -> "BiPoly":
        if self.ctx is not other.ctx:
            raise ContextMismatch("polynomials live in different contexts")
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key)
            out[key] = c if s is None else s + c
        return BiPoly(self.ctx, out)

    def __neg__(self) -> "BiPoly":
        return BiPoly(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        if self.ctx is not other.ctx:
            raise ContextMismatch("polynomials live in different contexts")
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                prod = c1 * c2
                s = out.get(key)
                out[key] = prod if s is None else s + prod
        return BiPoly(self.ctx, out)

    def scale(self, c: FieldElement) -> "BiPoly":
        return BiPoly(self.ctx, {k: v * c for k, v in self.terms.items()})

    def swap_variables(self) -> "BiPoly":
        return BiPoly(self.ctx, {(j, i): c for (i, j), c in self.terms.items()})

    def coeffs_in_x(self) -> list[UniPoly]:
        """Representation in F_q[Y][X]: list over X-degree of Y-polynomials."""
        ctx = self.ctx
        dx = self.degree_x()
        rows: list[dict] = [dict() for _ in range(dx + 1)]
        for (i, j), c in self.terms.items():
            rows[i][j] = c
        out = []
        for row in rows:
            dy = max(row, default=-1)
            out.append(
                UniPoly(ctx, [row.get(j, ctx.zero()) for j in range(dy + 1)])
            )
        return out

    def substitute_y(self, y: FieldElement) -> UniPoly:
        """Univariate in X after setting Y = y (y in an extension of ctx)."""
        tgt = y.ctx
        dx = self.degree_x()
        acc = [tgt.zero() for _ in range(dx + 1)]
        ypow: dict[int, FieldElement] = {0: tgt.one()}
        maxj = self.degree_y()
        cur = tgt.one()
        for j in range(1, maxj + 1):
            cur = cur * y
            ypow[j] = cur
        for (i, j), c in self.terms.items():
            acc[i] = acc[i] + embed(c, tgt) * ypow[j]
        return UniPoly(tgt, acc)

    def substitute_x(self, x: FieldElement) -> UniPoly:
        return self.swap_variables().substitute_y(x)

    def evaluate(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return self.substitute_y(y).evaluate(x)

    def __eq__(self, other):
        return (
            isinstance(other, BiPoly)
            and self.ctx is other.ctx
            and self.terms == other.terms
        )

    def __repr__(self):
        items = sorted(self.terms.items())
        return "BiPoly(" + ", ".join(f"X^{i}Y^{j}:{list(c.coeffs)}" for (i, j), c in items) + ")"


def eval_bi(f: BiPoly, x: FieldElement, y: FieldElement) -> FieldElement:
    """f(x, y) in the smallest common extension of the three contexts."""
    p = f.ctx.p
    if x.ctx.p != p or y.ctx.p != p:
        raise ContextMismatch("mixed characteristics")
    k = _lcm(_lcm(f.ctx.k, x.ctx.k), y.ctx.k)
    try:
        common = make_field(p, k)
    except SizeExceeded as exc:
        raise ContextMismatch(f"no common extension within the size bound: {exc}")
    return f.evaluate(embed(x, common), embed(y, common))


def _lcm(a: int, b: int) -> int:
    return a * b // int_gcd(a, b)


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------

def _uni_resultant(a: UniPoly, b: UniPoly) -> FieldElement:
    """Resultant of univariate polynomials over a field (Euclidean chain)."""
    ctx = a.ctx
    if a.is_zero() or b.is_zero():
        return ctx.zero()
    if a.degree() == 0:
        return a.coeffs[0] ** b.degree() if b.degree() >= 0 else ctx.one()
    if b.degree() == 0:
        return b.coeffs[0] ** a.degree()
    res = ctx.one()
    while b.degree() > 0:
        r = a % b
        if r.is_zero():
            return ctx.zero()
        da, db, dr = a.degree(), b.degree(), r.degree()
        if (da * db) % 2 == 1:
            res = -res
        res = res * b.leading() ** (da - dr)
        a, b = b, r
    return res * b.coeffs[0] ** a.degree()


def resultant_y_eliminate(f: BiPoly, g: BiPoly) -> UniPoly:
    """Res_X(f, g): the X-eliminated resultant, a polynomial in Y.

    Computed by evaluation at enough Y-values in an extension (avoiding
    zeros of either leading X-coefficient) and Lagrange interpolation back
    to the base context.
    """
    if f.ctx is not g.ctx:
        raise ContextMismatch("polynomials live in different contexts")
    ctx = f.ctx
    m, n = f.degree_x(), g.degree_x()
    if m <= 0 and n <= 0:
        raise BothConstantInX("neither input involves X")
    if f.is_zero() or g.is_zero():
        return UniPoly.zero(ctx)
    if m <= 0:
        # Res_X(c(Y), g) = c(Y)^deg_X(g)
        base = f.coeffs_in_x()[0] if f.terms else UniPoly.zero(ctx)
        out = UniPoly.one(ctx)
        for _ in range(n):
            out = out * base
        return out
    if n <= 0:
        base = g.coeffs_in_x()[0]
        out = UniPoly.one(ctx)
        for _ in range(m):
            out = out * base
        return out
    fy, gy = f.degree_y(), g.degree_y()
    bound = m * gy + n * fy
    lead_f = f.coeffs_in_x()[-1]
    lead_g = g.coeffs_in_x()[-1]
    need = bound + 1
    e = 1
    while ctx.q**e < need + lead_f.degree() + lead_g.degree() + 1:
        e += 1
    big = make_field(ctx.p, ctx.k * e)
    points: list[FieldElement] = []
    values: list[FieldElement] = []
    enc = 0
    lf = lead_f.lift_to(big)
    lg = lead_g.lift_to(big)
    while len(points) < need:
        y = big.from_encoding(enc)
        enc += 1
        if lf.evaluate(y).is_zero() or lg.evaluate(y).is_zero():
            continue
        points.append(y)
        values.append(_uni_resultant(f.substitute_y(y), g.substitute_y(y)))
    res_big = _lagrange(points, values)
    coeffs = []
    for c in res_big.coeffs:
        coeffs.append(ffield.descend(c, ctx))
    return UniPoly(ctx, coeffs)


def _lagrange(xs: list[FieldElement], ys: list[FieldElement]) -> UniPoly:
    ctx = xs[0].ctx
    master = UniPoly.one(ctx)
    for x in xs:
        master = master * UniPoly(ctx, [-x, ctx.one()])
    acc = UniPoly.zero(ctx)
    for x, y in zip(xs, ys):
        if y.is_zero():
            continue
        num = master // UniPoly(ctx, [-x, ctx.one()])
        denom = num.evaluate(x)
        acc = acc + num.scale(y / denom)
    return acc


# ---------------------------------------------------------------------------
# absolute irreducibility
# ---------------------------------------------------------------------------

_COUNTING_MAX_DEGREE = 3


def _strip_monomial(f: BiPoly) -> tuple[int, int, BiPoly]:
    a = min(i for i, _ in f.terms)
    b = min(j for _, j in f.terms)
    if a == 0 and b == 0:
        return 0, 0, f
    return a, b, BiPoly(f.ctx, {(i - a, j - b): c for (i, j), c in f.terms.items()})


def _has_rational_linear_factor(f: BiPoly) -> bool:
    """Scan all monic-normal-form lines over the base field for divisibility."""
    ctx = f.ctx
    # X + bY + c: substitute X = -(bY + c) and check identical vanishing
    for b_enc in range(ctx.q):
        b = ctx.from_encoding(b_enc)
        for c_enc in range(ctx.q):
            c = ctx.from_encoding(c_enc)
            sub = BiPoly(ctx, {(0, 1): -b, (0, 0): -c})
            if _substitute_x_poly(f, sub).is_zero():
                return True
    # Y + c
    for c_enc in range(ctx.q):
        c = ctx.from_encoding(c_enc)
        if f.substitute_y(-c).is_zero():
            return True
    return False


def _substitute_x_poly(f: BiPoly, sub: BiPoly) -> BiPoly:
    """f with X replaced by the given polynomial in Y (Horner in X)."""
    ctx = f.ctx
    rows = f.coeffs_in_x()
    acc = BiPoly(ctx, {})
    for row in reversed(rows):
        acc = acc * sub + BiPoly(ctx, {(0, j): c for j, c in enumerate(row.coeffs)})
    return acc


def _count_points(f: BiPoly, ext_degree: int) -> int:
    """Number of affine F_{q^r}-points on f = 0, by X-sweep and root counting."""
    ctx = f.ctx
    big = make_field(ctx.p, ctx.k * ext_degree)
    f_big = BiPoly(big, {key: embed(c, big) for key, c in f.terms.items()})
    total = 0
    x_poly = UniPoly.x(big)
    for enc in range(big.q):
        x = big.from_encoding(enc)
        fy = f_big.substitute_x(x)
        if fy.is_zero():
            total += big.q
            continue
        if fy.degree() < 1:
            continue
        xq = x_poly.pow_mod(big.q, fy)
        total += fy.gcd(xq - x_poly).degree()
    return total


def is_absolutely_irreducible(f: BiPoly) -> bool:
    """Decide irreducibility over the algebraic closure.

    Exact for: total degree 1, pure monomials, binomials, univariate shapes,
    and any polynomial of total degree <= 3 (pattern rules plus a
    point-counting criterion over a suitable extension).  Raises
    UnsupportedCurveDegree for denser shapes of higher degree.
    """
    if f.is_zero() or f.total_degree() < 1:
        raise ConstantPolynomial("absolute irreducibility needs a nonconstant input")
    d = f.total_degree()
    if d == 1:
        return True
    dx, dy = f.degree_x(), f.degree_y()
    if dx <= 0 or dy <= 0:
        # univariate in one variable: splits over the closure unless linear
        return False
    a, b, core = _strip_monomial(f)
    if a or b:
        # coordinate-line component plus the rest
        return False
    if len(f.terms) == 2:
        (i1, j1), (i2, j2) = f.terms
        return int_gcd(abs(i1 - i2), abs(j1 - j2)) == 1
    if d > _COUNTING_MAX_DEGREE:
        raise UnsupportedCurveDegree(
            f"no decision procedure for dense curves of total degree {d}"
        )
    if _has_rational_linear_factor(f):
        return False
    # counting criterion: an absolutely irreducible plane curve has about q^r
    # points over F_{q^r}; conjugate-factor products concentrate on the
    # pairwise intersections (no rational components remain at degree <= 3)
    # choose r so that conjugate factors stay irrational (s never divides r
    # for s | d) and the field is large enough for the Weil-bound separation
    r = 1
    proper = [s for s in range(2, d + 1) if d % s == 0]
    while True:
        big_enough = f.ctx.q**r >= 32 * ((d - 1) * (d - 2)) ** 2 + 100
        if big_enough and all(r % s for s in proper):
            break
        r += 1
    return _count_points(f, r) > f.ctx.q**r // 2
