"""Deterministic arithmetic in F_{p^k} and coherent embeddings between subfields.

The algebraic closure of F_p is modelled as the directed union of contexts
FieldCtx(p, k).  Two conventions make every run reproducible:

* the defining modulus of F_{p^k} is the monic irreducible polynomial of
  degree k whose coefficient vector, read as a base-p integer with the
  highest-degree coefficient most significant, is smallest;
* embeddings F_{p^k} -> F_{p^m} are induced by a system of norm-compatible
  distinguished multiplicative generators (one per degree, found by a
  deterministic search), so that embeddings compose along towers.

Characteristic 2 and 3 are rejected: the curve machinery downstream needs
short Weierstrass models.
"""

from __future__ import annotations

import threading
from math import gcd
from typing import Iterator

from .errors import (
    CharTooSmall,
    CompositeP,
    ContextMismatch,
    DivisionByZero,
    NotASubfield,
    SizeExceeded,
    ZeroElement,
)
from ._numutil import factorize, is_prime

_DEFAULT_SIZE_BOUND = 1 << 26
_TABLE_MAX = 1 << 16

_size_bound = _DEFAULT_SIZE_BOUND
_ctx_cache: dict[tuple[int, int], "FieldCtx"] = {}
_cache_lock = threading.Lock()


def set_size_bound(bound: int) -> None:
    """Override the p^k ceiling for context creation and enumeration."""
    global _size_bound
    if bound < 5:
        raise ValueError("size bound must be at least 5")
    _size_bound = bound


def size_bound() -> int:
    return _size_bound


# ---------------------------------------------------------------------------
# bootstrap polynomial kernels over F_p (coefficients as plain int lists,
# constant term first) -- used for modulus search before FieldCtx exists
# ---------------------------------------------------------------------------

def _ip_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _ip_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _ip_rem(prod, m, p)


def _ip_rem(a: list[int], m: list[int], p: int) -> list[int]:
    a = a[:]
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        _ip_trim(a)
        if len(a) - 1 < dm:
            break
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _ip_trim(a)
    return _ip_trim(a)


def _ip_powmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _ip_rem(a[:], m, p)
    while e:
        if e & 1:
            result = _ip_mulmod(result, base, m, p)
        base = _ip_mulmod(base, base, m, p)
        e >>= 1
    return result


def _ip_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = a[:], b[:]
    while b:
        a = _ip_rem(a, b, p)
        a, b = b, a
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    k = len(f) - 1
    if k < 1:
        return False
    if k >= 2:
        for a in range(p):
            acc = 0
            for c in reversed(f):
                acc = (acc * a + c) % p
            if acc == 0:
                return False
    x = [0, 1]
    if _ip_sub(_ip_powmod(x, p**k, f, p), x, p):
        return False
    for r in factorize(k):
        d = _ip_sub(_ip_powmod(x, p ** (k // r), f, p), x, p)
        if _ip_gcd(d, f[:], p) != [1]:
            return False
    return True


# ---------------------------------------------------------------------------
# contexts
# ---------------------------------------------------------------------------

class FieldCtx:
    """The canonical model of F_{p^k}.  Use make_field; do not construct directly.

    Immutable after construction; internal caches are guarded by a lock.
    """

    __slots__ = (
        "p", "k", "q", "modulus", "_red", "_lock", "_tables", "_qm1_factors",
        "_dist_gen", "_frob_rows", "_embed_cache", "_descend_cache",
    )

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        # reduction rows: T^(k+i) mod modulus for i = 0..k-2
        rows = []
        cur = [(-c) % p for c in modulus[:-1]]  # T^k
        rows.append(tuple(cur))
        for _ in range(k - 2):
            nxt = [0] + cur[:-1]
            top = cur[-1]
            if top:
                for idx in range(k):
                    nxt[idx] = (nxt[idx] - top * modulus[idx]) % p
            cur = nxt
            rows.append(tuple(cur))
        self._red = tuple(rows)
        self._lock = threading.RLock()
        self._tables = None
        self._qm1_factors = None
        self._dist_gen = None
        self._frob_rows = None
        self._embed_cache = {}
        self._descend_cache = {}

    # -- element constructors -------------------------------------------------

    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.k)

    def one(self) -> "FieldElement":
        return self.from_int(1)

    def from_int(self, c: int) -> "FieldElement":
        v = [0] * self.k
        v[0] = c % self.p
        return FieldElement(self, tuple(v))

    def from_coeffs(self, coeffs) -> "FieldElement":
        cs = [c % self.p for c in coeffs]
        if len(cs) != self.k:
            raise ValueError("coefficient vector has wrong length")
        return FieldElement(self, tuple(cs))

    def from_encoding(self, n: int) -> "FieldElement":
        p = self.p
        v = []
        for _ in range(self.k):
            n, r = divmod(n, p)
            v.append(r)
        return FieldElement(self, tuple(v))

    def gen(self) -> "FieldElement":
        """The power-basis generator (the class of T); k >= 2 only."""
        if self.k == 1:
            raise ValueError("prime field has no power-basis generator")
        v = [0] * self.k
        v[1] = 1
        return FieldElement(self, tuple(v))

    # -- internals -------------------------------------------------------------

    def _mul_coeffs(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p, k = self.p, self.k
        if k == 1:
            return (a[0] * b[0] % p,)
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        out = [c % p for c in prod[:k]]
        red = self._red
        for i in range(k, 2 * k - 1):
            hi = prod[i] % p
            if hi:
                row = red[i - k]
                for idx in range(k):
                    out[idx] = (out[idx] + hi * row[idx]) % p
        return tuple(out)

    def _inv_coeffs(self, a: tuple[int, ...]) -> tuple[int, ...]:
        p, k = self.p, self.k
        if k == 1:
            if a[0] == 0:
                raise DivisionByZero("inverse of zero")
            return (pow(a[0], p - 2, p),)
        if not any(a):
            raise DivisionByZero("inverse of zero")
        # extended Euclid in F_p[T] against the modulus
        r0, r1 = list(self.modulus), _ip_trim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, r = _ip_divmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _ip_sub(s0, _ip_mul(q, s1, p), p)
        inv_c = pow(r0[0], p - 2, p) if len(r0) == 1 else None
        if inv_c is None:
            raise DivisionByZero("element not invertible (modulus not irreducible?)")
        s0 = [c * inv_c % p for c in s0]
        s0 += [0] * (k - len(s0))
        return tuple(s0[:k])

    def _factors_qm1(self) -> dict[int, int]:
        if self._qm1_factors is None:
            with self._lock:
                if self._qm1_factors is None:
                    self._qm1_factors = factorize(self.q - 1)
        return self._qm1_factors

    def tables(self):
        """Discrete-log tables for small fields (q <= 2^16), else None."""
        if self.q > _TABLE_MAX:
            return None
        if self._tables is None:
            with self._lock:
                if self._tables is None:
                    self._tables = _build_tables(self)
        return self._tables

    def frobenius_rows(self) -> tuple[tuple[int, ...], ...]:
        """Matrix of x -> x^p in the power basis (row i = (g^i)^p)."""
        if self._frob_rows is None:
            with self._lock:
                if self._frob_rows is None:
                    rows = []
                    for i in range(self.k):
                        v = [0] * self.k
                        v[i] = 1
                        e = FieldElement(self, tuple(v)) ** self.p
                        rows.append(e.coeffs)
                    self._frob_rows = tuple(rows)
        return self._frob_rows

    def __repr__(self):
        return f"FieldCtx(p={self.p}, k={self.k})"

    def __reduce__(self):
        return (make_field, (self.p, self.k))


def _ip_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _ip_trim(prod)


def _ip_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        ai = a[i] if i < len(a) else 0
        bi = b[i] if i < len(b) else 0
        out[i] = (ai - bi) % p
    return _ip_trim(out)


def _ip_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = a[:]
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _ip_trim(a)
    return _ip_trim(q), a


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

class FieldElement:
    """An element of F_{p^k} in the power basis of the context modulus."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple[int, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def encoding(self) -> int:
        n = 0
        for c in reversed(self.coeffs):
            n = n * self.ctx.p + c
        return n

    def lift(self) -> int:
        """Integer representative; defined for prime-field elements only."""
        if any(self.coeffs[1:]):
            raise ValueError("element does not lie in the prime field")
        return self.coeffs[0]

    def __add__(self, other: "FieldElement") -> "FieldElement":
        if self.ctx is not other.ctx:
            raise ContextMismatch("elements live in different contexts")
        p = self.ctx.p
        return FieldElement(
            self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        if self.ctx is not other.ctx:
            raise ContextMismatch("elements live in different contexts")
        p = self.ctx.p
        return FieldElement(
            self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        if self.ctx is not other.ctx:
            raise ContextMismatch("elements live in different contexts")
        return FieldElement(self.ctx, self.ctx._mul_coeffs(self.coeffs, other.coeffs))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        if self.ctx is not other.ctx:
            raise ContextMismatch("elements live in different contexts")
        return FieldElement(
            self.ctx, self.ctx._mul_coeffs(self.coeffs, self.ctx._inv_coeffs(other.coeffs))
        )

    def __neg__(self) -> "FieldElement":
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __pow__(self, e: int) -> "FieldElement":
        ctx = self.ctx
        if e < 0:
            return (self ** (-e)).inverse()
        result = ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx._inv_coeffs(self.coeffs))

    def scale(self, c: int) -> "FieldElement":
        p = self.ctx.p
        c %= p
        return FieldElement(self.ctx, tuple(a * c % p for a in self.coeffs))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldElement)
            and self.ctx is other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.k, self.coeffs))

    def __repr__(self):
        if self.ctx.k == 1:
            return f"F{self.ctx.p}({self.coeffs[0]})"
        return f"F{self.ctx.p}^{self.ctx.k}{list(self.coeffs)}"


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def make_field(p: int, k: int) -> FieldCtx:
    """The canonical context for F_{p^k}; idempotent for fixed (p, k)."""
    key = (p, k)
    ctx = _ctx_cache.get(key)
    if ctx is not None:
        return ctx
    if p < 2 or not is_prime(p):
        raise CompositeP(f"{p} is not prime")
    if p < 5:
        raise CharTooSmall("characteristic 2 and 3 are not supported")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if p**k > _size_bound:
        raise SizeExceeded(f"p^k = {p**k} exceeds the size bound {_size_bound}")
    if k == 1:
        modulus = (0, 1)
    else:
        modulus = None
        for n in range(p**k):
            cand = []
            m = n
            for _ in range(k):
                m, r = divmod(m, p)
                cand.append(r)
            cand.append(1)
            if _is_irreducible(cand, p):
                modulus = tuple(cand)
                break
        assert modulus is not None
    with _cache_lock:
        ctx = _ctx_cache.get(key)
        if ctx is None:
            ctx = FieldCtx(p, k, modulus)
            _ctx_cache[key] = ctx
    return ctx


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Field arithmetic dispatcher: op in {'add','sub','mul','div'}."""
    if a.ctx is not b.ctx:
        raise ContextMismatch("elements live in different contexts")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DivisionByZero("division by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def frobenius(x: FieldElement) -> FieldElement:
    """x -> x^p, computed through the cached Frobenius matrix."""
    ctx = x.ctx
    if ctx.k == 1:
        return x
    rows = ctx.frobenius_rows()
    p, k = ctx.p, ctx.k
    out = [0] * k
    for i, ci in enumerate(x.coeffs):
        if ci:
            row = rows[i]
            for idx in range(k):
                out[idx] = (out[idx] + ci * row[idx]) % p
    return FieldElement(ctx, tuple(out))


def multiplicative_order(x: FieldElement) -> int:
    """Least n >= 1 with x^n = 1; divides q - 1."""
    if x.is_zero():
        raise ZeroElement("zero has no multiplicative order")
    ctx = x.ctx
    tables = ctx.tables()
    if tables is not None:
        lg = tables.log[x.encoding()]
        qm1 = ctx.q - 1
        return qm1 // gcd(qm1, lg) if lg else 1
    order = ctx.q - 1
    for prime, mult in ctx._factors_qm1().items():
        for _ in range(mult):
            cand = order // prime
            if (x ** cand) == ctx.one():
                order = cand
            else:
                break
    return order


def enumerate_elements(ctx: FieldCtx) -> Iterator[FieldElement]:
    """All q elements, by ascending base-p encoding."""
    if ctx.q > _size_bound:
        raise SizeExceeded("enumeration beyond the size bound")
    for n in range(ctx.q):
        yield ctx.from_encoding(n)


# ---------------------------------------------------------------------------
# embeddings: norm-compatible distinguished generators
# ---------------------------------------------------------------------------

def _order_is(x: FieldElement, n: int, factors: dict[int, int]) -> bool:
    if x ** n != x.ctx.one():
        return False
    return all(x ** (n // prime) != x.ctx.one() for prime in factors)


def _minpoly_coeffs(x: FieldElement) -> tuple[int, ...]:
    """Minimal polynomial over F_p (int coefficients, constant first, monic)."""
    ctx = x.ctx
    conj = [x]
    y = frobenius(x)
    while y != x:
        conj.append(y)
        y = frobenius(y)
    # product of (T - c) over conjugates, computed with field coefficients
    poly = [ctx.one()]
    for c in conj:
        nxt = [ctx.zero() for _ in range(len(poly) + 1)]
        for i, a in enumerate(poly):
            nxt[i + 1] = nxt[i + 1] + a
            nxt[i] = nxt[i] - a * c
        poly = nxt
    out = []
    for a in poly:
        if any(a.coeffs[1:]):
            raise AssertionError("minimal polynomial coefficient left the prime field")
        out.append(a.coeffs[0])
    return tuple(out)


def distinguished_generator(ctx: FieldCtx) -> FieldElement:
    """The norm-compatible primitive element used to define embeddings.

    For every maximal proper divisor d of k the relative norm power
    xi_k^((q-1)/(p^d-1)) has the same minimal polynomial as xi_d, which
    makes the induced embeddings commute along towers.
    """
    if ctx._dist_gen is not None:
        return ctx._dist_gen
    p, k, q = ctx.p, ctx.k, ctx.q
    constraints = []
    for r in factorize(k):
        d = k // r
        sub = make_field(p, d)
        constraints.append(
            ((q - 1) // (p**d - 1), _minpoly_coeffs(distinguished_generator(sub)))
        )
    factors = ctx._factors_qm1()
    if k == 1:
        found = None
        for n in range(2, p):
            x = ctx.from_int(n)
            if _order_is(x, p - 1, factors):
                found = x
                break
        assert found is not None
    else:
        found = None
        for n in range(1, q):
            x = ctx.from_encoding(n)
            if not _order_is(x, q - 1, factors):
                continue
            if all(_minpoly_coeffs(x ** e) == mp for e, mp in constraints):
                found = x
                break
        if found is None:
            raise AssertionError(f"no compatible generator for {ctx!r}")
    with ctx._lock:
        if ctx._dist_gen is None:
            ctx._dist_gen = found
    return ctx._dist_gen


def _solve_mod_p(matrix: list[list[int]], rhs: list[int], p: int) -> list[int] | None:
    """Solve matrix * x = rhs over F_p (row count >= column count)."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    aug = [matrix[r][:] + [rhs[r] % p] for r in range(rows)]
    piv_cols = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], p - 2, p)
        aug[r] = [v * inv % p for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(vi - f * vr) % p for vi, vr in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i][cols]:
            return None
    x = [0] * cols
    for row_idx, c in enumerate(piv_cols):
        x[c] = aug[row_idx][cols]
    return x


def _embed_rows(src: FieldCtx, tgt: FieldCtx) -> tuple[tuple[int, ...], ...]:
    """Rows of the embedding matrix: row i = image of src generator^i."""
    cached = src._embed_cache.get((tgt.p, tgt.k))
    if cached is not None:
        return cached
    p = src.p
    if src.k == 1:
        rows = (tuple([1] + [0] * (tgt.k - 1)),)
    else:
        xi_s = distinguished_generator(src)
        xi_t = distinguished_generator(tgt)
        image_xi = xi_t ** ((tgt.q - 1) // (src.q - 1))
        # coordinates of the power-basis generator g in the basis {xi_s^i}
        basis = []
        acc = src.one()
        for _ in range(src.k):
            basis.append(acc.coeffs)
            acc = acc * xi_s
        matrix = [[basis[j][i] for j in range(src.k)] for i in range(src.k)]
        g_coords = _solve_mod_p(matrix, list(src.gen().coeffs), p)
        assert g_coords is not None
        img_g = tgt.zero()
        acc = tgt.one()
        for a in g_coords:
            if a:
                img_g = img_g + acc.scale(a)
            acc = acc * image_xi
        # sanity: the image must kill the source modulus
        check = tgt.zero()
        powg = tgt.one()
        for c in src.modulus:
            if c:
                check = check + powg.scale(c)
            powg = powg * img_g
        assert check.is_zero(), "embedding image does not satisfy the source modulus"
        rows_l = []
        acc = tgt.one()
        for _ in range(src.k):
            rows_l.append(acc.coeffs)
            acc = acc * img_g
        rows = tuple(rows_l)
    with src._lock:
        src._embed_cache[(tgt.p, tgt.k)] = rows
    return rows


def embed(x: FieldElement, target: FieldCtx) -> FieldElement:
    """Canonical embedding of x into the target context."""
    src = x.ctx
    if src is target:
        return x
    if src.p != target.p or target.k % src.k != 0:
        raise NotASubfield(f"F_{src.p}^{src.k} does not embed into F_{target.p}^{target.k}")
    rows = _embed_rows(src, target)
    p, kt = target.p, target.k
    out = [0] * kt
    for ci, row in zip(x.coeffs, rows):
        if ci:
            for idx in range(kt):
                out[idx] = (out[idx] + ci * row[idx]) % p
    return FieldElement(target, tuple(out))


def element_degree(x: FieldElement) -> int:
    """Degree of F_p(x) over F_p: the least d | k with x^(p^d) = x."""
    ctx = x.ctx
    for d in sorted(_divisors(ctx.k)):
        y = x
        for _ in range(d):
            y = frobenius(y)
        if y == x:
            return d
    raise AssertionError("unreachable: Frobenius orbit must close")


def descend(x: FieldElement, target: FieldCtx) -> FieldElement:
    """Inverse of embed for elements that lie in the target subfield."""
    src = x.ctx
    if src is target:
        return x
    if src.p != target.p or src.k % target.k != 0:
        raise NotASubfield("target is not a subfield of the element's context")
    rows = _embed_rows(target, src)
    matrix = [[rows[j][i] for j in range(target.k)] for i in range(src.k)]
    coords = _solve_mod_p(matrix, list(x.coeffs), src.p)
    if coords is None:
        raise NotASubfield("element does not lie in the requested subfield")
    return FieldElement(target, tuple(coords))


def minimal_field(x: FieldElement) -> FieldElement:
    """Represent x in the context of its minimal field of definition."""
    d = element_degree(x)
    if d == x.ctx.k:
        return x
    return descend(x, make_field(x.ctx.p, d))


def _divisors(n: int) -> list[int]:
    out = [1]
    for prime, mult in factorize(n).items():
        out = [d * prime**e for d in out for e in range(mult + 1)]
    return sorted(out)


# ---------------------------------------------------------------------------
# discrete-log tables for small fields
# ---------------------------------------------------------------------------

class _Tables:
    __slots__ = ("gen_encoding", "exp", "log", "qm1")

    def __init__(self, gen_encoding, exp, log, qm1):
        self.gen_encoding = gen_encoding
        self.exp = exp
        self.log = log
        self.qm1 = qm1

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def chi(self, a: int) -> int:
        """Quadratic character on encodings: 0, 1, or -1."""
        if a == 0:
            return 0
        return -1 if self.log[a] & 1 else 1


def _build_tables(ctx: FieldCtx) -> _Tables:
    q = ctx.q
    factors = ctx._factors_qm1()
    gen = None
    for n in range(2, q):
        x = ctx.from_encoding(n)
        if not x.is_zero() and _order_is(x, q - 1, factors):
            gen = x
            break
    assert gen is not None
    exp = [0] * (2 * (q - 1))
    log = [0] * q
    acc = ctx.one()
    for i in range(q - 1):
        e = acc.encoding()
        exp[i] = e
        exp[i + q - 1] = e
        log[e] = i
        acc = acc * gen
    return _Tables(gen.encoding(), exp, log, q - 1)
