"""Endomorphism rings of ordinary curves via isogeny volcanoes, with a
Hilbert-class-polynomial cross-check; Frobenius CM invariance; geometric
isogeny testing.

The central operation is endo_discriminant.  Provider A walks the
l-isogeny volcanoes below the Frobenius conductor (non-backtracking BFS to
the floor; a vertex strictly above the floor has all l+1 neighbours
rational, the floor has exactly one, and j = 0 / 1728 are always on the
crater since their endomorphism rings are maximal).  Provider B locates j
among the roots of the class polynomial built independently in classpoly;
disagreement aborts with ProviderDisagreement, never a guess.
"""

from __future__ import annotations

import os
import threading

from . import ecurve, ffield, polyring
from .errors import (
    ProviderDisagreement,
    SizeExceeded,
    SupersingularInput,
    UnsupportedLevel,
)
from .ffield import FieldCtx, FieldElement, make_field
from .polyring import BiPoly, UniPoly
from ._numutil import factorize

#: provider B runs automatically when the class-polynomial root field has
#: at most this many elements (beyond it, only on explicit request)
HILBERT_AUTO_MAX_Q = 4096


class CMOrder:
    """Imaginary quadratic order: discriminant D = f^2 * d_K."""

    __slots__ = ("d_K", "f", "D")

    def __init__(self, d_K: int, f: int):
        if d_K >= 0 or d_K % 4 not in (0, 1):
            raise ValueError(f"{d_K} is not a negative discriminant")
        if not _is_fundamental(d_K):
            raise ValueError(f"{d_K} is not fundamental")
        if f < 1:
            raise ValueError("conductor must be positive")
        self.d_K = d_K
        self.f = f
        self.D = f * f * d_K

    def __eq__(self, other):
        return isinstance(other, CMOrder) and self.D == other.D

    def __hash__(self):
        return hash(self.D)

    def __repr__(self):
        return f"CMOrder(D={self.D}, d_K={self.d_K}, f={self.f})"


def _is_fundamental(d: int) -> bool:
    if d % 4 == 1:
        return _squarefree(-d)
    if d % 4 == 0:
        m = d // 4
        return _squarefree(-m) and (-m) % 4 in (1, 2)
    return False


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


def split_discriminant(d: int) -> tuple[int, int]:
    """Write a discriminant d < 0 as f^2 * d_K with d_K fundamental."""
    if d >= 0 or d % 4 not in (0, 1):
        raise ValueError(f"{d} is not a negative discriminant")
    n = -d
    sq = 1
    for prime, e in factorize(n).items():
        sq *= prime ** (e // 2)
    m = -(n // (sq * sq))  # squarefree, negative
    if m % 4 == 1:
        return m, sq
    assert sq % 2 == 0, "discriminant congruence forces an even square part"
    return 4 * m, sq // 2


def cm_order_from_disc(D: int) -> CMOrder:
    d_K, f = split_discriminant(D)
    return CMOrder(d_K, f)


# ---------------------------------------------------------------------------
# modular polynomials
# ---------------------------------------------------------------------------

class ModularPolynomial:
    """Integer-coefficient classical modular polynomial of prime level."""

    __slots__ = ("level", "terms")

    def __init__(self, level: int, terms: dict[tuple[int, int], int]):
        deg = level + 1
        if max(i for i, _ in terms) != deg or max(j for _, j in terms) != deg:
            raise ValueError(f"phi_{level} data has the wrong degree")
        for (i, j), c in terms.items():
            if terms.get((j, i)) != c:
                raise ValueError(f"phi_{level} data is not symmetric at {(i, j)}")
        self.level = level
        self.terms = terms

    def __repr__(self):
        return f"ModularPolynomial(level={self.level}, terms={len(self.terms)})"


_DATA_DIR_DEFAULT = os.path.join(os.path.dirname(__file__), "data")
_phi_cache: dict[tuple[str, int], ModularPolynomial] = {}
_phi_mod_cache: dict[tuple[str, int, int], BiPoly] = {}
_phi_lock = threading.Lock()


def _data_dir() -> str:
    return os.environ.get("CMGATE_DATA_DIR", _DATA_DIR_DEFAULT)


def supported_levels() -> tuple[int, ...]:
    out = []
    try:
        for name in os.listdir(_data_dir()):
            if name.startswith("phi_") and name.endswith(".txt"):
                try:
                    out.append(int(name[4:-4]))
                except ValueError:
                    continue
    except FileNotFoundError:
        pass
    return tuple(sorted(out))


def modular_polynomial(level: int) -> ModularPolynomial:
    """The vendored classical modular polynomial of the given prime level."""
    key = (_data_dir(), level)
    with _phi_lock:
        cached = _phi_cache.get(key)
    if cached is not None:
        return cached
    path = os.path.join(_data_dir(), f"phi_{level}.txt")
    if not os.path.exists(path):
        raise UnsupportedLevel(
            f"no modular polynomial data for level {level}; add phi_{level}.txt "
            f"to {_data_dir()} to extend the supported set {supported_levels()}"
        )
    terms: dict[tuple[int, int], int] = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            i_s, j_s, c_s = line.split()
            terms[(int(i_s), int(j_s))] = int(c_s)
    phi = ModularPolynomial(level, terms)
    with _phi_lock:
        _phi_cache[key] = phi
    return phi


def phi_reduced(level: int, p: int) -> BiPoly:
    """Phi_level with coefficients reduced into F_p."""
    key = (_data_dir(), level, p)
    with _phi_lock:
        cached = _phi_mod_cache.get(key)
    if cached is not None:
        return cached
    phi = modular_polynomial(level)
    ctx = make_field(p, 1)
    reduced = BiPoly(ctx, {k: ctx.from_int(c) for k, c in phi.terms.items()})
    with _phi_lock:
        _phi_mod_cache[key] = reduced
    return reduced


def phi_at_j(level: int, j: FieldElement) -> UniPoly:
    """Phi_level(j, T) as a univariate polynomial over j's context."""
    p = j.ctx.p
    if level == p:
        raise UnsupportedLevel("level equal to the characteristic")
    return phi_reduced(level, p).substitute_x(j)


def isogenous_neighbors(j: FieldElement, level: int) -> list[tuple[FieldElement, int]]:
    """Roots of Phi_level(j, T) with multiplicity, each in its minimal field."""
    poly = phi_at_j(level, j)
    out = []
    for factor, mult in polyring.factor_univariate(poly):
        target_deg = j.ctx.k * factor.degree()
        target = make_field(j.ctx.p, target_deg)  # SizeExceeded if too big
        for root in polyring.roots_in(factor, target_deg):
            out.append((ffield.minimal_field(root), mult))
    return out


# ---------------------------------------------------------------------------
# volcano navigation
# ---------------------------------------------------------------------------

_neighbor_cache: dict[tuple[int, int, int, int], tuple[int, tuple]] = {}


def _neighbor_data(j: FieldElement, level: int) -> tuple[int, tuple]:
    """(multiplicity-counted rational root total, tuple of distinct roots)."""
    key = (j.ctx.p, j.ctx.k, j.encoding(), level)
    cached = _neighbor_cache.get(key)
    if cached is not None:
        return cached
    poly = phi_at_j(level, j)
    total = 0
    roots: list[FieldElement] = []
    for factor, mult in polyring.factor_univariate(poly):
        if factor.degree() == 1:
            total += mult
            roots.append(-factor.coeffs[0])
    roots.sort(key=lambda r: r.encoding())
    data = (total, tuple(roots))
    _neighbor_cache[key] = data
    return data


def _rational_neighbor_count(j: FieldElement, level: int) -> int:
    return _neighbor_data(j, level)[0]


def _rational_neighbors(j: FieldElement, level: int) -> tuple[FieldElement, ...]:
    return _neighbor_data(j, level)[1]


def _is_exceptional(j: FieldElement) -> bool:
    return j.is_zero() or j == j.ctx.from_int(1728)


def volcano_level(j: FieldElement, level: int) -> tuple[int, int]:
    """(level, depth) of j in its l-volcano: the l-valuations of the
    conductors of End(E_j) and Z[pi] respectively."""
    j = ffield.minimal_field(j)
    fd = ecurve.trace_of_j(j)
    if fd.t % j.ctx.p == 0:
        raise SupersingularInput("volcano structure is an ordinary notion")
    _, f_pi = split_discriminant(fd.d_pi)
    depth = 0
    f = f_pi
    while f % level == 0:
        depth += 1
        f //= level
    if depth == 0:
        return (0, 0)
    if level not in supported_levels():
        raise UnsupportedLevel(f"no data for level {level}")
    if _is_exceptional(j):
        return (0, depth)  # End(E_0), End(E_1728) are maximal orders
    # BFS distance to the floor; each edge changes the level by at most one,
    # so the shortest distance to a floor vertex is exactly depth - level
    frontier = [j]
    seen = {j.encoding()}
    dist = 0
    while dist <= depth:
        nxt = []
        for v in frontier:
            if not _is_exceptional(v) and _rational_neighbor_count(v, level) <= 1:
                return (depth - dist, depth)
            for w in _rational_neighbors(v, level):
                if w.encoding() not in seen:
                    seen.add(w.encoding())
                    nxt.append(w)
        frontier = nxt
        dist += 1
    raise AssertionError("volcano walk exceeded its depth bound")


# ---------------------------------------------------------------------------
# endomorphism discriminants (dual provider)
# ---------------------------------------------------------------------------

_disc_cache: dict[tuple[int, int, int], object] = {}


def provider_a_disc(j: FieldElement) -> CMOrder:
    """Volcano-based endomorphism discriminant of an ordinary j."""
    j = ffield.minimal_field(j)
    key = (j.ctx.p, j.ctx.k, j.encoding())
    cached = _disc_cache.get(key)
    if cached is not None:
        if isinstance(cached, Exception):
            raise cached
        return cached
    try:
        order = _provider_a_uncached(j)
    except (SupersingularInput, UnsupportedLevel) as exc:
        _disc_cache[key] = exc
        raise
    _disc_cache[key] = order
    return order


def _provider_a_uncached(j: FieldElement) -> CMOrder:
    fd = ecurve.trace_of_j(j)
    if fd.t % j.ctx.p == 0:
        raise SupersingularInput("supersingular j-invariants have no CM order here")
    d_K, f_pi = split_discriminant(fd.d_pi)
    if _is_exceptional(j):
        order = CMOrder(d_K, 1)
        assert order.D == d_K
        return order
    levels = supported_levels()
    f_E = 1
    for prime, mult in sorted(factorize(f_pi).items()):
        if prime not in levels:
            raise UnsupportedLevel(
                f"Frobenius conductor has prime factor {prime} outside {levels}"
            )
        lam, depth = volcano_level(j, prime)
        assert depth == mult
        f_E *= prime**lam
    return CMOrder(d_K, f_E)


def endo_discriminant(j: FieldElement, hilbert_check: str | bool = "auto") -> CMOrder:
    """Discriminant of End(E_j) over the closure, for ordinary j.

    Provider A (volcano walk) computes the answer; provider B confirms that
    j is a root of the class polynomial of the claimed discriminant.  With
    hilbert_check="auto" the confirmation runs when the class-polynomial
    root field is small enough (HILBERT_AUTO_MAX_Q); True forces it, False
    skips it.  Disagreement raises ProviderDisagreement.
    """
    j = ffield.minimal_field(j)
    order = provider_a_disc(j)
    if hilbert_check is False:
        return order
    from . import classpoly  # deferred: classpoly builds on this module

    p = j.ctx.p
    if hilbert_check == "auto":
        m = classpoly.class_order_of_p(order.D, p, max_q=HILBERT_AUTO_MAX_Q)
        if m is None:
            return order
    value = classpoly.hilbert_eval(order.D, j)
    if not value.is_zero():
        raise ProviderDisagreement(
            f"volcano provider claims D={order.D} for j with encoding "
            f"{j.encoding()} over F_{p}^{j.ctx.k}, but H_D(j) != 0"
        )
    return order


def frobenius_cm_check(j: FieldElement, hilbert_check: str | bool = "auto") -> bool:
    """Prop-3.1 sentinel: the CM order is Frobenius-invariant.

    Always true mathematically; a False return is a falsification signal.
    """
    d1 = endo_discriminant(j, hilbert_check)
    d2 = endo_discriminant(ffield.frobenius(j), hilbert_check)
    return d1 == d2


# ---------------------------------------------------------------------------
# geometric isogeny
# ---------------------------------------------------------------------------

class IsogenyVerdict:
    __slots__ = ("isogenous", "reason", "path")

    def __init__(self, isogenous: bool, reason: str, path=None):
        self.isogenous = isogenous
        self.reason = reason
        self.path = path

    def __bool__(self):
        return self.isogenous

    def __repr__(self):
        return f"IsogenyVerdict({self.isogenous}, {self.reason!r})"


def geometrically_isogenous(j1: FieldElement, j2: FieldElement) -> IsogenyVerdict:
    """Whether E_{j1} and E_{j2} are isogenous over the algebraic closure.

    Both supersingular: isogenous.  Mixed: not.  Both ordinary: isogenous
    exactly when the endomorphism algebras agree, i.e. equal fundamental
    discriminants; when the full discriminants agree, an explicit
    horizontal path is attempted as a witness.
    """
    s1 = ecurve.is_supersingular_j(j1)
    s2 = ecurve.is_supersingular_j(j2)
    if s1 and s2:
        return IsogenyVerdict(True, "both supersingular")
    if s1 != s2:
        return IsogenyVerdict(False, "mixed supersingular/ordinary pair")
    o1 = endo_discriminant(j1, hilbert_check=False)
    o2 = endo_discriminant(j2, hilbert_check=False)
    if o1.d_K != o2.d_K:
        return IsogenyVerdict(
            False, f"distinct endomorphism algebras ({o1.d_K} vs {o2.d_K})"
        )
    path = None
    if o1.D == o2.D:
        try:
            path = isogeny_path(j1, j2, supported_levels())
        except (UnsupportedLevel, SizeExceeded):
            path = None
    return IsogenyVerdict(True, f"shared endomorphism algebra (d_K={o1.d_K})", path)


def isogeny_path(
    j1: FieldElement, j2: FieldElement, levels
) -> list[tuple[int, FieldElement]] | None:
    """Breadth-first horizontal path from j1 to j2 through same-order vertices.

    Returns the list of (level, vertex) steps, or None when the explored
    component (bounded by the class number) does not reach j2.
    """
    order = endo_discriminant(j1, hilbert_check=False)
    other = endo_discriminant(j2, hilbert_check=False)
    if order.D != other.D:
        raise ValueError("isogeny_path requires equal endomorphism discriminants")
    j1 = ffield.minimal_field(j1)
    j2 = ffield.minimal_field(j2)
    if j1.ctx.k != j2.ctx.k:
        return None
    if j1 == j2:
        return []
    from . import classpoly

    p = j1.ctx.p
    levels = [l for l in levels if l != p]
    bound = classpoly.class_number(order.D)
    frontier = [(j1, [])]
    seen = {j1.encoding()}
    while frontier and len(seen) <= bound:
        nxt = []
        for v, trail in frontier:
            for level in levels:
                for w in _rational_neighbors(v, level):
                    if w.encoding() in seen:
                        continue
                    try:
                        if provider_a_disc(w).D != order.D:
                            continue
                    except (SupersingularInput, UnsupportedLevel):
                        continue
                    step = trail + [(level, w)]
                    if w == j2:
                        return step
                    seen.add(w.encoding())
                    nxt.append((w, step))
        frontier = nxt
    return None


# ---------------------------------------------------------------------------
# per-context discriminant sweeps (shared with classpoly)
# ---------------------------------------------------------------------------

SUPERSINGULAR = "supersingular"
UNSUPPORTED = "unsupported"

_disc_map_cache: dict[tuple[int, int], dict] = {}
_disc_map_lock = threading.Lock()


def ordinary_disc_map(ctx: FieldCtx) -> dict[int, object]:
    """encoding -> CMOrder | SUPERSINGULAR | UNSUPPORTED for every j in ctx.

    Cached per context; the workhorse behind sweep-built class polynomials
    and the exhaustive acceptance checks.  Frobenius conjugates share their
    discriminant, so each orbit is classified once; point counting inside
    the sweep prefers baby-step giant-step early because the per-curve
    naive scan is quadratic across a whole-field sweep.
    """
    key = (ctx.p, ctx.k)
    with _disc_map_lock:
        cached = _disc_map_cache.get(key)
    if cached is not None:
        return cached
    sweep_naive_max = 600 if ctx.k > 1 else ecurve.NAIVE_THRESHOLD
    out: dict[int, object] = {}
    for j in ffield.enumerate_elements(ctx):
        if j.encoding() in out:
            continue
        jm = ffield.minimal_field(j)
        ecurve.trace_of_j(jm, naive_threshold=sweep_naive_max)
        try:
            verdict: object = provider_a_disc(jm)
        except SupersingularInput:
            verdict = SUPERSINGULAR
        except UnsupportedLevel:
            verdict = UNSUPPORTED
        orbit = j
        for _ in range(ctx.k):
            out.setdefault(orbit.encoding(), verdict)
            orbit = ffield.frobenius(orbit)
            if orbit == j:
                break
    with _disc_map_lock:
        _disc_map_cache[key] = out
    return out
