#!/usr/bin/env python3
"""Generate the classical modular polynomial data files phi_<l>.txt.

Method: exact integer q-expansions.  With x = q^(1/l), the l+1 functions
  j(q^l), j(zeta^i x)  (i = 0..l-1)
are the roots of Phi_l(X, j(q)) in X.  Power sums of the roots are integer
q-series (the zeta-trace kills fractional powers: summing j(zeta^i x)^k over
i extracts every l-th coefficient of j(x)^k, times l).  Newton's identities
give the elementary symmetric functions, and each one is rewritten as an
integer polynomial in j(q) by repeated leading-term elimination.

Checks performed before writing:
  * known j-coefficients (744, 196884, 21493760, 864299970);
  * symmetry Phi(X, Y) = Phi(Y, X);
  * Kronecker congruence Phi_l = (X^l - Y)(X - Y^l) mod l;
  * degree l+1 in each variable;
  * classical CM vanishing facts (Phi_2(0, 54000) = 0, Phi_l(0,0) = 0 iff
    l = 7, 13 among our levels, Phi_l(1728,1728) = 0 iff l = 5, 13).

Run from the repository root:  python3 devtools/gen_modular_polys.py
"""

import os
import sys

LEVELS = [2, 3, 5, 7, 11, 13]
OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "cmgate", "data")


# --- dense integer power series helpers (index = exponent) -------------------

def series_mul(a, b, prec):
    out = [0] * prec
    for i, ai in enumerate(a):
        if ai and i < prec:
            top = min(prec - i, len(b))
            for j in range(top):
                if b[j]:
                    out[i + j] += ai * b[j]
    return out


def series_pow(a, e, prec):
    result = [1] + [0] * (prec - 1)
    base = a[:prec] + [0] * max(0, prec - len(a))
    while e:
        if e & 1:
            result = series_mul(result, base, prec)
        base = series_mul(base, base, prec)
        e >>= 1
    return result


def series_inv(a, prec):
    """Inverse of a series with a(0) = 1."""
    assert a[0] == 1
    out = [1] + [0] * (prec - 1)
    for n in range(1, prec):
        acc = 0
        for i in range(1, min(n, len(a) - 1) + 1):
            acc += a[i] * out[n - i]
        out[n] = -acc
    return out


def j_series_shifted(prec):
    """Coefficients of q*j(q) = 1 + 744 q + 196884 q^2 + ..."""
    sigma3 = [0] * prec
    for n in range(1, prec):
        s = 0
        for d in range(1, n + 1):
            if n % d == 0:
                s += d**3
        sigma3[n] = s
    e4 = [1] + [240 * sigma3[n] for n in range(1, prec)]
    # eta(q)^24 / q = (prod (1 - q^n))^24 via Euler's pentagonal series
    euler = [0] * prec
    k = 0
    while True:
        e1 = k * (3 * k - 1) // 2
        e2 = k * (3 * k + 1) // 2
        if e1 >= prec and e2 >= prec:
            break
        sign = -1 if k % 2 else 1
        if e1 < prec:
            euler[e1] += sign
        if k and e2 < prec:
            euler[e2] += sign
        k += 1
    delta_over_q = series_pow(euler, 24, prec)
    num = series_pow(e4, 3, prec)
    jq = series_mul(num, series_inv(delta_over_q, prec), prec)
    assert jq[0] == 1 and jq[1] == 744 and jq[2] == 196884
    assert jq[3] == 21493760 and jq[4] == 864299970
    return jq


# --- Laurent series: dict-free dense with offset ------------------------------

class Laurent:
    """coeffs[i] is the coefficient of q^(i + low)."""

    __slots__ = ("low", "coeffs")

    def __init__(self, low, coeffs):
        self.low = low
        self.coeffs = coeffs

    def coeff(self, e):
        i = e - self.low
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def add(self, other):
        low = min(self.low, other.low)
        hi = max(self.low + len(self.coeffs), other.low + len(other.coeffs))
        out = [0] * (hi - low)
        for i, c in enumerate(self.coeffs):
            out[self.low - low + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.low - low + i] += c
        return Laurent(low, out)

    def scale(self, c):
        return Laurent(self.low, [c * v for v in self.coeffs])

    def mul(self, other, hi_cap):
        low = self.low + other.low
        size = hi_cap - low
        out = [0] * max(size, 0)
        for i, a in enumerate(self.coeffs):
            if a:
                ei = self.low + i
                for jx, b in enumerate(other.coeffs):
                    if b:
                        e = ei + other.low + jx
                        if e < hi_cap:
                            out[e - low] += a * b
        return Laurent(low, out)

    def min_exponent(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return self.low + i
        return None


def build_phi(level, jq):
    l = level
    deg = l + 1
    cap = l + 4  # verify q-coefficients up to q^(cap-1)
    # Newton runs on the l Galois conjugates j(zeta^i x) only: their power
    # sums have poles of depth at most 1, so truncation creep is one
    # exponent per Newton level instead of l per level.
    work = cap + l + deg + 2
    xprec = l * work

    jx = Laurent(-1, jq[: xprec + 2])

    # power sums of the l conjugates: the zeta-trace keeps every l-th term
    psums = []
    jx_pow = Laurent(0, [1])
    for k in range(1, l + 1):
        jx_pow = jx_pow.mul(jx, xprec + 1)
        lo = jx_pow.low
        tr_terms = {}
        for i, c in enumerate(jx_pow.coeffs):
            if c:
                e = lo + i
                if e % l == 0 and e // l < work:
                    tr_terms[e // l] = l * c
        tlow = min(tr_terms)
        trace = Laurent(
            tlow, [tr_terms.get(e, 0) for e in range(tlow, max(tr_terms) + 1)]
        )
        psums.append(trace)

    # Newton's identities for the conjugate set
    big_e = [Laurent(0, [1])]
    for r in range(1, l + 1):
        acc = Laurent(0, [0])
        sign = 1
        for i in range(1, r + 1):
            acc = acc.add(big_e[r - i].mul(psums[i - 1], work).scale(sign))
            sign = -sign
        coeffs = []
        for c in acc.coeffs:
            assert c % r == 0, "Newton identity division must be exact"
            coeffs.append(c // r)
        big_e.append(Laurent(acc.low, coeffs))

    # attach the remaining root j(q^l): e_r = E_r + j(q^l) * E_(r-1)
    n_terms = (work + l) // l + 2
    stretched = [0] * (l * n_terms + 1)
    for i in range(min(n_terms, len(jq))):
        stretched[l * i] = jq[i]
    jql = Laurent(-l, stretched)
    elems = [Laurent(0, [1])]
    for r in range(1, deg + 1):
        er = jql.mul(big_e[r - 1], cap)
        if r <= l:
            er = er.add(big_e[r])
        elems.append(er)

    # powers of j(q) for the leading-term elimination
    jpowers = [Laurent(0, [1])]
    jq_laurent = Laurent(-1, jq[: cap + deg + 3])
    for _ in range(deg):
        jpowers.append(jpowers[-1].mul(jq_laurent, cap + deg + 1))

    # Phi(X, Y) = X^deg + sum_r (-1)^r e_r(Y) X^(deg - r)
    terms = {(deg, 0): 1}
    for r in range(1, deg + 1):
        series = elems[r] if r % 2 == 0 else elems[r].scale(-1)
        ypoly = {}
        guard = 0
        while True:
            m = series.min_exponent()
            if m is None or m > 0:
                break
            d = -m
            assert d <= deg, f"degree overflow at level {l}"
            b = series.coeff(m)
            ypoly[d] = ypoly.get(d, 0) + b
            series = series.add(jpowers[d].scale(-b))
            guard += 1
            assert guard <= 4 * deg
        # every remaining coefficient up to the precision cap must vanish
        for e in range(series.low if series.min_exponent() is not None else 0, cap):
            assert series.coeff(e) == 0, f"nonzero residue q^{e} at level {l}, r={r}"
        for d, b in ypoly.items():
            if b:
                terms[(deg - r, d)] = b
    return terms


def verify_phi(level, terms):
    l = level
    deg = l + 1
    assert max(i for i, _ in terms) == deg
    assert max(j for _, j in terms) == deg
    for (i, j), c in terms.items():
        assert terms.get((j, i), 0) == c, f"symmetry fails at {(i, j)}"
    # Kronecker congruence: (X^l - Y)(X - Y^l) = X^(l+1) - X^l Y^l - XY + Y^(l+1)
    kron = {(l + 1, 0): 1, (l, l): -1, (1, 1): -1, (0, l + 1): 1}
    keys = set(terms) | set(kron)
    for key in keys:
        assert (terms.get(key, 0) - kron.get(key, 0)) % l == 0, (
            f"Kronecker congruence fails at {key} for level {l}"
        )

    def phi_at(x, y):
        return sum(c * x**i * y**j for (i, j), c in terms.items())

    if l == 2:
        assert phi_at(0, 54000) == 0
    # Phi_l(0,0) = 0 iff l is a norm from Z[zeta_3] (split or ramified in it);
    # Phi_l(1728,1728) = 0 iff l is a norm from Z[i]
    assert (phi_at(0, 0) == 0) == (l % 3 == 1 or l == 3)
    assert (phi_at(1728, 1728) == 0) == (l % 4 == 1 or l == 2)


KNOWN_PHI2 = {
    (3, 0): 1, (0, 3): 1, (2, 2): -1,
    (2, 1): 1488, (1, 2): 1488,
    (2, 0): -162000, (0, 2): -162000,
    (1, 1): 40773375,
    (1, 0): 8748000000, (0, 1): 8748000000,
    (0, 0): -157464000000000,
}


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    # enough q-terms of j for the largest level: xprec = 13*(17+13+14+2)
    jq = j_series_shifted(13 * 46 + 8)
    for level in LEVELS:
        terms = build_phi(level, jq)
        verify_phi(level, terms)
        if level == 2:
            assert terms == KNOWN_PHI2, "generated Phi_2 differs from the classical one"
        path = os.path.join(OUT_DIR, f"phi_{level}.txt")
        with open(path, "w") as fh:
            fh.write(f"# classical modular polynomial of level {level}\n")
            fh.write("# term format: <exp_X> <exp_Y> <integer coefficient>\n")
            for (i, j) in sorted(terms):
                c = terms[(i, j)]
                if c:
                    fh.write(f"{i} {j} {c}\n")
        print(f"phi_{level}.txt: {len(terms)} terms, "
              f"max |coeff| digits = {max(len(str(abs(c))) for c in terms.values())}")


if __name__ == "__main__":
    sys.exit(main())
