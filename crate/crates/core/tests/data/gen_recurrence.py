"""Recurrence coefficients from high-precision moments (mpmath).

Moments are integrated with tanh-sinh quadrature split at the singular
points, then a_k, b_k follow from Gram-Schmidt on the monomial basis at
80-digit precision.
"""
import mpmath as mp

mp.mp.dps = 80
N = 12

MEASURES = {
    # name: (alpha, beta, [(position, lambda)], log h as Chebyshev coefficients)
    "abs1": (0, 0, [(mp.mpf(0), 1)], []),
    "asym": (mp.mpf("0.5"), mp.mpf("-0.3"), [(mp.mpf("0.5"), mp.mpf("-0.5"))], [0, 1]),
    "two": (mp.mpf("-0.5"), 0, [(-mp.sqrt(2) / 2, mp.mpf("2.5")), (mp.mpf("0.5"), mp.mpf("0.75"))], [mp.mpf("0.2"), 0, mp.mpf("-0.3")]),
}


def weight(alpha, beta, sing, logh):
    def w(x):
        v = (1 - x) ** alpha * (1 + x) ** beta
        for p, lam in sing:
            v *= abs(x - p) ** lam
        if logh:
            v *= mp.exp(sum(c * mp.chebyt(j, x) for j, c in enumerate(logh)))
        return v
    return w


def table(alpha, beta, sing, logh):
    w = weight(alpha, beta, sing, logh)
    pts = [-1] + [p for p, _ in sing] + [1]
    moments = [mp.quad(lambda x: w(x) * x ** j, pts) for j in range(2 * N + 1)]

    def ip(p, q):
        s = mp.mpf(0)
        for i, a in enumerate(p):
            for j, b in enumerate(q):
                s += a * b * moments[i + j]
        return s

    def mulx(p):
        return [mp.mpf(0)] + list(p)

    prev, cur = [], [mp.mpf(1)]
    norm_prev = None
    rows = []
    mass = ip(cur, cur)

    for k in range(N):
        nk = ip(cur, cur)
        a = ip(mulx(cur), cur) / nk
        bk = nk / norm_prev if norm_prev is not None else mass
        rows.append((k, a, bk))
        nxt = mulx(cur)
        nxt = [c - a * (cur[i] if i < len(cur) else 0) for i, c in enumerate(nxt)]
        if prev:
            nxt = [c - bk * (prev[i] if i < len(prev) else 0) for i, c in enumerate(nxt)]
        prev, cur, norm_prev = cur, nxt, nk
    return rows


print("measure,k,a_k,b_k")
for name, spec in MEASURES.items():
    for k, a, b in table(*spec):
        print(f"{name},{k},{mp.nstr(a, 20)},{mp.nstr(b, 20)}")
