"""Cross-check emitted antiderivatives against an independent CAS.

For each branch and piece, the rendered formula is differentiated
symbolically and compared with the integrand at high precision; the
difference must vanish to 50 digits.  Skipped when sympy is absent (it
is an oracle, not a dependency).
"""

import pytest

sp = pytest.importorskip("sympy")

from bicheb.bipartite import QuarticCoeffs
from bicheb.elliptic import decide

X = sp.Symbol("x", real=True)


def antiderivative_expr(cf, piece):
    p = sum(sp.Rational(str(v)) * X**k for k, v in enumerate(cf.c.poly().coeffs))
    G = sum(sp.Rational(str(v)) * X**k for k, v in enumerate(cf.G.coeffs))
    m2 = sp.Rational(str(cf.m2))
    y = G / sp.sqrt(m2) if (cf.convention == "g" and cf.branch != "Logarithmic") else G
    fn = {"arccos": sp.acos, "arccosh": sp.acosh, "arcsinh": sp.asinh}.get(piece.fn)
    if piece.fn == "log":
        A = sp.Rational(piece.sigma, cf.n) * sp.log(sp.Abs(G))
    else:
        A = sp.Rational(piece.sigma, cf.n) * fn(piece.inner_sign * y)
    integrand = X / sp.sqrt(-p if cf.radicand_sign < 0 else p)
    return A, integrand


CASES = [
    (3, (-2, -3, 2, 2), 0, ["-95/100", "-85/100", "-75/100"]),
    (3, (-2, -3, 2, 2), 1, ["11/10", "3/2", "19/10"]),
    (3, (-2, -3, 2, 2), 2, ["21/10", "5/2", "27/10"]),
    (2, (0, -2, 0, 2), 0, ["-2", "-1/2", "1/2", "3"]),
    (6, (0, -2, 0, 2), 0, ["-2", "-1/2", "1/2", "3"]),
    (2, (0, 2, 0, 1), 0, ["-2", "1/2", "3"]),
    (2, (0, -1, 0, 1), 0, ["-2", "1/2", "3"]),
    (4, (0, -5, 0, 4), 1, ["11/10", "3/2", "155/100"]),
    (2, (0, -2, 0, 1), 1, ["-1/2", "1/4", "3/4"]),
    (9, (-2, -3, 2, 2), 1, ["-93/100", "-87/100", "-82/100"]),
]


@pytest.mark.parametrize("n,c,piece_idx,samples", CASES)
def test_symbolic_derivative_matches_integrand(n, c, piece_idx, samples):
    cf = decide(n, QuarticCoeffs.of(*c))
    piece = cf.pieces[piece_idx]
    A, integrand = antiderivative_expr(cf, piece)
    dA = sp.diff(A, X)
    for xv in samples:
        diff = sp.Abs((dA - integrand).subs(X, sp.Rational(xv))).evalf(60)
        assert diff < sp.Float("1e-50"), (n, c, piece_idx, xv, diff)
