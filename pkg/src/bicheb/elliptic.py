"""Decision procedure and closed forms for int x / sqrt(+-p(x)) dx, p quartic.

The integral has an elementary antiderivative of composed-Chebyshev shape
iff some divisor s >= 2 of n admits an inner polynomial: F_1(c) = 0 and
aux(c) = 0 exactly.  The divisor scan runs in ascending order and stops
at the first divisor satisfying both conditions; the discriminant's sign
then selects the branch,

    d > 0   circular      +-(1/n) arccos(g/m)   on p < 0,
                          +-(1/n) arccosh(g/m)  on p > 0,
    d < 0   hyperbolic    +-(1/n) arcsinh(g/m)  (needs n/s odd),
    d = 0   logarithmic   +-(1/n) log|g|,

and a first hit whose branch is incompatible (d < 0 with n/s even) is a
refusal.  Decisions are made only in exact rational arithmetic: the
conditions cut a measure-zero set, so floating tolerance would be
unsound.

Within one sign region of p, the circular antiderivative formula is only
valid between consecutive stationary points of g: where |g| = m the
arc-function hits its branch point and the correct sign sigma flips.
Emitted forms are therefore piecewise, each piece carrying its own
sigma (fixed by a midpoint derivative check) and, for arccosh, the sign
of g on the piece.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .bipartite import (
    Branch,
    BipartiteSolution,
    QuarticCoeffs,
    build_solution,
    compose_outer,
    coefficients_from_recurrence,
    fk_table,
    identity_residual,
)
from .poly import Poly
from .quadrature import Integrand, integrate_adaptive
from .roots import IsolatedRoot, real_roots, root_bound
from .scalars import exact_sqrt, is_square

BRANCH_ARCCOS = "CircularArccos"
BRANCH_ARCCOSH = "CircularArccosh"
BRANCH_ARCSINH = "HyperbolicArcsinh"
BRANCH_LOG = "Logarithmic"

_FN_FOR_TAG = {
    BRANCH_ARCCOS: "arccos",
    BRANCH_ARCCOSH: "arccosh",
    BRANCH_ARCSINH: "arcsinh",
    BRANCH_LOG: "log",
}


class IntervalNotValid(ValueError):
    """Numeric check interval is not strictly inside one rendered piece."""


class ClassNotCovered(ValueError):
    """No divisor of n guarantees a real completion for the target index."""


def divisors_from_two(n: int) -> list[int]:
    return [s for s in range(2, n + 1) if n % s == 0]


@dataclass(frozen=True)
class DivisorDiagnostics:
    s: int
    f1: Fraction
    aux: Fraction
    d: Fraction
    note: str

    def as_dict(self) -> dict:
        return {
            "s": self.s,
            "F1": str(self.f1),
            "aux": str(self.aux),
            "d": str(self.d),
            "note": self.note,
        }


@dataclass(frozen=True)
class Refusal:
    """Decided-no outcome with the exact per-divisor condition values."""

    n: int
    c: QuarticCoeffs
    reason: str
    divisors: tuple[DivisorDiagnostics, ...]

    @property
    def decided(self) -> bool:
        return False

    def as_dict(self) -> dict:
        return {
            "status": "decided-no",
            "n": self.n,
            "reason": self.reason,
            "divisors": [dv.as_dict() for dv in self.divisors],
        }


def _endpoint_float(e: Optional[IsolatedRoot], low_side: bool) -> float:
    if e is None:
        return -math.inf if low_side else math.inf
    return e.value()


def _endpoint_str(e: Optional[IsolatedRoot], low_side: bool) -> str:
    if e is None:
        return "-inf" if low_side else "inf"
    if e.exact:
        return str(e.lo)
    return repr(e.value())


@dataclass(frozen=True)
class Piece:
    """One maximal stretch on which a single-sigma formula is an antiderivative."""

    lo: Optional[IsolatedRoot]
    hi: Optional[IsolatedRoot]
    sigma: int
    fn: str
    inner_sign: int = 1

    def lo_float(self) -> float:
        return _endpoint_float(self.lo, True)

    def hi_float(self) -> float:
        return _endpoint_float(self.hi, False)

    def contains_strict(self, a: float, b: float) -> bool:
        """Conservative containment: [a, b] strictly inside the certified piece."""
        lo_ok = self.lo is None or a > float(self.lo.hi)
        hi_ok = self.hi is None or b < float(self.hi.lo)
        return lo_ok and hi_ok and a <= b

    def as_dict(self) -> dict:
        return {
            "lo": _endpoint_str(self.lo, True),
            "hi": _endpoint_str(self.hi, False),
            "sigma": self.sigma,
            "fn": self.fn,
        }


@dataclass
class ClosedForm:
    """A verified elementary antiderivative of x / sqrt(+-p(x))."""

    n: int
    s: int
    c: QuarticCoeffs
    branch: str
    d: Fraction
    m2: Fraction
    G: Poly
    convention: str
    solution: BipartiteSolution
    validity: list[tuple[Optional[IsolatedRoot], Optional[IsolatedRoot]]]
    pieces: list[Piece]
    divisors: tuple[DivisorDiagnostics, ...] = field(default_factory=tuple)

    @property
    def decided(self) -> bool:
        return True

    @property
    def N(self) -> int:
        return self.n // self.s

    @property
    def radicand_sign(self) -> int:
        """+1 when the integrand is x/sqrt(p), -1 when it is x/sqrt(-p)."""
        return -1 if self.branch == BRANCH_ARCCOS else 1

    def residual(self) -> Poly:
        br = self.solution.branch
        return identity_residual(
            self.G, self.convention, self.c.poly(), self.n, self.m2, br
        )

    def g_over_m(self) -> Poly:
        """Exact g/m; requires m rational when the convention is 'g'."""
        if self.convention == "g-over-m":
            return self.G
        m = exact_sqrt(self.m2)
        return Poly([cf / m for cf in self.G.coeffs])

    def g_exact(self) -> Poly:
        """Exact g; requires m rational when the convention is 'g-over-m'."""
        if self.convention == "g":
            return self.G
        m = exact_sqrt(self.m2)
        return Poly([cf * m for cf in self.G.coeffs])

    # -- numeric evaluation -------------------------------------------------

    def _arg_float(self, x: float) -> float:
        y = self.G.to_float().eval(x)
        if self.convention == "g" and self.branch != BRANCH_LOG:
            return y / math.sqrt(float(self.m2))
        return y

    def antiderivative(self, piece: Piece, x: float) -> float:
        y = self._arg_float(x)
        if piece.fn == "arccos":
            return piece.sigma / self.n * math.acos(max(-1.0, min(1.0, y)))
        if piece.fn == "arccosh":
            return piece.sigma / self.n * math.acosh(max(1.0, piece.inner_sign * y))
        if piece.fn == "arcsinh":
            return piece.sigma / self.n * math.asinh(y)
        return piece.sigma / self.n * math.log(abs(y))

    def piece_for(self, a: float, b: float) -> Piece:
        for piece in self.pieces:
            if piece.contains_strict(a, b):
                return piece
        raise IntervalNotValid(
            f"[{a}, {b}] is not strictly inside any rendered piece"
        )

    def default_check_interval(self) -> tuple[float, float] | None:
        """Middle third of the widest piece (clipped when unbounded)."""
        best = None
        for piece in self.pieces:
            lo, hi = piece.lo_float(), piece.hi_float()
            lo = max(lo, -8.0)
            hi = min(hi, 8.0)
            if hi - lo <= 1e-6:
                continue
            if best is None or (hi - lo) > (best[1] - best[0]):
                best = (lo, hi)
        if best is None:
            return None
        lo, hi = best
        return lo + (hi - lo) / 3, hi - (hi - lo) / 3

    def as_dict(self, numeric_error: float | None = None) -> dict:
        return {
            "status": "decided-yes",
            "n": self.n,
            "s": self.s,
            "branch": self.branch,
            "d": str(self.d),
            "m2": str(self.m2),
            "G": {
                "convention": self.convention,
                "coeffs": [str(cf) for cf in self.G.coeffs],
            },
            "intervals": [p.as_dict() for p in self.pieces],
            "residual_zero": not self.residual(),
            "numeric_error": numeric_error,
        }


def decide(n: int, c: QuarticCoeffs) -> ClosedForm | Refusal:
    """Decide whether int x/sqrt(+-p) dx has a degree-n composed closed form.

    Scans divisors s of n (s >= 2) in ascending order, testing F_1 = 0
    and aux = 0 exactly; the first divisor passing both fixes the
    decision.  If its discriminant is negative with n/s even the result
    is a refusal (the hyperbolic family needs an odd outer degree).  The
    returned ClosedForm carries an exactly verified identity; the
    refusal carries every divisor's condition values.
    """
    if n < 1:
        raise ValueError("n must be positive")
    diags: list[DivisorDiagnostics] = []
    hit: int | None = None
    fatal: str | None = None
    for s in divisors_from_two(n):
        a, f1 = coefficients_from_recurrence(s, c)
        aux = c.c3 * a[2] + 3 * c.c4 * (a[3] if s >= 3 else Fraction(0))
        d = s * s * a[0] * a[0] - 4 * c.c4 * a[2] * a[2]
        ok = f1 == 0 and aux == 0
        note = "conditions-satisfied" if ok else "conditions-failed"
        if ok and hit is None and fatal is None:
            # the decision is fixed by the first conditions-satisfying
            # divisor; later divisors are reported but never selected
            N = n // s
            if d < 0 and N % 2 == 0:
                note = "rejected-even-outer-on-hyperbolic"
                fatal = (
                    f"first divisor satisfying the coefficient conditions (s={s}) "
                    f"has d < 0 with an even outer degree n/s={N}"
                )
            else:
                note = "selected"
                hit = s
        diags.append(DivisorDiagnostics(s, f1, aux, d, note))
    if hit is None:
        reason = fatal or "no divisor s of n satisfies F_1 = 0 and aux = 0"
        return Refusal(n, c, reason, tuple(diags))
    return _closed_form(n, hit, c, tuple(diags))


def closed_form_for_divisor(n: int, s: int, c: QuarticCoeffs) -> ClosedForm:
    """Build the closed form for one chosen divisor, bypassing the scan.

    Raises ConditionsNotMet / EvenOuterOnHyperbolic when s is not
    actually admissible; used to compare antiderivatives emitted through
    different divisors of the same n.
    """
    if s < 2 or n % s:
        raise ValueError("s must be a divisor of n, at least 2")
    return _closed_form(n, s, c, ())


def _closed_form(
    n: int, s: int, c: QuarticCoeffs, diags: tuple[DivisorDiagnostics, ...]
) -> ClosedForm:
    sol = build_solution(s, c)
    N = n // s
    G, convention = compose_outer(sol, N)
    residual = identity_residual(G, convention, c.poly(), n, sol.m2, sol.branch)
    if residual:
        raise AssertionError("internal error: composed identity residual nonzero")
    p = c.poly()
    if sol.branch is Branch.CIRCULAR:
        neg = sign_regions(p, -1)
        if neg:
            tag, regions = BRANCH_ARCCOS, neg
        else:
            tag, regions = BRANCH_ARCCOSH, sign_regions(p, 1)
    elif sol.branch is Branch.HYPERBOLIC:
        tag, regions = BRANCH_ARCSINH, sign_regions(p, 1)
    else:
        tag, regions = BRANCH_LOG, sign_regions(p, 1)
    cf = ClosedForm(
        n=n,
        s=s,
        c=c,
        branch=tag,
        d=sol.d,
        m2=sol.m2,
        G=G,
        convention=convention,
        solution=sol,
        validity=regions,
        pieces=[],
        divisors=diags,
    )
    cf.pieces = _build_pieces(cf, regions)
    return cf


def sign_regions(p: Poly, sign: int):
    """Maximal open intervals between consecutive real roots with sign*p > 0.

    Endpoints are isolated roots (None for +-infinity); the sign between
    two roots is evaluated exactly at a rational point of the gap.
    """
    roots = real_roots(p)
    bounds: list[Optional[IsolatedRoot]] = [None] + list(roots) + [None]
    out = []
    for i in range(len(bounds) - 1):
        lo, hi = bounds[i], bounds[i + 1]
        sample = _gap_sample(p, lo, hi)
        v = p.eval(sample)
        if sign * v > 0:
            out.append((lo, hi))
    return out


def _gap_sample(p: Poly, lo: Optional[IsolatedRoot], hi: Optional[IsolatedRoot]) -> Fraction:
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi.lo - root_bound(p) - 1
    if hi is None:
        return lo.hi + root_bound(p) + 1
    return (lo.hi + hi.lo) / 2


def _build_pieces(cf: ClosedForm, regions) -> list[Piece]:
    fn = _FN_FOR_TAG[cf.branch]
    cuts: list[IsolatedRoot] = []
    if cf.branch in (BRANCH_ARCCOS, BRANCH_ARCCOSH):
        dG = cf.G.derivative()
        if dG.degree >= 1:
            for r in real_roots(dG):
                at_zero = r.exact and r.lo == 0
                odd = r.multiplicity % 2 == 1
                # |g| = m branch points: odd-multiplicity stationary points
                # away from 0; at 0 the integrand flips too, so only an
                # even-multiplicity stationary point leaves a kink there.
                if (odd and not at_zero) or (at_zero and not odd):
                    cuts.append(r)
    pieces: list[Piece] = []
    for lo, hi in regions:
        inner = [r for r in cuts if _strictly_inside(r, lo, hi)]
        ends: list[Optional[IsolatedRoot]] = [lo] + inner + [hi]
        for a, b in zip(ends, ends[1:]):
            sigma, isign = _calibrate_piece(cf, fn, a, b)
            pieces.append(Piece(a, b, sigma, fn, isign))
    return pieces


def _strictly_inside(r: IsolatedRoot, lo, hi) -> bool:
    lo_ok = lo is None or r.lo > lo.hi
    hi_ok = hi is None or r.hi < hi.lo
    return lo_ok and hi_ok


def _calibrate_piece(cf: ClosedForm, fn: str, lo, hi) -> tuple[int, int]:
    """Fix sigma (and arccosh inner sign) by a derivative match at a sample."""
    a = _endpoint_float(lo, True)
    b = _endpoint_float(hi, False)
    if math.isinf(a) and math.isinf(b):
        a2, b2 = -1.0, 1.0
    elif math.isinf(b):
        a2, b2 = a, a + 2.0
    elif math.isinf(a):
        a2, b2 = b - 2.0, b
    else:
        a2, b2 = a, b
    pf = cf.c.poly().to_float()
    gf = cf.G.to_float()
    dgf = gf.derivative()
    mf = math.sqrt(float(cf.m2)) if cf.m2 else 0.0
    rad_sign = -1 if fn == "arccos" else 1
    for t in (0.5, 0.37, 0.61, 0.29, 0.73, 0.45):
        x = a2 + (b2 - a2) * t
        if not (a < x < b):
            continue
        y = gf.eval(x)
        dy = dgf.eval(x)
        if cf.convention == "g" and cf.branch != BRANCH_LOG:
            y, dy = y / mf, dy / mf
        radicand = rad_sign * pf.eval(x)
        if radicand <= 0 or x == 0:
            continue
        integrand = x / math.sqrt(radicand)
        if fn == "arccos":
            den = 1 - y * y
            if den <= 0:
                continue
            deriv = -dy / (cf.n * math.sqrt(den))
            isign = 1
        elif fn == "arccosh":
            isign = 1 if y >= 0 else -1
            den = y * y - 1
            if den <= 0:
                continue
            deriv = isign * dy / (cf.n * math.sqrt(den))
        elif fn == "arcsinh":
            deriv = dy / (cf.n * math.sqrt(1 + y * y))
            isign = 1
        else:
            if y == 0:
                continue
            deriv = dy / (cf.n * y)
            isign = 1
        if deriv == 0 or integrand == 0:
            continue
        sigma = 1 if integrand * deriv > 0 else -1
        return sigma, isign
    return 1, 1


def validity_intervals(p: Poly, branch: str):
    """Sign regions of p required by a branch tag (arccos: p<0, else p>0)."""
    sign = -1 if branch == BRANCH_ARCCOS else 1
    return sign_regions(p, sign)


def numeric_check(
    cf: ClosedForm, interval: tuple[float, float], tol: float = 1e-10
) -> float:
    """Max |quadrature - antiderivative difference| over endpoint pairs.

    The interval must sit strictly inside one rendered piece (the formula
    is only an antiderivative piecewise); raises IntervalNotValid
    otherwise.
    """
    a, b = float(interval[0]), float(interval[1])
    if not a < b:
        raise IntervalNotValid("empty interval")
    piece = cf.piece_for(a, b)
    f = Integrand(cf.c.poly(), cf.radicand_sign)
    mid = (a + b) / 2
    worst = 0.0
    for x0, x1 in ((a, mid), (mid, b), (a, b)):
        val, _ = integrate_adaptive(f, x0, x1, tol)
        diff = cf.antiderivative(piece, x1) - cf.antiderivative(piece, x0)
        worst = max(worst, abs(val - diff))
    return worst


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _m_string(m2: Fraction, latex: bool) -> str:
    if is_square(m2):
        m = exact_sqrt(m2)
        return str(m)
    return (rf"\sqrt{{{m2}}}" if latex else f"sqrt({m2})")


def render(cf: ClosedForm, fmt: str = "text") -> str:
    """Deterministic serialization of a closed form (text, latex, or json)."""
    if fmt == "json":
        import json

        return json.dumps(cf.as_dict(), indent=2)
    if fmt not in ("text", "latex"):
        raise ValueError(f"unknown format {fmt!r}")
    latex = fmt == "latex"
    lines = []
    sign = "-" if cf.radicand_sign < 0 else ""
    if latex:
        integral = rf"\int \frac{{x\,dx}}{{\sqrt{{{sign}p(x)}}}}"
    else:
        integral = f"int x/sqrt({sign}p(x)) dx"
    arg = cf.G.format(latex=latex)
    if cf.convention == "g" and cf.branch != BRANCH_LOG and cf.m2 != 1:
        ms = _m_string(cf.m2, latex)
        arg = rf"\frac{{{arg}}}{{{ms}}}" if latex else f"({arg})/{ms}"
    for piece in cf.pieces:
        sg = "-" if piece.sigma < 0 else "+"
        inner = arg
        if piece.fn == "arccosh" and piece.inner_sign < 0:
            inner = rf"-\left({arg}\right)" if latex else f"-({arg})"
        if piece.fn == "log":
            inner = rf"\left|{arg}\right|" if latex else f"|{arg}|"
        if latex:
            fn = {"arccos": r"\arccos", "arccosh": r"\operatorname{arccosh}",
                  "arcsinh": r"\operatorname{arcsinh}", "log": r"\log"}[piece.fn]
            body = rf"{sg}\frac{{1}}{{{cf.n}}}{fn}\left({inner}\right) + C"
            where = rf"\quad\text{{on }} ({_endpoint_str(piece.lo, True)},\ {_endpoint_str(piece.hi, False)})"
        else:
            body = f"{sg}(1/{cf.n})*{piece.fn}({inner}) + C"
            where = f"   on ({_endpoint_str(piece.lo, True)}, {_endpoint_str(piece.hi, False)})"
        lines.append(f"{integral} = {body}{where}")
    if not lines:
        lines.append(f"{integral}: branch {cf.branch} has an empty validity region")
    return "\n".join(lines)


def render_refusal(r: Refusal, fmt: str = "text") -> str:
    if fmt == "json":
        import json

        return json.dumps(r.as_dict(), indent=2)
    lines = [f"no elementary form of degree n={r.n}: {r.reason}"]
    for dv in r.divisors:
        lines.append(
            f"  s={dv.s}: F_1={dv.f1}, aux={dv.aux}, d={dv.d} [{dv.note}]"
        )
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# coefficient completion
# ---------------------------------------------------------------------------

_TARGET_CLASS = {
    1: ("even", lambda s: s % 2 == 0),
    2: ("congruent to 3 mod 4", lambda s: s % 4 == 3),
    4: ("congruent to 5 mod 8", lambda s: s % 8 == 5),
}


@dataclass
class CompletionEntry:
    root: IsolatedRoot
    c: Optional[QuarticCoeffs]
    outcome: ClosedForm | Refusal | None
    note: str

    def as_dict(self) -> dict:
        d: dict = {
            "root": str(self.root.lo) if self.root.exact else [str(self.root.lo), str(self.root.hi)],
            "exact": self.root.exact,
            "note": self.note,
        }
        if self.outcome is not None:
            d["decision"] = self.outcome.as_dict()
        return d


@dataclass
class CompletionResult:
    n: int
    s: int
    target: int
    fixed: dict[int, Fraction]
    entries: list[CompletionEntry]

    def roots(self) -> list[IsolatedRoot]:
        return [e.root for e in self.entries]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "s": self.s,
            "target": f"c{self.target}",
            "fixed": {f"c{k}": str(v) for k, v in sorted(self.fixed.items())},
            "solutions": [e.as_dict() for e in self.entries],
        }


def complete_coefficient(
    n: int,
    fixed: dict[int, Fraction],
    target: int,
    force_s: int | None = None,
) -> CompletionResult:
    """Solve F_1 = 0 for one missing quartic coefficient, then re-decide.

    The divisor s is the largest divisor of n in the parity class that
    guarantees an odd-degree (hence real-solvable) univariate condition:
    even s for c1, s = 3 mod 4 for c2, s = 5 mod 8 for c4.  Roots are
    isolated exactly; rational roots get a full exact decision, which may
    still refuse (a root of F_1 alone does not guarantee the auxiliary
    condition).  Raises ClassNotCovered when no divisor qualifies.
    """
    if target not in (1, 2, 3, 4):
        raise ValueError("target must identify one of c1..c4")
    if set(fixed) != {1, 2, 3, 4} - {target}:
        raise ValueError("fixed must carry exactly the other three coefficients")
    fixed = {k: Fraction(v) for k, v in fixed.items()}
    if force_s is not None:
        if n % force_s or force_s < 2:
            raise ValueError("forced s must be a divisor of n, at least 2")
        s = force_s
    else:
        if target not in _TARGET_CLASS:
            raise ClassNotCovered(
                f"no parity class guarantees a real completion for c{target}"
            )
        name, member = _TARGET_CLASS[target]
        candidates = [s for s in divisors_from_two(n) if member(s)]
        if not candidates:
            raise ClassNotCovered(
                f"n={n} has no divisor {name}; no completion guarantee for c{target}"
            )
        s = max(candidates)
    coeffs = fk_table(s).fk_as_poly_in(1, target, fixed)
    f1_poly = Poly(coeffs)
    entries: list[CompletionEntry] = []
    for root in real_roots(f1_poly):
        if root.exact:
            vals = dict(fixed)
            vals[target] = root.lo
            c = QuarticCoeffs.of(vals[1], vals[2], vals[3], vals[4])
            outcome = decide(n, c)
            note = "decided-yes" if isinstance(outcome, ClosedForm) else "decided-no"
            entries.append(CompletionEntry(root, c, outcome, note))
        else:
            entries.append(
                CompletionEntry(
                    root,
                    None,
                    None,
                    "irrational root isolated; exact decision needs rational input",
                )
            )
    return CompletionResult(n, s, target, fixed, entries)
