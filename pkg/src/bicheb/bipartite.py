"""Construction and verification of bipartite Chebyshev polynomials.

A degree-s polynomial u = a_0 + a_2 x^2 + ... + a_s x^s is attached to a
monic quartic p = x^4 + c1 x^3 + c2 x^2 + c3 x + c4 through the identity

    s^2 x^2 (u^2 -+ m^2) = p(x) u'(x)^2      (- circular, + hyperbolic)

Dividing by x^2 and differentiating turns the identity into a linear
ODE whose coefficient comparison yields a descending recurrence for the
a_k.  Solvability over a given quartic needs two exact conditions:

  * F_1(c) = 0   -- the recurrence value that would land on the banned
                    linear coefficient a_1;
  * aux(c) = c3*F_2 + 3*c4*F_3 = 0  -- vanishing of the x^-1 Laurent
                    coefficient of the divided ODE (equivalently the x^3
                    matching of the undivided identity).

The second condition is easy to miss because it only shows up in the
negative-power tail; a counterexample with F_1 = 0 but aux != 0 is
(s=2, c = (0,-3,1,1)).  Both conditions are enforced here and the full
identity is re-verified exactly after every construction.

The discriminant d = s^2 F_0^2 - 4 c4 F_2^2 selects the branch: d > 0
circular (lines y = +-m with m^2 = d/s^2), d < 0 hyperbolic, d = 0
logarithmic (m = 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .partitions import FkTable, fk_table_by_recurrence
from .poly import LaurentPoly, Poly, chebyshev_t, sinh_chebyshev
from .roots import (
    IsolatedRoot,
    count_roots_halfopen,
    real_roots,
    squarefree_part,
    sturm_chain,
)
from .scalars import Scalar, exact_sqrt, reconstruct_rational


class Branch(str, Enum):
    CIRCULAR = "circular"
    HYPERBOLIC = "hyperbolic"
    LOGARITHMIC = "logarithmic"


class ConditionsNotMet(ValueError):
    """Raised when F_1 or the auxiliary condition is nonzero."""

    def __init__(self, s: int, f1: Fraction, aux: Fraction):
        self.s, self.f1, self.aux = s, f1, aux
        failed = [name for name, v in (("F_1", f1), ("aux", aux)) if v != 0]
        super().__init__(
            f"s={s}: condition(s) {', '.join(failed)} nonzero (F_1={f1}, aux={aux})"
        )


class IdentityResidualNonzero(AssertionError):
    """Internal guard: the defining identity failed after conditions held."""


class EvenOuterOnHyperbolic(ValueError):
    """Hyperbolic composition requires an odd outer degree."""


class InvalidBranchIndex(ValueError):
    pass


@dataclass(frozen=True)
class QuarticCoeffs:
    """Coefficients (c1, c2, c3, c4) of the monic quartic x^4 + c1 x^3 + ..."""

    c1: Fraction
    c2: Fraction
    c3: Fraction
    c4: Fraction

    @staticmethod
    def of(c1, c2, c3, c4) -> "QuarticCoeffs":
        return QuarticCoeffs(Fraction(c1), Fraction(c2), Fraction(c3), Fraction(c4))

    @staticmethod
    def from_list(vals: Sequence) -> "QuarticCoeffs":
        if len(vals) != 4:
            raise ValueError("expected exactly four coefficients c1,c2,c3,c4")
        return QuarticCoeffs.of(*vals)

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.c1, self.c2, self.c3, self.c4)

    def poly(self) -> Poly:
        return Poly((self.c4, self.c3, self.c2, self.c1, Fraction(1)))

    def ptilde(self) -> LaurentPoly:
        """p(x) / x^2, the divided quartic with a two-term Laurent tail."""
        return LaurentPoly(self.poly(), 2)


@lru_cache(maxsize=64)
def fk_table(s: int) -> FkTable:
    return fk_table_by_recurrence(s)


def coefficients_from_recurrence(s: int, c: QuarticCoeffs):
    """Inner coefficients a_0..a_s (a_s = 1, a_1 = 0) plus the F_1 value.

    Runs the descending recurrence numerically; works for Fraction or
    float coefficient values.
    """
    if s < 2:
        raise ValueError("inner degree s must be at least 2")
    return _recurrence(s, c.as_tuple())


def _recurrence(s: int, cvals: Sequence):
    zero = cvals[0] * 0
    a = [zero] * (s + 4)
    a[s] = zero + 1
    f1 = zero

    def step(k):
        acc = zero
        for i in range(1, 5):
            acc += (k + i) * (2 * k + i) * cvals[i - 1] * a[k + i]
        return acc / (2 * (s * s - k * k))

    for k in range(s - 1, -1, -1):
        if k == 1:
            f1 = step(1)
            a[1] = zero  # pinned: the inner polynomial has no linear term
        else:
            a[k] = step(k)
    return a[: s + 1], f1


def eval_f1(s: int, c: QuarticCoeffs) -> Fraction:
    return coefficients_from_recurrence(s, c)[1]


def condition_aux(s: int, c: QuarticCoeffs) -> Fraction:
    """Cleared x^-1 Laurent matching: c3*F_2 + 3*c4*F_3 (F_3 = 0 when s=2)."""
    a, _ = coefficients_from_recurrence(s, c)
    f2 = a[2]
    f3 = a[3] if s >= 3 else Fraction(0)
    return c.c3 * f2 + 3 * c.c4 * f3


def ode_residual(s: int, c: QuarticCoeffs, u: Poly) -> LaurentPoly:
    """Laurent residual 2 s^2 u - (2 u'' ptilde + u' ptilde') of the divided ODE.

    Zero iff u solves the divided equation including its negative-power
    tail; the x^-1 coefficient is -2 * aux and the x^1 coefficient is
    -2 (s^2 - 1) F_1 when u comes from the recurrence.
    """
    return _divided_ode_residual(c.ptilde(), s, u)


def discriminant(s: int, c: QuarticCoeffs) -> Fraction:
    """s^2 F_0^2 - 4 c4 F_2^2; its sign selects the antiderivative branch."""
    a, _ = coefficients_from_recurrence(s, c)
    return s * s * a[0] * a[0] - 4 * c.c4 * a[2] * a[2]


def branch_of(d) -> Branch:
    if d > 0:
        return Branch.CIRCULAR
    if d < 0:
        return Branch.HYPERBOLIC
    return Branch.LOGARITHMIC


UNIT_LEADING = "unit-leading"
UNIT_AMPLITUDE = "unit-amplitude"


@dataclass(frozen=True)
class BipartiteSolution:
    """A verified inner polynomial with its branch data.

    unit-leading: a_s = 1, every a_k rational, m^2 = |d| / s^2.
    unit-amplitude: m = 1, a_s = s / sqrt(|d|) (positive root), so the
    a_k live in Q(sqrt(|d|)) when |d| is not a square.
    """

    s: int
    c: QuarticCoeffs
    a: tuple[Scalar, ...]
    m2: Scalar
    d: Fraction
    branch: Branch
    normalization: str

    @property
    def u(self) -> Poly:
        return Poly(self.a)

    def m(self) -> Scalar:
        """Exact m = sqrt(m2); a Fraction when m2 is a rational square."""
        return exact_sqrt(Fraction(self.m2))

    def residual(self) -> Poly:
        """s^2 x^2 (u^2 -+ m^2) - p u'^2; the zero polynomial for valid data."""
        return identity_residual(self.u, "g", self.c.poly(), self.s, self.m2, self.branch)

    def as_dict(self) -> dict:
        return {
            "s": self.s,
            "c": [str(v) for v in self.c.as_tuple()],
            "a": [str(v) for v in self.a],
            "m2": str(self.m2),
            "d": str(self.d),
            "branch": self.branch.value,
            "normalization": self.normalization,
            "residual_zero": not self.residual(),
        }


def build_solution(
    s: int, c: QuarticCoeffs, normalization: str = UNIT_LEADING
) -> BipartiteSolution:
    """Construct and exactly verify the inner polynomial for (s, c).

    Requires F_1(c) = 0 and aux(c) = 0 exactly; raises ConditionsNotMet
    otherwise.  The defining identity is then re-checked with zero
    tolerance; IdentityResidualNonzero is unreachable when the
    preconditions hold and exists as an internal consistency guard.
    """
    a, f1 = coefficients_from_recurrence(s, c)
    aux = c.c3 * a[2] + 3 * c.c4 * (a[3] if s >= 3 else Fraction(0))
    if f1 != 0 or aux != 0:
        raise ConditionsNotMet(s, f1, aux)
    d = s * s * a[0] * a[0] - 4 * c.c4 * a[2] * a[2]
    branch = branch_of(d)
    if normalization == UNIT_LEADING:
        m2 = abs(d) / Fraction(s * s)
        coeffs: tuple[Scalar, ...] = tuple(a)
    elif normalization == UNIT_AMPLITUDE:
        if d == 0:
            raise ValueError("unit-amplitude normalization undefined when d = 0")
        a_s = s / exact_sqrt(abs(d))
        coeffs = tuple(ak * a_s for ak in a)
        m2 = Fraction(1)
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    sol = BipartiteSolution(s, c, coeffs, m2, d, branch, normalization)
    if sol.residual():
        raise IdentityResidualNonzero(
            f"internal error: nonzero residual for s={s}, c={c}"
        )
    return sol


def identity_residual(
    G: Poly, convention: str, p: Poly, n: int, m2, branch: Branch
) -> Poly:
    """Residual n^2 x^2 (G^2 -+ M) - p G'^2 with M = m^2 or 1 per convention.

    convention "g": G is the composed polynomial itself (odd outer degree),
    M = m2.  convention "g-over-m": G = g/m (even outer degree), M = 1.
    The sign is + for the hyperbolic branch, - otherwise.
    """
    if convention == "g":
        M = m2
    elif convention == "g-over-m":
        M = Fraction(1)
    else:
        raise ValueError(f"unknown convention {convention!r}")
    gsq = G * G
    inner = gsq + M if branch is Branch.HYPERBOLIC else gsq - M
    dG = G.derivative()
    return inner.scale(n * n).shift_up(2) - p * dG * dG


# alias: "verify" reads better at call sites that only test for zero
verify_identity = identity_residual


def compose_outer(sol: BipartiteSolution, N: int) -> tuple[Poly, str]:
    """Parity-exact outer composition of degree N on a built solution.

    Returns (G, convention): G = g = m*T_N(u/m) when N is odd (rational
    coefficients even for irrational m), or G = g/m = T_N(u/m) when N is
    even.  Hyperbolic solutions use the sinh analogue and demand odd N;
    logarithmic ones use g = u^N.
    """
    if N < 1:
        raise ValueError("outer degree must be positive")
    if sol.branch is Branch.LOGARITHMIC:
        return sol.u ** N, "g"
    if sol.branch is Branch.HYPERBOLIC:
        if N % 2 == 0:
            raise EvenOuterOnHyperbolic(
                f"outer degree {N} is even; the hyperbolic family needs n/s odd"
            )
        outer = sinh_chebyshev(N)
    else:
        outer = chebyshev_t(N)
    convention = "g" if N % 2 == 1 else "g-over-m"
    return _parity_compose(outer, sol.u, sol.m2, convention), convention


def _parity_compose(outer: Poly, u: Poly, m2, convention: str) -> Poly:
    """Sum t_k u^k m^(1-k) (odd outer) or t_k u^k m^(-k) (even outer).

    Only the parity-matching t_k are nonzero, so every exponent of m is
    even and the result is exact over the base field of u and m2.
    """
    acc = Poly.zero()
    upow = Poly.one()
    for k, t in enumerate(outer.coeffs):
        if t:
            e = (1 - k) // 2 if convention == "g" else -k // 2
            if e >= 0:
                scale = t * m2**e
            else:
                scale = t / m2 ** (-e)
            acc = acc + upow.scale(scale)
        upow = upow * u
    return acc


@dataclass(frozen=True)
class ShapeResult:
    """Outcome of the graph-shape classification."""

    bipartite: bool
    exceptional_at: Fraction | None = None
    above: bool | None = None
    reason: str | None = None

    def __bool__(self):
        return self.bipartite


def classify_shape(G: Poly, convention: str, m2) -> ShapeResult:
    """Decide whether G has the bipartite graph shape for lines y = +-m.

    Needs deg(G) - 1 distinct real simple critical points, exactly one of
    them off the lines (|value| > m), located at x = 0; every other
    critical value must sit exactly on a line.  All checks are exact.
    """
    if G.degree < 1:
        raise ValueError("classification needs a nonconstant polynomial")
    if not G.is_rational():
        raise ValueError("classification requires rational coefficients")
    M = Fraction(m2) if convention == "g" else Fraction(1)
    n = G.degree
    dG = G.derivative()
    crits = real_roots(dG)
    if any(r.multiplicity > 1 for r in crits):
        return ShapeResult(False, reason="degenerate critical point")
    if len(crits) != n - 1:
        return ShapeResult(
            False, reason=f"only {len(crits)} of {n - 1} critical points are real"
        )
    h = G * G - Poly((M,))
    dg_sf = squarefree_part(dG)
    w = dg_sf.gcd(h)
    off_line = [r for r in crits if not _vanishes_on(w, r)]
    if len(off_line) != 1:
        return ShapeResult(
            False,
            reason=(
                "no exceptional extremum"
                if not off_line
                else f"{len(off_line)} extrema lie off the lines"
            ),
        )
    exc = off_line[0]
    at_zero = exc.exact and exc.lo == 0
    if not at_zero:
        return ShapeResult(False, reason="exceptional extremum not at the origin")
    h0 = h.eval(Fraction(0))
    if h0 <= 0:
        return ShapeResult(False, reason="extremum at the origin is not outside the lines")
    return ShapeResult(True, exceptional_at=Fraction(0), above=G.eval(Fraction(0)) > 0)


def _vanishes_on(w: Poly, r: IsolatedRoot) -> bool:
    """Does w vanish at the root isolated by r?

    w divides the square-free part of G', so it is square-free and the
    isolating endpoints are never roots of w.
    """
    if w.degree < 1:
        return False
    if r.exact:
        return w.eval(r.lo) == 0
    chain = sturm_chain(w)
    return count_roots_halfopen(chain, r.lo, r.hi) > 0


def solve_c1(s: int, c2, c3, c4, width=None) -> list[IsolatedRoot]:
    """All real roots of F_1 viewed as a univariate polynomial in c1."""
    fixed = {2: Fraction(c2), 3: Fraction(c3), 4: Fraction(c4)}
    coeffs = fk_table(s).fk_as_poly_in(1, 1, fixed)
    f1 = Poly(coeffs)
    kwargs = {} if width is None else {"width": width}
    return real_roots(f1, **kwargs)


# ---------------------------------------------------------------------------
# Continuation: tracking roots of F_1 while (c3, c4) moves away from (0, 0)
# ---------------------------------------------------------------------------
#
# At c3 = c4 = 0 the quartic degenerates to x^2 (x^2 + c1 x + c2) and the
# inner polynomial is a shifted/scaled classical Chebyshev polynomial; for
# c2 < 0 the condition F_1(c1) = 0 has s-1 distinct real roots, one per
# choice of which extremum sits on the y-axis.  The continuation follows a
# chosen root along the straight-line homotopy (c3, c4) = tau * targets.
# Only F_1 = 0 is being tracked; whether the full quartic identity holds at
# the endpoint additionally requires aux = 0 there, which is reported (and
# a full solution attached) whenever the final c1 reconstructs to an exact
# rational.


@dataclass
class PathResult:
    """Outcome of one continuation path."""

    s: int
    c2: Fraction
    target_c3: Fraction
    target_c4: Fraction
    branch_index: int
    tau_star: float
    reached: bool
    c1_start: Fraction
    c1_final: float
    f1_residual: float
    c1_exact: Fraction | None
    f1_exact_zero: bool
    aux_at_target: Fraction | None
    solution: BipartiteSolution | None
    message: str

    def certified(self, lo: float = -2.0, hi: float = 2.0, tol: float = 1e-9) -> bool:
        """Exact verification, or numeric certification of the tracked system."""
        if self.f1_exact_zero:
            return True
        return self.reached and self.ode_polypart_residual_bound(lo, hi) <= tol

    def ode_polypart_residual_bound(self, lo: float = -2.0, hi: float = 2.0) -> float:
        """Upper bound for sup over [lo, hi] of the divided-ODE residual.

        The residual is 2 s^2 u - (2 u'' ptilde + u' ptilde'), polynomial
        part only, with u rebuilt from the recurrence at the final c1.
        Bounded by sum |coef| * B^k, B = max(|lo|, |hi|), which dominates
        the sup norm.
        """
        cvals = (
            self.c1_final,
            float(self.c2),
            float(self.target_c3) * self.tau_star,
            float(self.target_c4) * self.tau_star,
        )
        a, _ = _recurrence(self.s, cvals)
        u = Poly(a)
        pt = LaurentPoly(Poly((cvals[3], cvals[2], cvals[1], cvals[0], 1.0)), 2)
        res = _divided_ode_residual(pt, self.s, u).poly_part()
        B = max(abs(lo), abs(hi), 1e-30)
        return float(sum(abs(c) * B**k for k, c in enumerate(res.coeffs)))

    def as_dict(self) -> dict:
        return {
            "s": self.s,
            "branch": self.branch_index,
            "tau_star": self.tau_star,
            "reached": self.reached,
            "c1_start": str(self.c1_start),
            "c1_final": self.c1_final,
            "c1_exact": None if self.c1_exact is None else str(self.c1_exact),
            "f1_exact_zero": self.f1_exact_zero,
            "aux_at_target": None
            if self.aux_at_target is None
            else str(self.aux_at_target),
            "f1_residual": self.f1_residual,
            "solution": None if self.solution is None else self.solution.as_dict(),
            "message": self.message,
        }


def _divided_ode_residual(pt: LaurentPoly, s: int, u: Poly) -> LaurentPoly:
    lhs = LaurentPoly(u.scale(2 * s * s), 0)
    rhs = LaurentPoly(u.derivative().derivative().scale(2), 0) * pt
    rhs = rhs + LaurentPoly(u.derivative(), 0) * pt.derivative()
    return lhs - rhs


def _f1_float_coeffs(s: int, c2: float, c3: float, c4: float) -> list:
    return [float(v) for v in fk_table(s).fk_as_poly_in(1, 1, {2: c2, 3: c3, 4: c4})]


def _horner(coeffs, x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _horner_deriv(coeffs, x: float) -> float:
    acc = 0.0
    for k in range(len(coeffs) - 1, 0, -1):
        acc = acc * x + k * coeffs[k]
    return acc


def _newton(coeffs, x0: float, tol: float, max_iter: int = 60):
    scale = max(1.0, max(abs(c) for c in coeffs))
    x = x0
    for _ in range(max_iter):
        f = _horner(coeffs, x)
        if abs(f) <= tol * scale:
            return x, True
        df = _horner_deriv(coeffs, x)
        if df == 0 or x != x or abs(x) > 1e12:
            return x, False
        x = x - f / df
    f = _horner(coeffs, x)
    return x, abs(f) <= 10 * tol * scale


def continuation(
    s: int,
    c2,
    target_c3,
    target_c4,
    branch_index: int,
    initial_step: float = 1 / 16,
    newton_tol: float = 1e-12,
    collision_dist: float = 1e-6,
    min_step: float = 1e-10,
) -> PathResult:
    """Track the branch_index-th real root of F_1 from (c3,c4)=(0,0) to targets.

    Straight-line homotopy with Euler prediction and Newton correction;
    the step halves when Newton stalls and the path aborts (reporting the
    largest achieved tau) when tracked roots come within collision_dist
    of each other.  At tau = 1 an exact rational reconstruction of c1 is
    attempted and, when it verifies F_1 = 0 exactly and aux = 0 as well,
    a fully verified solution is attached.
    """
    if s < 2:
        raise ValueError("s must be at least 2")
    c2, t3, t4 = Fraction(c2), Fraction(target_c3), Fraction(target_c4)
    start_roots = solve_c1(s, c2, 0, 0)
    if not 1 <= branch_index <= len(start_roots):
        raise InvalidBranchIndex(
            f"branch index {branch_index} outside 1..{len(start_roots)}"
        )
    roots = [r.value() for r in start_roots]
    sel = branch_index - 1
    c1_start_repr = (
        start_roots[sel].lo if start_roots[sel].exact else start_roots[sel].mid
    )

    f2, f4 = float(c2), float(t4)
    f3 = float(t3)
    tau, h = 0.0, initial_step
    message = "reached tau = 1"
    reached = True
    while tau < 1.0:
        step = min(h, 1.0 - tau)
        tau_next = tau + step
        coeffs_next = _f1_float_coeffs(s, f2, tau_next * f3, tau_next * f4)
        coeffs_cur = _f1_float_coeffs(s, f2, tau * f3, tau * f4)
        new_roots = []
        ok = True
        for r in roots:
            df = _horner_deriv(coeffs_cur, r)
            pred = r
            if df != 0:
                pred = r - (_horner(coeffs_next, r) - _horner(coeffs_cur, r)) / df
            x, good = _newton(coeffs_next, pred, newton_tol)
            if not good:
                ok = False
                break
            new_roots.append(x)
        if not ok:
            h = step / 2
            if h < min_step:
                message = "step size underflow during Newton correction"
                reached = False
                break
            continue
        collided = any(
            abs(a - b) < collision_dist
            for i, a in enumerate(new_roots)
            for b in new_roots[i + 1 :]
        )
        if collided:
            message = f"root collision at tau = {tau_next:.6g}"
            reached = False
            break
        roots = new_roots
        tau = tau_next
        h = min(max(h * 2, initial_step / 8), initial_step)

    c1f = roots[sel]
    coeffs_now = _f1_float_coeffs(s, f2, tau * f3, tau * f4)
    c1f, _ = _newton(coeffs_now, c1f, 1e-15)
    f1_res = abs(_horner(coeffs_now, c1f))

    c1_exact = None
    f1_exact_zero = False
    aux_val = None
    sol = None
    if reached:
        cand = reconstruct_rational(c1f)
        if cand is not None:
            c_full = QuarticCoeffs(cand, c2, t3, t4)
            if eval_f1(s, c_full) == 0:
                c1_exact = cand
                f1_exact_zero = True
                aux_val = condition_aux(s, c_full)
                if aux_val == 0:
                    sol = build_solution(s, c_full)
                    message = "exact solution verified at tau = 1"
                else:
                    message = (
                        "exact F_1 root at tau = 1; auxiliary condition nonzero, "
                        "no quartic-identity solution at the target"
                    )

    return PathResult(
        s=s,
        c2=c2,
        target_c3=t3,
        target_c4=t4,
        branch_index=branch_index,
        tau_star=tau,
        reached=reached,
        c1_start=Fraction(c1_start_repr),
        c1_final=c1f,
        f1_residual=f1_res,
        c1_exact=c1_exact,
        f1_exact_zero=f1_exact_zero,
        aux_at_target=aux_val,
        solution=sol,
        message=message,
    )
