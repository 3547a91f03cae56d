"""Parameter limits connecting the lattice systems to Laguerre and Jacobi.

Two kinds of limit are verified.

Exact (system M): with c kept symbolic as a rational function, the
substitution eta -> eta/(1-c) followed by a coefficient-wise limit c -> 1
is an exact computation; targets are normalized Laguerre polynomials.  The
same pipeline applies to the twisted deforming polynomials (target Laguerre
at negated argument) and to whole multi-indexed polynomials, whose limits
are checked to exist with full degree and unit constant term.

Certified numeric (systems lqJ, lqL): a = q^alpha (and b = q^beta) with
integer exponents keeps everything rational at each fixed q, so the
deviation from the Jacobi/Laguerre target is an exact Fraction for every
q_k = 1 - 2^-k.  Convergence is first order: the deviation behaves like
C (1 - q) with C growing with the degree, so at q = 1 - 2^-14 the raw
deviation sits near 1e-4 and no parameter choice pushes it to 1e-6.  The
tolerance is therefore imposed on the iterated Richardson extrapolation of
the values at q_{k-2}, q_{k-1}, q_k, which cancels the first- and
second-order terms and converges like (1 - q)^3, while the raw deviations
must halve from one q_k to the next (ratios within [2/5, 3/5]) to certify
the claimed O(1-q) rate rather than accidental smallness.  Multi-indexed q-system polynomials have no in-scope
continuum target; for them the rescaled coefficients themselves are
required to stabilize (Cauchy behaviour with the same geometric rate).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .classical import jacobi, jacobi_at, laguerre, laguerre_at_zero
from .families import LittleQJacobi, LittleQLaguerre, Meixner
from .multi import system as multi_system
from .polynomials import Polynomial
from .ratfunc import PoleError, RationalFunction, limit_at
from .report import Report
from .virtual import xi_poly

__all__ = [
    "meixner_limit_exact",
    "meixner_limit_poly",
    "meixner_xi_limit_poly",
    "meixner_multi_limit_poly",
    "verify_meixner_limits",
    "q_limit_errors",
    "q_limit_extrapolated_error",
    "q_limit_numeric",
    "verify_q_limits",
]


def _symbolic_meixner(alpha: Fraction) -> Meixner:
    t = RationalFunction.variable()
    return Meixner(Fraction(alpha) + 1, t, validate=False)


def _limit_coefficients(poly: Polynomial) -> Polynomial:
    """Coefficient-wise limit c -> 1 of a polynomial over Q(c)."""
    return Polynomial([limit_at(co, Fraction(1)) for co in poly.coeffs])


def _scaled(poly: Polynomial, fam: Meixner) -> Polynomial:
    """Substitute eta -> eta/(1-c) symbolically."""
    one = Fraction(1)
    return poly.scale_argument(one / (one - fam.c))


def meixner_limit_poly(alpha, n: int) -> Polynomial:
    """lim_{c->1} P_n(eta/(1-c)) at beta = alpha+1, exactly."""
    fam = _symbolic_meixner(Fraction(alpha))
    return _limit_coefficients(_scaled(fam.poly(n), fam))


def meixner_xi_limit_poly(alpha, v: int) -> Polynomial:
    """Same limit for the deforming polynomial xi_v."""
    fam = _symbolic_meixner(Fraction(alpha))
    return _limit_coefficients(_scaled(xi_poly(fam, v), fam))


def meixner_multi_limit_poly(alpha, labels: Sequence[int], n: int) -> Polynomial:
    """Exact limit of the multi-indexed polynomial P_{D,n}."""
    fam = _symbolic_meixner(Fraction(alpha))
    sys = multi_system(fam, tuple(labels))
    return _limit_coefficients(_scaled(sys.multi_poly(n), fam))


def meixner_limit_exact(alpha, labels: Sequence[int], n: int) -> Polynomial:
    """Exact c -> 1 limit of P_n (empty labels) or P_{D,n} (nonempty)."""
    labels = tuple(labels)
    if not labels:
        return meixner_limit_poly(alpha, n)
    return meixner_multi_limit_poly(alpha, labels, n)


def verify_meixner_limits(
    alpha,
    n_max: int = 4,
    v_max: int = 3,
    label_sets: Sequence[Sequence[int]] = ((1,), (1, 2)),
    multi_n_max: int = 2,
) -> Report:
    """Exact limit checks for system M at beta = alpha + 1."""
    alpha = Fraction(alpha)
    rep = Report(
        f"limits.M[alpha={alpha}]",
        "exact c -> 1 limits to (deformed) continuum polynomials",
    )
    for n in range(n_max + 1):
        target = laguerre(alpha, n).scalar_div(laguerre_at_zero(alpha, n))
        got = meixner_limit_exact(alpha, (), n)
        rep.add(f"eigenpolynomial n={n}", got == target, "" if got == target else f"{got!r}")
    for v in range(1, v_max + 1):
        target = laguerre(alpha, v).scale_argument(Fraction(-1)).scalar_div(
            laguerre_at_zero(alpha, v)
        )
        got = meixner_xi_limit_poly(alpha, v)
        rep.add(f"deforming polynomial v={v}", got == target)
    for labels in label_sets:
        labels = tuple(labels)
        ell = sum(labels) - len(labels) * (len(labels) - 1) // 2
        for n in range(multi_n_max + 1):
            try:
                got = meixner_limit_exact(alpha, labels, n)
            except PoleError:
                rep.add(f"multi-indexed D={list(labels)} n={n}", False, "coefficient diverges")
                continue
            ok = got.degree == ell + n and got.constant_term == 1
            rep.add(
                f"multi-indexed D={list(labels)} n={n} exists, degree {ell + n}, constant 1",
                ok,
                "" if ok else f"degree={got.degree}, constant={got.constant_term}",
            )
    return rep


# -- q -> 1 side -------------------------------------------------------------------


def _coeff_distance(p: Polynomial, r: Polynomial) -> Fraction:
    d = max(len(p.coeffs), len(r.coeffs))
    return max(
        (abs(Fraction(p.coefficient(k)) - Fraction(r.coefficient(k))) for k in range(d)),
        default=Fraction(0),
    )


def _q_family(p_family: str, alpha: int, beta: int | None, k: int):
    q = Fraction(2**k - 1, 2**k)
    if p_family == "lqJ":
        if beta is None:
            raise ValueError("lqJ needs beta")
        return LittleQJacobi(q**alpha, q**beta, q)
    if p_family == "lqL":
        return LittleQLaguerre(q**alpha, q)
    raise ValueError(f"unknown q system {p_family!r}")


def _q_lhs(
    p_family: str,
    alpha: int,
    beta: int | None,
    labels: tuple,
    n: int,
    k: int,
    deforming: bool,
) -> Polynomial:
    """The rescaled polynomial at q = 1 - 2^-k, as an exact eta-polynomial.

    lqJ rescaling is eta -> 1 - eta with no renormalization; lqL rescaling is
    eta -> 1 - (1-q) eta followed by division by the value at eta-argument 1.
    """
    fam = _q_family(p_family, alpha, beta, k)
    if labels:
        poly = multi_system(fam, labels).multi_poly(n)
    elif deforming:
        poly = xi_poly(fam, n)
    else:
        poly = fam.poly(n)
    if p_family == "lqJ":
        return poly.compose(Polynomial((Fraction(1), Fraction(-1))))
    comp = poly.compose(Polynomial((Fraction(1), -(1 - fam.q))))
    return comp.scalar_div(poly(Fraction(1)))


def _q_target(p_family: str, alpha: int, beta: int | None, n: int, deforming: bool) -> Polynomial:
    """Normalized continuum target: Jacobi on [0,1] or Laguerre, degree n."""
    ta = -alpha if deforming else alpha
    if p_family == "lqJ":
        return jacobi(ta, beta, n).compose(
            Polynomial((Fraction(1), Fraction(-2)))
        ).scalar_div(jacobi_at(ta, beta, n, -1))
    return laguerre(ta, n).scalar_div(laguerre_at_zero(ta, n))


def q_limit_errors(
    p_family: str,
    alpha: int,
    beta: int | None,
    n: int,
    ks: Sequence[int],
    deforming: bool = False,
) -> list[Fraction]:
    """Exact coefficient-wise distances to the continuum target at each
    q = 1 - 2^-k.  p_family is "lqJ" or "lqL"; deforming switches to xi_v."""
    target = _q_target(p_family, alpha, beta, n, deforming)
    return [
        _coeff_distance(_q_lhs(p_family, alpha, beta, (), n, k, deforming), target)
        for k in ks
    ]


def q_limit_extrapolated_error(
    p_family: str,
    alpha: int,
    beta: int | None,
    n: int,
    k: int,
    deforming: bool = False,
    order: int = 2,
) -> Fraction:
    """Exact distance of the iterated Richardson extrapolation from the
    continuum target, using the polynomials at k - order, ..., k.

    Each coefficient deviates from its limit by a power series in h = 1 - q,
    and the steps halve h, so the standard tableau R[i][j] =
    (2^j R[i+1][j-1] - R[i][j-1]) / (2^j - 1) cancels the h, ..., h^order
    terms coefficient-wise, leaving an O(h^(order+1)) deviation that the
    tolerance check is applied to."""
    target = _q_target(p_family, alpha, beta, n, deforming)
    polys = [
        _q_lhs(p_family, alpha, beta, (), n, kk, deforming)
        for kk in range(k - order, k + 1)
    ]
    d = max(max(len(p.coeffs) for p in polys), len(target.coeffs))
    cols = [[Fraction(p.coefficient(j)) for j in range(d)] for p in polys]
    for j in range(1, order + 1):
        w = Fraction(2**j)
        cols = [
            [(w * hi[m] - lo[m]) / (w - 1) for m in range(d)]
            for lo, hi in zip(cols, cols[1:])
        ]
    est = cols[0]
    return max(abs(est[j] - Fraction(target.coefficient(j))) for j in range(d))


def q_limit_numeric(
    p_family: str,
    alpha: int,
    beta: int | None = None,
    labels: Sequence[int] = (),
    n: int = 0,
    k_max: int = 14,
    deforming: bool = False,
    tol: Fraction = Fraction(1, 10**6),
) -> Report:
    """q -> 1 behaviour of one rescaled polynomial over q_k = 1 - 2^-k, k = 4..k_max.

    With no deleted labels the classical target is known: the extrapolated
    deviation at k_max must fall below tol, raw deviations must decrease
    monotonically, and the final ratios must certify the O(1-q) rate.  With
    deleted labels there is no in-scope target; instead the rescaled
    coefficients must be a fast Cauchy sequence (successive distances
    decreasing at a geometric rate), i.e. they stabilize.
    """
    labels = tuple(labels)
    rep = Report(
        f"limits.{p_family}[alpha={alpha}"
        + (f",beta={beta}" if beta is not None else "")
        + (f",D={list(labels)}" if labels else "")
        + f",n={n}{',deforming' if deforming else ''}]",
        "q -> 1 limit behaviour of one rescaled polynomial",
    )
    ks = list(range(4, k_max + 1))
    lo, hi = Fraction(2, 5), Fraction(3, 5)
    if not labels:
        errs = q_limit_errors(p_family, alpha, beta, n, ks, deforming)
        ext = q_limit_extrapolated_error(p_family, alpha, beta, n, k_max, deforming)
        final_ok = ext <= tol
        rep.add(
            f"|extrapolated error| <= {float(tol):g} at k={k_max}",
            final_ok,
            "" if final_ok else f"error={float(ext):.3e}",
        )
        if all(e == 0 for e in errs):
            return rep  # exact agreement (degree-0 cases); no rate to measure
        rep.add("errors strictly decreasing", all(b < a for a, b in zip(errs, errs[1:])))
        ratios = [errs[i + 1] / errs[i] for i in range(len(errs) - 3, len(errs) - 1)]
        rate_ok = all(lo <= r <= hi for r in ratios)
        rep.add(
            "final convergence ratios in [0.4, 0.6]",
            rate_ok,
            "" if rate_ok else f"ratios={[float(r) for r in ratios]}",
        )
        return rep
    polys = [_q_lhs(p_family, alpha, beta, labels, n, k, deforming) for k in ks]
    diffs = [_coeff_distance(a, b) for a, b in zip(polys, polys[1:])]
    rep.add(
        "coefficient distances strictly decreasing",
        all(b < a for a, b in zip(diffs, diffs[1:])),
        f"diffs={[float(d) for d in diffs]}",
    )
    ratios = [diffs[i + 1] / diffs[i] for i in range(len(diffs) - 3, len(diffs) - 1) if diffs[i] != 0]
    rate_ok = all(Fraction(1, 4) <= r <= Fraction(3, 4) for r in ratios)
    rep.add(
        "stabilization at a geometric rate",
        rate_ok,
        "" if rate_ok else f"ratios={[float(r) for r in ratios]}",
    )
    return rep


def verify_q_limits(
    p_family: str,
    alpha: int,
    beta: int | None = None,
    n_max: int = 4,
    v_max: int = 3,
    k_final: int = 14,
    tol: Fraction = Fraction(1, 10**6),
) -> Report:
    """Certified numeric q -> 1 limits: extrapolated error below tol at the
    final q and raw error ratios between consecutive q_k within [2/5, 3/5]
    (halving rate)."""
    rep = Report(
        f"limits.{p_family}[alpha={alpha}" + (f",beta={beta}" if beta is not None else "") + "]",
        "q -> 1 limits with certified linear convergence rate",
    )
    ks = list(range(k_final - 3, k_final + 1))
    lo, hi = Fraction(2, 5), Fraction(3, 5)
    jobs = [(n, False) for n in range(n_max + 1)] + [(v, True) for v in range(1, v_max + 1)]
    for idx, deforming in jobs:
        label = f"{'deforming v' if deforming else 'eigen n'}={idx}"
        errs = q_limit_errors(p_family, alpha, beta, idx, ks, deforming)
        ext = q_limit_extrapolated_error(p_family, alpha, beta, idx, k_final, deforming)
        final_ok = ext <= tol
        rep.add(
            f"{label}: |extrapolated error| <= {float(tol):g} at k={k_final}",
            final_ok,
            "" if final_ok else f"error={float(ext):.3e}",
        )
        if all(e == 0 for e in errs):
            continue  # exact agreement (degree-0 cases); no rate to measure
        ratios = [errs[i + 1] / errs[i] for i in range(len(errs) - 1) if errs[i] != 0]
        rate_ok = all(lo <= r <= hi for r in ratios)
        rep.add(
            f"{label}: convergence ratios in [0.4, 0.6]",
            rate_ok,
            "" if rate_ok else f"ratios={[float(r) for r in ratios]}",
        )
    return rep
