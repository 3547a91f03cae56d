"""Multi-indexed polynomial systems built from Casoratians of virtual states.

Deleting M virtual states labeled D = {d_1..d_M} deforms a base system into
a new exactly solvable one.  Two polynomials in eta carry the whole result:

    W[xi_{d_1}..xi_{d_M}](x)            = C_D  varphi_M(x)   Xi_D(x)
    W[xi_{d_1}..xi_{d_M}, nu P_n](x)    = C_Dn varphi_{M+1}(x) P_{D,n}(x)
                                                  * nu(x; M tilde-delta shift)

with Xi_D(0) = P_{D,n}(0) = 1, deg Xi_D = ell_D = sum d_j - M(M-1)/2, and
deg P_{D,n} = ell_D + n.  The normalization constants C_D, C_Dn have closed
forms; the construction here computes them from the closed forms and then
*requires* the Casoratian route to reproduce the unit normalizations, so the
two derivations cross-check each other on every build.

The deformed potentials, weight function, shift operators, eigenvalue
equation and orthogonality all live here, each as an exact verification
routine.  Orthogonality sums over the infinite lattice are certified: a
geometric term-ratio bound with exact rational certificates caps the tail.

Everything runs over Fraction scalars and, for the M system, over rational
functions of c (symbolically), which is what the exact limit module uses;
construction paths therefore avoid order comparisons entirely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .casoratian import LatticeFunction, casoratian
from .families import LittleQJacobi, Meixner, _BaseFamily
from .polynomials import Polynomial, interpolate
from .ratfunc import _poly_divmod, polynomial_gcd
from .report import Report
from .series import Interval, _iroot_floor, as_interval, DEFAULT_EPS
from .virtual import alpha, virtual_energy, v_max, xi_poly

__all__ = [
    "varphi_M",
    "MultiIndexedSystem",
    "OrthogonalityResult",
    "system",
    "tilde_delta",
    "denominator_poly",
    "multi_poly",
    "leading_coefficients",
    "deformed_potentials",
    "weight",
    "count_sign_changes",
    "verify_multi_structure",
    "verify_eigen_equation",
    "verify_shape_invariance",
    "verify_special_identities",
    "orthogonality_sum",
]


def varphi_M(p: _BaseFamily, m: int, x: int):
    """prod_{1<=j<k<=m} varphi(x+j-1); closed form (1 for M, a q-power else)."""
    if isinstance(p, Meixner):
        return Fraction(1)
    return p.q ** (m * (m - 1) * x // 2 + m * (m - 1) * (m - 2) // 6)


def varphi_M_definition(p: _BaseFamily, m: int, x: int):
    """Defining product over eta differences; independent route for tests."""
    out = Fraction(1)
    for j in range(1, m + 1):
        for k in range(j + 1, m + 1):
            out = out * (p.eta(x + k - 1) - p.eta(x + j - 1)) / p.eta(k - j)
    return out


def _validate_labels(p: _BaseFamily, labels: Sequence[int]) -> tuple[int, ...]:
    labels = tuple(int(d) for d in labels)
    if len(set(labels)) != len(labels):
        raise ValueError(f"labels must be mutually distinct, got {labels}")
    if any(d < 0 for d in labels):
        raise ValueError("labels must be nonnegative")
    vm = v_max(p)
    if vm is not None:
        bad = [d for d in labels if d > vm]
        if bad:
            raise ValueError(
                f"labels {bad} exceed the admissible maximum {vm} (requires a < q^v)"
            )
    return labels


class MultiIndexedSystem:
    """A base system with an ordered tuple of deleted virtual-state labels.

    The label order only flips Casoratian signs, which the closed-form
    constants track, so any ordering yields identical polynomials; tests
    exercise permutations explicitly.  Label 0 (the constant xi_0 = 1) is
    admitted for the reduction identity; ordinary use has d_j >= 1.
    """

    def __init__(self, p: _BaseFamily, labels: Sequence[int]):
        self.p = p
        self.labels = _validate_labels(p, labels)
        self.M = len(self.labels)
        self.ell = sum(self.labels) - self.M * (self.M - 1) // 2
        self._xi_polys = [xi_poly(p, d) for d in self.labels]
        self._xi_grids = [
            LatticeFunction(lambda x, poly=poly: poly(p.eta(x))) for poly in self._xi_polys
        ]
        self._w_grid = LatticeFunction(lambda x: casoratian(self._xi_grids, x))
        self._cache: dict = {}

    def __repr__(self):
        return f"MultiIndexedSystem({self.p!r}, D={list(self.labels)})"

    # -- normalization constants (closed forms) ---------------------------------

    def C_D(self):
        if "C_D" not in self._cache:
            al = alpha(self.p)
            te = [virtual_energy(self.p, d) for d in self.labels]
            out = 1 / varphi_M(self.p, self.M, 0)
            for j in range(self.M):
                for k in range(j + 1, self.M):
                    out = out * (te[j] - te[k]) / (al * self.p.Bprime(j))
            self._cache["C_D"] = out
        return self._cache["C_D"]

    def dt_sq(self, n: int):
        """tilde-d^2_{D,n}, the norm deformation factor; positive rational."""
        al = alpha(self.p)
        en = self.p.energy(n)
        out = varphi_M(self.p, self.M, 0) / varphi_M(self.p, self.M + 1, 0)
        for j, d in enumerate(self.labels):
            out = out * (en - virtual_energy(self.p, d)) / (al * self.p.Bprime(j))
        return out

    def C_Dn(self, n: int):
        sign = -1 if self.M % 2 else 1
        return sign * self.C_D() * self.dt_sq(n)

    # -- the two polynomials ------------------------------------------------------

    def xi_d_grid(self, j: int) -> LatticeFunction:
        return self._xi_grids[j]

    def w_value(self, x: int):
        """W[xi_{d_1}..xi_{d_M}](x)."""
        return self._w_grid(x)

    def Xi(self) -> Polynomial:
        """Denominator polynomial Xi_D, degree ell_D, Xi_D(0) = 1."""
        if "Xi" not in self._cache:
            cd = self.C_D()
            vals = [
                self.w_value(x) / (cd * varphi_M(self.p, self.M, x))
                for x in range(self.ell + 11)
            ]
            if vals[0] != 1:
                raise ArithmeticError(
                    "normalization mismatch: closed-form C_D disagrees with W[xi...](0)"
                )
            poly = interpolate([(self.p.eta(x), vals[x]) for x in range(self.ell + 1)])
            if poly.degree != self.ell:
                raise ArithmeticError(
                    f"denominator degree {poly.degree} != {self.ell} (degenerate labels?)"
                )
            for x in range(self.ell + 1, self.ell + 11):
                if poly(self.p.eta(x)) != vals[x]:
                    raise ArithmeticError(f"denominator interpolation fails at x={x}")
            self._cache["Xi"] = poly
        return self._cache["Xi"]

    def Xi_at(self, x: int):
        grid = self._cache.setdefault("Xi_at", LatticeFunction(lambda y: self.Xi()(self.p.eta(y))))
        return grid(x)

    def wpp_grid(self, n: int) -> LatticeFunction:
        """W[xi_{d_1}..xi_{d_M}, nu P_n] as a cached grid function."""
        key = ("wpp", n)
        if key not in self._cache:
            poly_n = self.p.poly(n)
            nu_p = LatticeFunction(lambda x: self.p.nu(x) * poly_n(self.p.eta(x)))
            fs = self._xi_grids + [nu_p]
            self._cache[key] = LatticeFunction(lambda x: casoratian(fs, x))
        return self._cache[key]

    def multi_poly(self, n: int) -> Polynomial:
        """P_{D,n}, degree ell_D + n, P_{D,n}(0) = 1."""
        key = ("P", n)
        if key not in self._cache:
            cdn = self.C_Dn(n)
            shifted = self.p.tilde_shifted(self.M)
            wpp = self.wpp_grid(n)
            deg = self.ell + n
            vals = [
                wpp(x) / (cdn * varphi_M(self.p, self.M + 1, x) * shifted.nu(x))
                for x in range(deg + 11)
            ]
            if vals[0] != 1:
                raise ArithmeticError(
                    "normalization mismatch: closed-form C_Dn disagrees with W[xi..,nu P_n](0)"
                )
            poly = interpolate([(self.p.eta(x), vals[x]) for x in range(deg + 1)])
            if poly.degree != deg:
                raise ArithmeticError(f"P_D,{n} degree {poly.degree} != {deg}")
            for x in range(deg + 1, deg + 11):
                if poly(self.p.eta(x)) != vals[x]:
                    raise ArithmeticError(f"P_D,{n} interpolation fails at x={x}")
            self._cache[key] = poly
        return self._cache[key]

    def multi_poly_at(self, n: int, x: int):
        key = ("P_at", n)
        grid = self._cache.setdefault(
            key, LatticeFunction(lambda y, n=n: self.multi_poly(n)(self.p.eta(y)))
        )
        return grid(x)

    # -- closed-form leading coefficients ------------------------------------------

    def leading_coefficients(self, n: int):
        """(c_n, c^Xi_D, c^P_{D,n}) closed forms; each must match the
        interpolated polynomials' top terms exactly (verified, not assumed)."""
        p, labels, M = self.p, self.labels, self.M
        tw = p.twisted()
        c_n = p.leading_coefficient(n)
        c_xi = 1
        for j, d in enumerate(labels, start=1):
            c_xi = c_xi * tw.leading_coefficient(d) / tw.leading_coefficient(j - 1)
        c_p = c_xi * c_n
        if isinstance(p, Meixner):
            for j, d in enumerate(labels, start=1):
                c_p = c_p * (p.beta + j - 1) / (p.beta + d + n)
        elif isinstance(p, LittleQJacobi):
            a, b, q = p.a, p.b, p.q
            for j in range(M):
                for k in range(j + 1, M):
                    c_xi = (
                        c_xi
                        * (a * q ** -(j + k) - b * q)
                        / (a * q ** -(labels[j] + labels[k]) - b * q)
                    )
            c_p = c_xi * c_n
            for j, d in enumerate(labels, start=1):
                c_p = c_p * (q ** -(j - 1) - b * q) / (q ** -(d + n) - b * q)
        else:
            q = p.q
            for j in range(M):
                for k in range(j + 1, M):
                    c_xi = c_xi * q ** (labels[j] + labels[k] - (j + k))
            c_p = c_xi * c_n
            for j, d in enumerate(labels, start=1):
                c_p = c_p * q ** (d + n - (j - 1))
        return c_n, c_xi, c_p

    # -- deformed system -------------------------------------------------------------

    def shifted_system(self) -> "MultiIndexedSystem":
        """Same labels at parameters lambda + delta."""
        if "shifted" not in self._cache:
            self._cache["shifted"] = system(self.p.shifted(1), self.labels)
        return self._cache["shifted"]

    def B_D(self, x: int):
        up = self.shifted_system()
        return (
            self.p.tilde_shifted(self.M).B(x)
            * self.Xi_at(x)
            / self.Xi_at(x + 1)
            * up.Xi_at(x + 1)
            / up.Xi_at(x)
        )

    def D_D(self, x: int):
        up = self.shifted_system()
        return (
            self.p.D(x) * self.Xi_at(x + 1) / self.Xi_at(x) * up.Xi_at(x - 1) / up.Xi_at(x)
        )

    def weight(self, x: int):
        """w_D(x) = phi0_sq(x; lambda + M tilde-delta) / (Xi_D(x) Xi_D(x+1));
        exact positive rational, the discrete orthogonality measure."""
        grid = self._cache.setdefault(
            "weight",
            LatticeFunction(
                lambda y: self.p.tilde_shifted(self.M).phi0_sq(y)
                / (self.Xi_at(y) * self.Xi_at(y + 1))
            ),
        )
        return grid(x)

    # -- operators ----------------------------------------------------------------------

    def eigen_residual(self, n: int, x: int):
        """Residual of the similarity-transformed eigen-equation at x.

        The Hamiltonian acts as
          B(x; lambda+M tilde-delta) (Xi(x)/Xi(x+1))
              [ (Xi'(x+1)/Xi'(x)) f(x) - f(x+1) ]
        + D(x) (Xi(x+1)/Xi(x)) [ (Xi'(x-1)/Xi'(x)) f(x) - f(x-1) ]
        with Xi at lambda and Xi' at lambda+delta; eigenvalue E_n.
        The x = 0 backward term carries D(0) = 0, so no boundary case arises.
        """
        up = self.shifted_system()
        pn = lambda y: self.multi_poly_at(n, y)
        bpart = (
            self.p.tilde_shifted(self.M).B(x)
            * self.Xi_at(x)
            / self.Xi_at(x + 1)
            * (up.Xi_at(x + 1) / up.Xi_at(x) * pn(x) - pn(x + 1))
        )
        dpart = (
            self.p.D(x)
            * self.Xi_at(x + 1)
            / self.Xi_at(x)
            * (up.Xi_at(x - 1) / up.Xi_at(x) * pn(x) - pn(x - 1))
        )
        return bpart + dpart - self.p.energy(n) * pn(x)

    def forward_apply(self, f, x: int):
        """Forward shift: lowers n by one and moves parameters to lambda+delta."""
        up = self.shifted_system()
        return (
            self.p.tilde_shifted(self.M).B(0)
            / (self.p.varphi(x) * self.Xi_at(x + 1))
            * (up.Xi_at(x + 1) * f(x) - up.Xi_at(x) * f(x + 1))
        )

    def backward_apply(self, f, x: int):
        """Backward shift acting on level-(lambda+delta) polynomials."""
        up = self.shifted_system()
        val = self.p.tilde_shifted(self.M).B(x) * self.Xi_at(x) * self.p.varphi(x) * f(x)
        if x >= 1:
            val = val - self.p.D(x) * self.Xi_at(x + 1) * self.p.varphi(x - 1) * f(x - 1)
        return val / (self.p.tilde_shifted(self.M).B(0) * up.Xi_at(x))


def count_sign_changes(values: Sequence) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


# -- construction entry points ------------------------------------------------------------

_SYSTEMS: dict = {}


def system(p: _BaseFamily, labels: Sequence[int]) -> MultiIndexedSystem:
    """Shared accessor: one cached MultiIndexedSystem per (parameters, labels)."""
    key = (p, tuple(int(d) for d in labels))
    if key not in _SYSTEMS:
        _SYSTEMS[key] = MultiIndexedSystem(p, key[1])
    return _SYSTEMS[key]


def tilde_delta(p: _BaseFamily) -> tuple:
    """The companion parameter shift as exponent offsets, after checking its
    defining property twist(lambda) + u*delta = twist(lambda + u*delta-tilde)
    on the actual parameter values for u = 1..3."""
    for u in range(1, 4):
        if p.twisted().shifted(u) != p.tilde_shifted(u).twisted():
            raise ArithmeticError(f"companion shift property fails at u={u} for {p!r}")
    if isinstance(p, Meixner):
        return (1, 0)
    if isinstance(p, LittleQJacobi):
        return (-1, 1)
    return (-1,)


def denominator_poly(p: _BaseFamily, labels: Sequence[int]):
    """(Xi_D, C_D): denominator polynomial and its Casoratian normalization."""
    s = system(p, labels)
    return s.Xi(), s.C_D()


def multi_poly(p: _BaseFamily, labels: Sequence[int], n: int):
    """(P_{D,n}, C_Dn, dt^2_{D,n}): the eigenpolynomial and its normalization data."""
    s = system(p, labels)
    return s.multi_poly(n), s.C_Dn(n), s.dt_sq(n)


def leading_coefficients(p: _BaseFamily, labels: Sequence[int], n: int):
    """(c_n, c^Xi_D, c^P_{D,n}) closed-form leading coefficients."""
    return system(p, labels).leading_coefficients(n)


def deformed_potentials(p: _BaseFamily, labels: Sequence[int]):
    """(B_D, D_D) of the deformed system, as callables on the lattice."""
    s = system(p, labels)
    return s.B_D, s.D_D


def weight(p: _BaseFamily, labels: Sequence[int], x: int):
    """Orthogonality weight w_D(x), an exact positive rational."""
    return system(p, labels).weight(x)


# -- verification -----------------------------------------------------------------------


def verify_multi_structure(p: _BaseFamily, labels: Sequence[int], n_max: int, x_max: int = 40) -> Report:
    """Degrees, unit normalizations, closed-form leading coefficients,
    denominator positivity, and the node count of each eigenpolynomial."""
    sys = system(p, labels)
    rep = Report(f"multi.structure[{sys!r}]", "degrees, normalizations, leading terms, positivity")
    xi = sys.Xi()
    rep.add("Xi degree", xi.degree == sys.ell)
    rep.add("Xi(0) = 1", sys.Xi_at(0) == 1)
    pos = all(sys.Xi_at(x) > 0 for x in range(x_max + 1))
    rep.add(f"Xi > 0 on 0..{x_max}", pos)
    _, c_xi, _ = sys.leading_coefficients(0)
    rep.add("Xi leading coefficient", xi.leading_coefficient == c_xi)
    for n in range(n_max + 1):
        pn = sys.multi_poly(n)
        c_n, _, c_p = sys.leading_coefficients(n)
        rep.add(f"P_D,{n} degree", pn.degree == sys.ell + n)
        rep.add(f"P_D,{n}(0) = 1", sys.multi_poly_at(n, 0) == 1)
        lead_ok = pn.leading_coefficient == c_p
        rep.add(
            f"P_D,{n} leading coefficient",
            lead_ok,
            "" if lead_ok else f"{pn.leading_coefficient} != {c_p}",
        )
        rep.add(f"P_{n} base leading coefficient", sys.p.poly(n).leading_coefficient == c_n)
        nodes = count_sign_changes([sys.multi_poly_at(n, x) for x in range(x_max + 1)])
        rep.add(f"P_D,{n} node count = {n}", nodes == n, "" if nodes == n else f"got {nodes}")
    return rep


def verify_eigen_equation(p: _BaseFamily, labels: Sequence[int], n_max: int, x_max: int) -> Report:
    """Exact zero residual of the deformed difference equation."""
    sys = system(p, labels)
    rep = Report(f"multi.eigen-equation[{sys!r}]", "similarity-transformed eigenvalue equation")
    for n in range(n_max + 1):
        for x in range(x_max + 1):
            r = sys.eigen_residual(n, x)
            rep.add(f"n={n},x={x}", r == 0, "" if r == 0 else f"residual={r}")
    return rep


def verify_shape_invariance(p: _BaseFamily, labels: Sequence[int], n_max: int, x_max: int) -> Report:
    """Forward/backward shift relations between levels lambda and
    lambda+delta, their round trip, positivity of the deformed potentials,
    and the square-root-free operator shape-invariance identities."""
    sys = system(p, labels)
    rep = Report(f"multi.shape-invariance[{sys!r}]", "deformed shift operators and potentials")
    up_sys = sys.shifted_system()
    for n in range(1, n_max + 1):
        en = sys.p.energy(n)
        fwd_vals = [
            sys.forward_apply(lambda y, n=n: sys.multi_poly_at(n, y), x)
            for x in range(x_max + 2)
        ]
        for x in range(x_max + 1):
            rep.add(f"forward n={n},x={x}", fwd_vals[x] == en * up_sys.multi_poly_at(n - 1, x))
            bwd = sys.backward_apply(lambda y, n=n: up_sys.multi_poly_at(n - 1, y), x)
            rep.add(f"backward n={n},x={x}", bwd == sys.multi_poly_at(n, x))
            rt = sys.backward_apply(lambda y: fwd_vals[y], x)
            rep.add(f"roundtrip n={n},x={x}", rt == en * sys.multi_poly_at(n, x))
    for x in range(x_max + 1):
        rep.add(f"B_D > 0 x={x}", sys.B_D(x) > 0)
        rep.add(f"D_D sign x={x}", sys.D_D(x) > 0 if x >= 1 else sys.D_D(x) == 0)
    kappa, e1 = sys.p.kappa, sys.p.energy(1)
    for x in range(x_max + 1):
        diag = sys.B_D(x) + sys.D_D(x + 1) == kappa * (up_sys.B_D(x) + up_sys.D_D(x)) + e1
        offd = sys.B_D(x + 1) * sys.D_D(x + 1) == kappa**2 * up_sys.B_D(x) * up_sys.D_D(x + 1)
        rep.add(f"operator shape-invariance diagonal x={x}", diag)
        rep.add(f"operator shape-invariance off-diagonal x={x}", offd)
    return rep


def verify_special_identities(p: _BaseFamily, labels: Sequence[int], n_max: int) -> Report:
    """P_{D,0} = Xi_D at lambda+delta, and the label-0 reduction: replacing
    d_M by 0 reproduces the system with labels {d_j - 1} at the tilde-shifted
    parameters."""
    sys = system(p, labels)
    rep = Report(f"multi.special-identities[{sys!r}]", "lowest level and label-0 reduction")
    up_sys = sys.shifted_system()
    rep.add("P_D,0 equals shifted denominator", sys.multi_poly(0) == up_sys.Xi())
    if sys.labels and all(d >= 1 for d in sys.labels):
        with_zero = system(sys.p, sys.labels[:-1] + (0,))
        reduced = system(sys.p.tilde_shifted(1), tuple(d - 1 for d in sys.labels[:-1]))
        rep.add("label-0 denominator reduction", with_zero.Xi() == reduced.Xi())
        for n in range(n_max + 1):
            ok = with_zero.multi_poly(n) == reduced.multi_poly(n)
            rep.add(f"label-0 reduction n={n}", ok)
    return rep


# -- certified orthogonality ---------------------------------------------------------------


@dataclass
class OrthogonalityResult:
    n: int
    m: int
    partial_sum: Fraction
    tail_bound: Fraction
    target: Interval
    terms: int
    ratio_start: int
    ratio_bound: Fraction
    tolerance: Fraction
    passed: bool

    def describe(self) -> str:
        status = "ok" if self.passed else "FAIL"
        return (
            f"[{status}] (n,m)=({self.n},{self.m}): sum of {self.terms} terms, "
            f"tail <= {float(self.tail_bound):.3e}, target in "
            f"[{float(self.target.lo):.18g}, {float(self.target.hi):.18g}]"
        )


def _root_bound(poly: Polynomial) -> int:
    """Integer B with all real roots of poly in |x| < B (Fujiwara-type bound
    2 max_k (|a_{d-k}|/|a_d|)^(1/k), exact via ceiling integer roots).

    Taking k-th roots keeps the bound tame when the leading coefficient is
    tiny relative to the low-order ones, which is the normal situation here
    (leading terms carry products of small closed-form constants)."""
    lead = abs(Fraction(poly.leading_coefficient))
    d = poly.degree
    best = 1
    for i, c in enumerate(poly.coeffs[:-1]):
        if c == 0:
            continue
        k = d - i
        ratio = abs(Fraction(c)) / lead
        whole = -((-ratio.numerator) // ratio.denominator)  # ceil(ratio)
        t = _iroot_floor(whole, k)
        if t**k < whole:
            t += 1
        best = max(best, 2 * t)
    return best + 1


def _shift_poly(poly: Polynomial, k: int) -> Polynomial:
    """poly(x + k) for the M system, where eta(x) = x."""
    return poly.compose(Polynomial((Fraction(k), Fraction(1))))


def _ratio_certificate_meixner(sys: MultiIndexedSystem, n: int, m: int):
    """(x_star, r) with |t(x+1)/t(x)| <= r < 1 for all x >= x_star, where
    t(x) = w_D(x) P_{D,n}(x) P_{D,m}(x).

    The ratio is the rational function
        c (x+beta') P_n(x+1) P_m(x+1) Xi(x) / ((x+1) P_n(x) P_m(x) Xi(x+2))
    with beta' the M-shifted parameter.  Beyond the root bounds of the
    denominator and of r*den -+ num, the denominator is positive and
    |num| <= r*den, hence the certified geometric decay.
    """
    p = sys.p
    beta_shift = p.tilde_shifted(sys.M).beta
    pn, pm, xi = sys.multi_poly(n), sys.multi_poly(m), sys.Xi()
    num = (
        p.c
        * Polynomial((beta_shift, Fraction(1)))
        * _shift_poly(pn, 1)
        * _shift_poly(pm, 1)
        * xi
    )
    den = Polynomial((Fraction(1), Fraction(1))) * pn * pm * _shift_poly(xi, 2)
    if den.leading_coefficient < 0:
        num, den = -num, -den
    r = (1 + p.c) / 2
    x_star = max(
        _root_bound(den),
        _root_bound(r * den - num),
        _root_bound(r * den + num),
    ) + 1
    return x_star, r


def _poly_lower_bound(poly: Polynomial, z_star: Fraction) -> Fraction:
    """A lower bound for poly on [0, z_star]: constant term plus all negative
    contributions taken at z_star (valid since z^k <= z_star^k)."""
    lb = Fraction(poly.constant_term)
    zk = Fraction(1)
    for c in poly.coeffs[1:]:
        zk *= z_star
        if c < 0:
            lb += c * zk
    return lb


def _ratio_certificate_q(sys: MultiIndexedSystem, n: int, m: int):
    """(x_star, r) for the q systems, working in z = q^x.

    t(x+1)/t(x) = a'q (1-b'qz) P_n(1-qz) P_m(1-qz) Xi(1-z)
                  / ((1-qz) P_n(1-z) P_m(1-z) Xi(1-q^2 z)),
    a rational function of z with value a'q < 1 at z = 0 (a', b' the
    M-shifted parameters).  On a small enough (0, z_star] the bound
    |num| <= r*den with den > 0 is certified by coefficient lower bounds.
    """
    p = sys.p
    shifted = p.tilde_shifted(sys.M)
    q = p.q
    b_shift = shifted.b if isinstance(shifted, LittleQJacobi) else Fraction(0)
    pn, pm, xi = sys.multi_poly(n), sys.multi_poly(m), sys.Xi()

    def at_one_minus(poly: Polynomial, u: Fraction) -> Polynomial:
        # poly evaluated at eta = 1 - u z, as a polynomial in z
        return poly.compose(Polynomial((Fraction(1), -u)))

    num = (
        shifted.a
        * q
        * Polynomial((Fraction(1), -b_shift * q))
        * at_one_minus(pn, q)
        * at_one_minus(pm, q)
        * at_one_minus(xi, Fraction(1))
    )
    den = (
        Polynomial((Fraction(1), -q))
        * at_one_minus(pn, Fraction(1))
        * at_one_minus(pm, Fraction(1))
        * at_one_minus(xi, q * q)
    )
    g = polynomial_gcd(num, den)
    if g.degree > 0:
        num, _ = _poly_divmod(num, g)
        den, _ = _poly_divmod(den, g)
    if den.constant_term == 0:
        raise ArithmeticError("cannot certify: ratio denominator vanishes at z=0")
    if den.constant_term < 0:
        num, den = -num, -den
    rho0 = abs(num.constant_term) / den.constant_term
    if not rho0 < 1:
        raise ArithmeticError(f"cannot certify: limiting term ratio {rho0} >= 1")
    r = (1 + rho0) / 2
    x_star = 1
    while x_star < 400:
        z_star = q**x_star
        if (
            _poly_lower_bound(den, z_star) > 0
            and _poly_lower_bound(r * den - num, z_star) >= 0
            and _poly_lower_bound(r * den + num, z_star) >= 0
        ):
            return x_star, r
        x_star += 1
    raise ArithmeticError("cannot certify a geometric tail within 400 lattice steps")


def orthogonality_sum(
    p: _BaseFamily,
    labels: Sequence[int],
    n: int,
    m: int,
    rel_tol: Fraction = Fraction(1, 10**20),
    eps: Fraction = DEFAULT_EPS,
) -> OrthogonalityResult:
    """Certified check of sum_x w_D(x) P_{D,n}(x) P_{D,m}(x) against
    delta_nm / (d_n^2 dt^2_{D,n}).

    The true sum is pinned to [S - tail, S + tail] by the geometric-ratio
    certificate; the check passes when that enclosure meets the target
    enclosure and their combined width is below rel_tol relative to the
    diagonal scale.  For n != m the target is exactly zero and the scale is
    the larger of the two diagonal targets.
    """
    sys = system(p, labels)
    x_star, r = (
        _ratio_certificate_meixner(sys, n, m)
        if isinstance(sys.p, Meixner)
        else _ratio_certificate_q(sys, n, m)
    )
    diag = lambda k: 1 / (as_interval(sys.p.dn_sq(k, eps)) * sys.dt_sq(k))
    if n == m:
        target = diag(n)
        scale = abs(target.midpoint)
    else:
        target = Interval.exact(0)
        scale = max(abs(diag(n).midpoint), abs(diag(m).midpoint))
    term = lambda x: sys.weight(x) * sys.multi_poly_at(n, x) * sys.multi_poly_at(m, x)
    budget = rel_tol * scale
    partial = sum((term(x) for x in range(x_star)), Fraction(0))
    x = x_star
    while True:
        t = term(x)
        partial += t
        # x >= x_star, so |term(y)| <= r^(y-x) |t| for y > x: geometric tail.
        tail = abs(t) * r / (1 - r)
        x += 1
        if tail + target.width <= budget or x > x_star + 2000:
            break
    enclosure = Interval(partial - tail, partial + tail)
    passed = enclosure.overlaps(target) and (tail + target.width) <= budget
    return OrthogonalityResult(
        n, m, partial, tail, target, x, x_star, r, rel_tol, passed
    )
