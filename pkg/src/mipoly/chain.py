"""Step-by-step state deletion: the ladder of intermediate Hamiltonians.

Deleting virtual states one at a time produces a chain of isospectral
Hamiltonians.  After s deletions in the order d_1, ..., d_s, everything is
expressed through three Casoratian grids,

    w_s      = W[xi_{d_1}..xi_{d_s}]
    w'_{s,v} = W[xi_{d_1}..xi_{d_s}, xi_v]
    w''_{s,n}= W[xi_{d_1}..xi_{d_s}, nu P_n],

the step potentials

    Bhat_s(x) = alpha B'(x+s-1) w_{s-1}(x)/w_{s-1}(x+1) * w_s(x+1)/w_s(x)
    Dhat_s(x) = alpha D'(x)     w_{s-1}(x+1)/w_{s-1}(x) * w_s(x-1)/w_s(x)

and their ground-state-adapted standard form (B'/D' are the base potentials
at twisted parameters).  This module verifies, exactly over Fractions, every
identity the construction rests on:

  - the two eigen-identities for w'_{s,v} and w''_{s,n} (cleared of
    denominators, so they hold at negative lattice points too),
  - the Casoratian nesting rule linking levels s and s+1,
  - the two three-term contiguity identities between levels,
  - definite-sign statements for w_s, w'_{s,v}, w''_{s,0} with the exact
    sign predicted by the energy-ordering factor, and the resulting
    positivity of all step potentials,
  - the bookkeeping that re-factorizes one Hamiltonian into the next,
  - the sign-factor recursion against its closed form,
  - at s = M, agreement with the closed-form multi-indexed system:
    potentials, squared eigenvectors (with the exact normalization
    constant), and independence of the deletion order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Sequence

from .casoratian import LatticeFunction, casoratian
from .families import _BaseFamily
from .multi import _validate_labels, system
from .report import Report
from .virtual import alpha, alpha_prime, index_set, virtual_energy, xi_poly

__all__ = ["Chain", "ChainState", "chain_build", "chain_verify"]


class Chain:
    """Casoratian data for one deletion order (a tuple of distinct labels)."""

    def __init__(self, p: _BaseFamily, order: Sequence[int]):
        self.p = p
        self.order = _validate_labels(p, order)
        self.M = len(self.order)
        self.alpha = alpha(p)
        self.alpha_prime = alpha_prime(p)
        self._xi: dict[int, LatticeFunction] = {}
        self._w: dict[int, LatticeFunction] = {}
        self._wp: dict[tuple[int, int], LatticeFunction] = {}
        self._wpp: dict[tuple[int, int], LatticeFunction] = {}

    def xi_grid(self, v: int) -> LatticeFunction:
        if v not in self._xi:
            poly = xi_poly(self.p, v)
            self._xi[v] = LatticeFunction(lambda x, poly=poly: poly(self.p.eta(x)))
        return self._xi[v]

    def tilde_energy(self, v: int):
        return virtual_energy(self.p, v)

    def w(self, s: int) -> LatticeFunction:
        if s not in self._w:
            fs = [self.xi_grid(d) for d in self.order[:s]]
            self._w[s] = LatticeFunction(lambda x, fs=fs: casoratian(fs, x))
        return self._w[s]

    def wp(self, s: int, v: int) -> LatticeFunction:
        if (s, v) not in self._wp:
            fs = [self.xi_grid(d) for d in self.order[:s]] + [self.xi_grid(v)]
            self._wp[(s, v)] = LatticeFunction(lambda x, fs=fs: casoratian(fs, x))
        return self._wp[(s, v)]

    def wpp(self, s: int, n: int) -> LatticeFunction:
        if (s, n) not in self._wpp:
            poly_n = self.p.poly(n)
            nu_p = LatticeFunction(lambda x: self.p.nu(x) * poly_n(self.p.eta(x)))
            fs = [self.xi_grid(d) for d in self.order[:s]] + [nu_p]
            self._wpp[(s, n)] = LatticeFunction(lambda x, fs=fs: casoratian(fs, x))
        return self._wpp[(s, n)]

    # -- step potentials ----------------------------------------------------------

    def Bhat(self, s: int, x: int):
        if s < 1:
            raise ValueError("Bhat needs s >= 1")
        w0, w1 = self.w(s - 1), self.w(s)
        return (
            self.alpha
            * self.p.Bprime(x + s - 1)
            * w0(x)
            / w0(x + 1)
            * w1(x + 1)
            / w1(x)
        )

    def Dhat(self, s: int, x: int):
        if s < 1:
            raise ValueError("Dhat needs s >= 1")
        w0, w1 = self.w(s - 1), self.w(s)
        return self.alpha * self.p.Dprime(x) * w0(x + 1) / w0(x) * w1(x - 1) / w1(x)

    def B_std(self, s: int, x: int):
        w1, g = self.w(s), self.wpp(s, 0)
        return self.alpha * self.p.Bprime(x + s) * w1(x) / w1(x + 1) * g(x + 1) / g(x)

    def D_std(self, s: int, x: int):
        w1, g = self.w(s), self.wpp(s, 0)
        return self.alpha * self.p.Dprime(x) * w1(x + 1) / w1(x) * g(x - 1) / g(x)

    # -- the sign factor -----------------------------------------------------------

    def _sgn(self, v):
        return 1 if v > 0 else (-1 if v < 0 else 0)

    def sign_closed(self, s: int) -> int:
        te = [self.tilde_energy(d) for d in self.order[:s]]
        out = -1 if s % 2 else 1
        for i in range(s):
            for j in range(i + 1, s):
                out *= self._sgn(te[i] - te[j])
        return out

    def sign_recursive(self, s: int) -> int:
        out = 1
        for t in range(s):
            step = -1
            et = self.tilde_energy(self.order[t])
            for i in range(t):
                step *= self._sgn(self.tilde_energy(self.order[i]) - et)
            out *= step
        return out


@dataclass
class ChainState:
    """One level of a deletion chain, in ground-state-adapted standard form."""

    step: int
    deleted: tuple
    removed_energy: object  # tilde-energy of the state deleted at this step; None at step 0
    sign: int  # definite sign of w_step on the lattice
    B: Callable[[int], object]
    D: Callable[[int], object]


def chain_build(p: _BaseFamily, order: Sequence[int]) -> list[ChainState]:
    """The ladder of intermediate systems for one deletion order.

    Entry s holds the standard-form potentials after deleting the first s
    labels; entry 0 is the base system itself.  All entries share one grid
    cache, so evaluating any of them is incremental work.
    """
    ch = Chain(p, order)
    states = []
    for s in range(ch.M + 1):
        states.append(
            ChainState(
                step=s,
                deleted=ch.order[:s],
                removed_energy=None if s == 0 else ch.tilde_energy(ch.order[s - 1]),
                sign=ch.sign_closed(s),
                B=lambda x, s=s: ch.B_std(s, x),
                D=lambda x, s=s: ch.D_std(s, x),
            )
        )
    return states


def _cleared_eigen_identity(ch: Chain, s: int, u: LatticeFunction, eps_energy, x: int) -> bool:
    """The level-s eigen-identity for a companion column u, cleared of all
    Casoratian denominators so it can be tested at any integer x.

    For s >= 1 it reads
      [aB'(x+s-1) w_{s-1}(x) w_s(x+1)^2 + aD'(x+1) w_{s-1}(x+2) w_s(x)^2
        + (Et_{d_s} - eps) w_{s-1}(x+1) w_s(x) w_s(x+1)] * u(x)
      = [aB'(x+s) w_s(x)^2 u(x+1) + aD'(x) w_s(x+1)^2 u(x-1)] * w_{s-1}(x+1)
    and for s = 0 the bracket collapses to aB'(x) + aD'(x) + alpha' - eps.
    """
    a = ch.alpha
    if s == 0:
        lhs = (a * ch.p.Bprime(x) + a * ch.p.Dprime(x) + ch.alpha_prime - eps_energy) * u(x)
        rhs = a * ch.p.Bprime(x) * u(x + 1) + a * ch.p.Dprime(x) * u(x - 1)
        return lhs == rhs
    w0, w1 = ch.w(s - 1), ch.w(s)
    ets = ch.tilde_energy(ch.order[s - 1])
    bracket = (
        a * ch.p.Bprime(x + s - 1) * w0(x) * w1(x + 1) ** 2
        + a * ch.p.Dprime(x + 1) * w0(x + 2) * w1(x) ** 2
        + (ets - eps_energy) * w0(x + 1) * w1(x) * w1(x + 1)
    )
    rhs = (
        a * ch.p.Bprime(x + s) * w1(x) ** 2 * u(x + 1)
        + a * ch.p.Dprime(x) * w1(x + 1) ** 2 * u(x - 1)
    ) * w0(x + 1)
    return bracket * u(x) == rhs


def _contiguity(ch: Chain, s: int, upper: LatticeFunction, lower: LatticeFunction, eps_energy, x: int) -> bool:
    """aB'(x+s) w_s(x) upper(x) = aD'(x) w_s(x+1) upper(x-1)
       + (Et_{d_{s+1}} - eps) w_{s+1}(x) lower(x)."""
    a = ch.alpha
    lhs = a * ch.p.Bprime(x + s) * ch.w(s)(x) * upper(x)
    rhs = a * ch.p.Dprime(x) * ch.w(s)(x + 1) * upper(x - 1) + (
        ch.tilde_energy(ch.order[s]) - eps_energy
    ) * ch.w(s + 1)(x) * lower(x)
    return lhs == rhs


def chain_verify(
    p: _BaseFamily,
    order: Sequence[int],
    n_max: int = 3,
    x_max: int = 12,
    extra_virtual: int = 2,
) -> Report:
    """Exhaustive exact verification of one deletion chain; see module doc."""
    ch = Chain(p, order)
    M = len(ch.order)
    rep = Report(
        f"chain[{p!r}, order={list(ch.order)}]",
        "intermediate Hamiltonians, Casoratian identities, signs, final match",
    )
    cap = max(ch.order, default=0) + 1 + extra_virtual
    pool = index_set(p, cap)
    xs_any = range(-2, x_max + 1)  # cleared identities hold off the lattice too
    xs_lattice = range(0, x_max + 1)

    # eigen-identities at every level, for virtual companions and eigen companions
    for s in range(M + 1):
        vs = [v for v in pool if v not in ch.order[:s]][: extra_virtual + 1]
        for v in vs:
            ok = all(_cleared_eigen_identity(ch, s, ch.wp(s, v), ch.tilde_energy(v), x) for x in xs_any)
            rep.add(f"virtual eigen-identity s={s},v={v}", ok)
        for n in range(n_max + 1):
            ok = all(_cleared_eigen_identity(ch, s, ch.wpp(s, n), p.energy(n), x) for x in xs_any)
            rep.add(f"eigen eigen-identity s={s},n={n}", ok)

    # nesting rule and contiguity identities between levels
    for s in range(M):
        vs = [v for v in pool if v not in ch.order[: s + 1]][:extra_virtual]
        for n in range(n_max + 1):
            ok = all(
                ch.w(s)(x + 1) * ch.wpp(s + 1, n)(x)
                == ch.w(s + 1)(x) * ch.wpp(s, n)(x + 1) - ch.w(s + 1)(x + 1) * ch.wpp(s, n)(x)
                for x in xs_any
            )
            rep.add(f"nesting (eigen) s={s},n={n}", ok)
            ok = all(
                _contiguity(ch, s, ch.wpp(s + 1, n), ch.wpp(s, n), p.energy(n), x)
                for x in xs_any
            )
            rep.add(f"contiguity (eigen) s={s},n={n}", ok)
        for v in vs:
            ok = all(
                ch.w(s)(x + 1) * ch.wp(s + 1, v)(x)
                == ch.w(s + 1)(x) * ch.wp(s, v)(x + 1) - ch.w(s + 1)(x + 1) * ch.wp(s, v)(x)
                for x in xs_any
            )
            rep.add(f"nesting (virtual) s={s},v={v}", ok)
            ok = all(
                _contiguity(ch, s, ch.wp(s + 1, v), ch.wp(s, v), ch.tilde_energy(v), x)
                for x in xs_any
            )
            rep.add(f"contiguity (virtual) s={s},v={v}", ok)

    # definite signs and potential positivity at every level
    for s in range(1, M + 1):
        sigma = 1
        te = [ch.tilde_energy(d) for d in ch.order[:s]]
        for i in range(s):
            for j in range(i + 1, s):
                sigma *= ch._sgn(te[i] - te[j])
        rep.add(f"w_{s} definite sign", all(sigma * ch.w(s)(x) > 0 for x in xs_lattice))
        vs = [v for v in pool if v not in ch.order[:s]][:extra_virtual]
        for v in vs:
            tau = sigma
            for i in range(s):
                tau *= ch._sgn(te[i] - ch.tilde_energy(v))
            rep.add(
                f"w'_{s},{v} definite sign",
                all(tau * ch.wp(s, v)(x) > 0 for x in xs_lattice),
            )
        gsign = sigma * (-1 if s % 2 else 1)
        rep.add(
            f"w''_{s},0 definite sign",
            all(gsign * ch.wpp(s, 0)(x) > 0 for x in xs_lattice),
        )
        rep.add(f"Bhat_{s} > 0", all(ch.Bhat(s, x) > 0 for x in xs_lattice))
        rep.add(
            f"Dhat_{s} sign",
            ch.Dhat(s, 0) == 0 and all(ch.Dhat(s, x) > 0 for x in range(1, x_max + 1)),
        )
        rep.add(f"B_std_{s} > 0", all(ch.B_std(s, x) > 0 for x in xs_lattice))
        rep.add(
            f"D_std_{s} sign",
            ch.D_std(s, 0) == 0 and all(ch.D_std(s, x) > 0 for x in range(1, x_max + 1)),
        )

    # re-factorization bookkeeping between consecutive levels
    if M >= 1:
        e1 = ch.tilde_energy(ch.order[0])
        rep.add(
            "re-factorization s=0 product",
            all(ch.Bhat(1, x) * ch.Dhat(1, x + 1) == p.B(x) * p.D(x + 1) for x in xs_lattice),
        )
        rep.add(
            "re-factorization s=0 diagonal",
            all(ch.Bhat(1, x) + ch.Dhat(1, x) + e1 == p.B(x) + p.D(x) for x in xs_lattice),
        )
    for s in range(1, M):
        es, es1 = ch.tilde_energy(ch.order[s - 1]), ch.tilde_energy(ch.order[s])
        rep.add(
            f"re-factorization s={s} product",
            all(
                ch.Bhat(s + 1, x) * ch.Dhat(s + 1, x + 1) == ch.Bhat(s, x + 1) * ch.Dhat(s, x + 1)
                for x in xs_lattice
            ),
        )
        rep.add(
            f"re-factorization s={s} diagonal",
            all(
                ch.Bhat(s + 1, x) + ch.Dhat(s + 1, x) + es1 == ch.Bhat(s, x) + ch.Dhat(s, x + 1) + es
                for x in xs_lattice
            ),
        )

    # standard-form relations at each level, plus the s = 0 anchor
    rep.add(
        "standard form s=0 is the base system",
        all(ch.B_std(0, x) == p.B(x) and ch.D_std(0, x) == p.D(x) for x in xs_lattice),
    )
    for s in range(1, M + 1):
        es = ch.tilde_energy(ch.order[s - 1])
        rep.add(
            f"standard form s={s} product",
            all(
                ch.B_std(s, x) * ch.D_std(s, x + 1) == ch.Bhat(s, x + 1) * ch.Dhat(s, x + 1)
                for x in xs_lattice
            ),
        )
        rep.add(
            f"standard form s={s} diagonal",
            all(
                ch.B_std(s, x) + ch.D_std(s, x) == ch.Bhat(s, x) + ch.Dhat(s, x + 1) + es
                for x in xs_lattice
            ),
        )

    # sign factor: recursion vs closed form
    ok = all(ch.sign_recursive(s) == ch.sign_closed(s) for s in range(M + 1))
    rep.add("sign factor recursion = closed form", ok and (M == 0 or ch.sign_closed(1) == -1))

    # final level: match the closed-form multi-indexed system
    sys = system(p, ch.order)
    rep.add(
        "final potentials match denominator form",
        all(
            ch.B_std(M, x) == sys.B_D(x) and ch.D_std(M, x) == sys.D_D(x)
            for x in xs_lattice
        ),
    )
    phi0p = p.twisted()
    prod_b0 = 1
    for j in range(M):
        prod_b0 = prod_b0 * ch.alpha * p.tilde_shifted(j).Bprime(0)
    kappa_pow = p.kappa ** (M * (M - 1) // 2)
    for n in range(n_max + 1):
        const_sq = kappa_pow * (sys.C_Dn(n) / sys.C_D()) ** 2 * prod_b0
        norm_prod = sys.dt_sq(n)
        for d in ch.order:
            norm_prod = norm_prod * (p.energy(n) - ch.tilde_energy(d))
        rep.add(f"norm bookkeeping n={n}", const_sq == norm_prod)
        ok = True
        for x in xs_lattice:
            prod_bx = 1
            for j in range(M):
                prod_bx = prod_bx * ch.alpha * p.Bprime(x + j)
            lhs = prod_bx * phi0p.phi0_sq(x) * ch.wpp(M, n)(x) ** 2 / (ch.w(M)(x) * ch.w(M)(x + 1))
            rhs = const_sq * sys.weight(x) * sys.multi_poly_at(n, x) ** 2
            if lhs != rhs:
                ok = False
                break
        rep.add(f"squared eigenvector match n={n}", ok)

    # order independence: every reordering yields the same final system
    perms = list(permutations(ch.order))
    if len(perms) > 3:
        perms = [perms[0], perms[len(perms) // 2], perms[-1]]
    for perm in perms:
        if perm == ch.order:
            continue
        other = system(p, perm)
        rep.add(
            f"order independence {list(perm)}",
            other.Xi() == sys.Xi()
            and all(other.multi_poly(n) == sys.multi_poly(n) for n in range(n_max + 1)),
        )
    return rep
