"""Exact-rational parameter hierarchy, schedules, and the inequality ledger.

All frequency/amplitude magnitudes are handled as base-2 logarithms stored as
`fractions.Fraction`, so every ledger comparison is exact.  Realized values are
materialized only while their exponent is small enough to be useful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, InfeasibleError, NotFoundError, RangeError

Frac = Fraction

MAX_INPUT_DENOMINATOR = 10**6

# Realize 2**x as an exact value only while |x| stays below this bound.
REALIZE_LOG2_BOUND = 1024


def ceil_frac(x) -> int:
    x = Frac(x)
    return -((-x.numerator) // x.denominator)


def floor_frac(x) -> int:
    x = Frac(x)
    return x.numerator // x.denominator


def _log2_upper(x: Fraction, scale_bits: int = 12) -> Fraction:
    """Smallest p/2**scale_bits with 2**(p/2**scale_bits) >= x, verified in integers."""
    x = Frac(x)
    if x <= 0:
        raise ValueError("log2 bound requires a positive argument")
    s = 1 << scale_bits
    p = math.ceil(math.log2(float(x)) * s)

    def holds(p):  # 2**(p/s) >= x  <=>  2**p >= x**s
        lhs_num, lhs_den = (1 << p, 1) if p >= 0 else (1, 1 << -p)
        return lhs_num * x.denominator**s >= lhs_den * x.numerator**s

    while not holds(p):
        p += 1
    while holds(p - 1):
        p -= 1
    return Frac(p, s)


@lru_cache(maxsize=None)
def log2_two_pi_sqrt3_upper() -> Fraction:
    """Certified dyadic upper bound for log2(2*pi*sqrt(3)) = log2(12*pi^2)/2."""
    pi_hi = Frac(314159265358979323847, 10**20)
    return _log2_upper(12 * pi_hi * pi_hi) / 2


def realize(log2_value):
    """2**log2_value as an exact int/Fraction when representable, else a tag string."""
    log2_value = Frac(log2_value)
    if abs(log2_value) > REALIZE_LOG2_BOUND or log2_value.denominator != 1:
        return f"2^({log2_value})"
    e = log2_value.numerator
    return 1 << e if e >= 0 else Frac(1, 1 << -e)


@dataclass(frozen=True)
class ParamInputs:
    """Regularity exponent, super-exponential rate, and log2 of the base frequency."""

    beta: Fraction
    b: Fraction
    a_exp: int = 1

    def __post_init__(self):
        object.__setattr__(self, "beta", Frac(self.beta))
        object.__setattr__(self, "b", Frac(self.b))
        beta, b = self.beta, self.b
        if beta.denominator > MAX_INPUT_DENOMINATOR or b.denominator > MAX_INPUT_DENOMINATOR:
            raise DomainError("beta and b must have denominator <= 1e6")
        if not (Frac(1, 3) <= beta < Frac(1, 2)):
            raise DomainError(f"beta={beta} outside [1/3, 1/2)")
        if not (1 < b < Frac(3, 2)):
            raise DomainError(f"b={b} outside (1, 3/2)")
        if 2 * beta * b >= 1:
            raise DomainError(f"2*beta*b = {2 * beta * b} >= 1")
        if self.a_exp < 1:
            raise DomainError("a_exp must be >= 1")


@dataclass(frozen=True)
class GlobalConstants:
    n_max: int
    C_b: Fraction
    C_R: Fraction
    c_star: int
    eps_gamma: Fraction
    C_inf: Fraction
    alpha: Fraction
    N_cut_small: int
    N_cut_large: int
    N_ind_t: int
    N_ind_v: int
    N_dec: int
    d_pot: int
    N_fin: int


def _log2_nmax_ceil(n: int) -> int:
    return max(0, (n - 1).bit_length())


def _eps_gamma_bounds(beta, b, n_max, C_b, C_R, c_star):
    """Upper bounds from the seven admissibility constraints on eps_gamma."""
    ln = _log2_nmax_ceil(n_max)
    M = n_max
    return [
        (b - 1) / (300 * (M + 1) * ln),
        ((b - 1) / (2 * b) - Frac(3) / (2 * (b - 1) * (M + 1))) / (7 * (2 + ln + 22 + 4 * M)),
        (Frac(1, 2) - Frac(2 + ln, M)) / (5 + (2 + ln) * (9 + C_b)),
        (Frac(1, 2) * (1 + Frac(M, M + 1)) - 2 * beta * b - Frac(3 + ln, 2 * (M + 1)))
        / (C_R * (b - 1) / b + 15 + 9 * (3 + ln)),
        (1 - 2 * beta * b) / (Frac(1, 2) * C_b + c_star + 10 + Frac(1, 2) * C_R),
        ((1 - 2 * beta) / 10) / (7 + C_R + M * (8 + C_b)),
        (1 - beta) / (2 * b * (c_star + 7)),
    ]


def resolve_constants(inputs: ParamInputs) -> GlobalConstants:
    """Resolve every q-independent constant to its extremal admissible value."""
    beta, b = inputs.beta, inputs.b

    n_max = None
    for n in range(1, 10**7):
        ln = _log2_nmax_ceil(n)
        c1 = Frac(2, n + 1) < (b - 1) ** 2 / (2 * b)
        c2 = 2 * beta * b + Frac(3 + ln, 2 * (n + 1)) < Frac(1, 2) + Frac(n, 2 * (n + 1))
        if c1 and c2:
            n_max = n
            break
    if n_max is None:
        raise InfeasibleError("no admissible n_max below search cap")

    C_b = (b + 4) / (b - 1)
    C_R = 10 * b + 1
    c_star = 4 * n_max + 5

    limit = min(_eps_gamma_bounds(beta, b, n_max, C_b, C_R, c_star))
    if limit <= 0:
        raise InfeasibleError("eps_gamma constraint set is empty")
    k = 0
    while Frac(1, 1 << k) >= limit:
        k += 1
        if k > 10**6:
            raise InfeasibleError("no power-of-two eps_gamma found")
    eps = Frac(1, 1 << k)

    C_inf = 1 / (eps * (b - 1) * (n_max + 1))
    alpha = eps * (b - 1) / (2 * b)

    N_cut_small = ceil_frac(3 * b / (eps * (b - 1)) + Frac(15, 2) * b)
    N_cut_large = 2 * N_cut_small
    N_ind_t = ceil_frac(Frac(4) / (eps * (b - 1))) * N_cut_small

    lhs_v = 4 * b * N_ind_t + 8 + b * (C_R + 3) * eps * (b - 1) + 2 * beta * (b**3 - 1)
    N_ind_v = floor_frac(lhs_v / (eps * (b - 1))) + 1

    N_dec = floor_frac(8 * b / ((b - 1) * eps)) + 1

    ln = _log2_nmax_ceil(n_max)
    lhs_d = (
        b * (6 + 13 * N_ind_v)
        + 2 * beta * b**2
        + (2 + ln) * (Frac(b - 1, 1) / (2 * (n_max + 1)) + eps * (b - 1) * (9 + C_b))
    )
    d_pot = floor_frac(lhs_d / (eps * (b - 1))) + 2  # (d-1)*eps*(b-1) > lhs

    budget = (2 * N_cut_small + N_cut_large + 14 * N_ind_v + 2 * d_pot + 2 * N_dec + 12) * (
        1 << (n_max + 1)
    )
    N_fin = floor_frac(Frac(2, 3) * budget) + 1  # smallest with (3/2) N_fin > budget

    return GlobalConstants(
        n_max=n_max, C_b=C_b, C_R=C_R, c_star=c_star, eps_gamma=eps, C_inf=C_inf,
        alpha=alpha, N_cut_small=N_cut_small, N_cut_large=N_cut_large, N_ind_t=N_ind_t,
        N_ind_v=N_ind_v, N_dec=N_dec, d_pot=d_pot, N_fin=N_fin,
    )


@dataclass(frozen=True)
class QSchedule:
    q: int
    inputs: ParamInputs
    log2_lambda_q: int
    log2_delta_q: Fraction
    log2_Gamma_q1: Fraction
    log2_Theta_q1: Fraction
    log2_tau_q_inv: Fraction
    log2_lambda_tilde_q: Fraction
    log2_tau_tilde_q_inv: Fraction
    # cross-level extras used by level parameters and the ledger
    log2_Theta_q: Fraction
    log2_Gamma_q: Fraction


class ScheduleBook:
    """Lazy evaluator for the q-dependent schedule of one (constants, inputs) pair."""

    def __init__(self, consts: GlobalConstants, inputs: ParamInputs):
        self.consts = consts
        self.inputs = inputs
        self._lam: dict[int, int] = {}

    def log2_lambda(self, q: int) -> int:
        if q < -1:
            raise RangeError("q >= -1 required")
        if q not in self._lam:
            self._lam[q] = ceil_frac(self.inputs.b**q * self.inputs.a_exp)
        return self._lam[q]

    def log2_Theta(self, q: int) -> Fraction:
        return Frac(self.log2_lambda(q) - self.log2_lambda(q - 1))

    def log2_Gamma(self, q: int) -> Fraction:
        return self.consts.eps_gamma * self.log2_Theta(q)

    def log2_delta(self, q: int) -> Fraction:
        beta, b = self.inputs.beta, self.inputs.b
        return (b + 1) * beta * self.log2_lambda(1) - 2 * beta * self.log2_lambda(q)

    def log2_lambda_tilde(self, q: int) -> Fraction:
        return self.log2_lambda(q) + 5 * self.log2_Gamma(q + 1)

    def log2_tau_inv(self, q: int) -> Fraction:
        return (
            Frac(1, 2) * self.log2_delta(q)
            + self.log2_lambda_tilde(q)
            + (self.consts.c_star + 6) * self.log2_Gamma(q + 1)
        )

    def log2_tau_tilde_inv(self, q: int) -> Fraction:
        return self.log2_tau_inv(q) + 3 * self.log2_lambda_tilde(q) + self.log2_lambda_tilde(q + 1)

    def schedule(self, q: int) -> QSchedule:
        if q < 0:
            raise RangeError("q >= 0 required")
        return QSchedule(
            q=q,
            inputs=self.inputs,
            log2_lambda_q=self.log2_lambda(q),
            log2_delta_q=self.log2_delta(q),
            log2_Gamma_q1=self.log2_Gamma(q + 1),
            log2_Theta_q1=self.log2_Theta(q + 1),
            log2_tau_q_inv=self.log2_tau_inv(q),
            log2_lambda_tilde_q=self.log2_lambda_tilde(q),
            log2_tau_tilde_q_inv=self.log2_tau_tilde_inv(q),
            log2_Theta_q=self.log2_Theta(q),
            log2_Gamma_q=self.log2_Gamma(q),
        )


def schedule(consts: GlobalConstants, inputs: ParamInputs, q: int) -> QSchedule:
    return ScheduleBook(consts, inputs).schedule(q)


def upsilon(n: int, n_max: int) -> int:
    """Step-count bookkeeping over higher-order stress levels."""
    if n < 0 or n > n_max:
        raise RangeError(f"n={n} outside [0, {n_max}]")
    if n == 0:
        return 0
    if n == n_max:
        return 2 + _log2_nmax_ceil(n_max)
    k = 1
    while Frac((1 << k) - 1, 1 << k) * n_max < n:
        k += 1
    return k


def r_of(n: int, n_max: int) -> Fraction:
    """Level threshold above which the addition at level n produces new stresses."""
    if n < 0 or n > n_max:
        raise RangeError(f"n={n} outside [0, {n_max}]")
    if n == 0:
        return Frac(0)
    if n == n_max:
        return Frac(n_max)  # sentinel: no level exceeds it
    return Frac(n_max + n, 2)


@dataclass(frozen=True)
class LevelParams:
    n: int
    log2_lambda_qn: int
    log2_r_q1n: Fraction
    log2_delta_q1n: Fraction
    c_star_n: int
    N_fin_n: Fraction
    upsilon_n: int
    r_of_n: Fraction
    i_max: int
    j_max: int


def n_fin_table(consts: GlobalConstants) -> list[Fraction]:
    """N_fin,n for n = 0..n_max (exact; n=0 may be half-integral)."""
    c = consts
    table = [Frac(3, 2) * c.N_fin]
    for n in range(1, c.n_max + 1):
        half = (table[-1] - c.N_cut_small - c.N_cut_large - 6) / 2
        table.append(Frac(floor_frac(half) - c.d_pot))
    return table


def _log2_lambda_qn(book: ScheduleBook, q: int, n: int) -> int:
    c = book.consts
    Lq, Lq1 = book.log2_lambda(q), book.log2_lambda(q + 1)
    if n == 0:
        return ceil_frac((1 + 6 * (book.inputs.b - 1) * c.eps_gamma) * Lq)
    M = c.n_max
    w = Frac(n, 2 * (M + 1))
    return ceil_frac((Frac(1, 2) - w) * Lq + (Frac(1, 2) + w) * Lq1)


def _log2_lambda_r(book: ScheduleBook, q: int, n: int) -> int:
    """log2 of lambda_{q+1} * r_{q+1,n}; an exact integer by construction."""
    return ceil_frac(
        Frac(_log2_lambda_qn(book, q, n) + book.log2_lambda(q + 1), 2) - 2 * book.log2_Gamma(q + 1)
    )


def _log2_delta_q1n(book: ScheduleBook, q: int, n: int) -> Fraction:
    c = book.consts
    G = book.log2_Gamma(q + 1)
    d0 = book.log2_delta(q + 1) + c.C_R * book.log2_Gamma(q)
    if n == 0:
        return d0
    if n == 1:
        return (
            d0
            + book.log2_lambda_tilde(q)
            - Frac(book.log2_lambda(q) + book.log2_lambda(q + 1), 2)
            + 9 * G
        )
    step = Frac(book.log2_Theta(q + 1), 2 * (c.n_max + 1)) + 9 * G
    return (
        d0
        + book.log2_lambda_tilde(q)
        - _log2_lambda_qn(book, q, n - 1)
        + 8 * G
        + upsilon(n, c.n_max) * step
    )


def _i_max(book: ScheduleBook, q: int) -> int:
    c = book.consts
    G = book.log2_Gamma(q + 1)
    cap = c.C_inf * G + Frac(1, 2) * book.log2_Theta(q) - Frac(1, 2) * book.log2_delta(q)
    return max(0, floor_frac(cap / G))


def _j_max(book: ScheduleBook, q: int, n: int) -> int:
    c = book.consts
    G = book.log2_Gamma(q + 1)
    num = (
        c.C_inf * book.log2_Gamma(q)
        - _log2_delta_q1n(book, q, n)
        + (14 * upsilon(n, c.n_max) + 2) * G
    )
    return max(1, floor_frac(Frac(ceil_frac(num / G), 2)))


def _level_params(book: ScheduleBook, q: int, n: int, nfin=None) -> LevelParams:
    c = book.consts
    if not 0 <= n <= c.n_max:
        raise RangeError(f"n={n} outside [0, {c.n_max}]")
    nfin = nfin if nfin is not None else n_fin_table(c)
    lam_r = _log2_lambda_r(book, q, n)
    return LevelParams(
        n=n,
        log2_lambda_qn=_log2_lambda_qn(book, q, n),
        log2_r_q1n=Frac(lam_r - book.log2_lambda(q + 1)),
        log2_delta_q1n=_log2_delta_q1n(book, q, n),
        c_star_n=c.c_star - 4 * n,
        N_fin_n=nfin[n],
        upsilon_n=upsilon(n, c.n_max),
        r_of_n=r_of(n, c.n_max),
        i_max=_i_max(book, q),
        j_max=_j_max(book, q, n),
    )


def level_params(consts: GlobalConstants, sched_q: QSchedule, sched_q1: QSchedule, n: int) -> LevelParams:
    """Per-(q, n) frequency, intermittency, and amplitude parameters."""
    if sched_q1.q != sched_q.q + 1:
        raise RangeError("sched_q1 must be the schedule at q+1")
    return _level_params(ScheduleBook(consts, sched_q.inputs), sched_q.q, n)


@dataclass
class LedgerEntry:
    inequality_id: str
    lhs_log2: Fraction
    rhs_log2: Fraction
    passed: bool
    margin_log2: Fraction
    strict: bool = False
    q: int | None = None
    n: int | None = None
    n_tilde: int | None = None

    def to_json(self):
        d = {
            "id": self.inequality_id,
            "lhs_log2": str(self.lhs_log2),
            "rhs_log2": str(self.rhs_log2),
            "pass": self.passed,
            "margin_log2": str(self.margin_log2),
        }
        for k, v in (("q", self.q), ("n", self.n), ("n_tilde", self.n_tilde)):
            if v is not None:
                d[k] = v
        return d


@dataclass
class LedgerReport:
    entries: list[LedgerEntry] = field(default_factory=list)

    @property
    def summary(self) -> bool:
        return all(e.passed for e in self.entries)

    def worst(self):
        return min(self.entries, key=lambda e: e.margin_log2) if self.entries else None

    def failures(self):
        return [e for e in self.entries if not e.passed]


@dataclass(frozen=True)
class GeometricConstants:
    """Symbolic geometric constants entering the placement admissibility check."""

    c_star_geom: Fraction = Frac(1)
    c_omega: Fraction = Frac(1)
    c_p: Fraction = Frac(1)
    c_eta: Fraction = Frac(1)

    def log2_product(self) -> Fraction:
        prod = Frac(self.c_star_geom) * Frac(self.c_omega) ** 2 * Frac(self.c_p)
        return Frac(0) if prod == 1 else _log2_upper(prod)


class LedgerEngine:
    """Evaluates the registered parameter inequalities in exact arithmetic.

    Inequalities whose derivation in the source construction absorbs implicit
    constants are given a slack of ``margin_gammas`` powers of Gamma_{q+1}.
    """

    def __init__(self, consts, inputs, margin_gammas: int = 1, geom: GeometricConstants | None = None):
        self.c = consts
        self.inputs = inputs
        self.m = margin_gammas
        self.geom = geom or GeometricConstants()
        self.book = ScheduleBook(consts, inputs)
        self._lv: dict[tuple[int, int], LevelParams] = {}
        self._nfin = n_fin_table(consts)

    def lv(self, q: int, n: int) -> LevelParams:
        key = (q, n)
        if key not in self._lv:
            self._lv[key] = _level_params(self.book, q, n, self._nfin)
        return self._lv[key]

    def check(self, q_range, stop_on_failure: bool = False) -> LedgerReport:
        report = LedgerReport()
        for entry in self._iter_entries(list(q_range)):
            report.entries.append(entry)
            if stop_on_failure and not entry.passed:
                break
        return report

    def _entry(self, id_, lhs, rhs, *, strict=False, margin=False, q=None, n=None, nt=None):
        slack = self.m * self.book.log2_Gamma(q + 1) if (margin and q is not None) else Frac(0)
        lhs, rhs_eff = Frac(lhs), Frac(rhs) + slack
        ok = lhs < rhs_eff if strict else lhs <= rhs_eff
        return LedgerEntry(id_, lhs, rhs_eff, ok, rhs_eff - lhs, strict, q, n, nt)

    def _iter_entries(self, q_range):
        c = self.c
        M = c.n_max
        E = self._entry

        # q-independent entries
        for n in range(M + 1):
            yield E("cstar-floor", 5, c.c_star - 4 * n, n=n)
        nfin = self._nfin
        Ncs, Ncl, d = c.N_cut_small, c.N_cut_large, c.d_pot
        for n in range(M + 1):
            half5 = floor_frac((nfin[n] - Ncs - Ncl - 5) / 2) - d
            yield E("nfin-chain-ind-t", c.N_ind_t, half5, n=n)
            yield E("nfin-chain-dec", 2 * c.N_dec + 4, half5, n=n)
            yield E("nfin-chain-14v", 14 * c.N_ind_v, nfin[n] - Ncs - Ncl - 2 * c.N_dec - 9, n=n)
            yield E("nfin-chain-6v-half", 6 * c.N_ind_v, floor_frac((nfin[n] - Ncs - Ncl - 6) / 2) - d, n=n)
            yield E("nfin-chain-6v-quarter", 6 * c.N_ind_v, floor_frac((nfin[n] - Ncs - Ncl - 7) / 4), n=n)
        for nt in range(M):
            nxt = floor_frac((nfin[nt] - Ncs - Ncl - 6) / 2) - d
            for n in range(nt + 1, M + 1):
                yield E("nfin-chain-pair", nfin[n], nxt, n=n, nt=nt)

        for q in q_range:
            if q < 1:
                raise RangeError("ledger q values must be >= 1")
            yield from self._gates_for_q(q)
            yield from self._entries_for_q(q)

    def _gates_for_q(self, q: int):
        c, bk, E = self.c, self.book, self._entry
        G = bk.log2_Gamma(q + 1)
        g = log2_two_pi_sqrt3_upper()
        yield E("gamma-exceeds-geometric", g, G / 2, strict=True, q=q)
        yield E("decoupling", 4 * bk.log2_lambda(q + 1), c.N_dec * (G - g), q=q)
        yield E("alpha-absorb", c.alpha * bk.log2_lambda(q + 1), G, q=q)

    def _entries_for_q(self, q: int):
        c, bk, E = self.c, self.book, self._entry
        M = c.n_max
        G = bk.log2_Gamma(q + 1)
        Gq = bk.log2_Gamma(q)
        L = bk.log2_lambda
        D1, D2 = bk.log2_delta(q + 1), bk.log2_delta(q + 2)
        T, TT, Lt = bk.log2_tau_inv, bk.log2_tau_tilde_inv, bk.log2_lambda_tilde

        yield E("tau-order-prev", T(q - 1) + (3 + c.c_star) * G, T(q), q=q)
        yield E("tau-tilde-lower", T(q) + 4 * Lt(q), TT(q), q=q)
        yield E("tau-tilde-upper", TT(q), T(q) + 3 * Lt(q) + Lt(q + 1), q=q)
        yield E("mollify-window", TT(q - 1) - T(q - 1), Frac(4 * L(q)), q=q)

        beta, b = self.inputs.beta, self.inputs.b
        imax_cap = 1 + c.C_inf + (Frac(1, 2) * (b - 1) + beta * b) / (c.eps_gamma * (b - 1) * b)
        yield E("imax-uniform", self.lv(q, 0).i_max, imax_cap, q=q)
        yield E(
            "divcor-gamma",
            c.C_inf * Gq + (14 * upsilon(M, M) + 7) * G,
            (c.C_inf - 1) * G,
            margin=True, q=q,
        )

        step = Frac(bk.log2_Theta(q + 1), 2 * (M + 1)) + 9 * G
        lqn_top = Frac(self.lv(q, M).log2_lambda_qn)

        for n in range(M + 1):
            lv = self.lv(q, n)
            Lqn, Rn, Dn = Frac(lv.log2_lambda_qn), lv.log2_r_q1n, lv.log2_delta_q1n
            U = lv.upsilon_n
            csn = lv.c_star_n

            yield E("tau-order-level", (csn + 6) * G + bk.log2_delta(q) / 2 + Lt(q), T(q), q=q, n=n)
            yield E("lambda-r-integral", 0, Rn + L(q + 1), q=q, n=n)
            yield E("intermittency-lower", Frac(L(q) - L(q + 1)), Rn, q=q, n=n)
            yield E("intermittency-upper", Rn, Frac(0), q=q, n=n)

            exp_cascade = n if n <= 1 else U + 1
            cascade_rhs = c.C_R * Gq + D1 + Lt(q) + 9 * G
            yield E("osc-cascade-entry", Dn + Lqn + 8 * G, cascade_rhs + exp_cascade * step, margin=True, q=q, n=n)
            yield E(
                "osc-cascade-absorb",
                cascade_rhs + (U + 1) * step - lqn_top,
                (c.C_R - 1) * G + D2,
                margin=True, q=q, n=n,
            )
            yield E("amplitude-bound", Dn / 2 + 5 * G, D1 / 2, margin=True, q=q, n=n)
            yield E(
                "linf-local",
                c.C_inf * Gq + (14 * U + 13) * G + Lqn - 2 * Rn - lqn_top,
                (c.C_inf - 2) * G,
                margin=True, q=q, n=n,
            )
            yield E(
                "linf-global",
                c.C_inf * Gq + (14 * U + 13) * G + Lqn - 2 * Rn - L(q + 1),
                (c.C_inf - 2) * G,
                margin=True, q=q, n=n,
            )
            yield E(
                "linf-velocity",
                c.C_inf / 2 * Gq + (7 * U + Frac(7, 2)) * G - Rn,
                (c.C_inf - 2) * G + bk.log2_Theta(q + 1) / 2,
                margin=True, q=q, n=n,
            )
            yield E("divcor-r2", 2 * Rn + Dn + 13 * G, (c.C_R - 1) * G + D2, margin=True, q=q, n=n)
            yield E("divcor-lam", Dn + 9 * G + Lqn - L(q + 1), (c.C_R - 1) * G + D2, margin=True, q=q, n=n)
            yield E(
                "transport-nash-l1",
                (c.C_b + 4) * G + Dn / 2 + T(q) + Rn - L(q + 1),
                (c.C_R - 1) * G + D2,
                margin=True, q=q, n=n,
            )
            yield E(
                "transport-nash-linf",
                c.C_inf / 2 * Gq + (c.C_inf + 7 * upsilon(M, M) + 21 + 4 * n) * G
                + bk.log2_Theta(q) / 2 + L(q) - Rn - L(q + 1),
                (c.C_inf - 1) * G,
                margin=True, q=q, n=n,
            )
            dpot_tail = -(c.d_pot - 1) * G + 12 * c.N_ind_v * L(q + 1)
            yield E(
                "dpot-gate-transport",
                Lt(q) + 2 * L(q + 1) + U * (Frac(bk.log2_Theta(q + 1), 2 * (M + 1)) + (9 + c.C_b) * G) + dpot_tail,
                D2 - 10 * L(q + 1),
                margin=True, q=q, n=n,
            )
            yield E(
                "dpot-gate-amplitude",
                Dn + (c.C_b + 5) * G + Rn + Lqn + L(q + 1) + dpot_tail,
                D2 - 10 * L(q + 1),
                margin=True, q=q, n=n,
            )
            yield E(
                "placement-admissibility",
                self.geom.log2_product() + 3 * G + 2 * Rn,
                Lqn - L(q + 1),
                margin=True, q=q, n=n,
            )
            yield E("jmax-bound", 2 * lv.j_max * G, c.C_inf * Gq - Dn + (14 * U + 3) * G, q=q, n=n)

        for nt in range(M):
            threshold = r_of(nt, M)
            for n in range(M + 1):
                if n <= 2 or Frac(n) <= threshold:
                    continue
                yield E(
                    "osc-cascade-step",
                    self.lv(q, nt).log2_delta_q1n + self.lv(q, nt).log2_lambda_qn + 9 * G
                    - self.lv(q, n - 1).log2_lambda_qn,
                    self.lv(q, n).log2_delta_q1n,
                    margin=True, q=q, n=n, nt=nt,
                )


def check_ledger(consts, inputs, q_range, margin_gammas: int = 1, geom=None) -> LedgerReport:
    """One report entry per registered inequality per applicable (q, n, n~) tuple."""
    return LedgerEngine(consts, inputs, margin_gammas, geom).check(list(q_range))


def _fast_gates_pass(consts, inputs, q_range) -> bool:
    bk = ScheduleBook(consts, inputs)
    g = log2_two_pi_sqrt3_upper()
    for q in q_range:
        G = bk.log2_Gamma(q + 1)
        if not G / 2 > g:
            return False
        if not 4 * bk.log2_lambda(q + 1) <= consts.N_dec * (G - g):
            return False
    return True


def minimal_a(consts, beta, b, q_range, cap: int = 1 << 31, margin_gammas: int = 1) -> int:
    """Smallest a_exp whose ledger passes over q_range, verified monotone at +1.

    The cheap frequency gates bracket the answer first; the full ledger then
    refines, so only a handful of complete evaluations are needed.
    """
    q_range = list(q_range)

    def full_pass(a: int) -> bool:
        inp = ParamInputs(beta=beta, b=b, a_exp=a)
        return LedgerEngine(consts, inp, margin_gammas).check(q_range, stop_on_failure=True).summary

    def fast(a: int) -> bool:
        return _fast_gates_pass(consts, ParamInputs(beta=beta, b=b, a_exp=a), q_range)

    hi = 1
    while hi <= cap and not fast(hi):
        hi *= 2
    if hi > cap:
        inp = ParamInputs(beta=beta, b=b, a_exp=cap)
        worst = LedgerEngine(consts, inp, margin_gammas).check(q_range).worst()
        raise NotFoundError(
            f"no a_exp <= {cap} satisfies the registered inequalities",
            worst_id=worst.inequality_id if worst else None,
            worst_margin=worst.margin_log2 if worst else None,
        )
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if fast(mid):
            hi = mid
        else:
            lo = mid

    a = hi
    while a <= cap and not full_pass(a):
        a += max(1, a // 1024)
    if a > cap:
        raise NotFoundError(f"no a_exp <= {cap} passes the full ledger")

    lo2, hi2 = lo, a
    while hi2 - lo2 > 1:
        mid = (lo2 + hi2) // 2
        if full_pass(mid):
            hi2 = mid
        else:
            lo2 = mid
    a = hi2

    if not full_pass(a + 1):
        raise InfeasibleError(f"ledger passing is not monotone at a_exp={a}+1")
    return a


@dataclass(frozen=True)
class RegularityReport:
    p_star: Fraction
    theta: Fraction
    s_max: Fraction
    lebesgue_index: Fraction
    l3_ok: bool


def besov_report(beta, b) -> RegularityReport:
    """Interpolated L^3-based regularity summary for a given (beta, b).

    Accepts the full open range beta in (0, 1/2) so the degenerate theta = 0
    marker at beta = 1/4 is reachable.
    """
    beta, b = Frac(beta), Frac(b)
    if not (0 < beta < Frac(1, 2)):
        raise DomainError("beta must lie in (0, 1/2)")
    if not (1 < b < Frac(3, 2)):
        raise DomainError("b must lie in (1, 3/2)")
    p_star = 2 + 8 * beta * b / ((b - 1) * (b * (b - 1) + 2))
    theta = (4 * beta - 1) / (3 * beta)
    s_max = (4 * beta - 1) / 3
    lebesgue = (2 - 2 * beta) / (1 - 2 * beta)
    return RegularityReport(p_star=p_star, theta=theta, s_max=s_max,
                            lebesgue_index=lebesgue, l3_ok=lebesgue < p_star)
