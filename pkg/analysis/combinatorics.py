"""
Generating functions of shuffle expressions
Exact coefficients of R_k (expression count), L_k (letter count) and P_k
(sum of the p(α) bound on |π(α)|) by their convolution recurrences, plus the
square-root singularity asymptotics and the log₂(4/3) limit.

    R = z + kz + 3zR² + zR              R = (1 - z - √Δ)/(6z)
    L = kz + 6zLR + zL                  L = kz/√Δ
    P = kz + 6zPR + zP + zP²            P = (√Δ - √Δ')/(2z)
    Δ = 1 - 2z - (11+12k)z²             Δ' = 1 - 2z - (11+16k)z²
"""

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import CoefficientGuardError, EnumerationGuardError
from core.syntax import (BINARY_OPS, Alphabet, Expr, binary, eps, star, sym)
from utils.config import setting
from utils.logger import logger

LOG2_FOUR_THIRDS = math.log2(4 / 3)


@dataclass(frozen=True)
class CoeffTable:
    """Exact coefficients [zⁿ]R_k, [zⁿ]L_k, [zⁿ]P_k for n = 0..n_max"""
    k: int
    n_max: int
    r: Tuple[int, ...]
    l: Tuple[int, ...]
    p: Tuple[int, ...]

    def rows(self) -> Iterator[Tuple[int, int, int, int, int]]:
        for n in range(self.n_max + 1):
            yield (n, self.k, self.r[n], self.l[n], self.p[n])


def _convolve(a: Sequence[int], b: Sequence[int], m: int) -> int:
    """Σ_{i+j=m} a[i]·b[j]"""
    return sum(a[i] * b[m - i] for i in range(m + 1))


def coefficients(k: int, n_max: int, max_n: Optional[int] = None) -> CoeffTable:
    """
    Exact coefficient table

    Args:
        k: Alphabet size (>= 1)
        n_max: Largest size (>= 1)
        max_n: Override of the configured order guard

    Returns:
        CoeffTable with r, l, p indexed 0..n_max

    Raises:
        CoefficientGuardError: n_max above the guard
    """
    if k < 1 or n_max < 1:
        raise ValueError(f"Need k >= 1 and n_max >= 1, got k={k}, n_max={n_max}")
    guard = setting('combinatorics', 'max_n', max_n)
    if n_max > guard:
        raise CoefficientGuardError("coefficient order", guard, f"requested {n_max}")

    r = [0] * (n_max + 1)
    l = [0] * (n_max + 1)
    p = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        m = n - 1
        r[n] = 3 * _convolve(r, r, m) + r[m]
        l[n] = 6 * _convolve(l, r, m) + l[m]
        p[n] = 6 * _convolve(p, r, m) + _convolve(p, p, m) + p[m]
        if n == 1:
            r[n] += 1 + k
            l[n] += k
            p[n] += k

    logger.debug(f"coefficients k={k} up to n={n_max}")
    return CoeffTable(k=k, n_max=n_max, r=tuple(r), l=tuple(l), p=tuple(p))


@lru_cache(maxsize=64)
def cached_coefficients(k: int, n_max: int) -> CoeffTable:
    return coefficients(k, n_max)


def enumerate_all(k: int, n: int, guard: Optional[int] = None) -> Iterator[Expr]:
    """
    Every ∅-free expression of size exactly n over the first k symbols

    Each expression is yielded exactly once: leaves, then stars, then the
    binary operators with every size split.

    Raises:
        EnumerationGuardError: r[n] above the guard
    """
    if n < 1:
        return
    limit = setting('combinatorics', 'enumeration_guard', guard)
    table = cached_coefficients(k, n)
    if table.r[n] > limit:
        raise EnumerationGuardError("enumeration", limit, f"r[{n}] = {table.r[n]}")

    leaves = [eps()] + [sym(s) for s in Alphabet.standard(k).names]

    def gen(size: int) -> Iterator[Expr]:
        if size == 1:
            yield from leaves
            return
        for child in gen(size - 1):
            yield star(child)
        for op in BINARY_OPS:
            for i in range(1, size - 1):
                for left in gen(i):
                    for right in gen(size - 1 - i):
                        yield binary(op, left, right)

    yield from gen(n)


def delta(k: float, z: float) -> float:
    """Δ_k(z) = 1 - 2z - (11+12k)z²"""
    return 1 - 2 * z - (11 + 12 * k) * z * z


def delta_prime(k: float, z: float) -> float:
    """Δ'_k(z) = 1 - 2z - (11+16k)z²"""
    return 1 - 2 * z - (11 + 16 * k) * z * z


def radii(k: float) -> Tuple[float, float]:
    """
    Radii of convergence (ρ_k, ρ'_k)

    ρ_k = (-1 + 2√(3+3k))/(11+12k),  ρ'_k = (-1 + 2√(3+4k))/(11+16k)
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    rho = (-1 + 2 * math.sqrt(3 + 3 * k)) / (11 + 12 * k)
    rho_prime = (-1 + 2 * math.sqrt(3 + 4 * k)) / (11 + 16 * k)
    return rho, rho_prime


@dataclass(frozen=True)
class AsymptoticReport:
    """Closed-form asymptotic averages at (k, n)"""
    k: float
    n: float
    rho: float
    rho_prime: float
    avL: float
    avP_log2: float
    ratio: float
    per_letter: float

    @property
    def avP(self) -> float:
        """avP itself; infinite when it exceeds the float range"""
        try:
            return 2.0 ** self.avP_log2
        except OverflowError:
            return math.inf

    def to_csv_row(self) -> List:
        return [_num(self.k), _num(self.n), repr(self.rho), repr(self.rho_prime),
                repr(self.avL), repr(self.avP_log2), repr(self.ratio), repr(self.per_letter)]


def _num(x: float):
    return int(x) if float(x).is_integer() else x


def log_asymptotic_coefficient(kind: str, k: float, n: float) -> float:
    """
    Natural log of the asymptotic estimate of [zⁿ]R_k, [zⁿ]L_k or [zⁿ]P_k

        [zⁿ]R ~ (3+3k)^¼/(6√π) · ρ^{-n-½} · (n+1)^{-3/2}
        [zⁿ]L ~ k/(2√π(3+3k)^¼) · ρ^{-n+½} · n^{-½}
        [zⁿ]P ~ ((3+4k)^¼ρ'^{-n-½} - (3+3k)^¼ρ^{-n-½})/(2√π) · (n+1)^{-3/2}
    """
    rho, rho_prime = radii(k)
    log_sqrt_pi = 0.5 * math.log(math.pi)

    if kind == 'r':
        return (0.25 * math.log(3 + 3 * k) - math.log(6) - log_sqrt_pi
                + (-n - 0.5) * math.log(rho) - 1.5 * math.log(n + 1))
    if kind == 'l':
        return (math.log(k) - math.log(2) - log_sqrt_pi - 0.25 * math.log(3 + 3 * k)
                + (-n + 0.5) * math.log(rho) - 0.5 * math.log(n))
    if kind == 'p':
        dominant = 0.25 * math.log(3 + 4 * k) + (-n - 0.5) * math.log(rho_prime)
        secondary = 0.25 * math.log(3 + 3 * k) + (-n - 0.5) * math.log(rho)
        return (dominant + math.log1p(-math.exp(secondary - dominant))
                - math.log(2) - log_sqrt_pi - 1.5 * math.log(n + 1))
    raise ValueError(f"Unknown coefficient kind: {kind!r}")


def asymptotic_coefficient(kind: str, k: float, n: float) -> float:
    """Asymptotic estimate itself; inf once it leaves the float range"""
    try:
        return math.exp(log_asymptotic_coefficient(kind, k, n))
    except OverflowError:
        return math.inf


def average_letters(k: float, n: float) -> float:
    """avL = 3kρ/√(3+3k) · (n+1)^{3/2}/n^{1/2}"""
    rho, _ = radii(k)
    return 3 * k * rho / math.sqrt(3 + 3 * k) * math.exp(1.5 * math.log(n + 1) - 0.5 * math.log(n))


def log2_average_pi(k: float, n: float) -> float:
    """
    log₂ avP for avP = [zⁿ]P/[zⁿ]R with the closed forms above

        avP = 3·(1 + ((3+4k)/(3+3k))^¼ · (ρ/ρ')^{n+½})

    evaluated in log space so that n = 10⁸ does not overflow.
    """
    rho, rho_prime = radii(k)
    exponent = (0.25 * math.log((3 + 4 * k) / (3 + 3 * k))
                + (n + 0.5) * math.log(rho / rho_prime))
    return (math.log(3) + float(np.logaddexp(0.0, exponent))) / math.log(2)


def asymptotics(k: float, n: float) -> AsymptoticReport:
    """
    Evaluate the closed asymptotic forms at (k, n)

    ratio = log₂(avP)/avL and per_letter = avP^{1/avL}; both tend to
    log₂(4/3) and 4/3 as n and k grow.
    """
    if k < 1 or n < 1:
        raise ValueError(f"Need k >= 1 and n >= 1, got k={k}, n={n}")
    rho, rho_prime = radii(k)
    av_l = average_letters(k, n)
    av_p_log2 = log2_average_pi(k, n)
    ratio = av_p_log2 / av_l
    return AsymptoticReport(k=k, n=n, rho=rho, rho_prime=rho_prime, avL=av_l,
                            avP_log2=av_p_log2, ratio=ratio, per_letter=2.0 ** ratio)


def ratio_limit(k: float) -> float:
    """lim_{n→∞} log₂(avP)/avL at fixed k: log₂(ρ/ρ')·√(3+3k)/(3kρ)"""
    rho, rho_prime = radii(k)
    return math.log2(rho / rho_prime) * math.sqrt(3 + 3 * k) / (3 * k * rho)


def coefficient_asymptotic_agreement(k: int, n: int,
                                     table: Optional[CoeffTable] = None) -> Dict[str, float]:
    """
    Relative error |exact - asymptotic|/exact of the estimates at size n

    Returns:
        {'r': ..., 'l': ..., 'p': ...}
    """
    table = table or cached_coefficients(k, n)
    if n > table.n_max:
        raise ValueError(f"n={n} beyond table order {table.n_max}")
    errors = {}
    for kind in ('r', 'l', 'p'):
        exact = getattr(table, kind)[n]
        log_ratio = log_asymptotic_coefficient(kind, k, n) - math.log(exact)
        errors[kind] = abs(math.expm1(log_ratio))
    return errors


def series_sqrt(coeffs: Sequence, n: int) -> List[Fraction]:
    """
    First n+1 coefficients of √f for a power series f with f(0) = 1

    s₀ = 1,  s_m = (f_m - Σ_{i=1}^{m-1} s_i s_{m-i}) / 2
    """
    f = [Fraction(c) for c in coeffs] + [Fraction(0)] * max(0, n + 1 - len(coeffs))
    if f[0] != 1:
        raise ValueError("series_sqrt needs a constant term of 1")
    s = [Fraction(1)] + [Fraction(0)] * n
    for m in range(1, n + 1):
        s[m] = (f[m] - sum(s[i] * s[m - i] for i in range(1, m))) / 2
    return s


def series_reciprocal(coeffs: Sequence, n: int) -> List[Fraction]:
    """First n+1 coefficients of 1/f for f(0) ≠ 0"""
    f = [Fraction(c) for c in coeffs] + [Fraction(0)] * max(0, n + 1 - len(coeffs))
    t = [Fraction(1) / f[0]] + [Fraction(0)] * n
    for m in range(1, n + 1):
        t[m] = -sum(f[i] * t[m - i] for i in range(1, m + 1)) / f[0]
    return t


def _as_integers(values: Iterable[Fraction]) -> Tuple[int, ...]:
    out = []
    for v in values:
        if v.denominator != 1:
            raise ArithmeticError(f"Non-integer series coefficient {v}")
        out.append(int(v))
    return tuple(out)


def closed_form_r(k: int, n_max: int) -> Tuple[int, ...]:
    """Coefficients of (1 - z - √Δ_k)/(6z), n = 0..n_max"""
    s = series_sqrt([1, -2, -(11 + 12 * k)], n_max + 1)
    numerator = [-c for c in s]
    numerator[0] += 1
    numerator[1] -= 1
    return _as_integers(numerator[m + 1] / 6 for m in range(n_max + 1))


def closed_form_l(k: int, n_max: int) -> Tuple[int, ...]:
    """Coefficients of kz/√Δ_k"""
    s = series_sqrt([1, -2, -(11 + 12 * k)], n_max)
    t = series_reciprocal(s, n_max)
    return _as_integers([Fraction(0)] + [k * t[m - 1] for m in range(1, n_max + 1)])


def closed_form_p(k: int, n_max: int) -> Tuple[int, ...]:
    """Coefficients of (√Δ_k - √Δ'_k)/(2z)"""
    s = series_sqrt([1, -2, -(11 + 12 * k)], n_max + 1)
    s_prime = series_sqrt([1, -2, -(11 + 16 * k)], n_max + 1)
    return _as_integers((s[m + 1] - s_prime[m + 1]) / 2 for m in range(n_max + 1))


SERIES_HEADER = ["n", "k", "r", "l", "p"]
ASYMPTOTICS_HEADER = ["k", "n", "rho", "rho_prime", "avL", "avP_log2", "ratio", "per_letter"]


def _write_csv(header: List[str], rows: Iterable[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def series_csv(table: CoeffTable, start: int = 0) -> str:
    """`n,k,r,l,p` rows with exact decimal integers"""
    return _write_csv(SERIES_HEADER, (row for row in table.rows() if row[0] >= start))


def asymptotics_csv(reports: Iterable[AsymptoticReport]) -> str:
    return _write_csv(ASYMPTOTICS_HEADER, (rep.to_csv_row() for rep in reports))
