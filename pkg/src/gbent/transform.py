"""Generalized Walsh-Hadamard spectra, exactly.

Spectra are stored UNNORMALIZED: values[u] = S_f(u) = p^(n/2) H_f(u)
= sum_x zeta_p^(-u.x) zeta_q^(f(x)), which is always a cyclotomic integer.
The irrational normalizer p^(-n/2) is reintroduced symbolically (through
gauss_sqrt) only at classification time.

Three evaluation paths are provided and cross-checked against each other
by the test suite:

  * wht_naive       - direct double loop over (u, x); the trust anchor.
  * wht_pary_fast   - radix-p decimation over Z_p^n for p-ary functions,
                      run in the group ring Z[Z_p] where multiplying by a
                      power of zeta_p is a cyclic shift.
  * wht_composed    - assembles the spectrum of a composed function from
                      the p^(k-1) spectra of its p-ary digit combinations,
                      weighted by the carry coefficients gamma_a and divided
                      exactly by p^(k-1).

The gamma_a coefficient is the character-weighted sum of p^k-th roots of
unity sum_v zeta_p^(-a.v) zeta_(p^k)^(sum_j v_j p^(k-1-j)); it converts
between a radix-p digit expansion and its component spectra. A product
form with one factor per digit evaluates the same element in O(k p) terms,
and a zeta_q analogue covers targets Z_q with p^(k-1) < q < p^k.

All divisions here are exact integer divisions with a hard error on any
remainder: the identities guarantee divisibility, so a failure is a bug
(or, for inverse_wht, an input that is not a valid spectrum).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import lcm
from typing import Optional, Sequence

from .cyclotomic import CycInt, _context
from .errors import ExactDivisionError, InternalConsistencyError
from .gbfunc import ComponentTuple, GBFunction, PAryFunction, all_points, combine


@dataclass(frozen=True)
class Spectrum:
    """Unnormalized spectrum of a function Z_p^n -> Z_q, indexed by point."""

    p: int
    n: int
    q: int
    modulus: int
    values: tuple[CycInt, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != self.p**self.n:
            raise ValueError("spectrum length does not match p^n")
        for v in self.values:
            if v.modulus != self.modulus:
                raise ValueError(
                    f"spectral value modulus {v.modulus} != {self.modulus}"
                )


@lru_cache(maxsize=8)
def _dot_table(p: int, n: int) -> tuple[tuple[int, ...], ...]:
    """dot(u, x) mod p for all point-index pairs."""
    points = all_points(p, n)
    return tuple(
        tuple(sum(ui * xi for ui, xi in zip(u, x)) % p for x in points)
        for u in points
    )


def _counts_to_cycint(modulus: int, counts: Sequence[int]) -> CycInt:
    """Canonicalize an integer combination of zeta_modulus^e, e = 0..M-1."""
    ctx = _context(modulus)
    acc = [0] * ctx.degree
    for e, c in enumerate(counts):
        if c:
            row = ctx.power_table[e]
            for i, r in enumerate(row):
                acc[i] += c * r
    return CycInt(modulus, acc)


def _naive_rows(
    p: int, n: int, q: int, table: Sequence[int], lo: int, hi: int
) -> list[tuple[int, ...]]:
    """Raw exponent counts of S(u) for point indices lo..hi-1."""
    modulus = lcm(4, q)
    step_p = modulus // p
    step_q = modulus // q
    dots = _dot_table(p, n)
    size = p**n
    shifted = [(table[x] * step_q) % modulus for x in range(size)]
    rows = []
    for u in range(lo, hi):
        du = dots[u]
        counts = [0] * modulus
        for x in range(size):
            counts[(shifted[x] - du[x] * step_p) % modulus] += 1
        rows.append(tuple(counts))
    return rows


def _naive_chunk(args) -> list[tuple[int, ...]]:
    # Top-level so worker processes can unpickle it.
    return _naive_rows(*args)


def wht_naive(f: GBFunction, jobs: int = 1) -> Spectrum:
    """Direct evaluation of S(u) = sum_x zeta_p^(-u.x) zeta_q^(f(x)).

    With jobs > 1 the points u are fanned across a process pool; chunks are
    merged in point-index order, so the result is identical to jobs = 1.
    """
    modulus = lcm(4, f.q)
    size = f.p**f.n
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    if jobs == 1 or size < 64:
        rows = _naive_rows(f.p, f.n, f.q, f.table, 0, size)
    else:
        from concurrent.futures import ProcessPoolExecutor

        bounds = [(size * i) // jobs for i in range(jobs + 1)]
        chunks = [
            (f.p, f.n, f.q, f.table, bounds[i], bounds[i + 1])
            for i in range(jobs)
            if bounds[i] < bounds[i + 1]
        ]
        rows = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_naive_chunk, chunks):
                rows.extend(part)
    values = tuple(_counts_to_cycint(modulus, row) for row in rows)
    return Spectrum(f.p, f.n, f.q, modulus, values)


def _pary_digit_spectra(g: PAryFunction) -> list[tuple[int, ...]]:
    """S(u) for a p-ary function as vectors of counts over zeta_p^0..zeta_p^(p-1).

    Radix-p decimation: one pass per coordinate, each pass combining the p
    cosets of that coordinate with kernel zeta_p^(-t d), i.e. cyclic shifts
    in the group ring Z[Z_p]. Output order is the big-endian point index.
    """
    p, n = g.p, g.n
    size = p**n
    vecs: list[list[int]] = []
    for x in range(size):
        v = [0] * p
        v[g.table[x]] = 1
        vecs.append(v)
    for axis in range(n):
        stride = p ** (n - 1 - axis)
        for prefix in range(p**axis):
            base0 = prefix * stride * p
            for suffix in range(stride):
                base = base0 + suffix
                olds = [vecs[base + d * stride] for d in range(p)]
                for t in range(p):
                    new = [0] * p
                    for d in range(p):
                        shift = (-t * d) % p
                        o = olds[d]
                        for e in range(p):
                            new[(e + shift) % p] += o[e]
                    vecs[base + t * stride] = new
    return [tuple(v) for v in vecs]


def _digit_vector_to_cycint(vec: Sequence[int], p: int, modulus: int) -> CycInt:
    ctx = _context(modulus)
    step = modulus // p
    acc = [0] * ctx.degree
    for e, c in enumerate(vec):
        if c:
            row = ctx.power_table[(e * step) % modulus]
            for i, r in enumerate(row):
                acc[i] += c * r
    return CycInt(modulus, acc)


def wht_pary_fast(g: PAryFunction, modulus: Optional[int] = None) -> Spectrum:
    """Butterfly evaluation of the spectrum of a p-ary function.

    Agrees entrywise with wht_naive on the embedding of g as a function
    into Z_p. The optional modulus (a multiple of lcm(4, p)) lets callers
    receive the values already embedded in a larger working ring.
    """
    base = lcm(4, g.p)
    if modulus is None:
        modulus = base
    elif modulus % base != 0:
        raise ValueError(f"modulus {modulus} is not a multiple of {base}")
    digit_rows = _pary_digit_spectra(g)
    values = tuple(
        _digit_vector_to_cycint(row, g.p, modulus) for row in digit_rows
    )
    return Spectrum(g.p, g.n, g.p, modulus, values)


def inverse_wht(s: Spectrum) -> tuple[CycInt, ...]:
    """Recover the values zeta_q^(f(x)) from a spectrum, exactly.

    Computes (1/p^n) sum_u zeta_p^(u.x) S(u) by exact division; a division
    failure means the input was not the spectrum of a Z_q-valued function.
    """
    p, n, modulus = s.p, s.n, s.modulus
    size = p**n
    step_p = modulus // p
    dots = _dot_table(p, n)
    ctx = _context(modulus)
    out = []
    for x in range(size):
        counts = [0] * modulus
        for u in range(size):
            shift = (dots[u][x] * step_p) % modulus
            coeffs = s.values[u].coeffs
            for j, c in enumerate(coeffs):
                if c:
                    counts[(j + shift) % modulus] += c
        total = _counts_to_cycint(modulus, counts)
        out.append(total.divide_exact(size))
    return tuple(out)


def _vector_rank(p: int, v: Sequence[int]) -> int:
    """Big-endian rank of a digit vector (v_1 most significant)."""
    r = 0
    for vi in v:
        r = r * p + vi
    return r


def _rank_vector(p: int, length: int, rank: int) -> tuple[int, ...]:
    out = []
    for _ in range(length):
        out.append(rank % p)
        rank //= p
    return tuple(reversed(out))


def _check_gamma_params(p: int, k: int, a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(a)
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(a) != k - 1:
        raise ValueError(f"expected {k - 1} coefficients, got {len(a)}")
    for ai in a:
        if not 0 <= ai < p:
            raise ValueError(f"coefficient {ai} out of range for Z_{p}")
    return a


def gamma_sum(p: int, k: int, a: Sequence[int], modulus: Optional[int] = None) -> CycInt:
    """gamma_a by its defining sum over v in Z_p^(k-1)."""
    a = _check_gamma_params(p, k, a)
    if modulus is None:
        modulus = lcm(4, p**k)
    step_p = modulus // p
    step_pk = modulus // p**k
    counts = [0] * modulus
    for rank in range(p ** (k - 1)):
        v = _rank_vector(p, k - 1, rank)
        dot = sum(ai * vi for ai, vi in zip(a, v)) % p
        e = ((-dot) % p) * step_p + rank * step_pk
        counts[e % modulus] += 1
    return _counts_to_cycint(modulus, counts)


def gamma_product(
    p: int, k: int, a: Sequence[int], modulus: Optional[int] = None
) -> CycInt:
    """gamma_a as a product of k-1 digit factors; O(k p) terms.

    Factor i is sum_(l in Z_p) zeta_p^(l a_i) zeta_(p^(i+1))^((p-l) mod p);
    substituting v_i = (p-l) mod p recovers exactly the defining sum, which
    the test suite certifies by comparing against gamma_sum.
    """
    a = _check_gamma_params(p, k, a)
    if modulus is None:
        modulus = lcm(4, p**k)
    step_p = modulus // p
    result = CycInt.one(modulus)
    for i, ai in enumerate(a, start=1):
        step_i = modulus // p ** (i + 1)
        counts = [0] * modulus
        for l in range(p):
            e = ((l * ai) % p) * step_p + ((p - l) % p) * step_i
            counts[e % modulus] += 1
        result = result * _counts_to_cycint(modulus, counts)
    return result


def gamma_general(
    p: int, k: int, q: int, a: Sequence[int], modulus: Optional[int] = None
) -> CycInt:
    """The zeta_q analogue of gamma_a for a target ring Z_q, p | q <= p^k.

    Coincides with gamma_sum at the prime-power boundary q = p^k.
    """
    a = _check_gamma_params(p, k, a)
    if q % p != 0 or not (p ** (k - 1) < q <= p**k):
        raise ValueError(f"q={q} incompatible with p={p}, k={k}")
    if modulus is None:
        modulus = lcm(4, q)
    step_p = modulus // p
    step_q = modulus // q
    counts = [0] * modulus
    for rank in range(p ** (k - 1)):
        v = _rank_vector(p, k - 1, rank)
        dot = sum(ai * vi for ai, vi in zip(a, v)) % p
        e_digit = sum(vi * p ** (k - 1 - j) for j, vi in enumerate(v, start=1))
        e = ((-dot) % p) * step_p + (e_digit % q) * step_q
        counts[e % modulus] += 1
    return _counts_to_cycint(modulus, counts)


@dataclass(frozen=True)
class GammaTable:
    """All gamma coefficients for fixed (p, k, q), keyed by the vector a."""

    p: int
    k: int
    q: int
    modulus: int
    entries: dict[tuple[int, ...], CycInt]


@lru_cache(maxsize=None)
def gamma_table(p: int, k: int, q: int, modulus: Optional[int] = None) -> GammaTable:
    if modulus is None:
        modulus = lcm(4, q)
    prime_power = q == p**k
    entries = {}
    for rank in range(p ** (k - 1)):
        a = _rank_vector(p, k - 1, rank)
        if prime_power:
            entries[a] = gamma_product(p, k, a, modulus)
        else:
            entries[a] = gamma_general(p, k, q, a, modulus)
    return GammaTable(p, k, q, modulus, entries)


def component_spectra(t: ComponentTuple, modulus: Optional[int] = None) -> dict:
    """Digit-combination spectra {a: Spectrum} for all a in Z_p^(k-1)."""
    if modulus is None:
        modulus = lcm(4, t.p)
    out = {}
    for rank in range(t.p ** (t.k - 1)):
        a = _rank_vector(t.p, t.k - 1, rank)
        out[a] = wht_pary_fast(combine(t, a), modulus)
    return out


def wht_composed(t: ComponentTuple) -> Spectrum:
    """Spectrum of compose(t) assembled from its digit-combination spectra.

    S_f(u) = (1/p^(k-1)) sum_a S_(f_0 + sum a_i f_i)(u) gamma_a, with the
    gamma table shared across all u. Equal entrywise to wht_naive(compose(t)).
    """
    p, k, q = t.p, t.k, t.q
    modulus = lcm(4, q)
    step_p = modulus // p
    size = p**t.n
    gammas = gamma_table(p, k, q)
    divisor = p ** (k - 1)
    # Per combination: digit-count rows plus the sparse exponent form of gamma.
    parts = []
    for rank in range(divisor):
        a = _rank_vector(p, k - 1, rank)
        digit_rows = _pary_digit_spectra(combine(t, a))
        gamma_coeffs = gammas.entries[a].coeffs
        parts.append((digit_rows, gamma_coeffs))
    values = []
    for u in range(size):
        counts = [0] * modulus
        for digit_rows, gamma_coeffs in parts:
            row = digit_rows[u]
            for e, c in enumerate(row):
                if c:
                    shift = (e * step_p) % modulus
                    for j, gc in enumerate(gamma_coeffs):
                        if gc:
                            counts[(j + shift) % modulus] += c * gc
        total = _counts_to_cycint(modulus, counts)
        try:
            values.append(total.divide_exact(divisor))
        except ExactDivisionError as e:
            raise InternalConsistencyError(
                f"composed spectrum not divisible by p^(k-1) at point {u}: {e}"
            ) from None
    return Spectrum(t.p, t.n, t.q, modulus, tuple(values))


# -- spectrum dump format ------------------------------------------------------


def spectrum_records(s: Spectrum) -> list[tuple[tuple[int, ...], str, str]]:
    """(point, canonical text of S(u), norm) records in point-index order.

    The norm field is the plain integer whenever norm_sq(S(u)) is rational
    (always the case for gbent-shaped values); otherwise it falls back to
    the canonical polynomial text.
    """
    points = all_points(s.p, s.n)
    out = []
    for u, val in enumerate(s.values):
        norm = val.norm_sq()
        text = str(norm.as_int()) if norm.is_rational_integer() else str(norm)
        out.append((points[u], str(val), text))
    return out
