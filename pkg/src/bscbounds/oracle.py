"""Exhaustive ground truth on explicit small binary codes.

Everything in this module is exact: maximum-likelihood error probabilities
come from enumerating all 2^n channel outputs, covering multiplicities from
counting, and the small constant-weight maxima from an exact 0/1 packing
solve.  These values anchor the asymptotic bounds elsewhere in the
package — every analytic lower bound must sit below the enumerated error
probability on every code it is tested against, with no tolerance.

Words are stored as integer bitmasks.  Output-space enumeration is chunked
so the distance matrices stay cache-sized even at the n = 24 budget cap.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Sequence

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from .core import ChannelParam, DomainError, equidistant_radius

__all__ = [
    "BinaryCode",
    "CoverReport",
    "SizeBudgetError",
    "CodeFormatError",
    "repetition_code",
    "parity_code",
    "hamming74",
    "random_code",
    "parse_code",
    "load_code",
    "distance_distribution",
    "exact_pe_ml",
    "lower_bound_21",
    "sphere_packing_rhs_23",
    "z_pair_count",
    "cover_report",
    "restricted_cover_max",
    "proposition3_rhs",
    "johnson_upper",
    "exhaustive_max_constant_weight",
    "proposition4_check",
]

_ENUM_CAP = 24          # 2^n output enumeration budget
_CLIQUE_CAP = 10        # exhaustive constant-weight search budget
_CHUNK = 1 << 20


class SizeBudgetError(RuntimeError):
    """The requested enumeration exceeds the exhaustive size budget."""


class CodeFormatError(ValueError):
    """A code description failed validation."""


@dataclass(frozen=True)
class BinaryCode:
    """An explicit code: length n plus a tuple of distinct word bitmasks."""

    n: int
    words: tuple

    def __post_init__(self) -> None:
        if not 1 <= self.n:
            raise CodeFormatError(f"length must be positive, got {self.n!r}")
        if len(set(self.words)) != len(self.words):
            raise CodeFormatError("codewords must be pairwise distinct")
        if any(not 0 <= x < (1 << self.n) for x in self.words):
            raise CodeFormatError(f"word out of range for length {self.n}")
        if not self.words:
            raise CodeFormatError("a code needs at least one word")

    @property
    def M(self) -> int:
        return len(self.words)

    def word_strings(self) -> list:
        return [format(x, f"0{self.n}b") for x in self.words]


def repetition_code(n: int) -> BinaryCode:
    """The two-word code {00...0, 11...1}."""
    if n < 1:
        raise CodeFormatError("repetition code needs n >= 1")
    return BinaryCode(n, (0, (1 << n) - 1))


def parity_code(n: int) -> BinaryCode:
    """All even-weight words of length n (a single parity check)."""
    if n < 2:
        raise CodeFormatError("parity code needs n >= 2")
    if n > _ENUM_CAP:
        raise SizeBudgetError(f"parity code of length {n} exceeds the n <= {_ENUM_CAP} budget")
    all_words = np.arange(1 << n, dtype=np.uint32)
    even = all_words[np.bitwise_count(all_words) % 2 == 0]
    return BinaryCode(n, tuple(int(x) for x in even))


def hamming74() -> BinaryCode:
    """The [7,4] Hamming code, systematic form, 16 words."""
    rows = (0b1000101, 0b0100110, 0b0010011, 0b0001111)
    words = []
    for m in range(16):
        x = 0
        for b in range(4):
            if (m >> b) & 1:
                x ^= rows[b]
        words.append(x)
    return BinaryCode(7, tuple(words))


def random_code(n: int, m: int, seed: int) -> BinaryCode:
    """m distinct uniformly random words of length n, reproducible from seed."""
    if not 1 <= m <= 1 << n:
        raise CodeFormatError(f"cannot place {m} distinct words in length {n}")
    rng = np.random.default_rng(seed)
    chosen: dict = {}
    while len(chosen) < m:
        for x in rng.integers(0, 1 << n, size=4 * (m - len(chosen)), dtype=np.uint64):
            chosen.setdefault(int(x), None)
            if len(chosen) == m:
                break
    return BinaryCode(n, tuple(chosen))


def parse_code(text: str) -> BinaryCode:
    """One binary word per line; equal lengths, distinct words, 0/1 only."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise CodeFormatError("no codewords found")
    n = len(lines[0])
    words = []
    for ln in lines:
        if len(ln) != n:
            raise CodeFormatError(f"word {ln!r} has length {len(ln)}, expected {n}")
        if set(ln) - {"0", "1"}:
            raise CodeFormatError(f"word {ln!r} contains characters other than 0/1")
        words.append(int(ln, 2))
    return BinaryCode(n, tuple(words))


def load_code(path: str) -> BinaryCode:
    with open(path, "r", encoding="ascii") as fh:
        return parse_code(fh.read())


def _require_enum_budget(n: int) -> None:
    if n > _ENUM_CAP:
        raise SizeBudgetError(
            f"2^{n} output enumeration exceeds the n <= {_ENUM_CAP} budget")


def _word_array(code: BinaryCode) -> np.ndarray:
    return np.asarray(code.words, dtype=np.uint32)


def _output_chunks(n: int) -> Iterable[np.ndarray]:
    total = 1 << n
    for start in range(0, total, _CHUNK):
        yield np.arange(start, min(start + _CHUNK, total), dtype=np.uint32)


def distance_distribution(code: BinaryCode) -> list:
    """Ordered-pair distance spectrum B_0..B_n, normalised by M.

    Includes the diagonal, so B_0 = 1 and sum(B) = M; off-diagonal entries
    times M are even integers (each unordered pair counted twice).
    """
    words = _word_array(code)
    dists = np.bitwise_count(words[:, None] ^ words[None, :])
    counts = np.bincount(dists.ravel(), minlength=code.n + 1)
    return [c / code.M for c in counts.tolist()]


def exact_pe_ml(code: BinaryCode, ch: ChannelParam) -> float:
    """Exact ML decoding error probability over all 2^n outputs.

    The decoder picks the minimum-distance codeword, lowest index on ties;
    the error probability only depends on the minimum distance profile:
    P_e = 1 - (1/M) sum_y p^{d_min(y)} q^{n - d_min(y)}.
    """
    if code.M < 2:
        return 0.0
    _require_enum_budget(code.n)
    words = _word_array(code)
    p, q = ch.p, ch.q
    pow_table = np.array([p ** d * q ** (code.n - d) for d in range(code.n + 1)])
    correct = 0.0
    for ys in _output_chunks(code.n):
        dmin = np.bitwise_count(ys[:, None] ^ words[None, :]).min(axis=1)
        correct += float(pow_table[dmin].sum())
    return 1.0 - correct / code.M


def lower_bound_21(code: BinaryCode, ch: ChannelParam) -> float:
    """Equidistance lower bound on P_e from multiply-covered outputs.

    (q^n / 2M) sum_t (p/q)^t N_t, where N_t counts output-codeword
    incidences at distance t restricted to outputs covered by at least two
    codewords at that radius.
    """
    if code.M < 2:
        return 0.0
    _require_enum_budget(code.n)
    words = _word_array(code)
    n = code.n
    shared = np.zeros(n + 1, dtype=np.int64)
    for ys in _output_chunks(n):
        dist = np.bitwise_count(ys[:, None] ^ words[None, :])
        for t in range(n + 1):
            cnt = (dist == t).sum(axis=1)
            cnt = cnt[cnt >= 2]
            if cnt.size:
                shared[t] += int(cnt.sum())
    ratio = ch.p / ch.q
    total = sum(ratio ** t * int(shared[t]) for t in range(n + 1) if shared[t])
    return ch.q ** n / (2.0 * code.M) * total


def sphere_packing_rhs_23(code: BinaryCode, ch: ChannelParam) -> float:
    """Counting-only relaxation: (q^n/2M) max_t (p/q)^t [M binom(n,t) - 2^n],
    clamped at zero.  Needs no enumeration, only (n, M)."""
    n, M = code.n, code.M
    ratio = ch.p / ch.q
    best = 0.0
    for t in range(n + 1):
        surplus = M * math.comb(n, t) - (1 << n)
        if surplus > 0:
            best = max(best, ratio ** t * surplus)
    return ch.q ** n / (2.0 * M) * best


def z_pair_count(n: int, d: int, t: int) -> int:
    """|{y : d(x,y) = d(x',y) = t}| for any fixed pair at distance d.

    Exactly binom(n-d, t-d/2) binom(d, d/2); zero whenever d is odd or the
    radii are combinatorially impossible.
    """
    if d < 0 or d > n or d % 2 != 0:
        return 0
    half = d // 2
    if t < half or t - half > n - d:
        return 0
    return math.comb(n - d, t - half) * math.comb(d, half)


@dataclass(frozen=True)
class CoverReport:
    """Covering multiplicities of radius-t spheres around the codewords."""

    t: int
    histogram: Dict[int, int]     # multiplicity -> number of outputs
    x_max: int
    y_t_size: int                 # outputs covered exactly once

    def double_count(self) -> int:
        return sum(mult * cnt for mult, cnt in self.histogram.items())


def cover_report(code: BinaryCode, t: int) -> CoverReport:
    """Histogram of |{codewords at distance t from y}| over all outputs y."""
    _require_enum_budget(code.n)
    if not 0 <= t <= code.n:
        raise DomainError(f"radius must lie in [0, n], got {t!r}")
    words = _word_array(code)
    hist: Dict[int, int] = {}
    for ys in _output_chunks(code.n):
        cnt = (np.bitwise_count(ys[:, None] ^ words[None, :]) == t).sum(axis=1)
        vals, reps = np.unique(cnt[cnt > 0], return_counts=True)
        for v, r in zip(vals.tolist(), reps.tolist()):
            hist[int(v)] = hist.get(int(v), 0) + int(r)
    return CoverReport(t=t, histogram=hist,
                       x_max=max(hist, default=0),
                       y_t_size=hist.get(1, 0))


def restricted_cover_max(code: BinaryCode, t: int, omega_dist: int) -> int:
    """max over (reference word, output) of the number of codewords at
    distance t from the output AND at distance omega_dist from the reference."""
    _require_enum_budget(code.n)
    words = _word_array(code)
    pair_d = np.bitwise_count(words[:, None] ^ words[None, :])
    best = 0
    for i in range(code.M):
        cols = np.flatnonzero(pair_d[i] == omega_dist)
        if cols.size == 0:
            continue
        sub = words[cols]
        for ys in _output_chunks(code.n):
            cnt = (np.bitwise_count(ys[:, None] ^ sub[None, :]) == t).sum(axis=1)
            best = max(best, int(cnt.max()))
    return best


def proposition3_rhs(code: BinaryCode, ch: ChannelParam, t: int,
                     omega_dist: int) -> float:
    """One (t, omega) term of the spectrum-based lower bound:
    (q^n/2) (p/q)^t B_omega Z(t, omega) / X_max(t, omega)."""
    b = distance_distribution(code)
    if not 0 <= omega_dist <= code.n:
        raise DomainError(f"distance must lie in [0, n], got {omega_dist!r}")
    if b[omega_dist] == 0.0:
        return 0.0
    z = z_pair_count(code.n, omega_dist, t)
    if z == 0:
        return 0.0
    xmax = restricted_cover_max(code, t, omega_dist)
    if xmax == 0:
        return 0.0
    return (ch.q ** code.n / 2.0 * (ch.p / ch.q) ** t
            * b[omega_dist] * z / xmax)


def _johnson_once(n: int, d: int, w: int) -> float:
    if w == 0:
        return 1.0
    den = 2 * w * w - 2 * w * n + d * n
    return d * n / den if den > 0 else math.inf


def johnson_upper(n: int, d: int, w: int) -> float:
    """Upper bound on the size of a constant-weight-w, distance->=d code.

    Takes the tighter of the direct quadratic bound and one weight-reduction
    step followed by the quadratic bound; math.inf when both denominators
    clamp (the method then says nothing).
    """
    if not (0 < w <= n and 0 < d <= n):
        raise DomainError(f"need 0 < w <= n and 0 < d <= n, got {(n, d, w)!r}")
    direct = _johnson_once(n, d, w)
    reduced = n / w * _johnson_once(n - 1, d, w - 1)
    return min(direct, reduced)


def exhaustive_max_constant_weight(n: int, d: int, w: int) -> int:
    """True maximum size of a weight-w code with pairwise distance >= d.

    Two equal-weight words are always an even distance apart, so they are
    too close exactly when they share at least s = w - (d-1)//2 positions,
    and a valid code picks at most one word containing any given s-subset.
    Those clique constraints describe the feasible sets completely, and the
    resulting 0/1 packing program is dispatched to an exact MILP solve.
    (A branch-and-bound clique search over the weight-w layer is correct
    too, but needs minutes on the dense w = 3 layer at n = 10; the packing
    formulation closes the same instance in milliseconds.)
    """
    if n > _CLIQUE_CAP:
        raise SizeBudgetError(
            f"exhaustive weight-layer search exceeds the n <= {_CLIQUE_CAP} budget")
    if not (0 <= w <= n):
        raise DomainError(f"need 0 <= w <= n, got w={w!r}")
    if w in (0, n):
        return 1
    if d <= 2:
        return math.comb(n, w)  # distinct equal-weight words differ in >= 2 places
    s = w - (d - 1) // 2
    if s <= 0:
        return 1  # d exceeds the layer diameter 2w: no two words fit
    layer = [x for x in range(1 << n) if x.bit_count() == w]
    rows = []
    for combo in itertools.combinations(range(n), s):
        t_mask = 0
        for c in combo:
            t_mask |= 1 << c
        row = np.fromiter(((x & t_mask) == t_mask for x in layer),
                          dtype=float, count=len(layer))
        if row.sum() > 1.0:
            rows.append(row)
    if not rows:
        return len(layer)
    res = milp(c=-np.ones(len(layer)),
               constraints=LinearConstraint(np.array(rows), -np.inf, 1.0),
               integrality=np.ones(len(layer)),
               bounds=Bounds(0.0, 1.0))
    if not res.success:
        raise RuntimeError(f"packing solve failed for {(n, d, w)!r}: {res.message}")
    return round(-res.fun)


def proposition4_check(n: int, omega: float, ch: ChannelParam) -> bool:
    """Johnson bound stays below n^2 at distance omega*n, weight t(omega)*n.

    Rounds both products half-up to integers and re-derives the Johnson
    arithmetic from the integers; for n <= 10 the exhaustive layer search
    additionally confirms the true maximum is below n^2.
    """
    if not 0.0 < omega <= 0.5:
        raise DomainError(f"normalised distance must lie in (0, 1/2], got {omega!r}")
    d = math.floor(omega * n + 0.5)
    w = math.floor(equidistant_radius(omega, ch) * n + 0.5)
    if d == 0 or w == 0:
        return True  # degenerate rounding: at most one word in the layer
    ok = johnson_upper(n, d, w) < n * n
    if n <= _CLIQUE_CAP:
        ok = ok and exhaustive_max_constant_weight(n, d, w) < n * n
    return ok
