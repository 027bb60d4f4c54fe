"""Product specifications, the coefficient array a(n,k), and the state calculus.

A ProductSpec describes the polynomial family

    F_n(x) = P(x) * prod_{i=0}^{n-1} ( sum_j c_j x^{<e_j, f(i..i+L-1)>} )

with f a C-finite sequence of order L; a(n,k) are the coefficients of F_n.
The constant factor term is encoded as e = 0.  Peeling the last factor gives
the level recurrence

    a(n,k) = sum_j c_j a(n-1, k - <e_j, f(n-1..n+L-2)>),

and correlation sums of shifted rows close into a finite-or-infinite linear
system over "states".  A state is a multiset of factors (d_i, beta_i) whose
value at level n is

    f_S(n) = sum_{k in Z} prod_i a(n, k + d_i - <beta_i, f(n..n+L-1)>).

Summing over all of Z (the coefficient support is finite) makes shifting k a
sound normalization move unconditionally; at the root state the (0, 0) factor
kills every k < 0, so the value agrees with the k >= 0 sums of interest.

Dead states (identically zero because the shifted supports can never all
overlap) are pruned, but only under a sound certificate: exact support checks
up to a horizon plus an eventual-positivity certificate for the support gap
beyond it.  An inconclusive certificate keeps the state; that can only grow
the system, never corrupt it.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from math import prod

import numpy as np

from . import cfinite, polys
from .cfinite import CFiniteSeq, PosExpr, certify_eventually_positive, reduce_shift, shift_level, term

DEFAULT_MAX_COEFFS = 1 << 28
_INT64_GUARD = 1 << 62


class SpecValidationError(ValueError):
    pass


class ResourceLimitError(RuntimeError):
    pass


def deadness_horizon() -> int:
    """Exact-check horizon for the dead-state test (env-overridable)."""
    return int(os.environ.get("STERNGF_DEADNESS_HORIZON", "64"))


def validate_alpha(alpha) -> tuple[int, ...]:
    """Correlation pattern [a_0..a_{m-1}]: nonnegative, a_0 >= 1, no trailing
    zeros (a trailing zero would silently change the intended pattern)."""
    a = tuple(int(x) for x in alpha)
    if not a or a[0] < 1:
        raise SpecValidationError("alpha must start with a positive entry")
    if any(x < 0 for x in a):
        raise SpecValidationError("alpha entries must be nonnegative")
    if a[-1] == 0:
        raise SpecValidationError("alpha must not end in zero")
    return a


@dataclass(frozen=True)
class ProductSpec:
    """P(x), the exponent sequence, and the factor term list (c_j, e_j)."""

    P: tuple[int, ...]
    seq: CFiniteSeq
    terms: tuple[tuple[int, tuple[int, ...]], ...]

    def __post_init__(self):
        P = tuple(polys.normalize(list(self.P)))
        if not P:
            raise SpecValidationError("P must be a nonzero polynomial")
        object.__setattr__(self, "P", P)
        L = self.seq.order
        tt = tuple((int(c), tuple(int(x) for x in e)) for c, e in self.terms)
        if not tt:
            raise SpecValidationError("factor needs at least one term")
        seen = set()
        for c, e in tt:
            if c == 0:
                raise SpecValidationError("factor coefficients must be nonzero")
            if len(e) != L:
                raise SpecValidationError(f"exponent vector {e} must have length {L}")
            if e in seen:
                raise SpecValidationError(f"duplicate exponent vector {e}")
            seen.add(e)
        object.__setattr__(self, "terms", tt)
        horizon = deadness_horizon()
        for _, e in tt:
            if any(e):
                for i in range(horizon + 1):
                    if _form_at(self.seq, e, i) < 0:
                        raise SpecValidationError(
                            f"exponent form {e} is negative at level {i}")
                expr = PosExpr(self.seq, shifts=tuple(
                    (x, j) for j, x in enumerate(e) if x), const=1)
                if not certify_eventually_positive(expr, horizon).is_positive:
                    raise SpecValidationError(
                        f"cannot certify exponent form {e} stays nonnegative")


def _form_at(seq: CFiniteSeq, form: tuple[int, ...], i: int) -> int:
    fs = cfinite.ensure_terms(seq, i + len(form))
    return sum(c * fs[i + j] for j, c in enumerate(form) if c)


@dataclass(frozen=True)
class State:
    """Canonical multiset of factors (d, beta); see the module docstring for
    the correlation sum it denotes.  Canonical means the componentwise
    minimum of the beta vectors is zero and factors are sorted by (beta, d)."""

    factors: tuple[tuple[int, tuple[int, ...]], ...]

    def sort_key(self):
        return tuple((beta, d) for d, beta in self.factors)

    def __lt__(self, other: "State") -> bool:
        return self.sort_key() < other.sort_key()


def canonicalize(raw: list[tuple[int, tuple[int, ...]]]) -> State:
    """Shift all beta vectors by their componentwise minimum (a shift of the
    summation variable k) and sort the factors."""
    L = len(raw[0][1])
    mins = [min(beta[j] for _, beta in raw) for j in range(L)]
    shifted = [(d, tuple(b - m for b, m in zip(beta, mins))) for d, beta in raw]
    shifted.sort(key=lambda f: (f[1], f[0]))
    return State(tuple(shifted))


def root_state(alpha, L: int) -> State:
    """State of the correlation sum sum_k prod_i a(n, k+i)^alpha_i: offset i
    repeated alpha_i times, all beta zero."""
    a = validate_alpha(alpha)
    zero = (0,) * L
    return State(tuple((i, zero) for i, m in enumerate(a) for _ in range(m)))


# ---------------------------------------------------------------------------
# per-spec caches


class _SpecCache:
    def __init__(self, spec: ProductSpec):
        self.spec = spec
        self.maxdeg: list[int] = []
        self.U_prefix: list[int] = [polys.degree(list(spec.P))]
        self.dead: dict[State, bool] = {}
        self.dom_term: dict[int, int | None] = {}

    def level_maxdeg(self, m: int) -> int:
        while len(self.maxdeg) <= m:
            i = len(self.maxdeg)
            self.maxdeg.append(max(_form_at(self.spec.seq, e, i) for _, e in self.spec.terms))
        return self.maxdeg[m]

    def degree_bound(self, n: int) -> int:
        """U(n): upper bound for deg F_n."""
        while len(self.U_prefix) <= n:
            m = len(self.U_prefix) - 1
            self.U_prefix.append(self.U_prefix[-1] + self.level_maxdeg(m))
        return self.U_prefix[n]

    def dominant_term_from(self, start: int) -> int | None:
        """Index j* whose exponent form dominates every other term's form for
        all levels >= start, certified; None when that cannot be certified."""
        if start not in self.dom_term:
            self.dom_term[start] = self._certify_dominant(start)
        return self.dom_term[start]

    def _certify_dominant(self, start: int) -> int | None:
        seq = self.spec.seq
        terms = self.spec.terms
        best = max(range(len(terms)),
                   key=lambda j: _form_at(seq, terms[j][1], start))
        e_star = terms[best][1]
        for j, (_, e) in enumerate(terms):
            if j == best:
                continue
            diff = tuple(a - b for a, b in zip(e_star, e))
            expr = PosExpr(seq, shifts=tuple(
                (x, start + t) for t, x in enumerate(diff) if x), const=1)
            if not certify_eventually_positive(expr).is_positive:
                return None
        return best


_SPEC_CACHES: dict[ProductSpec, _SpecCache] = {}


def _cache(spec: ProductSpec) -> _SpecCache:
    if spec not in _SPEC_CACHES:
        _SPEC_CACHES[spec] = _SpecCache(spec)
    return _SPEC_CACHES[spec]


# ---------------------------------------------------------------------------
# deadness


def is_dead(spec: ProductSpec, state: State, horizon: int | None = None) -> bool:
    """Sound test that the state's correlation sum vanishes for every n >= 0.

    At level n the factor supports are intervals of length U(n) starting at
    <beta_i, f(n..)> - d_i; the product can only be nonzero when they all
    intersect, so a support spread exceeding U(n) at every level kills the
    state.  The spread is checked exactly for n <= horizon; beyond, one
    factor pair's gap must be certified positive forever.  Any inconclusive
    certificate returns False (alive), which is always safe.
    """
    cache = _cache(spec)
    if state in cache.dead:
        return cache.dead[state]
    H = deadness_horizon() if horizon is None else horizon
    verdict = _deadness_verdict(spec, cache, state, H)
    cache.dead[state] = verdict
    return verdict


def _offsets_at(spec: ProductSpec, state: State, n: int) -> list[int]:
    seq = spec.seq
    fs = cfinite.ensure_terms(seq, n + seq.order)
    out = []
    for d, beta in state.factors:
        s = -d
        for j, b in enumerate(beta):
            if b:
                s += b * fs[n + j]
        out.append(s)
    return out


def _deadness_verdict(spec: ProductSpec, cache: _SpecCache, state: State, H: int) -> bool:
    if len(state.factors) < 2:
        return False
    seq = spec.seq
    fs = cfinite.ensure_terms(seq, H + seq.order + 1)
    cache.degree_bound(H)
    bounds = cache.U_prefix
    for n in range(H + 1):
        lo = hi = None
        for d, beta in state.factors:
            s = -d
            for j, b in enumerate(beta):
                if b:
                    s += b * fs[n + j]
            if lo is None or s < lo:
                lo = s
            if hi is None or s > hi:
                hi = s
        if hi - lo <= bounds[n]:
            return False
    start = H + 1
    j_star = cache.dominant_term_from(start)
    if j_star is None:
        return False
    seq = spec.seq
    L = seq.order
    e_star = spec.terms[j_star][1]
    # partial-sum form for levels >= start, rewritten over f(m..m+L-1)
    tail_form = [0] * L
    for t, x in enumerate(e_star):
        if x:
            red = reduce_shift(seq, start + t)
            for u in range(L):
                tail_form[u] += x * red[u]
    tail_form = tuple(tail_form)
    base = cache.degree_bound(start)

    offs = _offsets_at(spec, state, start)
    order = sorted(range(len(offs)), key=lambda i: offs[i], reverse=True)
    pairs = [(i, j) for i in order for j in reversed(order) if i != j]
    for i, j in pairs:
        d_i, beta_i = state.factors[i]
        d_j, beta_j = state.factors[j]
        delta = tuple(a - b for a, b in zip(beta_i, beta_j))
        shifts = tuple((x, start + t) for t, x in enumerate(delta) if x)
        expr = PosExpr(seq, shifts=shifts, partials=((-1, tail_form),),
                       const=-(d_i - d_j) - base)
        if certify_eventually_positive(expr).is_positive:
            return True
    return False


# ---------------------------------------------------------------------------
# evolution


def evolve(spec: ProductSpec, state: State) -> list[tuple[int, State]]:
    """Exact identity f_S(n) = sum coeff * f_S'(n-1), valid for all n >= 1.

    Every beta is first rewritten one level down, then the product of factor
    terms is expanded: each factor independently picks a term (c_j, e_j),
    contributing e_j to its beta and c_j to the coefficient.  The resulting
    raw states are canonicalized, merged, and pruned of dead targets.  The
    row is returned sorted, so system construction is deterministic.
    """
    seq = spec.seq
    shifted = [(d, shift_level(seq, beta)) for d, beta in state.factors]
    acc: dict[State, int] = {}
    choices = [[(c, e) for c, e in spec.terms]] * len(shifted)
    for pick in itertools.product(*choices):
        coeff = prod(c for c, _ in pick)
        raw = [(d, tuple(b + x for b, x in zip(beta, e)))
               for (d, beta), (_, e) in zip(shifted, pick)]
        st = canonicalize(raw)
        acc[st] = acc.get(st, 0) + coeff
    row = [(c, st) for st, c in acc.items() if c != 0 and not is_dead(spec, st)]
    row.sort(key=lambda t: t[1].sort_key())
    return row


def initial_value(spec: ProductSpec, state: State) -> int:
    """f_S(0): the empty product leaves F_0 = P, so the sum is finite."""
    p = list(spec.P)
    dp = len(p) - 1
    g = spec.seq.init
    offs = [sum(b * gv for b, gv in zip(beta, g)) - d for d, beta in state.factors]
    k_lo = max(o for o in offs)
    k_hi = min(o + dp for o in offs)
    total = 0
    for k in range(k_lo, k_hi + 1):
        total += prod(p[k - o] for o in offs)
    return total


# ---------------------------------------------------------------------------
# brute-force expansion and oracles


def expand_Fn(spec: ProductSpec, n: int, *, force_python: bool = False,
              max_coeffs: int = DEFAULT_MAX_COEFFS):
    """Exact coefficients of F_n(x), index k -> a(n,k).

    Degrees grow like the dominant indicial root to the n-th power, so this
    is only for moderate n; the bound is checked up front and exceeding it
    raises ResourceLimitError.  Dense integer arithmetic runs on int64 numpy
    arrays while a per-level bound proves no overflow is possible, and falls
    back to Python integers beyond that.  Returns a numpy array or a list.
    """
    cache = _cache(spec)
    size = cache.degree_bound(n) + 1
    if size > max_coeffs:
        raise ResourceLimitError(
            f"F_{n} needs {size} coefficients (limit {max_coeffs})")
    coeff_sum = sum(abs(c) for c, _ in spec.terms)
    arr = None
    if not force_python and max(abs(c) for c in spec.P) * coeff_sum < _INT64_GUARD:
        arr = np.zeros(len(spec.P), dtype=np.int64)
        arr[:] = spec.P
    else:
        lst = list(spec.P)
    for m in range(n):
        exps = [(c, _form_at(spec.seq, e, m)) for c, e in spec.terms]
        width = max(e for _, e in exps)
        if arr is not None:
            mx = int(np.abs(arr).max())
            if mx * coeff_sum >= _INT64_GUARD:
                lst = arr.tolist()
                arr = None
        if arr is not None:
            new = np.zeros(len(arr) + width, dtype=np.int64)
            for c, e in exps:
                if c == 1:
                    new[e:e + len(arr)] += arr
                elif c == -1:
                    new[e:e + len(arr)] -= arr
                else:
                    new[e:e + len(arr)] += c * arr
            arr = new
        else:
            new = [0] * (len(lst) + width)
            for c, e in exps:
                for k, v in enumerate(lst):
                    if v:
                        new[e + k] += c * v
            lst = new
    return arr if arr is not None else lst


def state_oracle(spec: ProductSpec, state: State, n: int, *, coeffs=None) -> int:
    """Direct evaluation of the state's correlation sum at level n."""
    a = expand_Fn(spec, n) if coeffs is None else coeffs
    deg = len(a) - 1
    offs = _offsets_at(spec, state, n)
    k_lo = max(offs)
    k_hi = min(o + deg for o in offs)
    total = 0
    for k in range(k_lo, k_hi + 1):
        p = 1
        for o in offs:
            v = int(a[k - o])
            if v == 0:
                p = 0
                break
            p *= v
        total += p
    return total


def u_alpha_oracle(spec: ProductSpec, alpha, n: int, *, coeffs=None) -> int:
    """Exact u_alpha(n) = sum_{k>=0} prod_i a(n, k+i)^alpha_i by expansion."""
    a = validate_alpha(alpha)
    arr = expand_Fn(spec, n) if coeffs is None else coeffs
    if isinstance(arr, np.ndarray):
        got = _u_alpha_numpy(arr, a)
        if got is not None:
            return got
    m = len(a)
    size = len(arr)
    total = 0
    for k in range(size):
        p = 1
        for i, e in enumerate(a):
            if not e:
                continue
            v = int(arr[k + i]) if k + i < size else 0
            if v == 0:
                p = 0
                break
            p *= v ** e
        total += p
    return total


def _u_alpha_numpy(arr: np.ndarray, alpha: tuple[int, ...]) -> int | None:
    """Vectorized correlation sum with an exactness guard: per-term products
    are bounded and accumulation is chunked so int64 can never overflow."""
    mx = int(np.abs(arr).max()) or 1
    bound = 1
    for e in alpha:
        bound *= mx ** e
    if bound >= _INT64_GUARD:
        return None
    span = len(alpha) - 1
    n_terms = len(arr) - span
    if n_terms <= 0:
        return None
    chunk = max(1, _INT64_GUARD // bound)
    total = 0
    for lo in range(0, n_terms, chunk):
        hi = min(lo + chunk, n_terms)
        seg = np.ones(hi - lo, dtype=np.int64)
        for i, e in enumerate(alpha):
            for _ in range(e):
                seg = seg * arr[lo + i:hi + i]
        total += int(seg.sum())
    return total
