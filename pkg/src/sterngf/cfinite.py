"""Integer sequences defined by linear recurrences with constant coefficients.

A sequence of order L is the pair (initial values g_0..g_{L-1}, recurrence
coefficients c_1..c_L) with

    f(i) = c_1 f(i-1) + c_2 f(i-2) + ... + c_L f(i-L),   c_L != 0.

Alongside term evaluation this module provides the shift algebra used by the
state machinery (rewriting f(n+J) over the basis f(n..n+L-1), translating
linear forms one level down), the indicial polynomial, classification of the
dominant indicial root (PV or not), and a sound-but-incomplete certificate of
eventual positivity for integer combinations of shifted terms and partial
sums.  "Unknown" is always an acceptable answer for the certificate; callers
must treat it conservatively.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import gfs, polys, roots
from .roots import Iv


@dataclass(frozen=True)
class CFiniteSeq:
    """Order-L integer linear recurrence with initial values."""

    init: tuple[int, ...]
    rec: tuple[int, ...]

    def __post_init__(self):
        if len(self.init) != len(self.rec) or not self.rec:
            raise ValueError("need len(init) == len(rec) >= 1")
        if self.rec[-1] == 0:
            raise ValueError("trailing recurrence coefficient must be nonzero")
        object.__setattr__(self, "init", tuple(int(x) for x in self.init))
        object.__setattr__(self, "rec", tuple(int(x) for x in self.rec))

    @property
    def order(self) -> int:
        return len(self.rec)


_TERM_CACHE: dict[CFiniteSeq, list[int]] = {}


def ensure_terms(seq: CFiniteSeq, n: int) -> list[int]:
    """The cached value list, grown to cover index n; callers may index it
    but must not mutate it."""
    vals = _TERM_CACHE.get(seq)
    if vals is None:
        vals = _TERM_CACHE[seq] = list(seq.init)
    if len(vals) <= n:
        L = seq.order
        rec = seq.rec
        while len(vals) <= n:
            vals.append(sum(c * v for c, v in zip(rec, reversed(vals[-L:]))))
    return vals


def term(seq: CFiniteSeq, n: int) -> int:
    """f(n), by iterating the recurrence (values are cached per sequence)."""
    if n < 0:
        raise ValueError("term index must be nonnegative")
    return ensure_terms(seq, n)[n]


def terms(seq: CFiniteSeq, n: int) -> list[int]:
    """[f(0), ..., f(n-1)]."""
    if n <= 0:
        return []
    return list(ensure_terms(seq, n - 1)[:n])


def reduce_shift(seq: CFiniteSeq, J: int) -> tuple[int, ...]:
    """Coefficients a with f(n+J) = sum_j a_j f(n+j), valid for all n >= 0.

    For J < L this is a basis vector; beyond that the recurrence is applied
    repeatedly (induction on J).
    """
    if J < 0:
        raise ValueError("shift must be nonnegative")
    L = seq.order
    if J < L:
        return tuple(1 if j == J else 0 for j in range(L))
    a = list(reduce_shift(seq, L - 1))
    c = seq.rec
    for _ in range(J - L + 1):
        top = a[L - 1]
        a = [top * c[L - 1]] + [a[j - 1] + top * c[L - 1 - j] for j in range(1, L)]
    return tuple(a)


def shift_level(seq: CFiniteSeq, beta: tuple[int, ...]) -> tuple[int, ...]:
    """Rewrite the linear form <beta, f(n..n+L-1)> over the basis one level
    down: the result b satisfies <b, f(n-1..n+L-2)> = <beta, f(n..n+L-1)> for
    every n >= 1.  For order 1 with rec (b,) this is multiplication by b."""
    L = seq.order
    if len(beta) != L:
        raise ValueError("linear form length must equal the order")
    c = seq.rec
    top = beta[L - 1]
    return tuple([top * c[L - 1]] + [beta[j - 1] + top * c[L - 1 - j] for j in range(1, L)])


def indicial_poly(seq: CFiniteSeq) -> list[int]:
    """X^L - c_1 X^(L-1) - ... - c_L, ascending coefficients."""
    return [-c for c in reversed(seq.rec)] + [1]


# ---------------------------------------------------------------------------
# PV classification


@dataclass(frozen=True)
class PVResult:
    kind: str  # "pv" | "not_pv" | "undecided"
    reason: str = ""
    margin: float = 0.0
    roots: tuple = ()  # (re, im, radius) floats, informational only

    @property
    def is_pv(self) -> bool:
        return self.kind == "pv"


def _cyclotomic_factor(p: list[int], max_deg: int) -> int | None:
    """Smallest k with Phi_k dividing p and deg Phi_k <= max_deg, else None."""
    k = 1
    while True:
        phi = polys.cyclotomic(k)
        if polys.degree(phi) > max_deg:
            # Phi_k degrees are not monotone in k, so scan a safe stretch
            if k > 4 * max_deg * max_deg + 6:
                return None
            k += 1
            continue
        if polys.divides(phi, p):
            return k
        k += 1


def pv_classify(seq: CFiniteSeq, margin: float = 1e-9) -> PVResult:
    """Decide whether the dominant indicial root is a PV number, counting all
    other roots of the indicial polynomial as its conjugates.

    Roots of modulus exactly one are detected exactly when they are roots of
    unity (cyclotomic divisibility); everything else is classified through
    certified disks.  When a disk straddles the unit circle and no exact test
    applies the verdict is "undecided" rather than a guess.
    """
    q = indicial_poly(seq)
    L = seq.order
    if L == 1:
        r = seq.rec[0]
        if r > 1:
            return PVResult("pv", roots=((float(r), 0.0, 0.0),))
        if abs(r) == 1:
            return PVResult("not_pv", "root of modulus 1")
        if r < -1:
            return PVResult("not_pv", "no real root exceeding 1")
        raise AssertionError("unreachable: c_L != 0")
    k = _cyclotomic_factor(q, L)
    if k is not None:
        return PVResult("not_pv", f"root of modulus 1 (root of unity, order {k})")

    sf = polys.square_free_part(q)
    repeated = polys.poly_gcd(q, polys.deriv(q))
    disks = roots.certified_disks(sf)
    if disks is None:
        return PVResult("undecided", "root approximations degenerate", margin)
    rep_disks = []
    if polys.degree(repeated) >= 1:
        rep_disks = roots.certified_disks(repeated)
        if rep_disks is None:
            return PVResult("undecided", "root approximations degenerate", margin)

    info = tuple((float(d.re), float(d.im), float(d.radius)) for d in disks)
    dom = max(disks, key=lambda d: d.mod_hi)
    rest = [d for d in disks if d is not dom]

    if dom.mod_hi <= 1:
        # every root certified inside or on the unit circle, and roots of
        # unity were already excluded: the largest root cannot exceed 1
        return PVResult("not_pv", "no root exceeding 1", roots=info)

    # everything except the dominant root must sit strictly inside the circle
    for d in rest:
        if d.mod_hi < 1:
            continue
        if d.mod_lo > 1:
            return PVResult("not_pv", "a conjugate lies outside the unit circle", roots=info)
        return PVResult("undecided", "a conjugate is numerically on the unit circle", margin, info)

    # a repeated root acts as its own conjugate: it must be inside the circle
    for d in rep_disks:
        if not d.mod_hi < 1:
            if d.mod_lo > 1:
                return PVResult("not_pv", "a repeated root of modulus greater than 1", roots=info)
            return PVResult("undecided", "a repeated root is numerically on the unit circle", margin, info)

    # dominant disk: isolated (so it holds exactly one distinct root), with a
    # certified modulus above 1; every other root being inside the circle
    # forces that root to be real (a non-real root would need an
    # equal-modulus conjugate among the others)
    if not dom.mod_lo > 1:
        return PVResult("undecided", "dominant root numerically on the unit circle", margin, info)
    for o in rest:
        gap = roots.sqrt_bounds((dom.re - o.re) ** 2 + (dom.im - o.im) ** 2)[0]
        if not gap > dom.radius + o.radius:
            return PVResult("undecided", "dominant root not isolated numerically", margin, info)
    if not dom.re - dom.radius > 1:
        return PVResult("undecided", "dominant root numerically at 1", margin, info)
    return PVResult("pv", roots=info)


# ---------------------------------------------------------------------------
# Eventual positivity of recurrence expressions


@dataclass(frozen=True)
class PosExpr:
    """Integer expression  const + sum c*f(n+off) + sum c*S_v(n)  where
    S_v(n) = sum_{m<n} <v, f(m..m+L-1)> is a partial sum of a linear form."""

    seq: CFiniteSeq
    shifts: tuple[tuple[int, int], ...] = ()    # (coeff, offset)
    partials: tuple[tuple[int, tuple[int, ...]], ...] = ()  # (coeff, form)
    const: int = 0


@dataclass(frozen=True)
class Positivity:
    kind: str  # "positive_for_all" | "not_always_positive" | "unknown"
    witness: int | None = None

    @property
    def is_positive(self) -> bool:
        return self.kind == "positive_for_all"


_PREFIX_CACHE: dict[tuple[CFiniteSeq, tuple[int, ...]], list[int]] = {}


def _partial_sum(seq: CFiniteSeq, form: tuple[int, ...], n: int) -> int:
    """sum_{m<n} <form, f(m..m+L-1)>, cached incrementally."""
    key = (seq, form)
    pre = _PREFIX_CACHE.get(key)
    if pre is None:
        pre = _PREFIX_CACHE[key] = [0]
    if len(pre) <= n:
        fs = ensure_terms(seq, n + seq.order)
        while len(pre) <= n:
            m = len(pre) - 1
            val = sum(c * fs[m + j] for j, c in enumerate(form) if c)
            pre.append(pre[-1] + val)
    return pre[n]


def expr_value(expr: PosExpr, n: int) -> int:
    v = expr.const
    if expr.shifts:
        max_off = max(off for _, off in expr.shifts)
        fs = ensure_terms(expr.seq, n + max_off)
        for c, off in expr.shifts:
            v += c * fs[n + off]
    for c, form in expr.partials:
        v += c * _partial_sum(expr.seq, form, n)
    return v


def _annihilator(expr: PosExpr) -> list[int]:
    """A monic integer polynomial A with A(E) expr = 0 for all n >= 0
    (E the shift operator).  Shifted terms are killed by the indicial
    polynomial; partial sums and constants need an extra factor (X - 1)."""
    A = indicial_poly(expr.seq)
    if expr.partials or expr.const:
        A = polys.mul(A, [-1, 1])
    return A


def _minimal_annihilator(expr: PosExpr, A: list[int], n0: int) -> list[int]:
    """Shrink A to a smaller exact annihilator when the expression actually
    satisfies one (e.g. a plain geometric inside a higher-order closure).

    A candidate m is guessed from a value window and accepted only on proof:
    m must divide A, and w = m(E)expr must vanish on deg(A/m) consecutive
    points, which forces w = 0 forever by the recurrence A/m satisfied by w.
    """
    k = polys.degree(A)
    window = [expr_value(expr, n) for n in range(n0, n0 + 3 * k + 8)]
    L, C = gfs.berlekamp_massey(window)
    if L >= k or 2 * L + 2 > len(window):
        return A
    cand = polys.to_int_coeffs(list(reversed(C)))  # X^L + c_1 X^{L-1} + ...
    if not cand or cand[-1] != 1:
        return A
    if not polys.divides(cand, A):
        return A
    quot, _ = polys.divmod_exact(A, cand)
    need = polys.degree(polys.normalize(quot)) + 1
    d = polys.degree(cand)
    for s in range(need):
        w = sum(cand[j] * expr_value(expr, n0 + s + j) for j in range(d + 1))
        if w != 0:
            return A
    return cand


def certify_eventually_positive(expr: PosExpr, horizon: int = 64) -> Positivity:
    """Sound certificate that expr(n) > 0 for every n >= 0.

    Exact positivity is checked for n = 0..horizon; beyond the horizon the
    expression is certified through its annihilating recurrence: either it is
    eventually constant (detected exactly), or it has a certified simple real
    dominant root rho > 1 with a positive leading projection, in which case
    an explicit geometric tail bound gives a crossover index past which the
    dominant mode provably wins, and everything up to the crossover is
    checked exactly.  Any failed sub-certificate yields "unknown".
    """
    for n in range(horizon + 1):
        if expr_value(expr, n) <= 0:
            return Positivity("not_always_positive", n)

    L = expr.seq.order
    max_off = max((off for _, off in expr.shifts), default=0)
    n0 = 2 * L + max_off + 2
    A = _annihilator(expr)
    A = _minimal_annihilator(expr, A, n0)
    k = polys.degree(A)

    # eventually-zero difference => eventually constant (> 0 was checked)
    dvals = [expr_value(expr, n + 1) - expr_value(expr, n) for n in range(n0, n0 + 2 * k + 2)]
    if all(v == 0 for v in dvals[-(k + 1):]):
        start = n0 + k + 1
        for n in range(horizon + 1, start + 1):
            if expr_value(expr, n) <= 0:
                return Positivity("not_always_positive", n)
        return Positivity("positive_for_all")

    if k == 1:
        # exactly geometric: expr(n) = expr(n0) * a^(n - n0) for n >= n0
        a = -A[0]
        base = expr_value(expr, n0)
        for n in range(horizon + 1, n0 + 1):
            if expr_value(expr, n) <= 0:
                return Positivity("not_always_positive", n)
        if base > 0 and a >= 1:
            return Positivity("positive_for_all")
        return Positivity("unknown")

    gd = _growth_data(tuple(A), n0)
    if gd is None:
        return Positivity("unknown")

    # leading projection c = w(n0) / (A'(rho) * rho^n0)
    w0 = Iv.point(0)
    for j in range(k):
        w0 = w0 + gd.b[j] * Iv.point(expr_value(expr, n0 + j))
    c = w0.divided_by(gd.dA_rho_pow)
    if not c.lo > 0:
        return Positivity("unknown")

    M = Fraction(0)
    tpow = Fraction(1)
    rpow = Iv.point(1)
    for j in range(max(k - 1, 1)):
        eps = Iv.point(expr_value(expr, n0 + j)) - c * gd.rho_pow * rpow
        M = max(M, roots.round_up(eps.abs_hi() / tpow))
        # tpow under-approximates tau^j: dividing by it can only inflate M
        tpow = roots.round_down(tpow * gd.tau)
        rpow = rpow * gd.rho

    # crossover: smallest n* >= n0 with c rho^n > M tau^(n - n0) onwards
    lo_side = roots.round_down(c.lo * gd.rho_lo_pow)
    hi_side = M
    n_star = n0
    while lo_side <= hi_side:
        lo_side = roots.round_down(lo_side * gd.rho.lo)
        hi_side = roots.round_up(hi_side * gd.tau)
        n_star += 1
        if n_star > n0 + 20000:
            return Positivity("unknown")
    for n in range(horizon + 1, n_star + 1):
        if expr_value(expr, n) <= 0:
            return Positivity("not_always_positive", n)
    return Positivity("positive_for_all")


@dataclass(frozen=True)
class _GrowthData:
    """Annihilator-level certificate data, reusable across expressions:
    dominant-root enclosure rho, interval coefficients of B = A/(X - rho),
    the geometric tail ratio tau with tau^(k-1) >= sum |b_j| tau^j, and the
    fixed powers appearing in the projection formulas."""

    rho: Iv
    b: tuple[Iv, ...]
    tau: Fraction
    rho_pow: Iv           # rho^n0
    dA_rho_pow: Iv        # A'(rho) * rho^n0
    rho_lo_pow: Fraction  # rho.lo^n0


_GROWTH_CACHE: dict[tuple[tuple[int, ...], int], "_GrowthData | None"] = {}


def _growth_data(A: tuple[int, ...], n0: int) -> "_GrowthData | None":
    key = (A, n0)
    if key in _GROWTH_CACHE:
        return _GROWTH_CACHE[key]
    out = None
    k = len(A) - 1
    cert = _dominant_cert_cached(A)
    if cert is not None and cert.rho.lo > 1:
        rho = cert.rho
        # B = A / (X - rho), interval coefficients via synthetic division
        b: list[Iv] = [Iv.point(0)] * k
        b[k - 1] = Iv.point(A[k])
        for j in range(k - 1, 0, -1):
            b[j - 1] = Iv.point(A[j]) + rho * b[j]
        dA = iv_poly_eval_deriv(list(A), rho)
        b_hi = [bj.abs_hi() for bj in b[: k - 1]]
        tau = None
        for num in range(1, 16):
            t = rho.lo * Fraction(num, 16)
            if t ** (k - 1) >= sum(bh * t ** j for j, bh in enumerate(b_hi)):
                tau = t
                break
        if tau is not None and not dA.contains_zero():
            rho_pow = _iv_pow(rho, n0)
            out = _GrowthData(rho=rho, b=tuple(b), tau=tau, rho_pow=rho_pow,
                              dA_rho_pow=dA * rho_pow,
                              rho_lo_pow=roots.round_down(rho.lo ** n0))
    _GROWTH_CACHE[key] = out
    return out


def iv_poly_eval_deriv(coeffs: list[int], x: Iv) -> Iv:
    return roots.iv_poly_eval(polys.deriv(coeffs), x)


def _iv_pow(x: Iv, n: int) -> Iv:
    acc = Iv.point(1)
    for _ in range(n):
        acc = acc * x
    return acc


def _pow_frac(x: Fraction, n: int) -> Fraction:
    return x ** n


_DOM_CERT_CACHE: dict[tuple[int, ...], roots.DominantRootCert | None] = {}


def _dominant_cert_cached(A: tuple[int, ...]):
    if A not in _DOM_CERT_CACHE:
        _DOM_CERT_CACHE[A] = roots.dominant_root_certificate(list(A))
    return _DOM_CERT_CACHE[A]
