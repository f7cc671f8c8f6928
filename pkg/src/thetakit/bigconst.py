"""Exact arithmetic and ordering for tower-sized integer constants.

Values are expression trees over naturals with +, *, ^ and a guarded
small-literal subtraction.  Trees normalize to a canonical form (constants
folded up to a digit cap, natural bases split into prime powers, powers
distributed over products, same-base powers merged, sums collected into
linear combinations), so equal structure decides equality and the
comparison ladder below resolves everything else:

1. identical canonical trees are equal;
2. values within the materialization cap compare as big integers;
3. otherwise the order is decided by descent: same-base powers compare by
   exponent, a sum is bracketed by its largest term, and remaining power
   pairs compare through rational bounds on base-2 logarithms, refined by
   repeated squaring and resolved by exact cross-multiplication of the
   exponent trees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

DIGIT_CAP = 10 ** 5
_ESCALATION_CAP = 10 ** 7
_FACTOR_BOUND = 10 ** 6
# bits * log10(2) bounds used for digit estimates.
_LOG10_2 = (30103, 100000)


@dataclass(frozen=True)
class TowerInt:
    """One node of an expression tree denoting a natural number.

    ``op`` is one of "nat", "add", "sub", "mul", "pow"; a nat carries its
    integer in ``args[0]`` and every other node two child trees.  The
    subtrahend of a sub node must be a plain literal, which keeps every
    subtree's value a natural number by construction.
    """

    op: str
    args: tuple

    def __add__(self, other: "TowerInt | int") -> "TowerInt":
        return TowerInt("add", (self, _coerce(other)))

    def __radd__(self, other: int) -> "TowerInt":
        return TowerInt("add", (_coerce(other), self))

    def __mul__(self, other: "TowerInt | int") -> "TowerInt":
        return TowerInt("mul", (self, _coerce(other)))

    def __rmul__(self, other: int) -> "TowerInt":
        return TowerInt("mul", (_coerce(other), self))

    def __pow__(self, other: "TowerInt | int") -> "TowerInt":
        return TowerInt("pow", (self, _coerce(other)))

    def minus(self, literal: int) -> "TowerInt":
        if not isinstance(literal, int) or literal < 0:
            raise ValueError("subtrahend must be a nonnegative literal")
        return TowerInt("sub", (self, nat(literal)))

    def digits(self) -> int | None:
        """Decimal digit count of the value, None beyond the cap."""
        v = evaluate(self)
        if v is None:
            return None
        return len(str(v))


def nat(k: int) -> TowerInt:
    if not isinstance(k, int) or k < 0:
        raise ValueError("naturals only")
    return TowerInt("nat", (k,))


def _coerce(x: "TowerInt | int") -> TowerInt:
    return x if isinstance(x, TowerInt) else nat(x)


def _digits_of_int(v: int) -> int:
    if v == 0:
        return 1
    return v.bit_length() * _LOG10_2[0] // _LOG10_2[1] + 1


@lru_cache(maxsize=None)
def _value_capped(e: TowerInt, cap: int) -> int | None:
    """The denoted integer when its digit count stays within cap, else None."""
    if e.op == "nat":
        v = e.args[0]
        return v if _digits_of_int(v) <= cap else None
    a = _value_capped(e.args[0], cap)
    if a is None:
        return None
    if e.op == "pow":
        ev = _value_capped(e.args[1], cap)
        if ev is None:
            return None
        if a in (0, 1) or ev == 0:
            return 1 if ev == 0 or a == 1 else 0
        if (a.bit_length() * ev) * _LOG10_2[0] > cap * _LOG10_2[1]:
            return None
        v = a ** ev
        return v if _digits_of_int(v) <= cap else None
    b = _value_capped(e.args[1], cap)
    if b is None:
        return None
    if e.op == "add":
        v = a + b
    elif e.op == "sub":
        if b > a:
            raise ValueError("subtraction went negative")
        v = a - b
    else:
        if _digits_of_int(a) + _digits_of_int(b) > cap + 1:
            return None
        v = a * b
    return v if _digits_of_int(v) <= cap else None


def evaluate(e: TowerInt, cap: int = DIGIT_CAP) -> int | None:
    """Exact value when it has at most cap decimal digits, else None."""
    return _value_capped(e, cap)


def _sort_key(e: TowerInt):
    if e.op == "nat":
        return (0, e.args[0])
    return (1, e.op) + tuple(_sort_key(a) for a in e.args)


def _prime_split(b: int) -> list[tuple[int, int]]:
    # (prime, multiplicity) pairs; b returned whole when too big to factor.
    if b >= _FACTOR_BOUND:
        return [(b, 1)]
    out = []
    p = 2
    while p * p <= b:
        if b % p == 0:
            k = 0
            while b % p == 0:
                b //= p
                k += 1
            out.append((p, k))
        p += 1 if p == 2 else 2
    if b > 1:
        out.append((b, 1))
    return out


def _rebuild_product(factors: list[TowerInt], coeff: int) -> TowerInt:
    factors = sorted(factors, key=_sort_key)
    if coeff != 1 or not factors:
        factors = [nat(coeff)] + factors
    out = factors[0]
    for f in factors[1:]:
        out = TowerInt("mul", (out, f))
    return out


def _rebuild_sum(terms: list[tuple[TowerInt, int]], const: int) -> TowerInt:
    parts = []
    for term, c in sorted(terms, key=lambda tc: _sort_key(tc[0])):
        if c == 1:
            parts.append(term)
        else:
            # Same flat shape a product normalization would produce.
            parts.append(_merge_nat_factors(TowerInt("mul", (nat(c), term))))
    if not parts:
        if const < 0:
            raise ValueError("expression denotes a negative value")
        return nat(const)
    out = parts[0]
    for p in parts[1:]:
        out = TowerInt("add", (out, p))
    if const > 0:
        out = TowerInt("add", (out, nat(const)))
    elif const < 0:
        out = TowerInt("sub", (out, nat(-const)))
    return out


def _mul_parts(e: TowerInt) -> tuple[int, list[TowerInt]]:
    # Canonical e as (nat coefficient, symbolic factors).
    if e.op == "nat":
        return e.args[0], []
    if e.op == "mul":
        c = 1
        factors = []
        stack = [e]
        while stack:
            f = stack.pop()
            if f.op == "mul":
                stack.extend(f.args)
            elif f.op == "nat":
                c *= f.args[0]
            else:
                factors.append(f)
        return c, factors
    return 1, [e]


def _sum_parts(e: TowerInt) -> tuple[int, list[tuple[TowerInt, int]]]:
    # Canonical e as (integer constant, [(symbolic term, coeff >= 1)]).
    const = 0
    terms: dict[TowerInt, int] = {}
    stack = [(e, 1)]
    while stack:
        f, sign = stack.pop()
        if f.op == "add":
            stack.append((f.args[0], sign))
            stack.append((f.args[1], sign))
        elif f.op == "sub":
            stack.append((f.args[0], sign))
            stack.append((f.args[1], -sign))
        else:
            c, factors = _mul_parts(f)
            if not factors:
                const += sign * c
            else:
                key = _rebuild_product(factors, 1)
                terms[key] = terms.get(key, 0) + sign * c
    kept = [(t, c) for t, c in terms.items() if c != 0]
    if any(c < 0 for _, c in kept):
        raise ValueError("expression denotes a negative value")
    return const, kept


@lru_cache(maxsize=None)
def normalize(e: TowerInt) -> TowerInt:
    """Canonical value-preserving form of the expression."""
    v = evaluate(e)
    if v is not None:
        return nat(v)
    if e.op in ("add", "sub"):
        folded = TowerInt(e.op, tuple(normalize(a) for a in e.args))
        const, terms = _sum_parts(folded)
        if not terms:
            return nat(const)
        if len(terms) == 1 and const == 0 and terms[0][1] == 1:
            return terms[0][0]
        return _rebuild_sum(terms, const)
    if e.op == "mul":
        parts = [normalize(x) for x in e.args]
        # Splitting a base into primes can surface a base already present,
        # so flatten, merge, and renormalize until the factor list settles.
        for _ in range(64):
            coeff = 1
            groups: dict[TowerInt, list[TowerInt]] = {}
            order: list[TowerInt] = []
            for part in parts:
                c, factors = _mul_parts(part)
                coeff *= c
                for f in factors:
                    base, exp = (f.args if f.op == "pow" else (f, nat(1)))
                    if base not in groups:
                        groups[base] = []
                        order.append(base)
                    groups[base].append(exp)
            if coeff == 0:
                return nat(0)
            if coeff > 1:
                # Primes of the coefficient that already appear as bases
                # migrate into those bases' exponents.
                leftover = 1
                for p, k in _prime_split(coeff):
                    if nat(p) in groups:
                        groups[nat(p)].append(nat(k))
                    else:
                        leftover *= p ** k
                coeff = leftover
            merged = []
            for base in order:
                exps = groups[base]
                total = exps[0]
                for x in exps[1:]:
                    total = TowerInt("add", (total, x))
                merged.append(normalize(TowerInt("pow", (base, total))))
            stable = all(f.op not in ("mul", "nat") for f in merged) and len(
                {_as_power(f)[0] for f in merged}
            ) == len(merged)
            if stable:
                return _rebuild_product(merged, coeff)
            parts = [nat(coeff)] + merged
        raise RuntimeError("product normalization did not stabilize")
    if e.op == "pow":
        base, exp = (normalize(x) for x in e.args)
        ev = evaluate(exp)
        if ev == 0:
            return nat(1)
        if ev == 1:
            return base
        if base.op == "nat":
            bv = base.args[0]
            if bv in (0, 1):
                return base
            split = _prime_split(bv)
            if len(split) > 1 or split[0][1] > 1:
                prod = None
                for p, k in split:
                    f = normalize(
                        TowerInt("pow", (nat(p), TowerInt("mul", (nat(k), exp))))
                    )
                    prod = f if prod is None else TowerInt("mul", (prod, f))
                return normalize(prod)
            return TowerInt("pow", (base, exp))
        if base.op == "pow":
            inner_base, inner_exp = base.args
            return normalize(
                TowerInt("pow", (inner_base, TowerInt("mul", (inner_exp, exp))))
            )
        if base.op == "mul":
            c, factors = _mul_parts(base)
            parts = [TowerInt("pow", (f, exp)) for f in factors]
            if c != 1:
                parts.append(TowerInt("pow", (nat(c), exp)))
            prod = parts[0]
            for p in parts[1:]:
                prod = TowerInt("mul", (prod, p))
            return normalize(prod)
        return TowerInt("pow", (base, exp))
    return e


def _merge_nat_factors(e: TowerInt) -> TowerInt:
    c, factors = _mul_parts(e)
    return _rebuild_product(factors, c)


def _log2_bounds(b: int, precision: int) -> tuple[tuple[int, int], tuple[int, int]]:
    # Rational lo <= log2(b) <= hi with denominator 2^precision; large
    # literals get the unit-precision bit-length bracket instead, since
    # raising them to 2^precision is not affordable.
    if b >= _FACTOR_BOUND:
        return (b.bit_length() - 1, 1), (b.bit_length(), 1)
    q = 1 << precision
    p = (b ** q).bit_length() - 1
    return (p, q), (p + 1, q)


def _compare_ints(a: int, b: int) -> int:
    return (a > b) - (a < b)


def _as_power(e: TowerInt) -> tuple[TowerInt, TowerInt]:
    if e.op == "pow":
        return e.args[0], e.args[1]
    return e, nat(1)


_PRECISIONS = (4, 8, 12, 16, 18)


def _compare_power_pair(e1: TowerInt, e2: TowerInt, depth: int) -> int:
    b1, x1 = _as_power(e1)
    b2, x2 = _as_power(e2)
    if b1 == b2:
        return _compare_norm(normalize(x1), normalize(x2), depth + 1)
    v1, v2 = evaluate(b1), evaluate(b2)
    if v1 is None or v2 is None:
        return _escalate(e1, e2)
    if v1 < 2 or v2 < 2:
        small, big = (e1, e2) if v1 < 2 else (e2, e1)
        sign = 1 if small is e2 else -1
        return sign if _compare_norm(big, nat(1), depth + 1) > 0 else 0
    for precision in _PRECISIONS:
        (lo1, q1), (hi1, _) = _log2_bounds(v1, precision)
        (lo2, q2), (hi2, _) = _log2_bounds(v2, precision)
        # x1*log2(b1) vs x2*log2(b2), cross-multiplied into tower products
        # so the recursion runs one exponent level down.
        if (
            _compare_norm(
                normalize(TowerInt("mul", (x1, nat(lo1 * q2)))),
                normalize(TowerInt("mul", (x2, nat(hi2 * q1)))),
                depth + 1,
            )
            > 0
        ):
            return 1
        if (
            _compare_norm(
                normalize(TowerInt("mul", (x2, nat(lo2 * q1)))),
                normalize(TowerInt("mul", (x1, nat(hi1 * q2)))),
                depth + 1,
            )
            > 0
        ):
            return -1
    return _escalate(e1, e2)


def _monomial_form(e: TowerInt) -> tuple[int, tuple[tuple[int, int], ...]] | None:
    # (coefficient, ((base, exponent), ...)) when e is a product of powers
    # with concrete bases >= 2 and concrete exponents.
    c, factors = _mul_parts(e)
    vec = []
    for f in factors:
        base, exp = _as_power(f)
        bv, ev = evaluate(base), evaluate(exp)
        if bv is None or ev is None or bv < 2:
            return None
        vec.append((bv, ev))
    return c, tuple(sorted(vec))


def _log2_total(form, precision: int):
    # Exact rational bracket of log2(coeff * prod base^exp).
    c, vec = form
    lo = hi = Fraction(0)
    if c > 1:
        (p, qq), (p1, _) = _log2_bounds(c, precision)
        lo += Fraction(p, qq)
        hi += Fraction(p1, qq)
    for base, exp in vec:
        (p, qq), (p1, _) = _log2_bounds(base, precision)
        lo += Fraction(exp * p, qq)
        hi += Fraction(exp * p1, qq)
    return lo, hi


def _compare_monomials(a: TowerInt, b: TowerInt) -> int | None:
    fa, fb = _monomial_form(a), _monomial_form(b)
    if fa is None or fb is None:
        return None
    if fa == fb:
        return 0
    for precision in _PRECISIONS:
        lo_a, hi_a = _log2_total(fa, precision)
        lo_b, hi_b = _log2_total(fb, precision)
        if lo_a > hi_b:
            return 1
        if lo_b > hi_a:
            return -1
    return None


def _escalate(e1: TowerInt, e2: TowerInt) -> int:
    cap = DIGIT_CAP
    while cap <= _ESCALATION_CAP:
        cap *= 10
        v1, v2 = evaluate(e1, cap), evaluate(e2, cap)
        if v1 is not None and v2 is not None:
            return _compare_ints(v1, v2)
    raise RuntimeError("comparison exceeded every materialization escalation")


def _sum_bracket(e: TowerInt, depth: int) -> tuple[TowerInt, int]:
    # (M, count) for a canonical sum: every addend is at most M and there
    # are count of them, so M < e <= count * M and count * M is a product,
    # never a sum, which keeps the comparison recursion grounded.
    const, terms = _sum_parts(e)
    count = sum(c for _, c in terms) + (1 if const else 0)
    best = nat(const) if const else None
    for term, _ in terms:
        if best is None or _compare_norm(term, best, depth + 1) > 0:
            best = term
    return best, count


def _compare_norm(a: TowerInt, b: TowerInt, depth: int = 0) -> int:
    if a == b:
        return 0
    va, vb = evaluate(a), evaluate(b)
    if va is not None and vb is not None:
        return _compare_ints(va, vb)
    if depth > 200:
        return _escalate(a, b)
    # u - k vs y is exactly u vs y + k, which clears every subtraction.
    if a.op == "sub":
        u, k = a.args
        return _compare_norm(u, normalize(b + k), depth + 1)
    if b.op == "sub":
        u, k = b.args
        return -_compare_norm(u, normalize(a + k), depth + 1)
    for x, y, sign in ((a, b, 1), (b, a, -1)):
        if x.op == "add" and y.op != "add":
            m, count = _sum_bracket(x, depth)
            if _compare_norm(y, m, depth + 1) <= 0:
                return sign
            upper = normalize(TowerInt("mul", (nat(count), m)))
            if _compare_norm(y, upper, depth + 1) > 0:
                return -sign
            return -sign * _escalate(y, x)
    if a.op == "add" and b.op == "add":
        ma, ca = _sum_bracket(a, depth)
        mb, cb = _sum_bracket(b, depth)
        if _compare_norm(ma, normalize(TowerInt("mul", (nat(cb), mb))), depth + 1) >= 0:
            return 1
        if _compare_norm(mb, normalize(TowerInt("mul", (nat(ca), ma))), depth + 1) >= 0:
            return -1
        return _escalate(a, b)
    mono = _compare_monomials(a, b)
    if mono is not None:
        return mono
    ca, fa = _mul_parts(a)
    cb, fb = _mul_parts(b)
    if len(fa) == len(fb) == 1 and ca == cb:
        return _compare_power_pair(fa[0], fb[0], depth)
    if not fa or not fb:
        # One side is a plain integer.  Normal forms are monotone in their
        # literals (no zero or unit bases survive normalization, and every
        # subtrahend is a literal far below the digit cap), so failing to
        # materialize at a cap wider than that integer settles the order.
        only, other, sign = (a, b, -1) if not fa else (b, a, 1)
        oc, _ = _mul_parts(only)
        v = evaluate(other, max(DIGIT_CAP, _digits_of_int(oc) + 2))
        if v is not None:
            return sign * _compare_ints(v, oc)
        return sign
    # Last resort: pair off dominant factors; agreement on both halves
    # decides, anything else escalates to wider materialization.
    da = max(fa, key=_sort_key)
    db = max(fb, key=_sort_key)
    resta = normalize(_rebuild_product([f for f in fa if f is not da], ca))
    restb = normalize(_rebuild_product([f for f in fb if f is not db], cb))
    lead = _compare_power_pair(da, db, depth)
    rest = _compare_norm(resta, restb, depth + 1)
    if lead == 0:
        return rest
    if rest == 0 or rest == lead:
        return lead
    return _escalate(a, b)


def tower_compare(a: TowerInt, b: TowerInt) -> int:
    """Exact ordering of the denoted values: -1, 0, or 1."""
    return _compare_norm(normalize(a), normalize(b))


def sigma(s: int, r: int) -> TowerInt:
    """The threshold s^((4s)^(r-1))."""
    if s < 1 or r < 1:
        raise ValueError("sigma needs s >= 1 and r >= 1")
    return normalize(nat(s) ** (nat(4 * s) ** nat(r - 1)))


def tree_constants(a: int, n: int) -> tuple[TowerInt, TowerInt, TowerInt]:
    """(theta_n, mu_n, lambda_n) for branching a, with mu_1 = 1, lambda_1 = 0."""
    if a < 1 or n < 1:
        raise ValueError("tree_constants needs a >= 1 and n >= 1")
    mu, lam = nat(1), nat(0)
    theta = _theta(a, 1)
    for i in range(2, n + 1):
        theta = _theta(a, i)
        mu = normalize(((3 * nat(a) ** (2 * theta) + 2) * mu) ** 3)
        lam = normalize((3 * lam + 6 * theta).minus(4))
    return theta, mu, lam


def _theta(a: int, n: int) -> TowerInt:
    return normalize(nat(3) ** (nat(12) ** nat(n * a ** (n - 1) - 1)))


def sep_constant(h: int, c31: TowerInt, d31: TowerInt) -> TowerInt:
    """The forest-separability constant c + d at parameters (h+1, h+1)."""
    if h < 0:
        raise ValueError("forest size must be nonnegative")
    return normalize(c31 + d31)


def main_constant(d: TowerInt, d_prime: TowerInt) -> TowerInt:
    """The headline constant (d + 2) * d'."""
    return normalize((d + 2) * d_prime)


@dataclass(frozen=True)
class SigmaCheck:
    label: str
    holds: bool


@dataclass(frozen=True)
class SigmaReport:
    alpha: int
    t: int
    s: int
    r_max: int
    checks: tuple[SigmaCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok


def verify_sigma_inequalities(alpha: int, t: int, s: int, r_max: int) -> SigmaReport:
    """Check both displayed threshold inequalities up to r_max.

    The base inequality compares alpha^sigma_2 t^(sigma_2 - 1) against
    alpha^s t^(s-1) + alpha^((2s)^(2s-1) - 1) s^2-weighted term; the step
    inequality does the analogous comparison from sigma_{r-1} to sigma_r
    for every 2 <= r <= r_max.
    """
    if alpha < 2 or s < 2:
        raise ValueError("the inequality block assumes alpha >= 2 and s >= 2")
    if t < 1 or r_max < 1:
        raise ValueError("t and r_max must be positive")
    al, tt = nat(alpha), nat(t)

    def side(exp: TowerInt) -> TowerInt:
        return al ** exp * tt ** exp.minus(1)

    checks = []
    s2 = sigma(s, 2)
    mid = nat(((2 * s) ** (2 * s - 1) - 1) * s * s)
    lhs = side(s2)
    rhs = side(nat(s)) + side(mid)
    checks.append(SigmaCheck("base: sigma_2 beats the s-level split", tower_compare(lhs, rhs) > 0))
    for r in range(2, r_max + 1):
        prev = sigma(s, r - 1)
        lhs = side(sigma(s, r))
        rhs = side(prev) + side(normalize(prev ** 3))
        checks.append(
            SigmaCheck(f"step r={r}: sigma_{r} beats the sigma_{r - 1} split", tower_compare(lhs, rhs) > 0)
        )
    return SigmaReport(alpha, t, s, r_max, tuple(checks))


def to_tower_str(e: TowerInt) -> str:
    """Compact nested-operator rendering of the expression."""
    e = normalize(e)

    def render(x: TowerInt, parent: str) -> str:
        if x.op == "nat":
            v = x.args[0]
            s = str(v) if _digits_of_int(v) <= 40 else f"~10^{_digits_of_int(v) - 1}"
            return s
        sym = {"add": " + ", "sub": " - ", "mul": "*", "pow": "^"}[x.op]
        left = render(x.args[0], x.op)
        right = render(x.args[1], x.op)
        body = f"{left}{sym}{right}"
        if parent in ("pow", "mul") and x.op in ("add", "sub"):
            return f"({body})"
        if parent == "pow" and x.op in ("mul", "pow"):
            return f"({body})"
        return body

    return render(e, "")


def digit_estimate(e: TowerInt) -> str:
    """Human-readable digit count: exact within the cap, else a bound sketch."""
    d = e.digits()
    if d is not None:
        return str(d)
    n = normalize(e)
    if n.op == "pow":
        base, exp = n.args
        bv = evaluate(base)
        ev = evaluate(exp)
        if bv is not None and ev is not None:
            approx = ev * (_digits_of_int(bv) - 1) if bv > 1 else 0
            return f"~10^{_digits_of_int(max(approx, 1)) - 1} digits (beyond cap)"
    return "beyond the materialization cap"
