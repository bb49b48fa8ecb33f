"""Exact polynomial and log-rational calculus over the variables z_i^(j).

A variable carries an index i (1..n) and a level j (1..k).  Expressions
are sums

    poly  +  sum over L of ln(L) * g_L  +  sum over (L, d) of P_{L,d} / L^d

where every L is a difference of two level-1 variables.  The class is
closed under partial differentiation, which is all the verification
machinery needs: potentials are log-polynomials in this class and their
derivatives never leave it.

Monomials are sparse, terms are kept in a dict with zero coefficients
dropped, and the printable form orders terms by descending graded
lexicographic order on (i, j).  That order also fixes the on-disk
exchange format:

    POLY                        section holding the free polynomial
    LOG p q                     section: coefficient of ln(z_p - z_q)
    DEN p q d                   section: numerator of 1/(z_p - z_q)^d
    <num>/<den> ; (i,j)^e ...   one term per line, canonical order

Serialization round-trips bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, NamedTuple

import re

ZERO = Fraction(0)
ONE = Fraction(1)


class Var(NamedTuple):
    """The variable z_i^(j): hyperplane index i, level j (both 1-based)."""

    i: int
    j: int


# Monomial: tuple of (Var, exponent) pairs, sorted by Var, exponents > 0.
Monomial = tuple[tuple[Var, int], ...]

EMPTY_MONO: Monomial = ()


def mono_degree(mono: Monomial) -> int:
    return sum(e for _, e in mono)


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    merged: dict[Var, int] = dict(m1)
    for v, e in m2:
        merged[v] = merged.get(v, 0) + e
    return tuple(sorted(merged.items()))


def _mono_sort_key(mono: Monomial):
    # Descending graded lex: high degree first, then earlier variables
    # with higher exponents first.
    return (-mono_degree(mono), tuple((v, -e) for v, e in mono))


def derivative_order_key(v: Var) -> tuple[int, int]:
    """Canonical order for iterated partials: higher levels first.

    Only level-1 derivatives create denominator terms, so running them
    last keeps intermediate derivatives polynomial for as long as
    possible.  Mixed partials commute, so any fixed order is valid.
    """
    return (-v.j, v.i)


class Polynomial:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        self.terms: dict[Monomial, Fraction] = (
            {m: c for m, c in terms.items() if c} if terms else {}
        )

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def constant(cls, c) -> "Polynomial":
        c = Fraction(c)
        return cls({EMPTY_MONO: c} if c else {})

    @classmethod
    def variable(cls, v: Var) -> "Polynomial":
        return cls({((Var(*v), 1),): ONE})

    @classmethod
    def difference(cls, p: int, q: int, level: int) -> "Polynomial":
        """The binomial z_p^(level) - z_q^(level)."""
        return cls({((Var(p, level), 1),): ONE, ((Var(q, level), 1),): -ONE})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and EMPTY_MONO in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("polynomial is not constant")
        return self.terms.get(EMPTY_MONO, ZERO)

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        raise TypeError("Polynomial is not hashable")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        res = Polynomial.__new__(Polynomial)
        res.terms = out
        return res

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        res = Polynomial.__new__(Polynomial)
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            out: dict[Monomial, Fraction] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = mono_mul(m1, m2)
                    s = out.get(m, ZERO) + c1 * c2
                    if s:
                        out[m] = s
                    else:
                        out.pop(m, None)
            res = Polynomial.__new__(Polynomial)
            res.terms = out
            return res
        c = Fraction(other)
        if not c:
            return Polynomial.zero()
        res = Polynomial.__new__(Polynomial)
        res.terms = {m: c * v for m, v in self.terms.items()}
        return res

    __rmul__ = __mul__

    def differentiate(self, v: Var) -> "Polynomial":
        v = Var(*v)
        out: dict[Monomial, Fraction] = {}
        for mono, c in self.terms.items():
            for pos, (var, e) in enumerate(mono):
                if var == v:
                    if e == 1:
                        new = mono[:pos] + mono[pos + 1 :]
                    else:
                        new = mono[:pos] + ((var, e - 1),) + mono[pos + 1 :]
                    s = out.get(new, ZERO) + c * e
                    if s:
                        out[new] = s
                    else:
                        out.pop(new, None)
                    break
        res = Polynomial.__new__(Polynomial)
        res.terms = out
        return res

    def evaluate(self, point: Mapping[Var, Fraction]) -> Fraction:
        total = ZERO
        for mono, c in self.terms.items():
            val = c
            for var, e in mono:
                val *= point[var] ** e
            total += val
        return total

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return [(m, self.terms[m]) for m in sorted(self.terms, key=_mono_sort_key)]

    def __repr__(self) -> str:
        if not self.terms:
            return "Polynomial(0)"
        bits = []
        for m, c in self.sorted_terms():
            mono = "".join(f"*z({v.i},{v.j})^{e}" for v, e in m)
            bits.append(f"{c}{mono}")
        return "Polynomial(" + " + ".join(bits) + ")"


@dataclass(frozen=True, order=True)
class LinearForm:
    """The level-1 difference z_p^(1) - z_q^(1), normalized to p < q."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if not 1 <= self.p < self.q:
            raise ValueError(f"linear form requires 1 <= p < q, got ({self.p}, {self.q})")

    @classmethod
    def of(cls, a: int, b: int) -> tuple["LinearForm", int]:
        """Normalized form plus the sign relating z_a - z_b to it."""
        if a == b:
            raise ValueError("degenerate linear form z_a - z_a")
        return (cls(a, b), 1) if a < b else (cls(b, a), -1)

    def sign_of(self, v: Var) -> int:
        if v.j != 1:
            return 0
        if v.i == self.p:
            return 1
        if v.i == self.q:
            return -1
        return 0

    def as_polynomial(self) -> Polynomial:
        return Polynomial.difference(self.p, self.q, 1)

    def evaluate(self, point: Mapping[Var, Fraction]) -> Fraction:
        return point[Var(self.p, 1)] - point[Var(self.q, 1)]


def _merge_den(
    dens: dict[LinearForm, dict[int, Polynomial]], L: LinearForm, d: int, num: Polynomial
) -> None:
    if num.is_zero:
        return
    slot = dens.setdefault(L, {})
    acc = slot.get(d)
    acc = num if acc is None else acc + num
    if acc.is_zero:
        slot.pop(d, None)
    else:
        slot[d] = acc


class LogRationalExpr:
    """poly + sum of ln(L)*g_L + sum of P_{L,d}/L^d, closed under d/dz."""

    __slots__ = ("poly", "logs", "dens")

    def __init__(
        self,
        poly: Polynomial | None = None,
        logs: Mapping[LinearForm, Polynomial] | None = None,
        dens: Mapping[LinearForm, Mapping[int, Polynomial]] | None = None,
    ):
        self.poly = poly if poly is not None else Polynomial.zero()
        self.logs = {L: g for L, g in (logs or {}).items() if not g.is_zero}
        self.dens: dict[LinearForm, dict[int, Polynomial]] = {}
        for L, by_pow in (dens or {}).items():
            kept = {d: num for d, num in by_pow.items() if not num.is_zero}
            if kept:
                if min(kept) < 1:
                    raise ValueError("denominator powers must be >= 1")
                self.dens[L] = kept

    @classmethod
    def zero(cls) -> "LogRationalExpr":
        return cls()

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "LogRationalExpr":
        return cls(poly=p)

    @classmethod
    def constant(cls, c) -> "LogRationalExpr":
        return cls(poly=Polynomial.constant(c))

    @classmethod
    def log_term(cls, L: LinearForm, g: Polynomial) -> "LogRationalExpr":
        return cls(logs={L: g})

    @classmethod
    def den_term(cls, L: LinearForm, d: int, num: Polynomial) -> "LogRationalExpr":
        return cls(dens={L: {d: num}})

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero and not self.logs and not self.dens

    @property
    def is_log_free(self) -> bool:
        return not self.logs

    def denominator_powers(self) -> set[int]:
        return {d for by_pow in self.dens.values() for d in by_pow}

    def __eq__(self, other) -> bool:
        """Structural equality (same normalized representation).

        Use expr_equal for mathematical equality of rational parts.
        """
        return (
            isinstance(other, LogRationalExpr)
            and self.poly == other.poly
            and self.logs == other.logs
            and self.dens == other.dens
        )

    def __hash__(self):
        raise TypeError("LogRationalExpr is not hashable")

    def __add__(self, other: "LogRationalExpr") -> "LogRationalExpr":
        logs = dict(self.logs)
        for L, g in other.logs.items():
            acc = logs.get(L)
            acc = g if acc is None else acc + g
            if acc.is_zero:
                logs.pop(L, None)
            else:
                logs[L] = acc
        dens = {L: dict(by_pow) for L, by_pow in self.dens.items()}
        for L, by_pow in other.dens.items():
            for d, num in by_pow.items():
                _merge_den(dens, L, d, num)
        dens = {L: by_pow for L, by_pow in dens.items() if by_pow}
        res = LogRationalExpr.__new__(LogRationalExpr)
        res.poly = self.poly + other.poly
        res.logs = logs
        res.dens = dens
        return res

    def __sub__(self, other: "LogRationalExpr") -> "LogRationalExpr":
        return self + (-other)

    def __neg__(self) -> "LogRationalExpr":
        res = LogRationalExpr.__new__(LogRationalExpr)
        res.poly = -self.poly
        res.logs = {L: -g for L, g in self.logs.items()}
        res.dens = {
            L: {d: -num for d, num in by_pow.items()} for L, by_pow in self.dens.items()
        }
        return res

    def __mul__(self, other) -> "LogRationalExpr":
        """Multiply by a scalar or a Polynomial; the class is closed."""
        factor = other if isinstance(other, Polynomial) else Polynomial.constant(other)
        return LogRationalExpr(
            poly=self.poly * factor,
            logs={L: g * factor for L, g in self.logs.items()},
            dens={
                L: {d: num * factor for d, num in by_pow.items()}
                for L, by_pow in self.dens.items()
            },
        )

    __rmul__ = __mul__

    def differentiate(self, v: Var) -> "LogRationalExpr":
        """Exact partial derivative with respect to z_v.

        d(ln L * g) = ln L * g' + s*g/L and
        d(P/L^d)    = P'/L^d - d*s*P/L^(d+1), where s = dL/dz_v.
        """
        v = Var(*v)
        poly = self.poly.differentiate(v)
        logs: dict[LinearForm, Polynomial] = {}
        dens: dict[LinearForm, dict[int, Polynomial]] = {}
        for L, g in self.logs.items():
            dg = g.differentiate(v)
            if not dg.is_zero:
                logs[L] = dg
            s = L.sign_of(v)
            if s:
                _merge_den(dens, L, 1, g if s > 0 else -g)
        for L, by_pow in self.dens.items():
            s = L.sign_of(v)
            for d, num in by_pow.items():
                _merge_den(dens, L, d, num.differentiate(v))
                if s:
                    _merge_den(dens, L, d + 1, num * Fraction(-d * s))
        dens = {L: by_pow for L, by_pow in dens.items() if by_pow}
        res = LogRationalExpr.__new__(LogRationalExpr)
        res.poly = poly
        res.logs = logs
        res.dens = dens
        return res

    def evaluate(self, point: Mapping[Var, Fraction]) -> Fraction:
        """Exact value at a point; requires a log-free expression and no
        coincident level-1 coordinates on the denominators touched."""
        if self.logs:
            raise ValueError("expression contains log terms; its value is transcendental")
        total = self.poly.evaluate(point)
        for L, by_pow in self.dens.items():
            lval = L.evaluate(point)
            if lval == 0:
                raise ZeroDivisionError(
                    f"pole hit: z_{L.p}^(1) and z_{L.q}^(1) coincide at the evaluation point"
                )
            for d, num in by_pow.items():
                total += num.evaluate(point) / lval**d
        return total

    def reduced(self) -> "LogRationalExpr":
        """Canonical form: numerators carry no factor of their own L.

        Exact division cascades quotients toward lower powers and finally
        into the free polynomial; the value is unchanged.
        """
        poly = self.poly
        dens: dict[LinearForm, dict[int, Polynomial]] = {}
        for L, by_pow in self.dens.items():
            work = dict(by_pow)
            settled: dict[int, Polynomial] = {}
            for d in range(max(work), 0, -1):
                num = work.pop(d, None)
                if num is None or num.is_zero:
                    continue
                quot, rem = divmod_linear(num, L)
                if not rem.is_zero:
                    settled[d] = rem
                if quot.is_zero:
                    continue
                if d == 1:
                    poly = poly + quot
                else:
                    work[d - 1] = work.get(d - 1, Polynomial.zero()) + quot
            if settled:
                dens[L] = settled
        return LogRationalExpr(poly=poly, logs=dict(self.logs), dens=dens)

    def __repr__(self) -> str:
        return (
            f"LogRationalExpr(poly={len(self.poly.terms)}t, "
            f"logs={len(self.logs)}, dens={sum(len(b) for b in self.dens.values())})"
        )


def divmod_linear(poly: Polynomial, L: LinearForm) -> tuple[Polynomial, Polynomial]:
    """Exact division of a polynomial by z_p - z_q.

    Returns (quotient, remainder); the remainder is free of z_p^(1) and
    therefore not divisible by L unless it is zero.
    """
    vp = Var(L.p, 1)
    vq = Var(L.q, 1)
    by_exp: dict[int, dict[Monomial, Fraction]] = {}
    for mono, c in poly.terms.items():
        e = 0
        rest = mono
        for pos, (var, exp) in enumerate(mono):
            if var == vp:
                e = exp
                rest = mono[:pos] + mono[pos + 1 :]
                break
        bucket = by_exp.setdefault(e, {})
        bucket[rest] = bucket.get(rest, ZERO) + c
    if not by_exp:
        return Polynomial.zero(), Polynomial.zero()
    top = max(by_exp)
    coeffs = {e: Polynomial(t) for e, t in by_exp.items()}
    zq = Polynomial.variable(vq)
    quot_parts: dict[int, Polynomial] = {}
    carry = coeffs.get(top, Polynomial.zero())
    for e in range(top, 0, -1):
        quot_parts[e - 1] = carry
        carry = coeffs.get(e - 1, Polynomial.zero()) + zq * carry
    remainder = carry
    quotient = Polynomial.zero()
    for e, part in quot_parts.items():
        if part.is_zero:
            continue
        if e == 0:
            quotient = quotient + part
        else:
            quotient = quotient + part * Polynomial({((vp, e),): ONE})
    return quotient, remainder


def expr_equal(a: LogRationalExpr, b: LogRationalExpr) -> bool:
    """Mathematical equality within the class.

    Log coefficients are compared directly (logarithms of distinct linear
    forms are independent over rational functions); the rational parts
    are compared after clearing to the common denominator built from the
    maximal power of each linear form present in either expression.
    """
    for L in set(a.logs) | set(b.logs):
        if a.logs.get(L, Polynomial.zero()) != b.logs.get(L, Polynomial.zero()):
            return False
    max_pow: dict[LinearForm, int] = {}
    for e in (a, b):
        for L, by_pow in e.dens.items():
            max_pow[L] = max(max_pow.get(L, 0), max(by_pow))
    if not max_pow:
        return a.poly == b.poly
    denominator = Polynomial.constant(1)
    for L, m in sorted(max_pow.items()):
        lp = L.as_polynomial()
        for _ in range(m):
            denominator = denominator * lp
    # denominator / L^d, computed once per (L, d) by exact division
    partial: dict[LinearForm, list[Polynomial]] = {}
    for L, m in max_pow.items():
        quots = []
        cur = denominator
        for _ in range(m):
            cur, rem = divmod_linear(cur, L)
            assert rem.is_zero
            quots.append(cur)
        partial[L] = quots

    def cleared(e: LogRationalExpr) -> Polynomial:
        total = e.poly * denominator
        for L, by_pow in e.dens.items():
            for d, num in by_pow.items():
                total = total + num * partial[L][d - 1]
        return total

    return cleared(a) == cleared(b)


def apply_partial_I(expr, elements: Iterable[int]):
    """The order-k operator summing mixed partials over all assignments
    of levels 1..k to the indices of a k-subset.

    Works on Polynomial and LogRationalExpr alike.
    """
    elems = tuple(sorted(elements))
    if len(set(elems)) != len(elems):
        raise ValueError("index set must consist of distinct elements")
    memo: dict[tuple[Var, ...], object] = {(): expr}
    total = None
    for perm in permutations(elems):
        variables = tuple(Var(idx, level + 1) for level, idx in enumerate(perm))
        d = iterated_derivative(expr, variables, memo)
        total = d if total is None else total + d
    return total if total is not None else expr


def iterated_derivative(expr, variables: Iterable[Var], memo=None):
    """Mixed partial for a multiset of variables, memoized by sorted prefix."""
    key = tuple(sorted((Var(*v) for v in variables), key=derivative_order_key))
    if memo is None:
        memo = {(): expr}
    cur = None
    start = 0
    for t in range(len(key), -1, -1):
        if key[:t] in memo:
            cur = memo[key[:t]]
            start = t
            break
    for t in range(start, len(key)):
        cur = cur.differentiate(key[t])
        memo[key[: t + 1]] = cur
    return cur


class DerivativeCache:
    """Shared memo of iterated partial derivatives of one base expression.

    Prefixes in the canonical variable order are cached, so the many
    permutation multisets arising from the partial operators reuse each
    other's work.
    """

    def __init__(self, base):
        self._memo: dict[tuple[Var, ...], object] = {(): base}

    def derivative(self, variables: Iterable[Var]):
        return iterated_derivative(self._memo[()], variables, self._memo)

    def cached_count(self) -> int:
        return len(self._memo)


# ---------------------------------------------------------------------------
# Exchange format
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"^(-?\d+)/(\d+)\s*;\s*(.*)$")
_FACTOR_RE = re.compile(r"^\((\d+),(\d+)\)\^(\d+)$")


def _term_lines(p: Polynomial) -> list[str]:
    lines = []
    for mono, c in p.sorted_terms():
        parts = [f"{c.numerator}/{c.denominator}", ";"]
        parts.extend(f"({v.i},{v.j})^{e}" for v, e in mono)
        lines.append(" ".join(parts))
    return lines


def dumps_expr(e: LogRationalExpr) -> str:
    """Canonical serialization; deterministic bytes for equal expressions."""
    lines: list[str] = []
    if not e.poly.is_zero:
        lines.append("POLY")
        lines.extend(_term_lines(e.poly))
    for L in sorted(e.logs):
        lines.append(f"LOG {L.p} {L.q}")
        lines.extend(_term_lines(e.logs[L]))
    for L in sorted(e.dens):
        for d in sorted(e.dens[L]):
            lines.append(f"DEN {L.p} {L.q} {d}")
            lines.extend(_term_lines(e.dens[L][d]))
    return "\n".join(lines) + "\n" if lines else ""


def dumps_polynomial(p: Polynomial) -> str:
    return dumps_expr(LogRationalExpr.from_polynomial(p))


def _parse_term(line: str) -> tuple[Monomial, Fraction]:
    m = _TERM_RE.match(line)
    if not m:
        raise ValueError(f"malformed term line: {line!r}")
    coeff = Fraction(int(m.group(1)), int(m.group(2)))
    factors = []
    rest = m.group(3).strip()
    if rest:
        for tok in rest.split():
            fm = _FACTOR_RE.match(tok)
            if not fm:
                raise ValueError(f"malformed monomial factor: {tok!r}")
            factors.append((Var(int(fm.group(1)), int(fm.group(2))), int(fm.group(3))))
    return tuple(sorted(factors)), coeff


def loads_expr(text: str) -> LogRationalExpr:
    Terms = dict[Monomial, Fraction]
    poly_terms: Terms = {}
    log_terms: dict[LinearForm, Terms] = {}
    den_terms: dict[LinearForm, dict[int, Terms]] = {}
    target: Terms | None = None

    def open_section(header: str) -> Terms:
        fields = header.split()
        if fields[0] == "POLY" and len(fields) == 1:
            return poly_terms
        if fields[0] == "LOG" and len(fields) == 3:
            L = LinearForm(int(fields[1]), int(fields[2]))
            return log_terms.setdefault(L, {})
        if fields[0] == "DEN" and len(fields) == 4:
            L = LinearForm(int(fields[1]), int(fields[2]))
            d = int(fields[3])
            if d < 1:
                raise ValueError(f"denominator power must be >= 1: {header!r}")
            return den_terms.setdefault(L, {}).setdefault(d, {})
        raise ValueError(f"malformed section header: {header!r}")

    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line[0].isalpha():
            target = open_section(line)
            continue
        if target is None:
            raise ValueError("term line before any section header")
        mono, c = _parse_term(line)
        target[mono] = target.get(mono, ZERO) + c

    return LogRationalExpr(
        poly=Polynomial(poly_terms),
        logs={L: Polynomial(t) for L, t in log_terms.items()},
        dens={L: {d: Polynomial(t) for d, t in by.items()} for L, by in den_terms.items()},
    )


def loads_polynomial(text: str) -> Polynomial:
    e = loads_expr(text)
    if e.logs or e.dens:
        raise ValueError("expected a pure polynomial serialization")
    return e.poly
