"""Potentials of the first and second kind and their verification.

Both potentials are sums over ordered sequences of k pairwise-disjoint
unordered pairs from {1, ..., n}.  Each sequence contributes the product
of squared level-wise differences; the second kind multiplies in the
logarithm of the first pair's level-1 difference.  Second derivatives of
the first potential under the partial operators reproduce the pairings
of projected basis vectors, and third-order derivatives of the second
potential reproduce the reduced Hamiltonian pairings; the verify_*
functions check those identities exactly.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Iterator, Sequence

from .operators import PairingFunction, ParameterPoint, hamiltonian_apply, hamiltonian_pairing
from .points import deterministic_parameter_points, deterministic_z_points
from .projection import coefficients, project
from .report import CheckReport, FailureCollector
from .symbolic import (
    DerivativeCache,
    LinearForm,
    LogRationalExpr,
    Polynomial,
    Var,
    derivative_order_key,
    expr_equal,
)
from .weight_space import SubsetIndex, basis_vector, subsets

# An ordered sequence of k disjoint unordered pairs, each stored (p, q)
# with p < q.
PairSequence = tuple[tuple[int, int], ...]


def _require_sizes(n: int, k: int) -> None:
    if k < 1:
        raise ValueError("the potentials are defined for k >= 1; k = 0 is vacuous")
    if n < 2 * k:
        raise ValueError(f"need n >= 2k, got n={n}, k={k}")


def alpha_count(n: int, k: int) -> int:
    """Number of pair sequences: n! / (2^k (n-2k)!)."""
    return factorial(n) // (2**k * factorial(n - 2 * k))


def enumerate_alpha(n: int, k: int) -> Iterator[PairSequence]:
    """All pair sequences, each once, in lexicographic order of the
    flattened normalized pair list."""
    if n < 2 * k:
        raise ValueError(f"need n >= 2k, got n={n}, k={k}")
    all_pairs = [(p, q) for p in range(1, n + 1) for q in range(p + 1, n + 1)]

    def rec(used: int, depth: int) -> Iterator[PairSequence]:
        if depth == 0:
            yield ()
            return
        for p, q in all_pairs:
            bits = (1 << p) | (1 << q)
            if used & bits:
                continue
            for rest in rec(used | bits, depth - 1):
                yield ((p, q),) + rest

    return rec(0, k)


@dataclass(frozen=True)
class PotentialConstants:
    """Normalizing constants of the two potentials; c2/c1 = -k(n-k+1)."""

    c1: Fraction
    c2: Fraction


def potential_constants(n: int, k: int) -> PotentialConstants:
    _require_sizes(n, k)
    c1 = Fraction(factorial(n - 2 * k + 1), 2**k * factorial(k) * factorial(n - k + 1))
    c2 = -Fraction(factorial(n - 2 * k + 1), 2**k * factorial(k - 1) * factorial(n - k))
    assert c2 / c1 == -k * (n - k + 1)
    return PotentialConstants(c1, c2)


def _pair_square(pair: tuple[int, int], level: int) -> Polynomial:
    d = Polynomial.difference(pair[0], pair[1], level)
    return d * d


def _alpha_product(alpha: PairSequence) -> Polynomial:
    prod = _pair_square(alpha[0], 1)
    for level, pair in enumerate(alpha[1:], start=2):
        prod = prod * _pair_square(pair, level)
    return prod


def build_P(n: int, k: int) -> Polynomial:
    """Potential of the first kind: homogeneous of degree 2k, expanded."""
    _require_sizes(n, k)
    c1 = potential_constants(n, k).c1
    total = Polynomial.zero()
    for alpha in enumerate_alpha(n, k):
        total = total + _alpha_product(alpha)
    return total * c1


def build_Q(n: int, k: int) -> LogRationalExpr:
    """Potential of the second kind: a pure log-polynomial."""
    _require_sizes(n, k)
    c2 = potential_constants(n, k).c2
    logs: dict[LinearForm, Polynomial] = {}
    for alpha in enumerate_alpha(n, k):
        L = LinearForm(*alpha[0])
        g = _alpha_product(alpha)
        logs[L] = logs.get(L, Polynomial.zero()) + g
    return LogRationalExpr(logs={L: g * c2 for L, g in logs.items()})


# ---------------------------------------------------------------------------
# Differentiation plumbing
# ---------------------------------------------------------------------------


def partial_multisets(I: SubsetIndex, J: SubsetIndex) -> list[tuple[tuple[Var, ...], int]]:
    """Variable multisets of the composed partial operators for I and J,
    with multiplicities over all level-assignment pairs."""
    k = I.size
    counter: Counter[tuple[Var, ...]] = Counter()
    for sigma in permutations(I.elements):
        left = [Var(sigma[t], t + 1) for t in range(k)]
        for tau in permutations(J.elements):
            ms = left + [Var(tau[t], t + 1) for t in range(k)]
            counter[tuple(sorted(ms, key=derivative_order_key))] += 1
    return list(counter.items())


def _double_partial(cache: DerivativeCache, I: SubsetIndex, J: SubsetIndex):
    total = None
    for ms, mult in partial_multisets(I, J):
        d = cache.derivative(ms)
        if mult != 1:
            d = d * Fraction(mult)
        total = d if total is None else total + d
    return total


def lift_pairing(pf: PairingFunction) -> LogRationalExpr:
    """View a pairing function as a log-rational expression in the
    level-1 variables (u_i becomes z_i^(1))."""
    dens = {}
    for (p, q), c in pf.terms:
        dens[LinearForm(p, q)] = {1: Polynomial.constant(c)}
    return LogRationalExpr(poly=Polynomial.constant(pf.constant), dens=dens)


# ---------------------------------------------------------------------------
# Case sampling
# ---------------------------------------------------------------------------

EXHAUSTIVE_LIMIT = 6


def sample_pairs(n: int, k: int, sample: str = "auto") -> list[tuple[SubsetIndex, SubsetIndex]]:
    """Pairs (I, J) to check: every pair at small n, otherwise a
    deterministic stratified family covering every intersection size."""
    if sample not in ("auto", "exhaustive", "stratified"):
        raise ValueError(f"unknown sampling policy {sample!r}")
    if sample == "exhaustive" or (sample == "auto" and n <= EXHAUSTIVE_LIMIT):
        alls = subsets(n, k)
        return [(I, J) for I in alls for J in alls]
    pairs = []
    for offset in (0, 1):
        if offset + 2 * k > n:
            continue
        I = SubsetIndex.of(n, range(offset + 1, offset + k + 1))
        for ell in range(k + 1):
            J = SubsetIndex.of(
                n,
                list(range(offset + 1, offset + ell + 1))
                + list(range(offset + k + 1, offset + 2 * k - ell + 1)),
            )
            pairs.append((I, J))
    return pairs


def sample_triples(
    n: int, k: int, sample: str = "auto"
) -> list[tuple[int, SubsetIndex, SubsetIndex]]:
    """Triples (m, I, J); m ranges over everything, so the stratified
    family hits all placement cases of m relative to I and J."""
    return [(m, I, J) for I, J in sample_pairs(n, k, sample) for m in range(1, n + 1)]


# ---------------------------------------------------------------------------
# Theorem verification
# ---------------------------------------------------------------------------


def verify_theorem_first(n: int, k: int, sample: str = "auto") -> CheckReport:
    """Double partial derivatives of the first potential equal the
    closed-form pairings a_{|I meet J|}."""
    _require_sizes(n, k)
    started = time.perf_counter()
    P = build_P(n, k)
    cache = DerivativeCache(P)
    a = coefficients(n, k).a
    col = FailureCollector()
    for I, J in sample_pairs(n, k, sample):
        derived = _double_partial(cache, I, J)
        expected = a[I.intersection_size(J)]
        ok = derived.is_constant and derived.constant_value() == expected
        col.record(ok, I=I, J=J, derived=repr(derived), expected=expected)
    return CheckReport(
        "theorem1", col.passed, col.cases, col.first_failure, elapsed_s=time.perf_counter() - started
    )


def verify_theorem_second(
    n: int,
    k: int,
    sample: str = "auto",
    z_points: Sequence[dict[Var, Fraction]] | None = None,
) -> CheckReport:
    """Third-order derivatives of the second potential equal the reduced
    Hamiltonian pairings, both structurally and at exact points.

    Each derivative must also be log-free with simple poles only.
    """
    _require_sizes(n, k)
    started = time.perf_counter()
    Q = build_Q(n, k)
    cache = DerivativeCache(Q)
    pts = list(z_points) if z_points is not None else deterministic_z_points(n, k)
    u_points = [ParameterPoint(tuple(pt[Var(i, 1)] for i in range(1, n + 1))) for pt in pts]
    col = FailureCollector()
    for I, J in sample_pairs(n, k, sample):
        S = _double_partial(cache, I, J)
        for m in range(1, n + 1):
            E = S.differentiate(Var(m, 1)).reduced()
            pf = hamiltonian_pairing(m, I, J)
            ok = E.is_log_free
            reason = "log terms survive"
            if ok:
                powers = E.denominator_powers()
                ok = powers <= {1}
                reason = f"denominator powers {sorted(powers)}"
            if ok:
                ok = expr_equal(E, lift_pairing(pf))
                reason = "structural mismatch with operator pairing"
            if ok:
                for pt, up in zip(pts, u_points):
                    if E.evaluate(pt) != pf.evaluate(up):
                        ok = False
                        reason = "pointwise mismatch with operator pairing"
                        break
            col.record(ok, m=m, I=I, J=J, reason=reason, pairing=pf)
    return CheckReport(
        "theorem2", col.passed, col.cases, col.first_failure, elapsed_s=time.perf_counter() - started
    )


def verify_relation(
    n: int,
    k: int,
    sample: str = "auto",
    constants: PotentialConstants | None = None,
) -> CheckReport:
    """The Euler-type relation tying the two potentials together:
    (1/c1) * D_I D_J P equals (1/c2) * sum_m z_m * d/dz_m D_I D_J Q."""
    _require_sizes(n, k)
    started = time.perf_counter()
    consts = constants if constants is not None else potential_constants(n, k)
    P = build_P(n, k)
    Q = build_Q(n, k)
    cache_p = DerivativeCache(P)
    cache_q = DerivativeCache(Q)
    col = FailureCollector()
    for I, J in sample_pairs(n, k, sample):
        lhs = LogRationalExpr.from_polynomial(_double_partial(cache_p, I, J) * (1 / consts.c1))
        S = _double_partial(cache_q, I, J)
        rhs = LogRationalExpr.zero()
        for m in range(1, n + 1):
            zm = Polynomial.variable(Var(m, 1))
            rhs = rhs + S.differentiate(Var(m, 1)).reduced() * zm
        rhs = (rhs * (1 / consts.c2)).reduced()
        col.record(expr_equal(lhs, rhs), I=I, J=J)
    return CheckReport(
        "relation", col.passed, col.cases, col.first_failure, elapsed_s=time.perf_counter() - started
    )


def verify_corollary(
    n: int, k: int, points: Sequence[ParameterPoint] | None = None
) -> CheckReport:
    """The weighted Hamiltonian sum acts on every projected basis vector
    as the scalar -k(n-k+1)."""
    _require_sizes(n, k)
    started = time.perf_counter()
    pts = list(points) if points is not None else deterministic_parameter_points(n)
    scalar = Fraction(-k * (n - k + 1))
    col = FailureCollector()
    for u in pts:
        if u.n != n:
            raise ValueError(f"parameter point has {u.n} coordinates, expected {n}")
        for I in subsets(n, k):
            v = project(basis_vector(n, I))
            acc = None
            for m in range(1, n + 1):
                term = hamiltonian_apply(m, u, v) * u.u(m)
                acc = term if acc is None else acc + term
            col.record(acc == scalar * v, I=I, point=u.values, expected_scalar=scalar)
    return CheckReport(
        "corollary", col.passed, col.cases, col.first_failure, elapsed_s=time.perf_counter() - started
    )
