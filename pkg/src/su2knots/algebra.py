"""Exact arithmetic substrate: continued fractions, integer Laurent
polynomials, and Smith normal form of integer matrices.

Everything here is pure and exact (Python ints and ``fractions.Fraction``);
no floating point. Integer matrices are plain ``list[list[int]]`` in
row-major order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class ContinuedFractionError(ValueError):
    """Raised for malformed continued fractions or unreachable expansions."""


@dataclass(frozen=True)
class ContinuedFraction:
    """A finite continued fraction [a_0, a_1, ..., a_n].

    Terms after the leading one must be nonzero.  A leading zero is allowed
    so that fractions of absolute value < 1 have a uniform-sign expansion;
    every other constructor path produces a fully nonzero term list.
    """

    terms: tuple[int, ...]

    def __post_init__(self):
        if not self.terms:
            raise ContinuedFractionError("empty continued fraction")
        if any(a == 0 for a in self.terms[1:]):
            raise ContinuedFractionError(f"zero interior term in {self.terms}")

    @property
    def length(self) -> int:
        return len(self.terms)

    def is_uniform_sign(self) -> bool:
        signs = {a > 0 for a in self.terms if a != 0}
        return len(signs) <= 1

    def is_odd_length(self) -> bool:
        # n odd means an even number of terms a_0..a_n.
        return len(self.terms) % 2 == 0


def cf_evaluate(cf: ContinuedFraction | Sequence[int]) -> Fraction:
    """Evaluate a_0 + 1/(a_1 + 1/(... + 1/a_n)) as a reduced fraction.

    Mixed-sign term lists can hit a zero intermediate denominator; that is
    reported as ContinuedFractionError rather than ZeroDivisionError.
    """
    terms = cf.terms if isinstance(cf, ContinuedFraction) else tuple(cf)
    if not terms:
        raise ContinuedFractionError("empty continued fraction")
    value = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        if value == 0:
            raise ContinuedFractionError(
                f"zero intermediate denominator while evaluating {terms}"
            )
        value = a + 1 / value
    return value


def _euclidean_terms(f: Fraction) -> list[int]:
    """Floor-division expansion of f > 0; all terms positive for f > 1."""
    num, den = f.numerator, f.denominator
    terms = []
    while den != 0:
        a, rem = divmod(num, den)
        terms.append(a)
        num, den = den, rem
    # Normalise the classical trailing-1 ambiguity towards the shorter form.
    if len(terms) > 1 and terms[-1] == 1:
        terms.pop()
        terms[-1] += 1
    return terms


def cf_expand(f: Fraction | int, mode: str) -> ContinuedFraction:
    """Expand a nonzero fraction in one of two normal forms.

    mode="odd-length": requires |f| > 1; returns [a_0..a_n] with n odd and
    all terms of the same sign as f.
    mode="uniform-sign": works for every nonzero f; all nonzero terms share
    the sign of f (a leading 0 appears exactly when |f| < 1).
    """
    f = Fraction(f)
    if f == 0:
        raise ContinuedFractionError("cannot expand 0")
    if mode not in ("odd-length", "uniform-sign"):
        raise ContinuedFractionError(f"unknown mode {mode!r}")

    neg = f < 0
    g = -f if neg else f

    if mode == "odd-length":
        if g <= 1:
            raise ContinuedFractionError(
                f"odd-length expansion needs |f| > 1, got {f}"
            )
        terms = _euclidean_terms(g)
        if len(terms) % 2 == 1:  # n even: split the last term
            if terms[-1] == 1:
                # only possible for f = 1, excluded above
                raise ContinuedFractionError(f"cannot reach odd length for {f}")
            terms[-1] -= 1
            terms.append(1)
    else:
        terms = _euclidean_terms(g) if g >= 1 else [0] + _euclidean_terms(1 / g)

    if neg:
        terms = [-a for a in terms]
    result = ContinuedFraction(tuple(terms))
    assert cf_evaluate(result) == f
    return result


def cf_convergents(cf: ContinuedFraction | Sequence[int]) -> list[tuple[int, int]]:
    """Convergents (h_k, k_k) of [a_0..a_n]; h_n/k_n is the value.

    Satisfies h_k * k_{k-1} - h_{k-1} * k_k = (-1)^{k+1}.
    """
    terms = cf.terms if isinstance(cf, ContinuedFraction) else tuple(cf)
    h_prev, k_prev = 1, 0
    h, k = terms[0], 1
    out = [(h, k)]
    for a in terms[1:]:
        h, h_prev = a * h + h_prev, h
        k, k_prev = a * k + k_prev, k
        out.append((h, k))
    return out


# ---------------------------------------------------------------------------
# Laurent polynomials over Z


class LaurentPolynomial:
    """Dense integer Laurent polynomial in one variable.

    Stored as (min_degree, coeffs) with coeffs[i] the coefficient of
    x**(min_degree + i).  Canonical form: zero is (0, []), otherwise the
    first and last coefficients are nonzero.
    """

    __slots__ = ("min_degree", "coeffs")

    def __init__(self, min_degree: int = 0, coeffs: Iterable[int] = ()):
        coeffs = list(coeffs)
        lo = 0
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            lo += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.min_degree = min_degree + lo if coeffs else 0
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero() -> "LaurentPolynomial":
        return LaurentPolynomial(0, [])

    @staticmethod
    def one() -> "LaurentPolynomial":
        return LaurentPolynomial(0, [1])

    @staticmethod
    def monomial(coeff: int, degree: int) -> "LaurentPolynomial":
        return LaurentPolynomial(degree, [coeff])

    # -- queries -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def max_degree(self) -> int:
        if self.is_zero():
            return 0
        return self.min_degree + len(self.coeffs) - 1

    def coeff(self, degree: int) -> int:
        i = degree - self.min_degree
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def terms(self) -> list[tuple[int, int]]:
        return [
            (self.min_degree + i, c) for i, c in enumerate(self.coeffs) if c != 0
        ]

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        other = _as_poly(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.min_degree, other.min_degree)
        hi = max(self.max_degree, other.max_degree)
        out = [0] * (hi - lo + 1)
        for e, c in self.terms():
            out[e - lo] += c
        for e, c in other.terms():
            out[e - lo] += c
        return LaurentPolynomial(lo, out)

    def __neg__(self):
        return LaurentPolynomial(self.min_degree, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return LaurentPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return LaurentPolynomial(self.min_degree + other.min_degree, out)

    __rmul__ = __mul__
    __radd__ = __add__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.coeffs) != 1 or abs(self.coeffs[0]) != 1:
                raise ValueError("negative power of a non-unit")
            return LaurentPolynomial.monomial(
                self.coeffs[0] ** (-n), self.min_degree * n
            )
        result = LaurentPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by x**k."""
        return LaurentPolynomial(self.min_degree + k, list(self.coeffs))

    def reciprocal(self) -> "LaurentPolynomial":
        """Substitute x -> 1/x."""
        return LaurentPolynomial(-self.max_degree, list(reversed(self.coeffs)))

    def divexact(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        """Exact division; raises ValueError when the remainder is nonzero."""
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPolynomial.zero()
        num = list(self.coeffs)
        den = other.coeffs
        if len(num) < len(den):
            raise ValueError("inexact Laurent division")
        q = [0] * (len(num) - len(den) + 1)
        for i in range(len(q) - 1, -1, -1):
            head = num[i + len(den) - 1]
            if head % den[-1] != 0:
                raise ValueError("inexact Laurent division")
            q[i] = head // den[-1]
            if q[i]:
                for j, b in enumerate(den):
                    num[i + j] -= q[i] * b
        if any(num):
            raise ValueError("inexact Laurent division")
        return LaurentPolynomial(self.min_degree - other.min_degree, q)

    # -- evaluation and output ------------------------------------------
    def eval_rational(self, x) -> Fraction:
        x = Fraction(x)
        if x == 0:
            raise ZeroDivisionError("Laurent polynomial at 0")
        acc = Fraction(0)
        for e, c in self.terms():
            acc += c * x**e
        return acc

    def to_json_dict(self, variable: str) -> dict:
        return {
            "variable": variable,
            "min_degree": self.min_degree,
            "coeffs": list(self.coeffs),
        }

    def __eq__(self, other):
        other = _as_poly(other)
        return self.min_degree == other.min_degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.min_degree, tuple(self.coeffs)))

    def __repr__(self):
        if self.is_zero():
            return "0"
        bits = []
        for e, c in self.terms():
            if e == 0:
                bits.append(f"{c:+d}")
            elif e == 1:
                bits.append(f"{c:+d}*x")
            else:
                bits.append(f"{c:+d}*x^{e}")
        return "".join(bits).lstrip("+")


def _as_poly(v) -> LaurentPolynomial:
    if isinstance(v, LaurentPolynomial):
        return v
    if isinstance(v, int):
        return LaurentPolynomial(0, [v])
    raise TypeError(f"cannot coerce {v!r} to LaurentPolynomial")


def poly_mul(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    return _as_poly(a) * _as_poly(b)


def poly_eval_int(p: LaurentPolynomial, x: int) -> Fraction:
    if x == 0:
        raise ZeroDivisionError("Laurent polynomial at 0")
    return p.eval_rational(x)


# ---------------------------------------------------------------------------
# Integer matrices and Smith normal form

Matrix = list[list[int]]


@dataclass(frozen=True)
class InvariantFactors:
    """Invariant factors d_1 | d_2 | ... | d_k plus the free rank."""

    factors: tuple[int, ...]
    free_rank: int

    def __post_init__(self):
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a != 0:
                raise ValueError(f"broken divisor chain {self.factors}")
        if any(d < 1 for d in self.factors):
            raise ValueError("invariant factors must be positive")

    @property
    def group_order(self) -> int:
        """Order of the torsion part (product of the factors)."""
        n = 1
        for d in self.factors:
            n *= d
        return n

    def nontrivial(self) -> tuple[int, ...]:
        return tuple(d for d in self.factors if d != 1)


def mat_shape(m: Matrix) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(r) != cols for r in m):
        raise ValueError("ragged matrix")
    return rows, cols


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = mat_shape(a)
    rb, cb = mat_shape(b)
    if ca != rb:
        raise ValueError("shape mismatch")
    return [
        [sum(a[i][k] * b[k][j] for k in range(ca)) for j in range(cb)]
        for i in range(ra)
    ]


def mat_det(m: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n, c = mat_shape(m)
    if n != c:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def snf(m: Matrix) -> InvariantFactors:
    """Smith normal form via exact row/column reduction.

    Pivots are chosen by minimal absolute value.  Returns the invariant
    factors of the cokernel and the free rank (cols - rank).
    """
    rows, cols = mat_shape(m)
    a = [row[:] for row in m]

    def find_pivot(t):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best[0]):
                    best = (abs(a[i][j]), i, j)
        return best

    diag = []
    t = 0
    while t < min(rows, cols):
        hit = find_pivot(t)
        if hit is None:
            break
        _, pi, pj = hit
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]

        while True:
            # clear column t
            done = True
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    for j in range(t, cols):
                        a[i][j] -= q * a[t][j]
                    if a[i][t] != 0:  # remainder becomes the new, smaller pivot
                        a[t], a[i] = a[i], a[t]
                        done = False
            # clear row t
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    for i in range(t, rows):
                        a[i][j] -= q * a[i][t]
                    if a[t][j] != 0:
                        for i in range(t, rows):
                            a[i][t], a[i][j] = a[i][j], a[i][t]
                        done = False
            if done:
                break
        # enforce divisibility of the remaining block by the pivot
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(t, cols):
                a[t][j] += a[offender][j]
            continue  # redo this pivot
        diag.append(abs(a[t][t]))
        t += 1

    return InvariantFactors(tuple(diag), cols - len(diag))
