"""Homogeneous polynomials in n variables with exact rational coefficients.

Representation: a polynomial is a dict mapping exponent tuples (one entry per
variable) to nonzero Fraction coefficients, wrapped in HPoly together with the
variable count.  All monomials in one HPoly share the same total degree; the
zero polynomial is the empty dict and reports degree 0.

The fixed monomial order everywhere in the package is graded lexicographic:
degree first, then exponent tuples compared lexicographically in descending
order, so for three variables degree two reads t1^2, t1*t2, t1*t3, t2^2,
t2*t3, t3^2.  monomials(n, d) returns exactly that sequence and every
coefficient vector, matrix column and rendered string follows it.

The pairing is the apolarity pairing <p, q> = (p(D)q)(0): on monomials
<t^a, t^b> = a! when a == b and 0 otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import DimensionMismatch
from .linalg import frac, matrix, nullspace


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of the given total degree, graded-lex order."""
    if degree < 0:
        return ()
    if nvars == 0:
        return ((),) if degree == 0 else ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for k in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - k):
            out.append((k,) + rest)
    return tuple(out)


def multi_factorial(exp) -> int:
    out = 1
    for e in exp:
        out *= factorial(e)
    return out


class HPoly:
    """A homogeneous polynomial; immutable by convention."""

    __slots__ = ("nvars", "degree", "coeffs")

    def __init__(self, nvars: int, coeffs: dict):
        clean = {}
        degrees = set()
        for exp, c in coeffs.items():
            c = frac(c)
            if c == 0:
                continue
            if len(exp) != nvars:
                raise DimensionMismatch(f"exponent {exp} has wrong arity")
            degrees.add(sum(exp))
            clean[tuple(int(e) for e in exp)] = c
        if len(degrees) > 1:
            raise DimensionMismatch(f"mixed degrees {sorted(degrees)} in one polynomial")
        self.nvars = nvars
        self.degree = degrees.pop() if degrees else 0
        self.coeffs = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "HPoly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value=1) -> "HPoly":
        return cls(nvars, {(0,) * nvars: frac(value)})

    @classmethod
    def monomial(cls, nvars: int, exp, coeff=1) -> "HPoly":
        return cls(nvars, {tuple(exp): frac(coeff)})

    @classmethod
    def linear_form(cls, vec) -> "HPoly":
        """The form t -> v . t; rejects the zero vector."""
        n = len(vec)
        coeffs = {}
        for i, x in enumerate(vec):
            x = frac(x)
            if x != 0:
                exp = [0] * n
                exp[i] = 1
                coeffs[tuple(exp)] = x
        if not coeffs:
            raise ValueError("zero vector does not define a linear form")
        return cls(n, coeffs)

    # -- arithmetic --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "HPoly") -> "HPoly":
        out = dict(self.coeffs)
        for exp, c in other.coeffs.items():
            out[exp] = out.get(exp, Fraction(0)) + c
        return HPoly(self.nvars, out)

    def __sub__(self, other: "HPoly") -> "HPoly":
        return self + other.scale(-1)

    def scale(self, k) -> "HPoly":
        k = frac(k)
        return HPoly(self.nvars, {e: c * k for e, c in self.coeffs.items()})

    def __mul__(self, other: "HPoly") -> "HPoly":
        out = {}
        for ea, ca in self.coeffs.items():
            for eb, cb in other.coeffs.items():
                exp = tuple(a + b for a, b in zip(ea, eb))
                out[exp] = out.get(exp, Fraction(0)) + ca * cb
        return HPoly(self.nvars, out)

    def __pow__(self, k: int) -> "HPoly":
        out = HPoly.constant(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HPoly)
            and self.nvars == other.nvars
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        return f"HPoly({self.render()})"

    # -- conversions -------------------------------------------------------

    def coeff_vector(self) -> tuple:
        """Coefficients over monomials(nvars, degree)."""
        return tuple(self.coeffs.get(m, Fraction(0)) for m in monomials(self.nvars, self.degree))

    @classmethod
    def from_coeff_vector(cls, nvars: int, degree: int, vec) -> "HPoly":
        mons = monomials(nvars, degree)
        if len(vec) != len(mons):
            raise DimensionMismatch("coefficient vector has the wrong length")
        return cls(nvars, dict(zip(mons, vec)))

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for exp, c in self.coeffs.items():
            term = c
            for x, e in zip(point, exp):
                term *= frac(x) ** e
            total += term
        return total

    def render(self) -> str:
        """Canonical text form, terms in graded-lex order, rationals as p/q."""
        if self.is_zero:
            return "0"
        parts = []
        for exp in monomials(self.nvars, self.degree):
            c = self.coeffs.get(exp)
            if c is None:
                continue
            vars_part = "*".join(
                f"t{i + 1}^{e}" if e > 1 else f"t{i + 1}"
                for i, e in enumerate(exp)
                if e > 0
            )
            mag = abs(c)
            if not vars_part:
                body = str(mag)
            elif mag == 1:
                body = vars_part
            else:
                body = f"{mag}*{vars_part}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def linform_product(nvars: int, vectors) -> HPoly:
    """Product of the linear forms of the given vectors (1 for no vectors)."""
    out = HPoly.constant(nvars)
    for v in vectors:
        out = out * HPoly.linear_form(v)
    return out


def diff_apply(p: HPoly, q: HPoly) -> HPoly:
    """Apply p as a constant-coefficient differential operator to q."""
    if p.nvars != q.nvars:
        raise DimensionMismatch("operator and argument have different arities")
    out = {}
    for pe, pc in p.coeffs.items():
        for qe, qc in q.coeffs.items():
            if any(a > b for a, b in zip(pe, qe)):
                continue
            coef = pc * qc
            for a, b in zip(pe, qe):
                # falling factorial b (b-1) ... (b-a+1)
                for k in range(a):
                    coef *= b - k
            exp = tuple(b - a for a, b in zip(pe, qe))
            out[exp] = out.get(exp, Fraction(0)) + coef
    return HPoly(p.nvars, out)


def pair(p: HPoly, q: HPoly) -> Fraction:
    """Apolarity pairing (p(D)q)(0); zero across different degrees."""
    if p.degree != q.degree:
        return Fraction(0)
    total = Fraction(0)
    for exp, c in p.coeffs.items():
        qc = q.coeffs.get(exp)
        if qc is not None:
            total += c * qc * multi_factorial(exp)
    return total


def perp_space_gens(nvars: int, span_vectors, degree: int) -> list[HPoly]:
    """Spanning set of the degree-d polynomials constant along span_vectors.

    Concretely: all degree-d monomials in the linear forms of a basis of the
    orthogonal complement of span(span_vectors).
    """
    null = nullspace(matrix(span_vectors), ncols=nvars)
    forms = [HPoly.linear_form(v) for v in null]
    gens = []
    for exp in monomials(len(forms), degree):
        g = HPoly.constant(nvars)
        for f, e in zip(forms, exp):
            g = g * f ** e
        gens.append(g)
    return gens
