"""Exact sparse polynomial and q-series arithmetic.

Two layers, both over arbitrary-precision rationals (fractions.Fraction):

  TPoly   -- a polynomial in the six deformation coordinates t0..t5, stored as
             a dict {exponent 6-tuple: Fraction} with no zero coefficients, so
             equal polynomials have equal dicts (canonical form).
  QSeries -- a finitely supported map {q-degree d >= 0: TPoly}, the working
             stand-in for Novikov-ring elements.  An optional truncation_order
             alpha marks a value that is only known modulo q^alpha; arithmetic
             between marked values keeps the minimum marker and discards terms
             at or above it.

The quantum variable t1 is identified with log q: quantum coefficients (d >= 1)
must not contain an explicit t1, and the t1-derivative acts there as
multiplication by d.  The classical q^0 part may keep explicit t1 monomials.

Everything is immutable after construction; no floating point enters except in
`evaluate`, which specializes to complex numbers.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

NVARS = 6

Exponents = tuple  # length-6 tuple of non-negative ints
Scalar = Union[int, Fraction]

_ZERO_EXP = (0,) * NVARS


class MixedT1Error(ValueError):
    """An explicit t1 appeared inside a quantum (d >= 1) coefficient."""


class ExactDivisionError(ArithmeticError):
    """Polynomial division that was assumed exact left a remainder."""


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"exact coefficient expected, got {type(c).__name__}")


class TPoly:
    """Sparse exact polynomial in t0..t5."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Exponents, Scalar]] = None):
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                coeff = _as_fraction(coeff)
                if coeff == 0:
                    continue
                exps = tuple(exps)
                if len(exps) != NVARS or any(e < 0 or not isinstance(e, int) for e in exps):
                    raise ValueError(f"bad exponent vector {exps!r}")
                clean[exps] = coeff
        self._terms = clean

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "TPoly":
        return TPoly()

    @staticmethod
    def constant(c: Scalar) -> "TPoly":
        return TPoly({_ZERO_EXP: _as_fraction(c)})

    @staticmethod
    def one() -> "TPoly":
        return TPoly.constant(1)

    @staticmethod
    def var(index: int) -> "TPoly":
        exps = [0] * NVARS
        exps[index] = 1
        return TPoly({tuple(exps): Fraction(1)})

    @staticmethod
    def monomial(exps: Sequence[int], coeff: Scalar = 1) -> "TPoly":
        return TPoly({tuple(exps): _as_fraction(coeff)})

    # -- inspection ---------------------------------------------------------

    def terms(self) -> Iterator[tuple]:
        return iter(self._terms.items())

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {_ZERO_EXP}

    def constant_value(self) -> Fraction:
        return self._terms.get(_ZERO_EXP, Fraction(0))

    def uses_var(self, index: int) -> bool:
        return any(e[index] for e in self._terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def weighted_degree(self, weights: Sequence[int]) -> Optional[int]:
        """Common weighted degree of all monomials, or None if inhomogeneous."""
        degs = {sum(w * e for w, e in zip(weights, exps)) for exps in self._terms}
        if not degs:
            return 0
        if len(degs) == 1:
            return degs.pop()
        return None

    def __len__(self) -> int:
        return len(self._terms)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "TPoly":
        other = _coerce_tpoly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for exps, coeff in other._terms.items():
            acc = out.get(exps, 0) + coeff
            if acc:
                out[exps] = acc
            else:
                out.pop(exps, None)
        res = TPoly.__new__(TPoly)
        res._terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "TPoly":
        res = TPoly.__new__(TPoly)
        res._terms = {e: -c for e, c in self._terms.items()}
        return res

    def __sub__(self, other):
        other = _coerce_tpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_tpoly(other) + (-self)

    def __mul__(self, other) -> "TPoly":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if c == 0:
                return TPoly()
            res = TPoly.__new__(TPoly)
            res._terms = {e: v * c for e, v in self._terms.items()}
            return res
        if not isinstance(other, TPoly):
            return NotImplemented
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                acc = out.get(key, 0) + c1 * c2
                if acc:
                    out[key] = acc
                else:
                    del out[key]
        res = TPoly.__new__(TPoly)
        res._terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = TPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        other = _coerce_tpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- calculus and specialization ----------------------------------------

    def diff(self, index: int) -> "TPoly":
        out = {}
        for exps, coeff in self._terms.items():
            e = exps[index]
            if e == 0:
                continue
            key = exps[:index] + (e - 1,) + exps[index + 1:]
            out[key] = out.get(key, 0) + coeff * e
        return TPoly(out)

    def substitute(self, values: Mapping[int, Union[Scalar, "TPoly"]]) -> "TPoly":
        """Replace variables by exact constants or polynomials."""
        subs = {i: (v if isinstance(v, TPoly) else TPoly.constant(v))
                for i, v in values.items()}
        out = TPoly.zero()
        for exps, coeff in self._terms.items():
            term = TPoly.constant(coeff)
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                factor = subs.get(i)
                if factor is None:
                    term = term * TPoly.monomial([e if k == i else 0 for k in range(NVARS)])
                else:
                    term = term * factor ** e
            out = out + term
        return out

    def evaluate(self, tvals: Sequence[complex]) -> complex:
        """Numeric specialization at six complex coordinates."""
        if len(tvals) != NVARS:
            raise ValueError("expected 6 coordinate values")
        powers = [{0: 1.0 + 0.0j} for _ in range(NVARS)]
        total = 0.0 + 0.0j
        for exps, coeff in self._terms.items():
            prod = complex(coeff)
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                cache = powers[i]
                if e not in cache:
                    cache[e] = complex(tvals[i]) ** e
                prod *= cache[e]
            total += prod
        return total

    # -- presentation and serialization --------------------------------------

    def sorted_terms(self) -> list:
        """Graded-lex descending order; the canonical print/JSON order."""
        return sorted(self._terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0])))

    def __str__(self) -> str:
        return format_tpoly(self)

    def __repr__(self) -> str:
        return f"TPoly({format_tpoly(self)})"

    def to_json(self) -> dict:
        return {"terms": [{"exponents": list(e), "coefficient": format_fraction(c)}
                          for e, c in self.sorted_terms()]}

    @staticmethod
    def from_json(data: Mapping) -> "TPoly":
        return TPoly({tuple(t["exponents"]): parse_fraction(t["coefficient"])
                      for t in data["terms"]})


def _coerce_tpoly(value):
    if isinstance(value, TPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return TPoly.constant(value)
    return NotImplemented


VAR_NAMES = ["t0", "t1", "t2", "t3", "t4", "t5"]


def format_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def format_tpoly(p: TPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for exps, coeff in p.sorted_terms():
        body = "".join(
            VAR_NAMES[i] + (f"^{e}" if e > 1 else "")
            for i, e in enumerate(exps) if e
        )
        mag = abs(coeff)
        if not body:
            chunk = format_fraction(mag)
        elif mag == 1:
            chunk = body
        else:
            chunk = format_fraction(mag) + body
        parts.append(("-" if coeff < 0 else "+", chunk))
    sign, chunk = parts[0]
    out = ("-" if sign == "-" else "") + chunk
    for sign, chunk in parts[1:]:
        out += sign + chunk
    return out


class QSeries:
    """Finitely supported q-series with TPoly coefficients.

    truncation_order = alpha means the value is only known modulo q^alpha; no
    key d >= alpha is stored and arithmetic propagates the minimum alpha.
    truncation_order = None means the value is an exact polynomial in q.
    """

    __slots__ = ("_coeffs", "truncation_order")

    def __init__(self, coeffs: Optional[Mapping[int, TPoly]] = None,
                 truncation_order: Optional[int] = None):
        if truncation_order is not None and truncation_order < 0:
            raise ValueError("truncation order must be >= 0")
        clean = {}
        if coeffs:
            for d, poly in coeffs.items():
                if not isinstance(d, int) or d < 0:
                    raise ValueError(f"q-exponent must be a non-negative integer, got {d!r}")
                if truncation_order is not None and d >= truncation_order:
                    continue
                if not isinstance(poly, TPoly):
                    poly = TPoly.constant(poly)
                if not poly.is_zero():
                    clean[d] = poly
        self._coeffs = clean
        self.truncation_order = truncation_order

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(truncation_order: Optional[int] = None) -> "QSeries":
        return QSeries({}, truncation_order)

    @staticmethod
    def one() -> "QSeries":
        return QSeries({0: TPoly.one()})

    @staticmethod
    def constant(c: Scalar) -> "QSeries":
        return QSeries({0: TPoly.constant(c)})

    @staticmethod
    def from_tpoly(p: TPoly, d: int = 0,
                   truncation_order: Optional[int] = None) -> "QSeries":
        return QSeries({d: p}, truncation_order)

    @staticmethod
    def q_power(d: int) -> "QSeries":
        return QSeries({d: TPoly.one()})

    # -- inspection ---------------------------------------------------------

    def coefficient(self, d: int) -> TPoly:
        return self._coeffs.get(d, TPoly.zero())

    def degrees(self) -> list:
        return sorted(self._coeffs)

    def items(self) -> Iterator[tuple]:
        return iter(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def q_valuation(self) -> Union[int, float]:
        """Smallest q-degree with a nonzero coefficient; +inf for zero."""
        return min(self._coeffs) if self._coeffs else math.inf

    def q_degree(self) -> int:
        return max(self._coeffs, default=0)

    # -- ring operations ----------------------------------------------------

    @staticmethod
    def _merge_alpha(a: Optional[int], b: Optional[int]) -> Optional[int]:
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other) -> "QSeries":
        other = _coerce_qseries(other)
        if other is NotImplemented:
            return NotImplemented
        alpha = self._merge_alpha(self.truncation_order, other.truncation_order)
        out = dict(self._coeffs)
        for d, poly in other._coeffs.items():
            acc = out.get(d, TPoly.zero()) + poly
            if acc.is_zero():
                out.pop(d, None)
            else:
                out[d] = acc
        return QSeries(out, alpha)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries({d: -p for d, p in self._coeffs.items()}, self.truncation_order)

    def __sub__(self, other):
        other = _coerce_qseries(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_qseries(other) + (-self)

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return QSeries({d: p * other for d, p in self._coeffs.items()},
                           self.truncation_order)
        if isinstance(other, TPoly):
            other = QSeries.from_tpoly(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        alpha = self._merge_alpha(self.truncation_order, other.truncation_order)
        out = {}
        for d1, p1 in self._coeffs.items():
            for d2, p2 in other._coeffs.items():
                d = d1 + d2
                if alpha is not None and d >= alpha:
                    continue
                prod = p1 * p2
                if d in out:
                    acc = out[d] + prod
                    if acc.is_zero():
                        del out[d]
                    else:
                        out[d] = acc
                elif not prod.is_zero():
                    out[d] = prod
        return QSeries(out, alpha)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = _coerce_qseries(other)
        if other is NotImplemented:
            return NotImplemented
        return (self._coeffs == other._coeffs
                and self.truncation_order == other.truncation_order)

    def __hash__(self):
        return hash((frozenset((d, hash(p)) for d, p in self._coeffs.items()),
                     self.truncation_order))

    # -- truncation and derivatives ------------------------------------------

    def truncate(self, alpha: int, keep_marker: bool = True) -> "QSeries":
        """Drop q-degrees >= alpha; mark the result as known mod q^alpha unless
        keep_marker is False (exact finite-energy truncation)."""
        coeffs = {d: p for d, p in self._coeffs.items() if d < alpha}
        return QSeries(coeffs, alpha if keep_marker else None)

    def strip_truncation(self) -> "QSeries":
        return QSeries(dict(self._coeffs), None)

    def partial_t(self, index: int) -> "QSeries":
        if index == 1:
            raise ValueError("t1 differentiation is derivative_t1 (d-weighting)")
        return QSeries({d: p.diff(index) for d, p in self._coeffs.items()},
                       self.truncation_order)

    def derivative_t1(self) -> "QSeries":
        """d/dt1 with q = e^{t1}: weight q^d coefficients by d, differentiate
        the classical q^0 part in the explicit t1 variable."""
        out = {}
        for d, poly in self._coeffs.items():
            if d == 0:
                out[0] = poly.diff(1)
            else:
                if poly.uses_var(1):
                    raise MixedT1Error(
                        f"explicit t1 inside the q^{d} coefficient; quantum "
                        "terms must fold t1 into q")
                out[d] = poly * d
        return QSeries(out, self.truncation_order)

    def substitute(self, values: Mapping[int, Union[Scalar, TPoly]]) -> "QSeries":
        return QSeries({d: p.substitute(values) for d, p in self._coeffs.items()},
                       self.truncation_order)

    def evaluate(self, tvals: Sequence[complex], q: complex) -> complex:
        total = 0.0 + 0.0j
        for d, poly in self._coeffs.items():
            total += poly.evaluate(tvals) * (complex(q) ** d)
        return total

    # -- presentation and serialization --------------------------------------

    def __str__(self) -> str:
        return format_qseries(self)

    def __repr__(self) -> str:
        return f"QSeries({format_qseries(self)})"

    def to_json(self) -> dict:
        data = {"coefficients": [{"q": d, **self.coefficient(d).to_json()}
                                 for d in self.degrees()]}
        data["truncation_order"] = self.truncation_order
        return data

    @staticmethod
    def from_json(data: Mapping) -> "QSeries":
        return QSeries({c["q"]: TPoly.from_json(c) for c in data["coefficients"]},
                       data.get("truncation_order"))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @staticmethod
    def loads(s: str) -> "QSeries":
        return QSeries.from_json(json.loads(s))


def _coerce_qseries(value):
    if isinstance(value, QSeries):
        return value
    if isinstance(value, TPoly):
        return QSeries.from_tpoly(value)
    if isinstance(value, (int, Fraction)):
        return QSeries.constant(value)
    return NotImplemented


def format_qseries(s: QSeries) -> str:
    if s.is_zero():
        return "0"
    chunks = []
    for d in s.degrees():
        poly = s.coefficient(d)
        text = format_tpoly(poly)
        if d == 0:
            chunks.append(text)
            continue
        qpart = "q" if d == 1 else f"q^{d}"
        if len(poly) > 1:
            chunks.append(f"({text}){qpart}")
        elif text == "1":
            chunks.append(qpart)
        elif text == "-1":
            chunks.append(f"-{qpart}")
        else:
            chunks.append(f"{text}{qpart}")
    out = chunks[0]
    for c in chunks[1:]:
        out += c if c.startswith("-") else "+" + c
    return out


# -- exact division (used by fraction-free elimination) -----------------------

def _flatten(s: QSeries) -> dict:
    flat = {}
    for d, poly in s.items():
        for exps, coeff in poly.terms():
            flat[(d,) + exps] = coeff
    return flat


def _unflatten(flat: Mapping) -> QSeries:
    coeffs: dict = {}
    for key, coeff in flat.items():
        d, exps = key[0], key[1:]
        coeffs.setdefault(d, {})[exps] = coeff
    return QSeries({d: TPoly(t) for d, t in coeffs.items()})


def exact_div(num: QSeries, den: QSeries) -> QSeries:
    """Exact division in Q[t0..t5, q]; raises ExactDivisionError otherwise.

    Both operands must be untruncated.  Standard leading-term elimination
    under lex order on (d, e0..e5); exactness of the quotient guarantees the
    leading term of the remainder stays divisible at every step.
    """
    if num.truncation_order is not None or den.truncation_order is not None:
        raise ValueError("exact_div operates on untruncated values")
    if den.is_zero():
        raise ZeroDivisionError("exact_div by zero")
    rem = _flatten(num)
    dflat = _flatten(den)
    dlead = max(dflat)
    dcoeff = dflat[dlead]
    quo: dict = {}
    while rem:
        lead = max(rem)
        key = tuple(a - b for a, b in zip(lead, dlead))
        if any(k < 0 for k in key):
            raise ExactDivisionError("leading term not divisible")
        c = rem[lead] / dcoeff
        quo[key] = c
        for dkey, dval in dflat.items():
            tgt = tuple(a + b for a, b in zip(key, dkey))
            acc = rem.get(tgt, 0) - c * dval
            if acc:
                rem[tgt] = acc
            else:
                rem.pop(tgt, None)
    return _unflatten(quo)
