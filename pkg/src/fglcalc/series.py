"""Truncated multivariate power series and the formal group law operations.

A TruncatedSeries holds terms of total degree <= order in named variables,
with GradedPolynomial coefficients; everything beyond the order is discarded
on construction, so arithmetic is exact modulo (u_1, ..., u_r)^{order+1}.

FormalGroupLaw bundles a backend and an order and derives from them the
two-variable law F(u, v), the formal inverse, n-fold sums [n]u, and the
multi-variable combinations F^{(n_1, ..., n_r)}.  Results are cached on the
instance; the iterated sums fold left to right.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    BackendMismatchError,
    ConstantTermError,
    OrderError,
    ValidationError,
)
from .ring import CoefficientBackend, GradedPolynomial, lazard_coefficient

_ZERO_EXP_CACHE: dict = {}


def _zero_exps(r: int):
    try:
        return _ZERO_EXP_CACHE[r]
    except KeyError:
        return _ZERO_EXP_CACHE.setdefault(r, (0,) * r)


class TruncatedSeries:
    """Polynomial truncation of a power series at a fixed total degree."""

    __slots__ = ("variables", "order", "backend", "_terms")

    def __init__(self, variables, order: int, backend: CoefficientBackend, terms=None):
        variables = tuple(variables)
        if not variables:
            raise ValidationError("a series needs at least one variable")
        if len(set(variables)) != len(variables):
            raise ValidationError(f"duplicate variable names in {variables}")
        if order < 0:
            raise OrderError("truncation order must be >= 0")
        self.variables = variables
        self.order = order
        self.backend = backend
        clean = {}
        if terms:
            r = len(variables)
            for exps, poly in terms.items():
                exps = tuple(exps)
                if len(exps) != r or any(e < 0 for e in exps):
                    raise ValidationError(f"bad exponent vector {exps}")
                if sum(exps) > order:
                    continue  # truncation is the contract, not an error
                if not isinstance(poly, GradedPolynomial):
                    poly = GradedPolynomial.constant(poly, backend)
                if poly.backend != backend:
                    raise BackendMismatchError("series coefficient over wrong backend")
                if not poly.is_zero():
                    clean[exps] = poly
        self._terms = clean

    @classmethod
    def _raw(cls, variables, order, backend, terms):
        self = object.__new__(cls)
        self.variables = variables
        self.order = order
        self.backend = backend
        self._terms = terms
        return self

    @classmethod
    def zero(cls, variables, order, backend) -> TruncatedSeries:
        return cls(variables, order, backend)

    @classmethod
    def one(cls, variables, order, backend) -> TruncatedSeries:
        return cls(variables, order, backend, {_zero_exps(len(tuple(variables))): 1})

    @classmethod
    def variable(cls, name: str, variables, order, backend) -> TruncatedSeries:
        """The series consisting of the single variable `name`."""
        variables = tuple(variables)
        if name not in variables:
            raise ValidationError(f"{name!r} is not among {variables}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, order, backend, {exps: 1})

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def constant_term(self) -> GradedPolynomial:
        zero = _zero_exps(len(self.variables))
        return self._terms.get(zero, GradedPolynomial.zero(self.backend))

    def coefficient(self, exps) -> GradedPolynomial:
        """Coefficient polynomial of the monomial with the given exponents."""
        exps = tuple(exps)
        if len(exps) != len(self.variables):
            raise ValidationError("exponent vector length mismatch")
        return self._terms.get(exps, GradedPolynomial.zero(self.backend))

    def items(self):
        """Nonzero (exponents, coefficient) pairs in canonical order.

        Graded, and within a degree the earlier variables lead: u1^2 before
        u1*u2 before u2^2.
        """
        return sorted(
            self._terms.items(),
            key=lambda kv: (sum(kv[0]), tuple(-e for e in kv[0])),
        )

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.order == other.order
            and self.backend == other.backend
            and self._terms == other._terms
        )

    __hash__ = None

    def _check_compatible(self, other: TruncatedSeries):
        if self.backend != other.backend:
            raise BackendMismatchError("mixed backends in series arithmetic")
        if self.variables != other.variables:
            raise ValidationError(
                f"variable mismatch: {self.variables} vs {other.variables}"
            )
        if self.order != other.order:
            raise OrderError(f"order mismatch: {self.order} vs {other.order}")

    # -- arithmetic -------------------------------------------------------

    def __neg__(self):
        return TruncatedSeries._raw(
            self.variables, self.order, self.backend,
            {e: -p for e, p in self._terms.items()},
        )

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self._terms)
        for exps, poly in other._terms.items():
            acc = out.get(exps)
            acc = poly if acc is None else acc + poly
            if acc.is_zero():
                out.pop(exps, None)
            else:
                out[exps] = acc
        return TruncatedSeries._raw(self.variables, self.order, self.backend, out)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_compatible(other)
        order = self.order
        left = sorted(self._terms.items(), key=lambda kv: sum(kv[0]))
        right = sorted(other._terms.items(), key=lambda kv: sum(kv[0]))
        acc: dict = {}
        for e1, p1 in left:
            d1 = sum(e1)
            for e2, p2 in right:
                if d1 + sum(e2) > order:
                    break  # right is degree-sorted, the rest only grows
                key = tuple(a + b for a, b in zip(e1, e2))
                bucket = acc.get(key)
                if bucket is None:
                    bucket = acc[key] = {}
                p1._multiply_into(p2, bucket)
        out = {}
        for key, bucket in acc.items():
            poly = GradedPolynomial._from_accumulator(self.backend, bucket)
            if not poly.is_zero():
                out[key] = poly
        return TruncatedSeries._raw(self.variables, self.order, self.backend, out)

    def scale(self, factor) -> TruncatedSeries:
        """Multiply every coefficient by a scalar or a GradedPolynomial."""
        if isinstance(factor, GradedPolynomial):
            if factor.backend != self.backend:
                raise BackendMismatchError("scale factor over wrong backend")
        out = {}
        for exps, poly in self._terms.items():
            q = poly * factor
            if not q.is_zero():
                out[exps] = q
        return TruncatedSeries._raw(self.variables, self.order, self.backend, out)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValidationError("series powers take integer exponents >= 0")
        result = TruncatedSeries.one(self.variables, self.order, self.backend)
        for _ in range(n):
            result = result * self
        return result

    # -- substitution -----------------------------------------------------

    def substitute(self, assignment) -> TruncatedSeries:
        """Compose: replace each variable by a series with zero constant term.

        All assigned series must share one variable tuple, the same order as
        this series, and the same backend; the result lives in their
        variables.  Truncation at the shared order is exact because every
        assigned series has no constant term.
        """
        missing = [v for v in self.variables if v not in assignment]
        if missing:
            raise ValidationError(f"no substitution given for {missing}")
        images = [assignment[v] for v in self.variables]
        for s in images:
            if not isinstance(s, TruncatedSeries):
                raise ValidationError("substitution values must be series")
            images[0]._check_compatible(s)
        if images[0].backend != self.backend:
            raise BackendMismatchError("substitution across different backends")
        if images[0].order != self.order:
            raise OrderError(
                f"substitution needs matching orders ({images[0].order} vs {self.order})"
            )
        for v, s in zip(self.variables, images):
            if not s.constant_term().is_zero():
                raise ConstantTermError(f"series for {v!r} has a constant term")

        target_vars = images[0].variables
        order = self.order
        one = TruncatedSeries.one(target_vars, order, self.backend)
        powers = [[one, s] for s in images]

        def power(i: int, e: int) -> TruncatedSeries:
            cache = powers[i]
            while len(cache) <= e:
                cache.append(cache[-1] * cache[1])
            return cache[e]

        total = TruncatedSeries.zero(target_vars, order, self.backend)
        for exps, poly in sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            factor = None
            for i, e in enumerate(exps):
                if e:
                    factor = power(i, e) if factor is None else factor * power(i, e)
            if factor is None:
                factor = one
            total = total + factor.scale(poly)
        return total

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        terms = []
        for exps, poly in self.items():
            for entry in poly.to_json():
                terms.append(
                    {"exponents": list(exps), "coeff": entry["coeff"], "monomial": entry["monomial"]}
                )
        return {"variables": list(self.variables), "order": self.order, "terms": terms}

    @classmethod
    def from_json(cls, data, backend: CoefficientBackend) -> TruncatedSeries:
        if not isinstance(data, dict):
            raise ValidationError("series JSON must be an object")
        for key in ("variables", "order", "terms"):
            if key not in data:
                raise ValidationError(f"series JSON lacks {key!r}")
        variables = data["variables"]
        if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
            raise ValidationError("'variables' must be a list of names")
        order = data["order"]
        if not isinstance(order, int):
            raise ValidationError("'order' must be an integer")
        grouped: dict = {}
        if not isinstance(data["terms"], list):
            raise ValidationError("'terms' must be a list")
        for entry in data["terms"]:
            if not isinstance(entry, dict) or "exponents" not in entry:
                raise ValidationError("series term needs an 'exponents' vector")
            exps = entry["exponents"]
            if not isinstance(exps, list) or not all(isinstance(e, int) for e in exps):
                raise ValidationError(f"bad exponents {exps!r}")
            grouped.setdefault(tuple(exps), []).append(
                {"coeff": entry.get("coeff"), "monomial": entry.get("monomial")}
            )
        terms = {
            exps: GradedPolynomial.from_json(entries, backend)
            for exps, entries in grouped.items()
        }
        return cls(variables, order, backend, terms)

    def __str__(self):
        if not self._terms:
            return "0"
        chunks = []
        for exps, poly in self.items():
            body = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(self.variables, exps)
                if e
            )
            if poly.term_count() == 1 and not body:
                piece = poly.to_text()
            elif poly.term_count() == 1:
                text = poly.to_text()
                piece = body if text == "1" else (
                    "-" + body if text == "-1" else f"{text}*{body}"
                )
            else:
                piece = f"({poly.to_text()})" + (f"*{body}" if body else "")
            chunks.append(piece)
        text = chunks[0]
        for piece in chunks[1:]:
            if piece.startswith("-"):
                text += " - " + piece[1:]
            else:
                text += " + " + piece
        return text

    def __repr__(self):
        return f"TruncatedSeries({self!s})"


# ---------------------------------------------------------------------------
# the formal group law and its derived series

class FormalGroupLaw:
    """The law F(u, v) over a backend, truncated at a fixed total order.

    On the log backend the order may not exceed log_order + 1, since the
    coefficient a_{i,j} of u^i v^j has degree i + j - 1.
    """

    def __init__(self, backend: CoefficientBackend, order: int = 8):
        if order < 1:
            raise OrderError("a formal group law needs order >= 1")
        if backend.kind == "log" and order > backend.log_order + 1:
            raise OrderError(
                f"order {order} exceeds what log backend of order {backend.log_order} provides"
            )
        self.backend = backend
        self.order = order
        self._series: TruncatedSeries | None = None
        self._inverse: TruncatedSeries | None = None
        self._n_series: dict = {}
        self._linear: dict = {}
        self._decomposed: dict = {}

    @property
    def series(self) -> TruncatedSeries:
        """F(u, v) = u + v + sum a_{i,j} u^i v^j in variables ("u", "v")."""
        if self._series is None:
            terms = {(1, 0): 1, (0, 1): 1}
            for i in range(1, self.order):
                for j in range(1, self.order - i + 1):
                    a = lazard_coefficient(i, j, self.backend)
                    if not a.is_zero():
                        terms[(i, j)] = a
            self._series = TruncatedSeries(("u", "v"), self.order, self.backend, terms)
        return self._series

    def sum(self, s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
        """F(s, t) for two series with zero constant term over this backend."""
        return self.series.substitute({"u": s, "v": t})

    def inverse(self) -> TruncatedSeries:
        """The series chi(u) with F(u, chi(u)) = 0, solved order by order."""
        if self._inverse is not None:
            return self._inverse
        u_var = ("u",)
        chi: dict = {(1,): GradedPolynomial.constant(-1, self.backend)}
        f = self.series
        for k in range(2, self.order + 1):
            partial = TruncatedSeries._raw(u_var, self.order, self.backend, dict(chi))
            u = TruncatedSeries.variable("u", u_var, self.order, self.backend)
            residual = f.substitute({"u": u, "v": partial})
            # the v-derivative of F at v=0 is 1, so the u^k residual is
            # exactly the needed correction with opposite sign
            bad = residual.coefficient((k,))
            if not bad.is_zero():
                chi[(k,)] = -bad
        self._inverse = TruncatedSeries._raw(u_var, self.order, self.backend, chi)
        return self._inverse

    def n_series(self, n: int, variable: str = "u") -> TruncatedSeries:
        """[n]u: the n-fold formal sum of u (inverse-based for n < 0)."""
        key = (n, variable)
        cached = self._n_series.get(key)
        if cached is not None:
            return cached
        u_var = (variable,)
        u = TruncatedSeries.variable(variable, u_var, self.order, self.backend)
        if n == 0:
            result = TruncatedSeries.zero(u_var, self.order, self.backend)
        elif n > 0:
            result = u
            for _ in range(n - 1):
                result = self.sum(result, u)
        else:
            chi = self.inverse()
            if variable != "u":
                chi = TruncatedSeries._raw(
                    u_var, self.order, self.backend, dict(chi._terms)
                )
            result = chi
            for _ in range(-n - 1):
                result = self.sum(result, chi)
        self._n_series[key] = result
        return result

    def linear_combination(self, multiplicities, variables=None) -> TruncatedSeries:
        """F^{(n_1, ..., n_r)}: the formal sum of [n_i]u_i, folded left to right.

        Defaults to variables u1, ..., ur.  Multiplicities may be any
        integers, including zero.
        """
        ns = tuple(multiplicities)
        if not ns:
            raise ValidationError("need at least one multiplicity")
        if not all(isinstance(n, int) and not isinstance(n, bool) for n in ns):
            raise ValidationError("multiplicities must be integers")
        if variables is None:
            variables = tuple(f"u{i}" for i in range(1, len(ns) + 1))
        else:
            variables = tuple(variables)
            if len(variables) != len(ns):
                raise ValidationError("one variable per multiplicity required")
        key = (ns, variables)
        cached = self._linear.get(key)
        if cached is not None:
            return cached

        def embed(univariate: TruncatedSeries, index: int) -> TruncatedSeries:
            terms = {}
            for (e,), poly in univariate._terms.items():
                exps = [0] * len(variables)
                exps[index] = e
                terms[tuple(exps)] = poly
            return TruncatedSeries._raw(variables, self.order, self.backend, terms)

        result = embed(self.n_series(ns[0]), 0)
        for idx in range(1, len(ns)):
            result = self.sum(result, embed(self.n_series(ns[idx]), idx))
        self._linear[key] = result
        return result

    def decomposed_combination(self, multiplicities, variables=None):
        """support_decompose(linear_combination(...)), cached per vector."""
        ns = tuple(multiplicities)
        if variables is None:
            variables = tuple(f"u{i}" for i in range(1, len(ns) + 1))
        else:
            variables = tuple(variables)
        key = (ns, variables)
        cached = self._decomposed.get(key)
        if cached is None:
            cached = support_decompose(self.linear_combination(ns, variables))
            self._decomposed[key] = cached
        return cached


def fgl_sum(law: FormalGroupLaw, s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    """Function form of FormalGroupLaw.sum."""
    return law.sum(s, t)


def formal_inverse(law: FormalGroupLaw) -> TruncatedSeries:
    """Function form of FormalGroupLaw.inverse."""
    return law.inverse()


def support_decompose(series: TruncatedSeries) -> dict:
    """Split a series into parts with prescribed variable support.

    Returns a dict mapping frozensets J of 1-based variable indices to
    series G_J such that

        series = sum_J G_J * prod_{i in J} u_i

    and no variable outside J occurs in G_J.  A monomial with support
    exactly S contributes to the key J = S (one power of each variable in S
    is divided out); the constant term, if any, sits at J = frozenset().
    Only nonzero parts appear.
    """
    parts: dict = {}
    for exps, poly in series._terms.items():
        support = frozenset(i + 1 for i, e in enumerate(exps) if e)
        reduced = tuple(e - 1 if e else 0 for e in exps)
        bucket = parts.setdefault(support, {})
        acc = bucket.get(reduced)
        bucket[reduced] = poly if acc is None else acc + poly
    out = {}
    for support, bucket in sorted(parts.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))):
        clean = {e: p for e, p in bucket.items() if not p.is_zero()}
        if clean:
            out[support] = TruncatedSeries._raw(
                series.variables, series.order, series.backend, clean
            )
    return out


def recompose(parts: dict, variables, order, backend) -> TruncatedSeries:
    """Inverse of support_decompose: sum of G_J * prod_{i in J} u_i."""
    variables = tuple(variables)
    total = TruncatedSeries.zero(variables, order, backend)
    for support, part in parts.items():
        shifted = {}
        for exps, poly in part._terms.items():
            bumped = tuple(
                e + 1 if (i + 1) in support else e for i, e in enumerate(exps)
            )
            if sum(bumped) <= order:
                shifted[bumped] = poly
        total = total + TruncatedSeries(variables, order, backend, shifted)
    return total
