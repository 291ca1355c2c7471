"""Graded coefficient rings for formal group law calculus.

The universal formal group law F(u, v) = u + v + sum a_{i,j} u^i v^j has its
coefficients in a graded polynomial ring (the Lazard ring).  This module
provides that ring in four flavors, selected by a CoefficientBackend tag:

  free      polynomial ring on symbols A(i,j), i <= j, with deg A(i,j) = i+j-1;
            only the symmetry a_{i,j} = a_{j,i} is imposed
  log       coefficients generated by logarithm symbols m(i) of degree i;
            a_{i,j} is the polynomial obtained by reverting the logarithm
            l(u) = u + sum_i m(i) u^{i+1}
  additive  a_{i,j} = 0 for all i, j
  mult      a_{1,1} = b (degree 1), all other a_{i,j} = 0

Polynomials are sparse dicts keyed by monomials, a monomial being a sorted
tuple of (Generator, exponent) pairs.  Coefficients are exact rationals
(int or fractions.Fraction); floats are rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BackendMismatchError, OrderError, ValidationError

# Degree markers for the non-homogeneous cases.
ANY_DEGREE = "any"            # the zero polynomial is homogeneous of every degree
INHOMOGENEOUS = "inhomogeneous"


# ---------------------------------------------------------------------------
# generators

class Generator:
    """An interned named generator with a fixed grading degree.

    Sort order for canonical output: A(i,j) by (i+j, i), then b, then m(i).
    """

    __slots__ = ("kind", "i", "j", "degree", "sort_key", "name", "_hash")

    def __init__(self, kind: str, i: int = 0, j: int = 0):
        self.kind = kind
        self.i = i
        self.j = j
        if kind == "A":
            self.degree = i + j - 1
            self.sort_key = (0, i + j, i)
            self.name = f"A({i},{j})"
        elif kind == "b":
            self.degree = 1
            self.sort_key = (1, 0, 0)
            self.name = "b"
        elif kind == "m":
            self.degree = i
            self.sort_key = (2, i, 0)
            self.name = f"m({i})"
        else:
            raise ValidationError(f"unknown generator kind {kind!r}")
        self._hash = hash((kind, i, j))

    def __eq__(self, other):
        if not isinstance(other, Generator):
            return NotImplemented
        return self.kind == other.kind and self.i == other.i and self.j == other.j

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return self.name


@lru_cache(maxsize=None)
def _a_gen_interned(i: int, j: int) -> Generator:
    return Generator("A", i, j)


def a_gen(i: int, j: int) -> Generator:
    """The symbol A(i,j); indices normalize to i <= j (symmetry a_ij = a_ji)."""
    if i < 1 or j < 1:
        raise ValidationError("A(i,j) requires i, j >= 1")
    if i > j:
        i, j = j, i
    return _a_gen_interned(i, j)


@lru_cache(maxsize=None)
def m_gen(i: int) -> Generator:
    """The logarithm coefficient symbol m(i), degree i."""
    if i < 1:
        raise ValidationError("m(i) requires i >= 1")
    return Generator("m", i)


@lru_cache(maxsize=None)
def b_gen() -> Generator:
    """The multiplicative backend's single generator b, degree 1."""
    return Generator("b")


_GEN_NAME = re.compile(r"^(?:A\((\d+),(\d+)\)|m\((\d+)\)|b)$")


def generator_from_name(name: str) -> Generator:
    m = _GEN_NAME.match(name)
    if m is None:
        raise ValidationError(f"unrecognized generator name {name!r}")
    if m.group(1) is not None:
        return a_gen(int(m.group(1)), int(m.group(2)))
    if m.group(3) is not None:
        return m_gen(int(m.group(3)))
    return b_gen()


# ---------------------------------------------------------------------------
# backends

@dataclass(frozen=True)
class CoefficientBackend:
    """Tag selecting how the law coefficients a_{i,j} are realized.

    log_order bounds the indices available on the log backend: a_{i,j} is
    defined for i + j - 1 <= log_order.  It is None for the other kinds.
    """

    kind: str
    log_order: int | None = None

    def __post_init__(self):
        if self.kind not in ("free", "log", "additive", "mult"):
            raise ValidationError(f"unknown backend kind {self.kind!r}")
        if (self.kind == "log") != (self.log_order is not None):
            raise ValidationError("log_order is set exactly for the log backend")
        if self.log_order is not None and self.log_order < 1:
            raise OrderError("log backend needs log_order >= 1")

    def __repr__(self):
        if self.kind == "log":
            return f"CoefficientBackend(log, order={self.log_order})"
        return f"CoefficientBackend({self.kind})"


FREE = CoefficientBackend("free")
ADDITIVE = CoefficientBackend("additive")
MULTIPLICATIVE = CoefficientBackend("mult")


def log_backend(order: int) -> CoefficientBackend:
    """Log-coefficient backend with a_{i,j} available for i+j-1 <= order."""
    return CoefficientBackend("log", order)


def _require_same_backend(x: CoefficientBackend, y: CoefficientBackend):
    if x != y:
        raise BackendMismatchError(f"mixed backends {x!r} and {y!r}")


# ---------------------------------------------------------------------------
# monomials: sorted tuples of (Generator, exponent)

_EMPTY_MONO: tuple = ()


@lru_cache(maxsize=1 << 16)
def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        g1, e1 = m1[i]
        g2, e2 = m2[j]
        if g1 is g2 or g1 == g2:
            out.append((g1, e1 + e2))
            i += 1
            j += 1
        elif g1.sort_key < g2.sort_key:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def _mono_degree(mono) -> int:
    return sum(g.degree * e for g, e in mono)


def _mono_sort_key(mono):
    # graded, then lexicographic in the generator order
    return (_mono_degree(mono), tuple((g.sort_key, -e) for g, e in mono))


def _mono_text(mono) -> str:
    parts = []
    for g, e in mono:
        parts.append(g.name if e == 1 else f"{g.name}^{e}")
    return "*".join(parts)


def _coerce_scalar(value):
    """Accept exact rationals only; normalize integral Fractions to int."""
    if isinstance(value, bool):
        raise ValidationError("bool is not a ring scalar")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    raise ValidationError(f"coefficients must be exact rationals, got {type(value).__name__}")


# ---------------------------------------------------------------------------
# polynomials

class GradedPolynomial:
    """Sparse polynomial over interned generators, tagged with its backend."""

    __slots__ = ("backend", "_terms")

    def __init__(self, backend: CoefficientBackend, terms=None):
        self.backend = backend
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = _coerce_scalar(coeff)
                if coeff:
                    clean[mono] = coeff
        self._terms = clean

    @classmethod
    def _raw(cls, backend, terms):
        # internal fast path: terms already normalized, no zero values
        self = object.__new__(cls)
        self.backend = backend
        self._terms = terms
        return self

    @classmethod
    def zero(cls, backend) -> GradedPolynomial:
        return cls._raw(backend, {})

    @classmethod
    def one(cls, backend) -> GradedPolynomial:
        return cls._raw(backend, {_EMPTY_MONO: 1})

    @classmethod
    def constant(cls, value, backend) -> GradedPolynomial:
        value = _coerce_scalar(value)
        return cls._raw(backend, {_EMPTY_MONO: value} if value else {})

    @classmethod
    def generator(cls, gen: Generator, backend) -> GradedPolynomial:
        return cls._raw(backend, {((gen, 1),): 1})

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def constant_term(self):
        return self._terms.get(_EMPTY_MONO, 0)

    def graded_degree(self):
        """Common degree of all terms, ANY_DEGREE for 0, else INHOMOGENEOUS."""
        degs = {_mono_degree(m) for m in self._terms}
        if not degs:
            return ANY_DEGREE
        if len(degs) == 1:
            return degs.pop()
        return INHOMOGENEOUS

    def is_homogeneous(self) -> bool:
        return self.graded_degree() != INHOMOGENEOUS

    def term_count(self) -> int:
        return len(self._terms)

    def sorted_terms(self):
        """Terms as (monomial, coefficient) in canonical graded-lex order."""
        return sorted(self._terms.items(), key=lambda kv: _mono_sort_key(kv[0]))

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GradedPolynomial):
            return self.backend == other.backend and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == ({_EMPTY_MONO: _coerce_scalar(other)} if other else {})
        return NotImplemented

    __hash__ = None

    def __neg__(self):
        return GradedPolynomial._raw(self.backend, {m: -c for m, c in self._terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        _require_same_backend(self.backend, other.backend)
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            acc = out.get(mono, 0) + coeff
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
        return GradedPolynomial._raw(self.backend, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, GradedPolynomial):
            _require_same_backend(self.backend, other.backend)
            acc = {}
            self._multiply_into(other, acc)
            return GradedPolynomial._raw(self.backend, {m: c for m, c in acc.items() if c})
        try:
            scalar = _coerce_scalar(other)
        except ValidationError:
            return NotImplemented
        if not scalar:
            return GradedPolynomial.zero(self.backend)
        return GradedPolynomial._raw(self.backend, {m: c * scalar for m, c in self._terms.items()})

    __rmul__ = __mul__

    def _multiply_into(self, other, acc: dict):
        # accumulate self*other into a mono -> coeff dict without allocating
        # intermediate polynomials; callers strip zeros when finalizing
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _mono_mul(m1, m2)
                acc[mono] = acc.get(mono, 0) + c1 * c2

    @classmethod
    def _from_accumulator(cls, backend, acc: dict) -> GradedPolynomial:
        return cls._raw(backend, {m: c for m, c in acc.items() if c})

    def _coerce(self, other):
        if isinstance(other, GradedPolynomial):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return GradedPolynomial.constant(other, self.backend)
        return NotImplemented

    # -- serialization ----------------------------------------------------

    def to_text(self) -> str:
        """Canonical text form, e.g. "4*m(1)^2 - 3*m(2)"; zero renders "0"."""
        if not self._terms:
            return "0"
        chunks = []
        for mono, coeff in self.sorted_terms():
            body = _mono_text(mono)
            mag = abs(coeff)
            if not body:
                piece = str(mag)
            elif mag == 1:
                piece = body
            else:
                piece = f"{mag}*{body}"
            if not chunks:
                chunks.append(piece if coeff > 0 else "-" + piece)
            else:
                chunks.append((" + " if coeff > 0 else " - ") + piece)
        return "".join(chunks)

    @classmethod
    def from_text(cls, text: str, backend: CoefficientBackend) -> GradedPolynomial:
        """Parse the canonical text form (also accepts explicit unit coefficients)."""
        s = text.strip()
        if s in ("", "0"):
            return cls.zero(backend)
        # normalize to a +/- separated sequence of terms
        if s[0] not in "+-":
            s = "+" + s
        pieces = re.findall(r"([+-])\s*([^+-]+)", s)
        if "".join(sign + body for sign, body in pieces).replace(" ", "") != s.replace(" ", ""):
            raise ValidationError(f"cannot parse polynomial text {text!r}")
        terms: dict = {}
        for sign, body in pieces:
            coeff = Fraction(-1 if sign == "-" else 1)
            mono: dict = {}
            for factor in body.strip().split("*"):
                factor = factor.strip()
                if not factor:
                    raise ValidationError(f"empty factor in {text!r}")
                if re.fullmatch(r"\d+(?:/\d+)?", factor):
                    coeff *= Fraction(factor)
                    continue
                if "^" in factor:
                    gname, _, exp = factor.partition("^")
                    if not exp.isdigit() or int(exp) < 1:
                        raise ValidationError(f"bad exponent in {factor!r}")
                    e = int(exp)
                else:
                    gname, e = factor, 1
                g = generator_from_name(gname.strip())
                mono[g] = mono.get(g, 0) + e
            key = tuple(sorted(mono.items(), key=lambda ge: ge[0].sort_key))
            acc = terms.get(key, 0) + coeff
            if acc:
                terms[key] = acc
            else:
                terms.pop(key, None)
        return cls(backend, terms)

    def to_json(self) -> list:
        """JSON form: list of {"coeff": str, "monomial": {name: exp}} terms."""
        out = []
        for mono, coeff in self.sorted_terms():
            out.append({"coeff": str(coeff), "monomial": {g.name: e for g, e in mono}})
        return out

    @classmethod
    def from_json(cls, data, backend: CoefficientBackend) -> GradedPolynomial:
        if not isinstance(data, list):
            raise ValidationError("polynomial JSON must be a list of terms")
        terms: dict = {}
        for entry in data:
            if not isinstance(entry, dict) or "coeff" not in entry or "monomial" not in entry:
                raise ValidationError("polynomial term needs 'coeff' and 'monomial'")
            try:
                coeff = Fraction(entry["coeff"])
            except (ValueError, ZeroDivisionError, TypeError) as exc:
                raise ValidationError(f"bad coefficient {entry['coeff']!r}") from exc
            mono: dict = {}
            if not isinstance(entry["monomial"], dict):
                raise ValidationError("'monomial' must be an object")
            for name, e in entry["monomial"].items():
                if not isinstance(e, int) or e < 1:
                    raise ValidationError(f"bad exponent {e!r} for {name!r}")
                g = generator_from_name(name)
                mono[g] = mono.get(g, 0) + e
            key = tuple(sorted(mono.items(), key=lambda ge: ge[0].sort_key))
            acc = terms.get(key, 0) + coeff
            if acc:
                terms[key] = acc
            else:
                terms.pop(key, None)
        return cls(backend, terms)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"GradedPolynomial({self.to_text()})"


# ---------------------------------------------------------------------------
# law coefficients per backend

def lazard_coefficient(i: int, j: int, backend: CoefficientBackend) -> GradedPolynomial:
    """The coefficient a_{i,j} of u^i v^j in F(u, v), over the given backend.

    Requires i, j >= 1.  On the log backend the pair must satisfy
    i + j - 1 <= log_order; anything deeper raises OrderError.
    """
    if i < 1 or j < 1:
        raise ValidationError("lazard_coefficient requires i, j >= 1")
    kind = backend.kind
    if kind == "free":
        return GradedPolynomial.generator(a_gen(i, j), backend)
    if kind == "additive":
        return GradedPolynomial.zero(backend)
    if kind == "mult":
        if i == j == 1:
            return GradedPolynomial.generator(b_gen(), backend)
        return GradedPolynomial.zero(backend)
    # log: from the reverted logarithm
    if i + j - 1 > backend.log_order:
        raise OrderError(
            f"a({i},{j}) has degree {i + j - 1}, beyond log backend order {backend.log_order}"
        )
    return _log_coefficient_table(backend.log_order)[(i, j)]


def _poly_list_mul(a, b, top, backend):
    # product of univariate series given as coefficient lists, truncated at top
    out = [GradedPolynomial.zero(backend) for _ in range(top + 1)]
    for i, pa in enumerate(a):
        if pa.is_zero():
            continue
        for j in range(top - i + 1):
            pb = b[j]
            if not pb.is_zero():
                out[i + j] = out[i + j] + pa * pb
    return out


@lru_cache(maxsize=None)
def _log_coefficient_table(order: int):
    """All a_{i,j} with i+j-1 <= order on the log backend of that order.

    Reverts l(t) = t + m(1) t^2 + m(2) t^3 + ... to g with g(l(t)) = t, then
    expands F(u, v) = g(l(u) + l(v)) up to total degree order + 1.
    """
    backend = log_backend(order)
    top = order + 1
    zero = GradedPolynomial.zero(backend)
    one = GradedPolynomial.one(backend)

    ell = [zero, one] + [
        GradedPolynomial.generator(m_gen(k - 1), backend) for k in range(2, top + 1)
    ]

    # powers of l, then reversion coefficients g[k] solving sum g_j l^j = t
    ell_pows = [None, list(ell)]
    for _ in range(2, top + 1):
        ell_pows.append(_poly_list_mul(ell_pows[-1], ell, top, backend))
    g = [zero, one]
    for k in range(2, top + 1):
        acc = zero
        for j in range(1, k):
            term = ell_pows[j][k]
            if not term.is_zero():
                acc = acc + g[j] * term
        g.append(-acc)

    # s = l(u) + l(v) as a bivariate truncated series, then F = sum g_j s^j
    s = {}
    for k in range(1, top + 1):
        if not ell[k].is_zero():
            s[(k, 0)] = ell[k]
            s[(0, k)] = ell[k]
    f_terms: dict = {}
    s_pow = {(0, 0): one}
    for j in range(1, top + 1):
        nxt: dict = {}
        for (e1, e2), p in s_pow.items():
            for (d1, d2), q in s.items():
                if e1 + d1 + e2 + d2 > top:
                    continue
                key = (e1 + d1, e2 + d2)
                prod = p * q
                nxt[key] = nxt.get(key, zero) + prod
        s_pow = {k: v for k, v in nxt.items() if not v.is_zero()}
        gj = g[j]
        if gj.is_zero():
            continue
        for key, p in s_pow.items():
            f_terms[key] = f_terms.get(key, zero) + gj * p

    # sanity: the unit axiom must come out on the nose
    assert f_terms.get((1, 0), zero) == one
    for k in range(2, top + 1):
        assert f_terms.get((k, 0), zero).is_zero()

    table = {}
    for (i, j), p in f_terms.items():
        if i >= 1 and j >= 1:
            table[(i, j)] = p
    for i in range(1, top):
        for j in range(1, top - i + 1):
            table.setdefault((i, j), zero)
    return table
