"""Free graded groups of decorated cycles and their relation generators.

A decorated cycle [Y -> X, L_1, ..., L_r] is a formal symbol: a smooth
source label, an arbitrary target label, and a finite multiset of line
bundle names.  Its degree is dim Y - r.  CycleSum is the free module on
such symbols, with integer or GradedPolynomial coefficients.

Relation builders produce the generators by which geometric theories divide
these groups: the double point relation of a degeneration, its blowup
instance (iterated along a tower, with the telescoping sum), and the three
quotient generators (too many pulled-back bundles, a section moving a
bundle into its zero locus, and the group-law expansion of a tensor
product).  Everything here is bookkeeping on labels; validation checks the
stated dimension and smoothness arithmetic, nothing more.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BackendMismatchError,
    CycleError,
    DimensionMismatchError,
    ValidationError,
    WitnessError,
)
from .ring import (
    ANY_DEGREE,
    INHOMOGENEOUS,
    CoefficientBackend,
    GradedPolynomial,
    lazard_coefficient,
)


@dataclass(frozen=True)
class SpaceLabel:
    """Name plus the little geometry the calculus actually consumes."""

    name: str
    dim: int
    smooth: bool = True
    quasiprojective: bool = True
    complete: bool = False
    nu: int | None = None

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise ValidationError("label name must be a nonempty string")
        if not isinstance(self.dim, int) or isinstance(self.dim, bool) or self.dim < 0:
            raise ValidationError(f"label dimension must be an integer >= 0, got {self.dim!r}")

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "dim": self.dim,
            "smooth": self.smooth,
            "quasiprojective": self.quasiprojective,
            "complete": self.complete,
        }
        if self.nu is not None:
            out["nu"] = self.nu
        return out

    @classmethod
    def from_json(cls, data) -> SpaceLabel:
        if not isinstance(data, dict) or "name" not in data or "dim" not in data:
            raise ValidationError("label JSON needs 'name' and 'dim'")
        for flag in ("smooth", "quasiprojective", "complete"):
            if flag in data and not isinstance(data[flag], bool):
                raise ValidationError(f"label field {flag!r} must be a boolean")
        nu = data.get("nu")
        if nu is not None and (not isinstance(nu, int) or isinstance(nu, bool)):
            raise ValidationError("'nu' must be an integer when present")
        return cls(
            data["name"],
            data["dim"],
            data.get("smooth", True),
            data.get("quasiprojective", True),
            data.get("complete", False),
            nu,
        )


def _label_key(label: SpaceLabel):
    return (
        label.name,
        label.dim,
        label.smooth,
        label.quasiprojective,
        label.complete,
        label.nu is not None,
        label.nu or 0,
    )


@dataclass(frozen=True)
class DecoratedCycle:
    """[source -> target, bundles]: the free generator of a cycle group.

    The source must be smooth and quasiprojective; the bundle multiset is
    stored sorted, so two decorations differing only in listing order are
    the same cycle.
    """

    source: SpaceLabel
    target: SpaceLabel
    bundles: tuple = ()

    def __post_init__(self):
        if not self.source.smooth:
            raise CycleError(f"cycle source {self.source.name!r} must be smooth")
        if not self.source.quasiprojective:
            raise CycleError(f"cycle source {self.source.name!r} must be quasiprojective")
        bundles = tuple(self.bundles)
        for b in bundles:
            if not isinstance(b, str) or not b:
                raise ValidationError("bundle names must be nonempty strings")
        object.__setattr__(self, "bundles", tuple(sorted(bundles)))

    @property
    def degree(self) -> int:
        return self.source.dim - len(self.bundles)

    def sort_key(self):
        return (_label_key(self.source), _label_key(self.target), self.bundles)

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "bundles": list(self.bundles),
        }

    @classmethod
    def from_json(cls, data) -> DecoratedCycle:
        if not isinstance(data, dict) or "source" not in data or "target" not in data:
            raise ValidationError("cycle JSON needs 'source' and 'target'")
        bundles = data.get("bundles", [])
        if not isinstance(bundles, list):
            raise ValidationError("'bundles' must be a list")
        return cls(
            SpaceLabel.from_json(data["source"]),
            SpaceLabel.from_json(data["target"]),
            tuple(bundles),
        )

    def __str__(self):
        inside = f"{self.source.name} -> {self.target.name}"
        if self.bundles:
            inside += "; " + ", ".join(self.bundles)
        return f"[{inside}]"


@dataclass(frozen=True)
class LabelMorphism:
    """A named arrow between targets, used for pushforward."""

    source: SpaceLabel
    target: SpaceLabel
    proper: bool = True

    def then(self, other: LabelMorphism) -> LabelMorphism:
        """Composite self followed by other."""
        if self.target != other.source:
            raise CycleError("morphisms do not compose: targets do not meet")
        return LabelMorphism(self.source, other.target, self.proper and other.proper)


class CycleSum:
    """Formal linear combination of decorated cycles.

    Coefficients are plain integers (backend None) or GradedPolynomial over
    one shared backend.  Sums over different backends do not mix.
    """

    __slots__ = ("backend", "_terms")

    def __init__(self, backend: CoefficientBackend | None = None, terms=None):
        self.backend = backend
        clean = {}
        if terms:
            for cycle, coeff in terms.items():
                if not isinstance(cycle, DecoratedCycle):
                    raise ValidationError("CycleSum keys must be DecoratedCycle")
                coeff = self._coerce(coeff)
                if (isinstance(coeff, GradedPolynomial) and not coeff.is_zero()) or (
                    not isinstance(coeff, GradedPolynomial) and coeff
                ):
                    clean[cycle] = coeff
        self._terms = clean

    def _coerce(self, coeff):
        if self.backend is None:
            if isinstance(coeff, bool) or not isinstance(coeff, int):
                raise ValidationError("integer coefficients required without a backend")
            return coeff
        if isinstance(coeff, GradedPolynomial):
            if coeff.backend != self.backend:
                raise BackendMismatchError("coefficient over the wrong backend")
            return coeff
        if isinstance(coeff, (int, Fraction)) and not isinstance(coeff, bool):
            return GradedPolynomial.constant(coeff, self.backend)
        raise ValidationError(f"bad cycle coefficient {coeff!r}")

    @classmethod
    def single(cls, cycle: DecoratedCycle, coeff=1, backend=None) -> CycleSum:
        return cls(backend, {cycle: coeff})

    @classmethod
    def zero(cls, backend=None) -> CycleSum:
        return cls(backend)

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, cycle: DecoratedCycle):
        zero = 0 if self.backend is None else GradedPolynomial.zero(self.backend)
        return self._terms.get(cycle, zero)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def cycles(self):
        return [cycle for cycle, _ in self.items()]

    def total_degree(self):
        """Common degree of all terms (cycle degree plus coefficient degree)."""
        degs = set()
        for cycle, coeff in self._terms.items():
            if isinstance(coeff, GradedPolynomial):
                g = coeff.graded_degree()
                if g == INHOMOGENEOUS:
                    return INHOMOGENEOUS
                degs.add(cycle.degree + g)
            else:
                degs.add(cycle.degree)
        if not degs:
            return ANY_DEGREE
        if len(degs) == 1:
            return degs.pop()
        return INHOMOGENEOUS

    def __eq__(self, other):
        if not isinstance(other, CycleSum):
            return NotImplemented
        return self.backend == other.backend and self._terms == other._terms

    __hash__ = None

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: CycleSum):
        if self.backend != other.backend:
            raise BackendMismatchError("cycle sums over different backends")

    def __add__(self, other):
        if not isinstance(other, CycleSum):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for cycle, coeff in other._terms.items():
            acc = out.get(cycle)
            acc = coeff if acc is None else acc + coeff
            if (isinstance(acc, GradedPolynomial) and acc.is_zero()) or acc == 0:
                out.pop(cycle, None)
            else:
                out[cycle] = acc
        return CycleSum._raw(self.backend, out)

    @classmethod
    def _raw(cls, backend, terms):
        self = object.__new__(cls)
        self.backend = backend
        self._terms = terms
        return self

    def __neg__(self):
        return CycleSum._raw(self.backend, {c: -k for c, k in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, CycleSum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, CycleSum):
            return NotImplemented
        try:
            scalar = self._coerce(scalar)
        except ValidationError:
            return NotImplemented
        if (isinstance(scalar, GradedPolynomial) and scalar.is_zero()) or scalar == 0:
            return CycleSum.zero(self.backend)
        out = {}
        for cycle, coeff in self._terms.items():
            acc = coeff * scalar
            if not ((isinstance(acc, GradedPolynomial) and acc.is_zero()) or acc == 0):
                out[cycle] = acc
        return CycleSum._raw(self.backend, out)

    __rmul__ = __mul__

    def with_backend(self, backend: CoefficientBackend) -> CycleSum:
        """Extend integer coefficients to constants over a backend."""
        if self.backend is not None:
            if self.backend == backend:
                return self
            raise BackendMismatchError("sum already lives over a different backend")
        return CycleSum(
            backend,
            {c: GradedPolynomial.constant(k, backend) for c, k in self._terms.items()},
        )

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        terms = []
        for cycle, coeff in self.items():
            value = coeff.to_json() if isinstance(coeff, GradedPolynomial) else coeff
            terms.append({"coeff": value, "cycle": cycle.to_json()})
        return {"terms": terms}

    @classmethod
    def from_json(cls, data, backend: CoefficientBackend | None = None) -> CycleSum:
        if not isinstance(data, dict) or "terms" not in data:
            raise ValidationError("cycle sum JSON needs 'terms'")
        if not isinstance(data["terms"], list):
            raise ValidationError("'terms' must be a list")
        out = cls(backend)
        terms: dict = {}
        for entry in data["terms"]:
            if not isinstance(entry, dict) or "coeff" not in entry or "cycle" not in entry:
                raise ValidationError("cycle term needs 'coeff' and 'cycle'")
            cycle = DecoratedCycle.from_json(entry["cycle"])
            raw = entry["coeff"]
            if isinstance(raw, list):
                if backend is None:
                    raise ValidationError("polynomial coefficients need a backend")
                coeff = GradedPolynomial.from_json(raw, backend)
            elif isinstance(raw, int) and not isinstance(raw, bool):
                coeff = raw if backend is None else GradedPolynomial.constant(raw, backend)
            else:
                raise ValidationError(f"bad coefficient {raw!r}")
            if cycle in terms:
                prev = terms[cycle]
                coeff = prev + coeff
            terms[cycle] = coeff
        return cls(backend, terms)

    def __str__(self):
        if not self._terms:
            return "0"
        chunks = []
        for cycle, coeff in self.items():
            if isinstance(coeff, GradedPolynomial):
                text = coeff.to_text()
                if text == "1":
                    piece = str(cycle)
                elif text == "-1":
                    piece = f"-{cycle}"
                elif coeff.term_count() > 1:
                    piece = f"({text})*{cycle}"
                else:
                    piece = f"{text}*{cycle}"
            else:
                if coeff == 1:
                    piece = str(cycle)
                elif coeff == -1:
                    piece = f"-{cycle}"
                else:
                    piece = f"{coeff}*{cycle}"
            chunks.append(piece)
        text = chunks[0]
        for piece in chunks[1:]:
            if piece.startswith("-"):
                text += " - " + piece[1:]
            else:
                text += " + " + piece
        return text

    def __repr__(self):
        return f"CycleSum({self!s})"


# ---------------------------------------------------------------------------
# functoriality

def pushforward(total: CycleSum, morphism: LabelMorphism) -> CycleSum:
    """Compose every cycle with a proper arrow out of the common target."""
    if not morphism.proper:
        raise CycleError("pushforward requires a proper morphism")
    out: dict = {}
    for cycle, coeff in total._terms.items():
        if cycle.target != morphism.source:
            raise CycleError(
                f"cycle targets {cycle.target.name!r}, morphism leaves {morphism.source.name!r}"
            )
        moved = DecoratedCycle(cycle.source, morphism.target, cycle.bundles)
        prev = out.get(moved)
        acc = coeff if prev is None else prev + coeff
        out[moved] = acc
    clean = {
        c: k
        for c, k in out.items()
        if not ((isinstance(k, GradedPolynomial) and k.is_zero()) or k == 0)
    }
    return CycleSum._raw(total.backend, clean)


def _product_label(a: SpaceLabel, b: SpaceLabel) -> SpaceLabel:
    return SpaceLabel(
        f"{a.name} x {b.name}",
        a.dim + b.dim,
        a.smooth and b.smooth,
        a.quasiprojective and b.quasiprojective,
        a.complete and b.complete,
    )


def exterior_product(left: CycleSum, right: CycleSum) -> CycleSum:
    """[Y -> X] x [Y' -> X'] = [Y x Y' -> X x X'], extended bilinearly.

    Defined for undecorated cycles only; decorated inputs are rejected.
    """
    left._check(right)
    for s in (left, right):
        for cycle in s._terms:
            if cycle.bundles:
                raise CycleError("exterior products take undecorated cycles")
    out: dict = {}
    for c1, k1 in left._terms.items():
        for c2, k2 in right._terms.items():
            cycle = DecoratedCycle(
                _product_label(c1.source, c2.source),
                _product_label(c1.target, c2.target),
            )
            coeff = k1 * k2
            prev = out.get(cycle)
            acc = coeff if prev is None else prev + coeff
            out[cycle] = acc
    clean = {
        c: k
        for c, k in out.items()
        if not ((isinstance(k, GradedPolynomial) and k.is_zero()) or k == 0)
    }
    return CycleSum._raw(left.backend, clean)


# ---------------------------------------------------------------------------
# degeneration relations

@dataclass(frozen=True)
class DoublePointDatum:
    """Labels of a double point degeneration over a curve.

    The fiber over a general point is smooth_fiber; the special fiber is
    component_a glued to component_b along intersection, and
    projective_bundle is the P^1-bundle over the intersection.
    """

    smooth_fiber: SpaceLabel
    component_a: SpaceLabel
    component_b: SpaceLabel
    intersection: SpaceLabel
    projective_bundle: SpaceLabel
    target: SpaceLabel

    def __post_init__(self):
        d = self.smooth_fiber.dim
        for part in ("component_a", "component_b", "projective_bundle"):
            if getattr(self, part).dim != d:
                raise DimensionMismatchError(
                    f"{part} must have dimension {d}, got {getattr(self, part).dim}"
                )
        if self.intersection.dim != d - 1:
            raise DimensionMismatchError(
                f"intersection must have dimension {d - 1}, got {self.intersection.dim}"
            )
        for part in ("smooth_fiber", "component_a", "component_b", "intersection",
                     "projective_bundle"):
            label = getattr(self, part)
            if not label.smooth:
                raise CycleError(f"{part} must be smooth")

    @classmethod
    def from_json(cls, data) -> DoublePointDatum:
        if not isinstance(data, dict):
            raise ValidationError("double point JSON must be an object")
        fields = ("smooth_fiber", "component_a", "component_b", "intersection",
                  "projective_bundle", "target")
        missing = [f for f in fields if f not in data]
        if missing:
            raise ValidationError(f"double point JSON lacks {missing}")
        return cls(*(SpaceLabel.from_json(data[f]) for f in fields))


def double_point_relation(datum: DoublePointDatum) -> CycleSum:
    """[general fiber] - [A] - [B] + [P^1-bundle over A meet B], over the target."""
    X = datum.target
    return CycleSum(None, {
        DecoratedCycle(datum.smooth_fiber, X): 1,
        DecoratedCycle(datum.component_a, X): -1,
        DecoratedCycle(datum.component_b, X): -1,
        DecoratedCycle(datum.projective_bundle, X): 1,
    })


@dataclass(frozen=True)
class BlowupStep:
    """One stage of a blowup tower: base is replaced by its blowup.

    The deformation to the normal cone of the center turns the base into
    the blowup glued to a projective cone piece (exceptional here) along
    the exceptional divisor; projective_bundle is the P^1-bundle of that
    gluing.  All four labels share the base dimension.
    """

    base: SpaceLabel
    blowup: SpaceLabel
    exceptional: SpaceLabel
    projective_bundle: SpaceLabel

    def __post_init__(self):
        d = self.base.dim
        for part in ("blowup", "exceptional", "projective_bundle"):
            if getattr(self, part).dim != d:
                raise DimensionMismatchError(
                    f"{part} must have dimension {d}, got {getattr(self, part).dim}"
                )
        for part in ("base", "blowup", "exceptional", "projective_bundle"):
            if not getattr(self, part).smooth:
                raise CycleError(f"{part} must be smooth")

    @classmethod
    def from_json(cls, data) -> BlowupStep:
        if not isinstance(data, dict):
            raise ValidationError("blowup step JSON must be an object")
        fields = ("base", "blowup", "exceptional", "projective_bundle")
        missing = [f for f in fields if f not in data]
        if missing:
            raise ValidationError(f"blowup step JSON lacks {missing}")
        return cls(*(SpaceLabel.from_json(data[f]) for f in fields))


def blowup_relation(step: BlowupStep, target: SpaceLabel) -> CycleSum:
    """[base] - [blowup] - [exceptional piece] + [its P^1-bundle], over target."""
    return CycleSum(None, {
        DecoratedCycle(step.base, target): 1,
        DecoratedCycle(step.blowup, target): -1,
        DecoratedCycle(step.exceptional, target): -1,
        DecoratedCycle(step.projective_bundle, target): 1,
    })


def blowup_tower_relations(steps, target: SpaceLabel) -> list:
    """Relations of consecutive tower stages; steps must chain base-to-blowup."""
    steps = list(steps)
    for prev, nxt in zip(steps, steps[1:]):
        if prev.blowup != nxt.base:
            raise CycleError(
                f"tower breaks between {prev.blowup.name!r} and {nxt.base.name!r}"
            )
    return [blowup_relation(step, target) for step in steps]


def telescope_sum(steps, target: SpaceLabel) -> CycleSum:
    """Sum of the tower relations; interior stages cancel in pairs."""
    total = CycleSum.zero()
    for rel in blowup_tower_relations(steps, target):
        total = total + rel
    return total


# ---------------------------------------------------------------------------
# quotient relation generators

@dataclass(frozen=True)
class DimWitness:
    """Too many bundles pulled back from a lower-dimensional base.

    source fibers over base; pulled_back names bundles coming from the
    base, extra names the remaining decorations.  The class vanishes when
    the pulled-back count exceeds dim base.
    """

    source: SpaceLabel
    target: SpaceLabel
    base: SpaceLabel
    pulled_back: tuple
    extra: tuple = ()

    @classmethod
    def from_json(cls, data) -> DimWitness:
        if not isinstance(data, dict):
            raise ValidationError("witness JSON must be an object")
        for f in ("source", "target", "base", "pulled_back"):
            if f not in data:
                raise ValidationError(f"dim witness lacks {f!r}")
        for f in ("pulled_back", "extra"):
            if f in data and not isinstance(data[f], list):
                raise ValidationError(f"{f!r} must be a list of names")
        return cls(
            SpaceLabel.from_json(data["source"]),
            SpaceLabel.from_json(data["target"]),
            SpaceLabel.from_json(data["base"]),
            tuple(data["pulled_back"]),
            tuple(data.get("extra", [])),
        )


@dataclass(frozen=True)
class SectWitness:
    """A section of the last bundle cuts out zero_locus inside source.

    restricted optionally renames the surviving bundles on the zero locus;
    by default they keep their names.
    """

    source: SpaceLabel
    target: SpaceLabel
    zero_locus: SpaceLabel
    bundles: tuple
    restricted: tuple | None = None

    @classmethod
    def from_json(cls, data) -> SectWitness:
        if not isinstance(data, dict):
            raise ValidationError("witness JSON must be an object")
        for f in ("source", "target", "zero_locus", "bundles"):
            if f not in data:
                raise ValidationError(f"sect witness lacks {f!r}")
        if not isinstance(data["bundles"], list):
            raise ValidationError("'bundles' must be a list of names")
        restricted = data.get("restricted")
        if restricted is not None and not isinstance(restricted, list):
            raise ValidationError("'restricted' must be a list of names")
        return cls(
            SpaceLabel.from_json(data["source"]),
            SpaceLabel.from_json(data["target"]),
            SpaceLabel.from_json(data["zero_locus"]),
            tuple(data["bundles"]),
            None if restricted is None else tuple(restricted),
        )


@dataclass(frozen=True)
class TensorWitness:
    """A tensor product decoration to be expanded through the group law."""

    source: SpaceLabel
    target: SpaceLabel
    bundles: tuple
    left: str
    right: str
    tensor: str

    @classmethod
    def from_json(cls, data) -> TensorWitness:
        if not isinstance(data, dict):
            raise ValidationError("witness JSON must be an object")
        for f in ("source", "target", "left", "right", "tensor"):
            if f not in data:
                raise ValidationError(f"fgl witness lacks {f!r}")
        bundles = data.get("bundles", [])
        if not isinstance(bundles, list):
            raise ValidationError("'bundles' must be a list of names")
        return cls(
            SpaceLabel.from_json(data["source"]),
            SpaceLabel.from_json(data["target"]),
            tuple(bundles),
            data["left"],
            data["right"],
            data["tensor"],
        )


DIM = "dim"
SECT = "sect"
FGL = "fgl"


def relation_generator(kind: str, witness, backend: CoefficientBackend | None = None) -> CycleSum:
    """One generator of the relations imposed on the cycle group.

    kind "dim":  the single class with too many pulled-back bundles
    kind "sect": [Y, bundles] - [zero locus, restricted bundles]
    kind "fgl":  [Y, ..., L tensor M] minus its group-law expansion in
                 copies of L and M; needs a backend, and terms whose bundle
                 count would exceed dim Y are dropped (they vanish anyway)
    """
    if kind == DIM:
        if not isinstance(witness, DimWitness):
            raise WitnessError("dim relation needs a DimWitness")
        if not witness.pulled_back:
            raise WitnessError("dim witness needs at least one pulled-back bundle")
        if witness.source.dim < witness.base.dim:
            raise DimensionMismatchError("source cannot fiber over a larger base")
        if len(witness.pulled_back) <= witness.base.dim:
            raise WitnessError(
                f"need more than {witness.base.dim} pulled-back bundles to vanish, "
                f"got {len(witness.pulled_back)}"
            )
        cycle = DecoratedCycle(
            witness.source, witness.target, witness.pulled_back + witness.extra
        )
        return CycleSum(None, {cycle: 1})

    if kind == SECT:
        if not isinstance(witness, SectWitness):
            raise WitnessError("sect relation needs a SectWitness")
        if not witness.bundles:
            raise WitnessError("sect witness needs the bundle being cut")
        if witness.zero_locus.dim != witness.source.dim - 1:
            raise DimensionMismatchError(
                "zero locus must drop the dimension by exactly one"
            )
        restricted = witness.restricted
        if restricted is None:
            restricted = witness.bundles[:-1]
        if len(restricted) != len(witness.bundles) - 1:
            raise WitnessError("restricted names must cover all bundles but the last")
        upstairs = DecoratedCycle(witness.source, witness.target, witness.bundles)
        downstairs = DecoratedCycle(witness.zero_locus, witness.target, restricted)
        return CycleSum(None, {upstairs: 1, downstairs: -1})

    if kind == FGL:
        if not isinstance(witness, TensorWitness):
            raise WitnessError("fgl relation needs a TensorWitness")
        if backend is None:
            raise WitnessError("fgl relation needs a coefficient backend")
        prefix = witness.bundles
        room = witness.source.dim - len(prefix)
        terms: dict = {}

        def put(cycle, coeff):
            prev = terms.get(cycle)
            acc = coeff if prev is None else prev + coeff
            if acc.is_zero():
                terms.pop(cycle, None)
            else:
                terms[cycle] = acc

        one = GradedPolynomial.one(backend)
        if room >= 1:
            put(DecoratedCycle(witness.source, witness.target, prefix + (witness.tensor,)), one)
            put(DecoratedCycle(witness.source, witness.target, prefix + (witness.left,)), -one)
            put(DecoratedCycle(witness.source, witness.target, prefix + (witness.right,)), -one)
        for i in range(1, room + 1):
            for j in range(1, room - i + 1):
                a = lazard_coefficient(i, j, backend)
                if a.is_zero():
                    continue
                bundles = prefix + (witness.left,) * i + (witness.right,) * j
                put(DecoratedCycle(witness.source, witness.target, bundles), -a)
        return CycleSum(backend, terms)

    raise WitnessError(f"unknown relation kind {kind!r}")
