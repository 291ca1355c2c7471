"""Divisor classes over combinatorial simple-normal-crossing data.

An SncConfiguration records the combinatorics of an s.n.c. divisor on a
smooth ambient space: components D_1..D_r and the family of index sets J
whose intersections D_J are nonempty.  The family must be downward closed,
contain every singleton, and respect ambient_dim - |J| >= 0.

A FaceClassVector assigns to some faces J a ChernPolynomial in the symbols
c_1..c_r (the classes of the O(D_i) restricted to D_J), truncated at the
face dimension ambient_dim - |J|.  divisor_class and product_class produce
such vectors from multiplicity data and a formal group law; normal_form
rewrites stray c_j factors into deeper faces (a section moves a hyperplane
class into the zero locus) until every entry only involves decisions its
face can see.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chern import ChernPolynomial, evaluate_at_chern
from .errors import ConfigurationError, OrderError, ValidationError
from .ring import ANY_DEGREE, INHOMOGENEOUS, _mono_degree
from .series import FormalGroupLaw, TruncatedSeries


@dataclass(frozen=True)
class SncComponent:
    """One irreducible divisor component."""

    name: str
    quasiprojective: bool = True

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise ValidationError("component name must be a nonempty string")


def _normalize_faces(faces):
    out = set()
    for face in faces:
        members = []
        for i in face:
            if not isinstance(i, int) or isinstance(i, bool):
                raise ValidationError(f"face index {i!r} is not an integer")
            members.append(i)
        out.add(frozenset(members))
    return frozenset(out)


@dataclass(frozen=True)
class SncConfiguration:
    """Combinatorics of an s.n.c. divisor inside an ambient smooth space."""

    ambient_dim: int
    components: tuple = ()
    faces: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.ambient_dim, int) or isinstance(self.ambient_dim, bool):
            raise ValidationError("ambient_dim must be an integer")
        object.__setattr__(self, "components", tuple(self.components))
        for comp in self.components:
            if not isinstance(comp, SncComponent):
                raise ValidationError("components must be SncComponent instances")
        object.__setattr__(self, "faces", _normalize_faces(self.faces))

    @property
    def r(self) -> int:
        return len(self.components)

    def face_dim(self, face) -> int:
        return self.ambient_dim - len(face)

    def sorted_faces(self):
        return sorted(self.faces, key=lambda J: (len(J), sorted(J)))

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "components": [
                {"name": c.name, "quasiprojective": c.quasiprojective}
                for c in self.components
            ],
            "faces": [sorted(J) for J in self.sorted_faces()],
        }

    @classmethod
    def from_json(cls, data) -> SncConfiguration:
        if not isinstance(data, dict):
            raise ValidationError("configuration JSON must be an object")
        for key in ("ambient_dim", "components", "faces"):
            if key not in data:
                raise ValidationError(f"configuration JSON lacks {key!r}")
        comps = []
        if not isinstance(data["components"], list):
            raise ValidationError("'components' must be a list")
        for entry in data["components"]:
            if not isinstance(entry, dict) or "name" not in entry:
                raise ValidationError("each component needs a 'name'")
            qp = entry.get("quasiprojective", True)
            if not isinstance(qp, bool):
                raise ValidationError("'quasiprojective' must be a boolean")
            comps.append(SncComponent(entry["name"], qp))
        if not isinstance(data["faces"], list):
            raise ValidationError("'faces' must be a list of index lists")
        return cls(data["ambient_dim"], tuple(comps), _normalize_faces(data["faces"]))


def validate_config(config: SncConfiguration) -> list:
    """Structural violations as {"rule": ..., "face": [...]} dicts; [] if valid."""
    violations = []
    r = config.r
    if config.ambient_dim < 0:
        violations.append({"rule": "negative-ambient-dimension", "face": []})
    names = [c.name for c in config.components]
    if len(set(names)) != len(names):
        violations.append({"rule": "duplicate-component-name", "face": []})
    for face in config.sorted_faces():
        if not face:
            violations.append({"rule": "empty-face", "face": []})
            continue
        if any(i < 1 or i > r for i in face):
            violations.append({"rule": "index-out-of-range", "face": sorted(face)})
            continue
        if config.face_dim(face) < 0:
            violations.append({"rule": "negative-face-dimension", "face": sorted(face)})
        for i in sorted(face):
            sub = face - {i}
            if sub and sub not in config.faces:
                violations.append(
                    {"rule": "not-downward-closed", "face": sorted(sub)}
                )
    for i in range(1, r + 1):
        if frozenset({i}) not in config.faces:
            violations.append({"rule": "missing-singleton", "face": [i]})
    # deterministic report order, duplicates removed
    seen = set()
    unique = []
    for v in sorted(violations, key=lambda v: (v["rule"], v["face"])):
        key = (v["rule"], tuple(v["face"]))
        if key not in seen:
            seen.add(key)
            unique.append(v)
    return unique


def require_valid(config: SncConfiguration):
    violations = validate_config(config)
    if violations:
        raise ConfigurationError(violations)


def _check_multiplicities(config, multiplicities, what="multiplicities"):
    ms = tuple(multiplicities)
    if len(ms) != config.r:
        raise ValidationError(f"{what}: expected {config.r} entries, got {len(ms)}")
    for m in ms:
        if not isinstance(m, int) or isinstance(m, bool):
            raise ValidationError(f"{what} must be integers")
    if ms and not any(ms):
        raise ValidationError(f"{what} must not all vanish")
    return ms


def _check_law(config, law: FormalGroupLaw):
    if law.order < config.ambient_dim:
        raise OrderError(
            f"law order {law.order} is below ambient_dim {config.ambient_dim}"
        )


class FaceClassVector:
    """Assignment of a dimension-truncated ChernPolynomial to some faces."""

    __slots__ = ("config", "_entries")

    def __init__(self, config: SncConfiguration, entries=None):
        self.config = config
        clean = {}
        if entries:
            for face, cp in entries.items():
                face = frozenset(face)
                if face not in config.faces:
                    raise ValidationError(f"{sorted(face)} is not a face")
                if not isinstance(cp, ChernPolynomial):
                    raise ValidationError("entries must be ChernPolynomial values")
                if cp.nvars != config.r:
                    raise ValidationError("entry symbol count must match component count")
                if cp.dim_bound != config.face_dim(face):
                    raise ValidationError(
                        f"entry at {sorted(face)} must be truncated at {config.face_dim(face)}"
                    )
                if not cp.is_zero():
                    clean[face] = cp
        self._entries = clean

    def faces(self):
        return sorted(self._entries, key=lambda J: (len(J), sorted(J)))

    def entry(self, face) -> ChernPolynomial | None:
        return self._entries.get(frozenset(face))

    def items(self):
        return [(J, self._entries[J]) for J in self.faces()]

    def is_zero(self) -> bool:
        return not self._entries

    def __eq__(self, other):
        if not isinstance(other, FaceClassVector):
            return NotImplemented
        return self.config == other.config and self._entries == other._entries

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "entries": [
                {"face": sorted(J), "class": cp.to_json()} for J, cp in self.items()
            ]
        }

    @classmethod
    def from_json(cls, config: SncConfiguration, data, backend) -> FaceClassVector:
        if not isinstance(data, dict) or "entries" not in data:
            raise ValidationError("class vector JSON needs 'entries'")
        if not isinstance(data["entries"], list):
            raise ValidationError("'entries' must be a list")
        entries = {}
        for item in data["entries"]:
            if not isinstance(item, dict) or "face" not in item or "class" not in item:
                raise ValidationError("each entry needs 'face' and 'class'")
            face = frozenset(item["face"])
            cp = ChernPolynomial.from_json(item["class"], backend, nvars=config.r)
            if face in entries:
                cp = entries[face] + cp
            entries[face] = cp
        return cls(config, entries)

    def __repr__(self):
        body = ", ".join(f"{sorted(J)}: {cp}" for J, cp in self.items())
        return f"FaceClassVector({{{body}}})"


# ---------------------------------------------------------------------------
# class construction

def divisor_class(config: SncConfiguration, multiplicities, law: FormalGroupLaw) -> FaceClassVector:
    """Face-by-face class of the divisor sum n_i D_i.

    The part of F^{(n_1..n_r)} supported on a face J, with the variables read
    as the symbols c_i, truncated at the face dimension.  Faces absent from
    the configuration contribute nothing.
    """
    require_valid(config)
    ns = _check_multiplicities(config, multiplicities)
    _check_law(config, law)
    parts = law.decomposed_combination(ns)
    entries = {}
    for J, part in parts.items():
        if J and J in config.faces:
            entries[J] = evaluate_at_chern(part, config.face_dim(J))
    return FaceClassVector(config, entries)


def product_class(config: SncConfiguration, n_mults, p_mults, law: FormalGroupLaw) -> FaceClassVector:
    """Class of the intersection product of two divisor sums.

    Sums, over pairs of supports (J from the first divisor, I from the
    second) whose union K is a face, the evaluation of
    F_J * F_I * prod_{i in J and I} u_i at the dimension of D_K.
    """
    require_valid(config)
    ns = _check_multiplicities(config, n_mults, "first multiplicities")
    ps = _check_multiplicities(config, p_mults, "second multiplicities")
    _check_law(config, law)
    parts_n = law.decomposed_combination(ns)
    parts_p = law.decomposed_combination(ps)
    variables = tuple(f"u{i}" for i in range(1, config.r + 1))
    entries: dict = {}
    for J, part_n in parts_n.items():
        if not J:
            continue
        for I, part_p in parts_p.items():
            if not I:
                continue
            K = J | I
            if K not in config.faces:
                continue
            series = part_n * part_p
            common = J & I
            if common:
                exps = tuple(1 if i in common else 0 for i in range(1, config.r + 1))
                series = series * TruncatedSeries(
                    variables, law.order, law.backend, {exps: 1}
                )
            cp = evaluate_at_chern(series, config.face_dim(K))
            if K in entries:
                cp = entries[K] + cp
            entries[K] = cp
    return FaceClassVector(config, entries)


def apply_divisor_operator(vector: FaceClassVector, multiplicities, law: FormalGroupLaw) -> FaceClassVector:
    """Intersect an existing face-class vector with the divisor sum n_i D_i.

    Each entry at a face I is multiplied by every support part F_J of the
    divisor's law combination (times the symbols shared between J and I) and
    deposited on the union face, truncated to its dimension.
    """
    config = vector.config
    require_valid(config)
    ns = _check_multiplicities(config, multiplicities)
    _check_law(config, law)
    parts_n = law.decomposed_combination(ns)
    r = config.r
    entries: dict = {}
    for I, beta in vector.items():
        for J, part_n in parts_n.items():
            if not J:
                continue
            K = J | I
            if K not in config.faces:
                continue
            bound = config.face_dim(K)
            factor = evaluate_at_chern(part_n, bound)
            # re-truncate the entry to the deeper face's bound
            beta_cut = ChernPolynomial(r, bound, beta.backend, dict(beta._terms))
            term = factor * beta_cut
            for i in (J & I):
                term = term * ChernPolynomial.symbol(i, r, bound, beta.backend)
            if K in entries:
                term = entries[K] + term
            entries[K] = term
    return FaceClassVector(config, entries)


# ---------------------------------------------------------------------------
# restriction and lifting

def restricted_component_indices(config: SncConfiguration, index: int) -> list:
    """Original indices of the components that meet D_index, ascending."""
    if not 1 <= index <= config.r:
        raise ValidationError(f"component index {index} outside 1..{config.r}")
    return [
        j
        for j in range(1, config.r + 1)
        if j != index and frozenset({index, j}) in config.faces
    ]


def restrict_to_component(config: SncConfiguration, index: int, multiplicities):
    """The induced configuration on D_index, with transported multiplicities.

    Components that do not meet D_index disappear; faces J of the result are
    exactly those with J + {index} a face upstairs; the ambient dimension
    drops by one.  Returns (configuration, multiplicities) with entries
    reindexed along the kept components.
    """
    require_valid(config)
    ms = tuple(multiplicities)
    if len(ms) != config.r:
        raise ValidationError(f"expected {config.r} multiplicities, got {len(ms)}")
    kept = restricted_component_indices(config, index)
    position = {orig: new for new, orig in enumerate(kept, start=1)}
    new_faces = set()
    for face in config.faces:
        if index in face:
            continue
        if face | {index} in config.faces and face:
            if all(j in position for j in face):
                new_faces.add(frozenset(position[j] for j in face))
    new_components = tuple(config.components[j - 1] for j in kept)
    new_config = SncConfiguration(config.ambient_dim - 1, new_components, new_faces)
    new_ms = tuple(ms[j - 1] for j in kept)
    return new_config, new_ms


def lift_restricted_class(vector: FaceClassVector, config: SncConfiguration, index: int) -> FaceClassVector:
    """Transport a class vector on the restriction to D_index back upstairs.

    A face J' of the restricted configuration corresponds to the face
    J + {index} of `config`; chern symbols are re-indexed along the kept
    components.  Dimension bounds already agree, since restricting drops the
    ambient dimension and adding the index grows the face by one.
    """
    require_valid(config)
    kept = restricted_component_indices(config, index)
    sub = vector.config
    if len(kept) != sub.r:
        raise ValidationError("vector does not live on the restriction to this component")
    r = config.r
    entries = {}
    for Jp, cp in vector.items():
        face = frozenset(kept[k - 1] for k in Jp) | {index}
        if face not in config.faces:
            raise ValidationError(f"lifted face {sorted(face)} is not a face upstairs")
        terms = {}
        for exps, poly in cp._terms.items():
            lifted = [0] * r
            for pos, e in enumerate(exps, start=1):
                lifted[kept[pos - 1] - 1] = e
            terms[tuple(lifted)] = poly
        entries[face] = ChernPolynomial(r, config.face_dim(face), cp.backend, terms)
    return FaceClassVector(config, entries)


# ---------------------------------------------------------------------------
# normal form and grading

def normal_form(vector: FaceClassVector) -> FaceClassVector:
    """Absorb stray symbols into deeper faces until every entry is clean.

    A term at face J containing c_j with j outside J is rewritten as the
    same term at J + {j} with one power of c_j removed (a section of O(D_j)
    moves the class into D_j); if J + {j} is not a face the term vanishes.
    Each move shrinks the dimension bound, so deep terms die by truncation.
    The rewriting is confluent: absorptions at distinct indices commute and
    a missing face kills the term under every order.
    """
    config = vector.config
    require_valid(config)
    r = config.r
    acc: dict = {}

    def deposit(face, exps, poly):
        stray = [j for j in range(1, r + 1) if exps[j - 1] and j not in face]
        if not stray:
            if sum(exps) <= config.face_dim(face):
                bucket = acc.setdefault(face, {})
                prev = bucket.get(exps)
                total = poly if prev is None else prev + poly
                if total.is_zero():
                    bucket.pop(exps, None)
                else:
                    bucket[exps] = total
            return
        j = stray[0]
        target = face | {j}
        if target not in config.faces:
            return
        reduced = tuple(e - 1 if k == j - 1 else e for k, e in enumerate(exps))
        if sum(reduced) > config.face_dim(target):
            return
        deposit(target, reduced, poly)

    for J, cp in vector.items():
        for exps, poly in cp._terms.items():
            deposit(J, exps, poly)

    entries = {}
    for face, terms in acc.items():
        if terms:
            backend = next(iter(terms.values())).backend
            entries[face] = ChernPolynomial(r, config.face_dim(face), backend, terms)
    return FaceClassVector(config, entries)


def class_dimension(vector: FaceClassVector):
    """Common dimension of all terms: face dim minus c-degree plus coefficient degree.

    Returns ANY_DEGREE for the empty vector and INHOMOGENEOUS when terms
    disagree.
    """
    dims = set()
    for J, cp in vector.items():
        base = vector.config.face_dim(J)
        for exps, poly in cp._terms.items():
            for mono in poly._terms:
                dims.add(base - sum(exps) + _mono_degree(mono))
    if not dims:
        return ANY_DEGREE
    if len(dims) == 1:
        return dims.pop()
    return INHOMOGENEOUS


# ---------------------------------------------------------------------------
# the observable identities

def check_properties(config: SncConfiguration, n_mults, p_mults, law: FormalGroupLaw) -> dict:
    """Evaluate the three structural identities for a pair of divisors.

    symmetry     product_class does not depend on the argument order
    restriction  when the first divisor is a single reduced component absent
                 from the second, the product is the second's divisor class
                 on that component, lifted back; None when not applicable
    operator     normal form of the product equals the divisor operator
                 applied to the second divisor's class
    """
    require_valid(config)
    ns = _check_multiplicities(config, n_mults, "first multiplicities")
    ps = _check_multiplicities(config, p_mults, "second multiplicities")
    _check_law(config, law)

    product = product_class(config, ns, ps, law)
    symmetric = product == product_class(config, ps, ns, law)

    operator = normal_form(product) == normal_form(
        apply_divisor_operator(divisor_class(config, ps, law), ns, law)
    )

    restriction = None
    support = [i for i, n in enumerate(ns, start=1) if n]
    if len(support) == 1 and ns[support[0] - 1] == 1 and ps[support[0] - 1] == 0:
        i = support[0]
        sub_config, sub_ps = restrict_to_component(config, i, ps)
        if sub_config.r and any(sub_ps):
            lifted = lift_restricted_class(
                divisor_class(sub_config, sub_ps, law), config, i
            )
        else:
            lifted = FaceClassVector(config, {})
        restriction = product == lifted

    return {"symmetry": symmetric, "restriction": restriction, "operator": operator}
