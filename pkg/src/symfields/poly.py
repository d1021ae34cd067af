"""Exact sparse multivariate polynomial arithmetic.

A polynomial in n variables is a map from exponent tuples to float
coefficients:

    x^2*y + 3  ->  {(2, 1): 1.0, (0, 0): 3.0}

Zero coefficients are never stored; coefficients whose magnitude falls below
``PRUNE_TOL`` after arithmetic are dropped so float cancellation cannot blow
up the term count.  Terms are kept in graded-lexicographic order wherever
ordering matters (evaluation, serialization), which makes every operation
deterministic.

Monomials are plain exponent tuples (one non-negative int per variable).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

# Monomial: exponent per variable, e.g. (2, 1) is x1^2*x2 in two variables.
Monomial = tuple[int, ...]

# Coefficients below this magnitude are dropped after arithmetic.
PRUNE_TOL = 1e-14

# Products creating monomials above this total degree fail loudly unless the
# caller raises the cap explicitly (degree_cap=None disables the check).
DEFAULT_DEGREE_CAP = 8


class DimensionMismatchError(ValueError):
    """Operands live in spaces of different dimension."""


class DegreeCapError(ValueError):
    """An operation would create a monomial above the configured degree cap."""


def _grlex_key(mono: Monomial) -> tuple:
    return (sum(mono), mono)


def monomials_up_to_degree(dimension: int, degree: int) -> list[Monomial]:
    """All exponent tuples with total degree <= degree, in graded-lex order."""
    if dimension < 1 or degree < 0:
        raise ValueError("need dimension >= 1 and degree >= 0")

    def rec(dim: int, budget: int) -> Iterator[Monomial]:
        if dim == 0:
            yield ()
            return
        for e in range(budget + 1):
            for rest in rec(dim - 1, budget - e):
                yield (e,) + rest

    return sorted(rec(dimension, degree), key=_grlex_key)


class Polynomial:
    """Immutable sparse polynomial with float coefficients."""

    __slots__ = ("dimension", "terms")

    def __init__(self, dimension: int, terms: Mapping[Monomial, float] | None = None):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        clean: dict[Monomial, float] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != dimension:
                raise DimensionMismatchError(
                    f"monomial {mono} does not match dimension {dimension}"
                )
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in monomial {mono}")
            c = float(coeff)
            if not np.isfinite(c):
                raise ValueError(f"non-finite coefficient {c} for monomial {mono}")
            if c != 0.0:
                clean[mono] = c
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(dimension: int) -> "Polynomial":
        return Polynomial(dimension, {})

    @staticmethod
    def constant(dimension: int, value: float) -> "Polynomial":
        return Polynomial(dimension, {(0,) * dimension: value})

    @staticmethod
    def variable(dimension: int, axis: int) -> "Polynomial":
        if not 0 <= axis < dimension:
            raise ValueError(f"axis {axis} out of range for dimension {dimension}")
        exps = [0] * dimension
        exps[axis] = 1
        return Polynomial(dimension, {tuple(exps): 1.0})

    @staticmethod
    def monomial(exponents: Sequence[int], coeff: float = 1.0) -> "Polynomial":
        return Polynomial(len(exponents), {tuple(exponents): coeff})

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def sorted_terms(self) -> list[tuple[Monomial, float]]:
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.dimension == other.dimension
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.dimension, tuple(self.sorted_terms())))

    def __repr__(self) -> str:
        return f"Polynomial({self.dimension}, {to_text(self)!r})"

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return add(self, other)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return add(self, other.scale(-1.0))

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return mul(self, other)
        return self.scale(float(other))

    def __rmul__(self, other):
        return self.scale(float(other))

    def __neg__(self) -> "Polynomial":
        return self.scale(-1.0)

    def scale(self, factor: float) -> "Polynomial":
        factor = float(factor)
        if factor == 0.0:
            return Polynomial.zero(self.dimension)
        return Polynomial(
            self.dimension,
            _prune({m: c * factor for m, c in self.terms.items()}),
        )


def _prune(terms: dict[Monomial, float]) -> dict[Monomial, float]:
    return {m: c for m, c in terms.items() if abs(c) >= PRUNE_TOL}


def add(a: Polynomial, b: Polynomial) -> Polynomial:
    """Termwise sum; cancelled terms are dropped."""
    if a.dimension != b.dimension:
        raise DimensionMismatchError(
            f"cannot add dimension {a.dimension} and {b.dimension}"
        )
    terms = dict(a.terms)
    for mono, coeff in b.terms.items():
        terms[mono] = terms.get(mono, 0.0) + coeff
    return Polynomial(a.dimension, _prune(terms))


def mul(
    a: Polynomial,
    b: Polynomial,
    degree_cap: int | None = DEFAULT_DEGREE_CAP,
) -> Polynomial:
    """Distributive product.

    Raises DegreeCapError if a product monomial exceeds degree_cap; pass
    degree_cap=None for internal computations that legitimately need high
    degree (e.g. Gram integrands).
    """
    if a.dimension != b.dimension:
        raise DimensionMismatchError(
            f"cannot multiply dimension {a.dimension} and {b.dimension}"
        )
    terms: dict[Monomial, float] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            mono = tuple(ea + eb for ea, eb in zip(ma, mb))
            if degree_cap is not None and sum(mono) > degree_cap:
                raise DegreeCapError(
                    f"product monomial {mono} exceeds degree cap {degree_cap}"
                )
            terms[mono] = terms.get(mono, 0.0) + ca * cb
    return Polynomial(a.dimension, _prune(terms))


def partial(p: Polynomial, axis: int) -> Polynomial:
    """Exact partial derivative with respect to variable `axis`."""
    if not 0 <= axis < p.dimension:
        raise ValueError(f"axis {axis} out of range for dimension {p.dimension}")
    terms: dict[Monomial, float] = {}
    for mono, coeff in p.terms.items():
        e = mono[axis]
        if e == 0:
            continue
        lowered = list(mono)
        lowered[axis] = e - 1
        key = tuple(lowered)
        terms[key] = terms.get(key, 0.0) + coeff * e
    return Polynomial(p.dimension, _prune(terms))


def evaluate(p: Polynomial, point: Sequence[float]) -> float:
    """Value at a single point; terms are accumulated in graded-lex order."""
    point = np.asarray(point, dtype=float)
    if point.shape != (p.dimension,):
        raise DimensionMismatchError(
            f"point of shape {point.shape} does not match dimension {p.dimension}"
        )
    total = 0.0
    for mono, coeff in p.sorted_terms():
        term = coeff
        for x, e in zip(point, mono):
            if e:
                term *= x**e
        total += term
    return total


def evaluate_many(p: Polynomial, points: np.ndarray) -> np.ndarray:
    """Values at an (N, n) array of points; same term order as `evaluate`."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != p.dimension:
        raise DimensionMismatchError(
            f"points of shape {points.shape} do not match dimension {p.dimension}"
        )
    out = np.zeros(points.shape[0])
    for mono, coeff in p.sorted_terms():
        term = np.full(points.shape[0], coeff)
        for axis, e in enumerate(mono):
            if e:
                term *= points[:, axis] ** e
        out += term
    return out


@dataclass(frozen=True)
class Box:
    """Axis-aligned box [lower_i, upper_i]^n, the integration region."""

    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __init__(self, lower: Sequence[float], upper: Sequence[float]):
        lower = tuple(float(v) for v in lower)
        upper = tuple(float(v) for v in upper)
        if len(lower) != len(upper):
            raise ValueError("lower and upper must have the same length")
        if not lower:
            raise ValueError("box must have dimension >= 1")
        for lo, hi in zip(lower, upper):
            if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
                raise ValueError(f"invalid box interval [{lo}, {hi}]")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dimension(self) -> int:
        return len(self.lower)

    @property
    def volume(self) -> float:
        return float(np.prod([hi - lo for lo, hi in zip(self.lower, self.upper)]))

    @staticmethod
    def cube(dimension: int, lo: float, hi: float) -> "Box":
        return Box([lo] * dimension, [hi] * dimension)

    def sample(self, count: int, rng: np.random.Generator) -> np.ndarray:
        lo = np.asarray(self.lower)
        hi = np.asarray(self.upper)
        return rng.uniform(lo, hi, size=(count, self.dimension))

    def contains(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        lo = np.asarray(self.lower)
        hi = np.asarray(self.upper)
        return np.all((points >= lo) & (points <= hi), axis=1)


def integrate_box(p: Polynomial, domain: Box) -> float:
    """Exact integral over the box via closed-form monomial antiderivatives.

    Each monomial contributes prod_i (u_i^(e_i+1) - l_i^(e_i+1)) / (e_i+1).
    """
    if domain.dimension != p.dimension:
        raise DimensionMismatchError(
            f"box dimension {domain.dimension} does not match polynomial "
            f"dimension {p.dimension}"
        )
    total = 0.0
    for mono, coeff in p.sorted_terms():
        term = coeff
        for lo, hi, e in zip(domain.lower, domain.upper, mono):
            term *= (hi ** (e + 1) - lo ** (e + 1)) / (e + 1)
        total += term
    return total


def inner_product(a: Polynomial, b: Polynomial, domain: Box) -> float:
    """L2 inner product integral_box a*b, exact (uncapped internal product)."""
    return integrate_box(mul(a, b, degree_cap=None), domain)


# -- text format -------------------------------------------------------------
#
# Serialized form: graded-lex ordered sum of `coeff*x1^a*x2^b` terms, e.g.
#     2.0*x1^4 - 2.0*x1^2*x2^2 + 1.0*x2^4
# Coefficients use repr(float), which round-trips every finite double.


def to_text(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    parts: list[str] = []
    for i, (mono, coeff) in enumerate(p.sorted_terms()):
        factors = []
        for axis, e in enumerate(mono):
            if e == 1:
                factors.append(f"x{axis + 1}")
            elif e > 1:
                factors.append(f"x{axis + 1}^{e}")
        if i == 0:
            lead = repr(coeff)
        elif coeff < 0:
            lead = f"- {repr(-coeff)}"
        else:
            lead = f"+ {repr(coeff)}"
        parts.append("*".join([lead] + factors))
    return " ".join(parts)


def from_text(text: str, dimension: int) -> Polynomial:
    """Parse the `to_text` format (plus bare variables like `x2`)."""
    src = text.strip()
    if src in ("", "0", "-0", "0.0", "-0.0"):
        return Polynomial.zero(dimension)
    # Normalize into signed chunks: flip "a - b" into "a + -b", then split.
    if src.startswith("- "):
        src = "-" + src[2:]
    normalized = src.replace(" - ", " + -")
    chunks = [c.strip() for c in normalized.split(" + ") if c.strip()]
    terms: dict[Monomial, float] = {}
    for chunk in chunks:
        coeff = 1.0
        exps = [0] * dimension
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in term {chunk!r}")
            if factor[0] == "x" or factor.startswith("-x"):
                neg = factor.startswith("-")
                body = factor[1 + neg :]
                if "^" in body:
                    var_s, exp_s = body.split("^", 1)
                    exp = int(exp_s)
                else:
                    var_s, exp = body, 1
                axis = int(var_s) - 1
                if not 0 <= axis < dimension:
                    raise ValueError(
                        f"variable x{var_s} out of range for dimension {dimension}"
                    )
                if exp < 0:
                    raise ValueError(f"negative exponent in {factor!r}")
                exps[axis] += exp
                if neg:
                    coeff = -coeff
            else:
                coeff *= float(factor)
        key = tuple(exps)
        terms[key] = terms.get(key, 0.0) + coeff
    return Polynomial(dimension, {m: c for m, c in terms.items() if c != 0.0})
