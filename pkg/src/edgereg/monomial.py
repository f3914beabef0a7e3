"""Exact monomials and monomial ideals over a fixed, named set of variables.

Everything here is immutable. A :class:`MonomialIdeal` always stores its
minimal generating set in canonical order (reverse lexicographic on the
exponent vectors, so ``x1*x2^3`` sorts before ``x2*x3``); two ideals are equal
exactly when their representations are equal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_EXPONENT = 2**31 - 1


class ContextMismatchError(ValueError):
    """Raised when two objects living over different variable sets are combined."""


class IdealFormatError(ValueError):
    pass


@dataclass(frozen=True)
class VariableContext:
    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("a variable context needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not _NAME_RE.fullmatch(name):
                raise ValueError(f"invalid variable name {name!r}")

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def monomial(self, powers: dict[str, int] | None = None, **kw: int) -> Monomial:
        """Build a monomial from ``{name: exponent}``; ``ctx.monomial(x1=1, x2=3)`` also works."""
        exps = [0] * len(self.names)
        for name, e in {**(powers or {}), **kw}.items():
            exps[self.index(name)] += e
        return Monomial(self, tuple(exps))

    def unit(self) -> Monomial:
        return Monomial(self, (0,) * len(self.names))

    def variable(self, name: str) -> Monomial:
        return self.monomial({name: 1})

    def extend(self, extra: Iterable[str]) -> VariableContext:
        return VariableContext(self.names + tuple(n for n in extra if n not in self.names))


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _check_exponent(e: int) -> int:
    if e < 0:
        raise ValueError(f"negative exponent {e}")
    if e > MAX_EXPONENT:
        raise OverflowError(f"exponent {e} exceeds {MAX_EXPONENT}")
    return e


def _same_context(a, b) -> None:
    if a.context != b.context:
        raise ContextMismatchError(f"{a.context.names} vs {b.context.names}")


@dataclass(frozen=True)
class Monomial:
    context: VariableContext
    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if len(exps) != len(self.context):
            raise ValueError(
                f"{len(exps)} exponents for a context of {len(self.context)} variables"
            )
        for e in exps:
            _check_exponent(e)
        object.__setattr__(self, "exponents", exps)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def is_unit(self) -> bool:
        return not any(self.exponents)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.exponents) if e)

    def divides(self, other: Monomial) -> bool:
        _same_context(self, other)
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def lcm(self, other: Monomial) -> Monomial:
        _same_context(self, other)
        return Monomial(self.context, tuple(map(max, self.exponents, other.exponents)))

    def gcd(self, other: Monomial) -> Monomial:
        _same_context(self, other)
        return Monomial(self.context, tuple(map(min, self.exponents, other.exponents)))

    def __mul__(self, other: Monomial) -> Monomial:
        _same_context(self, other)
        return Monomial(
            self.context,
            tuple(_check_exponent(a + b) for a, b in zip(self.exponents, other.exponents)),
        )

    def __pow__(self, t: int) -> Monomial:
        if t < 0:
            raise ValueError("negative power of a monomial")
        return Monomial(self.context, tuple(_check_exponent(e * t) for e in self.exponents))

    def truncated_div(self, other: Monomial) -> Monomial:
        """``self / gcd(self, other)``, i.e. componentwise ``max(a - b, 0)``."""
        _same_context(self, other)
        return Monomial(
            self.context, tuple(max(a - b, 0) for a, b in zip(self.exponents, other.exponents))
        )

    def to_text(self) -> str:
        if self.is_unit:
            return "1"
        parts = []
        for name, e in zip(self.context.names, self.exponents):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Monomial({self.to_text()})"


def divides(a: Monomial, b: Monomial) -> bool:
    return a.divides(b)


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return a.lcm(b)


def _minimal_exponents(vectors: Iterable[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    # Sorting by total degree first means a divisor is always seen before its multiples.
    kept: list[tuple[int, ...]] = []
    for v in sorted(set(vectors), key=lambda v: (sum(v), v)):
        if not any(all(a <= b for a, b in zip(k, v)) for k in kept):
            kept.append(v)
    return tuple(sorted(kept, reverse=True))


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generators.

    Construct with :func:`minimalize` (or :meth:`from_text`); the raw
    constructor assumes the generators are already minimal and canonical and
    checks that.
    """

    context: VariableContext
    generators: tuple[Monomial, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if g.context != self.context:
                raise ContextMismatchError("generator from a different context")
        if _minimal_exponents(g.exponents for g in gens) != tuple(g.exponents for g in gens):
            raise ValueError("generators are not a canonical minimal generating set")

    # -- basic properties ---------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_proper(self) -> bool:
        """False for the unit ideal, which colon operations can produce."""
        return not any(g.is_unit for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    @property
    def exponent_matrix(self) -> list[tuple[int, ...]]:
        return [g.exponents for g in self.generators]

    def support(self) -> frozenset[int]:
        return frozenset().union(*(g.support for g in self.generators))

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.generators)

    def issubset(self, other: MonomialIdeal) -> bool:
        _same_context(self, other)
        return all(other.contains(g) for g in self.generators)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        return ideal_sum(self, other)

    def __mul__(self, other: MonomialIdeal) -> MonomialIdeal:
        return product(self, other)

    def __pow__(self, t: int) -> MonomialIdeal:
        return power(self, t)

    def __and__(self, other: MonomialIdeal) -> MonomialIdeal:
        return intersect(self, other)

    def colon(self, m: Monomial) -> MonomialIdeal:
        return colon_by_monomial(self, m)

    def in_context(self, context: VariableContext) -> MonomialIdeal:
        """Re-express the ideal over a context containing all of its support variables."""
        gens = []
        for g in self.generators:
            exps = [0] * len(context)
            for name, e in zip(self.context.names, g.exponents):
                if e:
                    exps[context.index(name)] = e
            gens.append(Monomial(context, tuple(exps)))
        return minimalize(gens, context)

    # -- text format ----------------------------------------------------------
    def to_text(self) -> str:
        lines = ["ring " + " ".join(self.context.names)]
        lines += [g.to_text() for g in self.generators]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> MonomialIdeal:
        return parse_ideal(text)

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(g.to_text() for g in self.generators) + ")"

    def __repr__(self) -> str:
        return f"MonomialIdeal{self}"


def minimalize(gens: Iterable[Monomial], context: VariableContext | None = None) -> MonomialIdeal:
    """Keep the divisibility-minimal elements of ``gens``, deduplicated and ordered."""
    gens = list(gens)
    if context is None:
        if not gens:
            raise ValueError("context required to build the zero ideal")
        context = gens[0].context
    for g in gens:
        if g.context != context:
            raise ContextMismatchError("generators from different contexts")
    vectors = _minimal_exponents(g.exponents for g in gens)
    return MonomialIdeal(context, tuple(Monomial(context, v) for v in vectors))


def zero_ideal(context: VariableContext) -> MonomialIdeal:
    return MonomialIdeal(context, ())


def principal(m: Monomial) -> MonomialIdeal:
    return MonomialIdeal(m.context, (m,))


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_context(I, J)
    return minimalize(I.generators + J.generators, I.context)


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_context(I, J)
    return minimalize((a * b for a in I.generators for b in J.generators), I.context)


def power(I: MonomialIdeal, t: int) -> MonomialIdeal:
    if t < 1:
        raise ValueError("power requires t >= 1")
    result = I
    for _ in range(t - 1):
        result = product(result, I)
    return result


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_context(I, J)
    return minimalize((a.lcm(b) for a in I.generators for b in J.generators), I.context)


def colon_by_monomial(I: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    """``(I : m)``; the result is the unit ideal (``is_proper`` False) when m lies in I."""
    if m.context != I.context:
        raise ContextMismatchError("colon by a monomial from a different context")
    return minimalize((g.truncated_div(m) for g in I.generators), I.context)


def support(I: MonomialIdeal) -> frozenset[int]:
    return I.support()


def polarize(I: MonomialIdeal) -> MonomialIdeal:
    """Squarefree polarization; ``x_i^a`` becomes ``x_i_1 * ... * x_i_a``."""
    if I.is_zero:
        raise ValueError("cannot polarize the zero ideal")
    top = [max(col) for col in zip(*I.exponent_matrix)]
    names = [f"{name}_{j}" for name, a in zip(I.context.names, top) for j in range(1, a + 1)]
    if not names:
        raise ValueError("cannot polarize the unit ideal")
    ctx = VariableContext(tuple(names))
    gens = []
    for g in I.generators:
        powers = {
            f"{name}_{j}": 1
            for name, e in zip(I.context.names, g.exponents)
            for j in range(1, e + 1)
        }
        gens.append(ctx.monomial(powers))
    return minimalize(gens, ctx)


# -- text format ----------------------------------------------------------------

_FACTOR_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?")


def parse_monomial(text: str, context: VariableContext) -> Monomial:
    text = "".join(text.split())
    if text == "1":
        return context.unit()
    exps = [0] * len(context)
    for factor in text.split("*"):
        match = _FACTOR_RE.fullmatch(factor)
        if not match:
            raise IdealFormatError(f"cannot parse factor {factor!r} in {text!r}")
        name, e = match.group(1), match.group(2)
        try:
            idx = context.index(name)
        except KeyError as exc:
            raise IdealFormatError(str(exc)) from None
        exps[idx] += int(e) if e is not None else 1
    return Monomial(context, tuple(exps))


def parse_ideal(text: str) -> MonomialIdeal:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise IdealFormatError("empty ideal text")
    head = lines[0].split()
    if head[0] != "ring" or len(head) < 2:
        raise IdealFormatError("first line must be 'ring x1 x2 ... xn'")
    ctx = VariableContext(tuple(head[1:]))
    return minimalize((parse_monomial(ln, ctx) for ln in lines[1:]), ctx)


def ideal_from_exponents(
    names: Sequence[str], vectors: Iterable[Sequence[int]]
) -> MonomialIdeal:
    ctx = VariableContext(tuple(names))
    return minimalize((Monomial(ctx, tuple(v)) for v in vectors), ctx)
