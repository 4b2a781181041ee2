"""Convergent weight sequences for weighted shifts.

A weighted shift acts as ``S e_i = alpha_i e_{i+1}``; its adjoint as
``S* e_i = alpha_{i-1} e_{i-1}``.  Weights are stored as nonnegative reals:
the shift with weights ``alpha`` is unitarily equivalent to the shift with
weights ``|alpha|``, so nothing norm-related is lost.

Two kinds are supported:

* ``EventuallyConstant``: an explicit finite prefix followed by the constant
  tail ``lam``.
* ``Parametric``: a named closed-form family with a declared limit and a
  declared monotonicity of its tail from ``tail_start`` on.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from pathlib import Path
from typing import Callable, Iterable

EVENTUALLY_CONSTANT = "EventuallyConstant"
PARAMETRIC = "Parametric"

INCREASING = "increasing"
DECREASING = "decreasing"


def _bergman(i: int, scale: float = 1.0) -> float:
    return scale * math.sqrt((i + 1) / (i + 2))


def _dirichlet(i: int, scale: float = 1.0) -> float:
    return scale * math.sqrt((i + 2) / (i + 1))


# name -> (alpha(i, **params), limit(**params), tail monotonicity)
FAMILIES: dict[str, tuple[Callable[..., float], Callable[..., float], str]] = {
    "bergman": (_bergman, lambda scale=1.0: scale, INCREASING),
    "dirichlet": (_dirichlet, lambda scale=1.0: scale, DECREASING),
}


class WeightSpecError(ValueError):
    """Raised for a malformed weight specification."""

    def __init__(self, message: str, token: str | None = None):
        super().__init__(message)
        self.token = token


@dataclass(frozen=True)
class Regularity:
    regular: bool
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.regular


@dataclass(frozen=True)
class WeightSequence:
    kind: str
    tail: float
    prefix: tuple[float, ...] = ()
    family_name: str | None = None
    parameters: tuple[tuple[str, float], ...] = ()
    tail_monotone: str | None = None
    tail_start: int = 0
    _fn: Callable[..., float] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in (EVENTUALLY_CONSTANT, PARAMETRIC):
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if not (math.isfinite(self.tail) and self.tail >= 0):
            raise ValueError(f"tail must be a finite nonnegative real, got {self.tail!r}")
        for a in self.prefix:
            if not (math.isfinite(a) and a >= 0):
                raise ValueError(f"weights must be finite nonnegative reals, got {a!r}")
        if self.kind == PARAMETRIC and self._fn is None:
            if self.family_name not in FAMILIES:
                raise ValueError(f"unknown weight family {self.family_name!r}")
            object.__setattr__(self, "_fn", FAMILIES[self.family_name][0])

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, lam: float) -> "WeightSequence":
        return cls(EVENTUALLY_CONSTANT, tail=float(lam))

    @classmethod
    def eventually_constant(cls, prefix, tail: float) -> "WeightSequence":
        return cls(EVENTUALLY_CONSTANT, tail=float(tail), prefix=tuple(float(a) for a in prefix))

    @classmethod
    def family(cls, name: str, **params: float) -> "WeightSequence":
        if name not in FAMILIES:
            raise ValueError(f"unknown weight family {name!r}")
        _, limit, mono = FAMILIES[name]
        return cls(
            PARAMETRIC,
            tail=float(limit(**params)),
            family_name=name,
            parameters=tuple(sorted((k, float(v)) for k, v in params.items())),
            tail_monotone=mono,
        )

    @classmethod
    def parametric(cls, fn: Callable[[int], float], limit: float,
                   tail_monotone: str | None, tail_start: int = 0,
                   name: str = "custom") -> "WeightSequence":
        """Wrap a closed-form ``fn(i)`` with a declared limit.

        ``tail_monotone`` declares that ``fn`` is monotone (``"increasing"``
        or ``"decreasing"``) for ``i >= tail_start``.  Leaving it ``None``
        makes the regularity decision uncertifiable; :func:`is_regular`
        rejects such sequences.
        """
        return cls(PARAMETRIC, tail=float(limit), family_name=name,
                   tail_monotone=tail_monotone, tail_start=int(tail_start),
                   _fn=lambda i, **_: fn(i))

    # -- access -------------------------------------------------------------

    @property
    def lam(self) -> float:
        """The limit of the sequence."""
        return self.tail

    @property
    def head_length(self) -> int:
        """Index from which the sequence is constant or monotone."""
        if self.kind == EVENTUALLY_CONSTANT:
            return len(self.prefix)
        return self.tail_start

    def __call__(self, i: int) -> float:
        if i < 0:
            return 0.0
        if self.kind == EVENTUALLY_CONSTANT:
            return self.prefix[i] if i < len(self.prefix) else self.tail
        return float(self._fn(i, **dict(self.parameters)))

    def scaled(self, c: float) -> "WeightSequence":
        if c <= 0:
            raise ValueError("scale must be positive")
        if self.kind == EVENTUALLY_CONSTANT:
            return WeightSequence.eventually_constant([c * a for a in self.prefix], c * self.tail)
        fn, params = self._fn, dict(self.parameters)
        return WeightSequence(PARAMETRIC, tail=c * self.tail, family_name=self.family_name,
                              parameters=self.parameters, tail_monotone=self.tail_monotone,
                              tail_start=self.tail_start,
                              _fn=lambda i, **_: c * fn(i, **params))

    def describe(self) -> str:
        if self.kind == EVENTUALLY_CONSTANT:
            if not self.prefix:
                return f"const:{self.tail!r}"
            return "prefix:" + ",".join(repr(a) for a in self.prefix) + f";tail:{self.tail!r}"
        if self.parameters:
            args = ",".join(f"{k}={v!r}" for k, v in self.parameters)
            return f"{self.family_name}({args})"
        return str(self.family_name)


@dataclass(frozen=True)
class ExponentTuple:
    """Signed exponents ``(l_1, ..., l_n)``; negative entries are adjoint powers."""

    entries: tuple[int, ...]

    def __post_init__(self):
        ents = tuple(int(x) for x in self.entries)
        if not ents:
            raise ValueError("exponent tuple must have at least one entry")
        object.__setattr__(self, "entries", ents)

    @classmethod
    def of(cls, entries: Iterable[int] | "ExponentTuple") -> "ExponentTuple":
        if isinstance(entries, ExponentTuple):
            return entries
        return cls(tuple(entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def signed_sum(self) -> int:
        """Degree shift ``S_l`` of the tensor-product operator."""
        return sum(self.entries)

    @property
    def abs_sum(self) -> int:
        return sum(abs(x) for x in self.entries)

    @property
    def h(self) -> int:
        return max(abs(x) for x in self.entries)

    @cached_property
    def multiplicities(self) -> tuple[int, ...]:
        """Multiplicities of the distinct values, in increasing order of value."""
        vals = sorted(set(self.entries))
        return tuple(self.entries.count(v) for v in vals)

    @cached_property
    def stabilizer_order(self) -> int:
        """``n_1! ... n_k!``: how many permutations fix the tuple."""
        out = 1
        for m in self.multiplicities:
            out *= math.factorial(m)
        return out

    @cached_property
    def M(self) -> int:
        """Number of distinct rearrangements, ``n! / (n_1! ... n_k!)``."""
        return math.factorial(self.n) // self.stabilizer_order

    @property
    def all_equal(self) -> bool:
        return len(set(self.entries)) == 1

    @cached_property
    def distinct_arrangements(self) -> tuple[tuple[int, ...], ...]:
        """The ``M`` distinct tuples ``l_pi``, sorted."""
        return tuple(sorted(set(permutations(self.entries))))

    def negated(self) -> "ExponentTuple":
        return ExponentTuple(tuple(-x for x in self.entries))

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.entries)


def parse_exponents(text: str) -> ExponentTuple:
    tokens = [t.strip() for t in text.split(",")]
    vals = []
    for t in tokens:
        try:
            vals.append(int(t))
        except ValueError:
            raise WeightSpecError(f"exponent is not an integer: {t!r}", t) from None
    return ExponentTuple(tuple(vals))


# -- window quantities ------------------------------------------------------

def beta(w: WeightSequence, i: int, t: int) -> float:
    """Product of the weights crossed by ``S_{alpha,t}`` starting at ``e_i``.

    ``t > 0`` uses ``alpha_i ... alpha_{i+t-1}``; ``t < 0`` uses
    ``alpha_{i-1} ... alpha_{i+t}``.  Indices below zero contribute 0.
    """
    if t == 0:
        return 1.0
    lo, hi = (i, i + t) if t > 0 else (i + t, i)
    if lo < 0:
        return 0.0
    out = 1.0
    for j in range(lo, hi):
        out *= w(j)
    return out


def gamma(w: WeightSequence, i: int, t: int) -> float:
    """Smallest weight over the same window as :func:`beta`."""
    if t == 0:
        return 1.0
    lo, hi = (i, i + t) if t > 0 else (i + t, i)
    if lo < 0:
        return 0.0
    return min(w(j) for j in range(lo, hi))


def is_regular(w: WeightSequence) -> Regularity:
    """Decide whether ``lim alpha_i >= alpha_m`` for every ``m``.

    Returns a falsy :class:`Regularity` carrying the smallest violating
    index when the condition fails.
    """
    lam = w.lam
    if w.kind == PARAMETRIC and w.tail_monotone not in (INCREASING, DECREASING):
        raise ValueError(
            f"parametric weight {w.family_name!r} has no tail monotonicity declaration; "
            "regularity cannot be certified")
    for m in range(w.head_length):
        if w(m) > lam:
            return Regularity(False, m)
    if w.kind == PARAMETRIC and w.tail_monotone == DECREASING:
        # a decreasing tail sits at or above its limit; strictly above at its start
        m = w.tail_start
        if w(m) > lam:
            return Regularity(False, m)
    return Regularity(True)


def power_norm(w: WeightSequence, l: int) -> float:
    """``||S^l||`` (equal to ``||S*^l||``) as ``sup_i beta(w, i, |l|)``.

    Windows starting past ``head_length`` are either constant or monotone
    in the start index, so the supremum is the max of the finitely many
    head windows and the limit value ``lam**|l|``.
    """
    t = abs(l)
    if t == 0:
        return 1.0
    best = w.lam ** t
    for i in range(w.head_length + 1):
        best = max(best, beta(w, i, t))
    return best


# -- weight spec grammar ----------------------------------------------------

def _real(token: str) -> float:
    try:
        x = float(token)
    except ValueError:
        raise WeightSpecError(f"not a real number: {token!r}", token) from None
    if not math.isfinite(x) or x < 0:
        raise WeightSpecError(f"weight must be finite and nonnegative: {token!r}", token)
    return x


def parse_weightspec(spec: str) -> WeightSequence:
    """Parse ``const:R | prefix:R,...;tail:R | bergman | file:PATH``.

    The ``dirichlet`` family name is accepted as well.
    """
    s = spec.strip()
    if s.startswith("const:"):
        return WeightSequence.constant(_real(s[len("const:"):]))
    if s.startswith("prefix:"):
        body, sep, tail = s[len("prefix:"):].partition(";tail:")
        if not sep:
            raise WeightSpecError(f"prefix spec needs ';tail:' in {spec!r}", spec)
        if not body:
            raise WeightSpecError("empty prefix", spec)
        return WeightSequence.eventually_constant([_real(t) for t in body.split(",")], _real(tail))
    if s in FAMILIES:
        return WeightSequence.family(s)
    if s.startswith("file:"):
        return load_weight_file(s[len("file:"):])
    head = s.split(":", 1)[0] if ":" in s else s
    raise WeightSpecError(f"unrecognised weight spec token {head!r}", head)


def load_weight_file(path: str | Path) -> WeightSequence:
    try:
        doc = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise WeightSpecError(f"weight file not found: {path}", str(path)) from None
    except json.JSONDecodeError as exc:
        raise WeightSpecError(f"weight file is not valid JSON: {exc}", str(path)) from None
    if "tail" not in doc:
        raise WeightSpecError("weight file lacks 'tail'", "tail")
    prefix = doc.get("prefix", [])
    return WeightSequence.eventually_constant([_real(str(a)) for a in prefix], _real(str(doc["tail"])))


def dump_weight_file(w: WeightSequence, path: str | Path) -> None:
    if w.kind != EVENTUALLY_CONSTANT:
        raise ValueError("only eventually-constant weights have a file form")
    Path(path).write_text(json.dumps({"prefix": list(w.prefix), "tail": w.tail}, indent=2) + "\n")
