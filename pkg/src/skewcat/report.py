"""Check reports, error types and the object-tuple sources shared by every checker."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence


class StructuralError(ValueError):
    """Data is malformed (a table entry or component has the wrong type).

    Distinct from a law violation: a law can only be checked on well-typed data.
    """

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = witness


class PreconditionError(ValueError):
    """An operation was called on data that does not meet its hypotheses."""

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = witness


@dataclass
class Violation:
    law: str
    witness: tuple
    detail: str = ""


@dataclass
class CheckReport:
    """Per-law instance counts plus every failing instance (nothing short-circuits)."""

    title: str
    checked: dict[str, int] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def tally(self, law: str, n: int = 1) -> None:
        self.checked[law] = self.checked.get(law, 0) + n

    def fail(self, law: str, witness: tuple, detail: str = "") -> None:
        self.checked.setdefault(law, 0)
        self.violations.append(Violation(law, tuple(witness), detail))

    def expect(self, law: str, lhs: Any, rhs: Any, witness: tuple, detail: str = "") -> bool:
        self.tally(law)
        if lhs == rhs:
            return True
        self.fail(law, witness, detail)
        return False

    def failures(self, law: str) -> list[Violation]:
        return [v for v in self.violations if v.law == law]

    def passed(self, law: str) -> bool:
        return law in self.checked and not self.failures(law)

    def merge(self, other: "CheckReport", prefix: str = "") -> "CheckReport":
        for law, n in other.checked.items():
            self.tally(prefix + law, n)
        for v in other.violations:
            self.violations.append(Violation(prefix + v.law, v.witness, v.detail))
        for k, v in other.info.items():
            self.info[prefix + k] = v
        return self

    def summary(self) -> dict[str, dict[str, int]]:
        counts: dict[str, dict[str, int]] = {}
        for law, n in self.checked.items():
            counts[law] = {"checked": n, "violations": 0}
        for v in self.violations:
            counts[v.law]["violations"] += 1
        return counts

    def __str__(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.ok else 'FAIL'}"]
        for law, c in self.summary().items():
            mark = "ok" if c["violations"] == 0 else "FAIL"
            lines.append(f"  {law}: {c['checked']} checked, {c['violations']} violations [{mark}]")
        return "\n".join(lines)


@dataclass(frozen=True)
class SamplingConfig:
    fibre_bound: int = 3
    samples: int = 50
    seed: int = 0


class ObjectSource:
    """A pool of objects of one category, either exhaustive or a seeded sample.

    Exhaustive sources yield every tuple; sampled sources yield ``count``
    tuples drawn from the pool with a generator seeded by ``(seed, key)``.
    """

    def __init__(self, pool: Sequence, exhaustive: bool, count: int = 50, seed: int = 0):
        self.pool = list(pool)
        self.exhaustive = exhaustive
        self.count = count
        self.seed = seed

    @classmethod
    def all_objects(cls, category) -> "ObjectSource":
        return cls(list(category.objects()), exhaustive=True)

    @classmethod
    def sampled(cls, category, config: SamplingConfig = SamplingConfig(), key: str = "objects") -> "ObjectSource":
        rng = random.Random(f"{config.seed}:{key}")
        pool = [category.sample_object(rng, config.fibre_bound) for _ in range(config.samples)]
        return cls(pool, exhaustive=False, count=config.samples, seed=config.seed)

    @classmethod
    def for_category(cls, category, config: SamplingConfig | None = None, key: str = "objects") -> "ObjectSource":
        if category.is_finite:
            return cls.all_objects(category)
        return cls.sampled(category, config or SamplingConfig(), key)

    def tuples(self, k: int, key: str = "") -> list[tuple]:
        return draw([self] * k, key=key or f"t{k}")

    def rng(self, key: str) -> random.Random:
        return random.Random(f"{self.seed}:{key}")


def draw(sources: Sequence[ObjectSource], key: str = "") -> list[tuple]:
    """Tuples with one entry per source: full product when every source is exhaustive."""
    if all(s.exhaustive for s in sources):
        return list(itertools.product(*(s.pool for s in sources)))
    count = max(s.count for s in sources if not s.exhaustive)
    rng = random.Random(f"{sources[0].seed}:draw:{key}:{len(sources)}")
    return [tuple(rng.choice(s.pool) for s in sources) for _ in range(count)]


EXHAUSTIVE_CAP = 20000


def sample_morphisms(category, source: ObjectSource, k: int, key: str = "", count: int | None = None) -> list[tuple]:
    """k-tuples of morphisms: all of them for finite categories, else random ones between pool objects."""
    rng = source.rng(f"mor:{key}:{k}")
    if category.is_finite and source.exhaustive:
        mors = category.morphisms()
        if len(mors) ** k <= EXHAUSTIVE_CAP:
            return list(itertools.product(mors, repeat=k))
        return [tuple(rng.choice(mors) for _ in range(k)) for _ in range(EXHAUSTIVE_CAP)]
    n = count if count is not None else source.count
    out = []
    for _ in range(n):
        out.append(tuple(_random_morphism(category, source.pool, rng) for _ in range(k)))
    return out


def _random_morphism(category, pool, rng):
    for _ in range(8):
        a, b = rng.choice(pool), rng.choice(pool)
        m = category.sample_morphism(rng, a, b)
        if m is not None:
            return m
    a = rng.choice(pool)
    return category.identity(a)


def witnesses_json(report: CheckReport, describe: Callable[[Any], Any], limit: int = 20) -> list[dict]:
    return [
        {"law": v.law, "witness": [describe(w) for w in v.witness], "detail": v.detail}
        for v in report.violations[:limit]
    ]


def all_equal(values: Iterable) -> bool:
    values = list(values)
    return all(v == values[0] for v in values)
