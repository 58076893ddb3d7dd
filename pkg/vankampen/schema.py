from dataclasses import dataclass, field, asdict
from typing      import Any, Dict, Optional, Tuple

VERDICTS = ('equal', 'distinct', 'unknown')
PROBE_STATUS = ('ok', 'failed', 'too_large')
DIRECTIONS = ('gamma_lambda', 'lambda_gamma')
LABELS = ('certified', 'bounded')


@dataclass(frozen=True)
class Violation:
    """
    One failed instance of a law.

    Attributes:
        law (str): Name of the violated law, e.g. "associativity" or "CM2".
        witness (Dict[str, Any]): The offending elements, rendered as strings.
        detail (str): Optional human readable explanation.
    """
    law: str
    witness: Dict[str, Any] = field(default_factory=dict)
    detail: str = ""

    def __post_init__(self):
        if not self.law:
            raise ValueError("A violation must name its law.")

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class ValidationReport:
    """
    Outcome of an exhaustive (or sampled) axiom check.

    Attributes:
        subject (str): What was checked.
        violations (Tuple[Violation, ...]): Every violated instance found.
        checked (int): Number of law instances evaluated.
        exhaustive (bool): False when some law was sampled instead of enumerated.
    """
    subject: str
    violations: Tuple[Violation, ...] = ()
    checked: int = 0
    exhaustive: bool = True

    def __post_init__(self):
        if self.checked < 0:
            raise ValueError("checked must be non-negative.")
        object.__setattr__(self, 'violations', tuple(self.violations))

    @property
    def ok(self) -> bool:
        return not self.violations

    def laws(self) -> Tuple[str, ...]:
        return tuple(sorted({v.law for v in self.violations}))

    def to_dict(self):
        data = asdict(self)
        data['ok'] = self.ok
        return data


@dataclass(frozen=True)
class WordEquality:
    """
    Tri-state answer of the word problem in a presented groupoid.

    Attributes:
        verdict (str): One of "equal", "distinct", "unknown".
        certificate (str): How the verdict was obtained.
        bound (Optional[int]): The exhausted bound when the verdict is "unknown".
        witness (Optional[str]): A separating morphism, when one was found.
    """
    verdict: str
    certificate: str = ""
    bound: Optional[int] = None
    witness: Optional[str] = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"Invalid verdict: {self.verdict}")

    def __bool__(self):
        return self.verdict == 'equal'

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class ProbeResult:
    probe: str
    status: str
    cocones: Optional[int] = None
    morphisms: Optional[int] = None
    witness: Optional[str] = None

    def __post_init__(self):
        if self.status not in PROBE_STATUS:
            raise ValueError(f"Invalid probe status: {self.status}")

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class UniversalReport:
    """
    Per-probe comparison of cocones (or compatible data) against morphisms out of
    a candidate apex.
    """
    subject: str
    results: Tuple[ProbeResult, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'results', tuple(self.results))

    @property
    def ok(self) -> bool:
        return all(r.status == 'ok' for r in self.results)

    def failures(self) -> Tuple[ProbeResult, ...]:
        return tuple(r for r in self.results if r.status != 'ok')

    def to_dict(self):
        data = asdict(self)
        data['ok'] = self.ok
        return data


@dataclass(frozen=True)
class ComparisonReport:
    """
    Finite-quotient comparison of two presentations.

    Attributes:
        left (str): Label of the first presentation.
        right (str): Label of the second presentation.
        counts (Dict[str, Tuple[int, int]]): Probe name to (left count, right count).
    """
    left: str
    right: str
    counts: Dict[str, Tuple[int, int]] = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return all(a == b for a, b in self.counts.values())

    def to_dict(self):
        data = asdict(self)
        data['counts'] = {k: list(v) for k, v in self.counts.items()}
        data['agree'] = self.agree
        return data


@dataclass(frozen=True)
class EquivalenceReport:
    """
    Result of a λ/γ round trip.

    Attributes:
        direction (str): "gamma_lambda" (crossed module side) or "lambda_gamma".
        instance (str): Name of the input.
        success (bool): Whether a checked isomorphism was found.
        witness (Optional[Dict[str, Any]]): The isomorphism on generators, rendered.
        trace (str): Failure trace or summary of the checks performed.
    """
    direction: str
    instance: str
    success: bool
    witness: Optional[Dict[str, Any]] = None
    trace: str = ""

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise ValueError(f"Invalid direction: {self.direction}")

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class TripleReport:
    """
    Connectivity checks for a triple (X, A, C).

    Attributes:
        components_ok (bool): Both component maps out of C are surjective.
        components_detail (str): Which component is missed, if any.
        full (Optional[bool]): Fullness of π₁(A,C) → π₁(X,C); None when undecided.
        label (str): "certified" or "bounded".
        witness (Optional[str]): An unreachable generator or a separating morphism.
    """
    components_ok: bool
    components_detail: str = ""
    full: Optional[bool] = None
    label: str = 'bounded'
    witness: Optional[str] = None

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"Invalid label: {self.label}")

    @property
    def ok(self) -> bool:
        return self.components_ok and self.full is True

    def to_dict(self):
        data = asdict(self)
        data['ok'] = self.ok
        return data
