"""Type definitions shared across the pasting engine."""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from pasting_engine.config.settings import MAX_GENERATOR_FACES, MAX_GENERATOR_PATH_LEN


@dataclass(frozen=True)
class Violation:
    """A single failed invariant of an anchored graph."""
    subject: str
    message: str

    def __str__(self) -> str:
        return f"{self.subject}: {self.message}"


@dataclass
class ValidationReport:
    """Outcome of validate_anchored."""
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, subject: str, message: str) -> None:
        self.violations.append(Violation(subject, message))

    def messages(self) -> List[str]:
        return [str(v) for v in self.violations]


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters for random pasting diagram generation."""
    seed: int = 42
    max_faces: int = 5
    max_path_len: int = 5
    max_object_size: int = 3
    trials: int = 200

    def __post_init__(self):
        for name in ("max_faces", "max_path_len", "max_object_size", "trials"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.seed < 0 or self.seed >= 2 ** 64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.max_faces > MAX_GENERATOR_FACES:
            raise ValueError(f"max_faces must be <= {MAX_GENERATOR_FACES}, got {self.max_faces}")
        if self.max_path_len > MAX_GENERATOR_PATH_LEN:
            raise ValueError(f"max_path_len must be <= {MAX_GENERATOR_PATH_LEN}, got {self.max_path_len}")

    def trial_seed(self, index: int) -> int:
        """Seed of trial ``index``; independent of scheduling order."""
        return (self.seed * 1_000_003 + index) % (2 ** 64)


@dataclass
class Verdict:
    """Result of a uniqueness or coherence check."""
    ok: bool
    kind: str
    message: str = ""
    compared: int = 0
    failures: List[str] = field(default_factory=list)
    traces: Dict[str, List[str]] = field(default_factory=dict)


@dataclass
class TrialResult:
    """One row of a verification suite."""
    suite: str
    trial: int
    seed: int
    status: str  # "pass", "fail", "error" or "skipped"
    message: str = ""
    faces: int = 0
    certificates: int = 0
    encoding: Optional[str] = None
    fingerprint: Optional[str] = None

    def as_row(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "trial": self.trial,
            "seed": self.seed,
            "status": self.status,
            "faces": self.faces,
            "certificates": self.certificates,
            "fingerprint": self.fingerprint or "",
            "message": self.message,
        }


@dataclass
class SuiteSummary:
    """All trial results of one suite, ordered by trial index."""
    suite: str
    results: List[TrialResult] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    def count(self, status: str) -> int:
        return sum(1 for r in self.results if r.status == status)

    @property
    def ok(self) -> bool:
        return self.count("fail") == 0 and self.count("error") == 0

    def failures(self) -> List[TrialResult]:
        return [r for r in self.results if r.status in ("fail", "error")]
