"""Structured outcomes of identity verifications."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .exactalg import Polynomial


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one identity check.

    In symbolic mode ``lhs`` and ``rhs`` carry both sides in canonical form
    and ``passed`` means they are structurally equal.  In random_eval mode
    the sides are never materialized (that is the point of screening); the
    report instead records the seed, the number of sampled points, and, on
    failure, the first mismatching point in ``detail``.
    """

    identity: str
    params: dict[str, int]
    passed: bool
    mode: str = "symbolic"
    lhs: Polynomial | None = None
    rhs: Polynomial | None = None
    eval_points: int | None = None
    seed: int | None = None
    detail: str | None = None

    def difference(self) -> Polynomial | None:
        """lhs - rhs for symbolic reports, None otherwise."""
        if self.lhs is None or self.rhs is None:
            return None
        return self.lhs - self.rhs

    def to_json_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "identity": self.identity,
            "params": dict(self.params),
            "mode": self.mode,
            "passed": self.passed,
            "lhs": self.lhs.render() if self.lhs is not None else None,
            "rhs": self.rhs.render() if self.rhs is not None else None,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.eval_points is not None:
            out["eval_points"] = self.eval_points
        if self.detail is not None:
            out["detail"] = self.detail
        return out

    def summary_line(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        status = "pass" if self.passed else "FAIL"
        return f"{self.identity} {params}: {status}"
