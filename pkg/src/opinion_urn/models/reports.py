"""Check and report models."""

from typing import List

from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    """Outcome of one named check."""

    name: str = Field(..., description="Check identifier")
    passed: bool = Field(..., description="Whether the check held")
    detail: str = Field(default="", description="Human-readable summary")


class HoeffdingRow(BaseModel):
    """Tail frequency of one vertex at one deviation threshold."""

    vertex: int
    deviation: float = Field(..., description="Threshold a")
    frequency: float = Field(..., description="Empirical P(|g_t - g_0 - t d_i/|E|| > a)")
    bound: float = Field(..., description="2 exp(-2 a^2 / t)")
    standard_error: float = Field(..., description="Binomial standard error at the bound")
    exceeded: bool = Field(..., description="frequency > bound + 3 SE")


class HoeffdingReport(BaseModel):
    """Empirical concentration of the total weights."""

    n_steps: int
    n_trials: int
    rows: List[HoeffdingRow] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        """True when no row exceeded its bound."""
        return not any(row.exceeded for row in self.rows)


class PolyaReport(BaseModel):
    """Coupling of the two-vertex model with a single Pólya urn."""

    u0: float
    g0: float
    n_steps: int
    n_trials: int
    coupled_identical: bool = Field(..., description="All paired paths equal bit-for-bit")
    ks_statistic: float = Field(..., description="Two-sample KS statistic of terminal opinions")
    ks_threshold: float

    @property
    def passed(self) -> bool:
        """True when paths coincide and the terminal laws agree."""
        return self.coupled_identical and self.ks_statistic < self.ks_threshold


class ConvergenceReport(BaseModel):
    """Finite-horizon evidence of consensus."""

    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        """True when every check held."""
        return all(check.passed for check in self.checks)


class VerificationReport(BaseModel):
    """Result of the invariant suite."""

    quick: bool
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        """True when every check held."""
        return all(check.passed for check in self.checks)

    @property
    def failed(self) -> List[str]:
        """Names of failed checks."""
        return [check.name for check in self.checks if not check.passed]
