"""
Data model for class-share reports, distribution summaries and significance tests
"""
from typing import Any, Dict, List, Optional
from pydantic import BaseModel, Field


class ProportionTestResult(BaseModel):
    """Test of an observed class proportion against its expected value"""
    k: float
    n: int
    p0: float
    z: float
    p_normal: float = Field(ge=0.0, le=1.0)
    # only defined for integer counts
    p_exact: Optional[float] = Field(default=None, ge=0.0, le=1.0)

    def to_dict(self) -> Dict[str, Any]:
        """Convert test result to dictionary"""
        return {
            "k": self.k,
            "n": self.n,
            "p0": self.p0,
            "z": self.z,
            "p_normal": self.p_normal,
            "p_exact": self.p_exact,
        }


class ClassShare(BaseModel):
    """Observed and expected share of one rank class"""
    label: str
    mass: float = 0.0
    observed: float = 0.0
    expected: float
    test: Optional[ProportionTestResult] = None

    @property
    def deviation(self) -> float:
        return self.observed - self.expected

    def to_dict(self) -> Dict[str, Any]:
        """Convert class share to dictionary"""
        row = {
            "class": self.label,
            "mass": self.mass,
            "observed": self.observed,
            "expected": self.expected,
            "deviation": self.deviation,
        }
        if self.test is not None:
            row.update({
                "z": self.test.z,
                "p_normal": self.test.p_normal,
                "p_exact": self.test.p_exact,
            })
        return row


class ClassShareReport(BaseModel):
    """Class shares of one group of publications under one scheme"""
    group: str
    scheme: str
    n: int
    missing: int = 0
    shares: List[ClassShare] = []

    def add_share(self, label: str, mass: float, expected: float) -> None:
        """
        Add or update the share of a class

        Args:
            label: Class label
            mass: Publication count or fractional mass in the class
            expected: Expected share in percent
        """
        for share in self.shares:
            if share.label == label:
                share.mass += mass
                share.observed = share.mass / self.n * 100.0
                return

        self.shares.append(ClassShare(
            label=label,
            mass=mass,
            observed=mass / self.n * 100.0,
            expected=expected,
        ))

    def share_of(self, label: str) -> ClassShare:
        for share in self.shares:
            if share.label == label:
                return share
        raise KeyError(label)

    @property
    def observed_total(self) -> float:
        return sum(share.observed for share in self.shares)

    def to_rows(self) -> List[Dict[str, Any]]:
        """Flatten the report into one table row per class"""
        return [
            {"group": self.group, "scheme": self.scheme, "n": self.n, "missing": self.missing, **share.to_dict()}
            for share in self.shares
        ]

    def to_dict(self) -> Dict[str, Any]:
        """Convert report to dictionary"""
        return {
            "group": self.group,
            "scheme": self.scheme,
            "n": self.n,
            "missing": self.missing,
            "shares": [share.to_dict() for share in self.shares],
        }


class DistributionSummary(BaseModel):
    """Box-plot and moment statistics of a percentile sample"""
    group: str = ""
    n: int
    mean: float
    sd: float
    minimum: float
    maximum: float
    median: float
    q1: float
    q3: float
    lower_adjacent: float
    upper_adjacent: float

    @property
    def iqr(self) -> float:
        return self.q3 - self.q1

    def to_dict(self) -> Dict[str, Any]:
        """Convert summary to dictionary"""
        return {
            "group": self.group,
            "n": self.n,
            "mean": self.mean,
            "sd": self.sd,
            "min": self.minimum,
            "q1": self.q1,
            "median": self.median,
            "q3": self.q3,
            "max": self.maximum,
            "lower_adjacent": self.lower_adjacent,
            "upper_adjacent": self.upper_adjacent,
        }


class GroupReport(BaseModel):
    """Everything the report command emits for one group"""
    group: str
    shares: ClassShareReport
    summary: DistributionSummary

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.group,
            "shares": self.shares.to_dict(),
            "summary": self.summary.to_dict(),
        }
