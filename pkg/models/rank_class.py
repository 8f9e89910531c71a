"""
Data model for percentile rank classes, class assignments and feasibility reports
"""
from typing import Any, Dict, List, Optional, Tuple
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

ESI_THRESHOLDS: Tuple[Tuple[str, float], ...] = (
    ("50%", 50.0),
    ("20%", 80.0),
    ("10%", 90.0),
    ("1%", 99.0),
    ("0.1%", 99.9),
    ("0.01%", 99.99),
)


class RankClass(BaseModel):
    """One labelled percentile interval [lower, upper); the top class also holds 100"""
    model_config = ConfigDict(frozen=True)

    label: str
    lower: float
    upper: float

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def count_interval(self, n: int) -> Tuple[float, float]:
        """Interval (start, end] the class covers on the descending cumulative-count axis"""
        return (n * (100.0 - self.upper) / 100.0, n * (100.0 - self.lower) / 100.0)


class RankClassScheme(BaseModel):
    """An ordered set of rank classes, lowest class first"""
    model_config = ConfigDict(frozen=True)

    name: str
    classes: Tuple[RankClass, ...]
    nested: bool = False

    @model_validator(mode="after")
    def _check_partition(self) -> "RankClassScheme":
        if self.nested:
            return self
        if self.classes[0].lower != 0.0 or self.classes[-1].upper != 100.0:
            raise ValueError(f"classes of {self.name} must cover [0, 100]")
        for below, above in zip(self.classes, self.classes[1:]):
            if below.upper != above.lower:
                raise ValueError(f"classes of {self.name} must be contiguous")
        return self

    @property
    def labels(self) -> List[str]:
        return [rank_class.label for rank_class in self.classes]

    @property
    def expected_shares(self) -> Dict[str, float]:
        """Share (percent) each class holds when publications are drawn at random"""
        if self.nested:
            return {rank_class.label: 100.0 - rank_class.lower for rank_class in self.classes}
        return {rank_class.label: rank_class.width for rank_class in self.classes}

    @property
    def smallest_width(self) -> float:
        return min(rank_class.width for rank_class in self.classes)

    @property
    def is_equal_width(self) -> bool:
        widths = [rank_class.width for rank_class in self.classes]
        return max(widths) - min(widths) < 1e-9

    def locate(self, percentiles) -> np.ndarray:
        """Index of the class containing each percentile (non-nested schemes)"""
        lowers = np.array([rank_class.lower for rank_class in self.classes])
        values = np.asarray(percentiles, dtype=float)
        return np.searchsorted(lowers, values, side="right") - 1

    def class_of(self, percentile: float) -> RankClass:
        return self.classes[int(self.locate([percentile])[0])]

    # Built-in schemes

    @classmethod
    def pr2_10(cls) -> "RankClassScheme":
        return cls(name="PR(2,10)", classes=(
            RankClass(label="<90%", lower=0.0, upper=90.0),
            RankClass(label="10%", lower=90.0, upper=100.0),
        ))

    @classmethod
    def pr2_50(cls) -> "RankClassScheme":
        return cls(name="PR(2,50)", classes=(
            RankClass(label="<50%", lower=0.0, upper=50.0),
            RankClass(label="50%+", lower=50.0, upper=100.0),
        ))

    @classmethod
    def pr6(cls) -> "RankClassScheme":
        return cls(name="PR(6)", classes=(
            RankClass(label="<50%", lower=0.0, upper=50.0),
            RankClass(label="50%", lower=50.0, upper=75.0),
            RankClass(label="25%", lower=75.0, upper=90.0),
            RankClass(label="10%", lower=90.0, upper=95.0),
            RankClass(label="5%", lower=95.0, upper=99.0),
            RankClass(label="1%", lower=99.0, upper=100.0),
        ))

    @classmethod
    def esi(cls) -> "RankClassScheme":
        """Nested thresholds: a publication satisfies every threshold at or below its percentile"""
        return cls(name="ESI(6)", nested=True, classes=tuple(
            RankClass(label=label, lower=threshold, upper=100.0) for label, threshold in ESI_THRESHOLDS
        ))

    @classmethod
    def esi_bands(cls) -> "RankClassScheme":
        """Exclusive bands between consecutive ESI thresholds"""
        bounds = [0.0] + [threshold for _, threshold in ESI_THRESHOLDS] + [100.0]
        labels = ["<50%"] + [label for label, _ in ESI_THRESHOLDS]
        return cls(name="ESI(6)-bands", classes=tuple(
            RankClass(label=label, lower=bounds[index], upper=bounds[index + 1])
            for index, label in enumerate(labels)
        ))

    @classmethod
    def equal(cls, k: int) -> "RankClassScheme":
        """k equal-width classes, e.g. quintiles for k=5"""
        if k < 1:
            raise ValueError("an equal-width scheme needs at least one class")
        bounds = [100.0 * j / k for j in range(k + 1)]
        bounds[-1] = 100.0
        classes = []
        for j in range(k):
            closing = "]" if j == k - 1 else ")"
            label = f"[{bounds[j]:g},{bounds[j + 1]:g}{closing}"
            classes.append(RankClass(label=label, lower=bounds[j], upper=bounds[j + 1]))
        return cls(name=f"EQ({k})", classes=tuple(classes))

    @classmethod
    def parse(cls, selector: str) -> "RankClassScheme":
        """Parse a scheme selector: pr2-10, pr2-50, pr6, esi, esi-bands or equal:<k>"""
        selector = selector.strip().lower()
        builders = {
            "pr2-10": cls.pr2_10,
            "pr2-50": cls.pr2_50,
            "pr6": cls.pr6,
            "esi": cls.esi,
            "esi-bands": cls.esi_bands,
        }
        if selector in builders:
            return builders[selector]()
        if selector.startswith("equal:"):
            try:
                k = int(selector.split(":", 1)[1])
            except ValueError:
                raise ValueError(f"invalid class count in '{selector}'")
            return cls.equal(k)
        raise ValueError(f"unknown scheme '{selector}'")

    @classmethod
    def standard(cls) -> List["RankClassScheme"]:
        """The four schemes in common use"""
        return [cls.pr2_10(), cls.pr2_50(), cls.pr6(), cls.esi()]


class ClassAssignment(BaseModel):
    """Class assignment of one publication under one scheme"""
    id: str
    scheme: str
    mode: str  # "crisp", "missing", "fractional" or "nested"
    label: Optional[str] = None
    weights: Dict[str, float] = Field(default_factory=dict)
    labels: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_mode(self) -> "ClassAssignment":
        if self.mode == "crisp" and self.label is None:
            raise ValueError("crisp assignment needs a label")
        if self.mode == "fractional":
            total = sum(self.weights.values())
            if abs(total - 1.0) > 1e-9 or any(w < -1e-12 or w > 1 + 1e-12 for w in self.weights.values()):
                raise ValueError(f"fractional weights of '{self.id}' must lie in [0, 1] and sum to 1")
        if self.mode not in ("crisp", "missing", "fractional", "nested"):
            raise ValueError(f"unknown assignment mode '{self.mode}'")
        return self

    @property
    def is_missing(self) -> bool:
        return self.mode == "missing"

    def to_dict(self) -> Dict[str, Any]:
        """Convert assignment to a table row"""
        row: Dict[str, Any] = {"id": self.id, "scheme": self.scheme}
        if self.mode == "fractional":
            row.update(self.weights)
        elif self.mode == "nested":
            row["class"] = ";".join(self.labels)
        else:
            row["class"] = self.label or ""
        return row


class SchemeVerdict(BaseModel):
    """Feasibility verdict for one scheme"""
    scheme: str
    classes: int
    feasible: bool
    reason: str

    def to_dict(self) -> Dict[str, Any]:
        return {"scheme": self.scheme, "classes": self.classes, "feasible": self.feasible, "reason": self.reason}


class FeasibilityReport(BaseModel):
    """How many classes a ranked set supports, and whether schemes fit"""
    group: str = ""
    n: int
    largest_tie_group: int
    distinct_values: int
    max_equal_classes: int
    max_classes: int
    scheme: str
    feasible: bool
    verdicts: List[SchemeVerdict] = Field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.group,
            "n": self.n,
            "largest_tie_group": self.largest_tie_group,
            "distinct_values": self.distinct_values,
            "max_equal_classes": self.max_equal_classes,
            "max_classes": self.max_classes,
            "scheme": self.scheme,
            "feasible": self.feasible,
            "verdicts": [verdict.to_dict() for verdict in self.verdicts],
        }
