"""
Data model for percentile methods and per-publication percentile scores
"""
import re
from enum import Enum
from typing import Any, Dict, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, model_validator

_GENERAL_PATTERN = re.compile(r"^general(?::a=(?P<a>[-+0-9.eE]+))?$")

# (offset, denominator shift): percentile = (i - offset) / (n + shift) * 100
_FIXED_METHODS: Dict[str, Tuple[float, float]] = {
    "a": (0.0, 0.0),
    "b": (1.0, 0.0),
    "c": (0.5, 0.0),       # Hazen
    "d": (0.375, 0.0),     # Blom offset over n, as tabulated
    "e": (0.44, 0.12),     # Gringorten
}

METHOD_NAMES = {
    "a": "i/n",
    "b": "(i-1)/n",
    "c": "Hazen",
    "d": "Blom",
    "e": "Gringorten",
    "general": "plotting position",
}


class PercentileMethod(BaseModel):
    """A plotting-position estimator mapping rank i of n onto the 0-100 scale"""
    model_config = ConfigDict(frozen=True)

    kind: str = "c"
    a: Optional[float] = None

    @model_validator(mode="after")
    def _check(self) -> "PercentileMethod":
        if self.kind == "general":
            if self.a is None:
                raise ValueError("general method needs a value for a")
            if not 0.0 <= self.a <= 0.5:
                raise ValueError(f"general method needs 0 <= a <= 0.5, got {self.a}")
        elif self.kind not in _FIXED_METHODS:
            raise ValueError(f"unknown percentile method '{self.kind}'")
        elif self.a is not None:
            raise ValueError(f"method '{self.kind}' takes no a value")
        return self

    @classmethod
    def parse(cls, selector: str) -> "PercentileMethod":
        """Parse a selector: a, b, c, d, e or general:a=<value>"""
        selector = selector.strip().lower()
        match = _GENERAL_PATTERN.match(selector)
        if match:
            raw = match.group("a")
            return cls(kind="general", a=float(raw) if raw is not None else None)
        return cls(kind=selector)

    @property
    def coefficients(self) -> Tuple[float, float]:
        """(offset, shift) of the affine form (i - offset) / (n + shift)"""
        if self.kind == "general":
            return (self.a, 1.0 - 2.0 * self.a)
        return _FIXED_METHODS[self.kind]

    @property
    def label(self) -> str:
        if self.kind == "general":
            return f"general:a={self.a:g}"
        return self.kind

    def __str__(self) -> str:
        return self.label


class TieMode(str, Enum):
    """How tied records share a percentile"""
    RANK_AVERAGE = "rank-average"
    PERCENTILE_AVERAGE = "percentile-average"


class PercentileScore(BaseModel):
    """Percentile of one publication within its reference set"""
    id: str
    citations: int = Field(ge=0)
    rank: float
    percentile: float = Field(ge=0.0, le=100.0)
    inverted: float = Field(ge=0.0, le=100.0)
    method: str = "c"

    @property
    def is_zero_cited(self) -> bool:
        return self.citations == 0

    def to_dict(self) -> Dict[str, Any]:
        """Convert score to a table row"""
        return {
            "id": self.id,
            "citations": self.citations,
            "rank": self.rank,
            "percentile": self.percentile,
            "inverted_percentile": self.inverted,
            "method": self.method,
        }
