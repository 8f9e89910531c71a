"""
Data model for ranked reference sets
"""
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field

from models.record import ReferenceSet


class TieBreakKey(str, Enum):
    """Covariates that may order records with equal citation counts"""
    CITATIONS_PER_PAGE = "citations-per-page"
    JOURNAL_METRIC = "journal-metric"

    @classmethod
    def parse(cls, value: str) -> "TieBreakKey":
        aliases = {
            "cpp": cls.CITATIONS_PER_PAGE,
            "pages": cls.CITATIONS_PER_PAGE,
            "journal-metric-descending": cls.JOURNAL_METRIC,
            "jm": cls.JOURNAL_METRIC,
        }
        value = value.strip().lower()
        if value in aliases:
            return aliases[value]
        return cls(value)


class TieBreakChain(BaseModel):
    """Ordered tie-break keys; an empty chain is pure citation ranking"""
    model_config = ConfigDict(frozen=True)

    keys: Tuple[TieBreakKey, ...] = ()

    @classmethod
    def parse(cls, selector: Optional[str]) -> "TieBreakChain":
        """Build a chain from a comma-separated selector such as 'citations-per-page,journal-metric'"""
        if not selector:
            return cls()
        return cls(keys=tuple(TieBreakKey.parse(part) for part in selector.split(",") if part.strip()))

    @property
    def is_empty(self) -> bool:
        return not self.keys

    def __str__(self) -> str:
        return ",".join(key.value for key in self.keys)


class EffectiveScore(BaseModel):
    """Ordering key of one record: citations first, then the chain's covariate values"""
    id: str
    citations: int
    tie_breakers: Dict[str, Optional[float]] = Field(default_factory=dict)
    sort_key: Tuple[float, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {"id": self.id, "citations": self.citations, **self.tie_breakers}


class TieGroup(BaseModel):
    """Members sharing one ordering key and therefore one average rank"""
    citations: int
    sort_key: Tuple[float, ...]
    member_ids: List[str]
    rank: float
    # number of members ordered below this group on the ascending axis
    lower: int

    @property
    def size(self) -> int:
        return len(self.member_ids)

    @property
    def upper(self) -> int:
        return self.lower + self.size

    def to_dict(self) -> Dict[str, Any]:
        return {
            "citations": self.citations,
            "member_ids": list(self.member_ids),
            "rank": self.rank,
            "lower": self.lower,
            "size": self.size,
        }


class RankedSet(BaseModel):
    """A reference set with ascending average ranks (1 = fewest citations, n = most)"""
    source: ReferenceSet
    chain: TieBreakChain = Field(default_factory=TieBreakChain)
    ranks: Dict[str, float]
    tie_groups: List[TieGroup]

    @property
    def n(self) -> int:
        return self.source.n

    @property
    def largest_tie_group(self) -> int:
        return max(group.size for group in self.tie_groups)

    def group_of(self, record_id: str) -> TieGroup:
        """Tie group containing a record"""
        for group in self.tie_groups:
            if record_id in group.member_ids:
                return group
        raise KeyError(record_id)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "key": self.source.label,
            "n": self.n,
            "chain": str(self.chain),
            "ranks": dict(self.ranks),
            "tie_groups": [group.to_dict() for group in self.tie_groups],
        }
