"""
Data model for publication records and reference sets
"""
from typing import Any, Dict, List, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

REQUIRED_COLUMNS = ("id", "citations", "field", "year", "doctype")
OPTIONAL_COLUMNS = ("pages", "journal_metric")

ReferenceKey = Tuple[str, int, str]


class CitationRecord(BaseModel):
    """Model for one publication and its citation count"""
    model_config = ConfigDict(frozen=True)

    id: str = Field(min_length=1)
    citations: int = Field(ge=0)
    field: str
    year: int
    doctype: str
    pages: Optional[int] = Field(default=None, ge=1)
    journal_metric: Optional[float] = Field(default=None, ge=0)
    attributes: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("id")
    @classmethod
    def _id_not_blank(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("id must not be empty")
        return value

    @property
    def key(self) -> ReferenceKey:
        """Reference set key (field, year, doctype)"""
        return (self.field, self.year, self.doctype)

    @property
    def is_zero_cited(self) -> bool:
        return self.citations == 0

    def to_dict(self) -> Dict[str, Any]:
        """Convert model to dictionary"""
        return {
            "id": self.id,
            "citations": self.citations,
            "field": self.field,
            "year": self.year,
            "doctype": self.doctype,
            "pages": self.pages,
            "journal_metric": self.journal_metric,
            "attributes": dict(self.attributes),
        }


class ReferenceSet(BaseModel):
    """All records sharing one (field, year, doctype) key"""
    model_config = ConfigDict(frozen=True)

    key: ReferenceKey
    members: List[CitationRecord]

    @model_validator(mode="after")
    def _members_share_key(self) -> "ReferenceSet":
        if not self.members:
            raise ValueError("a reference set needs at least one member")
        for member in self.members:
            if member.key != self.key:
                raise ValueError(f"record '{member.id}' has key {member.key}, expected {self.key}")
        return self

    @property
    def n(self) -> int:
        return len(self.members)

    @property
    def label(self) -> str:
        """Human-readable key, e.g. CHEM/2005/Article"""
        field, year, doctype = self.key
        return f"{field}/{year}/{doctype}"

    def to_dict(self) -> Dict[str, Any]:
        """Convert reference set to dictionary"""
        return {
            "key": self.label,
            "n": self.n,
            "members": [member.to_dict() for member in self.members],
        }
