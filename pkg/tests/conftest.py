"""
Shared fixtures: the 41-publication sample set with its tabulated percentiles
"""
from typing import List

import pytest

from models.record import CitationRecord, ReferenceSet
from services.ranking_service import RankingService

# citation counts of publications no. 41 down to no. 1
SAMPLE_CITATIONS = (
    [15] * 2 + [14] * 4 + [12] * 4 + [10] * 3 + [9, 8, 7, 6] + [5] * 3 + [4]
    + [3] * 5 + [2] * 4 + [1] * 7 + [0] * 4
)

# citations -> tabulated percentiles under methods a, b, c, d, e
SAMPLE_PERCENTILES = {
    15: (98.78049, 96.34146, 97.56097, 97.86585, 97.42218),
    14: (91.46342, 89.02439, 90.2439, 90.54878, 90.12646),
    12: (81.70731, 79.2683, 80.48781, 80.79269, 80.39883),
    10: (73.17073, 70.7317, 71.95122, 72.2561, 71.88716),
    9: (68.29269, 65.85366, 67.07317, 67.37805, 67.02335),
    8: (65.85366, 63.41463, 64.63415, 64.93903, 64.59144),
    7: (63.41463, 60.97561, 62.19512, 62.5, 62.15953),
    6: (60.97561, 58.53659, 59.7561, 60.06097, 59.72763),
    5: (56.09756, 53.65854, 54.87805, 55.18293, 54.86381),
    4: (51.21951, 48.78049, 50.0, 50.30488, 50.0),
    3: (43.90244, 41.46341, 42.68293, 42.9878, 42.70428),
    2: (32.92683, 30.4878, 31.70732, 32.0122, 31.7607),
    1: (19.5122, 17.07317, 18.29268, 18.59756, 18.38521),
    0: (0.0, 0.0, 0.0, 0.0, 0.0),
}

METHODS = ("a", "b", "c", "d", "e")

GOLDEN_TOLERANCE = 5e-5


def make_records(citations: List[int], field: str = "CHEM", year: int = 2005,
                 doctype: str = "Article", prefix: str = "p") -> List[CitationRecord]:
    """Records numbered from the most cited down, e.g. p41 ... p01"""
    n = len(citations)
    return [
        CitationRecord(id=f"{prefix}{n - index:02d}", citations=count, field=field, year=year, doctype=doctype)
        for index, count in enumerate(citations)
    ]


def make_set(citations: List[int], **kwargs) -> ReferenceSet:
    records = make_records(citations, **kwargs)
    return ReferenceSet(key=records[0].key, members=records)


@pytest.fixture
def sample_set() -> ReferenceSet:
    return make_set(SAMPLE_CITATIONS)


@pytest.fixture
def sample_ranked(sample_set):
    return RankingService().rank_with_ties(sample_set)


@pytest.fixture
def sample_csv(tmp_path):
    """The sample set written as a comma-separated input file"""
    lines = ["id,citations,field,year,doctype"]
    lines += [f"{r.id},{r.citations},{r.field},{r.year},{r.doctype}" for r in make_records(SAMPLE_CITATIONS)]
    path = tmp_path / "sample.csv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)
