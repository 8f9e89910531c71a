"""
Service wiring ingestion, ranking, percentiles, classes and reports together
"""
import logging
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from config.config import MAX_WORKERS
from models.percentile import PercentileMethod, PercentileScore, TieMode
from models.rank_class import ClassAssignment, FeasibilityReport, RankClassScheme
from models.ranking import RankedSet, TieBreakChain
from models.record import ReferenceKey, ReferenceSet
from models.report import GroupReport
from services.ingest_service import IngestService
from services.percentile_service import PercentileService
from services.rank_class_service import RankClassService
from services.ranking_service import RankingService
from services.stats_service import StatsService
from utils.timer import Timer

UNGROUPED = "(none)"


class ScoredSet(BaseModel):
    """A reference set after ranking and scoring"""
    ranked: RankedSet
    scores: List[PercentileScore]

    @property
    def label(self) -> str:
        return self.ranked.source.label


class PipelineService:
    """Service running the percentile pipeline over all reference sets"""

    def __init__(self, max_workers: int = MAX_WORKERS):
        """Initialize the pipeline and its services"""
        self.logger = logging.getLogger(__name__)
        self.max_workers = max_workers
        self.ingest_service = IngestService()
        self.ranking_service = RankingService()
        self.percentile_service = PercentileService()
        self.rank_class_service = RankClassService()
        self.stats_service = StatsService()

    def load(self, paths: Sequence[str], input_format: Optional[str] = None) -> Dict[ReferenceKey, ReferenceSet]:
        """
        Read input files and build reference sets

        Args:
            paths: Input files
            input_format: Format of all files, detected per file when None

        Returns:
            Reference sets in lexicographic key order
        """
        records = self.ingest_service.read_paths(paths, input_format)
        return self.ingest_service.build_reference_sets(records)

    def score_sets(self, reference_sets: Dict[ReferenceKey, ReferenceSet],
                   method: PercentileMethod, tie_mode: TieMode,
                   chain: Optional[TieBreakChain] = None) -> List[ScoredSet]:
        """
        Rank and score every reference set on a worker pool

        Args:
            reference_sets: Sets to score
            method: Percentile estimator
            tie_mode: Tie handling for percentiles
            chain: Tie-break keys

        Returns:
            Scored sets in key order
        """
        def score(reference_set: ReferenceSet) -> ScoredSet:
            ranked = self.ranking_service.rank_with_ties(reference_set, chain)
            return ScoredSet(ranked=ranked, scores=self.percentile_service.score_set(ranked, method, tie_mode))

        stage = f"Scoring {len(reference_sets)} reference sets with method {method.label}"
        with Timer(stage, self.logger):
            with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
                scored = list(executor.map(score, reference_sets.values()))
        return scored

    def check_feasibility(self, scored: Sequence[ScoredSet], scheme: RankClassScheme,
                          mode: str, force: bool = False) -> List[FeasibilityReport]:
        """Feasibility of the scheme for every set; raises for gated schemes unless forced"""
        return [self.rank_class_service.require_feasible(item.ranked, scheme, force, mode) for item in scored]

    def classify(self, scored: Sequence[ScoredSet], scheme: RankClassScheme,
                 mode: str) -> List[Tuple[ScoredSet, List[ClassAssignment]]]:
        """
        Assign classes within every reference set

        Args:
            scored: Scored reference sets
            scheme: Rank class scheme
            mode: crisp-up, crisp-down, missing or fractional

        Returns:
            (scored set, assignments) pairs in key order
        """
        return [
            (item, self.rank_class_service.assign(item.ranked, item.scores, scheme, mode))
            for item in scored
        ]

    def report(self, scored: Sequence[ScoredSet], scheme: RankClassScheme, mode: str,
               group_by: Optional[str] = None, inverted: bool = False) -> List[GroupReport]:
        """
        Class shares, significance tests and distribution summaries per group

        Groups are reference sets unless group_by names a record attribute, in which case
        publications are pooled across reference sets by that attribute.

        Args:
            scored: Scored reference sets
            scheme: Rank class scheme
            mode: Assignment mode
            group_by: Attribute to pool publications by
            inverted: Summarise inverted instead of plain percentiles

        Returns:
            One report per group, in lexicographic group order
        """
        pooled_scores: Dict[str, List[PercentileScore]] = defaultdict(list)
        pooled_assignments: Dict[str, List[ClassAssignment]] = defaultdict(list)

        for item, assignments in self.classify(scored, scheme, mode):
            records = {member.id: member for member in item.ranked.source.members}
            for score, assignment in zip(item.scores, assignments):
                if group_by:
                    group = str(records[score.id].attributes.get(group_by, UNGROUPED))
                else:
                    group = item.label
                pooled_scores[group].append(score)
                pooled_assignments[group].append(assignment)

        reports = []
        for group in sorted(pooled_scores):
            scores = pooled_scores[group]
            shares = self.stats_service.class_shares(pooled_assignments[group], scheme, len(scores), group)
            values = [score.inverted if inverted else score.percentile for score in scores]
            reports.append(GroupReport(
                group=group,
                shares=self.stats_service.class_tests(shares),
                summary=self.stats_service.distribution_summary(values, group),
            ))
        return reports
