"""
Service for assigning percentiles to percentile rank classes
"""
import logging
from typing import Dict, List, Optional, Sequence

from config.config import WEIGHT_TOLERANCE
from models.percentile import PercentileScore
from models.rank_class import (
    ESI_THRESHOLDS,
    ClassAssignment,
    FeasibilityReport,
    RankClassScheme,
    SchemeVerdict,
)
from models.ranking import RankedSet
from utils.errors import InfeasibleSchemeError

ASSIGN_UP = "assign-up"
ASSIGN_DOWN = "assign-down"
MISSING_ON_AMBIGUITY = "missing-on-ambiguity"

# CLI assignment modes onto crisp boundary policies
BOUNDARY_POLICIES = {
    "crisp-up": ASSIGN_UP,
    "crisp-down": ASSIGN_DOWN,
    "missing": MISSING_ON_AMBIGUITY,
}

FRACTIONAL = "fractional"

# Schemes whose infeasibility stops crisp assignment unless forced
GATED_SCHEMES = ("PR(6)",)


class RankClassService:
    """Service for crisp, missing-value and fractional class assignment"""

    def __init__(self):
        """Initialize the rank class service"""
        self.logger = logging.getLogger(__name__)

    def classify_crisp(self, score: PercentileScore, scheme: RankClassScheme,
                       boundary_policy: str = ASSIGN_UP,
                       tie_span: Optional[Dict[str, float]] = None) -> ClassAssignment:
        """
        Assign one publication to exactly one class, or to none

        A publication is ambiguous when its tie group's fractional weights spread over more
        than one class; the boundary policy then decides. Otherwise the class containing the
        percentile wins, whatever a degenerate span says. Uncited publications are never
        ambiguous: their percentile is zero, so they stay in the lowest class.

        Args:
            score: Percentile of the publication
            scheme: Partitioning scheme
            boundary_policy: assign-up, assign-down or missing-on-ambiguity
            tie_span: Fractional weights of the publication's tie group

        Returns:
            Crisp or missing assignment
        """
        if scheme.nested:
            raise ValueError(f"{scheme.name} holds nested thresholds; use esi_membership")
        if boundary_policy not in (ASSIGN_UP, ASSIGN_DOWN, MISSING_ON_AMBIGUITY):
            raise ValueError(f"unknown boundary policy '{boundary_policy}'")

        spanned = [label for label in scheme.labels if (tie_span or {}).get(label, 0.0) > WEIGHT_TOLERANCE]
        if len(spanned) > 1 and not score.is_zero_cited:
            if boundary_policy == MISSING_ON_AMBIGUITY:
                return ClassAssignment(id=score.id, scheme=scheme.name, mode="missing")
            label = spanned[-1] if boundary_policy == ASSIGN_UP else spanned[0]
        else:
            label = scheme.class_of(score.percentile).label

        return ClassAssignment(id=score.id, scheme=scheme.name, mode="crisp", label=label)

    @staticmethod
    def esi_membership(score: PercentileScore) -> List[str]:
        """
        ESI thresholds the percentile reaches ("equal to or larger than")

        Args:
            score: Percentile of the publication

        Returns:
            Satisfied labels, widest first
        """
        return [label for label, threshold in ESI_THRESHOLDS if score.percentile >= threshold]

    def assign_fractional(self, ranked: RankedSet, scheme: RankClassScheme) -> List[ClassAssignment]:
        """
        Spread each tie group's unit weights over the classes it overlaps

        On the descending count axis (0, n] a class [lo, hi) covers
        (n(100-hi)/100, n(100-lo)/100]; a tie group of size g covering (b, b+g] gives each
        member overlap/g of every class.

        Args:
            ranked: Ranked reference set
            scheme: Partitioning scheme

        Returns:
            Fractional assignments ordered from most to least cited
        """
        if scheme.nested:
            raise ValueError(f"fractional assignment needs a partitioning scheme, not {scheme.name}")

        assignments = []
        for group in reversed(ranked.tie_groups):
            weights = self._group_weights(ranked.n, group.lower, group.size, scheme)
            for member_id in group.member_ids:
                assignments.append(ClassAssignment(
                    id=member_id, scheme=scheme.name, mode="fractional", weights=dict(weights),
                ))
        return assignments

    def assign(self, ranked: RankedSet, scores: Sequence[PercentileScore],
               scheme: RankClassScheme, mode: str = "crisp-up") -> List[ClassAssignment]:
        """
        Assign every scored publication of a set under one assignment mode

        Args:
            ranked: Ranked reference set the scores come from
            scores: Percentile scores of the set
            scheme: Rank class scheme
            mode: crisp-up, crisp-down, missing or fractional

        Returns:
            Assignments in score order
        """
        if scheme.nested:
            return [
                ClassAssignment(id=score.id, scheme=scheme.name, mode="nested", labels=self.esi_membership(score))
                for score in scores
            ]
        if mode == FRACTIONAL:
            by_id = {assignment.id: assignment for assignment in self.assign_fractional(ranked, scheme)}
            return [by_id[score.id] for score in scores]
        if mode not in BOUNDARY_POLICIES:
            raise ValueError(f"unknown assignment mode '{mode}'")

        spans = self.tie_spans(ranked, scheme)
        assignments = [
            self.classify_crisp(score, scheme, BOUNDARY_POLICIES[mode], spans[score.id]) for score in scores
        ]
        missing = sum(1 for assignment in assignments if assignment.is_missing)
        if missing:
            self.logger.warning(f"{missing} publications of {ranked.source.label} left unassigned under {scheme.name}")
        return assignments

    def tie_spans(self, ranked: RankedSet, scheme: RankClassScheme) -> Dict[str, Dict[str, float]]:
        """Fractional weight vector of every member's tie group, keyed by id"""
        spans = {}
        for group in ranked.tie_groups:
            weights = self._group_weights(ranked.n, group.lower, group.size, scheme)
            for member_id in group.member_ids:
                spans[member_id] = weights
        return spans

    def validate_feasibility(self, ranked: RankedSet, scheme: RankClassScheme) -> FeasibilityReport:
        """
        Check a ranked set against the two class-count rules

        Rule 1: a tie group larger than a class cannot be split, so at most
        floor(n / largest tie group) equal classes when ties exist. Rule 2: at most n + 1
        classes, which is also the equal-class limit of an untied set; for
        unequal schemes the smallest class decides (1% needs 101 untied publications).

        Args:
            ranked: Ranked reference set
            scheme: Scheme to judge

        Returns:
            Report with a verdict for the standard schemes and the requested one
        """
        n = ranked.n
        largest = ranked.largest_tie_group
        distinct = len(ranked.tie_groups)

        schemes = RankClassScheme.standard()
        if scheme.name not in {candidate.name for candidate in schemes}:
            schemes.append(scheme)
        verdicts = [self._verdict(candidate, n, largest, distinct) for candidate in schemes]
        requested = next(verdict for verdict in verdicts if verdict.scheme == scheme.name)

        return FeasibilityReport(
            group=ranked.source.label,
            n=n,
            largest_tie_group=largest,
            distinct_values=distinct,
            max_equal_classes=n // largest,
            max_classes=n + 1,
            scheme=scheme.name,
            feasible=requested.feasible,
            verdicts=verdicts,
        )

    @staticmethod
    def is_gated(scheme: RankClassScheme, mode: str) -> bool:
        """Whether an infeasible verdict stops class assignment under this mode"""
        return scheme.name in GATED_SCHEMES and mode != FRACTIONAL

    def require_feasible(self, ranked: RankedSet, scheme: RankClassScheme, force: bool = False,
                         mode: str = "crisp-up") -> FeasibilityReport:
        """
        Check a scheme before assigning classes with it

        Only gated schemes under crisp modes raise; fractional assignment keeps class
        masses exact under any ties, and other verdicts are logged and passed on.

        Args:
            ranked: Ranked reference set
            scheme: Scheme about to be used
            force: Assign even when a gated scheme is infeasible
            mode: Assignment mode about to be used

        Returns:
            The feasibility report

        Raises:
            InfeasibleSchemeError: gated scheme infeasible and force not set
        """
        report = self.validate_feasibility(ranked, scheme)
        if report.feasible:
            return report

        verdict = next(v for v in report.verdicts if v.scheme == scheme.name)
        message = f"{scheme.name} is not feasible for {ranked.source.label}: {verdict.reason}"
        if not self.is_gated(scheme, mode):
            self.logger.info(f"{message}; assigning {mode}")
        elif force:
            self.logger.warning(f"{message} (forced)")
        else:
            raise InfeasibleSchemeError(message, report)
        return report

    @staticmethod
    def _verdict(scheme: RankClassScheme, n: int, largest: int, distinct: int) -> SchemeVerdict:
        k = len(scheme.classes)
        if scheme.is_equal_width and not scheme.nested:
            if k > n + 1:
                return SchemeVerdict(scheme=scheme.name, classes=k, feasible=False,
                                     reason=f"{k} classes exceed n + 1 = {n + 1}")
            if largest > 1 and k > n // largest:
                return SchemeVerdict(scheme=scheme.name, classes=k, feasible=False,
                                     reason=f"a tie group of {largest} is larger than a class of {n / k:.2f}; "
                                            f"at most {n // largest} equal classes")
            return SchemeVerdict(scheme=scheme.name, classes=k, feasible=True,
                                 reason=f"{k} equal classes fit")

        smallest = scheme.smallest_width
        equivalent = int(round(100.0 / smallest))
        required = equivalent + 1
        if distinct < required:
            return SchemeVerdict(scheme=scheme.name, classes=k, feasible=False,
                                 reason=f"the {smallest:g}% class needs at least {required} publications without ties; "
                                        f"n={n} with {distinct} distinct values")
        return SchemeVerdict(scheme=scheme.name, classes=k, feasible=True,
                             reason=f"{distinct} distinct values cover the {smallest:g}% class")

    @staticmethod
    def _group_weights(n: int, lower: int, size: int, scheme: RankClassScheme) -> Dict[str, float]:
        """Weights of one member of a tie group occupying ascending positions (lower, lower+size]"""
        start, end = n - lower - size, n - lower
        weights = {}
        for rank_class in scheme.classes:
            class_start, class_end = rank_class.count_interval(n)
            overlap = max(0.0, min(end, class_end) - max(start, class_start))
            weights[rank_class.label] = overlap / size
        return weights
