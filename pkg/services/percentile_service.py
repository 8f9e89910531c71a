"""
Service for turning ranks into percentiles
"""
import logging
from typing import List, Optional

import numpy as np

from models.percentile import PercentileMethod, PercentileScore, TieMode
from models.ranking import RankedSet

# percentiles are snapped to this many decimals so exact medians stay exact
_DECIMALS = 12


class PercentileService:
    """Service for percentile calculation under the plotting-position estimators"""

    def __init__(self):
        """Initialize the percentile service"""
        self.logger = logging.getLogger(__name__)

    @staticmethod
    def plotting_position(i: float, n: int, method: PercentileMethod) -> float:
        """
        Percentile (0-100) of rank i among n publications

        Args:
            i: Rank, 1 = fewest citations
            n: Number of publications in the reference set
            method: Estimator

        Returns:
            Percentile on the 0-100 scale
        """
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        if not 1 <= i <= n:
            raise ValueError(f"rank {i} outside [1, {n}]")
        offset, shift = method.coefficients
        value = round((i - offset) / (n + shift) * 100.0, _DECIMALS)
        return min(max(value, 0.0), 100.0)

    @staticmethod
    def invert(percentile: float, is_zero_cited: bool) -> float:
        """
        Inverted percentile: low values mean high impact, uncited publications get 100

        Args:
            percentile: Percentile on the 0-100 scale
            is_zero_cited: Whether the publication has no citations

        Returns:
            Inverted percentile
        """
        if not 0.0 <= percentile <= 100.0:
            raise ValueError(f"percentile {percentile} outside [0, 100]")
        if is_zero_cited:
            return 100.0
        return 100.0 - percentile

    def score_set(self, ranked: RankedSet, method: Optional[PercentileMethod] = None,
                  tie_mode: TieMode = TieMode.RANK_AVERAGE) -> List[PercentileScore]:
        """
        Percentiles of every publication in a ranked set

        Uncited publications always get percentile 0. Under percentile-average mode a tie
        group gets the mean of the percentiles of the ranks it occupies.

        Args:
            ranked: Ranked reference set
            method: Estimator, Hazen when None
            tie_mode: Average ranks or average percentiles

        Returns:
            Scores ordered from most to least cited, ties by id
        """
        method = method or PercentileMethod()
        n = ranked.n

        scores = []
        for group in reversed(ranked.tie_groups):
            if tie_mode == TieMode.PERCENTILE_AVERAGE:
                positions = range(group.lower + 1, group.upper + 1)
                value = float(np.mean([self.plotting_position(j, n, method) for j in positions]))
                value = min(max(round(value, _DECIMALS), 0.0), 100.0)
            else:
                value = self.plotting_position(group.rank, n, method)

            zero_cited = group.citations == 0
            percentile = 0.0 if zero_cited else value
            for member_id in group.member_ids:
                scores.append(PercentileScore(
                    id=member_id,
                    citations=group.citations,
                    rank=group.rank,
                    percentile=percentile,
                    inverted=self.invert(percentile, zero_cited),
                    method=method.label,
                ))

        self.logger.debug(f"Scored {ranked.source.label} with method {method.label} ({tie_mode.value})")
        return scores
