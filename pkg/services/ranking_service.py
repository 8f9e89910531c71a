"""
Service for ranking the records of a reference set with average ranks for ties
"""
import logging
from collections import Counter, defaultdict
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.stats import rankdata

from models.ranking import EffectiveScore, RankedSet, TieBreakChain, TieBreakKey, TieGroup
from models.record import CitationRecord, ReferenceSet
from utils.errors import CovariateError

_COVARIATE_NAMES = {
    TieBreakKey.CITATIONS_PER_PAGE: "pages",
    TieBreakKey.JOURNAL_METRIC: "journal_metric",
}


class RankingService:
    """Service for the rank-frequency ordering of reference sets"""

    def __init__(self):
        """Initialize the ranking service"""
        self.logger = logging.getLogger(__name__)

    def effective_scores(self, reference_set: ReferenceSet,
                         chain: Optional[TieBreakChain] = None) -> List[EffectiveScore]:
        """
        Compute the ordering key of every member

        Citations always decide first; chain keys only order members with equal citations.

        Args:
            reference_set: Records to order
            chain: Tie-break keys, applied in order

        Returns:
            One score per member, in member order
        """
        chain = chain or TieBreakChain()
        counts = Counter(member.citations for member in reference_set.members)

        scores = []
        for member in reference_set.members:
            tied = counts[member.citations] > 1
            sort_key: List[float] = [float(member.citations)]
            tie_breakers: Dict[str, Optional[float]] = {}
            for key in chain.keys:
                value = self._covariate(member, key)
                if value is None and tied:
                    raise CovariateError(member.id, _COVARIATE_NAMES[key])
                tie_breakers[key.value] = value
                # untied members never compare on this position
                sort_key.append(value if value is not None else 0.0)
            scores.append(EffectiveScore(
                id=member.id,
                citations=member.citations,
                tie_breakers=tie_breakers,
                sort_key=tuple(sort_key),
            ))
        return scores

    def rank_with_ties(self, reference_set: ReferenceSet,
                       chain: Optional[TieBreakChain] = None) -> RankedSet:
        """
        Rank members in increasing order of citations (rank n = most cited)

        Members still tied after the chain share the average of the ranks they occupy.

        Args:
            reference_set: Records to rank
            chain: Tie-break keys

        Returns:
            RankedSet with per-member ranks and tie groups
        """
        chain = chain or TieBreakChain()
        scores = self.effective_scores(reference_set, chain)

        distinct = sorted({score.sort_key for score in scores})
        codes = {key: index for index, key in enumerate(distinct)}
        ranks = rankdata(np.array([codes[score.sort_key] for score in scores]), method="average")

        rank_by_id = {score.id: float(rank) for score, rank in zip(scores, ranks)}

        members_by_key: Dict[Tuple[float, ...], List[EffectiveScore]] = defaultdict(list)
        for score in scores:
            members_by_key[score.sort_key].append(score)

        tie_groups = []
        lower = 0
        for key in distinct:
            members = members_by_key[key]
            member_ids = sorted(score.id for score in members)
            tie_groups.append(TieGroup(
                citations=members[0].citations,
                sort_key=key,
                member_ids=member_ids,
                rank=rank_by_id[member_ids[0]],
                lower=lower,
            ))
            lower += len(members)

        self.logger.debug(
            f"Ranked {reference_set.label}: n={reference_set.n}, "
            f"{len(tie_groups)} tie groups, chain='{chain}'"
        )
        return RankedSet(source=reference_set, chain=chain, ranks=rank_by_id, tie_groups=tie_groups)

    @staticmethod
    def _covariate(member: CitationRecord, key: TieBreakKey) -> Optional[float]:
        if key is TieBreakKey.CITATIONS_PER_PAGE:
            if member.pages is None:
                return None
            return member.citations / member.pages
        return member.journal_metric
