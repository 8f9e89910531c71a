"""
Service for class-share reports, significance tests and distribution summaries
"""
import logging
import math
from typing import Iterable, Sequence, Union

import numpy as np
from matplotlib import cbook
from scipy.stats import binom, norm

from config.config import BOX_WHISKER
from models.rank_class import ClassAssignment, RankClassScheme
from models.report import ClassShareReport, DistributionSummary, ProportionTestResult

# relative tolerance when comparing binomial probabilities of outcomes
_EXACT_RTOL = 1e-7


class StatsService:
    """Service for evaluating percentile and class data"""

    def __init__(self):
        """Initialize the stats service"""
        self.logger = logging.getLogger(__name__)

    def class_shares(self, assignments: Sequence[ClassAssignment], scheme: RankClassScheme,
                     n: int, group: str = "") -> ClassShareReport:
        """
        Observed class shares of a group compared with the expected shares

        Args:
            assignments: Class assignments of the group's publications
            scheme: Scheme the assignments were made under
            n: Number of publications in the group
            group: Group label

        Returns:
            ClassShareReport with one share per class
        """
        if n <= 0:
            raise ValueError("a class share report needs at least one publication")
        schemes = {assignment.scheme for assignment in assignments}
        if schemes - {scheme.name}:
            raise ValueError(f"assignments mix schemes: {', '.join(sorted(schemes))}")

        report = ClassShareReport(group=group, scheme=scheme.name, n=n)
        expected = scheme.expected_shares
        for label in scheme.labels:
            report.add_share(label, 0.0, expected[label])

        for assignment in assignments:
            if assignment.mode == "missing":
                report.missing += 1
            elif assignment.mode == "crisp":
                report.add_share(assignment.label, 1, expected[assignment.label])
            elif assignment.mode == "nested":
                for label in assignment.labels:
                    report.add_share(label, 1, expected[label])
            else:
                for label, weight in assignment.weights.items():
                    report.add_share(label, weight, expected[label])

        return report

    def class_tests(self, report: ClassShareReport) -> ClassShareReport:
        """
        Attach a proportion test against the expected share to every class

        Args:
            report: Class share report

        Returns:
            The same report, with tests filled in
        """
        for share in report.shares:
            p0 = share.expected / 100.0
            if 0.0 < p0 < 1.0:
                share.test = self.proportion_test(share.mass, report.n, p0)
        return report

    def proportion_test(self, k: Union[int, float], n: int, p0: float) -> ProportionTestResult:
        """
        Test an observed count (or fractional mass) against an expected proportion

        Args:
            k: Observed count or mass
            n: Number of publications
            p0: Expected proportion, 0 < p0 < 1

        Returns:
            z statistic, normal two-sided p-value and, for integer counts, the exact
            two-sided binomial p-value
        """
        if n <= 0:
            raise ValueError("n must be positive")
        if not 0 <= k <= n:
            raise ValueError(f"observed value {k} outside [0, {n}]")
        if not 0.0 < p0 < 1.0:
            raise ValueError(f"expected proportion {p0} outside (0, 1)")

        z = (k / n - p0) / math.sqrt(p0 * (1.0 - p0) / n)
        p_normal = min(1.0, float(2.0 * norm.sf(abs(z))))

        p_exact = None
        if float(k).is_integer():
            p_exact = self._exact_binomial(int(k), n, p0)

        return ProportionTestResult(k=k, n=n, p0=p0, z=z, p_normal=p_normal, p_exact=p_exact)

    @staticmethod
    def _exact_binomial(k: int, n: int, p0: float) -> float:
        """Sum of the probabilities of all outcomes no more likely than k"""
        outcomes = np.arange(n + 1)
        probabilities = binom.pmf(outcomes, n, p0)
        observed = binom.pmf(k, n, p0)
        p_value = probabilities[probabilities <= observed * (1.0 + _EXACT_RTOL)].sum()
        return min(1.0, float(p_value))

    def distribution_summary(self, values: Iterable[float], group: str = "") -> DistributionSummary:
        """
        Summary statistics behind box and violin plots of percentiles

        Quartiles interpolate linearly between order statistics; adjacent values are the
        most extreme observations within 1.5 IQR of the quartiles.

        Args:
            values: Plain or inverted percentiles
            group: Group label

        Returns:
            DistributionSummary
        """
        sample = np.asarray(list(values), dtype=float)
        if sample.size == 0:
            raise ValueError("cannot summarise an empty sample")

        stats = cbook.boxplot_stats(sample, whis=BOX_WHISKER)[0]
        return DistributionSummary(
            group=group,
            n=int(sample.size),
            mean=float(stats["mean"]),
            sd=float(np.std(sample, ddof=1)) if sample.size > 1 else 0.0,
            minimum=float(sample.min()),
            maximum=float(sample.max()),
            median=float(stats["med"]),
            q1=float(stats["q1"]),
            q3=float(stats["q3"]),
            lower_adjacent=float(stats["whislo"]),
            upper_adjacent=float(stats["whishi"]),
        )
