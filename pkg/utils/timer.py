"""
Utility for timing pipeline stages
"""
import logging
import time
from typing import Optional


class Timer:
    """
    Times one pipeline stage and logs its duration on exit.

        with Timer("scoring", logger) as timer:
            ...
        timer.elapsed_ms
    """

    def __init__(self, stage: str, logger: Optional[logging.Logger] = None):
        self.stage = stage
        self.logger = logger or logging.getLogger(__name__)
        self.start_ms = 0
        self.elapsed_ms = 0

    def __enter__(self) -> "Timer":
        self.start_ms = self.timestamp_ms()
        return self

    def __exit__(self, exc_type, exc, traceback) -> None:
        self.elapsed_ms = self.timestamp_ms() - self.start_ms
        if exc_type is None:
            self.logger.info(f"{self.stage} took {self.format_processing_time(self.elapsed_ms)}")

    @staticmethod
    def timestamp_ms() -> int:
        """Monotonic clock in milliseconds"""
        return int(time.monotonic() * 1000)

    @staticmethod
    def format_processing_time(milliseconds: int) -> str:
        """
        Format a duration for log lines

        Args:
            milliseconds: Duration in milliseconds

        Returns:
            str: e.g. "850ms", "2.40s" or "1m 5.00s"
        """
        if milliseconds < 1000:
            return f"{milliseconds}ms"
        seconds = milliseconds / 1000.0
        if seconds < 60:
            return f"{seconds:.2f}s"
        minutes, remaining = divmod(seconds, 60)
        return f"{int(minutes)}m {remaining:.2f}s"
