"""
Newline-delimited JSON results store.
"""

import json
import logging
import threading
from typing import (
    Any,
    Dict,
    Iterable,
    List,
)

from mixvol.report import InequalityReport

log = logging.getLogger(__name__)


class ResultsStore:
    """
    Appends one JSON record per report to ``path``. Appends are serialized by
    a lock, so a store can be shared by the threads of a suite.
    """

    def __init__(self, path: str, truncate: bool = True) -> None:
        """
        :type path: str
        :param path: file to write; created if missing

        :type truncate: bool
        :param truncate: start from an empty file
        """
        self.path = path
        self._lock = threading.Lock()
        if truncate:
            with open(path, "w", encoding="utf-8"):
                pass

    def append(self, report: InequalityReport) -> None:
        line = json.dumps(report.to_record(), sort_keys=True)
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(line + "\n")

    def extend(self, reports: Iterable[InequalityReport]) -> None:
        lines = [json.dumps(report.to_record(), sort_keys=True) for report in reports]
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as f:
                f.writelines(line + "\n" for line in lines)
        log.info("Wrote %d records to %s", len(lines), self.path)

    def read(self) -> List[Dict[str, Any]]:
        with self._lock:
            with open(self.path, encoding="utf-8") as f:
                return [json.loads(line) for line in f if line.strip()]

    def __repr__(self) -> str:
        return f"ResultsStore({self.path!r})"
