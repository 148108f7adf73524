"""
Machine-readable verdicts of verification runs.

Reports serialize to JSON with a fixed key order. The `timing` entry is the
only part that differs between two runs of the same command, and is left out
of `Report.comparable`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Iterable, Optional

from ALGtools.algebras import AlgElem
from ALGtools.linmap import LinMap
from ALGtools.mat2 import Mat2
from ALGtools.rings import RingElem


PASS = 'pass'
FAIL = 'fail'
SKIPPED = 'skipped'

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

KEY_ORDER = ('claim', 'ring', 'algebra', 'verdict', 'reason', 'counts', 'witness', 'details', 'timing')


def encode_witness(item) -> list:
    """
    Coordinate list of a witness item, with entries as decimal strings
    """
    if isinstance(item, AlgElem):
        return [str(c) for c in item.coords]
    if isinstance(item, Mat2):
        return [str(c) for c in item.coords]
    if isinstance(item, LinMap):
        return [[item.ring.format_raw(v) for v in row] for row in item.rows]
    if isinstance(item, RingElem):
        return [str(item)]
    if isinstance(item, (tuple, list)):
        return [str(v) for v in item]
    return [str(item)]


@dataclass
class Report:
    claim: str
    ring: str
    algebra: str
    verdict: str
    reason: Optional[str] = None
    counts: dict = field(default_factory=dict)
    witness: Optional[list] = None
    details: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def failed(self) -> bool:
        return self.verdict == FAIL

    @property
    def skipped(self) -> bool:
        return self.verdict == SKIPPED

    def stamp(self, elapsed: float) -> None:
        self.timing = {'elapsed': round(elapsed, 6),
                       'timestamp': datetime.now(timezone.utc).isoformat(timespec='seconds')}

    def to_dict(self) -> dict:
        return {key: getattr(self, key) for key in KEY_ORDER}

    def comparable(self) -> dict:
        result = self.to_dict()
        del result['timing']
        return result

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: dict) -> Report:
        return cls(**{key: data[key] for key in KEY_ORDER if key in data})


def reports_to_json(reports: Iterable[Report], indent: int = 2) -> str:
    return json.dumps([report.to_dict() for report in reports], indent=indent, ensure_ascii=False)


def write_reports(filename: str, reports: Iterable[Report]) -> None:
    with open(filename, 'w', encoding='utf-8') as out:
        out.write(reports_to_json(reports))
        out.write('\n')


def exit_code(reports: Iterable[Report], strict: bool = False) -> int:
    """
    0 when every verdict is pass or skipped, 1 on any fail. With strict,
    skipped verdicts count as failures.
    """
    for report in reports:
        if report.failed or (strict and report.skipped):
            return EXIT_FAIL
    return EXIT_OK
