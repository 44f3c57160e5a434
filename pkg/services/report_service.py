"""
Report Service
Assembles command reports and renders them as JSON or as a human-readable table
"""

import json
import logging

from config import Config
from models import Report

logger = logging.getLogger(__name__)


class ReportService:
    """Turns command results into deterministic output"""

    def build(self, command, seed, verdicts=None, witnesses=None, timing=None):
        """
        Args:
            command: the command line echo
            seed: seed used by any randomized step
            verdicts: JSON-safe dict
            witnesses: polynomials (converted to canonical strings)
            timing: seconds, or None unless timing was requested

        Returns:
            Report
        """
        return Report(
            command=command,
            seed=seed,
            verdicts=verdicts or {},
            witnesses=[str(w) for w in (witnesses or [])],
            timing=timing,
            schema=Config.REPORT_SCHEMA,
        )

    def render_json(self, report):
        return json.dumps(report.to_dict(), sort_keys=True, indent=2)

    def render_text(self, report):
        lines = [f"{Config.APP_NAME} {report.command}", f"seed: {report.seed}"]
        lines.extend(self._lines(report.verdicts, 0))
        if report.witnesses:
            lines.append("witnesses:")
            lines.extend(f"  {w}" for w in report.witnesses)
        if report.timing is not None:
            lines.append(f"timing: {report.timing:.3f}s")
        return '\n'.join(lines)

    def _lines(self, value, depth):
        pad = '  ' * depth
        lines = []
        for key in sorted(value):
            item = value[key]
            if isinstance(item, dict):
                lines.append(f"{pad}{key}:")
                lines.extend(self._lines(item, depth + 1))
            elif isinstance(item, list) and item and isinstance(item[0], dict):
                lines.append(f"{pad}{key}:")
                for row in item:
                    cells = ', '.join(f"{k}={_cell(row[k])}" for k in sorted(row))
                    lines.append(f"{pad}  - {cells}")
            else:
                lines.append(f"{pad}{key}: {_cell(item)}")
        return lines

    def render(self, report, as_json=False):
        return self.render_json(report) if as_json else self.render_text(report)


def _cell(value):
    if value is None:
        return '-'
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if isinstance(value, list):
        return '[' + ', '.join(_cell(v) for v in value) + ']'
    return str(value)


# Singleton instance
report_service = ReportService()


def render_json(report):
    return report_service.render_json(report)


def render_text(report):
    return report_service.render_text(report)
