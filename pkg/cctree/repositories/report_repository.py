# File path: cctree/repositories/report_repository.py
import logging
from pathlib import Path
from typing import Union

from cctree.models.enums import ClassifierKind
from cctree.models.evaluation import CLASSIFIER_TITLES, REPRESENTATION_TITLES, EvalReport

logger = logging.getLogger(__name__)


class ReportRepository:
    @staticmethod
    def to_json(report: EvalReport) -> str:
        """Stable JSON: sorted keys, no timestamps, so equal runs give equal bytes."""
        return report.json(sort_keys=True, indent=2) + "\n"

    @staticmethod
    def to_markdown(report: EvalReport) -> str:
        """F1 table: one row per representation, one column per classifier plus the average."""
        kinds = [ClassifierKind(k) for k in report.config.classifiers]
        header = ["Representation"] + [CLASSIFIER_TITLES[k] for k in kinds] + ["Average"]
        lines = [
            "| " + " | ".join(header) + " |",
            "|" + "|".join(["---"] + ["---:"] * (len(header) - 1)) + "|",
        ]
        baseline = report.baseline.f1
        lines.append("| Random Guesser | " + " | ".join(f"{baseline:.2f}" for _ in range(len(kinds) + 1)) + " |")
        for mode in report.modes():
            cells = []
            for kind in kinds:
                summary = report.summary(mode, kind)
                cells.append(f"{summary.f1:.2f}" if summary is not None else "-")
            cells.append(f"{report.mean_f1(mode):.2f}")
            lines.append(f"| {REPRESENTATION_TITLES[mode]} | " + " | ".join(cells) + " |")
        return "\n".join(lines) + "\n"

    @staticmethod
    def save(report: EvalReport, path: Union[str, Path]) -> Path:
        """Write `path` as JSON and a Markdown table next to it; returns the Markdown path."""
        path = Path(path)
        path.write_text(ReportRepository.to_json(report), encoding="utf-8")
        markdown_path = path.with_suffix(".md")
        markdown_path.write_text(ReportRepository.to_markdown(report), encoding="utf-8")
        logger.info("Wrote evaluation report to %s and %s", path, markdown_path)
        return markdown_path

    @staticmethod
    def load(path: Union[str, Path]) -> EvalReport:
        return EvalReport.parse_file(path)
