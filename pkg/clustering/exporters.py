"""
Report exporters for similarity matrices and cluster listings.

A report is built once as ReportData and handed to any Exporter; CSV and
Excel (openpyxl) writers are provided.
"""

import csv
import io
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from openpyxl import Workbook
from openpyxl.formatting.rule import ColorScaleRule
from openpyxl.styles import Font, PatternFill
from openpyxl.utils import get_column_letter

from knowledge_base.models import KnowledgeBase
from knowledge_base.parser import format_expr

from .models import Clustering, SimilarityMatrix
from .similarity import format_value


@dataclass(frozen=True)
class ReportData:
    """
    One table plus key/value details.

    heatmap marks a square table of similarity values: every cell after
    the first column is a number in [0, 1].
    """
    sheet: str
    headers: List[str]
    rows: List[List]
    details: Dict[str, object] = field(default_factory=dict)
    heatmap: bool = False


class Exporter(ABC):
    """Abstract base class for exporters"""

    content_type = 'application/octet-stream'

    @abstractmethod
    def export(self, report_data: ReportData) -> io.BytesIO:
        """Export report data to file format"""


class CsvExporter(Exporter):
    """Plain CSV: header row then data rows. Details are omitted."""

    content_type = 'text/csv'

    def export(self, report_data: ReportData) -> io.BytesIO:
        text = io.StringIO()
        writer = csv.writer(text, lineterminator='\n')
        writer.writerow(report_data.headers)
        writer.writerows(report_data.rows)
        return io.BytesIO(text.getvalue().encode('utf-8'))


class ExcelExporter(Exporter):
    """
    Workbook with the table on the first sheet and the details on a second.

    Similarity values are written as numbers and shaded from white (0) to
    blue (1); the header row and id column stay frozen.
    """

    content_type = 'application/vnd.openxmlformats-officedocument.spreadsheetml.sheet'
    header_fill = PatternFill(start_color='366092', end_color='366092', fill_type='solid')
    header_font = Font(color='FFFFFF', bold=True)

    def export(self, report_data: ReportData) -> io.BytesIO:
        wb = Workbook()
        ws = wb.active
        ws.title = report_data.sheet

        ws.append(report_data.headers)
        for cell in ws[1]:
            cell.fill = self.header_fill
            cell.font = self.header_font

        for row in report_data.rows:
            if report_data.heatmap:
                row = [row[0], *(float(value) for value in row[1:])]
            ws.append(row)

        if report_data.heatmap:
            ws.freeze_panes = 'B2'
            last_cell = f"{get_column_letter(len(report_data.headers))}{len(report_data.rows) + 1}"
            ws.conditional_formatting.add(
                f'B2:{last_cell}',
                ColorScaleRule(start_type='num', start_value=0, start_color='FFFFFF',
                               end_type='num', end_value=1, end_color='366092'),
            )
        else:
            ws.freeze_panes = 'A2'

        for col_idx, column in enumerate(ws.iter_cols(min_row=1, max_row=ws.max_row), start=1):
            longest = max((len(str(cell.value)) for cell in column if cell.value is not None), default=0)
            ws.column_dimensions[get_column_letter(col_idx)].width = min(longest + 2, 50)

        if report_data.details:
            details = wb.create_sheet('details')
            for key, value in report_data.details.items():
                details.append([key, str(value)])
            details['A1'].font = Font(bold=True)

        output = io.BytesIO()
        wb.save(output)
        output.seek(0)
        return output


EXPORTERS = {
    'csv': CsvExporter,
    'xlsx': ExcelExporter,
}


def get_exporter(file_format: str) -> Exporter:
    try:
        return EXPORTERS[file_format]()
    except KeyError:
        raise ValueError(f"Unsupported export format '{file_format}'") from None


def matrix_report(matrix: SimilarityMatrix) -> ReportData:
    """Matrix as a table: first column the row id, then one column per constraint."""
    return ReportData(
        sheet='similarity',
        headers=['', *matrix.constraint_ids],
        rows=[
            [constraint_id, *(format_value(value) for value in row)]
            for constraint_id, row in zip(matrix.constraint_ids, matrix.values)
        ],
        details={'metric': matrix.metric.value, 'constraints': len(matrix)},
        heatmap=True,
    )


def cluster_report(clustering: Clustering, kb: Optional[KnowledgeBase] = None) -> ReportData:
    """Grouped constraint listing: one row per constraint, ordered by cluster."""
    rows = []
    for cluster, members in enumerate(clustering.clusters(), start=1):
        for constraint_id in members:
            is_centroid = clustering.centroids is not None and constraint_id in clustering.centroids
            expression = format_expr(kb.constraint(constraint_id).expr) if kb is not None else ''
            rows.append([cluster, constraint_id, 'yes' if is_centroid else '', expression])

    profile = clustering.profile
    return ReportData(
        sheet='clusters',
        headers=['cluster', 'constraint', 'centroid', 'expression'],
        rows=rows,
        details={
            'k': clustering.k,
            'strategy': clustering.strategy.value,
            'iterations': len(clustering.trace),
            'solution error rate (%)': profile.solution_error_rate,
            'conflict error rate (%)': profile.conflict_error_rate,
        },
    )
