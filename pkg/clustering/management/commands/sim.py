"""
Management command to print or export a constraint similarity matrix.
Usage: python manage.py sim kb.ckb [--metric operator] [--truncate2] [--format xlsx --output sim.xlsx]
"""

from pathlib import Path

from clustering.exporters import get_exporter, matrix_report
from clustering.models import Metric
from clustering.similarity import dump_matrix, similarity_matrix
from kbtool.commands import KnowledgeBaseCommand


class Command(KnowledgeBaseCommand):
    help = 'Compute the pairwise similarity matrix of a knowledge base'

    def add_arguments(self, parser):
        parser.add_argument('kb', type=str, help='Knowledge base file (.ckb)')
        parser.add_argument(
            '--metric',
            choices=[Metric.VARIABLE.value, Metric.OPERATOR.value],
            default=Metric.VARIABLE.value,
            help='Similarity metric (default: variable)'
        )
        parser.add_argument(
            '--truncate2',
            action='store_true',
            help='Floor every value to two decimals'
        )
        parser.add_argument(
            '--format',
            choices=['csv', 'xlsx'],
            default='csv',
            help='Export format used with --output'
        )
        parser.add_argument('--output', type=str, help='Write the matrix to this file')

    def run(self, **options):
        kb = self.load_kb(options['kb'])
        matrix = similarity_matrix(kb, options['metric'])
        if options['truncate2']:
            matrix = matrix.truncated(2)

        if options['output']:
            exporter = get_exporter(options['format'])
            Path(options['output']).write_bytes(exporter.export(matrix_report(matrix)).getvalue())
            self.stderr.write(self.style.SUCCESS(f"Wrote {len(matrix)}x{len(matrix)} matrix to {options['output']}"))
            if not options['json']:
                return

        if options['json']:
            self.write_json(matrix.to_dict())
            return

        self.stdout.write(dump_matrix(matrix), ending='')
