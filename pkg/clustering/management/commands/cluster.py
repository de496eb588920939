"""
Management command to cluster the constraints of a knowledge base.
Usage: python manage.py cluster kb.ckb --k 2 [--init c1,c5 | --seed 7] [--matrix table.csv]
"""

from pathlib import Path

from django.core.management.base import CommandError

from clustering.exporters import cluster_report, get_exporter
from clustering.models import Clustering, Strategy
from clustering.services import cluster_knowledge_base
from clustering.similarity import load_matrix
from kbtool.commands import EXIT_USAGE, KnowledgeBaseCommand


class Command(KnowledgeBaseCommand):
    help = 'Group constraints into k clusters and print the iteration trace'

    def add_arguments(self, parser):
        parser.add_argument('kb', type=str, help='Knowledge base file (.ckb)')
        parser.add_argument('--k', type=int, required=True, help='Number of clusters')
        parser.add_argument('--init', type=str, help='Comma-separated initial centroids, e.g. c1,c5')
        parser.add_argument('--seed', type=int, help='Seed for random initialisation (default: KBTOOL_SEED)')
        parser.add_argument('--matrix', type=str, help='Precomputed similarity matrix (CSV)')
        parser.add_argument(
            '--strategy',
            choices=[strategy.value for strategy in Strategy],
            default=Strategy.VARIABLE.value,
            help='Grouping strategy (default: variable)'
        )
        parser.add_argument('--export', type=str, help='Write the cluster report (.csv or .xlsx)')

    def run(self, **options):
        kb = self.load_kb(options['kb'])
        init = self.parse_ids(options['init']) or None
        if init is not None and options['strategy'] == Strategy.RANDOM.value:
            raise CommandError('--init cannot be combined with --strategy random', returncode=EXIT_USAGE)

        matrix = load_matrix(self.read_text(options['matrix'])) if options['matrix'] else None
        clustering = cluster_knowledge_base(
            kb,
            options['k'],
            strategy=options['strategy'],
            init=init,
            seed=options['seed'],
            matrix=matrix,
        )

        if options['export']:
            file_format = 'xlsx' if options['export'].lower().endswith('.xlsx') else 'csv'
            report = cluster_report(clustering, kb)
            Path(options['export']).write_bytes(get_exporter(file_format).export(report).getvalue())
            self.stderr.write(self.style.SUCCESS(f"Wrote cluster report to {options['export']}"))

        if options['json']:
            self.write_json(clustering.to_dict())
            return
        self.print_clustering(clustering)

    def print_clustering(self, clustering: Clustering):
        if clustering.trace:
            ids = list(clustering.assignment)
            width = max(len('iteration'), *(len(cid) + 5 for cid in ids))
            self.stdout.write('  '.join(['iteration'.ljust(width), *(cid.ljust(width) for cid in ids)]).rstrip())
            for step in clustering.trace:
                cells = [
                    f"{step.assignment[cid] + 1}{' (cs)' if cid in step.centroids else ''}".ljust(width)
                    for cid in ids
                ]
                self.stdout.write('  '.join([str(step.iteration).ljust(width), *cells]).rstrip())
            self.stdout.write(f"stable after iteration {clustering.converged_at}")

        for cluster, members in enumerate(clustering.clusters(), start=1):
            centroid = f" (centroid {clustering.centroids[cluster - 1]})" if clustering.centroids else ''
            self.stdout.write(f"cluster {cluster}{centroid}: {', '.join(members)}")

        profile = clustering.profile
        self.stdout.write(
            f"strategy {profile.strategy.value}: observed error rates "
            f"{profile.solution_error_rate}% (solution), {profile.conflict_error_rate}% (conflict)"
        )
