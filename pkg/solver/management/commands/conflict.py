"""
Management command to compute one minimal conflict of a knowledge base.
Usage: python manage.py conflict kb.ckb
Exits with status 1 when a conflict is found.
"""

import sys

from kbtool.commands import EXIT_DOMAIN_RESULT, KnowledgeBaseCommand
from solver.services import minimal_conflict


class Command(KnowledgeBaseCommand):
    help = 'Print a minimal set of jointly unsatisfiable constraints, or "consistent"'

    def add_arguments(self, parser):
        parser.add_argument('kb', type=str, help='Knowledge base file (.ckb)')

    def run(self, **options):
        kb = self.load_kb(options['kb'])
        conflict = minimal_conflict(kb)

        if options['json']:
            self.write_json({'consistent': conflict is None, **(conflict.to_dict() if conflict else {'conflict': None})})
        elif conflict is None:
            self.stdout.write('consistent')
        else:
            self.stdout.write(', '.join(conflict.constraint_ids))

        if conflict is not None:
            sys.exit(EXIT_DOMAIN_RESULT)
