"""
Management command to find a solution of a knowledge base.
Usage: python manage.py solve kb.ckb [--subset c1,c2]
Exits with status 1 when the constraints are unsatisfiable.
"""

import sys

from kbtool.commands import EXIT_DOMAIN_RESULT, KnowledgeBaseCommand
from solver.services import find_solution


class Command(KnowledgeBaseCommand):
    help = 'Find the first solution of a knowledge base, or report UNSAT'

    def add_arguments(self, parser):
        parser.add_argument('kb', type=str, help='Knowledge base file (.ckb)')
        parser.add_argument('--subset', type=str, help='Only satisfy these comma-separated constraints')

    def run(self, **options):
        kb = self.load_kb(options['kb'])
        subset = self.parse_ids(options['subset']) if options['subset'] else None
        solution = find_solution(kb, subset)

        if options['json']:
            self.write_json({'satisfiable': solution is not None, 'assignment': solution})
        elif solution is None:
            self.stdout.write('UNSAT')
        else:
            for name, value in solution.items():
                self.stdout.write(f"{name} = {value}")

        if solution is None:
            sys.exit(EXIT_DOMAIN_RESULT)
