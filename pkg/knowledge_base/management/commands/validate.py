"""
Management command to validate a knowledge-base file.
Usage: python manage.py validate kb.ckb
"""

from kbtool.commands import KnowledgeBaseCommand


class Command(KnowledgeBaseCommand):
    help = 'Parse a knowledge base and report its size or every error found'

    def add_arguments(self, parser):
        parser.add_argument('kb', type=str, help='Knowledge base file (.ckb)')

    def run(self, **options):
        kb = self.load_kb(options['kb'])

        if options['json']:
            self.write_json({
                'valid': True,
                'variables': list(kb.variable_names),
                'constraints': list(kb.constraint_ids),
            })
            return

        self.stdout.write(
            self.style.SUCCESS(
                f"{options['kb']}: {len(kb.variables)} variables, {len(kb.constraints)} constraints"
            )
        )
