"""
Management command to recommend and apply constraint refactorings.
Usage: python manage.py refactor kb.ckb [--apply out.ckb]
"""

from pathlib import Path

from kbtool.commands import KnowledgeBaseCommand
from knowledge_base.parser import format_expr, serialize_kb
from refactoring.services import refactor_kb


class Command(KnowledgeBaseCommand):
    help = 'Suggest semantics-preserving rewrites of constraints into their simplest form'

    def add_arguments(self, parser):
        parser.add_argument('kb', type=str, help='Knowledge base file (.ckb)')
        parser.add_argument('--apply', type=str, metavar='OUT', help='Write the refactored knowledge base here')

    def run(self, **options):
        kb = self.load_kb(options['kb'])
        result = refactor_kb(kb)

        if options['apply']:
            Path(options['apply']).write_text(serialize_kb(result.knowledge_base), encoding='utf-8')
            self.stderr.write(self.style.SUCCESS(
                f"Wrote {options['apply']} ({len(result.suggestions)} constraint(s) rewritten)"
            ))

        if options['json']:
            self.write_json(result.to_dict())
            return

        if not result.suggestions:
            self.stdout.write('No refactorings suggested')
        else:
            self.stdout.write(f"{'constraint':<12}{'matched':<20}{'target':<20}{'delta':>7}  rewritten")
            for suggestion in result.suggestions:
                self.stdout.write(
                    f"{suggestion.constraint_id:<12}{suggestion.matched.key:<20}"
                    f"{suggestion.target.key:<20}{suggestion.score_delta:>7}  {format_expr(suggestion.rewritten)}"
                )
        for item in result.rejected:
            self.stdout.write(self.style.ERROR(f"rejected {item.constraint_id}: {item.reason}"))
        for item in result.skipped:
            self.stdout.write(self.style.WARNING(f"skipped {item.constraint_id}: {item.reason}"))
