"""
Management command to generate a random knowledge base of a study shape.
Usage: python manage.py generate --shape kba1 [--seed 7] [--form requires/4] [--output kb.ckb]
"""

from pathlib import Path

from django.conf import settings

from kbtool.commands import KnowledgeBaseCommand
from knowledge_base.generators import STUDY_SHAPES, generate_kb
from knowledge_base.parser import serialize_kb
from refactoring.catalog import get_form


class Command(KnowledgeBaseCommand):
    help = 'Generate a random knowledge base with the variables, domains and constraint count of a study shape'

    def add_arguments(self, parser):
        parser.add_argument('--shape', choices=sorted(STUDY_SHAPES), required=True, help='Knowledge base shape')
        parser.add_argument('--seed', type=int, help='RNG seed (default: KBTOOL_SEED)')
        parser.add_argument('--form', type=str, help="Write every constraint in this form, e.g. 'requires/4'")
        parser.add_argument('--output', type=str, help='Write the knowledge base to this file')

    def run(self, **options):
        seed = options['seed'] if options['seed'] is not None else settings.KBTOOL_SEED
        form = get_form(options['form']) if options['form'] else None
        kb = generate_kb(STUDY_SHAPES[options['shape']], seed, form=form)
        text = serialize_kb(kb)

        if options['output']:
            Path(options['output']).write_text(text, encoding='utf-8')
            self.stderr.write(self.style.SUCCESS(
                f"Wrote {options['output']}: {len(kb.variables)} variables, {len(kb.constraints)} constraints"
            ))
        if options['json']:
            self.write_json({'shape': options['shape'], 'seed': seed, 'source': text})
        elif not options['output']:
            self.stdout.write(text, ending='')
