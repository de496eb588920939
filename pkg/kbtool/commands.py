"""
Shared plumbing for kbtool management commands: file loading, JSON
output and the mapping of domain errors onto exit codes.
"""

import json
import logging
from pathlib import Path
from typing import Any

from django.core.management.base import BaseCommand, CommandError

from knowledge_base.exceptions import KnowledgeBaseError, ParseErrors
from knowledge_base.models import KnowledgeBase
from knowledge_base.parser import parse_kb

logger = logging.getLogger(__name__)

# Exit status for a domain result such as UNSAT or a conflict found
EXIT_DOMAIN_RESULT = 1
EXIT_USAGE = 2


class KnowledgeBaseCommand(BaseCommand):
    """
    Base class for kbtool subcommands.
    Subclasses implement `run(**options)` instead of `handle`.
    """

    requires_system_checks = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.add_argument(
            '--json',
            action='store_true',
            help='Print machine-readable JSON instead of a table'
        )
        return parser

    def handle(self, *args, **options):
        try:
            return self.run(**options)
        except ParseErrors as exc:
            if options.get('json'):
                self.write_json({'valid': False, 'errors': [error.to_dict() for error in exc.errors]})
            for error in exc.errors:
                self.stderr.write(f"{options.get('kb', '<input>')}:{error}")
            raise CommandError(f"{len(exc.errors)} parse error(s)", returncode=EXIT_USAGE)
        except (KnowledgeBaseError, OSError) as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE)

    def run(self, **options):
        raise NotImplementedError('subclasses of KnowledgeBaseCommand must provide a run() method')

    def read_text(self, path: str) -> str:
        return Path(path).read_text(encoding='utf-8-sig')

    def load_kb(self, path: str) -> KnowledgeBase:
        return parse_kb(Path(path).read_bytes())

    def write_json(self, payload: Any) -> None:
        self.stdout.write(json.dumps(payload, indent=2))

    def parse_ids(self, value: str) -> list:
        return [item.strip() for item in value.split(',') if item.strip()] if value else []
