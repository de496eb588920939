"""
Management command to recommend the next constraint to inspect.
Usage: python manage.py recommend --log nav.csv --visited c5,c2 [--k 3] [--kb kb.ckb]
"""

from kbtool.commands import KnowledgeBaseCommand
from navigation.log_service import parse_navigation_log
from navigation.models import SessionState
from navigation.services import recommend_next


class Command(KnowledgeBaseCommand):
    help = "Recommend the next constraint from other engineers' navigation logs"

    def add_arguments(self, parser):
        parser.add_argument('--log', type=str, required=True, help='Navigation log (CSV: user,constraint,rank)')
        parser.add_argument('--visited', type=str, required=True, help='Comma-separated visited constraints')
        parser.add_argument('--k', type=int, help='Number of neighbors (default: KBTOOL_CF_NEIGHBORS)')
        parser.add_argument('--kb', type=str, help='Knowledge base giving the declaration order for ties')

    def run(self, **options):
        kb = self.load_kb(options['kb']) if options['kb'] else None
        log = parse_navigation_log(
            self.read_text(options['log']),
            known_constraints=kb.constraint_ids if kb is not None else None,
        )
        session = SessionState.of(self.parse_ids(options['visited']))
        recommendation = recommend_next(
            log,
            session,
            k=options['k'],
            order=kb.constraint_ids if kb is not None else None,
        )

        if options['json']:
            self.write_json(recommendation.to_dict())
            return

        self.stdout.write(recommendation.constraint_id)
        self.stdout.write('constraint  votes')
        for constraint_id, count in sorted(recommendation.votes.items(), key=lambda item: -item[1]):
            self.stdout.write(f"{constraint_id:<10}  {count}")
        neighbors = ', '.join(f"{n.user_id} ({n.distance})" for n in recommendation.neighbors)
        self.stdout.write(f"neighbors: {neighbors}")
