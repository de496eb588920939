"""
Management command for an interactive navigation session.
Usage: python manage.py session kb.ckb --log nav.csv [--user 5] [--k 3] [--clusters 2]

Type a constraint id to mark it visited; after each step the session
prints the constraint's cluster, its refactoring suggestion and the
recommended next constraint. `quit` ends the session and offers to
append it to the navigation log.
"""

import sys

from clustering.services import cluster_knowledge_base
from kbtool.commands import KnowledgeBaseCommand
from knowledge_base.parser import format_expr
from navigation.exceptions import EmptySessionError, NavigationLogError, NoCandidatesError
from navigation.log_service import append_session, parse_navigation_log
from navigation.models import SessionState
from navigation.services import recommend_next
from refactoring.services import recommend

QUIT_COMMANDS = {'quit', 'exit', 'q'}


class Command(KnowledgeBaseCommand):
    help = 'Walk through a knowledge base with constraint recommendations'
    stealth_options = ('stdin',)

    def add_arguments(self, parser):
        parser.add_argument('kb', type=str, help='Knowledge base file (.ckb)')
        parser.add_argument('--log', type=str, required=True, help='Navigation log (CSV: user,constraint,rank)')
        parser.add_argument('--user', type=str, help='User id for the appended session (default: next free id)')
        parser.add_argument('--k', type=int, help='Number of neighbors (default: KBTOOL_CF_NEIGHBORS)')
        parser.add_argument('--clusters', type=int, default=2, help='Number of constraint clusters (default: 2)')
        parser.add_argument('--seed', type=int, help='Seed for the clustering (default: KBTOOL_SEED)')
        parser.add_argument('--append', action='store_true', help='Append the session without asking')

    def run(self, **options):
        self.stdin = options.get('stdin') or sys.stdin
        kb = self.load_kb(options['kb'])
        log = parse_navigation_log(self.read_text(options['log']), known_constraints=kb.constraint_ids)
        user = options['user'] or log.next_user_id()
        if user in log.users:
            raise NavigationLogError(f"user {user} already has a session in {options['log']}")
        clustering = None
        if kb.constraints:
            clustering = cluster_knowledge_base(
                kb, min(max(options['clusters'], 1), len(kb.constraints)), seed=options['seed']
            )

        session = SessionState()
        self.stdout.write(
            f"Session for user {user}: {len(kb.constraints)} constraints, {len(log)} logged users. "
            "Enter a constraint id or 'quit'."
        )
        while True:
            line = self.prompt('> ')
            if line is None or line.lower() in QUIT_COMMANDS:
                break
            if not line:
                continue
            if not kb.has_constraint(line):
                self.stderr.write(self.style.WARNING(f"Unknown constraint '{line}'"))
                continue
            if line in session:
                self.stderr.write(self.style.WARNING(f"'{line}' was already visited"))
                continue

            session = session.visit(line)
            self.describe(kb, line, clustering)
            self.show_recommendation(log, session, kb, options['k'])

        self.finish(session, user, options)

    def prompt(self, text: str):
        self.stdout.write(text, ending='')
        self.stdout.flush()
        line = self.stdin.readline()
        return line.strip() if line else None

    def describe(self, kb, constraint_id: str, clustering):
        constraint = kb.constraint(constraint_id)
        self.stdout.write(f"{constraint_id}: {format_expr(constraint.expr)}")
        if clustering is not None:
            cluster = clustering.cluster_of(constraint_id)
            members = ', '.join(clustering.clusters()[cluster])
            self.stdout.write(f"  cluster {cluster + 1}: {members}")
        suggestion = recommend(constraint, kb.variable_names)
        if suggestion is None:
            self.stdout.write('  no refactoring suggested')
        else:
            self.stdout.write(
                f"  refactor ({suggestion.matched.key} -> {suggestion.target.key}, "
                f"-{suggestion.score_delta} points): {format_expr(suggestion.rewritten)}"
            )

    def show_recommendation(self, log, session, kb, k):
        try:
            recommendation = recommend_next(log, session, k=k, order=kb.constraint_ids)
        except (NoCandidatesError, EmptySessionError):
            self.stdout.write('no recommendation')
            return
        votes = ', '.join(f"{cid}:{count}" for cid, count in recommendation.votes.items())
        self.stdout.write(f"next: {recommendation.constraint_id} (votes {votes})")

    def finish(self, session, user: str, options):
        if not session.visited:
            return
        append = options['append']
        if not append:
            answer = self.prompt(f"Append this session to {options['log']} as user {user}? [y/N] ")
            append = (answer or '').lower() in {'y', 'yes'}
        if append:
            append_session(options['log'], user, session.visited)
            self.stdout.write(self.style.SUCCESS(f"Appended {len(session)} visit(s) for user {user}"))
