"""
Navigation log import and export.

Logs are UTF-8 CSV with the header `user,constraint,rank` and one row per
visit, so Table-style rank matrices and tool sessions share one format.
"""

import csv
import io
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Union

from .exceptions import NavigationLogError
from .models import NavigationLog, user_sort_key

logger = logging.getLogger(__name__)

LOG_FIELDS = ['user', 'constraint', 'rank']


class NavigationLogParser:
    """
    Parses navigation log CSV into a NavigationLog.

    Constraint ids outside `known_constraints` are accepted (logs may
    mention retired constraints) and reported as warnings.
    """

    def __init__(self, known_constraints: Optional[Iterable[str]] = None):
        self.known_constraints = set(known_constraints) if known_constraints is not None else None

    def parse(self, source: Union[str, bytes]) -> NavigationLog:
        """
        Args:
            source: CSV text

        Returns:
            NavigationLog: Empty when the source has no data rows

        Raises:
            NavigationLogError: Missing columns, invalid or duplicate ranks,
                or a constraint ranked twice by one user
        """
        if isinstance(source, bytes):
            try:
                source = source.decode('utf-8-sig')
            except UnicodeDecodeError:
                raise NavigationLogError('navigation log is not valid UTF-8', line=1) from None
        source = source.removeprefix('\ufeff')
        if not source.strip():
            return NavigationLog()

        reader = csv.DictReader(io.StringIO(source))
        header = [name.strip().lower() for name in reader.fieldnames or []]
        missing = [name for name in LOG_FIELDS if name not in header]
        if missing:
            raise NavigationLogError(f"missing column(s): {', '.join(missing)}", line=1)

        users: Dict[str, Dict[str, int]] = {}
        ranks_seen: Dict[str, Dict[int, str]] = {}
        order: Dict[str, None] = {}
        warnings: List[str] = []

        for row in reader:
            line = reader.line_num
            record = {
                key.strip().lower(): (value or '').strip()
                for key, value in row.items()
                if key is not None
            }
            if not any(record.values()):
                continue
            user, constraint_id = record['user'], record['constraint']
            if not user or not constraint_id:
                raise NavigationLogError('user and constraint are required', line=line)
            rank = self._rank(record['rank'], line)

            ranks = users.setdefault(user, {})
            seen = ranks_seen.setdefault(user, {})
            if constraint_id in ranks:
                raise NavigationLogError(f"user {user} ranks {constraint_id} twice", line=line)
            if rank in seen:
                raise NavigationLogError(
                    f"user {user} gives rank {rank} to both {seen[rank]} and {constraint_id}", line=line
                )
            ranks[constraint_id] = rank
            seen[rank] = constraint_id
            order.setdefault(constraint_id)

            if self.known_constraints is not None and constraint_id not in self.known_constraints:
                warning = f"line {line}: unknown constraint '{constraint_id}' (user {user})"
                logger.warning(warning)
                warnings.append(warning)

        return NavigationLog(users=users, constraint_order=tuple(order), warnings=tuple(warnings))

    @staticmethod
    def _rank(text: str, line: int) -> int:
        try:
            rank = int(text)
        except ValueError:
            raise NavigationLogError(f"rank must be an integer, got {text!r}", line=line) from None
        if rank < 1:
            raise NavigationLogError(f"rank must be positive, got {rank}", line=line)
        return rank


def parse_navigation_log(source: Union[str, bytes],
                         known_constraints: Optional[Iterable[str]] = None) -> NavigationLog:
    return NavigationLogParser(known_constraints).parse(source)


def _rows(user: str, ranks: Dict[str, int]):
    for constraint_id in sorted(ranks, key=ranks.__getitem__):
        yield [user, constraint_id, ranks[constraint_id]]


def serialize_navigation_log(log: NavigationLog) -> str:
    """CSV text for a log: users in id order, each user's rows by rank."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(LOG_FIELDS)
    for user in sorted(log.users, key=user_sort_key):
        writer.writerows(_rows(user, log.users[user]))
    return buffer.getvalue()


def append_session(path: Union[str, Path], user: str, visited: Sequence[str]) -> int:
    """
    Append one session to a log file as rows ranked 1..n.
    The header is written when the file is new or empty.

    Returns:
        int: Number of rows written
    """
    path = Path(path)
    existing = path.read_text(encoding='utf-8-sig') if path.exists() else ''

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    if not existing.strip():
        writer.writerow(LOG_FIELDS)
    elif not existing.endswith('\n'):
        buffer.write('\n')
    writer.writerows(_rows(user, {cid: rank for rank, cid in enumerate(visited, start=1)}))

    mode = 'a' if existing.strip() else 'w'
    with path.open(mode, encoding='utf-8', newline='') as handle:
        handle.write(buffer.getvalue())
    logger.info(f"Appended {len(visited)} visit(s) for user {user} to {path}")
    return len(visited)
