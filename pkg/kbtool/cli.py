"""
Single entry point for the kbtool command line.

Subcommands are Django management commands contributed by the apps
(validate, sim, cluster, recommend, refactor, solve, conflict, session,
generate). `run` returns the process exit code:

    0  success
    1  domain result (UNSAT, conflict found)
    2  usage or parse error
"""

import os
import sys
from typing import Sequence

SUBCOMMANDS = (
    'validate', 'sim', 'cluster', 'recommend', 'refactor',
    'solve', 'conflict', 'session', 'generate',
)


def run(argv: Sequence[str]) -> int:
    """
    Dispatch one subcommand and return its exit code.

    Args:
        argv: Arguments without the program name, e.g. ['solve', 'kb.ckb']

    Returns:
        int: Exit code following the 0/1/2 contract
    """
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'kbtool.settings')
    from django.core.management import ManagementUtility

    argv = list(argv)
    if not argv or argv[0] not in SUBCOMMANDS:
        known = ', '.join(SUBCOMMANDS)
        sys.stderr.write(f"usage: kbtool <subcommand> [options]\nsubcommands: {known}\n")
        return 2

    try:
        ManagementUtility(['kbtool', *argv]).execute()
    except SystemExit as exc:
        if exc.code is None:
            return 0
        if isinstance(exc.code, int):
            return exc.code
        return 2
    return 0
