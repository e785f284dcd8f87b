"""Exact GKZ A-hypergeometric systems.

Jobs are plain dicts in the same JSON shape the ``gkz`` command line tool
reads; every command returns the decoded report dict.
"""

import json

from ._gkz import (
    ConfigError,
    GenericityError,
    GkzError,
    InconclusiveError,
    InternalError,
    ParseError,
    PreconditionError,
    commands,
    render,
)
from . import _gkz

__all__ = [
    "ConfigError",
    "GenericityError",
    "GkzError",
    "InconclusiveError",
    "InternalError",
    "ParseError",
    "PreconditionError",
    "commands",
    "render",
    "run",
    "analyze",
    "triangulate",
    "series",
    "logbasis",
    "verify",
    "contiguity",
    "restrict",
]


def run(command, job, **options):
    """Run ``command`` on a job (or a previous report) and return the report.

    Keyword options are merged into the job, e.g. ``truncation=12``.
    """
    doc = dict(job)
    if options:
        if "job" in doc:
            doc["job"] = {**doc["job"], **options}
        else:
            doc.update(options)
    text, code = _gkz.run(command, json.dumps(doc))
    report = json.loads(text)
    report["exit_code"] = code
    return report


def _command(name):
    def call(job, **options):
        return run(name, job, **options)

    call.__name__ = name
    call.__doc__ = f"Run the ``{name}`` command; see :func:`run`."
    return call


analyze = _command("analyze")
triangulate = _command("triangulate")
series = _command("series")
logbasis = _command("logbasis")
verify = _command("verify")
contiguity = _command("contiguity")
restrict = _command("restrict")
