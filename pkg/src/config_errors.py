"""Turn a pydantic-settings ValidationError into a clear command-line diagnostic.

Configuration comes from command-line flags, so every offending field is
reported under the flag that sets it (``max_steps`` -> ``--max-steps``) and
the process exits with the usage-error status instead of printing a raw
pydantic traceback.
"""

import sys
from typing import Callable, TypeVar

from pydantic import ValidationError

T = TypeVar("T")

USAGE_ERROR_STATUS = 2


def flag_name(field: str) -> str:
    """The command-line flag that sets a configuration field."""
    return "--" + field.replace("_", "-")


def load_settings_or_exit(factory: Callable[[], T]) -> T:
    """Build a settings object via `factory`.

    On a ValidationError, print one line per offending option to stderr and
    exit with status 2. Any other exception propagates unchanged.
    """
    try:
        return factory()
    except ValidationError as exc:
        lines = ["Invalid option(s):"]
        for err in exc.errors():
            name = flag_name(str(err["loc"][0])) if err.get("loc") else "?"
            lines.append(f"  {name}: {err.get('msg')}")
        print("\n".join(lines), file=sys.stderr)
        raise SystemExit(USAGE_ERROR_STATUS) from None
