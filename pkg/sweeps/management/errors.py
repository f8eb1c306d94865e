"""Translate model and harness errors into command exit codes."""
from contextlib import contextmanager
from pathlib import Path

from django.core.management.base import CommandError
from rest_framework.exceptions import ValidationError

VALIDATION_EXIT = 2
IO_EXIT = 1


def format_validation_error(exc: ValidationError) -> str:
    detail = exc.detail
    if isinstance(detail, dict):
        parts = []
        for key, messages in detail.items():
            messages = messages if isinstance(messages, list) else [messages]
            text = '; '.join(str(m) for m in messages)
            parts.append(text if key == 'non_field_errors' else f"{key}: {text}")
        return '; '.join(parts)
    if isinstance(detail, list):
        return '; '.join(str(m) for m in detail)
    return str(detail)


@contextmanager
def command_errors():
    """Re-raise as ``CommandError``: bad input exits 2, I/O failure exits 1."""
    try:
        yield
    except ValidationError as e:
        raise CommandError(f"invalid configuration: {format_validation_error(e)}", returncode=VALIDATION_EXIT) from e
    except OSError as e:
        raise CommandError(f"I/O error: {e}", returncode=IO_EXIT) from e
    except ValueError as e:
        raise CommandError(str(e), returncode=VALIDATION_EXIT) from e


def read_config_file(path) -> str:
    if path is None:
        return ''
    return Path(path).read_text(encoding='utf-8')
