"""Entry point for ``python -m lacasse``."""

from .cli import main_entry

main_entry()
