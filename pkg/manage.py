#!/usr/bin/env python
"""Command-line entry point: run, metrics, replay and validate live here."""
import os
import sys


def main():
    # DATABASE_URL, DJANGO_SECRET_KEY and CAM_LOG_LEVEL may come from .env
    import dotenv
    dotenv.read_dotenv()

    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'camsim.settings')

    from django.core.management import execute_from_command_line

    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
