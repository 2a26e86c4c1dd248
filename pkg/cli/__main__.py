"""
Run engine commands without manage.py: python -m cli green "GBP(...)".
"""

import os
import sys


def main():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'greens_platform.settings')
    import django
    django.setup()

    from cli.runner import run_command
    sys.exit(run_command(sys.argv[1:]))


if __name__ == '__main__':
    main()
