"""Точка входа в приложение GridTriage.

Пример запуска:
    $ python -m gridtriage.main rank --wind 105
    $ gridtriage plan --wind 105 --targets 4,6,24
"""

import sys

from gridtriage.cli import run


def main() -> None:
    """Запускает CLI и завершает процесс с его кодом возврата."""
    sys.exit(run())


if __name__ == "__main__":
    main()
