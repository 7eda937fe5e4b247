"""``python -m fgtorus`` runs the fg command line."""

import sys

from .cli import main

sys.exit(main())
