"""python -m whittaker_hecke"""

import sys

from .cli import main

sys.exit(main())
