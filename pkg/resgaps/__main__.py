import sys

from resgaps.cli import main

sys.exit(main())
