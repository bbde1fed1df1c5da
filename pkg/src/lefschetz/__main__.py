import sys

from lefschetz.cli import main

sys.exit(main())
