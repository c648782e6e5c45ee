import sys

from fasttau.cli import main

sys.exit(main())
