import sys

from tlbraid.cli import main

sys.exit(main())
