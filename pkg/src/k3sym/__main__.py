import sys

from k3sym.cli import main

sys.exit(main())
