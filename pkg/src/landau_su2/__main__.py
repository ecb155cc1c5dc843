import sys

from landau_su2.cli import main

sys.exit(main())
