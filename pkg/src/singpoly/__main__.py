import sys

from singpoly.cli import main

sys.exit(main())
