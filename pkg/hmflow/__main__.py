import sys

from hmflow.cli import main

sys.exit(main())
