import sys
from spectra.controllers.tasks import main


sys.exit(main())
