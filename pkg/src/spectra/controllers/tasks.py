import sys
import time
import logging
from spectra.config.user_inputs import read_cmd_args
from spectra.controllers.managers import run_solve, run_compare, run_sweep, run_bounds, run_validate
from spectra.utils.logging import SpectraError
from spectra.utils.printing import PrintJobDetails, PrintGBMessage, SetQuiet, PrintLine
from spectra.utils.defaults import VERSION


def task_controller(config):
    if (config.subcommand=="solve"):
        return run_solve(config)
    elif (config.subcommand=="compare"):
        return run_compare(config)
    elif (config.subcommand=="sweep"):
        return run_sweep(config)
    elif (config.subcommand=="bounds"):
        return run_bounds(config)
    elif (config.subcommand=="validate"):
        return run_validate(config)

def main(argv=None):
    """Command-line entry point; returns the exit status (0 success, 1 usage, 2 numerical quality, 3 validation)."""
    argv   = sys.argv[1:] if argv is None else argv
    logging.basicConfig(level=logging.WARNING,format="SPECTRA| %(levelname)s %(message)s")
    try:
        config = read_cmd_args(argv)
    except SystemExit as err:
        return 0 if err.code in (0,None) else 1
    except SpectraError as err:
        return err.exit_code
    SetQuiet(config.quiet)
    PrintJobDetails(VERSION)
    start  = time.time()
    status = 0
    try:
        task_controller(config)
    except SpectraError as err:
        PrintLine(f"{type(err).__name__}: {err}")
        status = err.exit_code
    PrintLine(f"Total time {time.time()-start:.3f} s")
    PrintGBMessage(status)
    return status

if __name__ == "__main__":
    sys.exit(main())
