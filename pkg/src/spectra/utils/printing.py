import os
import socket
from datetime import datetime
from spectra.utils.logging import RaiseError, UsageError


global quiet
quiet = False

def SetQuiet(flag):
    global quiet
    quiet = bool(flag)

BANNER = """
##################################################################################
                                 ~ SPECTRA ~
                              [ version {version} ]

   Laplace eigenvalues on planar domains: finite elements, boundary integrals and
              particular solutions, with eigenvalue enclosures

##################################################################################
"""

def PrintJobDetails(version):
    if quiet:
        return
    print(BANNER.format(version=version))
    now       = datetime.now()
    date      = now.strftime("%A %d %B %Y")
    time      = now.strftime("%H:%M:%S")
    hostname  = socket.gethostname()
    print(f"SPECTRA: {'Toolkit version':<30} {version:>42}")
    print(f"SPECTRA: {'Job started on':<30} {date:>42}")
    print(f"SPECTRA: {'Job started at':<30} {time:>42}")
    print(f"SPECTRA: {'Job running on':<30} {hostname:>42}")
    print(f"SPECTRA: {'Process ID':<30} {str(os.getpid()):>42}")

def PrintOnTerminal(msg=None,duration=None,msgLength=None):
    if quiet:
        return
    if isinstance(msg,str):
        print(f"SPECTRA: {msg}",end="")
    elif isinstance(duration,float) and isinstance(msgLength,int):
        fieldSize = 73 - msgLength
        print(f"{duration:>{fieldSize}.6f}")
    else:
        RaiseError(message=" Program cannot print information on standard output terminal ",error=UsageError)

def PrintLine(msg):
    if not quiet:
        print(f"SPECTRA: {msg}")

def PrintTable(header,rows,width=18):
    """
    Prints a small right-aligned table, one SPECTRA-prefixed line per row.

    Parameters:
    - header: list(str)  -> column titles
    - rows:   list(list) -> row values; floats are printed with 10 significant digits
    - width:  int        -> field width of every column
    """
    if quiet:
        return
    print("SPECTRA: " + " ".join(f"{h:>{width}}" for h in header))
    for row in rows:
        cells = list()
        for value in row:
            if isinstance(value,float):
                cells.append(f"{value:>{width}.10g}")
            else:
                cells.append(f"{str(value):>{width}}")
        print("SPECTRA: " + " ".join(cells))

def PrintGBMessage(status):
    if quiet:
        return
    print("")
    print("*"*82)
    print(f"SPECTRA: finished with exit status {status}")
    print("*"*82)
