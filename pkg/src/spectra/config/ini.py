import os
from configparser import ConfigParser
from spectra.utils.logging import RaiseError, UsageError


global keys
keys                = ["domain","domain2","method","bc","count","levels","n","eps","k","index","bracket",
                       "step","corners","basis","seed","threads","out","cluster","split","variant"]
mandatory_sections  = ["run"]

def check_config(config_file):
    """Validates an optional spectra.ini: one [run] section whose keys are long flag names."""
    if not os.path.isfile(config_file):
        RaiseError(message=f"{config_file} file not found",error=UsageError)
    config = ConfigParser()
    config.read(config_file)
    config_sections = set(config.sections())
    if config_sections != set(mandatory_sections):
        RaiseError(message=f"Sections {sorted(config_sections)} in {config_file}, expected exactly {mandatory_sections}",error=UsageError)
    for key in config["run"]:
        if key not in keys:
            RaiseError(message=f"Unknown key [{key}] in {config_file}",error=UsageError)
    return config
