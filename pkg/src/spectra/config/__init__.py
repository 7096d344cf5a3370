from spectra.config.ini import check_config
from spectra.config.user_inputs import RunConfig, read_cmd_args, read_config, compatibility
