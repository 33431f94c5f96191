from .config import (Config, OutputConfig, case_to_config, load_config,
                     parse_config)
from .main import (cmd_certificate, cmd_oracle, cmd_run, cmd_sweep_rho,
                   main)


__all__ = [
    "Config",
    "OutputConfig",
    "case_to_config",
    "cmd_certificate",
    "cmd_oracle",
    "cmd_run",
    "cmd_sweep_rho",
    "load_config",
    "main",
    "parse_config",
]
