#!/usr/bin/python
# -*- coding: utf-8 -*-
# Copyright 2025 Arcangelo Massari <arcangelo.massari@unibo.it>
#
# Permission to use, copy, modify, and/or distribute this software for any purpose
# with or without fee is hereby granted, provided that the above copyright notice
# and this permission notice appear in all copies.
#
# THE SOFTWARE IS PROVIDED 'AS IS' AND THE AUTHOR DISCLAIMS ALL WARRANTIES WITH
# REGARD TO THIS SOFTWARE INCLUDING ALL IMPLIED WARRANTIES OF MERCHANTABILITY AND
# FITNESS. IN NO EVENT SHALL THE AUTHOR BE LIABLE FOR ANY SPECIAL, DIRECT, INDIRECT,
# OR CONSEQUENTIAL DAMAGES OR ANY DAMAGES WHATSOEVER RESULTING FROM LOSS OF USE,
# DATA OR PROFITS, WHETHER IN AN ACTION OF CONTRACT, NEGLIGENCE OR OTHER TORTIOUS
# ACTION, ARISING OUT OF OR IN CONNECTION WITH THE USE OR PERFORMANCE OF THIS
# SOFTWARE.
import copy
import logging
import os
from typing import Optional

import yaml

# Configure logging
logger = logging.getLogger(__name__)

DEFAULT_CONFIG = {
    "decomposition": {"seed": 0, "max_draws": 64},
    "enumeration": {"default_bounds": None},
    "report": {"indent": 2},
    "logging": {
        "level": "INFO",
        "log_dir": "logs",
        "log_file": "tightmaps.log",
        "max_bytes": 1024 * 1024,
        "backup_count": 5,
    },
}


class TightmapsConfig:
    """Settings for decomposition draws, enumeration bounds, reports and logging."""

    def __init__(self, config_path: str = "tightmaps_config.yaml"):
        """Load the configuration, falling back to defaults for missing keys.

        Args:
            config_path: Path to the YAML configuration file
        """
        self.config_path = config_path
        self.config = self._load_config()

    def _load_config(self) -> dict:
        """Overlay the configuration file on the defaults.

        Raises:
            ValueError: If the file is not a mapping of sections
        """
        config = copy.deepcopy(DEFAULT_CONFIG)
        if not os.path.exists(self.config_path):
            logger.warning(f"Config file {self.config_path} not found, using defaults")
            return config
        with open(self.config_path, encoding="utf-8") as f:
            loaded = yaml.safe_load(f) or {}
        if not isinstance(loaded, dict):
            raise ValueError(f"{self.config_path} must contain a mapping of sections")
        for section, values in loaded.items():
            if section not in config:
                logger.warning(f"Ignoring unknown config section {section!r}")
                continue
            if not isinstance(values, dict):
                raise ValueError(f"config section {section!r} must be a mapping")
            config[section].update(values)
        return config

    @property
    def seed(self) -> int:
        return int(self.config["decomposition"]["seed"])

    @property
    def max_draws(self) -> int:
        return int(self.config["decomposition"]["max_draws"])

    @property
    def default_bounds(self) -> Optional[int]:
        bounds = self.config["enumeration"]["default_bounds"]
        return None if bounds is None else int(bounds)

    @property
    def indent(self) -> int:
        return int(self.config["report"]["indent"])

    @property
    def log_level(self) -> str:
        return str(self.config["logging"]["level"]).upper()

    @property
    def log_path(self) -> str:
        settings = self.config["logging"]
        return os.path.join(settings["log_dir"], settings["log_file"])

    @property
    def max_bytes(self) -> int:
        return int(self.config["logging"]["max_bytes"])

    @property
    def backup_count(self) -> int:
        return int(self.config["logging"]["backup_count"])
