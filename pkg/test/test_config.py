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
import os
import shutil
import tempfile
import unittest

import yaml
from tightmaps.config import DEFAULT_CONFIG, TightmapsConfig


class TestTightmapsConfig(unittest.TestCase):
    def setUp(self):
        """Set up test environment before each test."""
        self.test_dir = tempfile.mkdtemp()
        self.config = {
            "decomposition": {"seed": 7},
            "enumeration": {"default_bounds": 2},
            "logging": {"level": "debug", "log_dir": os.path.join(self.test_dir, "logs")},
        }
        self.config_path = os.path.join(self.test_dir, "tightmaps_config.yaml")
        with open(self.config_path, "w") as f:
            yaml.dump(self.config, f)

    def tearDown(self):
        """Clean up after each test."""
        shutil.rmtree(self.test_dir)

    def test_overlay_on_defaults(self):
        """Test that file values override defaults and missing keys keep them."""
        config = TightmapsConfig(config_path=self.config_path)
        self.assertEqual(config.seed, 7)
        self.assertEqual(config.max_draws, 64)
        self.assertEqual(config.default_bounds, 2)
        self.assertEqual(config.indent, 2)
        self.assertEqual(config.log_level, "DEBUG")
        self.assertEqual(
            config.log_path, os.path.join(self.test_dir, "logs", "tightmaps.log")
        )
        self.assertEqual(config.backup_count, 5)

    def test_missing_file_uses_defaults(self):
        """Test that a missing file gives the defaults and logs a warning."""
        missing = os.path.join(self.test_dir, "absent.yaml")
        with self.assertLogs("tightmaps.config", level="WARNING") as logs:
            config = TightmapsConfig(config_path=missing)
        self.assertIn("not found", logs.output[0])
        self.assertEqual(config.config, DEFAULT_CONFIG)
        self.assertIsNone(config.default_bounds)
        self.assertEqual(config.max_bytes, 1024 * 1024)

    def test_defaults_are_not_shared(self):
        """Test that loading a file leaves the module defaults untouched."""
        TightmapsConfig(config_path=self.config_path)
        self.assertEqual(DEFAULT_CONFIG["decomposition"]["seed"], 0)

    def test_unknown_section_is_ignored(self):
        """Test that an unknown section only triggers a warning."""
        with open(self.config_path, "w") as f:
            yaml.dump({"zenodo": {"token": "x"}, "report": {"indent": 4}}, f)
        with self.assertLogs("tightmaps.config", level="WARNING"):
            config = TightmapsConfig(config_path=self.config_path)
        self.assertEqual(config.indent, 4)
        self.assertNotIn("zenodo", config.config)

    def test_invalid_files(self):
        """Test that non-mapping files and sections raise ValueError."""
        with open(self.config_path, "w") as f:
            yaml.dump(["seed", 1], f)
        with self.assertRaises(ValueError):
            TightmapsConfig(config_path=self.config_path)
        with open(self.config_path, "w") as f:
            yaml.dump({"decomposition": 3}, f)
        with self.assertRaises(ValueError):
            TightmapsConfig(config_path=self.config_path)

    def test_empty_file(self):
        """Test that an empty file behaves like the defaults."""
        open(self.config_path, "w").close()
        config = TightmapsConfig(config_path=self.config_path)
        self.assertEqual(config.seed, 0)


if __name__ == "__main__":  # pragma: no cover
    unittest.main()
