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
import io
import json
import os
import shutil
import tempfile
import unittest
from unittest.mock import patch

import yaml
from scripts.run_tightmaps import build_parser, main


class TestRunTightmaps(unittest.TestCase):
    def setUp(self):
        """Set up test environment before each test."""
        self.test_dir = tempfile.mkdtemp()
        self.config_path = os.path.join(self.test_dir, "tightmaps_config.yaml")
        with open(self.config_path, "w") as f:
            yaml.dump({"logging": {"log_dir": os.path.join(self.test_dir, "logs")}}, f)

    def tearDown(self):
        """Clean up after each test."""
        shutil.rmtree(self.test_dir)

    def _main(self, *argv):
        with patch("scripts.run_tightmaps.configure_logging"), patch(
            "sys.stdout", new_callable=io.StringIO
        ) as stdout:
            with self.assertRaises(SystemExit) as cm:
                main(list(argv) + ["--config", self.config_path])
        return cm.exception.code, stdout.getvalue()

    def test_parser_defaults(self):
        """Test the flags of the command line."""
        args = build_parser().parse_args(["enumerate", "su", "2", "2", "--bounds", "1"])
        self.assertEqual(args.command, "enumerate")
        self.assertEqual(args.arguments, ["su", "2", "2"])
        self.assertEqual(args.bounds, 1)
        self.assertIsNone(args.seed)
        self.assertFalse(args.expect_tight)

    def test_certify_prints_json(self):
        """Test that certify prints the report and exits with 0."""
        code, output = self._main("certify", "std(SP_TO_SU,2)", "--expect-tight")
        self.assertEqual(code, 0)
        report = json.loads(output)
        self.assertEqual(report["command"], "certify")
        self.assertTrue(report["payload"]["tight"])

    def test_negative_and_error_exit_codes(self):
        """Test the exit codes of a failed expectation and of bad input."""
        code, _ = self._main("certify", "std(SOSTAR_TO_SU,3)", "--expect-tight")
        self.assertEqual(code, 1)
        code, output = self._main("verify", "rho(")
        self.assertEqual(code, 2)
        self.assertIn("error", json.loads(output)["payload"])

    def test_unexpected_failure_exits_with_2(self):
        """Test that an unexpected exception is logged and exits with 2."""
        with patch("scripts.run_tightmaps.run", side_effect=RuntimeError("boom")):
            code, output = self._main("verify", "rho(1)")
        self.assertEqual(code, 2)
        self.assertEqual(output, "")


if __name__ == "__main__":  # pragma: no cover
    unittest.main()
