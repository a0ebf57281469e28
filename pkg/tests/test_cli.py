"""
Unit tests for run configuration and the command-line subcommands.
"""
import io
import os
import sys
import tempfile
import unittest
from contextlib import redirect_stdout
from unittest import mock

import numpy as np
import pandas as pd
import yaml

# Add project root to path for imports
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

import main as cli_main
from src.cli.commands import cmd_convergence, cmd_curve, cmd_density, cmd_detect_jumps
from src.cli.run_config import build_run_config, parse_terms, resolve_config
from src.core.exceptions import ConfigError
from src.core.models import ContractKind, GridKind, JumpMode
from src.core.processes import HestonModel

BSM_DOC = {
    "model": {"kind": "bsm", "sigma": 0.15},
    "contract": {"kind": "put", "K": 100.0},
    "market": {"S0": 100.0, "r": 0.03, "T": 1.0},
    "method": {"U": [16, 32]},
    "output": {"reference": "analytic"},
}


class CliTestCase(unittest.TestCase):
    """Shared temporary directory helpers"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def path(self, name):
        return os.path.join(self.tmp.name, name)

    def write_yaml(self, document, name="run.yaml"):
        path = self.path(name)
        with open(path, "w", encoding="utf-8") as handle:
            yaml.safe_dump(document, handle)
        return path

    def run_main(self, *argv):
        with redirect_stdout(io.StringIO()):
            return cli_main.main(list(argv))


class TestRunConfig(CliTestCase):
    """Parsing and validation"""

    def test_preset(self):
        cfg = resolve_config(preset="bsm-para1")
        self.assertEqual(cfg.contract.kind, ContractKind.PUT)
        self.assertEqual(len(cfg.grid), 250)
        self.assertEqual(cfg.grid_kind, GridKind.STRIKE)
        self.assertEqual(cfg.terms, [8, 16, 32, 64])

    def test_spot_range_preset(self):
        cfg = resolve_config(preset="vg-para2")
        self.assertEqual(cfg.grid_kind, GridKind.SPOT)
        self.assertAlmostEqual(cfg.grid[-1], 2.0)
        self.assertEqual(cfg.reference, "cos")

    def test_overrides(self):
        path = self.write_yaml({"market": {"T": 2.0}})
        cfg = resolve_config(config_path=path, preset="bsm-para2", terms="8, 16", reference="cos")
        self.assertEqual(cfg.contract.T, 2.0)
        self.assertEqual(cfg.terms, [8, 16])
        self.assertEqual(cfg.reference, "cos")

    def test_heston_aliases(self):
        cfg = resolve_config(preset="heston-para1")
        self.assertIsInstance(cfg.model, HestonModel)
        self.assertEqual(cfg.L, 12)

    def test_explicit_jumps(self):
        doc = dict(BSM_DOC, method={"U": 16, "jumps": [0.0, 0.1]})
        cfg = build_run_config(doc)
        self.assertEqual(cfg.jumps, JumpMode.EXPLICIT)
        self.assertEqual(cfg.explicit_jumps, (0.0, 0.1))
        self.assertEqual(cfg.terms, [16])

    def test_missing_strike(self):
        doc = dict(BSM_DOC, contract={"kind": "put"})
        with self.assertRaises(ConfigError) as ctx:
            build_run_config(doc)
        self.assertEqual(ctx.exception.field, "contract")

    def test_strike_and_range(self):
        doc = dict(BSM_DOC, contract={"kind": "put", "K": 100.0, "K_range": [80, 120, 5]})
        with self.assertRaises(ConfigError):
            build_run_config(doc)

    def test_empty_terms(self):
        with self.assertRaises(ConfigError):
            build_run_config(dict(BSM_DOC, method={"U": []}))
        with self.assertRaises(ConfigError):
            parse_terms(" , ")

    def test_bad_values(self):
        with self.assertRaises(ConfigError):
            build_run_config(dict(BSM_DOC, contract={"kind": "straddle", "K": 100.0}))
        with self.assertRaises(ConfigError):
            build_run_config(dict(BSM_DOC, model={"kind": "bsm", "sigma": -1.0}))
        with self.assertRaises(ConfigError):
            build_run_config(dict(BSM_DOC, market={"S0": "abc", "T": 1.0}))

    def test_malformed_yaml(self):
        path = self.path("bad.yaml")
        with open(path, "w", encoding="utf-8") as handle:
            handle.write("model:\n  kind: bsm\n  sigma: [0.2\n")
        with self.assertRaises(ConfigError) as ctx:
            resolve_config(config_path=path)
        self.assertIn("line", str(ctx.exception))

    def test_no_configuration(self):
        with self.assertRaises(ConfigError):
            resolve_config()


class TestCommands(CliTestCase):
    """Subcommand output"""

    def test_convergence_csv(self):
        out = self.path("errors.csv")
        cfg = resolve_config(preset="bsm-para1", terms="16,32,64", out=out)
        frame = cmd_convergence(cfg)
        self.assertEqual(list(frame.columns), ["U", "r_inf", "r_2", "seconds"])
        self.assertTrue(np.all(np.diff(frame["r_inf"]) < 0))
        self.assertTrue(np.all(frame["r_inf"] <= frame["r_2"]))
        with open(out, encoding="utf-8") as handle:
            self.assertEqual(handle.readline().strip(), "# reference: analytic")
        loaded = pd.read_csv(out, comment="#")
        self.assertEqual(list(loaded["U"]), [16, 32, 64])

    def test_curve_is_deterministic(self):
        first, second = self.path("a.csv"), self.path("b.csv")
        for out in (first, second):
            cmd_curve(resolve_config(preset="bsm-para1", terms="32", out=out))
        with open(first, "rb") as a, open(second, "rb") as b:
            self.assertEqual(a.read(), b.read())
        frame = pd.read_csv(first, comment="#")
        self.assertEqual(len(frame), 250)

    def test_detect_jumps_smooth(self):
        path = self.write_yaml(BSM_DOC)
        out = self.path("jumps.csv")
        frame = cmd_detect_jumps(resolve_config(config_path=path, out=out))
        self.assertTrue(frame.empty)
        self.assertEqual(list(pd.read_csv(out, comment="#").columns), ["zeta", "magnitude"])

    def test_detect_jumps_short_maturity(self):
        out = self.path("para3.csv")
        frame = cmd_detect_jumps(resolve_config(preset="bsm-para3", out=out))
        self.assertEqual(len(frame), 1)
        # the collapsing density sits at its mean (r - sigma^2/2) T
        self.assertAlmostEqual(frame["zeta"][0], 0.04 * 1e-6, delta=1e-4)

    def test_density_mass_comment(self):
        path = self.write_yaml(dict(BSM_DOC, method={"U": 64}))
        out = self.path("density.csv")
        frame = cmd_density(resolve_config(config_path=path, out=out))
        self.assertEqual(len(frame), 1024)
        with open(out, encoding="utf-8") as handle:
            header = handle.readline()
        mass = float(header.rsplit("mass=", 1)[1])
        self.assertAlmostEqual(mass, 1.0, places=6)


class TestMain(CliTestCase):
    """Exit codes"""

    def test_price_success(self):
        out = self.path("price.csv")
        code = self.run_main("price", "--preset", "heston-para1", "--terms", "128", "--out", out)
        self.assertEqual(code, 0)
        frame = pd.read_csv(out)
        self.assertAlmostEqual(frame["value"][0], 5.7851554534076321, delta=1e-7)
        self.assertIn("vega", frame.columns)

    def test_missing_strike_exit_code(self):
        path = self.write_yaml(dict(BSM_DOC, contract={"kind": "put"}))
        self.assertEqual(self.run_main("price", "--config", path), 2)

    def test_empty_terms_exit_code(self):
        path = self.write_yaml(dict(BSM_DOC, method={"U": []}))
        self.assertEqual(self.run_main("convergence", "--config", path), 2)

    def test_price_rejects_range(self):
        self.assertEqual(self.run_main("price", "--preset", "bsm-para1"), 2)

    def test_reference_unavailable(self):
        code = self.run_main("convergence", "--preset", "cgmy-para1", "--terms", "16", "--reference", "analytic")
        self.assertEqual(code, 3)

    def test_numerical_failure(self):
        path = self.write_yaml(dict(BSM_DOC, method={"U": 16, "L": 20}))
        self.assertEqual(self.run_main("price", "--config", path), 4)

    def test_unexpected_value_error_is_numerical(self):
        def broken(cfg):
            raise ValueError("operands could not be broadcast together")

        path = self.write_yaml(BSM_DOC)
        with mock.patch.dict(cli_main.COMMANDS, {"price": broken}):
            self.assertEqual(self.run_main("price", "--config", path), 4)

    def test_convergence_against_cos_on_spot_curve(self):
        out = self.path("vg.csv")
        code = self.run_main("convergence", "--preset", "vg-para2", "--terms", "32,64", "--out", out)
        self.assertEqual(code, 0)
        frame = pd.read_csv(out, comment="#")
        self.assertLess(frame["r_inf"].iloc[-1], 1e-8)

    def test_greeks_to_stdout(self):
        path = self.write_yaml(BSM_DOC)
        buffer = io.StringIO()
        with redirect_stdout(buffer):
            code = cli_main.main(["greeks", "--config", path])
        self.assertEqual(code, 0)
        frame = pd.read_csv(io.StringIO(buffer.getvalue()))
        self.assertEqual(list(frame.columns),
                         ["S0", "K", "value", "delta", "gamma", "value_ref", "delta_ref", "gamma_ref"])
        self.assertLess((frame["delta"] - frame["delta_ref"]).abs().max(), 1e-5)
        self.assertLess((frame["gamma"] - frame["gamma_ref"]).abs().max(), 1e-4)

    def test_greeks_without_closed_form(self):
        doc = dict(BSM_DOC, contract={"kind": "asymmetric-put", "K": 100.0, "n": 2})
        path = self.write_yaml(doc)
        buffer = io.StringIO()
        with redirect_stdout(buffer):
            code = cli_main.main(["greeks", "--config", path])
        self.assertEqual(code, 0)
        frame = pd.read_csv(io.StringIO(buffer.getvalue()))
        self.assertNotIn("delta_ref", frame.columns)


class TestRunTestsScript(unittest.TestCase):
    """Module selection in the repository test runner"""

    def test_selects_named_modules(self):
        import run_tests
        paths = run_tests.select_test_files(["sfp", "jumps"])
        self.assertEqual([os.path.basename(p) for p in paths], ["test_sfp.py", "test_jumps.py"])
        self.assertEqual(run_tests.select_test_files([]), [run_tests.TESTS_DIR])

    def test_unknown_module(self):
        import run_tests
        with self.assertRaises(SystemExit):
            run_tests.select_test_files(["nonexistent"])


if __name__ == '__main__':
    unittest.main()
