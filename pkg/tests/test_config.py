"""Configuration loading and command-line overrides."""

import tempfile
import unittest
from pathlib import Path

from config import (
    get_default_experiment_config,
    get_experiment_config,
    load_config,
    parse_overrides,
    save_config,
)
from wflab.experiments import COMMANDS, ExperimentConfig

FIXTURES = Path(__file__).parent / "fixtures"


class OverrideCheck(unittest.TestCase):
    def test_forms(self):
        overrides = parse_overrides(["--grid_n", "32", "--max-freq=5", "--snapshots", "--seed", "4"])
        self.assertEqual(overrides, {"grid_n": "32", "max_freq": "5", "snapshots": "true", "seed": "4"})

    def test_negative_value_after_key(self):
        self.assertEqual(parse_overrides(["--z=-0.1,0,0,0,0,0,0,0,0,0"])["z"], "-0.1,0,0,0,0,0,0,0,0,0")

    def test_rejects_stray_token(self):
        with self.assertRaises(ValueError):
            parse_overrides(["32"])
        with self.assertRaises(ValueError):
            parse_overrides(["--"])


class FileConfigCheck(unittest.TestCase):
    def test_missing_file_is_created(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "nested" / "experiment.cfg"
            config = load_config(path, get_default_experiment_config())
            self.assertTrue(path.exists())
            self.assertEqual(config, get_default_experiment_config())
            self.assertIn("variant=moebius\n", path.read_text())

    def test_save_and_load(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "run.cfg"
            save_config(path, {"grid_n": 48, "parallel": True, "z": None})
            loaded = load_config(path, {})
            self.assertEqual(loaded, {"grid_n": "48", "parallel": "true", "z": ""})
            self.assertFalse(path.with_suffix(".cfg.tmp").exists())

    def test_fixture_resolves(self):
        config = get_experiment_config(FIXTURES / "experiment.cfg", {"command": "equilibria", "z_count": "2"})
        self.assertEqual(config["grid_n"], "32")
        self.assertEqual(config["z_count"], "2")
        cfg = ExperimentConfig.from_dict(config)
        self.assertEqual(cfg.grid_n, 32)
        self.assertEqual(cfg.flow.variant, "classical")
        self.assertAlmostEqual(cfg.z.norm, 0.05)
        self.assertFalse(cfg.parallel)

    def test_defaults_without_file(self):
        config = get_experiment_config(overrides={"seed": "11"})
        self.assertEqual(config["seed"], "11")
        self.assertEqual(config["t_end"], 20.0)

    def test_defaults_build_every_command(self):
        for command in COMMANDS:
            with self.subTest(command=command):
                cfg = ExperimentConfig.from_dict(dict(get_default_experiment_config(), command=command))
                self.assertEqual(cfg.snapshot_every, 50)
                self.assertEqual(cfg.to_dict()["snapshot_every"], 50)


if __name__ == '__main__':
    unittest.main()
