import io
import os
import tempfile
import unittest

import pytest

import mixvol
from mixvol.config import Config

mixvol.set_stream_logger("test", level="INFO")


class TestConfig(unittest.TestCase):
    def test_defaults(self):
        config = Config(do_load=False)
        assert config.harness_int("coordinate_bound") == 8
        assert config.harness_ints("denominators") == [1, 2, 4]
        assert config.harness_float("degenerate_fraction") == 0.1
        assert config.harness_int("workers") == 1

    def test_partial_section_keeps_defaults(self):
        config = Config(fp=io.StringIO("[harness]\nworkers = 4\ndenominators = 1, 3\n"))
        assert config.harness_int("workers") == 4
        assert config.harness_ints("denominators") == [1, 3]
        assert config.harness_int("extra_points") == 4

    def test_path(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "mixvol.cfg")
            with open(path, "w") as f:
                f.write("[harness]\ncoordinate_bound = 3\n")
            assert Config(path=path).harness_int("coordinate_bound") == 3

    def test_malformed_value(self):
        config = Config(fp=io.StringIO("[harness]\nworkers = many\n"))
        with pytest.raises(ValueError):
            config.harness_int("workers")

    def test_library_wide_config(self):
        assert isinstance(mixvol.config, Config)
        assert mixvol.get_version() == mixvol.__version__
