# This file is part of tapestry, licensed under the BSD-3-Clause License.
import os
import shutil
import tempfile
import textwrap
import unittest

import mock

from tapestry.algebra.expr import EXCLUSIVE, Primitive, Sum
from tapestry.core.exceptions import (
    ConfigError,
    DuplicatePrimitiveError,
    ExpressionSyntaxError,
    MissingFieldError,
    UnknownPrimitiveError,
)
from tapestry.engine.config import EXHAUSTIVE, SAMPLED
from tapestry.kernels.greens import LATTICE, TABULATED
from tapestry.util.config import SEED_ENV, LineIndex, load_config, parse_config

MINIMAL = textwrap.dedent(
    """\
    [lattice]
    extent = 5

    [primitive:a]

    [process]
    expression = a
    """
)

FULL = textwrap.dedent(
    """\
    # Two tagged primitives on a small 1-D lattice
    [lattice]
    dimension = 1
    extent = 9
    spacing = 0.5
    tau = 0.25
    c_hat = 4

    [primitive:up]
    properties = spin=up
    kernel = lattice

    [primitive:down]
    properties = spin=down
    n = 2

    [process]
    expression = 0.5*up (+) [1j]*down
    regime = sampled
    n = 1
    seed = 42
    ticks = 3
    renormalize = no
    count = 20
    summand_weighting = born

    [initial]
    kind = gaussian
    sigma = 0.75
    k0 = 1

    [regions]
    left = -4, -1
    right = 1, 4

    [convergence]
    spacings = 0.4, 0.2
    ticks = 2
    kernel = lattice

    [output]
    directory = out
    """
)


def with_lines(*lines):
    return "\n".join(lines) + "\n"


class TestParseConfig(unittest.TestCase):
    def test_defaults(self):
        with mock.patch.dict(os.environ, clear=True):
            config = parse_config(MINIMAL)
        self.assertEqual(config.lattice.extent, (5,))
        self.assertEqual(config.lattice.spacing, 1.0)
        self.assertEqual(config.lattice.tau, 1.0)
        self.assertEqual(config.process, Primitive("a"))
        self.assertEqual((config.regime, config.n, config.seed, config.ticks), (EXHAUSTIVE, 1, 0, 1))
        self.assertEqual((config.count, config.budget, config.max_redraws), (100, 10000, 64))
        self.assertTrue(config.renormalize)
        self.assertEqual(config.output, ".")
        self.assertIsNone(config.convergence)
        self.assertEqual(config.region_list(), [])
        initial = config.initial_tapestry()
        self.assertEqual([n.site for n in initial], [(0,)])

    def test_full(self):
        config = parse_config(FULL)
        self.assertEqual(config.lattice.c_hat, 4.0)
        self.assertEqual(list(config.primitives), ["up", "down"])
        up = Primitive("up", {"spin": "up"}, kernel=LATTICE)
        down = Primitive("down", {"spin": "down"}, n=2)
        self.assertEqual(config.process, Sum(EXCLUSIVE, [(0.5, up), (1j, down)]))
        cfg = config.generation_config()
        self.assertEqual((cfg.regime, cfg.seed, cfg.renormalize, cfg.summand_weighting), (SAMPLED, 42, False, "born"))
        self.assertEqual(config.ticks, 3)
        self.assertEqual(config.count, 20)
        self.assertAlmostEqual(config.initial_tapestry().norm(config.lattice), 1.0)
        self.assertEqual([(r.name, len(r)) for r in config.region_list()], [("left", 4), ("right", 4)])
        convergence = config.convergence_config()
        self.assertEqual(convergence.spacings, [0.4, 0.2])
        self.assertEqual(convergence.ticks, 2)
        self.assertEqual(config.output, "out")

    def test_render_round_trip(self):
        for text in (MINIMAL, FULL):
            config = parse_config(text)
            self.assertEqual(parse_config(config.render()), config)
            self.assertEqual(parse_config(config.render()).render(), config.render())

    def test_with_overrides(self):
        config = parse_config(FULL)
        overridden = config.with_overrides(seed=7, output="elsewhere")
        self.assertEqual((overridden.seed, overridden.output), (7, "elsewhere"))
        self.assertEqual((config.seed, config.output), (42, "out"))
        self.assertIs(config.with_overrides().process, config.process)


class TestSeed(unittest.TestCase):
    def test_environment(self):
        with mock.patch.dict(os.environ, {SEED_ENV: "123"}):
            self.assertEqual(parse_config(MINIMAL).seed, 123)
            # An explicit seed wins
            self.assertEqual(parse_config(FULL).seed, 42)

    def test_invalid_environment(self):
        with mock.patch.dict(os.environ, {SEED_ENV: "lucky"}):
            with self.assertRaises(ConfigError):
                parse_config(MINIMAL)


class TestConfigErrors(unittest.TestCase):
    def assertConfigError(self, text, error_class=ConfigError, lineno=None):
        with self.assertRaises(error_class) as context:
            parse_config(text)
        self.assertEqual(context.exception.exit_code, 10)
        if lineno is not None:
            self.assertEqual(context.exception.lineno, lineno)
        return context.exception

    def test_missing_fields(self):
        self.assertConfigError(with_lines("[lattice]", "spacing = 1", "[primitive:a]", "[process]", "expression = a"),
                               MissingFieldError, lineno=1)
        self.assertConfigError(with_lines("[primitive:a]", "[process]", "expression = a"), MissingFieldError)
        self.assertConfigError(with_lines("[lattice]", "extent = 3", "[process]", "expression = a"), MissingFieldError)
        self.assertConfigError(with_lines("[lattice]", "extent = 3", "[primitive:a]"), MissingFieldError)
        self.assertConfigError(with_lines("[lattice]", "extent = 3", "[primitive:a]", "[process]", "n = 2"),
                               MissingFieldError, lineno=4)

    def test_unknown_primitive(self):
        error = self.assertConfigError(MINIMAL.replace("expression = a", "expression = a (+) b"),
                                       UnknownPrimitiveError, lineno=7)
        self.assertIn("b", str(error))

    def test_expression_syntax(self):
        self.assertConfigError(MINIMAL.replace("expression = a", "expression = a (+)"), ExpressionSyntaxError, 7)

    def test_duplicate_primitive(self):
        text = MINIMAL.replace("[process]", "[primitive:a]\nn = 2\n\n[process]")
        self.assertConfigError(text, DuplicatePrimitiveError, lineno=6)

    def test_layout(self):
        self.assertConfigError(MINIMAL + "\n[plots]\nwidth = 3\n", lineno=9)
        self.assertConfigError(MINIMAL.replace("extent = 5", "extent = 5\ncolour = red"), lineno=3)
        self.assertConfigError(MINIMAL.replace("[primitive:a]", "[primitive:x]").replace("= a", "= x"), lineno=4)
        self.assertConfigError(MINIMAL.replace("extent = 5", "extent = 5\nextent = 7"), lineno=3)
        self.assertConfigError("extent = 5\n" + MINIMAL, lineno=1)

    def test_values(self):
        invalid_cases = (
            ("extent = 5", "extent = 5\nspacing = fast", 3),
            ("expression = a", "expression = a\nregime = lazy", 8),
            ("expression = a", "expression = a\nticks = 0", 8),
            ("expression = a", "expression = a\nrenormalize = maybe", 8),
            ("expression = a", "expression = a\nmax_redraws = -1", 8),
            ("[primitive:a]", "[primitive:a]\nn = 0", 5),
            ("[primitive:a]", "[primitive:a]\nkernel = heat", 5),
            ("[primitive:a]", "[primitive:a]\nproperties = spin", 5),
        )
        for old, new, lineno in invalid_cases:
            self.assertConfigError(MINIMAL.replace(old, new), lineno=lineno)

    def test_lattice_values(self):
        invalid_cases = (
            ("extent = 5", "extent = 0", 2),
            ("extent = 5", "extent = 5\nspacing = -0.5", 3),
            ("extent = 5", "extent = 5\ntau = 0.5\nc_hat = 0", 4),
            ("extent = 5", "dimension = 4\nextent = 5", 2),
            ("extent = 5", "dimension = 2\nextent = 5 5 5", 3),
        )
        for old, new, lineno in invalid_cases:
            error = self.assertConfigError(MINIMAL.replace(old, new), lineno=lineno)
            self.assertIn("[lattice]", str(error))

    def test_initial_site(self):
        self.assertConfigError(MINIMAL + "\n[initial]\nsite = 3\n", lineno=10)
        self.assertConfigError(MINIMAL + "\n[initial]\nkind = plane\n", lineno=10)

    def test_regions(self):
        self.assertConfigError(MINIMAL + "\n[regions]\nleft = -2 0, -1 0\n", lineno=10)
        self.assertConfigError(MINIMAL + "\n[regions]\nleft = -2\n", lineno=10)

    def test_convergence(self):
        self.assertConfigError(MINIMAL + "\n[convergence]\nkernel = tabulated\n", lineno=10)
        self.assertConfigError(MINIMAL + "\n[convergence]\nspacings = 0.1\n", lineno=9)


class TestTables(unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def write(self, name, text):
        path = os.path.join(self.directory, name)
        with open(path, "w") as fp:
            fp.write(text)
        return path

    def test_tabulated_primitive(self):
        self.write("hop.tsv", "# offset re im\n0 0.5 0\n1 0.25 0\n-1 0.25 0\n")
        text = MINIMAL.replace("[primitive:a]", "[primitive:a]\nkernel = tabulated\ntable = hop.tsv")
        path = self.write("run.ini", text)
        config, loaded = load_config(path)
        self.assertEqual(loaded, text)
        self.assertEqual(config.process.kernel, TABULATED)
        self.assertEqual(config.process.table, {(0,): 0.5, (1,): 0.25, (-1,): 0.25})

    def test_table_errors(self):
        missing = MINIMAL.replace("[primitive:a]", "[primitive:a]\nkernel = tabulated")
        with self.assertRaises(MissingFieldError):
            parse_config(missing, self.directory)
        absent = MINIMAL.replace("[primitive:a]", "[primitive:a]\nkernel = tabulated\ntable = nowhere.tsv")
        with self.assertRaises(ConfigError) as context:
            parse_config(absent, self.directory)
        self.assertEqual(context.exception.lineno, 6)
        self.write("bad.tsv", "0 1\n")
        with self.assertRaises(ConfigError):
            parse_config(absent.replace("nowhere", "bad"), self.directory)

    def test_missing_file(self):
        with self.assertRaises(ConfigError):
            load_config(os.path.join(self.directory, "absent.ini"))


class TestLineIndex(unittest.TestCase):
    def test_lines(self):
        lines = LineIndex(FULL)
        self.assertEqual(lines.section("lattice"), 2)
        self.assertEqual(lines.key("lattice", "spacing"), 5)
        self.assertEqual(lines.key("process", "seed"), 21)
        # Unknown keys fall back to the section header
        self.assertEqual(lines.key("process", "budget"), 17)
        self.assertIsNone(lines.section("plots"))
