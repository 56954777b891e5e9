# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Run configuration files.

An INI document with a ``[lattice]`` section, one ``[primitive:<name>]`` section
per primitive process, a ``[process]`` section holding the expression over those
primitives, and optional ``[initial]``, ``[regions]``, ``[convergence]`` and
``[output]`` sections::

    [lattice]
    dimension = 1
    extent = 65
    spacing = 0.2

    [primitive:a]
    properties = spin=up

    [process]
    expression = a (+) 0.5 * a
    ticks = 4
"""
# stdlib
from argparse import ArgumentTypeError
from collections import OrderedDict
import configparser
import copy
import io
import logging
import os
import re
from typing import Callable, Dict, Iterator, List, Optional, Tuple, TypeVar

# tapestry
from tapestry.algebra.expr import Primitive, ProcessExpr
from tapestry.algebra.parser import parse
from tapestry.core.exceptions import (
    ConfigError,
    DuplicatePrimitiveError,
    MissingFieldError,
    ParameterizationError,
)
from tapestry.core.informon import CausalTapestry
from tapestry.core.manifold import Lattice
from tapestry.engine.config import EXHAUSTIVE, REGIMES, SUMMAND_WEIGHTINGS, UNIFORM, GenerationConfig
from tapestry.engine.initial import delta_tapestry
from tapestry.kernels.greens import FREE, KINDS, LATTICE, TABULATED, load_table
from tapestry.measurement.stats import Region, regions_from_mapping
from tapestry.oracle.analytic import gaussian_tapestry
from tapestry.oracle.convergence import ConvergenceConfig
from tapestry.util import cli

# Logging
log = logging.getLogger("tapestry.util")

T = TypeVar("T")

SEED_ENV = "TAPESTRY_SEED"
PRIMITIVE_PREFIX = "primitive:"

DELTA = "delta"
GAUSSIAN = "gaussian"
INITIAL_KINDS = (DELTA, GAUSSIAN)

SECTION_KEYS = {
    "lattice": ("dimension", "extent", "spacing", "tau", "c_hat"),
    "primitive": ("kernel", "table", "properties", "n"),
    "process": (
        "expression",
        "regime",
        "n",
        "seed",
        "ticks",
        "renormalize",
        "budget",
        "count",
        "summand_weighting",
        "max_redraws",
    ),
    "initial": ("kind", "site", "strength", "properties", "sigma", "x0", "k0"),
    "convergence": ("spacings", "time", "sigma", "x0", "k0", "ticks", "kernel", "radius", "half_width"),
    "output": ("directory",),
}
# Free-form keys
OPEN_SECTIONS = ("regions",)

_HEADER_RE = re.compile(r"^\[(?P<name>[^\]]+)\]")
_KEY_RE = re.compile(r"^(?P<key>[^=:;#\s][^=:]*?)\s*[=:]")
_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _render_float(value):
    # type: (float) -> str
    return repr(float(value))


def _render_complex(value):
    # type: (complex) -> str
    value = complex(value)
    return _render_float(value.real) if value.imag == 0 else repr(value)


def _render_site(site):
    # type: (Tuple[int, ...]) -> str
    return " ".join(str(c) for c in site)


def _render_properties(properties):
    # type: (Dict[str, str]) -> str
    return ", ".join("{0}={1}".format(k, v) for k, v in sorted(properties.items()))


class LineIndex(object):
    """
    Line numbers of the section headers and keys of an INI document.
    """

    def __init__(self, text):
        # type: (str) -> None
        self.sections = {}  # type: Dict[str, int]
        self.keys = {}  # type: Dict[Tuple[str, str], int]
        section = None  # type: Optional[str]
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip() or line[0].isspace():
                continue
            header = _HEADER_RE.match(line)
            if header:
                section = header.group("name").strip()
                self.sections.setdefault(section, lineno)
                continue
            key = _KEY_RE.match(line)
            if key and section is not None:
                self.keys.setdefault((section, key.group("key").strip().lower()), lineno)

    def section(self, name):
        # type: (str) -> Optional[int]
        return self.sections.get(name)

    def key(self, section, key):
        # type: (str, str) -> Optional[int]
        return self.keys.get((section, key), self.sections.get(section))


class _SectionReader(object):
    """
    Typed accessors over one section; conversion failures become a
    :class:`ConfigError` anchored to the key's line.
    """

    def __init__(self, parser, name, lines):
        # type: (configparser.ConfigParser, str, LineIndex) -> None
        self.name = name
        self.lines = lines
        self.values = parser[name] if parser.has_section(name) else {}

    def __contains__(self, key):
        return key in self.values

    def lineno(self, key=None):
        # type: (Optional[str]) -> Optional[int]
        return self.lines.key(self.name, key) if key else self.lines.section(self.name)

    def get(self, key, convert, default=None):
        # type: (str, Callable[[str], T], Optional[T]) -> Optional[T]
        if key not in self.values:
            return default
        raw = self.values[key]
        try:
            return convert(raw)
        except (ValueError, ArgumentTypeError) as e:
            raise ConfigError(u"[{0}] {1} = {2!r}: {3}".format(self.name, key, raw, e), lineno=self.lineno(key))

    def require(self, key, convert):
        # type: (str, Callable[[str], T]) -> T
        if key not in self.values:
            raise MissingFieldError(u"[{0}] needs a {1!r} field".format(self.name, key), lineno=self.lineno())
        return self.get(key, convert)  # type: ignore

    def choice(self, key, choices, default):
        # type: (str, Tuple[str, ...], str) -> str
        value = self.get(key, str, default)
        if value not in choices:
            raise ConfigError(
                u"[{0}] {1} must be one of {2}, got {3!r}".format(self.name, key, ", ".join(choices), value),
                lineno=self.lineno(key),
            )
        return value  # type: ignore


class PrimitiveSpec(object):
    def __init__(self, name, kernel=FREE, table=None, properties=None, n=None):
        # type: (str, str, Optional[str], Optional[Dict[str, str]], Optional[int]) -> None
        self.name = name
        self.kernel = kernel
        self.table = table
        self.properties = dict(properties or {})
        self.n = n

    def build(self, dimension, base_dir=None, lineno=None):
        # type: (int, Optional[str], Optional[int]) -> Primitive
        table = None
        if self.kernel == TABULATED:
            if not self.table:
                raise MissingFieldError(u"Tabulated primitive {0!r} needs a table".format(self.name), lineno=lineno)
            path = os.path.join(base_dir or os.getcwd(), self.table)
            try:
                with io.open(path, encoding="utf-8") as fp:
                    table = load_table(fp, dimension)
            except IOError as e:
                raise ConfigError(u"Cannot read kernel table {0}: {1}".format(path, e), lineno=lineno)
            except ConfigError as e:
                raise ConfigError(u"In kernel table {0}: {1}".format(path, e), lineno=lineno)
        return Primitive(self.name, properties=self.properties, n=self.n, kernel=self.kernel, table=table)

    def items(self):
        # type: () -> Iterator[Tuple[str, str]]
        yield "kernel", self.kernel
        if self.table:
            yield "table", self.table
        if self.properties:
            yield "properties", _render_properties(self.properties)
        if self.n is not None:
            yield "n", str(self.n)

    def __eq__(self, other):
        if not isinstance(other, PrimitiveSpec):
            return False
        return self.name == other.name and list(self.items()) == list(other.items())

    def __ne__(self, other):
        return not self == other


class InitialSpec(object):
    """
    ``delta``: one informon of ``strength`` at ``site``; ``gaussian``: the
    renormalized samples of a packet of width ``sigma`` centered on ``x0`` with
    wave number ``k0``.
    """

    def __init__(self, kind=DELTA, site=None, strength=1.0, properties=None, sigma=1.0, x0=0.0, k0=0.0):
        self.kind = kind
        self.site = site  # type: Optional[Tuple[int, ...]]
        self.strength = complex(strength)
        self.properties = dict(properties or {})
        self.sigma = float(sigma)
        self.x0 = float(x0)
        self.k0 = float(k0)

    def build(self, lattice):
        # type: (Lattice) -> CausalTapestry
        if self.kind == DELTA:
            return delta_tapestry(lattice, self.site, self.strength, properties=self.properties or None)
        return gaussian_tapestry(lattice, self.sigma, self.x0, self.k0, properties=self.properties or None)

    def items(self):
        # type: () -> Iterator[Tuple[str, str]]
        yield "kind", self.kind
        if self.kind == DELTA:
            if self.site is not None:
                yield "site", _render_site(self.site)
            yield "strength", _render_complex(self.strength)
        else:
            yield "sigma", _render_float(self.sigma)
            yield "x0", _render_float(self.x0)
            yield "k0", _render_float(self.k0)
        if self.properties:
            yield "properties", _render_properties(self.properties)

    def __eq__(self, other):
        return isinstance(other, InitialSpec) and list(self.items()) == list(other.items())

    def __ne__(self, other):
        return not self == other


class RunConfig(object):
    def __init__(
        self,
        lattice,  # type: Lattice
        primitives,  # type: OrderedDict[str, PrimitiveSpec]
        expression,  # type: str
        process,  # type: ProcessExpr
        regime=EXHAUSTIVE,  # type: str
        n=1,  # type: int
        seed=0,  # type: int
        ticks=1,  # type: int
        renormalize=True,  # type: bool
        budget=10000,  # type: int
        count=100,  # type: int
        summand_weighting=UNIFORM,  # type: str
        max_redraws=64,  # type: int
        initial=None,  # type: Optional[InitialSpec]
        regions=None,  # type: Optional[OrderedDict[str, Tuple[Tuple[int, ...], Tuple[int, ...]]]]
        convergence=None,  # type: Optional[OrderedDict[str, object]]
        output=".",  # type: str
    ):
        # type: (...) -> None
        self.lattice = lattice
        self.primitives = primitives
        self.expression = expression
        self.process = process
        self.regime = regime
        self.n = n
        self.seed = seed
        self.ticks = ticks
        self.renormalize = renormalize
        self.budget = budget
        self.count = count
        self.summand_weighting = summand_weighting
        self.max_redraws = max_redraws
        self.initial = initial or InitialSpec()
        self.regions = regions if regions is not None else OrderedDict()
        self.convergence = convergence
        self.output = output

    def generation_config(self):
        # type: () -> GenerationConfig
        return GenerationConfig(
            self.lattice,
            n=self.n,
            regime=self.regime,
            seed=self.seed,
            renormalize=self.renormalize,
            max_redraws=self.max_redraws,
            budget=self.budget,
            summand_weighting=self.summand_weighting,
        )

    def initial_tapestry(self):
        # type: () -> CausalTapestry
        return self.initial.build(self.lattice)

    def region_list(self):
        # type: () -> List[Region]
        return regions_from_mapping(self.lattice, self.regions)

    def convergence_config(self):
        # type: () -> ConvergenceConfig
        return ConvergenceConfig(**(self.convergence or {}))

    def with_overrides(self, seed=None, output=None):
        # type: (Optional[int], Optional[str]) -> RunConfig
        """ Copy with the command-line overrides applied. """
        overridden = copy.copy(self)
        if seed is not None:
            overridden.seed = int(seed)
        if output is not None:
            overridden.output = output
        return overridden

    def sections(self, output=True):
        # type: (bool) -> List[Tuple[str, List[Tuple[str, str]]]]
        lattice = self.lattice
        sections = [
            (
                "lattice",
                [
                    ("dimension", str(lattice.dimension)),
                    ("extent", _render_site(lattice.extent)),
                    ("spacing", _render_float(lattice.spacing)),
                    ("tau", _render_float(lattice.tau)),
                    ("c_hat", _render_float(lattice.c_hat)),
                ],
            )
        ]
        for name, spec in self.primitives.items():
            sections.append((PRIMITIVE_PREFIX + name, list(spec.items())))
        sections.append(
            (
                "process",
                [
                    ("expression", self.expression),
                    ("regime", self.regime),
                    ("n", str(self.n)),
                    ("seed", str(self.seed)),
                    ("ticks", str(self.ticks)),
                    ("renormalize", "true" if self.renormalize else "false"),
                    ("budget", str(self.budget)),
                    ("count", str(self.count)),
                    ("summand_weighting", self.summand_weighting),
                    ("max_redraws", str(self.max_redraws)),
                ],
            )
        )
        sections.append(("initial", list(self.initial.items())))
        if self.regions:
            sections.append(
                (
                    "regions",
                    [
                        (name, "{0}, {1}".format(_render_site(lower), _render_site(upper)))
                        for name, (lower, upper) in self.regions.items()
                    ],
                )
            )
        if self.convergence:
            rendered = []
            for key, value in self.convergence.items():
                if key == "spacings":
                    rendered.append((key, ", ".join(_render_float(v) for v in value)))  # type: ignore
                elif isinstance(value, float):
                    rendered.append((key, _render_float(value)))
                else:
                    rendered.append((key, str(value)))
            sections.append(("convergence", rendered))
        if output:
            sections.append(("output", [("directory", self.output)]))
        return sections

    def render(self, output=True):
        # type: (bool) -> str
        """ INI text that parses back to an equal config; ``output=False`` leaves out [output]. """
        chunks = []
        for name, items in self.sections(output):
            chunks.append("[{0}]\n".format(name) + "".join("{0} = {1}\n".format(k, v) for k, v in items))
        return "\n".join(chunks)

    def __eq__(self, other):
        return isinstance(other, RunConfig) and self.sections() == other.sections()

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return "RunConfig(expression={0!r}, regime={1!r}, seed={2}, ticks={3})".format(
            self.expression, self.regime, self.seed, self.ticks
        )


def _default_seed():
    # type: () -> int
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(u"{0} must be an integer, got {1!r}".format(SEED_ENV, raw))


def _read(text):
    # type: (str) -> configparser.ConfigParser
    parser = configparser.ConfigParser(interpolation=None, strict=True)
    try:
        parser.read_string(text)
    except configparser.DuplicateSectionError as e:
        if e.section.startswith(PRIMITIVE_PREFIX):
            raise DuplicatePrimitiveError(
                u"Primitive {0!r} is declared twice".format(e.section[len(PRIMITIVE_PREFIX):]), lineno=e.lineno
            )
        raise ConfigError(u"Section [{0}] appears twice".format(e.section), lineno=e.lineno)
    except configparser.DuplicateOptionError as e:
        raise ConfigError(u"[{0}] sets {1!r} twice".format(e.section, e.option), lineno=e.lineno)
    except configparser.MissingSectionHeaderError as e:
        raise ConfigError(u"Expected a [section] header, got {0!r}".format(e.line.strip()), lineno=e.lineno)
    except configparser.ParsingError as e:
        lineno, line = e.errors[0]
        raise ConfigError(u"Cannot parse {0}".format(line.strip()), lineno=lineno)
    return parser


def _check_layout(parser, lines):
    # type: (configparser.ConfigParser, LineIndex) -> None
    for section in parser.sections():
        kind = "primitive" if section.startswith(PRIMITIVE_PREFIX) else section
        if kind == "primitive":
            name = section[len(PRIMITIVE_PREFIX):]
            if not _NAME_RE.match(name) or name == "x":
                raise ConfigError(u"Invalid primitive name {0!r}".format(name), lineno=lines.section(section))
        if kind in OPEN_SECTIONS:
            continue
        if kind not in SECTION_KEYS:
            raise ConfigError(u"Unknown section [{0}]".format(section), lineno=lines.section(section))
        for key in parser[section]:
            if key not in SECTION_KEYS[kind]:
                raise ConfigError(u"Unknown field {0!r} in [{1}]".format(key, section), lineno=lines.key(section, key))


def _parse_primitives(parser, lines, dimension, base_dir):
    # type: (configparser.ConfigParser, LineIndex, int, Optional[str]) -> Tuple[OrderedDict, Dict[str, Primitive]]
    specs = OrderedDict()  # type: OrderedDict[str, PrimitiveSpec]
    built = {}  # type: Dict[str, Primitive]
    for section in parser.sections():
        if not section.startswith(PRIMITIVE_PREFIX):
            continue
        name = section[len(PRIMITIVE_PREFIX):]
        reader = _SectionReader(parser, section, lines)
        n = reader.get("n", int)
        if n is not None and n < 1:
            raise ConfigError(u"[{0}] n must be at least 1".format(section), lineno=reader.lineno("n"))
        spec = PrimitiveSpec(
            name,
            kernel=reader.choice("kernel", KINDS, FREE),
            table=reader.get("table", str),
            properties=reader.get("properties", cli.properties),
            n=n,
        )
        specs[name] = spec
        built[name] = spec.build(dimension, base_dir, lineno=reader.lineno("table"))
    return specs, built


def _build_lattice(section, params):
    # type: (_SectionReader, OrderedDict) -> Lattice
    try:
        return Lattice(**params)
    except ParameterizationError as e:
        # The first key whose value makes a prefix of the fields invalid
        keys = list(params)
        offending = None
        for i, key in enumerate(keys):
            try:
                Lattice(**OrderedDict((k, params[k]) for k in keys[: i + 1]))
            except ParameterizationError:
                offending = key
                break
        raise ConfigError(u"[lattice] {0}".format(e), lineno=section.lineno(offending))


def parse_config(text, base_dir=None):
    # type: (str, Optional[str]) -> RunConfig
    """
    Parse a run configuration. ``base_dir`` resolves kernel table paths.
    """
    lines = LineIndex(text)
    parser = _read(text)
    _check_layout(parser, lines)

    if not parser.has_section("lattice"):
        raise MissingFieldError(u"A run configuration needs a [lattice] section")
    section = _SectionReader(parser, "lattice", lines)
    params = OrderedDict(
        [
            ("dimension", section.get("dimension", int, 1)),
            ("extent", section.require("extent", cli.site)),
            ("spacing", section.get("spacing", float, 1.0)),
            ("tau", section.get("tau", float)),
            ("c_hat", section.get("c_hat", float, 1.0)),
        ]
    )
    lattice = _build_lattice(section, params)

    specs, primitives = _parse_primitives(parser, lines, lattice.dimension, base_dir)
    if not primitives:
        raise MissingFieldError(u"Declare at least one [primitive:<name>] section")

    if not parser.has_section("process"):
        raise MissingFieldError(u"A run configuration needs a [process] section")
    process = _SectionReader(parser, "process", lines)
    expression = process.require("expression", str).strip()
    expr = parse(expression, primitives, lineno=process.lineno("expression"))
    positive = ("n", "ticks", "budget", "count")
    counts = dict((key, process.get(key, int, default)) for key, default in zip(positive, (1, 1, 10000, 100)))
    for key, value in counts.items():
        if value < 1:  # type: ignore
            raise ConfigError(u"[process] {0} must be at least 1".format(key), lineno=process.lineno(key))
    max_redraws = process.get("max_redraws", int, 64)
    if max_redraws < 0:  # type: ignore
        raise ConfigError(u"[process] max_redraws cannot be negative", lineno=process.lineno("max_redraws"))

    initial = _SectionReader(parser, "initial", lines)
    initial_spec = InitialSpec(
        kind=initial.choice("kind", INITIAL_KINDS, DELTA),
        site=initial.get("site", cli.site),
        strength=initial.get("strength", complex, 1.0),
        properties=initial.get("properties", cli.properties),
        sigma=initial.get("sigma", float, 1.0),
        x0=initial.get("x0", float, 0.0),
        k0=initial.get("k0", float, 0.0),
    )
    if initial_spec.site is not None and not lattice.contains(initial_spec.site):
        raise ConfigError(
            u"Initial site {0} lies outside the lattice".format(initial_spec.site), lineno=initial.lineno("site")
        )

    regions = OrderedDict()  # type: OrderedDict[str, Tuple[Tuple[int, ...], Tuple[int, ...]]]
    region_section = _SectionReader(parser, "regions", lines)
    for name in region_section.values:
        lower, upper = region_section.get(name, cli.site_box)  # type: ignore
        if len(lower) != lattice.dimension:
            raise ConfigError(
                u"Region {0!r} needs {1} coordinates per corner".format(name, lattice.dimension),
                lineno=region_section.lineno(name),
            )
        regions[name] = (lower, upper)

    convergence = None  # type: Optional[OrderedDict[str, object]]
    if parser.has_section("convergence"):
        convergence = _parse_convergence(_SectionReader(parser, "convergence", lines))

    output = _SectionReader(parser, "output", lines).get("directory", str, ".")

    config = RunConfig(
        lattice,
        specs,
        expression,
        expr,
        regime=process.choice("regime", REGIMES, EXHAUSTIVE),
        n=counts["n"],  # type: ignore
        seed=process.get("seed", int, None) if "seed" in process else _default_seed(),  # type: ignore
        ticks=counts["ticks"],  # type: ignore
        renormalize=process.get("renormalize", cli.boolean, True),  # type: ignore
        budget=counts["budget"],  # type: ignore
        count=counts["count"],  # type: ignore
        summand_weighting=process.choice("summand_weighting", SUMMAND_WEIGHTINGS, UNIFORM),
        max_redraws=max_redraws,  # type: ignore
        initial=initial_spec,
        regions=regions,
        convergence=convergence,
        output=output or ".",
    )
    log.debug("Parsed %r over %d primitives", config, len(specs))
    return config


def _parse_convergence(section):
    # type: (_SectionReader) -> OrderedDict
    converters = OrderedDict(
        [
            ("spacings", cli.list_of_floats),
            ("time", float),
            ("sigma", float),
            ("x0", float),
            ("k0", float),
            ("ticks", int),
            ("kernel", str),
            ("radius", float),
            ("half_width", float),
        ]
    )  # type: OrderedDict[str, Callable[[str], object]]
    values = OrderedDict()  # type: OrderedDict[str, object]
    for key, convert in converters.items():
        if key in section:
            values[key] = section.get(key, convert)
    if "kernel" in values and values["kernel"] not in (FREE, LATTICE):
        raise ConfigError(
            u"[convergence] kernel must be {0} or {1}".format(FREE, LATTICE), lineno=section.lineno("kernel")
        )
    try:
        ConvergenceConfig(**values)  # type: ignore
    except ParameterizationError as e:
        raise ConfigError(u"[convergence] {0}".format(e), lineno=section.lineno())
    return values


def load_config(path):
    # type: (str) -> Tuple[RunConfig, str]
    """ Read and parse ``path``; returns the config and the raw text. """
    try:
        with io.open(path, encoding="utf-8") as fp:
            text = fp.read()
    except IOError as e:
        raise ConfigError(u"Cannot read configuration {0}: {1}".format(path, e))
    return parse_config(text, base_dir=os.path.dirname(os.path.abspath(path))), text
