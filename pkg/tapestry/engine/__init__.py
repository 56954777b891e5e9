# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Generation engine: rounds, plays, sequence trees and initial tapestries.
"""
from tapestry.engine.config import EXHAUSTIVE, SAMPLED, GenerationConfig, play_rng  # noqa
from tapestry.engine.engine import GenerationEvent, Play, assemble, run, run_round  # noqa
from tapestry.engine.initial import delta_tapestry, wavefunction_tapestry  # noqa
from tapestry.engine.strategies import RandomChooser, ScriptedChooser  # noqa
from tapestry.engine.tree import SequenceNode, SequenceTree, enumerate_plays, sample_plays  # noqa
