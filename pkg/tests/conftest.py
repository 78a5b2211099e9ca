import numpy as np
import pytest

from sqom.experiments import InitialStateSpec, RunConfig
from sqom.fock import SpaceSpec
from sqom.liouvillian import DissipationMode, VariantId
from sqom.model import SystemParams
from sqom.presets import PRESET_NAMES, execute_preset, get_preset
from sqom.reservoir import ReservoirSpec


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def small_space():
    return SpaceSpec(dim_cavity=3, dim_mech=4)


@pytest.fixture
def house_params():
    """The parameter set used throughout the decay studies."""
    return SystemParams(delta=0.0, g0=0.8, kappa=0.05, gamma_m=0.05 / 3.0)


def tiny_config(**overrides):
    """A fast, fully-specified run for filesystem and CLI tests."""
    defaults = dict(
        params=SystemParams(delta=0.0, g0=0.5, kappa=0.3, gamma_m=0.1),
        reservoir=ReservoirSpec(n_th=0.2),
        variant=VariantId.DSME_THERMAL,
        mode=DissipationMode.TRACE_PRESERVING,
        space=SpaceSpec(dim_cavity=4, dim_mech=6),
        initial=InitialStateSpec(),
        t_max_kappa=0.4,
        samples=25,
    )
    defaults.update(overrides)
    return RunConfig(**defaults)


class PresetCache:
    """Executes each figure preset at most once per test session."""

    def __init__(self, root):
        self.root = root
        self._manifests = {}

    def get(self, name):
        assert name in PRESET_NAMES
        if name not in self._manifests:
            out = self.root / name
            self._manifests[name] = execute_preset(get_preset(name), out)
        return self.root / name, self._manifests[name]


@pytest.fixture(scope="session")
def preset_cache(tmp_path_factory):
    return PresetCache(tmp_path_factory.mktemp("presets"))
