"""Exact verification of coupled Painleve III Hamiltonian systems."""

import json

from . import _p4d
from ._p4d import (
    Error,
    __version__,
    apply_word,
    canonical,
    differentiate,
    equals,
    evaluate,
    families,
    generators,
    hamiltonian,
    hamiltonian_field,
    vector_field,
)


def generator(family, label):
    """Images, time image and parameter matrix of one generator."""
    return json.loads(_p4d.generator_json(family, label))


def verify_symmetry(family, label, mode="exact", seed=0, samples=8):
    return json.loads(_p4d.verify_symmetry(family, label, mode, seed, samples))


def run_suite(suites=("all",), family=None, mode="random", seed=0, samples=8, jobs=0, timing=True):
    """Report document {version, config, summary, checks}."""
    return json.loads(_p4d.run_suite(list(suites), family, mode, seed, samples, jobs, timing))


def integrate(benchmark=None):
    """Returns (samples, defect); samples are dicts with t_re, t_im, state."""
    text = "" if benchmark is None else json.dumps(benchmark)
    lines, defect = _p4d.integrate(text)
    return [json.loads(line) for line in lines.splitlines() if line], defect


def default_benchmark():
    return json.loads(_p4d.default_benchmark())
