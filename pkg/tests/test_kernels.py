"""Both kernel backends must agree bit for bit."""
import itertools
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import AVAILABLE_BACKENDS
from vbq import kernels
from vbq.algebra import (
    OperatorTable, invert_operator, linear_biquandle, symmetric_group, validate_biquandle, virtual, wada_from_group,
)
from vbq.braid import random_braid
from vbq.coloring import RepKind, compile_program

needs_both = pytest.mark.skipif(len(AVAILABLE_BACKENDS) < 2, reason="compiled extension not built")
PY = kernels.get_backend("python")


@needs_both
@settings(max_examples=300, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n),
    st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n))))
def test_ybe_violation_agrees(case):
    n, r1, r2 = case
    c = kernels.get_backend("compiled")
    assert c.ybe_violation(r1, r2, n) == PY.ybe_violation(r1, r2, n)


@needs_both
def test_ybe_on_biquandle_is_none():
    op = wada_from_group(symmetric_group(3))
    for name in AVAILABLE_BACKENDS:
        assert kernels.get_backend(name).ybe_violation(op.r1, op.r2, op.n) is None


@needs_both
@settings(max_examples=200, deadline=None)
@given(st.integers(2, 6), st.integers(0, 16), st.integers(0, 10**6), st.sampled_from(list(RepKind)),
       st.booleans())
def test_fixed_points_agree(strands, length, seed, rep, want):
    v = virtual(linear_biquandle(5, 1, 4), (2, 3, 4, 0, 1))
    prog = compile_program(random_braid(strands, length, seed), rep)
    c = kernels.get_backend("compiled")
    for lo, hi in [(0, 5), (1, 3), (4, 5), (2, 2)]:
        assert c.fixed_points(*v.arrays, 5, strands, prog, lo, hi, want) == \
            PY.fixed_points(*v.arrays, 5, strands, prog, lo, hi, want)


def test_fixed_points_on_empty_program(backend):
    k = kernels.get_backend(backend)
    v = virtual(linear_biquandle(3, 1, 2))
    prog = np.zeros((0, 2), dtype=np.int32)
    assert k.fixed_points(*v.arrays, 3, 3, prog, 0, 3, True) == (27, list(range(27)))


@needs_both
@pytest.mark.parametrize("n", [1, 2, 3])
def test_search_agrees(n):
    c = kernels.get_backend("compiled")
    for row in [(), *itertools.permutations(range(n))]:
        assert c.search_biquandles(n, row) == PY.search_biquandles(n, row)


def test_search_results_are_valid(backend):
    for r1, r2 in kernels.get_backend(backend).search_biquandles(3, ()):
        assert validate_biquandle(OperatorTable(3, r1, r2)).ok


def test_opcode_table_is_shared():
    assert (kernels.PHI_SIGMA, kernels.PSI_RHO) == (0, 5)


def _backend_in_subprocess(env_extra):
    env = dict(os.environ, **env_extra)
    out = subprocess.run([sys.executable, "-c", "from vbq import kernels; print(kernels.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    return out.stdout.strip()


def test_env_forces_pure_python():
    assert _backend_in_subprocess({"VBQ_PURE_PYTHON": "1"}) == "python"


@needs_both
def test_compiled_is_default_when_built():
    env = {k: v for k, v in os.environ.items() if k != "VBQ_PURE_PYTHON"}
    out = subprocess.run([sys.executable, "-c", "from vbq import kernels; print(kernels.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "compiled"


def test_inverse_tables_consistent_with_kernel_inputs():
    op = linear_biquandle(5, 1, 4)
    r1b, r2b = invert_operator(op)
    v = virtual(op)
    assert tuple(v.arrays[2]) == r1b and tuple(v.arrays[3]) == r2b
