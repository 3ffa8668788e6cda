"""Integral engine checks against closed forms and literature anchors."""

import math

import numpy as np
import pytest

from chemgen.basis import build_functions, build_shells
from chemgen.integrals import boys_array, build_eri, build_matrices
from chemgen.molecules import ANGSTROM_TO_BOHR
from chemgen.scf import restricted_hartree_fock


def h2_setup(r_angstrom=0.7414):
    coords = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, r_angstrom]]) * ANGSTROM_TO_BOHR
    shells = build_shells(["H", "H"], coords, "sto-3g")
    fns = build_functions(shells)
    charges = np.array([1.0, 1.0])
    return fns, charges, coords


def test_boys_closed_forms():
    # F_0(0) = 1, F_n(0) = 1/(2n+1), F_0(x) = sqrt(pi/4x) erf(sqrt(x))
    f = boys_array(3, 0.0)
    assert f == pytest.approx([1.0, 1 / 3, 1 / 5, 1 / 7])
    x = 2.7
    f0 = boys_array(0, x)[0]
    assert f0 == pytest.approx(math.sqrt(math.pi / (4 * x)) * math.erf(math.sqrt(x)), abs=1e-12)


def test_h2_matrices():
    fns, charges, coords = h2_setup()
    s, t, v = build_matrices(fns, charges, coords)
    assert np.allclose(np.diag(s), 1.0, atol=1e-12)
    assert s[0, 1] == pytest.approx(0.65896, abs=1e-4)
    assert np.allclose(s, s.T) and np.allclose(t, t.T) and np.allclose(v, v.T)
    # kinetic energy matrix is positive definite
    assert np.min(np.linalg.eigvalsh(t)) > 0


def test_h2_eri_symmetry_and_value():
    fns, charges, coords = h2_setup()
    eri = build_eri(fns)
    assert eri[0, 0, 0, 0] == pytest.approx(0.77461, abs=1e-4)
    rng = np.random.default_rng(1)
    n = len(fns)
    for _ in range(20):
        p, q, r, s = rng.integers(0, n, size=4)
        assert eri[p, q, r, s] == pytest.approx(eri[q, p, r, s], abs=1e-12)
        assert eri[p, q, r, s] == pytest.approx(eri[p, q, s, r], abs=1e-12)
        assert eri[p, q, r, s] == pytest.approx(eri[r, s, p, q], abs=1e-12)


def test_h2_rhf_energy():
    fns, charges, coords = h2_setup()
    s, t, v = build_matrices(fns, charges, coords)
    eri = build_eri(fns)
    e_nuc = 1.0 / np.linalg.norm(coords[0] - coords[1])
    scf = restricted_hartree_fock(s, t + v, eri, 2, e_nuc)
    assert scf.converged
    # literature RHF/STO-3G value at 0.7414 A
    assert scf.energy == pytest.approx(-1.11668, abs=2e-4)


def test_p_and_d_shells_self_overlap():
    # every contracted Cartesian function is unit-normalized, d included
    coords = np.array([[0.0, 0.0, 0.0]])
    shells = build_shells(["O"], coords, "6-31g(d)")
    fns = build_functions(shells)
    s, _, _ = build_matrices(fns, np.array([8.0]), coords)
    assert np.allclose(np.diag(s), 1.0, atol=1e-10)
    assert len(fns) == 15  # 3s + 2x3p + 6 cartesian d
