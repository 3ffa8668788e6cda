import os

import numpy as np
import pytest

from qdownfold.hamiltonian import PauliHamiltonian, ReferenceState
from qdownfold.pauli import PauliProduct

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURE_DIR, name)


def require_fixture(name: str) -> str:
    path = fixture_path(name)
    if not os.path.exists(path):
        pytest.skip(f"fixture {name} not generated yet")
    return path


def random_pauli(rng: np.random.Generator, n: int, even_y=False, non_identity=True) -> PauliProduct:
    while True:
        x = int(rng.integers(0, 1 << n))
        z = int(rng.integers(0, 1 << n))
        if non_identity and x == 0 and z == 0:
            continue
        if even_y and (x & z).bit_count() % 2:
            continue
        return PauliProduct(n, x, z)


def random_coeff(rng: np.random.Generator) -> float:
    # keep magnitudes well above the default prune threshold
    return float(rng.uniform(0.05, 1.0) * rng.choice([-1.0, 1.0]))


def random_real_hamiltonian(
    rng: np.random.Generator,
    n: int,
    n_terms: int,
    constant: float = 0.0,
    prune_eps: float = 1e-12,
) -> PauliHamiltonian:
    """Random real-valued Hamiltonian: distinct even-y Pauli terms."""
    # there are (4^n + 2^n)/2 - 1 non-identity even-y products to draw from
    n_terms = min(n_terms, ((4**n + 2**n) // 2 - 1))
    seen = set()
    terms = []
    while len(terms) < n_terms:
        p = random_pauli(rng, n, even_y=True)
        if (p.x, p.z) in seen:
            continue
        seen.add((p.x, p.z))
        terms.append((p, random_coeff(rng)))
    return PauliHamiltonian.from_terms(n, terms, constant=constant, prune_eps=prune_eps)


def random_reference(rng: np.random.Generator, n: int) -> ReferenceState:
    return ReferenceState(n, int(rng.integers(0, 1 << n)))
