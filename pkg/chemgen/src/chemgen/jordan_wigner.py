"""Jordan-Wigner mapping of an active-space Hamiltonian to Pauli terms.

Spin-orbitals are interleaved (qubit 2p = spatial p alpha, 2p+1 = beta).
Pauli products are tracked in symplectic (x bits, z bits) form with the
Hermitian-label phase convention P(x, z) = (-i)^{|x & z|} Z(z) X(x); ladder
operators are two-term Pauli sums and operator products accumulate exact
i^k phases.  The result of mapping a Hermitian fermionic operator with real
integrals is a real-coefficient Pauli expansion; any imaginary residue
above tolerance is reported as an export bug.
"""

from __future__ import annotations

from .active_space import ActiveHamiltonian


def _multiply(term1, term2):
    """(x, z, k) triples: Hermitian labels with phase exponent k of i^k."""
    x1, z1, k1 = term1
    x2, z2, k2 = term2
    x = x1 ^ x2
    z = z1 ^ z2
    k = (
        k1
        + k2
        - (x1 & z1).bit_count()
        - (x2 & z2).bit_count()
        + 2 * (x1 & z2).bit_count()
        + (x & z).bit_count()
    ) % 4
    return x, z, k


_PHASES = (1.0 + 0.0j, 1.0j, -1.0 - 0.0j, -1.0j)


def ladder_terms(q: int, dagger: bool):
    """JW image of a_q or a_q^dag: 1/2 (X -+ i Y)_q tensor Z_{<q}."""
    zmask = (1 << q) - 1
    x = 1 << q
    sign = -0.5j if dagger else 0.5j
    return [((x, zmask, 0), 0.5 + 0.0j), ((x, zmask | x, 0), sign)]


def _product(ops):
    """Multiply a list of two-term ladder expansions into a term dict."""
    acc = {(0, 0, 0): 1.0 + 0.0j}
    for op in ops:
        nxt: dict = {}
        for (x1, z1, k1), c1 in acc.items():
            for (x2, z2, k2), c2 in op:
                key = _multiply((x1, z1, k1), (x2, z2, k2))
                nxt[key] = nxt.get(key, 0.0j) + c1 * c2
        acc = nxt
    return acc


class PauliAccumulator:
    def __init__(self, n_qubits: int):
        self.n_qubits = n_qubits
        self.terms: dict[tuple[int, int], complex] = {}

    def add(self, term_dict, weight: complex):
        if weight == 0.0:
            return
        for (x, z, k), c in term_dict.items():
            val = weight * c * _PHASES[k]
            if val != 0.0:
                key = (x, z)
                self.terms[key] = self.terms.get(key, 0.0j) + val

    def real_terms(self, imag_tol: float = 1e-12):
        """(x, z) -> real coefficient map plus the identity constant."""
        out: dict[tuple[int, int], float] = {}
        constant = 0.0
        max_imag = 0.0
        for (x, z), c in self.terms.items():
            max_imag = max(max_imag, abs(c.imag))
            if abs(c.imag) > imag_tol * max(1.0, abs(c.real)):
                raise ValueError(
                    f"JW term ({x}, {z}) has imaginary coefficient {c}: export bug"
                )
            if x == 0 and z == 0:
                constant += c.real
            else:
                out[(x, z)] = c.real
        return out, constant, max_imag


def jordan_wigner(active: ActiveHamiltonian, coeff_tol: float = 1e-13):
    """Map sum_pq h_pq a+_p a_q + 1/2 sum_pqrs g_pqrs a+_p a+_r a_s a_q
    (spatial indices, spin summed) onto qubits.

    Returns (terms, constant) with terms mapping (x, z) to a real
    coefficient; the constant includes the core energy.
    """
    n_spatial = active.n_orbitals
    n_qubits = 2 * n_spatial
    acc = PauliAccumulator(n_qubits)
    h = active.one_body
    g = active.two_body
    ladder_cache = {
        (q, dag): ladder_terms(q, dag)
        for q in range(n_qubits)
        for dag in (False, True)
    }
    for p in range(n_spatial):
        for q in range(n_spatial):
            if abs(h[p, q]) < coeff_tol:
                continue
            for spin in (0, 1):
                acc.add(
                    _product(
                        [
                            ladder_cache[(2 * p + spin, True)],
                            ladder_cache[(2 * q + spin, False)],
                        ]
                    ),
                    complex(h[p, q]),
                )
    for p in range(n_spatial):
        for q in range(n_spatial):
            for r in range(n_spatial):
                for s in range(n_spatial):
                    val = g[p, q, r, s]
                    if abs(val) < coeff_tol:
                        continue
                    half = 0.5 * complex(val)
                    for s1 in (0, 1):
                        for s2 in (0, 1):
                            acc.add(
                                _product(
                                    [
                                        ladder_cache[(2 * p + s1, True)],
                                        ladder_cache[(2 * r + s2, True)],
                                        ladder_cache[(2 * s + s2, False)],
                                        ladder_cache[(2 * q + s1, False)],
                                    ]
                                ),
                                half,
                            )
    terms, constant, max_imag = acc.real_terms()
    return terms, constant + active.core_energy, max_imag
