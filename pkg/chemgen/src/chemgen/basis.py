"""Embedded Gaussian basis sets and shell construction.

Exponents and contraction coefficients are the standard published values
(Basis Set Exchange, Gaussian94 format) for the three sets this generator
needs: STO-3G (H), cc-pVDZ (N) and 6-31G(d) (O, H).  Contraction
coefficients multiply unit-normalized primitives; contracted functions are
renormalized numerically.  cc-pVDZ uses spherical d functions, 6-31G(d)
keeps the six Cartesian d components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# (L, [exponents], [coefficients]); SP shells are stored as separate S and P
# entries sharing exponents.
BASIS_SETS = {
    "sto-3g": {
        "H": [
            (0, [3.42525091, 0.62391373, 0.16885540],
                [0.15432897, 0.53532814, 0.44463454]),
        ],
    },
    "cc-pvdz": {
        "N": [
            (0, [9046.0, 1357.0, 309.3, 87.73, 28.56, 10.21, 3.838, 0.7466, 0.2248],
                [0.000700, 0.005389, 0.027406, 0.103207, 0.278723, 0.448540,
                 0.278238, 0.015440, -0.002864]),
            (0, [9046.0, 1357.0, 309.3, 87.73, 28.56, 10.21, 3.838, 0.7466, 0.2248],
                [-0.000153, -0.001208, -0.005992, -0.024544, -0.067459, -0.158078,
                 -0.121831, 0.549003, 0.578815]),
            (0, [0.2248], [1.0]),
            (1, [13.55, 2.917, 0.7973, 0.2185],
                [0.039919, 0.217169, 0.510319, 0.462214]),
            (1, [0.2185], [1.0]),
            (2, [0.817], [1.0]),
        ],
    },
    "6-31g(d)": {
        "H": [
            (0, [18.7311370, 2.8253937, 0.6401217],
                [0.03349460, 0.23472695, 0.81375733]),
            (0, [0.1612778], [1.0]),
        ],
        "O": [
            (0, [5484.6717, 825.23495, 188.04696, 52.964500, 16.897570, 5.7996353],
                [0.0018311, 0.0139501, 0.0684451, 0.2327143, 0.4701930, 0.3585209]),
            (0, [15.539616, 3.5999336, 1.0137618],
                [-0.1107775, -0.1480263, 1.1307670]),
            (1, [15.539616, 3.5999336, 1.0137618],
                [0.0708743, 0.3397528, 0.7271586]),
            (0, [0.2700058], [1.0]),
            (1, [0.2700058], [1.0]),
            (2, [0.8], [1.0]),
        ],
    },
}

# within-basis convention: cc-pVDZ is a spherical-harmonic basis, 6-31G(d)
# uses Cartesian d functions (six components), STO-3G has no d shells
SPHERICAL_BASIS = {"sto-3g": False, "cc-pvdz": True, "6-31g(d)": False}

ATOMIC_NUMBERS = {"H": 1, "N": 7, "O": 8}

CARTESIAN_POWERS = {
    0: [(0, 0, 0)],
    1: [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
    2: [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)],
}

# real solid harmonic d functions over the Cartesian monomials above,
# rows ordered m = -2, -1, 0, +1, +2 (any fixed order works);
# rows are rescaled numerically to unit norm after transformation
SOLID_D = np.array(
    [
        # xx    xy   xz    yy   yz   zz
        [0.0, 1.0, 0.0, 0.0, 0.0, 0.0],   # xy
        [0.0, 0.0, 0.0, 0.0, 1.0, 0.0],   # yz
        [-0.5, 0.0, 0.0, -0.5, 0.0, 1.0], # 2zz - xx - yy
        [0.0, 0.0, 1.0, 0.0, 0.0, 0.0],   # xz
        [0.5, 0.0, 0.0, -0.5, 0.0, 0.0],  # xx - yy
    ]
)


def double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def primitive_norm(alpha: float, lmn: tuple[int, int, int]) -> float:
    l, m, n = lmn
    df = double_factorial(2 * l - 1) * double_factorial(2 * m - 1) * double_factorial(2 * n - 1)
    return math.sqrt(
        (2 * alpha / math.pi) ** 1.5 * (4 * alpha) ** (l + m + n) / df
    )


@dataclass
class Shell:
    """One contracted Cartesian shell on a center."""

    l: int
    center: np.ndarray
    exponents: np.ndarray
    coefficients: np.ndarray  # multiply unit-normalized primitives
    atom_index: int

    @property
    def cartesian_powers(self) -> list[tuple[int, int, int]]:
        return CARTESIAN_POWERS[self.l]


@dataclass
class BasisFunction:
    """One contracted Cartesian Gaussian (a shell component)."""

    shell: Shell
    lmn: tuple[int, int, int]
    norms: np.ndarray = field(default=None)  # per-primitive norm * contraction

    def __post_init__(self):
        prim = np.array(
            [primitive_norm(a, self.lmn) for a in self.shell.exponents]
        )
        coeffs = self.shell.coefficients * prim
        # renormalize the contracted function to unit self-overlap
        l_total = sum(self.lmn)
        ss = 0.0
        exps = self.shell.exponents
        df = (
            double_factorial(2 * self.lmn[0] - 1)
            * double_factorial(2 * self.lmn[1] - 1)
            * double_factorial(2 * self.lmn[2] - 1)
        )
        for i in range(len(exps)):
            for j in range(len(exps)):
                p = exps[i] + exps[j]
                ss += (
                    coeffs[i]
                    * coeffs[j]
                    * df
                    * (math.pi / p) ** 1.5
                    / (2.0 * p) ** l_total
                )
        self.norms = coeffs / math.sqrt(ss)

    @property
    def center(self) -> np.ndarray:
        return self.shell.center

    @property
    def exponents(self) -> np.ndarray:
        return self.shell.exponents


def build_shells(symbols, coords_bohr, basis_name: str) -> list[Shell]:
    basis = BASIS_SETS[basis_name.lower()]
    shells = []
    for idx, (sym, xyz) in enumerate(zip(symbols, coords_bohr)):
        for l, exps, coeffs in basis[sym]:
            shells.append(
                Shell(
                    l=l,
                    center=np.asarray(xyz, dtype=float),
                    exponents=np.asarray(exps, dtype=float),
                    coefficients=np.asarray(coeffs, dtype=float),
                    atom_index=idx,
                )
            )
    return shells


def build_functions(shells: list[Shell]) -> list[BasisFunction]:
    return [BasisFunction(sh, lmn) for sh in shells for lmn in sh.cartesian_powers]


def cart_to_spherical(shells: list[Shell]) -> np.ndarray:
    """Block transformation matrix (n_spherical x n_cartesian).

    s and p shells map one-to-one; each Cartesian d block contracts to the
    five solid harmonics, with row coefficients corrected for the
    per-component double-factorial normalization and rescaled numerically
    afterwards (see scf.apply_spherical).
    """
    blocks = []
    for sh in shells:
        ncart = len(sh.cartesian_powers)
        if sh.l < 2:
            blocks.append(np.eye(ncart))
        else:
            df = np.array(
                [
                    math.sqrt(
                        double_factorial(2 * i - 1)
                        * double_factorial(2 * j - 1)
                        * double_factorial(2 * k - 1)
                    )
                    for (i, j, k) in sh.cartesian_powers
                ]
            )
            blocks.append(SOLID_D * df[np.newaxis, :])
    n_sph = sum(b.shape[0] for b in blocks)
    n_cart = sum(b.shape[1] for b in blocks)
    t = np.zeros((n_sph, n_cart))
    r = c = 0
    for b in blocks:
        t[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return t
