"""Molecular integrals over contracted Cartesian Gaussians.

McMurchie-Davidson scheme: Hermite expansion coefficients E recursively
couple Cartesian angular momenta, Hermite Coulomb integrals R carry the
Boys-function dependence.  Everything is evaluated primitive-pair by
primitive-pair; desk-scale molecules (a few dozen functions) stay cheap.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.special import hyp1f1

from .basis import BasisFunction


def boys_array(n_max: int, x: float) -> np.ndarray:
    """F_0..F_{n_max}(x) via a single confluent-hypergeometric evaluation
    at the top order and stable downward recursion."""
    out = np.empty(n_max + 1)
    out[n_max] = hyp1f1(n_max + 0.5, n_max + 1.5, -x) / (2 * n_max + 1)
    if n_max:
        ex = math.exp(-x)
        for n in range(n_max - 1, -1, -1):
            out[n] = (2 * x * out[n + 1] + ex) / (2 * n + 1)
    return out


@lru_cache(maxsize=200000)
def _e_table(l1: int, l2: int, a: float, b: float, qx: float):
    """Hermite expansion coefficients E[i, j, t] for one primitive pair
    along one dimension, i <= l1, j <= l2, t <= i + j."""
    p = a + b
    mu = a * b / p
    tbl = np.zeros((l1 + 1, l2 + 1, l1 + l2 + 2))
    tbl[0, 0, 0] = math.exp(-mu * qx * qx)
    for i in range(1, l1 + 1):
        for t in range(i + 1):
            val = 0.0
            if t > 0:
                val += tbl[i - 1, 0, t - 1] / (2 * p)
            val -= (mu * qx / a) * tbl[i - 1, 0, t]
            val += (t + 1) * tbl[i - 1, 0, t + 1]
            tbl[i, 0, t] = val
    for j in range(1, l2 + 1):
        for i in range(l1 + 1):
            for t in range(i + j + 1):
                val = 0.0
                if t > 0:
                    val += tbl[i, j - 1, t - 1] / (2 * p)
                val += (mu * qx / b) * tbl[i, j - 1, t]
                val += (t + 1) * tbl[i, j - 1, t + 1]
                tbl[i, j, t] = val
    return tbl


def _overlap_prim(a, lmn1, ra, b, lmn2, rb) -> float:
    p = a + b
    s = (math.pi / p) ** 1.5
    for d in range(3):
        tbl = _e_table(lmn1[d], lmn2[d], a, b, ra[d] - rb[d])
        s *= tbl[lmn1[d], lmn2[d], 0]
    return s


def overlap(f1: BasisFunction, f2: BasisFunction) -> float:
    acc = 0.0
    for a, ca in zip(f1.exponents, f1.norms):
        for b, cb in zip(f2.exponents, f2.norms):
            acc += ca * cb * _overlap_prim(a, f1.lmn, f1.center, b, f2.lmn, f2.center)
    return acc


def _kinetic_prim(a, lmn1, ra, b, lmn2, rb) -> float:
    l2, m2, n2 = lmn2

    def ov(lmn):
        if min(lmn) < 0:
            return 0.0
        return _overlap_prim(a, lmn1, ra, b, lmn, rb)

    term0 = b * (2 * (l2 + m2 + n2) + 3) * ov((l2, m2, n2))
    term1 = -2.0 * b * b * (
        ov((l2 + 2, m2, n2)) + ov((l2, m2 + 2, n2)) + ov((l2, m2, n2 + 2))
    )
    term2 = -0.5 * (
        l2 * (l2 - 1) * ov((l2 - 2, m2, n2))
        + m2 * (m2 - 1) * ov((l2, m2 - 2, n2))
        + n2 * (n2 - 1) * ov((l2, m2, n2 - 2))
    )
    return term0 + term1 + term2


def kinetic(f1: BasisFunction, f2: BasisFunction) -> float:
    acc = 0.0
    for a, ca in zip(f1.exponents, f1.norms):
        for b, cb in zip(f2.exponents, f2.norms):
            acc += ca * cb * _kinetic_prim(a, f1.lmn, f1.center, b, f2.lmn, f2.center)
    return acc


def _hermite_coulomb(t_max: int, u_max: int, v_max: int, p: float, pc: np.ndarray):
    """Table R[t, u, v] of Hermite Coulomb integrals at auxiliary order 0.

    Built from R^{(n)}_{000} = (-2p)^n F_n(p |PC|^2) by downward angular
    recursion, carrying the auxiliary order explicitly.
    """
    n_max = t_max + u_max + v_max
    base = boys_array(n_max, p * float(pc @ pc))
    powers = (-2.0 * p) ** np.arange(n_max + 1)
    # r[n][t, u, v] for n + t + u + v <= n_max
    tables = [np.zeros((t_max + 1, u_max + 1, v_max + 1)) for _ in range(n_max + 1)]
    for n in range(n_max + 1):
        tables[n][0, 0, 0] = powers[n] * base[n]
    for total in range(1, n_max + 1):
        for t in range(min(t_max, total) + 1):
            for u in range(min(u_max, total - t) + 1):
                v = total - t - u
                if v > v_max or v < 0:
                    continue
                for n in range(n_max - total + 1):
                    if v > 0:
                        val = pc[2] * tables[n + 1][t, u, v - 1]
                        if v > 1:
                            val += (v - 1) * tables[n + 1][t, u, v - 2]
                    elif u > 0:
                        val = pc[1] * tables[n + 1][t, u - 1, v]
                        if u > 1:
                            val += (u - 1) * tables[n + 1][t, u - 2, v]
                    else:
                        val = pc[0] * tables[n + 1][t - 1, u, v]
                        if t > 1:
                            val += (t - 1) * tables[n + 1][t - 2, u, v]
                    tables[n][t, u, v] = val
    return tables[0]


def nuclear_attraction(
    f1: BasisFunction, f2: BasisFunction, charges, coords
) -> float:
    """Sum over nuclei of -Z <f1| 1/|r-C| |f2>."""
    l1, m1, n1 = f1.lmn
    l2, m2, n2 = f2.lmn
    acc = 0.0
    for a, ca in zip(f1.exponents, f1.norms):
        for b, cb in zip(f2.exponents, f2.norms):
            p = a + b
            big_p = (a * f1.center + b * f2.center) / p
            ex = _e_table(l1, l2, a, b, f1.center[0] - f2.center[0])
            ey = _e_table(m1, m2, a, b, f1.center[1] - f2.center[1])
            ez = _e_table(n1, n2, a, b, f1.center[2] - f2.center[2])
            pref = ca * cb * 2.0 * math.pi / p
            for z, c in zip(charges, coords):
                r = _hermite_coulomb(l1 + l2, m1 + m2, n1 + n2, p, big_p - c)
                val = 0.0
                for t in range(l1 + l2 + 1):
                    et = ex[l1, l2, t]
                    if et == 0.0:
                        continue
                    for u in range(m1 + m2 + 1):
                        eu = ey[m1, m2, u]
                        if eu == 0.0:
                            continue
                        for v in range(n1 + n2 + 1):
                            val += et * eu * ez[n1, n2, v] * r[t, u, v]
                acc -= pref * z * val
    return acc


def _hermite_density(f, g, a, b):
    """Per-dimension E tables and the Gaussian product center for one
    primitive pair."""
    ex = _e_table(f.lmn[0], g.lmn[0], a, b, f.center[0] - g.center[0])
    ey = _e_table(f.lmn[1], g.lmn[1], a, b, f.center[1] - g.center[1])
    ez = _e_table(f.lmn[2], g.lmn[2], a, b, f.center[2] - g.center[2])
    return ex[f.lmn[0], g.lmn[0], :], ey[f.lmn[1], g.lmn[1], :], ez[f.lmn[2], g.lmn[2], :]


def electron_repulsion(
    f1: BasisFunction, f2: BasisFunction, f3: BasisFunction, f4: BasisFunction
) -> float:
    """(f1 f2 | f3 f4) in chemist notation."""
    l1, m1, n1 = f1.lmn
    l2, m2, n2 = f2.lmn
    l3, m3, n3 = f3.lmn
    l4, m4, n4 = f4.lmn
    lt, ut, vt = l1 + l2, m1 + m2, n1 + n2
    ls, us, vs = l3 + l4, m3 + m4, n3 + n4
    acc = 0.0
    for a, ca in zip(f1.exponents, f1.norms):
        for b, cb in zip(f2.exponents, f2.norms):
            p = a + b
            big_p = (a * f1.center + b * f2.center) / p
            e1x, e1y, e1z = _hermite_density(f1, f2, a, b)
            for c, cc in zip(f3.exponents, f3.norms):
                for d, cd in zip(f4.exponents, f4.norms):
                    q = c + d
                    big_q = (c * f3.center + d * f4.center) / q
                    e2x, e2y, e2z = _hermite_density(f3, f4, c, d)
                    alpha = p * q / (p + q)
                    r = _hermite_coulomb(
                        lt + ls, ut + us, vt + vs, alpha, big_p - big_q
                    )
                    val = 0.0
                    for t in range(lt + 1):
                        if e1x[t] == 0.0:
                            continue
                        for u in range(ut + 1):
                            if e1y[u] == 0.0:
                                continue
                            for v in range(vt + 1):
                                w1 = e1x[t] * e1y[u] * e1z[v]
                                if w1 == 0.0:
                                    continue
                                for tau in range(ls + 1):
                                    if e2x[tau] == 0.0:
                                        continue
                                    for nu in range(us + 1):
                                        if e2y[nu] == 0.0:
                                            continue
                                        for phi in range(vs + 1):
                                            w2 = e2x[tau] * e2y[nu] * e2z[phi]
                                            if w2 == 0.0:
                                                continue
                                            sign = -1.0 if (tau + nu + phi) & 1 else 1.0
                                            val += w1 * w2 * sign * r[t + tau, u + nu, v + phi]
                    acc += (
                        ca
                        * cb
                        * cc
                        * cd
                        * 2.0
                        * math.pi**2.5
                        / (p * q * math.sqrt(p + q))
                        * val
                    )
    return acc


def build_matrices(functions, charges, coords):
    """Overlap, kinetic, nuclear-attraction matrices (Cartesian AO basis)."""
    n = len(functions)
    s = np.zeros((n, n))
    t = np.zeros((n, n))
    v = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            s[i, j] = s[j, i] = overlap(functions[i], functions[j])
            t[i, j] = t[j, i] = kinetic(functions[i], functions[j])
            v[i, j] = v[j, i] = nuclear_attraction(
                functions[i], functions[j], charges, coords
            )
    return s, t, v


def build_eri(functions) -> np.ndarray:
    """Full (pq|rs) tensor using 8-fold permutational symmetry."""
    n = len(functions)
    eri = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(i + 1):
            ij = i * (i + 1) // 2 + j
            for k in range(n):
                for l in range(k + 1):
                    kl = k * (k + 1) // 2 + l
                    if ij < kl:
                        continue
                    val = electron_repulsion(
                        functions[i], functions[j], functions[k], functions[l]
                    )
                    for a, b in ((i, j), (j, i)):
                        for c, d in ((k, l), (l, k)):
                            eri[a, b, c, d] = val
                            eri[c, d, a, b] = val
    return eri
