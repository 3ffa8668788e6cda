"""Pure-NumPy implementations of the search hot kernels.

This is the fallback backend used when the compiled extension
(``qdownfold._kernels``) is unavailable.  Both backends expose the same
functions over the same packed representation: a Hamiltonian's terms are
parallel ``uint64`` arrays ``(xs, zs)`` of x/z bit vectors (bit q = qubit q,
so n_qubits <= 64), sorted lexicographically by ``(x, z)``.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

_PAIR_DTYPE = np.dtype([("x", "<u8"), ("z", "<u8")])


def _pair_keys(xs: np.ndarray, zs: np.ndarray) -> np.ndarray:
    keys = np.empty(xs.shape[0], dtype=_PAIR_DTYPE)
    keys["x"] = xs
    keys["z"] = zs
    return keys


def _parity(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a).astype(np.uint8) & 1


def anticommute_mask(xs: np.ndarray, zs: np.ndarray, xp: int, zp: int) -> np.ndarray:
    """Boolean mask of terms anticommuting with the Pauli (xp, zp)."""
    xp64 = np.uint64(xp)
    zp64 = np.uint64(zp)
    form = np.bitwise_count(xs & zp64) + np.bitwise_count(zs & xp64)
    return (form & 1).astype(bool)


def growth_stats(xs: np.ndarray, zs: np.ndarray, xp: int, zp: int) -> tuple[int, int]:
    """(|H_A|, gamma) for candidate (xp, zp) against the sorted term set.

    gamma counts the commutator labels (x ^ xp, z ^ zp) of anticommuting
    terms that are absent from the term set; those labels are pairwise
    distinct, so no dedup pass is needed.
    """
    mask = anticommute_mask(xs, zs, xp, zp)
    n_anti = int(np.count_nonzero(mask))
    if n_anti == 0:
        return 0, 0
    keys = _pair_keys(xs, zs)
    queries = _pair_keys(xs[mask] ^ np.uint64(xp), zs[mask] ^ np.uint64(zp))
    pos = np.searchsorted(keys, queries)
    pos_clipped = np.minimum(pos, keys.shape[0] - 1)
    present = keys[pos_clipped] == queries
    present &= pos < keys.shape[0]
    gamma = n_anti - int(np.count_nonzero(present))
    return n_anti, gamma


def anticommute_counts(
    xs: np.ndarray, zs: np.ndarray, xc: int, zcs: np.ndarray
) -> np.ndarray:
    """|H_A| for several candidates sharing x-bits ``xc``."""
    out = np.empty(zcs.shape[0], dtype=np.int64)
    xc64 = np.uint64(xc)
    zx = np.bitwise_count(zs & xc64).astype(np.uint8)
    for i in range(zcs.shape[0]):
        form = np.bitwise_count(xs & zcs[i]).astype(np.uint8) + zx
        out[i] = int(np.count_nonzero(form & 1))
    return out


def commutator_multiset(
    zs: np.ndarray,
    offsets: np.ndarray,
    mus: np.ndarray,
    pair_i: np.ndarray,
    pair_j: np.ndarray,
) -> tuple[np.ndarray, np.ndarray, int]:
    """Accumulate the multiset of nonzero pairwise commutator z-labels.

    For every valid x-string pair (groups ``pair_i[k]``, ``pair_j[k]``) the
    commutator of each cross-group term pair is queried; anticommuting pairs
    contribute the label z_a ^ z_b.  All labels share the target x-string,
    so the multiset is keyed on z alone.  Returns (unique z labels ascending,
    multiplicities, number of commutator queries).
    """
    hits: list[np.ndarray] = []
    n_query = 0
    for k in range(pair_i.shape[0]):
        gi = int(pair_i[k])
        gj = int(pair_j[k])
        za = zs[offsets[gi] : offsets[gi + 1]]
        zb = zs[offsets[gj] : offsets[gj + 1]]
        n_query += za.shape[0] * zb.shape[0]
        # anticommuting iff popcount(mu_i & z_b) + popcount(mu_j & z_a) is odd
        pa = np.bitwise_count(zb & mus[gi]).astype(np.uint8) & 1
        pb = np.bitwise_count(za & mus[gj]).astype(np.uint8) & 1
        anti = pa[np.newaxis, :] != pb[:, np.newaxis]
        labels = (za[:, np.newaxis] ^ zb[np.newaxis, :])[anti]
        if labels.size:
            hits.append(labels)
    if not hits:
        return np.empty(0, dtype=np.uint64), np.empty(0, dtype=np.int64), n_query
    uniq, counts = np.unique(np.concatenate(hits), return_counts=True)
    return uniq, counts.astype(np.int64), n_query


def profile_sweep(
    xs: np.ndarray, zs: np.ndarray, mu: int, z_members: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """(|H_A|, gamma) for every partition member (mu, z_members[i])."""
    n = z_members.shape[0]
    n_anti = np.empty(n, dtype=np.int64)
    gamma = np.empty(n, dtype=np.int64)
    mu64 = np.uint64(mu)
    keys = _pair_keys(xs, zs)
    zx = np.bitwise_count(zs & mu64).astype(np.uint8)
    for i in range(n):
        zc = z_members[i]
        form = (np.bitwise_count(xs & zc).astype(np.uint8) + zx) & 1
        mask = form.astype(bool)
        na = int(np.count_nonzero(mask))
        n_anti[i] = na
        if na == 0:
            gamma[i] = 0
            continue
        queries = _pair_keys(xs[mask] ^ mu64, zs[mask] ^ zc)
        pos = np.searchsorted(keys, queries)
        pos_clipped = np.minimum(pos, keys.shape[0] - 1)
        present = keys[pos_clipped] == queries
        present &= pos < keys.shape[0]
        gamma[i] = na - int(np.count_nonzero(present))
    return n_anti, gamma
