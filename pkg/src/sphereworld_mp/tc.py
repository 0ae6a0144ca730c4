"""Topological complexity of ordered configuration spaces of sphere worlds.

The same value serves F(D^n, k) (m = 0), F(R^n - Q_m, k) and F(X_{n,m}, k);
it depends on n only through its parity.
"""

from __future__ import annotations


def tc_row(n: int, m: int, k: int) -> tuple[int, str]:
    """Return (TC, human-readable formula row)."""
    if n < 2 or k < 2:
        raise ValueError(f"TC formulas hold for n >= 2 and k >= 2 (got n={n}, k={k})")
    if m < 0:
        raise ValueError(f"number of obstacles must be >= 0, got {m}")
    if n % 2 == 0:
        if m == 0:
            return 2 * k - 2, "n even, m = 0: 2k - 2"
        if m == 1:
            return 2 * k, "n even, m = 1: 2k"
        return 2 * k + 1, "n even, m >= 2: 2k + 1"
    if m == 0:
        return 2 * k - 1, "n odd, m = 0: 2k - 1"
    return 2 * k + 1, "n odd, m >= 1: 2k + 1"


def tc_value(n: int, m: int, k: int) -> int:
    return tc_row(n, m, k)[0]
