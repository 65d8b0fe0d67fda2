#!/usr/bin/env python3
"""Regenerate the constant tables embedded in mlp2sol/fixedpoint.py.

Prints Python source for LOG2E_Q256 and EXP2_FRACTION_FACTORS. The tables
are frozen into the package so that runtime needs no mpmath dependency and
the arithmetic stays bit-reproducible.
"""
from mpmath import mp, mpf, log, nint

mp.dps = 160

FRACTION_BITS = 128
PRODUCT_BITS = 192
LOG2E_BITS = 256


def main() -> None:
    log2e = 1 / log(mpf(2))
    print(f"LOG2E_Q256 = {int(nint(log2e * mpf(2) ** LOG2E_BITS))}")
    print()
    print("EXP2_FRACTION_FACTORS = (")
    for k in range(1, FRACTION_BITS + 1):
        factor = int(nint(mpf(2) ** (mpf(1) / 2**k) * mpf(2) ** PRODUCT_BITS))
        print(f"    {factor},")
    print(")")


if __name__ == "__main__":
    main()
