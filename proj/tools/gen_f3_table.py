"""Regenerate tests/fixtures/f3_small_x.csv: sum_n sin(n x) / n^mu at 50 digits.

The sum is Im Li_mu(exp(i x)), evaluated through Jonquiere's relation to the
Hurwitz zeta function, so no partial sums are involved.
"""

import pathlib

import mpmath

mpmath.mp.dps = 50

MUS = ["1.1", "1.25", "1.4"]
XS = ["1e-2", "1e-3"]


def f3(mu: mpmath.mpf, x: mpmath.mpf) -> mpmath.mpf:
    theta = x / (2 * mpmath.pi)
    i = mpmath.mpc(0, 1)
    li = mpmath.gamma(1 - mu) / (2 * mpmath.pi) ** (1 - mu) * (
        i ** (1 - mu) * mpmath.zeta(1 - mu, theta) + i ** (mu - 1) * mpmath.zeta(1 - mu, 1 - theta)
    )
    return li.imag


def main() -> None:
    out = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "f3_small_x.csv"
    lines = ["mu,x,value"]
    for m in MUS:
        for a in XS:
            # Arguments are the doubles nearest to the decimal literals.
            value = f3(mpmath.mpf(float(m)), mpmath.mpf(float(a)))
            lines.append(f"{m},{a},{mpmath.nstr(value, 30, min_fixed=1, max_fixed=0)}")
    out.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
