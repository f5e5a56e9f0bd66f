"""Regenerate tests/fixtures/special_functions.csv from mpmath at 50 digits."""

import pathlib

import mpmath

mpmath.mp.dps = 50

ARGS = {
    "zeta": ["-7.5", "-3", "-2.5", "-1", "-0.5", "0", "0.25", "0.5", "0.9", "0.999",
             "1.001", "1.1", "1.5", "2", "2.5", "3", "4.2", "8", "20", "40"],
    "gamma": ["-3.5", "-2.5", "-1.5", "-0.5", "0.001", "0.1", "0.5", "1", "1.5", "2.5",
              "3.3", "5", "7.5", "10", "15.2", "20", "30", "50.5", "100", "170.5"],
    "digamma": ["-7.3", "-3.5", "-2.5", "-1.5", "-0.5", "-0.1", "0.1", "0.25", "0.5", "1",
                "1.25", "1.5", "2", "3.7", "5", "10", "20", "100", "1000", "10000"],
}

FUNCS = {"zeta": mpmath.zeta, "gamma": mpmath.gamma, "digamma": mpmath.digamma}


def main() -> None:
    out = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "special_functions.csv"
    lines = ["function,x,value"]
    for name, args in ARGS.items():
        for a in args:
            # The double nearest to the decimal literal is the actual argument.
            x = mpmath.mpf(float(a))
            lines.append(f"{name},{a},{mpmath.nstr(FUNCS[name](x), 30, min_fixed=1, max_fixed=0)}")
    out.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
