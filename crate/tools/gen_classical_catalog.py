"""Regenerate data/classical.tsv from the Rolfsen table shipped with spherogram.

Each PD crossing (a, b, c, d) lists edges counterclockwise starting at the
incoming under-edge a. The over strand runs b -> d when d follows b, which is
a negative crossing, and d -> b otherwise.
"""
import sys
import spherogram


def gauss_from_pd(pd):
    m = 2 * len(pd)
    events = {}
    for k, (a, b, c, d) in enumerate(pd, start=1):
        if (b + 1) % m == d:
            sign, over_in = -1, b
        else:
            sign, over_in = 1, d
        events[a] = ("U", k, sign)
        events[over_in] = ("O", k, sign)
    toks = []
    for e in range(m):
        p, k, s = events[e]
        toks.append(f"{p}{k}{'+' if s > 0 else '-'}")
    return "".join(toks)


def names():
    out = ["3_1", "4_1", "5_1", "5_2"]
    out += [f"6_{i}" for i in range(1, 4)]
    out += [f"7_{i}" for i in range(1, 8)]
    out += [f"8_{i}" for i in range(1, 22)]
    out += [f"9_{i}" for i in range(1, 50)]
    return out


def main():
    w = sys.stdout
    w.write("0_1\t0\tclassical-table\n")
    for name in names():
        link = spherogram.Link(name)
        pd = link.PD_code()
        code = gauss_from_pd(pd)
        assert code.count("+") - code.count("-") == 2 * sum(c.sign for c in link.crossings), name
        w.write(f"{name}\t{code}\tclassical-table\n")


if __name__ == "__main__":
    main()
