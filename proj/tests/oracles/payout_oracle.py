# SPDX-License-Identifier: MIT
# Independent payout table, written straight from the incentive pseudocode.
# Emits tests/golden/payout_table.txt (numeric rows at fixed points) and
# tests/golden/payout_symbolic.txt (burn per clause as a sympy expression).
import itertools
import pathlib
import sympy as sp

p, e, r, dL, dF = sp.symbols("p e r d_L d_F")

POINTS = [
    dict(p=4, e=1, r=0, d_L=10, d_F=10),
    dict(p=6, e=1, r=4, d_L=10, d_F=10),
    dict(p=sp.Rational(7, 3), e=sp.Rational(1, 2), r=1, d_L=5, d_F=3),
]


def two(c1, c2):
    """Returns (clause, credits) for two relays; None means no entry."""
    if c1 is None and c2 is None:
        return "C10", {"R1": dF, "R2": dF, "LW": dL}
    if c1 is None or c2 is None:
        who, c = ("R1", c1) if c2 is None else ("R2", c2)
        oth = "R2" if who == "R1" else "R1"
        if c == "V":
            cr = {who: p + dF, oth: dF, "LW": e / 2}
            cl = "C7"
        elif c == "I":
            cr = {oth: dF, "LW": (p + e) / 2 + dF / 2}
            cl = "C8"
        else:
            cr = {who: p / 2 - r + dF, oth: dF, "LW": e / 2 + r}
            cl = "C9"
        cr["LW"] = cr.get("LW", 0) + dL
        return cl, cr
    # Payout: walk the branches in the order the pseudocode does
    cr = {}
    if c1 in ("V", "I"):
        if c1 == "V":
            if c2 in ("V", "I"):
                if c2 == "V":
                    cl, cr = "C1", {"R1": p / 2 + dF, "R2": p / 2 + dF, "LW": e}
                else:
                    cl, cr = "C2", {"R1": p + 3 * dF / 2, "LW": e + dF / 2}
            else:
                cl, cr = "C3", {"R1": p + 3 * dF / 2, "LW": e + dF / 2}
        else:
            if c2 in ("V", "I"):
                if c2 == "V":
                    cl, cr = "C2", {"R2": p + 3 * dF / 2, "LW": e + dF / 2}
                else:
                    cl, cr = "C4", {"LW": p + e + 2 * dF}
            else:
                # the figure credits R1 here, but R1's proof just failed; the
                # utility tables pay the bottom claimer, so we do too
                cl, cr = "C5", {"R2": p / 2 - r + dF, "LW": p / 2 + e + r + dF}
    else:
        if c2 in ("V", "I"):
            if c2 == "V":
                cl, cr = "C3", {"R2": p + 3 * dF / 2, "LW": e + dF / 2}
            else:
                cl, cr = "C5", {"R1": p / 2 - r + dF, "LW": p / 2 + e + r + dF}
        else:
            cl, cr = "C6", {"R1": p / 2 - r + dF, "R2": p / 2 - r + dF, "LW": e + 2 * r}
    cr["LW"] = cr.get("LW", 0) + dL
    return cl, cr


# Single relay. d_L goes back to the client on every branch (decision,
# mirrors the two-relay wrapper); the no-feedback branch credits it anyway.
def one(c):
    if c is None:
        return "one.none", {"R1": dF, "LW": dL}
    if c == "V":
        return "one.valid", {"R1": p + dF, "LW": e + dL}
    if c == "I":
        return "one.invalid", {"LW": p + e + dF + dL}
    return "one.bottom", {"R1": p - r + dF, "LW": e + r + dL}


def aug(shape):
    if shape == "B,debated":
        return "aug.debate", {"PFN": dF, "LW": p + e + dL}
    if shape == "B,undisputed":
        return "aug.timer", {"R1": dF + p, "LW": e + dL}
    cl, cr = one(None if shape == "-" else shape)
    return "aug" + cl[3:], cr


def cases():
    opts = [None, "V", "I", "B"]
    name = lambda c: "-" if c is None else c
    for a, b in itertools.product(opts, opts):
        cl, cr = two(a, b)
        yield "two_relay", f"{name(a)},{name(b)}", cl, cr, p + e + 2 * dF + dL
    for a in opts:
        cl, cr = one(a)
        yield "one_relay", name(a), cl, cr, p + e + dF + dL
    for s in ["-", "V", "I", "B,debated", "B,undisputed"]:
        cl, cr = aug(s)
        yield "augmented", s, cl, cr, p + e + dF + dL


def fmt(x):
    x = sp.nsimplify(x)
    return str(x)


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "golden"
    out.mkdir(exist_ok=True)
    sym_lines, num_lines = [], []
    for kind, shape, cl, cr, locked in cases():
        burn = sp.simplify(locked - sum(cr.values()))
        sym_lines.append(f"{kind} {shape} {cl} burn={sp.sstr(sp.expand(burn))}")
        for i, pt in enumerate(POINTS):
            sub = {p: pt["p"], e: pt["e"], r: pt["r"], dL: pt["d_L"], dF: pt["d_F"]}
            vals = {k: sp.Rational(sp.sympify(v).subs(sub)) for k, v in cr.items()}
            b = sp.Rational(burn.subs(sub))
            assert sum(vals.values()) + b == sp.Rational(locked.subs(sub))
            parties = " ".join(f"{k}={fmt(vals.get(k, 0))}" for k in ("LW", "R1", "R2", "PFN"))
            num_lines.append(f"{kind} {shape} {cl} point={i} {parties} burn={fmt(b)}")
    (out / "payout_symbolic.txt").write_text("\n".join(sym_lines) + "\n")
    pts = "\n".join(
        f"# point={i} " + " ".join(f"{k}={fmt(v)}" for k, v in pt.items()) for i, pt in enumerate(POINTS)
    )
    (out / "payout_table.txt").write_text(pts + "\n" + "\n".join(num_lines) + "\n")


if __name__ == "__main__":
    main()
