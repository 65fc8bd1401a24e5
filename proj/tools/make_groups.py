"""Regenerates the bundled group files in data/groups.

Run from the repository root:  python3 tools/make_groups.py
"""
import pathlib

import mpmath as mp

mp.mp.dps = 40
OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "groups"


def mat(a, b, c, d):
    return mp.matrix([[a, b], [c, d]])


def normalize(m):
    s = mp.sqrt(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    return m / s


def rot(t):
    return mat(mp.expj(t / 2), 0, 0, mp.expj(-t / 2))


def octagon_generators():
    """Side pairings of the regular octagon with angle sum 2 pi, disc model.

    The half-turn about side midpoint i composed with a rotation pairs side j
    with side i; the choice below yields a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1 = 1.
    """
    inradius = mp.acosh(1 + mp.sqrt(2))
    m = mp.tanh(inradius / 2)

    def halfturn(i):
        t = mat(1, m, m, 1) / mp.sqrt(1 - m * m)
        h0 = t * rot(mp.pi) * mp.inverse(t)
        return rot(i * mp.pi / 4) * h0 * rot(-i * mp.pi / 4)

    def pair(i, j):
        return halfturn(i) * rot((i - j) * mp.pi / 4)

    disc = [pair(0, 2), mp.inverse(pair(1, 3)), pair(4, 6), mp.inverse(pair(5, 7))]
    cayley = mat(1j, 1j, -1, 1)  # disc -> upper half-plane, 0 -> i
    out = []
    for g in disc:
        h = normalize(cayley * g * mp.inverse(cayley))
        k = max(range(4), key=lambda i: abs(h[i // 2, i % 2]))
        phase = h[k // 2, k % 2] / abs(h[k // 2, k % 2])
        out.append(h / phase)
    return out


def loxodromic(p, q, lam):
    """Attracting fixed point p, repelling q, multiplier lam."""
    t = mat(p, q, 1, 1)
    s = mp.sqrt(lam)
    return normalize(t * mat(s, 0, 0, 1 / s) * mp.inverse(t))


def commutator(a, b):
    return a * b * mp.inverse(a) * mp.inverse(b)


def fmt(z):
    z = mp.mpc(z)
    return f"{mp.nstr(z.real, 17, min_fixed=-mp.inf, max_fixed=mp.inf)},{mp.nstr(z.imag, 17, min_fixed=-mp.inf, max_fixed=mp.inf)}"


def write(name, header, kind, gens, marking=None):
    lines = [f"# {line}" for line in header]
    lines.append(f"type {kind}")
    for gname, g in gens:
        entries = " ".join(fmt(g[i // 2, i % 2]) for i in range(4))
        lines.append(f"gen {gname} = ({entries})")
    if marking:
        lines.append("marking " + " ".join(marking))
    (OUT / name).write_text("\n".join(lines) + "\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    names = ["a1", "b1", "a2", "b2"]

    octa = octagon_generators()
    write("octagon.grp",
          ["Genus-2 Fuchsian group of the regular octagon, upper half-plane model.",
           "Dirichlet domain centred at i is the octagon itself."],
          "surface 2", list(zip(names, octa)), names)

    # Bending along the non-separating curve a1: compose b1 with a rotation
    # about the axis of a1. The rotation commutes with a1, so the relator
    # survives, and for small angles the group is quasi-Fuchsian.
    a1 = octa[0]
    tr = a1[0, 0] + a1[1, 1]
    root = mp.sqrt(tr * tr - 4)
    fix_a = ((tr + root) / 2 - a1[1, 1]) / a1[1, 0]
    fix_r = ((tr - root) / 2 - a1[1, 1]) / a1[1, 0]
    bend = loxodromic(fix_a, fix_r, mp.expj(mp.mpf("0.25")))
    bent = [octa[0], normalize(octa[1] * bend), octa[2], octa[3]]
    write("octagon-bent.grp",
          ["Quasi-Fuchsian deformation of octagon.grp: b1 composed with a rotation",
           "of angle 0.25 about the axis of a1 in upper half-space."],
          "surface 2", list(zip(names, bent)), names)

    write("cyclic.grp", ["Cyclic group generated by z -> 10 z, multiplier 0.1."],
          "free 1", [("g", mat(mp.sqrt(10), 0, 0, 1 / mp.sqrt(10)))])

    write("schottky.grp", ["Real Schottky group of rank 2 (Fuchsian, infinite area)."],
          "free 2",
          [("a", loxodromic(mp.mpf(1), mp.mpf(-1), mp.mpf("0.04"))),
           ("b", loxodromic(mp.mpf(5), mp.mpf(3), mp.mpf("0.03")))])

    write("schottky-complex.grp",
          ["Rank 2 Schottky group with complex multipliers and fixed points."],
          "free 2",
          [("a", loxodromic(mp.mpc(1, 0.2), mp.mpc(-1, 0.1), 0.05 * mp.expj(0.7))),
           ("b", loxodromic(mp.mpc(0.3, 2.5), mp.mpc(-0.2, -2.4), 0.04 * mp.expj(-1.1)))])


if __name__ == "__main__":
    main()
