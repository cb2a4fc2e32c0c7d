"""Step-by-step run of the symmetry pipeline on the middle-thirds Cantor pair.

    python scripts/cantor_walkthrough.py [--svg-dir DIR]
"""

import argparse
from fractions import Fraction
from pathlib import Path

from homifs import HomogeneousIFS, cover, hull, mirror_candidate, theorem_pipeline
from homifs.multiset import scale, sumset
from homifs.plot import cover_svg
from homifs.symmetry import PipelineTrace
from homifs.textio import format_ifs


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--svg-dir", type=Path, help="also write level 0..4 cover plots here")
    args = parser.parse_args()

    phi = HomogeneousIFS.of(Fraction(1, 3), [0, 2])
    psi = mirror_candidate(phi)
    r, A, B = phi.ratio, phi.digits, psi.digits
    print("phi:", format_ifs(phi))
    print("psi:", format_ifs(psi), "(mirror candidate)")
    print("hull:", hull(phi).lo, hull(phi).hi)
    print("A + rA  =", sumset(A, scale(r, A)))
    print("B - rB  =", sumset(B, scale(-r, B)))
    print("rB + A  =", sumset(scale(r, B), A))
    print("-rA + B =", sumset(scale(-r, A), B))

    trace = PipelineTrace()
    verdict = theorem_pipeline(phi, psi, trace=trace)
    for step, outcome in trace.steps:
        print(f"  {step:20s} {outcome}")
    print("verdict:", verdict.kind)
    if verdict.kind == "symmetric":
        c = verdict.certificate
        print(f"C = {c.C}, digit centre = {c.digit_center}, attractor centre = {c.attractor_center}")

    if args.svg_dir:
        args.svg_dir.mkdir(parents=True, exist_ok=True)
        for k in range(5):
            path = args.svg_dir / f"cantor_level{k}.svg"
            path.write_text(cover_svg(cover(phi, k), hull(phi), f"{format_ifs(phi)}  level {k}"))
            print("wrote", path)


if __name__ == "__main__":
    main()
