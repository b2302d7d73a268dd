"""Quadratic enhancements and their Gauss sums: the independent oracle.

A pin structure on a closed surface is a Z/4-valued quadratic refinement of
the intersection form; its normalized Gauss sum is an eighth root of unity
that classifies the structure up to equivalence.  None of this touches the
tensor machinery, which is exactly what makes it a useful cross-check.
"""

from halftwist import (
    PinSurfacePresentation,
    abk,
    are_equivalent,
    dehn_twist_torus,
    parse_presentation,
    q_eval,
    render_presentation,
)

print("The four pin tori (values on the two standard cycles):")
for qx in (0, 2):
    for qy in (0, 2):
        p = PinSurfacePresentation(((qx, qy),), ())
        print(f"  q = ({qx},{qy})   Gauss sum = {abk(p)!r}")

print()
print("Dehn twists identify three of them:")
p = PinSurfacePresentation(((0, 0),), ())
for _ in range(3):
    q = dehn_twist_torus(p)
    print(f"  {render_presentation(p)} -> {render_presentation(q)}"
          f"   equivalent? {are_equivalent(p, q)}")
    p = q

print()
print("The two projective planes and the four Klein bottles:")
for cq in ((1,), (3,), (1, 1), (1, 3), (3, 1), (3, 3)):
    p = PinSurfacePresentation((), cq)
    print(f"  {render_presentation(p):22s} -> {abk(p)!r}")

print()
print("Evaluating the enhancement on homology classes of the Klein bottle")
print("with q = (1,1) on the two crosscap generators:")
klein = parse_presentation("g=0,c=2,q=[|1,1]")
for bits in ((0, 0), (1, 0), (0, 1), (1, 1)):
    print(f"  q{bits} = {q_eval(klein, bits)}")
print("  (the sum of the generators is the orientation-preserving curve)")

print()
print("A torus with three crosscaps, rank five:")
big = parse_presentation("g=1,c=3,q=[2,2|1,1,3]")
value = abk(big)
print(f"  {render_presentation(big)}")
print(f"  Gauss sum = {value!r}, modulus check: {value * value.conjugate()!r}")
