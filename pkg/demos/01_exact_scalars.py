"""A tour of the exact scalar field.

Every number the engine produces lives in Q(zeta_8), represented by four
rationals.  No floats are involved until you explicitly ask for a decimal.
"""

from fractions import Fraction

from halftwist import CycloNum, I, ONE, SQRT2, ZETA, real_sqrt, zeta_pow

print("The primitive eighth root z = exp(i pi / 4):")
print("  z          =", ZETA)
print("  z^2        =", ZETA * ZETA, " (the imaginary unit)")
print("  z^4        =", ZETA**4)
print("  z - z^3    =", SQRT2, " which squares to", SQRT2 * SQRT2)

print()
print("Field arithmetic is exact:")
x = CycloNum(Fraction(1, 2), 1, 0, Fraction(-2, 3))
print("  x          =", x)
print("  1/x        =", x.inverse())
print("  x * (1/x)  =", x * x.inverse())
print("  (1+i)/sqrt2 =", (ONE + I) / SQRT2, " (back to z itself)")

print()
print("Conjugation flips z to its inverse:")
print("  conj(z)    =", ZETA.conjugate())
print("  conj(sqrt2)=", SQRT2.conjugate(), " (real values are fixed)")

print()
print("Positivity of real values is decided exactly:")
for value in (SQRT2 - ONE, ONE - SQRT2, CycloNum(3) - CycloNum(2) * SQRT2):
    print(f"  {value!r:>12}  positive? {value.is_real_positive()}")

print()
print("Square roots that stay in the field are found exactly:")
three = CycloNum(3) + CycloNum(2) * SQRT2
print("  sqrt(3 + 2 sqrt2) =", real_sqrt(three))
print("  sqrt(3)           =", real_sqrt(CycloNum(3)), " (leaves the field)")

print()
print("The wire format round-trips bit for bit:")
text = x.render()
print("  render:", text)
print("  parse :", CycloNum.parse(text))
print("  decimal approximation:", x.to_complex())

print()
print("All eighth roots of unity:")
for k in range(8):
    print(f"  z^{k} = {zeta_pow(k)!r:>8}   {zeta_pow(k).to_complex():.4f}")
