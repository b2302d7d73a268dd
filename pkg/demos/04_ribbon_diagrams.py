"""Writing and evaluating ribbon diagrams.

Diagrams are stacks of slices over seven tokens: id, cap, cup, node, x
(crossing), t+ and t- (half twists).  Slices separate on newlines or "/";
evaluation contracts them bottom to top into an exact linear map.
"""

from halftwist import compose, evaluate, expand_left_twists, parse, parse_algebra

a = parse_algebra("cl(1,0)")

print("The projective plane: a cup, one right half twist, a cap,")
print("and one internal triangulation vertex (the R 1 header):")
rp2 = parse("R 1 / cup / id t+ / cap")
print("  value =", evaluate(rp2, a).scalar())

print()
print("Three right twists instead give the other pin structure:")
rp2_other = parse("R 1 / cup / id t+ / id t+ / id t+ / cap")
print("  value =", evaluate(rp2_other, a).scalar())

print()
print("A left twist is the inverse; expanding it into three rights agrees:")
with_left = parse("R 1 / cup / id t- / cap")
print("  t- value      =", evaluate(with_left, a).scalar())
print("  expanded value =", evaluate(expand_left_twists(with_left), a).scalar())

print()
print("The sphere needs two vertices:")
print("  value =", evaluate(parse("R 2 / cup / cap"), a).scalar())

print()
print("A plain loop counts the basis; a loop with a full twist on one")
print("strand counts it with signs (the superdimension):")
print("  plain loop:", evaluate(parse("cup / cap"), a).scalar())
print("  with full twist:", evaluate(parse("cup / id t+ / id t+ / cap"), a).scalar())

print()
print("Open diagrams are linear maps; composition is exact:")
lower = parse("R 1 / cup")
upper = parse("bottom 2 / id t+ / cap")
print("  compose(lower, upper) =", evaluate(compose(lower, upper), a).scalar())
block = evaluate(lower, a).then(evaluate(upper, a))
print("  block composition     =", block.scalar())

print()
print("The product of two algebra elements as a diagram (mul macro):")
mul = parse("bottom 2\nmul")
blk = evaluate(mul, a)
for (ins, outs), v in blk.entries():
    labels = " (x) ".join(a.labels[i] for i in ins)
    print(f"  {labels:12s} -> {a.labels[outs[0]]:4s} weight {v!r}")
