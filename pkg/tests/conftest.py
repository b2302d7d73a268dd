import functools

from halftwist import CycloNum, RibbonDiagram, parse_algebra
from halftwist.ribbon import ARITY


@functools.lru_cache(maxsize=None)
def algebra(spec: str, alpha: str = "1"):
    """Cached constructor-algebra factory; algebras are never mutated."""
    return parse_algebra(spec, default_alpha=CycloNum.parse(alpha))


def random_diagram(rng, bottom: int, max_ops: int = 6, max_width: int = 4):
    """A random valid diagram with small boundary widths."""
    ops = []
    width = bottom
    for _ in range(rng.randrange(1, max_ops + 1)):
        choices = []
        if width >= 3:
            choices.append("node")
        if width >= 2:
            choices.extend(["cap", "x"])
        if width >= 1:
            choices.extend(["t+", "t-"])
        if width < max_width:
            choices.append("cup")
        if not choices:
            break
        kind = rng.choice(choices)
        n_in, n_out = ARITY[kind]
        pos = rng.randrange(width - n_in + 1) if width > n_in else 0
        ops.append((kind, pos))
        width += n_out - n_in
    return RibbonDiagram(bottom, tuple(ops), rng.randrange(3))
