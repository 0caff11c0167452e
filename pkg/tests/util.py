from fusionkit.corpus import build_family
from fusionkit.perm import parse_cycles


def perm(text, n):
    return parse_cycles(text, n)


def family(name, *params, backend="oracle"):
    return build_family(name, *params).build(backend=backend)
