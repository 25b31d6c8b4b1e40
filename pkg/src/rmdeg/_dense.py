"""Raw polynomial arithmetic on ``{exponent_tuple: coefficient}`` dicts.

``p`` is the field characteristic (0 for QQ). Results never hold zero
coefficients. These helpers sit under both the public ``Polynomial`` class and
the Groebner engine.
"""

MAX_EXPONENT = 2**31 - 1


class ExponentOverflow(OverflowError):
    pass


def add(a: dict, b: dict, p: int, sign: int = 1) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + sign * c
        if p:
            v %= p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def scale(a: dict, c, p: int) -> dict:
    if not c:
        return {}
    if p:
        return {m: v * c % p for m, v in a.items()}
    return {m: v * c for m, v in a.items()}


def mono_mul(a: dict, mono: tuple, c, p: int) -> dict:
    if p:
        return {tuple(x + y for x, y in zip(m, mono)): v * c % p for m, v in a.items()}
    return {tuple(x + y for x, y in zip(m, mono)): v * c for m, v in a.items()}


def mul(a: dict, b: dict, p: int) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = out.get(m, 0) + c1 * c2
            if p:
                v %= p
            out[m] = v
    return {m: v for m, v in out.items() if v}


def check_exponents(a: dict):
    for m in a:
        for e in m:
            if e > MAX_EXPONENT:
                raise ExponentOverflow(f"exponent {e} exceeds {MAX_EXPONENT}")


def power(a: dict, k: int, one_exp: tuple, p: int) -> dict:
    if k < 0:
        raise ValueError("negative exponent")
    if a and max((max(m) if m else 0) for m in a) * k > MAX_EXPONENT:
        raise ExponentOverflow(f"power {k} overflows exponent range")
    result = {one_exp: 1}
    base = a
    while k:
        if k & 1:
            result = mul(result, base, p)
        k >>= 1
        if k:
            base = mul(base, base, p)
    return result


def total_degree(m: tuple) -> int:
    return sum(m)
