"""Independent oracles for the test suite.

Everything here recomputes expected values from first principles with its
own dense representation (tuples of m-exponents over Fraction), sharing no
code with the package under test.  The defining equation of the log-backend
law is l(F(u, v)) = l(u) + l(v) with l(t) = t + m1 t^2 + m2 t^3 + ...;
solving it degree by degree needs no series reversion, so agreement with
the package's reversion-based table is meaningful evidence.
"""

from fractions import Fraction

# dense polynomial in m1..mk: dict mapping exponent tuples to Fraction;
# tuples are right-padded with zeros as needed


def mono_mul(e1, e2):
    n = max(len(e1), len(e2))
    e1 = e1 + (0,) * (n - len(e1))
    e2 = e2 + (0,) * (n - len(e2))
    return tuple(a + b for a, b in zip(e1, e2))


def poly_add(p, q):
    out = dict(p)
    for mono, c in q.items():
        acc = out.get(mono, Fraction(0)) + c
        if acc:
            out[mono] = acc
        else:
            out.pop(mono, None)
    return out


def poly_mul(p, q):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            mono = mono_mul(m1, m2)
            acc = out.get(mono, Fraction(0)) + c1 * c2
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
    return out


def poly_scale(p, c):
    c = Fraction(c)
    if not c:
        return {}
    return {m: v * c for m, v in p.items()}


def m_sym(k):
    """The symbol m_k as a dense polynomial."""
    exps = [0] * k
    exps[k - 1] = 1
    return {tuple(exps): Fraction(1)}


ONE = {(): Fraction(1)}


def normalize(p):
    """Strip trailing zeros from exponent tuples and drop zero entries."""
    out = {}
    for mono, c in p.items():
        while mono and mono[-1] == 0:
            mono = mono[:-1]
        if c:
            out[mono] = out.get(mono, Fraction(0)) + c
    return {m: c for m, c in out.items() if c}


# -- bivariate series: dict[(i, j)] -> dense poly ---------------------------

def biv_mul(f, g, top):
    out = {}
    for (i1, j1), p in f.items():
        for (i2, j2), q in g.items():
            if i1 + i2 + j1 + j2 > top:
                continue
            key = (i1 + i2, j1 + j2)
            prod = poly_mul(p, q)
            out[key] = poly_add(out.get(key, {}), prod)
    return {k: v for k, v in out.items() if v}


def log_law_coefficients(top):
    """All a_{i,j} with i + j <= top, solved from l(F) = l(u) + l(v).

    Returns dict[(i, j)] -> dense polynomial.  Degree-by-degree: the degree
    d part of F equals the degree d part of l(u) + l(v) minus the degree d
    part of sum_k m_k F^{k+1} computed from lower-degree parts of F only
    (F has no constant term, so F_d never feeds its own equation).
    """
    ell = {}  # l(u) + l(v) as a bivariate series
    for k in range(1, top + 1):
        coeff = ONE if k == 1 else m_sym(k - 1)
        ell[(k, 0)] = dict(coeff)
        ell[(0, k)] = dict(coeff)

    f = {}
    for d in range(1, top + 1):
        correction = {}
        power = dict(f)  # F^1 restricted to what is known (degrees < d)
        for k in range(1, d):
            power = biv_mul(power, f, top)  # F^{k+1}
            mk = m_sym(k)
            for (i, j), p in power.items():
                if i + j == d:
                    correction[(i, j)] = poly_add(
                        correction.get((i, j), {}), poly_mul(mk, p)
                    )
        for i in range(0, d + 1):
            j = d - i
            target = ell.get((i, j), {})
            value = poly_add(target, poly_scale(correction.get((i, j), {}), -1))
            if value:
                f[(i, j)] = value

    return {
        (i, j): normalize(p)
        for (i, j), p in f.items()
        if i >= 1 and j >= 1
    }


def log_inverse_coefficients(top):
    """Coefficients of chi(u) with l(chi(u)) = -l(u), as dict[k] -> dense poly."""
    ell = {k: (dict(ONE) if k == 1 else m_sym(k - 1)) for k in range(1, top + 1)}
    target = {k: poly_scale(p, -1) for k, p in ell.items()}

    chi = {}
    for d in range(1, top + 1):
        correction = {}
        power = dict(chi)
        for k in range(1, d):
            nxt = {}
            for a, p in power.items():
                for b, q in chi.items():
                    if a + b <= top:
                        nxt[a + b] = poly_add(nxt.get(a + b, {}), poly_mul(p, q))
            power = nxt  # chi^{k+1}
            if d in power:
                correction = poly_add(correction, poly_mul(m_sym(k), power[d]))
        value = poly_add(target.get(d, {}), poly_scale(correction, -1))
        if value:
            chi[d] = value
    return {k: normalize(p) for k, p in chi.items()}


def graded_to_dense(poly):
    """Convert a package polynomial over the log backend to the dense form."""
    out = {}
    for mono, coeff in poly.sorted_terms():
        exps = []
        for gen, e in mono:
            assert gen.kind == "m", f"unexpected generator {gen.name}"
            while len(exps) < gen.i:
                exps.append(0)
            exps[gen.i - 1] = e
        key = tuple(exps)
        out[key] = out.get(key, Fraction(0)) + Fraction(coeff)
    return normalize(out)
