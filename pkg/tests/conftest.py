import sympy as sp
from hypothesis import settings, strategies as st

from valdist.poly import Polynomial

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

Z = sp.Symbol("z")


def int_polys(min_degree=1, max_degree=8, bound=5):
    """Integer-coefficient polynomials with a nonzero leading coefficient."""
    def build(body, lead):
        return Polynomial(body + [lead])
    return st.integers(min_degree, max_degree).flatmap(
        lambda d: st.builds(build, st.lists(st.integers(-bound, bound), min_size=d, max_size=d),
                            st.integers(-bound, bound).filter(bool)))


def rational_root_polys(max_degree=8):
    """Polynomials whose derivative has only small rational roots, built as antiderivatives."""
    roots = st.lists(st.sampled_from([-3, -2, -1, 0, 1, 2, 3]), min_size=1, max_size=max_degree - 1)
    const = st.integers(-4, 4)
    return st.builds(lambda rs, c: Polynomial.from_roots(rs).antiderivative() + c, roots, const)


def to_sympy(p: Polynomial, var=Z):
    expr = 0
    for k, c in enumerate(p.coeffs):
        expr += (sp.Rational(c.re.numerator, c.re.denominator)
                 + sp.I * sp.Rational(c.im.numerator, c.im.denominator)) * var**k
    return sp.expand(expr)


def from_sympy(expr, var=Z) -> Polynomial:
    from valdist.gaussian import GaussianRational
    from fractions import Fraction
    coeffs = sp.Poly(sp.expand(expr), var).all_coeffs()[::-1]
    out = []
    for c in coeffs:
        re, im = sp.re(c), sp.im(c)
        out.append(GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q))))
    return Polynomial(out)


def random_rational_corpus(count=20, seed=20240611, max_degree=5):
    """Deterministic pseudo-random rational functions with small Gaussian-rational coefficients."""
    import random
    from fractions import Fraction

    from valdist.gaussian import GaussianRational
    from valdist.ratfunc import RationalFunction

    rng = random.Random(seed)

    def coeff():
        return GaussianRational(Fraction(rng.randint(-5, 5), rng.randint(1, 4)),
                                Fraction(rng.randint(-3, 3), rng.randint(1, 4)))

    def poly(degree):
        cs = [coeff() for _ in range(degree)] + [GaussianRational(rng.randint(1, 3))]
        return Polynomial(cs)

    out = []
    while len(out) < count:
        f = RationalFunction(poly(rng.randint(0, max_degree)), poly(rng.randint(0, max_degree)))
        if not f.num.is_zero():
            out.append(f)
    return out
