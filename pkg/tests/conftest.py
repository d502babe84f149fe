"""Shared builders for the test suite."""

from normalcone.rings import RingContext


def quotient_xy_y4(cap=12, field=None):
    """k[x,y]/(xy, y^4): a line with an embedded fat point at the origin."""
    kwargs = {"relations": ["x*y", "y^4"], "trunc_cap": cap}
    if field is not None:
        kwargs["field"] = field
    return RingContext("x,y", **kwargs)


def quotient_xz_yz_zk(n, cap=12):
    """k[x,y,z]/(xz, yz, z^{n+2}): a plane with an embedded z-thickening."""
    return RingContext("x,y,z", relations=["x*z", "y*z", f"z^{n + 2}"],
                       trunc_cap=cap)


def quotient_x2_xy(cap=18):
    """k[x,y]/(x^2, xy): the ring where no perturbation level is safe."""
    return RingContext("x,y", relations=["x^2", "x*y"], trunc_cap=cap)


def random_poly(ring, rng, maxdeg, nterms, mindeg=1):
    """Sum of nterms random monomials with coefficients in {-2..2}\\{0}."""
    out = ring.zero
    for _ in range(nterms):
        e = [0] * ring.n_vars
        for _ in range(rng.randint(mindeg, maxdeg)):
            e[rng.randrange(ring.n_vars)] += 1
        out = out + ring.mono(tuple(e), rng.choice([-2, -1, 1, 2]))
    return out
