"""
Closed dimension formulas
Linear systems of cones, expected codimension, and the components of the
configuration spaces of two and three star points
"""

from math import comb

from services.fields import euler_phi


def binom(n, k):
    """Binomial coefficient, 0 outside 0 <= k <= n"""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def linear_system_dim(N, d, e):
    """Projective dimension of P_d(L) for a suited configuration of e triples"""
    return binom(d - e + N, N)


def restriction_expected_dim(N, d, e):
    return binom(d - e + N - 1, N - 1)


def expected_codim(N, d, e):
    """Expected codimension f of the configurations of e star points"""
    full = binom(N + d - 1, N - 1)
    f = 0
    for i in range(2, min(e, d + 1) + 1):
        f += full - binom(N + d - i, N - 1) - 1
    if e > d + 1:
        f += (e - d - 1) * (full - 1)
    return f


def incidence_free_dimension(N, d, e):
    """dim P_d^{e,0}: each triple is a plane, a point on it and a cone in it"""
    return e * (2 * N + binom(N + d - 2, N - 2) - 2)


def expected_dimension(N, d, e):
    return incidence_free_dimension(N, d, e) - expected_codim(N, d, e)


def vt_dimension(N, d, order):
    """Dimension of the component V_t for t of the given multiplicative order"""
    total = sum(binom(N + d - 3 - j, N - 3) for j in range(0, d + 1) if j % order == 0)
    return 6 * N + total - 5


def v1_dimension(N, d):
    return 3 * N + 2 * (N - 1) + binom(N + d - 2, N - 2) - 1


def two_general_dimension(N, d):
    return 2 * N + 2 * (N - 1) + binom(N + d - 2, N - 2) - 1


def two_line_in_x_dimension(N, d):
    if N == 3:
        return 2 * (d + 3)
    return 2 * N + 2 * (N - 2) + binom(N + d - 4, N - 4) + 2 * binom(N + d - 3, N - 2) - 1


def intermediate_dimension(N, d):
    tail = sum(binom(N + d - k - 4, N - 3) for k in range(1, d))
    return 3 * N + (N - 1) + 2 * (N - 2) + binom(N + d - 3, N - 3) + tail - 1


def intermediate_fibre(N, d):
    """dim P_d(L) on the intermediate component"""
    return binom(N + d - 3, N)


def extremal_dimensions(N, d):
    """Both extremal families: hypersurface-locus and configuration-space dimensions"""
    locus_one = (
        3 * N + 3 * (N - 3) + binom(N + d - 3, N) + 3 * binom(N + d - 4, N - 2)
        + 3 * binom(N + d - 5, N - 4) + binom(N + d - 6, N - 6) - 1
    )
    locus_two = (
        3 * N + 2 * (N - 3) + binom(N + d - 2, N) + 2 * binom(N + d - 4, N - 3)
        + binom(N + d - 5, N - 3) + binom(N + d - 5, N - 5)
    )
    config_one = locus_one - binom(N + d - 3, N)
    config_two = (
        3 * N + 2 * (N - 3) + binom(N + d - 3, N - 1) + 2 * binom(N + d - 4, N - 3)
        + binom(N + d - 5, N - 3) + binom(N + d - 5, N - 5)
    )
    return {
        'locus_indep': locus_one,
        'locus_dep': locus_two,
        'config_indep': config_one,
        'config_dep': config_two,
        'relation_holds': locus_two == locus_one + 4 - N + binom(N + d - 6, N - 1),
        'dep_dominates': locus_two > locus_one,
        # For d in {3, 4, 5} the classification is only expected to hold
        'conjectural': d <= 5,
    }


def fermat_star_count(N, d):
    return d * binom(N + 1, 2)


def component_count(d):
    return 2 * d - 2


def expected_component_count(N, d):
    if N == 3:
        return euler_phi(d) + euler_phi(d - 1)
    return euler_phi(d)


def codim_bound_holds(N, d, e, dimension):
    """Component dimension is at least the expected one, i.e. codimension at most f"""
    return incidence_free_dimension(N, d, e) - dimension <= expected_codim(N, d, e)
