"""Independent reference implementations used to cross-check the package.

The finite-field oracle decides Witt equivalence of diagonal forms by
explicit isotropic-vector search and hyperbolic splitting, using only
hand-rolled modular linear algebra.  The naive presented-ring oracle
multiplies monomials by literal relation rewriting.
"""

from itertools import product


def _inv(x, p):
    return pow(x % p, p - 2, p)


def _eval(gram, v, w, p):
    n = len(gram)
    return sum(gram[i][j] * v[i] * w[j] for i in range(n) for j in range(n)) % p


def _find_isotropic(gram, p):
    """A nonzero vector v with v^T G v = 0, or None.

    For rank >= 3 it suffices to search the span of the first three basis
    vectors: if the restricted 3x3 block is singular its kernel vector is
    isotropic, and a nondegenerate ternary form over F_p always is.
    """
    n = len(gram)
    if n == 0:
        return None
    k = min(n, 3)
    for coords in product(range(p), repeat=k):
        if not any(coords):
            continue
        v = list(coords) + [0] * (n - k)
        if _eval(gram, v, v, p) == 0:
            return v
    return None


def _split_hyperbolic(gram, p, v):
    """Gram matrix of the orthogonal complement of a hyperbolic plane
    through the isotropic vector v."""
    n = len(gram)
    u = None
    for i in range(n):
        cand = [1 if j == i else 0 for j in range(n)]
        if _eval(gram, v, cand, p) != 0:
            u = cand
            break
    assert u is not None, "form must be nondegenerate"
    c = _eval(gram, v, u, p)
    quu = _eval(gram, u, u, p)
    # project the standard basis onto the complement of span(v, u)
    cinv = _inv(c, p)
    projected = []
    for i in range(n):
        w = [1 if j == i else 0 for j in range(n)]
        bvw = _eval(gram, v, w, p)
        buw = _eval(gram, u, w, p)
        # lambda, mu solve the 2x2 system for the span(v,u) component
        lam = (buw - quu * bvw * cinv) * cinv % p
        mu = bvw * cinv % p
        w2 = [(w[j] - lam * v[j] - mu * u[j]) % p for j in range(n)]
        projected.append(w2)
    basis = _row_reduce_basis(projected, p)
    m = len(basis)
    assert m == n - 2
    return [[_eval(gram, basis[i], basis[j], p) for j in range(m)] for i in range(m)]


def _row_reduce_basis(rows, p):
    basis = []
    pivots = []
    for row in rows:
        r = row[:]
        for b, c in zip(basis, pivots):
            if r[c] % p:
                f = r[c] * _inv(b[c], p) % p
                r = [(x - f * y) % p for x, y in zip(r, b)]
        for c, x in enumerate(r):
            if x % p:
                basis.append(r)
                pivots.append(c)
                break
    return basis


def fp_witt_trivial(entries, p):
    """Whether the diagonal form with the given unit entries is hyperbolic."""
    gram = [[entries[i] % p if i == j else 0 for j in range(len(entries))] for i in range(len(entries))]
    while gram:
        v = _find_isotropic(gram, p)
        if v is None:
            return False
        gram = _split_hyperbolic(gram, p, v)
    return True


def fp_witt_equivalent(e1, e2, p):
    """Witt equivalence via triviality of the difference form."""
    return fp_witt_trivial(list(e1) + [(-c) % p for c in e2], p)


# ---------------------------------------------------------------------------
# naive presented-ring arithmetic: W(k)[x, e] / (x^2 - 1, (1 + x) e)


def bn_naive_reduce(terms):
    """Rewrite {(x_exp, e_exp): coeff} to the normal form where x^2 -> 1
    and x*e^m -> -e^m for m >= 1."""
    out = {}
    for (a, m), c in terms.items():
        a %= 2
        if a and m:
            a, c = 0, -c
        key = (a, m)
        out[key] = out[key] + c if key in out else c
    return {k: c for k, c in out.items() if not c.is_zero()}


def bn_naive_mul(t1, t2):
    prod_terms = {}
    for (a1, m1), c1 in t1.items():
        for (a2, m2), c2 in t2.items():
            key = (a1 + a2, m1 + m2)
            c = c1 * c2
            prod_terms[key] = prod_terms[key] + c if key in prod_terms else c
    return bn_naive_reduce(prod_terms)


def bn_naive_add(t1, t2):
    out = dict(t1)
    for k, c in t2.items():
        out[k] = out[k] + c if k in out else c
    return bn_naive_reduce(out)
