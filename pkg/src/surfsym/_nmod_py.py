"""Pure-Python kernels for dense univariate arithmetic over Z/pZ.

Polynomials are lists of ints in ``[0, p)``, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).  ``p`` must be an odd prime
below 2**62.  The compiled twin in ``_nmod.pyx`` has the same signatures.
"""


def trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def mul(a, b, p):
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return trim([c % p for c in out])


def mul_trunc(a, b, n, p):
    """Product truncated to the first ``n`` coefficients."""
    if not a or not b:
        return []
    out = [0] * min(n, len(a) + len(b) - 1)
    m = len(out)
    for j, bj in enumerate(b):
        if j >= m:
            break
        if bj:
            lim = min(len(a), m - j)
            for i in range(lim):
                out[i + j] += a[i] * bj
    return trim([c % p for c in out])


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero mod p")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], trim(r)
    inv = pow(b[-1], p - 2, p)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] % p
        if c:
            c = c * inv % p
            q[k] = c
            for i in range(db + 1):
                r[k + i] = (r[k + i] - c * b[i]) % p
    return trim(q), trim([x % p for x in r[:db]])


def rem(a, b, p):
    return divmod_(a, b, p)[1]


def monic(a, p):
    if not a or a[-1] == 1:
        return list(a)
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def gcd(a, b, p):
    a = trim(list(a))
    b = trim(list(b))
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def powmod(a, e, m, p):
    """``a**e mod m`` over Z/pZ."""
    result = [1] if len(m) > 1 else []
    base = rem(a, m, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = rem(mul(base, base, p), m, p)
    return result


def eval_(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def eval_many(a, xs, p):
    return [eval_(a, x, p) for x in xs]


def interpolate(xs, ys, p):
    """Coefficients of the unique polynomial of degree < len(xs) through the points."""
    n = len(xs)
    coef = list(ys)
    # Newton divided differences
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            den = (xs[i] - xs[i - j]) % p
            coef[i] = (coef[i] - coef[i - 1]) * pow(den, p - 2, p) % p
    out = [0] * n
    for k in range(n - 1, -1, -1):
        # out = out * (x - xs[k]) + coef[k]
        xk = xs[k]
        for i in range(n - 1, 0, -1):
            out[i] = (out[i - 1] - xk * out[i]) % p
        out[0] = (coef[k] - xk * out[0]) % p
    return trim(out)


def resultant(a, b, p):
    """Resultant of two polynomials with their actual degrees."""
    a = trim(list(a))
    b = trim(list(b))
    if not a or not b:
        return 0
    res = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * pow(b[0], da, p) % p
        if da == 0:
            return res * pow(a[0], db, p) % p
        r = rem(a, b, p)
        if not r:
            return 0
        dr = len(r) - 1
        # Res(a,b) = (-1)^(da*db) lc(b)^(da-dr) Res(b, r)
        if (da * db) & 1:
            res = -res
        res = res * pow(b[-1], da - dr, p) % p
        a, b = b, r


def nullspace(rows, ncols, p):
    """Basis of the right nullspace of a matrix given as a list of rows."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        rowr = [x * inv % p for x in m[r]]
        m[r] = rowr
        for i in range(len(m)):
            if i != r:
                f = m[i][c] % p
                if f:
                    mi = m[i]
                    for k in range(c, ncols):
                        mi[k] = (mi[k] - f * rowr[k]) % p
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-m[i][fcol]) % p
        basis.append(v)
    return basis


def series_inv(a, n, p):
    """Inverse of a power series with ``a[0] != 0`` modulo x**n."""
    if not a or not a[0] % p:
        raise ZeroDivisionError("series is not invertible")
    inv0 = pow(a[0], p - 2, p)
    out = [inv0]
    for k in range(1, n):
        acc = 0
        for i in range(1, min(k, len(a) - 1) + 1):
            acc += a[i] * out[k - i]
        out.append((-acc * inv0) % p)
    return trim(out)


def eval2_series(rows, u, v, n, p):
    """sum_i sum_j rows[i][j] u^i v^j for truncated series u, v (Horner in both)."""
    acc = []
    for row in reversed(rows):
        inner = []
        for c in reversed(row):
            inner = mul_trunc(inner, v, n, p)
            if c:
                if inner:
                    inner[0] = (inner[0] + c) % p
                else:
                    inner = [c % p]
        acc = mul_trunc(acc, u, n, p)
        m = max(len(acc), len(inner))
        acc = acc + [0] * (m - len(acc))
        for k, c in enumerate(inner):
            acc[k] = (acc[k] + c) % p
        acc = trim(acc)
    return acc
