# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for dense univariate arithmetic over Z/pZ (p < 2**62).

Mirrors ``_nmod_py`` function for function; products go through 128-bit
intermediates.
"""
from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t

cdef extern from *:
    """
    typedef unsigned __int128 surfsym_u128;
    static inline uint64_t surfsym_mulmod(uint64_t a, uint64_t b, uint64_t p) {
        return (uint64_t)(((surfsym_u128)a * b) % p);
    }
    """
    uint64_t surfsym_mulmod(uint64_t a, uint64_t b, uint64_t p) nogil


cdef inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) nogil:
    return surfsym_mulmod(a, b, p)


cdef inline uint64_t addmod(uint64_t a, uint64_t b, uint64_t p) nogil:
    cdef uint64_t s = a + b
    return s - p if s >= p else s


cdef inline uint64_t submod(uint64_t a, uint64_t b, uint64_t p) nogil:
    return a - b if a >= b else a + p - b


cdef uint64_t powmod_scalar(uint64_t a, uint64_t e, uint64_t p) nogil:
    cdef uint64_t r = 1
    a %= p
    while e:
        if e & 1:
            r = mulmod(r, a, p)
        a = mulmod(a, a, p)
        e >>= 1
    return r


cdef inline uint64_t invmod(uint64_t a, uint64_t p) nogil:
    return powmod_scalar(a, p - 2, p)


cdef uint64_t* to_c(list a, Py_ssize_t n, uint64_t p) except NULL:
    cdef uint64_t* buf = <uint64_t*>malloc((n if n > 0 else 1) * sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    cdef Py_ssize_t la = len(a)
    for i in range(n):
        buf[i] = (<object>a[i]) % p if i < la else 0
    return buf


cdef list from_c(uint64_t* buf, Py_ssize_t n):
    while n > 0 and buf[n - 1] == 0:
        n -= 1
    return [buf[i] for i in range(n)]


def trim(list a):
    while a and not a[len(a) - 1]:
        a.pop()
    return a


def mul(list a, list b, p_):
    cdef uint64_t p = p_
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, n
    if la == 0 or lb == 0:
        return []
    n = la + lb - 1
    cdef uint64_t* x = to_c(a, la, p)
    cdef uint64_t* y = to_c(b, lb, p)
    cdef uint64_t* z = <uint64_t*>malloc(n * sizeof(uint64_t))
    cdef uint64_t yj
    for i in range(n):
        z[i] = 0
    with nogil:
        for j in range(lb):
            yj = y[j]
            if yj:
                for i in range(la):
                    z[i + j] = addmod(z[i + j], mulmod(x[i], yj, p), p)
    out = from_c(z, n)
    free(x); free(y); free(z)
    return out


def mul_trunc(list a, list b, Py_ssize_t n, p_):
    cdef uint64_t p = p_
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, m, lim
    if la == 0 or lb == 0 or n <= 0:
        return []
    m = la + lb - 1
    if m > n:
        m = n
    cdef uint64_t* x = to_c(a, la, p)
    cdef uint64_t* y = to_c(b, lb, p)
    cdef uint64_t* z = <uint64_t*>malloc(m * sizeof(uint64_t))
    cdef uint64_t yj
    for i in range(m):
        z[i] = 0
    with nogil:
        for j in range(lb):
            if j >= m:
                break
            yj = y[j]
            if yj:
                lim = la if la < m - j else m - j
                for i in range(lim):
                    z[i + j] = addmod(z[i + j], mulmod(x[i], yj, p), p)
    out = from_c(z, m)
    free(x); free(y); free(z)
    return out


cdef Py_ssize_t c_rem(uint64_t* r, Py_ssize_t lr, uint64_t* b, Py_ssize_t lb,
                      uint64_t* q, uint64_t p) nogil:
    # in-place remainder of r by b; quotient written to q when q != NULL;
    # returns length of the remainder (trimmed)
    cdef Py_ssize_t db = lb - 1, k, i
    cdef uint64_t inv = invmod(b[db], p), c
    if lr - 1 >= db:
        for k in range(lr - 1 - db, -1, -1):
            c = r[k + db]
            if c:
                c = mulmod(c, inv, p)
                if q != NULL:
                    q[k] = c
                for i in range(db + 1):
                    r[k + i] = submod(r[k + i], mulmod(c, b[i], p), p)
            elif q != NULL:
                q[k] = 0
        lr = db
    while lr > 0 and r[lr - 1] == 0:
        lr -= 1
    return lr


def divmod_(list a, list b, p_):
    cdef uint64_t p = p_
    cdef Py_ssize_t la = len(a), lb = len(b), lq, lr
    if lb == 0:
        raise ZeroDivisionError("polynomial division by zero mod p")
    if la < lb:
        return [], trim([x % p for x in a])
    lq = la - lb + 1
    cdef uint64_t* r = to_c(a, la, p)
    cdef uint64_t* bb = to_c(b, lb, p)
    cdef uint64_t* q = <uint64_t*>malloc(lq * sizeof(uint64_t))
    with nogil:
        lr = c_rem(r, la, bb, lb, q, p)
    qq = from_c(q, lq)
    rr = from_c(r, lr)
    free(r); free(bb); free(q)
    return qq, rr


def rem(list a, list b, p_):
    cdef uint64_t p = p_
    cdef Py_ssize_t la = len(a), lb = len(b), lr
    if lb == 0:
        raise ZeroDivisionError("polynomial division by zero mod p")
    if la < lb:
        return trim([x % p for x in a])
    cdef uint64_t* r = to_c(a, la, p)
    cdef uint64_t* bb = to_c(b, lb, p)
    with nogil:
        lr = c_rem(r, la, bb, lb, NULL, p)
    out = from_c(r, lr)
    free(r); free(bb)
    return out


def monic(list a, p_):
    cdef uint64_t p = p_
    if not a or a[len(a) - 1] == 1:
        return list(a)
    cdef uint64_t inv = invmod(<uint64_t>(a[len(a) - 1] % p), p)
    return [mulmod(<uint64_t>(c % p), inv, p) for c in a]


def gcd(list a, list b, p_):
    cdef uint64_t p = p_
    cdef Py_ssize_t la = len(a), lb = len(b), lr
    cdef uint64_t* x = to_c(a, la, p)
    cdef uint64_t* y = to_c(b, lb, p)
    cdef uint64_t* t
    while la > 0 and x[la - 1] == 0:
        la -= 1
    while lb > 0 and y[lb - 1] == 0:
        lb -= 1
    with nogil:
        while lb > 0:
            lr = c_rem(x, la, y, lb, NULL, p)
            t = x; x = y; y = t
            la = lb; lb = lr
    out = from_c(x, la)
    free(x); free(y)
    return monic(out, p_)


def powmod(list a, e, list m, p_):
    cdef uint64_t p = p_
    cdef Py_ssize_t lm = len(m), n, i, j, lb, lres, lt
    if lm == 0:
        raise ZeroDivisionError("modulus is zero")
    if lm == 1:
        return []
    n = lm - 1
    cdef uint64_t* mm = to_c(m, lm, p)
    cdef uint64_t* base = <uint64_t*>malloc(max(len(a), lm) * sizeof(uint64_t))
    cdef uint64_t* res = <uint64_t*>malloc(lm * sizeof(uint64_t))
    cdef uint64_t* tmp = <uint64_t*>malloc((2 * lm) * sizeof(uint64_t))
    cdef Py_ssize_t la = len(a)
    for i in range(la):
        base[i] = a[i] % p
    with nogil:
        lb = c_rem(base, la, mm, lm, NULL, p)
    res[0] = 1
    lres = 1
    bits = bin(e)[2:]
    cdef Py_ssize_t nb = len(bits), k
    cdef bytes bb = bits.encode()
    cdef char* cb = bb
    with nogil:
        # left-to-right binary exponentiation
        lres = 1
        res[0] = 1
        for k in range(nb):
            # res = res^2 mod m
            lt = 2 * lres - 1
            for i in range(lt):
                tmp[i] = 0
            for i in range(lres):
                for j in range(lres):
                    tmp[i + j] = addmod(tmp[i + j], mulmod(res[i], res[j], p), p)
            lt = c_rem(tmp, lt, mm, lm, NULL, p)
            for i in range(lt):
                res[i] = tmp[i]
            lres = lt
            if lres == 0:
                break
            if cb[k] == 49:  # '1'
                if lb == 0:
                    lres = 0
                    break
                lt = lres + lb - 1
                for i in range(lt):
                    tmp[i] = 0
                for i in range(lres):
                    for j in range(lb):
                        tmp[i + j] = addmod(tmp[i + j], mulmod(res[i], base[j], p), p)
                lt = c_rem(tmp, lt, mm, lm, NULL, p)
                for i in range(lt):
                    res[i] = tmp[i]
                lres = lt
                if lres == 0:
                    break
    out = from_c(res, lres)
    free(mm); free(base); free(res); free(tmp)
    return out


def eval_(list a, x_, p_):
    cdef uint64_t p = p_, x = x_ % p_, acc = 0
    cdef Py_ssize_t i
    for i in range(len(a) - 1, -1, -1):
        acc = addmod(mulmod(acc, x, p), <uint64_t>(a[i] % p), p)
    return acc


def eval_many(list a, list xs, p_):
    cdef uint64_t p = p_
    cdef Py_ssize_t la = len(a), n = len(xs), i, k
    cdef uint64_t* c = to_c(a, la, p)
    cdef uint64_t* pts = to_c(xs, n, p)
    cdef uint64_t acc, x
    out = [0] * n
    for k in range(n):
        acc = 0
        x = pts[k]
        for i in range(la - 1, -1, -1):
            acc = addmod(mulmod(acc, x, p), c[i], p)
        out[k] = acc
    free(c); free(pts)
    return out


def interpolate(list xs, list ys, p_):
    cdef uint64_t p = p_
    cdef Py_ssize_t n = len(xs), i, j, k
    if n == 0:
        return []
    cdef uint64_t* x = to_c(xs, n, p)
    cdef uint64_t* c = to_c(ys, n, p)
    cdef uint64_t* out = <uint64_t*>malloc(n * sizeof(uint64_t))
    cdef uint64_t den, xk
    with nogil:
        for j in range(1, n):
            for i in range(n - 1, j - 1, -1):
                den = submod(x[i], x[i - j], p)
                c[i] = mulmod(submod(c[i], c[i - 1], p), invmod(den, p), p)
        for i in range(n):
            out[i] = 0
        for k in range(n - 1, -1, -1):
            xk = x[k]
            for i in range(n - 1, 0, -1):
                out[i] = submod(out[i - 1], mulmod(xk, out[i], p), p)
            out[0] = submod(c[k], mulmod(xk, out[0], p), p)
    res = from_c(out, n)
    free(x); free(c); free(out)
    return res


def resultant(list a, list b, p_):
    cdef uint64_t p = p_
    cdef Py_ssize_t la = len(a), lb = len(b), lr, da, db, dr
    cdef uint64_t* x = to_c(a, la, p)
    cdef uint64_t* y = to_c(b, lb, p)
    cdef uint64_t* t
    cdef uint64_t res = 1, out = 0
    while la > 0 and x[la - 1] == 0:
        la -= 1
    while lb > 0 and y[lb - 1] == 0:
        lb -= 1
    if la == 0 or lb == 0:
        free(x); free(y)
        return 0
    with nogil:
        while True:
            da = la - 1
            db = lb - 1
            if db == 0:
                out = mulmod(res, powmod_scalar(y[0], da, p), p)
                break
            if da == 0:
                out = mulmod(res, powmod_scalar(x[0], db, p), p)
                break
            lr = c_rem(x, la, y, lb, NULL, p)
            if lr == 0:
                out = 0
                break
            dr = lr - 1
            if (da * db) & 1:
                res = submod(0, res, p)
            res = mulmod(res, powmod_scalar(y[db], da - dr, p), p)
            t = x; x = y; y = t
            la = lb; lb = lr
    free(x); free(y)
    return out


def nullspace(list rows, Py_ssize_t ncols, p_):
    cdef uint64_t p = p_
    cdef Py_ssize_t nr = len(rows), i, j, c, r = 0, piv, k
    if ncols == 0:
        return []
    cdef uint64_t* m = <uint64_t*>malloc((nr * ncols if nr > 0 else 1) * sizeof(uint64_t))
    cdef uint64_t inv, f
    for i in range(nr):
        row = rows[i]
        for j in range(ncols):
            m[i * ncols + j] = row[j] % p
    cdef Py_ssize_t* pivcols = <Py_ssize_t*>malloc((ncols + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t npiv = 0
    with nogil:
        for c in range(ncols):
            if r == nr:
                break
            piv = -1
            for i in range(r, nr):
                if m[i * ncols + c]:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for k in range(ncols):
                    f = m[r * ncols + k]
                    m[r * ncols + k] = m[piv * ncols + k]
                    m[piv * ncols + k] = f
            inv = invmod(m[r * ncols + c], p)
            for k in range(c, ncols):
                m[r * ncols + k] = mulmod(m[r * ncols + k], inv, p)
            for i in range(nr):
                if i != r:
                    f = m[i * ncols + c]
                    if f:
                        for k in range(c, ncols):
                            m[i * ncols + k] = submod(m[i * ncols + k], mulmod(f, m[r * ncols + k], p), p)
            pivcols[npiv] = c
            npiv += 1
            r += 1
    pivset = set(pivcols[i] for i in range(npiv))
    basis = []
    for fcol in range(ncols):
        if fcol in pivset:
            continue
        v = [0] * ncols
        v[fcol] = 1
        for i in range(npiv):
            v[pivcols[i]] = submod(0, m[i * ncols + fcol], p)
        basis.append(v)
    free(m); free(pivcols)
    return basis


def series_inv(list a, Py_ssize_t n, p_):
    cdef uint64_t p = p_
    cdef Py_ssize_t la = len(a), k, i, lim
    if la == 0 or a[0] % p == 0:
        raise ZeroDivisionError("series is not invertible")
    cdef uint64_t* x = to_c(a, la, p)
    cdef uint64_t* out = <uint64_t*>malloc((n if n > 0 else 1) * sizeof(uint64_t))
    cdef uint64_t inv0 = invmod(x[0], p), acc
    with nogil:
        out[0] = inv0
        for k in range(1, n):
            acc = 0
            lim = k if k < la - 1 else la - 1
            for i in range(1, lim + 1):
                acc = addmod(acc, mulmod(x[i], out[k - i], p), p)
            out[k] = mulmod(submod(0, acc, p), inv0, p)
    res = from_c(out, n)
    free(x); free(out)
    return res


cdef void c_mul_trunc(uint64_t* x, uint64_t* y, uint64_t* z, Py_ssize_t n, uint64_t p) nogil:
    # z = x*y mod eps^n, all buffers of length n; z must not alias x or y
    cdef Py_ssize_t i, j
    cdef uint64_t yj
    for i in range(n):
        z[i] = 0
    for j in range(n):
        yj = y[j]
        if yj:
            for i in range(n - j):
                z[i + j] = addmod(z[i + j], mulmod(x[i], yj, p), p)


def eval2_series(list rows, list u, list v, Py_ssize_t n, p_):
    cdef uint64_t p = p_
    if n <= 0:
        return []
    cdef uint64_t* U = to_c(u, n, p)
    cdef uint64_t* V = to_c(v, n, p)
    cdef uint64_t* acc = to_c([], n, p)
    cdef uint64_t* inner = to_c([], n, p)
    cdef uint64_t* tmp = to_c([], n, p)
    cdef uint64_t* row
    cdef Py_ssize_t i, j, k, lr
    cdef list r
    for i in range(len(rows) - 1, -1, -1):
        r = rows[i]
        lr = len(r)
        row = to_c(r, lr, p)
        with nogil:
            for k in range(n):
                inner[k] = 0
            for j in range(lr - 1, -1, -1):
                c_mul_trunc(inner, V, tmp, n, p)
                for k in range(n):
                    inner[k] = tmp[k]
                inner[0] = addmod(inner[0], row[j], p)
            c_mul_trunc(acc, U, tmp, n, p)
            for k in range(n):
                acc[k] = addmod(tmp[k], inner[k], p)
        free(row)
    out = from_c(acc, n)
    free(U); free(V); free(acc); free(inner); free(tmp)
    return out
