"""Small exact fields and dense univariate polynomials over them.

A field object supplies ``zero``, ``one`` and the arithmetic methods used by
the polynomial helpers below.  Polynomials are Python lists of field elements
in ascending degree order with no trailing zeros; the zero polynomial is ``[]``.
"""

from fractions import Fraction


class RationalField:
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, a):
        return Fraction(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class AlgebraicField:
    """Q[y]/(g) for a monic irreducible rational polynomial g.

    Elements are tuples of ``Fraction`` of length ``deg g``.
    """

    def __init__(self, modulus):
        g = [Fraction(c) for c in modulus]
        while g and g[-1] == 0:
            g.pop()
        if len(g) < 2 or g[-1] != 1:
            raise ValueError("modulus must be monic of positive degree")
        self.modulus = g
        self.n = len(g) - 1
        self.zero = tuple([Fraction(0)] * self.n)
        self.one = tuple([Fraction(1)] + [Fraction(0)] * (self.n - 1))

    def coerce(self, a):
        """Accept a rational, an int, or a coefficient sequence in the generator."""
        if isinstance(a, (int, Fraction)):
            return tuple([Fraction(a)] + [Fraction(0)] * (self.n - 1))
        return self.reduce([Fraction(c) for c in a])

    def reduce(self, coeffs):
        c = list(coeffs)
        n, g = self.n, self.modulus
        for k in range(len(c) - 1, n - 1, -1):
            t = c[k]
            if t:
                for j in range(n):
                    c[k - n + j] -= t * g[j]
            c[k] = Fraction(0)
        c = c[:n] + [Fraction(0)] * (n - len(c))
        return tuple(c)

    def generator(self):
        if self.n == 1:
            return (-self.modulus[0],)
        return self.coerce([0, 1])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        prod = [Fraction(0)] * (2 * self.n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self.reduce(prod)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        d, s, _ = pxgcd(QQ, ptrim(QQ, list(a)), self.modulus)
        if len(d) != 1:
            raise ZeroDivisionError("element not invertible; modulus reducible")
        return self.coerce(pscale(QQ, QQ.inv(d[0]), s))

    def is_zero(self, a):
        return not any(a)

    def __repr__(self):
        return "QQ[y]/(%s)" % (self.modulus,)


class FiniteField:
    """GF(p^k) as GF(p)[y]/(m) for a monic irreducible m; elements are int tuples."""

    def __init__(self, p, modulus):
        m = [c % p for c in modulus]
        while m and m[-1] == 0:
            m.pop()
        if len(m) < 2 or m[-1] != 1:
            raise ValueError("modulus must be monic of positive degree")
        self.p = p
        self.modulus = m
        self.k = len(m) - 1
        self.order = p ** self.k
        self.zero = tuple([0] * self.k)
        self.one = tuple([1] + [0] * (self.k - 1))

    def coerce(self, a):
        if isinstance(a, int):
            return tuple([a % self.p] + [0] * (self.k - 1))
        return self.reduce([int(c) % self.p for c in a])

    def reduce(self, coeffs):
        p, k, m = self.p, self.k, self.modulus
        c = [x % p for x in coeffs]
        for i in range(len(c) - 1, k - 1, -1):
            t = c[i]
            if t:
                for j in range(k):
                    c[i - k + j] = (c[i - k + j] - t * m[j]) % p
            c[i] = 0
        c = c[:k] + [0] * (k - len(c))
        return tuple(c)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self.reduce(prod)

    def pow(self, a, e):
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.order - 2)

    def is_zero(self, a):
        return not any(a)

    def __repr__(self):
        return "GF(%d^%d)" % (self.p, self.k)


# dense polynomial helpers over an arbitrary field object

def ptrim(F, a):
    a = list(a)
    while a and F.is_zero(a[-1]):
        a.pop()
    return a


def pdeg(a):
    return len(a) - 1


def padd(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = F.add(out[i], y)
    return ptrim(F, out)


def psub(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero
        y = b[i] if i < len(b) else F.zero
        out.append(F.sub(x, y))
    return ptrim(F, out)


def pneg(F, a):
    return [F.neg(x) for x in a]


def pscale(F, c, a):
    if F.is_zero(c):
        return []
    return ptrim(F, [F.mul(c, x) for x in a])


def pmul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return ptrim(F, out)


def pdivmod(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], ptrim(F, r)
    inv_lc = F.inv(b[-1])
    q = [F.zero] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        t = r[k]
        if F.is_zero(t):
            continue
        t = F.mul(t, inv_lc)
        q[k - db] = t
        for j in range(db + 1):
            r[k - db + j] = F.sub(r[k - db + j], F.mul(t, b[j]))
    return ptrim(F, q), ptrim(F, r[:db])


def prem(F, a, b):
    return pdivmod(F, a, b)[1]


def pmonic(F, a):
    if not a:
        return []
    return pscale(F, F.inv(a[-1]), a)


def pgcd(F, a, b):
    a, b = ptrim(F, a), ptrim(F, b)
    while b:
        a, b = b, prem(F, a, b)
    return pmonic(F, a)


def pxgcd(F, a, b):
    """Return (d, s, t) with s*a + t*b = d and d monic (or zero)."""
    r0, r1 = ptrim(F, a), ptrim(F, b)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = pdivmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(F, s0, pmul(F, q, s1))
        t0, t1 = t1, psub(F, t0, pmul(F, q, t1))
    if not r0:
        return [], s0, t0
    c = F.inv(r0[-1])
    return pscale(F, c, r0), pscale(F, c, s0), pscale(F, c, t0)


def pderiv(F, a):
    return ptrim(F, [F.mul(F.coerce(i), a[i]) for i in range(1, len(a))])


def peval(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def pcompose(F, a, b):
    """a(b(x))."""
    acc = []
    for c in reversed(a):
        acc = padd(F, pmul(F, acc, b), [c] if not F.is_zero(c) else [])
    return acc


def ppowmod(F, a, e, m):
    result = [F.one]
    base = prem(F, a, m)
    while e:
        if e & 1:
            result = prem(F, pmul(F, result, base), m)
        base = prem(F, pmul(F, base, base), m)
        e >>= 1
    return result


def presultant(F, a, b):
    """Resultant of a and b over F by the Euclidean remainder sequence."""
    a, b = ptrim(F, a), ptrim(F, b)
    if not a or not b:
        return F.zero
    acc = F.one
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            c = F.one
            for _ in range(da):
                c = F.mul(c, b[0])
            return F.mul(acc, c)
        r = prem(F, a, b)
        if not r:
            return F.zero
        dr = len(r) - 1
        if (da * db) % 2:
            acc = F.neg(acc)
        lcb = F.one
        for _ in range(da - dr):
            lcb = F.mul(lcb, b[-1])
        acc = F.mul(acc, lcb)
        a, b = b, r
