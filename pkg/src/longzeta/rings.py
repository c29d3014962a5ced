"""Exact arithmetic for the coefficient ring of the zeta polynomial.

The coefficient ring T is the quotient of the integer Laurent ring
Z[p, p^-1, q, q^-1] by the two relations

    (p - 1)(p - q) = 0
    (q - 1)(p - q) = 0.

Writing e = p - q, the relations say e^2 = 0 and p*e = q^m*e = e for every
integer m.  Every element of T therefore has a unique normal form

    f(q) + a*e

with f an integer Laurent polynomial in q alone and a a plain integer.
RingT stores exactly that pair, so equality is dict comparison and nothing
ever needs simplifying after the fact.  Products follow

    (f + a*e)(g + b*e) = f*g + (f(1)*b + g(1)*a)*e

because f(q)*e = f(1)*e and the e^2 term dies.

ZetaPolynomial is a Laurent polynomial in one more central variable s with
RingT coefficients, again stored sparsely.
"""

from __future__ import annotations

import re


def _lau_add(f: dict[int, int], g: dict[int, int]) -> dict[int, int]:
    out = dict(f)
    for k, c in g.items():
        v = out.get(k, 0) + c
        if v:
            out[k] = v
        elif k in out:
            del out[k]
    return out


def _lau_mul(f: dict[int, int], g: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, ci in f.items():
        for j, cj in g.items():
            k = i + j
            v = out.get(k, 0) + ci * cj
            if v:
                out[k] = v
            elif k in out:
                del out[k]
    return out


class RingT:
    """Element of T in the normal form f(q) + a*(p - q).

    `lau` maps q-exponents to nonzero integer coefficients, `eps` is the
    integer multiple of p - q.  Instances are treated as immutable.
    """

    __slots__ = ("lau", "eps")

    def __init__(self, lau: dict[int, int] | None = None, eps: int = 0):
        self.lau = {k: c for k, c in (lau or {}).items() if c}
        self.eps = eps

    @classmethod
    def zero(cls) -> "RingT":
        return cls()

    @classmethod
    def one(cls) -> "RingT":
        return cls({0: 1})

    @classmethod
    def from_int(cls, n: int) -> "RingT":
        return cls({0: n})

    @classmethod
    def q_power(cls, m: int) -> "RingT":
        return cls({m: 1})

    @classmethod
    def p_power(cls, m: int) -> "RingT":
        # p = q + e and q^j*e = e, so p^m = q^m + m*e for every integer m,
        # negative ones included (check: (q^-1 - e)(q + e) = 1).
        return cls({m: 1}, m)

    @classmethod
    def gen_power(cls, name: str, m: int) -> "RingT":
        if name == "p":
            return cls.p_power(m)
        if name == "q":
            return cls.q_power(m)
        raise ValueError("unknown generator %r" % (name,))

    def is_zero(self) -> bool:
        return not self.lau and self.eps == 0

    def eval_pq1(self) -> int:
        """Value at p = q = 1, where the p - q part vanishes."""
        return sum(self.lau.values())

    def is_zero_divisor(self) -> bool:
        """True for nonzero x with x*y = 0 for some nonzero y.

        x*(p - q) = (sum of Laurent coefficients)*(p - q), so x kills p - q
        exactly when its Laurent part sums to zero at q = 1; conversely any
        x with nonzero sum acts injectively on T.
        """
        return not self.is_zero() and self.eval_pq1() == 0

    def __add__(self, other):
        if isinstance(other, int):
            other = RingT.from_int(other)
        if not isinstance(other, RingT):
            return NotImplemented
        return RingT(_lau_add(self.lau, other.lau), self.eps + other.eps)

    __radd__ = __add__

    def __neg__(self):
        return RingT({k: -c for k, c in self.lau.items()}, -self.eps)

    def __sub__(self, other):
        if isinstance(other, int):
            other = RingT.from_int(other)
        if not isinstance(other, RingT):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = RingT.from_int(other)
        if not isinstance(other, RingT):
            return NotImplemented
        return RingT(
            _lau_mul(self.lau, other.lau),
            self.eval_pq1() * other.eps + other.eval_pq1() * self.eps,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise ValueError("negative powers are only defined for p and q")
        out = RingT.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = RingT.from_int(other)
        if not isinstance(other, RingT):
            return NotImplemented
        return self.lau == other.lau and self.eps == other.eps

    def __hash__(self):
        return hash((frozenset(self.lau.items()), self.eps))

    _TERM = re.compile(r"^(-?\d+)\*(?:q\^(-?\d+)|\(p-q\))$")

    def render(self) -> str:
        """Canonical text form, e.g. ``1*q^0 - 2*q^3 + 1*(p-q)``.

        Laurent terms come first in ascending exponent order, the p - q
        term last.  The zero element renders as ``0``.
        """
        if self.is_zero():
            return "0"
        terms = [(self.lau[k], "q^%d" % k) for k in sorted(self.lau)]
        if self.eps:
            terms.append((self.eps, "(p-q)"))
        out = ["%d*%s" % terms[0]]
        for c, sym in terms[1:]:
            out.append(" + " if c > 0 else " - ")
            out.append("%d*%s" % (abs(c), sym))
        return "".join(out)

    @classmethod
    def parse(cls, text: str) -> "RingT":
        s = text.strip()
        if s == "0":
            return cls.zero()
        lau: dict[int, int] = {}
        eps = 0
        for raw in s.replace(" - ", " + -").split(" + "):
            m = cls._TERM.match(raw.strip())
            if not m:
                raise ValueError("bad ring term %r" % (raw,))
            c = int(m.group(1))
            if m.group(2) is None:
                eps += c
            else:
                k = int(m.group(2))
                lau[k] = lau.get(k, 0) + c
        return cls(lau, eps)

    def __str__(self):
        return self.render()

    __repr__ = __str__


class ZetaPolynomial:
    """Laurent polynomial in s over T, stored as {s_exponent: RingT}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, "RingT | int"] | None = None):
        self.coeffs: dict[int, RingT] = {}
        for d, c in (coeffs or {}).items():
            if isinstance(c, int):
                c = RingT.from_int(c)
            if not c.is_zero():
                self.coeffs[d] = c

    @classmethod
    def zero(cls) -> "ZetaPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "ZetaPolynomial":
        return cls({0: RingT.one()})

    @classmethod
    def monomial(cls, coeff: RingT, power: int = 0) -> "ZetaPolynomial":
        return cls({power: coeff})

    def coeff(self, d: int) -> RingT:
        return self.coeffs.get(d, RingT.zero())

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def top_degree(self) -> int | None:
        """Largest s-exponent with nonzero coefficient, None if zero."""
        return max(self.coeffs) if self.coeffs else None

    def low_degree(self) -> int | None:
        return min(self.coeffs) if self.coeffs else None

    def eval_pq1(self, s_value: int = 1) -> int:
        """Integer value at p = q = 1 and s = s_value."""
        total = 0
        for d, c in self.coeffs.items():
            if d < 0:
                if s_value not in (1, -1):
                    raise ValueError("negative s exponent needs s_value in {1, -1}")
                d = -d
            total += c.eval_pq1() * s_value**d
        return total

    def shifted(self, r: int) -> "ZetaPolynomial":
        """Product with s^r."""
        out = ZetaPolynomial()
        for d, c in self.coeffs.items():
            out.coeffs[d + r] = c
        return out

    def scaled(self, c: RingT) -> "ZetaPolynomial":
        out = ZetaPolynomial()
        for d, x in self.coeffs.items():
            y = x * c
            if not y.is_zero():
                out.coeffs[d] = y
        return out

    def __add__(self, other):
        if not isinstance(other, ZetaPolynomial):
            return NotImplemented
        out = ZetaPolynomial()
        out.coeffs = dict(self.coeffs)
        for d, c in other.coeffs.items():
            v = out.coeffs.get(d)
            v = c if v is None else v + c
            if v.is_zero():
                out.coeffs.pop(d, None)
            else:
                out.coeffs[d] = v
        return out

    def __neg__(self):
        out = ZetaPolynomial()
        for d, c in self.coeffs.items():
            out.coeffs[d] = -c
        return out

    def __sub__(self, other):
        if not isinstance(other, ZetaPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = RingT.from_int(other)
        if isinstance(other, RingT):
            return self.scaled(other)
        if not isinstance(other, ZetaPolynomial):
            return NotImplemented
        # coefficient arithmetic is inlined here; this product dominates the
        # determinant runtime on fuzzed diagrams
        acc: dict[int, list] = {}
        for d1, c1 in self.coeffs.items():
            f, a = c1.lau, c1.eps
            f1 = sum(f.values())
            for d2, c2 in other.coeffs.items():
                g, b = c2.lau, c2.eps
                slot = acc.get(d1 + d2)
                if slot is None:
                    slot = [{}, 0]
                    acc[d1 + d2] = slot
                lau = slot[0]
                for i, ci in f.items():
                    for j, cj in g.items():
                        k = i + j
                        v = lau.get(k, 0) + ci * cj
                        if v:
                            lau[k] = v
                        elif k in lau:
                            del lau[k]
                slot[1] += f1 * b + sum(g.values()) * a
        out = ZetaPolynomial()
        for d, (lau, eps) in acc.items():
            if lau or eps:
                out.coeffs[d] = RingT(lau, eps)
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise ValueError("negative powers are not defined here")
        out = ZetaPolynomial.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, ZetaPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def render(self) -> str:
        """Canonical text form, e.g. ``(1*q^1 + 1*(p-q))*s^0 + (-1*q^1 - 1*(p-q))*s^1``."""
        if not self.coeffs:
            return "0"
        return " + ".join(
            "(%s)*s^%d" % (self.coeffs[d].render(), d) for d in sorted(self.coeffs)
        )

    _GROUP = re.compile(r"\((.+?)\)\*s\^(-?\d+)")

    @classmethod
    def parse(cls, text: str) -> "ZetaPolynomial":
        s = text.strip()
        if s == "0":
            return cls.zero()
        out = cls()
        pos = 0
        while pos < len(s):
            if pos and s.startswith(" + ", pos):
                pos += 3
            elif pos:
                raise ValueError("bad zeta separator at %r" % (s[pos : pos + 12],))
            # the lazy body is safe: a coefficient never contains ")*s^"
            m = cls._GROUP.match(s, pos)
            if not m:
                raise ValueError("bad zeta term at %r" % (s[pos : pos + 24],))
            c = RingT.parse(m.group(1))
            d = int(m.group(2))
            if not c.is_zero():
                out.coeffs[d] = out.coeff(d) + c
            pos = m.end()
        return out

    def __str__(self):
        return self.render()

    __repr__ = __str__


def equal_up_to_q_power(x: ZetaPolynomial, y: ZetaPolynomial) -> int | None:
    """Exponent r with y = q^r * x, or None when no such r exists.

    Multiplying by q^r shifts every q-exponent of every Laurent part by r
    and fixes the p - q parts, so a candidate r is read off any coefficient
    with a nonzero Laurent part and then checked everywhere.  When both
    sides are zero, or differ only in their (q-power invariant) p - q
    parts, the canonical answer is 0.
    """
    if x.is_zero() and y.is_zero():
        return 0
    if set(x.coeffs) != set(y.coeffs):
        return None
    r = None
    for d, cx in x.coeffs.items():
        cy = y.coeffs[d]
        if cx.eps != cy.eps or bool(cx.lau) != bool(cy.lau):
            return None
        if cx.lau and r is None:
            r = min(cy.lau) - min(cx.lau)
    if r is None:
        return 0
    for d, cx in x.coeffs.items():
        if y.coeffs[d].lau != {k + r: c for k, c in cx.lau.items()}:
            return None
    return r
