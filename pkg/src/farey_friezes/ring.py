"""Finite commutative rings with canonical, hashable element payloads.

Elements are plain Python values so that graph code can use them as
dictionary keys without wrapping:

* ``ZMod(n)``: an ``int`` in ``[0, n)``;
* ``QuotientRing(base, poly)``: a tuple of coefficients (low to high) of
  length ``deg(poly)``, each a residue of the base ring;
* ``ProductRing(factors)``: a tuple with one payload per factor;
* ``IntegerRing()``: an arbitrary-precision ``int``.

Payloads of one ring compare with ``<`` consistently, which is what the
canonical vertex representatives rely on. :class:`RingElement` wraps a
payload with operator overloads for interactive use.
"""
from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Iterator, Optional, Sequence

from .errors import (
    InfiniteRingError,
    InvalidDescriptor,
    NonUnitGenerator,
    NotAUnit,
    RingTooLarge,
)

Payload = Any

# exhaustive unimodularity search is only attempted up to this ring order
EXHAUSTIVE_LIMIT = 4096


class Ring:
    """Common interface. Subclasses are frozen dataclasses."""

    is_finite = True

    # arithmetic -----------------------------------------------------------
    @property
    def zero(self) -> Payload:
        raise NotImplementedError

    @property
    def one(self) -> Payload:
        raise NotImplementedError

    def add(self, x: Payload, y: Payload) -> Payload:
        raise NotImplementedError

    def neg(self, x: Payload) -> Payload:
        raise NotImplementedError

    def mul(self, x: Payload, y: Payload) -> Payload:
        raise NotImplementedError

    def sub(self, x: Payload, y: Payload) -> Payload:
        return self.add(x, self.neg(y))

    def coerce(self, value: Any) -> Payload:
        """Canonical payload for ``value`` (an int, a payload, or a RingElement)."""
        raise NotImplementedError

    def from_int(self, k: int) -> Payload:
        return self.coerce(k)

    def pow(self, x: Payload, k: int) -> Payload:
        if k < 0:
            return self.pow(self.inverse(x), -k)
        result, base = self.one, x
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def det2(self, a: Payload, b: Payload, c: Payload, d: Payload) -> Payload:
        """``a*d - b*c``."""
        return self.sub(self.mul(a, d), self.mul(b, c))

    # finite structure ------------------------------------------------------
    @property
    def order(self) -> int:
        raise NotImplementedError

    def elements(self) -> tuple:
        """All elements in increasing payload order."""
        raise NotImplementedError

    def require_finite(self, what: str = "this operation") -> None:
        if not self.is_finite:
            raise InfiniteRingError(f"{what} needs a finite ring, got {self.name}")

    @cached_property
    def _inverse_table(self) -> dict:
        self.require_finite("inverse lookup")
        table = {}
        elems = self.elements()
        for x in elems:
            if x in table:
                continue
            for y in elems:
                if self.mul(x, y) == self.one:
                    table[x] = y
                    table[y] = x
                    break
        return table

    def is_unit(self, x: Payload) -> bool:
        return x in self._inverse_table

    def inverse(self, x: Payload) -> Payload:
        try:
            return self._inverse_table[x]
        except KeyError:
            raise NotAUnit(f"{self.format(x)} is not a unit in {self.name}") from None

    def div(self, x: Payload, y: Payload) -> Payload:
        return self.mul(x, self.inverse(y))

    def units(self) -> tuple:
        self.require_finite("the unit group")
        return tuple(x for x in self.elements() if self.is_unit(x))

    def multiplicative_order(self, x: Payload) -> int:
        if not self.is_unit(x):
            raise NotAUnit(f"{self.format(x)} is not a unit in {self.name}")
        k, y = 1, x
        while y != self.one:
            y = self.mul(y, x)
            k += 1
        return k

    def is_field(self) -> bool:
        self.require_finite("the field test")
        return all(self.is_unit(x) for x in self.elements() if x != self.zero)

    @property
    def characteristic(self) -> int:
        raise NotImplementedError

    # unimodular pairs ------------------------------------------------------
    def unimodular_witness(self, a: Payload, b: Payload) -> Optional[tuple]:
        """Some ``(x, y)`` with ``a*x + b*y = 1``, or ``None`` if there is none."""
        self.require_finite("unimodularity search")
        if self.order > EXHAUSTIVE_LIMIT:
            raise RingTooLarge(f"{self.name} has more than {EXHAUSTIVE_LIMIT} elements")
        multiples = self._multiples(a)
        for y in self.elements():
            x = multiples.get(self.sub(self.one, self.mul(b, y)))
            if x is not None:
                return x, y
        return None

    def is_unimodular(self, a: Payload, b: Payload) -> bool:
        return self.unimodular_witness(a, b) is not None

    @cached_property
    def _multiples_cache(self) -> dict:
        return {}

    def _multiples(self, a: Payload) -> dict:
        table = self._multiples_cache.get(a)
        if table is None:
            table = {}
            for x in self.elements():
                table.setdefault(self.mul(a, x), x)
            self._multiples_cache[a] = table
        return table

    # text and JSON -----------------------------------------------------------
    @property
    def name(self) -> str:
        raise NotImplementedError

    def format(self, x: Payload) -> str:
        raise NotImplementedError

    def parse(self, text: str) -> Payload:
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError

    def __call__(self, value: Any) -> "RingElement":
        return RingElement(self, self.coerce(value))

    def __str__(self) -> str:
        return self.name


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


@dataclass(frozen=True)
class ZMod(Ring):
    """The residue ring Z/nZ."""

    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 2:
            raise InvalidDescriptor(f"modulus must be an integer >= 2, got {self.n!r}")

    zero = 0
    one = 1

    def add(self, x, y):
        return (x + y) % self.n

    def neg(self, x):
        return -x % self.n

    def sub(self, x, y):
        return (x - y) % self.n

    def mul(self, x, y):
        return x * y % self.n

    def det2(self, a, b, c, d):
        return (a * d - b * c) % self.n

    def coerce(self, value):
        if isinstance(value, RingElement):
            value = value.value
        if not isinstance(value, int) or isinstance(value, bool):
            raise InvalidDescriptor(f"cannot read {value!r} as an element of {self.name}")
        return value % self.n

    @property
    def order(self):
        return self.n

    def elements(self):
        return tuple(range(self.n))

    @property
    def characteristic(self):
        return self.n

    def is_unit(self, x):
        return math.gcd(x, self.n) == 1

    def inverse(self, x):
        if math.gcd(x, self.n) != 1:
            raise NotAUnit(f"{x} is not a unit in {self.name}")
        return pow(x, -1, self.n)

    def unimodular_witness(self, a, b):
        # ax + by = 1 mod n  iff  gcd(a, b, n) = 1
        g, s, t = _ext_gcd(a, b)
        if math.gcd(g, self.n) != 1:
            return None
        u = pow(g, -1, self.n) if self.n > 1 else 0
        return s * u % self.n, t * u % self.n

    @property
    def name(self):
        return f"Z/{self.n}"

    def format(self, x):
        return str(x)

    def parse(self, text):
        text = text.strip()
        if not re.fullmatch(r"[+-]?\d+", text):
            raise InvalidDescriptor(f"cannot read {text!r} as an element of {self.name}")
        return int(text) % self.n

    def descriptor(self):
        return {"type": "zmod", "n": self.n}


_TERM = re.compile(r"^([+-]?\d*)\*?(x(?:\^(\d+))?)?$")


@dataclass(frozen=True)
class QuotientRing(Ring):
    """``base[x] / (poly)`` with ``poly`` given low-to-high.

    The leading coefficient must be a unit of ``base``. Irreducibility is
    not checked: reducible moduli give perfectly good (non-field) rings.
    """

    base: ZMod
    poly: tuple

    def __post_init__(self) -> None:
        if not isinstance(self.base, ZMod):
            raise InvalidDescriptor("quotient rings are built over Z/n")
        poly = tuple(self.base.coerce(c) for c in self.poly)
        while poly and poly[-1] == 0:
            poly = poly[:-1]
        if len(poly) < 2:
            raise InvalidDescriptor("modulus polynomial must have degree >= 1")
        if not self.base.is_unit(poly[-1]):
            raise InvalidDescriptor(f"leading coefficient {poly[-1]} is not a unit")
        object.__setattr__(self, "poly", poly)

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    @cached_property
    def _monic_tail(self) -> tuple:
        # x^d = -sum(tail[k] x^k)  after scaling the modulus to be monic
        inv = self.base.inverse(self.poly[-1])
        return tuple(self.base.mul(c, inv) for c in self.poly[:-1])

    @property
    def zero(self):
        return (0,) * self.degree

    @property
    def one(self):
        return (1,) + (0,) * (self.degree - 1)

    def add(self, x, y):
        n = self.base.n
        return tuple((a + b) % n for a, b in zip(x, y))

    def neg(self, x):
        n = self.base.n
        return tuple(-a % n for a in x)

    def sub(self, x, y):
        n = self.base.n
        return tuple((a - b) % n for a, b in zip(x, y))

    def _reduce(self, coeffs: list) -> tuple:
        n, d, tail = self.base.n, self.degree, self._monic_tail
        for k in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[k] % n
            if c:
                for t, m in enumerate(tail):
                    coeffs[k - d + t] -= c * m
            coeffs[k] = 0
        coeffs = coeffs[:d] + [0] * (d - len(coeffs))
        return tuple(c % n for c in coeffs)

    def mul(self, x, y):
        prod = [0] * (2 * self.degree - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    prod[i + j] += a * b
        return self._reduce(prod)

    def coerce(self, value):
        if isinstance(value, RingElement):
            value = value.value
        if isinstance(value, int) and not isinstance(value, bool):
            return self._reduce([value])
        if isinstance(value, (tuple, list)) and all(isinstance(c, int) for c in value):
            return self._reduce(list(value))
        raise InvalidDescriptor(f"cannot read {value!r} as an element of {self.name}")

    @property
    def order(self):
        return self.base.n ** self.degree

    def elements(self):
        # itertools.product yields tuples in lexicographic order
        return tuple(itertools.product(range(self.base.n), repeat=self.degree))

    @property
    def characteristic(self):
        return self.base.n

    @property
    def name(self):
        return f"{self.base.name}[x]/({format_poly(self.poly)})"

    def format(self, x):
        return format_poly(x)

    def parse(self, text):
        return self.coerce(parse_poly(text))

    def descriptor(self):
        return {"type": "quotient", "base": self.base.descriptor(), "poly": list(self.poly)}


def format_poly(coeffs: Sequence[int]) -> str:
    """Low-to-high coefficient vector as text, e.g. ``(1, 1, 1) -> '1+x+x^2'``."""
    terms = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if k == 0:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


def parse_poly(text: str) -> list:
    """Inverse of :func:`format_poly`; accepts ``*`` and ``-`` as well."""
    text = text.replace(" ", "")
    if not text:
        raise InvalidDescriptor("empty polynomial")
    text = text.replace("-", "+-")
    coeffs: dict[int, int] = {}
    for term in filter(None, text.split("+")):
        m = _TERM.match(term)
        if m is None or (m.group(1) in ("", "+", "-") and m.group(2) is None):
            raise InvalidDescriptor(f"cannot parse polynomial term {term!r}")
        coef_txt, var, exp = m.groups()
        if coef_txt in ("", "+"):
            coef = 1
        elif coef_txt == "-":
            coef = -1
        else:
            coef = int(coef_txt)
        k = 0 if var is None else (int(exp) if exp else 1)
        coeffs[k] = coeffs.get(k, 0) + coef
    out = [0] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] = c
    return out


def _split_top_level(text: str, sep: str = ",") -> list:
    parts, depth, current = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return parts


@dataclass(frozen=True)
class ProductRing(Ring):
    """Direct product of at least two finite rings."""

    factors: tuple

    def __post_init__(self) -> None:
        factors = tuple(self.factors)
        if len(factors) < 2:
            raise InvalidDescriptor("a product ring needs at least two factors")
        for f in factors:
            if not isinstance(f, Ring) or not f.is_finite:
                raise InvalidDescriptor("product factors must be finite rings")
        object.__setattr__(self, "factors", factors)

    @property
    def zero(self):
        return tuple(f.zero for f in self.factors)

    @property
    def one(self):
        return tuple(f.one for f in self.factors)

    def add(self, x, y):
        return tuple(f.add(a, b) for f, a, b in zip(self.factors, x, y))

    def neg(self, x):
        return tuple(f.neg(a) for f, a in zip(self.factors, x))

    def sub(self, x, y):
        return tuple(f.sub(a, b) for f, a, b in zip(self.factors, x, y))

    def mul(self, x, y):
        return tuple(f.mul(a, b) for f, a, b in zip(self.factors, x, y))

    def coerce(self, value):
        if isinstance(value, RingElement):
            value = value.value
        if isinstance(value, int) and not isinstance(value, bool):
            return tuple(f.coerce(value) for f in self.factors)
        if isinstance(value, (tuple, list)) and len(value) == len(self.factors):
            return tuple(f.coerce(v) for f, v in zip(self.factors, value))
        raise InvalidDescriptor(f"cannot read {value!r} as an element of {self.name}")

    @property
    def order(self):
        return math.prod(f.order for f in self.factors)

    def elements(self):
        return tuple(itertools.product(*(f.elements() for f in self.factors)))

    @property
    def characteristic(self):
        return math.lcm(*(f.characteristic for f in self.factors))

    def is_unit(self, x):
        return all(f.is_unit(a) for f, a in zip(self.factors, x))

    def inverse(self, x):
        return tuple(f.inverse(a) for f, a in zip(self.factors, x))

    def unimodular_witness(self, a, b):
        parts = [f.unimodular_witness(p, q) for f, p, q in zip(self.factors, a, b)]
        if any(w is None for w in parts):
            return None
        return tuple(w[0] for w in parts), tuple(w[1] for w in parts)

    @property
    def name(self):
        return " x ".join(f.name for f in self.factors)

    def format(self, x):
        return "(" + ",".join(f.format(a) for f, a in zip(self.factors, x)) + ")"

    def parse(self, text):
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise InvalidDescriptor(f"product residues are written (x,y), got {text!r}")
        parts = _split_top_level(text[1:-1])
        if len(parts) != len(self.factors):
            raise InvalidDescriptor(f"expected {len(self.factors)} components in {text!r}")
        return tuple(f.parse(p) for f, p in zip(self.factors, parts))

    def descriptor(self):
        return {"type": "product", "factors": [f.descriptor() for f in self.factors]}


@dataclass(frozen=True)
class IntegerRing(Ring):
    """The integers, with arbitrary-precision payloads."""

    is_finite = False
    zero = 0
    one = 1

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def det2(self, a, b, c, d):
        return a * d - b * c

    def coerce(self, value):
        if isinstance(value, RingElement):
            value = value.value
        if not isinstance(value, int) or isinstance(value, bool):
            raise InvalidDescriptor(f"cannot read {value!r} as an integer")
        return value

    @property
    def order(self):
        raise InfiniteRingError("the integer ring has no finite order")

    def elements(self):
        raise InfiniteRingError("cannot enumerate the integers")

    @property
    def characteristic(self):
        return 0

    def is_unit(self, x):
        return x in (1, -1)

    def inverse(self, x):
        if x not in (1, -1):
            raise NotAUnit(f"{x} is not a unit in Z")
        return x

    def units(self):
        return (-1, 1)

    def unimodular_witness(self, a, b):
        g, s, t = _ext_gcd(a, b)
        return (s, t) if g == 1 else None

    @property
    def name(self):
        return "Z"

    def format(self, x):
        return str(x)

    def parse(self, text):
        text = text.strip()
        if not re.fullmatch(r"[+-]?\d+", text):
            raise InvalidDescriptor(f"cannot read {text!r} as an integer")
        return int(text)

    def descriptor(self):
        return {"type": "integer"}


@dataclass(frozen=True, eq=False)
class RingElement:
    """A payload tied to its ring, with arithmetic operators."""

    ring: Ring
    value: Payload

    def _other(self, other: Any) -> Payload:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise InvalidDescriptor("elements belong to different rings")
            return other.value
        return self.ring.coerce(other)

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElement(self.ring, self.ring.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return RingElement(self.ring, self.ring.sub(self._other(other), self.value))

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __pow__(self, k: int):
        return RingElement(self.ring, self.ring.pow(self.value, k))

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.value == other.value
        try:
            return self.value == self.ring.coerce(other)
        except InvalidDescriptor:
            return NotImplemented

    def __lt__(self, other: "RingElement") -> bool:
        return self.value < self._other(other)

    def __hash__(self):
        return hash((self.ring, self.value))

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.value)

    def inverse(self) -> "RingElement":
        return RingElement(self.ring, self.ring.inverse(self.value))

    def __str__(self):
        return self.ring.format(self.value)

    def __repr__(self):
        return f"RingElement({self.ring.name}, {self.ring.format(self.value)})"


# unit subgroups -------------------------------------------------------------------


@dataclass(frozen=True)
class UnitSubgroup:
    """A subgroup U of the unit group, stored as a sorted tuple of payloads."""

    ring: Ring
    elements: tuple

    def __contains__(self, x: Payload) -> bool:
        return x in self._members

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    def __iter__(self) -> Iterator[Payload]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def has_minus_one(self) -> bool:
        return self.ring.neg(self.ring.one) in self

    def labels(self) -> list:
        return [self.ring.format(u) for u in self.elements]


def unit_subgroup(ring: Ring, generators: Iterable[Any]) -> UnitSubgroup:
    """Closure of ``generators`` (and 1) under multiplication."""
    gens = [ring.coerce(g) for g in generators]
    for g in gens:
        if not ring.is_unit(g):
            raise NonUnitGenerator(f"{ring.format(g)} is not a unit in {ring.name}")
    members = {ring.one}
    frontier = [ring.one]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = ring.mul(x, g)
            if y not in members:
                if not ring.is_finite and len(members) > 2:
                    raise NonUnitGenerator("generator of infinite order")
                members.add(y)
                frontier.append(y)
    return UnitSubgroup(ring, tuple(sorted(members)))


def trivial_units(ring: Ring) -> UnitSubgroup:
    return UnitSubgroup(ring, (ring.one,))


def plus_minus_units(ring: Ring) -> UnitSubgroup:
    return unit_subgroup(ring, [ring.neg(ring.one)])


def all_units(ring: Ring) -> UnitSubgroup:
    if not ring.is_finite:
        return plus_minus_units(ring)
    return UnitSubgroup(ring, ring.units())


def units(ring: Ring) -> UnitSubgroup:
    return all_units(ring)


def parse_units(ring: Ring, desc: Any) -> UnitSubgroup:
    """``'one'``, ``'pm1'``, ``'all'`` or an iterable of generators (payloads or text)."""
    if isinstance(desc, UnitSubgroup):
        return desc
    if desc in ("one", "1", None):
        return trivial_units(ring)
    if desc in ("pm1", "+-1", "±1"):
        return plus_minus_units(ring)
    if desc == "all":
        return all_units(ring)
    if isinstance(desc, str):
        desc = [ring.parse(t) for t in _split_top_level(desc) if t.strip()]
    return unit_subgroup(ring, [ring.parse(g) if isinstance(g, str) else g for g in desc])


# descriptors ------------------------------------------------------------------------


def make_ring(descriptor: Any) -> Ring:
    """Build a ring from a JSON-style descriptor (dict or JSON text)."""
    if isinstance(descriptor, Ring):
        return descriptor
    if isinstance(descriptor, str):
        try:
            descriptor = json.loads(descriptor)
        except json.JSONDecodeError as exc:
            raise InvalidDescriptor(f"bad ring descriptor: {exc}") from None
    if not isinstance(descriptor, dict) or "type" not in descriptor:
        raise InvalidDescriptor(f"bad ring descriptor: {descriptor!r}")
    kind = descriptor["type"]
    try:
        if kind == "zmod":
            return ZMod(descriptor["n"])
        if kind == "quotient":
            base = make_ring(descriptor["base"])
            return QuotientRing(base, tuple(descriptor["poly"]))
        if kind == "product":
            return ProductRing(tuple(make_ring(f) for f in descriptor["factors"]))
        if kind == "integer":
            return IntegerRing()
    except KeyError as exc:
        raise InvalidDescriptor(f"descriptor is missing field {exc}") from None
    raise InvalidDescriptor(f"unknown ring type {kind!r}")


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                break
            return p, k
    raise InvalidDescriptor(f"{q} is not a prime power")


def galois_field(q: int, poly: Optional[Sequence[int]] = None) -> Ring:
    """The field of order ``q``; the default modulus is the first irreducible
    monic polynomial in lexicographic order of its coefficients."""
    p, k = _prime_power(q)
    base = ZMod(p)
    if k == 1 and poly is None:
        return base
    if poly is not None:
        return QuotientRing(base, tuple(poly))
    for tail in itertools.product(range(p), repeat=k):
        if tail[0] == 0:
            continue
        candidate = QuotientRing(base, tuple(tail) + (1,))
        if candidate.is_field():
            return candidate
    raise InvalidDescriptor(f"no irreducible polynomial of degree {k} over Z/{p}")


_ZMOD = re.compile(r"^z(\d+)$")
_GF = re.compile(r"^gf(\d+)(?::(.+))?$")
_ZPOLY = re.compile(r"^z(\d+)\[x\]/(.+)$")


def parse_ring(text: str) -> Ring:
    """Read a ring from shorthand or JSON.

    Shorthands: ``z5`` (Z/5), ``gf4`` or ``gf4:1+x+x^2`` (field of order 4),
    ``z3[x]/1+x^2`` (quotient of Z/3[x]), ``zz`` (the integers), and
    products joined by ``x`` as in ``z2xz3`` or ``z4xgf4``.
    """
    text = text.strip()
    if text.startswith("{"):
        return make_ring(text)
    if text in ("zz", "Z", "int"):
        return IntegerRing()
    pieces = re.split(r"x(?=z|gf)", text)
    if len(pieces) > 1:
        return ProductRing(tuple(parse_ring(p) for p in pieces))
    m = _ZMOD.match(text)
    if m:
        return ZMod(int(m.group(1)))
    m = _GF.match(text)
    if m:
        q = int(m.group(1))
        poly = parse_poly(m.group(2)) if m.group(2) else None
        ring = galois_field(q, poly)
        if ring.order != q:
            raise InvalidDescriptor(f"modulus {m.group(2)!r} does not give a ring of order {q}")
        return ring
    m = _ZPOLY.match(text)
    if m:
        return QuotientRing(ZMod(int(m.group(1))), tuple(parse_poly(m.group(2))))
    raise InvalidDescriptor(f"unrecognised ring {text!r}")
