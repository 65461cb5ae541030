"""Groups of squarefree order as C_e x| C_d, and their automorphism groups.

A group of squarefree order n has a presentation

    <sigma, tau : sigma^e = tau^d = 1, tau sigma = sigma^k tau>

with d e = n and k of multiplicative order exactly d mod e.  Elements are
indexed by the normal form sigma^a tau^b as ``a * d + b``; index 0 is the
identity.  Aut(N) is generated by theta (sigma -> sigma, tau -> sigma^z tau)
with z = gcd(e, k - 1), of order g = e / z, and phi_s (sigma -> sigma^s,
tau -> tau) for units s mod e.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from sympy import divisors, factorint, isprime, n_order, primitive_root, totient

from .errors import NotSophieGermain, NotSquarefree
from .perm_core import Perm, PermGroup


def is_squarefree(n: int) -> bool:
    return n >= 1 and all(e == 1 for e in factorint(n).values())


def units(e: int) -> list[int]:
    if e == 1:
        return [0]
    return [s for s in range(1, e) if math.gcd(s, e) == 1]


def mult_order(k: int, e: int) -> int:
    if e == 1:
        return 1
    return int(n_order(k % e, e))


@dataclass(frozen=True)
class SquarefreeSpec:
    n: int
    e: int
    d: int
    k: int

    def __post_init__(self):
        if not is_squarefree(self.n):
            raise NotSquarefree(f"{self.n} is not squarefree")
        if self.d * self.e != self.n:
            raise ValueError(f"d*e = {self.d * self.e} != n = {self.n}")
        if self.e > 1 and math.gcd(self.k, self.e) != 1:
            raise ValueError(f"k={self.k} is not a unit mod {self.e}")
        if mult_order(self.k, self.e) != self.d:
            raise ValueError(f"k={self.k} does not have order {self.d} mod {self.e}")

    @property
    def z(self) -> int:
        return math.gcd(self.e, self.k - 1)

    @property
    def g(self) -> int:
        return self.e // self.z

    @property
    def aut_order(self) -> int:
        return self.g * int(totient(self.e))

    @property
    def is_abelian(self) -> bool:
        return self.d == 1

    def label(self) -> str:
        if self.d == 1:
            return f"C_{self.n}"
        return f"C_{self.e}:C_{self.d}[k={self.k}]"

    # -- group arithmetic on normal forms -----------------------------------

    def index(self, a: int, b: int) -> int:
        return (a % self.e) * self.d + (b % self.d)

    def normal_form(self, i: int) -> tuple[int, int]:
        return divmod(i, self.d)

    @cached_property
    def mul_table(self) -> np.ndarray:
        """n x n table of sigma^a tau^b * sigma^c tau^f = sigma^(a + c k^b) tau^(b + f)."""
        e, d, k = self.e, self.d, self.k
        a, b = np.divmod(np.arange(self.n), d)
        kpow = np.array([pow(k, int(x), e) if e > 1 else 0 for x in range(d)])
        aa = (a[:, None] + a[None, :] * kpow[b][:, None]) % e
        bb = (b[:, None] + b[None, :]) % d
        return aa * d + bb

    def power(self, a: int, b: int, m: int) -> int:
        """Index of (sigma^a tau^b)^m."""
        x = 0
        y = self.index(a, b)
        while m:
            if m & 1:
                x = int(self.mul_table[x, y])
            y = int(self.mul_table[y, y])
            m >>= 1
        return x

    def endomorphism(self, sigma_img: int, tau_img: int) -> np.ndarray:
        """Index map of sigma^a tau^b -> x^a y^b for the given images x, y."""
        t = self.mul_table
        xs = [0]
        for _ in range(self.e - 1):
            xs.append(int(t[xs[-1], sigma_img]))
        ys = [0]
        for _ in range(self.d - 1):
            ys.append(int(t[ys[-1], tau_img]))
        return np.array([t[xs[a], ys[b]] for a in range(self.e) for b in range(self.d)], dtype=np.int64)


def enumerate_specs(n: int) -> list[SquarefreeSpec]:
    """One spec per isomorphism class of groups of order n."""
    if not is_squarefree(n):
        raise NotSquarefree(f"{n} is not squarefree")
    specs = []
    for e in divisors(n):
        d = n // e
        seen = set()
        for k in units(e):
            if mult_order(k, e) != d:
                continue
            sub = frozenset(pow(k, i, e) if e > 1 else 0 for i in range(d))
            if sub in seen:
                continue
            seen.add(sub)
            specs.append(SquarefreeSpec(n, e, d, k if e > 1 else 1))
    return specs


def all_triples(n: int) -> list[SquarefreeSpec]:
    """Every valid (e, d, k) for order n, without deduplication."""
    out = []
    for e in divisors(n):
        d = n // e
        for k in units(e):
            if mult_order(k, e) == d:
                out.append(SquarefreeSpec(n, e, d, k if e > 1 else 1))
    return out


def build_group(spec: SquarefreeSpec) -> PermGroup:
    """Left regular representation of N on its own normal-form indices."""
    t = spec.mul_table
    sigma = Perm(t[spec.index(1, 0)].tolist())
    tau = Perm(t[spec.index(0, 1)].tolist())
    return PermGroup([sigma, tau], degree=spec.n)


@dataclass
class AutStructure:
    spec: SquarefreeSpec
    z: int
    g: int
    aut_order: int
    theta: np.ndarray
    phi: dict[int, np.ndarray]
    maps: list[np.ndarray]
    named: dict[str, np.ndarray] = field(default_factory=dict)

    def perms(self) -> list[Perm]:
        return [Perm(m.tolist()) for m in self.maps]


def _compose(f, h):
    return f[h]


def _power_map(f, k):
    out = np.arange(len(f))
    for _ in range(k):
        out = f[out]
    return out


def is_automorphism(spec: SquarefreeSpec, f: np.ndarray) -> bool:
    if sorted(f.tolist()) != list(range(spec.n)):
        return False
    t = spec.mul_table
    return bool(np.array_equal(f[t], t[f[:, None], f[None, :]]))


def aut_structure(spec: SquarefreeSpec) -> AutStructure:
    """Explicit Aut(N) as index maps, from theta and the phi_s."""
    z, g = spec.z, spec.g
    theta = spec.endomorphism(spec.index(1, 0), spec.index(z, 1))
    phi = {s: spec.endomorphism(spec.index(s, 0), spec.index(0, 1)) for s in units(spec.e)}
    maps = []
    seen = set()
    th = np.arange(spec.n)
    for _ in range(g):
        for s in sorted(phi):
            f = th[phi[s]]
            key = f.tobytes()
            if key not in seen:
                seen.add(key)
                maps.append(f)
        th = theta[th]
    for f in maps:
        if not is_automorphism(spec, f):
            raise AssertionError("constructed map is not an automorphism")
    maps.sort(key=lambda f: f.tolist())
    out = AutStructure(spec, z, g, len(maps), theta, phi, maps)
    out.named = _named_automorphisms(spec, out)
    return out


def _named_automorphisms(spec: SquarefreeSpec, aut: AutStructure) -> dict[str, np.ndarray]:
    """The generators used in the degree pq analysis, when N has that shape."""
    if spec.d == 1:
        pq = factorint(spec.n)
        if len(pq) != 2:
            return {}
        q, p = sorted(pq)
        if q == 2 or p != 2 * q + 1:
            return {}
        params = sophie_germain_params(q)
        return _cyclic_named(spec, p, q, params)
    if spec.d > 2 and isprime(spec.e) and isprime(spec.d) and spec.e == 2 * spec.d + 1:
        p = spec.e
        ident_tau = spec.index(0, 1)
        return {
            "alpha": spec.endomorphism(spec.index(spec.k, 0), ident_tau),
            "beta": spec.endomorphism(spec.index(p - 1, 0), ident_tau),
            "epsilon": spec.endomorphism(spec.index(1, 0), spec.index(1, 1)),
        }
    return {}


def _crt(rp, p, rq, q):
    return next(x for x in range(p * q) if x % p == rp % p and x % q == rq % q)


def _cyclic_named(spec, p, q, params):
    """alpha, beta fix tau (order q, 2); gamma, delta fix sigma (order 2^r, s)."""
    r, s = params["r"], params["s"]
    g = params["g"]
    h = int(primitive_root(q))
    unit = lambda rp, rq: spec.endomorphism(spec.index(_crt(rp, p, rq, q), 0), 0)
    return {
        "alpha": unit(g, 1),
        "beta": unit(p - 1, 1),
        "gamma": unit(1, pow(h, s, q)),
        "delta": unit(1, pow(h, 2**r, q)),
    }


def hol_div_check(spec: SquarefreeSpec) -> tuple[int, bool]:
    """|Hol(N)| and whether the cube of the largest prime of n divides it."""
    hol = spec.n * spec.aut_order
    if spec.n == 1:
        return hol, False
    p = max(factorint(spec.n))
    return hol, hol % p**3 == 0


def sophie_germain_params(q: int) -> dict:
    """p = 2q + 1, q - 1 = 2^r s, sigma_0(s), and g = (smallest primitive root)^2 mod p."""
    if q < 3 or not isprime(q) or not isprime(2 * q + 1):
        raise NotSophieGermain(f"q={q} is not an odd Sophie Germain prime")
    p = 2 * q + 1
    r, s = 0, q - 1
    while s % 2 == 0:
        r += 1
        s //= 2
    root = int(primitive_root(p))
    return {"q": q, "p": p, "r": r, "s": s, "sigma0_s": len(divisors(s)), "g": root * root % p,
            "primitive_root": root}
