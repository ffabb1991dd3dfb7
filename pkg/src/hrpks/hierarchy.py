"""Group-manager state: system setup, the department tree with its nested
affine constraints, member key generation, and GM certification of public
keys.

Department at level k <= r-1 carries k linearly independent hyperplanes
(its own plus every ancestor's); member secret keys are sampled uniformly
from the department's solution space mod q.
"""

import hashlib
import warnings
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import curve_fp, curve_q, modmath
from .curve_fp import CurveFp, ModPoint, msm, reduce_curve, reduce_point
from .curve_q import RationalPoint
from .encoding import encode, hash_to_challenge
from .errors import InvariantError

H_DERIVE_TAG = b"HRPKS-v1/h"
AUX_K_LIMIT = 10 ** 6
DEFAULT_STAT_GAP_BITS = 64


@dataclass(frozen=True)
class AuxGroup:
    """Order-q subgroup of (Z/rho)*: the commitment group.

    h is derived from g by hashing, so nobody holds log_g(h).
    """

    rho: int
    q: int
    g: int
    h: int

    def __post_init__(self):
        if (self.rho - 1) % self.q != 0:
            raise InvariantError("q does not divide rho - 1")
        for name, el in (("g", self.g), ("h", self.h)):
            if not 1 < el < self.rho:
                raise InvariantError(f"aux generator {name} out of range")
            if pow(el, self.q, self.rho) != 1:
                raise InvariantError(f"aux generator {name} not of order q")


@dataclass(frozen=True)
class Hyperplane:
    """Affine constraint a0 + a1*x1 + ... + ar*xr = 0 (mod q).

    coeffs is (a0, a1, ..., ar); the linear part must not vanish.
    """

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) < 2:
            raise InvariantError("hyperplane needs a constant and >=1 coefficient")
        if all(c == 0 for c in self.coeffs[1:]):
            raise InvariantError("hyperplane has an all-zero linear part")

    @property
    def a0(self) -> int:
        return self.coeffs[0]

    @property
    def linear(self) -> Tuple[int, ...]:
        return self.coeffs[1:]

    def evaluate(self, x: Sequence[int], q: int) -> int:
        if len(x) != len(self.coeffs) - 1:
            raise ValueError("dimension mismatch")
        return (self.a0 + sum(a * v for a, v in zip(self.linear, x))) % q


@dataclass
class DeptNode:
    """Node of the department tree. The root has level 0 and no constraints;
    a level-k node carries k constraints (its own last)."""

    path: str
    level: int
    constraints: Tuple[Hyperplane, ...] = ()
    children: List["DeptNode"] = field(default_factory=list)

    def child(self, name: str) -> Optional["DeptNode"]:
        for c in self.children:
            if c.path.rsplit("/", 1)[-1] == name:
                return c
        return None


def new_root() -> DeptNode:
    return DeptNode(path="", level=0)


def find_dept(root: DeptNode, path: str) -> DeptNode:
    """Look up a node by path like '/financial/payroll'."""
    if path in ("", "/"):
        return root
    node = root
    for name in path.strip("/").split("/"):
        node = node.child(name)
        if node is None:
            raise ValueError(f"no department at path {path!r}")
    return node


def walk(root: DeptNode):
    yield root
    for c in root.children:
        yield from walk(c)


@dataclass(frozen=True)
class SecretKey:
    x: Tuple[int, ...]
    member_id: str
    dept: str

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))

    def __repr__(self):  # keep key material out of logs
        return f"SecretKey(member_id={self.member_id!r}, dept={self.dept!r})"


@dataclass(frozen=True)
class PublicKey:
    point: ModPoint
    member_id: str
    dept: str
    cert: Optional[bytes] = None


@dataclass(frozen=True)
class SystemParams:
    curve_id: str
    curve: CurveFp
    r: int
    p: int
    q: int
    gens: Tuple[ModPoint, ...]
    aux: AuxGroup
    l_c: int
    l_s: int
    gm_pub: PublicKey

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        if self.p != self.curve.p:
            raise InvariantError("p disagrees with the reduced curve")
        if len(self.gens) != self.r or self.r < 1:
            raise InvariantError("generator count must equal r >= 1")
        if len(set(self.gens)) != self.r:
            raise InvariantError("generators must be pairwise distinct")
        for g in self.gens:
            if g.is_infinity:
                raise InvariantError("a generator reduced to infinity")
            if not curve_fp.on_curve_fp(self.curve, g):
                raise InvariantError(f"generator {g} not on the curve")
        if not modmath.is_probable_prime(self.q, curve_fp.PRIMALITY_ROUNDS):
            raise InvariantError("q is not prime")
        if not 8 <= self.l_c or (1 << self.l_c) >= self.q:
            raise InvariantError("need 8 <= l_c and 2^l_c < q")
        if self.l_s < 1:
            raise InvariantError("l_s must be positive")
        if self.aux.q != self.q:
            raise InvariantError("aux group order disagrees with q")
        if not curve_fp.on_curve_fp(self.curve, self.gm_pub.point):
            raise InvariantError("GM public point not on the curve")

    def digest(self) -> bytes:
        """Stable 32-byte identifier binding every public parameter."""
        c = self.curve
        parts = [
            self.curve_id.encode(), self.p,
            c.a1, c.a2, c.a3, c.a4, c.a6,
            self.q, self.r, list(self.gens),
            self.aux.rho, self.aux.g, self.aux.h,
            self.l_c, self.l_s,
            self.gm_pub.point, self.gm_pub.member_id.encode(),
            self.gm_pub.dept.encode(),
        ]
        return hashlib.sha256(b"HRPKS-v1/params" + encode(parts)).digest()

    @property
    def mask_bits(self) -> int:
        return self.q.bit_length() + self.l_c + self.l_s


def _build_aux_group(q: int) -> AuxGroup:
    k = 2
    rho = None
    while k <= AUX_K_LIMIT:
        cand = k * q + 1
        if modmath.is_probable_prime(cand, curve_fp.PRIMALITY_ROUNDS):
            rho = cand
            break
        k += 1
    if rho is None:
        raise ValueError(f"no prime rho = k*q + 1 with k <= {AUX_K_LIMIT}")
    z = 2
    while True:
        g = pow(z, (rho - 1) // q, rho)
        if g != 1:
            break
        z += 1
    e = hash_to_challenge(H_DERIVE_TAG, [rho, g], q.bit_length() - 1) + 2
    h = pow(g, e, rho)
    if h == 1:
        raise InvariantError("degenerate commitment base h = 1; pick another q")
    return AuxGroup(rho=rho, q=q, g=g, h=h)


def setup(curve_id: str, p: int, q: int, rng, l_c: Optional[int] = None,
          l_s: int = DEFAULT_STAT_GAP_BITS,
          generators: Optional[Sequence[RationalPoint]] = None):
    """Build system parameters and the GM keypair.

    Reduces the catalog curve and its generators mod p, constructs the
    auxiliary commitment group for q, and samples the (unconstrained) GM
    secret vector. Supply `generators` to override the catalog's list, e.g.
    to run the protocol with more points than the curve has published
    generators.

    Returns (SystemParams, gm_secret_key).
    """
    curve = curve_q.catalog(curve_id)
    gens_q = tuple(generators) if generators is not None else curve.generators
    if not gens_q:
        raise ValueError(f"curve {curve_id!r} lists no generators; supply some")
    for g in gens_q:
        if not curve_q.on_curve_q(curve, g):
            raise ValueError(f"supplied generator {g} is not on {curve_id}")
    if not modmath.is_probable_prime(p, curve_fp.PRIMALITY_ROUNDS):
        raise ValueError(f"p = {p} is not prime")
    if not modmath.is_probable_prime(q, curve_fp.PRIMALITY_ROUNDS):
        raise ValueError(f"q = {q} is not prime")

    reduced = reduce_curve(curve, p)
    gens = []
    for g in gens_q:
        m = reduce_point(reduced, g)
        if m.is_infinity:
            raise ValueError(f"generator {g} reduces to infinity mod {p}")
        gens.append(m)
    if len(set(gens)) != len(gens):
        raise ValueError("generators collide after reduction; pick another p")

    if l_c is None:
        l_c = min(128, q.bit_length() - 1)
    if l_c < 8 or (1 << l_c) >= q:
        raise ValueError("need 8 <= l_c and 2^l_c < q (so q >= 257)")

    hasse_lo, _ = curve_fp.hasse_interval(p)
    if q >= hasse_lo:
        warnings.warn(
            f"q = {q} is not significantly below the possible generator "
            f"orders (Hasse floor {hasse_lo}); key coordinates may wrap "
            "around generator orders, which weakens the intended "
            "relation-hardness range restriction. Fine for toy "
            "reproduction only.")

    aux = _build_aux_group(q)
    r = len(gens)
    gm_x = tuple(rng.randrange(q) for _ in range(r))
    gm_point = msm(reduced, gm_x, gens)
    gm_pub = PublicKey(point=gm_point, member_id="gm", dept="")
    params = SystemParams(curve_id=curve_id, curve=reduced, r=r, p=p, q=q,
                          gens=tuple(gens), aux=aux, l_c=l_c, l_s=l_s,
                          gm_pub=gm_pub)
    return params, SecretKey(x=gm_x, member_id="gm", dept="")


def add_department(params: SystemParams, parent: DeptNode, rng,
                   name: Optional[str] = None,
                   constraint: Optional[Hyperplane] = None) -> DeptNode:
    """Attach a child department one level below `parent`.

    Samples a fresh hyperplane until its linear part is independent of the
    parent's stacked constraint rows mod q, so the child's solution space
    has dimension exactly r - level >= 1. Pass `constraint` to pin the
    hyperplane instead of sampling (it must still be independent).
    """
    q, r = params.q, params.r
    if parent.level >= r - 1:
        raise ValueError(
            f"depth limit: level-{parent.level} department cannot have "
            f"children when r = {r} (max level is r - 1)")
    if name is None:
        name = f"d{len(parent.children)}"
    if "/" in name or not name:
        raise ValueError("department names must be nonempty and slash-free")
    if parent.child(name) is not None:
        raise ValueError(f"department {name!r} already exists under "
                         f"{parent.path or '/'}")

    parent_rows = [hp.linear for hp in parent.constraints]
    if constraint is not None:
        if len(constraint.coeffs) != r + 1:
            raise ValueError("constraint dimension disagrees with r")
        coeffs = tuple(c % q for c in constraint.coeffs)
        if modmath.rank_mod(parent_rows + [coeffs[1:]], q) \
                != len(parent_rows) + 1:
            raise ValueError("pinned constraint is dependent on the "
                             "parent's constraints")
    else:
        while True:
            coeffs = tuple(rng.randrange(q) for _ in range(r + 1))
            linear = coeffs[1:]
            if all(c == 0 for c in linear):
                continue
            if modmath.rank_mod(parent_rows + [linear], q) \
                    == len(parent_rows) + 1:
                break
    hp = Hyperplane(coeffs)
    node = DeptNode(path=f"{parent.path}/{name}", level=parent.level + 1,
                    constraints=parent.constraints + (hp,))
    parent.children.append(node)
    return node


def solve_member_vector(params: SystemParams, dept: DeptNode, rng,
                        pinned: Optional[Dict[int, int]] = None) -> Tuple[int, ...]:
    """A vector in [0,q)^r on every constraint of `dept`. Coordinates listed
    in `pinned` are fixed; the remaining free ones are drawn from rng."""
    q = params.q
    rows = [hp.linear for hp in dept.constraints]
    rhs = [-hp.a0 for hp in dept.constraints]
    x = modmath.solve_affine_mod(rows, rhs, q, fill=lambda _j: rng.randrange(q),
                                 pinned=pinned)
    return tuple(x)


def join(params: SystemParams, gm_sk: SecretKey, dept: DeptNode,
         member_id: str, rng,
         pinned: Optional[Dict[int, int]] = None):
    """Generate a member keypair on the department's constraint subspace
    and certify the public key.

    Returns (SecretKey, PublicKey) with the GM certificate attached.
    """
    if dept.level < 1:
        raise ValueError("members join departments, not the root")
    x = solve_member_vector(params, dept, rng, pinned=pinned)
    for hp in dept.constraints:
        if hp.evaluate(x, params.q) != 0:
            raise InvariantError("solved key misses a constraint; "
                                 "department state is corrupt")
    point = msm(params.curve, x, params.gens)
    sk = SecretKey(x=x, member_id=member_id, dept=dept.path)
    bare = PublicKey(point=point, member_id=member_id, dept=dept.path)
    cert = gm_certify(params, gm_sk, bare, rng)
    pk = PublicKey(point=point, member_id=member_id, dept=dept.path, cert=cert)
    return sk, pk


def _cert_message(pk: PublicKey) -> bytes:
    return encode([pk.point, pk.member_id.encode(), pk.dept.encode()])


def gm_certify(params: SystemParams, gm_sk: SecretKey, pk: PublicKey,
               rng) -> bytes:
    """GM signature over (point, member id, dept path), as canonical bytes."""
    from . import revocation, serial, sigma  # deferred: layered above us

    if msm(params.curve, gm_sk.x, params.gens) != params.gm_pub.point:
        raise ValueError("gm_sk does not match params.gm_pub")
    sig = sigma.sign(params, gm_sk, params.gm_pub, revocation.empty_rl(),
                     _cert_message(pk), rng)
    return serial.serialize_artifact("signature", sig).encode("utf-8")


def verify_cert(params: SystemParams, pk: PublicKey) -> bool:
    """True iff pk carries a valid GM certificate for exactly its fields."""
    from . import revocation, serial, sigma

    if not pk.cert:
        return False
    try:
        sig = serial.deserialize_artifact(pk.cert.decode("utf-8"))
    except Exception:
        return False
    if not isinstance(sig, sigma.Signature):
        return False
    result = sigma.verify(params, params.gm_pub, revocation.empty_rl(),
                          _cert_message(pk), sig)
    return result.accepted
