"""Revocation-list state: individual member revocation, group revocation by
constraint set, and coalescing of fully revoked sibling families.

Lists are immutable snapshots; every mutation returns a fresh list with a
strictly larger version counter. Members and groups are kept in canonical
order so equal contents always serialize (and hash) identically.
"""

import hashlib
from dataclasses import dataclass
from typing import Tuple

from .curve_fp import ModPoint
from .errors import InvariantError
from .hierarchy import DeptNode, Hyperplane, PublicKey, walk


@dataclass(frozen=True)
class RevokedMember:
    point: ModPoint
    member_id: str


@dataclass(frozen=True)
class ConstraintSet:
    """A revoked department: its path and the full stack of hyperplanes
    (own plus ancestors'), so verifiers need no tree access."""

    path: str
    constraints: Tuple[Hyperplane, ...]

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if not self.constraints:
            raise InvariantError("empty constraint set")


def _member_key(m: RevokedMember):
    return (m.point.x or 0, m.point.y or 0, m.member_id)


@dataclass(frozen=True)
class RevocationList:
    members: Tuple[RevokedMember, ...] = ()
    groups: Tuple[ConstraintSet, ...] = ()
    version: int = 0

    def __post_init__(self):
        members = tuple(sorted(self.members, key=_member_key))
        groups = tuple(sorted(self.groups, key=lambda g: g.path))
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "groups", groups)
        points = [m.point for m in members]
        if len(set(points)) != len(points):
            raise InvariantError("duplicate member point in revocation list")
        paths = [g.path for g in groups]
        if len(set(paths)) != len(paths):
            raise InvariantError("duplicate department path in revocation list")


def empty_rl() -> RevocationList:
    return RevocationList()


def is_member_revoked(rl: RevocationList, pk: PublicKey) -> bool:
    return any(m.point == pk.point for m in rl.members)


def revoke_member(rl: RevocationList, pk: PublicKey) -> RevocationList:
    if is_member_revoked(rl, pk):
        raise ValueError(f"public key of {pk.member_id!r} is already revoked")
    member = RevokedMember(point=pk.point, member_id=pk.member_id)
    return RevocationList(members=rl.members + (member,), groups=rl.groups,
                          version=rl.version + 1)


def revoke_group(rl: RevocationList, dept: DeptNode) -> RevocationList:
    if dept.level < 1:
        raise ValueError("the root has no hyperplane to revoke")
    if any(g.path == dept.path for g in rl.groups):
        raise ValueError(f"department {dept.path!r} is already revoked")
    entry = ConstraintSet(path=dept.path, constraints=dept.constraints)
    return RevocationList(members=rl.members, groups=rl.groups + (entry,),
                          version=rl.version + 1)


def coalesce(rl: RevocationList, root: DeptNode) -> RevocationList:
    """Replace complete revoked sibling families by their parent's entry,
    repeated to a fixpoint (bottom-up).

    Needs the GM tree: the list alone cannot tell whether a sibling family
    is complete. Keys on any child's subspace satisfy the parent's
    constraints by construction, so the blocked-key set is preserved.
    """
    entries = {g.path: g for g in rl.groups}
    changed = False
    progress = True
    while progress:
        progress = False
        # deepest nodes first so collapses can cascade upward
        for node in sorted(walk(root), key=lambda n: -n.level):
            if node.level < 1 or not node.children:
                continue
            if all(c.path in entries for c in node.children):
                for c in node.children:
                    del entries[c.path]
                if node.path not in entries:
                    entries[node.path] = ConstraintSet(
                        path=node.path, constraints=node.constraints)
                progress = changed = True
    if not changed:
        return rl
    return RevocationList(members=rl.members,
                          groups=tuple(entries.values()),
                          version=rl.version + 1)


def rl_hash(rl: RevocationList) -> bytes:
    """SHA-256 over the canonical serialized list; bound into every
    signature challenge."""
    from . import serial  # deferred: serial sits above this module

    return hashlib.sha256(
        serial.serialize_artifact("rl", rl).encode("utf-8")).digest()
