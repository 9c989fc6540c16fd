"""Instance files: a line-oriented record grammar, canonical emission, and
the seeded random instance generator.

Grammar (one record per line, # comments):

    record  := kind "{" pairs? "}"
    pairs   := key ":" value ("," key ":" value)*
    value   := integer | string | "[" values "]" | "{" pairs "}"

Record kinds: group (catalog | product | order+table), subgroup (name +
elements or gens), simple (H, cocycle, tuple), edge (from, to, degree),
truncation (N), seed (value).  parse_instance validates everything it can:
the group table, subgroup closure, cocycle identities, index ranges.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .algebras import DEFAULT_BASIS_CAP, Edge, GluedAlgebra, build_glued, build_graded_simple
from .cocycles import (CocycleError, TwoCocycle, coboundary_cocycle, klein_cocycle,
                       trivial_cocycle)
from .groups import (GroupError, GroupTable, Subgroup, catalog_group,
                     direct_product, subgroup_closure)
from .rng import Xorshift


class InstanceError(ValueError):
    pass


# ---------------------------------------------------------------------------
# tokenizing / parsing
# ---------------------------------------------------------------------------

class _Cursor:
    def __init__(self, text: str, line_no: int):
        self.text = text
        self.pos = 0
        self.line_no = line_no

    def error(self, msg: str):
        raise InstanceError(f"line {self.line_no}, column {self.pos + 1}: {msg}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        self.skip_ws()
        if not self.text.startswith(ch, self.pos):
            self.error(f"expected {ch!r}")
        self.pos += len(ch)

    def ident(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()
                                             or self.text[self.pos] == "_"):
            self.pos += 1
        if start == self.pos:
            self.error("expected an identifier")
        return self.text[start:self.pos]

    def value(self):
        c = self.peek()
        if c == "[":
            self.take("[")
            items = []
            if self.peek() != "]":
                items.append(self.value())
                while self.peek() == ",":
                    self.take(",")
                    items.append(self.value())
            self.take("]")
            return items
        if c == "{":
            return self.mapping()
        if c == '"':
            self.take('"')
            end = self.text.find('"', self.pos)
            if end < 0:
                self.error("unterminated string")
            s = self.text[self.pos:end]
            self.pos = end + 1
            return s
        if c == "-" or c.isdigit():
            self.skip_ws()
            start = self.pos
            if c == "-":
                self.pos += 1
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.text[start:self.pos] in ("", "-"):
                self.error("expected an integer")
            return int(self.text[start:self.pos])
        self.error(f"unexpected character {c!r}")

    def mapping(self) -> dict:
        self.take("{")
        out = {}
        if self.peek() != "}":
            while True:
                key = self.ident()
                self.take(":")
                out[key] = self.value()
                if self.peek() != ",":
                    break
                self.take(",")
        self.take("}")
        return out

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def _records(text: str):
    for line_no, raw in enumerate(text.splitlines(), start=1):
        # strip comments outside quotes
        out, quoted = [], False
        for ch in raw:
            if ch == '"':
                quoted = not quoted
            if ch == "#" and not quoted:
                break
            out.append(ch)
        line = "".join(out).strip()
        if not line:
            continue
        cur = _Cursor(line, line_no)
        kind = cur.ident()
        body = cur.mapping()
        if not cur.at_end():
            cur.error("trailing characters after record")
        yield line_no, kind, body


# ---------------------------------------------------------------------------
# the spec itself
# ---------------------------------------------------------------------------

@dataclass
class CocycleSpec:
    modulus: int = 2
    kind: str = "trivial"            # trivial | coboundary | table
    data: tuple[int, ...] = ()

    def build(self, H: Subgroup, path: str) -> TwoCocycle:
        try:
            if self.kind == "trivial":
                return trivial_cocycle(H, self.modulus)
            if self.kind == "coboundary":
                return coboundary_cocycle(H, self.modulus, list(self.data))
            if self.kind == "table":
                m = H.size
                if len(self.data) != m * m:
                    raise CocycleError(f"table needs {m * m} entries")
                rows = tuple(tuple(self.data[i * m + j] for j in range(m)) for i in range(m))
                return TwoCocycle(H, self.modulus, rows)
        except CocycleError as e:
            raise InstanceError(f"{path}: {e}") from e
        raise InstanceError(f"{path}: unknown cocycle kind {self.kind!r}")


@dataclass
class SimpleSpec:
    H: tuple[int, ...]
    cocycle: CocycleSpec
    tup: tuple[int, ...]


@dataclass
class InstanceSpec:
    group_kind: str                   # catalog | product | table
    group_data: tuple                 # (name,) | (names...) | (order, entries)
    subgroups: dict[str, tuple[int, ...]] = field(default_factory=dict)
    simples: list[SimpleSpec] = field(default_factory=list)
    edges: list[tuple[int, int, int]] = field(default_factory=list)
    truncation: int = 1
    seed: int | None = None

    def canonical_text(self) -> str:
        lines = []
        if self.group_kind == "catalog":
            lines.append(f'group {{ catalog: "{self.group_data[0]}" }}')
        elif self.group_kind == "product":
            names = ", ".join(f'"{n}"' for n in self.group_data)
            lines.append(f"group {{ product: [{names}] }}")
        else:
            order, entries = self.group_data
            tbl = ", ".join(str(x) for x in entries)
            lines.append(f"group {{ order: {order}, table: [{tbl}] }}")
        for name in sorted(self.subgroups):
            elems = ", ".join(str(x) for x in self.subgroups[name])
            lines.append(f'subgroup {{ name: "{name}", elements: [{elems}] }}')
        for s in self.simples:
            h = ", ".join(str(x) for x in s.H)
            c = s.cocycle
            if c.kind == "trivial":
                coc = f'{{ modulus: {c.modulus}, kind: "trivial" }}'
            else:
                data = ", ".join(str(x) for x in c.data)
                coc = f'{{ modulus: {c.modulus}, kind: "{c.kind}", data: [{data}] }}'
            t = ", ".join(str(x) for x in s.tup)
            lines.append(f"simple {{ H: [{h}], cocycle: {coc}, tuple: [{t}] }}")
        for (src, dst, deg) in self.edges:
            lines.append(f"edge {{ from: {src}, to: {dst}, degree: {deg} }}")
        lines.append(f"truncation {{ N: {self.truncation} }}")
        if self.seed is not None:
            lines.append(f"seed {{ value: {self.seed} }}")
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()[:12]

    # -- realization --------------------------------------------------------

    def build_group(self) -> GroupTable:
        try:
            if self.group_kind == "catalog":
                return catalog_group(self.group_data[0])
            if self.group_kind == "product":
                return direct_product(*(catalog_group(n) for n in self.group_data))
            order, entries = self.group_data
            if len(entries) != order * order:
                raise InstanceError(f"group.table: expected {order * order} entries")
            rows = [list(entries[i * order:(i + 1) * order]) for i in range(order)]
            return GroupTable(rows, name=f"table{order}")
        except GroupError as e:
            raise InstanceError(f"group: {e}") from e

    def build(self, cap: int = DEFAULT_BASIS_CAP) -> "BuiltInstance":
        g = self.build_group()
        subgroups = {}
        for name, elems in self.subgroups.items():
            try:
                subgroups[name] = Subgroup(g, tuple(sorted(elems)))
            except GroupError as e:
                raise InstanceError(f"subgroup {name!r}: {e}") from e
        comps = []
        for i, s in enumerate(self.simples):
            path = f"simple[{i}]"
            for k, x in enumerate(s.H):
                if not 0 <= x < g.order:
                    raise InstanceError(f"{path}.H[{k}] not a group element")
            try:
                H = Subgroup(g, tuple(sorted(s.H)))
            except GroupError as e:
                raise InstanceError(f"{path}.H: {e}") from e
            coc = s.cocycle.build(H, f"{path}.cocycle")
            for k, x in enumerate(s.tup):
                if not 0 <= x < g.order:
                    raise InstanceError(f"{path}.tuple[{k}] not a group element")
            comps.append(build_graded_simple(g, H, coc, s.tup))
        edges = []
        for i, (src, dst, deg) in enumerate(self.edges):
            if not (0 <= src < len(comps) and 0 <= dst < len(comps)):
                raise InstanceError(f"edge[{i}] references a missing component")
            if not 0 <= deg < g.order:
                raise InstanceError(f"edge[{i}].degree not a group element")
            edges.append(Edge(src, dst, deg))
        if not comps:
            raise InstanceError("instance has no simple components")
        algebra = build_glued(g, comps, edges, self.truncation, cap)
        return BuiltInstance(self, g, subgroups, algebra)


@dataclass
class BuiltInstance:
    spec: InstanceSpec
    group: GroupTable
    subgroups: dict[str, Subgroup]
    algebra: GluedAlgebra


def _want(body: dict, key: str, path: str):
    if key not in body:
        raise InstanceError(f"{path}: missing key {key!r}")
    return body[key]


def _int_list(v, path: str) -> tuple[int, ...]:
    if not isinstance(v, list) or any(not isinstance(x, int) for x in v):
        raise InstanceError(f"{path}: expected a list of integers")
    return tuple(v)


def parse_instance(text: str) -> InstanceSpec:
    """Parse and validate; returns the canonicalized spec (subgroup
    generator sets are resolved to sorted closed element sets, cocycles are
    verified)."""
    spec = InstanceSpec("catalog", ("Z1",))
    group_seen = False
    raw_subgroups: list[tuple[str, str, tuple[int, ...]]] = []
    for line_no, kind, body in _records(text):
        where = f"line {line_no} ({kind})"
        if kind == "group":
            if group_seen:
                raise InstanceError(f"{where}: duplicate group record")
            group_seen = True
            if "catalog" in body:
                spec.group_kind, spec.group_data = "catalog", (str(body["catalog"]),)
            elif "product" in body:
                names = body["product"]
                if not isinstance(names, list) or not names:
                    raise InstanceError(f"{where}: product needs a list of names")
                spec.group_kind, spec.group_data = "product", tuple(str(n) for n in names)
            elif "table" in body:
                order = _want(body, "order", where)
                spec.group_kind = "table"
                spec.group_data = (order, _int_list(_want(body, "table", where), where))
            else:
                raise InstanceError(f"{where}: need catalog, product, or order+table")
        elif kind == "subgroup":
            name = str(_want(body, "name", where))
            if "elements" in body:
                raw_subgroups.append((name, "elements", _int_list(body["elements"], where)))
            elif "gens" in body:
                raw_subgroups.append((name, "gens", _int_list(body["gens"], where)))
            else:
                raise InstanceError(f"{where}: need elements or gens")
        elif kind == "simple":
            h = _int_list(_want(body, "H", where), f"{where}.H")
            tup = _int_list(_want(body, "tuple", where), f"{where}.tuple")
            cbody = body.get("cocycle", {"modulus": 2, "kind": "trivial"})
            if not isinstance(cbody, dict):
                raise InstanceError(f"{where}.cocycle: expected a record")
            ckind = str(cbody.get("kind", "trivial"))
            cmod = cbody.get("modulus", 2)
            if not isinstance(cmod, int) or cmod < 1:
                raise InstanceError(f"{where}.cocycle.modulus: bad value")
            cdata = tuple(cbody.get("data", []))
            spec.simples.append(SimpleSpec(h, CocycleSpec(cmod, ckind, cdata), tup))
        elif kind == "edge":
            spec.edges.append((_want(body, "from", where), _want(body, "to", where),
                               _want(body, "degree", where)))
        elif kind == "truncation":
            spec.truncation = _want(body, "N", where)
            if not isinstance(spec.truncation, int) or spec.truncation < 1:
                raise InstanceError(f"{where}: N must be a positive integer")
        elif kind == "seed":
            spec.seed = _want(body, "value", where)
        else:
            raise InstanceError(f"{where}: unknown record kind")
    if not group_seen:
        raise InstanceError("missing group record")

    # canonicalize subgroups against the actual group
    g = spec.build_group()
    for name, how, data in raw_subgroups:
        try:
            if how == "gens":
                sub = subgroup_closure(g, set(data))
            else:
                sub = Subgroup(g, tuple(sorted(data)))
        except GroupError as e:
            raise InstanceError(f"subgroup {name!r}: {e}") from e
        spec.subgroups[name] = sub.elements
    # validate the rest eagerly so parse errors carry paths
    spec.build()
    return spec


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------

@dataclass
class GeneratorProfile:
    max_group_order: int = 8
    max_components: int = 3
    max_r: int = 3
    max_truncation: int = 3
    max_edges: int = 3
    basis_cap: int = DEFAULT_BASIS_CAP
    groups: tuple[str, ...] = ("Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8",
                               "D3", "D4", "Z2xZ2", "Z2xZ4", "Z2xZ2xZ2")
    moduli: tuple[int, ...] = (2, 2, 2, 3, 4)


ENVELOPE_PROFILE = GeneratorProfile(
    max_components=2, max_r=2, max_truncation=2, max_edges=1,
    groups=("Z2xZ2", "Z2xZ4", "Z2xZ2xZ2"), moduli=(2, 2, 4))


def _is_klein(g: GroupTable, H: Subgroup) -> bool:
    return H.size == 4 and all(g.mul[x][x] == 0 for x in H.elements)


def _draw_cocycle(rng: Xorshift, g: GroupTable, H: Subgroup,
                  profile: GeneratorProfile) -> CocycleSpec:
    modulus = rng.choice(profile.moduli)
    if _is_klein(g, H) and modulus % 2 == 0 and rng.chance(1, 2):
        table = klein_cocycle(H, modulus)
        flat = tuple(x for row in table.table for x in row)
        return CocycleSpec(modulus, "table", flat)
    if H.size > 1 and rng.chance(1, 2):
        lam = [0] + [rng.below(modulus) for _ in range(H.size - 1)]
        # positions follow H's sorted element order; identity sits first
        return CocycleSpec(modulus, "coboundary", tuple(lam))
    return CocycleSpec(modulus, "trivial")


def generate_instance(seed: int, profile: GeneratorProfile | None = None) -> InstanceSpec:
    """Deterministic function of the seed: same seed, same instance."""
    profile = profile or GeneratorProfile()
    rng = Xorshift(seed * 0x9E3779B97F4A7C15 + 0x1234567)
    pool = [n for n in profile.groups
            if catalog_group(n).order <= profile.max_group_order]
    if not pool:
        raise InstanceError("profile admits no groups")

    for attempt in range(64):
        shrink = attempt // 8          # progressively smaller on cap misses
        name = rng.choice(pool)
        if "x" in name:
            spec = InstanceSpec("product", tuple(name.split("x")))
        else:
            spec = InstanceSpec("catalog", (name,))
        spec.seed = seed
        g = spec.build_group()
        q = rng.randint(1, max(1, profile.max_components - shrink))
        max_r = max(1, profile.max_r - shrink)
        for _ in range(q):
            gens = rng.sample(list(range(g.order)), rng.randint(0, 2))
            H = subgroup_closure(g, set(gens))
            coc = _draw_cocycle(rng, g, H, profile)
            r = rng.randint(1, max_r)
            tup = tuple(rng.below(g.order) for _ in range(r))
            spec.simples.append(SimpleSpec(H.elements, coc, tup))
        spec.truncation = rng.randint(1, profile.max_truncation)
        n_edges = rng.randint(0, max(0, profile.max_edges - shrink))
        if spec.truncation == 1:
            n_edges = 0
        for _ in range(n_edges):
            spec.edges.append((rng.below(q), rng.below(q), rng.below(g.order)))
        # a named subgroup for the check subcommand, and a normal one
        ksub = subgroup_closure(g, set(rng.sample(list(range(g.order)),
                                                  rng.randint(0, 2))))
        spec.subgroups["K"] = ksub.elements
        normals = [s for s in _all_normal(g)]
        spec.subgroups["N"] = rng.choice(normals).elements
        try:
            spec.build(profile.basis_cap)
        except (InstanceError, ValueError):
            continue
        return spec
    raise InstanceError(f"could not generate an instance for seed {seed}")


def _all_normal(g: GroupTable):
    from .groups import all_subgroups
    return [s for s in all_subgroups(g) if s.is_normal()]
