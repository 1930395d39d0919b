"""The data bank: parameter values, side tables, stabilizer tables, and
construction of fully validated group instances."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from . import words
from .cyclo import Cyclotomic, parse_value, rational, root_of_unity
from .errors import CatalogError, VerificationError
from .forms import HermitianForm, Mat3, Vec3, identity, mat

INF = math.inf


@lru_cache(maxsize=None)
def _load(name: str) -> dict:
    with resources.files("cxtriangle.data").joinpath(name).open() as f:
        return json.load(f)


def parameter_families() -> dict:
    return _load("parameters.json")["families"]


class GroupInstance:
    """One (family, parameter, p) triple with its form and generators."""

    def __init__(self, family, param, p, form, generators, j_matrix=None):
        self.family = family
        self.param = param
        self.p = p
        self.form = form
        self.r1, self.r2, self.r3 = generators
        self._j = j_matrix
        self._symbols = {}

    def symbol_matrix(self, symbol: str) -> Mat3:
        m = self._symbols.get(symbol)
        if m is not None:
            return m
        if symbol == "1":
            m = self.r1
        elif symbol == "2":
            m = self.r2
        elif symbol == "3":
            m = self.r3
        elif symbol == "J":
            if self._j is None:
                raise CatalogError("symbol J is only defined for S-family groups")
            m = self._j
        elif symbol == "P":
            if self._j is None:
                raise CatalogError("symbol P = R1*J is only defined for S-family groups")
            m = self.r1 * self._j
        elif symbol == "Q":
            m = self.r1 * self.r2 * self.r3
        else:
            raise CatalogError(f"unknown symbol {symbol!r}")
        self._symbols[symbol] = m
        return m

    def evaluate(self, word) -> Mat3:
        if isinstance(word, str):
            word = words.parse(word)
        return words.evaluate(word, self)

    @property
    def key(self):
        return (self.family, self.param, self.p)

    def __repr__(self):
        return f"GroupInstance({self.family}({self.p},{self.param}))"


def _projective_order(m: Mat3, cap: int) -> float:
    power = m
    for k in range(1, cap + 1):
        if power.is_scalar():
            return k
        power = power * m
    return INF


def build(family: str, param: str, p: int, override: bool = False) -> GroupInstance:
    """Construct and eagerly validate a catalog instance.

    With override=True an arbitrary (family, param, p) from the known
    parameter families may be built even if p is not in the lattice list,
    but the invariant checks still run.
    """
    fams = parameter_families()
    if param not in fams:
        raise CatalogError(f"unknown parameter {param!r}")
    entry = fams[param]
    if family != entry["family"]:
        raise CatalogError(f"parameter {param!r} belongs to family {entry['family']}")
    if p not in entry["p_values"] and not override:
        raise CatalogError(f"p={p} is not a lattice value for {param!r} "
                           f"(allowed: {entry['p_values']})")
    rho = parse_value(entry["rho"])
    sigma = parse_value(entry["sigma"])
    tau = parse_value(entry["tau"])
    inst = _assemble(family, param, p, rho, sigma, tau)
    _validate(inst, p)
    return inst


def _assemble(family, param, p, rho, sigma, tau) -> GroupInstance:
    u = root_of_unity(3 * p)
    ub = u.conjugate()
    alpha = rational(2) - u ** 3 - ub ** 3
    b1 = (ub ** 2 - u) * rho
    b2 = (ub ** 2 - u) * sigma
    b3 = (ub ** 2 - u) * tau
    h = HermitianForm(mat([
        [alpha, b1, b3.conjugate()],
        [b1.conjugate(), alpha, b2],
        [b3, b2.conjugate(), alpha],
    ]))
    zero = rational(0)
    r1 = mat([[u ** 2, rho, -(u * tau.conjugate())], [zero, ub, zero], [zero, zero, ub]])
    r2 = mat([[ub, zero, zero], [-(u * rho.conjugate()), u ** 2, sigma], [zero, zero, ub]])
    r3 = mat([[ub, zero, zero], [zero, ub, zero], [tau, -(u * sigma.conjugate()), u ** 2]])
    j = mat([[0, 0, 1], [1, 0, 0], [0, 1, 0]]) if family == "S" else None
    return GroupInstance(family, param, p, h, (r1, r2, r3), j)


def _validate(inst: GroupInstance, p: int) -> None:
    sig = inst.form.signature
    if sig != (2, 0, 1):
        raise CatalogError(f"form signature {sig} != (2,0,1) for {inst!r}")
    one = rational(1)
    for name, m in (("R1", inst.r1), ("R2", inst.r2), ("R3", inst.r3)):
        if not inst.form.preserves(m):
            raise VerificationError(f"{name} does not preserve the form in {inst!r}")
        if m.det() != one:
            raise VerificationError(f"det {name} != 1 in {inst!r}")
        if _projective_order(m, 3 * p) != p:
            raise VerificationError(f"{name} does not have projective order {p}")
    if inst.family == "S":
        j = inst.symbol_matrix("J")
        if not inst.form.preserves(j):
            raise VerificationError(f"J does not preserve the form in {inst!r}")
        ji = j.inverse()
        if j * inst.r1 * ji != inst.r2 or j * inst.r2 * ji != inst.r3:
            raise VerificationError(f"J does not cycle the generators in {inst!r}")


def all_instances() -> list[GroupInstance]:
    out = []
    for param, entry in parameter_families().items():
        for p in entry["p_values"]:
            out.append(build(entry["family"], param, p))
    return out


def all_keys() -> list[tuple]:
    out = []
    for param, entry in parameter_families().items():
        for p in entry["p_values"]:
            out.append((entry["family"], param, p))
    return out


@dataclass(frozen=True)
class SideDescriptor:
    """One side representative [n] a; b, c with its truncation data."""

    braid_length: int
    base_word: words.Word
    b_word: words.Word
    c_word: words.Word
    truncated_for: frozenset
    p_orbit: int
    alt_c_word: words.Word | None = None

    def label(self) -> str:
        return f"[{self.braid_length}] {self.base_word}; {self.b_word}, {self.c_word}"


def sides(param: str) -> list[SideDescriptor]:
    data = _load("sides.json")["families"]
    if param not in data:
        raise CatalogError(f"no side data for parameter {param!r}")
    out = []
    for row in data[param]:
        out.append(SideDescriptor(
            braid_length=row["n"],
            base_word=words.parse(row["a"]),
            b_word=words.parse(row["b"]),
            c_word=words.parse(row["c"]),
            truncated_for=frozenset(row["truncated_for"]),
            p_orbit=row["p_orbit"],
            alt_c_word=words.parse(row["alt_c"]) if "alt_c" in row else None,
        ))
    return out


@dataclass(frozen=True)
class FuchsianSignature:
    """Genus plus multiset of cone orders; math.inf marks cusps."""

    genus: int
    cone_orders: tuple

    def chi(self) -> Fraction:
        total = Fraction(2 - 2 * self.genus)
        for m in self.cone_orders:
            total -= 1 if m == INF else Fraction(m - 1, m)
        return total

    def area_over_pi(self) -> Fraction:
        # mirrors carry the curvature -1 metric, so area = -2*pi*chi
        return -2 * self.chi()

    def is_triangle(self) -> bool:
        return self.genus == 0 and len(self.cone_orders) == 3

    def __str__(self):
        cones = ",".join("inf" if m == INF else str(m) for m in self.cone_orders)
        return f"({self.genus};{cones})"


def _parse_signature(raw) -> FuchsianSignature:
    genus, cones = raw
    return FuchsianSignature(genus, tuple(INF if c == "inf" else c for c in cones))


@dataclass(frozen=True)
class StabilizerRow:
    """One (mirror, p) row of the stabilizer tables."""

    table_id: str
    family: str
    param: str
    p: int
    reflection_word: words.Word
    generator_words: tuple
    fixstab_order: int
    signature: FuchsianSignature
    chi: Fraction
    area_over_pi: Fraction
    field_spec: dict
    arithmetic: str
    braid_pair: tuple | None = None
    alt_reflection_word: words.Word | None = None
    fixstab_report_only: bool = False
    field_report_only: bool = False
    signature_corrected_from: FuchsianSignature | None = None
    notes: str = ""

    @property
    def row_id(self) -> str:
        return f"{self.table_id}/{self.reflection_word}/p={self.p}"


def stabilizer_tables() -> list[dict]:
    return _load("stabilizers.json")["tables"]


def stabilizer_rows(param: str, p: int | None = None) -> list[StabilizerRow]:
    """All stabilizer rows for a parameter, optionally filtered to one p."""
    out = []
    for table in stabilizer_tables():
        if table["param"] != param:
            continue
        for block in table["blocks"]:
            refl = words.parse(block["reflection"])
            gens = tuple(words.parse(w) for w in block["generators"])
            pair = tuple(words.parse(w) for w in block["braid_pair"]) \
                if "braid_pair" in block else None
            alt = words.parse(block["alt_reflection"]) \
                if "alt_reflection" in block else None
            for row in block["rows"]:
                if p is not None and row["p"] != p:
                    continue
                corrected = _parse_signature(row["signature_corrected_from"]) \
                    if "signature_corrected_from" in row else None
                out.append(StabilizerRow(
                    table_id=table["id"],
                    family=table["family"],
                    param=param,
                    p=row["p"],
                    reflection_word=refl,
                    generator_words=gens,
                    fixstab_order=row["fixstab"],
                    signature=_parse_signature(row["signature"]),
                    chi=Fraction(row["chi"]),
                    area_over_pi=Fraction(row["area_over_pi"]),
                    field_spec=row["field"],
                    arithmetic=row["arithmetic"],
                    braid_pair=pair,
                    alt_reflection_word=alt,
                    fixstab_report_only=row.get("fixstab_report_only", False),
                    field_report_only=row.get("field_report_only", False),
                    signature_corrected_from=corrected,
                    notes=row.get("notes", block.get("notes", "")),
                ))
    return out


def table_ids() -> list[str]:
    return [t["id"] for t in stabilizer_tables()]


def table_by_id(table_id: str) -> dict:
    for t in stabilizer_tables():
        if t["id"] == table_id:
            return t
    raise CatalogError(f"unknown table {table_id!r}")


def hybrid_claims() -> list[dict]:
    return _load("hybrids.json")["claims"]
