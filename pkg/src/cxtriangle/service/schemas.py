"""Pydantic request/response models for the service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class GroupRef(BaseModel):
    family: str = Field(pattern="^[ST]$")
    param: str
    p: int = Field(ge=2)


class FamilyInfo(BaseModel):
    name: str
    family: str
    p_values: list[int]
    display: str
    rho: str
    sigma: str
    tau: str
    notes: str | None = None


class CatalogResponse(BaseModel):
    families: list[FamilyInfo]
    tables: list[str]


class SideInfo(BaseModel):
    label: str
    braid_length: int
    base_word: str
    b_word: str
    c_word: str
    truncated_for: list[int]


class GroupDetail(BaseModel):
    group: GroupRef
    signature: tuple[int, int, int]
    sides: list[SideInfo]
    stabilizer_reflections: list[str]


class ClassifyRequest(BaseModel):
    family: str
    param: str
    p: int
    word: str
    cap: int = 200


class ClassifyResponse(BaseModel):
    kind: str
    order: int | None  # None encodes an infinite order
    mirror_polar: list[str] | None = None
    fixed_point: list[str] | None = None
    multiplier: str | None = None


class BraidRequest(BaseModel):
    family: str
    param: str
    p: int
    word_a: str
    word_b: str
    nmax: int = 16


class BraidResponse(BaseModel):
    braid_length: int | None
    center_kind: str | None = None
    box_norm_sign: int | None = None
    trichotomy_consistent: bool | None = None


class Check(BaseModel):
    check_id: str
    status: str
    details: str = ""


class Report(BaseModel):
    schema_version: int
    table: str | None = None
    group: dict | None = None
    checks: list[Check]
    counts: dict
    timing_ms: int


class StabilizerVerifyRequest(BaseModel):
    family: str
    param: str
    p: int
    reflection: str | None = None  # verify a single mirror block if given
    cap: int = 200


class TraceFieldRequest(BaseModel):
    family: str
    param: str
    p: int
    mirror: str
    maxlen: int = 8
    budget: int = 24000


class TraceFieldResponse(BaseModel):
    conductor: int
    degree: int
    degrees_by_length: list[int]
    stabilized: bool
    exhausted: bool
    sample_count: int
    claim_status: str | None = None
    claim_details: str | None = None


class ReproduceRequest(BaseModel):
    tables: list[str] | None = None
    maxlen: int = 8
    budget: int = 24000
    with_tracefield: bool = True


class PresentationResponse(BaseModel):
    row_id: str
    presentation: str
