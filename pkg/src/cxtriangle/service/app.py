"""FastAPI front end for the verification engine.

All computation is exact and CPU-bound; endpoints are synchronous and the
engine itself is stateless, so the app can serve many clients at once.
"""

from __future__ import annotations

import math

from fastapi import FastAPI, HTTPException

from .. import catalog, classify, report, stabilizer, tracefield
from ..errors import CatalogError, CxTriangleError, WordSyntaxError
from . import schemas

app = FastAPI(
    title="cxtriangle",
    description="Exact verification of lattice complex hyperbolic triangle "
                "groups and their mirror stabilizers",
    version="0.1.0",
)


def _group(family: str, param: str, p: int) -> catalog.GroupInstance:
    try:
        return catalog.build(family, param, p)
    except CatalogError as exc:
        raise HTTPException(status_code=404, detail=str(exc))


def _wrap(fn):
    try:
        return fn()
    except WordSyntaxError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    except CxTriangleError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


@app.get("/health")
def health():
    return {"status": "ok"}


@app.get("/catalog", response_model=schemas.CatalogResponse)
def get_catalog():
    fams = []
    for name, entry in catalog.parameter_families().items():
        fams.append(schemas.FamilyInfo(
            name=name, family=entry["family"], p_values=entry["p_values"],
            display=entry["display"], rho=entry["rho"], sigma=entry["sigma"],
            tau=entry["tau"], notes=entry.get("notes")))
    return schemas.CatalogResponse(families=fams, tables=catalog.table_ids())


@app.get("/catalog/{family}/{param}/{p}", response_model=schemas.GroupDetail)
def get_group(family: str, param: str, p: int):
    g = _group(family, param, p)
    sides = [schemas.SideInfo(
        label=s.label(), braid_length=s.braid_length, base_word=str(s.base_word),
        b_word=str(s.b_word), c_word=str(s.c_word),
        truncated_for=sorted(s.truncated_for)) for s in catalog.sides(param)]
    refls = sorted({str(r.reflection_word) for r in catalog.stabilizer_rows(param, p)})
    return schemas.GroupDetail(
        group=schemas.GroupRef(family=family, param=param, p=p),
        signature=g.form.signature, sides=sides, stabilizer_reflections=refls)


@app.post("/classify", response_model=schemas.ClassifyResponse)
def post_classify(req: schemas.ClassifyRequest):
    g = _group(req.family, req.param, req.p)

    def run():
        m = g.evaluate(req.word)
        cls = classify.classify(m, g.form, cap=req.cap)
        return schemas.ClassifyResponse(
            kind=cls.kind,
            order=None if cls.order == math.inf else int(cls.order),
            mirror_polar=[str(x) for x in cls.mirror_polar.entries]
            if cls.mirror_polar else None,
            fixed_point=[str(x) for x in cls.fixed_point.entries]
            if cls.fixed_point else None,
            multiplier=str(cls.multiplier) if cls.multiplier else None)

    return _wrap(run)


@app.post("/braid", response_model=schemas.BraidResponse)
def post_braid(req: schemas.BraidRequest):
    g = _group(req.family, req.param, req.p)

    def run():
        a = g.evaluate(req.word_a)
        b = g.evaluate(req.word_b)
        n = classify.braids(a, b, nmax=req.nmax)
        if n is None:
            return schemas.BraidResponse(braid_length=None)
        try:
            _, cz, sign, consistent = classify.center_element(a, b, n, g.form)
            return schemas.BraidResponse(braid_length=n, center_kind=cz.kind,
                                         box_norm_sign=sign,
                                         trichotomy_consistent=consistent)
        except CxTriangleError:
            return schemas.BraidResponse(braid_length=n)

    return _wrap(run)


@app.post("/stabilizer/verify", response_model=schemas.Report)
def post_stabilizer_verify(req: schemas.StabilizerVerifyRequest):
    g = _group(req.family, req.param, req.p)

    def run():
        import time
        t0 = time.time()
        rows = catalog.stabilizer_rows(req.param, req.p)
        if req.reflection is not None:
            rows = [r for r in rows if str(r.reflection_word) == req.reflection]
            if not rows:
                raise CatalogError(f"no stabilizer row for reflection {req.reflection!r}")
        checks = []
        for row in rows:
            rep = stabilizer.signature_report(row, g, cap=req.cap)
            checks.extend(schemas.Check(check_id=c.check_id, status=c.status,
                                        details=c.details) for c in rep.checks)
        checks.sort(key=lambda c: c.check_id)
        counts = {"pass": sum(1 for c in checks if c.status == "pass"),
                  "fail": sum(1 for c in checks if c.status == "fail"),
                  "unverified": sum(1 for c in checks if c.status == "unverified")}
        return schemas.Report(schema_version=report.SCHEMA_VERSION,
                              group={"family": req.family, "param": req.param,
                                     "p": req.p},
                              checks=checks, counts=counts,
                              timing_ms=int((time.time() - t0) * 1000))

    return _wrap(run)


@app.post("/tracefield", response_model=schemas.TraceFieldResponse)
def post_tracefield(req: schemas.TraceFieldRequest):
    g = _group(req.family, req.param, req.p)

    def run():
        rows = [r for r in catalog.stabilizer_rows(req.param, req.p)
                if str(r.reflection_word) == req.mirror]
        if not rows:
            raise CatalogError(f"no stabilizer row for mirror {req.mirror!r}")
        row = rows[0]
        res = tracefield.trace_field(g, row, max_len=req.maxlen, budget=req.budget)
        status, details = tracefield.match_field_claim(res, row.field_spec)
        return schemas.TraceFieldResponse(
            conductor=res.field.conductor, degree=res.field.degree,
            degrees_by_length=res.degrees_by_length, stabilized=res.stabilized,
            exhausted=res.exhausted, sample_count=len(res.samples),
            claim_status=status, claim_details=details)

    return _wrap(run)


@app.post("/presentation", response_model=schemas.PresentationResponse)
def post_presentation(req: schemas.StabilizerVerifyRequest):
    g = _group(req.family, req.param, req.p)

    def run():
        rows = [r for r in catalog.stabilizer_rows(req.param, req.p)
                if req.reflection is None or str(r.reflection_word) == req.reflection]
        if not rows:
            raise CatalogError("no matching stabilizer row")
        row = rows[0]
        return schemas.PresentationResponse(
            row_id=row.row_id,
            presentation=stabilizer.presentation_emit(row, g, cap=req.cap))

    return _wrap(run)


@app.post("/tables/{table_id}", response_model=schemas.Report)
def post_table(table_id: str, req: schemas.ReproduceRequest):
    if table_id not in catalog.table_ids():
        raise HTTPException(status_code=404, detail=f"unknown table {table_id!r}")
    return _wrap(lambda: report.table_report(
        table_id, maxlen=req.maxlen, budget=req.budget,
        with_tracefield=req.with_tracefield))


@app.post("/reproduce-tables", response_model=list[schemas.Report])
def post_reproduce(req: schemas.ReproduceRequest):
    ids = req.tables or catalog.table_ids()
    for t in ids:
        if t not in catalog.table_ids():
            raise HTTPException(status_code=404, detail=f"unknown table {t!r}")
    return _wrap(lambda: report.reproduce_tables(
        ids, maxlen=req.maxlen, budget=req.budget,
        with_tracefield=req.with_tracefield))


@app.post("/forms/check", response_model=schemas.Report)
def post_form_check(req: schemas.GroupRef):
    return _wrap(lambda: report.form_report(req.family, req.param, req.p))


@app.post("/braids/check", response_model=schemas.Report)
def post_braid_check(req: schemas.GroupRef):
    return _wrap(lambda: report.braid_report(req.family, req.param, req.p))


@app.post("/hybrids/check", response_model=schemas.Report)
def post_hybrids_check():
    return _wrap(report.hybrids_report)
