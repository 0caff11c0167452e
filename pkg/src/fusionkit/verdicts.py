"""Per-group theorem verdicts, proof traces and corpus scans."""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields

from .errors import ElementCapExceeded, FusionKitError, NotStronglyClosed
from .fusion import (
    GroupFusionSystem,
    camina_herzog,
    center_product_decomposition,
    controls_fusion,
    extension_witness_total,
    hypothesis_H,
    is_strongly_closed,
    omega1_in_center,
    star_condition,
    step1_normalizer_equals_centralizer,
    step2_omega1_elementary,
)
from .groups import (
    NONABELIAN,
    PermGroup,
    classify_commutativity,
    normalizer,
    p_part,
    subgroup_generated,
)
from .perm import conjugate_element, parse_cycles

SCHEMA_VERSION = 1

TRACE_ROWS = (
    "step1_normalizer_equals_centralizer",
    "step2_omega1_elementary",
    "strongly_closed_omega1",
    "star_condition",
    "center_product_decomposition",
    "extension_witness_total",
    "omega1_in_center",
    "controls_fusion_by_normalizer_of_omega1",
)

HOLDS, FAILS, SKIPPED = "holds", "fails", "skipped"


@dataclass
class TraceRow:
    name: str
    status: str
    witness: str = ""
    note: str = ""


@dataclass
class CheckReport:
    group: str
    degree: int
    order: int
    prime: int
    mode: str
    status: str = "checked"
    skip_reason: str | None = None
    sylow_order: int = 1
    sylow_generators: list = field(default_factory=list)
    center_generators: list = field(default_factory=list)
    omega1_generators: list = field(default_factory=list)
    hypothesis_H: bool | None = None
    camina_herzog: bool | None = None
    sylow_classification: str | None = None
    proof_steps: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    counterwitnesses: dict = field(default_factory=dict)
    anomalies: list = field(default_factory=list)
    consistent_with_theorem: bool = True
    elapsed_ms: float | None = None

    @property
    def skipped(self):
        return self.status == SKIPPED

    @property
    def is_counterexample(self):
        return (self.prime == 2 and not self.skipped and bool(self.hypothesis_H)
                and self.sylow_classification == NONABELIAN)

    def to_dict(self, timing=True):
        d = asdict(self)
        if not timing:
            d.pop("elapsed_ms")
        return d

    @classmethod
    def from_dict(cls, d):
        names = {f.name for f in fields(cls)}
        kw = {k: v for k, v in d.items() if k in names}
        kw["trace"] = [r if isinstance(r, dict) else asdict(r) for r in kw.get("trace", [])]
        return cls(**kw)


def _s(x):
    return str(x)


def _gens(H):
    return [str(g) for g in H.generators if not g.is_identity()] or ["()"]


def _witness_dict(kind, w, extra=None):
    d = {"kind": kind, "source": _s(w.source), "conjugator": _s(w.conjugator),
         "image": _s(w.image), "target_generators": _gens(w.target)}
    if extra:
        d.update(extra)
    return d


def _row_from(name, verdict, informational, render):
    status = HOLDS if verdict.holds else FAILS
    witness = "" if verdict.holds else render(verdict)
    note = "informational: hypothesis false" if informational and not verdict.holds else ""
    return TraceRow(name, status, witness, note)


def _first(items, fmt, limit=4):
    shown = [fmt(i) for i in items[:limit]]
    more = len(items) - limit
    return "; ".join(shown) + (f"; ... (+{more})" if more > 0 else "")


def _run_trace(F, hyp_holds):
    """Evaluate every proof row: (rows, counterwitnesses, serialized witnesses)."""
    info_only = not hyp_holds
    rows = []
    counter = {}
    witnesses = []

    st1 = step1_normalizer_equals_centralizer(F)
    rows.append(_row_from(TRACE_ROWS[0], st1, info_only,
                          lambda v: _first(v.failures, lambda f: f"{f[0]}: |N|={f[1]} |C|={f[2]}")))
    if st1.failures:
        counter[TRACE_ROWS[0]] = [[_s(x), n, c] for x, n, c in st1.failures]

    st2 = step2_omega1_elementary(F)
    cls = st2.info["classification"]
    rows.append(_row_from(TRACE_ROWS[1], st2, info_only,
                          lambda v: f"Omega_1(S) {cls} of order {v.info['omega1_order']}"
                          + ("; noncommuting " + " ".join(map(str, v.failures[0]))
                             if v.failures else "")))
    if st2.failures:
        counter[TRACE_ROWS[1]] = [[_s(a), _s(b)] for a, b in st2.failures]

    sc = is_strongly_closed(F, F.U)
    rows.append(_row_from(TRACE_ROWS[2], sc, info_only,
                          lambda v: _first(v.failures, lambda w: f"{w.source}^{w.conjugator}={w.image}")))
    for w in sc.failures:
        witnesses.append(_witness_dict("strong_closure_counter", w,
                                       {"outside_generators": _gens(F.U)}))

    try:
        star = star_condition(F)
    except NotStronglyClosed as exc:
        rows.append(TraceRow(TRACE_ROWS[3], SKIPPED, "", str(exc)))
    else:
        rows.append(_row_from(TRACE_ROWS[3], star, info_only,
                              lambda v: "no conjugate into Z(S)U: " + _first(v.failures, _s)))
        for w in star.witnesses:
            witnesses.append(_witness_dict("star_condition", w))
        if star.failures:
            counter[TRACE_ROWS[3]] = [_s(x) for x in star.failures]

    cpd = center_product_decomposition(F)
    rows.append(_row_from(TRACE_ROWS[4], cpd, info_only,
                          lambda v: f"|Z(S)U|={v.info['product_size']} < |S|={F.S.order()}"))

    ext = extension_witness_total(F)
    rows.append(_row_from(TRACE_ROWS[5], ext, info_only,
                          lambda v: "no extension witness for " + _first(v.failures, _s)))
    for w in ext.witnesses:
        N = normalizer(F.S, subgroup_generated(F.S, [w.source]))
        witnesses.append(_witness_dict("extension", w, {"carried_generators": _gens(N)}))
    if ext.failures:
        counter[TRACE_ROWS[5]] = [_s(x) for x in ext.failures]

    oc = omega1_in_center(F)
    rows.append(_row_from(TRACE_ROWS[6], oc, info_only,
                          lambda v: _first(v.failures, lambda f: f"{f[0]} vs {f[1]}")))
    if oc.failures:
        counter[TRACE_ROWS[6]] = [[_s(u), _s(s)] for u, s in oc.failures]

    ctl = controls_fusion(F, normalizer(F.G, F.U))

    def _ctl(v):
        f = v.failures[0]
        if f[0] == "element":
            return f"{f[1]} ~G {f[2]} via {f[3]} but not in N_G(Omega_1(S))"
        return f"c_{f[2]} on <{', '.join(map(str, f[1].generators))}> not realized"

    rows.append(_row_from(TRACE_ROWS[7], ctl, info_only, _ctl))
    return rows, counter, witnesses


def proof_trace(G, p=2):
    """Trace rows for every proof sub-claim, as a list of TraceRow."""
    F = GroupFusionSystem(G, p)
    hyp = hypothesis_H(F)
    rows, _, _ = _run_trace(F, hyp.holds)
    return rows


def theorem_verdict(G, p=2, name="G"):
    """Full CheckReport for (G, p); cap overflow yields a skipped report."""
    t0 = time.perf_counter()
    mode = "theorem" if p == 2 else "exploratory"
    report = CheckReport(name, G.degree, 0, p, mode)
    try:
        report.order = G.order()
        F = GroupFusionSystem(G, p)
        hyp = hypothesis_H(F)
        ch = camina_herzog(G, p)
        report.sylow_order = F.S.order()
        report.sylow_generators = _gens(F.S)
        report.center_generators = _gens(F.Z)
        report.omega1_generators = _gens(F.U)
        report.hypothesis_H = hyp.holds
        report.camina_herzog = ch.holds
        report.sylow_classification = classify_commutativity(F.S, p)
        rows, counter, witnesses = _run_trace(F, hyp.holds)
    except ElementCapExceeded as exc:
        report.status = SKIPPED
        report.skip_reason = str(exc)
        report.elapsed_ms = round((time.perf_counter() - t0) * 1000, 3)
        return report
    report.trace = [asdict(r) for r in rows]
    report.proof_steps = {r.name: (None if r.status == SKIPPED else r.status == HOLDS)
                          for r in rows}
    report.witnesses = [_witness_dict("hypothesis_H", w) for w in hyp.witnesses] + witnesses
    if hyp.failures:
        counter["hypothesis_H"] = [_s(x) for x in hyp.failures]
    if ch.failures:
        counter["camina_herzog"] = [[_s(x), i] for x, i in ch.failures]
    report.counterwitnesses = counter
    if report.sylow_order != p_part(report.order, p):
        report.anomalies.append("sylow order is not the p-part of the group order")
    if hyp.holds != ch.holds:
        report.anomalies.append("hypothesis_H and camina_herzog disagree")
    if p == 2 and hyp.holds:
        bad = [r.name for r in rows if r.status != HOLDS]
        if bad:
            report.anomalies.append("proof rows fail under the hypothesis: " + ", ".join(bad))
    report.consistent_with_theorem = not report.is_counterexample
    report.elapsed_ms = round((time.perf_counter() - t0) * 1000, 3)
    return report


# -- witness re-validation --------------------------------------------------

def validate_witness(w, degree, sylow_generators=None):
    """Re-check a serialized witness from its cycle strings."""
    x = parse_cycles(w["source"], degree)
    g = parse_cycles(w["conjugator"], degree)
    y = parse_cycles(w["image"], degree)
    if conjugate_element(x, g) != y:
        return False
    target = PermGroup([parse_cycles(s, degree) for s in w["target_generators"]],
                       backend="chain")
    if not target.is_member(y):
        return False
    if w["kind"] == "strong_closure_counter":
        U = PermGroup([parse_cycles(s, degree) for s in w["outside_generators"]],
                      backend="chain")
        if U.is_member(y) or not U.is_member(x):
            return False
    if w["kind"] == "extension":
        if sylow_generators is None:
            raise FusionKitError("extension witnesses need the Sylow generators")
        S = PermGroup([parse_cycles(s, degree) for s in sylow_generators], backend="chain")
        for s in w["carried_generators"]:
            if not S.is_member(conjugate_element(parse_cycles(s, degree), g)):
                return False
    return True


def validate_report_witnesses(report):
    """(valid, total) over all serialized witnesses of a report."""
    if isinstance(report, CheckReport):
        report = report.to_dict()
    ok = 0
    ws = report.get("witnesses", [])
    for w in ws:
        ok += validate_witness(w, report["degree"], report["sylow_generators"])
    return ok, len(ws)


# -- corpus scans ------------------------------------------------------------

@dataclass
class ScanSummary:
    corpus_size: int
    per_prime: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    anomalies: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    def to_dict(self):
        return asdict(self)


def _job(args):
    spec, p, backend, cap = args
    try:
        G = spec.build(backend=backend, cap=cap)
        report = theorem_verdict(G, p, name=spec.name)
    except ElementCapExceeded as exc:
        report = CheckReport(spec.name, spec.degree, 0, p,
                             "theorem" if p == 2 else "exploratory",
                             status=SKIPPED, skip_reason=str(exc))
    return report


def _plan(corpus, primes, backend, cap):
    jobs, skips = [], []
    for spec in corpus:
        try:
            order = spec.build(backend="chain", cap=cap).order()
            if cap is not None and order > cap:
                raise ElementCapExceeded(cap)
        except ElementCapExceeded as exc:
            for p in primes:
                skips.append(CheckReport(spec.name, spec.degree, 0, p,
                                         "theorem" if p == 2 else "exploratory",
                                         status=SKIPPED, skip_reason=str(exc)))
            continue
        except FusionKitError as exc:
            for p in primes:
                skips.append(CheckReport(spec.name, spec.degree, 0, p,
                                         "theorem" if p == 2 else "exploratory",
                                         status=SKIPPED, skip_reason=f"build failed: {exc}"))
            continue
        for p in primes:
            if order % p == 0:
                jobs.append((spec, p, backend, cap))
    return jobs, skips


def scan_corpus(corpus, primes=(2,), parallelism=1, backend="oracle", cap=None):
    """Check every (group, prime) with the prime dividing the group order.

    Returns ``(ScanSummary, reports)``; reports are sorted by
    (order, name, prime) whatever the parallelism.
    """
    if parallelism < 1:
        raise FusionKitError("parallelism must be at least 1")
    primes = sorted(set(primes))
    jobs, reports = _plan(corpus, primes, backend, cap)
    if parallelism == 1 or len(jobs) <= 1:
        reports += [_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=parallelism) as ex:
            reports += list(ex.map(_job, jobs))
    reports.sort(key=lambda r: (r.order, r.group, r.prime))
    summary = ScanSummary(len(corpus))
    for p in primes:
        rs = [r for r in reports if r.prime == p]
        checked = [r for r in rs if not r.skipped]
        summary.per_prime[str(p)] = {
            "mode": "theorem" if p == 2 else "exploratory",
            "reports": len(rs),
            "skipped": len(rs) - len(checked),
            "hypothesis_true": sum(bool(r.hypothesis_H) for r in checked),
            "abelian_sylow": sum(r.sylow_classification != NONABELIAN for r in checked),
            "counterexamples": sum(r.is_counterexample for r in checked),
        }
    summary.counterexamples = [[r.group, r.prime] for r in reports if r.is_counterexample]
    summary.anomalies = [[r.group, r.prime, a] for r in reports for a in r.anomalies]
    summary.skipped = [[r.group, r.prime, r.skip_reason] for r in reports if r.skipped]
    return summary, reports


def report_document(summary, reports):
    """The report-file JSON object (no timings, so it is reproducible)."""
    return {
        "schema_version": SCHEMA_VERSION,
        "summary": summary.to_dict(),
        "reports": [r.to_dict(timing=False) for r in reports],
    }
