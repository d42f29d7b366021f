//! Audit: initial charges, rules, conservation, and the claims as predicates.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use super::config::{helpful_faces, ConfigReport, HelpfulFaceReport};
use super::faces::{leaves_of_face, needy_faces, tilde_face_counts, NeedyReport};
use super::rules::apply_scheme;
use super::{
    charge_string, initial_charges, replay, Anomaly, Charge, ChargeLedger, DischargeError, Element, InstanceParams,
    Scheme, Transfer,
};
use crate::planar::{FaceId, PlanarEmbedding, Subgraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PredicateStatus {
    Holds,
    Fails,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Predicate {
    pub name: &'static str,
    pub status: PredicateStatus,
    pub details: Vec<String>,
}

impl Predicate {
    fn from_failures(name: &'static str, checked: usize, failures: Vec<String>) -> Self {
        let status = if checked == 0 {
            PredicateStatus::NotApplicable
        } else if failures.is_empty() {
            PredicateStatus::Holds
        } else {
            PredicateStatus::Fails
        };
        let mut details = failures;
        if details.len() > 20 {
            let rest = details.len() - 20;
            details.truncate(20);
            details.push(format!("... and {rest} more"));
        }
        Predicate { name, status, details }
    }

    fn single(name: &'static str, holds: bool, detail: String) -> Self {
        Predicate {
            name,
            status: if holds {
                PredicateStatus::Holds
            } else {
                PredicateStatus::Fails
            },
            details: vec![detail],
        }
    }

    fn not_applicable(name: &'static str) -> Self {
        Predicate {
            name,
            status: PredicateStatus::NotApplicable,
            details: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub scheme: Scheme,
    pub params: InstanceParams,
    pub initial: ChargeLedger,
    pub final_ledger: ChargeLedger,
    pub log: Vec<Transfer>,
    pub anomalies: Vec<Anomaly>,
    pub euler_total: Charge,
    /// Initial total equals the Euler total.
    pub euler_ok: bool,
    /// Final total equals the initial total.
    pub conservation_ok: bool,
    /// Replaying the log reproduces the final ledger.
    pub replay_ok: bool,
    pub negatives: Vec<(Element, Charge)>,
    pub predicates: Vec<Predicate>,
    pub configs: Vec<ConfigReport>,
    pub helpful: Vec<HelpfulFaceReport>,
    pub needy: Option<NeedyReport>,
    pub tilde: Option<BTreeMap<usize, Vec<FaceId>>>,
}

impl AuditReport {
    /// Euler totals, conservation and replay; the claims are diagnostic.
    pub fn accounting_ok(&self) -> bool {
        self.euler_ok && self.conservation_ok && self.replay_ok
    }

    pub fn predicates_hold(&self) -> bool {
        self.predicates.iter().all(|p| p.status != PredicateStatus::Fails)
    }

    pub fn predicate(&self, name: &str) -> Option<&Predicate> {
        self.predicates.iter().find(|p| p.name == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let negatives: Vec<_> = self
            .negatives
            .iter()
            .map(|(e, c)| json!({"element": e.to_string(), "charge": charge_string(c)}))
            .collect();
        json!({
            "scheme": self.scheme,
            "params": {
                "delta": self.params.delta,
                "t": self.params.t,
                "d": self.params.d,
                "high_threshold": self.params.high_threshold(),
            },
            "totals": {
                "euler": charge_string(&self.euler_total),
                "initial": charge_string(&self.initial.total()),
                "final": charge_string(&self.final_ledger.total()),
            },
            "euler_ok": self.euler_ok,
            "conservation_ok": self.conservation_ok,
            "replay_ok": self.replay_ok,
            "initial": self.initial.to_json(),
            "final": self.final_ledger.to_json(),
            "transfers": self.log,
            "anomalies": self.anomalies,
            "negatives": negatives,
            "predicates": self.predicates,
            "configurations": self.configs,
            "helpful_faces": self.helpful,
            "needy": self.needy,
            "tilde_faces": self.tilde,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = &self.params;
        let _ = writeln!(
            out,
            "scheme {}  Δ={} t={} d={}  high threshold {}",
            self.scheme,
            p.delta,
            p.t,
            p.d,
            p.high_threshold()
        );
        let _ = writeln!(
            out,
            "totals: initial {}  final {}  (Euler {})",
            charge_string(&self.initial.total()),
            charge_string(&self.final_ledger.total()),
            charge_string(&self.euler_total)
        );
        let ok = |b: bool| if b { "ok" } else { "FAILED" };
        let _ = writeln!(
            out,
            "euler {}  conservation {}  replay {}",
            ok(self.euler_ok),
            ok(self.conservation_ok),
            ok(self.replay_ok)
        );
        if !self.configs.is_empty() {
            let _ = writeln!(out, "configurations:");
            for c in &self.configs {
                let kind = if c.poor { "poor" } else { "rich" };
                let shape = c.shape.map_or("-".to_string(), |s| s.to_string());
                let _ = writeln!(
                    out,
                    "  C{} {} {} shape {} s={} helpful {:?}",
                    c.index, c.label, kind, shape, c.score, c.helpful
                );
            }
        }
        let _ = writeln!(out, "transfers ({}):", self.log.len());
        for t in &self.log {
            let _ = writeln!(out, "  {t}");
        }
        for a in &self.anomalies {
            let _ = writeln!(out, "anomaly {} at {}: {}", a.rule, a.element, a.message);
        }
        let _ = writeln!(out, "final charges:");
        for (e, c) in self.final_ledger.elements() {
            let _ = writeln!(out, "  {e} {}", charge_string(&c));
        }
        if self.negatives.is_empty() {
            let _ = writeln!(out, "negative elements: none");
        } else {
            let list: Vec<String> = self
                .negatives
                .iter()
                .map(|(e, c)| format!("{e}={}", charge_string(c)))
                .collect();
            let _ = writeln!(out, "negative elements: {}", list.join(" "));
        }
        let _ = writeln!(out, "predicates:");
        for pr in &self.predicates {
            let status = match pr.status {
                PredicateStatus::Holds => "holds",
                PredicateStatus::Fails => "fails",
                PredicateStatus::NotApplicable => "n/a",
            };
            let _ = writeln!(out, "  {:<24} {status}", pr.name);
            for d in &pr.details {
                let _ = writeln!(out, "      {d}");
            }
        }
        out
    }
}

/// Runs the scheme from fresh initial charges and evaluates its claims.
pub fn audit(
    emb: &PlanarEmbedding,
    h: &Subgraph,
    params: &InstanceParams,
    scheme: Scheme,
) -> Result<AuditReport, DischargeError> {
    let run = apply_scheme(emb, h, params, initial_charges(emb, scheme))?;
    let euler_total = scheme.euler_total();
    let euler_ok = run.initial.total() == euler_total;
    let conservation_ok = run.final_ledger.total() == run.initial.total();
    let replay_ok = replay(&run.initial, &run.log) == run.final_ledger;
    let negatives = run.final_ledger.negatives();

    let mut predicates = Vec::new();
    let mut helpful = Vec::new();
    let mut needy = None;
    let mut tilde = None;
    match scheme {
        Scheme::R => {
            predicates.push(degree_sum(emb, h, params));
            predicates.push(score_bounds(&run.configs));
            helpful = helpful_faces(emb, &run.configs);
            predicates.push(Predicate::from_failures(
                "helpful-face-length",
                helpful.len(),
                helpful
                    .iter()
                    .filter(|r| !r.claim_holds())
                    .map(|r| {
                        format!(
                            "f{}: length {} < {} (x2={}, x3={})",
                            r.face,
                            r.length,
                            r.required_length(),
                            r.x2,
                            r.x3
                        )
                    })
                    .collect(),
            ));
            if params.t <= 2 {
                let small = (0..emb.vertex_count())
                    .filter(|&v| emb.degree(v) == params.t + 1 && !h.contains_vertex(v))
                    .count();
                let top = (0..emb.vertex_count())
                    .filter(|&v| emb.degree(v) == params.delta)
                    .count();
                predicates.push(Predicate::single(
                    "pot-count",
                    small < top,
                    format!("|V_{} \\ V(H)| = {small}, |V_Δ| = {top}", params.t + 1),
                ));
            } else {
                predicates.push(Predicate::not_applicable("pot-count"));
            }
        }
        Scheme::S => {
            let bound = params.d + 5;
            let mid: Vec<String> = (0..emb.vertex_count())
                .filter(|&v| (2..=bound).contains(&emb.degree(v)))
                .map(|v| format!("v{v} has degree {}", emb.degree(v)))
                .collect();
            predicates.push(Predicate::from_failures(
                "middle-degrees-empty",
                emb.vertex_count(),
                mid,
            ));
            let leafy: Vec<String> = (0..emb.vertex_count())
                .filter_map(|v| {
                    let n = emb.rotation(v).iter().filter(|&&u| emb.degree(u) == 1).count();
                    (n > params.d).then(|| format!("v{v} has {n} leaves"))
                })
                .collect();
            predicates.push(Predicate::from_failures("leaves-per-vertex", emb.vertex_count(), leafy));
            let buckets = tilde_face_counts(emb);
            let sparse: Vec<String> = buckets
                .iter()
                .filter(|(&i, _)| i <= 2)
                .flat_map(|(i, fs)| fs.iter().map(move |f| format!("f{f} has {i} vertices of degree >= 3")))
                .collect();
            predicates.push(Predicate::from_failures("sparse-faces-empty", emb.face_count(), sparse));
            tilde = Some(buckets);
        }
        Scheme::T => {
            predicates.push(degree_sum(emb, h, params));
            let report = needy_faces(emb, h, params)?;
            predicates.push(Predicate::from_failures(
                "needy-bound",
                report.vertices.len(),
                report
                    .vertices
                    .iter()
                    .filter(|v| !v.bound_holds())
                    .map(|v| format!("v{}: η = {} > deg/2 = {}/2", v.vertex, v.eta(), v.degree))
                    .collect(),
            ));
            needy = Some(report);
            let mut checked = 0;
            let mut short = Vec::new();
            for f in emb.faces() {
                let x = leaves_of_face(emb, f).len();
                if x >= 1 {
                    checked += 1;
                    if f.len() < x + 4 {
                        short.push(format!("f{}: length {} < {} leaves + 4", f.id, f.len(), x));
                    }
                }
            }
            predicates.push(Predicate::from_failures("leaf-face-length", checked, short));
            if matches!(params.t, 3 | 4) {
                let small = (0..emb.vertex_count())
                    .filter(|&v| (params.t..=4).contains(&emb.degree(v)))
                    .count();
                let low = (params.delta + params.t).saturating_sub(4);
                let top = (0..emb.vertex_count())
                    .filter(|&v| (low..=params.delta).contains(&emb.degree(v)))
                    .count();
                predicates.push(Predicate::single(
                    "pot-count",
                    small < top,
                    format!("|V_[{},4]| = {small}, |V_[{low},{}]| = {top}", params.t, params.delta),
                ));
            } else {
                predicates.push(Predicate::not_applicable("pot-count"));
            }
        }
    }
    let negative_list: Vec<String> = negatives
        .iter()
        .map(|(e, c)| format!("{e} = {}", charge_string(c)))
        .collect();
    predicates.push(Predicate::from_failures("final-charges-nonnegative", 1, negative_list));

    Ok(AuditReport {
        scheme,
        params: *params,
        initial: run.initial,
        final_ledger: run.final_ledger,
        log: run.log,
        anomalies: run.anomalies,
        euler_total,
        euler_ok,
        conservation_ok,
        replay_ok,
        negatives,
        predicates,
        configs: run.configs,
        helpful,
        needy,
        tilde,
    })
}

/// Every uncolored edge `uv` with `u` outside `H` and `2 deg(u) ≤ Δ + t` has
/// `deg(u) + deg(v) ≥ Δ + t`, and every uncolored edge has a high endpoint.
fn degree_sum(emb: &PlanarEmbedding, h: &Subgraph, params: &InstanceParams) -> Predicate {
    let k = params.delta + params.t;
    let mut checked = 0;
    let mut failures = Vec::new();
    for &e in emb.edges().iter().filter(|e| !h.contains_edge(**e)) {
        checked += 1;
        for (u, v) in [(e.u, e.v), (e.v, e.u)] {
            let (du, dv) = (emb.degree(u), emb.degree(v));
            if !h.contains_vertex(u) && 2 * du <= k && du + dv < k {
                failures.push(format!("{e}: deg(v{u}) + deg(v{v}) = {} < {k}", du + dv));
            }
        }
        if !params.is_high(emb.degree(e.u)) && !params.is_high(emb.degree(e.v)) {
            failures.push(format!("{e}: no high endpoint"));
        }
    }
    Predicate::from_failures("degree-sum", checked, failures)
}

pub(super) fn degree_sum_holds(emb: &PlanarEmbedding, h: &Subgraph, params: &InstanceParams) -> bool {
    degree_sum(emb, h, params).status != PredicateStatus::Fails
}

fn score_bounds(configs: &[ConfigReport]) -> Predicate {
    let failures = configs
        .iter()
        .filter(|c| c.score > c.score_bound())
        .map(|c| {
            let kind = if c.poor { "poor" } else { "rich" };
            format!(
                "C{} {} ({kind}): s = {} > {}",
                c.index,
                c.label,
                c.score,
                c.score_bound()
            )
        })
        .collect();
    Predicate::from_failures("score-bound", configs.len(), failures)
}
