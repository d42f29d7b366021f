//! Rules R1-R7, S1-S2 and T1-T4 as logged transfers.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::config::{configurations, ConfigReport, HelpfulStatus};
use super::{Anomaly, Charge, ChargeLedger, DischargeError, Element, InstanceParams, Scheme, Transfer};
use crate::planar::{Edge, PlanarEmbedding, Subgraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeRun {
    /// The ledger the rules started from, with configuration slots added.
    pub initial: ChargeLedger,
    pub final_ledger: ChargeLedger,
    pub log: Vec<Transfer>,
    pub anomalies: Vec<Anomaly>,
    /// Scheme R only.
    pub configs: Vec<ConfigReport>,
}

struct Runner {
    ledger: ChargeLedger,
    log: Vec<Transfer>,
    anomalies: Vec<Anomaly>,
}

impl Runner {
    fn give(&mut self, rule: &'static str, from: Element, to: Element, amount: Charge) {
        if amount.is_zero() {
            return;
        }
        // a negative amount moves charge the other way; log it as such
        let (from, to, amount) = if amount < Charge::from_integer(0) {
            self.flag(rule, to, format!("rule amount {amount} is negative"));
            (to, from, -amount)
        } else {
            (from, to, amount)
        };
        let t = Transfer { rule, from, to, amount };
        self.ledger.apply(&t);
        self.log.push(t);
    }

    fn flag(&mut self, rule: &'static str, element: Element, message: String) {
        self.anomalies.push(Anomaly { rule, element, message });
    }
}

fn int(x: i64) -> Charge {
    Charge::from_integer(x)
}

/// Applies the rules of `ledger.scheme` in order.
pub fn apply_scheme(
    emb: &PlanarEmbedding,
    h: &Subgraph,
    params: &InstanceParams,
    ledger: ChargeLedger,
) -> Result<SchemeRun, DischargeError> {
    h.validate(emb)?;
    if ledger.vertices.len() != emb.vertex_count() || ledger.faces.len() != emb.face_count() {
        return Err(DischargeError::LedgerShape);
    }
    let scheme = ledger.scheme;
    let mut configs = Vec::new();
    let mut initial = ledger;
    match scheme {
        Scheme::R => {
            configs = configurations(emb, h, params)?;
            initial.configs.resize(configs.len(), Charge::zero());
        }
        Scheme::S => {
            if h.max_degree() > params.d {
                return Err(DischargeError::DegreeAboveD {
                    d: params.d,
                    found: h.max_degree(),
                });
            }
        }
        Scheme::T => {
            if h.max_degree() > 1 {
                return Err(DischargeError::NotMatching(h.max_degree()));
            }
        }
    }
    let mut run = Runner {
        ledger: initial.clone(),
        log: Vec::new(),
        anomalies: Vec::new(),
    };
    match scheme {
        Scheme::R => rules_r(emb, h, params, &configs, &mut run),
        Scheme::S => rules_s(emb, &mut run),
        Scheme::T => rules_t(emb, params, &mut run),
    }
    Ok(SchemeRun {
        initial,
        final_ledger: run.ledger,
        log: run.log,
        anomalies: run.anomalies,
        configs,
    })
}

fn rules_r(emb: &PlanarEmbedding, h: &Subgraph, params: &InstanceParams, configs: &[ConfigReport], run: &mut Runner) {
    let is_high = |v: usize| params.is_high(emb.degree(v));
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for c in configs {
        for &v in &c.clique {
            owner.insert(v, c.index);
        }
    }
    let edge_owner = |e: Edge| owner.get(&e.u).copied().filter(|_| h.contains_edge(e));

    for c in configs.iter().filter(|c| !c.poor) {
        for &v in &c.high_vertices {
            run.give(
                "R1",
                Element::Vertex(v),
                Element::Config(c.index),
                Charge::new(c.score, 2),
            );
        }
    }
    for c in configs.iter().filter(|c| c.poor && c.size() >= 2) {
        let (from_face, from_vertex) = if c.size() == 2 {
            (1, c.score - 1)
        } else {
            (2, c.score - 2)
        };
        let me = Element::Config(c.index);
        match &c.helpful {
            HelpfulStatus::Face { face } => run.give("R2", Element::Face(*face), me, int(from_face)),
            other => run.flag("R2", me, format!("no helpful face ({other:?})")),
        }
        match c.high_vertices.as_slice() {
            [v] => run.give("R2", Element::Vertex(*v), me, int(from_vertex)),
            _ => run.flag("R2", me, "no high vertex".into()),
        }
    }
    for &v in h.vertices() {
        let d = emb.degree(v);
        if (1..=3).contains(&d) {
            run.give("R3", Element::Config(owner[&v]), Element::Vertex(v), int(4 - d as i64));
        }
    }
    let triangles: Vec<_> = emb.faces().iter().filter(|f| f.len() == 3).collect();
    for f in &triangles {
        if let Some(i) = f.edges().find_map(edge_owner) {
            run.give("R4", Element::Config(i), Element::Face(f.id), int(1));
        }
    }
    for f in &triangles {
        if f.edges().all(|e| !h.contains_edge(e)) {
            for v in f.distinct_vertices().into_iter().filter(|&v| is_high(v)) {
                run.give("R5", Element::Vertex(v), Element::Face(f.id), Charge::new(1, 2));
            }
        }
    }
    let t = params.t as i64;
    if params.t <= 2 {
        for v in (0..emb.vertex_count()).filter(|&v| emb.degree(v) == params.delta) {
            run.give("R6", Element::Vertex(v), Element::Pot, int(3 - t));
        }
        for v in (0..emb.vertex_count()).filter(|&v| emb.degree(v) == params.t + 1 && !h.contains_vertex(v)) {
            run.give("R6", Element::Pot, Element::Vertex(v), int(4 - emb.degree(v) as i64));
        }
    }
    if params.t == 1 {
        for v in (0..emb.vertex_count()).filter(|&v| emb.degree(v) == 3 && !h.contains_vertex(v)) {
            for &u in emb.rotation(v) {
                run.give("R7", Element::Vertex(u), Element::Vertex(v), Charge::new(1, 3));
            }
        }
    }
}

fn rules_s(emb: &PlanarEmbedding, run: &mut Runner) {
    for f in emb.faces() {
        let rich: Vec<usize> = f
            .distinct_vertices()
            .into_iter()
            .filter(|&v| emb.degree(v) >= 3)
            .collect();
        if rich.is_empty() {
            run.flag(
                "S1",
                Element::Face(f.id),
                "no incident vertex of degree at least 3".into(),
            );
            continue;
        }
        let share = Charge::new(6, rich.len() as i64);
        for v in rich {
            run.give("S1", Element::Vertex(v), Element::Face(f.id), share);
        }
    }
    for v in (0..emb.vertex_count()).filter(|&v| emb.degree(v) == 1) {
        run.give("S2", Element::Vertex(emb.rotation(v)[0]), Element::Vertex(v), int(3));
    }
}

fn rules_t(emb: &PlanarEmbedding, params: &InstanceParams, run: &mut Runner) {
    let is_high = |v: usize| params.is_high(emb.degree(v));
    let leaves: Vec<usize> = (0..emb.vertex_count()).filter(|&v| emb.degree(v) == 1).collect();
    let face_of_leaf = |u: usize| emb.face_of_dart(emb.dart(u, emb.rotation(u)[0]).expect("leaf dart"));

    for &u in leaves.iter().filter(|&&u| is_high(emb.rotation(u)[0])) {
        let w = emb.rotation(u)[0];
        run.give("T1", Element::Face(face_of_leaf(u)), Element::Vertex(u), int(1));
        run.give("T1", Element::Vertex(w), Element::Vertex(u), int(2));
    }
    for &u in leaves.iter().filter(|&&u| !is_high(emb.rotation(u)[0])) {
        let w = emb.rotation(u)[0];
        let fid = face_of_leaf(u);
        run.give("T2", Element::Face(fid), Element::Vertex(u), int(1));
        run.give("T2", Element::Vertex(w), Element::Vertex(u), int(1));
        // walk ... x -> w -> u -> w -> y ...
        let f = emb.face(fid);
        let n = f.walk.len();
        let i = (0..n).find(|&i| f.walk[i] == u).expect("leaf on its face");
        let x = f.walk[(i + n - 2) % n];
        let y = f.walk[(i + 2) % n];
        if x == u || y == u {
            run.flag("T2", Element::Vertex(u), "leaf has no second neighbors".into());
        } else if x == y {
            run.flag(
                "T2",
                Element::Vertex(u),
                format!("second neighbors coincide at v{x}, which pays 1"),
            );
            run.give("T2", Element::Vertex(x), Element::Vertex(u), int(1));
        } else {
            run.give("T2", Element::Vertex(x), Element::Vertex(u), Charge::new(1, 2));
            run.give("T2", Element::Vertex(y), Element::Vertex(u), Charge::new(1, 2));
        }
    }
    for f in emb.faces().iter().filter(|f| f.len() == 3) {
        let highs: Vec<usize> = f.distinct_vertices().into_iter().filter(|&v| is_high(v)).collect();
        if highs.is_empty() {
            run.flag("T3", Element::Face(f.id), "3-face without a high vertex".into());
            continue;
        }
        let share = Charge::new(1, highs.len() as i64);
        for v in highs {
            run.give("T3", Element::Vertex(v), Element::Face(f.id), share);
        }
    }
    if matches!(params.t, 3 | 4) {
        let (t, delta) = (params.t, params.delta);
        for v in (0..emb.vertex_count()).filter(|&v| (t..=4).contains(&emb.degree(v))) {
            run.give("T4", Element::Pot, Element::Vertex(v), int(2));
        }
        let low = (delta + t).saturating_sub(4);
        for v in (0..emb.vertex_count()).filter(|&v| (low..=delta).contains(&emb.degree(v))) {
            run.give("T4", Element::Vertex(v), Element::Pot, int(2));
        }
    }
}
