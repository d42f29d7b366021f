//! Exact charge accounting for the three discharging systems.
//!
//! Scheme R works with precolored distance-3 cliques and configurations,
//! scheme S with a precolored subgraph of bounded degree, scheme T with a
//! precolored matching. Charges are rationals; every rule is a logged
//! transfer, so the total never changes and the log can be replayed.
//!
//! The claims the paper proves for minimal counterexamples are evaluated as
//! predicates on the given instance and never assumed.

mod audit;
mod census;
mod config;
mod faces;
mod rules;

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::planar::{PlanarEmbedding, ShapeError};

pub use audit::{audit, AuditReport, Predicate, PredicateStatus};
pub use census::{small_configuration_census, CensusEntry, CensusReport, GeneratedInstance};
pub use config::{configurations, helpful_faces, ConfigReport, HelpfulFaceReport, HelpfulStatus, CATALOGUE};
pub use faces::{leaves_of_face, needy_faces, tilde_face_counts, NeedyFace, NeedyReport, VertexNeed};
pub use rules::{apply_scheme, SchemeRun};

pub type Charge = Rational64;

/// Serializes a charge as `"p"` or `"p/q"`.
pub fn charge_string(c: &Charge) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn ser_charge<S: Serializer>(c: &Charge, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&charge_string(c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Scheme {
    R,
    S,
    T,
}

impl Scheme {
    /// Total charge forced by Euler's formula.
    pub fn euler_total(self) -> Charge {
        match self {
            Scheme::R | Scheme::T => Charge::from_integer(-8),
            Scheme::S => Charge::from_integer(-12),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::R => "R",
            Scheme::S => "S",
            Scheme::T => "T",
        })
    }
}

impl FromStr for Scheme {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "R" | "r" => Ok(Scheme::R),
            "S" | "s" => Ok(Scheme::S),
            "T" | "t" => Ok(Scheme::T),
            other => Err(format!("unknown scheme `{other}`, expected R, S or T")),
        }
    }
}

/// `Δ`, the palette offset `t` (`k = Δ + t`) and the degree bound `d` of `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InstanceParams {
    pub delta: usize,
    pub t: usize,
    pub d: usize,
}

impl InstanceParams {
    pub fn new(emb: &PlanarEmbedding, t: usize, d: usize) -> Self {
        InstanceParams {
            delta: emb.max_degree(),
            t,
            d,
        }
    }

    /// `⌈(Δ + t) / 2⌉`.
    pub fn high_threshold(&self) -> usize {
        (self.delta + self.t).div_ceil(2)
    }

    pub fn is_high(&self, degree: usize) -> bool {
        degree >= self.high_threshold()
    }
}

/// Something that holds charge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Vertex(usize),
    Face(usize),
    /// Configuration of the `i`-th precolored clique.
    Config(usize),
    Pot,
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Face(x) => write!(f, "f{x}"),
            Element::Config(i) => write!(f, "C{i}"),
            Element::Pot => f.write_str("pot"),
        }
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeLedger {
    pub scheme: Scheme,
    pub vertices: Vec<Charge>,
    pub faces: Vec<Charge>,
    pub configs: Vec<Charge>,
    pub pot: Charge,
}

impl ChargeLedger {
    pub fn get(&self, el: Element) -> Charge {
        match el {
            Element::Vertex(v) => self.vertices[v],
            Element::Face(f) => self.faces[f],
            Element::Config(i) => self.configs[i],
            Element::Pot => self.pot,
        }
    }

    fn slot(&mut self, el: Element) -> &mut Charge {
        match el {
            Element::Vertex(v) => &mut self.vertices[v],
            Element::Face(f) => &mut self.faces[f],
            Element::Config(i) => &mut self.configs[i],
            Element::Pot => &mut self.pot,
        }
    }

    pub fn apply(&mut self, t: &Transfer) {
        *self.slot(t.from) -= t.amount;
        *self.slot(t.to) += t.amount;
    }

    pub fn total(&self) -> Charge {
        self.elements().map(|(_, c)| c).sum()
    }

    /// Every element with its charge: vertices, faces, configurations, pot.
    pub fn elements(&self) -> impl Iterator<Item = (Element, Charge)> + '_ {
        let vs = self.vertices.iter().enumerate().map(|(i, &c)| (Element::Vertex(i), c));
        let fs = self.faces.iter().enumerate().map(|(i, &c)| (Element::Face(i), c));
        let cs = self.configs.iter().enumerate().map(|(i, &c)| (Element::Config(i), c));
        vs.chain(fs).chain(cs).chain(std::iter::once((Element::Pot, self.pot)))
    }

    pub fn negatives(&self) -> Vec<(Element, Charge)> {
        self.elements().filter(|(_, c)| c.is_negative()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let list = |v: &[Charge]| v.iter().map(charge_string).collect::<Vec<_>>();
        serde_json::json!({
            "scheme": self.scheme,
            "vertices": list(&self.vertices),
            "faces": list(&self.faces),
            "configs": list(&self.configs),
            "pot": charge_string(&self.pot),
            "total": charge_string(&self.total()),
        })
    }
}

/// R and T: vertex `deg - 4`, face `len - 4`. S: vertex `3 deg - 6`, face `-6`.
/// Configurations and the pot start at zero; configuration slots are added
/// when scheme R is applied.
pub fn initial_charges(emb: &PlanarEmbedding, scheme: Scheme) -> ChargeLedger {
    let (vertices, faces) = match scheme {
        Scheme::R | Scheme::T => (
            (0..emb.vertex_count())
                .map(|v| Charge::from_integer(emb.degree(v) as i64 - 4))
                .collect(),
            emb.faces()
                .iter()
                .map(|f| Charge::from_integer(f.len() as i64 - 4))
                .collect(),
        ),
        Scheme::S => (
            (0..emb.vertex_count())
                .map(|v| Charge::from_integer(3 * emb.degree(v) as i64 - 6))
                .collect(),
            vec![Charge::from_integer(-6); emb.face_count()],
        ),
    };
    ChargeLedger {
        scheme,
        vertices,
        faces,
        configs: Vec::new(),
        pot: Charge::zero(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub rule: &'static str,
    pub from: Element,
    pub to: Element,
    #[serde(serialize_with = "ser_charge")]
    pub amount: Charge,
}

impl fmt::Display for Transfer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} -> {} {}",
            self.rule,
            self.from,
            self.to,
            charge_string(&self.amount)
        )
    }
}

/// Applies `log` in order to `initial`.
pub fn replay(initial: &ChargeLedger, log: &[Transfer]) -> ChargeLedger {
    let mut ledger = initial.clone();
    let needed = log
        .iter()
        .flat_map(|t| [t.from, t.to])
        .filter_map(|e| match e {
            Element::Config(i) => Some(i + 1),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    if ledger.configs.len() < needed {
        ledger.configs.resize(needed, Charge::zero());
    }
    for t in log {
        ledger.apply(t);
    }
    ledger
}

/// A rule that could not be applied as stated on this instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Anomaly {
    pub rule: &'static str,
    pub element: Element,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DischargeError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("scheme R needs a set of cliques; component {0:?} is not complete")]
    NotCliques(Vec<usize>),
    #[error("configurations overlap: cliques are at distance {0}, below 3")]
    Overlap(usize),
    #[error("scheme S needs deg_H <= {d}, found {found}")]
    DegreeAboveD { d: usize, found: usize },
    #[error("scheme T needs H of maximum degree at most 1, found {0}")]
    NotMatching(usize),
    #[error("ledger is for scheme {found}, expected {expected}")]
    SchemeMismatch { expected: Scheme, found: Scheme },
    #[error("ledger does not match the embedding")]
    LedgerShape,
}
