//! Directed weighted graphs with per-qubit preparation angles.
//!
//! A [`GraphStateSpec`] fully describes the state obtained by preparing every
//! qubit `k` as `RZ(alpha_k) RY(theta_k) |0>` and then applying one
//! `RXX(phi_ij)` per arc `i -> j`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::angle::parse_angle;
use crate::error::{Error, Result};

/// Directed arc `from -> to` carrying an RXX rotation angle in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub weight: f64,
}

impl Arc {
    pub fn new(from: usize, to: usize, weight: f64) -> Self {
        Self { from, to, weight }
    }
}

/// Preparation angles of one qubit: `cos(theta/2)|0> + e^{i alpha} sin(theta/2)|1>`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QubitPrep {
    pub alpha: f64,
    pub theta: f64,
}

impl QubitPrep {
    pub fn new(alpha: f64, theta: f64) -> Self {
        Self { alpha, theta }
    }

    /// `cos(alpha) sin(theta)`, the x-component of the qubit's Bloch vector.
    pub fn x_projection(&self) -> f64 {
        self.alpha.cos() * self.theta.sin()
    }
}

/// Validated graph plus preparation angles.
///
/// Arcs are kept normalized: parallel arcs with the same direction are merged
/// by summing their weights and the list is sorted by `(from, to)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphStateSpec {
    num_qubits: usize,
    arcs: Vec<Arc>,
    preps: Vec<QubitPrep>,
}

impl GraphStateSpec {
    pub fn new(num_qubits: usize, arcs: Vec<Arc>, preps: Vec<QubitPrep>) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::NoQubits);
        }
        if preps.len() != num_qubits {
            return Err(Error::PrepCount {
                expected: num_qubits,
                found: preps.len(),
            });
        }
        for (k, p) in preps.iter().enumerate() {
            if !p.alpha.is_finite() || !p.theta.is_finite() {
                return Err(Error::InvalidAngle(format!(
                    "non-finite preparation of qubit {k}"
                )));
            }
        }
        let mut merged: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for arc in arcs {
            check_arc(&arc, num_qubits)?;
            *merged.entry((arc.from, arc.to)).or_insert(0.0) += arc.weight;
        }
        let arcs = merged
            .into_iter()
            .map(|((from, to), weight)| Arc { from, to, weight })
            .collect();
        Ok(Self {
            num_qubits,
            arcs,
            preps,
        })
    }

    /// Graph with no arcs and every qubit prepared in `|0>`.
    pub fn empty(num_qubits: usize) -> Result<Self> {
        Self::new(
            num_qubits,
            Vec::new(),
            vec![QubitPrep::default(); num_qubits],
        )
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn preps(&self) -> &[QubitPrep] {
        &self.preps
    }

    pub fn prep(&self, k: usize) -> Result<QubitPrep> {
        self.check_vertex(k)?;
        Ok(self.preps[k])
    }

    pub fn arc_weight(&self, from: usize, to: usize) -> Option<f64> {
        self.arcs
            .binary_search_by(|a| (a.from, a.to).cmp(&(from, to)))
            .ok()
            .map(|i| self.arcs[i].weight)
    }

    /// Sets the weight of arc `from -> to`, inserting the arc if absent.
    pub fn set_arc_weight(&mut self, from: usize, to: usize, weight: f64) -> Result<()> {
        let arc = Arc { from, to, weight };
        check_arc(&arc, self.num_qubits)?;
        match self
            .arcs
            .binary_search_by(|a| (a.from, a.to).cmp(&(from, to)))
        {
            Ok(i) => self.arcs[i].weight = weight,
            Err(i) => self.arcs.insert(i, arc),
        }
        Ok(())
    }

    pub fn set_prep(&mut self, k: usize, prep: QubitPrep) -> Result<()> {
        self.check_vertex(k)?;
        if !prep.alpha.is_finite() || !prep.theta.is_finite() {
            return Err(Error::InvalidAngle(format!(
                "non-finite preparation of qubit {k}"
            )));
        }
        self.preps[k] = prep;
        Ok(())
    }

    pub fn prep_mut(&mut self, k: usize) -> Result<&mut QubitPrep> {
        self.check_vertex(k)?;
        Ok(&mut self.preps[k])
    }

    pub fn check_vertex(&self, k: usize) -> Result<()> {
        if k < self.num_qubits {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: k,
                num_qubits: self.num_qubits,
            })
        }
    }

    /// Splits the neighbours of `k` into ingoing-only, outgoing-only and
    /// bidirected sets.
    pub fn classify_neighbors(&self, k: usize) -> Result<NeighborClassification> {
        self.check_vertex(k)?;
        let mut incoming: BTreeMap<usize, f64> = BTreeMap::new();
        let mut outgoing: BTreeMap<usize, f64> = BTreeMap::new();
        for arc in &self.arcs {
            if arc.to == k {
                incoming.insert(arc.from, arc.weight);
            } else if arc.from == k {
                outgoing.insert(arc.to, arc.weight);
            }
        }

        let mut out = NeighborClassification::default();
        for (&m, &w_in) in &incoming {
            match outgoing.remove(&m) {
                Some(w_out) => out.bidirected.push(Bidirected {
                    vertex: m,
                    weight_in: w_in,
                    weight_out: w_out,
                }),
                None => out.ingoing.push(Neighbor {
                    vertex: m,
                    weight: w_in,
                }),
            }
        }
        out.outgoing = outgoing
            .into_iter()
            .map(|(vertex, weight)| Neighbor { vertex, weight })
            .collect();
        Ok(out)
    }

    /// `(indegree, outdegree)` of vertex `k`.
    pub fn degrees(&self, k: usize) -> Result<(usize, usize)> {
        self.check_vertex(k)?;
        let indegree = self.arcs.iter().filter(|a| a.to == k).count();
        let outdegree = self.arcs.iter().filter(|a| a.from == k).count();
        Ok((indegree, outdegree))
    }

    /// Parses the line-oriented graph format:
    ///
    /// ```text
    /// qubits <V>
    /// prep <k> <alpha> <theta>
    /// arc <i> <j> <phi>
    /// ```
    ///
    /// `#` starts a comment. Angles accept decimals and `pi` fractions.
    pub fn parse(text: &str) -> Result<Self> {
        let mut num_qubits: Option<usize> = None;
        let mut preps: Vec<(usize, usize, QubitPrep)> = Vec::new();
        let mut arcs: Vec<(usize, Arc)> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let syntax = |message: String| Error::Syntax { line, message };
            let index = |tok: &str| {
                tok.parse::<usize>()
                    .map_err(|_| syntax(format!("expected a vertex index, found `{tok}`")))
            };
            let angle = |tok: &str| parse_angle(tok).map_err(|e| syntax(e.to_string()));

            match tokens[0] {
                "qubits" => {
                    if tokens.len() != 2 {
                        return Err(syntax("expected `qubits <V>`".into()));
                    }
                    if num_qubits.is_some() {
                        return Err(syntax("duplicate `qubits` header".into()));
                    }
                    let v = tokens[1]
                        .parse::<usize>()
                        .map_err(|_| syntax(format!("invalid qubit count `{}`", tokens[1])))?;
                    if v == 0 {
                        return Err(syntax("qubit count must be at least 1".into()));
                    }
                    num_qubits = Some(v);
                }
                "prep" => {
                    if tokens.len() != 4 {
                        return Err(syntax("expected `prep <k> <alpha> <theta>`".into()));
                    }
                    let k = index(tokens[1])?;
                    preps.push((
                        line,
                        k,
                        QubitPrep::new(angle(tokens[2])?, angle(tokens[3])?),
                    ));
                }
                "arc" => {
                    if tokens.len() != 4 {
                        return Err(syntax("expected `arc <i> <j> <phi>`".into()));
                    }
                    let from = index(tokens[1])?;
                    let to = index(tokens[2])?;
                    if from == to {
                        return Err(Error::SelfLoop { line, vertex: from });
                    }
                    arcs.push((line, Arc::new(from, to, angle(tokens[3])?)));
                }
                other => return Err(syntax(format!("unknown directive `{other}`"))),
            }
        }

        let num_qubits = num_qubits.ok_or(Error::MissingHeader)?;
        let out_of_range = |line: usize, vertex: usize| Error::Syntax {
            line,
            message: Error::VertexOutOfRange { vertex, num_qubits }.to_string(),
        };
        let mut prep_table = vec![QubitPrep::default(); num_qubits];
        for (line, k, p) in preps {
            if k >= num_qubits {
                return Err(out_of_range(line, k));
            }
            prep_table[k] = p;
        }
        for (line, arc) in &arcs {
            for v in [arc.from, arc.to] {
                if v >= num_qubits {
                    return Err(out_of_range(*line, v));
                }
            }
        }
        Self::new(
            num_qubits,
            arcs.into_iter().map(|(_, a)| a).collect(),
            prep_table,
        )
    }

    /// Writes the normalized form. Non-default preparations are listed before
    /// the arcs; floats use the shortest exact representation so that parsing
    /// the output reproduces `self` bit for bit.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "qubits {}", self.num_qubits);
        for (k, p) in self.preps.iter().enumerate() {
            if *p != QubitPrep::default() {
                let _ = writeln!(out, "prep {k} {:?} {:?}", p.alpha, p.theta);
            }
        }
        for a in &self.arcs {
            let _ = writeln!(out, "arc {} {} {:?}", a.from, a.to, a.weight);
        }
        out
    }
}

fn check_arc(arc: &Arc, num_qubits: usize) -> Result<()> {
    let invalid = |reason: &str| Error::InvalidArc {
        from: arc.from,
        to: arc.to,
        reason: reason.to_string(),
    };
    if arc.from == arc.to {
        return Err(invalid("self-loop"));
    }
    for v in [arc.from, arc.to] {
        if v >= num_qubits {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                num_qubits,
            });
        }
    }
    if !arc.weight.is_finite() {
        return Err(invalid("weight is not finite"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    pub vertex: usize,
    pub weight: f64,
}

/// Vertex joined to `k` by arcs in both directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bidirected {
    pub vertex: usize,
    /// Weight of `vertex -> k`.
    pub weight_in: f64,
    /// Weight of `k -> vertex`.
    pub weight_out: f64,
}

impl Bidirected {
    /// Both arcs act as one coupling of the summed angle.
    pub fn combined_weight(&self) -> f64 {
        self.weight_in + self.weight_out
    }
}

/// Neighbourhood of a vertex `k`, partitioned by arc direction. Each list is
/// sorted by vertex index.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NeighborClassification {
    /// `m -> k` present, `k -> m` absent.
    pub ingoing: Vec<Neighbor>,
    /// `k -> n` present, `n -> k` absent.
    pub outgoing: Vec<Neighbor>,
    pub bidirected: Vec<Bidirected>,
}

impl NeighborClassification {
    pub fn is_empty(&self) -> bool {
        self.ingoing.is_empty() && self.outgoing.is_empty() && self.bidirected.is_empty()
    }
}
