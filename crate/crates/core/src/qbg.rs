//! Quantum Bruhat graph: edge tests and whole-graph construction.
//!
//! Two independent edge tests are provided. [`edge_kind_definitional`] compares
//! lengths directly; [`edge_kind_criterion`] decides edge existence from the
//! window alone using circular-order straddling.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::weyl::{bar_key, Family, GroupDescriptor, PositiveRoot, WeylElement};

pub const DEFAULT_GRAPH_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeKind {
    None,
    Bruhat,
    Quantum,
}

impl EdgeKind {
    pub fn is_edge(self) -> bool {
        self != EdgeKind::None
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::None => "none",
            EdgeKind::Bruhat => "bruhat",
            EdgeKind::Quantum => "quantum",
        }
    }
}

/// Classifies `w → w s_β` from `ℓ(w)`, `ℓ(w s_β)` and `⟨ρ, β^∨⟩`.
pub fn edge_kind_definitional(w: &WeylElement, beta: &PositiveRoot) -> EdgeKind {
    let lw = w.length() as i64;
    let lv = w.apply_reflection(beta).length() as i64;
    classify_lengths(lw, lv, beta.rho_pairing(w.family(), w.n()))
}

#[inline]
pub(crate) fn classify_lengths(lw: i64, lv: i64, rho_pair: i64) -> EdgeKind {
    if lv == lw + 1 {
        EdgeKind::Bruhat
    } else if lv == lw + 1 - 2 * rho_pair {
        EdgeKind::Quantum
    } else {
        EdgeKind::None
    }
}

/// Rank of `x` in the circular order starting at `a`, for values keyed by
/// their clockwise position.
#[inline]
fn circ_rank(a: i32, x: i32, modulus: i32) -> i32 {
    (x - a).rem_euclid(modulus)
}

/// Decides edge existence from the window by the straddling criteria; the
/// Bruhat/quantum split is then read off from one length comparison.
pub fn edge_kind_criterion(w: &WeylElement, beta: &PositiveRoot) -> EdgeKind {
    if !edge_exists_by_criterion(w, beta) {
        return EdgeKind::None;
    }
    if w.apply_reflection(beta).length() == w.length() + 1 {
        EdgeKind::Bruhat
    } else {
        EdgeKind::Quantum
    }
}

fn edge_exists_by_criterion(w: &WeylElement, beta: &PositiveRoot) -> bool {
    let n = w.n();
    match w.family() {
        Family::A => {
            let PositiveRoot::EiMinusEj(i, j) = *beta else {
                return false;
            };
            let m = n as i32;
            let a = w.value(i as i32);
            let target = circ_rank(a, w.value(j as i32), m);
            !(i + 1..j).any(|k| circ_rank(a, w.value(k as i32), m) < target)
        }
        Family::C => {
            let m = 2 * n as i32;
            let key = |v: i32| bar_key(v, n);
            match *beta {
                PositiveRoot::EiMinusEj(i, j) => {
                    let a = key(w.value(i as i32));
                    let target = circ_rank(a, key(w.value(j as i32)), m);
                    !(i + 1..j).any(|k| circ_rank(a, key(w.value(k as i32)), m) < target)
                }
                PositiveRoot::EiPlusEj(i, j) => {
                    let wi = w.value(i as i32);
                    let wjbar = w.value(-(j as i32));
                    if key(wi) >= key(wjbar) || wi.signum() != wjbar.signum() {
                        return false;
                    }
                    // Positions strictly between i and j̄ in 1 < ⋯ < n < n̄ < ⋯ < 1̄.
                    let between = (i + 1..=n)
                        .map(|k| k as i32)
                        .chain((j + 1..=n).map(|k| -(k as i32)));
                    !between
                        .map(|k| key(w.value(k)))
                        .any(|v| key(wi) < v && v < key(wjbar))
                }
                PositiveRoot::TwoEi(i) => {
                    let a = key(w.value(i as i32));
                    let target = circ_rank(a, key(w.value(-(i as i32))), m);
                    !(i + 1..=n).any(|k| circ_rank(a, key(w.value(k as i32)), m) < target)
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QbgEdge {
    pub src: usize,
    pub root: PositiveRoot,
    pub dst: usize,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone)]
pub struct QbgGraph {
    pub descriptor: GroupDescriptor,
    pub vertices: Vec<WeylElement>,
    pub edges: Vec<QbgEdge>,
    index: HashMap<WeylElement, usize>,
}

impl QbgGraph {
    pub fn vertex_index(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn count(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    pub fn out_edges(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.src].push(e.dst);
        }
        adj
    }

    /// Graphviz DOT: Bruhat edges solid, quantum edges dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "digraph qbg_{}{} {{",
            self.descriptor.family, self.descriptor.n
        );
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{v}\"];");
        }
        for e in &self.edges {
            let style = match e.kind {
                EdgeKind::Quantum => "dashed",
                _ => "solid",
            };
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"{}\", style={style}];",
                e.src, e.dst, e.root
            );
        }
        out.push_str("}\n");
        out
    }

    /// JSON array of `{src, root, dst, kind}` with windows and root strings.
    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<serde_json::Value> = self
            .edges
            .iter()
            .map(|e| {
                serde_json::json!({
                    "src": self.vertices[e.src].window(),
                    "root": e.root.to_string(),
                    "dst": self.vertices[e.dst].window(),
                    "kind": e.kind.as_str(),
                })
            })
            .collect();
        serde_json::Value::Array(edges)
    }

    /// For each source vertex, whether every target is reached only by
    /// directed paths of a single length parity.
    pub fn parity_violations(&self) -> Vec<(usize, usize)> {
        let adj = self.out_edges();
        let nv = self.vertices.len();
        (0..nv)
            .into_par_iter()
            .flat_map_iter(|s| {
                let mut seen = vec![[false; 2]; nv];
                let mut queue = VecDeque::new();
                seen[s][0] = true;
                queue.push_back((s, 0usize));
                while let Some((v, p)) = queue.pop_front() {
                    for &u in &adj[v] {
                        if !seen[u][1 - p] {
                            seen[u][1 - p] = true;
                            queue.push_back((u, 1 - p));
                        }
                    }
                }
                (0..nv)
                    .filter(|&t| seen[t][0] && seen[t][1])
                    .map(|t| (s, t))
                    .collect::<Vec<_>>()
            })
            .collect()
    }
}

/// Builds the full quantum Bruhat graph with the default vertex cap.
pub fn build_qbg(desc: GroupDescriptor) -> Result<QbgGraph> {
    build_qbg_capped(desc, DEFAULT_GRAPH_CAP)
}

pub fn build_qbg_capped(desc: GroupDescriptor, cap: usize) -> Result<QbgGraph> {
    let order = desc.order();
    if order > cap {
        return Err(Error::CapExceeded { order, cap });
    }
    let vertices = desc.elements();
    let index: HashMap<WeylElement, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let roots = desc.positive_roots();
    let edges = vertices
        .par_iter()
        .enumerate()
        .flat_map_iter(|(src, w)| {
            let lw = w.length() as i64;
            roots
                .iter()
                .filter_map(|b| {
                    let v = w.apply_reflection(b);
                    let kind = classify_lengths(lw, v.length() as i64, b.rho_pairing(desc.family, desc.n));
                    kind.is_edge().then(|| QbgEdge {
                        src,
                        root: *b,
                        dst: index[&v],
                        kind,
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(QbgGraph {
        descriptor: desc,
        vertices,
        edges,
        index,
    })
}
