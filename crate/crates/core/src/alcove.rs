//! (−ϖ_k)-chains of roots and the quantum alcove model.
//!
//! Chains are stored with their roots negated (so every entry is a positive
//! root) together with an affine level: the level of an entry is the number
//! of occurrences of its root up to and including that entry.
//!
//! The weight statistic is reconstructed from two facts: every type A
//! hyperplane, and every type C hyperplane in the second half of the chain,
//! passes through `ϖ_k`. With the level rule above and the innermost
//! reflection taken at the largest chain index, both hold and `wt(w, ∅) = -wϖ_k`.
//! [`WtOrder::InnermostFirst`] is kept so the opposite convention can be audited.

use std::fmt;
use std::fmt::Write as _;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qbg::{classify_lengths, EdgeKind};
use crate::weyl::{CorootVector, Family, GroupDescriptor, PositiveRoot, Weight, WeylElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ChainKind {
    /// `Γ(k)`.
    Standard,
    /// `Γ*(k)`, the image of `Γ(n-k)` under the type A diagram automorphism.
    Star,
}

/// Where a chain entry sits in the displayed construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Segment {
    /// Row `i` of the type A chain `Γ(k)`: `(i,n), …, (i,k+1)`.
    Row(usize),
    /// Column `j` of `Γ*(k)`: `(1,j), …, (k,j)`.
    Column(usize),
    /// Type C prefix block `Γ'_j`.
    Prime(usize),
    /// Type C block `Γ_j(k)`, display row 1..=4.
    Block { j: usize, row: u8 },
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Segment::Row(i) => write!(f, "row{i}"),
            Segment::Column(j) => write!(f, "col{j}"),
            Segment::Prime(j) => write!(f, "G'{j}"),
            Segment::Block { j, row } => write!(f, "G{j}.{row}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ChainEntry {
    pub root: PositiveRoot,
    pub level: u32,
    pub segment: Segment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledChain {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub kind: ChainKind,
    pub entries: Vec<ChainEntry>,
    /// Number of entries in the first half `Γ¹(k)` (type C); 0 in type A.
    pub split_index: usize,
}

fn with_levels(raw: Vec<(PositiveRoot, Segment)>) -> Vec<ChainEntry> {
    let mut entries: Vec<ChainEntry> = Vec::with_capacity(raw.len());
    for (root, segment) in raw {
        let level = 1 + entries.iter().filter(|e| e.root == root).count() as u32;
        entries.push(ChainEntry {
            root,
            level,
            segment,
        });
    }
    entries
}

fn check_k(desc: &GroupDescriptor, k: usize) -> Result<()> {
    desc.check_index(k)
}

/// `Γ(k)` in type A: rows `i = 1..=k` of `(i,n), (i,n-1), …, (i,k+1)`.
pub fn chain_type_a(n: usize, k: usize) -> Result<LabeledChain> {
    let desc = GroupDescriptor::new(Family::A, n)?;
    check_k(&desc, k)?;
    let raw = (1..=k)
        .flat_map(|i| ((k + 1)..=n).rev().map(move |j| (PositiveRoot::EiMinusEj(i, j), Segment::Row(i))))
        .collect();
    Ok(LabeledChain {
        family: Family::A,
        n,
        k,
        kind: ChainKind::Standard,
        entries: with_levels(raw),
        split_index: 0,
    })
}

/// `Γ*(k)` in type A: columns `j = n, …, k+1` of `(1,j), (2,j), …, (k,j)`.
pub fn chain_type_a_star(n: usize, k: usize) -> Result<LabeledChain> {
    let desc = GroupDescriptor::new(Family::A, n)?;
    check_k(&desc, k)?;
    let raw = ((k + 1)..=n)
        .rev()
        .flat_map(|j| (1..=k).map(move |i| (PositiveRoot::EiMinusEj(i, j), Segment::Column(j))))
        .collect();
    Ok(LabeledChain {
        family: Family::A,
        n,
        k,
        kind: ChainKind::Star,
        entries: with_levels(raw),
        split_index: 0,
    })
}

/// `Γ(k) = Γ'_2 ⋯ Γ'_k Γ_1(k) ⋯ Γ_k(k)` in type C.
pub fn chain_type_c(n: usize, k: usize) -> Result<LabeledChain> {
    let desc = GroupDescriptor::new(Family::C, n)?;
    check_k(&desc, k)?;
    let mut raw = Vec::new();
    for j in 2..=k {
        for i in 1..j {
            raw.push((PositiveRoot::EiPlusEj(i, j), Segment::Prime(j)));
        }
    }
    let split_index = raw.len();
    for j in 1..=k {
        for i in 1..j {
            raw.push((PositiveRoot::EiPlusEj(i, j), Segment::Block { j, row: 1 }));
        }
        for m in (k + 1)..=n {
            raw.push((PositiveRoot::EiPlusEj(j, m), Segment::Block { j, row: 2 }));
        }
        raw.push((PositiveRoot::TwoEi(j), Segment::Block { j, row: 3 }));
        for m in ((k + 1)..=n).rev() {
            raw.push((PositiveRoot::EiMinusEj(j, m), Segment::Block { j, row: 4 }));
        }
    }
    Ok(LabeledChain {
        family: Family::C,
        n,
        k,
        kind: ChainKind::Standard,
        entries: with_levels(raw),
        split_index,
    })
}

/// The built-in `(−ϖ_k)`-chain for a family.
pub fn standard_chain(family: Family, n: usize, k: usize) -> Result<LabeledChain> {
    match family {
        Family::A => chain_type_a(n, k),
        Family::C => chain_type_c(n, k),
    }
}

impl LabeledChain {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        GroupDescriptor {
            family: self.family,
            n: self.n,
        }
    }

    pub fn roots(&self) -> impl Iterator<Item = PositiveRoot> + '_ {
        self.entries.iter().map(|e| e.root)
    }

    /// Indices (0-based) at which `root` occurs.
    pub fn positions_of(&self, root: PositiveRoot) -> Vec<usize> {
        self.entries
            .iter()
            .positions(|e| e.root == root)
            .collect()
    }

    /// The unique index of `root`, or of its occurrence in the second half
    /// when `second_half` is set (type C).
    pub fn position(&self, root: PositiveRoot, second_half: bool) -> Option<usize> {
        let lo = if second_half { self.split_index } else { 0 };
        self.entries[lo..]
            .iter()
            .position(|e| e.root == root)
            .map(|p| p + lo)
    }

    /// Applies the diagram automorphism entrywise; maps `Γ(n-k)` to `Γ*(k)`.
    pub fn omega_dual(&self) -> Result<LabeledChain> {
        if self.family != Family::A {
            return Err(Error::TypeAOnly);
        }
        let n = self.n;
        let entries = self
            .entries
            .iter()
            .map(|e| {
                Ok(ChainEntry {
                    root: e.root.omega(n)?,
                    level: e.level,
                    segment: match e.segment {
                        Segment::Row(i) => Segment::Column(n + 1 - i),
                        Segment::Column(j) => Segment::Row(n + 1 - j),
                        other => other,
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LabeledChain {
            family: Family::A,
            n,
            k: n - self.k,
            kind: match self.kind {
                ChainKind::Standard => ChainKind::Star,
                ChainKind::Star => ChainKind::Standard,
            },
            entries,
            split_index: 0,
        })
    }

    /// One entry per line: `idx root level segment` (1-based indices), with a
    /// `--` separator line at the split in type C.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (t, e) in self.entries.iter().enumerate() {
            if self.family == Family::C && t == self.split_index && t > 0 {
                out.push_str("--\n");
            }
            let _ = writeln!(out, "{} {} {} {}", t + 1, e.root, e.level, e.segment);
        }
        out
    }
}

/// A `w`-admissible subset together with its path in the quantum Bruhat graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdmissibleSubset {
    /// Strictly increasing 0-based chain indices.
    pub indices: Vec<usize>,
    /// Vertices `w, w r_{j1}, …, end(w, A)`.
    pub path: Vec<WeylElement>,
    /// Edge kind of each step.
    pub kinds: Vec<EdgeKind>,
}

impl AdmissibleSubset {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn start(&self) -> &WeylElement {
        &self.path[0]
    }

    pub fn end(&self) -> &WeylElement {
        self.path.last().expect("path always holds the start vertex")
    }

    /// `(-1)^{|A|}`.
    pub fn sign(&self) -> i8 {
        if self.indices.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `A⁻`: chain indices of the quantum steps.
    pub fn quantum_indices(&self) -> Vec<usize> {
        self.indices
            .iter()
            .zip(&self.kinds)
            .filter(|(_, k)| **k == EdgeKind::Quantum)
            .map(|(i, _)| *i)
            .collect()
    }

    pub fn is_bruhat_only(&self) -> bool {
        self.kinds.iter().all(|k| *k == EdgeKind::Bruhat)
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    /// The vertex the step at chain index `index` is applied to.
    pub fn vertex_before(&self, index: usize) -> Option<&WeylElement> {
        self.indices
            .iter()
            .position(|&i| i == index)
            .map(|p| &self.path[p])
    }
}

/// Walks `w` through the chain entries at `indices`; `None` unless every step
/// is an edge of the quantum Bruhat graph.
pub fn replay(w: &WeylElement, chain: &LabeledChain, indices: &[usize]) -> Option<AdmissibleSubset> {
    if indices.windows(2).any(|p| p[0] >= p[1]) || indices.last().is_some_and(|&i| i >= chain.len()) {
        return None;
    }
    let mut path = Vec::with_capacity(indices.len() + 1);
    let mut kinds = Vec::with_capacity(indices.len());
    path.push(w.clone());
    let mut len = w.length() as i64;
    for &t in indices {
        let root = chain.entries[t].root;
        let cur = path.last().unwrap();
        let next = cur.apply_reflection(&root);
        let next_len = next.length() as i64;
        let kind = classify_lengths(len, next_len, root.rho_pairing(chain.family, chain.n));
        if !kind.is_edge() {
            return None;
        }
        kinds.push(kind);
        path.push(next);
        len = next_len;
    }
    Some(AdmissibleSubset {
        indices: indices.to_vec(),
        path,
        kinds,
    })
}

/// All `w`-admissible subsets of `chain`, in lexicographic order of index
/// sequences (the empty set first).
pub fn enumerate_admissible(w: &WeylElement, chain: &LabeledChain) -> Result<Vec<AdmissibleSubset>> {
    enumerate(w, chain, true)
}

/// `𝒜_⋖(w, Γ)`: admissible subsets whose path uses Bruhat edges only. The
/// search never leaves the Bruhat subgraph, so quantum walks are not visited.
pub fn enumerate_bruhat_admissible(w: &WeylElement, chain: &LabeledChain) -> Result<Vec<AdmissibleSubset>> {
    enumerate(w, chain, false)
}

fn enumerate(w: &WeylElement, chain: &LabeledChain, allow_quantum: bool) -> Result<Vec<AdmissibleSubset>> {
    chain.descriptor().check_element(w)?;
    let rho: Vec<i64> = chain
        .entries
        .iter()
        .map(|e| e.root.rho_pairing(chain.family, chain.n))
        .collect();
    let mut out = Vec::new();
    let mut state = AdmissibleSubset {
        indices: Vec::new(),
        path: vec![w.clone()],
        kinds: Vec::new(),
    };
    let mut lens = vec![w.length() as i64];
    dfs(chain, &rho, allow_quantum, 0, &mut state, &mut lens, &mut out);
    Ok(out)
}

fn dfs(
    chain: &LabeledChain,
    rho: &[i64],
    allow_quantum: bool,
    from: usize,
    state: &mut AdmissibleSubset,
    lens: &mut Vec<i64>,
    out: &mut Vec<AdmissibleSubset>,
) {
    out.push(state.clone());
    for t in from..chain.len() {
        let cur = state.path.last().unwrap();
        let next = cur.apply_reflection(&chain.entries[t].root);
        let next_len = next.length() as i64;
        let kind = classify_lengths(*lens.last().unwrap(), next_len, rho[t]);
        if !kind.is_edge() || (!allow_quantum && kind == EdgeKind::Quantum) {
            continue;
        }
        state.indices.push(t);
        state.path.push(next);
        state.kinds.push(kind);
        lens.push(next_len);
        dfs(chain, rho, allow_quantum, t + 1, state, lens, out);
        state.indices.pop();
        state.path.pop();
        state.kinds.pop();
        lens.pop();
    }
}

/// `down(w, A)`: sum of the coroots of the quantum steps.
pub fn down(chain: &LabeledChain, a: &AdmissibleSubset) -> CorootVector {
    let rank = chain.descriptor().rank();
    let mut xi = CorootVector::zero(rank);
    for t in a.quantum_indices() {
        xi.add_assign(&chain.entries[t].root.coroot_vector(chain.family, chain.n));
    }
    xi
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WtOrder {
    /// The reflection at the largest chain index is applied to `ϖ_k` first.
    #[default]
    InnermostLast,
    /// The reflection at the smallest chain index is applied first.
    InnermostFirst,
}

/// `wt(w, A) = -w·r̂_{j1}(⋯ r̂_{js}(ϖ_k))` with `r̂` the reflection in the
/// hyperplane `⟨x, γ^∨⟩ = level`.
pub fn wt(chain: &LabeledChain, a: &AdmissibleSubset) -> Weight {
    wt_with_order(chain, a, WtOrder::default())
}

pub fn wt_with_order(chain: &LabeledChain, a: &AdmissibleSubset, order: WtOrder) -> Weight {
    let desc = chain.descriptor();
    let mut x = desc
        .fundamental_weight(chain.k)
        .expect("chain k is validated at construction");
    let step = |x: Weight, t: &usize| {
        let e = &chain.entries[*t];
        x.affine_reflect(chain.family, &e.root, i64::from(e.level))
    };
    x = match order {
        WtOrder::InnermostLast => a.indices.iter().rev().fold(x, step),
        WtOrder::InnermostFirst => a.indices.iter().fold(x, step),
    };
    -&a.start().act_on_weight(&x)
}

/// Splits a type C admissible subset at the `Γ¹ | Γ²` boundary.
pub fn split_type_c(chain: &LabeledChain, a: &AdmissibleSubset) -> Result<(Vec<usize>, Vec<usize>)> {
    if chain.family != Family::C {
        return Err(Error::TypeCOnly);
    }
    let cut = a.indices.partition_point(|&i| i < chain.split_index);
    Ok((a.indices[..cut].to_vec(), a.indices[cut..].to_vec()))
}

/// JSON view `{indices, end, quantum_indices, down, wt}` with 1-based indices.
pub fn admissible_json(chain: &LabeledChain, a: &AdmissibleSubset) -> serde_json::Value {
    serde_json::json!({
        "indices": a.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "end": a.end().window(),
        "quantum_indices": a.quantum_indices().iter().map(|i| i + 1).collect::<Vec<_>>(),
        "down": down(chain, a).0,
        "wt": wt(chain, a).coords(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use PositiveRoot::*;

    fn roots(c: &LabeledChain) -> Vec<PositiveRoot> {
        c.roots().collect()
    }

    #[test]
    fn type_a_chains() {
        let c = chain_type_a(4, 2).unwrap();
        assert_eq!(
            roots(&c),
            vec![EiMinusEj(1, 4), EiMinusEj(1, 3), EiMinusEj(2, 4), EiMinusEj(2, 3)]
        );
        assert!(c.entries.iter().all(|e| e.level == 1));
        assert_eq!(roots(&chain_type_a(2, 1).unwrap()), vec![EiMinusEj(1, 2)]);
        for n in 2..=6 {
            for k in 1..n {
                assert_eq!(chain_type_a(n, k).unwrap().len(), k * (n - k));
            }
        }
        assert!(chain_type_a(4, 4).is_err());
        assert!(chain_type_a(4, 0).is_err());
    }

    #[test]
    fn star_chains() {
        let c = chain_type_a_star(4, 2).unwrap();
        assert_eq!(
            roots(&c),
            vec![EiMinusEj(1, 4), EiMinusEj(2, 4), EiMinusEj(1, 3), EiMinusEj(2, 3)]
        );
        assert_eq!(roots(&chain_type_a_star(2, 1).unwrap()), vec![EiMinusEj(1, 2)]);
        assert_eq!(chain_type_a(4, 2).unwrap().omega_dual().unwrap(), c);
        let g = chain_type_a(5, 2).unwrap();
        assert_eq!(g.omega_dual().unwrap().omega_dual().unwrap(), g);
        assert!(chain_type_c(2, 1).unwrap().omega_dual().is_err());
    }

    #[test]
    fn type_c_chains() {
        let c = chain_type_c(2, 1).unwrap();
        assert_eq!(roots(&c), vec![EiPlusEj(1, 2), TwoEi(1), EiMinusEj(1, 2)]);
        assert_eq!(c.split_index, 0);
        assert!(c.entries.iter().all(|e| e.level == 1));

        let c = chain_type_c(2, 2).unwrap();
        assert_eq!(roots(&c), vec![EiPlusEj(1, 2), TwoEi(1), EiPlusEj(1, 2), TwoEi(2)]);
        assert_eq!(c.entries.iter().map(|e| e.level).collect::<Vec<_>>(), vec![1, 1, 2, 1]);
        assert_eq!(c.split_index, 1);
    }

    #[test]
    fn root_multiplicity_is_pairing() {
        for n in 2..=4 {
            for k in 1..=n {
                let c = chain_type_c(n, k).unwrap();
                let desc = c.descriptor();
                let wk = desc.fundamental_weight(k).unwrap();
                for b in desc.positive_roots() {
                    let mult = c.positions_of(b).len() as i64;
                    assert_eq!(mult, b.pair_coroot(wk.coords()).abs(), "C{n} k={k} {b}");
                }
                for (t, e) in c.entries.iter().enumerate() {
                    let before = c.entries[..t].iter().filter(|x| x.root == e.root).count();
                    assert_eq!(e.level as usize, before + 1);
                }
            }
        }
    }

    #[test]
    fn admissible_examples() {
        let e = WeylElement::identity(Family::A, 4);
        let c = chain_type_a(4, 2).unwrap();
        let adm = enumerate_admissible(&e, &c).unwrap();
        let sets: Vec<_> = adm.iter().map(|a| a.indices.clone()).collect();
        assert_eq!(sets, vec![vec![], vec![c.position(EiMinusEj(2, 3), false).unwrap()]]);

        let w = WeylElement::parse(Family::A, "2 1").unwrap();
        let c = chain_type_a(2, 1).unwrap();
        let adm = enumerate_admissible(&w, &c).unwrap();
        assert_eq!(adm.len(), 2);
        assert_eq!(adm[1].quantum_indices(), vec![0]);

        let w = WeylElement::parse(Family::A, "2 3 1").unwrap();
        let c = chain_type_a(3, 2).unwrap();
        let sets: Vec<_> = enumerate_admissible(&w, &c)
            .unwrap()
            .into_iter()
            .map(|a| a.indices)
            .collect();
        assert_eq!(sets, vec![vec![], vec![1]]);
    }

    #[test]
    fn wt_examples() {
        let c = chain_type_c(2, 2).unwrap();
        let w = WeylElement::parse(Family::C, "1 -2").unwrap();
        let a = replay(&w, &c, &[0]).unwrap();
        assert!(wt(&c, &a).is_zero());

        let empty = replay(&w, &c, &[]).unwrap();
        let wk = c.descriptor().fundamental_weight(2).unwrap();
        assert_eq!(wt(&c, &empty), -&w.act_on_weight(&wk));
    }

    #[test]
    fn split() {
        let c = chain_type_c(2, 2).unwrap();
        let w = WeylElement::parse(Family::C, "1 -2").unwrap();
        let a = replay(&w, &c, &[0]).unwrap();
        assert_eq!(split_type_c(&c, &a).unwrap(), (vec![0], vec![]));
        let empty = replay(&w, &c, &[]).unwrap();
        assert_eq!(split_type_c(&c, &empty).unwrap(), (vec![], vec![]));
        let fake = AdmissibleSubset {
            indices: vec![1, 3],
            path: vec![w.clone(), w.clone(), w.clone()],
            kinds: vec![EdgeKind::Bruhat; 2],
        };
        assert_eq!(split_type_c(&c, &fake).unwrap(), (vec![], vec![1, 3]));
        let ca = chain_type_a(3, 1).unwrap();
        let e = WeylElement::identity(Family::A, 3);
        assert!(split_type_c(&ca, &replay(&e, &ca, &[]).unwrap()).is_err());
    }

    #[test]
    fn down_examples() {
        let c = chain_type_c(3, 1).unwrap();
        let w = WeylElement::parse(Family::C, "-1 2 3").unwrap();
        let t = c.position(TwoEi(1), false).unwrap();
        let a = replay(&w, &c, &[t]).unwrap();
        assert_eq!(a.kinds, vec![EdgeKind::Quantum]);
        assert_eq!(down(&c, &a).0, vec![1, 1, 1]);
        let empty = replay(&w, &c, &[]).unwrap();
        assert!(down(&c, &empty).is_zero());
    }

    #[test]
    fn chain_text() {
        let text = chain_type_c(2, 2).unwrap().to_text();
        assert_eq!(text, "1 (1,-2) 1 G'2\n--\n2 (1,-1) 1 G1.3\n3 (1,-2) 2 G2.1\n4 (2,-2) 1 G2.3\n");
    }

    #[test]
    fn replay_rejects_non_paths() {
        let w = WeylElement::parse(Family::A, "2 3 1").unwrap();
        let c = chain_type_a(3, 2).unwrap();
        assert!(replay(&w, &c, &[0]).is_none());
        assert!(replay(&w, &c, &[1, 1]).is_none());
        assert!(replay(&w, &c, &[7]).is_none());
    }
}
