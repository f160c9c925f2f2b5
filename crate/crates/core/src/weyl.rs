//! Weyl groups of types A_{n-1} and C_n in window notation.
//!
//! Type A elements are permutations of `1..=n`. Type C elements are signed
//! permutations; a barred value `ī` is stored as the negative integer `-i`, so
//! the full one-line notation satisfies `w(-i) = -w(i)`.
//!
//! Weights and roots live in ε-coordinates. Type A weights are taken in `ℤⁿ`
//! modulo `ℤ·(1,…,1)` and are kept canonical by forcing the last coordinate
//! to zero.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::C => write!(f, "C"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "C" | "c" => Ok(Family::C),
            _ => Err(Error::Parse {
                what: "family",
                input: s.to_string(),
            }),
        }
    }
}

/// Family and window size of a Weyl group.
///
/// Type A with window size `n` is `S_n` (Cartan rank `n - 1`); type C with
/// window size `n` is the hyperoctahedral group (Cartan rank `n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub family: Family,
    pub n: usize,
}

impl GroupDescriptor {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall(n));
        }
        Ok(Self { family, n })
    }

    pub fn rank(&self) -> usize {
        match self.family {
            Family::A => self.n - 1,
            Family::C => self.n,
        }
    }

    pub fn index_set(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.rank()
    }

    pub fn order(&self) -> usize {
        let fact: usize = (1..=self.n).product();
        match self.family {
            Family::A => fact,
            Family::C => fact << self.n,
        }
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            family: self.family,
            window: (1..=self.n as i32).collect(),
        }
    }

    /// The longest element: `n…21` in type A, `-id` in type C.
    pub fn longest(&self) -> WeylElement {
        let window = match self.family {
            Family::A => (1..=self.n as i32).rev().collect(),
            Family::C => (1..=self.n as i32).map(|v| -v).collect(),
        };
        WeylElement {
            family: self.family,
            window,
        }
    }

    /// All group elements, sorted lexicographically by window.
    pub fn elements(&self) -> Vec<WeylElement> {
        let n = self.n;
        let perms = (1..=n as i32).permutations(n);
        let mut out: Vec<WeylElement> = match self.family {
            Family::A => perms
                .map(|window| WeylElement {
                    family: Family::A,
                    window,
                })
                .collect(),
            Family::C => perms
                .flat_map(|p| {
                    (0u32..(1 << n)).map(move |mask| {
                        let window = p
                            .iter()
                            .enumerate()
                            .map(|(i, &v)| if mask >> i & 1 == 1 { -v } else { v })
                            .collect();
                        WeylElement {
                            family: Family::C,
                            window,
                        }
                    })
                })
                .collect(),
        };
        out.sort();
        out
    }

    /// Positive roots in a fixed order: `ε_i - ε_j`, then `ε_i + ε_j`, then `2ε_i`.
    pub fn positive_roots(&self) -> Vec<PositiveRoot> {
        let n = self.n;
        let mut roots: Vec<PositiveRoot> = (1..=n)
            .tuple_combinations()
            .map(|(i, j)| PositiveRoot::EiMinusEj(i, j))
            .collect();
        if self.family == Family::C {
            roots.extend(
                (1..=n)
                    .tuple_combinations()
                    .map(|(i, j)| PositiveRoot::EiPlusEj(i, j)),
            );
            roots.extend((1..=n).map(PositiveRoot::TwoEi));
        }
        roots
    }

    pub fn simple_root(&self, i: usize) -> Result<PositiveRoot> {
        self.check_index(i)?;
        Ok(if self.family == Family::C && i == self.n {
            PositiveRoot::TwoEi(i)
        } else {
            PositiveRoot::EiMinusEj(i, i + 1)
        })
    }

    /// `θ = (1,n)` in type A and `θ = (1,1̄)` in type C.
    pub fn highest_root(&self) -> PositiveRoot {
        match self.family {
            Family::A => PositiveRoot::EiMinusEj(1, self.n),
            Family::C => PositiveRoot::TwoEi(1),
        }
    }

    /// `ρ` in ε-coordinates.
    pub fn rho(&self) -> Weight {
        let n = self.n as i64;
        let coords = match self.family {
            Family::A => (0..n).map(|i| n - 1 - i).collect(),
            Family::C => (0..n).map(|i| n - i).collect(),
        };
        Weight::new(self.family, coords)
    }

    /// `ϖ_k = ε_1 + ⋯ + ε_k`.
    pub fn fundamental_weight(&self, k: usize) -> Result<Weight> {
        self.check_index(k)?;
        let coords = (0..self.n).map(|i| i64::from(i < k)).collect();
        Ok(Weight::new(self.family, coords))
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::new(self.family, vec![0; self.n])
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.rank(),
            });
        }
        Ok(())
    }

    pub fn check_element(&self, w: &WeylElement) -> Result<()> {
        if w.family != self.family || w.n() != self.n {
            return Err(Error::Mismatch(format!(
                "element {w} (type {}, n = {}) used with type {} n = {}",
                w.family,
                w.n(),
                self.family,
                self.n
            )));
        }
        Ok(())
    }

    pub fn check_root(&self, beta: &PositiveRoot) -> Result<()> {
        beta.validate(self.family, self.n)
    }

    pub fn parse_element(&self, s: &str) -> Result<WeylElement> {
        let w = WeylElement::parse(self.family, s)?;
        self.check_element(&w)?;
        Ok(w)
    }
}

/// Sort key for the total order `1 < 2 < ⋯ < n < n̄ < ⋯ < 1̄`.
#[inline]
pub(crate) fn bar_key(v: i32, n: usize) -> i32 {
    if v > 0 {
        v
    } else {
        2 * n as i32 + 1 + v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement {
    family: Family,
    window: Vec<i32>,
}

impl WeylElement {
    pub fn new(family: Family, window: Vec<i32>) -> Result<Self> {
        let n = window.len();
        let invalid = |reason| Error::InvalidWindow {
            family,
            window: window.clone(),
            reason,
        };
        if n < 2 {
            return Err(invalid("window must have at least 2 entries"));
        }
        let mut seen = vec![false; n + 1];
        for &v in &window {
            if family == Family::A && v <= 0 {
                return Err(invalid("type A entries must be positive"));
            }
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n {
                return Err(invalid("entries must have absolute value in 1..=n"));
            }
            if seen[a] {
                return Err(invalid("absolute values must be distinct"));
            }
            seen[a] = true;
        }
        Ok(Self { family, window })
    }

    /// Parses a space- or comma-separated window such as `"3 -1 2"`.
    pub fn parse(family: Family, s: &str) -> Result<Self> {
        let window = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i32>().map_err(|_| Error::Parse {
                    what: "Weyl group element",
                    input: s.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(family, window)
    }

    pub fn identity(family: Family, n: usize) -> Self {
        Self {
            family,
            window: (1..=n as i32).collect(),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        GroupDescriptor {
            family: self.family,
            n: self.n(),
        }
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    /// `w(i)` for a window position `1 ≤ i ≤ n`; `w(-i) = -w(i)` for barred positions.
    pub fn value(&self, i: i32) -> i32 {
        if i > 0 {
            self.window[i as usize - 1]
        } else {
            -self.window[(-i) as usize - 1]
        }
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &v)| v == i as i32 + 1)
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        let w = &self.window;
        let n = w.len();
        let mut len = 0;
        match self.family {
            Family::A => {
                for i in 0..n {
                    for j in i + 1..n {
                        len += usize::from(w[i] > w[j]);
                    }
                }
            }
            Family::C => {
                for i in 0..n {
                    len += usize::from(w[i] < 0);
                    for j in i + 1..n {
                        // ε_i - ε_j
                        len += usize::from(bar_key(w[i], n) > bar_key(w[j], n));
                        // ε_i + ε_j: sign of the entry with the smaller absolute value
                        let small = if w[i].abs() < w[j].abs() { w[i] } else { w[j] };
                        len += usize::from(small < 0);
                    }
                }
            }
        }
        len
    }

    /// Right multiplication `w·s_β`.
    pub fn apply_reflection(&self, beta: &PositiveRoot) -> Self {
        let mut window = self.window.clone();
        match *beta {
            PositiveRoot::EiMinusEj(i, j) => window.swap(i - 1, j - 1),
            PositiveRoot::EiPlusEj(i, j) => {
                let (a, b) = (window[i - 1], window[j - 1]);
                window[i - 1] = -b;
                window[j - 1] = -a;
            }
            PositiveRoot::TwoEi(i) => window[i - 1] = -window[i - 1],
        }
        Self {
            family: self.family,
            window,
        }
    }

    /// Right multiplication by the simple reflection `s_i`.
    pub fn apply_simple(&self, i: usize) -> Self {
        let mut window = self.window.clone();
        if self.family == Family::C && i == self.n() {
            window[i - 1] = -window[i - 1];
        } else {
            window.swap(i - 1, i);
        }
        Self {
            family: self.family,
            window,
        }
    }

    /// Composition `(self·other)(i) = self(other(i))`.
    pub fn compose(&self, other: &WeylElement) -> Self {
        let window = other.window.iter().map(|&v| self.value(v)).collect();
        Self {
            family: self.family,
            window,
        }
    }

    pub fn inverse(&self) -> Self {
        let mut window = vec![0; self.n()];
        for (i, &v) in self.window.iter().enumerate() {
            let pos = i as i32 + 1;
            window[v.unsigned_abs() as usize - 1] = if v > 0 { pos } else { -pos };
        }
        Self {
            family: self.family,
            window,
        }
    }

    /// Right descents `i` with `ℓ(w s_i) < ℓ(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        let n = self.n();
        if self.family == Family::C && i == n {
            self.window[n - 1] < 0
        } else {
            bar_key(self.window[i - 1], n) > bar_key(self.window[i], n)
        }
    }

    /// Standard action on ε-coordinates: `w(ε_i) = sign(w(i)) ε_{|w(i)|}`.
    pub fn act_on_weight(&self, mu: &Weight) -> Weight {
        let mut coords = vec![0; self.n()];
        for (i, &v) in self.window.iter().enumerate() {
            let target = v.unsigned_abs() as usize - 1;
            coords[target] = if v > 0 { mu.coords[i] } else { -mu.coords[i] };
        }
        Weight::new(self.family, coords)
    }

    /// Conjugation by the longest element, `ω(w)(i) = n + 1 - w(n + 1 - i)`
    /// (type A diagram automorphism).
    pub fn omega(&self) -> Result<Self> {
        if self.family != Family::A {
            return Err(Error::TypeAOnly);
        }
        let n = self.n() as i32;
        let window = (1..=n).map(|i| n + 1 - self.value(n + 1 - i)).collect();
        Ok(Self {
            family: Family::A,
            window,
        })
    }

    /// A reduced word `s_{i_1} ⋯ s_{i_l}` for `w`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let rank = self.descriptor().rank();
        let mut word = Vec::with_capacity(self.length());
        let mut cur = self.clone();
        while let Some(i) = (1..=rank).find(|&i| cur.has_right_descent(i)) {
            word.push(i);
            cur = cur.apply_simple(i);
        }
        word.reverse();
        word
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.window.iter().join(" "))
    }
}

/// Positive roots in ε-coordinates with `1 ≤ i < j ≤ n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PositiveRoot {
    /// `ε_i - ε_j`, written `(i,j)`.
    EiMinusEj(usize, usize),
    /// `ε_i + ε_j`, written `(i,j̄)`.
    EiPlusEj(usize, usize),
    /// `2ε_i`, written `(i,ī)`.
    TwoEi(usize),
}

impl PositiveRoot {
    pub fn validate(&self, family: Family, n: usize) -> Result<()> {
        let ok = match *self {
            PositiveRoot::EiMinusEj(i, j) => 1 <= i && i < j && j <= n,
            PositiveRoot::EiPlusEj(i, j) => family == Family::C && 1 <= i && i < j && j <= n,
            PositiveRoot::TwoEi(i) => family == Family::C && 1 <= i && i <= n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidRoot {
                family,
                n,
                root: self.to_string(),
            })
        }
    }

    /// The root as an ε-coordinate vector.
    pub fn vector(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        match *self {
            PositiveRoot::EiMinusEj(i, j) => {
                v[i - 1] = 1;
                v[j - 1] = -1;
            }
            PositiveRoot::EiPlusEj(i, j) => {
                v[i - 1] = 1;
                v[j - 1] = 1;
            }
            PositiveRoot::TwoEi(i) => v[i - 1] = 2,
        }
        v
    }

    /// `⟨μ, β^∨⟩` for `μ` in ε-coordinates.
    pub fn pair_coroot(&self, mu: &[i64]) -> i64 {
        match *self {
            PositiveRoot::EiMinusEj(i, j) => mu[i - 1] - mu[j - 1],
            PositiveRoot::EiPlusEj(i, j) => mu[i - 1] + mu[j - 1],
            PositiveRoot::TwoEi(i) => mu[i - 1],
        }
    }

    /// `⟨ρ, β^∨⟩`, the height of the coroot.
    pub fn rho_pairing(&self, family: Family, n: usize) -> i64 {
        let n = n as i64;
        match (*self, family) {
            (PositiveRoot::EiMinusEj(i, j), _) => j as i64 - i as i64,
            (PositiveRoot::EiPlusEj(i, j), _) => 2 * n + 2 - i as i64 - j as i64,
            (PositiveRoot::TwoEi(i), _) => n + 1 - i as i64,
        }
    }

    /// Expansion of `β^∨` in simple coroots.
    ///
    /// Type C uses `α_i^∨ = ε_i - ε_{i+1}` and `α_n^∨ = ε_n`, so
    /// `(ε_i + ε_j)^∨ = α_i^∨ + ⋯ + α_{j-1}^∨ + 2(α_j^∨ + ⋯ + α_n^∨)`.
    pub fn coroot_vector(&self, family: Family, n: usize) -> CorootVector {
        let rank = match family {
            Family::A => n - 1,
            Family::C => n,
        };
        let mut c = vec![0i64; rank];
        match *self {
            PositiveRoot::EiMinusEj(i, j) => c[i - 1..j - 1].iter_mut().for_each(|x| *x += 1),
            PositiveRoot::EiPlusEj(i, j) => {
                c[i - 1..j - 1].iter_mut().for_each(|x| *x += 1);
                c[j - 1..n].iter_mut().for_each(|x| *x += 2);
            }
            PositiveRoot::TwoEi(i) => c[i - 1..n].iter_mut().for_each(|x| *x += 1),
        }
        CorootVector(c)
    }

    /// Diagram automorphism `(i,j) ↦ (n+1-j, n+1-i)` (type A roots only).
    pub fn omega(&self, n: usize) -> Result<Self> {
        match *self {
            PositiveRoot::EiMinusEj(i, j) => Ok(PositiveRoot::EiMinusEj(n + 1 - j, n + 1 - i)),
            _ => Err(Error::TypeAOnly),
        }
    }

    pub fn is_simple(&self, family: Family, n: usize) -> bool {
        match *self {
            PositiveRoot::EiMinusEj(i, j) => j == i + 1,
            PositiveRoot::TwoEi(i) => family == Family::C && i == n,
            PositiveRoot::EiPlusEj(..) => false,
        }
    }
}

impl fmt::Display for PositiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PositiveRoot::EiMinusEj(i, j) => write!(f, "({i},{j})"),
            PositiveRoot::EiPlusEj(i, j) => write!(f, "({i},-{j})"),
            PositiveRoot::TwoEi(i) => write!(f, "({i},-{i})"),
        }
    }
}

impl FromStr for PositiveRoot {
    type Err = Error;

    /// Parses `"(i,j)"`, `"(i,-j)"` or `"(i,-i)"`. `(j,-i)` with `i < j` is
    /// accepted as the same root as `(i,-j)`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "root",
            input: s.to_string(),
        };
        let body = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(err)?;
        let (a, b) = body.split_once(',').ok_or_else(err)?;
        let a: i64 = a.trim().parse().map_err(|_| err())?;
        let b: i64 = b.trim().parse().map_err(|_| err())?;
        if a <= 0 || b == 0 {
            return Err(err());
        }
        let a = a as usize;
        if b > 0 {
            let b = b as usize;
            if a >= b {
                return Err(err());
            }
            Ok(PositiveRoot::EiMinusEj(a, b))
        } else {
            let b = (-b) as usize;
            match a.cmp(&b) {
                std::cmp::Ordering::Equal => Ok(PositiveRoot::TwoEi(a)),
                std::cmp::Ordering::Less => Ok(PositiveRoot::EiPlusEj(a, b)),
                std::cmp::Ordering::Greater => Ok(PositiveRoot::EiPlusEj(b, a)),
            }
        }
    }
}

/// A weight in ε-coordinates, canonical for its family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    coords: Vec<i64>,
}

impl Weight {
    pub fn new(family: Family, mut coords: Vec<i64>) -> Self {
        if family == Family::A {
            if let Some(&last) = coords.last() {
                coords.iter_mut().for_each(|c| *c -= last);
            }
        }
        Self { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// `x - (⟨x, γ^∨⟩ - level)·γ`, the reflection in the affine hyperplane
    /// `⟨x, γ^∨⟩ = level`. Canonical form is preserved in type A because the
    /// pairing only sees coordinate differences.
    pub fn affine_reflect(&self, family: Family, gamma: &PositiveRoot, level: i64) -> Self {
        let n = self.coords.len();
        let c = gamma.pair_coroot(&self.coords) - level;
        let g = gamma.vector(n);
        let coords = self.coords.iter().zip(&g).map(|(x, y)| x - c * y).collect();
        Weight::new(family, coords)
    }

    /// `-w₀μ` in type A, which realizes the diagram automorphism on weights.
    pub fn omega(&self) -> Self {
        let coords = self.coords.iter().rev().map(|&c| -c).collect();
        Weight::new(Family::A, coords)
    }
}

impl Neg for &Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        // Negation commutes with the type A canonical form (last coordinate 0).
        Weight {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for &Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        Weight {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;

    fn sub(self, rhs: &Weight) -> Weight {
        Weight {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coords.iter().join(","))
    }
}

/// Coefficients over the simple coroots `α_1^∨, …, α_rank^∨`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CorootVector(pub Vec<i64>);

impl CorootVector {
    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Coefficient of `α_i^∨` (1-based).
    pub fn coeff(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add_assign(&mut self, other: &CorootVector) {
        self.0.iter_mut().zip(&other.0).for_each(|(a, b)| *a += b);
    }
}

impl fmt::Display for CorootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(","))
    }
}

/// A parabolic subset `J ⊆ I`, stored together with its complement `I ∖ J`.
///
/// Supported shapes: `J = ∅` (full flags), `J = I ∖ {k}`, and in type A
/// `J = I ∖ {k₁, k₂}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Parabolic {
    desc: GroupDescriptor,
    j: Vec<usize>,
    complement: Vec<usize>,
}

impl Parabolic {
    pub fn full_flag(desc: GroupDescriptor) -> Self {
        Self {
            desc,
            j: Vec::new(),
            complement: desc.index_set().collect(),
        }
    }

    pub fn maximal(desc: GroupDescriptor, k: usize) -> Result<Self> {
        Self::from_complement(desc, &[k])
    }

    pub fn two_step(desc: GroupDescriptor, k1: usize, k2: usize) -> Result<Self> {
        Self::from_complement(desc, &[k1, k2])
    }

    pub fn from_complement(desc: GroupDescriptor, complement: &[usize]) -> Result<Self> {
        let mut comp: Vec<usize> = complement.to_vec();
        comp.sort_unstable();
        comp.dedup();
        for &k in &comp {
            desc.check_index(k)?;
        }
        let rank = desc.rank();
        let supported = comp.len() == rank
            || comp.len() == 1
            || (comp.len() == 2 && desc.family == Family::A);
        if !supported || comp.is_empty() {
            return Err(Error::UnsupportedParabolic(format!(
                "I \\ J = {comp:?} in type {} rank {rank}",
                desc.family
            )));
        }
        let j = desc.index_set().filter(|i| !comp.contains(i)).collect();
        Ok(Self {
            desc,
            j,
            complement: comp,
        })
    }

    /// Builds from `J` itself.
    pub fn from_j(desc: GroupDescriptor, j: &[usize]) -> Result<Self> {
        for &i in j {
            desc.check_index(i)?;
        }
        let comp: Vec<usize> = desc.index_set().filter(|i| !j.contains(i)).collect();
        Self::from_complement(desc, &comp)
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.desc
    }

    pub fn j(&self) -> &[usize] {
        &self.j
    }

    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn is_full_flag(&self) -> bool {
        self.j.is_empty()
    }

    /// `⌊w⌋^J`: sort each block of positions cut at the complement indices; in
    /// type C the trailing block (when `n ∈ J`) is made positive first.
    pub fn min_coset_rep(&self, w: &WeylElement) -> WeylElement {
        let n = w.n();
        let mut window = w.window().to_vec();
        let mut start = 0;
        for &k in &self.complement {
            window[start..k].sort_by_key(|&v| bar_key(v, n));
            start = k;
        }
        if start < n {
            if self.desc.family == Family::C {
                window[start..].iter_mut().for_each(|v| *v = v.abs());
            }
            window[start..].sort_by_key(|&v| bar_key(v, n));
        }
        WeylElement {
            family: w.family(),
            window,
        }
    }

    pub fn is_minimal(&self, w: &WeylElement) -> bool {
        self.min_coset_rep(w) == *w
    }

    /// Elements of `W^J`, sorted by window.
    pub fn minimal_reps(&self) -> Vec<WeylElement> {
        self.desc
            .elements()
            .into_iter()
            .filter(|w| self.is_minimal(w))
            .collect()
    }

    /// `[ξ]^J`: keeps only the coordinates outside `J`.
    pub fn project_coroot(&self, xi: &CorootVector) -> CorootVector {
        let mut out = xi.clone();
        for &i in &self.j {
            out.0[i - 1] = 0;
        }
        out
    }

    pub fn check_minimal(&self, w: &WeylElement) -> Result<()> {
        self.desc.check_element(w)?;
        if !self.is_minimal(w) {
            return Err(Error::NotMinimal {
                w: w.to_string(),
                j: self.j.clone(),
            });
        }
        Ok(())
    }
}

/// Bruhat order `u ≤ v`.
///
/// Type A uses the tableau criterion (sorted prefixes dominate entrywise);
/// type C checks whether `u` is a subword product of a reduced word for `v`.
/// Intended for small ranks only.
pub fn bruhat_leq(u: &WeylElement, v: &WeylElement) -> bool {
    if u.family() != v.family() || u.n() != v.n() {
        return false;
    }
    match u.family() {
        Family::A => {
            let n = u.n();
            (1..n).all(|p| {
                let mut a = u.window()[..p].to_vec();
                let mut b = v.window()[..p].to_vec();
                a.sort_unstable();
                b.sort_unstable();
                a.iter().zip(&b).all(|(x, y)| x <= y)
            })
        }
        Family::C => subword_leq(u, v),
    }
}

/// `u ≤ v` via the subword property: the set of products of subwords of a
/// reduced word of `v` is the lower Bruhat interval of `v`.
pub fn subword_leq(u: &WeylElement, v: &WeylElement) -> bool {
    if u.length() > v.length() {
        return false;
    }
    let mut reach: HashSet<WeylElement> = HashSet::new();
    reach.insert(WeylElement::identity(v.family(), v.n()));
    for i in v.reduced_word() {
        let next: Vec<WeylElement> = reach.iter().map(|x| x.apply_simple(i)).collect();
        reach.extend(next);
    }
    reach.contains(u)
}
