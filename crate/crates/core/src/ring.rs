//! Exact coefficient arithmetic in `ℤ[Λ][Q]` and Schubert-basis combinations.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::weyl::{CorootVector, Family, GroupDescriptor, Parabolic, Weight, WeylElement};

/// An element of the group algebra `ℤ[Λ]`: weight ↦ nonzero integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WeightLaurent {
    terms: BTreeMap<Weight, BigInt>,
}

impl WeightLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c·e^μ`.
    pub fn monomial(mu: Weight, c: impl Into<BigInt>) -> Self {
        let mut out = Self::zero();
        out.add_term(mu, c.into());
        out
    }

    /// `1 = e^0`.
    pub fn one(desc: GroupDescriptor) -> Self {
        Self::monomial(desc.zero_weight(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mu: &Weight) -> BigInt {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, mu: Weight, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mu).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add_assign(&mut self, other: &WeightLaurent) {
        for (mu, c) in &other.terms {
            self.add_term(mu.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    /// Product in `ℤ[Λ]`; exponents add.
    pub fn mul(&self, other: &WeightLaurent) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }

    /// Applies `μ ↦ f(μ)` to every exponent, merging collisions.
    pub fn map_weights(&self, f: impl Fn(&Weight) -> Weight) -> Self {
        let mut out = Self::zero();
        for (mu, c) in &self.terms {
            out.add_term(f(mu), c.clone());
        }
        out
    }
}

impl fmt::Display for WeightLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (t, (mu, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            let sep = match (t, c.is_negative()) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            write!(f, "{sep}")?;
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "e^{mu}")?;
        }
        Ok(())
    }
}

/// `Q^ξ = ∏ Q_i^{d_i}`, stored sparsely with no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NovikovMonomial {
    exps: BTreeMap<usize, u32>,
}

impl NovikovMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn q(i: usize) -> Self {
        Self::from_pairs([(i, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut out = Self::one();
        for (i, e) in pairs {
            if e > 0 {
                *out.exps.entry(i).or_default() += e;
            }
        }
        out
    }

    pub fn from_coroot(xi: &CorootVector) -> Self {
        debug_assert!(xi.0.iter().all(|&c| c >= 0));
        Self::from_pairs(xi.0.iter().enumerate().map(|(i, &c)| (i + 1, c as u32)))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps.get(&i).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &BTreeMap<usize, u32> {
        &self.exps
    }

    pub fn mul(&self, other: &NovikovMonomial) -> Self {
        Self::from_pairs(self.exps.iter().chain(&other.exps).map(|(&i, &e)| (i, e)))
    }

    /// `Q^{[ξ]^J}`: drops the variables indexed by `J`.
    pub fn project(&self, parabolic: &Parabolic) -> Self {
        Self {
            exps: self
                .exps
                .iter()
                .filter(|(i, _)| !parabolic.j().contains(i))
                .map(|(&i, &e)| (i, e))
                .collect(),
        }
    }

    /// `Q_i ↦ Q_{n-i}` (type A diagram automorphism).
    pub fn omega(&self, n: usize) -> Self {
        Self::from_pairs(self.exps.iter().map(|(&i, &e)| (n - i, e)))
    }
}

impl fmt::Display for NovikovMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let parts = self.exps.iter().map(|(i, e)| {
            if *e == 1 {
                format!("Q{i}")
            } else {
                format!("Q{i}^{e}")
            }
        });
        write!(f, "{}", parts.format(" "))
    }
}

/// One generated summand `sign · Q^q · e^weight · [𝒪^w]` before any merging.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RawTerm {
    pub w: WeylElement,
    pub q: NovikovMonomial,
    pub weight: Weight,
    pub sign: i8,
}

/// Groups raw terms by `(w, q, weight)` and returns the keys whose group mixes
/// signs.
pub fn sign_violations(raw: &[RawTerm]) -> Vec<(WeylElement, NovikovMonomial, Weight)> {
    let mut seen: BTreeMap<(&WeylElement, &NovikovMonomial, &Weight), (bool, bool)> = BTreeMap::new();
    for t in raw {
        let e = seen.entry((&t.w, &t.q, &t.weight)).or_default();
        if t.sign > 0 {
            e.0 = true;
        } else {
            e.1 = true;
        }
    }
    seen.into_iter()
        .filter(|(_, (p, m))| *p && *m)
        .map(|((w, q, mu), _)| (w.clone(), q.clone(), mu.clone()))
        .collect()
}

/// `Σ c_{w,q}·Q^q·[𝒪_J^w]` with `w ∈ W^J` and `c_{w,q} ∈ ℤ[Λ]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchubertCombo {
    parabolic: Parabolic,
    terms: BTreeMap<(WeylElement, NovikovMonomial), WeightLaurent>,
}

impl SchubertCombo {
    pub fn zero(parabolic: Parabolic) -> Self {
        Self {
            parabolic,
            terms: BTreeMap::new(),
        }
    }

    /// The single class `[𝒪_J^w]` with coefficient 1.
    pub fn basis(parabolic: Parabolic, w: &WeylElement) -> Result<Self> {
        parabolic.check_minimal(w)?;
        let one = WeightLaurent::one(parabolic.descriptor());
        let mut out = Self::zero(parabolic);
        out.add_laurent(w.clone(), NovikovMonomial::one(), &one);
        Ok(out)
    }

    /// Sums raw terms, replacing each `w` by `⌊w⌋^J`.
    pub fn from_raw(parabolic: Parabolic, raw: &[RawTerm]) -> Self {
        let mut out = Self::zero(parabolic);
        for t in raw {
            out.add_term(&t.w, t.q.clone(), t.weight.clone(), BigInt::from(t.sign));
        }
        out
    }

    pub fn parabolic(&self) -> &Parabolic {
        &self.parabolic
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.parabolic.descriptor()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of `(w, q)` keys.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(WeylElement, NovikovMonomial), &WeightLaurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &WeylElement, q: &NovikovMonomial) -> WeightLaurent {
        self.terms
            .get(&(w.clone(), q.clone()))
            .cloned()
            .unwrap_or_default()
    }

    /// Adds `c·e^μ·Q^q·[𝒪^{⌊w⌋}]`.
    pub fn add_term(&mut self, w: &WeylElement, q: NovikovMonomial, mu: Weight, c: BigInt) {
        self.add_laurent(self.parabolic.min_coset_rep(w), q, &WeightLaurent::monomial(mu, c));
    }

    fn add_laurent(&mut self, w: WeylElement, q: NovikovMonomial, c: &WeightLaurent) {
        if c.is_zero() {
            return;
        }
        let key = (w, q);
        let slot = self.terms.entry(key.clone()).or_default();
        slot.add_assign(c);
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn check_same(&self, other: &SchubertCombo) -> Result<()> {
        if self.parabolic != other.parabolic {
            return Err(Error::Mismatch(format!(
                "J = {:?} vs J = {:?}",
                self.parabolic.j(),
                other.parabolic.j()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &SchubertCombo) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for ((w, q), c) in &other.terms {
            out.add_laurent(w.clone(), q.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SchubertCombo) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            parabolic: self.parabolic.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.neg())).collect(),
        }
    }

    /// Multiplies every coefficient by `c` and every monomial by `q`.
    pub fn scale(&self, c: &WeightLaurent, q: &NovikovMonomial) -> Self {
        let mut out = Self::zero(self.parabolic.clone());
        for ((w, q0), c0) in &self.terms {
            out.add_laurent(w.clone(), q0.mul(q), &c0.mul(c));
        }
        out
    }

    /// `Φ_J`: `[𝒪^w]Q^ξ ↦ [𝒪_J^{⌊w⌋}]Q^{[ξ]^J}`.
    pub fn project(&self, target: &Parabolic) -> Result<Self> {
        if !self.parabolic.is_full_flag() {
            return Err(Error::Mismatch("projection expects a G/B combination".into()));
        }
        if target.descriptor() != self.descriptor() {
            return Err(Error::Mismatch(format!(
                "{:?} vs {:?}",
                target.descriptor(),
                self.descriptor()
            )));
        }
        let mut out = Self::zero(target.clone());
        for ((w, q), c) in &self.terms {
            out.add_laurent(target.min_coset_rep(w), q.project(target), c);
        }
        Ok(out)
    }

    /// Transports the combination along the type A diagram automorphism.
    pub fn omega(&self) -> Result<Self> {
        let desc = self.descriptor();
        if desc.family != Family::A {
            return Err(Error::TypeAOnly);
        }
        let n = desc.n;
        let comp: Vec<usize> = self.parabolic.complement().iter().map(|&k| n - k).collect();
        let parabolic = Parabolic::from_complement(desc, &comp)?;
        let mut out = Self::zero(parabolic);
        for ((w, q), c) in &self.terms {
            out.add_laurent(w.omega()?, q.omega(n), &c.map_weights(Weight::omega));
        }
        Ok(out)
    }

    /// `{family, n, J, terms:[{w, q, coeff:[{weight, c}]}]}`; integers that
    /// do not fit in `i64` are written as decimal strings.
    pub fn to_json(&self) -> Value {
        let desc = self.descriptor();
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|((w, q), c)| {
                let qmap: serde_json::Map<String, Value> =
                    q.exps().iter().map(|(i, e)| (i.to_string(), json!(e))).collect();
                let coeff: Vec<Value> = c
                    .terms()
                    .map(|(mu, v)| json!({"weight": mu.coords(), "c": bigint_json(v)}))
                    .collect();
                json!({"w": w.window(), "q": qmap, "coeff": coeff})
            })
            .collect();
        json!({
            "family": desc.family.to_string(),
            "n": desc.n,
            "J": self.parabolic.j(),
            "terms": terms,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &'static str| Error::Parse {
            what,
            input: v.to_string(),
        };
        let family: Family = v["family"].as_str().ok_or_else(|| bad("family"))?.parse()?;
        let n = v["n"].as_u64().ok_or_else(|| bad("n"))? as usize;
        let desc = GroupDescriptor::new(family, n)?;
        let j: Vec<usize> = v["J"]
            .as_array()
            .ok_or_else(|| bad("J"))?
            .iter()
            .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| bad("J")))
            .collect::<Result<_>>()?;
        let parabolic = Parabolic::from_j(desc, &j)?;
        let mut out = Self::zero(parabolic);
        for t in v["terms"].as_array().ok_or_else(|| bad("terms"))? {
            let window: Vec<i32> = t["w"]
                .as_array()
                .ok_or_else(|| bad("window"))?
                .iter()
                .map(|x| x.as_i64().map(|x| x as i32).ok_or_else(|| bad("window")))
                .collect::<Result<_>>()?;
            let w = WeylElement::new(family, window)?;
            out.parabolic.check_minimal(&w)?;
            let mut pairs = Vec::new();
            for (i, e) in t["q"].as_object().ok_or_else(|| bad("q"))? {
                let i: usize = i.parse().map_err(|_| bad("q"))?;
                desc.check_index(i)?;
                pairs.push((i, e.as_u64().ok_or_else(|| bad("q"))? as u32));
            }
            let q = NovikovMonomial::from_pairs(pairs);
            for c in t["coeff"].as_array().ok_or_else(|| bad("coeff"))? {
                let coords: Vec<i64> = c["weight"]
                    .as_array()
                    .ok_or_else(|| bad("weight"))?
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| bad("weight")))
                    .collect::<Result<_>>()?;
                if coords.len() != n {
                    return Err(bad("weight"));
                }
                let value = bigint_from_json(&c["c"]).ok_or_else(|| bad("coefficient"))?;
                out.add_laurent(
                    w.clone(),
                    q.clone(),
                    &WeightLaurent::monomial(Weight::new(family, coords), value),
                );
            }
        }
        Ok(out)
    }

    /// Flat TSV: `w  q  weight  coeff`, one row per monomial.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("w\tq\tweight\tcoeff\n");
        for ((w, q), c) in &self.terms {
            for (mu, v) in c.terms() {
                let _ = writeln!(out, "{w}\t{q}\t{mu}\t{v}");
            }
        }
        out
    }
}

fn bigint_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(x) => x.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl fmt::Display for SchubertCombo {
    /// One line per class: `Q^q [O^w] * (coefficient)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for ((w, q), c) in &self.terms {
            let qs = if q.is_one() { String::new() } else { format!("{q} ") };
            writeln!(f, "{qs}[O^{{{w}}}] * ({c})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize) -> GroupDescriptor {
        GroupDescriptor::new(Family::A, n).unwrap()
    }

    fn el(s: &str) -> WeylElement {
        WeylElement::parse(Family::A, s).unwrap()
    }

    #[test]
    fn add_and_cancel() {
        let gb = Parabolic::full_flag(a(3));
        let e = el("1 2 3");
        let x = SchubertCombo::basis(gb.clone(), &e).unwrap();
        assert_eq!(x.add(&SchubertCombo::zero(gb.clone())).unwrap(), x);
        assert!(x.add(&x.neg()).unwrap().is_zero());

        let w1 = a(3).fundamental_weight(1).unwrap();
        let zero = a(3).zero_weight();
        let mut p = SchubertCombo::zero(gb.clone());
        p.add_term(&e, NovikovMonomial::one(), w1.clone(), 1.into());
        let mut m = SchubertCombo::zero(gb.clone());
        m.add_term(&e, NovikovMonomial::one(), w1, (-1).into());
        m.add_term(&e, NovikovMonomial::one(), zero.clone(), 1.into());
        let sum = p.add(&m).unwrap();
        assert_eq!(sum.len(), 1);
        assert_eq!(sum.coeff(&e, &NovikovMonomial::one()), WeightLaurent::monomial(zero, 1));
    }

    #[test]
    fn mismatched_parabolics() {
        let x = SchubertCombo::zero(Parabolic::full_flag(a(3)));
        let y = SchubertCombo::zero(Parabolic::maximal(a(3), 1).unwrap());
        assert!(x.add(&y).is_err());
    }

    #[test]
    fn scaling() {
        let gb = Parabolic::full_flag(a(3));
        let w = el("2 1 3");
        let x = SchubertCombo::basis(gb.clone(), &w).unwrap();
        let one = WeightLaurent::one(a(3));
        assert_eq!(x.scale(&one, &NovikovMonomial::one()), x);

        let mu = a(3).fundamental_weight(2).unwrap();
        let y = x.scale(&WeightLaurent::monomial(mu.clone(), 1), &NovikovMonomial::q(2));
        assert_eq!(y.coeff(&w, &NovikovMonomial::q(2)), WeightLaurent::monomial(mu.clone(), 1));

        let mut two = x.clone();
        two.add_term(&el("1 2 3"), NovikovMonomial::q(1), a(3).zero_weight(), 3.into());
        let back = two
            .scale(&WeightLaurent::monomial(-&mu, 1), &NovikovMonomial::q(1))
            .scale(&WeightLaurent::monomial(mu, 1), &NovikovMonomial::one());
        assert_eq!(back, two.scale(&one, &NovikovMonomial::q(1)));
    }

    #[test]
    fn projection() {
        let gb = Parabolic::full_flag(a(3));
        let grass = Parabolic::maximal(a(3), 2).unwrap();
        let x = SchubertCombo::basis(gb.clone(), &el("2 1 3")).unwrap();
        let px = x.project(&grass).unwrap();
        assert_eq!(px, SchubertCombo::basis(grass.clone(), &el("1 2 3")).unwrap());

        let q = NovikovMonomial::from_coroot(&CorootVector(vec![1, 1]));
        assert_eq!(q.project(&grass), NovikovMonomial::q(2));

        let mu = a(3).fundamental_weight(1).unwrap();
        let mut y = SchubertCombo::zero(gb);
        y.add_term(&el("2 1 3"), NovikovMonomial::one(), mu.clone(), 1.into());
        y.add_term(&el("1 2 3"), NovikovMonomial::one(), mu, (-1).into());
        assert!(y.project(&grass).unwrap().is_zero());
        assert!(px.project(&grass).is_err());
    }

    #[test]
    fn equality_is_canonical() {
        let gb = Parabolic::full_flag(a(3));
        let e = el("1 2 3");
        let mut x = SchubertCombo::zero(gb.clone());
        x.add_term(&e, NovikovMonomial::one(), Weight::new(Family::A, vec![1, 0, 0]), 1.into());
        let mut y = SchubertCombo::zero(gb.clone());
        y.add_term(&e, NovikovMonomial::one(), Weight::new(Family::A, vec![2, 1, 1]), 1.into());
        assert_eq!(x, y);
        let mut z = SchubertCombo::zero(gb);
        z.add_term(&e, NovikovMonomial::q(1), Weight::new(Family::A, vec![1, 0, 0]), 1.into());
        assert_ne!(x, z);
    }

    #[test]
    fn json_round_trip() {
        let c2 = GroupDescriptor::new(Family::C, 2).unwrap();
        let grass = Parabolic::maximal(c2, 1).unwrap();
        let mut x = SchubertCombo::zero(grass);
        let w = WeylElement::parse(Family::C, "-1 2").unwrap();
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        x.add_term(&w, NovikovMonomial::q(1), Weight::new(Family::C, vec![-1, 0]), big);
        x.add_term(&w, NovikovMonomial::one(), Weight::new(Family::C, vec![0, 1]), (-2).into());
        let v = x.to_json();
        let back = SchubertCombo::from_json(&v).unwrap();
        assert_eq!(back, x);
        assert_eq!(back.to_json().to_string(), v.to_string());
    }

    #[test]
    fn sign_grouping() {
        let e = el("1 2");
        let mu = a(2).zero_weight();
        let t = |sign| RawTerm {
            w: e.clone(),
            q: NovikovMonomial::one(),
            weight: mu.clone(),
            sign,
        };
        assert!(sign_violations(&[t(1), t(1)]).is_empty());
        assert_eq!(sign_violations(&[t(1), t(-1)]).len(), 1);
    }

    #[test]
    fn display() {
        let gb = Parabolic::full_flag(a(2));
        let mut x = SchubertCombo::zero(gb);
        x.add_term(&el("2 1"), NovikovMonomial::one(), Weight::new(Family::A, vec![-1, 0]), 1.into());
        x.add_term(&el("1 2"), NovikovMonomial::q(1), Weight::new(Family::A, vec![-1, 0]), (-1).into());
        assert_eq!(x.to_string(), "Q1 [O^{1 2}] * (-e^(-1,0))\n[O^{2 1}] * (e^(-1,0))\n");
    }
}
