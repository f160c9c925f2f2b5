//! The quantum K-theory Chevalley formula for `G/B` in the quantum alcove
//! model. This is the reference every parabolic evaluator is projected from.

use crate::alcove::{down, enumerate_admissible, standard_chain, wt_with_order, LabeledChain, WtOrder};
use crate::error::{Error, Result};
use crate::ring::{NovikovMonomial, RawTerm, SchubertCombo};
use crate::weyl::{Parabolic, Weight, WeylElement};

/// One raw term `(-1)^{|A|} Q^{down(w,A)} e^{-wt(w,A)} [𝒪^{end(w,A)}]` per
/// admissible subset, in enumeration order.
pub fn gb_raw(w: &WeylElement, chain: &LabeledChain) -> Result<Vec<RawTerm>> {
    gb_raw_with_order(w, chain, WtOrder::default())
}

pub fn gb_raw_with_order(w: &WeylElement, chain: &LabeledChain, order: WtOrder) -> Result<Vec<RawTerm>> {
    Ok(enumerate_admissible(w, chain)?
        .iter()
        .map(|a| RawTerm {
            w: a.end().clone(),
            q: NovikovMonomial::from_coroot(&down(chain, a)),
            weight: -&wt_with_order(chain, a, order),
            sign: a.sign(),
        })
        .collect())
}

/// `[𝒪(-ϖ_k)]·[𝒪^w]` in `QK_T(G/B)` using the built-in chain `Γ(k)`.
pub fn chevalley_gb(w: &WeylElement, k: usize) -> Result<SchubertCombo> {
    let chain = standard_chain(w.family(), w.n(), k)?;
    chevalley_gb_with_chain(w, &chain)
}

pub fn chevalley_gb_with_chain(w: &WeylElement, chain: &LabeledChain) -> Result<SchubertCombo> {
    let raw = gb_raw(w, chain)?;
    Ok(SchubertCombo::from_raw(Parabolic::full_flag(chain.descriptor()), &raw))
}

/// Extends `[𝒪^w] ↦ [𝒪(-ϖ_k)]·[𝒪^w]` linearly over `ℤ[Λ][Q]`.
pub fn apply_chevalley_operator(a: &SchubertCombo, k: usize) -> Result<SchubertCombo> {
    if !a.parabolic().is_full_flag() {
        return Err(Error::Mismatch("the Chevalley operator acts on G/B combinations".into()));
    }
    let desc = a.descriptor();
    let chain = standard_chain(desc.family, desc.n, k)?;
    let mut out = SchubertCombo::zero(a.parabolic().clone());
    for ((w, q), c) in a.terms() {
        let image = chevalley_gb_with_chain(w, &chain)?;
        out = out.add(&image.scale(c, q))?;
    }
    Ok(out)
}

/// `wϖ_k`, the exponent of the global factor of the closed forms.
pub(crate) fn global_weight(w: &WeylElement, k: usize) -> Result<Weight> {
    Ok(w.act_on_weight(&w.descriptor().fundamental_weight(k)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alcove::chain_type_a_star;
    use crate::ring::WeightLaurent;
    use crate::weyl::{Family, GroupDescriptor};
    use num_bigint::BigInt;

    fn el(s: &str) -> WeylElement {
        WeylElement::parse(Family::A, s).unwrap()
    }

    #[test]
    fn sl2_identity() {
        let out = chevalley_gb(&el("1 2"), 1).unwrap();
        let w1 = Weight::new(Family::A, vec![1, 0]);
        let one = NovikovMonomial::one();
        assert_eq!(out.len(), 2);
        assert_eq!(out.coeff(&el("1 2"), &one), WeightLaurent::monomial(w1.clone(), 1));
        assert_eq!(out.coeff(&el("2 1"), &one), WeightLaurent::monomial(w1, -1));
    }

    #[test]
    fn sl2_reflection() {
        let out = chevalley_gb(&el("2 1"), 1).unwrap();
        let mu = Weight::new(Family::A, vec![0, 1]);
        assert_eq!(out.len(), 2);
        assert_eq!(out.coeff(&el("2 1"), &NovikovMonomial::one()), WeightLaurent::monomial(mu.clone(), 1));
        assert_eq!(out.coeff(&el("1 2"), &NovikovMonomial::q(1)), WeightLaurent::monomial(mu, -1));
    }

    #[test]
    fn empty_subset_term() {
        for family in [Family::A, Family::C] {
            let desc = GroupDescriptor::new(family, 3).unwrap();
            for w in desc.elements() {
                for k in desc.index_set() {
                    let out = chevalley_gb(&w, k).unwrap();
                    let mu = w.act_on_weight(&desc.fundamental_weight(k).unwrap());
                    let c = out.coeff(&w, &NovikovMonomial::one());
                    assert_eq!(c.coeff(&mu), BigInt::from(1), "{family} {w} k={k}");
                }
            }
        }
    }

    #[test]
    fn star_chain_gives_same_product() {
        for n in 2..=4 {
            let desc = GroupDescriptor::new(Family::A, n).unwrap();
            for k in 1..n {
                let star = chain_type_a_star(n, k).unwrap();
                for w in desc.elements() {
                    assert_eq!(
                        chevalley_gb(&w, k).unwrap(),
                        chevalley_gb_with_chain(&w, &star).unwrap(),
                        "n={n} k={k} w={w}"
                    );
                }
            }
        }
    }

    #[test]
    fn operator_on_single_term() {
        let desc = GroupDescriptor::new(Family::A, 3).unwrap();
        let gb = Parabolic::full_flag(desc);
        let w = el("2 3 1");
        let basis = SchubertCombo::basis(gb, &w).unwrap();
        assert_eq!(apply_chevalley_operator(&basis, 2).unwrap(), chevalley_gb(&w, 2).unwrap());
        let mu = desc.fundamental_weight(1).unwrap();
        let c = WeightLaurent::monomial(mu, 1);
        let q = NovikovMonomial::q(1);
        assert_eq!(
            apply_chevalley_operator(&basis.scale(&c, &q), 2).unwrap(),
            chevalley_gb(&w, 2).unwrap().scale(&c, &q)
        );
    }
}
