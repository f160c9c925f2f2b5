//! Closed forms for Grassmannians `G/P_J`, `J = I ∖ {k}`, in types A and C.
//! Both enumerate `𝒜_⋖(w, Γ(k))` only.

use super::gb::global_weight;
use super::{theta_condition, CaseLabel, ClosedForm};
use crate::alcove::{chain_type_a, chain_type_c, enumerate_bruhat_admissible, wt};
use crate::error::{Error, Result};
use crate::ring::{NovikovMonomial, RawTerm, SchubertCombo};
use crate::weyl::{Family, Parabolic, PositiveRoot, WeylElement};

/// Dispatches on the family of `w`.
pub fn chevalley_grassmannian(w: &WeylElement, k: usize) -> Result<ClosedForm> {
    match w.family() {
        Family::A => grassmannian_a(w, k),
        Family::C => grassmannian_c(w, k),
    }
}

/// Type A: `e^{wϖ_k} Σ_{A ∈ 𝒜_⋖} (-1)^{|A|}([𝒪^{end}] - [θ] Q_k [𝒪^{⌊end·s_k⌋}])`.
///
/// The identity is answered directly as `e^{ϖ_k}([𝒪^e] - [𝒪^{s_k}])`.
pub fn grassmannian_a(w: &WeylElement, k: usize) -> Result<ClosedForm> {
    if w.family() == Family::A && w.is_identity() {
        let parabolic = Parabolic::maximal(w.descriptor(), k)?;
        let mu = w.descriptor().fundamental_weight(k)?;
        let raw = vec![
            RawTerm {
                w: w.clone(),
                q: NovikovMonomial::one(),
                weight: mu.clone(),
                sign: 1,
            },
            RawTerm {
                w: w.apply_simple(k),
                q: NovikovMonomial::one(),
                weight: mu,
                sign: -1,
            },
        ];
        return Ok(ClosedForm {
            label: CaseLabel::GrassAPlain,
            combo: SchubertCombo::from_raw(parabolic, &raw),
            raw,
            bruhat_count: 2,
        });
    }
    grassmannian_a_general(w, k)
}

/// [`grassmannian_a`] without the identity shortcut.
pub fn grassmannian_a_general(w: &WeylElement, k: usize) -> Result<ClosedForm> {
    if w.family() != Family::A {
        return Err(Error::TypeAOnly);
    }
    let parabolic = Parabolic::maximal(w.descriptor(), k)?;
    parabolic.check_minimal(w)?;
    let theta = theta_condition(w, k)?;
    let chain = chain_type_a(w.n(), k)?;
    let bruhat = enumerate_bruhat_admissible(w, &chain)?;
    let mu = global_weight(w, k)?;
    let mut raw = Vec::new();
    for a in &bruhat {
        raw.push(RawTerm {
            w: parabolic.min_coset_rep(a.end()),
            q: NovikovMonomial::one(),
            weight: mu.clone(),
            sign: a.sign(),
        });
        if theta {
            raw.push(RawTerm {
                w: parabolic.min_coset_rep(&a.end().apply_simple(k)),
                q: NovikovMonomial::q(k),
                weight: mu.clone(),
                sign: -a.sign(),
            });
        }
    }
    Ok(ClosedForm {
        label: if theta { CaseLabel::GrassATheta } else { CaseLabel::GrassAPlain },
        combo: SchubertCombo::from_raw(parabolic, &raw),
        raw,
        bruhat_count: bruhat.len(),
    })
}

/// Type C: `Σ_{A ∈ 𝒜_⋖} (-1)^{|A|} e^{-wt}[𝒪^{end}]` minus
/// `Q_k Σ (-1)^{|A|} e^{-wt}[𝒪^{⌊end·s_{2ε_k}⌋}]` over those `A` whose
/// first-half endpoint `end(w, A¹)` has `1̄` in position `k`.
pub fn grassmannian_c(w: &WeylElement, k: usize) -> Result<ClosedForm> {
    if w.family() != Family::C {
        return Err(Error::TypeCOnly);
    }
    let parabolic = Parabolic::maximal(w.descriptor(), k)?;
    parabolic.check_minimal(w)?;
    let chain = chain_type_c(w.n(), k)?;
    let bruhat = enumerate_bruhat_admissible(w, &chain)?;
    let long = PositiveRoot::TwoEi(k);
    let mut raw = Vec::new();
    for a in &bruhat {
        let weight = -&wt(&chain, a);
        raw.push(RawTerm {
            w: parabolic.min_coset_rep(a.end()),
            q: NovikovMonomial::one(),
            weight: weight.clone(),
            sign: a.sign(),
        });
        let first_half = a.indices.partition_point(|&i| i < chain.split_index);
        if a.path[first_half].value(k as i32) == -1 {
            raw.push(RawTerm {
                w: parabolic.min_coset_rep(&a.end().apply_reflection(&long)),
                q: NovikovMonomial::q(k),
                weight,
                sign: -a.sign(),
            });
        }
    }
    Ok(ClosedForm {
        label: CaseLabel::GrassC,
        combo: SchubertCombo::from_raw(parabolic, &raw),
        raw,
        bruhat_count: bruhat.len(),
    })
}
