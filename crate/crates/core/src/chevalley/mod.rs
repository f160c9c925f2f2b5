//! Chevalley formulas: the G/B engine and the cancellation-free parabolic
//! evaluators, plus the sign-reversing involutions behind them.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{RawTerm, SchubertCombo};
use crate::weyl::{Family, GroupDescriptor, WeylElement};

pub mod gb;
pub mod grassmannian;
pub mod involution;
pub mod twostep;

pub use gb::{apply_chevalley_operator, chevalley_gb, chevalley_gb_with_chain, gb_raw};
pub use grassmannian::{chevalley_grassmannian, grassmannian_a, grassmannian_c};
pub use twostep::{chevalley_twostep, classify_twostep, partition_twostep, AdmissiblePartition};

/// Which displayed branch of a closed-form theorem applies to an input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseLabel {
    GrassAPlain,
    GrassATheta,
    GrassC,
    TwoStepT1,
    TwoStepT2a,
    TwoStepT2b,
    TwoStepT3_1a,
    TwoStepT3_1b,
    TwoStepT3_2a,
    TwoStepT3_2b,
    TwoStepT3Full,
    TwoStepT4,
    TwoStepT5a,
    TwoStepT5b,
    TwoStepT6_1a,
    TwoStepT6_1b,
    TwoStepT6_2a,
    TwoStepT6_2b,
    TwoStepT6Full,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        use CaseLabel::*;
        match self {
            GrassAPlain => "GrassA_plain",
            GrassATheta => "GrassA_theta",
            GrassC => "GrassC",
            TwoStepT1 => "TwoStep_T1",
            TwoStepT2a => "TwoStep_T2a",
            TwoStepT2b => "TwoStep_T2b",
            TwoStepT3_1a => "TwoStep_T3_1a",
            TwoStepT3_1b => "TwoStep_T3_1b",
            TwoStepT3_2a => "TwoStep_T3_2a",
            TwoStepT3_2b => "TwoStep_T3_2b",
            TwoStepT3Full => "TwoStep_T3_Full",
            TwoStepT4 => "TwoStep_T4",
            TwoStepT5a => "TwoStep_T5a",
            TwoStepT5b => "TwoStep_T5b",
            TwoStepT6_1a => "TwoStep_T6_1a",
            TwoStepT6_1b => "TwoStep_T6_1b",
            TwoStepT6_2a => "TwoStep_T6_2a",
            TwoStepT6_2b => "TwoStep_T6_2b",
            TwoStepT6Full => "TwoStep_T6_Full",
        }
    }

    /// `ω` exchanges the `k₁`-target and `k₂`-target branches.
    pub fn mirror(self) -> Self {
        use CaseLabel::*;
        match self {
            TwoStepT1 => TwoStepT4,
            TwoStepT2a => TwoStepT5a,
            TwoStepT2b => TwoStepT5b,
            TwoStepT3_1a => TwoStepT6_1a,
            TwoStepT3_1b => TwoStepT6_1b,
            TwoStepT3_2a => TwoStepT6_2a,
            TwoStepT3_2b => TwoStepT6_2b,
            TwoStepT3Full => TwoStepT6Full,
            TwoStepT4 => TwoStepT1,
            TwoStepT5a => TwoStepT2a,
            TwoStepT5b => TwoStepT2b,
            TwoStepT6_1a => TwoStepT3_1a,
            TwoStepT6_1b => TwoStepT3_1b,
            TwoStepT6_2a => TwoStepT3_2a,
            TwoStepT6_2b => TwoStepT3_2b,
            TwoStepT6Full => TwoStepT3Full,
            other => other,
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Output of a closed-form evaluator, kept with its unmerged terms so that
/// cancellation-freeness can be audited.
#[derive(Debug, Clone)]
pub struct ClosedForm {
    pub label: CaseLabel,
    pub combo: SchubertCombo,
    pub raw: Vec<RawTerm>,
    /// `|𝒜_⋖(w, Γ)|`.
    pub bruhat_count: usize,
}

/// `w ≥ ⌊s_θ⌋` for `w ∈ W^J`, `J = I ∖ {k}`: in type A `w(k) = n` and
/// `w(k+1) = 1`; in type C `w(k) = 1̄`.
pub fn theta_condition(w: &WeylElement, k: usize) -> Result<bool> {
    let desc = w.descriptor();
    desc.check_index(k)?;
    let k = k as i32;
    Ok(match desc.family {
        Family::A => w.value(k) == desc.n as i32 && w.value(k + 1) == 1,
        Family::C => w.value(k) == -1,
    })
}

/// `⌊s_θ⌋^J` for `J = I ∖ {k}`.
pub fn floor_s_theta(desc: GroupDescriptor, k: usize) -> Result<WeylElement> {
    desc.check_index(k)?;
    let n = desc.n as i32;
    let k = k as i32;
    let window: Vec<i32> = match desc.family {
        Family::A => (2..=k).chain([n, 1]).chain(k + 1..n).collect(),
        Family::C => (2..=k).chain([-1]).chain(k + 1..=n).collect(),
    };
    WeylElement::new(desc.family, window)
}

pub(crate) fn guard(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::GuardViolated(what()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{bruhat_leq, Parabolic};

    #[test]
    fn theta_examples() {
        let w = WeylElement::parse(Family::A, "2 1").unwrap();
        assert!(theta_condition(&w, 1).unwrap());
        for n in 2..=5 {
            let e = WeylElement::identity(Family::A, n);
            for k in 1..n {
                assert!(!theta_condition(&e, k).unwrap());
            }
        }
        let w = WeylElement::parse(Family::C, "-1 2").unwrap();
        assert!(theta_condition(&w, 1).unwrap());
    }

    #[test]
    fn floor_s_theta_shapes() {
        let a = GroupDescriptor::new(Family::A, 5).unwrap();
        assert_eq!(floor_s_theta(a, 2).unwrap().to_string(), "2 5 1 3 4");
        let c = GroupDescriptor::new(Family::C, 3).unwrap();
        assert_eq!(floor_s_theta(c, 2).unwrap().to_string(), "2 -1 3");
        assert_eq!(floor_s_theta(c, 3).unwrap().to_string(), "2 3 -1");
    }

    #[test]
    fn theta_matches_bruhat_small() {
        for (family, n) in [(Family::A, 4), (Family::C, 2)] {
            let desc = GroupDescriptor::new(family, n).unwrap();
            for k in desc.index_set() {
                let p = Parabolic::maximal(desc, k).unwrap();
                let st = floor_s_theta(desc, k).unwrap();
                assert!(p.is_minimal(&st));
                for w in p.minimal_reps() {
                    assert_eq!(theta_condition(&w, k).unwrap(), bruhat_leq(&st, &w), "{family}{n} k={k} w={w}");
                }
            }
        }
    }

    #[test]
    fn mirror_is_involutive() {
        for l in [CaseLabel::TwoStepT2b, CaseLabel::TwoStepT6Full, CaseLabel::GrassC] {
            assert_eq!(l.mirror().mirror(), l);
        }
    }
}
