//! Exhaustive verification sweeps. Every closed form is compared against
//! the projected G/B engine; structural identities are checked directly.
//!
//! Sweeps fan out over inputs on a rayon pool and keep input order, so the
//! report is identical for any job count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::alcove::{
    chain_type_a, chain_type_a_star, enumerate_admissible, replay, standard_chain, wt, LabeledChain,
};
use crate::chevalley::involution::{sweep_inputs, verify_involution};
use crate::chevalley::twostep::twostep_pairs;
use crate::chevalley::{
    apply_chevalley_operator, chevalley_gb, chevalley_grassmannian, chevalley_twostep, classify_twostep,
    floor_s_theta, theta_condition, ClosedForm,
};
use crate::error::{Error, Result};
use crate::qbg::{build_qbg, edge_kind_criterion, edge_kind_definitional, EdgeKind};
use crate::ring::{sign_violations, SchubertCombo};
use crate::weyl::{bruhat_leq, Family, GroupDescriptor, Parabolic, WeylElement};

/// Environment variable read for the default pool size.
pub const JOBS_ENV: &str = "QKCHEV_JOBS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Suite {
    EdgeOracleA,
    EdgeOracleC,
    GrassA,
    GrassC,
    TwostepA,
    Involutions,
    Parity,
    Commute,
    Wt,
    Theta,
    Mirror,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::EdgeOracleA,
        Suite::EdgeOracleC,
        Suite::GrassA,
        Suite::GrassC,
        Suite::TwostepA,
        Suite::Involutions,
        Suite::Parity,
        Suite::Commute,
        Suite::Wt,
        Suite::Theta,
        Suite::Mirror,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::EdgeOracleA => "edgeOracleA",
            Suite::EdgeOracleC => "edgeOracleC",
            Suite::GrassA => "grassA",
            Suite::GrassC => "grassC",
            Suite::TwostepA => "twostepA",
            Suite::Involutions => "involutions",
            Suite::Parity => "parity",
            Suite::Commute => "commute",
            Suite::Wt => "wt",
            Suite::Theta => "theta",
            Suite::Mirror => "mirror",
        }
    }

    /// Default type A and type C rank bounds.
    pub fn default_bounds(self) -> (usize, usize) {
        match self {
            Suite::EdgeOracleA => (6, 0),
            Suite::EdgeOracleC => (0, 3),
            Suite::GrassA => (5, 0),
            Suite::GrassC => (0, 3),
            Suite::TwostepA => (5, 0),
            Suite::Involutions => (5, 3),
            Suite::Parity => (4, 3),
            Suite::Commute => (4, 2),
            Suite::Wt => (5, 3),
            Suite::Theta => (5, 3),
            Suite::Mirror => (6, 0),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse {
                what: "suite",
                input: s.to_string(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Largest type A rank `n` (S_n) swept.
    pub n_a: usize,
    /// Largest type C rank swept.
    pub n_c: usize,
    /// Rayon pool size; `None` means rayon's default.
    pub jobs: Option<usize>,
}

impl SuiteConfig {
    pub fn defaults(suite: Suite) -> Self {
        let (n_a, n_c) = suite.default_bounds();
        Self { n_a, n_c, jobs: None }
    }

    /// Caps both bounds at `n`, keeping the suite's family split.
    pub fn with_n(suite: Suite, n: usize) -> Self {
        let (a, c) = suite.default_bounds();
        let n_a = if a == 0 { 0 } else { n };
        let n_c = match (a, c) {
            (_, 0) => 0,
            (0, _) => n,
            (_, c) => c.min(n),
        };
        Self { n_a, n_c, jobs: None }
    }

    pub fn jobs(mut self, jobs: Option<usize>) -> Self {
        self.jobs = jobs;
        self
    }
}

/// Reads [`JOBS_ENV`]; unset or unparsable values give `None`.
pub fn jobs_from_env() -> Option<usize> {
    std::env::var(JOBS_ENV).ok()?.trim().parse().ok().filter(|&j| j > 0)
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub family: Family,
    pub n: usize,
    /// `k`, or `k1,k2@target`, or `-` when not applicable.
    pub k: String,
    pub w: String,
    pub label: String,
    /// `|𝒜(w, Γ)|`, or the number of objects checked.
    pub admissible: usize,
    /// `|𝒜_⋖(w, Γ)|`, or a secondary count.
    pub bruhat: usize,
    #[serde(rename = "match")]
    pub matched: bool,
    /// Why a row did not match; empty otherwise.
    pub detail: String,
}

impl ReportRow {
    fn new(family: Family, n: usize, k: impl fmt::Display, w: impl fmt::Display, label: impl Into<String>) -> Self {
        Self {
            family,
            n,
            k: k.to_string(),
            w: w.to_string(),
            label: label.into(),
            admissible: 0,
            bruhat: 0,
            matched: true,
            detail: String::new(),
        }
    }

    fn counts(mut self, admissible: usize, bruhat: usize) -> Self {
        self.admissible = admissible;
        self.bruhat = bruhat;
        self
    }

    fn fail(mut self, detail: impl Into<String>) -> Self {
        self.matched = false;
        let d = detail.into();
        if self.detail.is_empty() {
            self.detail = d;
        } else {
            self.detail = format!("{}; {d}", self.detail);
        }
        self
    }

    fn error(family: Family, n: usize, k: impl fmt::Display, w: impl fmt::Display, e: Error) -> Self {
        Self::new(family, n, k, w, "error").fail(e.to_string())
    }
}

pub const TSV_HEADER: &str = "family\tn\tk\tw\tlabel\t|A|\t|A_lessdot|\tmatch";

/// Header plus one tab-separated line per row.
pub fn to_tsv(rows: &[ReportRow]) -> String {
    let mut out = String::from(TSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.family, r.n, r.k, r.w, r.label, r.admissible, r.bruhat, r.matched
        ));
    }
    out
}

pub fn all_match(rows: &[ReportRow]) -> bool {
    rows.iter().all(|r| r.matched)
}

/// Runs `suite` on its own pool.
pub fn run_suite(suite: Suite, cfg: SuiteConfig) -> Result<Vec<ReportRow>> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cfg.jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Mismatch(format!("cannot start worker pool: {e}")))?;
    pool.install(|| match suite {
        Suite::EdgeOracleA => Ok(edge_oracle(Family::A, cfg.n_a)),
        Suite::EdgeOracleC => Ok(edge_oracle(Family::C, cfg.n_c)),
        Suite::GrassA => Ok(grassmannian(Family::A, cfg.n_a)),
        Suite::GrassC => Ok(grassmannian(Family::C, cfg.n_c)),
        Suite::TwostepA => Ok(twostep(cfg.n_a)),
        Suite::Involutions => Ok(involutions(cfg.n_a, cfg.n_c)),
        Suite::Parity => parity(cfg.n_a, cfg.n_c),
        Suite::Commute => Ok(commute(cfg.n_a, cfg.n_c)),
        Suite::Wt => Ok(wt_pinning(cfg.n_a, cfg.n_c)),
        Suite::Theta => Ok(theta(cfg.n_a, cfg.n_c)),
        Suite::Mirror => Ok([mirror_chains(cfg.n_a), mirror_evaluators(cfg.n_a)].concat()),
    })
}

fn groups(family: Family, max_n: usize) -> Vec<GroupDescriptor> {
    (2..=max_n).filter_map(|n| GroupDescriptor::new(family, n).ok()).collect()
}

/// The criterion-based edge test against length comparison, one row per `w`.
pub fn edge_oracle(family: Family, max_n: usize) -> Vec<ReportRow> {
    let inputs: Vec<WeylElement> = groups(family, max_n).iter().flat_map(|d| d.elements()).collect();
    inputs
        .par_iter()
        .map(|w| {
            let roots = w.descriptor().positive_roots();
            let mut row = ReportRow::new(family, w.n(), "-", w, "edges");
            let mut edges = 0;
            for beta in &roots {
                let (a, b) = (edge_kind_criterion(w, beta), edge_kind_definitional(w, beta));
                if a.is_edge() {
                    edges += 1;
                }
                if a != b {
                    row = row.fail(format!("{beta}: criterion {} vs lengths {}", a.as_str(), b.as_str()));
                }
            }
            row.counts(roots.len(), edges)
        })
        .collect()
}

/// Checks a closed form against the projected oracle and for sign-homogeneity.
fn compare_closed(mut row: ReportRow, closed: &ClosedForm, oracle: &SchubertCombo, admissible: usize) -> ReportRow {
    row.label = closed.label.to_string();
    row = row.counts(admissible, closed.bruhat_count);
    if closed.combo != *oracle {
        let diff = closed.combo.sub(oracle).map(|d| d.to_string()).unwrap_or_default();
        row = row.fail(format!("closed form minus oracle = {}", diff.trim()));
    }
    let bad = sign_violations(&closed.raw);
    if !bad.is_empty() {
        row = row.fail(format!("{} mixed-sign groups", bad.len()));
    }
    row
}

/// Grassmannian closed forms against the projected G/B formula.
pub fn grassmannian(family: Family, max_n: usize) -> Vec<ReportRow> {
    let mut inputs = Vec::new();
    for desc in groups(family, max_n) {
        for k in desc.index_set() {
            let p = Parabolic::maximal(desc, k).expect("valid k");
            for w in p.minimal_reps() {
                inputs.push((p.clone(), k, w));
            }
        }
    }
    inputs
        .par_iter()
        .map(|(p, k, w)| {
            let row = ReportRow::new(family, w.n(), k, w, "");
            let run = || -> Result<ReportRow> {
                let closed = chevalley_grassmannian(w, *k)?;
                let chain = standard_chain(family, w.n(), *k)?;
                let admissible = enumerate_admissible(w, &chain)?.len();
                let oracle = chevalley_gb(w, *k)?.project(p)?;
                Ok(compare_closed(row.clone(), &closed, &oracle, admissible))
            };
            run().unwrap_or_else(|e| ReportRow::error(family, w.n(), k, w, e))
        })
        .collect()
}

/// Two-step closed forms, both targets, against the projected oracle.
pub fn twostep(max_n: usize) -> Vec<ReportRow> {
    let mut inputs = Vec::new();
    for desc in groups(Family::A, max_n) {
        for (k1, k2) in twostep_pairs(desc) {
            let p = Parabolic::two_step(desc, k1, k2).expect("valid pair");
            for w in p.minimal_reps() {
                for t in [k1, k2] {
                    inputs.push((p.clone(), k1, k2, t, w.clone()));
                }
            }
        }
    }
    inputs
        .par_iter()
        .map(|(p, k1, k2, t, w)| {
            let ctx = format!("{k1},{k2}@{t}");
            let row = ReportRow::new(Family::A, w.n(), &ctx, w, "");
            let run = || -> Result<ReportRow> {
                let closed = chevalley_twostep(w, *k1, *k2, *t)?;
                let chain = crate::chevalley::twostep::twostep_chain(w.n(), *k1, *k2, *t)?;
                let admissible = enumerate_admissible(w, &chain)?.len();
                let oracle = chevalley_gb(w, *t)?.project(p)?;
                Ok(compare_closed(row.clone(), &closed, &oracle, admissible))
            };
            run().unwrap_or_else(|e| {
                let label = if matches!(e, Error::Classification(_)) { "unclassified" } else { "error" };
                let mut r = ReportRow::error(Family::A, w.n(), &ctx, w, e);
                r.label = label.into();
                r
            })
        })
        .collect()
}

/// Every applicable involution scenario.
pub fn involutions(max_a: usize, max_c: usize) -> Vec<ReportRow> {
    let mut inputs = Vec::new();
    for desc in groups(Family::A, max_a).into_iter().chain(groups(Family::C, max_c)) {
        inputs.extend(sweep_inputs(desc));
    }
    inputs
        .par_iter()
        .map(|(s, w, ctx)| {
            let family = w.family();
            match verify_involution(*s, w, *ctx) {
                Ok(r) => {
                    let mut row = ReportRow::new(family, w.n(), ctx, w, s.as_str()).counts(r.domain, r.pairs);
                    if !r.passed() {
                        row = row.fail(r.failures.join("; "));
                    }
                    row
                }
                Err(e) => ReportRow::error(family, w.n(), ctx, w, e),
            }
        })
        .collect()
}

/// Length parity of all directed paths between fixed endpoints.
pub fn parity(max_a: usize, max_c: usize) -> Result<Vec<ReportRow>> {
    let descs: Vec<GroupDescriptor> = groups(Family::A, max_a).into_iter().chain(groups(Family::C, max_c)).collect();
    descs
        .par_iter()
        .map(|d| {
            let g = build_qbg(*d)?;
            let bad = g.parity_violations();
            let mut row = ReportRow::new(d.family, d.n, "-", "*", "parity")
                .counts(g.count(EdgeKind::Bruhat) + g.count(EdgeKind::Quantum), g.count(EdgeKind::Quantum));
            if !bad.is_empty() {
                row = row.fail(format!("{} vertex pairs with mixed parity", bad.len()));
            }
            Ok(row)
        })
        .collect()
}

/// `k` then `k′` against `k′` then `k` on every basis class.
pub fn commute(max_a: usize, max_c: usize) -> Vec<ReportRow> {
    let mut inputs = Vec::new();
    for desc in groups(Family::A, max_a).into_iter().chain(groups(Family::C, max_c)) {
        for w in desc.elements() {
            inputs.push(w);
        }
    }
    inputs
        .par_iter()
        .map(|w| {
            let desc = w.descriptor();
            let mut row = ReportRow::new(desc.family, desc.n, "-", w, "commute");
            let run = || -> Result<Vec<(usize, usize)>> {
                let basis = SchubertCombo::basis(Parabolic::full_flag(desc), w)?;
                let mut bad = Vec::new();
                let ks: Vec<usize> = desc.index_set().collect();
                let once: Vec<SchubertCombo> = ks
                    .iter()
                    .map(|&k| apply_chevalley_operator(&basis, k))
                    .collect::<Result<_>>()?;
                for (i, &k) in ks.iter().enumerate() {
                    for (j, &l) in ks.iter().enumerate().skip(i + 1) {
                        let kl = apply_chevalley_operator(&once[i], l)?;
                        let lk = apply_chevalley_operator(&once[j], k)?;
                        if kl != lk {
                            bad.push((k, l));
                        }
                    }
                }
                Ok(bad)
            };
            match run() {
                Ok(bad) => {
                    let pairs = desc.rank() * desc.rank().saturating_sub(1) / 2;
                    row = row.counts(pairs, pairs - bad.len());
                    if !bad.is_empty() {
                        row = row.fail(format!("operators fail to commute for {bad:?}"));
                    }
                    row
                }
                Err(e) => ReportRow::error(desc.family, desc.n, "-", w, e),
            }
        })
        .collect()
}

/// Type A: `wt(w,A) = −wϖ_k` on `Γ(k)` and `Γ*(k)`. Type C: `wt(w,A) = wt(w,A¹)`.
pub fn wt_pinning(max_a: usize, max_c: usize) -> Vec<ReportRow> {
    let mut inputs: Vec<(WeylElement, LabeledChain)> = Vec::new();
    for desc in groups(Family::A, max_a) {
        for k in desc.index_set() {
            let chains = [chain_type_a(desc.n, k).unwrap(), chain_type_a_star(desc.n, k).unwrap()];
            for w in desc.elements() {
                for c in &chains {
                    inputs.push((w.clone(), c.clone()));
                }
            }
        }
    }
    for desc in groups(Family::C, max_c) {
        for k in desc.index_set() {
            let chain = standard_chain(Family::C, desc.n, k).unwrap();
            for w in desc.elements() {
                inputs.push((w.clone(), chain.clone()));
            }
        }
    }
    inputs
        .par_iter()
        .map(|(w, chain)| {
            let kind = match chain.kind {
                crate::alcove::ChainKind::Standard => "wt",
                crate::alcove::ChainKind::Star => "wt*",
            };
            let mut row = ReportRow::new(w.family(), w.n(), chain.k, w, kind);
            let all = match enumerate_admissible(w, chain) {
                Ok(all) => all,
                Err(e) => return ReportRow::error(w.family(), w.n(), chain.k, w, e),
            };
            let mut bad = 0;
            for a in &all {
                let got = wt(chain, a);
                let want = match w.family() {
                    Family::A => {
                        let mu = w.descriptor().fundamental_weight(chain.k).expect("valid k");
                        -&w.act_on_weight(&mu)
                    }
                    Family::C => {
                        let cut = a.indices.partition_point(|&i| i < chain.split_index);
                        let first = replay(w, chain, &a.indices[..cut]).expect("prefix of an admissible subset");
                        wt(chain, &first)
                    }
                };
                if got != want {
                    bad += 1;
                }
            }
            row = row.counts(all.len(), all.len() - bad);
            if bad > 0 {
                row = row.fail(format!("{bad} subsets off the pinned weight"));
            }
            row
        })
        .collect()
}

/// `theta_condition` against `⌊s_θ⌋ ≤ w` on minimal representatives.
pub fn theta(max_a: usize, max_c: usize) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    for desc in groups(Family::A, max_a).into_iter().chain(groups(Family::C, max_c)) {
        for k in desc.index_set() {
            let p = Parabolic::maximal(desc, k).expect("valid k");
            let st = floor_s_theta(desc, k).expect("valid k");
            let reps = p.minimal_reps();
            let bad: Vec<String> = reps
                .par_iter()
                .filter(|w| theta_condition(w, k).ok() != Some(bruhat_leq(&st, w)))
                .map(|w| w.to_string())
                .collect();
            let mut row = ReportRow::new(desc.family, desc.n, k, "*", "theta").counts(reps.len(), reps.len() - bad.len());
            if !bad.is_empty() {
                row = row.fail(format!("disagreement at {}", bad.join(", ")));
            }
            rows.push(row);
        }
    }
    rows
}

/// `Γ*(k) = ω(Γ(n−k))` entrywise.
pub fn mirror_chains(max_n: usize) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    for desc in groups(Family::A, max_n) {
        for k in desc.index_set() {
            let star = chain_type_a_star(desc.n, k).unwrap();
            let dual = chain_type_a(desc.n, desc.n - k).and_then(|c| c.omega_dual());
            let mut row = ReportRow::new(Family::A, desc.n, k, "-", "chain*").counts(star.len(), 0);
            match dual {
                Ok(d) if d == star => {}
                Ok(_) => row = row.fail("Γ* differs from ω(Γ)"),
                Err(e) => row = row.fail(e.to_string()),
            }
            rows.push(row);
        }
    }
    rows
}

/// The `k₂`-target evaluator against the ω-conjugated `k₁`-target one.
pub fn mirror_evaluators(max_n: usize) -> Vec<ReportRow> {
    let mut inputs = Vec::new();
    for desc in groups(Family::A, max_n) {
        for (k1, k2) in twostep_pairs(desc) {
            let p = Parabolic::two_step(desc, k1, k2).expect("valid pair");
            for w in p.minimal_reps() {
                inputs.push((k1, k2, w));
            }
        }
    }
    inputs
        .par_iter()
        .map(|(k1, k2, w)| {
            let n = w.n();
            let ctx = format!("{k1},{k2}@{k2}");
            let run = || -> Result<ReportRow> {
                let direct = chevalley_twostep(w, *k1, *k2, *k2)?;
                let mw = w.omega()?;
                let (m1, m2) = (n - k2, n - k1);
                let mirrored = chevalley_twostep(&mw, m1, m2, m1)?;
                let mut row = ReportRow::new(Family::A, n, &ctx, w, direct.label.as_str()).counts(direct.raw.len(), direct.bruhat_count);
                if mirrored.combo.omega()? != direct.combo {
                    row = row.fail("ω-conjugate of the k1-target evaluator differs");
                }
                if mirrored.label.mirror() != direct.label {
                    row = row.fail(format!("labels {} and {} are not mirror images", direct.label, mirrored.label));
                }
                Ok(row)
            };
            run().unwrap_or_else(|e| ReportRow::error(Family::A, n, &ctx, w, e))
        })
        .collect()
}

/// Every minimal representative gets exactly one two-step label.
pub fn classification_gaps(max_n: usize) -> Vec<String> {
    let mut gaps = Vec::new();
    for desc in groups(Family::A, max_n) {
        for (k1, k2) in twostep_pairs(desc) {
            let p = Parabolic::two_step(desc, k1, k2).expect("valid pair");
            for w in p.minimal_reps() {
                for t in [k1, k2] {
                    if let Err(e) = classify_twostep(&w, k1, k2, t) {
                        gaps.push(e.to_string());
                    }
                }
            }
        }
    }
    gaps
}
