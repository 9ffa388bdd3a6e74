//! Replays the vanishing argument for the modified diagonal as a certificate
//! of discrete steps.
//!
//! Canonical step order:
//!
//! 1. `lemma_i` (FORMAL_IDENTITY): `mult(n)_* G = n^(2g) G` on a sample of `n`.
//! 2. `lemma_ii` (FORMAL_IDENTITY): every projection `X^m -> X^(m-1)` kills `G`.
//! 3. `decomposition` (AXIOM): the motivic decomposition of `h(X)`; imported,
//!    never checked.
//! 4. `eigenweight` (EIGENWEIGHT): the eigen-exponent `2g` places `G` in total
//!    degree `2g(m-1)`.
//! 5. `grading_filter` (GRADING_FILTER): enumerate admissible multi-degrees,
//!    drop those with an entry `2g`, compare with the analytic prover.
//! 6. `pigeonhole` (PIGEONHOLE): the analytic emptiness proof.
//! 7. `cohomology` (COHOMOLOGY_CHECK): exact cohomology class of `G`.
//!
//! Steps 1, 2, 3, 4 and 6 form the proof chain. Steps 5 and 7 are
//! cross-checks and may be skipped without affecting the result.

use std::fmt::Write as _;

use num_traits::{One, Pow};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{class_of_cycle, graded_piece_dim, profile_support, MAX_GENERATORS};
use crate::diagonal::{modified_diagonal, mult_pushforward_all, proj_pushforward, projection_cancellation, AmbientParams};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::grading::{
    admissible_degrees, count_admissible, filter_top, prove_empty_pigeonhole, to_u128_saturating,
    weight_from_eigenvalue, PigeonholeOutcome,
};

pub const SCHEMA_VERSION: &str = "1";

/// Cancelling pairs are listed in the witness up to this many per factor.
const MAX_LISTED_PAIRS: usize = 64;
const MAX_LISTED_SURVIVORS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StepKind {
    FormalIdentity,
    Axiom,
    Eigenweight,
    GradingFilter,
    Pigeonhole,
    CohomologyCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StepStatus {
    Pass,
    Fail,
    /// Imported without verification.
    Assumed,
    /// Not run: layer not requested, or over the enumeration bound.
    Skipped,
    /// Ran correctly but does not establish the conclusion.
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Step {
    pub id: String,
    pub kind: StepKind,
    pub statement: String,
    pub reference: String,
    pub status: StepStatus,
    pub witness: Value,
}

impl Step {
    fn new(id: &str, kind: StepKind, statement: String, reference: &str, status: StepStatus, witness: Value) -> Self {
        Self {
            id: id.to_string(),
            kind,
            statement,
            reference: reference.to_string(),
            status,
            witness,
        }
    }

    fn skipped(id: &str, kind: StepKind, statement: String, reference: &str, reason: &str) -> Self {
        Self::new(id, kind, statement, reference, StepStatus::Skipped, json!({ "reason": reason }))
    }

    fn in_chain(&self) -> bool {
        matches!(self.id.as_str(), "lemma_i" | "lemma_ii" | "decomposition" | "eigenweight" | "pigeonhole")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub schema_version: String,
    pub g: usize,
    pub m: usize,
    pub steps: Vec<Step>,
    pub result: Verdict,
}

impl Certificate {
    pub fn step(&self, id: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.id == id)
    }

    /// True when no executed check failed.
    pub fn checks_hold(&self) -> bool {
        self.result != Verdict::Fail
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("certificate serializes");
        out.push('\n');
        out
    }

    /// Human-readable rendering; witnesses are abbreviated.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "certificate schema {} for g={} m={}", self.schema_version, self.g, self.m);
        for step in &self.steps {
            let _ = writeln!(
                out,
                "[{}] {} ({}): {}",
                label(step.status),
                step.id,
                kind_label(step.kind),
                step.statement
            );
            let _ = writeln!(out, "    ref: {}", step.reference);
            if let Some(note) = step.witness.get("note").and_then(Value::as_str) {
                let _ = writeln!(out, "    note: {note}");
            }
            if let Some(survivors) = step.witness.get("survivors") {
                let _ = writeln!(out, "    survivors: {survivors}");
            }
        }
        let _ = writeln!(out, "result: {}", verdict_label(self.result));
        out
    }
}

fn as_str<T: Serialize>(value: T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

pub(crate) fn label(s: StepStatus) -> String {
    as_str(s)
}

fn kind_label(k: StepKind) -> String {
    as_str(k)
}

pub(crate) fn verdict_label(v: Verdict) -> String {
    as_str(v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayOptions {
    pub run_formal: bool,
    pub run_grading: bool,
    pub run_cohomology: bool,
    /// Values of `n` for the multiplication check.
    pub lemma_sample: Vec<i64>,
    /// Admissible multi-degrees are only enumerated up to this many.
    pub enumeration_limit: u128,
    /// Bound on formal terms and on `C(2gm, 2g)` for the cohomology layer.
    pub max_dim: u128,
}

impl Default for ReplayOptions {
    fn default() -> Self {
        Self {
            run_formal: true,
            run_grading: true,
            run_cohomology: true,
            lemma_sample: vec![-3, -2, 2, 3],
            enumeration_limit: 1_000_000,
            max_dim: 10_000_000,
        }
    }
}

/// Number of terms in the modified diagonal, `2^m - 1`.
pub fn formal_size(m: usize) -> u128 {
    if m >= 128 {
        u128::MAX
    } else {
        (1u128 << m) - 1
    }
}

pub fn formal_within_bounds(m: usize, max_dim: u128) -> bool {
    m < 64 && formal_size(m) <= max_dim
}

pub fn cohomology_within_bounds(ambient: &AmbientParams, max_dim: u128) -> bool {
    ambient.two_g() * ambient.m() <= MAX_GENERATORS
        && formal_within_bounds(ambient.m(), max_dim)
        && graded_piece_dim(ambient) <= max_dim
}

pub fn replay_proof(g: i64, m: i64, options: &ReplayOptions) -> Result<Certificate> {
    let ambient = AmbientParams::new(g, m)?;
    let (g, m) = (ambient.g(), ambient.m());
    if (options.run_formal || options.run_cohomology) && !formal_within_bounds(m, options.max_dim) {
        return Err(Error::ResourceBound {
            what: "modified diagonal terms",
            needed: formal_size(m),
            bound: options.max_dim,
        });
    }
    if options.run_cohomology && !cohomology_within_bounds(&ambient, options.max_dim) {
        return Err(Error::ResourceBound {
            what: "cohomology graded piece C(2gm, 2g)",
            needed: graded_piece_dim(&ambient),
            bound: options.max_dim,
        });
    }

    let mut steps = Vec::with_capacity(7);
    let mut observed_exponent = None;

    if options.run_formal {
        let (step, exponent) = lemma_i_step(ambient, &options.lemma_sample)?;
        observed_exponent = exponent;
        steps.push(step);
        steps.push(lemma_ii_step(ambient)?);
    } else {
        steps.push(Step::skipped("lemma_i", StepKind::FormalIdentity, lemma_i_statement(&options.lemma_sample), LEMMA_I_REF, "formal layer not requested"));
        steps.push(Step::skipped("lemma_ii", StepKind::FormalIdentity, LEMMA_II_STATEMENT.into(), LEMMA_II_REF, "formal layer not requested"));
    }

    steps.push(axiom_step());

    let outcome = prove_empty_pigeonhole(g, m);
    let mut survivors_for_cohomology = None;
    if options.run_grading {
        steps.push(eigenweight_step(ambient, observed_exponent)?);
        let (filter, survivors) = grading_filter_step(ambient, &outcome, options.enumeration_limit)?;
        survivors_for_cohomology = survivors;
        steps.push(filter);
        steps.push(pigeonhole_step(ambient, &outcome));
    } else {
        let reason = "grading layer not requested";
        steps.push(Step::skipped("eigenweight", StepKind::Eigenweight, EIGENWEIGHT_STATEMENT.into(), EIGENWEIGHT_REF, reason));
        steps.push(Step::skipped("grading_filter", StepKind::GradingFilter, GRADING_STATEMENT.into(), GRADING_REF, reason));
        steps.push(Step::skipped("pigeonhole", StepKind::Pigeonhole, PIGEONHOLE_STATEMENT.into(), PIGEONHOLE_REF, reason));
    }

    if options.run_cohomology {
        steps.push(cohomology_step(ambient, survivors_for_cohomology.as_deref())?);
    } else {
        steps.push(Step::skipped("cohomology", StepKind::CohomologyCheck, COHOMOLOGY_STATEMENT.into(), COHOMOLOGY_REF, "cohomology layer not requested"));
    }

    let result = if steps.iter().any(|s| s.status == StepStatus::Fail) {
        Verdict::Fail
    } else if steps
        .iter()
        .filter(|s| s.in_chain())
        .all(|s| matches!(s.status, StepStatus::Pass | StepStatus::Assumed))
    {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    };

    Ok(Certificate {
        schema_version: SCHEMA_VERSION.to_string(),
        g,
        m,
        steps,
        result,
    })
}

const LEMMA_I_REF: &str = "pushforward lemma (i): mult(n) commutes with each partial diagonal; mult(n) is finite flat of degree n^(2g)";
const LEMMA_II_REF: &str = "pushforward lemma (ii): bijection I -> I + {j} between subsets with and without j";
const AXIOM_REF: &str = "[DenMur] C. Deninger, J. Murre, Motivic decomposition of abelian schemes and the Fourier transform, J. reine angew. Math. 422 (1991), 201-219";
const EIGENWEIGHT_REF: &str = "mult(n)_* acts by n^(2g-i) on h^i(X), hence by n^(2gm-|i|) on the summand of multi-degree i";
const GRADING_REF: &str = "vanishing lemma: a summand with some i_j = 2g injects into h(X^(m-1)) under the projection forgetting factor j";
const PIGEONHOLE_REF: &str = "main theorem: entries <= 2g summing to 2g(m-1) force an entry 2g when m >= 2g+1";
const COHOMOLOGY_REF: &str = "cohomological shadow: the class of G in the exterior algebra of H^1(X^m)";

fn lemma_i_statement(sample: &[i64]) -> String {
    format!("mult(n)_* G = n^(2g) * G for n in {sample:?}")
}
const LEMMA_II_STATEMENT: &str = "proj_j,* G = 0 for every factor j";
const EIGENWEIGHT_STATEMENT: &str = "eigen-exponent w = 2g places G in total degree nu = 2gm - w = 2g(m-1)";
const GRADING_STATEMENT: &str = "multi-degrees of total 2g(m-1) with no entry equal to 2g";
const PIGEONHOLE_STATEMENT: &str = "no multi-degree of total 2g(m-1) avoids the entry 2g";
const COHOMOLOGY_STATEMENT: &str = "cohomology class of G, its Kunneth support, and vanishing when m >= 2g+1";

fn lemma_i_step(ambient: AmbientParams, sample: &[i64]) -> Result<(Step, Option<i64>)> {
    let gamma = modified_diagonal(ambient);
    let diagonal_key: Vec<i64> = vec![1; ambient.m()];
    let base = gamma
        .terms()
        .find(|(v, _)| v.entries() == diagonal_key.as_slice())
        .map(|(_, c)| c.clone())
        .expect("modified diagonal contains the full diagonal");

    let mut samples = Vec::new();
    let mut all_hold = !sample.is_empty();
    let mut exponents = Vec::new();
    for &n in sample {
        let pushed = mult_pushforward_all(&gamma, n)?;
        let expected = Rational::from_integer(Pow::pow(num_bigint::BigInt::from(n), ambient.two_g() as u32));
        let holds = pushed == gamma.scale(&expected);
        all_hold &= holds;
        let ratio = pushed
            .terms()
            .find(|(v, _)| v.entries() == diagonal_key.as_slice())
            .map(|(_, c)| c / &base);
        let exponent = ratio.as_ref().and_then(|r| exact_log(n, r));
        exponents.push(exponent);
        samples.push(json!({
            "n": n,
            "factor": expected.to_string(),
            "holds": holds,
            "observed_exponent": exponent,
        }));
    }
    let exponent = match exponents.first() {
        Some(Some(w)) if all_hold && exponents.iter().all(|e| *e == Some(*w)) => Some(*w),
        _ => None,
    };
    let status = if all_hold { StepStatus::Pass } else { StepStatus::Fail };
    let witness = json!({
        "base_point": "zero section; the class for any other section is its translate",
        "terms": gamma.len(),
        "samples": samples,
        "exponent": exponent,
    });
    Ok((
        Step::new("lemma_i", StepKind::FormalIdentity, lemma_i_statement(sample), LEMMA_I_REF, status, witness),
        exponent,
    ))
}

/// `w` with `n^w = r`, if any.
fn exact_log(n: i64, r: &Rational) -> Option<i64> {
    if n.abs() < 2 || !r.is_integer() {
        return None;
    }
    let base = Rational::from_integer(n.into());
    let mut acc = Rational::one();
    for w in 0..=4096 {
        if &acc == r {
            return Some(w);
        }
        if acc.numer().bits() > r.numer().bits() + 1 {
            break;
        }
        acc *= &base;
    }
    None
}

fn lemma_ii_step(ambient: AmbientParams) -> Result<Step> {
    if ambient.m() == 1 {
        return Ok(Step::skipped(
            "lemma_ii",
            StepKind::FormalIdentity,
            LEMMA_II_STATEMENT.into(),
            LEMMA_II_REF,
            "m = 1: pushforward to the base is not modeled",
        ));
    }
    let gamma = modified_diagonal(ambient);
    let mut projections = Vec::new();
    let mut all_hold = true;
    for j in 1..=ambient.m() {
        let pushed = proj_pushforward(&gamma, j)?;
        let witness = projection_cancellation(ambient, j)?;
        let holds = pushed.is_zero() && witness.holds();
        all_hold &= holds;
        let mut entry = json!({
            "j": j,
            "result": pushed.to_string(),
            "singleton_is_constant": witness.singleton_is_constant,
            "pair_count": witness.pairs.len(),
            "pairs_cancel": witness.holds(),
        });
        if witness.pairs.len() <= MAX_LISTED_PAIRS {
            entry["pairs"] = witness
                .pairs
                .iter()
                .map(|p| json!([p.without_j, p.with_j]))
                .collect();
        }
        projections.push(entry);
    }
    let status = if all_hold { StepStatus::Pass } else { StepStatus::Fail };
    Ok(Step::new(
        "lemma_ii",
        StepKind::FormalIdentity,
        LEMMA_II_STATEMENT.into(),
        LEMMA_II_REF,
        status,
        json!({ "projections": projections }),
    ))
}

fn axiom_step() -> Step {
    Step::new(
        "decomposition",
        StepKind::Axiom,
        "h(X) = h^0(X) + ... + h^(2g)(X) with mult(n)_* acting by n^(2g-i) on h^i(X), inducing h(X^m) = sum over i in {0..2g}^m of the tensor products of h^(i_j)(X)".into(),
        AXIOM_REF,
        StepStatus::Assumed,
        json!({ "note": "imported; not verified by this tool" }),
    )
}

fn eigenweight_step(ambient: AmbientParams, observed: Option<i64>) -> Result<Step> {
    let (g, m) = (ambient.g(), ambient.m());
    let (w, source) = match observed {
        Some(w) => (w, "observed in lemma_i"),
        None => (ambient.two_g() as i64, "stated exponent 2g; not re-measured in this run"),
    };
    let nu = weight_from_eigenvalue(g, m, w)?;
    let expected = 2 * g * (m - 1);
    let holds = nu == expected && (2 * g * m - nu) as i64 == w;
    Ok(Step::new(
        "eigenweight",
        StepKind::Eigenweight,
        EIGENWEIGHT_STATEMENT.into(),
        EIGENWEIGHT_REF,
        if holds { StepStatus::Pass } else { StepStatus::Fail },
        json!({ "w": w, "nu": nu, "expected_nu": expected, "exponent_source": source }),
    ))
}

fn grading_filter_step(
    ambient: AmbientParams,
    outcome: &PigeonholeOutcome,
    limit: u128,
) -> Result<(Step, Option<Vec<crate::grading::MultiDegree>>)> {
    let (g, m) = (ambient.g(), ambient.m());
    let nu = 2 * g * (m - 1);
    let count = count_admissible(g, m, nu);
    let count_u = to_u128_saturating(&count);
    if count_u > limit {
        let step = Step::new(
            "grading_filter",
            StepKind::GradingFilter,
            GRADING_STATEMENT.into(),
            GRADING_REF,
            StepStatus::Skipped,
            json!({
                "reason": "admissible set above the enumeration bound; analytic proof only",
                "admissible_count": count.to_string(),
                "enumeration_limit": limit.to_string(),
            }),
        );
        return Ok((step, None));
    }
    let admissible = admissible_degrees(g, m, nu)?;
    let survivors = filter_top(&admissible, g);
    let agrees = match outcome {
        PigeonholeOutcome::Proof { .. } => survivors.is_empty(),
        PigeonholeOutcome::Counterexample { survivor, survivor_count } => {
            survivors.contains(survivor) && survivors.len().to_string() == *survivor_count
        }
    };
    let mut witness = json!({
        "nu": nu,
        "admissible_count": admissible.len(),
        "survivor_count": survivors.len(),
        "agrees_with_pigeonhole": agrees,
    });
    if survivors.len() <= MAX_LISTED_SURVIVORS {
        witness["survivors"] = serde_json::to_value(&survivors).expect("degrees serialize");
    }
    if !survivors.is_empty() {
        witness["note"] = json!("surviving degrees reported; no conclusion about vanishing");
    }
    let status = if agrees { StepStatus::Pass } else { StepStatus::Fail };
    Ok((
        Step::new("grading_filter", StepKind::GradingFilter, GRADING_STATEMENT.into(), GRADING_REF, status, witness),
        Some(survivors),
    ))
}

fn pigeonhole_step(ambient: AmbientParams, outcome: &PigeonholeOutcome) -> Step {
    let mut witness = serde_json::to_value(outcome).expect("outcome serializes");
    let status = if outcome.is_proof() {
        StepStatus::Pass
    } else {
        witness["note"] = json!(format!(
            "m = {} <= 2g = {}: no conclusion about vanishing",
            ambient.m(),
            ambient.two_g()
        ));
        StepStatus::Inconclusive
    };
    Step::new("pigeonhole", StepKind::Pigeonhole, PIGEONHOLE_STATEMENT.into(), PIGEONHOLE_REF, status, witness)
}

fn cohomology_step(ambient: AmbientParams, survivors: Option<&[crate::grading::MultiDegree]>) -> Result<Step> {
    let (g, m) = (ambient.g(), ambient.m());
    let class = class_of_cycle(&modified_diagonal(ambient))?;
    let degree = 2 * g * (m - 1);
    let homogeneous = class.is_homogeneous_of(degree);
    let support = profile_support(&class);
    let avoids_top = support.iter().all(|p| !p.has_top_entry(g));
    let within_survivors = survivors.map(|s| support.iter().all(|p| s.contains(p)));
    let theorem_applies = m > 2 * g;
    let vanishes = class.is_zero();
    let holds = homogeneous && avoids_top && within_survivors.unwrap_or(true) && (!theorem_applies || vanishes);
    let mut witness = json!({
        "degree": degree,
        "graded_piece_dim": graded_piece_dim(&ambient).to_string(),
        "homogeneous": homogeneous,
        "zero": vanishes,
        "terms": class.len(),
        "support": support.iter().collect::<Vec<_>>(),
        "support_avoids_top_entry": avoids_top,
        "support_within_survivors": within_survivors,
    });
    if !theorem_applies {
        witness["note"] = json!(if vanishes {
            "class vanishes; outside the theorem's range"
        } else {
            "class is nonzero; outside the theorem's range"
        });
    }
    Ok(Step::new(
        "cohomology",
        StepKind::CohomologyCheck,
        COHOMOLOGY_STATEMENT.into(),
        COHOMOLOGY_REF,
        if holds { StepStatus::Pass } else { StepStatus::Fail },
        witness,
    ))
}
