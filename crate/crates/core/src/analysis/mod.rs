//! Multiplication tables, verification suites, zero-divisor search and the
//! sign-engine benchmark.
//!
//! Suites return [`PropertyReport`]s. A report carries the outcome, whether
//! that outcome is expected for the signature, and for failures the first
//! counterexample found, which [`witness_confirms`] can re-evaluate
//! independently. All randomness is seeded and reports are deterministic.

mod bench;
mod laws;
mod report;
mod table;
mod twist_laws;
mod zero_divisors;

pub use bench::{benchmark_engines, BenchConfig, BenchRow, TABLE_BENCH_LEVEL};
pub use laws::{
    law_expected, law_violated, relation_holds, verify_algebra_laws, verify_engines, verify_relations,
    ALGEBRA_LAWS, EXHAUSTIVE_TRIPLE_LEVEL, RANDOM_BOUND, RELATIONS,
};
pub use report::{Property, PropertyReport, Witness};
pub use table::{
    as_signed_basis, build_table, build_table_by_doubling, MultiplicationTable, DEFAULT_TABLE_CAP,
    DOUBLING_TABLE_CAP,
};
pub use twist_laws::{
    sigma_by_cases, sigma_unified, verify_twist_laws, verify_twist_laws_sampled, EXHAUSTIVE_PAIR_LEVEL,
};
pub use zero_divisors::{
    find_zero_divisors, verify_zero_divisors, zero_divisor_free_expected, ZeroDivisorPair, ZeroDivisorSearch,
};

use crate::algebra::{AlgebraSignature, Engine};
use crate::error::{Error, Result};

/// Re-evaluates a failing report's witness from scratch; true when the witness
/// still demonstrates the failure. Algebra laws and zero divisors are
/// recomputed with the doubling engine. Reports without a witness give false.
pub fn witness_confirms(report: &PropertyReport) -> Result<bool> {
    let Some(w) = &report.witness else {
        return Ok(false);
    };
    let level = report.level();
    use Property::*;
    match report.property {
        ClosedMatchesRecursive | SplitClosedMatchesRecursive | UnitRowColumn | Diagonal | Antisymmetry
        | EqualDegreeCutoffBitsDiffer | CutoffPhiIsOne | UnifiedFormula | SplitReduction
        | PaddingIndependence => match w.indices[..] {
            [a, b] => twist_laws::recheck_pair(report.property, level, a, b),
            _ => Ok(false),
        },
        TableInvariants => Ok(!build_table(report.signature, DEFAULT_TABLE_CAP)?.check_invariants().holds),
        Commutativity | Associativity | LeftAlternativity | RightAlternativity | Flexibility
        | NormMultiplicativity => law_violated(report.property, &w.elements, Engine::Doubling),
        EnginesAgreeOnBasis | EnginesAgreeOnDense | GeneratorAnchoring | ConjugationInvolution
        | ConjugationAntiAutomorphism | NormScalar => laws::engine_witness_violates(report, w),
        RelationGSquared | RelationGConjugate | RelationAGb | RelationAgB | RelationGaBg | RelationAg
        | RelationGa | RelationGaB | RelationABg | RelationGaGb | RelationAgBg => match &w.elements[..] {
            [a, b] => Ok(!relation_holds(report.property, a, b, report.signature)?),
            _ => Ok(false),
        },
        ZeroDivisorFree => zero_divisors::is_zero_divisor_pair(&w.elements),
    }
}

/// True when the outcome matches expectations and any failure is backed by a
/// witness that re-verifies.
pub fn outcome_is_sound(report: &PropertyReport) -> Result<bool> {
    if !report.matches_expectation() {
        return Ok(false);
    }
    Ok(report.holds || witness_confirms(report)?)
}

/// Named groups of checks, as exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    TwistLaws,
    AlgebraLaws,
    Relations,
    Engines,
    ZeroDivisors,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::TwistLaws,
        Suite::AlgebraLaws,
        Suite::Relations,
        Suite::Engines,
        Suite::ZeroDivisors,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TwistLaws => "twist-laws",
            Suite::AlgebraLaws => "algebra-laws",
            Suite::Relations => "relations",
            Suite::Engines => "engines",
            Suite::ZeroDivisors => "zero-divisors",
        }
    }

    pub fn from_name(name: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::Parse(format!("unknown suite {name:?}")))
    }
}

/// Settings shared by all suites when run through [`run_suite`].
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub samples: u64,
    pub seed: u64,
    pub zero_divisor_budget: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            samples: 200,
            seed: 0,
            zero_divisor_budget: 1 << 24,
        }
    }
}

/// Runs one suite against one signature. Twist laws only look at the level
/// (they cover both the standard and split twist) and switch to sampling
/// above [`EXHAUSTIVE_PAIR_LEVEL`]; the relation suite needs a standard
/// signature of level at least 1 and works one level below it.
pub fn run_suite(suite: Suite, sig: AlgebraSignature, config: &SuiteConfig) -> Result<Vec<PropertyReport>> {
    match suite {
        Suite::TwistLaws if sig.level() <= EXHAUSTIVE_PAIR_LEVEL => verify_twist_laws(sig.level()),
        Suite::TwistLaws => verify_twist_laws_sampled(sig.level(), config.samples.max(1 << 16), config.seed),
        Suite::AlgebraLaws => verify_algebra_laws(sig, config.samples, config.seed),
        Suite::Relations => {
            if sig.kind() != crate::algebra::SignatureKind::Standard || sig.level() == 0 {
                return Err(Error::Unsupported(
                    "the relations suite runs on standard signatures of level >= 1".into(),
                ));
            }
            verify_relations(sig.level() - 1, config.samples, config.seed)
        }
        Suite::Engines => verify_engines(sig, config.samples, config.seed),
        Suite::ZeroDivisors => Ok(vec![verify_zero_divisors(sig, config.zero_divisor_budget)?]),
    }
}
