//! Exhaustive and sampled checks of the twist identities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{Property, PropertyReport, Witness};
use crate::algebra::AlgebraSignature;
use crate::error::{Error, Result};
use crate::twist::{deg, ell, phi, sigma_closed, sigma_split_closed, BasisIndex, Bit, RecursiveTwist};

/// Largest level checked on every index pair.
pub const EXHAUSTIVE_PAIR_LEVEL: u32 = 8;

/// How much the padding-independence check raises the level by.
const PADDING: u32 = 3;

/// The five cases of the closed form, evaluated term by term through the
/// public `deg`, `ell` and `phi` functions. Independent of the bit-twiddling
/// evaluator behind [`sigma_closed`].
pub fn sigma_by_cases(a: BasisIndex, b: BasisIndex, level: u32) -> Result<Bit> {
    a.check_level(level)?;
    b.check_level(level)?;
    if a.0 == 0 || b.0 == 0 {
        return Ok(Bit::ZERO);
    }
    if a == b {
        return Ok(Bit::ONE);
    }
    let l = ell(a, b)?;
    let sum = phi_sum(a, b, l, level);
    let (deg_a, deg_b) = (deg(a)?, deg(b)?);
    Ok(if deg_a > deg_b {
        b.bit(l) + sum
    } else if deg_a < deg_b {
        Bit::ONE + a.bit(l) + sum
    } else {
        a.bit(l) + sum
    })
}

/// Single-formula variant valid for nonzero `a != b` with `deg a >= deg b`:
/// `delta(deg a, deg b) + b_l + sum_{i=l}^{n-1} phi(a_i, b_i)`.
pub fn sigma_unified(a: BasisIndex, b: BasisIndex, level: u32) -> Result<Bit> {
    let l = ell(a, b)?;
    let (deg_a, deg_b) = (deg(a)?, deg(b)?);
    if deg_a < deg_b {
        return Err(Error::Unsupported(format!("unified form needs deg {a} >= deg {b}")));
    }
    Ok(Bit::from(deg_a == deg_b) + b.bit(l) + phi_sum(a, b, l, level))
}

fn phi_sum(a: BasisIndex, b: BasisIndex, from: u32, level: u32) -> Bit {
    (from..level).fold(Bit::ZERO, |acc, i| acc + phi(a.bit(i), b.bit(i)))
}

/// Evaluates every twist identity at one index pair. Each flag is `None` when
/// the identity does not apply to the pair.
struct PairOutcome {
    closed_vs_recursive: bool,
    split_closed_vs_recursive: Option<bool>,
    unit: Option<bool>,
    diagonal: Option<bool>,
    antisymmetry: Option<bool>,
    cutoff_equal_degree: Option<bool>,
    cutoff_phi: Option<bool>,
    unified: Option<bool>,
    split_reduction: Option<bool>,
    padding: bool,
}

fn evaluate_pair(rec: &mut RecursiveTwist, a: u32, b: u32, level: u32) -> Result<PairOutcome> {
    let (ia, ib) = (BasisIndex(a), BasisIndex(b));
    let closed = sigma_closed(ia, ib, level)?.parity();
    let recursive = rec.sigma(ia, ib).parity();
    let distinct_nonzero = a != 0 && b != 0 && a != b;

    let (split_closed_vs_recursive, split_reduction) = if level > 0 {
        let top = level - 1;
        let top_product = ia.bit(top) * ib.bit(top);
        let split_closed = sigma_split_closed(ia, ib, level)?.parity();
        let split_rec = rec.sigma_split(ia, ib, level)?.parity();
        // both routes: closed forms, and the two recursions
        let reduction = split_closed + closed == top_product && split_rec + recursive == top_product;
        (Some(split_closed == split_rec), Some(reduction))
    } else {
        (None, None)
    };

    let cutoff_equal_degree = if distinct_nonzero && deg(ia)? == deg(ib)? {
        let l = ell(ia, ib)?;
        Some(ia.bit(l) + ib.bit(l) == Bit::ONE)
    } else {
        None
    };
    let cutoff_phi = if distinct_nonzero {
        let l = ell(ia, ib)?;
        Some(phi(ia.bit(l), ib.bit(l)) == Bit::ONE)
    } else {
        None
    };
    let unified = if distinct_nonzero && deg(ia)? >= deg(ib)? {
        Some(sigma_unified(ia, ib, level)? == closed)
    } else {
        None
    };
    let padding = level + PADDING > crate::twist::MAX_LEVEL
        || sigma_by_cases(ia, ib, level)? == sigma_by_cases(ia, ib, level + PADDING)?;

    Ok(PairOutcome {
        closed_vs_recursive: closed == recursive && sigma_by_cases(ia, ib, level)? == closed,
        split_closed_vs_recursive,
        unit: (a == 0 || b == 0).then_some(closed == Bit::ZERO),
        diagonal: (a == b && a != 0).then_some(closed == Bit::ONE),
        antisymmetry: distinct_nonzero.then(|| closed + rec.sigma(ib, ia).parity() == Bit::ONE),
        cutoff_equal_degree,
        cutoff_phi,
        unified,
        split_reduction,
        padding,
    })
}

struct TwistLawSuite {
    reports: Vec<PropertyReport>,
}

impl TwistLawSuite {
    const ORDER: [Property; 10] = [
        Property::ClosedMatchesRecursive,
        Property::SplitClosedMatchesRecursive,
        Property::UnitRowColumn,
        Property::Diagonal,
        Property::Antisymmetry,
        Property::EqualDegreeCutoffBitsDiffer,
        Property::CutoffPhiIsOne,
        Property::UnifiedFormula,
        Property::SplitReduction,
        Property::PaddingIndependence,
    ];

    fn new(level: u32, seed: Option<u64>) -> Result<Self> {
        let standard = AlgebraSignature::standard(level)?;
        let reports = Self::ORDER
            .iter()
            .filter(|p| level > 0 || !matches!(p, Property::SplitClosedMatchesRecursive | Property::SplitReduction))
            .map(|&p| {
                let sig = match p {
                    Property::SplitClosedMatchesRecursive | Property::SplitReduction => {
                        AlgebraSignature::split(level)
                    }
                    _ => Ok(standard),
                }?;
                let r = PropertyReport::new(p, sig);
                Ok(match seed {
                    Some(s) => r.seeded(s),
                    None => r,
                })
            })
            .collect::<Result<_>>()?;
        Ok(TwistLawSuite { reports })
    }

    fn record(&mut self, a: u32, b: u32, outcome: PairOutcome) {
        for r in &mut self.reports {
            let flag = match r.property {
                Property::ClosedMatchesRecursive => Some(outcome.closed_vs_recursive),
                Property::SplitClosedMatchesRecursive => outcome.split_closed_vs_recursive,
                Property::UnitRowColumn => outcome.unit,
                Property::Diagonal => outcome.diagonal,
                Property::Antisymmetry => outcome.antisymmetry,
                Property::EqualDegreeCutoffBitsDiffer => outcome.cutoff_equal_degree,
                Property::CutoffPhiIsOne => outcome.cutoff_phi,
                Property::UnifiedFormula => outcome.unified,
                Property::SplitReduction => outcome.split_reduction,
                Property::PaddingIndependence => Some(outcome.padding),
                _ => None,
            };
            match flag {
                Some(ok) => r.check(ok, || Witness::indices([a, b])),
                None => r.skipped += 1,
            }
        }
    }
}

/// Runs every twist identity on all index pairs of level `level` (at most
/// [`EXHAUSTIVE_PAIR_LEVEL`]). Split-algebra properties use the split
/// signature of the same level and are omitted at level 0.
pub fn verify_twist_laws(level: u32) -> Result<Vec<PropertyReport>> {
    if level > EXHAUSTIVE_PAIR_LEVEL {
        return Err(Error::Unsupported(format!(
            "exhaustive twist checks stop at level {EXHAUSTIVE_PAIR_LEVEL}; use sampling above it"
        )));
    }
    let mut suite = TwistLawSuite::new(level, None)?;
    let mut rec = RecursiveTwist::new();
    let dim = 1u32 << level;
    for a in 0..dim {
        for b in 0..dim {
            let outcome = evaluate_pair(&mut rec, a, b, level)?;
            suite.record(a, b, outcome);
        }
    }
    Ok(suite.reports)
}

/// Same identities on `samples` uniformly random pairs, for levels too large
/// to enumerate.
pub fn verify_twist_laws_sampled(level: u32, samples: u64, seed: u64) -> Result<Vec<PropertyReport>> {
    if level > crate::twist::MAX_LEVEL {
        return Err(Error::LevelTooLarge {
            level,
            max: crate::twist::MAX_LEVEL,
        });
    }
    let mut suite = TwistLawSuite::new(level, Some(seed))?;
    let mut rec = RecursiveTwist::with_capacity_limit(1 << 20);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = 1u64 << level;
    for _ in 0..samples {
        let a = rng.random_range(0..bound) as u32;
        let b = rng.random_range(0..bound) as u32;
        let outcome = evaluate_pair(&mut rec, a, b, level)?;
        suite.record(a, b, outcome);
    }
    Ok(suite.reports)
}

/// Re-evaluates the identity named by `property` at a witness pair; true when
/// the pair still violates it.
pub(crate) fn recheck_pair(property: Property, level: u32, a: u32, b: u32) -> Result<bool> {
    let mut rec = RecursiveTwist::new();
    let o = evaluate_pair(&mut rec, a, b, level)?;
    let flag = match property {
        Property::ClosedMatchesRecursive => Some(o.closed_vs_recursive),
        Property::SplitClosedMatchesRecursive => o.split_closed_vs_recursive,
        Property::UnitRowColumn => o.unit,
        Property::Diagonal => o.diagonal,
        Property::Antisymmetry => o.antisymmetry,
        Property::EqualDegreeCutoffBitsDiffer => o.cutoff_equal_degree,
        Property::CutoffPhiIsOne => o.cutoff_phi,
        Property::UnifiedFormula => o.unified,
        Property::SplitReduction => o.split_reduction,
        Property::PaddingIndependence => Some(o.padding),
        _ => None,
    };
    Ok(flag == Some(false))
}
