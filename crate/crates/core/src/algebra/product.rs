//! The two multiplication engines.

use num_traits::Zero;

use super::signature::{AlgebraSignature, Gamma, SignatureKind};
use super::Scalar;
use crate::error::{Error, Result};
use crate::twist::{closed_parity, split_closed_parity, BasisIndex, Sign};

/// A basis element with a sign, `+-e_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedIndex {
    pub sign: Sign,
    pub index: BasisIndex,
}

impl SignedIndex {
    pub fn positive(index: BasisIndex) -> Self {
        SignedIndex {
            sign: Sign::Positive,
            index,
        }
    }
}

/// `e_a e_b` from the closed-form twist of a standard or split signature.
pub fn basis_mul(a: BasisIndex, b: BasisIndex, sig: &AlgebraSignature) -> Result<SignedIndex> {
    let level = sig.level();
    a.check_level(level)?;
    b.check_level(level)?;
    let negative = match sig.kind() {
        SignatureKind::Standard => closed_parity(a.0, b.0),
        SignatureKind::Split => split_closed_parity(a.0, b.0, level),
        SignatureKind::General => return Err(Error::UnsupportedSignature(*sig)),
    };
    Ok(SignedIndex {
        sign: if negative { Sign::Negative } else { Sign::Positive },
        index: a.xor(b),
    })
}

/// Sign parity lookup for a signature with a closed form, without range checks.
pub(crate) fn twist_parity_fn(sig: &AlgebraSignature) -> Result<impl Fn(u32, u32) -> bool> {
    let level = sig.level();
    let split = match sig.kind() {
        SignatureKind::Standard => false,
        SignatureKind::Split => true,
        SignatureKind::General => return Err(Error::UnsupportedSignature(*sig)),
    };
    Ok(move |a: u32, b: u32| {
        if split {
            split_closed_parity(a, b, level)
        } else {
            closed_parity(a, b)
        }
    })
}

/// Bilinear expansion over basis pairs. Zero coefficients are skipped.
pub(crate) fn twist_product(x: &[Scalar], y: &[Scalar], sig: &AlgebraSignature) -> Result<Vec<Scalar>> {
    let parity = twist_parity_fn(sig)?;
    let mut out = vec![Scalar::zero(); x.len()];
    let ys: Vec<(u32, &Scalar)> = nonzero_terms(y).collect();
    for (a, xa) in nonzero_terms(x) {
        for &(b, yb) in &ys {
            let term = xa * yb;
            let slot = &mut out[(a ^ b) as usize];
            if parity(a, b) {
                *slot -= term;
            } else {
                *slot += term;
            }
        }
    }
    Ok(out)
}

fn nonzero_terms(v: &[Scalar]) -> impl Iterator<Item = (u32, &Scalar)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as u32, c))
}

/// Recursive doubling product `(a, b)(c, d) = (ac + gamma conj(d) b, da + b conj(c))`,
/// with `gamma` taken from the signature at each step.
pub(crate) fn doubling_product(x: &[Scalar], y: &[Scalar], sig: &AlgebraSignature) -> Vec<Scalar> {
    doubling_at(x, y, sig, sig.level())
}

fn doubling_at(x: &[Scalar], y: &[Scalar], sig: &AlgebraSignature, level: u32) -> Vec<Scalar> {
    debug_assert_eq!(x.len(), 1 << level);
    if level == 0 {
        return vec![&x[0] * &y[0]];
    }
    if x.iter().all(Zero::is_zero) || y.iter().all(Zero::is_zero) {
        return vec![Scalar::zero(); x.len()];
    }
    let half = x.len() / 2;
    let inner = level - 1;
    let (a, b) = x.split_at(half);
    let (c, d) = y.split_at(half);

    let ac = doubling_at(a, c, sig, inner);
    let d_bar_b = doubling_at(&doubling_conjugate(d, inner), b, sig, inner);
    let da = doubling_at(d, a, sig, inner);
    let b_c_bar = doubling_at(b, &doubling_conjugate(c, inner), sig, inner);

    let mut out = Vec::with_capacity(x.len());
    match sig.gamma(inner) {
        Some(Gamma::MinusOne) => out.extend(ac.into_iter().zip(d_bar_b).map(|(p, q)| p - q)),
        Some(Gamma::PlusOne) => out.extend(ac.into_iter().zip(d_bar_b).map(|(p, q)| p + q)),
        None => unreachable!("level {level} within signature"),
    }
    out.extend(da.into_iter().zip(b_c_bar).map(|(p, q)| p + q));
    out
}

/// `conj(a, b) = (conj(a), -b)`, bottoming out at the identity on reals.
pub(crate) fn doubling_conjugate(x: &[Scalar], level: u32) -> Vec<Scalar> {
    if level == 0 {
        return x.to_vec();
    }
    let (low, high) = x.split_at(x.len() / 2);
    let mut out = doubling_conjugate(low, level - 1);
    out.extend(high.iter().map(|c| -c));
    out
}
