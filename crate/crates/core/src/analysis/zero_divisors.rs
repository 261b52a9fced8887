use num_bigint::BigInt;

use super::report::{Property, PropertyReport, Witness};
use super::table::{build_table, build_table_by_doubling, MultiplicationTable, DEFAULT_TABLE_CAP};
use crate::algebra::{AlgebraSignature, Element, Scalar};
use crate::error::{Error, Result};

/// Nonzero `x`, `y` with `x y = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroDivisorPair {
    pub x: Element,
    pub y: Element,
    pub product: Element,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroDivisorSearch {
    pub signature: AlgebraSignature,
    pub pairs: Vec<ZeroDivisorPair>,
    /// Candidate pairs examined before stopping.
    pub examined: u64,
    /// True when the whole two-term class fit in the budget.
    pub exhaustive: bool,
}

/// `e_lo + sign * e_hi` with `lo < hi`.
#[derive(Clone, Copy, Debug)]
struct TwoTerm {
    lo: u32,
    hi: u32,
    negative: bool,
}

impl TwoTerm {
    fn to_element(self, sig: AlgebraSignature) -> Result<Element> {
        let mut coeffs = vec![Scalar::from_integer(BigInt::from(0)); sig.dim()];
        coeffs[self.lo as usize] = Scalar::from_integer(BigInt::from(1));
        coeffs[self.hi as usize] = Scalar::from_integer(BigInt::from(if self.negative { -1 } else { 1 }));
        Element::from_coeffs(sig, coeffs)
    }
}

fn two_terms(dim: u32) -> Vec<TwoTerm> {
    let mut out = Vec::new();
    for lo in 0..dim {
        for hi in lo + 1..dim {
            for negative in [false, true] {
                out.push(TwoTerm { lo, hi, negative });
            }
        }
    }
    out
}

/// Whether `(e_a + s e_b)(e_c + t e_d)` vanishes, from basis signs alone.
/// The four products land on `a^c`, `a^d`, `b^c`, `b^d`; with `a != b` and
/// `c != d` they can only cancel in pairs, which needs `a^b == c^d`.
fn vanishes(t: &MultiplicationTable, x: TwoTerm, y: TwoTerm) -> bool {
    if x.lo ^ x.hi != y.lo ^ y.hi {
        return false;
    }
    let s = |a: u32, b: u32| t.get(a, b).sign.as_i8();
    let (xs, ys) = (if x.negative { -1 } else { 1 }, if y.negative { -1 } else { 1 });
    // e_lo e_lo' pairs with e_hi e_hi', e_lo e_hi' with e_hi e_lo'
    s(x.lo, y.lo) + xs * ys * s(x.hi, y.hi) == 0 && ys * s(x.lo, y.hi) + xs * s(x.hi, y.lo) == 0
}

/// Brute-force search over products `(e_a +- e_b)(e_c +- e_d)`, examining at
/// most `budget` candidate pairs in a fixed order. Every hit is recomputed
/// with the doubling engine before it is returned.
pub fn find_zero_divisors(sig: AlgebraSignature, budget: u64) -> Result<ZeroDivisorSearch> {
    let table = if sig.has_closed_form() {
        build_table(sig, DEFAULT_TABLE_CAP)?
    } else {
        build_table_by_doubling(sig)?
    };
    let terms = two_terms(sig.dim() as u32);
    let mut pairs = Vec::new();
    let mut examined = 0u64;
    'search: for &x in &terms {
        for &y in &terms {
            if examined == budget {
                break 'search;
            }
            examined += 1;
            if vanishes(&table, x, y) {
                let (xe, ye) = (x.to_element(sig)?, y.to_element(sig)?);
                let product = xe.mul_doubling(&ye)?;
                if !product.is_zero() {
                    return Err(Error::Invariant(format!(
                        "sign table predicts ({xe})({ye}) = 0 but the doubling engine gives {product}"
                    )));
                }
                pairs.push(ZeroDivisorPair { x: xe, y: ye, product });
            }
        }
    }
    let total = (terms.len() as u64).pow(2);
    Ok(ZeroDivisorSearch {
        signature: sig,
        pairs,
        examined,
        exhaustive: examined == total,
    })
}

/// Whether two-term zero divisors should be absent: only in the standard
/// algebras up to the octonions. Any `gamma = +1` step yields
/// `(1 + g)(1 - g) = 0`.
pub fn zero_divisor_free_expected(sig: &AlgebraSignature) -> bool {
    sig.level() <= 3 && sig.gammas().iter().all(|g| g.as_i8() == -1)
}

/// Runs the search and summarizes it as a report; the witness is the first pair.
pub fn verify_zero_divisors(sig: AlgebraSignature, budget: u64) -> Result<PropertyReport> {
    let search = find_zero_divisors(sig, budget)?;
    let mut report = PropertyReport::new(Property::ZeroDivisorFree, sig).expect(zero_divisor_free_expected(&sig));
    report.checked = search.examined;
    if let Some(p) = search.pairs.first() {
        report.fail(Witness::elements([p.x.clone(), p.y.clone()]));
    }
    Ok(report)
}

/// True when `x`, `y` are nonzero and multiply to zero under the doubling engine.
pub(crate) fn is_zero_divisor_pair(elements: &[Element]) -> Result<bool> {
    match elements {
        [x, y] => Ok(!x.is_zero() && !y.is_zero() && x.mul_doubling(y)?.is_zero()),
        _ => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn none_up_to_octonions() {
        for n in 0..=3 {
            let s = find_zero_divisors(AlgebraSignature::standard(n).unwrap(), u64::MAX).unwrap();
            assert!(s.pairs.is_empty());
            assert!(s.exhaustive);
        }
    }

    #[test]
    fn sedenions_have_verified_pairs() {
        let s = find_zero_divisors(AlgebraSignature::standard(4).unwrap(), u64::MAX).unwrap();
        assert!(!s.pairs.is_empty());
        for p in &s.pairs {
            assert!(!p.x.is_zero() && !p.y.is_zero());
            assert!(p.x.mul_twist(&p.y).unwrap().is_zero());
            assert!(p.product.is_zero());
        }
    }

    #[test]
    fn split_complex_idempotents() {
        let sig = AlgebraSignature::split(1).unwrap();
        let s = find_zero_divisors(sig, u64::MAX).unwrap();
        let plus = Element::parse(sig, "1,1").unwrap();
        let minus = Element::parse(sig, "1,-1").unwrap();
        assert!(s.pairs.iter().any(|p| p.x == plus && p.y == minus));
        assert_eq!(s.examined, 4);
    }

    #[test]
    fn budget_limits_the_search() {
        let sig = AlgebraSignature::standard(4).unwrap();
        let s = find_zero_divisors(sig, 100).unwrap();
        assert_eq!(s.examined, 100);
        assert!(!s.exhaustive);
    }

    #[test]
    fn general_gamma_with_plus_step_has_zero_divisors() {
        let sig = AlgebraSignature::from_gamma_list("-1,1,-1").unwrap();
        assert!(!zero_divisor_free_expected(&sig));
        let r = verify_zero_divisors(sig, u64::MAX).unwrap();
        assert!(!r.holds && r.matches_expectation());
        assert!(is_zero_divisor_pair(&r.witness.unwrap().elements).unwrap());
    }

    #[test]
    fn fast_test_matches_full_product() {
        let sig = AlgebraSignature::standard(4).unwrap();
        let table = build_table(sig, DEFAULT_TABLE_CAP).unwrap();
        let terms = two_terms(16);
        for (i, &x) in terms.iter().enumerate().step_by(7) {
            for &y in terms.iter().skip(i % 5).step_by(3) {
                let full = x.to_element(sig).unwrap().mul_twist(&y.to_element(sig).unwrap()).unwrap();
                assert_eq!(vanishes(&table, x, y), full.is_zero());
            }
        }
    }
}
