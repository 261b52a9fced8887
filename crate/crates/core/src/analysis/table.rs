use num_traits::{One, Zero};

use super::report::{Property, PropertyReport, Witness};
use crate::algebra::{twist_parity_fn, AlgebraSignature, Element, SignedIndex};
use crate::error::{Error, Result};
use crate::twist::{BasisIndex, Sign};

/// Default largest level [`build_table`] will allocate (16M entries).
pub const DEFAULT_TABLE_CAP: u32 = 12;

/// Largest level for which tables may be derived from the doubling engine.
pub const DOUBLING_TABLE_CAP: u32 = 10;

/// Full `2^n x 2^n` table of basis products, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicationTable {
    signature: AlgebraSignature,
    entries: Vec<SignedIndex>,
}

/// Fills every entry from the closed-form twist.
pub fn build_table(sig: AlgebraSignature, cap: u32) -> Result<MultiplicationTable> {
    if sig.level() > cap {
        return Err(Error::TableCapExceeded {
            level: sig.level(),
            cap,
        });
    }
    let parity = twist_parity_fn(&sig)?;
    let dim = sig.dim() as u32;
    let mut entries = Vec::with_capacity(sig.dim() * sig.dim());
    for a in 0..dim {
        entries.extend((0..dim).map(|b| SignedIndex {
            sign: if parity(a, b) { Sign::Negative } else { Sign::Positive },
            index: BasisIndex(a ^ b),
        }));
    }
    Ok(MultiplicationTable {
        signature: sig,
        entries,
    })
}

/// Derives every entry by multiplying basis elements with the doubling engine.
/// Works for any gamma vector.
pub fn build_table_by_doubling(sig: AlgebraSignature) -> Result<MultiplicationTable> {
    if sig.level() > DOUBLING_TABLE_CAP {
        return Err(Error::TableCapExceeded {
            level: sig.level(),
            cap: DOUBLING_TABLE_CAP,
        });
    }
    let dim = sig.dim() as u32;
    let basis: Vec<Element> = (0..dim)
        .map(|a| Element::basis(sig, BasisIndex(a)))
        .collect::<Result<_>>()?;
    let mut entries = Vec::with_capacity(sig.dim() * sig.dim());
    for x in &basis {
        for y in &basis {
            entries.push(as_signed_basis(&x.mul_doubling(y)?)?);
        }
    }
    Ok(MultiplicationTable {
        signature: sig,
        entries,
    })
}

/// Reads `+-e_k` back from an element, failing if it is anything else.
pub fn as_signed_basis(x: &Element) -> Result<SignedIndex> {
    let mut found = None;
    for (i, c) in x.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_one() {
            Sign::Positive
        } else if (-c).is_one() {
            Sign::Negative
        } else {
            return Err(Error::Invariant(format!("coefficient {c} at e{i} is not +-1")));
        };
        if found.is_some() {
            return Err(Error::Invariant(format!("{x} is not a signed basis element")));
        }
        found = Some(SignedIndex {
            sign,
            index: BasisIndex(i as u32),
        });
    }
    found.ok_or_else(|| Error::Invariant("product of basis elements vanished".into()))
}

impl MultiplicationTable {
    pub fn signature(&self) -> AlgebraSignature {
        self.signature
    }

    pub fn dim(&self) -> usize {
        self.signature.dim()
    }

    /// `e_a e_b`; panics if either index is out of range.
    pub fn get(&self, a: u32, b: u32) -> SignedIndex {
        let dim = self.dim();
        assert!((a as usize) < dim && (b as usize) < dim, "index out of table range");
        self.entries[a as usize * dim + b as usize]
    }

    pub fn row(&self, a: u32) -> &[SignedIndex] {
        let dim = self.dim();
        &self.entries[a as usize * dim..(a as usize + 1) * dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[SignedIndex]> {
        self.entries.chunks(self.dim())
    }

    pub fn is_negative(&self, a: u32, b: u32) -> bool {
        self.get(a, b).sign.is_negative()
    }

    /// Checks XOR indexing, the positive unit row and column, and that every
    /// row and column is a signed permutation.
    pub fn check_invariants(&self) -> PropertyReport {
        let mut report = PropertyReport::new(Property::TableInvariants, self.signature);
        let dim = self.dim() as u32;
        for a in 0..dim {
            for b in 0..dim {
                let e = self.get(a, b);
                let unit_ok = (a != 0 && b != 0) || e.sign == Sign::Positive;
                report.check(e.index.0 == a ^ b && unit_ok, || Witness::indices([a, b]));
            }
        }
        let mut seen = vec![false; dim as usize];
        for line in 0..dim {
            for by_row in [true, false] {
                seen.fill(false);
                for k in 0..dim {
                    let e = if by_row { self.get(line, k) } else { self.get(k, line) };
                    seen[e.index.0 as usize] = true;
                }
                report.check(seen.iter().all(|&s| s), || Witness::indices([line]));
            }
        }
        report
    }

    /// Signed basis product through the table, for comparison with [`basis_mul`](crate::algebra::basis_mul).
    pub fn lookup(&self, a: BasisIndex, b: BasisIndex) -> Result<SignedIndex> {
        a.check_level(self.signature.level())?;
        b.check_level(self.signature.level())?;
        Ok(self.get(a.0, b.0))
    }
}

/// True when every closed-form entry agrees with `basis_mul`.
#[cfg(test)]
fn agrees_with_basis_mul(table: &MultiplicationTable) -> Result<bool> {
    let dim = table.dim() as u32;
    for a in 0..dim {
        for b in 0..dim {
            if crate::algebra::basis_mul(BasisIndex(a), BasisIndex(b), &table.signature())? != table.get(a, b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
