//! Twist functions of the standard and split Cayley-Dickson algebras.
//!
//! Basis elements are indexed by integers whose binary digits select the
//! generators: `e_A = g_0^{a_0} g_1^{a_1} ... g_{n-1}^{a_{n-1}}`, multiplied
//! left to right. Every product of basis elements is a signed basis element,
//!
//! ```text
//! e_A e_B = (-1)^sigma(A, B) e_{A xor B}
//! ```
//!
//! and this module computes the exponent `sigma` two ways: a closed form built
//! from `deg`, `phi` and the cutoff index `ell`, and the doubling recursion that
//! peels one generator at a time. The two are independent and are checked
//! against each other exhaustively in the test suites.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest level for which basis indices fit in a [`BasisIndex`].
pub const MAX_LEVEL: u32 = 32;

/// Element of Z_2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bit(bool);

impl Bit {
    pub const ZERO: Bit = Bit(false);
    pub const ONE: Bit = Bit(true);

    pub fn is_one(self) -> bool {
        self.0
    }

    pub fn value(self) -> u8 {
        self.0 as u8
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Self {
        Bit(b)
    }
}

impl Add for Bit {
    type Output = Bit;
    fn add(self, rhs: Bit) -> Bit {
        Bit(self.0 ^ rhs.0)
    }
}

impl AddAssign for Bit {
    fn add_assign(&mut self, rhs: Bit) {
        self.0 ^= rhs.0;
    }
}

impl Mul for Bit {
    type Output = Bit;
    fn mul(self, rhs: Bit) -> Bit {
        Bit(self.0 & rhs.0)
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Index of a basis element; bit `i` says whether generator `g_i` occurs.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct BasisIndex(pub u32);

impl BasisIndex {
    pub const ZERO: BasisIndex = BasisIndex(0);

    pub fn get(self) -> u32 {
        self.0
    }

    /// Binary digit `i`; zero for every `i` past the word size.
    pub fn bit(self, i: u32) -> Bit {
        Bit(i < 32 && (self.0 >> i) & 1 == 1)
    }

    /// Index of the lowest set bit.
    pub fn deg(self) -> Result<u32> {
        deg(self)
    }

    /// Group operation of Z_2^n: bitwise addition without carries.
    pub fn xor(self, other: BasisIndex) -> BasisIndex {
        BasisIndex(self.0 ^ other.0)
    }

    /// Fails unless the index names a basis element of the level-`level` algebra.
    pub fn check_level(self, level: u32) -> Result<()> {
        check_level(level)?;
        if u64::from(self.0) >= 1u64 << level {
            return Err(Error::IndexOutOfRange {
                index: self.0.into(),
                level,
            });
        }
        Ok(())
    }
}

impl From<u32> for BasisIndex {
    fn from(v: u32) -> Self {
        BasisIndex(v)
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn check_level(level: u32) -> Result<()> {
    if level > MAX_LEVEL {
        return Err(Error::LevelTooLarge {
            level,
            max: MAX_LEVEL,
        });
    }
    Ok(())
}

/// Exponent of -1 in a basis product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct TwistValue(Bit);

impl TwistValue {
    pub fn parity(self) -> Bit {
        self.0
    }

    pub fn is_negative(self) -> bool {
        self.0.is_one()
    }

    pub fn sign(self) -> Sign {
        if self.is_negative() {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }
}

impl From<Bit> for TwistValue {
    fn from(b: Bit) -> Self {
        TwistValue(b)
    }
}

impl From<bool> for TwistValue {
    fn from(b: bool) -> Self {
        TwistValue(Bit(b))
    }
}

impl fmt::Display for TwistValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// Index of the lowest nonzero binary digit of `a`.
pub fn deg(a: BasisIndex) -> Result<u32> {
    if a.0 == 0 {
        return Err(Error::DegreeOfZero);
    }
    Ok(a.0.trailing_zeros())
}

/// `a + b + ab` over Z_2, i.e. logical or.
pub fn phi(a: Bit, b: Bit) -> Bit {
    a + b + a * b
}

/// Cutoff index `max(deg a, deg b, deg(a xor b))` for nonzero, distinct indices.
pub fn ell(a: BasisIndex, b: BasisIndex) -> Result<u32> {
    if a.0 == 0 || b.0 == 0 || a == b {
        return Err(Error::CutoffUndefined { a: a.0, b: b.0 });
    }
    Ok(deg(a)?.max(deg(b)?).max(deg(a.xor(b))?))
}

/// Closed-form twist of the level-`level` Cayley-Dickson algebra.
pub fn sigma_closed(a: BasisIndex, b: BasisIndex, level: u32) -> Result<TwistValue> {
    a.check_level(level)?;
    b.check_level(level)?;
    Ok(closed_parity(a.0, b.0).into())
}

/// Closed-form twist with no range checks. Indices must lie below `2^level`
/// of whatever algebra the caller has in mind; the value does not depend on
/// the level beyond that.
#[inline]
pub fn closed_parity(a: u32, b: u32) -> bool {
    if a == 0 || b == 0 {
        return false;
    }
    if a == b {
        return true;
    }
    let (deg_a, deg_b) = (a.trailing_zeros(), b.trailing_zeros());
    let l = deg_a.max(deg_b).max((a ^ b).trailing_zeros());
    // sum_{i >= l} phi(a_i, b_i) counts the set bits of a | b from l upward
    let tail = ((a | b) >> l).count_ones() & 1 == 1;
    let lead = match deg_a.cmp(&deg_b) {
        Ordering::Greater => (b >> l) & 1 == 1,
        Ordering::Less => (a >> l) & 1 == 0,
        Ordering::Equal => (a >> l) & 1 == 1,
    };
    lead ^ tail
}

/// Closed-form twist of the split algebra of level `level`, whose last
/// doubling step uses `gamma = +1`.
pub fn sigma_split_closed(a: BasisIndex, b: BasisIndex, level: u32) -> Result<TwistValue> {
    if level == 0 {
        return Err(Error::SplitLevelZero);
    }
    let sigma = sigma_closed(a, b, level)?;
    let top = level - 1;
    Ok((sigma.parity() + a.bit(top) * b.bit(top)).into())
}

#[inline]
pub(crate) fn split_closed_parity(a: u32, b: u32, level: u32) -> bool {
    let top = 1u32 << (level - 1);
    closed_parity(a, b) ^ (a & b & top != 0)
}

/// Memoized evaluator of the doubling recursion
///
/// ```text
/// sigma(A + a 2^n, B + b 2^n)
///     = sigma(A, B)(1 + b) + sigma(B, A) b + sigma(B, B) a + a b
/// ```
///
/// seeded with `sigma(0, 0) = sigma(0, 1) = sigma(1, 0) = 0` and
/// `sigma(1, 1) = 1` (from `g_0^2 = -1`). Each call peels the highest set bit
/// of either operand. The cache belongs to the evaluator, so an instance is
/// confined to one thread.
#[derive(Debug, Default, Clone)]
pub struct RecursiveTwist {
    memo: HashMap<(u32, u32), bool>,
    capacity: Option<usize>,
}

impl RecursiveTwist {
    pub fn new() -> Self {
        Self::default()
    }

    /// An evaluator whose cache is dropped whenever it grows past `capacity`.
    pub fn with_capacity_limit(capacity: usize) -> Self {
        RecursiveTwist {
            memo: HashMap::new(),
            capacity: Some(capacity),
        }
    }

    pub fn cache_len(&self) -> usize {
        self.memo.len()
    }

    pub fn sigma(&mut self, a: BasisIndex, b: BasisIndex) -> TwistValue {
        if let Some(cap) = self.capacity {
            if self.memo.len() > cap {
                self.memo.clear();
            }
        }
        self.eval(a.0, b.0).into()
    }

    /// One unfolding of the split recursion at the top level `level - 1`,
    /// with inner values from the standard recursion.
    pub fn sigma_split(&mut self, a: BasisIndex, b: BasisIndex, level: u32) -> Result<TwistValue> {
        if level == 0 {
            return Err(Error::SplitLevelZero);
        }
        a.check_level(level)?;
        b.check_level(level)?;
        let top = 1u32 << (level - 1);
        let (a_hi, b_hi) = (a.0 & top != 0, b.0 & top != 0);
        let (a_lo, b_lo) = (a.0 & !top, b.0 & !top);
        let mut v = false;
        if !b_hi {
            v ^= self.eval(a_lo, b_lo);
        } else {
            v ^= self.eval(b_lo, a_lo);
        }
        if a_hi {
            v ^= self.eval(b_lo, b_lo);
        }
        Ok(v.into())
    }

    fn eval(&mut self, a: u32, b: u32) -> bool {
        if a <= 1 && b <= 1 {
            return a & b == 1;
        }
        if let Some(&v) = self.memo.get(&(a, b)) {
            return v;
        }
        let top = 1u32 << (31 - (a | b).leading_zeros());
        let (a_hi, b_hi) = (a & top != 0, b & top != 0);
        let (a_lo, b_lo) = (a & !top, b & !top);
        // (1 + b) kills the first term exactly when the second survives
        let mut v = if b_hi {
            self.eval(b_lo, a_lo)
        } else {
            self.eval(a_lo, b_lo)
        };
        if a_hi {
            v ^= self.eval(b_lo, b_lo);
        }
        v ^= a_hi && b_hi;
        self.memo.insert((a, b), v);
        v
    }
}

thread_local! {
    static RECURSIVE: RefCell<RecursiveTwist> =
        RefCell::new(RecursiveTwist::with_capacity_limit(1 << 16));
}

/// Twist of the standard algebra by the doubling recursion. Uses a
/// thread-local memo table.
pub fn sigma_recursive(a: BasisIndex, b: BasisIndex) -> TwistValue {
    RECURSIVE.with(|r| r.borrow_mut().sigma(a, b))
}

/// Twist of the split algebra of level `level` by the split recursion.
pub fn sigma_split_recursive(a: BasisIndex, b: BasisIndex, level: u32) -> Result<TwistValue> {
    RECURSIVE.with(|r| r.borrow_mut().sigma_split(a, b, level))
}
