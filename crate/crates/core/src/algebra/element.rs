use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use super::product::{doubling_conjugate, doubling_product, twist_product};
use super::signature::AlgebraSignature;
use super::Scalar;
use crate::error::{Error, Result};
use crate::twist::BasisIndex;

/// Largest level for which dense elements may be allocated.
pub const MAX_ELEMENT_LEVEL: u32 = 24;

/// Selects the multiplication engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    /// Bilinear expansion with closed-form basis signs.
    Twist,
    /// Recursive doubling construction.
    Doubling,
}

/// Dense element of a Cayley-Dickson algebra with exact rational coefficients;
/// `coeffs[A]` multiplies `e_A`.
#[derive(Clone, Debug)]
pub struct Element {
    signature: AlgebraSignature,
    coeffs: Vec<Scalar>,
}

fn check_element_level(sig: &AlgebraSignature) -> Result<()> {
    if sig.level() > MAX_ELEMENT_LEVEL {
        return Err(Error::LevelTooLarge {
            level: sig.level(),
            max: MAX_ELEMENT_LEVEL,
        });
    }
    Ok(())
}

impl Element {
    pub fn zero(sig: AlgebraSignature) -> Result<Self> {
        check_element_level(&sig)?;
        Ok(Element {
            signature: sig,
            coeffs: vec![Scalar::zero(); sig.dim()],
        })
    }

    pub fn one(sig: AlgebraSignature) -> Result<Self> {
        Self::basis(sig, BasisIndex::ZERO)
    }

    /// The basis element `e_index`.
    pub fn basis(sig: AlgebraSignature, index: BasisIndex) -> Result<Self> {
        index.check_level(sig.level())?;
        let mut x = Self::zero(sig)?;
        x.coeffs[index.0 as usize] = Scalar::one();
        Ok(x)
    }

    /// Generator `g_step`, i.e. `e_{2^step}`.
    pub fn generator(sig: AlgebraSignature, step: u32) -> Result<Self> {
        if step >= sig.level() {
            return Err(Error::IndexOutOfRange {
                index: 1u64 << step.min(63),
                level: sig.level(),
            });
        }
        Self::basis(sig, BasisIndex(1 << step))
    }

    pub fn from_coeffs(sig: AlgebraSignature, coeffs: Vec<Scalar>) -> Result<Self> {
        check_element_level(&sig)?;
        if coeffs.len() != sig.dim() {
            return Err(Error::LengthMismatch {
                expected: sig.dim(),
                actual: coeffs.len(),
            });
        }
        Ok(Element {
            signature: sig,
            coeffs,
        })
    }

    pub fn from_integers(sig: AlgebraSignature, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(
            sig,
            coeffs.iter().map(|&c| Scalar::from_integer(BigInt::from(c))).collect(),
        )
    }

    /// Parses the comma-separated text form `c0,c1,...` (e.g. `0,1,-3/2,0`).
    pub fn parse(sig: AlgebraSignature, text: &str) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<Scalar>()
                    .map_err(|_| Error::Parse(format!("not a rational number: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(sig, coeffs)
    }

    /// Integer coefficients drawn uniformly from `-bound..=bound`.
    pub fn random_integer<R: Rng + ?Sized>(sig: AlgebraSignature, rng: &mut R, bound: i64) -> Result<Self> {
        check_element_level(&sig)?;
        let coeffs = (0..sig.dim())
            .map(|_| Scalar::from_integer(BigInt::from(rng.random_range(-bound..=bound))))
            .collect();
        Self::from_coeffs(sig, coeffs)
    }

    pub fn signature(&self) -> AlgebraSignature {
        self.signature
    }

    pub fn level(&self) -> u32 {
        self.signature.level()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn coeff(&self, index: BasisIndex) -> Option<&Scalar> {
        self.coeffs.get(index.0 as usize)
    }

    pub fn real_part(&self) -> &Scalar {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when every coefficient except the real one vanishes.
    pub fn is_scalar(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Exact comparison; elements of different algebras are not comparable.
    pub fn try_eq(&self, other: &Element) -> Result<bool> {
        self.same_signature(other)?;
        Ok(self.coeffs == other.coeffs)
    }

    fn same_signature(&self, other: &Element) -> Result<()> {
        if self.signature != other.signature {
            return Err(Error::SignatureMismatch {
                left: self.signature,
                right: other.signature,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        self.same_signature(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Element> {
        self.same_signature(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Element, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Element {
        Element {
            signature: self.signature,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Element {
        Element {
            signature: self.signature,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Negates every coefficient except the real one.
    pub fn conjugate(&self) -> Element {
        let mut coeffs = self.coeffs.clone();
        for c in coeffs.iter_mut().skip(1) {
            *c = -&*c;
        }
        Element {
            signature: self.signature,
            coeffs,
        }
    }

    /// Conjugation by its recursive definition `conj(a, b) = (conj(a), -b)`.
    pub fn conjugate_recursive(&self) -> Element {
        Element {
            signature: self.signature,
            coeffs: doubling_conjugate(&self.coeffs, self.level()),
        }
    }

    /// `t(x)` with `x + conj(x) = t(x) 1`.
    pub fn trace(&self) -> Scalar {
        &self.coeffs[0] + &self.coeffs[0]
    }

    /// `n(x)` with `x conj(x) = n(x) 1`, computed by the doubling engine. Fails
    /// with an invariant error if the product is not real.
    pub fn norm(&self) -> Result<Scalar> {
        let product = doubling_product(&self.coeffs, &self.conjugate().coeffs, &self.signature);
        if let Some((i, c)) = product.iter().enumerate().skip(1).find(|(_, c)| !c.is_zero()) {
            return Err(Error::Invariant(format!(
                "x * conj(x) has nonzero coefficient {c} at e{i} in {}",
                self.signature
            )));
        }
        Ok(product.into_iter().next().expect("nonempty"))
    }

    /// Product through the closed-form twist of a standard or split signature.
    pub fn mul_twist(&self, other: &Element) -> Result<Element> {
        self.same_signature(other)?;
        Ok(Element {
            signature: self.signature,
            coeffs: twist_product(&self.coeffs, &other.coeffs, &self.signature)?,
        })
    }

    /// Product through the recursive doubling construction; accepts any
    /// `+-1` gamma vector.
    pub fn mul_doubling(&self, other: &Element) -> Result<Element> {
        self.same_signature(other)?;
        Ok(Element {
            signature: self.signature,
            coeffs: doubling_product(&self.coeffs, &other.coeffs, &self.signature),
        })
    }

    pub fn mul_with(&self, other: &Element, engine: Engine) -> Result<Element> {
        match engine {
            Engine::Twist => self.mul_twist(other),
            Engine::Doubling => self.mul_doubling(other),
        }
    }

    /// Places this element in the low half of a larger algebra whose
    /// gammas extend this element's.
    pub fn embed(&self, sig: AlgebraSignature) -> Result<Element> {
        if sig.level() < self.level() || sig.truncate(self.level()) != self.signature {
            return Err(Error::SignatureMismatch {
                left: self.signature,
                right: sig,
            });
        }
        let mut out = Element::zero(sig)?;
        out.coeffs[..self.coeffs.len()].clone_from_slice(&self.coeffs);
        Ok(out)
    }
}

/// Left-to-right product of the generators selected by the bits of `bits`,
/// evaluated with the doubling engine.
pub fn basis_from_generators(bits: BasisIndex, sig: AlgebraSignature) -> Result<Element> {
    bits.check_level(sig.level())?;
    let mut acc = Element::one(sig)?;
    for step in (0..sig.level()).filter(|&i| bits.bit(i).is_one()) {
        acc = acc.mul_doubling(&Element::generator(sig, step)?)?;
    }
    Ok(acc)
}

/// Panics if the signatures differ; use [`Element::try_eq`] to get an error instead.
impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.try_eq(other)
            .unwrap_or_else(|e| panic!("comparing elements of different algebras: {e}"))
    }
}

impl Eq for Element {}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            signature: self.signature,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
