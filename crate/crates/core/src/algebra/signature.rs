use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::twist::{check_level, MAX_LEVEL};

/// Doubling parameter of one Cayley-Dickson step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gamma {
    MinusOne,
    PlusOne,
}

impl Gamma {
    pub fn as_i8(self) -> i8 {
        match self {
            Gamma::MinusOne => -1,
            Gamma::PlusOne => 1,
        }
    }
}

/// Which twist family a signature belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignatureKind {
    /// Every doubling step uses `gamma = -1`.
    Standard,
    /// `gamma = -1` everywhere except the last step, which uses `+1`.
    Split,
    /// Any other `+-1` pattern; only the doubling engine handles these.
    General,
}

/// Level of an algebra plus the doubling parameter used at each step.
///
/// Bit `i` of the mask is set when step `i` uses `gamma = +1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraSignature {
    level: u32,
    plus_mask: u64,
}

impl AlgebraSignature {
    pub fn standard(level: u32) -> Result<Self> {
        check_level(level)?;
        Ok(AlgebraSignature {
            level,
            plus_mask: 0,
        })
    }

    pub fn split(level: u32) -> Result<Self> {
        check_level(level)?;
        if level == 0 {
            return Err(Error::SplitLevelZero);
        }
        Ok(AlgebraSignature {
            level,
            plus_mask: 1 << (level - 1),
        })
    }

    pub fn from_gammas(gammas: &[Gamma]) -> Result<Self> {
        let level = u32::try_from(gammas.len()).map_err(|_| Error::LevelTooLarge {
            level: u32::MAX,
            max: MAX_LEVEL,
        })?;
        check_level(level)?;
        let plus_mask = gammas
            .iter()
            .enumerate()
            .filter(|(_, g)| **g == Gamma::PlusOne)
            .fold(0u64, |m, (i, _)| m | 1 << i);
        Ok(AlgebraSignature { level, plus_mask })
    }

    /// Parses `-1,1,...` (entries may also be written `+1`).
    pub fn from_gamma_list(list: &str) -> Result<Self> {
        let list = list.trim();
        if list.is_empty() {
            return Self::from_gammas(&[]);
        }
        let gammas = list
            .split(',')
            .map(|t| match t.trim() {
                "-1" => Ok(Gamma::MinusOne),
                "1" | "+1" => Ok(Gamma::PlusOne),
                other => Err(Error::Parse(format!("gamma entries must be +1 or -1, got {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_gammas(&gammas)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        1usize << self.level
    }

    /// Doubling parameter of step `step` (0-based), if the level has one.
    pub fn gamma(&self, step: u32) -> Option<Gamma> {
        (step < self.level).then(|| {
            if self.plus_mask >> step & 1 == 1 {
                Gamma::PlusOne
            } else {
                Gamma::MinusOne
            }
        })
    }

    pub fn gammas(&self) -> Vec<Gamma> {
        (0..self.level).filter_map(|i| self.gamma(i)).collect()
    }

    pub fn kind(&self) -> SignatureKind {
        if self.plus_mask == 0 {
            SignatureKind::Standard
        } else if self.level > 0 && self.plus_mask == 1 << (self.level - 1) {
            SignatureKind::Split
        } else {
            SignatureKind::General
        }
    }

    pub fn has_closed_form(&self) -> bool {
        self.kind() != SignatureKind::General
    }

    /// The same gammas truncated to the first `level` steps.
    pub fn truncate(&self, level: u32) -> AlgebraSignature {
        let level = level.min(self.level);
        AlgebraSignature {
            level,
            plus_mask: self.plus_mask & ((1u64 << level) - 1),
        }
    }

    /// `standard`, `split`, or `gamma:<list>`.
    pub fn kind_label(&self) -> String {
        match self.kind() {
            SignatureKind::Standard => "standard".into(),
            SignatureKind::Split => "split".into(),
            SignatureKind::General => {
                let list: Vec<String> = self.gammas().iter().map(|g| g.as_i8().to_string()).collect();
                format!("gamma:{}", list.join(","))
            }
        }
    }
}

impl fmt::Display for AlgebraSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} kind={}", self.level, self.kind_label())
    }
}

impl fmt::Debug for AlgebraSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `n=<level> kind=standard|split|gamma:<list>`. Fields may be
/// separated by whitespace or `;`. A missing `kind` means standard; for
/// `gamma:` the list length must match the level.
impl FromStr for AlgebraSignature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut level = None;
        let mut kind = None;
        for field in s.split(|c: char| c.is_whitespace() || c == ';').filter(|t| !t.is_empty()) {
            match field.split_once('=') {
                Some(("n", v)) => {
                    level = Some(
                        v.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad level {v:?}")))?,
                    )
                }
                Some(("kind", v)) => kind = Some(v.to_string()),
                _ => return Err(Error::Parse(format!("unexpected signature field {field:?}"))),
            }
        }
        let level = level.ok_or_else(|| Error::Parse("signature needs n=<level>".into()))?;
        match kind.as_deref().unwrap_or("standard") {
            "standard" => Self::standard(level),
            "split" => Self::split(level),
            other => {
                let list = other
                    .strip_prefix("gamma:")
                    .ok_or_else(|| Error::Parse(format!("unknown kind {other:?}")))?;
                let sig = Self::from_gamma_list(list)?;
                if sig.level != level {
                    return Err(Error::Parse(format!(
                        "gamma list has {} entries but n={level}",
                        sig.level
                    )));
                }
                Ok(sig)
            }
        }
    }
}
