//! Runtime tags for the supported base fields.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::prime::is_prime;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldDescriptor {
    Rationals,
    RealsViaRationals,
    /// 𝔽_{p^n}; the modulus is the first monic irreducible of degree n.
    PrimePower { p: u64, n: usize },
    /// ℚ(var).
    RationalFunctions { var: String },
    /// ℚ(var) with ℂ((var)) square classes.
    LaurentViewpoint { var: String },
}

impl FieldDescriptor {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::PrimePower { p, .. } => *p,
            _ => 0,
        }
    }

    fn validate(self) -> Result<Self> {
        if let FieldDescriptor::PrimePower { p, n } = &self {
            if *p == 2 {
                return Err(Error::CharacteristicTwo);
            }
            if !is_prime(*p) {
                return Err(Error::Precondition(format!("{p} is not prime")));
            }
            if *n == 0 {
                return Err(Error::Precondition("extension degree must be ≥ 1".into()));
            }
        }
        Ok(self)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::RealsViaRationals => write!(f, "R"),
            FieldDescriptor::PrimePower { p, n } => write!(f, "Fq:p={p},n={n}"),
            FieldDescriptor::RationalFunctions { var } => write!(f, "Q({var})"),
            FieldDescriptor::LaurentViewpoint { var } => write!(f, "C(({var}))"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    /// Accepts `Q`, `R`, `Fq:p=13`, `Fq:p=3,n=2`, `F13`, `Q(a)`, `C((t))`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("unknown field spec {t:?}"),
        };
        let d = match t {
            "Q" => FieldDescriptor::Rationals,
            "R" => FieldDescriptor::RealsViaRationals,
            _ if t.starts_with("Fq:") => {
                let mut p = None;
                let mut n = 1usize;
                for kv in t[3..].split(',') {
                    let (k, v) = kv.split_once('=').ok_or_else(bad)?;
                    match k.trim() {
                        "p" => p = Some(v.trim().parse::<u64>().map_err(|_| bad())?),
                        "n" => n = v.trim().parse::<usize>().map_err(|_| bad())?,
                        _ => return Err(bad()),
                    }
                }
                FieldDescriptor::PrimePower {
                    p: p.ok_or_else(bad)?,
                    n,
                }
            }
            _ if t.starts_with('F') && t[1..].chars().all(|c| c.is_ascii_digit()) && t.len() > 1 => {
                FieldDescriptor::PrimePower {
                    p: t[1..].parse().map_err(|_| bad())?,
                    n: 1,
                }
            }
            _ if t.starts_with("C((") && t.ends_with("))") => FieldDescriptor::LaurentViewpoint {
                var: t[3..t.len() - 2].to_string(),
            },
            _ if t.starts_with("Q(") && t.ends_with(')') => FieldDescriptor::RationalFunctions {
                var: t[2..t.len() - 1].to_string(),
            },
            _ => return Err(bad()),
        };
        d.validate()
    }
}
