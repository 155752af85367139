//! Run configuration: JSON file via --config, overridden by flags.

use std::path::{Path, PathBuf};

use hypinfl::field::FieldDescriptor;
use hypinfl::Error;
use serde::{Deserialize, Serialize};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "HYPINFL_OUT_DIR";

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// "Q", "R", "Fq:p=13,n=1", "Q(a)", "C((t))".
    pub field: Option<String>,
    /// Curve polynomial in x; parameters of ℚ(a)-type fields may appear.
    pub f: Option<String>,
    pub ell: Option<usize>,
    /// Genus: with no `f`, a random squarefree f of degree 2g+1 is drawn from `seed`.
    pub g: Option<usize>,
    pub n: Option<usize>,
    /// "weierstrass" or "legendre".
    pub family: Option<String>,
    pub out_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    pub max_prec: Option<usize>,
    pub prime_bound: Option<u64>,
    /// Sweep grid as exact rationals "lo:hi:step".
    pub grid: Option<String>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
        let cfg: RunConfig = serde_json::from_str(&text).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: format!("{}: {e}", path.display()),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Fields set in `other` win.
    pub fn merged(self, other: RunConfig) -> RunConfig {
        RunConfig {
            field: other.field.or(self.field),
            f: other.f.or(self.f),
            ell: other.ell.or(self.ell),
            g: other.g.or(self.g),
            n: other.n.or(self.n),
            family: other.family.or(self.family),
            out_dir: other.out_dir.or(self.out_dir),
            seed: other.seed.or(self.seed),
            max_prec: other.max_prec.or(self.max_prec),
            prime_bound: other.prime_bound.or(self.prime_bound),
            grid: other.grid.or(self.grid),
        }
    }

    /// Rejects characteristic 2 and malformed field specs up front.
    pub fn validate(&self) -> Result<(), Error> {
        if let Some(f) = &self.field {
            f.parse::<FieldDescriptor>()?;
        }
        Ok(())
    }

    pub fn field_descriptor(&self) -> Result<FieldDescriptor, Error> {
        self.field.as_deref().unwrap_or("Q").parse()
    }

    /// Explicit setting, then the environment, then ".".
    pub fn out_dir(&self) -> PathBuf {
        self.out_dir
            .clone()
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."))
    }

    pub fn require_ell(&self) -> Result<usize, Error> {
        self.ell.ok_or_else(|| Error::Precondition("--ell is required".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_two_rejected() {
        let cfg = RunConfig {
            field: Some("Fq:p=2".into()),
            ..Default::default()
        };
        assert_eq!(cfg.validate(), Err(Error::CharacteristicTwo));
    }

    #[test]
    fn flags_override_file() {
        let file = RunConfig {
            field: Some("Q".into()),
            ell: Some(2),
            ..Default::default()
        };
        let flags = RunConfig {
            ell: Some(5),
            ..Default::default()
        };
        let m = file.merged(flags);
        assert_eq!((m.field.as_deref(), m.ell), (Some("Q"), Some(5)));
    }

    #[test]
    fn json_roundtrip() {
        let cfg = RunConfig {
            field: Some("Fq:p=13,n=1".into()),
            f: Some("x^3 + x + 2".into()),
            ell: Some(5),
            seed: Some(7),
            ..Default::default()
        };
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), cfg);
    }
}
