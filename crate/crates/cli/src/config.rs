use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use ik_core::evalrep::SpectralConvention;
use ik_core::scalar::mp::DEFAULT_DIGITS;
use ik_core::spinchain::MAX_SITES_NUMERIC;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Numeric,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Numeric => "numeric",
        })
    }
}

/// Settings shared by every command. The same keys are accepted as flags
/// and in a flat JSON file; flags win.
#[derive(Args, Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    /// Exponent of zeta at e_0.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s0: Option<i64>,
    /// Exponent of zeta at e_1.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s1: Option<i64>,
    #[arg(long, global = true, value_enum)]
    pub backend: Option<Backend>,
    /// Significant decimal digits of the numeric backend.
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Fock space truncation.
    #[arg(long, global = true)]
    pub nf: Option<usize>,
    /// Chain length.
    #[arg(long, global = true)]
    pub sites: Option<usize>,
    /// Series order.
    #[arg(long, global = true)]
    pub order: Option<usize>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Override of the command's tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write JSON here.
    #[arg(long, global = true, alias = "export")]
    pub output: Option<PathBuf>,
    /// Fixed v = q^(1/2) instead of a sampled one.
    #[arg(long, global = true)]
    pub v: Option<f64>,
    /// Fixed spectral parameter, e.g. 0.5+0.1i.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub zeta: Option<String>,
}

impl Settings {
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| ConfigError(format!("{}: {e}", path.display())))
    }

    /// `self` with every field set in `flags` replaced.
    pub fn overridden_by(self, flags: Settings) -> Settings {
        Settings {
            s0: flags.s0.or(self.s0),
            s1: flags.s1.or(self.s1),
            backend: flags.backend.or(self.backend),
            precision: flags.precision.or(self.precision),
            nf: flags.nf.or(self.nf),
            sites: flags.sites.or(self.sites),
            order: flags.order.or(self.order),
            samples: flags.samples.or(self.samples),
            seed: flags.seed.or(self.seed),
            tol: flags.tol.or(self.tol),
            output: flags.output.or(self.output),
            v: flags.v.or(self.v),
            zeta: flags.zeta.or(self.zeta),
        }
    }
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Validated settings with defaults filled in.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub conv: SpectralConvention,
    pub backend: Backend,
    pub precision: u32,
    pub nf: usize,
    pub sites: usize,
    pub order: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: Option<f64>,
    pub output: Option<PathBuf>,
    pub v: Option<f64>,
    pub zeta: Option<(f64, f64)>,
}

pub const MIN_NUMERIC_DIGITS: u32 = 50;

impl RunConfig {
    pub fn resolve(s: Settings, default_backend: Backend) -> Result<Self, ConfigError> {
        let err = |m: String| Err(ConfigError(m));
        let conv = SpectralConvention::new(s.s0.unwrap_or(1), s.s1.unwrap_or(0))
            .map_err(|_| ConfigError("s = s0 + 2 s1 must not vanish".into()))?;
        let backend = s.backend.unwrap_or(default_backend);
        let precision = s.precision.unwrap_or(DEFAULT_DIGITS);
        if backend == Backend::Numeric && precision < MIN_NUMERIC_DIGITS {
            return err(format!("precision must be at least {MIN_NUMERIC_DIGITS} digits, got {precision}"));
        }
        let nf = s.nf.unwrap_or(8);
        if !(6..=40).contains(&nf) {
            return err(format!("nf must lie in 6..=40, got {nf}"));
        }
        let sites = s.sites.unwrap_or(3);
        if !(1..=MAX_SITES_NUMERIC).contains(&sites) {
            return err(format!("sites must lie in 1..={MAX_SITES_NUMERIC}, got {sites}"));
        }
        let samples = s.samples.unwrap_or(5);
        if samples == 0 {
            return err("samples must be positive".into());
        }
        if let Some(t) = s.tol {
            if !(t > 0.0 && t.is_finite()) {
                return err(format!("tol must be positive, got {t}"));
            }
        }
        if let Some(v) = s.v {
            if !(v > 0.0 && v.is_finite()) || v == 1.0 {
                return err(format!("v must be positive and different from 1, got {v}"));
            }
        }
        let zeta = match s.zeta {
            Some(z) => Some(parse_complex(&z)?),
            None => None,
        };
        Ok(RunConfig {
            conv,
            backend,
            precision,
            nf,
            sites,
            order: s.order.unwrap_or(8),
            samples,
            seed: s.seed.unwrap_or(1),
            tol: s.tol,
            output: s.output,
            v: s.v,
            zeta,
        })
    }

    pub fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

pub fn parse_complex(s: &str) -> Result<(f64, f64), ConfigError> {
    let c = Complex64::from_str(s.trim()).map_err(|_| ConfigError(format!("cannot parse complex number {s:?}")))?;
    if !(c.re.is_finite() && c.im.is_finite()) || c.norm() == 0.0 {
        return Err(ConfigError(format!("zeta must be finite and nonzero, got {s:?}")));
    }
    Ok((c.re, c.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("0.5+0.1i").unwrap(), (0.5, 0.1));
        assert_eq!(parse_complex("0.5").unwrap(), (0.5, 0.0));
        assert_eq!(parse_complex("-0.2i").unwrap(), (0.0, -0.2));
        assert!(parse_complex("0").is_err());
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file: Settings = serde_json::from_str(r#"{"s0": 3, "s1": 1, "samples": 4}"#).unwrap();
        let flags = Settings { samples: Some(9), ..Default::default() };
        let merged = file.overridden_by(flags);
        assert_eq!((merged.s0, merged.s1, merged.samples), (Some(3), Some(1), Some(9)));
    }

    #[test]
    fn validation() {
        let bad = Settings { s0: Some(2), s1: Some(-1), ..Default::default() };
        assert!(RunConfig::resolve(bad, Backend::Exact).is_err());
        let low = Settings { precision: Some(30), ..Default::default() };
        assert!(RunConfig::resolve(low.clone(), Backend::Numeric).is_err());
        assert!(RunConfig::resolve(low, Backend::Exact).is_ok());
        let long = Settings { sites: Some(8), ..Default::default() };
        assert!(RunConfig::resolve(long, Backend::Numeric).is_err());
        assert!(serde_json::from_str::<Settings>(r#"{"unknown": 1}"#).is_err());
    }
}
