//! Deterministic nonnegative test sequences.
//!
//! Spec strings: `unit:N`, `powerlaw:t:N`, `random:seed:N`, `file:path`.
//! Random sequences use counter-based SplitMix64, so a given `(seed, N)`
//! yields the same values on every platform and in every language that
//! implements the same mixer.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Finite nonnegative sequence `a_1..a_N` with at least one positive entry.
#[derive(Debug, Clone, PartialEq)]
pub struct Sequence {
    values: Vec<f64>,
    label: String,
}

impl Sequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::labelled(values, "inline")
    }

    pub fn labelled(values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Parameter("sequence is empty".into()));
        }
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v >= 0.0))
        {
            return Err(Error::Parameter(format!(
                "entry a_{} = {v} is not a finite nonnegative number",
                i + 1
            )));
        }
        if !values.iter().any(|&v| v > 0.0) {
            return Err(Error::Parameter("sequence has no positive entry".into()));
        }
        Ok(Self {
            values,
            label: label.into(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// 1-based index of the last positive entry.
    pub fn support(&self) -> usize {
        self.values
            .iter()
            .rposition(|&v| v > 0.0)
            .map_or(0, |i| i + 1)
    }

    /// `c * a`, `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Parameter(format!(
                "scale factor {c} must be finite and positive"
            )));
        }
        Self::labelled(
            self.values.iter().map(|v| v * c).collect(),
            format!("{}*{c}", self.label),
        )
    }

    /// Appends `extra` zeros.
    pub fn padded(&self, extra: usize) -> Self {
        let mut values = self.values.clone();
        values.resize(values.len() + extra, 0.0);
        Self {
            values,
            label: self.label.clone(),
        }
    }
}

/// How to build a [`Sequence`].
#[derive(Debug, Clone, PartialEq)]
pub enum SeqSpec {
    UnitPrefix { len: usize },
    PowerLaw { exponent: f64, len: usize },
    Random { seed: u64, len: usize },
    File { path: PathBuf },
}

impl fmt::Display for SeqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqSpec::UnitPrefix { len } => write!(f, "unit:{len}"),
            SeqSpec::PowerLaw { exponent, len } => write!(f, "powerlaw:{exponent}:{len}"),
            SeqSpec::Random { seed, len } => write!(f, "random:{seed}:{len}"),
            SeqSpec::File { path } => write!(f, "file:{}", path.display()),
        }
    }
}

fn parse_len(s: &str) -> Result<usize> {
    let len: usize = s.parse().map_err(|_| {
        Error::Parameter(format!("sequence length {s:?} is not a positive integer"))
    })?;
    if len == 0 {
        return Err(Error::Parameter("sequence length must be >= 1".into()));
    }
    Ok(len)
}

impl FromStr for SeqSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parameter(format!("unrecognized sequence spec {s:?}"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "unit" => Ok(SeqSpec::UnitPrefix {
                len: parse_len(rest)?,
            }),
            "powerlaw" => {
                let (t, n) = rest.split_once(':').ok_or_else(bad)?;
                let exponent: f64 = t.parse().map_err(|_| bad())?;
                if !exponent.is_finite() {
                    return Err(bad());
                }
                Ok(SeqSpec::PowerLaw {
                    exponent,
                    len: parse_len(n)?,
                })
            }
            "random" => {
                let (seed, n) = rest.split_once(':').ok_or_else(bad)?;
                Ok(SeqSpec::Random {
                    seed: seed.parse().map_err(|_| bad())?,
                    len: parse_len(n)?,
                })
            }
            "file" if !rest.is_empty() => Ok(SeqSpec::File {
                path: PathBuf::from(rest),
            }),
            _ => Err(bad()),
        }
    }
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform `[0, 1)` draw number `index` (0-based) of stream `seed`.
pub fn uniform_at(seed: u64, index: u64) -> f64 {
    let bits = mix64(seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)));
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn generate(spec: &SeqSpec) -> Result<Sequence> {
    let label = spec.to_string();
    match *spec {
        SeqSpec::UnitPrefix { len } => Sequence::labelled(vec![1.0; len], label),
        SeqSpec::PowerLaw { exponent, len } => Sequence::labelled(
            (1..=len).map(|n| (n as f64).powf(exponent)).collect(),
            label,
        ),
        SeqSpec::Random { seed, len } => Sequence::labelled(
            (0..len as u64).map(|i| uniform_at(seed, i)).collect(),
            label,
        ),
        SeqSpec::File { ref path } => read_sequence_file(path),
    }
}

/// One nonnegative decimal per line; blank lines and `#` comments are skipped.
pub fn parse_sequence_text(text: &str, label: &str) -> Result<Sequence> {
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| {
            Error::Ingestion(format!("{label}:{}: {line:?} is not a number", i + 1))
        })?;
        if !v.is_finite() || v < 0.0 {
            return Err(Error::Ingestion(format!(
                "{label}:{}: {line:?} is not a finite nonnegative number",
                i + 1
            )));
        }
        values.push(v);
    }
    Sequence::labelled(values, label).map_err(|e| Error::Ingestion(format!("{label}: {e}")))
}

pub fn read_sequence_file(path: &Path) -> Result<Sequence> {
    let label = format!("file:{}", path.display());
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Ingestion(format!("{}: {e}", path.display())))?;
    parse_sequence_text(&text, &label)
}
