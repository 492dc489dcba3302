use crate::report::OutputFormat;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

/// Pseudo-random generator used for all sampled points; echoed in reports.
pub const GENERATOR: &str = "ChaCha8 (rand_chacha 0.3), seed_from_u64(seed), one stream per suite";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Suite {
    Bessel,
    Kernels,
    Fourier,
    Corollary,
    Lemma,
    Operators,
    MellinRatio,
    Ktypes,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 8] = [
        Suite::Bessel,
        Suite::Kernels,
        Suite::Fourier,
        Suite::Corollary,
        Suite::Lemma,
        Suite::Operators,
        Suite::MellinRatio,
        Suite::Ktypes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bessel => "bessel",
            Suite::Kernels => "kernels",
            Suite::Fourier => "fourier",
            Suite::Corollary => "corollary",
            Suite::Lemma => "lemma",
            Suite::Operators => "operators",
            Suite::MellinRatio => "mellin_ratio",
            Suite::Ktypes => "ktypes",
            Suite::All => "all",
        }
    }

    /// Stream index of the suite's generator.
    pub(crate) fn stream(self) -> u64 {
        Suite::INDIVIDUAL.iter().position(|&s| s == self).unwrap_or(8) as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityChoice {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
    Both,
}

impl ParityChoice {
    pub fn parities(self) -> Vec<u8> {
        match self {
            ParityChoice::Zero => vec![0],
            ParityChoice::One => vec![1],
            ParityChoice::Both => vec![0, 1],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// Spectral parameters of the Mellin ratio grid.
    pub rho: Vec<f64>,
    /// `R` values. Empty means the suite default: the grid `{0.5, 1, 2}` for
    /// the Mellin ratio, random `R ∈ [1, 3]` elsewhere.
    pub r_values: Vec<f64>,
    pub eps_parity: ParityChoice,
    /// Replaces every relative tolerance and caps every absolute floor.
    pub tol: Option<f64>,
    /// Number of random cases for sampled suites; `None` means the suite
    /// default.
    pub size: Option<usize>,
    pub seed: u64,
    pub format: OutputFormat,
    pub workers: Option<usize>,
    /// Skip the end-to-end Mellin ratio (operator rays).
    pub closed_form_only: bool,
    /// Report `wall_ms = 0` so repeated runs are byte-identical.
    pub fixed_clock: bool,
    pub generator: String,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            rho: vec![0.3, 0.7, 1.0, 2.0],
            r_values: Vec::new(),
            eps_parity: ParityChoice::Both,
            tol: None,
            size: None,
            seed: 7,
            format: OutputFormat::Json,
            workers: None,
            closed_form_only: false,
            fixed_clock: false,
            generator: GENERATOR.to_string(),
        }
    }
}

/// Invalid configuration; maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), UsageError> {
        let positive = |what: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(UsageError(format!("{what} must be positive and finite, got {v}")))
            }
        };
        if self.rho.is_empty() {
            return Err(UsageError("--rho needs at least one value".into()));
        }
        for &rho in &self.rho {
            positive("rho", rho)?;
        }
        for &r in &self.r_values {
            positive("R", r)?;
        }
        if let Some(t) = self.tol {
            positive("tol", t)?;
        }
        if self.size == Some(0) {
            return Err(UsageError("--size must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(UsageError("--workers must be at least 1".into()));
        }
        Ok(())
    }

    pub fn size_or(&self, default: usize) -> usize {
        self.size.unwrap_or(default)
    }
}
