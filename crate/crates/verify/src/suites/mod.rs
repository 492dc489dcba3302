//! Verification suites. Each suite appends check records to a shared
//! context; ids are `suite/index/label` with zero-padded indices so the
//! final sort by id preserves generation order.

mod bessel;
mod fourier;
mod kernels;
mod ktypes;
mod mellin;
mod operators;

use crate::config::{Suite, SuiteConfig};
use crate::report::{CheckRecord, Cx, Param};
use quatrep::{Complex64, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Acceptance bound: `|computed − reference| ≤ max(rel·|reference|, abs)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tol {
    pub rel: f64,
    pub abs: f64,
}

impl Tol {
    pub const fn rel(rel: f64) -> Self {
        Self { rel, abs: 0.0 }
    }

    pub const fn abs(abs: f64) -> Self {
        Self { rel: 0.0, abs }
    }

    pub const fn mixed(rel: f64, abs: f64) -> Self {
        Self { rel, abs }
    }
}

pub(crate) struct Ctx<'a> {
    pub cfg: &'a SuiteConfig,
    pub rng: ChaCha8Rng,
    suite: &'static str,
    counter: usize,
    pub checks: Vec<CheckRecord>,
    pub non_convergence: bool,
}

pub(crate) type Params = Vec<(&'static str, Param)>;

impl<'a> Ctx<'a> {
    fn new(cfg: &'a SuiteConfig, suite: Suite) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(suite.stream());
        Self {
            cfg,
            rng,
            suite: suite.name(),
            counter: 0,
            checks: Vec::new(),
            non_convergence: false,
        }
    }

    fn effective(&self, tol: Tol) -> Tol {
        match self.cfg.tol {
            Some(t) => Tol {
                rel: t,
                abs: tol.abs.min(t),
            },
            None => tol,
        }
    }

    /// Records `computed` against `reference`.
    pub fn record(
        &mut self,
        label: &str,
        anchor: &str,
        params: Params,
        value: quatrep::Result<(Complex64, Complex64)>,
        tol: Tol,
    ) {
        let tol = self.effective(tol);
        let check_id = format!("{}/{:05}/{}", self.suite, self.counter, label);
        self.counter += 1;
        let parameters: BTreeMap<String, Param> = params.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        let rec = match value {
            Ok((computed, reference)) => {
                let abs_error = (computed - reference).norm();
                let scale = reference.norm();
                let rel_error = if scale > 0.0 { abs_error / scale } else { abs_error };
                let pass = abs_error <= (tol.rel * scale).max(tol.abs);
                CheckRecord {
                    check_id,
                    anchor: anchor.to_string(),
                    parameters,
                    computed: Cx::from(computed),
                    reference: Cx::from(reference),
                    abs_error,
                    rel_error,
                    tolerance: tol.rel,
                    abs_floor: tol.abs,
                    pass: pass && abs_error.is_finite(),
                    note: None,
                }
            }
            Err(e) => {
                if matches!(e, Error::NonConvergence { .. }) {
                    self.non_convergence = true;
                }
                CheckRecord {
                    check_id,
                    anchor: anchor.to_string(),
                    parameters,
                    computed: Cx::from(f64::NAN),
                    reference: Cx::from(f64::NAN),
                    abs_error: f64::NAN,
                    rel_error: f64::NAN,
                    tolerance: tol.rel,
                    abs_floor: tol.abs,
                    pass: false,
                    note: Some(e.to_string()),
                }
            }
        };
        self.checks.push(rec);
    }

    /// Records an exact predicate; `computed`/`reference` hold the compared
    /// quantities, which must be equal.
    pub fn record_exact(&mut self, label: &str, anchor: &str, params: Params, computed: f64, reference: f64) {
        self.record(
            label,
            anchor,
            params,
            Ok((Complex64::new(computed, 0.0), Complex64::new(reference, 0.0))),
            Tol::abs(0.0),
        );
    }
}

pub(crate) fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Runs one individual suite.
pub(crate) fn run_one(cfg: &SuiteConfig, suite: Suite) -> (Vec<CheckRecord>, bool) {
    let mut ctx = Ctx::new(cfg, suite);
    match suite {
        Suite::Bessel => bessel::run(&mut ctx),
        Suite::Kernels => kernels::run(&mut ctx),
        Suite::Fourier => fourier::run_fourier(&mut ctx),
        Suite::Corollary => fourier::run_corollary(&mut ctx),
        Suite::Lemma => fourier::run_lemma(&mut ctx),
        Suite::Operators => operators::run(&mut ctx),
        Suite::MellinRatio => mellin::run(&mut ctx),
        Suite::Ktypes => ktypes::run(&mut ctx),
        Suite::All => unreachable!("expanded by the caller"),
    }
    (ctx.checks, ctx.non_convergence)
}
