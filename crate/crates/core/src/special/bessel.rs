//! Production evaluators for `J0`, `Y0`, `K0`, `K1`, integer-order `Kn` and
//! the renormalised `K̃n(r) = 2ⁿ r⁻ⁿ Kn(r)`.
//!
//! `J0`, `Y0`: power series on `(0, 2]`, Miller backward recurrence with the
//! Neumann series for `Y0` on `(2, 25)`, Hankel asymptotics on `[25, ∞)`.
//! `K0`, `K1`: power series on `(0, 2]`, Steed's continued fraction beyond.

use crate::{Error, Result};
use std::f64::consts::{FRAC_PI_4, PI};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_CUT: f64 = 2.0;
const HANKEL_CUT: f64 = 25.0;

fn check_positive(what: &'static str, u: f64) -> Result<()> {
    if u > 0.0 && u.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(what, u, "argument must be positive and finite"))
    }
}

/// `J0` and `Y0` (when `x > 0`) from their power series; accurate for `x ≲ 4`.
pub(crate) fn j0_y0_series(x: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    let (mut term, mut j, mut ysum, mut harmonic) = (1.0, 1.0, 0.0, 0.0);
    for k in 1..200 {
        let kf = k as f64;
        term *= -q / (kf * kf);
        harmonic += 1.0 / kf;
        j += term;
        ysum -= harmonic * term;
        if term.abs() < 1e-18 * j.abs().max(1e-300) && k > 2 {
            break;
        }
    }
    let y = if x > 0.0 {
        (2.0 / PI) * (((0.5 * x).ln() + EULER_GAMMA) * j + ysum)
    } else {
        f64::NEG_INFINITY
    };
    (j, y)
}

/// Miller backward recurrence normalised by `J0 + 2ΣJ_{2k} = 1`; `Y0` from
/// `Y0 = (2/π)(ln(x/2)+γ)J0 − (4/π)Σ(−1)^k J_{2k}/k`.
pub(crate) fn j0_y0_miller(x: f64) -> (f64, f64) {
    let start = 2 * (((x + 30.0 + 6.0 * x.sqrt()) / 2.0) as usize);
    let (mut jp1, mut jk) = (0.0_f64, 1e-30_f64);
    let (mut norm, mut neumann) = (0.0, 0.0);
    for k in (1..=start).rev() {
        let jm1 = (2.0 * k as f64 / x) * jk - jp1;
        jp1 = jk;
        jk = jm1;
        // jk now holds the unnormalised J_{k-1}.
        let idx = k - 1;
        if idx > 0 && idx % 2 == 0 {
            norm += 2.0 * jk;
            let half = (idx / 2) as f64;
            let sign = if (idx / 2) % 2 == 0 { 1.0 } else { -1.0 };
            neumann += sign * jk / half;
        }
        if jk.abs() > 1e250 {
            jp1 *= 1e-250;
            jk *= 1e-250;
            norm *= 1e-250;
            neumann *= 1e-250;
        }
    }
    norm += jk;
    let j0 = jk / norm;
    let y0 = (2.0 / PI) * ((0.5 * x).ln() + EULER_GAMMA) * j0 - (4.0 / PI) * neumann / norm;
    (j0, y0)
}

/// Hankel expansion `√(2/πx)(P cos χ − Q sin χ)`, `χ = x − π/4`, truncated at
/// its smallest term.
pub(crate) fn j0_y0_hankel(x: f64) -> (f64, f64) {
    let (mut p, mut q) = (1.0, 0.0);
    let mut a = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        a *= -odd * odd / (k as f64 * 8.0 * x);
        if a.abs() >= prev {
            break;
        }
        prev = a.abs();
        match k % 4 {
            1 => q += a,
            2 => p -= a,
            3 => q -= a,
            _ => p += a,
        }
        if a.abs() < 1e-17 {
            break;
        }
    }
    // P = Σ(−1)^k a_{2k} x^{−2k}, Q = Σ(−1)^k a_{2k+1} x^{−2k−1}.
    let (s, c) = (x - FRAC_PI_4).sin_cos();
    let amp = (2.0 / (PI * x)).sqrt();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}

/// `K0` and `K1` from their power series; accurate for `x ≲ 2`.
pub(crate) fn k0_k1_series(x: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    let lg = (0.5 * x).ln();
    let (mut t0, mut i0, mut k0sum) = (1.0, 1.0, 0.0);
    let (mut t1, mut i1c, mut k1sum) = (1.0, 1.0, 0.0);
    let mut harmonic = 0.0;
    // K1 sum uses ψ(k+1)+ψ(k+2) = 2H_k + 1/(k+1) − 2γ.
    k1sum += 1.0 - 2.0 * EULER_GAMMA;
    for k in 1..200 {
        let kf = k as f64;
        t0 *= q / (kf * kf);
        t1 *= q / (kf * (kf + 1.0));
        harmonic += 1.0 / kf;
        i0 += t0;
        i1c += t1;
        k0sum += harmonic * t0;
        k1sum += (2.0 * harmonic + 1.0 / (kf + 1.0) - 2.0 * EULER_GAMMA) * t1;
        if t0 < 1e-18 * i0 && k > 2 {
            break;
        }
    }
    let k0 = -(lg + EULER_GAMMA) * i0 + k0sum;
    let i1 = 0.5 * x * i1c;
    let k1 = 1.0 / x + i1 * lg - 0.25 * x * k1sum;
    (k0, k1)
}

/// Steed's continued fraction (order zero); valid for `x ≳ 1`.
pub(crate) fn k0_k1_steed(x: f64) -> Result<(f64, f64)> {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let (mut q1, mut q2) = (0.0, 1.0);
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 1..100_000 {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            let h = a1 * h;
            let k0 = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
            let k1 = k0 * (x + 0.5 - h) / x;
            return Ok((k0, k1));
        }
    }
    Err(Error::no_convergence("K0 continued fraction", format!("x = {x}")))
}

/// Large-argument expansion `K0(x) ~ √(π/2x) e^{−x} Σ a_k / x^k`.
pub(crate) fn k0_asymptotic(x: f64) -> f64 {
    let mut sum = 1.0;
    let mut a = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        a *= -odd * odd / (k as f64 * 8.0 * x);
        if a.abs() >= prev || a.abs() < 1e-17 {
            break;
        }
        prev = a.abs();
        sum += a;
    }
    (PI / (2.0 * x)).sqrt() * (-x).exp() * sum
}

/// Bessel function of the first kind, order zero.
pub fn bessel_j0(u: f64) -> Result<f64> {
    if !(u >= 0.0) || !u.is_finite() {
        return Err(Error::domain("J0", u, "argument must be nonnegative and finite"));
    }
    Ok(if u <= SERIES_CUT {
        j0_y0_series(u).0
    } else if u < HANKEL_CUT {
        j0_y0_miller(u).0
    } else {
        j0_y0_hankel(u).0
    })
}

/// Bessel function of the second kind, order zero.
pub fn bessel_y0(u: f64) -> Result<f64> {
    check_positive("Y0", u)?;
    Ok(if u <= SERIES_CUT {
        j0_y0_series(u).1
    } else if u < HANKEL_CUT {
        j0_y0_miller(u).1
    } else {
        j0_y0_hankel(u).1
    })
}

fn k0_k1(u: f64) -> Result<(f64, f64)> {
    if u <= SERIES_CUT {
        Ok(k0_k1_series(u))
    } else {
        k0_k1_steed(u)
    }
}

/// Modified Bessel function of the second kind, order zero.
pub fn bessel_k0(u: f64) -> Result<f64> {
    check_positive("K0", u)?;
    Ok(k0_k1(u)?.0)
}

/// Modified Bessel function of the second kind, order one.
pub fn bessel_k1(u: f64) -> Result<f64> {
    check_positive("K1", u)?;
    Ok(k0_k1(u)?.1)
}

/// `K_n(u)` for any integer `n`, using `K_{−n} = K_n` and the stable upward
/// recurrence `K_{m+1} = K_{m−1} + (2m/u) K_m`.
pub fn bessel_kn(n: i32, u: f64) -> Result<f64> {
    check_positive("Kn", u)?;
    let n = n.unsigned_abs();
    let (mut km1, mut k) = k0_k1(u)?;
    if n == 0 {
        return Ok(km1);
    }
    for m in 1..n {
        let next = km1 + (2.0 * m as f64 / u) * k;
        km1 = k;
        k = next;
    }
    Ok(k)
}

/// `K̃n(r) = 2ⁿ r⁻ⁿ K_{|n|}(r)`.
pub fn ktilde(n: i32, r: f64) -> Result<f64> {
    check_positive("K~n", r)?;
    let kn = bessel_kn(n, r)?;
    Ok(kn * (2.0 / r).powi(n))
}

/// Value type for `K̃n(r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenormalizedK {
    pub n: i32,
    pub r: f64,
}

impl RenormalizedK {
    pub fn new(n: i32, r: f64) -> Result<Self> {
        check_positive("K~n", r)?;
        Ok(Self { n, r })
    }

    pub fn value(&self) -> Result<f64> {
        ktilde(self.n, self.r)
    }
}

/// Which algorithm a [`BesselEvaluator`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselMethod {
    /// Production path: the branch appropriate for the argument.
    Auto,
    /// Convergent expansions only (power series, Miller/Neumann series).
    Series,
    /// Large-argument asymptotic expansions only.
    Asymptotic,
    /// Quadrature of the integral representations.
    IntegralOracle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselEvaluator {
    pub method: BesselMethod,
    pub target_accuracy: f64,
}

impl Default for BesselEvaluator {
    fn default() -> Self {
        Self::new(BesselMethod::Auto)
    }
}

impl BesselEvaluator {
    pub fn new(method: BesselMethod) -> Self {
        Self {
            method,
            target_accuracy: 1e-12,
        }
    }

    pub fn with_accuracy(method: BesselMethod, target_accuracy: f64) -> Self {
        Self {
            method,
            target_accuracy,
        }
    }

    pub fn j0(&self, u: f64) -> Result<f64> {
        match self.method {
            BesselMethod::Auto => bessel_j0(u),
            BesselMethod::Series => {
                if !(u >= 0.0) || !u.is_finite() {
                    return Err(Error::domain("J0", u, "argument must be nonnegative and finite"));
                }
                Ok(if u <= SERIES_CUT {
                    j0_y0_series(u).0
                } else {
                    j0_y0_miller(u).0
                })
            }
            BesselMethod::Asymptotic => {
                check_positive("J0", u)?;
                Ok(j0_y0_hankel(u).0)
            }
            BesselMethod::IntegralOracle => super::oracle::j0_integral(u, self.target_accuracy),
        }
    }

    pub fn y0(&self, u: f64) -> Result<f64> {
        match self.method {
            BesselMethod::Auto => bessel_y0(u),
            BesselMethod::Series => {
                check_positive("Y0", u)?;
                Ok(if u <= SERIES_CUT {
                    j0_y0_series(u).1
                } else {
                    j0_y0_miller(u).1
                })
            }
            BesselMethod::Asymptotic => {
                check_positive("Y0", u)?;
                Ok(j0_y0_hankel(u).1)
            }
            BesselMethod::IntegralOracle => super::oracle::y0_integral(u, self.target_accuracy),
        }
    }

    pub fn k0(&self, u: f64) -> Result<f64> {
        match self.method {
            BesselMethod::Auto => bessel_k0(u),
            BesselMethod::Series => {
                check_positive("K0", u)?;
                Ok(k0_k1_series(u).0)
            }
            BesselMethod::Asymptotic => {
                check_positive("K0", u)?;
                Ok(k0_asymptotic(u))
            }
            BesselMethod::IntegralOracle => super::oracle::k0_exp_integral(u, self.target_accuracy),
        }
    }
}

/// Leading small-argument behaviour `Y0(u) ≈ (2/π)(ln(u/2) + γ)`.
pub fn y0_log_leading(u: f64) -> f64 {
    (2.0 / PI) * ((0.5 * u).ln() + EULER_GAMMA)
}

/// `√(π/2)` normalisation of the large-argument `K0` bound.
pub const K0_ASYMPTOTIC_CONST: f64 = 1.253_314_137_315_500_3;
