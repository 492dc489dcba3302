//! Mellin transform `(𝓜f)(ρ) = ∫₀^∞ f(s) s^{−iρ} ds`, the Gamma-function
//! evaluations of the per-θ chains, and the coth/tanh ratio verdicts.
//!
//! Functions are integrated in `x = ln s`, where the integrand
//! `f(eˣ) e^{x(1−iρ)}` is localised by the certified small- and large-`s`
//! envelopes. Sampled rays use Filon-type degree-6 panels on a uniform `x`
//! grid with fitted asymptotic tails at both ends.

use crate::cone_ops::{chain_fc, chain_plhat, make_f_xi_eps, op_fc, op_plhat_prime, TestFunctionFxiEps};
use crate::geometry::ConePoint;
use crate::kernels::QuadratureSpec;
use crate::quadrature::{gauss_legendre, integrate_breakpoints, AdaptiveOptions};
use crate::special::gamma_complex;
use crate::summation::ComplexSum;
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinResult {
    pub rho: f64,
    pub value: Complex64,
    pub error_estimate: f64,
}

/// Large-`s` envelope of the transformed function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LargeSDecay {
    /// `|f(s)| ≤ A s^{−b}`, `b > 1`.
    Power(f64),
    /// `|f(s)| ≤ A e^{−a s}`, `a > 0`.
    Exponential(f64),
}

/// Convergence window: `|f(s)| ≤ A s^{small_power}` (up to logarithms) near
/// `0` and `large` near `∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinWindow {
    pub small_power: f64,
    pub large: LargeSDecay,
    pub amplitude: f64,
}

impl MellinWindow {
    /// `[x_lo, x_hi]` in `x = ln s` outside which the envelope of
    /// `|f(eˣ)| eˣ` is below `tol / 10`.
    pub fn log_window(&self, tol: f64) -> Result<(f64, f64)> {
        if !(self.small_power > -1.0) {
            return Err(Error::domain(
                "Mellin window",
                self.small_power,
                "f must be o(1/s) at 0",
            ));
        }
        if !(self.amplitude > 0.0) || !self.amplitude.is_finite() {
            return Err(Error::domain(
                "Mellin window",
                self.amplitude,
                "amplitude must be positive",
            ));
        }
        let target = (tol / (10.0 * self.amplitude)).ln();
        // Margin of 4 units in x absorbs logarithmic factors.
        let x_lo = target / (1.0 + self.small_power) - 4.0;
        let x_hi = match self.large {
            LargeSDecay::Power(b) if b > 1.0 => target / (1.0 - b) + 4.0,
            LargeSDecay::Exponential(a) if a > 0.0 => {
                // s e^{−as} < e^{target}.
                let mut s: f64 = 1.0 / a;
                while s.ln() - a * s > target {
                    s *= 1.25;
                }
                s.ln() + 0.5
            }
            LargeSDecay::Power(b) => return Err(Error::domain("Mellin window", b, "f must decay faster than 1/s")),
            LargeSDecay::Exponential(a) => {
                return Err(Error::domain("Mellin window", a, "decay rate must be positive"))
            }
        };
        Ok((x_lo, x_hi))
    }
}

/// `∫₀^∞ f(s) s^{−iρ} ds` by adaptive quadrature in `ln s` over the window.
pub fn mellin(
    f: impl Fn(f64) -> Complex64,
    rho: f64,
    window: &MellinWindow,
    spec: &QuadratureSpec,
) -> Result<MellinResult> {
    spec.validate()?;
    if !rho.is_finite() {
        return Err(Error::domain("Mellin", rho, "rho must be finite"));
    }
    let (lo, hi) = window.log_window(spec.abs_tol)?;
    let mut breaks = Vec::new();
    let mut x = lo;
    while x < hi {
        breaks.push(x);
        x += 1.0;
    }
    breaks.push(hi);
    let mu = Complex64::new(1.0, -rho);
    let est = integrate_breakpoints(
        |x: f64| f(x.exp()) * (mu * x).exp(),
        &breaks,
        AdaptiveOptions {
            abs_tol: spec.abs_tol,
            rel_tol: spec.rel_tol,
            max_subdivisions: 20_000,
        },
    );
    if !est.value.re.is_finite() || !est.value.im.is_finite() {
        return Err(Error::no_convergence("Mellin", "non-finite integral"));
    }
    Ok(MellinResult {
        rho,
        value: est.value,
        error_estimate: est.error + spec.abs_tol,
    })
}

/// Samples `F(s_k)` at `s_k = exp(x0 + k h)`, `k = 0..n`, with `n` a
/// multiple of 12 so the half-resolution grid also tiles into 6-panels.
#[derive(Debug, Clone, PartialEq)]
pub struct RaySamples {
    pub x0: f64,
    pub h: f64,
    pub values: Vec<Complex64>,
    /// Exponents `e` of the large-`s` expansion `Σ a_e s^{−e}`, all `> 1`.
    pub tail_exponents: Vec<f64>,
}

/// Log-uniform grid of `n_intervals + 1` points spanning `[s_min, s_max]`.
pub fn log_grid(s_min: f64, s_max: f64, n_intervals: usize) -> Vec<f64> {
    let (a, b) = (s_min.ln(), s_max.ln());
    let h = (b - a) / n_intervals as f64;
    (0..=n_intervals).map(|k| (a + k as f64 * h).exp()).collect()
}

/// Default large-`s` exponents of the `s^{−k/2}`, `k ≥ 3`, expansions.
pub const HALF_INTEGER_TAIL: [f64; 7] = [1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5];

impl RaySamples {
    pub fn new(s_min: f64, s_max: f64, values: Vec<Complex64>, tail_exponents: Vec<f64>) -> Result<Self> {
        let n = values.len().saturating_sub(1);
        if n == 0 || !n.is_multiple_of(12) {
            return Err(Error::domain(
                "ray samples",
                values.len() as f64,
                "need 12m + 1 samples",
            ));
        }
        if !(s_min > 0.0 && s_max > s_min) {
            return Err(Error::domain("ray samples", s_min, "need 0 < s_min < s_max"));
        }
        if tail_exponents.is_empty() || tail_exponents.iter().any(|&e| !(e > 1.0)) {
            return Err(Error::Unsupported(
                "tail exponents must exceed 1 for a convergent Mellin tail".into(),
            ));
        }
        Ok(Self {
            x0: s_min.ln(),
            h: (s_max.ln() - s_min.ln()) / n as f64,
            values,
            tail_exponents,
        })
    }

    pub fn s(&self, k: usize) -> f64 {
        (self.x0 + k as f64 * self.h).exp()
    }
}

/// `∫₀^6 L_j(u) e^{−iω u} du` for the Lagrange basis on nodes `0..=6`.
fn filon_weights(omega: f64) -> [Complex64; 7] {
    let rule = gauss_legendre(48);
    let mut w = [Complex64::new(0.0, 0.0); 7];
    for (x, gw) in rule.nodes.iter().zip(&rule.weights) {
        let u = 3.0 * (x + 1.0);
        let e = Complex64::from_polar(3.0 * gw, -omega * u);
        for (j, wj) in w.iter_mut().enumerate() {
            let mut l = 1.0;
            for m in 0..7 {
                if m != j {
                    l *= (u - m as f64) / (j as f64 - m as f64);
                }
            }
            *wj += e * l;
        }
    }
    w
}

fn filon_body(x0: f64, h: f64, g: &[Complex64], rho: f64) -> Complex64 {
    let w = filon_weights(rho * h);
    let mut acc = ComplexSum::new();
    for p in 0..(g.len() - 1) / 6 {
        let xa = x0 + (6 * p) as f64 * h;
        let phase = Complex64::from_polar(h, -rho * xa);
        let mut panel = Complex64::new(0.0, 0.0);
        for j in 0..7 {
            panel += w[j] * g[6 * p + j];
        }
        acc.add(panel * phase);
    }
    acc.value()
}

/// Least squares `values ≈ Σ c_j basis_j(s)`.
fn lsq(s: &[f64], values: &[Complex64], basis: &dyn Fn(f64) -> Vec<f64>) -> Vec<Complex64> {
    let nb = basis(s[0]).len();
    let mut a = vec![vec![0.0; nb]; nb];
    let mut b = vec![Complex64::new(0.0, 0.0); nb];
    for (&si, &v) in s.iter().zip(values) {
        let row = basis(si);
        for i in 0..nb {
            b[i] += v * row[i];
            for j in 0..nb {
                a[i][j] += row[i] * row[j];
            }
        }
    }
    // Gaussian elimination with partial pivoting.
    for c in 0..nb {
        let p = (c..nb)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
            .unwrap_or(c);
        a.swap(c, p);
        b.swap(c, p);
        for r in c + 1..nb {
            let f = a[r][c] / a[c][c];
            for k in c..nb {
                a[r][k] -= f * a[c][k];
            }
            let bc = b[c];
            b[r] -= bc * f;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); nb];
    for i in (0..nb).rev() {
        let mut acc = b[i];
        for k in i + 1..nb {
            acc -= x[k] * a[i][k];
        }
        x[i] = acc / a[i][i];
    }
    x
}

/// `∫₀^{s0} F s^{−iρ} ds` with `F ≈ c0 + c1 ln s + c2 √s` fitted to the first
/// three samples.
fn left_tail(ray: &RaySamples, rho: f64) -> Complex64 {
    let s: Vec<f64> = (0..3).map(|k| ray.s(k)).collect();
    let c = lsq(&s, &ray.values[..3], &|s: f64| vec![1.0, s.ln(), s.sqrt()]);
    let a = s[0];
    let mu = Complex64::new(1.0, -rho);
    let amu = (mu * a.ln()).exp();
    let i0 = amu / mu;
    let i1 = amu * (a.ln() / mu - 1.0 / (mu * mu));
    let i2 = amu * a.sqrt() / (mu + 0.5);
    c[0] * i0 + c[1] * i1 + c[2] * i2
}

/// `∫_{S}^∞ F s^{−iρ} ds` with `F ≈ Σ a_e s^{−e}` fitted on the last
/// `2·len + 2` samples.
fn right_tail(ray: &RaySamples, rho: f64, exponents: &[f64]) -> Complex64 {
    let n = ray.values.len();
    let m = (2 * exponents.len() + 2).min(n);
    let s: Vec<f64> = (n - m..n).map(|k| ray.s(k)).collect();
    let ex = exponents.to_vec();
    let c = lsq(&s, &ray.values[n - m..], &move |s: f64| {
        ex.iter().map(|&e| s.powf(-e)).collect()
    });
    let big = ray.s(n - 1);
    let mut acc = Complex64::new(0.0, 0.0);
    for (&e, cj) in exponents.iter().zip(&c) {
        let p = Complex64::new(1.0 - e, -rho);
        acc += cj * (p * big.ln()).exp() / (-p);
    }
    acc
}

/// Mellin transform of a sampled ray: Filon degree-6 body on the samples
/// plus fitted tails. The error estimate combines the half-resolution body
/// and the tail with its last exponent dropped.
pub fn mellin_sampled(ray: &RaySamples, rho: f64) -> Result<MellinResult> {
    let g: Vec<Complex64> = ray.values.iter().enumerate().map(|(k, v)| v * ray.s(k)).collect();
    let body = filon_body(ray.x0, ray.h, &g, rho);
    let coarse: Vec<Complex64> = g.iter().step_by(2).copied().collect();
    let body_coarse = filon_body(ray.x0, 2.0 * ray.h, &coarse, rho);
    let tail = right_tail(ray, rho, &ray.tail_exponents);
    let tail_err = if ray.tail_exponents.len() > 1 {
        (tail - right_tail(ray, rho, &ray.tail_exponents[..ray.tail_exponents.len() - 1])).norm()
    } else {
        tail.norm()
    };
    let value = body + tail + left_tail(ray, rho);
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::no_convergence("sampled Mellin", "non-finite value"));
    }
    Ok(MellinResult {
        rho,
        value,
        error_estimate: (body - body_coarse).norm() + tail_err,
    })
}

/// `(∫₀^∞ t²e^{−at} sin bt dt, ∫₀^∞ t²e^{−at} cos bt dt)` by quadrature.
pub fn gr_2667_quadrature(a: f64, b: f64) -> Result<(f64, f64)> {
    if !(a > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain("t² e^{-at} integrals", a, "a must be positive"));
    }
    // e^{−at} t² < 1e−18 beyond t = 50/a.
    let end = 50.0 / a + 10.0;
    let mut breaks: Vec<f64> = (0..=200).map(|k| end * k as f64 / 200.0).collect();
    breaks.dedup();
    let opts = AdaptiveOptions::with_tol(1e-15, 1e-14);
    let est = integrate_breakpoints(
        |t: f64| {
            let (s, c) = (b * t).sin_cos();
            Complex64::new(s, c) * (t * t * (-a * t).exp())
        },
        &breaks,
        opts,
    );
    Ok((est.value.re, est.value.im))
}

/// Closed forms `2b(3a²−b²)/(a²+b²)³` and `2a(a²−3b²)/(a²+b²)³`.
pub fn gr_2667_closed(a: f64, b: f64) -> Result<(f64, f64)> {
    if !(a > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain("t² e^{-at} integrals", a, "a must be positive"));
    }
    let d = (a * a + b * b).powi(3);
    Ok((2.0 * b * (3.0 * a * a - b * b) / d, 2.0 * a * (a * a - 3.0 * b * b) / d))
}

/// Quadrature values of the two integrals after asserting agreement with
/// the closed forms to `1e−10` relative.
pub fn gr_2667_integrals(a: f64, b: f64) -> Result<(f64, f64)> {
    let q = gr_2667_quadrature(a, b)?;
    let c = gr_2667_closed(a, b)?;
    let scale = 2.0 / a.powi(3);
    for (x, y) in [(q.0, c.0), (q.1, c.1)] {
        if (x - y).abs() > 1e-10 * x.abs().max(y.abs()).max(1e-3 * scale) {
            return Err(Error::no_convergence(
                "t² e^{-at} integrals",
                format!("quadrature {x} vs closed form {y}"),
            ));
        }
    }
    Ok(q)
}

fn g(z: Complex64) -> Result<Complex64> {
    gamma_complex(z)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn parity_sign(eps: u8) -> Result<f64> {
    match eps {
        0 => Ok(1.0),
        1 => Ok(-1.0),
        _ => Err(Error::domain("parity", eps as f64, "must be 0 or 1")),
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if rho == 0.0 || !rho.is_finite() {
        return Err(Error::domain("rho", rho, "rho must be finite and nonzero"));
    }
    Ok(())
}

/// `x^{−2+2iρ}` for `x > 0`.
fn cpow(x: f64, rho: f64) -> Complex64 {
    (c(-2.0, 2.0 * rho) * x.ln()).exp()
}

/// Per-θ Mellin transforms `(𝓜 chain_plhat, 𝓜 chain_fc)` evaluated from
/// the Gamma-product form that the `(1+as)^{−ν}` Mellin integral produces.
pub fn per_theta_mellin_closed_forms(rho: f64, r: f64, theta: f64, eps: u8) -> Result<(Complex64, Complex64)> {
    check_rho(rho)?;
    let sign = parity_sign(eps)?;
    if !(r > 0.0) {
        return Err(Error::domain("per-theta Mellin", r, "R must be positive"));
    }
    let ch = theta.cosh();
    let pl = c(0.0, sign / (PI * PI))
        * cpow(2f64.sqrt() * r * ch, rho)
        * (3.0 * g(c(1.5, -rho))? * g(c(1.5, rho))? - g(c(2.5, -rho))? * g(c(0.5, rho))?);
    let fc = 4.0 / (PI * PI)
        * cpow(2.0 * 2f64.sqrt() * ch, rho)
        * (2.0 * g(c(2.0, -2.0 * rho))? * g(c(1.0, 2.0 * rho))?
            + sign * (g(c(1.0, -rho))? * g(c(2.0, rho))? - 3.0 * g(c(2.0, -rho))? * g(c(1.0, rho))?));
    Ok((pl, fc))
}

/// The same pair in the final trigonometric form:
/// `(−1)^{ε+1}(2/π) ρ(1−2iρ)/cos(πiρ) (√2Rc)^{−2+2iρ}` and
/// `(8i/π) ρ(1−2iρ)/cos(πiρ) (2√2c)^{−2+2iρ} · {tan, cot}(πiρ/2)`.
pub fn per_theta_mellin_trig_forms(rho: f64, r: f64, theta: f64, eps: u8) -> Result<(Complex64, Complex64)> {
    check_rho(rho)?;
    let sign = parity_sign(eps)?;
    let ch = theta.cosh();
    let common = c(rho, 0.0) * c(1.0, -2.0 * rho) / c(0.0, PI * rho).cos();
    let pl = -sign * 2.0 / PI * common * cpow(2f64.sqrt() * r * ch, rho);
    let half = c(0.0, PI * rho / 2.0);
    let t = if eps == 0 { half.tan() } else { 1.0 / half.tan() };
    let fc = c(0.0, 8.0 / PI) * common * cpow(2.0 * 2f64.sqrt() * ch, rho) * t;
    Ok((pl, fc))
}

/// Both sides of the three intermediate identities of the Mellin chains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: Complex64,
    pub rhs: Complex64,
}

impl IdentityCheck {
    pub fn rel_error(&self) -> f64 {
        (self.lhs - self.rhs).norm() / self.lhs.norm().max(self.rhs.norm()).max(f64::MIN_POSITIVE)
    }
}

/// `3Γ(3/2−iρ)Γ(3/2+iρ) − Γ(5/2−iρ)Γ(1/2+iρ) = Γ(1/2−iρ)Γ(1/2+iρ)(1/2−iρ)·4iρ`.
pub fn plhat_gamma_identity(rho: f64) -> Result<IdentityCheck> {
    let lhs = 3.0 * g(c(1.5, -rho))? * g(c(1.5, rho))? - g(c(2.5, -rho))? * g(c(0.5, rho))?;
    let rhs = g(c(0.5, -rho))? * g(c(0.5, rho))? * c(0.5, -rho) * c(0.0, 4.0 * rho);
    Ok(IdentityCheck {
        name: "plhat gamma reduction",
        lhs,
        rhs,
    })
}

/// `2Γ(2−2iρ)Γ(1+2iρ) + (−1)^ε(Γ(1−iρ)Γ(2+iρ) − 3Γ(2−iρ)Γ(1+iρ))
///  = iρ(4(1−2iρ)Γ(1−2iρ)Γ(2iρ) + (−1)^ε Γ(1−iρ)Γ(iρ)((1+iρ) − 3(1−iρ)))`.
pub fn fc_duplication_identity(rho: f64, eps: u8) -> Result<IdentityCheck> {
    check_rho(rho)?;
    let sign = parity_sign(eps)?;
    let lhs = 2.0 * g(c(2.0, -2.0 * rho))? * g(c(1.0, 2.0 * rho))?
        + sign * (g(c(1.0, -rho))? * g(c(2.0, rho))? - 3.0 * g(c(2.0, -rho))? * g(c(1.0, rho))?);
    let rhs = c(0.0, rho)
        * (4.0 * c(1.0, -2.0 * rho) * g(c(1.0, -2.0 * rho))? * g(c(0.0, 2.0 * rho))?
            + sign * g(c(1.0, -rho))? * g(c(0.0, rho))? * (c(1.0, rho) - 3.0 * c(1.0, -rho)));
    Ok(IdentityCheck {
        name: "fc gamma duplication",
        lhs,
        rhs,
    })
}

/// `2/sin(2πiρ) − (−1)^ε/sin(πiρ) = {tan, cot}(πiρ/2)/cos(πiρ)`.
pub fn trig_reduction_identity(rho: f64, eps: u8) -> Result<IdentityCheck> {
    check_rho(rho)?;
    let sign = parity_sign(eps)?;
    let x = c(0.0, PI * rho);
    let lhs = 2.0 / (2.0 * x).sin() - sign / x.sin();
    let t = if eps == 0 {
        (x / 2.0).tan()
    } else {
        1.0 / (x / 2.0).tan()
    };
    Ok(IdentityCheck {
        name: "trig reduction",
        lhs,
        rhs: t / x.cos(),
    })
}

/// `R^{−2+2iρ} 2^{−2iρ} · {coth, tanh}(πρ/2)`.
pub fn reference_ratio(rho: f64, r: f64, eps: u8) -> Result<Complex64> {
    check_rho(rho)?;
    parity_sign(eps)?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain("reference ratio", r, "R must be positive"));
    }
    let t = (PI * rho / 2.0).tanh();
    let factor = if eps == 0 { 1.0 / t } else { t };
    Ok(cpow(r, rho) * c(0.0, -2.0 * rho * 2f64.ln()).exp() * factor)
}

/// `(4l, −2+2iρ)` for `l = −1/2 + iρ/2`: the power of `R` in the reference
/// ratio against the `R^{4l}` factor of the `w0` action on degree `2l`.
pub fn exponent_check(rho: f64) -> (Complex64, Complex64) {
    let l = c(-0.5, rho / 2.0);
    (4.0 * l, c(-2.0, 2.0 * rho))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RatioMode {
    ClosedForm,
    EndToEnd,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioVerdict {
    pub rho: f64,
    pub r: f64,
    pub parity_eps: u8,
    pub mode: RatioMode,
    pub computed_ratio: Complex64,
    pub reference_ratio: Complex64,
    pub rel_error: f64,
    /// Propagated numerical error of `computed_ratio`, relative.
    pub error_estimate: f64,
}

impl RatioVerdict {
    /// `computed / reference`; equal to 1 when no constant is lost between
    /// the two operator normalisations.
    pub fn calibration(&self) -> Complex64 {
        self.computed_ratio / self.reference_ratio
    }

    fn new(rho: f64, r: f64, eps: u8, mode: RatioMode, computed: Complex64, error_estimate: f64) -> Result<Self> {
        let reference = reference_ratio(rho, r, eps)?;
        Ok(Self {
            rho,
            r,
            parity_eps: eps,
            mode,
            computed_ratio: computed,
            reference_ratio: reference,
            rel_error: (computed - reference).norm() / reference.norm(),
            error_estimate,
        })
    }
}

/// Ray sampling and angular resolution of the end-to-end check.
#[derive(Debug, Clone, PartialEq)]
pub struct EndToEndOptions {
    pub base_xi: ConePoint,
    pub s_min: f64,
    pub s_max: f64,
    /// Number of log-uniform intervals; a multiple of 12.
    pub n_intervals: usize,
    pub n_radial: usize,
    pub n_azimuth: usize,
}

impl Default for EndToEndOptions {
    fn default() -> Self {
        Self {
            base_xi: ConePoint::new(1.0, 0.3, 1.1).expect("valid cone point"),
            s_min: 1e-3,
            s_max: 50.0,
            n_intervals: 48,
            n_radial: 8,
            n_azimuth: 16,
        }
    }
}

impl EndToEndOptions {
    pub fn test_function(&self, eps: u8) -> Result<TestFunctionFxiEps> {
        let mut f = make_f_xi_eps(&self.base_xi, eps)?;
        f.n_radial = self.n_radial;
        f.n_azimuth = self.n_azimuth;
        Ok(f)
    }

    fn grid(&self) -> Vec<f64> {
        log_grid(self.s_min, self.s_max, self.n_intervals)
    }
}

/// `s ↦ (P̂l'_R f_{ξ,ε})(sξ)` sampled on the log grid in the scale-free
/// variable `R²s`, i.e. at `s ∈ [s_min, s_max]/R²`; the ray depends on `s`
/// only through `R²s`.
pub fn plhat_ray(r: f64, eps: u8, opts: &EndToEndOptions, spec: &QuadratureSpec) -> Result<RaySamples> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain("plhat ray", r, "R must be positive"));
    }
    let f = opts.test_function(eps)?.to_cone_function();
    let scale = 1.0 / (r * r);
    let values = opts
        .grid()
        .par_iter()
        .map(|&u| Ok(op_plhat_prime(&f, r, &opts.base_xi.scaled(u * scale)?, spec)?.value))
        .collect::<Result<Vec<_>>>()?;
    RaySamples::new(
        opts.s_min * scale,
        opts.s_max * scale,
        values,
        HALF_INTEGER_TAIL.to_vec(),
    )
}

/// `s ↦ (𝓕_C f_{ξ,ε})(sξ)` sampled on the log grid.
pub fn fc_ray(eps: u8, opts: &EndToEndOptions, spec: &QuadratureSpec) -> Result<RaySamples> {
    let f = opts.test_function(eps)?.to_cone_function();
    let values = opts
        .grid()
        .par_iter()
        .map(|&s| Ok(op_fc(&f, &opts.base_xi.scaled(s)?, spec)?.value))
        .collect::<Result<Vec<_>>>()?;
    RaySamples::new(opts.s_min, opts.s_max, values, HALF_INTEGER_TAIL.to_vec())
}

/// End-to-end verdict from precomputed rays.
pub fn ratio_from_rays(rho: f64, r: f64, eps: u8, plhat: &RaySamples, fc: &RaySamples) -> Result<RatioVerdict> {
    check_rho(rho)?;
    let num = mellin_sampled(plhat, rho)?;
    let den = mellin_sampled(fc, rho)?;
    if den.value.norm() <= den.error_estimate {
        return Err(Error::no_convergence(
            "end-to-end ratio",
            "denominator Mellin value below its error",
        ));
    }
    let ratio = num.value / den.value;
    let err = num.error_estimate / num.value.norm().max(f64::MIN_POSITIVE) + den.error_estimate / den.value.norm();
    RatioVerdict::new(rho, r, eps, RatioMode::EndToEnd, ratio, err)
}

/// Ratio `𝓜(P̂l'_R f_{ξ,ε})/𝓜(𝓕_C f_{ξ,ε})` against
/// `R^{−2+2iρ} 2^{−2iρ} {coth, tanh}(πρ/2)`.
pub fn verify_ratio(rho: f64, r: f64, eps: u8, mode: RatioMode, spec: &QuadratureSpec) -> Result<RatioVerdict> {
    check_rho(rho)?;
    parity_sign(eps)?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain("verify ratio", r, "R must be positive"));
    }
    match mode {
        RatioMode::ClosedForm => {
            let (pl, fc) = per_theta_mellin_closed_forms(rho, r, 0.0, eps)?;
            RatioVerdict::new(rho, r, eps, mode, pl / fc, 1e-14)
        }
        RatioMode::EndToEnd => {
            let opts = EndToEndOptions::default();
            let pl = plhat_ray(r, eps, &opts, spec)?;
            let fc = fc_ray(eps, &opts, spec)?;
            ratio_from_rays(rho, r, eps, &pl, &fc)
        }
    }
}

/// Mellin transforms of the per-θ chains by quadrature.
pub fn per_theta_mellin_numeric(
    rho: f64,
    r: f64,
    theta: f64,
    eps: u8,
    spec: &QuadratureSpec,
) -> Result<(MellinResult, MellinResult)> {
    check_rho(rho)?;
    parity_sign(eps)?;
    let ch = theta.cosh();
    let pl_window = MellinWindow {
        small_power: 0.5,
        large: LargeSDecay::Power(1.5),
        amplitude: (1.0 + r * ch).powi(3),
    };
    let fc_window = MellinWindow {
        small_power: 0.0,
        large: LargeSDecay::Power(1.5),
        amplitude: 4.0,
    };
    let pl = mellin(|s| chain_plhat(theta, s, r, eps), rho, &pl_window, spec)?;
    let fc = mellin(|s| Complex64::new(chain_fc(theta, s, eps), 0.0), rho, &fc_window, spec)?;
    Ok((pl, fc))
}
