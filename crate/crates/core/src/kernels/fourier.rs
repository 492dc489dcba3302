//! `lim_{ε→0⁺} (1/4π²) ∫ e^{iξ·X} (N(X) + σR² + iηε)⁻² dV` by the exact
//! reduction to two dimensions followed by hyperbolic coordinates.
//!
//! Integrating out `x4` and then `x2` gives, at every `ε > 0`,
//! `∫_{R⁴} = −iηπ ∬ e^{i(r1x1 + r2x3)} / (x1² − x3² + σR² + iηε) dx1 dx3`.
//! With `x = R y`, `ε̃ = ε/R²`, `b = R√|q|` and hyperbolic coordinates on the
//! two sectors `|y1| ≷ |y3|`, the `t`-integrals collapse to
//! `C(a) = 4∫₀^∞ cos(a cosh u) du` and `S(a) = 4∫₀^∞ cos(a sinh u) du`, so
//!
//! `J(ε) = ∫₀^∞ s A(bs)/(s² + σ + iηε̃) ds + ∫₀^∞ s B(bs)/(−s² + σ + iηε̃) ds`
//!
//! with `(A, B) = (C, S)` for `q > 0` and `(S, C)` for `q < 0`, and the
//! transform equals `−iη J / (4π)`. `C` and `S` are evaluated by oscillatory
//! quadrature, never by the Bessel series. `J(ε)` is analytic at `ε = 0`, so
//! the limit is taken by polynomial extrapolation over the `ε` ladder.

use super::{QuadratureSpec, Sign};
use crate::geometry::{pair, ConePoint, DualVector};
use crate::kernels::{phi0_plus, psi0};
use crate::quadrature::{gauss_legendre, richardson, wynn_epsilon};
use crate::special::oracle::{k0_cos_integral, y0_integral};
use crate::summation::ComplexSum;
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

const GL_NODES: usize = 24;
const TAIL_BATCH: usize = 8;
const NEAR_END: f64 = 3.0;

/// Extrapolated transform value with its ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct FtEstimate {
    pub value: Complex64,
    pub error: f64,
    /// `(ε, value at ε)` for every rung of the ladder.
    pub ladder: Vec<(f64, Complex64)>,
}

#[derive(Debug, Clone, Copy)]
struct Node {
    s: f64,
    w: f64,
    a: f64,
    b: f64,
}

/// Precomputed hyperbolic data for one `(R, ⟨ξ,ξ⟩)`; evaluating all four
/// sign combinations reuses the same oscillatory integrals.
#[derive(Debug, Clone)]
pub struct FtReduced {
    r: f64,
    q: f64,
    spec: QuadratureSpec,
    near: Vec<Node>,
    tail: Vec<Vec<Node>>,
}

fn c_integral(a: f64, tol: f64) -> Result<f64> {
    Ok(-2.0 * PI * y0_integral(a, tol)?)
}

fn s_integral(a: f64, tol: f64) -> Result<f64> {
    // 4K0(a) underflows long before this point.
    if a > 700.0 {
        return Ok(0.0);
    }
    Ok(4.0 * k0_cos_integral(a, tol)?)
}

fn gl_panel(lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let rule = gauss_legendre(GL_NODES);
    let (m, h) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| (m + h * x, h * w))
        .collect()
}

impl FtReduced {
    pub fn new(r: f64, q: f64, spec: &QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::domain("FT reduction", r, "R must be positive"));
        }
        if q == 0.0 || !q.is_finite() {
            return Err(Error::domain("FT reduction", q, "<xi,xi> = 0 is excluded"));
        }
        let b = r * q.abs().sqrt();
        let eps_min = spec.epsilon_ladder.last().copied().unwrap_or(1.0) / (r * r);
        let tol = spec.abs_tol;
        let timelike = q > 0.0;
        let eval = |pts: Vec<(f64, f64)>| -> Result<Vec<Node>> {
            pts.into_par_iter()
                .map(|(s, w)| {
                    let c = c_integral(b * s, tol)?;
                    let k = s_integral(b * s, tol)?;
                    let (a, bb) = if timelike { (c, k) } else { (k, c) };
                    Ok(Node { s, w, a, b: bb })
                })
                .collect()
        };

        // Tail starts at an asymptotic zero of C(bs), i.e. bs = π/4 + mπ.
        let m0 = ((NEAR_END * b - PI / 4.0) / PI).ceil().max(0.0);
        let tail_start = (PI / 4.0 + m0 * PI) / b;
        // Graded toward the log point s = 0 and the pole s = 1.
        let mut ds = Vec::new();
        let mut d: f64 = 0.5;
        loop {
            ds.push(d);
            if d <= 0.25 * eps_min {
                break;
            }
            d *= 0.5;
        }
        let mut breaks: Vec<f64> = vec![0.0, 1.0, 2.0, tail_start];
        breaks.extend((1..=20).map(|k| 0.5f64.powi(k)));
        breaks.extend(ds.iter().map(|d| 1.0 - d));
        breaks.extend(ds.iter().map(|d| 1.0 + d));
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        let max_width = PI / b;
        let mut pts = Vec::new();
        for w in breaks.windows(2) {
            let n = ((w[1] - w[0]) / max_width).ceil().max(1.0) as usize;
            let h = (w[1] - w[0]) / n as f64;
            for j in 0..n {
                pts.extend(gl_panel(w[0] + j as f64 * h, w[0] + (j + 1) as f64 * h));
            }
        }
        let near = eval(pts)?;

        let mut this = Self {
            r,
            q,
            spec: spec.clone(),
            near,
            tail: Vec::new(),
        };
        let tail_lo = |m: f64| (PI / 4.0 + m * PI) / b;
        let mut m = m0;
        loop {
            let mut batch = Vec::with_capacity(TAIL_BATCH);
            for _ in 0..TAIL_BATCH {
                batch.push(gl_panel(tail_lo(m), tail_lo(m + 1.0)));
                m += 1.0;
            }
            let sizes: Vec<usize> = batch.iter().map(Vec::len).collect();
            let mut flat = eval(batch.concat())?;
            for n in sizes {
                let rest = flat.split_off(n);
                this.tail.push(flat);
                flat = rest;
            }
            if this.tail.len() >= 16 && this.tail_converged() {
                return Ok(this);
            }
            if tail_lo(m) > spec.truncation_t {
                return Err(Error::no_convergence(
                    "FT oscillatory tail",
                    format!("no stable limit by s = {} (R = {r}, q = {q})", spec.truncation_t),
                ));
            }
        }
    }

    fn eps_tilde(&self, eps: f64) -> f64 {
        eps / (self.r * self.r)
    }

    fn integrand(&self, node: &Node, sigma: f64, ieps: Complex64) -> Complex64 {
        let s2 = node.s * node.s;
        node.w * node.s * (node.a / (ieps + s2 + sigma) + node.b / (ieps - s2 + sigma))
    }

    fn tail_limit(&self, sign_r2: Sign, sign_eps: Sign, eps: f64) -> (Vec<Complex64>, f64) {
        let ieps = Complex64::new(0.0, sign_eps.value() * self.eps_tilde(eps));
        let sigma = sign_r2.value();
        let mut acc = ComplexSum::new();
        let mut partial = Vec::with_capacity(self.tail.len());
        for panel in &self.tail {
            let mut p = ComplexSum::new();
            for node in panel {
                p.add(self.integrand(node, sigma, ieps));
            }
            acc.add(p.value());
            partial.push(acc.value());
        }
        (partial, self.spec.abs_tol)
    }

    fn tail_converged(&self) -> bool {
        let n = self.tail.len();
        for &s1 in &Sign::BOTH {
            for &s2 in &Sign::BOTH {
                for &eps in &self.spec.epsilon_ladder {
                    let (sums, _) = self.tail_limit(s1, s2, eps);
                    let a = wynn_epsilon(&sums[..n - TAIL_BATCH / 2]).value;
                    let b = wynn_epsilon(&sums).value;
                    let tol = (self.spec.rel_tol * 1e2).max(self.spec.abs_tol * 1e2) * (1.0 + b.norm());
                    if (a - b).norm() > tol {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `J(ε)` together with the tail extrapolation error.
    fn j_at(&self, sign_r2: Sign, sign_eps: Sign, eps: f64) -> (Complex64, f64) {
        let ieps = Complex64::new(0.0, sign_eps.value() * self.eps_tilde(eps));
        let sigma = sign_r2.value();
        let mut sum = ComplexSum::new();
        for node in &self.near {
            sum.add(self.integrand(node, sigma, ieps));
        }
        let (tail, _) = self.tail_limit(sign_r2, sign_eps, eps);
        let lim = wynn_epsilon(&tail);
        let half = wynn_epsilon(&tail[..tail.len() - TAIL_BATCH / 2]);
        (sum.value() + lim.value, lim.error.max((lim.value - half.value).norm()))
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// The regularised transform for one sign combination.
    pub fn evaluate(&self, sign_r2: Sign, sign_eps: Sign) -> FtEstimate {
        let pref = Complex64::new(0.0, -sign_eps.value() / (4.0 * PI));
        let mut ladder = Vec::with_capacity(self.spec.epsilon_ladder.len());
        let mut tail_err: f64 = 0.0;
        for &eps in &self.spec.epsilon_ladder {
            let (j, e) = self.j_at(sign_r2, sign_eps, eps);
            tail_err = tail_err.max(e);
            ladder.push((eps, pref * j));
        }
        let steps: Vec<f64> = ladder.iter().map(|p| p.0).collect();
        let vals: Vec<Complex64> = ladder.iter().map(|p| p.1).collect();
        let lim = richardson(&steps, &vals, self.spec.extrapolation_order);
        FtEstimate {
            value: lim.value,
            error: lim.error + tail_err / (4.0 * PI),
            ladder,
        }
    }
}

/// `lim_{ε→0⁺} (1/4π²) ∫ e^{iξ·X} (N(X) + σR² + iηε)⁻² dV`.
pub fn ft_regularized(
    r: f64,
    xi: &DualVector,
    sign_r2: Sign,
    sign_eps: Sign,
    spec: &QuadratureSpec,
) -> Result<FtEstimate> {
    let q = pair(xi, xi);
    if q.abs() <= 1e-14 * xi.euclidean_dot(xi) {
        return Err(Error::domain("FT", q, "xi on the cone; use the corollary route"));
    }
    Ok(FtReduced::new(r, q, spec)?.evaluate(sign_r2, sign_eps))
}

/// Both corollary combinations, each paired with its kernel prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct CorollaryValues {
    /// `(+iε) + (−iε)` transforms at `R = 2`.
    pub symmetric: FtEstimate,
    /// `(+iε) − (−iε)` transforms at the requested `R`.
    pub antisymmetric: FtEstimate,
    /// `(π/2) Ψ0(−⟨ξ,ξ'⟩)`.
    pub expected_symmetric: Complex64,
    /// `(πi/2) Φ0⁺(−(R²/4)⟨ξ,ξ'⟩)`.
    pub expected_antisymmetric: Complex64,
    pub pairing: f64,
}

fn combine(a: FtEstimate, b: FtEstimate, sign: f64) -> FtEstimate {
    FtEstimate {
        value: a.value + b.value * sign,
        error: a.error + b.error,
        ladder: a
            .ladder
            .iter()
            .zip(&b.ladder)
            .map(|(x, y)| (x.0, x.1 + y.1 * sign))
            .collect(),
    }
}

/// The corollary combinations for `ξ, ξ' ∈ C*`, using
/// `⟨ξ−ξ', ξ−ξ'⟩ = −2⟨ξ,ξ'⟩`.
pub fn corollary_kernels(r: f64, xi: &ConePoint, xi2: &ConePoint, spec: &QuadratureSpec) -> Result<CorollaryValues> {
    let (a, b) = (xi.embed(), xi2.embed());
    let p = pair(&a, &b);
    if p.abs() <= 1e-12 * xi.r() * xi2.r() {
        return Err(Error::domain("corollary kernels", p, "lightlike-separated pair"));
    }
    let q = -2.0 * p;
    let sym_red = FtReduced::new(2.0, q, spec)?;
    let symmetric = combine(
        sym_red.evaluate(Sign::Minus, Sign::Plus),
        sym_red.evaluate(Sign::Minus, Sign::Minus),
        1.0,
    );
    let anti_red = if r == 2.0 { sym_red } else { FtReduced::new(r, q, spec)? };
    let antisymmetric = combine(
        anti_red.evaluate(Sign::Minus, Sign::Plus),
        anti_red.evaluate(Sign::Minus, Sign::Minus),
        -1.0,
    );
    Ok(CorollaryValues {
        symmetric,
        antisymmetric,
        expected_symmetric: Complex64::new(PI / 2.0 * psi0(-p)?, 0.0),
        expected_antisymmetric: Complex64::new(0.0, PI / 2.0 * phi0_plus(-0.25 * r * r * p)?),
        pairing: p,
    })
}
