//! Integral operators on `L²(C*)` with kernels `Ψ0` and `Φ0⁺`, the test
//! functions `f_{ξ,ε}`, and the closed θ-integrands their images reduce to.
//!
//! Cone integrals use the `dS/‖ξ'‖ = r' dr' dθ1' dθ2'` density. For an
//! evaluation point `ξ` the pairing factorises as `r' P(θ')`, so each angular
//! node carries a one-dimensional radial integral, taken in `v = √r'` to
//! absorb the `|⟨ξ,ξ'⟩|^{−1/2}` singularity of `f_{ξ,ε}`.

use crate::geometry::{pair, ConePoint, DualVector};
use crate::kernels::{phi0_plus, psi0, QuadratureSpec};
use crate::quadrature::{gauss_legendre, integrate_breakpoints, AdaptiveOptions};
use crate::summation::ComplexSum;
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::{PI, TAU};
use std::sync::Arc;

/// Bound on `|f(r, θ)|` for large `r`, used to cut the radial integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayCertificate {
    /// `|f| ≲ r^power e^{−rate·r}`.
    Exponential { rate: f64, power: f64 },
    /// `|f| ≲ r^power e^{−rate·√r}`.
    StretchedExponential { rate: f64, power: f64 },
    /// `|f| ≲ r^{−exponent}`, `exponent > 2`.
    PowerLaw { exponent: f64 },
    /// `f = 0` for `r > radius`.
    CompactSupport { radius: f64 },
}

impl DecayCertificate {
    /// Radius beyond which `r·|f|` is below `tol / 10`.
    pub fn cutoff(&self, tol: f64) -> Result<f64> {
        let target = (tol / 10.0).ln();
        let search = |log_bound: &dyn Fn(f64) -> f64| {
            let mut r: f64 = 1.0;
            while log_bound(r) > target || log_bound(2.0 * r) > target {
                r *= 1.5;
                if r > 1e12 {
                    break;
                }
            }
            r
        };
        match *self {
            DecayCertificate::Exponential { rate, power } if rate > 0.0 => {
                Ok(search(&|r: f64| (power + 1.0) * r.ln() - rate * r))
            }
            DecayCertificate::StretchedExponential { rate, power } if rate > 0.0 => {
                Ok(search(&|r: f64| (power + 1.0) * r.ln() - rate * r.sqrt()))
            }
            DecayCertificate::PowerLaw { exponent } if exponent > 2.0 => Ok((10.0 / tol).powf(1.0 / (exponent - 1.0))),
            DecayCertificate::CompactSupport { radius } if radius > 0.0 => Ok(radius),
            other => Err(Error::Unsupported(format!(
                "decay certificate {other:?} does not guarantee convergence"
            ))),
        }
    }
}

/// Quadrature nodes `(θ1, θ2, weight)` on `S¹ × S¹`.
#[derive(Debug, Clone)]
pub enum AngularRule {
    /// Periodic trapezoid rule with `n × n` nodes, offset from the grid lines.
    Torus {
        n: usize,
    },
    Nodes(Arc<Vec<(f64, f64, f64)>>),
}

impl AngularRule {
    /// Polar rule on a geodesic disc: Gauss–Legendre in the radius, midpoint
    /// trapezoid in the azimuth. With `antipodal` the nodes are duplicated at
    /// `θ + (π, π)` with equal weights, so antipodal symmetry is exact.
    pub fn disc(center: (f64, f64), width: f64, n_radial: usize, n_azimuth: usize, antipodal: bool) -> Self {
        let rule = gauss_legendre(n_radial);
        let h = TAU / n_azimuth as f64;
        let mut nodes = Vec::with_capacity(2 * n_radial * n_azimuth);
        for (x, gw) in rule.nodes.iter().zip(&rule.weights) {
            let rho = 0.5 * width * (x + 1.0);
            for j in 0..n_azimuth {
                let phi = (j as f64 + 0.5) * h;
                nodes.push((
                    center.0 + rho * phi.cos(),
                    center.1 + rho * phi.sin(),
                    0.5 * width * gw * rho * h,
                ));
            }
        }
        if antipodal {
            let mirror: Vec<_> = nodes.iter().map(|&(a, b, w)| (a + PI, b + PI, w)).collect();
            nodes.extend(mirror);
        }
        AngularRule::Nodes(Arc::new(nodes))
    }

    pub fn nodes(&self) -> Vec<(f64, f64, f64)> {
        match self {
            AngularRule::Torus { n } => {
                let h = TAU / *n as f64;
                let mut out = Vec::with_capacity(n * n);
                for i in 0..*n {
                    for j in 0..*n {
                        out.push(((i as f64 + 0.3) * h, (j as f64 + 0.71) * h, h * h));
                    }
                }
                out
            }
            AngularRule::Nodes(v) => v.as_ref().clone(),
        }
    }
}

type Eval = dyn Fn(f64, f64, f64) -> Complex64 + Send + Sync;

/// A function on `C* ≅ R+ × S¹ × S¹` with a decay certificate and the
/// angular rule suited to its support.
#[derive(Clone)]
pub struct ConeFunction {
    eval: Arc<Eval>,
    pub decay: DecayCertificate,
    pub angular: AngularRule,
}

impl std::fmt::Debug for ConeFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConeFunction")
            .field("decay", &self.decay)
            .field("angular", &self.angular)
            .finish_non_exhaustive()
    }
}

impl ConeFunction {
    pub fn new(
        eval: impl Fn(f64, f64, f64) -> Complex64 + Send + Sync + 'static,
        decay: DecayCertificate,
        angular: AngularRule,
    ) -> Self {
        Self {
            eval: Arc::new(eval),
            decay,
            angular,
        }
    }

    pub fn eval(&self, r: f64, theta1: f64, theta2: f64) -> Complex64 {
        (self.eval)(r, theta1, theta2)
    }

    pub fn at(&self, p: &ConePoint) -> Complex64 {
        self.eval(p.r(), p.theta1(), p.theta2())
    }

    pub fn conj(&self) -> Self {
        let inner = self.eval.clone();
        Self {
            eval: Arc::new(move |r, a, b| inner(r, a, b).conj()),
            decay: self.decay,
            angular: self.angular.clone(),
        }
    }

    /// `ξ' ↦ f(aξ')`.
    pub fn rescaled(&self, a: f64) -> Self {
        let inner = self.eval.clone();
        let decay = match self.decay {
            DecayCertificate::Exponential { rate, power } => DecayCertificate::Exponential { rate: rate * a, power },
            DecayCertificate::StretchedExponential { rate, power } => DecayCertificate::StretchedExponential {
                rate: rate * a.sqrt(),
                power,
            },
            DecayCertificate::CompactSupport { radius } => DecayCertificate::CompactSupport { radius: radius / a },
            p @ DecayCertificate::PowerLaw { .. } => p,
        };
        Self {
            eval: Arc::new(move |r, t1, t2| inner(a * r, t1, t2)),
            decay,
            angular: self.angular.clone(),
        }
    }

    /// `‖f‖²` against `(r/2) dr dθ1 dθ2`, on the radial grid `v = √r`.
    pub fn l2_norm_sq(&self, spec: &QuadratureSpec) -> Result<f64> {
        let rmax = self.decay.cutoff(spec.abs_tol)?;
        let opts = AdaptiveOptions::with_tol(spec.abs_tol, spec.rel_tol);
        let mut acc = ComplexSum::new();
        for (t1, t2, w) in self.angular.nodes() {
            let radial = integrate_breakpoints(
                |v: f64| {
                    let r = v * v;
                    self.eval(r, t1, t2).norm_sqr() * 0.5 * r * 2.0 * v
                },
                &radial_breaks(rmax.sqrt()),
                opts,
            );
            acc.add(Complex64::new(radial.value * w, 0.0));
        }
        Ok(acc.value().re)
    }
}

/// Geometric breakpoints `0, 1/4, 1/2, 1, 2, … , vmax`; a single wide panel
/// lets Gauss–Kronrod misjudge integrands concentrated near the origin.
fn radial_breaks(vmax: f64) -> Vec<f64> {
    let mut b = vec![0.0];
    let mut x = 0.25;
    while x < vmax {
        b.push(x);
        x *= 2.0;
    }
    b.push(vmax);
    b
}

/// Operator value with the accumulated radial quadrature error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorValue {
    pub value: Complex64,
    pub error: f64,
}

fn unit(theta1: f64, theta2: f64) -> DualVector {
    let (s1, c1) = theta1.sin_cos();
    let (s2, c2) = theta2.sin_cos();
    DualVector::new(c1, s1, c2, s2)
}

/// `Σ_nodes w ∫ K(r' P(θ')) f(r', θ') r' dr'`, where `K` acts on the pairing
/// value `x = r' P` and returns `None` where it vanishes identically.
fn apply<P, K>(
    f: &ConeFunction,
    pairing: P,
    kernel: K,
    skip: impl Fn(f64) -> bool + Sync,
    spec: &QuadratureSpec,
) -> Result<OperatorValue>
where
    P: Fn(&DualVector) -> f64 + Sync,
    K: Fn(f64) -> Result<Complex64> + Sync,
{
    spec.validate()?;
    let vmax = f.decay.cutoff(spec.abs_tol)?.sqrt();
    let opts = AdaptiveOptions {
        abs_tol: spec.abs_tol,
        rel_tol: spec.rel_tol,
        max_subdivisions: 4000,
    };
    let nodes = f.angular.nodes();
    let parts: Vec<Result<(Complex64, f64)>> = nodes
        .par_iter()
        .map(|&(t1, t2, w)| {
            let p = pairing(&unit(t1, t2));
            if skip(p) || p == 0.0 {
                return Ok((Complex64::new(0.0, 0.0), 0.0));
            }
            let fv0 = f.eval(1.0, t1, t2);
            if fv0 == Complex64::new(0.0, 0.0) && f.eval(0.25, t1, t2) == Complex64::new(0.0, 0.0) {
                // Radial profiles never vanish at two radii unless ψ does.
                return Ok((Complex64::new(0.0, 0.0), 0.0));
            }
            let failed = std::cell::Cell::new(None);
            let integrand = |v: f64| {
                if v == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let r = v * v;
                match kernel(r * p) {
                    Ok(k) => k * f.eval(r, t1, t2) * (2.0 * r * v),
                    Err(e) => {
                        failed.set(Some(e));
                        Complex64::new(0.0, 0.0)
                    }
                }
            };
            let est = integrate_breakpoints(integrand, &radial_breaks(vmax), opts);
            if let Some(e) = failed.take() {
                return Err(e);
            }
            Ok((est.value * w, est.error * w.abs()))
        })
        .collect();
    let mut acc = ComplexSum::new();
    let mut err = 0.0;
    for p in parts {
        let (v, e) = p?;
        acc.add(v);
        err += e;
    }
    let value = acc.value();
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::no_convergence("cone operator", "non-finite value"));
    }
    Ok(OperatorValue { value, error: err })
}

/// `(𝓕_{C*} f)(ξ) = −(1/π) ∫ Ψ0(ξ·ξ') f(ξ') dS/‖ξ'‖`, Euclidean pairing.
pub fn op_fcstar(f: &ConeFunction, xi: &ConePoint, spec: &QuadratureSpec) -> Result<OperatorValue> {
    let x = xi.embed();
    apply(
        f,
        |e| x.euclidean_dot(e),
        |t| Ok(Complex64::new(-psi0(t)? / PI, 0.0)),
        |_| false,
        spec,
    )
}

/// `(𝓕_C f)(ξ) = −(1/π) ∫ Ψ0(−⟨ξ,ξ'⟩) f(ξ') dS/‖ξ'‖`.
pub fn op_fc(f: &ConeFunction, xi: &ConePoint, spec: &QuadratureSpec) -> Result<OperatorValue> {
    let x = xi.embed();
    apply(
        f,
        |e| pair(&x, e),
        |t| Ok(Complex64::new(-psi0(-t)? / PI, 0.0)),
        |_| false,
        spec,
    )
}

/// `(P̂l'_R f)(ξ) = (i/4π) ∫ Φ0⁺(−(R²/4)⟨ξ,ξ'⟩) f(ξ') dS/‖ξ'‖`; only the
/// half `⟨ξ,ξ'⟩ < 0` contributes, decided from the angular factor.
pub fn op_plhat_prime(f: &ConeFunction, r: f64, xi: &ConePoint, spec: &QuadratureSpec) -> Result<OperatorValue> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain("PlHat'", r, "R must be positive"));
    }
    let x = xi.embed();
    apply(
        f,
        |e| pair(&x, e),
        |t| Ok(Complex64::new(0.0, phi0_plus(-0.25 * r * r * t)? / (4.0 * PI))),
        |p| p >= 0.0,
        spec,
    )
}

/// Radial profile `h` in `f_{ξ,ε}(ξ') = ψ · h(|⟨ξ,ξ'⟩|)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialProfile {
    /// `h(t) = t^{−1/2} e^{−t}`, the definition as written.
    ExpAbs,
    /// `h(t) = t^{−1/2} e^{−√t}`, the profile whose images produce the
    /// `√t e^{−√t}` radial integrals of the closed θ-integrands.
    ExpSqrt,
}

impl RadialProfile {
    pub fn eval(self, t: f64) -> f64 {
        match self {
            RadialProfile::ExpAbs => (-t).exp() / t.sqrt(),
            RadialProfile::ExpSqrt => (-t.sqrt()).exp() / t.sqrt(),
        }
    }
}

fn wrap(a: f64) -> f64 {
    let x = (a + PI).rem_euclid(TAU) - PI;
    if x == -PI {
        PI
    } else {
        x
    }
}

/// Smooth bump `exp(−1/(1 − (d/w)²))` of geodesic radius `w` on the torus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularBump {
    pub center: (f64, f64),
    pub width: f64,
}

impl AngularBump {
    pub fn eval(&self, theta1: f64, theta2: f64) -> f64 {
        let d1 = wrap(theta1 - self.center.0);
        let d2 = wrap(theta2 - self.center.1);
        let q = (d1 * d1 + d2 * d2) / (self.width * self.width);
        if q >= 1.0 {
            0.0
        } else {
            (-1.0 / (1.0 - q)).exp()
        }
    }
}

/// `f_{ξ,ε}(ξ') = ψ(θ') · h(|⟨ξ,ξ'⟩|)` with
/// `ψ = B(θ' − c) + (−1)^ε B(θ' − c − (π, π))`, where `B` is a bump of width
/// `w` centred at `c = (θ1_ξ, θ2_ξ + π)`. There `⟨ξ, ·⟩` is maximal, so on the
/// support `|⟨ξ, e(θ')⟩| ≥ r_ξ (1 + cos w)`-ish stays away from zero, and the
/// antipodal copy realises `ψ(−ξ') = (−1)^ε ψ(ξ')`.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunctionFxiEps {
    pub base_xi: ConePoint,
    pub parity_eps: u8,
    pub bump: AngularBump,
    pub profile: RadialProfile,
    /// Gauss–Legendre nodes in the disc radius.
    pub n_radial: usize,
    /// Trapezoid nodes in the disc azimuth.
    pub n_azimuth: usize,
}

pub const BUMP_WIDTH: f64 = 0.8;

/// Test function with the closed-chain profile and default angular rule.
pub fn make_f_xi_eps(base_xi: &ConePoint, parity_eps: u8) -> Result<TestFunctionFxiEps> {
    TestFunctionFxiEps::new(base_xi, parity_eps, RadialProfile::ExpSqrt)
}

impl TestFunctionFxiEps {
    pub fn new(base_xi: &ConePoint, parity_eps: u8, profile: RadialProfile) -> Result<Self> {
        if parity_eps > 1 {
            return Err(Error::domain("f_xi_eps", parity_eps as f64, "parity must be 0 or 1"));
        }
        Ok(Self {
            base_xi: *base_xi,
            parity_eps,
            bump: AngularBump {
                center: (base_xi.theta1(), base_xi.theta2() + PI),
                width: BUMP_WIDTH,
            },
            profile,
            n_radial: 16,
            n_azimuth: 32,
        })
    }

    pub fn sign(&self) -> f64 {
        if self.parity_eps == 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn psi(&self, theta1: f64, theta2: f64) -> f64 {
        self.bump.eval(theta1, theta2) + self.sign() * self.bump.eval(theta1 - PI, theta2 - PI)
    }

    /// `⟨ξ, e(θ')⟩`.
    pub fn angular_pairing(&self, theta1: f64, theta2: f64) -> f64 {
        pair(&self.base_xi.embed(), &unit(theta1, theta2))
    }

    pub fn eval(&self, r: f64, theta1: f64, theta2: f64) -> f64 {
        let psi = self.psi(theta1, theta2);
        if psi == 0.0 {
            return 0.0;
        }
        let t = (r * self.angular_pairing(theta1, theta2)).abs();
        psi * self.profile.eval(t)
    }

    /// Lower bound of `|⟨ξ, e(θ')⟩|` on the support of `ψ`.
    pub fn min_pairing(&self) -> f64 {
        // cos d1 + cos d2 on d1² + d2² ≤ w² is minimal on the boundary.
        let w = self.bump.width;
        let mut m = f64::INFINITY;
        for k in 0..=64 {
            let phi = k as f64 * PI / 128.0;
            m = m.min((w * phi.cos()).cos() + (w * phi.sin()).cos());
        }
        self.base_xi.r() * m
    }

    /// Polar nodes on the bump disc and their antipodal images.
    pub fn angular_rule(&self) -> AngularRule {
        AngularRule::disc(self.bump.center, self.bump.width, self.n_radial, self.n_azimuth, true)
    }

    pub fn decay(&self) -> DecayCertificate {
        let m = self.min_pairing();
        match self.profile {
            RadialProfile::ExpAbs => DecayCertificate::Exponential { rate: m, power: -0.5 },
            RadialProfile::ExpSqrt => DecayCertificate::StretchedExponential {
                rate: m.sqrt(),
                power: -0.5,
            },
        }
    }

    pub fn to_cone_function(&self) -> ConeFunction {
        let me = self.clone();
        ConeFunction::new(
            move |r, a, b| Complex64::new(me.eval(r, a, b), 0.0),
            self.decay(),
            self.angular_rule(),
        )
    }

    /// `c_± = ∫_{±⟨ξ,e(θ')⟩ > 0} ψ / ⟨ξ, e(θ')⟩² dθ'` on the function's own
    /// angular rule.
    pub fn angular_constants(&self) -> (f64, f64) {
        let (mut plus, mut minus) = (ComplexSum::new(), ComplexSum::new());
        if let AngularRule::Nodes(nodes) = self.angular_rule() {
            for &(t1, t2, w) in nodes.iter() {
                let a = self.angular_pairing(t1, t2);
                let v = Complex64::new(w * self.psi(t1, t2) / (a * a), 0.0);
                if a > 0.0 {
                    plus.add(v)
                } else {
                    minus.add(v)
                }
            }
        }
        (plus.value().re, minus.value().re)
    }
}

/// θ-integrand of `P̂l'_R f_{ξ,ε}(sξ)`:
/// `(−1)^ε (2√2 i/π²)(3Rc s^{1/2} − 2R³c³ s^{3/2}) / (1 + 2R²c²s)³`, `c = cosh θ`.
pub fn chain_plhat(theta: f64, s: f64, r: f64, parity_eps: u8) -> Complex64 {
    let c = theta.cosh();
    let sign = if parity_eps == 0 { 1.0 } else { -1.0 };
    let num = 3.0 * r * c * s.sqrt() - 2.0 * r.powi(3) * c.powi(3) * s.powf(1.5);
    let den = (1.0 + 2.0 * r * r * c * c * s).powi(3);
    Complex64::new(0.0, sign * 2.0 * 2f64.sqrt() / (PI * PI) * num / den)
}

/// θ-integrand of `𝓕_C f_{ξ,ε}(sξ)`:
/// `(8/π²)(1/(1 + 2√(2s) c)³ + (−1)^ε (1 − 24c²s)/(1 + 8c²s)³)`.
pub fn chain_fc(theta: f64, s: f64, parity_eps: u8) -> f64 {
    let c = theta.cosh();
    let sign = if parity_eps == 0 { 1.0 } else { -1.0 };
    8.0 / (PI * PI)
        * (1.0 / (1.0 + 2.0 * (2.0 * s).sqrt() * c).powi(3)
            + sign * (1.0 - 24.0 * c * c * s) / (1.0 + 8.0 * c * c * s).powi(3))
}

/// `∫₀^∞ g(θ) dθ` for the chain integrands, which decay like `e^{−θ}` or
/// faster once `c²s ≫ 1`.
fn theta_integral(g: impl Fn(f64) -> Complex64, s: f64) -> Complex64 {
    let opts = AdaptiveOptions::with_tol(1e-15, 1e-13);
    // Past θ = acosh(1/√s) + 40 the integrands are below e^{−40} of their peak.
    let knee = (1.0 / s.sqrt()).max(1.0).acosh();
    let end = knee + 40.0;
    integrate_breakpoints(g, &[0.0, knee.max(1e-3), end], opts).value
}

/// `∫₀^∞ chain_plhat dθ`.
pub fn chain_plhat_integral(s: f64, r: f64, parity_eps: u8) -> Complex64 {
    theta_integral(|t| chain_plhat(t, s, r, parity_eps), s)
}

/// `∫₀^∞ chain_fc dθ`.
pub fn chain_fc_integral(s: f64, parity_eps: u8) -> f64 {
    theta_integral(|t| Complex64::new(chain_fc(t, s, parity_eps), 0.0), s).re
}
