//! Split quaternions `H_R ≅ R^{2,2}`, the dual space with its `(2,2)` form,
//! and the bipolar chart `(r, θ1, θ2)` of the dual light cone `C*`.

use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// A point `X = (x1, x2, x3, x4)` of the split quaternions, realised as the
/// matrix `[[x1 - i x2, x3 + i x4], [x3 - i x4, x1 + i x2]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitQuaternion {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub x4: f64,
}

impl SplitQuaternion {
    pub const fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Self { x1, x2, x3, x4 }
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.x1, self.x2, self.x3, self.x4]
    }

    /// `N(X) = x1² + x2² − x3² − x4²`.
    pub fn norm(&self) -> f64 {
        self.x1 * self.x1 + self.x2 * self.x2 - self.x3 * self.x3 - self.x4 * self.x4
    }

    /// Entries of the 2×2 complex matrix realisation, row major.
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        [
            [Complex64::new(self.x1, -self.x2), Complex64::new(self.x3, self.x4)],
            [Complex64::new(self.x3, -self.x4), Complex64::new(self.x1, self.x2)],
        ]
    }

    /// `u' = (x1, x2)`.
    pub fn u_prime(&self) -> [f64; 2] {
        [self.x1, self.x2]
    }

    /// `u'' = (x3, x4)`.
    pub fn u_double_prime(&self) -> [f64; 2] {
        [self.x3, self.x4]
    }

    pub fn scale(&self, a: f64) -> Self {
        Self::new(a * self.x1, a * self.x2, a * self.x3, a * self.x4)
    }

    /// Euclidean length.
    pub fn euclidean_norm(&self) -> f64 {
        self.coords().iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

/// Inversion `X ↦ 4X / N(X)` underlying the action of `w'0`.
pub fn w0_point(x: &SplitQuaternion) -> Result<SplitQuaternion> {
    let n = x.norm();
    if n == 0.0 {
        return Err(Error::Singular {
            what: "w0 inversion",
            reason: "N(X) = 0 on the cone",
        });
    }
    Ok(x.scale(4.0 / n))
}

/// `(w'0 φ)(X) = (4/N(X)) φ(4X/N(X))`.
pub fn w0_act<F>(phi: F, x: &SplitQuaternion) -> Result<Complex64>
where
    F: Fn(&SplitQuaternion) -> Complex64,
{
    let y = w0_point(x)?;
    Ok(phi(&y) * (4.0 / x.norm()))
}

/// The eigenvalue `2^{4l+2} N(X)^{-2l-1}` of `w'0` on functions homogeneous of
/// degree `2l`; `N(X)^s` uses the principal branch, so `N(X) > 0` is required
/// for non-integer `l`.
pub fn w0_homogeneous_multiplier(l: Complex64, x: &SplitQuaternion) -> Result<Complex64> {
    let n = x.norm();
    if n == 0.0 {
        return Err(Error::Singular {
            what: "w0 multiplier",
            reason: "N(X) = 0 on the cone",
        });
    }
    let two = Complex64::new(2.0, 0.0);
    let pow_n = Complex64::new(n, 0.0).powc(-2.0 * l - 1.0);
    Ok(two.powc(4.0 * l + 2.0) * pow_n)
}

/// A covector `ξ ∈ H_R*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualVector {
    pub xi1: f64,
    pub xi2: f64,
    pub xi3: f64,
    pub xi4: f64,
}

impl DualVector {
    pub const fn new(xi1: f64, xi2: f64, xi3: f64, xi4: f64) -> Self {
        Self { xi1, xi2, xi3, xi4 }
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.xi1, self.xi2, self.xi3, self.xi4]
    }

    pub fn from_coords(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    /// Euclidean pairing `ξ·X = Σ ξ_j x_j` used in the Fourier transform.
    pub fn dot_point(&self, x: &SplitQuaternion) -> f64 {
        self.xi1 * x.x1 + self.xi2 * x.x2 + self.xi3 * x.x3 + self.xi4 * x.x4
    }

    /// Euclidean inner product of two covectors.
    pub fn euclidean_dot(&self, other: &DualVector) -> f64 {
        self.xi1 * other.xi1 + self.xi2 * other.xi2 + self.xi3 * other.xi3 + self.xi4 * other.xi4
    }

    pub fn euclidean_norm(&self) -> f64 {
        self.euclidean_dot(self).sqrt()
    }

    pub fn sub(&self, other: &DualVector) -> DualVector {
        DualVector::new(
            self.xi1 - other.xi1,
            self.xi2 - other.xi2,
            self.xi3 - other.xi3,
            self.xi4 - other.xi4,
        )
    }

    pub fn scale(&self, a: f64) -> DualVector {
        DualVector::new(a * self.xi1, a * self.xi2, a * self.xi3, a * self.xi4)
    }

    /// `(r1, r2) = (|(ξ1, ξ2)|, |(ξ3, ξ4)|)`.
    pub fn plane_radii(&self) -> (f64, f64) {
        (self.xi1.hypot(self.xi2), self.xi3.hypot(self.xi4))
    }
}

/// The `(2,2)`-signature form `⟨ξ, ξ'⟩ = ξ1ξ1' + ξ2ξ2' − ξ3ξ3' − ξ4ξ4'`.
pub fn pair(xi: &DualVector, xi2: &DualVector) -> f64 {
    xi.xi1 * xi2.xi1 + xi.xi2 * xi2.xi2 - xi.xi3 * xi2.xi3 - xi.xi4 * xi2.xi4
}

/// `N(X)`.
pub fn norm(x: &SplitQuaternion) -> f64 {
    x.norm()
}

/// A point of `C* \ {0}` in bipolar coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConePoint {
    r: f64,
    theta1: f64,
    theta2: f64,
}

impl ConePoint {
    /// Angles are reduced to `[0, 2π)`; `r` must be positive.
    pub fn new(r: f64, theta1: f64, theta2: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::domain("cone point", r, "radius must be positive"));
        }
        Ok(Self {
            r,
            theta1: theta1.rem_euclid(TAU),
            theta2: theta2.rem_euclid(TAU),
        })
    }

    pub fn r(&self) -> f64 {
        self.r
    }
    pub fn theta1(&self) -> f64 {
        self.theta1
    }
    pub fn theta2(&self) -> f64 {
        self.theta2
    }

    /// `r (cos θ1, sin θ1, cos θ2, sin θ2)`.
    pub fn embed(&self) -> DualVector {
        let (s1, c1) = self.theta1.sin_cos();
        let (s2, c2) = self.theta2.sin_cos();
        DualVector::new(self.r * c1, self.r * s1, self.r * c2, self.r * s2)
    }

    /// Point on the same ray at radius `s·r`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::new(self.r * s, self.theta1, self.theta2)
    }

    /// The antipodal point `−ξ`.
    pub fn antipode(&self) -> Self {
        Self {
            r: self.r,
            theta1: (self.theta1 + std::f64::consts::PI).rem_euclid(TAU),
            theta2: (self.theta2 + std::f64::consts::PI).rem_euclid(TAU),
        }
    }

    /// Inverse chart; rejects points off the cone beyond `tol` and the origin.
    pub fn from_dual(xi: &DualVector, tol: f64) -> Result<Self> {
        let (r1, r2) = xi.plane_radii();
        if (r1 - r2).abs() > tol * (r1 + r2).max(1.0) {
            return Err(Error::domain("cone chart", r1 - r2, "point is not on the cone"));
        }
        let r = 0.5 * (r1 + r2);
        Self::new(r, xi.xi2.atan2(xi.xi1), xi.xi4.atan2(xi.xi3))
    }
}

/// `cone_embed(p)`.
pub fn cone_embed(p: &ConePoint) -> DualVector {
    p.embed()
}

/// Which density on the bipolar chart a cone integral uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeMeasure {
    /// `dS/‖ξ‖ = r dr dθ1 dθ2`, used in the operator kernels.
    SurfaceOverNorm,
    /// `½ dS/‖ξ‖ = (r/2) dr dθ1 dθ2`, the `δ(C)` normalisation and the measure
    /// of the Hilbert space isomorphism `L²(C*) ≅ L²(R+, r/2 dr) ⊗ L²(S¹×S¹)`.
    DeltaCone,
}

impl ConeMeasure {
    pub fn weight(self, r: f64) -> f64 {
        match self {
            ConeMeasure::SurfaceOverNorm => r,
            ConeMeasure::DeltaCone => 0.5 * r,
        }
    }
}

/// Radial density `w(r)` of `dS/‖ξ‖` in bipolar coordinates.
pub fn cone_measure_weight(p: &ConePoint) -> f64 {
    ConeMeasure::SurfaceOverNorm.weight(p.r())
}

/// Radial density of the `δ(C)`-normalised measure, `r/2`.
pub fn cone_half_measure_weight(p: &ConePoint) -> f64 {
    ConeMeasure::DeltaCone.weight(p.r())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn det(m: [[Complex64; 2]; 2]) -> Complex64 {
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    #[test]
    fn norm_examples() {
        assert_eq!(SplitQuaternion::new(1.0, 0.0, 0.0, 0.0).norm(), 1.0);
        assert_eq!(SplitQuaternion::new(1.0, 0.0, 1.0, 0.0).norm(), 0.0);
        let x = SplitQuaternion::new(0.3, -1.2, 0.5, 2.0);
        let d = det(x.matrix());
        assert!((x.norm() - d.re).abs() < 1e-14 && d.im.abs() < 1e-14);
    }

    #[test]
    fn pair_examples() {
        let a = DualVector::new(1.0, 0.0, 1.0, 0.0);
        assert_eq!(pair(&a, &a), 0.0);
        assert_eq!(
            pair(
                &DualVector::new(1.0, 0.0, 0.0, 0.0),
                &DualVector::new(0.0, 0.0, 1.0, 0.0)
            ),
            0.0
        );
    }

    #[test]
    fn embed_examples() {
        let e = ConePoint::new(1.0, 0.0, 0.0).unwrap().embed();
        assert_eq!(e.coords(), [1.0, 0.0, 1.0, 0.0]);
        let e = ConePoint::new(2.0, PI / 2.0, 0.0).unwrap().embed();
        assert!((e.xi1).abs() < 1e-15 && (e.xi2 - 2.0).abs() < 1e-15);
        assert_eq!((e.xi3, e.xi4), (2.0, 0.0));
        assert!(ConePoint::new(0.0, 0.0, 0.0).is_err());
        assert!(ConePoint::new(-1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn half_density() {
        let p = ConePoint::new(1.0, 0.3, 0.2).unwrap();
        assert_eq!(cone_half_measure_weight(&p), 0.5);
        assert_eq!(cone_measure_weight(&p), 1.0);
    }

    #[test]
    fn w0_rejects_cone_and_scales_constants() {
        let cone = SplitQuaternion::new(1.0, 0.0, 1.0, 0.0);
        assert!(w0_act(|_| Complex64::new(1.0, 0.0), &cone).is_err());
        let x = SplitQuaternion::new(1.5, 0.2, 0.3, -0.4);
        let v = w0_act(|_| Complex64::new(1.0, 0.0), &x).unwrap();
        assert!((v.re - 4.0 / x.norm()).abs() < 1e-15);
    }

    fn cone_pt() -> impl Strategy<Value = ConePoint> {
        (0.05f64..5.0, 0.0f64..TAU, 0.0f64..TAU).prop_map(|(r, a, b)| ConePoint::new(r, a, b).unwrap())
    }

    fn off_cone() -> impl Strategy<Value = SplitQuaternion> {
        prop::array::uniform4(-3.0f64..3.0)
            .prop_map(|c| SplitQuaternion::new(c[0], c[1], c[2], c[3]))
            .prop_filter("off the cone", |x| x.norm().abs() > 1e-2)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn embedded_points_are_null(p in cone_pt()) {
            let e = p.embed();
            prop_assert!(pair(&e, &e).abs() <= 1e-14 * p.r() * p.r());
            prop_assert!((e.euclidean_norm() - 2f64.sqrt() * p.r()).abs() <= 1e-14 * p.r());
        }

        #[test]
        fn difference_of_null_vectors(p in cone_pt(), q in cone_pt()) {
            let (a, b) = (p.embed(), q.embed());
            let d = a.sub(&b);
            let lhs = pair(&d, &d) + 2.0 * pair(&a, &b);
            prop_assert!(lhs.abs() <= 1e-12 * (1.0 + p.r() * q.r() + p.r() * p.r() + q.r() * q.r()));
        }

        #[test]
        fn norm_is_quadratic(c in prop::array::uniform4(-5.0f64..5.0), a in -4.0f64..4.0) {
            let x = SplitQuaternion::new(c[0], c[1], c[2], c[3]);
            prop_assert!((x.scale(a).norm() - a * a * x.norm()).abs() <= 1e-12 * (1.0 + a * a * 100.0));
        }

        #[test]
        fn form_is_symmetric_bilinear(c in prop::array::uniform4(-5.0f64..5.0), d in prop::array::uniform4(-5.0f64..5.0), e in prop::array::uniform4(-5.0f64..5.0), a in -3.0f64..3.0) {
            let (x, y, z) = (DualVector::from_coords(c), DualVector::from_coords(d), DualVector::from_coords(e));
            prop_assert!((pair(&x, &y) - pair(&y, &x)).abs() < 1e-12);
            let lin = DualVector::from_coords([c[0] * a + e[0], c[1] * a + e[1], c[2] * a + e[2], c[3] * a + e[3]]);
            prop_assert!((pair(&lin, &y) - (a * pair(&x, &y) + pair(&z, &y))).abs() < 1e-10);
        }

        #[test]
        fn w0_is_an_involution(x in off_cone(), k in 0.1f64..2.0) {
            let phi = |y: &SplitQuaternion| Complex64::new((k * y.x1).sin() + y.x3, y.x2 * y.x4);
            let once = |y: &SplitQuaternion| w0_act(phi, y).unwrap();
            let twice = w0_act(once, &x).unwrap();
            let direct = phi(&x);
            prop_assert!((twice - direct).norm() <= 1e-10 * (1.0 + direct.norm()));
        }

        #[test]
        fn w0_multiplier_on_homogeneous_functions(
            c in prop::array::uniform4(-3.0f64..3.0),
            which in 0usize..4,
        ) {
            // Positive N only: 4X/N is then a positive multiple of X.
            let x = SplitQuaternion::new(c[0], c[1], c[2], c[3]);
            let x = if x.norm() < 0.0 { SplitQuaternion::new(c[2], c[3], c[0], c[1]) } else { x };
            prop_assume!(x.norm() > 1e-2);
            // Degrees 2l ∈ {−1, −1 + 2i·0.7, 0, 2}.
            let l = [
                Complex64::new(-0.5, 0.0),
                Complex64::new(-0.5, 0.7),
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
            ][which];
            let phi = |y: &SplitQuaternion| {
                let angular = (y.x1 + 2.0 * y.x3 - y.x4) / y.euclidean_norm() + 3.0;
                Complex64::new(y.norm(), 0.0).powc(l) * angular
            };
            let direct = w0_act(phi, &x).unwrap();
            let predicted = w0_homogeneous_multiplier(l, &x).unwrap() * phi(&x);
            prop_assert!((direct - predicted).norm() <= 1e-10 * predicted.norm());
        }
    }
}
