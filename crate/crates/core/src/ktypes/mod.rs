//! Exact algebra of the K-finite vectors
//! `[n, l, k, s1, s2] = K̃n(2r) (ξ1 + s1 iξ2)^l (ξ3 + s2 iξ4)^k`
//! under multiplication by `ξj`, the Bessel operators `Pj`, `deg`, `□_{2,2}`,
//! the compact rotations `X12`, `X34` and the raising/lowering combinations.
//!
//! Coefficients are exact Gaussian rationals. Factors of `r²` produced by the
//! rewrites are eliminated with `r² K̃_{n}(2r) = (n−1) K̃_{n−1}(2r) + K̃_{n−2}(2r)`
//! unless [`RewriteMode::SymbolicR2`] keeps them.

mod ambient;
mod orbit;
mod quaternion;
mod rules;

pub use ambient::{
    ambient_apply, ambient_bracket_x, box22_bipolar_fd, box22_cartesian_fd, AmbientFunction, AmbientOperator,
};
pub use orbit::{
    kfinite_certificate, orbit_closure, orbit_closure_reversed, KFiniteCertificate, OrbitSummary, ORBIT_DIM_BOUND,
};
pub use quaternion::{
    embedding_table, fourier_spot_check, quaternion_identity_residual, EmbeddingEntry, QuaternionUnit,
};
pub use rules::{
    apply_box22, apply_deg, apply_mult_xi, apply_n_combination, apply_p, apply_raise_lower, apply_raise_lower_composed,
    apply_x, Pair,
};

use crate::geometry::ConePoint;
use crate::special::ktilde;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exact Gaussian rational.
pub type Coef = Complex<BigRational>;

pub fn coef(re: i64, im: i64) -> Coef {
    Complex::new(
        BigRational::from_integer(BigInt::from(re)),
        BigRational::from_integer(BigInt::from(im)),
    )
}

pub fn coef_ratio(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Coef {
    Complex::new(
        BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
        BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
    )
}

pub fn coef_to_f64(c: &Coef) -> Complex64 {
    Complex64::new(c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN))
}

/// Orientation `±1` of `ξ1 ± iξ2` or `ξ3 ± iξ4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orient {
    Minus,
    Plus,
}

impl Orient {
    pub fn sign(self) -> i64 {
        match self {
            Orient::Plus => 1,
            Orient::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Orient::Plus => Orient::Minus,
            Orient::Minus => Orient::Plus,
        }
    }
}

/// `r^{2·r2} K̃n(2r) (ξ1 + s1 iξ2)^l (ξ3 + s2 iξ4)^k` on the cone. Canonical
/// form has `s1 = +` when `l = 0` and `s2 = +` when `k = 0`; `r2 = 0` except
/// in [`RewriteMode::SymbolicR2`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KBasisElement {
    pub n: i64,
    pub l: u32,
    pub k: u32,
    pub s1: Orient,
    pub s2: Orient,
    pub r2: u32,
}

impl KBasisElement {
    pub fn new(n: i64, l: u32, k: u32, s1: Orient, s2: Orient) -> Self {
        Self { n, l, k, s1, s2, r2: 0 }.canonical()
    }

    fn canonical(mut self) -> Self {
        if self.l == 0 {
            self.s1 = Orient::Plus;
        }
        if self.k == 0 {
            self.s2 = Orient::Plus;
        }
        self
    }

    /// Square integrability on the cone: `n ≤ min(k, l)`.
    pub fn in_l2(&self) -> bool {
        self.n <= i64::from(self.l.min(self.k))
    }

    /// `r^{l+k+2·r2} K̃n(2r) e^{i s1 l θ1} e^{i s2 k θ2}`.
    pub fn eval_polar(&self, r: f64, theta1: f64, theta2: f64) -> Result<Complex64> {
        let n = i32::try_from(self.n).map_err(|_| Error::domain("K-basis", self.n as f64, "index out of range"))?;
        let radial = r.powi((self.l + self.k + 2 * self.r2) as i32) * ktilde(n, 2.0 * r)?;
        let phase =
            self.s1.sign() as f64 * f64::from(self.l) * theta1 + self.s2.sign() as f64 * f64::from(self.k) * theta2;
        Ok(Complex64::from_polar(radial, phase))
    }

    /// `K̃n(2r) (ξ1 + s1 iξ2)^l (ξ3 + s2 iξ4)^k` from Cartesian coordinates.
    pub fn eval_cartesian(&self, p: &ConePoint) -> Result<Complex64> {
        let [x1, x2, x3, x4] = p.embed().coords();
        let n = i32::try_from(self.n).map_err(|_| Error::domain("K-basis", self.n as f64, "index out of range"))?;
        let a = Complex64::new(x1, self.s1.sign() as f64 * x2);
        let b = Complex64::new(x3, self.s2.sign() as f64 * x4);
        let r = p.r();
        Ok(a.powu(self.l) * b.powu(self.k) * ktilde(n, 2.0 * r)? * r.powi(2 * self.r2 as i32))
    }
}

impl fmt::Display for KBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sg = |o: Orient| if o == Orient::Plus { '+' } else { '-' };
        if self.r2 > 0 {
            write!(f, "r^{}", 2 * self.r2)?;
        }
        write!(f, "[{},{},{},{},{}]", self.n, self.l, self.k, sg(self.s1), sg(self.s2))
    }
}

/// How products by `r²` are represented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RewriteMode {
    /// Eliminate every `r²` with the K-Bessel recurrence.
    #[default]
    Reduced,
    /// Keep `r²` factors symbolic.
    SymbolicR2,
}

/// Finite linear combination of basis elements with exact coefficients, in
/// canonical form: no zero coefficients, one entry per key.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KVector {
    terms: BTreeMap<KBasisElement, Coef>,
}

impl KVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: KBasisElement) -> Self {
        let mut v = Self::zero();
        v.add_term(b, coef(1, 0));
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (KBasisElement, Coef)>) -> Self {
        let mut v = Self::zero();
        for (b, c) in terms {
            v.add_term(b, c);
        }
        v
    }

    pub fn add_term(&mut self, b: KBasisElement, c: Coef) {
        if c.is_zero() {
            return;
        }
        let b = b.canonical();
        let entry = self.terms.entry(b).or_insert_with(Coef::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KBasisElement, &Coef)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: &KBasisElement) -> Coef {
        self.terms.get(&b.canonical()).cloned().unwrap_or_else(Coef::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        out
    }

    /// `self += c·other` in place.
    pub fn add_scaled(&mut self, other: &Self, c: &Coef) {
        for (b, x) in &other.terms {
            self.add_term(*b, x * c);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&coef(-1, 0)))
    }

    pub fn scale(&self, c: &Coef) -> Self {
        Self::from_terms(self.terms.iter().map(|(b, x)| (*b, x * c)))
    }

    /// Applies a basis-wise map linearly.
    pub fn map_linear(&self, f: impl Fn(&KBasisElement) -> Result<KVector>) -> Result<KVector> {
        let mut out = KVector::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b)?, c);
        }
        Ok(out)
    }

    /// Replaces every `r^{2m}[n, …]` by its K-Bessel reduction.
    pub fn reduce_r2(&self) -> KVector {
        let mut out = KVector::zero();
        for (b, c) in &self.terms {
            out = out.add(&reduce_term(*b).scale(c));
        }
        out
    }

    pub fn eval(&self, r: f64, theta1: f64, theta2: f64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (b, c) in &self.terms {
            acc += coef_to_f64(c) * b.eval_polar(r, theta1, theta2)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for KVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}{:+}i){}", c.re, c.im, b)?;
        }
        Ok(())
    }
}

/// `r²[n] = (n−1)[n−1] + [n−2]`, applied until no `r²` remains.
fn reduce_term(b: KBasisElement) -> KVector {
    if b.r2 == 0 {
        return KVector::basis(b);
    }
    let lower = KBasisElement { r2: b.r2 - 1, ..b };
    let first = reduce_term(KBasisElement { n: b.n - 1, ..lower }).scale(&coef(b.n - 1, 0));
    let second = reduce_term(KBasisElement { n: b.n - 2, ..lower });
    first.add(&second)
}
