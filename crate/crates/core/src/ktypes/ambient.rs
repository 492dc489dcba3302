//! Independent oracle for the rewrite rules: K-vectors are extended off the
//! cone as `K̃n(2ρ)·A^l·B^k` with `ρ` the radius of one plane, and the
//! differential operators are applied through exact jets (value, gradient,
//! Hessian) in Cartesian coordinates.

use super::{coef_to_f64, KVector, Pair};
use crate::special::ktilde;
use crate::{Error, Result};
use num_complex::Complex64;

const EPS: [f64; 4] = [1.0, 1.0, -1.0, -1.0];

type Jet = (Complex64, [Complex64; 4], [[Complex64; 4]; 4]);

/// Differential and multiplication operators on `ℝ⁴`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmbientOperator {
    MultXi(usize),
    /// `Pj = εj ξj □ − 2 deg∘∂j`.
    P(usize),
    /// `Pj(−1) = εj ξj □ − (2 deg + 4)∘∂j`.
    PShifted(usize),
    /// `Σ ξa ∂a + 1`.
    Deg,
    /// `□ = ∂1² + ∂2² − ∂3² − ∂4²`.
    Box,
    /// `X_jk = εjεk ξj ∂k − ξk ∂j`.
    X(usize, usize),
}

/// A K-vector extended off the cone.
#[derive(Debug, Clone)]
pub struct AmbientFunction {
    terms: Vec<(Complex64, i32, u32, u32, f64, f64)>,
    extension: Pair,
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn ipow(z: Complex64, e: i64) -> Complex64 {
    if e < 0 {
        zero()
    } else {
        z.powu(e as u32)
    }
}

impl AmbientFunction {
    /// `v` must be free of symbolic `r²` factors.
    pub fn new(v: &KVector, extension: Pair) -> Result<Self> {
        let mut terms = Vec::with_capacity(v.len());
        for (b, c) in v.terms() {
            if b.r2 != 0 {
                return Err(Error::Unsupported("ambient extension needs r²-reduced input".into()));
            }
            let n = i32::try_from(b.n).map_err(|_| Error::domain("K-basis", b.n as f64, "index out of range"))?;
            terms.push((coef_to_f64(c), n, b.l, b.k, b.s1.sign() as f64, b.s2.sign() as f64));
        }
        Ok(Self { terms, extension })
    }

    /// Value, gradient and Hessian at `x`.
    pub fn jet(&self, x: [f64; 4]) -> Result<Jet> {
        let (p, q) = match self.extension {
            Pair::First => (0, 1),
            Pair::Second => (2, 3),
        };
        let rho = (x[p] * x[p] + x[q] * x[q]).sqrt();
        let mut val = zero();
        let mut grad = [zero(); 4];
        let mut hess = [[zero(); 4]; 4];
        for &(c, n, l, k, s1, s2) in &self.terms {
            // G(u = ρ²): h = K̃n, h' = −K̃_{n+1}, h'' = K̃_{n+2}, all at 2ρ.
            let h0 = ktilde(n, 2.0 * rho)?;
            let h1 = -ktilde(n + 1, 2.0 * rho)?;
            let h2 = ktilde(n + 2, 2.0 * rho)?;
            let mut gg = [0.0; 4];
            let mut gh = [[0.0; 4]; 4];
            for a in [p, q] {
                gg[a] = 2.0 * x[a] * h1;
                for b in [p, q] {
                    gh[a][b] = 4.0 * x[a] * x[b] * h2 + if a == b { 2.0 * h1 } else { 0.0 };
                }
            }
            let av = Complex64::new(x[0], s1 * x[1]);
            let bv = Complex64::new(x[2], s2 * x[3]);
            let da = [Complex64::new(1.0, 0.0), Complex64::new(0.0, s1), zero(), zero()];
            let db = [zero(), zero(), Complex64::new(1.0, 0.0), Complex64::new(0.0, s2)];
            let (l, k) = (i64::from(l), i64::from(k));
            let (lf, kf) = (l as f64, k as f64);
            let m = ipow(av, l) * ipow(bv, k);
            let ma = ipow(av, l - 1) * ipow(bv, k) * lf;
            let mb = ipow(av, l) * ipow(bv, k - 1) * kf;
            let maa = ipow(av, l - 2) * ipow(bv, k) * (lf * (lf - 1.0));
            let mab = ipow(av, l - 1) * ipow(bv, k - 1) * (lf * kf);
            let mbb = ipow(av, l) * ipow(bv, k - 2) * (kf * (kf - 1.0));
            let gm: Vec<Complex64> = (0..4).map(|a| ma * da[a] + mb * db[a]).collect();
            val += c * h0 * m;
            for a in 0..4 {
                grad[a] += c * (m * gg[a] + gm[a] * h0);
                for b in 0..4 {
                    let hm = maa * da[a] * da[b] + mab * (da[a] * db[b] + db[a] * da[b]) + mbb * db[a] * db[b];
                    hess[a][b] += c * (m * gh[a][b] + gm[b] * gg[a] + gm[a] * gg[b] + hm * h0);
                }
            }
        }
        Ok((val, grad, hess))
    }
}

fn check_index(j: usize) -> Result<usize> {
    if (1..=4).contains(&j) {
        Ok(j - 1)
    } else {
        Err(Error::domain("coordinate index", j as f64, "must be 1..=4"))
    }
}

/// `op(f)(x)`.
pub fn ambient_apply(op: AmbientOperator, f: &AmbientFunction, x: [f64; 4]) -> Result<Complex64> {
    let (v, g, h) = f.jet(x)?;
    let boxed = (0..4).fold(zero(), |acc, a| acc + h[a][a] * EPS[a]);
    Ok(match op {
        AmbientOperator::MultXi(j) => v * x[check_index(j)?],
        AmbientOperator::Deg => (0..4).fold(v, |acc, a| acc + g[a] * x[a]),
        AmbientOperator::Box => boxed,
        AmbientOperator::P(j) => {
            let j = check_index(j)?;
            let deg_dj = (0..4).fold(g[j], |acc, a| acc + h[a][j] * x[a]);
            boxed * (EPS[j] * x[j]) - deg_dj * 2.0
        }
        AmbientOperator::PShifted(j) => {
            let j = check_index(j)?;
            let deg_dj = (0..4).fold(g[j], |acc, a| acc + h[a][j] * x[a]);
            boxed * (EPS[j] * x[j]) - deg_dj * 2.0 - g[j] * 4.0
        }
        AmbientOperator::X(j, k) => {
            let (j, k) = (check_index(j)?, check_index(k)?);
            g[k] * (EPS[j] * EPS[k] * x[j]) - g[j] * x[k]
        }
    })
}

/// `[X_a, X_b] f (x)` from the second-order jet.
pub fn ambient_bracket_x(a: (usize, usize), b: (usize, usize), f: &AmbientFunction, x: [f64; 4]) -> Result<Complex64> {
    let (_, g, h) = f.jet(x)?;
    let idx = |p: (usize, usize)| -> Result<(usize, usize)> { Ok((check_index(p.0)?, check_index(p.1)?)) };
    let (a, b) = (idx(a)?, idx(b)?);
    // ∂m(X_{jk} f) = εjεk(δmj ∂k f + ξj ∂m∂k f) − (δmk ∂j f + ξk ∂m∂j f).
    let d_x = |(j, k): (usize, usize), m: usize| -> Complex64 {
        let dj = if m == j { g[k] } else { zero() };
        let dk = if m == k { g[j] } else { zero() };
        (dj + h[m][k] * x[j]) * (EPS[j] * EPS[k]) - (dk + h[m][j] * x[k])
    };
    let apply_outer = |(j, k): (usize, usize), inner: (usize, usize)| -> Complex64 {
        d_x(inner, k) * (EPS[j] * EPS[k] * x[j]) - d_x(inner, j) * x[k]
    };
    Ok(apply_outer(a, b) - apply_outer(b, a))
}

fn d2(f: &impl Fn(f64) -> Complex64, t: f64, h: f64) -> Complex64 {
    (-f(t + 2.0 * h) + f(t + h) * 16.0 - f(t) * 30.0 + f(t - h) * 16.0 - f(t - 2.0 * h)) / (12.0 * h * h)
}

fn d1(f: &impl Fn(f64) -> Complex64, t: f64, h: f64) -> Complex64 {
    (-f(t + 2.0 * h) + f(t + h) * 8.0 - f(t - h) * 8.0 + f(t - 2.0 * h)) / (12.0 * h)
}

/// `□` by fourth-order differences in Cartesian coordinates.
pub fn box22_cartesian_fd(f: impl Fn([f64; 4]) -> Complex64, x: [f64; 4], h: f64) -> Complex64 {
    (0..4).fold(zero(), |acc, a| {
        let line = |t: f64| {
            let mut y = x;
            y[a] = t;
            f(y)
        };
        acc + d2(&line, x[a], h) * EPS[a]
    })
}

/// `□` in bipolar coordinates `(r1, θ1, r2, θ2)`:
/// `∂²r1 + r1⁻¹∂r1 + r1⁻²∂²θ1 − (∂²r2 + r2⁻¹∂r2 + r2⁻²∂²θ2)`,
/// with the derivatives taken by fourth-order differences.
pub fn box22_bipolar_fd(f: impl Fn([f64; 4]) -> Complex64, y: [f64; 4], h: f64) -> Complex64 {
    let line = |i: usize| {
        let f = &f;
        move |t: f64| {
            let mut z = y;
            z[i] = t;
            f(z)
        }
    };
    let plane = |ri: usize, ti: usize| {
        let r = y[ri];
        let lr = line(ri);
        let lt = line(ti);
        d2(&lr, r, h) + d1(&lr, r, h) / r + d2(&lt, y[ti], h) / (r * r)
    };
    plane(0, 1) - plane(2, 3)
}
