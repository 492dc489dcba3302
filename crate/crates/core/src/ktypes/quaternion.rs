//! Split-quaternion form of the generators. With
//! `X = [[x1 − ix2, x3 + ix4], [x3 − ix4, x1 + ix2]]` and `∂` the matching
//! matrix of Wirtinger derivatives,
//! `2(X∂X − X) = e0 c_{e0} + ẽ1 c_{ẽ1} + ẽ2 c_{ẽ2} + e3 c_{e3}`
//! where each `c_u = ±N ∂j + 2ξj deg` is a scalar first-order operator.

use crate::quadrature::gauss_legendre;
use crate::Result;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

type Mat = [[Complex64; 2]; 2];

const EPS: [f64; 4] = [1.0, 1.0, -1.0, -1.0];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Units of the split quaternions: `e0 = 1`, `e3 = diag(−i, i)`,
/// `ẽ1 = [[0, 1], [1, 0]]`, `ẽ2 = [[0, i], [−i, 0]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuaternionUnit {
    E0,
    E1Tilde,
    E2Tilde,
    E3,
}

impl QuaternionUnit {
    pub const ALL: [QuaternionUnit; 4] = [Self::E0, Self::E1Tilde, Self::E2Tilde, Self::E3];

    pub fn matrix(self) -> Mat {
        let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
        match self {
            Self::E0 => [[o, z], [z, o]],
            Self::E1Tilde => [[z, o], [o, z]],
            Self::E2Tilde => [[z, i], [-i, z]],
            Self::E3 => [[-i, z], [z, i]],
        }
    }

    /// `½ Tr(u·u)`: `+1` for the split units and `e0`, `−1` for `e3`.
    pub fn half_trace_square(self) -> f64 {
        let m = self.matrix();
        let tr = (0..2).fold(c(0.0, 0.0), |acc, i| {
            acc + (0..2).fold(c(0.0, 0.0), |s, k| s + m[i][k] * m[k][i])
        });
        0.5 * tr.re
    }
}

/// One row of the embedding: `c_u = n_sign·N ∂j + 2ξj deg` on the group side,
/// multiplication by `iξj` and `p_coef·Pj(−1)` on the Fourier side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddingEntry {
    pub unit: QuaternionUnit,
    /// Coordinate index `j` in `1..=4`.
    pub coordinate: usize,
    pub n_sign: f64,
    /// `−i` or `+i`.
    pub p_coef: Complex64,
}

pub fn embedding_table() -> [EmbeddingEntry; 4] {
    let row = |unit, coordinate, n_sign, p_im| EmbeddingEntry {
        unit,
        coordinate,
        n_sign,
        p_coef: c(0.0, p_im),
    };
    [
        row(QuaternionUnit::E0, 1, -1.0, -1.0),
        row(QuaternionUnit::E1Tilde, 3, 1.0, -1.0),
        row(QuaternionUnit::E2Tilde, 4, 1.0, -1.0),
        row(QuaternionUnit::E3, 2, -1.0, 1.0),
    ]
}

fn x_matrix(x: [f64; 4]) -> Mat {
    [[c(x[0], -x[1]), c(x[2], x[3])], [c(x[2], -x[3]), c(x[0], x[1])]]
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn gradient_fd(f: &impl Fn([f64; 4]) -> Complex64, x: [f64; 4], h: f64) -> [Complex64; 4] {
    let mut g = [c(0.0, 0.0); 4];
    for (a, ga) in g.iter_mut().enumerate() {
        let at = |t: f64| {
            let mut y = x;
            y[a] += t;
            f(y)
        };
        *ga = (-at(2.0 * h) + at(h) * 8.0 - at(-h) * 8.0 + at(-2.0 * h)) / (12.0 * h);
    }
    g
}

/// `c_u f` from the value and gradient of `f`.
fn coefficient(entry: &EmbeddingEntry, x: [f64; 4], f: Complex64, g: &[Complex64; 4]) -> Complex64 {
    let n = x[0] * x[0] + x[1] * x[1] - x[2] * x[2] - x[3] * x[3];
    let deg = (0..4).fold(f, |acc, a| acc + g[a] * x[a]);
    let j = entry.coordinate - 1;
    g[j] * (entry.n_sign * n) + deg * (2.0 * x[j])
}

/// Largest entry of `2(X∂X − X)f − Σ u·c_u f` at `x`, with the gradient of
/// `f` taken by fourth-order differences of step `h`.
pub fn quaternion_identity_residual(f: impl Fn([f64; 4]) -> Complex64, x: [f64; 4], h: f64) -> f64 {
    let fx = f(x);
    let g = gradient_fd(&f, x, h);
    // Wirtinger derivatives along z11, z12, z21, z22.
    let i = c(0.0, 1.0);
    let dz11 = (g[0] + i * g[1]) * 0.5;
    let dz22 = (g[0] - i * g[1]) * 0.5;
    let dz12 = (g[2] - i * g[3]) * 0.5;
    let dz21 = (g[2] + i * g[3]) * 0.5;
    // ∂(Xf) = 2f·1 + (Df)X with (Df)_{im} = ∂f/∂z_{mi}.
    let xm = x_matrix(x);
    let df = [[dz11, dz21], [dz12, dz22]];
    let mut dxf = mat_mul(&df, &xm);
    dxf[0][0] += fx * 2.0;
    dxf[1][1] += fx * 2.0;
    let xdx = mat_mul(&xm, &dxf);
    let mut lhs = [[c(0.0, 0.0); 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            lhs[a][b] = (xdx[a][b] - xm[a][b] * fx) * 2.0;
        }
    }
    let mut rhs = [[c(0.0, 0.0); 2]; 2];
    for e in embedding_table() {
        let cu = coefficient(&e, x, fx, &g);
        let m = e.unit.matrix();
        for a in 0..2 {
            for b in 0..2 {
                rhs[a][b] += m[a][b] * cu;
            }
        }
    }
    (0..4)
        .map(|k| (lhs[k / 2][k % 2] - rhs[k / 2][k % 2]).norm())
        .fold(0.0, f64::max)
}

/// Nodes per axis and half-width of the tensor rule used by
/// [`fourier_spot_check`].
pub const SPOT_CHECK_NODES: usize = 32;
pub const SPOT_CHECK_HALF_WIDTH: f64 = 7.0;

/// For `ψ = e^{−|X|²/2}` and `F f(ξ) = (2π)⁻² ∫ f(X) e^{i ξ·X} dX`, returns
/// `(F(c_u ψ)(ξ), ½Tr(u²)·p_coef·Pj(−1)ψ̂(ξ))`, which agree. The transform is
/// a tensor Gauss–Legendre rule on a truncated box.
pub fn fourier_spot_check(unit: QuaternionUnit, xi: [f64; 4]) -> Result<(Complex64, Complex64)> {
    let entry = embedding_table()
        .into_iter()
        .find(|e| e.unit == unit)
        .expect("every unit has a row");
    let rule = gauss_legendre(SPOT_CHECK_NODES);
    let w = SPOT_CHECK_HALF_WIDTH;
    let pts: Vec<(f64, f64)> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&t, &wt)| (w * t, w * wt))
        .collect();
    let cpsi = |x: [f64; 4]| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        let psi = (-0.5 * r2).exp();
        let g = [-x[0] * psi, -x[1] * psi, -x[2] * psi, -x[3] * psi];
        coefficient(&entry, x, c(psi, 0.0), &g.map(|v| c(v, 0.0)))
    };
    let lhs: Complex64 = pts
        .par_iter()
        .map(|&(x1, w1)| {
            let mut acc = c(0.0, 0.0);
            for &(x2, w2) in &pts {
                for &(x3, w3) in &pts {
                    for &(x4, w4) in &pts {
                        let x = [x1, x2, x3, x4];
                        let phase = xi[0] * x1 + xi[1] * x2 + xi[2] * x3 + xi[3] * x4;
                        acc += cpsi(x) * Complex64::from_polar(w1 * w2 * w3 * w4, phase);
                    }
                }
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum::<Complex64>()
        / (4.0 * PI * PI);
    // Pj(−1) = εj ξj □ − (2deg + 4)∂j on the Gaussian jet of ψ̂.
    let n2: f64 = xi.iter().map(|v| v * v).sum();
    let psi_hat = (-0.5 * n2).exp();
    let j = entry.coordinate - 1;
    let boxed: f64 = (0..4).map(|a| EPS[a] * (xi[a] * xi[a] - 1.0)).sum::<f64>() * psi_hat;
    let dj = -xi[j] * psi_hat;
    // Σ ξa ∂a∂j ψ̂ = ξj(|ξ|² − 1)ψ̂.
    let euler_dj = xi[j] * (n2 - 1.0) * psi_hat;
    let p_shifted = EPS[j] * xi[j] * boxed - 2.0 * (euler_dj + dj) - 4.0 * dj;
    let rhs = entry.p_coef * (unit.half_trace_square() * p_shifted);
    Ok((lhs, rhs))
}
