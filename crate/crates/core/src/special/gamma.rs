//! Complex Gamma function: Lanczos approximation (`g = 7`, nine terms) for
//! `Re z ≥ 1/2`, reflection `Γ(z)Γ(1−z) = π / sin(πz)` below.

use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    let log = (z + 0.5) * t.ln() - t;
    (2.0 * PI).sqrt() * x * log.exp()
}

/// `Γ(z)`; nonpositive integers are rejected as poles.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain("Gamma", z.re, "non-finite argument"));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Singular {
            what: "Gamma",
            reason: "pole at a nonpositive integer",
        });
    }
    if z.re < 0.5 {
        let s = (PI * z).sin();
        Ok(PI / (s * lanczos(1.0 - z)))
    } else {
        Ok(lanczos(z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_values() {
        let one = gamma_complex(Complex64::new(1.0, 0.0)).unwrap();
        assert!((one - 1.0).norm() < 1e-14);
        let half = gamma_complex(Complex64::new(0.5, 0.0)).unwrap();
        assert!((half.re - PI.sqrt()).abs() < 1e-14 && half.im == 0.0);
        let five = gamma_complex(Complex64::new(5.0, 0.0)).unwrap();
        assert!((five.re - 24.0).abs() < 1e-12);
        let neg = gamma_complex(Complex64::new(-1.5, 0.0)).unwrap();
        assert!((neg.re - 4.0 * PI.sqrt() / 3.0).abs() < 1e-13);
    }

    #[test]
    fn poles_rejected() {
        for n in 0..5 {
            assert!(gamma_complex(Complex64::new(-(n as f64), 0.0)).is_err());
        }
    }
}
