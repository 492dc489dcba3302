use num_complex::Complex64;

/// Extrapolated limit with an error estimate taken from the spread of the
/// last extrapolants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitEstimate {
    pub value: Complex64,
    pub error: f64,
}

/// Wynn's epsilon algorithm applied to a sequence of partial sums.
///
/// Returns the highest even-column entry built from the trailing `window`
/// terms, with an error estimate from the previous even-column entry.
pub fn wynn_epsilon(sums: &[Complex64]) -> LimitEstimate {
    const WINDOW: usize = 30;
    let n = sums.len();
    if n == 0 {
        return LimitEstimate {
            value: Complex64::new(0.0, 0.0),
            error: f64::INFINITY,
        };
    }
    if n < 3 {
        let err = if n == 2 {
            (sums[1] - sums[0]).norm()
        } else {
            f64::INFINITY
        };
        return LimitEstimate {
            value: sums[n - 1],
            error: err,
        };
    }
    let start = n.saturating_sub(WINDOW);
    let s = &sums[start..];
    // prev = column k-1, cur = column k; column -1 is zero.
    let mut prev: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); s.len() + 1];
    let mut cur: Vec<Complex64> = s.to_vec();
    let mut best = s[s.len() - 1];
    let mut best_prev = s[s.len() - 2];
    let mut k = 0usize;
    while cur.len() >= 2 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        let mut broke = false;
        for j in 0..cur.len() - 1 {
            let diff = cur[j + 1] - cur[j];
            if diff.norm() <= 1e-300 || !diff.re.is_finite() {
                broke = true;
                break;
            }
            next.push(prev[j + 1] + Complex64::new(1.0, 0.0) / diff);
        }
        if broke {
            break;
        }
        k += 1;
        prev = cur;
        cur = next;
        if k.is_multiple_of(2) && !cur.is_empty() {
            let cand = cur[cur.len() - 1];
            if !cand.re.is_finite() || !cand.im.is_finite() {
                break;
            }
            best_prev = if cur.len() >= 2 { cur[cur.len() - 2] } else { best };
            best = cand;
        }
    }
    let spread = (best - best_prev).norm();
    let tail = (s[s.len() - 1] - s[s.len() - 2]).norm();
    LimitEstimate {
        value: best,
        error: spread.max(f64::EPSILON * best.norm()).min(tail.max(spread)),
    }
}

/// Richardson (polynomial) extrapolation of `values[i] ≈ F(steps[i])` to
/// `F(0)`, using the `order + 1` smallest steps.
pub fn richardson(steps: &[f64], values: &[Complex64], order: usize) -> LimitEstimate {
    assert_eq!(steps.len(), values.len());
    assert!(!steps.is_empty());
    let mut idx: Vec<usize> = (0..steps.len()).collect();
    idx.sort_by(|&a, &b| steps[a].partial_cmp(&steps[b]).expect("finite steps"));
    let m = (order + 1).min(steps.len());
    let take: Vec<usize> = idx[..m].to_vec();
    let hi = neville_at_zero(
        &take.iter().map(|&i| steps[i]).collect::<Vec<_>>(),
        &take.iter().map(|&i| values[i]).collect::<Vec<_>>(),
    );
    let lo = if m >= 2 {
        let t = &take[..m - 1];
        neville_at_zero(
            &t.iter().map(|&i| steps[i]).collect::<Vec<_>>(),
            &t.iter().map(|&i| values[i]).collect::<Vec<_>>(),
        )
    } else {
        values[take[0]]
    };
    LimitEstimate {
        value: hi,
        error: (hi - lo).norm(),
    }
}

fn neville_at_zero(h: &[f64], y: &[Complex64]) -> Complex64 {
    let n = h.len();
    let mut p = y.to_vec();
    for m in 1..n {
        for i in 0..n - m {
            let (hi, hj) = (h[i], h[i + m]);
            p[i] = (p[i] * hj - p[i + 1] * hi) * (1.0 / (hj - hi));
        }
    }
    p[0]
}

/// Asymptotic model for `F(h)` as `h → 0⁺` used by [`fit_limit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitModel {
    /// `c0 + c1 h + … + c_d h^d`.
    Polynomial { degree: usize },
    /// `c0 + c1 h ln h + c2 h + c3 h² + c4 h³ ln h + c5 h³ + …`, the expansion of
    /// a Lorentzian-smoothed function with a `|u|` kink at the origin.
    KinkLog { terms: usize },
}

impl LimitModel {
    fn basis(&self, h: f64) -> Vec<f64> {
        match *self {
            LimitModel::Polynomial { degree } => (0..=degree).map(|d| h.powi(d as i32)).collect(),
            LimitModel::KinkLog { terms } => {
                let all = [1.0, h * h.ln(), h, h * h, h.powi(3) * h.ln(), h.powi(3), h.powi(4)];
                all[..terms.min(all.len())].to_vec()
            }
        }
    }

    fn len(&self) -> usize {
        self.basis(0.5).len()
    }
}

/// Least-squares fit of `values` against `model` evaluated at `steps`,
/// returning the constant coefficient. The error estimate is the change in
/// the constant when the last basis function is dropped.
pub fn fit_limit(steps: &[f64], values: &[Complex64], model: LimitModel) -> LimitEstimate {
    let full = solve_constant(steps, values, model, model.len());
    let reduced = if model.len() > 1 {
        solve_constant(steps, values, model, model.len() - 1)
    } else {
        full
    };
    LimitEstimate {
        value: full,
        error: (full - reduced).norm(),
    }
}

fn solve_constant(steps: &[f64], values: &[Complex64], model: LimitModel, nb: usize) -> Complex64 {
    let rows: Vec<Vec<f64>> = steps.iter().map(|&h| model.basis(h)[..nb].to_vec()).collect();
    // Normal equations; the systems here are tiny and well scaled.
    let mut a = vec![vec![0.0; nb]; nb];
    let mut rhs = vec![Complex64::new(0.0, 0.0); nb];
    for (row, &v) in rows.iter().zip(values) {
        for i in 0..nb {
            rhs[i] += v * row[i];
            for j in 0..nb {
                a[i][j] += row[i] * row[j];
            }
        }
    }
    let sol = gauss_solve(a, rhs);
    sol[0]
}

fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<Complex64>) -> Vec<Complex64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).expect("finite"))
            .expect("non-empty");
        a.swap(col, piv);
        b.swap(col, piv);
        let d = a[col][col];
        for row in col + 1..n {
            let f = a[row][col] / d;
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            let bc = b[col];
            b[row] -= bc * f;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in i + 1..n {
            s -= x[k] * a[i][k];
        }
        x[i] = s / a[i][i];
    }
    x
}
