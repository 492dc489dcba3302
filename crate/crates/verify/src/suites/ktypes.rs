//! Exact K-type rewrite rules against the ambient differential oracle,
//! highest-weight annihilation and orbit closure dimensions.

use super::{c, Ctx, Params, Tol};
use quatrep::geometry::ConePoint;
use quatrep::ktypes::{
    ambient_apply, apply_mult_xi, apply_p, apply_raise_lower, coef_to_f64, kfinite_certificate, orbit_closure,
    orbit_closure_reversed, AmbientFunction, AmbientOperator, KBasisElement, KVector, Orient, Pair, RewriteMode,
    ORBIT_DIM_BOUND,
};
use quatrep::{Complex64, Result};
use rand::Rng;
use std::f64::consts::TAU;

const RULE_TOL: f64 = 1e-7;
const ORIENTS: [Orient; 2] = [Orient::Plus, Orient::Minus];

#[derive(Clone, Copy)]
enum Rule {
    Mult(usize),
    P(usize),
    RaiseLower(Pair, Orient),
}

impl Rule {
    const ALL: [Rule; 12] = [
        Rule::Mult(1),
        Rule::Mult(2),
        Rule::Mult(3),
        Rule::Mult(4),
        Rule::P(1),
        Rule::P(2),
        Rule::P(3),
        Rule::P(4),
        Rule::RaiseLower(Pair::First, Orient::Plus),
        Rule::RaiseLower(Pair::First, Orient::Minus),
        Rule::RaiseLower(Pair::Second, Orient::Plus),
        Rule::RaiseLower(Pair::Second, Orient::Minus),
    ];

    fn label(self) -> String {
        match self {
            Rule::Mult(j) => format!("mult_xi{j}"),
            Rule::P(j) => format!("p{j}"),
            Rule::RaiseLower(pair, s) => {
                let p = if matches!(pair, Pair::First) { 12 } else { 34 };
                let s = if matches!(s, Orient::Plus) { "raise" } else { "lower" };
                format!("{s}{p}")
            }
        }
    }

    fn rewrite(self, v: &KVector) -> Result<KVector> {
        let m = RewriteMode::Reduced;
        match self {
            Rule::Mult(j) => apply_mult_xi(j, v, m),
            Rule::P(j) => apply_p(j, v, m),
            Rule::RaiseLower(pair, s) => apply_raise_lower(pair, s, v, m),
        }
    }

    /// `2(ξa ± iξb) + ½(Pa ± iPb)` for the raise/lower pairs.
    fn ambient(self, f: &AmbientFunction, x: [f64; 4]) -> Result<Complex64> {
        match self {
            Rule::Mult(j) => ambient_apply(AmbientOperator::MultXi(j), f, x),
            Rule::P(j) => ambient_apply(AmbientOperator::P(j), f, x),
            Rule::RaiseLower(pair, s) => {
                let (a, b) = if matches!(pair, Pair::First) { (1, 2) } else { (3, 4) };
                let si = Complex64::new(0.0, s.sign() as f64);
                let xa = ambient_apply(AmbientOperator::MultXi(a), f, x)?;
                let xb = ambient_apply(AmbientOperator::MultXi(b), f, x)?;
                let pa = ambient_apply(AmbientOperator::P(a), f, x)?;
                let pb = ambient_apply(AmbientOperator::P(b), f, x)?;
                Ok(2.0 * (xa + si * xb) + 0.5 * (pa + si * pb))
            }
        }
    }
}

fn term_scale(v: &KVector, p: &ConePoint) -> Result<f64> {
    v.terms().try_fold(0.0f64, |m, (b, c)| {
        Ok(m.max((coef_to_f64(c) * b.eval_cartesian(p)?).norm()))
    })
}

/// Worst point of one rule on one `(n, l, k)` over orientations and points:
/// `(got, want, scale)` maximising `|got − want| / max(|want|, scale)`.
fn worst_case(rule: Rule, n: i64, l: u32, k: u32, points: &[ConePoint]) -> Result<(Complex64, Complex64, f64)> {
    let mut worst = (c(0.0), c(0.0), 1.0, -1.0);
    for s1 in ORIENTS {
        for s2 in ORIENTS {
            let b = KBasisElement::new(n, l, k, s1, s2);
            let v = KVector::basis(b);
            let out = rule.rewrite(&v)?;
            let amb = AmbientFunction::new(&v, Pair::Second)?;
            for p in points {
                let got = out.eval(p.r(), p.theta1(), p.theta2())?;
                let want = rule.ambient(&amb, p.embed().coords())?;
                let scale = term_scale(&out, p)?.max(b.eval_cartesian(p)?.norm());
                let score = (got - want).norm() / want.norm().max(scale);
                if score > worst.3 {
                    worst = (got, want, scale, score);
                }
            }
        }
    }
    Ok((worst.0, worst.1, worst.2))
}

fn nlk(n: i64, l: u32, k: u32) -> Params {
    vec![("n", n.into()), ("l", i64::from(l).into()), ("k", i64::from(k).into())]
}

pub(super) fn run(ctx: &mut Ctx) {
    let points: Vec<ConePoint> = (0..ctx.cfg.size_or(20))
        .map(|_| {
            let r = ctx.rng.gen_range(0.2..3.0);
            let (t1, t2) = (ctx.rng.gen_range(0.0..TAU), ctx.rng.gen_range(0.0..TAU));
            ConePoint::new(r, t1, t2).expect("positive radius")
        })
        .collect();

    for l in 0..=4u32 {
        for k in 0..=4u32 {
            for n in -2..=i64::from(l.min(k)) {
                for rule in Rule::ALL {
                    let (value, floor) = match worst_case(rule, n, l, k, &points) {
                        Ok((got, want, scale)) => (Ok((got, want)), RULE_TOL * scale),
                        Err(e) => (Err(e), 0.0),
                    };
                    let mut params = nlk(n, l, k);
                    params.push(("points", points.len().into()));
                    ctx.record(
                        &rule.label(),
                        "ktype_rewrite",
                        params,
                        value,
                        Tol::mixed(RULE_TOL, floor),
                    );
                }
            }
        }
    }

    // Raising on the first pair kills [k, l, k].
    for l in 0..=4u32 {
        for k in 0..=l {
            for s2 in ORIENTS {
                let v = KVector::basis(KBasisElement::new(i64::from(k), l, k, Orient::Plus, s2));
                let terms = apply_raise_lower(Pair::First, Orient::Plus, &v, RewriteMode::Reduced)
                    .map(|o| o.len() as f64)
                    .unwrap_or(f64::NAN);
                let mut p = nlk(i64::from(k), l, k);
                p.push(("s2", s2.sign().into()));
                ctx.record_exact("highest_weight", "ktype_raise_lower", p, terms, 0.0);
            }
        }
    }

    // Orbit closures: two traversal orders must agree with each other and
    // with the sum of K-type dimensions Σ (2a+1)², l+k−min ≤ a ≤ l+k−n.
    for l in 0..=4u32 {
        for k in 0..=4u32 {
            let m = i64::from(l.min(k));
            if m > 3 {
                continue;
            }
            for n in m - 2..=m {
                let seed = KVector::basis(KBasisElement::new(n, l, k, Orient::Plus, Orient::Plus));
                let top = i64::from(l + k);
                let expected: i64 = (top - m..=top - n).map(|a| (2 * a + 1) * (2 * a + 1)).sum();
                let forward = orbit_closure(&seed, ORBIT_DIM_BOUND);
                let reversed = orbit_closure_reversed(&seed, ORBIT_DIM_BOUND);
                let v = match (forward, reversed) {
                    (Ok(f), Ok(r)) => {
                        ctx.record_exact(
                            "orbit_runs_agree",
                            "orbit_closure",
                            nlk(n, l, k),
                            r.dimension as f64,
                            f.dimension as f64,
                        );
                        Ok((c(f.dimension as f64), c(expected as f64)))
                    }
                    (Err(e), _) | (_, Err(e)) => Err(e),
                };
                ctx.record("orbit_dimension", "orbit_closure", nlk(n, l, k), v, Tol::abs(0.0));
            }
        }
    }

    for &(n, l, k) in &[(0i64, 2u32, 3u32), (2, 2, 3), (-1, 1, 1)] {
        let cert = kfinite_certificate(KBasisElement::new(n, l, k, Orient::Plus, Orient::Plus));
        ctx.record_exact(
            "kfinite",
            "kfinite_certificate",
            nlk(n, l, k),
            f64::from(u8::from(cert.holds())),
            1.0,
        );
    }
}
