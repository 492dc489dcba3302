//! Rewrite rules. Rules are stated for the pair `(ξ1, ξ2)`; the pair
//! `(ξ3, ξ4)` follows by exchanging `(l, s1)` with `(k, s2)`, under which
//! `εj` and `□_{2,2}` both change sign, so `P3, P4` map to `P1, P2`.
//!
//! Terms are first produced with explicit `r²` factors. A term
//! `r²[n, −1, k, s1]` equals `[n, 1, k, −s1]` on the cone, which is how the
//! `l = 0` case stays inside the basis.

use super::{coef, coef_ratio, Coef, KBasisElement, KVector, Orient, RewriteMode};
use crate::{Error, Result};

/// Which of the two planes `(ξ1, ξ2)` or `(ξ3, ξ4)` an operator acts in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pair {
    First,
    Second,
}

struct Raw {
    n: i64,
    l: i64,
    k: i64,
    s1: Orient,
    s2: Orient,
    r2: u32,
    c: Coef,
}

fn swap(b: &KBasisElement) -> KBasisElement {
    KBasisElement {
        l: b.k,
        k: b.l,
        s1: b.s2,
        s2: b.s1,
        ..*b
    }
}

fn swap_vec(v: &KVector) -> KVector {
    KVector::from_terms(v.terms().map(|(b, c)| (swap(b), c.clone())))
}

fn assemble(raw: Vec<Raw>, mode: RewriteMode) -> Result<KVector> {
    let mut out = KVector::zero();
    for mut t in raw {
        if num_traits::Zero::is_zero(&t.c) {
            continue;
        }
        for (power, orient) in [(&mut t.l, &mut t.s1), (&mut t.k, &mut t.s2)] {
            if *power == -1 {
                if t.r2 == 0 {
                    return Err(Error::Unsupported(format!(
                        "rewrite produced a negative power without an r² factor at n = {}",
                        t.n
                    )));
                }
                t.r2 -= 1;
                *power = 1;
                *orient = orient.flip();
            } else if *power < -1 {
                return Err(Error::Unsupported("rewrite produced a power below −1".into()));
            }
        }
        let b = KBasisElement {
            n: t.n,
            l: t.l as u32,
            k: t.k as u32,
            s1: t.s1,
            s2: t.s2,
            r2: t.r2,
        }
        .canonical();
        out.add_term(b, t.c);
    }
    Ok(match mode {
        RewriteMode::Reduced => out.reduce_r2(),
        RewriteMode::SymbolicR2 => out,
    })
}

/// Term builder relative to a basis element.
struct Terms<'a> {
    b: &'a KBasisElement,
    raw: Vec<Raw>,
}

impl<'a> Terms<'a> {
    fn new(b: &'a KBasisElement) -> Self {
        Self { b, raw: Vec::new() }
    }

    /// `c · r^{2·r2} [n + dn, l + dl, k, s1, s2]`, on top of `b.r2`.
    fn push(&mut self, c: Coef, dn: i64, dl: i64, r2: u32) {
        self.raw.push(Raw {
            n: self.b.n + dn,
            l: i64::from(self.b.l) + dl,
            k: i64::from(self.b.k),
            s1: self.b.s1,
            s2: self.b.s2,
            r2: self.b.r2 + r2,
            c,
        });
    }

    fn finish(self, mode: RewriteMode) -> Result<KVector> {
        assemble(self.raw, mode)
    }
}

fn require_reduced(b: &KBasisElement, what: &str) -> Result<()> {
    if b.r2 != 0 {
        return Err(Error::Unsupported(format!(
            "{what} acts on r²-free basis elements; reduce the input first"
        )));
    }
    Ok(())
}

/// `2ξ1[l] = [l+1] + r²[l−1]`, `2iξ2[l] = s1([l+1] − r²[l−1])`.
fn mult_first(b: &KBasisElement, second: bool, mode: RewriteMode) -> Result<KVector> {
    let mut t = Terms::new(b);
    if second {
        let s = b.s1.sign();
        // ξ2 = (1/2i)·s1([l+1] − r²[l−1]).
        t.push(coef_ratio(0, 1, -s, 2), 0, 1, 0);
        t.push(coef_ratio(0, 1, s, 2), 0, -1, 1);
    } else {
        t.push(coef_ratio(1, 2, 0, 1), 0, 1, 0);
        t.push(coef_ratio(1, 2, 0, 1), 0, -1, 1);
    }
    t.finish(mode)
}

/// `P1` on `[n, l, k]`: `4ξ1((k−n)[n+1] − [n]) − 2l((l+k)[n] − 2r²[n+1])_{l−1}`
/// with `4ξ1` expanded, giving
/// `2(k−n)[n+1, l+1] − 2[n, l+1] + 2(k−n+2l) r²[n+1, l−1] − 2r²[n, l−1] − 2l(l+k)[n, l−1]`.
/// `P2` is `−i s1` times the `(l+1)` part plus `i s1` times the `(l−1)` part.
fn p_first(b: &KBasisElement, second: bool, mode: RewriteMode) -> Result<KVector> {
    require_reduced(b, "P_j")?;
    let (n, l, k) = (b.n, i64::from(b.l), i64::from(b.k));
    let (up, down) = if second {
        let s = b.s1.sign();
        (coef(0, -s), coef(0, s))
    } else {
        (coef(1, 0), coef(1, 0))
    };
    let mut t = Terms::new(b);
    t.push(&up * coef(2 * (k - n), 0), 1, 1, 0);
    t.push(&up * coef(-2, 0), 0, 1, 0);
    t.push(&down * coef(2 * (k - n + 2 * l), 0), 1, -1, 1);
    t.push(&down * coef(-2, 0), 0, -1, 1);
    t.push(&down * coef(-2 * l * (l + k), 0), 0, -1, 0);
    t.finish(mode)
}

fn check_index(j: usize) -> Result<()> {
    if !(1..=4).contains(&j) {
        return Err(Error::domain("coordinate index", j as f64, "must be 1..=4"));
    }
    Ok(())
}

fn per_pair(
    j: usize,
    v: &KVector,
    mode: RewriteMode,
    rule: fn(&KBasisElement, bool, RewriteMode) -> Result<KVector>,
) -> Result<KVector> {
    check_index(j)?;
    let second = j == 2 || j == 4;
    if j <= 2 {
        v.map_linear(|b| rule(b, second, mode))
    } else {
        v.map_linear(|b| Ok(swap_vec(&rule(&swap(b), second, mode)?)))
    }
}

/// Multiplication by `ξj`.
pub fn apply_mult_xi(j: usize, v: &KVector, mode: RewriteMode) -> Result<KVector> {
    per_pair(j, v, mode, mult_first)
}

/// `Pj = εj ξj □_{2,2} − 2 deg∘∂/∂ξj`.
pub fn apply_p(j: usize, v: &KVector, mode: RewriteMode) -> Result<KVector> {
    per_pair(j, v, mode, p_first)
}

/// `deg = Σ ξa ∂/∂ξa + 1`: `(l+k+1)[n] − 2r²[n+1]`.
pub fn apply_deg(v: &KVector, mode: RewriteMode) -> Result<KVector> {
    v.map_linear(|b| {
        require_reduced(b, "deg")?;
        let mut t = Terms::new(b);
        t.push(coef(i64::from(b.l) + i64::from(b.k) + 1, 0), 0, 0, 0);
        t.push(coef(-2, 0), 1, 0, 1);
        t.finish(mode)
    })
}

/// `□_{2,2}` on the ambient extension `K̃n(2r2)·(…)` (`Pair::Second`, the
/// radial factor in the `(ξ3, ξ4)` plane) or `K̃n(2r1)·(…)` (`Pair::First`).
/// The two restrict to different cone functions: `□` is not tangential.
/// For the `r2` extension: `4((k+1)[n+1] − r²[n+2])`.
pub fn apply_box22(v: &KVector, extension: Pair, mode: RewriteMode) -> Result<KVector> {
    let rule = |b: &KBasisElement| -> Result<KVector> {
        require_reduced(b, "box")?;
        let mut t = Terms::new(b);
        t.push(coef(4 * (i64::from(b.k) + 1), 0), 1, 0, 0);
        t.push(coef(-4, 0), 2, 0, 1);
        t.finish(mode)
    };
    match extension {
        Pair::Second => v.map_linear(rule),
        // Swapping the planes flips the sign of □.
        Pair::First => v.map_linear(|b| Ok(swap_vec(&rule(&swap(b))?).scale(&coef(-1, 0)))),
    }
}

/// `X_jk = εjεk ξj ∂k − ξk ∂j`. Only the compact rotations `X12 = ∂/∂θ1` and
/// `X34 = ∂/∂θ2` have a closed rewrite; they act by `i s1 l` and `i s2 k`.
pub fn apply_x(j: usize, k: usize, v: &KVector) -> Result<KVector> {
    check_index(j)?;
    check_index(k)?;
    match (j, k) {
        (1, 2) => v.map_linear(|b| Ok(KVector::basis(*b).scale(&coef(0, b.s1.sign() * i64::from(b.l))))),
        (3, 4) => v.map_linear(|b| Ok(KVector::basis(*b).scale(&coef(0, b.s2.sign() * i64::from(b.k))))),
        (a, c) if a < c => Err(Error::Unsupported(format!(
            "X{a}{c} mixes the two planes and has no closed rewrite; apply it with ambient_apply"
        ))),
        _ => Err(Error::domain("X_jk", j as f64, "requires j < k")),
    }
}

/// `2(ξa + σ iξb) + ½(Pa + σ iPb)` for the plane `(a, b)`, from the closed
/// rules: on elements whose orientation matches `σ`,
/// `2(k−n)[n+1, l+1]`; otherwise
/// `2((n−l)(l+k−n)[n, l−1] + (2l+k−n)[n−1, l−1])`.
/// The `l = 0` opposite case and [`RewriteMode::SymbolicR2`] go through
/// [`apply_raise_lower_composed`].
pub fn apply_raise_lower(pair: Pair, sign: Orient, v: &KVector, mode: RewriteMode) -> Result<KVector> {
    if mode == RewriteMode::SymbolicR2 {
        return apply_raise_lower_composed(pair, sign, v, mode);
    }
    let rule = |b: &KBasisElement| -> Result<KVector> {
        require_reduced(b, "raise/lower")?;
        let (n, l, k) = (b.n, i64::from(b.l), i64::from(b.k));
        if b.l > 0 && b.s1 != sign {
            let mut t = Terms::new(b);
            t.push(coef(2 * (n - l) * (l + k - n), 0), 0, -1, 0);
            t.push(coef(2 * (2 * l + k - n), 0), -1, -1, 0);
            return t.finish(mode);
        }
        if b.l == 0 && b.s1 != sign {
            // Canonical l = 0 elements carry s1 = +, so only σ = − lands here.
            return apply_raise_lower_composed(Pair::First, sign, &KVector::basis(*b), mode);
        }
        let mut t = Terms::new(b);
        t.raw.push(Raw {
            n: n + 1,
            l: l + 1,
            k,
            s1: sign,
            s2: b.s2,
            r2: 0,
            c: coef(2 * (k - n), 0),
        });
        t.finish(mode)
    };
    match pair {
        Pair::First => v.map_linear(rule),
        Pair::Second => v.map_linear(|b| Ok(swap_vec(&rule(&swap(b))?))),
    }
}

/// `2(ξa + σ iξb) + ½(Pa + σ iPb)` assembled from the multiplication and `Pj`
/// rules.
pub fn apply_raise_lower_composed(pair: Pair, sign: Orient, v: &KVector, mode: RewriteMode) -> Result<KVector> {
    let (a, b) = match pair {
        Pair::First => (1, 2),
        Pair::Second => (3, 4),
    };
    let si = coef(0, sign.sign());
    let mult = apply_mult_xi(a, v, mode)?.add(&apply_mult_xi(b, v, mode)?.scale(&si));
    let p = apply_p(a, v, mode)?.add(&apply_p(b, v, mode)?.scale(&si));
    Ok(mult.scale(&coef(2, 0)).add(&p.scale(&coef_ratio(1, 2, 0, 1))))
}

/// `2iξj + (i/2)Pj`, the stated action of the compact generators.
pub fn apply_n_combination(j: usize, v: &KVector, mode: RewriteMode) -> Result<KVector> {
    let m = apply_mult_xi(j, v, mode)?.scale(&coef(0, 2));
    let p = apply_p(j, v, mode)?.scale(&coef_ratio(0, 1, 1, 2));
    Ok(m.add(&p))
}
