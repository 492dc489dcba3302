//! Exact span closure of K-vectors under the compact generators.

use super::rules::{apply_raise_lower, apply_x, Pair};
use super::{Coef, KBasisElement, KVector, Orient, RewriteMode};
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

/// Finite orbit span: its dimension and the basis elements it touches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSummary {
    pub dimension: usize,
    pub support: BTreeSet<KBasisElement>,
}

impl OrbitSummary {
    pub fn n_range(&self) -> (i64, i64) {
        let lo = self.support.iter().map(|b| b.n).min().unwrap_or(0);
        let hi = self.support.iter().map(|b| b.n).max().unwrap_or(0);
        (lo, hi)
    }
}

/// Row-echelon basis keyed by pivot; each stored vector has its pivot as
/// smallest key with coefficient one.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<KBasisElement, KVector>,
}

impl Echelon {
    /// Reduces `v` against the basis; returns the nonzero remainder, if any.
    fn reduce(&self, mut v: KVector) -> Option<KVector> {
        loop {
            let (p, c) = v.terms().next().map(|(b, c)| (*b, c.clone()))?;
            match self.rows.get(&p) {
                Some(row) => v.add_scaled(row, &-c),
                None => return Some(v),
            }
        }
    }

    fn insert(&mut self, v: KVector) {
        let (p, c) = v
            .terms()
            .next()
            .map(|(b, c)| (*b, c.clone()))
            .expect("nonzero remainder");
        let inv = Coef::one() / c;
        self.rows.insert(p, v.scale(&inv));
    }
}

const N_GENERATORS: usize = 6;

fn basis_images(b: KBasisElement) -> Result<Vec<KVector>> {
    let v = KVector::basis(b);
    let mut out = Vec::with_capacity(N_GENERATORS);
    for pair in [Pair::First, Pair::Second] {
        for sign in [Orient::Plus, Orient::Minus] {
            out.push(apply_raise_lower(pair, sign, &v, RewriteMode::Reduced)?);
        }
    }
    out.push(apply_x(1, 2, &v)?);
    out.push(apply_x(3, 4, &v)?);
    Ok(out)
}

/// Generator images of basis elements, memoised; the orbit touches each
/// basis element many times.
#[derive(Default)]
struct ImageCache {
    images: HashMap<KBasisElement, Vec<KVector>>,
}

impl ImageCache {
    fn generators(&mut self, v: &KVector, reversed: bool) -> Result<Vec<KVector>> {
        let mut out = vec![KVector::zero(); N_GENERATORS];
        for (b, c) in v.terms() {
            if !self.images.contains_key(b) {
                self.images.insert(*b, basis_images(*b)?);
            }
            for (acc, img) in out.iter_mut().zip(&self.images[b]) {
                acc.add_scaled(img, c);
            }
        }
        if reversed {
            out.reverse();
        }
        Ok(out)
    }
}

/// Span of the orbit of `seed` under the four raise/lower operators and
/// `X12`, `X34`, computed with exact rank. Fails once the span exceeds
/// `max_dim`.
pub fn orbit_closure(seed: &KVector, max_dim: usize) -> Result<OrbitSummary> {
    closure(seed, max_dim, false)
}

/// [`orbit_closure`] with the generators visited in reverse order, an
/// independent traversal of the same span.
pub fn orbit_closure_reversed(seed: &KVector, max_dim: usize) -> Result<OrbitSummary> {
    closure(seed, max_dim, true)
}

fn closure(seed: &KVector, max_dim: usize, reversed: bool) -> Result<OrbitSummary> {
    let mut cache = ImageCache::default();
    let mut ech = Echelon::default();
    let mut queue = VecDeque::new();
    let mut support = BTreeSet::new();
    if let Some(v) = ech.reduce(seed.reduce_r2()) {
        ech.insert(v.clone());
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        support.extend(v.terms().map(|(b, _)| *b));
        for w in cache.generators(&v, reversed)? {
            if let Some(rem) = ech.reduce(w) {
                if ech.rows.len() >= max_dim {
                    return Err(Error::no_convergence(
                        "orbit closure",
                        format!("span exceeds {max_dim} dimensions"),
                    ));
                }
                ech.insert(rem.clone());
                queue.push_back(rem);
            }
        }
    }
    for row in ech.rows.values() {
        support.extend(row.terms().filter(|(_, c)| !c.is_zero()).map(|(b, _)| *b));
    }
    Ok(OrbitSummary {
        dimension: ech.rows.len(),
        support,
    })
}

/// Outcome of [`kfinite_certificate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KFiniteCertificate {
    pub element: KBasisElement,
    pub in_l2: bool,
    /// Orbit span, searched only when `in_l2`.
    pub orbit: Option<OrbitSummary>,
    /// Steps until the sign-matching raising operator of the first plane
    /// annihilates the element, searched only when `in_l2`.
    pub raising_chain: Option<usize>,
}

impl KFiniteCertificate {
    pub fn holds(&self) -> bool {
        self.in_l2 && self.orbit.is_some() && self.raising_chain.is_some()
    }
}

/// Dimension bound for the closure search.
pub const ORBIT_DIM_BOUND: usize = 4096;
const CHAIN_BOUND: usize = 256;

/// `n ≤ min(k, l)`, backed by a bounded closure search when it holds.
pub fn kfinite_certificate(b: KBasisElement) -> KFiniteCertificate {
    let in_l2 = b.in_l2();
    if !in_l2 {
        return KFiniteCertificate {
            element: b,
            in_l2,
            orbit: None,
            raising_chain: None,
        };
    }
    let orbit = orbit_closure(&KVector::basis(b), ORBIT_DIM_BOUND).ok();
    let mut v = KVector::basis(b);
    let mut raising_chain = None;
    for step in 0..CHAIN_BOUND {
        if v.is_zero() {
            raising_chain = Some(step);
            break;
        }
        match apply_raise_lower(Pair::First, b.s1, &v, RewriteMode::Reduced) {
            Ok(next) => v = next,
            Err(_) => break,
        }
    }
    KFiniteCertificate {
        element: b,
        in_l2,
        orbit,
        raising_chain,
    }
}
