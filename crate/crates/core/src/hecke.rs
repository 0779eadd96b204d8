//! Heilbronn matrix sets H_n, the alternative Merel sets S_n and S_n', and
//! Hecke coefficient columns.
//!
//! H_n consists of the determinant-n integer matrices with a > b >= 0 and
//! d > c >= 0; it drives the production Hecke action. The sets S_n, S_n'
//! give the same operators through T_n = sum over S_n plus one half the sum
//! over S_n', and exist here as an independent cross-check. Applying T_n to
//! a kernel element m tensor gamma_r accumulates, for every A in H_n with
//! gamma_r A = delta_0 gamma_{r_A}, the polynomial chi(delta_0) (A . m) into
//! the block of gamma_{r_A}.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{Field, Mat2Z};
use crate::cohomology::ModularContext;
use crate::p1cosets::coset_decompose;
use crate::polyaction::{act_with, BinomialTable, HomPoly};
use crate::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A finite set of integer matrices of one determinant.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeSet {
    pub n: u64,
    pub matrices: Vec<Mat2Z>,
}

/// The Heilbronn matrices of determinant n: a > b >= 0, d > c >= 0.
///
/// Enumerated via a*d >= n with rem = a*d - n factored as b*c subject to
/// b < a and c < d; rem = 0 contributes the b = 0 and c = 0 families with
/// the shared (0, 0) solution counted once.
pub fn heilbronn_merel(n: u64) -> Result<HeckeSet> {
    if n < 1 {
        return Err(Error::InvalidParameter("determinant must be >= 1".into()));
    }
    let mut matrices = Vec::new();
    // b < a, c < d forces a*d - n = b*c <= (a-1)(d-1), hence a + d <= n + 1.
    for a in 1..=n {
        for d in 1..=(n + 1 - a) {
            let prod = a * d;
            if prod < n {
                continue;
            }
            let rem = prod - n;
            if rem == 0 {
                for c in 0..d {
                    matrices.push(Mat2Z::new(a as i64, 0, c as i64, d as i64));
                }
                for b in 1..a {
                    matrices.push(Mat2Z::new(a as i64, b as i64, 0, d as i64));
                }
            } else {
                for b in 1..a.min(rem + 1) {
                    if rem % b == 0 {
                        let c = rem / b;
                        if c < d {
                            matrices.push(Mat2Z::new(a as i64, b as i64, c as i64, d as i64));
                        }
                    }
                }
            }
        }
    }
    Ok(HeckeSet { n, matrices })
}

/// Merel's sets (S_n, S_n') of determinant-n matrices.
///
/// S_n: one of {a > |b|, d > |c|, bc < 0}, {b = 0, |c| < d/2},
/// {c = 0, |b| < a/2}. S_n': {b = 0, |c| = d/2} or {c = 0, |b| = a/2}.
/// All entries are bounded by n, so the sets are enumerated from divisor
/// sweeps rather than a quartic scan. The sign condition bc < 0 is pinned
/// by operator equality with the Heilbronn expansion (T_n on level one is
/// multiplication by tau(n), which only the bc < 0 reading reproduces).
pub fn merel_sets(n: u64) -> Result<(HeckeSet, HeckeSet)> {
    if n < 1 {
        return Err(Error::InvalidParameter("determinant must be >= 1".into()));
    }
    let n_i = n as i64;
    let mut s = Vec::new();
    let mut s_prime = Vec::new();

    // branch 1: bc < 0, a > |b|, d > |c|; then ad = n + bc < n.
    for a in 1..n_i {
        let mut d = 1;
        while a * d < n_i {
            let t = n_i - a * d; // = -bc = |b||c|
            for b in 1..=t.min(a - 1) {
                if t % b == 0 {
                    let c = t / b;
                    if c < d {
                        s.push(Mat2Z::new(a, b, -c, d));
                        s.push(Mat2Z::new(a, -b, c, d));
                    }
                }
            }
            d += 1;
        }
    }
    // branches with a zero off-diagonal entry: ad = n.
    for a in 1..=n_i {
        if n_i % a != 0 {
            continue;
        }
        let d = n_i / a;
        // b = 0: |c| < d/2 into S_n, |c| = d/2 into S_n'
        s.push(Mat2Z::new(a, 0, 0, d));
        for c in 1..n_i {
            if 2 * c < d {
                s.push(Mat2Z::new(a, 0, c, d));
                s.push(Mat2Z::new(a, 0, -c, d));
            } else if 2 * c == d {
                s_prime.push(Mat2Z::new(a, 0, c, d));
                s_prime.push(Mat2Z::new(a, 0, -c, d));
            } else {
                break;
            }
        }
        // c = 0: |b| < a/2 into S_n, |b| = a/2 into S_n'
        for b in 1..n_i {
            if 2 * b < a {
                s.push(Mat2Z::new(a, b, 0, d));
                s.push(Mat2Z::new(a, -b, 0, d));
            } else if 2 * b == a {
                s_prime.push(Mat2Z::new(a, b, 0, d));
                s_prime.push(Mat2Z::new(a, -b, 0, d));
            } else {
                break;
            }
        }
    }
    Ok((
        HeckeSet { n, matrices: s },
        HeckeSet {
            n,
            matrices: s_prime,
        },
    ))
}

/// A kernel element m tensor gamma_r of the boundary map.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelElement<F> {
    pub poly: HomPoly<F>,
    pub coset: usize,
}

/// The Hecke coefficient vector t_n for one kernel element, in tensor
/// coordinates: entry r*(k-1) + j holds the accumulated coefficient of
/// x^j y^{k-2-j} at the block of gamma_r.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeColumn<F> {
    pub n: u64,
    pub entries: Vec<F>,
}

/// Floor(mu * k / 12), the q-expansion precision that guarantees linear
/// independence detection.
pub fn sturm_bound<F: Field>(ctx: &ModularContext<F>) -> u64 {
    ctx.mu() as u64 * ctx.weight() as u64 / 12
}

// Reusable per-(n, r) decomposition lists: (index r_A, chi scalar, position
// of A in H_n). The polynomial part depends on the kernel element and is
// recomputed per call.
type DecompList<F> = Vec<(usize, F, usize)>;

/// Driver for Hecke columns over one context, with optional caching of the
/// coset decompositions on the hot probe path.
pub struct HeckeEngine<'a, F> {
    ctx: &'a ModularContext<F>,
    binom: BinomialTable,
    caching: bool,
    sets: Mutex<HashMap<u64, std::sync::Arc<HeckeSet>>>,
    decomps: Mutex<HashMap<(u64, usize), std::sync::Arc<DecompList<F>>>>,
}

impl<'a, F: Field> HeckeEngine<'a, F> {
    pub fn new(ctx: &'a ModularContext<F>) -> Self {
        Self::with_caching(ctx, true)
    }

    pub fn with_caching(ctx: &'a ModularContext<F>, caching: bool) -> Self {
        HeckeEngine {
            ctx,
            binom: BinomialTable::for_weight(ctx.weight()),
            caching,
            sets: Mutex::new(HashMap::new()),
            decomps: Mutex::new(HashMap::new()),
        }
    }

    pub fn hecke_set(&self, n: u64) -> std::sync::Arc<HeckeSet> {
        if let Some(h) = self.sets.lock().unwrap().get(&n) {
            return h.clone();
        }
        let h = std::sync::Arc::new(heilbronn_merel(n).expect("n >= 1"));
        if self.caching {
            self.sets.lock().unwrap().insert(n, h.clone());
        }
        h
    }

    fn decompositions(&self, n: u64, coset: usize) -> std::sync::Arc<DecompList<F>> {
        if self.caching {
            if let Some(d) = self.decomps.lock().unwrap().get(&(n, coset)) {
                return d.clone();
            }
        }
        let set = self.hecke_set(n);
        let gamma = self.ctx.table().lift(coset);
        let list: DecompList<F> = set
            .matrices
            .iter()
            .enumerate()
            .filter_map(|(pos, a)| {
                coset_decompose(self.ctx.table(), &gamma.mul(a), self.ctx.chi())
                    .map(|dec| (dec.index, dec.scalar, pos))
            })
            .collect();
        let list = std::sync::Arc::new(list);
        if self.caching {
            self.decomps
                .lock()
                .unwrap()
                .insert((n, coset), list.clone());
        }
        list
    }

    /// The coefficient vector of T_n applied to a kernel element, in tensor
    /// coordinates. Terms whose bottom row leaves P^1 are dropped.
    pub fn hecke_column(&self, n: u64, ke: &KernelElement<F>) -> HeckeColumn<F> {
        let k1 = self.ctx.num_monomials();
        let mut entries = vec![F::zero(); self.ctx.dim_w()];
        let set = self.hecke_set(n);
        for &(r_a, ref scalar, pos) in self.decompositions(n, ke.coset).iter() {
            let a = &set.matrices[pos];
            let p = act_with(&self.binom, a, &ke.poly);
            for (j, coeff) in p.coeffs().iter().enumerate() {
                if !coeff.is_zero() {
                    entries[r_a * k1 + j].add_assign(&scalar.mul(coeff));
                }
            }
        }
        HeckeColumn { n, entries }
    }

    /// Same operator through the Merel sets: sum over S_n plus one half the
    /// sum over S_n'. Used as a cross-check oracle against [`Self::hecke_column`].
    pub fn hecke_column_via_merel(&self, n: u64, ke: &KernelElement<F>) -> HeckeColumn<F> {
        let k1 = self.ctx.num_monomials();
        let (s, s_prime) = merel_sets(n).expect("n >= 1");
        let gamma = self.ctx.table().lift(ke.coset);
        let mut entries = vec![F::zero(); self.ctx.dim_w()];
        let half = F::from_i64(2).inv();
        for (set, weight) in [(&s, F::one()), (&s_prime, half)] {
            for a in &set.matrices {
                let Some(dec) = coset_decompose(self.ctx.table(), &gamma.mul(a), self.ctx.chi())
                else {
                    continue;
                };
                let p = act_with(&self.binom, a, &ke.poly);
                for (j, coeff) in p.coeffs().iter().enumerate() {
                    if !coeff.is_zero() {
                        entries[dec.index * k1 + j]
                            .add_assign(&weight.mul(&dec.scalar).mul(coeff));
                    }
                }
            }
        }
        HeckeColumn { n, entries }
    }

    /// Columns t_1..t_max as a dim W x max matrix (tensor coordinates).
    /// Distinct columns are independent and run in parallel.
    pub fn column_matrix(&self, max_n: u64, ke: &KernelElement<F>) -> crate::exactla::ExactMat<F> {
        let cols: Vec<HeckeColumn<F>> = {
            #[cfg(feature = "parallel")]
            {
                (1..=max_n)
                    .into_par_iter()
                    .map(|n| self.hecke_column(n, ke))
                    .collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                (1..=max_n).map(|n| self.hecke_column(n, ke)).collect()
            }
        };
        let mut m = crate::exactla::ExactMat::zeros(self.ctx.dim_w(), max_n as usize);
        for (c, col) in cols.iter().enumerate() {
            for (r, v) in col.entries.iter().enumerate() {
                if !v.is_zero() {
                    m.set(r, c, v.clone());
                }
            }
        }
        m
    }
}

/// Sum of positive divisors, used by the set-size census.
pub fn sigma(n: u64) -> u64 {
    (1..=n).filter(|d| n % d == 0).sum()
}

/// BigInt determinant equals the given n.
pub fn has_det(m: &Mat2Z, n: i64) -> bool {
    m.det() == BigInt::from(n)
}

/// Sort key for comparing matrix sets irrespective of enumeration order.
pub fn matrix_sort_key(m: &Mat2Z) -> (i64, i64, i64, i64) {
    (
        m.a.to_i64().unwrap(),
        m.b.to_i64().unwrap(),
        m.c.to_i64().unwrap(),
        m.d.to_i64().unwrap(),
    )
}
