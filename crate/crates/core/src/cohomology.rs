//! Matrix representations of the action on the coinduced module W and the
//! relations matrix whose nullspace realizes the plus-part of H^1.
//!
//! W has one basis element w_{ij} per (coset index i, monomial index j),
//! flattened as i + j*mu. For a matrix delta, each coset representative
//! gamma_r is decomposed as gamma_r * delta = delta_0 * gamma_s; the
//! coefficients of chi(delta_0) (delta_0 . x^j y^{k-2-j}) land in row
//! s + j*mu and columns r + t*mu. Stacking Id + M(S), Id + M(Q) + M(Q^2)
//! and Id + M(eps) yields the relations matrix.

use crate::arith::{Field, Mat2Z};
use crate::chars::DirichletChar;
use crate::exactla::ExactMat;
use crate::p1cosets::{build_p1, coset_decompose, CosetTable};
use crate::polyaction::{module_act_with, BinomialTable, HomPoly};
use crate::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// The parameter bundle (N, k, chi) with the coset table and derived sizes,
/// threaded through every stage of the pipeline.
#[derive(Clone, Debug)]
pub struct ModularContext<F> {
    level: u64,
    weight: u32,
    chi: DirichletChar<F>,
    table: CosetTable,
}

impl<F: Field> ModularContext<F> {
    pub fn new(level: u64, weight: u32, chi: DirichletChar<F>) -> Result<Self> {
        if level < 1 {
            return Err(Error::InvalidParameter("level must be >= 1".into()));
        }
        if weight < 2 {
            return Err(Error::InvalidParameter("weight must be >= 2".into()));
        }
        if chi.modulus() != level {
            return Err(Error::InvalidParameter(format!(
                "character modulus {} != level {level}",
                chi.modulus()
            )));
        }
        Ok(ModularContext {
            level,
            weight,
            chi,
            table: build_p1(level),
        })
    }

    /// Swap in alternative coset lifts (for lift-independence checks).
    pub fn with_table(mut self, table: CosetTable) -> Result<Self> {
        if table.modulus() != self.level {
            return Err(Error::InvalidParameter("table modulus mismatch".into()));
        }
        self.table = table;
        Ok(self)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn chi(&self) -> &DirichletChar<F> {
        &self.chi
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn mu(&self) -> usize {
        self.table.mu()
    }

    /// Number of monomials, k - 1.
    pub fn num_monomials(&self) -> usize {
        self.weight as usize - 1
    }

    /// Dimension of W: mu * (k - 1).
    pub fn dim_w(&self) -> usize {
        self.mu() * self.num_monomials()
    }

    /// Flat index of the basis element w_{ij}.
    pub fn w_index(&self, coset: usize, monomial: usize) -> usize {
        coset + monomial * self.mu()
    }

    /// Flat index of x^j y^{k-2-j} tensor the r-th representative.
    pub fn tensor_index(&self, coset: usize, monomial: usize) -> usize {
        coset * self.num_monomials() + monomial
    }
}

/// The matrix of the action of `delta` on W in the w_{ij} basis convention
/// described in the module docs. Entries accumulate additively; coset
/// representatives whose translate leaves the support are skipped.
pub fn action_matrix<F: Field>(ctx: &ModularContext<F>, delta: &Mat2Z) -> ExactMat<F> {
    assert!(!num_traits::Zero::is_zero(&delta.det()), "singular action matrix");
    let mu = ctx.mu();
    let k1 = ctx.num_monomials();
    let table = BinomialTable::for_weight(ctx.weight);

    let per_coset = |r: usize| -> Vec<(usize, usize, F)> {
        let g = ctx.table.lift(r).mul(delta);
        let Some(dec) = coset_decompose(&ctx.table, &g, &ctx.chi) else {
            return Vec::new();
        };
        let mut entries = Vec::with_capacity(k1 * k1);
        for j in 0..k1 {
            let p = module_act_with(&table, &dec.delta0, &HomPoly::<F>::monomial(ctx.weight, j));
            for (t, coeff) in p.coeffs().iter().enumerate() {
                if !coeff.is_zero() {
                    entries.push((dec.index + j * mu, r + t * mu, dec.scalar.mul(coeff)));
                }
            }
        }
        entries
    };

    #[cfg(feature = "parallel")]
    let parts: Vec<Vec<(usize, usize, F)>> = (0..mu).into_par_iter().map(per_coset).collect();
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<Vec<(usize, usize, F)>> = (0..mu).map(per_coset).collect();

    let mut m = ExactMat::zeros(ctx.dim_w(), ctx.dim_w());
    for part in parts {
        for (row, col, v) in part {
            m.add_to(row, col, &v);
        }
    }
    m
}

/// The stacked relations matrix [Id + M(S); Id + M(Q) + M(Q^2); Id + M(eps)]
/// of shape 3 * dim W x dim W.
pub fn relations_matrix<F: Field>(ctx: &ModularContext<F>) -> ExactMat<F> {
    let id = ExactMat::identity(ctx.dim_w());
    let s_block = id.add(&action_matrix(ctx, &Mat2Z::s())).unwrap();
    let q = Mat2Z::q();
    let q_block = id
        .add(&action_matrix(ctx, &q))
        .unwrap()
        .add(&action_matrix(ctx, &q.mul(&q)))
        .unwrap();
    let e_block = id.add(&action_matrix(ctx, &Mat2Z::eps())).unwrap();
    ExactMat::vstack(&[&s_block, &q_block, &e_block])
}

/// Canonical (reduced echelon) basis of the nullspace of the relations
/// matrix; its row count is the dimension of the plus-part of H^1.
pub fn h1_plus_basis<F: Field>(ctx: &ModularContext<F>) -> ExactMat<F> {
    relations_matrix(ctx).nullspace()
}

/// Nullity of the relations matrix, computed by rank only.
pub fn relations_nullity<F: Field>(ctx: &ModularContext<F>) -> usize {
    let rel = relations_matrix(ctx);
    rel.cols() - rel.rank()
}
