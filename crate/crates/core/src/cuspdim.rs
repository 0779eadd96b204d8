//! Cusp equivalence classes of coset representatives, the reflection sign
//! bookkeeping, and the dimension of the cusp form space.
//!
//! Representatives gamma_i, gamma_j are cusp-equivalent when gamma_i T^u
//! lands in the same coset as gamma_j, so the classes are the orbits of the
//! translation permutation i -> j with gamma_i T = gamma_0 gamma_j. The
//! reflection pairs classes; a class fixed by the pairing contributes to
//! exactly one of the +/- spaces depending on the sign of chi at the
//! conjugating matrix, and the remaining classes split evenly. Subtracting
//! the +-space dimension from the nullity of the relations matrix gives the
//! dimension of S_k(Gamma_0(N), chi).

use crate::arith::{Field, Mat2Z};
use crate::cohomology::{relations_nullity, ModularContext};
use crate::p1cosets::coset_decompose;
use crate::{Error, Result};

/// Translation and reflection bookkeeping on coset representatives.
#[derive(Clone, Debug)]
pub struct CuspData {
    /// t_next[i] = j with gamma_i T = gamma_0 gamma_j; a permutation.
    pub t_next: Vec<usize>,
    /// The Gamma_0(N) matrix gamma_0 in gamma_i T = gamma_0 gamma_{t_next[i]}.
    pub t_delta0: Vec<Mat2Z>,
    /// eps_of[i] = j with gamma_j eps = delta_0 gamma_i; a permutation.
    pub eps_of: Vec<usize>,
    /// The Delta_0(N) matrix delta_0 in gamma_{eps_of[i]} eps = delta_0 gamma_i.
    pub eps_delta0: Vec<Mat2Z>,
    /// Cusp class id per coset index; classes are t_next-orbits.
    pub class_of: Vec<usize>,
    /// Smallest coset index in each class, indexed by class id.
    pub class_reps: Vec<usize>,
}

impl CuspData {
    /// Number of cusp classes.
    pub fn num_cusps(&self) -> usize {
        self.class_reps.len()
    }
}

/// Build the translation/reflection arrays and group representatives into
/// cusp classes.
pub fn build_cusp_data<F: Field>(ctx: &ModularContext<F>) -> CuspData {
    let table = ctx.table();
    let mu = ctx.mu();
    let t = Mat2Z::t();
    let eps = Mat2Z::eps();

    let mut t_next = vec![0usize; mu];
    let mut t_delta0 = vec![Mat2Z::identity(); mu];
    let mut eps_of = vec![0usize; mu];
    let mut eps_delta0 = vec![Mat2Z::identity(); mu];
    for i in 0..mu {
        let dec = coset_decompose(table, &table.lift(i).mul(&t), ctx.chi())
            .expect("determinant-1 translate always decomposes");
        t_next[i] = dec.index;
        t_delta0[i] = dec.delta0;

        // gamma_j eps = delta_0 gamma_i means gamma_j sits in the coset of
        // gamma_i eps (eps is its own inverse).
        let dec_e = coset_decompose(table, &table.lift(i).mul(&eps), ctx.chi())
            .expect("reflection translate always decomposes");
        let j = dec_e.index;
        eps_of[i] = j;
        eps_delta0[i] = table
            .lift(j)
            .mul(&eps)
            .mul(&table.lift(i).inverse_unimodular());
    }

    // classes = orbits of t_next
    let mut class_of = vec![usize::MAX; mu];
    let mut class_reps = Vec::new();
    for start in 0..mu {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = class_reps.len();
        class_reps.push(start);
        let mut i = start;
        while class_of[i] == usize::MAX {
            class_of[i] = id;
            i = t_next[i];
        }
    }

    CuspData {
        t_next,
        t_delta0,
        eps_of,
        eps_delta0,
        class_of,
        class_reps,
    }
}

/// Multiplier chain along each translation orbit: the class representative
/// gets weight 1 and each step multiplies by chi of the conjugating matrix.
/// These weights make the per-cusp coinvariant functional well defined;
/// an inconsistent chain (possible for nontrivial chi) is an error.
pub fn orbit_weights<F: Field>(ctx: &ModularContext<F>, data: &CuspData) -> Result<Vec<F>> {
    let mu = ctx.mu();
    let mut weights = vec![F::zero(); mu];
    for &rep in &data.class_reps {
        let mut i = rep;
        let mut w = F::one();
        loop {
            weights[i] = w.clone();
            let step = ctx.chi().eval_matrix(&data.t_delta0[i])?;
            w = w.mul(&step);
            i = data.t_next[i];
            if i == rep {
                if w != F::one() {
                    return Err(Error::CuspPairing(format!(
                        "translation chain at cusp of representative {rep} closes with {w} != 1"
                    )));
                }
                break;
            }
        }
    }
    Ok(weights)
}

/// Dimension of the +-space of H^1 of the translation subgroup: classes
/// fixed by the reflection pairing contribute according to the sign of
/// chi(delta_0) (minus one lands in the +-space), and the remaining classes
/// split evenly between the two signs.
pub fn plus_dimension<F: Field>(ctx: &ModularContext<F>, data: &CuspData) -> Result<usize> {
    let minus_one = F::one().neg();
    let mut d_plus = 0usize;
    let mut d_minus = 0usize;
    for &i in &data.class_reps {
        let j = data.eps_of[i];
        if data.class_of[j] != data.class_of[i] {
            continue;
        }
        let value = ctx.chi().eval_matrix(&data.eps_delta0[i])?;
        if value == minus_one {
            d_plus += 1;
        } else if value == F::one() {
            d_minus += 1;
        } else {
            return Err(Error::CuspPairing(format!(
                "chi(delta_0) = {value} at a reflection-fixed cusp is not +-1"
            )));
        }
    }
    let nu = data.num_cusps();
    let rest = nu - d_plus - d_minus;
    if rest % 2 != 0 {
        return Err(Error::CuspPairing(format!(
            "{rest} unpaired cusps cannot split evenly"
        )));
    }
    Ok(d_plus + rest / 2)
}

/// dim S_k(Gamma_0(N), chi): nullity of the relations matrix minus the
/// +-space dimension of the cusp contribution.
pub fn cusp_form_dimension<F: Field>(ctx: &ModularContext<F>) -> Result<usize> {
    let nullity = relations_nullity(ctx);
    let data = build_cusp_data(ctx);
    let plus = plus_dimension(ctx, &data)?;
    dimension_from_parts(nullity, plus)
}

/// The subtraction step, shared with callers that already have both parts.
/// A zero nullity short-circuits to dimension zero: the dimension is bounded
/// by the nullity, and when the character parity kills the whole module the
/// cusp count on the right is vacuous.
pub fn dimension_from_parts(nullity: usize, plus: usize) -> Result<usize> {
    if nullity == 0 {
        return Ok(0);
    }
    nullity.checked_sub(plus).ok_or_else(|| {
        Error::Inconsistent(format!(
            "nullity {nullity} smaller than +-space dimension {plus}"
        ))
    })
}
