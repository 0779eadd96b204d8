//! Homogeneous polynomials of degree k-2 in x, y and the matrix action
//! (a b; c d) . x^j y^{k-2-j} = (ax + by)^j (cx + dy)^{k-2-j}.
//!
//! Coefficients are generic over the field; character twists are applied by
//! the caller, so this module stays character-agnostic.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{Field, Mat2Z};

/// A homogeneous polynomial of degree `weight - 2`; `coeffs[j]` is the
/// coefficient of x^j y^{weight-2-j}.
#[derive(Clone, Debug, PartialEq)]
pub struct HomPoly<F> {
    weight: u32,
    coeffs: Vec<F>,
}

impl<F: Field> HomPoly<F> {
    pub fn new(weight: u32, coeffs: Vec<F>) -> Self {
        assert!(weight >= 2);
        assert_eq!(coeffs.len(), weight as usize - 1);
        HomPoly { weight, coeffs }
    }

    pub fn zero(weight: u32) -> Self {
        Self::new(weight, vec![F::zero(); weight as usize - 1])
    }

    /// The monomial x^j y^{weight-2-j}.
    pub fn monomial(weight: u32, j: usize) -> Self {
        let mut p = Self::zero(weight);
        p.coeffs[j] = F::one();
        p
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn degree(&self) -> usize {
        self.weight as usize - 2
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &F {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.weight, rhs.weight);
        Self::new(
            self.weight,
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(self.weight, self.coeffs.iter().map(|c| c.mul(s)).collect())
    }

    /// Exact evaluation at (x0, y0).
    pub fn eval(&self, x0: &F, y0: &F) -> F {
        let deg = self.degree();
        let mut xp = vec![F::one(); deg + 1];
        let mut yp = vec![F::one(); deg + 1];
        for i in 1..=deg {
            xp[i] = xp[i - 1].mul(x0);
            yp[i] = yp[i - 1].mul(y0);
        }
        let mut acc = F::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc.add_assign(&c.mul(&xp[j]).mul(&yp[deg - j]));
            }
        }
        acc
    }
}

/// Binomial coefficient C(n, m). Panics when m > n.
pub fn binomial(n: u32, m: u32) -> BigInt {
    assert!(m <= n, "binomial({n}, {m}) with m > n");
    BinomialTable::new(n).row(n)[m as usize].clone()
}

/// Pascal-triangle rows 0..=max_n, built once per weight and shared by the
/// polynomial action.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialTable {
    pub fn new(max_n: u32) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n as usize + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=max_n as usize {
            let prev = &rows[n - 1];
            let mut row = vec![BigInt::zero(); n + 1];
            row[0] = BigInt::one();
            row[n] = BigInt::one();
            for m in 1..n {
                row[m] = &prev[m - 1] + &prev[m];
            }
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn for_weight(weight: u32) -> Self {
        Self::new(weight.saturating_sub(2))
    }

    pub fn row(&self, n: u32) -> &[BigInt] {
        &self.rows[n as usize]
    }
}

/// Apply the matrix action to a polynomial: each monomial x^j y^{k-2-j} maps
/// to (ax + by)^j (cx + dy)^{k-2-j}, expanded by convolving the two binomial
/// rows.
pub fn act<F: Field>(delta: &Mat2Z, poly: &HomPoly<F>) -> HomPoly<F> {
    act_with(&BinomialTable::for_weight(poly.weight()), delta, poly)
}

/// The left module action used for representation matrices: substitution by
/// the adjugate. Plain substitution composes contravariantly, so the
/// adjugate twist is what makes delta1.(delta2.m) = (delta1 delta2).m hold;
/// determinant-1 matrices act by their inverse.
pub fn module_act<F: Field>(delta: &Mat2Z, poly: &HomPoly<F>) -> HomPoly<F> {
    module_act_with(&BinomialTable::for_weight(poly.weight()), delta, poly)
}

/// Like [`module_act`] with a caller-supplied binomial table.
pub fn module_act_with<F: Field>(
    table: &BinomialTable,
    delta: &Mat2Z,
    poly: &HomPoly<F>,
) -> HomPoly<F> {
    let adj = Mat2Z {
        a: delta.d.clone(),
        b: -delta.b.clone(),
        c: -delta.c.clone(),
        d: delta.a.clone(),
    };
    act_with(table, &adj, poly)
}

/// Like [`act`] with a caller-supplied binomial table.
pub fn act_with<F: Field>(table: &BinomialTable, delta: &Mat2Z, poly: &HomPoly<F>) -> HomPoly<F> {
    let deg = poly.degree();
    let powers = |x: &BigInt| -> Vec<BigInt> {
        let mut v = Vec::with_capacity(deg + 1);
        v.push(BigInt::one());
        for i in 1..=deg {
            let next = &v[i - 1] * x;
            v.push(next);
        }
        v
    };
    let (ap, bp, cp, dp) = (
        powers(&delta.a),
        powers(&delta.b),
        powers(&delta.c),
        powers(&delta.d),
    );

    let mut out = vec![F::zero(); deg + 1];
    for (j, coeff) in poly.coeffs.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        // (ax + by)^j: coefficient of x^s y^{j-s} is C(j, s) a^s b^{j-s}
        let row_u = table.row(j as u32);
        let row_v = table.row((deg - j) as u32);
        let mut conv = vec![BigInt::zero(); deg + 1];
        for s in 0..=j {
            let u = &row_u[s] * &ap[s] * &bp[j - s];
            if u.is_zero() {
                continue;
            }
            for t in 0..=deg - j {
                let v = &row_v[t] * &cp[t] * &dp[deg - j - t];
                if !v.is_zero() {
                    conv[s + t] += &u * &v;
                }
            }
        }
        for (w, c) in conv.iter().enumerate() {
            if !c.is_zero() {
                out[w].add_assign(&coeff.mul(&F::from_bigint(c)));
            }
        }
    }
    HomPoly::new(poly.weight(), out)
}
