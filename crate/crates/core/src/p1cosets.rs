//! P^1(Z/NZ) and coset representatives of Gamma_0(N) in SL_2(Z).
//!
//! Elements are pairs (c, d) with gcd(c, d, N) = 1 modulo scaling by units;
//! (c1, d1) and (c2, d2) are equivalent exactly when c1*d2 = c2*d1 mod N.
//! The enumeration order is contractual: the block (1, d) for d = 0..N-1,
//! then (0, 1), then (c, d) for each proper divisor c of N in increasing
//! order. Each element is lifted to an SL_2(Z) matrix whose bottom row is
//! congruent to it, and a reverse lookup maps an arbitrary coprime pair to
//! its representative together with the scaling unit.

use std::collections::HashMap;

use num_integer::Integer;

use crate::arith::{xgcd, Field, Mat2Z};
use crate::chars::DirichletChar;
use crate::{Error, Result};

/// A normalized element of P^1(Z/NZ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct P1Elem {
    pub c: u64,
    pub d: u64,
}

/// The coset table for Gamma_0(N): ordered P^1 representatives, their
/// SL_2(Z) lifts, and a (c, d) -> (index, unit) lookup.
#[derive(Clone, Debug)]
pub struct CosetTable {
    modulus: u64,
    elems: Vec<P1Elem>,
    lifts: Vec<Mat2Z>,
    // key c * N + d for every scaled copy of every representative
    lookup: HashMap<u64, (u32, u32)>,
}

/// Enumerate P^1(Z/NZ) and lift every representative.
pub fn build_p1(modulus: u64) -> CosetTable {
    assert!(modulus >= 1);
    let n = modulus;
    let mut elems: Vec<P1Elem> = Vec::new();

    let equivalent = |e1: &P1Elem, e2: &P1Elem| (e1.c * e2.d) % n == (e2.c * e1.d) % n;
    let push_if_new = |elems: &mut Vec<P1Elem>, cand: P1Elem| {
        if !elems.iter().any(|e| equivalent(e, &cand)) {
            elems.push(cand);
        }
    };

    for d in 0..n {
        push_if_new(&mut elems, P1Elem { c: 1 % n, d });
    }
    push_if_new(&mut elems, P1Elem { c: 0, d: 1 % n });
    let mut c = 2;
    while c < n {
        if n % c == 0 {
            for d in 1..n {
                if c.gcd(&d).gcd(&n) == 1 {
                    push_if_new(&mut elems, P1Elem { c, d });
                }
            }
        }
        c += 1;
    }

    let lifts: Vec<Mat2Z> = elems.iter().map(|e| lift_to_sl2(e.c, e.d, n)).collect();

    let mut lookup = HashMap::new();
    for (i, e) in elems.iter().enumerate() {
        for lambda in 0..n.max(1) {
            if lambda.gcd(&n) == 1 || n == 1 {
                let key = (lambda * e.c % n) * n + (lambda * e.d % n);
                lookup.insert(key, (i as u32, lambda as u32));
            }
        }
    }
    if n == 1 {
        lookup.insert(0, (0, 0));
    }

    CosetTable {
        modulus,
        elems,
        lifts,
        lookup,
    }
}

/// Lift (c, d) with gcd(c, d, N) = 1 to a determinant-1 integer matrix with
/// bottom row congruent to (c, d) mod N, via the Euclidean algorithm.
pub fn lift_to_sl2(c: u64, d: u64, modulus: u64) -> Mat2Z {
    if modulus == 1 {
        return Mat2Z::identity();
    }
    let c = (c % modulus) as i64;
    let mut d = (d % modulus) as i64;
    if c == 0 && d == 0 {
        panic!("(0, 0) is not in P^1");
    }
    if c == 1 {
        // the whole (1, d) block lifts to (0 -1; 1 d)
        return Mat2Z::new(0, -1, 1, d);
    }
    // adjust d by multiples of N until gcd(c, d) = 1
    while c.gcd(&d) != 1 {
        d += modulus as i64;
    }
    let (g, u, v) = xgcd(c, d).expect("coprime pair");
    debug_assert_eq!(g, 1);
    // (v -u; c d) has determinant v*d + u*c = 1
    Mat2Z::new(v, -u, c, d)
}

impl CosetTable {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The index of Gamma_0(N) in SL_2(Z).
    pub fn mu(&self) -> usize {
        self.elems.len()
    }

    pub fn elems(&self) -> &[P1Elem] {
        &self.elems
    }

    pub fn elem(&self, i: usize) -> P1Elem {
        self.elems[i]
    }

    pub fn lifts(&self) -> &[Mat2Z] {
        &self.lifts
    }

    pub fn lift(&self, i: usize) -> &Mat2Z {
        &self.lifts[i]
    }

    /// Replace the lifts, keeping everything else. The replacements must be
    /// determinant-1 matrices congruent to the same P^1 elements; used to
    /// check that downstream results do not depend on the lift choice.
    pub fn with_lifts(mut self, lifts: Vec<Mat2Z>) -> Result<Self> {
        if lifts.len() != self.elems.len() {
            return Err(Error::InvalidParameter("wrong number of lifts".into()));
        }
        for (e, l) in self.elems.iter().zip(&lifts) {
            if !num_traits::One::is_one(&l.det()) || l.bottom_row_mod(self.modulus) != (e.c, e.d) {
                return Err(Error::InvalidParameter(format!(
                    "invalid lift for ({}, {})",
                    e.c, e.d
                )));
            }
        }
        self.lifts = lifts;
        Ok(self)
    }

    /// Index and scaling unit of a coprime pair: returns (i, lambda) with
    /// (c, d) = lambda * elems[i] mod N.
    pub fn lookup_raw(&self, c: i64, d: i64) -> Result<(usize, u64)> {
        let n = self.modulus;
        let cu = c.rem_euclid(n as i64) as u64;
        let du = d.rem_euclid(n as i64) as u64;
        if cu.gcd(&du).gcd(&n) != 1 && n != 1 {
            return Err(Error::NotInP1 {
                c,
                d,
                modulus: n,
            });
        }
        let (i, lambda) = self.lookup[&(cu * n + du)];
        Ok((i as usize, lambda as u64))
    }
}

/// Look up (c, d) in the table, returning its index and chi(lambda) for the
/// scaling unit lambda.
pub fn p1_lookup<F: Field>(
    table: &CosetTable,
    c: i64,
    d: i64,
    chi: &DirichletChar<F>,
) -> Result<(usize, F)> {
    let (i, lambda) = table.lookup_raw(c, d)?;
    Ok((i, chi.value(lambda).clone()))
}

/// One term of a coset decomposition g = delta0 * gamma_s.
#[derive(Clone, Debug)]
pub struct CosetDecomp<F> {
    /// Index s of the coset representative.
    pub index: usize,
    /// The Delta_0(N) factor g * lifts[s]^{-1}.
    pub delta0: Mat2Z,
    /// chi of the scaling unit, which equals chi(delta0).
    pub scalar: F,
}

/// Decompose an integer matrix g as delta0 * gamma_s with delta0 in
/// Delta_0(N). Returns `None` when the bottom row of g is not coprime to N,
/// in which case the term is dropped by the callers.
pub fn coset_decompose<F: Field>(
    table: &CosetTable,
    g: &Mat2Z,
    chi: &DirichletChar<F>,
) -> Option<CosetDecomp<F>> {
    let n = table.modulus;
    let (c, d) = g.bottom_row_mod(n);
    if c.gcd(&d).gcd(&n) != 1 && n != 1 {
        return None;
    }
    let (index, lambda) = table.lookup[&(c * n + d)];
    let index = index as usize;
    let delta0 = g.mul(&table.lifts[index].inverse_unimodular());
    debug_assert_eq!(crate::arith::mod_to_u64(&delta0.c, n), 0);
    Some(CosetDecomp {
        index,
        delta0,
        scalar: chi.value(lambda as u64).clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BigRat;
    use crate::chars::char_trivial;
    use num_traits::One;

    // Brute-force P^1(Z/NZ): all coprime pairs merged under unit scaling.
    fn p1_size_oracle(n: u64) -> usize {
        let mut classes: Vec<Vec<(u64, u64)>> = Vec::new();
        for c in 0..n {
            'pair: for d in 0..n {
                if c.gcd(&d).gcd(&n) != 1 && n != 1 {
                    continue;
                }
                for class in &classes {
                    if class.contains(&(c, d)) {
                        continue 'pair;
                    }
                }
                let mut class = Vec::new();
                for lambda in 0..n.max(2) {
                    if n == 1 || lambda.gcd(&n) == 1 {
                        class.push((lambda * c % n.max(1), lambda * d % n.max(1)));
                    }
                }
                classes.push(class);
            }
        }
        if n == 1 {
            1
        } else {
            classes.len()
        }
    }

    fn mu_formula(n: u64) -> usize {
        let mut m = n;
        let mut mu = n;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                mu += mu / p;
                while m % p == 0 {
                    m /= p;
                }
            }
            p += 1;
        }
        if m > 1 {
            mu += mu / m;
        }
        mu as usize
    }

    #[test]
    fn golden_order_n25() {
        let table = build_p1(25);
        let mut expect: Vec<(u64, u64)> = (0..25).map(|d| (1, d)).collect();
        expect.push((0, 1));
        expect.extend([(5, 1), (5, 2), (5, 3), (5, 4)]);
        let got: Vec<(u64, u64)> = table.elems().iter().map(|e| (e.c, e.d)).collect();
        assert_eq!(got, expect);
        assert_eq!(table.mu(), 30);
    }

    #[test]
    fn golden_order_n12() {
        let table = build_p1(12);
        let mut expect: Vec<(u64, u64)> = (0..12).map(|d| (1, d)).collect();
        expect.push((0, 1));
        expect.extend([
            (2, 1),
            (2, 3),
            (2, 5),
            (3, 1),
            (3, 2),
            (3, 4),
            (3, 7),
            (4, 1),
            (4, 3),
            (4, 5),
            (6, 1),
        ]);
        let got: Vec<(u64, u64)> = table.elems().iter().map(|e| (e.c, e.d)).collect();
        assert_eq!(got, expect);
        assert_eq!(table.mu(), 24);
    }

    #[test]
    fn level_one_is_single_coset() {
        let table = build_p1(1);
        assert_eq!(table.mu(), 1);
        assert_eq!(*table.lift(0), Mat2Z::identity());
    }

    #[test]
    fn size_matches_brute_force_and_formula() {
        for n in 1..=60 {
            let table = build_p1(n);
            assert_eq!(table.mu(), p1_size_oracle(n), "N = {n}");
            assert_eq!(table.mu(), mu_formula(n), "N = {n}");
        }
        for n in [101u64, 144, 180, 200] {
            assert_eq!(build_p1(n).mu(), mu_formula(n), "N = {n}");
        }
    }

    #[test]
    fn lifts_are_valid() {
        for n in [1u64, 11, 12, 25, 48] {
            let table = build_p1(n);
            for (i, e) in table.elems().iter().enumerate() {
                let l = table.lift(i);
                assert!(l.det().is_one());
                assert_eq!(l.bottom_row_mod(n), (e.c, e.d));
            }
        }
    }

    #[test]
    fn lift_examples() {
        // (1, d) lifts to (0 -1; 1 d)
        let table = build_p1(25);
        for d in 0..25u64 {
            assert_eq!(*table.lift(d as usize), Mat2Z::new(0, -1, 1, d as i64));
        }
        // (0, 1) lifts to the identity
        assert_eq!(*table.lift(25), Mat2Z::identity());
        // (5, 2) lands in the same coset as (-2 -1; 5 2): g1 * g2^{-1} in Gamma_0(25)
        let (idx, lambda) = table.lookup_raw(5, 2).unwrap();
        assert_eq!(lambda, 1);
        let reference = Mat2Z::new(-2, -1, 5, 2);
        let quot = table.lift(idx).mul(&reference.inverse_unimodular());
        assert!(quot.det().is_one());
        assert_eq!(crate::arith::mod_to_u64(&quot.c, 25), 0);
    }

    #[test]
    fn lookup_with_character_scalars() {
        let chi = char_trivial::<BigRat>(25);
        let table = build_p1(25);

        // brute-force oracle for the scaling unit
        let scan = |c: u64, d: u64| -> (usize, u64) {
            for (i, e) in table.elems().iter().enumerate() {
                for lambda in 1..25u64 {
                    if lambda.gcd(&25) == 1
                        && (lambda * e.c % 25, lambda * e.d % 25) == (c, d)
                    {
                        return (i, lambda);
                    }
                }
            }
            panic!("not found");
        };

        for (c, d) in [(2i64, 0i64), (5, 7), (3, 4), (24, 24)] {
            let (i, lambda) = table.lookup_raw(c, d).unwrap();
            let (oi, ol) = scan(c as u64, d as u64);
            assert_eq!((i, lambda), (oi, ol), "({c}, {d})");
        }
        // (2, 0) normalizes to (1, 0)
        let (i, s) = p1_lookup(&table, 2, 0, &chi).unwrap();
        assert_eq!(table.elem(i), P1Elem { c: 1, d: 0 });
        assert_eq!(s, BigRat::one());
        // (5, 7) normalizes to (5, 2)
        let (i, _) = p1_lookup(&table, 5, 7, &chi).unwrap();
        assert_eq!(table.elem(i), P1Elem { c: 5, d: 2 });
        // already normalized
        let table12 = build_p1(12);
        let (i, lambda) = table12.lookup_raw(1, 5).unwrap();
        assert_eq!((table12.elem(i), lambda), (P1Elem { c: 1, d: 5 }, 1));

        assert!(table12.lookup_raw(2, 2).is_err());
    }

    #[test]
    fn decompose_round_trip() {
        let chi = char_trivial::<BigRat>(12);
        let table = build_p1(12);
        // gamma_0 ranges over a few Gamma_0(12) elements
        let gamma0s = [
            Mat2Z::identity(),
            Mat2Z::new(1, 0, 12, 1),
            Mat2Z::new(5, 2, 12, 5),
            Mat2Z::new(-7, -3, 12, 5),
        ];
        for (i, lift) in table.lifts().iter().enumerate() {
            for g0 in &gamma0s {
                let g = g0.mul(lift);
                let dec = coset_decompose(&table, &g, &chi).expect("decomposable");
                assert_eq!(dec.index, i);
                // delta0 passes the Delta_0(N) membership test
                assert_eq!(crate::arith::mod_to_u64(&dec.delta0.c, 12), 0);
                assert_eq!(dec.delta0.det(), g.det());
            }
        }
        // representative itself decomposes with delta0 = I
        let dec = coset_decompose(&table, table.lift(3), &chi).unwrap();
        assert_eq!(dec.index, 3);
        assert_eq!(dec.delta0, Mat2Z::identity());
    }

    #[test]
    fn decompose_absent_when_row_not_coprime() {
        let chi = char_trivial::<BigRat>(4);
        let table = build_p1(4);
        let g = Mat2Z::new(1, 0, 2, 2);
        assert!(coset_decompose(&table, &g, &chi).is_none());
    }
}
