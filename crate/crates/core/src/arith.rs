//! Scalar substrate: arbitrary-precision rationals, cyclotomic field
//! elements, and 2x2 integer matrices.
//!
//! `BigRat` keeps small values in a machine-word fast path and spills to
//! `num_rational::BigRational` on overflow, so exact elimination on matrices
//! whose entries happen to stay small does not pay big-integer costs.
//! `CycloNum` represents elements of Q(zeta_m) as polynomials in zeta_m
//! reduced modulo the m-th cyclotomic polynomial; for m <= 2 it degenerates
//! to a plain rational.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Extended gcd: returns `(g, u, v)` with `u*a + v*b = g = gcd(a, b) > 0`.
///
/// Deterministic for fixed inputs; errors when both inputs are zero.
pub fn xgcd(a: i64, b: i64) -> Result<(i64, i64, i64)> {
    if a == 0 && b == 0 {
        return Err(Error::GcdUndefined);
    }
    fn go(a: i64, b: i64) -> (i64, i64, i64) {
        if b == 0 {
            if a < 0 {
                (-a, -1, 0)
            } else {
                (a, 1, 0)
            }
        } else {
            let (g, u, v) = go(b, a % b);
            (g, v, u - (a / b) * v)
        }
    }
    Ok(go(a, b))
}

/// Coefficients of the m-th cyclotomic polynomial, constant term first.
///
/// Computed by exact division of x^m - 1 by the product of the lower
/// cyclotomic polynomials; monic of degree phi(m).
pub fn cyclotomic_poly(m: u32) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic polynomial needs m >= 1");
    // x^m - 1
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_poly(d);
            num = poly_div_exact_int(&num, &phi_d);
        }
    }
    num
}

/// Euler totient by trial division.
pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut phi = m;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            phi -= phi / p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

// Exact division of integer polynomials (constant term first); the caller
// guarantees divisibility. Trailing zero coefficients are trimmed.
fn poly_div_exact_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = rem[i + dd].clone();
        if !c.is_zero() {
            quot[i] = c.clone();
            for (j, dj) in den.iter().enumerate() {
                let t = dj * &c;
                rem[i + j] -= t;
            }
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}

/// Common interface for the coefficient fields of the pipeline.
///
/// Implemented by [`BigRat`] (characters of order <= 2) and [`CycloNum`]
/// (values of higher-order characters). All operations are exact; `inv`
/// panics on zero, which only internal invariant violations can reach.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    /// zeta_order^exp when representable in this field, `None` otherwise.
    fn root_of_unity(order: u32, exp: u32) -> Option<Self>;

    /// Whether the value is 1 or -1; such pivots keep elimination integral.
    fn is_pm_one(&self) -> bool {
        *self == Self::one() || *self == Self::one().neg()
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }
    /// `self -= f * x`, the inner step of row elimination.
    fn sub_mul_assign(&mut self, f: &Self, x: &Self) {
        *self = self.sub(&f.mul(x));
    }
}

// ---------------------------------------------------------------------------
// BigRat
// ---------------------------------------------------------------------------

/// An exact rational number. Reduced with positive denominator; values whose
/// numerator and denominator fit in an `i64` avoid heap allocation.
#[derive(Clone, PartialEq, Eq)]
pub struct BigRat(Repr);

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    // invariants: den > 0, gcd(|num|, den) = 1
    Small(i64, i64),
    // invariant: not representable as Small (demoted eagerly)
    Big(Box<BigRational>),
}

impl BigRat {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(mut num: i128, mut den: i128) -> Self {
        debug_assert!(den != 0);
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) => BigRat(Repr::Small(n, d)),
            _ => BigRat(Repr::Big(Box::new(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            )))),
        }
    }

    pub fn from_big(r: BigRational) -> Self {
        // BigRational::new already reduces and fixes the sign.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => BigRat(Repr::Small(n, d)),
            _ => BigRat(Repr::Big(Box::new(r))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }
}

impl Field for BigRat {
    fn zero() -> Self {
        BigRat(Repr::Small(0, 1))
    }

    fn one() -> Self {
        BigRat(Repr::Small(1, 1))
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    fn add(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small(an, ad), Repr::Small(bn, bd)) => {
                let num = *an as i128 * *bd as i128 + *bn as i128 * *ad as i128;
                let den = *ad as i128 * *bd as i128;
                BigRat::from_i128(num, den)
            }
            _ => BigRat::from_big(self.to_big() + rhs.to_big()),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small(an, ad), Repr::Small(bn, bd)) => {
                let num = *an as i128 * *bd as i128 - *bn as i128 * *ad as i128;
                let den = *ad as i128 * *bd as i128;
                BigRat::from_i128(num, den)
            }
            _ => BigRat::from_big(self.to_big() - rhs.to_big()),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small(an, ad), Repr::Small(bn, bd)) => {
                BigRat::from_i128(*an as i128 * *bn as i128, *ad as i128 * *bd as i128)
            }
            _ => BigRat::from_big(self.to_big() * rhs.to_big()),
        }
    }

    fn neg(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => BigRat::from_i128(-(*n as i128), *d as i128),
            Repr::Big(b) => BigRat::from_big(-(**b).clone()),
        }
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inversion of zero");
        match &self.0 {
            Repr::Small(n, d) => BigRat::from_i128(*d as i128, *n as i128),
            Repr::Big(b) => BigRat::from_big(b.recip()),
        }
    }

    fn from_i64(n: i64) -> Self {
        BigRat(Repr::Small(n, 1))
    }

    fn from_bigint(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => BigRat(Repr::Small(v, 1)),
            None => BigRat(Repr::Big(Box::new(BigRational::from_integer(n.clone())))),
        }
    }

    fn root_of_unity(order: u32, exp: u32) -> Option<Self> {
        match order {
            1 => Some(Self::one()),
            2 => Some(if exp % 2 == 0 {
                Self::one()
            } else {
                Self::from_i64(-1)
            }),
            _ => None,
        }
    }

    fn is_pm_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1) | Repr::Small(-1, 1))
    }

    fn sub_mul_assign(&mut self, f: &Self, x: &Self) {
        if let (Repr::Small(sn, sd), Repr::Small(fn_, fd), Repr::Small(xn, xd)) =
            (&self.0, &f.0, &x.0)
        {
            // self - f*x = (sn*(fd*xd') - fn*xn'*sd) / (sd*fd*xd') after
            // reducing the product f*x first so intermediates stay small.
            let pn = *fn_ as i128 * *xn as i128;
            let pd = *fd as i128 * *xd as i128;
            let g = pn.gcd(&pd);
            let (pn, pd) = if g > 1 { (pn / g, pd / g) } else { (pn, pd) };
            if let (Ok(pn), Ok(pd)) = (i64::try_from(pn), i64::try_from(pd)) {
                let num = *sn as i128 * pd as i128 - pn as i128 * *sd as i128;
                let den = *sd as i128 * pd as i128;
                *self = BigRat::from_i128(num, den);
                return;
            }
        }
        *self = self.sub(&f.mul(x));
    }
}

impl fmt::Display for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for BigRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_int = |t: &str| {
            BigInt::from_str(t.trim())
                .map_err(|_| Error::InvalidParameter(format!("bad rational: {s:?}")))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let num = parse_int(n)?;
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(Error::InvalidParameter(format!("bad rational: {s:?}")));
                }
                Ok(BigRat::from_big(BigRational::new(num, den)))
            }
            None => Ok(BigRat::from_bigint(&parse_int(s)?)),
        }
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $ty:ty, $delegate:ident) => {
        impl std::ops::$trait for &$ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                Field::$delegate(self, rhs)
            }
        }
        impl std::ops::$trait for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                Field::$delegate(&self, &rhs)
            }
        }
    };
}

impl_binop!(Add, add, BigRat, add);
impl_binop!(Sub, sub, BigRat, sub);
impl_binop!(Mul, mul, BigRat, mul);
impl_binop!(Add, add, CycloNum, add);
impl_binop!(Sub, sub, CycloNum, sub);
impl_binop!(Mul, mul, CycloNum, mul);

// ---------------------------------------------------------------------------
// CycloNum
// ---------------------------------------------------------------------------

/// An element of Q(zeta_m), stored as a polynomial in zeta_m of degree
/// < phi(m) (coefficients ascending). Elements of order <= 2 are plain
/// rationals and embed into any other order; two distinct orders >= 3 do not
/// mix and panic on arithmetic.
#[derive(Clone, Debug)]
pub struct CycloNum {
    order: u32,
    coeffs: Vec<BigRat>,
}

impl CycloNum {
    pub fn from_rat(r: BigRat) -> Self {
        CycloNum {
            order: 1,
            coeffs: vec![r],
        }
    }

    /// zeta_m^exp as an element of Q(zeta_m).
    pub fn zeta(order: u32, exp: u32) -> Self {
        assert!(order >= 1);
        let e = exp % order;
        if order <= 2 {
            return Self::from_rat(BigRat::from_i64(if order == 2 && e == 1 { -1 } else { 1 }));
        }
        let phi = euler_phi(order as u64) as usize;
        let mut coeffs = vec![BigRat::zero(); order as usize];
        coeffs[e as usize] = BigRat::one();
        let coeffs = reduce_mod_cyclotomic(coeffs, order, phi);
        CycloNum { order, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    /// The element as a rational if it lies in Q.
    pub fn as_rat(&self) -> Option<&BigRat> {
        if self.coeffs[1..].iter().all(Field::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Re-express a root of unity in Q(zeta_target); `None` when the value
    /// is not a power of zeta_target.
    pub fn rebase_root(&self, target: u32) -> Option<Self> {
        for e in 0..target {
            if *self == Self::zeta(target, e) {
                return Some(Self::zeta(target, e));
            }
        }
        None
    }

    // Align two operands onto one order; panics on genuinely mixed orders.
    fn aligned(&self, rhs: &Self) -> (Self, Self) {
        if self.order == rhs.order {
            (self.clone(), rhs.clone())
        } else if self.order <= 2 {
            (self.embed(rhs.order), rhs.clone())
        } else if rhs.order <= 2 {
            (self.clone(), rhs.embed(self.order))
        } else {
            panic!(
                "mixed cyclotomic orders {} and {}; no implicit order-lifting",
                self.order, rhs.order
            );
        }
    }

    fn embed(&self, order: u32) -> Self {
        debug_assert!(self.order <= 2);
        let phi = if order <= 2 {
            1
        } else {
            euler_phi(order as u64) as usize
        };
        let mut coeffs = vec![BigRat::zero(); phi];
        coeffs[0] = self.coeffs[0].clone();
        CycloNum { order, coeffs }
    }
}

// Reduce a coefficient vector (any length) modulo Phi_order; returns a
// vector of exactly phi coefficients.
fn reduce_mod_cyclotomic(mut coeffs: Vec<BigRat>, order: u32, phi: usize) -> Vec<BigRat> {
    let phi_poly = cyclotomic_poly(order);
    debug_assert_eq!(phi_poly.len() - 1, phi);
    let modulus: Vec<BigRat> = phi_poly.iter().map(|c| BigRat::from_bigint(c)).collect();
    while coeffs.len() > phi {
        let lead = coeffs.pop().unwrap();
        if !lead.is_zero() {
            let k = coeffs.len() - phi;
            for (j, m) in modulus[..phi].iter().enumerate() {
                let mut c = std::mem::replace(&mut coeffs[k + j], BigRat::zero());
                c.sub_mul_assign(&lead, m);
                coeffs[k + j] = c;
            }
        }
    }
    coeffs.resize(phi, BigRat::zero());
    coeffs
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        match (self.as_rat(), other.as_rat()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl Field for CycloNum {
    fn zero() -> Self {
        Self::from_rat(BigRat::zero())
    }

    fn one() -> Self {
        Self::from_rat(BigRat::one())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_zero)
    }

    fn add(&self, rhs: &Self) -> Self {
        let (mut a, b) = self.aligned(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            x.add_assign(y);
        }
        a
    }

    fn sub(&self, rhs: &Self) -> Self {
        let (mut a, b) = self.aligned(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x = x.sub(y);
        }
        a
    }

    fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = self.aligned(rhs);
        if a.order <= 2 {
            return Self::from_rat(a.coeffs[0].mul(&b.coeffs[0]));
        }
        let phi = a.coeffs.len();
        let mut prod = vec![BigRat::zero(); 2 * phi - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j].add_assign(&x.mul(y));
                }
            }
        }
        let coeffs = reduce_mod_cyclotomic(prod, a.order, phi);
        CycloNum {
            order: a.order,
            coeffs,
        }
    }

    fn neg(&self) -> Self {
        CycloNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(Field::neg).collect(),
        }
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inversion of zero");
        if self.order <= 2 {
            return Self::from_rat(self.coeffs[0].inv());
        }
        // Extended Euclid in Q[x] modulo Phi_order.
        let modulus: Vec<BigRat> = cyclotomic_poly(self.order)
            .iter()
            .map(|c| BigRat::from_bigint(c))
            .collect();
        let inv = poly_mod_inverse(&self.coeffs, &modulus);
        let phi = self.coeffs.len();
        CycloNum {
            order: self.order,
            coeffs: reduce_mod_cyclotomic(inv, self.order, phi),
        }
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rat(BigRat::from_i64(n))
    }

    fn from_bigint(n: &BigInt) -> Self {
        Self::from_rat(BigRat::from_bigint(n))
    }

    fn root_of_unity(order: u32, exp: u32) -> Option<Self> {
        Some(Self::zeta(order, exp))
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rat() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "z")?,
                1 => write!(f, "{c}*z")?,
                _ if c.is_one() => write!(f, "z^{i}")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
        }
        Ok(())
    }
}

// --- rational polynomial helpers (dense, ascending coefficients) ----------

fn poly_trim(p: &mut Vec<BigRat>) {
    while p.len() > 1 && p.last().is_some_and(Field::is_zero) {
        p.pop();
    }
}

fn poly_rem(a: &[BigRat], b: &[BigRat]) -> Vec<BigRat> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].inv();
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let k = r.len() - 1 - db;
        let f = r.last().unwrap().mul(&lead_inv);
        for (j, bj) in b.iter().enumerate() {
            let mut c = std::mem::replace(&mut r[k + j], BigRat::zero());
            c.sub_mul_assign(&f, bj);
            r[k + j] = c;
        }
        poly_trim(&mut r);
        if r.iter().all(Field::is_zero) {
            return vec![BigRat::zero()];
        }
    }
    r
}

fn poly_quot(a: &[BigRat], b: &[BigRat]) -> Vec<BigRat> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return vec![BigRat::zero()];
    }
    let lead_inv = b[db].inv();
    let mut q = vec![BigRat::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let f = r[k + db].mul(&lead_inv);
        if !f.is_zero() {
            q[k] = f.clone();
            for (j, bj) in b.iter().enumerate() {
                let mut c = std::mem::replace(&mut r[k + j], BigRat::zero());
                c.sub_mul_assign(&f, bj);
                r[k + j] = c;
            }
        }
    }
    q
}

fn poly_mul(a: &[BigRat], b: &[BigRat]) -> Vec<BigRat> {
    let mut out = vec![BigRat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j].add_assign(&x.mul(y));
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRat], b: &[BigRat]) -> Vec<BigRat> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] = x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        out[i] = out[i].sub(y);
    }
    poly_trim(&mut out);
    out
}

// Inverse of `a` modulo `m` in Q[x], via the extended Euclidean algorithm.
// Panics if gcd(a, m) is not constant, which cannot happen for a nonzero
// element modulo an irreducible cyclotomic polynomial.
fn poly_mod_inverse(a: &[BigRat], m: &[BigRat]) -> Vec<BigRat> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut t0 = vec![BigRat::zero()];
    let mut t1 = vec![BigRat::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let q = poly_quot(&r0, &r1);
        let r2 = poly_rem(&r0, &r1);
        let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    assert!(r0.len() == 1, "element not invertible modulo Phi_m");
    let scale = r0[0].inv();
    t0.iter().map(|c| c.mul(&scale)).collect()
}

// ---------------------------------------------------------------------------
// Mat2Z
// ---------------------------------------------------------------------------

/// A 2x2 integer matrix `(a b; c d)`. No determinant constraint is imposed
/// here; call sites require det 1 (coset lifts), det n (Hecke sets) or
/// det -1 (the reflection) as needed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2Z {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2Z {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2Z {
            a: BigInt::from(a),
            b: BigInt::from(b),
            c: BigInt::from(c),
            d: BigInt::from(d),
        }
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    /// S = (0 -1; 1 0), the order-4 rotation.
    pub fn s() -> Self {
        Self::new(0, -1, 1, 0)
    }

    /// Q = (0 -1; 1 1), of order 6.
    pub fn q() -> Self {
        Self::new(0, -1, 1, 1)
    }

    /// The reflection (-1 0; 0 1).
    pub fn eps() -> Self {
        Self::new(-1, 0, 0, 1)
    }

    /// The translation (1 1; 0 1).
    pub fn t() -> Self {
        Self::new(1, 1, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Mat2Z {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    /// Inverse of a matrix with determinant +-1.
    pub fn inverse_unimodular(&self) -> Self {
        let det = self.det();
        assert!(
            det.abs().is_one(),
            "inverse_unimodular needs determinant +-1"
        );
        let m = Mat2Z {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        };
        if det.is_one() {
            m
        } else {
            m.neg()
        }
    }

    pub fn neg(&self) -> Self {
        Mat2Z {
            a: -self.a.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: -self.d.clone(),
        }
    }

    /// Bottom row reduced into `0..modulus`.
    pub fn bottom_row_mod(&self, modulus: u64) -> (u64, u64) {
        (mod_to_u64(&self.c, modulus), mod_to_u64(&self.d, modulus))
    }
}

impl fmt::Debug for Mat2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

/// `x mod m` as a value in `0..m`.
pub fn mod_to_u64(x: &BigInt, m: u64) -> u64 {
    let m_big = BigInt::from(m);
    let mut r = x % &m_big;
    if r.sign() == num_bigint::Sign::Minus {
        r += &m_big;
    }
    r.to_u64().expect("reduced residue fits u64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn xgcd_examples() {
        assert_eq!(xgcd(5, 2).unwrap(), (1, 1, -2));
        assert_eq!(xgcd(1, 0).unwrap(), (1, 1, 0));
        assert_eq!(xgcd(12, 8).unwrap(), (4, 1, -1));
        assert!(matches!(xgcd(0, 0), Err(Error::GcdUndefined)));
    }

    #[test]
    fn cyclotomic_poly_small() {
        let as_i64 = |v: Vec<BigInt>| -> Vec<i64> { v.iter().map(|c| c.to_i64().unwrap()).collect() };
        assert_eq!(as_i64(cyclotomic_poly(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic_poly(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(cyclotomic_poly(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn cyclotomic_product_identity() {
        // prod_{d | m} Phi_d = x^m - 1 for m <= 24.
        for m in 1u32..=24 {
            let mut prod = vec![BigInt::one()];
            for d in 1..=m {
                if m % d == 0 {
                    let phi_d = cyclotomic_poly(d);
                    let mut out = vec![BigInt::zero(); prod.len() + phi_d.len() - 1];
                    for (i, x) in prod.iter().enumerate() {
                        for (j, y) in phi_d.iter().enumerate() {
                            out[i + j] += x * y;
                        }
                    }
                    prod = out;
                }
            }
            let mut expect = vec![BigInt::zero(); m as usize + 1];
            expect[0] = BigInt::from(-1);
            expect[m as usize] = BigInt::one();
            assert_eq!(prod, expect, "m = {m}");
        }
    }

    #[test]
    fn cyclo_mul_and_inv() {
        // zeta_4^2 = -1
        let i = CycloNum::zeta(4, 1);
        assert_eq!(i.mul(&i), CycloNum::from_i64(-1));
        // inv(zeta_m) = zeta_m^{m-1}
        for m in [3u32, 4, 5, 12] {
            let z = CycloNum::zeta(m, 1);
            assert_eq!(z.inv(), CycloNum::zeta(m, m - 1), "m = {m}");
            assert_eq!(z.mul(&z.inv()), CycloNum::one());
        }
        // (1 + zeta_3)(1 + zeta_3^2) = 1
        let a = CycloNum::one().add(&CycloNum::zeta(3, 1));
        let b = CycloNum::one().add(&CycloNum::zeta(3, 2));
        assert_eq!(a.mul(&b), CycloNum::one());
    }

    #[test]
    #[should_panic(expected = "mixed cyclotomic orders")]
    fn cyclo_mixed_orders_panic() {
        let _ = CycloNum::zeta(3, 1).mul(&CycloNum::zeta(4, 1));
    }

    #[test]
    #[should_panic(expected = "inversion of zero")]
    fn cyclo_inv_zero_panics() {
        let _ = CycloNum::zero().inv();
    }

    #[test]
    fn named_matrix_constants() {
        let s = Mat2Z::s();
        let q = Mat2Z::q();
        let eps = Mat2Z::eps();
        let neg_i = Mat2Z::identity().neg();
        assert_eq!(s.mul(&s), neg_i);
        assert_eq!(q.mul(&q).mul(&q), neg_i);
        assert_eq!(eps.mul(&eps), Mat2Z::identity());
        assert!(Mat2Z::t().det().is_one());
    }

    #[test]
    fn bigrat_parse_display_roundtrip() {
        for s in ["0", "5", "-3", "7/3", "-22/7"] {
            let r: BigRat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("1/0".parse::<BigRat>().is_err());
        assert!("x".parse::<BigRat>().is_err());
    }

    #[test]
    fn bigrat_overflow_spills_to_big() {
        let big = BigRat::from_i64(i64::MAX);
        let sq = big.mul(&big);
        assert_eq!(sq.to_big(), {
            let b = BigRational::from_integer(BigInt::from(i64::MAX));
            &b * &b
        });
        // and demotes back down
        let one = sq.mul(&sq.inv());
        assert!(one.is_one());
    }

    fn small_rat() -> impl Strategy<Value = BigRat> {
        (-50i64..=50, 1i64..=20).prop_map(|(n, d)| BigRat::new(n, d))
    }

    proptest! {
        #[test]
        fn bigrat_field_laws(a in small_rat(), b in small_rat(), c in small_rat()) {
            // (a/b)*(b/a) = 1 for nonzero a, b
            if !a.is_zero() && !b.is_zero() {
                let q = a.mul(&b.inv());
                let r = b.mul(&a.inv());
                prop_assert_eq!(q.mul(&r), BigRat::one());
            }
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn bigrat_matches_bigrational_reference(a in small_rat(), b in small_rat()) {
            // oracle: the same operations through num_rational directly
            let (ab, bb) = (a.to_big(), b.to_big());
            prop_assert_eq!(a.add(&b).to_big(), &ab + &bb);
            prop_assert_eq!(a.sub(&b).to_big(), &ab - &bb);
            prop_assert_eq!(a.mul(&b).to_big(), &ab * &bb);
            let mut fused = a.clone();
            fused.sub_mul_assign(&b, &a);
            prop_assert_eq!(fused.to_big(), &ab - &bb * &ab);
        }

        #[test]
        fn cyclo_inverse_roundtrip(
            m in prop::sample::select(vec![3u32, 4, 5, 12]),
            coeffs in prop::collection::vec(-9i64..=9, 8),
        ) {
            let phi = euler_phi(m as u64) as usize;
            let mut z = CycloNum::zero();
            let mut nonzero = false;
            for (e, &c) in coeffs.iter().take(phi).enumerate() {
                if c != 0 {
                    nonzero = true;
                    let term = CycloNum::zeta(m, e as u32).mul(&CycloNum::from_i64(c));
                    z = z.add(&term);
                }
            }
            prop_assume!(nonzero && !z.is_zero());
            prop_assert_eq!(z.mul(&z.inv()), CycloNum::one());
        }
    }
}
