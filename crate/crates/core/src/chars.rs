//! Dirichlet characters on (Z/NZ)* as lookup tables.
//!
//! A character is stored as a full length-N table indexed by residue, with 0
//! at non-units so evaluation never branches. Evaluation on an integer
//! matrix with lower-left entry divisible by N reads off the value at the
//! lower-right entry.

use num_integer::Integer;

use crate::arith::{mod_to_u64, Field, Mat2Z};
use crate::{Error, Result};

/// A Dirichlet character modulo N with values in the field `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletChar<F> {
    modulus: u64,
    order: u32,
    values: Vec<F>,
}

impl<F: Field> DirichletChar<F> {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Smallest m >= 1 with chi^m trivial.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// chi(residue); zero at non-units.
    pub fn value(&self, residue: u64) -> &F {
        &self.values[(residue % self.modulus) as usize]
    }

    /// chi(-1), the parity of the character.
    pub fn parity(&self) -> &F {
        self.value(self.modulus - 1 + u64::from(self.modulus == 1))
    }

    /// Evaluate on a matrix in Delta_0(N): requires c = 0 mod N and
    /// gcd(d, N) = 1, and returns chi(d).
    pub fn eval_matrix(&self, m: &Mat2Z) -> Result<F> {
        let n = self.modulus;
        if mod_to_u64(&m.c, n) != 0 {
            return Err(Error::NotEvaluable(format!(
                "lower-left entry {} not divisible by {n}",
                m.c
            )));
        }
        let d = mod_to_u64(&m.d, n);
        if d.gcd(&n) != 1 && n != 1 {
            return Err(Error::NotEvaluable(format!(
                "gcd({d}, {n}) > 1 in lower-right entry"
            )));
        }
        Ok(self.value(d).clone())
    }

    fn from_values(modulus: u64, values: Vec<F>) -> Result<Self> {
        let order = character_order(modulus, &values)?;
        Ok(DirichletChar {
            modulus,
            order,
            values,
        })
    }
}

/// The trivial character mod N: 1 at units, 0 elsewhere.
pub fn char_trivial<F: Field>(modulus: u64) -> DirichletChar<F> {
    assert!(modulus >= 1);
    let values = (0..modulus)
        .map(|d| {
            if d.gcd(&modulus) == 1 || modulus == 1 {
                F::one()
            } else {
                F::zero()
            }
        })
        .collect();
    DirichletChar {
        modulus,
        order: 1,
        values,
    }
}

/// The quadratic character d -> (d|N) given by the Kronecker symbol.
///
/// For moduli where the symbol restricted to 0..N is not multiplicative
/// (e.g. some N = 2 mod 4) this is not a character mod N and an error is
/// returned.
pub fn char_kronecker<F: Field>(modulus: u64) -> Result<DirichletChar<F>> {
    assert!(modulus >= 1);
    let values = (0..modulus)
        .map(|d| F::from_i64(kronecker_symbol(d as i64, modulus as i64)))
        .collect();
    DirichletChar::from_values(modulus, values)
}

/// Build a character from values on generators of (Z/NZ)*.
///
/// Each pair `(g, e)` assigns chi(g) = zeta_m^e where m is the lcm of the
/// multiplicative orders of the supplied generators. The table is completed
/// by multiplicativity; inconsistent assignments or generators that do not
/// span the unit group are rejected.
pub fn char_from_unit_values<F: Field>(modulus: u64, gens: &[(u64, u64)]) -> Result<DirichletChar<F>> {
    assert!(modulus >= 1);
    if modulus == 1 || gens.is_empty() {
        if gens.is_empty() && modulus > 2 && euler_phi_here(modulus) > 1 {
            return Err(Error::NotACharacter(
                "no generators supplied for a nontrivial unit group".into(),
            ));
        }
        return Ok(char_trivial(modulus));
    }

    let mut m = 1u64;
    for &(g, _) in gens {
        let g = g % modulus;
        if g.gcd(&modulus) != 1 {
            return Err(Error::NotACharacter(format!("generator {g} is not a unit mod {modulus}")));
        }
        m = m.lcm(&multiplicative_order(g, modulus));
    }
    let m_u32 = u32::try_from(m).expect("character order fits u32");

    let mut table: Vec<Option<F>> = vec![None; modulus as usize];
    table[1 % modulus as usize] = Some(F::one());
    let assignments: Vec<(u64, F)> = gens
        .iter()
        .map(|&(g, e)| {
            let g = g % modulus;
            let ord = multiplicative_order(g, modulus);
            // chi(g)^ord = 1 forces m | e * ord.
            if (e % m) * ord % m != 0 {
                return Err(Error::NotACharacter(format!(
                    "exponent {e} at generator {g} (order {ord}) is inconsistent"
                )));
            }
            let v = F::root_of_unity(m_u32, (e % m) as u32).ok_or_else(|| {
                Error::NotACharacter(format!(
                    "values of order {m} are not representable in this coefficient field"
                ))
            })?;
            Ok((g, v))
        })
        .collect::<Result<_>>()?;

    // Close the table under multiplication by the generators.
    let mut changed = true;
    while changed {
        changed = false;
        for d in 0..modulus as usize {
            let Some(v) = table[d].clone() else { continue };
            for (g, vg) in &assignments {
                let nd = (d as u64 * g % modulus) as usize;
                let nv = v.mul(vg);
                match &table[nd] {
                    Some(old) if *old != nv => {
                        return Err(Error::NotACharacter(format!(
                            "conflicting values at residue {nd}"
                        )));
                    }
                    Some(_) => {}
                    None => {
                        table[nd] = Some(nv);
                        changed = true;
                    }
                }
            }
        }
    }

    let values: Vec<F> = (0..modulus)
        .map(|d| {
            if d.gcd(&modulus) == 1 {
                table[d as usize].clone().ok_or_else(|| {
                    Error::NotACharacter(format!(
                        "generators do not span (Z/{modulus}Z)*: residue {d} unreached"
                    ))
                })
            } else {
                Ok(F::zero())
            }
        })
        .collect::<Result<_>>()?;
    DirichletChar::from_values(modulus, values)
}

// Verifies multiplicativity and computes the order of the character.
fn character_order<F: Field>(modulus: u64, values: &[F]) -> Result<u32> {
    let units: Vec<u64> = (0..modulus)
        .filter(|d| d.gcd(&modulus) == 1 || modulus == 1)
        .collect();
    for &d in &units {
        if values[d as usize].is_zero() {
            return Err(Error::NotACharacter(format!("zero value at unit {d}")));
        }
    }
    for d in 0..modulus {
        if d.gcd(&modulus) != 1 && modulus != 1 && !values[d as usize].is_zero() {
            return Err(Error::NotACharacter(format!("nonzero value at non-unit {d}")));
        }
    }
    if !units.is_empty() && values[1 % modulus as usize] != F::one() {
        return Err(Error::NotACharacter("chi(1) != 1".into()));
    }
    for &a in &units {
        for &b in &units {
            let lhs = values[(a * b % modulus) as usize].clone();
            let rhs = values[a as usize].mul(&values[b as usize]);
            if lhs != rhs {
                return Err(Error::NotACharacter(format!(
                    "not multiplicative at ({a}, {b})"
                )));
            }
        }
    }
    // order = smallest t with all values^t = 1
    let one = F::one();
    let mut t = 1u32;
    loop {
        let all_one = units.iter().all(|&d| {
            let mut p = F::one();
            for _ in 0..t {
                p = p.mul(&values[d as usize]);
            }
            p == one
        });
        if all_one {
            return Ok(t);
        }
        t += 1;
        assert!(u64::from(t) <= euler_phi_here(modulus), "order exceeds phi(N)");
    }
}

fn euler_phi_here(m: u64) -> u64 {
    crate::arith::euler_phi(m)
}

/// Multiplicative order of a unit g modulo n.
pub fn multiplicative_order(g: u64, n: u64) -> u64 {
    assert!(g.gcd(&n) == 1);
    if n == 1 {
        return 1;
    }
    let mut x = g % n;
    let mut ord = 1;
    while x != 1 {
        x = x * g % n;
        ord += 1;
    }
    ord
}

/// The Kronecker symbol (a|n) for n >= 1.
pub fn kronecker_symbol(mut a: i64, mut n: i64) -> i64 {
    assert!(n >= 1);
    if n == 1 {
        return 1;
    }
    let mut result = 1i64;
    // (a|2) per the supplementary law; zero at even a.
    let minus_one_pow = |x: i64| if x.rem_euclid(4) == 3 { -1 } else { 1 };
    let two_symbol = |x: i64| match x.rem_euclid(8) {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => 0,
    };
    while n % 2 == 0 {
        if a % 2 == 0 {
            return 0;
        }
        result *= two_symbol(a);
        n /= 2;
    }
    if n == 1 {
        return result;
    }
    if a < 0 {
        result *= minus_one_pow(n);
        a = -a;
    }
    a %= n;
    // Jacobi symbol loop with quadratic reciprocity.
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n.rem_euclid(8), 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Parsed form of the CLI character specification.
///
/// Grammar: `trivial`, `kronecker`, or `gens:g1=e1,g2=e2,...` where each
/// `e_i` is an exponent of zeta_m and m is the lcm of the orders of the
/// given generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharSpec {
    Trivial,
    Kronecker,
    Gens(Vec<(u64, u64)>),
}

impl CharSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "trivial" => Ok(CharSpec::Trivial),
            "kronecker" => Ok(CharSpec::Kronecker),
            _ => {
                let body = s.strip_prefix("gens:").ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "bad character spec {s:?}; expected trivial, kronecker, or gens:g=e,..."
                    ))
                })?;
                let mut gens = Vec::new();
                for part in body.split(',') {
                    let (g, e) = part.split_once('=').ok_or_else(|| {
                        Error::InvalidParameter(format!("bad generator assignment {part:?}"))
                    })?;
                    let g = g.trim().parse::<u64>().map_err(|_| {
                        Error::InvalidParameter(format!("bad generator {g:?}"))
                    })?;
                    let e = e.trim().parse::<u64>().map_err(|_| {
                        Error::InvalidParameter(format!("bad exponent {e:?}"))
                    })?;
                    gens.push((g, e));
                }
                if gens.is_empty() {
                    return Err(Error::InvalidParameter("empty generator list".into()));
                }
                Ok(CharSpec::Gens(gens))
            }
        }
    }

    /// Order of the resulting character, without building the table in a
    /// specific coefficient field.
    pub fn order(&self, modulus: u64) -> Result<u32> {
        use crate::arith::CycloNum;
        Ok(self.build::<CycloNum>(modulus)?.order())
    }

    pub fn build<F: Field>(&self, modulus: u64) -> Result<DirichletChar<F>> {
        match self {
            CharSpec::Trivial => Ok(char_trivial(modulus)),
            CharSpec::Kronecker => char_kronecker(modulus),
            CharSpec::Gens(gens) => char_from_unit_values(modulus, gens),
        }
    }
}

impl std::fmt::Display for CharSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CharSpec::Trivial => write!(f, "trivial"),
            CharSpec::Kronecker => write!(f, "kronecker"),
            CharSpec::Gens(gens) => {
                write!(f, "gens:")?;
                for (i, (g, e)) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}={e}")?;
                }
                Ok(())
            }
        }
    }
}
