//! Exact field arithmetic: arbitrary-precision rationals and prime fields.
//!
//! Every value in the crate is built from [`Scalar`]s. No floating point is
//! used anywhere; all checks downstream are exact identities, so the scalars
//! must be exact too. A scalar carries its field with it (the modulus for a
//! prime field), and mixing scalars from different fields is a programming
//! error that panics. Public entry points (file loaders, polynomial
//! arithmetic) validate field agreement up front and return errors instead.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The ground field: the rationals or a prime field of odd or even order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Rational,
    Prime { p: u64 },
}

impl FieldSpec {
    pub fn rational() -> Self {
        FieldSpec::Rational
    }

    /// A prime field `F_p`. Fails if `p` is not prime.
    pub fn prime(p: u64) -> Result<Self, Error> {
        if is_prime(p) {
            Ok(FieldSpec::Prime { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime { p } => Scalar::Prime { residue: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::one()),
            FieldSpec::Prime { p } => Scalar::Prime {
                residue: 1 % p,
                p: *p,
            },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime { p } => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Prime { residue: r, p: *p }
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime { p } => *p,
        }
    }

    /// Parses the string form produced by [`Scalar::to_string`]: `"3"`,
    /// `"-2/5"` for rationals, a decimal residue for prime fields. Negative
    /// and unreduced inputs are accepted and normalized.
    pub fn parse(&self, s: &str) -> Result<Scalar, Error> {
        let s = s.trim();
        match self {
            FieldSpec::Rational => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let num = BigInt::from_str(num)
                    .map_err(|_| Error::BadScalar(s.to_string()))?;
                let den = BigInt::from_str(den)
                    .map_err(|_| Error::BadScalar(s.to_string()))?;
                if den.is_zero() {
                    return Err(Error::BadScalar(s.to_string()));
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            FieldSpec::Prime { p } => {
                if s.contains('/') {
                    // Allow fractions over F_p as num * den^-1.
                    let (n, d) = s.split_once('/').unwrap();
                    let num = self.parse(n)?;
                    let den = self.parse(d)?;
                    let inv = den.inv().ok_or_else(|| Error::BadScalar(s.to_string()))?;
                    return Ok(num.mul(&inv));
                }
                let n =
                    i128::from_str(s).map_err(|_| Error::BadScalar(s.to_string()))?;
                let r = n.rem_euclid(*p as i128) as u64;
                Ok(Scalar::Prime { residue: r, p: *p })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

/// An exact field element: a reduced fraction or a residue in `[0, p)`.
///
/// Rationals are kept in lowest terms with positive denominator (maintained
/// by `BigRational`); residues are reduced mod `p` at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { residue: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Prime { p, .. } => FieldSpec::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { residue, p } => *residue == 1 % p,
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { residue: a, p }, Scalar::Prime { residue: b, p: q }) => {
                assert_eq!(p, q, "scalar field mismatch");
                Scalar::Prime {
                    residue: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { residue, p } => Scalar::Prime {
                residue: if *residue == 0 { 0 } else { p - residue },
                p: *p,
            },
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { residue: a, p }, Scalar::Prime { residue: b, p: q }) => {
                assert_eq!(p, q, "scalar field mismatch");
                Scalar::Prime {
                    residue: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(a.recip()))
                }
            }
            Scalar::Prime { residue, p } => {
                if *residue == 0 {
                    None
                } else {
                    Some(Scalar::Prime {
                        residue: mod_inverse(*residue, *p),
                        p: *p,
                    })
                }
            }
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inv().map(|i| self.mul(&i))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { residue, .. } => write!(f, "{residue}"),
        }
    }
}

/// Extended-Euclid inverse of `a` mod prime `p`; `a` must be nonzero mod `p`.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "inverse of non-unit mod {p}");
    old_s.rem_euclid(p as i128) as u64
}

/// Deterministic Miller-Rabin, exact for all u64 inputs with this witness set.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}
