//! Exact multivariate polynomials over a [`Scalar`] field.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, so the canonical
//! form is unique and iteration order is deterministic. No zero coefficient
//! is ever stored: `f - f` normalizes to the empty map.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: FieldSpec,
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MultiPoly {
    pub fn zero(field: FieldSpec, vars: Vec<String>) -> Self {
        MultiPoly {
            field,
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldSpec, vars: Vec<String>, value: Scalar) -> Self {
        let mut p = MultiPoly::zero(field, vars);
        if !value.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], value);
        }
        p
    }

    /// The monomial `x_index` with coefficient 1.
    pub fn var(field: FieldSpec, vars: Vec<String>, index: usize) -> Self {
        assert!(index < vars.len(), "variable index out of range");
        let mut p = MultiPoly::zero(field, vars);
        let mut exp = vec![0; p.vars.len()];
        exp[index] = 1;
        p.terms.insert(exp, p.field.one());
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<(), Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.vars != other.vars {
            return Err(Error::VariableMismatch);
        }
        Ok(())
    }

    fn insert_term(&mut self, exp: Vec<u32>, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly, Error> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.insert_term(exp.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly, Error> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly, Error> {
        self.check_compatible(other)?;
        let mut out = MultiPoly::zero(self.field, self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_term(exp, ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(self.field, self.vars.clone());
        for (exp, c) in &self.terms {
            out.insert_term(exp.clone(), c.mul(s));
        }
        out
    }

    /// Evaluates at a point given positionally (one scalar per variable).
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.vars.len(), "evaluation point has wrong arity");
        let mut acc = self.field.zero();
        for (exp, c) in &self.terms {
            let mut term = c.clone();
            for (e, v) in exp.iter().zip(point) {
                for _ in 0..*e {
                    term = term.mul(v);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Evaluates at a point given by variable name. Every variable that
    /// occurs in a term must be assigned; unused list variables may be
    /// omitted.
    pub fn eval_map(&self, point: &BTreeMap<String, Scalar>) -> Result<Scalar, Error> {
        let occurs: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|exp| exp[i] > 0))
            .collect();
        let values: Vec<Scalar> = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, name)| match point.get(name) {
                Some(v) => Ok(v.clone()),
                None if !occurs[i] => Ok(self.field.zero()),
                None => Err(Error::UnassignedVariable(name.clone())),
            })
            .collect::<Result<_, _>>()?;
        Ok(self.eval(&values))
    }

    /// Exact partial derivative with respect to `vars[index]`.
    pub fn derivative(&self, index: usize) -> MultiPoly {
        assert!(index < self.vars.len(), "variable index out of range");
        let mut out = MultiPoly::zero(self.field, self.vars.clone());
        for (exp, c) in &self.terms {
            let e = exp[index];
            if e == 0 {
                continue;
            }
            let mut dexp = exp.clone();
            dexp[index] = e - 1;
            out.insert_term(dexp, c.mul(&self.field.from_i64(i64::from(e))));
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|exp| exp.iter().sum())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Leading term (largest exponent vector) first.
        for (i, (exp, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = exp
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        self.vars[v].clone()
                    } else {
                        format!("{}^{}", self.vars[v], e)
                    }
                })
                .collect();
            let coeff = c.to_string();
            let (sign, mag) = match coeff.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", coeff),
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    field: FieldSpec,
    vars: Vec<String>,
    terms: Vec<(Vec<u32>, String)>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = PolyRepr {
            field: self.field,
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.to_string()))
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut p = MultiPoly::zero(repr.field, repr.vars);
        let nvars = p.vars.len();
        for (exp, coeff) in repr.terms {
            if exp.len() != nvars {
                return Err(D::Error::custom("exponent vector has wrong length"));
            }
            let c = repr
                .field
                .parse(&coeff)
                .map_err(|e| D::Error::custom(e.to_string()))?;
            p.insert_term(exp, c);
        }
        Ok(p)
    }
}
