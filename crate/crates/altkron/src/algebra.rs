//! Finite-dimensional algebras presented by structure constants, with the
//! subspace machinery built on them: centralizers, nucleus and centers,
//! associator spans, ideal closures, and quotients.
//!
//! An [`AlgebraTable`] is immutable after construction and every operation
//! is a pure function, so sweeps over basis tuples can be partitioned across
//! threads freely.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::{kernel_basis, zero_row, Row, Subspace};
use crate::rng::SplitMix64;
use crate::scalar::{FieldSpec, Scalar};

/// Dense coefficient vector relative to an algebra's basis.
pub type Element = Vec<Scalar>;

/// Sorted `(basis index, nonzero coefficient)` pairs.
pub type SparsePairs = Vec<(usize, Scalar)>;

pub fn to_sparse(x: &[Scalar]) -> SparsePairs {
    x.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn to_dense(field: &FieldSpec, dim: usize, pairs: &[(usize, Scalar)]) -> Element {
    let mut out = vec![field.zero(); dim];
    for (i, c) in pairs {
        out[*i] = out[*i].add(c);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraTable {
    field: FieldSpec,
    dim: usize,
    basis_names: Vec<String>,
    table: Vec<Vec<SparsePairs>>,
    unit: Option<Element>,
}

impl AlgebraTable {
    /// Builds a table from dense product vectors `products[i][j]` = bᵢbⱼ.
    pub fn from_products(
        field: FieldSpec,
        basis_names: Vec<String>,
        products: Vec<Vec<Element>>,
        unit: Option<Element>,
    ) -> Result<Self, Error> {
        let dim = basis_names.len();
        if products.len() != dim || products.iter().any(|row| row.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: products.len(),
            });
        }
        let table = products
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| {
                        if p.len() != dim {
                            return Err(Error::DimensionMismatch {
                                expected: dim,
                                got: p.len(),
                            });
                        }
                        Ok(to_sparse(p))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::assemble(field, basis_names, table, unit)
    }

    /// Builds a table from sparse entries, normalizing (merging duplicate
    /// indices, dropping zeros) and validating bounds and the unit axiom.
    pub fn from_sparse(
        field: FieldSpec,
        basis_names: Vec<String>,
        table: Vec<Vec<SparsePairs>>,
        unit: Option<SparsePairs>,
    ) -> Result<Self, Error> {
        let dim = basis_names.len();
        if table.len() != dim || table.iter().any(|row| row.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: table.len(),
            });
        }
        let normalize = |pairs: &SparsePairs| -> Result<SparsePairs, Error> {
            for (i, _) in pairs {
                if *i >= dim {
                    return Err(Error::IndexOutOfRange { index: *i, dim });
                }
            }
            Ok(to_sparse(&to_dense(&field, dim, pairs)))
        };
        let table = table
            .iter()
            .map(|row| row.iter().map(normalize).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let unit = match unit {
            Some(pairs) => Some(to_dense(&field, dim, &normalize(&pairs)?)),
            None => None,
        };
        Self::assemble(field, basis_names, table, unit)
    }

    fn assemble(
        field: FieldSpec,
        basis_names: Vec<String>,
        table: Vec<Vec<SparsePairs>>,
        unit: Option<Element>,
    ) -> Result<Self, Error> {
        let a = AlgebraTable {
            field,
            dim: basis_names.len(),
            basis_names,
            table,
            unit,
        };
        if let Some(u) = a.unit.clone() {
            for i in 0..a.dim {
                let b = a.basis_element(i);
                if a.mul(&u, &b) != b || a.mul(&b, &u) != b {
                    return Err(Error::UnitAxiom(i));
                }
            }
        }
        Ok(a)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn unit(&self) -> Option<&Element> {
        self.unit.as_ref()
    }

    pub fn unit_or_err(&self) -> Result<&Element, Error> {
        self.unit.as_ref().ok_or(Error::NoUnit)
    }

    pub fn zero_element(&self) -> Element {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        assert!(i < self.dim);
        let mut e = self.zero_element();
        e[i] = self.field.one();
        e
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparsePairs {
        &self.table[i][j]
    }

    /// True when the two tables define the same structure constants over the
    /// same field, regardless of basis names.
    pub fn same_structure(&self, other: &AlgebraTable) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.table == other.table
            && self.unit == other.unit
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        assert_eq!(x.len(), self.dim, "left factor has wrong dimension");
        assert_eq!(y.len(), self.dim, "right factor has wrong dimension");
        let mut out = self.zero_element();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.mul(yj);
                for (k, t) in &self.table[i][j] {
                    out[*k] = out[*k].add(&c.mul(t));
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        x.iter().zip(y).map(|(a, b)| a.add(b)).collect()
    }

    pub fn sub(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        x.iter().zip(y).map(|(a, b)| a.sub(b)).collect()
    }

    pub fn neg(&self, x: &[Scalar]) -> Element {
        x.iter().map(Scalar::neg).collect()
    }

    pub fn scale(&self, c: &Scalar, x: &[Scalar]) -> Element {
        x.iter().map(|a| c.mul(a)).collect()
    }

    pub fn is_zero(&self, x: &[Scalar]) -> bool {
        x.iter().all(Scalar::is_zero)
    }

    /// (x, y, z) = (xy)z - x(yz).
    pub fn associator(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Element {
        let lhs = self.mul(&self.mul(x, y), z);
        let rhs = self.mul(x, &self.mul(y, z));
        self.sub(&lhs, &rhs)
    }

    /// [x, y] = xy - yx.
    pub fn commutator(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        self.sub(&self.mul(x, y), &self.mul(y, x))
    }

    /// x ∘ y = xy + yx.
    pub fn circ(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        self.add(&self.mul(x, y), &self.mul(y, x))
    }

    pub fn random_element(&self, rng: &mut SplitMix64) -> Element {
        rng.scalar_vec(&self.field, self.dim)
    }

    /// Human-readable form "2*a - 1/2*b" in basis names.
    pub fn element_string(&self, x: &[Scalar]) -> String {
        let mut out = String::new();
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (sign, mag) = match s.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", s),
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if mag == "1" {
                out.push_str(&self.basis_names[i]);
            } else {
                out.push_str(&format!("{mag}*{}", self.basis_names[i]));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn full_subspace(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn span(&self, vectors: Vec<Element>) -> Subspace {
        Subspace::span(self.field, self.dim, vectors)
    }

    /// {x ∈ within : [x, s] = 0 for every basis vector s of S}.
    pub fn centralizer(&self, s: &Subspace, within: &Subspace) -> Subspace {
        assert_eq!(s.ambient(), self.dim);
        assert_eq!(within.ambient(), self.dim);
        let gens: Vec<&Row> = s.basis().iter().collect();
        self.solve_within(within, |x| {
            gens.iter().map(|g| self.commutator(x, g)).collect()
        })
    }

    /// N(A): x with (x,bᵢ,bⱼ) = (bᵢ,x,bⱼ) = (bᵢ,bⱼ,x) = 0 for all i,j.
    pub fn nucleus(&self) -> Subspace {
        let full = self.full_subspace();
        self.solve_within(&full, |x| {
            let mut conds = Vec::new();
            for i in 0..self.dim {
                let bi = self.basis_element(i);
                for j in 0..self.dim {
                    let bj = self.basis_element(j);
                    conds.push(self.associator(x, &bi, &bj));
                    conds.push(self.associator(&bi, x, &bj));
                    conds.push(self.associator(&bi, &bj, x));
                }
            }
            conds
        })
    }

    /// K(A): x with [x, bᵢ] = 0 for all i.
    pub fn comm_center(&self) -> Subspace {
        let full = self.full_subspace();
        self.solve_within(&full, |x| {
            (0..self.dim)
                .map(|i| self.commutator(x, &self.basis_element(i)))
                .collect()
        })
    }

    /// Z(A) = N(A) ∩ K(A).
    pub fn center(&self) -> Subspace {
        self.nucleus().intersect(&self.comm_center())
    }

    /// Solves the linear conditions `conditions(x) = 0` for x ranging over
    /// `within`. `conditions` must be linear in x.
    pub fn solve_within(
        &self,
        within: &Subspace,
        conditions: impl Fn(&Element) -> Vec<Element>,
    ) -> Subspace {
        let r = within.dim();
        if r == 0 {
            return Subspace::zero(self.field, self.dim);
        }
        // Column p of the system is conditions(w_p), stacked.
        let cols: Vec<Vec<Element>> = within
            .basis()
            .iter()
            .map(|w| conditions(w))
            .collect();
        let nconds = cols[0].len();
        let mut matrix: Vec<Row> = Vec::with_capacity(nconds * self.dim);
        for c in 0..nconds {
            for coord in 0..self.dim {
                let row: Row = cols.iter().map(|col| col[c][coord].clone()).collect();
                if row.iter().any(|v| !v.is_zero()) {
                    matrix.push(row);
                }
            }
        }
        let combos = kernel_basis(&self.field, &matrix, r);
        let vectors = combos.iter().map(|c| within.from_coords(c)).collect();
        self.span(vectors)
    }

    /// Span of (s₁, s₂, s₃) over all basis triples of the three subspaces.
    pub fn associator_subspace(&self, s1: &Subspace, s2: &Subspace, s3: &Subspace) -> Subspace {
        let mut vectors = Vec::new();
        for a in s1.basis() {
            for b in s2.basis() {
                for c in s3.basis() {
                    let v = self.associator(a, b, c);
                    if !self.is_zero(&v) {
                        vectors.push(v);
                    }
                }
            }
        }
        self.span(vectors)
    }

    /// Smallest two-sided ideal containing S: iterates S ← S + AS + SA.
    /// The dimension strictly increases until stable, so dim(A) rounds
    /// always suffice.
    pub fn ideal_closure(&self, s: &Subspace) -> Subspace {
        let mut current = s.clone();
        for _ in 0..=self.dim {
            let mut vectors: Vec<Element> = current.basis().to_vec();
            for v in current.basis() {
                for i in 0..self.dim {
                    let b = self.basis_element(i);
                    vectors.push(self.mul(&b, v));
                    vectors.push(self.mul(v, &b));
                }
            }
            let next = self.span(vectors);
            if next.dim() == current.dim() {
                return next;
            }
            current = next;
        }
        unreachable!("ideal closure failed to stabilize in dim rounds");
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| {
            (0..self.dim).all(|i| {
                let b = self.basis_element(i);
                s.contains(&self.mul(&b, v)) && s.contains(&self.mul(v, &b))
            })
        })
    }

    /// Quotient by a two-sided ideal. Returns the quotient table and the
    /// projection matrix (quotient dim x parent dim); coset representatives
    /// are the standard basis vectors at the non-pivot coordinates of I.
    pub fn quotient_algebra(&self, ideal: &Subspace) -> Result<(AlgebraTable, Vec<Row>), Error> {
        assert_eq!(ideal.ambient(), self.dim);
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let reps = ideal.complement_coords();
        let qdim = reps.len();
        // projection: reduce mod I, then read off the complement coordinates
        // (reduction zeroes every pivot coordinate).
        let project = |x: &[Scalar]| -> Element {
            let red = ideal.reduce(x);
            reps.iter().map(|&c| red[c].clone()).collect()
        };
        // Row r of the projection matrix sends x to project(x)[r].
        let mut projection: Vec<Row> = vec![zero_row(&self.field, self.dim); qdim];
        for k in 0..self.dim {
            let img = project(&self.basis_element(k));
            for (r, val) in img.iter().enumerate() {
                projection[r][k] = val.clone();
            }
        }
        let names: Vec<String> = reps.iter().map(|&c| self.basis_names[c].clone()).collect();
        let mut products = Vec::with_capacity(qdim);
        for &p in &reps {
            let mut row = Vec::with_capacity(qdim);
            for &q in &reps {
                let prod = self.mul(&self.basis_element(p), &self.basis_element(q));
                row.push(project(&prod));
            }
            products.push(row);
        }
        let unit = self.unit.as_ref().map(|u| project(u));
        let quotient = AlgebraTable::from_products(self.field, names, products, unit)?;
        Ok((quotient, projection))
    }

    pub fn verify_matrix_units(&self, e: &MatrixUnits) -> Result<bool, Error> {
        let unit = self.unit_or_err()?;
        let sum = self.add(&e.units[0], &e.units[3]);
        if &sum != unit {
            return Ok(false);
        }
        // units are ordered E11, E12, E21, E22; E_pq E_rs = δ_qr E_ps.
        let idx = |p: usize, q: usize| 2 * p + q;
        for p in 0..2 {
            for q in 0..2 {
                for r in 0..2 {
                    for s in 0..2 {
                        let prod = self.mul(&e.units[idx(p, q)], &e.units[idx(r, s)]);
                        let expected = if q == r {
                            e.units[idx(p, s)].clone()
                        } else {
                            self.zero_element()
                        };
                        if prod != expected {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.repr()).expect("algebra serialization cannot fail")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.repr()).expect("algebra serialization cannot fail")
    }

    fn repr(&self) -> AlgebraRepr {
        AlgebraRepr {
            format: 1,
            field: self.field,
            dim: self.dim,
            basis: self.basis_names.clone(),
            unit: self.unit.as_ref().map(|u| {
                to_sparse(u)
                    .into_iter()
                    .map(|(i, c)| (i, c.to_string()))
                    .collect()
            }),
            table: self
                .table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|p| p.iter().map(|(i, c)| (*i, c.to_string())).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self, Error> {
        let repr: AlgebraRepr = serde_json::from_value(value.clone())
            .map_err(|e| Error::Invalid(format!("malformed algebra file: {e}")))?;
        Self::from_repr(repr)
    }

    pub fn from_json_str(text: &str) -> Result<Self, Error> {
        let repr: AlgebraRepr = serde_json::from_str(text)
            .map_err(|e| Error::Invalid(format!("malformed algebra file: {e}")))?;
        Self::from_repr(repr)
    }

    fn from_repr(repr: AlgebraRepr) -> Result<Self, Error> {
        if repr.format != 1 {
            return Err(Error::Invalid(format!(
                "unsupported format version {}",
                repr.format
            )));
        }
        if repr.basis.len() != repr.dim {
            return Err(Error::DimensionMismatch {
                expected: repr.dim,
                got: repr.basis.len(),
            });
        }
        let parse_pairs = |pairs: &[(usize, String)]| -> Result<SparsePairs, Error> {
            pairs
                .iter()
                .map(|(i, s)| Ok((*i, repr.field.parse(s)?)))
                .collect()
        };
        let table = repr
            .table
            .iter()
            .map(|row| row.iter().map(|p| parse_pairs(p)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let unit = repr.unit.as_ref().map(|p| parse_pairs(p)).transpose()?;
        Self::from_sparse(repr.field, repr.basis, table, unit)
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraRepr {
    format: u32,
    field: FieldSpec,
    dim: usize,
    basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unit: Option<Vec<(usize, String)>>,
    table: Vec<Vec<Vec<(usize, String)>>>,
}

/// Four elements satisfying E_pq E_rs = δ_qr E_ps with E11 + E22 = 1,
/// embedding the 2x2 matrix units into a parent algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixUnits {
    /// Ordered E11, E12, E21, E22.
    pub units: [Element; 4],
}

impl MatrixUnits {
    pub fn new(e11: Element, e12: Element, e21: Element, e22: Element) -> Self {
        MatrixUnits {
            units: [e11, e12, e21, e22],
        }
    }

    pub fn e11(&self) -> &Element {
        &self.units[0]
    }

    pub fn e12(&self) -> &Element {
        &self.units[1]
    }

    pub fn e21(&self) -> &Element {
        &self.units[2]
    }

    pub fn e22(&self) -> &Element {
        &self.units[3]
    }

    /// Span of the four units.
    pub fn subspace(&self, field: FieldSpec, ambient: usize) -> Subspace {
        Subspace::span(field, ambient, self.units.to_vec())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let enc = |e: &Element| -> Vec<(usize, String)> {
            to_sparse(e).into_iter().map(|(i, c)| (i, c.to_string())).collect()
        };
        serde_json::to_value(UnitsRepr {
            format: 1,
            e11: enc(&self.units[0]),
            e12: enc(&self.units[1]),
            e21: enc(&self.units[2]),
            e22: enc(&self.units[3]),
        })
        .expect("embedding serialization cannot fail")
    }

    pub fn from_json_value(
        value: &serde_json::Value,
        field: &FieldSpec,
        dim: usize,
    ) -> Result<Self, Error> {
        let repr: UnitsRepr = serde_json::from_value(value.clone())
            .map_err(|e| Error::Invalid(format!("malformed embedding file: {e}")))?;
        if repr.format != 1 {
            return Err(Error::Invalid(format!(
                "unsupported format version {}",
                repr.format
            )));
        }
        let dec = |pairs: &[(usize, String)]| -> Result<Element, Error> {
            let mut out = vec![field.zero(); dim];
            for (i, s) in pairs {
                if *i >= dim {
                    return Err(Error::IndexOutOfRange { index: *i, dim });
                }
                out[*i] = out[*i].add(&field.parse(s)?);
            }
            Ok(out)
        };
        Ok(MatrixUnits {
            units: [
                dec(&repr.e11)?,
                dec(&repr.e12)?,
                dec(&repr.e21)?,
                dec(&repr.e22)?,
            ],
        })
    }
}

/// Certifies that the matrix `l` is an algebra isomorphism from `a` to `bt`:
/// invertible, multiplicative on every basis pair, and unit-preserving.
/// `l` is row-major, so image coordinates are `l` times source coordinates.
pub fn iso_check(a: &AlgebraTable, bt: &AlgebraTable, l: &[Row]) -> Result<bool, Error> {
    if a.field() != bt.field() {
        return Err(Error::FieldMismatch(a.field(), bt.field()));
    }
    if a.dim() != bt.dim() || l.len() != a.dim() || l.iter().any(|row| row.len() != a.dim()) {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: l.len(),
        });
    }
    let field = a.field();
    if crate::linalg::invert(&field, l).is_none() {
        return Ok(false);
    }
    let image = |x: &[Scalar]| crate::linalg::mat_vec(&field, l, x);
    if &image(a.unit_or_err()?) != bt.unit_or_err()? {
        return Ok(false);
    }
    for i in 0..a.dim() {
        let li = image(&a.basis_element(i));
        for j in 0..a.dim() {
            let lj = image(&a.basis_element(j));
            if image(&a.mul(&a.basis_element(i), &a.basis_element(j))) != bt.mul(&li, &lj) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Serialize, Deserialize)]
struct UnitsRepr {
    format: u32,
    #[serde(rename = "E11")]
    e11: Vec<(usize, String)>,
    #[serde(rename = "E12")]
    e12: Vec<(usize, String)>,
    #[serde(rename = "E21")]
    e21: Vec<(usize, String)>,
    #[serde(rename = "E22")]
    e22: Vec<(usize, String)>,
}
