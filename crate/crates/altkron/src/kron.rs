//! The coordinate triple (B, V, form) and the product it induces on
//! M₂(B) ⊕ V², together with the symplectic involution and the validation
//! of the constraints the skew form must satisfy.
//!
//! Elements are written X = X_a + x(1) + y(2) with X_a a 2x2 matrix over B
//! and x, y vectors of the module V. The product is
//!
//!   XY = X_a Y_a + [[-<x,t>, -<y,t>], [<x,z>, <y,z>]]
//!        + (z,t)·X_a + (x,y)·(Y_a)*
//!
//! for Y = Y_a + z(1) + t(2), where * is the symplectic involution and a
//! pair acts on a matrix by the row-vector rule
//! (x,y)·[[a,b],[c,d]] = (a·x + c·y, b·x + d·y) through the left B-action
//! on V. The form must be antisymmetric with values in Z(B), B-bilinear,
//! and satisfy <u,v>w + <v,w>u + <w,u>v = 0; the product is then
//! alternative, and validation additionally checks the derived scalar
//! relation <u,v><w,t> + <v,w><u,t> + <w,u><v,t> = 0.

use serde::{Deserialize, Serialize};

use crate::algebra::{to_dense, to_sparse, AlgebraTable, Element, MatrixUnits};
use crate::error::Error;
use crate::linalg::{Row, Subspace};
use crate::scalar::{FieldSpec, Scalar};

/// A unital associative coefficient algebra with its center and commutator
/// ideal cached.
#[derive(Debug, Clone)]
pub struct CoeffRing {
    table: AlgebraTable,
    center: Subspace,
    comm_ideal: Subspace,
}

impl CoeffRing {
    pub fn new(table: AlgebraTable) -> Result<Self, Error> {
        table.unit_or_err()?;
        let dim = table.dim();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let v = table.associator(
                        &table.basis_element(i),
                        &table.basis_element(j),
                        &table.basis_element(k),
                    );
                    if !table.is_zero(&v) {
                        return Err(Error::NotAssociative([i, j, k]));
                    }
                }
            }
        }
        let center = table.center();
        let mut gens = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let c = table.commutator(&table.basis_element(i), &table.basis_element(j));
                if !table.is_zero(&c) {
                    gens.push(c);
                }
            }
        }
        let comm_ideal = table.ideal_closure(&table.span(gens));
        Ok(CoeffRing {
            table,
            center,
            comm_ideal,
        })
    }

    pub fn table(&self) -> &AlgebraTable {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn field(&self) -> FieldSpec {
        self.table.field()
    }

    pub fn center(&self) -> &Subspace {
        &self.center
    }

    /// The two-sided ideal generated by all commutators, [B,B]B.
    pub fn comm_ideal(&self) -> &Subspace {
        &self.comm_ideal
    }

    pub fn unit(&self) -> &Element {
        self.table.unit().expect("CoeffRing is unital by construction")
    }
}

/// A left B-module of finite dimension over the base field, with the
/// action matrix of every basis element of B. Commutators of B must act as
/// zero, making the left action a two-sided one.
#[derive(Debug, Clone)]
pub struct BimoduleV {
    dim: usize,
    /// action[m] is the dim x dim matrix of b_m; coords(b·x) = M_b coords(x).
    action: Vec<Vec<Row>>,
}

impl BimoduleV {
    pub fn new(b: &CoeffRing, dim: usize, action: Vec<Vec<Row>>) -> Result<Self, Error> {
        let field = b.field();
        if action.len() != b.dim() {
            return Err(Error::BadAction(format!(
                "expected one action matrix per coefficient basis element ({}), got {}",
                b.dim(),
                action.len()
            )));
        }
        for m in &action {
            if m.len() != dim || m.iter().any(|r| r.len() != dim) {
                return Err(Error::BadAction(format!(
                    "action matrices must be {dim}x{dim}"
                )));
            }
        }
        let v = BimoduleV { dim, action };
        // unit acts as identity
        let id_ok = (0..dim).all(|j| {
            let mut e = vec![field.zero(); dim];
            e[j] = field.one();
            v.act(&field, b.unit(), &e) == e
        });
        if !id_ok {
            return Err(Error::BadAction("unit of B does not act as identity".into()));
        }
        // multiplicativity on basis pairs: action(b_i b_j) = action(b_i) action(b_j)
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                let prod = to_dense(&field, b.dim(), b.table().basis_product(i, j));
                for col in 0..dim {
                    let mut e = vec![field.zero(); dim];
                    e[col] = field.one();
                    let rhs = v.act_basis(&field, i, &v.act_basis(&field, j, &e));
                    let lhs = v.act(&field, &prod, &e);
                    if lhs != rhs {
                        return Err(Error::BadAction(format!(
                            "action is not multiplicative on basis pair ({i},{j})"
                        )));
                    }
                }
            }
        }
        // commutators annihilate V
        for i in 0..b.dim() {
            for j in (i + 1)..b.dim() {
                let c = b
                    .table()
                    .commutator(&b.table().basis_element(i), &b.table().basis_element(j));
                if b.table().is_zero(&c) {
                    continue;
                }
                for col in 0..dim {
                    let mut e = vec![field.zero(); dim];
                    e[col] = field.one();
                    if v.act(&field, &c, &e).iter().any(|s| !s.is_zero()) {
                        return Err(Error::BadAction(format!(
                            "commutator [b{i},b{j}] does not annihilate the module"
                        )));
                    }
                }
            }
        }
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action_matrices(&self) -> &[Vec<Row>] {
        &self.action
    }

    fn act_basis(&self, field: &FieldSpec, m: usize, x: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![field.zero(); self.dim];
        for (r, row) in self.action[m].iter().enumerate() {
            for (c, entry) in row.iter().enumerate() {
                if !entry.is_zero() && !x[c].is_zero() {
                    out[r] = out[r].add(&entry.mul(&x[c]));
                }
            }
        }
        out
    }

    /// z·x for a coefficient element z (dense B-coordinates).
    pub fn act(&self, field: &FieldSpec, z: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![field.zero(); self.dim];
        for (m, zm) in z.iter().enumerate() {
            if zm.is_zero() {
                continue;
            }
            let part = self.act_basis(field, m, x);
            for (o, p) in out.iter_mut().zip(&part) {
                if !p.is_zero() {
                    *o = o.add(&zm.mul(p));
                }
            }
        }
        out
    }
}

/// Gram matrix of the skew form: entry (i,j) is the coefficient-ring
/// element <vᵢ, vⱼ>.
#[derive(Debug, Clone)]
pub struct SkewForm {
    gram: Vec<Vec<Element>>,
}

impl SkewForm {
    pub fn new(bdim: usize, vdim: usize, gram: Vec<Vec<Element>>) -> Result<Self, Error> {
        if gram.len() != vdim
            || gram
                .iter()
                .any(|row| row.len() != vdim || row.iter().any(|e| e.len() != bdim))
        {
            return Err(Error::FormInvalid(format!(
                "gram matrix must be {vdim}x{vdim} with entries of coefficient dimension {bdim}"
            )));
        }
        Ok(SkewForm { gram })
    }

    pub fn zero(field: &FieldSpec, bdim: usize, vdim: usize) -> Self {
        SkewForm {
            gram: vec![vec![vec![field.zero(); bdim]; vdim]; vdim],
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &Element {
        &self.gram[i][j]
    }

    pub fn gram(&self) -> &[Vec<Element>] {
        &self.gram
    }

    /// <u, v> for arbitrary module vectors, by bilinear expansion.
    pub fn apply(&self, b: &AlgebraTable, u: &[Scalar], v: &[Scalar]) -> Element {
        let mut out = b.zero_element();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let c = ui.mul(vj);
                for (k, g) in self.gram[i][j].iter().enumerate() {
                    if !g.is_zero() {
                        out[k] = out[k].add(&c.mul(g));
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct KronSpec {
    pub b: CoeffRing,
    pub v: BimoduleV,
    pub form: SkewForm,
}

/// 2x2 matrix over the coefficient ring, laid out [[a, b], [c, d]].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub a: Element,
    pub b: Element,
    pub c: Element,
    pub d: Element,
}

impl Mat2 {
    pub fn zero(b: &AlgebraTable) -> Self {
        Mat2 {
            a: b.zero_element(),
            b: b.zero_element(),
            c: b.zero_element(),
            d: b.zero_element(),
        }
    }

    pub fn identity(b: &AlgebraTable) -> Self {
        let unit = b.unit().expect("coefficient ring is unital").clone();
        Mat2 {
            a: unit.clone(),
            b: b.zero_element(),
            c: b.zero_element(),
            d: unit,
        }
    }

    pub fn add(&self, b: &AlgebraTable, other: &Mat2) -> Mat2 {
        Mat2 {
            a: b.add(&self.a, &other.a),
            b: b.add(&self.b, &other.b),
            c: b.add(&self.c, &other.c),
            d: b.add(&self.d, &other.d),
        }
    }

    pub fn mul(&self, b: &AlgebraTable, other: &Mat2) -> Mat2 {
        Mat2 {
            a: b.add(&b.mul(&self.a, &other.a), &b.mul(&self.b, &other.c)),
            b: b.add(&b.mul(&self.a, &other.b), &b.mul(&self.b, &other.d)),
            c: b.add(&b.mul(&self.c, &other.a), &b.mul(&self.d, &other.c)),
            d: b.add(&b.mul(&self.c, &other.b), &b.mul(&self.d, &other.d)),
        }
    }

    pub fn is_zero(&self, b: &AlgebraTable) -> bool {
        b.is_zero(&self.a) && b.is_zero(&self.b) && b.is_zero(&self.c) && b.is_zero(&self.d)
    }
}

/// Symplectic involution [[a,b],[c,d]] -> [[d,-b],[-c,a]].
pub fn star(b: &AlgebraTable, m: &Mat2) -> Mat2 {
    Mat2 {
        a: m.d.clone(),
        b: b.neg(&m.b),
        c: b.neg(&m.c),
        d: m.a.clone(),
    }
}

/// An element X_a + x(1) + y(2) of M₂(B) ⊕ V².
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KronElement {
    pub mat: Mat2,
    pub x: Vec<Scalar>,
    pub y: Vec<Scalar>,
}

impl KronElement {
    pub fn zero(spec: &KronSpec) -> Self {
        let field = spec.b.field();
        KronElement {
            mat: Mat2::zero(spec.b.table()),
            x: vec![field.zero(); spec.v.dim()],
            y: vec![field.zero(); spec.v.dim()],
        }
    }

    pub fn unit(spec: &KronSpec) -> Self {
        KronElement {
            mat: Mat2::identity(spec.b.table()),
            ..KronElement::zero(spec)
        }
    }
}

/// Right action of a pair on a matrix: (x,y)·[[a,b],[c,d]] =
/// (a·x + c·y, b·x + d·y), using the left module action entrywise.
fn pair_times_mat(
    spec: &KronSpec,
    x: &[Scalar],
    y: &[Scalar],
    m: &Mat2,
) -> (Vec<Scalar>, Vec<Scalar>) {
    let field = spec.b.field();
    let add = |u: Vec<Scalar>, w: Vec<Scalar>| -> Vec<Scalar> {
        u.iter().zip(&w).map(|(a, b)| a.add(b)).collect()
    };
    let first = add(spec.v.act(&field, &m.a, x), spec.v.act(&field, &m.c, y));
    let second = add(spec.v.act(&field, &m.b, x), spec.v.act(&field, &m.d, y));
    (first, second)
}

/// The product on M₂(B) ⊕ V².
pub fn kron_product(spec: &KronSpec, lhs: &KronElement, rhs: &KronElement) -> KronElement {
    let b = spec.b.table();
    let (x, y) = (&lhs.x, &lhs.y);
    let (z, t) = (&rhs.x, &rhs.y);
    let form = |u: &[Scalar], v: &[Scalar]| spec.form.apply(b, u, v);
    let gram_part = Mat2 {
        a: b.neg(&form(x, t)),
        b: b.neg(&form(y, t)),
        c: form(x, z),
        d: form(y, z),
    };
    let mat = lhs.mat.mul(b, &rhs.mat).add(b, &gram_part);
    let (p1, q1) = pair_times_mat(spec, z, t, &lhs.mat);
    let (p2, q2) = pair_times_mat(spec, x, y, &star(b, &rhs.mat));
    let add = |u: Vec<Scalar>, w: Vec<Scalar>| -> Vec<Scalar> {
        u.iter().zip(&w).map(|(a, b)| a.add(b)).collect()
    };
    KronElement {
        mat,
        x: add(p1, p2),
        y: add(q1, q2),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FormWitness {
    /// Which constraint failed: "diagonal", "antisymmetry", "centrality",
    /// "bilinearity_left", "bilinearity_right", "e25", "e26".
    pub check: String,
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FormReport {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<FormWitness>,
}

impl FormReport {
    fn fail(check: &str, indices: Vec<usize>) -> Self {
        FormReport {
            pass: false,
            witness: Some(FormWitness {
                check: check.to_string(),
                indices,
            }),
        }
    }
}

/// Verifies every constraint on the skew form: zero diagonal, antisymmetry,
/// values in the center of B, B-bilinearity on basis triples, the module
/// relation <u,v>w + <v,w>u + <w,u>v = 0 on basis triples, and the scalar
/// relation <u,v><w,t> + <v,w><u,t> + <w,u><v,t> = 0 on basis quadruples.
pub fn validate_form(spec: &KronSpec) -> FormReport {
    let b = spec.b.table();
    let field = spec.b.field();
    let n = spec.v.dim();
    let g = |i: usize, j: usize| spec.form.entry(i, j);
    for i in 0..n {
        if !b.is_zero(g(i, i)) {
            return FormReport::fail("diagonal", vec![i]);
        }
        for j in (i + 1)..n {
            if !b.is_zero(&b.add(g(i, j), g(j, i))) {
                return FormReport::fail("antisymmetry", vec![i, j]);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !spec.b.center().contains(g(i, j)) {
                return FormReport::fail("centrality", vec![i, j]);
            }
        }
    }
    // <b_m u, v> = b_m <u, v> and <u, b_m v> = b_m <u, v>
    for m in 0..spec.b.dim() {
        let bm = b.basis_element(m);
        for i in 0..n {
            let mut ei = vec![field.zero(); n];
            ei[i] = field.one();
            let bu = spec.v.act(&field, &bm, &ei);
            for j in 0..n {
                let mut ej = vec![field.zero(); n];
                ej[j] = field.one();
                let rhs = b.mul(&bm, g(i, j));
                if spec.form.apply(b, &bu, &ej) != rhs {
                    return FormReport::fail("bilinearity_left", vec![m, i, j]);
                }
                let bv = spec.v.act(&field, &bm, &ej);
                if spec.form.apply(b, &ei, &bv) != rhs {
                    return FormReport::fail("bilinearity_right", vec![m, i, j]);
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = vec![field.zero(); n];
                let mut add_term = |coeff: &Element, idx: usize| {
                    let mut e = vec![field.zero(); n];
                    e[idx] = field.one();
                    let part = spec.v.act(&field, coeff, &e);
                    for (a, p) in acc.iter_mut().zip(&part) {
                        *a = a.add(p);
                    }
                };
                add_term(g(i, j), k);
                add_term(g(j, k), i);
                add_term(g(k, i), j);
                if acc.iter().any(|s| !s.is_zero()) {
                    return FormReport::fail("e25", vec![i, j, k]);
                }
                for l in 0..n {
                    let sum = b.add(
                        &b.add(&b.mul(g(i, j), g(k, l)), &b.mul(g(j, k), g(i, l))),
                        &b.mul(g(k, i), g(j, l)),
                    );
                    if !b.is_zero(&sum) {
                        return FormReport::fail("e26", vec![i, j, k, l]);
                    }
                }
            }
        }
    }
    FormReport { pass: true, witness: None }
}

/// Basis layout of the generated algebra: four blocks of coefficient
/// coordinates for the matrix positions 11, 12, 21, 22 in that order, then
/// the V(1) coordinates, then the V(2) coordinates.
pub fn kron_dim(spec: &KronSpec) -> usize {
    4 * spec.b.dim() + 2 * spec.v.dim()
}

pub fn kron_to_dense(spec: &KronSpec, e: &KronElement) -> Element {
    let mut out = Vec::with_capacity(kron_dim(spec));
    out.extend(e.mat.a.iter().cloned());
    out.extend(e.mat.b.iter().cloned());
    out.extend(e.mat.c.iter().cloned());
    out.extend(e.mat.d.iter().cloned());
    out.extend(e.x.iter().cloned());
    out.extend(e.y.iter().cloned());
    out
}

pub fn dense_to_kron(spec: &KronSpec, v: &[Scalar]) -> KronElement {
    let bdim = spec.b.dim();
    let vdim = spec.v.dim();
    assert_eq!(v.len(), kron_dim(spec));
    KronElement {
        mat: Mat2 {
            a: v[0..bdim].to_vec(),
            b: v[bdim..2 * bdim].to_vec(),
            c: v[2 * bdim..3 * bdim].to_vec(),
            d: v[3 * bdim..4 * bdim].to_vec(),
        },
        x: v[4 * bdim..4 * bdim + vdim].to_vec(),
        y: v[4 * bdim + vdim..].to_vec(),
    }
}

fn basis_names(spec: &KronSpec) -> Vec<String> {
    let mut names = Vec::with_capacity(kron_dim(spec));
    for pq in ["E11", "E12", "E21", "E22"] {
        for bn in spec.b.table().basis_names() {
            names.push(format!("{pq}*{bn}"));
        }
    }
    for j in 0..spec.v.dim() {
        names.push(format!("v{}(1)", j + 1));
    }
    for j in 0..spec.v.dim() {
        names.push(format!("v{}(2)", j + 1));
    }
    names
}

/// Generates the structure-constant table of M₂(B) ⊕ V² and the canonical
/// matrix units. Refuses if the form fails validation; use
/// [`build_algebra_unchecked`] to build from an invalid form on purpose.
pub fn build_algebra(spec: &KronSpec) -> Result<(AlgebraTable, MatrixUnits), Error> {
    let report = validate_form(spec);
    if let Some(w) = report.witness {
        return Err(Error::FormInvalid(format!(
            "{} fails at {:?}",
            w.check, w.indices
        )));
    }
    build_algebra_unchecked(spec)
}

/// Generates the table without validating the form.
pub fn build_algebra_unchecked(spec: &KronSpec) -> Result<(AlgebraTable, MatrixUnits), Error> {
    let dim = kron_dim(spec);
    let field = spec.b.field();
    let basis_kron: Vec<KronElement> = (0..dim)
        .map(|i| {
            let mut v = vec![field.zero(); dim];
            v[i] = field.one();
            dense_to_kron(spec, &v)
        })
        .collect();
    let products: Vec<Vec<Element>> = basis_kron
        .iter()
        .map(|x| {
            basis_kron
                .iter()
                .map(|y| kron_to_dense(spec, &kron_product(spec, x, y)))
                .collect()
        })
        .collect();
    let unit = kron_to_dense(spec, &KronElement::unit(spec));
    let table = AlgebraTable::from_products(field, basis_names(spec), products, Some(unit))?;
    let b = spec.b.table();
    let unit_mat = |pos: usize| -> Element {
        let mut m = Mat2::zero(b);
        let u = spec.b.unit().clone();
        match pos {
            0 => m.a = u,
            1 => m.b = u,
            2 => m.c = u,
            _ => m.d = u,
        }
        kron_to_dense(
            spec,
            &KronElement {
                mat: m,
                x: vec![field.zero(); spec.v.dim()],
                y: vec![field.zero(); spec.v.dim()],
            },
        )
    };
    let units = MatrixUnits::new(unit_mat(0), unit_mat(1), unit_mat(2), unit_mat(3));
    Ok((table, units))
}

#[derive(Serialize, Deserialize)]
struct KronRepr {
    format: u32,
    #[serde(rename = "B")]
    b: serde_json::Value,
    #[serde(rename = "V")]
    v: ModuleRepr,
    form: Vec<Vec<Vec<(usize, String)>>>,
}

#[derive(Serialize, Deserialize)]
struct ModuleRepr {
    dim: usize,
    action: Vec<Vec<Vec<String>>>,
}

impl KronSpec {
    pub fn new(b: CoeffRing, v: BimoduleV, form: SkewForm) -> Self {
        KronSpec { b, v, form }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let repr = KronRepr {
            format: 1,
            b: self.b.table().to_json_value(),
            v: ModuleRepr {
                dim: self.v.dim(),
                action: self
                    .v
                    .action_matrices()
                    .iter()
                    .map(|m| {
                        m.iter()
                            .map(|row| row.iter().map(|s| s.to_string()).collect())
                            .collect()
                    })
                    .collect(),
            },
            form: self
                .form
                .gram()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| {
                            to_sparse(e)
                                .into_iter()
                                .map(|(i, c)| (i, c.to_string()))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        };
        serde_json::to_value(repr).expect("spec serialization cannot fail")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value())
            .expect("spec serialization cannot fail")
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self, Error> {
        let repr: KronRepr = serde_json::from_value(value.clone())
            .map_err(|e| Error::Invalid(format!("malformed product spec file: {e}")))?;
        if repr.format != 1 {
            return Err(Error::Invalid(format!(
                "unsupported format version {}",
                repr.format
            )));
        }
        let table = AlgebraTable::from_json_value(&repr.b)?;
        let field = table.field();
        let bdim = table.dim();
        let b = CoeffRing::new(table)?;
        let action = repr
            .v
            .action
            .iter()
            .map(|m| {
                m.iter()
                    .map(|row| row.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let v = BimoduleV::new(&b, repr.v.dim, action)?;
        let gram = repr
            .form
            .iter()
            .map(|row| {
                row.iter()
                    .map(|pairs| {
                        let mut e = vec![field.zero(); bdim];
                        for (i, s) in pairs {
                            if *i >= bdim {
                                return Err(Error::IndexOutOfRange { index: *i, dim: bdim });
                            }
                            e[*i] = e[*i].add(&field.parse(s)?);
                        }
                        Ok(e)
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let form = SkewForm::new(bdim, v.dim(), gram)?;
        Ok(KronSpec { b, v, form })
    }

    pub fn from_json_str(text: &str) -> Result<Self, Error> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::Invalid(format!("malformed product spec file: {e}")))?;
        Self::from_json_value(&value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::identity::check_alternative;
    use crate::rng::SplitMix64;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    /// B = F, V = F^vdim with the identity action.
    fn scalar_spec(vdim: usize, gram_scalars: &[(usize, usize, i64)]) -> KronSpec {
        let b = CoeffRing::new(catalog::ground_field(q())).unwrap();
        let action = vec![(0..vdim)
            .map(|r| {
                (0..vdim)
                    .map(|c| if r == c { q().one() } else { q().zero() })
                    .collect()
            })
            .collect()];
        let v = BimoduleV::new(&b, vdim, action).unwrap();
        let mut gram = vec![vec![vec![q().zero(); 1]; vdim]; vdim];
        for &(i, j, val) in gram_scalars {
            gram[i][j] = vec![q().from_i64(val)];
            gram[j][i] = vec![q().from_i64(-val)];
        }
        let form = SkewForm::new(1, vdim, gram).unwrap();
        KronSpec::new(b, v, form)
    }

    #[test]
    fn star_is_an_involution_with_trace_identity() {
        let b = catalog::dual_numbers(q());
        let mut rng = SplitMix64::new(3);
        for _ in 0..10 {
            let m = Mat2 {
                a: b.random_element(&mut rng),
                b: b.random_element(&mut rng),
                c: b.random_element(&mut rng),
                d: b.random_element(&mut rng),
            };
            let s = star(&b, &m);
            assert_eq!(star(&b, &s), m);
            // M + M* = (a + d) I
            let sum = m.add(&b, &s);
            let tr = b.add(&m.a, &m.d);
            assert_eq!(sum.a, tr);
            assert_eq!(sum.d, tr);
            assert!(b.is_zero(&sum.b) && b.is_zero(&sum.c));
            // M M* = (ad - bc) I over a commutative ring
            let prod = m.mul(&b, &s);
            let det = b.sub(&b.mul(&m.a, &m.d), &b.mul(&m.b, &m.c));
            assert_eq!(prod.a, det);
            assert_eq!(prod.d, det);
            assert!(b.is_zero(&prod.b) && b.is_zero(&prod.c));
        }
    }

    #[test]
    fn star_of_upper_unit() {
        let b = catalog::ground_field(q());
        let mut m = Mat2::zero(&b);
        m.b = vec![q().one()];
        let s = star(&b, &m);
        assert!(b.is_zero(&s.a) && b.is_zero(&s.d) && b.is_zero(&s.c));
        assert_eq!(s.b, vec![q().from_i64(-1)]);
        assert_eq!(star(&b, &Mat2::identity(&b)), Mat2::identity(&b));
    }

    #[test]
    fn pure_matrix_spec_reproduces_matrix_algebra() {
        let spec = scalar_spec(0, &[]);
        let (a, e) = build_algebra(&spec).unwrap();
        assert_eq!(a.dim(), 4);
        let (m2, _) = catalog::matrix2(q());
        assert!(a.same_structure(&m2));
        assert!(a.verify_matrix_units(&e).unwrap());
    }

    #[test]
    fn rank_one_zero_form_gives_six_dimensional_alternative_algebra() {
        let spec = scalar_spec(1, &[]);
        let (a, e) = build_algebra(&spec).unwrap();
        assert_eq!(a.dim(), 6);
        assert!(check_alternative(&a).pass);
        assert!(a.verify_matrix_units(&e).unwrap());
    }

    #[test]
    fn rank_two_symplectic_form_gives_octonion_like_algebra() {
        let spec = scalar_spec(2, &[(0, 1, 1)]);
        assert!(validate_form(&spec).pass);
        let (a, e) = build_algebra(&spec).unwrap();
        assert_eq!(a.dim(), 8);
        assert!(check_alternative(&a).pass);
        assert!(a.verify_matrix_units(&e).unwrap());
        assert_eq!(a.nucleus().dim(), 1);
        let z = a.center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(a.unit().unwrap()));
    }

    #[test]
    fn unit_law_in_the_product() {
        let spec = scalar_spec(2, &[(0, 1, 1)]);
        let one = KronElement::unit(&spec);
        let mut rng = SplitMix64::new(17);
        for _ in 0..10 {
            let v = rng.scalar_vec(&q(), kron_dim(&spec));
            let x = dense_to_kron(&spec, &v);
            assert_eq!(kron_product(&spec, &one, &x), x);
            assert_eq!(kron_product(&spec, &x, &one), x);
        }
    }

    #[test]
    fn grading_of_the_generated_table() {
        let spec = scalar_spec(2, &[(0, 1, 1)]);
        let (a, _) = build_algebra(&spec).unwrap();
        let bdim = 4 * spec.b.dim();
        let is_even = |x: &Element| x[bdim..].iter().all(Scalar::is_zero);
        let is_odd = |x: &Element| x[..bdim].iter().all(Scalar::is_zero);
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let p = a.mul(&a.basis_element(i), &a.basis_element(j));
                match (i < bdim, j < bdim) {
                    (true, true) => assert!(is_even(&p)),
                    (false, false) => assert!(is_even(&p)),
                    _ => assert!(is_odd(&p)),
                }
            }
        }
    }

    #[test]
    fn cayley_action_law_on_pure_pairs() {
        let spec = scalar_spec(2, &[(0, 1, 1)]);
        let (a, e) = build_algebra(&spec).unwrap();
        let bdim = 4 * spec.b.dim();
        // star on the embedded matrix units: E11 <-> E22, E12 -> -E12,
        // E21 -> -E21.
        let stars = [
            (e.e11().clone(), e.e22().clone()),
            (e.e12().clone(), a.neg(e.e12())),
            (e.e21().clone(), a.neg(e.e21())),
            (e.e22().clone(), e.e11().clone()),
        ];
        for k in bdim..a.dim() {
            let m = a.basis_element(k);
            for (u, ustar) in &stars {
                assert_eq!(a.mul(u, &m), a.mul(&m, ustar));
            }
        }
    }

    #[test]
    fn form_values_are_central_in_the_generated_algebra() {
        let spec = scalar_spec(2, &[(0, 1, 1)]);
        let (a, e) = build_algebra(&spec).unwrap();
        let b = spec.b.table();
        let gamma = spec.form.entry(0, 1);
        // gamma embedded as diag(gamma, gamma)
        let diag = {
            let ke = KronElement {
                mat: Mat2 {
                    a: gamma.clone(),
                    b: b.zero_element(),
                    c: b.zero_element(),
                    d: gamma.clone(),
                },
                x: vec![q().zero(); 2],
                y: vec![q().zero(); 2],
            };
            kron_to_dense(&spec, &ke)
        };
        let _ = e;
        for i in 0..a.dim() {
            assert!(a.is_zero(&a.commutator(&diag, &a.basis_element(i))));
        }
    }

    #[test]
    fn rank_three_violating_form_is_rejected() {
        // <e1,e2> = 1, others zero: <e1,e2>e3 + <e2,e3>e1 + <e3,e1>e2 = e3.
        let spec = scalar_spec(3, &[(0, 1, 1)]);
        let report = validate_form(&spec);
        assert!(!report.pass);
        let w = report.witness.unwrap();
        assert_eq!(w.check, "e25");
        assert!(matches!(build_algebra(&spec), Err(Error::FormInvalid(_))));
        // built anyway, the table is not alternative
        let (a, _) = build_algebra_unchecked(&spec).unwrap();
        assert!(!check_alternative(&a).pass);
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = scalar_spec(2, &[(0, 1, 1)]);
        let text = spec.to_json_string();
        let back = KronSpec::from_json_str(&text).unwrap();
        assert!(back.b.table().same_structure(spec.b.table()));
        assert_eq!(back.v.dim(), spec.v.dim());
        assert_eq!(back.form.gram(), spec.form.gram());
        let (a1, _) = build_algebra(&spec).unwrap();
        let (a2, _) = build_algebra(&back).unwrap();
        assert!(a1.same_structure(&a2));
    }

    #[test]
    fn noncommutative_coefficients_with_central_form() {
        // B = UT2 x F; the form takes values in the F component, and the
        // module action factors through the F projection, so commutators
        // annihilate the module and bilinearity holds.
        let ut2 = catalog::upper_triangular2(q());
        let f = catalog::ground_field(q());
        let b_table = catalog::direct_product(&ut2, &f);
        let b = CoeffRing::new(b_table).unwrap();
        // basis: e11, e12, e22, s (the F unit); act through the s coordinate.
        let vdim = 2;
        let action: Vec<Vec<Row>> = (0..4)
            .map(|m| {
                (0..vdim)
                    .map(|r| {
                        (0..vdim)
                            .map(|c| {
                                if m == 3 && r == c {
                                    q().one()
                                } else {
                                    q().zero()
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let v = BimoduleV::new(&b, vdim, action).unwrap();
        let mut gram = vec![vec![vec![q().zero(); 4]; 2]; 2];
        gram[0][1][3] = q().one();
        gram[1][0][3] = q().from_i64(-1);
        let form = SkewForm::new(4, 2, gram).unwrap();
        let spec = KronSpec::new(b, v, form);
        assert!(validate_form(&spec).pass);
        let (a, _) = build_algebra(&spec).unwrap();
        assert!(check_alternative(&a).pass);
        // [a,b] <u,v> = 0 for all coefficient basis pairs
        let bt = spec.b.table();
        let gamma = spec.form.entry(0, 1);
        for i in 0..bt.dim() {
            for j in 0..bt.dim() {
                let c = bt.commutator(&bt.basis_element(i), &bt.basis_element(j));
                assert!(bt.is_zero(&bt.mul(&c, gamma)));
            }
        }
    }
}
