//! Concrete algebra families built around M₂: split octonion rings over a
//! commutative coefficient ring, doublings of M₂(A) by a parameter α, the
//! noncommutative variant that doubles by M₂(A/[A,A]A), split null
//! extensions, a three-generated module example, and a recognizer for
//! octonion algebras among coordinatized specs.
//!
//! Every doubled table is returned together with the equivalent
//! coordinatized spec and a certified basis isomorphism between the two
//! presentations.

use rayon::prelude::*;

use crate::algebra::{iso_check, AlgebraTable, Element, MatrixUnits};
use crate::error::Error;
use crate::kron::{
    build_algebra, star, validate_form, BimoduleV, CoeffRing, KronSpec, Mat2, SkewForm,
};
use crate::linalg::{mat_vec, solve, zero_row, Row, Subspace};
use crate::rng::SplitMix64;
use crate::scalar::{FieldSpec, Scalar};

/// Parameters of a doubling: the coefficient ring and the element α that
/// squares the adjoined generator. The doubled product needs α·A inside the
/// center of A; for the commutative doubling that is automatic.
#[derive(Debug, Clone)]
pub struct CDParams {
    pub base: CoeffRing,
    pub alpha: Element,
}

/// A quotient A/I with the projection matrix and a fixed linear lift.
/// The lift picks the non-pivot coordinates of I as representatives, so
/// proj∘section is the identity by construction.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    bar: AlgebraTable,
    proj: Vec<Row>,
    section: Vec<Row>,
    ideal: Subspace,
}

impl QuotientRing {
    pub fn by_ideal(a: &AlgebraTable, ideal: Subspace) -> Result<Self, Error> {
        let field = a.field();
        let (bar, proj) = a.quotient_algebra(&ideal)?;
        let reps = ideal.complement_coords();
        let mut section = vec![zero_row(&field, bar.dim()); a.dim()];
        for (j, &c) in reps.iter().enumerate() {
            section[c][j] = field.one();
        }
        let qr = QuotientRing {
            bar,
            proj,
            section,
            ideal,
        };
        for j in 0..qr.bar.dim() {
            let round = qr.project(&qr.lift(&basis_vec(&field, qr.bar.dim(), j)));
            assert_eq!(round, basis_vec(&field, qr.bar.dim(), j));
        }
        Ok(qr)
    }

    /// Quotient by the ideal generated by all commutators.
    pub fn commutator_quotient(base: &CoeffRing) -> Result<Self, Error> {
        Self::by_ideal(base.table(), base.comm_ideal().clone())
    }

    pub fn bar(&self) -> &AlgebraTable {
        &self.bar
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    pub fn proj_matrix(&self) -> &[Row] {
        &self.proj
    }

    pub fn section_matrix(&self) -> &[Row] {
        &self.section
    }

    pub fn project(&self, x: &[Scalar]) -> Element {
        mat_vec(&self.bar.field(), &self.proj, x)
    }

    pub fn lift(&self, xbar: &[Scalar]) -> Element {
        mat_vec(&self.bar.field(), &self.section, xbar)
    }

    /// A second valid lift: the fixed one shifted by random ideal elements.
    /// Still a section because the projection kills every shift.
    pub fn randomized_section(&self, rng: &mut SplitMix64) -> Vec<Row> {
        let field = self.bar.field();
        let ambient = self.ideal.ambient();
        let mut out = self.section.clone();
        for j in 0..self.bar.dim() {
            let mut shift = zero_row(&field, ambient);
            for row in self.ideal.basis() {
                let c = rng.scalar(&field);
                for r in 0..ambient {
                    shift[r] = shift[r].add(&row[r].mul(&c));
                }
            }
            for (r, s) in shift.iter().enumerate() {
                out[r][j] = out[r][j].add(s);
            }
        }
        out
    }
}

/// A doubled table together with its coordinatized presentation and the
/// certified basis isomorphism from `build_algebra(spec)` onto `table`.
#[derive(Debug, Clone)]
pub struct DoubledOutput {
    pub table: AlgebraTable,
    pub units: MatrixUnits,
    pub spec: KronSpec,
    pub iso: Vec<Row>,
}

/// The noncommutative doubling: M₂(A) ⊕ vM₂(Ā) with Ā = A/[A,A]A.
#[derive(Debug, Clone)]
pub struct NcdOutput {
    pub table: AlgebraTable,
    pub units: MatrixUnits,
    pub quotient: QuotientRing,
}

fn basis_vec(field: &FieldSpec, n: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[k] = field.one();
    v
}

fn check_commutative(t: &AlgebraTable) -> Result<(), Error> {
    for i in 0..t.dim() {
        for j in (i + 1)..t.dim() {
            let c = t.commutator(&t.basis_element(i), &t.basis_element(j));
            if !t.is_zero(&c) {
                return Err(Error::NotCommutative([i, j]));
            }
        }
    }
    Ok(())
}

/// The table of M₂(A) ⊕ vM₂(Ā) under
///   m·n = mn, m·(vq) = v(m̄* q), (vp)·n = v(n̄ p), (vp)·(vq) = α(q₁ (p*)₁),
/// where bars are images under `proj` and subscript-1 lifts use `section`.
/// Basis layout: the four matrix slots over A, then the four v-slots over Ā,
/// each block running through the coefficient basis.
fn doubled_table(
    a: &AlgebraTable,
    bar: &AlgebraTable,
    proj: &[Row],
    section: &[Row],
    alpha: &Element,
) -> Result<(AlgebraTable, MatrixUnits), Error> {
    let field = a.field();
    let da = a.dim();
    let db = bar.dim();
    let dim = 4 * da + 4 * db;
    let unit_a = a.unit_or_err()?.clone();

    let slot_mat = |t: &AlgebraTable, slot: usize, e: Element| -> Mat2 {
        let mut m = Mat2::zero(t);
        match slot {
            0 => m.a = e,
            1 => m.b = e,
            2 => m.c = e,
            _ => m.d = e,
        }
        m
    };
    let map_mat = |mat: &[Row], m: &Mat2| -> Mat2 {
        Mat2 {
            a: mat_vec(&field, mat, &m.a),
            b: mat_vec(&field, mat, &m.b),
            c: mat_vec(&field, mat, &m.c),
            d: mat_vec(&field, mat, &m.d),
        }
    };
    let scale_entries = |m: &Mat2| -> Mat2 {
        Mat2 {
            a: a.mul(alpha, &m.a),
            b: a.mul(alpha, &m.b),
            c: a.mul(alpha, &m.c),
            d: a.mul(alpha, &m.d),
        }
    };
    let flatten = |m: &Mat2, v: &Mat2| -> Element {
        let mut out = Vec::with_capacity(dim);
        for e in [&m.a, &m.b, &m.c, &m.d] {
            out.extend_from_slice(e);
        }
        for e in [&v.a, &v.b, &v.c, &v.d] {
            out.extend_from_slice(e);
        }
        out
    };
    // index -> (is v-part, slot, coefficient index)
    let decode = |g: usize| -> (bool, usize, usize) {
        if g < 4 * da {
            (false, g / da, g % da)
        } else {
            ((true), (g - 4 * da) / db, (g - 4 * da) % db)
        }
    };

    let mut products = Vec::with_capacity(dim);
    for gi in 0..dim {
        let (vi, si, ci) = decode(gi);
        let mut row = Vec::with_capacity(dim);
        for gj in 0..dim {
            let (vj, sj, cj) = decode(gj);
            let entry = match (vi, vj) {
                (false, false) => {
                    let m = slot_mat(a, si, a.basis_element(ci))
                        .mul(a, &slot_mat(a, sj, a.basis_element(cj)));
                    flatten(&m, &Mat2::zero(bar))
                }
                (false, true) => {
                    let m = slot_mat(a, si, a.basis_element(ci));
                    let q = slot_mat(bar, sj, bar.basis_element(cj));
                    let v = star(bar, &map_mat(proj, &m)).mul(bar, &q);
                    flatten(&Mat2::zero(a), &v)
                }
                (true, false) => {
                    let p = slot_mat(bar, si, bar.basis_element(ci));
                    let n = slot_mat(a, sj, a.basis_element(cj));
                    let v = map_mat(proj, &n).mul(bar, &p);
                    flatten(&Mat2::zero(a), &v)
                }
                (true, true) => {
                    let p = slot_mat(bar, si, bar.basis_element(ci));
                    let q = slot_mat(bar, sj, bar.basis_element(cj));
                    let prod = map_mat(section, &q).mul(a, &map_mat(section, &star(bar, &p)));
                    flatten(&scale_entries(&prod), &Mat2::zero(bar))
                }
            };
            row.push(entry);
        }
        products.push(row);
    }

    let mut names = Vec::with_capacity(dim);
    for slot in 0..4 {
        for i in 0..da {
            names.push(format!(
                "E{}{}*{}",
                slot / 2 + 1,
                slot % 2 + 1,
                a.basis_names()[i]
            ));
        }
    }
    for slot in 0..4 {
        for j in 0..db {
            names.push(format!(
                "vE{}{}*{}",
                slot / 2 + 1,
                slot % 2 + 1,
                bar.basis_names()[j]
            ));
        }
    }
    let unit = flatten(&Mat2::identity(a), &Mat2::zero(bar));
    let units = MatrixUnits::new(
        flatten(&slot_mat(a, 0, unit_a.clone()), &Mat2::zero(bar)),
        flatten(&slot_mat(a, 1, unit_a.clone()), &Mat2::zero(bar)),
        flatten(&slot_mat(a, 2, unit_a.clone()), &Mat2::zero(bar)),
        flatten(&slot_mat(a, 3, unit_a), &Mat2::zero(bar)),
    );
    let table = AlgebraTable::from_products(field, names, products, Some(unit))?;
    Ok((table, units))
}

/// The coordinatized presentation of a commutative doubling: V = A² with the
/// diagonal regular action and ⟨(x₁,x₂),(y₁,y₂)⟩ = -α(x₁y₂ - x₂y₁).
fn pair_module_spec(base: &CoeffRing, alpha: &Element) -> Result<KronSpec, Error> {
    let a = base.table();
    let field = a.field();
    let da = a.dim();
    let vdim = 2 * da;
    let mut action = Vec::with_capacity(da);
    for m in 0..da {
        let mut mat = vec![zero_row(&field, vdim); vdim];
        for k in 0..da {
            let prod = a.mul(&a.basis_element(m), &a.basis_element(k));
            for (r, val) in prod.iter().enumerate() {
                mat[r][k] = val.clone();
                mat[da + r][da + k] = val.clone();
            }
        }
        action.push(mat);
    }
    let v = BimoduleV::new(base, vdim, action)?;
    let mut gram = vec![vec![a.zero_element(); vdim]; vdim];
    for i in 0..da {
        for j in 0..da {
            let prod = a.mul(&a.basis_element(i), &a.basis_element(j));
            let val = a.neg(&a.mul(alpha, &prod));
            gram[i][da + j] = val.clone();
            gram[da + j][i] = a.neg(&val);
        }
    }
    let form = SkewForm::new(da, vdim, gram)?;
    Ok(KronSpec::new(base.clone(), v, form))
}

/// Basis map from the coordinatized presentation onto the doubled table:
/// identity on the matrix block, and on the module part
///   (x,0)(1) -> +vE22·x, (0,y)(1) -> -vE21·y,
///   (x,0)(2) -> -vE12·x, (0,y)(2) -> +vE11·y.
fn pair_module_iso(field: &FieldSpec, da: usize) -> Vec<Row> {
    let dim = 8 * da;
    let mut l = vec![zero_row(field, dim); dim];
    for k in 0..4 * da {
        l[k][k] = field.one();
    }
    for j in 0..da {
        l[7 * da + j][4 * da + j] = field.one();
        l[6 * da + j][5 * da + j] = field.one().neg();
        l[5 * da + j][6 * da + j] = field.one().neg();
        l[4 * da + j][7 * da + j] = field.one();
    }
    l
}

fn cd_core(base: &CoeffRing, alpha: Element) -> Result<DoubledOutput, Error> {
    let a = base.table();
    let field = a.field();
    let da = a.dim();
    let ident: Vec<Row> = (0..da).map(|r| basis_vec(&field, da, r)).collect();
    let (table, units) = doubled_table(a, a, &ident, &ident, &alpha)?;
    let spec = pair_module_spec(base, &alpha)?;
    let (built, _) = build_algebra(&spec)?;
    let iso = pair_module_iso(&field, da);
    assert!(
        matches!(iso_check(&built, &table, &iso), Ok(true)),
        "doubled table and its coordinatized spec must be isomorphic"
    );
    Ok(DoubledOutput {
        table,
        units,
        spec,
        iso,
    })
}

/// Split octonion ring over a commutative coefficient ring: the doubling of
/// M₂(B) by a nonzero scalar, 1 unless `v2` overrides it. Dimension 8·dim B.
pub fn octonion(base: &CoeffRing, v2: Option<Scalar>) -> Result<DoubledOutput, Error> {
    check_commutative(base.table())?;
    let field = base.field();
    let lambda = v2.unwrap_or_else(|| field.one());
    if lambda.field() != field {
        return Err(Error::FieldMismatch(field, lambda.field()));
    }
    if lambda.is_zero() {
        return Err(Error::Invalid(
            "the doubling scalar v^2 must be nonzero".into(),
        ));
    }
    let alpha = base.table().scale(&lambda, base.unit());
    cd_core(base, alpha)
}

/// Doubling of M₂(A) by an element α of the commutative ring A.
pub fn cd(params: &CDParams) -> Result<DoubledOutput, Error> {
    check_commutative(params.base.table())?;
    if params.alpha.len() != params.base.dim() {
        return Err(Error::DimensionMismatch {
            expected: params.base.dim(),
            got: params.alpha.len(),
        });
    }
    cd_core(&params.base, params.alpha.clone())
}

/// Noncommutative doubling M₂(A) ⊕ vM₂(Ā), Ā = A/[A,A]A. Requires α·A
/// inside the center of A, which makes the lifted products independent of
/// the section; that independence is re-checked against a randomized second
/// section.
pub fn ncd(params: &CDParams) -> Result<NcdOutput, Error> {
    let a = params.base.table();
    if params.alpha.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: params.alpha.len(),
        });
    }
    let center = params.base.center();
    for i in 0..a.dim() {
        let prod = a.mul(&params.alpha, &a.basis_element(i));
        if !center.contains(&prod) {
            return Err(Error::AlphaNotCentral(format!(
                "alpha*{} lies outside the center",
                a.basis_names()[i]
            )));
        }
    }
    let qr = QuotientRing::commutator_quotient(&params.base)?;
    for row in qr.ideal().basis() {
        assert!(
            a.is_zero(&a.mul(&params.alpha, row)),
            "alpha must annihilate the commutator ideal"
        );
    }
    let (table, units) = doubled_table(
        a,
        qr.bar(),
        qr.proj_matrix(),
        qr.section_matrix(),
        &params.alpha,
    )?;
    let mut rng = SplitMix64::new(0x5ec71013);
    let shifted = qr.randomized_section(&mut rng);
    let (retry, _) = doubled_table(a, qr.bar(), qr.proj_matrix(), &shifted, &params.alpha)?;
    assert!(
        table.same_structure(&retry),
        "doubled product must not depend on the choice of lift"
    );
    Ok(NcdOutput {
        table,
        units,
        quotient: qr,
    })
}

/// Left and right action matrices of an algebra on a module, one pair per
/// algebra basis element, columns indexed by module coordinates.
#[derive(Debug, Clone)]
pub struct BimoduleActions {
    pub dim: usize,
    pub left: Vec<Vec<Row>>,
    pub right: Vec<Vec<Row>>,
}

/// A ⊕ V with (a+v)(b+w) = ab + (a·w + v·b) and V·V = 0. The result has a
/// unit exactly when the actions are unital; alternativity is whatever the
/// actions make it, callers probe it with `check_alternative`.
pub fn split_null_extension(a: &AlgebraTable, v: &BimoduleActions) -> Result<AlgebraTable, Error> {
    let field = a.field();
    let da = a.dim();
    let dv = v.dim;
    if v.left.len() != da || v.right.len() != da {
        return Err(Error::DimensionMismatch {
            expected: da,
            got: v.left.len().min(v.right.len()),
        });
    }
    for m in v.left.iter().chain(v.right.iter()) {
        if m.len() != dv || m.iter().any(|row| row.len() != dv) {
            return Err(Error::DimensionMismatch {
                expected: dv,
                got: m.len(),
            });
        }
    }
    let dim = da + dv;
    let embed_a = |x: &[Scalar]| -> Element {
        let mut out = vec![field.zero(); dim];
        out[..da].clone_from_slice(x);
        out
    };
    let embed_v = |x: &[Scalar]| -> Element {
        let mut out = vec![field.zero(); dim];
        out[da..].clone_from_slice(x);
        out
    };
    let column = |mat: &[Row], k: usize| -> Vec<Scalar> {
        (0..dv).map(|r| mat[r][k].clone()).collect()
    };
    let mut products = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut row = Vec::with_capacity(dim);
        for j in 0..dim {
            let entry = if i < da && j < da {
                embed_a(&crate::algebra::to_dense(
                    &field,
                    da,
                    a.basis_product(i, j),
                ))
            } else if i < da && j >= da {
                embed_v(&column(&v.left[i], j - da))
            } else if i >= da && j < da {
                embed_v(&column(&v.right[j], i - da))
            } else {
                vec![field.zero(); dim]
            };
            row.push(entry);
        }
        products.push(row);
    }
    let mut names: Vec<String> = a.basis_names().to_vec();
    for k in 0..dv {
        names.push(format!("m{}", k + 1));
    }
    let unit = a.unit().filter(|u| actions_unital(&field, u, v)).cloned();
    AlgebraTable::from_products(field, names, products, unit.map(|u| embed_a(&u)))
}

fn actions_unital(field: &FieldSpec, u: &[Scalar], v: &BimoduleActions) -> bool {
    let id_under = |mats: &[Vec<Row>]| -> bool {
        for r in 0..v.dim {
            for k in 0..v.dim {
                let mut s = field.zero();
                for (m, c) in u.iter().enumerate() {
                    s = s.add(&c.mul(&mats[m][r][k]));
                }
                let want = if r == k { field.one() } else { field.zero() };
                if s != want {
                    return false;
                }
            }
        }
        true
    };
    id_under(&v.left) && id_under(&v.right)
}

/// The two-dimensional module over M₂ (basis order e11,e12,e21,e22) with
/// e_ij·m_k = δ_ik m_j and m·a = a*·m.
pub fn cay_actions(field: FieldSpec) -> BimoduleActions {
    let zero_mat = || vec![zero_row(&field, 2); 2];
    let idx = |p: usize, q: usize| 2 * p + q;
    let mut left = vec![zero_mat(); 4];
    for p in 0..2 {
        for q in 0..2 {
            left[idx(p, q)][q][p] = field.one();
        }
    }
    let negate = |m: &Vec<Row>| -> Vec<Row> {
        m.iter()
            .map(|row| row.iter().map(|c| c.neg()).collect())
            .collect()
    };
    let mut right = vec![zero_mat(); 4];
    right[idx(0, 0)] = left[idx(1, 1)].clone();
    right[idx(1, 1)] = left[idx(0, 0)].clone();
    right[idx(0, 1)] = negate(&left[idx(0, 1)]);
    right[idx(1, 0)] = negate(&left[idx(1, 0)]);
    BimoduleActions {
        dim: 2,
        left,
        right,
    }
}

/// The algebra acting on itself by left and right multiplication.
pub fn regular_actions(a: &AlgebraTable) -> BimoduleActions {
    let field = a.field();
    let d = a.dim();
    let mut left = Vec::with_capacity(d);
    let mut right = Vec::with_capacity(d);
    for m in 0..d {
        let bm = a.basis_element(m);
        let mut lm = vec![zero_row(&field, d); d];
        let mut rm = vec![zero_row(&field, d); d];
        for k in 0..d {
            let bk = a.basis_element(k);
            for (r, val) in a.mul(&bm, &bk).iter().enumerate() {
                lm[r][k] = val.clone();
            }
            for (r, val) in a.mul(&bk, &bm).iter().enumerate() {
                rm[r][k] = val.clone();
            }
        }
        left.push(lm);
        right.push(rm);
    }
    BimoduleActions { dim: d, left, right }
}

/// Module spec generated by three elements with one relation: V = B³/B·(g₁,g₂,g₃)
/// carrying ⟨e₁,e₂⟩ = g₃, ⟨e₂,e₃⟩ = g₁, ⟨e₃,e₁⟩ = g₂. The form vanishes
/// against the relation submodule, so it descends to V, and the module
/// relation ⟨u,v⟩w + ⟨v,w⟩u + ⟨w,u⟩v = 0 holds there by construction.
pub fn three_generator_module(base: &CoeffRing, gens: [&[Scalar]; 3]) -> Result<KronSpec, Error> {
    check_commutative(base.table())?;
    let a = base.table();
    let field = a.field();
    let db = a.dim();
    for g in gens {
        if g.len() != db {
            return Err(Error::DimensionMismatch {
                expected: db,
                got: g.len(),
            });
        }
    }
    let ambient = 3 * db;
    let mut rows = Vec::with_capacity(db);
    for m in 0..db {
        let bm = a.basis_element(m);
        let mut row = Vec::with_capacity(ambient);
        for g in gens {
            row.extend(a.mul(&bm, g));
        }
        rows.push(row);
    }
    let sub = Subspace::span(field, ambient, rows);
    let reps = sub.complement_coords();
    let vdim = reps.len();
    let project = |x: &[Scalar]| -> Vec<Scalar> {
        let red = sub.reduce(x);
        reps.iter().map(|&c| red[c].clone()).collect()
    };
    let lift = |q: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![field.zero(); ambient];
        for (j, &c) in reps.iter().enumerate() {
            out[c] = q[j].clone();
        }
        out
    };
    let act3 = |z: &[Scalar], x: &[Scalar]| -> Vec<Scalar> {
        let mut out = Vec::with_capacity(ambient);
        for p in 0..3 {
            out.extend(a.mul(z, &x[p * db..(p + 1) * db]));
        }
        out
    };
    fn comp<'a>(v: &'a [Scalar], p: usize, db: usize) -> &'a [Scalar] {
        &v[p * db..(p + 1) * db]
    }
    let pair_form = |x: &[Scalar], y: &[Scalar]| -> Element {
        let wedge = |p: usize, q: usize| {
            a.sub(
                &a.mul(comp(x, p, db), comp(y, q, db)),
                &a.mul(comp(x, q, db), comp(y, p, db)),
            )
        };
        let mut out = a.mul(&wedge(0, 1), gens[2]);
        out = a.add(&out, &a.mul(&wedge(1, 2), gens[0]));
        a.add(&out, &a.mul(&wedge(2, 0), gens[1]))
    };
    for row in sub.basis() {
        for k in 0..ambient {
            let e = basis_vec(&field, ambient, k);
            assert!(
                a.is_zero(&pair_form(row, &e)),
                "form must vanish on the relation submodule"
            );
        }
    }
    let mut action = Vec::with_capacity(db);
    for m in 0..db {
        let bm = a.basis_element(m);
        let mut mat = vec![zero_row(&field, vdim); vdim];
        for k in 0..vdim {
            let col = project(&act3(&bm, &lift(&basis_vec(&field, vdim, k))));
            for (r, val) in col.iter().enumerate() {
                mat[r][k] = val.clone();
            }
        }
        action.push(mat);
    }
    let v = BimoduleV::new(base, vdim, action)?;
    let mut gram = vec![vec![a.zero_element(); vdim]; vdim];
    for r in 0..vdim {
        for s in 0..vdim {
            gram[r][s] = pair_form(&lift(&basis_vec(&field, vdim, r)), &lift(&basis_vec(&field, vdim, s)));
        }
    }
    let form = SkewForm::new(db, vdim, gram)?;
    let spec = KronSpec::new(base.clone(), v, form);
    let report = validate_form(&spec);
    if !report.pass {
        return Err(Error::FormInvalid(format!(
            "induced form fails validation: {:?}",
            report.witness
        )));
    }
    Ok(spec)
}

/// Outcome of the octonion test: a spec describes an octonion algebra
/// exactly when some pair of module elements pairs to the unit of B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OctonionVerdict {
    Octonion { x: Vec<Scalar>, y: Vec<Scalar> },
    NotOctonion { reason: String },
    Unknown { reason: String },
}

/// Cap on the number of candidate module vectors enumerated over a finite
/// field before the search is declared inconclusive.
pub const PAIR_SEARCH_BOUND: u128 = 1 << 20;

/// Decides, where possible, whether the coordinatized algebra of `spec` is
/// an octonion algebra over its coefficient ring. A supplied witness pair is
/// checked exactly. Without one: a zero form is a definite no; over a finite
/// field the module is enumerated (for each x, solving ⟨x,y⟩ = 1 for y is
/// linear); over the rationals a basis pair with an invertible form value is
/// normalized into a witness, and anything else is inconclusive.
pub fn octonion_criterion(
    spec: &KronSpec,
    witness: Option<(&[Scalar], &[Scalar])>,
) -> Result<OctonionVerdict, Error> {
    let report = validate_form(spec);
    if !report.pass {
        return Err(Error::FormInvalid(format!(
            "spec fails form validation: {:?}",
            report.witness
        )));
    }
    let b = spec.b.table();
    let field = b.field();
    let vdim = spec.v.dim();
    let unit = spec.b.unit().clone();
    if let Some((x, y)) = witness {
        if x.len() != vdim || y.len() != vdim {
            return Err(Error::DimensionMismatch {
                expected: vdim,
                got: if x.len() != vdim { x.len() } else { y.len() },
            });
        }
        let val = spec.form.apply(b, x, y);
        return Ok(if val == unit {
            OctonionVerdict::Octonion {
                x: x.to_vec(),
                y: y.to_vec(),
            }
        } else {
            OctonionVerdict::Unknown {
                reason: format!(
                    "witness pairs to {}, not the unit",
                    b.element_string(&val)
                ),
            }
        });
    }
    let gram_zero = spec
        .form
        .gram()
        .iter()
        .all(|row| row.iter().all(|e| b.is_zero(e)));
    if vdim == 0 || gram_zero {
        return Ok(OctonionVerdict::NotOctonion {
            reason: "form has no unit value".into(),
        });
    }
    match field {
        FieldSpec::Prime { p } => {
            let total = (p as u128)
                .checked_pow(vdim as u32)
                .filter(|t| *t <= PAIR_SEARCH_BOUND);
            let Some(total) = total else {
                return Ok(OctonionVerdict::Unknown {
                    reason: format!(
                        "candidate space p^{vdim} exceeds the search bound {PAIR_SEARCH_BOUND}"
                    ),
                });
            };
            let decode = |mut idx: u64| -> Vec<Scalar> {
                (0..vdim)
                    .map(|_| {
                        let digit = (idx % p) as i64;
                        idx /= p;
                        field.from_i64(digit)
                    })
                    .collect()
            };
            let found = (1..total as u64)
                .into_par_iter()
                .filter_map(|idx| {
                    let x = decode(idx);
                    let mut m = vec![zero_row(&field, vdim); b.dim()];
                    for s in 0..vdim {
                        let mut val = b.zero_element();
                        for (i, xi) in x.iter().enumerate() {
                            if xi.is_zero() {
                                continue;
                            }
                            val = b.add(&val, &b.scale(xi, spec.form.entry(i, s)));
                        }
                        for (r, c) in val.iter().enumerate() {
                            m[r][s] = c.clone();
                        }
                    }
                    solve(&field, &m, &unit).map(|y| (idx, x, y))
                })
                .min_by_key(|(idx, _, _)| *idx);
            Ok(match found {
                Some((_, x, y)) => {
                    assert_eq!(spec.form.apply(b, &x, &y), unit);
                    OctonionVerdict::Octonion { x, y }
                }
                None => OctonionVerdict::NotOctonion {
                    reason: format!("no pair evaluates to the unit over F_{p} (exhaustive)"),
                },
            })
        }
        FieldSpec::Rational => {
            for i in 0..vdim {
                for j in 0..vdim {
                    let g = spec.form.entry(i, j);
                    if b.is_zero(g) {
                        continue;
                    }
                    let mut m = vec![zero_row(&field, b.dim()); b.dim()];
                    for k in 0..b.dim() {
                        let prod = b.mul(g, &b.basis_element(k));
                        for (r, c) in prod.iter().enumerate() {
                            m[r][k] = c.clone();
                        }
                    }
                    if let Some(z) = solve(&field, &m, &unit) {
                        let x = basis_vec(&field, vdim, i);
                        let y = spec.v.act(&field, &z, &basis_vec(&field, vdim, j));
                        assert_eq!(spec.form.apply(b, &x, &y), unit);
                        return Ok(OctonionVerdict::Octonion { x, y });
                    }
                }
            }
            Ok(OctonionVerdict::Unknown {
                reason: "no basis pair gives an invertible form value".into(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::identity::{check_alternative, check_identity, CheckMode};

    fn coeff(t: AlgebraTable) -> CoeffRing {
        CoeffRing::new(t).expect("valid coefficient ring")
    }

    fn rationals() -> CoeffRing {
        coeff(catalog::ground_field(FieldSpec::Rational))
    }

    #[test]
    fn octonion_over_the_rationals() {
        let out = octonion(&rationals(), None).unwrap();
        assert_eq!(out.table.dim(), 8);
        assert!(check_alternative(&out.table).pass);
        assert!(out.table.verify_matrix_units(&out.units).unwrap());
        // genuinely non-associative: the nucleus is only the scalars
        assert_eq!(out.table.nucleus().dim(), 1);
        assert_eq!(out.table.center().dim(), 1);
        // pairing of the two module generators
        let field = FieldSpec::Rational;
        let g = out.spec.form.entry(0, 1);
        assert_eq!(g, &vec![field.from_i64(-1)]);
    }

    #[test]
    fn octonion_associator_span_is_the_doubled_block() {
        let out = octonion(&rationals(), None).unwrap();
        let t = &out.table;
        let full = t.full_subspace();
        let h = out.units.subspace(t.field(), t.dim());
        let assoc = t.associator_subspace(&full, &h, &h);
        let vblock = t.span((4..8).map(|k| t.basis_element(k)).collect());
        assert_eq!(assoc.basis(), vblock.basis());
    }

    #[test]
    fn octonion_over_dual_numbers() {
        let base = coeff(catalog::dual_numbers(FieldSpec::Rational));
        let out = octonion(&base, None).unwrap();
        assert_eq!(out.table.dim(), 16);
        assert!(check_alternative(&out.table).pass);
        let moufang =
            check_identity(&out.table, "moufang_central", CheckMode::BasisMultilinear).unwrap();
        assert!(moufang.pass);
    }

    #[test]
    fn octonion_rejects_bad_parameters() {
        let err = octonion(&rationals(), Some(FieldSpec::Rational.zero())).unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
        let ut2 = coeff(catalog::upper_triangular2(FieldSpec::Rational));
        let err = octonion(&ut2, None).unwrap_err();
        assert!(matches!(err, Error::NotCommutative(_)));
    }

    #[test]
    fn octonion_with_scaled_square_still_alternative() {
        let field = FieldSpec::Rational;
        let out = octonion(&rationals(), Some(field.from_i64(3))).unwrap();
        assert!(check_alternative(&out.table).pass);
        // vE11 · vE22 = 3·(e22 e22*) = 3 E22
        let prod = out
            .table
            .mul(&out.table.basis_element(4), &out.table.basis_element(7));
        let mut want = out.table.zero_element();
        want[3] = field.from_i64(3);
        assert_eq!(prod, want);
    }

    #[test]
    fn cd_with_unit_alpha_matches_octonion() {
        let base = rationals();
        let params = CDParams {
            base: base.clone(),
            alpha: base.unit().clone(),
        };
        let left = cd(&params).unwrap();
        let right = octonion(&base, None).unwrap();
        assert!(left.table.same_structure(&right.table));
    }

    #[test]
    fn cd_with_zero_alpha_kills_the_doubled_products() {
        let base = rationals();
        let params = CDParams {
            base: base.clone(),
            alpha: base.table().zero_element(),
        };
        let out = cd(&params).unwrap();
        for i in 4..8 {
            for j in 4..8 {
                let prod = out
                    .table
                    .mul(&out.table.basis_element(i), &out.table.basis_element(j));
                assert!(out.table.is_zero(&prod));
            }
        }
        assert!(check_alternative(&out.table).pass);
    }

    #[test]
    fn cd_with_nilpotent_alpha() {
        let base = coeff(catalog::dual_numbers(FieldSpec::Rational));
        let t = base.table().basis_element(1);
        let params = CDParams {
            base: base.clone(),
            alpha: t.clone(),
        };
        let out = cd(&params).unwrap();
        assert_eq!(out.table.dim(), 16);
        assert!(check_alternative(&out.table).pass);
        // alpha is not invertible: t*x = 1 has no solution
        let field = FieldSpec::Rational;
        let b = base.table();
        let mut m = vec![zero_row(&field, 2); 2];
        for k in 0..2 {
            let prod = b.mul(&t, &b.basis_element(k));
            for (r, c) in prod.iter().enumerate() {
                m[r][k] = c.clone();
            }
        }
        assert!(solve(&field, &m, base.unit()).is_none());
        // the returned spec records the pairing -alpha on the module generators
        assert_eq!(out.spec.form.entry(0, 2), &b.neg(&t));
    }

    #[test]
    fn ncd_on_grassmann_coefficients() {
        let base = coeff(catalog::grassmann2(FieldSpec::Rational));
        let alpha = base.table().basis_element(3);
        let out = ncd(&CDParams {
            base: base.clone(),
            alpha,
        })
        .unwrap();
        assert_eq!(out.quotient.bar().dim(), 3);
        assert_eq!(out.table.dim(), 28);
        assert!(out.table.verify_matrix_units(&out.units).unwrap());
        assert!(check_alternative(&out.table).pass);
    }

    #[test]
    fn ncd_quotient_by_doubled_ideal_matches_cd_over_bar() {
        let base = coeff(catalog::grassmann2(FieldSpec::Rational));
        let alpha = base.table().basis_element(3);
        let out = ncd(&CDParams {
            base: base.clone(),
            alpha: alpha.clone(),
        })
        .unwrap();
        // the ideal spans the commutator-ideal coordinate in each matrix slot
        let t = &out.table;
        let mut gens = Vec::new();
        for row in out.quotient.ideal().basis() {
            for slot in 0..4 {
                let mut v = t.zero_element();
                for (r, c) in row.iter().enumerate() {
                    v[slot * 4 + r] = c.clone();
                }
                gens.push(v);
            }
        }
        let ideal = t.span(gens);
        assert!(t.is_ideal(&ideal));
        let (quot, _) = t.quotient_algebra(&ideal).unwrap();
        let barring = coeff(out.quotient.bar().clone());
        let abar = out.quotient.project(&alpha);
        let cdout = cd(&CDParams {
            base: barring,
            alpha: abar,
        })
        .unwrap();
        assert!(quot.same_structure(&cdout.table));
    }

    #[test]
    fn ncd_with_commutative_coefficients_is_cd() {
        let base = coeff(catalog::dual_numbers(FieldSpec::Rational));
        let alpha = base.table().basis_element(1);
        let params = CDParams {
            base: base.clone(),
            alpha,
        };
        let left = ncd(&params).unwrap();
        let right = cd(&params).unwrap();
        assert!(left.table.same_structure(&right.table));
        assert_eq!(left.quotient.ideal().dim(), 0);
    }

    #[test]
    fn ncd_rejects_noncentral_alpha() {
        let base = coeff(catalog::upper_triangular2(FieldSpec::Rational));
        let err = ncd(&CDParams {
            base: base.clone(),
            alpha: base.table().basis_element(0),
        })
        .unwrap_err();
        assert!(matches!(err, Error::AlphaNotCentral(_)));
    }

    #[test]
    fn commutator_quotient_projection_is_multiplicative() {
        let base = coeff(catalog::grassmann2(FieldSpec::Rational));
        let qr = QuotientRing::commutator_quotient(&base).unwrap();
        assert_eq!(qr.bar().dim(), 3);
        let a = base.table();
        let mut rng = SplitMix64::new(9);
        for _ in 0..20 {
            let x = a.random_element(&mut rng);
            let y = a.random_element(&mut rng);
            let lhs = qr.project(&a.mul(&x, &y));
            let rhs = qr.bar().mul(&qr.project(&x), &qr.project(&y));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn null_extension_by_the_two_dim_module() {
        let (m2, _) = catalog::matrix2(FieldSpec::Rational);
        let ext = split_null_extension(&m2, &cay_actions(FieldSpec::Rational)).unwrap();
        assert_eq!(ext.dim(), 6);
        assert!(ext.unit().is_some());
        assert!(check_alternative(&ext).pass);
        // not associative: it disagrees with its nucleus
        assert!(ext.nucleus().dim() < 6);
    }

    #[test]
    fn null_extension_by_the_regular_module() {
        let (m2, _) = catalog::matrix2(FieldSpec::Rational);
        let ext = split_null_extension(&m2, &regular_actions(&m2)).unwrap();
        assert_eq!(ext.dim(), 8);
        assert_eq!(ext.nucleus().dim(), 8);
        assert!(check_alternative(&ext).pass);
    }

    #[test]
    fn null_extension_with_zeroed_right_action_fails_alternativity() {
        let (m2, _) = catalog::matrix2(FieldSpec::Rational);
        let mut actions = cay_actions(FieldSpec::Rational);
        let field = FieldSpec::Rational;
        actions.right = vec![vec![zero_row(&field, 2); 2]; 4];
        let ext = split_null_extension(&m2, &actions).unwrap();
        assert!(ext.unit().is_none());
        let report = check_alternative(&ext);
        assert!(!report.pass);
        assert!(report.witness.is_some());
    }

    #[test]
    fn null_extension_matches_zero_form_spec() {
        let (m2, _) = catalog::matrix2(FieldSpec::Rational);
        let ext = split_null_extension(&m2, &cay_actions(FieldSpec::Rational)).unwrap();
        let base = rationals();
        let v = BimoduleV::new(&base, 1, vec![vec![vec![FieldSpec::Rational.one()]]]).unwrap();
        let form = SkewForm::zero(&FieldSpec::Rational, 1, 1);
        let spec = KronSpec::new(base, v, form);
        let (built, _) = build_algebra(&spec).unwrap();
        assert!(ext.same_structure(&built));
    }

    #[test]
    fn three_generators_over_truncated_polynomials() {
        let base = coeff(catalog::truncated_poly3(FieldSpec::Rational));
        let t = base.table().basis_element(1);
        let t2 = base.table().basis_element(2);
        let zero = base.table().zero_element();
        let spec = three_generator_module(&base, [&t, &t2, &zero]).unwrap();
        assert_eq!(spec.v.dim(), 7);
        assert!(validate_form(&spec).pass);
        let (built, units) = build_algebra(&spec).unwrap();
        assert_eq!(built.dim(), 4 * 3 + 2 * 7);
        assert!(built.verify_matrix_units(&units).unwrap());
        assert!(check_alternative(&built).pass);
    }

    #[test]
    fn three_generators_with_zero_data_gives_free_module() {
        let base = coeff(catalog::dual_numbers(FieldSpec::Rational));
        let zero = base.table().zero_element();
        let spec = three_generator_module(&base, [&zero, &zero, &zero]).unwrap();
        assert_eq!(spec.v.dim(), 6);
        let b = base.table();
        for row in spec.form.gram() {
            for e in row {
                assert!(b.is_zero(e));
            }
        }
    }

    #[test]
    fn three_generators_with_scalar_relation_recover_the_doubling() {
        // (0, 0, gamma) leaves a free rank-two module whose pairing equals
        // the doubling with alpha = -gamma.
        let base = coeff(catalog::dual_numbers(FieldSpec::Rational));
        let field = FieldSpec::Rational;
        let zero = base.table().zero_element();
        let gamma = base.table().scale(&field.from_i64(2), base.unit());
        let spec = three_generator_module(&base, [&zero, &zero, &gamma]).unwrap();
        assert_eq!(spec.v.dim(), 4);
        let cdout = cd(&CDParams {
            base: base.clone(),
            alpha: base.table().neg(&gamma),
        })
        .unwrap();
        assert_eq!(spec.form.gram(), cdout.spec.form.gram());
        let (left, _) = build_algebra(&spec).unwrap();
        let (right, _) = build_algebra(&cdout.spec).unwrap();
        assert!(left.same_structure(&right));
    }

    #[test]
    fn criterion_accepts_the_octonion_witness() {
        let out = octonion(&rationals(), None).unwrap();
        let field = FieldSpec::Rational;
        let x = vec![field.one(), field.zero()];
        let y = vec![field.zero(), field.from_i64(-1)];
        let verdict = octonion_criterion(&out.spec, Some((&x, &y))).unwrap();
        assert_eq!(verdict, OctonionVerdict::Octonion { x, y });
        // without the witness the generator heuristic still finds one
        let verdict = octonion_criterion(&out.spec, None).unwrap();
        assert!(matches!(verdict, OctonionVerdict::Octonion { .. }));
    }

    #[test]
    fn criterion_rejects_the_zero_form() {
        let base = rationals();
        let params = CDParams {
            base: base.clone(),
            alpha: base.table().zero_element(),
        };
        let out = cd(&params).unwrap();
        let verdict = octonion_criterion(&out.spec, None).unwrap();
        assert_eq!(
            verdict,
            OctonionVerdict::NotOctonion {
                reason: "form has no unit value".into()
            }
        );
    }

    #[test]
    fn criterion_exhausts_small_finite_fields() {
        let f5 = FieldSpec::prime(5).unwrap();
        // nilpotent parameter: never an octonion, seen by full enumeration
        let base = coeff(catalog::dual_numbers(f5));
        let t = base.table().basis_element(1);
        let out = cd(&CDParams {
            base: base.clone(),
            alpha: t,
        })
        .unwrap();
        let verdict = octonion_criterion(&out.spec, None).unwrap();
        assert!(matches!(verdict, OctonionVerdict::NotOctonion { .. }));
        // invertible parameter: enumeration finds a witness
        let oct = octonion(&coeff(catalog::ground_field(f5)), None).unwrap();
        let verdict = octonion_criterion(&oct.spec, None).unwrap();
        match verdict {
            OctonionVerdict::Octonion { x, y } => {
                let b = oct.spec.b.table();
                assert_eq!(oct.spec.form.apply(b, &x, &y), *oct.spec.b.unit());
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn criterion_is_inconclusive_over_the_rationals_with_nilpotent_values() {
        let base = coeff(catalog::dual_numbers(FieldSpec::Rational));
        let t = base.table().basis_element(1);
        let out = cd(&CDParams {
            base: base.clone(),
            alpha: t,
        })
        .unwrap();
        let verdict = octonion_criterion(&out.spec, None).unwrap();
        assert!(matches!(verdict, OctonionVerdict::Unknown { .. }));
    }

    #[test]
    fn iso_check_flags_a_sign_flip() {
        let out = octonion(&rationals(), None).unwrap();
        let (built, _) = build_algebra(&out.spec).unwrap();
        assert!(iso_check(&built, &out.table, &out.iso).unwrap());
        let mut bad = out.iso.clone();
        for c in bad[4].iter_mut() {
            *c = c.neg();
        }
        assert!(!iso_check(&built, &out.table, &bad).unwrap());
    }
}
