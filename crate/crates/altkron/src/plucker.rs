//! Antisymmetric coordinate families u_ij and the exact quadruple-relation
//! checker for them, plus the determinant family α_ij = x_i·y_j − x_j·y_i
//! and a Jacobian certificate that its first two rows are algebraically
//! independent.
//!
//! The relation swept by [`check_plucker`] is
//!
//! ```text
//! u_ij·u_kl − u_ik·u_jl + u_il·u_jk = 0      for i < j < k < l,
//! ```
//!
//! which is what the pairing identity on module quadruples forces once
//! u_ab = ⟨v_a, v_b⟩ and antisymmetry are substituted. The near-variant
//! with middle factor u_lk instead of u_jl looks plausible but already
//! fails on the determinant family at n = 4; it stays available as
//! [`QuadForm::MiddleLk`] so the mismatch can be demonstrated on purpose.
//!
//! Only the strict upper triangle is stored; u_ji = −u_ij and u_ii = 0 are
//! structural. Entries must commute pairwise so that products over
//! quadruples are unambiguous.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraTable, Element};
use crate::catalog;
use crate::error::Error;
use crate::poly::MultiPoly;
use crate::rng::SplitMix64;
use crate::scalar::{FieldSpec, Scalar};
use crate::linalg::Subspace;

/// Which quadruple relation to assemble. `Standard` is the checked form;
/// `MiddleLk` replaces the middle factor u_jl by u_lk and exists only to
/// reproduce the failure of that index pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadForm {
    Standard,
    MiddleLk,
}

/// An antisymmetric family over one commutative coefficient ring, stored
/// as the strict upper triangle in lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub enum PluckerFamily {
    /// Entries are polynomials sharing one variable list.
    Poly { n: usize, entries: Vec<MultiPoly> },
    /// Entries are pairwise commuting elements of one algebra.
    Ring {
        n: usize,
        table: AlgebraTable,
        entries: Vec<Element>,
    },
}

fn tri_len(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Position of the 0-based pair (i, j), i < j, in the stored triangle.
fn tri_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + j - i - 1
}

impl PluckerFamily {
    pub fn poly(n: usize, entries: Vec<MultiPoly>) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::Invalid("a coordinate family needs n >= 2".into()));
        }
        if entries.len() != tri_len(n) {
            return Err(Error::Invalid(format!(
                "expected {} upper-triangle entries for n = {n}, got {}",
                tri_len(n),
                entries.len()
            )));
        }
        if let Some(first) = entries.first() {
            for p in &entries[1..] {
                if p.field() != first.field() || p.vars() != first.vars() {
                    return Err(Error::Invalid(
                        "family entries must share one polynomial ring".into(),
                    ));
                }
            }
        }
        Ok(PluckerFamily::Poly { n, entries })
    }

    pub fn ring(table: &AlgebraTable, n: usize, entries: Vec<Element>) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::Invalid("a coordinate family needs n >= 2".into()));
        }
        if entries.len() != tri_len(n) {
            return Err(Error::Invalid(format!(
                "expected {} upper-triangle entries for n = {n}, got {}",
                tri_len(n),
                entries.len()
            )));
        }
        for x in &entries {
            if x.len() != table.dim() {
                return Err(Error::DimensionMismatch {
                    expected: table.dim(),
                    got: x.len(),
                });
            }
        }
        for (i, x) in entries.iter().enumerate() {
            for y in entries.iter().skip(i + 1) {
                if !table.is_zero(&table.commutator(x, y)) {
                    return Err(Error::Invalid(
                        "family entries must commute pairwise".into(),
                    ));
                }
            }
        }
        Ok(PluckerFamily::Ring {
            n,
            table: table.clone(),
            entries,
        })
    }

    /// Reads a family off a full pairing matrix, validating that the
    /// diagonal vanishes and the matrix is antisymmetric.
    pub fn from_gram(table: &AlgebraTable, gram: &[Vec<Element>]) -> Result<Self, Error> {
        let n = gram.len();
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid("pairing matrix must be square".into()));
        }
        for i in 0..n {
            if !table.is_zero(&gram[i][i]) {
                return Err(Error::Invalid(format!(
                    "pairing matrix has a nonzero diagonal entry at {i}"
                )));
            }
            for j in (i + 1)..n {
                if !table.is_zero(&table.add(&gram[i][j], &gram[j][i])) {
                    return Err(Error::Invalid(format!(
                        "pairing matrix is not antisymmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let mut entries = Vec::with_capacity(tri_len(n));
        for i in 0..n {
            for j in (i + 1)..n {
                entries.push(gram[i][j].clone());
            }
        }
        PluckerFamily::ring(table, n, entries)
    }

    pub fn n(&self) -> usize {
        match self {
            PluckerFamily::Poly { n, .. } | PluckerFamily::Ring { n, .. } => *n,
        }
    }

    /// Signed entry u_ij for 1-based i ≠ j, as a polynomial. `None` when
    /// the family is not polynomial or the indices are out of range.
    pub fn poly_entry(&self, i: usize, j: usize) -> Option<MultiPoly> {
        let PluckerFamily::Poly { n, entries } = self else {
            return None;
        };
        signed(*n, i, j, entries, |p| p.neg())
    }

    /// Signed entry u_ij for 1-based i ≠ j, as an algebra element.
    pub fn ring_entry(&self, i: usize, j: usize) -> Option<Element> {
        let PluckerFamily::Ring { n, table, entries } = self else {
            return None;
        };
        signed(*n, i, j, entries, |x| table.neg(x))
    }
}

fn signed<T: Clone>(
    n: usize,
    i: usize,
    j: usize,
    entries: &[T],
    neg: impl Fn(&T) -> T,
) -> Option<T> {
    if i == j || i < 1 || j < 1 || i > n || j > n {
        return None;
    }
    if i < j {
        Some(entries[tri_index(n, i - 1, j - 1)].clone())
    } else {
        Some(neg(&entries[tri_index(n, j - 1, i - 1)]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PluckerReport {
    pub pass: bool,
    /// 1-based quadruple (i, j, k, l) of the first violated relation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[usize; 4]>,
}

fn first_violation<T>(
    n: usize,
    form: QuadForm,
    entry: &dyn Fn(usize, usize) -> T,
    mul: &dyn Fn(&T, &T) -> T,
    add: &dyn Fn(&T, &T) -> T,
    sub: &dyn Fn(&T, &T) -> T,
    is_zero: &dyn Fn(&T) -> bool,
) -> Option<[usize; 4]> {
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                for l in (k + 1)..=n {
                    let head = mul(&entry(i, j), &entry(k, l));
                    let tail = mul(&entry(i, l), &entry(j, k));
                    let total = match form {
                        QuadForm::Standard => {
                            let mid = mul(&entry(i, k), &entry(j, l));
                            add(&sub(&head, &mid), &tail)
                        }
                        QuadForm::MiddleLk => {
                            let mid = mul(&entry(i, k), &entry(l, k));
                            add(&add(&head, &mid), &tail)
                        }
                    };
                    if !is_zero(&total) {
                        return Some([i, j, k, l]);
                    }
                }
            }
        }
    }
    None
}

/// Sweeps every quadruple i < j < k < l exactly. The pass is vacuous for
/// n < 4.
pub fn check_plucker(fam: &PluckerFamily) -> PluckerReport {
    check_plucker_form(fam, QuadForm::Standard)
}

pub fn check_plucker_form(fam: &PluckerFamily, form: QuadForm) -> PluckerReport {
    let witness = match fam {
        PluckerFamily::Poly { n, .. } => first_violation(
            *n,
            form,
            &|i, j| fam.poly_entry(i, j).expect("indices stay in range"),
            &|x, y| x.mul(y).expect("entries share one ring"),
            &|x, y| x.add(y).expect("entries share one ring"),
            &|x, y| x.sub(y).expect("entries share one ring"),
            &|x| x.is_zero(),
        ),
        PluckerFamily::Ring { n, table, .. } => first_violation(
            *n,
            form,
            &|i, j| fam.ring_entry(i, j).expect("indices stay in range"),
            &|x, y| table.mul(x, y),
            &|x, y| table.add(x, y),
            &|x, y| table.sub(x, y),
            &|x| table.is_zero(x),
        ),
    };
    PluckerReport {
        pass: witness.is_none(),
        witness,
    }
}

/// The determinant family over the rationals: α_ij = x_i·y_j − x_j·y_i in
/// the 2n variables x_1..x_n, y_1..y_n.
pub fn grassmann_alphas(n: usize) -> Result<PluckerFamily, Error> {
    if n < 2 {
        return Err(Error::Invalid(
            "the determinant family needs n >= 2".into(),
        ));
    }
    let field = FieldSpec::rational();
    let mut vars = Vec::with_capacity(2 * n);
    for i in 1..=n {
        vars.push(format!("x{i}"));
    }
    for i in 1..=n {
        vars.push(format!("y{i}"));
    }
    let var = |k: usize| MultiPoly::var(field, vars.clone(), k);
    let mut entries = Vec::with_capacity(tri_len(n));
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = var(i).mul(&var(n + j)).expect("one shared ring");
            let rhs = var(j).mul(&var(n + i)).expect("one shared ring");
            entries.push(lhs.sub(&rhs).expect("one shared ring"));
        }
    }
    PluckerFamily::poly(n, entries)
}

/// The family u_ij = a_i − a_j for given pairwise commuting elements.
pub fn difference_family(table: &AlgebraTable, elems: &[Element]) -> Result<PluckerFamily, Error> {
    let n = elems.len();
    if n < 2 {
        return Err(Error::Invalid(
            "a difference family needs at least two elements".into(),
        ));
    }
    for x in elems {
        if x.len() != table.dim() {
            return Err(Error::DimensionMismatch {
                expected: table.dim(),
                got: x.len(),
            });
        }
    }
    let mut entries = Vec::with_capacity(tri_len(n));
    for i in 0..n {
        for j in (i + 1)..n {
            entries.push(table.sub(&elems[i], &elems[j]));
        }
    }
    PluckerFamily::ring(table, n, entries)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub n: usize,
    /// 2n − 3, the rank a certificate point must reach.
    pub rank_needed: usize,
    pub max_rank: usize,
    /// True once any sampled point has full Jacobian rank; never refuted.
    pub confirmed: bool,
    pub trials_used: usize,
    /// The certificate point, coordinates as printed scalars.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
}

/// Certifies that α_12, …, α_1n, α_23, …, α_2n are algebraically
/// independent by finding one rational point where their Jacobian has full
/// rank 2n − 3. Rank deficiency at every sampled point is inconclusive,
/// never a refutation. All-zero draws are skipped: the Jacobian of a
/// quadratic vanishes there. Only characteristic 0 is accepted, since a
/// full-rank Jacobian certifies independence only there.
pub fn independence_check(
    field: FieldSpec,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<IndependenceReport, Error> {
    if field.characteristic() != 0 {
        return Err(Error::CharZeroOnly);
    }
    if n < 3 {
        return Err(Error::Invalid(
            "independence of the first two rows needs n >= 3".into(),
        ));
    }
    let fam = grassmann_alphas(n)?;
    let PluckerFamily::Poly { entries, .. } = &fam else {
        unreachable!("the determinant family is polynomial");
    };
    // Lexicographic storage puts the rows 1 and 2 entries first.
    let rank_needed = 2 * n - 3;
    let jacobian: Vec<Vec<MultiPoly>> = entries[..rank_needed]
        .iter()
        .map(|p| (0..2 * n).map(|v| p.derivative(v)).collect())
        .collect();
    let mut rng = SplitMix64::new(seed);
    let mut max_rank = 0;
    for t in 0..trials {
        let point: Vec<Scalar> = (0..2 * n).map(|_| rng.scalar(&field)).collect();
        if point.iter().all(|s| s.is_zero()) {
            continue;
        }
        let rows: Vec<Vec<Scalar>> = jacobian
            .iter()
            .map(|row| row.iter().map(|p| p.eval(&point)).collect())
            .collect();
        let rank = Subspace::span(field, 2 * n, rows).dim();
        max_rank = max_rank.max(rank);
        if rank == rank_needed {
            return Ok(IndependenceReport {
                n,
                rank_needed,
                max_rank,
                confirmed: true,
                trials_used: t + 1,
                point: Some(point.iter().map(|s| s.to_string()).collect()),
            });
        }
    }
    Ok(IndependenceReport {
        n,
        rank_needed,
        max_rank,
        confirmed: false,
        trials_used: trials,
        point: None,
    })
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    format: u32,
    n: usize,
    field: FieldSpec,
    entries: BTreeMap<String, serde_json::Value>,
}

/// File form of a family: scalar entries are written as strings over the
/// named field, polynomial entries as full polynomial values. Missing
/// pairs are zero. Families over a general algebra have no file form.
pub fn family_to_json(fam: &PluckerFamily) -> Result<serde_json::Value, Error> {
    let mut entries = BTreeMap::new();
    let (n, field) = match fam {
        PluckerFamily::Poly { n, entries: es } => {
            let field = es
                .first()
                .map(|p| p.field())
                .unwrap_or_else(FieldSpec::rational);
            let mut idx = 0;
            for i in 1..=*n {
                for j in (i + 1)..=*n {
                    if !es[idx].is_zero() {
                        entries.insert(
                            format!("{i},{j}"),
                            serde_json::to_value(&es[idx])
                                .expect("polynomial serialization cannot fail"),
                        );
                    }
                    idx += 1;
                }
            }
            (*n, field)
        }
        PluckerFamily::Ring { n, table, entries: es } => {
            if table.dim() != 1 {
                return Err(Error::Invalid(
                    "only scalar and polynomial families have a file form".into(),
                ));
            }
            let mut idx = 0;
            for i in 1..=*n {
                for j in (i + 1)..=*n {
                    if !table.is_zero(&es[idx]) {
                        entries.insert(
                            format!("{i},{j}"),
                            serde_json::Value::String(es[idx][0].to_string()),
                        );
                    }
                    idx += 1;
                }
            }
            (*n, table.field())
        }
    };
    let repr = FamilyRepr {
        format: 1,
        n,
        field,
        entries,
    };
    Ok(serde_json::to_value(repr).expect("family serialization cannot fail"))
}

pub fn family_from_json(value: &serde_json::Value) -> Result<PluckerFamily, Error> {
    let repr: FamilyRepr = serde_json::from_value(value.clone())
        .map_err(|e| Error::Invalid(format!("malformed family file: {e}")))?;
    if repr.format != 1 {
        return Err(Error::Invalid(format!(
            "unsupported family format {}",
            repr.format
        )));
    }
    let n = repr.n;
    if n < 2 {
        return Err(Error::Invalid("a coordinate family needs n >= 2".into()));
    }
    let mut parsed: BTreeMap<usize, serde_json::Value> = BTreeMap::new();
    for (key, val) in &repr.entries {
        let parts: Vec<&str> = key.split(',').collect();
        let bad = || Error::Invalid(format!("entry key {key:?} is not \"i,j\" with i < j <= n"));
        if parts.len() != 2 {
            return Err(bad());
        }
        let i: usize = parts[0].trim().parse().map_err(|_| bad())?;
        let j: usize = parts[1].trim().parse().map_err(|_| bad())?;
        if i < 1 || i >= j || j > n {
            return Err(bad());
        }
        parsed.insert(tri_index(n, i - 1, j - 1), val.clone());
    }
    let any_poly = parsed.values().any(|v| !v.is_string());
    let any_scalar = parsed.values().any(|v| v.is_string());
    if any_poly && any_scalar {
        return Err(Error::Invalid(
            "family entries must be all scalars or all polynomials".into(),
        ));
    }
    if any_poly {
        let mut polys: BTreeMap<usize, MultiPoly> = BTreeMap::new();
        for (idx, val) in &parsed {
            let p: MultiPoly = serde_json::from_value(val.clone())
                .map_err(|e| Error::Invalid(format!("malformed polynomial entry: {e}")))?;
            if p.field() != repr.field {
                return Err(Error::FieldMismatch(repr.field, p.field()));
            }
            polys.insert(*idx, p);
        }
        let vars = polys
            .values()
            .next()
            .map(|p| p.vars().to_vec())
            .unwrap_or_default();
        let entries = (0..tri_len(n))
            .map(|idx| {
                polys
                    .remove(&idx)
                    .unwrap_or_else(|| MultiPoly::zero(repr.field, vars.clone()))
            })
            .collect();
        PluckerFamily::poly(n, entries)
    } else {
        let table = catalog::ground_field(repr.field);
        let mut entries = vec![table.zero_element(); tri_len(n)];
        for (idx, val) in &parsed {
            let text = val.as_str().expect("checked string-ness above");
            entries[*idx] = vec![repr.field.parse(text)?];
        }
        PluckerFamily::ring(&table, n, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rational() -> FieldSpec {
        FieldSpec::rational()
    }

    fn scalar_family(values: &[i64]) -> PluckerFamily {
        let table = catalog::ground_field(rational());
        let elems: Vec<Element> = values.iter().map(|v| vec![rational().from_i64(*v)]).collect();
        difference_family(&table, &elems).unwrap()
    }

    #[test]
    fn determinant_entry_is_the_two_by_two_determinant() {
        let fam = grassmann_alphas(2).unwrap();
        let a12 = fam.poly_entry(1, 2).unwrap();
        assert_eq!(a12.num_terms(), 2);
        // x = (1, 0), y = (0, 1): the determinant is 1
        let point = vec![
            rational().one(),
            rational().zero(),
            rational().zero(),
            rational().one(),
        ];
        assert!(a12.eval(&point).is_one());
        assert_eq!(fam.poly_entry(2, 1).unwrap(), a12.neg());
        assert!(fam.poly_entry(1, 1).is_none());
        assert!(check_plucker(&fam).pass);
    }

    #[test]
    fn determinant_family_passes_through_n7() {
        for n in 2..=7 {
            let report = check_plucker(&grassmann_alphas(n).unwrap());
            assert!(report.pass, "n = {n}: {:?}", report.witness);
        }
    }

    #[test]
    fn quadruple_relation_expands_to_zero_by_hand() {
        // Rebuild the four-index relation from raw variables, bypassing
        // the family code entirely.
        let field = rational();
        let vars: Vec<String> = (1..=4)
            .map(|i| format!("x{i}"))
            .chain((1..=4).map(|i| format!("y{i}")))
            .collect();
        let var = |k: usize| MultiPoly::var(field, vars.clone(), k);
        let det = |i: usize, j: usize| {
            var(i - 1)
                .mul(&var(4 + j - 1))
                .unwrap()
                .sub(&var(j - 1).mul(&var(4 + i - 1)).unwrap())
                .unwrap()
        };
        let total = det(1, 2)
            .mul(&det(3, 4))
            .unwrap()
            .sub(&det(1, 3).mul(&det(2, 4)).unwrap())
            .unwrap()
            .add(&det(1, 4).mul(&det(2, 3)).unwrap())
            .unwrap();
        assert!(total.is_zero());
    }

    #[test]
    fn middle_lk_variant_fails_on_the_determinant_family() {
        let fam = grassmann_alphas(4).unwrap();
        let report = check_plucker_form(&fam, QuadForm::MiddleLk);
        assert!(!report.pass);
        assert_eq!(report.witness, Some([1, 2, 3, 4]));
        assert!(check_plucker_form(&fam, QuadForm::Standard).pass);
    }

    #[test]
    fn row_reduction_relation_holds() {
        // u_12 u_ij + u_1i u_j2 + u_1j u_2i = 0 for 2 < i < j, the identity
        // that rewrites any entry through the first two rows.
        let n = 6;
        let fam = grassmann_alphas(n).unwrap();
        let u = |i, j| fam.poly_entry(i, j).unwrap();
        for i in 3..=n {
            for j in (i + 1)..=n {
                let total = u(1, 2)
                    .mul(&u(i, j))
                    .unwrap()
                    .add(&u(1, i).mul(&u(j, 2)).unwrap())
                    .unwrap()
                    .add(&u(1, j).mul(&u(2, i)).unwrap())
                    .unwrap();
                assert!(total.is_zero(), "failed at ({i}, {j})");
            }
        }
    }

    #[test]
    fn difference_family_passes() {
        let fam = scalar_family(&[0, 1, 2, 3]);
        assert_eq!(fam.ring_entry(1, 2).unwrap(), vec![rational().from_i64(-1)]);
        assert!(check_plucker(&fam).pass);
    }

    #[test]
    fn equal_elements_give_the_zero_family() {
        let fam = scalar_family(&[5, 5, 5]);
        for i in 1..=3 {
            for j in (i + 1)..=3 {
                assert!(fam.ring_entry(i, j).unwrap()[0].is_zero());
            }
        }
        assert!(check_plucker(&fam).pass);
    }

    #[test]
    fn perturbed_family_fails_with_the_first_quadruple() {
        let PluckerFamily::Poly { mut entries, .. } = grassmann_alphas(4).unwrap() else {
            unreachable!()
        };
        let one = MultiPoly::constant(rational(), entries[0].vars().to_vec(), rational().one());
        entries[0] = entries[0].add(&one).unwrap();
        let fam = PluckerFamily::poly(4, entries).unwrap();
        let report = check_plucker(&fam);
        assert!(!report.pass);
        assert_eq!(report.witness, Some([1, 2, 3, 4]));
    }

    #[test]
    fn noncommuting_entries_are_rejected() {
        let table = catalog::upper_triangular2(rational());
        let entries = vec![
            table.basis_element(0),
            table.basis_element(1),
            table.basis_element(2),
        ];
        let err = PluckerFamily::ring(&table, 3, entries).unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
    }

    #[test]
    fn gram_matrix_must_be_antisymmetric() {
        let table = catalog::ground_field(rational());
        let one = vec![rational().one()];
        let zero = table.zero_element();
        let bad = vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]];
        assert!(PluckerFamily::from_gram(&table, &bad).is_err());
        let good = vec![
            vec![zero.clone(), one.clone()],
            vec![vec![rational().from_i64(-1)], zero.clone()],
        ];
        let fam = PluckerFamily::from_gram(&table, &good).unwrap();
        assert_eq!(fam.ring_entry(2, 1).unwrap(), vec![rational().from_i64(-1)]);
    }

    #[test]
    fn independence_certificate_for_small_n() {
        let r3 = independence_check(rational(), 3, 10, 1).unwrap();
        assert!(r3.confirmed);
        assert_eq!(r3.rank_needed, 3);
        assert_eq!(r3.max_rank, 3);
        assert!(r3.point.is_some());
        let r5 = independence_check(rational(), 5, 10, 1).unwrap();
        assert!(r5.confirmed);
        assert_eq!(r5.max_rank, 7);
    }

    #[test]
    fn independence_refuses_positive_characteristic() {
        let err = independence_check(FieldSpec::prime(5).unwrap(), 4, 3, 7).unwrap_err();
        assert!(matches!(err, Error::CharZeroOnly));
    }

    #[test]
    fn zero_trials_are_inconclusive() {
        let report = independence_check(rational(), 4, 0, 9).unwrap();
        assert!(!report.confirmed);
        assert_eq!(report.max_rank, 0);
        assert_eq!(report.trials_used, 0);
        assert!(report.point.is_none());
    }

    #[test]
    fn polynomial_family_round_trips_through_json() {
        let fam = grassmann_alphas(3).unwrap();
        let value = family_to_json(&fam).unwrap();
        let back = family_from_json(&value).unwrap();
        assert_eq!(back, fam);
    }

    #[test]
    fn scalar_family_round_trips_through_json() {
        let fam = scalar_family(&[0, 2, 5]);
        let value = family_to_json(&fam).unwrap();
        let back = family_from_json(&value).unwrap();
        assert_eq!(back, fam);
        assert!(check_plucker(&back).pass);
    }

    #[test]
    fn sparse_entries_default_to_zero() {
        let value = serde_json::json!({
            "format": 1,
            "n": 3,
            "field": {"kind": "rational"},
            "entries": {"1,2": "7"}
        });
        let fam = family_from_json(&value).unwrap();
        assert_eq!(fam.ring_entry(1, 2).unwrap(), vec![rational().from_i64(7)]);
        assert!(fam.ring_entry(1, 3).unwrap()[0].is_zero());
        let bad_key = serde_json::json!({
            "format": 1,
            "n": 3,
            "field": {"kind": "rational"},
            "entries": {"2,1": "7"}
        });
        assert!(family_from_json(&bad_key).is_err());
    }
}
