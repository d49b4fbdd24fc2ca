//! Recovers the building data of a unital alternative algebra containing a
//! split copy of the two-by-two matrix ring: the even/odd decomposition,
//! the coefficient ring sitting diagonally inside the even part, the module
//! half with its pairing, and a basis isomorphism onto the table rebuilt
//! from the recovered data.
//!
//! Stages that later stages depend on fail hard with [`Error::StageFailed`]
//! naming the stage. Every identity the recovery relies on is additionally
//! swept exactly over basis tuples and recorded as a named flag in
//! [`CoordReport`]; `pass` is the conjunction of all flags.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{iso_check, AlgebraTable, Element, MatrixUnits};
use crate::error::Error;
use crate::kron::{build_algebra, BimoduleV, CoeffRing, KronSpec, SkewForm};
use crate::linalg::{invert, Row, Subspace};
use crate::scalar::Scalar;

/// The splitting induced by the matrix units: `even` associates with every
/// pair of units, `odd` is spanned by the associators themselves.
#[derive(Debug, Clone)]
pub struct Grading {
    pub even: Subspace,
    pub odd: Subspace,
}

/// The odd part split by the idempotents: `v1` is fixed by left
/// multiplication with E11, `v2` by E22. Left multiplication by E12 and
/// E21 moves between them, see [`pi12`] and [`pi21`].
#[derive(Debug, Clone)]
pub struct CayleySplit {
    pub v1: Subspace,
    pub v2: Subspace,
}

/// Dimensions of the recovered pieces and one boolean per swept check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoordReport {
    pub dims: BTreeMap<String, usize>,
    pub flags: BTreeMap<String, bool>,
    pub pass: bool,
}

/// Everything recovered from one algebra. `iso` maps input coordinates to
/// the coordinates of `build_algebra(&spec)`; its inverse has the elements
/// of `reg_basis`, then the `v1` basis, then the E12 images of that basis
/// as columns.
#[derive(Debug, Clone)]
pub struct CoordinatizationResult {
    pub grading: Grading,
    pub za: Subspace,
    pub reg_basis: Vec<Element>,
    pub split: CayleySplit,
    pub gram_values: Vec<Vec<Element>>,
    pub spec: KronSpec,
    pub iso: Vec<Row>,
    pub report: CoordReport,
}

fn stage(stage: &'static str, detail: String) -> Error {
    Error::StageFailed { stage, detail }
}

fn units4(e: &MatrixUnits) -> [&Element; 4] {
    [e.e11(), e.e12(), e.e21(), e.e22()]
}

/// Symplectic involution on the matrix-unit span, indexed like [`units4`].
fn unit_star(a: &AlgebraTable, e: &MatrixUnits, k: usize) -> Element {
    match k {
        0 => e.e22().clone(),
        1 => a.neg(e.e12()),
        2 => a.neg(e.e21()),
        _ => e.e11().clone(),
    }
}

/// Splits the algebra into the subspace associating with all pairs of
/// matrix units and the span of those associators. Fails when the two do
/// not meet trivially or do not fill the algebra.
pub fn decompose(a: &AlgebraTable, e: &MatrixUnits) -> Result<Grading, Error> {
    let h = e.subspace(a.field(), a.dim());
    let full = a.full_subspace();
    let odd = a.associator_subspace(&full, &h, &h);
    let even = a.solve_within(&full, |x| {
        let mut conds = Vec::with_capacity(16);
        for u in units4(e) {
            for w in units4(e) {
                conds.push(a.associator(x, u, w));
            }
        }
        conds
    });
    if even.dim() + odd.dim() != a.dim() || even.intersect(&odd).dim() != 0 {
        return Err(stage(
            "decompose",
            format!(
                "associating part (dim {}) and associator span (dim {}) do not split the algebra (dim {})",
                even.dim(),
                odd.dim(),
                a.dim()
            ),
        ));
    }
    Ok(Grading { even, odd })
}

/// The elements of the even part commuting with all four matrix units.
/// Fails unless the result commutes with the odd part and associates with
/// everything, since later stages rearrange such products freely.
pub fn extract_za(
    a: &AlgebraTable,
    e: &MatrixUnits,
    grading: &Grading,
) -> Result<Subspace, Error> {
    let h = e.subspace(a.field(), a.dim());
    let za = a.centralizer(&h, &grading.even);
    for (zi, z) in za.basis().iter().enumerate() {
        for (mi, m) in grading.odd.basis().iter().enumerate() {
            if !a.is_zero(&a.commutator(z, m)) {
                return Err(stage(
                    "extract_za",
                    format!("coefficient candidate {zi} fails to commute with odd basis element {mi}"),
                ));
            }
        }
        for i in 0..a.dim() {
            let bi = a.basis_element(i);
            for j in 0..a.dim() {
                if !a.is_zero(&a.associator(z, &bi, &a.basis_element(j))) {
                    return Err(stage(
                        "extract_za",
                        format!("coefficient candidate {zi} associates nontrivially with basis pair ({i}, {j})"),
                    ));
                }
            }
        }
    }
    Ok(za)
}

/// Certifies that the products z·E_pq, matrix slot major, form a basis of
/// the even part, and packages the coefficient ring read off from the
/// products of the z basis. The returned elements are that basis in the
/// order the rebuilt table uses.
pub fn verify_tensor(
    a: &AlgebraTable,
    e: &MatrixUnits,
    grading: &Grading,
    za: &Subspace,
) -> Result<(CoeffRing, Vec<Element>), Error> {
    if grading.even.dim() != 4 * za.dim() {
        return Err(stage(
            "verify_tensor",
            format!(
                "even part has dim {}, not four times the coefficient dim {}",
                grading.even.dim(),
                za.dim()
            ),
        ));
    }
    let mut cols = Vec::with_capacity(4 * za.dim());
    for u in units4(e) {
        for z in za.basis() {
            cols.push(a.mul(z, u));
        }
    }
    let spanned = a.span(cols.clone());
    if spanned.dim() != cols.len() || !spanned.is_subspace_of(&grading.even) {
        return Err(stage(
            "verify_tensor",
            "products of the coefficient basis with the matrix units do not form a basis of the even part".into(),
        ));
    }
    let mut products = Vec::with_capacity(za.dim());
    for zi in za.basis() {
        let mut row = Vec::with_capacity(za.dim());
        for zj in za.basis() {
            let coords = za.coords_of(&a.mul(zi, zj)).ok_or_else(|| {
                stage(
                    "verify_tensor",
                    "coefficient part is not closed under the product".into(),
                )
            })?;
            row.push(coords);
        }
        products.push(row);
    }
    let unit_coords = za.coords_of(a.unit_or_err()?).ok_or_else(|| {
        stage(
            "verify_tensor",
            "the unit does not lie in the coefficient part".into(),
        )
    })?;
    let names = (0..za.dim()).map(|i| format!("z{}", i + 1)).collect();
    let table = AlgebraTable::from_products(a.field(), names, products, Some(unit_coords))?;
    let ring = CoeffRing::new(table).map_err(|err| {
        stage(
            "verify_tensor",
            format!("recovered coefficient ring is defective: {err}"),
        )
    })?;
    Ok((ring, cols))
}

/// Splits the odd part into the E11 and E22 eigenspaces and certifies that
/// left multiplication by E12 and E21 swaps them bijectively.
pub fn split_cayley_part(
    a: &AlgebraTable,
    e: &MatrixUnits,
    grading: &Grading,
) -> Result<CayleySplit, Error> {
    let v1 = a.solve_within(&grading.odd, |x| vec![a.sub(&a.mul(e.e11(), x), x)]);
    let v2 = a.solve_within(&grading.odd, |x| vec![a.sub(&a.mul(e.e22(), x), x)]);
    if v1.dim() != v2.dim()
        || v1.dim() + v2.dim() != grading.odd.dim()
        || v1.intersect(&v2).dim() != 0
    {
        return Err(stage(
            "split_cayley",
            format!(
                "idempotent eigenspaces (dims {}, {}) do not split the odd part (dim {})",
                v1.dim(),
                v2.dim(),
                grading.odd.dim()
            ),
        ));
    }
    for v in v1.basis() {
        let w = a.mul(e.e12(), v);
        if !v2.contains(&w) || a.mul(e.e21(), &w) != *v {
            return Err(stage(
                "split_cayley",
                "E12 does not carry the first half into the second with E21 undoing it".into(),
            ));
        }
    }
    for w in v2.basis() {
        let v = a.mul(e.e21(), w);
        if !v1.contains(&v) || a.mul(e.e12(), &v) != *w {
            return Err(stage(
                "split_cayley",
                "E21 does not carry the second half into the first with E12 undoing it".into(),
            ));
        }
    }
    Ok(CayleySplit { v1, v2 })
}

/// First half to second half transition, left multiplication by E12.
pub fn pi12(a: &AlgebraTable, e: &MatrixUnits, v: &[Scalar]) -> Element {
    a.mul(e.e12(), v)
}

/// Second half to first half transition, left multiplication by E21.
pub fn pi21(a: &AlgebraTable, e: &MatrixUnits, w: &[Scalar]) -> Element {
    a.mul(e.e21(), w)
}

/// Pairs basis elements of the first half: u, v go to (E12·u)v − u(E12·v),
/// which must land in the coefficient part. Returns the values both as
/// elements of the input algebra and in coefficient coordinates. Skewness
/// and the module relations are left to the flag sweeps and to the form
/// validation of the rebuild.
pub fn extract_form(
    a: &AlgebraTable,
    e: &MatrixUnits,
    split: &CayleySplit,
    za: &Subspace,
) -> Result<(Vec<Vec<Element>>, Vec<Vec<Element>>), Error> {
    let basis = split.v1.basis();
    let n = basis.len();
    let mut values = vec![vec![a.zero_element(); n]; n];
    let mut coords = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        let ui2 = a.mul(e.e12(), &basis[i]);
        for j in 0..n {
            let val = a.sub(
                &a.mul(&ui2, &basis[j]),
                &a.mul(&basis[i], &a.mul(e.e12(), &basis[j])),
            );
            let c = za.coords_of(&val).ok_or_else(|| {
                stage(
                    "extract_form",
                    format!("pairing of module basis elements {i} and {j} lands outside the coefficient part"),
                )
            })?;
            values[i][j] = val;
            coords[i][j] = c;
        }
    }
    Ok((values, coords))
}

/// (ab)v = b(av), v(ab) = (vb)a, a(ur) = u(a*r), a(uv) = u(va),
/// (uv)a = (au)v, and (u,v,a) = [uv,a] for units a, b, odd u, v, and
/// arbitrary r.
fn flag_pr1(a: &AlgebraTable, e: &MatrixUnits, odd: &Subspace) -> bool {
    let units = units4(e);
    for aa in units {
        for bb in units {
            let ab = a.mul(aa, bb);
            for v in odd.basis() {
                if a.mul(&ab, v) != a.mul(bb, &a.mul(aa, v)) {
                    return false;
                }
                if a.mul(v, &ab) != a.mul(&a.mul(v, bb), aa) {
                    return false;
                }
            }
        }
    }
    for (k, aa) in units.iter().enumerate() {
        let astar = unit_star(a, e, k);
        for u in odd.basis() {
            for r in 0..a.dim() {
                let rb = a.basis_element(r);
                if a.mul(aa, &a.mul(u, &rb)) != a.mul(u, &a.mul(&astar, &rb)) {
                    return false;
                }
            }
        }
    }
    for aa in units {
        for u in odd.basis() {
            for v in odd.basis() {
                let uv = a.mul(u, v);
                if a.mul(aa, &uv) != a.mul(u, &a.mul(v, aa)) {
                    return false;
                }
                if a.mul(&uv, aa) != a.mul(&a.mul(aa, u), v) {
                    return false;
                }
                if a.associator(u, v, aa) != a.commutator(&uv, aa) {
                    return false;
                }
            }
        }
    }
    true
}

/// (mn)a = (am)n, a(mn) = m(na), (um)a = (ua*)m, a(mu) = m(a*u),
/// ((um)a)b = (um)(ba), b(a(mu)) = (ab)(mu), (um,a,b) = (um)[b,a], and
/// (b,a,mu) = [b,a](mu) for units a, b, even u, odd m, n.
fn flag_l1(a: &AlgebraTable, e: &MatrixUnits, grading: &Grading) -> bool {
    let units = units4(e);
    let stars: Vec<Element> = (0..4).map(|k| unit_star(a, e, k)).collect();
    for aa in units {
        for m in grading.odd.basis() {
            for n in grading.odd.basis() {
                let mn = a.mul(m, n);
                if a.mul(&mn, aa) != a.mul(&a.mul(aa, m), n) {
                    return false;
                }
                if a.mul(aa, &mn) != a.mul(m, &a.mul(n, aa)) {
                    return false;
                }
            }
        }
    }
    for (k, aa) in units.iter().enumerate() {
        let astar = &stars[k];
        for u in grading.even.basis() {
            for m in grading.odd.basis() {
                if a.mul(&a.mul(u, m), aa) != a.mul(&a.mul(u, astar), m) {
                    return false;
                }
                if a.mul(aa, &a.mul(m, u)) != a.mul(m, &a.mul(astar, u)) {
                    return false;
                }
            }
        }
    }
    for aa in units {
        for bb in units {
            let ba = a.mul(bb, aa);
            let ab = a.mul(aa, bb);
            let comm_ba = a.commutator(bb, aa);
            for u in grading.even.basis() {
                for m in grading.odd.basis() {
                    let um = a.mul(u, m);
                    let mu = a.mul(m, u);
                    if a.mul(&a.mul(&um, aa), bb) != a.mul(&um, &ba) {
                        return false;
                    }
                    if a.mul(bb, &a.mul(aa, &mu)) != a.mul(&ab, &mu) {
                        return false;
                    }
                    if a.associator(&um, aa, bb) != a.mul(&um, &comm_ba) {
                        return false;
                    }
                    if a.associator(bb, aa, &mu) != a.mul(&comm_ba, &mu) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The grading multiplies as even·even ⊆ even, even·odd and odd·even ⊆ odd,
/// odd·odd ⊆ even.
fn flag_l2(a: &AlgebraTable, grading: &Grading) -> bool {
    let even = &grading.even;
    let odd = &grading.odd;
    for x in even.basis() {
        for y in even.basis() {
            if !even.contains(&a.mul(x, y)) {
                return false;
            }
        }
        for y in odd.basis() {
            if !odd.contains(&a.mul(x, y)) || !odd.contains(&a.mul(y, x)) {
                return false;
            }
        }
    }
    for x in odd.basis() {
        for y in odd.basis() {
            if !even.contains(&a.mul(x, y)) {
                return false;
            }
        }
    }
    true
}

/// The even part is associative and the coefficient part is closed under
/// the product.
fn flag_l3(a: &AlgebraTable, grading: &Grading, za: &Subspace) -> bool {
    let even = grading.even.basis();
    for x in even {
        for y in even {
            for z in even {
                if !a.is_zero(&a.associator(x, y, z)) {
                    return false;
                }
            }
        }
    }
    for x in za.basis() {
        for y in za.basis() {
            if !za.contains(&a.mul(x, y)) {
                return false;
            }
        }
    }
    true
}

/// The coefficient part commutes with the odd part and associates with
/// every pair of algebra elements.
fn flag_l4(a: &AlgebraTable, grading: &Grading, za: &Subspace) -> bool {
    for z in za.basis() {
        for m in grading.odd.basis() {
            if !a.is_zero(&a.commutator(z, m)) {
                return false;
            }
        }
        for i in 0..a.dim() {
            let bi = a.basis_element(i);
            for j in 0..a.dim() {
                if !a.is_zero(&a.associator(z, &bi, &a.basis_element(j))) {
                    return false;
                }
            }
        }
    }
    true
}

/// Commutators inside the coefficient part annihilate the odd part from
/// both sides.
fn flag_l5(a: &AlgebraTable, grading: &Grading, za: &Subspace) -> bool {
    for (i, zi) in za.basis().iter().enumerate() {
        for zj in za.basis().iter().skip(i + 1) {
            let c = a.commutator(zi, zj);
            if a.is_zero(&c) {
                continue;
            }
            for m in grading.odd.basis() {
                if !a.is_zero(&a.mul(&c, m)) || !a.is_zero(&a.mul(m, &c)) {
                    return false;
                }
            }
        }
    }
    true
}

/// The four slot equations: with z the pairing of u and v,
/// u(1)v(1) = z·E21, u(1)v(2) = −z·E11, u(2)v(1) = z·E22,
/// u(2)v(2) = −z·E12, where u(2) abbreviates E12·u.
fn flag_uv(
    a: &AlgebraTable,
    e: &MatrixUnits,
    split: &CayleySplit,
    values: &[Vec<Element>],
) -> bool {
    let basis = split.v1.basis();
    for (i, u) in basis.iter().enumerate() {
        let u2 = a.mul(e.e12(), u);
        for (j, v) in basis.iter().enumerate() {
            let v2 = a.mul(e.e12(), v);
            let z = &values[i][j];
            if a.mul(u, v) != a.mul(z, e.e21()) {
                return false;
            }
            if a.mul(u, &v2) != a.neg(&a.mul(z, e.e11())) {
                return false;
            }
            if a.mul(&u2, v) != a.mul(z, e.e22()) {
                return false;
            }
            if a.mul(&u2, &v2) != a.neg(&a.mul(z, e.e12())) {
                return false;
            }
        }
    }
    true
}

/// Every pairing value is central in the whole algebra.
fn flag_pr3(a: &AlgebraTable, values: &[Vec<Element>]) -> bool {
    let center = a.center();
    values.iter().flatten().all(|v| center.contains(v))
}

/// z(u,v)·w + z(v,w)·u + z(w,u)·v = 0 over basis triples of the first
/// half, computed in the input algebra.
fn flag_e25(a: &AlgebraTable, split: &CayleySplit, values: &[Vec<Element>]) -> bool {
    let basis = split.v1.basis();
    let n = basis.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = a.mul(&values[i][j], &basis[k]);
                acc = a.add(&acc, &a.mul(&values[j][k], &basis[i]));
                acc = a.add(&acc, &a.mul(&values[k][i], &basis[j]));
                if !a.is_zero(&acc) {
                    return false;
                }
            }
        }
    }
    true
}

/// z(u,v)z(w,t) + z(v,w)z(u,t) + z(w,u)z(v,t) = 0 over basis quadruples,
/// computed in the input algebra.
fn flag_e26(a: &AlgebraTable, values: &[Vec<Element>]) -> bool {
    let n = values.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut acc = a.mul(&values[i][j], &values[k][l]);
                    acc = a.add(&acc, &a.mul(&values[j][k], &values[i][l]));
                    acc = a.add(&acc, &a.mul(&values[k][i], &values[j][l]));
                    if !a.is_zero(&acc) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Runs the full pipeline: decomposition, coefficient extraction, module
/// split, form extraction, rebuild, and the isomorphism certificate,
/// sweeping every identity the recovery relies on into a flag.
///
/// The input must be unital; the matrix unit relations are verified here.
/// Alternativity is the caller's precondition: it is a cubic sweep that
/// callers have typically already paid for, and a violated instance makes
/// some stage or flag fail instead.
pub fn coordinatize(a: &AlgebraTable, e: &MatrixUnits) -> Result<CoordinatizationResult, Error> {
    if !a.verify_matrix_units(e)? {
        return Err(stage(
            "precheck",
            "the four elements do not satisfy the matrix unit relations, so they span no split copy of the two-by-two matrix ring".into(),
        ));
    }
    let field = a.field();
    let dim = a.dim();
    let grading = decompose(a, e)?;
    let za = extract_za(a, e, &grading)?;
    let (ring, reg_basis) = verify_tensor(a, e, &grading, &za)?;
    let split = split_cayley_part(a, e, &grading)?;
    let (gram_values, gram_coords) = extract_form(a, e, &split, &za)?;

    let vdim = split.v1.dim();
    let mut action = Vec::with_capacity(za.dim());
    for z in za.basis() {
        let mut mat = vec![vec![field.zero(); vdim]; vdim];
        for (c, v) in split.v1.basis().iter().enumerate() {
            let coords = split.v1.coords_of(&a.mul(z, v)).ok_or_else(|| {
                stage(
                    "module_action",
                    format!("the coefficient action does not preserve the first half at basis column {c}"),
                )
            })?;
            for (r, s) in coords.into_iter().enumerate() {
                mat[r][c] = s;
            }
        }
        action.push(mat);
    }
    let module = BimoduleV::new(&ring, vdim, action)
        .map_err(|err| stage("module_action", err.to_string()))?;
    let form = SkewForm::new(za.dim(), vdim, gram_coords)?;
    let spec = KronSpec::new(ring, module, form);
    let (built, _) = build_algebra(&spec)?;

    let mut to_input = vec![vec![field.zero(); dim]; dim];
    for (c, col) in reg_basis
        .iter()
        .chain(split.v1.basis().iter())
        .map(|x| x.clone())
        .chain(split.v1.basis().iter().map(|v| a.mul(e.e12(), v)))
        .enumerate()
    {
        for (r, s) in col.into_iter().enumerate() {
            to_input[r][c] = s;
        }
    }
    let iso_ok = iso_check(&built, a, &to_input)?;
    if !iso_ok {
        return Err(stage(
            "iso",
            "the rebuilt table is not carried onto the input by the recovered basis".into(),
        ));
    }
    let iso = invert(&field, &to_input)
        .ok_or_else(|| stage("iso", "recovered basis matrix is singular".into()))?;

    let mut flags = BTreeMap::new();
    flags.insert(
        "c1".to_string(),
        grading.even.dim() + grading.odd.dim() == dim
            && grading.even.intersect(&grading.odd).dim() == 0,
    );
    flags.insert(
        "c2".to_string(),
        a.span(reg_basis.clone()).dim() == grading.even.dim(),
    );
    flags.insert("l1".to_string(), flag_l1(a, e, &grading));
    flags.insert("l2".to_string(), flag_l2(a, &grading));
    flags.insert("l3".to_string(), flag_l3(a, &grading, &za));
    flags.insert("l4".to_string(), flag_l4(a, &grading, &za));
    flags.insert("l5".to_string(), flag_l5(a, &grading, &za));
    flags.insert("pr1".to_string(), flag_pr1(a, e, &grading.odd));
    flags.insert("pr3".to_string(), flag_pr3(a, &gram_values));
    flags.insert("uv".to_string(), flag_uv(a, e, &split, &gram_values));
    flags.insert("e25".to_string(), flag_e25(a, &split, &gram_values));
    flags.insert("e26".to_string(), flag_e26(a, &gram_values));
    flags.insert("iso".to_string(), iso_ok);

    let mut dims = BTreeMap::new();
    dims.insert("A".to_string(), dim);
    dims.insert("A_a".to_string(), grading.even.dim());
    dims.insert("A_c".to_string(), grading.odd.dim());
    dims.insert("Z_a".to_string(), za.dim());
    dims.insert("V".to_string(), vdim);

    let pass = flags.values().all(|&b| b);
    Ok(CoordinatizationResult {
        grading,
        za,
        reg_basis,
        split,
        gram_values,
        spec,
        iso,
        report: CoordReport { dims, flags, pass },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MatrixUnits;
    use crate::catalog;
    use crate::constructions::{
        cay_actions, cd, ncd, octonion, octonion_criterion, split_null_extension, CDParams,
        OctonionVerdict,
    };
    use crate::scalar::FieldSpec;

    fn rational() -> FieldSpec {
        FieldSpec::rational()
    }

    fn rational_ring(table: AlgebraTable) -> CoeffRing {
        CoeffRing::new(table).unwrap()
    }

    fn dims_of(r: &CoordinatizationResult) -> Vec<usize> {
        ["A", "A_a", "A_c", "Z_a", "V"]
            .iter()
            .map(|k| r.report.dims[*k])
            .collect()
    }

    /// Kronecker product of two tables, basis index i·dim(b) + j.
    fn tensor(a: &AlgebraTable, b: &AlgebraTable) -> AlgebraTable {
        let field = a.field();
        let (da, db) = (a.dim(), b.dim());
        let dim = da * db;
        let outer = |x: &[Scalar], y: &[Scalar]| -> Element {
            let mut out = vec![field.zero(); dim];
            for (i, xi) in x.iter().enumerate() {
                for (j, yj) in y.iter().enumerate() {
                    out[i * db + j] = xi.mul(yj);
                }
            }
            out
        };
        let mut products = Vec::with_capacity(dim);
        let mut names = Vec::with_capacity(dim);
        for i in 0..da {
            for j in 0..db {
                names.push(format!("{}@{}", a.basis_names()[i], b.basis_names()[j]));
                let mut row = Vec::with_capacity(dim);
                for k in 0..da {
                    for l in 0..db {
                        row.push(outer(
                            &a.mul(&a.basis_element(i), &a.basis_element(k)),
                            &b.mul(&b.basis_element(j), &b.basis_element(l)),
                        ));
                    }
                }
                products.push(row);
            }
        }
        let unit = outer(a.unit().unwrap(), b.unit().unwrap());
        AlgebraTable::from_products(field, names, products, Some(unit)).unwrap()
    }

    #[test]
    fn matrix_ring_has_no_odd_part() {
        let (a, e) = catalog::matrix2(rational());
        let r = coordinatize(&a, &e).unwrap();
        assert_eq!(dims_of(&r), vec![4, 4, 0, 1, 0]);
        assert!(r.report.pass);
        assert_eq!(r.spec.b.dim(), 1);
        assert_eq!(r.iso.len(), 4);
    }

    #[test]
    fn octonion_round_trip_recovers_the_standard_data() {
        let base = rational_ring(catalog::ground_field(rational()));
        let oct = octonion(&base, None).unwrap();
        let r = coordinatize(&oct.table, &oct.units).unwrap();
        assert_eq!(dims_of(&r), vec![8, 4, 4, 1, 2]);
        assert!(r.report.pass, "flags: {:?}", r.report.flags);
        assert_eq!(r.spec.b.dim(), oct.spec.b.dim());
        assert_eq!(r.spec.v.dim(), oct.spec.v.dim());
        let minus_one = rational().from_i64(-1);
        assert_eq!(r.spec.form.entry(0, 1), &vec![minus_one]);
        assert!(matches!(
            octonion_criterion(&r.spec, None).unwrap(),
            OctonionVerdict::Octonion { .. }
        ));
    }

    #[test]
    fn report_carries_every_flag() {
        let base = rational_ring(catalog::ground_field(rational()));
        let oct = octonion(&base, None).unwrap();
        let r = coordinatize(&oct.table, &oct.units).unwrap();
        let expected = [
            "c1", "c2", "e25", "e26", "iso", "l1", "l2", "l3", "l4", "l5", "pr1", "pr3", "uv",
        ];
        let keys: Vec<&str> = r.report.flags.keys().map(|s| s.as_str()).collect();
        assert_eq!(keys, expected);
        assert!(r.report.flags.values().all(|&b| b));
    }

    #[test]
    fn doubling_over_dual_numbers_round_trips() {
        let base = rational_ring(catalog::dual_numbers(rational()));
        let alpha = base.table().basis_element(1);
        let out = cd(&CDParams {
            base: base.clone(),
            alpha,
        })
        .unwrap();
        let r = coordinatize(&out.table, &out.units).unwrap();
        assert_eq!(dims_of(&r), vec![16, 8, 8, 2, 4]);
        assert!(r.report.pass);
        assert!(r.spec.b.table().same_structure(base.table()));
        assert_eq!(r.spec.form.gram(), out.spec.form.gram());
    }

    #[test]
    fn noncommutative_doubling_round_trips_over_the_exterior_ring() {
        let base = rational_ring(catalog::grassmann2(rational()));
        let alpha = base.table().basis_element(3);
        let out = ncd(&CDParams { base, alpha }).unwrap();
        let r = coordinatize(&out.table, &out.units).unwrap();
        assert_eq!(dims_of(&r), vec![28, 16, 12, 4, 6]);
        assert!(r.report.pass, "flags: {:?}", r.report.flags);
        assert!(r
            .spec
            .b
            .table()
            .same_structure(&catalog::grassmann2(rational())));
    }

    #[test]
    fn null_extension_gives_a_zero_pairing() {
        let (m2, _) = catalog::matrix2(rational());
        let a = split_null_extension(&m2, &cay_actions(rational())).unwrap();
        let e = MatrixUnits::new(
            a.basis_element(0),
            a.basis_element(1),
            a.basis_element(2),
            a.basis_element(3),
        );
        let r = coordinatize(&a, &e).unwrap();
        assert_eq!(dims_of(&r), vec![6, 4, 2, 1, 1]);
        assert!(r.report.pass);
        assert!(r.spec.b.table().is_zero(r.spec.form.entry(0, 0)));
        assert!(r.gram_values[0][0].iter().all(|s| s.is_zero()));
    }

    #[test]
    fn tensor_factor_becomes_a_noncommutative_coefficient_ring() {
        let (m2, _) = catalog::matrix2(rational());
        let a = tensor(&m2, &m2);
        let field = rational();
        let unit_b = m2.unit().unwrap().clone();
        let embed = |k: usize| -> Element {
            let mut out = vec![field.zero(); 16];
            for (j, s) in unit_b.iter().enumerate() {
                out[k * 4 + j] = s.clone();
            }
            out
        };
        let e = MatrixUnits::new(embed(0), embed(1), embed(2), embed(3));
        let r = coordinatize(&a, &e).unwrap();
        assert_eq!(dims_of(&r), vec![16, 16, 0, 4, 0]);
        assert!(r.report.pass);
        assert!(r.spec.b.table().same_structure(&m2));
        let b = r.spec.b.table();
        let c = b.commutator(&b.basis_element(1), &b.basis_element(2));
        assert!(!b.is_zero(&c));
    }

    #[test]
    fn decomposition_is_independent_of_stage_order() {
        let base = rational_ring(catalog::dual_numbers(rational()));
        let out = octonion(&base, None).unwrap();
        let (a, e) = (&out.table, &out.units);
        let h = e.subspace(a.field(), a.dim());
        let full = a.full_subspace();
        let odd_first = a.associator_subspace(&full, &h, &h);
        let g = decompose(a, e).unwrap();
        let odd_second = a.associator_subspace(&full, &h, &h);
        assert_eq!(g.odd.basis(), odd_first.basis());
        assert_eq!(odd_first.basis(), odd_second.basis());
        let even_again = decompose(a, e).unwrap().even;
        assert_eq!(g.even.basis(), even_again.basis());
    }

    #[test]
    fn refuses_elements_that_are_not_matrix_units() {
        let base = rational_ring(catalog::ground_field(rational()));
        let oct = octonion(&base, None).unwrap();
        let e = &oct.units;
        let swapped = MatrixUnits::new(
            e.e12().clone(),
            e.e11().clone(),
            e.e21().clone(),
            e.e22().clone(),
        );
        let err = coordinatize(&oct.table, &swapped).unwrap_err();
        assert!(matches!(err, Error::StageFailed { stage: "precheck", .. }));
    }

    #[test]
    fn corrupted_product_is_caught() {
        let base = rational_ring(catalog::ground_field(rational()));
        let oct = octonion(&base, None).unwrap();
        let a = &oct.table;
        let mut products: Vec<Vec<Element>> = (0..8)
            .map(|i| {
                (0..8)
                    .map(|j| a.mul(&a.basis_element(i), &a.basis_element(j)))
                    .collect()
            })
            .collect();
        let one = rational().one();
        products[4][5][0] = products[4][5][0].add(&one);
        let names = a.basis_names().to_vec();
        let bad =
            AlgebraTable::from_products(rational(), names, products, a.unit().cloned()).unwrap();
        assert!(coordinatize(&bad, &oct.units).is_err());
    }
}
