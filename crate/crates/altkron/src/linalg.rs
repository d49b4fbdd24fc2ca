//! Exact dense linear algebra over a [`Scalar`] field: reduced row-echelon
//! forms, kernels, solves, and the [`Subspace`] type used for every computed
//! subspace in the crate.
//!
//! The echelon pivot rule is fixed (leftmost nonzero column, first available
//! row, leading entry scaled to 1, elimination up and down), so every
//! subspace basis is deterministic and golden-testable. Reduced row-echelon
//! form is unique, which also makes subspace equality a row-by-row
//! comparison.

use crate::scalar::{FieldSpec, Scalar};

pub type Row = Vec<Scalar>;

pub fn zero_row(field: &FieldSpec, len: usize) -> Row {
    vec![field.zero(); len]
}

/// In-place reduced row echelon form. Returns the pivot column of each
/// surviving row; zero rows are moved to the bottom and truncated away.
pub fn rref(rows: &mut Vec<Row>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = rows[rank][col].inv().expect("pivot entry is nonzero");
        for entry in rows[rank].iter_mut() {
            *entry = entry.mul(&inv);
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..ncols {
                    let delta = factor.mul(&rows[rank][c]);
                    rows[r][c] = rows[r][c].sub(&delta);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

/// Basis of the right kernel `{x : M x = 0}` of an `nrows x ncols` matrix,
/// one row per basis vector, in echelon form over the free columns.
pub fn kernel_basis(field: &FieldSpec, matrix: &[Row], ncols: usize) -> Vec<Row> {
    let mut m: Vec<Row> = matrix.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    let is_pivot = |c: usize| pivots.binary_search(&c).is_ok();
    for free in 0..ncols {
        if is_pivot(free) {
            continue;
        }
        let mut v = zero_row(field, ncols);
        v[free] = field.one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = row[free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Solves `M x = b` for one solution, or `None` if inconsistent.
pub fn solve(field: &FieldSpec, matrix: &[Row], b: &[Scalar]) -> Option<Row> {
    let ncols = matrix.first().map_or(0, Vec::len);
    let mut aug: Vec<Row> = matrix
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = zero_row(field, ncols);
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, or `None` when singular.
pub fn invert(field: &FieldSpec, matrix: &[Row]) -> Option<Vec<Row>> {
    let n = matrix.len();
    let mut aug: Vec<Row> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "invert requires a square matrix");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn rank(matrix: &[Row]) -> usize {
    let mut m = matrix.to_vec();
    rref(&mut m).len()
}

/// Matrix-vector product `M x`.
pub fn mat_vec(field: &FieldSpec, matrix: &[Row], x: &[Scalar]) -> Row {
    matrix
        .iter()
        .map(|row| {
            let mut acc = field.zero();
            for (a, b) in row.iter().zip(x) {
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        })
        .collect()
}

pub fn mat_mul(field: &FieldSpec, a: &[Row], b: &[Row]) -> Vec<Row> {
    let ncols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = zero_row(field, ncols);
            for (coeff, brow) in row.iter().zip(b) {
                if coeff.is_zero() {
                    continue;
                }
                for (o, e) in out.iter_mut().zip(brow) {
                    if !e.is_zero() {
                        *o = o.add(&coeff.mul(e));
                    }
                }
            }
            out
        })
        .collect()
}

/// A linear subspace of `F^ambient`, stored as its unique reduced
/// row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut r = zero_row(&field, ambient);
                r[i] = field.one();
                r
            })
            .collect();
        Subspace {
            field,
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn span(field: FieldSpec, ambient: usize, vectors: Vec<Row>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient, "spanning vector has wrong length");
        }
        let mut rows = vectors;
        let pivots = rref(&mut rows);
        Subspace {
            field,
            ambient,
            rows,
            pivots,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Row] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords_of(v).is_some()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside
    /// the subspace.
    pub fn coords_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient);
        let mut rem = v.to_vec();
        let mut coords = Vec::with_capacity(self.rows.len());
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = rem[pc].clone();
            coords.push(c.clone());
            if !c.is_zero() {
                for (r, e) in rem.iter_mut().zip(row) {
                    if !e.is_zero() {
                        *r = r.sub(&c.mul(e));
                    }
                }
            }
        }
        if rem.iter().all(Scalar::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    /// The vector with the given coordinates in the echelon basis.
    pub fn from_coords(&self, coords: &[Scalar]) -> Row {
        assert_eq!(coords.len(), self.dim());
        let mut out = zero_row(&self.field, self.ambient);
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (o, e) in out.iter_mut().zip(row) {
                if !e.is_zero() {
                    *o = o.add(&c.mul(e));
                }
            }
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.clone());
        Subspace::span(self.field, self.ambient, rows)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        // x = sum a_i u_i = sum b_j w_j: kernel of the ambient x (r+s)
        // matrix whose columns are u_1..u_r, -w_1..-w_s.
        let r = self.dim();
        let s = other.dim();
        if r == 0 || s == 0 {
            return Subspace::zero(self.field, self.ambient);
        }
        let matrix: Vec<Row> = (0..self.ambient)
            .map(|c| {
                let mut row = Vec::with_capacity(r + s);
                row.extend(self.rows.iter().map(|u| u[c].clone()));
                row.extend(other.rows.iter().map(|w| w[c].neg()));
                row
            })
            .collect();
        let combos = kernel_basis(&self.field, &matrix, r + s);
        let vectors = combos
            .iter()
            .map(|combo| self.from_coords(&combo[..r]))
            .collect();
        Subspace::span(self.field, self.ambient, vectors)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|v| other.contains(v))
    }

    /// Standard basis vectors at the non-pivot coordinates: a deterministic
    /// complement, used as coset representatives by quotient constructions.
    pub fn complement_coords(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| self.pivots.binary_search(c).is_err())
            .collect()
    }

    /// Reduces `v` modulo this subspace: subtracts the unique combination of
    /// echelon rows that clears the pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Row {
        assert_eq!(v.len(), self.ambient);
        let mut rem = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = rem[pc].clone();
            if !c.is_zero() {
                for (r, e) in rem.iter_mut().zip(row) {
                    if !e.is_zero() {
                        *r = r.sub(&c.mul(e));
                    }
                }
            }
        }
        rem
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn row(vals: &[i64]) -> Row {
        vals.iter().map(|&n| q().from_i64(n)).collect()
    }

    #[test]
    fn rref_canonical_example() {
        let mut rows = vec![row(&[2, 4, 6]), row(&[1, 2, 4]), row(&[0, 0, 1])];
        let pivots = rref(&mut rows);
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(rows, vec![row(&[1, 2, 0]), row(&[0, 0, 1])]);
    }

    #[test]
    fn kernel_of_rank_one_map() {
        let m = vec![row(&[1, 2, 3])];
        let k = kernel_basis(&q(), &m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let img = mat_vec(&q(), &m, v);
            assert!(img.iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn invert_round_trip() {
        let m = vec![row(&[1, 2]), row(&[3, 5])];
        let inv = invert(&q(), &m).unwrap();
        let prod = mat_mul(&q(), &m, &inv);
        assert_eq!(prod, vec![row(&[1, 0]), row(&[0, 1])]);
        assert!(invert(&q(), &vec![row(&[1, 2]), row(&[2, 4])]).is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = vec![row(&[1, 1]), row(&[1, -1])];
        let x = solve(&q(), &m, &row(&[3, 1])).unwrap();
        assert_eq!(x, row(&[2, 1]));
        let m2 = vec![row(&[1, 1]), row(&[2, 2])];
        assert!(solve(&q(), &m2, &row(&[1, 3])).is_none());
    }

    #[test]
    fn subspace_membership_and_coords() {
        let s = Subspace::span(q(), 3, vec![row(&[1, 0, 1]), row(&[0, 1, 1])]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&row(&[2, 3, 5])));
        assert!(!s.contains(&row(&[0, 0, 1])));
        let coords = s.coords_of(&row(&[2, 3, 5])).unwrap();
        assert_eq!(s.from_coords(&coords), row(&[2, 3, 5]));
    }

    fn random_subspace(g: &mut SplitMix64, ambient: usize) -> Subspace {
        let nvecs = g.below(ambient as u64 + 1) as usize;
        let vecs = (0..nvecs)
            .map(|_| g.scalar_vec(&q(), ambient))
            .collect();
        Subspace::span(q(), ambient, vecs)
    }

    #[test]
    fn dimension_formula_on_random_pairs() {
        let mut g = SplitMix64::new(2024);
        for _ in 0..50 {
            let s = random_subspace(&mut g, 5);
            let t = random_subspace(&mut g, 5);
            let sum = s.sum(&t);
            let int = s.intersect(&t);
            assert_eq!(sum.dim() + int.dim(), s.dim() + t.dim());
            assert!(int.is_subspace_of(&s) && int.is_subspace_of(&t));
            assert!(s.is_subspace_of(&sum) && t.is_subspace_of(&sum));
        }
    }

    proptest! {
        #[test]
        fn echelonize_is_idempotent(vals in proptest::collection::vec(-4i64..=4, 12)) {
            let vecs: Vec<Row> = vals.chunks(4).map(|c| row(c)).collect();
            let s = Subspace::span(q(), 4, vecs);
            let again = Subspace::span(q(), 4, s.basis().to_vec());
            prop_assert_eq!(s, again);
        }
    }
}
