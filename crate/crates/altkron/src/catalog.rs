//! Small standard algebras: ground field, dual numbers, truncated
//! polynomials, split pairs, upper-triangular 2x2 matrices, the rank-2
//! Grassmann algebra, and full 2x2 matrices. These serve as coefficient
//! rings for the product constructions and as fixture material in tests.

use crate::algebra::{AlgebraTable, Element, MatrixUnits};
use crate::scalar::FieldSpec;

fn build(field: FieldSpec, names: &[&str], prod: impl Fn(usize, usize) -> Vec<(usize, i64)>, unit: &[(usize, i64)]) -> AlgebraTable {
    let dim = names.len();
    let dense = |pairs: &[(usize, i64)]| -> Element {
        let mut v = vec![field.zero(); dim];
        for &(i, c) in pairs {
            v[i] = v[i].add(&field.from_i64(c));
        }
        v
    };
    let products = (0..dim)
        .map(|i| (0..dim).map(|j| dense(&prod(i, j))).collect())
        .collect();
    AlgebraTable::from_products(
        field,
        names.iter().map(|s| s.to_string()).collect(),
        products,
        Some(dense(unit)),
    )
    .expect("catalog algebra is well formed")
}

/// The ground field as a 1-dimensional algebra.
pub fn ground_field(field: FieldSpec) -> AlgebraTable {
    build(field, &["1"], |_, _| vec![(0, 1)], &[(0, 1)])
}

/// Dual numbers F[t]/(t^2), basis {1, t}.
pub fn dual_numbers(field: FieldSpec) -> AlgebraTable {
    build(
        field,
        &["1", "t"],
        |i, j| if i + j < 2 { vec![(i + j, 1)] } else { vec![] },
        &[(0, 1)],
    )
}

/// Truncated polynomials F[t]/(t^3), basis {1, t, t^2}.
pub fn truncated_poly3(field: FieldSpec) -> AlgebraTable {
    build(
        field,
        &["1", "t", "t2"],
        |i, j| if i + j < 3 { vec![(i + j, 1)] } else { vec![] },
        &[(0, 1)],
    )
}

/// The split pair F x F, basis of orthogonal idempotents.
pub fn split_pair(field: FieldSpec) -> AlgebraTable {
    build(
        field,
        &["s1", "s2"],
        |i, j| if i == j { vec![(i, 1)] } else { vec![] },
        &[(0, 1), (1, 1)],
    )
}

/// Upper-triangular 2x2 matrices, basis {e11, e12, e22}.
pub fn upper_triangular2(field: FieldSpec) -> AlgebraTable {
    // e11*e11 = e11, e11*e12 = e12, e12*e22 = e12, e22*e22 = e22, rest 0.
    build(
        field,
        &["e11", "e12", "e22"],
        |i, j| match (i, j) {
            (0, 0) => vec![(0, 1)],
            (0, 1) => vec![(1, 1)],
            (1, 2) => vec![(1, 1)],
            (2, 2) => vec![(2, 1)],
            _ => vec![],
        },
        &[(0, 1), (2, 1)],
    )
}

/// Grassmann algebra on two generators, basis {1, g1, g2, g1g2}.
pub fn grassmann2(field: FieldSpec) -> AlgebraTable {
    build(
        field,
        &["1", "g1", "g2", "g1g2"],
        |i, j| match (i, j) {
            (0, k) | (k, 0) => vec![(k, 1)],
            (1, 2) => vec![(3, 1)],
            (2, 1) => vec![(3, -1)],
            _ => vec![],
        },
        &[(0, 1)],
    )
}

/// Direct product of two algebras, components in consecutive basis blocks.
pub fn direct_product(a: &AlgebraTable, b: &AlgebraTable) -> AlgebraTable {
    assert_eq!(a.field(), b.field(), "factors must share a field");
    let field = a.field();
    let dim = a.dim() + b.dim();
    let mut names: Vec<String> = a.basis_names().to_vec();
    names.extend(b.basis_names().iter().cloned());
    let embed_a = |x: &Element| -> Element {
        let mut v = vec![field.zero(); dim];
        v[..a.dim()].clone_from_slice(x);
        v
    };
    let embed_b = |x: &Element| -> Element {
        let mut v = vec![field.zero(); dim];
        v[a.dim()..].clone_from_slice(x);
        v
    };
    let mut products = vec![vec![vec![field.zero(); dim]; dim]; dim];
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            products[i][j] = embed_a(&a.mul(&a.basis_element(i), &a.basis_element(j)));
        }
    }
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            products[a.dim() + i][a.dim() + j] =
                embed_b(&b.mul(&b.basis_element(i), &b.basis_element(j)));
        }
    }
    let unit = match (a.unit(), b.unit()) {
        (Some(ua), Some(ub)) => {
            let mut u = embed_a(ua);
            let eb = embed_b(ub);
            for (x, y) in u.iter_mut().zip(&eb) {
                *x = x.add(y);
            }
            Some(u)
        }
        _ => None,
    };
    AlgebraTable::from_products(field, names, products, unit).expect("product is well formed")
}

/// Full 2x2 matrices with the canonical matrix units as basis.
pub fn matrix2(field: FieldSpec) -> (AlgebraTable, MatrixUnits) {
    // basis order e11, e12, e21, e22; e_pq e_rs = delta_qr e_ps.
    let pos = |p: usize, q: usize| 2 * p + q;
    let a = build(
        field,
        &["e11", "e12", "e21", "e22"],
        |i, j| {
            let (p, q) = (i / 2, i % 2);
            let (r, s) = (j / 2, j % 2);
            if q == r {
                vec![(pos(p, s), 1)]
            } else {
                vec![]
            }
        },
        &[(0, 1), (3, 1)],
    );
    let e = MatrixUnits::new(
        a.basis_element(0),
        a.basis_element(1),
        a.basis_element(2),
        a.basis_element(3),
    );
    (a, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_associative(a: &AlgebraTable) {
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                for k in 0..a.dim() {
                    let v = a.associator(
                        &a.basis_element(i),
                        &a.basis_element(j),
                        &a.basis_element(k),
                    );
                    assert!(a.is_zero(&v), "associator ({i},{j},{k}) nonzero");
                }
            }
        }
    }

    #[test]
    fn catalog_algebras_are_associative_and_unital() {
        let q = FieldSpec::Rational;
        for a in [
            ground_field(q),
            dual_numbers(q),
            truncated_poly3(q),
            split_pair(q),
            upper_triangular2(q),
            grassmann2(q),
            matrix2(q).0,
        ] {
            assert!(a.unit().is_some());
            assert_associative(&a);
        }
    }

    #[test]
    fn grassmann_squares_vanish() {
        let a = grassmann2(FieldSpec::Rational);
        for i in 1..4 {
            let b = a.basis_element(i);
            assert!(a.is_zero(&a.mul(&b, &b)));
        }
        // g2 g1 = -g1 g2
        let g1 = a.basis_element(1);
        let g2 = a.basis_element(2);
        assert_eq!(a.mul(&g2, &g1), a.neg(&a.mul(&g1, &g2)));
    }

    #[test]
    fn ut2_center_is_scalars() {
        let a = upper_triangular2(FieldSpec::Rational);
        assert_eq!(a.center().dim(), 1);
        assert_eq!(a.nucleus().dim(), 3);
    }

    #[test]
    fn split_pair_is_commutative() {
        let a = split_pair(FieldSpec::Rational);
        assert_eq!(a.comm_center().dim(), 2);
    }
}
