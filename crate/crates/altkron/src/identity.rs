//! Identity checking on structure-constant algebras.
//!
//! Identities are integer-linear combinations of binary multiplication
//! trees ([`Word`]) over numbered variables. The basis sweep mode fully
//! linearizes an identity first: every variable of multiplicity m is
//! replaced by m fresh variables and the multilinear cross-terms are
//! collected (a sum over permutations assigning fresh variables to the
//! occurrences). A multilinear identity that vanishes on all basis tuples
//! vanishes identically, so the sweep is exact.
//!
//! The alternativity check uses a direct basis criterion instead:
//! expanding (x,x,y) over a basis gives only diagonal terms (bᵢ,bᵢ,y) and
//! symmetrized cross terms (bᵢ,bⱼ,y)+(bⱼ,bᵢ,y), so checking those (and the
//! right-hand analogues) on basis tuples is sound and complete over every
//! field, including characteristic 2.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraTable, Element};
use crate::error::Error;
use crate::rng::SplitMix64;

/// Binary multiplication tree over numbered variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Word {
    Var(usize),
    Prod(Box<Word>, Box<Word>),
}

impl Word {
    fn count_vars(&self, counts: &mut Vec<usize>) {
        match self {
            Word::Var(i) => {
                if counts.len() <= *i {
                    counts.resize(i + 1, 0);
                }
                counts[*i] += 1;
            }
            Word::Prod(l, r) => {
                l.count_vars(counts);
                r.count_vars(counts);
            }
        }
    }

    /// Relabels leaves: the k-th occurrence (left to right) of variable v
    /// becomes `labels[v][k]`.
    fn relabel(&self, labels: &[Vec<usize>], seen: &mut Vec<usize>) -> Word {
        match self {
            Word::Var(v) => {
                let k = seen[*v];
                seen[*v] += 1;
                Word::Var(labels[*v][k])
            }
            Word::Prod(l, r) => Word::Prod(
                Box::new(l.relabel(labels, seen)),
                Box::new(r.relabel(labels, seen)),
            ),
        }
    }

    fn eval(&self, a: &AlgebraTable, assign: &[Element]) -> Element {
        match self {
            Word::Var(i) => assign[*i].clone(),
            Word::Prod(l, r) => a.mul(&l.eval(a, assign), &r.eval(a, assign)),
        }
    }
}

/// Integer-linear combination of words: an element of the free
/// nonassociative ring on the variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinComb {
    terms: BTreeMap<Word, i64>,
}

impl LinComb {
    pub fn var(i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Word::Var(i), 1);
        LinComb { terms }
    }

    fn insert(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LinComb) -> LinComb {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert(w.clone(), *c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> LinComb {
        let mut out = LinComb::default();
        for (w, c) in &self.terms {
            out.insert(w.clone(), c * k);
        }
        out
    }

    pub fn sub(&self, other: &LinComb) -> LinComb {
        self.add(&other.scale(-1))
    }

    pub fn mul(&self, other: &LinComb) -> LinComb {
        let mut out = LinComb::default();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.insert(
                    Word::Prod(Box::new(wa.clone()), Box::new(wb.clone())),
                    ca * cb,
                );
            }
        }
        out
    }

    /// [a, b] = ab - ba.
    pub fn comm(a: &LinComb, b: &LinComb) -> LinComb {
        a.mul(b).sub(&b.mul(a))
    }

    /// (a, b, c) = (ab)c - a(bc).
    pub fn assoc(a: &LinComb, b: &LinComb, c: &LinComb) -> LinComb {
        a.mul(b).mul(c).sub(&a.mul(&b.mul(c)))
    }

    /// a ∘ b = ab + ba.
    pub fn circ(a: &LinComb, b: &LinComb) -> LinComb {
        a.mul(b).add(&b.mul(a))
    }

    /// Multiplicity of each variable; errors if the words are not all of
    /// the same multidegree (the linearizer requires homogeneity).
    fn multidegree(&self) -> Vec<usize> {
        let mut iter = self.terms.keys();
        let first = iter.next().expect("identity has at least one word");
        let mut counts = Vec::new();
        first.count_vars(&mut counts);
        for w in iter {
            let mut c = Vec::new();
            w.count_vars(&mut c);
            c.resize(counts.len().max(c.len()), 0);
            let mut padded = counts.clone();
            padded.resize(c.len(), 0);
            assert_eq!(c, padded, "identity is not multihomogeneous");
        }
        counts
    }

    /// Full linearization: variable v of multiplicity m is replaced by m
    /// fresh variables occupying a contiguous block, and each word expands
    /// into the sum over all assignments of distinct fresh variables to its
    /// occurrences. Returns the linearized combination and the fresh arity.
    pub fn linearize(&self) -> (LinComb, usize) {
        let degrees = self.multidegree();
        let mut offsets = Vec::with_capacity(degrees.len());
        let mut total = 0;
        for &m in &degrees {
            offsets.push(total);
            total += m;
        }
        let mut out = LinComb::default();
        for (w, c) in &self.terms {
            let perms_per_var: Vec<Vec<Vec<usize>>> = degrees
                .iter()
                .enumerate()
                .map(|(v, &m)| permutations(m, offsets[v]))
                .collect();
            let mut labels: Vec<Vec<usize>> = vec![Vec::new(); degrees.len()];
            expand_assignments(&perms_per_var, 0, &mut labels, &mut |labels| {
                let mut seen = vec![0; degrees.len()];
                out.insert(w.relabel(labels, &mut seen), *c);
            });
        }
        (out, total)
    }

    pub fn eval(&self, a: &AlgebraTable, assign: &[Element]) -> Element {
        let mut acc = a.zero_element();
        for (w, c) in &self.terms {
            let v = w.eval(a, assign);
            let coeff = a.field().from_i64(*c);
            if !coeff.is_zero() {
                acc = a.add(&acc, &a.scale(&coeff, &v));
            }
        }
        acc
    }

    pub fn num_words(&self) -> usize {
        self.terms.len()
    }
}

/// All orderings of `m` fresh labels `offset..offset+m`.
fn permutations(m: usize, offset: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (offset..offset + m).collect();
    let mut out = Vec::new();
    permute_rec(&mut items, 0, &mut out);
    out
}

fn permute_rec(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_rec(items, k + 1, out);
        items.swap(k, i);
    }
}

fn expand_assignments(
    perms: &[Vec<Vec<usize>>],
    v: usize,
    labels: &mut Vec<Vec<usize>>,
    emit: &mut impl FnMut(&[Vec<usize>]),
) {
    if v == perms.len() {
        emit(labels);
        return;
    }
    for p in &perms[v] {
        labels[v] = p.clone();
        expand_assignments(perms, v + 1, labels, emit);
    }
}

/// The identities available to [`check_identity`], by their report names.
pub const IDENTITY_NAMES: [&str; 9] = [
    "moufang_central",
    "e15",
    "e16",
    "e17",
    "e18",
    "e19",
    "e21",
    "acirc_left",
    "acirc_right",
];

/// Expressions that must each vanish, plus the variable count.
pub fn identity_exprs(name: &str) -> Result<(Vec<LinComb>, usize), Error> {
    let v = LinComb::var;
    let (exprs, arity) = match name {
        // (xy)(zx) = (x(yz))x
        "moufang_central" => {
            let (x, y, z) = (v(0), v(1), v(2));
            let lhs = x.mul(&y).mul(&z.mul(&x));
            let rhs = x.mul(&y.mul(&z)).mul(&x);
            (vec![lhs.sub(&rhs)], 3)
        }
        // [x, yz] = [x,y]z + y[x,z] - 3(x,y,z)
        "e15" => {
            let (x, y, z) = (v(0), v(1), v(2));
            let lhs = LinComb::comm(&x, &y.mul(&z));
            let rhs = LinComb::comm(&x, &y)
                .mul(&z)
                .add(&y.mul(&LinComb::comm(&x, &z)))
                .sub(&LinComb::assoc(&x, &y, &z).scale(3));
            (vec![lhs.sub(&rhs)], 3)
        }
        // (xy, z, t) = x(y,z,t) + (x,z,t)y - (x, y, [z,t])
        "e16" => {
            let (x, y, z, t) = (v(0), v(1), v(2), v(3));
            let lhs = LinComb::assoc(&x.mul(&y), &z, &t);
            let rhs = x
                .mul(&LinComb::assoc(&y, &z, &t))
                .add(&LinComb::assoc(&x, &z, &t).mul(&y))
                .sub(&LinComb::assoc(&x, &y, &LinComb::comm(&z, &t)));
            (vec![lhs.sub(&rhs)], 4)
        }
        // 2[(x,y,z), t] = ([x,y],z,t) + ([y,z],x,t) + ([z,x],y,t)
        "e17" => {
            let (x, y, z, t) = (v(0), v(1), v(2), v(3));
            let lhs = LinComb::comm(&LinComb::assoc(&x, &y, &z), &t).scale(2);
            let rhs = LinComb::assoc(&LinComb::comm(&x, &y), &z, &t)
                .add(&LinComb::assoc(&LinComb::comm(&y, &z), &x, &t))
                .add(&LinComb::assoc(&LinComb::comm(&z, &x), &y, &t));
            (vec![lhs.sub(&rhs)], 4)
        }
        // [x,y](x,y,z) = (x,y,(x,y,z)) = -(x,y,z)[x,y]
        "e18" => {
            let (x, y, z) = (v(0), v(1), v(2));
            let axyz = LinComb::assoc(&x, &y, &z);
            let cxy = LinComb::comm(&x, &y);
            let mid = LinComb::assoc(&x, &y, &axyz);
            (
                vec![cxy.mul(&axyz).sub(&mid), mid.add(&axyz.mul(&cxy))],
                3,
            )
        }
        // ((z,w,t),x,y) = ((z,x,y),w,t) + (z,(w,x,y),t) + (z,w,(t,x,y))
        //                 - [w,(z,t,[x,y])] + ([z,t],w,[x,y])
        "e19" => {
            let (z, w, t, x, y) = (v(0), v(1), v(2), v(3), v(4));
            let lhs = LinComb::assoc(&LinComb::assoc(&z, &w, &t), &x, &y);
            let cxy = LinComb::comm(&x, &y);
            let rhs = LinComb::assoc(&LinComb::assoc(&z, &x, &y), &w, &t)
                .add(&LinComb::assoc(&z, &LinComb::assoc(&w, &x, &y), &t))
                .add(&LinComb::assoc(&z, &w, &LinComb::assoc(&t, &x, &y)))
                .sub(&LinComb::comm(&w, &LinComb::assoc(&z, &t, &cxy)))
                .add(&LinComb::assoc(&LinComb::comm(&z, &t), &w, &cxy));
            (vec![lhs.sub(&rhs)], 5)
        }
        // ([x,y], y, z) = [y, (x,y,z)]
        "e21" => {
            let (x, y, z) = (v(0), v(1), v(2));
            let lhs = LinComb::assoc(&LinComb::comm(&x, &y), &y, &z);
            let rhs = LinComb::comm(&y, &LinComb::assoc(&x, &y, &z));
            (vec![lhs.sub(&rhs)], 3)
        }
        // (x∘z)y - x(zy) - z(xy) = 0
        "acirc_left" => {
            let (x, y, z) = (v(0), v(1), v(2));
            let e = LinComb::circ(&x, &z)
                .mul(&y)
                .sub(&x.mul(&z.mul(&y)))
                .sub(&z.mul(&x.mul(&y)));
            (vec![e], 3)
        }
        // (xy)z + (xz)y - x(y∘z) = 0
        "acirc_right" => {
            let (x, y, z) = (v(0), v(1), v(2));
            let e = x
                .mul(&y)
                .mul(&z)
                .add(&x.mul(&z).mul(&y))
                .sub(&x.mul(&LinComb::circ(&y, &z)));
            (vec![e], 3)
        }
        other => return Err(Error::UnknownIdentity(other.to_string())),
    };
    Ok((exprs, arity))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// Linearize fully, then sweep every basis tuple.
    BasisMultilinear,
    /// Evaluate the identity as written on `trials` pseudorandom tuples.
    Random { trials: usize, seed: u64 },
}

impl CheckMode {
    pub fn label(&self) -> String {
        match self {
            CheckMode::BasisMultilinear => "basis_multilinear".to_string(),
            CheckMode::Random { trials, seed } => format!("random:{trials}:{seed}"),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IdentityWitness {
    /// Failing basis tuple of a linearized expression.
    BasisTuple { expr: usize, indices: Vec<usize> },
    /// Failing random substitution, elements as coordinate strings.
    Elements { expr: usize, elements: Vec<Vec<String>> },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub identity: String,
    pub mode: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<IdentityWitness>,
    pub tuples_checked: u64,
}

/// Checks a named identity. The caller is responsible for only drawing
/// conclusions on algebras that pass [`check_alternative`]; on arbitrary
/// tables the result is simply whether the identity holds there.
pub fn check_identity(
    a: &AlgebraTable,
    name: &str,
    mode: CheckMode,
) -> Result<IdentityOutcome, Error> {
    let p = a.field().characteristic();
    if matches!(name, "e15" | "e17" | "e18") && (p == 2 || p == 3) {
        return Err(Error::CharacteristicTooSmall {
            identity: name.to_string(),
            p,
        });
    }
    let (exprs, arity) = identity_exprs(name)?;
    let (pass, witness, tuples) = match mode {
        CheckMode::BasisMultilinear => {
            let mut total = 0u64;
            let mut witness = None;
            for (ei, expr) in exprs.iter().enumerate() {
                let (lin, fresh) = expr.linearize();
                let (w, n) = sweep_basis(a, &lin, fresh);
                total += n;
                if witness.is_none() {
                    witness = w.map(|indices| IdentityWitness::BasisTuple { expr: ei, indices });
                }
            }
            (witness.is_none(), witness, total)
        }
        CheckMode::Random { trials, seed } => {
            let mut rng = SplitMix64::new(seed);
            let mut witness = None;
            let mut total = 0u64;
            'outer: for _ in 0..trials {
                let assign: Vec<Element> =
                    (0..arity).map(|_| a.random_element(&mut rng)).collect();
                total += 1;
                for (ei, expr) in exprs.iter().enumerate() {
                    if !a.is_zero(&expr.eval(a, &assign)) {
                        witness = Some(IdentityWitness::Elements {
                            expr: ei,
                            elements: assign
                                .iter()
                                .map(|e| e.iter().map(|c| c.to_string()).collect())
                                .collect(),
                        });
                        break 'outer;
                    }
                }
            }
            (witness.is_none(), witness, total)
        }
    };
    Ok(IdentityOutcome {
        identity: name.to_string(),
        mode: mode.label(),
        pass,
        witness,
        tuples_checked: tuples,
    })
}

/// Sweeps all `dim^arity` basis tuples of a multilinear expression,
/// parallelized over the leading index with a minimum-witness merge so the
/// reported tuple is deterministic. Returns (first failing tuple, count).
fn sweep_basis(a: &AlgebraTable, lin: &LinComb, arity: usize) -> (Option<Vec<usize>>, u64) {
    let dim = a.dim();
    if arity == 0 {
        return (None, 0);
    }
    let total = (dim as u64).pow(arity as u32);
    let witness = (0..dim)
        .into_par_iter()
        .filter_map(|first| {
            let mut assign: Vec<Element> = vec![a.basis_element(first); arity];
            let mut indices = vec![0usize; arity];
            indices[0] = first;
            for i in 1..arity {
                assign[i] = a.basis_element(0);
            }
            loop {
                if !a.is_zero(&lin.eval(a, &assign)) {
                    return Some(indices.clone());
                }
                // lexicographic increment of indices[1..]
                let mut pos = arity;
                loop {
                    if pos == 1 {
                        return None;
                    }
                    pos -= 1;
                    indices[pos] += 1;
                    if indices[pos] < dim {
                        assign[pos] = a.basis_element(indices[pos]);
                        break;
                    }
                    indices[pos] = 0;
                    assign[pos] = a.basis_element(0);
                }
            }
        })
        .min();
    (witness, total)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AltWitness {
    /// Which basis criterion expression failed: "left_diagonal",
    /// "left_symmetrized", "right_diagonal", "right_symmetrized".
    pub expression: String,
    pub triple: [usize; 3],
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AltReport {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<AltWitness>,
}

/// Exact alternativity test on basis triples, every characteristic.
pub fn check_alternative(a: &AlgebraTable) -> AltReport {
    let dim = a.dim();
    let witness = (0..dim)
        .into_par_iter()
        .filter_map(|i| {
            let bi = a.basis_element(i);
            let mut best: Option<(usize, usize, usize, String)> = None;
            for j in 0..dim {
                let bj = a.basis_element(j);
                for k in 0..dim {
                    let bk = a.basis_element(k);
                    let fail: Option<String> = if i == j
                        && !a.is_zero(&a.associator(&bi, &bj, &bk))
                    {
                        Some("left_diagonal".into())
                    } else if j == k && !a.is_zero(&a.associator(&bi, &bj, &bk)) {
                        Some("right_diagonal".into())
                    } else if i < j
                        && !a.is_zero(&a.add(
                            &a.associator(&bi, &bj, &bk),
                            &a.associator(&bj, &bi, &bk),
                        ))
                    {
                        Some("left_symmetrized".into())
                    } else if j < k
                        && !a.is_zero(&a.add(
                            &a.associator(&bi, &bj, &bk),
                            &a.associator(&bi, &bk, &bj),
                        ))
                    {
                        Some("right_symmetrized".into())
                    } else {
                        None
                    };
                    if let Some(kind) = fail {
                        best = Some((i, j, k, kind));
                        break;
                    }
                }
                if best.is_some() {
                    break;
                }
            }
            best
        })
        .min_by_key(|(i, j, k, _)| (*i, *j, *k));
    AltReport {
        pass: witness.is_none(),
        witness: witness.map(|(i, j, k, expression)| AltWitness {
            expression,
            triple: [i, j, k],
        }),
    }
}
