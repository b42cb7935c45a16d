//! Explicit effective representations.
//!
//! [`build_path_rep`] assigns each arrow a block over `Z[τ, η, ζ]` of size
//! `D_head × D_tail`, with `D_x = 2` exactly on vertices whose cycle monoid is
//! noncommutative. [`build_truncated_rep`] builds a graded module for the
//! truncation at level `N`, with one basis vector per grade in `K(x)` and
//! arrow entries drawn from an injective prime labelling of `(arrow, grade)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::dimension::{classify_path, k_profile, KProfile};
use crate::error::{Error, Result};
use crate::pathsem::Path;
use crate::polyring::{IntMatrix, Matrix, MultiPoly, PolyMatrix, Ring, Variable};
use crate::quiver::Quiver;

/// A quiver representation given by one matrix per arrow.
pub trait Representation {
    type Coeff: Ring;

    fn num_vertices(&self) -> usize;
    fn dim(&self, x: usize) -> usize;
    fn arrow_matrix(&self, a: usize) -> &Matrix<Self::Coeff>;
    fn num_arrows(&self) -> usize;

    fn total_dim(&self) -> usize {
        (0..self.num_vertices()).map(|x| self.dim(x)).sum()
    }
}

/// The value of a path under a representation: a `D_head × D_tail` block, or
/// the flagged zero for `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepImage<T> {
    Zero,
    Block {
        tail: usize,
        head: usize,
        matrix: Matrix<T>,
    },
}

impl<T: Ring> RepImage<T> {
    /// True for `z` and for any block with only zero entries.
    pub fn is_zero(&self) -> bool {
        match self {
            RepImage::Zero => true,
            RepImage::Block { matrix, .. } => matrix.is_zero(),
        }
    }

    /// Equality of the full operators on `V`: all zero images coincide, and
    /// nonzero blocks must sit at the same position.
    pub fn same_operator(&self, other: &RepImage<T>) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (false, false) => self == other,
            _ => false,
        }
    }

    pub fn matrix(&self) -> Option<&Matrix<T>> {
        match self {
            RepImage::Zero => None,
            RepImage::Block { matrix, .. } => Some(matrix),
        }
    }
}

/// Multiplies arrow matrices along `p` (first arrow rightmost).
pub fn rep_of_path<R: Representation>(rep: &R, q: &Quiver, p: &Path) -> RepImage<R::Coeff> {
    match p {
        Path::Zero => RepImage::Zero,
        Path::Trivial(x) => RepImage::Block {
            tail: *x,
            head: *x,
            matrix: Matrix::identity(rep.dim(*x)),
        },
        Path::Arrows(seq) => {
            let mut m = rep.arrow_matrix(seq[0]).clone();
            for &a in &seq[1..] {
                m = rep
                    .arrow_matrix(a)
                    .mul(&m)
                    .expect("arrow shapes follow vertex dimensions");
            }
            RepImage::Block {
                tail: q.arrow(seq[0]).tail,
                head: q.arrow(*seq.last().expect("nonempty")).head,
                matrix: m,
            }
        }
    }
}

/// A plain matrix representation: vertex dimensions and arrow matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep<T> {
    pub dims: Vec<usize>,
    pub arrows: Vec<Matrix<T>>,
}

impl<T: Ring> Representation for MatrixRep<T> {
    type Coeff = T;
    fn num_vertices(&self) -> usize {
        self.dims.len()
    }
    fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }
    fn arrow_matrix(&self, a: usize) -> &Matrix<T> {
        &self.arrows[a]
    }
    fn num_arrows(&self) -> usize {
        self.arrows.len()
    }
}

/// Representation of the full path semigroup over `Z[τ_α, η_α, ζ_α]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicRep {
    pub in_a: Vec<bool>,
    pub dims: Vec<usize>,
    pub arrows: Vec<PolyMatrix>,
}

impl Representation for SymbolicRep {
    type Coeff = MultiPoly;
    fn num_vertices(&self) -> usize {
        self.dims.len()
    }
    fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }
    fn arrow_matrix(&self, a: usize) -> &PolyMatrix {
        &self.arrows[a]
    }
    fn num_arrows(&self) -> usize {
        self.arrows.len()
    }
}

/// The 2x2 upper-triangular block `[[τ, η], [0, ζ]]` for arrow `a`.
pub fn upper_block(a: usize) -> PolyMatrix {
    Matrix::new(
        2,
        2,
        vec![
            Variable::tau(a).into(),
            Variable::eta(a).into(),
            MultiPoly::zero(),
            Variable::zeta(a).into(),
        ],
    )
    .expect("2x2")
}

pub fn build_path_rep(q: &Quiver) -> SymbolicRep {
    let cls = classify_path(q);
    let in_a: Vec<bool> = (0..q.num_vertices()).map(|x| cls.in_a(x)).collect();
    let dims: Vec<usize> = in_a.iter().map(|&a| if a { 2 } else { 1 }).collect();
    let arrows = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, arr)| {
            let tau: MultiPoly = Variable::tau(i).into();
            let zeta: MultiPoly = Variable::zeta(i).into();
            match (in_a[arr.head], in_a[arr.tail]) {
                (true, true) => upper_block(i),
                (true, false) => Matrix::new(2, 1, vec![tau, zeta]).expect("2x1"),
                (false, true) => Matrix::new(1, 2, vec![tau, zeta]).expect("1x2"),
                (false, false) => Matrix::new(1, 1, vec![tau]).expect("1x1"),
            }
        })
        .collect();
    SymbolicRep { in_a, dims, arrows }
}

/// Closed form of the `(1, 2)` entry of `R(w_1)·R(w_2)···R(w_l)` for upper
/// blocks: `Σ_i τ_{w_1}···τ_{w_{i-1}} η_{w_i} ζ_{w_{i+1}}···ζ_{w_l}`.
///
/// Letters are arrow indices in matrix-product order, i.e. the reverse of
/// traversal order.
pub fn lemma3_entry(word: &[usize]) -> MultiPoly {
    let mut total = MultiPoly::zero();
    for i in 0..word.len() {
        let mut term = MultiPoly::constant(1);
        for &w in &word[..i] {
            term = term.mul(&Variable::tau(w).into());
        }
        term = term.mul(&Variable::eta(word[i]).into());
        for &w in &word[i + 1..] {
            term = term.mul(&Variable::zeta(w).into());
        }
        total = total.add(&term);
    }
    total
}

/// Injective labelling `(arrow, k) ↦ prime` for `0 <= k < N`, assigned in
/// (arrow, k) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeTable {
    pub n_trunc: usize,
    pub num_arrows: usize,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn get(&self, arrow: usize, k: usize) -> u64 {
        self.primes[arrow * self.n_trunc + k]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        (0..self.num_arrows)
            .flat_map(move |a| (0..self.n_trunc).map(move |k| (a, k, self.get(a, k))))
    }
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut limit = 32usize;
    loop {
        let mut sieve = vec![true; limit + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= limit {
            if sieve[i] {
                let mut j = i * i;
                while j <= limit {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        let primes: Vec<u64> = (2..=limit)
            .filter(|&n| sieve[n])
            .map(|n| n as u64)
            .take(count)
            .collect();
        if primes.len() == count {
            return primes;
        }
        limit *= 2;
    }
}

pub fn allocate_primes(q: &Quiver, n_trunc: usize) -> Result<PrimeTable> {
    if n_trunc == 0 {
        return Err(Error::InvalidArgument(
            "truncation level must be at least 1".into(),
        ));
    }
    Ok(PrimeTable {
        n_trunc,
        num_arrows: q.num_arrows(),
        primes: first_primes(q.num_arrows() * n_trunc),
    })
}

/// A basis vector `v_x^(k)`; `grade` is `None` for the single vector at a
/// vertex with empty `K(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisLabel {
    pub grade: Option<usize>,
}

impl BasisLabel {
    pub fn render(&self, vertex: &str) -> String {
        match self.grade {
            Some(k) => format!("v_{vertex}^({k})"),
            None => format!("v_{vertex}"),
        }
    }
}

/// Graded representation of the truncated path semigroup `P_N`.
///
/// Each vertex basis lists grades in descending order, so grade-raising arrow
/// blocks between graded vertices are upper triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRep {
    pub n_trunc: usize,
    pub basis: Vec<Vec<BasisLabel>>,
    pub arrows: Vec<IntMatrix>,
    pub primes: PrimeTable,
}

impl Representation for GradedRep {
    type Coeff = BigInt;
    fn num_vertices(&self) -> usize {
        self.basis.len()
    }
    fn dim(&self, x: usize) -> usize {
        self.basis[x].len()
    }
    fn arrow_matrix(&self, a: usize) -> &IntMatrix {
        &self.arrows[a]
    }
    fn num_arrows(&self) -> usize {
        self.arrows.len()
    }
}

impl GradedRep {
    /// Position of the grade-`k` vector in the basis of `x`.
    pub fn grade_index(&self, x: usize, k: usize) -> Option<usize> {
        self.basis[x].iter().position(|b| b.grade == Some(k))
    }

    /// The same module with each prime `p_{α,k}` replaced by an independent
    /// formal variable (index `α·N + k`). This is the labelling used over
    /// uncountable fields.
    pub fn transcendental(&self) -> MatrixRep<MultiPoly> {
        let lookup: HashMap<u64, u32> = self
            .primes
            .entries()
            .map(|(a, k, p)| (p, (a * self.n_trunc + k) as u32))
            .collect();
        let arrows = self
            .arrows
            .iter()
            .map(|m| {
                m.map(|c| {
                    if Ring::is_zero(c) {
                        return MultiPoly::zero();
                    }
                    match c.to_u64().and_then(|p| lookup.get(&p)) {
                        Some(&v) => MultiPoly::var(v),
                        None => MultiPoly::constant(c.clone()),
                    }
                })
            })
            .collect();
        MatrixRep {
            dims: self.basis.iter().map(Vec::len).collect(),
            arrows,
        }
    }
}

pub fn build_truncated_rep(q: &Quiver, n_trunc: usize) -> Result<GradedRep> {
    let kp = k_profile(q, n_trunc)?;
    build_truncated_rep_with(q, &kp)
}

pub fn build_truncated_rep_with(q: &Quiver, kp: &KProfile) -> Result<GradedRep> {
    let n_trunc = kp.n_trunc;
    let primes = allocate_primes(q, n_trunc)?;

    let basis: Vec<Vec<BasisLabel>> = kp
        .vertices
        .iter()
        .map(|v| match v.interval {
            Some((lo, hi)) => (lo..=hi)
                .rev()
                .map(|k| BasisLabel { grade: Some(k) })
                .collect(),
            None => vec![BasisLabel { grade: None }],
        })
        .collect();
    // descending grades: index of k is hi - k
    let idx = |x: usize, k: usize| kp.k_max(x).expect("graded vertex") - k;

    let mut arrows = Vec::with_capacity(q.num_arrows());
    for (ai, arr) in q.arrows().iter().enumerate() {
        let (x, y) = (arr.tail, arr.head);
        let mut m = IntMatrix::zeros(basis[y].len(), basis[x].len());
        let p = |k: usize| BigInt::from(primes.get(ai, k));
        match (kp.vertices[x].interval, kp.vertices[y].interval) {
            (Some((lo_x, hi_x)), Some((lo_y, hi_y))) => {
                for k in lo_x..=hi_x {
                    if k == n_trunc - 1 {
                        continue;
                    }
                    let j = (k + 1).max(lo_y);
                    if j > hi_y {
                        return Err(Error::Construction(format!(
                            "no grade above {k} at `{}` for arrow `{}`",
                            q.vertex_name(y),
                            arr.id
                        )));
                    }
                    m.set(idx(y, j), idx(x, k), p(k));
                }
            }
            (Some((lo_x, hi_x)), None) => {
                for k in lo_x..=hi_x {
                    m.set(0, idx(x, k), p(k));
                }
            }
            (None, Some((lo_y, _))) => m.set(idx(y, lo_y), 0, p(0)),
            (None, None) => m.set(0, 0, p(0)),
        }
        arrows.push(m);
    }

    Ok(GradedRep {
        n_trunc,
        basis,
        arrows,
        primes,
    })
}

/// Either kind of constructed representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyRep {
    Symbolic(SymbolicRep),
    Graded(GradedRep),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisLabelJson {
    pub label: String,
    pub grade: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson<T> {
    pub id: String,
    pub tail: String,
    pub head: String,
    pub shape: [usize; 2],
    pub matrix: Vec<Vec<T>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rendered: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeJson {
    pub arrow: String,
    pub k: usize,
    pub prime: u64,
}

/// Representation file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RepresentationJson {
    Symbolic {
        vertices: Vec<String>,
        vertex_dims: Vec<usize>,
        arrows: Vec<ArrowJson<MultiPoly>>,
    },
    Graded {
        truncation: usize,
        vertices: Vec<String>,
        vertex_dims: Vec<usize>,
        basis_labels: Vec<Vec<BasisLabelJson>>,
        arrows: Vec<ArrowJson<u64>>,
        prime_table: Vec<PrimeJson>,
    },
}

impl SymbolicRep {
    pub fn to_json(&self, q: &Quiver) -> RepresentationJson {
        RepresentationJson::Symbolic {
            vertices: q.vertices().to_vec(),
            vertex_dims: self.dims.clone(),
            arrows: q
                .arrows()
                .iter()
                .zip(&self.arrows)
                .map(|(a, m)| ArrowJson {
                    id: a.id.clone(),
                    tail: q.vertex_name(a.tail).to_string(),
                    head: q.vertex_name(a.head).to_string(),
                    shape: [m.rows(), m.cols()],
                    matrix: m.to_rows(),
                    rendered: Some(
                        m.to_rows()
                            .iter()
                            .map(|row| row.iter().map(|p| p.render_with(q)).collect())
                            .collect(),
                    ),
                })
                .collect(),
        }
    }
}

impl GradedRep {
    pub fn to_json(&self, q: &Quiver) -> RepresentationJson {
        RepresentationJson::Graded {
            truncation: self.n_trunc,
            vertices: q.vertices().to_vec(),
            vertex_dims: self.basis.iter().map(Vec::len).collect(),
            basis_labels: self
                .basis
                .iter()
                .enumerate()
                .map(|(x, labels)| {
                    labels
                        .iter()
                        .map(|b| BasisLabelJson {
                            label: b.render(q.vertex_name(x)),
                            grade: b.grade,
                        })
                        .collect()
                })
                .collect(),
            arrows: q
                .arrows()
                .iter()
                .zip(&self.arrows)
                .map(|(a, m)| ArrowJson {
                    id: a.id.clone(),
                    tail: q.vertex_name(a.tail).to_string(),
                    head: q.vertex_name(a.head).to_string(),
                    shape: [m.rows(), m.cols()],
                    matrix: m
                        .to_rows()
                        .iter()
                        .map(|row| {
                            row.iter()
                                .map(|c| c.to_u64().expect("arrow entries are primes or zero"))
                                .collect()
                        })
                        .collect(),
                    rendered: None,
                })
                .collect(),
            prime_table: self
                .primes
                .entries()
                .map(|(a, k, prime)| PrimeJson {
                    arrow: q.arrow(a).id.clone(),
                    k,
                    prime,
                })
                .collect(),
        }
    }
}

fn check_arrows<T>(q: &Quiver, dims: &[usize], arrows: &[ArrowJson<T>]) -> Result<()> {
    if dims.len() != q.num_vertices() {
        return Err(Error::RepMismatch(format!(
            "{} vertex dimensions for {} vertices",
            dims.len(),
            q.num_vertices()
        )));
    }
    if arrows.len() != q.num_arrows() {
        return Err(Error::RepMismatch(format!(
            "{} arrow matrices for {} arrows",
            arrows.len(),
            q.num_arrows()
        )));
    }
    for (a, aj) in q.arrows().iter().zip(arrows) {
        if aj.id != a.id || aj.tail != q.vertex_name(a.tail) || aj.head != q.vertex_name(a.head) {
            return Err(Error::RepMismatch(format!(
                "arrow `{}` does not match the quiver",
                aj.id
            )));
        }
        let expect = [dims[a.head], dims[a.tail]];
        if aj.shape != expect {
            return Err(Error::RepMismatch(format!(
                "arrow `{}` has shape {:?}, expected {:?}",
                aj.id, aj.shape, expect
            )));
        }
        if aj.matrix.len() != expect[0] || aj.matrix.iter().any(|r| r.len() != expect[1]) {
            return Err(Error::Json(format!(
                "matrix of `{}` does not have its declared shape",
                aj.id
            )));
        }
    }
    Ok(())
}

impl RepresentationJson {
    /// Rebuilds a representation, checking it against `q`.
    pub fn into_rep(self, q: &Quiver) -> Result<AnyRep> {
        match self {
            RepresentationJson::Symbolic {
                vertices,
                vertex_dims,
                arrows,
            } => {
                if vertices != q.vertices() {
                    return Err(Error::RepMismatch("vertex list differs".into()));
                }
                check_arrows(q, &vertex_dims, &arrows)?;
                let mats = arrows
                    .into_iter()
                    .map(|a| Matrix::from_rows(a.matrix, a.shape[1]))
                    .collect::<Result<Vec<_>>>()?;
                Ok(AnyRep::Symbolic(SymbolicRep {
                    in_a: vertex_dims.iter().map(|&d| d == 2).collect(),
                    dims: vertex_dims,
                    arrows: mats,
                }))
            }
            RepresentationJson::Graded {
                truncation,
                vertices,
                vertex_dims,
                basis_labels,
                arrows,
                prime_table,
            } => {
                if vertices != q.vertices() {
                    return Err(Error::RepMismatch("vertex list differs".into()));
                }
                if truncation == 0 {
                    return Err(Error::Json("truncation must be at least 1".into()));
                }
                check_arrows(q, &vertex_dims, &arrows)?;
                if basis_labels.len() != vertex_dims.len()
                    || basis_labels
                        .iter()
                        .zip(&vertex_dims)
                        .any(|(b, &d)| b.len() != d)
                {
                    return Err(Error::Json(
                        "basis labels do not match vertex dimensions".into(),
                    ));
                }
                if prime_table.len() != q.num_arrows() * truncation {
                    return Err(Error::Json("prime table has the wrong size".into()));
                }
                let mut primes = vec![0u64; prime_table.len()];
                for e in &prime_table {
                    let a = q.arrow_by_id(&e.arrow)?;
                    if e.k >= truncation {
                        return Err(Error::Json(format!(
                            "prime table grade {} out of range",
                            e.k
                        )));
                    }
                    primes[a * truncation + e.k] = e.prime;
                }
                let mats = arrows
                    .into_iter()
                    .map(|a| {
                        let rows = a
                            .matrix
                            .into_iter()
                            .map(|r| r.into_iter().map(BigInt::from).collect())
                            .collect();
                        Matrix::from_rows(rows, a.shape[1])
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(AnyRep::Graded(GradedRep {
                    n_trunc: truncation,
                    basis: basis_labels
                        .into_iter()
                        .map(|v| {
                            v.into_iter()
                                .map(|b| BasisLabel { grade: b.grade })
                                .collect()
                        })
                        .collect(),
                    arrows: mats,
                    primes: PrimeTable {
                        n_trunc: truncation,
                        num_arrows: q.num_arrows(),
                        primes,
                    },
                }))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver;

    fn int(rows: Vec<Vec<i64>>) -> IntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
            cols,
        )
        .unwrap()
    }

    #[test]
    fn single_loop_gets_tau() {
        let q = Quiver::from_edges(1, &[(0, 0)]).unwrap();
        let rep = build_path_rep(&q);
        assert_eq!(rep.dims, vec![1]);
        assert_eq!(
            rep.arrows[0],
            Matrix::new(1, 1, vec![Variable::tau(0).into()]).unwrap()
        );
    }

    #[test]
    fn two_loops_get_upper_blocks() {
        let q = Quiver::from_edges(1, &[(0, 0), (0, 0)]).unwrap();
        let rep = build_path_rep(&q);
        assert_eq!(rep.dims, vec![2]);
        assert_eq!(rep.arrows[0], upper_block(0));
        assert_eq!(rep.arrows[1], upper_block(1));
    }

    #[test]
    fn mixed_templates() {
        // x has two loops (A); y is a sink (B); z feeds x (B)
        let q = Quiver::from_edges(3, &[(0, 0), (0, 0), (0, 1), (2, 0)]).unwrap();
        let rep = build_path_rep(&q);
        assert_eq!(rep.dims, vec![2, 1, 1]);
        let tau: MultiPoly = Variable::tau(2).into();
        let zeta: MultiPoly = Variable::zeta(2).into();
        assert_eq!(rep.arrows[2], Matrix::new(1, 2, vec![tau, zeta]).unwrap());
        let tau: MultiPoly = Variable::tau(3).into();
        let zeta: MultiPoly = Variable::zeta(3).into();
        assert_eq!(rep.arrows[3], Matrix::new(2, 1, vec![tau, zeta]).unwrap());
        assert_eq!(rep.total_dim(), 4);
    }

    #[test]
    fn upper_entry_examples() {
        let eta = |a| MultiPoly::from(Variable::eta(a));
        let tau = |a| MultiPoly::from(Variable::tau(a));
        let zeta = |a| MultiPoly::from(Variable::zeta(a));
        assert_eq!(lemma3_entry(&[0]), eta(0));
        assert_eq!(
            lemma3_entry(&[0, 1]),
            tau(0).mul(&eta(1)).add(&eta(0).mul(&zeta(1)))
        );
        assert_eq!(
            lemma3_entry(&[0, 0]),
            tau(0).mul(&eta(0)).add(&eta(0).mul(&zeta(0)))
        );
    }

    #[test]
    fn prime_allocation() {
        let one = Quiver::from_edges(2, &[(0, 1)]).unwrap();
        let t = allocate_primes(&one, 2).unwrap();
        assert_eq!((t.get(0, 0), t.get(0, 1)), (2, 3));
        let two = Quiver::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let t = allocate_primes(&two, 1).unwrap();
        assert_eq!((t.get(0, 0), t.get(1, 0)), (2, 3));
        let t = allocate_primes(&one, 4).unwrap();
        assert_eq!(
            t.entries().map(|e| e.2).collect::<Vec<_>>(),
            vec![2, 3, 5, 7]
        );
        assert_eq!(first_primes(10).last(), Some(&29));
        assert_eq!(first_primes(1000).last(), Some(&7919));
    }

    #[test]
    fn graded_a2() {
        let q = Quiver::from_edges(2, &[(0, 1)]).unwrap();
        let rep = build_truncated_rep(&q, 2).unwrap();
        assert_eq!(rep.basis[0], vec![BasisLabel { grade: Some(0) }]);
        assert_eq!(rep.basis[1], vec![BasisLabel { grade: Some(1) }]);
        assert_eq!(rep.arrows[0], int(vec![vec![2]]));
        let img = rep_of_path(&rep, &q, &Path::arrow(0));
        assert_eq!(img.matrix(), Some(&int(vec![vec![2]])));
    }

    #[test]
    fn graded_loop_is_a_shift() {
        let q = Quiver::from_edges(1, &[(0, 0)]).unwrap();
        let rep = build_truncated_rep(&q, 3).unwrap();
        assert_eq!(rep.dim(0), 3);
        assert_eq!(
            rep.arrows[0],
            int(vec![vec![0, 3, 0], vec![0, 0, 2], vec![0, 0, 0]])
        );
        let cube = rep_of_path(&rep, &q, &Path::Arrows(vec![0, 0, 0]));
        assert!(cube.is_zero());
        assert_eq!(cube.matrix().unwrap().shape(), (3, 3));
        let sq = rep_of_path(&rep, &q, &Path::Arrows(vec![0, 0]));
        assert!(!sq.is_zero());
    }

    #[test]
    fn isolated_vertex() {
        let q = Quiver::from_edges(1, &[]).unwrap();
        for n in 1..5 {
            let rep = build_truncated_rep(&q, n).unwrap();
            assert_eq!(rep.dim(0), 1);
            let e = rep_of_path(&rep, &q, &Path::Trivial(0));
            assert_eq!(e.matrix(), Some(&IntMatrix::identity(1)));
        }
    }

    #[test]
    fn truncation_one_kills_arrows() {
        let q = Quiver::from_edges(2, &[(0, 1)]).unwrap();
        let rep = build_truncated_rep(&q, 1).unwrap();
        assert_eq!(
            rep.basis.iter().map(Vec::len).collect::<Vec<_>>(),
            vec![1, 1]
        );
        assert!(rep.arrows[0].is_zero());
    }

    #[test]
    fn zero_and_identity_images() {
        let q = Quiver::from_edges(1, &[(0, 0), (0, 0)]).unwrap();
        let rep = build_path_rep(&q);
        let e = rep_of_path(&rep, &q, &Path::Trivial(0));
        assert_eq!(e.matrix(), Some(&PolyMatrix::identity(2)));
        let z = rep_of_path(&rep, &q, &Path::Zero);
        assert!(z.is_zero());
        let zero_block: RepImage<MultiPoly> = RepImage::Block {
            tail: 0,
            head: 0,
            matrix: PolyMatrix::zeros(2, 2),
        };
        assert!(z.same_operator(&zero_block));
        assert!(!e.same_operator(&z));
    }

    #[test]
    fn json_round_trip() {
        let q =
            parse_quiver("vertex x\nvertex y\narrow a: x -> x\narrow b: x -> x\narrow c: x -> y")
                .unwrap();
        let graded = build_truncated_rep(&q, 3).unwrap();
        let text = serde_json::to_string(&graded.to_json(&q)).unwrap();
        let back: RepresentationJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_rep(&q).unwrap(), AnyRep::Graded(graded));

        let sym = build_path_rep(&q);
        let text = serde_json::to_string(&sym.to_json(&q)).unwrap();
        let back: RepresentationJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_rep(&q).unwrap(), AnyRep::Symbolic(sym));
    }

    #[test]
    fn json_rejects_mismatch() {
        let q = Quiver::from_edges(2, &[(0, 1)]).unwrap();
        let other = Quiver::from_edges(2, &[(1, 0)]).unwrap();
        let json = build_truncated_rep(&q, 2).unwrap().to_json(&q);
        assert!(matches!(json.into_rep(&other), Err(Error::RepMismatch(_))));
    }

    #[test]
    fn transcendental_relabelling() {
        let q = Quiver::from_edges(1, &[(0, 0)]).unwrap();
        let rep = build_truncated_rep(&q, 3).unwrap();
        let t = rep.transcendental();
        assert_eq!(t.arrows[0].get(0, 1), &MultiPoly::var(1));
        assert_eq!(t.arrows[0].get(1, 2), &MultiPoly::var(0));
    }
}
