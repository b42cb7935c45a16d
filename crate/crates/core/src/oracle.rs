//! Brute-force checks of constructed representations.
//!
//! Effectiveness is checked by enumerating paths from each tail vertex
//! depth-first, hashing every image and comparing exactly on hash hits. Work
//! is split over tail vertices with rayon; results are merged in vertex order
//! so reports are deterministic.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet};
use std::hash::{Hash, Hasher};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pathsem::Path;
use crate::polyring::{Matrix, Ring};
use crate::quiver::Quiver;
use crate::repbuild::{rep_of_path, GradedRep, RepImage, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Effective,
    Collision,
    ZeroAction,
    RelationViolation,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Effective => "effective",
            Status::Collision => "collision",
            Status::ZeroAction => "zero_action",
            Status::RelationViolation => "relation_violation",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub status: Status,
    /// Number of semigroup elements whose images were computed, `z` included.
    pub checked: usize,
    pub max_length: usize,
    /// Empty iff the status is effective.
    pub witness: Vec<Path>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReportJson {
    pub status: Status,
    pub checked: usize,
    pub max_length: usize,
    pub witness: Vec<String>,
}

impl VerifyReport {
    pub fn is_effective(&self) -> bool {
        self.status == Status::Effective
    }

    pub fn to_json(&self, q: &Quiver) -> VerifyReportJson {
        VerifyReportJson {
            status: self.status,
            checked: self.checked,
            max_length: self.max_length,
            witness: self.witness.iter().map(|p| p.display(q)).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Bound {
    /// `P_N`: lengths below `N` must act nonzero, length `N` must act as zero.
    Truncated(usize),
    /// `P`: every path up to the given length must act nonzero.
    Upto(usize),
}

struct Failure {
    status: Status,
    witness: Vec<Path>,
}

fn fail(status: Status, witness: Vec<Path>) -> Failure {
    Failure { status, witness }
}

fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

fn check_shapes<R: Representation>(rep: &R, q: &Quiver) -> Result<()> {
    if rep.num_vertices() != q.num_vertices() || rep.num_arrows() != q.num_arrows() {
        return Err(Error::RepMismatch(format!(
            "representation has {} vertices and {} arrows, quiver has {} and {}",
            rep.num_vertices(),
            rep.num_arrows(),
            q.num_vertices(),
            q.num_arrows()
        )));
    }
    for (i, a) in q.arrows().iter().enumerate() {
        let want = (rep.dim(a.head), rep.dim(a.tail));
        if rep.arrow_matrix(i).shape() != want {
            return Err(Error::RepMismatch(format!(
                "arrow `{}` has shape {:?}, expected {:?}",
                a.id,
                rep.arrow_matrix(i).shape(),
                want
            )));
        }
    }
    Ok(())
}

/// Checks all elements with tail `x`: `ε_x` and the nonempty paths from `x`
/// allowed by `bound`. Returns the element count and the first failure.
fn check_tail<R>(rep: &R, q: &Quiver, x: usize, bound: Bound) -> (usize, Option<Failure>)
where
    R: Representation + Sync,
{
    let nonzero = |img: &Matrix<R::Coeff>| !img.is_zero();
    let mut seen: HashMap<(usize, u64), Vec<Path>> = HashMap::new();
    let identity = Matrix::<R::Coeff>::identity(rep.dim(x));
    let eps = Path::Trivial(x);
    let mut checked = 1;
    if !nonzero(&identity) {
        return (
            checked,
            Some(fail(Status::Collision, vec![eps, Path::Zero])),
        );
    }
    seen.insert((x, hash_of(&identity)), vec![eps]);

    let (limit, nilpotent_at) = match bound {
        Bound::Truncated(n) => (n, Some(n)),
        Bound::Upto(l) => (l, None),
    };

    let mut stack: Vec<(Vec<usize>, usize, Matrix<R::Coeff>)> = Vec::new();
    let push_children = |stack: &mut Vec<_>, seq: &[usize], v: usize, img: &Matrix<R::Coeff>| {
        for &a in q.out_arrows(v).iter().rev() {
            let mut s = seq.to_vec();
            s.push(a);
            let m = rep.arrow_matrix(a).mul(img).expect("shapes checked");
            stack.push((s, q.arrow(a).head, m));
        }
    };
    if limit >= 1 {
        push_children(&mut stack, &[], x, &identity);
    }

    while let Some((seq, head, img)) = stack.pop() {
        let p = Path::Arrows(seq);
        if Some(p.arrows().len()) == nilpotent_at {
            if !img.is_zero() {
                return (checked, Some(fail(Status::RelationViolation, vec![p])));
            }
            continue;
        }
        checked += 1;
        if !nonzero(&img) {
            return (checked, Some(fail(Status::ZeroAction, vec![p])));
        }
        let key = (head, hash_of(&img));
        if let Some(bucket) = seen.get(&key) {
            for other in bucket {
                let prev = rep_of_path(rep, q, other);
                if prev.matrix() == Some(&img) {
                    return (
                        checked,
                        Some(fail(Status::Collision, vec![other.clone(), p])),
                    );
                }
            }
        }
        if p.arrows().len() < limit {
            push_children(&mut stack, p.arrows(), head, &img);
        }
        seen.entry(key).or_default().push(p);
    }
    (checked, None)
}

fn run<R>(rep: &R, q: &Quiver, bound: Bound, max_length: usize) -> VerifyReport
where
    R: Representation + Sync,
{
    let outcomes: Vec<(usize, Option<Failure>)> = (0..q.num_vertices())
        .into_par_iter()
        .map(|x| check_tail(rep, q, x, bound))
        .collect();
    // z is checked once: it is the only element acting as zero.
    let mut checked = 1;
    for (count, failure) in outcomes {
        checked += count;
        if let Some(f) = failure {
            return VerifyReport {
                status: f.status,
                checked,
                max_length,
                witness: f.witness,
            };
        }
    }
    VerifyReport {
        status: Status::Effective,
        checked,
        max_length,
        witness: Vec::new(),
    }
}

/// Checks that `rep` is an effective representation of `P_N`.
///
/// Every element of `P_N` is enumerated. Paths of length below `N` must act
/// nonzero and all images (of `z`, the `ε_x` and those paths) must be pairwise
/// distinct; paths of length exactly `N` must act as zero.
pub fn verify_truncated<R>(rep: &R, q: &Quiver, n_trunc: usize) -> Result<VerifyReport>
where
    R: Representation + Sync,
{
    if n_trunc == 0 {
        return Err(Error::InvalidArgument(
            "truncation level must be at least 1".into(),
        ));
    }
    check_shapes(rep, q)?;
    Ok(run(rep, q, Bound::Truncated(n_trunc), n_trunc))
}

/// Default enumeration bound for representations of `P`.
pub fn default_max_len(q: &Quiver) -> usize {
    2 * q.num_vertices() + 2
}

/// Checks injectivity of `rep` on `z`, the `ε_x` and all paths of length at
/// most `max_len`.
pub fn verify_path_rep<R>(rep: &R, q: &Quiver, max_len: usize) -> Result<VerifyReport>
where
    R: Representation + Sync,
{
    if max_len == 0 {
        return Err(Error::InvalidArgument(
            "max length must be at least 1".into(),
        ));
    }
    check_shapes(rep, q)?;
    Ok(run(rep, q, Bound::Upto(max_len), max_len))
}

/// Checks the grading of a truncated representation: every nonzero arrow
/// entry between graded basis vectors raises the grade, and no basis vector
/// carries a grade `>= N`.
pub fn verify_filtration(rep: &GradedRep, q: &Quiver) -> Result<VerifyReport> {
    check_shapes(rep, q)?;
    let n = rep.n_trunc;
    let report = |status, witness| VerifyReport {
        status,
        checked: q.num_arrows(),
        max_length: 1,
        witness,
    };
    for (x, labels) in rep.basis.iter().enumerate() {
        if labels.iter().any(|b| b.grade.is_some_and(|k| k >= n)) {
            return Ok(report(Status::RelationViolation, vec![Path::Trivial(x)]));
        }
    }
    for (ai, arr) in q.arrows().iter().enumerate() {
        let m = &rep.arrows[ai];
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if Ring::is_zero(m.get(r, c)) {
                    continue;
                }
                let src = rep.basis[arr.tail][c].grade;
                let dst = rep.basis[arr.head][r].grade;
                if let (Some(s), Some(d)) = (src, dst) {
                    if d <= s {
                        return Ok(report(Status::RelationViolation, vec![Path::arrow(ai)]));
                    }
                }
            }
        }
    }
    Ok(report(Status::Effective, Vec::new()))
}

/// Square matrix over the two-element field on at most 4 coordinates; row `i`
/// is a bitmask of its nonzero columns.
type Bits = [u8; 4];

fn bits_mul(a: &Bits, b: &Bits) -> Bits {
    let mut out = [0u8; 4];
    for i in 0..4 {
        let mut row = 0u8;
        for (j, bj) in b.iter().enumerate() {
            if a[i] >> j & 1 == 1 {
                row ^= bj;
            }
        }
        out[i] = row;
    }
    out
}

/// Compositions of `total` into `parts` nonnegative summands.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Whether some representation of `P_N` over the two-element field with total
/// dimension `total_dim` is effective. All splittings of `total_dim` over the
/// vertices and all arrow matrices are tried.
///
/// Refuses (with [`Error::GuardExceeded`]) unless `total_dim <= 4` and
/// `|Q_1|·total_dim² <= 20`.
pub fn exhaustive_lower_bound_f2(q: &Quiver, n_trunc: usize, total_dim: usize) -> Result<bool> {
    if n_trunc == 0 {
        return Err(Error::InvalidArgument(
            "truncation level must be at least 1".into(),
        ));
    }
    let m = q.num_arrows();
    if total_dim > 4 || m * total_dim * total_dim > 20 {
        return Err(Error::GuardExceeded(format!(
            "total_dim = {total_dim} with {m} arrows; need total_dim <= 4 and arrows * total_dim^2 <= 20"
        )));
    }

    // Paths of length 1..=N as (parent index or None, arrow), level by level.
    let mut levels: Vec<Vec<(Option<usize>, usize)>> = Vec::new();
    let mut heads: Vec<Vec<usize>> = Vec::new();
    for len in 1..=n_trunc {
        let mut level = Vec::new();
        let mut hs = Vec::new();
        if len == 1 {
            for (a, arr) in q.arrows().iter().enumerate() {
                level.push((None, a));
                hs.push(arr.head);
            }
        } else {
            for (i, &h) in heads[len - 2].iter().enumerate() {
                for &a in q.out_arrows(h) {
                    level.push((Some(i), a));
                    hs.push(q.arrow(a).head);
                }
            }
        }
        levels.push(level);
        heads.push(hs);
    }

    for dims in compositions(total_dim, q.num_vertices()) {
        // a vertex with D_x = 0 sends ε_x to the zero matrix, like z
        if dims.contains(&0) {
            continue;
        }
        let offset: Vec<usize> = dims
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let bit_count: usize = q.arrows().iter().map(|a| dims[a.head] * dims[a.tail]).sum();
        let projections: Vec<Bits> = (0..dims.len())
            .map(|x| {
                let mut b = [0u8; 4];
                for (i, row) in b.iter_mut().enumerate().skip(offset[x]).take(dims[x]) {
                    *row = 1 << i;
                }
                b
            })
            .collect();

        'assign: for mask in 0u32..(1u32 << bit_count) {
            let mut bit = 0;
            let mut arrows: Vec<Bits> = Vec::with_capacity(m);
            for a in q.arrows() {
                let mut b = [0u8; 4];
                for r in 0..dims[a.head] {
                    for c in 0..dims[a.tail] {
                        if mask >> bit & 1 == 1 {
                            b[offset[a.head] + r] |= 1 << (offset[a.tail] + c);
                        }
                        bit += 1;
                    }
                }
                arrows.push(b);
            }

            let mut images: HashSet<Bits> = HashSet::new();
            images.insert([0u8; 4]);
            for p in &projections {
                if !images.insert(*p) {
                    continue 'assign;
                }
            }
            let mut prev: Vec<Bits> = Vec::new();
            for (li, level) in levels.iter().enumerate() {
                let cur: Vec<Bits> = level
                    .iter()
                    .map(|&(parent, a)| match parent {
                        None => arrows[a],
                        Some(i) => bits_mul(&arrows[a], &prev[i]),
                    })
                    .collect();
                let at_n = li + 1 == n_trunc;
                for img in &cur {
                    if at_n {
                        if *img != [0u8; 4] {
                            continue 'assign;
                        }
                    } else if !images.insert(*img) {
                        continue 'assign;
                    }
                }
                prev = cur;
            }
            return Ok(true);
        }
    }
    Ok(false)
}

/// Compares the images of two elements under `rep` as operators on the whole
/// space.
pub fn same_image<R: Representation>(rep: &R, q: &Quiver, p: &Path, r: &Path) -> bool {
    let a: RepImage<R::Coeff> = rep_of_path(rep, q, p);
    a.same_operator(&rep_of_path(rep, q, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::IntMatrix;
    use crate::repbuild::{build_path_rep, build_truncated_rep};
    use num_bigint::BigInt;

    fn a2() -> Quiver {
        Quiver::from_edges(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn a2_truncated_effective() {
        let q = a2();
        let rep = build_truncated_rep(&q, 2).unwrap();
        let r = verify_truncated(&rep, &q, 2).unwrap();
        assert!(r.is_effective());
        assert_eq!(r.checked, 4);
        assert!(r.witness.is_empty());
    }

    #[test]
    fn kronecker_sabotage_collides() {
        let q = Quiver::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let mut rep = build_truncated_rep(&q, 2).unwrap();
        assert!(verify_truncated(&rep, &q, 2).unwrap().is_effective());
        rep.arrows[1] = rep.arrows[0].clone();
        let r = verify_truncated(&rep, &q, 2).unwrap();
        assert_eq!(r.status, Status::Collision);
        assert_eq!(r.witness, vec![Path::arrow(0), Path::arrow(1)]);
    }

    #[test]
    fn loop_cube_vanishes() {
        let q = Quiver::from_edges(1, &[(0, 0)]).unwrap();
        let rep = build_truncated_rep(&q, 3).unwrap();
        let r = verify_truncated(&rep, &q, 3).unwrap();
        assert!(r.is_effective());
        assert_eq!(r.checked, 4);
        assert_eq!(r.max_length, 3);
    }

    #[test]
    fn non_nilpotent_is_a_relation_violation() {
        let q = Quiver::from_edges(1, &[(0, 0)]).unwrap();
        let mut rep = build_truncated_rep(&q, 2).unwrap();
        rep.arrows[0] = IntMatrix::identity(2);
        let r = verify_truncated(&rep, &q, 2).unwrap();
        assert_ne!(r.status, Status::Effective);
        let mut rep = build_truncated_rep(&q, 2).unwrap();
        rep.arrows[0].set(0, 0, BigInt::from(5));
        let r = verify_truncated(&rep, &q, 2).unwrap();
        assert_eq!(r.status, Status::RelationViolation);
    }

    #[test]
    fn zero_arrow_is_zero_action() {
        let q = a2();
        let mut rep = build_truncated_rep(&q, 2).unwrap();
        rep.arrows[0] = IntMatrix::zeros(1, 1);
        let r = verify_truncated(&rep, &q, 2).unwrap();
        assert_eq!(r.status, Status::ZeroAction);
        assert_eq!(r.witness, vec![Path::arrow(0)]);
    }

    #[test]
    fn mismatched_rep_is_an_error() {
        let q = a2();
        let rep = build_truncated_rep(&q, 2).unwrap();
        let other = Quiver::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(matches!(
            verify_truncated(&rep, &other, 2),
            Err(Error::RepMismatch(_))
        ));
    }

    #[test]
    fn two_loops_symbolic() {
        let q = Quiver::from_edges(1, &[(0, 0), (0, 0)]).unwrap();
        let rep = build_path_rep(&q);
        let r = verify_path_rep(&rep, &q, 4).unwrap();
        assert!(r.is_effective());
        // z, ε_x and 2 + 4 + 8 + 16 words
        assert_eq!(r.checked, 32);
    }

    #[test]
    fn single_loop_symbolic() {
        let q = Quiver::from_edges(1, &[(0, 0)]).unwrap();
        let r = verify_path_rep(&build_path_rep(&q), &q, 10).unwrap();
        assert!(r.is_effective());
        assert_eq!(r.checked, 12);
    }

    #[test]
    fn acyclic_a3_symbolic() {
        for edges in [[(0, 1), (1, 2)], [(1, 0), (1, 2)], [(0, 1), (2, 1)]] {
            let q = Quiver::from_edges(3, &edges).unwrap();
            assert!(verify_path_rep(&build_path_rep(&q), &q, 5)
                .unwrap()
                .is_effective());
        }
    }

    #[test]
    fn commutative_block_on_two_loops_collides() {
        let q = Quiver::from_edges(1, &[(0, 0), (0, 0)]).unwrap();
        let mut rep = build_path_rep(&q);
        // diagonal blocks commute, so ab and ba coincide
        for a in 0..2 {
            rep.arrows[a].set(0, 1, crate::polyring::MultiPoly::zero());
        }
        let r = verify_path_rep(&rep, &q, 2).unwrap();
        assert_eq!(r.status, Status::Collision);
    }

    #[test]
    fn filtration_checks() {
        let q = Quiver::from_edges(1, &[(0, 0)]).unwrap();
        let rep = build_truncated_rep(&q, 2).unwrap();
        assert!(verify_filtration(&rep, &q).unwrap().is_effective());

        let mut bad = build_truncated_rep(&q, 3).unwrap();
        let i = bad.grade_index(0, 1).unwrap();
        bad.arrows[0].set(i, i, BigInt::from(7));
        let r = verify_filtration(&bad, &q).unwrap();
        assert_eq!(r.status, Status::RelationViolation);
        assert_eq!(r.witness, vec![Path::arrow(0)]);
    }

    #[test]
    fn f2_examples() {
        let q = a2();
        assert!(!exhaustive_lower_bound_f2(&q, 2, 1).unwrap());
        assert!(exhaustive_lower_bound_f2(&q, 2, 2).unwrap());
        let lp = Quiver::from_edges(1, &[(0, 0)]).unwrap();
        assert!(!exhaustive_lower_bound_f2(&lp, 2, 1).unwrap());
        assert!(exhaustive_lower_bound_f2(&lp, 2, 2).unwrap());
        let a3 = Quiver::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!exhaustive_lower_bound_f2(&a3, 2, 3).unwrap());
    }

    #[test]
    fn f2_guard() {
        let q = Quiver::from_edges(1, &[(0, 0), (0, 0)]).unwrap();
        assert!(matches!(
            exhaustive_lower_bound_f2(&q, 2, 4),
            Err(Error::GuardExceeded(_))
        ));
        assert!(matches!(
            exhaustive_lower_bound_f2(&a2(), 2, 5),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 2).len(), 4);
        assert_eq!(compositions(4, 3).len(), 15);
        assert_eq!(compositions(0, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn report_json() {
        let q = a2();
        let mut rep = build_truncated_rep(&q, 2).unwrap();
        rep.arrows[0] = IntMatrix::zeros(1, 1);
        let j = serde_json::to_value(verify_truncated(&rep, &q, 2).unwrap().to_json(&q)).unwrap();
        assert_eq!(j["status"], "zero_action");
        assert_eq!(j["witness"][0], "a0");
    }
}
