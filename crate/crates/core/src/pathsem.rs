//! The path semigroup of a quiver: paths, composition with a zero element,
//! bounded enumeration, and first-return cycles at a vertex.
//!
//! Arrow sequences are stored in traversal order: the first arrow walked is at
//! index 0. The textual form writes composition right-to-left, so the path that
//! walks `a` and then `b` renders as `b*a`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::quiver::{sccs, Quiver};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Path {
    /// The zero element `z`.
    Zero,
    /// The trivial path `ε_x`.
    Trivial(usize),
    /// A nonempty composable arrow sequence, in traversal order.
    Arrows(Vec<usize>),
}

impl Path {
    pub fn arrow(a: usize) -> Path {
        Path::Arrows(vec![a])
    }

    /// Validates that consecutive arrows compose.
    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Path> {
        if arrows.is_empty() {
            return Err(Error::InvalidPath("empty arrow sequence".into()));
        }
        for &a in &arrows {
            if a >= q.num_arrows() {
                return Err(Error::InvalidPath(format!("arrow index {a} out of range")));
            }
        }
        for w in arrows.windows(2) {
            if q.arrow(w[0]).head != q.arrow(w[1]).tail {
                return Err(Error::InvalidPath(format!(
                    "`{}` does not continue `{}`",
                    q.arrow(w[1]).id,
                    q.arrow(w[0]).id
                )));
            }
        }
        Ok(Path::Arrows(arrows))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Path::Zero)
    }

    /// Path length; `None` for the zero path.
    pub fn length(&self) -> Option<usize> {
        match self {
            Path::Zero => None,
            Path::Trivial(_) => Some(0),
            Path::Arrows(a) => Some(a.len()),
        }
    }

    /// Arrows in traversal order (empty for trivial and zero paths).
    pub fn arrows(&self) -> &[usize] {
        match self {
            Path::Arrows(a) => a,
            _ => &[],
        }
    }

    pub fn tail(&self, q: &Quiver) -> Option<usize> {
        match self {
            Path::Zero => None,
            Path::Trivial(x) => Some(*x),
            Path::Arrows(a) => Some(q.arrow(a[0]).tail),
        }
    }

    pub fn head(&self, q: &Quiver) -> Option<usize> {
        match self {
            Path::Zero => None,
            Path::Trivial(x) => Some(*x),
            Path::Arrows(a) => Some(q.arrow(*a.last().expect("nonempty")).head),
        }
    }

    /// Canonical enumeration order: by length, then lexicographically by arrow
    /// index (trivial paths by vertex). The zero path sorts first.
    pub fn canonical_cmp(&self, other: &Path) -> Ordering {
        let key = |p: &Path| match p {
            Path::Zero => (0usize, 0usize),
            Path::Trivial(x) => (1, *x),
            Path::Arrows(a) => (2 + a.len(), 0),
        };
        key(self)
            .cmp(&key(other))
            .then_with(|| self.arrows().cmp(other.arrows()))
    }

    pub fn display(&self, q: &Quiver) -> String {
        match self {
            Path::Zero => "z".to_string(),
            Path::Trivial(x) => format!("e({})", q.vertex_name(*x)),
            Path::Arrows(a) => a
                .iter()
                .rev()
                .map(|&i| q.arrow(i).id.as_str())
                .collect::<Vec<_>>()
                .join("*"),
        }
    }

    /// Inverse of [`Path::display`].
    pub fn parse(q: &Quiver, s: &str) -> Result<Path> {
        let s = s.trim();
        if s == "z" {
            return Ok(Path::Zero);
        }
        if let Some(inner) = s.strip_prefix("e(").and_then(|r| r.strip_suffix(')')) {
            return Ok(Path::Trivial(q.vertex(inner.trim())?));
        }
        let mut arrows = s
            .split('*')
            .map(|id| q.arrow_by_id(id.trim()))
            .collect::<Result<Vec<_>>>()?;
        arrows.reverse();
        Path::from_arrows(q, arrows)
    }
}

/// The product `p·r`: walk `r`, then `p`. Non-composable products are `z`.
pub fn compose(q: &Quiver, p: &Path, r: &Path) -> Path {
    match (p, r) {
        (Path::Zero, _) | (_, Path::Zero) => Path::Zero,
        _ => {
            if p.tail(q) != r.head(q) {
                return Path::Zero;
            }
            match (p, r) {
                (Path::Trivial(_), _) => r.clone(),
                (_, Path::Trivial(_)) => p.clone(),
                (Path::Arrows(pa), Path::Arrows(ra)) => {
                    let mut seq = ra.clone();
                    seq.extend_from_slice(pa);
                    Path::Arrows(seq)
                }
                _ => unreachable!(),
            }
        }
    }
}

/// All nonzero paths of length `<= max_len`, each once, in canonical order.
pub fn enumerate_paths(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..q.num_vertices()).map(Path::Trivial).collect();
    let mut level: Vec<Vec<usize>> = Vec::new();
    if max_len >= 1 {
        level = (0..q.num_arrows()).map(|a| vec![a]).collect();
    }
    for len in 1..=max_len {
        if level.is_empty() {
            break;
        }
        let mut next = Vec::new();
        if len < max_len {
            for seq in &level {
                let h = q.arrow(*seq.last().expect("nonempty")).head;
                for &a in q.out_arrows(h) {
                    let mut s = seq.clone();
                    s.push(a);
                    next.push(s);
                }
            }
        }
        out.extend(level.drain(..).map(Path::Arrows));
        level = next;
    }
    out
}

/// First-return cycles at a vertex: the free generating set of the monoid of
/// cycles at `vertex`, up to a length bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBasis {
    pub vertex: usize,
    pub cycles: Vec<Path>,
    /// True when no first-return cycle is longer than the bound used.
    pub complete: bool,
}

pub fn first_return_cycles(q: &Quiver, x: usize, max_len: usize) -> CycleBasis {
    let scc = sccs(q);
    let comp = scc.component_of(x);
    let mut cycles = Vec::new();
    let mut truncated = false;

    if scc.component(comp).has_cycle && max_len >= 1 {
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(x, Vec::new())];
        while let Some((v, seq)) = stack.pop() {
            for &a in q.out_arrows(v) {
                let w = q.arrow(a).head;
                if scc.component_of(w) != comp {
                    continue;
                }
                let mut s = seq.clone();
                s.push(a);
                if w == x {
                    cycles.push(Path::Arrows(s));
                } else if s.len() < max_len {
                    stack.push((w, s));
                } else {
                    truncated = true;
                }
            }
        }
    }

    cycles.sort_by(|a, b| a.canonical_cmp(b));
    CycleBasis {
        vertex: x,
        cycles,
        complete: !truncated,
    }
}

/// Splits a cycle at `x` at every intermediate visit to `x`. The factors are
/// returned in traversal order; `ε_x` factors as the empty product.
pub fn factorize_cycle(q: &Quiver, p: &Path, x: usize) -> Result<Vec<Path>> {
    if p.tail(q) != Some(x) || p.head(q) != Some(x) {
        return Err(Error::InvalidPath(format!(
            "`{}` is not a cycle at `{}`",
            p.display(q),
            q.vertex_name(x)
        )));
    }
    let mut factors = Vec::new();
    let mut current = Vec::new();
    for &a in p.arrows() {
        current.push(a);
        if q.arrow(a).head == x {
            factors.push(Path::Arrows(std::mem::take(&mut current)));
        }
    }
    debug_assert!(current.is_empty());
    Ok(factors)
}

/// Whether the monoid of cycles at `x` is commutative (at most one generator).
pub fn is_commutative_at(q: &Quiver, x: usize) -> bool {
    sccs(q).is_commutative(x)
}
