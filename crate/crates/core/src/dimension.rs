//! Effective-dimension formulas for path semigroups and their truncations.
//!
//! Two different vertex splits live here and are kept apart:
//! [`PathClassification`] separates vertices with a noncommutative cycle monoid,
//! while [`KProfile`] separates vertices with an empty grade interval at a fixed
//! truncation level.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{length_profile_with, sccs, ExtLen, LengthProfile, Quiver, SccPartition};

/// Vertices whose cycle monoid is noncommutative (`a`) versus the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathClassification {
    in_a: Vec<bool>,
}

impl PathClassification {
    pub fn in_a(&self, x: usize) -> bool {
        self.in_a[x]
    }

    pub fn a(&self) -> Vec<usize> {
        (0..self.in_a.len()).filter(|&x| self.in_a[x]).collect()
    }

    pub fn b(&self) -> Vec<usize> {
        (0..self.in_a.len()).filter(|&x| !self.in_a[x]).collect()
    }

    pub fn a_len(&self) -> usize {
        self.in_a.iter().filter(|&&b| b).count()
    }
}

pub fn classify_path(q: &Quiver) -> PathClassification {
    classify_path_with(q, &sccs(q))
}

pub fn classify_path_with(q: &Quiver, scc: &SccPartition) -> PathClassification {
    PathClassification {
        in_a: (0..q.num_vertices())
            .map(|x| !scc.is_commutative(x))
            .collect(),
    }
}

/// `|A| + n`.
pub fn effdim_path(q: &Quiver) -> usize {
    classify_path(q).a_len() + q.num_vertices()
}

fn check_level(n_trunc: usize) -> Result<()> {
    if n_trunc == 0 {
        return Err(Error::InvalidArgument(
            "truncation level must be at least 1".into(),
        ));
    }
    Ok(())
}

/// `min{l⁻+1, l⁺+1, N, max{l⁻+l⁺+2-N, 1}}` with saturating infinities.
pub fn d_value(l_minus: ExtLen, l_plus: ExtLen, n_trunc: usize) -> usize {
    let overlap = (l_minus + l_plus + 2)
        .sub_finite(n_trunc)
        .max(ExtLen::Finite(1));
    let d = [l_minus + 1, l_plus + 1, ExtLen::Finite(n_trunc), overlap]
        .into_iter()
        .min()
        .expect("nonempty");
    d.finite().expect("bounded by N")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexK {
    /// `K(x)` as a closed integer interval, `None` when empty.
    pub interval: Option<(usize, usize)>,
    pub d: usize,
}

impl VertexK {
    pub fn len(&self) -> usize {
        self.interval.map_or(0, |(lo, hi)| hi - lo + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.interval.is_none()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.interval.is_some_and(|(lo, hi)| lo <= k && k <= hi)
    }
}

/// Grade intervals `K(x)` and minimal local dimensions `d_x` at level `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KProfile {
    pub n_trunc: usize,
    pub vertices: Vec<VertexK>,
}

impl KProfile {
    pub fn k_min(&self, x: usize) -> Option<usize> {
        self.vertices[x].interval.map(|(lo, _)| lo)
    }

    pub fn k_max(&self, x: usize) -> Option<usize> {
        self.vertices[x].interval.map(|(_, hi)| hi)
    }

    pub fn d(&self, x: usize) -> usize {
        self.vertices[x].d
    }

    /// Vertices with nonempty `K(x)`.
    pub fn a_n(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&x| !self.vertices[x].is_empty())
            .collect()
    }

    pub fn b_n(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&x| self.vertices[x].is_empty())
            .collect()
    }

    pub fn total(&self) -> usize {
        self.vertices.iter().map(|v| v.d).sum()
    }
}

/// `K(x) = [max(0, N-1-l⁺), min(N-1, l⁻)]`: path lengths into a vertex are
/// closed under taking suffixes, and lengths out of it under prefixes.
pub fn k_interval(l_minus: ExtLen, l_plus: ExtLen, n_trunc: usize) -> Option<(usize, usize)> {
    let top = n_trunc - 1;
    let lo = match l_plus {
        ExtLen::Inf => 0,
        ExtLen::Finite(p) => top.saturating_sub(p),
    };
    let hi = match l_minus {
        ExtLen::Inf => top,
        ExtLen::Finite(m) => m.min(top),
    };
    (lo <= hi).then_some((lo, hi))
}

pub fn k_profile(q: &Quiver, n_trunc: usize) -> Result<KProfile> {
    k_profile_with(&length_profile_with(q, &sccs(q)), n_trunc)
}

pub fn k_profile_with(lp: &LengthProfile, n_trunc: usize) -> Result<KProfile> {
    check_level(n_trunc)?;
    let vertices = lp
        .minus
        .iter()
        .zip(&lp.plus)
        .map(|(&m, &p)| VertexK {
            interval: k_interval(m, p, n_trunc),
            d: d_value(m, p, n_trunc),
        })
        .collect();
    Ok(KProfile { n_trunc, vertices })
}

/// `Σ_x d_x`.
pub fn effdim_truncated(q: &Quiver, n_trunc: usize) -> Result<usize> {
    check_level(n_trunc)?;
    let lp = length_profile_with(q, &sccs(q));
    Ok(lp
        .minus
        .iter()
        .zip(&lp.plus)
        .map(|(&m, &p)| d_value(m, p, n_trunc))
        .sum())
}

/// Coefficients with `effdim(P_N) = a·N + b` for every `N >= threshold`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    pub a: usize,
    pub b: usize,
    pub threshold: usize,
}

impl Stabilization {
    pub fn at(&self, n_trunc: usize) -> usize {
        self.a * n_trunc + self.b
    }
}

pub fn stabilization(q: &Quiver) -> Stabilization {
    stabilization_with(q, &length_profile_with(q, &sccs(q)))
}

pub fn stabilization_with(q: &Quiver, lp: &LengthProfile) -> Stabilization {
    let (mut a, mut b) = (0, 0);
    for (&m, &p) in lp.minus.iter().zip(&lp.plus) {
        match (m.finite(), p.finite()) {
            (None, None) => a += 1,
            (Some(_), Some(_)) => b += 1,
            (Some(v), None) | (None, Some(v)) => b += v + 1,
        }
    }
    Stabilization {
        a,
        b,
        threshold: q.num_vertices(),
    }
}

/// Closed form for a type-A quiver given the vertex counts of its maximal
/// directed runs (consecutive runs share an endpoint).
pub fn an_closed_form(segments: &[usize], n_trunc: usize) -> Result<usize> {
    check_level(n_trunc)?;
    if segments.is_empty() {
        return Err(Error::InvalidArgument("segment list is empty".into()));
    }
    let min_size = if segments.len() > 1 { 2 } else { 1 };
    if let Some(&bad) = segments.iter().find(|&&s| s < min_size) {
        return Err(Error::InvalidArgument(format!(
            "segment size {bad} is below {min_size}"
        )));
    }
    let n = n_trunc;
    let long: usize = segments
        .iter()
        .filter(|&&s| n < s)
        .map(|&s| n * (s + 1 - n) - 1)
        .sum();
    let short: usize = segments.iter().filter(|&&s| s <= n).map(|&s| s - 1).sum();
    Ok(1 + long + short)
}

/// If the underlying graph of `q` is a line (Dynkin type A), returns the vertex
/// counts of its maximal directed runs, read from the lower-indexed end.
pub fn line_segments(q: &Quiver) -> Option<Vec<usize>> {
    let n = q.num_vertices();
    if q.num_arrows() + 1 != n {
        return None;
    }
    if n == 1 {
        return Some(vec![1]);
    }
    let mut nbrs: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for a in q.arrows() {
        if a.tail == a.head {
            return None;
        }
        nbrs[a.tail].push((a.head, true));
        nbrs[a.head].push((a.tail, false));
    }
    if nbrs.iter().any(|v| v.len() > 2) {
        return None;
    }
    let start = (0..n).find(|&x| nbrs[x].len() == 1)?;
    let mut dirs = Vec::with_capacity(n - 1);
    let (mut prev, mut cur) = (usize::MAX, start);
    let mut seen = 1;
    loop {
        let next = nbrs[cur].iter().find(|&&(w, _)| w != prev);
        match next {
            Some(&(w, forward)) => {
                dirs.push(forward);
                prev = cur;
                cur = w;
                seen += 1;
                if seen > n {
                    return None;
                }
            }
            None => break,
        }
    }
    if seen != n {
        return None;
    }
    let mut segments = Vec::new();
    let mut run = 1;
    for w in dirs.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            segments.push(run + 1);
            run = 1;
        }
    }
    segments.push(run + 1);
    Some(segments)
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexReport {
    pub vertex: String,
    pub scc: usize,
    pub commutative: bool,
    pub l_minus: ExtLen,
    pub l_plus: ExtLen,
    #[serde(rename = "K")]
    pub k: Option<[usize; 2]>,
    pub d: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Totals {
    pub effdim_path: usize,
    pub effdim_truncated: Option<usize>,
    pub a: usize,
    pub b: usize,
    pub threshold: usize,
}

/// Everything the `analyze` command prints.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub truncation: Option<usize>,
    pub vertices: Vec<VertexReport>,
    pub totals: Totals,
}

pub fn analyze(q: &Quiver, n_trunc: Option<usize>) -> Result<AnalysisReport> {
    let scc = sccs(q);
    let lp = length_profile_with(q, &scc);
    let kp = n_trunc.map(|n| k_profile_with(&lp, n)).transpose()?;
    let st = stabilization_with(q, &lp);
    let vertices = (0..q.num_vertices())
        .map(|x| VertexReport {
            vertex: q.vertex_name(x).to_string(),
            scc: scc.component_of(x),
            commutative: scc.is_commutative(x),
            l_minus: lp.minus[x],
            l_plus: lp.plus[x],
            k: kp
                .as_ref()
                .and_then(|k| k.vertices[x].interval.map(|(lo, hi)| [lo, hi])),
            d: kp.as_ref().map(|k| k.d(x)),
        })
        .collect();
    Ok(AnalysisReport {
        truncation: n_trunc,
        vertices,
        totals: Totals {
            effdim_path: classify_path_with(q, &scc).a_len() + q.num_vertices(),
            effdim_truncated: kp.as_ref().map(KProfile::total),
            a: st.a,
            b: st.b,
            threshold: st.threshold,
        },
    })
}
