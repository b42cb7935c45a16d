//! Exact sparse multivariate polynomials over arbitrary-precision integers and
//! dense matrices over a commutative ring.
//!
//! Variables are formal, so two polynomials are equal exactly when their
//! canonical term maps are equal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::{self, Debug};
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::Quiver;

/// Commutative ring operations needed by matrix products.
pub trait Ring: Clone + Eq + Hash + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarKind {
    Tau,
    Eta,
    Zeta,
}

/// One of `τ_α, η_α, ζ_α`. Indexed by arrow declaration order, then kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub arrow: usize,
    pub kind: VarKind,
}

impl Variable {
    pub fn tau(arrow: usize) -> Self {
        Variable {
            arrow,
            kind: VarKind::Tau,
        }
    }
    pub fn eta(arrow: usize) -> Self {
        Variable {
            arrow,
            kind: VarKind::Eta,
        }
    }
    pub fn zeta(arrow: usize) -> Self {
        Variable {
            arrow,
            kind: VarKind::Zeta,
        }
    }

    pub fn index(self) -> u32 {
        let k = match self.kind {
            VarKind::Tau => 0,
            VarKind::Eta => 1,
            VarKind::Zeta => 2,
        };
        (3 * self.arrow + k) as u32
    }

    pub fn from_index(i: u32) -> Self {
        let kind = match i % 3 {
            0 => VarKind::Tau,
            1 => VarKind::Eta,
            _ => VarKind::Zeta,
        };
        Variable {
            arrow: (i / 3) as usize,
            kind,
        }
    }

    pub fn name(self, q: &Quiver) -> String {
        let k = match self.kind {
            VarKind::Tau => "tau",
            VarKind::Eta => "eta",
            VarKind::Zeta => "zeta",
        };
        format!("{k}({})", q.arrow(self.arrow).id)
    }
}

impl From<Variable> for MultiPoly {
    fn from(v: Variable) -> Self {
        MultiPoly::var(v.index())
    }
}

/// A monomial as a sparse exponent vector, sorted by variable index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(u32, u32)>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: u32) -> Self {
        Monomial {
            exps: vec![(v, 1)],
            degree: 1,
        }
    }

    /// Builds from `(variable, exponent)` pairs in any order; zero exponents
    /// are dropped and repeated variables merged.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        let exps: Vec<(u32, u32)> = map.into_iter().filter(|&(_, e)| e > 0).collect();
        let degree = exps.iter().map(|&(_, e)| e).sum();
        Monomial { exps, degree }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.exps
    }

    pub fn exponent(&self, v: u32) -> u32 {
        self.exps
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut exps = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    exps.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&a[i..]);
        exps.extend_from_slice(&b[j..]);
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the larger exponent at the
    /// smallest differing variable wins.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let (a, b) = (&self.exps, &other.exps);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {
                            if ea != eb {
                                return ea.cmp(&eb);
                            }
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of a homogeneity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(u32),
    Mixed,
}

/// A polynomial in `Z[x_0, x_1, ...]`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: u32) -> Self {
        Self::term(1, Monomial::var(v))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&c) {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if Zero::is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if Zero::is_zero(e.get()) {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn is_homogeneous(&self) -> Homogeneity {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => Homogeneity::Zero,
            Some(d) => {
                if degs.all(|e| e == d) {
                    Homogeneity::Degree(d)
                } else {
                    Homogeneity::Mixed
                }
            }
        }
    }

    /// Variables occurring with nonzero exponent.
    pub fn support(&self) -> std::collections::BTreeSet<u32> {
        self.terms
            .keys()
            .flat_map(|m| m.exponents().iter().map(|&(v, _)| v))
            .collect()
    }

    /// Renders leading term first, e.g. `3*tau(a)^2*eta(b) - zeta(c)`.
    pub fn render(&self, name: &dyn Fn(u32) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.sign() == num_bigint::Sign::Minus;
            let abs = if negative { -c } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.exponents().is_empty() {
                factors.push(abs.to_string());
            }
            for &(v, e) in m.exponents() {
                if e == 1 {
                    factors.push(name(v));
                } else {
                    factors.push(format!("{}^{e}", name(v)));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Renders with `tau/eta/zeta(arrow)` names.
    pub fn render_with(&self, q: &Quiver) -> String {
        self.render(&|v| Variable::from_index(v).name(q))
    }
}

impl Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|v| format!("x{v}")))
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::constant(1)
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        MultiPoly::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        MultiPoly::mul(self, other)
    }
}

/// JSON form of one term: `{"coeff": "<decimal>", "exps": [[var, exp], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<[u32; 2]>,
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| TermJson {
                coeff: c.to_string(),
                exps: m.exponents().iter().map(|&(v, e)| [v, e]).collect(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<TermJson>::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.len());
        for t in raw {
            let c: BigInt = t.coeff.parse().map_err(|e| {
                serde::de::Error::custom(format!("bad coefficient {:?}: {e}", t.coeff))
            })?;
            terms.push((
                Monomial::from_pairs(t.exps.into_iter().map(|[v, e]| (v, e))),
                c,
            ));
        }
        Ok(MultiPoly::from_terms(terms))
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type PolyMatrix = Matrix<MultiPoly>;
pub type IntMatrix = Matrix<BigInt>;

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        if rows.iter().any(|row| row.len() != cols) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Self::new(r, cols, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(<[T]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}
