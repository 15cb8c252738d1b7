//! Finite fields, signed incidence matrices and symmetric representations.
//!
//! For a graph labelled over `Z_p^k` with no zero labels, the matrix
//! `A = I^T B I` over `GF(p^l)` (with `l >= k`) has a nonsingular
//! principal submatrix `A[F]` exactly when `F` is acyclic and
//! gamma-nonzero. Here `I` is a signed vertex-edge incidence matrix and
//! `B` is diagonal with entries `1 / phi(label)` for an injective linear
//! map `phi : Z_p^k -> GF(p^l)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::Value;
use thiserror::Error;

use crate::abelian::{is_prime, GroupDescriptor, GroupElement};
use crate::labelled_graph::{Edge, EdgeId, EdgeSet, GraphError, LabelledGraph, Vertex, VertexId};

pub const MAX_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be between 1 and {MAX_DEGREE}, got {0}")]
    BadDegree(u32),
    #[error("GF({p}^{ell}) is too large to construct")]
    TooLarge { p: u64, ell: u32 },
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("element coefficients {0:?} do not describe an element of the field")]
    BadElement(Vec<u64>),
    #[error("matrix dimensions do not match: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("{0} is not a row or column of the matrix")]
    UnknownIndex(String),
    #[error("labels must lie in Z_p^k for the field characteristic p = {p}, got {group}")]
    WrongGroup { p: u32, group: GroupDescriptor },
    #[error("vertex {0} has a zero label")]
    ZeroLabel(VertexId),
    #[error("extension degree {ell} is smaller than the label dimension {k}")]
    DegreeTooSmall { ell: u8, k: usize },
    #[error("homomorphism images are linearly dependent over GF(p)")]
    DependentImages,
    #[error("the label group has no nonzero element")]
    TrivialGroup,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

type Poly = Vec<u64>;

/// Remainder of `a` modulo the monic polynomial `b` (little-endian).
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = r.pop().expect("non-empty");
        if lead != 0 {
            let shift = r.len() - db;
            for (i, &c) in b[..db].iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * c % p) % p;
            }
        }
    }
    r
}

fn digits(mut t: u64, p: u64, len: usize) -> Poly {
    (0..len)
        .map(|_| {
            let d = t % p;
            t /= p;
            d
        })
        .collect()
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let degree = f.len() - 1;
    (1..=degree / 2).all(|d| {
        (0..p.pow(d as u32)).all(|t| {
            let mut divisor = digits(t, p, d);
            divisor.push(1);
            poly_rem(f, &divisor, p).iter().any(|&c| c != 0)
        })
    })
}

/// `GF(p^l)` as polynomials over `GF(p)` modulo a fixed monic
/// irreducible polynomial of degree `l`: the smallest one when the lower
/// coefficients are read as base-`p` digits, constant term first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaloisField {
    p: u32,
    ell: u8,
    modulus: [u32; MAX_DEGREE],
}

impl GaloisField {
    pub fn new(p: u64, ell: u32) -> Result<Self, GfError> {
        if !is_prime(p) || p > u64::from(u32::MAX) {
            return Err(GfError::NotPrime(p));
        }
        if ell == 0 || ell as usize > MAX_DEGREE {
            return Err(GfError::BadDegree(ell));
        }
        let size = p.checked_pow(ell).ok_or(GfError::TooLarge { p, ell })?;
        let len = ell as usize;
        let lower = (0..size)
            .map(|t| digits(t, p, len))
            .find(|lower| {
                let mut f = lower.clone();
                f.push(1);
                is_irreducible(&f, p)
            })
            .expect("irreducible polynomials exist in every degree");
        let mut modulus = [0u32; MAX_DEGREE];
        for (slot, c) in modulus.iter_mut().zip(lower) {
            *slot = c as u32;
        }
        Ok(Self {
            p: p as u32,
            ell: ell as u8,
            modulus,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ell(&self) -> u8 {
        self.ell
    }

    pub fn order(&self) -> u128 {
        u128::from(self.p).pow(u32::from(self.ell))
    }

    /// Coefficients of the modulus, constant term first, leading 1 included.
    pub fn modulus(&self) -> Vec<u32> {
        let mut m = self.modulus[..self.ell as usize].to_vec();
        m.push(1);
        m
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: *self,
            coeffs: [0; MAX_DEGREE],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = n.rem_euclid(i64::from(self.p)) as u32;
        e
    }

    /// The element `c_0 + c_1 x + ...`; at most `l` coefficients, each
    /// below `p`.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement, GfError> {
        if coeffs.len() > self.ell as usize || coeffs.iter().any(|&c| c >= u64::from(self.p)) {
            return Err(GfError::BadElement(coeffs.to_vec()));
        }
        let mut e = self.zero();
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = c as u32;
        }
        Ok(e)
    }

    /// `x^i` reduced modulo the field polynomial.
    pub fn x_power(&self, i: u32) -> FieldElement {
        let mut x = self.zero();
        if self.ell == 1 {
            // x is the modulus itself, hence zero
            x.coeffs[0] = 0;
        } else {
            x.coeffs[1] = 1;
        }
        x.pow(u128::from(i))
    }

    /// Every element, ordered by coefficient digits.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let p = u64::from(self.p);
        let len = self.ell as usize;
        (0..self.order() as u64).map(move |t| self.element(&digits(t, p, len)).expect("digits are below p"))
    }
}

impl fmt::Display for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ell == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.ell)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: GaloisField,
    coeffs: [u32; MAX_DEGREE],
}

impl FieldElement {
    pub fn field(&self) -> GaloisField {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs[..self.field.ell as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn pow(self, mut exp: u128) -> Self {
        let mut base = self;
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Result<Self, GfError> {
        if self.is_zero() {
            return Err(GfError::ZeroInverse);
        }
        Ok(self.pow(self.field.order() - 2))
    }

    /// A plain integer over prime fields, a coefficient array otherwise.
    pub fn to_json(&self) -> Value {
        if self.field.ell == 1 {
            Value::from(self.coeffs[0])
        } else {
            Value::from(self.coeffs().to_vec())
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.field, other.field, "operands from different fields");
    }
}

impl Add for FieldElement {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        let p = self.field.p as u64;
        let mut out = self;
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs) {
            *a = ((u64::from(*a) + u64::from(b)) % p) as u32;
        }
        out
    }
}

impl Neg for FieldElement {
    type Output = Self;

    fn neg(self) -> Self {
        let p = self.field.p;
        let mut out = self;
        for a in out.coeffs.iter_mut() {
            *a = (p - *a) % p;
        }
        out
    }
}

impl Sub for FieldElement {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for FieldElement {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        let p = u64::from(self.field.p);
        let l = self.field.ell as usize;
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..l {
            if self.coeffs[i] == 0 {
                continue;
            }
            for j in 0..l {
                prod[i + j] = (prod[i + j] + u64::from(self.coeffs[i]) * u64::from(rhs.coeffs[j])) % p;
            }
        }
        for d in (l..2 * l - 1).rev() {
            let lead = prod[d];
            if lead != 0 {
                for i in 0..l {
                    let sub = lead * u64::from(self.field.modulus[i]) % p;
                    prod[d - l + i] = (prod[d - l + i] + p - sub) % p;
                }
            }
        }
        let mut out = self.field.zero();
        for i in 0..l {
            out.coeffs[i] = prod[i] as u32;
        }
        out
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.ell == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            let parts: Vec<String> = self.coeffs().iter().map(u32::to_string).collect();
            write!(f, "[{}]", parts.join(","))
        }
    }
}

/// A dense matrix with named rows and columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: GaloisField,
    rows: Vec<String>,
    cols: Vec<String>,
    entries: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn zeros(field: GaloisField, rows: Vec<String>, cols: Vec<String>) -> Self {
        let entries = vec![field.zero(); rows.len() * cols.len()];
        Self {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(field: GaloisField, ids: Vec<String>) -> Self {
        let mut m = Self::zeros(field, ids.clone(), ids);
        for i in 0..m.rows.len() {
            m.set(i, i, field.one());
        }
        m
    }

    /// Square matrix with rows and columns named `0, 1, ...`.
    pub fn from_rows(field: GaloisField, rows: Vec<Vec<FieldElement>>) -> Result<Self, GfError> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(GfError::Dimension("ragged rows".into()));
        }
        let names = |k: usize| (0..k).map(|i| i.to_string()).collect::<Vec<_>>();
        Ok(Self {
            field,
            rows: names(n),
            cols: names(m),
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn field(&self) -> GaloisField {
        self.field
    }

    pub fn rows(&self) -> &[String] {
        &self.rows
    }

    pub fn cols(&self) -> &[String] {
        &self.cols
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.entries[r * self.cols.len() + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: FieldElement) {
        let n = self.cols.len();
        self.entries[r * n + c] = value;
    }

    pub fn col_index(&self, id: &str) -> Result<usize, GfError> {
        self.cols
            .iter()
            .position(|c| c == id)
            .ok_or_else(|| GfError::UnknownIndex(id.to_owned()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GfError> {
        if self.n_cols() != other.n_rows() {
            return Err(GfError::Dimension(format!(
                "{}x{} times {}x{}",
                self.n_rows(),
                self.n_cols(),
                other.n_rows(),
                other.n_cols()
            )));
        }
        let mut out = Self::zeros(self.field, self.rows.clone(), other.cols.clone());
        for i in 0..self.n_rows() {
            for k in 0..self.n_cols() {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.n_cols() {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.field, self.cols.clone(), self.rows.clone());
        for i in 0..self.n_rows() {
            for j in 0..self.n_cols() {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = *e * c;
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(
            self.field,
            rows.iter().map(|&r| self.rows[r].clone()).collect(),
            cols.iter().map(|&c| self.cols[c].clone()).collect(),
        );
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }

    pub fn principal(&self, idx: &[usize]) -> Self {
        self.submatrix(idx, idx)
    }

    pub fn is_square(&self) -> bool {
        self.n_rows() == self.n_cols()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.n_rows()).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.n_rows())
                .all(|i| self.get(i, i).is_zero() && (0..i).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    /// Row echelon form in place; returns the pivot count and whether an
    /// odd number of row swaps occurred.
    fn eliminate(rows: usize, cols: usize, a: &mut [FieldElement]) -> (usize, bool) {
        let mut rank = 0;
        let mut odd = false;
        for c in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| !a[r * cols + c].is_zero()) else {
                continue;
            };
            if pivot != rank {
                for j in 0..cols {
                    a.swap(pivot * cols + j, rank * cols + j);
                }
                odd = !odd;
            }
            let inv = a[rank * cols + c].inv().expect("pivot is nonzero");
            for r in rank + 1..rows {
                let factor = a[r * cols + c] * inv;
                if factor.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let v = a[r * cols + j] - factor * a[rank * cols + j];
                    a[r * cols + j] = v;
                }
            }
            rank += 1;
        }
        (rank, odd)
    }

    pub fn rank(&self) -> usize {
        let mut a = self.entries.clone();
        Self::eliminate(self.n_rows(), self.n_cols(), &mut a).0
    }

    pub fn det(&self) -> Result<FieldElement, GfError> {
        if !self.is_square() {
            return Err(GfError::Dimension(format!("determinant of {}x{}", self.n_rows(), self.n_cols())));
        }
        let n = self.n_rows();
        let mut a = self.entries.clone();
        let (rank, odd) = Self::eliminate(n, n, &mut a);
        if rank < n {
            return Ok(self.field.zero());
        }
        let d = (0..n).fold(self.field.one(), |acc, i| acc * a[i * n + i]);
        Ok(if odd { -d } else { d })
    }

    pub fn inverse(&self) -> Result<Self, GfError> {
        if !self.is_square() {
            return Err(GfError::Dimension(format!("inverse of {}x{}", self.n_rows(), self.n_cols())));
        }
        let n = self.n_rows();
        let w = 2 * n;
        let mut a = vec![self.field.zero(); n * w];
        for i in 0..n {
            for j in 0..n {
                a[i * w + j] = self.get(i, j);
            }
            a[i * w + n + i] = self.field.one();
        }
        for c in 0..n {
            let pivot = (c..n).find(|&r| !a[r * w + c].is_zero()).ok_or(GfError::Singular)?;
            for j in 0..w {
                a.swap(pivot * w + j, c * w + j);
            }
            let inv = a[c * w + c].inv()?;
            for j in 0..w {
                a[c * w + j] = a[c * w + j] * inv;
            }
            for r in (0..n).filter(|&r| r != c) {
                let factor = a[r * w + c];
                if factor.is_zero() {
                    continue;
                }
                for j in 0..w {
                    let v = a[r * w + j] - factor * a[c * w + j];
                    a[r * w + j] = v;
                }
            }
        }
        let mut out = Self::zeros(self.field, self.cols.clone(), self.rows.clone());
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, a[i * w + n + j]);
            }
        }
        Ok(out)
    }

    /// Rows of entries as JSON values.
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "field": self.field.to_string(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": (0..self.n_rows())
                .map(|i| (0..self.n_cols()).map(|j| self.get(i, j).to_json()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.n_rows())
            .map(|i| (0..self.n_cols()).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        let width = cells
            .iter()
            .flatten()
            .chain(self.cols.iter())
            .map(String::len)
            .max()
            .unwrap_or(1);
        let label = self.rows.iter().map(String::len).max().unwrap_or(0);
        write!(f, "{:label$}", "")?;
        for c in &self.cols {
            write!(f, " {c:>width$}")?;
        }
        writeln!(f)?;
        for (r, row) in self.rows.iter().zip(&cells) {
            write!(f, "{r:label$}")?;
            for cell in row {
                write!(f, " {cell:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// An injective homomorphism `Z_p^k -> GF(p^l)`, given by the images of
/// the unit vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    field: GaloisField,
    images: Vec<FieldElement>,
}

impl Homomorphism {
    pub fn new(field: GaloisField, images: Vec<FieldElement>) -> Result<Self, GfError> {
        if images.len() > field.ell as usize {
            return Err(GfError::DegreeTooSmall {
                ell: field.ell,
                k: images.len(),
            });
        }
        let prime = GaloisField::new(u64::from(field.p), 1)?;
        let rows = images
            .iter()
            .map(|a| {
                assert_eq!(a.field, field, "image from a different field");
                a.coeffs().iter().map(|&c| prime.from_int(i64::from(c))).collect()
            })
            .collect();
        let coords = FieldMatrix::from_rows(prime, rows)?;
        if coords.rank() < images.len() {
            return Err(GfError::DependentImages);
        }
        Ok(Self { field, images })
    }

    /// `alpha_i = x^(i-1)` for `i = 1..k`.
    pub fn power_basis(field: GaloisField, k: usize) -> Result<Self, GfError> {
        if k > field.ell as usize {
            return Err(GfError::DegreeTooSmall { ell: field.ell, k });
        }
        Self::new(field, (0..k as u32).map(|i| field.x_power(i)).collect())
    }

    pub fn k(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[FieldElement] {
        &self.images
    }

    pub fn apply(&self, coords: &[u64]) -> FieldElement {
        coords
            .iter()
            .zip(&self.images)
            .fold(self.field.zero(), |acc, (&c, &a)| acc + self.field.from_int(c as i64) * a)
    }
}

/// Coordinates of a `Z_p` or `Z_p^k` label.
fn label_coords(label: &GroupElement) -> Vec<u64> {
    match label {
        GroupElement::Cyclic { value, .. } => vec![*value],
        GroupElement::Vector { coords, .. } => coords.clone(),
        _ => unreachable!("group checked before"),
    }
}

fn label_dimension(group: &GroupDescriptor, p: u32) -> Result<usize, GfError> {
    match group {
        GroupDescriptor::Cyclic(q) if *q == u64::from(p) => Ok(1),
        GroupDescriptor::Vector { p: q, k } if *q == u64::from(p) => Ok(*k),
        _ => Err(GfError::WrongGroup {
            p,
            group: group.clone(),
        }),
    }
}

/// Signed vertex-edge incidence matrix. Each non-loop edge points from
/// its smaller vertex id (entry `-1`) to its larger one (entry `+1`);
/// loop columns are zero.
pub fn incidence_matrix(g: &LabelledGraph, field: GaloisField) -> FieldMatrix {
    incidence_matrix_oriented(g, field, &EdgeSet::new())
}

/// As [`incidence_matrix`], with the edges in `flipped` reversed.
pub fn incidence_matrix_oriented(g: &LabelledGraph, field: GaloisField, flipped: &EdgeSet) -> FieldMatrix {
    let rows = g.vertices().iter().map(|v| v.id.to_string()).collect();
    let cols = g.edges().iter().map(|e| e.id.to_string()).collect();
    let mut m = FieldMatrix::zeros(field, rows, cols);
    for (j, e) in g.edges().iter().enumerate() {
        if e.is_loop() {
            continue;
        }
        let (u, v) = g.ends(j);
        let (mut tail, mut head) = if e.u < e.v { (u, v) } else { (v, u) };
        if flipped.contains(&e.id) {
            std::mem::swap(&mut tail, &mut head);
        }
        m.set(tail, j, -field.one());
        m.set(head, j, field.one());
    }
    m
}

/// `A = I^T B I` with `B = diag(1 / phi(label(v)))`; `phi` defaults to
/// the power basis.
pub fn build_representation(
    g: &LabelledGraph,
    field: GaloisField,
    phi: Option<&Homomorphism>,
) -> Result<FieldMatrix, GfError> {
    build_representation_oriented(g, field, phi, &EdgeSet::new())
}

pub fn build_representation_oriented(
    g: &LabelledGraph,
    field: GaloisField,
    phi: Option<&Homomorphism>,
    flipped: &EdgeSet,
) -> Result<FieldMatrix, GfError> {
    let k = label_dimension(g.group(), field.p)?;
    let default;
    let phi = match phi {
        Some(phi) => phi,
        None => {
            default = Homomorphism::power_basis(field, k)?;
            &default
        }
    };
    if phi.k() != k || phi.field != field {
        return Err(GfError::Dimension(format!(
            "homomorphism has {} images, labels have dimension {k}",
            phi.k()
        )));
    }
    let ids: Vec<String> = g.vertices().iter().map(|v| v.id.to_string()).collect();
    let mut b = FieldMatrix::zeros(field, ids.clone(), ids);
    for (i, v) in g.vertices().iter().enumerate() {
        if v.label.is_zero() {
            return Err(GfError::ZeroLabel(v.id.clone()));
        }
        b.set(i, i, phi.apply(&label_coords(&v.label)).inv()?);
    }
    let inc = incidence_matrix_oriented(g, field, flipped);
    inc.transpose().mul(&b)?.mul(&inc)
}

fn positions(a: &FieldMatrix, f: &EdgeSet) -> Result<Vec<usize>, GfError> {
    f.iter().map(|e| a.col_index(e.as_str())).collect()
}

/// Whether the principal submatrix on `f` is nonsingular; true for `f = ∅`.
pub fn feasible_by_minor(a: &FieldMatrix, f: &EdgeSet) -> Result<bool, GfError> {
    let idx = positions(a, f)?;
    Ok(!a.principal(&idx).det()?.is_zero())
}

/// The pivot `A * X`, keeping the original row and column order.
pub fn pivot(a: &FieldMatrix, x: &EdgeSet) -> Result<FieldMatrix, GfError> {
    if !a.is_square() || a.rows != a.cols {
        return Err(GfError::Dimension("pivoting needs matching row and column ids".into()));
    }
    let xs = positions(a, x)?;
    let in_x: BTreeSet<usize> = xs.iter().copied().collect();
    let rest: Vec<usize> = (0..a.n_rows()).filter(|i| !in_x.contains(i)).collect();
    let alpha_inv = a.principal(&xs).inverse()?;
    let beta = a.submatrix(&xs, &rest);
    let gamma = a.submatrix(&rest, &xs);
    let delta = a.principal(&rest);
    let top_right = alpha_inv.mul(&beta)?;
    let bottom_left = gamma.mul(&alpha_inv)?.scale(-a.field.one());
    let gamma_ainv_beta = gamma.mul(&top_right)?;
    let mut out = a.clone();
    for (i, &r) in xs.iter().enumerate() {
        for (j, &c) in xs.iter().enumerate() {
            out.set(r, c, alpha_inv.get(i, j));
        }
        for (j, &c) in rest.iter().enumerate() {
            out.set(r, c, top_right.get(i, j));
        }
    }
    for (i, &r) in rest.iter().enumerate() {
        for (j, &c) in xs.iter().enumerate() {
            out.set(r, c, bottom_left.get(i, j));
        }
        for (j, &c) in rest.iter().enumerate() {
            out.set(r, c, delta.get(i, j) - gamma_ainv_beta.get(i, j));
        }
    }
    Ok(out)
}

fn fresh<T>(base: String, taken: &BTreeSet<T>) -> T
where
    T: Ord + From<String> + std::borrow::Borrow<str>,
{
    let mut id = base;
    while taken.contains(id.as_str()) {
        id.push('\'');
    }
    T::from(id)
}

/// Gives every zero-labelled vertex `v` the label `g` for a fixed nonzero
/// `g`, and attaches a new leaf labelled `-g` to it. Contracting the
/// returned pendant edges gives back the original labelled graph.
pub fn nonzero_gadget(graph: &LabelledGraph) -> Result<(LabelledGraph, EdgeSet), GfError> {
    let g = graph.group().nonzero_element().ok_or(GfError::TrivialGroup)?;
    let mut vertex_ids: BTreeSet<VertexId> = graph.vertices().iter().map(|v| v.id.clone()).collect();
    let mut edge_ids: BTreeSet<EdgeId> = graph.edge_ids();
    let mut vertices: Vec<Vertex> = Vec::with_capacity(graph.vertex_count());
    let mut leaves = Vec::new();
    let mut edges: Vec<Edge> = graph.edges().to_vec();
    let mut pendant = EdgeSet::new();
    for v in graph.vertices() {
        if !v.label.is_zero() {
            vertices.push(v.clone());
            continue;
        }
        vertices.push(Vertex {
            id: v.id.clone(),
            label: g.clone(),
        });
        let leaf: VertexId = fresh(format!("{}~leaf", v.id), &vertex_ids);
        vertex_ids.insert(leaf.clone());
        let edge: EdgeId = fresh(format!("{}~pendant", v.id), &edge_ids);
        edge_ids.insert(edge.clone());
        leaves.push(Vertex {
            id: leaf.clone(),
            label: g.negate(),
        });
        edges.push(Edge::new(edge.clone(), v.id.clone(), leaf));
        pendant.insert(edge);
    }
    vertices.extend(leaves);
    Ok((LabelledGraph::new(graph.group().clone(), vertices, edges)?, pendant))
}

/// `(F, nonsingular)` for every edge subset, keyed by subset.
pub fn minor_family(a: &FieldMatrix) -> Result<BTreeMap<EdgeSet, bool>, GfError> {
    let n = a.n_cols();
    let mut out = BTreeMap::new();
    for bits in 0u64..(1 << n) {
        let f: EdgeSet = (0..n)
            .filter(|i| bits >> i & 1 == 1)
            .map(|i| EdgeId::from(a.cols[i].as_str()))
            .collect();
        let ok = feasible_by_minor(a, &f)?;
        out.insert(f, ok);
    }
    Ok(out)
}
