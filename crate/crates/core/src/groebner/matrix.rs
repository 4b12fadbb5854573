use std::fmt;
use std::sync::Arc;

use super::FreeElement;
use crate::error::{Error, Result};
use crate::poly::{parse_poly, same_ring, PolyRing, Polynomial};

/// Whether a matrix is read over the ambient ring Q or over R = Q/(f).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Interpretation {
    OverQ,
    /// Entries are stored as normal forms modulo the hypersurface equation.
    OverR,
}

/// A matrix of polynomials, i.e. a map of free modules `Q^cols -> Q^rows`.
#[derive(Clone, Debug)]
pub struct FreeMap {
    ring: Arc<PolyRing>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
    interp: Interpretation,
}

impl PartialEq for FreeMap {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
            && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for FreeMap {}

impl FreeMap {
    /// Row-major entries.
    pub fn new(ring: &Arc<PolyRing>, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| !same_ring(e.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(FreeMap {
            ring: ring.clone(),
            rows,
            cols,
            entries,
            interp: Interpretation::OverQ,
        })
    }

    pub fn zeros(ring: &Arc<PolyRing>, rows: usize, cols: usize) -> Self {
        FreeMap {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
            interp: Interpretation::OverQ,
        }
    }

    pub fn identity(ring: &Arc<PolyRing>, n: usize) -> Self {
        Self::scalar(ring, n, &Polynomial::one(ring))
    }

    /// `p * I_n`.
    pub fn scalar(ring: &Arc<PolyRing>, n: usize, p: &Polynomial) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    /// Parses a matrix given as rows of polynomial strings. Every row must
    /// have the same length; `cols` is needed for matrices without rows.
    pub fn parse<S: AsRef<str>>(ring: &Arc<PolyRing>, rows: &[Vec<S>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::ShapeMismatch("ragged matrix rows".into()));
            }
            for s in r {
                entries.push(parse_poly(s.as_ref(), ring)?);
            }
        }
        Self::new(ring, rows.len(), cols, entries)
    }

    /// Matrix whose columns are the given elements (all of rank `rows`).
    pub fn from_columns(ring: &Arc<PolyRing>, rows: usize, columns: &[FreeElement]) -> Self {
        let mut m = Self::zeros(ring, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.rank(), rows);
            for (i, p) in c.to_polys().into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        m
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn interpretation(&self) -> Interpretation {
        self.interp
    }

    pub(crate) fn with_interpretation(mut self, interp: Interpretation) -> Self {
        self.interp = interp;
        self
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> FreeElement {
        let col: Vec<Polynomial> = (0..self.rows).map(|i| self.get(i, j).clone()).collect();
        FreeElement::from_polys(&self.ring, &col)
    }

    pub fn columns(&self) -> Vec<FreeElement> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        FreeMap {
            entries: self.entries.iter().map(f).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &FreeMap) -> Result<FreeMap> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &FreeElement) -> FreeElement {
        assert_eq!(v.rank(), self.cols);
        let polys = v.to_polys();
        let out: Vec<Polynomial> = (0..self.rows)
            .map(|i| {
                let mut acc = Polynomial::zero(&self.ring);
                for (k, p) in polys.iter().enumerate() {
                    if !p.is_zero() {
                        acc = &acc + &(self.get(i, k) * p);
                    }
                }
                acc
            })
            .collect();
        FreeElement::from_polys(&self.ring, &out)
    }

    pub fn add(&self, other: &FreeMap) -> Result<FreeMap> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("matrix sum of different shapes".into()));
        }
        Ok(FreeMap {
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
            ..self.clone()
        })
    }

    pub fn scale_poly(&self, p: &Polynomial) -> FreeMap {
        self.map_entries(|e| e * p)
    }

    pub fn neg(&self) -> FreeMap {
        self.map_entries(|e| -e)
    }

    pub fn transpose(&self) -> FreeMap {
        let mut out = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out.interp = self.interp;
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &FreeMap) -> Result<FreeMap> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("hstack of different row counts".into()));
        }
        let mut out = Self::zeros(&self.ring, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out.interp = self.interp;
        Ok(out)
    }

    /// Block matrix from a grid of blocks; all blocks of a grid row share a
    /// row count, all blocks of a grid column share a column count.
    pub fn blocks(ring: &Arc<PolyRing>, grid: &[Vec<FreeMap>]) -> Result<FreeMap> {
        let row_sizes: Vec<usize> = grid.iter().map(|r| r[0].rows).collect();
        let col_sizes: Vec<usize> = grid.first().map_or(Vec::new(), |r| r.iter().map(|b| b.cols).collect());
        for (bi, r) in grid.iter().enumerate() {
            if r.len() != col_sizes.len() {
                return Err(Error::ShapeMismatch("ragged block grid".into()));
            }
            for (bj, b) in r.iter().enumerate() {
                if b.rows != row_sizes[bi] || b.cols != col_sizes[bj] {
                    return Err(Error::ShapeMismatch(format!("block ({bi}, {bj}) has wrong shape")));
                }
            }
        }
        let rows: usize = row_sizes.iter().sum();
        let cols: usize = col_sizes.iter().sum();
        let mut out = Self::zeros(ring, rows, cols);
        let mut r0 = 0;
        for (bi, r) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in r.iter().enumerate() {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out.set(r0 + i, c0 + j, b.get(i, j).clone());
                    }
                }
                c0 += col_sizes[bj];
            }
            r0 += row_sizes[bi];
        }
        Ok(out)
    }

    pub fn block_diag(&self, other: &FreeMap) -> FreeMap {
        let mut out = Self::zeros(&self.ring, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out.interp = self.interp;
        out
    }

    /// Kronecker product `self ⊗ I_n`: entry `(i*n + a, j*n + b) = self[i][j] δ_ab`.
    pub fn kron_identity(&self, n: usize) -> FreeMap {
        let mut out = Self::zeros(&self.ring, self.rows * n, self.cols * n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for a in 0..n {
                    out.set(i * n + a, j * n + a, self.get(i, j).clone());
                }
            }
        }
        out.interp = self.interp;
        out
    }

    /// Kronecker product `I_n ⊗ self` (block diagonal with `n` copies).
    pub fn identity_kron(&self, n: usize) -> FreeMap {
        let mut out = Self::zeros(&self.ring, self.rows * n, self.cols * n);
        for k in 0..n {
            for i in 0..self.rows {
                for j in 0..self.cols {
                    out.set(k * self.rows + i, k * self.cols + j, self.get(i, j).clone());
                }
            }
        }
        out.interp = self.interp;
        out
    }

    pub fn select_columns(&self, keep: &[usize]) -> FreeMap {
        let mut out = Self::zeros(&self.ring, self.rows, keep.len());
        for i in 0..self.rows {
            for (jj, &j) in keep.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out.interp = self.interp;
        out
    }

    /// Deletes one row and one column.
    pub fn minor(&self, row: usize, col: usize) -> FreeMap {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != row) {
            for j in (0..self.cols).filter(|&j| j != col) {
                entries.push(self.get(i, j).clone());
            }
        }
        FreeMap {
            ring: self.ring.clone(),
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
            interp: self.interp,
        }
    }

    /// Determinant by cofactor expansion (small square matrices only).
    pub fn determinant(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        Ok(self.det_rec())
    }

    fn det_rec(&self) -> Polynomial {
        match self.rows {
            0 => Polynomial::one(&self.ring),
            1 => self.get(0, 0).clone(),
            n => {
                let mut acc = Polynomial::zero(&self.ring);
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let term = a * &self.minor(0, j).det_rec();
                    acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Classical adjugate, so that `self * adj = det * I`.
    pub fn adjugate(&self) -> Result<FreeMap> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut out = Self::zeros(&self.ring, n, n);
        if n == 1 {
            out.set(0, 0, Polynomial::one(&self.ring));
            return Ok(out);
        }
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det_rec();
                out.set(j, i, if (i + j) % 2 == 0 { c } else { -&c });
            }
        }
        Ok(out)
    }

    /// Rows of entries in canonical text form.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl fmt::Display for FreeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[{}x{} empty]", self.rows, self.cols);
        }
        let rows: Vec<String> = self
            .to_strings()
            .into_iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
