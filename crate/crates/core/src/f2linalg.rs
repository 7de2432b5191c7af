//! Dense bit-packed linear algebra over 𝔽₂.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A bit vector of fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vector {
    len: usize,
    bits: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        F2Vector { len, bits: vec![0; words(len)] }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = F2Vector::zeros(bits.len());
        for (k, &b) in bits.iter().enumerate() {
            v.set(k, b & 1 == 1);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, k: usize) -> bool {
        assert!(k < self.len, "bit index out of range");
        self.bits[k / WORD] >> (k % WORD) & 1 == 1
    }

    pub fn set(&mut self, k: usize, value: bool) {
        assert!(k < self.len, "bit index out of range");
        let mask = 1u64 << (k % WORD);
        if value {
            self.bits[k / WORD] |= mask;
        } else {
            self.bits[k / WORD] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|k| self.get(k) as u8).collect()
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> Vec<usize> {
        (0..self.len).filter(|&k| self.get(k)).collect()
    }

    fn dot(&self, other: &F2Vector) -> bool {
        self.bits
            .iter()
            .zip(&other.bits)
            .fold(0u32, |acc, (a, b)| acc + (a & b).count_ones())
            % 2
            == 1
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.to_bits() {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl PartialOrd for F2Vector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on `to_bits()`.
impl Ord for F2Vector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.to_bits().cmp(&other.to_bits())
    }
}

/// A dense matrix over 𝔽₂ with rows stored as [`F2Vector`]s.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: Vec<F2Vector>,
    cols: usize,
    pub labels: Option<Vec<String>>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix { rows: vec![F2Vector::zeros(cols); rows], cols, labels: None }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = F2Matrix::zeros(n, n);
        for k in 0..n {
            m.set(k, k, true);
        }
        m
    }

    /// Builds a matrix from rows of bits (only the low bit of each entry is
    /// used). All rows must have length `cols`.
    pub fn from_rows(rows: &[Vec<u8>], cols: usize) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                if r.len() != cols {
                    Err(Error::DimensionMismatch { expected: cols, got: r.len() })
                } else {
                    Ok(F2Vector::from_bits(r))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(F2Matrix { rows, cols, labels: None })
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        let v = self.get(r, c);
        self.set(r, c, !v);
    }

    pub fn to_bits(&self) -> Vec<Vec<u8>> {
        self.rows.iter().map(F2Vector::to_bits).collect()
    }

    pub fn mul_vec(&self, x: &F2Vector) -> Result<F2Vector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: x.len() });
        }
        let mut y = F2Vector::zeros(self.rows());
        for (r, row) in self.rows.iter().enumerate() {
            y.set(r, row.dot(x));
        }
        Ok(y)
    }

    pub fn rank(&self) -> usize {
        self.echelon(None).pivots.len()
    }

    /// Basis of `{x : Mx = 0}`, one vector per free column in ascending order.
    pub fn nullspace(&self) -> Vec<F2Vector> {
        self.echelon(None).nullspace(self.cols)
    }

    /// Every solution of `Mx = y`, sorted lexicographically. When `cap` is
    /// given at most that many are returned, taken from the start of the
    /// enumeration.
    pub fn solve_all(&self, y: &F2Vector, cap: Option<usize>) -> Result<Vec<F2Vector>> {
        if y.len() != self.rows() {
            return Err(Error::DimensionMismatch { expected: self.rows(), got: y.len() });
        }
        let ech = self.echelon(Some(y));
        if ech.inconsistent {
            return Ok(Vec::new());
        }
        let mut particular = F2Vector::zeros(self.cols);
        for (r, &c) in ech.pivots.iter().enumerate() {
            particular.set(c, ech.rhs[r]);
        }
        let basis = ech.nullspace(self.cols);
        let dim = basis.len();
        assert!(dim < 63, "solution space too large to enumerate");
        let total = 1u64 << dim;
        let limit = cap.map_or(total, |c| total.min(c as u64));
        let mut out = Vec::with_capacity(limit as usize);
        for mask in 0..limit {
            let mut x = particular.clone();
            for (k, v) in basis.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    x.xor_assign(v);
                }
            }
            out.push(x);
        }
        out.sort();
        Ok(out)
    }

    /// Reduced row echelon form, pivoting on the first row with a nonzero
    /// entry in each successive column.
    fn echelon(&self, y: Option<&F2Vector>) -> Echelon {
        let mut rows = self.rows.clone();
        let mut rhs: Vec<bool> = match y {
            Some(y) => (0..self.rows()).map(|r| y.get(r)).collect(),
            None => vec![false; self.rows()],
        };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&k| rows[k].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            rhs.swap(r, p);
            let pivot_row = rows[r].clone();
            let pivot_rhs = rhs[r];
            for k in 0..rows.len() {
                if k != r && rows[k].get(c) {
                    rows[k].xor_assign(&pivot_row);
                    rhs[k] ^= pivot_rhs;
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        let inconsistent = rhs[r..].iter().any(|&b| b);
        rows.truncate(r);
        rhs.truncate(r);
        Echelon { rows, rhs, pivots, inconsistent }
    }
}

struct Echelon {
    rows: Vec<F2Vector>,
    rhs: Vec<bool>,
    pivots: Vec<usize>,
    inconsistent: bool,
}

impl Echelon {
    fn nullspace(&self, cols: usize) -> Vec<F2Vector> {
        let free = (0..cols).filter(|c| !self.pivots.contains(c));
        free.map(|f| {
            let mut v = F2Vector::zeros(cols);
            v.set(f, true);
            for (r, &c) in self.pivots.iter().enumerate() {
                if self.rows[r].get(f) {
                    v.set(c, true);
                }
            }
            v
        })
        .collect()
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}
