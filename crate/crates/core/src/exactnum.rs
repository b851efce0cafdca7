//! Exact rational scalars and sparse rational linear algebra.
//!
//! Every rank and kernel computation in the crate goes through
//! [`SparseRationalMatrix`], which performs fraction-free (Bareiss-style)
//! elimination over the integers after clearing denominators row by row.
//! This keeps intermediate entries polynomially bounded while staying exact;
//! no floating point appears anywhere in the system.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Exact rational scalar; always stored reduced with positive denominator.
pub type Rat = BigRational;

/// Integer rational `n`.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `n / d`; panics on `d == 0`.
pub fn frac(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse a rational literal: `p/q` or a plain integer, optionally signed.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|e| format!("bad numerator {num:?}: {e}"))?;
        let d = BigInt::from_str(den.trim()).map_err(|e| format!("bad denominator {den:?}: {e}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n = BigInt::from_str(s).map_err(|e| format!("bad integer {s:?}: {e}"))?;
        Ok(BigRational::from_integer(n))
    }
}

/// Canonical text form: integers print bare, other values as `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An immutable sparse matrix over the rationals.
///
/// Entries are stored in a sorted map with no explicit zeros; all elimination
/// routines return fresh data instead of mutating the receiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseRationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rat>,
}

impl SparseRationalMatrix {
    /// The zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseRationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    /// The identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, rat(1));
        }
        m
    }

    /// Build from an iterator of `(row, col, value)` triples; zeros are
    /// dropped, duplicate positions are summed.
    pub fn from_triples(
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, Rat)>,
    ) -> Self {
        let mut m = Self::zero(rows, cols);
        for (r, c, v) in triples {
            let cur = m.get(r, c) + v;
            m.set(r, c, cur);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at `(r, c)`; zero if unset.
    pub fn get(&self, r: usize, c: usize) -> Rat {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Set entry `(r, c)`; removing it when the value is zero.
    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    /// Iterate over the stored (nonzero) entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    /// Number of stored nonzero entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Matrix–vector product `self · v`.
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        let mut out = vec![Rat::zero(); self.rows];
        for (&(r, c), a) in &self.entries {
            if !v[c].is_zero() {
                out[r] += a * &v[c];
            }
        }
        out
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &SparseRationalMatrix) -> SparseRationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for (&(r, k), a) in &self.entries {
            for c in 0..other.cols {
                let b = other.get(k, c);
                if !b.is_zero() {
                    let cur = out.get(r, c) + a * b;
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    /// The matrix with one extra column appended on the right.
    pub fn with_appended_column(&self, col: &[Rat]) -> SparseRationalMatrix {
        assert_eq!(col.len(), self.rows, "dimension mismatch");
        let mut m = Self::zero(self.rows, self.cols + 1);
        for (&(r, c), v) in &self.entries {
            m.set(r, c, v.clone());
        }
        for (r, v) in col.iter().enumerate() {
            m.set(r, self.cols, v.clone());
        }
        m
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        self.echelon().pivot_cols.len()
    }

    /// An exact basis of the null space; its size is `cols − rank`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let ech = self.echelon();
        let pivot_of_col: BTreeMap<usize, usize> = ech
            .pivot_cols
            .iter()
            .enumerate()
            .map(|(row, &col)| (col, row))
            .collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col.contains_key(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            // Back-substitute through the pivot rows from the bottom up.
            for (row, &pc) in ech.pivot_cols.iter().enumerate().rev() {
                let mut acc = Rat::zero();
                for c in (pc + 1)..self.cols {
                    let a = &ech.mat[row][c];
                    if !a.is_zero() && !v[c].is_zero() {
                        acc += Rat::from_integer(a.clone()) * &v[c];
                    }
                }
                v[pc] = -acc / Rat::from_integer(ech.mat[row][pc].clone());
            }
            basis.push(v);
        }
        basis
    }

    /// Fraction-free row echelon form over the integers.
    ///
    /// Each row is first scaled by the least common multiple of its
    /// denominators (rank- and kernel-preserving), then Bareiss's
    /// single-step fraction-free elimination runs with column pivoting.
    fn echelon(&self) -> Echelon {
        let mut mat: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let mut lcm = BigInt::one();
                for c in 0..self.cols {
                    if let Some(v) = self.entries.get(&(r, c)) {
                        lcm = lcm.lcm(v.denom());
                    }
                }
                (0..self.cols)
                    .map(|c| match self.entries.get(&(r, c)) {
                        Some(v) => v.numer() * (&lcm / v.denom()),
                        None => BigInt::zero(),
                    })
                    .collect()
            })
            .collect();

        let mut pivot_cols = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0usize;
        for c in 0..self.cols {
            // Pick the smallest-magnitude nonzero pivot for growth control.
            let pivot_row = (r..self.rows)
                .filter(|&i| !mat[i][c].is_zero())
                .min_by_key(|&i| mat[i][c].abs());
            let Some(p) = pivot_row else { continue };
            mat.swap(r, p);
            let pivot = mat[r][c].clone();
            for i in (r + 1)..self.rows {
                if mat[i][c].is_zero() && pivot.is_one() && prev.is_one() {
                    // Row already reduced; the generic update below would be
                    // the identity. Skip the O(cols) pass.
                    continue;
                }
                let lead = mat[i][c].clone();
                for j in 0..self.cols {
                    let num = &pivot * &mat[i][j] - &lead * &mat[r][j];
                    debug_assert!((&num % &prev).is_zero(), "Bareiss divisibility");
                    mat[i][j] = num / &prev;
                }
            }
            prev = pivot;
            pivot_cols.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        Echelon { mat, pivot_cols }
    }
}

struct Echelon {
    mat: Vec<Vec<BigInt>>,
    pivot_cols: Vec<usize>,
}

impl fmt::Display for SparseRationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} sparse matrix:", self.rows, self.cols)?;
        for (&(r, c), v) in &self.entries {
            writeln!(f, "  ({r}, {c}) = {}", fmt_rat(v))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_trivial_cases() {
        assert_eq!(SparseRationalMatrix::zero(0, 0).rank(), 0);
        assert_eq!(SparseRationalMatrix::identity(3).rank(), 3);
        assert_eq!(SparseRationalMatrix::zero(4, 5).rank(), 0);
    }

    #[test]
    fn kernel_trivial_cases() {
        assert!(SparseRationalMatrix::identity(3).kernel_basis().is_empty());
        let m = SparseRationalMatrix::from_triples(1, 2, [(0, 0, rat(1)), (0, 1, rat(1))]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // Spans (1, −1).
        let v = &k[0];
        assert_eq!(v[0], -v[1].clone());
        assert!(m.mul_vec(v).iter().all(Rat::is_zero));
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-7", "1/2", "-5/3"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
        assert_eq!(fmt_rat(&parse_rat("4/6").unwrap()), "2/3");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
