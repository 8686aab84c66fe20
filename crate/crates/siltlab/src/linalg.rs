//! Exact dense linear algebra over a prime field F_p (p <= 97).
//!
//! Everything downstream (Hom spaces, Ext groups, conflation realizations)
//! reduces to row reduction, kernels and linear solves over F_p, so this
//! module keeps the arithmetic exact and the representation dead simple:
//! dense row-major `u32` residues.

use std::fmt;

use crate::error::{Error, Result};

/// Largest modulus accepted; all acceptance instances use 2 or 3.
pub const MAX_MODULUS: u32 = 97;

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Validate a field modulus: prime and <= 97.
pub fn check_modulus(p: u32) -> Result<()> {
    if !is_prime(p) || p > MAX_MODULUS {
        return Err(Error::Construction(format!(
            "field modulus {p} is not a prime <= {MAX_MODULUS}"
        )));
    }
    Ok(())
}

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub p: u32,
    entries: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}/F{}[", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zero(rows: usize, cols: usize, p: u32) -> Mat {
        debug_assert!(is_prime(p) && p <= MAX_MODULUS);
        Mat { rows, cols, p, entries: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u32) -> Mat {
        let mut m = Mat::zero(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>], p: u32) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Mat::zero(r, c, p);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.entries[r * self.cols + c] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows, self.p);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c));
            }
        }
        t
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.entries.iter_mut().zip(&other.entries) {
            *a = (*a + *b) % self.p;
        }
        m
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.entries.iter_mut().zip(&other.entries) {
            *a = (*a + self.p - *b) % self.p;
        }
        m
    }

    pub fn scale(&self, s: u32) -> Mat {
        let s = s % self.p;
        let mut m = self.clone();
        for a in m.entries.iter_mut() {
            *a = (*a * s) % self.p;
        }
        m
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut m = Mat::zero(self.rows, other.cols, self.p);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = (m.at(r, c) as u64 + a * other.at(k, c) as u64) % self.p as u64;
                    m.set(r, c, v as u32);
                }
            }
        }
        m
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut m = Mat::zero(self.rows, self.cols + other.cols, self.p);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.at(r, c));
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.at(r, c));
            }
        }
        m
    }

    /// Vertical concatenation [self; other].
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut m = Mat::zero(self.rows + other.rows, self.cols, self.p);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.at(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..self.cols {
                m.set(self.rows + r, c, other.at(r, c));
            }
        }
        m
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.at(r, c)).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> Mat {
        let mut m = Mat::zero(self.rows, cols.len(), self.p);
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                m.set(r, j, self.at(r, c));
            }
        }
        m
    }

    /// Flatten row-major into a single column vector.
    pub fn flatten(&self) -> Vec<u32> {
        self.entries.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, p: u32, flat: &[u32]) -> Mat {
        assert_eq!(flat.len(), rows * cols);
        let mut m = Mat::zero(rows, cols, p);
        for (i, &v) in flat.iter().enumerate() {
            m.entries[i] = v % p;
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().1.len()
    }

    /// In-place Gauss-Jordan; returns (reduced matrix, pivot columns).
    fn row_reduce(mut self) -> (Mat, Vec<usize>) {
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            // Find a pivot in this column at or below `row`.
            let Some(pr) = (row..self.rows).find(|&r| self.at(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    let tmp = self.at(row, c);
                    self.set(row, c, self.at(pr, c));
                    self.set(pr, c, tmp);
                }
            }
            // Normalize the pivot row.
            let inv = mod_inverse(self.at(row, col), self.p);
            for c in 0..self.cols {
                let v = (self.at(row, c) as u64 * inv as u64) % p;
                self.set(row, c, v as u32);
            }
            // Eliminate the column everywhere else.
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.at(r, col) as u64;
                if factor == 0 {
                    continue;
                }
                for c in 0..self.cols {
                    let v = (self.at(r, c) as u64 + (p - factor % p) * self.at(row, c) as u64) % p;
                    self.set(r, c, v as u32);
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        (self, pivots)
    }
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2) mod p.
    let mut result: u64 = 1;
    let mut base = a as u64 % p as u64;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

/// Reduced row echelon form with pivot columns and rank.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>, usize) {
    let (reduced, pivots) = m.clone().row_reduce();
    let rank = pivots.len();
    (reduced, pivots, rank)
}

/// Basis of the right null space, returned as the columns of a matrix.
pub fn kernel_basis(m: &Mat) -> Mat {
    let (red, pivots, rank) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Mat::zero(m.cols, free.len(), m.p);
    for (k, &fc) in free.iter().enumerate() {
        basis.set(fc, k, 1);
        for (r, &pc) in pivots.iter().enumerate().take(rank) {
            let v = red.at(r, fc);
            if v != 0 {
                basis.set(pc, k, m.p - v);
            }
        }
    }
    basis
}

/// Solve a·x = b for all columns of b simultaneously; `None` if inconsistent.
pub fn solve(a: &Mat, b: &Mat) -> Option<Mat> {
    assert_eq!(a.rows, b.rows, "solve: row mismatch");
    let aug = a.hstack(b);
    let (red, pivots, _) = rref(&aug);
    // Any pivot in the b-block means inconsistency.
    if pivots.iter().any(|&c| c >= a.cols) {
        return None;
    }
    let mut x = Mat::zero(a.cols, b.cols, a.p);
    for (r, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(pc, j, red.at(r, a.cols + j));
        }
    }
    Some(x)
}

/// Basis of the column space, as the columns of m indexed by the pivot
/// columns of its rref.
pub fn column_space_basis(m: &Mat) -> Mat {
    let (_, pivots, _) = rref(&m.clone());
    m.select_columns(&pivots)
}

/// Inverse of a square matrix, if invertible.
pub fn inverse(m: &Mat) -> Option<Mat> {
    if m.rows != m.cols {
        return None;
    }
    let x = solve(m, &Mat::identity(m.rows, m.p))?;
    if m.mul(&x) == Mat::identity(m.rows, m.p) {
        Some(x)
    } else {
        None
    }
}

/// Factor an idempotent e = i·p with p·i = identity of size rank(e).
///
/// `i` includes the image of e (columns = a column-space basis of e) and `p`
/// expresses each column of e in that basis.
pub fn split_idempotent(e: &Mat) -> Result<(Mat, Mat)> {
    if e.rows != e.cols || e.mul(e) != *e {
        return Err(Error::Contract("split_idempotent: input is not idempotent".into()));
    }
    let i = column_space_basis(e);
    // e fixes its image, so i·p = e is consistent: solve B·p = e.
    let p = solve(&i, e).expect("idempotent image factorization must be consistent");
    debug_assert_eq!(i.mul(&p), *e);
    debug_assert_eq!(p.mul(&i), Mat::identity(i.cols, e.p));
    Ok((p, i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity_and_zero() {
        let id = Mat::identity(2, 2);
        let (r, piv, rank) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(rank, 2);

        let z = Mat::zero(3, 3, 3);
        let (r, piv, rank) = rref(&z);
        assert!(r.is_zero());
        assert!(piv.is_empty());
        assert_eq!(rank, 0);
    }

    #[test]
    fn rref_rank_one() {
        let m = Mat::from_rows(&[vec![1, 1], vec![1, 1]], 2);
        let (r, _, rank) = rref(&m);
        assert_eq!(r, Mat::from_rows(&[vec![1, 1], vec![0, 0]], 2));
        assert_eq!(rank, 1);
    }

    #[test]
    fn kernel_cases() {
        assert_eq!(kernel_basis(&Mat::identity(4, 5)).cols, 0);

        let z = Mat::zero(3, 3, 2);
        let k = kernel_basis(&z);
        assert_eq!(k.cols, 3);
        assert_eq!(k.rank(), 3);

        let m = Mat::from_rows(&[vec![1, 1]], 2);
        let k = kernel_basis(&m);
        assert_eq!(k.cols, 1);
        assert_eq!(k.column(0), vec![1, 1]);
    }

    #[test]
    fn solve_cases() {
        let b = Mat::from_rows(&[vec![1, 0], vec![1, 1]], 2);
        assert_eq!(solve(&Mat::identity(2, 2), &b), Some(b.clone()));

        assert_eq!(solve(&Mat::zero(1, 1, 2), &Mat::from_rows(&[vec![1]], 2)), None);

        let a = Mat::from_rows(&[vec![1, 1], vec![0, 1]], 2);
        let b = Mat::from_rows(&[vec![0], vec![1]], 2);
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, Mat::from_rows(&[vec![1], vec![1]], 2));
        assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn split_idempotent_cases() {
        let id = Mat::identity(3, 5);
        let (p, i) = split_idempotent(&id).unwrap();
        assert_eq!(i.mul(&p), id);
        assert_eq!(p.mul(&i), Mat::identity(3, 5));

        let z = Mat::zero(2, 2, 3);
        let (p, i) = split_idempotent(&z).unwrap();
        assert_eq!(p.rows, 0);
        assert_eq!(i.cols, 0);

        let e = Mat::from_rows(&[vec![1, 0], vec![0, 0]], 3);
        let (p, i) = split_idempotent(&e).unwrap();
        assert_eq!(p.rows, 1);
        assert_eq!(i.mul(&p), e);
        assert_eq!(p.mul(&i), Mat::identity(1, 3));
        assert_eq!(i.column(0), vec![1, 0]);

        assert!(split_idempotent(&Mat::from_rows(&[vec![0, 1], vec![0, 0]], 2)).is_err());
    }

    #[test]
    fn kernel_solve_invariants_mod3() {
        // A fixed awkward matrix over F_3.
        let m = Mat::from_rows(&[vec![1, 2, 0, 1], vec![2, 1, 1, 0], vec![0, 0, 1, 1]], 3);
        let k = kernel_basis(&m);
        assert!(m.mul(&k).is_zero());
        assert_eq!(k.rank() + m.rank(), m.cols);
    }
}
