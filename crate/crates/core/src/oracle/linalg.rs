//! Dense matrices over the rationals and the elimination routines the
//! resolution engine needs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn rational(k: i64) -> Rational {
    BigRational::from_integer(BigInt::from(k))
}

/// Row-major `rows x cols` matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let r = rows.len();
        let data: Vec<Rational> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * cols, "ragged matrix rows");
        Matrix { rows: r, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + a * b;
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    /// Reduces to reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = self.get(row, col).recip();
            for c in col..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let sub = self.get(row, c) * &factor;
                    if !sub.is_zero() {
                        let v = self.get(r, c) - sub;
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Inverse of a square matrix, or `None` if it is singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Rational::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    /// Solves `B x = w` for every column `w` of `rhs`, where the columns of
    /// `B` are `basis` and are linearly independent. `None` if some `w` is
    /// outside their span.
    pub fn solve_in_span(basis: &[Vec<Rational>], rhs: &[Vec<Rational>], dim: usize) -> Option<Matrix> {
        let k = basis.len();
        let mut aug = Matrix::zeros(dim, k + rhs.len());
        for (c, v) in basis.iter().chain(rhs).enumerate() {
            for (r, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    aug.set(r, c, x.clone());
                }
            }
        }
        let pivots = aug.rref();
        if pivots.len() != k || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut x = Matrix::zeros(k, rhs.len());
        for r in 0..k {
            for c in 0..rhs.len() {
                x.set(r, c, aug.get(r, k + c).clone());
            }
        }
        Some(x)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Kernel basis. Returns the free columns and one vector per free column,
    /// equal to 1 there and 0 on the other free columns, so the coordinates
    /// of a kernel vector in this basis are its entries at the free columns.
    pub fn nullspace(&self) -> (Vec<usize>, Vec<Vec<Rational>>) {
        let mut reduced = self.clone();
        let pivots = reduced.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (k, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced.get(k, f).clone();
                }
                v
            })
            .collect();
        (free, basis)
    }
}

/// An incrementally built echelon basis of a subspace.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` modulo the span; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let factor = v[*pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= r * &factor;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns false if it was already there.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = self.reduce(v);
        let Some(pivot) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[pivot].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            let factor = row[pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= y * &factor;
                }
            }
        }
        self.rows.push((pivot, r));
        true
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vec<Rational>> {
        self.rows.iter().map(|(_, r)| r)
    }
}
