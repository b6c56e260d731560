//! Dense matrices over [`Rational`] and the lattice utilities built on them:
//! signature by congruence diagonalization, evenness, orthogonal complements
//! and span comparison.

use std::fmt;

use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Inertia of a symmetric form: counts of positive, negative and zero
/// eigenvalues (equivalently, of diagonal entries after diagonalization).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn is_nondegenerate(&self) -> bool {
        self.zero == 0
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.positive, self.negative)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero == 0 {
            write!(f, "({},{})", self.positive, self.negative)
        } else {
            write!(f, "({},{},{})", self.positive, self.negative, self.zero)
        }
    }
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

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Panics on ragged input; meant for literal tables.
    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| Rational::from_int(x)).collect())
                .collect(),
        )
        .expect("ragged integer matrix")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>]) -> Result<Self> {
        Ok(Matrix::from_rows(cols.to_vec())?.transpose())
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

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// `u^T M v`.
    pub fn bilinear(&self, u: &[Rational], v: &[Rational]) -> Result<Rational> {
        if u.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: u.len(),
            });
        }
        let mv = self.mul_vec(v)?;
        Ok(u.iter()
            .zip(&mv)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn scale(&self, k: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-Rational::one())
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Submatrix on the given row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Integral entries and even diagonal.
    pub fn is_even(&self) -> bool {
        self.data.iter().all(Rational::is_integer)
            && (0..self.rows.min(self.cols)).all(|i| {
                let d = self.get(i, i);
                (d / &Rational::from_int(2)).is_integer()
            })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column, read off the RREF.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(r.submatrix(&rows, &cols))
    }

    /// Inertia by symmetric Gaussian elimination (congruence `P^T A P`).
    pub fn signature(&self) -> Result<Signature> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sig = Signature {
            positive: 0,
            negative: 0,
            zero: 0,
        };
        for s in 0..n {
            if let Some(p) = (s..n).find(|&i| !a.get(i, i).is_zero()) {
                a.swap_sym(s, p);
            } else if let Some((i, j)) = (s..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_zero())
            {
                // zero diagonal: e_i <- e_i + e_j gives a_ii = 2 a_ij != 0
                a.add_sym(i, j);
                a.swap_sym(s, i);
            } else {
                sig.zero += n - s;
                break;
            }
            let pivot = a.get(s, s).clone();
            if pivot.is_positive() {
                sig.positive += 1;
            } else {
                sig.negative += 1;
            }
            for i in s + 1..n {
                if a.get(i, s).is_zero() {
                    continue;
                }
                let factor = a.get(i, s) / &pivot;
                for j in s..n {
                    let v = a.get(i, j) - &(&factor * a.get(s, j));
                    a.set(i, j, v);
                }
                for j in s..n {
                    let v = a.get(j, i) - &(&factor * a.get(j, s));
                    a.set(j, i, v);
                }
            }
        }
        Ok(sig)
    }

    pub fn determinant(&self) -> Option<Rational> {
        if !self.is_square() {
            return None;
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let p = (c..n).find(|&i| !m.get(i, c).is_zero())?;
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c) / &pivot;
                for j in c..n {
                    let v = m.get(i, j) - &(&factor * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Some(det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_sym(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.swap_rows(a, b);
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Row and column operation `e_i <- e_i + e_j`.
    fn add_sym(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            let v = self.get(i, c) + self.get(j, c);
            self.set(i, c, v);
        }
        for r in 0..self.rows {
            let v = self.get(r, i) + self.get(r, j);
            self.set(r, i, v);
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Basis of the orthogonal complement of `span(basis)` under `gram`.
pub fn orthogonal_complement(gram: &Matrix, basis: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    if basis.is_empty() {
        return Ok((0..gram.rows())
            .map(|i| {
                let mut e = vec![Rational::zero(); gram.rows()];
                e[i] = Rational::one();
                e
            })
            .collect());
    }
    let b = Matrix::from_rows(basis.to_vec())?;
    Ok(b.mul(gram)?.nullspace())
}

/// Whether two finite families span the same subspace.
pub fn span_equal(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Result<bool> {
    let rank = |v: &[Vec<Rational>]| -> Result<usize> {
        if v.is_empty() {
            Ok(0)
        } else {
            Ok(Matrix::from_rows(v.to_vec())?.rank())
        }
    };
    let joined: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    let (ra, rb, rj) = (rank(a)?, rank(b)?, rank(&joined)?);
    Ok(ra == rj && rb == rj)
}

/// Gram matrix of a family of vectors under `gram`.
pub fn gram_of(gram: &Matrix, vectors: &[Vec<Rational>]) -> Result<Matrix> {
    let n = vectors.len();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = gram.bilinear(&vectors[i], &vectors[j])?;
            g.set(i, j, v.clone());
            g.set(j, i, v);
        }
    }
    Ok(g)
}

/// Cartan-type Gram of the chain `A_n` scaled by -1: diagonal -2, neighbours +1.
pub fn negative_chain(n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, Rational::from_int(-2));
        if i + 1 < n {
            m.set(i, i + 1, Rational::one());
            m.set(i + 1, i, Rational::one());
        }
    }
    m
}

/// The hyperbolic plane `[[0,1],[1,0]]`.
pub fn hyperbolic_plane() -> Matrix {
    Matrix::from_int_rows(&[[0, 1], [1, 0]])
}

/// `E8(-1)`: the negated Cartan matrix of E8, nodes 1-3-4-5-6-7-8 in a chain
/// with node 2 attached to node 4.
pub fn e8_negative() -> Matrix {
    let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    let mut m = Matrix::zeros(8, 8);
    for i in 0..8 {
        m.set(i, i, Rational::from_int(-2));
    }
    for (a, b) in edges {
        m.set(a, b, Rational::one());
        m.set(b, a, Rational::one());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn hyperbolic_plane_signature() {
        let s = hyperbolic_plane().signature().unwrap();
        assert_eq!(s.pair(), (1, 1));
        assert!(s.is_nondegenerate());
    }

    #[test]
    fn e8_negative_is_even_unimodular_negative_definite() {
        let e8 = e8_negative();
        assert_eq!(e8.signature().unwrap().pair(), (0, 8));
        assert!(e8.is_even());
        assert_eq!(e8.determinant().unwrap(), q(1));
    }

    #[test]
    fn degenerate_forms_report_zero_part() {
        let m = Matrix::from_int_rows(&[[1, 1], [1, 1]]);
        let s = m.signature().unwrap();
        assert_eq!((s.positive, s.negative, s.zero), (1, 0, 1));
        assert!(Matrix::zeros(3, 3).signature().unwrap().zero == 3);
    }

    #[test]
    fn non_symmetric_rejected() {
        let m = Matrix::from_int_rows(&[[0, 1], [2, 0]]);
        assert_eq!(m.signature(), Err(Error::NotSymmetric));
    }

    #[test]
    fn signature_matches_sylvester_on_small_forms() {
        // diag(1,-1,-1) disguised by a unimodular change of basis
        let p = Matrix::from_int_rows(&[[1, 2, 0], [0, 1, 3], [1, 0, 1]]);
        let d = Matrix::from_int_rows(&[[1, 0, 0], [0, -1, 0], [0, 0, -1]]);
        let a = p.transpose().mul(&d).unwrap().mul(&p).unwrap();
        assert_eq!(a.signature().unwrap().pair(), (1, 2));
    }

    #[test]
    fn inverse_and_nullspace() {
        let m = Matrix::from_int_rows(&[[2, 1], [1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(Matrix::from_int_rows(&[[1, 2], [2, 4]]).inverse().is_none());

        let k = Matrix::from_int_rows(&[[1, 1, 0], [0, 0, 1]]).nullspace();
        assert_eq!(k, vec![v(&[-1, 1, 0])]);
    }

    #[test]
    fn spans_compare_by_rank() {
        let a = vec![v(&[1, 0, 0]), v(&[0, 1, 0])];
        let b = vec![v(&[0, 1, 0]), v(&[1, 0, 0])];
        let c = vec![v(&[1, 1, 0]), v(&[1, -1, 0])];
        let d = vec![v(&[1, 0, 1])];
        assert!(span_equal(&a, &b).unwrap());
        assert!(span_equal(&a, &c).unwrap());
        assert!(!span_equal(&a, &d).unwrap());
    }

    #[test]
    fn orthogonal_complement_in_hyperbolic_plane() {
        let u = hyperbolic_plane();
        let perp = orthogonal_complement(&u, &[v(&[1, 0])]).unwrap();
        assert!(span_equal(&perp, &[v(&[1, 0])]).unwrap());
    }
}
