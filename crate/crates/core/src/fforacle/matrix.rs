//! Dense square and rectangular matrices over an [`FqField`].

use super::field::FqField;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Matrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows: rows.len(), cols, data: rows.concat() }
    }

    /// The `index`-th `rows × cols` matrix in lexicographic order of entries.
    pub fn from_index(index: u64, rows: usize, cols: usize, q: usize) -> Matrix {
        let mut data = vec![0u8; rows * cols];
        let mut x = index;
        for slot in data.iter_mut().rev() {
            *slot = (x % q as u64) as u8;
            x /= q as u64;
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u8] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[u8]>::to_vec).collect()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, f: &FqField, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let x = self.get(i, l);
                if x == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let slot = &mut out.data[i * other.cols + j];
                    *slot = f.add(*slot, f.mul(x, other.get(l, j)));
                }
            }
        }
        out
    }

    /// Entrywise `x ↦ x^p`.
    pub fn frob(&self, f: &FqField) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f.frob(x)).collect() }
    }

    /// Entrywise `x ↦ x^{1/p}`.
    pub fn frob_inv(&self, f: &FqField) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f.frob_inv(x)).collect() }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: &FqField) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(pr * m.cols + j, r * m.cols + j);
            }
            let s = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in 0..m.cols {
                m.data[r * m.cols + j] = f.mul(s, m.get(r, j));
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.data[i * m.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &FqField) -> usize {
        self.rref(f).1.len()
    }

    /// Columns form a basis of `{x : M x = 0}`.
    pub fn kernel(&self, f: &FqField) -> Matrix {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zero(self.cols, free.len());
        for (n, &fc) in free.iter().enumerate() {
            k.data[fc * free.len() + n] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                k.data[pc * free.len() + n] = f.neg(r.get(row, fc));
            }
        }
        k
    }

    /// Columns form a basis of `{y : yᵀ M = 0}`.
    pub fn left_kernel(&self, f: &FqField) -> Matrix {
        self.transpose().kernel(f)
    }

    pub fn inverse(&self, f: &FqField) -> Option<Matrix> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut aug = Matrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1;
        }
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zero(n, n);
        for i in 0..n {
            inv.data[i * n..(i + 1) * n].copy_from_slice(&r.data[i * 2 * n + n..(i + 1) * 2 * n]);
        }
        Some(inv)
    }

    /// Whether the column spaces coincide.
    pub fn same_column_space(&self, f: &FqField, other: &Matrix) -> bool {
        let r = self.rank(f);
        if r != other.rank(f) {
            return false;
        }
        let mut joined = Matrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            let w = self.cols + other.cols;
            joined.data[i * w..i * w + self.cols].copy_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            joined.data[i * w + self.cols..(i + 1) * w]
                .copy_from_slice(&other.data[i * other.cols..(i + 1) * other.cols]);
        }
        joined.rank(f) == r
    }
}
