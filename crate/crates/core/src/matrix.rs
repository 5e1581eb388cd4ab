//! Dense matrices over a [`Field`] and Kronecker products.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::par;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(&vec![F::one(); n])
    }

    pub fn diag(d: &[F]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    /// Matrix unit `E_ij` (zero-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(i, j, F::one());
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    fn same_shape(&self, o: &Self, what: &str) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o, "add")?;
        Ok(Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o, "sub")?;
        Ok(Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| if x.is_zero() { F::zero() } else { x.mul(c) })
    }

    pub fn map(&self, f: impl Fn(&F) -> F) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&F) -> Result<F>) -> Result<Self> {
        let data = self.data.iter().map(f).collect::<Result<Vec<F>>>()?;
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    /// Product, parallel over output rows when the `parallel` feature is on.
    pub fn matmul(&self, o: &Self) -> Result<Self> {
        self.check_mul(o)?;
        let rows: Vec<Vec<F>> = par::map_range(self.rows, |i| self.product_row(o, i));
        Ok(Mat { rows: self.rows, cols: o.cols, data: rows.into_iter().flatten().collect() })
    }

    /// Product computed on the calling thread only.
    pub fn matmul_seq(&self, o: &Self) -> Result<Self> {
        self.check_mul(o)?;
        let mut data = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            data.extend(self.product_row(o, i));
        }
        Ok(Mat { rows: self.rows, cols: o.cols, data })
    }

    fn check_mul(&self, o: &Self) -> Result<()> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "matmul: {}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    fn product_row(&self, o: &Self, i: usize) -> Vec<F> {
        let mut acc: Vec<Option<F>> = vec![None; o.cols];
        for k in 0..self.cols {
            let a = &self.data[i * self.cols + k];
            if a.is_zero() {
                continue;
            }
            for (j, slot) in acc.iter_mut().enumerate() {
                let b = &o.data[k * o.cols + j];
                if b.is_zero() {
                    continue;
                }
                let t = a.mul(b);
                *slot = Some(match slot.take() {
                    Some(s) => s.add(&t),
                    None => t,
                });
            }
        }
        acc.into_iter().map(|x| x.unwrap_or_else(F::zero)).collect()
    }

    pub fn kron(&self, o: &Self) -> Self {
        let rows = self.rows * o.rows;
        let cols = self.cols * o.cols;
        let mut m = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            m.set(i * o.rows + k, j * o.cols + l, a.mul(b));
                        }
                    }
                }
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(|x| x.magnitude()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn nonzero_positions(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j).is_zero() {
                    v.push((i, j));
                }
            }
        }
        v
    }

    /// Columns `0..ncols`, all rows.
    pub fn leading_columns(&self, ncols: usize) -> Self {
        Self::from_fn(self.rows, ncols.min(self.cols), |i, j| self.get(i, j).clone())
    }

    /// `XY - c YX`.
    pub fn q_commutator(&self, o: &Self, c: &F) -> Result<Self> {
        self.matmul(o)?.sub(&o.matmul(self)?.scale(c))
    }

    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.matmul(o)?.sub(&o.matmul(self)?)
    }

    /// Inverse by Gaussian elimination with magnitude pivoting.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let piv = (c..n)
                .filter(|&r| !a.get(r, c).is_zero())
                .max_by(|&x, &y| a.get(x, c).magnitude().total_cmp(&a.get(y, c).magnitude()))
                .ok_or(Error::DivisionByZero)?;
            a.swap_rows(c, piv);
            inv.swap_rows(c, piv);
            let p = a.get(c, c).inv()?;
            for j in 0..n {
                let x = a.get(c, j).mul(&p);
                a.set(c, j, x);
                let y = inv.get(c, j).mul(&p);
                inv.set(c, j, y);
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                for j in 0..n {
                    if !a.get(c, j).is_zero() {
                        let x = a.get(r, j).sub(&f.mul(a.get(c, j)));
                        a.set(r, j, x);
                    }
                    if !inv.get(c, j).is_zero() {
                        let y = inv.get(r, j).sub(&f.mul(inv.get(c, j)));
                        inv.set(r, j, y);
                    }
                }
            }
        }
        Ok(inv)
    }

    /// Numerical rank with relative threshold `tol`; exact zero tests for the
    /// exact backend.
    pub fn rank(&self, tol: f64) -> usize {
        let mut a = self.clone();
        let scale = self.max_magnitude().max(f64::MIN_POSITIVE);
        let mut rank = 0;
        for c in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let piv = (rank..a.rows)
                .max_by(|&x, &y| a.get(x, c).magnitude().total_cmp(&a.get(y, c).magnitude()))
                .expect("nonempty range");
            let m = a.get(piv, c).magnitude();
            if a.get(piv, c).is_zero() || (!F::EXACT && m <= tol * scale) {
                continue;
            }
            a.swap_rows(rank, piv);
            let p = a.get(rank, c).inv().expect("pivot is nonzero");
            for r in rank + 1..a.rows {
                if a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).mul(&p);
                for j in c..a.cols {
                    let x = a.get(r, j).sub(&f.mul(a.get(rank, j)));
                    a.set(r, j, x);
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// JSON object `{rows, cols, entries: [{i, j, value}]}` listing nonzero entries.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .nonzero_positions()
            .into_iter()
            .map(|(i, j)| json!({"i": i, "j": j, "value": self.get(i, j).to_json()}))
            .collect();
        json!({"rows": self.rows, "cols": self.cols, "entries": entries})
    }
}

/// Permutation operator on `C^n (x) C^n`: `P(x (x) y) = y (x) x`.
pub fn permutation<F: Field>(n: usize) -> Mat<F> {
    let mut p = Mat::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            p.set(i * n + j, j * n + i, F::one());
        }
    }
    p
}

/// Skew-diagonal unit matrix.
pub fn skew_identity<F: Field>(n: usize) -> Mat<F> {
    Mat::from_fn(n, n, |i, j| if i + j + 1 == n { F::one() } else { F::zero() })
}
