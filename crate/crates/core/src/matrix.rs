//! Square matrices over D2.
//!
//! A matrix `A` over D2 splits uniquely as `A0 + i1 A1 + i2 A2 + i1i2 A3`
//! with real `Ai`. It is invertible iff its real part `A0` is, and then
//!
//! ```text
//! A⁻¹ = A0⁻¹ [A0 − i1 A1 − i2 A2 + i1i2 (A1 A0⁻¹ A2 + A2 A0⁻¹ A1 − A3)] A0⁻¹
//! ```

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::pimenov::D2Element;
use crate::scalar::{sum, Scalar, EPS_INV};

/// Dense row-major real `n×n` matrix. Mostly a vehicle for [`MatD2::decompose`].
#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: Scalar> RealMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        Ok(Self { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        check_dims(self.n, rhs.n)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] =
                    sum((0..n).map(|k| self.get(i, k).clone() * rhs.get(k, j).clone()));
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Gauss–Jordan with partial pivoting on `|x|` (any nonzero pivot in exact mode).
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| a.get(r, col).is_finite() && !a.get(r, col).is_within(EPS_INV))
                .max_by(|&r, &s| {
                    let x = a.get(r, col).to_f64().abs();
                    let y = a.get(s, col).to_f64().abs();
                    x.total_cmp(&y)
                })
                .ok_or(Error::NonInvertible("real matrix is singular"))?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = T::one() / a.get(col, col).clone();
            for j in 0..n {
                a.entries[col * n + j] = a.get(col, j).clone() * p.clone();
                inv.entries[col * n + j] = inv.get(col, j).clone() * p.clone();
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    a.entries[r * n + j] =
                        a.get(r, j).clone() - f.clone() * a.get(col, j).clone();
                    inv.entries[r * n + j] =
                        inv.get(r, j).clone() - f.clone() * inv.get(col, j).clone();
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, r: usize, s: usize) {
        if r != s {
            for j in 0..self.n {
                self.entries.swap(r * self.n + j, s * self.n + j);
            }
        }
    }
}

/// Square matrix with entries in D2, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct MatD2<T> {
    n: usize,
    entries: Vec<D2Element<T>>,
}

fn check_dims(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

impl<T: Scalar> MatD2<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![D2Element::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = D2Element::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<D2Element<T>>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        Ok(Self { n, entries: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix whose entries are given by `f(row, col)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> D2Element<T>) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self { n, entries }
    }

    /// Embeds a real matrix (`A1 = A2 = A3 = 0`).
    pub fn from_real(m: &RealMatrix<T>) -> Self {
        Self::from_fn(m.dim(), |i, j| D2Element::scalar(m.get(i, j).clone()))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &D2Element<T> {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: D2Element<T>) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<D2Element<T>>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn entries(&self) -> &[D2Element<T>] {
        &self.entries
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        check_dims(self.n, rhs.n)?;
        let n = self.n;
        Ok(Self::from_fn(n, |i, j| {
            (0..n).fold(D2Element::zero(), |acc, k| &acc + &(self.get(i, k) * rhs.get(k, j)))
        }))
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        check_dims(self.n, rhs.n)?;
        Ok(Self::from_fn(self.n, |i, j| self.get(i, j) + rhs.get(i, j)))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        check_dims(self.n, rhs.n)?;
        Ok(Self::from_fn(self.n, |i, j| self.get(i, j) - rhs.get(i, j)))
    }

    /// Multiplies every entry by the D2 element `k`.
    pub fn scale(&self, k: &D2Element<T>) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j) * k)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    /// Entrywise conjugation by `i2`.
    pub fn conj_iota2(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j).conj_iota2())
    }

    /// Dual conjugation `A⋆ = conj(A)ᵀ`.
    pub fn star(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj_iota2())
    }

    /// The four real matrices `(A0, A1, A2, A3)` of `A = A0 + i1 A1 + i2 A2 + i1i2 A3`.
    pub fn decompose(&self) -> [RealMatrix<T>; 4] {
        let part = |k: usize| RealMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e.coeffs()[k].clone()).collect(),
        };
        [part(0), part(1), part(2), part(3)]
    }

    pub fn recompose(parts: &[RealMatrix<T>; 4]) -> Result<Self> {
        let n = parts[0].dim();
        for p in &parts[1..] {
            check_dims(n, p.dim())?;
        }
        Ok(Self::from_fn(n, |i, j| {
            D2Element::new(
                parts[0].get(i, j).clone(),
                parts[1].get(i, j).clone(),
                parts[2].get(i, j).clone(),
                parts[3].get(i, j).clone(),
            )
        }))
    }

    pub fn real_part(&self) -> RealMatrix<T> {
        RealMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e.a0.clone()).collect(),
        }
    }

    /// Determinant over the commutative ring D2.
    ///
    /// Permutation expansion for `n ≤ 3`. Larger matrices are eliminated using
    /// only pivots with invertible scalar part; when a column has none the
    /// remaining block is expanded by cofactors.
    pub fn det(&self) -> D2Element<T> {
        if self.n <= 3 {
            return leibniz_det(&self.rows());
        }
        let mut rows = self.rows();
        let mut acc = D2Element::one();
        let mut k = 0;
        while k < rows.len() {
            let m = rows.len();
            let Some(pivot) = (k..m).find(|&r| rows[r][k].is_invertible()) else {
                let block: Vec<Vec<_>> = rows[k..].iter().map(|r| r[k..].to_vec()).collect();
                return &acc * &cofactor_det(&block);
            };
            if pivot != k {
                rows.swap(pivot, k);
                acc = -acc;
            }
            let inv = rows[k][k].inverse().expect("pivot checked invertible");
            acc = &acc * &rows[k][k];
            for r in k + 1..m {
                let f = &rows[r][k] * &inv;
                for c in k..m {
                    let delta = &f * &rows[k][c];
                    rows[r][c] = &rows[r][c] - &delta;
                }
            }
            k += 1;
        }
        acc
    }

    /// Whether `Re(A)` is invertible as a real matrix.
    pub fn is_invertible(&self) -> bool {
        self.real_part().inverse().is_ok()
    }

    /// The closed-form inverse built from `A0⁻¹`.
    pub fn inverse(&self) -> Result<Self> {
        let [a0, a1, a2, a3] = self.decompose();
        let p = a0
            .inverse()
            .map_err(|_| Error::NonInvertible("real part of matrix is singular"))?;
        let mul = |x: &RealMatrix<T>, y: &RealMatrix<T>| x.try_mul(y).expect("same dimension");
        let cross = {
            let l = mul(&mul(&a1, &p), &a2);
            let r = mul(&mul(&a2, &p), &a1);
            RealMatrix {
                n: self.n,
                entries: l
                    .entries
                    .iter()
                    .zip(&r.entries)
                    .zip(&a3.entries)
                    .map(|((x, y), z)| x.clone() + y.clone() - z.clone())
                    .collect(),
            }
        };
        let neg = |m: &RealMatrix<T>| RealMatrix {
            n: m.n,
            entries: m.entries.iter().map(|x| -x.clone()).collect(),
        };
        let middle = Self::recompose(&[a0, neg(&a1), neg(&a2), cross])?;
        let p = Self::from_real(&p);
        p.try_mul(&middle)?.try_mul(&p)
    }

    /// `XY − YX`
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.try_mul(rhs)?.try_sub(&rhs.try_mul(self)?)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.n == other.n
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(x, y)| x.approx_eq(y, tol))
    }

    /// Componentwise max of `|self − other|` as f64; infinite on dimension mismatch.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| (x - y).max_abs())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(D2Element::is_finite)
    }

    /// `A⋆ = A⁻¹` and `det A = 1`; singular matrices are never members.
    pub fn is_su_d2(&self, tol: f64) -> bool {
        let Ok(inv) = self.inverse() else {
            return false;
        };
        self.star().approx_eq(&inv, tol) && self.det().approx_eq(&D2Element::one(), tol)
    }

    /// `AᵀA = AAᵀ = I` and `det A = 1`.
    pub fn is_orthogonal_unimodular(&self, tol: f64) -> bool {
        let id = Self::identity(self.n);
        let t = self.transpose();
        let (Ok(tl), Ok(tr)) = (t.try_mul(self), self.try_mul(&t)) else {
            return false;
        };
        tl.approx_eq(&id, tol)
            && tr.approx_eq(&id, tol)
            && self.det().approx_eq(&D2Element::one(), tol)
    }
}

fn leibniz_det<T: Scalar>(rows: &[Vec<D2Element<T>>]) -> D2Element<T> {
    let n = rows.len();
    match n {
        0 => D2Element::one(),
        1 => rows[0][0].clone(),
        2 => &(&rows[0][0] * &rows[1][1]) - &(&rows[0][1] * &rows[1][0]),
        _ => {
            let mut total = D2Element::zero();
            for perm in permutations(n) {
                let sign = parity(&perm);
                let term = perm
                    .iter()
                    .enumerate()
                    .fold(D2Element::one(), |acc, (i, &j)| &acc * &rows[i][j]);
                total = if sign { &total + &term } else { &total - &term };
            }
            total
        }
    }
}

fn cofactor_det<T: Scalar>(rows: &[Vec<D2Element<T>>]) -> D2Element<T> {
    let n = rows.len();
    if n <= 3 {
        return leibniz_det(rows);
    }
    let mut total = D2Element::zero();
    for (i, row) in rows.iter().enumerate() {
        if row[0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<_>> = rows
            .iter()
            .enumerate()
            .filter(|&(r, _)| r != i)
            .map(|(_, r)| r[1..].to_vec())
            .collect();
        let term = &row[0] * &cofactor_det(&minor);
        total = if i % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

/// All permutations of `0..n` (Heap's algorithm).
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            a.swap(j, k - 1);
        }
    }
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out
}

/// `true` for even permutations.
fn parity(perm: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

impl<T: Scalar> Mul for &MatD2<T> {
    type Output = MatD2<T>;

    /// Panics on dimension mismatch; use [`MatD2::try_mul`] to handle it.
    fn mul(self, rhs: Self) -> MatD2<T> {
        self.try_mul(rhs).expect("matrix dimensions must agree")
    }
}

impl<T: Scalar> Add for &MatD2<T> {
    type Output = MatD2<T>;
    fn add(self, rhs: Self) -> MatD2<T> {
        self.try_add(rhs).expect("matrix dimensions must agree")
    }
}

impl<T: Scalar> Sub for &MatD2<T> {
    type Output = MatD2<T>;
    fn sub(self, rhs: Self) -> MatD2<T> {
        self.try_sub(rhs).expect("matrix dimensions must agree")
    }
}

impl<T: Scalar> fmt::Display for MatD2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
