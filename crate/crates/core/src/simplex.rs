//! Dense revised simplex for `max cᵀx  s.t.  Ax ≤ b, x ≥ 0` with `b ≥ 0`.
//!
//! The origin is feasible, so no phase I is needed. Columns are sparse with
//! integer entries and may be appended between solves; the current basis is
//! kept, which makes column generation warm-started for free.
//!
//! The solver is generic over the scalar: `f64` (with tolerances, Dantzig
//! pricing, periodic refactorization) for fast hints, and exact rationals
//! (Bland's rule) for certified answers.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::Rational;

pub trait Scalar: Clone + std::fmt::Debug {
    const EXACT: bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn is_zero(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }
    fn lt(&self, o: &Self) -> bool;
    fn to_f64(&self) -> f64;
}

const EPS: f64 = 1e-9;

impl Scalar for f64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_pos(&self) -> bool {
        *self > EPS
    }
    fn is_neg(&self) -> bool {
        *self < -EPS
    }
    fn lt(&self, o: &Self) -> bool {
        *self < *o - EPS * 1e-3
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v.into())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn lt(&self, o: &Self) -> bool {
        self < o
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Sparse integer column: `(row, coefficient)` pairs.
pub type Column = Vec<(usize, i64)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct Simplex<T: Scalar> {
    m: usize,
    cols: Vec<Column>,
    cost: Vec<i64>,
    b: Vec<i64>,
    /// Variable index per basis row; `j < n` structural, `n + r` is slack `r`.
    basis: Vec<usize>,
    binv: Vec<Vec<T>>,
    xb: Vec<T>,
    pivots_since_refactor: usize,
    pub pivots: usize,
}

const SLACK: usize = usize::MAX / 2;

impl<T: Scalar> Simplex<T> {
    pub fn new(b: Vec<i64>) -> Self {
        assert!(b.iter().all(|&v| v >= 0), "right-hand side must be nonnegative");
        let m = b.len();
        let mut binv = vec![vec![T::zero(); m]; m];
        for (i, row) in binv.iter_mut().enumerate() {
            row[i] = T::one();
        }
        Simplex {
            m,
            cols: Vec::new(),
            cost: Vec::new(),
            xb: b.iter().map(|&v| T::from_i64(v)).collect(),
            b,
            basis: (0..m).map(|r| SLACK + r).collect(),
            binv,
            pivots_since_refactor: 0,
            pivots: 0,
        }
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn add_column(&mut self, cost: i64, col: Column) -> usize {
        debug_assert!(col.iter().all(|&(r, _)| r < self.m));
        self.cols.push(col);
        self.cost.push(cost);
        self.cols.len() - 1
    }

    /// Basis as variable ids: structural `j`, or `SLACK + r` for slack `r`.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    fn var_cost(&self, j: usize) -> i64 {
        if j >= SLACK {
            0
        } else {
            self.cost[j]
        }
    }

    fn column_dense(&self, j: usize) -> Vec<T> {
        let mut v = vec![T::zero(); self.m];
        if j >= SLACK {
            v[j - SLACK] = T::one();
        } else {
            for &(r, a) in &self.cols[j] {
                v[r] = v[r].add(&T::from_i64(a));
            }
        }
        v
    }

    /// `B⁻¹ a_j`.
    fn ftran(&self, j: usize) -> Vec<T> {
        let mut out = vec![T::zero(); self.m];
        if j >= SLACK {
            let r = j - SLACK;
            for (i, o) in out.iter_mut().enumerate() {
                *o = self.binv[i][r].clone();
            }
        } else {
            for &(r, a) in &self.cols[j] {
                let a = T::from_i64(a);
                for (i, o) in out.iter_mut().enumerate() {
                    let t = &self.binv[i][r];
                    if !t.is_zero() {
                        *o = o.add(&t.mul(&a));
                    }
                }
            }
        }
        out
    }

    /// Simplex multipliers `c_Bᵀ B⁻¹`.
    pub fn duals(&self) -> Vec<T> {
        let mut pi = vec![T::zero(); self.m];
        for (i, &var) in self.basis.iter().enumerate() {
            let c = self.var_cost(var);
            if c == 0 {
                continue;
            }
            let c = T::from_i64(c);
            for (r, p) in pi.iter_mut().enumerate() {
                let t = &self.binv[i][r];
                if !t.is_zero() {
                    *p = p.add(&c.mul(t));
                }
            }
        }
        pi
    }

    fn reduced_cost(&self, pi: &[T], j: usize) -> T {
        if j >= SLACK {
            T::zero().sub(&pi[j - SLACK])
        } else {
            let mut d = T::from_i64(self.cost[j]);
            for &(r, a) in &self.cols[j] {
                d = d.sub(&pi[r].mul(&T::from_i64(a)));
            }
            d
        }
    }

    fn is_basic(&self) -> Vec<bool> {
        let mut basic = vec![false; self.cols.len() + self.m];
        for &v in &self.basis {
            let idx = if v >= SLACK { self.cols.len() + v - SLACK } else { v };
            basic[idx] = true;
        }
        basic
    }

    /// Entering variable: Bland (lowest index, structural before slack)
    /// for exact scalars, most positive reduced cost otherwise.
    fn choose_entering(&self, pi: &[T]) -> Option<usize> {
        let basic = self.is_basic();
        let n = self.cols.len();
        let candidates = (0..n).chain((0..self.m).map(|r| SLACK + r));
        let mut best: Option<(usize, T)> = None;
        for j in candidates {
            let idx = if j >= SLACK { n + j - SLACK } else { j };
            if basic[idx] {
                continue;
            }
            let d = self.reduced_cost(pi, j);
            if !d.is_pos() {
                continue;
            }
            if T::EXACT {
                return Some(j);
            }
            match &best {
                Some((_, bd)) if !bd.lt(&d) => {}
                _ => best = Some((j, d)),
            }
        }
        best.map(|(j, _)| j)
    }

    fn pivot(&mut self, r: usize, q: usize, alpha: &[T]) {
        let piv = alpha[r].clone();
        let prow: Vec<T> = self.binv[r].iter().map(|t| t.div(&piv)).collect();
        let xr = self.xb[r].div(&piv);
        for (i, a) in alpha.iter().enumerate().take(self.m) {
            if i == r {
                continue;
            }
            let f = a.clone();
            if f.is_zero() {
                continue;
            }
            for (t, p) in self.binv[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *t = t.sub(&f.mul(p));
                }
            }
            self.xb[i] = self.xb[i].sub(&f.mul(&xr));
        }
        self.binv[r] = prow;
        self.xb[r] = xr;
        self.basis[r] = q;
        self.pivots += 1;
        self.pivots_since_refactor += 1;
        if !T::EXACT {
            for x in self.xb.iter_mut() {
                if x.is_neg() || x.is_zero() {
                    *x = T::zero();
                }
            }
            if self.pivots_since_refactor >= 100 {
                // Basis is always nonsingular after a successful pivot.
                let _ = self.refactor();
            }
        }
    }

    /// Recomputes `B⁻¹` and `x_B` from the basis by Gauss–Jordan elimination.
    /// Returns false if the basis matrix is singular.
    pub fn refactor(&mut self) -> bool {
        let m = self.m;
        let mut a: Vec<Vec<T>> = vec![vec![T::zero(); m]; m];
        for (c, &var) in self.basis.iter().enumerate() {
            for (r, v) in self.column_dense(var).into_iter().enumerate() {
                a[r][c] = v;
            }
        }
        let mut inv: Vec<Vec<T>> = (0..m)
            .map(|i| (0..m).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect();
        for col in 0..m {
            // partial pivoting (largest magnitude for floats, first nonzero exact)
            let mut piv = None;
            let mut best = 0.0;
            for (r, row) in a.iter().enumerate().skip(col) {
                if row[col].is_zero() {
                    continue;
                }
                if T::EXACT {
                    piv = Some(r);
                    break;
                }
                let mag = row[col].to_f64().abs();
                if mag > best {
                    best = mag;
                    piv = Some(r);
                }
            }
            let Some(p) = piv else { return false };
            a.swap(col, p);
            inv.swap(col, p);
            let d = a[col][col].clone();
            for j in 0..m {
                a[col][j] = a[col][j].div(&d);
                inv[col][j] = inv[col][j].div(&d);
            }
            for r in 0..m {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..m {
                    if !a[col][j].is_zero() {
                        a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                    }
                    if !inv[col][j].is_zero() {
                        inv[r][j] = inv[r][j].sub(&f.mul(&inv[col][j]));
                    }
                }
            }
        }
        // B⁻¹ maps rows of the constraint system to basis positions.
        self.binv = inv;
        self.xb = (0..m)
            .map(|i| {
                let mut s = T::zero();
                for (r, &bv) in self.b.iter().enumerate() {
                    if bv != 0 && !self.binv[i][r].is_zero() {
                        s = s.add(&self.binv[i][r].mul(&T::from_i64(bv)));
                    }
                }
                s
            })
            .collect();
        self.pivots_since_refactor = 0;
        true
    }

    /// Installs a basis (e.g. from a floating-point solve). Falls back to
    /// the slack basis and returns false if it is singular or infeasible.
    pub fn set_basis(&mut self, basis: &[usize]) -> bool {
        assert_eq!(basis.len(), self.m);
        let old = std::mem::replace(&mut self.basis, basis.to_vec());
        if self.refactor() && self.xb.iter().all(|x| !x.is_neg()) {
            return true;
        }
        self.basis = old;
        self.refactor();
        false
    }

    pub fn solve(&mut self) -> Status {
        loop {
            let pi = self.duals();
            let Some(q) = self.choose_entering(&pi) else {
                return Status::Optimal;
            };
            let alpha = self.ftran(q);
            let mut leave: Option<usize> = None;
            for i in 0..self.m {
                if !alpha[i].is_pos() {
                    continue;
                }
                leave = match leave {
                    None => Some(i),
                    Some(l) => {
                        // compare x_i/α_i with x_l/α_l
                        let lhs = self.xb[i].mul(&alpha[l]);
                        let rhs = self.xb[l].mul(&alpha[i]);
                        if lhs.lt(&rhs) || (!rhs.lt(&lhs) && self.basis[i] < self.basis[l]) {
                            Some(i)
                        } else {
                            Some(l)
                        }
                    }
                };
            }
            let Some(r) = leave else {
                return Status::Unbounded;
            };
            self.pivot(r, q, &alpha);
        }
    }

    /// Values of the structural variables.
    pub fn primal(&self) -> Vec<T> {
        let mut x = vec![T::zero(); self.cols.len()];
        for (i, &v) in self.basis.iter().enumerate() {
            if v < SLACK {
                x[v] = self.xb[i].clone();
            }
        }
        x
    }

    pub fn objective(&self) -> T {
        let mut s = T::zero();
        for (i, &v) in self.basis.iter().enumerate() {
            let c = self.var_cost(v);
            if c != 0 {
                s = s.add(&self.xb[i].mul(&T::from_i64(c)));
            }
        }
        s
    }
}

/// Slack variable id for row `r`, as used in [`Simplex::basis`].
pub fn slack_id(r: usize) -> usize {
    SLACK + r
}

pub fn is_slack(id: usize) -> bool {
    id >= SLACK
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn small_lp_exact_and_float() {
        // max 3x + 2y  s.t. x + y ≤ 4, x + 3y ≤ 6, x ≤ 3
        let build = || {
            let mut s = Simplex::<Rational>::new(vec![4, 6, 3]);
            s.add_column(3, vec![(0, 1), (1, 1), (2, 1)]);
            s.add_column(2, vec![(0, 1), (1, 3)]);
            s
        };
        let mut s = build();
        assert_eq!(s.solve(), Status::Optimal);
        assert_eq!(s.objective(), rat(11, 1));
        assert_eq!(s.primal(), vec![rat(3, 1), rat(1, 1)]);
        // duals: y = (2, 0, 1)
        assert_eq!(s.duals(), vec![rat(2, 1), rat(0, 1), rat(1, 1)]);

        let mut f = Simplex::<f64>::new(vec![4, 6, 3]);
        f.add_column(3, vec![(0, 1), (1, 1), (2, 1)]);
        f.add_column(2, vec![(0, 1), (1, 3)]);
        assert_eq!(f.solve(), Status::Optimal);
        assert!((f.objective() - 11.0).abs() < 1e-9);

        // warm start the exact solver from the float basis
        let mut e = build();
        assert!(e.set_basis(f.basis()));
        assert_eq!(e.solve(), Status::Optimal);
        assert_eq!(e.objective(), rat(11, 1));
    }

    #[test]
    fn unbounded_detected() {
        let mut s = Simplex::<Rational>::new(vec![1]);
        s.add_column(1, vec![(0, -1)]);
        assert_eq!(s.solve(), Status::Unbounded);
    }

    #[test]
    fn columns_added_after_solve() {
        let mut s = Simplex::<Rational>::new(vec![2]);
        s.add_column(1, vec![(0, 1)]);
        s.solve();
        assert_eq!(s.objective(), rat(2, 1));
        s.add_column(3, vec![(0, 2)]);
        s.solve();
        assert_eq!(s.objective(), rat(3, 1));
    }
}
