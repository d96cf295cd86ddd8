//! Small dense linear programs of the form
//!
//! ```text
//! minimize cᵀz   subject to   g_iᵀ z ≥ h_i,   z ≥ 0,   c ≥ 0
//! ```
//!
//! Constant estimation produces thousands of rows over two to four unknowns,
//! so the solver runs the primal simplex method on the dual
//! `maximize hᵀw  s.t.  Gᵀw ≤ c, w ≥ 0`, whose tableau has only `n` rows.
//! `w = 0` is dual feasible because `c ≥ 0`; an unbounded dual certifies an
//! infeasible primal. The primal optimum is read off the slack reduced costs.

use crate::error::{input, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<S> {
    Optimal { z: Vec<S>, value: S },
    Infeasible,
}

#[derive(Debug, Clone)]
pub struct LinearProgram<S> {
    n: usize,
    rows: Vec<(Vec<S>, S)>,
}

const MAX_PIVOTS: usize = 100_000;
const DEGENERATE_SWITCH: usize = 50;

impl<S: Scalar> LinearProgram<S> {
    pub fn new(n: usize) -> Self {
        LinearProgram {
            n,
            rows: Vec::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    /// `gᵀz ≥ h`
    pub fn push_ge(&mut self, g: Vec<S>, h: S) {
        assert_eq!(g.len(), self.n, "row width must match variable count");
        self.rows.push((g, h));
    }

    /// `gᵀz ≤ h`
    pub fn push_le(&mut self, g: Vec<S>, h: S) {
        self.push_ge(g.into_iter().map(|v| -v).collect(), -h);
    }

    /// Minimizes `cᵀz`; every entry of `c` must be nonnegative.
    pub fn minimize(&self, c: &[S]) -> Result<LpOutcome<S>> {
        if c.len() != self.n {
            return Err(input("objective width must match variable count"));
        }
        if c.iter().any(|v| *v < S::zero()) {
            return Err(input("objective coefficients must be nonnegative"));
        }
        Ok(DualTableau::new(self, c).solve())
    }

    /// Minimizes `cᵀz`, then breaks ties by minimizing `z_0`, `z_1`, … in
    /// turn while holding earlier optima.
    pub fn lexmin(&self, c: &[S]) -> Result<LpOutcome<S>> {
        let eps = S::solver_epsilon();
        let widen = |v: &S| v.clone() + eps.clone() * S::max_of(S::one(), v.abs());
        let mut lp = self.clone();
        let value = match lp.minimize(c)? {
            LpOutcome::Infeasible => return Ok(LpOutcome::Infeasible),
            LpOutcome::Optimal { value, .. } => value,
        };
        lp.push_le(c.to_vec(), widen(&value));
        let mut z = vec![S::zero(); self.n];
        for j in 0..self.n {
            let mut unit = vec![S::zero(); self.n];
            unit[j] = S::one();
            match lp.minimize(&unit)? {
                LpOutcome::Infeasible => return Ok(LpOutcome::Infeasible),
                LpOutcome::Optimal { z: zj, value: vj } => {
                    z = zj;
                    lp.push_le(unit, widen(&vj));
                }
            }
        }
        let value = c
            .iter()
            .zip(&z)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
        Ok(LpOutcome::Optimal { z, value })
    }
}

/// Tableau of the dual: `n` constraint rows over `m` dual variables plus `n`
/// slacks.
struct DualTableau<S> {
    n: usize,
    cols: usize,
    body: Vec<Vec<S>>,
    rhs: Vec<S>,
    reduced: Vec<S>,
    basis: Vec<usize>,
    cost: Vec<S>,
    eps: S,
}

impl<S: Scalar> DualTableau<S> {
    fn new(lp: &LinearProgram<S>, c: &[S]) -> Self {
        let n = lp.n;
        let m = lp.rows.len();
        let cols = m + n;
        let mut body = vec![vec![S::zero(); cols]; n];
        for (j, (g, _)) in lp.rows.iter().enumerate() {
            for (i, gi) in g.iter().enumerate() {
                body[i][j] = gi.clone();
            }
        }
        for (i, row) in body.iter_mut().enumerate() {
            row[m + i] = S::one();
        }
        let mut reduced: Vec<S> = lp.rows.iter().map(|(_, h)| h.clone()).collect();
        reduced.extend((0..n).map(|_| S::zero()));
        DualTableau {
            n,
            cols,
            body,
            rhs: c.to_vec(),
            reduced,
            basis: (m..cols).collect(),
            cost: c.to_vec(),
            eps: S::solver_epsilon(),
        }
    }

    fn entering(&self, bland: bool) -> Option<usize> {
        let candidates = (0..self.cols).filter(|&j| self.reduced[j] > self.eps);
        if bland {
            return candidates.into_iter().next();
        }
        candidates.fold(None, |best: Option<usize>, j| match best {
            Some(b) if self.reduced[b] >= self.reduced[j] => Some(b),
            _ => Some(j),
        })
    }

    fn leaving(&self, col: usize) -> Option<usize> {
        let mut best: Option<(usize, S)> = None;
        for i in 0..self.n {
            let a = &self.body[i][col];
            if *a <= self.eps {
                continue;
            }
            let ratio = self.rhs[i].clone() / a.clone();
            let better = match &best {
                None => true,
                Some((bi, br)) => {
                    ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                }
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.body[row][col].clone();
        for v in self.body[row].iter_mut() {
            *v = v.clone() / p.clone();
        }
        self.rhs[row] = self.rhs[row].clone() / p;
        let pivot_row = self.body[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for i in 0..self.n {
            if i == row || self.body[i][col].is_zero() {
                continue;
            }
            let factor = self.body[i][col].clone();
            for (v, pr) in self.body[i].iter_mut().zip(&pivot_row) {
                *v = v.clone() - factor.clone() * pr.clone();
            }
            self.body[i][col] = S::zero();
            self.rhs[i] = self.rhs[i].clone() - factor * pivot_rhs.clone();
            if self.rhs[i] < S::zero() && self.rhs[i] > -self.eps.clone() {
                self.rhs[i] = S::zero();
            }
        }
        let factor = self.reduced[col].clone();
        for (v, pr) in self.reduced.iter_mut().zip(&pivot_row) {
            *v = v.clone() - factor.clone() * pr.clone();
        }
        self.reduced[col] = S::zero();
        self.basis[row] = col;
    }

    fn solve(mut self) -> LpOutcome<S> {
        let mut stalled = 0usize;
        for _ in 0..MAX_PIVOTS {
            let Some(col) = self.entering(stalled >= DEGENERATE_SWITCH) else {
                return self.primal_solution();
            };
            let Some(row) = self.leaving(col) else {
                return LpOutcome::Infeasible;
            };
            if self.rhs[row].is_zero() {
                stalled += 1;
            } else {
                stalled = 0;
            }
            self.pivot(row, col);
        }
        // Bland's rule terminates; reaching here means numerical trouble.
        LpOutcome::Infeasible
    }

    fn primal_solution(&self) -> LpOutcome<S> {
        let m = self.cols - self.n;
        let z: Vec<S> = (0..self.n)
            .map(|i| {
                let v = -self.reduced[m + i].clone();
                if v <= S::zero() {
                    S::zero()
                } else {
                    v
                }
            })
            .collect();
        let value = z
            .iter()
            .zip(&self.cost)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
        LpOutcome::Optimal { z, value }
    }
}
