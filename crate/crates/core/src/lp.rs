//! Exact rational simplex for equality-constrained LPs with variable bounds.
//!
//! Problems have the form `min fᵀx  s.t.  A x = b,  l <= x <= u` where every
//! lower bound is finite and upper bounds may be infinite. The solver is a
//! dense-tableau, bounded-variable, two-phase simplex: phase I drives a full
//! set of artificial variables to zero, phase II optimizes the real
//! objective. Bland's rule picks both the entering and the leaving variable,
//! so the method terminates on degenerate problems. Upper bounds are handled
//! natively through bound flips instead of extra slack rows.
//!
//! Since simplex only moves between vertices, an optimal answer is always a
//! basic feasible solution. No crossover step is needed to turn an interior
//! optimum into a vertex.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::io::format_rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<BigRational>,
    /// Row-major `M x N` constraint matrix.
    pub a: Vec<Vec<BigRational>>,
    pub b: Vec<BigRational>,
    pub lower: Vec<BigRational>,
    /// `None` is `+∞`.
    pub upper: Vec<Option<BigRational>>,
}

impl LinearProgram {
    /// `x >= 0`, no upper bounds.
    pub fn new(objective: Vec<BigRational>, a: Vec<Vec<BigRational>>, b: Vec<BigRational>) -> Result<Self> {
        let n = objective.len();
        let lp = LinearProgram {
            objective,
            a,
            b,
            lower: vec![BigRational::zero(); n],
            upper: vec![None; n],
        };
        lp.validate()?;
        Ok(lp)
    }

    pub fn with_bounds(mut self, lower: Vec<BigRational>, upper: Vec<Option<BigRational>>) -> Result<Self> {
        self.lower = lower;
        self.upper = upper;
        self.validate()?;
        Ok(self)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.b.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.a.len() != self.b.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} constraint rows but {} right-hand sides",
                self.a.len(),
                self.b.len()
            )));
        }
        if let Some(r) = self.a.iter().position(|row| row.len() != n) {
            return Err(Error::DimensionMismatch(format!("constraint row {r} does not have {n} entries")));
        }
        if self.lower.len() != n || self.upper.len() != n {
            return Err(Error::DimensionMismatch("bound vectors must match the variable count".into()));
        }
        for j in 0..n {
            if let Some(u) = &self.upper[j] {
                if u < &self.lower[j] {
                    return Err(Error::ContractViolation(format!("variable {j} has upper < lower")));
                }
            }
        }
        Ok(())
    }

    pub fn is_feasible(&self, x: &[BigRational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().enumerate().all(|(j, v)| {
                v >= &self.lower[j] && self.upper[j].as_ref().is_none_or(|u| v <= u)
            })
            && self.a.iter().zip(&self.b).all(|(row, rhs)| &dot(row, x) == rhs)
    }

    pub fn objective_value(&self, x: &[BigRational]) -> BigRational {
        dot(&self.objective, x)
    }

    /// Text dump: `min` / objective, `st` / `row = rhs`, `bounds` / `lo hi`.
    pub fn to_text(&self) -> String {
        let fmt_row = |row: &[BigRational]| row.iter().map(format_rational).collect::<Vec<_>>().join(" ");
        let mut s = String::new();
        writeln!(s, "min").unwrap();
        writeln!(s, "{}", fmt_row(&self.objective)).unwrap();
        writeln!(s, "st").unwrap();
        for (row, rhs) in self.a.iter().zip(&self.b) {
            writeln!(s, "{} = {}", fmt_row(row), format_rational(rhs)).unwrap();
        }
        writeln!(s, "bounds").unwrap();
        for (lo, hi) in self.lower.iter().zip(&self.upper) {
            let hi = hi.as_ref().map_or_else(|| "inf".to_string(), format_rational);
            writeln!(s, "{} {}", format_rational(lo), hi).unwrap();
        }
        s
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Empty unless `Optimal`.
    pub x: Vec<BigRational>,
    pub objective: BigRational,
    /// Basic structural columns, in tableau row order.
    pub basis: Vec<usize>,
    pub pivots: usize,
}

impl LpSolution {
    fn without_point(status: LpStatus, pivots: usize) -> Self {
        LpSolution {
            status,
            x: vec![],
            objective: BigRational::zero(),
            basis: vec![],
            pivots,
        }
    }
}

/// True iff every coordinate of an optimal point is an integer. With a TU
/// constraint matrix and integral `b` and bounds, every vertex is integral,
/// so this should hold; the flags only record which case the caller is in.
pub fn verify_vertex_integrality(sol: &LpSolution, _a_is_tu: bool, _b_integral: bool) -> bool {
    sol.status == LpStatus::Optimal && sol.x.iter().all(BigRational::is_integer)
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    /// Basic value of each row (shifted so every lower bound is 0).
    values: Vec<BigRational>,
    basis: Vec<usize>,
    /// Shifted upper bound of every column.
    upper: Vec<Option<BigRational>>,
    at_upper: Vec<bool>,
    is_basic: Vec<bool>,
    /// Reduced costs for the current phase.
    reduced: Vec<BigRational>,
    pivots: usize,
}

enum Step {
    Optimal,
    Unbounded,
    Moved,
}

impl Tableau {
    fn set_costs(&mut self, cost: &[BigRational]) {
        let ncols = cost.len();
        let mut d = cost.to_vec();
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for j in 0..ncols {
                if !row[j].is_zero() {
                    d[j] -= cb * &row[j];
                }
            }
        }
        self.reduced = d;
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let p = self.rows[r][e].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[e].is_zero() {
                continue;
            }
            let f = row[e].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        let f = self.reduced[e].clone();
        if !f.is_zero() {
            for (v, pv) in self.reduced.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.is_basic[self.basis[r]] = false;
        self.is_basic[e] = true;
        self.basis[r] = e;
        self.pivots += 1;
    }

    /// One Bland iteration over the columns `< allowed`.
    fn step(&mut self, allowed: usize) -> Step {
        let entering = (0..allowed).find(|&j| {
            !self.is_basic[j]
                && ((!self.at_upper[j] && self.reduced[j].is_negative())
                    || (self.at_upper[j] && self.reduced[j].is_positive()))
        });
        let Some(e) = entering else { return Step::Optimal };
        let increasing = !self.at_upper[e];

        // (limit, variable index, row or None for a bound flip, leaves at upper)
        let mut best: Option<(BigRational, usize, Option<usize>, bool)> = None;
        let mut consider = |t: BigRational, var: usize, row: Option<usize>, to_upper: bool| {
            let better = match &best {
                None => true,
                Some((bt, bv, _, _)) => t < *bt || (t == *bt && var < *bv),
            };
            if better {
                best = Some((t, var, row, to_upper));
            }
        };
        if let Some(u) = &self.upper[e] {
            consider(u.clone(), e, None, false);
        }
        for i in 0..self.rows.len() {
            let alpha = &self.rows[i][e];
            if alpha.is_zero() {
                continue;
            }
            // Basic value moves by -alpha·t when increasing, +alpha·t when decreasing.
            let rate = if increasing { alpha.clone() } else { -alpha.clone() };
            let bvar = self.basis[i];
            if rate.is_positive() {
                consider(&self.values[i] / &rate, bvar, Some(i), false);
            } else if let Some(u) = &self.upper[bvar] {
                consider((u - &self.values[i]) / (-&rate), bvar, Some(i), true);
            }
        }
        let Some((t, _, row, to_upper)) = best else {
            return Step::Unbounded;
        };
        for i in 0..self.rows.len() {
            let alpha = &self.rows[i][e];
            if alpha.is_zero() || t.is_zero() {
                continue;
            }
            let delta = alpha * &t;
            if increasing {
                self.values[i] -= delta;
            } else {
                self.values[i] += delta;
            }
        }
        match row {
            None => {
                self.at_upper[e] = !self.at_upper[e];
            }
            Some(r) => {
                let entering_value = if increasing {
                    t
                } else {
                    self.upper[e].as_ref().expect("at upper implies finite") - &t
                };
                let leaving = self.basis[r];
                self.at_upper[leaving] = to_upper;
                self.values[r] = entering_value;
                self.at_upper[e] = false;
                self.pivot(r, e);
            }
        }
        Step::Moved
    }

    fn run(&mut self, allowed: usize) -> Step {
        loop {
            match self.step(allowed) {
                Step::Moved => continue,
                done => return done,
            }
        }
    }

    fn value_of(&self, j: usize) -> BigRational {
        if self.is_basic[j] {
            let r = self.basis.iter().position(|&b| b == j).unwrap();
            self.values[r].clone()
        } else if self.at_upper[j] {
            self.upper[j].clone().unwrap()
        } else {
            BigRational::zero()
        }
    }
}

/// Two-phase bounded-variable simplex with Bland's rule.
pub fn simplex_solve(lp: &LinearProgram) -> Result<LpSolution> {
    lp.validate()?;
    let n = lp.num_vars();
    let m = lp.num_constraints();
    let ncols = n + m;

    // Shift x = l + x' and flip rows so the right-hand side is non-negative.
    let mut rows = Vec::with_capacity(m);
    let mut values = Vec::with_capacity(m);
    for i in 0..m {
        let mut rhs = lp.b[i].clone() - dot(&lp.a[i], &lp.lower);
        let mut row: Vec<BigRational> = lp.a[i].clone();
        if rhs.is_negative() {
            rhs = -rhs;
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row.resize(ncols, BigRational::zero());
        row[n + i] = BigRational::one();
        rows.push(row);
        values.push(rhs);
    }
    let mut upper: Vec<Option<BigRational>> = (0..n)
        .map(|j| lp.upper[j].as_ref().map(|u| u - &lp.lower[j]))
        .collect();
    upper.resize(ncols, None);
    let mut is_basic = vec![false; ncols];
    for i in 0..m {
        is_basic[n + i] = true;
    }
    let mut tab = Tableau {
        rows,
        values,
        basis: (n..ncols).collect(),
        upper,
        at_upper: vec![false; ncols],
        is_basic,
        reduced: vec![],
        pivots: 0,
    };

    // Phase I
    let mut phase1_cost = vec![BigRational::zero(); ncols];
    for c in phase1_cost.iter_mut().skip(n) {
        *c = BigRational::one();
    }
    tab.set_costs(&phase1_cost);
    if let Step::Unbounded = tab.run(n) {
        return Err(Error::Internal("phase I cannot be unbounded".into()));
    }
    let infeasibility: BigRational = (0..m).filter(|&i| tab.basis[i] >= n).map(|i| tab.values[i].clone()).sum();
    if infeasibility.is_positive() {
        return Ok(LpSolution::without_point(LpStatus::Infeasible, tab.pivots));
    }
    // Drive zero-valued artificials out of the basis where possible; rows
    // that cannot be pivoted are redundant and their artificial stays at 0.
    for r in 0..m {
        if tab.basis[r] < n {
            continue;
        }
        if let Some(e) = (0..n).find(|&j| !tab.is_basic[j] && !tab.rows[r][j].is_zero()) {
            let v = tab.value_of(e);
            tab.values[r] = v;
            tab.at_upper[e] = false;
            tab.pivot(r, e);
        }
    }

    // Phase II
    let mut cost = lp.objective.clone();
    cost.resize(ncols, BigRational::zero());
    tab.set_costs(&cost);
    if let Step::Unbounded = tab.run(n) {
        return Ok(LpSolution::without_point(LpStatus::Unbounded, tab.pivots));
    }

    let x: Vec<BigRational> = (0..n).map(|j| &lp.lower[j] + tab.value_of(j)).collect();
    let objective = lp.objective_value(&x);
    let basis = tab.basis.iter().copied().filter(|&j| j < n).collect();
    if !lp.is_feasible(&x) {
        return Err(Error::Internal("simplex returned an infeasible point".into()));
    }
    Ok(LpSolution {
        status: LpStatus::Optimal,
        x,
        objective,
        basis,
        pivots: tab.pivots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn single_equality() {
        let lp = LinearProgram::new(vec![q(1)], vec![vec![q(1)]], vec![q(5)]).unwrap();
        let s = simplex_solve(&lp).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.x, vec![q(5)]);
        assert_eq!(s.objective, q(5));
    }

    #[test]
    fn negative_rhs_is_infeasible() {
        let lp = LinearProgram::new(vec![q(0)], vec![vec![q(1)]], vec![q(-1)]).unwrap();
        assert_eq!(simplex_solve(&lp).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn boxed_difference() {
        // min x1 + x2  s.t.  x1 - x2 = 1,  0 <= x <= 3
        let lp = LinearProgram::new(vec![q(1), q(1)], vec![vec![q(1), q(-1)]], vec![q(1)])
            .unwrap()
            .with_bounds(vec![q(0), q(0)], vec![Some(q(3)), Some(q(3))])
            .unwrap();
        let s = simplex_solve(&lp).unwrap();
        assert_eq!(s.x, vec![q(1), q(0)]);
        assert_eq!(s.objective, q(1));
    }

    #[test]
    fn unbounded_direction() {
        // min -x1  s.t.  x1 - x2 = 0
        let lp = LinearProgram::new(vec![q(-1), q(0)], vec![vec![q(1), q(-1)]], vec![q(0)]).unwrap();
        assert_eq!(simplex_solve(&lp).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn upper_bound_flip_and_nonzero_lower() {
        // min -x1 - x2  s.t. x1 + x2 + x3 = 10, 1 <= x1 <= 2, 0 <= x2 <= 3, x3 >= 0
        let lp = LinearProgram::new(vec![q(-1), q(-1), q(0)], vec![vec![q(1), q(1), q(1)]], vec![q(10)])
            .unwrap()
            .with_bounds(vec![q(1), q(0), q(0)], vec![Some(q(2)), Some(q(3)), None])
            .unwrap();
        let s = simplex_solve(&lp).unwrap();
        assert_eq!(s.x, vec![q(2), q(3), q(5)]);
        assert_eq!(s.objective, q(-5));
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let lp = LinearProgram::new(
            vec![q(1), q(2)],
            vec![vec![q(1), q(1)], vec![q(2), q(2)]],
            vec![q(4), q(8)],
        )
        .unwrap();
        let s = simplex_solve(&lp).unwrap();
        assert_eq!(s.x, vec![q(4), q(0)]);
        assert_eq!(s.basis.len(), 1);
    }

    #[test]
    fn integrality_flags() {
        let half = LinearProgram::new(vec![q(1)], vec![vec![q(2)]], vec![q(1)]).unwrap();
        let s = simplex_solve(&half).unwrap();
        assert_eq!(s.x, vec![BigRational::new(BigInt::from(1), BigInt::from(2))]);
        assert!(!verify_vertex_integrality(&s, false, true));
        let zero = LinearProgram::new(vec![q(1)], vec![vec![q(1)]], vec![q(0)]).unwrap();
        assert!(verify_vertex_integrality(&simplex_solve(&zero).unwrap(), true, true));
    }

    #[test]
    fn validation() {
        assert!(LinearProgram::new(vec![q(1)], vec![vec![q(1), q(2)]], vec![q(0)]).is_err());
        assert!(LinearProgram::new(vec![q(1)], vec![vec![q(1)]], vec![])
            .is_err());
        let bad_bounds = LinearProgram::new(vec![q(1)], vec![], vec![])
            .unwrap()
            .with_bounds(vec![q(2)], vec![Some(q(1))]);
        assert!(bad_bounds.is_err());
    }

    #[test]
    fn text_dump() {
        let lp = LinearProgram::new(vec![q(1), q(0)], vec![vec![q(1), q(-1)]], vec![q(1)]).unwrap();
        assert_eq!(lp.to_text(), "min\n1/1 0/1\nst\n1/1 -1/1 = 1/1\nbounds\n0/1 inf\n0/1 inf\n");
    }
}
