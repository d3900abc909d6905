use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Largest variable count accepted after free variables are split.
pub const MAX_VARIABLES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        self.relation.holds(&self.lhs(x), &self.rhs)
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.lhs(x) == self.rhs
    }
}

/// `maximize objective . x` subject to the constraints and per-variable
/// sign restrictions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub nonneg: Vec<bool>,
    pub variable_count: usize,
}

impl LinearProgram {
    /// A program over non-negative variables with no constraints yet.
    pub fn maximize(objective: Vec<Rational>) -> Self {
        let n = objective.len();
        Self {
            objective,
            constraints: Vec::new(),
            nonneg: vec![true; n],
            variable_count: n,
        }
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.variable_count;
        if self.objective.len() != n || self.nonneg.len() != n {
            return Err(Error::InvalidParameters(
                "objective and sign flags must have variable_count entries".into(),
            ));
        }
        if let Some(i) = self.constraints.iter().position(|c| c.coeffs.len() != n) {
            return Err(Error::InvalidParameters(format!(
                "constraint {i} has the wrong number of coefficients"
            )));
        }
        let split = n + self.nonneg.iter().filter(|b| !**b).count();
        if split > MAX_VARIABLES {
            return Err(Error::DimensionTooLarge {
                n: split,
                limit: MAX_VARIABLES,
            });
        }
        Ok(())
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.variable_count
            && self.constraints.iter().all(|c| c.is_satisfied(x))
            && x.iter().zip(&self.nonneg).all(|(v, nn)| !nn || !v.is_negative())
    }

    /// Indices of tight constraints; index `constraints.len() + j` stands
    /// for the sign restriction of variable `j`.
    pub fn active_set(&self, x: &[Rational]) -> Vec<usize> {
        let m = self.constraints.len();
        let rows = self
            .constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_tight(x))
            .map(|(i, _)| i);
        let bounds = x
            .iter()
            .zip(&self.nonneg)
            .enumerate()
            .filter(|(_, (v, nn))| **nn && v.is_zero())
            .map(move |(j, _)| m + j);
        rows.chain(bounds).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPSolution {
    pub optimal_value: Rational,
    pub vertex: Vec<Rational>,
    pub active_set: Vec<usize>,
    pub status: LpStatus,
}

impl LPSolution {
    fn without_optimum(status: LpStatus) -> Self {
        Self {
            optimal_value: Rational::zero(),
            vertex: Vec::new(),
            active_set: Vec::new(),
            status,
        }
    }
}

/// Program in the split form used internally: every variable non-negative.
struct Pointed {
    objective: Vec<Rational>,
    rows: Vec<Constraint>,
}

impl Pointed {
    fn from_program(lp: &LinearProgram) -> (Self, Vec<(usize, Option<usize>)>) {
        // columns[j] = (positive part, negative part) of original variable j
        let mut columns = Vec::with_capacity(lp.variable_count);
        let mut next = lp.variable_count;
        for (j, nn) in lp.nonneg.iter().enumerate() {
            if *nn {
                columns.push((j, None));
            } else {
                columns.push((j, Some(next)));
                next += 1;
            }
        }
        let widen = |coeffs: &[Rational]| {
            let mut out = coeffs.to_vec();
            out.resize(next, Rational::zero());
            for (j, neg) in &columns {
                if let Some(k) = neg {
                    out[*k] = -coeffs[*j].clone();
                }
            }
            out
        };
        let rows = lp
            .constraints
            .iter()
            .map(|c| Constraint {
                coeffs: widen(&c.coeffs),
                relation: c.relation,
                rhs: c.rhs.clone(),
            })
            .collect();
        (
            Self {
                objective: widen(&lp.objective),
                rows,
            },
            columns,
        )
    }

    fn width(&self) -> usize {
        self.objective.len()
    }

    /// Every feasible basic solution: for each choice of tight explicit rows
    /// (always including a maximal independent set of the equalities) and of
    /// variables pinned to zero that together give a square nonsingular
    /// system. Dependent equalities are still enforced by the final
    /// feasibility test.
    fn vertices(&self) -> Vec<Vec<Rational>> {
        let n = self.width();
        let mut equalities: Vec<usize> = Vec::new();
        let mut kept: Vec<Vec<Rational>> = Vec::new();
        for i in (0..self.rows.len()).filter(|i| self.rows[*i].relation == Relation::Eq) {
            kept.push(self.rows[i].coeffs.clone());
            if rank(kept.clone()) == kept.len() {
                equalities.push(i);
            } else {
                kept.pop();
            }
        }
        let inequalities: Vec<usize> = (0..self.rows.len())
            .filter(|i| self.rows[*i].relation != Relation::Eq)
            .collect();
        let mut found = Vec::new();
        for extra in 0..=inequalities.len() {
            let k = equalities.len() + extra;
            if k > n {
                break;
            }
            for chosen in combinations(inequalities.len(), extra) {
                let tight: Vec<usize> = equalities
                    .iter()
                    .copied()
                    .chain(chosen.iter().map(|c| inequalities[*c]))
                    .collect();
                for free in combinations(n, k) {
                    if let Some(point) = self.solve_basis(&tight, &free) {
                        if self.feasible(&point) {
                            found.push(point);
                        }
                    }
                }
            }
        }
        found
    }

    fn solve_basis(&self, tight: &[usize], free: &[usize]) -> Option<Vec<Rational>> {
        let matrix: Vec<Vec<Rational>> = tight
            .iter()
            .map(|r| free.iter().map(|c| self.rows[*r].coeffs[*c].clone()).collect())
            .collect();
        let rhs: Vec<Rational> = tight.iter().map(|r| self.rows[*r].rhs.clone()).collect();
        let values = solve_square(matrix, rhs)?;
        let mut point = vec![Rational::zero(); self.width()];
        for (c, v) in free.iter().zip(values) {
            point[*c] = v;
        }
        Some(point)
    }

    fn feasible(&self, y: &[Rational]) -> bool {
        y.iter().all(|v| !v.is_negative()) && self.rows.iter().all(|r| r.is_satisfied(y))
    }

    fn value(&self, y: &[Rational]) -> Rational {
        self.objective.iter().zip(y).map(|(c, v)| c * v).sum()
    }

    /// Directions `d >= 0` with `sum d = 1` that keep every row satisfied
    /// when added to a feasible point.
    fn recession(&self) -> Pointed {
        let n = self.width();
        let mut rows: Vec<Constraint> = self
            .rows
            .iter()
            .map(|r| Constraint {
                coeffs: r.coeffs.clone(),
                relation: r.relation,
                rhs: Rational::zero(),
            })
            .collect();
        rows.push(Constraint {
            coeffs: vec![int(1); n],
            relation: Relation::Eq,
            rhs: int(1),
        });
        Pointed {
            objective: self.objective.clone(),
            rows,
        }
    }
}

/// Gaussian elimination; `None` when the system is singular.
fn solve_square(mut m: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|r| !m[*r][col].is_zero())?;
        m.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &m[col][col];
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for r in (0..n).rev() {
        let tail: Rational = (r + 1..n).map(|c| &m[r][c] * &x[c]).sum();
        x[r] = (&b[r] - tail) / &m[r][r];
    }
    Some(x)
}

fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|i| !m[*i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in c..cols {
                    let delta = &f * &m[r][k];
                    m[i][k] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Solves by exhaustive vertex enumeration. Ties in the optimal value go
/// to the lexicographically smallest vertex.
pub fn solve(lp: &LinearProgram) -> Result<LPSolution> {
    lp.validate()?;
    let (pointed, columns) = Pointed::from_program(lp);
    let vertices = pointed.vertices();
    if vertices.is_empty() {
        return Ok(LPSolution::without_optimum(LpStatus::Infeasible));
    }
    let recession = pointed.recession();
    if recession
        .vertices()
        .iter()
        .any(|d| recession.value(d).is_positive())
    {
        return Ok(LPSolution::without_optimum(LpStatus::Unbounded));
    }
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    for y in vertices {
        let x: Vec<Rational> = columns
            .iter()
            .map(|(j, neg)| match neg {
                Some(k) => &y[*j] - &y[*k],
                None => y[*j].clone(),
            })
            .collect();
        let value = lp.value(&x);
        let better = match &best {
            None => true,
            Some((v, bx)) => value > *v || (value == *v && x < *bx),
        };
        if better {
            best = Some((value, x));
        }
    }
    let (optimal_value, vertex) = best.expect("at least one vertex");
    Ok(LPSolution {
        active_set: lp.active_set(&vertex),
        optimal_value,
        vertex,
        status: LpStatus::Optimal,
    })
}

/// [`solve`], with infeasible and unbounded outcomes reported as errors.
pub fn solve_lp(lp: &LinearProgram) -> Result<LPSolution> {
    let solution = solve(lp)?;
    match solution.status {
        LpStatus::Optimal => Ok(solution),
        LpStatus::Infeasible => Err(Error::Infeasible),
        LpStatus::Unbounded => Err(Error::Unbounded),
    }
}
