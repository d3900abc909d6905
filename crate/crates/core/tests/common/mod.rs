//! Independent reference implementations used only by the tests: a
//! two-phase rational simplex and a Gauss-Legendre quadrature of the
//! normal density.

#![allow(dead_code)]

use num::{BigInt, One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use radlab::lp::{solve, LinearProgram, LpStatus, Relation};
use radlab::rational::{int, ratio};
use radlab::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplexOutcome {
    Optimal(Rational),
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v = &*v - &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis.iter().enumerate().map(|(i, &b)| &cost[b] * self.rhs(i)).sum()
    }

    /// Bland's rule; `false` on unboundedness.
    fn maximize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.width).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let reduced: Rational = &cost[j]
                    - self
                        .basis
                        .iter()
                        .enumerate()
                        .map(|(i, &b)| &cost[b] * &self.rows[i][j])
                        .sum::<Rational>();
                reduced.is_positive()
            });
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if a.is_positive() {
                    let ratio = self.rhs(i) / a;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

/// Solves `lp` by the textbook two-phase simplex on the standard form
/// (free variables split, slacks, artificials).
pub fn simplex(lp: &LinearProgram) -> SimplexOutcome {
    let n = lp.variable_count;
    // structural columns: x_j (or x_j+ and x_j-)
    let mut columns: Vec<(usize, i64)> = Vec::new();
    for j in 0..n {
        columns.push((j, 1));
        if !lp.nonneg[j] {
            columns.push((j, -1));
        }
    }
    let s = columns.len();
    let m = lp.constraints.len();
    let slack_count = lp.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
    let width = s + slack_count + m;
    let mut rows = Vec::new();
    let mut slack = s;
    for (i, c) in lp.constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); width + 1];
        for (k, (j, sign)) in columns.iter().enumerate() {
            row[k] = &c.coeffs[*j] * Rational::from_integer(BigInt::from(*sign));
        }
        match c.relation {
            Relation::Le => {
                row[slack] = Rational::one();
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -Rational::one();
                slack += 1;
            }
            Relation::Eq => {}
        }
        row[width] = c.rhs.clone();
        if row[width].is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[s + slack_count + i] = Rational::one();
        rows.push(row);
    }
    let artificial = |j: usize| j >= s + slack_count;
    let mut t = Tableau {
        rows,
        basis: (0..m).map(|i| s + slack_count + i).collect(),
        width,
    };
    let phase_one: Vec<Rational> = (0..width)
        .map(|j| if artificial(j) { -Rational::one() } else { Rational::zero() })
        .collect();
    t.maximize(&phase_one, &vec![true; width]);
    if t.objective(&phase_one).is_negative() {
        return SimplexOutcome::Infeasible;
    }
    // drive zero-level artificials out, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if artificial(t.basis[i]) {
            match (0..width).find(|&j| !artificial(j) && !t.rows[i][j].is_zero()) {
                Some(c) => t.pivot(i, c),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let cost: Vec<Rational> = (0..width)
        .map(|k| {
            if k < s {
                let (j, sign) = columns[k];
                &lp.objective[j] * Rational::from_integer(BigInt::from(sign))
            } else {
                Rational::zero()
            }
        })
        .collect();
    let allowed: Vec<bool> = (0..width).map(|j| !artificial(j)).collect();
    if !t.maximize(&cost, &allowed) {
        return SimplexOutcome::Unbounded;
    }
    SimplexOutcome::Optimal(t.objective(&cost))
}

fn legendre_nodes(order: usize) -> Vec<(f64, f64)> {
    (1..=order)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (order as f64 + 0.5)).cos();
            loop {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=order {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let dp = order as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    let w = 2.0 / ((1.0 - x * x) * dp * dp);
                    return (x, w);
                }
            }
        })
        .collect()
}

/// `P(N(0,1) >= x)` for `x >= 0` by composite 16-point Gauss-Legendre on
/// `[x, x + 40]`; absolute error is far below 1e-13.
pub fn normal_tail_quadrature(x: f64) -> f64 {
    let nodes = legendre_nodes(16);
    let panels = 800;
    let h = 40.0 / panels as f64;
    let density = |t: f64| (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut total = 0.0;
    for p in 0..panels {
        let mid = x + (p as f64 + 0.5) * h;
        let panel: f64 = nodes.iter().map(|(u, w)| w * density(mid + 0.5 * h * u)).sum();
        total += 0.5 * h * panel;
    }
    total
}

fn random_relation(rng: &mut ChaCha8Rng) -> Relation {
    match rng.gen_range(0..5) {
        0 => Relation::Eq,
        1 => Relation::Ge,
        _ => Relation::Le,
    }
}

/// Random LP with up to `max_vars` variables; `boxed` adds `|x_j| <= U_j`.
pub fn random_lp(rng: &mut ChaCha8Rng, max_vars: usize, boxed: bool) -> LinearProgram {
    let n = rng.gen_range(1..=max_vars);
    let mut lp = LinearProgram::maximize((0..n).map(|_| ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3))).collect());
    if boxed && n > 1 && rng.gen_bool(0.3) {
        lp.nonneg[rng.gen_range(0..n)] = false;
    }
    if boxed {
        for j in 0..n {
            let bound = int(rng.gen_range(1..=6));
            let mut row = vec![int(0); n];
            row[j] = int(1);
            lp.constrain(row.clone(), Relation::Le, bound.clone());
            if !lp.nonneg[j] {
                lp.constrain(row, Relation::Ge, -bound);
            }
        }
    }
    for _ in 0..rng.gen_range(1..=3) {
        let row = (0..n).map(|_| int(rng.gen_range(-4..=4))).collect();
        let relation = random_relation(rng);
        lp.constrain(row, relation, ratio(rng.gen_range(-8..=12), rng.gen_range(1..=2)));
    }
    lp
}


/// The library solver's answer in the oracle's vocabulary.
pub fn enumeration_outcome(lp: &LinearProgram) -> SimplexOutcome {
    let s = solve(lp).expect("valid program");
    match s.status {
        LpStatus::Optimal => SimplexOutcome::Optimal(s.optimal_value),
        LpStatus::Infeasible => SimplexOutcome::Infeasible,
        LpStatus::Unbounded => SimplexOutcome::Unbounded,
    }
}
