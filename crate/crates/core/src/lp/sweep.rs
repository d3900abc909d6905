use std::io::Write;

use num::{One, ToPrimitive};
use rayon::prelude::*;

use super::programs::{grid_program, ProgramKind};
use super::solver::solve_lp;
use crate::constants::{BIG_LEADER_MIN, LP_CAP, MIDDLE_SPLIT, SMALL_TERM_MAX};
use crate::error::{Error, Result};
use crate::rational::{dec, decimal_string, fraction_string, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridPoint {
    pub first: Rational,
    pub second: Rational,
    pub optimal_value: Rational,
    pub vertex: Vec<Rational>,
}

impl GridPoint {
    pub fn params(&self) -> (Rational, Rational) {
        (self.first.clone(), self.second.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub kind: ProgramKind,
    pub step: Rational,
    pub margin: Rational,
    pub grid_points: Vec<GridPoint>,
    pub max_value: Rational,
    pub max_point: (Rational, Rational),
    pub threshold: Rational,
    pub all_below: bool,
}

/// `lo, lo + step, ...` up to and including `hi`.
fn axis(lo: &Rational, hi: &Rational, step: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut v = lo.clone();
    while &v <= hi {
        out.push(v.clone());
        v += step;
    }
    out
}

/// Grid of the seven-interval program: `0.25 <= a2' <= a1' <= 0.49`.
pub fn l_grid(step: &Rational) -> Vec<(Rational, Rational)> {
    let lo = dec(SMALL_TERM_MAX);
    let values = axis(&lo, &dec(MIDDLE_SPLIT), step);
    values
        .iter()
        .flat_map(|a1| {
            values
                .iter()
                .filter(move |a2| *a2 <= a1)
                .map(move |a2| (a1.clone(), a2.clone()))
        })
        .collect()
}

/// Grid of the five-interval program: `0.49 <= a1' <= 0.67`,
/// `0.25 <= aj' <= min(1 + step - a1', a1')`.
pub fn m_grid(step: &Rational) -> Vec<(Rational, Rational)> {
    let lo = dec(SMALL_TERM_MAX);
    axis(&dec(MIDDLE_SPLIT), &dec(BIG_LEADER_MIN), step)
        .into_iter()
        .flat_map(|a1| {
            let hi = (Rational::one() + step - &a1).min(a1.clone());
            axis(&lo, &hi, step)
                .into_iter()
                .map(move |aj| (a1.clone(), aj))
        })
        .collect()
}

fn sweep(kind: ProgramKind, grid: Vec<(Rational, Rational)>, step: &Rational, e: &Rational) -> Result<SweepReport> {
    if grid.is_empty() {
        return Err(Error::InvalidParameters("empty grid".into()));
    }
    let grid_points = grid
        .into_par_iter()
        .map(|(first, second)| {
            let solution = solve_lp(&grid_program(kind, &first, &second, e))?;
            Ok(GridPoint {
                first,
                second,
                optimal_value: solution.optimal_value,
                vertex: solution.vertex,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    // first maximum in grid order
    let best = grid_points
        .iter()
        .fold(&grid_points[0], |best, p| if p.optimal_value > best.optimal_value { p } else { best });
    let threshold = dec(LP_CAP);
    Ok(SweepReport {
        kind,
        step: step.clone(),
        margin: e.clone(),
        max_value: best.optimal_value.clone(),
        max_point: best.params(),
        all_below: best.optimal_value <= threshold,
        threshold,
        grid_points,
    })
}

/// Solves `L'` on every hundredth-grid point with margin `e`.
pub fn sweep_l_prime(e: &Rational) -> Result<SweepReport> {
    sweep_l_prime_on_grid(&dec("0.01"), e)
}

pub fn sweep_l_prime_on_grid(step: &Rational, e: &Rational) -> Result<SweepReport> {
    sweep(ProgramKind::L, l_grid(step), step, e)
}

/// Solves `M'` on every hundredth-grid point with margin `e`.
pub fn sweep_m_prime(e: &Rational) -> Result<SweepReport> {
    sweep_m_prime_on_grid(&dec("0.01"), e)
}

pub fn sweep_m_prime_on_grid(step: &Rational, e: &Rational) -> Result<SweepReport> {
    sweep(ProgramKind::M, m_grid(step), step, e)
}

impl SweepReport {
    /// One row per grid point: parameters, the optimum as an exact fraction
    /// and a 12-digit decimal, the maximizing vertex, and the threshold
    /// flag.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let io = |e: csv::Error| Error::InvalidParameters(format!("csv output failed: {e}"));
        let mut w = csv::Writer::from_writer(out);
        let second = match self.kind {
            ProgramKind::L => "a2p",
            ProgramKind::M => "ajp",
        };
        let width = self.grid_points[0].vertex.len();
        let mut header = vec!["a1p".to_string(), second.to_string()];
        header.push("optimal_value".into());
        header.push("optimal_decimal".into());
        header.extend((1..=width).map(|k| format!("x{k}")));
        header.push("below_threshold".into());
        w.write_record(&header).map_err(io)?;
        for p in &self.grid_points {
            let mut row = vec![
                decimal_string(&p.first, 2),
                decimal_string(&p.second, 2),
                fraction_string(&p.optimal_value),
                decimal_string(&p.optimal_value, 12),
            ];
            row.extend(p.vertex.iter().map(fraction_string));
            row.push((p.optimal_value <= self.threshold).to_string());
            w.write_record(&row).map_err(io)?;
        }
        w.flush()
            .map_err(|e| Error::InvalidParameters(format!("csv output failed: {e}")))?;
        Ok(())
    }

    pub fn max_value_f64(&self) -> f64 {
        self.max_value.to_f64().unwrap_or(f64::NAN)
    }
}
