//! Exact linear programs bounding the exceedance probability, and the
//! finite grid sweeps that certify them.

mod programs;
mod solver;
mod sweep;

pub use programs::{
    build_l, build_l_prime, build_l_prime_on_grid, build_m, build_m_prime, build_m_prime_on_grid,
    check_rounding_domination, clamp_g, in_l_range, solve_grid_program, DominationReport,
    ProgramKind,
};
pub use solver::{
    solve, solve_lp, Constraint, LPSolution, LinearProgram, LpStatus, Relation, MAX_VARIABLES,
};
pub use sweep::{
    l_grid, m_grid, sweep_l_prime, sweep_l_prime_on_grid, sweep_m_prime, sweep_m_prime_on_grid,
    GridPoint, SweepReport,
};
