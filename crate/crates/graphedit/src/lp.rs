//! A small dense two-phase simplex solver.
//!
//! Problem sizes in this crate are desk-scale, so a dense tableau is the
//! simplest robust choice. Pivoting uses Dantzig's rule and falls back to
//! Bland's rule after a run of degenerate pivots, which keeps the solver both
//! fast on easy instances and immune to cycling. Pivot choices depend only on
//! the tableau, so re-solving a model reproduces the result bit-for-bit.
//!
//! The relaxations solved here are massively degenerate (most right-hand
//! sides are 0), so a first attempt runs on right-hand sides lifted by tiny
//! distinct amounts. The tableau carries the true right-hand side as a second
//! column through the same pivots; the reported point is the basic solution
//! of the *unperturbed* model for the final basis. If that point is not
//! feasible and optimal within tolerance, the model is solved again without
//! perturbation, and that answer is authoritative.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Default feasibility/optimality tolerance.
pub const DEFAULT_TOL: f64 = 1e-7;

/// Pivot magnitudes below this are treated as zero.
const PIVOT_EPS: f64 = 1e-9;

/// Consecutive degenerate pivots before switching to Bland's rule.
const DEGENERATE_RUN: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub names: Vec<String>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub constraints: Vec<Constraint>,
    pub direction: Direction,
    pub objective: Vec<(usize, f64)>,
}

impl Default for LinearProgram {
    fn default() -> Self {
        Self::new()
    }
}

impl LinearProgram {
    pub fn new() -> Self {
        LinearProgram {
            names: Vec::new(),
            lower: Vec::new(),
            upper: Vec::new(),
            constraints: Vec::new(),
            direction: Direction::Minimize,
            objective: Vec::new(),
        }
    }

    pub fn variable_count(&self) -> usize {
        self.names.len()
    }

    /// Add a variable with bounds `lo <= x <= hi` (`hi` may be infinite).
    pub fn add_var(&mut self, name: impl Into<String>, lo: f64, hi: f64) -> usize {
        self.names.push(name.into());
        self.lower.push(lo);
        self.upper.push(hi);
        self.names.len() - 1
    }

    pub fn add_constraint(&mut self, coeffs: Vec<(usize, f64)>, relation: Relation, rhs: f64) {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn set_objective(&mut self, direction: Direction, coeffs: Vec<(usize, f64)>) {
        self.direction = direction;
        self.objective = coeffs;
    }

    fn validate(&self) -> Result<()> {
        let n = self.variable_count();
        for (j, (&lo, &hi)) in self.lower.iter().zip(&self.upper).enumerate() {
            if !lo.is_finite() {
                return Err(Error::Param(format!(
                    "variable {} needs a finite lower bound",
                    self.names[j]
                )));
            }
            if hi.is_nan() || hi < lo {
                return Err(Error::Param(format!(
                    "variable {} has empty bounds",
                    self.names[j]
                )));
            }
        }
        let check = |coeffs: &[(usize, f64)]| -> Result<()> {
            for &(j, a) in coeffs {
                if j >= n {
                    return Err(Error::Param(format!("variable index {j} out of range")));
                }
                if !a.is_finite() {
                    return Err(Error::Param("non-finite coefficient".into()));
                }
            }
            Ok(())
        };
        check(&self.objective)?;
        for c in &self.constraints {
            check(&c.coeffs)?;
            if !c.rhs.is_finite() {
                return Err(Error::Param("non-finite right-hand side".into()));
            }
        }
        Ok(())
    }

    /// Objective value of a point.
    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().map(|&(j, a)| a * x[j]).sum()
    }

    /// Largest absolute violation of any constraint or bound at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for (j, &v) in x.iter().enumerate() {
            worst = worst.max(self.lower[j] - v).max(v - self.upper[j]);
        }
        for c in &self.constraints {
            let lhs: f64 = c.coeffs.iter().map(|&(j, a)| a * x[j]).sum();
            let viol = match c.relation {
                Relation::Ge => c.rhs - lhs,
                Relation::Le => lhs - c.rhs,
                Relation::Eq => (lhs - c.rhs).abs(),
            };
            worst = worst.max(viol);
        }
        worst
    }

    /// Human-readable dump in CPLEX-LP style (`Minimize`/`Subject To`/`Bounds`/`End`).
    pub fn to_lp_text(&self) -> String {
        let term = |s: &mut String, coeffs: &[(usize, f64)]| {
            if coeffs.is_empty() {
                s.push_str(" 0");
            }
            for (k, &(j, a)) in coeffs.iter().enumerate() {
                let sign = if a < 0.0 {
                    "-"
                } else if k == 0 {
                    ""
                } else {
                    "+"
                };
                write!(s, " {sign} {} {}", a.abs(), self.names[j]).unwrap();
            }
        };
        let mut s = String::new();
        s.push_str(match self.direction {
            Direction::Minimize => "Minimize\n obj:",
            Direction::Maximize => "Maximize\n obj:",
        });
        term(&mut s, &self.objective);
        s.push_str("\nSubject To\n");
        for (i, c) in self.constraints.iter().enumerate() {
            write!(s, " c{i}:").unwrap();
            term(&mut s, &c.coeffs);
            let rel = match c.relation {
                Relation::Ge => ">=",
                Relation::Le => "<=",
                Relation::Eq => "=",
            };
            writeln!(s, " {rel} {}", c.rhs).unwrap();
        }
        s.push_str("Bounds\n");
        for j in 0..self.variable_count() {
            if self.upper[j].is_finite() {
                writeln!(
                    s,
                    " {} <= {} <= {}",
                    self.lower[j], self.names[j], self.upper[j]
                )
                .unwrap();
            } else {
                writeln!(s, " {} >= {}", self.names[j], self.lower[j]).unwrap();
            }
        }
        s.push_str("End\n");
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub values: Vec<f64>,
    pub objective: f64,
    pub pivots: usize,
}

/// Columns: structural + slack + artificial, then the working (possibly
/// perturbed) right-hand side, then the true right-hand side.
struct Tableau {
    rows: usize,
    cols: usize, // excluding both rhs columns
    data: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    #[inline]
    fn width(&self) -> usize {
        self.cols + 2
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.width() + j]
    }

    #[inline]
    fn rhs(&self, i: usize) -> f64 {
        self.data[i * self.width() + self.cols]
    }

    #[inline]
    fn true_rhs(&self, i: usize) -> f64 {
        self.data[i * self.width() + self.cols + 1]
    }

    fn pivot(&mut self, r: usize, c: usize, obj: &mut [f64]) {
        let w = self.width();
        let p = self.at(r, c);
        {
            let row = &mut self.data[r * w..(r + 1) * w];
            for v in row.iter_mut() {
                *v /= p;
            }
            row[c] = 1.0;
        }
        let prow: Vec<(usize, f64)> = self.data[r * w..(r + 1) * w]
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(j, v)| (j, *v))
            .collect();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.data[i * w + c];
            if f == 0.0 {
                continue;
            }
            let row = &mut self.data[i * w..(i + 1) * w];
            for &(j, v) in &prow {
                row[j] -= f * v;
            }
            row[c] = 0.0;
        }
        let f = obj[c];
        if f != 0.0 {
            for &(j, v) in &prow {
                obj[j] -= f * v;
            }
            obj[c] = 0.0;
        }
        self.basis[r] = c;
    }

    /// Minimise the reduced-cost row `obj` (last entry = −objective value).
    /// `allowed[j]` says whether column j may enter.
    fn optimise(
        &mut self,
        obj: &mut [f64],
        allowed: &[bool],
        pivots: &mut usize,
        cap: usize,
    ) -> Result<bool> {
        let mut degenerate_run = 0usize;
        loop {
            if *pivots >= cap {
                return Err(Error::Numerical(format!(
                    "no convergence after {cap} pivots"
                )));
            }
            let bland = degenerate_run >= DEGENERATE_RUN;
            // Ties in the ratio test: the largest pivot element for
            // stability, or the smallest basic index under Bland's rule.
            let mut enter = None;
            let mut best = -PIVOT_EPS;
            for j in 0..self.cols {
                if !allowed[j] || obj[j] >= -PIVOT_EPS {
                    continue;
                }
                if bland {
                    enter = Some(j);
                    break;
                }
                if obj[j] < best {
                    best = obj[j];
                    enter = Some(j);
                }
            }
            let Some(c) = enter else { return Ok(true) };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let a = self.at(i, c);
                if a > PIVOT_EPS {
                    let ratio = self.rhs(i).max(0.0) / a;
                    match leave {
                        None => leave = Some((i, ratio)),
                        Some((li, lr)) => {
                            let tie_break = if bland {
                                self.basis[i] < self.basis[li]
                            } else {
                                a > self.at(li, c)
                            };
                            let better = ratio < lr - 1e-12 || (ratio <= lr + 1e-12 && tie_break);
                            if better {
                                leave = Some((i, ratio));
                            }
                        }
                    }
                }
            }
            let Some((r, ratio)) = leave else {
                return Ok(false);
            };
            if ratio <= 1e-12 {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            self.pivot(r, c, obj);
            *pivots += 1;
        }
    }
}

/// Solve `lp`. Infeasible and unbounded models are reported through
/// [`LpSolution::status`]; a failure to converge or a final point that
/// violates the model by more than `tol` is an [`Error::Numerical`].
pub fn solve_lp(lp: &LinearProgram, tol: f64) -> Result<LpSolution> {
    lp.validate()?;
    match run_simplex(lp, tol, true) {
        Ok(sol) if sol.status == LpStatus::Optimal => Ok(sol),
        _ => run_simplex(lp, tol, false),
    }
}

/// Lift for row `i` in the perturbed attempt: distinct, tiny, deterministic.
fn perturbation(i: usize) -> f64 {
    1e-6 * (1.0 + ((i * 7919) % 1009) as f64 / 1009.0)
}

fn run_simplex(lp: &LinearProgram, tol: f64, perturb: bool) -> Result<LpSolution> {
    let n = lp.variable_count();

    // Rows over shifted variables x' = x - lo >= 0.
    let mut rows: Vec<(Vec<(usize, f64)>, Relation, f64)> = Vec::new();
    for c in &lp.constraints {
        let shift: f64 = c.coeffs.iter().map(|&(j, a)| a * lp.lower[j]).sum();
        let rhs = c.rhs - shift;
        match c.relation {
            Relation::Eq => {
                rows.push((c.coeffs.clone(), Relation::Le, rhs));
                rows.push((c.coeffs.clone(), Relation::Ge, rhs));
            }
            rel => rows.push((c.coeffs.clone(), rel, rhs)),
        }
    }
    for j in 0..n {
        if lp.upper[j].is_finite() {
            rows.push((vec![(j, 1.0)], Relation::Le, lp.upper[j] - lp.lower[j]));
        }
    }
    // Normalise to rhs >= 0.
    for row in rows.iter_mut() {
        if row.2 < 0.0 {
            for t in row.0.iter_mut() {
                t.1 = -t.1;
            }
            row.2 = -row.2;
            row.1 = match row.1 {
                Relation::Ge => Relation::Le,
                Relation::Le => Relation::Ge,
                Relation::Eq => Relation::Eq,
            };
        }
    }
    let m = rows.len();
    let n_art = rows.iter().filter(|r| r.1 == Relation::Ge).count();
    let cols = n + m + n_art;
    let w = cols + 2;
    let mut t = Tableau {
        rows: m,
        cols,
        data: vec![0.0; m * w],
        basis: vec![0; m],
    };
    let mut art_col = n + m;
    let mut is_art = vec![false; cols];
    for (i, (coeffs, rel, rhs)) in rows.iter().enumerate() {
        for &(j, a) in coeffs {
            t.data[i * w + j] += a;
        }
        let lift = if perturb { perturbation(i) } else { 0.0 };
        t.data[i * w + cols] = *rhs + lift;
        t.data[i * w + cols + 1] = *rhs;
        match rel {
            Relation::Le => {
                t.data[i * w + n + i] = 1.0;
                t.basis[i] = n + i;
            }
            _ => {
                t.data[i * w + n + i] = -1.0;
                t.data[i * w + art_col] = 1.0;
                t.basis[i] = art_col;
                is_art[art_col] = true;
                art_col += 1;
            }
        }
    }
    let cap = 50_000 + 50 * (m + cols);
    let mut pivots = 0usize;
    let rhs_scale = 1.0 + rows.iter().map(|r| r.2).fold(0.0, f64::max);

    // Phase 1: minimise the sum of artificials.
    if n_art > 0 {
        let mut obj = vec![0.0; w];
        for (j, o) in obj.iter_mut().enumerate().take(cols) {
            if is_art[j] {
                *o = 1.0;
            }
        }
        for i in 0..m {
            if is_art[t.basis[i]] {
                for j in 0..w {
                    obj[j] -= t.data[i * w + j];
                }
            }
        }
        let allowed = vec![true; cols];
        t.optimise(&mut obj, &allowed, &mut pivots, cap)?;
        let infeas = -obj[cols + 1];
        if infeas > tol * rhs_scale {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                values: vec![],
                objective: f64::NAN,
                pivots,
            });
        }
        // Drive remaining artificials out of the basis where possible.
        for i in 0..m {
            if is_art[t.basis[i]] {
                if let Some(c) = (0..n + m).find(|&j| t.at(i, j).abs() > PIVOT_EPS) {
                    let mut dummy = vec![0.0; w];
                    t.pivot(i, c, &mut dummy);
                    pivots += 1;
                }
            }
        }
    }

    // Phase 2.
    let sign = if lp.direction == Direction::Maximize {
        -1.0
    } else {
        1.0
    };
    let mut obj = vec![0.0; w];
    for &(j, a) in &lp.objective {
        obj[j] += sign * a;
    }
    for i in 0..m {
        let b = t.basis[i];
        let f = obj[b];
        if f != 0.0 {
            for j in 0..w {
                obj[j] -= f * t.data[i * w + j];
            }
        }
    }
    let allowed: Vec<bool> = (0..cols).map(|j| !is_art[j]).collect();
    let bounded = t.optimise(&mut obj, &allowed, &mut pivots, cap)?;
    if !bounded {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            values: vec![],
            objective: f64::NAN,
            pivots,
        });
    }

    // The basic solution of the true model for the final basis. Reduced
    // costs do not depend on the right-hand side, so if this point is
    // feasible it is optimal.
    let mut xs = vec![0.0; n];
    for i in 0..m {
        let b = t.basis[i];
        if b < n {
            xs[b] = t.true_rhs(i);
        } else if is_art[b] && t.true_rhs(i) > tol * rhs_scale {
            return Err(Error::Numerical(
                "an artificial variable stayed positive in the final basis".into(),
            ));
        }
    }
    let values: Vec<f64> = xs
        .iter()
        .zip(lp.lower.iter().zip(&lp.upper))
        .map(|(v, (lo, hi))| (v + lo).clamp(*lo, *hi))
        .collect();
    let scale = 1.0
        + lp.constraints
            .iter()
            .map(|c| c.rhs.abs())
            .fold(0.0, f64::max);
    let viol = lp.max_violation(&values);
    if viol > tol * scale {
        return Err(Error::Numerical(format!(
            "final point violates the model by {viol:e}"
        )));
    }
    let objective = lp.objective_value(&values);
    Ok(LpSolution {
        status: LpStatus::Optimal,
        values,
        objective,
        pivots,
    })
}
