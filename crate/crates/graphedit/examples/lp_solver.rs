//! The bundled dense simplex on a small production-planning LP.
//!
//! `cargo run --example lp_solver`

use graphedit::lp::{solve_lp, Direction, LinearProgram, Relation};

fn main() -> graphedit::Result<()> {
    let mut lp = LinearProgram::new();
    let chairs = lp.add_var("chairs", 0.0, f64::INFINITY);
    let tables = lp.add_var("tables", 0.0, 40.0);
    lp.add_constraint(vec![(chairs, 1.0), (tables, 3.0)], Relation::Le, 150.0); // wood
    lp.add_constraint(vec![(chairs, 2.0), (tables, 1.0)], Relation::Le, 120.0); // labour
    lp.add_constraint(vec![(chairs, 1.0)], Relation::Ge, 10.0);
    lp.set_objective(Direction::Maximize, vec![(chairs, 30.0), (tables, 50.0)]);
    print!("{}", lp.to_lp_text());

    let sol = solve_lp(&lp, 1e-7)?;
    println!(
        "{:?} after {} pivots: {:.2} chairs, {:.2} tables, profit {:.2}",
        sol.status, sol.pivots, sol.values[chairs], sol.values[tables], sol.objective
    );
    Ok(())
}
