//! A small language for stating sequence identities as text and checking
//! them exactly over integer grids.
//!
//! ```text
//! F[n-m]*F[n+m] = F[n]^(2) + (-1)^(n+m+1)*F[m]^(2)
//! ```
//!
//! Sequence names are `F L P Q J j` or the long ids (`pell-lucas`, ...);
//! others are declared first with `let H = (p, q, g0, g1)`. There is no
//! division: exponents may be negative, which covers the weight factors.

mod ast;
mod eval;
mod lexer;
mod parser;

pub use ast::{Declaration, Expr, IdentityAst};
pub use eval::{Env, Evaluator, Registry};
pub use parser::parse_identity;

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::kernel::window_for;
use crate::report::{Outcome, VerificationCase, VerificationReport};

/// Both sides of `ast` at one case.
pub fn evaluate_case(ev: &Evaluator<'_>, ast: &IdentityAst, case: &VerificationCase) -> Result<Outcome> {
    let mut env = Env::new(case.bindings());
    let lhs = ev.eval(&ast.lhs, &mut env)?;
    let rhs = ev.eval(&ast.rhs, &mut env)?;
    Ok(Outcome::checked(lhs, rhs))
}

/// Checks `ast` on every case of `grid`. The grid must bind exactly the
/// identity's free variables.
pub fn verify_over_grid(ast: &IdentityAst, grid: &GridSpec, registry: &Registry) -> Result<VerificationReport> {
    let vars: Vec<&str> = ast.free_vars.iter().map(String::as_str).collect();
    grid.require(&vars)?;
    if let Some(extra) = grid.vars().find(|v| !vars.contains(v)) {
        return Err(Error::Grid(format!(
            "variable {extra:?} does not occur in the identity"
        )));
    }
    let registry = registry.with_declarations(ast)?;
    let w = window_for(grid);
    let ev = Evaluator::with_window(&registry, ast, -w, w)?;
    let mut report = VerificationReport::new(ast.equation(), grid.to_string());
    for case in grid.cases()? {
        let outcome = evaluate_case(&ev, ast, &case)?;
        report.record(case, outcome);
    }
    Ok(report)
}

/// Parses and verifies in one step.
pub fn check_text(text: &str, grid: &GridSpec) -> Result<VerificationReport> {
    verify_over_grid(&parse_identity(text)?, grid, &Registry::default())
}
