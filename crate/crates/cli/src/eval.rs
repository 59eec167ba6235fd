//! `eval`: exact values at one chart point.

use grassmin_core::pointwise::invariants_at;

use crate::args::EvalArgs;
use crate::{geometry_error, load_script, CliError, Exit};

pub fn run(a: &EvalArgs) -> Result<Exit, CliError> {
    let spec = load_script(&a.file, a.theta.as_ref())?;
    let v = invariants_at(&spec.bundle, &a.at).map_err(|e| geometry_error(&a.file, e))?;
    print!("z = {}\nlambda2 = {}\nK = {}\nB2 = {}\n", v.point, v.lambda2, v.k, v.b2);
    Ok(Exit::Success)
}
