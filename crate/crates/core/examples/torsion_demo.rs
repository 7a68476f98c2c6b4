//! Builds an example-family structure, checks that its six associated
//! Nijenhuis tensors vanish, and finds the structure-preserving connection
//! with totally skew-symmetric torsion.

use hypernij::instances::{example_g4, ExampleParams};
use hypernij::torsion::{solve_skew_torsion, Preserve, TorsionProblem};
use hypernij::Backend;

fn main() -> hypernij::Result<()> {
    let params = ExampleParams::from_ints([1, 2, 3, 4], Backend::Rational)?;
    let structure = example_g4(&params)?;
    assert!(structure.assoc_six()?.all_vanish());

    let result = solve_skew_torsion(&TorsionProblem {
        hn: structure,
        preserve: Preserve::all(),
    })?;
    assert!(result.status.exists());
    println!(
        "status: {} (family dimension {})",
        result.status.as_str(),
        result.family_dim
    );
    for row in &result.verification.unwrap().rows {
        println!("  {}: residual {}", row.label, row.max_abs);
    }
    Ok(())
}
