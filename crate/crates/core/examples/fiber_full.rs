// Deciding fiber-fullness over `k[t]` through torsion of the Ext modules.

use fiberfull::{fiber_full_check, parameter_torsion, GradedModulePresentation, GradedRing, Rationals, Result, SubmodulePresentation};
use num_rational::BigRational;

pub fn run_example() -> Result<()> {
    let r = GradedRing::named(&["x", "y", "z"], &[1, 1, 1], Some("t"), Rationals)?;
    let zero = BigRational::from_integer(0.into());

    let conic_family = SubmodulePresentation::parse_ideal(&r, &["x*z - t*y^2"])?;
    let report = fiber_full_check(&conic_family, &zero)?;
    println!("R/(xz - t y^2) fiber-full at (t): {}", report.overall);
    println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("json"));

    let rx = GradedRing::named(&["x"], &[1], Some("t"), Rationals)?;
    let torsion = SubmodulePresentation::parse_ideal(&rx, &["t*x"])?;
    let cert = parameter_torsion(&GradedModulePresentation::new(torsion.clone(), "M"))?;
    println!("k[t][x]/(t x): torsion generated by {:?}, annihilator {}", cert.torsion_generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(), cert.annihilator);
    println!("fiber-full at (t): {}", fiber_full_check(&torsion, &zero)?.overall);
    println!("fiber-full at (t - 1): {}", fiber_full_check(&torsion, &BigRational::from_integer(1.into()))?.overall);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
