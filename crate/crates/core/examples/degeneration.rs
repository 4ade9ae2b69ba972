// Square-free Gröbner degeneration of the 2x2 minors of a generic 2x3 matrix:
// the local cohomology tables, extremal Betti numbers, depth and regularity
// of `S/I` and `S/in(I)` coincide.

use fiberfull::{cv_verify, GradedRing, Rationals, Result, SubmodulePresentation, TermOrder};

pub fn run_example() -> Result<()> {
    let s = GradedRing::named(&["a", "b", "c", "d", "e", "f"], &[1; 6], None, Rationals)?;
    let minors = SubmodulePresentation::parse_ideal(&s, &["a*e - b*d", "a*f - c*d", "b*f - c*e"])?;
    let report = cv_verify(&minors, &TermOrder::Lex, (-10, 5))?;

    let gens: Vec<String> = report.initial.generators().iter().map(|g| g.to_string()).collect();
    println!("in(I) = ({})", gens.join(", "));
    println!("square-free: {}", report.squarefree);
    println!("omega: {:?}", report.omega);
    println!("fiber-full at (t): {}", report.fiber_full.overall);
    println!("tables equal: {}", report.equal);
    println!("extremal Betti numbers: {:?}", report.generic.extremal);
    println!("depth {:?}, regularity {:?}", report.generic.depth, report.generic.regularity);
    for (i, table) in report.generic.tables.iter().enumerate() {
        if !table.is_zero() {
            println!("H^{i}: {table}");
        }
    }
    assert!(report.equal && report.extremal_equal() && report.depth_reg_equal());
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
