// Hilbert functions of graded local cohomology through local duality.

use fiberfull::{local_cohomology_hilbert, GradedRing, LocalCohomology, Rationals, Result, SubmodulePresentation};

pub fn run_example() -> Result<()> {
    let s = GradedRing::named(&["x", "y", "z"], &[1, 1, 1], None, Rationals)?;
    let polynomial_ring = SubmodulePresentation::parse_ideal(&s, &[])?;
    for i in 0..=3 {
        println!("H^{i}(S) = {}", local_cohomology_hilbert(&polynomial_ring, i, (-6, 0))?);
    }

    let weighted = GradedRing::named(&["x", "y"], &[1, 2], None, Rationals)?;
    let line = SubmodulePresentation::parse_ideal(&weighted, &[])?;
    println!("H^2(k[x,y]) with deg y = 2: {}", local_cohomology_hilbert(&line, 2, (-8, 0))?);

    let p3 = GradedRing::named(&["x", "y", "z", "w"], &[1; 4], None, Rationals)?;
    let lines = SubmodulePresentation::parse_ideal(&p3, &["x*z", "x*w", "y*z", "y*w"])?;
    let lc = LocalCohomology::new(&lines)?;
    for (i, table) in lc.all_tables((-4, 2))?.iter().enumerate() {
        println!("two skew lines, H^{i}: {table}");
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
