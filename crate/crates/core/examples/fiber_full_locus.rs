// The fiber-full locus `D(g)` and fiberwise local cohomology.

use fiberfull::{fiber_full_locus, fiber_hilbert_compare, FiberPoints, GradedFreeModule, GradedRing, Polynomial, Rationals, Result, SubmodulePresentation};
use num_rational::BigRational;

pub fn run_example() -> Result<()> {
    let r = GradedRing::named(&["x", "y"], &[1, 1], Some("t"), Rationals)?;
    let f = GradedFreeModule::new(&r, vec![0, 1]);
    let p = |s: &str| Polynomial::parse(&r, s);
    let relations = vec![
        f.vector(vec![p("(t^2 - 1)*x")?, p("0")?])?,
        f.vector(vec![p("y^2")?, p("t*x")?])?,
        f.vector(vec![p("0")?, p("(t - 3)*y")?])?,
    ];
    let m = SubmodulePresentation::new(&f, relations)?;
    let g = fiber_full_locus(&m)?;
    println!("fiber-full locus D(g), g = {g}");

    let points: Vec<BigRational> = [0, 1, 2, 3].into_iter().map(|c: i64| BigRational::from_integer(c.into())).collect();
    for i in 0..=2 {
        let tables = fiber_hilbert_compare(&m, &FiberPoints::List(points.clone()), i, (-3, 3))?;
        for (c, h) in points.iter().zip(&tables) {
            println!("H^{i} at t = {c}: {h}");
        }
    }
    let generic = fiber_hilbert_compare(&m, &FiberPoints::Generic, 0, (-3, 3))?;
    println!("H^0 at the generic point: {}", generic[0]);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
