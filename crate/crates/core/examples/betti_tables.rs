// Minimal free resolutions and Betti tables: the Koszul complex, the twisted
// cubic and a module with a nontrivial presentation.

use fiberfull::resolve::depth_and_regularity;
use fiberfull::{betti_table, free_resolution, GradedRing, Rationals, Result, SubmodulePresentation};

fn show(name: &str, m: &SubmodulePresentation<Rationals>) -> Result<()> {
    let res = free_resolution(m, true)?;
    assert!(res.is_complex() && res.is_minimal());
    let b = betti_table(&res)?;
    let (depth, reg) = depth_and_regularity(&b, m.ring().num_vars()).expect("nonzero module");
    println!("{name}: ranks {:?}, depth {depth}, reg {reg}", res.ranks());
    println!("{b}");
    println!("{}\n", b.to_json());
    Ok(())
}

pub fn run_example() -> Result<()> {
    let k2 = GradedRing::named(&["x", "y"], &[1, 1], None, Rationals)?;
    show("k[x,y]/(x,y)", &SubmodulePresentation::parse_ideal(&k2, &["x", "y"])?)?;

    let p3 = GradedRing::named(&["x", "y", "z", "w"], &[1; 4], None, Rationals)?;
    let cubic = SubmodulePresentation::parse_ideal(&p3, &["x*z - y^2", "y*w - z^2", "x*w - y*z"])?;
    show("twisted cubic", &cubic)?;

    let ci = SubmodulePresentation::parse_ideal(&p3, &["x^2", "y^3", "z*w"])?;
    show("complete intersection (2,3,2)", &ci)?;
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
