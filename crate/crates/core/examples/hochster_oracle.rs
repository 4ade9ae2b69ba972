// Hochster's formula as an independent check of the duality computation
// for Stanley-Reisner rings.

use fiberfull::{hochster_hilbert, GradedRing, LocalCohomology, Rationals, Result, SubmodulePresentation};

pub fn run_example() -> Result<()> {
    let s = GradedRing::named(&["a", "b", "c", "d"], &[1; 4], None, Rationals)?;
    let complexes: [(&str, &[&str]); 4] = [
        ("4-cycle", &["a*c", "b*d"]),
        ("two skew edges", &["a*c", "a*d", "b*c", "b*d"]),
        ("triangle boundary and a point", &["a*b*c", "a*d", "b*d", "c*d"]),
        ("empty complex", &["a", "b", "c", "d"]),
    ];
    let window = (-6, 2);
    for (name, gens) in complexes {
        let i = SubmodulePresentation::parse_ideal(&s, gens)?;
        let lc = LocalCohomology::new(&i)?;
        for idx in 0..=4 {
            let dual = lc.table(idx, window)?;
            let oracle = hochster_hilbert(&i, idx, window)?;
            assert_eq!(dual, oracle);
            if !dual.is_zero() {
                println!("{name}, H^{idx}: {dual}");
            }
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
