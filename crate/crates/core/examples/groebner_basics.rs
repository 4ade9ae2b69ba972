// Reduced Gröbner bases, normal forms, initial ideals and syzygies of the
// twisted cubic.

use fiberfull::groebner::{initial_module, syzygies};
use fiberfull::{buchberger, GradedRing, Polynomial, Rationals, Result, SubmodulePresentation, TermOrder};

pub fn run_example() -> Result<()> {
    let s = GradedRing::named(&["x", "y", "z", "w"], &[1; 4], None, Rationals)?;
    let cubic = SubmodulePresentation::parse_ideal(&s, &["x*z - y^2", "y*w - z^2", "x*w - y*z"])?;

    for order in [TermOrder::Grevlex, TermOrder::Lex] {
        let g = buchberger(&cubic, &order);
        println!("{order}:");
        for e in g.elements() {
            println!("  {e}");
        }
        let lead: Vec<String> = initial_module(&g).generators().iter().map(|v| v.to_string()).collect();
        println!("  in(I) = ({})", lead.join(", "));
    }

    let g = buchberger(&cubic, &TermOrder::Grevlex);
    let f = cubic.ambient().vector(vec![Polynomial::parse(&s, "x^2*w^2 + y^3*z")?])?;
    println!("normal form of {f}: {}", g.normal_form(&f)?);

    let syz = syzygies(&g);
    let sources: Vec<String> = syz.sources().iter().map(|v| v.to_string()).collect();
    println!("syzygies on ({}):", sources.join(", "));
    for v in syz.presentation().generators() {
        println!("  {v}");
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
