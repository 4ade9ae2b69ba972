//! End-to-end acceptance checks. Each criterion prints one PASS or FAIL line.

use std::path::{Path, PathBuf};

use fiberfull::cli::{main_with_args, parse_input};
use fiberfull::ext::GradedModulePresentation;
use fiberfull::groebner::{homogenize_omega, initial_module, kernel, submodule_equal};
use fiberfull::resolve::depth_and_regularity;
use fiberfull::{
    betti_table, buchberger, cv_verify, fiber_full_check, fiber_full_locus, fiber_hilbert_compare, free_resolution,
    hochster_hilbert, local_cohomology_hilbert, FiberPoints, GradedFreeModule, GradedRing, HilbertTable, LocalCohomology,
    Polynomial, Rationals, SubmodulePresentation, TermOrder,
};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn ring(names: &[&str]) -> GradedRing<Rationals> {
    GradedRing::named(names, &vec![1; names.len()], None, Rationals).unwrap()
}

fn ideal(names: &[&str], gens: &[&str]) -> SubmodulePresentation<Rationals> {
    SubmodulePresentation::parse_ideal(&ring(names), gens).unwrap()
}

const ABCD: [&str; 4] = ["a", "b", "c", "d"];

/// Twenty square-free monomial ideals on at most four variables.
fn squarefree_suite() -> Vec<SubmodulePresentation<Rationals>> {
    let two: [&[&str]; 3] = [&["a*b"], &["a"], &["a", "b"]];
    let three: [&[&str]; 5] = [&["a*b*c"], &["a*b", "b*c"], &["a*b", "a*c", "b*c"], &["a", "b*c"], &["a*b", "c"]];
    let four: [&[&str]; 12] = [
        &["a*c", "b*d"],
        &["a*b", "b*c", "c*d"],
        &["a*b", "b*c", "c*d", "a*d"],
        &["a*c", "a*d", "b*c", "b*d"],
        &["a*b*c", "a*b*d", "a*c*d", "b*c*d"],
        &["a*b*c", "a*d", "b*d", "c*d"],
        &["a*b", "a*c", "a*d", "b*c", "b*d", "c*d"],
        &["a*b*c*d"],
        &["a", "b", "c", "d"],
        &["a*b", "c*d"],
        &["a*b*c", "b*c*d"],
        &["a*d", "b*c*d"],
    ];
    let mut out = Vec::new();
    out.extend(two.iter().map(|g| ideal(&ABCD[..2], g)));
    out.extend(three.iter().map(|g| ideal(&ABCD[..3], g)));
    out.extend(four.iter().map(|g| ideal(&ABCD, g)));
    out
}

fn conic() -> SubmodulePresentation<Rationals> {
    ideal(&["x", "y", "z"], &["x*z - y^2"])
}

fn minors() -> SubmodulePresentation<Rationals> {
    ideal(&["a", "b", "c", "d", "e", "f"], &["a*e - b*d", "a*f - c*d", "b*f - c*e"])
}

fn twisted_cubic() -> SubmodulePresentation<Rationals> {
    ideal(&["x", "y", "z", "w"], &["x*z - y^2", "y*w - z^2", "x*w - y*z"])
}

fn describe(i: &SubmodulePresentation<Rationals>) -> String {
    let g: Vec<String> = i.generators().iter().map(|g| g.to_string()).collect();
    format!("({}) in {} variables", g.join(", "), i.ring().num_vars())
}

fn polynomial_ring_local_cohomology() -> Outcome {
    let s = ideal(&["x", "y", "z"], &[]);
    for i in 0..=3 {
        let h = local_cohomology_hilbert(&s, i, (-6, 0)).map_err(|e| e.to_string())?;
        let expected = if i == 3 {
            HilbertTable::new((-6, 0), |nu| match nu {
                -3 => 1,
                -4 => 3,
                -5 => 6,
                -6 => 10,
                _ => 0,
            })
        } else {
            HilbertTable::zero((-6, 0))
        };
        ensure(h == expected, || format!("H^{i}(S) = {h}"))?;
    }
    Ok(())
}

fn duality_matches_hochster() -> Outcome {
    for i in squarefree_suite() {
        let lc = LocalCohomology::new(&i).map_err(|e| e.to_string())?;
        for idx in 0..=4 {
            let dual = lc.table(idx, (-8, 2)).map_err(|e| e.to_string())?;
            let oracle = hochster_hilbert(&i, idx, (-8, 2)).map_err(|e| e.to_string())?;
            ensure(dual == oracle, || format!("{} H^{idx}: duality {dual}, Hochster {oracle}", describe(&i)))?;
        }
    }
    Ok(())
}

fn macaulay_consistency() -> Outcome {
    let mut ideals = squarefree_suite();
    ideals.extend([conic(), twisted_cubic(), minors()]);
    for i in ideals {
        for order in [TermOrder::Grevlex, TermOrder::Lex] {
            let init = initial_module(&buchberger(&i, &order));
            let a = GradedModulePresentation::new(i.clone(), "S/I").hilbert_function((0, 10));
            let b = GradedModulePresentation::new(init, "S/in(I)").hilbert_function((0, 10));
            let (a, b) = (a.map_err(|e| e.to_string())?, b.map_err(|e| e.to_string())?);
            ensure(a == b, || format!("{} under {order}: {a} vs {b}", describe(&i)))?;
        }
    }
    Ok(())
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn resolution_properties() -> Outcome {
    let mut cases = squarefree_suite();
    cases.extend([conic(), twisted_cubic(), minors(), ideal(&["x", "y", "z"], &["x^2", "y^3", "x*y*z"])]);
    for m in &cases {
        let res = free_resolution(m, true).map_err(|e| e.to_string())?;
        ensure(res.is_complex(), || format!("d^2 != 0 for {}", describe(m)))?;
        ensure(res.is_minimal(), || format!("unit entry in resolution of {}", describe(m)))?;
        ensure(res.is_exact_on((0, 8)).map_err(|e| e.to_string())?, || format!("not exact for {}", describe(m)))?;
    }

    let koszul = betti_table(&free_resolution(&ideal(&["x", "y"], &["x", "y"]), true).unwrap()).unwrap();
    ensure(koszul.totals() == vec![1, 2, 1], || format!("Koszul totals {:?}", koszul.totals()))?;

    let cubic = twisted_cubic();
    let b = betti_table(&free_resolution(&cubic, true).unwrap()).unwrap();
    let dr = depth_and_regularity(&b, 4);
    ensure(b.totals() == vec![1, 3, 2], || format!("twisted cubic totals {:?}", b.totals()))?;
    ensure(dr == Some((2, 1)), || format!("twisted cubic depth and reg {dr:?}"))?;
    ensure(b.get(1, 1) == 3 && b.get(2, 1) == 2, || format!("twisted cubic table\n{b}"))?;

    let text = std::fs::read_to_string(fixture("twisted_cubic_syzygies.ff")).map_err(|e| e.to_string())?;
    let hand = parse_input(&text).map_err(|e| e.to_string())?;
    let hand = hand.build(Rationals).map_err(|e| e.to_string())?;
    let syz = kernel(cubic.ambient(), cubic.generators()).map_err(|e| e.to_string())?;
    ensure(submodule_equal(&syz, &hand).map_err(|e| e.to_string())?, || "hand syzygies differ".into())?;
    let second = kernel(hand.ambient(), hand.generators()).map_err(|e| e.to_string())?;
    ensure(second.nonzero_generators().count() == 0, || "hand syzygies are dependent".into())?;
    Ok(())
}

fn diagonal_order_minors() -> TermOrder {
    TermOrder::Lex
}

fn degeneration_instances() -> Vec<(String, SubmodulePresentation<Rationals>, TermOrder)> {
    let mut out = vec![
        ("(xz - y^2) under lex".to_string(), conic(), TermOrder::Lex),
        ("2x2 minors of a generic 2x3 matrix".to_string(), minors(), diagonal_order_minors()),
    ];
    out.extend(squarefree_suite().into_iter().map(|i| (describe(&i), i, TermOrder::Grevlex)));
    out
}

fn degeneration_equalities() -> Outcome {
    for (name, i, order) in degeneration_instances() {
        let rep = cv_verify(&i, &order, (-10, 5)).map_err(|e| format!("{name}: {e}"))?;
        ensure(rep.squarefree, || format!("{name}: initial ideal is not square-free"))?;
        ensure(rep.equal, || format!("{name}: tables differ"))?;
        for (a, b) in rep.generic.tables.iter().zip(&rep.special.tables) {
            ensure(a.dims() == b.dims(), || format!("{name}: {a} vs {b}"))?;
        }
        ensure(rep.extremal_equal(), || format!("{name}: extremal Betti numbers differ"))?;
        ensure(rep.depth_reg_equal(), || format!("{name}: depth or regularity differ"))?;
    }
    Ok(())
}

fn fiber_full_coherence() -> Outcome {
    for (name, i, order) in degeneration_instances() {
        let omega = fiberfull::weight_vector_for(&i, &order).map_err(|e| e.to_string())?;
        let hom = homogenize_omega(&i, &omega, &order).map_err(|e| e.to_string())?;
        let rep = fiber_full_check(&hom.family, &q(0)).map_err(|e| e.to_string())?;
        ensure(rep.overall, || format!("{name}: R/J not fiber-full at (t)"))?;
        ensure(rep.all_torsion_free(), || format!("{name}: some g_i != 1"))?;
    }
    let r = GradedRing::named(&["x"], &[1], Some("t"), Rationals).unwrap();
    let m = SubmodulePresentation::parse_ideal(&r, &["t*x"]).unwrap();
    ensure(!fiber_full_check(&m, &q(0)).unwrap().overall, || "k[t][x]/(tx) fiber-full at (t)".into())?;
    ensure(fiber_full_check(&m, &q(1)).unwrap().overall, || "k[t][x]/(tx) not fiber-full at (t-1)".into())?;
    let g = fiber_full_locus(&m).unwrap();
    ensure(g == Polynomial::parse(&r, "t").unwrap(), || format!("locus g = {g}"))
}

fn locally_constant_fibers() -> Outcome {
    let omega = fiberfull::weight_vector_for(&conic(), &TermOrder::Lex).map_err(|e| e.to_string())?;
    let hom = homogenize_omega(&conic(), &omega, &TermOrder::Lex).map_err(|e| e.to_string())?;
    let points = FiberPoints::List(vec![q(0), q(1), q(2), q(5)]);
    for i in 0..=3 {
        let tables = fiber_hilbert_compare(&hom.family, &points, i, (-10, 5)).map_err(|e| e.to_string())?;
        ensure(tables.windows(2).all(|w| w[0] == w[1]), || format!("H^{i} varies: {tables:?}"))?;
    }
    Ok(())
}

/// `M = ⊕_j R/(p_j m_j, n_j)` over `k[t][x, y]` with `m_j` a power of `x`
/// and `n_j` absent or a power of `y`.
fn planted_module(rng: &mut ChaCha8Rng) -> (SubmodulePresentation<Rationals>, Vec<Polynomial<Rationals>>) {
    let r = GradedRing::named(&["x", "y"], &[1, 1], Some("t"), Rationals).unwrap();
    let rank = rng.gen_range(1..=2);
    let twists: Vec<i64> = (0..rank).map(|_| rng.gen_range(0..=1)).collect();
    let f = GradedFreeModule::new(&r, twists);
    let mut relations = Vec::new();
    let mut planted = Vec::new();
    for j in 0..rank {
        let factors = rng.gen_range(1..=2);
        let p = (0..factors).fold(Polynomial::one(&r), |acc, _| {
            let root = rng.gen_range(-2..=3);
            &acc * &Polynomial::parse(&r, &format!("t - ({root})")).unwrap()
        });
        let m = Polynomial::parse(&r, &format!("x^{}", rng.gen_range(1..=2))).unwrap();
        let mut comps = vec![Polynomial::zero(&r); rank];
        comps[j] = &p * &m;
        relations.push(f.vector(comps).unwrap());
        if rng.gen_bool(0.5) {
            let mut comps = vec![Polynomial::zero(&r); rank];
            comps[j] = Polynomial::parse(&r, &format!("y^{}", rng.gen_range(1..=2))).unwrap();
            relations.push(f.vector(comps).unwrap());
        }
        planted.push(p);
    }
    (SubmodulePresentation::new(&f, relations).unwrap(), planted)
}

fn planted_torsion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for k in 0..10 {
        let (m, planted) = planted_module(&mut rng);
        let lcm = planted.iter().skip(1).fold(planted[0].clone(), |acc, p| {
            fiberfull::poly::parameter_lcm(&acc, p).unwrap()
        });
        let lcm = fiberfull::poly::monic_in_parameter(&lcm);
        let g = fiber_full_locus(&m).map_err(|e| e.to_string())?;
        ensure(g == lcm, || format!("module {k}: locus {g}, planted lcm {lcm}"))?;
        let analysis = fiberfull::fiberfull::FiberFullAnalysis::new(&m).map_err(|e| e.to_string())?;
        for c in -3..=4 {
            let vanishes = planted.iter().any(|p| p.evaluate_parameter(&q(c)).unwrap() == q(0));
            let full = analysis.report_at(&q(c)).overall;
            ensure(full != vanishes, || format!("module {k} at t = {c}: fiber-full {full}"))?;
        }
    }
    Ok(())
}

fn cli(args: &[&str]) -> fiberfull::cli::Outcome {
    main_with_args(std::iter::once("fiberfull").chain(args.iter().copied()))
}

fn determinism_and_round_trip() -> Outcome {
    let dir = fixture("");
    let mut names: Vec<String> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".ff"))
        .collect();
    names.sort();
    ensure(names.len() >= 10, || format!("only {} fixtures", names.len()))?;
    let scratch = std::env::temp_dir().join(format!("fiberfull-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&scratch).map_err(|e| e.to_string())?;
    for name in &names {
        let text = std::fs::read_to_string(dir.join(name)).map_err(|e| e.to_string())?;
        let spec = parse_input(&text).map_err(|e| format!("{name}: {e}"))?;
        let printed = spec.to_string();
        let again = parse_input(&printed).map_err(|e| format!("{name} reprinted: {e}"))?;
        ensure(again == spec, || format!("{name}: round trip changed the problem"))?;
        ensure(again.to_string() == printed, || format!("{name}: printing is not stable"))?;
        let Some(command) = spec.command.as_deref() else { continue };
        let path = dir.join(name);
        let path = path.to_str().expect("utf-8 path");
        let mut reports = Vec::new();
        for run in 0..2 {
            let out = scratch.join(format!("{name}.{run}.json"));
            let out = out.to_str().expect("utf-8 path");
            let res = cli(&[command, path, "--json-out", out]);
            ensure(res.code == 0, || format!("{name}: exit {} {}", res.code, res.stderr))?;
            reports.push(std::fs::read(out).map_err(|e| e.to_string())?);
        }
        ensure(reports[0] == reports[1], || format!("{name}: reports differ between runs"))?;
    }
    std::fs::remove_dir_all(&scratch).ok();
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("polynomial ring local cohomology", polynomial_ring_local_cohomology),
        ("duality agrees with Hochster's formula", duality_matches_hochster),
        ("Hilbert functions of S/I and S/in(I) agree", macaulay_consistency),
        ("resolution properties and hand Schreyer fixture", resolution_properties),
        ("square-free degeneration preserves local cohomology", degeneration_equalities),
        ("fiber-full criterion coherence", fiber_full_coherence),
        ("fiberwise local cohomology is locally constant", locally_constant_fibers),
        ("planted torsion locus", planted_torsion),
        ("determinism and parser round trip", determinism_and_round_trip),
    ];
    let mut failures = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {}: PASS {name}", k + 1),
            Err(why) => {
                println!("criterion {}: FAIL {name}: {why}", k + 1);
                failures.push(k + 1);
            }
        }
    }
    if !failures.is_empty() {
        eprintln!("failing criteria: {failures:?}");
        std::process::exit(1);
    }
}
