use fiberfull::groebner::{initial_module, submodule_equal};
use fiberfull::linalg::monomials_of_degree;
use fiberfull::poly::{monic_in_parameter, parameter_lcm};
use fiberfull::{
    buchberger, fiber_full_locus, free_resolution, hochster_hilbert, Field, GradedModulePresentation, GradedRing,
    LocalCohomology, Monomial, Polynomial, PrimeField, Rationals, SubmodulePresentation, TermOrder,
};
use proptest::prelude::*;

fn qq3() -> GradedRing<Rationals> {
    GradedRing::named(&["x", "y", "z"], &[1, 1, 1], None, Rationals).unwrap()
}

/// Homogeneous polynomial of degree `d` from chosen monomial indices and coefficients.
fn homogeneous(ring: &GradedRing<Rationals>, d: i64, picks: &[(usize, i64)]) -> Polynomial<Rationals> {
    let mons = monomials_of_degree(ring, d);
    let f = ring.field();
    Polynomial::from_terms(ring, picks.iter().map(|&(k, c)| (mons[k % mons.len()].clone(), f.from_i64(c))))
}

fn generators() -> impl Strategy<Value = Vec<(i64, Vec<(usize, i64)>)>> {
    prop::collection::vec((1i64..=3, prop::collection::vec((0usize..10, -3i64..=3), 1..=3)), 1..=3)
}

fn ideal_from(ring: &GradedRing<Rationals>, spec: &[(i64, Vec<(usize, i64)>)]) -> SubmodulePresentation<Rationals> {
    let gens = spec.iter().map(|(d, p)| homogeneous(ring, *d, p)).collect();
    SubmodulePresentation::ideal(ring, gens).unwrap()
}

/// Square-free monomial ideal on four variables from support masks.
fn squarefree(masks: &[u8]) -> SubmodulePresentation<Rationals> {
    let r = GradedRing::named(&["a", "b", "c", "d"], &[1; 4], None, Rationals).unwrap();
    let gens = masks
        .iter()
        .map(|&m| {
            let e: Vec<u32> = (0..4).map(|v| u32::from(m >> v & 1)).collect();
            Polynomial::term(&r, Monomial::from_exponents(&e), Rationals.one())
        })
        .collect();
    SubmodulePresentation::ideal(&r, gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduced_basis_is_unique(spec in generators(), scale in 1i64..=5, order in prop::sample::select(vec![TermOrder::Grevlex, TermOrder::Lex])) {
        let r = qq3();
        let i = ideal_from(&r, &spec);
        let mut shuffled: Vec<_> = i.generators().iter().rev().map(|g| g.component(0).scale(&r.field().from_i64(scale))).collect();
        let k = 1.min(shuffled.len());
        shuffled.rotate_left(k);
        let j = SubmodulePresentation::ideal(&r, shuffled).unwrap();
        let (gi, gj) = (buchberger(&i, &order), buchberger(&j, &order));
        prop_assert_eq!(gi.elements(), gj.elements());
        prop_assert!(gi.s_vectors_reduce_to_zero());
        for g in i.generators() {
            prop_assert!(gi.contains(g).unwrap());
        }
    }

    #[test]
    fn hilbert_function_of_initial_ideal(spec in generators()) {
        let r = qq3();
        let i = ideal_from(&r, &spec);
        for order in [TermOrder::Grevlex, TermOrder::Lex] {
            let init = initial_module(&buchberger(&i, &order));
            let a = GradedModulePresentation::new(i.clone(), "S/I").hilbert_function((0, 6)).unwrap();
            let b = GradedModulePresentation::new(init, "S/in").hilbert_function((0, 6)).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn resolutions_are_minimal_exact_complexes(spec in generators()) {
        let i = ideal_from(&qq3(), &spec);
        let res = free_resolution(&i, true).unwrap();
        prop_assert!(res.is_complex());
        prop_assert!(res.is_minimal());
        prop_assert!(res.is_exact_on((0, 7)).unwrap());
        prop_assert!(res.length().unwrap_or(0) <= 3);
    }

    #[test]
    fn duality_agrees_with_hochster(masks in prop::collection::vec(1u8..16, 0..=4)) {
        let i = squarefree(&masks);
        let lc = LocalCohomology::new(&i).unwrap();
        for idx in 0..=4 {
            prop_assert_eq!(lc.table(idx, (-6, 1)).unwrap(), hochster_hilbert(&i, idx, (-6, 1)).unwrap());
        }
    }

    #[test]
    fn printing_round_trips(spec in generators()) {
        let r = qq3();
        for g in ideal_from(&r, &spec).generators() {
            let p = g.component(0);
            prop_assert_eq!(&Polynomial::parse(&r, &p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn degrees_add_under_products(a in (1i64..=3, prop::collection::vec((0usize..10, -3i64..=3), 1..=3)), b in (1i64..=3, prop::collection::vec((0usize..10, -3i64..=3), 1..=3))) {
        let r = qq3();
        let (f, g) = (homogeneous(&r, a.0, &a.1), homogeneous(&r, b.0, &b.1));
        let h = &f * &g;
        if !f.is_zero() && !g.is_zero() {
            prop_assert_eq!(h.homogeneous_degree(), Some(a.0 + b.0));
        }
        prop_assert_eq!(&(&f + &g) * &g, &(&f * &g) + &(&g * &g));
    }

    #[test]
    fn prime_field_bases_match_rational_ones(masks in prop::collection::vec(1u8..16, 1..=4)) {
        let i = squarefree(&masks);
        let p = PrimeField::new(101).unwrap();
        let rp = i.ring().over_field(p).unwrap();
        let gens = i.generators().iter().map(|g| Polynomial::parse(&rp, &g.to_string()).unwrap()).collect();
        let ip = SubmodulePresentation::ideal(&rp, gens).unwrap();
        let a: Vec<String> = buchberger(&i, &TermOrder::Grevlex).elements().iter().map(|v| v.to_string()).collect();
        let b: Vec<String> = buchberger(&ip, &TermOrder::Grevlex).elements().iter().map(|v| v.to_string()).collect();
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn planted_torsion_gives_the_locus(roots in prop::collection::vec(prop::collection::vec(-2i64..=2, 1..=2), 1..=2), power in 1u32..=2) {
        let r = GradedRing::named(&["x", "y"], &[1, 1], Some("t"), Rationals).unwrap();
        let f = fiberfull::GradedFreeModule::free(&r, roots.len());
        let mut rels = Vec::new();
        let mut lcm = Polynomial::one(&r);
        for (j, rs) in roots.iter().enumerate() {
            let p = rs.iter().fold(Polynomial::one(&r), |acc, a| &acc * &Polynomial::parse(&r, &format!("t - ({a})")).unwrap());
            lcm = parameter_lcm(&lcm, &p).unwrap();
            let mut comps = vec![Polynomial::zero(&r); roots.len()];
            comps[j] = &p * &Polynomial::parse(&r, &format!("x^{power}")).unwrap();
            rels.push(f.vector(comps).unwrap());
        }
        let m = SubmodulePresentation::new(&f, rels).unwrap();
        prop_assert_eq!(fiber_full_locus(&m).unwrap(), monic_in_parameter(&lcm));
    }
}

#[test]
fn zero_and_unit_ideals() {
    let r = qq3();
    let zero = SubmodulePresentation::ideal(&r, vec![]).unwrap();
    let unit = SubmodulePresentation::parse_ideal(&r, &["1"]).unwrap();
    assert!(buchberger(&zero, &TermOrder::Grevlex).is_empty());
    assert!(buchberger(&unit, &TermOrder::Grevlex).is_whole_module());
    assert!(submodule_equal(&unit, &SubmodulePresentation::parse_ideal(&r, &["x + 1", "x"]).unwrap()).unwrap());
    let lc = LocalCohomology::new(&unit).unwrap();
    assert!(lc.all_tables((-4, 4)).unwrap().iter().all(|t| t.is_zero()));
    let res = free_resolution(&unit, true).unwrap();
    assert!(res.is_complex());
}
