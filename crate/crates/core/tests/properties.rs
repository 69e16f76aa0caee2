use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use toricmcm::arith::{
    adjusted_remainder, qadic_trace, split_digits, PrimePower, Scalar, ScalarField,
};
use toricmcm::binomial::{Monomial, ToricPresentation};
use toricmcm::fintegral::{
    contained_in, f_normalization, frac_degree, image_semigroup, normalization, power_integral,
    q_integral_closure, AffineSemigroup, ClassStructure, DEFAULT_LIMIT,
};
use toricmcm::frobenius::{saturation_generators, star_action, StarElement};
use toricmcm::poly::{Exponents, GroebnerBasis, MonomialOrder, Poly, PolyRing};
use toricmcm::toric::{
    build_bipartite, e3_data, genfam_data, is_tame, normalized_relations, substitute_y,
    trivialize_character, BipartiteData, Character, PhiMatrix, Semigroup,
};
use toricmcm::Error;

fn exps() -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0u32..3, 3)
}

fn binomial(ring: &PolyRing, a: &[u32], b: &[u32], c: i64) -> Poly {
    let f = ring.field();
    ring.sub(
        &ring.monomial(Exponents(a.to_vec())),
        &ring.term(f.from_int(c), Exponents(b.to_vec())),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn groebner_basis_is_order_independent(
        gens in proptest::collection::vec((exps(), exps(), 1i64..7), 1..4)
    ) {
        let field = Arc::new(ScalarField::prime(7).unwrap());
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let grevlex = PolyRing::new(field.clone(), names.clone(), MonomialOrder::grevlex(3));
        let lex = PolyRing::new(field, names, MonomialOrder::lex(3));
        let g1 = GroebnerBasis::compute(&grevlex, &gens.iter().map(|(a, b, c)| binomial(&grevlex, a, b, *c)).collect::<Vec<_>>());
        let g2 = GroebnerBasis::compute(&lex, &gens.iter().map(|(a, b, c)| binomial(&lex, a, b, *c)).collect::<Vec<_>>());
        for p in g1.polys() {
            let q = lex.from_terms(p.terms().iter().cloned());
            prop_assert!(g2.contains(&q));
        }
        for p in g2.polys() {
            let q = grevlex.from_terms(p.terms().iter().cloned());
            prop_assert!(g1.contains(&q));
        }
    }
}

fn e3() -> &'static ToricPresentation {
    static PRES: std::sync::OnceLock<ToricPresentation> = std::sync::OnceLock::new();
    PRES.get_or_init(|| build_bipartite(&e3_data(7).unwrap()).unwrap())
}

/// c·y^{q·factor}·body as a monomial of R, i.e. the q-th power image.
fn frobenius_image(pres: &ToricPresentation, factor: &[u32], x: &StarElement) -> Poly {
    let q = x.q.q() as u32;
    let f = pres.field();
    let body = x.body();
    let y: Vec<u32> = body
        .yexp
        .iter()
        .zip(factor)
        .map(|(a, s)| a + q * s)
        .collect();
    let c = f.pow(x.coeff, x.q.q() as u128);
    pres.normal_form(&pres.monomial_poly(&Monomial::new(f.mul(c, body.coeff), body.uexp, y)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn star_action_composes(ru in proptest::collection::vec(0u32..3, 2), ry in exps(),
                            su in proptest::collection::vec(0u32..3, 2), sy in exps()) {
        let pres = e3();
        let q = PrimePower::new(7, 1).unwrap();
        let one = StarElement::one(q, pres);
        let r = Monomial::unit(ru.clone(), ry.clone());
        let s = Monomial::unit(su.clone(), sy.clone());
        let rs = Monomial::unit(ru.iter().zip(&su).map(|(a, b)| a + b).collect(), ry.iter().zip(&sy).map(|(a, b)| a + b).collect());
        let direct = star_action(&rs, &one, pres);
        let first = star_action(&s, &one, pres);
        prop_assume!(direct.is_ok() && first.is_ok());
        let (direct, first) = (direct.unwrap(), first.unwrap());
        match (&direct.element, &first.element) {
            (None, _) => prop_assert!(pres.normal_form(&pres.monomial_poly(&rs)).is_zero() || first.element.is_some()),
            (Some(d), Some(e1)) => {
                let second = star_action(&r, e1, pres);
                prop_assume!(second.is_ok());
                let second = second.unwrap();
                let e2 = second.element.expect("nonzero product");
                let total: Vec<u32> = first.factor.iter().zip(&second.factor).map(|(a, b)| a + b).collect();
                prop_assert_eq!(frobenius_image(pres, &total, &e2), frobenius_image(pres, &direct.factor, d));
            }
            (Some(_), None) => prop_assert!(false, "s·*1 vanished but rs·*1 did not"),
        }
    }
}

fn random_semigroup(rng: &mut StdRng, e: usize) -> AffineSemigroup {
    let mut gens = Vec::new();
    for i in 0..e {
        let mut g = vec![0; e];
        g[i] = rng.gen_range(1..6);
        gens.push(g);
    }
    for _ in 0..rng.gen_range(1..4) {
        let g: Vec<u32> = (0..e).map(|_| rng.gen_range(0..7)).collect();
        if g.iter().any(|&x| x > 0) {
            gens.push(g);
        }
    }
    AffineSemigroup::new(e, gens).unwrap()
}

/// Membership by dynamic programming over a box.
fn brute_members(g: &AffineSemigroup, bound: u32) -> HashSet<Vec<u32>> {
    let mut seen: HashSet<Vec<u32>> = HashSet::from([vec![0; g.rank]]);
    let mut frontier = vec![vec![0; g.rank]];
    while let Some(x) = frontier.pop() {
        for gen in &g.generators {
            let y: Vec<u32> = x.iter().zip(gen).map(|(a, b)| a + b).collect();
            if y.iter().all(|&v| v <= bound) && seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn box_points(e: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..e {
        out = out
            .into_iter()
            .flat_map(|v| (0..=bound).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

#[test]
fn membership_matches_enumeration() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..60 {
        let e = rng.gen_range(1..4);
        let g = random_semigroup(&mut rng, e);
        let bound = if e == 3 { 10 } else { 16 };
        let brute = brute_members(&g, bound);
        let s = ClassStructure::build(&g, DEFAULT_LIMIT).unwrap();
        for x in box_points(e, bound) {
            assert_eq!(
                s.contains(&x),
                brute.contains(&x),
                "{x:?} in {:?}",
                g.generators
            );
        }
    }
}

#[test]
fn q_closure_matches_enumeration() {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..40 {
        let e = rng.gen_range(1..3);
        let g = random_semigroup(&mut rng, e);
        let q = [2u64, 3, 4, 5][rng.gen_range(0..4)];
        let s = ClassStructure::build(&g, DEFAULT_LIMIT).unwrap();
        let pint =
            ClassStructure::build(&q_integral_closure(&g, q).unwrap(), DEFAULT_LIMIT).unwrap();
        for x in box_points(e, 12) {
            let xi: Vec<i64> = x.iter().map(|&v| v as i64).collect();
            let expected =
                s.in_group(&xi) && s.contains(&x.iter().map(|&v| v * q as u32).collect::<Vec<_>>());
            assert_eq!(
                pint.contains(&x),
                expected,
                "{x:?}, q = {q}, {:?}",
                g.generators
            );
        }
    }
}

#[test]
fn power_integral_matches_multiples() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..40 {
        let e = rng.gen_range(1..3);
        let g = random_semigroup(&mut rng, e);
        let s = ClassStructure::build(&g, DEFAULT_LIMIT).unwrap();
        let pi = ClassStructure::build(&power_integral(&g).unwrap(), DEFAULT_LIMIT).unwrap();
        let lcm: u32 = 60;
        for x in box_points(e, 8) {
            let xi: Vec<i64> = x.iter().map(|&v| v as i64).collect();
            // mγ ∈ Γ for m ≫ 0 is periodic in m with period dividing 60 here,
            // so it is enough to look at one full period far out.
            let far = 200u32;
            let eventually = s.in_group(&xi)
                && (far..far + lcm)
                    .all(|m| s.contains(&x.iter().map(|&v| v * m).collect::<Vec<_>>()));
            assert_eq!(pi.contains(&x), eventually, "{x:?} over {:?}", g.generators);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn closure_chain(seed in any::<u64>(), pi in 0usize..4) {
        let p = [2u64, 3, 5, 7][pi];
        let mut rng = StdRng::seed_from_u64(seed);
        let e = rng.gen_range(1..4);
        let g = random_semigroup(&mut rng, e);
        let pw = power_integral(&g).unwrap();
        let pint = q_integral_closure(&g, p).unwrap();
        let pint2 = q_integral_closure(&g, p * p).unwrap();
        let fnorm = f_normalization(&g, p).unwrap();
        let norm = normalization(&g).unwrap();
        prop_assert!(contained_in(&g, &pw).unwrap());
        prop_assert!(contained_in(&pw, &fnorm.semigroup).unwrap());
        prop_assert!(contained_in(&g, &pint).unwrap());
        prop_assert!(contained_in(&pint, &pint2).unwrap());
        prop_assert!(contained_in(&pint2, &fnorm.semigroup).unwrap());
        prop_assert!(contained_in(&fnorm.semigroup, &norm).unwrap());
        let again = q_integral_closure(&fnorm.semigroup, p).unwrap();
        prop_assert!(contained_in(&again, &fnorm.semigroup).unwrap());
        prop_assert_eq!(normalization(&norm).unwrap().canonical(), norm.canonical());
        prop_assert_eq!(f_normalization(&fnorm.semigroup, p).unwrap().semigroup.canonical(), fnorm.semigroup.canonical());
    }

    #[test]
    fn frac_degree_counts_residues(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let e = rng.gen_range(1..4);
        let g = random_semigroup(&mut rng, e);
        let s = ClassStructure::build(&g, DEFAULT_LIMIT).unwrap();
        let base: Vec<Vec<u32>> = (0..e).map(|i| { let mut v = vec![0; e]; v[i] = s.base[i]; v }).collect();
        let base = AffineSemigroup::new(e, base).unwrap();
        prop_assert_eq!(frac_degree(&g, &base).unwrap(), BigInt::from(s.residues().count()));
    }
}

/// The q-integral closure of the image semigroup is spanned over the
/// y-images by the fractions b/y^s attached to the saturation generators.
fn check_bridge(data: &BipartiteData, q: PrimePower) {
    let pres = build_bipartite(data).unwrap();
    let sm = saturation_generators(&pres, q).unwrap();
    let img = image_semigroup(data).unwrap();
    let d = data.d();
    let image = |u: &[u32], y: &[u32]| -> Vec<i64> {
        let mut out = vec![0i64; d];
        for (i, &a) in y.iter().enumerate() {
            for (o, &g) in out.iter_mut().zip(&img.generators[i]) {
                *o += a as i64 * g as i64;
            }
        }
        for (j, &b) in u.iter().enumerate() {
            for (o, &g) in out.iter_mut().zip(&img.generators[d + j]) {
                *o += b as i64 * g as i64;
            }
        }
        out
    };
    let mut gens: Vec<Vec<u32>> = img.generators[..d].to_vec();
    for o in &sm.origins {
        let f: Vec<i64> = image(&o.b, &vec![0; d])
            .iter()
            .zip(image(&[], &o.s))
            .map(|(a, b)| a - b)
            .collect();
        assert!(
            f.iter().all(|&x| x >= 0),
            "fraction {f:?} leaves the orthant"
        );
        if f.iter().any(|&x| x > 0) {
            gens.push(f.iter().map(|&x| x as u32).collect());
        }
    }
    let spanned = AffineSemigroup::new(d, gens).unwrap();
    let pint = q_integral_closure(&img, q.q()).unwrap();
    assert!(contained_in(&spanned, &pint).unwrap());
    assert!(contained_in(&pint, &spanned).unwrap());
}

#[test]
fn saturation_matches_semigroup_closure() {
    check_bridge(&e3_data(7).unwrap(), PrimePower::new(7, 1).unwrap());
    check_bridge(&e3_data(11).unwrap(), PrimePower::new(11, 1).unwrap());
    check_bridge(&genfam_data(11).unwrap(), PrimePower::new(11, 1).unwrap());
    check_bridge(&genfam_data(13).unwrap(), PrimePower::new(13, 1).unwrap());
}

fn random_field(rng: &mut StdRng) -> Arc<ScalarField> {
    const FIELDS: &[(u64, u32)] = &[
        (2, 1),
        (3, 1),
        (5, 1),
        (7, 1),
        (11, 1),
        (13, 1),
        (17, 1),
        (19, 1),
        (23, 1),
        (29, 1),
        (31, 1),
        (37, 1),
        (41, 1),
        (43, 1),
        (47, 1),
        (53, 1),
        (59, 1),
        (61, 1),
        (67, 1),
        (71, 1),
        (73, 1),
        (79, 1),
        (83, 1),
        (89, 1),
        (97, 1),
        (101, 1),
        (103, 1),
        (107, 1),
        (109, 1),
        (113, 1),
        (2, 2),
        (2, 3),
        (2, 4),
        (2, 5),
        (2, 6),
        (3, 2),
        (3, 3),
        (3, 4),
        (5, 2),
        (7, 2),
        (11, 2),
    ];
    let (p, k) = FIELDS[rng.gen_range(0..FIELDS.len())];
    Arc::new(ScalarField::new(p, k).unwrap())
}

fn random_unit(rng: &mut StdRng, f: &ScalarField) -> Scalar {
    f.from_raw(rng.gen_range(1..f.size())).unwrap()
}

/// Bipartite data with denominators coprime to p and χ = h^{φ(γ)}.
fn random_tame(rng: &mut StdRng) -> BipartiteData {
    loop {
        let field = random_field(rng);
        let p = field.p();
        let n = rng.gen_range(1..3usize);
        let d = rng.gen_range(n..4usize);
        let den = loop {
            let c = rng.gen_range(1..5i64);
            if !(c as u64).is_multiple_of(p) {
                break c;
            }
        };
        let rows: Vec<Vec<(i64, i64)>> = (0..n)
            .map(|_| (0..d).map(|_| (rng.gen_range(1..4), den)).collect())
            .collect();
        let refs: Vec<&[(i64, i64)]> = rows.iter().map(|r| r.as_slice()).collect();
        let phi = PhiMatrix::from_fractions(&refs).unwrap();
        if !is_tame(&phi, p) {
            continue;
        }
        let mut gens: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = den as u32;
                v
            })
            .collect();
        if n == 2 {
            gens.push(vec![den as u32, den as u32 * rng.gen_range(1..3)]);
        }
        let gamma = Semigroup::new(n, gens.clone()).unwrap();
        let h: Vec<Scalar> = (0..d).map(|_| random_unit(rng, &field)).collect();
        let chi = gens
            .iter()
            .map(|g| {
                let img = phi.image(g);
                img.iter().zip(&h).fold(field.one(), |acc, (e, &hi)| {
                    field.mul(acc, field.pow(hi, e.to_integer().try_into().unwrap()))
                })
            })
            .collect();
        return BipartiteData::new(field, gamma, phi, Character { values: chi }).unwrap();
    }
}

#[test]
fn tame_trivializations_round_trip() {
    let mut rng = StdRng::seed_from_u64(2024);
    for _ in 0..40 {
        let data = random_tame(&mut rng);
        let t = trivialize_character(&data, 2).unwrap();
        let back = substitute_y(&t.presentation, &t.substitution).unwrap();
        assert_eq!(
            normalized_relations(&back),
            normalized_relations(&build_bipartite(&t.data).unwrap())
        );
    }
}

#[test]
fn wild_data_is_rejected() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..30 {
        let field = random_field(&mut rng);
        let p = field.p() as i64;
        let phi = PhiMatrix::from_fractions(&[&[(1, p), (rng.gen_range(1..4), 1)]]).unwrap();
        let gamma = Semigroup::new(1, vec![vec![p as u32]]).unwrap();
        let data = BipartiteData::new(
            field.clone(),
            gamma,
            phi,
            Character {
                values: vec![random_unit(&mut rng, &field)],
            },
        )
        .unwrap();
        assert!(matches!(
            trivialize_character(&data, 2),
            Err(Error::Wild(_))
        ));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn digit_split_identities(pi in 0usize..6, e in 1u32..4, mi in any::<usize>(), bi in any::<u64>()) {
        let p = [2u64, 3, 5, 7, 11, 13][pi];
        let q = PrimePower::new(p, e).unwrap();
        let divisors: Vec<u64> = (1..13).filter(|m| (q.q() - 1).is_multiple_of(*m)).collect();
        let m = divisors[mi % divisors.len()];
        let b = 1 + bi % (q.q() - 1);
        let s = split_digits(b, &q, m).unwrap();
        let eps = adjusted_remainder(b, m).unwrap().value;
        prop_assert_eq!(s.high * q.q() + s.low, b * (q.q() - 1) / m);
        prop_assert!(s.high + s.low < q.q());
        prop_assert_eq!(s.low * m, q.q() * eps - b);
        let t1 = qadic_trace((b * (q.q() - 1) / m) as u128, q.q());
        prop_assert_eq!(t1, (eps * (q.q() - 1) / m) as u128);
        let q2 = q.q() as u128 * q.q() as u128;
        prop_assert_eq!(qadic_trace(b as u128 * (q2 - 1) / m as u128, q.q()), 2 * t1);
    }
}
