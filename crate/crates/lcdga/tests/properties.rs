//! Property tests for the algebraic and geometric invariants.

use lcdga::braid::{coxeter_permutation, half_twist, BraidWord};
use lcdga::cobordism::{basepoint_move, commute_move, rotate_closure, Direction};
use lcdga::dga::{chord_gen, ClosureDga};
use lcdga::distinguisher::{e_values, orbit_values, zmat_pow};
use lcdga::fillings::{basepoint_sign_holds, filling_augmentation};
use lcdga::fuzz::{random_admissible, random_pinches};
use lcdga::laurent::{parse_laurent, Laurent, Monomial};
use lcdga::matrix::{path_factor, path_factor_inverse};
use lcdga::monodromy::{iterate, kalman_map};
use lcdga::nc::{parse_nc, NcPoly};
use lcdga::presets;
use lcdga::ring::CoefficientRing;
use lcdga::spec::{satellite, ClosureSpec};
use lcdga::symbol::{Gen, Var};
use lcdga::worked::{families, run_family, D4_PINCHES};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

fn word(strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(1..strands, 0..=max_len).prop_map(move |l| BraidWord::new(strands, l).unwrap())
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((1..=3usize, -2..=2i32), 0..3)
        .prop_map(|v| Monomial::from_pairs(v.into_iter().map(|(i, e)| (Var::new(&format!("t{i}")), e))))
}

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-3..=3i64, monomial()), 0..4).prop_map(|terms| {
        let mut x = Laurent::zero();
        for (c, m) in terms {
            x.add_term(BigInt::from(c), m);
        }
        x
    })
}

fn nc_poly() -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((laurent(), prop::collection::vec(1..=3usize, 0..3)), 0..4).prop_map(|terms| {
        let mut p = NcPoly::zero();
        for (c, w) in terms {
            let mut t = NcPoly::scalar(c);
            for g in w {
                t = &t * &NcPoly::gen(Gen::new(&format!("a{g}")));
            }
            p += &t;
        }
        p
    })
}

fn admissible(seed: u64, max_len: usize) -> ClosureSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = random_admissible(&mut rng, max_len).unwrap();
    ClosureSpec::standard("random", w).unwrap()
}

/// The strand a base point reaches after passing crossing `k` (one-based).
fn across(strand: usize, k: usize) -> usize {
    if strand + 1 == k {
        k
    } else if strand == k {
        k - 1
    } else {
        strand
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn permutation_is_a_morphism(n in 2..6usize, a in prop::collection::vec(1..5usize, 0..10), b in prop::collection::vec(1..5usize, 0..10)) {
        let a: Vec<usize> = a.into_iter().filter(|&k| k < n).collect();
        let b: Vec<usize> = b.into_iter().filter(|&k| k < n).collect();
        let wa = BraidWord::new(n, a).unwrap();
        let wb = BraidWord::new(n, b).unwrap();
        let pa = coxeter_permutation(&wa);
        let pb = coxeter_permutation(&wb);
        let pab = coxeter_permutation(&wa.concat(&wb).unwrap());
        for i in 0..n {
            prop_assert_eq!(pab[i], pb[pa[i] - 1]);
        }
    }

    #[test]
    fn satellite_with_one_strand_is_the_pattern(w in word(4, 10), i in 1..=4usize) {
        prop_assume!(w.permutation()[i - 1] == i - 1);
        let spec = satellite(&w, i, &BraidWord::new(1, vec![]).unwrap()).unwrap();
        prop_assert_eq!(spec.word(), &w);
    }

    #[test]
    fn torus_component_count(p in 2..6usize, q in 1..6usize) {
        let spec = presets::torus(p, q).unwrap();
        prop_assert_eq!(spec.component_count(), num_integer::gcd(p, q));
    }

    #[test]
    fn nc_ring_axioms(x in nc_poly(), y in nc_poly(), z in nc_poly()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&x * &NcPoly::one(), x.clone());
        prop_assert_eq!(&NcPoly::one() * &x, x.clone());
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn coefficients_commute_with_generators(c in laurent(), x in nc_poly()) {
        let s = NcPoly::scalar(c.clone());
        prop_assert_eq!(&s * &x, &x * &s);
        prop_assert_eq!(&s * &x, x.scale(&c));
    }

    #[test]
    fn laurent_round_trip(x in laurent()) {
        prop_assert_eq!(parse_laurent(&x.pretty()).unwrap(), x);
    }

    #[test]
    fn nc_round_trip(x in nc_poly()) {
        prop_assert_eq!(parse_nc(&x.pretty()).unwrap(), x);
    }

    #[test]
    fn path_factor_inverse_is_two_sided(n in 2..5usize, k in 1..4usize, x in nc_poly()) {
        prop_assume!(k < n);
        let p = path_factor(k, &x, n).unwrap();
        let q = path_factor_inverse(k, &x, n).unwrap();
        prop_assert!((&p * &q).is_identity());
        prop_assert!((&q * &p).is_identity());
    }

    #[test]
    fn path_product_splits(seed in any::<u64>(), cut in 0..20usize) {
        let spec = admissible(seed, 10);
        let r = spec.len();
        let k = cut % (r + 1);
        let inv: Vec<Laurent> = spec.column(k).iter().map(|x| x.unit_inverse().unwrap()).collect();
        let split = &spec.path_product(0, k).mul_diag_right(&inv) * &spec.path_product(k, r);
        prop_assert_eq!(split, spec.path_matrix());
        prop_assert!((&spec.path_matrix() * &spec.path_product_inverse(0, r)).is_identity());
    }

    #[test]
    fn solved_relations_reduce_to_minus_one(exps in prop::collection::vec(prop::collection::vec(-2..=2i32, 3), 1..4), signs in prop::collection::vec(any::<bool>(), 4)) {
        // Relation i is t_i times a monomial in the free variables and earlier t's.
        let free: Vec<Var> = (1..=3).map(|i| Var::new(&format!("s{i}"))).collect();
        let ts: Vec<Var> = (1..=exps.len()).map(|i| Var::new(&format!("t{i}"))).collect();
        let mut rels = Vec::new();
        for (i, e) in exps.iter().enumerate() {
            let mut pairs: Vec<(Var, i32)> = free.iter().copied().zip(e.iter().copied()).collect();
            pairs.push((ts[i], 1));
            if i > 0 {
                pairs.push((ts[i - 1], 1));
            }
            let sign = if signs[i] { 1 } else { -1 };
            rels.push(Laurent::term(BigInt::from(sign), Monomial::from_pairs(pairs)));
        }
        let mut vars = free.clone();
        vars.extend(ts.iter().copied());
        let ring = CoefficientRing::new(vars).solve_unit_relations(&rels, &ts).unwrap();
        for rel in &rels {
            prop_assert_eq!(ring.reduce(rel), Laurent::constant(-1));
        }
        for v in ring.solved().values() {
            prop_assert!(v.variables().iter().all(|x| !ring.is_solved(*x)));
        }
    }

    #[test]
    fn random_dga_structure(seed in any::<u64>()) {
        let spec = admissible(seed, 12);
        let dga = ClosureDga::build(&spec);
        prop_assert!(dga.check_structure().ok(), "{:?}", dga.check_structure().violations());
        let p = spec.path_matrix();
        let n = spec.strands();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { &NcPoly::one() + p.get(i, j) } else { p.get(i, j).clone() };
                prop_assert_eq!(dga.d_gen(chord_gen(i, j)), want);
            }
        }
    }

    #[test]
    fn link_automorphisms_are_chain_maps(seed in any::<u64>(), exps in prop::collection::vec((any::<bool>(), -2..=2i32), 4)) {
        let spec = admissible(seed, 12);
        let dga = ClosureDga::build(&spec);
        let s = Var::new("u");
        let units: Vec<Laurent> = exps[..spec.component_count()]
            .iter()
            .map(|&(neg, e)| Laurent::signed_var(if neg { -1 } else { 1 }, s, e))
            .collect();
        let map = dga.link_automorphism(&units).unwrap();
        prop_assert!(map.is_chain_map());
    }

    #[test]
    fn random_saddles_are_chain_maps(seed in any::<u64>()) {
        let spec = admissible(seed, 12);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(17));
        random_pinches(&spec, &mut rng, spec.len()).unwrap();
    }

    #[test]
    fn full_rotation_restores_the_word(seed in any::<u64>()) {
        let spec = admissible(seed, 10);
        let mut cur = spec.clone();
        for _ in 0..spec.len() {
            let (next, map) = rotate_closure(&cur, 1).unwrap();
            prop_assert!(map.is_chain_map());
            for (g, img) in map.images() {
                prop_assert_eq!(img, &NcPoly::gen(*g));
            }
            cur = next;
        }
        prop_assert_eq!(cur.word(), spec.word());
        prop_assert_eq!(cur.labels(), spec.labels());
    }

    #[test]
    fn basepoint_moves_invert(seed in any::<u64>(), pick in any::<usize>()) {
        let spec = admissible(seed, 10);
        let r = spec.len();
        let cells: Vec<usize> = spec.basepoints()[&r].keys().copied().collect();
        let strand = cells[pick % cells.len()];
        let (mid, there) = basepoint_move(&spec, r, strand, Direction::Left).unwrap();
        let k = spec.word().letters()[r - 1];
        let (back, home) = basepoint_move(&mid, r - 1, across(strand, k), Direction::Right).unwrap();
        prop_assert!(there.is_chain_map() && home.is_chain_map());
        prop_assert_eq!(back.basepoints(), spec.basepoints());
        prop_assert!(there.then(&home).unwrap().is_identity_in_degree_zero());
    }

    #[test]
    fn far_commutation_is_a_chain_map(seed in any::<u64>()) {
        let spec = admissible(seed, 12);
        let l = spec.word().letters();
        for p in 0..spec.len().saturating_sub(1) {
            if l[p].abs_diff(l[p + 1]) >= 2 {
                let (_, map) = commute_move(&spec, p).unwrap();
                prop_assert!(map.is_chain_map());
            }
        }
    }
}

#[test]
fn half_twist_shape() {
    for n in 2..=7 {
        let d = half_twist(n).unwrap();
        assert_eq!(d.len(), n * (n - 1) / 2);
        let p = d.permutation();
        assert!((0..n).all(|i| p[i] == n - 1 - i));
    }
}

#[test]
fn preset_component_counts() {
    assert_eq!(presets::d_n(4).unwrap().component_count(), 4);
    assert_eq!(presets::lambda_n(1).unwrap().component_count(), 2);
}

/// After merging the base points of each component, `δ^{p+q}` is the
/// identity on torus knots and a link automorphism on torus links.
#[test]
fn kalman_has_period_p_plus_q() {
    for p in 2..=5 {
        for q in 1..=9 - p {
            let spec = presets::torus(p, q).unwrap();
            let it = iterate(&kalman_map(p, q).unwrap(), p + q).unwrap();
            let r = spec.len();
            let merge: HashMap<Var, Laurent> = spec.basepoints()[&r]
                .iter()
                .map(|(&strand, t)| (t.variables()[0], Laurent::var(Var::new(&format!("u{}", spec.component_at(r, strand))))))
                .collect();
            for v in merge.keys() {
                assert_eq!(it.map_scalar(&Laurent::var(*v)).substitute(&merge), merge[v], "({p}, {q})");
            }
            let dga = ClosureDga::build(&spec);
            let m = spec.component_count();
            let mut units: Vec<Option<Laurent>> = vec![None; m];
            units[0] = Some(Laurent::one());
            for _ in 0..m {
                for info in dga.generators().iter().filter(|g| g.degree == 0) {
                    let img = it.image(info.gen).unwrap().map_coefficients(|c| c.substitute(&merge));
                    let scale = img.coefficient(&[info.gen]);
                    assert_eq!(img, NcPoly::gen(info.gen).scale(&scale), "({p}, {q}) {}", info.gen.name());
                    match (units[info.r].clone(), units[info.c].clone()) {
                        (Some(ur), None) => units[info.c] = Some(&ur * &scale.unit_inverse().unwrap()),
                        (None, Some(uc)) => units[info.r] = Some(&scale * &uc),
                        (Some(ur), Some(uc)) => assert_eq!(scale, &ur * &uc.unit_inverse().unwrap(), "({p}, {q})"),
                        (None, None) => {}
                    }
                }
            }
            assert!(units.iter().all(|u| u.is_some()), "({p}, {q})");
            if m == 1 {
                assert!(dga.generators().iter().filter(|g| g.degree == 0).all(|g| it
                    .image(g.gen)
                    .unwrap()
                    .map_coefficients(|c| c.substitute(&merge))
                    == NcPoly::gen(g.gen)));
            }
        }
    }
}

#[test]
fn preset_fillings_have_unit_basepoint_product() {
    for f in families() {
        let run = run_family(&f, 2).unwrap();
        assert!(basepoint_sign_holds(&run.filling.augmentation), "{}", f.key);
    }
}

/// Swapping adjacent pinches at commuting letters (disjoint saddles) gives
/// the same augmentation, since saddle variables are named after crossings.
#[test]
fn disjoint_pinch_orders_agree() {
    let spec = presets::d_n(4).unwrap();
    let base = filling_augmentation(&spec, &D4_PINCHES).unwrap().augmentation;
    let letter = |name: &str| spec.word().letters()[spec.position(name).unwrap()];
    let mut swapped = 0;
    for i in 0..D4_PINCHES.len() - 1 {
        if letter(D4_PINCHES[i]).abs_diff(letter(D4_PINCHES[i + 1])) < 2 {
            continue;
        }
        let mut order = D4_PINCHES.to_vec();
        order.swap(i, i + 1);
        let aug = filling_augmentation(&spec, &order).unwrap().augmentation;
        assert_eq!(aug.ring, base.ring);
        assert_eq!(aug.ordered_values(), base.ordered_values(), "swap at {i}");
        swapped += 1;
    }
    assert_eq!(swapped, 2);
}

/// `E` is unchanged by sign flips and permutations of the free variables,
/// and brute force over all integer specializations of the symbolic orbit
/// matches the powers of the certificate matrix.
#[test]
fn e_invariance_and_brute_force() {
    for f in families() {
        let run = run_family(&f, 5).unwrap();
        let aug = &run.filling.augmentation;
        let pair = [f.pair.0, f.pair.1];
        let e = e_values(aug, &pair, f.pair.1, 5).unwrap();
        let free = aug.ring.free_variables();

        let flips: HashMap<Var, Laurent> = free.iter().step_by(2).map(|&v| (v, Laurent::signed_var(-1, v, 1))).collect();
        assert_eq!(e_values(&aug.twisted(&flips), &pair, f.pair.1, 5).unwrap(), e, "{} flips", f.key);

        let n = free.len();
        let perm: HashMap<Var, Laurent> = (0..n).map(|i| (free[i], Laurent::var(free[(i + 1) % n]))).collect();
        assert_eq!(e_values(&aug.twisted(&perm), &pair, f.pair.1, 5).unwrap(), e, "{} permutation", f.key);

        let orbit = orbit_values(aug, &pair, 5).unwrap();
        let z = run.certificate.z.clone().expect("certified family");
        for k in 0..=5 {
            let y = &orbit[k][1];
            let brute = (0..1u64 << n)
                .map(|bits| {
                    let signs = (0..n).map(|i| (free[i], if bits >> i & 1 == 1 { -1 } else { 1 })).collect();
                    y.eval_signs(&signs).abs()
                })
                .max()
                .unwrap();
            assert_eq!(brute, e[k], "{} k={k}", f.key);
            assert_eq!(brute, zmat_pow(&z, k)[0][0], "{} k={k}", f.key);
        }
    }
}
