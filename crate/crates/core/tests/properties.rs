mod common;

use std::collections::BTreeSet;

use common::*;
use cyclocover::algebra::numtheory::{gcd, is_prime, prime_factors};
use cyclocover::algebra::{
    cyclotomic_poly, euler_phi, field_context, smith_normal_form, IntMatrix, IntPoly,
};
use cyclocover::arrangement::{pencil, Arrangement};
use cyclocover::fpgroups::{integral_h1_kernel, phi_module_rank, sweep_presentation, Character};
use cyclocover::io::{parse_arrangement, parse_multinet};
use cyclocover::jumploci::{
    cover_homology, delta_u_poly, jump_depth, monodromy_charpoly, JumpSource,
};
use cyclocover::milnor::{
    find_multiplicities, milnor_character, polarization_torsion, recognize_milnor_cover,
    FindOptions,
};
use cyclocover::multinet::{
    deletion_pencil_certificate, verify_multinet, Multinet, PointedMultinet,
};
use cyclocover::parallel::{
    n_k, parallel_connect, plugin_h1, plugin_h1_projective, polarize, theta_star,
    PointedArrangement,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig {
        cases: n,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn labelled(a: Arrangement, prefix: &str) -> Arrangement {
    let labels = (0..a.len()).map(|i| format!("{prefix}{i}")).collect();
    a.with_labels(labels).unwrap()
}

fn flat_labels(a: &Arrangement) -> BTreeSet<BTreeSet<String>> {
    a.rank2_flats()
        .iter()
        .map(|f| f.hyperplanes.iter().map(|&h| a.label(h)).collect())
        .collect()
}

fn projective_character(r: u64, free: &[u64]) -> Character {
    let mut e: Vec<i64> = free.iter().map(|&x| x as i64).collect();
    e.push(-e.iter().sum::<i64>());
    Character::new(r, &e).unwrap()
}

// exact algebra

#[test]
fn cyclotomic_products_give_t_to_the_k_minus_one() {
    for k in 1..=60u64 {
        let prod = cyclocover::algebra::numtheory::divisors(k)
            .into_iter()
            .fold(IntPoly::one(), |acc, d| acc.mul(&cyclotomic_poly(d)));
        assert_eq!(prod, IntPoly::t_pow_minus_one(k as usize), "k = {k}");
    }
}

proptest! {
    #![proptest_config(cases(64))]

    #[test]
    fn primitive_roots_have_exact_order(char in prop::sample::select(vec![0u64, 2, 3, 5, 7]), n in 1u64..=40) {
        prop_assume!(char == 0 || n % char != 0);
        let ctx = field_context(char, n).unwrap();
        let z = ctx.zeta_pow(1);
        prop_assert_eq!(ctx.pow(&z, n).unwrap(), ctx.one());
        for q in prime_factors(n) {
            prop_assert_ne!(ctx.pow(&z, n / q).unwrap(), ctx.one());
        }
    }
}

proptest! {
    #![proptest_config(cases(256))]

    #[test]
    fn smith_form_is_unimodular_invariant(
        (m, ops) in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| (
            prop::collection::vec(prop::collection::vec(-6i64..=6, c), r),
            elementary_ops(r, c, 12),
        ))
    ) {
        let before = smith_normal_form(&IntMatrix::from_i64(&m), false);
        let mut moved = m.clone();
        apply_ops(&mut moved, &ops);
        let after = smith_normal_form(&IntMatrix::from_i64(&moved), false);
        prop_assert_eq!(&before.invariant_factors, &after.invariant_factors);
        for w in before.invariant_factors.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        let with = smith_normal_form(&IntMatrix::from_i64(&m), true);
        let (u, v) = with.transforms.unwrap();
        let d = u.mul(&IntMatrix::from_i64(&m)).mul(&v);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let expect = if i == j && i < with.rank { with.invariant_factors[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(d.get(i, j), &expect);
            }
        }
    }

    #[test]
    fn smith_product_is_gcd_of_maximal_minors(n in 1usize..=4, seed in prop::collection::vec(-5i64..=5, 16)) {
        let m: Vec<Vec<i64>> = (0..n).map(|i| seed[i * n..i * n + n].to_vec()).collect();
        let snf = smith_normal_form(&IntMatrix::from_i64(&m), false);
        let det = IntMatrix::from_i64(&m).determinant().unwrap().abs();
        let prod: BigInt = if snf.rank == n { snf.invariant_factors.iter().product() } else { BigInt::zero() };
        prop_assert_eq!(prod, det);
    }

    #[test]
    fn rank_matches_minor_expansion(
        m in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)),
        char in prop::sample::select(vec![0u64, 2, 3, 5]),
    ) {
        let ctx = field_context(char, 1).unwrap();
        let rows: Vec<Vec<_>> = m.iter().map(|r| r.iter().map(|&x| ctx.from_i64(x)).collect()).collect();
        prop_assert_eq!(ctx.rank(&rows).unwrap(), minor_rank(&m, char as i128));
        if char == 0 {
            prop_assert_eq!(IntMatrix::from_i64(&m).rank(), minor_rank(&m, 0));
        }
    }
}

// arrangements

proptest! {
    #![proptest_config(cases(64))]

    #[test]
    fn rank2_flats_partition_pairs(a in real_rank3_arrangement()) {
        let n = a.len();
        let pairs: usize = a.rank2_flats().iter().map(|f| f.size() * (f.size() - 1) / 2).sum();
        prop_assert_eq!(pairs, n * (n - 1) / 2);
    }

    #[test]
    fn deletion_poincare_matches_point_count(a in real_rank3_arrangement(), h in 0usize..8) {
        let del = a.delete(h % a.len()).unwrap();
        let p = del.os_poincare_rank3().unwrap();
        let coeff = |i: usize| p.get(i).copied().unwrap_or(0);
        let q = 53;
        prop_assert_eq!(complement_points(&del, q), q * q - coeff(1) * q + coeff(2));
    }

    #[test]
    fn sweep_relators_count_double_points(a in real_rank3_arrangement()) {
        let p = sweep_presentation(&a, false).unwrap();
        let expected: usize = a.rank2_flats().iter().map(|f| f.size() - 1).sum();
        prop_assert_eq!(p.generators, a.len());
        prop_assert_eq!(p.relators.len(), expected);
        let poin = a.os_poincare_rank3().unwrap();
        let euler_affine = 1 - a.len() as i64 + expected as i64;
        prop_assert_eq!(p.generators as i64 - p.relators.len() as i64, 1 - euler_affine);
        prop_assert_eq!(expected as i64, poin[1] + poin.get(2).copied().unwrap_or(0));
        prop_assert_eq!(p.abelianization().rank, a.len());
        prop_assert!(p.abelianization().torsion.is_empty());
    }
}

#[test]
fn deleted_b3_euler_characteristic() {
    let a = deleted_b3();
    assert_eq!(a.os_poincare_rank3().unwrap(), vec![1, 7, 12]);
    assert_eq!(a.euler_characteristic().unwrap(), 6);
}

// multinets

#[test]
fn multinet_class_and_flat_sums() {
    let b3 = parse_arrangement(&fixture("b3.json")).unwrap();
    let (b3net, _) = parse_multinet(&b3, &fixture("b3net.json")).unwrap();
    let mono = parse_arrangement(&fixture("monomial_p3.json")).unwrap();
    let (mononet, _) = parse_multinet(&mono, &fixture("monomial_p3.json")).unwrap();
    for (a, mn) in [(&b3, &b3net), (&mono, &mononet)] {
        let rep = verify_multinet(a, mn).unwrap();
        assert!(rep.valid, "{:?}", rep.violations);
        let k = mn.parts.len() as u64;
        let d = rep.weight.unwrap();
        assert_eq!(mn.m.iter().sum::<u64>(), k * d);
        for x in &mn.base_locus {
            let nx = mn.parts[0]
                .iter()
                .filter(|h| x.contains(h))
                .map(|&h| mn.m[h])
                .sum::<u64>();
            let total: u64 = x.iter().map(|&h| mn.m[h]).sum();
            assert_eq!(total, k * nx);
        }
    }
}

#[test]
fn single_flat_multinets_are_valid() {
    for k in 3..=8 {
        let a = pencil(k).unwrap();
        let mn = Multinet::new(
            (0..k).map(|h| vec![h]).collect(),
            vec![1; k],
            vec![(0..k).collect()],
        );
        let rep = verify_multinet(&a, &mn).unwrap();
        assert!(rep.valid, "k = {k}: {:?}", rep.violations);
    }
}

#[test]
fn pencil_directions_are_projective() {
    let b3 = parse_arrangement(&fixture("b3.json")).unwrap();
    let (mn, h) = parse_multinet(&b3, &fixture("b3net.json")).unwrap();
    let mut inputs = vec![(
        b3,
        PointedMultinet {
            multinet: mn,
            hyperplane: h.unwrap(),
        },
    )];
    for p in [2, 3] {
        let name = format!("monomial_p{p}.json");
        let a = parse_arrangement(&fixture(&name)).unwrap();
        let (mn, h) = parse_multinet(&a, &fixture(&name)).unwrap();
        inputs.push((
            a,
            PointedMultinet {
                multinet: mn,
                hyperplane: h.unwrap(),
            },
        ));
    }
    for (a, pm) in &inputs {
        let cert = deletion_pencil_certificate(a, pm).unwrap();
        assert_eq!(cert.raw_direction.iter().sum::<i64>(), 0);
        assert_eq!(cert.direction.iter().sum::<i64>(), 0);
    }
}

// parallel connections

proptest! {
    #![proptest_config(cases(256))]

    #[test]
    fn projective_plugin_is_unimodular((n1, n2, x, e2) in (1usize..=6, 1usize..=6).prop_flat_map(|(a, b)| (Just(a), Just(b), 0..a, 0..b))) {
        prop_assume!(n1 + n2 >= 3);
        let m = plugin_h1_projective(n1, n2, x, e2).unwrap();
        prop_assert_eq!(m.rows(), m.cols());
        prop_assert!(m.determinant().unwrap().abs().is_one());
    }

    #[test]
    fn plugin_maps_compose_in_either_order(
        (v1, x, y, v2, e2, v3, e3) in (2usize..=5, 1usize..=4, 1usize..=4).prop_flat_map(|(n1, n2, n3)| (
            prop::collection::vec(-4i64..=4, n1), 0..n1, 0..n1,
            prop::collection::vec(-4i64..=4, n2), 0..n2,
            prop::collection::vec(-4i64..=4, n3), 0..n3,
        ))
    ) {
        prop_assume!(x != y);
        let (n1, n2, n3) = (v1.len(), v2.len(), v3.len());
        let a = plugin_h1(&plugin_h1(&v1, &v2, x, e2).unwrap(), &v3, y, e3).unwrap();
        let b = plugin_h1(&plugin_h1(&v1, &v3, y, e3).unwrap(), &v2, x, e2).unwrap();
        // a lists E₁, E₂∖e₂, E₃∖e₃; b lists E₁, E₃∖e₃, E₂∖e₂.
        let mut b_reordered = b[..n1].to_vec();
        b_reordered.extend_from_slice(&b[n1 + n3 - 1..]);
        b_reordered.extend_from_slice(&b[n1..n1 + n3 - 1]);
        prop_assert_eq!(a.len(), n1 + n2 + n3 - 2);
        prop_assert_eq!(a, b_reordered);
    }
}

proptest! {
    #![proptest_config(cases(24))]

    #[test]
    fn parallel_connection_is_associative(
        e1 in real_rank3_arrangement(),
        (x, y) in (0usize..8, 0usize..8),
        (m2, m3) in (1usize..=4, 2usize..=4),
        e3_is_pencil in any::<bool>(),
    ) {
        let (x, y) = (x % e1.len(), y % e1.len());
        prop_assume!(x != y);
        let p1 = PointedArrangement::new(labelled(e1.clone(), "a"), 0).unwrap();
        let p2 = PointedArrangement::new(labelled(pencil(m2).unwrap(), "b"), 0).unwrap();
        let third = if e3_is_pencil { pencil(m3).unwrap() } else { e1.clone() };
        let p3 = PointedArrangement::new(labelled(third, "c"), m3 % 2).unwrap();
        let left = parallel_connect(&parallel_connect(&p1, x, &p2).unwrap(), y, &p3).unwrap();
        let right = parallel_connect(&parallel_connect(&p1, y, &p3).unwrap(), x, &p2).unwrap();
        prop_assert_eq!(left.arrangement.len(), right.arrangement.len());
        prop_assert_eq!(left.arrangement.rank(), right.arrangement.rank());
        prop_assert_eq!(flat_labels(&left.arrangement), flat_labels(&right.arrangement));
    }

    #[test]
    fn polarization_size_and_rank(a in real_rank3_arrangement(), m in prop::collection::vec(1u64..=3, 8)) {
        let m = &m[..a.len()];
        let b = polarize(&a, m).unwrap();
        prop_assert_eq!(b.arrangement.len() as u64, m.iter().sum::<u64>());
        prop_assert_eq!(b.arrangement.rank(), n_k(m, 2) + a.rank());
        prop_assert_eq!(b.total(), m.iter().sum::<u64>());
    }

    #[test]
    fn theta_star_is_dual_to_iterated_plugin(
        m in prop::collection::vec(1u64..=4, 4),
        seed in prop::collection::vec(-5i64..=5, 40),
    ) {
        let base = pencil(4).unwrap();
        let b = polarize(&base, &m).unwrap();
        let n = b.arrangement.len();
        let mut w = seed[..n].to_vec();
        w[0] -= w.iter().sum::<i64>();
        let t = theta_star(&b, &w, None).unwrap();
        let mut it = seed[n..].iter().copied().cycle();
        let vb: Vec<i64> = (0..4).map(|_| it.next().unwrap()).collect();
        let vp: Vec<Vec<i64>> = m.iter().map(|&mh| (0..mh).map(|_| it.next().unwrap()).collect()).collect();
        let mut image = vb.clone();
        for (h, &mh) in m.iter().enumerate() {
            if mh > 1 {
                image = plugin_h1(&image, &vp[h], h, 0).unwrap();
            }
        }
        let lhs: i64 = w.iter().zip(&image).map(|(a, c)| a * c).sum();
        let mut rhs: i64 = t.backbone.iter().zip(&vb).map(|(a, c)| a * c).sum();
        for (h, &mh) in m.iter().enumerate() {
            if mh > 1 {
                rhs += t.pencils[h].iter().zip(&vp[h]).map(|(a, c)| a * c).sum::<i64>();
            }
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_star_of_the_milnor_class(m in prop::collection::vec(1u64..=5, 4)) {
        let b = polarize(&pencil(4).unwrap(), &m).unwrap();
        let nn = b.total();
        let t = theta_star(&b, &vec![1; b.arrangement.len()], Some(nn)).unwrap();
        let expect: Vec<i64> = m.iter().map(|&x| (x % nn) as i64).collect();
        prop_assert_eq!(&t.backbone, &expect);
        for pc in &t.pencils {
            prop_assert_eq!(pc.iter().sum::<i64>() % nn as i64, 0);
        }
    }
}

// presentations and cover homology

proptest! {
    #![proptest_config(cases(128))]

    #[test]
    fn untwisted_h1_is_abelianization_rank((p, chi) in presentation_with_character()) {
        let s = JumpSource::fox(p.clone());
        let trivial = Character::trivial(chi.order, p.generators);
        let rel: Vec<Vec<i64>> = p
            .relators
            .iter()
            .map(|w| cyclocover::fpgroups::exponent_sums(w, p.generators))
            .collect();
        prop_assert_eq!(
            jump_depth(&s, 1, &trivial, 0).unwrap() as usize,
            p.generators - p.relation_matrix().rank()
        );
        let ab = p.abelianization();
        for char in [2u64, 7] {
            let expected = p.generators - if rel.is_empty() { 0 } else { minor_rank(&rel, char as i128) };
            prop_assert_eq!(jump_depth(&s, 1, &trivial, char).unwrap() as usize, expected);
            prop_assert_eq!(expected, ab.rank + ab.p_rank(char));
        }
    }

    #[test]
    fn cover_homology_matches_kernel_abelianization((p, chi) in presentation_with_character()) {
        let s = JumpSource::fox(p.clone());
        let ker = integral_h1_kernel(&p, &chi).unwrap();
        prop_assert_eq!(cover_homology(&s, &chi, 0, 1).unwrap() as usize, ker.rank);
        for q in [2u64, 3, 5, 7] {
            if chi.order % q != 0 {
                let dp = cover_homology(&s, &chi, q, 1).unwrap() as usize;
                prop_assert_eq!(dp, ker.rank + ker.p_rank(q));
            }
        }
    }

    #[test]
    fn characteristic_p_dimensions_dominate((p, chi) in presentation_with_character(), q in prop::sample::select(vec![2u64, 3, 5, 7])) {
        prop_assume!(chi.order % q != 0);
        let s = JumpSource::fox(p);
        for j in 0..chi.order {
            let rho = chi.scale(j);
            prop_assert!(jump_depth(&s, 1, &rho, 0).unwrap() <= jump_depth(&s, 1, &rho, q).unwrap());
        }
        prop_assert!(cover_homology(&s, &chi, 0, 1).unwrap() <= cover_homology(&s, &chi, q, 1).unwrap());
    }

    #[test]
    fn phi_module_rank_is_phi_times_depth((p, chi) in presentation_with_character()) {
        let s = JumpSource::fox(p.clone());
        let r = chi.order;
        for k in cyclocover::algebra::numtheory::divisors(r) {
            let rank = phi_module_rank(&p, &chi, k).unwrap() as u64;
            let depth = jump_depth(&s, 1, &chi.scale(r / k), 0).unwrap();
            prop_assert_eq!(rank % euler_phi(k), 0);
            prop_assert_eq!(rank, euler_phi(k) * depth);
        }
    }

    #[test]
    fn depths_are_galois_invariant((p, chi) in presentation_with_character(), q in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let s = JumpSource::fox(p);
        let r = chi.order;
        let d0: Vec<u64> = (0..r).map(|j| jump_depth(&s, 1, &chi.scale(j), 0).unwrap()).collect();
        for i in 0..r {
            for j in 0..r {
                if gcd(i, r) == gcd(j, r) {
                    prop_assert_eq!(d0[i as usize], d0[j as usize]);
                }
            }
        }
        let poly = delta_u_poly(&s, &chi, 0).unwrap();
        prop_assert!(poly.is_galois_closed());
        prop_assert!(monodromy_charpoly(&s, &chi, 0, 1).is_ok());
        if r % q != 0 {
            let dp: Vec<u64> = (0..r).map(|j| jump_depth(&s, 1, &chi.scale(j), q).unwrap()).collect();
            for j in 0..r {
                prop_assert_eq!(dp[j as usize], dp[(j * q % r) as usize]);
            }
        }
    }

    #[test]
    fn cover_dimension_sums_depths((p, chi) in presentation_with_character(), char in prop::sample::select(vec![0u64, 5, 7])) {
        prop_assume!(char == 0 || chi.order % char != 0);
        let s = JumpSource::fox(p.clone());
        let b1 = p.generators as u64 - p.relation_matrix().rank() as u64;
        let twisted: u64 = (1..chi.order).map(|j| jump_depth(&s, 1, &chi.scale(j), char).unwrap()).sum();
        prop_assert_eq!(cover_homology(&s, &chi, char, 1).unwrap(), b1 + twisted);
    }

    #[test]
    fn trivial_eigenvalue_multiplicity_is_b1((p, chi) in presentation_with_character(), char in prop::sample::select(vec![0u64, 5, 7])) {
        prop_assume!(char == 0 || chi.order % char != 0);
        let s = JumpSource::fox(p.clone());
        match monodromy_charpoly(&s, &chi, char, 1) {
            Ok(cp) => {
                let trivial = Character::trivial(chi.order, p.generators);
                prop_assert_eq!(cp.exponent(1), jump_depth(&s, 1, &trivial, char).unwrap());
                prop_assert_eq!(cp.degree(), cover_homology(&s, &chi, char, 1).unwrap());
            }
            Err(e) => prop_assert!(char != 0 && e.is_input()),
        }
    }
}

proptest! {
    #![proptest_config(cases(32))]

    #[test]
    fn euler_characteristic_is_conserved(
        a in real_rank3_arrangement(),
        r in 2u64..=6,
        free in prop::collection::vec(0u64..6, 7),
        char in prop::sample::select(vec![0u64, 5, 7]),
    ) {
        prop_assume!(char == 0 || r % char != 0);
        let s = JumpSource::arrangement(&a).unwrap();
        let rho = projective_character(r, &free[..a.len() - 1]);
        let euler = a.euler_characteristic().unwrap();
        let h: Vec<i64> = (0..=2).map(|q| jump_depth(&s, q, &rho, char).unwrap() as i64).collect();
        prop_assert_eq!(h[0] - h[1] + h[2], euler);
        if rho.is_trivial() {
            let poin = a.os_poincare_rank3().unwrap();
            prop_assert_eq!(h[1], poin[1]);
        }
    }
}

// Milnor fibers

proptest! {
    #![proptest_config(cases(64))]

    #[test]
    fn milnor_characters_are_recognized(m in prop::collection::vec(1u64..=6, 8), use_braid in any::<bool>()) {
        let a = if use_braid { braid() } else { deleted_b3() };
        let m = &m[..a.len()];
        let spec = milnor_character(&a, m).unwrap();
        prop_assert_eq!(recognize_milnor_cover(&a, &spec.delta).unwrap(), Some(m.to_vec()));
    }

    #[test]
    fn multiplicities_are_minimal(
        r in 2u64..=10,
        free in prop::collection::vec(0u64..10, 2..=5),
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        forbid_two in any::<bool>(),
    ) {
        prop_assume!(r % p != 0);
        let chi = projective_character(r, &free);
        prop_assume!(chi.is_surjective());
        let opts = FindOptions { forbid_two, max_n: None };
        let (m, n) = find_multiplicities(&chi, p, opts).unwrap();
        prop_assert_eq!(m.iter().sum::<u64>(), n);
        prop_assert!(n % p != 0);
        prop_assert!(m.iter().all(|&x| x >= 1 && !(forbid_two && x == 2)));
        let units: Vec<u64> = (1..r).filter(|&k| gcd(k, r) == 1).collect();
        let congruent = units
            .iter()
            .any(|&k| chi.scale(k).exponents.iter().zip(&m).all(|(&e, &x)| x % r == e));
        prop_assert!(congruent);
        // No admissible vector with a smaller total, for any unit.
        for &k in &units {
            let base: Vec<u64> = chi.scale(k).exponents.iter().map(|&e| if e == 0 { r } else { e }).collect();
            prop_assert!(!smaller_exists(&base, r, p, n, forbid_two, 0, 0));
        }
    }
}

/// Whether some m ≥ base, m ≡ base mod r coordinatewise, has total below `n` not divisible
/// by p and avoids 2 when asked.
fn smaller_exists(
    base: &[u64],
    r: u64,
    p: u64,
    n: u64,
    forbid_two: bool,
    i: usize,
    acc: u64,
) -> bool {
    if i == base.len() {
        return acc < n && !acc.is_multiple_of(p);
    }
    let mut x = base[i];
    while acc + x < n {
        if !(forbid_two && x == 2) && smaller_exists(base, r, p, n, forbid_two, i + 1, acc + x) {
            return true;
        }
        x += r;
    }
    false
}

#[test]
fn transfer_bounds_torsion_of_dominated_covers() {
    let a = deleted_b3();
    let p = sweep_presentation(&a, true).unwrap();
    let small = Character::new(3, &[2, 1, 0, 0, 2, 2, 1, 1]).unwrap();
    let spec = milnor_character(&a, &[2, 1, 3, 3, 2, 2, 1, 1]).unwrap();
    assert!(cyclocover::milnor::milnor_dominates(&spec, &small).unwrap());
    let y = integral_h1_kernel(&p, &small).unwrap();
    let f = integral_h1_kernel(&p, &spec.delta).unwrap();
    assert!(y.p_rank(2) <= f.p_rank(2));
    assert_eq!(f.p_rank(2), 2);
}

#[test]
fn polarization_degree_counts_triple_multiplicities() {
    let a = deleted_b3();
    let m = [8u64, 1, 3, 3, 5, 5, 1, 1];
    let n3 = m.iter().filter(|&&x| x >= 3).count();
    let tc = polarization_torsion(&a, &m, 2).unwrap();
    assert_eq!(tc.degree, 1 + n3);
    assert!(tc.bound >= 1);
    assert!(is_prime(tc.prime));
}
