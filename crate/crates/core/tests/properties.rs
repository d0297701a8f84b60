use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use orbibundle::abgroup::{smith_normal_form, FpAbelianGroup, IntMatrix, QmodZ};
use orbibundle::covers::{
    coarse_genus, cover_geometry, deck_action_on_points, validate_monodromy, TameCover,
};
use orbibundle::finitegroup::FiniteGroup;
use orbibundle::orbifold::{pic_zero_torsion, picard_group, polygonal_presentation, OrbifoldCurve};
use orbibundle::parabolic::{
    find_finite_relation, line_bundle_data, par_degree, pushforward, rh_realize, satisfies_h0,
    shift, splitting_type, ParabolicBundleData, ParabolicLineBundle,
};
use orbibundle::reptheory::{character, induce, local_exponents, Character1D, CycloNumber};

fn line(rs: &[u64]) -> OrbifoldCurve {
    let labels: Vec<String> = (0..rs.len()).map(|i| format!("p{i}")).collect();
    let pts: Vec<(&str, u64)> = labels
        .iter()
        .map(|s| s.as_str())
        .zip(rs.iter().copied())
        .collect();
    OrbifoldCurve::line(&pts).unwrap()
}

/// `|Pic⁰[n]|` by enumerating `a ∈ ∏ ℤ/rᵢ` with `Σ aᵢ/rᵢ ∈ ℤ` and `n·a = 0`.
fn brute_pic0_torsion(rs: &[u64], n: u64) -> u64 {
    let l: u64 = rs.iter().product();
    let mut count = 0;
    let mut a = vec![0u64; rs.len()];
    loop {
        let num: u64 = a.iter().zip(rs).map(|(&x, &r)| x * (l / r)).sum();
        if num.is_multiple_of(l) && a.iter().zip(rs).all(|(&x, &r)| (n * x).is_multiple_of(r)) {
            count += 1;
        }
        let mut i = 0;
        while i < rs.len() {
            a[i] += 1;
            if a[i] < rs[i] {
                break;
            }
            a[i] = 0;
            i += 1;
        }
        if i == rs.len() {
            return count;
        }
    }
}

fn corpus() -> Vec<Arc<FiniteGroup>> {
    vec![
        Arc::new(FiniteGroup::cyclic(4)),
        Arc::new(FiniteGroup::cyclic(6)),
        Arc::new(FiniteGroup::symmetric(3)),
        Arc::new(FiniteGroup::dihedral(4)),
        Arc::new(FiniteGroup::alternating4()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_is_a_unimodular_diagonalization(
        rows in 1usize..5,
        cols in 1usize..5,
        entries in prop::collection::vec(-9i64..10, 16),
    ) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * 4..i * 4 + cols].to_vec()).collect();
        let m = IntMatrix::from_i64_rows(&m, cols);
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d.clone());
        prop_assert!(snf.d.is_diagonal());
        prop_assert!(snf.u.determinant().abs().is_one());
        prop_assert!(snf.v.determinant().abs().is_one());
        prop_assert!(snf.v.mul(&snf.v_inv) == IntMatrix::identity(cols));
        let diag = snf.diagonal();
        let nz: Vec<&BigInt> = diag.iter().take(snf.rank()).collect();
        prop_assert!(nz.iter().all(|d| d.is_positive()));
        for w in nz.windows(2) {
            prop_assert!((w[1] % w[0]).is_zero());
        }
    }

    #[test]
    fn picard_quotient_and_torsion(rs in prop::collection::vec(1u64..7, 0..5), n in 1u64..7) {
        let orb = line(&rs);
        let pic = picard_group(&orb).unwrap();
        prop_assert_eq!(pic.group().free_rank(), 1);
        let q = pic.quotient_by_hyperplane();
        let big: Vec<u64> = rs.iter().copied().filter(|&r| r > 1).collect();
        let expected_q = FpAbelianGroup::from_invariants(&big);
        prop_assert_eq!(q.invariant_factors(), expected_q.invariant_factors());
        prop_assert_eq!(q.free_rank(), 0);

        let t = pic_zero_torsion(&orb, n).unwrap();
        let expected = BigInt::from(brute_pic0_torsion(&rs, n));
        prop_assert_eq!(&t.order(), &expected);
        let kummer = polygonal_presentation(&orb).unwrap().abelianization_mod_n(n);
        prop_assert_eq!(kummer.order(), Some(expected));
    }

    #[test]
    fn canonical_form_normalizes(
        rs in prop::collection::vec(1u64..7, 1..5),
        d in -10i64..10,
        a in prop::collection::vec(-20i64..20, 4),
    ) {
        let orb = line(&rs);
        let pic = picard_group(&orb).unwrap();
        let a = &a[..rs.len()];
        let c = pic.class(d, a).unwrap();
        let (d2, a2) = pic.canonical_form(&c);
        let mut carry = 0;
        for (i, &r) in rs.iter().enumerate() {
            let r = r as i64;
            prop_assert_eq!(a2[i], a[i].rem_euclid(r));
            carry += a[i].div_euclid(r);
        }
        prop_assert_eq!(d2, d + carry);
        prop_assert_eq!(pic.class(d2, &a2).unwrap(), c.clone());
        let deg = rs.iter().zip(a).fold(Rational64::from_integer(d), |acc, (&r, &x)| {
            acc + Rational64::new(x, r as i64)
        });
        prop_assert_eq!(pic.degree(&c), deg);
    }

    #[test]
    fn splitting_type_is_balanced_and_matches_sections(d in 1u64..9, k in -20i64..20) {
        let a = splitting_type(d, k);
        let w = d as i64 + k.abs();
        prop_assert!(satisfies_h0(d, k, &a, -w..=w));
        let expected: Vec<i64> = (0..d as i64).map(|t| (k - t).div_euclid(d as i64)).collect();
        let mut sorted = expected.clone();
        sorted.sort_unstable_by(|x, y| y.cmp(x));
        prop_assert_eq!(a, sorted);
    }

    #[test]
    fn shift_round_trip_and_degree(
        rs in prop::collection::vec(1u64..7, 1..4),
        rank in 1usize..4,
        split in prop::collection::vec(-5i64..5, 3),
        nums in prop::collection::vec(0i64..36, 9),
        shifts in prop::collection::vec(-12i64..12, 3),
    ) {
        let orb = line(&rs);
        let weights: Vec<Vec<QmodZ>> = rs
            .iter()
            .enumerate()
            .map(|(i, &r)| (0..rank).map(|s| QmodZ::new(nums[3 * i + s], r as i64)).collect())
            .collect();
        let e = ParabolicBundleData::new(orb, split[..rank].to_vec(), weights);
        let l: Vec<Rational64> = rs
            .iter()
            .zip(&shifts)
            .map(|(&r, &x)| Rational64::new(x, r as i64))
            .collect();
        let neg: Vec<Rational64> = l.iter().map(|x| -x).collect();
        let s = shift(&e, &l).unwrap();
        prop_assert_eq!(shift(&s, &neg).unwrap(), e.clone());
        let total: Rational64 = l.iter().sum();
        prop_assert_eq!(par_degree(&s), par_degree(&e) + total * rank as i64);
        prop_assert_eq!(par_degree(&e.direct_sum(&s).unwrap()), par_degree(&e) + par_degree(&s));
    }

    #[test]
    fn covers_and_their_bundles(
        which in 0usize..5,
        n in 2usize..5,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 4),
        mults in prop::collection::vec(1u64..3, 4),
        h_pick in any::<prop::sample::Index>(),
        l_coeffs in prop::collection::vec(-4i64..5, 12),
    ) {
        let g = corpus()[which].clone();
        let mut tuple: Vec<usize> = picks[..n - 1].iter().map(|p| p.index(g.order())).collect();
        let prod = g.mul_all(&tuple);
        tuple.push(g.inverse(prod));
        let orders: Vec<u64> = tuple
            .iter()
            .zip(&mults)
            .map(|(&x, &m)| g.element_order(x) as u64 * m)
            .collect();
        let base = line(&orders);
        let Ok(m) = validate_monodromy(&base, g.clone(), &tuple) else {
            return Ok(());
        };
        let subgroups = g.all_subgroups();
        let h = subgroups[h_pick.index(subgroups.len())].clone();
        let Ok(cover) = TameCover::new(m, h.clone()) else {
            return Ok(());
        };
        let geo = cover_geometry(&cover);
        for (i, &r) in orders.iter().enumerate() {
            let total: u64 = geo.points_over(i).map(|j| geo.ell[j]).sum();
            prop_assert_eq!(total as usize, cover.degree());
            for j in geo.points_over(i) {
                prop_assert_eq!(geo.s[j] * geo.ell[j], r);
            }
        }
        prop_assert_eq!(coarse_genus(&cover), geo.genus_upstairs as i64);
        if cover.is_galois() {
            let deck = deck_action_on_points(&cover, &geo).unwrap();
            prop_assert_eq!(deck.deck_group().order(), cover.degree());
        }
        if geo.genus_upstairs != 0 {
            return Ok(());
        }
        // dual-path agreement and degree 0 for every character of H
        for chi in Character1D::all(&g, &h) {
            let v = induce(&g, &chi);
            let e = rh_realize(&cover, &v);
            prop_assert!(e.is_ok(), "{:?}", e.err());
            let e = e.unwrap();
            prop_assert_eq!(e.rank(), cover.degree());
            prop_assert!(par_degree(&e).is_zero());
        }
        // pushforward preserves parabolic degree
        let up = &geo.upstairs;
        let a = &l_coeffs[..up.len().min(l_coeffs.len())];
        if a.len() == up.len() {
            let lb = ParabolicLineBundle::from_coefficients(up, l_coeffs[up.len() % 12], a).unwrap();
            let pushed = pushforward(&cover, &geo, &lb).unwrap();
            prop_assert_eq!(pushed.rank(), cover.degree());
            prop_assert_eq!(par_degree(&pushed), par_degree(&line_bundle_data(&lb)));
        }
    }

    #[test]
    fn characters_and_local_exponents(which in 0usize..5, h_pick in any::<prop::sample::Index>(), c_pick in any::<prop::sample::Index>()) {
        let g = corpus()[which].clone();
        let subgroups = g.all_subgroups();
        let h = &subgroups[h_pick.index(subgroups.len())];
        let chars = Character1D::all(&g, h);
        let chi = &chars[c_pick.index(chars.len())];
        let v = induce(&g, chi);
        prop_assert!(v.is_multiplicative());
        let cv = character(&v);
        prop_assert!(cv.is_class_function(&g));
        for x in 0..g.order() {
            let ex = local_exponents(&v, x);
            prop_assert_eq!(ex.len(), v.dim());
            let mut sum = CycloNumber::zero(cv.level());
            for e in ex {
                sum = sum.add(&CycloNumber::from_qmodz(cv.level(), e));
            }
            prop_assert_eq!(&sum, cv.value(x));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn closure_is_within_the_irreducibles(which in 0usize..5, h_pick in any::<prop::sample::Index>(), c_pick in any::<prop::sample::Index>()) {
        let g = corpus()[which].clone();
        let subgroups = g.all_subgroups();
        let h = &subgroups[h_pick.index(subgroups.len())];
        let chars = Character1D::all(&g, h);
        let v = induce(&g, &chars[c_pick.index(chars.len())]);
        let closure = match find_finite_relation(&v, 4) {
            Ok(r) => r.closure,
            Err(orbibundle::parabolic::ParabolicError::SearchExhausted(c)) => *c,
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(closure.constituents.len() <= closure.irreducible_count);
        prop_assert!(closure.constituents.iter().all(|&i| i < closure.irreducible_count));
        for (k, m) in closure.multiplicities.iter().enumerate() {
            prop_assert_eq!(m.len(), closure.irreducible_count);
            prop_assert!(k > 0 || m.iter().sum::<u64>() == 1);
        }
    }
}
