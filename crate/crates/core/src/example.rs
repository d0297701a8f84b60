//! The rank-2 bundle over `(0, 1, ∞; 2, 2, 3)` built from a double cover of
//! the line branched at 0 and 1, end to end, with every intermediate claim
//! recorded as a named check.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::Zero;

use crate::abgroup::{Embedding, QmodZ};
use crate::covers::{
    coarse_genus, cover_geometry, deck_action_on_points, extend_orbifold, validate_monodromy,
    CoverGeometry, TameCover,
};
use crate::finitegroup::FiniteGroup;
use crate::orbifold::{pic_zero_torsion, picard_group, OrbifoldCurve};
use crate::parabolic::{
    find_finite_relation, format_polynomial, line_bundle_data, par_degree, pushforward, rh_realize,
    tannakian_weights, FiniteRelation, ParabolicBundleData, ParabolicLineBundle,
};
use crate::reptheory::{character, induce, inner_product, Character1D};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct S3Example {
    pub upstairs: OrbifoldCurve,
    pub torsion_order: u64,
    pub group_order: usize,
    /// `χ·χ` inner product of the realized representation.
    pub self_inner_product: i64,
    pub bundle: ParabolicBundleData,
    pub pushed_line: ParabolicBundleData,
    pub relation: Option<FiniteRelation>,
    pub checks: Vec<Check>,
}

impl S3Example {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn fmt_weights(w: &[QmodZ]) -> String {
    let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Runs the whole construction. Structural failures panic; everything the
/// construction is meant to establish is reported as a check.
pub fn s3_example(max_power: usize) -> S3Example {
    let mut checks = Vec::new();

    // the double cover y² = x/(x−1)
    let base = OrbifoldCurve::line(&[("0", 2), ("1", 2)]).expect("base");
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let m = validate_monodromy(&base, z2, &[1, 1]).expect("double cover");
    let double = TameCover::from_generators(m, &[]).expect("regular cover");
    let geo = cover_geometry(&double);
    checks.push(Check::new(
        "double cover is a line branched at 0 and 1",
        geo.genus_upstairs == 0 && geo.ell == vec![2, 2] && coarse_genus(&double) == 0,
        format!("genus {}, ramification {:?}", geo.genus_upstairs, geo.ell),
    ));

    // enrich infinity with order 3
    let mut extra = BTreeMap::new();
    extra.insert("inf".to_string(), 3);
    let enriched = extend_orbifold(&double, &extra).expect("enrichment");
    let egeo = cover_geometry(&enriched);
    let over_inf: Vec<usize> = egeo.points_over(2).collect();
    checks.push(Check::new(
        "two order-3 points over infinity",
        over_inf.len() == 2 && over_inf.iter().all(|&j| egeo.ell[j] == 1 && egeo.s[j] == 3),
        format!("upstairs orders {:?}", egeo.upstairs.orders()),
    ));

    // Pic⁰[3] upstairs
    let upstairs = egeo.upstairs.clone();
    let pic = picard_group(&upstairs).expect("genus 0");
    let tors = pic_zero_torsion(&upstairs, 3).expect("genus 0");
    let torsion_order: u64 = tors.order().try_into().expect("small");
    let (ja, jb) = (over_inf[0], over_inf[1]);
    let diff = pic.group().sub(&pic.root(ja), &pic.root(jb));
    let emb = Embedding {
        group: tors.group.clone(),
        images: tors.images.clone(),
    };
    let generated = emb
        .preimage(pic.group(), &diff)
        .map(|x| tors.group.element_order(&x) == crate::abgroup::Order::Finite(3.into()))
        .unwrap_or(false);
    checks.push(Check::new(
        "Pic0[3] is cyclic of order 3",
        torsion_order == 3 && tors.group.invariant_factors().len() == 1,
        format!("order {torsion_order}"),
    ));
    checks.push(Check::new(
        "Pic0[3] is generated by the difference of the points over infinity",
        generated,
        String::new(),
    ));

    // deck group acting on Pic⁰[3]
    let deck = deck_action_on_points(&enriched, &egeo).expect("regular cover");
    let deck_group = deck.deck_group();
    let mats = deck
        .action_on_pic(&pic, &tors)
        .expect("deck preserves Pic0[3]");
    let swaps = deck.point_perms[deck.generators[0]][ja] == jb;
    checks.push(Check::new(
        "deck involution swaps the points over infinity",
        swaps,
        String::new(),
    ));
    checks.push(Check::new(
        "deck involution acts on Pic0[3] by inversion",
        mats.len() == 1 && (mats[0] == vec![vec![2]] || mats[0] == vec![vec![-1]]),
        format!("matrix {:?}", mats),
    ));
    let g =
        Arc::new(FiniteGroup::semidirect_product(&tors.group, &deck_group, &mats).expect("action"));
    let s3 = FiniteGroup::symmetric(3);
    checks.push(Check::new(
        "semidirect product is the symmetric group on 3 letters",
        g.order() == 6 && !g.is_abelian() && g.is_isomorphic_small(&s3),
        format!("order {}", g.order()),
    ));

    // the Galois closure over (0, 1, ∞; 2, 2, 3)
    let data = g.semidirect().expect("semidirect");
    let h = data.h_indices[deck_group.generators()[0]];
    let a = data.a_indices[1];
    let g0 = h;
    let g1 = g.mul(a, h);
    let ginf = g.inverse(g.mul(g0, g1));
    let tri = OrbifoldCurve::line(&[("0", 2), ("1", 2), ("inf", 3)]).expect("base");
    let closure = validate_monodromy(&tri, g.clone(), &[g0, g1, ginf]).expect("monodromy");
    let a_sub = g.subgroup(&[a]);
    let cover = TameCover::new(closure, a_sub.clone()).expect("cover");
    let cgeo: CoverGeometry = cover_geometry(&cover);
    checks.push(Check::new(
        "quotient by the normal subgroup of order 3 recovers the double cover",
        cgeo.genus_upstairs == 0 && cgeo.upstairs.orders() == egeo.upstairs.orders(),
        format!("upstairs orders {:?}", cgeo.upstairs.orders()),
    ));

    // the representation and its bundle
    let chi =
        Character1D::from_generator_values(&g, &a_sub, &[QmodZ::new(1, 3)]).expect("character");
    let v = induce(&g, &chi);
    let cv = character(&v);
    let self_ip = inner_product(&cv, &cv).unwrap_or(0);
    checks.push(Check::new(
        "representation is irreducible",
        self_ip == 1,
        format!("<chi,chi> = {self_ip}"),
    ));
    let bundle = rh_realize(&cover, &v);
    let geometric_ok = bundle.is_ok();
    checks.push(Check::new(
        "monodromy and pushforward weights agree",
        geometric_ok,
        match &bundle {
            Ok(_) => String::new(),
            Err(e) => e.to_string(),
        },
    ));
    let bundle = bundle.unwrap_or_else(|_| ParabolicBundleData::trivial(&tri, 2));
    let expected_weights = vec![
        vec![QmodZ::ZERO, QmodZ::new(1, 2)],
        vec![QmodZ::ZERO, QmodZ::new(1, 2)],
        vec![QmodZ::new(1, 3), QmodZ::new(2, 3)],
    ];
    let ws = bundle.weights_sorted();
    checks.push(Check::new(
        "rank 2",
        bundle.rank() == 2,
        format!("rank {}", bundle.rank()),
    ));
    checks.push(Check::new(
        "weights {0,1/2}, {0,1/2}, {1/3,2/3}",
        ws == expected_weights && tannakian_weights(&cover, &v) == expected_weights,
        ws.iter()
            .map(|w| fmt_weights(w))
            .collect::<Vec<_>>()
            .join(" "),
    ));
    checks.push(Check::new(
        "splitting {-1,-1}",
        bundle.splitting_sorted() == vec![-1, -1],
        format!("{:?}", bundle.splitting_sorted()),
    ));
    let pd = par_degree(&bundle);
    checks.push(Check::new(
        "parabolic degree 0",
        pd.is_zero(),
        format!("{pd}"),
    ));

    // the same bundle as the pushforward of −N_a + N_b along the double cover
    let mut coeffs = vec![0i64; upstairs.len()];
    coeffs[ja] = -1;
    coeffs[jb] = 1;
    let line = ParabolicLineBundle::from_coefficients(&upstairs, 0, &coeffs).expect("class");
    let line_data = line_bundle_data(&line);
    checks.push(Check::new(
        "the line bundle has parabolic degree 0",
        par_degree(&line_data) == Rational64::zero(),
        format!("canonical form {:?}", line.canonical_form()),
    ));
    let pushed = pushforward(&enriched, &egeo, &line).expect("genus 0");
    checks.push(Check::new(
        "pushforward of the line bundle equals the realized bundle",
        pushed.rank() == bundle.rank()
            && pushed.splitting_sorted() == bundle.splitting_sorted()
            && pushed.weights_sorted() == bundle.weights_sorted(),
        String::new(),
    ));

    // finiteness
    let relation = find_finite_relation(&v, max_power).ok();
    let (p, q) = relation
        .as_ref()
        .map(|r| (format_polynomial(&r.p), format_polynomial(&r.q)))
        .unwrap_or_default();
    checks.push(Check::new(
        "finiteness relation x^3 = x^2 + 2x",
        p == "x^3" && q == "x^2 + 2x",
        format!("{p} = {q}"),
    ));

    S3Example {
        upstairs,
        torsion_order,
        group_order: g.order(),
        self_inner_product: self_ip,
        bundle,
        pushed_line: pushed,
        relation,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        let ex = s3_example(6);
        for c in &ex.checks {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
    }
}
