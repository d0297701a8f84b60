use std::sync::Arc;

use anyhow::{anyhow, Context, Result};
use serde_json::{json, Value};

use orbibundle::abgroup::{format_rational, FpAbelianGroup, QmodZ};
use orbibundle::covers::{coarse_genus, cover_geometry, deck_action_on_points};
use orbibundle::example::s3_example;
use orbibundle::orbifold::{
    pic_zero_torsion, picard_group, polygonal_presentation, OrbifoldCurve, PicGenerator,
};
use orbibundle::parabolic::{
    find_finite_relation, format_polynomial, line_bundle_data, par_degree, pushforward,
    ParabolicBundleData, ParabolicError, ParabolicLineBundle,
};
use orbibundle::reptheory::{character, induce, mackey_summands, tensor, Character, Character1D};

use crate::input::{self, CoverSpec, MackeySpec, PushSpec, RepSpec};
use crate::report::Report;

pub struct Options {
    pub max_order: usize,
    pub max_power: usize,
    pub torsion: Vec<u64>,
}

fn factors(g: &FpAbelianGroup) -> Vec<String> {
    let mut out = vec!["Z".to_string(); g.free_rank()];
    out.extend(g.invariant_factors().iter().map(|d| format!("Z/{d}")));
    if out.is_empty() {
        out.push("0".to_string());
    }
    out
}

fn weights_json(w: &[QmodZ]) -> Value {
    Value::Array(w.iter().map(|q| Value::String(q.to_string())).collect())
}

pub fn bundle_json(b: &ParabolicBundleData) -> Value {
    let mut weights = serde_json::Map::new();
    for (p, w) in b.orbifold().points().iter().zip(b.weights_sorted()) {
        weights.insert(p.label.clone(), weights_json(&w));
    }
    json!({
        "rank": b.rank(),
        "splitting": b.splitting_sorted(),
        "weights": weights,
        "par_degree": format_rational(&par_degree(b)),
    })
}

fn orbifold_json(o: &OrbifoldCurve) -> Value {
    serde_json::to_value(o).expect("orbifold serializes")
}

fn character_json(g: &orbibundle::finitegroup::FiniteGroup, chi: &Character1D) -> Value {
    let sub = chi.subgroup();
    let mut values = serde_json::Map::new();
    for &x in sub.generators() {
        values.insert(x.to_string(), Value::String(chi.value(x).to_string()));
    }
    json!({
        "H": sub.generators(),
        "order": sub.order(),
        "chi": values,
        "dim": g.order() / sub.order(),
    })
}

pub fn pic(text: &str, opts: &Options) -> Result<Report> {
    let orb: OrbifoldCurve = input::parse(text)?;
    let mut report = Report::new(
        "pic",
        json!({ "orbifold": orbifold_json(&orb), "torsion": opts.torsion }),
    );
    let pic = picard_group(&orb).context("Picard group")?;
    let quotient = pic.quotient_by_hyperplane();
    let torsion: Vec<u64> = if opts.torsion.is_empty() {
        let mut rs: Vec<u64> = orb.orders().into_iter().filter(|&r| r > 1).collect();
        rs.sort_unstable();
        rs.dedup();
        rs
    } else {
        opts.torsion.clone()
    };

    let degrees: serde_json::Map<String, Value> = pic
        .generator_labels()
        .iter()
        .zip(pic.degree_map())
        .map(|(g, d)| {
            let name = match g {
                PicGenerator::Root(i) => format!("N_{}", orb.label(*i)),
                PicGenerator::Hyperplane => "f".to_string(),
            };
            (name, Value::String(format_rational(d)))
        })
        .collect();

    let presentation = polygonal_presentation(&orb)?;
    let mut torsion_json = Vec::new();
    for &n in &torsion {
        let t = pic_zero_torsion(&orb, n)?;
        let generators: Vec<Value> = t
            .images
            .iter()
            .map(|x| {
                let (d, a) = pic.canonical_form(x);
                json!({ "d": d, "a": a })
            })
            .collect();
        let order = t.order();
        torsion_json.push(json!({
            "n": n,
            "group": factors(&t.group),
            "order": order.to_string(),
            "generators": generators,
        }));
        let kummer = presentation.abelianization_mod_n(n).order();
        report.check(
            &format!("Kummer count for n = {n}"),
            kummer.as_ref() == Some(&order),
            format!(
                "|Pic0[{n}]| = {order}, |ab (x) Z/{n}| = {}",
                kummer
                    .map(|k| k.to_string())
                    .unwrap_or_else(|| "inf".into())
            ),
        );
    }

    let rs: Vec<u64> = orb.orders().into_iter().filter(|&r| r > 1).collect();
    let expected = FpAbelianGroup::from_invariants(&rs);
    report.check(
        "Pic/<f> is the sum of Z/r over the orbifold points",
        quotient.free_rank() == 0 && quotient.invariant_factors() == expected.invariant_factors(),
        format!("Pic/<f> = {}", factors(&quotient).join(" + ")),
    );
    report.check(
        "Pic has rank 1",
        pic.group().free_rank() == 1,
        format!("Pic = {}", factors(pic.group()).join(" + ")),
    );
    let mut roundtrip = true;
    for k in 0..pic.group().generator_count() {
        let x = pic.group().generator(k);
        let (d, a) = pic.canonical_form(&x);
        roundtrip &= pic.class(d, &a).map(|y| y == x).unwrap_or(false);
        let expect = orb.orders().iter().zip(&a).fold(
            num_rational::Rational64::from_integer(d),
            |acc, (&r, &ai)| acc + num_rational::Rational64::new(ai, r as i64),
        );
        roundtrip &= pic.degree(&x) == expect;
    }
    report.check(
        "canonical forms round-trip and give the degree",
        roundtrip,
        String::new(),
    );
    let zero = pic.pic_zero();
    report.check(
        "Pic0 is finite",
        zero.group.is_finite(),
        format!("Pic0 = {}", factors(&zero.group).join(" + ")),
    );

    report.results = json!({
        "pic": factors(pic.group()),
        "quotient_by_f": factors(&quotient),
        "pic0": factors(&zero.group),
        "degrees": degrees,
        "torsion": torsion_json,
    });
    Ok(report)
}

pub fn cover(text: &str, opts: &Options) -> Result<Report> {
    let req: CoverSpec = input::parse(text)?;
    let inputs: Value = serde_json::from_str(text)?;
    let cover = req.build(opts.max_order)?;
    let mut report = Report::new("cover", inputs);
    let geo = cover_geometry(&cover);
    let base = cover.base();
    let g = cover.group();

    report.check(
        "monodromy tuple is valid",
        true,
        format!(
            "product 1, orders divide r, generates a group of order {}",
            g.order()
        ),
    );
    let mut sums_ok = true;
    let mut s_ok = true;
    for i in 0..base.len() {
        let total: u64 = geo.points_over(i).map(|j| geo.ell[j]).sum();
        sums_ok &= total == cover.degree() as u64;
        s_ok &= geo
            .points_over(i)
            .all(|j| geo.s[j] * geo.ell[j] == base.points()[i].r);
    }
    report.check(
        "ramification indices over each point sum to the degree",
        sums_ok,
        format!("degree {}", cover.degree()),
    );
    report.check("s * ell = r at every upstairs point", s_ok, String::new());
    let cg = coarse_genus(&cover);
    report.check(
        "Riemann-Hurwitz genus matches the cycle count",
        cg == geo.genus_upstairs as i64,
        format!("genus {}", geo.genus_upstairs),
    );

    let mut deck_json = Value::Null;
    if cover.is_galois() {
        let deck = deck_action_on_points(&cover, &geo).context("deck action")?;
        let dg = deck.deck_group();
        let commutes = deck.point_perms.iter().all(|p| {
            p.iter()
                .enumerate()
                .all(|(j, &k)| geo.alpha[j] == geo.alpha[k])
        });
        report.check(
            "deck transformations preserve the fibers",
            commutes,
            String::new(),
        );
        report.check(
            "deck group order equals the degree",
            dg.order() == cover.degree(),
            format!("order {}", dg.order()),
        );
        deck_json = json!({
            "order": dg.order(),
            "point_permutations": deck.point_perms,
        });
    }

    let points: Vec<Value> = (0..geo.alpha.len())
        .map(|j| {
            json!({
                "label": geo.upstairs.label(j),
                "over": base.label(geo.alpha[j]),
                "ell": geo.ell[j],
                "s": geo.s[j],
                "local_monodromy": geo.local_monodromy[j],
            })
        })
        .collect();
    report.results = json!({
        "group_order": g.order(),
        "degree": cover.degree(),
        "galois": cover.is_galois(),
        "base": orbifold_json(base),
        "genus": geo.genus_upstairs,
        "upstairs": orbifold_json(&geo.upstairs),
        "points": points,
        "deck": deck_json,
    });
    Ok(report)
}

pub fn mackey(text: &str, opts: &Options) -> Result<Report> {
    let req: MackeySpec = input::parse(text)?;
    let inputs: Value = serde_json::from_str(text)?;
    let g = Arc::new(req.group.build(opts.max_order)?);
    let chi1 = input::character(&g, &req.h1, &req.chi1, "1")?;
    let chi2 = input::character(&g, &req.h2, &req.chi2, "2")?;
    let mut report = Report::new("mackey", inputs);

    let summands = mackey_summands(&g, &chi1, &chi2);
    let lhs = character(&tensor(&induce(&g, &chi1), &induce(&g, &chi2))?);
    let mut rhs = Character::zero(&g);
    let mut dims = 0;
    for s in &summands {
        let ind = induce(&g, &s.character);
        dims += ind.dim();
        rhs = rhs.add(&character(&ind));
    }
    let d1 = g.order() / chi1.subgroup().order();
    let d2 = g.order() / chi2.subgroup().order();
    report.check(
        "character of the tensor product equals the sum over double cosets",
        lhs == rhs,
        format!("{} summands", summands.len()),
    );
    report.check(
        "dimensions add up",
        dims == d1 * d2,
        format!("{d1} * {d2} = {dims}"),
    );
    report.check(
        "one summand per double coset",
        summands.len() == g.double_cosets(chi1.subgroup(), chi2.subgroup()).len(),
        String::new(),
    );

    let list: Vec<Value> = summands
        .iter()
        .map(|s| {
            let mut v = character_json(&g, &s.character);
            v["g"] = json!(s.g);
            v
        })
        .collect();
    report.results = json!({
        "group_order": g.order(),
        "tensor_dim": d1 * d2,
        "summands": list,
    });
    Ok(report)
}

pub fn push(text: &str, opts: &Options) -> Result<Report> {
    let req: PushSpec = input::parse(text)?;
    let inputs: Value = serde_json::from_str(text)?;
    let cover = req.cover.build(opts.max_order)?;
    let geo = cover_geometry(&cover);
    let up = &geo.upstairs;
    let mut a = vec![0i64; up.len()];
    for (label, &k) in &req.class.a {
        let j = up
            .position(label)
            .ok_or_else(|| anyhow!("field `class.a.{label}`: no upstairs point with this label"))?;
        a[j] = k;
    }
    let line =
        ParabolicLineBundle::from_coefficients(up, req.class.d, &a).context("field `class`")?;
    let line_data = line_bundle_data(&line);
    let mut report = Report::new("push", inputs);

    let pushed = match pushforward(&cover, &geo, &line) {
        Ok(b) => Some(b),
        Err(ParabolicError::UnsupportedGenus(g)) => {
            return Err(anyhow!(
                "upstairs curve has genus {g}; pushforward needs genus 0"
            ))
        }
        Err(e) => {
            report.check(
                "degree drops match the eigenvalue formula",
                false,
                e.to_string(),
            );
            None
        }
    };
    if let Some(b) = &pushed {
        report.check(
            "degree drops match the eigenvalue formula",
            true,
            String::new(),
        );
        report.check(
            "rank equals the degree of the cover",
            b.rank() == cover.degree(),
            format!("rank {}", b.rank()),
        );
        report.check(
            "parabolic degree is preserved",
            par_degree(b) == par_degree(&line_data),
            format!(
                "{} upstairs, {} downstairs",
                format_rational(&par_degree(&line_data)),
                format_rational(&par_degree(b))
            ),
        );
    }
    let (d, coeffs) = line.canonical_form();
    report.results = json!({
        "upstairs": orbifold_json(up),
        "line_bundle": {
            "canonical_form": { "d": d, "a": coeffs },
            "bundle": bundle_json(&line_data),
        },
        "pushforward": pushed.as_ref().map(bundle_json),
    });
    Ok(report)
}

pub fn finite(text: &str, opts: &Options) -> Result<Report> {
    let req: RepSpec = input::parse(text)?;
    let inputs: Value = serde_json::from_str(text)?;
    let g = Arc::new(req.group.build(opts.max_order)?);
    let chi = input::character(&g, &req.h, &req.chi, "")?;
    let rep = induce(&g, &chi);
    let mut report = Report::new("finite", inputs);
    let found = find_finite_relation(&rep, opts.max_power);
    let closure = match &found {
        Ok(rel) => rel.closure.clone(),
        Err(ParabolicError::SearchExhausted(c)) => (**c).clone(),
        Err(e) => return Err(anyhow!("{e}")),
    };
    report.check(
        "constituents of the tensor powers are irreducibles of the group",
        closure.constituents.len() <= closure.irreducible_count,
        format!(
            "{} of {}",
            closure.constituents.len(),
            closure.irreducible_count
        ),
    );
    let relation = found.as_ref().ok();
    report.check(
        &format!("a relation P = Q exists with deg P <= {}", opts.max_power),
        relation.is_some(),
        relation
            .map(|r| format!("{} = {}", format_polynomial(&r.p), format_polynomial(&r.q)))
            .unwrap_or_else(|| "none found".into()),
    );
    if let Some(r) = relation {
        let chi_v = character(&rep);
        let eval = |c: &[u64]| {
            let mut acc = Character::zero(&g);
            let mut power = character(&induce(&g, &Character1D::trivial(&g, &g.whole())));
            for (k, &ck) in c.iter().enumerate() {
                if k > 0 {
                    power = power.mul(&chi_v);
                }
                acc = acc.add(&power.scale(ck as i64));
            }
            acc
        };
        report.check(
            "P and Q have equal characters",
            eval(&r.p) == eval(&r.q),
            String::new(),
        );
    }
    report.results = json!({
        "dim": rep.dim(),
        "P": relation.map(|r| format_polynomial(&r.p)),
        "Q": relation.map(|r| format_polynomial(&r.q)),
        "closure": {
            "max_power": closure.max_power,
            "multiplicities": closure.multiplicities,
            "constituents": closure.constituents,
            "irreducible_count": closure.irreducible_count,
            "stabilized": closure.stabilized,
        },
    });
    Ok(report)
}

pub fn example_s3(opts: &Options) -> Result<Report> {
    let ex = s3_example(opts.max_power);
    let mut report = Report::new("example-s3", json!({ "max_power": opts.max_power }));
    report.results = json!({
        "upstairs": orbifold_json(&ex.upstairs),
        "pic0_3_order": ex.torsion_order,
        "group_order": ex.group_order,
        "self_inner_product": ex.self_inner_product,
        "bundle": bundle_json(&ex.bundle),
        "pushforward_of_line_bundle": bundle_json(&ex.pushed_line),
        "relation": ex.relation.as_ref().map(|r| json!({
            "P": format_polynomial(&r.p),
            "Q": format_polynomial(&r.q),
        })),
    });
    report.checks = ex.checks.into_iter().map(Into::into).collect();
    Ok(report)
}
