//! End-to-end acceptance run: one line per criterion, non-zero exit if any
//! fails. Runs without the test harness so the lines are always printed.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orbibundle::abgroup::{FpAbelianGroup, QmodZ};
use orbibundle::covers::{cover_geometry, validate_monodromy, TameCover};
use orbibundle::example::s3_example;
use orbibundle::finitegroup::FiniteGroup;
use orbibundle::orbifold::{pic_zero_torsion, picard_group, polygonal_presentation, OrbifoldCurve};
use orbibundle::parabolic::{
    format_polynomial, geometric_weights, par_degree, rh_realize, splitting_type, tannakian_weights,
};
use orbibundle::reptheory::{
    character, induce, inner_product, little_groups_irreducibles, mackey_decompose,
    monomial_irreducibles, Character1D,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn line(rs: &[u64]) -> OrbifoldCurve {
    let labels: Vec<String> = (0..rs.len()).map(|i| format!("p{i}")).collect();
    let pts: Vec<(&str, u64)> = labels
        .iter()
        .map(|s| s.as_str())
        .zip(rs.iter().copied())
        .collect();
    OrbifoldCurve::line(&pts).unwrap()
}

fn random_orders(rng: &mut ChaCha8Rng) -> Vec<u64> {
    let n = rng.gen_range(0..=4);
    (0..n).map(|_| rng.gen_range(1..=6)).collect()
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

/// Prime-power decomposition of `⊕ ℤ/dᵢ`, sorted.
fn elementary_divisors(ds: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut out = Vec::new();
    for mut d in ds {
        let mut p = 2;
        while d > 1 {
            let mut q = 1;
            while d % p == 0 {
                d /= p;
                q *= p;
            }
            if q > 1 {
                out.push(q);
            }
            p += 1;
        }
    }
    out.sort_unstable();
    out
}

fn semidirect(a: &[u64], h: FiniteGroup, action: &[Vec<Vec<i64>>]) -> FiniteGroup {
    FiniteGroup::semidirect_product(&FpAbelianGroup::from_invariants(a), &h, action).unwrap()
}

/// Split extensions `A ⋊ H` of the corpus.
fn semidirect_corpus() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    vec![
        (
            "Z/3 x| Z/2",
            Arc::new(semidirect(&[3], FiniteGroup::cyclic(2), &[vec![vec![-1]]])),
        ),
        (
            "Z/3 x| Z/4",
            Arc::new(semidirect(&[3], FiniteGroup::cyclic(4), &[vec![vec![-1]]])),
        ),
        (
            "Z/5 x| Z/2",
            Arc::new(semidirect(&[5], FiniteGroup::cyclic(2), &[vec![vec![-1]]])),
        ),
        (
            "Z/5 x| Z/4",
            Arc::new(semidirect(&[5], FiniteGroup::cyclic(4), &[vec![vec![2]]])),
        ),
        (
            "Z/7 x| Z/3",
            Arc::new(semidirect(&[7], FiniteGroup::cyclic(3), &[vec![vec![2]]])),
        ),
        (
            "(Z/2)^2 x| Z/3",
            Arc::new(semidirect(
                &[2, 2],
                FiniteGroup::cyclic(3),
                &[vec![vec![0, 1], vec![1, 1]]],
            )),
        ),
        (
            "(Z/2)^2 x| S3",
            Arc::new(semidirect(
                &[2, 2],
                FiniteGroup::symmetric(3),
                &[vec![vec![0, 1], vec![1, 0]], vec![vec![0, 1], vec![1, 1]]],
            )),
        ),
        (
            "Z/6 x| Z/2",
            Arc::new(semidirect(&[6], FiniteGroup::cyclic(2), &[vec![vec![-1]]])),
        ),
    ]
}

fn corpus() -> Vec<(String, Arc<FiniteGroup>)> {
    let mut out: Vec<(String, Arc<FiniteGroup>)> = Vec::new();
    for n in [1, 2, 3, 4, 5, 6, 8, 12] {
        out.push((format!("C{n}"), Arc::new(FiniteGroup::cyclic(n))));
    }
    for n in [4, 5, 6, 8, 12] {
        out.push((format!("D{n}"), Arc::new(FiniteGroup::dihedral(n))));
    }
    out.push(("S3".into(), Arc::new(FiniteGroup::symmetric(3))));
    out.push(("S4".into(), Arc::new(FiniteGroup::symmetric(4))));
    out.push(("A4".into(), Arc::new(FiniteGroup::alternating4())));
    for (name, g) in semidirect_corpus() {
        out.push((name.to_string(), g));
    }
    out
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..200 {
        let rs = random_orders(&mut rng);
        let pic = picard_group(&line(&rs)).map_err(|e| e.to_string())?;
        let q = pic.quotient_by_hyperplane();
        let got = elementary_divisors(q.invariant_factors().iter().map(|d| d.try_into().unwrap()));
        let want = elementary_divisors(rs.iter().copied().filter(|&r| r > 1));
        ensure(q.free_rank() == 0 && got == want, || {
            format!("r = {rs:?}: Pic/<f> has elementary divisors {got:?}, expected {want:?}")
        })?;
        let order: BigInt = rs.iter().product::<u64>().into();
        ensure(q.order() == Some(order), || {
            format!("r = {rs:?}: wrong order")
        })?;
    }
    Ok("200 random orbifolds".into())
}

fn criterion_2() -> Outcome {
    let orb = OrbifoldCurve::line(&[("1", 3), ("-1", 3)]).unwrap();
    let t = pic_zero_torsion(&orb, 3).map_err(|e| e.to_string())?;
    let factors: Vec<String> = t
        .group
        .invariant_factors()
        .iter()
        .map(|d| d.to_string())
        .collect();
    ensure(t.group.free_rank() == 0 && factors == ["3"], || {
        format!("Pic0[3] has invariant factors {factors:?}")
    })?;
    Ok("Pic0[3] = Z/3".into())
}

fn criterion_3() -> Outcome {
    let ex = s3_example(6);
    for c in &ex.checks {
        ensure(c.pass, || format!("{}: {}", c.name, c.detail))?;
    }
    let half = vec![QmodZ::ZERO, QmodZ::new(1, 2)];
    let third = vec![QmodZ::new(1, 3), QmodZ::new(2, 3)];
    ensure(ex.bundle.rank() == 2, || "rank".into())?;
    ensure(ex.self_inner_product == 1, || "not irreducible".into())?;
    ensure(par_degree(&ex.bundle).is_zero(), || "degree".into())?;
    ensure(
        ex.bundle.weights_sorted() == vec![half.clone(), half, third],
        || "weights".into(),
    )?;
    ensure(ex.group_order == 6, || "deck group".into())?;
    let rel = ex.relation.as_ref().ok_or("no relation")?;
    ensure(
        format_polynomial(&rel.p) == "x^3" && format_polynomial(&rel.q) == "x^2 + 2x",
        || "relation".into(),
    )?;
    Ok(format!("{} checks", ex.checks.len()))
}

fn criterion_4() -> Outcome {
    let mut count = 0usize;
    let mut groups = 0usize;
    for (name, g) in corpus() {
        if g.order() > 24 {
            continue;
        }
        groups += 1;
        let subgroups = g.all_subgroups();
        let chars: Vec<Vec<Character1D>> =
            subgroups.iter().map(|h| Character1D::all(&g, h)).collect();
        for c1 in chars.iter().flatten() {
            for c2 in chars.iter().flatten() {
                mackey_decompose(&g, c1, c2).map_err(|e| {
                    format!(
                        "{name}: {e} for subgroups of order {} and {}",
                        c1.subgroup().order(),
                        c2.subgroup().order()
                    )
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} character pairs over {groups} groups"))
}

/// Bundles `⊕ O(aⱼ)` with `Σ max(aⱼ + m + 1, 0) = max(k + d·m + 1, 0)` on
/// the window, searched over all non-increasing sequences in range.
fn brute_splittings(d: i64, k: i64) -> Vec<Vec<i64>> {
    let lo = k.div_euclid(d) - 1;
    let hi = -((-k).div_euclid(d)) + 1;
    let w = d + k.abs();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(d: i64, k: i64, lo: i64, hi: i64, w: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() as i64 == d {
            let ok = cur.iter().sum::<i64>() == k + 1 - d
                && (-w..=w).all(|m| {
                    cur.iter().map(|&a| (a + m + 1).max(0)).sum::<i64>() == (k + d * m + 1).max(0)
                });
            if ok {
                out.push(cur.clone());
            }
            return;
        }
        let top = cur.last().copied().unwrap_or(hi);
        for a in (lo..=top).rev() {
            cur.push(a);
            go(d, k, lo, hi, w, cur, out);
            cur.pop();
        }
    }
    go(d, k, lo, hi, w, &mut cur, &mut out);
    out
}

fn criterion_5() -> Outcome {
    let mut cases = 0;
    for d in 1..=6u64 {
        for k in -12..=12i64 {
            let found = brute_splittings(d as i64, k);
            ensure(found.len() == 1, || {
                format!("d = {d}, k = {k}: {} solutions", found.len())
            })?;
            let got = splitting_type(d, k);
            ensure(got == found[0], || {
                format!("d = {d}, k = {k}: solver {got:?}, search {:?}", found[0])
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

/// Tuples `(g₁..gₙ)` of non-identity elements with product one generating
/// `g`, one per simultaneous-conjugacy class.
fn tuples(g: &FiniteGroup, n: usize) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut prefix = vec![1usize; n - 1];
    let total = (g.order() - 1).pow(n as u32 - 1);
    for mut code in 0..total {
        for slot in prefix.iter_mut() {
            *slot = 1 + code % (g.order() - 1);
            code /= g.order() - 1;
        }
        let last = g.inverse(g.mul_all(&prefix));
        if last == g.identity() {
            continue;
        }
        let mut t = prefix.clone();
        t.push(last);
        let canon = (0..g.order())
            .map(|x| t.iter().map(|&y| g.conjugate(y, x)).collect::<Vec<_>>())
            .min()
            .unwrap();
        if !seen.insert(canon.clone()) {
            continue;
        }
        if g.subgroup(&canon).order() == g.order() {
            out.push(canon);
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let mut realized = 0usize;
    let mut covers = 0usize;
    for (name, g) in corpus() {
        if g.order() == 1 {
            continue;
        }
        let subgroups = g.all_subgroups();
        for n in 2..=4 {
            for t in tuples(&g, n) {
                let rs: Vec<u64> = t.iter().map(|&x| g.element_order(x) as u64).collect();
                let m = validate_monodromy(&line(&rs), g.clone(), &t).map_err(|e| e.to_string())?;
                for h in &subgroups {
                    let cover = TameCover::new(m.clone(), h.clone()).map_err(|e| e.to_string())?;
                    if cover_geometry(&cover).genus_upstairs != 0 {
                        continue;
                    }
                    covers += 1;
                    for chi in Character1D::all(&g, h) {
                        let v = induce(&g, &chi);
                        let tw = tannakian_weights(&cover, &v);
                        let gw =
                            geometric_weights(&cover, &v).map_err(|e| format!("{name}: {e}"))?;
                        ensure(tw == gw, || {
                            format!("{name}, tuple {t:?}: {tw:?} vs {gw:?}")
                        })?;
                        let e = rh_realize(&cover, &v)
                            .map_err(|e| format!("{name}, tuple {t:?}: {e}"))?;
                        ensure(par_degree(&e).is_zero(), || {
                            format!("{name}: nonzero degree")
                        })?;
                        realized += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{realized} representations over {covers} genus-0 covers"
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for _ in 0..50 {
        let rs = random_orders(&mut rng);
        let orb = line(&rs);
        let pres = polygonal_presentation(&orb).map_err(|e| e.to_string())?;
        for n in [2u64, 3, 4, 6] {
            let t = pic_zero_torsion(&orb, n)
                .map_err(|e| e.to_string())?
                .order();
            let k = pres.abelianization_mod_n(n).order();
            let brute = BigInt::from(brute_pic0_torsion(&rs, n));
            ensure(k.as_ref() == Some(&t) && t == brute, || {
                format!(
                    "r = {rs:?}, n = {n}: Pic0[n] {t}, abelianization {k:?}, enumeration {brute}"
                )
            })?;
        }
    }
    Ok("50 random orbifolds, n in {2, 3, 4, 6}".into())
}

fn criterion_8() -> Outcome {
    let mut groups = 0;
    for (name, g) in semidirect_corpus() {
        let irr = little_groups_irreducibles(&g, |s| {
            monomial_irreducibles(s).expect("monomial stabilizer")
        })
        .map_err(|e| format!("{name}: {e}"))?;
        let total: usize = irr.iter().map(|r| r.dim() * r.dim()).sum();
        ensure(total == g.order(), || {
            format!("{name}: sum of squares {total}")
        })?;
        let chars: Vec<_> = irr.iter().map(character).collect();
        for (i, a) in chars.iter().enumerate() {
            for (j, b) in chars.iter().enumerate() {
                let ip = inner_product(a, b).map_err(|e| e.to_string())?;
                ensure(ip == i64::from(i == j), || {
                    format!("{name}: <{i},{j}> = {ip}")
                })?;
            }
        }
        groups += 1;
    }
    Ok(format!("{groups} split extensions"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("Picard exact sequence", criterion_1, Duration::from_secs(1)),
        (
            "Pic0 torsion of (1,-1; 3,3)",
            criterion_2,
            Duration::from_millis(100),
        ),
        (
            "symmetric-group example end to end",
            criterion_3,
            Duration::from_secs(1),
        ),
        (
            "Mackey soundness over the corpus",
            criterion_4,
            Duration::from_secs(60),
        ),
        (
            "splitting type against search",
            criterion_5,
            Duration::from_secs(5),
        ),
        (
            "dual-path weight agreement",
            criterion_6,
            Duration::from_secs(120),
        ),
        ("Kummer consistency", criterion_7, Duration::from_secs(5)),
        (
            "little-groups completeness",
            criterion_8,
            Duration::from_secs(10),
        ),
    ];
    let mut failures = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let (tag, detail) = match result {
            Ok(d) if elapsed <= *limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; too slow")),
            Err(e) => ("FAIL", e),
        };
        if tag == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {} [{tag}] {name}: {detail} ({:.3} s, limit {} s)",
            i + 1,
            elapsed.as_secs_f64(),
            limit.as_secs_f64()
        );
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
