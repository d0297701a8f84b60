//! Parabolic bundle data on genus-0 orbifold curves: line bundles from
//! Picard classes, pushforward along tame covers, realization of monomial
//! representations, and finiteness relations.
//!
//! A bundle is recorded as the splitting type of its underlying bundle and a
//! weight multiset at every marked point. Weights are the eigenvalue
//! exponents `e` of local monodromy (not `1 − e`).

use std::collections::BTreeSet;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

use crate::abgroup::{GroupElement, QmodZ};
use crate::covers::{cover_geometry, CoverError, CoverGeometry, TameCover};
use crate::finitegroup::Subgroup;
use crate::orbifold::{picard_group, OrbifoldCurve, OrbifoldError, PicGroup};
use crate::reptheory::{
    character, decompose_character, direct_sum, induce, local_exponents, mackey_decompose,
    monomial_irreducibles, Character, Character1D, MonomialRep, RepError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParabolicError {
    #[error("operation requires genus 0, got genus {0}")]
    UnsupportedGenus(u32),
    #[error("bundles live on different orbifolds")]
    OrbifoldMismatch,
    #[error("shift at point {0} has a denominator not dividing the point's order")]
    DenominatorMismatch(usize),
    #[error("weights at point {point} disagree: monodromy gives {tannakian:?}, pushforward gives {geometric:?}")]
    PathMismatch {
        point: usize,
        tannakian: Vec<QmodZ>,
        geometric: Vec<QmodZ>,
    },
    #[error("degree drops at point {0} disagree with the eigenvalue formula")]
    DegreeDropMismatch(usize),
    #[error("parabolic degree is {0}, expected 0")]
    NonzeroDegree(Rational64),
    #[error("representation is not induced from a character")]
    NotInduced,
    #[error("atoms have different Galois closures or bases")]
    ClosureMismatch,
    #[error("Mackey check failed: {0}")]
    MackeyCheck(String),
    #[error("no relation found up to power {}", .0.max_power)]
    SearchExhausted(Box<ClosureReport>),
    #[error("line bundle has {found} coefficients, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

impl From<OrbifoldError> for ParabolicError {
    fn from(e: OrbifoldError) -> Self {
        match e {
            OrbifoldError::UnsupportedGenus(g) => ParabolicError::UnsupportedGenus(g),
            OrbifoldError::WrongLength { expected, found } => {
                ParabolicError::WrongLength { expected, found }
            }
            _ => ParabolicError::OrbifoldMismatch,
        }
    }
}

/// A parabolic line bundle `c·f + Σ aⱼNⱼ` in canonical form (`0 ≤ aⱼ < rⱼ`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicLineBundle {
    orbifold: OrbifoldCurve,
    degree: i64,
    a: Vec<i64>,
}

impl ParabolicLineBundle {
    pub fn from_class(pic: &PicGroup, class: &GroupElement) -> Self {
        let (degree, a) = pic.canonical_form(class);
        ParabolicLineBundle {
            orbifold: pic.orbifold().clone(),
            degree,
            a,
        }
    }

    /// The class `d·f + Σ aⱼNⱼ`; the coefficients need not be reduced.
    pub fn from_coefficients(
        orb: &OrbifoldCurve,
        d: i64,
        a: &[i64],
    ) -> Result<Self, ParabolicError> {
        let pic = picard_group(orb)?;
        let class = pic.class(d, a)?;
        Ok(Self::from_class(&pic, &class))
    }

    pub fn orbifold(&self) -> &OrbifoldCurve {
        &self.orbifold
    }

    pub fn canonical_form(&self) -> (i64, &[i64]) {
        (self.degree, &self.a)
    }

    pub fn pic_class(&self, pic: &PicGroup) -> GroupElement {
        pic.class(self.degree, &self.a).expect("matching orbifold")
    }

    pub fn weights(&self) -> Vec<QmodZ> {
        self.a
            .iter()
            .zip(self.orbifold.points())
            .map(|(&a, p)| QmodZ::new(a, p.r as i64))
            .collect()
    }
}

/// Splitting type and weight multisets.
///
/// Entries are kept in slots: slot `s` of the splitting and slot `s` of each
/// weight list are treated as belonging together by `shift`. Construction
/// pairs non-decreasing weights with non-increasing splitting entries.
/// Equality compares multisets only.
#[derive(Debug, Clone)]
pub struct ParabolicBundleData {
    orbifold: OrbifoldCurve,
    splitting: Vec<i64>,
    weights: Vec<Vec<QmodZ>>,
}

impl PartialEq for ParabolicBundleData {
    fn eq(&self, other: &Self) -> bool {
        self.orbifold == other.orbifold
            && self.splitting_sorted() == other.splitting_sorted()
            && self.weights_sorted() == other.weights_sorted()
    }
}

impl Eq for ParabolicBundleData {}

impl ParabolicBundleData {
    pub fn new(
        orbifold: OrbifoldCurve,
        mut splitting: Vec<i64>,
        mut weights: Vec<Vec<QmodZ>>,
    ) -> Self {
        assert_eq!(weights.len(), orbifold.len(), "one weight list per point");
        assert!(
            weights.iter().all(|w| w.len() == splitting.len()),
            "rank mismatch"
        );
        splitting.sort_unstable_by(|a, b| b.cmp(a));
        for w in &mut weights {
            w.sort();
        }
        ParabolicBundleData {
            orbifold,
            splitting,
            weights,
        }
    }

    pub fn trivial(orbifold: &OrbifoldCurve, rank: usize) -> Self {
        Self::new(
            orbifold.clone(),
            vec![0; rank],
            vec![vec![QmodZ::ZERO; rank]; orbifold.len()],
        )
    }

    pub fn orbifold(&self) -> &OrbifoldCurve {
        &self.orbifold
    }

    pub fn rank(&self) -> usize {
        self.splitting.len()
    }

    /// Splitting entries, non-increasing.
    pub fn splitting_sorted(&self) -> Vec<i64> {
        let mut s = self.splitting.clone();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// Weights at each point, non-decreasing.
    pub fn weights_sorted(&self) -> Vec<Vec<QmodZ>> {
        self.weights
            .iter()
            .map(|w| {
                let mut w = w.clone();
                w.sort();
                w
            })
            .collect()
    }

    pub fn degree(&self) -> i64 {
        self.splitting.iter().sum()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, ParabolicError> {
        if self.orbifold != other.orbifold {
            return Err(ParabolicError::OrbifoldMismatch);
        }
        let mut splitting = self.splitting.clone();
        splitting.extend(&other.splitting);
        let weights = self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| a.iter().chain(b).copied().collect())
            .collect();
        Ok(Self::new(self.orbifold.clone(), splitting, weights))
    }
}

pub fn line_bundle_data(l: &ParabolicLineBundle) -> ParabolicBundleData {
    ParabolicBundleData::new(
        l.orbifold.clone(),
        vec![l.degree],
        l.weights().into_iter().map(|w| vec![w]).collect(),
    )
}

pub fn par_degree(e: &ParabolicBundleData) -> Rational64 {
    let w: Rational64 = e.weights.iter().flatten().map(|w| w.to_rational()).sum();
    Rational64::from_integer(e.degree()) + w
}

/// Shifts the weights at point `i` by `l[i]`; every wrap past an integer
/// moves the splitting entry of the same slot.
pub fn shift(
    e: &ParabolicBundleData,
    l: &[Rational64],
) -> Result<ParabolicBundleData, ParabolicError> {
    let pts = e.orbifold.points();
    if l.len() != pts.len() {
        return Err(ParabolicError::WrongLength {
            expected: pts.len(),
            found: l.len(),
        });
    }
    for (i, (li, p)) in l.iter().zip(pts).enumerate() {
        if (p.r as i64) % li.denom() != 0 {
            return Err(ParabolicError::DenominatorMismatch(i));
        }
    }
    let mut splitting = e.splitting.clone();
    let mut weights = e.weights.clone();
    for (i, li) in l.iter().enumerate() {
        for (slot, w) in weights[i].iter_mut().enumerate() {
            let t = w.to_rational() + li;
            let carry = t.floor().to_integer();
            splitting[slot] += carry;
            *w = QmodZ::from_rational(t);
        }
    }
    Ok(ParabolicBundleData {
        orbifold: e.orbifold.clone(),
        splitting,
        weights,
    })
}

/// Rank and weights of a tensor product; the underlying degree is the one
/// forced by bilinearity of the parabolic degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorWeights {
    pub rank: usize,
    pub degree: i64,
    pub weights: Vec<Vec<QmodZ>>,
}

impl TensorWeights {
    pub fn par_degree(&self) -> Rational64 {
        Rational64::from_integer(self.degree)
            + self
                .weights
                .iter()
                .flatten()
                .map(|w| w.to_rational())
                .sum::<Rational64>()
    }
}

pub fn tensor_weights(
    e: &ParabolicBundleData,
    f: &ParabolicBundleData,
) -> Result<TensorWeights, ParabolicError> {
    if e.orbifold != f.orbifold {
        return Err(ParabolicError::OrbifoldMismatch);
    }
    let weights: Vec<Vec<QmodZ>> = e
        .weights
        .iter()
        .zip(&f.weights)
        .map(|(a, b)| {
            let mut w: Vec<QmodZ> = a
                .iter()
                .flat_map(|x| b.iter().map(move |y| *x + *y))
                .collect();
            w.sort();
            w
        })
        .collect();
    let (re, rf) = (e.rank() as i64, f.rank() as i64);
    let target = par_degree(e) * rf + par_degree(f) * re;
    let wsum: Rational64 = weights.iter().flatten().map(|w| w.to_rational()).sum();
    let degree = target - wsum;
    assert!(degree.is_integer(), "tensor degree must be integral");
    Ok(TensorWeights {
        rank: e.rank() * f.rank(),
        degree: degree.to_integer(),
        weights,
    })
}

/// Number of sections `max(k + d·m + 1, 0)` of a degree-`k` line bundle
/// twisted by the pullback of `O(m)` along a degree-`d` map of lines.
fn h0_pullback(d: i64, k: i64, m: i64) -> i64 {
    (k + d * m + 1).max(0)
}

/// Splitting of the pushforward of `O(k)` along a degree-`d` map of lines,
/// non-increasing. Read off from `h⁰` of twists: the number of entries
/// `≥ v` is the jump `h⁰(−v) − h⁰(−v − 1)`.
pub fn splitting_type(d: u64, k: i64) -> Vec<i64> {
    assert!(d >= 1);
    let d = d as i64;
    let count_at_least = |v: i64| h0_pullback(d, k, -v) - h0_pullback(d, k, -v - 1);
    let mut out = Vec::with_capacity(d as usize);
    let mut v = k.abs() + 1;
    while (out.len() as i64) < d {
        let here = count_at_least(v) - count_at_least(v + 1);
        for _ in 0..here {
            out.push(v);
        }
        v -= 1;
    }
    debug_assert_eq!(out.iter().sum::<i64>(), k + 1 - d);
    out
}

/// Checks the two defining conditions of a splitting type on a window of
/// twists.
pub fn satisfies_h0(d: u64, k: i64, a: &[i64], window: std::ops::RangeInclusive<i64>) -> bool {
    let d = d as i64;
    a.len() as i64 == d
        && a.iter().sum::<i64>() == k + 1 - d
        && window
            .into_iter()
            .all(|m| a.iter().map(|&x| (x + m + 1).max(0)).sum::<i64>() == h0_pullback(d, k, m))
}

/// Weight multiset at base point `i` from upstairs weights: an upstairs
/// point with ramification `ell` and weight `w` contributes
/// `(w + m)/ell` for `m = 0..ell`.
fn eigenvalue_weights(geo: &CoverGeometry, upstairs_weights: &[QmodZ], i: usize) -> Vec<QmodZ> {
    let mut out = Vec::new();
    for j in geo.points_over(i) {
        let ell = geo.ell[j] as i64;
        let w = upstairs_weights[j].to_rational();
        for m in 0..ell {
            out.push(QmodZ::from_rational((w + m) / ell));
        }
    }
    out.sort();
    out
}

/// Pushforward of a parabolic line bundle along a cover of genus-0 curves.
///
/// The weights at each base point are read off from the degree drops of the
/// pieces `p_*(L_t)` as `t` runs over steps `k/rᵢ`, and checked against the
/// eigenvalue formula.
pub fn pushforward(
    cover: &TameCover,
    geo: &CoverGeometry,
    l: &ParabolicLineBundle,
) -> Result<ParabolicBundleData, ParabolicError> {
    if geo.genus_upstairs != 0 {
        return Err(ParabolicError::UnsupportedGenus(geo.genus_upstairs));
    }
    if l.orbifold != geo.upstairs {
        return Err(ParabolicError::OrbifoldMismatch);
    }
    let base = cover.base();
    let d = cover.degree() as i64;
    let (c, a) = (l.degree, &l.a);
    let upstairs_weights = l.weights();
    let mut weights = Vec::with_capacity(base.len());
    for (i, p) in base.points().iter().enumerate() {
        let r = p.r as i64;
        let over: Vec<usize> = geo.points_over(i).collect();
        // degree of the upstairs line bundle at step k/r over point i
        let upstairs_degree = |k: i64| -> i64 {
            c + over
                .iter()
                .map(|&j| Integer::div_floor(&(a[j] - k), &(geo.s[j] as i64)))
                .sum::<i64>()
        };
        let piece = |k: i64| upstairs_degree(k) + 1 - d;
        let mut drops = Vec::new();
        for k in 0..r {
            let mult = piece(k) - piece(k + 1);
            for _ in 0..mult {
                drops.push(QmodZ::new(k, r));
            }
        }
        drops.sort();
        if drops != eigenvalue_weights(geo, &upstairs_weights, i) {
            return Err(ParabolicError::DegreeDropMismatch(i));
        }
        weights.push(drops);
    }
    Ok(ParabolicBundleData::new(
        base.clone(),
        splitting_type(d as u64, c),
        weights,
    ))
}

/// Upstairs weights `χ(h_j)` of the line bundle attached to a character of
/// the cover's subgroup.
fn character_weights(geo: &CoverGeometry, chi: &Character1D) -> Vec<QmodZ> {
    geo.local_monodromy.iter().map(|&h| chi.value(h)).collect()
}

/// The upstairs line bundle attached to a character of the cover's
/// subgroup: weight `χ(h_j)` at each point, degree making it parabolic
/// degree 0.
pub fn character_line_bundle(
    geo: &CoverGeometry,
    chi: &Character1D,
) -> Result<ParabolicLineBundle, ParabolicError> {
    let w = character_weights(geo, chi);
    let total: Rational64 = w.iter().map(|x| x.to_rational()).sum();
    assert!(
        total.is_integer(),
        "local monodromies multiply to the identity"
    );
    let a: Vec<i64> = w
        .iter()
        .zip(&geo.s)
        .map(|(x, &s)| {
            let v = x.to_rational() * s as i64;
            assert!(
                v.is_integer(),
                "weight denominator divides the residual order"
            );
            v.to_integer()
        })
        .collect();
    ParabolicLineBundle::from_coefficients(&geo.upstairs, -total.to_integer(), &a)
}

/// The cover attached to the subgroup inducing `rep`, reusing `cover` when
/// the subgroup matches.
fn cover_for(cover: &TameCover, h: &Subgroup) -> Result<TameCover, ParabolicError> {
    if cover.subgroup() == h {
        Ok(cover.clone())
    } else {
        Ok(TameCover::new(cover.monodromy().clone(), h.clone())?)
    }
}

/// Weights of the bundle attached to `rep`, computed from the eigenvalues of
/// local monodromy.
pub fn tannakian_weights(cover: &TameCover, rep: &MonomialRep) -> Vec<Vec<QmodZ>> {
    cover
        .monodromy()
        .tuple()
        .iter()
        .map(|&g| local_exponents(rep, g))
        .collect()
}

/// Weights of the bundle attached to an induced `rep`, computed from the
/// cover geometry. Valid in any genus.
pub fn geometric_weights(
    cover: &TameCover,
    rep: &MonomialRep,
) -> Result<Vec<Vec<QmodZ>>, ParabolicError> {
    let chi = rep.inducing_character().ok_or(ParabolicError::NotInduced)?;
    let cov = cover_for(cover, chi.subgroup())?;
    let geo = cover_geometry(&cov);
    let w = character_weights(&geo, chi);
    Ok((0..cov.base().len())
        .map(|i| eigenvalue_weights(&geo, &w, i))
        .collect())
}

/// Realizes an induced representation of the monodromy group as parabolic
/// bundle data on the base, by both the monodromy and the pushforward
/// route, requiring the weights to agree.
pub fn rh_realize(
    cover: &TameCover,
    rep: &MonomialRep,
) -> Result<ParabolicBundleData, ParabolicError> {
    if !Arc::ptr_eq(rep.group(), cover.group()) {
        return Err(ParabolicError::ClosureMismatch);
    }
    let chi = rep.inducing_character().ok_or(ParabolicError::NotInduced)?;
    let cov = cover_for(cover, chi.subgroup())?;
    let geo = cover_geometry(&cov);
    let line = character_line_bundle(&geo, chi)?;
    let bundle = pushforward(&cov, &geo, &line)?;
    let tannakian = tannakian_weights(&cov, rep);
    for (i, (t, g)) in tannakian.iter().zip(bundle.weights_sorted()).enumerate() {
        if *t != g {
            return Err(ParabolicError::PathMismatch {
                point: i,
                tannakian: t.clone(),
                geometric: g,
            });
        }
    }
    let pd = par_degree(&bundle);
    if !pd.is_zero() {
        return Err(ParabolicError::NonzeroDegree(pd));
    }
    Ok(bundle)
}

/// `p_*(𝓛_χ)` for the cover with subgroup `χ`'s domain.
#[derive(Debug, Clone)]
pub struct Atom {
    pub cover: TameCover,
    pub character: Character1D,
}

impl Atom {
    pub fn new(cover: &TameCover, character: Character1D) -> Result<Self, ParabolicError> {
        let cover = cover_for(cover, character.subgroup())?;
        Ok(Atom { cover, character })
    }

    pub fn rep(&self) -> MonomialRep {
        induce(self.cover.group(), &self.character)
    }

    pub fn rank(&self) -> usize {
        self.cover.degree()
    }
}

/// A formal sum of atoms with multiplicities.
#[derive(Debug, Clone)]
pub struct AtomExpression {
    pub terms: Vec<(Atom, u64)>,
}

impl AtomExpression {
    pub fn rank(&self) -> usize {
        self.terms.iter().map(|(a, m)| a.rank() * *m as usize).sum()
    }

    pub fn rep(&self) -> Result<MonomialRep, ParabolicError> {
        let reps: Vec<MonomialRep> = self
            .terms
            .iter()
            .flat_map(|(a, m)| std::iter::repeat_with(|| a.rep()).take(*m as usize))
            .collect();
        Ok(direct_sum(&reps)?)
    }

    /// Weights of the realized sum, by the pushforward route.
    pub fn weights(&self) -> Result<Vec<Vec<QmodZ>>, ParabolicError> {
        let mut out: Vec<Vec<QmodZ>> = Vec::new();
        for (atom, m) in &self.terms {
            let w = geometric_weights(&atom.cover, &atom.rep())?;
            if out.is_empty() {
                out = vec![Vec::new(); w.len()];
            }
            for _ in 0..*m {
                for (o, x) in out.iter_mut().zip(&w) {
                    o.extend(x);
                }
            }
        }
        for o in &mut out {
            o.sort();
        }
        Ok(out)
    }
}

/// Tensor product of two atoms as a sum of atoms, over double cosets.
/// Ranks and weight multisets of the result are checked against the weight
/// level tensor product of the factors.
pub fn mackey_tensor(a1: &Atom, a2: &Atom) -> Result<AtomExpression, ParabolicError> {
    let group = a1.cover.group();
    if !Arc::ptr_eq(group, a2.cover.group())
        || a1.cover.base() != a2.cover.base()
        || a1.cover.monodromy().tuple() != a2.cover.monodromy().tuple()
    {
        return Err(ParabolicError::ClosureMismatch);
    }
    let summands = mackey_decompose(group, &a1.character, &a2.character)?;
    let mut terms = Vec::with_capacity(summands.len());
    for s in summands {
        terms.push((Atom::new(&a1.cover, s.character)?, 1));
    }
    let expr = AtomExpression { terms };
    if expr.rank() != a1.rank() * a2.rank() {
        return Err(ParabolicError::MackeyCheck("rank".into()));
    }
    let w1 = geometric_weights(&a1.cover, &a1.rep())?;
    let w2 = geometric_weights(&a2.cover, &a2.rep())?;
    let base = a1.cover.base();
    let e1 = ParabolicBundleData::new(base.clone(), vec![0; a1.rank()], w1);
    let e2 = ParabolicBundleData::new(base.clone(), vec![0; a2.rank()], w2);
    let tw = tensor_weights(&e1, &e2)?;
    if tw.weights != expr.weights()? {
        return Err(ParabolicError::MackeyCheck("weights".into()));
    }
    Ok(expr)
}

/// Constituents of the tensor powers `E^{⊗k}`, `k = 0..=max_power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub max_power: usize,
    /// Multiplicity vector of each power against the irreducibles.
    pub multiplicities: Vec<Vec<u64>>,
    /// Indices of irreducibles occurring in some power.
    pub constituents: BTreeSet<usize>,
    /// Number of irreducibles of the group.
    pub irreducible_count: usize,
    /// True when the last power adds no new constituent.
    pub stabilized: bool,
}

/// `P(E) ≅ Q(E)` with `P = x^k`, `Q = Σ qⱼ xʲ` over `j < k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRelation {
    pub p: Vec<u64>,
    pub q: Vec<u64>,
    pub closure: ClosureReport,
}

/// Searches `k = 2..=max_power` for the lexicographically smallest
/// `(q₀, q₁, …)` with `E^{⊗k} ≅ Σ qⱼ E^{⊗j}`.
pub fn find_finite_relation(
    rep: &MonomialRep,
    max_power: usize,
) -> Result<FiniteRelation, ParabolicError> {
    let irreducibles: Vec<Character> = monomial_irreducibles(rep.group())?
        .iter()
        .map(character)
        .collect();
    find_finite_relation_with(rep, &irreducibles, max_power)
}

pub fn find_finite_relation_with(
    rep: &MonomialRep,
    irreducibles: &[Character],
    max_power: usize,
) -> Result<FiniteRelation, ParabolicError> {
    let chi = character(rep);
    let one = character(&induce(
        rep.group(),
        &Character1D::trivial(rep.group(), &rep.group().whole()),
    ));
    let mut power = one;
    let mut multiplicities = Vec::with_capacity(max_power + 1);
    let mut constituents = BTreeSet::new();
    let mut before_last = 0;
    for k in 0..=max_power {
        if k > 0 {
            power = power.mul(&chi);
        }
        let m = decompose_character(&power, irreducibles)?;
        if k == max_power {
            before_last = constituents.len();
        }
        constituents.extend(m.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i));
        multiplicities.push(m);
    }
    let closure = ClosureReport {
        max_power,
        multiplicities: multiplicities.clone(),
        constituents: constituents.clone(),
        irreducible_count: irreducibles.len(),
        stabilized: max_power > 0 && constituents.len() == before_last,
    };
    for k in 2..=max_power {
        if let Some(q) = smallest_combination(&multiplicities[..k], &multiplicities[k]) {
            let mut p = vec![0; k + 1];
            p[k] = 1;
            return Ok(FiniteRelation { p, q, closure });
        }
    }
    Err(ParabolicError::SearchExhausted(Box::new(closure)))
}

/// Lexicographically smallest non-negative `c` with `Σ cⱼ·vecs[j] = target`.
fn smallest_combination(vecs: &[Vec<u64>], target: &[u64]) -> Option<Vec<u64>> {
    const NODE_LIMIT: usize = 1_000_000;
    fn go(
        vecs: &[Vec<u64>],
        j: usize,
        rem: &mut Vec<u64>,
        chosen: &mut Vec<u64>,
        nodes: &mut usize,
    ) -> bool {
        *nodes += 1;
        if *nodes > NODE_LIMIT {
            return false;
        }
        if j == vecs.len() {
            return rem.iter().all(|&x| x == 0);
        }
        let v = &vecs[j];
        let bound = v
            .iter()
            .zip(rem.iter())
            .filter(|(&a, _)| a > 0)
            .map(|(&a, &r)| r / a)
            .min()
            .unwrap_or(0);
        for c in 0..=bound {
            for (r, &a) in rem.iter_mut().zip(v) {
                *r -= c * a;
            }
            chosen.push(c);
            if go(vecs, j + 1, rem, chosen, nodes) {
                return true;
            }
            chosen.pop();
            for (r, &a) in rem.iter_mut().zip(v) {
                *r += c * a;
            }
        }
        false
    }
    let mut rem = target.to_vec();
    let mut chosen = Vec::new();
    let mut nodes = 0;
    go(vecs, 0, &mut rem, &mut chosen, &mut nodes).then_some(chosen)
}

/// Renders a coefficient vector as a polynomial in `x`.
pub fn format_polynomial(c: &[u64]) -> String {
    let mut terms = Vec::new();
    for (k, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        };
        terms.push(match (a, k) {
            (_, 0) => a.to_string(),
            (1, _) => mono,
            _ => format!("{a}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}
