//! Tame covers of genus-0 orbifold curves, described by monodromy tuples.
//!
//! A cover is the pair `(tuple, H)`: the tuple `(g₁..gₙ)` defines the Galois
//! closure with group `G`, and the intermediate cover is the one with fiber
//! `G/H` (left cosets, `G` acting on the left).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::abgroup::{Embedding, GroupElement};
use crate::finitegroup::{CosetSpace, FiniteGroup, GroupError, Subgroup};
use crate::orbifold::{MarkedPoint, OrbifoldCurve, PicGroup, PicSubgroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("tuple has {found} entries but the base has {expected} points")]
    WrongLength { expected: usize, found: usize },
    #[error("product of the tuple is not the identity")]
    ProductNotOne,
    #[error("order of the element at point {0} does not divide the point's order")]
    OrderViolation(usize),
    #[error("tuple does not generate the group")]
    NotGenerating,
    #[error("action on the fiber is not transitive")]
    NotTransitive,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("incompatible enrichment at {label:?}: {reason}")]
    IncompatibleEnrichment { label: String, reason: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone)]
pub struct MonodromyTuple {
    base: OrbifoldCurve,
    group: Arc<FiniteGroup>,
    tuple: Vec<usize>,
}

impl MonodromyTuple {
    pub fn base(&self) -> &OrbifoldCurve {
        &self.base
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn tuple(&self) -> &[usize] {
        &self.tuple
    }
}

pub fn validate_monodromy(
    base: &OrbifoldCurve,
    group: Arc<FiniteGroup>,
    tuple: &[usize],
) -> Result<MonodromyTuple, CoverError> {
    if tuple.len() != base.len() {
        return Err(CoverError::WrongLength {
            expected: base.len(),
            found: tuple.len(),
        });
    }
    group.elements_from_indices(tuple)?;
    if group.mul_all(tuple) != group.identity() {
        return Err(CoverError::ProductNotOne);
    }
    for (i, (&g, p)) in tuple.iter().zip(base.points()).enumerate() {
        if p.r % group.element_order(g) as u64 != 0 {
            return Err(CoverError::OrderViolation(i));
        }
    }
    if group.subgroup(tuple).order() != group.order() {
        return Err(CoverError::NotGenerating);
    }
    Ok(MonodromyTuple {
        base: base.clone(),
        group,
        tuple: tuple.to_vec(),
    })
}

#[derive(Debug, Clone)]
pub struct TameCover {
    monodromy: MonodromyTuple,
    h: Subgroup,
    cosets: CosetSpace,
    fiber_action: Vec<Vec<usize>>,
}

impl TameCover {
    pub fn new(monodromy: MonodromyTuple, h: Subgroup) -> Result<Self, CoverError> {
        let group = monodromy.group.clone();
        let cosets = group.cosets(&h);
        let fiber_action: Vec<Vec<usize>> = monodromy
            .tuple
            .iter()
            .map(|&g| cosets.action(&group, g))
            .collect();
        // transitivity: the orbit of the identity coset under the tuple
        let mut seen = vec![false; cosets.len()];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(c) = stack.pop() {
            for perm in &fiber_action {
                if !seen[perm[c]] {
                    seen[perm[c]] = true;
                    stack.push(perm[c]);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(CoverError::NotTransitive);
        }
        Ok(TameCover {
            monodromy,
            h,
            cosets,
            fiber_action,
        })
    }

    /// The cover with fiber `G/H`, `H` generated by `h_gens`.
    pub fn from_generators(
        monodromy: MonodromyTuple,
        h_gens: &[usize],
    ) -> Result<Self, CoverError> {
        monodromy.group.elements_from_indices(h_gens)?;
        let h = monodromy.group.subgroup(h_gens);
        Self::new(monodromy, h)
    }

    pub fn monodromy(&self) -> &MonodromyTuple {
        &self.monodromy
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.monodromy.group
    }

    pub fn base(&self) -> &OrbifoldCurve {
        &self.monodromy.base
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.h
    }

    pub fn cosets(&self) -> &CosetSpace {
        &self.cosets
    }

    pub fn fiber_action(&self) -> &[Vec<usize>] {
        &self.fiber_action
    }

    pub fn degree(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_galois(&self) -> bool {
        self.group().is_normal(&self.h)
    }
}

#[derive(Debug, Clone)]
pub struct CoverGeometry {
    pub upstairs: OrbifoldCurve,
    /// Base point under each upstairs point.
    pub alpha: Vec<usize>,
    /// Ramification index over the coarse base.
    pub ell: Vec<u64>,
    /// Residual orbifold order `s_j = r_{α(j)} / ell_j`.
    pub s: Vec<u64>,
    pub genus_upstairs: u32,
    /// Least coset index in each orbit.
    pub orbit_reps: Vec<usize>,
    /// For each base point, the upstairs point over each coset.
    pub point_of: Vec<Vec<usize>>,
    /// Local monodromy `x⁻¹ gᵢ^ell x ∈ H` at each upstairs point, `x` the
    /// representative of the least coset in the orbit.
    pub local_monodromy: Vec<usize>,
}

impl CoverGeometry {
    pub fn points_over(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.alpha
            .iter()
            .enumerate()
            .filter(move |(_, &a)| a == i)
            .map(|(j, _)| j)
    }
}

pub fn cover_geometry(cover: &TameCover) -> CoverGeometry {
    let base = cover.base();
    let group = cover.group();
    let d = cover.degree();
    let mut points = Vec::new();
    let mut alpha = Vec::new();
    let mut ell = Vec::new();
    let mut s = Vec::new();
    let mut orbit_reps = Vec::new();
    let mut point_of = Vec::new();
    let mut local_monodromy = Vec::new();
    for (i, perm) in cover.fiber_action.iter().enumerate() {
        let r = base.points()[i].r;
        let g = cover.monodromy.tuple[i];
        let mut owner = vec![usize::MAX; d];
        for c in 0..d {
            if owner[c] != usize::MAX {
                continue;
            }
            let j = points.len();
            let mut len = 0u64;
            let mut x = c;
            loop {
                owner[x] = j;
                len += 1;
                x = perm[x];
                if x == c {
                    break;
                }
            }
            let rep = cover.cosets.reps[c];
            let h_j = group.conjugate(group.pow(g, len as usize), rep);
            debug_assert!(cover.h.contains(h_j));
            points.push(MarkedPoint {
                label: format!("({},{})", base.label(i), c),
                r: r / len,
            });
            alpha.push(i);
            ell.push(len);
            s.push(r / len);
            orbit_reps.push(c);
            local_monodromy.push(h_j);
        }
        point_of.push(owner);
    }
    let ramification: i64 = ell.iter().map(|&e| e as i64 - 1).sum();
    let twice = -2 * d as i64 + ramification + 2;
    debug_assert!(twice >= 0 && twice % 2 == 0);
    let genus_upstairs = (twice / 2) as u32;
    CoverGeometry {
        upstairs: OrbifoldCurve::new(genus_upstairs, points).expect("distinct labels"),
        alpha,
        ell,
        s,
        genus_upstairs,
        orbit_reps,
        point_of,
        local_monodromy,
    }
}

/// Genus of the coarse cover from the cycle types of the fiber permutations.
pub fn coarse_genus(cover: &TameCover) -> i64 {
    let d = cover.degree() as i64;
    let mut ram = 0i64;
    for perm in &cover.fiber_action {
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0i64;
        for start in 0..perm.len() {
            if !seen[start] {
                cycles += 1;
                let mut x = start;
                while !seen[x] {
                    seen[x] = true;
                    x = perm[x];
                }
            }
        }
        ram += d - cycles;
    }
    (ram - 2 * d + 2) / 2
}

/// Enriches the base orbifold: each entry maps a base label to a new order.
/// Existing labels keep their monodromy, which must have order dividing the
/// new order; new labels are appended with trivial monodromy.
pub fn extend_orbifold(
    cover: &TameCover,
    orders: &BTreeMap<String, u64>,
) -> Result<TameCover, CoverError> {
    let base = cover.base();
    let group = cover.group();
    let mut points = base.points().to_vec();
    let mut tuple = cover.monodromy.tuple.clone();
    for (label, &r) in orders {
        let bad = |reason: &str| CoverError::IncompatibleEnrichment {
            label: label.clone(),
            reason: reason.to_string(),
        };
        if r == 0 {
            return Err(bad("order must be positive"));
        }
        match base.position(label) {
            Some(i) => {
                if r % group.element_order(tuple[i]) as u64 != 0 {
                    return Err(bad("branching order does not divide the new order"));
                }
                points[i].r = r;
            }
            None => {
                points.push(MarkedPoint {
                    label: label.clone(),
                    r,
                });
                tuple.push(group.identity());
            }
        }
    }
    let new_base = OrbifoldCurve::new(base.genus(), points).expect("labels stay distinct");
    let m = validate_monodromy(&new_base, group.clone(), &tuple)?;
    TameCover::new(m, cover.h.clone())
}

/// Deck transformations of a Galois cover acting on the upstairs points.
#[derive(Debug, Clone)]
pub struct DeckAction {
    /// Deck element `c` is the transformation `xH ↦ x·t_c⁻¹·H`, `t_c` the
    /// representative of coset `c`.
    pub coset_perms: Vec<Vec<usize>>,
    pub point_perms: Vec<Vec<usize>>,
    /// Cosets of the generators of `G`, identity coset omitted.
    pub generators: Vec<usize>,
}

impl DeckAction {
    /// The deck group as a permutation group on the fiber, with the coset
    /// behind each of its generators.
    pub fn deck_group(&self) -> FiniteGroup {
        let degree = self.coset_perms.len();
        let gens: Vec<Vec<u32>> = self
            .generators
            .iter()
            .map(|&c| self.coset_perms[c].iter().map(|&x| x as u32).collect())
            .collect();
        FiniteGroup::from_permutations(degree, &gens).expect("fiber permutations")
    }

    /// Matrix of each deck generator on a subgroup of the upstairs Picard
    /// group, acting on column vectors of the subgroup's canonical
    /// coordinates. Returns `None` if the subgroup is not preserved.
    pub fn action_on_pic(&self, pic: &PicGroup, sub: &PicSubgroup) -> Option<Vec<Vec<Vec<i64>>>> {
        let n = pic.orbifold().len();
        let emb = Embedding {
            group: sub.group.clone(),
            images: sub.images.clone(),
        };
        let t = sub.group.coord_len();
        let mut mats = Vec::new();
        for &c in &self.generators {
            let perm = &self.point_perms[c];
            let mut cols: Vec<Vec<i64>> = Vec::new();
            for k in 0..t {
                let x = emb.embed(pic.group(), &sub.group.canonical_generator(k));
                let lifted = pic.group().lift(&x);
                let mut moved = lifted.clone();
                for j in 0..n {
                    moved[perm[j]] = lifted[j].clone();
                }
                let y: GroupElement = pic.group().element_from_generators(&moved);
                let pre = emb.preimage(pic.group(), &y)?;
                cols.push(
                    pre.coords()
                        .iter()
                        .map(|v| i64::try_from(v).expect("small coordinate"))
                        .collect(),
                );
            }
            mats.push(
                (0..t)
                    .map(|r| (0..t).map(|k| cols[k][r]).collect())
                    .collect(),
            );
        }
        Some(mats)
    }
}

pub fn deck_action_on_points(
    cover: &TameCover,
    geometry: &CoverGeometry,
) -> Result<DeckAction, CoverError> {
    let group = cover.group();
    if !group.is_normal(&cover.h) {
        return Err(CoverError::NotNormal);
    }
    let cs = &cover.cosets;
    let coset_perms: Vec<Vec<usize>> = cs
        .reps
        .iter()
        .map(|&t| {
            let tinv = group.inverse(t);
            cs.reps
                .iter()
                .map(|&x| cs.coset_of[group.mul(x, tinv)])
                .collect()
        })
        .collect();
    let point_perms: Vec<Vec<usize>> = coset_perms
        .iter()
        .map(|perm| {
            (0..geometry.alpha.len())
                .map(|j| {
                    let i = geometry.alpha[j];
                    geometry.point_of[i][perm[geometry.orbit_reps[j]]]
                })
                .collect()
        })
        .collect();
    let mut generators = Vec::new();
    for &g in group.generators() {
        let c = cs.coset_of[g];
        if c != 0 && !generators.contains(&c) {
            generators.push(c);
        }
    }
    Ok(DeckAction {
        coset_perms,
        point_perms,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_cover() -> TameCover {
        let base = OrbifoldCurve::line(&[("0", 2), ("1", 2)]).unwrap();
        let g = Arc::new(FiniteGroup::cyclic(2));
        let m = validate_monodromy(&base, g, &[1, 1]).unwrap();
        TameCover::from_generators(m, &[]).unwrap()
    }

    #[test]
    fn validation() {
        let base = OrbifoldCurve::line(&[("0", 2), ("1", 2)]).unwrap();
        let g = Arc::new(FiniteGroup::cyclic(2));
        assert!(validate_monodromy(&base, g.clone(), &[1, 1]).is_ok());
        assert_eq!(
            validate_monodromy(&base, g.clone(), &[1, 0]).unwrap_err(),
            CoverError::ProductNotOne
        );
        assert_eq!(
            validate_monodromy(&base, g.clone(), &[0, 0]).unwrap_err(),
            CoverError::NotGenerating
        );
        let trivial = Arc::new(FiniteGroup::trivial());
        assert!(validate_monodromy(&base, trivial, &[0, 0]).is_ok());

        let c3 = Arc::new(FiniteGroup::cyclic(3));
        assert_eq!(
            validate_monodromy(&base, c3, &[1, 2]).unwrap_err(),
            CoverError::OrderViolation(0)
        );
    }

    #[test]
    fn s3_triangle_tuple() {
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let base = OrbifoldCurve::line(&[("0", 2), ("1", 2), ("inf", 3)]).unwrap();
        let t0 = s3.index_of(&[1, 0, 2]).unwrap();
        let t1 = s3.index_of(&[2, 1, 0]).unwrap();
        let x = s3.inverse(s3.mul(t0, t1));
        assert_eq!(s3.element_order(x), 3);
        assert!(validate_monodromy(&base, s3, &[t0, t1, x]).is_ok());
    }

    #[test]
    fn geometry_of_double_cover() {
        let cover = z2_cover();
        let geo = cover_geometry(&cover);
        assert_eq!(geo.ell, vec![2, 2]);
        assert_eq!(geo.s, vec![1, 1]);
        assert_eq!(geo.genus_upstairs, 0);
        assert_eq!(coarse_genus(&cover), 0);
        assert_eq!(geo.upstairs.label(0), "(0,0)");
    }

    #[test]
    fn trivial_cover_geometry() {
        let base = OrbifoldCurve::line(&[("0", 2), ("1", 2)]).unwrap();
        let g = Arc::new(FiniteGroup::cyclic(2));
        let m = validate_monodromy(&base, g.clone(), &[1, 1]).unwrap();
        let cover = TameCover::from_generators(m, g.generators()).unwrap();
        let geo = cover_geometry(&cover);
        assert_eq!(geo.ell, vec![1, 1]);
        assert_eq!(geo.s, vec![2, 2]);
    }

    #[test]
    fn enrichment_at_infinity() {
        let cover = z2_cover();
        let same = extend_orbifold(&cover, &BTreeMap::new()).unwrap();
        assert_eq!(same.base(), cover.base());

        let mut extra = BTreeMap::new();
        extra.insert("inf".to_string(), 3);
        let big = extend_orbifold(&cover, &extra).unwrap();
        let geo = cover_geometry(&big);
        let over: Vec<usize> = geo.points_over(2).collect();
        assert_eq!(over.len(), 2);
        for j in over {
            assert_eq!(geo.ell[j], 1);
            assert_eq!(geo.s[j], 3);
        }
        assert_eq!(geo.upstairs.orders(), vec![1, 1, 3, 3]);

        let mut bad = BTreeMap::new();
        bad.insert("0".to_string(), 3);
        assert!(matches!(
            extend_orbifold(&cover, &bad),
            Err(CoverError::IncompatibleEnrichment { .. })
        ));
    }

    #[test]
    fn deck_swaps_points_over_infinity() {
        let mut extra = BTreeMap::new();
        extra.insert("inf".to_string(), 3);
        let cover = extend_orbifold(&z2_cover(), &extra).unwrap();
        let geo = cover_geometry(&cover);
        let deck = deck_action_on_points(&cover, &geo).unwrap();
        assert_eq!(deck.point_perms[0], vec![0, 1, 2, 3]);
        assert_eq!(deck.point_perms[1], vec![0, 1, 3, 2]);
        assert_eq!(deck.deck_group().order(), 2);
    }

    #[test]
    fn non_normal_deck_rejected() {
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let base = OrbifoldCurve::line(&[("0", 2), ("1", 2), ("inf", 3)]).unwrap();
        let t0 = s3.index_of(&[1, 0, 2]).unwrap();
        let t1 = s3.index_of(&[2, 1, 0]).unwrap();
        let x = s3.inverse(s3.mul(t0, t1));
        let m = validate_monodromy(&base, s3, &[t0, t1, x]).unwrap();
        let cover = TameCover::from_generators(m, &[t0]).unwrap();
        let geo = cover_geometry(&cover);
        assert_eq!(cover.degree(), 3);
        assert_eq!(geo.genus_upstairs, 0);
        assert_eq!(
            deck_action_on_points(&cover, &geo).unwrap_err(),
            CoverError::NotNormal
        );
    }
}
