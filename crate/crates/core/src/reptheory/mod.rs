//! Monomial representations of finite groups and their exact characters.
//!
//! A monomial matrix is stored as `(σ, t)`: the basis vector `e_k` goes to
//! `exp(2πi·t[σ(k)])·e_{σ(k)}`. Characters take values in `ℤ[ζ_N]` with `N`
//! the exponent of the group.

mod cyclo;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;

pub use cyclo::{cyclotomic_polynomial, exponent_at_level, CycloNumber};

use crate::abgroup::QmodZ;
use crate::finitegroup::{FiniteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("values do not define a character of the subgroup")]
    NotACharacter,
    #[error("expected {expected} character values, got {found}")]
    WrongValueCount { expected: usize, found: usize },
    #[error("representations live on different groups")]
    GroupMismatch,
    #[error("inner product is not an integer")]
    NonIntegral,
    #[error("negative multiplicity for constituent {0}")]
    NegativeMultiplicity(usize),
    #[error("decomposition does not account for the full dimension")]
    DimensionMismatch,
    #[error(
        "irreducibles are incomplete: sum of squared dimensions {found}, group order {expected}"
    )]
    IncompleteInput { found: usize, expected: usize },
    #[error("group is not given as a semidirect product")]
    NotSemidirect,
    #[error("supplied representation is not induced from a character")]
    NotInduced,
    #[error("constituent {0} is not irreducible")]
    NotIrreducible(usize),
    #[error("constituents {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("Mackey summands do not reproduce the tensor product")]
    MackeyMismatch,
}

/// A one-dimensional character of a subgroup, valued in `ℚ/ℤ`.
#[derive(Clone, Debug)]
pub struct Character1D {
    subgroup: Subgroup,
    /// Indexed by element of the ambient group; zero outside the subgroup.
    values: Vec<QmodZ>,
}

impl PartialEq for Character1D {
    fn eq(&self, other: &Self) -> bool {
        self.subgroup == other.subgroup && self.values == other.values
    }
}

impl Eq for Character1D {}

impl Character1D {
    /// The character with the given values on `subgroup.generators()`.
    pub fn from_generator_values(
        group: &FiniteGroup,
        subgroup: &Subgroup,
        gen_values: &[QmodZ],
    ) -> Result<Self, RepError> {
        if gen_values.len() != subgroup.generators().len() {
            return Err(RepError::WrongValueCount {
                expected: subgroup.generators().len(),
                found: gen_values.len(),
            });
        }
        let ab = group.abelianization(subgroup);
        let mut values = vec![QmodZ::ZERO; group.order()];
        for &x in subgroup.members() {
            values[x] = ab.words[&x]
                .iter()
                .zip(gen_values)
                .map(|(&w, v)| v.times(w))
                .sum();
        }
        Self::checked(group, subgroup, values)
    }

    /// The character given by a value for every member of `subgroup`.
    pub fn from_fn(
        group: &FiniteGroup,
        subgroup: &Subgroup,
        f: impl Fn(usize) -> QmodZ,
    ) -> Result<Self, RepError> {
        let mut values = vec![QmodZ::ZERO; group.order()];
        for &x in subgroup.members() {
            values[x] = f(x);
        }
        Self::checked(group, subgroup, values)
    }

    fn checked(
        group: &FiniteGroup,
        subgroup: &Subgroup,
        values: Vec<QmodZ>,
    ) -> Result<Self, RepError> {
        if !values[group.identity()].is_zero() {
            return Err(RepError::NotACharacter);
        }
        for &x in subgroup.members() {
            for &s in subgroup.generators() {
                if values[group.mul(x, s)] != values[x] + values[s] {
                    return Err(RepError::NotACharacter);
                }
            }
        }
        Ok(Character1D {
            subgroup: subgroup.clone(),
            values,
        })
    }

    pub fn trivial(group: &FiniteGroup, subgroup: &Subgroup) -> Self {
        Character1D {
            subgroup: subgroup.clone(),
            values: vec![QmodZ::ZERO; group.order()],
        }
    }

    /// Every character of `subgroup`, via its abelianization.
    pub fn all(group: &FiniteGroup, subgroup: &Subgroup) -> Vec<Character1D> {
        let ab = group.abelianization(subgroup);
        let chars = ab.group.dual_characters().expect("finite abelianization");
        chars
            .iter()
            .map(|c| {
                let gen_values: Vec<QmodZ> = (0..subgroup.generators().len())
                    .map(|k| c.evaluate(&ab.group.generator(k)))
                    .collect();
                Self::from_generator_values(group, subgroup, &gen_values)
                    .expect("dual characters respect the relations")
            })
            .collect()
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Value at a member of the subgroup.
    pub fn value(&self, x: usize) -> QmodZ {
        debug_assert!(self.subgroup.contains(x));
        self.values[x]
    }

    pub fn generator_values(&self) -> Vec<QmodZ> {
        self.subgroup
            .generators()
            .iter()
            .map(|&g| self.values[g])
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.subgroup
            .members()
            .iter()
            .all(|&x| self.values[x].is_zero())
    }

    /// Restriction to a subgroup of the domain.
    pub fn restrict(&self, group: &FiniteGroup, sub: &Subgroup) -> Character1D {
        Character1D::from_fn(group, sub, |x| self.values[x]).expect("restriction of a character")
    }
}

#[derive(Clone, Debug)]
pub enum Provenance {
    Induced(Character1D),
    Tensor,
    Sum,
}

#[derive(Clone, Debug)]
pub struct MonomialRep {
    group: Arc<FiniteGroup>,
    dim: usize,
    perms: Vec<Vec<u32>>,
    twists: Vec<Vec<QmodZ>>,
    provenance: Provenance,
}

impl MonomialRep {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The inducing character, for induced representations.
    pub fn inducing_character(&self) -> Option<&Character1D> {
        match &self.provenance {
            Provenance::Induced(c) => Some(c),
            _ => None,
        }
    }

    /// `(σ, t)` of the matrix of `g`.
    pub fn matrix(&self, g: usize) -> (&[u32], &[QmodZ]) {
        (&self.perms[g], &self.twists[g])
    }

    /// Checks `ρ(gh) = ρ(g)ρ(h)` for all pairs of generators, and that the
    /// identity acts trivially.
    pub fn is_multiplicative(&self) -> bool {
        let g = &self.group;
        let id_ok = self.perms[0]
            .iter()
            .enumerate()
            .all(|(k, &s)| s as usize == k)
            && self.twists[0].iter().all(|t| t.is_zero());
        id_ok
            && g.generators().iter().all(|&a| {
                g.generators().iter().all(|&b| {
                    let (p, t) = compose_monomial(
                        (&self.perms[a], &self.twists[a]),
                        (&self.perms[b], &self.twists[b]),
                    );
                    let ab = g.mul(a, b);
                    p == self.perms[ab] && t == self.twists[ab]
                })
            })
    }
}

/// Product of monomial matrices `(σ_g, t_g)·(σ_h, t_h)`.
fn compose_monomial(g: (&[u32], &[QmodZ]), h: (&[u32], &[QmodZ])) -> (Vec<u32>, Vec<QmodZ>) {
    let n = g.0.len();
    let mut inv_g = vec![0usize; n];
    for (k, &s) in g.0.iter().enumerate() {
        inv_g[s as usize] = k;
    }
    let perm: Vec<u32> = h.0.iter().map(|&x| g.0[x as usize]).collect();
    let twist = (0..n).map(|j| g.1[j] + h.1[inv_g[j]]).collect();
    (perm, twist)
}

/// `Ind_H^G χ` on the left transversal of least coset representatives.
pub fn induce(group: &Arc<FiniteGroup>, chi: &Character1D) -> MonomialRep {
    let g = group.as_ref();
    let h = chi.subgroup();
    let cs = g.cosets(h);
    let d = cs.len();
    let n = g.order();
    let mut perms = Vec::with_capacity(n);
    let mut twists = Vec::with_capacity(n);
    for x in 0..n {
        let mut perm = vec![0u32; d];
        let mut twist = vec![QmodZ::ZERO; d];
        for (k, &t) in cs.reps.iter().enumerate() {
            let xt = g.mul(x, t);
            let j = cs.coset_of[xt];
            let hk = g.mul(g.inverse(cs.reps[j]), xt);
            perm[k] = j as u32;
            twist[j] = chi.value(hk);
        }
        perms.push(perm);
        twists.push(twist);
    }
    MonomialRep {
        group: group.clone(),
        dim: d,
        perms,
        twists,
        provenance: Provenance::Induced(chi.clone()),
    }
}

pub fn tensor(r1: &MonomialRep, r2: &MonomialRep) -> Result<MonomialRep, RepError> {
    if !Arc::ptr_eq(&r1.group, &r2.group) {
        return Err(RepError::GroupMismatch);
    }
    let (d1, d2) = (r1.dim, r2.dim);
    let n = r1.group.order();
    let mut perms = Vec::with_capacity(n);
    let mut twists = Vec::with_capacity(n);
    for x in 0..n {
        let mut perm = vec![0u32; d1 * d2];
        let mut twist = vec![QmodZ::ZERO; d1 * d2];
        for a in 0..d1 {
            for b in 0..d2 {
                perm[a * d2 + b] = r1.perms[x][a] * d2 as u32 + r2.perms[x][b];
                twist[a * d2 + b] = r1.twists[x][a] + r2.twists[x][b];
            }
        }
        perms.push(perm);
        twists.push(twist);
    }
    Ok(MonomialRep {
        group: r1.group.clone(),
        dim: d1 * d2,
        perms,
        twists,
        provenance: Provenance::Tensor,
    })
}

pub fn direct_sum(reps: &[MonomialRep]) -> Result<MonomialRep, RepError> {
    let first = reps.first().ok_or(RepError::DimensionMismatch)?;
    if reps.iter().any(|r| !Arc::ptr_eq(&r.group, &first.group)) {
        return Err(RepError::GroupMismatch);
    }
    let n = first.group.order();
    let dim: usize = reps.iter().map(|r| r.dim).sum();
    let mut perms = vec![Vec::with_capacity(dim); n];
    let mut twists = vec![Vec::with_capacity(dim); n];
    let mut offset = 0u32;
    for r in reps {
        for x in 0..n {
            perms[x].extend(r.perms[x].iter().map(|&s| s + offset));
            twists[x].extend_from_slice(&r.twists[x]);
        }
        offset += r.dim as u32;
    }
    Ok(MonomialRep {
        group: first.group.clone(),
        dim,
        perms,
        twists,
        provenance: Provenance::Sum,
    })
}

/// Exponent of a group: the least common multiple of element orders.
pub fn group_exponent(g: &FiniteGroup) -> usize {
    (0..g.order()).fold(1usize, |acc, x| acc.lcm(&g.element_order(x)))
}

/// A class function with values in `ℤ[ζ_N]`, one value per element.
#[derive(Clone, Debug)]
pub struct Character {
    level: usize,
    values: Vec<CycloNumber>,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

impl Eq for Character {}

impl Character {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn value(&self, g: usize) -> &CycloNumber {
        &self.values[g]
    }

    pub fn values(&self) -> &[CycloNumber] {
        &self.values
    }

    pub fn degree(&self) -> i64 {
        self.values[0]
            .to_integer()
            .expect("dimension is an integer")
    }

    pub fn add(&self, other: &Character) -> Character {
        Character {
            level: self.level,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Character) -> Character {
        Character {
            level: self.level,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Character {
        Character {
            level: self.level,
            values: self
                .values
                .iter()
                .map(|a| a.mul(&CycloNumber::from_integer(self.level, k)))
                .collect(),
        }
    }

    pub fn zero(group: &FiniteGroup) -> Character {
        let level = group_exponent(group);
        Character {
            level,
            values: vec![CycloNumber::zero(level); group.order()],
        }
    }

    /// Values on conjugacy class representatives (least index per class).
    pub fn on_classes(&self, group: &FiniteGroup) -> BTreeMap<usize, CycloNumber> {
        group
            .conjugacy_classes()
            .into_iter()
            .map(|cls| (cls[0], self.values[cls[0]].clone()))
            .collect()
    }

    pub fn is_class_function(&self, group: &FiniteGroup) -> bool {
        group
            .conjugacy_classes()
            .iter()
            .all(|cls| cls.iter().all(|&x| self.values[x] == self.values[cls[0]]))
    }
}

pub fn character(r: &MonomialRep) -> Character {
    let level = group_exponent(&r.group);
    let values = (0..r.group.order())
        .map(|x| {
            let mut v = CycloNumber::zero(level);
            for (k, &s) in r.perms[x].iter().enumerate() {
                if s as usize == k {
                    let e = exponent_at_level(level, r.twists[x][k]);
                    v.add_root(e.rem_euclid(level as i64) as usize, 1);
                }
            }
            v
        })
        .collect();
    Character { level, values }
}

/// `(1/|G|)·Σ χ(g)·conj(ψ(g))`, certified to be an integer.
pub fn inner_product(chi: &Character, psi: &Character) -> Result<i64, RepError> {
    if chi.values.len() != psi.values.len() || chi.level != psi.level {
        return Err(RepError::GroupMismatch);
    }
    let mut total = CycloNumber::zero(chi.level);
    for (a, b) in chi.values.iter().zip(&psi.values) {
        total = total.add(&a.mul(&b.conj()));
    }
    let n = chi.values.len() as i64;
    match total.to_integer() {
        Some(s) if s % n == 0 => Ok(s / n),
        _ => Err(RepError::NonIntegral),
    }
}

pub fn is_irreducible(r: &MonomialRep) -> bool {
    let c = character(r);
    inner_product(&c, &c) == Ok(1)
}

/// Eigenvalue exponents of `ρ(g)`, sorted: a cycle of `σ_g` of length `ℓ`
/// with total twist `t` contributes `(t + m)/ℓ` for `m = 0..ℓ`.
pub fn local_exponents(r: &MonomialRep, g: usize) -> Vec<QmodZ> {
    let perm = &r.perms[g];
    let twist = &r.twists[g];
    let mut seen = vec![false; r.dim];
    let mut out = Vec::with_capacity(r.dim);
    for start in 0..r.dim {
        if seen[start] {
            continue;
        }
        let mut len = 0i64;
        let mut total = QmodZ::ZERO;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k] as usize;
            total += twist[k];
            len += 1;
        }
        let t = total.to_rational();
        for m in 0..len {
            let e = (t + num_rational::Rational64::from_integer(m)) / len;
            out.push(QmodZ::from_rational(e));
        }
    }
    out.sort();
    out
}

/// One summand of a Mackey decomposition.
#[derive(Clone, Debug)]
pub struct MackeySummand {
    /// Double coset representative.
    pub g: usize,
    pub character: Character1D,
}

/// `Ind χ₁ ⊗ Ind χ₂ ≅ ⊕_g Ind_{H_g}(χ₁·χ₂^g)` over `H₁\G/H₂`, with
/// `H_g = H₁ ∩ gH₂g⁻¹` and `χ₂^g(x) = χ₂(g⁻¹xg)`. The character identity is
/// verified before returning.
pub fn mackey_decompose(
    group: &Arc<FiniteGroup>,
    chi1: &Character1D,
    chi2: &Character1D,
) -> Result<Vec<MackeySummand>, RepError> {
    let summands = mackey_summands(group, chi1, chi2);
    let lhs = character(&tensor(&induce(group, chi1), &induce(group, chi2))?);
    let mut rhs = Character::zero(group);
    let mut dims = 0;
    for s in &summands {
        let ind = induce(group, &s.character);
        dims += ind.dim();
        rhs = rhs.add(&character(&ind));
    }
    let g = group.as_ref();
    let idx = |s: &Subgroup| g.order() / s.order();
    if dims != idx(chi1.subgroup()) * idx(chi2.subgroup()) || lhs != rhs {
        return Err(RepError::MackeyMismatch);
    }
    Ok(summands)
}

/// The Mackey summands without the verification step.
pub fn mackey_summands(
    group: &FiniteGroup,
    chi1: &Character1D,
    chi2: &Character1D,
) -> Vec<MackeySummand> {
    let (h1, h2) = (chi1.subgroup(), chi2.subgroup());
    group
        .double_cosets(h1, h2)
        .into_iter()
        .map(|g| {
            let conj = group.conjugate_subgroup(h2, g);
            let hg = group.intersection(h1, &conj);
            let character = Character1D::from_fn(group, &hg, |x| {
                chi1.value(x) + chi2.value(group.conjugate(x, g))
            })
            .expect("product of characters");
            MackeySummand { g, character }
        })
        .collect()
}

/// Multiplicities of each irreducible in `r`.
pub fn decompose(r: &MonomialRep, irreducibles: &[Character]) -> Result<Vec<u64>, RepError> {
    decompose_character(&character(r), irreducibles)
}

pub fn decompose_character(
    chi: &Character,
    irreducibles: &[Character],
) -> Result<Vec<u64>, RepError> {
    let mut mult = Vec::with_capacity(irreducibles.len());
    let mut dim = 0i64;
    for (i, psi) in irreducibles.iter().enumerate() {
        let m = inner_product(chi, psi)?;
        if m < 0 {
            return Err(RepError::NegativeMultiplicity(i));
        }
        dim += m * psi.degree();
        mult.push(m as u64);
    }
    if dim != chi.degree() {
        return Err(RepError::DimensionMismatch);
    }
    Ok(mult)
}

fn check_irreducible_family(reps: &[MonomialRep], order: usize) -> Result<(), RepError> {
    let chars: Vec<Character> = reps.iter().map(character).collect();
    for (i, a) in chars.iter().enumerate() {
        if inner_product(a, a)? != 1 {
            return Err(RepError::NotIrreducible(i));
        }
        for (j, b) in chars.iter().enumerate().skip(i + 1) {
            if inner_product(a, b)? != 0 {
                return Err(RepError::NotOrthogonal(i, j));
            }
        }
    }
    let found: usize = reps.iter().map(|r| r.dim * r.dim).sum();
    if found != order {
        return Err(RepError::IncompleteInput {
            found,
            expected: order,
        });
    }
    Ok(())
}

/// All irreducible representations, found by inducing every character of
/// every subgroup and keeping the irreducible ones up to character equality.
/// Fails with `IncompleteInput` if the group has a non-monomial irreducible.
/// Sorted by dimension, then by discovery order (largest subgroups first).
pub fn monomial_irreducibles(group: &Arc<FiniteGroup>) -> Result<Vec<MonomialRep>, RepError> {
    let g = group.as_ref();
    let mut subgroups = g.all_subgroups();
    subgroups.reverse();
    let mut found: Vec<(MonomialRep, Character)> = Vec::new();
    let mut total = 0;
    'outer: for h in &subgroups {
        for chi in Character1D::all(g, h) {
            let rep = induce(group, &chi);
            let c = character(&rep);
            if inner_product(&c, &c)? != 1 || found.iter().any(|(_, d)| *d == c) {
                continue;
            }
            total += rep.dim * rep.dim;
            found.push((rep, c));
            if total == g.order() {
                break 'outer;
            }
        }
    }
    let mut reps: Vec<MonomialRep> = found.into_iter().map(|(r, _)| r).collect();
    reps.sort_by_key(|r| r.dim);
    check_irreducible_family(&reps, g.order())?;
    Ok(reps)
}

/// Irreducibles of `A ⋊ H` by the little-groups method. For every `H`-orbit
/// on the characters of `A`, `stabilizer_reps` receives the stabilizer
/// `H_χ` (materialized as a standalone group) and returns its irreducibles,
/// each induced from a character. The output is `Ind_{A⋊H_χ}^G(χ ⊠ ρ)` for
/// each pair, verified irreducible, pairwise distinct and complete.
pub fn little_groups_irreducibles(
    group: &Arc<FiniteGroup>,
    mut stabilizer_reps: impl FnMut(&Arc<FiniteGroup>) -> Vec<MonomialRep>,
) -> Result<Vec<MonomialRep>, RepError> {
    let g = group.as_ref();
    let data = g.semidirect().ok_or(RepError::NotSemidirect)?;
    let h = &data.h;
    let chars = data
        .a
        .dual_characters()
        .map_err(|_| RepError::NotSemidirect)?;
    let mut visited = vec![false; chars.len()];
    let position = |vals: &[QmodZ]| chars.iter().position(|c| c.values == vals).expect("closed");
    let a_gens: Vec<usize> = (0..data.moduli.len())
        .map(|k| {
            let mut key = vec![0u32; data.moduli.len() + 1];
            key[k] = 1;
            g.index_of(&key).expect("generator of A")
        })
        .collect();
    let mut out = Vec::new();
    for (ci, chi) in chars.iter().enumerate() {
        if visited[ci] {
            continue;
        }
        let mut stab = Vec::new();
        for x in 0..h.order() {
            let moved = data.act_on_character_values(x, &chi.values);
            let p = position(&moved);
            visited[p] = true;
            if p == ci {
                stab.push(x);
            }
        }
        let stab = h.subgroup_from_members(&stab).expect("stabilizer");
        let (stab_group, emb) = h.materialize(&stab);
        let stab_group = Arc::new(stab_group);
        for rho in stabilizer_reps(&stab_group) {
            let psi = rho.inducing_character().ok_or(RepError::NotInduced)?;
            let k = psi.subgroup();
            let mut gens = a_gens.clone();
            gens.extend(k.generators().iter().map(|&y| data.h_indices[emb[y]]));
            let big = g.subgroup(&gens);
            let mut back = vec![usize::MAX; h.order()];
            for (y, &x) in emb.iter().enumerate() {
                back[x] = y;
            }
            let combined = Character1D::from_fn(g, &big, |x| {
                let (a, hx) = data.split_key(g.key(x));
                let va: QmodZ = a
                    .iter()
                    .zip(&chi.values)
                    .map(|(&c, v)| v.times(c as i64))
                    .sum();
                va + psi.value(back[hx])
            })?;
            out.push(induce(group, &combined));
        }
    }
    check_irreducible_family(&out, g.order())?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::symmetric(3))
    }

    fn a3_chi(g: &FiniteGroup) -> Character1D {
        let c = g.index_of(&[1, 2, 0]).unwrap();
        let a3 = g.subgroup(&[c]);
        Character1D::from_generator_values(g, &a3, &[QmodZ::new(1, 3)]).unwrap()
    }

    fn class_values(g: &FiniteGroup, c: &Character) -> Vec<i64> {
        // identity, a transposition, a 3-cycle
        let t = g.index_of(&[1, 0, 2]).unwrap();
        let r = g.index_of(&[1, 2, 0]).unwrap();
        [0, t, r]
            .iter()
            .map(|&x| c.value(x).to_integer().unwrap())
            .collect()
    }

    #[test]
    fn character_validation() {
        let g = s3();
        let c = g.index_of(&[1, 2, 0]).unwrap();
        let a3 = g.subgroup(&[c]);
        assert_eq!(
            Character1D::from_generator_values(&g, &a3, &[QmodZ::new(1, 2)]).unwrap_err(),
            RepError::NotACharacter
        );
        assert_eq!(Character1D::all(&g, &a3).len(), 3);
        assert_eq!(Character1D::all(&g, &g.whole()).len(), 2);
    }

    #[test]
    fn induction_examples() {
        let g = s3();
        let v = induce(&g, &a3_chi(&g));
        assert_eq!(v.dim(), 2);
        assert!(v.is_multiplicative());
        assert_eq!(class_values(&g, &character(&v)), vec![2, 0, -1]);
        assert!(is_irreducible(&v));

        let reg = induce(&g, &Character1D::trivial(&g, &g.trivial_subgroup()));
        assert_eq!(reg.dim(), 6);
        let rc = character(&reg);
        assert!((1..6).all(|x| rc.value(x).is_zero()));

        let triv = induce(&g, &Character1D::trivial(&g, &g.whole()));
        assert_eq!(triv.dim(), 1);
        assert_eq!(inner_product(&rc, &character(&triv)), Ok(1));
    }

    #[test]
    fn tensor_examples() {
        let g = s3();
        let v = induce(&g, &a3_chi(&g));
        let vv = tensor(&v, &v).unwrap();
        assert!(vv.is_multiplicative());
        assert_eq!(class_values(&g, &character(&vv)), vec![4, 0, 1]);
        let sign = Character1D::all(&g, &g.whole())
            .into_iter()
            .find(|c| !c.is_trivial())
            .unwrap();
        let s = induce(&g, &sign);
        assert_eq!(
            class_values(&g, &character(&tensor(&s, &s).unwrap())),
            vec![1, 1, 1]
        );
        let other = Arc::new(FiniteGroup::symmetric(3));
        assert_eq!(
            tensor(&v, &induce(&other, &a3_chi(&other))).unwrap_err(),
            RepError::GroupMismatch
        );
    }

    #[test]
    fn mackey_s3() {
        let g = s3();
        let chi = a3_chi(&g);
        let summands = mackey_decompose(&g, &chi, &chi).unwrap();
        assert_eq!(summands.len(), 2);
        let whole = Character1D::trivial(&g, &g.whole());
        assert_eq!(mackey_decompose(&g, &whole, &whole).unwrap().len(), 1);
        assert_eq!(mackey_decompose(&g, &whole, &chi).unwrap().len(), 1);
    }

    #[test]
    fn exponents() {
        let g = s3();
        let v = induce(&g, &a3_chi(&g));
        let t = g.index_of(&[1, 0, 2]).unwrap();
        let r = g.index_of(&[1, 2, 0]).unwrap();
        assert_eq!(local_exponents(&v, 0), vec![QmodZ::ZERO; 2]);
        assert_eq!(
            local_exponents(&v, r),
            vec![QmodZ::new(1, 3), QmodZ::new(2, 3)]
        );
        assert_eq!(local_exponents(&v, t), vec![QmodZ::ZERO, QmodZ::new(1, 2)]);
    }

    #[test]
    fn irreducibles_and_decomposition() {
        let g = s3();
        let irr = monomial_irreducibles(&g).unwrap();
        let dims: Vec<usize> = irr.iter().map(|r| r.dim()).collect();
        assert_eq!(dims, vec![1, 1, 2]);
        let chars: Vec<Character> = irr.iter().map(character).collect();
        let reg = induce(&g, &Character1D::trivial(&g, &g.trivial_subgroup()));
        assert_eq!(decompose(&reg, &chars).unwrap(), vec![1, 1, 2]);
        let v = &irr[2];
        let m = decompose(&tensor(v, v).unwrap(), &chars).unwrap();
        assert_eq!(m, vec![1, 1, 1]);
        assert_eq!(decompose(v, &chars).unwrap(), vec![0, 0, 1]);

        assert_eq!(
            monomial_irreducibles(&Arc::new(FiniteGroup::symmetric(4)))
                .unwrap()
                .len(),
            5
        );
        assert_eq!(
            monomial_irreducibles(&Arc::new(FiniteGroup::alternating4()))
                .unwrap()
                .len(),
            4
        );
    }

    #[test]
    fn little_groups_s3() {
        let a = crate::abgroup::FpAbelianGroup::cyclic(3);
        let h = FiniteGroup::cyclic(2);
        let g = Arc::new(FiniteGroup::semidirect_product(&a, &h, &[vec![vec![-1]]]).unwrap());
        let irr = little_groups_irreducibles(&g, |s| monomial_irreducibles(s).unwrap()).unwrap();
        let mut dims: Vec<usize> = irr.iter().map(|r| r.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 2]);

        let triv =
            Arc::new(FiniteGroup::semidirect_product(&a, &FiniteGroup::trivial(), &[]).unwrap());
        let irr = little_groups_irreducibles(&triv, |s| monomial_irreducibles(s).unwrap()).unwrap();
        assert_eq!(irr.len(), 3);

        let direct = Arc::new(FiniteGroup::semidirect_product(&a, &h, &[vec![vec![1]]]).unwrap());
        let irr =
            little_groups_irreducibles(&direct, |s| monomial_irreducibles(s).unwrap()).unwrap();
        assert_eq!(irr.len(), 6);

        let err = little_groups_irreducibles(&g, |_| Vec::new()).unwrap_err();
        assert_eq!(
            err,
            RepError::IncompleteInput {
                found: 0,
                expected: 6
            }
        );
    }
}
