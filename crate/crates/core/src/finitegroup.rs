//! Concrete finite groups with dense element indices.
//!
//! Elements are numbered breadth-first from the identity (index 0), each new
//! element being `x·s` for the earliest discovered `x` and the first
//! generator `s` producing it. Every other module addresses elements by these
//! indices.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::ToPrimitive;

use crate::abgroup::{FpAbelianGroup, IntMatrix};

pub const DEFAULT_MAX_ORDER: usize = 10_000;
const TABLE_LIMIT: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group order exceeds the cap of {cap} elements")]
    OrderBound { cap: usize },
    #[error("generator {index} is not a permutation of 0..{degree}")]
    NotAPermutation { index: usize, degree: usize },
    #[error("action data does not define an action: {0}")]
    NotAnAction(String),
    #[error("normal subgroup part must be a finite abelian group")]
    InfiniteNormalPart,
    #[error("element index {0} out of range")]
    BadIndex(usize),
    #[error("member set is not a subgroup")]
    NotASubgroup,
}

#[derive(Clone, Debug)]
pub struct SemidirectData {
    /// The abelian normal factor, in canonical coordinates.
    pub a: FpAbelianGroup,
    pub moduli: Vec<u32>,
    /// The complement.
    pub h: FiniteGroup,
    /// Action matrix of every element of `h`, indexed like `h`.
    pub actions: Vec<Vec<Vec<u32>>>,
    /// Element of the product representing `(a, 1)`, by lexicographic index
    /// of `a` in `a.elements()`.
    pub a_indices: Vec<usize>,
    /// Element of the product representing `(0, h)`, indexed like `h`.
    pub h_indices: Vec<usize>,
}

impl SemidirectData {
    fn act(&self, h: usize, a: &[u32]) -> Vec<u32> {
        let m = &self.actions[h];
        (0..a.len())
            .map(|j| {
                let s: u64 = (0..a.len()).map(|k| m[j][k] as u64 * a[k] as u64).sum();
                (s % self.moduli[j] as u64) as u32
            })
            .collect()
    }

    /// Splits an element key into its `A` coordinates and `H` index.
    pub fn split_key<'a>(&self, key: &'a [u32]) -> (&'a [u32], usize) {
        let t = self.moduli.len();
        (&key[..t], key[t] as usize)
    }

    /// Character value of `χ` (on canonical generators of `A`) at `h⁻¹·a`,
    /// i.e. the value of `h·χ` at `a`.
    pub fn act_on_character_values(
        &self,
        h: usize,
        chi: &[crate::abgroup::QmodZ],
    ) -> Vec<crate::abgroup::QmodZ> {
        let hinv = self.h.inverse(h);
        let t = self.moduli.len();
        (0..t)
            .map(|k| {
                let mut e = vec![0u32; t];
                e[k] = 1;
                let img = self.act(hinv, &e);
                img.iter().zip(chi).map(|(&c, v)| v.times(c as i64)).sum()
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub enum GroupKind {
    Perm { degree: usize },
    Semidirect(Box<SemidirectData>),
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    keys: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    kind: GroupKind,
    generators: Vec<usize>,
    inverse: Vec<usize>,
    orders: Vec<usize>,
    table: Option<Vec<u32>>,
}

fn compose(g: &[u32], h: &[u32]) -> Vec<u32> {
    // (g·h)(i) = g(h(i))
    h.iter().map(|&x| g[x as usize]).collect()
}

impl FiniteGroup {
    pub fn from_permutations(degree: usize, gens: &[Vec<u32>]) -> Result<Self, GroupError> {
        Self::from_permutations_capped(degree, gens, DEFAULT_MAX_ORDER)
    }

    pub fn from_permutations_capped(
        degree: usize,
        gens: &[Vec<u32>],
        cap: usize,
    ) -> Result<Self, GroupError> {
        for (index, g) in gens.iter().enumerate() {
            let mut seen = vec![false; degree];
            let ok = g.len() == degree
                && g.iter().all(|&x| {
                    let x = x as usize;
                    x < degree && !std::mem::replace(&mut seen[x], true)
                });
            if !ok {
                return Err(GroupError::NotAPermutation { index, degree });
            }
        }
        let identity: Vec<u32> = (0..degree as u32).collect();
        Self::close(
            identity,
            gens.to_vec(),
            GroupKind::Perm { degree },
            cap,
            compose,
        )
    }

    /// Generic breadth-first closure under right multiplication by the
    /// generators.
    fn close(
        identity: Vec<u32>,
        gen_keys: Vec<Vec<u32>>,
        kind: GroupKind,
        cap: usize,
        mul: impl Fn(&[u32], &[u32]) -> Vec<u32>,
    ) -> Result<Self, GroupError> {
        let mut keys = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0usize);
        let mut i = 0;
        while i < keys.len() {
            for g in &gen_keys {
                let p = mul(&keys[i], g);
                if !index.contains_key(&p) {
                    if keys.len() >= cap {
                        return Err(GroupError::OrderBound { cap });
                    }
                    index.insert(p.clone(), keys.len());
                    keys.push(p);
                }
            }
            i += 1;
        }
        let mut generators: Vec<usize> = Vec::new();
        for g in &gen_keys {
            let gi = index[g];
            if gi != 0 && !generators.contains(&gi) {
                generators.push(gi);
            }
        }
        let n = keys.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &keys {
                for b in &keys {
                    t.push(index[&mul(a, b)] as u32);
                }
            }
            t
        });
        let mut group = FiniteGroup {
            keys,
            index,
            kind,
            generators,
            inverse: Vec::new(),
            orders: Vec::new(),
            table,
        };
        group.fill_inverses_and_orders();
        Ok(group)
    }

    fn fill_inverses_and_orders(&mut self) {
        let n = self.order();
        let mut inverse = vec![usize::MAX; n];
        let mut orders = vec![0; n];
        for g in 0..n {
            let mut x = g;
            let mut k = 1;
            while x != 0 {
                let next = self.mul(x, g);
                if next == 0 {
                    inverse[g] = x;
                }
                x = next;
                k += 1;
            }
            if g == 0 {
                inverse[0] = 0;
                orders[0] = 1;
            } else {
                orders[g] = k;
            }
        }
        self.inverse = inverse;
        self.orders = orders;
    }

    /// Builds `A ⋊ H` with multiplication `(a,h)(a',h') = (a + h·a', hh')`.
    ///
    /// `action[k]` is the matrix (acting on column vectors of canonical
    /// coordinates of `A`) of the `k`-th generator of `H`.
    pub fn semidirect_product(
        a: &FpAbelianGroup,
        h: &FiniteGroup,
        action: &[Vec<Vec<i64>>],
    ) -> Result<Self, GroupError> {
        Self::semidirect_product_capped(a, h, action, DEFAULT_MAX_ORDER)
    }

    pub fn semidirect_product_capped(
        a: &FpAbelianGroup,
        h: &FiniteGroup,
        action: &[Vec<Vec<i64>>],
        cap: usize,
    ) -> Result<Self, GroupError> {
        if !a.is_finite() {
            return Err(GroupError::InfiniteNormalPart);
        }
        let moduli: Vec<u32> = a
            .invariant_factors()
            .iter()
            .map(|d| d.to_u32().expect("small invariant factor"))
            .collect();
        let t = moduli.len();
        if action.len() != h.generators().len() {
            return Err(GroupError::NotAnAction(format!(
                "{} matrices given for {} generators of H",
                action.len(),
                h.generators().len()
            )));
        }
        let mut gen_mats: Vec<Vec<Vec<u32>>> = Vec::new();
        for (k, m) in action.iter().enumerate() {
            if m.len() != t || m.iter().any(|r| r.len() != t) {
                return Err(GroupError::NotAnAction(format!(
                    "matrix {k} is not {t}x{t}"
                )));
            }
            let reduced: Vec<Vec<u32>> = (0..t)
                .map(|j| {
                    (0..t)
                        .map(|c| m[j][c].rem_euclid(moduli[j] as i64) as u32)
                        .collect()
                })
                .collect();
            for c in 0..t {
                for j in 0..t {
                    if !(reduced[j][c] as u64 * moduli[c] as u64).is_multiple_of(moduli[j] as u64) {
                        return Err(GroupError::NotAnAction(format!(
                            "matrix {k} is not well defined on A"
                        )));
                    }
                }
            }
            gen_mats.push(reduced);
        }

        let mat_mul = |x: &Vec<Vec<u32>>, y: &Vec<Vec<u32>>| -> Vec<Vec<u32>> {
            (0..t)
                .map(|j| {
                    (0..t)
                        .map(|c| {
                            let s: u64 = (0..t).map(|l| x[j][l] as u64 * y[l][c] as u64).sum();
                            (s % moduli[j] as u64) as u32
                        })
                        .collect()
                })
                .collect()
        };
        let identity: Vec<Vec<u32>> = (0..t)
            .map(|j| (0..t).map(|c| u32::from(j == c)).collect())
            .collect();
        let mut actions: Vec<Option<Vec<Vec<u32>>>> = vec![None; h.order()];
        actions[0] = Some(identity);
        for x in 0..h.order() {
            let ax = actions[x].clone().expect("breadth-first order");
            for (k, &s) in h.generators().iter().enumerate() {
                let y = h.mul(x, s);
                let ay = mat_mul(&ax, &gen_mats[k]);
                match &actions[y] {
                    None => actions[y] = Some(ay),
                    Some(existing) if *existing == ay => {}
                    Some(_) => {
                        return Err(GroupError::NotAnAction(
                            "matrices do not respect the relations of H".into(),
                        ))
                    }
                }
            }
        }
        let actions: Vec<Vec<Vec<u32>>> = actions.into_iter().map(|m| m.expect("closed")).collect();

        let a_elems: Vec<Vec<u32>> = a
            .elements()
            .map_err(|_| GroupError::InfiniteNormalPart)?
            .iter()
            .map(|e| e.coords().iter().map(|c| c.to_u32().unwrap()).collect())
            .collect();
        for (k, m) in gen_mats.iter().enumerate() {
            let images: BTreeSet<Vec<u32>> = a_elems
                .iter()
                .map(|v| {
                    (0..t)
                        .map(|j| {
                            let s: u64 = (0..t).map(|c| m[j][c] as u64 * v[c] as u64).sum();
                            (s % moduli[j] as u64) as u32
                        })
                        .collect()
                })
                .collect();
            if images.len() != a_elems.len() {
                return Err(GroupError::NotAnAction(format!(
                    "matrix {k} is not invertible on A"
                )));
            }
        }

        let mut data = SemidirectData {
            a: a.clone(),
            moduli: moduli.clone(),
            h: h.clone(),
            actions,
            a_indices: Vec::new(),
            h_indices: Vec::new(),
        };
        let key = |av: &[u32], hi: usize| -> Vec<u32> {
            let mut k = av.to_vec();
            k.push(hi as u32);
            k
        };
        let mut gen_keys = Vec::new();
        for c in 0..t {
            let mut e = vec![0u32; t];
            e[c] = 1;
            gen_keys.push(key(&e, 0));
        }
        for &s in h.generators() {
            gen_keys.push(key(&vec![0; t], s));
        }
        let zero = vec![0u32; t];
        let data_ref = data.clone();
        let mul = move |x: &[u32], y: &[u32]| -> Vec<u32> {
            let (xa, xh) = data_ref.split_key(x);
            let (ya, yh) = data_ref.split_key(y);
            let moved = data_ref.act(xh, ya);
            let mut out: Vec<u32> = xa
                .iter()
                .zip(&moved)
                .zip(&data_ref.moduli)
                .map(|((&p, &q), &m)| (p + q) % m)
                .collect();
            out.push(data_ref.h.mul(xh, yh) as u32);
            out
        };
        let mut group = Self::close(
            key(&zero, 0),
            gen_keys,
            GroupKind::Perm { degree: 0 },
            cap,
            mul,
        )?;
        data.a_indices = a_elems.iter().map(|v| group.index[&key(v, 0)]).collect();
        data.h_indices = (0..h.order())
            .map(|x| group.index[&key(&zero, x)])
            .collect();
        group.kind = GroupKind::Semidirect(Box::new(data));
        Ok(group)
    }

    pub fn cyclic(n: usize) -> Self {
        let gen: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        Self::from_permutations(n, &[gen]).expect("cyclic group")
    }

    pub fn symmetric(n: usize) -> Self {
        if n < 2 {
            return Self::from_permutations(n, &[]).expect("trivial group");
        }
        let mut t: Vec<u32> = (0..n as u32).collect();
        t.swap(0, 1);
        let c: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        Self::from_permutations(n, &[t, c]).expect("symmetric group")
    }

    /// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let r: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        let s: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
        Self::from_permutations(n, &[r, s]).expect("dihedral group")
    }

    /// Alternating group on 4 letters.
    pub fn alternating4() -> Self {
        Self::from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).expect("A4")
    }

    pub fn trivial() -> Self {
        Self::from_permutations(1, &[]).expect("trivial group")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn semidirect(&self) -> Option<&SemidirectData> {
        match &self.kind {
            GroupKind::Semidirect(d) => Some(d),
            GroupKind::Perm { .. } => None,
        }
    }

    /// Raw key of an element: the permutation images for permutation groups,
    /// or `A` coordinates followed by the `H` index for semidirect products.
    pub fn key(&self, g: usize) -> &[u32] {
        &self.keys[g]
    }

    pub fn index_of(&self, key: &[u32]) -> Option<usize> {
        self.index.get(key).copied()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.keys.len() + b] as usize,
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: usize, b: usize) -> usize {
        let key = match &self.kind {
            GroupKind::Perm { .. } => compose(&self.keys[a], &self.keys[b]),
            GroupKind::Semidirect(d) => {
                let (xa, xh) = d.split_key(&self.keys[a]);
                let (ya, yh) = d.split_key(&self.keys[b]);
                let moved = d.act(xh, ya);
                let mut out: Vec<u32> = xa
                    .iter()
                    .zip(&moved)
                    .zip(&d.moduli)
                    .map(|((&p, &q), &m)| (p + q) % m)
                    .collect();
                out.push(d.h.mul(xh, yh) as u32);
                out
            }
        };
        self.index[&key]
    }

    pub fn mul_all(&self, elems: &[usize]) -> usize {
        elems.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    #[inline]
    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    #[inline]
    pub fn element_order(&self, g: usize) -> usize {
        self.orders[g]
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    /// `g⁻¹·h·g`
    pub fn conjugate(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(self.inverse(g), h), g)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| {
            self.generators
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    /// Conjugacy classes, each sorted, ordered by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let cls: BTreeSet<usize> = (0..n).map(|x| self.conjugate(g, x)).collect();
            for &c in &cls {
                class_of[c] = classes.len();
            }
            classes.push(cls.into_iter().collect());
        }
        classes
    }

    pub fn elements_from_indices(&self, idx: &[usize]) -> Result<(), GroupError> {
        match idx.iter().find(|&&i| i >= self.order()) {
            Some(&bad) => Err(GroupError::BadIndex(bad)),
            None => Ok(()),
        }
    }

    /// Subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[usize]) -> Subgroup {
        let n = self.order();
        let mut member = vec![false; n];
        member[0] = true;
        let mut members = vec![0usize];
        let mut i = 0;
        while i < members.len() {
            for &s in gens {
                let p = self.mul(members[i], s);
                if !member[p] {
                    member[p] = true;
                    members.push(p);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        let mut generators: Vec<usize> = Vec::new();
        for &g in gens {
            if g != 0 && !generators.contains(&g) {
                generators.push(g);
            }
        }
        Subgroup {
            members,
            member,
            generators,
        }
    }

    pub fn whole(&self) -> Subgroup {
        self.subgroup(&self.generators.clone())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup(&[])
    }

    /// Subgroup from an explicit member set; a small generating set is picked
    /// greedily in index order.
    pub fn subgroup_from_members(&self, members: &[usize]) -> Result<Subgroup, GroupError> {
        let n = self.order();
        let mut member = vec![false; n];
        for &m in members {
            if m >= n {
                return Err(GroupError::BadIndex(m));
            }
            member[m] = true;
        }
        if !member[0] {
            return Err(GroupError::NotASubgroup);
        }
        let list: Vec<usize> = (0..n).filter(|&g| member[g]).collect();
        for &a in &list {
            for &b in &list {
                if !member[self.mul(a, b)] {
                    return Err(GroupError::NotASubgroup);
                }
            }
        }
        let mut gens: Vec<usize> = Vec::new();
        let mut span = self.subgroup(&[]);
        for &g in &list {
            if !span.contains(g) {
                gens.push(g);
                span = self.subgroup(&gens);
            }
        }
        Ok(span)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let common: Vec<usize> = a
            .members
            .iter()
            .copied()
            .filter(|&x| b.contains(x))
            .collect();
        self.subgroup_from_members(&common)
            .expect("intersection of subgroups is a subgroup")
    }

    /// `g·S·g⁻¹`
    pub fn conjugate_subgroup(&self, s: &Subgroup, g: usize) -> Subgroup {
        let ginv = self.inverse(g);
        let gens: Vec<usize> = s
            .generators
            .iter()
            .map(|&x| self.conjugate(x, ginv))
            .collect();
        self.subgroup(&gens)
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        self.generators.iter().all(|&g| {
            s.generators
                .iter()
                .all(|&x| s.contains(self.conjugate(x, g)))
        })
    }

    /// Representatives of the double cosets `H₁gH₂`, each the least index in
    /// its double coset, in increasing order.
    pub fn double_cosets(&self, h1: &Subgroup, h2: &Subgroup) -> Vec<usize> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            reps.push(g);
            for &a in &h1.members {
                let ag = self.mul(a, g);
                for &b in &h2.members {
                    seen[self.mul(ag, b)] = true;
                }
            }
        }
        reps
    }

    pub fn double_coset(&self, h1: &Subgroup, g: usize, h2: &Subgroup) -> Vec<usize> {
        let set: BTreeSet<usize> = h1
            .members
            .iter()
            .flat_map(|&a| h2.members.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.mul(self.mul(a, g), b))
            .collect();
        set.into_iter().collect()
    }

    /// Left cosets `gH` with the left action of `G`.
    pub fn cosets(&self, h: &Subgroup) -> CosetSpace {
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &x in &h.members {
                coset_of[self.mul(g, x)] = reps.len();
            }
            reps.push(g);
        }
        CosetSpace { reps, coset_of }
    }

    /// Every subgroup, found by joining cyclic subgroups until stable.
    /// Sorted by order, then by member list.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let n = self.order();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut cyclic: Vec<Subgroup> = Vec::new();
        for g in 0..n {
            let s = self.subgroup(&[g]);
            if found.insert(s.members.clone()) {
                cyclic.push(s);
            }
        }
        let mut frontier: Vec<Subgroup> = cyclic.clone();
        let mut all: Vec<Subgroup> = cyclic.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for c in &cyclic {
                    if c.members.iter().all(|&x| s.contains(x)) {
                        continue;
                    }
                    let mut gens = s.generators.clone();
                    gens.extend(&c.generators);
                    let j = self.subgroup(&gens);
                    if found.insert(j.members.clone()) {
                        next.push(j.clone());
                        all.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Subgroup> = all
            .into_iter()
            .map(|s| self.subgroup_from_members(&s.members).expect("subgroup"))
            .collect();
        out.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
        out
    }

    /// Abelianization of a subgroup, presented on the subgroup's generators,
    /// with the abelianized word of every member.
    pub fn abelianization(&self, s: &Subgroup) -> Abelianization {
        let m = s.generators.len();
        let mut words: HashMap<usize, Vec<i64>> = HashMap::new();
        words.insert(0, vec![0; m]);
        let mut queue = VecDeque::from([0usize]);
        let mut order = vec![0usize];
        while let Some(x) = queue.pop_front() {
            for (k, &g) in s.generators.iter().enumerate() {
                let y = self.mul(x, g);
                if !words.contains_key(&y) {
                    let mut w = words[&x].clone();
                    w[k] += 1;
                    words.insert(y, w);
                    queue.push_back(y);
                    order.push(y);
                }
            }
        }
        let mut relations = Vec::new();
        for &x in &order {
            for (k, &g) in s.generators.iter().enumerate() {
                let y = self.mul(x, g);
                let rel: Vec<i64> = (0..m)
                    .map(|j| words[&x][j] + i64::from(j == k) - words[&y][j])
                    .collect();
                if rel.iter().any(|&v| v != 0) {
                    relations.push(rel);
                }
            }
        }
        relations.sort();
        relations.dedup();
        let group = FpAbelianGroup::new(m, IntMatrix::from_i64_rows(&relations, m))
            .expect("consistent presentation");
        Abelianization {
            group,
            generators: s.generators.clone(),
            words,
        }
    }

    /// The subgroup as a standalone group, with the index map back into
    /// `self`.
    pub fn materialize(&self, s: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let key = |g: usize| vec![g as u32];
        let gen_keys: Vec<Vec<u32>> = s.generators.iter().map(|&g| key(g)).collect();
        let sub = Self::close(
            key(0),
            gen_keys,
            GroupKind::Perm { degree: 0 },
            usize::MAX,
            |a, b| vec![self.mul(a[0] as usize, b[0] as usize) as u32],
        )
        .expect("uncapped");
        let embedding = sub.keys.iter().map(|k| k[0] as usize).collect();
        let mut sub = sub;
        sub.kind = GroupKind::Perm { degree: 0 };
        // keys of a materialized subgroup are parent indices; mul must go
        // through the table, which is always present for small groups
        if sub.table.is_none() {
            let n = sub.order();
            let mut t = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    let p = self.mul(sub.keys[a][0] as usize, sub.keys[b][0] as usize);
                    t.push(sub.index[&vec![p as u32]] as u32);
                }
            }
            sub.table = Some(t);
        }
        (sub, embedding)
    }

    /// Brute-force isomorphism test: tries every assignment of images to the
    /// generators of `self`. Only sensible for small groups.
    pub fn is_isomorphic_small(&self, other: &FiniteGroup) -> bool {
        if self.order() != other.order() {
            return false;
        }
        let gens = self.generators.clone();
        let n = self.order();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                (0..n)
                    .filter(|&x| other.element_order(x) == self.element_order(g))
                    .collect()
            })
            .collect();
        let mut choice = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = choice
                .iter()
                .enumerate()
                .map(|(k, &c)| candidates[k][c])
                .collect();
            if self.extends_to_isomorphism(other, &images) {
                return true;
            }
            let mut k = 0;
            loop {
                if k == gens.len() {
                    return false;
                }
                choice[k] += 1;
                if choice[k] < candidates[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    fn extends_to_isomorphism(&self, other: &FiniteGroup, images: &[usize]) -> bool {
        let n = self.order();
        let mut phi = vec![usize::MAX; n];
        phi[0] = 0;
        for x in 0..n {
            for (k, &g) in self.generators.iter().enumerate() {
                let y = self.mul(x, g);
                let v = other.mul(phi[x], images[k]);
                if phi[y] == usize::MAX {
                    phi[y] = v;
                } else if phi[y] != v {
                    return false;
                }
            }
        }
        let distinct: BTreeSet<usize> = phi.iter().copied().collect();
        distinct.len() == n
    }
}

/// A subgroup given by its sorted member indices and a generating set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<usize>,
    member: Vec<bool>,
    generators: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn contains(&self, g: usize) -> bool {
        self.member.get(g).copied().unwrap_or(false)
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }
}

/// Left cosets `gH`: representatives are the least index in each coset, so
/// the identity coset comes first.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    pub reps: Vec<usize>,
    pub coset_of: Vec<usize>,
}

impl CosetSpace {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Permutation of the cosets induced by left multiplication by `g`.
    pub fn action(&self, group: &FiniteGroup, g: usize) -> Vec<usize> {
        self.reps
            .iter()
            .map(|&t| self.coset_of[group.mul(g, t)])
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Abelianization {
    pub group: FpAbelianGroup,
    pub generators: Vec<usize>,
    /// Abelianized exponent vector of every member.
    pub words: HashMap<usize, Vec<i64>>,
}
