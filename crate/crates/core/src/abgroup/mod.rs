//! Finitely presented abelian groups in Smith-normal-form coordinates.
//!
//! A group is given by `n` generators and a matrix of relations (one relation
//! per row). The Smith form `U·R·V = D` is computed once; an element written
//! as a row vector `x` over the original generators has canonical coordinates
//! `x·V`, with the coordinates belonging to unit invariant factors dropped and
//! the torsion coordinates reduced into `[0, d)`.

mod matrix;
mod qmodz;

pub use matrix::{left_kernel, smith_normal_form, solve_left, IntMatrix, Snf};
pub use qmodz::{format_rational, parse_rational, ParseRationalError, QmodZ};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AbGroupError {
    #[error("relation row {row} has length {found}, expected {expected}")]
    DimensionMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("homomorphism does not kill relation {relation} of the source group")]
    RelationViolation { relation: usize },
    #[error("operation requires a finite group, but the free rank is {free_rank}")]
    InfiniteGroup { free_rank: usize },
    #[error("group too large to enumerate ({0} elements)")]
    TooLarge(String),
}

/// Order of an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

/// An element in canonical coordinates of its group: torsion coordinates
/// first (each reduced modulo its invariant factor), then free coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug)]
pub struct FpAbelianGroup {
    generator_count: usize,
    relations: IntMatrix,
    snf: Snf,
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
    /// Column of the Smith basis backing each canonical coordinate.
    coord_cols: Vec<usize>,
}

impl FpAbelianGroup {
    pub fn new(generator_count: usize, relations: IntMatrix) -> Result<Self, AbGroupError> {
        if relations.cols() != generator_count {
            return Err(AbGroupError::DimensionMismatch {
                row: 0,
                expected: generator_count,
                found: relations.cols(),
            });
        }
        let snf = smith_normal_form(&relations);
        let rank = snf.rank();
        let diag = snf.diagonal();
        let mut coord_cols = Vec::new();
        let mut invariant_factors = Vec::new();
        for (c, d) in diag.iter().enumerate().take(rank) {
            if !d.is_one() {
                coord_cols.push(c);
                invariant_factors.push(d.clone());
            }
        }
        coord_cols.extend(rank..generator_count);
        Ok(FpAbelianGroup {
            generator_count,
            relations,
            snf,
            invariant_factors,
            free_rank: generator_count - rank,
            coord_cols,
        })
    }

    /// Convenience constructor from small integer rows.
    pub fn from_relations(generator_count: usize, rows: &[Vec<i64>]) -> Result<Self, AbGroupError> {
        if let Some((row, r)) = rows
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != generator_count)
        {
            return Err(AbGroupError::DimensionMismatch {
                row,
                expected: generator_count,
                found: r.len(),
            });
        }
        Self::new(
            generator_count,
            IntMatrix::from_i64_rows(rows, generator_count),
        )
    }

    pub fn trivial() -> Self {
        Self::new(0, IntMatrix::zeros(0, 0)).expect("trivial group")
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(0, rank)).expect("free group")
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_invariants(&[n])
    }

    /// `ℤ/d₁ ⊕ … ⊕ ℤ/dₖ` presented diagonally.
    pub fn from_invariants(ds: &[u64]) -> Self {
        let entries: Vec<BigInt> = ds.iter().map(|&d| BigInt::from(d)).collect();
        Self::new(ds.len(), IntMatrix::diagonal(&entries)).expect("diagonal presentation")
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn snf(&self) -> &Snf {
        &self.snf
    }

    /// Invariant factors greater than one, in divisibility order.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Length of canonical coordinate vectors.
    pub fn coord_len(&self) -> usize {
        self.coord_cols.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    /// Exponent of the torsion subgroup.
    pub fn torsion_exponent(&self) -> BigInt {
        self.invariant_factors
            .iter()
            .fold(BigInt::one(), |a, d| a.lcm(d))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![BigInt::zero(); self.coord_len()],
        }
    }

    fn reduce(&self, mut coords: Vec<BigInt>) -> GroupElement {
        for (c, d) in coords.iter_mut().zip(&self.invariant_factors) {
            *c = c.mod_floor(d);
        }
        GroupElement { coords }
    }

    /// Canonical element from raw canonical coordinates (reduced here).
    pub fn element(&self, coords: Vec<BigInt>) -> GroupElement {
        assert_eq!(coords.len(), self.coord_len(), "wrong coordinate length");
        self.reduce(coords)
    }

    /// The class of `Σ xᵢ·genᵢ` over the original generators.
    pub fn element_from_generators(&self, x: &[BigInt]) -> GroupElement {
        assert_eq!(
            x.len(),
            self.generator_count,
            "wrong generator vector length"
        );
        let y = self.snf.v.left_apply(x);
        self.reduce(self.coord_cols.iter().map(|&c| y[c].clone()).collect())
    }

    pub fn element_from_i64(&self, x: &[i64]) -> GroupElement {
        let x: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.element_from_generators(&x)
    }

    /// Original generator `i`.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut x = vec![BigInt::zero(); self.generator_count];
        x[i] = BigInt::one();
        self.element_from_generators(&x)
    }

    /// Canonical generator `k` (unit vector in canonical coordinates).
    pub fn canonical_generator(&self, k: usize) -> GroupElement {
        let mut c = vec![BigInt::zero(); self.coord_len()];
        c[k] = BigInt::one();
        self.reduce(c)
    }

    /// A representative over the original generators.
    pub fn lift(&self, g: &GroupElement) -> Vec<BigInt> {
        let mut y = vec![BigInt::zero(); self.generator_count];
        for (k, &c) in self.coord_cols.iter().enumerate() {
            y[c] = g.coords[k].clone();
        }
        self.snf.v_inv.left_apply(&y)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.reduce(a.coords.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &GroupElement, k: &BigInt) -> GroupElement {
        self.reduce(a.coords.iter().map(|x| x * k).collect())
    }

    pub fn is_zero(&self, a: &GroupElement) -> bool {
        a.coords.iter().all(|c| c.is_zero())
    }

    pub fn element_order(&self, a: &GroupElement) -> Order {
        let t = self.torsion_rank();
        if a.coords[t..].iter().any(|c| !c.is_zero()) {
            return Order::Infinite;
        }
        let n = a.coords[..t]
            .iter()
            .zip(&self.invariant_factors)
            .fold(BigInt::one(), |acc, (c, d)| acc.lcm(&(d / c.gcd(d))));
        Order::Finite(n)
    }

    /// All elements of a finite group, torsion coordinates in lexicographic
    /// order.
    pub fn elements(&self) -> Result<Vec<GroupElement>, AbGroupError> {
        let order = self.order().ok_or(AbGroupError::InfiniteGroup {
            free_rank: self.free_rank,
        })?;
        let n = order
            .to_usize()
            .filter(|&n| n <= 1 << 20)
            .ok_or_else(|| AbGroupError::TooLarge(order.to_string()))?;
        let mods: Vec<usize> = self
            .invariant_factors
            .iter()
            .map(|d| d.to_usize().expect("bounded by order"))
            .collect();
        let mut out = Vec::with_capacity(n);
        let mut digits = vec![0usize; mods.len()];
        for _ in 0..n {
            out.push(GroupElement {
                coords: digits.iter().map(|&x| BigInt::from(x)).collect(),
            });
            for k in (0..digits.len()).rev() {
                digits[k] += 1;
                if digits[k] < mods[k] {
                    break;
                }
                digits[k] = 0;
            }
        }
        Ok(out)
    }

    /// Rows `dₖ·eₖ` spanning the canonical relation lattice.
    fn torsion_lattice(&self) -> IntMatrix {
        let n = self.coord_len();
        let rows = self
            .invariant_factors
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let mut r = vec![BigInt::zero(); n];
                r[k] = d.clone();
                r
            })
            .collect();
        IntMatrix::from_rows(rows, n)
    }

    /// Subgroup generated by `gens`, presented on those generators.
    pub fn subgroup_generated(&self, gens: &[GroupElement]) -> Embedding {
        let k = gens.len();
        let n = self.coord_len();
        let s = IntMatrix::from_rows(gens.iter().map(|g| g.coords.clone()).collect(), n);
        let kernel = left_kernel(&s.vstack(&self.torsion_lattice()));
        let relations = IntMatrix::from_rows(
            (0..kernel.rows())
                .map(|i| kernel.row(i)[..k].to_vec())
                .filter(|r| r.iter().any(|x| !x.is_zero()))
                .collect(),
            k,
        );
        Embedding {
            group: FpAbelianGroup::new(k, relations).expect("consistent dimensions"),
            images: gens.to_vec(),
        }
    }

    /// The subgroup `{g : n·g = 0}`.
    pub fn n_torsion(&self, n: u64) -> Embedding {
        assert!(n >= 1, "n must be positive");
        let n = BigInt::from(n);
        let gens: Vec<GroupElement> = self
            .invariant_factors
            .iter()
            .enumerate()
            .filter_map(|(k, d)| {
                let g = n.gcd(d);
                (!g.is_one()).then(|| self.scale(&self.canonical_generator(k), &(d / g)))
            })
            .collect();
        self.subgroup_generated(&gens)
    }

    /// Image of `g` under the homomorphism sending original generator `i` of
    /// `self` to row `i` of `images` (written over the generators of
    /// `target`).
    pub fn map_element(
        &self,
        target: &FpAbelianGroup,
        images: &IntMatrix,
        g: &GroupElement,
    ) -> GroupElement {
        target.element_from_generators(&images.left_apply(&self.lift(g)))
    }

    /// Kernel of the homomorphism `self → target` whose matrix has one row
    /// per generator of `self`, written over the generators of `target`.
    pub fn kernel(
        &self,
        target: &FpAbelianGroup,
        images: &IntMatrix,
    ) -> Result<Embedding, AbGroupError> {
        assert_eq!(images.rows(), self.generator_count);
        assert_eq!(images.cols(), target.generator_count);
        for r in 0..self.relations.rows() {
            let img = target.element_from_generators(&images.left_apply(self.relations.row(r)));
            if !target.is_zero(&img) {
                return Err(AbGroupError::RelationViolation { relation: r });
            }
        }
        let s = self.coord_len();
        let phi = IntMatrix::from_rows(
            (0..s)
                .map(|k| {
                    self.map_element(target, images, &self.canonical_generator(k))
                        .coords
                })
                .collect(),
            target.coord_len(),
        );
        let kernel = left_kernel(&phi.vstack(&target.torsion_lattice()));
        let gens: Vec<GroupElement> = (0..kernel.rows())
            .map(|i| self.element(kernel.row(i)[..s].to_vec()))
            .filter(|g| !self.is_zero(g))
            .collect();
        Ok(self.subgroup_generated(&gens))
    }

    /// All characters `A → ℚ/ℤ` of a finite group, each given by its values
    /// on the canonical generators. Enumerated in lexicographic order of the
    /// numerators.
    pub fn dual_characters(&self) -> Result<Vec<AbelianCharacter>, AbGroupError> {
        let elems = self.elements()?;
        let dens: Vec<i64> = self
            .invariant_factors
            .iter()
            .map(|d| d.to_i64().expect("small group"))
            .collect();
        Ok(elems
            .into_iter()
            .map(|e| AbelianCharacter {
                values: e
                    .coords
                    .iter()
                    .zip(&dens)
                    .map(|(k, &d)| QmodZ::new(k.to_i64().expect("reduced"), d))
                    .collect(),
            })
            .collect())
    }
}

/// A character of a finite abelian group, by its values on the canonical
/// generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianCharacter {
    pub values: Vec<QmodZ>,
}

impl AbelianCharacter {
    pub fn trivial(group: &FpAbelianGroup) -> Self {
        AbelianCharacter {
            values: vec![QmodZ::ZERO; group.torsion_rank()],
        }
    }

    pub fn evaluate(&self, g: &GroupElement) -> QmodZ {
        self.values
            .iter()
            .zip(&g.coords)
            .map(|(v, c)| {
                let c = c.mod_floor(&BigInt::from(v.denominator()));
                v.times(c.to_i64().expect("reduced"))
            })
            .sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

/// A subgroup presented on its own generators, together with the images of
/// those generators in the ambient group.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub group: FpAbelianGroup,
    pub images: Vec<GroupElement>,
}

impl Embedding {
    pub fn embed(&self, parent: &FpAbelianGroup, x: &GroupElement) -> GroupElement {
        let c = self.group.lift(x);
        c.iter()
            .zip(&self.images)
            .fold(parent.zero(), |acc, (k, img)| {
                parent.add(&acc, &parent.scale(img, k))
            })
    }

    /// The element of the subgroup mapping to `y`, if `y` lies in it.
    pub fn preimage(&self, parent: &FpAbelianGroup, y: &GroupElement) -> Option<GroupElement> {
        let n = parent.coord_len();
        let s = IntMatrix::from_rows(self.images.iter().map(|g| g.coords.clone()).collect(), n);
        let b = s.vstack(&parent.torsion_lattice());
        let x = solve_left(&b, &y.coords)?;
        Some(self.group.element_from_generators(&x[..self.images.len()]))
    }
}
