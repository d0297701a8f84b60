//! Genus-0 orbifold curves: marked points with root orders, the Picard group
//! of the root stack, its degree map and torsion, and the polygonal
//! presentation of the fundamental group.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::abgroup::{Embedding, FpAbelianGroup, GroupElement, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbifoldError {
    #[error("operation requires genus 0, got genus {0}")]
    UnsupportedGenus(u32),
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("point {0:?} has order 0")]
    ZeroOrder(String),
    #[error("unknown point label {0:?}")]
    UnknownLabel(String),
    #[error("expected {expected} coefficients, got {found}")]
    WrongLength { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkedPoint {
    pub label: String,
    pub r: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawOrbifold")]
pub struct OrbifoldCurve {
    genus: u32,
    points: Vec<MarkedPoint>,
}

#[derive(Deserialize)]
struct RawOrbifold {
    #[serde(default)]
    genus: u32,
    #[serde(default)]
    points: Vec<MarkedPoint>,
}

impl TryFrom<RawOrbifold> for OrbifoldCurve {
    type Error = OrbifoldError;
    fn try_from(raw: RawOrbifold) -> Result<Self, Self::Error> {
        OrbifoldCurve::new(raw.genus, raw.points)
    }
}

impl OrbifoldCurve {
    pub fn new(genus: u32, points: Vec<MarkedPoint>) -> Result<Self, OrbifoldError> {
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p.label.as_str()) {
                return Err(OrbifoldError::DuplicateLabel(p.label.clone()));
            }
            if p.r == 0 {
                return Err(OrbifoldError::ZeroOrder(p.label.clone()));
            }
        }
        Ok(OrbifoldCurve { genus, points })
    }

    /// Genus-0 curve from `(label, order)` pairs.
    pub fn line(points: &[(&str, u64)]) -> Result<Self, OrbifoldError> {
        Self::new(
            0,
            points
                .iter()
                .map(|&(label, r)| MarkedPoint {
                    label: label.to_string(),
                    r,
                })
                .collect(),
        )
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn points(&self) -> &[MarkedPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn orders(&self) -> Vec<u64> {
        self.points.iter().map(|p| p.r).collect()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.points[i].label
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p.label == label)
    }

    fn require_genus_zero(&self) -> Result<(), OrbifoldError> {
        match self.genus {
            0 => Ok(()),
            g => Err(OrbifoldError::UnsupportedGenus(g)),
        }
    }
}

/// Tag of a Picard generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PicGenerator {
    /// The canonical root of the point with this index.
    Root(usize),
    Hyperplane,
}

/// Picard group of the root stack over the line, on generators
/// `N₁..Nₙ, f` with relations `rᵢNᵢ = f`.
#[derive(Debug, Clone)]
pub struct PicGroup {
    orbifold: OrbifoldCurve,
    group: FpAbelianGroup,
    labels: Vec<PicGenerator>,
    degrees: Vec<Rational64>,
}

/// A subgroup of the Picard group with its generators in Picard coordinates.
#[derive(Debug, Clone)]
pub struct PicSubgroup {
    pub group: FpAbelianGroup,
    pub images: Vec<GroupElement>,
}

impl PicSubgroup {
    pub fn order(&self) -> BigInt {
        self.group.order().expect("finite subgroup")
    }
}

pub fn picard_group(orb: &OrbifoldCurve) -> Result<PicGroup, OrbifoldError> {
    orb.require_genus_zero()?;
    let n = orb.len();
    let rows: Vec<Vec<i64>> = orb
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mut row = vec![0i64; n + 1];
            row[i] = p.r as i64;
            row[n] = -1;
            row
        })
        .collect();
    let group = FpAbelianGroup::new(n + 1, IntMatrix::from_i64_rows(&rows, n + 1))
        .expect("consistent dimensions");
    let mut labels: Vec<PicGenerator> = (0..n).map(PicGenerator::Root).collect();
    labels.push(PicGenerator::Hyperplane);
    let mut degrees: Vec<Rational64> = orb
        .points
        .iter()
        .map(|p| Rational64::new(1, p.r as i64))
        .collect();
    degrees.push(Rational64::from_integer(1));
    Ok(PicGroup {
        orbifold: orb.clone(),
        group,
        labels,
        degrees,
    })
}

impl PicGroup {
    pub fn orbifold(&self) -> &OrbifoldCurve {
        &self.orbifold
    }

    pub fn group(&self) -> &FpAbelianGroup {
        &self.group
    }

    pub fn generator_labels(&self) -> &[PicGenerator] {
        &self.labels
    }

    pub fn degree_map(&self) -> &[Rational64] {
        &self.degrees
    }

    /// The class `d·f + Σ aᵢNᵢ`.
    pub fn class(&self, d: i64, a: &[i64]) -> Result<GroupElement, OrbifoldError> {
        let n = self.orbifold.len();
        if a.len() != n {
            return Err(OrbifoldError::WrongLength {
                expected: n,
                found: a.len(),
            });
        }
        let mut x = a.to_vec();
        x.push(d);
        Ok(self.group.element_from_i64(&x))
    }

    pub fn hyperplane(&self) -> GroupElement {
        self.group.generator(self.orbifold.len())
    }

    pub fn root(&self, i: usize) -> GroupElement {
        self.group.generator(i)
    }

    pub fn root_by_label(&self, label: &str) -> Result<GroupElement, OrbifoldError> {
        let i = self
            .orbifold
            .position(label)
            .ok_or_else(|| OrbifoldError::UnknownLabel(label.to_string()))?;
        Ok(self.root(i))
    }

    pub fn degree(&self, c: &GroupElement) -> Rational64 {
        self.group
            .lift(c)
            .iter()
            .zip(&self.degrees)
            .map(|(x, d)| Rational64::from_integer(x.to_i64().expect("small coefficient")) * d)
            .sum()
    }

    /// The unique `(d, a)` with `c = d·f + Σ aᵢNᵢ` and `0 ≤ aᵢ < rᵢ`.
    pub fn canonical_form(&self, c: &GroupElement) -> (i64, Vec<i64>) {
        let x = self.group.lift(c);
        let n = self.orbifold.len();
        let mut d = x[n].clone();
        let mut a = Vec::with_capacity(n);
        for (i, p) in self.orbifold.points.iter().enumerate() {
            let (q, rem) = x[i].div_mod_floor(&BigInt::from(p.r));
            d += q;
            a.push(rem.to_i64().expect("reduced"));
        }
        (d.to_i64().expect("small degree"), a)
    }

    /// Quotient by the subgroup generated by `f`.
    pub fn quotient_by_hyperplane(&self) -> FpAbelianGroup {
        let n = self.orbifold.len();
        let mut rows = self.group.relations().row_vecs();
        let mut f = vec![BigInt::zero(); n + 1];
        f[n] = BigInt::from(1);
        rows.push(f);
        FpAbelianGroup::new(n + 1, IntMatrix::from_rows(rows, n + 1)).expect("dimensions")
    }

    /// Degree-zero classes.
    pub fn pic_zero(&self) -> PicSubgroup {
        let l = self
            .orbifold
            .points
            .iter()
            .fold(1i64, |acc, p| acc.lcm(&(p.r as i64)));
        let images: Vec<Vec<i64>> = self
            .degrees
            .iter()
            .map(|d| vec![(*d * l).to_integer()])
            .collect();
        let z = FpAbelianGroup::free(1);
        let emb = self
            .group
            .kernel(&z, &IntMatrix::from_i64_rows(&images, 1))
            .expect("degree map kills the relations");
        PicSubgroup {
            group: emb.group,
            images: emb.images,
        }
    }
}

pub fn degree(pic: &PicGroup, c: &GroupElement) -> Rational64 {
    pic.degree(c)
}

pub fn canonical_form(pic: &PicGroup, c: &GroupElement) -> (i64, Vec<i64>) {
    pic.canonical_form(c)
}

/// The `n`-torsion of the degree-zero part of the Picard group.
pub fn pic_zero_torsion(orb: &OrbifoldCurve, n: u64) -> Result<PicSubgroup, OrbifoldError> {
    let pic = picard_group(orb)?;
    let zero = pic.pic_zero();
    let tors: Embedding = zero.group.n_torsion(n);
    let inner = Embedding {
        group: zero.group.clone(),
        images: zero.images.clone(),
    };
    let images = tors
        .images
        .iter()
        .map(|x| inner.embed(pic.group(), x))
        .collect();
    Ok(PicSubgroup {
        group: tors.group,
        images,
    })
}

/// `⟨x₁..xₙ | xᵢ^{rᵢ}, x₁x₂…xₙ⟩`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonalPresentation {
    pub labels: Vec<String>,
    pub orders: Vec<u64>,
}

impl PolygonalPresentation {
    pub fn abelianization(&self) -> FpAbelianGroup {
        self.abelianization_mod(None)
    }

    /// Abelianization tensored with `ℤ/n`.
    pub fn abelianization_mod_n(&self, n: u64) -> FpAbelianGroup {
        self.abelianization_mod(Some(n))
    }

    fn abelianization_mod(&self, n: Option<u64>) -> FpAbelianGroup {
        let k = self.orders.len();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for (i, &r) in self.orders.iter().enumerate() {
            let mut row = vec![0i64; k];
            row[i] = r as i64;
            rows.push(row);
            if let Some(n) = n {
                let mut row = vec![0i64; k];
                row[i] = n as i64;
                rows.push(row);
            }
        }
        if k > 0 {
            rows.push(vec![1; k]);
        }
        FpAbelianGroup::new(k, IntMatrix::from_i64_rows(&rows, k)).expect("dimensions")
    }
}

pub fn polygonal_presentation(orb: &OrbifoldCurve) -> Result<PolygonalPresentation, OrbifoldError> {
    orb.require_genus_zero()?;
    Ok(PolygonalPresentation {
        labels: orb.points.iter().map(|p| p.label.clone()).collect(),
        orders: orb.orders(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(g: &FpAbelianGroup) -> (Vec<i64>, usize) {
        (
            g.invariant_factors()
                .iter()
                .map(|d| d.to_i64().unwrap())
                .collect(),
            g.free_rank(),
        )
    }

    #[test]
    fn rejects_bad_curves() {
        assert!(matches!(
            OrbifoldCurve::line(&[("0", 2), ("0", 3)]),
            Err(OrbifoldError::DuplicateLabel(_))
        ));
        assert!(matches!(
            OrbifoldCurve::line(&[("0", 0)]),
            Err(OrbifoldError::ZeroOrder(_))
        ));
        let g1 = OrbifoldCurve::new(1, vec![]).unwrap();
        assert_eq!(
            picard_group(&g1).unwrap_err(),
            OrbifoldError::UnsupportedGenus(1)
        );
    }

    #[test]
    fn picard_groups() {
        let empty = OrbifoldCurve::line(&[]).unwrap();
        assert_eq!(factors(picard_group(&empty).unwrap().group()), (vec![], 1));
        let c33 = OrbifoldCurve::line(&[("1", 3), ("-1", 3)]).unwrap();
        let pic = picard_group(&c33).unwrap();
        assert_eq!(factors(pic.group()), (vec![3], 1));
        assert_eq!(factors(&pic.quotient_by_hyperplane()), (vec![3, 3], 0));
        let c22 = OrbifoldCurve::line(&[("0", 2), ("1", 2)]).unwrap();
        assert_eq!(factors(picard_group(&c22).unwrap().group()), (vec![2], 1));
    }

    #[test]
    fn degrees() {
        let c33 = OrbifoldCurve::line(&[("1", 3), ("-1", 3)]).unwrap();
        let pic = picard_group(&c33).unwrap();
        assert_eq!(pic.degree(&pic.group().zero()), Rational64::from_integer(0));
        assert_eq!(pic.degree(&pic.root(0)), Rational64::new(1, 3));
        let diff = pic.group().sub(&pic.root(0), &pic.root(1));
        assert_eq!(pic.degree(&diff), Rational64::from_integer(0));
        assert_eq!(pic.degree(&pic.hyperplane()), Rational64::from_integer(1));
    }

    #[test]
    fn canonical_forms() {
        let c33 = OrbifoldCurve::line(&[("1", 3), ("-1", 3)]).unwrap();
        let pic = picard_group(&c33).unwrap();
        assert_eq!(pic.canonical_form(&pic.hyperplane()), (1, vec![0, 0]));
        let minus_n1 = pic.group().neg(&pic.root(0));
        assert_eq!(pic.canonical_form(&minus_n1), (-1, vec![2, 0]));
        let c22 = OrbifoldCurve::line(&[("0", 2), ("1", 2)]).unwrap();
        let pic2 = picard_group(&c22).unwrap();
        let s = pic2.group().add(&pic2.root(0), &pic2.root(1));
        assert_eq!(pic2.canonical_form(&s), (0, vec![1, 1]));
    }

    #[test]
    fn torsion_of_pic_zero() {
        let c33 = OrbifoldCurve::line(&[("1", 3), ("-1", 3)]).unwrap();
        let t = pic_zero_torsion(&c33, 3).unwrap();
        assert_eq!(factors(&t.group), (vec![3], 0));
        let pic = picard_group(&c33).unwrap();
        let diff = pic.group().sub(&pic.root(0), &pic.root(1));
        let emb = Embedding {
            group: t.group.clone(),
            images: t.images.clone(),
        };
        let pre = emb
            .preimage(pic.group(), &diff)
            .expect("N1 - N2 lies in Pic0[3]");
        assert!(!t.group.is_zero(&pre));

        let c22 = OrbifoldCurve::line(&[("0", 2), ("1", 2)]).unwrap();
        assert_eq!(
            factors(&pic_zero_torsion(&c22, 2).unwrap().group),
            (vec![2], 0)
        );
        let empty = OrbifoldCurve::line(&[]).unwrap();
        assert_eq!(
            pic_zero_torsion(&empty, 5).unwrap().order(),
            BigInt::from(1)
        );
    }

    #[test]
    fn presentations() {
        let one = OrbifoldCurve::line(&[("0", 5)]).unwrap();
        assert_eq!(
            polygonal_presentation(&one)
                .unwrap()
                .abelianization()
                .order(),
            Some(1.into())
        );
        let c33 = OrbifoldCurve::line(&[("1", 3), ("-1", 3)]).unwrap();
        let ab = polygonal_presentation(&c33).unwrap().abelianization();
        assert_eq!(factors(&ab), (vec![3], 0));
        let tri = OrbifoldCurve::line(&[("0", 2), ("1", 2), ("inf", 3)]).unwrap();
        let p = polygonal_presentation(&tri).unwrap();
        assert_eq!(p.orders, vec![2, 2, 3]);
        assert_eq!(p.abelianization().order(), Some(2.into()));
    }
}
