use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;

use crate::abgroup::QmodZ;

thread_local! {
    static CYCLOTOMIC: RefCell<HashMap<usize, Vec<i64>>> = RefCell::new(HashMap::new());
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial,
/// obtained by dividing `xⁿ − 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    assert!(n >= 1);
    if let Some(p) = CYCLOTOMIC.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_divide(&num, &cyclotomic_polynomial(d));
        }
    }
    CYCLOTOMIC.with(|c| c.borrow_mut().insert(n, num.clone()));
    num
}

fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "monic divisor");
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[i + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0), "division is exact");
    quot
}

/// An element of `ℤ[ζ_N]`, stored as coefficients of `1, ζ, …, ζ^{N−1}`.
/// The representation is not unique; equality reduces modulo `Φ_N`.
#[derive(Clone)]
pub struct CycloNumber {
    level: usize,
    coeffs: Vec<i64>,
}

impl CycloNumber {
    pub fn zero(level: usize) -> Self {
        assert!(level >= 1);
        CycloNumber {
            level,
            coeffs: vec![0; level],
        }
    }

    pub fn from_integer(level: usize, k: i64) -> Self {
        let mut z = Self::zero(level);
        z.coeffs[0] = k;
        z
    }

    /// `ζ_N^k`
    pub fn root(level: usize, k: i64) -> Self {
        let mut z = Self::zero(level);
        z.coeffs[k.mod_floor(&(level as i64)) as usize] = 1;
        z
    }

    /// `exp(2πi·q)`; panics if the denominator of `q` does not divide the
    /// level.
    pub fn from_qmodz(level: usize, q: QmodZ) -> Self {
        Self::root(level, exponent_at_level(level, q))
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn add_root(&mut self, k: usize, mult: i64) {
        self.coeffs[k % self.level] += mult;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level, "level mismatch");
        CycloNumber {
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level, "level mismatch");
        CycloNumber {
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level, "level mismatch");
        let n = self.level;
        let mut out = vec![0i64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[(i + j) % n] += a * b;
            }
        }
        CycloNumber {
            level: n,
            coeffs: out,
        }
    }

    /// Complex conjugate: `ζ^k ↦ ζ^{−k}`.
    pub fn conj(&self) -> Self {
        let n = self.level;
        let mut out = vec![0i64; n];
        for (k, &a) in self.coeffs.iter().enumerate() {
            out[(n - k) % n] += a;
        }
        CycloNumber {
            level: n,
            coeffs: out,
        }
    }

    /// Re-expresses the number at a multiple of the current level.
    pub fn lift_to(&self, level: usize) -> Self {
        assert_eq!(level % self.level, 0, "level must be a multiple");
        let step = level / self.level;
        let mut out = vec![0i64; level];
        for (k, &a) in self.coeffs.iter().enumerate() {
            out[k * step] += a;
        }
        CycloNumber { level, coeffs: out }
    }

    /// Canonical coefficients modulo `Φ_N` (length `φ(N)`).
    pub fn reduced(&self) -> Vec<i64> {
        let phi = cyclotomic_polynomial(self.level);
        let deg = phi.len() - 1;
        let mut rem = self.coeffs.clone();
        for i in (deg..rem.len()).rev() {
            let c = rem[i];
            if c != 0 {
                for (j, &b) in phi.iter().enumerate() {
                    rem[i - deg + j] -= c * b;
                }
            }
        }
        rem.truncate(deg);
        rem
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(|&c| c == 0)
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<i64> {
        let r = self.reduced();
        r.iter()
            .skip(1)
            .all(|&c| c == 0)
            .then(|| r.first().copied().unwrap_or(0))
    }
}

/// Exponent `k` with `q = k/N`.
pub fn exponent_at_level(level: usize, q: QmodZ) -> i64 {
    let den = q.denominator();
    assert!(
        level as i64 % den == 0,
        "denominator {den} does not divide level {level}"
    );
    q.numerator() * (level as i64 / den)
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            return self.sub(other).is_zero();
        }
        let l = self.level.lcm(&other.level);
        self.lift_to(l).sub(&other.lift_to(l)).is_zero()
    }
}

impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.to_integer() {
            return write!(f, "{k}");
        }
        let mut first = true;
        for (k, &c) in self.reduced().iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "z{}^{k}", self.level)?,
                _ => write!(f, "{a}*z{}^{k}", self.level)?,
            }
        }
        Ok(())
    }
}
