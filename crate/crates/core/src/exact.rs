//! Exact arithmetic in the ring `Z[√2]`.
//!
//! Every length that appears in this crate is a sum of unit steps and
//! diagonal steps, so it lives in `Z[√2]`. Thresholds of the form `c·√n`
//! (with `n` a squared Euclidean distance) are compared after squaring, so no
//! floating point is ever involved in a decision.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use thiserror::Error;

/// An element `a + b·√2` of `Z[√2]`.
///
/// Equality is componentwise: `√2` is irrational, so distinct coefficient
/// pairs denote distinct reals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Zr2 {
    pub a: i64,
    pub b: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("negative operand {0} where a nonnegative value is required")]
    Negative(Zr2),
}

impl Zr2 {
    pub const ZERO: Zr2 = Zr2 { a: 0, b: 0 };
    pub const ONE: Zr2 = Zr2 { a: 1, b: 0 };
    pub const SQRT2: Zr2 = Zr2 { a: 0, b: 1 };
    /// The optimal degree-3 dilation `1 + √2`.
    pub const DILATION: Zr2 = Zr2 { a: 1, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Zr2 { a, b }
    }

    pub const fn int(a: i64) -> Self {
        Zr2 { a, b: 0 }
    }

    /// Length of a lattice step with squared norm 1 or 2.
    pub fn step_length(norm_sq: i64) -> Option<Self> {
        match norm_sq {
            1 => Some(Zr2::ONE),
            2 => Some(Zr2::SQRT2),
            _ => None,
        }
    }

    pub fn sign(self) -> i32 {
        sign_parts(self.a as i128, self.b as i128)
    }

    pub fn is_nonnegative(self) -> bool {
        self.sign() >= 0
    }

    /// The conjugate `a - b·√2`.
    pub fn conj(self) -> Self {
        Zr2::new(self.a, -self.b)
    }

    /// `a² - 2b²`.
    pub fn norm(self) -> i128 {
        let a = self.a as i128;
        let b = self.b as i128;
        a * a - 2 * b * b
    }

    /// Floating-point approximation. Display and reporting only.
    pub fn approx(self) -> f64 {
        self.a as f64 + self.b as f64 * core::f64::consts::SQRT_2
    }

    pub fn checked_add(self, rhs: Self) -> Option<Self> {
        Some(Zr2::new(self.a.checked_add(rhs.a)?, self.b.checked_add(rhs.b)?))
    }

    pub fn checked_sub(self, rhs: Self) -> Option<Self> {
        Some(Zr2::new(self.a.checked_sub(rhs.a)?, self.b.checked_sub(rhs.b)?))
    }

    pub fn checked_mul(self, rhs: Self) -> Option<Self> {
        // (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
        let ac = self.a.checked_mul(rhs.a)?;
        let bd2 = self.b.checked_mul(rhs.b)?.checked_mul(2)?;
        let ad = self.a.checked_mul(rhs.b)?;
        let bc = self.b.checked_mul(rhs.a)?;
        Some(Zr2::new(ac.checked_add(bd2)?, ad.checked_add(bc)?))
    }

    pub fn scale(self, k: i64) -> Self {
        match (self.a.checked_mul(k), self.b.checked_mul(k)) {
            (Some(a), Some(b)) => Zr2::new(a, b),
            _ => overflow("scale"),
        }
    }
}

#[cold]
#[inline(never)]
fn overflow(op: &str) -> ! {
    panic!("Z[√2] coefficient overflow in {op}")
}

/// Sign of `a + b·√2` for wide coefficients.
fn sign_parts(a: i128, b: i128) -> i32 {
    let sa = a.signum() as i32;
    let sb = b.signum() as i32;
    if sa == sb || sb == 0 {
        return sa;
    }
    if sa == 0 {
        return sb;
    }
    // Opposite signs: the term with the larger square wins.
    let a2 = a.checked_mul(a).unwrap_or_else(|| overflow("sign"));
    let b2 = b
        .checked_mul(b)
        .and_then(|v| v.checked_mul(2))
        .unwrap_or_else(|| overflow("sign"));
    match a2.cmp(&b2) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        // a² = 2b² has no nonzero integer solution.
        Ordering::Equal => unreachable!("a² = 2b² with a, b nonzero"),
    }
}

pub fn sign(z: Zr2) -> i32 {
    z.sign()
}

/// Decides `lhs ≤ c·√n` for nonnegative `lhs` and `c`.
pub fn leq_scaled_sqrt(lhs: Zr2, c: Zr2, n: u64) -> Result<bool, ExactError> {
    if lhs.sign() < 0 {
        return Err(ExactError::Negative(lhs));
    }
    if c.sign() < 0 {
        return Err(ExactError::Negative(c));
    }
    Ok(square_leq(lhs, c, n))
}

/// Decides `c·√n < rhs` for nonnegative `c`. A nonpositive `rhs` is never
/// exceeded.
pub fn scaled_sqrt_lt(c: Zr2, n: u64, rhs: Zr2) -> Result<bool, ExactError> {
    if c.sign() < 0 {
        return Err(ExactError::Negative(c));
    }
    if rhs.sign() <= 0 {
        return Ok(false);
    }
    Ok(!square_leq(rhs, c, n))
}

/// `x² ≤ c²·n` for nonnegative `x`, `c`.
fn square_leq(x: Zr2, c: Zr2, n: u64) -> bool {
    let x2 = wide_square(x);
    let c2 = wide_square(c);
    let n = n as i128;
    let rhs = (
        c2.0.checked_mul(n).unwrap_or_else(|| overflow("scaled square")),
        c2.1.checked_mul(n).unwrap_or_else(|| overflow("scaled square")),
    );
    sign_parts(rhs.0 - x2.0, rhs.1 - x2.1) >= 0
}

fn wide_square(z: Zr2) -> (i128, i128) {
    let a = z.a as i128;
    let b = z.b as i128;
    let a2 = a.checked_mul(a).unwrap_or_else(|| overflow("square"));
    let b2 = b.checked_mul(b).unwrap_or_else(|| overflow("square"));
    (a2 + 2 * b2, 2 * a * b)
}

impl Ord for Zr2 {
    fn cmp(&self, other: &Self) -> Ordering {
        let da = self.a as i128 - other.a as i128;
        let db = self.b as i128 - other.b as i128;
        sign_parts(da, db).cmp(&0)
    }
}

impl PartialOrd for Zr2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Zr2 {
    type Output = Zr2;
    fn add(self, rhs: Zr2) -> Zr2 {
        self.checked_add(rhs).unwrap_or_else(|| overflow("add"))
    }
}

impl AddAssign for Zr2 {
    fn add_assign(&mut self, rhs: Zr2) {
        *self = *self + rhs;
    }
}

impl Sub for Zr2 {
    type Output = Zr2;
    fn sub(self, rhs: Zr2) -> Zr2 {
        self.checked_sub(rhs).unwrap_or_else(|| overflow("sub"))
    }
}

impl SubAssign for Zr2 {
    fn sub_assign(&mut self, rhs: Zr2) {
        *self = *self - rhs;
    }
}

impl Mul for Zr2 {
    type Output = Zr2;
    fn mul(self, rhs: Zr2) -> Zr2 {
        self.checked_mul(rhs).unwrap_or_else(|| overflow("mul"))
    }
}

impl Neg for Zr2 {
    type Output = Zr2;
    fn neg(self) -> Zr2 {
        match (self.a.checked_neg(), self.b.checked_neg()) {
            (Some(a), Some(b)) => Zr2::new(a, b),
            _ => overflow("neg"),
        }
    }
}

impl From<i64> for Zr2 {
    fn from(a: i64) -> Self {
        Zr2::int(a)
    }
}

/// Renders as `a+b√2`, e.g. `-612+528√2`, `1+3√2`, `5`, `√2`.
impl fmt::Display for Zr2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Zr2 { a, b } = *self;
        if b == 0 {
            return write!(f, "{a}");
        }
        let coeff = |f: &mut fmt::Formatter<'_>, b: i64| match b {
            1 => Ok(()),
            -1 => write!(f, "-"),
            _ => write!(f, "{b}"),
        };
        if a == 0 {
            coeff(f, b)?;
            return write!(f, "√2");
        }
        write!(f, "{a}")?;
        if b > 0 {
            write!(f, "+")?;
        }
        coeff(f, b)?;
        write!(f, "√2")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn sign_examples() {
        assert_eq!(sign(Zr2::new(0, 0)), 0);
        assert_eq!(sign(Zr2::new(-612, 528)), 1);
        assert_eq!(sign(Zr2::new(3, -2)), 1);
        assert_eq!(sign(Zr2::new(2, -2)), -1);
        assert_eq!(sign(Zr2::new(-1, 0)), -1);
        assert_eq!(sign(Zr2::new(0, -3)), -1);
    }

    #[test]
    fn scaled_sqrt_examples() {
        let c = Zr2::DILATION;
        assert!(leq_scaled_sqrt(Zr2::new(1, 3), c, 5).unwrap());
        assert!(leq_scaled_sqrt(Zr2::int(5), c, 5).unwrap());
        assert!(leq_scaled_sqrt(Zr2::ZERO, Zr2::ZERO, 7).unwrap());
        // 3 + √2 ≈ 4.414 < 5.398
        assert!(leq_scaled_sqrt(Zr2::new(3, 1), c, 5).unwrap());
        // boundary inclusive: 1 + √2 ≤ (1 + √2)·1
        assert!(leq_scaled_sqrt(c, c, 1).unwrap());
        assert!(!leq_scaled_sqrt(Zr2::new(2, 1), c, 1).unwrap());
        assert_eq!(
            leq_scaled_sqrt(Zr2::int(-1), c, 1),
            Err(ExactError::Negative(Zr2::int(-1)))
        );
        assert!(leq_scaled_sqrt(Zr2::ONE, Zr2::new(-1, 0), 1).is_err());
    }

    #[test]
    fn strict_comparison() {
        // (1 + √2)·1 + 2 = 3 + √2 < 5
        assert!(scaled_sqrt_lt(Zr2::DILATION, 1, Zr2::int(3)).unwrap());
        assert!(!scaled_sqrt_lt(Zr2::DILATION, 1, Zr2::DILATION).unwrap());
        assert!(!scaled_sqrt_lt(Zr2::ZERO, 4, Zr2::ZERO).unwrap());
        assert!(scaled_sqrt_lt(Zr2::ZERO, 4, Zr2::ONE).unwrap());
    }

    #[test]
    fn display() {
        assert_eq!(Zr2::new(-612, 528).to_string(), "-612+528√2");
        assert_eq!(Zr2::new(1, 3).to_string(), "1+3√2");
        assert_eq!(Zr2::new(5, 0).to_string(), "5");
        assert_eq!(Zr2::new(0, 1).to_string(), "√2");
        assert_eq!(Zr2::new(2, -1).to_string(), "2-√2");
        assert_eq!(Zr2::new(0, -4).to_string(), "-4√2");
    }

    #[test]
    fn ordering_matches_values() {
        let mut v = [
            Zr2::new(5, 0),
            Zr2::new(1, 3),
            Zr2::new(3, 1),
            Zr2::new(0, 1),
            Zr2::new(2, 0),
        ];
        v.sort();
        assert_eq!(
            v,
            [
                Zr2::new(0, 1),
                Zr2::new(2, 0),
                Zr2::new(3, 1),
                Zr2::new(5, 0),
                Zr2::new(1, 3)
            ]
        );
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_loud() {
        let _ = Zr2::new(i64::MAX, 0) + Zr2::ONE;
    }
}
