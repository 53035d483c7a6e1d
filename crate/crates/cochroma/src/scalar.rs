//! Exact scalars: rationals and magnitude/phase scalars.
//!
//! Series coefficients are plain rationals. Morphism coefficients live in
//! [`PhaseScalar`], an exact `r·e^(2πi·t)` with rational `r ≥ 0` and rational
//! `t` mod 1. That class of scalars is closed under multiplication and exact
//! k-th roots, which is all the coefficient solver needs; it is *not* closed
//! under addition, so no addition is provided.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

use crate::error::FoundationError;

/// The coefficient field: arbitrary-precision rationals, always reduced,
/// denominator positive. `num`'s `BigRational` maintains both invariants.
pub type Rational = BigRational;

/// Rational from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p/q` (the denominator is always written, so `3`
/// prints as `3/1`). This is the on-disk form.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational, FoundationError> {
    let bad = || FoundationError::BadRational(s.to_string());
    let mut it = s.splitn(2, '/');
    let numer: BigInt = it.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let denom: BigInt = match it.next() {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `n!` as a rational.
pub fn factorial_rat(n: u64) -> Rational {
    Rational::from_integer(factorial(n))
}

/// An exact scalar `mag·e^(2πi·phase)` with `mag` a nonnegative rational and
/// `phase` a rational in `[0, 1)`. Zero is represented with phase 0.
///
/// Phase 0 and phase 1/2 embed the signed rationals; other phases are honest
/// roots of unity times a positive rational.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhaseScalar {
    mag: Rational,
    phase: Rational,
}

impl PhaseScalar {
    /// Builds a scalar, folding the phase into `[0, 1)` and normalizing a
    /// negative magnitude by a half-turn.
    pub fn new(mag: Rational, phase: Rational) -> Self {
        let (mag, phase) = if mag.is_negative() {
            (-mag, phase + rat(1, 2))
        } else {
            (mag, phase)
        };
        if mag.is_zero() {
            return PhaseScalar { mag, phase: Rational::zero() };
        }
        PhaseScalar { mag, phase: phase_mod_one(phase) }
    }

    pub fn zero() -> Self {
        PhaseScalar { mag: Rational::zero(), phase: Rational::zero() }
    }

    pub fn one() -> Self {
        PhaseScalar { mag: Rational::one(), phase: Rational::zero() }
    }

    /// Embeds a signed rational: positive values get phase 0, negative 1/2.
    pub fn from_rational(r: &Rational) -> Self {
        PhaseScalar::new(r.clone(), Rational::zero())
    }

    /// Unit scalar `e^(2πi·phase)`.
    pub fn root_of_unity(phase: Rational) -> Self {
        PhaseScalar::new(Rational::one(), phase)
    }

    pub fn magnitude(&self) -> &Rational {
        &self.mag
    }

    pub fn phase(&self) -> &Rational {
        &self.phase
    }

    pub fn is_zero(&self) -> bool {
        self.mag.is_zero()
    }

    /// True when the phase is 0 or 1/2, i.e. the value is a signed rational.
    pub fn is_real(&self) -> bool {
        self.is_zero() || self.phase.is_zero() || self.phase == rat(1, 2)
    }

    /// The signed rational this scalar embeds, if it is real.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() || self.phase.is_zero() {
            Some(self.mag.clone())
        } else if self.phase == rat(1, 2) {
            Some(-self.mag.clone())
        } else {
            None
        }
    }

    pub fn mul(&self, other: &PhaseScalar) -> PhaseScalar {
        PhaseScalar::new(&self.mag * &other.mag, &self.phase + &other.phase)
    }

    pub fn pow(&self, k: u32) -> PhaseScalar {
        let mut acc = PhaseScalar::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<PhaseScalar> {
        if self.is_zero() {
            return None;
        }
        Some(PhaseScalar::new(self.mag.recip(), -self.phase.clone()))
    }

    /// All `k` exact k-th roots `{ mag^(1/k) · e^(2πi(phase+j)/k) : j = 0..k-1 }`.
    ///
    /// Fails with [`FoundationError::NoExactRoot`] when the magnitude has no
    /// rational k-th root. Zero has the single root zero.
    pub fn kth_roots(&self, k: u32) -> Result<Vec<PhaseScalar>, FoundationError> {
        assert!(k >= 1, "root order must be positive");
        if self.is_zero() {
            return Ok(vec![PhaseScalar::zero()]);
        }
        if k == 1 {
            return Ok(vec![self.clone()]);
        }
        let root_mag = rational_kth_root(&self.mag, k).ok_or_else(|| FoundationError::NoExactRoot {
            value: format_rational(&self.mag),
            order: k,
        })?;
        let k_rat = rat_int(k as i64);
        Ok((0..k)
            .map(|j| PhaseScalar::new(root_mag.clone(), (&self.phase + rat_int(j as i64)) / &k_rat))
            .collect())
    }
}

impl fmt::Debug for PhaseScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PhaseScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", r);
        }
        write!(f, "{}·e^(2πi·{})", self.mag, self.phase)
    }
}

fn phase_mod_one(p: Rational) -> Rational {
    let floor = p.floor();
    p - floor
}

/// Exact k-th root of a nonnegative rational, if one exists.
fn rational_kth_root(x: &Rational, k: u32) -> Option<Rational> {
    debug_assert!(!x.is_negative());
    let n = integer_kth_root(x.numer(), k)?;
    let d = integer_kth_root(x.denom(), k)?;
    Some(Rational::new(n, d))
}

fn integer_kth_root(x: &BigInt, k: u32) -> Option<BigInt> {
    debug_assert!(!x.is_negative());
    let r = x.nth_root(k);
    if num::pow::pow(r.clone(), k as usize) == *x {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let r = parse_rational("-4/6").unwrap();
        assert_eq!(r, rat(-2, 3));
        assert_eq!(format_rational(&r), "-2/3");
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn square_roots_of_one_and_minus_one() {
        let one = PhaseScalar::one();
        let roots = one.kth_roots(2).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&PhaseScalar::one()));
        assert!(roots.contains(&PhaseScalar::from_rational(&rat_int(-1))));

        let minus_one = PhaseScalar::from_rational(&rat_int(-1));
        let roots = minus_one.kth_roots(2).unwrap();
        let phases: Vec<_> = roots.iter().map(|r| r.phase().clone()).collect();
        assert!(phases.contains(&rat(1, 4)));
        assert!(phases.contains(&rat(3, 4)));
    }

    #[test]
    fn no_exact_root_for_one_half() {
        let half = PhaseScalar::from_rational(&rat(1, 2));
        assert!(matches!(half.kth_roots(2), Err(FoundationError::NoExactRoot { .. })));
    }

    #[test]
    fn zero_has_single_root() {
        assert_eq!(PhaseScalar::zero().kth_roots(5).unwrap(), vec![PhaseScalar::zero()]);
    }

    #[test]
    fn roots_raised_back_recover_value() {
        let cases = [
            PhaseScalar::from_rational(&rat(9, 4)),
            PhaseScalar::new(rat(8, 27), rat(1, 3)),
            PhaseScalar::root_of_unity(rat(5, 8)),
        ];
        for x in &cases {
            for k in 1..=4u32 {
                if let Ok(roots) = x.kth_roots(k) {
                    assert_eq!(roots.len(), k as usize);
                    for r in roots {
                        assert_eq!(&r.pow(k), x, "root^{} != value for {}", k, x);
                    }
                }
            }
        }
    }

    #[test]
    fn multiplication_is_commutative_associative_with_identity() {
        let a = PhaseScalar::new(rat(3, 2), rat(1, 8));
        let b = PhaseScalar::new(rat(2, 5), rat(3, 4));
        let c = PhaseScalar::new(rat(7, 3), rat(5, 6));
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert_eq!(a.mul(&PhaseScalar::one()), a);
        assert_eq!(a.mul(&PhaseScalar::zero()), PhaseScalar::zero());
    }

    #[test]
    fn negative_magnitude_folds_into_phase() {
        let x = PhaseScalar::new(rat_int(-2), Rational::zero());
        assert_eq!(x.phase(), &rat(1, 2));
        assert_eq!(x.as_rational(), Some(rat_int(-2)));
    }
}
