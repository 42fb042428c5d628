//! Double-double arithmetic: an unevaluated sum `hi + lo` of two f64 values
//! with `|lo| ≤ ulp(hi)/2`, giving about 106 significand bits.
//!
//! Only what the margin recheck needs: the four field operations and
//! `sin_cos` for arguments of moderate size.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct DD {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

// π/2 split into three doubles.
const HALF_PI: [f64; 3] = [
    std::f64::consts::FRAC_PI_2,
    6.123233995736766e-17,
    -1.4973849048591698e-33,
];

impl DD {
    pub const ZERO: DD = DD { hi: 0.0, lo: 0.0 };
    pub const ONE: DD = DD { hi: 1.0, lo: 0.0 };

    pub const fn from_f64(x: f64) -> DD {
        DD { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_sign_positive_strict(self) -> bool {
        self.hi > 0.0 || (self.hi == 0.0 && self.lo > 0.0)
    }

    pub fn abs(self) -> DD {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn mul_f64(self, b: f64) -> DD {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        DD { hi, lo }
    }

    pub fn sqrt(self) -> DD {
        if self.hi <= 0.0 {
            return DD::ZERO;
        }
        // One Newton step from the double approximation.
        let x = self.hi.sqrt();
        let xx = DD::from_f64(x) * DD::from_f64(x);
        let corr = (self - xx).hi / (2.0 * x);
        let (hi, lo) = two_sum(x, corr);
        DD { hi, lo }
    }

    /// `(sin x, cos x)`. Reduces by multiples of π/2, then sums Taylor series
    /// on `|r| ≤ π/4`. Accurate to a few units in the last place of the
    /// double-double for `|x|` up to a few thousand.
    pub fn sin_cos(self) -> (DD, DD) {
        let k = (self.to_f64() / HALF_PI[0]).round();
        let r = self
            - DD::from_f64(HALF_PI[0]).mul_f64(k)
            - DD::from_f64(HALF_PI[1]).mul_f64(k)
            - DD::from_f64(HALF_PI[2]).mul_f64(k);
        let (s, c) = taylor_sin_cos(r);
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
}

fn taylor_sin_cos(r: DD) -> (DD, DD) {
    let r2 = r * r;
    let tiny = 1e-34;
    // sin
    let mut term = r;
    let mut sin = r;
    let mut n = 1.0;
    while term.hi.abs() > tiny {
        term = -(term * r2) / DD::from_f64((n + 1.0) * (n + 2.0));
        sin = sin + term;
        n += 2.0;
    }
    // cos
    let mut term = DD::ONE;
    let mut cos = DD::ONE;
    let mut n = 0.0;
    while term.hi.abs() > tiny {
        term = -(term * r2) / DD::from_f64((n + 1.0) * (n + 2.0));
        cos = cos + term;
        n += 2.0;
    }
    (sin, cos)
}

impl From<f64> for DD {
    fn from(x: f64) -> Self {
        DD::from_f64(x)
    }
}

impl Add for DD {
    type Output = DD;
    fn add(self, b: DD) -> DD {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DD { hi, lo }
    }
}

impl Neg for DD {
    type Output = DD;
    fn neg(self) -> DD {
        DD {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DD {
    type Output = DD;
    fn sub(self, b: DD) -> DD {
        self + (-b)
    }
}

impl Mul for DD {
    type Output = DD;
    fn mul(self, b: DD) -> DD {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DD { hi, lo }
    }
}

impl Div for DD {
    type Output = DD;
    fn div(self, b: DD) -> DD {
        // Long division: two correction steps.
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DD { hi, lo } + DD::from_f64(q3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_keeps_the_low_part() {
        let a = DD::from_f64(1.0) + DD::from_f64(1e-20);
        assert_eq!(a.hi, 1.0);
        assert_eq!(a.lo, 1e-20);
        assert_eq!((a - DD::ONE).to_f64(), 1e-20);
    }

    #[test]
    fn division_roundtrip() {
        let a = DD::from_f64(1.0) / DD::from_f64(3.0);
        let back = a * DD::from_f64(3.0) - DD::ONE;
        assert!(back.to_f64().abs() < 1e-31, "{back:?}");
    }

    #[test]
    fn pythagorean_identity_and_double_agreement() {
        for i in 0..200 {
            let x = -7.0 + 0.0731 * i as f64;
            let (s, c) = DD::from_f64(x).sin_cos();
            let one = s * s + c * c - DD::ONE;
            assert!(one.to_f64().abs() < 1e-30, "x={x}: {one:?}");
            assert!((s.to_f64() - x.sin()).abs() < 2e-16);
            assert!((c.to_f64() - x.cos()).abs() < 2e-16);
        }
    }

    #[test]
    fn pi_gives_tiny_sine() {
        // sin(fl(π)) = π - fl(π) ≈ 1.2246e-16, known to many digits.
        let (s, _) = DD::from_f64(std::f64::consts::PI).sin_cos();
        assert!((s.to_f64() - 1.2246467991473532e-16).abs() < 1e-30);
    }

    #[test]
    fn sqrt_two() {
        let r = DD::from_f64(2.0).sqrt();
        let err = r * r - DD::from_f64(2.0);
        assert!(err.to_f64().abs() < 1e-30);
    }
}
