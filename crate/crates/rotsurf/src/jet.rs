//! Degree-2 truncated Taylor arithmetic on a single scalar parameter.
//!
//! A [`Jet2`] carries a value together with first and second derivatives, and
//! every operation propagates them through the product, quotient, and chain
//! rules. This is the derivative engine behind curves and surface patches;
//! nothing here knows about geometry.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet2 {
    pub const ZERO: Jet2 = Jet2 {
        value: 0.0,
        d1: 0.0,
        d2: 0.0,
    };

    /// Lift a constant: both derivatives vanish.
    pub fn constant(v: f64) -> Self {
        Jet2 {
            value: v,
            d1: 0.0,
            d2: 0.0,
        }
    }

    /// The parameter itself: unit first derivative.
    pub fn variable(v: f64) -> Self {
        Jet2 {
            value: v,
            d1: 1.0,
            d2: 0.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }

    /// Chain rule for a univariate function given its value and first two
    /// derivatives at `self.value`.
    fn lift(self, f: f64, fp: f64, fpp: f64) -> Self {
        Jet2 {
            value: f,
            d1: fp * self.d1,
            d2: fpp * self.d1 * self.d1 + fp * self.d2,
        }
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.lift(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.lift(c, -s, -c)
    }

    pub fn sinh(self) -> Self {
        let s = self.value.sinh();
        let c = self.value.cosh();
        self.lift(s, c, s)
    }

    pub fn cosh(self) -> Self {
        let s = self.value.sinh();
        let c = self.value.cosh();
        self.lift(c, s, c)
    }

    pub fn exp(self) -> Self {
        let e = self.value.exp();
        self.lift(e, e, e)
    }

    pub fn sqrt(self) -> Self {
        let r = self.value.sqrt();
        self.lift(r, 0.5 / r, -0.25 / (r * r * r))
    }

    /// Integer power; negative bases stay meaningful.
    pub fn powi(self, k: i32) -> Self {
        let v = self.value;
        let f = v.powi(k);
        // coefficients are zeroed first so 0 * v^negative cannot produce NaN
        let fp = if k == 0 {
            0.0
        } else {
            f64::from(k) * v.powi(k - 1)
        };
        let fpp = if k == 0 || k == 1 {
            0.0
        } else {
            f64::from(k) * f64::from(k - 1) * v.powi(k - 2)
        };
        self.lift(f, fp, fpp)
    }

    /// Real power with a constant exponent. Integer exponents are routed
    /// through [`Jet2::powi`].
    pub fn powf(self, k: f64) -> Self {
        if k.fract() == 0.0 && k.abs() <= f64::from(i32::MAX) {
            return self.powi(k as i32);
        }
        let v = self.value;
        self.lift(
            v.powf(k),
            k * v.powf(k - 1.0),
            k * (k - 1.0) * v.powf(k - 2.0),
        )
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        Jet2 {
            value: self.value + rhs.value,
            d1: self.d1 + rhs.d1,
            d2: self.d2 + rhs.d2,
        }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        Jet2 {
            value: self.value - rhs.value,
            d1: self.d1 - rhs.d1,
            d2: self.d2 - rhs.d2,
        }
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2 {
            value: -self.value,
            d1: -self.d1,
            d2: -self.d2,
        }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        Jet2 {
            value: self.value * rhs.value,
            d1: self.d1 * rhs.value + self.value * rhs.d1,
            d2: self.d2 * rhs.value + 2.0 * self.d1 * rhs.d1 + self.value * rhs.d2,
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    fn div(self, rhs: Jet2) -> Jet2 {
        let value = self.value / rhs.value;
        let d1 = (self.d1 - value * rhs.d1) / rhs.value;
        let d2 = (self.d2 - value * rhs.d2 - 2.0 * d1 * rhs.d1) / rhs.value;
        Jet2 { value, d1, d2 }
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(self, k: f64) -> Jet2 {
        Jet2 {
            value: self.value + k,
            ..self
        }
    }
}

impl Sub<f64> for Jet2 {
    type Output = Jet2;
    fn sub(self, k: f64) -> Jet2 {
        Jet2 {
            value: self.value - k,
            ..self
        }
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, k: f64) -> Jet2 {
        Jet2 {
            value: self.value * k,
            d1: self.d1 * k,
            d2: self.d2 * k,
        }
    }
}

impl Mul<Jet2> for f64 {
    type Output = Jet2;
    fn mul(self, j: Jet2) -> Jet2 {
        j * self
    }
}
