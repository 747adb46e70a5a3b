//! Rational functions in canonical reduced form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::rational::{to_f64, Rational};
use super::{AlgebraError, Chart, MultiPoly};

/// `num / den` with `gcd(num, den) = 1` and `den` monic in graded-lex order.
///
/// The canonical form is unique, so structural equality is mathematical
/// equality.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFn {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFn {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        assert!(num.chart() == den.chart(), "numerator/denominator charts differ");
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            let one = MultiPoly::one(den.chart());
            return Self { num, den: one };
        }
        if den.is_constant() {
            let c = den.constant_term().recip();
            return Self {
                num: num.scale(&c),
                den: MultiPoly::one(den.chart()),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coefficient().recip();
        Self {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let one = MultiPoly::one(p.chart());
        Self { num: p, den: one }
    }

    pub fn zero(chart: &Chart) -> Self {
        Self::from_poly(MultiPoly::zero(chart))
    }

    pub fn one(chart: &Chart) -> Self {
        Self::from_poly(MultiPoly::one(chart))
    }

    pub fn constant(chart: &Chart, c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(chart, c))
    }

    pub fn var(chart: &Chart, i: usize) -> Self {
        Self::from_poly(MultiPoly::var(chart, i))
    }

    pub fn chart(&self) -> &Chart {
        self.num.chart()
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn is_constant(&self) -> bool {
        self.is_polynomial() && self.num.is_constant()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            num: self.num.scale(c),
            den: if c.is_zero() {
                MultiPoly::one(self.chart())
            } else {
                self.den.clone()
            },
        }
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RationalFn) -> Result<Self, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, e: u32) -> Self {
        Self {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn derivative(&self, i: usize) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative(i));
        }
        let dn = self.num.derivative(i);
        let dd = self.den.derivative(i);
        if dd.is_zero() {
            return Self::reduce(dn, self.den.clone());
        }
        Self::reduce(&(&dn * &self.den) - &(&self.num * &dd), self.den.pow(2))
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(AlgebraError::Pole {
                denominator: self.den.to_string(),
            });
        }
        Ok(self.num.eval(point) / d)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<f64, AlgebraError> {
        let d = self.den.eval_f64(point);
        if d == 0.0 {
            return Err(AlgebraError::Pole {
                denominator: self.den.to_string(),
            });
        }
        Ok(self.num.eval_f64(point) / d)
    }

    /// Composition with `values[i]` substituted for variable `i` (`None`
    /// keeps the variable).
    pub fn substitute(&self, values: &[Option<RationalFn>]) -> Result<Self, AlgebraError> {
        let n = self.num.substitute(values);
        let d = self.den.substitute(values);
        if d.is_zero() {
            return Err(AlgebraError::SingularSubstitution {
                denominator: self.den.to_string(),
            });
        }
        n.checked_div(&d)
    }

    pub fn embed(&self, target: &Chart) -> Result<Self, AlgebraError> {
        Ok(Self {
            num: self.num.embed(target)?,
            den: self.den.embed(target)?,
        })
    }

    pub fn to_f64_constant(&self) -> Option<f64> {
        self.is_constant().then(|| to_f64(&self.num.constant_term()))
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RationalFn::from_poly(&self.num + &rhs.num);
            }
            return RationalFn::reduce(&self.num + &rhs.num, self.den.clone());
        }
        if rhs.den.is_one() {
            return RationalFn::reduce(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        if self.den.is_one() {
            return RationalFn::reduce(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RationalFn::reduce(num, &a * &rhs.den)
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        if self.is_zero() || rhs.is_zero() {
            return RationalFn::zero(self.chart());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFn::from_poly(&self.num * &rhs.num);
        }
        if self.is_constant() {
            return rhs.scale(&self.num.constant_term());
        }
        if rhs.is_constant() {
            return self.scale(&rhs.num.constant_term());
        }
        // Cross-cancel before multiplying; both inputs are already reduced.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading_coefficient().recip();
        RationalFn {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: RationalFn) -> RationalFn {
        &self + &rhs
    }
}

impl Sub for RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: RationalFn) -> RationalFn {
        &self - &rhs
    }
}

impl Mul for RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: RationalFn) -> RationalFn {
        &self * &rhs
    }
}

impl Neg for RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        -&self
    }
}

impl From<MultiPoly> for RationalFn {
    fn from(p: MultiPoly) -> Self {
        Self::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::{int, rat};
    use super::*;

    fn setup() -> (Chart, MultiPoly, MultiPoly) {
        let c = Chart::new(["a", "b"]).unwrap();
        let a = MultiPoly::var(&c, 0);
        let b = MultiPoly::var(&c, 1);
        (c, a, b)
    }

    #[test]
    fn canonical_form_is_unique() {
        let (_c, a, b) = setup();
        let f = RationalFn::new(&a * &b, (&b * &b).scale(&int(3))).unwrap();
        assert_eq!(f.to_string(), "(1/3*a)/(b)");
        let g = RationalFn::new(a.scale(&rat(2, 3)), b.scale(&int(2))).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn arithmetic_cancels() {
        let (c, a, b) = setup();
        let f = RationalFn::new(MultiPoly::one(&c), &a - &b).unwrap();
        let g = RationalFn::new(MultiPoly::one(&c), &a + &b).unwrap();
        let sum = &f + &g;
        assert_eq!(sum.to_string(), "(2*a)/(a^2 - b^2)");
        let prod = &sum * &RationalFn::from_poly(&(&a * &a) - &(&b * &b));
        assert_eq!(prod.to_string(), "2*a");
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn pole_is_named() {
        let (c, a, b) = setup();
        let f = RationalFn::new(MultiPoly::one(&c), &a - &b).unwrap();
        let err = f.eval(&[int(1), int(1)]).unwrap_err();
        assert_eq!(
            err,
            AlgebraError::Pole {
                denominator: "a - b".into()
            }
        );
        assert!(RationalFn::new(a.clone(), MultiPoly::zero(&c)).is_err());
    }

    #[test]
    fn quotient_rule() {
        let (c, a, b) = setup();
        let f = RationalFn::new(a.clone(), b.clone()).unwrap();
        assert_eq!(f.derivative(1).to_string(), "(-a)/(b^2)");
        let _ = c;
    }
}
