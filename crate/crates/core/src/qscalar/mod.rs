//! Exact arithmetic in the field Q(q) of rational functions in the
//! deformation parameter.
//!
//! Every [`QRat`] is kept in a single canonical form: numerator and
//! denominator are coprime integer polynomials, the denominator has a
//! positive leading coefficient, and zero is `0/1`. Laurent expressions
//! such as `q - q^-1` are stored with the negative powers cleared into the
//! denominator, so structural equality is value equality.

mod poly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use poly::Poly;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: Poly,
    den: Poly,
}

impl QRat {
    /// Builds the canonical value of `num * q^qshift / den`.
    pub fn normalize(num: Poly, den: Poly, qshift: i64) -> Result<QRat> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(QRat::zero());
        }
        let (num, den) = if qshift >= 0 {
            (num.shift_up(qshift as usize), den)
        } else {
            (num, den.shift_up((-qshift) as usize))
        };
        Ok(QRat::reduce_pair(num, den))
    }

    fn reduce_pair(num: Poly, den: Poly) -> QRat {
        if num.is_zero() {
            return QRat::zero();
        }
        let (mut num, mut den) = if den.is_one() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        if den.leading().is_some_and(|c| c.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        QRat { num, den }
    }

    pub fn zero() -> QRat {
        QRat {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> QRat {
        QRat::from_int(1)
    }

    pub fn from_int(n: i64) -> QRat {
        QRat {
            num: Poly::constant(BigInt::from(n)),
            den: Poly::one(),
        }
    }

    pub fn from_bigint(n: BigInt) -> QRat {
        QRat {
            num: Poly::constant(n),
            den: Poly::one(),
        }
    }

    /// The rational constant `n/d`.
    pub fn ratio(n: i64, d: i64) -> Result<QRat> {
        QRat::normalize(Poly::from_i64s(&[n]), Poly::from_i64s(&[d]), 0)
    }

    /// The deformation parameter `q`.
    pub fn q() -> QRat {
        QRat::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> QRat {
        if k >= 0 {
            QRat {
                num: Poly::monomial(BigInt::one(), k as usize),
                den: Poly::one(),
            }
        } else {
            QRat {
                num: Poly::one(),
                den: Poly::monomial(BigInt::one(), (-k) as usize),
            }
        }
    }

    /// Builds `sum_i coeffs[i] * q^(low + i)`.
    pub fn laurent(low: i64, coeffs: &[i64]) -> QRat {
        QRat::normalize(Poly::from_i64s(coeffs), Poly::one(), low).expect("nonzero denominator")
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True for values free of `q`.
    pub fn is_rational_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    /// True for values `c * q^k` with `c` a nonzero integer.
    pub fn is_laurent_monomial(&self) -> bool {
        self.num.is_monomial()
            && self.den.is_monomial()
            && self.den.leading().is_some_and(|c| c.is_one())
    }

    /// Rough size measure used to pick simple pivots.
    pub fn complexity(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        let bits: u64 = self
            .num
            .coeffs()
            .iter()
            .chain(self.den.coeffs())
            .map(|c| c.bits())
            .sum();
        self.num.term_count() + self.den.term_count() + bits as usize
    }

    pub fn inv(&self) -> Result<QRat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QRat::reduce_pair(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &QRat) -> Result<QRat> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<QRat> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = QRat::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Substitutes `q = q0`; removable singularities were cancelled at
    /// normalisation.
    pub fn evaluate(&self, q0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::Pole(q0.to_string()));
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Returns the value as `(c, k)` with value `c * q^k` when it is a single
    /// Laurent term with integer coefficient.
    fn as_laurent_monomial(&self) -> Option<(BigInt, i64)> {
        if !self.is_laurent_monomial() {
            return None;
        }
        let kn = self.num.q_order() as i64;
        let kd = self.den.q_order() as i64;
        Some((self.num.leading().unwrap().clone(), kn - kd))
    }
}

impl Zero for QRat {
    fn zero() -> Self {
        QRat::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QRat {
    fn one() -> Self {
        QRat::one()
    }
}

impl Default for QRat {
    fn default() -> Self {
        QRat::zero()
    }
}

impl From<i64> for QRat {
    fn from(n: i64) -> Self {
        QRat::from_int(n)
    }
}

impl<'a> Add<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QRat::reduce_pair(self.num.add(&rhs.num), self.den.clone());
        }
        // Laurent fast path: both denominators are powers of q
        if self.den.is_monomial()
            && rhs.den.is_monomial()
            && self.den.leading().unwrap().is_one()
            && rhs.den.leading().unwrap().is_one()
        {
            let a = self.den.q_order();
            let b = rhs.den.q_order();
            let (num, den) = if a >= b {
                (self.num.add(&rhs.num.shift_up(a - b)), self.den.clone())
            } else {
                (self.num.shift_up(b - a).add(&rhs.num), rhs.den.clone())
            };
            if num.is_zero() {
                return QRat::zero();
            }
            let k = num.q_order().min(den.q_order());
            return QRat {
                num: num.shift_down(k),
                den: den.shift_down(k),
            };
        }
        QRat::reduce_pair(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl<'a> Sub<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        if self.is_zero() || rhs.is_zero() {
            return QRat::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QRat {
                num: self.num.mul(&rhs.num),
                den: Poly::one(),
            };
        }
        // cross-cancel before multiplying keeps intermediate sizes down
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let mut num = n1.mul(&n2);
        let mut den = d1.mul(&d2);
        if den.leading().is_some_and(|c| c.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        QRat { num, den }
    }
}

impl<'a> Div<&'a QRat> for &'a QRat {
    type Output = QRat;
    /// Panics on division by zero; use [`QRat::checked_div`] for a `Result`.
    fn div(self, rhs: &QRat) -> QRat {
        self.checked_div(rhs).expect("division by zero in q-scalar")
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QRat> for QRat {
            type Output = QRat;
            fn $m(self, rhs: QRat) -> QRat {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QRat> for QRat {
            type Output = QRat;
            fn $m(self, rhs: &QRat) -> QRat {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

/// Binary field operation selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` exactly; only division can fail.
pub fn arith(a: &QRat, b: &QRat, op: ArithOp) -> Result<QRat> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl fmt::Display for QRat {
    /// Single Laurent terms print as `c*q^k` (negative `k` allowed); anything
    /// else prints as `num` or `(num)/den`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((c, k)) = self.as_laurent_monomial() {
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            }
            return match k {
                0 => write!(f, "{mag}"),
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        f.write_str("q")
                    } else {
                        write!(f, "q^{k}")
                    }
                }
            };
        }
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.term_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let simple_den = self.den.term_count() == 1
            && (self.den.degree() == Some(0) || self.den.leading().unwrap().is_one());
        if simple_den {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRat[{self}]")
    }
}

/// The monopole coefficient `(q^(-2n) - 1) / (q^(-2) - 1)`.
pub fn monopole_coefficient(n: i64) -> QRat {
    let num = &QRat::q_pow(-2 * n) - &QRat::one();
    let den = &QRat::q_pow(-2) - &QRat::one();
    num.checked_div(&den).expect("q^-2 - 1 is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(low: i64, cs: &[i64]) -> QRat {
        QRat::laurent(low, cs)
    }

    #[test]
    fn normalize_long_division_example() {
        // (q^-6 - 1)/(q^-2 - 1): clear q^6 from both
        let num = Poly::from_i64s(&[1, 0, 0, 0, 0, 0, -1]); // 1 - q^6  (= q^6 (q^-6 - 1))
        let den = Poly::from_i64s(&[0, 0, 0, 0, 1, 0, -1]); // q^4 - q^6 (= q^6 (q^-2 - 1))
        let v = QRat::normalize(num, den, 0).unwrap();
        // oracle: 1 + q^-2 + q^-4 by long division of (x^3-1)/(x-1), x = q^-2
        assert_eq!(v, lp(-4, &[1, 0, 1, 0, 1]));
        assert_eq!(v.to_string(), "(q^4+q^2+1)/q^4");
    }

    #[test]
    fn normalize_zero_and_negative_powers() {
        let z = QRat::normalize(Poly::zero(), Poly::from_i64s(&[0, 0, 0, 1]), 0).unwrap();
        assert!(z.is_zero());
        assert!(z.denominator().is_one());
        // q - q^-1 = (q^2 - 1)/q
        let v = QRat::normalize(Poly::from_i64s(&[-1, 0, 1]), Poly::one(), -1).unwrap();
        assert_eq!(v.numerator(), &Poly::from_i64s(&[-1, 0, 1]));
        assert_eq!(v.denominator(), &Poly::from_i64s(&[0, 1]));
        assert_eq!(v.to_string(), "(q^2-1)/q");
    }

    #[test]
    fn normalize_rejects_zero_denominator() {
        let e = QRat::normalize(Poly::one(), Poly::zero(), 0).unwrap_err();
        assert_eq!(e.to_string(), "division by zero in q-scalar");
    }

    #[test]
    fn normalize_is_idempotent() {
        let v = QRat::normalize(Poly::from_i64s(&[2, 4]), Poly::from_i64s(&[-6, 0, 6]), 0).unwrap();
        let again = QRat::normalize(v.numerator().clone(), v.denominator().clone(), 0).unwrap();
        assert_eq!(v, again);
        // (2+4q)/(6q^2-6) = (1+2q)/(3q^2-3)
        assert_eq!(v.numerator(), &Poly::from_i64s(&[1, 2]));
        assert_eq!(v.denominator(), &Poly::from_i64s(&[-3, 0, 3]));
    }

    #[test]
    fn arith_examples() {
        let q = QRat::q();
        let qi = QRat::q_pow(-1);
        assert!(arith(&q, &qi, ArithOp::Mul).unwrap().is_one());
        let a = lp(-2, &[1, 0, -1]); // q^-2 - 1
        assert!(arith(&a, &a, ArithOp::Div).unwrap().is_one());
        let qq = &q - &qi;
        assert_eq!(
            arith(&QRat::one(), &qq, ArithOp::Mul).unwrap().to_string(),
            "(q^2-1)/q"
        );
        assert!(arith(&q, &QRat::zero(), ArithOp::Div).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let one = BigRational::one();
        assert_eq!(
            monopole_coefficient(3).evaluate(&one).unwrap(),
            BigRational::from_integer(3.into())
        );
        let two = BigRational::from_integer(2.into());
        assert_eq!(
            QRat::q_pow(2).evaluate(&two).unwrap(),
            BigRational::from_integer(4.into())
        );
        let pole = QRat::one()
            .checked_div(&(&QRat::q() - &QRat::one()))
            .unwrap();
        assert!(matches!(pole.evaluate(&one), Err(Error::Pole(_))));
    }

    #[test]
    fn monopole_coefficient_is_geometric_sum() {
        for n in 1..=6i64 {
            let mut sum = QRat::zero();
            for k in 0..n {
                sum = &sum + &QRat::q_pow(-2 * k);
            }
            assert_eq!(monopole_coefficient(n), sum, "n={n}");
        }
        assert!(monopole_coefficient(0).is_zero());
        assert_eq!(monopole_coefficient(-1), -QRat::q_pow(2));
    }

    #[test]
    fn display_forms() {
        assert_eq!(QRat::q_pow(-1).to_string(), "q^-1");
        assert_eq!((-QRat::q_pow(-1)).to_string(), "-q^-1");
        assert_eq!(QRat::ratio(1, 2).unwrap().to_string(), "1/2");
        assert_eq!(lp(0, &[1, 1]).to_string(), "q+1");
        let x = QRat::one().checked_div(&lp(0, &[1, 1])).unwrap();
        assert_eq!(x.to_string(), "1/(q+1)");
    }
}
