use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::rational::Rational;
use crate::error::{Error, Result};

/// Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        ComplexRational { re, im }
    }

    pub fn zero() -> Self {
        ComplexRational::default()
    }

    pub fn one() -> Self {
        ComplexRational::real(Rational::one())
    }

    pub fn i() -> Self {
        ComplexRational::new(Rational::zero(), Rational::one())
    }

    pub fn real(re: Rational) -> Self {
        ComplexRational::new(re, Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexRational::new(self.re.clone(), -&self.im)
    }

    /// `|z|^2 = re^2 + im^2`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, k: &Rational) -> Self {
        ComplexRational::new(&self.re * k, &self.im * k)
    }

    pub fn checked_div(&self, rhs: &ComplexRational) -> Result<Self> {
        let n = rhs.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self * &rhs.conj();
        Ok(ComplexRational::new(
            num.re.checked_div(&n)?,
            num.im.checked_div(&n)?,
        ))
    }
}

impl From<Rational> for ComplexRational {
    fn from(re: Rational) -> Self {
        ComplexRational::real(re)
    }
}

impl Add<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn add(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for ComplexRational {
    type Output = ComplexRational;
    fn add(self, rhs: ComplexRational) -> ComplexRational {
        &self + &rhs
    }
}

impl Sub<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn sub(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Sub for ComplexRational {
    type Output = ComplexRational;
    fn sub(self, rhs: ComplexRational) -> ComplexRational {
        &self - &rhs
    }
}

impl Mul<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn mul(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Mul for ComplexRational {
    type Output = ComplexRational;
    fn mul(self, rhs: ComplexRational) -> ComplexRational {
        &self * &rhs
    }
}

impl Neg for &ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational::new(-&self.re, -&self.im)
    }
}

impl Neg for ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        -&self
    }
}

impl fmt::Display for ComplexRational {
    /// `re`, `re+im*i` or `re-im*i`; the real part is always written.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}*i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

impl fmt::Debug for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ComplexRational {
    type Err = Error;

    /// Accepts `a`, `b*i`, `bi`, `i`, `-i`, `a+b*i`, `a-b*i` with rational `a`, `b`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::parse("complex rational", s);
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(ComplexRational::real(t.parse().map_err(|_| bad())?));
        };
        // split before the sign that starts the imaginary part
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last()
            .unwrap_or(0);
        let (re_part, im_part) = body.split_at(split);
        let re = if re_part.is_empty() {
            Rational::zero()
        } else {
            re_part.parse().map_err(|_| bad())?
        };
        let coeff = im_part.strip_suffix('*').unwrap_or(im_part);
        let im = match coeff {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            c => c.parse().map_err(|_| bad())?,
        };
        Ok(ComplexRational::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qf};

    fn c(s: &str) -> ComplexRational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_all_forms() {
        assert_eq!(c("3"), ComplexRational::real(q(3)));
        assert_eq!(c("i"), ComplexRational::i());
        assert_eq!(c("-i"), -ComplexRational::i());
        assert_eq!(c("2*i"), ComplexRational::new(q(0), q(2)));
        assert_eq!(c("1/2-3/4*i"), ComplexRational::new(qf(1, 2), qf(-3, 4)));
        assert_eq!(c("-1+i"), ComplexRational::new(q(-1), q(1)));
        assert_eq!(c("-1/3-2i"), ComplexRational::new(qf(-1, 3), q(-2)));
        assert!("1+".parse::<ComplexRational>().is_err());
        assert!("1+2*j".parse::<ComplexRational>().is_err());
    }

    #[test]
    fn renders_canonically() {
        for s in ["0", "-5/2", "1/2+3/4*i", "0-1*i", "7+1*i"] {
            assert_eq!(c(s).to_string(), s);
        }
    }

    #[test]
    fn conj_and_norm() {
        let z = c("3-4*i");
        assert_eq!(z.conj().conj(), z);
        assert_eq!(z.norm_sqr(), q(25));
        assert_eq!((&z * &z.conj()), ComplexRational::real(q(25)));
        assert!(ComplexRational::zero().norm_sqr().is_zero());
    }

    #[test]
    fn division() {
        let z = c("1+2*i");
        let w = c("3-1*i");
        let r = z.checked_div(&w).unwrap();
        assert_eq!(&r * &w, z);
        assert_eq!(z.checked_div(&ComplexRational::zero()), Err(Error::DivisionByZero));
    }
}
