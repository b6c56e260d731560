use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact::{ComplexRational, Rational};

/// Element of `H^0 ⊕ H^2 ⊕ H^4` with rational coefficients.
///
/// `deg0` is the coefficient of `1`, `deg4` the coefficient of the point
/// class `w`, and `deg2` holds coordinates over the H^2 basis of a
/// [`K3Model`](super::K3Model): `[H, mu, alpha_1.., tau_1..]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GradedClass {
    pub deg0: Rational,
    pub deg2: Vec<Rational>,
    pub deg4: Rational,
}

impl GradedClass {
    pub fn zero(h2_rank: usize) -> Self {
        GradedClass {
            deg0: Rational::zero(),
            deg2: vec![Rational::zero(); h2_rank],
            deg4: Rational::zero(),
        }
    }

    pub fn h2_rank(&self) -> usize {
        self.deg2.len()
    }

    pub fn is_zero(&self) -> bool {
        self.deg0.is_zero() && self.deg4.is_zero() && self.deg2.iter().all(Rational::is_zero)
    }

    /// Concatenated coordinates `[deg0, deg2.., deg4]`.
    pub fn to_vec(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.deg2.len() + 2);
        v.push(self.deg0.clone());
        v.extend(self.deg2.iter().cloned());
        v.push(self.deg4.clone());
        v
    }

    pub fn from_vec(v: &[Rational]) -> Result<Self> {
        if v.len() < 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: v.len(),
            });
        }
        Ok(GradedClass {
            deg0: v[0].clone(),
            deg2: v[1..v.len() - 1].to_vec(),
            deg4: v[v.len() - 1].clone(),
        })
    }

    pub fn same_shape(&self, other: &GradedClass) -> Result<()> {
        if self.deg2.len() != other.deg2.len() {
            return Err(Error::DimensionMismatch {
                expected: self.deg2.len(),
                found: other.deg2.len(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &GradedClass) -> Result<GradedClass> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &GradedClass) -> Result<GradedClass> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, k: &Rational) -> GradedClass {
        GradedClass {
            deg0: &self.deg0 * k,
            deg2: self.deg2.iter().map(|x| x * k).collect(),
            deg4: &self.deg4 * k,
        }
    }

    /// Projection to the H^2 component.
    pub fn h2_part(&self) -> GradedClass {
        GradedClass {
            deg0: Rational::zero(),
            deg2: self.deg2.clone(),
            deg4: Rational::zero(),
        }
    }

    pub fn is_pure_h2(&self) -> bool {
        self.deg0.is_zero() && self.deg4.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.deg0.is_integer() && self.deg4.is_integer() && self.deg2.iter().all(Rational::is_integer)
    }

    fn zip_with(&self, other: &GradedClass, f: impl Fn(&Rational, &Rational) -> Rational) -> GradedClass {
        GradedClass {
            deg0: f(&self.deg0, &other.deg0),
            deg2: self.deg2.iter().zip(&other.deg2).map(|(a, b)| f(a, b)).collect(),
            deg4: f(&self.deg4, &other.deg4),
        }
    }
}

/// Panics on mismatched H^2 ranks; [`GradedClass::checked_add`] reports it instead.
impl Add<&GradedClass> for &GradedClass {
    type Output = GradedClass;
    fn add(self, rhs: &GradedClass) -> GradedClass {
        self.checked_add(rhs).expect("graded classes over different bases")
    }
}

impl Add for GradedClass {
    type Output = GradedClass;
    fn add(self, rhs: GradedClass) -> GradedClass {
        &self + &rhs
    }
}

impl Sub<&GradedClass> for &GradedClass {
    type Output = GradedClass;
    fn sub(self, rhs: &GradedClass) -> GradedClass {
        self.checked_sub(rhs).expect("graded classes over different bases")
    }
}

impl Sub for GradedClass {
    type Output = GradedClass;
    fn sub(self, rhs: GradedClass) -> GradedClass {
        &self - &rhs
    }
}

impl Neg for &GradedClass {
    type Output = GradedClass;
    fn neg(self) -> GradedClass {
        self.scale(&-Rational::one())
    }
}

impl Neg for GradedClass {
    type Output = GradedClass;
    fn neg(self) -> GradedClass {
        -&self
    }
}

/// Complexified graded class, stored coordinatewise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplexClass {
    pub deg0: ComplexRational,
    pub deg2: Vec<ComplexRational>,
    pub deg4: ComplexRational,
}

impl ComplexClass {
    pub fn from_parts(re: &GradedClass, im: &GradedClass) -> Result<Self> {
        re.same_shape(im)?;
        let c = |a: &Rational, b: &Rational| ComplexRational::new(a.clone(), b.clone());
        Ok(ComplexClass {
            deg0: c(&re.deg0, &im.deg0),
            deg2: re.deg2.iter().zip(&im.deg2).map(|(a, b)| c(a, b)).collect(),
            deg4: c(&re.deg4, &im.deg4),
        })
    }

    pub fn from_real(re: &GradedClass) -> Self {
        ComplexClass::from_parts(re, &GradedClass::zero(re.h2_rank())).expect("same shape")
    }

    /// Pure H^2 class with the given complex coordinates.
    pub fn from_h2(deg2: Vec<ComplexRational>) -> Self {
        ComplexClass {
            deg0: ComplexRational::zero(),
            deg2,
            deg4: ComplexRational::zero(),
        }
    }

    pub fn re(&self) -> GradedClass {
        GradedClass {
            deg0: self.deg0.re.clone(),
            deg2: self.deg2.iter().map(|z| z.re.clone()).collect(),
            deg4: self.deg4.re.clone(),
        }
    }

    pub fn im(&self) -> GradedClass {
        GradedClass {
            deg0: self.deg0.im.clone(),
            deg2: self.deg2.iter().map(|z| z.im.clone()).collect(),
            deg4: self.deg4.im.clone(),
        }
    }

    pub fn conj(&self) -> ComplexClass {
        ComplexClass {
            deg0: self.deg0.conj(),
            deg2: self.deg2.iter().map(ComplexRational::conj).collect(),
            deg4: self.deg4.conj(),
        }
    }

    pub fn scale(&self, k: &ComplexRational) -> ComplexClass {
        ComplexClass {
            deg0: &self.deg0 * k,
            deg2: self.deg2.iter().map(|z| z * k).collect(),
            deg4: &self.deg4 * k,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.deg0.is_zero() && self.deg4.is_zero() && self.deg2.iter().all(ComplexRational::is_zero)
    }

    /// Concatenated coordinates `[deg0, deg2.., deg4]`.
    pub fn to_vec(&self) -> Vec<ComplexRational> {
        let mut v = vec![self.deg0.clone()];
        v.extend(self.deg2.iter().cloned());
        v.push(self.deg4.clone());
        v
    }

    /// `Some(λ)` with `self = λ·other`, if `other` is nonzero and the two are proportional.
    pub fn ratio_to(&self, other: &ComplexClass) -> Option<ComplexRational> {
        let a = self.to_vec();
        let b = other.to_vec();
        if a.len() != b.len() {
            return None;
        }
        let k = b.iter().position(|z| !z.is_zero())?;
        let lambda = a[k].checked_div(&b[k]).ok()?;
        a.iter()
            .zip(&b)
            .all(|(x, y)| *x == y * &lambda)
            .then_some(lambda)
    }
}

/// Element of `H^•(P^1, Q) = Q·1 ⊕ Q·[pt]`; values of the modified pairing.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BaseClass {
    pub c0: Rational,
    pub c1: Rational,
}

impl BaseClass {
    pub fn new(c0: Rational, c1: Rational) -> Self {
        BaseClass { c0, c1 }
    }

    /// `k·[pt]`.
    pub fn point(k: Rational) -> Self {
        BaseClass::new(Rational::zero(), k)
    }
}

impl fmt::Display for BaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c0.is_zero(), self.c1.is_zero()) {
            (true, _) => write!(f, "{}[pt]", self.c1),
            (false, true) => write!(f, "{}", self.c0),
            (false, false) => write!(f, "{} + {}[pt]", self.c0, self.c1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qf};

    fn cls(d0: i64, d2: &[i64], d4: i64) -> GradedClass {
        GradedClass {
            deg0: q(d0),
            deg2: d2.iter().map(|&x| q(x)).collect(),
            deg4: q(d4),
        }
    }

    #[test]
    fn componentwise_sum() {
        assert_eq!(cls(1, &[0, 0], 0) + cls(0, &[0, 0], 1), cls(1, &[0, 0], 1));
        let v = cls(2, &[1, -3], 5);
        assert_eq!(&v + &GradedClass::zero(2), v);
    }

    #[test]
    fn mismatched_bases_are_reported() {
        let e = cls(0, &[1], 0).checked_add(&cls(0, &[1, 2], 0));
        assert_eq!(
            e,
            Err(Error::DimensionMismatch {
                expected: 1,
                found: 2
            })
        );
    }

    #[test]
    fn vec_round_trip() {
        let v = cls(3, &[1, 2, 3], -4).scale(&qf(1, 3));
        assert_eq!(GradedClass::from_vec(&v.to_vec()).unwrap(), v);
    }

    #[test]
    fn base_class_display() {
        assert_eq!(BaseClass::point(q(-2)).to_string(), "-2[pt]");
        assert_eq!(BaseClass::new(q(1), q(0)).to_string(), "1");
        assert_eq!(BaseClass::new(q(1), qf(1, 2)).to_string(), "1 + 1/2[pt]");
    }
}
