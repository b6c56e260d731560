//! Periods, the `ψ` check on `H^{1,1}/Pic` quotients, and BPS masses.

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{ComplexRational, Matrix, Rational};
use crate::fm::FourierMukai;
use crate::lattice::{ComplexClass, GradedClass, K3Model, Side};

/// Bilinear extension of the intersection form to complex H^2 coordinates.
pub fn pair_bilinear(model: &K3Model, x: &[ComplexRational], y: &[ComplexRational]) -> Result<ComplexRational> {
    let n = model.h2_rank();
    for v in [x, y] {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    let g = model.gram();
    let mut acc = ComplexRational::zero();
    for (i, xi) in x.iter().enumerate().filter(|(_, z)| !z.is_zero()) {
        for (gij, yj) in g.row(i).iter().zip(y) {
            if !gij.is_zero() && !yj.is_zero() {
                acc = acc + (xi * yj).scale(gij);
            }
        }
    }
    Ok(acc)
}

/// `x · ȳ`.
pub fn pair_hermitian(model: &K3Model, x: &[ComplexRational], y: &[ComplexRational]) -> Result<ComplexRational> {
    let ybar: Vec<_> = y.iter().map(ComplexRational::conj).collect();
    pair_bilinear(model, x, &ybar)
}

fn real_vec(v: &[Rational]) -> Vec<ComplexRational> {
    v.iter().cloned().map(ComplexRational::real).collect()
}

/// Class of a holomorphic 2-form: isotropic, positive, orthogonal to Pic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Period {
    omega: Vec<ComplexRational>,
}

impl Period {
    pub fn omega(&self) -> &[ComplexRational] {
        &self.omega
    }

    pub fn re(&self) -> Vec<Rational> {
        self.omega.iter().map(|z| z.re.clone()).collect()
    }

    pub fn im(&self) -> Vec<Rational> {
        self.omega.iter().map(|z| z.im.clone()).collect()
    }

    pub fn conj(&self) -> Vec<ComplexRational> {
        self.omega.iter().map(ComplexRational::conj).collect()
    }

    /// `Ω·Ω̄`, a positive rational.
    pub fn norm(&self, model: &K3Model) -> Rational {
        pair_hermitian(model, &self.omega, &self.omega)
            .expect("validated length")
            .re
    }

    /// `λΩ`, again a valid period for `λ ≠ 0`.
    pub fn scaled(&self, lambda: &ComplexRational) -> Result<Period> {
        if lambda.is_zero() {
            return Err(Error::PeriodNotPositive("0".into()));
        }
        Ok(Period {
            omega: self.omega.iter().map(|z| z * lambda).collect(),
        })
    }
}

/// Checks the three period conditions in the order: orthogonality to Pic,
/// isotropy, positivity.
pub fn validate_period(omega: Vec<ComplexRational>, model: &K3Model) -> Result<Period> {
    let n = model.h2_rank();
    if omega.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: omega.len(),
        });
    }
    for i in 0..model.picard_rank() {
        let p = real_vec(&model.basis_h2(i).deg2);
        if !pair_bilinear(model, &omega, &p)?.is_zero() {
            return Err(Error::PeriodNotAlgebraic(model.h2_key(i, Side::X)));
        }
    }
    let sq = pair_bilinear(model, &omega, &omega)?;
    if !sq.is_zero() {
        return Err(Error::PeriodNotIsotropic(sq.to_string()));
    }
    let norm = pair_hermitian(model, &omega, &omega)?;
    if !norm.re.is_positive() {
        return Err(Error::PeriodNotPositive(norm.to_string()));
    }
    Ok(Period { omega })
}

/// `Ω = t₁ + i·t₂` with `t₁ = τ₁ + τ₂`, `t₂ = τ₃ + τ₄`; valid whenever the
/// transcendental lattice starts with two hyperbolic planes.
pub fn standard_period(model: &K3Model) -> Result<Period> {
    let t = |a: usize, b: usize| -> Result<GradedClass> { Ok(&model.tau(a)? + &model.tau(b)?) };
    let t1 = t(1, 2)?;
    let t2 = t(3, 4)?;
    let omega = t1
        .deg2
        .iter()
        .zip(&t2.deg2)
        .map(|(a, b)| ComplexRational::new(a.clone(), b.clone()))
        .collect();
    validate_period(omega, model)
}

/// `{v ∈ H^2 ⊗ C : v·Ω = v·Ω̄ = 0}` modulo `Pic ⊗ C`.
///
/// Representatives are taken in `Pic^⊥`, which is a complement of Pic in the
/// kernel because Pic is nondegenerate; the Gram matrix is the restriction of
/// the intersection form to them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H11Quotient {
    pub basis: Vec<Vec<Rational>>,
    pub gram: Matrix,
}

impl H11Quotient {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Membership of a complex H^2 vector in the representative subspace.
    pub fn contains(&self, model: &K3Model, period: &Period, v: &[ComplexRational]) -> Result<bool> {
        let mut conditions = vec![period.omega.clone(), period.conj()];
        conditions.extend(model.picard_basis().iter().map(|p| real_vec(p)));
        for c in &conditions {
            if !pair_bilinear(model, v, c)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Both conditions have real and imaginary parts `Re Ω`, `Im Ω`, so the
/// kernel is the complexification of a rational subspace.
pub fn h11_quotient(model: &K3Model, period: &Period) -> Result<H11Quotient> {
    let g = model.gram();
    let mut rows = vec![g.mul_vec(&period.re())?, g.mul_vec(&period.im())?];
    for p in model.picard_basis() {
        rows.push(g.mul_vec(&p)?);
    }
    let basis = Matrix::from_rows(rows)?.nullspace();
    let expected = 20 - model.picard_rank();
    if basis.len() != expected {
        return Err(Error::DegeneratePeriod {
            expected,
            found: basis.len(),
        });
    }
    let gram = crate::exact::matrix::gram_of(g, &basis)?;
    Ok(H11Quotient { basis, gram })
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.gen_range(-9..=9);
    let d: i64 = rng.gen_range(1..=6);
    Rational::new(n, d).expect("nonzero denominator")
}

fn random_complex(rng: &mut ChaCha8Rng) -> ComplexRational {
    ComplexRational::new(random_rational(rng), random_rational(rng))
}

fn combine(basis: &[Vec<Rational>], coeffs: &[ComplexRational]) -> Vec<ComplexRational> {
    let n = basis.first().map_or(0, Vec::len);
    let mut v = vec![ComplexRational::zero(); n];
    for (b, c) in basis.iter().zip(coeffs) {
        for (slot, x) in v.iter_mut().zip(b) {
            *slot = &*slot + &c.scale(x);
        }
    }
    v
}

fn h2_of(class: &ComplexClass) -> Option<Vec<ComplexRational>> {
    (class.deg0.is_zero() && class.deg4.is_zero()).then(|| class.deg2.clone())
}

fn render_vec(v: &[ComplexRational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Outcome of [`psi_isometry_report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiReport {
    pub seed: u64,
    pub trials: usize,
    pub quotient_dimension: usize,
    pub failures: Vec<Value>,
    pub psi_omega_proportional: bool,
    pub all_exact: bool,
}

impl PsiReport {
    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "trials": self.trials,
            "quotient_dimension": self.quotient_dimension,
            "failures": self.failures,
            "psi_omega_proportional": self.psi_omega_proportional,
            "all_exact": self.all_exact,
        })
    }
}

/// Draws `trials` random pairs in the dual-side quotient and checks that
/// `ψ` lands in the quotient on `X`, preserves the pairing, and inverts `φ`.
pub fn psi_isometry_report(model: &K3Model, period: &Period, seed: u64, trials: usize) -> Result<PsiReport> {
    let fm = FourierMukai::new(model);
    let quotient = h11_quotient(model, period)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let dim = quotient.dimension();

    for trial in 0..trials {
        let a: Vec<_> = (0..dim).map(|_| random_complex(&mut rng)).collect();
        let b: Vec<_> = (0..dim).map(|_| random_complex(&mut rng)).collect();
        let v = combine(&quotient.basis, &a);
        let v2 = combine(&quotient.basis, &b);
        let pv = fm.psi(&v)?;
        let pv2 = fm.psi(&v2)?;

        let image = h2_of(&pv);
        let lands = match &image {
            Some(x) => quotient.contains(model, period, x)?,
            None => false,
        };
        if !lands {
            failures.push(json!({"trial": trial, "check": "image", "input": render_vec(&v)}));
        }

        let before = pair_bilinear(model, &v, &v2)?;
        let after = model.mukai_pair(&pv.re(), &pv2.re())? - model.mukai_pair(&pv.im(), &pv2.im())?;
        let after_im = model.mukai_pair(&pv.re(), &pv2.im())? + model.mukai_pair(&pv.im(), &pv2.re())?;
        let after = ComplexRational::new(after, after_im);
        if before != after {
            failures.push(json!({
                "trial": trial,
                "check": "pairing",
                "before": before.to_string(),
                "after": after.to_string(),
            }));
        }

        if fm.phi(&pv)? != v {
            failures.push(json!({"trial": trial, "check": "phi_psi", "input": render_vec(&v)}));
        }
    }

    let psi_omega = fm.psi(period.omega())?;
    let psi_omega_proportional = psi_omega
        .ratio_to(&ComplexClass::from_h2(period.omega().to_vec()))
        .is_some_and(|l| !l.is_zero());
    let all_exact = failures.is_empty() && psi_omega_proportional;
    Ok(PsiReport {
        seed,
        trials,
        quotient_dimension: dim,
        failures,
        psi_omega_proportional,
        all_exact,
    })
}

/// `M² = |γ·Ω|² / (Ω·Ω̄)` and `M` to 15 significant digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BpsMass {
    pub mass_squared: Rational,
    pub decimal: String,
}

impl BpsMass {
    pub fn to_json(&self) -> Value {
        json!({"mass_squared": self.mass_squared.to_string(), "decimal": self.decimal})
    }
}

pub fn bps_mass(model: &K3Model, gamma: &GradedClass, period: &Period) -> Result<BpsMass> {
    model.check(gamma)?;
    if !gamma.is_pure_h2() {
        return Err(Error::NotPureH2);
    }
    if !gamma.is_integral() {
        return Err(Error::NotIntegral(model.render(gamma, Side::X)));
    }
    let g = real_vec(&gamma.deg2);
    let z = pair_bilinear(model, &g, period.omega())?;
    let mass_squared = z.norm_sqr() / period.norm(model);
    let decimal = sqrt_decimal(&mass_squared, 15);
    Ok(BpsMass {
        mass_squared,
        decimal,
    })
}

/// `√x` rounded half-up to `digits` significant digits, in fixed notation.
/// Computed with integer square roots, so the result is platform independent.
pub fn sqrt_decimal(x: &Rational, digits: usize) -> String {
    assert!(!x.is_negative(), "square root of a negative rational");
    if x.is_zero() {
        return format!("0.{}", "0".repeat(digits.saturating_sub(1)));
    }
    let ten = BigInt::from(10);
    // s = floor(√x · 10^k) with at least digits + 2 digits
    let mut k: u32 = 0;
    let s = loop {
        let scaled = x.numer() * ten.pow(2 * k) / x.denom();
        let s = scaled.sqrt();
        if s.to_string().len() >= digits + 2 {
            break s;
        }
        k += 1;
    };
    let s_digits = s.to_string().len();
    let drop = (s_digits - digits) as u32;
    let unit = ten.pow(drop);
    let mut kept = &s / &unit;
    if (&s % &unit) * 2 >= unit {
        kept += BigInt::one();
    }
    // value = kept · 10^(drop − k)
    let exp = i64::from(drop) - i64::from(k);
    let mut text = kept.to_string();
    if exp >= 0 {
        text.push_str(&"0".repeat(exp as usize));
        return text;
    }
    let frac = (-exp) as usize;
    if text.len() <= frac {
        text = format!("{}{}", "0".repeat(frac - text.len() + 1), text);
    }
    let split = text.len() - frac;
    format!("{}.{}", &text[..split], &text[split..])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qf};
    use crate::lattice::i3_model;

    fn cq(re: i64, im: i64) -> ComplexRational {
        ComplexRational::new(q(re), q(im))
    }

    #[test]
    fn standard_period_is_valid() {
        let m = K3Model::nodal24();
        let p = standard_period(&m).unwrap();
        assert_eq!(p.norm(&m), q(4));
    }

    #[test]
    fn period_failures_are_distinct() {
        let m = K3Model::nodal24();
        let t1 = &m.tau(1).unwrap() + &m.tau(2).unwrap();
        let real_only = real_vec(&t1.deg2);
        assert!(matches!(
            validate_period(real_only, &m),
            Err(Error::PeriodNotIsotropic(s)) if s == "2"
        ));

        let mut along_h = standard_period(&m).unwrap().omega().to_vec();
        along_h[K3Model::H] = cq(1, 0);
        assert!(matches!(validate_period(along_h, &m), Err(Error::PeriodNotAlgebraic(_))));

        // e + i·e is isotropic, orthogonal to Pic, but Ω·Ω̄ = 0
        let mut null = vec![ComplexRational::zero(); m.h2_rank()];
        null[m.tau_index(1).unwrap()] = cq(1, 1);
        assert!(matches!(validate_period(null, &m), Err(Error::PeriodNotPositive(_))));

        assert!(matches!(
            validate_period(vec![cq(0, 0)], &m),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn quotient_dimensions() {
        let m = K3Model::nodal24();
        let p = standard_period(&m).unwrap();
        let h = h11_quotient(&m, &p).unwrap();
        assert_eq!(h.dimension(), 18);
        let scaled = p.scaled(&ComplexRational::new(qf(2, 3), q(-5))).unwrap();
        assert_eq!(h11_quotient(&m, &scaled).unwrap(), h);

        let m3 = i3_model();
        let p3 = standard_period(&m3).unwrap();
        assert_eq!(h11_quotient(&m3, &p3).unwrap().dimension(), 16);
    }

    #[test]
    fn psi_report_is_clean() {
        let m = K3Model::nodal24();
        let p = standard_period(&m).unwrap();
        let rep = psi_isometry_report(&m, &p, 42, 20).unwrap();
        assert!(rep.all_exact, "{:?}", rep.failures);
        assert_eq!(rep.quotient_dimension, 18);
        let again = psi_isometry_report(&m, &p, 42, 20).unwrap();
        assert_eq!(rep, again);
    }

    #[test]
    fn mass_examples() {
        let m = K3Model::nodal24();
        let p = standard_period(&m).unwrap();
        let t1 = &m.tau(1).unwrap() + &m.tau(2).unwrap();
        let mass = bps_mass(&m, &t1, &p).unwrap();
        assert_eq!(mass.mass_squared, q(1));
        assert_eq!(mass.decimal, "1.00000000000000");
        assert_eq!(bps_mass(&m, &m.mu(), &p).unwrap().mass_squared, q(0));
        assert_eq!(bps_mass(&m, &m.zero(), &p).unwrap().decimal, "0.00000000000000");
        assert_eq!(bps_mass(&m, &m.w(), &p), Err(Error::NotPureH2));
        assert!(matches!(
            bps_mass(&m, &m.mu().scale(&qf(1, 2)), &p),
            Err(Error::NotIntegral(_))
        ));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(sqrt_decimal(&q(2), 15), "1.41421356237310");
        assert_eq!(sqrt_decimal(&qf(1, 4), 15), "0.500000000000000");
        assert_eq!(sqrt_decimal(&q(10000), 3), "100");
        assert_eq!(sqrt_decimal(&q(1_000_000), 3), "1000");
        assert_eq!(sqrt_decimal(&qf(1, 10000), 2), "0.010");
        assert_eq!(sqrt_decimal(&q(3), 3), "1.73");
    }
}
