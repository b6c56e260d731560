//! Cohomological Fourier-Mukai map of the relative Poincaré transform.
//!
//! The map `f: H^•(X, Q) → H^•(X̂, Q)` is realized by its action on the basis
//! `1, H, μ, α_i, τ_j, w`; the dual surface is identified with `X` so both
//! sides share coordinates:
//!
//! | class | image                |
//! |-------|----------------------|
//! | `1`   | `−μ̂ − Θ`             |
//! | `H`   | `1 + ŵ`              |
//! | `μ`   | `−ŵ`                 |
//! | `w`   | `μ̂`                  |
//! | `α_i` | `β_i`                |
//! | `τ_j` | `τ_j`                |
//!
//! The image of `1` is the one that makes the Riemann-Roch transform agree
//! with the rank/c1/ch2 table; [`UnitImage::AsStated`] keeps the alternative
//! value with an extra `+ŵ` so the discrepancy can be reported.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{ComplexRational, Matrix, Rational};
use crate::lattice::{ComplexClass, GradedClass, K3Model, Side};
use crate::sheaf::ChernCharacter;

/// Choice for the image of the unit class `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitImage {
    /// `f(1) = −μ̂ − Θ`.
    Corrected,
    /// `f(1) = −μ̂ − Θ + ŵ`.
    AsStated,
}

/// Which way a sheaf is transformed. Classes on both sides share coordinates
/// under `X ≅ X̂`; the direction picks labels and whether `f` or `f′` is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Direction {
    #[default]
    XToXHat,
    XHatToX,
}

impl Direction {
    pub fn source(self) -> Side {
        match self {
            Direction::XToXHat => Side::X,
            Direction::XHatToX => Side::XHat,
        }
    }

    pub fn target(self) -> Side {
        self.source().dual()
    }

    pub fn reverse(self) -> Direction {
        match self {
            Direction::XToXHat => Direction::XHatToX,
            Direction::XHatToX => Direction::XToXHat,
        }
    }
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x-to-xhat" => Ok(Direction::XToXHat),
            "xhat-to-x" => Ok(Direction::XHatToX),
            _ => Err(Error::parse("direction", s)),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::XToXHat => "x-to-xhat",
            Direction::XHatToX => "xhat-to-x",
        })
    }
}

/// Square roots of the relative Todd class `td(X) / p^*td(P^1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToddData {
    pub td: GradedClass,
    pub sqrt_td: GradedClass,
    pub inv_sqrt_td: GradedClass,
}

impl ToddData {
    /// `td(X) = 1 + 2w` (since `c_2 = 24`), `p^*td(P^1) = 1 + μ`.
    pub fn compute(model: &K3Model) -> Self {
        let td_x = &model.one() + &model.w().scale(&Rational::from_int(2));
        let td_base = &model.one() + &model.mu();
        let td = model
            .cup(&td_x, &unipotent_inverse(model, &td_base))
            .expect("same model");
        let sqrt_td = unipotent_sqrt(model, &td);
        let inv_sqrt_td = unipotent_inverse(model, &sqrt_td);
        ToddData {
            td,
            sqrt_td,
            inv_sqrt_td,
        }
    }
}

/// `(1 + y)^{-1} = 1 − y + y²`; `y` has no degree-0 part so `y³ = 0`.
fn unipotent_inverse(model: &K3Model, x: &GradedClass) -> GradedClass {
    assert!(x.deg0.is_one(), "unipotent class expected");
    let y = x - &model.one();
    let y2 = model.cup(&y, &y).expect("same model");
    &(&model.one() - &y) + &y2
}

/// `(1 + y)^{1/2} = 1 + y/2 − y²/8`.
fn unipotent_sqrt(model: &K3Model, x: &GradedClass) -> GradedClass {
    assert!(x.deg0.is_one(), "unipotent class expected");
    let y = x - &model.one();
    let y2 = model.cup(&y, &y).expect("same model");
    let half = Rational::new(1, 2).expect("nonzero");
    let eighth = Rational::new(1, 8).expect("nonzero");
    &(&model.one() + &y.scale(&half)) - &y2.scale(&eighth)
}

/// The maps `f`, `f′ = −f^{-1}`, `f̃` and `ψ` for one model.
#[derive(Debug, Clone)]
pub struct FourierMukai {
    model: K3Model,
    unit: UnitImage,
    forward: Matrix,
    inverse: Matrix,
    tilde: Matrix,
    tilde_inverse: Matrix,
    todd: ToddData,
}

impl FourierMukai {
    pub fn new(model: &K3Model) -> Self {
        FourierMukai::with_unit_image(model, UnitImage::Corrected)
    }

    pub fn with_unit_image(model: &K3Model, unit: UnitImage) -> Self {
        let images = basis_images(model, unit);
        let cols: Vec<Vec<Rational>> = images.iter().map(GradedClass::to_vec).collect();
        let forward = Matrix::from_columns(&cols).expect("square basis table");
        let inverse = forward.inverse().expect("basis action is invertible");

        let qbasis = model.mu_perp_mod_mu_basis();
        let tilde_cols: Vec<Vec<Rational>> = qbasis
            .iter()
            .map(|b| {
                let img = GradedClass::from_vec(&forward.mul_vec(&b.to_vec()).expect("dims"))
                    .expect("dims");
                img.deg2
            })
            .collect();
        let tilde = Matrix::from_columns(&tilde_cols).expect("square");
        let tilde_inverse = tilde.inverse().expect("f-tilde is injective on the quotient");

        FourierMukai {
            model: model.clone(),
            unit,
            forward,
            inverse,
            tilde,
            tilde_inverse,
            todd: ToddData::compute(model),
        }
    }

    pub fn model(&self) -> &K3Model {
        &self.model
    }

    pub fn unit_image(&self) -> UnitImage {
        self.unit
    }

    pub fn todd(&self) -> &ToddData {
        &self.todd
    }

    /// Matrix of `f` on coordinates `[deg0, deg2.., deg4]`.
    pub fn matrix(&self) -> &Matrix {
        &self.forward
    }

    /// Matrix of `f̃` from quotient coordinates to H^2 coordinates.
    pub fn tilde_matrix(&self) -> &Matrix {
        &self.tilde
    }

    /// Images of `1, H, μ, α_i, τ_j, w`, labelled.
    pub fn basis_action(&self) -> Vec<(String, GradedClass)> {
        let m = &self.model;
        let mut out = vec![("1".to_string(), self.apply(&m.one()))];
        for i in 0..m.h2_rank() {
            out.push((m.h2_symbol(i, Side::X), self.apply(&m.basis_h2(i))));
        }
        out.push(("w".to_string(), self.apply(&m.w())));
        out
    }

    fn apply(&self, v: &GradedClass) -> GradedClass {
        GradedClass::from_vec(&self.forward.mul_vec(&v.to_vec()).expect("dims")).expect("dims")
    }

    pub fn f(&self, v: &GradedClass) -> Result<GradedClass> {
        self.model.check(v)?;
        Ok(self.apply(v))
    }

    /// `f′ = −f^{-1}`.
    pub fn f_prime(&self, v: &GradedClass) -> Result<GradedClass> {
        self.model.check(v)?;
        let x = GradedClass::from_vec(&self.inverse.mul_vec(&v.to_vec())?)?;
        Ok(-x)
    }

    /// H^2 component of `f(v)` for `v ∈ μ^⊥`; independent of the `Qμ` representative.
    pub fn f_tilde(&self, v: &GradedClass) -> Result<GradedClass> {
        let coords = self.model.quotient_coords(v)?;
        self.model.h2_class(self.tilde.mul_vec(&coords)?)
    }

    /// `ψ`: inverse of the complexified `f̃`, returning the canonical
    /// representative in `(μ^⊥/Qμ) ⊗ C`.
    pub fn psi(&self, v: &[ComplexRational]) -> Result<ComplexClass> {
        let (re, im) = split(v);
        let a = self.psi_real(&re)?;
        let b = self.psi_real(&im)?;
        ComplexClass::from_parts(&a, &b)
    }

    pub fn psi_real(&self, v: &[Rational]) -> Result<GradedClass> {
        let coords = self.tilde_inverse.mul_vec(v)?;
        self.model.from_quotient_coords(&coords)
    }

    /// Complexified `f̃` (written `φ`), for classes of `(μ^⊥/Qμ) ⊗ C`.
    pub fn phi(&self, v: &ComplexClass) -> Result<Vec<ComplexRational>> {
        let a = self.f_tilde(&v.re())?;
        let b = self.f_tilde(&v.im())?;
        Ok(a.deg2
            .into_iter()
            .zip(b.deg2)
            .map(|(x, y)| ComplexRational::new(x, y))
            .collect())
    }

    /// `ch T^•(F) = (1/√td) · f(ch F · √td)`, the alternating sum over the
    /// direct images. The reverse transform uses `f′` in place of `f`; on
    /// `U ⊕ V` the two agree under `X ≅ X̂`, and `f′∘f = −id` makes the
    /// round trip the shift `[−1]` in cohomology.
    pub fn rr_transform(&self, ch: &GradedClass, direction: Direction) -> Result<GradedClass> {
        let m = &self.model;
        let twisted = m.cup(ch, &self.todd.sqrt_td)?;
        let image = match direction {
            Direction::XToXHat => self.f(&twisted)?,
            Direction::XHatToX => self.f_prime(&twisted)?,
        };
        m.cup(&self.todd.inv_sqrt_td, &image)
    }

    /// Character of the single nonzero transform `T^i(F)` of a WIT_i class.
    pub fn transform_wit(&self, ch: &GradedClass, wit: Wit, direction: Direction) -> Result<GradedClass> {
        Ok(self.rr_transform(ch, direction)?.scale(&wit.sign()))
    }
}

fn split(v: &[ComplexRational]) -> (Vec<Rational>, Vec<Rational>) {
    v.iter().map(|z| (z.re.clone(), z.im.clone())).unzip()
}

/// Basis table of `f`, in the order `1, H, μ, α.., τ.., w`.
fn basis_images(model: &K3Model, unit: UnitImage) -> Vec<GradedClass> {
    let m = model;
    let mut f_one = -(&m.mu() + &m.h());
    if unit == UnitImage::AsStated {
        f_one = &f_one + &m.w();
    }
    let mut images = vec![f_one, &m.one() + &m.w(), -m.w()];
    images.extend((2..m.h2_rank()).map(|i| m.basis_h2(i)));
    images.push(m.mu());
    images
}

/// WIT index of a sheaf: the degree in which its transform is concentrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Wit {
    Zero,
    One,
}

impl Wit {
    pub fn index(self) -> u8 {
        match self {
            Wit::Zero => 0,
            Wit::One => 1,
        }
    }

    /// Index of the transformed sheaf under the reverse transform.
    pub fn dual(self) -> Wit {
        match self {
            Wit::Zero => Wit::One,
            Wit::One => Wit::Zero,
        }
    }

    pub fn sign(self) -> Rational {
        match self {
            Wit::Zero => Rational::one(),
            Wit::One => -Rational::one(),
        }
    }
}

impl TryFrom<u8> for Wit {
    type Error = Error;
    fn try_from(i: u8) -> Result<Self> {
        match i {
            0 => Ok(Wit::Zero),
            1 => Ok(Wit::One),
            _ => Err(Error::parse("WIT index", i.to_string())),
        }
    }
}

impl FromStr for Wit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(Wit::Zero),
            "1" => Ok(Wit::One),
            _ => Err(Error::parse("WIT index", s)),
        }
    }
}

/// Table form of the transform on `ch = r + aH + bμ + cw`:
/// `(−1)^i ch(F̂) = a − rΘ + cμ̂ − bŵ`.
pub fn rr_table(model: &K3Model, ch: &GradedClass, wit: Wit, direction: Direction) -> Result<ChernCharacter> {
    model.check(ch)?;
    let src = direction.source();
    if let Some(i) = (2..model.h2_rank()).find(|&i| !ch.deg2[i].is_zero()) {
        return Err(Error::OutsideRankTwoPicard(model.h2_key(i, src)));
    }
    let (r, a, b, c) = (
        &ch.deg0,
        &ch.deg2[K3Model::H],
        &ch.deg2[K3Model::MU],
        &ch.deg4,
    );
    let s = wit.sign();
    let image = model.rabc(s.clone() * a, -(s.clone() * r), s.clone() * c, -(s * b));
    Ok(ChernCharacter::from_class(
        &image,
        Some(wit.dual()),
        "transform".to_string(),
        direction.target(),
    ))
}

/// Kind of object a class component represents under the brane dictionary.
fn brane_parts(image: &[BigInt; 4]) -> Vec<&'static str> {
    let names = [
        "4-brane",
        "genus-0 2-cycle (section)",
        "genus-1 2-cycle (fiber)",
        "0-brane",
    ];
    image
        .iter()
        .zip(names)
        .filter(|(x, _)| *x != &BigInt::from(0))
        .map(|(_, n)| n)
        .collect()
}

/// Image of an integral class under the T-duality correspondence
/// `r + aH + bμ + cw ↦ a − rΘ + cμ̂ − bŵ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraneImage {
    /// `(r̂, â, b̂, ĉ)`: coefficients of `1, Θ, μ̂, ŵ`.
    pub image: [BigInt; 4],
    pub annotation: String,
}

pub fn brane_map(r: &BigInt, a: &BigInt, b: &BigInt, c: &BigInt) -> BraneImage {
    let image = [a.clone(), -r, c.clone(), -b];
    let parts = brane_parts(&image);
    let annotation = if parts.is_empty() {
        "zero class".to_string()
    } else {
        parts.join(" + ")
    };
    BraneImage { image, annotation }
}

impl BraneImage {
    pub fn render(&self, model: &K3Model) -> String {
        let q = |x: &BigInt| Rational::from_bigint(x.clone());
        let class = model.rabc(q(&self.image[0]), q(&self.image[1]), q(&self.image[2]), q(&self.image[3]));
        model.render(&class, Side::XHat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qf};
    use crate::lattice::i3_model;

    const X2H: Direction = Direction::XToXHat;

    fn fm() -> FourierMukai {
        FourierMukai::new(&K3Model::nodal24())
    }

    #[test]
    fn todd_square_roots() {
        let m = K3Model::nodal24();
        let t = ToddData::compute(&m);
        let half = qf(1, 2);
        assert_eq!(t.td, &(&m.one() - &m.mu()) + &m.w().scale(&q(2)));
        assert_eq!(t.sqrt_td, &(&m.one() - &m.mu().scale(&half)) + &m.w());
        assert_eq!(t.inv_sqrt_td, &(&m.one() + &m.mu().scale(&half)) - &m.w());
        assert_eq!(m.cup(&t.sqrt_td, &t.sqrt_td).unwrap(), t.td);
        assert_eq!(m.cup(&t.sqrt_td, &t.inv_sqrt_td).unwrap(), m.one());
    }

    #[test]
    fn basis_table() {
        let fm = fm();
        let m = fm.model().clone();
        assert_eq!(fm.f(&m.mu()).unwrap(), -m.w());
        assert_eq!(fm.f(&m.h()).unwrap(), &m.one() + &m.w());
        assert_eq!(fm.f(&m.w()).unwrap(), m.mu());
        assert_eq!(fm.f(&m.one()).unwrap(), -(&m.mu() + &m.h()));
        let t = m.tau(5).unwrap();
        assert_eq!(fm.f(&t).unwrap(), t);
        assert_eq!(fm.basis_action().len(), 24);
    }

    #[test]
    fn f_prime_values() {
        let fm = fm();
        let m = fm.model().clone();
        assert_eq!(fm.f_prime(&m.mu()).unwrap(), -m.w());
        assert_eq!(fm.f_prime(&m.w()).unwrap(), m.mu());
        let v = m.rabc(q(2), qf(-1, 3), q(5), qf(7, 2));
        assert_eq!(fm.f_prime(&fm.f(&v).unwrap()).unwrap(), -v.clone());
        assert_eq!(fm.f(&fm.f_prime(&v).unwrap()).unwrap(), -v);
    }

    #[test]
    fn alpha_maps_to_beta() {
        let m = i3_model();
        let fm = FourierMukai::new(&m);
        for i in 1..=2 {
            let a = m.alpha(i).unwrap();
            assert_eq!(fm.f(&a).unwrap(), a);
            assert_eq!(fm.f_tilde(&a).unwrap(), a);
        }
    }

    #[test]
    fn f_tilde_examples() {
        let fm = fm();
        let m = fm.model().clone();
        assert_eq!(fm.f_tilde(&m.w()).unwrap(), m.mu());
        assert_eq!(fm.f_tilde(&m.one()).unwrap(), -(&m.mu() + &m.h()));
        assert_eq!(fm.f_tilde(&m.h()), Err(Error::NotInMuPerp));
        // well defined modulo Qμ
        let shifted = &m.w() + &m.mu().scale(&q(3));
        assert_eq!(fm.f_tilde(&shifted).unwrap(), m.mu());
    }

    #[test]
    fn psi_inverts_f_tilde() {
        let fm = fm();
        let m = fm.model().clone();
        let c = |x: &GradedClass| -> Vec<ComplexRational> {
            x.deg2.iter().cloned().map(ComplexRational::real).collect()
        };
        assert_eq!(fm.psi(&c(&m.mu())).unwrap(), ComplexClass::from_real(&m.w()));
        let t = m.tau(2).unwrap();
        assert_eq!(fm.psi(&c(&t)).unwrap(), ComplexClass::from_real(&t));
        assert_eq!(
            fm.psi(&c(&m.h())).unwrap(),
            ComplexClass::from_real(&-(&m.one() + &m.w()))
        );
        let v = ComplexClass::from_parts(&(&m.one() + &t), &m.w()).unwrap();
        let back = fm.psi(&fm.phi(&v).unwrap()).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn rr_transform_examples() {
        let fm = fm();
        let m = fm.model().clone();
        // skyscraper: ch = w ↦ μ̂
        assert_eq!(fm.rr_transform(&m.w(), X2H).unwrap(), m.mu());
        // O_X(−1): ch = 1 − μ, WIT_1, T^1 = Θ − ŵ
        let o_minus = &m.one() - &m.mu();
        assert_eq!(fm.rr_transform(&o_minus, X2H).unwrap(), &m.w() - &m.h());
        assert_eq!(fm.transform_wit(&o_minus, Wit::One, X2H).unwrap(), &m.h() - &m.w());
        // fibre sheaf: ch = μ ↦ −ŵ
        assert_eq!(fm.rr_transform(&m.mu(), X2H).unwrap(), -m.w());
    }

    #[test]
    fn as_stated_unit_image_breaks_the_ch2_column() {
        let m = K3Model::nodal24();
        let fm = FourierMukai::with_unit_image(&m, UnitImage::AsStated);
        // r = 1, b = 0: the table predicts ch2 = 0 but the stated f(1) gives r − b = 1
        let t = fm.rr_transform(&m.one(), X2H).unwrap();
        assert_eq!(t.deg4, q(1));
    }

    #[test]
    fn rr_table_examples() {
        let m = K3Model::nodal24();
        let fm = FourierMukai::new(&m);
        let d = Direction::XToXHat;
        let ch = m.rabc(q(0), q(1), q(0), q(1));
        let t = rr_table(&m, &ch, Wit::Zero, d).unwrap();
        assert_eq!(t.to_class(&m).unwrap(), &m.one() + &m.mu());
        assert_eq!(t.wit, Some(Wit::One));
        assert_eq!(fm.transform_wit(&ch, Wit::Zero, d).unwrap(), t.to_class(&m).unwrap());

        let ch = m.rabc(q(1), q(0), q(-1), q(0));
        let t = rr_table(&m, &ch, Wit::One, d).unwrap();
        assert_eq!(m.render(&t.to_class(&m).unwrap(), Side::XHat), "Θ − ŵ");

        let ch = m.rabc(q(0), q(0), q(1), q(0));
        let t = rr_table(&m, &ch, Wit::One, d).unwrap();
        assert_eq!(t.to_class(&m).unwrap(), m.w());
    }

    #[test]
    fn rr_table_rejects_alpha_coordinates() {
        let m = i3_model();
        let ch = &m.one() - &m.alpha(1).unwrap();
        assert_eq!(
            rr_table(&m, &ch, Wit::One, Direction::XToXHat).unwrap_err(),
            Error::OutsideRankTwoPicard("alpha_1".into())
        );
        assert_eq!(
            rr_table(&m, &ch, Wit::One, Direction::XHatToX).unwrap_err(),
            Error::OutsideRankTwoPicard("beta_1".into())
        );
    }

    #[test]
    fn brane_examples() {
        let m = K3Model::nodal24();
        let b = |r: i64, a: i64, bb: i64, c: i64| {
            brane_map(&r.into(), &a.into(), &bb.into(), &c.into())
        };
        let zero_brane = b(0, 0, 0, 1);
        assert_eq!(zero_brane.render(&m), "μ̂");
        assert_eq!(zero_brane.annotation, "genus-1 2-cycle (fiber)");
        let four_brane = b(1, 0, 0, 0);
        assert_eq!(four_brane.render(&m), "−Θ");
        assert_eq!(four_brane.annotation, "genus-0 2-cycle (section)");
        let fibre = b(0, 0, 1, 0);
        assert_eq!(fibre.render(&m), "−ŵ");
        assert_eq!(fibre.annotation, "0-brane");
        assert_eq!(b(0, 1, 0, 0).annotation, "4-brane");
        assert_eq!(b(0, 0, 0, 0).annotation, "zero class");
        assert_eq!(b(2, 0, 0, 3).annotation, "genus-0 2-cycle (section) + genus-1 2-cycle (fiber)");
    }

    #[test]
    fn direction_parsing() {
        assert_eq!("x-to-xhat".parse::<Direction>().unwrap(), Direction::XToXHat);
        assert_eq!("xhat-to-x".parse::<Direction>().unwrap().to_string(), "xhat-to-x");
        assert!("sideways".parse::<Direction>().is_err());
        assert!("2".parse::<Wit>().is_err());
    }
}
