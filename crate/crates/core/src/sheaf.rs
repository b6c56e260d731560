//! Chern characters of named sheaves, the GRR oracle for curves, and the
//! catalog of transforms computed sheaf-theoretically that the cohomological
//! transform has to reproduce.

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::fm::{Direction, FourierMukai, Wit};
use crate::lattice::{GradedClass, K3Model, Side};

/// Chern character `rank + c1 + ch2·w` with an optional WIT index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernCharacter {
    pub rank: Rational,
    /// H^2 coordinates of `c1`.
    pub c1: Vec<Rational>,
    pub ch2: Rational,
    pub wit: Option<Wit>,
    pub label: String,
    pub side: Side,
}

impl ChernCharacter {
    pub fn from_class(class: &GradedClass, wit: Option<Wit>, label: String, side: Side) -> Self {
        ChernCharacter {
            rank: class.deg0.clone(),
            c1: class.deg2.clone(),
            ch2: class.deg4.clone(),
            wit,
            label,
            side,
        }
    }

    pub fn to_class(&self, model: &K3Model) -> Result<GradedClass> {
        model.class(self.rank.clone(), self.c1.clone(), self.ch2.clone())
    }

    pub fn render(&self, model: &K3Model) -> Result<String> {
        Ok(model.render(&self.to_class(model)?, self.side))
    }
}

/// Curves handled by [`grr_pushforward_curve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Curve {
    /// The zero section `H` (or `Θ` on the dual side).
    Section,
    /// A smooth elliptic fibre.
    Fiber,
    /// The fibre component `α_i`.
    Component(usize),
    /// Any class, with its self-intersection checked against the allowed values.
    Class(GradedClass),
}

/// `ch(i_* L) = i_*(ch L · td(N)^{-1}) = [C] + (d − C²/2)·w` for a line bundle
/// of degree `d` on a smooth rational (`C² = −2`) or elliptic (`C² = 0`) curve.
pub fn grr_pushforward_curve(
    model: &K3Model,
    curve: &Curve,
    bundle_degree: i64,
    self_intersection: i64,
) -> Result<GradedClass> {
    let class = match curve {
        Curve::Section => model.h(),
        Curve::Fiber => model.mu(),
        Curve::Component(i) => model.alpha(*i)?,
        Curve::Class(c) => {
            model.check(c)?;
            if !c.is_pure_h2() {
                return Err(Error::UnsupportedCurve("not a divisor class".into()));
            }
            c.clone()
        }
    };
    if self_intersection != -2 && self_intersection != 0 {
        return Err(Error::UnsupportedCurve(format!(
            "self-intersection {self_intersection}; only smooth rational (-2) and elliptic (0) curves"
        )));
    }
    let actual = model.intersect(&class.deg2, &class.deg2)?;
    if actual != self_intersection {
        return Err(Error::UnsupportedCurve(format!(
            "class has self-intersection {actual}, not {self_intersection}"
        )));
    }
    let top = Rational::from_int(bundle_degree) - Rational::new(self_intersection, 2)?;
    Ok(&class + &model.w().scale(&top))
}

/// `ch O(D) = 1 + D + (D²/2)·w`.
pub fn line_bundle_ch(model: &K3Model, divisor: &GradedClass) -> Result<GradedClass> {
    model.check(divisor)?;
    if !divisor.is_pure_h2() {
        return Err(Error::NotPureH2);
    }
    let half_sq = model.intersect(&divisor.deg2, &divisor.deg2)? / Rational::from_int(2);
    Ok(&(&model.one() + divisor) + &model.w().scale(&half_sq))
}

/// Class `Θ + μ̂ + β_i` of the section `Σ_i` of the dual fibration.
pub fn sigma_class(model: &K3Model, i: usize) -> Result<GradedClass> {
    Ok(&(&model.h() + &model.mu()) + &model.alpha(i)?)
}

/// A sheaf with a known transform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub source: ChernCharacter,
    pub expected_transform: ChernCharacter,
    pub provenance: String,
}

fn fixture(
    name: &str,
    source: GradedClass,
    wit: Wit,
    expected: GradedClass,
    provenance: &str,
) -> Fixture {
    Fixture {
        name: name.to_string(),
        source: ChernCharacter::from_class(&source, Some(wit), name.to_string(), Side::X),
        expected_transform: ChernCharacter::from_class(
            &expected,
            Some(wit.dual()),
            format!("T^{}({name})", wit.index()),
            Side::XHat,
        ),
        provenance: provenance.to_string(),
    }
}

/// Fixture for `O_X(−C_i)`: WIT_1 with `T^1 = O_{Σ_i}(−1)`.
pub fn component_fixture(model: &K3Model, i: usize) -> Result<Fixture> {
    let alpha = model.alpha(i)?;
    let source = line_bundle_ch(model, &-alpha)?;
    let sigma = sigma_class(model, i)?;
    let expected = grr_pushforward_curve(model, &Curve::Class(sigma), -1, -2)?;
    Ok(fixture(
        &format!("O_X(-C_{i})"),
        source,
        Wit::One,
        expected,
        "T^1 O_X(-C_i) = O_{Sigma_i}(-1) on the section Sigma_i = Theta + muhat + beta_i; \
         ch by GRR on a (-2)-curve with d = -1",
    ))
}

/// All fixtures available on `model`, one `O_X(−C_i)` per fibre component.
pub fn catalog(model: &K3Model) -> Result<Vec<Fixture>> {
    let m = model;
    let mut out = vec![
        fixture(
            "O_H",
            grr_pushforward_curve(m, &Curve::Section, 0, -2)?,
            Wit::Zero,
            line_bundle_ch(m, &m.mu())?,
            "GRR: ch O_H = H + w; S^0(O_H) = O_Xhat, S^1(O_H) = 0 fixes f(H) = 1 + what; \
             with the O_X(1) twist the transform is the line bundle O(muhat) (derived)",
        ),
        fixture(
            "k(x)",
            m.w(),
            Wit::Zero,
            grr_pushforward_curve(m, &Curve::Fiber, 0, 0)?,
            "skyscraper is WIT_0; its transform is a degree-0 line bundle on a fibre, \
             ch by GRR with trivial normal bundle (derived)",
        ),
        fixture(
            "i_t*L",
            grr_pushforward_curve(m, &Curve::Fiber, 0, 0)?,
            Wit::One,
            m.w(),
            "flat line bundle on a smooth fibre: S^0 = 0, S^1 = skyscraper at [L*]",
        ),
        fixture(
            "O_X(-1)",
            line_bundle_ch(m, &-m.mu())?,
            Wit::One,
            grr_pushforward_curve(m, &Curve::Section, -2, -2)?,
            "zeroth direct images vanish; T^1 = ehat_* O_P1(-2), ch by GRR on the section \
             with d = -2 (derived)",
        ),
    ];
    for i in 1..=m.component_rank() {
        out.push(component_fixture(m, i)?);
    }
    Ok(out)
}

/// Outcome of re-deriving a fixture through the Riemann-Roch transform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureReport {
    pub name: String,
    pub pass: bool,
    pub expected: GradedClass,
    pub computed: GradedClass,
    /// `expected − computed`.
    pub delta: GradedClass,
}

pub fn verify_fixture(fm: &FourierMukai, fx: &Fixture) -> Result<FixtureReport> {
    let m = fm.model();
    let source = fx.source.to_class(m)?;
    let wit = fx.source.wit.unwrap_or(Wit::Zero);
    let computed = fm.transform_wit(&source, wit, Direction::XToXHat)?;
    let expected = fx.expected_transform.to_class(m)?;
    let delta = &expected - &computed;
    Ok(FixtureReport {
        name: fx.name.clone(),
        pass: delta.is_zero(),
        expected,
        computed,
        delta,
    })
}
