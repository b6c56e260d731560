use std::fmt::Write as _;

use super::class::{BaseClass, GradedClass};
use super::config::{FiberConfig, FiberKind};
use crate::error::{Error, Result};
use crate::exact::matrix::{e8_negative, hyperbolic_plane, negative_chain};
use crate::exact::{Matrix, Rational, Signature};

/// Which surface of the dual pair a class lives on. Both share one set of
/// coordinates; only the labels differ (`H ↔ Θ`, `μ ↔ μ̂`, `α_i ↔ β_i`, `w ↔ ŵ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    X,
    XHat,
}

impl Side {
    pub fn dual(self) -> Side {
        match self {
            Side::X => Side::XHat,
            Side::XHat => Side::X,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions {
    /// Accept fibre configurations whose Euler numbers do not sum to 24.
    pub allow_non_k3: bool,
}

/// Cohomology of an elliptic K3 surface with section and `I_n` fibres.
///
/// H^2 coordinates are ordered `[H, μ, α_1..α_r, τ_1..τ_k]` with `k = 20 - r`.
#[derive(Debug, Clone)]
pub struct K3Model {
    config: FiberConfig,
    r: usize,
    /// Fibre group index and position within the chain for each α.
    alpha_origin: Vec<(usize, usize)>,
    gram: Matrix,
    transcendental: Matrix,
    warnings: Vec<String>,
}

/// `U ⊕ U ⊕ E8(-1) ⊕ E8(-1)`.
pub fn default_transcendental() -> Matrix {
    let u = hyperbolic_plane();
    let e8 = e8_negative();
    Matrix::block_diag(&[&u, &u, &e8, &e8])
}

impl K3Model {
    pub const H: usize = 0;
    pub const MU: usize = 1;

    pub fn build(cfg: &FiberConfig, opts: BuildOptions) -> Result<Self> {
        let mut warnings = Vec::new();
        if cfg.fibers.iter().any(|g| g.count == 0) {
            return Err(Error::EmptyFiberGroup);
        }
        for g in &cfg.fibers {
            if let FiberKind::I(n) = g.kind {
                if n < 3 {
                    return Err(Error::UnsupportedFiber(n));
                }
            }
        }
        let r = cfg.component_rank();
        if r > 18 {
            return Err(Error::TooManyComponents(r));
        }
        let euler = cfg.euler_sum();
        if euler != 24 {
            if !opts.allow_non_k3 {
                return Err(Error::EulerSum(euler));
            }
            warnings.push(format!(
                "Euler numbers of the singular fibres sum to {euler}, not 24; continuing as requested"
            ));
        }

        let k = 20 - r;
        let transcendental = match &cfg.transcendental_gram {
            Some(t) => {
                check_transcendental(t, k)?;
                t.clone()
            }
            None if r == 0 => default_transcendental(),
            None => return Err(Error::MissingTranscendental),
        };

        let mut alpha_origin = Vec::with_capacity(r);
        let mut blocks = Vec::new();
        for (gi, g) in cfg.fibers.iter().enumerate() {
            let m = g.kind.extra_components();
            if m == 0 {
                continue;
            }
            for _ in 0..g.count {
                blocks.push(negative_chain(m));
                alpha_origin.extend((0..m).map(|pos| (gi, pos)));
            }
        }
        let u = Matrix::from_int_rows(&[[-2, 1], [1, 0]]);
        let mut parts: Vec<&Matrix> = vec![&u];
        parts.extend(blocks.iter());
        parts.push(&transcendental);
        let gram = Matrix::block_diag(&parts);

        if !gram.is_symmetric() {
            return Err(Error::Lattice("intersection form is not symmetric".into()));
        }
        if !gram.is_even() {
            return Err(Error::Lattice("intersection form is not even".into()));
        }
        let sig = gram.signature()?;
        if sig.pair() != (3, 19) || !sig.is_nondegenerate() {
            return Err(Error::Lattice(format!("signature {sig}, expected (3,19)")));
        }

        Ok(K3Model {
            config: cfg.clone(),
            r,
            alpha_origin,
            gram,
            transcendental,
            warnings,
        })
    }

    /// 24 nodal fibres, Picard lattice `U`, default transcendental lattice.
    pub fn nodal24() -> Self {
        K3Model::build(&FiberConfig::nodal24(), BuildOptions::default()).expect("default model is valid")
    }

    pub fn config(&self) -> &FiberConfig {
        &self.config
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Number of fibre components `α_i` in the basis.
    pub fn component_rank(&self) -> usize {
        self.r
    }

    pub fn transcendental_rank(&self) -> usize {
        20 - self.r
    }

    pub fn h2_rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn picard_rank(&self) -> usize {
        2 + self.r
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn transcendental_gram(&self) -> &Matrix {
        &self.transcendental
    }

    pub fn signature(&self) -> Signature {
        self.gram.signature().expect("gram is symmetric")
    }

    pub fn alpha_index(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.r {
            return Err(Error::MissingComponent {
                index: i,
                available: self.r,
            });
        }
        Ok(1 + i)
    }

    pub fn tau_index(&self, j: usize) -> Result<usize> {
        let k = self.transcendental_rank();
        if j == 0 || j > k {
            return Err(Error::UnknownLabel(format!("tau_{j}")));
        }
        Ok(1 + self.r + j)
    }

    /// `(fibre group, position along the chain)` of `α_i`.
    pub fn alpha_origin(&self, i: usize) -> Result<(usize, usize)> {
        self.alpha_index(i)?;
        Ok(self.alpha_origin[i - 1])
    }

    // ---- basis classes ----

    pub fn zero(&self) -> GradedClass {
        GradedClass::zero(self.h2_rank())
    }

    pub fn one(&self) -> GradedClass {
        GradedClass {
            deg0: Rational::one(),
            ..self.zero()
        }
    }

    /// Point class `w`.
    pub fn w(&self) -> GradedClass {
        GradedClass {
            deg4: Rational::one(),
            ..self.zero()
        }
    }

    pub fn basis_h2(&self, index: usize) -> GradedClass {
        let mut c = self.zero();
        c.deg2[index] = Rational::one();
        c
    }

    /// Section class `H` (`Θ` on the dual side).
    pub fn h(&self) -> GradedClass {
        self.basis_h2(Self::H)
    }

    /// Fibre class `μ` (`μ̂` on the dual side).
    pub fn mu(&self) -> GradedClass {
        self.basis_h2(Self::MU)
    }

    pub fn alpha(&self, i: usize) -> Result<GradedClass> {
        Ok(self.basis_h2(self.alpha_index(i)?))
    }

    pub fn tau(&self, j: usize) -> Result<GradedClass> {
        Ok(self.basis_h2(self.tau_index(j)?))
    }

    pub fn class(&self, deg0: Rational, deg2: Vec<Rational>, deg4: Rational) -> Result<GradedClass> {
        let c = GradedClass { deg0, deg2, deg4 };
        self.check(&c)?;
        Ok(c)
    }

    pub fn h2_class(&self, deg2: Vec<Rational>) -> Result<GradedClass> {
        self.class(Rational::zero(), deg2, Rational::zero())
    }

    /// `r·1 + a·H + b·μ + c·w`.
    pub fn rabc(&self, r: Rational, a: Rational, b: Rational, c: Rational) -> GradedClass {
        let mut v = self.zero();
        v.deg0 = r;
        v.deg2[Self::H] = a;
        v.deg2[Self::MU] = b;
        v.deg4 = c;
        v
    }

    pub fn check(&self, x: &GradedClass) -> Result<()> {
        if x.h2_rank() != self.h2_rank() {
            return Err(Error::DimensionMismatch {
                expected: self.h2_rank(),
                found: x.h2_rank(),
            });
        }
        Ok(())
    }

    // ---- sublattices ----

    /// Coordinate vectors of `H, μ, α_i`.
    pub fn picard_basis(&self) -> Vec<Vec<Rational>> {
        (0..self.picard_rank()).map(|i| self.basis_h2(i).deg2).collect()
    }

    pub fn transcendental_basis(&self) -> Vec<Vec<Rational>> {
        (self.picard_rank()..self.h2_rank())
            .map(|i| self.basis_h2(i).deg2)
            .collect()
    }

    /// `U = span(μ, H)` as classes.
    pub fn u_lattice(&self) -> Vec<GradedClass> {
        vec![self.mu(), self.h()]
    }

    /// `V = H^0 ⊕ H^4 = span(1, w)`.
    pub fn v_lattice(&self) -> Vec<GradedClass> {
        vec![self.one(), self.w()]
    }

    // ---- products and pairings ----

    /// Intersection form on H^2 coordinates.
    pub fn intersect(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        self.gram.bilinear(x, y)
    }

    /// Cup product, truncated above degree 4. `deg4` is the coefficient of `w`.
    pub fn cup(&self, x: &GradedClass, y: &GradedClass) -> Result<GradedClass> {
        self.check(x)?;
        self.check(y)?;
        let deg2 = x
            .deg2
            .iter()
            .zip(&y.deg2)
            .map(|(a, b)| &x.deg0 * b + &y.deg0 * a)
            .collect();
        let deg4 = &x.deg0 * &y.deg4 + &y.deg0 * &x.deg4 + self.intersect(&x.deg2, &y.deg2)?;
        Ok(GradedClass {
            deg0: &x.deg0 * &y.deg0,
            deg2,
            deg4,
        })
    }

    /// `(a,b,c)·(a',b',c') = b·b' − a c' − a' c`.
    pub fn mukai_pair(&self, x: &GradedClass, y: &GradedClass) -> Result<Rational> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.intersect(&x.deg2, &y.deg2)? - &x.deg0 * &y.deg4 - &y.deg0 * &x.deg4)
    }

    /// `e^*` on H^2 as a number: the degree of the restriction to the section,
    /// i.e. `x·H`. Gives `e^*μ = 1`, `e^*H = −2`, `e^*α_i = 0`.
    pub fn section_restriction(&self, deg2: &[Rational]) -> Result<Rational> {
        let h = self.h().deg2;
        self.intersect(deg2, &h)
    }

    /// Splits `x` into a pullback part in `span(1, μ)` and a part killed by `e^*`.
    pub fn decompose_fiberwise(&self, x: &GradedClass) -> Result<(GradedClass, GradedClass)> {
        self.check(x)?;
        let e = self.section_restriction(&x.deg2)?;
        let mut pullback = self.zero();
        pullback.deg0 = x.deg0.clone();
        pullback.deg2[Self::MU] = e;
        let phi = x - &pullback;
        Ok((pullback, phi))
    }

    /// Fixes pullbacks from the base and acts by `(−1)^i` on the `H^{2i}` part
    /// of `ker e^*`; only the H^2 component actually changes.
    pub fn star(&self, x: &GradedClass) -> Result<GradedClass> {
        let (pullback, phi) = self.decompose_fiberwise(x)?;
        let flipped = GradedClass {
            deg0: phi.deg0.clone(),
            deg2: phi.deg2.iter().map(|c| -c).collect(),
            deg4: phi.deg4.clone(),
        };
        Ok(&pullback + &flipped)
    }

    /// Integration over the fibres: `p_*(w) = [pt]`, `p_*(D) = (D·μ)·1`, `p_*(1) = 0`.
    pub fn pushforward(&self, x: &GradedClass) -> Result<BaseClass> {
        self.check(x)?;
        let mu = self.mu().deg2;
        Ok(BaseClass::new(self.intersect(&x.deg2, &mu)?, x.deg4.clone()))
    }

    /// `p_*(x^* ∪ y)`, valued in `H^•(P^1, Q)`.
    pub fn modified_pair(&self, x: &GradedClass, y: &GradedClass) -> Result<BaseClass> {
        self.check(y)?;
        let xs = self.star(x)?;
        self.pushforward(&self.cup(&xs, y)?)
    }

    // ---- μ^⊥ / Qμ ----

    pub fn in_mu_perp(&self, x: &GradedClass) -> Result<bool> {
        Ok(self.mukai_pair(x, &self.mu())?.is_zero())
    }

    /// Representatives `1, w, α_i, τ_j` of a basis of `μ^⊥/Qμ` (rank 22).
    pub fn mu_perp_mod_mu_basis(&self) -> Vec<GradedClass> {
        let mut basis = vec![self.one(), self.w()];
        basis.extend((2..self.h2_rank()).map(|i| self.basis_h2(i)));
        basis
    }

    /// Coordinates of `x ∈ μ^⊥` in [`Self::mu_perp_mod_mu_basis`], discarding
    /// the `μ` component.
    pub fn quotient_coords(&self, x: &GradedClass) -> Result<Vec<Rational>> {
        if !self.in_mu_perp(x)? {
            return Err(Error::NotInMuPerp);
        }
        // μ^⊥ is {H-coordinate = 0} since H is the only basis vector meeting μ
        debug_assert!(x.deg2[Self::H].is_zero());
        let mut v = vec![x.deg0.clone(), x.deg4.clone()];
        v.extend(x.deg2[2..].iter().cloned());
        Ok(v)
    }

    pub fn from_quotient_coords(&self, coords: &[Rational]) -> Result<GradedClass> {
        if coords.len() != self.h2_rank() {
            return Err(Error::DimensionMismatch {
                expected: self.h2_rank(),
                found: coords.len(),
            });
        }
        let mut x = self.zero();
        x.deg0 = coords[0].clone();
        x.deg4 = coords[1].clone();
        for (slot, c) in x.deg2[2..].iter_mut().zip(&coords[2..]) {
            *slot = c.clone();
        }
        Ok(x)
    }

    /// Canonical representative of `x + Qμ` for `x ∈ μ^⊥`: the μ-coordinate is zeroed.
    pub fn canonical_mod_mu(&self, x: &GradedClass) -> Result<GradedClass> {
        self.from_quotient_coords(&self.quotient_coords(x)?)
    }

    /// Mukai Gram matrix on the quotient basis.
    pub fn quotient_gram(&self) -> Matrix {
        let b = self.mu_perp_mod_mu_basis();
        let n = b.len();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, self.mukai_pair(&b[i], &b[j]).expect("same model"));
            }
        }
        g
    }

    // ---- labels and rendering ----

    /// ASCII key of an H^2 coordinate, as used in JSON.
    pub fn h2_key(&self, index: usize, side: Side) -> String {
        match (index, side) {
            (Self::H, Side::X) => "H".into(),
            (Self::H, Side::XHat) => "Theta".into(),
            (Self::MU, Side::X) => "mu".into(),
            (Self::MU, Side::XHat) => "muhat".into(),
            (i, side) if i < self.picard_rank() => match side {
                Side::X => format!("alpha_{}", i - 1),
                Side::XHat => format!("beta_{}", i - 1),
            },
            (i, _) => format!("tau_{}", i - 1 - self.r),
        }
    }

    /// Display symbol of an H^2 coordinate.
    pub fn h2_symbol(&self, index: usize, side: Side) -> String {
        match (index, side) {
            (Self::H, Side::X) => "H".into(),
            (Self::H, Side::XHat) => "Θ".into(),
            (Self::MU, Side::X) => "μ".into(),
            (Self::MU, Side::XHat) => "μ̂".into(),
            (i, side) if i < self.picard_rank() => match side {
                Side::X => format!("α_{}", i - 1),
                Side::XHat => format!("β_{}", i - 1),
            },
            (i, _) => format!("τ_{}", i - 1 - self.r),
        }
    }

    /// Inverse of [`Self::h2_key`]; accepts keys of either side.
    pub fn h2_index(&self, key: &str) -> Result<usize> {
        let unknown = || Error::UnknownLabel(key.to_string());
        match key {
            "H" | "Theta" => Ok(Self::H),
            "mu" | "muhat" => Ok(Self::MU),
            _ => {
                let (stem, num) = key.split_once('_').ok_or_else(unknown)?;
                let n: usize = num.parse().map_err(|_| unknown())?;
                match stem {
                    "alpha" | "beta" => self.alpha_index(n),
                    "tau" => self.tau_index(n),
                    _ => Err(unknown()),
                }
            }
        }
    }

    /// Human-readable form, e.g. `−μ̂ − Θ` or `1 + 1/2·μ − w`.
    pub fn render(&self, x: &GradedClass, side: Side) -> String {
        let point = match side {
            Side::X => "w",
            Side::XHat => "ŵ",
        };
        let mut terms: Vec<(Rational, String)> = Vec::new();
        if !x.deg0.is_zero() {
            terms.push((x.deg0.clone(), String::new()));
        }
        for (i, c) in x.deg2.iter().enumerate() {
            if !c.is_zero() {
                terms.push((c.clone(), self.h2_symbol(i, side)));
            }
        }
        if !x.deg4.is_zero() {
            terms.push((x.deg4.clone(), point.to_string()));
        }
        render_terms(&terms)
    }
}

/// Joins `(coefficient, symbol)` terms as `a − b + 2c`; an empty symbol is a scalar.
pub fn render_terms(terms: &[(Rational, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (c, sym)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        match (k, neg) {
            (0, true) => out.push('−'),
            (0, false) => {}
            (_, true) => out.push_str(" − "),
            (_, false) => out.push_str(" + "),
        }
        if sym.is_empty() {
            let _ = write!(out, "{mag}");
        } else if mag.is_one() {
            out.push_str(sym);
        } else if mag.is_integer() {
            let _ = write!(out, "{mag}{sym}");
        } else {
            let _ = write!(out, "{mag}·{sym}");
        }
    }
    out
}

fn check_transcendental(t: &Matrix, k: usize) -> Result<()> {
    if !t.is_square() || t.rows() != k {
        return Err(Error::Transcendental(format!(
            "rank {}x{}, expected {k}x{k}",
            t.rows(),
            t.cols()
        )));
    }
    if !t.is_symmetric() {
        return Err(Error::Transcendental("Gram matrix is not symmetric".into()));
    }
    if !t.is_even() {
        return Err(Error::Transcendental("Gram matrix is not even".into()));
    }
    let sig = t.signature()?;
    if sig.pair() != (2, k - 2) || !sig.is_nondegenerate() {
        return Err(Error::Transcendental(format!(
            "signature {sig}, expected (2,{})",
            k - 2
        )));
    }
    Ok(())
}
