//! Acceptance criteria, one line each. Runs as a plain binary so the lines
//! show up in `cargo test` output; exits nonzero if any criterion fails.

use std::io::Write;
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mukai_k3::exact::matrix::{gram_of, span_equal};
use mukai_k3::exact::ComplexRational;
use mukai_k3::fm::{rr_table, Direction, FourierMukai, Wit};
use mukai_k3::mirror::{bps_mass, psi_isometry_report, standard_period};
use mukai_k3::report::{erratum_report, h_p_basis, modified_pairing_counterexample};
use mukai_k3::sheaf::{catalog, component_fixture, sigma_class, verify_fixture};
use mukai_k3::{BuildOptions, FiberConfig, GradedClass, K3Model, Rational};

const SEED: u64 = 42;
const SAMPLES: usize = 1000;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn i3() -> K3Model {
    let cfg = FiberConfig::from_json(include_str!("../../../data/i3.json")).unwrap();
    K3Model::build(&cfg, BuildOptions::default()).unwrap()
}

fn rat(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-20..=20), rng.gen_range(1..=7)).unwrap()
}

fn random_class(m: &K3Model, rng: &mut ChaCha8Rng) -> GradedClass {
    let v: Vec<Rational> = (0..m.h2_rank() + 2).map(|_| rat(rng)).collect();
    GradedClass::from_vec(&v).unwrap()
}

fn int(n: i64) -> Rational {
    Rational::from_int(n)
}

fn show(m: &K3Model, x: &GradedClass) -> String {
    m.render(x, mukai_k3::Side::XHat)
}

fn c1_basis_table() -> Outcome {
    let m = K3Model::nodal24();
    let fm = FourierMukai::new(&m);
    let checks = [
        ("f(μ) = −ŵ", fm.f(&m.mu()).unwrap(), -m.w()),
        ("f(H) = 1 + ŵ", fm.f(&m.h()).unwrap(), &m.one() + &m.w()),
        ("f(w) = μ̂", fm.f(&m.w()).unwrap(), m.mu()),
        ("f′(μ̂) = −w", fm.f_prime(&m.mu()).unwrap(), -m.w()),
    ];
    for (name, got, want) in checks {
        ensure(got == want, || format!("{name}: got {}", show(&m, &got)))?;
    }
    Ok(())
}

fn c2_inversion() -> Outcome {
    for m in [K3Model::nodal24(), i3()] {
        let fm = FourierMukai::new(&m);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for k in 0..SAMPLES {
            let v = random_class(&m, &mut rng);
            let a = fm.f(&fm.f_prime(&v).unwrap()).unwrap();
            let b = fm.f_prime(&fm.f(&v).unwrap()).unwrap();
            ensure(a == -&v && b == -&v, || format!("sample {k}"))?;
        }
    }
    Ok(())
}

/// `(−1)^i ch F̂ = a − rΘ + cμ̂ − bŵ`, written out independently of the library table.
fn table_by_hand(m: &K3Model, [r, a, b, c]: [Rational; 4], wit: Wit) -> GradedClass {
    m.rabc(a, -r, c, -b).scale(&wit.sign())
}

fn c3_rr_identity() -> Outcome {
    let m = K3Model::nodal24();
    let fm = FourierMukai::new(&m);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut tuples: Vec<[Rational; 4]> = (0..4)
        .map(|k| {
            let mut t = [int(0), int(0), int(0), int(0)];
            t[k] = int(1);
            t
        })
        .collect();
    for _ in 0..SAMPLES {
        tuples.push([0; 4].map(|_| int(rng.gen_range(-1000..=1000))));
    }
    for dir in [Direction::XToXHat, Direction::XHatToX] {
        for wit in [Wit::Zero, Wit::One] {
            for t in &tuples {
                let ch = m.rabc(t[0].clone(), t[1].clone(), t[2].clone(), t[3].clone());
                let general = fm.transform_wit(&ch, wit, dir).unwrap();
                let table = rr_table(&m, &ch, wit, dir).unwrap().to_class(&m).unwrap();
                let hand = table_by_hand(&m, t.clone(), wit);
                ensure(general == table && table == hand, || {
                    format!("{dir}, wit {}, ch {}: {}", wit.index(), m.render(&ch, dir.source()), show(&m, &general))
                })?;
            }
        }
    }
    Ok(())
}

fn c4_appendix() -> Outcome {
    let m = i3();
    let fm = FourierMukai::new(&m);
    ensure(m.component_rank() == 2, || "expected two components".into())?;
    for i in 1..=m.component_rank() {
        let alpha = m.alpha(i).unwrap();
        let ch = &(&m.one() - &alpha) - &m.w();
        let got = fm.transform_wit(&ch, Wit::One, Direction::XToXHat).unwrap();
        let sigma = &(&m.h() + &m.mu()) + &alpha;
        ensure(got == sigma, || format!("i = {i}: {}", show(&m, &got)))?;
        ensure(sigma_class(&m, i).unwrap() == sigma, || format!("sigma class {i}"))?;
        let sq = m.intersect(&sigma.deg2, &sigma.deg2).unwrap();
        let deg = m.intersect(&sigma.deg2, &m.mu().deg2).unwrap();
        ensure(sq == int(-2) && deg == int(1), || format!("Σ_{i}² = {sq}, Σ_{i}·μ̂ = {deg}"))?;
        ensure(component_fixture(&m, i).unwrap().source.to_class(&m).unwrap() == ch, || {
            format!("fixture source {i}")
        })?;
    }
    Ok(())
}

fn c5_fixtures() -> Outcome {
    for m in [K3Model::nodal24(), i3()] {
        let fm = FourierMukai::new(&m);
        let cat = catalog(&m).unwrap();
        for name in ["O_H", "k(x)", "i_t*L", "O_X(-1)"] {
            ensure(cat.iter().any(|f| f.name == name), || format!("missing fixture {name}"))?;
        }
        for fx in &cat {
            let rep = verify_fixture(&fm, fx).unwrap();
            ensure(rep.pass, || format!("{}: delta {}", fx.name, show(&m, &rep.delta)))?;
        }
    }
    Ok(())
}

fn c6_f_tilde() -> Outcome {
    let m = K3Model::nodal24();
    let fm = FourierMukai::new(&m);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for k in 0..SAMPLES {
        let v = random_class(&m, &mut rng);
        let lhs = fm.f(&v).unwrap().deg0;
        let rhs = m.mukai_pair(&v, &m.mu()).unwrap();
        ensure(lhs == rhs, || format!("sample {k}: {lhs} vs {rhs}"))?;
    }
    let basis = m.mu_perp_mod_mu_basis();
    ensure(basis.len() == 22, || format!("quotient rank {}", basis.len()))?;
    let images: Vec<Vec<Rational>> = basis.iter().map(|b| fm.f_tilde(b).unwrap().deg2).collect();
    let q = m.quotient_gram();
    ensure(q.rank() == 22, || "quotient Gram is degenerate".into())?;
    ensure(gram_of(m.gram(), &images).unwrap() == q, || "Gram of f̃-images differs".into())
}

fn c7_swap() -> Outcome {
    for m in [K3Model::nodal24(), i3()] {
        let fm = FourierMukai::new(&m);
        let img = |xs: Vec<GradedClass>| -> Vec<Vec<Rational>> {
            xs.iter().map(|x| fm.f(x).unwrap().to_vec()).collect()
        };
        let coords = |xs: Vec<GradedClass>| -> Vec<Vec<Rational>> { xs.iter().map(GradedClass::to_vec).collect() };
        ensure(
            span_equal(&img(m.u_lattice()), &coords(m.v_lattice())).unwrap(),
            || "f(U) ≠ V".into(),
        )?;
        ensure(
            span_equal(&img(m.v_lattice()), &coords(m.u_lattice())).unwrap(),
            || "f(V) ≠ U".into(),
        )?;
    }
    Ok(())
}

fn c8_restricted() -> Outcome {
    let m = K3Model::nodal24();
    let fm = FourierMukai::new(&m);
    let hp = h_p_basis(&m);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let draw = |rng: &mut ChaCha8Rng| {
        hp.iter()
            .fold(m.zero(), |acc, b| &acc + &b.scale(&rat(rng)))
    };
    for k in 0..SAMPLES {
        let u = draw(&mut rng);
        let v = draw(&mut rng);
        ensure(u.deg0.is_zero() && m.section_restriction(&u.deg2).unwrap().is_zero(), || {
            format!("sample {k} outside H•_p")
        })?;
        let adj_l = m.mukai_pair(&u, &fm.f(&v).unwrap()).unwrap();
        let adj_r = -m.mukai_pair(&fm.f_prime(&u).unwrap(), &v).unwrap();
        ensure(adj_l == adj_r, || format!("adjoint, sample {k}: {adj_l} vs {adj_r}"))?;
        let iso_l = m.mukai_pair(&fm.f(&u).unwrap(), &fm.f(&v).unwrap()).unwrap();
        let iso_r = m.mukai_pair(&u, &v).unwrap();
        ensure(iso_l == iso_r, || format!("isometry, sample {k}: {iso_l} vs {iso_r}"))?;
    }
    Ok(())
}

fn c9_psi() -> Outcome {
    let m = K3Model::nodal24();
    let p = standard_period(&m).map_err(|e| e.to_string())?;
    let rep = psi_isometry_report(&m, &p, SEED, 100).map_err(|e| e.to_string())?;
    ensure(rep.failures.is_empty(), || format!("{} failures", rep.failures.len()))?;
    ensure(rep.psi_omega_proportional, || "ψ(Ω) not proportional to Ω".into())?;
    ensure(rep.quotient_dimension == 18, || format!("dimension {}", rep.quotient_dimension))?;
    ensure(rep.all_exact && rep.trials == 100 && rep.seed == SEED, || "report header".into())
}

fn c10_mass() -> Outcome {
    let m = K3Model::nodal24();
    let p = standard_period(&m).unwrap();
    ensure(p.norm(&m) == int(4), || format!("Ω·Ω̄ = {}", p.norm(&m)))?;
    let t1 = &m.tau(1).unwrap() + &m.tau(2).unwrap();
    let base = bps_mass(&m, &t1, &p).unwrap();
    ensure(base.mass_squared == int(1), || format!("M² = {}", base.mass_squared))?;
    ensure(base.decimal == "1.00000000000000", || base.decimal.clone())?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let gammas: Vec<GradedClass> = (0..5)
        .map(|_| {
            let c: Vec<Rational> = (0..m.h2_rank()).map(|_| int(rng.gen_range(-5..=5))).collect();
            m.h2_class(c).unwrap()
        })
        .chain([t1])
        .collect();
    for k in 0..100 {
        let lambda = loop {
            let z = ComplexRational::new(rat(&mut rng), rat(&mut rng));
            if !z.is_zero() {
                break z;
            }
        };
        let scaled = p.scaled(&lambda).unwrap();
        let g = &gammas[k % gammas.len()];
        let a = bps_mass(&m, g, &p).unwrap().mass_squared;
        let b = bps_mass(&m, g, &scaled).unwrap().mass_squared;
        ensure(a == b, || format!("λ = {lambda}: {a} vs {b}"))?;
    }
    for i in 0..m.picard_rank() {
        let g = m.basis_h2(i);
        let mass = bps_mass(&m, &g, &p).unwrap();
        ensure(mass.mass_squared.is_zero(), || format!("Pic basis {i}: {}", mass.mass_squared))?;
    }
    let pic = &m.h().scale(&int(3)) - &m.mu().scale(&int(7));
    ensure(bps_mass(&m, &pic, &p).unwrap().mass_squared.is_zero(), || "3H − 7μ".into())
}

fn c11_erratum() -> Outcome {
    let text = erratum_report(&K3Model::nodal24()).unwrap();
    ensure(text == include_str!("golden/erratum.txt"), || "default-model report differs from golden".into())?;
    let text_i3 = erratum_report(&i3()).unwrap();
    ensure(text_i3 == include_str!("golden/erratum_i3.txt"), || "I3 report differs from golden".into())?;
    for needle in [
        "candidate (as printed): f(1) = −Θ − μ̂ + ŵ",
        "candidate (corrected): f(1) = −Θ − μ̂",
        "  ch2 = r − b\n",
        "  ch2 = −b\n",
        "table: rank = a, c1 = −rΘ + cμ̂, ch2 = −b",
    ] {
        ensure(text.contains(needle), || format!("missing {needle:?}"))?;
    }
    Ok(())
}

fn c12_modified_pairing() -> Outcome {
    let m = K3Model::nodal24();
    let (f1, one) = modified_pairing_counterexample(&m).unwrap();
    ensure(f1 == "-2[pt]" && one == "0[pt]", || format!("{f1}, {one}"))?;
    let text = erratum_report(&m).unwrap();
    ensure(
        text.contains("<f(1), f(1)> = -2[pt], <1, 1> = 0[pt]") && text.contains("reported, not asserted"),
        || "counterexample not in report".into(),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("basis table of f and f′", c1_basis_table),
        ("f∘f′ = f′∘f = −id on 1000 random vectors", c2_inversion),
        ("transform agrees with the rank/c1/ch2 table, both directions", c3_rr_identity),
        ("T^1 O_X(−C_i) = Θ + μ̂ + β_i and section axioms", c4_appendix),
        ("sheaf fixtures", c5_fixtures),
        ("degree-0 law and f̃ isometry on μ⊥/Qμ", c6_f_tilde),
        ("f(U) = V and f(V) = U", c7_swap),
        ("adjoint identity and isometry on H•_p, 1000 pairs", c8_restricted),
        ("ψ isometry, seed 42, 100 trials", c9_psi),
        ("BPS mass, scale invariance, Pic massless", c10_mass),
        ("erratum report matches golden files", c11_erratum),
        ("modified-pairing counterexample reported", c12_modified_pairing),
    ];
    let mut out = std::io::stdout().lock();
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(()) => writeln!(out, "criterion {:2} PASS  {name}", k + 1).unwrap(),
            Err(why) => {
                failed += 1;
                writeln!(out, "criterion {:2} FAIL  {name}: {why}", k + 1).unwrap();
            }
        }
    }
    writeln!(out, "{} of {} criteria passed", criteria.len() - failed, criteria.len()).unwrap();
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
