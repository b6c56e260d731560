use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use mukai_k3::fm::{brane_map, rr_table, Direction, FourierMukai, Wit};
use mukai_k3::io::{class_to_value, parse_class, parse_complex_vector};
use mukai_k3::mirror::{bps_mass, psi_isometry_report, standard_period, validate_period, Period};
use mukai_k3::report::{erratum_report, fixture_lines, lemma_table, render_lemma_table, selftest};
use mukai_k3::{BuildOptions, Error, ErrorKind, FiberConfig, GradedClass, K3Model, Side};

use crate::{Command, Global};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    /// Report to print before the error, for checks that ran but failed.
    pub stdout: Option<String>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Parse => EXIT_USAGE,
            ErrorKind::Validation => EXIT_VALIDATION,
            ErrorKind::Precondition => EXIT_PRECONDITION,
        };
        Failure {
            code,
            message: e.to_string(),
            stdout: None,
        }
    }
}

fn usage(message: String) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message,
        stdout: None,
    }
}

type Out = Result<String, Failure>;

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn load_model(global: &Global, path: Option<&Path>) -> Result<K3Model, Failure> {
    let opts = BuildOptions {
        allow_non_k3: global.allow_non_k3,
    };
    let cfg = match path.or(global.model.as_deref()) {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?;
            FiberConfig::from_json(&text)?
        }
        None => FiberConfig::nodal24(),
    };
    let model = K3Model::build(&cfg, opts)?;
    for w in model.warnings() {
        eprintln!("warning: {w}");
    }
    Ok(model)
}

fn read_inline_or_file(arg: &str) -> Result<String, Failure> {
    let t = arg.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        Ok(arg.to_string())
    } else {
        fs::read_to_string(arg).map_err(|e| usage(format!("cannot read {arg}: {e}")))
    }
}

fn load_period(model: &K3Model, arg: Option<&str>) -> Result<Period, Failure> {
    Ok(match arg {
        Some(a) => validate_period(parse_complex_vector(model, &read_inline_or_file(a)?)?, model)?,
        None => standard_period(model)?,
    })
}

pub fn run(global: &Global, command: &Command) -> Out {
    match command {
        Command::Validate { config } => validate(global, config.as_deref()),
        Command::Fm {
            vector,
            inverse,
            direction,
        } => fm(global, vector, *inverse, direction.as_deref()),
        Command::Pair { v1, v2, modified } => pair(global, v1, v2, *modified),
        Command::TransformCh {
            ch,
            wit,
            direction,
            table,
            grr,
        } => transform_ch(global, ch, wit, direction, *table, *grr),
        Command::Brane { vector } => brane(global, vector),
        Command::Mass { gamma, period } => mass(global, gamma, period.as_deref()),
        Command::MirrorCheck { period } => mirror_check(global, period.as_deref()),
        Command::Selftest {
            fixtures,
            lemma,
            erratum,
        } => self_test(global, *fixtures, *lemma, *erratum),
    }
}

fn validate(global: &Global, config: Option<&Path>) -> Out {
    let m = load_model(global, config)?;
    let sig = m.signature();
    let cfg = m.config();
    if global.json {
        return Ok(line(json!({
            "rank": m.h2_rank(),
            "signature": [sig.positive, sig.negative],
            "picard_rank": m.picard_rank(),
            "transcendental_rank": m.transcendental_rank(),
            "euler_sum": cfg.euler_sum(),
            "warnings": m.warnings(),
        })));
    }
    let mut out = line(format!("rank {}, signature {}", m.h2_rank(), sig));
    out += &line(format!(
        "Picard rank {} (U plus {} fibre components), transcendental rank {}",
        m.picard_rank(),
        m.component_rank(),
        m.transcendental_rank()
    ));
    out += &line(format!("singular fibres: Euler numbers sum to {}", cfg.euler_sum()));
    Ok(out)
}

fn parse_direction(s: &str) -> Result<Direction, Failure> {
    s.parse::<Direction>().map_err(Failure::from)
}

fn emit_class(global: &Global, m: &K3Model, x: &GradedClass, side: Side) -> String {
    if global.json {
        line(class_to_value(m, x, side))
    } else {
        line(m.render(x, side))
    }
}

fn fm(global: &Global, vector: &str, inverse: bool, direction: Option<&str>) -> Out {
    let m = load_model(global, None)?;
    let dir = match direction {
        Some(d) => parse_direction(d)?,
        None if inverse => Direction::XHatToX,
        None => Direction::XToXHat,
    };
    let x = parse_class(&m, vector)?;
    let t = FourierMukai::new(&m);
    let y = if inverse { t.f_prime(&x)? } else { t.f(&x)? };
    Ok(emit_class(global, &m, &y, dir.target()))
}

fn pair(global: &Global, v1: &str, v2: &str, modified: bool) -> Out {
    let m = load_model(global, None)?;
    let x = parse_class(&m, v1)?;
    let y = parse_class(&m, v2)?;
    if modified {
        let b = m.modified_pair(&x, &y)?;
        return Ok(if global.json {
            line(json!({"modified_pairing": {"1": b.c0.to_string(), "pt": b.c1.to_string()}}))
        } else {
            line(b)
        });
    }
    let p = m.mukai_pair(&x, &y)?;
    Ok(if global.json {
        line(json!({"pairing": p.to_string()}))
    } else {
        line(p)
    })
}

fn transform_ch(global: &Global, ch: &str, wit: &str, direction: &str, table: bool, grr: bool) -> Out {
    let m = load_model(global, None)?;
    let wit: Wit = wit.parse()?;
    let dir = parse_direction(direction)?;
    let x = parse_class(&m, ch)?;
    let fm = FourierMukai::new(&m);

    let from_table = || -> Result<GradedClass, Error> { rr_table(&m, &x, wit, dir)?.to_class(&m) };
    let (result, method) = if table {
        (from_table()?, "table")
    } else if grr {
        (fm.transform_wit(&x, wit, dir)?, "grr")
    } else {
        let general = fm.transform_wit(&x, wit, dir)?;
        match from_table() {
            Ok(t) if t != general => {
                return Err(Failure {
                    code: EXIT_PRECONDITION,
                    message: format!(
                        "table gives {} but the Riemann-Roch expansion gives {}",
                        m.render(&t, dir.target()),
                        m.render(&general, dir.target())
                    ),
                    stdout: None,
                })
            }
            Ok(_) => (general, "table+grr"),
            Err(Error::OutsideRankTwoPicard(_)) => (general, "grr"),
            Err(e) => return Err(e.into()),
        }
    };
    if global.json {
        return Ok(line(json!({
            "direction": dir.to_string(),
            "wit": wit.index(),
            "transform_wit": wit.dual().index(),
            "method": method,
            "class": class_to_value(&m, &result, dir.target()),
        })));
    }
    Ok(line(m.render(&result, dir.target())))
}

fn brane(global: &Global, vector: &str) -> Out {
    let m = load_model(global, None)?;
    let x = parse_class(&m, vector)?;
    if let Some(i) = (2..m.h2_rank()).find(|&i| !x.deg2[i].is_zero()) {
        return Err(Error::OutsideRankTwoPicard(m.h2_key(i, Side::X)).into());
    }
    let int = |v: &mukai_k3::Rational| v.to_integer().ok_or_else(|| Error::NotIntegral(v.to_string()));
    let img = brane_map(
        &int(&x.deg0)?,
        &int(&x.deg2[K3Model::H])?,
        &int(&x.deg2[K3Model::MU])?,
        &int(&x.deg4)?,
    );
    if global.json {
        let image: Vec<String> = img.image.iter().map(ToString::to_string).collect();
        return Ok(line(json!({"image": image, "annotation": img.annotation})));
    }
    Ok(line(format!("{} : {}", img.render(&m), img.annotation)))
}

fn mass(global: &Global, gamma: &str, period: Option<&str>) -> Out {
    let m = load_model(global, None)?;
    let p = load_period(&m, period)?;
    let g = parse_class(&m, gamma)?;
    let bps = bps_mass(&m, &g, &p)?;
    Ok(if global.json {
        line(bps.to_json())
    } else {
        line(format!("M² = {}, M ≈ {}", bps.mass_squared, bps.decimal))
    })
}

fn mirror_check(global: &Global, period: Option<&str>) -> Out {
    let m = load_model(global, None)?;
    let p = load_period(&m, period)?;
    let rep = psi_isometry_report(&m, &p, global.seed, global.trials)?;
    let out = if global.json {
        line(rep.to_json())
    } else {
        let mut s = line(format!(
            "seed {}, {} trials, quotient dimension {}",
            rep.seed, rep.trials, rep.quotient_dimension
        ));
        s += &line(format!("failures: {}", rep.failures.len()));
        for f in &rep.failures {
            s += &line(format!("  {f}"));
        }
        s += &line(format!("ψ(Ω) proportional to Ω: {}", if rep.psi_omega_proportional { "yes" } else { "no" }));
        s += &line(format!("all exact: {}", if rep.all_exact { "yes" } else { "no" }));
        s
    };
    if rep.all_exact {
        Ok(out)
    } else {
        Err(Failure {
            code: EXIT_PRECONDITION,
            message: "ψ check failed".into(),
            stdout: Some(out),
        })
    }
}

fn self_test(global: &Global, fixtures: bool, lemma: bool, erratum: bool) -> Out {
    let m = load_model(global, None)?;
    let fm = FourierMukai::new(&m);
    if !(fixtures || lemma || erratum) {
        let st = selftest(&m, global.seed, global.trials)?;
        let mut out = line(st.to_json());
        out += &line(
            "note: f(1) is implemented as −μ̂ − Θ; the printed value −μ̂ − Θ + ŵ contradicts the \
             rank/c1/ch2 table (see selftest --erratum)",
        );
        return if st.all_pass() {
            Ok(out)
        } else {
            Err(Failure {
                code: EXIT_PRECONDITION,
                message: "self-test failed".into(),
                stdout: Some(out),
            })
        };
    }

    let mut out = String::new();
    let mut ok = true;
    if fixtures {
        for l in fixture_lines(&fm)? {
            ok &= serde_json::from_str::<Value>(&l).ok().and_then(|v| v["pass"].as_bool()) == Some(true);
            out += &line(l);
        }
    }
    if lemma {
        let rows = lemma_table(&fm)?;
        ok &= rows.iter().all(|r| r.status != mukai_k3::report::LemmaStatus::Fail);
        if global.json {
            let v: Vec<Value> = rows
                .iter()
                .map(|r| json!({"item": r.item, "statement": r.statement, "status": r.status.as_str()}))
                .collect();
            out += &line(Value::Array(v));
        } else {
            out += &render_lemma_table(&rows);
        }
    }
    if erratum {
        out += &erratum_report(&m)?;
    }
    if ok {
        Ok(out)
    } else {
        Err(Failure {
            code: EXIT_PRECONDITION,
            message: "self-test failed".into(),
            stdout: Some(out),
        })
    }
}
