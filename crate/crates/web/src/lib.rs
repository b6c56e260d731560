//! Browser bindings: the brane dictionary, the Riemann-Roch transform of a
//! Chern character, and the BPS mass. Every export returns a JSON string,
//! either the result or `{"error": ...}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use mukai_k3::fm::{brane_map, Direction, FourierMukai, Wit};
use mukai_k3::io::{class_to_value, parse_class, parse_complex_vector, parse_tuple};
use mukai_k3::mirror::{bps_mass, standard_period, validate_period};
use mukai_k3::{BuildOptions, Error, FiberConfig, K3Model, Side};

const I3_MODEL: &str = include_str!("../../../data/i3.json");

fn model(name: &str) -> Result<K3Model, Error> {
    match name {
        "i3" => K3Model::build(&FiberConfig::from_json(I3_MODEL)?, BuildOptions::default()),
        _ => Ok(K3Model::nodal24()),
    }
}

fn respond(result: Result<Value, Error>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({"error": e.to_string()}).to_string(),
    }
}

/// `r,a,b,c` ↦ `a − rΘ + cμ̂ − bŵ` with its brane annotation.
#[wasm_bindgen]
pub fn brane(tuple: &str) -> String {
    respond((|| {
        let t = parse_tuple(tuple)?;
        let ints = t
            .iter()
            .map(|x| x.to_integer().ok_or_else(|| Error::NotIntegral(x.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let img = brane_map(&ints[0], &ints[1], &ints[2], &ints[3]);
        let image: Vec<String> = img.image.iter().map(ToString::to_string).collect();
        Ok(json!({
            "image": image,
            "rendered": img.render(&K3Model::nodal24()),
            "annotation": img.annotation,
        }))
    })())
}

/// Character of the transform of a WIT sheaf; `ch` is `r,a,b,c` or class JSON.
#[wasm_bindgen]
pub fn transform(model_name: &str, ch: &str, wit: u8, direction: &str) -> String {
    respond((|| {
        let m = model(model_name)?;
        let wit = Wit::try_from(wit)?;
        let dir: Direction = direction.parse()?;
        let x = parse_class(&m, ch)?;
        let y = FourierMukai::new(&m).transform_wit(&x, wit, dir)?;
        Ok(json!({
            "source": m.render(&x, dir.source()),
            "rendered": m.render(&y, dir.target()),
            "class": class_to_value(&m, &y, dir.target()),
            "transform_wit": wit.dual().index(),
        }))
    })())
}

/// BPS mass of `gamma`; an empty `period` means `(τ₁+τ₂) + i(τ₃+τ₄)`.
#[wasm_bindgen]
pub fn mass(model_name: &str, gamma: &str, period: &str) -> String {
    respond((|| {
        let m = model(model_name)?;
        let p = if period.trim().is_empty() {
            standard_period(&m)?
        } else {
            validate_period(parse_complex_vector(&m, period)?, &m)?
        };
        let g = parse_class(&m, gamma)?;
        let b = bps_mass(&m, &g, &p)?;
        Ok(json!({
            "gamma": m.render(&g, Side::X),
            "mass_squared": b.mass_squared.to_string(),
            "decimal": b.decimal,
        }))
    })())
}
