#![allow(dead_code)]

use std::collections::BTreeMap;

use pdm_slater::{Constants, FieldSpec, PDMModel, Position, SpaceDim};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub struct Sample {
    pub model: PDMModel,
    pub point: Position,
    pub beta: f64,
}

fn sum_of(d: usize, term: impl Fn(usize) -> String) -> String {
    (1..=d).map(term).collect::<Vec<_>>().join(" + ")
}

/// Smooth, strictly positive mass ratio and a confining potential with
/// random wiggles, evaluated at a random point near the origin.
pub fn random_sample(rng: &mut ChaCha8Rng, d: usize) -> Sample {
    let mut fp = BTreeMap::new();
    fp.insert("a".to_string(), rng.gen_range(0.5..2.0));
    fp.insert("b".to_string(), rng.gen_range(-0.3..0.3));
    fp.insert("c".to_string(), rng.gen_range(0.0..0.3));
    fp.insert("p".to_string(), rng.gen_range(-3.0..3.0));
    fp.insert("s".to_string(), rng.gen_range(0.5..3.0));
    for i in 1..=d {
        fp.insert(format!("k{i}"), rng.gen_range(-1.0..1.0));
    }
    let wave = sum_of(d, |i| format!("k{i}*x{i}"));
    let r2 = sum_of(d, |i| format!("x{i}^2"));
    let f_text = format!("a*(1 + b*sin({wave} + p) + c*exp(-({r2})/s))");

    let mut up = BTreeMap::new();
    up.insert("om".to_string(), rng.gen_range(0.2..1.5));
    up.insert("e".to_string(), rng.gen_range(-0.5..0.5));
    up.insert("g".to_string(), rng.gen_range(-0.5..0.5));
    up.insert("r".to_string(), rng.gen_range(-3.0..3.0));
    for i in 1..=d {
        up.insert(format!("q{i}"), rng.gen_range(-1.0..1.0));
    }
    let cwave = sum_of(d, |i| format!("q{i}*x{i}"));
    let u_text = format!("om*({r2})/2 + e*cos({cwave} + r) + g*x1");

    let constants = Constants::new(rng.gen_range(0.5..1.5), rng.gen_range(0.5..2.0)).unwrap();
    let model = PDMModel::new(
        FieldSpec::expression(&f_text, fp).unwrap(),
        FieldSpec::expression(&u_text, up).unwrap(),
        SpaceDim::new(d).unwrap(),
        constants,
    )
    .unwrap();
    let point = Position::new((0..d).map(|_| rng.gen_range(-1.5..1.5)).collect()).unwrap();
    Sample { model, point, beta: rng.gen_range(0.3..2.0) }
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}
