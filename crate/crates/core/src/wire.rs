//! Text formats shared by the CLI and the test suite: the "a+bi" complex
//! literal, 17-significant-digit CSV floats, and the JSON records for each
//! query type. JSON objects serialize with sorted keys, so equal inputs give
//! byte-identical output.

use crate::blaschke::{DynamicsClass, JuliaClass};
use crate::degree2::ConjugacyWitness;
use crate::moebius::MoebiusMap;
use crate::unicritical::MembershipResult;
use crate::{Error, Result};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

/// Parses "a+bi" / "a-bi", pure-imaginary forms like "0.5i" / "-i", and bare
/// reals like "0.25". Exponent notation is allowed in either part.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let fail = || Error::Parse(format!("invalid complex literal '{text}'"));
    let t = text.trim();
    if t.is_empty() {
        return Err(fail());
    }
    let z = match t.strip_suffix(['i', 'I']) {
        None => Complex64::new(t.parse().map_err(|_| fail())?, 0.0),
        Some(body) => {
            // the split sign is the last +/- that is not an exponent sign
            let bytes = body.as_bytes();
            let split = (1..bytes.len())
                .rev()
                .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
            let (re_text, im_text) = match split {
                Some(i) => body.split_at(i),
                None => ("", body),
            };
            let re = if re_text.is_empty() {
                0.0
            } else {
                re_text.parse().map_err(|_| fail())?
            };
            let im = match im_text {
                "" | "+" => 1.0,
                "-" => -1.0,
                _ => im_text.parse().map_err(|_| fail())?,
            };
            Complex64::new(re, im)
        }
    };
    if z.is_finite() {
        Ok(z)
    } else {
        Err(fail())
    }
}

/// Shortest round-trip "a+bi" form; negative zero components print as 0.
/// Shortest decimal that reads back to the same f64. Magnitudes outside the
/// positional comfort zone switch to exponent notation, which `{}` never
/// does on its own: a 1e-60 rounding tail should print as such, not as sixty
/// zeros.
fn format_component(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    let magnitude = x.abs();
    if magnitude != 0.0 && (magnitude < 1e-7 || magnitude >= 1e17) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

pub fn format_complex(z: Complex64) -> String {
    let re = format_component(z.re);
    if z.im < 0.0 {
        format!("{re}-{}i", format_component(-z.im))
    } else {
        format!("{re}+{}i", format_component(z.im))
    }
}

/// 17 significant digits in scientific notation, enough to round-trip f64.
pub fn format_float17(x: f64) -> String {
    format!("{x:.16e}")
}

/// One CSV row of 17-digit floats.
pub fn csv_row(fields: &[f64]) -> String {
    fields
        .iter()
        .map(|&x| format_float17(x))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn dynamics_json(class: &DynamicsClass) -> Value {
    json!({
        "kind": class.kind.as_str(),
        "dw_point": format_complex(class.dw_point),
        "multiplier": format_complex(class.multiplier),
    })
}

pub fn membership_json(member: &MembershipResult) -> Value {
    json!({
        "region": member.region.as_str(),
        "boundary_theta": member.boundary_theta,
    })
}

/// Dynamics and membership merged into one flat record.
pub fn classify_json(class: &DynamicsClass, member: &MembershipResult) -> Value {
    let mut merged = Map::new();
    for source in [dynamics_json(class), membership_json(member)] {
        if let Value::Object(fields) = source {
            merged.extend(fields);
        }
    }
    Value::Object(merged)
}

/// Dynamics record extended with the Julia verdict.
pub fn julia_json(class: &DynamicsClass, julia: &JuliaClass) -> Value {
    let mut record = dynamics_json(class);
    if let Value::Object(fields) = &mut record {
        fields.insert("julia".into(), json!(julia.kind.as_str()));
        fields.insert(
            "second_derivative".into(),
            json!(julia.second_derivative.map(format_complex)),
        );
    }
    record
}

fn moebius_json(map: &MoebiusMap) -> Value {
    json!({
        "a": format_complex(map.a),
        "b": format_complex(map.b),
        "c": format_complex(map.c),
        "d": format_complex(map.d),
    })
}

/// The full degree-2 record: zeros, critical point, invariant, kind, and the
/// conjugating map with its residual.
pub fn degree2_json(
    u: Complex64,
    w: Complex64,
    critical: Complex64,
    witness: &ConjugacyWitness,
    kind: &str,
) -> Value {
    json!({
        "u": format_complex(u),
        "w": format_complex(w),
        "c": format_complex(critical),
        "lambda": format_complex(witness.lambda),
        "kind": kind,
        "conjugator": moebius_json(&witness.map),
        "residual": witness.residual,
    })
}

/// Machine-readable error diagnostic with a stable code.
pub fn diagnostic_json(err: &Error) -> Value {
    json!({
        "code": err.code(),
        "message": err.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parses_the_documented_forms() {
        assert_eq!(parse_complex("0.25").unwrap(), c(0.25, 0.0));
        assert_eq!(parse_complex("-0.2+0.1i").unwrap(), c(-0.2, 0.1));
        assert_eq!(parse_complex("0.5-0.3i").unwrap(), c(0.5, -0.3));
        assert_eq!(parse_complex("0.5i").unwrap(), c(0.0, 0.5));
        assert_eq!(parse_complex("-0.5i").unwrap(), c(0.0, -0.5));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1+i").unwrap(), c(1.0, 1.0));
        assert_eq!(parse_complex(" -1 ").unwrap(), c(-1.0, 0.0));
        assert_eq!(parse_complex("1e-3+2e-4i").unwrap(), c(1e-3, 2e-4));
        assert_eq!(parse_complex("1e-3i").unwrap(), c(0.0, 1e-3));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1+2j", "1++2i", "inf", "nan+1i", "1e", "--1"] {
            let err = parse_complex(bad).unwrap_err();
            assert_eq!(err.code(), "parse", "accepted {bad:?}");
        }
    }

    #[test]
    fn format_round_trips() {
        let values = [
            c(0.0, 0.0),
            c(-0.0, 0.0),
            c(2.0 / 3.0, 0.0),
            c(1e-17, -3.25),
            c(-0.1, 0.1),
        ];
        for z in values {
            let text = format_complex(z);
            let back = parse_complex(&text).unwrap();
            assert_eq!(back.re.abs(), z.re.abs());
            assert_eq!(back.im.abs(), z.im.abs());
            assert!(!text.contains("-0i") && !text.starts_with("-0+"));
        }
        assert_eq!(format_complex(c(0.0, -0.0)), "0+0i");
        assert_eq!(format_complex(c(0.5, -0.25)), "0.5-0.25i");
    }

    #[test]
    fn extreme_magnitudes_use_exponent_notation() {
        assert_eq!(format_complex(c(1.0, 7.839540730899252e-62)), "1+7.839540730899252e-62i");
        assert_eq!(format_complex(c(-2.5e-8, 1.0)), "-2.5e-8+1i");
        assert_eq!(format_complex(c(3e17, 0.0)), "3e17+0i");
        // the positional comfort zone is untouched
        assert_eq!(format_complex(c(0.0, 2.8282150169572223e-6)), "0+0.0000028282150169572223i");
        for z in [c(1.0, 7.839540730899252e-62), c(-2.5e-8, 3e17)] {
            assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
        }
    }

    #[test]
    fn seventeen_digit_floats() {
        assert_eq!(format_float17(1.0), "1.0000000000000000e0");
        assert_eq!(format_float17(-1.0 / 3.0), "-3.3333333333333331e-1");
        assert_eq!(csv_row(&[0.0, 0.5]), "0.0000000000000000e0,5.0000000000000000e-1");
        let x = 0.1 + 0.2;
        assert_eq!(format_float17(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn json_keys_are_sorted() {
        let class = DynamicsClass {
            kind: crate::blaschke::DynamicsKind::Elliptic,
            dw_point: Complex64::ZERO,
            multiplier: Complex64::ZERO,
        };
        let text = dynamics_json(&class).to_string();
        assert_eq!(
            text,
            r#"{"dw_point":"0+0i","kind":"elliptic","multiplier":"0+0i"}"#
        );
    }
}
