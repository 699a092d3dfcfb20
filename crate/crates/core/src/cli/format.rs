//! JSON file formats: point sets and result bundles.
//!
//! A coordinate is written as `[numerator, denominator]`, each part a JSON
//! integer when it fits in 64 bits and a digit string otherwise. Readers also
//! accept a plain integer or a decimal string such as `"-1.25"` or `"7/3"`.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::compat::{Construction, RadiusCheck, ResultData, SetData};
use crate::geom::{Point, PointSet};
use crate::rational::{parse_rational, round_dyadic, Rational};

pub const POINTSET_VERSION: &str = "pointset/1";
pub const BUNDLE_VERSION: &str = "bundle/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{path}: {message}")]
    At { path: String, message: String },
}

fn at(path: impl Into<String>, message: impl ToString) -> FormatError {
    FormatError::At {
        path: path.into(),
        message: message.to_string(),
    }
}

fn integer_value(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => Value::from(i),
        None => Value::String(v.to_string()),
    }
}

pub fn coordinate_value(r: &Rational) -> Value {
    Value::Array(vec![integer_value(r.numer()), integer_value(r.denom())])
}

/// Decimal string with `places` fractional digits, rounded to nearest.
pub fn decimal_string(r: &Rational, places: u32) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), places as usize);
    let scaled = r * Rational::from_integer(scale.clone());
    let rounded = round_dyadic(&scaled, 0).to_integer();
    let negative = rounded < BigInt::zero();
    let digits = rounded.magnitude().to_string();
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{digits}");
    }
    let width = places as usize + 1;
    let padded = format!("{digits:0>width$}");
    let (whole, frac) = padded.split_at(padded.len() - places as usize);
    format!("{sign}{whole}.{frac}")
}

fn parse_integer_value(v: &Value, path: &str) -> Result<BigInt, FormatError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| at(path, "expected an integer")),
        Value::String(s) => s.trim().parse::<BigInt>().map_err(|_| at(path, format!("bad integer {s:?}"))),
        _ => Err(at(path, "expected an integer")),
    }
}

pub fn parse_coordinate(v: &Value, path: &str) -> Result<Rational, FormatError> {
    match v {
        Value::Array(parts) if parts.len() == 2 => {
            let num = parse_integer_value(&parts[0], &format!("{path}[0]"))?;
            let den = parse_integer_value(&parts[1], &format!("{path}[1]"))?;
            if den.is_zero() {
                return Err(at(path, "zero denominator"));
            }
            Ok(Rational::new(num, den))
        }
        Value::Number(_) => Ok(Rational::from_integer(parse_integer_value(v, path)?)),
        Value::String(s) => parse_rational(s).map_err(|e| at(path, e)),
        _ => Err(at(path, "expected [numerator, denominator], an integer or a decimal string")),
    }
}

fn point_value(p: &Point) -> Value {
    Value::Array(vec![coordinate_value(&p.x), coordinate_value(&p.y)])
}

fn parse_point(v: &Value, path: &str) -> Result<Point, FormatError> {
    match v {
        Value::Array(xy) if xy.len() == 2 => Ok(Point::new(
            parse_coordinate(&xy[0], &format!("{path}[0]"))?,
            parse_coordinate(&xy[1], &format!("{path}[1]"))?,
        )),
        _ => Err(at(path, "expected a coordinate pair")),
    }
}

fn parse_points(v: &Value, path: &str) -> Result<Vec<Point>, FormatError> {
    let items = v.as_array().ok_or_else(|| at(path, "expected an array of points"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, p)| parse_point(p, &format!("{path}[{i}]")))
        .collect()
}

fn get<'a>(obj: &'a Value, key: &str, path: &str) -> Result<&'a Value, FormatError> {
    obj.get(key).ok_or_else(|| at(path, format!("missing field {key:?}")))
}

fn check_version(doc: &Value, expected: &str) -> Result<(), FormatError> {
    match doc.get("version").and_then(Value::as_str) {
        Some(v) if v == expected => Ok(()),
        Some(v) => Err(at("version", format!("expected {expected:?}, found {v:?}"))),
        None => Err(at("version", "missing version tag")),
    }
}

fn parse_json(text: &str) -> Result<Value, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))
}

/// How point-set coordinates are written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoordinateStyle {
    #[default]
    Exact,
    /// Rounded decimal strings; the file is marked `"lossy": true`.
    Decimal { places: u32 },
}

pub fn pointset_to_json(points: &[Point], style: CoordinateStyle) -> String {
    let doc = match style {
        CoordinateStyle::Exact => serde_json::json!({
            "version": POINTSET_VERSION,
            "points": points.iter().map(point_value).collect::<Vec<_>>(),
        }),
        CoordinateStyle::Decimal { places } => serde_json::json!({
            "version": POINTSET_VERSION,
            "lossy": true,
            "points": points
                .iter()
                .map(|p| serde_json::json!([decimal_string(&p.x, places), decimal_string(&p.y, places)]))
                .collect::<Vec<_>>(),
        }),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
    text.push('\n');
    text
}

/// Parses a point-set file. Degenerate sets are reported against the first
/// offending point.
pub fn pointset_from_json(text: &str) -> Result<PointSet, FormatError> {
    let doc = parse_json(text)?;
    check_version(&doc, POINTSET_VERSION)?;
    let points = parse_points(get(&doc, "points", "")?, "points")?;
    PointSet::new(points).map_err(|e| at("points", e))
}

#[derive(Serialize, Deserialize)]
struct RawSet {
    points: Value,
    steiner: Vec<bool>,
    triangles: Vec<[usize; 3]>,
}

/// A result plus the radius check values computed when it was written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultBundle {
    pub data: ResultData,
    pub radius_checks: Vec<RadiusCheck>,
}

impl ResultBundle {
    pub fn new(data: ResultData) -> Self {
        let radius_checks = if data.construction.radius_bounded() {
            data.sets
                .iter()
                .map(|s| crate::compat::radius_check(s, &data.slack))
                .collect()
        } else {
            Vec::new()
        };
        ResultBundle { data, radius_checks }
    }

    pub fn to_json(&self) -> String {
        let d = &self.data;
        let sets: Vec<Value> = d
            .sets
            .iter()
            .map(|s| {
                serde_json::json!({
                    "points": s.points.iter().map(point_value).collect::<Vec<_>>(),
                    "steiner": s.steiner,
                    "triangles": s.triangles,
                })
            })
            .collect();
        let radius: Vec<Value> = self
            .radius_checks
            .iter()
            .map(|r| {
                serde_json::json!({
                    "center": point_value(&r.center),
                    "radius_squared": coordinate_value(&r.radius_squared),
                    "bound_squared": coordinate_value(&r.bound_squared),
                    "max_steiner_distance_squared": coordinate_value(&r.max_steiner_distance_squared),
                    "holds": r.holds(),
                })
            })
            .collect();
        let doc = serde_json::json!({
            "version": BUNDLE_VERSION,
            "construction": d.construction.name(),
            "mode": d.construction.mode(),
            "seed": d.seed,
            "slack": coordinate_value(&d.slack),
            "original_count": d.original_count,
            "steiner_count_per_set": d.steiner_count_per_set,
            "sets": sets,
            "bijections": d.bijections,
            "radius_checks": radius,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        let doc = parse_json(text)?;
        check_version(&doc, BUNDLE_VERSION)?;
        let usize_field = |key: &str| -> Result<usize, FormatError> {
            get(&doc, key, "")?
                .as_u64()
                .map(|v| v as usize)
                .ok_or_else(|| at(key, "expected a nonnegative integer"))
        };
        let mode = usize_field("mode")?;
        let construction = match get(&doc, "construction", "")?.as_str() {
            Some("two-steiner") => Construction::TwoSteiner,
            Some("dway") => Construction::DWay,
            Some("pair") => Construction::Pair {
                mode: u8::try_from(mode).map_err(|_| at("mode", "out of range"))?,
            },
            _ => return Err(at("construction", "expected \"pair\", \"dway\" or \"two-steiner\"")),
        };
        let seed = get(&doc, "seed", "")?
            .as_u64()
            .ok_or_else(|| at("seed", "expected a nonnegative integer"))?;
        let slack = parse_coordinate(get(&doc, "slack", "")?, "slack")?;
        let raw_sets: Vec<RawSet> =
            serde_json::from_value(get(&doc, "sets", "")?.clone()).map_err(|e| at("sets", e))?;
        let sets = raw_sets
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                Ok(SetData {
                    points: parse_points(&s.points, &format!("sets[{i}].points"))?,
                    steiner: s.steiner,
                    triangles: s.triangles,
                })
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        let bijections: Vec<Vec<usize>> =
            serde_json::from_value(get(&doc, "bijections", "")?.clone()).map_err(|e| at("bijections", e))?;
        let radius_checks = match doc.get("radius_checks").and_then(Value::as_array) {
            None => Vec::new(),
            Some(items) => items
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let path = format!("radius_checks[{i}]");
                    let field = |k: &str| parse_coordinate(get(r, k, &path)?, &format!("{path}.{k}"));
                    Ok(RadiusCheck {
                        center: parse_point(get(r, "center", &path)?, &format!("{path}.center"))?,
                        radius_squared: field("radius_squared")?,
                        bound_squared: field("bound_squared")?,
                        max_steiner_distance_squared: field("max_steiner_distance_squared")?,
                    })
                })
                .collect::<Result<_, FormatError>>()?,
        };
        Ok(ResultBundle {
            data: ResultData {
                construction,
                original_count: usize_field("original_count")?,
                seed,
                slack,
                steiner_count_per_set: usize_field("steiner_count_per_set")?,
                sets,
                bijections,
            },
            radius_checks,
        })
    }
}

/// Writes `contents` through a temporary file in the same directory and a
/// rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp-{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}
