//! Parametric curve families and the experiment catalog.
//!
//! Five families share the parameters `v1` (offset), `v2` (scale), `s`
//! (shape), `d1` (inner slope) and `d2` (inner offset). With `z = d1*x + d2`:
//!
//! | family    | f(x)                                   |
//! |-----------|----------------------------------------|
//! | Logistic  | `v1 + v2 / (1 + s*e^z)^(1/s)`          |
//! | Gompertz  | `v1 + v2 * e^(s*e^z)`                  |
//! | Weibull   | `v1 + v2 * e^(-z^s)`                   |
//! | Arctan    | `v1 + v2 * atan(z)` (no shape)         |
//! | Algebraic | `v1 + v2 / (d1*x^s + d2)^(1/s)`        |

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{KnotError, Result};
use crate::quadrature;

/// A twice-differentiable univariate function with a definite integral.
///
/// Every method returns [`KnotError::Domain`] when the formula has no finite
/// value at the requested point.
pub trait SmoothCurve {
    fn eval(&self, x: f64) -> Result<f64>;
    fn deriv1(&self, x: f64) -> Result<f64>;
    fn deriv2(&self, x: f64) -> Result<f64>;

    /// `∫_lo^hi f(x) dx` by adaptive quadrature.
    fn integrate(&self, lo: f64, hi: f64) -> Result<f64> {
        quadrature::integrate(|x| self.eval(x), lo, hi)
    }
}

impl<T: SmoothCurve + ?Sized> SmoothCurve for &T {
    fn eval(&self, x: f64) -> Result<f64> {
        (**self).eval(x)
    }
    fn deriv1(&self, x: f64) -> Result<f64> {
        (**self).deriv1(x)
    }
    fn deriv2(&self, x: f64) -> Result<f64> {
        (**self).deriv2(x)
    }
    fn integrate(&self, lo: f64, hi: f64) -> Result<f64> {
        (**self).integrate(lo, hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Logistic,
    Gompertz,
    Weibull,
    Arctan,
    Algebraic,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Logistic => "Logistic",
            Family::Gompertz => "Gompertz",
            Family::Weibull => "Weibull",
            Family::Arctan => "Arctan",
            Family::Algebraic => "Algebraic",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = KnotError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "logistic" => Ok(Family::Logistic),
            "gompertz" => Ok(Family::Gompertz),
            "weibull" => Ok(Family::Weibull),
            "arctan" | "arctangent" => Ok(Family::Arctan),
            "algebraic" => Ok(Family::Algebraic),
            other => Err(KnotError::InvalidCurve(format!(
                "unknown curve type `{other}`"
            ))),
        }
    }
}

/// One member of a parametric family. Immutable once built.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    family: Family,
    v1: f64,
    v2: f64,
    s: Option<f64>,
    d1: f64,
    d2: f64,
}

impl Curve {
    /// Arctan takes no shape parameter; every other family requires one.
    pub fn new(family: Family, v1: f64, v2: f64, s: Option<f64>, d1: f64, d2: f64) -> Result<Self> {
        for (name, v) in [("v1", v1), ("v2", v2), ("d1", d1), ("d2", d2)] {
            if !v.is_finite() {
                return Err(KnotError::InvalidCurve(format!(
                    "{name} = {v} is not finite"
                )));
            }
        }
        match (family, s) {
            (Family::Arctan, Some(_)) => {
                return Err(KnotError::InvalidCurve(
                    "Arctan takes no shape parameter s".into(),
                ))
            }
            (Family::Arctan, None) => {}
            (_, None) => {
                return Err(KnotError::InvalidCurve(format!(
                    "{family} requires a shape parameter s"
                )))
            }
            (_, Some(s)) if !s.is_finite() || s == 0.0 => {
                return Err(KnotError::InvalidCurve(format!(
                    "shape s = {s} must be finite and nonzero"
                )))
            }
            _ => {}
        }
        Ok(Self {
            family,
            v1,
            v2,
            s,
            d1,
            d2,
        })
    }

    pub fn logistic(v1: f64, v2: f64, s: f64, d1: f64, d2: f64) -> Result<Self> {
        Self::new(Family::Logistic, v1, v2, Some(s), d1, d2)
    }

    pub fn gompertz(v1: f64, v2: f64, s: f64, d1: f64, d2: f64) -> Result<Self> {
        Self::new(Family::Gompertz, v1, v2, Some(s), d1, d2)
    }

    pub fn weibull(v1: f64, v2: f64, s: f64, d1: f64, d2: f64) -> Result<Self> {
        Self::new(Family::Weibull, v1, v2, Some(s), d1, d2)
    }

    pub fn arctan(v1: f64, v2: f64, d1: f64, d2: f64) -> Result<Self> {
        Self::new(Family::Arctan, v1, v2, None, d1, d2)
    }

    pub fn algebraic(v1: f64, v2: f64, s: f64, d1: f64, d2: f64) -> Result<Self> {
        Self::new(Family::Algebraic, v1, v2, Some(s), d1, d2)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> (f64, f64, Option<f64>, f64, f64) {
        (self.v1, self.v2, self.s, self.d1, self.d2)
    }

    fn shape(&self) -> f64 {
        self.s.unwrap_or(1.0)
    }

    fn checked(&self, what: &str, x: f64, v: f64) -> Result<f64> {
        if v.is_finite() {
            Ok(v)
        } else {
            Err(KnotError::Domain {
                what: format!("{} {what}", self.family),
                x,
            })
        }
    }

    /// Returns `(f, f', f'')` at `x` without the finiteness check.
    fn raw(&self, x: f64) -> (f64, f64, f64) {
        let Curve { v1, v2, d1, d2, .. } = *self;
        let s = self.shape();
        let z = d1 * x + d2;
        match self.family {
            Family::Logistic => {
                let e = z.exp();
                let u = 1.0 + s * e;
                let p = -1.0 / s;
                let f = v1 + v2 * u.powf(p);
                let f1 = -v2 * d1 * e * u.powf(p - 1.0);
                let f2 = -v2 * d1 * d1 * e * u.powf(p - 2.0) * (1.0 - e);
                (f, f1, f2)
            }
            Family::Gompertz => {
                let e = z.exp();
                let g = (s * e).exp();
                let f = v1 + v2 * g;
                let f1 = v2 * g * s * e * d1;
                let f2 = v2 * d1 * d1 * s * e * g * (1.0 + s * e);
                (f, f1, f2)
            }
            Family::Weibull => {
                let zs = z.powf(s);
                let g = (-zs).exp();
                let f = v1 + v2 * g;
                let f1 = -v2 * g * s * z.powf(s - 1.0) * d1;
                let f2 = v2
                    * d1
                    * d1
                    * g
                    * (s * s * z.powf(2.0 * s - 2.0) - s * (s - 1.0) * z.powf(s - 2.0));
                (f, f1, f2)
            }
            Family::Arctan => {
                let q = 1.0 + z * z;
                (
                    v1 + v2 * z.atan(),
                    v2 * d1 / q,
                    -2.0 * v2 * d1 * d1 * z / (q * q),
                )
            }
            Family::Algebraic => {
                let u = d1 * x.powf(s) + d2;
                let p = -1.0 / s;
                let f = v1 + v2 * u.powf(p);
                let f1 = -v2 * d1 * x.powf(s - 1.0) * u.powf(p - 1.0);
                let f2 = -v2
                    * d1
                    * u.powf(p - 2.0)
                    * ((s - 1.0) * x.powf(s - 2.0) * u - (1.0 + s) * d1 * x.powf(2.0 * s - 2.0));
                (f, f1, f2)
            }
        }
    }
}

impl SmoothCurve for Curve {
    fn eval(&self, x: f64) -> Result<f64> {
        self.checked("value", x, self.raw(x).0)
    }

    fn deriv1(&self, x: f64) -> Result<f64> {
        self.checked("first derivative", x, self.raw(x).1)
    }

    fn deriv2(&self, x: f64) -> Result<f64> {
        self.checked("second derivative", x, self.raw(x).2)
    }
}

/// `f(x) = c2*x² + c1*x + c0`. Mostly useful as a reference curve: for
/// `c2 < 0` the area-gap optimum is the evenly spaced knot vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quadratic {
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl Quadratic {
    pub fn new(c2: f64, c1: f64, c0: f64) -> Self {
        Self { c2, c1, c0 }
    }
}

impl SmoothCurve for Quadratic {
    fn eval(&self, x: f64) -> Result<f64> {
        Ok((self.c2 * x + self.c1) * x + self.c0)
    }
    fn deriv1(&self, x: f64) -> Result<f64> {
        Ok(2.0 * self.c2 * x + self.c1)
    }
    fn deriv2(&self, _x: f64) -> Result<f64> {
        Ok(2.0 * self.c2)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub curve: Curve,
    pub concave: bool,
    pub a: f64,
    pub b: f64,
}

/// Ordered list of named curves with their intervals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

const DEFAULT_CATALOG: &str = include_str!("../data/catalog.csv");

#[derive(Debug, Deserialize)]
struct CatalogRecord {
    name: String,
    #[serde(rename = "type")]
    family: String,
    v1: f64,
    v2: f64,
    s: String,
    d1: f64,
    d2: f64,
    concave: String,
    a: f64,
    b: f64,
}

impl Catalog {
    pub fn new(entries: Vec<CatalogEntry>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for e in &entries {
            if e.a.partial_cmp(&e.b) != Some(std::cmp::Ordering::Less) {
                return Err(KnotError::Catalog(format!(
                    "{}: need a < b, got [{}, {}]",
                    e.name, e.a, e.b
                )));
            }
            if !seen.insert(e.name.as_str()) {
                return Err(KnotError::Catalog(format!(
                    "duplicate curve name `{}`",
                    e.name
                )));
            }
        }
        Ok(Self { entries })
    }

    /// The 20-curve experiment table shipped with the crate.
    pub fn builtin() -> Self {
        Self::from_csv_str(DEFAULT_CATALOG).expect("bundled catalog parses")
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_csv_str(&text)
    }

    /// Columns: `name,type,v1,v2,s,d1,d2,concave,a,b`; `s` is `-` for Arctan,
    /// `concave` is `Y` or `N`.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut entries = Vec::new();
        for rec in reader.deserialize::<CatalogRecord>() {
            let rec = rec?;
            let family: Family = rec.family.parse()?;
            let s = match rec.s.as_str() {
                "-" | "" => None,
                v => Some(v.parse::<f64>().map_err(|e| {
                    KnotError::Catalog(format!("{}: bad shape `{v}`: {e}", rec.name))
                })?),
            };
            let concave = match rec.concave.to_ascii_uppercase().as_str() {
                "Y" | "YES" | "TRUE" => true,
                "N" | "NO" | "FALSE" => false,
                other => {
                    return Err(KnotError::Catalog(format!(
                        "{}: bad concave flag `{other}`",
                        rec.name
                    )))
                }
            };
            let curve = Curve::new(family, rec.v1, rec.v2, s, rec.d1, rec.d2)
                .map_err(|e| KnotError::Catalog(format!("{}: {e}", rec.name)))?;
            entries.push(CatalogEntry {
                name: rec.name,
                curve,
                concave,
                a: rec.a,
                b: rec.b,
            });
        }
        Self::new(entries)
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
