//! JSON instance files.
//!
//! ```json
//! {
//!   "n": 3, "p": 1, "q": 1,
//!   "factors": [[[["1", "0"], ["0", "0"], ["0", "0"]], ...]],
//!   "M": [[...]],
//!   "A": [[...]],
//!   "t_values": ["1", "1/10", "1/100"]
//! }
//! ```
//!
//! Matrix entries are `[re, im]` pairs (a bare value means `im = 0`). Parts
//! are JSON numbers or strings; strings such as `"3/4"`, `"-2"` or `"0.25"`
//! are read as exact rationals, JSON integers are exact, and any other JSON
//! number is float-only.

use std::fmt;
use std::path::Path;

use num_complex::Complex;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::exterior::HermitianForm;
use crate::linalg::Matrix;
use crate::scalar::{parse_rational, Complex64, Field, Mode, Scalar};
use crate::semismall::Stratification;

/// A named, located input problem. Always maps to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub location: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.location.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.location, self.message)
        }
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Part {
    Text(String),
    Number(serde_json::Number),
}

impl Part {
    fn exact(&self) -> Option<BigRational> {
        match self {
            Part::Text(s) => parse_rational(s),
            Part::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Some(BigRational::from_integer(i.into()))
                } else {
                    n.as_u64().map(|u| BigRational::from_integer(u.into()))
                }
            }
        }
    }

    fn float(&self) -> Option<f64> {
        match self {
            Part::Text(s) => s.trim().parse::<f64>().ok().or_else(|| {
                use num_traits::ToPrimitive;
                parse_rational(s).and_then(|r| r.to_f64())
            }),
            Part::Number(n) => n.as_f64(),
        }
    }

    /// Exact when possible; JSON non-integers become their exact binary value.
    fn rational(&self) -> Option<BigRational> {
        self.exact()
            .or_else(|| self.float().and_then(BigRational::from_float))
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Part::Text(s) => write!(f, "{s:?}"),
            Part::Number(n) => write!(f, "{n}"),
        }
    }
}

impl From<&str> for Part {
    fn from(s: &str) -> Self {
        Part::Text(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Pair([Part; 2]),
    Real(Part),
}

impl Entry {
    fn parts(&self) -> (Option<&Part>, Option<&Part>) {
        match self {
            Entry::Pair([re, im]) => (Some(re), Some(im)),
            Entry::Real(re) => (Some(re), None),
        }
    }

    fn to_scalar(&self, mode: Mode, location: &str) -> Result<Scalar, Diagnostic> {
        let (re, im) = self.parts();
        match mode {
            Mode::Exact => {
                let get = |p: Option<&Part>, which: &str| match p {
                    None => Ok(BigRational::from_integer(0.into())),
                    Some(p) => p.exact().ok_or_else(|| {
                        Diagnostic::new(
                            location,
                            format!("{which} part {p} is not an exact rational (use a string such as \"1/3\")"),
                        )
                    }),
                };
                Ok(Scalar::Exact(Complex::new(get(re, "real")?, get(im, "imaginary")?)))
            }
            Mode::Float => {
                let get = |p: Option<&Part>, which: &str| match p {
                    None => Ok(0.0),
                    Some(p) => p.float().ok_or_else(|| {
                        Diagnostic::new(location, format!("{which} part {p} is not a number"))
                    }),
                };
                Ok(Scalar::Float(Complex64::new(get(re, "real")?, get(im, "imaginary")?)))
            }
        }
    }

    fn is_exact(&self) -> bool {
        let (re, im) = self.parts();
        re.is_none_or(|p| p.exact().is_some()) && im.is_none_or(|p| p.exact().is_some())
    }

    pub fn from_scalar(s: &Scalar) -> Entry {
        match s {
            Scalar::Exact(z) => Entry::Pair([
                Part::Text(z.re.to_string()),
                Part::Text(z.im.to_string()),
            ]),
            Scalar::Float(z) => Entry::Pair([
                Part::Number(number_from_f64(z.re).unwrap_or(0.into())),
                Part::Number(number_from_f64(z.im).unwrap_or(0.into())),
            ]),
        }
    }
}

pub type RawMatrix = Vec<Vec<Entry>>;

/// JSON number for a finite float.
pub fn number_from_f64(f: f64) -> Option<serde_json::Number> {
    serde_json::Number::from_f64(f)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub n: usize,
    #[serde(default)]
    pub p: usize,
    #[serde(default)]
    pub q: usize,
    #[serde(default)]
    pub factors: Vec<RawMatrix>,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub m: Option<RawMatrix>,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<RawMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_values: Option<Vec<Part>>,
}

/// An instance converted to one arithmetic mode.
#[derive(Debug, Clone)]
pub struct TypedInstance<F> {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub factors: Vec<HermitianForm<F>>,
    pub m: Option<HermitianForm<F>>,
    pub a: Option<HermitianForm<F>>,
    pub t_values: Option<Vec<BigRational>>,
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, Diagnostic> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Diagnostic::new(if path == "." { String::new() } else { path }, e.into_inner().to_string())
    })
}

pub fn read_file(path: &Path) -> Result<String, Diagnostic> {
    std::fs::read_to_string(path)
        .map_err(|e| Diagnostic::new(path.display().to_string(), e.to_string()))
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, Diagnostic> {
        parse_json(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    fn matrices(&self) -> impl Iterator<Item = (String, &RawMatrix)> {
        self.factors
            .iter()
            .enumerate()
            .map(|(k, m)| (format!("factors[{k}]"), m))
            .chain(self.m.iter().map(|m| ("M".to_string(), m)))
            .chain(self.a.iter().map(|m| ("A".to_string(), m)))
    }

    /// Whether every entry (and every `t` value) reads as an exact rational.
    pub fn exact_capable(&self) -> bool {
        self.matrices()
            .all(|(_, m)| m.iter().flatten().all(Entry::is_exact))
            && self
                .t_values
                .iter()
                .flatten()
                .all(|t| t.exact().is_some())
    }

    /// Requested mode, else exact when possible.
    pub fn resolve_mode(&self, requested: Option<Mode>) -> Mode {
        requested.unwrap_or(if self.exact_capable() {
            Mode::Exact
        } else {
            Mode::Float
        })
    }

    pub fn typed<F: Field>(&self) -> Result<TypedInstance<F>, Diagnostic> {
        if self.n == 0 {
            return Err(Diagnostic::new("n", "dimension must be positive"));
        }
        let convert = |name: &str, raw: &RawMatrix| -> Result<HermitianForm<F>, Diagnostic> {
            if raw.len() != self.n {
                return Err(Diagnostic::new(
                    name,
                    format!("matrix has {} rows, expected n = {}", raw.len(), self.n),
                ));
            }
            let mut rows = Vec::with_capacity(self.n);
            for (r, row) in raw.iter().enumerate() {
                if row.len() != self.n {
                    return Err(Diagnostic::new(
                        format!("{name}[{r}]"),
                        format!("row has {} entries, expected n = {}", row.len(), self.n),
                    ));
                }
                let mut out = Vec::with_capacity(self.n);
                for (c, e) in row.iter().enumerate() {
                    let loc = format!("{name}[{r}][{c}]");
                    let s = e.to_scalar(F::MODE, &loc)?;
                    out.push(F::from_scalar(&s).map_err(|e| Diagnostic::new(&loc, e.to_string()))?);
                }
                rows.push(out);
            }
            let matrix = Matrix::from_rows(rows).expect("rows checked");
            HermitianForm::new(matrix).map_err(|e| Diagnostic::new(name, e.to_string()))
        };
        let factors = self
            .factors
            .iter()
            .enumerate()
            .map(|(k, m)| convert(&format!("factors[{k}]"), m))
            .collect::<Result<Vec<_>, _>>()?;
        let m = self.m.as_ref().map(|m| convert("M", m)).transpose()?;
        let a = self.a.as_ref().map(|m| convert("A", m)).transpose()?;
        let t_values = self
            .t_values
            .as_ref()
            .map(|ts| {
                ts.iter()
                    .enumerate()
                    .map(|(k, t)| {
                        t.rational().ok_or_else(|| {
                            Diagnostic::new(format!("t_values[{k}]"), format!("{t} is not a number"))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        Ok(TypedInstance {
            n: self.n,
            p: self.p,
            q: self.q,
            factors,
            m,
            a,
            t_values,
        })
    }

    /// Emits an instance from typed data.
    pub fn from_forms<F: Field>(
        n: usize,
        p: usize,
        q: usize,
        factors: &[HermitianForm<F>],
        m: Option<&HermitianForm<F>>,
    ) -> InstanceFile {
        let raw = |f: &HermitianForm<F>| -> RawMatrix {
            f.matrix()
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|x| Entry::from_scalar(&x.to_scalar())).collect())
                .collect()
        };
        InstanceFile {
            description: None,
            n,
            p,
            q,
            factors: factors.iter().map(raw).collect(),
            m: m.map(raw),
            a: None,
            t_values: None,
        }
    }
}

/// Stratification file: `{"dim_X": 2, "dim_Y": 2, "strata": [[0, 2], [1, 0]]}`
/// where each stratum is `[fiber_dim, stratum_dim]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratificationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(rename = "dim_X")]
    pub dim_x: usize,
    #[serde(rename = "dim_Y")]
    pub dim_y: usize,
    pub strata: Vec<[usize; 2]>,
}

impl StratificationFile {
    pub fn parse(text: &str) -> Result<Self, Diagnostic> {
        parse_json(text)
    }

    pub fn to_stratification(&self) -> Stratification {
        let pairs: Vec<(usize, usize)> = self.strata.iter().map(|s| (s[0], s[1])).collect();
        Stratification::new(self.dim_x, self.dim_y, &pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gaussian, GaussianRational};

    const ID2: &str = r#"{"n": 2, "p": 0, "q": 0,
        "factors": [[[["1","0"],["0","0"]],[["0","0"],["0","0"]]],
                    [[["0","0"],["0","0"]],[["0","0"],["1","0"]]]]}"#;

    #[test]
    fn parses_exact_instance() {
        let inst = InstanceFile::parse(ID2).unwrap();
        assert!(inst.exact_capable());
        assert_eq!(inst.resolve_mode(None), Mode::Exact);
        let t = inst.typed::<GaussianRational>().unwrap();
        assert_eq!(t.factors.len(), 2);
        assert_eq!(t.factors[1].matrix()[(1, 1)], gaussian(1, 0));
    }

    #[test]
    fn float_entries_select_float_mode() {
        let inst = InstanceFile::parse(r#"{"n": 1, "factors": [[[[0.5, 0]]]]}"#).unwrap();
        assert!(!inst.exact_capable());
        assert_eq!(inst.resolve_mode(None), Mode::Float);
        assert!(inst.typed::<GaussianRational>().is_err());
        let t = inst.typed::<Complex64>().unwrap();
        assert_eq!(t.factors[0].matrix()[(0, 0)], Complex64::new(0.5, 0.0));
    }

    #[test]
    fn malformed_matrix_names_the_field() {
        let text = r#"{"n": 3, "p": 1, "q": 1,
            "factors": [[["1","0"],["0","1"],["0","0"]]]}"#;
        let inst = InstanceFile::parse(text).unwrap();
        let err = inst.typed::<GaussianRational>().unwrap_err();
        assert!(err.location.starts_with("factors[0]"), "{err}");
    }

    #[test]
    fn non_hermitian_is_a_diagnostic() {
        let text = r#"{"n": 2, "factors": [[["1","2"],["3","1"]]]}"#;
        let err = InstanceFile::parse(text).unwrap().typed::<GaussianRational>().unwrap_err();
        assert_eq!(err.location, "factors[0]");
    }

    #[test]
    fn unknown_fields_and_types_are_located() {
        let err = InstanceFile::parse(r#"{"n": 2, "factorz": []}"#).unwrap_err();
        assert!(err.message.contains("factorz"));
        let err = InstanceFile::parse(r#"{"n": "two"}"#).unwrap_err();
        assert_eq!(err.location, "n");
    }

    #[test]
    fn emit_then_parse_round_trips() {
        let inst = InstanceFile::parse(ID2).unwrap();
        assert_eq!(InstanceFile::parse(&inst.to_json()).unwrap(), inst);
        let t = inst.typed::<GaussianRational>().unwrap();
        let emitted = InstanceFile::from_forms(2, 0, 0, &t.factors, None);
        let back = InstanceFile::parse(&emitted.to_json()).unwrap().typed::<GaussianRational>().unwrap();
        assert_eq!(back.factors, t.factors);
    }
}
