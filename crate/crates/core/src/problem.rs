//! Problem files: JSON documents holding the two defining functions, the map
//! and analysis options, with polynomials written as strings.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{GaussRat, Subst, VarUniverse};
use crate::geometry::{translate_to_origin, validate_hypersurface, GeometryError, Hypersurface};
use crate::maps::{HoloMap, MapError};
use crate::parse::{parse_poly, parse_scalar, ParseError};
use crate::transversality::AnalysisOptions;
use crate::Poly;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<u32>,
    /// `text` or `json`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
}

impl ProblemOptions {
    fn is_empty(&self) -> bool {
        *self == ProblemOptions::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub n: usize,
    #[serde(rename = "N")]
    pub target_n: usize,
    /// `ρ` in `Z1..Z{n+1}, XI1..XI{n+1}`.
    pub source_rho: String,
    /// `ρ'` in `ZP1..ZP{N+1}, XIP1..XIP{N+1}`.
    pub target_rho: String,
    /// `N+1` components in `Z1..Z{n+1}`.
    pub map: Vec<String>,
    /// Point of `M` to analyse instead of the origin.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_point: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "ProblemOptions::is_empty")]
    pub options: ProblemOptions,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProblemError {
    Json(String),
    Parse { field: String, text: String, error: ParseError },
    Dimensions(String),
    Geometry { field: String, error: GeometryError },
    Map(MapError),
}

impl ProblemError {
    /// Malformed input as opposed to a well-formed but invalid problem.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, ProblemError::Json(_) | ProblemError::Parse { .. })
    }
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemError::Json(e) => write!(f, "invalid problem file: {e}"),
            ProblemError::Parse { field, text, error } => {
                let col = text[..error.offset().min(text.len())].chars().count();
                write!(f, "{field}: {error}\n  {text}\n  {}^", " ".repeat(col))
            }
            ProblemError::Dimensions(e) => write!(f, "{e}"),
            ProblemError::Geometry { field, error } => write!(f, "{field}: {error}"),
            ProblemError::Map(e) => write!(f, "map: {e}"),
        }
    }
}

impl std::error::Error for ProblemError {}

/// A validated instance, translated so that the base point is the origin.
#[derive(Clone, Debug)]
pub struct Problem {
    pub source: Hypersurface,
    pub target: Hypersurface,
    pub map: HoloMap,
    pub options: AnalysisOptions,
    pub format: Option<String>,
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, ProblemError> {
        serde_json::from_str(text).map_err(|e| ProblemError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem serializes")
    }

    pub fn load(&self) -> Result<Problem, ProblemError> {
        if self.map.len() != self.target_n + 1 {
            return Err(ProblemError::Dimensions(format!(
                "map has {} components, N + 1 = {}",
                self.map.len(),
                self.target_n + 1
            )));
        }
        let su = VarUniverse::source(self.n + 1);
        let tu = VarUniverse::target(self.target_n + 1);
        let parse = |field: String, text: &str, u| {
            parse_poly(text, u).map_err(|error| ProblemError::Parse { field, text: text.to_string(), error })
        };
        let mut rho = parse("source_rho".into(), &self.source_rho, &su)?;
        let mut rho_t = parse("target_rho".into(), &self.target_rho, &tu)?;
        let mut comps = self
            .map
            .iter()
            .enumerate()
            .map(|(i, t)| parse(format!("map[{i}]"), t, &su))
            .collect::<Result<Vec<Poly>, _>>()?;
        if let Some(bp) = &self.base_point {
            if bp.len() != self.n + 1 {
                return Err(ProblemError::Dimensions(format!(
                    "base_point has {} coordinates, n + 1 = {}",
                    bp.len(),
                    self.n + 1
                )));
            }
            let p = bp
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    parse_scalar(t).map_err(|error| ProblemError::Parse {
                        field: format!("base_point[{i}]"),
                        text: t.clone(),
                        error,
                    })
                })
                .collect::<Result<Vec<GaussRat>, _>>()?;
            (rho, rho_t, comps) = move_base_point(&rho, &rho_t, &comps, &p)?;
        }
        let source = validate_hypersurface(&rho, self.n)
            .map_err(|error| ProblemError::Geometry { field: "source_rho".into(), error })?;
        let target = validate_hypersurface(&rho_t, self.target_n)
            .map_err(|error| ProblemError::Geometry { field: "target_rho".into(), error })?;
        let map = HoloMap::new(self.n, self.target_n, comps).map_err(ProblemError::Map)?;
        let defaults = AnalysisOptions::default();
        let options = AnalysisOptions {
            trunc: self.options.trunc.unwrap_or(defaults.trunc),
            degree_cap: self.options.degree_cap.unwrap_or(defaults.degree_cap),
        };
        Ok(Problem { source, target, map, options, format: self.options.format.clone() })
    }
}

/// `ρ(Z+p, ξ+p̄)`, `ρ'(Z'+q, ξ'+q̄)` and `H(Z+p) − q` with `q = H(p)`.
fn move_base_point(
    rho: &Poly,
    rho_t: &Poly,
    comps: &[Poly],
    p: &[GaussRat],
) -> Result<(Poly, Poly, Vec<Poly>), ProblemError> {
    let su = rho.universe().clone();
    let full: Vec<GaussRat> = p.iter().cloned().chain(p.iter().map(|_| GaussRat::zero())).collect();
    let q: Vec<GaussRat> = comps.iter().map(|c| c.evaluate(&full)).collect();
    let new_rho =
        translate_to_origin(rho, p).map_err(|error| ProblemError::Geometry { field: "base_point".into(), error })?;
    let new_rho_t = translate_to_origin(rho_t, &q)
        .map_err(|error| ProblemError::Geometry { field: "target_rho at H(base_point)".into(), error })?;
    let shift: Vec<Subst> = (0..su.len())
        .map(|i| {
            if i < p.len() {
                Subst::With(&Poly::var(&su, i) + &Poly::constant(&su, p[i].clone()))
            } else {
                Subst::Keep
            }
        })
        .collect();
    let new_comps = comps
        .iter()
        .zip(&q)
        .map(|(c, qi)| Ok(&c.substitute(&shift)? - &Poly::constant(&su, qi.clone())))
        .collect::<Result<Vec<Poly>, crate::algebra::AlgebraError>>()
        .map_err(|e| ProblemError::Geometry { field: "map".into(), error: e.into() })?;
    Ok((new_rho, new_rho_t, new_comps))
}
