//! JSON file formats: scenario configs and reports, charts, E2 pages,
//! profiles and comodule-algebra presentations.

use std::collections::BTreeMap;
use std::path::Path;

use hopf_core::comodule::{ComodAlgebraPresentation, Side};
use hopf_core::graded::DegreeWindow;
use hopf_core::homalg::ExtChart;
use hopf_core::spectral::{E2Page, E2Source, ScenarioId, ScenarioReport, VanishingScenario};
use hopf_core::subquot::{Cap, Profile};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.display().to_string(), source })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub max: u32,
    pub guard: u32,
}

impl WindowSpec {
    pub fn window(&self) -> CliResult<DegreeWindow> {
        Ok(DegreeWindow::new(self.max, self.guard)?)
    }
}

/// `{"scenario":"YN_YNEXT","n":1,"windows":[{"max":32,"guard":14}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: String,
    #[serde(default)]
    pub n: usize,
    pub windows: Vec<WindowSpec>,
}

impl ScenarioConfig {
    pub fn scenario(&self) -> CliResult<VanishingScenario> {
        let id: ScenarioId = self.scenario.parse()?;
        let windows = self.windows.iter().map(WindowSpec::window).collect::<CliResult<Vec<_>>>()?;
        Ok(VanishingScenario::new(id, self.n, windows)?)
    }
}

/// A config file holds one scenario or a list of them.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ScenarioFile {
    One(ScenarioConfig),
    Many(Vec<ScenarioConfig>),
}

impl ScenarioFile {
    pub fn into_configs(self) -> Vec<ScenarioConfig> {
        match self {
            ScenarioFile::One(c) => vec![c],
            ScenarioFile::Many(cs) => cs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub anchor: String,
    pub max: u32,
    pub guard: u32,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReportJson {
    pub scenario: String,
    pub n: usize,
    pub passed: bool,
    pub checks: Vec<CheckJson>,
}

impl From<&ScenarioReport> for ScenarioReportJson {
    fn from(r: &ScenarioReport) -> Self {
        ScenarioReportJson {
            scenario: r.scenario.id.to_string(),
            n: r.scenario.n,
            passed: r.passed(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckJson {
                    anchor: c.anchor.clone(),
                    max: c.window.max_degree(),
                    guard: c.window.guard(),
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect(),
        }
    }
}

/// Nonzero entries as `[s, t, dim]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartJson {
    pub max_s: usize,
    pub min_t: i32,
    pub max_t: i32,
    #[serde(default)]
    pub note: String,
    pub entries: Vec<(usize, i32, usize)>,
}

impl From<&ExtChart> for ChartJson {
    fn from(c: &ExtChart) -> Self {
        ChartJson { max_s: c.max_s, min_t: c.min_t, max_t: c.max_t, note: c.note.clone(), entries: c.entries().collect() }
    }
}

impl ChartJson {
    pub fn chart(&self) -> CliResult<ExtChart> {
        let mut c = ExtChart::new(self.max_s, self.min_t, self.max_t, &self.note);
        for &(s, t, d) in &self.entries {
            if s > self.max_s || t < self.min_t || t > self.max_t {
                return Err(CliError::Usage(format!("entry ({s}, {t}) lies outside the declared range")));
            }
            c.set(s, t, d);
        }
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageJson {
    pub source: String,
    pub max_n: usize,
    pub max_u: i32,
    /// Nonzero entries as `[s, t, u, dim]`.
    pub entries: Vec<(usize, usize, i32, usize)>,
    pub abutment: ChartJson,
    pub first_quadrant: bool,
    pub subquotient_failure: Option<(usize, i32)>,
    pub zero_propagation: bool,
    pub factorized_agrees: Option<bool>,
}

pub fn source_name(s: E2Source) -> &'static str {
    match s {
        E2Source::Algebras => "algebras",
        E2Source::ComoduleFirst => "comodule-first",
        E2Source::ComoduleSecond => "comodule-second",
    }
}

impl From<&E2Page> for PageJson {
    fn from(p: &E2Page) -> Self {
        PageJson {
            source: source_name(p.source).to_string(),
            max_n: p.max_n,
            max_u: p.max_u,
            entries: p.entries().collect(),
            abutment: ChartJson::from(&p.abutment),
            first_quadrant: p.first_quadrant(),
            subquotient_failure: p.subquotient_failure(),
            zero_propagation: p.zero_propagation_holds(),
            factorized_agrees: p.factorized_agrees,
        }
    }
}

/// A profile cap: a height, or `"inf"` for an excluded generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CapJson {
    Height(u32),
    Named(String),
}

impl CapJson {
    fn cap(&self) -> CliResult<Cap> {
        match self {
            CapJson::Height(h) => Ok(Cap::Finite(*h)),
            CapJson::Named(s) if s == "inf" => Ok(Cap::Inf),
            CapJson::Named(s) => Err(CliError::Usage(format!("bad cap `{s}`, expected a height or \"inf\""))),
        }
    }
}

/// `{"caps":[0,0,1],"tail":"inf"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileJson {
    pub caps: Vec<CapJson>,
    pub tail: CapJson,
}

impl ProfileJson {
    pub fn profile(&self) -> CliResult<Profile> {
        let caps = self.caps.iter().map(CapJson::cap).collect::<CliResult<Vec<_>>>()?;
        Ok(Profile::new(caps, self.tail.cap()?))
    }
}

/// Generators with degrees and coactions written `a|m + ...`; generators
/// without an entry are primitive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationJson {
    pub generators: Vec<(String, u32)>,
    #[serde(default)]
    pub coaction: BTreeMap<String, String>,
    pub side: String,
}

impl PresentationJson {
    pub fn presentation(&self) -> CliResult<ComodAlgebraPresentation> {
        let side = match self.side.as_str() {
            "left" => Side::Left,
            "right" => Side::Right,
            s => return Err(CliError::Usage(format!("bad side `{s}`, expected left or right"))),
        };
        let coaction: Vec<(String, String)> = self.coaction.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        Ok(ComodAlgebraPresentation::parse(self.generators.clone(), &coaction, side)?)
    }
}
