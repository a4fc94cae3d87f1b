//! Run configuration in a flat `section.key = value` text format.
//!
//! Values are JSON literals (numbers, strings, booleans, arrays); bare words
//! are accepted as strings. `#` starts a comment. Unknown keys are rejected.
//!
//! ```text
//! name = "table1_a0.5_k3"
//! model.a = 0.5
//! model.k = 3
//! model.symmetry = "odd"
//! model.scheme = "degenerate-slope"
//! data.preset = "rational"
//! mesh.n_bulk = 50
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::mesh::MeshSpec;
use crate::solver::{InitialData, Model, NormalizationScheme, RunSettings, Symmetry};

/// Reference values a run is expected to reproduce.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Expectations {
    pub gamma: Option<f64>,
    pub c_l: Option<f64>,
    pub c_omega: Option<f64>,
    pub lambda_hat: Option<f64>,
    pub gamma_hat: Option<f64>,
}

/// Everything needed to run one simulation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub name: String,
    pub model: Model,
    pub data: InitialData,
    /// Multiply the initial data by this factor.
    pub amplitude: f64,
    /// When set, rescale the initial data so that `H(Omega_0)(0)` takes this value.
    pub hilbert_origin: Option<f64>,
    pub mesh: MeshSpec,
    pub settings: RunSettings,
    /// Run to `tau_max` and count that as success whatever the residual.
    pub horizon: bool,
    /// Time window for the two-scale power-law fits.
    pub fit_window: Option<[f64; 2]>,
    pub expect: Expectations,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            name: "run".into(),
            model: Model { a: 0.5, k: 3, symmetry: Symmetry::Odd, scheme: NormalizationScheme::DegenerateSlope, pin: 1.0 },
            data: InitialData::Rational,
            amplitude: 1.0,
            hilbert_origin: None,
            mesh: MeshSpec { x1: 0.5, x2: 1.5, x_m: 1.0, outer: 1e4, drho: 0.02, n_bulk: 50 },
            settings: RunSettings::default(),
            horizon: false,
            fit_window: None,
            expect: Expectations::default(),
        }
    }
}

fn parse_value(raw: &str) -> Value {
    serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()))
}

/// Parse the text into ordered `(key, value)` pairs.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, Value>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = strip_comment(line).trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
        let key = k.trim();
        if key.is_empty() || key.contains(char::is_whitespace) {
            return Err(Error::Config(format!("line {}: bad key {key:?}", i + 1)));
        }
        if out.insert(key.to_string(), parse_value(v.trim())).is_some() {
            return Err(Error::Config(format!("line {}: duplicate key {key}", i + 1)));
        }
    }
    Ok(out)
}

fn strip_comment(line: &str) -> &str {
    // a '#' inside a JSON string is kept
    let mut in_str = false;
    let mut escaped = false;
    for (i, c) in line.char_indices() {
        match c {
            '\\' if in_str => escaped = !escaped,
            '"' if !escaped => in_str = !in_str,
            '#' if !in_str => return &line[..i],
            _ => escaped = false,
        }
        if c != '\\' {
            escaped = false;
        }
    }
    line
}

fn num(key: &str, v: &Value) -> Result<f64> {
    v.as_f64().ok_or_else(|| Error::Config(format!("{key} must be a number")))
}

fn uint(key: &str, v: &Value) -> Result<usize> {
    v.as_u64().map(|u| u as usize).ok_or_else(|| Error::Config(format!("{key} must be a nonnegative integer")))
}

fn string<'a>(key: &str, v: &'a Value) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::Config(format!("{key} must be a string")))
}

fn boolean(key: &str, v: &Value) -> Result<bool> {
    v.as_bool().ok_or_else(|| Error::Config(format!("{key} must be true or false")))
}

fn numbers(key: &str, v: &Value) -> Result<Vec<f64>> {
    v.as_array()
        .ok_or_else(|| Error::Config(format!("{key} must be an array")))?
        .iter()
        .map(|x| num(key, x))
        .collect()
}

fn pair(key: &str, v: &Value) -> Result<[f64; 2]> {
    let xs = numbers(key, v)?;
    if xs.len() != 2 {
        return Err(Error::Config(format!("{key} must have two entries")));
    }
    Ok([xs[0], xs[1]])
}

/// Parse a kebab-case tag of a serde enum.
fn tag<T: for<'de> Deserialize<'de>>(key: &str, v: &Value) -> Result<T> {
    let s = string(key, v)?;
    serde_json::from_value(Value::String(s.to_string())).map_err(|_| Error::Config(format!("{key}: unknown value {s:?}")))
}

fn scheme(key: &str, v: &Value) -> Result<NormalizationScheme> {
    let s = string(key, v)?;
    serde_json::from_value(serde_json::json!({ "type": s }))
        .map_err(|_| Error::Config(format!("{key}: unknown scheme {s:?}")))
}

impl RunConfig {
    /// Apply one key. Also used for command-line overrides.
    pub fn set(&mut self, key: &str, v: &Value) -> Result<()> {
        match key {
            "name" => self.name = string(key, v)?.to_string(),
            "model.a" => self.model.a = num(key, v)?,
            "model.k" => self.model.k = uint(key, v)? as u32,
            "model.symmetry" => self.model.symmetry = tag(key, v)?,
            "model.scheme" => self.model.scheme = scheme(key, v)?,
            "model.pin" => self.model.pin = num(key, v)?,
            "model.c_l" | "model.c_omega" => {
                let (mut c_l, mut c_omega) = match self.model.scheme {
                    NormalizationScheme::Fixed { c_l, c_omega } => (c_l, c_omega),
                    _ => (0.0, 0.0),
                };
                if key == "model.c_l" {
                    c_l = num(key, v)?;
                } else {
                    c_omega = num(key, v)?;
                }
                self.model.scheme = NormalizationScheme::Fixed { c_l, c_omega };
            }
            "data.preset" => self.data = tag(key, v)?,
            "data.amplitude" => self.amplitude = num(key, v)?,
            "data.hilbert_origin" => self.hilbert_origin = if v.is_null() { None } else { Some(num(key, v)?) },
            "mesh.x1" => self.mesh.x1 = num(key, v)?,
            "mesh.x2" => self.mesh.x2 = num(key, v)?,
            "mesh.x_m" => self.mesh.x_m = num(key, v)?,
            "mesh.outer" => self.mesh.outer = num(key, v)?,
            "mesh.drho" => self.mesh.drho = num(key, v)?,
            "mesh.n_bulk" => self.mesh.n_bulk = uint(key, v)?,
            "numerics.cfl" => self.settings.cfl = num(key, v)?,
            "numerics.tol" => self.settings.tol = num(key, v)?,
            "numerics.tau_max" => self.settings.tau_max = num(key, v)?,
            "numerics.max_steps" => self.settings.max_steps = uint(key, v)?,
            "numerics.dtau_max" => self.settings.dtau_max = num(key, v)?,
            "numerics.adaptive" => self.settings.adaptive = boolean(key, v)?,
            "numerics.exclusion" => self.settings.exclusion = num(key, v)?,
            "numerics.horizon" => self.horizon = boolean(key, v)?,
            "numerics.pad_extent" => self.settings.pad_extent = num(key, v)?,
            "numerics.pad_spacing" => self.settings.pad_spacing = num(key, v)?,
            "output.record_every" => self.settings.record_every = uint(key, v)?,
            "output.snapshot_taus" => self.settings.snapshot_taus = numbers(key, v)?,
            "fit.window" => self.fit_window = Some(pair(key, v)?),
            "expect.gamma" => self.expect.gamma = Some(num(key, v)?),
            "expect.c_l" => self.expect.c_l = Some(num(key, v)?),
            "expect.c_omega" => self.expect.c_omega = Some(num(key, v)?),
            "expect.lambda_hat" => self.expect.lambda_hat = Some(num(key, v)?),
            "expect.gamma_hat" => self.expect.gamma_hat = Some(num(key, v)?),
            _ => return Err(Error::Config(format!("unknown key {key}"))),
        }
        Ok(())
    }

    /// Apply `key=value` text.
    pub fn set_str(&mut self, assignment: &str) -> Result<()> {
        let (k, v) = assignment
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("expected key=value, got {assignment:?}")))?;
        self.set(k.trim(), &parse_value(v.trim()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (k, v) in parse_pairs(text)? {
            cfg.set(&k, &v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// A file path, or the name of a built-in preset.
    pub fn load(source: &str) -> Result<Self> {
        if let Some(text) = crate::presets::preset(source) {
            return Self::parse(text);
        }
        let path = Path::new(source);
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {source}: {e}")))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        self.mesh.validate()?;
        self.settings.validate()?;
        let half = self.model.symmetry == Symmetry::HalfLine;
        if half != self.data.is_half_line() {
            return Err(Error::Config(format!("data {:?} do not match symmetry {:?}", self.data, self.model.symmetry)));
        }
        if self.model.scheme == NormalizationScheme::SupportPin && !matches!(self.data, InitialData::Case12 | InitialData::Case22) {
            return Err(Error::Config("the support pin needs data vanishing on [0, 1]".into()));
        }
        if !(self.amplitude.is_finite() && self.amplitude != 0.0) {
            return Err(Error::Config("data.amplitude must be finite and nonzero".into()));
        }
        if let Some(w) = self.fit_window {
            if !(w[0] < w[1]) {
                return Err(Error::Config("fit.window must be increasing".into()));
            }
        }
        Ok(())
    }

    /// Render back to the text format; `parse(render(c)) == c`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let mut put = |k: &str, v: Value| s.push_str(&format!("{k} = {v}\n"));
        let scheme = serde_json::to_value(self.model.scheme).expect("scheme serializes");
        put("name", self.name.clone().into());
        put("model.a", self.model.a.into());
        put("model.k", self.model.k.into());
        put("model.symmetry", serde_json::to_value(self.model.symmetry).expect("symmetry serializes"));
        if let NormalizationScheme::Fixed { c_l, c_omega } = self.model.scheme {
            put("model.c_l", c_l.into());
            put("model.c_omega", c_omega.into());
        } else {
            put("model.scheme", scheme["type"].clone());
        }
        put("model.pin", self.model.pin.into());
        put("data.preset", serde_json::to_value(self.data).expect("data serialize"));
        put("data.amplitude", self.amplitude.into());
        if let Some(h) = self.hilbert_origin {
            put("data.hilbert_origin", h.into());
        }
        put("mesh.x1", self.mesh.x1.into());
        put("mesh.x2", self.mesh.x2.into());
        put("mesh.x_m", self.mesh.x_m.into());
        put("mesh.outer", self.mesh.outer.into());
        put("mesh.drho", self.mesh.drho.into());
        put("mesh.n_bulk", self.mesh.n_bulk.into());
        let st = &self.settings;
        put("numerics.cfl", st.cfl.into());
        put("numerics.tol", st.tol.into());
        put("numerics.tau_max", st.tau_max.into());
        put("numerics.max_steps", st.max_steps.into());
        put("numerics.dtau_max", st.dtau_max.into());
        put("numerics.adaptive", st.adaptive.into());
        put("numerics.exclusion", st.exclusion.into());
        put("numerics.horizon", self.horizon.into());
        put("numerics.pad_extent", st.pad_extent.into());
        put("numerics.pad_spacing", st.pad_spacing.into());
        put("output.record_every", st.record_every.into());
        put("output.snapshot_taus", st.snapshot_taus.clone().into());
        if let Some(w) = self.fit_window {
            put("fit.window", vec![w[0], w[1]].into());
        }
        let e = &self.expect;
        for (k, v) in [
            ("expect.gamma", e.gamma),
            ("expect.c_l", e.c_l),
            ("expect.c_omega", e.c_omega),
            ("expect.lambda_hat", e.lambda_hat),
            ("expect.gamma_hat", e.gamma_hat),
        ] {
            if let Some(v) = v {
                put(k, v.into());
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let text = "# comment\nname = \"x#y\"\nmodel.a = -1\nmodel.symmetry = half-line\nmodel.scheme = \"min-pin\"\n\
                    data.preset = case21\noutput.snapshot_taus = [1, 2.5]\n";
        let c = RunConfig::parse(text).unwrap();
        assert_eq!(c.name, "x#y");
        assert_eq!(c.model.a, -1.0);
        assert_eq!(c.model.scheme, NormalizationScheme::MinPin);
        assert_eq!(c.settings.snapshot_taus, vec![1.0, 2.5]);
        assert_eq!(RunConfig::parse(&c.render()).unwrap(), c);
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(RunConfig::parse("model.b = 1").is_err());
        assert!(RunConfig::parse("model.a 1").is_err());
        assert!(RunConfig::parse("model.a = \"x\"").is_err());
        assert!(RunConfig::parse("model.a = 1\nmodel.a = 2").is_err());
        assert!(RunConfig::parse("data.preset = case21").is_err());
    }

    #[test]
    fn fixed_rates() {
        let c = RunConfig::parse("model.c_l = 0.5\nmodel.c_omega = -1").unwrap();
        assert_eq!(c.model.scheme, NormalizationScheme::Fixed { c_l: 0.5, c_omega: -1.0 });
    }
}
