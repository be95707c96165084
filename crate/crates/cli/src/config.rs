//! Configuration schema: ground field, vertex list, zeta specification, and
//! default budgets. The vertex order in the config is the total order on the
//! vertex set.

use serde::{Deserialize, Serialize};

use qshuffle_core::quantum::Budget;
use qshuffle_core::scalar::parse_scalar;
use qshuffle_core::uni::UniLaurent;
use qshuffle_core::zeta::{from_kac_moody, from_quiver, FactoredEntry, FactoredZeta, ZetaDatum};

use crate::CliError;

pub const CONFIG_SCHEMA: &str = "qshuffle-config/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Config {
    pub schema: String,
    /// Ground field: "rational" restricts scalars to plain rationals,
    /// "rational-function" (default) allows the parameter q.
    #[serde(default = "default_field")]
    pub field: String,
    pub vertices: Vec<String>,
    pub zeta: ZetaSpec,
    #[serde(default)]
    pub budgets: Budgets,
}

fn default_field() -> String {
    "rational-function".to_string()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ZetaSpec {
    KacMoody { d: Vec<Vec<i64>> },
    Quiver { counts: Vec<Vec<i64>> },
    Factored { entries: Vec<Vec<FactoredEntrySpec>> },
    Explicit { tilde: Vec<Vec<Vec<(i64, String)>>>, pole: Vec<Vec<u8>> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactoredEntrySpec {
    pub alpha: String,
    pub s: i64,
    pub roots: Vec<String>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Budgets {
    pub window: i64,
    pub growth: i64,
    pub iters: u32,
    /// Extra series order added on top of the provably sufficient
    /// truncation in the constant-term engine.
    #[serde(default)]
    pub truncation_margin: u32,
}

impl Default for Budgets {
    fn default() -> Self {
        let b = Budget::default();
        Budgets {
            window: b.window_margin,
            growth: b.window_growth,
            iters: b.rounds,
            truncation_margin: 0,
        }
    }
}

impl Budgets {
    pub fn to_budget(self) -> Budget {
        Budget {
            window_margin: self.window,
            window_growth: self.growth,
            rounds: self.iters,
        }
    }
}

impl Config {
    pub fn load(path: &str) -> Result<Config, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {path}: {e}")))?;
        let cfg: Config = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid config {path}: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema != CONFIG_SCHEMA {
            return Err(CliError::Usage(format!(
                "unsupported config schema {:?}, expected {CONFIG_SCHEMA:?}",
                self.schema
            )));
        }
        if self.field != "rational" && self.field != "rational-function" {
            return Err(CliError::Usage(format!(
                "unknown field {:?}; expected \"rational\" or \"rational-function\"",
                self.field
            )));
        }
        if self.vertices.is_empty() {
            return Err(CliError::Usage("vertex list must be nonempty".into()));
        }
        for v in &self.vertices {
            if v.contains(',') || v.contains('[') || v.contains(']') {
                return Err(CliError::Usage(format!(
                    "vertex name {v:?} may not contain ',', '[' or ']'"
                )));
            }
        }
        let n = self.vertices.len();
        let square = |rows: usize, name: &str| {
            if rows != n {
                Err(CliError::Usage(format!(
                    "{name} matrix must be {n}x{n} to match the vertex list"
                )))
            } else {
                Ok(())
            }
        };
        match &self.zeta {
            ZetaSpec::KacMoody { d } => square(d.len(), "kac_moody")?,
            ZetaSpec::Quiver { counts } => square(counts.len(), "quiver")?,
            ZetaSpec::Factored { entries } => square(entries.len(), "factored")?,
            ZetaSpec::Explicit { tilde, pole } => {
                square(tilde.len(), "explicit tilde")?;
                square(pole.len(), "explicit pole")?;
            }
        }
        Ok(())
    }

    pub fn color_of(&self, name: &str) -> Result<usize, CliError> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| CliError::Usage(format!("unknown vertex {name:?}")))
    }

    /// The general representation; available for every kind.
    pub fn zeta_datum(&self) -> Result<ZetaDatum, CliError> {
        match &self.zeta {
            ZetaSpec::KacMoody { d } => Ok(from_kac_moody(d)?.expand()),
            ZetaSpec::Quiver { counts } => Ok(from_quiver(counts)?.expand()),
            ZetaSpec::Factored { .. } => Ok(self.factored()?.expect("factored").expand()),
            ZetaSpec::Explicit { tilde, pole } => {
                let mut rows = Vec::with_capacity(tilde.len());
                for row in tilde {
                    let mut out = Vec::with_capacity(row.len());
                    for entry in row {
                        let mut u = UniLaurent::zero();
                        for (e, c) in entry {
                            u.add_term(*e, parse_scalar(c)?);
                        }
                        out.push(u);
                    }
                    rows.push(out);
                }
                let pole = pole
                    .iter()
                    .map(|r| r.iter().map(|&b| b != 0).collect())
                    .collect();
                Ok(ZetaDatum::new(rows, pole)?)
            }
        }
    }

    /// The factored representation when the config kind provides roots.
    pub fn factored(&self) -> Result<Option<FactoredZeta>, CliError> {
        match &self.zeta {
            ZetaSpec::KacMoody { d } => Ok(Some(from_kac_moody(d)?)),
            ZetaSpec::Quiver { counts } => Ok(Some(from_quiver(counts)?)),
            ZetaSpec::Factored { entries } => {
                let mut rows = Vec::with_capacity(entries.len());
                for row in entries {
                    let mut out = Vec::with_capacity(row.len());
                    for e in row {
                        let alpha = parse_scalar(&e.alpha)?;
                        let mut roots = Vec::with_capacity(e.roots.len());
                        for r in &e.roots {
                            roots.push(parse_scalar(r)?);
                        }
                        out.push(FactoredEntry {
                            alpha,
                            shift: e.s,
                            roots,
                        });
                    }
                    rows.push(out);
                }
                Ok(Some(FactoredZeta { entries: rows }))
            }
            ZetaSpec::Explicit { .. } => Ok(None),
        }
    }

    /// Canonical serialization used for digests and cache keys.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}
