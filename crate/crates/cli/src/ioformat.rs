//! JSON interchange for mathematical objects. Scalars travel as strings in
//! the exact text grammar, variables as `z[vertex,slot]` keys, words as
//! `[vertex, exponent]` pairs; everything round-trips exactly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use qshuffle_core::poly::{DegreeVector, LaurentPoly, Monomial, VarId};
use qshuffle_core::quantum::UElement;
use qshuffle_core::scalar::parse_scalar;
use qshuffle_core::shuffle::{ShuffleElement, Sign};
use qshuffle_core::words::{Letter, Word};
use qshuffle_core::zeta::SpecPoint;

use crate::config::Config;
use crate::CliError;

pub fn sign_str(sign: Sign) -> &'static str {
    match sign {
        Sign::Plus => "+",
        Sign::Minus => "-",
    }
}

pub fn parse_sign(s: &str) -> Result<Sign, CliError> {
    match s {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        _ => Err(CliError::Usage(format!("invalid sign {s:?}"))),
    }
}

pub fn var_key(v: VarId, cfg: &Config) -> String {
    format!("z[{},{}]", cfg.vertices[v.color as usize], v.slot)
}

pub fn parse_var_key(key: &str, cfg: &Config) -> Result<VarId, CliError> {
    let inner = key
        .strip_prefix("z[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| CliError::Usage(format!("invalid variable key {key:?}")))?;
    let (name, slot) = inner
        .rsplit_once(',')
        .ok_or_else(|| CliError::Usage(format!("invalid variable key {key:?}")))?;
    let color = cfg.color_of(name.trim())?;
    let slot: usize = slot
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid slot in {key:?}")))?;
    if slot == 0 {
        return Err(CliError::Usage("slots are 1-based".into()));
    }
    Ok(VarId::new(color, slot))
}

// ---- words ----

pub type WordJson = Vec<(String, i64)>;

pub fn word_to_json(w: &Word, cfg: &Config) -> WordJson {
    w.0.iter()
        .map(|l| (cfg.vertices[l.color].clone(), l.exp))
        .collect()
}

pub fn word_from_json(j: &WordJson, cfg: &Config) -> Result<Word, CliError> {
    let mut letters = Vec::with_capacity(j.len());
    for (name, exp) in j {
        letters.push(Letter {
            color: cfg.color_of(name)?,
            exp: *exp,
        });
    }
    Ok(Word(letters))
}

// ---- degree vectors ----

pub fn degree_to_json(n: &DegreeVector, cfg: &Config) -> BTreeMap<String, u32> {
    let mut m = BTreeMap::new();
    for (i, &c) in n.0.iter().enumerate() {
        if c > 0 {
            m.insert(cfg.vertices[i].clone(), c);
        }
    }
    m
}

pub fn degree_from_json(
    j: &BTreeMap<String, u32>,
    cfg: &Config,
) -> Result<DegreeVector, CliError> {
    let mut n = DegreeVector::zero(cfg.vertices.len());
    for (name, c) in j {
        n.0[cfg.color_of(name)?] = *c;
    }
    Ok(n)
}

// ---- polynomials ----

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: BTreeMap<String, i64>,
    pub coeff: String,
}

pub fn poly_to_json(p: &LaurentPoly, cfg: &Config) -> Vec<TermJson> {
    p.terms()
        .map(|(m, c)| TermJson {
            monomial: m
                .exponents()
                .iter()
                .map(|(v, e)| (var_key(*v, cfg), *e))
                .collect(),
            coeff: c.to_string(),
        })
        .collect()
}

pub fn poly_from_json(j: &[TermJson], cfg: &Config) -> Result<LaurentPoly, CliError> {
    let mut p = LaurentPoly::zero();
    for t in j {
        let mut pairs = Vec::new();
        for (key, e) in &t.monomial {
            pairs.push((parse_var_key(key, cfg)?, *e));
        }
        p.add_term(Monomial::from_pairs(pairs), parse_scalar(&t.coeff)?);
    }
    Ok(p)
}

// ---- elements ----

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UTermJson {
    pub word: WordJson,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UElementJson {
    pub sign: String,
    pub terms: Vec<UTermJson>,
}

pub fn uelement_to_json(u: &UElement, cfg: &Config) -> UElementJson {
    UElementJson {
        sign: sign_str(u.sign).to_string(),
        terms: u
            .terms
            .iter()
            .map(|(w, c)| UTermJson {
                word: word_to_json(w, cfg),
                coeff: c.to_string(),
            })
            .collect(),
    }
}

pub fn uelement_from_json(j: &UElementJson, cfg: &Config) -> Result<UElement, CliError> {
    let mut u = UElement::zero(parse_sign(&j.sign)?);
    for t in &j.terms {
        u.add_term(word_from_json(&t.word, cfg)?, parse_scalar(&t.coeff)?);
    }
    Ok(u)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShuffleElementJson {
    pub sign: String,
    pub degree: BTreeMap<String, u32>,
    pub body: Vec<TermJson>,
}

pub fn shuffle_to_json(e: &ShuffleElement, cfg: &Config) -> ShuffleElementJson {
    ShuffleElementJson {
        sign: sign_str(e.sign).to_string(),
        degree: degree_to_json(&e.degree, cfg),
        body: poly_to_json(&e.body, cfg),
    }
}

pub fn shuffle_from_json(
    j: &ShuffleElementJson,
    cfg: &Config,
) -> Result<ShuffleElement, CliError> {
    Ok(ShuffleElement::new(
        parse_sign(&j.sign)?,
        degree_from_json(&j.degree, cfg)?,
        poly_from_json(&j.body, cfg)?,
    ))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecPointJson {
    pub values: BTreeMap<String, String>,
}

pub fn point_to_json(p: &SpecPoint, cfg: &Config) -> SpecPointJson {
    SpecPointJson {
        values: p
            .values
            .iter()
            .map(|(v, s)| (var_key(*v, cfg), s.to_string()))
            .collect(),
    }
}

pub fn point_from_json(j: &SpecPointJson, cfg: &Config) -> Result<SpecPoint, CliError> {
    let mut values = BTreeMap::new();
    for (key, s) in &j.values {
        values.insert(parse_var_key(key, cfg)?, parse_scalar(s)?);
    }
    Ok(SpecPoint::new(values)?)
}

/// Read an argument that is either inline JSON or a path to a JSON file.
pub fn read_json_arg(arg: &str) -> Result<String, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| CliError::Usage(format!("cannot read {arg}: {e}")))
    }
}
