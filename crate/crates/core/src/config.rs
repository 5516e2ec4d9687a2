//! JSON configuration for generator contexts, schemes and windows.
//!
//! ```json
//! {"generators":[{"name":"tau","quadratic":{"D":5,"p":"1/2","q":"1/2"}}],
//!  "m": 1, "basis": [["1","tau"],["1","-1/tau"]]}
//! ```
//!
//! Entries are expression strings over the declared generators, integers,
//! or coefficient vectors `["q0","q1",...]`. A Hecke scheme replaces
//! `m`/`basis` with `{"hecke":{"alpha":[...],"beta":[...]}}`.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exactnum::{parse_coeff_vector, parse_expr, parse_rational, Context, ExactNumber, Generator, GeneratorContext};
use crate::scheme::{make_hecke_scheme, Lattice, Scheme};
use crate::vector::Vector;
use crate::window::{IntervalUnion, Parallelogram, Polygon, Window};

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Expr(String),
    Coeffs(Vec<String>),
}

impl Entry {
    pub fn value(&self, ctx: &Context) -> Result<ExactNumber> {
        match self {
            Entry::Int(n) => Ok(ExactNumber::from_i64(ctx, *n)),
            Entry::Expr(s) => parse_expr(ctx, s),
            Entry::Coeffs(c) => parse_coeff_vector(ctx, c),
        }
    }
}

fn values(ctx: &Context, entries: &[Entry]) -> Result<Vector> {
    entries.iter().map(|e| e.value(ctx)).collect()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadraticSpec {
    #[serde(rename = "D")]
    pub d: i64,
    pub p: String,
    pub q: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    #[serde(default)]
    pub quadratic: Option<QuadraticSpec>,
    /// Decimal digits of an opaque generator.
    #[serde(default)]
    pub opaque: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeckeSpec {
    pub alpha: Vec<Entry>,
    pub beta: Vec<Entry>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeConfig {
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
    #[serde(default = "yes")]
    pub independent: bool,
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default)]
    pub basis: Option<Vec<Vec<Entry>>>,
    #[serde(default)]
    pub hecke: Option<HeckeSpec>,
}

fn yes() -> bool {
    true
}

impl SchemeConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn context(&self) -> Result<Context> {
        let gens = self
            .generators
            .iter()
            .map(|g| match (&g.quadratic, &g.opaque) {
                (Some(q), None) => Ok(Generator::quadratic(&g.name, q.d, parse_rational(&q.p)?, parse_rational(&q.q)?)),
                (None, Some(digits)) => Generator::opaque(&g.name, digits),
                _ => Err(Error::Config(format!(
                    "generator {} needs exactly one of quadratic or opaque",
                    g.name
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        if gens.is_empty() {
            return Ok(GeneratorContext::rational());
        }
        GeneratorContext::new(gens, self.independent)
    }

    pub fn build(&self) -> Result<Scheme> {
        let ctx = self.context()?;
        match (&self.hecke, &self.basis) {
            (Some(h), None) => make_hecke_scheme(values(&ctx, &h.alpha)?, values(&ctx, &h.beta)?),
            (None, Some(rows)) => {
                let m = self.m.ok_or_else(|| Error::Config("explicit basis needs m".into()))?;
                let rows = rows.iter().map(|r| values(&ctx, r)).collect::<Result<Vec<_>>>()?;
                Scheme::new(Lattice::new(&ctx, m, rows)?)
            }
            _ => Err(Error::Config("give exactly one of basis or hecke".into())),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParallelogramSpec {
    #[serde(default)]
    pub anchor: Option<Vec<Entry>>,
    pub v1: Vec<Entry>,
    pub v2: Vec<Entry>,
}

/// `{"intervals":[[a,b],...]}`, `{"polygon":[[x,y],...]}` (closed unless
/// flags are given) or `{"parallelogram":{"anchor":..,"v1":..,"v2":..}}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig {
    #[serde(default)]
    pub intervals: Option<Vec<(Entry, Entry)>>,
    #[serde(default)]
    pub polygon: Option<Vec<Vec<Entry>>>,
    #[serde(default)]
    pub edge_closed: Option<Vec<bool>>,
    #[serde(default)]
    pub vertex_closed: Option<Vec<bool>>,
    #[serde(default)]
    pub parallelogram: Option<ParallelogramSpec>,
}

impl WindowConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn intervals(&self, ctx: &Context) -> Result<IntervalUnion> {
        let list = self
            .intervals
            .as_ref()
            .ok_or_else(|| Error::Config("window is not an interval union".into()))?;
        let ivs = list
            .iter()
            .map(|(a, b)| Ok((a.value(ctx)?, b.value(ctx)?)))
            .collect::<Result<Vec<_>>>()?;
        IntervalUnion::new(ctx, ivs)
    }

    pub fn parallelogram(&self, ctx: &Context) -> Result<Parallelogram> {
        let p = self
            .parallelogram
            .as_ref()
            .ok_or_else(|| Error::Config("window is not a parallelogram".into()))?;
        let anchor = match &p.anchor {
            Some(a) => values(ctx, a)?,
            None => vec![ExactNumber::zero(ctx), ExactNumber::zero(ctx)],
        };
        Parallelogram::new(anchor, values(ctx, &p.v1)?, values(ctx, &p.v2)?)
    }

    pub fn build(&self, ctx: &Context) -> Result<Window> {
        let kinds = [self.intervals.is_some(), self.polygon.is_some(), self.parallelogram.is_some()];
        if kinds.iter().filter(|&&k| k).count() != 1 {
            return Err(Error::Config("give exactly one of intervals, polygon or parallelogram".into()));
        }
        if self.intervals.is_some() {
            return Ok(Window::Intervals(self.intervals(ctx)?));
        }
        if self.parallelogram.is_some() {
            return Ok(Window::Polygon(self.parallelogram(ctx)?.to_polygon()?));
        }
        let vs = self
            .polygon
            .as_ref()
            .unwrap()
            .iter()
            .map(|v| values(ctx, v))
            .collect::<Result<Vec<_>>>()?;
        let n = vs.len();
        let edges = self.edge_closed.clone().unwrap_or_else(|| vec![true; n]);
        let poly = match &self.vertex_closed {
            Some(f) => Polygon::new(vs, edges, f.clone())?,
            None => Polygon::with_edge_flags(vs, edges)?,
        };
        Ok(Window::Polygon(poly))
    }
}
