//! Action files: one group action per TOML document.
//!
//! ```toml
//! name = "ROT"
//! description = "rotation of a 6-cycle"
//!
//! [space]
//! constructor = "cycle"      # discrete | integers | cycle | torus_grid
//! n = 6
//! scale = "1/6"
//!
//! [generators]
//! labels = ["r", "R"]
//! inverses = [["r", "R"]]
//! relations = [["r r r r r r", "e"]]
//! order = "infinite"         # "infinite", "unknown" or an integer
//!
//! [maps]
//! r = [1, 2, 3, 4, 5, 0]     # explicit permutation of point indices
//! R = "inverse(r)"
//! ```
//!
//! An explicit space lists `points` (ids) and a `distances` matrix instead of
//! a constructor. Map constructors: `identity`, `flip_1_minus_x` (integer
//! ids), `affine_mod(a, b, n)` (index `x ↦ a x + b mod n`),
//! `matrix_mod([[a, b], [c, d]], n)` (torus grid point `(i, j)` at index
//! `i n + j`) and `inverse(label)`. Numbers are integers or strings such as
//! `"1/6"` and `"0.25"`; floats are rejected as inexact. A cover file may add
//! a `[covering]` section with `projection` (base index of each point) and
//! `delta0`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::action::{CoveringMap, GroupAction};
use crate::error::{Error, Result};
use crate::group::{GeneratorSystem, PresentedOrder};
use crate::metric::FiniteMetricSpace;
use crate::perm::Perm;
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    pub fn value(&self) -> Result<Scalar> {
        match self {
            Number::Int(v) => Ok(scalar::int(*v)),
            Number::Text(t) => scalar::parse(t),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSection {
    pub constructor: Option<String>,
    pub n: Option<usize>,
    pub lo: Option<i64>,
    pub hi: Option<i64>,
    pub scale: Option<Number>,
    pub points: Option<Vec<String>>,
    pub distances: Option<Vec<Vec<Number>>>,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum OrderSpec {
    Finite(usize),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSection {
    pub labels: Vec<String>,
    #[serde(default)]
    pub inverses: Vec<[String; 2]>,
    #[serde(default)]
    pub relations: Vec<[String; 2]>,
    pub order: Option<OrderSpec>,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum MapSpec {
    Table(Vec<usize>),
    Constructor(String),
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CoveringSection {
    pub projection: Vec<usize>,
    pub delta0: Number,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDocument {
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub citation: String,
    pub space: SpaceSection,
    pub generators: GeneratorSection,
    pub maps: BTreeMap<String, MapSpec>,
    pub covering: Option<CoveringSection>,
}

/// A parsed and validated action file.
#[derive(Clone, Debug)]
pub struct LoadedAction {
    pub document: ActionDocument,
    pub action: GroupAction,
    pub covering: Option<CoveringMap>,
    /// Hex SHA-256 of the source text.
    pub digest: String,
}

fn doc_err(context: &str, e: impl std::fmt::Display) -> Error {
    Error::Document(format!("{context}: {e}"))
}

/// Parses and validates an action file. `origin` names the source in errors.
pub fn load_str(source: &str, origin: &str) -> Result<LoadedAction> {
    let document: ActionDocument = toml::from_str(source).map_err(|e| doc_err(origin, e))?;
    let action = document.build_action().map_err(|e| doc_err(origin, e))?;
    let covering = document.build_covering().map_err(|e| doc_err(origin, e))?;
    let digest = Sha256::digest(source.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
    Ok(LoadedAction { document, action, covering, digest })
}

pub fn load_path(path: &std::path::Path) -> Result<LoadedAction> {
    let source = std::fs::read_to_string(path).map_err(|e| doc_err(&path.display().to_string(), e))?;
    load_str(&source, &path.display().to_string())
}

impl SpaceSection {
    pub fn build(&self) -> Result<FiniteMetricSpace> {
        let need_n = || self.n.ok_or_else(|| Error::Document("[space] needs `n`".into()));
        let scale = || self.scale.as_ref().map_or(Ok(scalar::int(1)), Number::value);
        match (self.constructor.as_deref(), &self.points, &self.distances) {
            (Some(c), None, None) => match c {
                "discrete" => FiniteMetricSpace::discrete(need_n()?),
                "integers" => match (self.lo, self.hi) {
                    (Some(lo), Some(hi)) => FiniteMetricSpace::integers(lo, hi),
                    _ => Err(Error::Document("[space] integers needs `lo` and `hi`".into())),
                },
                "cycle" => FiniteMetricSpace::cycle(need_n()?, scale()?),
                "torus_grid" => FiniteMetricSpace::torus_grid(need_n()?, scale()?),
                other => Err(Error::Document(format!("[space] unknown constructor `{other}`"))),
            },
            (None, Some(points), Some(rows)) => {
                let table = rows
                    .iter()
                    .map(|row| row.iter().map(Number::value).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                FiniteMetricSpace::new(points.clone(), table)
            }
            _ => Err(Error::Document(
                "[space] needs either `constructor` or both `points` and `distances`".into(),
            )),
        }
    }
}

impl GeneratorSection {
    pub fn build(&self) -> Result<GeneratorSystem> {
        let pairs: Vec<(&str, &str)> = self.inverses.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        let labels: Vec<&str> = self.labels.iter().map(String::as_str).collect();
        let mut gens = GeneratorSystem::new(&labels, &pairs)?;
        let order = match &self.order {
            None => PresentedOrder::Unknown,
            Some(OrderSpec::Finite(n)) => PresentedOrder::Finite(*n),
            Some(OrderSpec::Named(s)) => match s.as_str() {
                "infinite" => PresentedOrder::Infinite,
                "unknown" => PresentedOrder::Unknown,
                other => return Err(Error::Document(format!("[generators] unknown order `{other}`"))),
            },
        };
        gens = gens.with_order(order);
        for [lhs, rhs] in &self.relations {
            gens = gens.with_relation(lhs, rhs)?;
        }
        Ok(gens)
    }
}

/// Splits `name(args)` into the name and the arguments parsed as a JSON
/// array.
fn call(text: &str) -> Result<(&str, Vec<serde_json::Value>)> {
    let text = text.trim();
    let Some((name, rest)) = text.split_once('(') else { return Ok((text, Vec::new())) };
    let args = rest
        .strip_suffix(')')
        .ok_or_else(|| Error::Document(format!("unbalanced parentheses in `{text}`")))?;
    if name.trim() == "inverse" {
        return Ok(("inverse", vec![serde_json::Value::String(args.trim().to_string())]));
    }
    let args: Vec<serde_json::Value> =
        serde_json::from_str(&format!("[{args}]")).map_err(|e| doc_err(&format!("arguments of `{text}`"), e))?;
    Ok((name.trim(), args))
}

fn int_arg(args: &[serde_json::Value], i: usize, text: &str) -> Result<i64> {
    args.get(i)
        .and_then(serde_json::Value::as_i64)
        .ok_or_else(|| Error::Document(format!("argument {} of `{text}` must be an integer", i + 1)))
}

fn constructor_table(text: &str, space: &FiniteMetricSpace) -> Result<Option<Vec<usize>>> {
    let n = space.len();
    let (name, args) = call(text)?;
    let table = match name {
        "identity" => (0..n).collect(),
        "flip_1_minus_x" => (0..n)
            .map(|i| {
                let x: i64 = space
                    .id(i)
                    .parse()
                    .map_err(|_| Error::Document(format!("flip_1_minus_x needs integer ids, found `{}`", space.id(i))))?;
                space.index_of(&(1 - x).to_string())
            })
            .collect::<Result<Vec<_>>>()?,
        "affine_mod" => {
            let (a, b, m) = (int_arg(&args, 0, text)?, int_arg(&args, 1, text)?, int_arg(&args, 2, text)?);
            if m <= 0 || m as usize != n {
                return Err(Error::Document(format!("`{text}`: modulus must equal the number of points ({n})")));
            }
            (0..n as i64).map(|x| (a * x + b).rem_euclid(m) as usize).collect()
        }
        "matrix_mod" => {
            let m = int_arg(&args, 1, text)?;
            let rows: Option<Vec<Vec<i64>>> = args.first().and_then(|v| serde_json::from_value(v.clone()).ok());
            let Some(rows) = rows.filter(|r| r.len() == 2 && r.iter().all(|row| row.len() == 2)) else {
                return Err(Error::Document(format!("`{text}`: expected a 2x2 integer matrix")));
            };
            if m <= 0 || (m * m) as usize != n {
                return Err(Error::Document(format!("`{text}`: the space must be the {m}x{m} torus grid")));
            }
            (0..n as i64)
                .map(|p| {
                    let (i, j) = (p / m, p % m);
                    let ni = (rows[0][0] * i + rows[0][1] * j).rem_euclid(m);
                    let nj = (rows[1][0] * i + rows[1][1] * j).rem_euclid(m);
                    (ni * m + nj) as usize
                })
                .collect()
        }
        "inverse" => return Ok(None),
        other => return Err(Error::Document(format!("unknown map constructor `{other}`"))),
    };
    Ok(Some(table))
}

impl ActionDocument {
    pub fn build_action(&self) -> Result<GroupAction> {
        let space = self.space.build()?;
        let gens = self.generators.build()?;
        for label in self.maps.keys() {
            gens.index_of(label).map_err(|_| Error::Document(format!("[maps] `{label}` is not a generator")))?;
        }
        let mut maps: Vec<Option<Perm>> = vec![None; gens.len()];
        for (s, label) in gens.labels().iter().enumerate() {
            let spec = self
                .maps
                .get(label)
                .ok_or_else(|| Error::Document(format!("[maps] no map for `{label}`")))?;
            let table = match spec {
                MapSpec::Table(t) => Some(t.clone()),
                MapSpec::Constructor(c) => constructor_table(c, &space)?,
            };
            if let Some(table) = table {
                let perm = Perm::new(table).map_err(|e| Error::Document(format!("[maps] `{label}`: {e}")))?;
                maps[s] = Some(perm);
            }
        }
        // Resolve `inverse(label)` entries.
        for (s, label) in gens.labels().iter().enumerate() {
            if maps[s].is_some() {
                continue;
            }
            let MapSpec::Constructor(c) = &self.maps[label] else { unreachable!() };
            let (_, args) = call(c)?;
            let of = args[0].as_str().unwrap_or_default();
            let t = gens.index_of(of)?;
            let base = maps[t]
                .clone()
                .ok_or_else(|| Error::Document(format!("[maps] `{label}`: `{of}` is itself defined as an inverse")))?;
            maps[s] = Some(base.inverse());
        }
        let maps = maps.into_iter().map(|m| m.expect("every map resolved")).collect();
        GroupAction::new(gens, space, maps)
    }

    pub fn build_covering(&self) -> Result<Option<CoveringMap>> {
        self.covering
            .as_ref()
            .map(|c| CoveringMap::new(c.projection.clone(), c.delta0.value()?))
            .transpose()
    }
}
