//! JSON manifests describing a framed space, its complex structure and
//! optionally a distribution and named auxiliary fields.
//!
//! Scalars are strings in the expression grammar of
//! [`TrigScalar::parse`](crate::trigring::TrigScalar::parse); vectors are
//! maps from frame names to scalars.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::trigring::rational::{parse_rational, to_pq};
use crate::trigring::{Frequency, TrigScalar};

use super::{ComplexStructure, CoordSpec, FrameError, FramedSpace, VecField, DIM};

/// Vector as `{frame name: scalar expression}`; absent names are zero.
pub type VectorEntry = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordinateEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<Frequency>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub pair: [String; 2],
    pub value: VectorEntry,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub frame: [String; DIM],
    #[serde(default)]
    pub coordinates: Vec<CoordinateEntry>,
    /// Nonzero brackets `[E_i, E_j]`, each pair listed once.
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    /// `E_i(x_j)` as `{frame: {coordinate: scalar}}`.
    #[serde(default)]
    pub derivations: BTreeMap<String, BTreeMap<String, String>>,
    /// `J E_i` for every frame field.
    pub complex_structure: BTreeMap<String, VectorEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distribution: Option<[VectorEntry; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vectors: BTreeMap<String, VectorEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, String>,
}

/// A manifest turned into checked objects.
#[derive(Clone, Debug)]
pub struct LoadedManifest {
    pub id: String,
    pub space: FramedSpace,
    pub j: ComplexStructure,
    pub distribution: Option<[VecField; 2]>,
    pub vectors: BTreeMap<String, VecField>,
    pub parameters: BTreeMap<String, BigRational>,
}

fn field_err(field: impl Into<String>, message: impl ToString) -> FrameError {
    FrameError::Manifest {
        field: field.into(),
        message: message.to_string(),
    }
}

impl Manifest {
    pub fn from_json(text: &str) -> Result<Self, FrameError> {
        serde_json::from_str(text).map_err(|e| FrameError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("manifest serializes");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }

    pub fn load(&self) -> Result<LoadedManifest, FrameError> {
        let frame: [&str; DIM] = std::array::from_fn(|i| self.frame[i].as_str());
        let coords = self
            .coordinates
            .iter()
            .map(|c| CoordSpec::new(&c.name, c.period.clone()))
            .collect();
        let mut space = FramedSpace::new(frame, coords).map_err(|e| field_err("frame", e))?;
        let names = space.coord_names().to_vec();

        let vector = |field: &str, entry: &VectorEntry, space: &FramedSpace| {
            let mut v = VecField::zero();
            for (name, expr) in entry {
                let i = space
                    .frame_index(name)
                    .ok_or_else(|| field_err(field, format!("unknown frame field '{name}'")))?;
                let s = TrigScalar::parse(expr, &names)
                    .map_err(|e| field_err(format!("{field}.{name}"), e))?;
                v.set(i, s);
            }
            Ok::<_, FrameError>(v)
        };

        let mut seen = std::collections::BTreeSet::new();
        for (n, b) in self.brackets.iter().enumerate() {
            let field = format!("brackets[{n}]");
            let idx = |name: &String| {
                space.frame_index(name).ok_or_else(|| {
                    field_err(
                        format!("{field}.pair"),
                        format!("unknown frame field '{name}'"),
                    )
                })
            };
            let (i, j) = (idx(&b.pair[0])?, idx(&b.pair[1])?);
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(field_err(format!("{field}.pair"), "pair listed twice"));
            }
            let v = vector(&format!("{field}.value"), &b.value, &space)?;
            space
                .set_bracket(i, j, v)
                .map_err(|e| field_err(&field, e))?;
        }
        for (frame_name, row) in &self.derivations {
            let i = space.frame_index(frame_name).ok_or_else(|| {
                field_err("derivations", format!("unknown frame field '{frame_name}'"))
            })?;
            for (coord, expr) in row {
                let field = format!("derivations.{frame_name}.{coord}");
                let j = space
                    .coord_index(coord)
                    .ok_or_else(|| field_err(&field, format!("unknown coordinate '{coord}'")))?;
                let s = TrigScalar::parse(expr, &names).map_err(|e| field_err(&field, e))?;
                space
                    .set_derivation(i, j, s)
                    .map_err(|e| field_err(&field, e))?;
            }
        }

        let mut columns: [VecField; DIM] = Default::default();
        for (i, col) in columns.iter_mut().enumerate() {
            let name = &self.frame[i];
            let entry = self.complex_structure.get(name).ok_or_else(|| {
                field_err("complex_structure", format!("missing image of '{name}'"))
            })?;
            *col = vector(&format!("complex_structure.{name}"), entry, &space)?;
        }
        for name in self.complex_structure.keys() {
            if space.frame_index(name).is_none() {
                return Err(field_err(
                    "complex_structure",
                    format!("unknown frame field '{name}'"),
                ));
            }
        }
        let j = ComplexStructure::new(columns).map_err(|e| field_err("complex_structure", e))?;

        let distribution = match &self.distribution {
            Some([a, b]) => Some([
                vector("distribution[0]", a, &space)?,
                vector("distribution[1]", b, &space)?,
            ]),
            None => None,
        };
        let mut vectors = BTreeMap::new();
        for (k, entry) in &self.vectors {
            vectors.insert(k.clone(), vector(&format!("vectors.{k}"), entry, &space)?);
        }
        let mut parameters = BTreeMap::new();
        for (k, v) in &self.parameters {
            let r = parse_rational(v).ok_or_else(|| {
                field_err(format!("parameters.{k}"), format!("not a rational: '{v}'"))
            })?;
            parameters.insert(k.clone(), r);
        }
        Ok(LoadedManifest {
            id: self.id.clone(),
            space,
            j,
            distribution,
            vectors,
            parameters,
        })
    }

    /// Inverse of [`load`](Self::load) up to normal form.
    pub fn from_parts(
        id: &str,
        space: &FramedSpace,
        j: &ComplexStructure,
        distribution: Option<&[VecField; 2]>,
        vectors: &BTreeMap<String, VecField>,
        parameters: &BTreeMap<String, BigRational>,
    ) -> Self {
        let names = space.coord_names();
        let frame = space.frame_names();
        let vector = |v: &VecField| -> VectorEntry {
            (0..DIM)
                .filter(|&i| !v[i].is_identically_zero())
                .map(|i| (frame[i].clone(), v[i].display(names).to_string()))
                .collect()
        };
        let mut brackets = Vec::new();
        for i in 0..DIM {
            for j in (i + 1)..DIM {
                let b = space.frame_bracket(i, j);
                if !b.is_zero() {
                    brackets.push(BracketEntry {
                        pair: [frame[i].clone(), frame[j].clone()],
                        value: vector(b),
                    });
                }
            }
        }
        let mut derivations = BTreeMap::new();
        for (i, f) in frame.iter().enumerate() {
            let row: BTreeMap<String, String> = names
                .iter()
                .enumerate()
                .filter(|(c, _)| !space.derivation(i, *c).is_identically_zero())
                .map(|(c, n)| (n.clone(), space.derivation(i, c).display(names).to_string()))
                .collect();
            if !row.is_empty() {
                derivations.insert(f.clone(), row);
            }
        }
        Manifest {
            id: id.to_string(),
            description: None,
            frame: std::array::from_fn(|i| frame[i].clone()),
            coordinates: space
                .coords()
                .iter()
                .map(|c| CoordinateEntry {
                    name: c.name.clone(),
                    period: c.period.clone(),
                })
                .collect(),
            brackets,
            derivations,
            complex_structure: (0..DIM)
                .map(|i| (frame[i].clone(), vector(j.column(i))))
                .collect(),
            distribution: distribution.map(|[a, b]| [vector(a), vector(b)]),
            vectors: vectors
                .iter()
                .map(|(k, v)| (k.clone(), vector(v)))
                .collect(),
            parameters: parameters
                .iter()
                .map(|(k, v)| (k.clone(), to_pq(v)))
                .collect(),
        }
    }
}
