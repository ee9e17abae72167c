//! The `.ntri` JSON format and corpus manifests (JSON lines).
//!
//! A `.ntri` object has keys `n`, `outer` (clockwise), `rotation` (vertex id
//! as a string key, neighbors clockwise), and optionally `coords` (same
//! keys, `[x, y]`) and `labels` (one per vertex). Unknown keys are errors.
//! A manifest line is `{"index", "seed", "params", "graph"}` with `graph` a
//! `.ntri` object.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::graph::{Label, NearTriangulation, RawEmbedding, ValidationError};

#[derive(Clone, Debug, PartialEq, Error, Serialize)]
pub enum FormatError {
    #[error("line {line}: malformed JSON: {msg}")]
    Json { line: usize, msg: String },
    #[error("line {line}: bad vertex key {key:?}")]
    BadKey { line: usize, key: String },
    #[error("line {line}: {msg}")]
    Shape { line: usize, msg: String },
    #[error("line {line}: not a near-triangulation: {errors:?}")]
    Invalid { line: usize, errors: Vec<ValidationError> },
    #[error("input holds no instances")]
    Empty,
}

/// The on-disk form of one instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NtriFile {
    pub n: usize,
    pub outer: Vec<usize>,
    pub rotation: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<BTreeMap<String, [f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Label>>,
}

/// A parsed instance with its optional drawing coordinates.
#[derive(Clone, Debug)]
pub struct Instance {
    pub index: usize,
    pub graph: NearTriangulation,
    pub coords: Option<Vec<[f64; 2]>>,
}

/// One line of a corpus manifest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    pub index: usize,
    pub seed: u64,
    pub params: Value,
    pub graph: NtriFile,
}

fn keyed<T>(n: usize, map: &BTreeMap<String, T>, line: usize, what: &str) -> Result<Vec<Option<T>>, FormatError>
where
    T: Clone,
{
    let mut out = vec![None; n];
    for (k, v) in map {
        let id: usize = k.parse().map_err(|_| FormatError::BadKey { line, key: k.clone() })?;
        if id >= n || k != &id.to_string() {
            return Err(FormatError::BadKey { line, key: k.clone() });
        }
        out[id] = Some(v.clone());
    }
    if what == "rotation" {
        if let Some(missing) = out.iter().position(Option::is_none) {
            return Err(FormatError::Shape { line, msg: format!("rotation has no entry for vertex {missing}") });
        }
    }
    Ok(out)
}

impl NtriFile {
    pub fn from_graph(g: &NearTriangulation, coords: Option<&[[f64; 2]]>) -> Self {
        let raw = g.to_raw();
        let identity = g.labels().iter().enumerate().all(|(i, &l)| l == i as Label);
        NtriFile {
            n: raw.n,
            outer: raw.outer,
            rotation: raw.rotation.into_iter().enumerate().map(|(i, r)| (i.to_string(), r)).collect(),
            coords: coords.map(|c| c.iter().enumerate().map(|(i, &p)| (i.to_string(), p)).collect()),
            labels: (!identity).then(|| g.labels().to_vec()),
        }
    }

    /// Validates into a graph; `line` only decorates errors.
    pub fn into_instance(self, index: usize, line: usize) -> Result<Instance, FormatError> {
        let n = self.n;
        let rotation = keyed(n, &self.rotation, line, "rotation")?.into_iter().map(Option::unwrap).collect();
        let coords = match &self.coords {
            None => None,
            Some(map) => {
                let c = keyed(n, map, line, "coords")?;
                if c.iter().any(Option::is_none) {
                    return Err(FormatError::Shape { line, msg: "coords must cover every vertex".into() });
                }
                Some(c.into_iter().map(Option::unwrap).collect())
            }
        };
        if let Some(l) = &self.labels {
            if l.len() != n {
                return Err(FormatError::Shape { line, msg: format!("{} labels for {n} vertices", l.len()) });
            }
        }
        let graph = NearTriangulation::validate(RawEmbedding { n, rotation, outer: self.outer, labels: self.labels })
            .map_err(|errors| FormatError::Invalid { line, errors })?;
        Ok(Instance { index, graph, coords })
    }
}

fn json_err(line: usize) -> impl Fn(serde_json::Error) -> FormatError {
    move |e| FormatError::Json { line, msg: e.to_string() }
}

/// Parses a single `.ntri` document.
pub fn parse_ntri(text: &str) -> Result<Instance, FormatError> {
    let f: NtriFile = serde_json::from_str(text).map_err(json_err(1))?;
    f.into_instance(0, 1)
}

pub fn write_ntri(g: &NearTriangulation) -> String {
    serde_json::to_string(&NtriFile::from_graph(g, None)).expect("serializable")
}

/// Parses a manifest: one entry per non-blank line.
pub fn parse_manifest(text: &str) -> Result<Vec<(ManifestEntry, Instance)>, FormatError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let e: ManifestEntry = serde_json::from_str(line).map_err(json_err(i + 1))?;
        let inst = e.graph.clone().into_instance(e.index, i + 1)?;
        out.push((e, inst));
    }
    Ok(out)
}

/// Reads either a single `.ntri` document or a manifest, sorted by index.
pub fn read_instances(text: &str) -> Result<Vec<Instance>, FormatError> {
    let trimmed = text.trim_start();
    if trimmed.is_empty() {
        return Err(FormatError::Empty);
    }
    // a manifest line always starts with one of its own keys
    let first: Result<Value, _> = serde_json::from_str(text.lines().find(|l| !l.trim().is_empty()).unwrap());
    let is_manifest = matches!(&first, Ok(Value::Object(m)) if m.contains_key("graph"));
    let mut v =
        if is_manifest { parse_manifest(text)?.into_iter().map(|(_, i)| i).collect() } else { vec![parse_ntri(text)?] };
    v.sort_by_key(|i| i.index);
    Ok(v)
}

pub fn manifest_line(index: usize, seed: u64, params: Value, g: &NearTriangulation) -> String {
    let e = ManifestEntry { index, seed, params, graph: NtriFile::from_graph(g, None) };
    serde_json::to_string(&e).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{irreducible7, k4};
    use crate::generators::random_near_triangulation;

    #[test]
    fn k4_document() {
        let text = r#"{"n":4,"outer":[0,1,2],"rotation":{"0":[1,3,2],"1":[2,3,0],"2":[0,3,1],"3":[0,1,2]}}"#;
        let inst = parse_ntri(text).unwrap();
        assert_eq!(inst.graph.n(), 4);
        assert_eq!(inst.graph.m(), 1);
        let back = parse_ntri(&write_ntri(&inst.graph)).unwrap();
        assert_eq!(back.graph.to_raw(), inst.graph.to_raw());
        assert_eq!(back.graph.to_raw(), k4().to_raw());
    }

    #[test]
    fn rejects_unknown_keys_and_bad_ids() {
        let base = write_ntri(&k4());
        let extra = base.replacen('{', r#"{"weights":[1],"#, 1);
        assert!(matches!(parse_ntri(&extra), Err(FormatError::Json { .. })));
        let bad = base.replace(r#""3":"#, r#""7":"#);
        assert!(matches!(parse_ntri(&bad), Err(FormatError::BadKey { .. })));
        let missing = r#"{"n":4,"outer":[0,1,2],"rotation":{"0":[1,3,2],"1":[2,3,0],"2":[0,3,1]}}"#;
        assert!(matches!(parse_ntri(missing), Err(FormatError::Shape { .. })));
        let not_planar = r#"{"n":4,"outer":[0,1,2],"rotation":{"0":[1,2,3],"1":[2,3,0],"2":[0,3,1],"3":[0,1,2]}}"#;
        assert!(matches!(parse_ntri(not_planar), Err(FormatError::Invalid { .. })));
        assert_eq!(read_instances("  \n").unwrap_err(), FormatError::Empty);
    }

    #[test]
    fn coords_and_labels_survive() {
        let g = irreducible7();
        let coords: Vec<[f64; 2]> = (0..7).map(|i| [i as f64, -(i as f64)]).collect();
        let text = serde_json::to_string(&NtriFile::from_graph(&g, Some(&coords))).unwrap();
        let inst = parse_ntri(&text).unwrap();
        assert_eq!(inst.coords.unwrap(), coords);
        let (h, _) = g.add_ear(0, 4, 100).unwrap();
        let back = parse_ntri(&write_ntri(&h)).unwrap().graph;
        assert_eq!(back.labels(), h.labels());
    }

    #[test]
    fn manifest_round_trip_sorted() {
        let lines: Vec<String> = (0..5u64)
            .rev()
            .map(|s| {
                let g = random_near_triangulation(12, 3, s).unwrap();
                manifest_line(s as usize, s, serde_json::json!({"kind": "ntri", "n": 12, "m": 3}), &g)
            })
            .collect();
        let v = read_instances(&lines.join("\n")).unwrap();
        assert_eq!(v.iter().map(|i| i.index).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4]);
        for inst in v {
            let g = random_near_triangulation(12, 3, inst.index as u64).unwrap();
            assert_eq!(inst.graph.to_raw(), g.to_raw());
        }
    }
}
