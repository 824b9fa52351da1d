//! JSON persistence. Every document is an envelope carrying the schema
//! version, the orientation convention, the input that produced it and the
//! payload. Bare payloads are accepted on input as well.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::plabic::{PlabicGraph, PlabicTiling};
use crate::subset::Collection;
use crate::weave::WeaveGraph;

pub const SCHEMA: &str = "wsweave/1";

/// Marked points `1..n` run counterclockwise and strands turn right at black
/// vertices, so the strand from `i` ends at `i - k`.
pub const ORIENTATION: &str = "counterclockwise";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArtifactKind {
    Feasibility,
    Collection,
    Trace,
    Verification,
    Cliques,
    Tiling,
    Graph,
    Shift,
    Weave,
    Pipeline,
    Oracle,
    Sweep,
}

/// The job a document came from, echoed into its envelope.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct JobSpec {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
    /// Orbit representatives as a comma-separated permutation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub layer_colors: Vec<String>,
    pub seedless: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T = Value> {
    pub schema: String,
    pub tool_version: String,
    pub orientation: String,
    pub kind: ArtifactKind,
    pub input: JobSpec,
    pub payload: T,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(kind: ArtifactKind, input: JobSpec, payload: T) -> Self {
        Envelope {
            schema: SCHEMA.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            orientation: ORIENTATION.to_string(),
            kind,
            input,
            payload,
            certificates: None,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        to_json(self)
    }
}

impl Envelope<Value> {
    pub fn payload_as<T: DeserializeOwned>(&self) -> Result<T> {
        serde_json::from_value(self.payload.clone()).map_err(|e| Error::Schema(e.to_string()))
    }
}

pub fn to_json<T: Serialize + ?Sized>(x: &T) -> Result<String> {
    serde_json::to_string_pretty(x).map_err(|e| Error::Schema(e.to_string()))
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
}

/// Parses an envelope and checks its schema and orientation.
pub fn parse_envelope(text: &str) -> Result<Envelope> {
    let env: Envelope = from_json(text)?;
    if env.schema != SCHEMA {
        return Err(Error::Schema(format!("schema {:?}, expected {SCHEMA:?}", env.schema)));
    }
    if env.orientation != ORIENTATION {
        return Err(Error::Schema(format!("orientation {:?} is not supported", env.orientation)));
    }
    Ok(env)
}

/// The artifacts inside a pipeline report.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct PipelineArtifacts {
    pub collection: Collection,
    pub tiling: PlabicTiling,
    pub graph: PlabicGraph,
    pub trivalent: PlabicGraph,
    pub layers: Vec<PlabicGraph>,
    pub weave: Option<WeaveGraph>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Artifact {
    Collection(Collection),
    Tiling(PlabicTiling),
    Graph(PlabicGraph),
    Weave(WeaveGraph),
    Pipeline(Box<PipelineArtifacts>),
}

impl Artifact {
    pub fn kind(&self) -> ArtifactKind {
        match self {
            Artifact::Collection(_) => ArtifactKind::Collection,
            Artifact::Tiling(_) => ArtifactKind::Tiling,
            Artifact::Graph(_) => ArtifactKind::Graph,
            Artifact::Weave(_) => ArtifactKind::Weave,
            Artifact::Pipeline(_) => ArtifactKind::Pipeline,
        }
    }
}

fn from_value<T: DeserializeOwned>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Schema(e.to_string()))
}

/// Reads an artifact from an envelope, or from a bare payload recognised by
/// its fields.
pub fn load_artifact(text: &str) -> Result<Artifact> {
    let value: Value = from_json(text)?;
    let (kind, payload) = if value.get("schema").is_some() {
        let env = parse_envelope(text)?;
        (Some(env.kind), env.payload)
    } else {
        (None, value)
    };
    let has = |f: &str| payload.get(f).is_some();
    let kind = match kind {
        Some(k) => k,
        None if has("members") => ArtifactKind::Collection,
        None if has("tiling") && has("collection") => ArtifactKind::Pipeline,
        None if has("faces") && has("edges") => ArtifactKind::Tiling,
        None if has("rotations") => ArtifactKind::Graph,
        None if has("layer") && has("vertices") => ArtifactKind::Weave,
        None => return Err(Error::Schema("cannot tell what kind of artifact this is".into())),
    };
    match kind {
        ArtifactKind::Collection => from_value(payload).map(Artifact::Collection),
        ArtifactKind::Tiling => from_value(payload).map(Artifact::Tiling),
        ArtifactKind::Graph => from_value(payload).map(Artifact::Graph),
        ArtifactKind::Weave => from_value(payload).map(Artifact::Weave),
        ArtifactKind::Pipeline => from_value(payload).map(|p| Artifact::Pipeline(Box::new(p))),
        // A shift result carries its graph under `graph`.
        ArtifactKind::Shift => match payload.get("graph") {
            Some(g) => from_value(g.clone()).map(Artifact::Graph),
            None => Err(Error::Schema("shift payload without a graph".into())),
        },
        other => Err(Error::Unsupported(format!("{other:?} payloads are not artifacts"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plabic::{build_tiling, dual_plabic_graph};

    fn golden() -> Collection {
        Collection::parse("123 234 345 456 156 126 125 245 124 145", 6, 3).unwrap()
    }

    #[test]
    fn collection_round_trip_is_byte_stable() {
        let env = Envelope::new(ArtifactKind::Collection, JobSpec::default(), golden());
        let text = env.to_json().unwrap();
        let back = parse_envelope(&text).unwrap();
        let d: Collection = back.payload_as().unwrap();
        assert_eq!(d, golden());
        assert_eq!(Envelope::new(ArtifactKind::Collection, JobSpec::default(), d).to_json().unwrap(), text);
    }

    #[test]
    fn duplicate_member_is_rejected() {
        let text = r#"{"n": 6, "k": 3, "members": [[1,2,3],[2,3,4],[1,2,3]]}"#;
        assert!(from_json::<Collection>(text).is_err());
    }

    #[test]
    fn tiling_and_graph_round_trip() {
        let t = build_tiling(&golden()).unwrap();
        let g = dual_plabic_graph(&t).unwrap();
        assert_eq!(from_json::<PlabicTiling>(&to_json(&t).unwrap()).unwrap(), t);
        assert_eq!(from_json::<PlabicGraph>(&to_json(&g).unwrap()).unwrap(), g);
        assert!(matches!(load_artifact(&to_json(&t).unwrap()).unwrap(), Artifact::Tiling(_)));
        assert!(matches!(load_artifact(&to_json(&g).unwrap()).unwrap(), Artifact::Graph(_)));
    }

    #[test]
    fn schema_mismatch() {
        let mut env = Envelope::new(ArtifactKind::Collection, JobSpec::default(), golden());
        env.schema = "wsweave/0".into();
        assert!(matches!(parse_envelope(&env.to_json().unwrap()), Err(Error::Schema(_))));
    }

    #[test]
    fn tampered_tiling_is_rejected() {
        let t = build_tiling(&golden()).unwrap();
        let mut v: Value = serde_json::to_value(&t).unwrap();
        v["edges"].as_array_mut().unwrap().pop();
        assert!(serde_json::from_value::<PlabicTiling>(v).is_err());
    }
}
