//! JSON input formats for matroids and general fans.
//!
//! Matroid: `{ "name": string, "ground_size": int, one of "circuits": [[int]],
//! "graph": {"vertices": int, "edges": [[int,int]]}, "matrix": [[int]] }`, 0-based labels.
//!
//! Fan: `{ "ambient_rank": int, "cones": [ { "rays": [[int]] } ] }`, maximal cones only.

use serde::Deserialize;
use thiserror::Error;

use crate::error::Error;
use crate::fan::Fan;
use crate::matroid::Matroid;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {source}")]
    Field {
        field: &'static str,
        #[source]
        source: Error,
    },
}

impl InputError {
    fn field(field: &'static str, source: Error) -> Self {
        InputError::Field { field, source }
    }

    /// The underlying domain error, when the input parsed but described an invalid object.
    pub fn domain_error(&self) -> Option<&Error> {
        match self {
            InputError::Field { source, .. } => Some(source),
            InputError::Syntax { .. } => None,
        }
    }
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        InputError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphSpec {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatroidSpec {
    name: String,
    ground_size: usize,
    circuits: Option<Vec<Vec<usize>>>,
    graph: Option<GraphSpec>,
    matrix: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConeSpec {
    rays: Vec<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FanSpec {
    ambient_rank: usize,
    cones: Vec<ConeSpec>,
}

/// Parses a matroid description, returning its name and the matroid.
pub fn parse_matroid(json: &str) -> Result<(String, Matroid), InputError> {
    let spec: MatroidSpec = serde_json::from_str(json)?;
    let given = [
        spec.circuits.is_some(),
        spec.graph.is_some(),
        spec.matrix.is_some(),
    ];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(InputError::field(
            "circuits|graph|matrix",
            Error::InvalidInput("exactly one of circuits, graph, matrix is required".into()),
        ));
    }
    let matroid = if let Some(circuits) = spec.circuits {
        Matroid::from_circuits(spec.ground_size, &circuits)
            .map_err(|e| InputError::field("circuits", e))?
    } else if let Some(graph) = spec.graph {
        if graph.edges.len() != spec.ground_size {
            return Err(InputError::field(
                "ground_size",
                Error::InvalidInput(format!(
                    "graph has {} edges but ground_size is {}",
                    graph.edges.len(),
                    spec.ground_size
                )),
            ));
        }
        let edges: Vec<(usize, usize)> = graph.edges.iter().map(|e| (e[0], e[1])).collect();
        Matroid::from_graph(graph.vertices, &edges).map_err(|e| InputError::field("graph", e))?
    } else {
        let matrix = spec.matrix.unwrap_or_default();
        let cols = matrix.first().map_or(0, Vec::len);
        if cols != spec.ground_size {
            return Err(InputError::field(
                "ground_size",
                Error::InvalidInput(format!(
                    "matrix has {cols} columns but ground_size is {}",
                    spec.ground_size
                )),
            ));
        }
        Matroid::from_matrix(&matrix).map_err(|e| InputError::field("matrix", e))?
    };
    Ok((spec.name, matroid))
}

pub fn parse_fan(json: &str) -> Result<Fan, InputError> {
    let spec: FanSpec = serde_json::from_str(json)?;
    let cones: Vec<Vec<Vec<i64>>> = spec.cones.into_iter().map(|c| c.rays).collect();
    Fan::from_maximal_cones(spec.ambient_rank, &cones).map_err(|e| InputError::field("cones", e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parses_all_three_forms() {
        let (name, m) =
            parse_matroid(r#"{"name": "m1", "ground_size": 4, "circuits": [[0,1,2]]}"#).unwrap();
        assert_eq!(name, "m1");
        assert_eq!(m, fixtures::m1());
        let (_, k4) = parse_matroid(
            r#"{"name": "k4", "ground_size": 6,
                "graph": {"vertices": 4, "edges": [[2,3],[1,3],[0,1],[0,2],[1,2],[0,3]]}}"#,
        )
        .unwrap();
        assert_eq!(k4, fixtures::m2());
        let (_, u) =
            parse_matroid(r#"{"name": "u", "ground_size": 3, "matrix": [[1,0,1],[0,1,1]]}"#)
                .unwrap();
        assert_eq!(u, fixtures::uniform(2, 3).unwrap());
    }

    #[test]
    fn reports_errors_with_context() {
        let err =
            parse_matroid(r#"{"name": "x", "ground_size": 3, "circuits": [[1]]}"#).unwrap_err();
        assert_eq!(
            err.domain_error(),
            Some(&Error::LoopDetected { element: 1 })
        );
        assert!(err.to_string().starts_with("field `circuits`"));

        let err = parse_matroid("{\"name\": \"x\",\n \"ground_size\": \"three\"}").unwrap_err();
        assert!(matches!(err, InputError::Syntax { line: 2, .. }), "{err}");

        let err = parse_matroid(r#"{"name": "x", "ground_size": 3}"#).unwrap_err();
        assert!(err.to_string().contains("exactly one"));

        let err =
            parse_matroid(r#"{"name": "x", "ground_size": 2, "matrix": [[1,0,1]]}"#).unwrap_err();
        assert!(err.to_string().contains("ground_size"));
    }

    #[test]
    fn parses_fans() {
        let fan = parse_fan(r#"{"ambient_rank": 2, "cones": [{"rays": [[1,0],[0,1]]}]}"#).unwrap();
        assert_eq!(fan.max_dimension(), 2);
        assert!(parse_fan(r#"{"ambient_rank": 2, "cones": [{"rays": [[1,0,0]]}]}"#).is_err());
    }
}
