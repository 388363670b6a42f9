//! Algebra definition files.
//!
//! The on-disk format is a JSON document:
//!
//! ```json
//! {
//!   "name": "g8",
//!   "rank": 2,
//!   "generators": [ {"name": "L+", "grade": [0, 0]}, ... ],
//!   "brackets": [
//!     {"left": "R", "right": "L+", "result": [{"gen": "L+", "coeff": "2"}]},
//!     ...
//!   ]
//! }
//! ```
//!
//! Omitted brackets are zero. Coefficients are exact rational literals like
//! `-1/2`. Generators are re-sorted into the standard grade order on load,
//! recording the permutation on the returned spec.

use crate::algebra::{AlgebraBuilder, AlgebraSpec};
use crate::grade::Grade;
use crate::scalar::{format_rational, parse_rational, Q};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("semantic error: {0}")]
    Semantic(String),
}

#[derive(Serialize, Deserialize)]
struct FileSpec {
    name: String,
    rank: usize,
    generators: Vec<FileGenerator>,
    #[serde(default)]
    brackets: Vec<FileBracket>,
}

#[derive(Serialize, Deserialize)]
struct FileGenerator {
    name: String,
    grade: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct FileBracket {
    left: String,
    right: String,
    result: Vec<FileTerm>,
}

#[derive(Serialize, Deserialize)]
struct FileTerm {
    gen: String,
    coeff: String,
}

/// Parses an algebra definition document.
pub fn parse_spec(text: &str) -> Result<AlgebraSpec, ParseError> {
    let file: FileSpec = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if file.rank == 0 {
        return Err(ParseError::Semantic("rank must be positive".into()));
    }
    let mut builder = AlgebraBuilder::new(&file.name, file.rank);
    for g in &file.generators {
        let grade = Grade::new(&g.grade).map_err(ParseError::Semantic)?;
        if grade.rank() != file.rank {
            return Err(ParseError::Semantic(format!(
                "generator {:?} has grade of rank {}, expected {}",
                g.name,
                grade.rank(),
                file.rank
            )));
        }
        builder
            .generator(&g.name, grade)
            .map_err(|e| ParseError::Semantic(e.to_string()))?;
    }
    for brk in &file.brackets {
        let mut terms: Vec<(&str, Q)> = Vec::with_capacity(brk.result.len());
        for term in &brk.result {
            let coeff = parse_rational(&term.coeff).map_err(ParseError::Semantic)?;
            terms.push((term.gen.as_str(), coeff));
        }
        builder
            .bracket(&brk.left, &brk.right, &terms)
            .map_err(|e| ParseError::Semantic(e.to_string()))?;
    }
    // A generator literally named `R` is adopted as the grading generator.
    let _ = builder.grading_generator("R");
    Ok(builder.build())
}

/// Serializes a spec into the same document format; `parse_spec` of the
/// output reproduces the spec exactly.
pub fn serialize_spec(spec: &AlgebraSpec) -> String {
    let file = FileSpec {
        name: spec.name.clone(),
        rank: spec.rank,
        generators: spec
            .generators()
            .iter()
            .map(|g| FileGenerator {
                name: g.name.clone(),
                grade: g.grade.digits(),
            })
            .collect(),
        brackets: spec
            .stored_brackets()
            .map(|(&(a, b), entries)| FileBracket {
                left: spec.gen_name(a).to_string(),
                right: spec.gen_name(b).to_string(),
                result: entries
                    .iter()
                    .map(|(c, q)| FileTerm {
                        gen: spec.gen_name(*c).to_string(),
                        coeff: format_rational(q),
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializing an algebra spec")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::builtin;

    #[test]
    fn round_trip_builtins() {
        for name in ["g8", "g10", "osp12", "sl2"] {
            let spec = builtin(name).unwrap();
            let text = serialize_spec(&spec);
            let parsed = parse_spec(&text).unwrap();
            assert_eq!(parsed, spec, "{name} does not round-trip");
        }
    }

    #[test]
    fn shipped_definition_files_match_builtins() {
        for name in ["g8", "g10", "osp12", "sl2"] {
            let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../algebras");
            let text = std::fs::read_to_string(format!("{path}/{name}.json")).unwrap();
            let parsed = parse_spec(&text).unwrap();
            assert_eq!(parsed, builtin(name).unwrap(), "algebras/{name}.json");
        }
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = parse_spec("{ \"name\": ").unwrap_err();
        match err {
            ParseError::Syntax { line, .. } => assert!(line >= 1),
            other => panic!("expected syntax error, got {other}"),
        }
    }

    #[test]
    fn grading_violation_is_semantic() {
        let text = r#"{
            "name": "bad",
            "rank": 2,
            "generators": [
                {"name": "x", "grade": [0, 0]},
                {"name": "y", "grade": [0, 1]}
            ],
            "brackets": [
                {"left": "x", "right": "x", "result": [{"gen": "y", "coeff": "1"}]}
            ]
        }"#;
        match parse_spec(text).unwrap_err() {
            ParseError::Semantic(msg) => assert!(msg.contains("grading"), "{msg}"),
            other => panic!("expected semantic error, got {other}"),
        }
    }

    #[test]
    fn generators_resorted_to_standard_order() {
        let text = r#"{
            "name": "perm",
            "rank": 2,
            "generators": [
                {"name": "f", "grade": [0, 1]},
                {"name": "x", "grade": [0, 0]},
                {"name": "t", "grade": [1, 1]}
            ],
            "brackets": []
        }"#;
        let spec = parse_spec(text).unwrap();
        let names: Vec<&str> = spec.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, vec!["x", "t", "f"]);
        assert_eq!(spec.input_permutation, Some(vec![1, 2, 0]));
    }

    #[test]
    fn duplicate_bracket_rejected() {
        let text = r#"{
            "name": "dup",
            "rank": 1,
            "generators": [
                {"name": "x", "grade": [0]},
                {"name": "y", "grade": [0]},
                {"name": "z", "grade": [0]}
            ],
            "brackets": [
                {"left": "x", "right": "y", "result": [{"gen": "z", "coeff": "1"}]},
                {"left": "y", "right": "x", "result": [{"gen": "z", "coeff": "-1"}]}
            ]
        }"#;
        assert!(matches!(parse_spec(text), Err(ParseError::Semantic(_))));
    }
}
