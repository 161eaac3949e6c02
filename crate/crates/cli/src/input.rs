//! Spec and parameter files.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use morphoseq::{Gaps, MorphicSpec, RawSpec};
use serde::de::DeserializeOwned;
use serde::Deserialize;

#[derive(Debug)]
pub enum InputError {
    Io { path: PathBuf, source: std::io::Error },
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        field: String,
        message: String,
    },
    Invalid { path: PathBuf, source: morphoseq::Error },
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            InputError::Parse {
                path,
                line,
                column,
                field,
                message,
            } => write!(
                f,
                "{}:{line}:{column}: at `{field}`: {message}",
                path.display()
            ),
            InputError::Invalid { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl std::error::Error for InputError {}

impl InputError {
    pub fn core(&self) -> Option<&morphoseq::Error> {
        match self {
            InputError::Invalid { source, .. } => Some(source),
            _ => None,
        }
    }
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let text = fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_json(path, &text)
}

fn parse_json<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, InputError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        InputError::Parse {
            path: path.to_path_buf(),
            line: inner.line(),
            column: inner.column(),
            field,
            message: inner.to_string(),
        }
    })?;
    de.end().map_err(|e| InputError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        field: ".".into(),
        message: e.to_string(),
    })?;
    Ok(value)
}

/// Reads and validates a spec file.
pub fn parse_spec_file(path: &Path) -> Result<MorphicSpec, InputError> {
    let raw: RawSpec = load_json(path)?;
    raw.validate().map_err(|source| InputError::Invalid {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StaircaseParams {
    pub gaps: Gaps,
    pub limit: usize,
    pub witness_len: usize,
    pub max_depth: usize,
}

pub fn parse_staircase_file(path: &Path) -> Result<StaircaseParams, InputError> {
    let params: StaircaseParams = load_json(path)?;
    params.gaps.validate().map_err(|source| InputError::Invalid {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<MorphicSpec, InputError> {
        let raw: RawSpec = parse_json(Path::new("t.json"), text)?;
        raw.validate().map_err(|source| InputError::Invalid {
            path: "t.json".into(),
            source,
        })
    }

    #[test]
    fn reads_fib() {
        let spec = parse(r#"{"alphabet":["0","1"],"start":"0","rules":{"0":["0","1"],"1":["0"]}}"#)
            .unwrap();
        assert_eq!(spec.render_rules(), "0 -> 01, 1 -> 0");
    }

    #[test]
    fn type_error_carries_position_and_field() {
        let text = "{\n  \"alphabet\": [\"0\", \"1\"],\n  \"start\": \"0\",\n  \"rules\": {\"0\": [\"0\", 1]}\n}";
        let msg = parse(text).unwrap_err().to_string();
        assert!(msg.starts_with("t.json:4:"), "{msg}");
        assert!(msg.contains("rules.0[1]"), "{msg}");
    }

    #[test]
    fn unknown_field_is_rejected() {
        let text = r#"{"alphabet":["0"],"start":"0","rules":{"0":["0","0"]},"extra":1}"#;
        let msg = parse(text).unwrap_err().to_string();
        assert!(msg.contains("extra"), "{msg}");
    }

    #[test]
    fn unknown_symbol_names_the_field() {
        let text = r#"{"alphabet":["0","1"],"start":"0","rules":{"0":["0","2"],"1":["0"]}}"#;
        let err = parse(text).unwrap_err();
        assert!(matches!(
            err.core(),
            Some(morphoseq::Error::UnknownSymbol { name, context }) if name == "2" && context == "rules.0[1]"
        ));
    }

    #[test]
    fn trailing_garbage() {
        let text = r#"{"alphabet":["0"],"start":"0","rules":{"0":["0","0"]}} x"#;
        assert!(matches!(parse(text), Err(InputError::Parse { .. })));
    }
}
