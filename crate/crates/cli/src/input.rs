//! Reading JSON arguments: inline text, a file path, or `-` for stdin.
//! Module documents may name their algebra by file path.

use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde_json::Value;

use mathieu_core::exactfield::{Field, FieldTag, Subspace, Vector};
use mathieu_core::io::{field_of, subspace_from_json, vector_from_json_len};

/// A parsed argument and the directory relative references resolve from.
pub struct Doc {
    pub value: Value,
    pub base: PathBuf,
}

pub fn read(arg: &str) -> Result<Doc> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') || t.starts_with('"') || t.parse::<f64>().is_ok() {
        let value = serde_json::from_str(t).with_context(|| format!("inline JSON {arg:?}"))?;
        return Ok(Doc { value, base: PathBuf::from(".") });
    }
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    };
    let value = serde_json::from_str(&text).with_context(|| format!("parsing {arg}"))?;
    let base = Path::new(arg).parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
    Ok(Doc { value, base })
}

/// Replaces a string-valued `"algebra"` key by the document it points at.
pub fn inline_algebra(doc: Doc) -> Result<Value> {
    let mut v = doc.value;
    if let Some(Value::String(path)) = v.get("algebra") {
        let p = doc.base.join(path);
        let text = std::fs::read_to_string(&p).with_context(|| format!("reading algebra {}", p.display()))?;
        let alg: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?;
        v["algebra"] = alg;
    }
    Ok(v)
}

/// The field a command runs over: the document's, else the flag's, else
/// `default`. A conflict between document and flag is an error.
pub fn resolve_field(doc: Option<&Value>, flag: Option<FieldTag>, default: Option<FieldTag>) -> Result<FieldTag> {
    let from_doc = match doc {
        Some(v) if v.get("field").is_some() || v.get("algebra").is_some() => Some(field_of(v)?),
        _ => None,
    };
    match (from_doc, flag) {
        (Some(d), Some(f)) if d != f => bail!("document is over {d} but --field says {f}"),
        (Some(d), _) => Ok(d),
        (None, Some(f)) => Ok(f),
        (None, None) => default.ok_or_else(|| anyhow!("no field given: pass --field or put \"field\" in the document")),
    }
}

/// `{"ambient", "basis"}` or a bare list of spanning vectors.
pub fn subspace<F: Field>(field: &F, v: &Value, ambient: usize) -> Result<Subspace<F>> {
    let s = match v {
        Value::Array(rows) => {
            let rows = rows.iter().map(|r| vector_from_json_len(field, r, ambient)).collect::<mathieu_core::Result<Vec<_>>>()?;
            Subspace::span(field.clone(), ambient, &rows)?
        }
        _ => subspace_from_json(field, v)?,
    };
    if s.ambient() != ambient {
        bail!("subspace lives in dimension {}, expected {ambient}", s.ambient());
    }
    Ok(s)
}

pub fn vector<F: Field>(field: &F, v: &Value, len: usize) -> Result<Vector<F>> {
    Ok(vector_from_json_len(field, v, len)?)
}
