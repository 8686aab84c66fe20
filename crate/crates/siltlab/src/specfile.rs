//! Declarative algebra description files (TOML).
//!
//! A file describes one finite-dimensional path algebra over a prime field:
//!
//! ```toml
//! field_modulus = 2
//! vertices = 2
//! arrows = ["0 -> 1 : a"]
//! relations = []            # each entry is a list of arrow labels, composed
//!                           # left to right
//! ```
//!
//! Nakayama algebras may instead be given by their Kupisch series:
//!
//! ```toml
//! field_modulus = 2
//! [nakayama]
//! series = [2, 1]
//! cyclic = false
//! ```
//!
//! Non-Nakayama algebras need an explicit indecomposable list before the
//! module-category machinery can run; it is supplied inline:
//!
//! ```toml
//! [[declared_indecomposables]]
//! name = "S0"
//! dims = [1, 0]
//! [declared_indecomposables.maps]
//! a = [[0]]                 # rows = dim at the arrow target,
//!                           # cols = dim at the arrow source; omitted arrows
//!                           # get the zero matrix
//! ```
//!
//! Syntax errors surface with the line/column reported by the TOML parser;
//! structural errors (bad arrow syntax, unknown labels) cite the offending
//! line of the source text.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::algebra::{build_path_algebra, nakayama, Algebra, DeclaredModule, Quiver};
use crate::error::{Error, Result};
use crate::linalg::Mat;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    field_modulus: u32,
    vertices: Option<usize>,
    #[serde(default)]
    arrows: Vec<String>,
    #[serde(default)]
    relations: Vec<Vec<String>>,
    nakayama: Option<NakayamaSpec>,
    declared_indecomposables: Option<Vec<DeclaredSpec>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct NakayamaSpec {
    series: Vec<usize>,
    cyclic: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeclaredSpec {
    name: String,
    dims: Vec<usize>,
    #[serde(default)]
    maps: BTreeMap<String, Vec<Vec<u32>>>,
}

/// 1-based line of the first source line containing `needle`, for error
/// messages about values the TOML parser accepted syntactically.
fn line_of(text: &str, needle: &str) -> usize {
    text.lines()
        .position(|l| l.contains(needle))
        .map_or(0, |i| i + 1)
}

fn parse_arrow(decl: &str, text: &str) -> Result<(usize, usize, String)> {
    let err = |what: &str| {
        Error::Parse(format!(
            "line {}: bad arrow declaration {decl:?}: {what} (expected \"src -> tgt : label\")",
            line_of(text, decl)
        ))
    };
    let (ends, label) = decl.split_once(':').ok_or_else(|| err("missing \": label\""))?;
    let (src, tgt) = ends.split_once("->").ok_or_else(|| err("missing \"->\""))?;
    let src = src.trim().parse::<usize>().map_err(|_| err("source is not a vertex number"))?;
    let tgt = tgt.trim().parse::<usize>().map_err(|_| err("target is not a vertex number"))?;
    let label = label.trim();
    if label.is_empty() {
        return Err(err("empty label"));
    }
    Ok((src, tgt, label.to_string()))
}

fn resolve_declared(spec: DeclaredSpec, alg: &Algebra, text: &str) -> Result<DeclaredModule> {
    let q = &alg.quiver;
    if spec.dims.len() != q.vertex_count {
        return Err(Error::Parse(format!(
            "line {}: declared module {} has {} vertex dimensions, quiver has {} vertices",
            line_of(text, &spec.name),
            spec.name,
            spec.dims.len(),
            q.vertex_count
        )));
    }
    for label in spec.maps.keys() {
        if q.arrow_index(label).is_none() {
            return Err(Error::Parse(format!(
                "line {}: declared module {} maps unknown arrow {label:?}",
                line_of(text, label),
                spec.name
            )));
        }
    }
    let mut maps = Vec::with_capacity(q.arrows.len());
    for (i, a) in q.arrows.iter().enumerate() {
        let (rows, cols) = (spec.dims[a.target], spec.dims[a.source]);
        match spec.maps.get(&a.label) {
            None => maps.push(Mat::zero(rows, cols, alg.p)),
            Some(entries) => {
                if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
                    return Err(Error::Parse(format!(
                        "line {}: declared module {}: matrix for arrow {} must be {}x{}",
                        line_of(text, &spec.name),
                        spec.name,
                        q.arrows[i].label,
                        rows,
                        cols
                    )));
                }
                // from_rows copes with 0xN shapes only via zero()
                if rows == 0 || cols == 0 {
                    maps.push(Mat::zero(rows, cols, alg.p));
                } else {
                    maps.push(Mat::from_rows(entries, alg.p));
                }
            }
        }
    }
    Ok(DeclaredModule { name: spec.name, dims: spec.dims, maps })
}

/// Parse an algebra description. See the module docs for the format.
pub fn parse_algebra_spec(text: &str) -> Result<Arc<Algebra>> {
    let spec: SpecFile = toml::from_str(text).map_err(|e| {
        // toml's Display already renders "TOML parse error at line L, column C".
        Error::Parse(format!("algebra spec: {e}"))
    })?;
    let alg = match (&spec.nakayama, spec.vertices) {
        (Some(nk), None) => {
            if !spec.arrows.is_empty() || !spec.relations.is_empty() {
                return Err(Error::Parse(format!(
                    "line {}: a [nakayama] block determines the quiver; drop arrows/relations",
                    line_of(text, "nakayama")
                )));
            }
            nakayama(&nk.series, nk.cyclic, spec.field_modulus)?
        }
        (None, Some(n)) => {
            let mut arrows = Vec::new();
            for decl in &spec.arrows {
                arrows.push(parse_arrow(decl, text)?);
            }
            let q = Quiver {
                vertex_count: n,
                arrows: arrows
                    .into_iter()
                    .map(|(s, t, l)| crate::algebra::Arrow { source: s, target: t, label: l })
                    .collect(),
            };
            build_path_algebra(q, &spec.relations, spec.field_modulus)?
        }
        (Some(_), Some(_)) => {
            return Err(Error::Parse(
                "give either a [nakayama] block or vertices/arrows, not both".into(),
            ))
        }
        (None, None) => {
            return Err(Error::Parse(
                "algebra spec needs either a [nakayama] block or a vertices count".into(),
            ))
        }
    };
    match spec.declared_indecomposables {
        None => Ok(alg),
        Some(decls) => {
            let mut resolved = Vec::with_capacity(decls.len());
            for d in decls {
                resolved.push(resolve_declared(d, &alg, text)?);
            }
            let mut inner: Algebra = (*alg).clone();
            inner.declared_indecomposables = Some(resolved);
            Ok(Arc::new(inner))
        }
    }
}

/// Load an algebra description from a file.
pub fn load_algebra_spec(path: &Path) -> Result<Arc<Algebra>> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::Parse(format!("cannot read algebra spec {}: {e}", path.display()))
    })?;
    parse_algebra_spec(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;

    #[test]
    fn nakayama_file_matches_preset() {
        let text = "field_modulus = 2\n[nakayama]\nseries = [2, 1]\ncyclic = false\n";
        let alg = parse_algebra_spec(text).unwrap();
        let preset = nakayama(&[2, 1], false, 2).unwrap();
        assert_eq!(alg.quiver, preset.quiver);
        assert_eq!(alg.nakayama_series, preset.nakayama_series);
        let ctx = Context::new(alg).unwrap();
        assert_eq!(ctx.data.indecs.len(), 3);
    }

    #[test]
    fn explicit_quiver_with_declared_modules() {
        // A_2 quiver written out longhand; skeleton must agree in size with
        // the Kupisch-series form.
        let text = r#"
field_modulus = 2
vertices = 2
arrows = ["0 -> 1 : a"]
relations = []

[[declared_indecomposables]]
name = "S0"
dims = [1, 0]

[[declared_indecomposables]]
name = "P0"
dims = [1, 1]
[declared_indecomposables.maps]
a = [[1]]

[[declared_indecomposables]]
name = "S1"
dims = [0, 1]
"#;
        let alg = parse_algebra_spec(text).unwrap();
        let ctx = Context::new(alg).unwrap();
        assert_eq!(ctx.data.indecs.len(), 3);
        assert_eq!(ctx.data.projectives, vec![1, 2]);
    }

    #[test]
    fn syntax_error_cites_position() {
        let err = parse_algebra_spec("field_modulus = \n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 1"), "missing position in: {msg}");
    }

    #[test]
    fn bad_arrow_cites_line() {
        let text = "field_modulus = 2\nvertices = 2\narrows = [\"0 => 1 : a\"]\n";
        let err = parse_algebra_spec(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3"), "missing line in: {msg}");
        assert!(msg.contains("->"), "unhelpful message: {msg}");
    }

    #[test]
    fn wrong_matrix_shape_rejected() {
        let text = r#"
field_modulus = 2
vertices = 2
arrows = ["0 -> 1 : a"]

[[declared_indecomposables]]
name = "M"
dims = [1, 1]
[declared_indecomposables.maps]
a = [[1, 0]]
"#;
        let err = parse_algebra_spec(text).unwrap_err();
        assert!(err.to_string().contains("1x1"), "got: {err}");
    }

    #[test]
    fn nakayama_block_excludes_quiver_fields() {
        let text = "field_modulus = 2\narrows = [\"0 -> 1 : a\"]\n[nakayama]\nseries = [2, 1]\ncyclic = false\n";
        assert!(parse_algebra_spec(text).is_err());
    }
}
