//! JSON file formats for groups, operators, Lie algebras and matrices.

use std::collections::BTreeMap;
use std::path::Path;

use freeavg_core::linearalg::{LieAlgebra, Matrix, Rational};
use freeavg_core::structures::{FiniteGroup, OperatorTable, StructureError};
use num_traits::Zero;
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;

/// `{ "elements": [...], "mul": [[...]], "op": { name: name } }`
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    elements: Vec<String>,
    mul: Vec<Vec<usize>>,
    #[serde(default)]
    op: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum OpFile {
    Wrapped { op: BTreeMap<String, String> },
    Bare(BTreeMap<String, String>),
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}

/// A group file: the validated table and its operator, if one is given.
///
/// Shape errors are format errors; failing group axioms are reported as a
/// [`StructureError`] for the caller to classify.
pub fn load_group(path: &Path) -> Result<Result<(FiniteGroup, Option<OperatorTable>), StructureError>, CliError> {
    let file: GroupFile = parse_json(path, &read(path)?)?;
    let n = file.elements.len();
    if file.mul.len() != n || file.mul.iter().any(|r| r.len() != n) {
        return Err(CliError::Format(format!("{}: `mul` must be a {n}x{n} table", path.display())));
    }
    let group = match FiniteGroup::new(file.elements, file.mul) {
        Ok(g) => g,
        Err(e @ (StructureError::Malformed(_) | StructureError::DuplicateName(_) | StructureError::Empty)) => {
            return Err(CliError::Format(format!("{}: {e}", path.display())))
        }
        Err(e) => return Ok(Err(e)),
    };
    let op = file.op.map(|m| operator_from_names(&group, &m, path)).transpose()?;
    Ok(Ok((group, op)))
}

/// An operator file: `{ name: name }`, optionally wrapped as `{ "op": ... }`.
pub fn load_operator(path: &Path, group: &FiniteGroup) -> Result<OperatorTable, CliError> {
    let map = match parse_json::<OpFile>(path, &read(path)?)? {
        OpFile::Wrapped { op } | OpFile::Bare(op) => op,
    };
    operator_from_names(group, &map, path)
}

fn operator_from_names(
    g: &FiniteGroup,
    map: &BTreeMap<String, String>,
    path: &Path,
) -> Result<OperatorTable, CliError> {
    let lookup = |name: &str| {
        g.index_of(name).ok_or_else(|| CliError::Format(format!("{}: unknown element {name:?}", path.display())))
    };
    let mut images = vec![None; g.order()];
    for (k, v) in map {
        images[lookup(k)?] = Some(lookup(v)?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, img)| {
            img.ok_or_else(|| {
                CliError::Format(format!("{}: operator has no image for {:?}", path.display(), g.name(i)))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OperatorTable(images))
}

/// Parses `"x=a,y=b"` into generator assignments.
pub fn parse_assignment(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected `name=element` in --map, found {part:?}")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

/// A rational given as `"p/q"`, `"p"` or a JSON integer.
pub fn parse_rational(v: &Value) -> Result<Rational, String> {
    match v {
        Value::String(s) => s.trim().parse::<Rational>().map_err(|_| format!("not a rational: {s:?}")),
        Value::Number(n) => {
            n.as_i64().map(|i| Rational::from_integer(i128::from(i))).ok_or_else(|| format!("not an integer: {n}"))
        }
        other => Err(format!("not a rational: {other}")),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LieFile {
    dim: usize,
    #[serde(default)]
    brackets: Vec<BracketEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketEntry {
    i: usize,
    j: usize,
    coeffs: BTreeMap<String, Value>,
}

/// A Lie algebra file with 1-based indices. Brackets given in one
/// orientation only are completed by antisymmetry; brackets not listed are
/// zero.
pub fn load_lie(path: &Path) -> Result<LieAlgebra, CliError> {
    let file: LieFile = parse_json(path, &read(path)?)?;
    let d = file.dim;
    let bad = |m: String| CliError::Format(format!("{}: {m}", path.display()));
    let mut given: BTreeMap<(usize, usize), Vec<Rational>> = BTreeMap::new();
    for b in &file.brackets {
        if b.i == 0 || b.j == 0 || b.i > d || b.j > d {
            return Err(bad(format!("bracket index ({}, {}) outside 1..={d}", b.i, b.j)));
        }
        let mut v = vec![Rational::zero(); d];
        for (k, c) in &b.coeffs {
            let k: usize = k.parse().map_err(|_| bad(format!("coefficient key {k:?} is not an index")))?;
            if k == 0 || k > d {
                return Err(bad(format!("coefficient index {k} outside 1..={d}")));
            }
            v[k - 1] = parse_rational(c).map_err(bad)?;
        }
        if given.insert((b.i - 1, b.j - 1), v).is_some() {
            return Err(bad(format!("bracket ({}, {}) listed twice", b.i, b.j)));
        }
    }
    let mut c = vec![vec![vec![Rational::zero(); d]; d]; d];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            if let Some(v) = given.get(&(i, j)) {
                *entry = v.clone();
            } else if let Some(v) = given.get(&(j, i)) {
                *entry = v.iter().map(|x| -x).collect();
            }
        }
    }
    LieAlgebra::new(c).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum MatrixFile {
    Wrapped { matrix: Vec<Vec<Value>> },
    Bare(Vec<Vec<Value>>),
}

/// A square matrix of rationals, row-major: column `j` is the image of `e_j`.
pub fn load_matrix(path: &Path) -> Result<Matrix, CliError> {
    let rows = match parse_json::<MatrixFile>(path, &read(path)?)? {
        MatrixFile::Wrapped { matrix } | MatrixFile::Bare(matrix) => matrix,
    };
    let bad = |m: String| CliError::Format(format!("{}: {m}", path.display()));
    let rows = rows
        .iter()
        .map(|r| r.iter().map(parse_rational).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(bad)?;
    Matrix::from_rows(rows).ok_or_else(|| bad("matrix is not square".to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn group_file() {
        let f = file(r#"{"elements":["e","a"],"mul":[[0,1],[1,0]],"op":{"e":"a","a":"e"}}"#);
        let (g, op) = load_group(f.path()).unwrap().unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(op, Some(OperatorTable(vec![1, 0])));
        let f = file(r#"{"elements":["e","a"],"mul":[[0,1]]}"#);
        assert!(matches!(load_group(f.path()), Err(CliError::Format(_))));
        let f = file(r#"{"elements":["e","a"],"mul":[[0,0],[1,1]]}"#);
        assert_eq!(load_group(f.path()).unwrap().unwrap_err(), StructureError::NoIdentity);
    }

    #[test]
    fn operator_files() {
        let g = FiniteGroup::cyclic(2);
        assert_eq!(load_operator(file(r#"{"0":"1","1":"0"}"#).path(), &g).unwrap(), OperatorTable(vec![1, 0]));
        assert_eq!(load_operator(file(r#"{"op":{"0":"0","1":"0"}}"#).path(), &g).unwrap(), OperatorTable(vec![0, 0]));
        assert!(load_operator(file(r#"{"0":"1"}"#).path(), &g).is_err());
    }

    #[test]
    fn lie_and_matrix_files() {
        let l = load_lie(file(r#"{"dim":2,"brackets":[{"i":1,"j":2,"coeffs":{"2":"1"}}]}"#).path()).unwrap();
        assert_eq!(l, LieAlgebra::solvable2());
        let m = load_matrix(file(r#"{"matrix":[["1","0"],[0,"1/2"]]}"#).path()).unwrap();
        assert_eq!(m.entry(1, 1), Rational::new(1, 2));
        assert!(load_matrix(file(r#"[["1","0"]]"#).path()).is_err());
        let bad = file(r#"{"dim":2,"brackets":[{"i":1,"j":3,"coeffs":{}}]}"#);
        assert!(matches!(load_lie(bad.path()), Err(CliError::Format(_))));
    }

    #[test]
    fn assignments() {
        let m = parse_assignment("x=1, y = a").unwrap();
        assert_eq!(m["y"], "a");
        assert!(parse_assignment("x").is_err());
    }
}
