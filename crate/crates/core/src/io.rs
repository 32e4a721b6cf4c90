//! JSON file formats for algebras, modules, quivers, representations and
//! triples.  Scalars are strings (`"num/den"` or a residue); matrices are
//! sparse lists of `[row, col, "value"]`.  References to other files are
//! resolved relative to the directory of the referring file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Algebra, AlgebraPresentation};
use crate::error::Error;
use crate::linalg::Matrix;
use crate::module::{Bimodule, Module, Side};
use crate::quiver::{build_tensor, Quiver, QuiverRep, QuiverSpec, TensorAlgebra};
use crate::scalar::{Field, FieldSpec};
use crate::triangular::{build_triangular, t2, TriangularAlgebra, TripleModule};

/// A failure tied to the file that caused it.
#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {message}")]
    Read { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Invalid { path: PathBuf, source: Error },
}

impl IoError {
    fn read(path: &Path, message: impl Into<String>) -> Self {
        IoError::Read { path: path.to_path_buf(), message: message.into() }
    }

    fn invalid(path: &Path, source: Error) -> Self {
        IoError::Invalid { path: path.to_path_buf(), source }
    }

    /// The underlying validation error, if any.
    pub fn validation(&self) -> Option<&Error> {
        match self {
            IoError::Invalid { source, .. } => Some(source),
            IoError::Read { .. } => None,
        }
    }
}

pub type IoResult<T> = std::result::Result<T, IoError>;

/// One nonzero entry of a sparse matrix.
pub type Entry = (usize, usize, String);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub field: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub unit: Vec<String>,
    pub struct_consts: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotents: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical_basis: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    pub algebra_ref: String,
    pub side: Side,
    pub dim: usize,
    /// Action matrices keyed by basis label; missing labels act by zero.
    pub actions: BTreeMap<String, Vec<Entry>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BimoduleFile {
    pub left_algebra_ref: String,
    pub right_algebra_ref: String,
    pub dim: usize,
    pub left_actions: BTreeMap<String, Vec<Entry>>,
    pub right_actions: BTreeMap<String, Vec<Entry>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct TripleFile {
    pub A_ref: String,
    pub B_ref: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bimodule_ref: Option<String>,
    pub X_ref: String,
    pub Y_ref: String,
    pub phi: Vec<Entry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepFile {
    pub algebra_ref: String,
    pub quiver_ref: String,
    /// Module file per vertex name.
    pub vertices: BTreeMap<String, String>,
    /// `X_α: X_{s(α)} → X_{t(α)}` per arrow name; missing arrows are zero.
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Entry>>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> IoResult<T> {
    let text = fs::read_to_string(path).map_err(|e| IoError::read(path, e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| IoError::read(path, format!("bad JSON: {e}")))
}

fn resolve(base: &Path, reference: &str) -> PathBuf {
    let r = Path::new(reference);
    if r.is_absolute() {
        r.to_path_buf()
    } else {
        base.parent().unwrap_or(Path::new(".")).join(r)
    }
}

fn scalar<F: Field>(path: &Path, s: &str) -> IoResult<F> {
    F::parse_scalar(s).map_err(|e| IoError::invalid(path, e.into()))
}

fn vector<F: Field>(path: &Path, v: &[String]) -> IoResult<Vec<F>> {
    v.iter().map(|s| scalar(path, s)).collect()
}

/// Builds a dense matrix from sparse entries, rejecting out-of-range indices.
pub fn sparse_matrix<F: Field>(path: &Path, rows: usize, cols: usize, entries: &[Entry]) -> IoResult<Matrix<F>> {
    let mut m = Matrix::zeros(rows, cols);
    for (r, c, v) in entries {
        if *r >= rows || *c >= cols {
            return Err(IoError::invalid(path, Error::Malformed(format!("entry ({r},{c}) outside a {rows}x{cols} matrix"))));
        }
        let x: F = scalar(path, v)?;
        m[(*r, *c)] += x;
    }
    Ok(m)
}

/// Sparse entries of a matrix in row-major order.
pub fn sparse_entries<F: Field>(m: &Matrix<F>) -> Vec<Entry> {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = &m[(r, c)];
            if !v.is_zero() {
                out.push((r, c, v.to_string()));
            }
        }
    }
    out
}

/// The field named by an algebra file, used to pick the scalar type.
pub fn peek_field(path: &Path) -> IoResult<FieldSpec> {
    #[derive(Deserialize)]
    struct Peek {
        field: String,
    }
    let p: Peek = read_json(path)?;
    FieldSpec::parse(&p.field).map_err(|e| IoError::invalid(path, e.into()))
}

/// The algebra file a module, triple or representation file ultimately refers to.
pub fn algebra_path_of(path: &Path) -> IoResult<PathBuf> {
    let v: Value = read_json(path)?;
    for key in ["algebra_ref", "A_ref", "left_algebra_ref"] {
        if let Some(r) = v.get(key).and_then(Value::as_str) {
            return algebra_path_of(&resolve(path, r));
        }
    }
    if v.get("struct_consts").is_some() {
        return Ok(path.to_path_buf());
    }
    Err(IoError::read(path, "not an algebra, module, triple or representation file"))
}

pub fn parse_algebra<F: Field>(path: &Path, f: &AlgebraFile) -> IoResult<Arc<Algebra<F>>> {
    let spec = FieldSpec::parse(&f.field).map_err(|e| IoError::invalid(path, e.into()))?;
    if spec != F::spec() {
        return Err(IoError::invalid(path, Error::Malformed(format!("field {spec} does not match {}", F::spec()))));
    }
    if f.labels.len() != f.dim || f.unit.len() != f.dim {
        return Err(IoError::invalid(path, Error::Malformed(format!("labels and unit must have length {}", f.dim))));
    }
    let mut p = AlgebraPresentation::new(f.labels.clone());
    p.unit = vector(path, &f.unit)?;
    for (i, j, k, c) in &f.struct_consts {
        if *i >= f.dim || *j >= f.dim || *k >= f.dim {
            return Err(IoError::invalid(path, Error::Malformed(format!("structure constant index ({i},{j},{k}) out of range"))));
        }
        p.set(*i, *j, *k, scalar(path, c)?);
    }
    if let Some(es) = &f.idempotents {
        p.idempotents = Some(es.iter().map(|e| vector(path, e)).collect::<IoResult<_>>()?);
    }
    if let Some(rs) = &f.radical_basis {
        p.radical_basis = Some(rs.iter().map(|e| vector(path, e)).collect::<IoResult<_>>()?);
    }
    Algebra::validate(p).map_err(|e| IoError::invalid(path, e))
}

pub fn load_algebra<F: Field>(path: &Path) -> IoResult<Arc<Algebra<F>>> {
    parse_algebra(path, &read_json(path)?)
}

pub fn algebra_file<F: Field>(a: &Algebra<F>) -> AlgebraFile {
    let d = a.dim();
    let mut struct_consts = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for (k, c) in a.product_of_basis(i, j) {
                if !c.is_zero() {
                    struct_consts.push((i, j, *k, c.to_string()));
                }
            }
        }
    }
    let strings = |v: &[F]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    AlgebraFile {
        field: F::spec().to_string(),
        dim: d,
        labels: a.labels().to_vec(),
        unit: strings(a.unit()),
        struct_consts,
        idempotents: a.idempotents().map(|es| es.iter().map(|e| strings(e)).collect()),
        radical_basis: a.radical().ok().map(|r| r.columns().iter().map(|c| strings(c)).collect()),
    }
}

fn actions<F: Field>(path: &Path, a: &Algebra<F>, dim: usize, given: &BTreeMap<String, Vec<Entry>>) -> IoResult<Vec<Matrix<F>>> {
    for label in given.keys() {
        if a.label_index(label).is_none() {
            return Err(IoError::invalid(path, Error::Malformed(format!("unknown basis label {label:?}"))));
        }
    }
    a.labels()
        .iter()
        .map(|l| match given.get(l) {
            Some(entries) => sparse_matrix(path, dim, dim, entries),
            None => Ok(Matrix::zeros(dim, dim)),
        })
        .collect()
}

fn label_of(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

/// Loads a module over a given algebra; the file's own `algebra_ref` is not reread.
pub fn load_module_over<F: Field>(path: &Path, a: &Arc<Algebra<F>>) -> IoResult<Module<F>> {
    let f: ModuleFile = read_json(path)?;
    let acts = actions(path, a, f.dim, &f.actions)?;
    Module::new(a, f.side, acts, label_of(path)).map_err(|e| IoError::invalid(path, e))
}

/// Loads a module together with the algebra it refers to.
pub fn load_module<F: Field>(path: &Path) -> IoResult<Module<F>> {
    let f: ModuleFile = read_json(path)?;
    let a = load_algebra(&resolve(path, &f.algebra_ref))?;
    load_module_over(path, &a)
}

pub fn module_file<F: Field>(m: &Module<F>, algebra_ref: &str) -> ModuleFile {
    let a = m.algebra();
    let actions = a
        .labels()
        .iter()
        .enumerate()
        .filter_map(|(i, l)| {
            let e = sparse_entries(m.action(i));
            (!e.is_empty()).then(|| (l.clone(), e))
        })
        .collect();
    ModuleFile { algebra_ref: algebra_ref.to_string(), side: m.side(), dim: m.dim(), actions }
}

pub fn load_quiver(path: &Path) -> IoResult<Quiver> {
    let spec: QuiverSpec = read_json(path)?;
    Quiver::new(spec).map_err(|e| IoError::invalid(path, e))
}

/// A triple file with its parent triangular algebra.
pub fn load_triple<F: Field>(path: &Path) -> IoResult<TripleModule<F>> {
    let f: TripleFile = read_json(path)?;
    let a = load_algebra::<F>(&resolve(path, &f.A_ref))?;
    let parent: Arc<TriangularAlgebra<F>> = match &f.bimodule_ref {
        None => {
            if resolve(path, &f.B_ref) != resolve(path, &f.A_ref) {
                let b = load_algebra::<F>(&resolve(path, &f.B_ref))?;
                if !b.same_as(&a) {
                    return Err(IoError::invalid(path, Error::Malformed("B differs from A but no bimodule_ref was given".into())));
                }
            }
            t2(&a).map_err(|e| IoError::invalid(path, e))?
        }
        Some(r) => {
            let b = load_algebra::<F>(&resolve(path, &f.B_ref))?;
            let bp = resolve(path, r);
            let bf: BimoduleFile = read_json(&bp)?;
            let left = actions(&bp, &a, bf.dim, &bf.left_actions)?;
            let right = actions(&bp, &b, bf.dim, &bf.right_actions)?;
            let m = Bimodule::new(&a, &b, left, right, label_of(&bp)).map_err(|e| IoError::invalid(&bp, e))?;
            build_triangular(&a, &b, &m).map_err(|e| IoError::invalid(path, e))?
        }
    };
    let x = load_module_over(&resolve(path, &f.X_ref), &parent.a)?;
    let y = load_module_over(&resolve(path, &f.Y_ref), &parent.b)?;
    let tdim = parent.tensor(&y).map_err(|e| IoError::invalid(path, e))?.dim;
    let phi = sparse_matrix(path, x.dim(), tdim, &f.phi)?;
    TripleModule::new(&parent, &x, &y, phi).map(|t| t.with_label(label_of(path))).map_err(|e| IoError::invalid(path, e))
}

/// A representation file over `A ⊗ kQ`.
pub fn load_rep<F: Field>(path: &Path) -> IoResult<QuiverRep<F>> {
    let f: RepFile = read_json(path)?;
    let a = load_algebra::<F>(&resolve(path, &f.algebra_ref))?;
    let q = load_quiver(&resolve(path, &f.quiver_ref))?;
    let t: Arc<TensorAlgebra<F>> = build_tensor(&a, &q).map_err(|e| IoError::invalid(path, e))?;
    let mut vertices = Vec::new();
    for v in &q.spec.vertices {
        let r = f
            .vertices
            .get(v)
            .ok_or_else(|| IoError::invalid(path, Error::Malformed(format!("no module for vertex {v:?}"))))?;
        vertices.push(load_module_over(&resolve(path, r), &a)?);
    }
    for name in f.arrows.keys() {
        if q.arrow_index(name).is_none() {
            return Err(IoError::invalid(path, Error::Malformed(format!("unknown arrow {name:?}"))));
        }
    }
    let mut arrows = Vec::new();
    for arrow in &q.spec.arrows {
        let (s, e) = q.arrow_ends(q.arrow_index(&arrow.name).expect("own arrow"));
        let (rows, cols) = (vertices[e].dim(), vertices[s].dim());
        arrows.push(match f.arrows.get(&arrow.name) {
            Some(entries) => sparse_matrix(path, rows, cols, entries)?,
            None => Matrix::zeros(rows, cols),
        });
    }
    QuiverRep::new(&t, vertices, arrows).map(|r| r.with_label(label_of(path))).map_err(|e| IoError::invalid(path, e))
}
