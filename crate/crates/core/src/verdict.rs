//! Three-valued answers for properties that quantify over infinitely many
//! degrees or cannot always be decided by search.

use serde_json::{json, Value};

use crate::linalg::Matrix;
use crate::scalar::Field;

/// Evidence that a property holds.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate<F> {
    /// An explicit invertible intertwiner.
    Isomorphism(Matrix<F>),
    /// Minimal syzygies `Ω^first ≅ Ω^second` via the given isomorphism.
    Periodicity { first: usize, second: usize, iso: Matrix<F> },
    /// The syzygy in this degree is zero, so the module has finite projective
    /// dimension below it.
    SyzygyVanishes { degree: usize },
    /// A finite search space was exhausted.
    Exhaustive,
    /// The property follows from other computed facts, described in words.
    Derived(String),
}

/// Evidence that a property fails.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness<F> {
    /// A nonzero cohomology group in this degree, with its dimension.
    NonzeroExt { degree: usize, dim: usize },
    /// A nonzero Tor group against the simple labelled `simple`.
    NonzeroTor { simple: String, degree: usize, dim: usize },
    DimensionMismatch { left: usize, right: usize },
    NoNonzeroMaps,
    /// An isomorphism invariant differs; the string names it.
    InvariantMismatch(String),
    /// No invertible map found in an exhausted search space.
    NoInvertibleMap,
    /// A nonzero kernel vector of a map that should be injective.
    KernelVector(Vec<F>),
    /// A vertex of a quiver where a gathered map fails to be injective.
    Vertex { vertex: String, kernel_dim: usize },
    /// A sub-verdict that failed, described in words.
    Derived(String),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<F> {
    Holds(Certificate<F>),
    Fails(Witness<F>),
    UnknownUpTo(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Unknown => "unknown",
        }
    }

    pub fn from_bool(b: bool) -> Status {
        if b {
            Status::Holds
        } else {
            Status::Fails
        }
    }

    /// Kleene conjunction.
    pub fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fails, _) | (_, Status::Fails) => Status::Fails,
            (Status::Holds, Status::Holds) => Status::Holds,
            _ => Status::Unknown,
        }
    }

    pub fn all(items: impl IntoIterator<Item = Status>) -> Status {
        items.into_iter().fold(Status::Holds, Status::and)
    }

    /// Whether two three-valued answers are compatible: they agree or at
    /// least one of them is unknown.
    pub fn compatible(self, other: Status) -> bool {
        self == other || self == Status::Unknown || other == Status::Unknown
    }
}

impl<F: Field> Verdict<F> {
    pub fn status(&self) -> Status {
        match self {
            Verdict::Holds(_) => Status::Holds,
            Verdict::Fails(_) => Status::Fails,
            Verdict::UnknownUpTo(_) => Status::Unknown,
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }

    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::UnknownUpTo(_))
    }

    /// The isomorphism carried by a `Holds(Isomorphism)` verdict.
    pub fn isomorphism(&self) -> Option<&Matrix<F>> {
        match self {
            Verdict::Holds(Certificate::Isomorphism(m)) => Some(m),
            _ => None,
        }
    }

    /// Degree of a nonzero-Ext witness, if that is why the verdict fails.
    pub fn witness_degree(&self) -> Option<usize> {
        match self {
            Verdict::Fails(Witness::NonzeroExt { degree, .. }) => Some(*degree),
            Verdict::Fails(Witness::NonzeroTor { degree, .. }) => Some(*degree),
            _ => None,
        }
    }

    /// Verdict built from a status when only a description is available.
    pub fn from_status(status: Status, bound: usize, why: impl Into<String>) -> Verdict<F> {
        match status {
            Status::Holds => Verdict::Holds(Certificate::Derived(why.into())),
            Status::Fails => Verdict::Fails(Witness::Derived(why.into())),
            Status::Unknown => Verdict::UnknownUpTo(bound),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Verdict::Holds(c) => json!({"status": "holds", "certificate": certificate_json(c)}),
            Verdict::Fails(w) => json!({"status": "fails", "witness": witness_json(w)}),
            Verdict::UnknownUpTo(b) => json!({"status": "unknown", "bound": b}),
        }
    }
}

pub fn matrix_json<F: Field>(m: &Matrix<F>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

pub fn vector_json<F: Field>(v: &[F]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn certificate_json<F: Field>(c: &Certificate<F>) -> Value {
    match c {
        Certificate::Isomorphism(m) => json!({"kind": "isomorphism", "matrix": matrix_json(m)}),
        Certificate::Periodicity { first, second, iso } => {
            json!({"kind": "syzygy-periodicity", "first": first, "second": second, "matrix": matrix_json(iso)})
        }
        Certificate::SyzygyVanishes { degree } => json!({"kind": "syzygy-vanishes", "degree": degree}),
        Certificate::Exhaustive => json!({"kind": "exhaustive"}),
        Certificate::Derived(s) => json!({"kind": "derived", "reason": s}),
    }
}

fn witness_json<F: Field>(w: &Witness<F>) -> Value {
    match w {
        Witness::NonzeroExt { degree, dim } => json!({"kind": "nonzero-ext", "degree": degree, "dim": dim}),
        Witness::NonzeroTor { simple, degree, dim } => {
            json!({"kind": "nonzero-tor", "simple": simple, "degree": degree, "dim": dim})
        }
        Witness::DimensionMismatch { left, right } => json!({"kind": "dimension-mismatch", "left": left, "right": right}),
        Witness::NoNonzeroMaps => json!({"kind": "no-nonzero-maps"}),
        Witness::InvariantMismatch(s) => json!({"kind": "invariant-mismatch", "invariant": s}),
        Witness::NoInvertibleMap => json!({"kind": "no-invertible-map"}),
        Witness::KernelVector(v) => json!({"kind": "kernel-vector", "vector": vector_json(v)}),
        Witness::Vertex { vertex, kernel_dim } => json!({"kind": "vertex", "vertex": vertex, "kernel_dim": kernel_dim}),
        Witness::Derived(s) => json!({"kind": "derived", "reason": s}),
    }
}
