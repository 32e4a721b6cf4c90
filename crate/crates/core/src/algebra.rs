//! Finite-dimensional unital associative algebras given by structure constants.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{check_cap, ColumnBasis, Matrix};
use crate::scalar::Field;

/// Raw description of an algebra: `b_i · b_j = Σ c · b_k` for every listed
/// `(i, j, k, c)` (repeated triples accumulate).
#[derive(Clone, Debug)]
pub struct AlgebraPresentation<F> {
    pub dim: usize,
    pub labels: Vec<String>,
    pub unit: Vec<F>,
    pub struct_consts: Vec<(usize, usize, usize, F)>,
    pub idempotents: Option<Vec<Vec<F>>>,
    pub radical_basis: Option<Vec<Vec<F>>>,
}

impl<F: Field> AlgebraPresentation<F> {
    /// Presentation with `b_0` as unit and no structure constants yet.
    pub fn new(labels: Vec<String>) -> Self {
        let dim = labels.len();
        let mut unit = vec![F::zero(); dim];
        if dim > 0 {
            unit[0] = F::one();
        }
        AlgebraPresentation { dim, labels, unit, struct_consts: Vec::new(), idempotents: None, radical_basis: None }
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, c: F) -> &mut Self {
        self.struct_consts.push((i, j, k, c));
        self
    }
}

/// Left multiplication data for one summand `Λe` of the regular module.
#[derive(Clone, Debug)]
pub struct ProjectiveSummand<F> {
    /// The idempotent `e` as an element.
    pub idempotent: Vec<F>,
    /// Basis of `Λe` inside `Λ`.
    pub basis: ColumnBasis<F>,
    /// Left action of each basis vector of `Λ` on `Λe`, in `basis` coordinates.
    pub actions: Vec<Matrix<F>>,
}

impl<F: Field> ProjectiveSummand<F> {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

/// A validated algebra.  Construct with [`Algebra::validate`].
pub struct Algebra<F> {
    dim: usize,
    labels: Vec<String>,
    unit: Vec<F>,
    products: Vec<Vec<Vec<(usize, F)>>>,
    left: Vec<Matrix<F>>,
    right: Vec<Matrix<F>>,
    idempotents: Option<Vec<Vec<F>>>,
    radical: std::result::Result<Matrix<F>, Error>,
    radical_declared: bool,
    fingerprint: u64,
    opposite: OnceLock<Arc<Algebra<F>>>,
    generators: OnceLock<Vec<usize>>,
    summands: OnceLock<Vec<Arc<ProjectiveSummand<F>>>>,
    pub(crate) resolution_cache: Mutex<HashMap<u64, Vec<Arc<dyn std::any::Any + Send + Sync>>>>,
}

impl<F> std::fmt::Debug for Algebra<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra")
            .field("dim", &self.dim)
            .field("labels", &self.labels)
            .finish()
    }
}

impl<F: Field> Algebra<F> {
    /// Checks every axiom exhaustively and seals the algebra.
    pub fn validate(p: AlgebraPresentation<F>) -> Result<Arc<Algebra<F>>> {
        Self::validate_inner(p, true)
    }

    fn validate_inner(p: AlgebraPresentation<F>, check: bool) -> Result<Arc<Algebra<F>>> {
        let d = p.dim;
        if d == 0 {
            return Err(Error::Malformed("algebra dimension must be positive".into()));
        }
        check_cap(d)?;
        if p.labels.len() != d {
            return Err(Error::Malformed(format!("{} labels for dimension {d}", p.labels.len())));
        }
        if p.unit.len() != d {
            return Err(Error::Malformed(format!("unit has length {} for dimension {d}", p.unit.len())));
        }
        let mut dense = vec![vec![vec![F::zero(); d]; d]; d];
        for (i, j, k, c) in &p.struct_consts {
            if *i >= d || *j >= d || *k >= d {
                return Err(Error::Malformed(format!("structure constant index ({i},{j},{k}) out of range")));
            }
            dense[*i][*j][*k] += c.clone();
        }
        let products: Vec<Vec<Vec<(usize, F)>>> = dense
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect())
                    .collect()
            })
            .collect();
        let left: Vec<Matrix<F>> =
            (0..d).map(|i| Matrix::from_fn(d, d, |k, j| dense[i][j][k].clone())).collect();
        let right: Vec<Matrix<F>> =
            (0..d).map(|i| Matrix::from_fn(d, d, |k, j| dense[j][i][k].clone())).collect();

        let mut hasher = DefaultHasher::new();
        d.hash(&mut hasher);
        p.unit.hash(&mut hasher);
        products.hash(&mut hasher);
        let fingerprint = hasher.finish();

        let mut alg = Algebra {
            dim: d,
            labels: p.labels,
            unit: p.unit,
            products,
            left,
            right,
            idempotents: None,
            radical: Err(Error::UnsupportedCharacteristic(F::characteristic(), d)),
            radical_declared: false,
            fingerprint,
            opposite: OnceLock::new(),
            generators: OnceLock::new(),
            summands: OnceLock::new(),
            resolution_cache: Mutex::new(HashMap::new()),
        };
        if check {
            alg.check_associative()?;
            alg.check_unit()?;
        }
        if let Some(idem) = p.idempotents {
            for e in &idem {
                if e.len() != d {
                    return Err(Error::Malformed("idempotent vector has wrong length".into()));
                }
            }
            if check {
                alg.check_idempotents(&idem)?;
            }
            alg.idempotents = Some(idem);
        }
        match p.radical_basis {
            Some(rb) => {
                for v in &rb {
                    if v.len() != d {
                        return Err(Error::Malformed("radical basis vector has wrong length".into()));
                    }
                }
                let m = Matrix::from_columns(d, &rb);
                if check {
                    alg.check_radical(&m)?;
                }
                alg.radical = Ok(m);
                alg.radical_declared = true;
            }
            None => {
                if alg.trace_form_applies() {
                    let r = alg.trace_form_radical();
                    if check {
                        alg.check_radical(&r)?;
                    }
                    alg.radical = Ok(r);
                }
            }
        }
        Ok(Arc::new(alg))
    }

    fn check_associative(&self) -> Result<()> {
        let d = self.dim;
        let mut lhs = vec![F::zero(); d];
        let mut rhs = vec![F::zero(); d];
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    lhs.iter_mut().for_each(|x| *x = F::zero());
                    rhs.iter_mut().for_each(|x| *x = F::zero());
                    for (k, c) in &self.products[i][j] {
                        for (t, e) in &self.products[*k][l] {
                            lhs[*t] += c.clone() * e.clone();
                        }
                    }
                    for (k, c) in &self.products[j][l] {
                        for (t, e) in &self.products[i][*k] {
                            rhs[*t] += c.clone() * e.clone();
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::NonAssociative(i, j, l));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim {
            let mut e = vec![F::zero(); self.dim];
            e[i] = F::one();
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::UnitLaw(i));
            }
        }
        Ok(())
    }

    fn check_idempotents(&self, idem: &[Vec<F>]) -> Result<()> {
        let mut sum = vec![F::zero(); self.dim];
        for (a, ea) in idem.iter().enumerate() {
            for (b, eb) in idem.iter().enumerate() {
                let prod = self.mul(ea, eb);
                let expect = if a == b { ea.clone() } else { vec![F::zero(); self.dim] };
                if prod != expect {
                    let reason = if a == b { "not idempotent" } else { "not orthogonal" };
                    return Err(Error::BadIdempotents { first: a, second: b, reason: reason.into() });
                }
            }
            for (s, x) in sum.iter_mut().zip(ea) {
                *s += x.clone();
            }
        }
        if sum != self.unit {
            return Err(Error::BadIdempotents { first: 0, second: idem.len().saturating_sub(1), reason: "do not sum to the unit".into() });
        }
        Ok(())
    }

    fn trace_form_applies(&self) -> bool {
        let p = F::characteristic();
        p == 0 || p as usize > self.dim
    }

    /// Kernel of the form `(a, b) ↦ tr(L_{ab})`.
    fn trace_form_radical(&self) -> Matrix<F> {
        let d = self.dim;
        let traces: Vec<F> = (0..d)
            .map(|k| (0..d).fold(F::zero(), |acc, i| acc + self.left[k][(i, i)].clone()))
            .collect();
        let form = Matrix::from_fn(d, d, |i, j| {
            self.products[i][j].iter().fold(F::zero(), |acc, (k, c)| acc + c.clone() * traces[*k].clone())
        });
        form.kernel()
    }

    fn check_radical(&self, r: &Matrix<F>) -> Result<()> {
        let d = self.dim;
        if r.rank() != r.cols() {
            return Err(Error::BadRadical("basis vectors are dependent".into()));
        }
        if r.cols() == 0 {
            if self.radical_declared || !self.trace_form_applies() {
                return Ok(());
            }
            return Ok(());
        }
        let span = ColumnBasis::new(r.clone());
        for i in 0..d {
            for c in 0..r.cols() {
                let v = r.col(c);
                if !span.contains(&self.left[i].mul_vec(&v)) || !span.contains(&self.right[i].mul_vec(&v)) {
                    return Err(Error::BadRadical(format!("not a two-sided ideal (basis vector {i})")));
                }
            }
        }
        // Nilpotency: J^k shrinks to zero within dim steps.
        let mut power = r.clone();
        let mut steps = 1;
        while power.cols() > 0 {
            if steps > d {
                return Err(Error::BadRadical("not nilpotent".into()));
            }
            let mut prods = Vec::new();
            for a in 0..power.cols() {
                for b in 0..r.cols() {
                    prods.push(self.mul(&power.col(a), &r.col(b)));
                }
            }
            power = Matrix::from_columns(d, &prods).column_space();
            steps += 1;
        }
        if self.trace_form_applies() {
            let t = self.trace_form_radical();
            if t.cols() != r.cols() {
                return Err(Error::BadRadical(format!(
                    "quotient is not semisimple: trace-form radical has dimension {} but {} were declared",
                    t.cols(),
                    r.cols()
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn same_as(&self, other: &Algebra<F>) -> bool {
        self.fingerprint == other.fingerprint && self.dim == other.dim && self.products == other.products
    }

    /// `b_i · b_j` as a sparse coefficient list.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[(usize, F)] {
        &self.products[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        let mut e = vec![F::zero(); self.dim];
        e[i] = F::one();
        e
    }

    /// Product of two coefficient vectors.
    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x.clone() * y.clone();
                for (k, c) in &self.products[i][j] {
                    out[*k] += xy.clone() * c.clone();
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by the basis vector `b_i`.
    pub fn left_mult(&self, i: usize) -> &Matrix<F> {
        &self.left[i]
    }

    /// Matrix of right multiplication by the basis vector `b_i`.
    pub fn right_mult(&self, i: usize) -> &Matrix<F> {
        &self.right[i]
    }

    pub fn left_mult_by(&self, a: &[F]) -> Matrix<F> {
        combine(&self.left, a, self.dim)
    }

    pub fn right_mult_by(&self, a: &[F]) -> Matrix<F> {
        combine(&self.right, a, self.dim)
    }

    pub fn left_mults(&self) -> &[Matrix<F>] {
        &self.left
    }

    pub fn right_mults(&self) -> &[Matrix<F>] {
        &self.right
    }

    pub fn idempotents(&self) -> Option<&[Vec<F>]> {
        self.idempotents.as_deref()
    }

    /// Idempotents if declared, else just the unit.
    pub fn idempotents_or_unit(&self) -> Vec<Vec<F>> {
        match &self.idempotents {
            Some(v) => v.clone(),
            None => vec![self.unit.clone()],
        }
    }

    /// Basis of the Jacobson radical (columns).
    pub fn radical(&self) -> Result<&Matrix<F>> {
        self.radical.as_ref().map_err(|e| e.clone())
    }

    pub fn has_radical(&self) -> bool {
        self.radical.is_ok()
    }

    /// Whether minimal projective covers can be built.
    pub fn supports_minimal(&self) -> bool {
        self.has_radical()
    }

    /// The opposite algebra, with the same basis, idempotents and radical.
    pub fn opposite(&self) -> Arc<Algebra<F>> {
        self.opposite
            .get_or_init(|| {
                let d = self.dim;
                let mut sc = Vec::new();
                for i in 0..d {
                    for j in 0..d {
                        for (k, c) in &self.products[j][i] {
                            sc.push((i, j, *k, c.clone()));
                        }
                    }
                }
                let p = AlgebraPresentation {
                    dim: d,
                    labels: self.labels.clone(),
                    unit: self.unit.clone(),
                    struct_consts: sc,
                    idempotents: self.idempotents.clone(),
                    radical_basis: self.radical.as_ref().ok().map(|r| r.columns()),
                };
                Algebra::validate_inner(p, false).expect("opposite of a valid algebra")
            })
            .clone()
    }

    /// Basis indices generating the algebra (together with the unit).
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let mut gens: Vec<usize> = Vec::new();
            let mut span = self.closure(&gens);
            for i in 0..self.dim {
                if !span.contains(&self.basis_vector(i)) {
                    gens.push(i);
                    span = self.closure(&gens);
                }
            }
            gens
        })
    }

    fn closure(&self, gens: &[usize]) -> ColumnBasis<F> {
        let d = self.dim;
        let mut cols = vec![self.unit.clone()];
        cols.extend(gens.iter().map(|&g| self.basis_vector(g)));
        let mut basis = Matrix::from_columns(d, &cols).column_space();
        loop {
            let mut more = basis.columns();
            for v in basis.columns() {
                for &g in gens {
                    more.push(self.right[g].mul_vec(&v));
                }
            }
            let next = Matrix::from_columns(d, &more).column_space();
            if next.cols() == basis.cols() {
                return ColumnBasis::new(next);
            }
            basis = next;
        }
    }

    /// The summands `Λe` for each idempotent (or just `Λ` when none are declared),
    /// followed by the whole regular module `Λ·1` as the last entry.
    pub fn projective_summands(&self) -> &[Arc<ProjectiveSummand<F>>] {
        self.summands.get_or_init(|| {
            let mut idems = self.idempotents.clone().unwrap_or_default();
            idems.push(self.unit.clone());
            idems
                .into_iter()
                .map(|e| {
                    let re = self.right_mult_by(&e);
                    let basis = ColumnBasis::new(re.column_space());
                    let actions = self.left.iter().map(|l| basis.coords_matrix(&l.mul(basis.basis()))).collect();
                    Arc::new(ProjectiveSummand { idempotent: e, basis, actions })
                })
                .collect()
        })
    }

    /// Index into [`Self::projective_summands`] of the full regular module.
    pub fn free_summand_index(&self) -> usize {
        self.projective_summands().len() - 1
    }

    /// Number of declared idempotents (the unit counts as one when none).
    pub fn idempotent_count(&self) -> usize {
        self.idempotents.as_ref().map_or(1, |v| v.len())
    }
}

pub(crate) fn combine<F: Field>(mats: &[Matrix<F>], coeffs: &[F], n: usize) -> Matrix<F> {
    let mut out = Matrix::zeros(n, n);
    for (m, c) in mats.iter().zip(coeffs) {
        out.add_scaled(c, m);
    }
    out
}

/// An algebra element tied to its algebra.
#[derive(Clone, Debug)]
pub struct Element<F> {
    pub algebra: Arc<Algebra<F>>,
    pub coeffs: Vec<F>,
}

impl<F: Field> Element<F> {
    pub fn new(algebra: &Arc<Algebra<F>>, coeffs: Vec<F>) -> Result<Self> {
        if coeffs.len() != algebra.dim() {
            return Err(Error::Malformed(format!("element of length {} in algebra of dimension {}", coeffs.len(), algebra.dim())));
        }
        Ok(Element { algebra: algebra.clone(), coeffs })
    }

    pub fn basis(algebra: &Arc<Algebra<F>>, i: usize) -> Self {
        Element { algebra: algebra.clone(), coeffs: algebra.basis_vector(i) }
    }

    pub fn unit(algebra: &Arc<Algebra<F>>) -> Self {
        Element { algebra: algebra.clone(), coeffs: algebra.unit().to_vec() }
    }
}

impl<F: Field> PartialEq for Element<F> {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.coeffs == other.coeffs
    }
}

/// Product in the common algebra of `a` and `b`.
pub fn multiply<F: Field>(a: &Element<F>, b: &Element<F>) -> Result<Element<F>> {
    if !a.algebra.same_as(&b.algebra) {
        return Err(Error::AlgebraMismatch("factors live in different algebras".into()));
    }
    Ok(Element { algebra: a.algebra.clone(), coeffs: a.algebra.mul(&a.coeffs, &b.coeffs) })
}

/// The one-dimensional algebra `k`.
pub fn ground_field<F: Field>() -> Arc<Algebra<F>> {
    let mut p = AlgebraPresentation::new(vec!["1".into()]);
    p.set(0, 0, 0, F::one());
    p.idempotents = Some(vec![vec![F::one()]]);
    p.radical_basis = Some(vec![]);
    Algebra::validate(p).expect("k is an algebra")
}

/// `k[x]/(x^n)`.
pub fn truncated_polynomial<F: Field>(n: usize) -> Arc<Algebra<F>> {
    assert!(n >= 1);
    let labels = (0..n).map(|i| match i {
        0 => "1".to_string(),
        1 => "x".to_string(),
        _ => format!("x^{i}"),
    });
    let mut p = AlgebraPresentation::new(labels.collect());
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                p.set(i, j, i + j, F::one());
            }
        }
    }
    p.idempotents = Some(vec![p.unit.clone()]);
    Algebra::validate(p).expect("truncated polynomial ring is an algebra")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};

    #[test]
    fn dual_numbers() {
        let a = truncated_polynomial::<Rational>(2);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.radical().unwrap().cols(), 1);
        assert_eq!(a.left_mult(1), &Matrix::from_i64_rows(&[&[0, 0], &[1, 0]]));
        assert_eq!(a.generators(), &[1]);
    }

    #[test]
    fn non_associative_rejected() {
        // b1·b1 = b2, b1·b2 = b1 but b2·b1 = 0.
        let mut p = AlgebraPresentation::<Rational>::new(vec!["1".into(), "u".into(), "v".into()]);
        for i in 0..3 {
            p.set(0, i, i, Rational::from_i64(1));
            if i > 0 {
                p.set(i, 0, i, Rational::from_i64(1));
            }
        }
        p.set(1, 1, 2, Rational::from_i64(1));
        p.set(1, 2, 1, Rational::from_i64(1));
        assert!(matches!(Algebra::validate(p), Err(Error::NonAssociative(..))));
    }

    #[test]
    fn small_characteristic_needs_declared_radical() {
        let a = truncated_polynomial::<Fp<2>>(3);
        assert!(a.radical().is_err());
        let mut p = AlgebraPresentation::<Fp<2>>::new(vec!["1".into(), "x".into(), "x^2".into()]);
        for i in 0..3 {
            for j in 0..3 {
                if i + j < 3 {
                    p.set(i, j, i + j, Fp::new(1));
                }
            }
        }
        p.radical_basis = Some(vec![vec![Fp::new(0), Fp::new(1), Fp::new(0)], vec![Fp::new(0), Fp::new(0), Fp::new(1)]]);
        let a = Algebra::validate(p).unwrap();
        assert_eq!(a.radical().unwrap().cols(), 2);
    }
}
