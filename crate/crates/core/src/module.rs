//! Modules and bimodules as families of action matrices, with Hom spaces,
//! subquotients, tensor products and isomorphism testing.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{combine, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{check_cap, quotient_projection, quotient_projection_onto, ColumnBasis, Matrix};
use crate::scalar::Field;
use crate::verdict::{Certificate, Verdict, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// A finite-dimensional module.  `actions[i]` is the matrix of the basis
/// vector `b_i` of the algebra acting on column vectors.  For right modules
/// the matrices satisfy `act(a)·act(b) = act(b·a)`, so a right module is a
/// left module over the opposite algebra with the same matrices.
#[derive(Clone)]
pub struct Module<F> {
    algebra: Arc<Algebra<F>>,
    side: Side,
    dim: usize,
    actions: Arc<Vec<Matrix<F>>>,
    pub label: String,
}

impl<F> std::fmt::Debug for Module<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Module({}, {}, dim {})", self.label, self.side.as_str(), self.dim)
    }
}

impl<F: Field> PartialEq for Module<F> {
    fn eq(&self, other: &Self) -> bool {
        self.side == other.side
            && self.dim == other.dim
            && self.algebra.same_as(&other.algebra)
            && self.actions == other.actions
    }
}

impl<F: Field> Module<F> {
    /// Validates the action law exhaustively over pairs of basis vectors.
    pub fn new(algebra: &Arc<Algebra<F>>, side: Side, actions: Vec<Matrix<F>>, label: impl Into<String>) -> Result<Self> {
        if actions.len() != algebra.dim() {
            return Err(Error::Malformed(format!(
                "{} action matrices for an algebra of dimension {}",
                actions.len(),
                algebra.dim()
            )));
        }
        let dim = actions.first().map_or(0, |m| m.rows());
        for m in &actions {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Malformed("action matrices must be square of equal size".into()));
            }
        }
        check_cap(dim)?;
        let m = Module { algebra: algebra.clone(), side, dim, actions: Arc::new(actions), label: label.into() };
        m.check_action_law()?;
        Ok(m)
    }

    /// Constructor for modules whose action law holds by construction.
    pub(crate) fn trusted(algebra: &Arc<Algebra<F>>, side: Side, dim: usize, actions: Vec<Matrix<F>>, label: impl Into<String>) -> Self {
        debug_assert_eq!(actions.len(), algebra.dim());
        Module { algebra: algebra.clone(), side, dim, actions: Arc::new(actions), label: label.into() }
    }

    /// Checks the unit and product laws for every pair of basis vectors.
    pub fn check_action_law(&self) -> Result<()> {
        let a = &self.algebra;
        if !self.act(a.unit()).is_identity() && self.dim > 0 {
            return Err(Error::ActionUnit);
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.actions[i].mul(&self.actions[j]);
                let prod = match self.side {
                    Side::Left => a.product_of_basis(i, j),
                    Side::Right => a.product_of_basis(j, i),
                };
                let mut rhs = Matrix::zeros(self.dim, self.dim);
                for (k, c) in prod {
                    rhs.add_scaled(c, &self.actions[*k]);
                }
                if lhs != rhs {
                    return Err(Error::ActionLaw(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn zero(algebra: &Arc<Algebra<F>>, side: Side) -> Self {
        Self::trusted(algebra, side, 0, vec![Matrix::zeros(0, 0); algebra.dim()], "0")
    }

    /// `ₐA`, acting by left multiplication.
    pub fn left_regular(algebra: &Arc<Algebra<F>>) -> Self {
        Self::trusted(algebra, Side::Left, algebra.dim(), algebra.left_mults().to_vec(), "A (left regular)")
    }

    /// `A_A`, acting by right multiplication.
    pub fn right_regular(algebra: &Arc<Algebra<F>>) -> Self {
        Self::trusted(algebra, Side::Right, algebra.dim(), algebra.right_mults().to_vec(), "A (right regular)")
    }

    /// The regular module on the same side as `self`.
    pub fn regular_like(&self) -> Self {
        match self.side {
            Side::Left => Self::left_regular(&self.algebra),
            Side::Right => Self::right_regular(&self.algebra),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    /// The algebra over which this is a left module: the base algebra for
    /// left modules, its opposite for right modules.
    pub fn acting_algebra(&self) -> Arc<Algebra<F>> {
        match self.side {
            Side::Left => self.algebra.clone(),
            Side::Right => self.algebra.opposite(),
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Matrix<F>] {
        &self.actions
    }

    pub fn action(&self, i: usize) -> &Matrix<F> {
        &self.actions[i]
    }

    /// Action of an arbitrary algebra element.
    pub fn act(&self, a: &[F]) -> Matrix<F> {
        combine(&self.actions, a, self.dim)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.algebra.fingerprint().hash(&mut h);
        self.side.hash(&mut h);
        self.dim.hash(&mut h);
        self.actions.hash(&mut h);
        h.finish()
    }

    pub fn same_structure(&self, other: &Self) -> Result<()> {
        if !self.algebra.same_as(&other.algebra) {
            return Err(Error::AlgebraMismatch(format!("{} and {} are over different algebras", self.label, other.label)));
        }
        if self.side != other.side {
            return Err(Error::SideMismatch(format!("{} is a {} module but {} is a {} module", self.label, self.side.as_str(), other.label, other.side.as_str())));
        }
        Ok(())
    }

    pub fn direct_sum(parts: &[&Module<F>]) -> Result<Module<F>> {
        let first = parts.first().ok_or_else(|| Error::Malformed("empty direct sum".into()))?;
        for p in parts {
            first.same_structure(p)?;
        }
        let alg = first.algebra.clone();
        let actions = (0..alg.dim())
            .map(|i| Matrix::direct_sum(&parts.iter().map(|p| &p.actions[i]).collect::<Vec<_>>()))
            .collect();
        let dim = parts.iter().map(|p| p.dim).sum();
        let label = parts.iter().map(|p| p.label.as_str()).collect::<Vec<_>>().join(" + ");
        Ok(Module::trusted(&alg, first.side, dim, actions, label))
    }

    /// Restriction to an invariant subspace spanned by the columns of `basis`.
    pub fn submodule(&self, basis: &Matrix<F>) -> (Module<F>, ModuleMap<F>) {
        let cb = ColumnBasis::new(basis.clone());
        let actions = self.actions.iter().map(|a| cb.coords_matrix(&a.mul(basis))).collect();
        let sub = Module::trusted(&self.algebra, self.side, basis.cols(), actions, format!("sub({})", self.label));
        let inc = ModuleMap::trusted(&sub, self, basis.clone());
        (sub, inc)
    }

    /// Quotient by an invariant subspace, with the standard complement.
    pub fn quotient(&self, sub: &Matrix<F>) -> (Module<F>, ModuleMap<F>) {
        let (p, s) = quotient_projection(sub);
        self.quotient_from(p, s)
    }

    /// Quotient by an invariant subspace, using `complement` (columns) as the
    /// basis of the quotient.
    pub fn quotient_with_basis(&self, sub: &Matrix<F>, complement: &Matrix<F>) -> Result<(Module<F>, ModuleMap<F>)> {
        let (p, s) = quotient_projection_onto(sub, complement)
            .ok_or_else(|| Error::Malformed("complement does not complete the submodule to a basis".into()))?;
        Ok(self.quotient_from(p, s))
    }

    fn quotient_from(&self, p: Matrix<F>, s: Matrix<F>) -> (Module<F>, ModuleMap<F>) {
        let actions = self.actions.iter().map(|a| p.mul(&a.mul(&s))).collect();
        let q = Module::trusted(&self.algebra, self.side, p.rows(), actions, format!("quot({})", self.label));
        let proj = ModuleMap::trusted(self, &q, p);
        (q, proj)
    }

    /// Basis (columns) of the submodule generated by the given vectors.
    pub fn generated_submodule(&self, vectors: &[Vec<F>]) -> Matrix<F> {
        let mut cols = Vec::new();
        for v in vectors {
            for a in self.actions.iter() {
                cols.push(a.mul_vec(v));
            }
        }
        if cols.is_empty() {
            return Matrix::zeros(self.dim, 0);
        }
        Matrix::from_columns(self.dim, &cols).column_space()
    }

    /// Basis of `J·M`.
    pub fn radical_submodule(&self) -> Result<Matrix<F>> {
        let rad = self.algebra.radical()?;
        let mut cols = Vec::new();
        for r in rad.columns() {
            let a = self.act(&r);
            cols.extend(a.columns());
        }
        if cols.is_empty() {
            return Ok(Matrix::zeros(self.dim, 0));
        }
        Ok(Matrix::from_columns(self.dim, &cols).column_space())
    }

    /// Basis of `{v : J·v = 0}`.
    pub fn socle(&self) -> Result<Matrix<F>> {
        let rad = self.algebra.radical()?;
        let blocks: Vec<Matrix<F>> = rad.columns().iter().map(|r| self.act(r)).collect();
        if blocks.is_empty() {
            return Ok(Matrix::identity(self.dim));
        }
        Ok(Matrix::vstack(&blocks.iter().collect::<Vec<_>>()).kernel())
    }
}

/// A homomorphism of modules, as a `target.dim × source.dim` matrix.
#[derive(Clone, Debug)]
pub struct ModuleMap<F> {
    pub source: Module<F>,
    pub target: Module<F>,
    pub matrix: Matrix<F>,
}

impl<F: Field> ModuleMap<F> {
    pub fn new(source: &Module<F>, target: &Module<F>, matrix: Matrix<F>) -> Result<Self> {
        source.same_structure(target)?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Malformed(format!(
                "map matrix is {}x{} but should be {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let f = ModuleMap { source: source.clone(), target: target.clone(), matrix };
        f.check()?;
        Ok(f)
    }

    pub(crate) fn trusted(source: &Module<F>, target: &Module<F>, matrix: Matrix<F>) -> Self {
        debug_assert_eq!((matrix.rows(), matrix.cols()), (target.dim(), source.dim()));
        ModuleMap { source: source.clone(), target: target.clone(), matrix }
    }

    /// Verifies `T·act_src(b) = act_tgt(b)·T` for every basis vector `b`.
    pub fn check(&self) -> Result<()> {
        for i in 0..self.source.algebra().dim() {
            if self.matrix.mul(self.source.action(i)) != self.target.action(i).mul(&self.matrix) {
                return Err(Error::NotIntertwining(i));
            }
        }
        Ok(())
    }

    pub fn identity(m: &Module<F>) -> Self {
        Self::trusted(m, m, Matrix::identity(m.dim()))
    }

    pub fn zero(source: &Module<F>, target: &Module<F>) -> Self {
        Self::trusted(source, target, Matrix::zeros(target.dim(), source.dim()))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleMap<F>) -> ModuleMap<F> {
        ModuleMap::trusted(&first.source, &self.target, self.matrix.mul(&first.matrix))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }
}

// ---------------------------------------------------------------------------
// Covers and Hom spaces

/// A surjection from a sum of indecomposable-or-free projectives onto a module.
#[derive(Clone, Debug)]
pub struct Cover<F> {
    /// Indices into the acting algebra's projective summands.
    pub summands: Vec<usize>,
    /// Images of the summand generators `e_k`, as vectors of the module.
    pub generators: Vec<Vec<F>>,
    pub projective: Module<F>,
    /// `target.dim × projective.dim`.
    pub map: Matrix<F>,
    /// Offset of each summand's block inside the projective.
    pub offsets: Vec<usize>,
    pub minimal: bool,
}

/// Builds the projective module `⊕ Λe_k` for the given summand indices.
pub fn projective_module<F: Field>(m_algebra: &Arc<Algebra<F>>, side: Side, summands: &[usize]) -> (Module<F>, Vec<usize>) {
    let acting = match side {
        Side::Left => m_algebra.clone(),
        Side::Right => m_algebra.opposite(),
    };
    let all = acting.projective_summands();
    let mut offsets = Vec::with_capacity(summands.len());
    let mut dim = 0;
    for &s in summands {
        offsets.push(dim);
        dim += all[s].dim();
    }
    let actions = (0..acting.dim())
        .map(|i| Matrix::direct_sum(&summands.iter().map(|&s| &all[s].actions[i]).collect::<Vec<_>>()))
        .collect();
    let label = format!("projective[{}]", summands.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","));
    (Module::trusted(m_algebra, side, dim, actions, label), offsets)
}

/// A projective cover (when `minimal` and the radical is known) or a free
/// cover from a greedily chosen generating set.
pub fn cover<F: Field>(m: &Module<F>, minimal: bool) -> Result<Cover<F>> {
    let acting = m.acting_algebra();
    let all = acting.projective_summands();
    let mut summands = Vec::new();
    let mut generators: Vec<Vec<F>> = Vec::new();
    let use_minimal = minimal && acting.has_radical();
    if minimal && !use_minimal {
        return Err(Error::MinimalUnavailable(format!("{} has no known radical", m.label)));
    }
    if use_minimal {
        let jm = m.radical_submodule()?;
        for s in 0..acting.idempotent_count() {
            let e = &all[s].idempotent;
            let em = m.act(e);
            let top_part = em.column_space();
            let base = em.mul(&jm);
            let mut current: Vec<Vec<F>> = base.column_space().columns();
            let mut rank = current.len();
            for v in top_part.columns() {
                let mut trial = current.clone();
                trial.push(v.clone());
                let r = Matrix::from_columns(m.dim(), &trial).rank();
                if r > rank {
                    rank = r;
                    current = trial;
                    summands.push(s);
                    generators.push(v);
                }
            }
        }
    } else {
        let free = acting.free_summand_index();
        let mut span = Matrix::zeros(m.dim(), 0);
        for i in 0..m.dim() {
            let mut e = vec![F::zero(); m.dim()];
            e[i] = F::one();
            let in_span = span.cols() > 0 && ColumnBasis::new(span.clone()).contains(&e);
            if !in_span {
                summands.push(free);
                generators.push(e);
                span = m.generated_submodule(&generators);
            }
        }
    }
    let (projective, offsets) = projective_module(m.algebra(), m.side(), &summands);
    check_cap(projective.dim())?;
    let mut map = Matrix::zeros(m.dim(), projective.dim());
    for (k, (&s, v)) in summands.iter().zip(&generators).enumerate() {
        let basis = all[s].basis.basis();
        for b in 0..basis.cols() {
            let image = m.act(&basis.col(b)).mul_vec(v);
            for (r, x) in image.into_iter().enumerate() {
                map[(r, offsets[k] + b)] = x;
            }
        }
    }
    Ok(Cover { summands, generators, projective, map, offsets, minimal: use_minimal })
}

/// A right inverse `S` of a surjective matrix `P` (so `P·S = I`).
pub(crate) fn section<F: Field>(p: &Matrix<F>) -> Matrix<F> {
    let piv = p.pivot_columns();
    assert_eq!(piv.len(), p.rows(), "section of a non-surjective map");
    let inv = p.select_cols(&piv).inverse().expect("pivot block invertible");
    let mut s = Matrix::zeros(p.cols(), p.rows());
    for (t, &c) in piv.iter().enumerate() {
        for j in 0..p.rows() {
            s[(c, j)] = inv[(t, j)].clone();
        }
    }
    s
}

/// A basis of `Hom(source, target)` together with fast coordinates.
#[derive(Clone, Debug)]
pub struct HomSpace<F> {
    pub source: Module<F>,
    pub target: Module<F>,
    /// Basis maps, each `target.dim × source.dim`.
    pub basis: Vec<Matrix<F>>,
    generators: Vec<Vec<F>>,
    image_bases: Vec<ColumnBasis<F>>,
    solution_basis: Option<ColumnBasis<F>>,
}

impl<F: Field> HomSpace<F> {
    /// Solves for all homomorphisms using a presentation of the source.
    pub fn compute(source: &Module<F>, target: &Module<F>) -> Result<Self> {
        source.same_structure(target)?;
        let cov = cover(source, source.acting_algebra().has_radical())?;
        let acting = source.acting_algebra();
        let all = acting.projective_summands();
        let n = target.dim();
        // Unknown block k ranges over e_k·target.
        let image_bases: Vec<ColumnBasis<F>> = cov
            .summands
            .iter()
            .map(|&s| ColumnBasis::new(target.act(&all[s].idempotent).column_space()))
            .collect();
        let mut unk_off = Vec::new();
        let mut nunk = 0;
        for b in &image_bases {
            unk_off.push(nunk);
            nunk += b.dim();
        }
        check_cap(nunk)?;
        // Relations: kernel of the cover map.
        let relations = cov.map.kernel();
        let mut reducer = RowReducer::new(nunk);
        for r in 0..relations.cols() {
            let rel = relations.col(r);
            let mut eq = Matrix::zeros(n, nunk);
            for (k, &s) in cov.summands.iter().enumerate() {
                let sb = &all[s].basis;
                let local: Vec<F> = rel[cov.offsets[k]..cov.offsets[k] + sb.dim()].to_vec();
                if local.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let lam = sb.basis().mul_vec(&local);
                let block = target.act(&lam).mul(image_bases[k].basis());
                eq.set_block(0, unk_off[k], &block);
            }
            for i in 0..n {
                reducer.push(eq.row(i).to_vec());
            }
        }
        let sols = reducer.kernel();
        let sect = section(&cov.map);
        let mut basis = Vec::with_capacity(sols.cols());
        for t in 0..sols.cols() {
            let c = sols.col(t);
            let mut phi = Matrix::zeros(n, cov.projective.dim());
            for (k, &s) in cov.summands.iter().enumerate() {
                let nk = image_bases[k].basis().mul_vec(&c[unk_off[k]..unk_off[k] + image_bases[k].dim()]);
                let sb = all[s].basis.basis();
                for b in 0..sb.cols() {
                    let img = target.act(&sb.col(b)).mul_vec(&nk);
                    for (row, x) in img.into_iter().enumerate() {
                        phi[(row, cov.offsets[k] + b)] = x;
                    }
                }
            }
            basis.push(phi.mul(&sect));
        }
        let solution_basis = (sols.cols() > 0).then(|| ColumnBasis::new(sols));
        Ok(HomSpace {
            source: source.clone(),
            target: target.clone(),
            basis,
            generators: cov.generators,
            image_bases,
            solution_basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a homomorphism in the stored basis.
    pub fn coordinates(&self, f: &Matrix<F>) -> Vec<F> {
        let Some(sb) = &self.solution_basis else {
            return Vec::new();
        };
        let mut c = Vec::new();
        for (g, ib) in self.generators.iter().zip(&self.image_bases) {
            c.extend(ib.coords(&f.mul_vec(g)));
        }
        sb.coords(&c)
    }

    /// Coordinates, or `None` when `f` is not a homomorphism in this space.
    pub fn coordinates_checked(&self, f: &Matrix<F>) -> Option<Vec<F>> {
        let c = self.coordinates(f);
        (&self.combination(&c) == f).then_some(c)
    }

    pub fn combination(&self, coeffs: &[F]) -> Matrix<F> {
        let mut out = Matrix::zeros(self.target.dim(), self.source.dim());
        for (b, c) in self.basis.iter().zip(coeffs) {
            out.add_scaled(c, b);
        }
        out
    }

    pub fn maps(&self) -> Vec<ModuleMap<F>> {
        self.basis.iter().map(|b| ModuleMap::trusted(&self.source, &self.target, b.clone())).collect()
    }
}

/// Basis of `Hom(m, n)`.
pub fn hom_space<F: Field>(m: &Module<F>, n: &Module<F>) -> Result<Vec<ModuleMap<F>>> {
    Ok(HomSpace::compute(m, n)?.maps())
}

/// Solves the full intertwining system `N_b X = X M_b` for every basis vector.
/// Slower than [`hom_space`]; kept as an independent cross-check.
pub fn hom_space_by_intertwining<F: Field>(m: &Module<F>, n: &Module<F>) -> Result<Vec<Matrix<F>>> {
    m.same_structure(n)?;
    let (dm, dn) = (m.dim(), n.dim());
    check_cap(dm * dn)?;
    let mut reducer = RowReducer::new(dm * dn);
    let id_m = Matrix::identity(dm);
    let id_n = Matrix::identity(dn);
    for i in 0..m.algebra().dim() {
        let eq = n.action(i).kron(&id_m).sub(&id_n.kron(&m.action(i).transpose()));
        for r in 0..eq.rows() {
            reducer.push(eq.row(r).to_vec());
        }
    }
    let k = reducer.kernel();
    Ok((0..k.cols()).map(|t| Matrix::from_fn(dn, dm, |i, j| k[(i * dm + j, t)].clone())).collect())
}

/// Incremental reduced row echelon form, used to take null spaces of tall
/// sparse systems without materialising them.
pub(crate) struct RowReducer<F> {
    cols: usize,
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> RowReducer<F> {
    pub(crate) fn new(cols: usize) -> Self {
        RowReducer { cols, rows: Vec::new() }
    }

    pub(crate) fn push(&mut self, mut v: Vec<F>) {
        if self.rows.len() == self.cols {
            return;
        }
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *x -= f.clone() * y.clone();
                    }
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return;
        };
        let inv = v[p].inverse().expect("nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        for (_, r) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x -= f.clone() * y.clone();
                    }
                }
            }
        }
        self.rows.push((p, v));
    }

    pub(crate) fn kernel(&self) -> Matrix<F> {
        let mut is_p = vec![false; self.cols];
        for (p, _) in &self.rows {
            is_p[*p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_p[c]).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        for (t, &f) in free.iter().enumerate() {
            k[(f, t)] = F::one();
            for (p, r) in &self.rows {
                if !r[f].is_zero() {
                    k[(*p, t)] = -r[f].clone();
                }
            }
        }
        k
    }
}

// ---------------------------------------------------------------------------
// Subquotients

#[derive(Clone, Debug)]
pub struct Subquotient<F> {
    pub kernel: Module<F>,
    pub kernel_inclusion: ModuleMap<F>,
    pub image: Module<F>,
    pub image_inclusion: ModuleMap<F>,
    pub cokernel: Module<F>,
    pub cokernel_projection: ModuleMap<F>,
}

pub fn subquotient<F: Field>(f: &ModuleMap<F>) -> Subquotient<F> {
    let k = f.matrix.kernel();
    let (kernel, kernel_inclusion) = f.source.submodule(&k);
    let im = f.matrix.column_space();
    let (image, image_inclusion) = f.target.submodule(&im);
    let (cokernel, cokernel_projection) = f.target.quotient(&im);
    Subquotient {
        kernel: kernel.with_label(format!("ker({})", f.source.label)),
        kernel_inclusion,
        image: image.with_label(format!("im({})", f.source.label)),
        image_inclusion,
        cokernel: cokernel.with_label(format!("coker({})", f.target.label)),
        cokernel_projection,
    }
}

/// Kernel, image and cokernel of `f`, restricted to what a caller needs.
pub fn cokernel<F: Field>(f: &ModuleMap<F>) -> (Module<F>, ModuleMap<F>) {
    let im = f.matrix.column_space();
    f.target.quotient(&im)
}

pub fn kernel<F: Field>(f: &ModuleMap<F>) -> (Module<F>, ModuleMap<F>) {
    f.source.submodule(&f.matrix.kernel())
}

// ---------------------------------------------------------------------------
// Bimodules and tensor products

/// An `A`-`B`-bimodule.
#[derive(Clone)]
pub struct Bimodule<F> {
    pub left_algebra: Arc<Algebra<F>>,
    pub right_algebra: Arc<Algebra<F>>,
    dim: usize,
    left: Arc<Vec<Matrix<F>>>,
    right: Arc<Vec<Matrix<F>>>,
    pub label: String,
}

impl<F> std::fmt::Debug for Bimodule<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Bimodule({}, dim {})", self.label, self.dim)
    }
}

impl<F: Field> Bimodule<F> {
    pub fn new(
        left_algebra: &Arc<Algebra<F>>,
        right_algebra: &Arc<Algebra<F>>,
        left: Vec<Matrix<F>>,
        right: Vec<Matrix<F>>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let label = label.into();
        let lm = Module::new(left_algebra, Side::Left, left, label.clone())?;
        let rm = Module::new(right_algebra, Side::Right, right, label.clone())?;
        if lm.dim() != rm.dim() {
            return Err(Error::Malformed("left and right actions have different sizes".into()));
        }
        for i in 0..left_algebra.dim() {
            for j in 0..right_algebra.dim() {
                if lm.action(i).mul(rm.action(j)) != rm.action(j).mul(lm.action(i)) {
                    return Err(Error::BimoduleCommute(i, j));
                }
            }
        }
        Ok(Bimodule {
            left_algebra: left_algebra.clone(),
            right_algebra: right_algebra.clone(),
            dim: lm.dim(),
            left: lm.actions.clone(),
            right: rm.actions.clone(),
            label,
        })
    }

    pub(crate) fn trusted(
        left_algebra: &Arc<Algebra<F>>,
        right_algebra: &Arc<Algebra<F>>,
        dim: usize,
        left: Vec<Matrix<F>>,
        right: Vec<Matrix<F>>,
        label: impl Into<String>,
    ) -> Self {
        Bimodule {
            left_algebra: left_algebra.clone(),
            right_algebra: right_algebra.clone(),
            dim,
            left: Arc::new(left),
            right: Arc::new(right),
            label: label.into(),
        }
    }

    /// `A` as an `A`-`A`-bimodule.
    pub fn regular(a: &Arc<Algebra<F>>) -> Self {
        Self::trusted(a, a, a.dim(), a.left_mults().to_vec(), a.right_mults().to_vec(), "A")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_actions(&self) -> &[Matrix<F>] {
        &self.left
    }

    pub fn right_actions(&self) -> &[Matrix<F>] {
        &self.right
    }

    pub fn as_left_module(&self) -> Module<F> {
        Module::trusted(&self.left_algebra, Side::Left, self.dim, self.left.to_vec(), self.label.clone())
    }

    pub fn as_right_module(&self) -> Module<F> {
        Module::trusted(&self.right_algebra, Side::Right, self.dim, self.right.to_vec(), self.label.clone())
    }
}

/// `u ⊗_B y` realised as a cokernel of the balancing relations.
#[derive(Clone, Debug)]
pub struct TensorProduct<F> {
    pub dim: usize,
    /// `dim × (dim u · dim y)`: from `u ⊗_k y` (index `i·dim y + l`) onto the quotient.
    pub projection: Matrix<F>,
    /// A right inverse of `projection`.
    pub section: Matrix<F>,
    pub u_dim: usize,
    pub y_dim: usize,
    /// The induced left module when `u` is a bimodule.
    pub module: Option<Module<F>>,
}

impl<F: Field> TensorProduct<F> {
    /// Image of the pure tensor `u ⊗ y`.
    pub fn embed(&self, u: &[F], y: &[F]) -> Vec<F> {
        let mut v = Vec::with_capacity(self.u_dim * self.y_dim);
        for a in u {
            for b in y {
                v.push(a.clone() * b.clone());
            }
        }
        self.projection.mul_vec(&v)
    }

    /// Matrix of `y ↦ e_i ⊗ y` for the `i`-th basis vector of `u`.
    pub fn pure_tensor_map(&self, i: usize) -> Matrix<F> {
        self.projection.block(0, i * self.y_dim, self.dim, self.y_dim)
    }
}

/// The right structure of `u` as a list of matrices, plus an optional left one.
pub enum TensorLeft<'a, F> {
    Right(&'a Module<F>),
    Bimodule(&'a Bimodule<F>),
}

/// `u ⊗_B y`, where `u` is a right `B`-module or an `A`-`B`-bimodule.
pub fn tensor_over<F: Field>(u: TensorLeft<'_, F>, y: &Module<F>) -> Result<TensorProduct<F>> {
    let (ualg, uright, udim, uleft): (&Arc<Algebra<F>>, &[Matrix<F>], usize, Option<(&Arc<Algebra<F>>, &[Matrix<F>])>) = match &u {
        TensorLeft::Right(m) => {
            if m.side() != Side::Right {
                return Err(Error::SideMismatch("first tensor factor must be a right module".into()));
            }
            (m.algebra(), m.actions(), m.dim(), None)
        }
        TensorLeft::Bimodule(b) => (&b.right_algebra, b.right_actions(), b.dim(), Some((&b.left_algebra, b.left_actions()))),
    };
    if y.side() != Side::Left {
        return Err(Error::SideMismatch("second tensor factor must be a left module".into()));
    }
    if !ualg.same_as(y.algebra()) {
        return Err(Error::AlgebraMismatch("tensor factors are over different algebras".into()));
    }
    let dy = y.dim();
    let n = udim * dy;
    check_cap(n)?;
    let id_u = Matrix::identity(udim);
    let id_y = Matrix::identity(dy);
    let mut rel_cols: Vec<Vec<F>> = Vec::new();
    for &g in ualg.generators() {
        // (u·g) ⊗ y − u ⊗ (g·y)
        let r = uright[g].kron(&id_y).sub(&id_u.kron(y.action(g)));
        rel_cols.extend(r.columns());
    }
    let rel = if rel_cols.is_empty() { Matrix::zeros(n, 0) } else { Matrix::from_columns(n, &rel_cols) };
    let (projection, section) = quotient_projection(&rel);
    let dim = projection.rows();
    let module = uleft.map(|(la, lacts)| {
        let actions = lacts.iter().map(|a| projection.mul(&a.kron(&id_y)).mul(&section)).collect();
        Module::trusted(la, Side::Left, dim, actions, format!("{} (x) {}", "U", y.label))
    });
    Ok(TensorProduct { dim, projection, section, u_dim: udim, y_dim: dy, module })
}

// ---------------------------------------------------------------------------
// Isomorphism testing

const EXHAUSTIVE_LIMIT: u64 = 10_000;
const RANDOM_TRIALS: usize = 48;

/// Decides whether `m ≅ n`, returning an explicit isomorphism when found.
pub fn is_isomorphic<F: Field>(m: &Module<F>, n: &Module<F>, seed: u64) -> Result<Verdict<F>> {
    m.same_structure(n)?;
    if m.dim() != n.dim() {
        return Ok(Verdict::Fails(Witness::DimensionMismatch { left: m.dim(), right: n.dim() }));
    }
    if m.dim() == 0 {
        return Ok(Verdict::Holds(Certificate::Isomorphism(Matrix::zeros(0, 0))));
    }
    let h = HomSpace::compute(m, n)?;
    if h.dim() == 0 {
        return Ok(Verdict::Fails(Witness::NoNonzeroMaps));
    }
    let back = HomSpace::compute(n, m)?;
    if back.dim() == 0 {
        return Ok(Verdict::Fails(Witness::NoNonzeroMaps));
    }
    let end_m = HomSpace::compute(m, m)?.dim();
    if end_m != h.dim() || back.dim() != h.dim() {
        return Ok(Verdict::Fails(Witness::InvariantMismatch(format!(
            "dim End = {end_m}, dim Hom(m,n) = {}, dim Hom(n,m) = {}",
            h.dim(),
            back.dim()
        ))));
    }
    for b in &h.basis {
        if b.rank() == m.dim() {
            return Ok(Verdict::Holds(Certificate::Isomorphism(b.clone())));
        }
    }
    if let Some(q) = F::order() {
        let hd = h.dim() as u32;
        if let Some(total) = q.checked_pow(hd) {
            if total <= EXHAUSTIVE_LIMIT {
                for idx in 0..total {
                    let mut rest = idx;
                    let coeffs: Vec<F> = (0..hd)
                        .map(|_| {
                            let c = F::nth_element(rest % q);
                            rest /= q;
                            c
                        })
                        .collect();
                    let f = h.combination(&coeffs);
                    if f.rank() == m.dim() {
                        return Ok(Verdict::Holds(Certificate::Isomorphism(f)));
                    }
                }
                return Ok(Verdict::Fails(Witness::NoInvertibleMap));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIALS {
        let coeffs: Vec<F> = (0..h.dim()).map(|_| F::sample(&mut rng, 1000)).collect();
        let f = h.combination(&coeffs);
        if f.rank() == m.dim() {
            return Ok(Verdict::Holds(Certificate::Isomorphism(f)));
        }
    }
    Ok(Verdict::UnknownUpTo(RANDOM_TRIALS))
}

/// The vector-space dual `D(m) = Hom_k(m, k)` on the opposite side.
pub fn k_dual<F: Field>(m: &Module<F>) -> Module<F> {
    let actions = m.actions().iter().map(|a| a.transpose()).collect();
    Module::trusted(m.algebra(), m.side().flip(), m.dim(), actions, format!("D({})", m.label))
}

/// Radical of the algebra and socle of `m` (or of the left regular module).
pub fn radical_and_socle<F: Field>(a: &Arc<Algebra<F>>, m: Option<&Module<F>>) -> Result<(Matrix<F>, Matrix<F>)> {
    let rad = a.radical()?.clone();
    let soc = match m {
        Some(m) => m.socle()?,
        None => Module::left_regular(a).socle()?,
    };
    Ok((rad, soc))
}

/// Indecomposable projectives `Ae` and simples `Ae/Je` for the declared idempotents.
pub struct SimplesAndProjectives<F> {
    pub projectives: Vec<(Module<F>, Vec<F>)>,
    pub simples: Vec<Module<F>>,
}

pub fn simples_and_projectives<F: Field>(a: &Arc<Algebra<F>>) -> Result<SimplesAndProjectives<F>> {
    let idem = a.idempotents().ok_or_else(|| Error::MinimalUnavailable("no idempotents declared".into()))?;
    let rad = a.radical()?;
    let mut projectives = Vec::new();
    let mut simples = Vec::new();
    for (s, e) in idem.iter().enumerate() {
        let (p, _) = projective_module(a, Side::Left, &[s]);
        let summand = &a.projective_summands()[s];
        let je: Vec<Vec<F>> = rad.columns().iter().map(|r| summand.basis.coords(&a.mul(r, e))).collect();
        let je = if je.is_empty() { Matrix::zeros(p.dim(), 0) } else { Matrix::from_columns(p.dim(), &je).column_space() };
        let (simple, _) = p.quotient(&je);
        projectives.push((p.with_label(format!("P({})", s + 1)), e.clone()));
        simples.push(simple.with_label(format!("S({})", s + 1)));
    }
    Ok(SimplesAndProjectives { projectives, simples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::truncated_polynomial;
    use crate::scalar::Rational;

    #[test]
    fn regular_self_hom() {
        let a = truncated_polynomial::<Rational>(3);
        let l = Module::left_regular(&a);
        l.check_action_law().unwrap();
        let h = hom_space(&l, &l).unwrap();
        assert_eq!(h.len(), 3);
        for f in &h {
            f.check().unwrap();
        }
        let r = Module::right_regular(&a);
        r.check_action_law().unwrap();
        assert_eq!(hom_space(&r, &r).unwrap().len(), 3);
    }

    #[test]
    fn simple_tensor_simple() {
        let a = truncated_polynomial::<Rational>(2);
        let (s, _) = Module::left_regular(&a).quotient(&Matrix::from_i64_rows(&[&[0], &[1]]));
        let d = k_dual(&s);
        let t = tensor_over(TensorLeft::Right(&d), &s).unwrap();
        assert_eq!(t.dim, 1);
    }
}
