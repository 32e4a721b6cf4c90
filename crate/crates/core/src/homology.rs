//! Projective resolutions, Ext and Tor tables, chain-map lifting and the
//! bounded test for vanishing of `Ext^{≥1}(M, A)`.

use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{ColumnBasis, LinalgError, Matrix};
use crate::module::{cover, is_isomorphic, projective_module, Module, ModuleMap, Side};
use crate::scalar::Field;
use crate::verdict::{Certificate, Verdict, Witness};

/// Default number of degrees examined by Ext/Tor based predicates.
pub const DEFAULT_BOUND: usize = 6;

/// Raw data of a partially computed resolution.  It holds no reference to the
/// algebra, so it can live in the algebra's own memo table without a cycle.
#[derive(Clone)]
struct ResolutionState<F> {
    /// Summand indices of each computed term.
    terms: Vec<Vec<usize>>,
    /// `differentials[0]` is the augmentation, `differentials[i]` is `d_i`.
    differentials: Vec<Matrix<F>>,
    /// Generator images of each term inside the previous one.
    generators: Vec<Vec<Vec<F>>>,
    /// Basis of the kernel of the last differential, in its source coordinates.
    pending_kernel: Matrix<F>,
    /// Set once a zero kernel has been reached.
    finished: bool,
}

/// A projective resolution `… → P_1 → P_0 → M → 0`, each term a direct sum of
/// the acting algebra's projective summands `Λe`.
#[derive(Clone, Debug)]
pub struct ProjResolution<F> {
    pub target: Module<F>,
    pub minimal: bool,
    /// Summand indices of `P_i` (into `acting_algebra().projective_summands()`).
    pub terms: Vec<Vec<usize>>,
    pub modules: Vec<Module<F>>,
    /// `differentials[0]`: `P_0 → M`; `differentials[i]`: `P_i → P_{i-1}`.
    pub differentials: Vec<Matrix<F>>,
    /// `generators[i][j]`: image of the `j`-th summand generator of `P_i`.
    pub generators: Vec<Vec<Vec<F>>>,
    /// True when the resolution is known to stop: `P_i = 0` past the last term.
    pub complete: bool,
}

impl<F: Field> ProjResolution<F> {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Summands of `P_i`, empty past the end of a complete resolution.
    pub fn term(&self, i: usize) -> &[usize] {
        self.terms.get(i).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn term_dims(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.dim()).collect()
    }

    /// `d_i` as a module map (with `i = 0` the augmentation).
    pub fn differential_map(&self, i: usize) -> ModuleMap<F> {
        let target = if i == 0 { &self.target } else { &self.modules[i - 1] };
        ModuleMap::new(&self.modules[i], target, self.differentials[i].clone()).expect("differentials are module maps")
    }

    /// The `i`-th syzygy `Ω^i M` (image of `d_i` inside `P_{i-1}`), `i ≥ 1`.
    pub fn syzygy(&self, i: usize) -> Option<Module<F>> {
        if i == 0 {
            return Some(self.target.clone());
        }
        if i > self.modules.len() {
            return None;
        }
        let p = &self.modules[i - 1];
        if i >= self.modules.len() {
            // Past a complete resolution the image is zero.
            return self.complete.then(|| Module::zero(self.target.algebra(), self.target.side()));
        }
        let im = self.differentials[i].column_space();
        Some(p.submodule(&im).0.with_label(format!("syzygy {i} of {}", self.target.label)))
    }

    /// Checks `d∘d = 0`, exactness, surjectivity of the augmentation and, for
    /// minimal resolutions, that every differential lands in the radical.
    pub fn verify(&self) -> Result<()> {
        let n = self.modules.len();
        for i in 0..n {
            self.differential_map(i).check()?;
        }
        if n > 0 && self.differentials[0].rank() != self.target.dim() {
            return Err(Error::Invariant("augmentation is not surjective".into()));
        }
        for i in 1..n {
            if !self.differentials[i - 1].mul(&self.differentials[i]).is_zero() {
                return Err(Error::Invariant(format!("d_{} d_{} != 0", i - 1, i)));
            }
            let dim_p = self.modules[i - 1].dim();
            if self.differentials[i].rank() != dim_p - self.differentials[i - 1].rank() {
                return Err(Error::Invariant(format!("not exact at P_{}", i - 1)));
            }
        }
        if self.minimal {
            for i in 1..n {
                let rad = self.modules[i - 1].radical_submodule()?;
                let rb = ColumnBasis::new(rad);
                for c in self.differentials[i].columns() {
                    if !rb.contains(&c) {
                        return Err(Error::Invariant(format!("d_{i} leaves the radical")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Splits a vector of `P_i` into algebra elements, one per summand.
    pub fn split(&self, i: usize, v: &[F]) -> Vec<Vec<F>> {
        split_into_summands(&self.target.acting_algebra(), self.term(i), v)
    }
}

fn split_into_summands<F: Field>(acting: &Algebra<F>, summands: &[usize], v: &[F]) -> Vec<Vec<F>> {
    let all = acting.projective_summands();
    let mut off = 0;
    let mut out = Vec::with_capacity(summands.len());
    for &s in summands {
        let d = all[s].dim();
        out.push(all[s].basis.basis().mul_vec(&v[off..off + d]));
        off += d;
    }
    out
}

fn new_state<F: Field>(m: &Module<F>, minimal: bool) -> Result<ResolutionState<F>> {
    let c = cover(m, minimal)?;
    let pending_kernel = c.map.kernel();
    let finished = pending_kernel.cols() == 0;
    Ok(ResolutionState {
        terms: vec![c.summands],
        differentials: vec![c.map],
        generators: vec![c.generators],
        pending_kernel,
        finished,
    })
}

fn extend_state<F: Field>(st: &mut ResolutionState<F>, m: &Module<F>, minimal: bool) -> Result<()> {
    if st.finished {
        return Ok(());
    }
    let last = st.terms.last().expect("non-empty");
    let (p, _) = projective_module(m.algebra(), m.side(), last);
    let (k, inc) = p.submodule(&st.pending_kernel);
    let c = cover(&k, minimal)?;
    let d = inc.matrix.mul(&c.map);
    let gens = c.generators.iter().map(|g| inc.matrix.mul_vec(g)).collect();
    st.pending_kernel = c.map.kernel();
    st.finished = st.pending_kernel.cols() == 0;
    st.terms.push(c.summands);
    st.differentials.push(d);
    st.generators.push(gens);
    Ok(())
}

type SharedState<F> = Arc<Mutex<Option<ResolutionState<F>>>>;

// The entry stores the target module, which holds an `Arc` to the algebra; to
// avoid a reference cycle the memo table keeps only the actions.
struct CachedKey<F> {
    side: Side,
    actions: Vec<Matrix<F>>,
    minimal: bool,
    state: SharedState<F>,
}

fn shared_state<F: Field>(m: &Module<F>, minimal: bool) -> SharedState<F> {
    let alg = m.algebra();
    let key = m.fingerprint() ^ (minimal as u64);
    let mut table = alg.resolution_cache.lock().expect("cache poisoned");
    let bucket = table.entry(key).or_default();
    for e in bucket.iter() {
        if let Some(c) = e.downcast_ref::<CachedKey<F>>() {
            if c.minimal == minimal && c.side == m.side() && c.actions == m.actions() {
                return c.state.clone();
            }
        }
    }
    let state: SharedState<F> = Arc::new(Mutex::new(None));
    bucket.push(Arc::new(CachedKey { side: m.side(), actions: m.actions().to_vec(), minimal, state: state.clone() }));
    state
}

/// Resolves `m` through `P_n` (fewer terms when the resolution stops).
/// Results are memoised per module and flavour inside the algebra.
pub fn resolve<F: Field>(m: &Module<F>, n: usize, minimal: bool) -> Result<ProjResolution<F>> {
    let minimal = minimal && m.acting_algebra().has_radical();
    let shared = shared_state(m, minimal);
    let mut guard = shared.lock().expect("resolution state poisoned");
    if guard.is_none() {
        *guard = Some(new_state(m, minimal)?);
    }
    let st = guard.as_mut().expect("initialised");
    while st.terms.len() <= n && !st.finished {
        extend_state(st, m, minimal)?;
    }
    let take = st.terms.len().min(n + 1);
    let terms: Vec<Vec<usize>> = st.terms[..take].to_vec();
    let modules = terms.iter().map(|t| projective_module(m.algebra(), m.side(), t).0).collect();
    Ok(ProjResolution {
        target: m.clone(),
        minimal,
        terms,
        modules,
        differentials: st.differentials[..take].to_vec(),
        generators: st.generators[..take].to_vec(),
        complete: st.finished && take == st.terms.len(),
    })
}

/// Like [`resolve`], but requires minimal covers.
pub fn resolve_minimal<F: Field>(m: &Module<F>, n: usize) -> Result<ProjResolution<F>> {
    if !m.acting_algebra().has_radical() {
        return Err(Error::MinimalUnavailable(format!("{} has no computable radical", m.label)));
    }
    resolve(m, n, true)
}

// ---------------------------------------------------------------------------
// Cochains Hom(P_•, N) and chains U ⊗ P_•

/// Bases of `e_s N` for each projective summand `s`.
struct IdempotentParts<F> {
    parts: Vec<ColumnBasis<F>>,
}

impl<F: Field> IdempotentParts<F> {
    fn new(acting: &Algebra<F>, n: &Module<F>) -> Self {
        let parts = acting
            .projective_summands()
            .iter()
            .map(|s| ColumnBasis::new(n.act(&s.idempotent).column_space()))
            .collect();
        IdempotentParts { parts }
    }

    fn dim_of(&self, summands: &[usize]) -> usize {
        summands.iter().map(|&s| self.parts[s].dim()).sum()
    }
}

/// Matrix of `(n_k)_k ↦ (Σ_k λ_{jk} n_k)_j` from `⊕_k e_k N` to `⊕_j e_j N`,
/// where `λ_{jk}` are the components of the images `images[j]`.
fn pullback_matrix<F: Field>(
    acting: &Algebra<F>,
    n: &Module<F>,
    parts: &IdempotentParts<F>,
    from: &[usize],
    to: &[usize],
    images: &[Vec<F>],
) -> Matrix<F> {
    let rows = parts.dim_of(to);
    let cols = parts.dim_of(from);
    let mut out = Matrix::zeros(rows, cols);
    let mut r0 = 0;
    for (j, img) in images.iter().enumerate() {
        let tj = &parts.parts[to[j]];
        let comps = split_into_summands(acting, from, img);
        let mut c0 = 0;
        for (k, lam) in comps.iter().enumerate() {
            let sk = &parts.parts[from[k]];
            if sk.dim() > 0 && tj.dim() > 0 && lam.iter().any(|x| !x.is_zero()) {
                let block = tj.coords_matrix(&n.act(lam).mul(sk.basis()));
                out.set_block(r0, c0, &block);
            }
            c0 += sk.dim();
        }
        r0 += tj.dim();
    }
    out
}

/// The cochain complex `Hom(P_•, N)` in the coordinates `⊕ e_k N`.
pub struct HomComplex<F> {
    /// Dimension of `C^i`.
    pub dims: Vec<usize>,
    /// `coboundaries[i]: C^i → C^{i+1}`.
    pub coboundaries: Vec<Matrix<F>>,
}

impl<F: Field> HomComplex<F> {
    pub fn new(res: &ProjResolution<F>, n: &Module<F>) -> Result<Self> {
        res.target.same_structure(n)?;
        let acting = res.target.acting_algebra();
        let parts = IdempotentParts::new(&acting, n);
        let len = res.len();
        let dims = (0..len).map(|i| parts.dim_of(res.term(i))).collect();
        let mut coboundaries = Vec::new();
        for i in 0..len.saturating_sub(1) {
            coboundaries.push(pullback_matrix(&acting, n, &parts, res.term(i), res.term(i + 1), &res.generators[i + 1]));
        }
        Ok(HomComplex { dims, coboundaries })
    }

    /// `dim H^i`, available for `i + 1 < len` (or any `i` of a complete resolution).
    pub fn cohomology_dim(&self, i: usize, complete: bool) -> Option<usize> {
        if i >= self.dims.len() {
            return complete.then_some(0);
        }
        let out = match self.coboundaries.get(i) {
            Some(d) => d.rank(),
            None if complete => 0,
            None => return None,
        };
        let inc = if i == 0 { 0 } else { self.coboundaries[i - 1].rank() };
        Some(self.dims[i] - out - inc)
    }
}

/// `dim Ext^i(m, n)` for `0 ≤ i ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTable {
    pub source: String,
    pub target: String,
    pub dims: Vec<usize>,
}

impl ExtTable {
    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source,
            "target": self.target,
            "rows": self.dims.iter().enumerate().map(|(i, d)| json!({"i": i, "dim": d})).collect::<Vec<_>>(),
        })
    }

    /// First positive degree with a nonzero group.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.dims.iter().enumerate().skip(1).find(|(_, &d)| d != 0).map(|(i, _)| i)
    }
}

fn ext_dims_with<F: Field>(m: &Module<F>, n: &Module<F>, bound: usize, minimal: bool) -> Result<ExtTable> {
    m.same_structure(n)?;
    let res = resolve(m, bound + 1, minimal)?;
    let cx = HomComplex::new(&res, n)?;
    let dims = (0..=bound)
        .map(|i| cx.cohomology_dim(i, res.complete).ok_or_else(|| Error::Invariant("resolution too short".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExtTable { source: m.label.clone(), target: n.label.clone(), dims })
}

/// `dim Ext^i(m, n)` for `0 ≤ i ≤ bound`, using minimal covers when the
/// algebra allows them.
pub fn ext_dims<F: Field>(m: &Module<F>, n: &Module<F>, bound: usize) -> Result<ExtTable> {
    ext_dims_with(m, n, bound, true)
}

/// `dim Ext^i(m, n)` computed from a resolution by free modules.
pub fn ext_dims_free<F: Field>(m: &Module<F>, n: &Module<F>, bound: usize) -> Result<ExtTable> {
    ext_dims_with(m, n, bound, false)
}

fn check_tor_sides<F: Field>(u: &Module<F>, x: &Module<F>) -> Result<()> {
    if u.side() != Side::Right || x.side() != Side::Left {
        return Err(Error::SideMismatch("Tor needs a right module and a left module".into()));
    }
    if !u.algebra().same_as(x.algebra()) {
        return Err(Error::AlgebraMismatch("Tor factors are over different algebras".into()));
    }
    Ok(())
}

/// Homology of `resolved ⊗ P_•` where `other` supplies the coefficients.
fn tor_from_resolution<F: Field>(res: &ProjResolution<F>, other: &Module<F>, bound: usize) -> Result<Vec<Option<usize>>> {
    let acting = res.target.acting_algebra();
    let parts = IdempotentParts::new(&acting, other);
    let len = res.len();
    let dims: Vec<usize> = (0..len).map(|i| parts.dim_of(res.term(i))).collect();
    // boundary[i]: C_{i+1} → C_i, the transpose shape of the Hom cochains.
    let boundaries: Vec<Matrix<F>> = (0..len.saturating_sub(1))
        .map(|i| pullback_matrix(&acting, other, &parts, res.term(i), res.term(i + 1), &res.generators[i + 1]).transpose())
        .collect();
    let mut out = Vec::with_capacity(bound + 1);
    for i in 0..=bound {
        if i >= len {
            out.push(res.complete.then_some(0));
            continue;
        }
        let incoming = match boundaries.get(i) {
            Some(b) => b.rank(),
            None if res.complete => 0,
            None => {
                out.push(None);
                continue;
            }
        };
        let outgoing = if i == 0 { 0 } else { boundaries[i - 1].rank() };
        out.push(Some(dims[i] - incoming - outgoing));
    }
    Ok(out)
}

/// `dim Tor_i(u, x)` for `0 ≤ i ≤ bound`, resolving the left module `x`.
pub fn tor_dims<F: Field>(u: &Module<F>, x: &Module<F>, bound: usize) -> Result<Vec<usize>> {
    check_tor_sides(u, x)?;
    let res = resolve(x, bound + 1, true)?;
    let ut = crate::module::k_dual(u);
    // u ⊗ Λe ≅ u·e, and the chain maps are transposes of the Hom cochain maps
    // into D(u) = Hom_k(u, k).
    tor_from_resolution(&res, &ut, bound)?
        .into_iter()
        .map(|d| d.ok_or_else(|| Error::Invariant("resolution too short".into())))
        .collect()
}

/// `Tor_i(u, x)` computed by resolving the right module `u` instead.  When the
/// resolution of `u` stops within the bound, every higher group is zero and
/// the returned flag is true.
pub fn tor_dims_resolving_right<F: Field>(u: &Module<F>, x: &Module<F>, bound: usize) -> Result<(Vec<usize>, bool)> {
    check_tor_sides(u, x)?;
    let res = resolve(u, bound + 1, true)?;
    let xt = crate::module::k_dual(x);
    let dims = tor_from_resolution(&res, &xt, bound)?
        .into_iter()
        .map(|d| d.ok_or_else(|| Error::Invariant("resolution too short".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok((dims, res.complete))
}

// ---------------------------------------------------------------------------
// Chain maps

/// Matrix of the module map `⊕ Λe_j → target` sending generator `j` to `images[j]`.
pub fn map_from_generators<F: Field>(source_summands: &[usize], source: &Module<F>, target: &Module<F>, images: &[Vec<F>]) -> Matrix<F> {
    let acting = source.acting_algebra();
    let all = acting.projective_summands();
    let mut out = Matrix::zeros(target.dim(), source.dim());
    let mut off = 0;
    for (&s, img) in source_summands.iter().zip(images) {
        let b = all[s].basis.basis();
        for c in 0..b.cols() {
            let v = target.act(&b.col(c)).mul_vec(img);
            for (r, x) in v.into_iter().enumerate() {
                out[(r, off + c)] = x;
            }
        }
        off += b.cols();
    }
    out
}

/// Lifts `f: res_src.target → res_tgt.target` to maps `P_i → Q_i`, `0 ≤ i ≤ n`.
/// Each entry also records the generator images used to build it.
pub fn lift_chain_map<F: Field>(
    res_src: &ProjResolution<F>,
    res_tgt: &ProjResolution<F>,
    f: &Matrix<F>,
    n: usize,
) -> Result<Vec<(Matrix<F>, Vec<Vec<F>>)>> {
    let acting = res_src.target.acting_algebra();
    let all = acting.projective_summands();
    let mut out: Vec<(Matrix<F>, Vec<Vec<F>>)> = Vec::new();
    for i in 0..=n {
        if i >= res_src.len() {
            break;
        }
        let src_mod = &res_src.modules[i];
        let tgt_mod = match res_tgt.modules.get(i) {
            Some(m) => m.clone(),
            None => Module::zero(res_tgt.target.algebra(), res_tgt.target.side()),
        };
        // What generator j must hit, expressed one level down.
        let wanted: Vec<Vec<F>> = res_src.generators[i]
            .iter()
            .map(|g| if i == 0 { f.mul_vec(g) } else { out[i - 1].0.mul_vec(g) })
            .collect();
        let d = if i < res_tgt.len() { res_tgt.differentials[i].clone() } else { Matrix::zeros(wanted.first().map_or(0, |w| w.len()), 0) };
        let mut images = Vec::with_capacity(wanted.len());
        for (j, w) in wanted.iter().enumerate() {
            let pre = if d.cols() == 0 {
                if w.iter().any(|x| !x.is_zero()) {
                    return Err(Error::Invariant("chain map cannot be lifted".into()));
                }
                Vec::new()
            } else {
                d.solve(w).ok_or_else(|| Error::Invariant("chain map cannot be lifted".into()))?
            };
            let e = &all[res_src.term(i)[j]].idempotent;
            let img = if pre.is_empty() { pre } else { tgt_mod.act(e).mul_vec(&pre) };
            images.push(img);
        }
        let mat = if tgt_mod.dim() == 0 {
            Matrix::zeros(0, src_mod.dim())
        } else {
            map_from_generators(res_src.term(i), src_mod, &tgt_mod, &images)
        };
        out.push((mat, images));
    }
    Ok(out)
}

/// Whether `f: m → m'` induces isomorphisms `Ext^i(m', n) → Ext^i(m, n)` for
/// `1 ≤ i ≤ bound`.  Returns per-degree answers.
pub fn induced_ext_isomorphisms<F: Field>(f: &ModuleMap<F>, n: &Module<F>, bound: usize) -> Result<Vec<bool>> {
    let m = &f.source;
    let mp = &f.target;
    let rs = resolve(m, bound + 1, true)?;
    let rt = resolve(mp, bound + 1, true)?;
    let lift = lift_chain_map(&rs, &rt, &f.matrix, bound + 1)?;
    let acting = m.acting_algebra();
    let parts = IdempotentParts::new(&acting, n);
    let cs = HomComplex::new(&rs, n)?;
    let ct = HomComplex::new(&rt, n)?;
    let mut out = Vec::new();
    for i in 1..=bound {
        let hs = cs.cohomology_dim(i, rs.complete).unwrap_or(0);
        let ht = ct.cohomology_dim(i, rt.complete).unwrap_or(0);
        if hs != ht {
            out.push(false);
            continue;
        }
        if ht == 0 {
            out.push(true);
            continue;
        }
        // Cochain map Hom(Q_i, N) → Hom(P_i, N).
        let images = &lift[i].1;
        let g = pullback_matrix(&acting, n, &parts, rt.term(i), rs.term(i), images);
        let zt = ct.coboundaries.get(i).map(|d| d.kernel()).unwrap_or_else(|| Matrix::identity(ct.dims[i]));
        let bs = if i == 0 { Matrix::zeros(cs.dims[i], 0) } else { cs.coboundaries[i - 1].column_space() };
        let joint = Matrix::hstack(&[&g.mul(&zt), &bs]);
        let bt_rank = if i == 0 { 0 } else { ct.coboundaries[i - 1].rank() };
        // Injective on cohomology iff the image of Z_Q meets B_P only in the
        // image of B_Q, measured by ranks.
        let injective = joint.rank() - bs.cols() == zt.cols() - bt_rank;
        out.push(injective);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Bounded Gorenstein-projectivity

/// Decides `Ext^i(m, A) = 0` for all `i ≥ 1` when a certificate is found.
///
/// Fails at the first nonzero group up to `bound`.  Holds when a syzygy
/// vanishes or two syzygies `Ω^i ≅ Ω^j` (`1 ≤ i < j ≤ bound`) are isomorphic.
/// Otherwise the answer is `UnknownUpTo(k)` with `k` the last degree checked.
pub fn is_semi_gp<F: Field>(m: &Module<F>, bound: usize, seed: u64) -> Result<Verdict<F>> {
    let regular = m.regular_like();
    let acting = m.acting_algebra();
    let minimal = acting.has_radical();
    let parts = IdempotentParts::new(&acting, &regular);
    let mut last_ok = 0;
    let mut res = None;
    for i in 1..=bound {
        let r = match resolve(m, i + 1, minimal) {
            Ok(r) => r,
            Err(Error::Linalg(LinalgError::DimensionCap { .. })) => return Ok(Verdict::UnknownUpTo(last_ok)),
            Err(e) => return Err(e),
        };
        if r.complete && r.len() <= i {
            // P_i = 0, so Ω^{i} = 0 and Ext vanishes from here on.
            return Ok(Verdict::Holds(Certificate::SyzygyVanishes { degree: r.len() }));
        }
        let prev = if i == 0 {
            None
        } else {
            Some(pullback_matrix(&acting, &regular, &parts, r.term(i - 1), r.term(i), &r.generators[i]))
        };
        let next = if i + 1 < r.len() {
            Some(pullback_matrix(&acting, &regular, &parts, r.term(i), r.term(i + 1), &r.generators[i + 1]))
        } else {
            None
        };
        let dim = parts.dim_of(r.term(i)) - next.map_or(0, |d| d.rank()) - prev.map_or(0, |d| d.rank());
        if dim != 0 {
            return Ok(Verdict::Fails(Witness::NonzeroExt { degree: i, dim }));
        }
        last_ok = i;
        res = Some(r);
    }
    let Some(res) = res else {
        return Ok(Verdict::UnknownUpTo(0));
    };
    if res.complete && res.len() <= bound {
        return Ok(Verdict::Holds(Certificate::SyzygyVanishes { degree: res.len() }));
    }
    if !res.minimal {
        return Ok(Verdict::UnknownUpTo(bound));
    }
    let syz: Vec<Module<F>> = (1..=bound).filter_map(|i| res.syzygy(i)).collect();
    for j in 1..syz.len() {
        for i in 0..j {
            if syz[i].dim() != syz[j].dim() {
                continue;
            }
            if let Verdict::Holds(Certificate::Isomorphism(iso)) = is_isomorphic(&syz[i], &syz[j], seed)? {
                return Ok(Verdict::Holds(Certificate::Periodicity { first: i + 1, second: j + 1, iso }));
            }
        }
    }
    Ok(Verdict::UnknownUpTo(bound))
}

/// True when the verdict records no nonzero group up to `bound`.
pub fn vanishes_to_bound<F: Field>(v: &Verdict<F>, bound: usize) -> bool {
    match v {
        Verdict::Holds(_) => true,
        Verdict::Fails(_) => false,
        Verdict::UnknownUpTo(k) => *k >= bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::truncated_polynomial;
    use crate::scalar::Rational;

    fn simple_dual_numbers() -> Module<Rational> {
        let a = truncated_polynomial::<Rational>(2);
        Module::left_regular(&a).quotient(&Matrix::from_i64_rows(&[&[0], &[1]])).0
    }

    #[test]
    fn periodic_resolution_of_simple() {
        let k = simple_dual_numbers();
        let r = resolve(&k, 4, true).unwrap();
        r.verify().unwrap();
        assert_eq!(r.term_dims(), vec![2; 5]);
        for d in &r.differentials[1..] {
            assert_eq!(d.rank(), 1);
        }
        let a = Module::left_regular(k.algebra());
        assert_eq!(ext_dims(&k, &a, 6).unwrap().dims, vec![1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(ext_dims_free(&k, &a, 6).unwrap().dims, vec![1, 0, 0, 0, 0, 0, 0]);
        let v = is_semi_gp(&k, 6, 1).unwrap();
        assert!(matches!(v, Verdict::Holds(Certificate::Periodicity { first: 1, second: 2, .. })));
    }

    #[test]
    fn tor_of_simples() {
        let k = simple_dual_numbers();
        let kr = crate::module::k_dual(&k);
        assert_eq!(tor_dims(&kr, &k, 3).unwrap(), vec![1, 1, 1, 1]);
        let (t, _) = tor_dims_resolving_right(&kr, &k, 3).unwrap();
        assert_eq!(t, vec![1, 1, 1, 1]);
    }

    #[test]
    fn projective_is_semi_gp() {
        let a = truncated_polynomial::<Rational>(3);
        let p = Module::left_regular(&a);
        let r = resolve(&p, 3, true).unwrap();
        assert!(r.complete);
        assert_eq!(r.len(), 1);
        assert!(is_semi_gp(&p, 4, 0).unwrap().holds());
    }
}
