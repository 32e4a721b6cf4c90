//! Concrete algebras and modules, and named verification scenarios that
//! bind computations to expected outcomes.
//!
//! `Λ(q)` is `k⟨x, y, z⟩ / (x², y², z², yz, xy + q·yx, xz − zx, zy − zx)` with
//! basis `1, x, y, z, yx, zx`.  The small lsgp-free algebra has basis
//! `e1, e2, alpha, beta` with `alpha: 2 → 1`, a loop `beta` at `2`, and
//! `beta² = alpha·beta = 0`.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{truncated_polynomial, Algebra, AlgebraPresentation};
use crate::duality::{a_dual, canonical_map_with, classify, left_add_approximation};
use crate::error::{Error, Result};
use crate::homology::{ext_dims, is_semi_gp, vanishes_to_bound};
use crate::linalg::{ColumnBasis, Matrix};
use crate::module::{is_isomorphic, HomSpace, Module, ModuleMap, Side};
use crate::random::{random_module, random_vector, rng};
use crate::scalar::{multiplicative_order, Field};
use crate::triangular::{approximation_triple, classify_triple, t2, t2_dual_bundle, RightTriple, TriangularAlgebra, TripleModule};
use crate::verdict::{matrix_json, Status, Verdict};

pub const ONE: usize = 0;
pub const X: usize = 1;
pub const Y: usize = 2;
pub const Z: usize = 3;
pub const YX: usize = 4;
pub const ZX: usize = 5;

/// `Λ(q)` with any warnings about the parameter.
#[derive(Clone, Debug)]
pub struct LambdaQ<F> {
    pub algebra: Arc<Algebra<F>>,
    pub q: F,
    pub warnings: Vec<String>,
}

/// The presentation of `Λ(q)`, exposed so that callers can perturb it.
pub fn lambda_q_presentation<F: Field>(q: &F) -> AlgebraPresentation<F> {
    let labels = ["1", "x", "y", "z", "yx", "zx"].iter().map(|s| s.to_string()).collect();
    let mut p = AlgebraPresentation::new(labels);
    p.set(ONE, ONE, ONE, F::one());
    for i in 1..6 {
        p.set(ONE, i, i, F::one());
        p.set(i, ONE, i, F::one());
    }
    p.set(X, Y, YX, -q.clone());
    p.set(X, Z, ZX, F::one());
    p.set(Y, X, YX, F::one());
    p.set(Z, X, ZX, F::one());
    p.set(Z, Y, ZX, F::one());
    p.idempotents = Some(vec![p.unit.clone()]);
    p.radical_basis = Some((1..6).map(|i| unit_vec(6, i)).collect());
    p
}

fn unit_vec<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

/// An element of `Λ(q)` from `(basis index, coefficient)` pairs.
pub fn element<F: Field>(terms: &[(usize, F)]) -> Vec<F> {
    let mut v = vec![F::zero(); 6];
    for (i, c) in terms {
        v[*i] += c.clone();
    }
    v
}

pub fn lambda_q<F: Field>(q: &F) -> Result<LambdaQ<F>> {
    if q.is_zero() {
        return Err(Error::Malformed("q must be nonzero".into()));
    }
    let algebra = Algebra::validate(lambda_q_presentation(q))?;
    let mut warnings = Vec::new();
    if let Some(n) = multiplicative_order(q, 1 << 12) {
        warnings.push(format!("q has finite multiplicative order {n}; high-degree expectations may not apply"));
    }
    let (j1, j2, j3) = radical_powers(&algebra);
    if (j1 - j2, j2, j3) != (3, 2, 0) {
        return Err(Error::Invariant(format!("unexpected Hilbert type: dim J = {j1}, dim J^2 = {j2}, dim J^3 = {j3}")));
    }
    Ok(LambdaQ { algebra, q: q.clone(), warnings })
}

/// Dimensions of `J`, `J²` and `J³` computed by multiplying basis vectors.
pub fn radical_powers<F: Field>(a: &Algebra<F>) -> (usize, usize, usize) {
    let j = a.radical().expect("radical declared").clone();
    let prod = |u: &Matrix<F>, v: &Matrix<F>| -> Matrix<F> {
        let mut cols = Vec::new();
        for x in u.columns() {
            for y in v.columns() {
                cols.push(a.mul(&x, &y));
            }
        }
        if cols.is_empty() {
            Matrix::zeros(a.dim(), 0)
        } else {
            Matrix::from_columns(a.dim(), &cols).column_space()
        }
    };
    let j2 = prod(&j, &j);
    let j3 = prod(&j2, &j);
    (j.cols(), j2.cols(), j3.cols())
}

fn cyclic_quotient<F: Field>(alg: &Arc<Algebra<F>>, side: Side, a: &F, b: &F, c: &F) -> Result<Module<F>> {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::Malformed("(a, b, c) must be nonzero".into()));
    }
    let reg = if side == Side::Left { Module::left_regular(alg) } else { Module::right_regular(alg) };
    let v = element(&[(X, a.clone()), (Y, b.clone()), (Z, c.clone())]);
    let gen = reg.generated_submodule(&[v]);
    let soc = reg.socle()?;
    let sub = Matrix::hstack(&[&gen, &soc]).column_space();
    let m = if !b.is_zero() {
        // Basis {1̄, x̄, z̄}; ȳ is expressed through them.
        let comp = Matrix::from_columns(6, &[unit_vec(6, ONE), unit_vec(6, X), unit_vec(6, Z)]);
        reg.quotient_with_basis(&sub, &comp)?.0
    } else {
        reg.quotient(&sub).0
    };
    Ok(m)
}

/// `M(a, b, c) = A / (A(ax + by + cz) + soc A)`.
pub fn m_module<F: Field>(l: &LambdaQ<F>, a: &F, b: &F, c: &F) -> Result<Module<F>> {
    Ok(cyclic_quotient(&l.algebra, Side::Left, a, b, c)?.with_label(format!("M({a},{b},{c})")))
}

/// `M'(a, b, c) = A / ((ax + by + cz)A + soc A)`, a right module.
pub fn m_prime_module<F: Field>(l: &LambdaQ<F>, a: &F, b: &F, c: &F) -> Result<Module<F>> {
    Ok(cyclic_quotient(&l.algebra, Side::Right, a, b, c)?.with_label(format!("M'({a},{b},{c})")))
}

/// `M(1, -q, c)`.
pub fn m_family<F: Field>(l: &LambdaQ<F>, c: &F) -> Result<Module<F>> {
    m_module(l, &F::one(), &-l.q.clone(), c)
}

/// `x - y`.
pub fn x_minus_y<F: Field>() -> Vec<F> {
    element(&[(X, F::one()), (Y, -F::one())])
}

/// The left map `f1: M(1, -q, c) → A`, `1̄ ↦ x − y`.
pub fn f1<F: Field>(l: &LambdaQ<F>, m: &Module<F>) -> Result<ModuleMap<F>> {
    let a = &l.algebra;
    let xy = x_minus_y::<F>();
    let cols: Vec<Vec<F>> = [ONE, X, Z].iter().map(|&i| a.mul(&unit_vec(6, i), &xy)).collect();
    ModuleMap::new(m, &Module::left_regular(a), Matrix::from_columns(6, &cols))
}

/// `X(c) = (A, M(1, -q, c))_{f1}` over `T₂(A)`.
pub fn x_c<F: Field>(l: &LambdaQ<F>, t: &Arc<TriangularAlgebra<F>>, c: &F) -> Result<TripleModule<F>> {
    let m = m_family(l, c)?;
    let f = f1(l, &m)?;
    Ok(TripleModule::new(t, &Module::left_regular(&l.algebra), &m, f.matrix)?.with_label(format!("X({c})")))
}

/// `A·v`, `v·A` or `A·v·A` as a submodule of the left or right regular module.
pub fn ideal<F: Field>(a: &Arc<Algebra<F>>, v: &[F], side: Side, two_sided: bool) -> (Module<F>, ModuleMap<F>) {
    let reg = if side == Side::Left { Module::left_regular(a) } else { Module::right_regular(a) };
    let mut gens = vec![v.to_vec()];
    if two_sided {
        gens = (0..a.dim())
            .map(|i| if side == Side::Left { a.mul(v, &unit_vec(a.dim(), i)) } else { a.mul(&unit_vec(a.dim(), i), v) })
            .collect();
    }
    let basis = reg.generated_submodule(&gens);
    reg.submodule(&basis)
}

/// An isomorphism `θ: d → t` with `θ·phi = r`, searched in the affine space of
/// solutions inside `Hom(d, t)`.
pub fn iso_through<F: Field>(phi: &ModuleMap<F>, r: &ModuleMap<F>, seed: u64) -> Result<Option<Matrix<F>>> {
    let (d, t) = (&phi.target, &r.target);
    if d.dim() != t.dim() {
        return Ok(None);
    }
    let h = HomSpace::compute(d, t)?;
    if h.dim() == 0 {
        return Ok(None);
    }
    let cols: Vec<Vec<F>> = h.basis.iter().map(|b| b.mul(&phi.matrix).as_slice().to_vec()).collect();
    let sys = Matrix::from_columns(t.dim() * phi.source.dim(), &cols);
    let Some(c0) = sys.solve(r.matrix.as_slice()) else { return Ok(None) };
    let ker = sys.kernel();
    let mut rng = rng(seed);
    for trial in 0..48 {
        let mut c = c0.clone();
        if trial > 0 && ker.cols() > 0 {
            let w: Vec<F> = random_vector(&mut rng, ker.cols());
            let shift = ker.mul_vec(&w);
            for (ci, s) in c.iter_mut().zip(shift) {
                *ci += s;
            }
        }
        let theta = h.combination(&c);
        if theta.rank() == d.dim() {
            return Ok(Some(theta));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// The lsgp-free example

/// The algebra with the five hardcoded indecomposables `S1 = P1, S2, P2, I1, I2`.
#[derive(Clone, Debug)]
pub struct LsgpExample<F> {
    pub algebra: Arc<Algebra<F>>,
    pub modules: Vec<Module<F>>,
}

impl<F: Field> LsgpExample<F> {
    pub fn get(&self, label: &str) -> &Module<F> {
        self.modules.iter().find(|m| m.label == label).expect("known label")
    }
}

const E1: usize = 0;
const E2: usize = 1;
const ALPHA: usize = 2;
const BETA: usize = 3;

fn lsgp_algebra<F: Field>() -> Result<Arc<Algebra<F>>> {
    let mut p = AlgebraPresentation::new(vec!["e1".into(), "e2".into(), "alpha".into(), "beta".into()]);
    p.unit = vec![F::one(), F::one(), F::zero(), F::zero()];
    p.set(E1, E1, E1, F::one());
    p.set(E2, E2, E2, F::one());
    p.set(E1, ALPHA, ALPHA, F::one());
    p.set(ALPHA, E2, ALPHA, F::one());
    p.set(E2, BETA, BETA, F::one());
    p.set(BETA, E2, BETA, F::one());
    p.idempotents = Some(vec![unit_vec(4, E1), unit_vec(4, E2)]);
    p.radical_basis = Some(vec![unit_vec(4, ALPHA), unit_vec(4, BETA)]);
    Algebra::validate(p)
}

/// A left module from vertex spaces of sizes `d1, d2` and the maps
/// `alpha: X2 → X1`, `beta: X2 → X2`.
fn lsgp_rep<F: Field>(a: &Arc<Algebra<F>>, d1: usize, d2: usize, alpha: Matrix<F>, beta: Matrix<F>, label: &str) -> Result<Module<F>> {
    let n = d1 + d2;
    let mut e1 = Matrix::zeros(n, n);
    e1.set_block(0, 0, &Matrix::identity(d1));
    let mut e2 = Matrix::zeros(n, n);
    e2.set_block(d1, d1, &Matrix::identity(d2));
    let mut al = Matrix::zeros(n, n);
    al.set_block(0, d1, &alpha);
    let mut be = Matrix::zeros(n, n);
    be.set_block(d1, d1, &beta);
    Module::new(a, Side::Left, vec![e1, e2, al, be], label)
}

pub fn lsgp_example<F: Field>() -> Result<LsgpExample<F>> {
    let a = lsgp_algebra::<F>()?;
    let z = |r, c| Matrix::<F>::zeros(r, c);
    let modules = vec![
        lsgp_rep(&a, 1, 0, z(1, 0), z(0, 0), "S1")?,
        lsgp_rep(&a, 0, 1, z(0, 1), z(1, 1), "S2")?,
        // P2 = A·e2 with basis e2, beta over vertex 2 and alpha over vertex 1.
        lsgp_rep(&a, 1, 2, Matrix::from_i64_rows(&[&[1, 0]]), Matrix::from_i64_rows(&[&[0, 0], &[1, 0]]), "P2")?,
        lsgp_rep(&a, 1, 1, Matrix::identity(1), z(1, 1), "I1")?,
        lsgp_rep(&a, 0, 2, z(0, 2), Matrix::from_i64_rows(&[&[0, 0], &[1, 0]]), "I2")?,
    ];
    Ok(LsgpExample { algebra: a, modules })
}

// ---------------------------------------------------------------------------
// Scenarios

/// Parameters shared by all scenarios; unset values take scenario defaults.
#[derive(Clone, Debug, Default)]
pub struct ScenarioParams {
    pub q: Option<String>,
    pub c: Option<String>,
    pub bound: Option<usize>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Claim {
    pub description: String,
    pub anchor: String,
    pub status: Status,
    pub data: Value,
}

#[derive(Clone, Debug)]
pub struct ScenarioReport {
    pub scenario: String,
    pub params: Value,
    pub claims: Vec<Claim>,
    pub warnings: Vec<String>,
}

impl ScenarioReport {
    pub fn status(&self) -> Status {
        Status::all(self.claims.iter().map(|c| c.status))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "scenario": self.scenario,
            "params": self.params,
            "warnings": self.warnings,
            "claims": self.claims.iter().map(|c| json!({
                "description": c.description,
                "anchor": c.anchor,
                "status": c.status.as_str(),
                "data": c.data,
            })).collect::<Vec<_>>(),
            "status": self.status().as_str(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("scenario {} {}\n", self.scenario, self.params);
        for w in &self.warnings {
            s.push_str(&format!("  warning: {w}\n"));
        }
        for (i, c) in self.claims.iter().enumerate() {
            s.push_str(&format!("  [{}] {:<7} {} ({})\n", i + 1, c.status.as_str(), c.description, c.anchor));
        }
        s.push_str(&format!("overall: {}\n", self.status().as_str()));
        s
    }
}

pub const SCENARIOS: [&str; 5] = ["lemma-6.1", "prop-6.2", "thm-1.6-pipeline", "thm-1.7-sampled", "lsgp-4.4"];

fn claim(description: impl Into<String>, anchor: &str, status: Status, data: Value) -> Claim {
    Claim { description: description.into(), anchor: anchor.into(), status, data }
}

fn parse_f<F: Field>(s: &str) -> Result<F> {
    F::parse_scalar(s).map_err(|e| Error::Malformed(format!("bad scalar {s:?}: {e}")))
}

fn parse_list<F: Field>(s: &str) -> Result<Vec<F>> {
    s.split(',').map(|t| parse_f(t.trim())).collect()
}

fn verdict_status<F: Field>(v: &Verdict<F>) -> Status {
    v.status()
}

/// Runs a named scenario.
pub fn run_scenario<F: Field>(name: &str, params: &ScenarioParams) -> Result<ScenarioReport> {
    let q: F = parse_f(params.q.as_deref().unwrap_or("2"))?;
    let seed = params.seed.unwrap_or(0);
    match name {
        "lemma-6.1" => {
            let cs: Vec<F> = parse_list(params.c.as_deref().unwrap_or("0,1,-1"))?;
            dual_of_family(&q, &cs, seed)
        }
        "prop-6.2" => {
            let c: F = parse_f(params.c.as_deref().unwrap_or("0"))?;
            not_monic_family(&q, &c, params.bound.unwrap_or(6), seed)
        }
        "thm-1.6-pipeline" => {
            let c: F = parse_f(params.c.as_deref().unwrap_or("0"))?;
            approximation_pipeline(&q, &c, params.bound.unwrap_or(6), seed)
        }
        "thm-1.7-sampled" => sampled_transfer(&q, params.bound.unwrap_or(4), seed, params.samples.unwrap_or(12)),
        "lsgp-4.4" => lsgp_claims::<F>(params.bound.unwrap_or(6), seed),
        _ => Err(Error::Malformed(format!("unknown scenario {name:?}; known: {}", SCENARIOS.join(", ")))),
    }
}

fn lambda_with_warnings<F: Field>(q: &F) -> Result<LambdaQ<F>> {
    let l = lambda_q(q)?;
    for w in &l.warnings {
        log::warn!("{w}");
    }
    Ok(l)
}

fn dual_of_family<F: Field>(q: &F, cs: &[F], seed: u64) -> Result<ScenarioReport> {
    let l = lambda_with_warnings(q)?;
    let a = &l.algebra;
    let qi = q.inverse().expect("q nonzero");
    let target = m_prime_module(&l, &F::one(), &-qi.clone(), &F::zero())?;
    let (xy_a, _) = ideal(a, &x_minus_y::<F>(), Side::Right, false);
    let mut claims = Vec::new();
    for c in cs {
        let m = m_family(&l, c)?;
        let local = m.radical_submodule()?.cols() == 2;
        claims.push(claim(
            format!("M(1,-q,{c}) is 3-dimensional and local"),
            "cyclic-module",
            Status::from_bool(m.dim() == 3 && local),
            json!({"dim": m.dim()}),
        ));
        let d = a_dual(&m)?;
        let v = is_isomorphic(&d.dual, &target, seed)?;
        claims.push(claim(
            format!("M(1,-q,{c})* is isomorphic to M'(1,-1/q,0)"),
            "dual-isomorphism",
            verdict_status(&v),
            json!({"dual_dim": d.dual.dim(), "intertwiner": v.isomorphism().map(matrix_json)}),
        ));
        // f ↦ f(1̄) lands in (x - y)A and is injective.
        let eval_cols: Vec<Vec<F>> = d.hom.basis.iter().map(|f| f.col(0)).collect();
        let eval = Matrix::from_columns(6, &eval_cols);
        let eval_map = ModuleMap::new(&d.dual, &Module::right_regular(a), eval.clone());
        let image_ok = eval_map.as_ref().map(|e| e.is_injective()).unwrap_or(false)
            && eval.column_space().cols() == xy_a.dim()
            && {
                let cb = ColumnBasis::new(ideal(a, &x_minus_y::<F>(), Side::Right, false).1.matrix);
                eval.columns().iter().all(|col| cb.contains(col))
            };
        claims.push(claim(
            format!("evaluation at the generator maps M(1,-q,{c})* onto (x-y)A"),
            "evaluation-image",
            Status::from_bool(image_ok),
            json!({"image_dim": eval.rank(), "ideal_dim": xy_a.dim()}),
        ));
        let f = f1(&l, &m)?;
        let coords = d.coords(&f.matrix);
        let generated = d.dual.generated_submodule(&[coords]).cols();
        claims.push(claim(
            format!("f1 generates M(1,-q,{c})*"),
            "cyclic-dual",
            Status::from_bool(generated == d.dual.dim()),
            json!({"generated_dim": generated}),
        ));
    }
    Ok(ScenarioReport {
        scenario: "lemma-6.1".into(),
        params: json!({"q": q.to_string(), "c": cs.iter().map(|c| c.to_string()).collect::<Vec<_>>(), "field": F::spec().to_string(), "seed": seed}),
        claims,
        warnings: l.warnings.clone(),
    })
}

fn ext_claim<F: Field>(m: &Module<F>, bound: usize, what: &str, anchor: &str) -> Result<Claim> {
    let table = ext_dims(m, &m.regular_like(), bound)?;
    let zero = table.first_nonzero().is_none();
    Ok(claim(
        format!("Ext^i({what}, T2(A)) = 0 for 1 <= i <= {bound}"),
        anchor,
        Status::from_bool(zero),
        table.to_json(),
    ))
}

fn not_monic_family<F: Field>(q: &F, c: &F, bound: usize, seed: u64) -> Result<ScenarioReport> {
    let l = lambda_with_warnings(q)?;
    let a = &l.algebra;
    let t = t2(a)?;
    let xc = x_c(&l, &t, c)?;
    let mut claims = Vec::new();

    let kernel = xc.phi.kernel().cols();
    claims.push(claim("X(c) is not monic: f1 has a 1-dimensional kernel", "not-monic", Status::from_bool(kernel == 1), json!({"kernel_dim": kernel})));

    let flat = xc.to_module();
    claims.push(ext_claim(&flat, bound, "X(c)", "semi-gp")?);
    let bundle = t2_dual_bundle(&xc)?;
    claims.push(ext_claim(&bundle.generic_dual.dual, bound, "X(c)*", "dual-semi-gp")?);

    let phi = &bundle.generic_phi;
    let (kd, cd) = (flat.dim() - phi.rank(), bundle.generic_double_dual.dual.dim() - phi.rank());
    claims.push(claim(
        "the evaluation map of X(c) has 1-dimensional kernel and cokernel",
        "evaluation-map",
        Status::from_bool(kd == 1 && cd == 1),
        json!({"rank": phi.rank(), "kernel_dim": kd, "cokernel_dim": cd, "dim": flat.dim(), "double_dual_dim": bundle.generic_double_dual.dual.dim()}),
    ));

    let dd = &bundle.generic_double_dual.dual;
    let v = is_semi_gp(dd, bound, seed)?;
    claims.push(claim(
        format!("X(c)** has a nonzero Ext^i(-, T2(A)) for some 1 <= i <= {bound}"),
        "double-dual-not-semi-gp",
        match &v {
            Verdict::Fails(_) => Status::Holds,
            Verdict::Holds(_) => Status::Fails,
            Verdict::UnknownUpTo(_) => Status::Unknown,
        },
        json!({"verdict": v.to_json(), "witness_degree": v.witness_degree()}),
    ));

    // X(c)* ≅ ((x - q⁻¹y)A, A_A)_σ.
    let qi = q.inverse().expect("q nonzero");
    let u_gen = element(&[(X, F::one()), (Y, -qi)]);
    let (u, sigma) = ideal(a, &u_gen, Side::Right, false);
    let rt = RightTriple::new(&t, &u, &Module::right_regular(a), sigma.matrix.clone())?;
    let v1 = is_isomorphic(&bundle.generic_dual.dual, &rt.to_module(), seed)?;
    claims.push(claim(
        "X(c)* is isomorphic to ((x - y/q)A, A)_sigma",
        "dual-triple",
        v1.status(),
        json!({"u_dim": u.dim(), "intertwiner": v1.isomorphism().map(matrix_json)}),
    ));

    // X(c)** ≅ (A, A(x - y)A)_ι.
    let (axya, iota) = ideal(a, &x_minus_y::<F>(), Side::Left, true);
    let lt = TripleModule::new(&t, &Module::left_regular(a), &axya, iota.matrix.clone())?;
    let v2 = is_isomorphic(&lt.to_module(), dd, seed)?;
    claims.push(claim(
        "X(c)** is isomorphic to (A, A(x - y)A)_iota",
        "double-dual-triple",
        v2.status(),
        json!({"y_dim": axya.dim(), "intertwiner": v2.isomorphism().map(matrix_json)}),
    ));

    // A(x - y)A = A(x - y) ⊕ k·zx.
    let (axy, axy_inc) = ideal(a, &x_minus_y::<F>(), Side::Left, false);
    let zx = unit_vec(6, ZX);
    let zx_outside = !ColumnBasis::new(axy_inc.matrix.clone()).contains(&zx);
    let zx_line = Module::left_regular(a).generated_submodule(std::slice::from_ref(&zx)).cols() == 1;
    claims.push(claim(
        "A(x - y)A = A(x - y) + k zx with dims 2 + 1",
        "ideal-decomposition",
        Status::from_bool(axy.dim() == 2 && axya.dim() == 3 && zx_outside && zx_line),
        json!({"left_ideal_dim": axy.dim(), "two_sided_dim": axya.dim(), "zx_outside": zx_outside}),
    ));

    // φ_M followed by an isomorphism M** ≅ A(x - y)A is r_{x-y}.
    let m = m_family(&l, c)?;
    let d1 = a_dual(&m)?;
    let d2 = a_dual(&d1.dual)?;
    let phi_m = canonical_map_with(&d1, &d2);
    let f = f1(&l, &m)?;
    let r = ModuleMap::new(&m, &axya, ColumnBasis::new(iota.matrix.clone()).coords_matrix(&f.matrix))?;
    let theta = iso_through(&phi_m, &r, seed)?;
    claims.push(claim(
        "the evaluation map of M(1,-q,c) is right multiplication by x - y up to isomorphism",
        "evaluation-as-multiplication",
        Status::from_bool(theta.is_some()),
        json!({"iso": theta.as_ref().map(matrix_json), "phi_rank": phi_m.rank()}),
    ));

    let rep = classify_triple(&xc, bound, seed)?;
    let componentwise = rep.condition("componentwise").map(|c| c.to_bound).unwrap_or(false);
    claims.push(claim(
        "X(c) satisfies the componentwise double semi-GP conditions up to the bound",
        "componentwise-conditions",
        Status::from_bool(componentwise && rep.all_agree()),
        rep.to_json(),
    ));

    Ok(ScenarioReport {
        scenario: "prop-6.2".into(),
        params: json!({"q": q.to_string(), "c": c.to_string(), "bound": bound, "seed": seed, "field": F::spec().to_string()}),
        claims,
        warnings: l.warnings.clone(),
    })
}

fn approximation_pipeline<F: Field>(q: &F, c: &F, bound: usize, seed: u64) -> Result<ScenarioReport> {
    let l = lambda_with_warnings(q)?;
    let t = t2(&l.algebra)?;
    let m = m_family(&l, c)?;
    let ap = left_add_approximation(&m)?;
    let trip = approximation_triple(&t, &m)?;
    let xc = x_c(&l, &t, c)?;
    let mut claims = Vec::new();
    claims.push(claim(
        "the left add(A)-approximation of M(1,-q,c) has a single component",
        "approximation",
        Status::from_bool(ap.components.len() == 1),
        json!({"components": ap.components.len(), "map": matrix_json(&ap.map.matrix)}),
    ));
    let v = is_isomorphic(&trip.to_module(), &xc.to_module(), seed)?;
    claims.push(claim(
        "the approximation triple is isomorphic to X(c)",
        "pipeline-isomorphism",
        v.status(),
        json!({"intertwiner": v.isomorphism().map(matrix_json)}),
    ));
    let (monic, kv) = trip.is_monic();
    claims.push(claim(
        "the approximation triple is not monic",
        "not-monic",
        Status::from_bool(!monic),
        json!({"kernel_vector": kv.map(|k| crate::verdict::vector_json(&k))}),
    ));
    let rep = classify_triple(&trip, bound, seed)?;
    let componentwise = rep.condition("componentwise").map(|c| c.to_bound).unwrap_or(false);
    let flat = classify(&trip.to_module(), bound, seed)?;
    claims.push(claim(
        "the approximation triple is double semi-GP up to the bound and not torsionless",
        "double-semi-gp",
        Status::from_bool(componentwise && vanishes_to_bound(&flat.double_semi_gp, bound) && !flat.torsionless),
        json!({"conditions": rep.to_json(), "flat": flat.to_json()}),
    ));
    Ok(ScenarioReport {
        scenario: "thm-1.6-pipeline".into(),
        params: json!({"q": q.to_string(), "c": c.to_string(), "bound": bound, "seed": seed, "field": F::spec().to_string()}),
        claims,
        warnings: l.warnings.clone(),
    })
}

/// Per-sample record for the transfer checks between `L` and `(P, L)_φ`.
fn transfer_sample<F: Field>(t: &Arc<TriangularAlgebra<F>>, lm: &Module<F>, bound: usize, seed: u64) -> Result<Value> {
    let trip = approximation_triple(t, lm)?;
    let cl = classify(lm, bound, seed)?;
    let ct = classify(&trip.to_module(), bound, seed)?;
    let l_epi = cl.phi_cokernel_dim == 0;
    let t_epi = ct.phi_cokernel_dim == 0;
    Ok(json!({
        "module": lm.label,
        "dim": lm.dim(),
        "torsionless": [cl.torsionless, ct.torsionless],
        "monic": trip.is_monic().0,
        "epi": [l_epi, t_epi],
        "double_semi_gp": [cl.double_semi_gp.status().as_str(), ct.double_semi_gp.status().as_str()],
        "gp": [cl.gp.status().as_str(), ct.gp.status().as_str()],
    }))
}

fn status_of(s: &Value) -> Status {
    match s.as_str() {
        Some("holds") => Status::Holds,
        Some("fails") => Status::Fails,
        _ => Status::Unknown,
    }
}

fn sampled_transfer<F: Field>(q: &F, bound: usize, seed: u64, samples: usize) -> Result<ScenarioReport> {
    let l = lambda_with_warnings(q)?;
    let lsgp = lsgp_example::<F>()?;
    let algebras: Vec<(String, Arc<Algebra<F>>)> =
        vec![("k[x]/(x^2)".into(), truncated_polynomial(2)), ("lsgp".into(), lsgp.algebra.clone()), ("Lambda(q)".into(), l.algebra.clone())];
    let mut rng = rng(seed);
    let mut records = Vec::new();
    for (name, a) in &algebras {
        let t = t2(a)?;
        let mut mods: Vec<Module<F>> = Vec::new();
        if name == "Lambda(q)" {
            mods.push(m_family(&l, &F::zero())?);
        }
        if name == "lsgp" {
            mods.extend(lsgp.modules.iter().cloned());
        }
        while mods.len() < samples {
            let max = if name == "Lambda(q)" { 4 } else { 5 };
            mods.push(random_module(a, Side::Left, &mut rng, max));
        }
        for m in &mods {
            let mut r = transfer_sample(&t, m, bound, seed)?;
            r["algebra"] = json!(name);
            records.push(r);
        }
    }
    let mut tl_bad = Vec::new();
    let mut monic_bad = Vec::new();
    let mut epi_bad = Vec::new();
    let mut dsgp_bad = Vec::new();
    let mut gp_bad = Vec::new();
    let mut gp_definite = 0;
    for (i, r) in records.iter().enumerate() {
        let tl = &r["torsionless"];
        if tl[0] != tl[1] {
            tl_bad.push(i);
        }
        if r["monic"] != tl[0] {
            monic_bad.push(i);
        }
        if r["epi"][0] != r["epi"][1] {
            epi_bad.push(i);
        }
        let (dl, dt) = (status_of(&r["double_semi_gp"][0]), status_of(&r["double_semi_gp"][1]));
        if !dl.compatible(dt) {
            dsgp_bad.push(i);
        }
        let (gl, gt) = (status_of(&r["gp"][0]), status_of(&r["gp"][1]));
        if gl != Status::Unknown && gt != Status::Unknown {
            gp_definite += 1;
        }
        if !gl.compatible(gt) {
            gp_bad.push(i);
        }
    }
    let claims = vec![
        claim("the approximation triple is monic exactly when L is torsionless", "monic-transfer", Status::from_bool(monic_bad.is_empty()), json!({"counterexamples": monic_bad})),
        claim("L is torsionless exactly when its approximation triple is", "torsionless-transfer", Status::from_bool(tl_bad.is_empty()), json!({"counterexamples": tl_bad})),
        claim("the evaluation map of L is epi exactly when that of the triple is", "epi-transfer", Status::from_bool(epi_bad.is_empty()), json!({"counterexamples": epi_bad})),
        claim("double semi-GP verdicts of L and the triple never contradict", "double-semi-gp-transfer", Status::from_bool(dsgp_bad.is_empty()), json!({"counterexamples": dsgp_bad})),
        claim(
            "GP verdicts of L and the triple never contradict",
            "gp-transfer",
            Status::from_bool(gp_bad.is_empty()),
            json!({"counterexamples": gp_bad, "definite_pairs": gp_definite}),
        ),
    ];
    let mut out = ScenarioReport {
        scenario: "thm-1.7-sampled".into(),
        params: json!({"q": q.to_string(), "bound": bound, "seed": seed, "samples": samples, "field": F::spec().to_string()}),
        claims,
        warnings: l.warnings.clone(),
    };
    out.claims.push(claim("sample records", "samples", Status::Holds, Value::Array(records)));
    Ok(out)
}

fn lsgp_claims<F: Field>(bound: usize, seed: u64) -> Result<ScenarioReport> {
    let ex = lsgp_example::<F>()?;
    let mut claims = Vec::new();
    let ext = |m: &str, n: &str, b: usize| ext_dims(ex.get(m), ex.get(n), b);
    for (m, n, deg) in [("S2", "P2", 1usize), ("I2", "S1", 1), ("I1", "S1", 2), ("I1", "S2", 1)] {
        let table = ext(m, n, deg.max(2))?;
        claims.push(claim(
            format!("Ext^{deg}({m}, {n}) is nonzero"),
            "displayed-ext",
            Status::from_bool(table.dims[deg] != 0),
            table.to_json(),
        ));
    }
    let eq = ext("I1", "S1", 2)?.dims[2] == ext("I1", "S2", 1)?.dims[1];
    claims.push(claim("dim Ext^2(I1, S1) = dim Ext^1(I1, S2)", "displayed-ext", Status::from_bool(eq), Value::Null));
    for m in &ex.modules {
        let proj = m.label == "S1" || m.label == "P2";
        let v = is_semi_gp(m, bound, seed)?;
        let status = match (proj, &v) {
            (true, Verdict::Holds(_)) => Status::Holds,
            (false, Verdict::Fails(w)) if v.witness_degree().is_some_and(|d| d <= bound) => {
                let _ = w;
                Status::Holds
            }
            (_, Verdict::UnknownUpTo(_)) => Status::Unknown,
            _ => Status::Fails,
        };
        let what = if proj { "is projective and semi-GP" } else { "is not semi-GP, with a witness degree" };
        claims.push(claim(format!("{} {what}", m.label), "lsgp-free", status, json!({"verdict": v.to_json(), "dim": m.dim()})));
    }
    Ok(ScenarioReport {
        scenario: "lsgp-4.4".into(),
        params: json!({"bound": bound, "seed": seed, "field": F::spec().to_string(), "note": "checked on the five listed indecomposables only"}),
        claims,
        warnings: vec![],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q2() -> LambdaQ<Rational> {
        lambda_q(&Rational::from_i64(2)).unwrap()
    }

    #[test]
    fn lambda_table() {
        let l = q2();
        let a = &l.algebra;
        assert_eq!(a.dim(), 6);
        assert_eq!(a.mul(&unit_vec(6, X), &unit_vec(6, Y)), element(&[(YX, Rational::from_i64(-2))]));
        assert_eq!(a.mul(&unit_vec(6, Z), &unit_vec(6, Y)), unit_vec(6, ZX));
        assert!(l.warnings.is_empty());
    }

    #[test]
    fn family_and_map() {
        let l = q2();
        let m = m_family(&l, &Rational::from_i64(1)).unwrap();
        assert_eq!(m.dim(), 3);
        let f = f1(&l, &m).unwrap();
        assert_eq!(f.matrix.kernel().cols(), 1);
    }

    #[test]
    fn lsgp_modules() {
        let ex = lsgp_example::<Rational>().unwrap();
        let dims: Vec<usize> = ex.modules.iter().map(|m| m.dim()).collect();
        assert_eq!(dims, vec![1, 1, 3, 2, 2]);
    }
}
