//! Duals `Hom(M, A)`, the evaluation map `M → M**`, and the module
//! classification built on them.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homology::is_semi_gp;
use crate::linalg::Matrix;
use crate::module::{cover, HomSpace, Module, ModuleMap, Side};
use crate::scalar::Field;
use crate::verdict::{Certificate, Status, Verdict, Witness};

/// Multiplication on the side opposite to the module: the operators that
/// make `Hom(M, A)` a module again.
fn opposite_mult<F: Field>(m: &Module<F>, i: usize) -> &Matrix<F> {
    match m.side() {
        Side::Left => m.algebra().right_mult(i),
        Side::Right => m.algebra().left_mult(i),
    }
}

/// The dual `M* = Hom(M, A)` realised on the coordinates of a stored basis
/// `F_1, …, F_h` of the Hom space.
#[derive(Clone, Debug)]
pub struct DualData<F> {
    pub module: Module<F>,
    pub dual: Module<F>,
    pub hom: HomSpace<F>,
}

impl<F: Field> DualData<F> {
    /// The functional with coordinates `coeffs`, as a matrix `A.dim × M.dim`.
    pub fn functional(&self, coeffs: &[F]) -> Matrix<F> {
        self.hom.combination(coeffs)
    }

    /// Evaluation pairing `⟨f, v⟩ = f(v) ∈ A`.
    pub fn pair(&self, f: &[F], v: &[F]) -> Vec<F> {
        self.functional(f).mul_vec(v)
    }

    /// Coordinates in `M*` of a homomorphism `M → A`.
    pub fn coords(&self, f: &Matrix<F>) -> Vec<F> {
        self.hom.coordinates(f)
    }
}

/// Computes `M*` with the action `(f·a)(v) = f(v)·a` (or `(a·f)(v) = a·f(v)`
/// for right modules).
pub fn a_dual<F: Field>(m: &Module<F>) -> Result<DualData<F>> {
    let hom = HomSpace::compute(m, &m.regular_like())?;
    let h = hom.dim();
    let actions = (0..m.algebra().dim())
        .map(|i| {
            let op = opposite_mult(m, i);
            let cols: Vec<Vec<F>> = hom.basis.iter().map(|f| hom.coordinates(&op.mul(f))).collect();
            Matrix::from_columns(h, &cols)
        })
        .collect();
    let dual = Module::trusted(m.algebra(), m.side().flip(), h, actions, format!("{}*", m.label));
    Ok(DualData { module: m.clone(), dual, hom })
}

/// `M*` and `M**` together.
pub fn double_dual<F: Field>(m: &Module<F>) -> Result<(DualData<F>, DualData<F>)> {
    let d1 = a_dual(m)?;
    let d2 = a_dual(&d1.dual)?;
    Ok((d1, d2))
}

/// The evaluation map `φ_M: M → M**`, `φ_M(v)(f) = f(v)`, given both duals.
pub fn canonical_map_with<F: Field>(d1: &DualData<F>, d2: &DualData<F>) -> ModuleMap<F> {
    let m = &d1.module;
    let h = d1.hom.dim();
    let a = m.algebra().dim();
    let cols: Vec<Vec<F>> = (0..m.dim())
        .map(|j| {
            let mut g = Matrix::zeros(a, h);
            for (t, f) in d1.hom.basis.iter().enumerate() {
                for r in 0..a {
                    g[(r, t)] = f[(r, j)].clone();
                }
            }
            d2.hom.coordinates(&g)
        })
        .collect();
    ModuleMap::trusted(m, &d2.dual, Matrix::from_columns(d2.dual.dim(), &cols))
}

pub fn canonical_map<F: Field>(m: &Module<F>) -> Result<ModuleMap<F>> {
    let (d1, d2) = double_dual(m)?;
    Ok(canonical_map_with(&d1, &d2))
}

/// `f*: N* → M*`, `g ↦ g∘f`, for `f: M → N` with the duals of its target
/// and source supplied.
pub fn dual_map_with<F: Field>(f: &ModuleMap<F>, target_dual: &DualData<F>, source_dual: &DualData<F>) -> ModuleMap<F> {
    let cols: Vec<Vec<F>> = target_dual.hom.basis.iter().map(|g| source_dual.coords(&g.mul(&f.matrix))).collect();
    let m = Matrix::from_columns(source_dual.dual.dim(), &cols);
    ModuleMap::trusted(&target_dual.dual, &source_dual.dual, m)
}

pub fn dual_map<F: Field>(f: &ModuleMap<F>) -> Result<ModuleMap<F>> {
    let td = a_dual(&f.target)?;
    let sd = a_dual(&f.source)?;
    Ok(dual_map_with(f, &td, &sd))
}

/// Everything the classification reports about one module.
#[derive(Clone, Debug)]
pub struct ClassificationReport<F> {
    pub label: String,
    pub dim: usize,
    pub dual_dim: usize,
    pub torsionless: bool,
    pub reflexive: bool,
    pub semi_gp: Verdict<F>,
    pub dual_semi_gp: Verdict<F>,
    pub double_semi_gp: Verdict<F>,
    pub gp: Verdict<F>,
    pub phi_rank: usize,
    pub phi_kernel_dim: usize,
    pub phi_cokernel_dim: usize,
    pub bound: usize,
}

impl<F: Field> ClassificationReport<F> {
    pub fn to_json(&self) -> Value {
        json!({
            "module": self.label,
            "dim": self.dim,
            "dual_dim": self.dual_dim,
            "torsionless": self.torsionless,
            "reflexive": self.reflexive,
            "semi_gp": self.semi_gp.to_json(),
            "dual_semi_gp": self.dual_semi_gp.to_json(),
            "double_semi_gp": self.double_semi_gp.to_json(),
            "gp": self.gp.to_json(),
            "phi": {"rank": self.phi_rank, "kernel_dim": self.phi_kernel_dim, "cokernel_dim": self.phi_cokernel_dim},
            "bound": self.bound,
        })
    }

    /// Overall status used for exit codes: the GP verdict.
    pub fn status(&self) -> Status {
        self.gp.status()
    }
}

/// Conjunction of two verdicts, keeping a witness for failures.
pub fn both<F: Field>(a: &Verdict<F>, b: &Verdict<F>, bound: usize, what: &str) -> Verdict<F> {
    match (a, b) {
        (Verdict::Fails(_), _) => Verdict::Fails(Witness::Derived(format!("{what}: first part fails"))),
        (_, Verdict::Fails(_)) => Verdict::Fails(Witness::Derived(format!("{what}: second part fails"))),
        (Verdict::Holds(_), Verdict::Holds(_)) => Verdict::Holds(Certificate::Derived(format!("{what}: both parts hold"))),
        _ => Verdict::UnknownUpTo(bound),
    }
}

/// Torsionless, reflexive and the bounded Gorenstein-projectivity verdicts.
pub fn classify<F: Field>(m: &Module<F>, bound: usize, seed: u64) -> Result<ClassificationReport<F>> {
    if bound == 0 {
        return Err(Error::Malformed("bound must be at least 1".into()));
    }
    let (d1, d2) = double_dual(m)?;
    let phi = canonical_map_with(&d1, &d2);
    let rank = phi.rank();
    let torsionless = rank == m.dim();
    let reflexive = torsionless && rank == d2.dual.dim();
    let semi_gp = is_semi_gp(m, bound, seed)?;
    let dual_semi_gp = is_semi_gp(&d1.dual, bound, seed)?;
    let double_semi_gp = both(&semi_gp, &dual_semi_gp, bound, "double semi-GP");
    let gp = if !reflexive {
        Verdict::Fails(Witness::Derived("the evaluation map is not bijective".into()))
    } else {
        both(&semi_gp, &dual_semi_gp, bound, "reflexive and double semi-GP")
    };
    Ok(ClassificationReport {
        label: m.label.clone(),
        dim: m.dim(),
        dual_dim: d1.dual.dim(),
        torsionless,
        reflexive,
        semi_gp,
        dual_semi_gp,
        double_semi_gp,
        gp,
        phi_rank: rank,
        phi_kernel_dim: m.dim() - rank,
        phi_cokernel_dim: d2.dual.dim() - rank,
        bound,
    })
}

/// A map `M → A^t` through which every homomorphism `M → A` factors.
#[derive(Clone, Debug)]
pub struct Approximation<F> {
    pub map: ModuleMap<F>,
    /// The components `M → A`, i.e. generators of `M*`.
    pub components: Vec<Matrix<F>>,
    /// Coordinates of the components in `M*`.
    pub generators: Vec<Vec<F>>,
    /// Whether the generators come from a projective cover of `M*`.
    pub minimal: bool,
}

/// Left `add(A)`-approximation built from a generating set of `M*`.
pub fn left_add_approximation<F: Field>(m: &Module<F>) -> Result<Approximation<F>> {
    let d = a_dual(m)?;
    let minimal = d.dual.acting_algebra().has_radical();
    let cov = cover(&d.dual, minimal)?;
    let components: Vec<Matrix<F>> = cov.generators.iter().map(|g| d.functional(g)).collect();
    let reg = m.regular_like();
    let t = components.len();
    let target = if t == 0 {
        Module::zero(m.algebra(), m.side())
    } else {
        Module::direct_sum(&vec![&reg; t])?.with_label(format!("A^{t}"))
    };
    let matrix = if t == 0 {
        Matrix::zeros(0, m.dim())
    } else {
        Matrix::vstack(&components.iter().collect::<Vec<_>>())
    };
    let map = ModuleMap::new(m, &target, matrix)?;
    let approx = Approximation { map, components, generators: cov.generators, minimal: cov.minimal };
    if !factors_through(&approx, &d)? {
        return Err(Error::Invariant("approximation does not factor every map to A".into()));
    }
    Ok(approx)
}

/// Whether every basis map `M → A` is `Σ_i ρ(a_i)·F_i` for some `a_i ∈ A`,
/// where `ρ` is multiplication on the far side.
pub fn factors_through<F: Field>(approx: &Approximation<F>, d: &DualData<F>) -> Result<bool> {
    let m = &d.module;
    let a = m.algebra().dim();
    let n = a * m.dim();
    let mut cols = Vec::new();
    for c in &approx.components {
        for l in 0..a {
            cols.push(opposite_mult(m, l).mul(c).as_slice().to_vec());
        }
    }
    if cols.is_empty() {
        return Ok(d.hom.dim() == 0);
    }
    let sys = Matrix::from_columns(n, &cols);
    for f in &d.hom.basis {
        if sys.solve(f.as_slice()).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::truncated_polynomial;
    use crate::scalar::Rational;

    #[test]
    fn regular_module_is_reflexive() {
        let a = truncated_polynomial::<Rational>(2);
        let l = Module::left_regular(&a);
        let r = classify(&l, 3, 0).unwrap();
        assert!(r.reflexive);
        assert!(r.gp.holds());
        let d = a_dual(&l).unwrap();
        d.dual.check_action_law().unwrap();
        assert_eq!(d.dual.side(), Side::Right);
    }

    #[test]
    fn simple_over_dual_numbers() {
        let a = truncated_polynomial::<Rational>(2);
        let k = Module::left_regular(&a).quotient(&Matrix::from_i64_rows(&[&[0], &[1]])).0;
        let r = classify(&k, 4, 0).unwrap();
        assert!(r.torsionless && r.reflexive);
        assert!(r.gp.holds());
        let ap = left_add_approximation(&k).unwrap();
        assert_eq!(ap.components.len(), 1);
        assert!(ap.map.is_injective());
    }
}
