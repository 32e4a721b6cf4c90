//! Seeded random samples of modules, maps, triples and quiver representations.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::linalg::Matrix;
use crate::module::{projective_module, HomSpace, Module, ModuleMap, Side};
use crate::quiver::{build_tensor, Arrow, Quiver, QuiverRep, QuiverSpec, TensorAlgebra};
use crate::scalar::Field;
use crate::triangular::{TriangularAlgebra, TripleModule};

/// The generator used for every seeded construction.
pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

const RANGE: i64 = 3;

pub fn random_vector<F: Field>(rng: &mut SampleRng, n: usize) -> Vec<F> {
    (0..n).map(|_| F::sample(rng, RANGE)).collect()
}

fn random_summands<F: Field>(acting: &Algebra<F>, rng: &mut SampleRng, max_dim: usize) -> Vec<usize> {
    let all = acting.projective_summands();
    let mut out = Vec::new();
    let mut dim = 0;
    let count = rng.gen_range(1..=2);
    for _ in 0..count {
        let fitting: Vec<usize> = (0..all.len()).filter(|&s| dim + all[s].dim() <= max_dim.max(1) && all[s].dim() > 0).collect();
        let Some(&s) = fitting.choose(rng) else { break };
        dim += all[s].dim();
        out.push(s);
    }
    if out.is_empty() {
        // Fall back to the smallest summand even if it exceeds the budget.
        let s = (0..all.len()).min_by_key(|&s| all[s].dim()).expect("at least the regular summand");
        out.push(s);
    }
    out
}

/// A random projective module of dimension at most `max_dim` when possible.
pub fn random_projective<F: Field>(a: &Arc<Algebra<F>>, side: Side, rng: &mut SampleRng, max_dim: usize) -> Module<F> {
    let acting = if side == Side::Left { a.clone() } else { a.opposite() };
    let s = random_summands(&acting, rng, max_dim);
    projective_module(a, side, &s).0
}

/// A random module of dimension at most `max_dim`: a quotient of a random
/// projective by a random submodule, a random submodule of one, or a
/// subquotient.
pub fn random_module<F: Field>(a: &Arc<Algebra<F>>, side: Side, rng: &mut SampleRng, max_dim: usize) -> Module<F> {
    for _ in 0..32 {
        let p = random_projective(a, side, rng, 2 * max_dim);
        let gens = rng.gen_range(0..=2);
        let vecs: Vec<Vec<F>> = (0..gens).map(|_| random_vector(rng, p.dim())).collect();
        let sub = p.generated_submodule(&vecs);
        let kind = rng.gen_range(0..3);
        let m = match kind {
            0 => p.quotient(&sub).0,
            1 if sub.cols() > 0 => p.submodule(&sub).0,
            _ => {
                let (s, _) = p.submodule(&sub);
                if s.dim() == 0 {
                    p.quotient(&sub).0
                } else {
                    let w = random_vector(rng, s.dim());
                    let inner = s.generated_submodule(&[w]);
                    s.quotient(&inner).0
                }
            }
        };
        if m.dim() > 0 && m.dim() <= max_dim {
            let label = format!("R{}", m.dim());
            return m.with_label(label);
        }
    }
    let p = random_projective(a, side, rng, max_dim);
    let rad = p.radical_submodule().unwrap_or_else(|_| Matrix::zeros(p.dim(), 0));
    p.quotient(&rad).0.with_label("R-top")
}

/// A random element of `Hom(source, target)`.
pub fn random_map<F: Field>(source: &Module<F>, target: &Module<F>, rng: &mut SampleRng) -> Result<ModuleMap<F>> {
    let h = HomSpace::compute(source, target)?;
    let c = random_vector(rng, h.dim());
    let m = if h.dim() == 0 { Matrix::zeros(target.dim(), source.dim()) } else { h.combination(&c) };
    ModuleMap::new(source, target, m)
}

/// A random `T₂(A)`-module `(X, Y)_φ` with component dimensions at most `max_dim`.
pub fn random_t2_module<F: Field>(t: &Arc<TriangularAlgebra<F>>, rng: &mut SampleRng, max_dim: usize) -> Result<TripleModule<F>> {
    let x = random_module(&t.a, Side::Left, rng, max_dim);
    let y = random_module(&t.a, Side::Left, rng, max_dim);
    let phi = match rng.gen_range(0..4) {
        0 => Matrix::zeros(x.dim(), y.dim()),
        _ => random_map(&y, &x, rng)?.matrix,
    };
    Ok(TripleModule::new(t, &x, &y, phi)?.with_label(format!("T({},{})", x.dim(), y.dim())))
}

/// A random relation-free acyclic quiver on `2..=max_vertices` vertices with
/// arrows from higher to lower labels.
pub fn random_quiver(rng: &mut SampleRng, max_vertices: usize) -> Quiver {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut arrows = Vec::new();
    for t in 1..=n {
        for s in (t + 1)..=n {
            let count = match rng.gen_range(0..6) {
                0..=2 => 0,
                3..=4 => 1,
                _ => 2,
            };
            for _ in 0..count {
                arrows.push(Arrow { name: format!("a{}", arrows.len()), source: s.to_string(), target: t.to_string() });
            }
        }
    }
    if arrows.is_empty() {
        arrows.push(Arrow { name: "a0".into(), source: n.to_string(), target: "1".into() });
    }
    Quiver::new(QuiverSpec { vertices, arrows, relations: vec![] }).expect("generated quiver is acyclic")
}

/// A random submodule of a random projective module over `A ⊗ kQ`,
/// returned as a flat module.
pub fn random_submodule_of_projective<F: Field>(t: &Arc<TensorAlgebra<F>>, rng: &mut SampleRng, max_dim: usize) -> Module<F> {
    let p = random_projective(&t.flat, Side::Left, rng, max_dim);
    let gens = rng.gen_range(1..=3);
    let vecs: Vec<Vec<F>> = (0..gens).map(|_| random_vector(rng, p.dim())).collect();
    let sub = p.generated_submodule(&vecs);
    if sub.cols() == 0 {
        return p;
    }
    p.submodule(&sub).0.with_label("sub of projective")
}

/// A random monic representation of `2 → 1` over `A`: `X_1` random and `X_2`
/// a random submodule of it, included by the arrow.
pub fn random_monic_a2<F: Field>(t: &Arc<TensorAlgebra<F>>, rng: &mut SampleRng, max_dim: usize) -> Result<QuiverRep<F>> {
    let x1 = random_module(&t.a, Side::Left, rng, max_dim);
    let gens = rng.gen_range(0..=2);
    let vecs: Vec<Vec<F>> = (0..gens).map(|_| random_vector(rng, x1.dim())).collect();
    let sub = x1.generated_submodule(&vecs);
    let (x2, inc) = x1.submodule(&sub);
    let (v1, v2) = (t.quiver.vertex_index("1").unwrap_or(0), t.quiver.vertex_index("2").unwrap_or(1));
    let mut vertices = vec![x1.clone(), x1.clone()];
    vertices[v1] = x1;
    vertices[v2] = x2;
    Ok(QuiverRep::new(t, vertices, vec![inc.matrix])?.with_label("random monic"))
}

/// `A ⊗ k(2 → 1)`.
pub fn a2_tensor<F: Field>(a: &Arc<Algebra<F>>) -> Result<Arc<TensorAlgebra<F>>> {
    build_tensor(a, &crate::quiver::a2_quiver())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::truncated_polynomial;
    use crate::scalar::Rational;

    #[test]
    fn samples_are_valid_and_reproducible() {
        let a = truncated_polynomial::<Rational>(3);
        let mut r1 = rng(7);
        let mut r2 = rng(7);
        for _ in 0..10 {
            let m1 = random_module(&a, Side::Left, &mut r1, 5);
            let m2 = random_module(&a, Side::Left, &mut r2, 5);
            m1.check_action_law().unwrap();
            assert!(m1.dim() <= 5 && m1.dim() > 0);
            assert_eq!(m1.actions(), m2.actions());
        }
    }
}
