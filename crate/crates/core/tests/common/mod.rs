//! Random elements and law checks shared by the property tests and the
//! acceptance harness.

#![allow(dead_code)]

use cherednik::exact::{int, Monomial, MultiPoly, Var};
use cherednik::pbw::{DeformationGl, GlAlgebra, Generator, PbwElement, PbwMonomial};
use cherednik::poisson::PoissonGl;
use cherednik::sp::{DeformationSp, PoissonSp};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TRIALS: usize = 200;

pub fn random_monomial(rng: &mut ChaCha8Rng, len: usize, max_deg: usize) -> PbwMonomial {
    let mut m = PbwMonomial::one(len);
    for _ in 0..rng.gen_range(1..=max_deg) {
        m = m.with(rng.gen_range(0..len), 1);
    }
    m
}

pub fn random_element(rng: &mut ChaCha8Rng, alg: &GlAlgebra) -> PbwElement {
    let mut a = PbwElement::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let c = rng.gen_range(-3i64..=3);
        if c != 0 {
            a.add_term(random_monomial(rng, alg.len(), 2), MultiPoly::int(c));
        }
    }
    a
}

pub fn random_weight_vector(rng: &mut ChaCha8Rng, alg: &GlAlgebra) -> (PbwElement, Vec<i64>) {
    let m = random_monomial(rng, alg.len(), 3);
    let w = m.weight(alg.layout());
    (PbwElement::monomial(m, MultiPoly::int(rng.gen_range(1..=4))), w)
}

pub fn grid() -> Vec<DeformationGl> {
    vec![
        DeformationGl::symbolic(1, 2),
        DeformationGl::ints(2, &[1]),
        DeformationGl::symbolic(2, 2),
        DeformationGl::ints(3, &[2, -1]),
    ]
}

pub fn random_poly(rng: &mut ChaCha8Rng, vars: &[Var]) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let deg = rng.gen_range(1..=2);
        let m = (0..deg).fold(Monomial::one(), |m, _| m.mul(&Monomial::var(*vars.choose(rng).unwrap())));
        p.add_term(m, int(rng.gen_range(-3..=3)));
    }
    p
}

/// Antisymmetry, Leibniz and Jacobi failures over `TRIALS` random triples.
pub fn axiom_failures(
    rng: &mut ChaCha8Rng,
    vars: &[Var],
    bracket: impl Fn(&MultiPoly, &MultiPoly) -> MultiPoly,
    jacobi: impl Fn(&MultiPoly, &MultiPoly, &MultiPoly) -> MultiPoly,
) -> usize {
    (0..TRIALS)
        .filter(|_| {
            let (a, b, c) = (random_poly(rng, vars), random_poly(rng, vars), random_poly(rng, vars));
            bracket(&a, &b) != -bracket(&b, &a)
                || bracket(&a, &(&b * &c)) != &(&bracket(&a, &b) * &c) + &(&b * &bracket(&a, &c))
                || !jacobi(&a, &b, &c).is_zero()
        })
        .count()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Failures of ((ab)c = a(bc)) over `TRIALS` random triples.
pub fn associativity_failures(rng: &mut ChaCha8Rng, alg: &GlAlgebra) -> usize {
    (0..TRIALS)
        .filter(|_| {
            let (a, b, c) = (random_element(rng, alg), random_element(rng, alg), random_element(rng, alg));
            alg.mul(&alg.mul(&a, &b), &c) != alg.mul(&a, &alg.mul(&b, &c))
        })
        .count()
}

pub fn sigma_failures(rng: &mut ChaCha8Rng, alg: &GlAlgebra) -> usize {
    (0..TRIALS)
        .filter(|_| {
            let a = random_element(rng, alg);
            let b = random_element(rng, alg);
            alg.sigma(&alg.sigma(&a)) != a || alg.sigma(&alg.mul(&a, &b)) != alg.mul(&alg.sigma(&b), &alg.sigma(&a))
        })
        .count()
}

pub fn weight_failures(rng: &mut ChaCha8Rng, alg: &GlAlgebra) -> usize {
    let l = alg.layout().clone();
    (0..TRIALS)
        .filter(|_| {
            let (a, wa) = random_weight_vector(rng, alg);
            let (b, wb) = random_weight_vector(rng, alg);
            let sum: Vec<i64> = wa.iter().zip(&wb).map(|(x, y)| x + y).collect();
            let neg: Vec<i64> = wa.iter().map(|x| -x).collect();
            !alg.mul(&a, &b).terms().all(|(m, _)| m.weight(&l) == sum) || !alg.sigma(&a).terms().all(|(m, _)| m.weight(&l) == neg)
        })
        .count()
}

pub fn poisson_gl_failures(rng: &mut ChaCha8Rng, d: &DeformationGl) -> usize {
    let p = PoissonGl::new(d);
    axiom_failures(rng, &p.generators(), |a, b| p.bracket(a, b), |a, b, c| p.jacobi(a, b, c))
}

pub fn poisson_sp_failures(rng: &mut ChaCha8Rng, d: &DeformationSp) -> usize {
    let p = PoissonSp::new(d);
    axiom_failures(rng, &p.generators(), |a, b| p.bracket(a, b), |a, b, c| p.jacobi(a, b, c))
}

pub fn words(rng: &mut ChaCha8Rng, alg: &GlAlgebra, len: usize) -> Vec<Generator> {
    let gens = alg.layout().gens().to_vec();
    (0..len).map(|_| *gens.choose(rng).unwrap()).collect()
}
