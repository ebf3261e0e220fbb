//! Seeded generator of based complexes with torsion homology.
//!
//! Complexes are direct sums of two-term pieces `Λ^s →(P)→ Λ^s` with
//! `det P ≠ 0`, followed by unimodular base changes in every degree. This
//! guarantees `∂∘∂ = 0` and torsion homology by construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BasedComplex, Complex};
use crate::laurent::LaurentPoly;
use crate::linalg::{MatLambda, Matrix};
use crate::ring::Ring;
use crate::scalars::CycloNumber;

#[derive(Clone, Debug)]
pub struct RandomComplexParams {
    /// Number of degrees, at least 2.
    pub max_length: usize,
    pub max_rank: usize,
    /// Degree bound for piece entries before base change.
    pub max_degree: usize,
    /// Allow factors divisible by (t − 1).
    pub allow_root_at_one: bool,
    /// Cyclotomic orders to draw coefficients from.
    pub orders: Vec<u32>,
    /// Elementary operations per degree in the base change.
    pub base_change_ops: usize,
}

impl Default for RandomComplexParams {
    fn default() -> Self {
        RandomComplexParams {
            max_length: 4,
            max_rank: 5,
            max_degree: 2,
            allow_root_at_one: true,
            orders: vec![1, 1, 3, 4],
            base_change_ops: 2,
        }
    }
}

/// Per-item generator: independent of how many items other workers draw.
pub fn item_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn random_scalar(rng: &mut impl Rng, order: u32, nonzero: bool) -> CycloNumber {
    loop {
        let c = CycloNumber::from_int(rng.random_range(-3..=3));
        let c = if order > 1 && rng.random_bool(0.5) {
            &c * &CycloNumber::root_of_unity(order, rng.random_range(0..order as i64))
        } else {
            c
        };
        if !nonzero || !c.is_zero() {
            return c;
        }
    }
}

fn random_unit(rng: &mut impl Rng, order: u32) -> LaurentPoly {
    let c = match rng.random_range(0..4) {
        0 => CycloNumber::from_int(2),
        1 => CycloNumber::from_int(-1),
        2 if order > 1 => CycloNumber::root_of_unity(order, rng.random_range(1..order as i64)),
        _ => CycloNumber::one(),
    };
    LaurentPoly::monomial(c, rng.random_range(-1..=1))
}

fn random_poly(rng: &mut impl Rng, order: u32, max_degree: usize) -> LaurentPoly {
    loop {
        let deg = rng.random_range(0..=max_degree);
        let coeffs = (0..=deg).map(|_| random_scalar(rng, order, false)).collect();
        let p = LaurentPoly::new(rng.random_range(-1..=1), coeffs);
        if !p.is_zero() {
            return p;
        }
    }
}

fn diagonal_entry(rng: &mut impl Rng, order: u32, params: &RandomComplexParams) -> LaurentPoly {
    match rng.random_range(0..6) {
        0 => random_unit(rng, order),
        1 if params.allow_root_at_one => {
            let t1 = LaurentPoly::t_minus(CycloNumber::one());
            &t1 * &random_poly(rng, order, params.max_degree.saturating_sub(1))
        }
        _ => random_poly(rng, order, params.max_degree),
    }
}

/// `s × s` upper triangular with nonzero diagonal.
fn piece_matrix(rng: &mut impl Rng, s: usize, order: u32, params: &RandomComplexParams) -> MatLambda {
    Matrix::from_fn(s, s, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => diagonal_entry(rng, order, params),
        std::cmp::Ordering::Less if rng.random_bool(0.5) => random_poly(rng, order, 1),
        _ => LaurentPoly::zero(),
    })
}

/// A random element of GL_n(Λ) together with its inverse.
fn random_unimodular(rng: &mut impl Rng, n: usize, order: u32, ops: usize) -> (MatLambda, MatLambda) {
    let mut g = MatLambda::identity(n);
    let mut g_inv = MatLambda::identity(n);
    for _ in 0..ops {
        if n >= 2 && rng.random_bool(0.7) {
            let a = rng.random_range(0..n);
            let b = (a + rng.random_range(1..n)) % n;
            let c = LaurentPoly::monomial(random_scalar(rng, order, true), rng.random_range(-1..=1));
            // (I + c e_ab) g, and g⁻¹ (I − c e_ab)
            g.add_row_multiple(a, b, &c);
            g_inv.add_col_multiple(b, a, &c.neg());
        } else {
            let i = rng.random_range(0..n);
            let u = random_unit(rng, order);
            let u_inv = LaurentPoly::monomial(u.leading_coeff().try_inv().expect("unit"), -u.min_exp());
            g.scale_row(i, &u);
            for r in 0..n {
                let v = g_inv.get(r, i).mul(&u_inv);
                g_inv.set(r, i, v);
            }
        }
    }
    (g, g_inv)
}

pub fn random_complex(rng: &mut impl Rng, params: &RandomComplexParams) -> BasedComplex {
    let length = rng.random_range(2..=params.max_length.max(2));
    let order = params.orders[rng.random_range(0..params.orders.len())];
    let mut ranks = vec![0usize; length];
    let mut pieces: Vec<(usize, MatLambda)> = Vec::new();
    let attempts = rng.random_range(1..=4);
    for _ in 0..attempts {
        let d = rng.random_range(1..length);
        let s = if rng.random_bool(0.3) { 2 } else { 1 };
        if ranks[d] + s > params.max_rank || ranks[d - 1] + s > params.max_rank {
            continue;
        }
        ranks[d] += s;
        ranks[d - 1] += s;
        pieces.push((d, piece_matrix(rng, s, order, params)));
    }
    if pieces.is_empty() {
        ranks[1] += 1;
        ranks[0] += 1;
        pieces.push((1, piece_matrix(rng, 1, order, params)));
    }
    // place each piece block into ∂_d
    let mut boundaries: Vec<MatLambda> = (1..length).map(|d| Matrix::zeros(ranks[d - 1], ranks[d])).collect();
    let mut fill = vec![0usize; length];
    for (d, p) in &pieces {
        let s = p.rows();
        let (row0, col0) = (fill[d - 1], fill[*d]);
        for i in 0..s {
            for j in 0..s {
                boundaries[d - 1].set(row0 + i, col0 + j, p.get(i, j).clone());
            }
        }
        fill[d - 1] += s;
        fill[*d] += s;
    }
    let mut c = Complex::new(0, ranks.clone(), boundaries).expect("direct sum of two-term complexes");
    for (i, &n) in ranks.iter().enumerate() {
        if n == 0 {
            continue;
        }
        let (g, g_inv) = random_unimodular(rng, n, order, params.base_change_ops);
        c = c.change_basis(i as i64, &g, &g_inv).expect("unimodular base change");
    }
    c
}

#[cfg(test)]
mod tests {
    use super::super::homology;
    use super::*;

    #[test]
    fn generated_complexes_are_torsion() {
        let params = RandomComplexParams::default();
        for i in 0..40 {
            let c = random_complex(&mut item_rng(7, i), &params);
            assert!(homology(&c).is_torsion());
            assert!(c.ranks().iter().all(|&r| r <= params.max_rank));
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let params = RandomComplexParams::default();
        let a = random_complex(&mut item_rng(42, 3), &params);
        let b = random_complex(&mut item_rng(42, 3), &params);
        assert_eq!(a, b);
    }
}
