mod support;

use eggert::algebras::{
    contracted_algebra, direct_sum, example_2_4_algebra, forbidden_word_algebra,
    forbidden_word_dims, graded_components, ideal_generated, quotient, subalgebra_generated,
    tensor_product, truncated_polynomial, FiniteAlgebra,
};
use eggert::exactlin::{PrimeField, Scalar};
use eggert::explorer::EXAMPLE_2_4_SEED;
use eggert::semigroups::{numerical_quotient, NumericalPresentation};
use proptest::prelude::*;

fn random_element(alg: &FiniteAlgebra, seed: &[u64]) -> Vec<Scalar> {
    let p = alg.characteristic();
    (0..alg.dim())
        .map(|i| seed[i % seed.len()].wrapping_mul(i as u64 + 1) % p)
        .collect()
}

#[test]
fn forbidden_word_dims_match_brute_force() {
    for d in 1..=3 {
        let dims = forbidden_word_dims(d, 7).unwrap();
        for (k, &dim) in dims.iter().enumerate() {
            assert_eq!(
                dim,
                support::forbidden_word_count(d, k + 1),
                "d={d} degree {}",
                k + 1
            );
        }
    }
}

#[test]
fn forbidden_word_algebra_components() {
    let f = PrimeField::new(2).unwrap();
    let (alg, view) = forbidden_word_algebra(f, 2, 6).unwrap();
    let expected: Vec<usize> = (1..=6)
        .map(|k| support::forbidden_word_count(2, k))
        .collect();
    assert_eq!(view.component_dims(), expected);
    alg.check_associativity(usize::MAX).unwrap();
}

#[test]
fn truncated_polynomial_components_count_monomials() {
    let f = PrimeField::new(3).unwrap();
    for vars in 1..=3 {
        for degree in 1..=5 {
            let (alg, view) = truncated_polynomial(f, vars, degree, true).unwrap();
            let expected: Vec<usize> = (1..=degree)
                .map(|k| support::stars_and_bars(vars, k))
                .collect();
            assert_eq!(
                view.component_dims(),
                expected,
                "vars={vars} degree={degree}"
            );
            assert_eq!(alg.dim(), expected.iter().sum::<usize>());
        }
    }
    let (free, _) = truncated_polynomial(f, 2, 4, false).unwrap();
    assert_eq!(free.dim(), 2 + 4 + 8 + 16);
}

#[test]
fn graded_example_dims() {
    let f = PrimeField::new(5).unwrap();
    let (alg, view) = example_2_4_algebra(f, EXAMPLE_2_4_SEED).unwrap();
    let dims: Vec<usize> = graded_components(&alg, &view)
        .iter()
        .map(|c| c.dim)
        .collect();
    assert_eq!(dims, vec![4, 3, 4, 3]);
}

#[test]
fn contracted_algebra_dimension_is_nonzero_count() {
    let pres = NumericalPresentation::new(vec![3, 5], 20);
    let s = numerical_quotient(&pres, 100).unwrap().semigroup;
    let alg = contracted_algebra(&s, PrimeField::new(2).unwrap());
    assert_eq!(alg.dim(), s.card_nonzero());
    alg.check_associativity(usize::MAX).unwrap();
}

#[test]
fn tensor_and_sum_dimensions() {
    let f = PrimeField::new(2).unwrap();
    let (r, _) = truncated_polynomial(f, 1, 4, true).unwrap();
    let (s, _) = truncated_polynomial(f, 2, 2, true).unwrap();
    let t = tensor_product(&r, &s).unwrap();
    assert_eq!(t.dim(), r.dim() * s.dim());
    t.check_associativity(usize::MAX).unwrap();
    assert_eq!(direct_sum(&r, &s).unwrap().dim(), r.dim() + s.dim());
    let g3 = PrimeField::new(3).unwrap();
    let (u, _) = truncated_polynomial(g3, 1, 3, true).unwrap();
    assert!(tensor_product(&r, &u).is_err());
}

proptest! {
    #[test]
    fn quotient_projection_is_a_homomorphism(
        p in prop::sample::select(vec![2u64, 3, 5]),
        degree in 2usize..6,
        gen_seed in prop::collection::vec(0u64..5, 1..4),
        a_seed in prop::collection::vec(0u64..5, 1..6),
        b_seed in prop::collection::vec(0u64..5, 1..6),
    ) {
        let f = PrimeField::new(p).unwrap();
        let (alg, _) = truncated_polynomial(f, 2, degree, true).unwrap();
        let g = random_element(&alg, &gen_seed);
        let ideal = ideal_generated(&alg, &[g]).unwrap();
        let (q, proj) = quotient(&alg, &ideal).unwrap();
        prop_assert_eq!(q.dim() + ideal.dim(), alg.dim());
        let a = random_element(&alg, &a_seed);
        let b = random_element(&alg, &b_seed);
        let lhs = proj.mul_vec(&alg.mul(&a, &b)).unwrap();
        let rhs = q.mul(&proj.mul_vec(&a).unwrap(), &proj.mul_vec(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
        for v in ideal.basis_vectors() {
            prop_assert!(proj.mul_vec(v).unwrap().iter().all(|&c| c == 0));
        }
    }

    #[test]
    fn ideals_absorb_products(
        p in prop::sample::select(vec![2u64, 3]),
        gen_seed in prop::collection::vec(0u64..5, 1..5),
    ) {
        let f = PrimeField::new(p).unwrap();
        let (alg, _) = truncated_polynomial(f, 2, 4, true).unwrap();
        let ideal = ideal_generated(&alg, &[random_element(&alg, &gen_seed)]).unwrap();
        for v in ideal.basis_vectors() {
            for i in 0..alg.dim() {
                prop_assert!(ideal.contains(&alg.mul(v, &alg.basis_vector(i))).unwrap());
            }
        }
    }

    #[test]
    fn subalgebras_are_closed(
        gens in prop::collection::vec(2u64..9, 1..3),
        bound in 6usize..16,
    ) {
        let f = PrimeField::new(2).unwrap();
        let (alg, _) = truncated_polynomial(f, 1, bound, true).unwrap();
        let vecs: Vec<Vec<Scalar>> = gens
            .iter()
            .filter(|&&g| g as usize <= bound)
            .map(|&g| alg.basis_vector(g as usize - 1))
            .collect();
        prop_assume!(!vecs.is_empty());
        let (sub, inclusion) = subalgebra_generated(&alg, &vecs).unwrap();
        let semigroup_members = support::members_by_sums(&gens, bound as u64);
        prop_assert_eq!(sub.dim(), semigroup_members.len());
        prop_assert_eq!(inclusion.rows(), sub.dim());
    }

    #[test]
    fn multiplication_is_bilinear(
        p in prop::sample::select(vec![3u64, 5]),
        s in prop::collection::vec(0u64..7, 1..5),
        t in prop::collection::vec(0u64..7, 1..5),
        u in prop::collection::vec(0u64..7, 1..5),
        c in 0u64..5,
    ) {
        let f = PrimeField::new(p).unwrap();
        let (alg, _) = truncated_polynomial(f, 2, 3, false).unwrap();
        let (a, b, d) = (random_element(&alg, &s), random_element(&alg, &t), random_element(&alg, &u));
        let left = alg.mul(&alg.add(&a, &alg.scale(c % p, &b)), &d);
        let right = alg.add(&alg.mul(&a, &d), &alg.scale(c % p, &alg.mul(&b, &d)));
        prop_assert_eq!(left, right);
        prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &d), alg.mul(&a, &alg.mul(&b, &d)));
    }
}
