mod common;

use common::*;
use hookschur::characters::{symmetry_check, MultiPoly};
use hookschur::complexes::{build_nm, module_action_matrix, GlElement};
use hookschur::ffield::{binomial_mod_p, FpElement};
use hookschur::ktheory::{adams_grayson, K0Class};
use hookschur::multilinear::{kappa_matrix, phi_matrix, FpSparseMatrix};
use hookschur::schur::{HookModule, HookShape};
use hookschur::Prime;
use proptest::prelude::*;

fn prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![2u32, 3, 5, 7, 11, 13]).prop_map(|p| Prime::new(p).unwrap())
}

fn small_prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![2u32, 3, 5]).prop_map(|p| Prime::new(p).unwrap())
}

fn poly3() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, 3), -3i64..=3), 0..5).prop_map(|terms| {
        let mut f = MultiPoly::zero(3);
        for (e, c) in terms {
            f.add_term(e, c);
        }
        f
    })
}

fn matrix() -> impl Strategy<Value = FpSparseMatrix> {
    (small_prime(), 1usize..7, 1usize..7).prop_flat_map(|(p, r, c)| {
        prop::collection::vec(0i64..p.value() as i64, r * c).prop_map(move |vals| {
            FpSparseMatrix::from_triplets(p, r, c, (0..r * c).map(|k| (k / c, k % c, vals[k])))
        })
    })
}

fn compose(g: &GlElement, h: &GlElement) -> GlElement {
    let p = g.p;
    let n = g.n();
    let columns = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let s: u64 = (0..n).map(|k| g.columns[k][i] as u64 * h.columns[j][k] as u64).sum();
                    (s % p.value() as u64) as u32
                })
                .collect()
        })
        .collect();
    GlElement { p, columns }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(p in prime(), a in 0i64..100, b in 0i64..100, c in 0i64..100) {
        let (a, b, c) = (FpElement::new(a, p), FpElement::new(b, p), FpElement::new(c, p));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!(a - a, FpElement::zero(p));
        match a.inv() {
            Some(inv) => prop_assert_eq!(a * inv, FpElement::one(p)),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn binomial_mod_p_matches_pascal(p in small_prime(), n in 0usize..120, k in 0u64..130) {
        let rows = pascal(n);
        let expected = if k as usize <= n { big_mod(&rows[n][k as usize], p.value()) } else { 0 };
        prop_assert_eq!(binomial_mod_p(n as u64, k, p).residue(), expected);
    }

    #[test]
    fn polynomial_ring_laws(f in poly3(), g in poly3(), h in poly3()) {
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!((&f * &g).frobenius_scale(3), &f.frobenius_scale(3) * &g.frobenius_scale(3));
        prop_assert!((&f - &f).is_zero());
        let json = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<MultiPoly>(&json).unwrap(), f);
    }

    #[test]
    fn rank_nullity(a in matrix()) {
        let kernel = a.kernel_basis();
        prop_assert_eq!(a.rank() + kernel.len(), a.cols());
        for v in &kernel {
            prop_assert!(a.apply(v).iter().all(|&x| x == 0));
        }
        let x: Vec<u32> = (0..a.cols() as u32).map(|i| i % a.prime().value()).collect();
        let b = a.apply(&x);
        let y = a.solve(&b).expect("b lies in the image");
        prop_assert_eq!(a.apply(&y), b);
    }

    #[test]
    fn phi_and_kappa_square_to_zero(p in small_prime(), n in 1usize..5, i in 0usize..4, j in 2usize..5) {
        let first = phi_matrix(n, i, j, p).unwrap();
        let second = phi_matrix(n, i + 1, j - 1, p).unwrap();
        prop_assert!(second.mul(&first).is_zero());
        if i >= 2 {
            let k1 = kappa_matrix(n, i, j, p).unwrap();
            let k2 = kappa_matrix(n, i - 1, j + 1, p).unwrap();
            prop_assert!(k2.mul(&k1).is_zero());
        }
    }

    #[test]
    fn hook_modules_match_tableaux(p in small_prime(), a in 1i64..6, b in 0usize..4, n in 1usize..5) {
        let m = HookModule::build(HookShape::new(a, b), n, p).unwrap();
        prop_assert_eq!(m.dimension(), hook_tableau_count(a as usize, b, n));
        let ch = m.character();
        prop_assert!(symmetry_check(&ch));
        prop_assert_eq!(to_poly(&ch), hook_schur_oracle(a, b, n));
    }

    #[test]
    fn normal_form_is_a_projection(p in small_prime(), a in 1i64..5, b in 0usize..3, seed in any::<u64>()) {
        let m = HookModule::build(HookShape::new(a, b), 3, p).unwrap();
        let x: Vec<u32> = (0..m.ambient().len() as u64)
            .map(|i| (seed.wrapping_mul(i + 7).rotate_left(i as u32 % 64) % p.value() as u64) as u32)
            .collect();
        let nf = m.normal_form(&x);
        prop_assert_eq!(m.normal_form(&nf), nf.clone());
        let c = m.coordinates(&x);
        prop_assert_eq!(m.coordinates(&m.lift(&c)), c);
    }

    #[test]
    fn cohomology_is_consistent(idx in 0usize..6, n in 1usize..4) {
        let (m, p) = [(2, 2), (4, 2), (3, 3), (6, 2), (6, 3), (5, 5)][idx];
        let hc = build_nm(m, n, Prime::new(p).unwrap()).unwrap();
        let c = hc.complex();
        let dims = c.dims();
        let h = c.cohomology_dims();
        let alt = |v: &[usize]| v.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum::<i64>();
        prop_assert_eq!(alt(&dims), alt(&h));
        let basis_count: Vec<usize> = (0..c.len()).map(|i| c.cohomology_basis(i).len()).collect();
        prop_assert_eq!(basis_count, h);
    }

    #[test]
    fn action_is_a_representation(i in 1usize..4, j in 1usize..4, lam in 1i64..3, t in 1i64..3) {
        prop_assume!(i != j);
        let p = Prime::new(3).unwrap();
        let g = GlElement::elementary(3, i, j, lam, p);
        let h = GlElement::diagonal(&[t, 1, 2], p);
        let module = HookModule::build(HookShape::new(2, 1), 3, p).unwrap();
        let lhs = module_action_matrix(&compose(&g, &h), &module);
        let rhs = module_action_matrix(&g, &module).mul(&module_action_matrix(&h, &module));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn adams_is_a_ring_map(
        a in prop::collection::vec((prop::collection::vec(0u32..2, 2), -2i64..=2), 1..3),
        b in prop::collection::vec((prop::collection::vec(0u32..2, 2), -2i64..=2), 1..3),
        k in 1i64..4,
    ) {
        let class = |terms: Vec<(Vec<u32>, i64)>| {
            let mut f = MultiPoly::zero(2);
            for (e, c) in terms {
                f.add_term(e, c);
            }
            K0Class::from_character(f)
        };
        let (a, b) = (class(a), class(b));
        let (pa, pb) = (adams_grayson(k, &a).unwrap(), adams_grayson(k, &b).unwrap());
        prop_assert_eq!(adams_grayson(k, &a.add(&b)).unwrap(), pa.add(&pb));
        prop_assert_eq!(adams_grayson(k, &a.mul(&b)).unwrap(), pa.mul(&pb));
        prop_assert_eq!(adams_grayson(k, &a).unwrap().value, a.value.substitute(&[
            MultiPoly::monomial(vec![k as u32, 0], 1),
            MultiPoly::monomial(vec![0, k as u32], 1),
        ]));
    }
}
