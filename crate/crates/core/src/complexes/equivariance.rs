//! `GL(V)` acting on hook modules, and the check that the differentials of `N_m(V)`
//! commute with that action.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::HookComplex;
use crate::ffield::Prime;
use crate::multilinear::{wedge_right, BasisTensor, FpSparseMatrix};
use crate::schur::{reduce_sparse, HookModule};

pub const DEFAULT_SEED: u64 = 0x5EED;

/// An invertible `n × n` matrix over `F_p`; `columns[j]` is the image of `v_{j+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlElement {
    pub p: Prime,
    pub columns: Vec<Vec<u32>>,
}

impl GlElement {
    pub fn identity(n: usize, p: Prime) -> Self {
        let columns = (0..n)
            .map(|j| {
                let mut c = vec![0; n];
                c[j] = 1;
                c
            })
            .collect();
        GlElement { p, columns }
    }

    /// `v_i ↦ v_i + λ v_j` (1-based `i != j`), fixing the other basis vectors.
    pub fn elementary(n: usize, i: usize, j: usize, lambda: i64, p: Prime) -> Self {
        assert!(i != j && (1..=n).contains(&i) && (1..=n).contains(&j));
        let mut g = Self::identity(n, p);
        g.columns[i - 1][j - 1] = p.reduce(lambda);
        g
    }

    /// `v_k ↦ t_k v_k`; every `t_k` must be nonzero mod `p`.
    pub fn diagonal(entries: &[i64], p: Prime) -> Self {
        let mut g = Self::identity(entries.len(), p);
        for (k, &t) in entries.iter().enumerate() {
            let t = p.reduce(t);
            assert!(t != 0, "diagonal entries must be units");
            g.columns[k][k] = t;
        }
        g
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }
}

/// `g · (v_I ⊗ v^α) = (g v_{i_1} ∧ ... ∧ g v_{i_k}) ⊗ Π (g v_k)^{α_k}`, expanded in basis tensors.
pub fn act_on_tensor(g: &GlElement, t: &BasisTensor) -> Vec<(BasisTensor, u32)> {
    let p = g.p;
    let n = g.n();
    let mut wedge: BTreeMap<Vec<usize>, u32> = BTreeMap::from([(Vec::new(), 1)]);
    for &k in &t.index_set {
        let mut next = BTreeMap::new();
        for (set, c) in &wedge {
            for (j, &a) in g.columns[k - 1].iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if let Some((sign, s)) = wedge_right(set, j + 1) {
                    let v = p.mul(p.mul(*c, a), p.reduce(sign));
                    let e = next.entry(s).or_insert(0);
                    *e = p.add(*e, v);
                }
            }
        }
        wedge = next;
    }
    let mut sym: BTreeMap<Vec<u32>, u32> = BTreeMap::from([(vec![0; n], 1)]);
    for k in 0..n {
        for _ in 0..t.exponents[k] {
            let mut next = BTreeMap::new();
            for (exps, c) in &sym {
                for (j, &a) in g.columns[k].iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    let mut e = exps.clone();
                    e[j] += 1;
                    let slot = next.entry(e).or_insert(0);
                    *slot = p.add(*slot, p.mul(*c, a));
                }
            }
            sym = next;
        }
    }
    let mut out = Vec::new();
    for (set, a) in wedge.iter().filter(|(_, &a)| a != 0) {
        for (exps, b) in sym.iter().filter(|(_, &b)| b != 0) {
            out.push((BasisTensor::new(set.clone(), exps.clone()), p.mul(*a, *b)));
        }
    }
    out
}

/// The matrix of `g` on the reduced coordinates of `module`.
pub fn module_action_matrix(g: &GlElement, module: &HookModule) -> FpSparseMatrix {
    let ambient = module.ambient();
    let columns: Vec<Vec<u32>> = module
        .reduced_basis()
        .iter()
        .map(|&e| {
            let image: Vec<(usize, u32)> = act_on_tensor(g, ambient.get(e))
                .into_iter()
                .map(|(t, c)| (ambient.index_of(&t).expect("action preserves the ambient space"), c))
                .collect();
            reduce_sparse(module, &image)
        })
        .collect();
    FpSparseMatrix::from_dense_columns(module.prime(), module.dimension(), &columns)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivarianceFailure {
    pub trial: usize,
    pub degree: usize,
    pub element: GlElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivarianceReport {
    pub m: usize,
    pub n: usize,
    pub p: Prime,
    pub seed: u64,
    pub trials: usize,
    pub commuting_squares_checked: usize,
    pub failures: Vec<EquivarianceFailure>,
    pub holds: bool,
}

fn random_element(rng: &mut ChaCha8Rng, trial: usize, n: usize, p: Prime) -> GlElement {
    let pv = p.value() as i64;
    if n >= 2 && (p.value() == 2 || trial.is_multiple_of(2)) {
        let i = rng.gen_range(1..=n);
        let mut j = rng.gen_range(1..n);
        if j >= i {
            j += 1;
        }
        GlElement::elementary(n, i, j, rng.gen_range(1..pv), p)
    } else {
        let entries: Vec<i64> = (0..n).map(|_| rng.gen_range(1..pv.max(2))).collect();
        GlElement::diagonal(&entries, p)
    }
}

/// Samples `trials` elements of `GL_n(F_p)` (elementary and diagonal) and checks
/// `ρ_{i+1}(g) d_i = d_i ρ_i(g)` for every differential.
pub fn equivariance_check(hc: &HookComplex, trials: usize, seed: u64) -> EquivarianceReport {
    let (n, p) = (hc.n(), hc.prime());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let diffs = hc.complex().differentials();
    let mut failures = Vec::new();
    let mut checked = 0;
    for trial in 0..trials {
        let g = random_element(&mut rng, trial, n, p);
        let rho: Vec<FpSparseMatrix> = hc.modules().iter().map(|md| module_action_matrix(&g, md)).collect();
        for (i, d) in diffs.iter().enumerate() {
            checked += 1;
            if rho[i + 1].mul(d) != d.mul(&rho[i]) {
                failures.push(EquivarianceFailure { trial, degree: i, element: g.clone() });
            }
        }
    }
    let holds = failures.is_empty();
    EquivarianceReport {
        m: hc.m(),
        n,
        p,
        seed,
        trials,
        commuting_squares_checked: checked,
        failures,
        holds,
    }
}

#[cfg(test)]
mod tests {
    use super::super::build_nm;
    use super::*;

    fn f(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn identity_acts_trivially() {
        let hc = build_nm(4, 2, f(2)).unwrap();
        let g = GlElement::identity(2, f(2));
        for md in hc.modules() {
            assert_eq!(module_action_matrix(&g, md), FpSparseMatrix::identity(f(2), md.dimension()));
        }
    }

    #[test]
    fn elementary_action_on_tensor() {
        let p = f(3);
        let g = GlElement::elementary(2, 1, 2, 1, p);
        // v1 ⊗ v1 ↦ (v1 + v2) ⊗ (v1 + v2)
        let img = act_on_tensor(&g, &BasisTensor::new(vec![1], vec![1, 0]));
        assert_eq!(img.len(), 4);
        // v1∧v2 ↦ (v1 + v2)∧v2 = v1∧v2
        let img = act_on_tensor(&g, &BasisTensor::new(vec![1, 2], vec![0, 0]));
        assert_eq!(img, vec![(BasisTensor::new(vec![1, 2], vec![0, 0]), 1)]);
    }

    #[test]
    fn differentials_are_equivariant() {
        for (m, n, p) in [(2, 2, 2), (4, 2, 2), (3, 2, 3), (4, 3, 2), (6, 2, 3)] {
            let hc = build_nm(m, n, f(p)).unwrap();
            let r = equivariance_check(&hc, 6, DEFAULT_SEED);
            assert!(r.holds, "{r:?}");
        }
    }

    #[test]
    fn corrupted_differential_is_detected() {
        for (m, n, p) in [(4, 2, 2), (3, 2, 3), (4, 3, 2)] {
            let bad = build_nm(m, n, f(p)).unwrap().with_corrupted_differential().unwrap();
            assert!(!equivariance_check(&bad, 8, DEFAULT_SEED).holds);
        }
    }
}
