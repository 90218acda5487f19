//! `L_m(V, v_ℓ)`: the augmented complex
//! `span(v_ℓ^{m-1}) → S_{m-1}V → V' ⊗ S_{m-2}V → Λ^2 V' ⊗ S_{m-3}V → ...`
//! with `V' = V / k v_ℓ`, its contracting homotopy, and its place in the sequence
//! `0 → L_m(V, v_ℓ) → N_m(V) → N_m(V') → 0` (truncated at the augmentation).

use serde::{Deserialize, Serialize};

use super::{build_nm, ChainComplexFp, ComplexTerm};
use crate::error::{Error, Result};
use crate::ffield::Prime;
use crate::multilinear::{
    contraction_between, enumerate_basis_avoiding, multidegree, phi_between, BasisTensor, ContractionSign,
    FpSparseMatrix, TensorSpaceBasis,
};
use crate::schur::{reduce_sparse, HookModule, HookShape};

#[derive(Debug, Clone)]
pub struct SplittingComplex {
    m: usize,
    ell: usize,
    /// `spaces[k] = Λ^k V' ⊗ S_{m-1-k} V`.
    spaces: Vec<TensorSpaceBasis>,
    complex: ChainComplexFp,
}

fn check_args(m: usize, n: usize, p: Prime, ell: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("m and n must be at least 1".into()));
    }
    if ell == 0 || ell > n {
        return Err(Error::InvalidArgument(format!("ell must lie in 1..={n}, got {ell}")));
    }
    if !m.is_multiple_of(p.value() as usize) {
        return Err(Error::precondition(format!("p must divide m (m = {m}, p = {p})")));
    }
    Ok(())
}

/// Builds `L_m(V, v_ℓ)` for `dim V = n`, `ℓ` 1-based. Requires `p | m`.
pub fn build_lm(m: usize, n: usize, p: Prime, ell: usize) -> Result<SplittingComplex> {
    check_args(m, n, p, ell)?;
    let spaces = (0..m)
        .map(|k| enumerate_basis_avoiding(n, k, m - 1 - k, ell))
        .collect::<Result<Vec<_>>>()?;

    let mut top = vec![0u32; n];
    top[ell - 1] = (m - 1) as u32;
    let generator = BasisTensor::new(Vec::new(), top);
    let gen_row = spaces[0].index_of(&generator).expect("v_ℓ^{m-1} lies in S_{m-1}V");
    let mut differentials = vec![FpSparseMatrix::from_triplets(p, spaces[0].len(), 1, [(gen_row, 0, 1)])];
    for w in spaces.windows(2) {
        differentials.push(phi_between(&w[0], &w[1], p, Some(ell)));
    }

    let mut terms = vec![ComplexTerm { label: format!("span(v{ell}^{})", m - 1), multidegrees: vec![multidegree(&generator)] }];
    terms.extend(spaces.iter().enumerate().map(|(k, s)| ComplexTerm {
        label: format!("Λ^{k} V' ⊗ S_{} V", m - 1 - k),
        multidegrees: s.multidegrees(),
    }));
    let complex = ChainComplexFp::new(p, n, terms, differentials)?;
    Ok(SplittingComplex { m, ell, spaces, complex })
}

impl SplittingComplex {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn n(&self) -> usize {
        self.complex.n()
    }

    pub fn prime(&self) -> Prime {
        self.complex.prime()
    }

    /// The non-augmented terms `Λ^k V' ⊗ S_{m-1-k} V`.
    pub fn spaces(&self) -> &[TensorSpaceBasis] {
        &self.spaces
    }

    /// The augmented complex; term 0 is `span(v_ℓ^{m-1})`.
    pub fn complex(&self) -> &ChainComplexFp {
        &self.complex
    }

    pub fn term_dims(&self) -> Vec<usize> {
        self.complex.dims()
    }

    /// Contraction `Λ^k V' ⊗ S_j V → Λ^{k-1} V' ⊗ S_{j+1} V` on `spaces[k]`.
    pub fn homotopy(&self, k: usize) -> FpSparseMatrix {
        let p = self.prime();
        if k == 0 {
            return FpSparseMatrix::zero(p, 0, self.spaces[0].len());
        }
        contraction_between(&self.spaces[k], &self.spaces[k - 1], p, ContractionSign::Right)
    }

    /// The splitting differential `spaces[k] → spaces[k+1]` (zero map out of the last space).
    pub fn differential(&self, k: usize) -> FpSparseMatrix {
        match self.complex.differentials().get(k + 1) {
            Some(d) => d.clone(),
            None => FpSparseMatrix::zero(self.prime(), 0, self.spaces[k].len()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyReport {
    pub m: usize,
    pub n: usize,
    pub p: Prime,
    pub ell: usize,
    pub term_dims: Vec<usize>,
    /// Basis tensors where `(dh + hd)x = -(α_ℓ + 1)x` was tested.
    pub checked: usize,
    /// Basis tensors with `α_ℓ + 1 ≡ 0 (mod p)`, where the identity carries no information.
    pub skipped: usize,
    pub failures: Vec<String>,
    pub holds: bool,
}

/// Checks `(dh + hd)x = -(α_ℓ + 1)x` on every basis tensor of every non-augmented term.
pub fn homotopy_check(m: usize, n: usize, p: Prime, ell: usize) -> Result<HomotopyReport> {
    let lc = build_lm(m, n, p, ell)?;
    let pv = p.value() as u64;
    let (mut checked, mut skipped) = (0, 0);
    let mut failures = Vec::new();
    for k in 0..lc.spaces.len() {
        let space = &lc.spaces[k];
        let d = lc.differential(k);
        let h = lc.homotopy(k);
        let hd = if k + 1 < lc.spaces.len() { Some(lc.homotopy(k + 1).mul(&d)) } else { None };
        let dh = if k > 0 { Some(lc.differential(k - 1).mul(&h)) } else { None };
        for (c, t) in space.elements().iter().enumerate() {
            let factor = t.exponents[ell - 1] as u64 + 1;
            if factor.is_multiple_of(pv) {
                skipped += 1;
                continue;
            }
            checked += 1;
            let mut col = vec![0u32; space.len()];
            for op in [&hd, &dh].into_iter().flatten() {
                for &(r, v) in op.column(c) {
                    col[r] = ((col[r] as u64 + v as u64) % pv) as u32;
                }
            }
            let mut expected = vec![0u32; space.len()];
            expected[c] = ((pv - factor % pv) % pv) as u32;
            if col != expected {
                failures.push(format!("degree {k}: {t}"));
            }
        }
    }
    let holds = failures.is_empty();
    Ok(HomotopyReport { m, n, p, ell, term_dims: lc.term_dims(), checked, skipped, failures, holds })
}

/// `v_ℓ ∧ v_I` with the sign from moving `v_ℓ` past the smaller indices.
fn wedge_left(ell: usize, t: &BasisTensor) -> Option<(i64, BasisTensor)> {
    let pos = match t.index_set.binary_search(&ell) {
        Ok(_) => return None,
        Err(pos) => pos,
    };
    let mut set = t.index_set.clone();
    set.insert(pos, ell);
    Some((if pos % 2 == 0 { 1 } else { -1 }, BasisTensor::new(set, t.exponents.clone())))
}

/// `v_ℓ ∧ -: Λ^k V' ⊗ S_{m-1-k} V → S_{(m-k,1^k)}(V)` in reduced coordinates.
fn inclusion(space: &TensorSpaceBasis, module: &HookModule, ell: usize) -> FpSparseMatrix {
    let columns: Vec<Vec<u32>> = space
        .elements()
        .iter()
        .map(|t| {
            let (sign, image) = wedge_left(ell, t).expect("index sets avoid ℓ");
            let r = module.ambient().index_of(&image).expect("image lies in the ambient space");
            let v = module.prime().reduce(sign);
            reduce_sparse(module, &[(r, v)])
        })
        .collect();
    FpSparseMatrix::from_dense_columns(module.prime(), module.dimension(), &columns)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SesDegree {
    pub degree: usize,
    pub full_dim: usize,
    pub splitting_dim: usize,
    pub quotient_dim: usize,
    pub dims_add_up: bool,
    pub inclusion_injective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SesReport {
    pub m: usize,
    pub n: usize,
    pub p: Prime,
    pub ell: usize,
    pub degrees: Vec<SesDegree>,
    pub inclusion_is_chain_map: bool,
    pub holds: bool,
}

/// Checks `dim N_m(V)_k = dim L_k + dim N_m(V')_k` and that `v_ℓ ∧ -` is an injective
/// chain map from the non-augmented part of `L_m(V, v_ℓ)` into `N_m(V)`.
pub fn ses_check(m: usize, n: usize, p: Prime, ell: usize) -> Result<SesReport> {
    let lc = build_lm(m, n, p, ell)?;
    let full = build_nm(m, n, p)?;
    let quotient_dims: Vec<usize> = if n == 1 {
        vec![0; m]
    } else {
        (0..m)
            .map(|k| HookModule::build(HookShape::new((m - k) as i64, k), n - 1, p).map(|md| md.dimension()))
            .collect::<Result<_>>()?
    };
    let maps: Vec<FpSparseMatrix> =
        (0..m).map(|k| inclusion(&lc.spaces[k], &full.modules()[k], ell)).collect();
    let degrees: Vec<SesDegree> = (0..m)
        .map(|k| {
            let full_dim = full.modules()[k].dimension();
            let splitting_dim = lc.spaces[k].len();
            SesDegree {
                degree: k,
                full_dim,
                splitting_dim,
                quotient_dim: quotient_dims[k],
                dims_add_up: full_dim == splitting_dim + quotient_dims[k],
                inclusion_injective: maps[k].rank() == splitting_dim,
            }
        })
        .collect();
    let inclusion_is_chain_map = (0..m.saturating_sub(1)).all(|k| {
        let lhs = full.complex().differentials()[k].mul(&maps[k]);
        let rhs = maps[k + 1].mul(&lc.differential(k));
        lhs == rhs
    });
    let holds = inclusion_is_chain_map && degrees.iter().all(|d| d.dims_add_up && d.inclusion_injective);
    Ok(SesReport { m, n, p, ell, degrees, inclusion_is_chain_map, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn small_example_dims() {
        let lc = build_lm(2, 2, f(2), 1).unwrap();
        assert_eq!(lc.term_dims(), vec![1, 2, 1]);
        assert!(lc.complex().is_complex());
        assert_eq!(lc.complex().cohomology_dims(), vec![0, 0, 0]);
    }

    #[test]
    fn homotopy_identity_small_grid() {
        for (m, p) in [(2, 2), (4, 2), (3, 3), (6, 3), (6, 2)] {
            for n in 1..=3 {
                for ell in 1..=n {
                    let r = homotopy_check(m, n, f(p), ell).unwrap();
                    assert!(r.holds, "{r:?}");
                    assert!(n == 1 || r.checked > 0);
                }
            }
        }
    }

    #[test]
    fn ses_small_grid() {
        for (m, p) in [(2, 2), (4, 2), (3, 3)] {
            for n in 1..=3 {
                for ell in 1..=n {
                    let r = ses_check(m, n, f(p), ell).unwrap();
                    assert!(r.holds, "{r:#?}");
                }
            }
        }
    }

    #[test]
    fn bad_arguments() {
        assert!(build_lm(3, 2, f(2), 1).is_err());
        assert!(build_lm(2, 2, f(2), 3).is_err());
        assert!(build_lm(2, 2, f(2), 0).is_err());
    }
}
