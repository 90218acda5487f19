//! The complex `N_m(V)`, the splitting complexes `L_m(V, v_ℓ)`, and their cohomology.

mod equivariance;
mod splitting;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::characters::{frobenius_scale, MultiPoly};
use crate::error::{Error, Result};
use crate::ffield::Prime;
use crate::multilinear::{phi_between, Echelon, FpSparseMatrix, Multidegree};
use crate::schur::{reduce_sparse, HookModule, HookShape};

pub use equivariance::{
    act_on_tensor, equivariance_check, module_action_matrix, EquivarianceFailure, EquivarianceReport, GlElement,
    DEFAULT_SEED,
};
pub use splitting::{
    build_lm, homotopy_check, ses_check, HomotopyReport, SesDegree, SesReport, SplittingComplex,
};

/// One term of a complex: its dimension is the number of multidegrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexTerm {
    pub label: String,
    pub multidegrees: Vec<Multidegree>,
}

impl ComplexTerm {
    pub fn dim(&self) -> usize {
        self.multidegrees.len()
    }
}

/// A finite cochain complex of `F_p` spaces with multigraded bases.
///
/// `differentials[i]` maps term `i` to term `i + 1`.
#[derive(Debug, Clone)]
pub struct ChainComplexFp {
    p: Prime,
    n: usize,
    terms: Vec<ComplexTerm>,
    differentials: Vec<FpSparseMatrix>,
}

impl ChainComplexFp {
    /// Assembles a complex, rejecting shape mismatches and `d ∘ d != 0`.
    pub fn new(p: Prime, n: usize, terms: Vec<ComplexTerm>, differentials: Vec<FpSparseMatrix>) -> Result<Self> {
        let c = Self::new_unchecked(p, n, terms, differentials)?;
        if let Some(i) = c.first_nonzero_square() {
            return Err(Error::invariant(format!("d_{} ∘ d_{} != 0", i + 1, i)));
        }
        Ok(c)
    }

    pub(crate) fn new_unchecked(
        p: Prime,
        n: usize,
        terms: Vec<ComplexTerm>,
        differentials: Vec<FpSparseMatrix>,
    ) -> Result<Self> {
        if differentials.len() + 1 != terms.len().max(1) {
            return Err(Error::invariant("a complex with k terms needs k - 1 differentials"));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.cols() != terms[i].dim() || d.rows() != terms[i + 1].dim() {
                return Err(Error::invariant(format!("d_{i} has shape {}x{}", d.rows(), d.cols())));
            }
        }
        Ok(ChainComplexFp { p, n, terms, differentials })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[ComplexTerm] {
        &self.terms
    }

    pub fn differentials(&self) -> &[FpSparseMatrix] {
        &self.differentials
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(ComplexTerm::dim).collect()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.differentials.iter().map(FpSparseMatrix::rank).collect()
    }

    fn first_nonzero_square(&self) -> Option<usize> {
        self.differentials.windows(2).position(|w| !w[1].mul(&w[0]).is_zero())
    }

    /// `d_{i+1} ∘ d_i = 0` for every `i`.
    pub fn is_complex(&self) -> bool {
        self.first_nonzero_square().is_none()
    }

    /// Every nonzero entry of every differential joins basis vectors of equal multidegree.
    pub fn preserves_multidegree(&self) -> bool {
        self.differentials.iter().enumerate().all(|(i, d)| {
            d.entries().all(|(r, c, _)| self.terms[i + 1].multidegrees[r] == self.terms[i].multidegrees[c])
        })
    }

    fn incoming_rank(&self, i: usize, ranks: &[usize]) -> usize {
        if i == 0 {
            0
        } else {
            ranks[i - 1]
        }
    }

    fn outgoing_rank(&self, i: usize, ranks: &[usize]) -> usize {
        ranks.get(i).copied().unwrap_or(0)
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..self.len())
            .map(|i| self.terms[i].dim() - self.outgoing_rank(i, &ranks) - self.incoming_rank(i, &ranks))
            .collect()
    }

    /// Rank of `d_i` on each multidegree block of term `i`.
    pub fn block_ranks(&self, i: usize) -> BTreeMap<Multidegree, usize> {
        let mut blocks: BTreeMap<Multidegree, Vec<usize>> = BTreeMap::new();
        for (c, md) in self.terms[i].multidegrees.iter().enumerate() {
            blocks.entry(md.clone()).or_default().push(c);
        }
        let Some(d) = self.differentials.get(i) else {
            return blocks.into_keys().map(|md| (md, 0)).collect();
        };
        blocks
            .into_iter()
            .map(|(md, cols)| {
                let mut e = Echelon::new(self.p, d.rows());
                let rank = cols.iter().filter(|&&c| e.insert(d.column(c))).count();
                (md, rank)
            })
            .collect()
    }

    pub fn term_character(&self, i: usize) -> MultiPoly {
        let mut f = MultiPoly::zero(self.n);
        for md in &self.terms[i].multidegrees {
            f.add_term(md.0.clone(), 1);
        }
        f
    }

    /// Character of `im d_i`, read off multidegree blocks.
    pub fn image_character(&self, i: usize) -> MultiPoly {
        let mut f = MultiPoly::zero(self.n);
        if i < self.differentials.len() {
            for (md, r) in self.block_ranks(i) {
                f.add_term(md.0, r as i64);
            }
        }
        f
    }

    /// Character of `H^i`, from block dimensions.
    pub fn cohomology_character(&self, i: usize) -> MultiPoly {
        let term = self.term_character(i);
        let out = self.image_character(i);
        let inc = if i == 0 { MultiPoly::zero(self.n) } else { self.image_character(i - 1) };
        &(&term - &out) - &inc
    }

    /// Explicit cocycles, one per multidegree-homogeneous basis vector of `H^i`.
    pub fn cohomology_basis(&self, i: usize) -> Vec<(Multidegree, Vec<u32>)> {
        let dim = self.terms[i].dim();
        let mut blocks: BTreeMap<Multidegree, Vec<usize>> = BTreeMap::new();
        for (c, md) in self.terms[i].multidegrees.iter().enumerate() {
            blocks.entry(md.clone()).or_default().push(c);
        }
        let mut incoming: BTreeMap<Multidegree, Vec<usize>> = BTreeMap::new();
        if i > 0 {
            for (c, md) in self.terms[i - 1].multidegrees.iter().enumerate() {
                incoming.entry(md.clone()).or_default().push(c);
            }
        }
        let mut out = Vec::new();
        for (md, cols) in blocks {
            let kernel: Vec<Vec<u32>> = match self.differentials.get(i) {
                None => cols
                    .iter()
                    .map(|&c| {
                        let mut v = vec![0; dim];
                        v[c] = 1;
                        v
                    })
                    .collect(),
                Some(d) => d
                    .select_columns(&cols)
                    .kernel_basis()
                    .into_iter()
                    .map(|k| {
                        let mut v = vec![0; dim];
                        for (pos, &c) in cols.iter().enumerate() {
                            v[c] = k[pos];
                        }
                        v
                    })
                    .collect(),
            };
            let mut span = Echelon::new(self.p, dim);
            if let (Some(prev), Some(src)) = (i.checked_sub(1).map(|j| &self.differentials[j]), incoming.get(&md)) {
                for &c in src {
                    span.insert(prev.column(c));
                }
            }
            for v in kernel {
                if span.insert_dense(v.clone()) {
                    out.push((md.clone(), v));
                }
            }
        }
        out
    }
}

/// `N_m(V)`: the hook modules `S_{(m-i,1^i)}(V)` for `0 <= i < m` with the differentials
/// induced by `φ`.
#[derive(Debug, Clone)]
pub struct HookComplex {
    m: usize,
    modules: Vec<HookModule>,
    complex: ChainComplexFp,
}

/// Builds `N_m(V)` for `dim V = n`. Requires `p | m`.
pub fn build_nm(m: usize, n: usize, p: Prime) -> Result<HookComplex> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if !m.is_multiple_of(p.value() as usize) {
        return Err(Error::precondition(format!("p must divide m (m = {m}, p = {p})")));
    }
    let modules = (0..m)
        .map(|i| HookModule::build(HookShape::new((m - i) as i64, i), n, p))
        .collect::<Result<Vec<_>>>()?;
    let mut differentials = Vec::with_capacity(m.saturating_sub(1));
    for w in modules.windows(2) {
        differentials.push(descend_phi(&w[0], &w[1])?);
    }
    let terms = modules
        .iter()
        .map(|md| ComplexTerm { label: format!("S_{}", md.shape()), multidegrees: md.reduced_multidegrees() })
        .collect();
    let complex = ChainComplexFp::new(p, n, terms, differentials)?;
    Ok(HookComplex { m, modules, complex })
}

/// Matrix of `φ` on reduced coordinates, after checking it kills every relation.
fn descend_phi(src: &HookModule, tgt: &HookModule) -> Result<FpSparseMatrix> {
    let p = src.prime();
    let phi = phi_between(src.ambient(), tgt.ambient(), p, None);
    let rel_images = phi.mul(src.presentation());
    for c in 0..rel_images.cols() {
        if reduce_sparse(tgt, rel_images.column(c)).iter().any(|&v| v != 0) {
            return Err(Error::invariant(format!(
                "φ does not descend from {} to {}: relation {c} maps outside the relations",
                src.shape(),
                tgt.shape()
            )));
        }
    }
    let columns: Vec<Vec<u32>> = src.reduced_basis().iter().map(|&e| reduce_sparse(tgt, phi.column(e))).collect();
    Ok(FpSparseMatrix::from_dense_columns(p, tgt.dimension(), &columns))
}

impl HookComplex {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.complex.n
    }

    pub fn prime(&self) -> Prime {
        self.complex.p
    }

    pub fn modules(&self) -> &[HookModule] {
        &self.modules
    }

    pub fn complex(&self) -> &ChainComplexFp {
        &self.complex
    }

    pub fn term_dims(&self) -> Vec<usize> {
        self.complex.dims()
    }

    /// A copy with one differential entry changed, bypassing the `d ∘ d = 0` check.
    /// `None` when every differential is empty.
    pub fn with_corrupted_differential(&self) -> Option<HookComplex> {
        let i = self.complex.differentials.iter().position(|d| d.rows() > 0 && d.cols() > 0)?;
        let d = &self.complex.differentials[i];
        let (src, tgt) = (&self.complex.terms[i], &self.complex.terms[i + 1]);
        // Prefer an entry joining different multidegrees so torus elements see it.
        let (r, c) = (0..d.rows())
            .flat_map(|r| (0..d.cols()).map(move |c| (r, c)))
            .find(|&(r, c)| tgt.multidegrees[r] != src.multidegrees[c])
            .unwrap_or((0, 0));
        let mut corrupted = d.clone();
        corrupted.set(r, c, d.get(r, c).residue() as i64 + 1);
        let mut differentials = self.complex.differentials.clone();
        differentials[i] = corrupted;
        let complex =
            ChainComplexFp::new_unchecked(self.complex.p, self.complex.n, self.complex.terms.clone(), differentials).ok()?;
        Some(HookComplex { m: self.m, modules: self.modules.clone(), complex })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCohomology {
    pub degree: usize,
    pub shape: HookShape,
    pub term_dim: usize,
    pub kernel_dim: usize,
    pub incoming_image_dim: usize,
    pub cohomology_dim: usize,
    /// `dim S_{(m/p-i,1^i)}(V)`.
    pub expected_dim: usize,
    pub dim_matches: bool,
    pub character: MultiPoly,
    /// `F^p CH(S_{(m/p-i,1^i)}(V))`.
    pub expected_character: MultiPoly,
    pub character_matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub m: usize,
    pub n: usize,
    pub p: Prime,
    pub degrees: Vec<DegreeCohomology>,
    pub euler_terms: i64,
    pub euler_cohomology: i64,
    pub euler_character_terms: MultiPoly,
    pub euler_character_cohomology: MultiPoly,
    pub euler_consistent: bool,
    pub all_match: bool,
}

/// Computes `H^i(N_m(V))` and compares it with `F^p S_{(m/p-i,1^i)}(V)`.
pub fn cohomology(hc: &HookComplex) -> Result<CohomologyReport> {
    let c = &hc.complex;
    let (p, n, m) = (c.p, c.n, hc.m);
    let q = m / p.value() as usize;
    let ranks = c.ranks();
    let mut degrees = Vec::with_capacity(c.len());
    let mut chi_terms = MultiPoly::zero(n);
    let mut chi_coh = MultiPoly::zero(n);
    let (mut euler_terms, mut euler_coh) = (0i64, 0i64);
    for i in 0..c.len() {
        let term_dim = c.terms[i].dim();
        let kernel_dim = term_dim - c.outgoing_rank(i, &ranks);
        let incoming = c.incoming_rank(i, &ranks);
        let cohomology_dim = kernel_dim - incoming;
        let quotient_shape = HookShape::new(q as i64 - i as i64, i);
        let expected = HookModule::build(quotient_shape, n, p)?;
        let expected_character = frobenius_scale(&expected.character(), p.value());
        let character = c.cohomology_character(i);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        euler_terms += sign * term_dim as i64;
        euler_coh += sign * cohomology_dim as i64;
        chi_terms = &chi_terms + &c.term_character(i).scale(sign);
        chi_coh = &chi_coh + &character.scale(sign);
        degrees.push(DegreeCohomology {
            degree: i,
            shape: hc.modules[i].shape(),
            term_dim,
            kernel_dim,
            incoming_image_dim: incoming,
            cohomology_dim,
            expected_dim: expected.dimension(),
            dim_matches: cohomology_dim == expected.dimension(),
            character_matches: character == expected_character,
            character,
            expected_character,
        });
    }
    let euler_consistent = euler_terms == euler_coh && chi_terms == chi_coh;
    let all_match = euler_consistent && degrees.iter().all(|d| d.dim_matches && d.character_matches);
    Ok(CohomologyReport {
        m,
        n,
        p,
        degrees,
        euler_terms,
        euler_cohomology: euler_coh,
        euler_character_terms: chi_terms,
        euler_character_cohomology: chi_coh,
        euler_consistent,
        all_match,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusDegree {
    pub degree: usize,
    pub cohomology_dim: usize,
    /// `dim N_{m/p}(V)_i`.
    pub quotient_term_dim: usize,
    pub basis_character: MultiPoly,
    pub scaled_quotient_character: MultiPoly,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusComparison {
    pub m: usize,
    pub n: usize,
    pub p: Prime,
    pub degrees: Vec<FrobeniusDegree>,
    pub holds: bool,
}

/// Checks `H^i(N_m(V)) = F^p(N_{m/p}(V))_i` on dimensions and on the character of an
/// explicit multigraded cohomology basis.
pub fn frobenius_comparison(hc: &HookComplex) -> Result<FrobeniusComparison> {
    let c = &hc.complex;
    let (p, n) = (c.p, c.n);
    let q = hc.m / p.value() as usize;
    let mut degrees = Vec::with_capacity(c.len());
    for i in 0..c.len() {
        let basis = c.cohomology_basis(i);
        let mut basis_character = MultiPoly::zero(n);
        for (md, _) in &basis {
            basis_character.add_term(md.0.clone(), 1);
        }
        let quotient = HookModule::build(HookShape::new(q as i64 - i as i64, i), n, p)?;
        let scaled = frobenius_scale(&quotient.character(), p.value());
        degrees.push(FrobeniusDegree {
            degree: i,
            cohomology_dim: basis.len(),
            quotient_term_dim: quotient.dimension(),
            holds: basis.len() == quotient.dimension() && basis_character == scaled,
            basis_character,
            scaled_quotient_character: scaled,
        });
    }
    let holds = degrees.iter().all(|d| d.holds);
    Ok(FrobeniusComparison { m: hc.m, n, p, degrees, holds })
}

/// Runs [`frobenius_comparison`] on `N_m, N_{m/p}, ...` while `p` divides the index.
pub fn frobenius_tower(m: usize, n: usize, p: Prime) -> Result<Vec<FrobeniusComparison>> {
    let pv = p.value() as usize;
    let mut out = Vec::new();
    let mut k = m;
    while k > 0 && k.is_multiple_of(pv) {
        out.push(frobenius_comparison(&build_nm(k, n, p)?)?);
        k /= pv;
    }
    Ok(out)
}
