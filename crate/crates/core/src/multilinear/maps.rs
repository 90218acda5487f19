//! The structural maps between the spaces `Λ^i V ⊗ S_j V`, as matrices in the
//! canonical bases.

use super::basis::{enumerate_basis, BasisTensor, TensorSpaceBasis};
use super::matrix::FpSparseMatrix;
use crate::error::Result;
use crate::ffield::Prime;

/// `v_I ∧ v_k` as `(sign, J)` with `J = I ∪ {k}` sorted, or `None` when `k ∈ I`.
///
/// The sign is `(-1)^{#{l ∈ I : l > k}}`, from moving `v_k` into sorted position.
pub fn wedge_right(index_set: &[usize], k: usize) -> Option<(i64, Vec<usize>)> {
    let pos = match index_set.binary_search(&k) {
        Ok(_) => return None,
        Err(pos) => pos,
    };
    let greater = index_set.len() - pos;
    let mut out = Vec::with_capacity(index_set.len() + 1);
    out.extend_from_slice(&index_set[..pos]);
    out.push(k);
    out.extend_from_slice(&index_set[pos..]);
    Some((if greater.is_multiple_of(2) { 1 } else { -1 }, out))
}

fn remove_at(index_set: &[usize], pos: usize) -> Vec<usize> {
    let mut out = index_set.to_vec();
    out.remove(pos);
    out
}

fn lookup(tgt: &TensorSpaceBasis, t: &BasisTensor) -> usize {
    tgt.index_of(t).unwrap_or_else(|| panic!("{t} is not in the target basis"))
}

/// `φ(v_I ⊗ v^α) = Σ_k α_k v_I ∧ v_k ⊗ v^{α-ε_k}`, skipping `k = skip` when given.
///
/// With `skip = Some(ℓ)` this is the differential of the splitting complex, which only
/// moves variables of `V' = V / k v_ℓ` into the exterior factor.
pub fn phi_between(src: &TensorSpaceBasis, tgt: &TensorSpaceBasis, p: Prime, skip: Option<usize>) -> FpSparseMatrix {
    let mut triplets = Vec::new();
    for (c, t) in src.elements().iter().enumerate() {
        for k in 1..=t.n() {
            let a = t.exponents[k - 1];
            if a == 0 || Some(k) == skip {
                continue;
            }
            let Some((sign, set)) = wedge_right(&t.index_set, k) else { continue };
            let mut exps = t.exponents.clone();
            exps[k - 1] -= 1;
            let r = lookup(tgt, &BasisTensor { index_set: set, exponents: exps });
            triplets.push((r, c, sign * a as i64));
        }
    }
    FpSparseMatrix::from_triplets(p, tgt.len(), src.len(), triplets)
}

/// Which convention fixes the sign of `v_{I \ k}` when contracting `v_I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractionSign {
    /// `(-1)^{pos(k) - 1}` with `pos` the 1-based position of `k` in `I`.
    Left,
    /// `(-1)^{#{l ∈ I : l > k}}`, the adjoint of [`wedge_right`].
    Right,
}

/// `v_I ⊗ v^α ↦ Σ_{k ∈ I} sgn(k) v_{I \ k} ⊗ v^{α+ε_k}`.
pub fn contraction_between(src: &TensorSpaceBasis, tgt: &TensorSpaceBasis, p: Prime, sign: ContractionSign) -> FpSparseMatrix {
    let mut triplets = Vec::new();
    for (c, t) in src.elements().iter().enumerate() {
        let len = t.index_set.len();
        for (pos, &k) in t.index_set.iter().enumerate() {
            let flips = match sign {
                ContractionSign::Left => pos,
                ContractionSign::Right => len - 1 - pos,
            };
            let mut exps = t.exponents.clone();
            exps[k - 1] += 1;
            let r = lookup(tgt, &BasisTensor { index_set: remove_at(&t.index_set, pos), exponents: exps });
            triplets.push((r, c, if flips % 2 == 0 { 1 } else { -1 }));
        }
    }
    FpSparseMatrix::from_triplets(p, tgt.len(), src.len(), triplets)
}

/// The tautological Koszul map `κ: Λ^b V ⊗ S_a V → Λ^{b-1} V ⊗ S_{a+1} V` between given bases.
pub fn kappa_between(src: &TensorSpaceBasis, tgt: &TensorSpaceBasis, p: Prime) -> FpSparseMatrix {
    contraction_between(src, tgt, p, ContractionSign::Left)
}

/// `φ: Λ^i V ⊗ S_j V → Λ^{i+1} V ⊗ S_{j-1} V`.
pub fn phi_matrix(n: usize, i: usize, j: usize, p: Prime) -> Result<FpSparseMatrix> {
    let src = enumerate_basis(n, i, j)?;
    let tgt = match j {
        0 => TensorSpaceBasis::empty(n, i + 1, 0),
        _ => enumerate_basis(n, i + 1, j - 1)?,
    };
    Ok(phi_between(&src, &tgt, p, None))
}

/// `κ_{a,b}: Λ^b V ⊗ S_a V → Λ^{b-1} V ⊗ S_{a+1} V`.
pub fn kappa_matrix(n: usize, b: usize, a: usize, p: Prime) -> Result<FpSparseMatrix> {
    let src = enumerate_basis(n, b, a)?;
    let tgt = match b {
        0 => TensorSpaceBasis::empty(n, 0, a + 1),
        _ => enumerate_basis(n, b - 1, a + 1)?,
    };
    Ok(kappa_between(&src, &tgt, p))
}

/// Target of `η'` for a source tensor: `v_I ⊗ v^α ↦ v_I ⊗ v^{pα + (p-1)·1_I}`.
pub fn eta_prime_image(t: &BasisTensor, p: u32) -> BasisTensor {
    let mut exps: Vec<u32> = t.exponents.iter().map(|&e| e * p).collect();
    for &k in &t.index_set {
        exps[k - 1] += p - 1;
    }
    BasisTensor { index_set: t.index_set.clone(), exponents: exps }
}

pub fn eta_prime_between(src: &TensorSpaceBasis, tgt: &TensorSpaceBasis, p: Prime) -> FpSparseMatrix {
    let triplets = src
        .elements()
        .iter()
        .enumerate()
        .map(|(c, t)| (lookup(tgt, &eta_prime_image(t, p.value())), c, 1));
    FpSparseMatrix::from_triplets(p, tgt.len(), src.len(), triplets)
}

/// `η': Λ^i V ⊗ S_j V → Λ^i V ⊗ S_{pj + (p-1)i} V`, the 0/1 injection used to compare
/// `S_{(j,1^i)}` with the Frobenius part of `S_{(p(i+j)-i,1^i)}`.
pub fn eta_prime_matrix(n: usize, i: usize, j: usize, p: Prime) -> Result<FpSparseMatrix> {
    let pv = p.value() as usize;
    let src = enumerate_basis(n, i, j)?;
    let tgt = enumerate_basis(n, i, pv * j + (pv - 1) * i)?;
    Ok(eta_prime_between(&src, &tgt, p))
}

/// Formal Frobenius power `F^m: S_i V → S_{im} V`, `v^α ↦ v^{mα}`.
pub fn frobenius_power_map(n: usize, i: usize, m: usize, p: Prime) -> Result<FpSparseMatrix> {
    assert!(m >= 1, "Frobenius power needs m >= 1");
    let src = enumerate_basis(n, 0, i)?;
    let tgt = enumerate_basis(n, 0, i * m)?;
    let triplets = src.elements().iter().enumerate().map(|(c, t)| {
        let image = BasisTensor { index_set: Vec::new(), exponents: t.exponents.iter().map(|&e| e * m as u32).collect() };
        (lookup(&tgt, &image), c, 1)
    });
    Ok(FpSparseMatrix::from_triplets(p, tgt.len(), src.len(), triplets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::basis::multidegree;

    fn f(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn t(i: &[usize], a: &[u32]) -> BasisTensor {
        BasisTensor::new(i.to_vec(), a.to_vec())
    }

    fn column_of(m: &FpSparseMatrix, src: &TensorSpaceBasis, tgt: &TensorSpaceBasis, x: &BasisTensor) -> Vec<(BasisTensor, u32)> {
        let c = src.index_of(x).unwrap();
        m.column(c).iter().map(|&(r, v)| (tgt.get(r).clone(), v)).collect()
    }

    #[test]
    fn phi_small_cases() {
        let p = f(5);
        let src = enumerate_basis(2, 1, 1).unwrap();
        let tgt = enumerate_basis(2, 2, 0).unwrap();
        let m = phi_between(&src, &tgt, p, None);
        assert_eq!(column_of(&m, &src, &tgt, &t(&[1], &[0, 1])), vec![(t(&[1, 2], &[0, 0]), 1)]);
        assert!(column_of(&m, &src, &tgt, &t(&[1], &[1, 0])).is_empty());

        let p2 = f(2);
        let src = enumerate_basis(2, 0, 2).unwrap();
        let tgt = enumerate_basis(2, 1, 1).unwrap();
        let m = phi_between(&src, &tgt, p2, None);
        assert!(column_of(&m, &src, &tgt, &t(&[], &[2, 0])).is_empty());
    }

    #[test]
    fn phi_sign_convention() {
        // φ(v2 ⊗ v1 v3) = -v1∧v2 ⊗ v3 + v2∧v3 ⊗ v1
        let p = f(7);
        let src = enumerate_basis(3, 1, 2).unwrap();
        let tgt = enumerate_basis(3, 2, 1).unwrap();
        let m = phi_between(&src, &tgt, p, None);
        let mut col = column_of(&m, &src, &tgt, &t(&[2], &[1, 0, 1]));
        col.sort();
        let mut expected = vec![(t(&[1, 2], &[0, 0, 1]), 6), (t(&[2, 3], &[1, 0, 0]), 1)];
        expected.sort();
        assert_eq!(col, expected);
    }

    #[test]
    fn kappa_small_cases() {
        let p = f(5);
        let src = enumerate_basis(2, 2, 0).unwrap();
        let tgt = enumerate_basis(2, 1, 1).unwrap();
        let m = kappa_between(&src, &tgt, p);
        let mut col = column_of(&m, &src, &tgt, &t(&[1, 2], &[0, 0]));
        col.sort();
        // v2 ⊗ v1 - v1 ⊗ v2
        let mut expected = vec![(t(&[2], &[1, 0]), 1), (t(&[1], &[0, 1]), 4)];
        expected.sort();
        assert_eq!(col, expected);

        let src = enumerate_basis(1, 1, 1).unwrap();
        let tgt = enumerate_basis(1, 0, 2).unwrap();
        let m = kappa_between(&src, &tgt, p);
        assert_eq!(column_of(&m, &src, &tgt, &t(&[1], &[1])), vec![(t(&[], &[2]), 1)]);
    }

    #[test]
    fn complexes_square_to_zero() {
        for p in [2, 3, 5] {
            for n in 1..=4 {
                for i in 0..=n {
                    for j in 0..=5 {
                        if j >= 2 {
                            let d1 = phi_matrix(n, i, j, f(p)).unwrap();
                            let d2 = phi_matrix(n, i + 1, j - 1, f(p)).unwrap();
                            assert!(d2.mul(&d1).is_zero(), "phi^2 n={n} i={i} j={j} p={p}");
                        }
                        if i >= 2 {
                            let k1 = kappa_matrix(n, i, j, f(p)).unwrap();
                            let k2 = kappa_matrix(n, i - 1, j + 1, f(p)).unwrap();
                            assert!(k2.mul(&k1).is_zero(), "kappa^2 n={n} b={i} a={j} p={p}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn maps_preserve_multidegree() {
        let p = f(3);
        for n in 1..=4 {
            for i in 0..n {
                for j in 1..=4 {
                    let src = enumerate_basis(n, i, j).unwrap();
                    let tgt = enumerate_basis(n, i + 1, j - 1).unwrap();
                    let m = phi_between(&src, &tgt, p, None);
                    for (r, c, _) in m.entries() {
                        assert_eq!(multidegree(tgt.get(r)), multidegree(src.get(c)));
                    }
                    let k = kappa_between(&tgt, &src, p);
                    for (r, c, _) in k.entries() {
                        assert_eq!(multidegree(src.get(r)), multidegree(tgt.get(c)));
                    }
                }
            }
        }
    }

    #[test]
    fn kappa_phi_anticommute_to_degree_with_right_contraction() {
        // φκ + κφ = (|α| + |I|)·id on Λ^b ⊗ S_a when κ uses the right convention.
        let p = f(7);
        let n = 3;
        for b in 1..=2usize {
            for a in 1..=3usize {
                let mid = enumerate_basis(n, b, a).unwrap();
                let down = enumerate_basis(n, b - 1, a + 1).unwrap();
                let up = enumerate_basis(n, b + 1, a - 1).unwrap();
                let k_mid = contraction_between(&mid, &down, p, ContractionSign::Right);
                let phi_down = phi_between(&down, &mid, p, None);
                let phi_mid = phi_between(&mid, &up, p, None);
                let k_up = contraction_between(&up, &mid, p, ContractionSign::Right);
                let lhs = phi_down.mul(&k_mid);
                let rhs = k_up.mul(&phi_mid);
                let total = (a + b) as i64;
                for c in 0..mid.len() {
                    for r in 0..mid.len() {
                        let v = (lhs.get(r, c).residue() + rhs.get(r, c).residue()) % 7;
                        let expected = if r == c { p.reduce(total) } else { 0 };
                        assert_eq!(v, expected);
                    }
                }
            }
        }
    }

    #[test]
    fn eta_prime_examples() {
        let p = f(2);
        let src = enumerate_basis(2, 1, 1).unwrap();
        let tgt = enumerate_basis(2, 1, 3).unwrap();
        let m = eta_prime_between(&src, &tgt, p);
        assert_eq!(column_of(&m, &src, &tgt, &t(&[2], &[1, 0])), vec![(t(&[2], &[2, 1]), 1)]);
        let m0 = eta_prime_matrix(2, 0, 2, p).unwrap();
        let s2 = enumerate_basis(2, 0, 2).unwrap();
        let s4 = enumerate_basis(2, 0, 4).unwrap();
        assert_eq!(column_of(&m0, &s2, &s4, &t(&[], &[2, 0])), vec![(t(&[], &[4, 0]), 1)]);
        for c in 0..m.cols() {
            assert_eq!(m.column(c).len(), 1);
            assert_eq!(m.column(c)[0].1, 1);
        }
        assert_eq!(m.rank(), m.cols());
    }

    #[test]
    fn frobenius_power_examples() {
        let p = f(5);
        let m = frobenius_power_map(2, 2, 4, p).unwrap();
        let s8 = enumerate_basis(2, 0, 8).unwrap();
        let mut image: Vec<Vec<u32>> = (0..m.cols()).map(|c| s8.get(m.column(c)[0].0).exponents.clone()).collect();
        image.sort();
        assert_eq!(image, vec![vec![0, 8], vec![4, 4], vec![8, 0]]);
        assert_eq!(frobenius_power_map(3, 2, 1, p).unwrap(), FpSparseMatrix::identity(p, 6));
        let sq = frobenius_power_map(3, 1, 2, p).unwrap();
        assert_eq!(sq.cols(), 3);
        assert_eq!(sq.rank(), 3);
    }
}
