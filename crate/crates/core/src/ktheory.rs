//! A split model of `K_0`: a class is its character polynomial.
//!
//! Euler characteristics of multigraded complexes, secondary Euler characteristics,
//! and Adams operations through the alternating hook sum
//! `ψ^k[P] = Σ_{i=0}^{k-1} (-1)^i [S_{(k-i,1^i)} P]`.

use serde::{Deserialize, Serialize};

use crate::characters::{alternating_hook_sum, frobenius_scale, power_sum, MultiPoly};
use crate::complexes::{build_nm, ChainComplexFp};
use crate::error::{Error, Result};
use crate::ffield::Prime;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K0Class {
    pub n: usize,
    pub value: MultiPoly,
}

impl K0Class {
    pub fn from_character(value: MultiPoly) -> Self {
        K0Class { n: value.num_vars(), value }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_character(MultiPoly::zero(n))
    }

    /// The line class with character `v^exponents`.
    pub fn line(exponents: Vec<u32>) -> Self {
        Self::from_character(MultiPoly::monomial(exponents, 1))
    }

    /// `[V] = v_1 + ⋯ + v_n`, the split class of rank `n`.
    pub fn split(n: usize) -> Self {
        Self::from_character(power_sum(1, n))
    }

    /// `v_lo + ⋯ + v_hi` inside `n` variables (1-based, inclusive).
    pub fn split_range(n: usize, lo: usize, hi: usize) -> Self {
        let mut f = MultiPoly::zero(n);
        for k in lo..=hi {
            let mut e = vec![0; n];
            e[k - 1] = 1;
            f.add_term(e, 1);
        }
        Self::from_character(f)
    }

    /// Virtual rank: the character evaluated at `v = (1, …, 1)`.
    pub fn rank(&self) -> i64 {
        self.value.coefficient_sum()
    }

    pub fn add(&self, other: &K0Class) -> K0Class {
        Self::from_character(&self.value + &other.value)
    }

    pub fn sub(&self, other: &K0Class) -> K0Class {
        Self::from_character(&self.value - &other.value)
    }

    pub fn mul(&self, other: &K0Class) -> K0Class {
        Self::from_character(&self.value * &other.value)
    }
}

/// `χ(F) = Σ (-1)^i [F_i]`.
pub fn euler_characteristic(c: &ChainComplexFp) -> K0Class {
    let mut acc = MultiPoly::zero(c.n());
    for i in 0..c.len() {
        let t = c.term_character(i);
        acc = if i % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    K0Class::from_character(acc)
}

/// `Σ (-1)^i [H^i(F)]`, with `H^i` read off an explicit multigraded cohomology basis.
pub fn euler_characteristic_from_cohomology(c: &ChainComplexFp) -> K0Class {
    let mut acc = MultiPoly::zero(c.n());
    for i in 0..c.len() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for (md, _) in c.cohomology_basis(i) {
            acc.add_term(md.0, sign);
        }
    }
    K0Class::from_character(acc)
}

/// `χ'(F) = Σ (-1)^i [im d_i]`.
pub fn secondary_euler_characteristic(c: &ChainComplexFp) -> K0Class {
    let mut acc = MultiPoly::zero(c.n());
    for i in 0..c.differentials().len() {
        let im = c.image_character(i);
        acc = if i % 2 == 0 { &acc + &im } else { &acc - &im };
    }
    K0Class::from_character(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerData {
    pub chi: K0Class,
    pub chi_from_cohomology: K0Class,
    pub chi_prime: K0Class,
    /// `χ` via terms equals `χ` via cohomology.
    pub consistent: bool,
    /// Per degree: `[F_i] = [ker d_i] + [im d_i]` and `[ker d_i] = [H^i] + [im d_{i-1}]`.
    pub bookkeeping_holds: bool,
}

pub fn euler_data(c: &ChainComplexFp) -> EulerData {
    let chi = euler_characteristic(c);
    let chi_from_cohomology = euler_characteristic_from_cohomology(c);
    let chi_prime = secondary_euler_characteristic(c);
    let n = c.n();
    let bookkeeping_holds = (0..c.len()).all(|i| {
        let term = c.term_character(i);
        let im = c.image_character(i);
        let ker = match c.differentials().get(i) {
            Some(d) => {
                let mut f = MultiPoly::zero(n);
                let src = &c.terms()[i].multidegrees;
                for v in d.kernel_basis() {
                    let lead = v.iter().position(|&x| x != 0).expect("kernel vectors are nonzero");
                    f.add_term(src[lead].0.clone(), 1);
                }
                f
            }
            None => term.clone(),
        };
        let mut h = MultiPoly::zero(n);
        for (md, _) in c.cohomology_basis(i) {
            h.add_term(md.0, 1);
        }
        let im_prev = if i == 0 { MultiPoly::zero(n) } else { c.image_character(i - 1) };
        term == &ker + &im && ker == &h + &im_prev
    });
    EulerData { consistent: chi == chi_from_cohomology, chi, chi_from_cohomology, chi_prime, bookkeeping_holds }
}

fn adams_effective(k: u32, lines: &[Vec<u32>], n: usize) -> Result<MultiPoly> {
    if lines.is_empty() {
        return Ok(MultiPoly::zero(n));
    }
    let hooks = alternating_hook_sum(k, lines.len())?;
    let images: Vec<MultiPoly> = lines.iter().map(|e| MultiPoly::monomial(e.clone(), 1)).collect();
    Ok(hooks.substitute(&images))
}

/// `ψ^k` on a virtual split class, computed as the alternating hook sum of its positive
/// and negative parts, each a sum of line classes.
pub fn adams_grayson(k: i64, cls: &K0Class) -> Result<K0Class> {
    if k <= 0 {
        return Err(Error::Unsupported(format!("Adams operation ψ^{k}: only k >= 1 is modelled")));
    }
    let k = u32::try_from(k).map_err(|_| Error::InvalidArgument(format!("k = {k} is too large")))?;
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for (e, &c) in cls.value.terms_map() {
        let side = if c > 0 { &mut pos } else { &mut neg };
        for _ in 0..c.unsigned_abs() {
            side.push(e.clone());
        }
    }
    let plus = adams_effective(k, &pos, cls.n)?;
    let minus = adams_effective(k, &neg, cls.n)?;
    Ok(K0Class::from_character(&plus - &minus))
}

/// `ψ^k ∘ ψ^l = ψ^{kl}` on `cls`.
pub fn adams_composition_check(k: i64, l: i64, cls: &K0Class) -> Result<bool> {
    let lhs = adams_grayson(k, &adams_grayson(l, cls)?)?;
    let rhs = adams_grayson(k * l, cls)?;
    Ok(lhs == rhs)
}

/// `ψ^k(a + b) = ψ^k a + ψ^k b` and `ψ^k(ab) = ψ^k a · ψ^k b`.
pub fn ring_hom_check(k: i64, a: &K0Class, b: &K0Class) -> Result<bool> {
    let (pa, pb) = (adams_grayson(k, a)?, adams_grayson(k, b)?);
    let additive = adams_grayson(k, &a.add(b))? == pa.add(&pb);
    let multiplicative = adams_grayson(k, &a.mul(b))? == pa.mul(&pb);
    Ok(additive && multiplicative)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusAdamsReport {
    pub m: usize,
    pub n: usize,
    pub p: Prime,
    /// `Σ (-1)^i s_{(m-i,1^i)} = p_m`.
    pub direct: bool,
    /// `χ(N_m(V))` computed from cohomology equals `p_m`.
    pub via_cohomology: bool,
    /// `F^p ψ^{m/p}[V] = ψ^m[V]`.
    pub inductive: bool,
    pub holds: bool,
}

/// `ψ^m[V] = [F^m V]` in the split model, checked three ways.
pub fn frobenius_adams_check(m: usize, n: usize, p: Prime) -> Result<FrobeniusAdamsReport> {
    let target = power_sum(m as u32, n);
    let v = K0Class::split(n);
    let psi_m = adams_grayson(m as i64, &v)?;
    let direct = psi_m.value == target;
    let hc = build_nm(m, n, p)?;
    let via_cohomology = euler_characteristic_from_cohomology(hc.complex()).value == target;
    let q = m / p.value() as usize;
    let inductive = frobenius_scale(&adams_grayson(q as i64, &v)?.value, p.value()) == psi_m.value;
    Ok(FrobeniusAdamsReport { m, n, p, direct, via_cohomology, inductive, holds: direct && via_cohomology && inductive })
}
