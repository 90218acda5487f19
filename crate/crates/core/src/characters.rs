//! Integer polynomials in `v_1..v_n`: characters, Schur and power-sum polynomials, and
//! the alternating hook-sum identity.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::Prime;
use crate::schur::{HookModule, HookShape};

/// Sparse integer polynomial keyed by exponent vector. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PolyRepr", try_from = "PolyRepr")]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    n: usize,
    terms: Vec<(Vec<u32>, i64)>,
}

impl From<MultiPoly> for PolyRepr {
    fn from(f: MultiPoly) -> Self {
        PolyRepr { n: f.n, terms: f.graded_terms().map(|(e, c)| (e.to_vec(), c)).collect() }
    }
}

impl TryFrom<PolyRepr> for MultiPoly {
    type Error = Error;
    fn try_from(r: PolyRepr) -> Result<Self> {
        let mut f = MultiPoly::zero(r.n);
        for (e, c) in r.terms {
            if e.len() != r.n {
                return Err(Error::InvalidArgument(format!("exponent vector {e:?} has length != {}", r.n)));
            }
            f.add_term(e, c);
        }
        Ok(f)
    }
}

/// Graded-lex comparison, larger monomials first.
fn grlex_desc(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        MultiPoly::monomial(vec![0; n], 1)
    }

    pub fn monomial(exponents: Vec<u32>, coeff: i64) -> Self {
        let mut f = MultiPoly::zero(exponents.len());
        f.add_term(exponents, coeff);
        f
    }

    /// The variable `v_k`, 1-based.
    pub fn variable(n: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= n);
        let mut e = vec![0; n];
        e[k - 1] = 1;
        MultiPoly::monomial(e, 1)
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponents: &[u32]) -> i64 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, coeff: i64) {
        assert_eq!(exponents.len(), self.n, "exponent vector length mismatch");
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exponents);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = o.get().checked_add(coeff).expect("coefficient overflow");
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    /// Terms in graded-lex order, largest first.
    pub fn graded_terms(&self) -> impl Iterator<Item = (&[u32], i64)> {
        let mut v: Vec<(&[u32], i64)> = self.terms.iter().map(|(e, &c)| (e.as_slice(), c)).collect();
        v.sort_by(|a, b| grlex_desc(a.0, b.0));
        v.into_iter()
    }

    pub fn scale(&self, c: i64) -> MultiPoly {
        let mut out = MultiPoly::zero(self.n);
        for (e, &v) in &self.terms {
            out.add_term(e.clone(), v.checked_mul(c).expect("coefficient overflow"));
        }
        out
    }

    /// Multiplies every exponent vector by `factor`.
    pub fn frobenius_scale(&self, factor: u32) -> MultiPoly {
        let mut out = MultiPoly::zero(self.n);
        for (e, &v) in &self.terms {
            out.add_term(e.iter().map(|&x| x * factor).collect(), v);
        }
        out
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `v_k := images[k-1]`. All images must share a variable count.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.n);
        let target_n = images.first().map_or(0, |g| g.n);
        let mut out = MultiPoly::zero(target_n);
        for (e, &c) in &self.terms {
            let mut term = MultiPoly::one(target_n).scale(c);
            for (k, &ek) in e.iter().enumerate() {
                if ek > 0 {
                    term = &term * &images[k].pow(ek);
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Swaps variables `v_a` and `v_b` (1-based).
    pub fn swap_variables(&self, a: usize, b: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.n);
        for (e, &c) in &self.terms {
            let mut e = e.clone();
            e.swap(a - 1, b - 1);
            out.add_term(e, c);
        }
        out
    }

    /// Sum of `coeff * monomial(1,...,1)`: the dimension when `self` is a character.
    pub fn coefficient_sum(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Embeds into a ring with more variables (new variables appended).
    pub fn with_vars(&self, n: usize) -> MultiPoly {
        assert!(n >= self.n);
        let mut out = MultiPoly::zero(n);
        for (e, &c) in &self.terms {
            let mut e = e.clone();
            e.resize(n, 0);
            out.add_term(e, c);
        }
        out
    }

    pub(crate) fn terms_map(&self) -> &BTreeMap<Vec<u32>, i64> {
        &self.terms
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(-1)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = MultiPoly::zero(self.n);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.checked_mul(cb).expect("coefficient overflow"));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    /// `c*v1^a1*v2^a2*...`, graded-lex descending; unit coefficients, zero exponents and
    /// `^1` are omitted; terms are joined by ` + ` / ` - `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.graded_terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match idx {
                0 if c < 0 => write!(f, "-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            let mag = c.unsigned_abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(k, &x)| if x == 1 { format!("v{}", k + 1) } else { format!("v{}^{}", k + 1, x) })
                .collect();
            match (vars.is_empty(), mag) {
                (true, _) => write!(f, "{mag}")?,
                (false, 1) => write!(f, "{}", vars.join("*"))?,
                (false, _) => write!(f, "{mag}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// The power sum `p_m = v_1^m + ⋯ + v_n^m`.
pub fn power_sum(m: u32, n: usize) -> MultiPoly {
    assert!(m >= 1, "power sums start at m = 1");
    let mut f = MultiPoly::zero(n);
    for k in 0..n {
        let mut e = vec![0; n];
        e[k] = m;
        f.add_term(e, 1);
    }
    f
}

pub fn frobenius_scale(f: &MultiPoly, p: u32) -> MultiPoly {
    f.frobenius_scale(p)
}

/// True iff `f` is invariant under every adjacent transposition of variables.
pub fn symmetry_check(f: &MultiPoly) -> bool {
    (1..f.num_vars()).all(|k| f.swap_variables(k, k + 1) == *f)
}

/// Prime at which hook characters are computed; they do not depend on it.
pub const REFERENCE_PRIME: u32 = 2;

/// The Schur polynomial `s_{(a,1^b)}(v_1..v_n)`, read off a hook module built over
/// `F_2`. Zero for `a <= 0`.
pub fn hook_schur_polynomial(a: i64, b: usize, n: usize) -> Result<MultiPoly> {
    let p = Prime::new(REFERENCE_PRIME)?;
    Ok(HookModule::build(HookShape::new(a, b), n, p)?.character())
}

/// `Σ_{i=0}^{m-1} (-1)^i s_{(m-i,1^i)}` in `n` variables.
pub fn alternating_hook_sum(m: u32, n: usize) -> Result<MultiPoly> {
    let mut acc = MultiPoly::zero(n);
    for i in 0..m as usize {
        let s = hook_schur_polynomial(m as i64 - i as i64, i, n)?;
        acc = if i % 2 == 0 { &acc + &s } else { &acc - &s };
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub m: u32,
    pub n: usize,
    /// `Σ (-1)^i s_{(m-i,1^i)} - p_m`.
    pub residual: MultiPoly,
    pub holds: bool,
}

/// Checks `p_m = Σ_{i=0}^{m-1} (-1)^i s_{(m-i,1^i)}` exactly.
pub fn verify_power_sum_identity(m: u32, n: usize) -> Result<IdentityReport> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let residual = &alternating_hook_sum(m, n)? - &power_sum(m, n);
    Ok(IdentityReport { m, n, holds: residual.is_zero(), residual })
}
