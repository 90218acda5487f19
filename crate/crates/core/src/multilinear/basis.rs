use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ffield::binomial;
use crate::limits;

/// The basis tensor `v_I ⊗ v^α` of `Λ^i V ⊗ S_j V`.
///
/// `index_set` holds 1-based variable indices in strictly increasing order;
/// `exponents[k]` is the exponent of `v_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisTensor {
    pub index_set: Vec<usize>,
    pub exponents: Vec<u32>,
}

impl BasisTensor {
    pub fn new(index_set: Vec<usize>, exponents: Vec<u32>) -> Self {
        debug_assert!(index_set.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(index_set.iter().all(|&k| k >= 1 && k <= exponents.len()));
        BasisTensor { index_set, exponents }
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.index_set.binary_search(&k).is_ok()
    }

    pub fn total_degree(&self) -> u32 {
        self.index_set.len() as u32 + self.exponents.iter().sum::<u32>()
    }
}

impl fmt::Display for BasisTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index_set.is_empty() {
            write!(f, "1")?;
        } else {
            let wedge: Vec<String> = self.index_set.iter().map(|k| format!("v{k}")).collect();
            write!(f, "{}", wedge.join("^"))?;
        }
        write!(f, " ⊗ ")?;
        let mono: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| if e == 1 { format!("v{}", k + 1) } else { format!("v{}^{}", k + 1, e) })
            .collect();
        if mono.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", mono.join("*"))
        }
    }
}

/// Torus weight of a basis tensor, as an exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Multidegree(pub Vec<u32>);

impl Multidegree {
    pub fn zero(n: usize) -> Self {
        Multidegree(vec![0; n])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_divisible_by(&self, p: u32) -> bool {
        self.0.iter().all(|&e| e % p == 0)
    }

    pub fn scaled(&self, factor: u32) -> Multidegree {
        Multidegree(self.0.iter().map(|&e| e * factor).collect())
    }
}

/// `mdeg(v_I ⊗ v^α) = α + indicator(I)`.
pub fn multidegree(t: &BasisTensor) -> Multidegree {
    let mut exps = t.exponents.clone();
    for &k in &t.index_set {
        exps[k - 1] += 1;
    }
    Multidegree(exps)
}

/// The canonical ordered basis of `Λ^i V ⊗ S_j V`, possibly restricted to index sets
/// avoiding one variable (the `Λ^i V' ⊗ S_j V` spaces with `V' = V / k v_ℓ`).
///
/// Order: index sets lexicographically increasing, then exponent vectors in
/// decreasing lexicographic order (so `v_1` comes before `v_2`).
#[derive(Debug, Clone)]
pub struct TensorSpaceBasis {
    n: usize,
    wedge_degree: usize,
    sym_degree: usize,
    avoided: Option<usize>,
    elements: Vec<BasisTensor>,
    lookup: HashMap<BasisTensor, usize>,
}

impl TensorSpaceBasis {
    pub fn empty(n: usize, wedge_degree: usize, sym_degree: usize) -> Self {
        TensorSpaceBasis {
            n,
            wedge_degree,
            sym_degree,
            avoided: None,
            elements: Vec::new(),
            lookup: HashMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn wedge_degree(&self) -> usize {
        self.wedge_degree
    }

    pub fn sym_degree(&self) -> usize {
        self.sym_degree
    }

    /// The variable excluded from index sets, if any (1-based).
    pub fn avoided(&self) -> Option<usize> {
        self.avoided
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasisTensor] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &BasisTensor {
        &self.elements[i]
    }

    pub fn index_of(&self, t: &BasisTensor) -> Option<usize> {
        self.lookup.get(t).copied()
    }

    pub fn multidegree(&self, i: usize) -> Multidegree {
        multidegree(&self.elements[i])
    }

    pub fn multidegrees(&self) -> Vec<Multidegree> {
        self.elements.iter().map(multidegree).collect()
    }

    fn from_elements(
        n: usize,
        wedge_degree: usize,
        sym_degree: usize,
        avoided: Option<usize>,
        elements: Vec<BasisTensor>,
    ) -> Self {
        let lookup = elements.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        TensorSpaceBasis { n, wedge_degree, sym_degree, avoided, elements, lookup }
    }
}

/// Dimension of `Λ^i V ⊗ S_j V` for `dim V = n`.
pub fn tensor_space_dim(n: usize, i: usize, j: usize) -> u64 {
    if n == 0 {
        return u64::from(i == 0 && j == 0);
    }
    binomial(n as u64, i as i64).saturating_mul(binomial((n + j - 1) as u64, j as i64))
}

/// Enumerates the canonical basis of `Λ^i V ⊗ S_j V`. Empty when `i > n`.
pub fn enumerate_basis(n: usize, i: usize, j: usize) -> Result<TensorSpaceBasis> {
    limits::check_dim(tensor_space_dim(n, i, j))?;
    Ok(build(n, i, j, None))
}

/// Like [`enumerate_basis`], but only index sets not containing `avoid` (1-based).
pub fn enumerate_basis_avoiding(n: usize, i: usize, j: usize, avoid: usize) -> Result<TensorSpaceBasis> {
    assert!(avoid >= 1 && avoid <= n, "avoided index {avoid} outside 1..={n}");
    limits::check_dim(tensor_space_dim(n - 1, i, 0).saturating_mul(tensor_space_dim(n, 0, j)))?;
    Ok(build(n, i, j, Some(avoid)))
}

/// Basis for possibly negative degrees; negative degrees give the zero space.
pub(crate) fn space(n: usize, i: isize, j: isize) -> Result<TensorSpaceBasis> {
    if i < 0 || j < 0 {
        return Ok(TensorSpaceBasis::empty(n, i.max(0) as usize, j.max(0) as usize));
    }
    enumerate_basis(n, i as usize, j as usize)
}

fn build(n: usize, i: usize, j: usize, avoided: Option<usize>) -> TensorSpaceBasis {
    let subsets: Vec<Vec<usize>> = subsets_lex(n, i).into_iter().filter(|s| avoided.is_none_or(|a| !s.contains(&a))).collect();
    let monomials = exponents_desc(n, j);
    let mut elements = Vec::with_capacity(subsets.len() * monomials.len());
    for s in &subsets {
        for alpha in &monomials {
            elements.push(BasisTensor { index_set: s.clone(), exponents: alpha.clone() });
        }
    }
    TensorSpaceBasis::from_elements(n, i, j, avoided, elements)
}

/// `i`-subsets of `{1..n}` in lexicographic order.
pub(crate) fn subsets_lex(n: usize, i: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in start..=n {
            if n - k + 1 < left {
                break;
            }
            cur.push(k);
            go(k + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if i <= n {
        go(1, n, i, &mut Vec::new(), &mut out);
    }
    out
}

/// Exponent vectors of length `n` summing to `j`, decreasing lexicographically.
pub(crate) fn exponents_desc(n: usize, j: usize) -> Vec<Vec<u32>> {
    fn go(pos: usize, n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            go(pos + 1, n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if j == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(0, n, j as u32, &mut Vec::new(), &mut out);
    out
}
