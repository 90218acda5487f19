//! Test oracles that share no code with the library.
#![allow(dead_code)]

use std::collections::BTreeMap;

use hookschur::characters::MultiPoly;
use num_bigint::BigUint;

pub type Poly = BTreeMap<Vec<u32>, i64>;

/// Contents of all semistandard fillings of the hook `(a,1^b)` with entries `1..=n`,
/// found by trying every filling of the `a + b` cells.
///
/// Cell 0 is the corner, cells `1..a` the rest of the first row, cells `a..a+b` the rest
/// of the first column.
pub fn hook_tableau_contents(a: usize, b: usize, n: usize) -> Vec<Vec<u32>> {
    if a == 0 {
        return Vec::new();
    }
    let cells = a + b;
    let mut out = Vec::new();
    let mut filling = vec![1usize; cells];
    loop {
        let row_ok = (1..a).all(|k| filling[k - 1] <= filling[k]);
        let col_ok = (0..b).all(|k| {
            let above = if k == 0 { filling[0] } else { filling[a + k - 1] };
            above < filling[a + k]
        });
        if row_ok && col_ok {
            let mut content = vec![0u32; n];
            for &v in &filling {
                content[v - 1] += 1;
            }
            out.push(content);
        }
        let mut pos = 0;
        loop {
            if pos == cells {
                return out;
            }
            if filling[pos] < n {
                filling[pos] += 1;
                break;
            }
            filling[pos] = 1;
            pos += 1;
        }
    }
}

pub fn hook_tableau_count(a: usize, b: usize, n: usize) -> usize {
    hook_tableau_contents(a, b, n).len()
}

/// `s_{(a,1^b)}` as the generating function of its tableaux. Zero when `a <= 0`.
pub fn hook_schur_oracle(a: i64, b: usize, n: usize) -> Poly {
    let mut f = Poly::new();
    if a <= 0 {
        return f;
    }
    for c in hook_tableau_contents(a as usize, b, n) {
        *f.entry(c).or_insert(0) += 1;
    }
    f
}

pub fn power_sum_oracle(m: u32, n: usize) -> Poly {
    (0..n)
        .map(|k| {
            let mut e = vec![0; n];
            e[k] = m;
            (e, 1)
        })
        .collect()
}

pub fn scale_exponents(f: &Poly, p: u32) -> Poly {
    f.iter().map(|(e, &c)| (e.iter().map(|&x| x * p).collect(), c)).collect()
}

pub fn poly_add(f: &Poly, g: &Poly, sign: i64) -> Poly {
    let mut out = f.clone();
    for (e, &c) in g {
        *out.entry(e.clone()).or_insert(0) += sign * c;
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn to_poly(f: &MultiPoly) -> Poly {
    f.graded_terms().map(|(e, c)| (e.to_vec(), c)).collect()
}

/// Builds a polynomial from `(coefficient, exponents)` pairs.
pub fn poly(terms: &[(i64, &[u32])]) -> Poly {
    let mut f = Poly::new();
    for &(c, e) in terms {
        *f.entry(e.to_vec()).or_insert(0) += c;
    }
    f
}

/// Rows `0..=max_n` of Pascal's triangle, exactly.
pub fn pascal(max_n: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::from(1u32)]];
    for n in 1..=max_n {
        let prev = &rows[n - 1];
        let mut row = vec![BigUint::from(1u32); n + 1];
        for k in 1..n {
            row[k] = &prev[k - 1] + &prev[k];
        }
        rows.push(row);
    }
    rows
}

pub fn big_mod(x: &BigUint, p: u32) -> u32 {
    (x % p).try_into().unwrap()
}
