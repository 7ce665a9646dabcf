//! Betti numbers over 𝔽_p by plain Gaussian elimination.
//!
//! Shares nothing with the Smith normal form path: boundary matrices are
//! read straight from the facet lists into machine integers mod p.

use crate::complex::DeltaComplex;
use crate::error::{Error, Result};
use crate::linalg::is_prime;

pub const ORACLE_SIMPLEX_LIMIT: usize = 1000;

/// `dim H_a(Γ; 𝔽_p)`.
pub fn oracle_homology(complex: &DeltaComplex, a: usize, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let total = complex.total_simplices();
    if total > ORACLE_SIMPLEX_LIMIT {
        return Err(Error::TooLarge(total, ORACLE_SIMPLEX_LIMIT));
    }
    let chains = complex.count(a);
    let rank_out = if a == 0 { 0 } else { rank_mod_p(boundary_mod_p(complex, a, p), p) };
    let rank_in = rank_mod_p(boundary_mod_p(complex, a + 1, p), p);
    Ok(chains - rank_out - rank_in)
}

fn boundary_mod_p(complex: &DeltaComplex, a: usize, p: u64) -> Vec<Vec<u64>> {
    if a == 0 {
        return Vec::new();
    }
    let mut rows = vec![vec![0u64; complex.count(a)]; complex.count(a - 1)];
    for (j, s) in complex.simplices(a).iter().enumerate() {
        for (i, &f) in s.facets.iter().enumerate() {
            let entry = &mut rows[f][j];
            *entry = if i % 2 == 0 { (*entry + 1) % p } else { (*entry + p - 1) % p };
        }
    }
    rows
}

fn inverse_mod(x: u64, p: u64) -> u64 {
    // Fermat: x^(p-2)
    let (mut base, mut exp, mut acc) = (x % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = inverse_mod(m[rank][col], p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                let pivot_row = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = (*x + p - factor * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}
