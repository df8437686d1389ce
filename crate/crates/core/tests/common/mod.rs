//! Brute-force oracles shared by the integration tests. They share
//! nothing with the ideal-power iteration: the kernel comes from dense
//! elimination over the whole tensor basis and cup-length from a search
//! over products of kernel basis elements.

#![allow(dead_code)]

use std::sync::Arc;

use tcn_core::algebra::Presentation;
use tcn_core::tensor::{monomial_degree, tensor_dimension, TensorElement};

/// Kernel of the diagonal, one basis per degree, by Gaussian elimination.
pub fn brute_kernel(base: &Arc<Presentation>, arity: usize) -> Vec<Vec<TensorElement>> {
    let total = tensor_dimension(base, arity) as u64;
    let top = arity as u32 * base.top_degree();
    let mut by_degree: Vec<Vec<u64>> = vec![Vec::new(); top as usize + 1];
    for m in 0..total {
        by_degree[monomial_degree(base, arity, m) as usize].push(m);
    }
    let target = base.basis_len();
    by_degree
        .iter()
        .map(|monos| {
            // Augmented rows: image bits then a combination of slice monomials.
            let mut rows: Vec<(Vec<bool>, Vec<bool>)> = monos
                .iter()
                .enumerate()
                .map(|(i, &m)| {
                    let img = TensorElement::from_monomials(base, arity, [m]).unwrap().diagonal_eval();
                    let mut image = vec![false; target];
                    for r in img.support() {
                        image[r] = true;
                    }
                    let mut comb = vec![false; monos.len()];
                    comb[i] = true;
                    (image, comb)
                })
                .collect();
            let mut pivot_row = 0;
            for col in 0..target {
                let Some(p) = (pivot_row..rows.len()).find(|&i| rows[i].0[col]) else { continue };
                rows.swap(pivot_row, p);
                let (pi, pc) = rows[pivot_row].clone();
                for (i, row) in rows.iter_mut().enumerate() {
                    if i != pivot_row && row.0[col] {
                        for (x, &y) in row.0.iter_mut().zip(&pi) {
                            *x ^= y;
                        }
                        for (x, &y) in row.1.iter_mut().zip(&pc) {
                            *x ^= y;
                        }
                    }
                }
                pivot_row += 1;
            }
            rows[pivot_row..]
                .iter()
                .map(|(_, comb)| {
                    let ranks = comb.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| monos[i]);
                    TensorElement::from_monomials(base, arity, ranks).unwrap()
                })
                .collect()
        })
        .collect()
}

/// Longest nonzero product of kernel basis elements.
pub fn brute_cup(base: &Arc<Presentation>, arity: usize) -> u32 {
    let kernel: Vec<(u32, TensorElement)> = brute_kernel(base, arity)
        .into_iter()
        .enumerate()
        .flat_map(|(d, v)| v.into_iter().map(move |e| (d as u32, e)))
        .collect();
    let top = arity as u32 * base.top_degree();
    let min_deg = base.min_generator_degree();
    let mut best = 0;
    let unit = TensorElement::unit(base, arity).unwrap();
    dfs(&kernel, &unit, 0, 0, 0, top, min_deg, &mut best);
    best
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    kernel: &[(u32, TensorElement)],
    acc: &TensorElement,
    from: usize,
    len: u32,
    deg: u32,
    top: u32,
    min_deg: u32,
    best: &mut u32,
) {
    *best = (*best).max(len);
    if len + (top - deg) / min_deg <= *best {
        return;
    }
    for (j, (d, k)) in kernel.iter().enumerate().skip(from) {
        if deg + d > top {
            continue;
        }
        let next = acc.multiply(k).unwrap();
        if next.is_zero() {
            continue;
        }
        dfs(kernel, &next, j, len + 1, deg + d, top, min_deg, best);
    }
}

/// Pascal's triangle mod 2, row by row.
pub fn pascal_mod2(rows: usize) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = vec![vec![1]];
    for n in 1..=rows {
        let prev = &out[n - 1];
        let mut row = vec![1u8; n + 1];
        for k in 1..n {
            row[k] = (prev[k - 1] + prev[k]) % 2;
        }
        out.push(row);
    }
    out
}
