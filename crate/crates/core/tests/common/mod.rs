// SPDX-License-Identifier: Apache-2.0

//! Brute-force oracles shared by the integration tests. None of these call
//! into the conversion or encoding routines they are used to check.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All permutations of `1..=d`, generated by recursion and sorted.
pub fn all_permutations(d: usize) -> Vec<Vec<usize>> {
    fn go(d: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for v in (1..=d).rev() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(d, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(d, &mut Vec::new(), &mut vec![false; d + 1], &mut out);
    out.sort();
    out
}

/// Rank of each entry: one plus the number of strictly smaller entries.
pub fn rank_oracle(x: &[f64]) -> Vec<usize> {
    x.iter()
        .map(|a| 1 + x.iter().filter(|b| *b < a).count())
        .collect()
}

/// Index holding rank 1, then rank 2, ..., found by scanning.
pub fn argsort_oracle(x: &[f64]) -> Vec<usize> {
    let ranks = rank_oracle(x);
    (1..=x.len())
        .map(|r| ranks.iter().position(|&q| q == r).unwrap() + 1)
        .collect()
}

/// `#{k > j : x_j > x_k}` directly on the values.
pub fn inversion_oracle(x: &[f64]) -> Vec<usize> {
    (0..x.len())
        .map(|j| (j + 1..x.len()).filter(|&k| x[j] > x[k]).count())
        .collect()
}

/// Lexicographic index of a rank tuple among all permutations, by counting
/// the permutations that sort before it.
pub fn lexicographic_index(rank: &[usize], all: &[Vec<usize>]) -> u64 {
    all.iter().filter(|p| p.as_slice() < rank).count() as u64
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Direct evaluation of the KSE weighted sum with 128-bit factorials.
pub fn kse_oracle(counts: &[usize]) -> u64 {
    let d = counts.len();
    counts
        .iter()
        .enumerate()
        .map(|(j0, &c)| {
            let j = j0 + 1;
            c as u128 * factorial(d) / factorial(d - j + 1)
        })
        .sum::<u128>() as u64
}

/// Generalized ranks by dense ranking over sorted distinct values.
pub fn generalized_oracle(x: &[i64]) -> Vec<usize> {
    let mut distinct: Vec<i64> = x.to_vec();
    distinct.sort();
    distinct.dedup();
    x.iter()
        .map(|v| distinct.iter().position(|u| u == v).unwrap() + 1)
        .collect()
}

/// Every tuple of `{1..=d}^d`, as i64 windows.
pub fn all_tuples(d: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (1..=d as i64).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

/// Ordered set partitions via Stirling numbers of the second kind:
/// `sum_k k! S(n, k)`.
pub fn ordered_partitions(n: usize) -> u128 {
    let mut s = vec![vec![0u128; n + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for k in 1..=i {
            s[i][k] = k as u128 * s[i - 1][k] + s[i - 1][k - 1];
        }
    }
    (0..=n).map(|k| factorial(k) * s[n][k]).sum()
}

/// Standard normal draws by Box-Muller.
pub fn white_noise(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let u1: f64 = 1.0 - rng.gen::<f64>();
            let u2: f64 = rng.gen();
            (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
        })
        .collect()
}

pub fn random_walk(n: usize, seed: u64) -> Vec<f64> {
    let mut acc = 0.0;
    white_noise(n, seed)
        .into_iter()
        .map(|e| {
            acc += e;
            acc
        })
        .collect()
}

/// Windows equal to a permutation, as floats.
pub fn as_window(p: &[usize]) -> Vec<f64> {
    p.iter().map(|&v| v as f64).collect()
}
