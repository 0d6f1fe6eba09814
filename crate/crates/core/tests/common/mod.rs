//! Reference implementations used as test oracles. They deliberately avoid
//! the library's encoder and decoder code paths.

#![allow(dead_code)]

use rand::Rng;

/// `u · F^{⊗n}` by explicit Kronecker expansion of each entry:
/// `G[r][c] = 1` iff the binary digits of `c` are a subset of those of `r`.
pub fn oracle_encode(u: &[u8]) -> Vec<u8> {
    let len = u.len();
    (0..len)
        .map(|c| {
            (0..len)
                .filter(|&r| r & c == c)
                .fold(0u8, |acc, r| acc ^ u[r])
        })
        .collect()
}

fn oracle_f(a: f64, b: f64) -> f64 {
    let sign = if (a < 0.0) ^ (b < 0.0) { -1.0 } else { 1.0 };
    sign * a.abs().min(b.abs())
}

fn oracle_g(a: f64, b: f64, s: u8) -> f64 {
    b + if s == 1 { -a } else { a }
}

/// Stage-by-stage SC over the explicit factor graph, with no recursion.
///
/// Layer `n` holds the channel LLRs and layer 0 the `u` positions. Between
/// layer `t` and `t + 1` the butterflies pair `j` with `j + 2^t`. For every
/// bit `i` all layers are recomputed from scratch from the channel and the
/// partial sums of the already decided prefix. Returns `û`.
pub fn oracle_sc_decode(frozen: &[bool], channel: &[f64]) -> Vec<u8> {
    let len = channel.len();
    let n = len.trailing_zeros() as usize;
    let mut u_hat: Vec<u8> = Vec::with_capacity(len);
    for i in 0..len {
        // Partial sums of the decided prefix, propagated toward the channel.
        let mut s: Vec<Vec<Option<u8>>> = vec![vec![None; len]; n + 1];
        for (k, &b) in u_hat.iter().enumerate() {
            s[0][k] = Some(b);
        }
        for t in 0..n {
            let h = 1 << t;
            for j in 0..len {
                if j & h == 0 {
                    s[t + 1][j] = match (s[t][j], s[t][j + h]) {
                        (Some(a), Some(b)) => Some(a ^ b),
                        _ => None,
                    };
                    s[t + 1][j + h] = s[t][j + h];
                }
            }
        }
        // LLRs from the channel inward.
        let mut l: Vec<Vec<Option<f64>>> = vec![vec![None; len]; n + 1];
        for j in 0..len {
            l[n][j] = Some(channel[j]);
        }
        for t in (0..n).rev() {
            let h = 1 << t;
            for j in 0..len {
                l[t][j] = if j & h == 0 {
                    match (l[t + 1][j], l[t + 1][j + h]) {
                        (Some(a), Some(b)) => Some(oracle_f(a, b)),
                        _ => None,
                    }
                } else {
                    match (l[t + 1][j - h], l[t + 1][j], s[t][j - h]) {
                        (Some(a), Some(b), Some(sa)) => Some(oracle_g(a, b, sa)),
                        _ => None,
                    }
                };
            }
        }
        let li = l[0][i].expect("LLR of the current bit is always computable");
        u_hat.push(if frozen[i] || li >= 0.0 { 0 } else { 1 });
    }
    u_hat
}

/// Info bits at the non-frozen positions of `u`.
pub fn info_of(frozen: &[bool], u: &[u8]) -> Vec<u8> {
    u.iter()
        .zip(frozen)
        .filter(|(_, &f)| !f)
        .map(|(&b, _)| b)
        .collect()
}

/// Places `info` at the non-frozen positions.
pub fn expand(frozen: &[bool], info: &[u8]) -> Vec<u8> {
    let mut it = info.iter();
    frozen
        .iter()
        .map(|&f| if f { 0 } else { *it.next().unwrap() })
        .collect()
}

pub fn random_bits<R: Rng>(rng: &mut R, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.random::<u8>() & 1).collect()
}

/// `(successes, trials)` 95% Wilson interval, written out independently of
/// the library's helper.
pub fn wilson95(successes: u64, trials: u64) -> (f64, f64) {
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let d = 1.0 + z * z / n;
    let c = (p + z * z / (2.0 * n)) / d;
    let w = z / d * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt();
    ((c - w).max(0.0), (c + w).min(1.0))
}
