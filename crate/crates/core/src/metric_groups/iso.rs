use super::MetricGroup;
use crate::error::{Error, Result};
use crate::exact_linalg::{lcm, prime_factors};

/// A group isomorphism given by the images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Isometry {
    /// `images[i]` is the image of generator `e_i`, in target coordinates.
    pub images: Vec<Vec<u64>>,
}

impl Isometry {
    pub fn apply(&self, target: &MetricGroup, x: &[u64]) -> Vec<u64> {
        let mut out = vec![0; target.rank()];
        for (xi, img) in x.iter().zip(&self.images) {
            out = target.add(&out, &target.scale(*xi, img));
        }
        out
    }
}

/// Finds a q-preserving isomorphism `g1 -> g2`, if one exists.
pub fn is_isomorphic(g1: &MetricGroup, g2: &MetricGroup, budget: u64) -> Result<Option<Isometry>> {
    Ok(search_isometries(g1, g2, budget, false)?.into_iter().next())
}

/// Depth-first search over generator images in lexicographic element order.
///
/// A candidate image of `e_i` must have order exactly `n_i`, the right `q`
/// and the right `b` against the images already chosen; since `q` on all of
/// `A` is determined by these values, every complete assignment that is
/// bijective is an isometry. Bijectivity is checked on `A/pA` for each prime.
pub(crate) fn search_isometries(
    g1: &MetricGroup,
    g2: &MetricGroup,
    budget: u64,
    all: bool,
) -> Result<Vec<Isometry>> {
    if g1.factors() != g2.factors() || g1.level() != g2.level() {
        return Ok(Vec::new());
    }
    let n = g2.order();
    if n > budget {
        return Err(Error::BudgetExceeded { what: "isometry search", needed: n, budget });
    }
    let level = lcm(g1.level(), g2.level());
    let k = g1.rank();
    let elems: Vec<Vec<u64>> = g2.elements().collect();
    let orders: Vec<u64> = elems.iter().map(|x| g2.element_order(x)).collect();
    let qs: Vec<u64> = elems.iter().map(|x| g2.q_at_level(x, level)).collect();
    let mut gen = vec![0u64; k];
    let candidates: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            gen.iter_mut().for_each(|v| *v = 0);
            gen[i] = 1;
            let want_q = g1.q_at_level(&gen, level);
            (0..elems.len()).filter(|&e| orders[e] == g1.factors()[i] && qs[e] == want_q).collect()
        })
        .collect();
    let b1: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let mut x = vec![0; k];
                    let mut y = vec![0; k];
                    x[i] = 1;
                    y[j] = 1;
                    g1.b_at_level(&x, &y, level)
                })
                .collect()
        })
        .collect();
    let primes = prime_factors(n);
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    dfs(g2, level, &elems, &candidates, &b1, &primes, &mut chosen, all, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    g2: &MetricGroup,
    level: u64,
    elems: &[Vec<u64>],
    candidates: &[Vec<usize>],
    b1: &[Vec<u64>],
    primes: &[u64],
    chosen: &mut Vec<usize>,
    all: bool,
    out: &mut Vec<Isometry>,
) -> bool {
    let i = chosen.len();
    if i == candidates.len() {
        let images: Vec<Vec<u64>> = chosen.iter().map(|&e| elems[e].clone()).collect();
        if is_bijective(g2.factors(), &images, primes) {
            out.push(Isometry { images });
            return !all;
        }
        return false;
    }
    for &c in &candidates[i] {
        let ok = chosen.iter().enumerate().all(|(j, &e)| g2.b_at_level(&elems[c], &elems[e], level) == b1[i][j]);
        if !ok {
            continue;
        }
        chosen.push(c);
        let done = dfs(g2, level, elems, candidates, b1, primes, chosen, all, out);
        chosen.pop();
        if done {
            return true;
        }
    }
    false
}

fn is_bijective(factors: &[u64], images: &[Vec<u64>], primes: &[u64]) -> bool {
    primes.iter().all(|&p| {
        let idx: Vec<usize> = (0..factors.len()).filter(|&i| factors[i].is_multiple_of(p)).collect();
        let mut m: Vec<Vec<u64>> = idx.iter().map(|&i| idx.iter().map(|&j| images[i][j] % p).collect()).collect();
        rank_mod_p(&mut m, p) == idx.len()
    })
}

fn rank_mod_p(m: &mut [Vec<u64>], p: u64) -> usize {
    let n = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..n).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, r);
        let inv = crate::exact_linalg::mod_pow(m[rank][c], p - 2, p);
        for i in 0..n {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c] * inv % p;
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p * p - f * m[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}
