use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// `log2` applied `i` times, never dropping below 1.
pub fn iterated_log(n: usize, i: usize) -> f64 {
    let mut v = n as f64;
    for _ in 0..i {
        v = if v <= 1.0 { 1.0 } else { v.log2().max(1.0) };
    }
    v
}

/// Number of `log2` applications needed to bring `n` down to at most 1.
pub fn log_star(n: usize) -> usize {
    let mut v = n as f64;
    let mut k = 0;
    while v > 1.0 {
        v = v.log2();
        k += 1;
    }
    k
}

/// Round sizes `min(floor(n / log^(k) n), n)` for `k = 1..log* n`, with equal
/// neighbours merged. The last size is always `n`.
pub fn gradation_sizes(n: usize) -> Vec<usize> {
    if n <= 1 {
        return vec![n];
    }
    let mut out: Vec<usize> = Vec::new();
    for k in 1..=log_star(n) {
        let z = ((n as f64 / iterated_log(n, k)).floor() as usize).clamp(1, n);
        if out.last() != Some(&z) {
            out.push(z);
        }
    }
    if out.last() != Some(&n) {
        out.push(n);
    }
    out
}

/// Nested random samples `P_1 ⊂ P_2 ⊂ ... ⊂ P_r` of the ids `0..n`, stored as
/// one ordering whose prefixes are the samples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gradation {
    sizes: Vec<usize>,
    order: Vec<u32>,
}

impl Gradation {
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn rounds(&self) -> usize {
        self.sizes.len()
    }

    /// Ids in `P_k` (rounds counted from 0).
    pub fn sample(&self, k: usize) -> &[u32] {
        &self.order[..self.sizes[k]]
    }

    /// Ids that first appear in round `k`.
    pub fn fresh(&self, k: usize) -> &[u32] {
        let lo = if k == 0 { 0 } else { self.sizes[k - 1] };
        &self.order[lo..self.sizes[k]]
    }

    /// The round in which each id first appears.
    pub fn first_round(&self) -> Vec<usize> {
        let mut r = vec![0; self.order.len()];
        for k in 0..self.rounds() {
            for &i in self.fresh(k) {
                r[i as usize] = k;
            }
        }
        r
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }
}

/// Draws the samples by a partial Fisher-Yates shuffle. Only the part that
/// is actually sampled before the last round gets shuffled.
pub fn build_gradation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Gradation {
    let sizes = gradation_sizes(n);
    Gradation { order: nested_order(n, sizes[sizes.len().saturating_sub(2)], rng), sizes }
}

/// A random ordering of `0..n` whose first `m` entries are a uniform sample
/// in uniform order. The rest follow in their original relative order.
pub(crate) fn nested_order<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Vec<u32> {
    let mut ids: Vec<u32> = (0..n as u32).collect();
    let mut chosen = {
        let (c, _) = ids.partial_shuffle(rng, m);
        c.to_vec()
    };
    let mut taken = vec![false; n];
    for &i in &chosen {
        taken[i as usize] = true;
    }
    chosen.extend((0..n as u32).filter(|&i| !taken[i as usize]));
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sizes_for_large_n() {
        assert_eq!(gradation_sizes(65536), vec![4096, 16384, 32768, 65536]);
        assert_eq!(log_star(65536), 4);
    }

    #[test]
    fn sizes_for_small_n() {
        assert_eq!(gradation_sizes(2), vec![2]);
        assert_eq!(gradation_sizes(1), vec![1]);
        assert_eq!(gradation_sizes(16), vec![4, 8, 16]);
    }

    #[test]
    fn samples_are_nested_permutation_prefixes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = build_gradation(1000, &mut rng);
        let mut seen = g.order().to_vec();
        seen.sort();
        assert_eq!(seen, (0..1000).collect::<Vec<u32>>());
        for k in 1..g.rounds() {
            assert!(g.sample(k).starts_with(g.sample(k - 1)));
            assert_eq!(g.sample(k).len(), g.sizes()[k]);
        }
        let fr = g.first_round();
        assert_eq!(fr.iter().filter(|&&r| r == 0).count(), g.sizes()[0]);
    }

    #[test]
    fn reproducible_from_seed() {
        let a = build_gradation(300, &mut ChaCha8Rng::seed_from_u64(9));
        let b = build_gradation(300, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a, b);
    }
}
