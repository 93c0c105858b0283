/// Terms summed left to right before entering the pairwise tree.
const BLOCK: usize = 8;

/// Pairwise (cascade) summation over a slice with a fixed tree shape.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= BLOCK {
        return xs.iter().fold(0.0, |a, &b| a + b);
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Streaming pairwise summation.
///
/// Blocks of `BLOCK` terms are summed sequentially; block sums are merged
/// like a binary counter, so the tree depends only on the number of terms.
#[derive(Debug, Clone)]
pub struct PairwiseSum {
    block: f64,
    in_block: usize,
    levels: [f64; 64],
    occupied: u64,
}

impl Default for PairwiseSum {
    fn default() -> Self {
        Self { block: 0.0, in_block: 0, levels: [0.0; 64], occupied: 0 }
    }
}

impl PairwiseSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        self.block += x;
        self.in_block += 1;
        if self.in_block == BLOCK {
            let mut carry = self.block;
            self.block = 0.0;
            self.in_block = 0;
            let mut level = 0;
            while self.occupied & (1 << level) != 0 {
                carry += self.levels[level];
                self.occupied &= !(1 << level);
                level += 1;
            }
            self.levels[level] = carry;
            self.occupied |= 1 << level;
        }
    }

    pub fn total(&self) -> f64 {
        let mut acc = self.block;
        let mut bits = self.occupied;
        while bits != 0 {
            let level = bits.trailing_zeros() as usize;
            acc += self.levels[level];
            bits &= bits - 1;
        }
        acc
    }
}
