use std::collections::VecDeque;

/// Diminishing multiplicative adaptation of a proposal scale at iteration `s`:
/// multiply by `1 + min(0.01, 1/sqrt(s - 1))` when the recent acceptance rate
/// is above target, by `1 - min(0.01, 1/sqrt(s - 1))` otherwise.
///
/// Iterations before the second leave the scale unchanged.
pub fn adapt_scale(current: f64, s: u64, accepted_ratio_above_target: bool) -> f64 {
    if s < 2 {
        return current;
    }
    let step = f64::min(0.01, 1.0 / ((s - 1) as f64).sqrt());
    if accepted_ratio_above_target {
        current * (1.0 + step)
    } else {
        current * (1.0 - step)
    }
}

/// Acceptance counts over the most recent `capacity` iterations.
#[derive(Debug, Clone)]
pub struct AcceptanceWindow {
    capacity: usize,
    entries: VecDeque<(u32, u32)>,
    accepted: u64,
    proposed: u64,
}

impl AcceptanceWindow {
    pub fn new(capacity: usize) -> Self {
        Self {
            capacity: capacity.max(1),
            entries: VecDeque::with_capacity(capacity.max(1)),
            accepted: 0,
            proposed: 0,
        }
    }

    pub fn push(&mut self, accepted: u32, proposed: u32) {
        if self.entries.len() == self.capacity {
            let (a, p) = self.entries.pop_front().expect("non-empty window");
            self.accepted -= u64::from(a);
            self.proposed -= u64::from(p);
        }
        self.entries.push_back((accepted, proposed));
        self.accepted += u64::from(accepted);
        self.proposed += u64::from(proposed);
    }

    pub fn rate(&self) -> f64 {
        if self.proposed == 0 {
            0.0
        } else {
            self.accepted as f64 / self.proposed as f64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scale_examples() {
        assert!((adapt_scale(0.5, 2, true) - 0.505).abs() < 1e-15);
        assert!((adapt_scale(0.5, 10001, false) - 0.495).abs() < 1e-15);
        assert_eq!(adapt_scale(0.5, 1, true), 0.5);
    }

    #[test]
    fn factors_shrink_towards_one() {
        let mut prev = f64::INFINITY;
        for s in [2u64, 10, 1_000, 10_001, 10_002, 1_000_000, 100_000_000] {
            let f = adapt_scale(1.0, s, true) - 1.0;
            assert!(f <= prev + 1e-15);
            assert!(f > 0.0 && f <= 0.01 + 1e-15);
            prev = f;
        }
        let late = adapt_scale(1.0, 100_000_001, true);
        assert!((late - 1.0 - 1e-4).abs() < 1e-12);
    }

    #[test]
    fn window_slides() {
        let mut w = AcceptanceWindow::new(3);
        w.push(1, 1);
        w.push(0, 1);
        assert_eq!(w.rate(), 0.5);
        w.push(1, 1);
        w.push(1, 1);
        assert!((w.rate() - 2.0 / 3.0).abs() < 1e-15);
        w.push(5, 10);
        assert!((w.rate() - 7.0 / 12.0).abs() < 1e-15);
    }
}
