use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Product-replacement random walk over the group generated by the seeds.
pub struct ProductReplacement<T> {
    slots: Vec<T>,
    acc: T,
    mul: fn(&T, &T) -> T,
    rng: ChaCha8Rng,
}

impl<T: Clone> ProductReplacement<T> {
    pub fn new(gens: &[T], mul: fn(&T, &T) -> T, seed: u64) -> Self {
        assert!(!gens.is_empty());
        let n = gens.len().max(10);
        let slots = (0..n).map(|i| gens[i % gens.len()].clone()).collect();
        let mut pr = ProductReplacement {
            slots,
            acc: gens[0].clone(),
            mul,
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..100 {
            pr.next_element();
        }
        pr
    }

    pub fn next_element(&mut self) -> T {
        let n = self.slots.len();
        let i = self.rng.random_range(0..n);
        let mut j = self.rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let s = if self.rng.random_bool(0.5) {
            (self.mul)(&self.slots[i], &self.slots[j])
        } else {
            (self.mul)(&self.slots[j], &self.slots[i])
        };
        self.slots[i] = s;
        self.acc = (self.mul)(&self.acc, &self.slots[i]);
        self.acc.clone()
    }
}
