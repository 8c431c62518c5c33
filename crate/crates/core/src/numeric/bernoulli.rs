use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{binomial, Rational};

/// Bernoulli numbers `B_0..=B_N` with the convention `B_1 = -1/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn up_to(n_max: usize) -> Self {
        let mut table = BernoulliTable { values: Vec::with_capacity(n_max + 1) };
        table.extend_to(n_max);
        table
    }

    fn extend_to(&mut self, n_max: usize) {
        while self.values.len() <= n_max {
            let n = self.values.len();
            let value = if n == 0 {
                Rational::from_integer(BigInt::from(1))
            } else if n > 1 && n % 2 == 1 {
                Rational::zero()
            } else {
                // sum_{k=0}^{n} binom(n+1, k) B_k = 0
                let partial = self
                    .values
                    .iter()
                    .enumerate()
                    .fold(Rational::zero(), |acc, (k, b)| acc + b * Rational::from_integer(binomial(n + 1, k)));
                -partial / Rational::from_integer(BigInt::from(n + 1))
            };
            self.values.push(value);
        }
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn shared_table() -> &'static RwLock<BernoulliTable> {
    static TABLE: OnceLock<RwLock<BernoulliTable>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(BernoulliTable::up_to(32)))
}

/// `B_n` with `B_1 = -1/2`, memoized process-wide.
pub fn bernoulli(n: usize) -> Rational {
    {
        let table = shared_table().read().expect("bernoulli table poisoned");
        if let Some(b) = table.get(n) {
            return b.clone();
        }
    }
    let mut table = shared_table().write().expect("bernoulli table poisoned");
    table.extend_to(n);
    table.values[n].clone()
}
